//! Class expressions: `omega`, `tau:<facet>`, `canon:<id>`, `1`, joined by
//! `*` with optional integer powers `^k`, e.g. `omega^2*tau:4`.

use unimodal_core::cohomology::{symplectic_class, CanonicalClass};
use unimodal_core::{CircleSelector, EquivariantClass, FixedPointSet, GkmGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    One,
    Omega,
    Tau(usize),
    Canon(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub atom: Atom,
    pub power: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum ExprError {
    #[error("bad class expression {0:?}: {1}")]
    Syntax(String, String),
    #[error("{0} needs polytope input with --xi")]
    NeedsPolytope(&'static str),
    #[error("no canonical class based at {0}")]
    UnknownPoint(String),
    #[error(transparent)]
    Core(#[from] unimodal_core::Error),
}

pub fn parse(expr: &str) -> Result<Vec<Factor>, ExprError> {
    let syntax = |why: &str| ExprError::Syntax(expr.to_string(), why.to_string());
    if expr.trim().is_empty() {
        return Err(syntax("empty expression"));
    }
    expr.split('*')
        .map(|term| {
            let term = term.trim();
            let (base, power) = match term.split_once('^') {
                Some((b, p)) => (
                    b.trim(),
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| syntax(&format!("bad exponent in {term:?}")))?,
                ),
                None => (term, 1),
            };
            let atom = match base {
                "1" => Atom::One,
                "omega" => Atom::Omega,
                _ => {
                    if let Some(f) = base.strip_prefix("tau:") {
                        Atom::Tau(
                            f.parse()
                                .map_err(|_| syntax(&format!("bad facet index {f:?}")))?,
                        )
                    } else if let Some(id) = base.strip_prefix("canon:") {
                        if id.is_empty() {
                            return Err(syntax("empty point id"));
                        }
                        Atom::Canon(id.to_string())
                    } else {
                        return Err(syntax(&format!("unknown atom {base:?}")));
                    }
                }
            };
            Ok(Factor { atom, power })
        })
        .collect()
}

/// What an expression may refer to.
pub struct Context<'a> {
    pub set: &'a FixedPointSet,
    pub toric: Option<(&'a GkmGraph, &'a CircleSelector)>,
    pub canonical: Option<&'a [CanonicalClass]>,
}

pub fn evaluate(factors: &[Factor], ctx: &Context) -> Result<EquivariantClass, ExprError> {
    let mut acc = EquivariantClass::identity(ctx.set);
    for f in factors {
        let class = match &f.atom {
            Atom::One => EquivariantClass::identity(ctx.set),
            Atom::Omega => symplectic_class(ctx.set)?,
            Atom::Tau(i) => {
                let (g, xi) = ctx.toric.ok_or(ExprError::NeedsPolytope("tau:<facet>"))?;
                g.divisor_class(xi, *i)?
            }
            Atom::Canon(id) => {
                let canon = ctx.canonical.ok_or(ExprError::NeedsPolytope("canon:<id>"))?;
                canon
                    .iter()
                    .find(|c| &c.base == id)
                    .map(|c| c.class.clone())
                    .ok_or_else(|| ExprError::UnknownPoint(id.clone()))?
            }
        };
        acc = acc.multiply(&class.pow(f.power))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_powers() {
        let f = parse("omega^4").unwrap();
        assert_eq!(f, vec![Factor { atom: Atom::Omega, power: 4 }]);
        let f = parse("tau:4 * canon:v1^2 * 1").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f[0].atom, Atom::Tau(4));
        assert_eq!(f[1], Factor { atom: Atom::Canon("v1".into()), power: 2 });
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "omega^", "tau:x", "canon:", "sigma", "omega^-1"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn abstract_data_cannot_use_tau() {
        let s = unimodal_core::bundled::cp4();
        let ctx = Context { set: &s, toric: None, canonical: None };
        assert!(matches!(
            evaluate(&parse("tau:0").unwrap(), &ctx),
            Err(ExprError::NeedsPolytope(_))
        ));
        let omega = evaluate(&parse("omega").unwrap(), &ctx).unwrap();
        assert_eq!(omega.upow, 1);
    }
}
