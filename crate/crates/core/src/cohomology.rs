//! Equivariant classes as restriction tuples, localization, and canonical
//! classes.
//!
//! A homogeneous class of degree `2d` is stored as the tuple of its
//! restrictions `α|_F = c_F·u^d`, one rational `c_F` per fixed point. For a
//! Hamiltonian action the restriction map to the fixed points is injective,
//! so the tuple determines the class; products are pointwise.
//!
//! Canonical classes are solved in the span of the toric flow-up basis: the
//! class based at `F` is its flow-up class minus a combination of flow-up
//! classes of index `≤ k_F` sitting strictly above `H(F)`, each multiplied by
//! the power of `u` that matches degrees.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::delzant::{CircleSelector, GkmGraph};
use crate::error::{Error, Result};
use crate::exact::{solve_exact, LinearSolution, Matrix, Poly, Rational};
use crate::fixedpoints::FixedPointSet;

/// Homogeneous equivariant class: restriction at `F` is `coeffs[F]·u^upow`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivariantClass {
    pub upow: usize,
    pub coeffs: BTreeMap<String, Rational>,
}

impl EquivariantClass {
    pub fn from_coeffs(upow: usize, coeffs: BTreeMap<String, Rational>) -> Self {
        EquivariantClass { upow, coeffs }
    }

    pub fn from_fn(
        s: &FixedPointSet,
        upow: usize,
        mut f: impl FnMut(usize) -> Rational,
    ) -> Self {
        let coeffs = s
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.clone(), f(i)))
            .collect();
        EquivariantClass { upow, coeffs }
    }

    /// The unit class, restricting to 1 everywhere.
    pub fn identity(s: &FixedPointSet) -> Self {
        Self::from_fn(s, 0, |_| Rational::one())
    }

    pub fn zero(s: &FixedPointSet, upow: usize) -> Self {
        Self::from_fn(s, upow, |_| Rational::zero())
    }

    pub fn coeff(&self, id: &str) -> Option<&Rational> {
        self.coeffs.get(id)
    }

    pub fn restriction(&self, id: &str) -> Option<Poly> {
        self.coeff(id).map(|c| Poly::monomial(c.clone(), self.upow))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Rational::is_zero)
    }

    /// Coefficients in the point order of `s`.
    pub fn coeffs_in_order<'a>(&'a self, s: &'a FixedPointSet) -> impl Iterator<Item = &'a Rational> + 'a {
        s.points.iter().map(move |p| &self.coeffs[&p.id])
    }

    /// Errors unless the keys are exactly the ids of `s`.
    pub fn check_ambient(&self, s: &FixedPointSet) -> Result<()> {
        if self.coeffs.len() == s.len() && s.ids().all(|id| self.coeffs.contains_key(id)) {
            Ok(())
        } else {
            Err(Error::MismatchedPointSets)
        }
    }

    fn same_keys(&self, other: &EquivariantClass) -> Result<()> {
        if self.coeffs.keys().eq(other.coeffs.keys()) {
            Ok(())
        } else {
            Err(Error::MismatchedPointSets)
        }
    }

    pub fn multiply(&self, other: &EquivariantClass) -> Result<EquivariantClass> {
        self.same_keys(other)?;
        Ok(EquivariantClass {
            upow: self.upow + other.upow,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, a)| (k.clone(), a * &other.coeffs[k]))
                .collect(),
        })
    }

    pub fn add(&self, other: &EquivariantClass) -> Result<EquivariantClass> {
        self.same_keys(other)?;
        if self.upow != other.upow {
            return Err(Error::DegreeMismatch {
                left: self.upow,
                right: other.upow,
            });
        }
        Ok(EquivariantClass {
            upow: self.upow,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, a)| (k.clone(), a + &other.coeffs[k]))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> EquivariantClass {
        EquivariantClass {
            upow: self.upow,
            coeffs: self.coeffs.iter().map(|(k, a)| (k.clone(), a * c)).collect(),
        }
    }

    /// Multiplication by `u^j` (pulled back from the classifying space).
    pub fn times_u(&self, j: usize) -> EquivariantClass {
        EquivariantClass {
            upow: self.upow + j,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> EquivariantClass {
        EquivariantClass {
            upow: self.upow * k as usize,
            coeffs: self.coeffs.iter().map(|(id, a)| (id.clone(), a.pow(k))).collect(),
        }
    }
}

/// `value·u^upow` in `ℚ(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationValue {
    pub value: Rational,
    pub upow: i64,
}

impl LocalizationValue {
    /// Whether this can be the integral of a genuine class on a closed
    /// manifold: negative `u`-powers must carry a zero value.
    pub fn is_admissible(&self) -> bool {
        self.upow >= 0 || self.value.is_zero()
    }
}

/// `[ω̃]|_F = H(F)·u` for any moment map, normalized or not.
pub fn moment_class(s: &FixedPointSet) -> EquivariantClass {
    EquivariantClass::from_fn(s, 1, |i| s.points[i].moment.clone())
}

/// Equivariant symplectic class for a moment map with `max H = 0`.
pub fn symplectic_class(s: &FixedPointSet) -> Result<EquivariantClass> {
    match s.max_moment() {
        Some(m) if !m.is_zero() => Err(Error::NotNormalized { max: m.clone() }),
        _ => Ok(moment_class(s)),
    }
}

/// Localization: `∫ α = Σ_F α|_F / e_F`.
pub fn integrate(c: &EquivariantClass, s: &FixedPointSet) -> Result<LocalizationValue> {
    c.check_ambient(s)?;
    let value = s
        .points
        .iter()
        .map(|p| &c.coeffs[&p.id] / &p.euler_product())
        .sum();
    Ok(LocalizationValue {
        value,
        upow: c.upow as i64 - s.half_dim() as i64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    /// `(j, ∫ c·ω̃^j)` for every `j` with `upow + j < dim/2`.
    pub residuals: Vec<(u32, Rational)>,
    pub pass: bool,
}

/// Necessary (not sufficient) test that `c` is a genuine class: every
/// integral `∫ c·ω̃^j` of degree below the dimension must vanish.
pub fn membership_necessary(c: &EquivariantClass, s: &FixedPointSet) -> Result<MembershipReport> {
    let omega = symplectic_class(s)?;
    c.check_ambient(s)?;
    let mut residuals = Vec::new();
    let mut j = 0u32;
    while c.upow + (j as usize) < s.half_dim() {
        let v = integrate(&c.multiply(&omega.pow(j))?, s)?;
        residuals.push((j, v.value));
        j += 1;
    }
    let pass = residuals.iter().all(|(_, r)| r.is_zero());
    Ok(MembershipReport { residuals, pass })
}

/// A class vanishing below its base point, from the toric flow-up construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowUpClass {
    pub base: String,
    pub class: EquivariantClass,
}

/// For each vertex `v`, the product of the divisor classes of the facets
/// that the downward edges at `v` leave. One class per vertex, in vertex
/// order.
pub fn flow_up_basis(graph: &GkmGraph, xi: &CircleSelector) -> Result<Vec<FlowUpClass>> {
    let s = graph.restrict_to_circle(xi)?;
    let mut divisor_cache: BTreeMap<usize, EquivariantClass> = BTreeMap::new();
    let mut basis = Vec::with_capacity(graph.vertices.len());
    for v in &graph.vertices {
        let mut class = EquivariantClass::identity(&s);
        for e in v.edges.iter().filter(|e| xi.pair(e) < 0) {
            let facet = v
                .active_facets
                .iter()
                .copied()
                .find(|&f| graph.halfspaces[f].pairing(e) > 0)
                .ok_or_else(|| {
                    Error::InvalidInput(format!("vertex {}: edge {e:?} leaves no facet", v.id))
                })?;
            let tau = match divisor_cache.entry(facet) {
                Entry::Occupied(o) => o.into_mut(),
                Entry::Vacant(slot) => slot.insert(graph.divisor_class(xi, facet)?),
            };
            class = class.multiply(tau)?;
        }
        basis.push(FlowUpClass {
            base: v.id.clone(),
            class,
        });
    }
    Ok(basis)
}

/// Which of the three defining properties a canonical class satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalCertificate {
    /// Vanishes at every `F'` with `H(F') < H(F)`.
    pub vanishes_below: bool,
    /// Restricts to `∏ w⁻(F)` at `F`.
    pub negative_euler_at_base: bool,
    /// Vanishes at every `F' ≠ F` with `k_{F'} ≤ k_F`.
    pub vanishes_at_lower_index: bool,
}

impl CanonicalCertificate {
    pub fn all(&self) -> bool {
        self.vanishes_below && self.negative_euler_at_base && self.vanishes_at_lower_index
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalClass {
    pub base: String,
    pub class: EquivariantClass,
    pub certificate: CanonicalCertificate,
}

/// Checks the three canonical-class properties of `class` based at point `base`.
pub fn certify(class: &EquivariantClass, base: usize, s: &FixedPointSet) -> CanonicalCertificate {
    let f = &s.points[base];
    let k = f.index_of();
    let mut cert = CanonicalCertificate {
        vanishes_below: true,
        negative_euler_at_base: class.coeffs.get(&f.id) == Some(&f.negative_euler())
            && class.upow == k / 2,
        vanishes_at_lower_index: true,
    };
    for (j, p) in s.points.iter().enumerate() {
        if j == base {
            continue;
        }
        let zero = class.coeffs.get(&p.id).is_some_and(Rational::is_zero);
        if p.moment < f.moment && !zero {
            cert.vanishes_below = false;
        }
        if p.index_of() <= k && !zero {
            cert.vanishes_at_lower_index = false;
        }
    }
    cert
}

/// Solves for the canonical class at every fixed point.
///
/// `basis` must hold one flow-up class per point of `s`; each is checked to
/// vanish below its base and to be nonzero at its base, which makes the
/// correction system triangular and hence uniquely solvable.
pub fn canonical_classes(basis: &[FlowUpClass], s: &FixedPointSet) -> Result<Vec<CanonicalClass>> {
    if basis.len() != s.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} flow-up classes for {} fixed points",
            basis.len(),
            s.len()
        )));
    }
    let mut by_point: Vec<&EquivariantClass> = Vec::with_capacity(s.len());
    for p in &s.points {
        let b = basis
            .iter()
            .find(|b| b.base == p.id)
            .ok_or_else(|| Error::Canonical {
                base: p.id.clone(),
                reason: "no flow-up class based here".into(),
            })?;
        b.class.check_ambient(s)?;
        if b.class.upow != p.index_of() / 2 {
            return Err(Error::Canonical {
                base: p.id.clone(),
                reason: format!("flow-up class has u^{}, index is {}", b.class.upow, p.index_of()),
            });
        }
        if b.class.coeffs[&p.id].is_zero() {
            return Err(Error::Canonical {
                base: p.id.clone(),
                reason: "flow-up class vanishes at its base".into(),
            });
        }
        if let Some(q) = s
            .points
            .iter()
            .find(|q| q.moment < p.moment && !b.class.coeffs[&q.id].is_zero())
        {
            return Err(Error::Canonical {
                base: p.id.clone(),
                reason: format!("flow-up class is nonzero at {} below its base", q.id),
            });
        }
        by_point.push(&b.class);
    }

    let mut out = Vec::with_capacity(s.len());
    for (fi, f) in s.points.iter().enumerate() {
        let k = f.index_of();
        // Correcting classes and constraint points coincide: points above
        // H(F) of index at most k_F.
        let above: Vec<usize> = (0..s.len())
            .filter(|&j| j != fi && s.points[j].moment > f.moment && s.points[j].index_of() <= k)
            .collect();
        let flow = by_point[fi];
        let rows = above
            .iter()
            .map(|&e| {
                above
                    .iter()
                    .map(|&w| by_point[w].coeffs[&s.points[e].id].clone())
                    .collect()
            })
            .collect();
        let a = Matrix::from_rows(rows, above.len())?;
        let rhs: Vec<Rational> = above
            .iter()
            .map(|&e| flow.coeffs[&s.points[e].id].clone())
            .collect();
        let q = match solve_exact(&a, &rhs)? {
            LinearSolution::Unique(q) => q,
            other => {
                return Err(Error::CanonicalNotUnique {
                    base: f.id.clone(),
                    kind: other.kind(),
                })
            }
        };

        let mut class = flow.clone();
        for (&w, qw) in above.iter().zip(&q) {
            if qw.is_zero() {
                continue;
            }
            let shift = (k - s.points[w].index_of()) / 2;
            let correction = by_point[w].times_u(shift).scale(&-qw);
            class = class.add(&correction)?;
        }

        let certificate = certify(&class, fi, s);
        if !certificate.all() {
            return Err(Error::Canonical {
                base: f.id.clone(),
                reason: format!("solved class fails certification: {certificate:?}"),
            });
        }
        out.push(CanonicalClass {
            base: f.id.clone(),
            class,
            certificate,
        });
    }
    Ok(out)
}

/// Flow-up basis and canonical classes for a polytope and circle.
pub fn canonical_classes_for(graph: &GkmGraph, xi: &CircleSelector) -> Result<Vec<CanonicalClass>> {
    let s = graph.restrict_to_circle(xi)?;
    canonical_classes(&flow_up_basis(graph, xi)?, &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    fn ints(c: &EquivariantClass, s: &FixedPointSet) -> Vec<Rational> {
        c.coeffs_in_order(s).cloned().collect()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    fn xi() -> CircleSelector {
        CircleSelector::new(vec![1, 2, 4, 8])
    }

    #[test]
    fn identity_is_multiplicative_unit() {
        let s = bundled::cp4();
        let omega = symplectic_class(&s).unwrap();
        assert_eq!(EquivariantClass::identity(&s).multiply(&omega).unwrap(), omega);
    }

    #[test]
    fn omega_squared() {
        let s = bundled::cp4();
        let omega = symplectic_class(&s).unwrap();
        let sq = omega.multiply(&omega).unwrap();
        assert_eq!(sq.upow, 2);
        assert_eq!(ints(&sq, &s), q(&[64, 49, 36, 16, 0]));
        assert_eq!(ints(&omega, &s), q(&[-8, -7, -6, -4, 0]));
    }

    #[test]
    fn divisor_squared() {
        let g = bundled::simplex4().enumerate_vertices().unwrap();
        let s = g.restrict_to_circle(&xi()).unwrap();
        let tau = g.divisor_class(&xi(), 4).unwrap();
        let sq = tau.multiply(&tau).unwrap();
        assert_eq!(ints(&sq, &s), q(&[0, 1, 4, 16, 64]));
        let v = integrate(&sq, &s).unwrap();
        assert_eq!(v.upow, -2);
        assert!(v.value.is_zero());
    }

    #[test]
    fn mismatched_sets_rejected() {
        let a = EquivariantClass::identity(&bundled::cp4());
        let b = EquivariantClass::identity(&bundled::fake_b2_gt_b4().set);
        assert!(matches!(a.multiply(&b), Err(Error::MismatchedPointSets)));
        assert!(integrate(&a, &bundled::fake_b2_gt_b4().set).is_err());
    }

    #[test]
    fn symplectic_class_requires_normalization() {
        let raw = bundled::cp4_unnormalized();
        assert!(matches!(symplectic_class(&raw), Err(Error::NotNormalized { .. })));
        let cp1 = FixedPointSet::new(
            2,
            vec![
                crate::fixedpoints::FixedPointDatum::new("a", (-1).into(), vec![1]).unwrap(),
                crate::fixedpoints::FixedPointDatum::new("b", 0.into(), vec![-1]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(ints(&symplectic_class(&cp1).unwrap(), &cp1), q(&[-1, 0]));
    }

    #[test]
    fn integrate_identity_and_volume() {
        let s = bundled::cp4();
        let v = integrate(&EquivariantClass::identity(&s), &s).unwrap();
        assert_eq!(v, LocalizationValue { value: Rational::zero(), upow: -4 });
        assert!(v.is_admissible());

        let raw = bundled::cp4_unnormalized();
        let v = integrate(&moment_class(&raw).pow(4), &raw).unwrap();
        assert_eq!(v, LocalizationValue { value: Rational::one(), upow: 0 });
        // term-by-term: 0 - 1/21 + 16/24 - 256/96 + 4096/1344
        let oracle = Rational::zero() - Rational::new(1, 21) + Rational::new(16, 24)
            - Rational::new(256, 96)
            + Rational::new(4096, 1344);
        assert_eq!(oracle, Rational::one());

        let z = integrate(&EquivariantClass::zero(&s, 2), &s).unwrap();
        assert!(z.value.is_zero());
    }

    #[test]
    fn flow_up_cp4() {
        let g = bundled::simplex4().enumerate_vertices().unwrap();
        let s = g.restrict_to_circle(&xi()).unwrap();
        let basis = flow_up_basis(&g, &xi()).unwrap();
        assert_eq!(basis[0].class, EquivariantClass::identity(&s));
        assert_eq!(basis[1].class.upow, 1);
        assert_eq!(ints(&basis[1].class, &s), q(&[0, -1, -2, -4, -8]));
        assert_eq!(basis[4].class.upow, 4);
        assert_eq!(ints(&basis[4].class, &s), q(&[0, 0, 0, 0, 1344]));
    }

    #[test]
    fn flow_up_triangular() {
        for p in [bundled::simplex4(), bundled::cube4(), bundled::p2xp2()] {
            let g = p.enumerate_vertices().unwrap();
            let s = g.restrict_to_circle(&xi()).unwrap();
            let basis = flow_up_basis(&g, &xi()).unwrap();
            for (b, f) in basis.iter().zip(&s.points) {
                assert_eq!(b.class.coeffs[&f.id], f.negative_euler());
                for other in &s.points {
                    if other.moment < f.moment {
                        assert!(b.class.coeffs[&other.id].is_zero());
                    }
                }
                assert!(membership_necessary(&b.class, &s).unwrap().pass);
            }
        }
    }

    #[test]
    fn canonical_cp4() {
        let g = bundled::simplex4().enumerate_vertices().unwrap();
        let s = g.restrict_to_circle(&xi()).unwrap();
        let canon = canonical_classes_for(&g, &xi()).unwrap();
        assert_eq!(canon[0].class, EquivariantClass::identity(&s));
        assert_eq!(ints(&canon[1].class, &s), q(&[0, -1, -2, -4, -8]));
        assert!(canon.iter().all(|c| c.certificate.all()));
    }

    #[test]
    fn canonical_cube_index_two_are_dual() {
        let g = bundled::cube4().enumerate_vertices().unwrap();
        let s = g.restrict_to_circle(&xi()).unwrap();
        let canon = canonical_classes_for(&g, &xi()).unwrap();
        let index_two: Vec<&CanonicalClass> = canon
            .iter()
            .filter(|c| s.get(&c.base).unwrap().index_of() == 2)
            .collect();
        assert_eq!(index_two.len(), 4);
        for a in &index_two {
            for b in &index_two {
                if a.base != b.base {
                    assert!(a.class.coeffs[&b.base].is_zero());
                }
            }
        }
    }

    #[test]
    fn canonical_rejects_broken_basis() {
        let g = bundled::simplex4().enumerate_vertices().unwrap();
        let s = g.restrict_to_circle(&xi()).unwrap();
        let mut basis = flow_up_basis(&g, &xi()).unwrap();
        basis[2].class.coeffs.insert("v0".into(), Rational::one());
        assert!(matches!(canonical_classes(&basis, &s), Err(Error::Canonical { .. })));
    }

    #[test]
    fn membership_examples() {
        let s = bundled::cp4();
        let e1 = EquivariantClass::from_coeffs(
            1,
            s.ids().zip(q(&[0, -1, -2, -4, -8])).map(|(k, v)| (k.to_string(), v)).collect(),
        );
        let r = membership_necessary(&e1, &s).unwrap();
        assert!(r.pass);
        assert_eq!(r.residuals.len(), 3);

        let bogus = EquivariantClass::from_fn(&s, 1, |i| if i == 0 { 1.into() } else { 0.into() });
        let r = membership_necessary(&bogus, &s).unwrap();
        assert!(!r.pass);
        assert_eq!(r.residuals[0], (0, Rational::new(1, 64)));

        assert!(membership_necessary(&EquivariantClass::zero(&s, 1), &s).unwrap().pass);
    }
}
