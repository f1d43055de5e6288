//! Unimodality witnesses and contradiction certificates in dimension 8.
//!
//! On genuine data `b₂ ≤ b₄` is witnessed by the restriction matrix of the
//! index-2 canonical classes to the index-4 points having full row rank. If
//! a nonzero combination `α` of degree-2 classes vanished at every index-4
//! point, then `β = α²·ω̃` (with `max H = 0`) would be supported on index-2
//! and index-6 points only, where every localization term
//! `α|_F²·H(F)/∏w(F)` is `≥ 0`. Since `β` has `u`-degree 3 < 4 its integral
//! must vanish, so any nonzero term refutes the data.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cohomology::{
    canonical_classes, flow_up_basis, integrate, membership_necessary, symplectic_class,
    CanonicalClass, EquivariantClass,
};
use crate::delzant::{CircleSelector, DelzantPolytope, GkmGraph};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational};
use crate::fixedpoints::{BettiVector, FixedPointSet};

const VERIFIER_DIM: usize = 8;

fn require_dim8(s: &FixedPointSet) -> Result<()> {
    if s.dim != VERIFIER_DIM {
        return Err(Error::Precondition(format!(
            "the verifier works in dimension 8 (got {})",
            s.dim
        )));
    }
    Ok(())
}

/// `b₀ ≤ b₂ ≤ b₄` for an 8-manifold.
pub fn check_unimodality(b: &BettiVector) -> Result<bool> {
    if b.b.len() != VERIFIER_DIM / 2 + 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected b_0..b_8 (5 entries), got {}",
            b.b.len()
        )));
    }
    // entries are b_0, b_2, b_4, ...
    Ok(b.b[0] <= b.b[1] && b.b[1] <= b.b[2])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRow {
    pub base: String,
    /// Restrictions to the index-4 points.
    pub restrictions: BTreeMap<String, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremWitness {
    pub betti: BettiVector,
    pub rank_2_to_4: usize,
    pub unimodal: bool,
    pub rows: Vec<WitnessRow>,
}

impl TheoremWitness {
    /// The restriction map from index-2 classes to index-4 points is injective.
    pub fn full_rank(&self) -> bool {
        self.rank_2_to_4 == self.betti.b[1]
    }
}

/// Exact rank of the `b₂ × b₄` matrix `(α_i|_F)` over index-2 canonical
/// classes `α_i` and index-4 points `F`.
pub fn restriction_rank_2_to_4(canon: &[CanonicalClass], s: &FixedPointSet) -> Result<TheoremWitness> {
    require_dim8(s)?;
    let index4: Vec<&str> = s
        .points
        .iter()
        .filter(|p| p.index_of() == 4)
        .map(|p| p.id.as_str())
        .collect();
    let mut rows = Vec::new();
    for p in s.points.iter().filter(|p| p.index_of() == 2) {
        let c = canon.iter().find(|c| c.base == p.id).ok_or_else(|| {
            Error::Precondition(format!("no canonical class for index-2 point {}", p.id))
        })?;
        c.class.check_ambient(s)?;
        if !c.certificate.all() {
            return Err(Error::Precondition(format!("canonical class at {} is not certified", p.id)));
        }
        rows.push(WitnessRow {
            base: p.id.clone(),
            restrictions: index4
                .iter()
                .map(|&id| (id.to_string(), c.class.coeffs[id].clone()))
                .collect(),
        });
    }
    let matrix = restriction_matrix(&rows, &index4)?;
    // rank = b₂ − dim{c : Σ cᵢ rowᵢ = 0}
    let rank = rows.len() - matrix.transpose().kernel().len();
    let betti = s.betti_from_morse();
    let unimodal = check_unimodality(&betti)?;
    Ok(TheoremWitness {
        betti,
        rank_2_to_4: rank,
        unimodal,
        rows,
    })
}

fn restriction_matrix(rows: &[WitnessRow], cols: &[&str]) -> Result<Matrix> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| cols.iter().map(|&id| r.restrictions[id].clone()).collect())
            .collect(),
        cols.len(),
    )
}

/// Basis of the coefficient vectors `c` with `Σ cᵢ·claimedᵢ` vanishing at
/// every index-4 point.
pub fn index4_kernel(s: &FixedPointSet, claimed: &[EquivariantClass]) -> Result<Vec<Vec<Rational>>> {
    let index4: Vec<&str> = s
        .points
        .iter()
        .filter(|p| p.index_of() == 4)
        .map(|p| p.id.as_str())
        .collect();
    for c in claimed {
        c.check_ambient(s)?;
    }
    let cols: Vec<Vec<Rational>> = index4
        .iter()
        .map(|&id| claimed.iter().map(|c| c.coeffs[id].clone()).collect())
        .collect();
    Ok(Matrix::from_rows(cols, claimed.len())?.kernel())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContradictionCertificate {
    pub alpha_coeffs: Vec<Rational>,
    /// `α|_F` (coefficient of `u`).
    pub alpha: BTreeMap<String, Rational>,
    /// `β|_F = α|_F²·H(F)` (coefficient of `u³`).
    pub beta_restrictions: BTreeMap<String, Rational>,
    /// `β|_F / e_F` per point.
    pub localization_terms: BTreeMap<String, Rational>,
    pub beta_upow: usize,
    pub total: Rational,
}

impl ContradictionCertificate {
    /// Re-adds the terms and re-checks their signs.
    pub fn verify(&self, s: &FixedPointSet) -> bool {
        let sum: Rational = self.localization_terms.values().sum();
        let signs_ok = s.points.iter().all(|p| {
            let t = &self.localization_terms[&p.id];
            match p.index_of() {
                2 | 6 => !t.is_negative(),
                _ => t.is_zero(),
            }
        });
        sum == self.total && signs_ok && self.total.is_positive() && self.beta_upow < s.half_dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ContradictionOutcome {
    Certificate(ContradictionCertificate),
    NoContradiction { total: Rational },
}

/// Builds `α = Σ cᵢ·claimedᵢ` and `β = α²·ω̃`, and localizes `β`.
///
/// Errors if `α` is nonzero at an index-4 point or if `β` is nonzero at an
/// index-0/4/8 point; either breaks the sign argument.
pub fn contradiction_certificate(
    s: &FixedPointSet,
    claimed: &[EquivariantClass],
    c: &[Rational],
) -> Result<ContradictionOutcome> {
    require_dim8(s)?;
    let omega = symplectic_class(s)?;
    if claimed.len() != c.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} claimed classes but {} coefficients",
            claimed.len(),
            c.len()
        )));
    }
    let mut alpha = EquivariantClass::zero(s, 1);
    for (class, ci) in claimed.iter().zip(c) {
        class.check_ambient(s)?;
        if class.upow != 1 {
            return Err(Error::Precondition(format!(
                "claimed classes must have degree 2 (u^1), got u^{}",
                class.upow
            )));
        }
        alpha = alpha.add(&class.scale(ci))?;
    }

    let nonzero_at = |class: &EquivariantClass, indices: &[usize]| -> Vec<String> {
        s.points
            .iter()
            .filter(|p| indices.contains(&p.index_of()) && !class.coeffs[&p.id].is_zero())
            .map(|p| format!("{} = {}", p.id, class.coeffs[&p.id]))
            .collect()
    };
    let bad = nonzero_at(&alpha, &[4]);
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "α does not vanish at index-4 points: {}",
            bad.join(", ")
        )));
    }

    let beta = alpha.pow(2).multiply(&omega)?;
    let bad = nonzero_at(&beta, &[0, 4, 8]);
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "β is not supported on index-2/6 points: {}",
            bad.join(", ")
        )));
    }
    let localization_terms: BTreeMap<String, Rational> = s
        .points
        .iter()
        .map(|p| (p.id.clone(), &beta.coeffs[&p.id] / &p.euler_product()))
        .collect();
    let total = integrate(&beta, s)?.value;
    if total.is_zero() {
        return Ok(ContradictionOutcome::NoContradiction { total });
    }
    Ok(ContradictionOutcome::Certificate(ContradictionCertificate {
        alpha_coeffs: c.to_vec(),
        alpha: alpha.coeffs,
        beta_restrictions: beta.coeffs.clone(),
        localization_terms,
        beta_upow: beta.upow,
        total,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignEntry {
    pub id: String,
    pub index: usize,
    pub euler_product: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignLemmaReport {
    pub entries: Vec<SignEntry>,
    pub pass: bool,
}

/// `∏w(F) < 0` at every point of index 2 or 6.
pub fn sign_lemma_check(s: &FixedPointSet) -> Result<SignLemmaReport> {
    require_dim8(s)?;
    let entries: Vec<SignEntry> = s
        .points
        .iter()
        .filter(|p| matches!(p.index_of(), 2 | 6))
        .map(|p| {
            let e = p.euler_product();
            SignEntry {
                id: p.id.clone(),
                index: p.index_of(),
                pass: e.is_negative(),
                euler_product: e,
            }
        })
        .collect();
    let pass = entries.iter().all(|e| e.pass);
    Ok(SignLemmaReport { entries, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub forward: BettiVector,
    pub backward: BettiVector,
    pub palindromic: bool,
    pub reversal_matches: bool,
    pub pass: bool,
}

/// Betti numbers for `ξ` and `−ξ` must be mutual reverses and palindromic.
pub fn duality_check(graph: &GkmGraph, xi: &CircleSelector) -> Result<DualityReport> {
    let forward = graph.restrict_to_circle(xi)?.betti_from_morse();
    let backward = graph.restrict_to_circle(&xi.negated())?.betti_from_morse();
    let palindromic = forward.is_poincare_dual() && backward.is_poincare_dual();
    let reversal_matches = forward == backward.reversed();
    Ok(DualityReport {
        pass: palindromic && reversal_matches,
        forward,
        backward,
        palindromic,
        reversal_matches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeIdentity {
    /// `Σ_F ⟨v,ξ⟩^n / ∏w(F)` with the unshifted moment map.
    pub localization: Rational,
    pub volume: Rational,
    /// `(−1)^n·n!·vol`; the sign is `+` in the 8-dimensional case.
    pub expected: Rational,
    pub pass: bool,
}

/// Top-degree localization of `ω̃^n` against the triangulated volume.
pub fn volume_identity(graph: &GkmGraph, xi: &CircleSelector) -> Result<VolumeIdentity> {
    let raw = graph.restrict_to_circle_raw(xi)?;
    let n = graph.dim;
    let localization = raw.moment_power_sum(n as u32);
    let volume = graph.polytope_volume();
    let factorial: i64 = (1..=n as i64).product();
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let expected = &volume * &Rational::from(sign * factorial);
    Ok(VolumeIdentity {
        pass: localization == expected,
        localization,
        volume,
        expected,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub stage: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct FullReport {
    pub xi: Vec<i64>,
    pub pass: bool,
    pub stages: Vec<StageReport>,
}

struct Stages(Vec<StageReport>);

impl Stages {
    fn ok(&mut self, stage: &'static str, pass: bool, details: impl Serialize) {
        self.0.push(StageReport {
            stage,
            pass,
            skipped: None,
            error: None,
            details: serde_json::to_value(details).expect("report values serialize"),
        });
    }

    fn err(&mut self, stage: &'static str, e: Error) {
        self.0.push(StageReport {
            stage,
            pass: false,
            skipped: None,
            error: Some(e.to_string()),
            details: serde_json::Value::Null,
        });
    }

    fn skip(&mut self, stage: &'static str, why: &str) {
        self.0.push(StageReport {
            stage,
            pass: true,
            skipped: Some(why.to_string()),
            error: None,
            details: serde_json::Value::Null,
        });
    }
}

/// Runs every stage from ingest to duality. A stage that errors is recorded
/// with its message and the remaining stages are not run.
pub fn full_report(p: &DelzantPolytope, xi: &CircleSelector) -> FullReport {
    let mut st = Stages(Vec::new());
    run_stages(p, xi, &mut st);
    let pass = st.0.iter().all(|s| s.pass);
    FullReport {
        xi: xi.xi.clone(),
        pass,
        stages: st.0,
    }
}

fn run_stages(p: &DelzantPolytope, xi: &CircleSelector, st: &mut Stages) {
    macro_rules! attempt {
        ($stage:literal, $e:expr) => {
            match $e {
                Ok(v) => v,
                Err(e) => return st.err($stage, e),
            }
        };
    }

    let graph = attempt!("ingest", p.enumerate_vertices());
    let delzant = graph.check_delzant();
    let delzant_pass = delzant.pass;
    st.ok(
        "ingest",
        delzant_pass,
        serde_json::json!({
            "vertices": graph.vertex_count(),
            "halfspaces": graph.halfspaces.len(),
            "delzant": delzant,
        }),
    );
    if !delzant_pass {
        return;
    }

    let s = attempt!("restrict", graph.restrict_to_circle(xi));
    st.ok(
        "restrict",
        true,
        serde_json::json!({ "fixed_points": &s }),
    );

    let validation = s.validate();
    let valid = validation.passed();
    st.ok("validate", valid, &validation);
    if !valid {
        return;
    }

    let basis = attempt!("flow_up", flow_up_basis(&graph, xi));
    let mut flow_ok = true;
    let mut flow_rows = Vec::new();
    for b in &basis {
        let m = attempt!("flow_up", membership_necessary(&b.class, &s));
        flow_ok &= m.pass;
        flow_rows.push(serde_json::json!({ "base": b.base, "class": b.class, "membership": m }));
    }
    st.ok("flow_up", flow_ok, flow_rows);

    let canon = attempt!("canonical", canonical_classes(&basis, &s));
    let mut canon_ok = true;
    let mut canon_rows = Vec::new();
    for c in &canon {
        let m = attempt!("canonical", membership_necessary(&c.class, &s));
        canon_ok &= m.pass && c.certificate.all();
        canon_rows.push(serde_json::json!({
            "base": c.base,
            "class": c.class,
            "certificate": c.certificate,
            "membership": m,
        }));
    }
    st.ok("canonical", canon_ok, canon_rows);

    let vanishing: Vec<(u32, Rational)> = (0..s.half_dim() as u32)
        .map(|k| (k, s.moment_power_sum(k)))
        .collect();
    let vanishing_ok = vanishing.iter().all(|(_, r)| r.is_zero());
    let vol = attempt!("integrate", volume_identity(&graph, xi));
    let integrate_ok = vanishing_ok && vol.pass;
    st.ok(
        "integrate",
        integrate_ok,
        serde_json::json!({ "vanishing": vanishing, "volume_identity": vol }),
    );

    if s.dim == VERIFIER_DIM {
        let sign = attempt!("sign_lemma", sign_lemma_check(&s));
        st.ok("sign_lemma", sign.pass, &sign);
        let w = attempt!("witness", restriction_rank_2_to_4(&canon, &s));
        st.ok("witness", w.unimodal && w.full_rank(), &w);
    } else {
        st.skip("sign_lemma", "dimension is not 8");
        st.skip("witness", "dimension is not 8");
    }

    let d = attempt!("duality", duality_check(&graph, xi));
    st.ok("duality", d.pass, &d);
}
