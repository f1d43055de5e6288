//! Combinatorial fixed-point data of a Hamiltonian circle action with
//! isolated fixed points.
//!
//! A fixed point `F` carries its moment value `H(F)` and the integer weights
//! of the circle representation on `T_F M`. Everything the localization
//! machinery needs is derived from these: the Morse index
//! `2·#{negative weights}`, the equivariant Euler class `(∏ w)·u^{dim/2}`, and
//! the Euler class of the negative normal bundle `(∏ w⁻)·u^{index/2}`.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Poly, Rational};

/// One isolated fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDatum")]
pub struct FixedPointDatum {
    pub id: String,
    #[serde(rename = "H")]
    pub moment: Rational,
    pub weights: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    id: String,
    #[serde(rename = "H")]
    moment: Rational,
    weights: Vec<i64>,
}

impl TryFrom<RawDatum> for FixedPointDatum {
    type Error = Error;
    fn try_from(raw: RawDatum) -> Result<Self> {
        FixedPointDatum::new(raw.id, raw.moment, raw.weights)
    }
}

impl FixedPointDatum {
    /// Rejects zero weights: a zero weight means the fixed point is not isolated.
    pub fn new(id: impl Into<String>, moment: Rational, weights: Vec<i64>) -> Result<Self> {
        let id = id.into();
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidInput(format!(
                "fixed point {id}: weight {i} is zero (fixed point not isolated)"
            )));
        }
        Ok(FixedPointDatum {
            id,
            moment,
            weights,
        })
    }

    /// Morse index `k_F = 2·#{i : w_i < 0}`.
    pub fn index_of(&self) -> usize {
        2 * self.weights.iter().filter(|&&w| w < 0).count()
    }

    /// `∏ w_i`, the scalar part of the equivariant Euler class `e_F`.
    pub fn euler_product(&self) -> Rational {
        self.weights.iter().map(|&w| Rational::from(w)).product()
    }

    /// Product of the negative weights, the scalar part of `e⁻_F`.
    pub fn negative_euler(&self) -> Rational {
        self.weights
            .iter()
            .filter(|&&w| w < 0)
            .map(|&w| Rational::from(w))
            .product()
    }

    /// `e_F` as a polynomial in `u`.
    pub fn euler_class(&self) -> Poly {
        Poly::monomial(self.euler_product(), self.weights.len())
    }
}

/// The full fixed-point data of an action on a closed `dim`-manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSet")]
pub struct FixedPointSet {
    pub dim: usize,
    pub points: Vec<FixedPointDatum>,
}

#[derive(Deserialize)]
struct RawSet {
    dim: usize,
    points: Vec<FixedPointDatum>,
}

impl TryFrom<RawSet> for FixedPointSet {
    type Error = Error;
    fn try_from(raw: RawSet) -> Result<Self> {
        FixedPointSet::new(raw.dim, raw.points)
    }
}

impl FixedPointSet {
    /// Checks the structural shape only: `dim ∈ {2,4,6,8}`, weight counts,
    /// unique ids. Consistency conditions belong to [`FixedPointSet::validate`].
    pub fn new(dim: usize, points: Vec<FixedPointDatum>) -> Result<Self> {
        if !matches!(dim, 2 | 4 | 6 | 8) {
            return Err(Error::InvalidInput(format!(
                "dim must be one of 2, 4, 6, 8 (got {dim})"
            )));
        }
        let mut seen = HashSet::new();
        for p in &points {
            if p.weights.len() != dim / 2 {
                return Err(Error::InvalidInput(format!(
                    "fixed point {}: {} weights, expected {}",
                    p.id,
                    p.weights.len(),
                    dim / 2
                )));
            }
            if !seen.insert(p.id.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate fixed point id {}", p.id)));
            }
        }
        Ok(FixedPointSet { dim, points })
    }

    /// Complex dimension, the number of weights per point.
    pub fn half_dim(&self) -> usize {
        self.dim / 2
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.points.iter().map(|p| p.id.as_str())
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    pub fn get(&self, id: &str) -> Option<&FixedPointDatum> {
        self.points.iter().find(|p| p.id == id)
    }

    pub fn max_moment(&self) -> Option<&Rational> {
        self.points.iter().map(|p| &p.moment).max()
    }

    pub fn is_normalized(&self) -> bool {
        self.max_moment().is_some_and(Rational::is_zero)
    }

    /// Shifts every moment value so that the maximum is zero.
    ///
    /// On consistent data the maximum is attained at the unique point of full
    /// index, so every other point ends up with `H < 0`.
    pub fn normalize_moment(&self) -> FixedPointSet {
        let Some(shift) = self.max_moment().cloned() else {
            return self.clone();
        };
        let mut out = self.clone();
        for p in &mut out.points {
            p.moment = &p.moment - &shift;
        }
        out
    }

    /// Reverses the circle: negates all weights and moment values.
    pub fn reversed(&self) -> FixedPointSet {
        let mut out = self.clone();
        for p in &mut out.points {
            p.moment = -&p.moment;
            p.weights.iter_mut().for_each(|w| *w = -*w);
        }
        out
    }

    /// `Σ_F H(F)^k / ∏ w(F)`, the localization of `ω̃^k`.
    pub fn moment_power_sum(&self, k: u32) -> Rational {
        self.points
            .iter()
            .map(|p| &p.moment.pow(k) / &p.euler_product())
            .sum()
    }

    /// Betti numbers from the perfect Morse function `H`: `b_{2i}` counts
    /// fixed points of index `2i`.
    pub fn betti_from_morse(&self) -> BettiVector {
        let mut b = vec![0; self.half_dim() + 1];
        for p in &self.points {
            b[p.index_of() / 2] += 1;
        }
        BettiVector { b }
    }

    /// Runs every necessary-condition check and reports all failures.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();

        checks.push(CheckResult::flag(
            "nonzero weights",
            self.points.iter().all(|p| p.weights.iter().all(|&w| w != 0)),
            None,
        ));
        let ids: HashSet<_> = self.ids().collect();
        checks.push(CheckResult::flag("distinct ids", ids.len() == self.len(), None));

        let mut by_moment: BTreeMap<&Rational, Vec<&str>> = BTreeMap::new();
        for p in &self.points {
            by_moment.entry(&p.moment).or_default().push(&p.id);
        }
        let collisions: Vec<String> = by_moment
            .iter()
            .filter(|(_, ids)| ids.len() > 1)
            .map(|(h, ids)| format!("H = {h}: {}", ids.join(", ")))
            .collect();
        checks.push(CheckResult::flag(
            "distinct moment values",
            collisions.is_empty(),
            (!collisions.is_empty()).then(|| collisions.join("; ")),
        ));

        let top = self.dim;
        let minima: Vec<&FixedPointDatum> =
            self.points.iter().filter(|p| p.index_of() == 0).collect();
        let maxima: Vec<&FixedPointDatum> =
            self.points.iter().filter(|p| p.index_of() == top).collect();
        checks.push(CheckResult::flag(
            "unique minimum",
            minima.len() == 1,
            (minima.len() != 1).then(|| format!("{} points with all weights positive", minima.len())),
        ));
        checks.push(CheckResult::flag(
            "unique maximum",
            maxima.len() == 1,
            (maxima.len() != 1).then(|| format!("{} points with all weights negative", maxima.len())),
        ));
        if let ([min], [max]) = (minima.as_slice(), maxima.as_slice()) {
            let lo = self.points.iter().map(|p| &p.moment).min();
            let hi = self.max_moment();
            let ok = lo == Some(&min.moment) && hi == Some(&max.moment);
            checks.push(CheckResult::flag(
                "extremal moment values",
                ok,
                (!ok).then(|| format!("minimum {} / maximum {} are not the extreme moment values", min.id, max.id)),
            ));
        }

        for k in 0..self.half_dim() as u32 {
            let residual = self.moment_power_sum(k);
            checks.push(CheckResult {
                name: format!("vanishing identity k={k}"),
                pass: residual.is_zero(),
                residual: (!residual.is_zero()).then_some(residual),
                detail: None,
            });
        }

        let betti = self.betti_from_morse();
        let dual = betti.is_poincare_dual();
        checks.push(CheckResult::flag(
            "poincare duality of betti numbers",
            dual,
            (!dual).then(|| format!("betti numbers {:?}", betti.b)),
        ));

        ValidationReport { checks }
    }
}

/// Even-degree Betti numbers `b_0, b_2, …, b_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector {
    pub b: Vec<usize>,
}

impl BettiVector {
    pub fn new(b: Vec<usize>) -> Self {
        BettiVector { b }
    }

    /// `b_0 = b_dim = 1` and `b_{2i} = b_{dim-2i}`.
    pub fn is_poincare_dual(&self) -> bool {
        self.b.first() == Some(&1)
            && self.b.last() == Some(&1)
            && self.b.iter().eq(self.b.iter().rev())
    }

    pub fn reversed(&self) -> BettiVector {
        BettiVector {
            b: self.b.iter().rev().copied().collect(),
        }
    }

    pub fn total(&self) -> usize {
        self.b.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn flag(name: impl Into<String>, pass: bool, detail: Option<String>) -> Self {
        CheckResult {
            name: name.into(),
            pass,
            residual: None,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Whether any `vanishing identity` check failed.
    pub fn identity_failed(&self) -> bool {
        self.failures().any(|c| c.name.starts_with("vanishing identity"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    fn datum(w: &[i64]) -> FixedPointDatum {
        FixedPointDatum::new("p", Rational::zero(), w.to_vec()).unwrap()
    }

    #[test]
    fn index_counts_negative_weights() {
        assert_eq!(datum(&[1, 2, 4, 8]).index_of(), 0);
        assert_eq!(datum(&[-8, -7, -6, -4]).index_of(), 8);
        assert_eq!(datum(&[-1, 1, 3, 7]).index_of(), 2);
    }

    #[test]
    fn euler_products() {
        assert_eq!(datum(&[1, 2, 4, 8]).euler_product(), Rational::from(64));
        assert_eq!(datum(&[-1, 1, 3, 7]).euler_product(), Rational::from(-21));
        assert_eq!(datum(&[-1]).euler_product(), Rational::from(-1));
        assert_eq!(
            datum(&[-1, 1, 3, 7]).euler_class(),
            Poly::monomial(Rational::from(-21), 4)
        );
    }

    #[test]
    fn negative_euler_products() {
        assert_eq!(datum(&[1, 2, 4, 8]).negative_euler(), Rational::one());
        assert_eq!(datum(&[-1, 1, 3, 7]).negative_euler(), Rational::from(-1));
        // (-8)(-7)(-6)(-4): four negative factors.
        assert_eq!(datum(&[-8, -7, -6, -4]).negative_euler(), Rational::from(1344));
    }

    #[test]
    fn zero_weight_rejected() {
        assert!(FixedPointDatum::new("z", Rational::zero(), vec![1, 0]).is_err());
    }

    #[test]
    fn shape_errors() {
        let p = datum(&[1, 2]);
        assert!(FixedPointSet::new(3, vec![]).is_err());
        assert!(FixedPointSet::new(2, vec![p.clone()]).is_err());
        assert!(FixedPointSet::new(4, vec![p.clone(), p]).is_err());
    }

    #[test]
    fn normalize_cp4() {
        let s = bundled::cp4_unnormalized();
        let n = s.normalize_moment();
        let h: Vec<Rational> = n.points.iter().map(|p| p.moment.clone()).collect();
        let expected: Vec<Rational> = [-8, -7, -6, -4, 0].map(Rational::from).to_vec();
        assert_eq!(h, expected);
        assert_eq!(n.normalize_moment(), n);
    }

    #[test]
    fn cp4_validates() {
        let s = bundled::cp4();
        let report = s.validate();
        assert!(report.passed(), "{report:?}");
        let k0 = Rational::new(1, 64) - Rational::new(1, 21) + Rational::new(1, 24)
            - Rational::new(1, 96)
            + Rational::new(1, 1344);
        assert!(k0.is_zero());
    }

    #[test]
    fn flipped_weight_fails_identity() {
        let mut s = bundled::cp4();
        s.points[1].weights[1] = -1;
        let report = s.validate();
        assert!(report.identity_failed());
        let residual = report
            .failures()
            .find(|c| c.name == "vanishing identity k=0")
            .and_then(|c| c.residual.clone())
            .unwrap();
        // 1/∏w at the point changed from 1/(-21) to 1/21.
        assert_eq!(residual, Rational::new(2, 21));
    }

    #[test]
    fn cp1_validates() {
        let s = FixedPointSet::new(
            2,
            vec![
                FixedPointDatum::new("a", 0.into(), vec![1]).unwrap(),
                FixedPointDatum::new("b", 1.into(), vec![-1]).unwrap(),
            ],
        )
        .unwrap();
        assert!(s.validate().passed());
        assert_eq!(s.betti_from_morse().b, vec![1, 1]);
    }

    #[test]
    fn moment_collision_reported() {
        let mut s = bundled::cp4();
        s.points[2].moment = s.points[1].moment.clone();
        let r = s.validate();
        assert!(r.failures().any(|c| c.name == "distinct moment values"));
        // every failure is listed, not only the first
        assert!(r.failures().count() >= 2);
    }

    #[test]
    fn betti_census() {
        assert_eq!(bundled::cp4().betti_from_morse().b, vec![1, 1, 1, 1, 1]);
        let b = bundled::cp4().reversed().betti_from_morse();
        assert_eq!(b, bundled::cp4().betti_from_morse().reversed());
        assert!(!BettiVector::new(vec![1, 2, 1, 1, 1]).is_poincare_dual());
    }
}
