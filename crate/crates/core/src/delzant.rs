//! Smooth moment polytopes as a source of genuine fixed-point data.
//!
//! A polytope is given by inward half-spaces `⟨a, x⟩ + b ≥ 0`. Vertices are
//! found by solving every `n`-subset of facet equations exactly; edge
//! directions at a vertex are the primitive generators of its tangent cone.
//! Restricting the torus action to a generic circle `ξ` turns each vertex `v`
//! into an isolated fixed point with weights `⟨e, ξ⟩` over its edges `e` and
//! moment value `⟨v, ξ⟩`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cohomology::EquivariantClass;
use crate::error::{Error, Result};
use crate::exact::{solve_exact, LinearSolution, Matrix, Rational};
use crate::fixedpoints::{FixedPointDatum, FixedPointSet};

/// The constraint `⟨normal, x⟩ + offset ≥ 0` with a primitive inward normal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpace {
    pub normal: Vec<i64>,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: Vec<i64>, offset: Rational) -> Self {
        HalfSpace { normal, offset }
    }

    /// `⟨normal, x⟩ + offset`.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        let dot: Rational = self
            .normal
            .iter()
            .zip(x)
            .map(|(&a, xi)| Rational::from(a) * xi)
            .sum();
        dot + &self.offset
    }

    pub fn pairing(&self, d: &[i64]) -> i64 {
        dot(&self.normal, d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPolytope")]
pub struct DelzantPolytope {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
}

impl TryFrom<RawPolytope> for DelzantPolytope {
    type Error = Error;
    fn try_from(raw: RawPolytope) -> Result<Self> {
        DelzantPolytope::new(raw.dim, raw.halfspaces)
    }
}

/// Circle subgroup direction `ξ` inside the torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CircleSelector {
    pub xi: Vec<i64>,
}

impl CircleSelector {
    pub fn new(xi: Vec<i64>) -> Self {
        CircleSelector { xi }
    }

    pub fn negated(&self) -> Self {
        CircleSelector {
            xi: self.xi.iter().map(|x| -x).collect(),
        }
    }

    pub fn pair(&self, e: &[i64]) -> i64 {
        dot(e, &self.xi)
    }

    pub fn pair_point(&self, x: &[Rational]) -> Rational {
        x.iter()
            .zip(&self.xi)
            .map(|(xi, &c)| xi * Rational::from(c))
            .sum()
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray.
fn primitive(v: &[Rational]) -> Result<Vec<i64>> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::InvalidInput("zero direction vector".into()));
    }
    ints.iter()
        .map(|x| {
            i64::try_from(x / &g)
                .map_err(|_| Error::InvalidInput("edge direction overflows i64".into()))
        })
        .collect()
}

impl DelzantPolytope {
    /// Checks shapes and primitivity of the normals. Geometric conditions
    /// (boundedness, simplicity, smoothness) are checked on enumeration.
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if !(1..=4).contains(&dim) {
            return Err(Error::InvalidInput(format!(
                "polytope dimension must be in 1..=4 (got {dim})"
            )));
        }
        if halfspaces.is_empty() {
            return Err(Error::InvalidInput("no half-spaces".into()));
        }
        for (i, h) in halfspaces.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "half-space {i}: normal has {} entries, expected {dim}",
                    h.normal.len()
                )));
            }
            match gcd_all(&h.normal) {
                0 => {
                    return Err(Error::InvalidInput(format!("half-space {i}: zero normal")))
                }
                1 => {}
                g => {
                    return Err(Error::InvalidInput(format!(
                        "half-space {i}: normal {:?} is not primitive (gcd {g})",
                        h.normal
                    )))
                }
            }
        }
        Ok(DelzantPolytope { dim, halfspaces })
    }

    fn normal_matrix(&self, facets: &[usize]) -> Matrix {
        let rows = facets
            .iter()
            .map(|&i| {
                self.halfspaces[i]
                    .normal
                    .iter()
                    .map(|&a| Rational::from(a))
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows, self.dim).expect("normals have length dim")
    }

    /// Finds all vertices and their edge directions.
    pub fn enumerate_vertices(&self) -> Result<GkmGraph> {
        let n = self.dim;
        let m = self.halfspaces.len();
        let mut coords: BTreeSet<Vec<Rational>> = BTreeSet::new();
        for subset in (0..m).combinations(n) {
            let a = self.normal_matrix(&subset);
            let rhs: Vec<Rational> = subset
                .iter()
                .map(|&i| -&self.halfspaces[i].offset)
                .collect();
            let Ok(LinearSolution::Unique(x)) = solve_exact(&a, &rhs) else {
                continue;
            };
            if self.halfspaces.iter().all(|h| !h.slack(&x).is_negative()) {
                coords.insert(x);
            }
        }

        if coords.is_empty() {
            let all: Vec<usize> = (0..m).collect();
            let kernel = self.normal_matrix(&all).kernel();
            return match kernel.into_iter().next() {
                Some(direction) => Err(Error::Unbounded { direction }),
                None => Err(Error::Empty),
            };
        }

        // Colex order: compare the last coordinate first.
        let mut coords: Vec<Vec<Rational>> = coords.into_iter().collect();
        coords.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));

        let mut vertices = Vec::with_capacity(coords.len());
        for (idx, x) in coords.into_iter().enumerate() {
            let active: Vec<usize> = (0..m)
                .filter(|&i| self.halfspaces[i].slack(&x).is_zero())
                .collect();
            let edges = self.tangent_cone_rays(&active)?;
            for e in &edges {
                if self.halfspaces.iter().all(|h| h.pairing(e) >= 0) {
                    return Err(Error::Unbounded {
                        direction: e.iter().map(|&c| Rational::from(c)).collect(),
                    });
                }
            }
            vertices.push(GkmVertex {
                id: format!("v{idx}"),
                coords: x,
                active_facets: active,
                edges,
            });
        }
        Ok(GkmGraph {
            dim: n,
            halfspaces: self.halfspaces.clone(),
            vertices,
        })
    }

    /// Extreme rays of `{d : ⟨a_i, d⟩ ≥ 0, i ∈ active}`, as primitive vectors.
    fn tangent_cone_rays(&self, active: &[usize]) -> Result<Vec<Vec<i64>>> {
        let n = self.dim;
        let mut rays: Vec<Vec<i64>> = Vec::new();
        for subset in active.iter().copied().combinations(n - 1) {
            let kernel = self.normal_matrix(&subset).kernel();
            if kernel.len() != 1 {
                continue;
            }
            let d = primitive(&kernel[0])?;
            for sign in [1i64, -1] {
                let cand: Vec<i64> = d.iter().map(|x| x * sign).collect();
                let feasible = active
                    .iter()
                    .all(|&i| self.halfspaces[i].pairing(&cand) >= 0);
                if feasible && !rays.contains(&cand) {
                    rays.push(cand);
                }
            }
        }
        rays.sort();
        Ok(rays)
    }

    pub fn check_delzant(&self) -> Result<DelzantReport> {
        Ok(self.enumerate_vertices()?.check_delzant())
    }

    pub fn is_generic(&self, xi: &CircleSelector) -> Result<bool> {
        Ok(self.enumerate_vertices()?.is_generic(xi))
    }

    pub fn restrict_to_circle(&self, xi: &CircleSelector) -> Result<FixedPointSet> {
        self.enumerate_vertices()?.restrict_to_circle(xi)
    }

    pub fn polytope_volume(&self) -> Result<Rational> {
        Ok(self.enumerate_vertices()?.polytope_volume())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkmVertex {
    pub id: String,
    pub coords: Vec<Rational>,
    pub active_facets: Vec<usize>,
    /// Primitive directions along the edges leaving the vertex.
    pub edges: Vec<Vec<i64>>,
}

impl GkmVertex {
    pub fn is_simple(&self, dim: usize) -> bool {
        self.active_facets.len() == dim && self.edges.len() == dim
    }
}

/// Vertices, edge directions and facet incidences of a polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkmGraph {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
    pub vertices: Vec<GkmVertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCheck {
    pub id: String,
    pub coords: Vec<Rational>,
    pub active_facets: Vec<usize>,
    pub simple: bool,
    pub smooth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_determinant: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelzantReport {
    pub vertices: Vec<VertexCheck>,
    /// Half-spaces that touch no vertex.
    pub redundant_halfspaces: Vec<usize>,
    pub pass: bool,
}

impl DelzantReport {
    pub fn offending_vertices(&self) -> impl Iterator<Item = &VertexCheck> {
        self.vertices.iter().filter(|v| !(v.simple && v.smooth))
    }
}

impl GkmGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn check_delzant(&self) -> DelzantReport {
        let n = self.dim;
        let vertices: Vec<VertexCheck> = self
            .vertices
            .iter()
            .map(|v| {
                let simple = v.is_simple(n);
                let det = simple.then(|| {
                    let rows: Vec<Vec<i64>> = v.edges.clone();
                    Matrix::from_int_rows(&rows)
                        .and_then(|m| m.determinant())
                        .expect("square edge matrix")
                });
                let smooth = det.as_ref().is_some_and(|d| d.abs() == Rational::one());
                VertexCheck {
                    id: v.id.clone(),
                    coords: v.coords.clone(),
                    active_facets: v.active_facets.clone(),
                    simple,
                    smooth,
                    edge_determinant: det,
                }
            })
            .collect();
        let redundant_halfspaces: Vec<usize> = (0..self.halfspaces.len())
            .filter(|i| !self.vertices.iter().any(|v| v.active_facets.contains(i)))
            .collect();
        let pass = redundant_halfspaces.is_empty() && vertices.iter().all(|v| v.simple && v.smooth);
        DelzantReport {
            vertices,
            redundant_halfspaces,
            pass,
        }
    }

    /// First edge pairing to zero with `ξ`, as (vertex id, edge).
    pub fn first_killed_edge(&self, xi: &CircleSelector) -> Option<(&str, &[i64])> {
        self.vertices.iter().find_map(|v| {
            v.edges
                .iter()
                .find(|e| xi.pair(e) == 0)
                .map(|e| (v.id.as_str(), e.as_slice()))
        })
    }

    pub fn is_generic(&self, xi: &CircleSelector) -> bool {
        xi.xi.len() == self.dim && self.first_killed_edge(xi).is_none()
    }

    fn require_generic(&self, xi: &CircleSelector) -> Result<()> {
        if xi.xi.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "xi has {} entries for a {}-dimensional polytope",
                xi.xi.len(),
                self.dim
            )));
        }
        match self.first_killed_edge(xi) {
            Some((vertex, edge)) => Err(Error::NonGeneric {
                xi: xi.xi.clone(),
                vertex: vertex.to_string(),
                edge: edge.to_vec(),
            }),
            None => Ok(()),
        }
    }

    /// Fixed points with `H(v) = ⟨v, ξ⟩` exactly as on the polytope.
    pub fn restrict_to_circle_raw(&self, xi: &CircleSelector) -> Result<FixedPointSet> {
        self.require_generic(xi)?;
        let points = self
            .vertices
            .iter()
            .map(|v| {
                let mut weights: Vec<i64> = v.edges.iter().map(|e| xi.pair(e)).collect();
                weights.sort_unstable();
                FixedPointDatum::new(v.id.clone(), xi.pair_point(&v.coords), weights)
            })
            .collect::<Result<Vec<_>>>()?;
        FixedPointSet::new(2 * self.dim, points)
    }

    /// Fixed points with the moment map shifted to `max H = 0`.
    pub fn restrict_to_circle(&self, xi: &CircleSelector) -> Result<FixedPointSet> {
        Ok(self.restrict_to_circle_raw(xi)?.normalize_moment())
    }

    /// The edge at `vertex` leaving `facet`, if the vertex lies on it.
    pub fn edge_off_facet(&self, vertex: usize, facet: usize) -> Option<&[i64]> {
        let v = &self.vertices[vertex];
        if !v.active_facets.contains(&facet) {
            return None;
        }
        let h = &self.halfspaces[facet];
        v.edges
            .iter()
            .find(|e| h.pairing(e) > 0)
            .map(Vec::as_slice)
    }

    /// Equivariant Thom class of the toric divisor over `facet`: restricts to
    /// `⟨e, ξ⟩·u` at each vertex on the facet, `e` the edge leaving it, and to
    /// zero elsewhere.
    pub fn divisor_class(&self, xi: &CircleSelector, facet: usize) -> Result<EquivariantClass> {
        self.require_generic(xi)?;
        if facet >= self.halfspaces.len() {
            return Err(Error::InvalidInput(format!(
                "facet index {facet} out of range (polytope has {})",
                self.halfspaces.len()
            )));
        }
        let coeffs = (0..self.vertices.len())
            .map(|i| {
                let value = self
                    .edge_off_facet(i, facet)
                    .map_or_else(Rational::zero, |e| Rational::from(xi.pair(e)));
                (self.vertices[i].id.clone(), value)
            })
            .collect::<BTreeMap<_, _>>();
        Ok(EquivariantClass::from_coeffs(1, coeffs))
    }

    fn affine_rank(&self, vertex_set: &[usize]) -> usize {
        let Some((&first, rest)) = vertex_set.split_first() else {
            return 0;
        };
        if rest.is_empty() {
            return 0;
        }
        let base = &self.vertices[first].coords;
        let rows = rest
            .iter()
            .map(|&i| {
                self.vertices[i]
                    .coords
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows, self.dim)
            .expect("coordinates have length dim")
            .rank()
    }

    /// Pulling triangulation: cone from the lowest-index vertex of each face
    /// over the triangulated facets of that face not containing it.
    fn triangulate(&self, face: &[usize], face_dim: usize, out: &mut Vec<Vec<usize>>) {
        if face_dim == 0 {
            out.push(vec![face[0]]);
            return;
        }
        let apex = face[0];
        let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for h in 0..self.halfspaces.len() {
            let sub: Vec<usize> = face
                .iter()
                .copied()
                .filter(|&v| self.vertices[v].active_facets.contains(&h))
                .collect();
            if sub.is_empty() || sub.len() == face.len() || sub.contains(&apex) {
                continue;
            }
            if self.affine_rank(&sub) == face_dim - 1 {
                subfaces.insert(sub);
            }
        }
        for sub in subfaces {
            let mut simplices = Vec::new();
            self.triangulate(&sub, face_dim - 1, &mut simplices);
            for mut s in simplices {
                s.insert(0, apex);
                out.push(s);
            }
        }
    }

    /// Exact Euclidean volume from a triangulation, never from fixed-point
    /// data.
    pub fn polytope_volume(&self) -> Rational {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut simplices = Vec::new();
        self.triangulate(&all, self.dim, &mut simplices);
        let factorial: i64 = (1..=self.dim as i64).product();
        simplices
            .iter()
            .map(|s| {
                let base = &self.vertices[s[0]].coords;
                let rows = s[1..]
                    .iter()
                    .map(|&i| {
                        self.vertices[i]
                            .coords
                            .iter()
                            .zip(base)
                            .map(|(a, b)| a - b)
                            .collect()
                    })
                    .collect();
                Matrix::from_rows(rows, self.dim)
                    .and_then(|m| m.determinant())
                    .expect("simplex matrix is square")
                    .abs()
            })
            .sum::<Rational>()
            / Rational::from(factorial)
    }

    pub fn vertex_position(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    fn hs(normal: &[i64], offset: i64) -> HalfSpace {
        HalfSpace::new(normal.to_vec(), offset.into())
    }

    fn square_pyramid() -> DelzantPolytope {
        DelzantPolytope::new(
            3,
            vec![
                hs(&[0, 0, 1], 0),
                hs(&[1, 0, -1], 0),
                hs(&[0, 1, -1], 0),
                hs(&[-1, 0, -1], 2),
                hs(&[0, -1, -1], 2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn simplex_vertices() {
        let g = bundled::simplex4().enumerate_vertices().unwrap();
        assert_eq!(g.vertex_count(), 5);
        let coords: Vec<Vec<Rational>> = g.vertices.iter().map(|v| v.coords.clone()).collect();
        let mut expected = vec![vec![Rational::zero(); 4]];
        for i in 0..4 {
            let mut e = vec![Rational::zero(); 4];
            e[i] = Rational::one();
            expected.push(e);
        }
        assert_eq!(coords, expected);
    }

    #[test]
    fn vertex_census() {
        assert_eq!(bundled::cube4().enumerate_vertices().unwrap().vertex_count(), 16);
        assert_eq!(bundled::p2xp2().enumerate_vertices().unwrap().vertex_count(), 9);
    }

    #[test]
    fn bundled_polytopes_are_delzant() {
        for p in [bundled::simplex4(), bundled::cube4(), bundled::p2xp2()] {
            let r = p.check_delzant().unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn pyramid_apex_is_not_simple() {
        let r = square_pyramid().check_delzant().unwrap();
        assert!(!r.pass);
        let bad: Vec<&VertexCheck> = r.offending_vertices().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].coords, vec![Rational::one(); 3]);
        assert_eq!(bad[0].active_facets.len(), 4);
        assert!(!bad[0].simple);
    }

    #[test]
    fn non_smooth_vertex_detected() {
        // Quadrilateral whose cone at the origin is spanned by (1,0),(1,2): det 2.
        let p = DelzantPolytope::new(
            2,
            vec![hs(&[0, 1], 0), hs(&[2, -1], 0), hs(&[0, -1], 2), hs(&[-1, 0], 3)],
        )
        .unwrap();
        let r = p.check_delzant().unwrap();
        assert!(!r.pass);
        assert!(r.offending_vertices().any(|v| v.simple && !v.smooth));
    }

    #[test]
    fn unbounded_and_empty() {
        let orthant = DelzantPolytope::new(2, vec![hs(&[1, 0], 0), hs(&[0, 1], 0)]).unwrap();
        assert!(matches!(orthant.enumerate_vertices(), Err(Error::Unbounded { .. })));
        let slab = DelzantPolytope::new(2, vec![hs(&[1, 0], 0), hs(&[-1, 0], 1)]).unwrap();
        match slab.enumerate_vertices() {
            Err(Error::Unbounded { direction }) => {
                assert!(direction[0].is_zero() && !direction[1].is_zero())
            }
            other => panic!("{other:?}"),
        }
        let empty = DelzantPolytope::new(1, vec![hs(&[1], -2), hs(&[-1], 1)]).unwrap();
        assert!(matches!(empty.enumerate_vertices(), Err(Error::Empty)));
    }

    #[test]
    fn non_primitive_normal_rejected() {
        assert!(DelzantPolytope::new(2, vec![hs(&[2, 0], 0)]).is_err());
        assert!(DelzantPolytope::new(5, vec![hs(&[1, 0, 0, 0, 0], 0)]).is_err());
    }

    #[test]
    fn simplex_weights() {
        let s = bundled::simplex4()
            .restrict_to_circle(&CircleSelector::new(vec![1, 2, 4, 8]))
            .unwrap();
        let weights: Vec<Vec<i64>> = s.points.iter().map(|p| p.weights.clone()).collect();
        assert_eq!(
            weights,
            vec![
                vec![1, 2, 4, 8],
                vec![-1, 1, 3, 7],
                vec![-2, -1, 2, 6],
                vec![-4, -3, -2, 4],
                vec![-8, -7, -6, -4],
            ]
        );
        let h: Vec<Rational> = s.points.iter().map(|p| p.moment.clone()).collect();
        assert_eq!(h, [-8, -7, -6, -4, 0].map(Rational::from).to_vec());
        assert_eq!(s, bundled::cp4());
    }

    #[test]
    fn cube_weights_are_signed_xi() {
        let xi = [1i64, 2, 4, 8];
        let g = bundled::cube4().enumerate_vertices().unwrap();
        let s = g.restrict_to_circle(&CircleSelector::new(xi.to_vec())).unwrap();
        assert_eq!(s.len(), 16);
        for (v, p) in g.vertices.iter().zip(&s.points) {
            let mut expected: Vec<i64> = v
                .coords
                .iter()
                .zip(xi)
                .map(|(c, x)| if c.is_zero() { x } else { -x })
                .collect();
            expected.sort_unstable();
            assert_eq!(p.weights, expected);
        }
    }

    #[test]
    fn non_generic_circle_named() {
        let err = bundled::cube4()
            .restrict_to_circle(&CircleSelector::new(vec![1, 0, 0, 0]))
            .unwrap_err();
        match err {
            Error::NonGeneric { edge, .. } => assert_eq!(edge[0], 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn genericity_of_geometric_xi() {
        let xi = CircleSelector::new(vec![1, 3, 9, 27]);
        for p in [bundled::simplex4(), bundled::cube4(), bundled::p2xp2()] {
            assert!(p.is_generic(&xi).unwrap());
        }
        assert!(!bundled::cube4()
            .is_generic(&CircleSelector::new(vec![1, 0, 0, 0]))
            .unwrap());
    }

    #[test]
    fn volumes() {
        assert_eq!(bundled::simplex4().polytope_volume().unwrap(), Rational::new(1, 24));
        assert_eq!(bundled::cube4().polytope_volume().unwrap(), Rational::one());
        assert_eq!(bundled::p2xp2().polytope_volume().unwrap(), Rational::new(1, 4));
        // non-simple input still triangulates: pyramid over a 2x2 square, height 1
        assert_eq!(square_pyramid().polytope_volume().unwrap(), Rational::new(4, 3));
    }

    #[test]
    fn simplex_divisor_classes() {
        let g = bundled::simplex4().enumerate_vertices().unwrap();
        let xi = CircleSelector::new(vec![1, 2, 4, 8]);
        let tau = g.divisor_class(&xi, 4).unwrap();
        assert_eq!(tau.upow, 1);
        let values: Vec<Rational> = tau.coeffs.values().cloned().collect();
        assert_eq!(values, [0, -1, -2, -4, -8].map(Rational::from).to_vec());

        let x1 = g.divisor_class(&xi, 0).unwrap();
        assert!(x1.coeff("v1").unwrap().is_zero());
        for id in ["v0", "v2", "v3", "v4"] {
            assert!(!x1.coeff(id).unwrap().is_zero());
        }
        assert!(g.divisor_class(&xi, 9).is_err());
    }
}
