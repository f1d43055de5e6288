use proptest::prelude::*;
use unimodal_core::cohomology::{integrate, symplectic_class};
use unimodal_core::exact::{solve_exact, LinearSolution};
use unimodal_core::io::{parse_fixed_points, parse_polytope};
use unimodal_core::{bundled, CircleSelector, EquivariantClass, Matrix, Poly, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..12).prop_map(|(n, d)| Rational::new(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..5).prop_map(Poly::new)
}

proptest! {
    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn rational_display_round_trips(a in rational()) {
        let back: Rational = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), a);
    }

    #[test]
    fn poly_product_evaluates_pointwise(p in poly(), q in poly(), r in poly(), x in rational()) {
        prop_assert_eq!((&p * &q).eval(&x), &p.eval(&x) * &q.eval(&x));
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
    }

    #[test]
    fn solve_exact_resubstitutes(
        rows in 1usize..5,
        cols in 1usize..5,
        entries in prop::collection::vec(-4i64..5, 16),
        rhs in prop::collection::vec(-4i64..5, 4),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 4..i * 4 + cols].to_vec()).collect();
        let a = Matrix::from_int_rows(&m).unwrap();
        let b: Vec<Rational> = rhs[..rows].iter().map(|&x| Rational::from(x)).collect();
        match solve_exact(&a, &b).unwrap() {
            LinearSolution::Unique(x) => {
                prop_assert_eq!(a.mul_vec(&x).unwrap(), b);
                prop_assert_eq!(a.rank(), cols);
            }
            LinearSolution::Affine { particular, kernel_basis } => {
                prop_assert_eq!(a.mul_vec(&particular).unwrap(), b);
                prop_assert_eq!(kernel_basis.len(), cols - a.rank());
                for k in &kernel_basis {
                    prop_assert!(a.mul_vec(k).unwrap().iter().all(Rational::is_zero));
                }
            }
            LinearSolution::Inconsistent => {
                let aug: Vec<Vec<Rational>> = (0..rows)
                    .map(|i| a.row(i).iter().cloned().chain([b[i].clone()]).collect())
                    .collect();
                prop_assert!(Matrix::from_rows(aug, cols + 1).unwrap().rank() > a.rank());
            }
        }
    }

    #[test]
    fn integration_is_linear(
        x in prop::collection::vec(rational(), 5),
        y in prop::collection::vec(rational(), 5),
        a in rational(),
        b in rational(),
        upow in 0usize..6,
    ) {
        let s = bundled::cp4();
        let cx = EquivariantClass::from_fn(&s, upow, |i| x[i].clone());
        let cy = EquivariantClass::from_fn(&s, upow, |i| y[i].clone());
        let combo = cx.scale(&a).add(&cy.scale(&b)).unwrap();
        let lhs = integrate(&combo, &s).unwrap();
        let ix = integrate(&cx, &s).unwrap();
        let iy = integrate(&cy, &s).unwrap();
        prop_assert_eq!(lhs.upow, upow as i64 - 4);
        prop_assert_eq!(lhs.value, &(&a * &ix.value) + &(&b * &iy.value));
    }

    // Below top degree the identities see ω̃ only up to a constant shift.
    #[test]
    fn vanishing_identities_survive_moment_shifts(shift in rational()) {
        let s = bundled::cp4();
        let mut shifted = s.clone();
        for p in &mut shifted.points {
            p.moment = &p.moment + &shift;
        }
        prop_assert!(shifted.validate().passed());
        for k in 0..4 {
            prop_assert!(shifted.moment_power_sum(k).is_zero());
        }
        prop_assert_eq!(shifted.moment_power_sum(4), s.moment_power_sum(4));
        prop_assert_eq!(shifted.normalize_moment(), s);
    }

    #[test]
    fn generic_directions_satisfy_localization(
        xi in prop::collection::vec(-30i64..31, 4),
        which in 0usize..3,
    ) {
        let (_, p) = &bundled::polytopes()[which];
        let g = p.enumerate_vertices().unwrap();
        let xi = CircleSelector::new(xi);
        prop_assume!(g.is_generic(&xi));
        let s = g.restrict_to_circle(&xi).unwrap();
        // Distinct vertices may still share a moment value, so only the
        // identities are required here.
        prop_assert!(!s.validate().identity_failed());
        let raw = g.restrict_to_circle_raw(&xi).unwrap();
        prop_assert_eq!(raw.moment_power_sum(4), &g.polytope_volume() * &Rational::from(24));
        let omega = symplectic_class(&s).unwrap();
        prop_assert_eq!(integrate(&omega.pow(3), &s).unwrap().value, Rational::zero());

        let rev = s.reversed();
        prop_assert!(!rev.validate().identity_failed());
        prop_assert_eq!(rev.betti_from_morse(), s.betti_from_morse().reversed());
    }
}

#[test]
fn bundled_data_round_trips_through_json() {
    for (_, p) in bundled::polytopes() {
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(parse_polytope(&text).unwrap(), p);
    }
    let s = bundled::cp4();
    let text = serde_json::to_string_pretty(&s).unwrap();
    assert_eq!(parse_fixed_points(&text).unwrap().set, s);
    for (_, d) in bundled::synthetic_fixtures() {
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(parse_fixed_points(&text).unwrap(), d);
    }
}
