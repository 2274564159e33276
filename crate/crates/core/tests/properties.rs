mod common;

use common::*;
use proptest::prelude::*;

use insep::cli::gen::{gen_equation, GenKind, GenParams};
use insep::field::make_field;
use insep::germ::Germ;
use insep::poly::{Monomial, MultiPoly};
use insep::resolve::{eta_consistency, resolve, Mode};

fn field(i: usize) -> insep::field::FieldTower {
    let fs = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];
    let (p, k) = fs[i % fs.len()];
    make_field(p, k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn mth_root_round_trip(code in any::<u64>(), m in 1u64..=24) {
        for f in small_fields() {
            prop_assert_eq!(law_mth_root(&f, code, m), Ok(()));
        }
    }

    #[test]
    fn star_preserves_type(fi in 0usize..7, n in 3usize..=5, (a, b, raw) in typed_poly(5)) {
        // the strategy builds 5 x-exponents; keep the first n
        let raw: RawPoly = raw.into_iter().map(|(mut e, c)| {
            let y = e[5];
            let extra: u16 = e[n..5].iter().sum();
            e.truncate(n);
            e[0] += extra;
            e.push(y);
            (e, c)
        }).collect();
        prop_assert_eq!(law_star_type(&field(fi), n, a, b, &raw), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn divide_exact_inverts_multiplication(
        fi in 0usize..7,
        raw in raw_poly(4, 5, 6),
        t in prop::collection::vec(0u16..=3, 4),
    ) {
        prop_assert_eq!(law_divide_exact(&field(fi), 4, &raw, &t), Ok(()));
    }

    #[test]
    fn substitution_composes(
        fi in 0usize..7,
        p in raw_poly(3, 3, 4),
        a in prop::collection::vec(raw_poly(3, 2, 3), 3),
        b in prop::collection::vec(raw_poly(3, 2, 3), 3),
    ) {
        prop_assert_eq!(law_substitute(&field(fi), &p, &a, &b), Ok(()));
    }

    #[test]
    fn theta_pullback_keeps_polynomial_coefficients(
        fi in 0usize..7,
        n in 3usize..=5,
        coeffs in prop::collection::vec(raw_poly(6, 3, 4), 5),
    ) {
        let coeffs: Vec<RawPoly> = coeffs.into_iter().take(n).map(|r| r.into_iter().map(|(mut e, c)| {
            e.truncate(n + 1);
            (e, c)
        }).collect()).collect();
        prop_assert_eq!(law_theta_closure(&field(fi), n, &coeffs), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn reduced_basis_ignores_generator_order(
        fi in 0usize..4,
        gens in prop::collection::vec(raw_poly(3, 3, 3), 1..=4),
        rotate in 0usize..4,
    ) {
        prop_assert_eq!(law_gb_permutation(&field(fi), 3, &gens, rotate), Ok(()));
    }

    /// Covers `y^{p j} - g(x)` have `dF/dy = 0`, so the local generators of
    /// the form agree on overlaps.
    #[test]
    fn eta_generators_agree(fi in 0usize..7, n in 3usize..=4, j in 1u16..=2, raw in raw_poly(4, 4, 6)) {
        let f = field(fi);
        let p = f.characteristic() as u16;
        let g = build(&f, n + 1, &raw.into_iter().map(|(mut e, c)| {
            e.truncate(n);
            e.push(0);
            (e, c)
        }).collect());
        let y = MultiPoly::monomial(&f, n + 1, Monomial::var(n, p * j), f.one());
        let germ = Germ::unchecked(n, &y - &g).unwrap();
        prop_assert!(eta_consistency(&germ));
        let with_y = &germ.equation + &MultiPoly::var(&f, n + 1, n);
        prop_assert!(!eta_consistency(&Germ::unchecked(n, with_y).unwrap()));
    }

    #[test]
    fn resolution_is_deterministic(seed in 0u64..1000, which in 0usize..3) {
        let (kind, n, p, d) = [(GenKind::CaseB, 3, 2, 4), (GenKind::CaseA, 4, 3, 6), (GenKind::CaseA, 3, 5, 5)][which];
        let eq = gen_equation(&GenParams { kind, n, p, k: 1, d, seed }).unwrap();
        let g = Germ::new(n, eq).unwrap();
        let a = serde_json::to_string(&resolve(&g, Mode::Strict).unwrap()).unwrap();
        let b = serde_json::to_string(&resolve(&g, Mode::Strict).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
