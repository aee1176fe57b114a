use std::sync::Arc;

use borel_schur::algebra::{Algebra, LinearCombination};
use borel_schur::linalg::{kernel, rank, Matrix, Subspace};
use borel_schur::quiver::{case_b_quiver, covering_fixtures, fixture_characteristic, string_analysis, QuiverRep};
use borel_schur::resolutions::{ar_sequence, verify_ar};
use borel_schur::scalars::{Field, PrimeField, Rationals};
use borel_schur::weights::{enumerate_weights, shift_weight};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = (usize, usize, u64)> {
    (2usize..=3, 1usize..=4, prop_oneof![Just(0u64), Just(2), Just(3), Just(5)])
}

macro_rules! with_char {
    ($c:expr, |$f:ident| $body:expr) => {{
        if $c == 0 {
            let $f = Rationals;
            $body
        } else {
            let $f = PrimeField::new($c).unwrap();
            $body
        }
    }};
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associative((n, r, c) in shape(), picks in proptest::collection::vec((any::<usize>(), any::<usize>(), any::<usize>()), 20)) {
        with_char!(c, |f| {
            let alg = Algebra::new(f, n, r).unwrap();
            let d = alg.dim();
            let triples: Vec<_> = picks.iter().map(|&(x, y, z)| (x % d, y % d, z % d)).collect();
            prop_assert!(alg.check_associativity(&triples));
        })
    }

    #[test]
    fn unit_acts_trivially((n, r, c) in shape(), pick in any::<usize>()) {
        with_char!(c, |f| {
            let alg = Algebra::new(f, n, r).unwrap();
            let x = LinearCombination::basis(alg.field(), pick % alg.dim());
            prop_assert_eq!(alg.mul(&alg.unit(), &x), x.clone());
            prop_assert_eq!(alg.mul(&x, &alg.unit()), x);
        })
    }

    #[test]
    fn products_match_tensor_oracle((n, r, c) in shape(), x in any::<usize>(), y in any::<usize>()) {
        with_char!(c, |f| {
            let alg = Algebra::new(f, n, r).unwrap();
            let (x, y) = (x % alg.dim(), y % alg.dim());
            let product = LinearCombination::from_terms(alg.field(), alg.mul_basis(x, y).iter().cloned());
            prop_assert_eq!(alg.tensor_oracle_multiply(x, y).unwrap(), product);
        })
    }

    #[test]
    fn products_respect_weights((n, r, c) in shape(), x in any::<usize>(), y in any::<usize>()) {
        with_char!(c, |f| {
            let alg = Algebra::new(f, n, r).unwrap();
            let (x, y) = (x % alg.dim(), y % alg.dim());
            for (k, _) in alg.mul_basis(x, y).iter() {
                prop_assert_eq!(alg.left_of(*k), alg.left_of(x));
                prop_assert_eq!(alg.right_of(*k), alg.right_of(y));
            }
        })
    }

    #[test]
    fn shifts_stay_in_the_weight_set(n in 2usize..=4, r in 1usize..=6, pick in any::<usize>(), nu in 1usize..4, m in 1usize..4) {
        let ws = enumerate_weights(n, r);
        let lam = &ws[pick % ws.len()];
        let nu = 1 + (nu - 1) % (n - 1);
        if m <= lam.part(nu + 1) {
            let mu = shift_weight(lam, nu, m).unwrap();
            prop_assert_eq!(mu.r(), r);
            prop_assert!(ws.contains(&mu));
            prop_assert_eq!(mu.part(nu), lam.part(nu) + m);
        }
    }

    #[test]
    fn rank_nullity(p in prop_oneof![Just(2u64), Just(3), Just(7)], rows in 1usize..6, cols in 1usize..6, data in proptest::collection::vec(0u64..50, 36)) {
        let f = PrimeField::new(p).unwrap();
        let m = Matrix::from_rows(rows, cols, data[..rows * cols].iter().map(|&x| f.from_i64(x as i64)).collect());
        let ker = kernel(&f, &m);
        prop_assert_eq!(rank(&f, &m) + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.apply(&f, v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn pushdown_preserves_dimension(which in 0usize..3, dims in proptest::collection::vec(0usize..3, 16), entries in proptest::collection::vec(0i64..5, 256)) {
        let cov = &covering_fixtures()[which];
        let f = PrimeField::new(fixture_characteristic(cov)).unwrap();
        let q = &cov.cover;
        let d: Vec<usize> = (0..q.vertices().len()).map(|k| dims[k % dims.len()]).collect();
        let mut it = entries.iter().cycle();
        let maps: Vec<Matrix<u64>> = q.arrows().iter().map(|a| {
            let (rr, cc) = (d[a.target], d[a.source]);
            Matrix::from_rows(rr, cc, (0..rr * cc).map(|_| f.from_i64(*it.next().unwrap())).collect())
        }).collect();
        let v = QuiverRep::new(q, d, maps).unwrap();
        let pushed = cov.pushdown(&f, &v).unwrap();
        prop_assert_eq!(pushed.total_dim(), v.total_dim());
        let twisted = cov.twist(1, &cov.twist(1, &v));
        prop_assert_eq!(&twisted, &v);
        let pushed_twist = cov.pushdown(&f, &cov.twist(1, &v)).unwrap();
        prop_assert_eq!(pushed_twist.dims(), pushed.dims());
        if v.satisfies_relations(&f, q) {
            prop_assert!(pushed.satisfies_relations(&f, &cov.quotient));
        }
        if v.total_dim() > 0 {
            let end = v.hom_basis(&f, q, &v);
            let identity = Matrix::identity(&f, v.total_dim());
            let flatten = |m: &Matrix<u64>| -> Vec<u64> { (0..v.total_dim()).flat_map(|i| m.row(i).iter().cloned().collect::<Vec<_>>()).collect() };
            let span = Subspace::span(&f, v.total_dim() * v.total_dim(), &end.iter().map(flatten).collect::<Vec<_>>());
            prop_assert!(span.contains(&f, &flatten(&identity)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ar_middle_term_dimension((n, r, c) in (2usize..=3, 1usize..=4, prop_oneof![Just(0u64), Just(2), Just(3)]), pick in any::<usize>()) {
        with_char!(c, |f| {
            let alg = Arc::new(Algebra::new(f, n, r).unwrap());
            let w = pick % alg.weights().len();
            if alg.right_ideal_basis(w).len() > 1 {
                let report = verify_ar(&ar_sequence(&alg, w).unwrap(), pick as u64).unwrap();
                prop_assert_eq!(report.dim_middle, report.dim_tau + 1);
                prop_assert!(report.all_pass());
            }
        })
    }

    #[test]
    fn case_b_strings_are_bounded(p in prop_oneof![Just(2usize), Just(3), Just(5), Just(7)]) {
        let sa = string_analysis(&case_b_quiver(p)).unwrap();
        prop_assert_eq!(sa.finite, Some(true));
        prop_assert_eq!(sa.max_length, 2 * p - 1);
    }
}
