use duality_kit::exact::{rat, Rational};
use duality_kit::fin_bool::{self, BoolHom, FinBoolAlg};
use duality_kit::fin_meas::{self, FinMeasSpace};
use duality_kit::fin_stoch::{self, Kernel};
use num_traits::Zero;
use proptest::prelude::*;

fn space(keys: Vec<usize>) -> FinMeasSpace {
    FinMeasSpace::from_assignment((0..keys.len()).map(|i| format!("p{i}")).collect(), &keys).unwrap()
}

fn row(weights: &[u8]) -> Vec<Rational> {
    let mut w: Vec<i64> = weights.iter().map(|&x| i64::from(x)).collect();
    if w.iter().all(|&x| x == 0) {
        w[0] = 1;
    }
    let total: i64 = w.iter().sum();
    w.into_iter().map(|x| rat(x, total)).collect()
}

fn kernel(rows: &[Vec<u8>]) -> Kernel {
    Kernel::from_matrix(rows.iter().map(|r| row(r)).collect()).unwrap()
}

fn weights(n: usize, m: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(prop::collection::vec(0u8..6, m), n)
}

proptest! {
    #[test]
    fn kernel_composition_is_associative(
        (a, b, c) in (1usize..4, 1usize..4, 1usize..4, 1usize..4)
            .prop_flat_map(|(n, m, k, l)| (weights(n, m), weights(m, k), weights(k, l)))
    ) {
        let (ka, kb, kc) = (kernel(&a), kernel(&b), kernel(&c));
        let left = fin_stoch::compose(&fin_stoch::compose(&ka, &kb).unwrap(), &kc).unwrap();
        let right = fin_stoch::compose(&ka, &fin_stoch::compose(&kb, &kc).unwrap()).unwrap();
        prop_assert_eq!(left.rows(), right.rows());
        for r in left.rows() {
            prop_assert_eq!(r.iter().fold(Rational::zero(), |s, p| s + p), rat(1, 1));
        }
    }

    #[test]
    fn sobrification_is_idempotent(keys in prop::collection::vec(0usize..5, 0..7)) {
        let x = space(keys);
        let s = fin_meas::sobrify(&x);
        prop_assert!(s.space.is_sober());
        prop_assert_eq!(s.space.n_points(), x.n_blocks());
        prop_assert!(fin_meas::sobrify(&s.space).unit.is_iso());
    }

    #[test]
    fn hom_composition_follows_point_maps(
        (na, nb, f, g) in (1usize..5, 1usize..5, 1usize..5).prop_flat_map(|(na, nb, nc)| {
            (Just(na), Just(nb), prop::collection::vec(0..na, nb), prop::collection::vec(0..nb, nc))
        })
    ) {
        let (a, b) = (FinBoolAlg::with_atoms(na), FinBoolAlg::with_atoms(nb));
        let c = FinBoolAlg::with_atoms(g.len());
        let hf = BoolHom::new(a.clone(), b.clone(), f.clone()).unwrap();
        let hg = BoolHom::new(b, c, g.clone()).unwrap();
        let composite = hg.after(&hf).unwrap();
        let expected: Vec<usize> = g.iter().map(|&j| f[j]).collect();
        prop_assert_eq!(composite.point_map(), &expected[..]);
        let iso = fin_bool::clopen_stone_iso(&a);
        prop_assert!(iso.is_iso());
    }
}
