//! Seeded instance generators.

use nalgebra::linalg::QR;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{creal, rat, CMat, CRational, QMatrix, Rational};
use crate::fin_bool::{BoolHom, FinBoolAlg};
use crate::fin_cstar::ExactPovm;
use crate::fin_meas::{FinMeasSpace, MeasMap};
use crate::fin_stoch::Kernel;

pub fn rng(seed: u64) -> ChaCha8Rng {
    super::case_rng(seed, 0)
}

/// An algebra with between 1 and `max_atoms` atoms.
pub fn gen_bool<R: Rng>(rng: &mut R, max_atoms: usize) -> FinBoolAlg {
    FinBoolAlg::with_atoms(rng.random_range(1..=max_atoms.max(1)))
}

/// A space with between 1 and `max_points` points and a random partition.
pub fn gen_space<R: Rng>(rng: &mut R, max_points: usize) -> FinMeasSpace {
    let n = rng.random_range(1..=max_points.max(1));
    gen_space_of_size(rng, n)
}

pub fn gen_space_of_size<R: Rng>(rng: &mut R, n: usize) -> FinMeasSpace {
    let keys: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
    FinMeasSpace::from_assignment((0..n).map(|i| format!("x{i}")).collect(), &keys).expect("valid assignment")
}

/// A space whose points are labelled `{prefix}{i}`; distinct prefixes keep
/// generated spaces from colliding in products.
pub fn gen_space_labeled<R: Rng>(rng: &mut R, max_points: usize, prefix: &str) -> FinMeasSpace {
    let n = rng.random_range(1..=max_points.max(1));
    let keys: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
    FinMeasSpace::from_assignment((0..n).map(|i| format!("{prefix}{i}")).collect(), &keys).expect("valid")
}

/// A uniformly random homomorphism, when one exists.
pub fn gen_hom<R: Rng>(rng: &mut R, a: &FinBoolAlg, b: &FinBoolAlg) -> Option<BoolHom> {
    if a.size() == 0 && b.size() > 0 {
        return None;
    }
    let pm = (0..b.size()).map(|_| rng.random_range(0..a.size())).collect();
    Some(BoolHom::new(a.clone(), b.clone(), pm).expect("in range"))
}

/// A random measurable map: each source block goes into one target block.
pub fn gen_map<R: Rng>(rng: &mut R, x: &FinMeasSpace, y: &FinMeasSpace) -> MeasMap {
    let mut pf = vec![0; x.n_points()];
    for block in x.blocks() {
        let target = &y.blocks()[rng.random_range(0..y.n_blocks())];
        for &p in block {
            pf[p] = target[rng.random_range(0..target.len())];
        }
    }
    MeasMap::new(x.clone(), y.clone(), pf).expect("block-respecting maps are measurable")
}

/// A probability vector with small rational entries, normalised exactly.
pub fn gen_prob_row<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    let mut w: Vec<i64> = (0..n).map(|_| if rng.random_bool(0.3) { 0 } else { rng.random_range(1..=7) }).collect();
    if w.iter().all(|&x| x == 0) {
        w[rng.random_range(0..n)] = 1;
    }
    let total: i64 = w.iter().sum();
    w.into_iter().map(|x| rat(x, total)).collect()
}

pub fn gen_kernel<R: Rng>(rng: &mut R, x: &FinMeasSpace, y: &FinMeasSpace) -> Kernel {
    let rows = (0..x.n_blocks()).map(|_| gen_prob_row(rng, y.n_blocks())).collect();
    Kernel::new(x.clone(), y.clone(), rows).expect("rows are normalised")
}

/// A deterministic kernel, the image of a random measurable map.
pub fn gen_deterministic_kernel<R: Rng>(rng: &mut R, x: &FinMeasSpace, y: &FinMeasSpace) -> Kernel {
    crate::fin_stoch::from_measurable(&gen_map(rng, x, y))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Q factor of a random complex matrix.
pub fn gen_unitary<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let m = CMat::from_fn(n, n, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    QR::new(m).q()
}

/// Eigenvalues for the normal generator: a mix of complex, real, and
/// deliberately repeated values.
fn gen_spectrum<R: Rng>(rng: &mut R, n: usize, real: bool) -> Vec<Complex64> {
    let mut vals: Vec<Complex64> = Vec::with_capacity(n);
    for _ in 0..n {
        if !vals.is_empty() && rng.random_bool(0.25) {
            vals.push(vals[rng.random_range(0..vals.len())]);
            continue;
        }
        // Quarter-integer grid keeps distinct eigenvalues well separated.
        let re = f64::from(rng.random_range(-8..=8)) / 4.0;
        let im = if real { 0.0 } else { f64::from(rng.random_range(-8..=8)) / 4.0 };
        vals.push(c(re, im));
    }
    vals
}

/// `U diag(λ) U*` for a seeded unitary `U`.
pub fn gen_normal<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let real = rng.random_bool(0.3);
    let vals = gen_spectrum(rng, n, real);
    let u = gen_unitary(rng, n);
    &u * CMat::from_diagonal(&nalgebra::DVector::from_vec(vals)) * u.adjoint()
}

/// A Hermitian matrix with eigenvalues on the quarter-integer grid.
pub fn gen_hermitian<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let vals = gen_spectrum(rng, n, true);
    let u = gen_unitary(rng, n);
    &u * CMat::from_diagonal(&nalgebra::DVector::from_vec(vals)) * u.adjoint()
}

/// A Hermitian `0 ≤ a ≤ 1`.
pub fn gen_contraction<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let vals: Vec<Complex64> = (0..n).map(|_| c(f64::from(rng.random_range(0..=20)) / 20.0, 0.0)).collect();
    let u = gen_unitary(rng, n);
    &u * CMat::from_diagonal(&nalgebra::DVector::from_vec(vals)) * u.adjoint()
}

/// An orthogonal projection of the given rank in a random basis.
pub fn gen_projection<R: Rng>(rng: &mut R, n: usize, rank: usize) -> CMat {
    let u = gen_unitary(rng, n);
    let cols = u.columns(0, rank.min(n)).into_owned();
    &cols * cols.adjoint()
}

/// `(1 − t², 2t) / (1 + t²)` for a random small rational `t`.
fn pythagorean<R: Rng>(rng: &mut R) -> (Rational, Rational) {
    let t = rat(rng.random_range(-6..=6), rng.random_range(1..=5));
    let one = Rational::one();
    let d = &one + &t * &t;
    ((&one - &t * &t) / &d, (Rational::from_integer(2.into()) * &t) / d)
}

/// An exactly unitary matrix over `ℚ(i)`: random Givens rotations and
/// phases with Pythagorean cosines and sines.
pub fn gen_rational_unitary<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    if n == 0 {
        return QMatrix::identity(0);
    }
    let phases: Vec<CRational> = (0..n)
        .map(|_| {
            let (a, b) = pythagorean(rng);
            CRational::new(a, b)
        })
        .collect();
    let mut u = QMatrix::diagonal(&phases);
    for _ in 0..(n * (n - 1)) {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i == j {
            continue;
        }
        let (cs, sn) = pythagorean(rng);
        let mut g = QMatrix::identity(n);
        g.set(i, i, creal(cs.clone()));
        g.set(j, j, creal(cs));
        g.set(i, j, creal(-sn.clone()));
        g.set(j, i, creal(sn));
        u = g.mul(&u).expect("square");
    }
    u
}

/// An exact POVM with `k` outcomes on `ℂ^n`: `E_a = U diag(d_a) U*` where
/// the columns `(d_a(i))_a` are probability vectors. With `projective` each
/// column is a point mass, giving a PVM.
pub fn gen_exact_povm<R: Rng>(rng: &mut R, n: usize, k: usize, projective: bool) -> ExactPovm {
    let u = gen_rational_unitary(rng, n);
    let ud = u.adjoint();
    let columns: Vec<Vec<Rational>> = (0..n)
        .map(|_| {
            if projective {
                let hit = rng.random_range(0..k);
                (0..k).map(|a| if a == hit { Rational::one() } else { Rational::zero() }).collect()
            } else {
                gen_prob_row(rng, k)
            }
        })
        .collect();
    let effects = (0..k)
        .map(|a| {
            let d = QMatrix::diagonal(&columns.iter().map(|col| creal(col[a].clone())).collect::<Vec<_>>());
            u.mul(&d).and_then(|m| m.mul(&ud)).expect("square")
        })
        .collect();
    ExactPovm::new(FinBoolAlg::with_atoms(k), n, effects).expect("exact construction")
}

/// A small rational, occasionally complex.
pub fn gen_crational<R: Rng>(rng: &mut R) -> CRational {
    let re = rat(rng.random_range(-6..=6), rng.random_range(1..=4));
    let im = if rng.random_bool(0.5) { rat(rng.random_range(-6..=6), rng.random_range(1..=4)) } else { Rational::zero() };
    CRational::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::fro;
    use crate::fin_cstar::spectral::commutator_norm;

    #[test]
    fn generators_are_deterministic() {
        let a = gen_bool(&mut rng(42), 4);
        let b = gen_bool(&mut rng(42), 4);
        assert_eq!(a, b);
        assert_eq!(gen_space(&mut rng(9), 6), gen_space(&mut rng(9), 6));
    }

    #[test]
    fn kernel_rows_are_exactly_stochastic() {
        let mut r = rng(1);
        for _ in 0..1000 {
            let x = gen_space(&mut r, 4);
            let y = gen_space(&mut r, 4);
            let k = gen_kernel(&mut r, &x, &y);
            for row in k.rows() {
                assert!(row.iter().sum::<Rational>().is_one());
            }
        }
    }

    #[test]
    fn normal_matrices_commute_with_adjoint() {
        let mut r = rng(2);
        for _ in 0..100 {
            let n = r.random_range(1..=6);
            assert!(commutator_norm(&gen_normal(&mut r, n)) <= 1e-12);
        }
    }

    #[test]
    fn rational_unitaries_are_exact() {
        let mut r = rng(3);
        for n in 1..=4 {
            let u = gen_rational_unitary(&mut r, n);
            assert_eq!(u.mul(&u.adjoint()).unwrap(), QMatrix::identity(n));
        }
        let p = gen_exact_povm(&mut r, 3, 2, true);
        assert!(p.is_pvm());
    }

    #[test]
    fn projections_have_requested_rank() {
        let mut r = rng(4);
        let p = gen_projection(&mut r, 5, 2);
        assert!(fro(&(&p * &p - &p)) < 1e-12);
        let tr: f64 = (0..5).map(|i| p[(i, i)].re).sum();
        assert!((tr - 2.0).abs() < 1e-12);
    }
}
