//! POVMs on finite outcome algebras and their integration maps.
//!
//! A POVM is stored atomwise: one effect per atom of the outcome algebra. The
//! value on a general element is the sum over its atoms, so finite additivity
//! holds by construction. Integrating `f` gives `Σ_a f(a) μ(a)`, the unique
//! linear extension of `μ` from characteristic functions.

use std::fmt;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::spectral::{is_psd, min_eigenvalue};
use super::Tolerance;
use crate::error::{Error, Result};
use crate::exact::{c_to_f64, creal, fro, CMat, CRational, QMatrix};
use crate::fin_bool::{BoolElem, FinBoolAlg};
use crate::fin_meas::{self, FinMeasSpace};
use crate::fin_stoch::Kernel;

/// Exact PSD test for a Hermitian rational matrix by symmetric elimination:
/// a zero pivot forces a zero row, a negative pivot refutes.
pub fn is_psd_exact(m: &QMatrix) -> bool {
    if !m.is_hermitian() {
        return false;
    }
    let n = m.nrows();
    let mut a: Vec<Vec<CRational>> = m.to_rows();
    for k in 0..n {
        let pivot = a[k][k].re.clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            if (k + 1..n).any(|j| !a[k][j].is_zero()) {
                return false;
            }
            continue;
        }
        let pinv = CRational::new(pivot.recip(), Zero::zero());
        for i in k + 1..n {
            let factor = &a[i][k] * &pinv;
            if factor.is_zero() {
                continue;
            }
            #[allow(clippy::needless_range_loop)]
            for j in k..n {
                let delta = &factor * &a[k][j];
                a[i][j] = &a[i][j] - delta;
            }
        }
    }
    true
}

/// POVM with exact rational-complex effects.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactPovm {
    outcomes: FinBoolAlg,
    dim: usize,
    effects: Vec<QMatrix>,
}

impl ExactPovm {
    pub fn new(outcomes: FinBoolAlg, dim: usize, effects: Vec<QMatrix>) -> Result<Self> {
        if effects.len() != outcomes.size() {
            return Err(Error::Mismatch(format!(
                "{} effects for {} outcome atoms",
                effects.len(),
                outcomes.size()
            )));
        }
        let mut total = QMatrix::zeros(dim, dim);
        for (i, e) in effects.iter().enumerate() {
            if e.nrows() != dim || e.ncols() != dim {
                return Err(Error::Mismatch(format!("effect {i} is not {dim}x{dim}")));
            }
            if !is_psd_exact(e) {
                return Err(Error::Invalid(format!("effect {i} is not positive semidefinite")));
            }
            total = total.add(e)?;
        }
        if total != QMatrix::identity(dim) {
            return Err(Error::Invalid("effects do not sum to the identity".into()));
        }
        Ok(ExactPovm { outcomes, dim, effects })
    }

    pub fn outcomes(&self) -> &FinBoolAlg {
        &self.outcomes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn effects(&self) -> &[QMatrix] {
        &self.effects
    }

    pub fn measure(&self, p: &BoolElem) -> QMatrix {
        p.atoms()
            .iter()
            .fold(QMatrix::zeros(self.dim, self.dim), |acc, &a| acc.add(&self.effects[a]).expect("same shape"))
    }

    pub fn is_pvm(&self) -> bool {
        self.effects.iter().enumerate().all(|(i, e)| {
            self.effects.iter().enumerate().all(|(j, f)| {
                let prod = e.mul(f).expect("square");
                if i == j {
                    prod == *e
                } else {
                    prod.is_zero()
                }
            })
        })
    }

    /// `Σ_a f(a) μ(a)`, exact.
    pub fn integrate(&self, f: &[CRational]) -> Result<QMatrix> {
        if f.len() != self.effects.len() {
            return Err(Error::Mismatch(format!("{} values for {} outcomes", f.len(), self.effects.len())));
        }
        let mut out = QMatrix::zeros(self.dim, self.dim);
        for (v, e) in f.iter().zip(&self.effects) {
            if !v.is_zero() {
                out = out.add(&e.scale(v))?;
            }
        }
        Ok(out)
    }

    pub fn to_float(&self) -> Povm {
        Povm {
            outcomes: self.outcomes.clone(),
            dim: self.dim,
            effects: self.effects.iter().map(QMatrix::to_float).collect(),
        }
    }
}

impl fmt::Debug for ExactPovm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExactPovm").field("outcomes", &self.outcomes).field("effects", &self.effects).finish()
    }
}

impl Serialize for ExactPovm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExactPovm", 2)?;
        st.serialize_field("outcomes", &self.outcomes)?;
        let effects: Vec<_> = self.effects.iter().map(crate::schema::qmatrix_to_json).collect();
        st.serialize_field("effects", &effects)?;
        st.end()
    }
}

/// POVM with double-precision effects validated within a tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    outcomes: FinBoolAlg,
    dim: usize,
    effects: Vec<CMat>,
}

impl Povm {
    pub fn new(outcomes: FinBoolAlg, dim: usize, effects: Vec<CMat>, tol: &Tolerance) -> Result<Self> {
        if effects.len() != outcomes.size() {
            return Err(Error::Mismatch(format!(
                "{} effects for {} outcome atoms",
                effects.len(),
                outcomes.size()
            )));
        }
        let mut total = CMat::zeros(dim, dim);
        for (i, e) in effects.iter().enumerate() {
            if e.nrows() != dim || e.ncols() != dim {
                return Err(Error::Mismatch(format!("effect {i} is not {dim}x{dim}")));
            }
            if !is_psd(e, tol.structural_at(fro(e))) {
                return Err(Error::Invalid(format!(
                    "effect {i} is not positive semidefinite (min eigenvalue {:e})",
                    min_eigenvalue(e)
                )));
            }
            total += e;
        }
        let defect = fro(&(total - CMat::identity(dim, dim)));
        if defect > tol.spectral {
            return Err(Error::Invalid(format!("effects sum to I only up to {defect:e}")));
        }
        Ok(Povm { outcomes, dim, effects })
    }

    pub fn outcomes(&self) -> &FinBoolAlg {
        &self.outcomes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn effects(&self) -> &[CMat] {
        &self.effects
    }

    pub fn measure(&self, p: &BoolElem) -> CMat {
        p.atoms().iter().fold(CMat::zeros(self.dim, self.dim), |acc, &a| acc + &self.effects[a])
    }

    /// Effects are projections with pairwise zero products.
    pub fn is_pvm(&self, tol: &Tolerance) -> bool {
        self.effects.iter().enumerate().all(|(i, e)| {
            fro(&(e - e.adjoint())) <= tol.spectral
                && self.effects.iter().enumerate().all(|(j, f)| {
                    let prod = e * f;
                    if i == j {
                        fro(&(prod - e)) <= tol.spectral
                    } else {
                        fro(&prod) <= tol.spectral
                    }
                })
        })
    }

    pub fn integrate(&self, f: &[Complex64]) -> Result<CMat> {
        if f.len() != self.effects.len() {
            return Err(Error::Mismatch(format!("{} values for {} outcomes", f.len(), self.effects.len())));
        }
        let mut out = CMat::zeros(self.dim, self.dim);
        for (v, e) in f.iter().zip(&self.effects) {
            out += e * *v;
        }
        Ok(out)
    }

    pub fn integration_map(&self) -> SigmaCpuMap {
        SigmaCpuMap {
            target_size: self.dim,
            effects: self.effects.clone(),
        }
    }
}

/// `Σ_a f(a) μ(a)` for a rational-valued `f`.
pub fn integrate_povm(f: &[CRational], mu: &Povm) -> Result<CMat> {
    let fv: Vec<Complex64> = f.iter().map(c_to_f64).collect();
    mu.integrate(&fv)
}

/// Unital completely positive map `ℂ^m -> M_n`, given by the images of the
/// minimal projections of `ℂ^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaCpuMap {
    pub target_size: usize,
    pub effects: Vec<CMat>,
}

impl SigmaCpuMap {
    pub fn source_dim(&self) -> usize {
        self.effects.len()
    }

    pub fn apply(&self, f: &[Complex64]) -> CMat {
        let n = self.target_size;
        f.iter().zip(&self.effects).fold(CMat::zeros(n, n), |acc, (v, e)| acc + e * *v)
    }

    pub fn unital_defect(&self) -> f64 {
        let n = self.target_size;
        fro(&(self.effects.iter().fold(CMat::zeros(n, n), |acc, e| acc + e) - CMat::identity(n, n)))
    }
}

/// The POVM `Σ(Y) -> L∞(X)`, `E ↦ μ(E | ·)`, with diagonal effects.
pub fn kernel_povm(mu: &Kernel) -> ExactPovm {
    let rows = mu.rows();
    let nx = rows.len();
    let effects = (0..mu.target().n_blocks())
        .map(|y| QMatrix::diagonal(&(0..nx).map(|x| creal(rows[x][y].clone())).collect::<Vec<_>>()))
        .collect();
    ExactPovm {
        outcomes: fin_meas::sigma(mu.target()),
        dim: nx,
        effects,
    }
}

/// Inverse of [`kernel_povm`]: reads the kernel off diagonal effects.
pub fn povm_kernel(povm: &ExactPovm, x: &FinMeasSpace, y: &FinMeasSpace) -> Result<Kernel> {
    if *povm.outcomes() != fin_meas::sigma(y) {
        return Err(Error::Mismatch("outcome algebra is not Σ(Y)".into()));
    }
    if povm.dim() != x.n_blocks() {
        return Err(Error::Mismatch("effect size is not the number of blocks of X".into()));
    }
    if let Some(i) = povm.effects().iter().position(|e| !e.is_diagonal()) {
        return Err(Error::Invalid(format!("effect {i} is not diagonal, so not in L∞(X)")));
    }
    let rows = (0..x.n_blocks())
        .map(|i| povm.effects().iter().map(|e| e.get(i, i).re.clone()).collect())
        .collect();
    Kernel::new(x.clone(), y.clone(), rows)
}

/// Whether the effects of an exact POVM sum to one on every coordinate;
/// kept separate from construction for negative-control tests.
pub fn effects_sum_to_identity(effects: &[QMatrix], dim: usize) -> bool {
    effects
        .iter()
        .try_fold(QMatrix::zeros(dim, dim), |acc, e| acc.add(e).ok())
        .is_some_and(|t| t == QMatrix::identity(dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{crat, rat, rint};
    use crate::fin_cstar::commutative::linf_kernel;
    use crate::fin_stoch;

    fn d(xs: &[(i64, i64)]) -> QMatrix {
        QMatrix::diagonal(&xs.iter().map(|&(p, q)| creal(rat(p, q))).collect::<Vec<_>>())
    }

    #[test]
    fn exact_psd_test() {
        assert!(is_psd_exact(&d(&[(1, 2), (0, 1)])));
        assert!(!is_psd_exact(&d(&[(1, 2), (-1, 3)])));
        let rank_one = QMatrix::from_fn(2, 2, |_, _| creal(rat(1, 2)));
        assert!(is_psd_exact(&rank_one));
        let indefinite = QMatrix::from_fn(2, 2, |i, j| creal(if i == j { rint(0) } else { rint(1) }));
        assert!(!is_psd_exact(&indefinite));
        let complex_psd = QMatrix::from_rows(vec![
            vec![creal(rint(1)), crat(rint(0), rint(1))],
            vec![crat(rint(0), rint(-1)), creal(rint(1))],
        ])
        .unwrap();
        assert!(is_psd_exact(&complex_psd));
        let zero_pivot = QMatrix::from_rows(vec![
            vec![creal(rint(0)), creal(rint(1))],
            vec![creal(rint(1)), creal(rint(5))],
        ])
        .unwrap();
        assert!(!is_psd_exact(&zero_pivot));
    }

    #[test]
    fn pvm_integration_diagonal() {
        let b = FinBoolAlg::with_atoms(2);
        let mu = ExactPovm::new(b, 2, vec![d(&[(1, 1), (0, 1)]), d(&[(0, 1), (1, 1)])]).unwrap();
        assert!(mu.is_pvm());
        let f = vec![creal(rint(2)), creal(rint(3))];
        assert_eq!(mu.integrate(&f).unwrap(), d(&[(2, 1), (3, 1)]));
    }

    #[test]
    fn half_half_povm() {
        let b = FinBoolAlg::with_atoms(2);
        let half = d(&[(1, 2), (1, 2)]);
        let mu = ExactPovm::new(b, 2, vec![half.clone(), half]).unwrap();
        assert!(!mu.is_pvm());
        let f = vec![creal(rint(0)), creal(rint(4))];
        assert_eq!(mu.integrate(&f).unwrap(), d(&[(2, 1), (2, 1)]));
        assert_eq!(integrate_povm(&f, &mu.to_float()).unwrap(), d(&[(2, 1), (2, 1)]).to_float());
    }

    #[test]
    fn invalid_povms_rejected() {
        let b = FinBoolAlg::with_atoms(2);
        assert!(ExactPovm::new(b.clone(), 1, vec![d(&[(1, 2)]), d(&[(1, 3)])]).is_err());
        assert!(ExactPovm::new(b.clone(), 1, vec![d(&[(3, 2)]), d(&[(-1, 2)])]).is_err());
        assert!(ExactPovm::new(b, 1, vec![d(&[(1, 1)])]).is_err());
    }

    #[test]
    fn kernel_povm_bijection() {
        let mu = Kernel::new(
            FinMeasSpace::point(),
            FinMeasSpace::discrete(2),
            vec![vec![rat(1, 2), rat(1, 2)]],
        )
        .unwrap();
        let p = kernel_povm(&mu);
        assert_eq!(p.effects(), &[d(&[(1, 2)]), d(&[(1, 2)])]);
        assert_eq!(povm_kernel(&p, mu.source(), mu.target()).unwrap(), mu);

        let x = FinMeasSpace::discrete(3);
        let id = kernel_povm(&fin_stoch::identity(&x));
        assert!(id.is_pvm());
        assert_eq!(id.effects()[1], d(&[(0, 1), (1, 1), (0, 1)]));
    }

    #[test]
    fn kernel_povm_integration_is_koopman() {
        let mu = Kernel::from_matrix(vec![vec![rat(1, 4), rat(3, 4)], vec![rint(1), rint(0)]]).unwrap();
        let f = vec![crat(rint(2), rint(1)), creal(rat(-1, 3))];
        let lhs = kernel_povm(&mu).integrate(&f).unwrap();
        let rhs = QMatrix::diagonal(&linf_kernel(&mu).apply(&f));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn non_diagonal_effect_rejected_in_inverse() {
        let b = fin_meas::sigma(&FinMeasSpace::discrete(2));
        let plus = QMatrix::from_fn(2, 2, |_, _| creal(rat(1, 2)));
        let minus = QMatrix::from_fn(2, 2, |i, j| creal(if i == j { rat(1, 2) } else { rat(-1, 2) }));
        let povm = ExactPovm::new(b, 2, vec![plus, minus]).unwrap();
        assert!(povm.is_pvm());
        assert!(povm_kernel(&povm, &FinMeasSpace::discrete(2), &FinMeasSpace::discrete(2)).is_err());
    }

    #[test]
    fn float_povm_validation() {
        let tol = Tolerance::default();
        let b = FinBoolAlg::with_atoms(2);
        let e0 = d(&[(1, 1), (0, 1)]).to_float();
        let e1 = d(&[(0, 1), (1, 1)]).to_float();
        let p = Povm::new(b.clone(), 2, vec![e0.clone(), e1.clone()], &tol).unwrap();
        assert!(p.is_pvm(&tol));
        assert_eq!(p.measure(&b.top()), CMat::identity(2, 2));
        assert!(Povm::new(b, 2, vec![e0.clone(), e0], &tol).is_err());
        assert!(p.integration_map().unital_defect() < 1e-15);
        assert!(effects_sum_to_identity(&[d(&[(1, 3)]), d(&[(2, 3)])], 1));
    }
}
