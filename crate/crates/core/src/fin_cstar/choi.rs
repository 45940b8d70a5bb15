//! Linear maps `M_m -> M_n` and the Choi test for complete positivity.

use num_complex::Complex64;
use serde::Serialize;

use super::povm::SigmaCpuMap;
use super::spectral::min_eigenvalue;
use super::Tolerance;
use crate::error::{Error, Result};
use crate::exact::{fro, CMat};

/// A linear map `M_{d_in} -> M_{d_out}` stored by its values on matrix units;
/// `images[i * d_in + j] = Φ(E_ij)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub d_in: usize,
    pub d_out: usize,
    images: Vec<CMat>,
}

fn unit(n: usize, i: usize, j: usize) -> CMat {
    let mut e = CMat::zeros(n, n);
    e[(i, j)] = Complex64::new(1.0, 0.0);
    e
}

impl LinearMap {
    pub fn from_images(d_in: usize, d_out: usize, images: Vec<CMat>) -> Result<Self> {
        if images.len() != d_in * d_in {
            return Err(Error::Mismatch(format!("{} images for {} matrix units", images.len(), d_in * d_in)));
        }
        if images.iter().any(|m| m.nrows() != d_out || m.ncols() != d_out) {
            return Err(Error::Mismatch(format!("images must be {d_out}x{d_out}")));
        }
        Ok(LinearMap { d_in, d_out, images })
    }

    pub fn from_fn(d_in: usize, d_out: usize, f: impl Fn(&CMat) -> CMat) -> Result<Self> {
        let images = (0..d_in * d_in).map(|k| f(&unit(d_in, k / d_in, k % d_in))).collect();
        Self::from_images(d_in, d_out, images)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, Clone::clone).expect("shapes agree")
    }

    pub fn transpose(n: usize) -> Self {
        Self::from_fn(n, n, |m| m.transpose()).expect("shapes agree")
    }

    /// `X ↦ Σ K_i X K_i*`.
    pub fn from_kraus(kraus: &[CMat]) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::Invalid("no Kraus operators".into()))?;
        let (d_out, d_in) = first.shape();
        if kraus.iter().any(|k| k.shape() != (d_out, d_in)) {
            return Err(Error::Mismatch("Kraus operators differ in shape".into()));
        }
        Self::from_fn(d_in, d_out, |x| kraus.iter().fold(CMat::zeros(d_out, d_out), |acc, k| acc + k * x * k.adjoint()))
    }

    /// `Φ ∘ diag`-style extension of a map from `ℂ^m`: `E_ij ↦ δ_ij Φ(e_i)`.
    pub fn from_cpu_map(phi: &SigmaCpuMap) -> Self {
        let (m, n) = (phi.source_dim(), phi.target_size);
        let images = (0..m * m)
            .map(|k| if k / m == k % m { phi.effects[k / m].clone() } else { CMat::zeros(n, n) })
            .collect();
        LinearMap { d_in: m, d_out: n, images }
    }

    pub fn apply(&self, x: &CMat) -> CMat {
        let n = self.d_in;
        let mut out = CMat::zeros(self.d_out, self.d_out);
        for i in 0..n {
            for j in 0..n {
                let c = x[(i, j)];
                if c != Complex64::new(0.0, 0.0) {
                    out += &self.images[i * n + j] * c;
                }
            }
        }
        out
    }

    /// `Σ E_ij ⊗ Φ(E_ij)`.
    pub fn choi_matrix(&self) -> CMat {
        let (m, n) = (self.d_in, self.d_out);
        let mut c = CMat::zeros(m * n, m * n);
        for i in 0..m {
            for j in 0..m {
                c.view_mut((i * n, j * n), (n, n)).copy_from(&self.images[i * m + j]);
            }
        }
        c
    }

    pub fn unital_defect(&self) -> f64 {
        fro(&(self.apply(&CMat::identity(self.d_in, self.d_in)) - CMat::identity(self.d_out, self.d_out)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChoiCertificate {
    pub min_eigenvalue: f64,
    pub completely_positive: bool,
    pub unital: bool,
    pub unital_defect: f64,
}

pub fn choi_check(phi: &LinearMap, tol: &Tolerance) -> ChoiCertificate {
    let c = phi.choi_matrix();
    let hermitian = fro(&(&c - c.adjoint())) <= tol.structural_at(fro(&c));
    let min_eigenvalue = min_eigenvalue(&c);
    let unital_defect = phi.unital_defect();
    ChoiCertificate {
        min_eigenvalue,
        completely_positive: hermitian && min_eigenvalue >= -tol.spectral,
        unital: unital_defect <= tol.spectral,
        unital_defect,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn transpose_is_not_cp() {
        let cert = choi_check(&LinearMap::transpose(2), &Tolerance::default());
        assert!(!cert.completely_positive);
        assert!((cert.min_eigenvalue + 1.0).abs() < 1e-12);
        assert!(cert.unital);
    }

    #[test]
    fn identity_and_kraus_maps_are_cp() {
        let tol = Tolerance::default();
        assert!(choi_check(&LinearMap::identity(3), &tol).completely_positive);
        let u = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let phi = LinearMap::from_kraus(std::slice::from_ref(&u)).unwrap();
        let cert = choi_check(&phi, &tol);
        assert!(cert.completely_positive && cert.unital);
        let x = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, -1.0), c(0.5, 0.0), c(3.0, 0.0)]);
        assert!(fro(&(phi.apply(&x) - &u * &x * u.adjoint())) < 1e-12);
    }

    #[test]
    fn commutative_source_choi_is_block_diagonal() {
        let half = CMat::identity(2, 2) * c(0.5, 0.0);
        let phi = SigmaCpuMap {
            target_size: 2,
            effects: vec![half.clone(), half],
        };
        let lin = LinearMap::from_cpu_map(&phi);
        let choi = lin.choi_matrix();
        assert!(fro(&choi.view((0, 2), (2, 2)).into_owned()) == 0.0);
        let cert = choi_check(&lin, &Tolerance::default());
        assert!(cert.completely_positive && cert.unital);
        assert!((cert.min_eigenvalue - 0.5).abs() < 1e-12);
    }
}
