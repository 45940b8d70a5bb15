//! The projection lattice of `M_n`.
//!
//! `sup` of a family is the range projection of `Σ P_i`; `inf` follows by
//! complementation.

use nalgebra::SymmetricEigen;

use super::spectral::hermitian_part;
use super::Tolerance;
use crate::error::{Error, Result};
use crate::exact::{fro, CMat};

pub fn is_projection(p: &CMat, tol: &Tolerance) -> bool {
    p.is_square() && fro(&(p - p.adjoint())) <= tol.spectral && fro(&(p * p - p)) <= tol.spectral
}

/// `P ≤ Q` iff `QP = P`.
pub fn proj_le(p: &CMat, q: &CMat, tol: &Tolerance) -> bool {
    fro(&(q * p - p)) <= tol.spectral
}

fn range_projection(m: &CMat, tol: &Tolerance) -> CMat {
    let n = m.nrows();
    let eig = SymmetricEigen::new(hermitian_part(m));
    let cut = tol.cluster_at(eig.eigenvalues.amax());
    let mut p = CMat::zeros(n, n);
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        if l > cut {
            let v = eig.eigenvectors.column(k);
            p += v * v.adjoint();
        }
    }
    p
}

fn check_family(n: usize, ps: &[CMat], tol: &Tolerance) -> Result<()> {
    for (i, p) in ps.iter().enumerate() {
        if p.nrows() != n || p.ncols() != n {
            return Err(Error::Mismatch(format!("projection {i} is not {n}x{n}")));
        }
        if !is_projection(p, tol) {
            return Err(Error::Invalid(format!("matrix {i} is not a projection")));
        }
    }
    Ok(())
}

pub fn proj_lattice_sup(n: usize, ps: &[CMat], tol: &Tolerance) -> Result<CMat> {
    check_family(n, ps, tol)?;
    let sum = ps.iter().fold(CMat::zeros(n, n), |acc, p| acc + p);
    Ok(range_projection(&sum, tol))
}

pub fn proj_lattice_inf(n: usize, ps: &[CMat], tol: &Tolerance) -> Result<CMat> {
    check_family(n, ps, tol)?;
    let id = CMat::identity(n, n);
    let comps: Vec<CMat> = ps.iter().map(|p| &id - p).collect();
    Ok(&id - proj_lattice_sup(n, &comps, tol)?)
}
