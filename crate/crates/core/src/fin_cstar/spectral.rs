//! Spectral decomposition of normal matrices and the functional calculus
//! `f(a) = Σ f(λ_i) P_i`.
//!
//! Diagonalization is a complex Schur factorization `a = Q T Q*`. For a
//! normal `a` the triangular factor is diagonal; the off-diagonal mass of `T`
//! is checked against the spectral tolerance instead of being assumed away.
//! Diagonal entries closer than the cluster tolerance are merged, and the
//! spectral projection of a cluster is `Σ q_j q_j*` over its Schur vectors.

use nalgebra::{Schur, SymmetricEigen};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::povm::Povm;
use super::Tolerance;
use crate::error::{Error, Result};
use crate::exact::{c_to_f64, fro, CMat, CRational};
use crate::fin_bool::FinBoolAlg;

pub(crate) fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Smallest eigenvalue of the Hermitian part.
pub fn min_eigenvalue(m: &CMat) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    SymmetricEigen::new(hermitian_part(m))
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Hermitian and positive semidefinite, both within `tol`.
pub fn is_psd(m: &CMat, tol: f64) -> bool {
    m.is_square() && fro(&(m - m.adjoint())) <= tol && min_eigenvalue(m) >= -tol
}

pub fn commutator_norm(a: &CMat) -> f64 {
    let ad = a.adjoint();
    fro(&(a * &ad - &ad * a))
}

pub fn is_normal(a: &CMat, tol: &Tolerance) -> bool {
    let n = fro(a);
    commutator_norm(a) <= tol.structural_at(n * n)
}

#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    /// Distinct eigenvalues, sorted by real then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    /// Orthogonal spectral projections, one per eigenvalue.
    pub projections: Vec<CMat>,
    /// `‖a − Σ λ_i P_i‖_F`.
    pub residual: f64,
    /// Cluster radius used for eigenvalue matching.
    pub cluster_radius: f64,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.projections.first().map_or(0, |p| p.nrows())
    }

    /// The spectral PVM, indexed by the atoms of the outcome algebra.
    pub fn pvm(&self, tol: &Tolerance) -> Result<Povm> {
        let labels: Vec<String> = self.eigenvalues.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect();
        let outcomes = FinBoolAlg::new(labels).unwrap_or_else(|_| FinBoolAlg::with_atoms(self.eigenvalues.len()));
        Povm::new(outcomes, self.dim(), self.projections.clone(), tol)
    }

    /// Index of the eigenvalue cluster containing `lambda`, if any.
    pub fn find(&self, lambda: Complex64) -> Option<usize> {
        self.eigenvalues.iter().position(|&l| (l - lambda).norm() <= self.cluster_radius)
    }

    pub fn apply(&self, f: &FnSpec) -> Result<CMat> {
        let n = self.dim();
        let mut out = CMat::zeros(n, n);
        for (lambda, p) in self.eigenvalues.iter().zip(&self.projections) {
            out += p * f.eval(*lambda, self.cluster_radius)?;
        }
        Ok(out)
    }
}

fn off_diagonal(t: &CMat) -> f64 {
    let n = t.nrows();
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| t[(i, j)].norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Unitary `q` with `q* a q` diagonal up to `bound`. Complex Schur first;
/// when it stalls, the eigenbasis of the Hermitian pencil `H + θK` for a
/// few fixed `θ`, where `a = H + iK`.
fn triangularize(a: &CMat, bound: f64) -> Result<(CMat, CMat)> {
    let mut worst = f64::NAN;
    if let Some(schur) = Schur::try_new(a.clone(), 4.0 * f64::EPSILON, 10_000) {
        let (q, t) = schur.unpack();
        let off = off_diagonal(&t);
        if off <= bound {
            return Ok((q, t));
        }
        worst = off;
    }
    let h = hermitian_part(a);
    let k = (a - a.adjoint()) * Complex64::new(0.0, -0.5);
    for theta in [0.618_033_988_749_894_8, 1.324_717_957_244_746, std::f64::consts::E] {
        let pencil = hermitian_part(&(&h + &k * Complex64::new(theta, 0.0)));
        let q = SymmetricEigen::new(pencil).eigenvectors;
        let t = q.adjoint() * a * &q;
        let off = off_diagonal(&t);
        if off <= bound {
            return Ok((q, t));
        }
        worst = if worst.is_nan() { off } else { worst.min(off) };
    }
    Err(Error::Spectral(format!("no unitary diagonalization found: off-diagonal norm {worst:e}")))
}

pub fn spectral_pvm(a: &CMat, tol: &Tolerance) -> Result<SpectralDecomposition> {
    if !a.is_square() {
        return Err(Error::Mismatch(format!("{}x{} matrix is not square", a.nrows(), a.ncols())));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Invalid("matrix has non-finite entries".into()));
    }
    let n = a.nrows();
    let norm = fro(a);
    if !is_normal(a, tol) {
        return Err(Error::Spectral(format!(
            "matrix is not normal: ‖aa* − a*a‖ = {:e}",
            commutator_norm(a)
        )));
    }
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: vec![],
            projections: vec![],
            residual: 0.0,
            cluster_radius: tol.cluster_at(0.0),
        });
    }
    let (q, t) = triangularize(a, tol.spectral_at(norm))?;
    let diag: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    let radius = tol.cluster_at(norm);
    let clusters = cluster(&diag, radius)?;

    let mut eigenvalues = Vec::with_capacity(clusters.len());
    let mut projections = Vec::with_capacity(clusters.len());
    for members in &clusters {
        let mean = members.iter().map(|&i| diag[i]).sum::<Complex64>() / members.len() as f64;
        let mut p = CMat::zeros(n, n);
        for &i in members {
            let col = q.column(i);
            p += col * col.adjoint();
        }
        eigenvalues.push(mean);
        projections.push(p);
    }
    let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (eigenvalues[i], eigenvalues[j]);
        a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
    });
    let eigenvalues: Vec<Complex64> = order.iter().map(|&i| eigenvalues[i]).collect();
    let projections: Vec<CMat> = order.iter().map(|&i| projections[i].clone()).collect();

    let mut recon = CMat::zeros(n, n);
    let mut total = CMat::zeros(n, n);
    for (l, p) in eigenvalues.iter().zip(&projections) {
        recon += p * *l;
        total += p;
    }
    let residual = fro(&(a - recon));
    if residual > tol.spectral_at(norm) {
        return Err(Error::Spectral(format!("reconstruction residual {residual:e} too large")));
    }
    let completeness = fro(&(total - CMat::identity(n, n)));
    if completeness > tol.spectral {
        return Err(Error::Spectral(format!("projections do not sum to I: {completeness:e}")));
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        projections,
        residual,
        cluster_radius: radius,
    })
}

/// Single-linkage clustering at `radius`. Distinct clusters closer than ten
/// radii, or a chained cluster wider than that, cannot be separated reliably
/// and are reported.
fn cluster(vals: &[Complex64], radius: f64) -> Result<Vec<Vec<usize>>> {
    let n = vals.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (vals[i] - vals[j]).norm() <= radius {
                let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().collect();
    let gap = 10.0 * radius;
    for g in &groups {
        for &i in g {
            for &j in g {
                if (vals[i] - vals[j]).norm() > gap {
                    return Err(Error::Spectral(format!(
                        "eigenvalue cluster {:?} is wider than {gap:e}",
                        g.iter().map(|&k| vals[k]).collect::<Vec<_>>()
                    )));
                }
            }
        }
    }
    for (a, ga) in groups.iter().enumerate() {
        for gb in &groups[a + 1..] {
            for &i in ga {
                for &j in gb {
                    let d = (vals[i] - vals[j]).norm();
                    if d <= gap {
                        return Err(Error::Spectral(format!(
                            "eigenvalues {} and {} are {d:e} apart: inseparable at cluster radius {radius:e}",
                            vals[i], vals[j]
                        )));
                    }
                }
            }
        }
    }
    Ok(groups)
}

/// Functions the calculus accepts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FnSpec {
    /// `Σ c_k t^k`, coefficients lowest degree first.
    Poly {
        #[serde(with = "crate::schema::crational_vec")]
        coeffs: Vec<CRational>,
    },
    Abs,
    Conj,
    /// Indicator of the closed real interval `[lo, hi]`.
    Indicator {
        #[serde(with = "crate::schema::ext_f64")]
        lo: f64,
        #[serde(with = "crate::schema::ext_f64")]
        hi: f64,
    },
    /// Values prescribed at points of the spectrum.
    Table { entries: Vec<(Complex64, Complex64)> },
}

impl FnSpec {
    pub fn identity() -> Self {
        FnSpec::Poly {
            coeffs: vec![CRational::zero(), CRational::one()],
        }
    }

    /// Tabulates `f` on the given spectrum.
    pub fn table(spectrum: &[Complex64], f: impl Fn(Complex64) -> Complex64) -> Self {
        FnSpec::Table {
            entries: spectrum.iter().map(|&l| (l, f(l))).collect(),
        }
    }

    /// Value at a spectral point; `radius` is the matching and realness tolerance.
    pub fn eval(&self, lambda: Complex64, radius: f64) -> Result<Complex64> {
        match self {
            FnSpec::Poly { coeffs } => Ok(coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * lambda + c_to_f64(c))),
            FnSpec::Abs => Ok(Complex64::new(lambda.norm(), 0.0)),
            FnSpec::Conj => Ok(lambda.conj()),
            FnSpec::Indicator { lo, hi } => {
                if lambda.im.abs() > radius {
                    return Err(Error::Spectral(format!("indicator of a real interval at non-real point {lambda}")));
                }
                Ok(Complex64::new(if *lo <= lambda.re && lambda.re <= *hi { 1.0 } else { 0.0 }, 0.0))
            }
            FnSpec::Table { entries } => entries
                .iter()
                .find(|(l, _)| (l - lambda).norm() <= radius)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::Spectral(format!("table has no value at spectral point {lambda}"))),
        }
    }
}

pub fn funcalc(a: &CMat, f: &FnSpec, tol: &Tolerance) -> Result<CMat> {
    spectral_pvm(a, tol)?.apply(f)
}

/// `p = χ_{[ε,1]}(a)` with the two operator inequalities certified.
#[derive(Clone, Debug)]
pub struct EpsProjection {
    pub p: CMat,
    /// Smallest eigenvalue of `p − (a − ε)`.
    pub lower_gap: f64,
    /// Smallest eigenvalue of `ε⁻¹ a − p`.
    pub upper_gap: f64,
}

pub fn eps_projection(a: &CMat, eps: f64, tol: &Tolerance) -> Result<EpsProjection> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Invalid(format!("ε = {eps} must lie in (0, 1)")));
    }
    let sd = spectral_pvm(a, tol)?;
    let slack = tol.spectral;
    if let Some(l) = sd
        .eigenvalues
        .iter()
        .find(|l| l.im.abs() > slack || l.re < -slack || l.re > 1.0 + slack)
    {
        return Err(Error::Invalid(format!("spectrum point {l} is outside [0, 1]")));
    }
    let p = sd.apply(&FnSpec::Indicator {
        lo: eps,
        hi: f64::INFINITY,
    })?;
    let n = a.nrows();
    let id = CMat::identity(n, n);
    let lower_gap = min_eigenvalue(&(&p - (a - &id * Complex64::new(eps, 0.0))));
    let upper_gap = min_eigenvalue(&(a * Complex64::new(1.0 / eps, 0.0) - &p));
    if lower_gap < -slack || upper_gap < -slack {
        return Err(Error::Spectral(format!(
            "ε-projection inequalities fail: gaps {lower_gap:e}, {upper_gap:e}"
        )));
    }
    Ok(EpsProjection { p, lower_gap, upper_gap })
}
