//! Finite-dimensional commutative C*-algebras and matrix algebras.
//!
//! Two numeric layers live here. The commutative side (`CommAlg`, `StarHom`,
//! `PositiveMap`, exact POVMs) uses exact rational-complex arithmetic. The
//! spectral side (normal matrices, PVMs from eigendecompositions, functional
//! calculus, projection lattices, Choi certificates) uses `f64` with an
//! explicit [`Tolerance`].
//!
//! Every finite-dimensional algebra is already monotone σ-complete, so every
//! positive map is σ-normal and every algebra is its own Pedersen–Baire
//! envelope; those conditions are about infinite sequences and have nothing
//! to test here beyond the identity envelope.

pub mod choi;
pub mod commutative;
pub mod lattice;
pub mod linf_abs;
pub mod povm;
pub mod spectral;
pub mod tensor;

pub use choi::{choi_check, ChoiCertificate, LinearMap};
pub use commutative::{
    linf, linf_abs, linf_abs_map, linf_kernel, linf_map, pedersen_baire_envelope, proj, proj_of_hom, spec_sigma,
    spec_sigma_map, CommAlg, PositiveMap, StarHom,
};
pub use lattice::{proj_le, proj_lattice_inf, proj_lattice_sup};
pub use linf_abs::{linf_abs_eval, linf_abs_norm, NormBound, Rect, Region};
pub use povm::{integrate_povm, kernel_povm, povm_kernel, ExactPovm, Povm, SigmaCpuMap};
pub use spectral::{eps_projection, funcalc, spectral_pvm, EpsProjection, FnSpec, SpectralDecomposition};
pub use tensor::{tensor_alg, tensor_mat};

use serde::{Deserialize, Serialize};

/// Tolerance context for the floating-point layer, passed explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Structural checks (normality, Hermiticity, PSD, projection), scaled by `max(1, ‖a‖)`.
    pub structural: f64,
    /// Reconstruction residuals and derived identities.
    pub spectral: f64,
    /// Eigenvalues closer than `cluster * max(1, ‖a‖)` form one spectral cluster.
    pub cluster: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            structural: 1e-10,
            spectral: 1e-9,
            cluster: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn with_spectral(spectral: f64) -> Self {
        Tolerance {
            spectral,
            ..Self::default()
        }
    }

    pub fn structural_at(&self, scale: f64) -> f64 {
        self.structural * scale.max(1.0)
    }

    pub fn spectral_at(&self, scale: f64) -> f64 {
        self.spectral * scale.max(1.0)
    }

    pub fn cluster_at(&self, scale: f64) -> f64 {
        self.cluster * scale.max(1.0)
    }
}
