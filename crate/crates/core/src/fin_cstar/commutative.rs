//! `ℂ^n` as a commutative C*-algebra, its projections, characters and the
//! L∞ / Koopman functors.
//!
//! A linear map `ℂ^m -> ℂ^n` is stored as an `n × m` exact matrix acting on
//! column vectors. A unital *-homomorphism has exactly one `1` per row, and
//! the column of that `1` is the character of the source pulled back along
//! the target character; that assignment is the Gelfand-dual point map.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{creal, CRational, QMatrix};
use crate::fin_bool::{BoolElem, BoolHom, FinBoolAlg};
use crate::fin_meas::{self, FinMeasSpace, MeasMap};
use crate::fin_stoch::Kernel;

/// `ℂ^n` with named characters (coordinates).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CommAlg {
    labels: Arc<[String]>,
}

impl CommAlg {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(CommAlg { labels: labels.into() })
    }

    pub fn with_dim(n: usize) -> Self {
        CommAlg {
            labels: (0..n).map(|i| format!("c{i}")).collect::<Vec<_>>().into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn one(&self) -> Vec<CRational> {
        vec![CRational::one(); self.dim()]
    }

    pub fn mul(&self, f: &[CRational], g: &[CRational]) -> Vec<CRational> {
        f.iter().zip(g).map(|(a, b)| a * b).collect()
    }

    pub fn star(&self, f: &[CRational]) -> Vec<CRational> {
        f.iter().map(|a| a.conj()).collect()
    }

    pub fn identity(&self) -> StarHom {
        StarHom {
            source: self.clone(),
            target: self.clone(),
            matrix: QMatrix::identity(self.dim()),
        }
    }
}

impl fmt::Debug for CommAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommAlg{:?}", &*self.labels)
    }
}

impl Serialize for CommAlg {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CommAlg", 1)?;
        st.serialize_field("characters", &*self.labels)?;
        st.end()
    }
}

fn apply_matrix(m: &QMatrix, f: &[CRational]) -> Vec<CRational> {
    (0..m.nrows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(f)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, b)| a * b)
                .fold(CRational::zero(), |acc, x| acc + x)
        })
        .collect()
}

fn basis(n: usize, i: usize) -> Vec<CRational> {
    (0..n).map(|j| if i == j { CRational::one() } else { CRational::zero() }).collect()
}

/// A unital *-homomorphism between commutative algebras, validated exactly.
#[derive(Clone, PartialEq, Eq)]
pub struct StarHom {
    source: CommAlg,
    target: CommAlg,
    matrix: QMatrix,
}

impl StarHom {
    /// Checks unitality, multiplicativity on the basis and involutivity.
    pub fn new(source: CommAlg, target: CommAlg, matrix: QMatrix) -> Result<Self> {
        let (m, n) = (source.dim(), target.dim());
        if matrix.nrows() != n || matrix.ncols() != m {
            return Err(Error::Mismatch(format!(
                "matrix is {}x{}, expected {n}x{m}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if apply_matrix(&matrix, &source.one()) != target.one() {
            return Err(Error::Invalid("map is not unital".into()));
        }
        let images: Vec<Vec<CRational>> = (0..m).map(|i| apply_matrix(&matrix, &basis(m, i))).collect();
        for i in 0..m {
            if target.star(&images[i]) != images[i] {
                return Err(Error::Invalid(format!("map does not commute with * on basis vector {i}")));
            }
            for j in 0..m {
                let lhs = target.mul(&images[i], &images[j]);
                let rhs = if i == j { images[i].clone() } else { vec![CRational::zero(); n] };
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "map is not multiplicative on basis vectors {i}, {j}"
                    )));
                }
            }
        }
        Ok(StarHom { source, target, matrix })
    }

    /// `f ↦ f ∘ cm`, where `cm: chars(target) -> chars(source)`.
    pub fn from_character_map(source: CommAlg, target: CommAlg, cm: &[usize]) -> Result<Self> {
        if cm.len() != target.dim() {
            return Err(Error::Mismatch("character map length".into()));
        }
        if let Some(&bad) = cm.iter().find(|&&c| c >= source.dim()) {
            return Err(Error::IndexOutOfRange {
                what: "source character",
                index: bad,
                size: source.dim(),
            });
        }
        let matrix = QMatrix::from_fn(target.dim(), source.dim(), |i, j| {
            if cm[i] == j {
                CRational::one()
            } else {
                CRational::zero()
            }
        });
        Ok(StarHom { source, target, matrix })
    }

    pub fn source(&self) -> &CommAlg {
        &self.source
    }

    pub fn target(&self) -> &CommAlg {
        &self.target
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn apply(&self, f: &[CRational]) -> Vec<CRational> {
        apply_matrix(&self.matrix, f)
    }

    /// Gelfand-dual map `chars(target) -> chars(source)`.
    pub fn character_map(&self) -> Vec<usize> {
        (0..self.target.dim())
            .map(|i| self.matrix.row(i).iter().position(One::is_one).expect("validated"))
            .collect()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &StarHom) -> Result<StarHom> {
        if first.target != self.source {
            return Err(Error::Mismatch("cannot compose *-homomorphisms".into()));
        }
        Ok(StarHom {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }

    pub fn is_iso(&self) -> bool {
        let cm = self.character_map();
        let mut seen = vec![false; self.source.dim()];
        self.source.dim() == self.target.dim() && cm.iter().all(|&c| !std::mem::replace(&mut seen[c], true))
    }
}

impl fmt::Debug for StarHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StarHom(dual {:?})", self.character_map())
    }
}

impl Serialize for StarHom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StarHom", 3)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("character_map", &self.character_map())?;
        st.end()
    }
}

/// A linear map between commutative algebras, not assumed positive or
/// unital; the Koopman operator of a kernel is one of these.
#[derive(Clone, PartialEq, Eq)]
pub struct PositiveMap {
    source: CommAlg,
    target: CommAlg,
    matrix: QMatrix,
}

impl PositiveMap {
    pub fn new(source: CommAlg, target: CommAlg, matrix: QMatrix) -> Result<Self> {
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(Error::Mismatch("matrix shape does not match algebras".into()));
        }
        Ok(PositiveMap { source, target, matrix })
    }

    pub fn source(&self) -> &CommAlg {
        &self.source
    }

    pub fn target(&self) -> &CommAlg {
        &self.target
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn apply(&self, f: &[CRational]) -> Vec<CRational> {
        apply_matrix(&self.matrix, f)
    }

    pub fn is_unital(&self) -> bool {
        self.apply(&self.source.one()) == self.target.one()
    }

    /// Positive iff every basis projection goes to a nonnegative vector.
    pub fn is_positive(&self) -> bool {
        (0..self.matrix.nrows())
            .all(|i| self.matrix.row(i).iter().all(|z| z.im.is_zero() && !z.re.is_negative()))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PositiveMap) -> Result<PositiveMap> {
        if first.target != self.source {
            return Err(Error::Mismatch("cannot compose positive maps".into()));
        }
        Ok(PositiveMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }

    pub fn as_star_hom(&self) -> Option<StarHom> {
        StarHom::new(self.source.clone(), self.target.clone(), self.matrix.clone()).ok()
    }

    /// The kernel `X ⇝ Y` whose Koopman operator this is, when the map is
    /// unital and positive and the algebras are `L∞(Y)`, `L∞(X)`.
    pub fn to_kernel(&self, x: &FinMeasSpace, y: &FinMeasSpace) -> Result<Kernel> {
        if self.source != linf(y) || self.target != linf(x) {
            return Err(Error::Mismatch("algebras are not L∞(Y) -> L∞(X)".into()));
        }
        if !self.is_unital() || !self.is_positive() {
            return Err(Error::Invalid("only unital positive maps come from kernels".into()));
        }
        let rows = (0..self.matrix.nrows())
            .map(|i| self.matrix.row(i).iter().map(|z| z.re.clone()).collect())
            .collect();
        Kernel::new(x.clone(), y.clone(), rows)
    }
}

impl From<StarHom> for PositiveMap {
    fn from(h: StarHom) -> Self {
        PositiveMap {
            source: h.source,
            target: h.target,
            matrix: h.matrix,
        }
    }
}

impl fmt::Debug for PositiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PositiveMap({:?})", self.matrix)
    }
}

impl Serialize for PositiveMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PositiveMap", 3)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("matrix", &crate::schema::qmatrix_to_json(&self.matrix))?;
        st.end()
    }
}

/// Boolean algebra of projections: one atom per character.
pub fn proj(a: &CommAlg) -> FinBoolAlg {
    FinBoolAlg::new(a.labels().iter().cloned()).expect("labels are distinct")
}

/// Restriction of a *-homomorphism to projections.
pub fn proj_of_hom(phi: &StarHom) -> BoolHom {
    BoolHom::new(proj(phi.source()), proj(phi.target()), phi.character_map()).expect("valid")
}

/// The element of `Proj(A)` represented by a 0/1 vector.
pub fn projection_to_elem(a: &CommAlg, p: &[CRational]) -> Result<BoolElem> {
    if p.len() != a.dim() {
        return Err(Error::Mismatch("vector length".into()));
    }
    if p.iter().any(|z| !(z.is_zero() || z.is_one())) {
        return Err(Error::Invalid("not a projection: entries must be 0 or 1".into()));
    }
    proj(a).element(p.iter().enumerate().filter(|(_, z)| z.is_one()).map(|(i, _)| i))
}

/// Characteristic function of an element.
pub fn elem_to_projection(a: &CommAlg, e: &BoolElem) -> Vec<CRational> {
    (0..a.dim())
        .map(|i| if e.contains_atom(i) { CRational::one() } else { CRational::zero() })
        .collect()
}

/// `L∞(X)`: one character per block, labelled like the atoms of `Σ(X)`.
pub fn linf(x: &FinMeasSpace) -> CommAlg {
    CommAlg::new(fin_meas::sigma(x).atoms().iter().cloned()).expect("distinct")
}

/// `L∞(f) : L∞(Y) -> L∞(X)`, `g ↦ g ∘ f`.
pub fn linf_map(f: &MeasMap) -> StarHom {
    StarHom::from_character_map(linf(f.target()), linf(f.source()), &f.block_map()).expect("valid")
}

/// Koopman operator `L∞(μ) : L∞(Y) -> L∞(X)`, `(L∞(μ) f)(x) = Σ_y μ(y|x) f(y)`.
pub fn linf_kernel(k: &Kernel) -> PositiveMap {
    let rows = k.rows();
    let matrix = QMatrix::from_fn(rows.len(), k.target().n_blocks(), |i, j| creal(rows[i][j].clone()));
    PositiveMap {
        source: linf(k.target()),
        target: linf(k.source()),
        matrix,
    }
}

/// Gelfand σ-spectrum: the characters, with the discrete σ-algebra.
pub fn spec_sigma(a: &CommAlg) -> FinMeasSpace {
    FinMeasSpace::discrete_labeled(a.labels().to_vec()).expect("distinct")
}

/// `spec_σ(φ) : spec_σ(B) -> spec_σ(A)` for `φ: A -> B`.
pub fn spec_sigma_map(phi: &StarHom) -> MeasMap {
    MeasMap::new(spec_sigma(phi.target()), spec_sigma(phi.source()), phi.character_map()).expect("discrete")
}

/// Unit `X -> spec_σ(L∞(X))`, each point to its block.
pub fn gelfand_unit(x: &FinMeasSpace) -> MeasMap {
    MeasMap::new(x.clone(), spec_sigma(&linf(x)), (0..x.n_points()).map(|p| x.block_of(p)).collect())
        .expect("constant on blocks")
}

/// Counit `A -> L∞(spec_σ(A))`, the identity on coordinates.
pub fn gelfand_counit(a: &CommAlg) -> StarHom {
    let target = linf(&spec_sigma(a));
    StarHom::from_character_map(a.clone(), target, &(0..a.dim()).collect::<Vec<_>>()).expect("valid")
}

/// The bijection `spec_σ(A) -> Stone_σ(Proj(A))`.
pub fn spec_to_stone(a: &CommAlg) -> MeasMap {
    MeasMap::new(spec_sigma(a), fin_meas::stone_sigma(&proj(a)), (0..a.dim()).collect()).expect("bijection")
}

/// The isomorphism `Σ(X) -> Proj(L∞(X))`.
pub fn sigma_to_proj(x: &FinMeasSpace) -> BoolHom {
    BoolHom::new(fin_meas::sigma(x), proj(&linf(x)), (0..x.n_blocks()).collect()).expect("iso")
}

/// Abstract `L∞` of a Boolean algebra: functions on its atoms.
pub fn linf_abs(b: &FinBoolAlg) -> CommAlg {
    CommAlg::new(b.atoms().iter().cloned()).expect("distinct")
}

/// `L∞(φ) : L∞(B) -> L∞(C)` for `φ: B -> C`.
pub fn linf_abs_map(phi: &BoolHom) -> StarHom {
    StarHom::from_character_map(linf_abs(phi.source()), linf_abs(phi.target()), phi.point_map()).expect("valid")
}

/// Unit `A -> L∞(Proj(A))`.
pub fn proj_unit(a: &CommAlg) -> StarHom {
    StarHom::from_character_map(a.clone(), linf_abs(&proj(a)), &(0..a.dim()).collect::<Vec<_>>()).expect("valid")
}

/// Counit `Proj(L∞(B)) -> B`.
pub fn proj_counit(b: &FinBoolAlg) -> BoolHom {
    BoolHom::new(proj(&linf_abs(b)), b.clone(), (0..b.size()).collect()).expect("iso")
}

/// A finite-dimensional algebra is its own Pedersen–Baire envelope.
pub fn pedersen_baire_envelope(a: &CommAlg) -> (CommAlg, StarHom) {
    (a.clone(), a.identity())
}

/// Multiplication `A ⊗ A -> A`, `e_i ⊗ e_j ↦ δ_ij e_i`.
pub fn multiplication_map(a: &CommAlg) -> PositiveMap {
    let n = a.dim();
    let source = super::tensor_alg(a, a);
    let matrix = QMatrix::from_fn(n, n * n, |i, j| {
        if j == i * n + i {
            CRational::one()
        } else {
            CRational::zero()
        }
    });
    PositiveMap {
        source,
        target: a.clone(),
        matrix,
    }
}

/// Canonical isomorphism `L∞(X) ⊗ L∞(Y) -> L∞(X × Y)`.
pub fn linf_product_iso(x: &FinMeasSpace, y: &FinMeasSpace) -> StarHom {
    let source = super::tensor_alg(&linf(x), &linf(y));
    let target = linf(&fin_meas::product_space(x, y));
    let n = target.dim();
    StarHom::from_character_map(source, target, &(0..n).collect::<Vec<_>>()).expect("iso")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rint};
    use crate::fin_stoch;

    fn v(xs: &[i64]) -> Vec<CRational> {
        xs.iter().map(|&x| creal(rint(x))).collect()
    }

    #[test]
    fn proj_of_c3_and_c2() {
        assert_eq!(proj(&CommAlg::with_dim(3)).size(), 3);
        let a = CommAlg::with_dim(2);
        let elems: Vec<_> = [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|p| projection_to_elem(&a, &v(p)).unwrap())
            .collect();
        assert_eq!(elems.len(), 4);
        for (i, e) in elems.iter().enumerate() {
            for (j, f) in elems.iter().enumerate() {
                assert_eq!(i == j, e == f);
            }
            assert_eq!(elem_to_projection(&a, e), v(&[[0, 0], [1, 0], [0, 1], [1, 1]][i]));
        }
        assert!(projection_to_elem(&a, &v(&[2, 0])).is_err());
    }

    #[test]
    fn star_hom_validation() {
        let a = CommAlg::with_dim(2);
        let b = CommAlg::with_dim(3);
        let good = StarHom::from_character_map(a.clone(), b.clone(), &[1, 0, 1]).unwrap();
        assert!(StarHom::new(a.clone(), b.clone(), good.matrix().clone()).is_ok());
        let half = QMatrix::from_fn(3, 2, |_, _| creal(rat(1, 2)));
        assert!(StarHom::new(a.clone(), b.clone(), half).is_err());
        assert_eq!(proj_of_hom(&good).point_map(), &[1, 0, 1]);
    }

    #[test]
    fn koopman_of_identity_and_example() {
        let x = FinMeasSpace::discrete(2);
        assert_eq!(linf_kernel(&fin_stoch::identity(&x)), PositiveMap::from(linf(&x).identity()));
        let mu = Kernel::from_matrix(vec![vec![rat(1, 2), rat(1, 2)], vec![rint(0), rint(1)]]).unwrap();
        assert_eq!(linf_kernel(&mu).apply(&v(&[2, 4])), v(&[3, 4]));
    }

    #[test]
    fn deterministic_kernels_give_star_homs() {
        let x = FinMeasSpace::discrete(3);
        let y = FinMeasSpace::new(vec!["p".into(), "q".into()], vec![vec![0], vec![1]]).unwrap();
        let f = MeasMap::new(x.clone(), y, vec![1, 0, 1]).unwrap();
        let k = fin_stoch::from_measurable(&f);
        let h = linf_kernel(&k).as_star_hom().unwrap();
        assert_eq!(h, linf_map(&f));
    }

    #[test]
    fn kernel_from_positive_map_round_trip() {
        let mu = Kernel::from_matrix(vec![vec![rat(1, 3), rat(2, 3)], vec![rint(1), rint(0)]]).unwrap();
        let k = linf_kernel(&mu);
        assert_eq!(k.to_kernel(mu.source(), mu.target()).unwrap(), mu);
        let not_pos = PositiveMap::new(
            k.source().clone(),
            k.target().clone(),
            QMatrix::from_fn(2, 2, |i, j| creal(if i == j { rint(2) } else { rint(-1) })),
        )
        .unwrap();
        assert!(not_pos.is_unital() && !not_pos.is_positive());
        assert!(not_pos.to_kernel(mu.source(), mu.target()).is_err());
    }

    #[test]
    fn gelfand_shadow() {
        let a = CommAlg::with_dim(3);
        assert_eq!(spec_sigma(&a).n_points(), 3);
        assert!(spec_sigma(&a).is_sober());
        assert_eq!(gelfand_counit(&a).matrix(), &QMatrix::identity(3));
        assert!(spec_to_stone(&a).is_iso());

        let x = FinMeasSpace::new(vec!["0".into(), "1".into(), "2".into()], vec![vec![0, 2], vec![1]]).unwrap();
        let s = fin_meas::sobrify(&x);
        assert_eq!(spec_sigma(&linf(&x)), s.space);
        assert_eq!(gelfand_unit(&x), s.unit);
        assert!(sigma_to_proj(&x).is_iso());
    }

    #[test]
    fn proj_linf_equivalence_components() {
        let b = FinBoolAlg::with_atoms(3);
        assert!(proj_counit(&b).is_iso());
        let a = CommAlg::with_dim(2);
        assert!(proj_unit(&a).is_iso());
        let (env, unit) = pedersen_baire_envelope(&a);
        assert_eq!(env, a);
        assert!(unit.is_iso());
    }

    #[test]
    fn linf_of_copy_is_multiplication() {
        let x = FinMeasSpace::new(vec!["0".into(), "1".into(), "2".into()], vec![vec![0, 1], vec![2]]).unwrap();
        let lc = linf_kernel(&fin_stoch::copy(&x));
        let iso: PositiveMap = linf_product_iso(&x, &x).into();
        let composite = lc.after(&iso).unwrap();
        assert_eq!(composite.matrix(), multiplication_map(&linf(&x)).matrix());
        // (i, j) ↦ δ_ij e_i on the 2-block space.
        for i in 0..2 {
            for j in 0..2 {
                let mut e = vec![creal(rint(0)); 4];
                e[i * 2 + j] = creal(rint(1));
                let mut expect = vec![creal(rint(0)); 2];
                if i == j {
                    expect[i] = creal(rint(1));
                }
                assert_eq!(composite.apply(&e), expect);
            }
        }
    }
}
