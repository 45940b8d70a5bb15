//! Finite measurable spaces.
//!
//! The σ-algebra of a finite space is stored as the partition into its atoms
//! ("blocks"); a set is measurable iff it is a union of blocks. Blocks are kept
//! in canonical order (by least member, members ascending), so two spaces
//! with the same points and σ-algebra compare equal.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fin_bool::{set_label, BoolElem, BoolHom, FinBoolAlg};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinMeasSpace {
    labels: Arc<[String]>,
    blocks: Arc<[Vec<usize>]>,
    block_of: Arc<[usize]>,
}

impl FinMeasSpace {
    pub fn new(labels: Vec<String>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = blocks;
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= n {
                    return Err(Error::IndexOutOfRange {
                        what: "point",
                        index: x,
                        size: n,
                    });
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("point {x} lies in two blocks")));
                }
                block_of[x] = i;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("point {x} is in no block")));
        }
        Ok(FinMeasSpace {
            labels: labels.into(),
            blocks: blocks.into(),
            block_of: block_of.into(),
        })
    }

    /// Points sharing a key share a block.
    pub fn from_assignment(labels: Vec<String>, keys: &[usize]) -> Result<Self> {
        if keys.len() != labels.len() {
            return Err(Error::Mismatch("one key per point required".into()));
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (x, &k) in keys.iter().enumerate() {
            groups.entry(k).or_default().push(x);
        }
        Self::new(labels, groups.into_values().collect())
    }

    pub fn discrete(n: usize) -> Self {
        Self::discrete_labeled((0..n).map(|i| i.to_string()).collect()).expect("distinct labels")
    }

    pub fn discrete_labeled(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        Self::new(labels, (0..n).map(|i| vec![i]).collect())
    }

    pub fn indiscrete(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let blocks = if n == 0 { vec![] } else { vec![(0..n).collect()] };
        Self::new(labels, blocks).expect("valid")
    }

    /// The one-point space, monoidal unit for products.
    pub fn point() -> Self {
        Self::discrete_labeled(vec!["*".into()]).expect("valid")
    }

    pub fn n_points(&self) -> usize {
        self.labels.len()
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn is_measurable_set(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.n_points()];
        for &x in set {
            if x >= mark.len() {
                return false;
            }
            mark[x] = true;
        }
        self.blocks.iter().all(|b| b.iter().all(|&x| mark[x]) || b.iter().all(|&x| !mark[x]))
    }

    /// Points of a union of blocks.
    pub fn set_of(&self, blocks: &BoolElem) -> Vec<usize> {
        let mut pts: Vec<usize> = blocks.atoms().iter().flat_map(|&b| self.blocks[b].iter().copied()).collect();
        pts.sort_unstable();
        pts
    }

    /// All blocks singletons: points are separated by measurable sets.
    pub fn is_sober(&self) -> bool {
        self.blocks.len() == self.labels.len()
    }

    pub fn identity(&self) -> MeasMap {
        MeasMap {
            source: self.clone(),
            target: self.clone(),
            point_fn: (0..self.n_points()).collect(),
        }
    }
}

impl fmt::Debug for FinMeasSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinMeasSpace({} points, blocks {:?})", self.n_points(), &*self.blocks)
    }
}

impl Serialize for FinMeasSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FinMeasSpace", 2)?;
        st.serialize_field("points", &*self.labels)?;
        st.serialize_field("blocks", &*self.blocks)?;
        st.end()
    }
}

/// A measurable function. Construction checks measurability, so every value
/// of this type is a morphism of measurable spaces.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MeasMap {
    source: FinMeasSpace,
    target: FinMeasSpace,
    point_fn: Vec<usize>,
}

impl MeasMap {
    pub fn new(source: FinMeasSpace, target: FinMeasSpace, point_fn: Vec<usize>) -> Result<Self> {
        if point_fn.len() != source.n_points() {
            return Err(Error::Mismatch(format!(
                "point function has {} entries, source has {} points",
                point_fn.len(),
                source.n_points()
            )));
        }
        if let Some(&y) = point_fn.iter().find(|&&y| y >= target.n_points()) {
            return Err(Error::IndexOutOfRange {
                what: "target point",
                index: y,
                size: target.n_points(),
            });
        }
        for (bi, b) in source.blocks().iter().enumerate() {
            let tb = target.block_of(point_fn[b[0]]);
            if let Some(&x) = b.iter().find(|&&x| target.block_of(point_fn[x]) != tb) {
                return Err(Error::NotMeasurable(format!(
                    "block {bi} of the source is split: points {} and {x} land in different target blocks",
                    b[0]
                )));
            }
        }
        Ok(MeasMap {
            source,
            target,
            point_fn,
        })
    }

    /// Skips the measurability check. Only for negative controls.
    pub fn new_unchecked(source: FinMeasSpace, target: FinMeasSpace, point_fn: Vec<usize>) -> Self {
        MeasMap {
            source,
            target,
            point_fn,
        }
    }

    pub fn source(&self) -> &FinMeasSpace {
        &self.source
    }

    pub fn target(&self) -> &FinMeasSpace {
        &self.target
    }

    pub fn point_fn(&self) -> &[usize] {
        &self.point_fn
    }

    pub fn apply(&self, x: usize) -> usize {
        self.point_fn[x]
    }

    /// Induced map `blocks(source) -> blocks(target)`.
    pub fn block_map(&self) -> Vec<usize> {
        self.source
            .blocks()
            .iter()
            .map(|b| self.target.block_of(self.point_fn[b[0]]))
            .collect()
    }

    pub fn preimage(&self, set: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.target.n_points()];
        for &y in set {
            mark[y] = true;
        }
        (0..self.source.n_points()).filter(|&x| mark[self.point_fn[x]]).collect()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MeasMap) -> Result<MeasMap> {
        if first.target != self.source {
            return Err(Error::Mismatch("cannot compose measurable maps: spaces differ".into()));
        }
        Ok(MeasMap {
            source: first.source.clone(),
            target: self.target.clone(),
            point_fn: first.point_fn.iter().map(|&y| self.point_fn[y]).collect(),
        })
    }

    /// Bijective with measurable inverse.
    pub fn is_iso(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn inverse(&self) -> Option<MeasMap> {
        let n = self.source.n_points();
        if n != self.target.n_points() {
            return None;
        }
        let mut inv = vec![usize::MAX; n];
        for (x, &y) in self.point_fn.iter().enumerate() {
            if inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        MeasMap::new(self.target.clone(), self.source.clone(), inv).ok()
    }
}

impl fmt::Debug for MeasMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MeasMap({:?} -> {:?}, {:?})",
            &*self.source.blocks, &*self.target.blocks, self.point_fn
        )
    }
}

/// Number of measurable maps `X -> Y`, saturating.
pub fn meas_map_count(x: &FinMeasSpace, y: &FinMeasSpace) -> u128 {
    x.blocks()
        .iter()
        .map(|b| {
            y.blocks()
                .iter()
                .map(|c| crate::fin_bool::checked_pow(c.len() as u128, b.len()).unwrap_or(u128::MAX))
                .fold(0u128, u128::saturating_add)
        })
        .fold(1u128, u128::saturating_mul)
}

/// All measurable maps `X -> Y`.
pub fn enumerate_meas_maps(x: &FinMeasSpace, y: &FinMeasSpace, cap: u128) -> Result<Vec<MeasMap>> {
    let needed = meas_map_count(x, y);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let mut out = Vec::new();
    for f in crate::fin_bool::functions(x.n_points(), y.n_points()) {
        if let Ok(m) = MeasMap::new(x.clone(), y.clone(), f) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Σ on objects: the Boolean algebra of measurable sets, one atom per block.
pub fn sigma(x: &FinMeasSpace) -> FinBoolAlg {
    let labels: Vec<String> = x
        .blocks()
        .iter()
        .map(|b| set_label(b.iter().map(|&p| x.labels()[p].clone())))
        .collect();
    FinBoolAlg::new(labels).unwrap_or_else(|_| FinBoolAlg::new((0..x.n_blocks()).map(|i| format!("b{i}"))).expect("distinct"))
}

/// Σ on morphisms: `f: X -> Y` gives the preimage map `Σ(Y) -> Σ(X)`.
pub fn sigma_map(f: &MeasMap) -> BoolHom {
    BoolHom::new(sigma(f.target()), sigma(f.source()), f.block_map()).expect("block map is in range")
}

/// Stone_σ: points are the σ-homomorphisms `A -> {⊥, ⊤}`, i.e. the atoms.
pub fn stone_sigma(a: &FinBoolAlg) -> FinMeasSpace {
    crate::fin_bool::stone(a)
}

/// Stone_σ on morphisms: `phi: A -> B` gives `Stone_σ(B) -> Stone_σ(A)`.
pub fn stone_sigma_map(phi: &BoolHom) -> MeasMap {
    crate::fin_bool::stone_map(phi)
}

/// Generating set `[p] = { points of Stone_σ(A) lying under p }`.
pub fn generator_set(p: &BoolElem) -> Vec<usize> {
    p.atoms()
}

/// Counit `A -> Σ(Stone_σ(A))`, an isomorphism.
pub fn sigma_stone_counit(a: &FinBoolAlg) -> BoolHom {
    BoolHom::new(a.clone(), sigma(&stone_sigma(a)), (0..a.size()).collect()).expect("same size")
}

/// A {0,1}-valued probability measure, determined by the block it charges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ZeroOneMeasure {
    pub space: FinMeasSpace,
    pub block: usize,
}

impl ZeroOneMeasure {
    pub fn dirac(space: &FinMeasSpace, x: usize) -> Self {
        ZeroOneMeasure {
            space: space.clone(),
            block: space.block_of(x),
        }
    }

    /// Value on a measurable set; errors on non-measurable input.
    pub fn measure(&self, set: &[usize]) -> Result<bool> {
        if !self.space.is_measurable_set(set) {
            return Err(Error::NotMeasurable(format!("{set:?} is not a union of blocks")));
        }
        Ok(set.contains(&self.space.blocks()[self.block][0]))
    }
}

pub fn zero_one_measures(x: &FinMeasSpace) -> Vec<ZeroOneMeasure> {
    (0..x.n_blocks())
        .map(|block| ZeroOneMeasure {
            space: x.clone(),
            block,
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Sobrification {
    pub space: FinMeasSpace,
    /// Sends each point to its block.
    pub unit: MeasMap,
}

/// `Stone_σ(Σ(X))` with its unit.
pub fn sobrify(x: &FinMeasSpace) -> Sobrification {
    let space = stone_sigma(&sigma(x));
    let unit = MeasMap::new(x.clone(), space.clone(), (0..x.n_points()).map(|p| x.block_of(p)).collect())
        .expect("constant on blocks");
    Sobrification { space, unit }
}

/// Binary product with projections. Point `(x, y)` has index `x * |Y| + y`
/// and block `(bx, by)` has index `bx * blocks(Y) + by`.
#[derive(Clone, Debug)]
pub struct Product {
    pub space: FinMeasSpace,
    pub fst: MeasMap,
    pub snd: MeasMap,
}

pub fn product_space(x: &FinMeasSpace, y: &FinMeasSpace) -> FinMeasSpace {
    let ny = y.n_points();
    let labels: Vec<String> = x
        .labels()
        .iter()
        .flat_map(|a| y.labels().iter().map(move |b| format!("({a},{b})")))
        .collect();
    let blocks: Vec<Vec<usize>> = x
        .blocks()
        .iter()
        .flat_map(|bx| {
            y.blocks().iter().map(move |by| {
                bx.iter().flat_map(|&p| by.iter().map(move |&q| p * ny + q)).collect()
            })
        })
        .collect();
    match FinMeasSpace::new(labels.clone(), blocks.clone()) {
        Ok(s) => s,
        Err(_) => FinMeasSpace::new((0..labels.len()).map(|i| i.to_string()).collect(), blocks).expect("valid"),
    }
}

pub fn product(x: &FinMeasSpace, y: &FinMeasSpace) -> Product {
    let space = product_space(x, y);
    let ny = y.n_points();
    let n = space.n_points();
    let fst = MeasMap::new(space.clone(), x.clone(), (0..n).map(|i| i / ny).collect()).expect("projection");
    let snd = MeasMap::new(space.clone(), y.clone(), (0..n).map(|i| i % ny).collect()).expect("projection");
    Product { space, fst, snd }
}

/// `f × g`.
pub fn product_map(f: &MeasMap, g: &MeasMap) -> MeasMap {
    let src = product_space(f.source(), g.source());
    let tgt = product_space(f.target(), g.target());
    let (ns, nt) = (g.source().n_points(), g.target().n_points());
    let pf = (0..src.n_points()).map(|i| f.apply(i / ns) * nt + g.apply(i % ns)).collect();
    MeasMap::new(src, tgt, pf).expect("products of measurable maps are measurable")
}

/// `X × Y -> Y × X`.
pub fn braiding(x: &FinMeasSpace, y: &FinMeasSpace) -> MeasMap {
    let (nx, ny) = (x.n_points(), y.n_points());
    let pf = (0..nx * ny).map(|i| (i % ny) * nx + i / ny).collect();
    MeasMap::new(product_space(x, y), product_space(y, x), pf).expect("bijection")
}

/// `(X × Y) × Z -> X × (Y × Z)`.
pub fn associator(x: &FinMeasSpace, y: &FinMeasSpace, z: &FinMeasSpace) -> MeasMap {
    let src = product_space(&product_space(x, y), z);
    let tgt = product_space(x, &product_space(y, z));
    // Both orderings enumerate (x, y, z) lexicographically.
    let n = src.n_points();
    MeasMap::new(src, tgt, (0..n).collect()).expect("bijection")
}

/// `1 × X -> X`.
pub fn left_unitor(x: &FinMeasSpace) -> MeasMap {
    let src = product_space(&FinMeasSpace::point(), x);
    MeasMap::new(src, x.clone(), (0..x.n_points()).collect()).expect("bijection")
}

/// `X × 1 -> X`.
pub fn right_unitor(x: &FinMeasSpace) -> MeasMap {
    let src = product_space(x, &FinMeasSpace::point());
    MeasMap::new(src, x.clone(), (0..x.n_points()).collect()).expect("bijection")
}

/// Transpose of `g: X -> Stone_σ(A)` to `A -> Σ(X)`, `a ↦ g⁻¹([a])`.
pub fn adjoint_transpose(g: &MeasMap, a: &FinBoolAlg) -> Result<BoolHom> {
    if *g.target() != stone_sigma(a) {
        return Err(Error::Mismatch("target of g is not Stone_σ(A)".into()));
    }
    BoolHom::new(a.clone(), sigma(g.source()), g.block_map())
}

/// Inverse transpose of `h: A -> Σ(X)` to `X -> Stone_σ(A)`.
pub fn adjoint_transpose_inv(h: &BoolHom, x: &FinMeasSpace) -> Result<MeasMap> {
    if *h.target() != sigma(x) {
        return Err(Error::Mismatch("target of h is not Σ(X)".into()));
    }
    let pf = (0..x.n_points()).map(|p| h.point_map()[x.block_of(p)]).collect();
    MeasMap::new(x.clone(), stone_sigma(h.source()), pf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fin_bool::enumerate_homs;

    fn space(n: usize, blocks: &[&[usize]]) -> FinMeasSpace {
        FinMeasSpace::new((0..n).map(|i| i.to_string()).collect(), blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(FinMeasSpace::new(vec!["a".into()], vec![]).is_err());
        assert!(FinMeasSpace::new(vec!["a".into()], vec![vec![0], vec![0]]).is_err());
        assert!(FinMeasSpace::new(vec!["a".into()], vec![vec![]]).is_err());
        assert!(FinMeasSpace::new(vec!["a".into()], vec![vec![1]]).is_err());
        let s = space(3, &[&[2], &[1, 0]]);
        assert_eq!(s.blocks(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn measurability_is_checked_at_construction() {
        let x = space(2, &[&[0, 1]]);
        let y = FinMeasSpace::discrete(2);
        assert!(matches!(MeasMap::new(x.clone(), y.clone(), vec![0, 1]), Err(Error::NotMeasurable(_))));
        assert!(MeasMap::new(x, y.clone(), vec![1, 1]).is_ok());
        assert!(MeasMap::new(y.clone(), y, vec![0, 2]).is_err());
    }

    #[test]
    fn sigma_on_objects_and_identity() {
        let x = space(3, &[&[0, 1], &[2]]);
        assert_eq!(sigma(&x).size(), 2);
        assert_eq!(sigma_map(&x.identity()), sigma(&x).identity());
    }

    #[test]
    fn stone_sigma_generators_respect_meets() {
        for k in 0..=4 {
            let a = FinBoolAlg::with_atoms(k);
            let s = stone_sigma(&a);
            assert_eq!(s.n_points(), k);
            assert!(s.is_sober());
            for p in a.elements() {
                for q in a.elements() {
                    let lhs = generator_set(&p.meet(&q));
                    let rhs: Vec<usize> = generator_set(&p).into_iter().filter(|x| generator_set(&q).contains(x)).collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn zero_one_measures_match_blocks() {
        assert_eq!(zero_one_measures(&FinMeasSpace::discrete(3)).len(), 3);
        assert!(zero_one_measures(&FinMeasSpace::discrete(0)).is_empty());
        let x = space(3, &[&[0, 1], &[2]]);
        let ms = zero_one_measures(&x);
        assert_eq!(ms.len(), 2);
        let d0 = ZeroOneMeasure::dirac(&x, 0);
        let d1 = ZeroOneMeasure::dirac(&x, 1);
        for set in [vec![], vec![0, 1], vec![2], vec![0, 1, 2]] {
            assert_eq!(d0.measure(&set).unwrap(), d1.measure(&set).unwrap());
        }
        assert!(d0.measure(&[0]).is_err());
    }

    #[test]
    fn sobrification_small_cases() {
        let d = FinMeasSpace::discrete(3);
        assert!(d.is_sober());
        let s = sobrify(&d);
        assert_eq!(s.unit.point_fn(), &[0, 1, 2]);
        assert!(s.unit.is_iso());

        let x = space(3, &[&[0, 1], &[2]]);
        assert!(!x.is_sober());
        let s = sobrify(&x);
        assert_eq!(s.space.n_points(), zero_one_measures(&x).len());
        assert!(!s.unit.is_iso());
        let ss = sobrify(&s.space);
        assert!(ss.unit.is_iso());
    }

    #[test]
    fn products() {
        let p = product(&FinMeasSpace::discrete(2), &FinMeasSpace::discrete(3));
        assert_eq!(p.space.n_points(), 6);
        assert!(p.space.is_sober());

        let p = product(&space(2, &[&[0, 1]]), &FinMeasSpace::discrete(2));
        assert_eq!(p.space.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(sigma(&p.space).size(), 2);
    }

    #[test]
    fn transpose_bijection_discrete_two() {
        let x = FinMeasSpace::discrete(2);
        let a = FinBoolAlg::with_atoms(2);
        let maps = enumerate_meas_maps(&x, &stone_sigma(&a), 100).unwrap();
        let homs = enumerate_homs(&a, &sigma(&x), 100).unwrap();
        assert_eq!(maps.len(), 4);
        assert_eq!(homs.len(), 4);
        for g in &maps {
            let h = adjoint_transpose(g, &a).unwrap();
            assert_eq!(adjoint_transpose_inv(&h, &x).unwrap(), *g);
        }
        for h in &homs {
            let g = adjoint_transpose_inv(h, &x).unwrap();
            assert_eq!(adjoint_transpose(&g, &a).unwrap(), *h);
        }
    }

    #[test]
    fn transpose_of_constant_map() {
        let x = space(3, &[&[0, 1], &[2]]);
        let a = FinBoolAlg::with_atoms(2);
        let g = MeasMap::new(x.clone(), stone_sigma(&a), vec![1, 1, 1]).unwrap();
        let h = adjoint_transpose(&g, &a).unwrap();
        assert!(h.apply(&a.atom(0).unwrap()).is_bottom());
        assert!(h.apply(&a.atom(1).unwrap()).is_top());
        assert!(adjoint_transpose(&g, &FinBoolAlg::with_atoms(3)).is_err());
    }

    #[test]
    fn triangle_identities() {
        let x = space(4, &[&[0, 3], &[1], &[2]]);
        let a = FinBoolAlg::with_atoms(3);
        let unit = sobrify(&x).unit;
        let lhs = sigma_map(&unit).after(&sigma_stone_counit(&sigma(&x))).unwrap();
        assert_eq!(lhs, sigma(&x).identity());
        let lhs = stone_sigma_map(&sigma_stone_counit(&a)).after(&sobrify(&stone_sigma(&a)).unit).unwrap();
        assert_eq!(lhs, stone_sigma(&a).identity());
    }

    #[test]
    fn monoidal_structure_maps_are_isos() {
        let x = space(2, &[&[0, 1]]);
        let y = FinMeasSpace::discrete(2);
        let z = space(3, &[&[0], &[1, 2]]);
        assert!(braiding(&x, &y).is_iso());
        assert!(associator(&x, &y, &z).is_iso());
        assert!(left_unitor(&z).is_iso());
        assert!(right_unitor(&z).is_iso());
        assert_eq!(braiding(&y, &x).after(&braiding(&x, &y)).unwrap(), product_space(&x, &y).identity());
    }

    #[test]
    fn meas_map_count_matches_enumeration() {
        let x = space(3, &[&[0, 1], &[2]]);
        let y = space(3, &[&[0], &[1, 2]]);
        let all = enumerate_meas_maps(&x, &y, 1000).unwrap();
        assert_eq!(all.len() as u128, meas_map_count(&x, &y));
        assert_eq!(all.len(), (1 + 4) * (1 + 2));
    }
}
