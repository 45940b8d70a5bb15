//! Finite Boolean algebras presented by their atoms.
//!
//! An element is a set of atoms and a homomorphism `A -> B` is stored as its
//! Stone-dual point map `atoms(B) -> atoms(A)`, so `phi(p) = { b : pm(b) ∈ p }`.
//! Every homomorphism between finite algebras preserves all existing
//! (finite) suprema, so the σ- and plain notions coincide here. The
//! distinction between σ-homomorphisms and arbitrary ones, and between
//! σ-isomorphisms and isomorphisms, has no finite witness and is not modelled.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fin_meas::{FinMeasSpace, MeasMap};

/// Default cap on the number of candidates `enumerate_homs` may produce.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinBoolAlg {
    atoms: Arc<[String]>,
}

impl FinBoolAlg {
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = S>) -> Result<Self> {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for a in &atoms {
            if !seen.insert(a.as_str()) {
                return Err(Error::DuplicateLabel(a.clone()));
            }
        }
        Ok(FinBoolAlg { atoms: atoms.into() })
    }

    /// Algebra with `k` atoms labelled `a0 .. a{k-1}`.
    pub fn with_atoms(k: usize) -> Self {
        FinBoolAlg {
            atoms: (0..k).map(|i| format!("a{i}")).collect::<Vec<_>>().into(),
        }
    }

    /// The algebra with ⊥ = ⊤.
    pub fn trivial() -> Self {
        Self::with_atoms(0)
    }

    pub fn size(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn bottom(&self) -> BoolElem {
        BoolElem::empty(self.size())
    }

    pub fn top(&self) -> BoolElem {
        let mut bits = FixedBitSet::with_capacity(self.size());
        bits.insert_range(..);
        BoolElem { bits }
    }

    pub fn atom(&self, i: usize) -> Result<BoolElem> {
        self.element([i])
    }

    pub fn element(&self, atoms: impl IntoIterator<Item = usize>) -> Result<BoolElem> {
        let mut bits = FixedBitSet::with_capacity(self.size());
        for i in atoms {
            if i >= self.size() {
                return Err(Error::IndexOutOfRange {
                    what: "atom",
                    index: i,
                    size: self.size(),
                });
            }
            bits.insert(i);
        }
        Ok(BoolElem { bits })
    }

    pub fn contains(&self, p: &BoolElem) -> bool {
        p.bits.len() == self.size()
    }

    /// All `2^k` elements, in binary-counting order. Only sensible for small `k`.
    pub fn elements(&self) -> impl Iterator<Item = BoolElem> + '_ {
        let k = self.size();
        assert!(k < 32, "refusing to enumerate 2^{k} elements");
        (0u64..(1u64 << k)).map(move |mask| BoolElem::from_mask(k, mask))
    }

    pub fn identity(&self) -> BoolHom {
        BoolHom {
            source: self.clone(),
            target: self.clone(),
            point_map: (0..self.size()).collect(),
        }
    }
}

impl fmt::Debug for FinBoolAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinBoolAlg{:?}", &*self.atoms)
    }
}

impl Serialize for FinBoolAlg {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FinBoolAlg", 1)?;
        st.serialize_field("atoms", &*self.atoms)?;
        st.end()
    }
}

/// An element of a finite Boolean algebra, as a set of atom indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolElem {
    bits: FixedBitSet,
}

impl BoolElem {
    fn empty(k: usize) -> Self {
        BoolElem {
            bits: FixedBitSet::with_capacity(k),
        }
    }

    fn from_mask(k: usize, mask: u64) -> Self {
        let mut e = Self::empty(k);
        for i in 0..k {
            if mask >> i & 1 == 1 {
                e.bits.insert(i);
            }
        }
        e
    }

    /// Number of atoms of the owning algebra.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains_atom(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_bottom(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_top(&self) -> bool {
        self.bits.is_full()
    }

    fn check_same(&self, other: &BoolElem) {
        assert_eq!(
            self.universe(),
            other.universe(),
            "elements of different algebras"
        );
    }

    pub fn meet(&self, other: &BoolElem) -> BoolElem {
        self.check_same(other);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        BoolElem { bits }
    }

    pub fn join(&self, other: &BoolElem) -> BoolElem {
        self.check_same(other);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        BoolElem { bits }
    }

    pub fn complement(&self) -> BoolElem {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        BoolElem { bits }
    }

    pub fn le(&self, other: &BoolElem) -> bool {
        self.check_same(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &BoolElem) -> bool {
        self.meet(other).is_bottom()
    }
}

impl fmt::Debug for BoolElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

impl Serialize for BoolElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoolElem", 1)?;
        st.serialize_field("atoms", &self.atoms())?;
        st.end()
    }
}

/// Join of a finite family; ⊥ for the empty family.
pub fn join_all<'a>(alg: &FinBoolAlg, elems: impl IntoIterator<Item = &'a BoolElem>) -> BoolElem {
    elems.into_iter().fold(alg.bottom(), |acc, e| acc.join(e))
}

/// Boolean homomorphism `source -> target`, stored as the dual point map
/// `atoms(target) -> atoms(source)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BoolHom {
    source: FinBoolAlg,
    target: FinBoolAlg,
    point_map: Vec<usize>,
}

impl BoolHom {
    pub fn new(source: FinBoolAlg, target: FinBoolAlg, point_map: Vec<usize>) -> Result<Self> {
        if point_map.len() != target.size() {
            return Err(Error::Mismatch(format!(
                "point map has {} entries, target has {} atoms",
                point_map.len(),
                target.size()
            )));
        }
        if let Some(&bad) = point_map.iter().find(|&&a| a >= source.size()) {
            return Err(Error::IndexOutOfRange {
                what: "source atom",
                index: bad,
                size: source.size(),
            });
        }
        Ok(BoolHom {
            source,
            target,
            point_map,
        })
    }

    pub fn source(&self) -> &FinBoolAlg {
        &self.source
    }

    pub fn target(&self) -> &FinBoolAlg {
        &self.target
    }

    pub fn point_map(&self) -> &[usize] {
        &self.point_map
    }

    pub fn apply(&self, p: &BoolElem) -> BoolElem {
        assert!(self.source.contains(p), "element not in source algebra");
        let mut out = self.target.bottom();
        for (b, &a) in self.point_map.iter().enumerate() {
            if p.contains_atom(a) {
                out.bits.insert(b);
            }
        }
        out
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &BoolHom) -> Result<BoolHom> {
        if first.target != self.source {
            return Err(Error::Mismatch(format!(
                "cannot compose: {:?} is not {:?}",
                first.target, self.source
            )));
        }
        Ok(BoolHom {
            source: first.source.clone(),
            target: self.target.clone(),
            point_map: self.point_map.iter().map(|&b| first.point_map[b]).collect(),
        })
    }

    /// Isomorphism iff the dual point map is a bijection.
    pub fn is_iso(&self) -> bool {
        self.source.size() == self.target.size() && {
            let mut seen = vec![false; self.source.size()];
            self.point_map.iter().all(|&a| !std::mem::replace(&mut seen[a], true))
        }
    }

    pub fn inverse(&self) -> Option<BoolHom> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.point_map.len()];
        for (b, &a) in self.point_map.iter().enumerate() {
            inv[a] = b;
        }
        Some(BoolHom {
            source: self.target.clone(),
            target: self.source.clone(),
            point_map: inv,
        })
    }

    /// Checks ⊥, ⊤, ∧, ∨, ¬ preservation on every element (small sources only).
    pub fn preserves_operations(&self) -> bool {
        if self.apply(&self.source.bottom()) != self.target.bottom()
            || self.apply(&self.source.top()) != self.target.top()
        {
            return false;
        }
        let elems: Vec<BoolElem> = self.source.elements().collect();
        elems.iter().all(|p| {
            let fp = self.apply(p);
            self.apply(&p.complement()) == fp.complement()
                && elems.iter().all(|q| {
                    let fq = self.apply(q);
                    self.apply(&p.meet(q)) == fp.meet(&fq) && self.apply(&p.join(q)) == fp.join(&fq)
                })
        })
    }
}

impl fmt::Debug for BoolHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BoolHom({} -> {} atoms, dual {:?})",
            self.source.size(),
            self.target.size(),
            self.point_map
        )
    }
}

/// Result of [`from_sets`].
#[derive(Clone, Debug)]
pub struct GeneratedAlgebra {
    pub algebra: FinBoolAlg,
    /// Atom `i` is the point set `blocks[i]`.
    pub blocks: Vec<Vec<usize>>,
    pub generators: Vec<BoolElem>,
}

/// The algebra of subsets of `{0..ground_size}` generated by `generators`.
/// Atoms are the classes of points with identical generator membership,
/// ordered by least member.
pub fn from_sets(ground_size: usize, generators: &[Vec<usize>]) -> Result<GeneratedAlgebra> {
    let mut member = vec![vec![false; generators.len()]; ground_size];
    for (g, gen) in generators.iter().enumerate() {
        for &x in gen {
            if x >= ground_size {
                return Err(Error::IndexOutOfRange {
                    what: "generator point",
                    index: x,
                    size: ground_size,
                });
            }
            member[x][g] = true;
        }
    }
    let mut class_of: BTreeMap<&[bool], usize> = BTreeMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (x, sig) in member.iter().enumerate() {
        let next = blocks.len();
        let c = *class_of.entry(sig.as_slice()).or_insert(next);
        if c == next {
            blocks.push(Vec::new());
        }
        blocks[c].push(x);
    }
    let labels = blocks.iter().map(|b| set_label(b.iter().map(usize::to_string)));
    let algebra = FinBoolAlg::new(labels)?;
    let generators = (0..generators.len())
        .map(|g| algebra.element(blocks.iter().enumerate().filter(|(_, b)| member[b[0]][g]).map(|(i, _)| i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratedAlgebra {
        algebra,
        blocks,
        generators,
    })
}

pub(crate) fn set_label(items: impl Iterator<Item = String>) -> String {
    format!("{{{}}}", items.collect::<Vec<_>>().join(","))
}

/// Stone space: one point per atom (principal ultrafilter), discrete σ-algebra.
pub fn stone(alg: &FinBoolAlg) -> FinMeasSpace {
    FinMeasSpace::discrete_labeled(alg.atoms().to_vec()).expect("atom labels are distinct")
}

/// Stone functor on morphisms: `phi: A -> B` gives `stone(B) -> stone(A)`.
pub fn stone_map(phi: &BoolHom) -> MeasMap {
    MeasMap::new(stone(phi.target()), stone(phi.source()), phi.point_map().to_vec())
        .expect("maps between discrete spaces are measurable")
}

/// Clopen algebra of a discrete space, with the point-to-atom bijection.
#[derive(Clone, Debug)]
pub struct Clopen {
    pub algebra: FinBoolAlg,
    pub point_to_atom: Vec<usize>,
}

pub fn clopen(space: &FinMeasSpace) -> Result<Clopen> {
    if !space.is_sober() {
        return Err(Error::Invalid(
            "clopen algebra requires a discrete space (all blocks singletons)".into(),
        ));
    }
    Ok(Clopen {
        algebra: FinBoolAlg::new(space.labels().iter().cloned())?,
        point_to_atom: (0..space.n_points()).collect(),
    })
}

/// Clopen functor on morphisms: preimage.
pub fn clopen_map(f: &MeasMap) -> Result<BoolHom> {
    let src = clopen(f.target())?.algebra;
    let tgt = clopen(f.source())?.algebra;
    BoolHom::new(src, tgt, f.point_fn().to_vec())
}

/// The isomorphism `A -> clopen(stone(A))`.
pub fn clopen_stone_iso(alg: &FinBoolAlg) -> BoolHom {
    let cs = clopen(&stone(alg)).expect("stone spaces are discrete").algebra;
    BoolHom::new(alg.clone(), cs, (0..alg.size()).collect()).expect("same size")
}

/// The isomorphism `X -> stone(clopen(X))` for discrete `X`.
pub fn stone_clopen_iso(space: &FinMeasSpace) -> Result<MeasMap> {
    let c = clopen(space)?;
    MeasMap::new(space.clone(), stone(&c.algebra), c.point_to_atom)
}

/// Coproduct `A ⊗ B` with its two inclusions. Atom `(a, b)` has index `a * |B| + b`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub algebra: FinBoolAlg,
    pub inl: BoolHom,
    pub inr: BoolHom,
}

pub fn tensor(a: &FinBoolAlg, b: &FinBoolAlg) -> Tensor {
    let nb = b.size();
    let labels: Vec<String> = a
        .atoms()
        .iter()
        .flat_map(|x| b.atoms().iter().map(move |y| format!("({x},{y})")))
        .collect();
    let algebra = FinBoolAlg::new(labels.clone()).unwrap_or_else(|_| FinBoolAlg::with_atoms(labels.len()));
    let n = algebra.size();
    let inl = BoolHom::new(a.clone(), algebra.clone(), (0..n).map(|i| i / nb).collect()).expect("valid");
    let inr = BoolHom::new(b.clone(), algebra.clone(), (0..n).map(|i| i % nb).collect()).expect("valid");
    Tensor { algebra, inl, inr }
}

/// Tensor of morphisms `f ⊗ g : A ⊗ B -> A' ⊗ B'`.
pub fn tensor_hom(f: &BoolHom, g: &BoolHom) -> BoolHom {
    let src = tensor(f.source(), g.source()).algebra;
    let tgt = tensor(f.target(), g.target());
    let (nb_src, nb_tgt) = (g.source().size(), g.target().size());
    let pm = (0..tgt.algebra.size())
        .map(|i| f.point_map()[i / nb_tgt] * nb_src + g.point_map()[i % nb_tgt])
        .collect();
    BoolHom::new(src, tgt.algebra, pm).expect("valid")
}

/// The unique `h: A ⊗ B -> C` with `h ∘ inl = phi` and `h ∘ inr = psi`.
pub fn copair(phi: &BoolHom, psi: &BoolHom) -> Result<BoolHom> {
    if phi.target() != psi.target() {
        return Err(Error::Mismatch("copair: homomorphisms have different targets".into()));
    }
    let t = tensor(phi.source(), psi.source());
    let nb = psi.source().size();
    let pm = phi
        .point_map()
        .iter()
        .zip(psi.point_map())
        .map(|(&a, &b)| a * nb + b)
        .collect();
    BoolHom::new(t.algebra, phi.target().clone(), pm)
}

/// Number of homomorphisms `A -> B`, i.e. `|atoms(A)|^|atoms(B)|`.
pub fn hom_count(a: &FinBoolAlg, b: &FinBoolAlg) -> u128 {
    checked_pow(a.size() as u128, b.size()).unwrap_or(u128::MAX)
}

pub(crate) fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base))
}

/// All homomorphisms `A -> B`, i.e. all functions `atoms(B) -> atoms(A)`.
pub fn enumerate_homs(a: &FinBoolAlg, b: &FinBoolAlg, cap: u128) -> Result<Vec<BoolHom>> {
    let needed = hom_count(a, b);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    Ok(functions(b.size(), a.size())
        .map(|pm| BoolHom {
            source: a.clone(),
            target: b.clone(),
            point_map: pm,
        })
        .collect())
}

/// All functions `{0..n} -> {0..m}` in lexicographic order.
pub(crate) fn functions(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur = if m == 0 && n > 0 { None } else { Some(vec![0; n]) };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = n;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < m {
                cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}

/// A finite algebra is its own Baire envelope and universal σ-completion.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub algebra: FinBoolAlg,
    pub unit: BoolHom,
}

impl Envelope {
    /// Unique extension of `phi: A -> B` along the unit.
    pub fn extend(&self, phi: &BoolHom) -> Result<BoolHom> {
        if phi.source() != self.unit.source() {
            return Err(Error::Mismatch("extension of a hom from another algebra".into()));
        }
        let inv = self.unit.inverse().expect("unit is an isomorphism");
        phi.after(&inv)
    }
}

pub fn envelope_and_completion(alg: &FinBoolAlg) -> Envelope {
    Envelope {
        algebra: alg.clone(),
        unit: alg.identity(),
    }
}

/// Counts of the exhaustive check that every hom out of `A` extends uniquely
/// along the envelope unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionCertificate {
    pub homs_checked: usize,
    pub candidates_checked: usize,
    pub failures: usize,
}

pub fn verify_extension_property(alg: &FinBoolAlg, max_target_atoms: usize, cap: u128) -> Result<ExtensionCertificate> {
    let env = envelope_and_completion(alg);
    let mut cert = ExtensionCertificate {
        homs_checked: 0,
        candidates_checked: 0,
        failures: 0,
    };
    for k in 0..=max_target_atoms {
        let b = FinBoolAlg::with_atoms(k);
        let homs = enumerate_homs(alg, &b, cap)?;
        let candidates = enumerate_homs(&env.algebra, &b, cap)?;
        for phi in &homs {
            cert.homs_checked += 1;
            let ext = env.extend(phi)?;
            let ok_ext = ext.after(&env.unit)? == *phi;
            let matching = candidates
                .iter()
                .filter(|h| h.after(&env.unit).map(|c| c == *phi).unwrap_or(false))
                .count();
            cert.candidates_checked += candidates.len();
            if !ok_ext || matching != 1 {
                cert.failures += 1;
            }
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent partition-refinement oracle: two points share an atom iff
    /// no generator separates them.
    fn brute_force_atoms(ground: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for x in 0..ground {
            let same = |y: usize| gens.iter().all(|g| g.contains(&x) == g.contains(&y));
            match blocks.iter_mut().find(|b| same(b[0])) {
                Some(b) => b.push(x),
                None => blocks.push(vec![x]),
            }
        }
        blocks
    }

    #[test]
    fn from_sets_single_split() {
        let g = from_sets(4, &[vec![0, 1]]).unwrap();
        assert_eq!(g.blocks, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(g.generators[0].atoms(), vec![0]);
    }

    #[test]
    fn from_sets_empty_generation_is_indiscrete() {
        let g = from_sets(3, &[]).unwrap();
        assert_eq!(g.algebra.size(), 1);
        assert_eq!(g.blocks, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn from_sets_two_overlapping_generators() {
        let gens = vec![vec![0, 1], vec![1, 2]];
        let g = from_sets(4, &gens).unwrap();
        assert_eq!(g.blocks, brute_force_atoms(4, &gens));
        assert_eq!(g.blocks, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(g.generators[0].atoms(), vec![0, 1]);
        assert_eq!(g.generators[1].atoms(), vec![1, 2]);
    }

    #[test]
    fn from_sets_rejects_out_of_range() {
        assert!(matches!(
            from_sets(2, &[vec![2]]),
            Err(Error::IndexOutOfRange { index: 2, .. })
        ));
    }

    #[test]
    fn from_sets_matches_oracle_on_all_small_generator_families() {
        for ground in 0..=4usize {
            let subsets: Vec<Vec<usize>> = (0u32..1 << ground)
                .map(|m| (0..ground).filter(|i| m >> i & 1 == 1).collect())
                .collect();
            for a in &subsets {
                for b in &subsets {
                    let gens = vec![a.clone(), b.clone()];
                    let g = from_sets(ground, &gens).unwrap();
                    assert_eq!(g.blocks, brute_force_atoms(ground, &gens));
                    let cover: usize = g.blocks.iter().map(Vec::len).sum();
                    assert_eq!(cover, ground);
                    for (gi, gen) in gens.iter().enumerate() {
                        let pts: Vec<usize> = g.generators[gi]
                            .atoms()
                            .iter()
                            .flat_map(|&i| g.blocks[i].clone())
                            .collect();
                        let mut sorted = pts.clone();
                        sorted.sort();
                        let mut expect = gen.clone();
                        expect.sort();
                        assert_eq!(sorted, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn boolean_laws_exhaustive_up_to_four_atoms() {
        for k in 0..=4 {
            let alg = FinBoolAlg::with_atoms(k);
            let els: Vec<_> = alg.elements().collect();
            for p in &els {
                assert_eq!(p.complement().complement(), *p);
                assert!(p.meet(&p.complement()).is_bottom());
                assert!(p.join(&p.complement()).is_top());
                for q in &els {
                    assert_eq!(p.meet(q).complement(), p.complement().join(&q.complement()));
                    assert_eq!(p.join(&p.meet(q)), *p);
                    assert_eq!(p.meet(&p.join(q)), *p);
                    for r in &els {
                        assert_eq!(p.meet(&q.join(r)), p.meet(q).join(&p.meet(r)));
                    }
                }
            }
        }
    }

    #[test]
    fn stone_of_small_algebras() {
        let s = stone(&FinBoolAlg::with_atoms(3));
        assert_eq!(s.n_points(), 3);
        assert!(s.is_sober());
        assert_eq!(stone(&FinBoolAlg::trivial()).n_points(), 0);
        let c = clopen(&stone(&FinBoolAlg::with_atoms(2))).unwrap();
        assert_eq!(c.algebra.elements().count(), 4);
    }

    #[test]
    fn clopen_rejects_non_discrete() {
        let x = FinMeasSpace::new(vec!["0".into(), "1".into()], vec![vec![0, 1]]).unwrap();
        assert!(clopen(&x).is_err());
        assert_eq!(clopen(&FinMeasSpace::discrete(0)).unwrap().algebra.size(), 0);
    }

    #[test]
    fn tensor_sizes_and_inclusions() {
        let a = FinBoolAlg::with_atoms(2);
        let b = FinBoolAlg::with_atoms(3);
        let t = tensor(&a, &b);
        assert_eq!(t.algebra.size(), 6);
        let p = a.atom(1).unwrap();
        assert_eq!(t.inl.apply(&p).atoms(), vec![3, 4, 5]);
        assert_eq!(tensor(&a, &FinBoolAlg::trivial()).algebra.size(), 0);
        assert!(t.inl.preserves_operations() && t.inr.preserves_operations());
    }

    #[test]
    fn copair_of_identities_is_diagonal_dual() {
        let a = FinBoolAlg::with_atoms(2);
        let id = a.identity();
        let h = copair(&id, &id).unwrap();
        assert_eq!(h.point_map(), &[0, 3]);
        let t = tensor(&a, &a);
        for p in a.elements() {
            assert_eq!(h.apply(&t.inl.apply(&p)), p);
        }
    }

    #[test]
    fn copair_into_trivial_algebra() {
        let a = FinBoolAlg::with_atoms(2);
        let triv = FinBoolAlg::trivial();
        let phi = BoolHom::new(a.clone(), triv.clone(), vec![]).unwrap();
        let h = copair(&phi, &phi).unwrap();
        assert_eq!(h.target().size(), 0);
        assert_eq!(h.source().size(), 4);
    }

    #[test]
    fn copair_rejects_mismatched_targets() {
        let a = FinBoolAlg::with_atoms(1);
        let phi = BoolHom::new(a.clone(), FinBoolAlg::with_atoms(1), vec![0]).unwrap();
        let psi = BoolHom::new(a.clone(), FinBoolAlg::with_atoms(2), vec![0, 0]).unwrap();
        assert!(copair(&phi, &psi).is_err());
    }

    #[test]
    fn hom_enumeration_counts() {
        let two = FinBoolAlg::with_atoms(2);
        let three = FinBoolAlg::with_atoms(3);
        assert_eq!(enumerate_homs(&two, &three, DEFAULT_ENUMERATION_CAP).unwrap().len(), 8);
        assert_eq!(enumerate_homs(&FinBoolAlg::trivial(), &three, DEFAULT_ENUMERATION_CAP).unwrap().len(), 0);
        assert_eq!(
            enumerate_homs(&FinBoolAlg::trivial(), &FinBoolAlg::trivial(), DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .len(),
            1
        );
        let one = FinBoolAlg::with_atoms(1);
        for k in 0..5 {
            assert_eq!(enumerate_homs(&one, &FinBoolAlg::with_atoms(k), 10).unwrap().len(), 1);
        }
        assert!(matches!(
            enumerate_homs(&three, &three, 26),
            Err(Error::CapExceeded { needed: 27, cap: 26 })
        ));
        for h in enumerate_homs(&two, &three, 100).unwrap() {
            assert!(h.preserves_operations());
        }
    }

    #[test]
    fn homs_preserve_finite_joins() {
        let a = FinBoolAlg::with_atoms(3);
        let b = FinBoolAlg::with_atoms(2);
        let els: Vec<_> = a.elements().collect();
        for h in enumerate_homs(&a, &b, 100).unwrap() {
            for mask in 0u32..(1 << els.len()) {
                let fam: Vec<&BoolElem> = (0..els.len()).filter(|i| mask >> i & 1 == 1).map(|i| &els[i]).collect();
                let lhs = h.apply(&join_all(&a, fam.iter().copied()));
                let imgs: Vec<BoolElem> = fam.iter().map(|p| h.apply(p)).collect();
                assert_eq!(lhs, join_all(&b, imgs.iter()));
            }
        }
    }

    #[test]
    fn envelope_is_identity_and_extensions_unique() {
        for k in 0..=3 {
            let a = FinBoolAlg::with_atoms(k);
            let env = envelope_and_completion(&a);
            assert_eq!(env.algebra, a);
            assert_eq!(env.unit, a.identity());
            let cert = verify_extension_property(&a, 3, DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(cert.failures, 0);
        }
        let cert = verify_extension_property(&FinBoolAlg::with_atoms(2), 3, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(cert.homs_checked, 1 + 2 + 4 + 8);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(matches!(FinBoolAlg::new(["x", "x"]), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn functions_enumeration() {
        assert_eq!(functions(0, 0).count(), 1);
        assert_eq!(functions(2, 0).count(), 0);
        assert_eq!(functions(3, 2).count(), 8);
        assert_eq!(functions(2, 3).last().unwrap(), vec![2, 2]);
    }
}
