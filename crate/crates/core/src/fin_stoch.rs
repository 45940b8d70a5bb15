//! Markov kernels between finite measurable spaces.
//!
//! A kernel `X ⇝ Y` is a row-stochastic matrix over the blocks of `X` and `Y`:
//! measurability in the source point is constancy on blocks, and a
//! probability measure on `Σ(Y)` is a distribution over the blocks of `Y`.
//! Composition is the Chapman–Kolmogorov matrix product. All arithmetic is
//! exact.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};
use crate::fin_meas::{self, FinMeasSpace, MeasMap};

#[derive(Clone, PartialEq, Eq)]
pub struct Kernel {
    source: FinMeasSpace,
    target: FinMeasSpace,
    rows: Vec<Vec<Rational>>,
}

impl Kernel {
    pub fn new(source: FinMeasSpace, target: FinMeasSpace, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.len() != source.n_blocks() {
            return Err(Error::Mismatch(format!(
                "kernel has {} rows, source has {} blocks",
                rows.len(),
                source.n_blocks()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != target.n_blocks() {
                return Err(Error::Mismatch(format!(
                    "row {i} has {} entries, target has {} blocks",
                    row.len(),
                    target.n_blocks()
                )));
            }
            if let Some((j, v)) = row.iter().enumerate().find(|(_, v)| v.is_negative()) {
                return Err(Error::NotStochastic(format!("entry ({i},{j}) = {v} is negative")));
            }
            let sum: Rational = row.iter().sum();
            if !sum.is_one() {
                return Err(Error::NotStochastic(format!("row {i} sums to {sum}")));
            }
        }
        Ok(Kernel { source, target, rows })
    }

    /// Skips validation. Only for building corrupted inputs in negative controls.
    pub fn new_unchecked(source: FinMeasSpace, target: FinMeasSpace, rows: Vec<Vec<Rational>>) -> Self {
        Kernel { source, target, rows }
    }

    /// Kernel between discrete spaces sized by the matrix.
    pub fn from_matrix(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        Self::new(FinMeasSpace::discrete(m), FinMeasSpace::discrete(n), rows)
    }

    pub fn source(&self) -> &FinMeasSpace {
        &self.source
    }

    pub fn target(&self) -> &FinMeasSpace {
        &self.target
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// `μ(block | x)` for a source point.
    pub fn prob(&self, x: usize, target_block: usize) -> &Rational {
        &self.rows[self.source.block_of(x)][target_block]
    }

    /// Probability of a measurable target set given a source point.
    pub fn prob_of_set(&self, x: usize, set: &[usize]) -> Result<Rational> {
        if !self.target.is_measurable_set(set) {
            return Err(Error::NotMeasurable(format!("{set:?} is not measurable in the target")));
        }
        let row = &self.rows[self.source.block_of(x)];
        let mut blocks: Vec<usize> = set.iter().map(|&y| self.target.block_of(y)).collect();
        blocks.sort_unstable();
        blocks.dedup();
        Ok(blocks.iter().map(|&b| &row[b]).sum())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Kernel) -> Result<Kernel> {
        compose(self, next)
    }

    pub fn is_deterministic(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|v| v.is_zero() || v.is_one()))
    }

    pub fn is_iso(&self) -> bool {
        self.is_deterministic()
            && self.source.n_blocks() == self.target.n_blocks()
            && (0..self.target.n_blocks()).all(|j| self.rows.iter().filter(|r| r[j].is_one()).count() == 1)
    }

    pub fn rows_as_strings(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(format_rational).collect()).collect()
    }
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Kernel{:?}", self.rows_as_strings())
    }
}

impl Serialize for Kernel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Kernel", 3)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("rows", &self.rows_as_strings())?;
        st.end()
    }
}

/// Exact rational matrix product.
pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>], inner: usize, cols: usize) -> Vec<Vec<Rational>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !row[k].is_zero())
                        .map(|k| &row[k] * &b[k][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Chapman–Kolmogorov composition `nu ∘ mu`.
pub fn compose(mu: &Kernel, nu: &Kernel) -> Result<Kernel> {
    if mu.target != nu.source {
        return Err(Error::Mismatch("codomain of the first kernel is not the domain of the second".into()));
    }
    let rows = mat_mul(&mu.rows, &nu.rows, mu.target.n_blocks(), nu.target.n_blocks());
    // Re-validated rather than assumed.
    Kernel::new(mu.source.clone(), nu.target.clone(), rows)
}

pub fn identity(x: &FinMeasSpace) -> Kernel {
    let n = x.n_blocks();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    Kernel {
        source: x.clone(),
        target: x.clone(),
        rows,
    }
}

/// The {0,1}-valued kernel `f(E | x) = χ_E(f(x))`.
pub fn from_measurable(f: &MeasMap) -> Kernel {
    let bm = f.block_map();
    let n = f.target().n_blocks();
    let rows = bm
        .iter()
        .map(|&b| (0..n).map(|j| if j == b { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    Kernel {
        source: f.source().clone(),
        target: f.target().clone(),
        rows,
    }
}

/// Inverse of [`from_measurable`] for deterministic kernels into sober spaces.
pub fn to_measurable(k: &Kernel) -> Result<MeasMap> {
    if !k.is_deterministic() {
        return Err(Error::Invalid("kernel is not {0,1}-valued".into()));
    }
    if !k.target.is_sober() {
        return Err(Error::Invalid("codomain is not sober".into()));
    }
    let pf = (0..k.source.n_points())
        .map(|x| {
            let row = &k.rows[k.source.block_of(x)];
            let b = row.iter().position(One::is_one).expect("stochastic 0/1 row has a 1");
            k.target.blocks()[b][0]
        })
        .collect();
    MeasMap::new(k.source.clone(), k.target.clone(), pf)
}

/// The sobrification unit `X ⇝ S(X)` and its inverse in Stoch.
#[derive(Clone, Debug)]
pub struct SobrificationIso {
    pub forward: Kernel,
    pub backward: Kernel,
}

pub fn sobrify_iso(x: &FinMeasSpace) -> SobrificationIso {
    let s = fin_meas::sobrify(x);
    let forward = from_measurable(&s.unit);
    let n = x.n_blocks();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let backward = Kernel {
        source: s.space,
        target: x.clone(),
        rows,
    };
    SobrificationIso { forward, backward }
}

/// `mu ⊗ nu : X × X' ⇝ Y × Y'`.
pub fn kron(mu: &Kernel, nu: &Kernel) -> Kernel {
    let source = fin_meas::product_space(&mu.source, &nu.source);
    let target = fin_meas::product_space(&mu.target, &nu.target);
    let rows = mu
        .rows
        .iter()
        .flat_map(|r1| {
            nu.rows
                .iter()
                .map(move |r2| r1.iter().flat_map(|a| r2.iter().map(move |b| a * b)).collect())
        })
        .collect();
    Kernel { source, target, rows }
}

/// `X ⇝ X × X`, block `b` to the diagonal block `(b, b)`.
pub fn copy(x: &FinMeasSpace) -> Kernel {
    let target = fin_meas::product_space(x, x);
    let n = x.n_blocks();
    let rows = (0..n)
        .map(|b| {
            (0..n * n)
                .map(|j| if j == b * n + b { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    Kernel {
        source: x.clone(),
        target,
        rows,
    }
}

/// `X ⇝ 1`.
pub fn discard(x: &FinMeasSpace) -> Kernel {
    Kernel {
        source: x.clone(),
        target: FinMeasSpace::point(),
        rows: vec![vec![Rational::one()]; x.n_blocks()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rint};

    fn k(rows: &[&[(i64, i64)]]) -> Kernel {
        Kernel::from_matrix(rows.iter().map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect()).collect()).unwrap()
    }

    /// Textbook triple-loop product, independent of `mat_mul`.
    fn oracle_product(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![rint(0); b[0].len()]; a.len()];
        for i in 0..a.len() {
            for j in 0..b[0].len() {
                for t in 0..b.len() {
                    out[i][j] = &out[i][j] + &a[i][t] * &b[t][j];
                }
            }
        }
        out
    }

    #[test]
    fn chapman_kolmogorov_example() {
        let mu = k(&[&[(1, 2), (1, 2)], &[(0, 1), (1, 1)]]);
        let nu = k(&[&[(1, 1), (0, 1)], &[(1, 3), (2, 3)]]);
        let c = compose(&mu, &nu).unwrap();
        assert_eq!(c.rows(), oracle_product(mu.rows(), nu.rows()).as_slice());
        assert_eq!(c.rows(), &[vec![rat(2, 3), rat(1, 3)], vec![rat(1, 3), rat(2, 3)]]);
        assert_eq!(compose(&mu, &identity(mu.target())).unwrap(), mu);
    }

    #[test]
    fn rejects_non_stochastic_rows() {
        assert!(matches!(
            Kernel::from_matrix(vec![vec![rat(1, 2), rat(1, 3)]]),
            Err(Error::NotStochastic(_))
        ));
        assert!(matches!(
            Kernel::from_matrix(vec![vec![rat(3, 2), rat(-1, 2)]]),
            Err(Error::NotStochastic(_))
        ));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let mu = k(&[&[(1, 1), (0, 1)]]);
        assert!(compose(&mu, &mu).is_err());
    }

    #[test]
    fn identities() {
        assert_eq!(identity(&FinMeasSpace::discrete(3)).rows().len(), 3);
        let x = FinMeasSpace::new(vec!["a".into(), "b".into(), "c".into()], vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(identity(&x).rows(), &[vec![rint(1), rint(0)], vec![rint(0), rint(1)]]);
    }

    #[test]
    fn measurable_round_trip() {
        let x = FinMeasSpace::discrete(3);
        assert_eq!(from_measurable(&x.identity()), identity(&x));
        let c = MeasMap::new(x.clone(), FinMeasSpace::point(), vec![0, 0, 0]).unwrap();
        assert_eq!(from_measurable(&c), discard(&x));
        assert_eq!(to_measurable(&from_measurable(&c)).unwrap(), c);
        let half = k(&[&[(1, 2), (1, 2)]]);
        assert!(to_measurable(&half).is_err());
        let coarse = FinMeasSpace::indiscrete(2);
        let to_coarse = MeasMap::new(x.clone(), coarse, vec![0, 1, 0]).unwrap();
        assert!(to_measurable(&from_measurable(&to_coarse)).is_err());
    }

    #[test]
    fn sobrification_becomes_iso() {
        let x = FinMeasSpace::new(vec!["0".into(), "1".into(), "2".into()], vec![vec![0, 1], vec![2]]).unwrap();
        let iso = sobrify_iso(&x);
        assert_eq!(iso.backward.source().n_points(), 2);
        assert_eq!(compose(&iso.forward, &iso.backward).unwrap(), identity(&x));
        assert_eq!(compose(&iso.backward, &iso.forward).unwrap(), identity(iso.forward.target()));
    }

    #[test]
    fn copy_discard_counit() {
        let x = FinMeasSpace::new(vec!["0".into(), "1".into(), "2".into()], vec![vec![0, 2], vec![1]]).unwrap();
        let del_left = kron(&discard(&x), &identity(&x));
        let lu = from_measurable(&fin_meas::left_unitor(&x));
        let c = copy(&x).then(&del_left).unwrap().then(&lu).unwrap();
        assert_eq!(c, identity(&x));
        assert_eq!(kron(&identity(&x), &identity(&x)), identity(&fin_meas::product_space(&x, &x)));
    }

    #[test]
    fn discard_is_natural() {
        let mu = k(&[&[(1, 4), (3, 4)], &[(1, 1), (0, 1)], &[(1, 2), (1, 2)]]);
        assert_eq!(compose(&mu, &discard(mu.target())).unwrap(), discard(mu.source()));
    }

    #[test]
    fn prob_of_set_requires_measurability() {
        let y = FinMeasSpace::new(vec!["0".into(), "1".into(), "2".into()], vec![vec![0, 1], vec![2]]).unwrap();
        let mu = Kernel::new(FinMeasSpace::point(), y, vec![vec![rat(1, 3), rat(2, 3)]]).unwrap();
        assert_eq!(mu.prob_of_set(0, &[0, 1]).unwrap(), rat(1, 3));
        assert_eq!(mu.prob_of_set(0, &[0, 1, 2]).unwrap(), rint(1));
        assert!(mu.prob_of_set(0, &[0]).is_err());
    }
}
