//! Evaluation of abstract `L∞(B)` elements on regions of the complex plane.
//!
//! An element `f` of `L∞(B)` assigns a complex value to each atom. The
//! σ-homomorphism `Borel(ℂ) -> B` it induces sends a region `U` to the join
//! of the atoms whose value lies in `U`. Regions are restricted to finite
//! unions of closed rational rectangles and finite point sets, which is
//! closed under union and intersection.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{norm_sqr, sqrt_bracket, CRational, Rational};
use crate::fin_bool::{BoolElem, FinBoolAlg};

/// Closed rectangle `[re_lo, re_hi] × [im_lo, im_hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub re: (Rational, Rational),
    pub im: (Rational, Rational),
}

impl Rect {
    pub fn new(re: (Rational, Rational), im: (Rational, Rational)) -> Result<Self> {
        if re.0 > re.1 || im.0 > im.1 {
            return Err(Error::Invalid("rectangle with lower bound above upper bound".into()));
        }
        Ok(Rect { re, im })
    }

    /// `[lo, hi] × {0}`.
    pub fn real_interval(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new((lo, hi), (Rational::zero(), Rational::zero()))
    }

    pub fn contains(&self, z: &CRational) -> bool {
        self.re.0 <= z.re && z.re <= self.re.1 && self.im.0 <= z.im && z.im <= self.im.1
    }

    fn intersect(&self, other: &Rect) -> Option<Rect> {
        let re = (self.re.0.clone().max(other.re.0.clone()), self.re.1.clone().min(other.re.1.clone()));
        let im = (self.im.0.clone().max(other.im.0.clone()), self.im.1.clone().min(other.im.1.clone()));
        Rect::new(re, im).ok()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Region {
    pub rects: Vec<Rect>,
    pub points: Vec<CRational>,
}

impl Region {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_rects(rects: Vec<Rect>) -> Self {
        Region { rects, points: vec![] }
    }

    pub fn from_points(points: Vec<CRational>) -> Self {
        Region { rects: vec![], points }
    }

    pub fn contains(&self, z: &CRational) -> bool {
        self.points.contains(z) || self.rects.iter().any(|r| r.contains(z))
    }

    pub fn union(&self, other: &Region) -> Region {
        Region {
            rects: self.rects.iter().chain(&other.rects).cloned().collect(),
            points: self.points.iter().chain(&other.points).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &Region) -> Region {
        let rects = self
            .rects
            .iter()
            .flat_map(|a| other.rects.iter().filter_map(move |b| a.intersect(b)))
            .collect();
        let points = self
            .points
            .iter()
            .filter(|z| other.contains(z))
            .chain(other.points.iter().filter(|z| self.contains(z)))
            .cloned()
            .collect();
        Region { rects, points }
    }
}

/// `{ atoms a : f(a) ∈ U }`.
pub fn linf_abs_eval(b: &FinBoolAlg, f: &[CRational], region: &Region) -> Result<BoolElem> {
    if f.len() != b.size() {
        return Err(Error::Mismatch(format!("{} values for {} atoms", f.len(), b.size())));
    }
    b.element(f.iter().enumerate().filter(|(_, z)| region.contains(z)).map(|(i, _)| i))
}

/// `max_a |f(a)|`: exact squared modulus with a bracketed square root.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormBound {
    #[serde(serialize_with = "crate::schema::ser_rational")]
    pub squared: Rational,
    pub lower: f64,
    pub upper: f64,
}

pub fn linf_abs_norm(f: &[CRational]) -> NormBound {
    let squared = f.iter().map(norm_sqr).max().unwrap_or_else(Rational::zero);
    let (lower, upper) = sqrt_bracket(&squared);
    NormBound { squared, lower, upper }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{crat, creal, rat, rint};

    #[test]
    fn characteristic_function_behaviour() {
        let b = FinBoolAlg::with_atoms(2);
        let f = vec![creal(rint(0)), creal(rint(1))];
        let e = linf_abs_eval(&b, &f, &Region::from_points(vec![creal(rint(1))])).unwrap();
        assert_eq!(e.atoms(), vec![1]);
    }

    #[test]
    fn real_valued_function_on_covering_interval_is_top() {
        let b = FinBoolAlg::with_atoms(3);
        let f = vec![creal(rat(-1, 2)), creal(rint(3)), creal(rint(0))];
        let u = Region::from_rects(vec![Rect::real_interval(rint(-1), rint(3)).unwrap()]);
        assert!(linf_abs_eval(&b, &f, &u).unwrap().is_top());
    }

    #[test]
    fn malformed_regions() {
        assert!(Rect::new((rint(1), rint(0)), (rint(0), rint(0))).is_err());
        let b = FinBoolAlg::with_atoms(2);
        assert!(linf_abs_eval(&b, &[creal(rint(0))], &Region::empty()).is_err());
    }

    #[test]
    fn norm_is_exact_and_bracketed() {
        let f = vec![crat(rint(3), rint(4)), creal(rint(-2)), crat(rat(1, 2), rat(1, 2))];
        let n = linf_abs_norm(&f);
        assert_eq!(n.squared, rint(25));
        assert!(n.lower <= 5.0 && 5.0 <= n.upper);
        let n = linf_abs_norm(&[creal(rint(1)), crat(rint(1), rint(1))]);
        assert_eq!(n.squared, rint(2));
        assert!(n.lower <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= n.upper);
        assert_eq!(linf_abs_norm(&[]).squared, rint(0));
    }
}
