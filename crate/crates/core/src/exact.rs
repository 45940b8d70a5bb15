//! Exact rational and rational-complex arithmetic.
//!
//! Everything algebraic (Boolean algebras, kernels, commutative algebras,
//! Koopman operators, exact POVMs) is computed here without tolerances.
//! Rationals serialize as `"p/q"` strings (integers as `"p"`).

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type CRational = Complex<Rational>;

/// Double-precision complex matrix used by the spectral layer.
pub type CMat = DMatrix<Complex64>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn crat(re: Rational, im: Rational) -> CRational {
    Complex::new(re, im)
}

pub fn creal(re: Rational) -> CRational {
    Complex::new(re, Rational::zero())
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"` or `"1e-3"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Ok(r) = Rational::from_str(t) {
        if r.denom().is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{t}`")));
        }
        return Ok(r);
    }
    parse_decimal(t).ok_or_else(|| Error::Parse(format!("not a rational: `{t}`")))
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn c_to_f64(z: &CRational) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

/// Exact rational value of a finite double.
pub fn from_f64_exact(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Squared modulus `re² + im²`, exact.
pub fn norm_sqr(z: &CRational) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

/// Brackets `sqrt(s)` between two doubles whose squares provably enclose `s`.
pub fn sqrt_bracket(s: &Rational) -> (f64, f64) {
    assert!(!s.is_negative(), "sqrt of negative rational");
    let approx = to_f64(s).sqrt();
    let mut lo = approx;
    let mut hi = approx;
    let sq = |x: f64| {
        let r = Rational::from_float(x).expect("finite");
        &r * &r
    };
    while lo > 0.0 && sq(lo) > *s {
        lo = next_down(lo);
    }
    while sq(hi) < *s {
        hi = next_up(hi);
    }
    (lo, hi)
}

fn next_up(x: f64) -> f64 {
    if x == 0.0 {
        return f64::from_bits(1);
    }
    if x > 0.0 {
        f64::from_bits(x.to_bits() + 1)
    } else {
        f64::from_bits(x.to_bits() - 1)
    }
}

fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

/// Dense matrix over the rational complex numbers.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![CRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = CRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<CRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Mismatch("ragged matrix rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(diag: &[CRational]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = d.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<CRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Mismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &QMatrix, f: impl Fn(&CRational, &CRational) -> CRational) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Mismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &CRational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn adjoint(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn kron(&self, other: &QMatrix) -> QMatrix {
        let (r2, c2) = (other.rows, other.cols);
        QMatrix::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn to_float(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |i, j| c_to_f64(self.get(i, j)))
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|z| {
                        if z.im.is_zero() {
                            z.re.to_string()
                        } else {
                            format!("{}+{}i", z.re, z.im)
                        }
                    })
                    .collect()
            })
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Frobenius norm of a float matrix.
pub fn fro(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), rint(-3));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5e1").unwrap(), rint(-15));
        assert_eq!(parse_rational("2e-2").unwrap(), rat(1, 50));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn format_is_reduced() {
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&rint(0)), "0");
        assert_eq!(format_rational(&rat(-6, 3)), "-2");
    }

    #[test]
    fn sqrt_bracket_encloses() {
        for s in [rat(2, 1), rat(1, 3), rint(0), rint(16), rat(10_000_001, 7)] {
            let (lo, hi) = sqrt_bracket(&s);
            let l = Rational::from_float(lo).unwrap();
            let h = Rational::from_float(hi).unwrap();
            assert!(&l * &l <= s && s <= &h * &h);
            assert!(hi - lo <= 4.0 * f64::EPSILON * hi.max(1.0));
        }
    }

    #[test]
    fn matrix_product_and_kron() {
        let a = QMatrix::from_rows(vec![
            vec![creal(rat(1, 2)), creal(rat(1, 2))],
            vec![creal(rint(0)), creal(rint(1))],
        ])
        .unwrap();
        let i2 = QMatrix::identity(2);
        assert_eq!(a.mul(&i2).unwrap(), a);
        assert_eq!(i2.kron(&i2), QMatrix::identity(4));
        let k = a.kron(&i2);
        assert_eq!(k.get(0, 2), &creal(rat(1, 2)));
        assert!(a.mul(&QMatrix::zeros(3, 1)).is_err());
    }
}
