//! JSON record format shared by the CLI, the FFI layer and certificates.
//!
//! A document is either a single bare record or a bundle:
//!
//! ```json
//! { "schema_version": "1",
//!   "algebras": { "A": { "atoms": ["a", "b"] } },
//!   "homs": { "f": { "source": "A", "target": "A", "point_map": [1, 0] } } }
//! ```
//!
//! Wherever a record refers to another one, either an id from the matching
//! bundle table or an inline record is accepted. Rationals are `"p/q"`
//! strings; integers, decimal strings and JSON numbers are also read exactly.
//! Complex entries are `[re, im]` or a bare real.

use std::path::Path;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, CMat, CRational, QMatrix, Rational};
use crate::fin_bool::{BoolElem, BoolHom, FinBoolAlg};
use crate::fin_cstar::{ExactPovm, FnSpec, Povm, Tolerance};
use crate::fin_meas::{FinMeasSpace, MeasMap};
use crate::fin_stoch::Kernel;

pub const SCHEMA_VERSION: &str = "1";

/// Record kinds and their bundle tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Element,
    Hom,
    Space,
    Map,
    Kernel,
    Matrix,
    Povm,
    FnSpec,
}

impl Kind {
    pub fn table(self) -> &'static str {
        match self {
            Kind::Algebra => "algebras",
            Kind::Element => "elements",
            Kind::Hom => "homs",
            Kind::Space => "spaces",
            Kind::Map => "maps",
            Kind::Kernel => "kernels",
            Kind::Matrix => "matrices",
            Kind::Povm => "povms",
            Kind::FnSpec => "fnspecs",
        }
    }

    const ALL: [Kind; 9] = [
        Kind::Algebra,
        Kind::Element,
        Kind::Hom,
        Kind::Space,
        Kind::Map,
        Kind::Kernel,
        Kind::Matrix,
        Kind::Povm,
        Kind::FnSpec,
    ];

    /// Guesses the kind of a bare record from its keys.
    pub fn of_record(v: &Value) -> Option<Kind> {
        match v {
            Value::Array(_) => Some(Kind::Matrix),
            Value::Object(o) => {
                let has = |k: &str| o.contains_key(k);
                Some(if has("point_map") {
                    Kind::Hom
                } else if has("point_fn") {
                    Kind::Map
                } else if has("rows") {
                    Kind::Kernel
                } else if has("effects") {
                    Kind::Povm
                } else if has("kind") {
                    Kind::FnSpec
                } else if has("points") {
                    Kind::Space
                } else if has("algebra") && has("atoms") {
                    Kind::Element
                } else if has("atoms") {
                    Kind::Algebra
                } else if has("matrix") {
                    Kind::Matrix
                } else {
                    return None;
                })
            }
            _ => None,
        }
    }
}

fn perr(loc: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{loc}: {msg}"))
}

/// A parsed document plus the location prefix used in diagnostics.
#[derive(Clone, Debug)]
pub struct Document {
    name: String,
    root: Value,
}

impl Document {
    pub fn from_value(name: impl Into<String>, root: Value) -> Self {
        Document { name: name.into(), root }
    }

    pub fn parse_str(name: impl Into<String>, text: &str) -> Result<Self> {
        let name = name.into();
        let root = serde_json::from_str(text).map_err(|e| perr(&name, e))?;
        Ok(Document { name, root })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| perr(&name, e))?;
        Self::parse_str(name, &text)
    }

    pub fn is_bundle(&self) -> bool {
        self.root
            .as_object()
            .is_some_and(|o| Kind::ALL.iter().any(|k| o.contains_key(k.table())))
    }

    fn table(&self, kind: Kind) -> Option<&Map<String, Value>> {
        self.root.get(kind.table()).and_then(Value::as_object)
    }

    /// The record of `kind` named `id`, or the only such record when `id` is
    /// absent.
    pub fn select(&self, kind: Kind, id: Option<&str>) -> Result<(String, &Value)> {
        if !self.is_bundle() {
            if let Some(id) = id {
                return Err(perr(&self.name, format!("`#{id}` given but the file is a single record")));
            }
            return Ok((self.name.clone(), &self.root));
        }
        let table = self
            .table(kind)
            .ok_or_else(|| perr(&self.name, format!("no `{}` table", kind.table())))?;
        match id {
            Some(id) => table
                .get(id)
                .map(|v| (format!("{}#{}.{id}", self.name, kind.table()), v))
                .ok_or_else(|| perr(&self.name, format!("no {} named `{id}`", kind.table()))),
            None if table.len() == 1 => {
                let (k, v) = table.iter().next().expect("one entry");
                Ok((format!("{}#{}.{k}", self.name, kind.table()), v))
            }
            None => Err(perr(
                &self.name,
                format!("{} records in `{}`; pick one with `#id`", table.len(), kind.table()),
            )),
        }
    }

    fn resolve<'a>(&'a self, kind: Kind, v: &'a Value, loc: &str) -> Result<(String, &'a Value)> {
        match v {
            Value::String(id) => {
                let table = self
                    .table(kind)
                    .ok_or_else(|| perr(loc, format!("reference `{id}` but no `{}` table", kind.table())))?;
                table
                    .get(id)
                    .map(|r| (format!("{}#{}.{id}", self.name, kind.table()), r))
                    .ok_or_else(|| perr(loc, format!("unknown {} id `{id}`", kind.table())))
            }
            other => Ok((loc.to_string(), other)),
        }
    }

    fn field<'a>(&self, v: &'a Value, key: &str, loc: &str) -> Result<&'a Value> {
        v.get(key).ok_or_else(|| perr(loc, format!("missing field `{key}`")))
    }

    pub fn algebra(&self, v: &Value, loc: &str) -> Result<FinBoolAlg> {
        let (loc, v) = self.resolve(Kind::Algebra, v, loc)?;
        let atoms = self.field(v, "atoms", &loc)?;
        let labels = labels(atoms, &format!("{loc}.atoms"))?;
        FinBoolAlg::new(labels).map_err(|e| perr(&loc, e))
    }

    pub fn element(&self, v: &Value, loc: &str) -> Result<BoolElem> {
        let (loc, v) = self.resolve(Kind::Element, v, loc)?;
        let alg = self.algebra(self.field(v, "algebra", &loc)?, &format!("{loc}.algebra"))?;
        let idx = indices(self.field(v, "atoms", &loc)?, &format!("{loc}.atoms"))?;
        alg.element(idx).map_err(|e| perr(&loc, e))
    }

    pub fn hom(&self, v: &Value, loc: &str) -> Result<BoolHom> {
        let (loc, v) = self.resolve(Kind::Hom, v, loc)?;
        let s = self.algebra(self.field(v, "source", &loc)?, &format!("{loc}.source"))?;
        let t = self.algebra(self.field(v, "target", &loc)?, &format!("{loc}.target"))?;
        let pm = indices(self.field(v, "point_map", &loc)?, &format!("{loc}.point_map"))?;
        BoolHom::new(s, t, pm).map_err(|e| perr(&loc, e))
    }

    pub fn space(&self, v: &Value, loc: &str) -> Result<FinMeasSpace> {
        let (loc, v) = self.resolve(Kind::Space, v, loc)?;
        let pts = labels(self.field(v, "points", &loc)?, &format!("{loc}.points"))?;
        let blocks = match v.get("blocks") {
            None => (0..pts.len()).map(|i| vec![i]).collect(),
            Some(b) => {
                let arr = b.as_array().ok_or_else(|| perr(&format!("{loc}.blocks"), "expected a list of blocks"))?;
                arr.iter()
                    .enumerate()
                    .map(|(i, blk)| indices(blk, &format!("{loc}.blocks[{i}]")))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        FinMeasSpace::new(pts, blocks).map_err(|e| perr(&loc, e))
    }

    pub fn map(&self, v: &Value, loc: &str) -> Result<MeasMap> {
        let (loc, v) = self.resolve(Kind::Map, v, loc)?;
        let s = self.space(self.field(v, "source", &loc)?, &format!("{loc}.source"))?;
        let t = self.space(self.field(v, "target", &loc)?, &format!("{loc}.target"))?;
        let f = indices(self.field(v, "point_fn", &loc)?, &format!("{loc}.point_fn"))?;
        MeasMap::new(s, t, f).map_err(|e| perr(&loc, e))
    }

    /// Kernels may omit `source`/`target`; discrete spaces are used then.
    pub fn kernel(&self, v: &Value, loc: &str) -> Result<Kernel> {
        let (loc, v) = self.resolve(Kind::Kernel, v, loc)?;
        let rows_v = self.field(v, "rows", &loc)?;
        let rows = rational_rows(rows_v, &format!("{loc}.rows"))?;
        let ncols = rows.first().map_or(0, Vec::len);
        let src = match v.get("source") {
            Some(s) => self.space(s, &format!("{loc}.source"))?,
            None => FinMeasSpace::discrete(rows.len()),
        };
        let tgt = match v.get("target") {
            Some(t) => self.space(t, &format!("{loc}.target"))?,
            None => FinMeasSpace::discrete(ncols),
        };
        Kernel::new(src, tgt, rows).map_err(|e| perr(&loc, e))
    }

    fn matrix_value<'a>(&'a self, v: &'a Value, loc: &str) -> Result<(String, &'a Value)> {
        let (loc, v) = self.resolve(Kind::Matrix, v, loc)?;
        match v.get("matrix") {
            Some(m) => Ok((format!("{loc}.matrix"), m)),
            None => Ok((loc, v)),
        }
    }

    pub fn qmatrix(&self, v: &Value, loc: &str) -> Result<QMatrix> {
        let (loc, v) = self.matrix_value(v, loc)?;
        parse_qmatrix(v, &loc)
    }

    pub fn cmatrix(&self, v: &Value, loc: &str) -> Result<CMat> {
        let (loc, v) = self.matrix_value(v, loc)?;
        parse_cmat(v, &loc)
    }

    /// Exact when every entry parses as a rational.
    pub fn povm(&self, v: &Value, loc: &str, tol: &Tolerance) -> Result<AnyPovm> {
        let (loc, v) = self.resolve(Kind::Povm, v, loc)?;
        let outcomes = self.algebra(self.field(v, "outcomes", &loc)?, &format!("{loc}.outcomes"))?;
        let eff = self
            .field(v, "effects", &loc)?
            .as_array()
            .ok_or_else(|| perr(&format!("{loc}.effects"), "expected a list of matrices"))?;
        let exact: Result<Vec<QMatrix>> = eff
            .iter()
            .enumerate()
            .map(|(i, m)| self.qmatrix(m, &format!("{loc}.effects[{i}]")))
            .collect();
        let dim = |n: Option<usize>| n.unwrap_or(0);
        match exact {
            Ok(ms) => {
                let n = dim(ms.first().map(QMatrix::nrows));
                ExactPovm::new(outcomes, n, ms).map(AnyPovm::Exact).map_err(|e| perr(&loc, e))
            }
            Err(_) => {
                let ms = eff
                    .iter()
                    .enumerate()
                    .map(|(i, m)| self.cmatrix(m, &format!("{loc}.effects[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let n = dim(ms.first().map(|m| m.nrows()));
                Povm::new(outcomes, n, ms, tol).map(AnyPovm::Float).map_err(|e| perr(&loc, e))
            }
        }
    }

    pub fn fnspec(&self, v: &Value, loc: &str) -> Result<FnSpec> {
        let (loc, v) = self.resolve(Kind::FnSpec, v, loc)?;
        FnSpec::deserialize(v).map_err(|e| perr(&loc, e))
    }

    pub fn record(&self, kind: Kind, id: Option<&str>) -> Result<(String, &Value)> {
        self.select(kind, id)
    }
}

#[derive(Clone, Debug)]
pub enum AnyPovm {
    Exact(ExactPovm),
    Float(Povm),
}

impl AnyPovm {
    pub fn to_float(&self) -> Povm {
        match self {
            AnyPovm::Exact(p) => p.to_float(),
            AnyPovm::Float(p) => p.clone(),
        }
    }
}

fn labels(v: &Value, loc: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| perr(loc, "expected a list of labels"))?
        .iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(perr(&format!("{loc}[{i}]"), "label must be a string or number")),
        })
        .collect()
}

fn indices(v: &Value, loc: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| perr(loc, "expected a list of indices"))?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| perr(&format!("{loc}[{i}]"), "expected a non-negative integer"))
        })
        .collect()
}

/// A rational from a `"p/q"` or decimal string or a JSON number, read exactly
/// from its decimal text.
pub fn rational_value(v: &Value, loc: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| perr(loc, e)),
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| perr(loc, e)),
        _ => Err(perr(loc, "expected a rational")),
    }
}

fn rational_rows(v: &Value, loc: &str) -> Result<Vec<Vec<Rational>>> {
    v.as_array()
        .ok_or_else(|| perr(loc, "expected a list of rows"))?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| perr(&format!("{loc}[{i}]"), "expected a row"))?
                .iter()
                .enumerate()
                .map(|(j, x)| rational_value(x, &format!("{loc}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

pub fn crational_value(v: &Value, loc: &str) -> Result<CRational> {
    match v {
        Value::Array(a) if a.len() == 2 => Ok(CRational::new(
            rational_value(&a[0], &format!("{loc}[0]"))?,
            rational_value(&a[1], &format!("{loc}[1]"))?,
        )),
        Value::Array(_) => Err(perr(loc, "complex entries are [re, im]")),
        other => Ok(CRational::new(rational_value(other, loc)?, Rational::zero())),
    }
}

fn f64_value(v: &Value, loc: &str) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| perr(loc, "number out of range")),
        Value::String(s) => {
            let t = s.trim();
            t.parse::<f64>()
                .or_else(|_| parse_rational(t).map(|r| crate::exact::to_f64(&r)))
                .map_err(|_| perr(loc, format!("not a number: `{t}`")))
        }
        _ => Err(perr(loc, "expected a number")),
    }
}

pub fn complex_value(v: &Value, loc: &str) -> Result<Complex64> {
    match v {
        Value::Array(a) if a.len() == 2 => Ok(Complex64::new(
            f64_value(&a[0], &format!("{loc}[0]"))?,
            f64_value(&a[1], &format!("{loc}[1]"))?,
        )),
        Value::Array(_) => Err(perr(loc, "complex entries are [re, im]")),
        other => Ok(Complex64::new(f64_value(other, loc)?, 0.0)),
    }
}

fn square_rows(v: &Value, loc: &str) -> Result<Vec<Vec<Value>>> {
    let rows = v.as_array().ok_or_else(|| perr(loc, "expected a row-major list of rows"))?;
    let out: Vec<Vec<Value>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.as_array()
                .cloned()
                .ok_or_else(|| perr(&format!("{loc}[{i}]"), "expected a row"))
        })
        .collect::<Result<_>>()?;
    let n = out.len();
    if let Some(i) = out.iter().position(|r| r.len() != n) {
        return Err(perr(&format!("{loc}[{i}]"), format!("row has {} entries, expected {n}", out[i].len())));
    }
    Ok(out)
}

pub fn parse_qmatrix(v: &Value, loc: &str) -> Result<QMatrix> {
    let rows = square_rows(v, loc)?;
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, x)| crational_value(x, &format!("{loc}[{i}][{j}]")))
                .collect()
        })
        .collect::<Result<Vec<Vec<_>>>>()?;
    QMatrix::from_rows(parsed).map_err(|e| perr(loc, e))
}

pub fn parse_cmat(v: &Value, loc: &str) -> Result<CMat> {
    let rows = square_rows(v, loc)?;
    let n = rows.len();
    let mut m = CMat::zeros(n, n);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            let z = complex_value(x, &format!("{loc}[{i}][{j}]"))?;
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(perr(&format!("{loc}[{i}][{j}]"), "entry is not finite"));
            }
            m[(i, j)] = z;
        }
    }
    Ok(m)
}

/// Parses the CLI shorthand `abs`, `conj`, `id`, `indicator:lo,hi` or
/// `poly:c0,c1,...` (lowest degree first).
pub fn parse_fnspec_str(s: &str) -> Result<FnSpec> {
    let (head, args) = match s.split_once(':') {
        Some((h, a)) => (h.trim(), Some(a)),
        None => (s.trim(), None),
    };
    let list = |a: Option<&str>| -> Vec<String> {
        a.map(|a| a.split(',').map(|x| x.trim().to_string()).collect()).unwrap_or_default()
    };
    match (head, args) {
        ("abs", None) => Ok(FnSpec::Abs),
        ("conj", None) => Ok(FnSpec::Conj),
        ("id", None) => Ok(FnSpec::identity()),
        ("indicator", Some(_)) => {
            let parts = list(args);
            if parts.len() != 2 {
                return Err(Error::Parse(format!("`{s}`: indicator takes lo,hi")));
            }
            let bound = |t: &str| -> Result<f64> {
                ext_f64::parse(t).ok_or_else(|| Error::Parse(format!("`{s}`: bad bound `{t}`")))
            };
            let (lo, hi) = (bound(&parts[0])?, bound(&parts[1])?);
            if lo > hi {
                return Err(Error::Parse(format!("`{s}`: lower bound above upper bound")));
            }
            Ok(FnSpec::Indicator { lo, hi })
        }
        ("poly", Some(_)) => {
            let coeffs = list(args)
                .iter()
                .map(|c| parse_rational(c).map(|r| CRational::new(r, Rational::zero())))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Parse(format!("`{s}`: {e}")))?;
            Ok(FnSpec::Poly { coeffs })
        }
        _ => Err(Error::Parse(format!(
            "`{s}`: expected abs, conj, id, indicator:lo,hi or poly:c0,c1,..."
        ))),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn crational_to_json(z: &CRational) -> Value {
    json!([format_rational(&z.re), format_rational(&z.im)])
}

pub fn qmatrix_to_json(m: &QMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array(m.row(i).iter().map(crational_to_json).collect()))
            .collect(),
    )
}

pub fn cmat_to_json(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
            .collect(),
    )
}

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// `Vec<CRational>` as a list of `[re, im]` string pairs.
pub mod crational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[CRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let vals: Vec<Value> = v.iter().map(crational_to_json).collect();
        vals.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<CRational>, D::Error> {
        let raw = Vec::<Value>::deserialize(d)?;
        raw.iter()
            .enumerate()
            .map(|(i, v)| crational_value(v, &format!("[{i}]")))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

/// `f64` allowing `"inf"` and `"-inf"`, which JSON numbers cannot hold.
pub mod ext_f64 {
    use super::*;

    pub fn parse(t: &str) -> Option<f64> {
        match t.trim() {
            "inf" | "+inf" | "infinity" => Some(f64::INFINITY),
            "-inf" | "-infinity" => Some(f64::NEG_INFINITY),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .or_else(|| parse_rational(other).ok().map(|r| crate::exact::to_f64(&r))),
        }
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        match Value::deserialize(d)? {
            Value::Number(n) => n.as_f64().ok_or_else(|| serde::de::Error::custom("number out of range")),
            Value::String(s) => parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad bound `{s}`"))),
            _ => Err(serde::de::Error::custom("expected a number or \"inf\"")),
        }
    }
}

/// Report envelope written by every CLI subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub schema_version: &'static str,
    pub command: String,
    pub tolerance: Tolerance,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: impl Into<String>, tolerance: Tolerance, result: T) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            tolerance,
            result,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rint};

    #[test]
    fn bundle_references_and_inline_records() {
        let doc = Document::parse_str(
            "t.json",
            r#"{
              "spaces": { "X": { "points": ["a", "b"], "blocks": [[0], [1]] } },
              "kernels": {
                "k": { "source": "X", "target": { "points": ["u"] }, "rows": [["1"], [1]] }
              }
            }"#,
        )
        .unwrap();
        let (loc, v) = doc.select(Kind::Kernel, Some("k")).unwrap();
        let k = doc.kernel(v, &loc).unwrap();
        assert_eq!(k.source().n_points(), 2);
        assert_eq!(k.target().n_points(), 1);
        assert!(doc.select(Kind::Kernel, Some("nope")).is_err());
    }

    #[test]
    fn bare_kernel_defaults_to_discrete() {
        let doc = Document::parse_str("k.json", r#"{ "rows": [["1/2", "0.5"], ["0", "1"]] }"#).unwrap();
        let (loc, v) = doc.select(Kind::Kernel, None).unwrap();
        let k = doc.kernel(v, &loc).unwrap();
        assert_eq!(k.rows()[0], vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(Kind::of_record(v), Some(Kind::Kernel));
    }

    #[test]
    fn diagnostics_name_the_location() {
        let doc = Document::parse_str("k.json", r#"{ "rows": [["1/2", "x"]] }"#).unwrap();
        let (loc, v) = doc.select(Kind::Kernel, None).unwrap();
        let e = doc.kernel(v, &loc).unwrap_err().to_string();
        assert!(e.contains("k.json.rows[0][1]"), "{e}");
        let doc = Document::parse_str("m.json", r#"[[1, 2], [3]]"#).unwrap();
        let (loc, v) = doc.select(Kind::Matrix, None).unwrap();
        assert!(doc.cmatrix(v, &loc).unwrap_err().to_string().contains("m.json[1]"));
    }

    #[test]
    fn matrices_exact_and_float() {
        let v: Value = serde_json::from_str(r#"[[["1/2", "0"], 1], [0, ["0", "-1/3"]]]"#).unwrap();
        let q = parse_qmatrix(&v, "m").unwrap();
        assert_eq!(q.get(1, 1), &CRational::new(rint(0), rat(-1, 3)));
        assert_eq!(parse_qmatrix(&qmatrix_to_json(&q), "m").unwrap(), q);
        let c = parse_cmat(&v, "m").unwrap();
        assert!((c[(0, 0)].re - 0.5).abs() < 1e-15);
        assert_eq!(parse_cmat(&cmat_to_json(&c), "m").unwrap(), c);
    }

    #[test]
    fn exact_povm_from_json() {
        let doc = Document::parse_str(
            "p.json",
            r#"{ "outcomes": { "atoms": ["0", "1"] },
                 "effects": [ [["1/2", 0], [0, "1/2"]], [["1/2", 0], [0, "1/2"]] ] }"#,
        )
        .unwrap();
        let (loc, v) = doc.select(Kind::Povm, None).unwrap();
        assert!(matches!(doc.povm(v, &loc, &Tolerance::default()).unwrap(), AnyPovm::Exact(_)));
    }

    #[test]
    fn fnspec_shorthand_and_json() {
        assert_eq!(
            parse_fnspec_str("indicator:0.5,1.5").unwrap(),
            FnSpec::Indicator { lo: 0.5, hi: 1.5 }
        );
        assert_eq!(
            parse_fnspec_str("indicator:0.5,inf").unwrap(),
            FnSpec::Indicator { lo: 0.5, hi: f64::INFINITY }
        );
        assert_eq!(parse_fnspec_str("abs").unwrap(), FnSpec::Abs);
        assert!(parse_fnspec_str("indicator:2,1").is_err());
        assert!(parse_fnspec_str("sin").is_err());
        let p = parse_fnspec_str("poly:1,0,1/2").unwrap();
        let js = serde_json::to_value(&p).unwrap();
        assert_eq!(js["kind"], "poly");
        assert_eq!(serde_json::from_value::<FnSpec>(js).unwrap(), p);
        let ind = FnSpec::Indicator { lo: 0.0, hi: f64::INFINITY };
        let js = serde_json::to_string(&ind).unwrap();
        assert!(js.contains("\"inf\""));
        assert_eq!(serde_json::from_str::<FnSpec>(&js).unwrap(), ind);
    }
}
