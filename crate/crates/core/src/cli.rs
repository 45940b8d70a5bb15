//! Command-line front end. Inputs are JSON files addressed as `path` or
//! `path#id`; every report is a JSON envelope carrying the schema version
//! and the tolerance in force.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::fin_bool::{self, FinBoolAlg};
use crate::fin_cstar::spectral::is_normal;
use crate::fin_cstar::{self, linf, linf_kernel, spec_sigma, FnSpec, Tolerance};
use crate::fin_meas;
use crate::fin_stoch;
use crate::law_harness::{self, suites, RunContext, DEFAULT_BUDGET, DEFAULT_CASES, DEFAULT_SEED};
use crate::schema::{self, cmat_to_json, crational_to_json, qmatrix_to_json, AnyPovm, Document, Kind, Report};

#[derive(Debug, Parser)]
#[command(name = "duality-kit", version, about = "Finite Stone, Loomis-Sikorski and Gelfand dualities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for generated law-check instances.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Cases per law suite.
    #[arg(long, global = true, default_value_t = DEFAULT_CASES)]
    pub cases: usize,
    /// Residual tolerance for floating-point results.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Largest instance count enumerated exhaustively [default: 100000, or DUALITY_KIT_BUDGET].
    #[arg(long, global = true)]
    pub budget: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stone space of an algebra, or clopen algebra of a space, with the round-trip isomorphism.
    Stone { input: String },
    /// Sobrification of a measurable space and its unit.
    Sobrify { input: String },
    /// Product of two measurable spaces with its projections.
    Product { x: String, y: String },
    /// Composite kernel: first K1, then K2.
    Compose { k1: String, k2: String },
    /// Koopman operator of a kernel.
    Koopman { kernel: String },
    /// Spectral decomposition of a normal matrix, or σ-spectrum of L∞ of a space.
    Spec { input: String },
    /// Apply a function to a normal matrix.
    Funcalc {
        input: String,
        /// `abs`, `conj`, `id`, `indicator:lo,hi`, `poly:c0,c1,...`, or a JSON fnspec file.
        #[arg(long = "fn")]
        func: String,
    },
    /// Integrate a function on the outcome atoms against a POVM.
    Integrate {
        povm: String,
        /// Comma-separated values, one per atom; rationals as `p/q`.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
    },
    /// Tensor product of two algebras (with inclusions) or Kronecker product of two matrices.
    Tensor { a: String, b: String },
    /// Run law suites and write a certificate bundle.
    Verify {
        #[arg(long, value_parser = suites::GROUPS)]
        suite: String,
    },
}

/// A failed invocation, by exit status.
#[derive(Debug)]
pub enum Failure {
    /// Malformed or incompatible inputs: status 2.
    Input(String),
    /// Numerical or I/O failure: status 3.
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Spectral(_) | Error::CapExceeded { .. } => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// A finished invocation: the report, whether every law held, and
/// human-readable summary lines.
pub struct Output {
    pub report: Value,
    pub passed: bool,
    pub notes: Vec<String>,
}

type Run = std::result::Result<Output, Failure>;

fn report<T: Serialize>(command: &str, tol: Tolerance, result: T, passed: bool) -> Run {
    let report = serde_json::to_value(Report::new(command, tol, result)).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Output { report, passed, notes: Vec::new() })
}

/// Splits `path#id`.
pub fn split_ref(spec: &str) -> (&str, Option<&str>) {
    match spec.rsplit_once('#') {
        Some((p, id)) if !id.is_empty() && !id.contains('/') => (p, Some(id)),
        _ => (spec, None),
    }
}

struct Input {
    doc: Document,
    id: Option<String>,
}

impl Input {
    fn open(spec: &str) -> std::result::Result<Self, Failure> {
        let (path, id) = split_ref(spec);
        let doc = Document::load(Path::new(path)).map_err(|e| Failure::Input(e.to_string()))?;
        Ok(Input { doc, id: id.map(str::to_string) })
    }

    fn get<T>(&self, kind: Kind, parse: impl Fn(&Document, &Value, &str) -> crate::Result<T>) -> std::result::Result<T, Failure> {
        let (loc, v) = self.doc.select(kind, self.id.as_deref()).map_err(|e| Failure::Input(e.to_string()))?;
        parse(&self.doc, v, &loc).map_err(|e| Failure::Input(e.to_string()))
    }

    /// The first of `kinds` the record can be read as.
    fn kind(&self, kinds: &[Kind]) -> std::result::Result<Kind, Failure> {
        let found = if self.doc.is_bundle() {
            kinds.iter().copied().find(|&k| self.doc.select(k, self.id.as_deref()).is_ok())
        } else {
            self.doc
                .select(kinds[0], None)
                .ok()
                .and_then(|(_, v)| Kind::of_record(v))
                .filter(|k| kinds.contains(k))
        };
        found.ok_or_else(|| {
            let names: Vec<&str> = kinds.iter().map(|k| k.table()).collect();
            Failure::Input(format!("input is none of: {}", names.join(", ")))
        })
    }
}

fn budget(cli: &Cli) -> std::result::Result<u128, Failure> {
    match cli.budget {
        Some(b) if b.is_finite() && b >= 1.0 => Ok(b as u128),
        Some(b) => Err(Failure::Input(format!("--budget must be a positive number, got {b}"))),
        None => law_harness::budget_from_env(DEFAULT_BUDGET).map_err(Failure::from),
    }
}

fn tolerance(cli: &Cli) -> std::result::Result<Tolerance, Failure> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(Failure::Input(format!("--tol must be positive, got {}", cli.tol)));
    }
    Ok(Tolerance::with_spectral(cli.tol))
}

fn require_normal(a: &crate::exact::CMat, tol: &Tolerance) -> std::result::Result<(), Failure> {
    if !a.is_square() || !is_normal(a, tol) {
        return Err(Failure::Input(format!("{}x{} input matrix is not normal", a.nrows(), a.ncols())));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Run {
    let tol = tolerance(cli)?;
    match &cli.command {
        Command::Stone { input } => {
            let inp = Input::open(input)?;
            match inp.kind(&[Kind::Algebra, Kind::Space])? {
                Kind::Algebra => {
                    let a = inp.get(Kind::Algebra, Document::algebra)?;
                    let s = fin_bool::stone(&a);
                    let iso = fin_bool::clopen_stone_iso(&a);
                    let back = fin_bool::clopen(&s)?;
                    let ok = iso.is_iso() && back.algebra.size() == a.size();
                    report("stone", tol, json!({ "algebra": a, "stone": s, "clopen": back.algebra, "iso": iso, "iso_ok": ok }), ok)
                }
                _ => {
                    let x = inp.get(Kind::Space, Document::space)?;
                    let sx = fin_meas::sigma(&x);
                    let s = fin_meas::stone_sigma(&sx);
                    let unit = fin_meas::sobrify(&x).unit;
                    let ok = unit.is_iso() == x.is_sober();
                    report("stone", tol, json!({ "space": x, "sigma": sx, "stone": s, "unit": unit, "unit_is_iso": unit.is_iso() }), ok)
                }
            }
        }
        Command::Sobrify { input } => {
            let x = Input::open(input)?.get(Kind::Space, Document::space)?;
            let s = fin_meas::sobrify(&x);
            let measures = fin_meas::zero_one_measures(&x).len();
            let ok = s.space.is_sober();
            report(
                "sobrify",
                tol,
                json!({ "space": x, "sober": x.is_sober(), "sobrification": s.space, "unit": s.unit, "zero_one_measures": measures }),
                ok,
            )
        }
        Command::Product { x, y } => {
            let x = Input::open(x)?.get(Kind::Space, Document::space)?;
            let y = Input::open(y)?.get(Kind::Space, Document::space)?;
            let p = fin_meas::product(&x, &y);
            report("product", tol, json!({ "space": p.space, "fst": p.fst, "snd": p.snd }), true)
        }
        Command::Compose { k1, k2 } => {
            let mu = Input::open(k1)?.get(Kind::Kernel, Document::kernel)?;
            let nu = Input::open(k2)?.get(Kind::Kernel, Document::kernel)?;
            let k = fin_stoch::compose(&mu, &nu)?;
            report("compose", tol, json!({ "kernel": k }), true)
        }
        Command::Koopman { kernel } => {
            let k = Input::open(kernel)?.get(Kind::Kernel, Document::kernel)?;
            let op = linf_kernel(&k);
            let ok = op.is_unital() && op.is_positive();
            report("koopman", tol, json!({ "kernel": k, "koopman": op, "unital": op.is_unital(), "positive": op.is_positive() }), ok)
        }
        Command::Spec { input } => {
            let inp = Input::open(input)?;
            match inp.kind(&[Kind::Matrix, Kind::Space])? {
                Kind::Space => {
                    let x = inp.get(Kind::Space, Document::space)?;
                    let a = linf(&x);
                    let sp = spec_sigma(&a);
                    let unit = fin_cstar::commutative::gelfand_unit(&x);
                    report("spec", tol, json!({ "space": x, "linf": a, "spectrum": sp, "unit": unit }), true)
                }
                _ => {
                    let a = inp.get(Kind::Matrix, Document::cmatrix)?;
                    require_normal(&a, &tol)?;
                    let d = fin_cstar::spectral_pvm(&a, &tol)?;
                    let ok = d.residual <= tol.spectral_at(crate::exact::fro(&a));
                    let eig: Vec<Value> = d.eigenvalues.iter().map(|z| json!([z.re, z.im])).collect();
                    let projections: Vec<Value> = d.projections.iter().map(cmat_to_json).collect();
                    report(
                        "spec",
                        tol,
                        json!({ "eigenvalues": eig, "projections": projections, "residual": d.residual, "cluster_radius": d.cluster_radius }),
                        ok,
                    )
                }
            }
        }
        Command::Funcalc { input, func } => {
            let a = Input::open(input)?.get(Kind::Matrix, Document::cmatrix)?;
            let f = parse_fn(func)?;
            require_normal(&a, &tol)?;
            let r = fin_cstar::funcalc(&a, &f, &tol)?;
            report("funcalc", tol, json!({ "fn": f, "result": cmat_to_json(&r) }), true)
        }
        Command::Integrate { povm, values } => {
            let p = Input::open(povm)?.get(Kind::Povm, |d, v, loc| d.povm(v, loc, &tol))?;
            let f = values
                .iter()
                .enumerate()
                .map(|(i, s)| schema::crational_value(&Value::String(s.trim().to_string()), &format!("--values[{i}]")))
                .collect::<crate::Result<Vec<_>>>()
                .map_err(|e| Failure::Input(e.to_string()))?;
            let fj: Vec<Value> = f.iter().map(crational_to_json).collect();
            match p {
                AnyPovm::Exact(p) => {
                    let r = p.integrate(&f)?;
                    report("integrate", tol, json!({ "values": fj, "exact": true, "result": qmatrix_to_json(&r) }), true)
                }
                AnyPovm::Float(p) => {
                    let ff: Vec<_> = f.iter().map(crate::exact::c_to_f64).collect();
                    let r = p.integrate(&ff)?;
                    report("integrate", tol, json!({ "values": fj, "exact": false, "result": cmat_to_json(&r) }), true)
                }
            }
        }
        Command::Tensor { a, b } => {
            let (ia, ib) = (Input::open(a)?, Input::open(b)?);
            match ia.kind(&[Kind::Algebra, Kind::Matrix])? {
                Kind::Algebra => {
                    let x: FinBoolAlg = ia.get(Kind::Algebra, Document::algebra)?;
                    let y: FinBoolAlg = ib.get(Kind::Algebra, Document::algebra)?;
                    let t = fin_bool::tensor(&x, &y);
                    report("tensor", tol, json!({ "algebra": t.algebra, "inl": t.inl, "inr": t.inr }), true)
                }
                _ => {
                    let x = ia.get(Kind::Matrix, Document::cmatrix)?;
                    let y = ib.get(Kind::Matrix, Document::cmatrix)?;
                    report("tensor", tol, json!({ "matrix": cmat_to_json(&fin_cstar::tensor_mat(&x, &y)) }), true)
                }
            }
        }
        Command::Verify { suite } => verify(suite, cli.seed, cli.cases, budget(cli)?, tol),
    }
}

fn parse_fn(s: &str) -> std::result::Result<FnSpec, Failure> {
    if Path::new(s).is_file() {
        return Input::open(s)?.get(Kind::FnSpec, Document::fnspec);
    }
    schema::parse_fnspec_str(s).map_err(|e| Failure::Input(e.to_string()))
}

/// Runs a suite group; `passed` holds when every suite behaves as expected,
/// controls included.
pub fn verify(group: &str, seed: u64, cases: usize, budget: u128, tol: Tolerance) -> Run {
    let suites = suites::group(group)?;
    let ctx = RunContext { tol, budget };
    let certs = law_harness::run_suites(&suites, seed, Some(cases), &ctx);
    let passed = certs.iter().all(|c| c.as_expected());
    let notes = certs
        .iter()
        .map(|c| {
            let verdict = if c.as_expected() { "ok  " } else { "FAIL" };
            let role = if c.control { " (control)" } else { "" };
            format!("{verdict} {:<24} {:>7} checks {:>6} failed{role}", c.suite, c.checks, c.failed_checks)
        })
        .collect();
    let result = json!({
        "group": group,
        "seed": seed,
        "cases": cases,
        "budget": budget.to_string(),
        "passed": passed,
        "certificates": certs,
    });
    let mut out = report("verify", tol, result, passed)?;
    out.notes = notes;
    Ok(out)
}

/// Writes the report and returns the exit status.
pub fn execute(cli: &Cli) -> u8 {
    match run(cli) {
        Ok(out) => {
            let text = match serde_json::to_string_pretty(&out.report) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 3;
                }
            };
            let written = match &cli.out {
                Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    // A closed pipe downstream is not our failure.
                    let _ = writeln!(std::io::stdout().lock(), "{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 3;
            }
            for n in &out.notes {
                eprintln!("{n}");
            }
            if out.passed {
                0
            } else {
                eprintln!("law check failed");
                1
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
    }
}
