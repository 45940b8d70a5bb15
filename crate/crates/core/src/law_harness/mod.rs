//! Seeded law checking for functors, adjunctions, equivalences and monoidal
//! structure.
//!
//! Categories and functors are plain closures over the concrete types, so
//! one engine serves every suite. Case `i` of a suite run with seed `s` draws
//! from the ChaCha stream `(s, i)`, which makes each case reproducible on its
//! own and keeps results independent of scheduling.

pub mod gen;
pub mod suites;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fin_cstar::Tolerance;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_CASES: usize = 200;
pub const DEFAULT_BUDGET: u128 = 100_000;
/// Enumeration cap inside a single generated case.
pub const CASE_CAP: u128 = 100_000;
/// Failures kept verbatim per certificate; the rest are only counted.
pub const MAX_RECORDED_FAILURES: usize = 16;

type Fn1<A, B> = Arc<dyn Fn(&A) -> B + Send + Sync>;
type Fn2<A, B, C> = Arc<dyn Fn(&A, &B) -> C + Send + Sync>;
type Fn3<A, B, C, D> = Arc<dyn Fn(&A, &B, &C) -> D + Send + Sync>;
type HomFn<O, M> = Arc<dyn Fn(&O, &O, u128) -> Result<Vec<M>> + Send + Sync>;

/// A category presented by closures. `then(f, g)` is `g ∘ f`.
pub struct Category<O, M> {
    pub name: String,
    pub source: Fn1<M, O>,
    pub target: Fn1<M, O>,
    pub id: Fn1<O, M>,
    pub then: Fn2<M, M, Result<M>>,
    pub eq: Fn2<M, M, bool>,
    pub is_iso: Fn1<M, bool>,
    pub homs: Option<HomFn<O, M>>,
    pub show_obj: Fn1<O, Value>,
    pub show: Fn1<M, Value>,
}

impl<O, M> Clone for Category<O, M> {
    fn clone(&self) -> Self {
        Category {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            id: self.id.clone(),
            then: self.then.clone(),
            eq: self.eq.clone(),
            is_iso: self.is_iso.clone(),
            homs: self.homs.clone(),
            show_obj: self.show_obj.clone(),
            show: self.show.clone(),
        }
    }
}

impl<O: 'static, M: 'static> Category<O, M> {
    pub fn opposite(&self) -> Category<O, M> {
        let c = self.clone();
        let then = c.then.clone();
        Category {
            name: format!("{}^op", c.name),
            source: c.target.clone(),
            target: c.source.clone(),
            id: c.id.clone(),
            then: Arc::new(move |f, g| then(g, f)),
            eq: c.eq.clone(),
            is_iso: c.is_iso.clone(),
            homs: c.homs.clone().map(|h| -> HomFn<O, M> { Arc::new(move |a, b, cap| h(b, a, cap)) }),
            show_obj: c.show_obj.clone(),
            show: c.show.clone(),
        }
    }
}

impl<O, M> Category<O, M> {
    fn then3(&self, f: &M, g: &M, h: &M) -> Result<M> {
        (self.then)(&(self.then)(f, g)?, h)
    }
}

pub struct Functor<O1, M1, O2, M2> {
    pub name: String,
    pub obj: Fn1<O1, O2>,
    pub mor: Fn1<M1, M2>,
}

impl<O1, M1, O2, M2> Clone for Functor<O1, M1, O2, M2> {
    fn clone(&self) -> Self {
        Functor {
            name: self.name.clone(),
            obj: self.obj.clone(),
            mor: self.mor.clone(),
        }
    }
}

/// `F ⊣ G` with `F: C -> D`, presented by unit, counit and the hom-set
/// bijection `transpose: D(Fc, d) -> C(c, Gd)`.
pub struct Adjunction<OC, MC, OD, MD> {
    pub left: Functor<OC, MC, OD, MD>,
    pub right: Functor<OD, MD, OC, MC>,
    pub unit: Fn1<OC, MC>,
    pub counit: Fn1<OD, MD>,
    pub transpose: Fn2<OC, MD, Result<MC>>,
    pub transpose_inv: Fn2<OD, MC, Result<MD>>,
}

/// An equivalence with unit `c -> GFc` and counit `FGd -> d`.
pub struct Equivalence<OC, MC, OD, MD> {
    pub left: Functor<OC, MC, OD, MD>,
    pub right: Functor<OD, MD, OC, MC>,
    pub unit: Fn1<OC, MC>,
    pub counit: Fn1<OD, MD>,
}

/// Symmetric monoidal structure on a category.
pub struct Monoidal<O, M> {
    pub cat: Category<O, M>,
    pub unit: O,
    pub tensor: Fn2<O, O, O>,
    pub tensor_mor: Fn2<M, M, M>,
    /// `(a ⊗ b) ⊗ c -> a ⊗ (b ⊗ c)`.
    pub associator: Fn3<O, O, O, M>,
    /// `I ⊗ a -> a`.
    pub left_unitor: Fn1<O, M>,
    /// `a ⊗ I -> a`.
    pub right_unitor: Fn1<O, M>,
    /// `a ⊗ b -> b ⊗ a`.
    pub braiding: Fn2<O, O, M>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub law: String,
    pub case: Option<usize>,
    pub counterexample: Value,
}

/// Accumulates check counts and failures for one case.
#[derive(Clone, Debug, Default)]
pub struct Checker {
    pub checks: u64,
    pub failed: u64,
    pub failures: Vec<(String, Value)>,
}

impl Checker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push((law.to_string(), witness()));
            }
        }
    }

    /// Errors count as failures and are reported with the witness.
    pub fn check_result(&mut self, law: &str, r: Result<bool>, witness: impl FnOnce() -> Value) {
        match r {
            Ok(ok) => self.check(law, ok, witness),
            Err(e) => self.check(law, false, || json!({ "error": e.to_string(), "input": witness() })),
        }
    }

    pub fn absorb(&mut self, other: Checker) {
        self.checks += other.checks;
        self.failed += other.failed;
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

fn eq_in<O, M>(c: &Category<O, M>, a: Result<M>, b: Result<M>) -> Result<bool> {
    Ok((c.eq)(&a?, &b?))
}

/// Identity and composition preservation on a composable pair `f; g`.
pub fn check_functor<O1, M1, O2, M2>(
    chk: &mut Checker,
    functor: &Functor<O1, M1, O2, M2>,
    c: &Category<O1, M1>,
    d: &Category<O2, M2>,
    f: &M1,
    g: &M1,
) {
    let a = (c.source)(f);
    let name = &functor.name;
    let fid = (functor.mor)(&(c.id)(&a));
    let idf = (d.id)(&(functor.obj)(&a));
    chk.check(&format!("{name}: identity"), (d.eq)(&fid, &idf), || json!({ "object": (c.show_obj)(&a) }));
    let lhs = (c.then)(f, g).map(|gf| (functor.mor)(&gf));
    let rhs = (d.then)(&(functor.mor)(f), &(functor.mor)(g));
    chk.check_result(&format!("{name}: composition"), eq_in(d, lhs, rhs), || {
        json!({ "f": (c.show)(f), "g": (c.show)(g) })
    });
}

/// One adjunction case: `h: Fc -> d`, `f: c' -> c` in C and `k: d -> d'` in D.
pub struct AdjCase<OC, MC, MD> {
    pub c: OC,
    pub h: MD,
    pub f: MC,
    pub k: MD,
}

/// Triangle identities, the unit formula for the transpose, invertibility of
/// the transpose, naturality in both variables, and idempotency. When both
/// hom-sets fit in `budget` the bijection is also checked by enumeration.
pub fn check_adjunction<OC, MC: Clone, OD, MD: Clone>(
    chk: &mut Checker,
    adj: &Adjunction<OC, MC, OD, MD>,
    c_cat: &Category<OC, MC>,
    d_cat: &Category<OD, MD>,
    case: &AdjCase<OC, MC, MD>,
    budget: u128,
) -> Option<u64> {
    let (f_, g_) = (&adj.left, &adj.right);
    let c = &case.c;
    let d = (d_cat.target)(&case.h);
    let fc = (f_.obj)(c);
    let gd = (g_.obj)(&d);
    let show_case = || {
        json!({
            "c": (c_cat.show_obj)(c),
            "h": (d_cat.show)(&case.h),
            "f": (c_cat.show)(&case.f),
            "k": (d_cat.show)(&case.k),
        })
    };

    let eta_c = (adj.unit)(c);
    let eps_fc = (adj.counit)(&fc);
    let tri1 = (d_cat.then)(&(f_.mor)(&eta_c), &eps_fc);
    chk.check_result("triangle: ε_F ∘ Fη = id", eq_in(d_cat, tri1, Ok((d_cat.id)(&fc))), show_case);

    let eta_gd = (adj.unit)(&gd);
    let eps_d = (adj.counit)(&d);
    let tri2 = (c_cat.then)(&eta_gd, &(g_.mor)(&eps_d));
    chk.check_result("triangle: Gε ∘ η_G = id", eq_in(c_cat, tri2, Ok((c_cat.id)(&gd))), show_case);

    let t = (adj.transpose)(c, &case.h);
    let via_unit = (c_cat.then)(&eta_c, &(g_.mor)(&case.h));
    chk.check_result("transpose = Gh ∘ η", eq_in(c_cat, t.clone(), via_unit), show_case);

    let back = t.clone().and_then(|t| (adj.transpose_inv)(&d, &t));
    chk.check_result("transpose is invertible", eq_in(d_cat, back, Ok(case.h.clone())), show_case);

    let c2 = (c_cat.source)(&case.f);
    let lhs = d_cat
        .then3(&(f_.mor)(&case.f), &case.h, &case.k)
        .and_then(|m| (adj.transpose)(&c2, &m));
    let rhs = t.and_then(|t| c_cat.then3(&case.f, &t, &(g_.mor)(&case.k)));
    chk.check_result("transpose is natural", eq_in(c_cat, lhs, rhs), show_case);

    chk.check("idempotent: η at G is iso", (c_cat.is_iso)(&eta_gd), || json!({ "d": (d_cat.show_obj)(&d) }));
    chk.check("idempotent: ε at F is iso", (d_cat.is_iso)(&eps_fc), || json!({ "c": (c_cat.show_obj)(c) }));

    check_hom_bijection(chk, adj, c_cat, d_cat, c, &d, budget)
}

/// Enumerates `D(Fc, d)` and `C(c, Gd)` and checks that the transpose and
/// its inverse are mutually inverse between them.
pub fn check_hom_bijection<OC, MC, OD, MD>(
    chk: &mut Checker,
    adj: &Adjunction<OC, MC, OD, MD>,
    c_cat: &Category<OC, MC>,
    d_cat: &Category<OD, MD>,
    c: &OC,
    d: &OD,
    budget: u128,
) -> Option<u64> {
    let (dh, ch) = (d_cat.homs.as_ref()?, c_cat.homs.as_ref()?);
    let left = dh(&(adj.left.obj)(c), d, budget).ok()?;
    let right = ch(c, &(adj.right.obj)(d), budget).ok()?;
    let before = chk.checks;
    chk.check("hom-sets have equal size", left.len() == right.len(), || {
        json!({ "c": (c_cat.show_obj)(c), "d": (d_cat.show_obj)(d), "left": left.len(), "right": right.len() })
    });
    for h in &left {
        let ok = (adj.transpose)(c, h).and_then(|t| (adj.transpose_inv)(d, &t)).map(|b| (d_cat.eq)(&b, h));
        chk.check_result("transpose_inv ∘ transpose = id", ok, || json!({ "h": (d_cat.show)(h) }));
    }
    for g in &right {
        let ok = (adj.transpose_inv)(d, g).and_then(|t| (adj.transpose)(c, &t)).map(|b| (c_cat.eq)(&b, g));
        chk.check_result("transpose ∘ transpose_inv = id", ok, || json!({ "g": (c_cat.show)(g) }));
    }
    Some(chk.checks - before)
}

/// Unit and counit are isomorphisms and natural along `f` in C and `k` in D.
pub fn check_equivalence<OC, MC, OD, MD>(
    chk: &mut Checker,
    eqv: &Equivalence<OC, MC, OD, MD>,
    c_cat: &Category<OC, MC>,
    d_cat: &Category<OD, MD>,
    f: &MC,
    k: &MD,
) {
    let (fl, gr) = (&eqv.left, &eqv.right);
    for obj in [(c_cat.source)(f), (c_cat.target)(f)] {
        chk.check("unit is iso", (c_cat.is_iso)(&(eqv.unit)(&obj)), || json!({ "c": (c_cat.show_obj)(&obj) }));
    }
    for obj in [(d_cat.source)(k), (d_cat.target)(k)] {
        chk.check("counit is iso", (d_cat.is_iso)(&(eqv.counit)(&obj)), || {
            json!({ "d": (d_cat.show_obj)(&obj) })
        });
    }
    let (c1, c2) = ((c_cat.source)(f), (c_cat.target)(f));
    let lhs = (c_cat.then)(f, &(eqv.unit)(&c2));
    let rhs = (c_cat.then)(&(eqv.unit)(&c1), &(gr.mor)(&(fl.mor)(f)));
    chk.check_result("unit is natural", eq_in(c_cat, lhs, rhs), || json!({ "f": (c_cat.show)(f) }));

    let (d1, d2) = ((d_cat.source)(k), (d_cat.target)(k));
    let lhs = (d_cat.then)(&(eqv.counit)(&d1), k);
    let rhs = (d_cat.then)(&(fl.mor)(&(gr.mor)(k)), &(eqv.counit)(&d2));
    chk.check_result("counit is natural", eq_in(d_cat, lhs, rhs), || json!({ "k": (d_cat.show)(k) }));
}

/// Pentagon, triangle, braiding symmetry, hexagon, and naturality of the
/// braiding along `f ⊗ g`.
pub fn check_monoidal<O, M>(chk: &mut Checker, mc: &Monoidal<O, M>, objs: &[O; 4], f: &M, g: &M) {
    let cat = &mc.cat;
    let t = |a: &O, b: &O| (mc.tensor)(a, b);
    let tm = |a: &M, b: &M| (mc.tensor_mor)(a, b);
    let id = |a: &O| (cat.id)(a);
    let al = |a: &O, b: &O, c: &O| (mc.associator)(a, b, c);
    let [a, b, c, d] = objs;
    let show = || json!({ "objects": objs.iter().map(|o| (cat.show_obj)(o)).collect::<Vec<_>>() });

    let lhs = (cat.then)(&al(&t(a, b), c, d), &al(a, b, &t(c, d)));
    let rhs = cat.then3(&tm(&al(a, b, c), &id(d)), &al(a, &t(b, c), d), &tm(&id(a), &al(b, c, d)));
    chk.check_result("pentagon", eq_in(cat, lhs, rhs), show);

    let lhs = (cat.then)(&al(a, &mc.unit, b), &tm(&id(a), &(mc.left_unitor)(b)));
    let rhs = Ok(tm(&(mc.right_unitor)(a), &id(b)));
    chk.check_result("triangle", eq_in(cat, lhs, rhs), show);

    let sym = (cat.then)(&(mc.braiding)(a, b), &(mc.braiding)(b, a));
    chk.check_result("braiding is symmetric", eq_in(cat, sym, Ok(id(&t(a, b)))), show);

    let lhs = cat.then3(&al(a, b, c), &(mc.braiding)(a, &t(b, c)), &al(b, c, a));
    let rhs = cat.then3(&tm(&(mc.braiding)(a, b), &id(c)), &al(b, a, c), &tm(&id(b), &(mc.braiding)(a, c)));
    chk.check_result("hexagon", eq_in(cat, lhs, rhs), show);

    let (fs, ft, gs, gt) = ((cat.source)(f), (cat.target)(f), (cat.source)(g), (cat.target)(g));
    let lhs = (cat.then)(&tm(f, g), &(mc.braiding)(&ft, &gt));
    let rhs = (cat.then)(&(mc.braiding)(&fs, &gs), &tm(g, f));
    chk.check_result("braiding is natural", eq_in(cat, lhs, rhs), || {
        json!({ "f": (cat.show)(f), "g": (cat.show)(g) })
    });

    let lhs = tm(&id(a), &id(b));
    chk.check("tensor preserves identities", (cat.eq)(&lhs, &id(&t(a, b))), show);
}

/// How a suite compares values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    Exact,
    Float,
}

/// Inputs shared by every case of a run.
#[derive(Clone, Debug, Serialize)]
pub struct RunContext {
    pub tol: Tolerance,
    pub budget: u128,
}

impl Default for RunContext {
    fn default() -> Self {
        RunContext {
            tol: Tolerance::default(),
            budget: DEFAULT_BUDGET,
        }
    }
}

type CaseFn = Arc<dyn Fn(&mut ChaCha8Rng, &RunContext) -> Checker + Send + Sync>;
type ExhaustiveFn = Arc<dyn Fn(&RunContext) -> Option<Checker> + Send + Sync>;

/// A named family of law checks over seeded random instances, optionally
/// preceded by an exhaustive sweep of small instances.
#[derive(Clone)]
pub struct LawSuite {
    pub name: String,
    pub about: String,
    pub precision: Precision,
    pub default_cases: usize,
    /// Negative control: the suite is built from a corrupted structure and
    /// is expected to report failures.
    pub control: bool,
    case: CaseFn,
    exhaustive: Option<ExhaustiveFn>,
}

impl LawSuite {
    pub fn new(
        name: impl Into<String>,
        about: impl Into<String>,
        precision: Precision,
        default_cases: usize,
        case: impl Fn(&mut ChaCha8Rng, &RunContext) -> Checker + Send + Sync + 'static,
    ) -> Self {
        LawSuite {
            name: name.into(),
            about: about.into(),
            precision,
            default_cases,
            control: false,
            case: Arc::new(case),
            exhaustive: None,
        }
    }

    /// Adds a sweep that returns `None` when it would exceed the budget.
    pub fn with_exhaustive(mut self, f: impl Fn(&RunContext) -> Option<Checker> + Send + Sync + 'static) -> Self {
        self.exhaustive = Some(Arc::new(f));
        self
    }

    pub fn as_control(mut self) -> Self {
        self.control = true;
        self
    }

    pub fn run(&self, seed: u64, cases: usize, ctx: &RunContext) -> Certificate {
        let start = Instant::now();
        let results: Vec<Checker> = (0..cases)
            .into_par_iter()
            .map(|i| {
                let mut rng = case_rng(seed, i);
                (self.case)(&mut rng, ctx)
            })
            .collect();
        let mut checks = 0;
        let mut failed = 0;
        let mut failures = Vec::new();
        let exhaustive = self.exhaustive.as_ref().and_then(|f| f(ctx));
        let exhaustive_checks = exhaustive.as_ref().map(|c| c.checks);
        let tagged = exhaustive
            .into_iter()
            .map(|c| (None, c))
            .chain(results.into_iter().enumerate().map(|(i, c)| (Some(i), c)));
        for (case, c) in tagged {
            checks += c.checks;
            failed += c.failed;
            for (law, counterexample) in c.failures {
                if failures.len() < MAX_RECORDED_FAILURES {
                    failures.push(Failure { law, case, counterexample });
                }
            }
        }
        Certificate {
            suite: self.name.clone(),
            about: self.about.clone(),
            seed,
            cases,
            checks,
            exhaustive_checks,
            failed_checks: failed,
            precision: self.precision,
            tolerance: match self.precision {
                Precision::Exact => None,
                Precision::Float => Some(ctx.tol),
            },
            control: self.control,
            passed: failed == 0,
            failures,
            wall_time: start.elapsed(),
        }
    }
}

/// The RNG for case `case` of a run seeded with `seed`.
pub fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub suite: String,
    pub about: String,
    pub seed: u64,
    pub cases: usize,
    pub checks: u64,
    pub exhaustive_checks: Option<u64>,
    pub failed_checks: u64,
    pub precision: Precision,
    pub tolerance: Option<Tolerance>,
    pub control: bool,
    /// `true` iff no check failed.
    pub passed: bool,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl Certificate {
    /// Ordinary suites must pass; controls must fail.
    pub fn as_expected(&self) -> bool {
        self.passed != self.control
    }
}

/// Runs suites in order, using `cases` when given and each suite's default
/// otherwise.
pub fn run_suites(suites: &[LawSuite], seed: u64, cases: Option<usize>, ctx: &RunContext) -> Vec<Certificate> {
    suites
        .iter()
        .map(|s| s.run(seed, cases.unwrap_or(s.default_cases), ctx))
        .collect()
}

pub fn budget_from_env(default: u128) -> Result<u128> {
    match std::env::var("DUALITY_KIT_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite() && *x >= 1.0)
            .map(|x| x as u128)
            .ok_or_else(|| Error::Parse(format!("DUALITY_KIT_BUDGET: not a positive number: `{v}`"))),
        Err(_) => Ok(default),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn ints() -> Category<i64, (i64, i64)> {
        Category {
            name: "preorder".into(),
            source: Arc::new(|m: &(i64, i64)| m.0),
            target: Arc::new(|m: &(i64, i64)| m.1),
            id: Arc::new(|a: &i64| (*a, *a)),
            then: Arc::new(|f: &(i64, i64), g: &(i64, i64)| {
                if f.1 == g.0 {
                    Ok((f.0, g.1))
                } else {
                    Err(Error::Mismatch("not composable".into()))
                }
            }),
            eq: Arc::new(|a, b| a == b),
            is_iso: Arc::new(|m| m.0 == m.1),
            homs: None,
            show_obj: Arc::new(|a| json!(a)),
            show: Arc::new(|m| json!([m.0, m.1])),
        }
    }

    #[test]
    fn functor_checks_catch_a_broken_morphism_map() {
        let c = ints();
        let good = Functor {
            name: "double".into(),
            obj: Arc::new(|a: &i64| 2 * a),
            mor: Arc::new(|m: &(i64, i64)| (2 * m.0, 2 * m.1)),
        };
        let mut chk = Checker::new();
        check_functor(&mut chk, &good, &c, &c, &(1, 2), &(2, 5));
        assert!(chk.passed());
        let bad = Functor {
            name: "bad".into(),
            obj: Arc::new(|a: &i64| *a),
            mor: Arc::new(|m: &(i64, i64)| (m.0, m.1 + 1)),
        };
        let mut chk = Checker::new();
        check_functor(&mut chk, &bad, &c, &c, &(1, 2), &(2, 5));
        assert!(!chk.passed());
        assert_eq!(chk.failures.len(), 2);
    }

    #[test]
    fn opposite_reverses_composition() {
        let op = ints().opposite();
        assert_eq!((op.then)(&(2, 5), &(1, 2)).unwrap(), (1, 5));
        assert_eq!((op.source)(&(1, 2)), 2);
    }

    #[test]
    fn runs_are_deterministic_and_merge_by_case() {
        let suite = LawSuite::new("toy", "toy", Precision::Exact, 10, |rng, _| {
            let mut c = Checker::new();
            let x: u32 = rng.random_range(0..100);
            c.check("below 90", x < 90, || json!(x));
            c
        });
        let ctx = RunContext::default();
        let a = suite.run(7, 50, &ctx);
        let b = suite.run(7, 50, &ctx);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.checks, 50);
        assert_eq!(a.passed, a.failures.is_empty());
        let mut r = case_rng(7, 3);
        let mut s = case_rng(7, 3);
        assert_eq!(r.random::<u64>(), s.random::<u64>());
        assert_ne!(case_rng(7, 3).random::<u64>(), case_rng(7, 4).random::<u64>());
    }
}
