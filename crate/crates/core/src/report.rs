//! Verification suites and their JSON reports (schema `gol-1`).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{
    cartan_matrix, check_algebra_with, group_algebra_from_table_with, loewy_length, omega_orbit_period,
    symmetric_group_table, BasisAlgebra, LeftModule, OmegaPeriod,
};
use crate::brauer_tree::{predicted_cartan, to_algebra_over, BrauerTree, Exceptional};
use crate::error::{Error, Result};
use crate::exactring::arith;
use crate::green::{
    closure_trials, commutative_factor_count, kernel_lattices, lattice_count, projective_lattices,
    rational_components, reduce_mod_p, simple_count_identity, GreenOrderSpec,
};
use crate::par::{self, Exec};
use crate::polyfunctor::{
    cross_effect_dims, cross_effect_hom_identity, dim_at, hockey_stick_holds, hom_dim_projectivity_identity,
    structure_of_p0_bookkeeping, tensor_end_dim, verify_welldefined, PolyFunctorSpec,
};
use crate::recollement::{recollement_check, IdempotentSelection};

pub const SCHEMA: &str = "gol-1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub suite: String,
    /// The structural statement the suite checks.
    pub anchor: String,
    pub status: Status,
    pub metrics: BTreeMap<String, Value>,
    pub seed: u64,
    pub runtime_ms: u64,
    /// Failing checks and their counterexamples; present iff `status` is fail.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `PASS green  anchor  (12 ms)`.
    pub fn summary_line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        format!("{tag} {:<12} {} ({} ms)", self.suite, self.anchor, self.runtime_ms)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Brauer,
    Green,
    Recollement,
    Polyfunc,
    OracleS3,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Brauer, Suite::Green, Suite::Recollement, Suite::Polyfunc, Suite::OracleS3];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Brauer => "brauer",
            Suite::Green => "green",
            Suite::Recollement => "recollement",
            Suite::Polyfunc => "polyfunc",
            Suite::OracleS3 => "oracle-s3",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::InvalidParam(format!("unknown suite `{s}`")))
    }
}

/// Suite parameters; `None` picks the suite's own default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub p: Option<u64>,
    pub precision: Option<u32>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub exec: Exec,
}

impl SuiteParams {
    fn prime_or(&self, default: u64) -> Result<u64> {
        let p = self.p.unwrap_or(default);
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(p)
    }
}

/// Named boolean checks; failures keep a counterexample payload.
#[derive(Default)]
struct Checks {
    results: BTreeMap<String, Value>,
    failures: BTreeMap<String, Value>,
}

impl Checks {
    fn expect(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> Value) {
        let name = name.into();
        if !ok {
            self.failures.insert(name.clone(), witness());
        }
        self.results.insert(name, Value::Bool(ok));
    }

    fn eq<T: PartialEq + Serialize>(&mut self, name: impl Into<String>, got: &T, want: &T) {
        self.expect(name, got == want, || json!({ "got": got, "want": want }));
    }

    /// Records `r` as passing, or as a failed check carrying the error text.
    fn ok<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.expect(name, false, || json!({ "error": e.to_string() }));
                None
            }
        }
    }
}

fn finish(
    suite: Suite,
    anchor: &str,
    seed: u64,
    start: Instant,
    mut metrics: BTreeMap<String, Value>,
    checks: Checks,
) -> VerificationReport {
    let pass = checks.failures.is_empty();
    metrics.insert("checks".into(), Value::Object(checks.results.into_iter().collect()));
    VerificationReport {
        schema: SCHEMA.into(),
        suite: suite.to_string(),
        anchor: anchor.into(),
        status: if pass { Status::Pass } else { Status::Fail },
        metrics,
        seed,
        runtime_ms: start.elapsed().as_millis() as u64,
        witness: (!pass).then(|| Value::Object(checks.failures.into_iter().collect())),
    }
}

fn omega_period(a: &BasisAlgebra, v: usize, bound: usize) -> Result<Option<usize>> {
    Ok(match omega_orbit_period(a, v, bound)? {
        OmegaPeriod::Finite(t) => Some(t),
        OmegaPeriod::ExceedsBound => None,
    })
}

fn brauer_suite(params: &SuiteParams) -> Result<VerificationReport> {
    let start = Instant::now();
    let p = params.prime_or(2)?;
    let mut c = Checks::default();
    let mut metrics = BTreeMap::new();
    let mut periods = Vec::new();
    for n in 1..=7 {
        let t = BrauerTree::stem(n)?;
        let Some(a) = c.ok(&format!("stem{n}_builds"), to_algebra_over(&t, p)) else { continue };
        c.expect(format!("stem{n}_algebra"), check_algebra_with(&a, params.exec).all_pass(), || json!(check_algebra_with(&a, params.exec)));
        if let Some(cm) = c.ok(&format!("stem{n}_cartan"), cartan_matrix(&a)) {
            c.eq(format!("stem{n}_cartan"), &cm, &predicted_cartan(&t));
        }
        if let Some(ll) = c.ok(&format!("stem{n}_loewy"), loewy_length(&a, &LeftModule::regular(&a))) {
            c.eq(format!("stem{n}_loewy"), &ll, &if n == 1 { 2 } else { 3 });
        }
        if (2..=6).contains(&n) {
            let got = (0..n).map(|v| omega_period(&a, v, 2 * n + 1)).collect::<Result<Vec<_>>>();
            if let Some(got) = c.ok(&format!("stem{n}_omega"), got) {
                // the middle edge of an odd stem is fixed by the reflection Ω^n induces
                let want: Vec<Option<usize>> =
                    (0..n).map(|v| Some(if n % 2 == 1 && 2 * v + 1 == n { n } else { 2 * n })).collect();
                c.eq(format!("stem{n}_omega"), &got, &want);
                periods.push(json!({ "n": n, "periods": got }));
            }
        }
    }
    let star = BrauerTree::star(3, Some(Exceptional { vertex: 0, multiplicity: 2 }))?;
    if let Some(a) = c.ok("star_builds", to_algebra_over(&star, p)) {
        if let Some(cm) = c.ok("star_cartan", cartan_matrix(&a)) {
            c.eq("star_cartan", &cm, &predicted_cartan(&star));
        }
    }
    metrics.insert("p".into(), json!(p));
    metrics.insert("stems".into(), json!(7));
    metrics.insert("omega_periods".into(), Value::Array(periods));
    Ok(finish(
        Suite::Brauer,
        "Brauer tree algebras: stem Cartan matrices are tridiagonal, Loewy length 3, syzygies of simples are periodic with period dividing 2n",
        params.seed,
        start,
        metrics,
        c,
    ))
}

fn green_suite(params: &SuiteParams) -> Result<VerificationReport> {
    let start = Instant::now();
    let p = params.prime_or(5)?;
    let n = params.precision.unwrap_or(6);
    let trials = params.trials.unwrap_or(1000);
    let spec = GreenOrderSpec::lambda0(p, n)?;
    let mut c = Checks::default();
    let mut metrics = BTreeMap::new();
    metrics.insert("p".into(), json!(p));
    metrics.insert("rank".into(), json!(crate::green::rank(&spec)));

    if let Some(k) = c.ok("rational_components", rational_components(&spec)) {
        c.eq("rational_components", &k, &(p as usize + 1));
        metrics.insert("rational_components".into(), json!(k));
    }
    if let Some(a) = c.ok("reduction", reduce_mod_p(&spec)) {
        let rep = check_algebra_with(&a, params.exec);
        c.expect("reduction_is_algebra", rep.all_pass(), || json!(rep));
        c.eq("reduced_dim", &a.dim(), &(4 * p as usize - 2));
        c.eq("simples", &a.vertex_count(), &(p as usize));
        metrics.insert("reduced_dim".into(), json!(a.dim()));
        if let Some(cm) = c.ok("cartan_match", cartan_matrix(&a)) {
            c.eq("cartan_match", &cm, &predicted_cartan(&BrauerTree::stem(p as usize)?));
            metrics.insert("cartan".into(), json!(cm));
        }
    }
    if let Some(lc) = c.ok("lattice_count", lattice_count(p)) {
        metrics.insert(
            "lattice_count".into(),
            json!({ "total": lc.total, "projective": lc.projective, "nonprojective": lc.nonprojective }),
        );
        // lattice census by construction, for primes small enough to be quick
        if p <= 7 {
            if let Some(ps) = c.ok("projective_lattices", projective_lattices(&spec)) {
                let ranks: Vec<usize> = ps.iter().map(|l| l.rank).collect();
                let mut want = vec![4; p as usize];
                want[0] = 3;
                want[p as usize - 1] = 3;
                if p == 2 {
                    want = vec![3, 3];
                }
                c.eq("projective_ranks", &ranks, &want);
            }
            if let Some(ks) = c.ok("kernel_lattices", kernel_lattices(&spec)) {
                c.eq("kernel_count", &ks.len(), &lc.nonprojective);
                c.expect("kernels_local", ks.iter().all(|k| k.end_local), || {
                    json!(ks.iter().filter(|k| !k.end_local).map(|k| &k.label).collect::<Vec<_>>())
                });
            }
        }
    }
    let factors = (p >= 5).then(|| commutative_factor_count(p)).transpose();
    if let Some(f) = c.ok("commutative_factors", factors) {
        metrics.insert("commutative_factors".into(), json!(f.map(|f| f.total)));
        if p >= 5 {
            if let Some((lhs, rhs)) = c.ok("simple_count", simple_count_identity(p)) {
                c.eq("simple_count", &lhs, &rhs);
            }
        }
    }
    if let Some(out) = c.ok("closure", closure_trials(&spec, trials, params.seed, params.exec)) {
        let w = out.witness.clone();
        c.expect("closure", out.failures == 0, || json!(w));
        metrics.insert("closure_trials".into(), json!(out.trials));
        metrics.insert("closure_failures".into(), json!(out.failures));
    }
    Ok(finish(
        Suite::Green,
        "Green order over truncated p-adic integers: closed under products, p+1 rational components, reduction mod p is the stem algebra with p edges, 3p-2+Σρ(k) lattices",
        params.seed,
        start,
        metrics,
        c,
    ))
}

fn recollement_suite(params: &SuiteParams) -> Result<VerificationReport> {
    let start = Instant::now();
    let primes: Vec<u64> = match params.p {
        Some(_) => vec![params.prime_or(5)?],
        None => vec![3, 5, 7],
    };
    let mut c = Checks::default();
    let mut rows = Vec::new();
    for &p in &primes {
        let a = to_algebra_over(&BrauerTree::stem(p as usize)?, p)?;
        let sel = IdempotentSelection::new(&a, (1..p as usize).collect())?;
        if let Some(r) = c.ok(&format!("p{p}_recollement"), recollement_check(&a, &sel)) {
            c.expect(format!("p{p}_pieces_are_algebras"), r.corner_check.all_pass() && r.quotient_check.all_pass(), || {
                json!({ "corner": r.corner_check, "quotient": r.quotient_check })
            });
            c.eq(format!("p{p}_corner_cartan"), &r.corner_cartan, &predicted_cartan(&BrauerTree::stem(p as usize - 1)?));
            c.eq(format!("p{p}_quotient_dim"), &r.quotient_dim, &1);
            c.expect(format!("p{p}_simple_count"), r.additive, || {
                json!({ "vertices": r.vertices, "corner": r.corner_vertices, "quotient": r.quotient_simples })
            });
            rows.push(json!({ "p": p, "corner_dim": r.corner_dim, "quotient_dim": r.quotient_dim }));
        }
    }
    let mut metrics = BTreeMap::new();
    metrics.insert("cases".into(), Value::Array(rows));
    Ok(finish(
        Suite::Recollement,
        "Idempotent recollement: cutting a leaf of the stem leaves the shorter stem, and the quotient by the trace ideal is the ground field",
        params.seed,
        start,
        metrics,
        c,
    ))
}

fn polyfunc_suite(params: &SuiteParams) -> Result<VerificationReport> {
    use PolyFunctorSpec::*;
    let start = Instant::now();
    let primes: Vec<u64> = match params.p {
        Some(_) => vec![params.prime_or(5)?],
        None => vec![3, 5, 7],
    };
    let trials = params.trials.unwrap_or(200);
    let mut c = Checks::default();
    let mut metrics = BTreeMap::new();
    let lin: Vec<u128> = (0..=10).map(|n| dim_at(&Linearization { m: 1, n }, 1)).collect::<Result<_>>()?;
    c.eq("linearization_dims", &lin, &(1..=11).collect::<Vec<u128>>());
    for n in 1..=5usize {
        let fact = arith::factorial(n as u64).expect("small");
        if let Some(t) = c.ok(&format!("cross_tensor{n}"), cross_effect_dims(&TensorPower(n), n)) {
            c.eq(format!("cross_tensor{n}"), &t.c(n), &fact);
        }
        if let Some(t) = c.ok(&format!("cross_sym{n}"), cross_effect_dims(&SymPower(n), n)) {
            c.eq(format!("cross_sym{n}"), &t.c(n), &1);
        }
        for g in [SymPower(n), TensorPower(n), ExtPower(n), Linearization { m: 2, n }] {
            if let Some(ok) = c.ok(&format!("hom_{g}"), cross_effect_hom_identity(n, &g)) {
                c.expect(format!("hom_{g}"), ok, || json!(g.to_string()));
            }
        }
    }
    for (n, m, f) in [(3, 2, SymPower(2)), (2, 4, Constant), (2, 3, TensorPower(2)), (4, 3, ExtPower(3))] {
        if let Some(ok) = c.ok(&format!("projectivity_{f}_{m}"), hom_dim_projectivity_identity(n, m, &f)) {
            c.expect(format!("projectivity_{f}_{m}"), ok, || json!({ "n": n, "m": m }));
        }
    }
    let mut runs = Vec::new();
    for &p in &primes {
        for k in 0..=6 {
            if let Some(ok) = c.ok(&format!("hockey_stick_p{p}"), hockey_stick_holds(p, k)) {
                c.expect(format!("hockey_stick_p{p}"), ok, || json!({ "k": k }));
            }
            c.ok(&format!("p0_bookkeeping_p{p}"), structure_of_p0_bookkeeping(p, k));
        }
        if let Some(out) = c.ok(&format!("welldefined_p{p}"), verify_welldefined(p, trials, params.seed, params.exec)) {
            let w = out.witness.clone();
            c.expect(format!("welldefined_p{p}"), out.failures == 0, || json!(w));
            runs.push(json!({ "p": p, "trials": out.trials, "checks": out.checks, "failures": out.failures }));
        }
        for n in 1..=3usize.min(p as usize) {
            if let Some(t) = c.ok(&format!("tensor_end_p{p}_n{n}"), tensor_end_dim(n, n, p)) {
                c.eq(format!("tensor_end_p{p}_n{n}"), &(t.dim as u128), &arith::factorial(n as u64).expect("small"));
            }
        }
    }
    metrics.insert("welldefined".into(), Value::Array(runs));
    metrics.insert("linearization_dims".into(), json!(lin));
    Ok(finish(
        Suite::Polyfunc,
        "Polynomial functors: cross-effect dimensions, Hom identities for tensor and symmetric powers, reduction mod p is well defined below degree p",
        params.seed,
        start,
        metrics,
        c,
    ))
}

fn oracle_s3_suite(params: &SuiteParams) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut c = Checks::default();
    let mut metrics = BTreeMap::new();
    let g = group_algebra_from_table_with(&symmetric_group_table(3), 3, params.exec)?;
    let b = to_algebra_over(&BrauerTree::stem(2)?, 3)?;
    let invariants = |a: &BasisAlgebra| -> Result<Value> {
        let periods = (0..a.vertex_count()).map(|v| omega_period(a, v, 8)).collect::<Result<Vec<_>>>()?;
        Ok(json!({
            "dim": a.dim(),
            "radical_dim": a.radical().dim(),
            "cartan": cartan_matrix(a)?,
            "loewy_length": loewy_length(a, &LeftModule::regular(a))?,
            "omega_periods": periods,
        }))
    };
    let gi = c.ok("group_invariants", invariants(&g));
    let bi = c.ok("tree_invariants", invariants(&b));
    if let (Some(gi), Some(bi)) = (gi, bi) {
        c.eq("invariants_agree", &gi, &bi);
        c.eq(
            "expected",
            &gi,
            &json!({ "dim": 6, "radical_dim": 4, "cartan": [[2, 1], [1, 2]], "loewy_length": 3, "omega_periods": [4, 4] }),
        );
        metrics.insert("group".into(), gi);
        metrics.insert("tree".into(), bi);
    }
    Ok(finish(
        Suite::OracleS3,
        "Brute-force group algebra of the symmetric group on 3 letters over F_3 agrees with the stem algebra with 2 edges",
        params.seed,
        start,
        metrics,
        c,
    ))
}

fn run_one(s: Suite, params: &SuiteParams) -> Result<VerificationReport> {
    match s {
        Suite::Brauer => brauer_suite(params),
        Suite::Green => green_suite(params),
        Suite::Recollement => recollement_suite(params),
        Suite::Polyfunc => polyfunc_suite(params),
        Suite::OracleS3 => oracle_s3_suite(params),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

/// Runs a suite (or all of them, concurrently) and returns the reports
/// sorted by suite name.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<Vec<VerificationReport>> {
    let suite: Suite = name.parse()?;
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut out = par::map_slice(params.exec, &suites, |&s| run_one(s, params)).into_iter().collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.suite.cmp(&b.suite));
    Ok(out)
}

pub fn to_json(reports: &[VerificationReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(|e| Error::Parse(e.to_string()))
}

/// JSON with `runtime_ms` removed: identical inputs give identical bytes.
pub fn canonical_json(reports: &[VerificationReport]) -> Result<String> {
    let mut v = serde_json::to_value(reports).map_err(|e| Error::Parse(e.to_string()))?;
    for r in v.as_array_mut().expect("array") {
        r.as_object_mut().expect("object").remove("runtime_ms");
    }
    serde_json::to_string(&v).map_err(|e| Error::Parse(e.to_string()))
}

pub fn emit_json(reports: &[VerificationReport], path: &Path) -> Result<()> {
    std::fs::write(path, to_json(reports)? + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::EACH {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("nope".parse::<Suite>().is_err());
        assert!(run_suite("nope", &SuiteParams::default()).is_err());
    }

    #[test]
    fn empty_and_failing_reports_serialize() {
        assert_eq!(canonical_json(&[]).unwrap(), "[]");
        let mut c = Checks::default();
        c.eq("x", &1, &2);
        let r = finish(Suite::Green, "anchor", 0, Instant::now(), BTreeMap::new(), c);
        assert_eq!(r.status, Status::Fail);
        let s = canonical_json(&[r]).unwrap();
        assert!(s.contains(r#""status":"fail""#) && s.contains(r#""witness":{"x":{"got":1,"want":2}}"#));
        assert!(s.contains(r#""schema":"gol-1""#) && !s.contains("runtime_ms"));
    }

    #[test]
    fn green_suite_is_deterministic() {
        let params = SuiteParams { p: Some(5), precision: Some(6), trials: Some(100), seed: 1, exec: Exec::Parallel };
        let a = run_suite("green", &params).unwrap();
        assert!(a[0].passed(), "{:?}", a[0].witness);
        assert_eq!(a[0].metrics["checks"]["cartan_match"], json!(true));
        assert_eq!(a[0].metrics["commutative_factors"], json!(12));
        let b = run_suite("green", &SuiteParams { exec: Exec::Sequential, ..params }).unwrap();
        assert_eq!(canonical_json(&a).unwrap(), canonical_json(&b).unwrap());
    }

    #[test]
    fn green_suite_rejects_bad_params() {
        assert!(run_suite("green", &SuiteParams { p: Some(6), ..Default::default() }).is_err());
        assert!(run_suite("green", &SuiteParams { precision: Some(1), ..Default::default() }).is_err());
    }

    #[test]
    fn small_suites_pass() {
        for name in ["brauer", "recollement", "polyfunc", "oracle-s3"] {
            let r = run_suite(name, &SuiteParams::default()).unwrap();
            assert!(r.iter().all(|x| x.passed() && !x.anchor.is_empty()), "{name}: {:?}", r[0].witness);
        }
    }
}
