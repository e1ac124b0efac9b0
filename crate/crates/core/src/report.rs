//! Pipeline driver and canonical JSON reports.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::primes_up_to;
use crate::counting::{congruence_check, l_polynomial, point_count, CongruenceReport, Target, Verdict, DEFAULT_BOUND};
use crate::curves::{
    disc_in_t, family_from_kind, family_from_traces, family_from_triple, rigidity_decomposition, specialize,
    CurveFamily, FamilyKind,
};
use crate::cyclo::RingElement;
use crate::error::{Error, Result};
use crate::triples::{
    from_traces, lift_traces, ordinary_candidates, reduction_plan, reflection_classify, validate, AdmissibleTriple,
    ReductionPlan,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Triple,
    Plan,
    Curve,
    Count,
    Congruence,
    Analyze,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Triple => "triple",
            Command::Plan => "plan",
            Command::Curve => "curve",
            Command::Count => "count",
            Command::Congruence => "congruence",
            Command::Analyze => "analyze",
        })
    }
}

/// Where the triple or family comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Traces { x: RingElement, z: RingElement },
    Family(FamilyKind),
    Level(u64),
}

impl Input {
    fn to_json(&self) -> Value {
        match self {
            Input::Traces { x, z } => json!({"traces": {"x": x.to_string(), "z": z.to_string()}}),
            Input::Family(k) => json!({"family": k.to_string()}),
            Input::Level(n) => json!({"n": n}),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    /// Every input source given; exactly one is allowed.
    pub inputs: Vec<Input>,
    pub x0: Vec<Rational64>,
    pub p: Option<u64>,
    pub ell: Option<u64>,
    pub target: Option<Target>,
    pub pmax: u64,
    pub precision: u32,
    pub bound: u64,
    /// Run lifts and congruences at every reduction step, not only the first.
    pub deep: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            inputs: vec![],
            x0: vec![],
            p: None,
            ell: None,
            target: None,
            pmax: 100,
            precision: 30,
            bound: DEFAULT_BOUND,
            deep: false,
        }
    }

    pub fn input(&self) -> Option<&Input> {
        self.inputs.first()
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |m: &str| Err(Error::Config(m.to_string()));
        match self.inputs.len() {
            0 => return cfg("no input given"),
            1 => {}
            _ => return cfg("conflicting inputs: give exactly one input source"),
        }
        if self.pmax == 0 || self.precision == 0 || self.bound == 0 {
            return cfg("pmax, precision and bound must be positive");
        }
        if matches!(self.p, Some(0)) || matches!(self.ell, Some(0)) {
            return cfg("p and ell must be positive");
        }
        if let Some(x) = self.x0.iter().find(|x| **x == Rational64::from_integer(0) || **x == Rational64::from_integer(1)) {
            return Err(Error::Config(format!("x0 = {x} is a degenerate fibre")));
        }
        let level = matches!(self.input(), Some(Input::Level(_)));
        match self.command {
            Command::Plan => {}
            _ if level => return cfg("--n is only accepted by plan"),
            Command::Count | Command::Congruence if self.x0.is_empty() => return cfg("at least one --x0 is required"),
            Command::Congruence if self.ell.is_none() || self.target.is_none() => {
                return cfg("congruence needs --ell and --target")
            }
            _ => {}
        }
        Ok(())
    }

    fn to_json(&self) -> Value {
        json!({
            "command": self.command.to_string(),
            "input": self.input().map(Input::to_json),
            "x0": self.x0.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "p": self.p,
            "ell": self.ell,
            "target": self.target.map(|t| t.to_string()),
            "pmax": self.pmax,
            "precision": self.precision,
            "bound": self.bound,
            "deep": self.deep,
        })
    }
}

/// Outcome of one pipeline stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "message", rename_all = "snake_case", deny_unknown_fields)]
pub enum Stage {
    Ok,
    Unsupported(String),
    Error(String),
}

impl Stage {
    fn from_err(e: &Error) -> Self {
        match e {
            Error::Unsupported(_) => Stage::Unsupported(e.to_string()),
            _ => Stage::Error(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub tool_version: String,
    pub config: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lifts: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counting: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub congruence: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordinary: Option<Value>,
    pub stages: BTreeMap<String, Stage>,
    /// 0 no negative verdict, 1 some congruence refuted, 2 some inconclusive.
    pub science_flag: u8,
}

impl Report {
    pub fn hard_error(&self) -> bool {
        self.stages.values().any(|s| matches!(s, Stage::Error(_)))
    }

    /// 0 ok, 2 stage error, 3 nonzero science flag under `strict`.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.hard_error() {
            2
        } else if strict && self.science_flag != 0 {
            3
        } else {
            0
        }
    }
}

/// Canonical bytes: sorted keys, two-space indent, trailing newline.
pub fn to_canonical_string(report: &Report) -> Result<String> {
    let v = serde_json::to_value(report)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn emit<W: Write>(report: &Report, out: &mut W) -> Result<()> {
    out.write_all(to_canonical_string(report)?.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Parse a report and check it against the schema.
pub fn parse_report(text: &str) -> Result<Report> {
    let r: Report = serde_json::from_str(text)?;
    check_schema(&r)?;
    Ok(r)
}

fn schema_err(m: impl Into<String>) -> Error {
    Error::Parse(format!("schema: {}", m.into()))
}

fn need<'a>(v: &'a Value, key: &str, ctx: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| schema_err(format!("{ctx} lacks `{key}`")))
}

/// Structural checks beyond what deserialization enforces.
pub fn check_schema(r: &Report) -> Result<()> {
    if r.science_flag > 2 {
        return Err(schema_err("science_flag must be 0, 1 or 2"));
    }
    for key in ["command", "input", "x0", "pmax", "precision", "bound", "deep"] {
        need(&r.config, key, "config")?;
    }
    if let Some(t) = &r.triple {
        for key in ["traces", "orders", "classes", "n", "ring", "kappa", "reflection", "eight_divides_n", "validation"] {
            need(t, key, "triple")?;
        }
    }
    if let Some(p) = &r.plan {
        for key in ["n", "steps", "terminal"] {
            need(p, key, "plan")?;
        }
    }
    if let Some(f) = &r.family {
        for key in ["kind", "genus", "polynomial", "fibres"] {
            need(f, key, "family")?;
        }
    }
    if let Some(c) = &r.counting {
        let fibres = c.as_array().ok_or_else(|| schema_err("counting must be a list"))?;
        for fib in fibres {
            need(fib, "x0", "counting entry")?;
            for row in need(fib, "rows", "counting entry")?.as_array().into_iter().flatten() {
                for key in ["p", "l_polynomial", "functional_equation", "weil_bound"] {
                    need(row, key, "counting row")?;
                }
            }
        }
    }
    if let Some(c) = &r.congruence {
        for entry in c.as_array().ok_or_else(|| schema_err("congruence must be a list"))? {
            if entry.get("error").is_some() {
                continue;
            }
            for key in ["ell", "residue", "x0", "prime_range", "mode", "per_prime", "verdict"] {
                need(entry, key, "congruence entry")?;
            }
            let v = need(entry, "verdict", "congruence entry")?.as_str().unwrap_or("");
            if !["verified", "refuted", "inconclusive"].contains(&v) {
                return Err(schema_err(format!("unknown verdict `{v}`")));
            }
        }
    }
    Ok(())
}

fn triple_block(t: &AdmissibleTriple, precision: u32) -> Value {
    let v = validate(t);
    let reflection = reflection_classify(&t.sigma[0], &t.sigma[1], &t.sigma[2])
        .map(|r| serde_json::to_value(r).expect("serializable"))
        .unwrap_or_else(|e| json!({"error": e.to_string()}));
    let embed = |e: &RingElement| -> Vec<String> {
        e.numeric_embeddings(precision).iter().map(|a| a.to_decimal_string()).collect()
    };
    json!({
        "traces": t.traces.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "sigma": t.sigma.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "orders": t.orders,
        "classes": t.classes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "n": t.n,
        "ring": {
            "n": t.spec.n(),
            "degree": t.spec.degree(),
            "min_poly": t.spec.min_poly(),
        },
        "kappa": t.kappa.to_string(),
        "kappa_zero": t.kappa.is_zero(),
        "reflection": reflection,
        "eight_divides_n": t.eight_divides_n(),
        "validation": {
            "pass": v.pass(),
            "violations": serde_json::to_value(&v.violations).expect("serializable"),
        },
        "numeric_embeddings": {
            "precision": precision,
            "x": embed(&t.traces[0]),
            "z": embed(&t.traces[2]),
        },
    })
}

fn plan_block(p: &ReductionPlan) -> Value {
    serde_json::to_value(p).expect("serializable")
}

fn family_block(f: &CurveFamily, x0s: &[Rational64]) -> Value {
    let rigidity = rigidity_decomposition(&disc_in_t(f))
        .map(|r| json!({"c": r.c.to_string(), "a": r.a, "b": r.b}));
    let fibres: Vec<Value> = x0s
        .iter()
        .map(|&x| match specialize(f, x) {
            Ok(c) => json!({
                "x0": x.to_string(),
                "polynomial": c.poly.to_string(),
                "genus": c.genus,
                "disc": c.disc.to_string(),
                "bad_primes": c.bad_primes,
                "unfactored": c.unfactored.as_ref().map(|u| u.to_string()),
            }),
            Err(e) => json!({"x0": x.to_string(), "error": e.to_string()}),
        })
        .collect();
    json!({
        "kind": f.kind.to_string(),
        "genus": f.genus(),
        "degree": f.degree(),
        "polynomial": f.render(),
        "ring_n": f.ring_spec.n(),
        "expected_traces": f.expected_traces.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "expected_orders": f.expected_orders(),
        "rigidity": rigidity,
        "fibres": fibres,
    })
}

/// Counting rows for one fibre; `only` restricts to a single prime.
fn counting_block(f: &CurveFamily, x0: Rational64, only: Option<u64>, cfg: &RunConfig) -> Result<Value> {
    let c = specialize(f, x0)?;
    let primes: Vec<u64> = match only {
        Some(p) => vec![p],
        None => primes_up_to(cfg.pmax).into_iter().filter(|&p| !c.is_bad(p)).collect(),
    };
    let rows: Vec<Result<Option<Value>>> = primes
        .par_iter()
        .map(|&p| {
            let l = match l_polynomial(&c, p, cfg.bound) {
                Ok(l) => l,
                Err(Error::BoundExceeded { .. }) if only.is_none() => return Ok(None),
                Err(e) => return Err(e),
            };
            let n1 = point_count(&c, p, 1, cfg.bound)?;
            Ok(Some(json!({
                "p": p,
                "points": n1,
                "l_polynomial": l.coeffs.iter().map(|&b| b as i64).collect::<Vec<_>>(),
                "functional_equation": l.functional_equation_holds(),
                "weil_bound": l.weil_bound_holds(1e-6),
                "round_trip": l.count(1) == n1 as i128,
            })))
        })
        .collect();
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for (p, r) in primes.iter().zip(rows) {
        match r? {
            Some(v) => out.push(v),
            None => skipped.push(*p),
        }
    }
    Ok(json!({
        "x0": x0.to_string(),
        "genus": c.genus,
        "rows": out,
        "skipped_over_bound": skipped,
    }))
}

fn congruence_value(r: &CongruenceReport) -> Value {
    serde_json::to_value(r).expect("serializable")
}

struct Run<'a> {
    cfg: &'a RunConfig,
    report: Report,
    verdicts: Vec<Verdict>,
}

impl Run<'_> {
    fn stage<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => {
                self.report.stages.insert(name.to_string(), Stage::Ok);
                Some(v)
            }
            Err(e) => {
                self.report.stages.insert(name.to_string(), Stage::from_err(&e));
                None
            }
        }
    }

    /// The triple (if the input has one) and the family.
    fn resolve(&mut self) -> (Option<AdmissibleTriple>, Option<CurveFamily>) {
        match self.cfg.input() {
            Some(Input::Traces { x, z }) => {
                let t = self.stage("triple", from_traces(x, z));
                let fam = t.as_ref().map(family_from_triple);
                let fam = fam.and_then(|r| self.stage("family", r));
                (t, fam)
            }
            Some(Input::Family(k)) => {
                let fam = self.stage("family", family_from_kind(*k));
                let t = fam.as_ref().and_then(|f| {
                    let t = from_traces(&f.expected_traces[0], &f.expected_traces[2]);
                    self.stage("triple", t)
                });
                (t, fam)
            }
            _ => (None, None),
        }
    }

    fn counting(&mut self, fam: &CurveFamily) {
        let blocks: Result<Vec<Value>> = self
            .cfg
            .x0
            .iter()
            .map(|&x| counting_block(fam, x, self.cfg.p, self.cfg))
            .collect();
        if let Some(b) = self.stage("counting", blocks) {
            self.report.counting = Some(Value::Array(b));
        }
    }

    fn congruences(&mut self, fam: &CurveFamily, target: Target, ell: u64, entries: &mut Vec<Value>) -> Result<()> {
        for &x in &self.cfg.x0 {
            let r = congruence_check(fam, target, x, ell, self.cfg.pmax, self.cfg.bound)?;
            self.verdicts.push(r.verdict);
            entries.push(congruence_value(&r));
        }
        Ok(())
    }

    fn analyze(&mut self) {
        let (t, fam) = self.resolve();
        if let Some(t) = &t {
            self.report.triple = Some(triple_block(t, self.cfg.precision));
            let v = validate(t);
            let st = if v.pass() {
                Stage::Ok
            } else {
                Stage::Error(format!(
                    "triple fails: {}",
                    v.violations.iter().map(|v| v.detail.clone()).collect::<Vec<_>>().join("; ")
                ))
            };
            self.report.stages.insert("validate".into(), st);
        }
        let n = match (&fam, &t) {
            (Some(f), _) => f.ring_spec.n(),
            (None, Some(t)) => t.n,
            (None, None) => return,
        };
        let plan = reduction_plan(n);
        self.report.plan = Some(plan_block(&plan));
        let plan_stage = match &plan.rejected_reason {
            Some(r) => Stage::Unsupported(r.clone()),
            None => Stage::Ok,
        };
        self.report.stages.insert("plan".into(), plan_stage);
        if let Some(f) = &fam {
            self.report.family = Some(family_block(f, &self.cfg.x0));
            if !self.cfg.x0.is_empty() {
                self.counting(f);
            }
        }

        let steps = if self.cfg.deep { plan.steps.len() } else { plan.steps.len().min(1) };
        let mut lifts = Vec::new();
        let mut entries = Vec::new();
        // orders and traces to lift, with their family when one is known
        let mut cur = match (&fam, &t) {
            (Some(f), _) => Some((f.expected_orders(), f.expected_traces.clone(), fam.clone())),
            (None, Some(t)) => Some((t.orders, t.traces.clone(), None)),
            (None, None) => None,
        };
        let mut lift_stage = Stage::Ok;
        let mut target_stage = Stage::Ok;
        let mut cong_stage = Stage::Ok;
        for step in &plan.steps[..steps] {
            let Some((orders, traces, f)) = cur.take() else { break };
            let lift = match lift_traces(orders, &traces, step.ell) {
                Ok(l) => l,
                Err(e) => {
                    lift_stage = Stage::from_err(&e);
                    break;
                }
            };
            lifts.push(json!({
                "ell": step.ell,
                "n": lift.n,
                "n_prime": lift.n_prime,
                "orders_prime": lift.orders_prime,
                "traces": lift.traces.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "residue": lift.residue.describe(),
                "residue_prime": lift.residue_prime.describe(),
                "kappa": lift.kappa.to_string(),
                "reducible": lift.reducible,
                "twisted": lift.twisted,
            }));
            let target = if lift.reducible {
                Ok((Target::Eisenstein, None))
            } else {
                family_from_traces(&lift.traces).map(|g| (Target::Curve(g.kind), Some(g)))
            };
            let (target, next) = match target {
                Ok(t) => t,
                Err(e) => {
                    target_stage = Stage::from_err(&e);
                    break;
                }
            };
            if !self.cfg.x0.is_empty() {
                let Some(f) = &f else {
                    cong_stage = Stage::Unsupported(format!(
                        "no supported family at level {}, so no fibres to compare",
                        step.n_before
                    ));
                    break;
                };
                if let Err(e) = self.congruences(f, target, step.ell, &mut entries) {
                    cong_stage = Stage::from_err(&e);
                    break;
                }
            }
            cur = match next {
                Some(g) => Some((g.expected_orders(), g.expected_traces.clone(), Some(g))),
                None if !lift.reducible => Some((lift.orders_prime, lift.traces.clone(), None)),
                None => None,
            };
        }
        if steps > 0 {
            self.report.stages.insert("lift".into(), lift_stage);
            self.report.stages.insert("target".into(), target_stage);
            self.report.lifts = Some(Value::Array(lifts));
            if !self.cfg.x0.is_empty() {
                self.report.stages.insert("congruence".into(), cong_stage);
                self.report.congruence = Some(Value::Array(entries));
            }
        }
        if !self.cfg.x0.is_empty() {
            let ord = ordinary_candidates(n, &self.cfg.x0);
            if let Some(c) = self.stage("ordinary", ord) {
                self.report.ordinary = Some(json!({
                    "n": n,
                    "candidates": c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }));
            }
        }
    }

    fn run(&mut self) {
        match self.cfg.command {
            Command::Plan => {
                let n = match self.cfg.input() {
                    Some(Input::Level(n)) => Some(*n),
                    _ => {
                        let (t, f) = self.resolve();
                        t.map(|t| t.n).or(f.map(|f| f.ring_spec.n()))
                    }
                };
                if let Some(n) = n {
                    let plan = reduction_plan(n);
                    self.report.plan = Some(plan_block(&plan));
                    self.report.stages.insert("plan".into(), Stage::Ok);
                }
            }
            Command::Triple => {
                let (t, fam) = self.resolve();
                if let Some(t) = &t {
                    self.report.triple = Some(triple_block(t, self.cfg.precision));
                }
                if let Some(f) = &fam {
                    self.report.family = Some(family_block(f, &[]));
                }
            }
            Command::Curve => {
                let (_, fam) = self.resolve();
                if let Some(f) = &fam {
                    self.report.family = Some(family_block(f, &self.cfg.x0));
                }
            }
            Command::Count => {
                let (_, fam) = self.resolve();
                if let Some(f) = &fam {
                    self.report.family = Some(family_block(f, &self.cfg.x0));
                    self.counting(f);
                }
            }
            Command::Congruence => {
                let (_, fam) = self.resolve();
                if let Some(f) = &fam {
                    self.report.family = Some(family_block(f, &self.cfg.x0));
                    let mut entries = Vec::new();
                    let target = self.cfg.target.expect("validated");
                    let ell = self.cfg.ell.expect("validated");
                    let r = self.congruences(f, target, ell, &mut entries);
                    self.stage("congruence", r);
                    self.report.congruence = Some(Value::Array(entries));
                }
            }
            Command::Analyze => self.analyze(),
        }
    }
}

/// Run the stages the command asks for. Stage failures are recorded in the
/// report; only an invalid configuration is returned as an error.
pub fn run_pipeline(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let mut run = Run {
        cfg,
        report: Report {
            tool_version: TOOL_VERSION.to_string(),
            config: cfg.to_json(),
            triple: None,
            plan: None,
            family: None,
            lifts: None,
            counting: None,
            congruence: None,
            ordinary: None,
            stages: BTreeMap::new(),
            science_flag: 0,
        },
        verdicts: vec![],
    };
    run.run();
    run.report.science_flag = if run.verdicts.contains(&Verdict::Refuted) {
        1
    } else if run.verdicts.contains(&Verdict::Inconclusive) {
        2
    } else {
        0
    };
    Ok(run.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam_cfg(cmd: Command, kind: &str, x0: &[i64]) -> RunConfig {
        let mut c = RunConfig::new(cmd);
        c.inputs.push(Input::Family(kind.parse().unwrap()));
        c.x0 = x0.iter().map(|&x| Rational64::from_integer(x)).collect();
        c
    }

    #[test]
    fn plan_for_eight() {
        let mut c = RunConfig::new(Command::Plan);
        c.inputs.push(Input::Level(8));
        let r = run_pipeline(&c).unwrap();
        let reason = r.plan.as_ref().unwrap()["rejected_reason"].as_str().unwrap();
        assert!(reason.contains("8 does not divide n"));
        assert!(r.counting.is_none());
        let s = to_canonical_string(&r).unwrap();
        assert!(!s.contains("\"counting\""));
        assert_eq!(r.exit_code(false), 0);
    }

    #[test]
    fn triple_from_traces() {
        let mut c = RunConfig::new(Command::Triple);
        c.inputs.push(Input::Traces {
            x: "[0]@12".parse().unwrap(),
            z: "[-1]@12".parse().unwrap(),
        });
        let r = run_pipeline(&c).unwrap();
        let t = r.triple.as_ref().unwrap();
        assert_eq!(t["orders"], json!([4, 1, 3]));
        assert_eq!(t["n"], json!(12));
        assert_eq!(r.family.as_ref().unwrap()["kind"], json!("j1728"));
    }

    #[test]
    fn config_errors() {
        let mut c = fam_cfg(Command::Count, "legendre", &[]);
        assert!(matches!(run_pipeline(&c), Err(Error::Config(_))));
        c.x0 = vec![Rational64::from_integer(1)];
        assert!(matches!(run_pipeline(&c), Err(Error::Config(_))));
        let mut c = fam_cfg(Command::Triple, "legendre", &[]);
        c.inputs.push(Input::Level(6));
        assert!(matches!(run_pipeline(&c), Err(Error::Config(_))));
    }

    #[test]
    fn count_bad_prime_is_stage_error() {
        let mut c = fam_cfg(Command::Count, "legendre", &[3]);
        c.p = Some(3);
        let r = run_pipeline(&c).unwrap();
        assert!(matches!(r.stages["counting"], Stage::Error(_)));
        assert_eq!(r.exit_code(false), 2);
    }

    #[test]
    fn round_trip_is_identity() {
        let mut c = fam_cfg(Command::Count, "ttv-even:5", &[2, 3]);
        c.pmax = 40;
        let r = run_pipeline(&c).unwrap();
        let s = to_canonical_string(&r).unwrap();
        let back = parse_report(&s).unwrap();
        assert_eq!(to_canonical_string(&back).unwrap(), s);
    }

    #[test]
    fn schema_rejects_bad_verdict() {
        let mut c = fam_cfg(Command::Plan, "legendre", &[]);
        c.inputs = vec![Input::Level(10)];
        let mut r = run_pipeline(&c).unwrap();
        r.congruence = Some(json!([{"ell": 5, "residue": "", "x0": "2", "prime_range": 10, "mode": "m", "per_prime": [], "verdict": "maybe"}]));
        assert!(check_schema(&r).is_err());
        r.science_flag = 7;
        assert!(check_schema(&r).is_err());
    }

    #[test]
    fn science_flag_and_strict() {
        let mut r = run_pipeline(&{
            let mut c = RunConfig::new(Command::Plan);
            c.inputs.push(Input::Level(10));
            c
        })
        .unwrap();
        r.science_flag = 2;
        assert_eq!(r.exit_code(false), 0);
        assert_eq!(r.exit_code(true), 3);
    }
}
