//! The `grmin` command line.
//!
//! Exit codes: 0 on a true verdict or a successful construction, 1 on a false
//! verdict, 2 on usage and validation errors. Data goes to `out`, progress to `err`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bounds::{bound_report, exhaustive_k2_search};
use crate::budget::Budget;
use crate::codes::{
    build_code, is_minimal_code_bruteforce, is_minimal_code_criterion, is_minimal_codeword_criterion, LinearCode,
    MinimalityReport, Scope,
};
use crate::constructions::{
    build_cf, canonical_f, check_conditions, lambda0, ConditionFamily, DomainMode, Family, FunctionTable, MonomialPoly,
    WitnessOutcome, WitnessSearch, WitnessSource,
};
use crate::error::{Error, Result};
use crate::format::{function_to_json, read_grcode, write_grcode};
use crate::linalg::{all_vectors, is_root_word, module_size, vector_from_index};
use crate::ring::GaloisRing;

#[derive(Parser, Debug)]
#[command(name = "grmin", version, about = "Minimal linear codes over Galois rings")]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RingArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    ell: usize,
    /// Basic irreducible polynomial, coefficients c0,...,c_ell (monic).
    #[arg(long, value_delimiter = ',')]
    h: Option<Vec<u64>>,
}

impl RingArgs {
    fn ring(&self) -> Result<Arc<GaloisRing>> {
        Ok(Arc::new(GaloisRing::new(self.p, self.n, self.ell, self.h.as_deref())?))
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ConstructFamily {
    Lambda0,
    Thm43,
    Thm46,
    Poly,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum CfFamily {
    Thm43,
    Thm46,
    Poly,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Criterion,
    Bruteforce,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ScopeArg {
    All,
    Root,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::All => Scope::AllNonzero,
            ScopeArg::Root => Scope::RootWordsOnly,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ring census, Teichmuller set and descriptor.
    Ring {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        json: bool,
    },
    /// Build a code and write it as a GRCODE file.
    Construct {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum)]
        family: ConstructFamily,
        #[arg(long)]
        m: usize,
        /// Monomial polynomial for `--family poly`, e.g. "x1*x2*x3 + x4*x5*x6".
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        restrict_rootwords: bool,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the code in a GRCODE file is minimal.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "criterion")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "all")]
        scope: ScopeArg,
        /// Check only this many random nonzero messages (criterion only).
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Build the code C_f from a canonical function and optionally check it.
    Cf {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum)]
        family: CfFamily,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        restrict_rootwords: bool,
        /// Minimality check to run on the built code.
        #[arg(long, value_enum)]
        check: Option<MethodArg>,
        /// Evaluate the family's hypotheses on f.
        #[arg(long)]
        conditions: bool,
        /// Find the characterizing family of vectors for every root word.
        #[arg(long)]
        witnesses: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Length lower bound and closed-form lengths, as JSON.
    Bounds {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        m: usize,
    },
    /// Shortest minimal code of dimension 2 by exhaustive search.
    SearchK2 {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        k_max: usize,
        /// Write the witness code here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Parse a GRCODE file and check that it re-serializes byte for byte.
    VerifyFile {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                // The pool's closure must be Send, so buffer and copy out afterwards.
                let (mut o, mut e) = (Vec::new(), Vec::new());
                let r = pool.install(|| dispatch(cli.command, &mut o, &mut e));
                let _ = out.write_all(&o);
                let _ = err.write_all(&e);
                r
            }
            Err(e) => Err(Error::InvalidParameter(format!("--threads {n}: {e}"))),
        },
        None => dispatch(cli.command, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("json"))?;
    Ok(())
}

fn verdict_code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn domain(restrict: bool) -> DomainMode {
    if restrict {
        DomainMode::RootWordsOnly
    } else {
        DomainMode::AllNonzero
    }
}

fn function(
    ring: Arc<GaloisRing>,
    family: CfFamily,
    m: usize,
    poly: Option<&str>,
    restrict: bool,
) -> Result<FunctionTable> {
    let family = match (family, poly) {
        (CfFamily::Thm43, _) => Family::Thm43,
        (CfFamily::Thm46, _) => Family::Thm46,
        (CfFamily::Poly, Some(text)) => Family::Poly(MonomialPoly::parse(&ring, m, text)?),
        (CfFamily::Poly, None) => return Err(Error::InvalidParameter("--family poly needs --poly".into())),
    };
    canonical_f(ring, family, m, domain(restrict))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

fn load(path: &Path) -> Result<LinearCode> {
    let text = std::fs::read_to_string(path)?;
    let (ring, gens) = read_grcode(&text)?;
    build_code(ring, gens)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let budget = Budget::from_env()?;
    match command {
        Command::Ring { ring, json } => ring_cmd(&*ring.ring()?, json, out),
        Command::Construct { ring, family, m, poly, restrict_rootwords, out: path, json } => {
            let ring = ring.ring()?;
            let gens = match family {
                ConstructFamily::Lambda0 => lambda0(&ring, m)?,
                ConstructFamily::Thm43 | ConstructFamily::Thm46 | ConstructFamily::Poly => {
                    let cf = match family {
                        ConstructFamily::Thm43 => CfFamily::Thm43,
                        ConstructFamily::Thm46 => CfFamily::Thm46,
                        _ => CfFamily::Poly,
                    };
                    build_cf(&function(ring.clone(), cf, m, poly.as_deref(), restrict_rootwords)?)?
                }
            };
            let code = build_code(ring.clone(), gens)?;
            writeln!(err, "built [{}, {}] code over {}", code.k(), code.m(), ring.descriptor())?;
            let text = write_grcode(&ring, code.gens());
            match &path {
                Some(p) => write_file(p, &text)?,
                None if !json => out.write_all(text.as_bytes())?,
                None => {}
            }
            if json {
                let mut v = json!({
                    "ring": ring.descriptor(),
                    "m": code.m(),
                    "k": code.k(),
                    "out": path.as_ref().map(|p| p.display().to_string()),
                });
                if path.is_none() {
                    v["grcode"] = json!(text);
                }
                emit(out, &v)?;
            }
            Ok(0)
        }
        Command::Check { input, method, scope, sample, seed, json } => {
            let code = load(&input)?;
            writeln!(err, "checking [{}, {}] code over {}", code.k(), code.m(), code.ring().descriptor())?;
            if let Some(count) = sample {
                return sample_cmd(&code, count, seed, json, out);
            }
            let reports = run_checks(&code, method, scope.into(), &budget)?;
            report_checks(&code, &reports, json, out)
        }
        Command::Cf { ring, family, m, poly, restrict_rootwords, check, conditions, witnesses, out: path, json } => {
            let ring = ring.ring()?;
            let f = function(ring.clone(), family, m, poly.as_deref(), restrict_rootwords)?;
            writeln!(err, "building C_f for {} over {} (m = {m})", f.family_name(), ring.descriptor())?;
            let code = build_code(ring.clone(), build_cf(&f)?)?;
            if let Some(p) = &path {
                write_file(p, &write_grcode(&ring, code.gens()))?;
            }
            let mut ok = true;
            let mut report = json!({
                "function": function_to_json(&f),
                "length": code.k(),
                "dimension": code.m(),
            });
            if ring.q() < 4 && family == CfFamily::Thm46 {
                report["note"] = json!("q < 4: thm46 is used without the q > 3 requirement of thm43");
            }
            if conditions {
                let cf = match family {
                    CfFamily::Thm43 => ConditionFamily::Thm43,
                    CfFamily::Thm46 => ConditionFamily::Thm46,
                    CfFamily::Poly => ConditionFamily::Poly,
                };
                let rep = check_conditions(&f, cf);
                ok &= rep.passed();
                report["conditions"] = rep
                    .conditions
                    .iter()
                    .map(|c| {
                        json!({
                            "name": c.name,
                            "passed": c.passed,
                            "counterexample": c.counterexample.as_ref().map(|v| literals(&ring, v)),
                        })
                    })
                    .collect();
            }
            if witnesses {
                writeln!(err, "searching witnesses for every root word of R^{}", m + 1)?;
                let w = witness_sweep(&f, &budget)?;
                ok &= w["missing"].as_array().is_some_and(|a| a.is_empty());
                report["witnesses"] = w;
            }
            if let Some(method) = check {
                writeln!(err, "checking minimality of the [{}, {}] code", code.k(), code.m())?;
                let reports = run_checks(&code, method, Scope::AllNonzero, &budget)?;
                ok &= reports.iter().all(|r| r.verdict);
                report["check"] = checks_json(&code, &reports);
            }
            report["verdict"] = json!(ok);
            if json {
                emit(out, &report)?;
            } else {
                writeln!(out, "C_f: [{}, {}] code over {}", code.k(), code.m(), ring.descriptor())?;
                if let Some(c) = report.get("conditions").and_then(Value::as_array) {
                    for c in c {
                        writeln!(
                            out,
                            "condition {}: {}",
                            c["name"].as_str().unwrap_or(""),
                            pass(c["passed"].as_bool())
                        )?;
                    }
                }
                if let Some(w) = report.get("witnesses") {
                    writeln!(
                        out,
                        "witnesses: {} of {} root words ({} by recipe)",
                        w["found"], w["total"], w["recipe"]
                    )?;
                }
                if let Some(c) = report.get("check") {
                    writeln!(out, "minimal: {}", c["verdict"])?;
                }
            }
            Ok(verdict_code(ok))
        }
        Command::Bounds { ring, m } => {
            let ring = ring.ring()?;
            emit(out, &serde_json::to_value(bound_report(&ring, m)?).expect("json"))?;
            Ok(0)
        }
        Command::SearchK2 { ring, k_max, out: path, json } => {
            let ring = ring.ring()?;
            writeln!(err, "searching lengths 2..={k_max} over {}", ring.descriptor())?;
            let res = exhaustive_k2_search(&ring, k_max, &budget)?;
            if let (Some((_, gens)), Some(p)) = (&res.found, &path) {
                write_file(p, &write_grcode(&ring, gens))?;
            }
            let columns =
                res.found.as_ref().map(|(_, g)| g.columns().iter().map(|c| literals(&ring, c)).collect::<Vec<_>>());
            let v = json!({
                "ring": ring.descriptor(),
                "k_max": k_max,
                "k": res.found.as_ref().map(|(k, _)| k),
                "excluded": res.excluded,
                "examined": res.examined,
                "columns": columns,
            });
            if json {
                emit(out, &v)?;
            } else {
                match &res.found {
                    Some((k, _)) => writeln!(out, "k(2) = {k}; lengths {:?} admit no minimal code", res.excluded)?,
                    None => writeln!(out, "no minimal code of length <= {k_max}")?,
                }
            }
            Ok(verdict_code(res.found.is_some()))
        }
        Command::VerifyFile { input, json } => {
            let text = std::fs::read_to_string(&input)?;
            let (ring, gens) = read_grcode(&text)?;
            let rewritten = write_grcode(&ring, &gens);
            let identical = rewritten == text;
            let code = build_code(ring.clone(), gens)?;
            if json {
                emit(out, &json!({ "ring": ring.descriptor(), "m": code.m(), "k": code.k(), "identical": identical }))?;
            } else {
                writeln!(
                    out,
                    "{}: [{}, {}] over {}, round trip {}",
                    input.display(),
                    code.k(),
                    code.m(),
                    ring.descriptor(),
                    if identical { "identical" } else { "differs" }
                )?;
            }
            Ok(verdict_code(identical))
        }
    }
}

fn pass(b: Option<bool>) -> &'static str {
    if b == Some(true) {
        "pass"
    } else {
        "FAIL"
    }
}

fn literals(ring: &GaloisRing, v: &[crate::ring::Elem]) -> Vec<String> {
    v.iter().map(|&x| ring.format_elem(x)).collect()
}

fn ring_cmd(ring: &GaloisRing, json: bool, out: &mut dyn Write) -> Result<i32> {
    let census = ring.census();
    let teich = literals(ring, ring.teichmuller());
    if json {
        emit(
            out,
            &json!({
                "descriptor": ring.descriptor(),
                "q": ring.q(),
                "size": census.size,
                "units": census.units,
                "zero_divisors": census.zero_divisors,
                "valuation_classes": census.valuation_classes,
                "teichmuller": teich,
                "teichmuller_generator": ring.format_elem(ring.teich_generator()),
            }),
        )?;
    } else {
        writeln!(out, "{}", ring.descriptor())?;
        writeln!(out, "size {}, units {}, nonzero zero divisors {}", census.size, census.units, census.zero_divisors)?;
        for (r, c) in census.valuation_classes.iter().enumerate() {
            writeln!(out, "valuation {}: {c}", r + 1)?;
        }
        writeln!(out, "teichmuller: {}", teich.join(" "))?;
    }
    Ok(0)
}

fn run_checks(code: &LinearCode, method: MethodArg, scope: Scope, budget: &Budget) -> Result<Vec<MinimalityReport>> {
    let mut reports = Vec::new();
    if matches!(method, MethodArg::Criterion | MethodArg::Both) {
        reports.push(is_minimal_code_criterion(code, scope)?);
    }
    if matches!(method, MethodArg::Bruteforce | MethodArg::Both) {
        reports.push(is_minimal_code_bruteforce(code, budget)?);
    }
    Ok(reports)
}

/// A single report as-is; several as `{verdict, agree, reports}`.
fn checks_json(code: &LinearCode, reports: &[MinimalityReport]) -> Value {
    let ring = code.ring();
    if let [one] = reports {
        return one.to_json(ring);
    }
    json!({
        "verdict": reports.iter().all(|r| r.verdict),
        "agree": reports.windows(2).all(|w| w[0].verdict == w[1].verdict),
        "reports": reports.iter().map(|r| r.to_json(ring)).collect::<Vec<_>>(),
    })
}

fn report_checks(code: &LinearCode, reports: &[MinimalityReport], json: bool, out: &mut dyn Write) -> Result<i32> {
    let ok = reports.iter().all(|r| r.verdict);
    if json {
        emit(out, &checks_json(code, reports))?;
    } else {
        for r in reports {
            writeln!(
                out,
                "{}: minimal = {} ({} messages, {} ms)",
                r.method,
                r.verdict,
                r.checked,
                r.elapsed.as_millis()
            )?;
            for w in &r.witnesses {
                writeln!(out, "  not minimal at ({}): {}", literals(code.ring(), &w.message).join(","), w.reason)?;
            }
        }
        if reports.len() > 1 {
            let agree = reports.windows(2).all(|w| w[0].verdict == w[1].verdict);
            writeln!(out, "methods agree: {agree}")?;
        }
    }
    Ok(verdict_code(ok))
}

fn sample_cmd(code: &LinearCode, count: u64, seed: u64, json: bool, out: &mut dyn Write) -> Result<i32> {
    let ring = code.ring();
    let total = module_size(ring, code.m());
    let space = u64::try_from(total - 1).map_err(|_| Error::InvalidParameter("message space too large".into()))?;
    let count = count.min(space);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks: Vec<u64> =
        sample(&mut rng, space as usize, count as usize).into_iter().map(|i| i as u64 + 1).collect();
    picks.sort_unstable();
    let mut failures = Vec::new();
    for &index in &picks {
        let v = vector_from_index(ring, code.m(), index);
        if !is_minimal_codeword_criterion(ring, &v, code.gens())? {
            failures.push(literals(ring, &v));
        }
    }
    let ok = failures.is_empty();
    if json {
        emit(
            out,
            &json!({ "verdict": ok, "method": "criterion", "sampled": count, "seed": seed, "failures": failures }),
        )?;
    } else {
        writeln!(out, "criterion on {count} sampled messages (seed {seed}): minimal = {ok}")?;
        for f in &failures {
            writeln!(out, "  not minimal at ({})", f.join(","))?;
        }
    }
    Ok(verdict_code(ok))
}

/// Witnesses for every root word `(first, rest)` of `R^{m+1}`.
fn witness_sweep(f: &FunctionTable, budget: &Budget) -> Result<Value> {
    use rayon::prelude::*;
    let ring = f.ring();
    let search = WitnessSearch::new(f, budget)?;
    let words: Vec<_> = all_vectors(ring, f.m() + 1).filter(|v| is_root_word(ring, v)).collect();
    let outcomes: Vec<Result<WitnessOutcome>> = words.par_iter().map(|w| search.witness(w[0], &w[1..])).collect();
    let (mut recipe, mut searched) = (0u64, 0u64);
    let mut missing = Vec::new();
    for (w, outcome) in words.iter().zip(outcomes) {
        match outcome? {
            WitnessOutcome::Found(found) => match found.source {
                WitnessSource::Recipe => recipe += 1,
                WitnessSource::Search => searched += 1,
            },
            WitnessOutcome::NotFound { tag, rank } => {
                missing.push(json!({ "v": literals(ring, w), "type": tag.to_string(), "rank": rank }))
            }
        }
    }
    Ok(json!({
        "total": words.len(),
        "found": recipe + searched,
        "recipe": recipe,
        "search": searched,
        "missing": missing,
    }))
}
