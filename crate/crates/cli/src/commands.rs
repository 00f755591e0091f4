//! Command implementations. Each returns a [`Report`] carrying the text
//! output, its JSON form and whether the command's check passed.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use waring_core::bsets::{bset_stats, extract_bset, reduce, stabilize_with, BSet};
use waring_core::heur::{expected_coincidences, exponent_E, volume, Coincidences, HeuristicModel, Method, Verdict};
use waring_core::nstar::{search_and_verify, CandidateStatus};
use waring_core::repfind::{find_representation, PruneTable, SearchOptions, SearchOutcome, DEFAULT_PRUNE_DEPTH};
use waring_core::sieve::{sieve_at_most_with, sieve_exact_with};
use waring_core::known_bounds;

use crate::bfile::{parse_bfile, parse_decimal_lines};
use crate::config::Config;
use crate::{sievefile, CliError, Result, EXIT_MISMATCH, EXIT_OK};

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    fn new(text: String, json: Value, ok: bool) -> Self {
        Report { text, json, ok }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("reports serialize")
        } else {
            self.text.clone()
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            EXIT_OK
        } else {
            EXIT_MISMATCH
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetMeta {
    pub k: u32,
    pub j: u32,
    pub limit: u64,
    pub complete: bool,
    pub count: usize,
    pub max: Option<u64>,
}

impl SetMeta {
    pub fn of(b: &BSet) -> Self {
        SetMeta {
            k: b.k,
            j: b.j,
            limit: b.limit,
            complete: b.complete,
            count: b.len(),
            max: b.max(),
        }
    }
}

fn set_json(b: &BSet) -> Value {
    let mut v = serde_json::to_value(SetMeta::of(b)).expect("meta serializes");
    v["elements"] = json!(b.elements);
    v
}

fn lines(values: &[u64]) -> String {
    values.iter().map(|v| format!("{v}\n")).collect()
}

fn braces(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

pub fn default_sieve_path(cfg: &Config, k: u32, j: u32, limit: u64) -> PathBuf {
    cfg.cache_dir.join(format!("sieve-k{k}-j{j}-n{limit}.wrs"))
}

pub fn sieve(cfg: &Config, k: u32, j: u32, limit: u64, out: Option<&Path>) -> Result<Report> {
    let s = sieve_exact_with(k, j, limit, &cfg.sieve_config())?;
    let path = out.map(Path::to_path_buf).unwrap_or_else(|| default_sieve_path(cfg, k, j, limit));
    sievefile::save(&path, &s)?;
    let b = extract_bset(&s);
    let meta = SetMeta::of(&b);
    let text = format!(
        "wrote {}: k={k} j={j} limit={limit} non-representable={} max={}\n",
        path.display(),
        meta.count,
        meta.max.map_or("-".to_string(), |m| m.to_string())
    );
    let mut v = serde_json::to_value(meta).expect("meta serializes");
    v["path"] = json!(path);
    Ok(Report::new(text, v, true))
}

pub fn read_base(path: &Path, k: u32, limit: u64) -> Result<BSet> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let elems = parse_decimal_lines(&text)?;
    let limit = limit.max(elems.iter().max().map_or(0, |m| m + 1));
    Ok(BSet::new(k, 0, limit, elems, true)?)
}

/// `B_j^k` below `limit`, or with a base `B^k` the tail `B̄_j^k`.
pub fn bset(cfg: &Config, k: u32, j: u32, limit: u64, base: Option<&Path>) -> Result<Report> {
    let b = extract_bset(&sieve_exact_with(k, j, limit, &cfg.sieve_config())?);
    let out = match base {
        None => b,
        Some(p) => reduce(&b, &read_base(p, k, limit)?)?,
    };
    Ok(Report::new(lines(&out.elements), set_json(&out), true))
}

pub fn stabilize(cfg: &Config, k: u32, limit: u64, jmax: u32) -> Result<Report> {
    let st = stabilize_with(k, limit, jmax, &cfg.sieve_config())?;
    let Some(res) = st.result else {
        let last = st.last_verdict.map_or("none".to_string(), |v| format!("j={} m={}", v.j, v.m));
        let text = format!(
            "k={k} limit={limit}: not stabilized by j={jmax} (last conclusive test: {last})\n"
        );
        let v = json!({ "k": k, "limit": limit, "jmax": jmax, "stabilized": false,
                        "last_verdict_j": st.last_verdict.map(|v| v.j) });
        return Ok(Report::new(text, v, false));
    };
    let report = bset_stats(&res.base)?;
    let v = res.verdict;
    let text = format!(
        "k={k} limit={limit}: stabilized at j={}\n\
         m={} floors {} = {}\n\
         B^{k} = {}\n\
         a_{k}={} b_{k}={}\n",
        res.j,
        v.m,
        v.lhs_floor,
        v.rhs_floor,
        braces(&res.base.elements),
        report.stats.a,
        report.stats.b,
    );
    let mut j = set_json(&res.base);
    j["stabilized"] = json!(true);
    j["stabilized_at"] = json!(res.j);
    j["m"] = json!(v.m);
    j["condition1"] = json!(v.condition1);
    j["condition2"] = json!(v.condition2);
    j["lhs_floor"] = json!(v.lhs_floor);
    j["rhs_floor"] = json!(v.rhs_floor);
    j["a"] = json!(report.stats.a);
    j["b"] = json!(report.stats.b);
    j["sizemax"] = json!(report.sizemax);
    Ok(Report::new(text, j, true))
}

pub fn repr(cfg: &Config, n: u64, j: u32, k: u32, prune: bool, parallel: bool) -> Result<Report> {
    let table = if prune {
        let limit = n.checked_add(1).ok_or_else(|| CliError::Usage("n too large".into()))?;
        Some(PruneTable::build_with(k, DEFAULT_PRUNE_DEPTH, limit, &cfg.sieve_config())?)
    } else {
        None
    };
    let opts = SearchOptions {
        prune: table.as_ref(),
        node_budget: cfg.node_budget,
        parallel,
    };
    let (text, v, ok) = match find_representation(n, j, k, &opts)? {
        SearchOutcome::Found(r) => (
            format!("{r}\n"),
            json!({ "n": n, "j": j, "k": k, "found": true, "parts": r.parts() }),
            true,
        ),
        SearchOutcome::NotRepresentable => (
            "none\n".to_string(),
            json!({ "n": n, "j": j, "k": k, "found": false }),
            true,
        ),
        SearchOutcome::BudgetExhausted { nodes } => (
            format!("inconclusive: search budget of {nodes} nodes exhausted\n"),
            json!({ "n": n, "j": j, "k": k, "found": null, "nodes": nodes }),
            false,
        ),
    };
    Ok(Report::new(text, v, ok))
}

/// Default verification range: up to the tabulated G(k)+d, else four stages.
pub fn default_nstar_jmax(k: u32, d: u32) -> u32 {
    match known_bounds(k) {
        Ok(b) => b.big_g.value as u32 + d,
        Err(_) => d + 3,
    }
}

pub fn nstar(cfg: &Config, k: u32, d: u32, lo: u64, hi: u64, jmax: Option<u32>) -> Result<Report> {
    let jmax = jmax.unwrap_or_else(|| default_nstar_jmax(k, d));
    if jmax < d {
        return Err(CliError::Usage(format!("jmax {jmax} is below d {d}")));
    }
    let opts = SearchOptions {
        node_budget: cfg.node_budget,
        ..SearchOptions::default()
    };
    let reports = search_and_verify(k, d, lo, hi, jmax, &opts)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &reports {
        let (status, detail) = match &r.status {
            CandidateStatus::Verified(_) => ("verified", format!("j={d}..{jmax}")),
            CandidateStatus::Failed { j } => ("failed", format!("no representation with j={j}")),
            CandidateStatus::Inconclusive { j } => ("inconclusive", format!("budget exhausted at j={j}")),
        };
        text.push_str(&format!("{} {status} {detail}\n", r.n));
        let reps: Vec<Vec<u64>> = match &r.status {
            CandidateStatus::Verified(c) => c.representations.iter().map(|x| x.parts().to_vec()).collect(),
            _ => Vec::new(),
        };
        rows.push(json!({ "n": r.n, "status": status, "stages": r.stages,
                          "verified_through": r.verified_through, "representations": reps }));
    }
    let first = reports.iter().find(|r| r.is_verified());
    match first.map(|r| &r.status) {
        Some(CandidateStatus::Verified(c)) => {
            text.push_str(&format!("minimal verified n* = {}\n", c.nstar));
            for (i, rep) in c.representations.iter().enumerate() {
                text.push_str(&format!("  j={}: {rep}\n", c.d + i as u32));
            }
        }
        _ => text.push_str(&format!("no verified candidate in ({lo}, {hi})\n")),
    }
    let v = json!({ "k": k, "d": d, "lo": lo, "hi": hi, "jmax": jmax,
                    "minimal": first.map(|r| r.n), "candidates": rows });
    Ok(Report::new(text, v, first.is_some()))
}

pub fn heur_volume(cfg: &Config, j: u32, k: u32, monte_carlo: bool) -> Result<Report> {
    let method = if monte_carlo {
        Method::MonteCarlo { samples: cfg.samples, seed: cfg.seed }
    } else {
        Method::Quadrature
    };
    let e = volume(j, k, method, cfg.tolerance)?;
    let (name, extra) = match method {
        Method::Quadrature => ("quadrature", String::new()),
        Method::MonteCarlo { samples, seed } => ("monte-carlo", format!(" samples={samples} seed={seed}")),
    };
    let text = format!("V({j},{k}) = {:.12} error {:.3e} ({name}{extra})\n", e.value, e.error);
    let mut v = json!({ "j": j, "k": k, "value": e.value, "error": e.error, "method": name });
    if let Method::MonteCarlo { samples, seed } = method {
        v["samples"] = json!(samples);
        v["seed"] = json!(seed);
    }
    Ok(Report::new(text, v, true))
}

pub fn heur_density(cfg: &Config, n: f64, j: u32, k: u32) -> Result<Report> {
    let m = HeuristicModel::new(k, &[j], Method::Quadrature, cfg.tolerance)?;
    let c = m.density_constant(j)?;
    let p = m.density(n, j)?;
    let text = format!("P(n={n:e}, j={j}, k={k}) = {p:.6e} = {c:.6} * n^({j}/{k} - 1)\n");
    let v = json!({ "n": n, "j": j, "k": k, "constant": c, "density": p });
    Ok(Report::new(text, v, true))
}

pub fn heur_expect(cfg: &Config, b: f64, k: u32, js: &[u32]) -> Result<Report> {
    let m = HeuristicModel::new(k, js, Method::Quadrature, cfg.tolerance)?;
    let pairs: Vec<(u32, u32)> = js.iter().map(|&j| (j, k)).collect();
    let e = exponent_E(&pairs)?;
    let verdict = match e.verdict {
        Verdict::FiniteExpected => "finite",
        Verdict::Logarithmic => "logarithmic",
        Verdict::Infinite => "infinite",
    };
    let c = expected_coincidences(b, &pairs, &m)?;
    let (constant, value) = match c {
        Coincidences::Finite { value, constant, .. } => (constant, Some(value)),
        Coincidences::LogDivergent { constant } | Coincidences::Divergent { constant, .. } => (constant, None),
    };
    let text = format!(
        "E = {} ({verdict})\nC = {constant:.6e}\nexpected above b={b:e}: {}\n",
        e.value,
        value.map_or("divergent".to_string(), |x| format!("{x:.6e}"))
    );
    let v = json!({ "b": b, "k": k, "js": js, "exponent": e.value.to_string(), "verdict": verdict,
                    "constant": constant, "expected": value });
    Ok(Report::new(text, v, true))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OeisOutcome {
    Match { compared: usize },
    Mismatch { position: usize, bfile: Option<u64>, computed: Option<u64> },
}

/// Compares two sorted lists of values and returns the first disagreement.
pub fn compare_values(bfile: &[u64], computed: &[u64]) -> OeisOutcome {
    let n = bfile.len().max(computed.len());
    for i in 0..n {
        let (a, c) = (bfile.get(i).copied(), computed.get(i).copied());
        if a != c {
            return OeisOutcome::Mismatch { position: i, bfile: a, computed: c };
        }
    }
    OeisOutcome::Match { compared: n }
}

pub fn verify_oeis(cfg: &Config, path: &Path, k: u32, j: u32, limit: u64, at_most: bool) -> Result<Report> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let entries = parse_bfile(&text)?;
    let expected: Vec<u64> = entries.iter().map(|e| e.value).filter(|&v| v > 0 && v < limit).collect();
    if expected.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Format("b-file values are not strictly increasing".into()));
    }
    let computed: Vec<u64> = if at_most {
        sieve_at_most_with(k, j, limit, &cfg.sieve_config())?.non_representable().collect()
    } else {
        sieve_exact_with(k, j, limit, &cfg.sieve_config())?.non_representable().collect()
    };
    let last = entries.last().map(|e| e.value);
    let outcome = compare_values(&expected, &computed);
    let (text, ok) = match outcome {
        OeisOutcome::Match { compared } => (format!("match below {limit} ({compared} values)\n"), true),
        OeisOutcome::Mismatch { position, bfile, computed } => {
            let show = |x: Option<u64>| x.map_or("nothing".to_string(), |v| v.to_string());
            let mut t = format!(
                "mismatch at position {position}: b-file has {}, computed {}\n",
                show(bfile),
                show(computed)
            );
            if bfile.is_none() && last.is_some_and(|l| l < limit) {
                t.push_str(&format!("note: b-file ends at {} below the limit\n", last.unwrap()));
            }
            (t, false)
        }
    };
    let v = match outcome {
        OeisOutcome::Match { compared } => json!({ "k": k, "j": j, "limit": limit, "at_most": at_most,
                                                   "match": true, "count": compared }),
        OeisOutcome::Mismatch { position, bfile, computed } => json!({ "k": k, "j": j, "limit": limit,
            "at_most": at_most, "match": false, "position": position, "bfile": bfile, "computed": computed }),
    };
    Ok(Report::new(text, v, ok))
}
