//! The end-to-end run: word → factor language → monomial growth and center
//! → commutator dimensions and quarter bounds → groupoid φ checks and
//! filtration growth → q-dimension estimates of the growth series.
//!
//! Every table written to the output directory is also listed in
//! `summary.json` under the operation that produced it, with its parameters.

use std::path::{Path, PathBuf};

use liegrowth::groupoid::{
    filtration_growth, phi_commutator_dims, phi_multiplicativity_failures, phi_rank, truncated_center_check, Groupoid,
};
use liegrowth::liecomm::{commutator_dims, verify_quarter_bound};
use liegrowth::monomial::MonomialAlgebra;
use liegrowth::qdim::{dim_estimate_series, dyadic_reals, verify_corollary_61, DimEstimate};
use liegrowth::regularize::GrowthSeries;
use liegrowth::words::cache::FactorCache;
use liegrowth::words::{factor_language, factor_language_stable, library, sigma_bounds, sigma_reduce, FactorLanguage};
use liegrowth::{Error, Exec};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::PipelineConfig;
use crate::error::{at, CliError, CliResult};
use crate::plot::{Chart, Series};
use crate::table::{opt, Table};

pub const SUMMARY_SCHEMA: &str = "liegrowth/summary/v1";

/// Center dimensions of the groupoid algebra are checked up to this level.
pub const CENTER_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub stage: &'static str,
    /// Failed asserted checks make the run fail; the others are recorded.
    pub asserted: bool,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Operation {
    pub stage: &'static str,
    pub operation: &'static str,
    pub params: Value,
    pub outputs: Vec<String>,
    pub result: Value,
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub dir: PathBuf,
    /// Files written, relative to `dir`, in order.
    pub files: Vec<String>,
    pub operations: Vec<Operation>,
    pub checks: Vec<Check>,
}

impl PipelineOutcome {
    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.asserted && !c.pass).collect()
    }

    pub fn passed(&self) -> bool {
        self.failed_checks().is_empty()
    }
}

struct Run {
    dir: PathBuf,
    files: Vec<String>,
    operations: Vec<Operation>,
    checks: Vec<Check>,
}

impl Run {
    fn write(&mut self, name: &str, contents: &str) -> CliResult<String> {
        std::fs::write(self.dir.join(name), contents)?;
        self.files.push(name.to_string());
        Ok(name.to_string())
    }

    fn op(&mut self, stage: &'static str, operation: &'static str, params: Value, outputs: Vec<String>, result: Value) {
        self.operations.push(Operation { stage, operation, params, outputs, result });
    }

    fn check(&mut self, stage: &'static str, name: &str, asserted: bool, pass: bool, detail: String) {
        self.checks.push(Check { name: name.to_string(), stage, asserted, pass, detail });
    }
}

fn budget_error(stage: &str, what: String) -> CliError {
    CliError::Stage {
        stage: stage.to_string(),
        source: Error::Argument(what),
        hint: "raise the budget or lower the horizon/depth",
    }
}

fn language(cfg: &PipelineConfig, exec: Exec) -> CliResult<(FactorLanguage, Option<FactorLanguage>)> {
    let base = library::by_name(&cfg.word.source).map_err(at("words"))?;
    let h = cfg.language_horizon();
    let l = cfg.horizons.l;
    let (src, original) = if cfg.word.sigma_reduce {
        let d = base.alphabet_size();
        let orig = factor_language(&base, cfg.horizons.n + 2 * d + 2, l).map_err(at("words"))?;
        (sigma_reduce(base), Some(orig))
    } else {
        (base, None)
    };
    let lang = match &cfg.output.cache_dir {
        Some(dir) => FactorCache::new(dir).get_or_compute(&src, h, l, exec),
        None => factor_language_stable(&src, h, l, exec),
    }
    .map_err(at("words"))?;
    Ok((lang, original))
}

fn estimate_rows(t: &mut Table, label: &str, d: &DimEstimate) {
    for (i, p) in d.trace.iter().enumerate() {
        t.push([label.to_string(), p.log2_n.to_string(), p.alpha.to_string(), (i >= d.tail_start).to_string()]);
    }
}

fn estimate_json(d: &DimEstimate) -> Value {
    json!({ "dim": d.dim, "dimsup": d.dimsup, "tail_start": d.tail_start, "tail_fraction": d.tail_fraction, "points": d.trace.len() })
}

/// Runs every stage and writes the bundle into `cfg.output.dir`. Stage
/// errors abort the run; failed checks are reported in the outcome.
pub fn run_pipeline(cfg: &PipelineConfig) -> CliResult<PipelineOutcome> {
    cfg.validate()?;
    let exec = cfg.exec();
    let field = cfg.field()?;
    let n_max = cfg.horizons.n;
    let depth = cfg.groupoid.depth;
    std::fs::create_dir_all(&cfg.output.dir)?;
    let mut run = Run { dir: cfg.output.dir.clone(), files: Vec::new(), operations: Vec::new(), checks: Vec::new() };
    let config_file = run.write("config.toml", &cfg.to_toml())?;

    // words
    let (lang, original) = language(cfg, exec)?;
    let h = lang.horizon();
    if lang.stable() != Some(true) {
        return Err(CliError::Stage {
            stage: "words".into(),
            source: Error::NotEvidenced(format!(
                "factor language of {} up to length {h} changes when the prefix doubles from {}",
                lang.source(),
                lang.prefix_len()
            )),
            hint: "raise the prefix length L",
        });
    }
    let complexities = lang.complexities();
    let total: usize = complexities.iter().sum();
    if total > cfg.budget.max_factors {
        return Err(budget_error("words", format!("{total} factors exceed budget.max_factors")));
    }
    let prov = format!("factor_language_stable source={} horizon={h} prefix_len={}", lang.source(), lang.prefix_len());
    let mut t = Table::new("complexity", prov, &["n", "complexity"]);
    for (i, c) in complexities.iter().enumerate() {
        t.push([i + 1, *c]);
    }
    let f = run.write("complexity.csv", &t.render())?;
    run.op(
        "words",
        "factor_language_stable",
        json!({ "source": lang.source(), "horizon": h, "prefix_len": lang.prefix_len() }),
        vec![f],
        json!({ "stable": true, "alphabet_size": lang.alphabet_size(), "total_factors": total }),
    );
    if let Some(orig) = &original {
        let rows = sigma_bounds(orig, &lang, n_max).map_err(at("words"))?;
        let mut t = Table::new(
            "sigma-bounds",
            format!("sigma_bounds original={} max_n={n_max}", orig.source()),
            &["n", "c_w", "c_reduced_scaled", "lower_holds", "c_reduced", "upper_bound", "upper_holds"],
        );
        for r in &rows {
            t.push([
                r.n.to_string(),
                r.c_w.to_string(),
                r.c_reduced_scaled.to_string(),
                r.lower_holds.to_string(),
                r.c_reduced.to_string(),
                r.upper_bound.to_string(),
                r.upper_holds.to_string(),
            ]);
        }
        let f = run.write("sigma_bounds.csv", &t.render())?;
        let ok = rows.iter().all(|r| r.lower_holds && r.upper_holds);
        run.op(
            "words",
            "sigma_bounds",
            json!({ "original": orig.source(), "max_n": n_max }),
            vec![f],
            json!({ "all_hold": ok }),
        );
        run.check("words", "sigma reduction complexity bounds", true, ok, format!("n <= {n_max}"));
    }

    // monomial
    let alg = MonomialAlgebra::new(lang.clone()).with_field(field);
    let growth = alg.growth_table();
    let mut t = Table::new(
        "monomial-growth",
        format!("growth_table horizon={h}"),
        &["n", "dim", "growth", "growth_unital", "lower", "upper", "sandwich_holds"],
    );
    let mut sandwich_ok = true;
    for r in &growth {
        let upper = r.n * r.dim;
        let holds = r.dim <= r.growth && r.growth <= upper;
        if r.n <= n_max {
            sandwich_ok &= holds;
        }
        t.push([r.n, r.dim, r.growth, r.growth_unital, r.dim, upper, holds as usize]);
    }
    let f = run.write("monomial_growth.csv", &t.render())?;
    run.op("monomial", "growth_table", json!({ "horizon": h }), vec![f], json!({ "rows": growth.len() }));
    run.check("monomial", "c(n) <= growth(n) <= n c(n)", true, sandwich_ok, format!("n <= {n_max}"));

    let centers = alg.center_components(n_max, exec).map_err(at("monomial"))?;
    let mut t = Table::new("center", format!("center_components field={field} max_n={n_max}"), &["n", "center_dim"]);
    for (i, c) in centers.iter().enumerate() {
        t.push([i + 1, *c]);
    }
    let f = run.write("center.csv", &t.render())?;
    let nonzero: Vec<usize> = centers.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i + 1).collect();
    run.op(
        "monomial",
        "center_components",
        json!({ "field": field, "max_n": n_max }),
        vec![f],
        json!({ "nonzero_degrees": nonzero }),
    );
    run.check("monomial", "graded center trivial", false, nonzero.is_empty(), format!("nonzero at {nonzero:?}"));

    // lie
    let dims = commutator_dims(&alg, n_max, field, exec).map_err(at("lie"))?;
    let binary = lang.alphabet_size() == 2;
    let mut quarter = Vec::new();
    if binary {
        for n in 4..=n_max {
            quarter.push(verify_quarter_bound(&alg, n, field).map_err(at("lie"))?);
        }
    }
    let mut t = Table::new(
        "commutator",
        format!("commutator_dims,verify_quarter_bound field={field} max_n={n_max}"),
        &["n", "dim_a", "comm_dim", "proxy", "dim_a_n_minus_2", "quarter_bound", "quarter_pass"],
    );
    let mut proxy = 0;
    for (i, &d) in dims.iter().enumerate() {
        let n = i + 1;
        proxy += d;
        let q = quarter.iter().find(|q| q.n == n);
        t.push([
            n.to_string(),
            complexities[i].to_string(),
            d.to_string(),
            proxy.to_string(),
            opt(q.map(|q| q.dim_a_n_minus_2)),
            opt(q.map(|q| q.bound)),
            opt(q.map(|q| q.pass)),
        ]);
    }
    let f = run.write("commutator.csv", &t.render())?;
    let quarter_ok = quarter.iter().all(|q| q.pass);
    run.op(
        "lie",
        "commutator_dims",
        json!({ "field": field, "max_n": n_max }),
        vec![f.clone()],
        json!({ "dims": dims }),
    );
    if binary {
        run.op(
            "lie",
            "verify_quarter_bound",
            json!({ "field": field, "n": format!("4..={n_max}") }),
            vec![f],
            json!({ "all_pass": quarter_ok }),
        );
        run.check("lie", "quarter bound 4 dim[A,A](n) >= dim A(n-2)", true, quarter_ok, format!("4 <= n <= {n_max}"));
    }

    // groupoid
    let g = Groupoid::new(lang.clone());
    let width = 2 * depth + 3;
    let columns = width * lang.complexity(width).map_err(at("groupoid"))?;
    if columns > cfg.budget.max_groupoid_columns {
        return Err(budget_error("groupoid", format!("{columns} coordinates exceed budget.max_groupoid_columns")));
    }
    let phi_comm = phi_commutator_dims(&g, depth, field, exec).map_err(at("groupoid"))?;
    let mut t = Table::new(
        "phi",
        format!("phi_rank,phi_commutator_dims field={field} max_n={depth}"),
        &["n", "complexity", "phi_rank", "injective", "phi_comm_dim", "lie_comm_dim"],
    );
    let mut injective = true;
    for n in 0..=depth {
        let c = if n == 0 { 1 } else { complexities[n - 1] };
        let r = phi_rank(&g, n, field, exec).map_err(at("groupoid"))?;
        injective &= r == c;
        let (pc, lc) = if n == 0 {
            (String::new(), String::new())
        } else {
            (phi_comm[n - 1].to_string(), dims[n - 1].to_string())
        };
        t.push([n.to_string(), c.to_string(), r.to_string(), (r == c).to_string(), pc, lc]);
    }
    let f = run.write("phi.csv", &t.render())?;
    let failures = phi_multiplicativity_failures(&g, depth, exec).map_err(at("groupoid"))?;
    let compatible = phi_comm[..] == dims[..depth];
    run.op(
        "groupoid",
        "phi_rank",
        json!({ "field": field, "n": format!("0..={depth}") }),
        vec![f.clone()],
        json!({ "injective": injective }),
    );
    run.op(
        "groupoid",
        "phi_commutator_dims",
        json!({ "field": field, "max_n": depth }),
        vec![f],
        json!({ "dims": phi_comm, "equals_commutator_dims": compatible }),
    );
    run.op(
        "groupoid",
        "phi_multiplicativity_failures",
        json!({ "max_total": depth }),
        vec![],
        json!({ "failures": failures.iter().map(|(u, v)| format!("{u}*{v}")).collect::<Vec<_>>() }),
    );
    run.check("groupoid", "phi injective", true, injective, format!("n <= {depth}"));
    run.check("groupoid", "phi multiplicative", true, failures.is_empty(), format!("|u|+|v| <= {depth}"));
    run.check("groupoid", "phi commutators match commutator_dims", true, compatible, format!("n <= {depth}"));

    let fg = filtration_growth(&g, depth, field, exec).map_err(at("groupoid"))?;
    let prov = format!("filtration_growth field={field} depth={depth} C={}", fg.bounds_constant);
    let mut t = Table::new("groupoid-growth", prov, &["n", "dim", "lower_bound", "upper_bound"]);
    t.push(["0".to_string(), fg.dims[0].to_string(), String::new(), String::new()]);
    for r in &fg.rows {
        t.push([r.n.to_string(), r.dim.to_string(), r.lower_bound.to_string(), r.upper_bound.to_string()]);
    }
    let f = run.write("groupoid_growth.csv", &t.render())?;
    run.op(
        "groupoid",
        "filtration_growth",
        json!({ "field": field, "depth": depth }),
        vec![f],
        json!({ "dims": fg.dims, "sandwich": fg.sandwich, "bounds_constant": fg.bounds_constant, "upper_truncated": fg.upper_truncated }),
    );
    run.check(
        "groupoid",
        "filtration sandwich constant found",
        false,
        fg.sandwich.is_some(),
        format!("C = {}", opt(fg.sandwich)),
    );
    let center_n = depth.min(CENTER_DEPTH);
    let center = truncated_center_check(&g, center_n, field, exec).map_err(at("groupoid"))?;
    run.op(
        "groupoid",
        "truncated_center_check",
        json!({ "field": field, "n": center_n }),
        vec![],
        json!({ "dim": center }),
    );
    run.check("groupoid", "truncated center trivial", false, center == 0, format!("dim {center} at n = {center_n}"));

    // qdim
    let q = cfg.qdim.level;
    let tail = cfg.qdim.tail;
    let c_series = GrowthSeries::from_integers(
        "complexity",
        complexities.iter().enumerate().map(|(i, &c)| (i as u64 + 1, c as u64)),
    )
    .map_err(at("qdim"))?;
    let a_series = GrowthSeries::from_integers("monomial_growth", growth.iter().map(|r| (r.n as u64, r.growth as u64)))
        .map_err(at("qdim"))?;
    let mut buf = Vec::new();
    a_series.write_csv(&mut buf).map_err(at("qdim"))?;
    let series_file = run.write(
        "monomial_growth_series.csv",
        &format!("# liegrowth/series/v1 growth_table horizon={h}\n{}", String::from_utf8(buf).expect("utf-8 csv")),
    )?;
    let est_c = dim_estimate_series(q, &c_series, tail, exec).map_err(at("qdim"))?;
    let est_a = dim_estimate_series(q, &a_series, tail, exec).map_err(at("qdim"))?;
    let mut t = Table::new(
        "alpha-hat",
        format!("dim_estimate level={q} tail={tail}"),
        &["series", "log2_n", "alpha_hat", "in_tail"],
    );
    estimate_rows(&mut t, "complexity", &est_c);
    estimate_rows(&mut t, "monomial_growth", &est_a);
    let f = run.write("alpha_hat.csv", &t.render())?;
    run.op(
        "qdim",
        "dim_estimate",
        json!({ "level": q, "tail": tail, "series": ["complexity", "monomial_growth"] }),
        vec![f, series_file],
        json!({ "complexity": estimate_json(&est_c), "monomial_growth": estimate_json(&est_a) }),
    );
    if q >= 3 {
        let sigma = cfg.qdim.sigma;
        let r = verify_corollary_61(q, sigma, &dyadic_reals(1, 24, 1), exec).map_err(at("qdim"))?;
        run.op(
            "qdim",
            "verify_corollary_61",
            json!({ "level": q, "sigma": sigma, "grid": "dyadic:1:24" }),
            vec![],
            json!({ "doubling_onset_log2_n": r.doubling.onset_log2_n, "increasing_onset_log2_n": r.increasing.onset_log2_n }),
        );
        run.check(
            "qdim",
            "phi(2n) >= n phi(n) on the grid tail",
            false,
            r.doubling.holds(),
            format!("onset log2 n = {}", opt(r.doubling.onset_log2_n)),
        );
    }

    // plots
    if cfg.output.plots {
        let pts = |v: Vec<(usize, f64)>| v.into_iter().map(|(n, y)| (n as f64, y)).collect();
        let chart = Chart {
            title: format!("growth of {}", lang.source()),
            x_label: "n".into(),
            y_label: "dimension".into(),
            log_x: false,
            log_y: true,
            series: vec![
                Series {
                    name: "c(n)".into(),
                    points: pts(complexities.iter().enumerate().map(|(i, &c)| (i + 1, c as f64)).collect()),
                },
                Series {
                    name: "monomial".into(),
                    points: pts(growth.iter().map(|r| (r.n, r.growth as f64)).collect()),
                },
                Series {
                    name: "[A,A] proxy".into(),
                    points: pts(dims
                        .iter()
                        .scan(0, |s, &d| {
                            *s += d;
                            Some(*s)
                        })
                        .enumerate()
                        .map(|(i, s)| (i + 1, s as f64))
                        .collect()),
                },
                Series {
                    name: "groupoid".into(),
                    points: pts(fg.dims.iter().enumerate().map(|(n, &d)| (n, d as f64)).collect()),
                },
            ],
        };
        let f1 = run.write("growth.svg", &chart.render())?;
        let trace = |d: &DimEstimate| d.trace.iter().map(|p| (p.log2_n, p.alpha.to_f64())).collect();
        let chart = Chart {
            title: format!("alpha-hat at level {q}"),
            x_label: "log2 n".into(),
            y_label: "alpha-hat".into(),
            log_x: false,
            log_y: false,
            series: vec![
                Series { name: "complexity".into(), points: trace(&est_c) },
                Series { name: "monomial".into(), points: trace(&est_a) },
            ],
        };
        let f2 = run.write("alpha_hat.svg", &chart.render())?;
        run.op("plots", "render_svg", json!({ "log_y": true }), vec![f1, f2], Value::Null);
    }

    let passed = run.checks.iter().all(|c| !c.asserted || c.pass);
    let summary = json!({
        "schema": SUMMARY_SCHEMA,
        "config": cfg,
        "config_file": config_file,
        "language": {
            "source": lang.source(),
            "alphabet_size": lang.alphabet_size(),
            "horizon": h,
            "prefix_len": lang.prefix_len(),
            "stable": lang.stable(),
        },
        "operations": run.operations,
        "checks": run.checks,
        "status": if passed { "pass" } else { "fail" },
    });
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
    run.write("summary.json", &text)?;
    Ok(PipelineOutcome { dir: run.dir, files: run.files, operations: run.operations, checks: run.checks })
}

/// Reads back `summary.json` from a finished run.
pub fn read_summary(dir: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(dir.join("summary.json"))?;
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("bad summary: {e}")))
}
