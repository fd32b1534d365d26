//! Subcommand bodies. Each returns the text to emit (CSV or JSON) and fails
//! with exit-code-carrying [`CliError`]s.

use std::path::Path;

use liegrowth::groupoid::{
    filtration_growth, phi_injectivity_check, phi_multiplicativity_failures, phi_rank, truncated_center_check,
    Groupoid, SANDWICH_CMAX,
};
use liegrowth::liecomm::{commutator_dims, verify_quarter_bound};
use liegrowth::linalg::FieldDescriptor;
use liegrowth::monomial::MonomialAlgebra;
use liegrowth::qdim::{dim_estimate, dim_estimate_series, formula_trace, verify_corollaries, DEFAULT_TAIL};
use liegrowth::regularize::{
    check_conditions, check_submultiplicative, f_prime, preceq_witness, select_t, Formula, GrowthSeries, DEFAULT_TMAX,
};
use liegrowth::words::{
    biinfinite_extend, factor_language, factor_language_stable, library, recurrence_constant, sigma_bounds,
    sigma_reduce, FactorLanguage, FiniteWord, WordSource,
};
use liegrowth::Exec;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{at, CliError, CliResult};
use crate::grid::GridSpec;
use crate::table::{opt, Table};

pub const DEFAULT_PREFIX: usize = 10_000;

fn source(spec: &str) -> CliResult<WordSource> {
    library::by_name(spec).map_err(|e| CliError::Validation(e.to_string()))
}

/// JSON report naming the operation and its parameters.
pub fn report<T: Serialize>(operation: &str, params: Value, result: &T) -> String {
    let v = json!({ "operation": operation, "params": params, "result": result });
    serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
}

fn stable_language(src: &WordSource, horizon: usize, prefix: usize, exec: Exec) -> CliResult<FactorLanguage> {
    if prefix < horizon {
        return Err(CliError::Validation(format!("prefix length {prefix} is below the horizon {horizon}")));
    }
    factor_language_stable(src, horizon, prefix, exec).map_err(at("words"))
}

pub fn words_complexity(spec: &str, max: usize, prefix: usize, exec: Exec) -> CliResult<String> {
    if max == 0 {
        return Err(CliError::Validation("--max must be positive".into()));
    }
    let lang = stable_language(&source(spec)?, max, prefix, exec)?;
    let prov = format!(
        "factor_language_stable source={} horizon={max} prefix_len={prefix} stable={}",
        lang.source(),
        opt(lang.stable())
    );
    let mut t = Table::new("complexity", prov, &["n", "complexity"]);
    for (i, c) in lang.complexities().iter().enumerate() {
        t.push([i + 1, *c]);
    }
    Ok(t.render())
}

pub fn words_recurrence(spec: &str, factor: &str, prefix: usize) -> CliResult<String> {
    let u = FiniteWord::parse_digits(factor).map_err(|e| CliError::Validation(e.to_string()))?;
    if u.is_empty() {
        return Err(CliError::Validation("factor must be nonempty".into()));
    }
    let lang = factor_language(&source(spec)?, u.len(), prefix).map_err(at("words"))?;
    let c = recurrence_constant(&lang, &u).map_err(at("words"))?;
    Ok(report(
        "recurrence_constant",
        json!({ "source": lang.source(), "factor": factor, "prefix_len": prefix }),
        &json!({ "constant": c, "evidenced": c.is_some() }),
    ))
}

/// Both sigma-reduction bounds for `n <= max`, with a flag saying whether
/// all hold.
pub fn words_sigma_bounds(spec: &str, max: usize, prefix: usize) -> CliResult<(String, bool)> {
    let src = source(spec)?;
    let d = src.alphabet_size();
    let orig = factor_language(&src, max + 2 * d + 2, prefix).map_err(at("words"))?;
    let red = factor_language(&sigma_reduce(src), (d + 1) * max, prefix).map_err(at("words"))?;
    let rows = sigma_bounds(&orig, &red, max).map_err(at("words"))?;
    let mut t = Table::new(
        "sigma-bounds",
        format!("sigma_bounds source={} max_n={max} prefix_len={prefix}", orig.source()),
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
    Ok((t.render(), rows.iter().all(|r| r.lower_holds && r.upper_holds)))
}

pub fn words_extend(spec: &str, steps: usize, search: usize) -> CliResult<String> {
    let b = biinfinite_extend(&source(spec)?, steps, search).map_err(at("words"))?;
    let words: Vec<String> = b.words.iter().map(|w| w.to_string()).collect();
    let paddings: Vec<[String; 2]> = b.paddings.iter().map(|(p, q)| [p.to_string(), q.to_string()]).collect();
    Ok(report(
        "biinfinite_extend",
        json!({ "source": spec, "t": steps, "search_len": search }),
        &json!({ "words": words, "paddings": paddings, "occurrences": b.occurrences, "anchor": b.anchor }),
    ))
}

/// A series from a CSV file or from a closed form sampled on a grid.
pub fn load_series(series: Option<&Path>, formula: Option<&str>, grid: Option<&GridSpec>) -> CliResult<GrowthSeries> {
    match (series, formula) {
        (Some(p), None) => {
            let f = std::fs::File::open(p)
                .map_err(|e| CliError::Validation(format!("cannot open {}: {e}", p.display())))?;
            let label = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            GrowthSeries::read_csv(label, f).map_err(|e| CliError::Validation(e.to_string()))
        }
        (None, Some(f)) => {
            let formula: Formula = f.parse().map_err(|e: liegrowth::Error| CliError::Validation(e.to_string()))?;
            let pts = grid.ok_or_else(|| CliError::Validation("--formula needs --grid".into()))?.integers()?;
            GrowthSeries::from_formula(formula, &pts).map_err(at("growth"))
        }
        _ => Err(CliError::Validation("give exactly one of --series and --formula".into())),
    }
}

fn range_of(s: &GrowthSeries, lo: Option<u64>, hi: Option<u64>) -> CliResult<(u64, u64)> {
    let pts = s.points();
    let (Some(&first), Some(&last)) = (pts.first(), pts.last()) else {
        return Err(CliError::Validation("empty series".into()));
    };
    Ok((lo.unwrap_or(first), hi.unwrap_or(last)))
}

pub fn growth_sample(formula: &str, grid: &GridSpec) -> CliResult<String> {
    let s = load_series(None, Some(formula), Some(grid))?;
    let mut buf = Vec::new();
    s.write_csv(&mut buf).map_err(at("growth"))?;
    Ok(format!("# liegrowth/series/v1 from_formula formula={formula}\n{}", String::from_utf8(buf).expect("utf-8")))
}

pub fn growth_preceq(f: &GrowthSeries, g: &GrowthSeries, lo: Option<u64>, hi: Option<u64>) -> CliResult<String> {
    let (lo, hi) = range_of(f, lo, hi)?;
    let w = preceq_witness(f, g, lo, hi).map_err(at("growth"))?;
    Ok(report(
        "preceq_witness",
        json!({ "f": f.label, "g": g.label, "lo": lo, "hi": hi }),
        &json!({ "holds": w.is_some(), "c": w.map(|x| x.0), "d": w.map(|x| x.1) }),
    ))
}

pub fn growth_submult(f: &GrowthSeries, lo: Option<u64>, hi: Option<u64>) -> CliResult<String> {
    let (lo, hi) = range_of(f, lo, hi)?;
    let v = check_submultiplicative(f, lo, hi);
    Ok(report(
        "check_submultiplicative",
        json!({ "f": f.label, "lo": lo, "hi": hi }),
        &json!({ "holds": v.is_empty(), "violations": v }),
    ))
}

pub fn growth_transform(f: &GrowthSeries, t: Option<usize>, lo: Option<u64>, hi: Option<u64>) -> CliResult<String> {
    let (lo, hi) = range_of(f, lo, hi)?;
    let selection = match t {
        Some(_) => None,
        None => Some(select_t(f, lo, hi, DEFAULT_TMAX).map_err(at("growth"))?),
    };
    let t = t.or(selection.as_ref().map(|s| s.t)).expect("t chosen");
    let fp = f_prime(f, t).map_err(at("growth"))?;
    let conditions = check_conditions(&fp, t).map_err(at("growth"))?;
    Ok(report(
        "f_prime,check_conditions",
        json!({ "f": f.label, "t": t, "lo": lo, "hi": hi }),
        &json!({ "selection": selection, "conditions": conditions }),
    ))
}

pub fn monomial(spec: &str, max: usize, prefix: usize, field: FieldDescriptor, exec: Exec) -> CliResult<String> {
    let lang = stable_language(&source(spec)?, max + 1, prefix, exec)?;
    let alg = MonomialAlgebra::new(lang).with_field(field);
    let centers = alg.center_components(max, exec).map_err(at("monomial"))?;
    let prov = format!("growth_table,center_components source={} field={field} max_n={max}", alg.language().source());
    let mut t = Table::new("monomial", prov, &["n", "dim", "growth", "growth_unital", "center_dim"]);
    for r in alg.growth_table().iter().filter(|r| r.n <= max) {
        t.push([r.n, r.dim, r.growth, r.growth_unital, centers[r.n - 1]]);
    }
    Ok(t.render())
}

fn algebra(spec: &str, max: usize, prefix: usize, field: FieldDescriptor, exec: Exec) -> CliResult<MonomialAlgebra> {
    let lang = stable_language(&source(spec)?, max, prefix, exec)?;
    Ok(MonomialAlgebra::new(lang).with_field(field))
}

pub fn lie_dims(spec: &str, max: usize, prefix: usize, field: FieldDescriptor, exec: Exec) -> CliResult<String> {
    let alg = algebra(spec, max, prefix, field, exec)?;
    let dims = commutator_dims(&alg, max, field, exec).map_err(at("lie"))?;
    let prov = format!("commutator_dims source={} field={field} max_n={max}", alg.language().source());
    let mut t = Table::new("commutator-dims", prov, &["n", "dim_a", "comm_dim"]);
    for (i, d) in dims.iter().enumerate() {
        t.push([i + 1, alg.dim_component(i + 1).map_err(at("lie"))?, *d]);
    }
    Ok(t.render())
}

/// Quarter-bound table for `3 < n <= max`. The table is returned even when
/// some row fails; the flag says whether all passed.
pub fn lie_quarter(
    spec: &str,
    max: usize,
    prefix: usize,
    field: FieldDescriptor,
    exec: Exec,
) -> CliResult<(String, bool)> {
    if max < 4 {
        return Err(CliError::Validation("--max must be at least 4".into()));
    }
    let alg = algebra(spec, max, prefix, field, exec)?;
    let prov = format!("verify_quarter_bound source={} field={field} n=4..={max}", alg.language().source());
    let mut t = Table::new("quarter-bound", prov, &["n", "comm_dim", "dim_a_n_minus_2", "bound", "margin", "result"]);
    let mut all = true;
    for n in 4..=max {
        let r = verify_quarter_bound(&alg, n, field).map_err(at("lie"))?;
        all &= r.pass;
        t.push([
            r.n.to_string(),
            r.comm_dim.to_string(),
            r.dim_a_n_minus_2.to_string(),
            r.bound.to_string(),
            r.margin.to_string(),
            if r.pass { "pass" } else { "fail" }.to_string(),
        ]);
    }
    Ok((t.render(), all))
}

fn groupoid(spec: &str, depth: usize, prefix: usize, exec: Exec) -> CliResult<Groupoid> {
    let h = (SANDWICH_CMAX as usize * depth).max(2 * depth + 4);
    Ok(Groupoid::new(stable_language(&source(spec)?, h, prefix.max(h), exec)?))
}

pub fn groupoid_growth(
    spec: &str,
    depth: usize,
    prefix: usize,
    field: FieldDescriptor,
    exec: Exec,
) -> CliResult<String> {
    let g = groupoid(spec, depth, prefix, exec)?;
    let fg = filtration_growth(&g, depth, field, exec).map_err(at("groupoid"))?;
    let prov = format!(
        "filtration_growth source={} field={field} depth={depth} C={} sandwich={} upper_truncated={}",
        g.language().source(),
        fg.bounds_constant,
        opt(fg.sandwich),
        fg.upper_truncated
    );
    let mut t = Table::new("groupoid-growth", prov, &["n", "dim", "lower_bound", "upper_bound"]);
    t.push(["0".to_string(), fg.dims[0].to_string(), String::new(), String::new()]);
    for r in &fg.rows {
        t.push([r.n.to_string(), r.dim.to_string(), r.lower_bound.to_string(), r.upper_bound.to_string()]);
    }
    Ok(t.render())
}

pub fn groupoid_phi(
    spec: &str,
    max: usize,
    prefix: usize,
    field: FieldDescriptor,
    exec: Exec,
) -> CliResult<(String, bool)> {
    let g = groupoid(spec, max, prefix, exec)?;
    let failures = phi_multiplicativity_failures(&g, max, exec).map_err(at("groupoid"))?;
    let prov = format!(
        "phi_rank,phi_multiplicativity_failures source={} field={field} max_n={max} multiplicativity_failures={}",
        g.language().source(),
        failures.len()
    );
    let mut t = Table::new("phi", prov, &["n", "complexity", "phi_rank", "injective"]);
    let mut all = failures.is_empty();
    for n in 0..=max {
        let c = if n == 0 { 1 } else { g.language().complexity(n).map_err(at("groupoid"))? };
        let r = phi_rank(&g, n, field, exec).map_err(at("groupoid"))?;
        let inj = phi_injectivity_check(&g, n, field, exec).map_err(at("groupoid"))?;
        all &= inj;
        t.push([n.to_string(), c.to_string(), r.to_string(), inj.to_string()]);
    }
    Ok((t.render(), all))
}

pub fn groupoid_center(spec: &str, n: usize, prefix: usize, field: FieldDescriptor, exec: Exec) -> CliResult<String> {
    let g = groupoid(spec, n.max(1), prefix, exec)?;
    let d = truncated_center_check(&g, n, field, exec).map_err(at("groupoid"))?;
    Ok(report(
        "truncated_center_check",
        json!({ "source": g.language().source(), "n": n, "field": field }),
        &json!({ "dim": d }),
    ))
}

/// The debug dump of `φ(v)`.
pub fn groupoid_element(spec: &str, word: &str, prefix: usize, exec: Exec) -> CliResult<String> {
    let v = FiniteWord::parse_digits(word).map_err(|e| CliError::Validation(e.to_string()))?;
    let g = groupoid(spec, v.len().max(1), prefix, exec)?;
    let e = g.phi(v.symbols()).map_err(at("groupoid"))?;
    Ok(format!("# phi({word}) over {}\n{e}", g.language().source()))
}

pub struct QdimArgs<'a> {
    pub level: u32,
    pub alpha: Option<f64>,
    pub series: Option<&'a Path>,
    pub formula: Option<&'a str>,
    pub grid: Option<GridSpec>,
    pub tail: Option<f64>,
    pub corollaries: bool,
}

/// `dim_estimate` on a series file, a closed form, or `⌈Φ_α^q⌉` when only
/// `--alpha` is given.
pub fn qdim(a: &QdimArgs<'_>, exec: Exec) -> CliResult<String> {
    if a.level == 0 {
        return Err(CliError::Validation("--level must be at least 1".into()));
    }
    let tail = a.tail.unwrap_or(DEFAULT_TAIL);
    let default_grid = GridSpec::Dyadic { k0: 1, k1: 32, step: 1 };
    let grid = a.grid.clone().unwrap_or(default_grid);
    let (input, est) = match (a.series, a.formula, a.alpha) {
        (Some(p), None, _) => {
            let s = load_series(Some(p), None, None)?;
            (
                json!({ "series": p.display().to_string() }),
                dim_estimate_series(a.level, &s, tail, exec).map_err(at("qdim"))?,
            )
        }
        (None, formula, alpha) => {
            let f: Formula = match (formula, alpha) {
                (Some(f), _) => f.parse().map_err(|e: liegrowth::Error| CliError::Validation(e.to_string()))?,
                (None, Some(s)) => Formula::Phi { q: a.level, alpha: s }.ceil(),
                (None, None) => return Err(CliError::Validation("give --series, --formula or --alpha".into())),
            };
            let samples = formula_trace(&f, &grid.reals(), exec).map_err(at("qdim"))?;
            (
                json!({ "formula": f.to_string(), "grid": format!("{grid:?}") }),
                dim_estimate(a.level, &samples, tail, exec).map_err(at("qdim"))?,
            )
        }
        (Some(_), Some(_), _) => return Err(CliError::Validation("give only one of --series and --formula".into())),
    };
    let corollaries = if a.corollaries {
        let sigma = a.alpha.unwrap_or(1.0);
        Some(verify_corollaries(a.level, sigma, &grid.reals(), exec).map_err(at("qdim"))?)
    } else {
        None
    };
    let window = json!({ "tail_start": est.tail_start, "tail_fraction": est.tail_fraction, "points": est.trace.len() });
    Ok(report(
        "dim_estimate",
        json!({ "level": a.level, "tail": tail, "input": input }),
        &json!({ "dim": est.dim, "dimsup": est.dimsup, "window": window, "alpha_hat": est.trace, "corollaries": corollaries }),
    ))
}
