//! Pipeline configuration: a TOML file with one table per stage, every key
//! overridable from the command line with `--set section.key=value`.
//!
//! ```toml
//! [word]
//! source = "fibonacci"
//! sigma_reduce = false
//!
//! [horizons]
//! n = 10        # truncation degree N
//! l = 10000     # scanned prefix length L
//!
//! [algebra]
//! field = "Q"
//!
//! [groupoid]
//! depth = 8
//!
//! [qdim]
//! level = 2
//! sigma = 1.0
//! tail = 0.5
//!
//! [output]
//! dir = "liegrowth-out"
//! plots = true
//!
//! [budget]
//! max_factors = 1000000
//! max_groupoid_columns = 200000
//! ```

use std::path::{Path, PathBuf};

use liegrowth::groupoid::SANDWICH_CMAX;
use liegrowth::linalg::FieldDescriptor;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WordSection {
    /// A library name or `subst:…` / `periodic:…` / `sigma:…` spec.
    pub source: String,
    pub sigma_reduce: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Horizons {
    pub n: usize,
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgebraSection {
    pub field: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GroupoidSection {
    /// Filtration depth; also bounds the φ checks.
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QdimSection {
    pub level: u32,
    pub sigma: f64,
    pub tail: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    /// Factor-language cache; none by default.
    pub cache_dir: Option<PathBuf>,
    pub plots: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Upper limit on `Σ_{n<=H} c(n)` for the scanned language.
    pub max_factors: usize,
    /// Upper limit on the coordinate count of the groupoid linear algebra.
    pub max_groupoid_columns: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub word: WordSection,
    pub horizons: Horizons,
    pub algebra: AlgebraSection,
    pub groupoid: GroupoidSection,
    pub qdim: QdimSection,
    pub output: OutputSection,
    pub budget: Budget,
    pub run: RunSection,
}

impl Default for WordSection {
    fn default() -> Self {
        WordSection { source: "fibonacci".into(), sigma_reduce: false }
    }
}

impl Default for Horizons {
    fn default() -> Self {
        Horizons { n: 10, l: 10_000 }
    }
}

impl Default for AlgebraSection {
    fn default() -> Self {
        AlgebraSection { field: "Q".into() }
    }
}

impl Default for GroupoidSection {
    fn default() -> Self {
        GroupoidSection { depth: 8 }
    }
}

impl Default for QdimSection {
    fn default() -> Self {
        QdimSection { level: 2, sigma: 1.0, tail: liegrowth::qdim::DEFAULT_TAIL }
    }
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { dir: PathBuf::from("liegrowth-out"), cache_dir: None, plots: true }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_factors: 1_000_000, max_groupoid_columns: 200_000 }
    }
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection { parallel: true }
    }
}

impl PipelineConfig {
    /// Parses TOML text and applies `section.key=value` overrides. Values
    /// are read as TOML literals, falling back to plain strings.
    pub fn from_toml(text: &str, overrides: &[String]) -> CliResult<Self> {
        let mut doc: toml::Table =
            text.parse().map_err(|e| CliError::Validation(format!("config is not valid TOML: {e}")))?;
        for o in overrides {
            apply_override(&mut doc, o)?;
        }
        let cfg: PipelineConfig =
            toml::Value::Table(doc).try_into().map_err(|e| CliError::Validation(format!("bad config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: Option<&Path>, overrides: &[String]) -> CliResult<Self> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p)
                .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", p.display())))?,
            None => String::new(),
        };
        Self::from_toml(&text, overrides)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn field(&self) -> CliResult<FieldDescriptor> {
        self.algebra.field.parse().map_err(|e: liegrowth::Error| CliError::Validation(e.to_string()))
    }

    /// Horizon of the scanned language: `N`, widened so the groupoid
    /// sandwich can read `c(Cn)` for every `C` it tries.
    pub fn language_horizon(&self) -> usize {
        self.horizons.n.max(SANDWICH_CMAX as usize * self.groupoid.depth).max(2 * self.groupoid.depth + 4)
    }

    pub fn exec(&self) -> liegrowth::Exec {
        if self.run.parallel {
            liegrowth::Exec::Parallel
        } else {
            liegrowth::Exec::Sequential
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let fail = |m: String| Err(CliError::Validation(m));
        let h = &self.horizons;
        if h.n == 0 {
            return fail("horizons.n must be positive".into());
        }
        if h.l < h.n {
            return fail(format!("horizons.l = {} is smaller than horizons.n = {}", h.l, h.n));
        }
        if self.language_horizon() > h.l {
            return fail(format!(
                "horizons.l = {} is smaller than the language horizon {} needed by groupoid.depth",
                h.l,
                self.language_horizon()
            ));
        }
        if self.groupoid.depth == 0 || self.groupoid.depth > h.n {
            return fail(format!("groupoid.depth must lie in 1..={}", h.n));
        }
        if self.qdim.level == 0 {
            return fail("qdim.level must be at least 1".into());
        }
        if !(self.qdim.sigma > 0.0 && self.qdim.sigma.is_finite()) {
            return fail("qdim.sigma must be positive".into());
        }
        if !(self.qdim.tail > 0.0 && self.qdim.tail <= 1.0) {
            return fail("qdim.tail must lie in (0, 1]".into());
        }
        if self.budget.max_factors == 0 || self.budget.max_groupoid_columns == 0 {
            return fail("budgets must be positive".into());
        }
        liegrowth::words::library::by_name(&self.word.source).map_err(|e| CliError::Validation(e.to_string()))?;
        self.field()?;
        Ok(())
    }
}

fn apply_override(doc: &mut toml::Table, o: &str) -> CliResult<()> {
    let (key, raw) =
        o.split_once('=').ok_or_else(|| CliError::Validation(format!("override {o:?} is not key=value")))?;
    let (section, field) = key
        .trim()
        .split_once('.')
        .ok_or_else(|| CliError::Validation(format!("override key {key:?} is not section.key")))?;
    let value = format!("v = {}", raw.trim())
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.trim().to_string()));
    let table = doc
        .entry(section.to_string())
        .or_insert_with(|| toml::Value::Table(toml::Table::new()))
        .as_table_mut()
        .ok_or_else(|| CliError::Validation(format!("{section} is not a table")))?;
    table.insert(field.to_string(), value);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let c = PipelineConfig::from_toml("", &[]).unwrap();
        assert_eq!(c, PipelineConfig::default());
        let c = PipelineConfig::from_toml(
            "[word]\nsource = \"thue-morse\"\n",
            &["horizons.n=12".into(), "algebra.field=GF(32003)".into(), "output.dir=/tmp/x".into()],
        )
        .unwrap();
        assert_eq!(c.word.source, "thue-morse");
        assert_eq!(c.horizons.n, 12);
        assert_eq!(c.field().unwrap(), FieldDescriptor::Prime(32003));
        assert_eq!(c.output.dir, PathBuf::from("/tmp/x"));
        let back = PipelineConfig::from_toml(&c.to_toml(), &[]).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn validation() {
        for (text, o) in [
            ("[horizons]\nn = 10\nl = 5\n", vec![]),
            ("", vec!["budget.max_factors=0".to_string()]),
            ("", vec!["word.source=nonsense".to_string()]),
            ("", vec!["algebra.field=GF(4)".to_string()]),
            ("[word]\nbogus = 1\n", vec![]),
            ("", vec!["groupoid.depth=11".to_string()]),
            ("", vec!["novalue".to_string()]),
        ] {
            assert!(matches!(PipelineConfig::from_toml(text, &o), Err(CliError::Validation(_))), "{text} {o:?}");
        }
    }
}
