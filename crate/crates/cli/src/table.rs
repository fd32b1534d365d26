//! Plain CSV tables. The first line is a `#` comment naming the schema and
//! version and the operation that produced the numbers.

use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub schema: &'static str,
    /// `operation key=value …`
    pub provenance: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub const SCHEMA_VERSION: u32 = 1;

impl Table {
    pub fn new(schema: &'static str, provenance: impl Into<String>, columns: &[&'static str]) -> Self {
        Table { schema, provenance: provenance.into(), columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|s| s.to_string()).collect();
        assert_eq!(row.len(), self.columns.len(), "row width for {}", self.schema);
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# liegrowth/{}/v{SCHEMA_VERSION} {}", self.schema, self.provenance).unwrap();
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| quote(c)).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }
}

fn quote(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// `Some(x)` as `x`, `None` as an empty cell.
pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render() {
        let mut t = Table::new("complexity", "factor_language source=x", &["n", "c"]);
        t.push([1, 2]);
        t.push(["a,b", "\"q\""]);
        assert_eq!(t.render(), "# liegrowth/complexity/v1 factor_language source=x\nn,c\n1,2\n\"a,b\",\"\"\"q\"\"\"\n");
        assert_eq!(opt::<u8>(None), "");
    }
}
