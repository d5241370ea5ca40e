use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// How a metric is compared with its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Lt,
    Le,
    Gt,
    Ge,
    /// Reported for information only; always passes.
    Info,
}

impl Comparison {
    pub fn holds(self, value: f64, threshold: f64) -> bool {
        match self {
            Comparison::Lt => value < threshold,
            Comparison::Le => value <= threshold,
            Comparison::Gt => value > threshold,
            Comparison::Ge => value >= threshold,
            Comparison::Info => true,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Comparison::Lt => "<",
            Comparison::Le => "<=",
            Comparison::Gt => ">",
            Comparison::Ge => ">=",
            Comparison::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub threshold: Option<f64>,
    pub comparison: Comparison,
    pub pass: bool,
}

/// A named numeric table, written out as one CSV file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_name: String,
    pub metrics: Vec<Metric>,
    pub tables: Vec<Table>,
    /// Echo of the suite configuration and seeds.
    pub metadata: serde_json::Value,
}

impl SuiteReport {
    pub fn new(suite_name: &str, metadata: serde_json::Value) -> Self {
        Self {
            suite_name: suite_name.to_string(),
            metrics: Vec::new(),
            tables: Vec::new(),
            metadata,
        }
    }

    /// Adds a metric; the pass flag is computed here from the stored values.
    pub fn check(&mut self, name: &str, value: f64, comparison: Comparison, threshold: f64) {
        let pass = !value.is_nan() && comparison.holds(value, threshold);
        self.metrics.push(Metric {
            name: name.to_string(),
            value,
            threshold: Some(threshold),
            comparison,
            pass,
        });
    }

    pub fn info(&mut self, name: &str, value: f64) {
        self.metrics.push(Metric {
            name: name.to_string(),
            value,
            threshold: None,
            comparison: Comparison::Info,
            pass: true,
        });
    }

    pub fn metric(&self, name: &str) -> Option<&Metric> {
        self.metrics.iter().find(|m| m.name == name)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn passed(&self) -> bool {
        self.metrics.iter().all(|m| m.pass)
    }

    pub fn failures(&self) -> Vec<&Metric> {
        self.metrics.iter().filter(|m| !m.pass).collect()
    }

    /// `name,value,comparison,threshold,pass`.
    pub fn metrics_csv(&self) -> String {
        let mut s = String::from("name,value,comparison,threshold,pass\n");
        for m in &self.metrics {
            let threshold = m.threshold.map(|t| t.to_string()).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                m.name,
                m.value,
                m.comparison.symbol(),
                threshold,
                m.pass
            );
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flags_follow_comparisons() {
        let mut r = SuiteReport::new("demo", serde_json::json!({"seed": 1}));
        r.check("a", 0.5, Comparison::Lt, 1.0);
        r.check("b", 1.0, Comparison::Lt, 1.0);
        r.check("c", f64::NAN, Comparison::Le, 1.0);
        r.info("d", 3.0);
        let flags: Vec<bool> = r.metrics.iter().map(|m| m.pass).collect();
        assert_eq!(flags, [true, false, false, true]);
        assert!(!r.passed());
        assert!(r.metrics_csv().starts_with("name,value,comparison,threshold,pass\na,0.5,<,1,true\n"));
    }
}
