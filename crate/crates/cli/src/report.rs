use serde_json::{json, Map, Value};

/// Outcome of one exact check.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(check: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            pass,
            detail: detail.into(),
        }
    }

    /// Passes when `first_mismatch` is `None`; otherwise reports it.
    pub fn from_mismatch(check: &str, ok_detail: &str, first_mismatch: Option<String>) -> Self {
        match first_mismatch {
            None => Verdict::new(check, true, ok_detail),
            Some(m) => Verdict::new(check, false, m),
        }
    }

    fn to_json(&self) -> Value {
        json!({ "check": self.check, "pass": self.pass, "detail": self.detail })
    }
}

/// Flat table for CSV output.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub result: Value,
    pub verdicts: Vec<Verdict>,
    pub table: Option<Table>,
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), Value::from(self.command.clone()));
        map.insert("params".into(), self.params.clone());
        map.insert("result".into(), self.result.clone());
        map.insert(
            "verdicts".into(),
            Value::Array(self.verdicts.iter().map(Verdict::to_json).collect()),
        );
        map.insert("engine_version".into(), Value::from(tdn_core::VERSION));
        if let Some(ms) = self.timing_ms {
            map.insert("timing_ms".into(), Value::from(ms));
        }
        Value::Object(map)
    }

    pub fn render_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn render_csv(&self) -> Option<String> {
        let table = self.table.as_ref()?;
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&table.header).ok()?;
        for row in &table.rows {
            writer.write_record(row).ok()?;
        }
        String::from_utf8(writer.into_inner().ok()?).ok()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        out.push_str(&format!("params: {}\n", compact(&self.params)));
        out.push_str("result:\n");
        if let Value::Object(map) = &self.result {
            for (k, v) in map {
                out.push_str(&format!("  {k}: {}\n", compact(v)));
            }
        } else {
            out.push_str(&format!("  {}\n", compact(&self.result)));
        }
        out.push_str("verdicts:\n");
        for v in &self.verdicts {
            let tag = if v.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{tag}] {}: {}\n", v.check, v.detail));
        }
        out.push_str(&format!("engine_version: {}\n", tdn_core::VERSION));
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("timing_ms: {ms}\n"));
        }
        out
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("value serializes")
}
