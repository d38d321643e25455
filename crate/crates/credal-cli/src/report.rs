use serde_json::{json, Map, Value};

/// Rounds to 12 significant digits; report numbers pass through this so
/// JSON and CSV encode identical values.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// A finite number as a JSON value (non-finite values become strings).
pub fn num(x: f64) -> Value {
    let r = sig12(x);
    if r.is_finite() {
        json!(r)
    } else {
        json!(format!("{r}"))
    }
}

/// The same number as a CSV cell.
pub fn cell(x: f64) -> String {
    format!("{}", sig12(x))
}

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?}; expected json or csv")),
        }
    }
}

/// A rendered report: a JSON tree plus a flat CSV view of the same numbers.
pub struct Report {
    pub subcommand: &'static str,
    pub scenario: Value,
    pub results: Value,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
}

/// Resolved-convention strings echoed into every report.
fn conventions() -> Value {
    json!({
        "trigger_averaging": "averaged over the next observation under the true model; per-observation values also reported",
        "ess_prior": "all Dirichlet parameters equal s/M",
        "pay_not_to_know": "worst per-observation local minimax value minus global minimax value",
        "rng": "ChaCha8 streams keyed by SplitMix64(seed, run)",
        "tie_breaking": "lowest index",
    })
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut root = Map::new();
                root.insert("tool".into(), json!("credal-decide"));
                root.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
                root.insert("subcommand".into(), json!(self.subcommand));
                root.insert("conventions".into(), conventions());
                root.insert("scenario".into(), self.scenario.clone());
                root.insert("results".into(), self.results.clone());
                let mut text = serde_json::to_string_pretty(&Value::Object(root))
                    .expect("report serializes");
                text.push('\n');
                text
            }
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&format!(
                    "# credal-decide v{} subcommand={} trigger_averaging=next-observation ess=s/M pay_not_to_know=worst-local-minus-global rng=chacha8+splitmix64\n",
                    env!("CARGO_PKG_VERSION"),
                    self.subcommand
                ));
                out.push_str(&self.csv_header.join(","));
                out.push('\n');
                for row in &self.csv_rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                out
            }
        }
    }
}
