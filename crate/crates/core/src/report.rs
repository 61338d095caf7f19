//! One verified or reported inequality, and the CSV/JSON report table.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

/// Slack allowed when asserting lhs ≤ rhs on floating-point sums: a bound
/// holds when lhs ≤ rhs + ASSERT_TOLERANCE·(1 + rhs). Sums that are exactly
/// zero, or exactly on the bound, are otherwise lost to rounding.
pub const ASSERT_TOLERANCE: f64 = 1e-9;

/// Column order of the CSV table.
pub const CSV_COLUMNS: [&str; 13] = [
    "theorem", "p", "n", "modulus", "chi_exp", "a", "box", "r", "eps", "lhs", "rhs", "ratio",
    "holds",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Completion (Pólya–Vinogradov) bound √q(1 + ln p)^n.
    Pv,
    /// Pure Burgess bound for n = 1.
    Burgess2,
    /// Mixed Burgess bound for n = 1, r ≥ 2.
    Burgess3,
    /// Davenport–Lewis pure-sum bound.
    Dl,
    /// Chang's pure-sum bound.
    Chang3,
    Weil,
    /// Complete sum over a shifted line, bound n√p.
    Ps,
    ChangEnergy,
    KonyaginEnergy,
    Thm6,
    Thm7,
    /// |S| ≤ |B|.
    Triangle,
}

impl Theorem {
    pub const ALL: [Theorem; 12] = [
        Theorem::Pv,
        Theorem::Burgess2,
        Theorem::Burgess3,
        Theorem::Dl,
        Theorem::Chang3,
        Theorem::Weil,
        Theorem::Ps,
        Theorem::ChangEnergy,
        Theorem::KonyaginEnergy,
        Theorem::Thm6,
        Theorem::Thm7,
        Theorem::Triangle,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::Pv => "pv",
            Theorem::Burgess2 => "burgess2",
            Theorem::Burgess3 => "burgess3",
            Theorem::Dl => "dl",
            Theorem::Chang3 => "chang3",
            Theorem::Weil => "weil",
            Theorem::Ps => "ps",
            Theorem::ChangEnergy => "chang_energy",
            Theorem::KonyaginEnergy => "konyagin_energy",
            Theorem::Thm6 => "thm6",
            Theorem::Thm7 => "thm7",
            Theorem::Triangle => "triangle",
        }
    }

    /// Statements with explicit constants, which are asserted rather than
    /// only reported.
    pub fn is_assertable(self) -> bool {
        matches!(
            self,
            Theorem::Pv | Theorem::Weil | Theorem::Ps | Theorem::ChangEnergy | Theorem::Triangle
        )
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Holds {
    True,
    False,
    NotApplicable,
}

impl Holds {
    pub fn as_str(self) -> &'static str {
        match self {
            Holds::True => "true",
            Holds::False => "false",
            Holds::NotApplicable => "na",
        }
    }
}

/// Parameters identifying a report row. Optional fields print empty.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReportParams {
    pub p: u64,
    pub n: usize,
    /// Modulus coefficients, ascending, space separated.
    pub modulus: String,
    pub chi_exp: Option<u64>,
    /// Twist parameter (canonical encoding) or other row-specific argument.
    pub a: Option<String>,
    /// Box in "N1:H1,…" form, or the row's domain description.
    pub domain: Option<String>,
    pub r: Option<u32>,
    pub eps: Option<f64>,
}

impl ReportParams {
    pub fn new(p: u64, n: usize, modulus: &[u64]) -> Self {
        Self {
            p,
            n,
            modulus: modulus
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            ..Self::default()
        }
    }

    pub fn chi(mut self, e: u64) -> Self {
        self.chi_exp = Some(e);
        self
    }

    pub fn twist(mut self, a: impl ToString) -> Self {
        self.a = Some(a.to_string());
        self
    }

    pub fn domain(mut self, d: impl ToString) -> Self {
        self.domain = Some(d.to_string());
        self
    }

    pub fn r(mut self, r: u32) -> Self {
        self.r = Some(r);
        self
    }

    pub fn eps(mut self, eps: f64) -> Self {
        self.eps = Some(eps);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub params: ReportParams,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub holds: Holds,
}

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if rhs > 0.0 {
        lhs / rhs
    } else if lhs == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

impl BoundReport {
    /// An asserted bound: holds is true or false.
    pub fn asserted(theorem: Theorem, params: ReportParams, lhs: f64, rhs: f64) -> Self {
        let holds = if lhs <= rhs + ASSERT_TOLERANCE * (1.0 + rhs.abs()) {
            Holds::True
        } else {
            Holds::False
        };
        Self {
            theorem,
            params,
            lhs,
            rhs,
            ratio: ratio(lhs, rhs),
            holds,
        }
    }

    /// A ratio-only row, or an assertable one whose hypotheses fail.
    pub fn reported(theorem: Theorem, params: ReportParams, lhs: f64, rhs: f64) -> Self {
        Self {
            theorem,
            params,
            lhs,
            rhs,
            ratio: ratio(lhs, rhs),
            holds: Holds::NotApplicable,
        }
    }

    pub fn failed(&self) -> bool {
        self.holds == Holds::False
    }

    fn cells(&self) -> [String; 13] {
        let opt = |s: &Option<String>| s.clone().unwrap_or_default();
        [
            self.theorem.tag().to_string(),
            self.params.p.to_string(),
            self.params.n.to_string(),
            self.params.modulus.clone(),
            self.params.chi_exp.map(|e| e.to_string()).unwrap_or_default(),
            opt(&self.params.a),
            opt(&self.params.domain),
            self.params.r.map(|r| r.to_string()).unwrap_or_default(),
            self.params.eps.map(format_real).unwrap_or_default(),
            format_real(self.lhs),
            format_real(self.rhs),
            format_real(self.ratio),
            self.holds.as_str().to_string(),
        ]
    }

    fn to_json_value(&self) -> Value {
        let real = |x: f64| {
            parse_real(&format_real(x))
                .and_then(Number::from_f64)
                .map_or(Value::Null, Value::Number)
        };
        let mut m = Map::new();
        m.insert("theorem".into(), self.theorem.tag().into());
        m.insert("p".into(), self.params.p.into());
        m.insert("n".into(), self.params.n.into());
        m.insert("modulus".into(), self.params.modulus.clone().into());
        m.insert("chi_exp".into(), self.params.chi_exp.map_or(Value::Null, Value::from));
        m.insert("a".into(), self.params.a.clone().map_or(Value::Null, Value::from));
        m.insert("box".into(), self.params.domain.clone().map_or(Value::Null, Value::from));
        m.insert("r".into(), self.params.r.map_or(Value::Null, Value::from));
        m.insert("eps".into(), self.params.eps.map_or(Value::Null, real));
        m.insert("lhs".into(), real(self.lhs));
        m.insert("rhs".into(), real(self.rhs));
        m.insert("ratio".into(), real(self.ratio));
        m.insert("holds".into(), self.holds.as_str().into());
        Value::Object(m)
    }
}

/// Reals print with 12 significant digits in scientific notation.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.11e}")
    }
}

fn parse_real(s: &str) -> Option<f64> {
    s.parse().ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

/// Writes the table; CSV always carries the header, even when empty.
pub fn emit<W: Write>(rows: &[BoundReport], format: OutputFormat, out: W) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for row in rows {
                w.write_record(row.cells())?;
            }
            w.flush()
        }
        OutputFormat::Json => {
            let arr = Value::Array(rows.iter().map(BoundReport::to_json_value).collect());
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &arr)?;
            out.write_all(b"\n")
        }
    }
}

pub fn emit_to_string(rows: &[BoundReport], format: OutputFormat) -> String {
    let mut buf = Vec::new();
    emit(rows, format, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("report is UTF-8")
}
