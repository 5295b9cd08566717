//! Report assembly and rendering: JSON, CSV, and Markdown views of the
//! bounds chain, the reduction sweeps, and the search results. Reports embed
//! the run configuration and library version so any output can be traced
//! back to the exact invocation that produced it.

use crate::matveev::BoundChainReport;
use crate::reduction::StepReport;
use crate::search::{GoldenReport, SolutionRecord};
use rug::Integer;
use serde::{Serialize, Serializer};
use std::fmt::Write as _;

pub fn integer_as_string<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Output format selector shared by all subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

/// Run metadata embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub bases: Vec<u32>,
    pub precision_bits: u32,
    pub strict_heights: bool,
    pub threads: Option<usize>,
}

impl Provenance {
    pub fn new(
        command: &str,
        bases: &[u32],
        precision_bits: u32,
        strict_heights: bool,
        threads: Option<usize>,
    ) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            bases: bases.to_vec(),
            precision_bits,
            strict_heights,
            threads,
        }
    }
}

/// Serializable view of one solution record.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionRow {
    pub g: u32,
    pub k: u64,
    pub value: String,
    pub factors: [FactorRow; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorRow {
    pub digit: u32,
    pub length: u32,
    pub numeral: String,
    pub value: String,
}

impl SolutionRow {
    pub fn from_record(r: &SolutionRecord) -> Self {
        let factor = |i: usize| FactorRow {
            digit: r.factors[i].digit(),
            length: r.factors[i].length(),
            numeral: r.factors[i].numeral(),
            value: r.factors[i].value().to_string(),
        };
        Self {
            g: r.base,
            k: r.k,
            value: r.value.to_string(),
            factors: [factor(0), factor(1), factor(2)],
        }
    }

    pub fn bracket(&self) -> String {
        format!(
            "[{},{},{}]_{}",
            self.factors[0].numeral, self.factors[1].numeral, self.factors[2].numeral, self.g
        )
    }
}

#[derive(Serialize)]
pub struct BoundsOutput {
    pub provenance: Provenance,
    pub reports: Vec<BoundChainReport>,
}

#[derive(Serialize)]
pub struct ReduceOutput {
    pub provenance: Provenance,
    pub steps: Vec<StepReport>,
}

#[derive(Serialize)]
pub struct SearchOutput {
    pub provenance: Provenance,
    pub solutions: Vec<SolutionRow>,
    pub golden: GoldenReport,
}

#[derive(Serialize)]
pub struct AllOutput {
    pub provenance: Provenance,
    pub bounds: Vec<BoundChainReport>,
    pub steps: Vec<StepReport>,
    pub solutions: Vec<SolutionRow>,
    pub golden: GoldenReport,
    pub success: bool,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

fn sci(v: f64) -> String {
    format!("{v:.6e}")
}

pub fn bounds_csv(reports: &[BoundChainReport]) -> String {
    let mut out = String::from("g,profile,ell_bound,m_bound,n_bound,k_bound,n_ceiling,k_ceiling\n");
    for r in reports {
        let _ = writeln!(
            out,
            "{},{:?},{},{},{},{},{},{}",
            r.g,
            r.profile,
            sci(r.ell_bound),
            sci(r.m_bound),
            sci(r.n_bound),
            sci(r.k_bound),
            sci(r.n_ceiling),
            sci(r.k_ceiling)
        );
    }
    out
}

pub fn bounds_markdown(reports: &[BoundChainReport]) -> String {
    let mut out = String::from(
        "| g | ell bound | m bound | n bound | k bound | n ceiling | k ceiling |\n|---|---|---|---|---|---|---|\n",
    );
    for r in reports {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} |",
            r.g,
            sci(r.ell_bound),
            sci(r.m_bound),
            sci(r.n_bound),
            sci(r.k_bound),
            sci(r.n_ceiling),
            sci(r.k_ceiling)
        );
    }
    if let Some(first) = reports.first() {
        out.push('\n');
        out.push_str("| constant | display | recomputed | chained | recomputed/display |\n|---|---|---|---|---|\n");
        for (name, c) in &first.intermediate {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {:.4} |",
                name,
                sci(c.display),
                sci(c.exact),
                sci(c.chained),
                c.exact_ratio()
            );
        }
    }
    out
}

pub fn reduce_csv(steps: &[StepReport]) -> String {
    let mut out = String::from(
        "g,step,instances,first_index_over_6m,worst_index,worst_epsilon,worst_w_bound,bound,alt_bound,restricted_m_bound,worst_q\n",
    );
    for s in steps {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            s.g,
            s.step,
            s.instances,
            s.first_index_over_6m,
            s.worst.index,
            sci(s.worst.epsilon),
            sci(s.worst.w_bound),
            s.bound,
            s.alt_bound.map_or(String::new(), |v| v.to_string()),
            s.restricted_m_bound.map_or(String::new(), |v| v.to_string()),
            s.worst.q_decimal
        );
    }
    out
}

pub fn reduce_markdown(steps: &[StepReport]) -> String {
    let mut out = String::new();
    for step_no in 1..=3u8 {
        let rows: Vec<&StepReport> = steps.iter().filter(|s| s.step == step_no).collect();
        if rows.is_empty() {
            continue;
        }
        let var = match step_no {
            1 => "ell",
            2 => "m",
            _ => "n",
        };
        let _ = writeln!(out, "### Step {step_no}: bound on {var}\n");
        out.push_str("| g | convergent | min epsilon at it | worst instance | bound |\n|---|---|---|---|---|\n");
        for s in rows {
            let eps_at_worst = s
                .eps_min_by_index
                .get(&s.worst.index)
                .copied()
                .unwrap_or(s.worst.epsilon);
            let _ = writeln!(
                out,
                "| {} | q_{} | {} | {} | {} ≤ {} |",
                s.g,
                s.worst.index,
                sci(eps_at_worst),
                s.worst.label,
                var,
                s.bound
            );
        }
        out.push('\n');
    }
    out
}

pub fn search_csv(rows: &[SolutionRow]) -> String {
    let mut out = String::from("g,k,value,d1,len1,d2,len2,d3,len3\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.g,
            r.k,
            r.value,
            r.factors[0].digit,
            r.factors[0].length,
            r.factors[1].digit,
            r.factors[1].length,
            r.factors[2].digit,
            r.factors[2].length
        );
    }
    out
}

/// Markdown table grouped by k, factorization brackets listed across bases.
pub fn search_markdown(rows: &[SolutionRow], golden: Option<&GoldenReport>) -> String {
    let mut out = String::from("| k | value | factorizations |\n|---|---|---|\n");
    let mut by_k: std::collections::BTreeMap<u64, (String, Vec<String>)> =
        std::collections::BTreeMap::new();
    for r in rows {
        let entry = by_k
            .entry(r.k)
            .or_insert_with(|| (r.value.clone(), Vec::new()));
        entry.1.push(r.bracket());
    }
    for (k, (value, brackets)) in &by_k {
        let _ = writeln!(out, "| {} | {} | {} |", k, value, brackets.join(", "));
    }
    if let Some(g) = golden {
        out.push('\n');
        let _ = writeln!(
            out,
            "golden comparison: matched {}, missing {:?}, unexpected {:?}, value set ok: {}",
            g.matched, g.missing, g.unexpected, g.value_set_matches
        );
    }
    out
}
