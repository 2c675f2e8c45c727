//! Machine-readable reports and their plain-text rendering.

use noetherres_core::groebner::BettiTable;
use serde::{Deserialize, Serialize};

/// Everything a command produced. Absent sections are omitted from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: InputInfo,
    pub field: FieldInfo,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<SetsInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regularity: Option<RegularityInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<ChecksInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputInfo {
    pub source: String,
    pub kind: String,
    pub n: usize,
    pub d: usize,
    pub weights: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub characteristic: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionInfo {
    pub schreyer_ranks: Vec<usize>,
    pub minimal_ranks: Vec<usize>,
    pub schreyer_labels: Vec<Vec<String>>,
    pub minimal_labels: Vec<Vec<String>>,
    /// Weighted degrees of the minimal resolution's basis elements.
    pub minimal_shifts: Vec<Vec<u64>>,
    pub pd_a: usize,
    pub pd_r: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub row: i64,
    pub entries: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub grading: String,
    pub minimal: bool,
    pub totals: Vec<usize>,
    pub rows: Vec<BettiRow>,
}

impl BettiJson {
    pub fn from_table(t: &BettiTable, grading: &str) -> Self {
        let rows = match t.row_range() {
            Some((lo, hi)) => (lo..=hi).map(|r| BettiRow { row: r, entries: t.row(r) }).collect(),
            None => Vec::new(),
        };
        BettiJson { grading: grading.to_string(), minimal: t.is_minimal(), totals: t.totals().to_vec(), rows }
    }

    /// Rebuilds the table.
    pub fn to_table(&self) -> BettiTable {
        let mut degrees: Vec<Vec<u64>> = vec![Vec::new(); self.totals.len()];
        for r in &self.rows {
            for (i, &c) in r.entries.iter().enumerate() {
                for _ in 0..c {
                    degrees[i].push((r.row + i as i64) as u64);
                }
            }
        }
        BettiTable::from_degrees(&degrees, self.minimal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiInfo {
    pub minimal: BettiJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schreyer: Option<BettiJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub degree: [u64; 3],
    pub label: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalJson {
    pub ap: Vec<[u64; 3]>,
    pub e31: Vec<[u64; 3]>,
    pub e20: Vec<[u64; 3]>,
    pub e30: Vec<[u64; 3]>,
    pub e33: Vec<[u64; 3]>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetsInfo {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner_basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b0: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1prime: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2prime: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<ExceptionalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<Vec<ClassEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiTerm {
    pub degree: [u64; 3],
    pub coefficient: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesInfo {
    /// Weighted degrees are divided by this unit before indexing.
    pub degree_unit: u64,
    pub numerator_schreyer: Vec<i64>,
    pub numerator_minimal: Vec<i64>,
    /// Exponents of the denominator factors `1 − t^e`.
    pub denominator: Vec<u64>,
    pub multiplicity: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multigraded: Option<Vec<MultiTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityInfo {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from_resolution: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksInfo {
    pub seed: u64,
    pub results: Vec<CheckResult>,
}

impl ChecksInfo {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

fn list(out: &mut String, name: &str, v: &Option<Vec<String>>) {
    if let Some(v) = v {
        out.push_str(&format!("{name} ({}):", v.len()));
        if v.is_empty() {
            out.push_str(" none");
        }
        for m in v {
            out.push(' ');
            out.push_str(m);
        }
        out.push('\n');
    }
}

fn degrees(out: &mut String, name: &str, v: &[[u64; 3]]) {
    out.push_str(&format!("{name} ({}):", v.len()));
    for s in v {
        out.push_str(&format!(" ({},{},{})", s[0], s[1], s[2]));
    }
    out.push('\n');
}

fn poly1(v: &[i64]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match i {
            0 => format!("{c}"),
            1 => format!("{c}*t"),
            _ => format!("{c}*t^{i}"),
        })
        .collect();
    if terms.is_empty() {
        String::from("0")
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

impl Report {
    /// Human-readable text.
    pub fn render_ascii(&self) -> String {
        let mut out = String::new();
        let i = &self.input;
        out.push_str(&format!(
            "{}: {} input {} (n = {}, d = {}), characteristic {}\n",
            self.command, i.kind, i.source, i.n, i.d, self.field.characteristic
        ));
        if let Some(s) = &self.sets {
            if let Some(g) = &s.groebner_basis {
                out.push_str(&format!("reduced Gröbner basis ({} elements):\n", g.len()));
                for p in g {
                    out.push_str(&format!("  {p}\n"));
                }
            }
            list(&mut out, "B0", &s.b0);
            list(&mut out, "B1'", &s.b1prime);
            list(&mut out, "B2'", &s.b2prime);
            list(&mut out, "C", &s.c);
            list(&mut out, "C1", &s.c1);
            list(&mut out, "C2", &s.c2);
            list(&mut out, "B1", &s.b1);
            list(&mut out, "B2", &s.b2);
            if let Some(e) = &s.exceptional {
                degrees(&mut out, "AP", &e.ap);
                degrees(&mut out, "E31", &e.e31);
                degrees(&mut out, "E20", &e.e20);
                degrees(&mut out, "E30", &e.e30);
                degrees(&mut out, "E33", &e.e33);
            }
            if let Some(c) = &s.classification {
                out.push_str("classification:\n");
                for e in c {
                    out.push_str(&format!("  ({},{},{}) {}\n", e.degree[0], e.degree[1], e.degree[2], e.label));
                }
            }
        }
        if let Some(r) = &self.resolution {
            out.push_str(&format!("Schreyer ranks: {:?}\n", r.schreyer_ranks));
            out.push_str(&format!("minimal ranks: {:?}\n", r.minimal_ranks));
            out.push_str(&format!("pd_A = {}, depth = {}, pd_R = {}\n", r.pd_a, r.depth, r.pd_r));
        }
        if let Some(b) = &self.betti {
            if let Some(s) = &b.schreyer {
                out.push_str(&format!("Schreyer resolution ({} grading):\n", s.grading));
                out.push_str(&s.to_table().render());
            }
            out.push_str(&format!("Betti table ({} grading):\n", b.minimal.grading));
            out.push_str(&b.minimal.to_table().render());
        }
        if let Some(s) = &self.series {
            out.push_str(&format!("degree unit: {}\n", s.degree_unit));
            out.push_str(&format!("numerator (Schreyer): {}\n", poly1(&s.numerator_schreyer)));
            out.push_str(&format!("numerator (minimal):  {}\n", poly1(&s.numerator_minimal)));
            let den: Vec<String> = s.denominator.iter().map(|e| format!("(1 - t^{e})")).collect();
            out.push_str(&format!("denominator: {}\n", den.join("")));
            out.push_str(&format!("multiplicity: {}\n", s.multiplicity));
            if let Some(m) = &s.multigraded {
                let terms: Vec<String> = m
                    .iter()
                    .map(|t| format!("{}*t^({},{},{})", t.coefficient, t.degree[0], t.degree[1], t.degree[2]))
                    .collect();
                out.push_str(&format!("multigraded numerator: {}\n", terms.join(" + ").replace("+ -", "- ")));
            }
        }
        if let Some(r) = &self.regularity {
            match r.from_resolution {
                Some(x) => out.push_str(&format!("regularity (resolution): {x}\n")),
                None => out.push_str("regularity (resolution): unavailable\n"),
            }
            if let Some(x) = r.surface {
                out.push_str(&format!("regularity (Apery and exceptional sets): {x}\n"));
            }
            for n in &r.notes {
                out.push_str(&format!("note: {n}\n"));
            }
        }
        if let Some(c) = &self.checks {
            out.push_str(&format!("checks (seed {}):\n", c.seed));
            for r in &c.results {
                let mark = if r.passed { "ok  " } else { "FAIL" };
                out.push_str(&format!("  {mark} {}: {}\n", r.name, r.detail));
            }
            let failed = c.results.iter().filter(|r| !r.passed).count();
            out.push_str(&format!("{} checks, {} failed\n", c.results.len(), failed));
        }
        out
    }
}
