//! Input files: generator matrices and explicit ideal generators.

use std::path::Path;

use noetherres_core::shortres::ShortResInput;
use noetherres_core::toric::{validate_presentation, ToricPresentation};
use noetherres_core::{Field, MonomialOrder, PolyRing, WeightVector};
use serde::Deserialize;

use crate::CliError;

/// An ideal given by generators over `x1, …, xn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub n: usize,
    pub weights: Vec<u32>,
    pub d: Option<usize>,
    pub polynomials: Vec<String>,
}

/// One parsed input together with an optional characteristic stored in the
/// file itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Matrix(ToricPresentation),
    Generators(GeneratorSpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedInput {
    pub input: Input,
    pub characteristic: Option<u64>,
}

#[derive(Deserialize)]
struct JsonMatrix {
    #[serde(default, rename = "char")]
    characteristic: Option<u64>,
    matrix: Vec<Vec<u32>>,
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_numbers<T: std::str::FromStr>(line: &str, lineno: usize) -> Result<Vec<T>, CliError> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| parse_err(format!("line {lineno}: `{t}` is not a natural number"))))
        .collect()
}

/// `d n` on the first line, then `d` rows of `n` naturals.
pub fn parse_matrix_text(text: &str) -> Result<ToricPresentation, CliError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err("empty matrix file"))?;
    let dims: Vec<usize> = parse_numbers(header, ln)?;
    let [d, n] = dims[..] else {
        return Err(parse_err(format!("line {ln}: expected `d n`")));
    };
    let mut rows = Vec::with_capacity(d);
    for (ln, l) in lines {
        let row: Vec<u32> = parse_numbers(l, ln)?;
        if row.len() != n {
            return Err(parse_err(format!("line {ln}: expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != d {
        return Err(parse_err(format!("expected {d} rows, found {}", rows.len())));
    }
    Ok(validate_presentation(&rows)?)
}

/// Rows separated by `;`, entries by spaces or commas.
pub fn parse_inline_matrix(text: &str) -> Result<ToricPresentation, CliError> {
    let rows: Vec<Vec<u32>> = text
        .split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| parse_numbers(r, 1))
        .collect::<Result<_, _>>()?;
    if rows.is_empty() {
        return Err(parse_err("empty inline matrix"));
    }
    Ok(validate_presentation(&rows)?)
}

/// Header lines `n:`, `w:`, `d:` in any order, then one polynomial per line.
pub fn parse_generator_text(text: &str) -> Result<GeneratorSpec, CliError> {
    let mut n = None;
    let mut w = None;
    let mut d = None;
    let mut polys = Vec::new();
    for (ln, l) in content_lines(text) {
        let header = l.split_once(':').filter(|(k, _)| matches!(k.trim(), "n" | "w" | "d"));
        match header {
            Some((k, v)) if polys.is_empty() => match k.trim() {
                "n" => n = Some(parse_numbers::<usize>(v, ln)?.first().copied().ok_or_else(|| parse_err(format!("line {ln}: missing count")))?),
                "w" => w = Some(parse_numbers::<u32>(v, ln)?),
                _ => d = Some(parse_numbers::<usize>(v, ln)?.first().copied().ok_or_else(|| parse_err(format!("line {ln}: missing dimension")))?),
            },
            Some(_) => return Err(parse_err(format!("line {ln}: header after the first polynomial"))),
            None => polys.push(l.to_string()),
        }
    }
    let n = n.or_else(|| w.as_ref().map(Vec::len)).ok_or_else(|| parse_err("missing `n:` line"))?;
    let weights = w.unwrap_or_else(|| vec![1; n]);
    if weights.len() != n {
        return Err(parse_err(format!("`w:` has {} entries but n = {n}", weights.len())));
    }
    Ok(GeneratorSpec { n, weights, d, polynomials: polys })
}

pub fn parse_input_text(text: &str) -> Result<LoadedInput, CliError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let j: JsonMatrix = serde_json::from_str(trimmed).map_err(|e| parse_err(format!("JSON matrix: {e}")))?;
        return Ok(LoadedInput { input: Input::Matrix(validate_presentation(&j.matrix)?), characteristic: j.characteristic });
    }
    let first = content_lines(text).next().map(|(_, l)| l).unwrap_or("");
    let input = if first.contains(':') {
        Input::Generators(parse_generator_text(text)?)
    } else {
        Input::Matrix(parse_matrix_text(text)?)
    };
    Ok(LoadedInput { input, characteristic: None })
}

pub fn load_input(path: &Path) -> Result<LoadedInput, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_input_text(&text)
}

impl GeneratorSpec {
    /// The ring with the weighted reverse lexicographic order.
    pub fn ring<K: Field>(&self, field: K) -> Result<PolyRing<K>, CliError> {
        let names = (1..=self.n).map(|i| format!("x{i}")).collect();
        Ok(PolyRing::with_names(field, MonomialOrder::OmegaRevLex(WeightVector::new(self.weights.clone())?), names)?)
    }
}

impl Input {
    pub fn short_res_input<K: Field>(&self, field: K) -> Result<ShortResInput<K>, CliError> {
        match self {
            Input::Matrix(p) => Ok(ShortResInput::from_presentation(p, field)?),
            Input::Generators(g) => {
                let ring = g.ring(field)?;
                let polys = g.polynomials.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>, _>>()?;
                Ok(ShortResInput::new(&ring, &polys, g.d)?)
            }
        }
    }

    pub fn presentation(&self) -> Option<&ToricPresentation> {
        match self {
            Input::Matrix(p) => Some(p),
            Input::Generators(_) => None,
        }
    }

    pub fn weights(&self) -> Vec<u32> {
        match self {
            Input::Matrix(p) => p.weights().weights().to_vec(),
            Input::Generators(g) => g.weights.clone(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Input::Matrix(p) => p.n(),
            Input::Generators(g) => g.n,
        }
    }
}

/// Writes a matrix in the text format.
pub fn format_matrix(p: &ToricPresentation) -> String {
    let mut s = format!("{} {}\n", p.d(), p.n());
    for r in p.rows() {
        let row: Vec<String> = r.iter().map(u32::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}
