//! Graded free resolutions with explicit differentials, minimalization and
//! Betti tables.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{Monomial, PolyRing, Polynomial, WeightVector};

use super::module::FreeModuleElement;

/// Dense row-major matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<Polynomial<E>>,
}

impl<E: Clone> Matrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Polynomial::zero(); rows * cols] }
    }

    /// Matrix whose `c`-th column is `columns[c]`.
    pub fn from_columns(rows: usize, columns: &[FreeModuleElement<E>]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, f) in col.components() {
                if r >= rows {
                    return Err(Error::BasisIndexUnknown(r));
                }
                m.set(r, c, f.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial<E> {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, f: Polynomial<E>) {
        self.data[r * self.cols + c] = f;
    }

    pub fn column(&self, c: usize) -> FreeModuleElement<E> {
        FreeModuleElement::from_components((0..self.rows).map(|r| (r, self.get(r, c).clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|f| f.is_zero())
    }

    pub fn nonzero_entries(&self) -> usize {
        self.data.iter().filter(|f| !f.is_zero()).count()
    }

    pub fn remove_row(&mut self, r: usize) {
        self.data.drain(r * self.cols..(r + 1) * self.cols);
        self.rows -= 1;
    }

    pub fn remove_col(&mut self, c: usize) {
        let mut k = 0;
        let cols = self.cols;
        self.data.retain(|_| {
            let keep = k % cols != c;
            k += 1;
            keep
        });
        self.cols -= 1;
    }
}

/// `a · b` over `ring`.
pub fn matrix_mul<K: Field>(
    ring: &PolyRing<K>,
    a: &Matrix<K::Elem>,
    b: &Matrix<K::Elem>,
) -> Result<Matrix<K::Elem>> {
    if a.cols != b.rows {
        return Err(Error::LengthMismatch { expected: a.cols, found: b.rows });
    }
    let mut out = Matrix::zeros(a.rows, b.cols);
    for r in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(r, k);
            if x.is_zero() {
                continue;
            }
            for c in 0..b.cols {
                let y = b.get(k, c);
                if y.is_zero() {
                    continue;
                }
                let v = ring.add(out.get(r, c), &ring.mul(x, y));
                out.set(r, c, v);
            }
        }
    }
    Ok(out)
}

/// `0 → F_p → … → F_1 → F_0`, where `F_i` has one basis element per label
/// and `maps[i]` is the differential `F_{i+1} → F_i` (rows index `F_i`).
/// Shifts are weighted degrees of the labels.
#[derive(Clone, Debug)]
pub struct GradedFreeResolution<K: Field> {
    ring: PolyRing<K>,
    weights: WeightVector,
    labels: Vec<Vec<Monomial>>,
    shifts: Vec<Vec<u64>>,
    maps: Vec<Matrix<K::Elem>>,
    minimal: bool,
}

impl<K: Field> GradedFreeResolution<K> {
    pub fn new(
        ring: PolyRing<K>,
        weights: WeightVector,
        labels: Vec<Vec<Monomial>>,
        maps: Vec<Matrix<K::Elem>>,
    ) -> Result<Self> {
        if weights.len() != ring.nvars() {
            return Err(Error::LengthMismatch { expected: ring.nvars(), found: weights.len() });
        }
        if maps.len() + 1 != labels.len().max(1) {
            return Err(Error::LengthMismatch { expected: labels.len().saturating_sub(1), found: maps.len() });
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != labels[i].len() {
                return Err(Error::LengthMismatch { expected: labels[i].len(), found: m.rows() });
            }
            if m.cols() != labels[i + 1].len() {
                return Err(Error::LengthMismatch { expected: labels[i + 1].len(), found: m.cols() });
            }
        }
        let shifts = labels.iter().map(|l| l.iter().map(|u| weights.degree(u)).collect()).collect();
        let mut res = GradedFreeResolution { ring, weights, labels, shifts, maps, minimal: false };
        res.minimal = res.has_no_units();
        res.trim();
        Ok(res)
    }

    pub fn ring(&self) -> &PolyRing<K> {
        &self.ring
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn labels(&self) -> &[Vec<Monomial>] {
        &self.labels
    }

    pub fn shifts(&self) -> &[Vec<u64>] {
        &self.shifts
    }

    /// `maps()[i]` is the differential `F_{i+1} → F_i`.
    pub fn maps(&self) -> &[Matrix<K::Elem>] {
        &self.maps
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.len()).collect()
    }

    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        self.labels.iter().rposition(|l| !l.is_empty()).unwrap_or(0)
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    fn has_no_units(&self) -> bool {
        self.maps.iter().all(|m| m.data.iter().all(|f| f.is_zero() || !is_constant(f)))
    }

    fn trim(&mut self) {
        while self.labels.len() > 1 && self.labels.last().unwrap().is_empty() {
            self.labels.pop();
            self.shifts.pop();
            self.maps.pop();
        }
    }

    /// Whether consecutive differentials compose to zero.
    pub fn check_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| matrix_mul(&self.ring, &w[0], &w[1]).map(|m| m.is_zero()).unwrap_or(false))
    }

    /// Whether every entry is homogeneous of degree `column shift − row shift`.
    pub fn check_homogeneous(&self) -> bool {
        for (i, m) in self.maps.iter().enumerate() {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let f = m.get(r, c);
                    if f.is_zero() {
                        continue;
                    }
                    let (hi, lo) = (self.shifts[i + 1][c], self.shifts[i][r]);
                    if hi < lo {
                        return false;
                    }
                    if f.terms().iter().any(|t| self.weights.degree(&t.mono) != hi - lo) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Removes pairs of basis elements joined by a unit entry until none
    /// remain. Entries are scanned column by column, top to bottom.
    pub fn minimalize(&self) -> Self {
        let field = self.ring.field();
        let mut res = self.clone();
        'outer: loop {
            for i in 0..res.maps.len() {
                let pivot = {
                    let m = &res.maps[i];
                    let mut found = None;
                    'scan: for c in 0..m.cols() {
                        for r in 0..m.rows() {
                            let f = m.get(r, c);
                            if !f.is_zero() && is_constant(f) {
                                found = Some((r, c));
                                break 'scan;
                            }
                        }
                    }
                    found
                };
                if let Some((r, c)) = pivot {
                    let m = &mut res.maps[i];
                    let lambda = m.get(r, c).terms()[0].coeff.clone();
                    let inv = field.inv(&lambda).expect("nonzero pivot");
                    let pivot_col: Vec<(usize, Polynomial<K::Elem>)> = (0..m.rows())
                        .filter(|&k| k != r && !m.get(k, c).is_zero())
                        .map(|k| (k, m.get(k, c).clone()))
                        .collect();
                    for j in 0..m.cols() {
                        if j == c || m.get(r, j).is_zero() {
                            continue;
                        }
                        let factor = res.ring.scale(m.get(r, j), &inv);
                        for (k, a) in &pivot_col {
                            let v = res.ring.sub(m.get(*k, j), &res.ring.mul(&factor, a));
                            m.set(*k, j, v);
                        }
                        m.set(r, j, Polynomial::zero());
                    }
                    m.remove_row(r);
                    m.remove_col(c);
                    if i > 0 {
                        res.maps[i - 1].remove_col(r);
                    }
                    if i + 1 < res.maps.len() {
                        res.maps[i + 1].remove_row(c);
                    }
                    res.labels[i].remove(r);
                    res.shifts[i].remove(r);
                    res.labels[i + 1].remove(c);
                    res.shifts[i + 1].remove(c);
                    continue 'outer;
                }
            }
            break;
        }
        res.trim();
        res.minimal = true;
        res
    }

    /// `Σ_i (−1)^i Σ_v t^{shift}`, indexed by degree.
    pub fn euler_numerator(&self) -> Vec<i64> {
        let top = self.shifts.iter().flatten().copied().max().unwrap_or(0) as usize;
        let mut h = vec![0i64; top + 1];
        for (i, s) in self.shifts.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &d in s {
                h[d as usize] += sign;
            }
        }
        while h.len() > 1 && *h.last().unwrap() == 0 {
            h.pop();
        }
        h
    }

    pub fn betti_table(&self, grading: BettiGrading) -> Result<BettiTable> {
        let degrees: Vec<Vec<u64>> = match grading {
            BettiGrading::Omega => {
                let g = self.weights.gcd() as u64;
                self.shifts.iter().map(|s| s.iter().map(|d| d / g).collect()).collect()
            }
            BettiGrading::Scaled(dd) => {
                if dd == 0 {
                    return Err(Error::NonPositiveWeight(0));
                }
                let mut out = Vec::new();
                for s in &self.shifts {
                    let mut v = Vec::new();
                    for &d in s {
                        if d % dd != 0 {
                            return Err(Error::NotHomogeneous(format!("shift {} is not a multiple of {}", d, dd)));
                        }
                        v.push(d / dd);
                    }
                    out.push(v);
                }
                out
            }
            BettiGrading::Standard => {
                self.labels.iter().map(|l| l.iter().map(|u| u.degree()).collect()).collect()
            }
        };
        Ok(BettiTable::from_degrees(&degrees, self.minimal))
    }
}

fn is_constant<E>(f: &Polynomial<E>) -> bool {
    f.len() == 1 && f.terms()[0].mono.is_one()
}

/// How shifts are turned into Betti table degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BettiGrading {
    /// Weighted degree divided by the gcd of the weights.
    Omega,
    /// Weighted degree divided by the given constant.
    Scaled(u64),
    /// Total degree of the labels.
    Standard,
}

/// `entries[(r, i)]` counts basis elements of `F_i` in degree `r + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(i64, usize), usize>,
    totals: Vec<usize>,
    minimal: bool,
}

impl BettiTable {
    pub fn from_degrees(degrees: &[Vec<u64>], minimal: bool) -> Self {
        let mut entries = BTreeMap::new();
        for (i, ds) in degrees.iter().enumerate() {
            for &d in ds {
                *entries.entry((d as i64 - i as i64, i)).or_insert(0) += 1;
            }
        }
        let mut totals: Vec<usize> = degrees.iter().map(|d| d.len()).collect();
        while totals.len() > 1 && *totals.last().unwrap() == 0 {
            totals.pop();
        }
        BettiTable { entries, totals, minimal }
    }

    pub fn get(&self, row: i64, col: usize) -> usize {
        self.entries.get(&(row, col)).copied().unwrap_or(0)
    }

    pub fn totals(&self) -> &[usize] {
        &self.totals
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn row_range(&self) -> Option<(i64, i64)> {
        let rows = self.entries.keys().map(|k| k.0);
        let lo = rows.clone().min()?;
        let hi = rows.max()?;
        Some((lo, hi))
    }

    /// Row `r` as a vector over the columns.
    pub fn row(&self, r: i64) -> Vec<usize> {
        (0..self.totals.len()).map(|i| self.get(r, i)).collect()
    }

    /// Plain-text rendering with a totals line.
    pub fn render(&self) -> String {
        let ncols = self.totals.len();
        let mut s = String::from("      ");
        for i in 0..ncols {
            s.push_str(&format!("{:>6}", i));
        }
        s.push('\n');
        let rule: String = "-".repeat(6 + 6 * ncols);
        s.push_str(&rule);
        s.push('\n');
        if let Some((lo, hi)) = self.row_range() {
            for r in lo..=hi {
                s.push_str(&format!("{:>5}:", r));
                for i in 0..ncols {
                    let v = self.get(r, i);
                    if v == 0 {
                        s.push_str(&format!("{:>6}", "-"));
                    } else {
                        s.push_str(&format!("{:>6}", v));
                    }
                }
                s.push('\n');
            }
        }
        s.push_str(&rule);
        s.push('\n');
        s.push_str("total:");
        for t in &self.totals {
            s.push_str(&format!("{:>6}", t));
        }
        s.push('\n');
        if !self.minimal {
            s.push_str("(not minimal)\n");
        }
        s
    }
}
