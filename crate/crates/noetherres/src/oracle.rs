//! Brute-force counters used by the `check` command.

use std::collections::BTreeSet;

use noetherres_core::toric::ToricPresentation;
use noetherres_core::Monomial;

/// Number of monomials of each weighted degree `0..=bound` outside the
/// monomial ideal generated by `lms`.
pub fn standard_monomial_counts(lms: &[Monomial], weights: &[u32], bound: u64) -> Vec<u64> {
    let n = weights.len();
    let mut counts = vec![0u64; bound as usize + 1];
    let mut e = vec![0u32; n];
    fn rec(i: usize, deg: u64, e: &mut Vec<u32>, lms: &[Monomial], w: &[u32], bound: u64, counts: &mut [u64]) {
        if i == w.len() {
            counts[deg as usize] += 1;
            return;
        }
        let mut d = deg;
        loop {
            rec(i + 1, d, e, lms, w, bound, counts);
            d += w[i] as u64;
            if d > bound {
                break;
            }
            e[i] += 1;
            // the standard monomials form an order ideal
            if lms.iter().any(|m| m.exps().iter().zip(e.iter()).all(|(a, b)| a <= b)) {
                break;
            }
        }
        e[i] = 0;
    }
    if !lms.iter().any(|m| m.is_one()) {
        rec(0, 0, &mut e, lms, weights, bound, &mut counts);
    }
    counts
}

/// All semigroup elements with every coordinate at most `bound`.
pub fn semigroup_box(p: &ToricPresentation, bound: u64) -> BTreeSet<Vec<u64>> {
    let cols = p.columns();
    let mut seen = BTreeSet::new();
    let mut stack = vec![vec![0u64; p.d()]];
    while let Some(s) = stack.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        for c in &cols {
            let t: Vec<u64> = s.iter().zip(c).map(|(a, &b)| a + b as u64).collect();
            if t.iter().all(|&x| x <= bound) && !seen.contains(&t) {
                stack.push(t);
            }
        }
    }
    seen
}
