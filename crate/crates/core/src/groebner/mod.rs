//! Buchberger's algorithm for polynomial ideals, Gröbner bases of
//! submodules of free `A`-modules under Schreyer orders, graded free
//! resolutions and Betti tables.

pub mod module;
pub mod resolution;

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial, Term, WeightVector};

pub use module::{
    compare_module_terms, module_groebner_and_syzygies, BasisKey, FreeModuleElement, ModuleOrder,
    SyzygyOptions,
};
pub use resolution::{BettiTable, GradedFreeResolution, Matrix};

/// A Gröbner basis of monic polynomials, sorted by ascending leading
/// monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<K: Field> {
    ring: PolyRing<K>,
    elements: Vec<Polynomial<K::Elem>>,
    reduced: bool,
}

impl<K: Field> GroebnerBasis<K> {
    pub fn ring(&self) -> &PolyRing<K> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial<K::Elem>] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial<K::Elem>> {
        self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    /// The remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        let lms: Vec<(u64, &Monomial)> = self
            .elements
            .iter()
            .map(|g| {
                let m = g.leading_monomial().unwrap();
                (m.support_mask(), m)
            })
            .collect();
        reduce_with(&self.ring, f, &self.elements, &lms, true)
    }

    pub fn contains(&self, f: &Polynomial<K::Elem>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether `m` lies outside the leading-term ideal.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.elements.iter().any(|g| g.leading_monomial().unwrap().divides(m))
    }

    /// Checks the defining property of a reduced basis.
    pub fn check_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        for (i, g) in self.elements.iter().enumerate() {
            if !self.ring.field().is_one(g.leading_coeff().unwrap()) {
                return false;
            }
            for (j, l) in lms.iter().enumerate() {
                if i != j && l.divides(&lms[i]) {
                    return false;
                }
                if g.terms()[1..].iter().any(|t| l.divides(&t.mono)) {
                    return false;
                }
            }
        }
        true
    }

    /// Gröbner basis of the ideal generated by this basis and `extra`.
    pub fn extend(&self, extra: &[Polynomial<K::Elem>]) -> GroebnerBasis<K> {
        let mut gens = self.elements.clone();
        gens.extend(extra.iter().cloned());
        reduced_groebner_basis(&self.ring, &gens)
    }
}

/// Tuning knobs for [`reduced_groebner_basis_with`].
#[derive(Clone, Debug, Default)]
pub struct BuchbergerOptions {
    /// Weights used for the sugar degree; defaults to the order's weights.
    pub sugar_weights: Option<WeightVector>,
}

/// The reduced Gröbner basis of `⟨gens⟩` under the ring's order.
pub fn reduced_groebner_basis<K: Field>(
    ring: &PolyRing<K>,
    gens: &[Polynomial<K::Elem>],
) -> GroebnerBasis<K> {
    reduced_groebner_basis_with(ring, gens, &BuchbergerOptions::default())
}

pub fn reduced_groebner_basis_with<K: Field>(
    ring: &PolyRing<K>,
    gens: &[Polynomial<K::Elem>],
    opts: &BuchbergerOptions,
) -> GroebnerBasis<K> {
    let weights = opts.sugar_weights.clone().unwrap_or_else(|| match ring.order() {
        MonomialOrder::OmegaRevLex(w) => w.clone(),
        MonomialOrder::Elimination { weights, .. } => weights.clone(),
        _ => WeightVector::standard(ring.nvars()),
    });
    let mut engine = Engine::new(ring, weights);
    let mut input: Vec<Polynomial<K::Elem>> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| ring.make_monic(g)).collect();
    // deterministic processing order
    input.sort_by(|a, b| {
        let da = engine.sugar_w.degree(a.leading_monomial().unwrap());
        let db = engine.sugar_w.degree(b.leading_monomial().unwrap());
        da.cmp(&db).then_with(|| cmp_polys(ring, a, b))
    });
    input.dedup();
    for g in input {
        let g = engine.reduce(&g);
        if !g.is_zero() {
            let s = engine.sugar_w.degree(g.leading_monomial().unwrap());
            // input sugar is the maximal degree of its terms
            let s = g.terms().iter().map(|t| engine.sugar_w.degree(&t.mono)).max().unwrap_or(s);
            engine.insert(g, s);
        }
    }
    engine.run();
    GroebnerBasis { ring: ring.clone(), elements: engine.finish(), reduced: true }
}

fn cmp_polys<K: Field>(ring: &PolyRing<K>, a: &Polynomial<K::Elem>, b: &Polynomial<K::Elem>) -> Ordering {
    for (s, t) in a.terms().iter().zip(b.terms()) {
        match ring.cmp(&s.mono, &t.mono) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len()).then_with(|| {
        let fa: Vec<String> = a.terms().iter().map(|t| ring.field().format(&t.coeff)).collect();
        let fb: Vec<String> = b.terms().iter().map(|t| ring.field().format(&t.coeff)).collect();
        fa.cmp(&fb)
    })
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    alive: bool,
}

struct Engine<'a, K: Field> {
    ring: &'a PolyRing<K>,
    sugar_w: WeightVector,
    polys: Vec<Polynomial<K::Elem>>,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
    sugar: Vec<u64>,
    active: Vec<usize>,
    is_active: Vec<bool>,
    pairs: Vec<Pair>,
    heap: BinaryHeap<Reverse<(u64, usize, usize, usize)>>,
}

impl<'a, K: Field> Engine<'a, K> {
    fn new(ring: &'a PolyRing<K>, sugar_w: WeightVector) -> Self {
        Engine {
            ring,
            sugar_w,
            polys: Vec::new(),
            lms: Vec::new(),
            masks: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            is_active: Vec::new(),
            pairs: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn reduce(&self, f: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        let divs: Vec<(u64, &Monomial)> =
            self.active.iter().map(|&k| (self.masks[k], &self.lms[k])).collect();
        reduce_active(self.ring, f, &self.polys, &self.active, &divs, false)
    }

    fn insert(&mut self, g: Polynomial<K::Elem>, sugar: u64) {
        let g = self.ring.make_monic(&g);
        let h = self.polys.len();
        let lm = g.leading_monomial().unwrap().clone();
        self.masks.push(lm.support_mask());
        self.lms.push(lm);
        self.polys.push(g);
        self.sugar.push(sugar);
        self.is_active.push(false);
        self.update(h);
    }

    /// Gebauer–Möller update for the new element `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.lms[h].clone();
        let mask_h = self.masks[h];
        // candidate pairs (g, h)
        let cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| (g, self.lms[g].lcm(&lm_h), self.lms[g].is_coprime(&lm_h)))
            .collect();
        let cmasks: Vec<u64> = cands.iter().map(|c| c.1.support_mask()).collect();
        let mut keep = vec![true; cands.len()];
        // chain criterion: drop (g,h) if some other lcm(g',h) properly divides it
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a == b || cmasks[b] & !cmasks[a] != 0 {
                    continue;
                }
                if cands[b].1 != cands[a].1 && cands[b].1.divides(&cands[a].1) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // among equal lcms keep one, or none if any of them is coprime
        let mut order: Vec<usize> = (0..cands.len()).filter(|&a| keep[a]).collect();
        order.sort_by(|&a, &b| cands[a].1.cmp(&cands[b].1).then(a.cmp(&b)));
        let mut new_pairs = Vec::new();
        let mut k = 0;
        while k < order.len() {
            let mut e = k;
            while e < order.len() && cands[order[e]].1 == cands[order[k]].1 {
                e += 1;
            }
            let any_coprime = order[k..e].iter().any(|&a| cands[a].2);
            if !any_coprime {
                let a = order[k];
                new_pairs.push((cands[a].0, cands[a].1.clone()));
            }
            k = e;
        }
        // old pairs made redundant by h
        for p in self.pairs.iter_mut().filter(|p| p.alive) {
            if p.lcm.support_mask() & mask_h == mask_h
                && lm_h.divides(&p.lcm)
                && self.lms[p.i].lcm(&lm_h) != p.lcm
                && self.lms[p.j].lcm(&lm_h) != p.lcm
            {
                p.alive = false;
            }
        }
        for (g, lcm) in new_pairs {
            let s = self.pair_sugar(g, h, &lcm);
            let idx = self.pairs.len();
            self.pairs.push(Pair { i: g, j: h, lcm, alive: true });
            self.heap.push(Reverse((s, h, g, idx)));
        }
        // deactivate elements whose leading monomial h divides
        let lms = &self.lms;
        let masks = &self.masks;
        let is_active = &mut self.is_active;
        self.active.retain(|&g| {
            let redundant = masks[g] & mask_h == mask_h && lm_h.divides(&lms[g]);
            if redundant {
                is_active[g] = false;
            }
            !redundant
        });
        self.active.push(h);
        self.is_active[h] = true;
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u64 {
        let dl = self.sugar_w.degree(lcm);
        let si = self.sugar[i] + dl - self.sugar_w.degree(&self.lms[i]);
        let sj = self.sugar[j] + dl - self.sugar_w.degree(&self.lms[j]);
        si.max(sj)
    }

    fn run(&mut self) {
        while let Some(Reverse((s, _, _, idx))) = self.heap.pop() {
            if !self.pairs[idx].alive {
                continue;
            }
            self.pairs[idx].alive = false;
            let (i, j) = (self.pairs[idx].i, self.pairs[idx].j);
            let lcm = self.pairs[idx].lcm.clone();
            let sp = self.spoly(i, j, &lcm);
            let r = self.reduce(&sp);
            if !r.is_zero() {
                self.insert(r, s);
            }
        }
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> Polynomial<K::Elem> {
        let field = self.ring.field();
        let mi = lcm.div(&self.lms[i]).unwrap();
        let mj = lcm.div(&self.lms[j]).unwrap();
        // both are monic
        let a = &self.polys[i].terms()[1..];
        let b = &self.polys[j].terms()[1..];
        let left = self.ring.merge_scaled(&[], &field.one(), &mi, a);
        let terms = self.ring.merge_scaled(&left, &field.neg(&field.one()), &mj, b);
        Polynomial::from_sorted(terms)
    }

    fn finish(self) -> Vec<Polynomial<K::Elem>> {
        let mut idx = self.active.clone();
        idx.sort_by(|&a, &b| self.ring.cmp(&self.lms[a], &self.lms[b]));
        let divs: Vec<(u64, &Monomial)> = idx.iter().map(|&k| (self.masks[k], &self.lms[k])).collect();
        let mut out = Vec::with_capacity(idx.len());
        for &k in &idx {
            let g = &self.polys[k];
            let head = g.terms()[0].clone();
            let tail = Polynomial::from_sorted(g.terms()[1..].to_vec());
            let tail = reduce_active(self.ring, &tail, &self.polys, &idx, &divs, true);
            let mut terms = vec![head];
            terms.extend(tail.into_terms());
            out.push(self.ring.make_monic(&Polynomial::from_sorted(terms)));
        }
        out
    }
}

/// Reduces `f` by `polys[active[k]]` (with leading data `divs[k]`). With
/// `full`, tail terms are reduced too; otherwise reduction stops at the first
/// irreducible leading term.
fn reduce_active<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    polys: &[Polynomial<K::Elem>],
    active: &[usize],
    divs: &[(u64, &Monomial)],
    full: bool,
) -> Polynomial<K::Elem> {
    let field = ring.field();
    let mut rem: Vec<Term<K::Elem>> = Vec::new();
    let mut p: Vec<Term<K::Elem>> = f.terms().to_vec();
    let mut start = 0;
    while start < p.len() {
        let lt = &p[start];
        let mask = lt.mono.support_mask();
        let hit = divs
            .iter()
            .position(|(m, lm)| m & !mask == 0 && lm.divides(&lt.mono));
        match hit {
            None => {
                if !full {
                    rem.extend(p.drain(start..));
                    break;
                }
                rem.push(lt.clone());
                start += 1;
            }
            Some(k) => {
                let g = &polys[active[k]];
                let gl = &g.terms()[0];
                let m = lt.mono.div(&gl.mono).unwrap();
                let c = field.div(&lt.coeff, &gl.coeff).unwrap();
                p = ring.merge_scaled(&p[start + 1..], &field.neg(&c), &m, &g.terms()[1..]);
                start = 0;
            }
        }
    }
    Polynomial::from_sorted(rem)
}

fn reduce_with<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    polys: &[Polynomial<K::Elem>],
    divs: &[(u64, &Monomial)],
    full: bool,
) -> Polynomial<K::Elem> {
    let active: Vec<usize> = (0..polys.len()).collect();
    reduce_active(ring, f, polys, &active, divs, full)
}

/// `I ∩ J` via `(y·I + (1−y)·J) ∩ k[x]` with an auxiliary variable `y`.
pub fn intersect<K: Field>(
    ring: &PolyRing<K>,
    i: &[Polynomial<K::Elem>],
    j: &[Polynomial<K::Elem>],
) -> Result<GroebnerBasis<K>> {
    let n = ring.nvars();
    let mut names = vec![String::from("y")];
    names.extend(ring.names().iter().cloned());
    let big = PolyRing::with_names(
        ring.field().clone(),
        MonomialOrder::Block {
            split: 1,
            first: alloc::boxed::Box::new(MonomialOrder::degrevlex(1)),
            second: alloc::boxed::Box::new(ring.order().clone()),
        },
        names,
    )?;
    let up: Vec<Option<usize>> = (1..=n).map(Some).collect();
    let y = big.var(0);
    let one_minus_y = big.sub(&big.one(), &y);
    let mut gens = Vec::new();
    for f in i {
        let f = ring.map_vars(f, &big, &up).unwrap();
        gens.push(big.mul(&y, &f));
    }
    for f in j {
        let f = ring.map_vars(f, &big, &up).unwrap();
        gens.push(big.mul(&one_minus_y, &f));
    }
    let gb = reduced_groebner_basis_with(
        &big,
        &gens,
        &BuchbergerOptions { sugar_weights: Some(WeightVector::standard(n + 1)) },
    );
    let mut down: Vec<Option<usize>> = vec![None];
    down.extend((0..n).map(Some));
    let kept: Vec<_> = gb.elements().iter().filter_map(|g| big.map_vars(g, ring, &down)).collect();
    Ok(reduced_groebner_basis(ring, &kept))
}

/// `⟨gens⟩ ∩ k[x_{k+1}, …]` computed in `big`, whose order must eliminate
/// the first `k` variables, and returned as a reduced basis in `target`
/// (the remaining variables in the same order).
pub fn eliminate<K: Field>(
    big: &PolyRing<K>,
    gens: &[Polynomial<K::Elem>],
    k: usize,
    target: &PolyRing<K>,
) -> Result<GroebnerBasis<K>> {
    let n = big.nvars();
    if k > n || target.nvars() != n - k {
        return Err(Error::LengthMismatch { expected: n.saturating_sub(k), found: target.nvars() });
    }
    let gb = reduced_groebner_basis(big, gens);
    let down: Vec<Option<usize>> = (0..k).map(|_| None).chain((0..n - k).map(Some)).collect();
    let kept: Vec<_> = gb.elements().iter().filter_map(|g| big.map_vars(g, target, &down)).collect();
    Ok(reduced_groebner_basis(target, &kept))
}

/// Human-readable listing, one element per line.
pub fn format_basis<K: Field>(gb: &GroebnerBasis<K>) -> String {
    let mut s = String::new();
    for g in gb.elements() {
        s.push_str(&format!("{}\n", gb.ring().format(g)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn ring(n: usize) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, MonomialOrder::degrevlex(n)).unwrap()
    }

    #[test]
    fn trivial_bases() {
        let r = ring(3);
        let f = r.parse("x1*x3 - x2").unwrap();
        let gb = reduced_groebner_basis(&r, &[f.clone()]);
        assert_eq!(gb.elements(), &[f.clone()]);
        assert!(gb.check_reduced());
        assert!(reduced_groebner_basis(&r, &[Polynomial::zero()]).is_empty());
        assert!(reduced_groebner_basis(&r, &[]).is_empty());
        assert!(gb.normal_form(&f).is_zero());
        let m = r.parse("x2^5").unwrap();
        assert_eq!(gb.normal_form(&m), m);
    }

    #[test]
    fn twisted_cubic() {
        let r = ring(4);
        let gens: Vec<_> = ["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]
            .iter()
            .map(|s| r.parse(s).unwrap())
            .collect();
        let gb = reduced_groebner_basis(&r, &gens);
        assert!(gb.check_reduced());
        assert_eq!(gb.len(), 3);
        // the rational normal curve: t ↦ (s^3, s^2 t, s t^2, t^3)
        assert!(gb.contains(&r.parse("x1*x4^2 - x3^3").unwrap()));
        assert!(!gb.contains(&r.parse("x1 - x4").unwrap()));
    }

    #[test]
    fn unit_ideal() {
        let r = ring(2);
        let gens = vec![r.parse("x1*x2 - 1").unwrap(), r.parse("x1").unwrap()];
        let gb = reduced_groebner_basis(&r, &gens);
        assert_eq!(gb.elements(), &[r.one()]);
    }

    #[test]
    fn intersection_of_monomial_ideals() {
        let r = ring(2);
        let i = vec![r.parse("x1^2").unwrap()];
        let j = vec![r.parse("x1*x2").unwrap()];
        let gb = intersect(&r, &i, &j).unwrap();
        assert_eq!(gb.elements(), &[r.parse("x1^2*x2").unwrap()]);
    }

    /// Brute-force oracle: all S-pairs reduce to zero.
    fn buchberger_criterion<K: Field>(gb: &GroebnerBasis<K>) -> bool {
        let r = gb.ring();
        let els = gb.elements();
        for a in 0..els.len() {
            for b in a + 1..els.len() {
                let la = els[a].leading_monomial().unwrap();
                let lb = els[b].leading_monomial().unwrap();
                let l = la.lcm(lb);
                let s = r.sub(
                    &r.mul_term(&els[a], &r.field().one(), &l.div(la).unwrap()),
                    &r.mul_term(&els[b], &r.field().one(), &l.div(lb).unwrap()),
                );
                if !r.divide(&s, els).1.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn random_gens<K: Field>(r: &PolyRing<K>, raw: &[Vec<(i64, Vec<u32>)>]) -> Vec<Polynomial<K::Elem>> {
        raw.iter()
            .map(|ts| {
                r.from_terms(ts.iter().map(|(c, e)| (r.field().from_i64(*c), Monomial::new(e.clone()))).collect())
            })
            .collect()
    }

    fn raw_gens() -> impl Strategy<Value = Vec<Vec<(i64, Vec<u32>)>>> {
        proptest::collection::vec(
            proptest::collection::vec((-2i64..3, proptest::collection::vec(0u32..3, 3)), 1..4),
            1..4,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn gb_is_reduced_and_unique(raw in raw_gens(), rot in 0usize..4) {
            for p in [0u64, 5] {
                if p == 0 {
                    let r = ring(3);
                    check_unique(&r, &random_gens(&r, &raw), rot);
                } else {
                    let r = PolyRing::new(PrimeField::new(p).unwrap(), MonomialOrder::degrevlex(3)).unwrap();
                    check_unique(&r, &random_gens(&r, &raw), rot);
                }
            }
        }
    }

    fn check_unique<K: Field>(r: &PolyRing<K>, gens: &[Polynomial<K::Elem>], rot: usize) {
        let gb = reduced_groebner_basis(r, gens);
        assert!(gb.check_reduced());
        assert!(buchberger_criterion(&gb));
        for g in gens {
            assert!(gb.contains(g));
        }
        let mut permuted = gens.to_vec();
        let k = rot % permuted.len().max(1);
        permuted.rotate_left(k);
        permuted.reverse();
        let gb2 = reduced_groebner_basis(r, &permuted);
        assert_eq!(gb.elements(), gb2.elements());
    }
}
