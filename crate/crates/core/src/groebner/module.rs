//! Submodules of free modules over a polynomial ring, Schreyer-type orders
//! and one step of Schreyer's syzygy construction.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial, Term};

/// `Σ f_j ε_j` with nonzero polynomial coefficients, keyed by basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleElement<E> {
    comps: BTreeMap<usize, Polynomial<E>>,
}

impl<E> Default for FreeModuleElement<E> {
    fn default() -> Self {
        FreeModuleElement { comps: BTreeMap::new() }
    }
}

impl<E: Clone> FreeModuleElement<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds an element, dropping zero coefficients. Repeated indices keep
    /// the last value.
    pub fn from_components<I: IntoIterator<Item = (usize, Polynomial<E>)>>(it: I) -> Self {
        FreeModuleElement { comps: it.into_iter().filter(|(_, f)| !f.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn component(&self, j: usize) -> Option<&Polynomial<E>> {
        self.comps.get(&j)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Polynomial<E>)> {
        self.comps.iter().map(|(&j, f)| (j, f))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.comps.keys().copied()
    }

    /// Number of nonzero coefficients.
    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.comps.keys().next_back().copied()
    }
}

/// `f + c·m·g` for module elements.
pub fn module_add_scaled<K: Field>(
    ring: &PolyRing<K>,
    f: &FreeModuleElement<K::Elem>,
    c: &K::Elem,
    m: &Monomial,
    g: &FreeModuleElement<K::Elem>,
) -> FreeModuleElement<K::Elem> {
    let mut out = f.clone();
    add_scaled_in_place(ring, &mut out, c, m, g);
    out
}

fn add_scaled_in_place<K: Field>(
    ring: &PolyRing<K>,
    f: &mut FreeModuleElement<K::Elem>,
    c: &K::Elem,
    m: &Monomial,
    g: &FreeModuleElement<K::Elem>,
) {
    for (&j, gj) in &g.comps {
        let cur = f.comps.remove(&j).unwrap_or_else(Polynomial::zero);
        let v = Polynomial::from_sorted(ring.merge_scaled(cur.terms(), c, m, gj.terms()));
        if !v.is_zero() {
            f.comps.insert(j, v);
        }
    }
}

/// Position of a basis element under a Schreyer-type order: a monomial of
/// the ambient ring plus a chain of indices for breaking ties.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisKey {
    pub mono: Monomial,
    pub chain: Vec<usize>,
}

impl BasisKey {
    pub fn new(mono: Monomial, chain: Vec<usize>) -> Self {
        BasisKey { mono, chain }
    }
}

/// Order on terms `m·ε_j`: first `m·key(j).mono` under the ring order, then
/// the tie-break chains, where a smaller index ranks higher.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    keys: Vec<BasisKey>,
}

impl ModuleOrder {
    pub fn new(keys: Vec<BasisKey>) -> Self {
        ModuleOrder { keys }
    }

    /// The order with `ε_j ↦ labels[j]`.
    pub fn from_labels(labels: &[Monomial]) -> Self {
        ModuleOrder {
            keys: labels.iter().enumerate().map(|(j, u)| BasisKey::new(u.clone(), vec![j])).collect(),
        }
    }

    pub fn keys(&self) -> &[BasisKey] {
        &self.keys
    }

    pub fn rank(&self) -> usize {
        self.keys.len()
    }

    pub fn key(&self, j: usize) -> Result<&BasisKey> {
        self.keys.get(j).ok_or(Error::BasisIndexUnknown(j))
    }

    /// The ambient monomial `m·key(j).mono`.
    pub fn position(&self, m: &Monomial, j: usize) -> Result<Monomial> {
        Ok(m.try_mul(&self.key(j)?.mono)?)
    }

    fn cmp_unchecked(&self, ord: &MonomialOrder, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        let ka = &self.keys[a.1];
        let kb = &self.keys[b.1];
        let pa = a.0.mul(&ka.mono);
        let pb = b.0.mul(&kb.mono);
        ord.cmp(&pa, &pb).then_with(|| cmp_chains(&ka.chain, &kb.chain))
    }
}

fn cmp_chains(a: &[usize], b: &[usize]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return y.cmp(x);
        }
    }
    b.len().cmp(&a.len())
}

/// Compares `ma·ε_ja` with `mb·ε_jb`.
pub fn compare_module_terms(
    ma: &Monomial,
    ja: usize,
    mb: &Monomial,
    jb: usize,
    order: &ModuleOrder,
    ring_order: &MonomialOrder,
) -> Result<Ordering> {
    let pa = order.position(ma, ja)?;
    let pb = order.position(mb, jb)?;
    if pa.nvars() != ring_order.nvars() || pb.nvars() != ring_order.nvars() {
        return Err(Error::LengthMismatch { expected: ring_order.nvars(), found: pa.nvars().min(pb.nvars()) });
    }
    Ok(ring_order
        .cmp(&pa, &pb)
        .then_with(|| cmp_chains(&order.keys[ja].chain, &order.keys[jb].chain)))
}

/// The leading term of `f`, as its basis index and polynomial term.
pub fn module_leading_term<'a, K: Field>(
    ring: &PolyRing<K>,
    order: &ModuleOrder,
    f: &'a FreeModuleElement<K::Elem>,
) -> Option<(usize, &'a Term<K::Elem>)> {
    let mut best: Option<(usize, &Term<K::Elem>)> = None;
    for (&j, fj) in &f.comps {
        let t = &fj.terms()[0];
        best = match best {
            None => Some((j, t)),
            Some((bj, bt)) => {
                if order.cmp_unchecked(ring.order(), (&t.mono, j), (&bt.mono, bj)) == Ordering::Greater {
                    Some((j, t))
                } else {
                    Some((bj, bt))
                }
            }
        };
    }
    best
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SyzygyOptions {
    /// Reduce every same-index S-pair instead of only those whose leading
    /// terms are minimal.
    pub full_pairs: bool,
}

/// Result of one Schreyer step applied to a Gröbner basis `g_0, …, g_{s-1}`.
#[derive(Clone, Debug)]
pub struct SyzygyStep<E> {
    /// Leading term `(monomial, basis index)` of every `g_i` (monic).
    pub leading: Vec<(Monomial, usize)>,
    /// Keys of the new basis `ε_i ↦ g_i`, defining the induced order.
    pub keys: Vec<BasisKey>,
    /// Generators of the syzygy module, a Gröbner basis for the induced order.
    pub syzygies: Vec<FreeModuleElement<E>>,
    /// Leading term `(monomial, i)` of each syzygy; always `m·ε_i` with
    /// coefficient one.
    pub syzygy_leading: Vec<(Monomial, usize)>,
}

impl<E> SyzygyStep<E> {
    pub fn induced_order(&self) -> ModuleOrder {
        ModuleOrder::new(self.keys.clone())
    }
}

/// Schreyer's construction: given a Gröbner basis `gens` of a submodule,
/// returns syzygies generating the module of relations among them.
pub fn module_groebner_and_syzygies<K: Field>(
    ring: &PolyRing<K>,
    order: &ModuleOrder,
    gens: &[FreeModuleElement<K::Elem>],
    opts: SyzygyOptions,
) -> Result<SyzygyStep<K::Elem>> {
    let field = ring.field();
    let mut lead: Vec<(Monomial, usize, K::Elem)> = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        if let Some(j) = g.max_index() {
            order.key(j)?;
        }
        let (j, t) = module_leading_term(ring, order, g)
            .ok_or_else(|| Error::NotAGroebnerBasis(format!("generator {} is zero", i)))?;
        lead.push((t.mono.clone(), j, t.coeff.clone()));
    }
    let keys: Vec<BasisKey> = lead
        .iter()
        .enumerate()
        .map(|(i, (m, j, _))| {
            let k = &order.keys[*j];
            let mut chain = k.chain.clone();
            chain.push(i);
            BasisKey::new(m.mul(&k.mono), chain)
        })
        .collect();

    let mut by_index: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, l) in lead.iter().enumerate() {
        by_index.entry(l.1).or_default().push(i);
    }
    let masks: Vec<u64> = lead.iter().map(|l| l.0.support_mask()).collect();

    let mut syzygies = Vec::new();
    let mut syz_lead = Vec::new();
    for i in 0..gens.len() {
        let group = &by_index[&lead[i].1];
        let cands: Vec<(usize, Monomial)> = group
            .iter()
            .filter(|&&j| j > i)
            .map(|&j| (j, lead[i].0.lcm(&lead[j].0).div(&lead[i].0).unwrap()))
            .collect();
        let kept: Vec<&(usize, Monomial)> = if opts.full_pairs {
            cands.iter().collect()
        } else {
            cands
                .iter()
                .filter(|(j, m)| {
                    !cands.iter().any(|(j2, m2)| {
                        j2 != j && m2.divides(m) && (m2 != m || j2 < j)
                    })
                })
                .collect()
        };
        for (j, mji) in kept {
            let j = *j;
            let l = lead[i].0.lcm(&lead[j].0);
            let mij = l.div(&lead[j].0).unwrap();
            let ratio = field.div(&lead[i].2, &lead[j].2)?;
            let ci_inv = field.inv(&lead[i].2)?;
            // s = (m_ji g_i − (c_i/c_j) m_ij g_j) / c_i, so the syzygy leads with coefficient one
            let mut s = FreeModuleElement::zero();
            add_scaled_in_place(ring, &mut s, &ci_inv, mji, &gens[i]);
            add_scaled_in_place(ring, &mut s, &field.neg(&field.mul(&ratio, &ci_inv)), &mij, &gens[j]);
            let mut quot: BTreeMap<usize, Vec<Term<K::Elem>>> = BTreeMap::new();
            while let Some((c, t)) = module_leading_term(ring, order, &s) {
                let mask = t.mono.support_mask();
                let k = by_index
                    .get(&c)
                    .and_then(|ks| ks.iter().copied().find(|&k| masks[k] & !mask == 0 && lead[k].0.divides(&t.mono)))
                    .ok_or_else(|| {
                        Error::NotAGroebnerBasis(format!(
                            "S-pair ({}, {}) leaves {} at index {}",
                            i,
                            j,
                            ring.format_monomial(&t.mono),
                            c
                        ))
                    })?;
                debug_assert_eq!(lead[k].1, c);
                let m = t.mono.div(&lead[k].0).unwrap();
                let q = field.div(&t.coeff, &lead[k].2)?;
                add_scaled_in_place(ring, &mut s, &field.neg(&q), &m, &gens[k]);
                quot.entry(k).or_default().push(Term { coeff: q, mono: m });
            }
            let mut syz: BTreeMap<usize, Polynomial<K::Elem>> = BTreeMap::new();
            syz.insert(i, ring.monomial(ci_inv.clone(), mji.clone()));
            syz.insert(j, ring.monomial(field.neg(&field.mul(&ratio, &ci_inv)), mij));
            for (k, ts) in quot {
                let qk = ring.neg(&ring.from_terms(ts.into_iter().map(|t| (t.coeff, t.mono)).collect()));
                let cur = syz.remove(&k).unwrap_or_else(Polynomial::zero);
                let v = ring.add(&cur, &qk);
                if !v.is_zero() {
                    syz.insert(k, v);
                }
            }
            let mut syz = FreeModuleElement { comps: syz };
            // normalize the leading coefficient
            let c = syz.comps[&i].terms()[0].coeff.clone();
            if !field.is_one(&c) {
                let inv = field.inv(&c)?;
                for f in syz.comps.values_mut() {
                    *f = ring.scale(f, &inv);
                }
            }
            syz_lead.push((mji.clone(), i));
            syzygies.push(syz);
        }
    }
    Ok(SyzygyStep { leading: lead.into_iter().map(|(m, j, _)| (m, j)).collect(), keys, syzygies, syzygy_leading: syz_lead })
}
