//! Graded free resolutions of `R/I` as a module over the Noether
//! normalization `A = k[x_{n-d+1}, …, x_n]`, built from Schreyer's theorem
//! and then minimalized.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::module::{module_groebner_and_syzygies, FreeModuleElement, ModuleOrder, SyzygyOptions};
use crate::groebner::resolution::{GradedFreeResolution, Matrix};
use crate::groebner::{reduced_groebner_basis, GroebnerBasis};
use crate::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial, WeightVector};
use crate::toric::{toric_groebner_basis, ToricPresentation};

/// An ω-homogeneous ideal with its reduced Gröbner basis, in Noether
/// position with respect to the last `d` variables.
#[derive(Clone, Debug)]
pub struct ShortResInput<K: Field> {
    gb: GroebnerBasis<K>,
    weights: WeightVector,
    d: usize,
    presentation: Option<ToricPresentation>,
}

impl<K: Field> ShortResInput<K> {
    /// Validates `gens` in `ring`, whose order must be ω-graded reverse
    /// lexicographic. `d` is computed from the initial ideal when absent.
    pub fn new(ring: &PolyRing<K>, gens: &[Polynomial<K::Elem>], d: Option<usize>) -> Result<Self> {
        let weights = match ring.order() {
            MonomialOrder::OmegaRevLex(w) => w.clone(),
            _ => return Err(Error::NotHomogeneous(String::from("ring order must be weighted reverse lexicographic"))),
        };
        for g in gens {
            if !g.is_zero() && ring.homogeneous_degree(g, &weights).is_none() {
                return Err(Error::NotHomogeneous(ring.format(g)));
            }
        }
        let gb = reduced_groebner_basis(ring, gens);
        Self::from_basis(gb, d, None)
    }

    /// The toric ideal of a presentation.
    pub fn from_presentation(p: &ToricPresentation, field: K) -> Result<Self> {
        let gb = toric_groebner_basis(p, field);
        Self::from_basis(gb, Some(p.d()), Some(p.clone()))
    }

    pub fn from_basis(gb: GroebnerBasis<K>, d: Option<usize>, presentation: Option<ToricPresentation>) -> Result<Self> {
        let weights = match gb.order() {
            MonomialOrder::OmegaRevLex(w) => w.clone(),
            _ => return Err(Error::NotHomogeneous(String::from("ring order must be weighted reverse lexicographic"))),
        };
        let n = gb.ring().nvars();
        let lms = gb.leading_monomials();
        let dim = monomial_dimension(&lms, n);
        let d = d.unwrap_or(dim);
        if d > n {
            return Err(Error::LengthMismatch { expected: n, found: d });
        }
        if d != dim {
            return Err(Error::NotNoetherPosition(format!("dimension is {} but d = {}", dim, d)));
        }
        let input = ShortResInput { gb, weights, d, presentation };
        // finiteness of the quotient certifies Noether position
        standard_monomials_b0(&lms, n, d)?;
        Ok(input)
    }

    pub fn ring(&self) -> &PolyRing<K> {
        self.gb.ring()
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<K> {
        &self.gb
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.ring().nvars()
    }

    pub fn presentation(&self) -> Option<&ToricPresentation> {
        self.presentation.as_ref()
    }

    pub fn initial_ideal(&self) -> Vec<Monomial> {
        self.gb.leading_monomials()
    }
}

/// Largest size of a set of variables containing no generator's support.
pub fn monomial_dimension(gens: &[Monomial], n: usize) -> usize {
    let masks: Vec<u64> = gens.iter().map(|m| m.support_mask()).collect();
    if masks.iter().any(|&m| m == 0) {
        // unit ideal
        return 0;
    }
    let mut best = 0;
    let mut stack = vec![(0usize, 0u64, 0usize)];
    // branch on variables, pruning subsets that already contain a support
    while let Some((i, set, size)) = stack.pop() {
        if size + (n - i) <= best {
            continue;
        }
        if i == n {
            best = best.max(size);
            continue;
        }
        stack.push((i + 1, set, size));
        let with = set | (1u64 << i.min(63));
        if !masks.iter().any(|&m| m & !with == 0) {
            stack.push((i + 1, with, size + 1));
        }
    }
    best
}

/// Monomials in the first `n − d` variables outside `in(I)`; these form a
/// minimal `A`-module generating set of `R/I`. Ordered descending
/// lexicographically with `x_{n-d} > … > x_1`.
pub fn standard_monomials_b0(in_i: &[Monomial], n: usize, d: usize) -> Result<Vec<Monomial>> {
    let k = n - d;
    let block: Vec<&Monomial> = in_i.iter().filter(|m| m.supported_in(0..k)).collect();
    let mut bounds = vec![0u32; k];
    for (i, b) in bounds.iter_mut().enumerate() {
        *b = block
            .iter()
            .filter(|m| m.supported_in(i..i + 1))
            .map(|m| m.exps()[i])
            .min()
            .ok_or_else(|| {
                Error::NotNoetherPosition(format!("no power of x{} lies in in(I) + (x{}, …, x{})", i + 1, k + 1, n))
            })?;
    }
    if block.iter().any(|m| m.is_one()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(i: usize, k: usize, e: &mut Vec<u32>, bounds: &[u32], block: &[&Monomial], out: &mut Vec<Monomial>) {
        if i == k {
            out.push(Monomial::new(e.clone()));
            return;
        }
        for x in 0..bounds[i] {
            e[i] = x;
            let m = Monomial::new(e.clone());
            // only generators supported on the first i+1 variables can divide now
            if block.iter().any(|g| g.supported_in(0..i + 1) && g.divides(&m)) {
                break;
            }
            rec(i + 1, k, e, bounds, block, out);
        }
        e[i] = 0;
    }
    rec(0, k, &mut e, &bounds, &block, &mut out);
    out.sort_by(|a, b| cmp_lex_from_right(&b.exps()[..k], &a.exps()[..k]));
    Ok(out)
}

fn cmp_lex_from_right(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// Lexicographic comparison of the last `d` exponents with
/// `x_{n-d+1} > … > x_n`.
fn cmp_lex_a(a: &Monomial, b: &Monomial, d: usize) -> Ordering {
    let n = a.nvars();
    a.exps()[n - d..].cmp(&b.exps()[n - d..])
}

/// Minimal generators of `(in(I) : u) ∩ A`, sorted descending
/// lexicographically with `x_{n-d+1} > … > x_n`.
pub fn colon_into_a(in_i: &[Monomial], u: &Monomial, d: usize) -> Vec<Monomial> {
    let n = u.nvars();
    let mut gens: Vec<Monomial> = in_i
        .iter()
        .map(|m| m.div(&m.gcd(u)).unwrap())
        .filter(|m| m.supported_in(n - d..n))
        .collect();
    gens.sort();
    gens.dedup();
    let minimal: Vec<Monomial> = gens
        .iter()
        .filter(|m| !gens.iter().any(|g| g != *m && g.divides(m)))
        .cloned()
        .collect();
    let mut minimal = minimal;
    minimal.sort_by(|a, b| cmp_lex_a(b, a, d));
    minimal
}

/// Splits a standard monomial into its `ℬ₀` part (first `n − d` variables)
/// and its `A` part.
fn split_monomial(m: &Monomial, d: usize) -> (Monomial, Monomial) {
    let n = m.nvars();
    let mut u = m.exps().to_vec();
    let mut a = m.exps().to_vec();
    for x in &mut u[n - d..] {
        *x = 0;
    }
    for x in &mut a[..n - d] {
        *x = 0;
    }
    (Monomial::new(u), Monomial::new(a))
}

/// Generators `h_α = M_α ε_u − Σ f_{α,v} ε_v` of `ker ψ₀`, one for each
/// `x^α = u·M_α` with `M_α` a minimal generator of `I_u`. Elements are
/// grouped by `u` in `ℬ₀` order.
#[derive(Clone, Debug)]
pub struct KernelGenerators<E> {
    pub b1prime: Vec<Monomial>,
    pub h: Vec<FreeModuleElement<E>>,
}

pub fn syzygy_generators<K: Field>(input: &ShortResInput<K>, b0: &[Monomial]) -> Result<KernelGenerators<K::Elem>> {
    let ring = input.ring();
    let d = input.d;
    let in_i = input.initial_ideal();
    let index: BTreeMap<&Monomial, usize> = b0.iter().enumerate().map(|(j, u)| (u, j)).collect();
    let mut b1 = Vec::new();
    let mut h = Vec::new();
    for (j, u) in b0.iter().enumerate() {
        for m in colon_into_a(&in_i, u, d) {
            let xa = u.mul(&m);
            let r = input.gb.normal_form(&ring.monomial(ring.field().one(), xa.clone()));
            let mut comps: BTreeMap<usize, Vec<(K::Elem, Monomial)>> = BTreeMap::new();
            comps.entry(j).or_default().push((ring.field().one(), m.clone()));
            for t in r.terms() {
                let (v, a) = split_monomial(&t.mono, d);
                let k = *index.get(&v).ok_or_else(|| {
                    Error::NotNoetherPosition(format!("remainder term {} leaves the standard basis", ring.format_monomial(&t.mono)))
                })?;
                comps.entry(k).or_default().push((ring.field().neg(&t.coeff), a));
            }
            h.push(FreeModuleElement::from_components(comps.into_iter().map(|(k, ts)| (k, ring.from_terms(ts)))));
            b1.push(xa);
        }
    }
    Ok(KernelGenerators { b1prime: b1, h })
}

/// Options for [`short_resolution_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ShortResOptions {
    pub syzygy: SyzygyOptions,
}

/// The Schreyer resolution and its minimalization.
#[derive(Clone, Debug)]
pub struct ShortResolution<K: Field> {
    pub b0: Vec<Monomial>,
    pub schreyer: GradedFreeResolution<K>,
    pub minimal: GradedFreeResolution<K>,
    d: usize,
    n: usize,
}

impl<K: Field> ShortResolution<K> {
    /// Projective dimension over `A`.
    pub fn pd_a(&self) -> usize {
        self.minimal.length()
    }

    pub fn depth(&self) -> usize {
        self.d - self.pd_a()
    }

    /// Projective dimension over `R`.
    pub fn pd_r(&self) -> usize {
        self.pd_a() + self.n - self.d
    }

    /// `ℬᵢ′` for every level of the Schreyer resolution.
    pub fn schreyer_labels(&self) -> &[Vec<Monomial>] {
        self.schreyer.labels()
    }
}

pub fn short_resolution<K: Field>(input: &ShortResInput<K>) -> Result<ShortResolution<K>> {
    short_resolution_with(input, ShortResOptions::default())
}

/// Builds the Schreyer resolution, sorting every Gröbner basis within each
/// basis index by descending lex order with `x_{n-d+1} > … > x_n` so that
/// one variable leaves the leading terms at each step, then minimalizes.
pub fn short_resolution_with<K: Field>(input: &ShortResInput<K>, opts: ShortResOptions) -> Result<ShortResolution<K>> {
    let ring = input.ring();
    let (n, d) = (input.n(), input.d);
    let b0 = standard_monomials_b0(&input.initial_ideal(), n, d)?;
    let kg = syzygy_generators(input, &b0)?;
    let mut labels = vec![b0.clone()];
    let mut maps = Vec::new();
    let mut order = ModuleOrder::from_labels(&b0);
    let mut gens = kg.h;
    let mut step = 0;
    while !gens.is_empty() {
        if step > d {
            return Err(Error::NotAGroebnerBasis(String::from("resolution exceeds d steps")));
        }
        gens = sort_generators(ring, &order, gens, d);
        let st = module_groebner_and_syzygies(ring, &order, &gens, opts.syzygy)?;
        maps.push(Matrix::from_columns(order.rank(), &gens)?);
        labels.push(st.keys.iter().map(|k| k.mono.clone()).collect());
        order = st.induced_order();
        gens = st.syzygies;
        step += 1;
    }
    let schreyer = GradedFreeResolution::new(ring.clone(), input.weights.clone(), labels, maps)?;
    let minimal = schreyer.minimalize();
    Ok(ShortResolution { b0, schreyer, minimal, d, n })
}

/// Stable sort by (leading basis index, descending lex of the leading
/// monomial in the `A` variables).
fn sort_generators<K: Field>(
    ring: &PolyRing<K>,
    order: &ModuleOrder,
    gens: Vec<FreeModuleElement<K::Elem>>,
    d: usize,
) -> Vec<FreeModuleElement<K::Elem>> {
    let mut keyed: Vec<(usize, Monomial, FreeModuleElement<K::Elem>)> = gens
        .into_iter()
        .map(|g| {
            let (j, t) = crate::groebner::module::module_leading_term(ring, order, &g).expect("nonzero");
            let m = t.mono.clone();
            (j, m, g)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp_lex_a(&b.1, &a.1, d)));
    keyed.into_iter().map(|(_, _, g)| g).collect()
}

/// Checks that `ψ₀ ∘ ψ₁` lands in `I`.
pub fn check_augmentation<K: Field>(input: &ShortResInput<K>, res: &GradedFreeResolution<K>) -> bool {
    let ring = input.ring();
    let Some(m) = res.maps().first() else { return true };
    let b0 = &res.labels()[0];
    (0..m.cols()).all(|c| {
        let mut acc = Polynomial::zero();
        for (r, u) in b0.iter().enumerate() {
            let f = m.get(r, c);
            if !f.is_zero() {
                acc = ring.add(&acc, &ring.mul_term(f, &ring.field().one(), u));
            }
        }
        input.gb.contains(&acc)
    })
}

/// `h(t) = Σᵢ Σ_v (−1)^i t^{deg v}`, coefficients by weighted degree.
pub fn hilbert_series_numerator<K: Field>(res: &GradedFreeResolution<K>) -> Vec<i64> {
    res.euler_numerator()
}

/// Alternating sum of ranks, equal to `h(1)`.
pub fn multiplicity<K: Field>(res: &GradedFreeResolution<K>) -> i64 {
    res.ranks().iter().enumerate().map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
}

/// `max(shift/D − i)`; needs all weights equal to some `D`.
pub fn regularity_from_resolution<K: Field>(res: &GradedFreeResolution<K>) -> Result<i64> {
    let w = res.weights().weights();
    let dd = match w.first() {
        Some(&x) if w.iter().all(|&y| y == x) => x as u64,
        _ => return Err(Error::NotStandardGraded),
    };
    let mut best = i64::MIN;
    for (i, s) in res.shifts().iter().enumerate() {
        for &x in s {
            best = best.max((x / dd) as i64 - i as i64);
        }
    }
    Ok(if best == i64::MIN { 0 } else { best })
}

/// `Σ_{S ⊆ A-variables} (−1)^{|S|} HF(s − Σ_{j∈S} ω_j)` for every `s ≤ bound`,
/// given Hilbert function values `hf`.
pub fn alternating_hilbert_sum(hf: &[u64], a_weights: &[u32], bound: usize) -> Vec<i64> {
    let mut out = vec![0i64; bound + 1];
    let m = a_weights.len();
    for mask in 0u32..(1 << m) {
        let shift: usize = (0..m).filter(|&j| mask >> j & 1 == 1).map(|j| a_weights[j] as usize).sum();
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        for s in shift..=bound {
            out[s] += sign * hf.get(s - shift).copied().unwrap_or(0) as i64;
        }
    }
    out
}
