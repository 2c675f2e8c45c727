//! Monomials, monomial orders, sparse polynomials and multivariate division.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{parse_coefficient, Field};

/// An exponent vector `x^α`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// `x_i^e` in `n` variables (0-based `i`).
    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn into_exps(self) -> Vec<u32> {
        self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        check_len(self.0.len(), other.0.len())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    /// Product; panics on exponent overflow rather than wrapping.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// One bit per variable (mod 64) set when the exponent is positive.
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    /// Whether the monomial only involves variables with index in `range`.
    pub fn supported_in(&self, range: core::ops::Range<usize>) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || range.contains(&i))
    }

    pub fn format(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// Positive integer weights `ω`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::NonPositiveWeight(i));
        }
        Ok(WeightVector(weights))
    }

    pub fn standard(n: usize) -> Self {
        WeightVector(vec![1; n])
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_standard(&self) -> bool {
        self.0.iter().all(|&w| w == 1)
    }

    /// `ω / gcd(ω)`.
    pub fn primitive(&self) -> WeightVector {
        let g = self.0.iter().fold(0u32, |g, &w| gcd_u32(g, w)).max(1);
        WeightVector(self.0.iter().map(|w| w / g).collect())
    }

    pub fn gcd(&self) -> u32 {
        self.0.iter().fold(0u32, |g, &w| gcd_u32(g, w))
    }

    /// `Σ α_i ω_i` without a length check.
    #[inline]
    pub fn degree_of(&self, exps: &[u32]) -> u64 {
        self.0.iter().zip(exps).map(|(&w, &e)| w as u64 * e as u64).sum()
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        self.degree_of(m.exps())
    }
}

pub(crate) fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `deg_ω(x^α)`.
pub fn omega_degree(alpha: &Monomial, omega: &WeightVector) -> Result<u64> {
    check_len(omega.len(), alpha.nvars())?;
    Ok(omega.degree(alpha))
}

/// A global monomial order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    /// Weighted degree, ties broken by "last nonzero entry of α−β negative".
    OmegaRevLex(WeightVector),
    /// Lexicographic; `perm[0]` is the most significant variable.
    Lex(Vec<usize>),
    /// Compare the first `split` variables with `first`, then the rest with
    /// `second`.
    Block {
        split: usize,
        first: Box<MonomialOrder>,
        second: Box<MonomialOrder>,
    },
    /// Weighted degree, then the total degree in the first `split`
    /// variables, then reverse lexicographic. Eliminates the first block for
    /// ideals homogeneous with respect to `weights`.
    Elimination { split: usize, weights: WeightVector },
}

impl MonomialOrder {
    pub fn degrevlex(n: usize) -> Self {
        MonomialOrder::OmegaRevLex(WeightVector::standard(n))
    }

    pub fn lex(n: usize) -> Self {
        MonomialOrder::Lex((0..n).collect())
    }

    /// Number of variables the order is defined on.
    pub fn nvars(&self) -> usize {
        match self {
            MonomialOrder::OmegaRevLex(w) => w.len(),
            MonomialOrder::Lex(p) => p.len(),
            MonomialOrder::Block { split, second, .. } => split + second.nvars(),
            MonomialOrder::Elimination { weights, .. } => weights.len(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            MonomialOrder::Lex(p) => {
                let mut seen = vec![false; p.len()];
                for &i in p {
                    if i >= p.len() || seen[i] {
                        return Err(Error::Parse(format!("lex order {p:?} is not a permutation")));
                    }
                    seen[i] = true;
                }
                Ok(())
            }
            MonomialOrder::Block { split, first, second } => {
                check_len(*split, first.nvars())?;
                first.validate()?;
                second.validate()
            }
            MonomialOrder::Elimination { split, weights } => {
                if *split > weights.len() {
                    return Err(Error::LengthMismatch { expected: weights.len(), found: *split });
                }
                Ok(())
            }
            MonomialOrder::OmegaRevLex(_) => Ok(()),
        }
    }

    /// Compares exponent slices; lengths are assumed to match.
    pub fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::OmegaRevLex(w) => {
                w.degree_of(a).cmp(&w.degree_of(b)).then_with(|| revlex(a, b))
            }
            MonomialOrder::Lex(perm) => {
                for &i in perm {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { split, first, second } => first
                .cmp_exps(&a[..*split], &b[..*split])
                .then_with(|| second.cmp_exps(&a[*split..], &b[*split..])),
            MonomialOrder::Elimination { split, weights } => {
                let ta: u64 = a[..*split].iter().map(|&e| e as u64).sum();
                let tb: u64 = b[..*split].iter().map(|&e| e as u64).sum();
                weights
                    .degree_of(a)
                    .cmp(&weights.degree_of(b))
                    .then(ta.cmp(&tb))
                    .then_with(|| revlex(a, b))
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(a.exps(), b.exps())
    }
}

/// The reverse lexicographic tie-break: `a > b` iff the last nonzero entry of
/// `a − b` is negative.
#[inline]
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// Checked comparison of two monomials under `ord`.
pub fn compare_monomials(a: &Monomial, b: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    check_len(a.nvars(), b.nvars())?;
    check_len(ord.nvars(), a.nvars())?;
    Ok(ord.cmp(a, b))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term<E> {
    pub coeff: E,
    pub mono: Monomial,
}

/// A sparse polynomial with terms strictly descending in the order of the
/// ring that built it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<E> {
    terms: Vec<Term<E>>,
}

impl<E> Polynomial<E> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term<E>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<E>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient-bearing initial term.
    pub fn leading_term(&self) -> Option<&Term<E>> {
        self.terms.first()
    }

    /// Monic leading monomial.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&E> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.mono)
    }

    /// Assumes `terms` already strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(terms: Vec<Term<E>>) -> Self {
        Polynomial { terms }
    }
}

/// Polynomial ring `K[x_1..x_n]` with a fixed active order.
#[derive(Clone, Debug)]
pub struct PolyRing<K: Field> {
    field: K,
    order: MonomialOrder,
    names: Vec<String>,
}

impl<K: Field> PolyRing<K> {
    /// Ring in variables `x1..xn` where `n` is the order's variable count.
    pub fn new(field: K, order: MonomialOrder) -> Result<Self> {
        let n = order.nvars();
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Self::with_names(field, order, names)
    }

    pub fn with_names(field: K, order: MonomialOrder, names: Vec<String>) -> Result<Self> {
        order.validate()?;
        check_len(order.nvars(), names.len())?;
        Ok(PolyRing { field, order, names })
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn constant(&self, c: K::Elem) -> Polynomial<K::Elem> {
        self.monomial(c, self.one_monomial())
    }

    pub fn one(&self) -> Polynomial<K::Elem> {
        self.constant(self.field.one())
    }

    pub fn monomial(&self, c: K::Elem, m: Monomial) -> Polynomial<K::Elem> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![Term { coeff: c, mono: m }] }
        }
    }

    pub fn var(&self, i: usize) -> Polynomial<K::Elem> {
        self.monomial(self.field.one(), Monomial::var(self.nvars(), i, 1))
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zeros.
    pub fn from_terms(&self, terms: Vec<(K::Elem, Monomial)>) -> Polynomial<K::Elem> {
        let mut terms: Vec<Term<K::Elem>> =
            terms.into_iter().map(|(coeff, mono)| Term { coeff, mono }).collect();
        terms.sort_by(|a, b| self.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term<K::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = self.field.add(&last.coeff, &t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !self.field.is_zero(&t.coeff));
        Polynomial { terms: out }
    }

    /// Re-sorts a polynomial built under another order (explicitly).
    pub fn reorder(&self, f: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.cmp(&b.mono, &a.mono));
        Polynomial { terms }
    }

    pub fn is_sorted(&self, f: &Polynomial<K::Elem>) -> bool {
        f.terms.windows(2).all(|w| self.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater)
            && f.terms.iter().all(|t| !self.field.is_zero(&t.coeff))
    }

    pub fn neg(&self, f: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|t| Term { coeff: self.field.neg(&t.coeff), mono: t.mono.clone() })
                .collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial<K::Elem>, c: &K::Elem) -> Polynomial<K::Elem> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|t| Term { coeff: self.field.mul(&t.coeff, c), mono: t.mono.clone() })
                .collect(),
        }
    }

    /// `c · m · f`; order is preserved by multiplication with a monomial.
    pub fn mul_term(
        &self,
        f: &Polynomial<K::Elem>,
        c: &K::Elem,
        m: &Monomial,
    ) -> Polynomial<K::Elem> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|t| Term { coeff: self.field.mul(&t.coeff, c), mono: t.mono.mul(m) })
                .collect(),
        }
    }

    pub fn add(&self, f: &Polynomial<K::Elem>, g: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        self.add_scaled(f, &self.field.one(), &self.one_monomial(), g)
    }

    pub fn sub(&self, f: &Polynomial<K::Elem>, g: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        self.add_scaled(f, &self.field.neg(&self.field.one()), &self.one_monomial(), g)
    }

    /// `f + c · m · g` by merging.
    pub fn add_scaled(
        &self,
        f: &Polynomial<K::Elem>,
        c: &K::Elem,
        m: &Monomial,
        g: &Polynomial<K::Elem>,
    ) -> Polynomial<K::Elem> {
        Polynomial { terms: self.merge_scaled(&f.terms, c, m, &g.terms) }
    }

    pub(crate) fn merge_scaled(
        &self,
        f: &[Term<K::Elem>],
        c: &K::Elem,
        m: &Monomial,
        g: &[Term<K::Elem>],
    ) -> Vec<Term<K::Elem>> {
        let field = &self.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut i = 0;
        let mut j = 0;
        let mut gj: Option<Monomial> = g.first().map(|t| t.mono.mul(m));
        while i < f.len() || j < g.len() {
            let ord = match (&gj, f.get(i)) {
                (None, _) => Ordering::Greater,
                (Some(_), None) => Ordering::Less,
                (Some(gm), Some(ft)) => self.cmp(&ft.mono, gm),
            };
            match ord {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let coeff = field.mul(&g[j].coeff, c);
                    if !field.is_zero(&coeff) {
                        out.push(Term { coeff, mono: gj.take().unwrap() });
                    }
                    j += 1;
                    gj = g.get(j).map(|t| t.mono.mul(m));
                }
                Ordering::Equal => {
                    let coeff = field.add(&f[i].coeff, &field.mul(&g[j].coeff, c));
                    if !field.is_zero(&coeff) {
                        out.push(Term { coeff, mono: f[i].mono.clone() });
                    }
                    i += 1;
                    j += 1;
                    gj = g.get(j).map(|t| t.mono.mul(m));
                }
            }
        }
        out
    }

    pub fn mul(&self, f: &Polynomial<K::Elem>, g: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        let mut acc = Polynomial::zero();
        for t in &g.terms {
            acc = self.add_scaled(&acc, &t.coeff, &t.mono, f);
        }
        acc
    }

    pub fn pow(&self, f: &Polynomial<K::Elem>, e: u32) -> Polynomial<K::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn make_monic(&self, f: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        match f.leading_coeff() {
            None => Polynomial::zero(),
            Some(c) if self.field.is_one(c) => f.clone(),
            Some(c) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(f, &inv)
            }
        }
    }

    /// The common `ω`-degree of all terms, if `f` is nonzero and homogeneous.
    pub fn homogeneous_degree(&self, f: &Polynomial<K::Elem>, w: &WeightVector) -> Option<u64> {
        let mut it = f.terms.iter().map(|t| w.degree(&t.mono));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Multivariate division. Divisors are tried in ascending order of their
    /// leading monomials and the first one whose leading monomial divides the
    /// current leading term is used. Quotients are returned in input order.
    pub fn divide(
        &self,
        f: &Polynomial<K::Elem>,
        divisors: &[Polynomial<K::Elem>],
    ) -> (Vec<Polynomial<K::Elem>>, Polynomial<K::Elem>) {
        let mut order: Vec<usize> = (0..divisors.len()).filter(|&i| !divisors[i].is_zero()).collect();
        order.sort_by(|&a, &b| {
            self.cmp(divisors[a].leading_monomial().unwrap(), divisors[b].leading_monomial().unwrap())
        });
        let mut quotients: Vec<Vec<Term<K::Elem>>> = vec![Vec::new(); divisors.len()];
        let mut rem = Vec::new();
        let mut p: Vec<Term<K::Elem>> = f.terms.clone();
        let mut start = 0;
        while start < p.len() {
            let lt = &p[start];
            let hit = order.iter().copied().find(|&i| {
                divisors[i].leading_monomial().unwrap().divides(&lt.mono)
            });
            match hit {
                None => {
                    rem.push(lt.clone());
                    start += 1;
                }
                Some(i) => {
                    let d = &divisors[i];
                    let dl = &d.terms[0];
                    let m = lt.mono.div(&dl.mono).unwrap();
                    let c = self.field.div(&lt.coeff, &dl.coeff).unwrap();
                    quotients[i].push(Term { coeff: c.clone(), mono: m.clone() });
                    let neg = self.field.neg(&c);
                    p = self.merge_scaled(&p[start + 1..], &neg, &m, &d.terms[1..]);
                    start = 0;
                }
            }
        }
        // quotient terms come out in descending order already
        let quotients = quotients.into_iter().map(|terms| Polynomial { terms }).collect();
        (quotients, Polynomial { terms: rem })
    }

    /// The remainder of [`PolyRing::divide`] without tracking quotients.
    pub fn remainder(
        &self,
        f: &Polynomial<K::Elem>,
        divisors: &[Polynomial<K::Elem>],
    ) -> Polynomial<K::Elem> {
        self.divide(f, divisors).1
    }

    /// Maps a polynomial into another ring with the same field by sending
    /// variable `i` to variable `map[i]` (`None` means the variable must not
    /// occur). Returns `None` if a forbidden variable occurs.
    pub fn map_vars(
        &self,
        f: &Polynomial<K::Elem>,
        target: &PolyRing<K>,
        map: &[Option<usize>],
    ) -> Option<Polynomial<K::Elem>> {
        let n = target.nvars();
        let mut terms = Vec::with_capacity(f.len());
        for t in &f.terms {
            let mut e = vec![0u32; n];
            for (i, &x) in t.mono.exps().iter().enumerate() {
                if x > 0 {
                    e[map[i]?] += x;
                }
            }
            terms.push((t.coeff.clone(), Monomial::new(e)));
        }
        Some(target.from_terms(terms))
    }

    pub fn format(&self, f: &Polynomial<K::Elem>) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, t) in f.terms.iter().enumerate() {
            let mut c = self.field.format(&t.coeff);
            let negative = c.starts_with('-');
            if negative {
                c.remove(0);
            }
            if k == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let mono = t.mono.format(&self.names);
            if t.mono.is_one() {
                s.push_str(&c);
            } else if c == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&c);
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        m.format(&self.names)
    }

    /// Parses `2*x1^2*x3 - 3/4 x2 + 1`-style text over this ring's variable
    /// names.
    pub fn parse(&self, text: &str) -> Result<Polynomial<K::Elem>> {
        Parser { ring: self, s: text.as_bytes(), pos: 0 }.polynomial()
    }

    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let f = self.parse(text)?;
        match f.terms() {
            [t] if self.field.is_one(&t.coeff) => Ok(t.mono.clone()),
            _ => Err(Error::Parse(format!("`{text}` is not a monomial"))),
        }
    }
}

struct Parser<'a, K: Field> {
    ring: &'a PolyRing<K>,
    s: &'a [u8],
    pos: usize,
}

impl<K: Field> Parser<'_, K> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of `{}`", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        core::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }

    fn polynomial(mut self) -> Result<Polynomial<K::Elem>> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut sign = 1i64;
            match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty polynomial")),
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(_) if first => {}
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
            first = false;
            let (c, m) = self.term()?;
            let c = if sign < 0 { field.neg(&c) } else { c };
            terms.push((c, m));
        }
        Ok(self.ring.from_terms(terms))
    }

    fn term(&mut self) -> Result<(K::Elem, Monomial)> {
        let field = self.ring.field();
        let mut coeff = field.one();
        let mut mono = self.ring.one_monomial();
        let mut any = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.digits().to_string();
                    let mut text = num;
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        self.skip_ws();
                        let den = self.digits();
                        if den.is_empty() {
                            return Err(self.err("missing denominator"));
                        }
                        text.push('/');
                        text.push_str(den);
                    }
                    let c = parse_coefficient(field, &text)?;
                    coeff = field.mul(&coeff, &c);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                        self.pos += 1;
                    }
                    let name = core::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
                    let idx = self
                        .ring
                        .names()
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.digits().parse().map_err(|_| self.err("bad exponent"))?;
                    }
                    let m = Monomial::var(self.ring.nvars(), idx, e);
                    mono = mono.try_mul(&m)?;
                }
                _ => {
                    if !any {
                        return Err(self.err("expected a term"));
                    }
                    return Ok((coeff, mono));
                }
            }
            any = true;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
        }
    }
}
