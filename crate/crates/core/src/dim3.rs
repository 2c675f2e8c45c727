//! The three-dimensional simplicial toric case: Schreyer sets without module
//! Gröbner bases, pruning by monomial membership tests, Apery and
//! exceptional sets of the semigroup, and the formulas built on them.
//!
//! Throughout, `e₁, e₂, e₃` are the last three columns of the generator
//! matrix and `x_{n-2}, x_{n-1}, x_n` the matching variables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::GroebnerBasis;
use crate::polyring::{Monomial, Polynomial};
use crate::shortres::{colon_into_a, standard_monomials_b0, ShortResInput};
use crate::toric::{multidegree, ToricPresentation};

/// A degree in `ℕ³`.
pub type Degree3 = [u64; 3];

/// The monomial sets of the short resolution in dimension 3.
///
/// `b1` and `b2` stay empty until [`prune_dim3`] has run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dim3Sets {
    pub b0: Vec<Monomial>,
    pub b1prime: Vec<Monomial>,
    pub b2prime: Vec<Monomial>,
    pub b1: Vec<Monomial>,
    pub b2: Vec<Monomial>,
    pub c: Vec<Monomial>,
    pub c1: Vec<Monomial>,
    pub c2: Vec<Monomial>,
    /// `u ↦ G(I_u)`, sorted lexicographically with `x_n > x_{n-1} > x_{n-2}`.
    pub per_u_generators: Vec<(Monomial, Vec<Monomial>)>,
    /// `u ↦ [lcm(M_i, M_{i+1})]` over consecutive generators.
    pub lcm_ladders: Vec<(Monomial, Vec<Monomial>)>,
    pub pruned: bool,
}

/// Descending lex with `x_n > x_{n-1} > x_{n-2}`.
fn cmp_lex_rev_a(a: &Monomial, b: &Monomial) -> Ordering {
    let n = a.nvars();
    for i in (n - 3..n).rev() {
        match b.exps()[i].cmp(&a.exps()[i]) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

fn first_non_binomial<K: Field>(gb: &GroebnerBasis<K>) -> Option<&Polynomial<K::Elem>> {
    gb.elements().iter().find(|g| g.len() != 2)
}

/// `ℬ₀`, `ℬ₁′` and `ℬ₂′` for a prime binomial ideal of dimension 3.
pub fn schreyer_sets_dim3<K: Field>(input: &ShortResInput<K>) -> Result<Dim3Sets> {
    if input.d() != 3 {
        return Err(Error::NotDimension3(input.d()));
    }
    let gb = input.groebner_basis();
    let ring = input.ring();
    if let Some(g) = first_non_binomial(gb) {
        return Err(Error::NotPrimeBinomial(ring.format(g)));
    }
    let n = input.n();
    let in_i = input.initial_ideal();
    if let Some(m) = in_i.iter().find(|m| m.exps()[n - 1] > 0) {
        return Err(Error::NotPrimeBinomial(format!(
            "leading monomial {} involves the last variable",
            ring.format_monomial(m)
        )));
    }
    let b0 = standard_monomials_b0(&in_i, n, 3)?;
    let mut sets = Dim3Sets { b0: b0.clone(), ..Dim3Sets::default() };
    for u in &b0 {
        let mut g = colon_into_a(&in_i, u, 3);
        g.sort_by(cmp_lex_rev_a);
        let ladder: Vec<Monomial> = g.windows(2).map(|w| w[0].lcm(&w[1])).collect();
        sets.b1prime.extend(g.iter().map(|m| u.mul(m)));
        sets.b2prime.extend(ladder.iter().map(|m| u.mul(m)));
        sets.per_u_generators.push((u.clone(), g));
        sets.lcm_ladders.push((u.clone(), ladder));
    }
    Ok(sets)
}

/// Convenience wrapper starting from a generator matrix.
pub fn schreyer_sets_from_presentation<K: Field>(p: &ToricPresentation, field: K) -> Result<Dim3Sets> {
    if p.d() != 3 {
        return Err(Error::NotDimension3(p.d()));
    }
    schreyer_sets_dim3(&ShortResInput::from_presentation(p, field)?)
}

/// Refuses ideals the pruning step cannot handle: the reduced basis must
/// consist of binomials with unit coefficients and come from a generator
/// matrix.
pub fn check_toric<K: Field>(input: &ShortResInput<K>) -> Result<()> {
    let gb = input.groebner_basis();
    let ring = input.ring();
    if let Some(g) = first_non_binomial(gb) {
        return Err(Error::NotToric(format!("Gröbner basis element {} is not a binomial", ring.format(g))));
    }
    let one = ring.field().one();
    let minus = ring.field().neg(&one);
    if let Some(g) = gb.elements().iter().find(|g| g.terms().iter().any(|t| t.coeff != one && t.coeff != minus)) {
        return Err(Error::NotToric(format!("Gröbner basis element {} has a non-unit coefficient", ring.format(g))));
    }
    if input.presentation().is_none() {
        return Err(Error::NotToric(String::from(
            "primality of a binomial ideal is not checked; supply a generator matrix",
        )));
    }
    Ok(())
}

/// `ℬ₁` and `ℬ₂` from `ℬ₁′` and `ℬ₂′` using membership in `I + ⟨x_{n-2}⟩`
/// and `I + ⟨x_n⟩`.
pub fn prune_dim3<K: Field>(input: &ShortResInput<K>, sets: &Dim3Sets) -> Result<Dim3Sets> {
    if input.d() != 3 {
        return Err(Error::NotDimension3(input.d()));
    }
    check_toric(input)?;
    let gb = input.groebner_basis();
    let ring = input.ring();
    let n = input.n();
    let one = ring.field().one();
    let mono = |m: &Monomial| ring.monomial(one.clone(), m.clone());
    let (z1, z2, z3) = (n - 3, n - 2, n - 1);
    let with_first = gb.extend(&[ring.var(z1)]);
    let with_last = gb.extend(&[ring.var(z3)]);
    let in_first = |m: &Monomial| with_first.contains(&mono(m));
    let x2 = Monomial::var(n, z2, 1);
    let x3 = Monomial::var(n, z3, 1);

    let mut out = sets.clone();
    out.c.clear();
    out.c1.clear();
    out.c2.clear();
    out.b1.clear();
    for m in &sets.b1prime {
        let e = m.exps();
        let in_c = e[z1] == 0 && e[z3] == 0 && e[z2] >= 2;
        if !in_c {
            out.b1.push(m.clone());
            continue;
        }
        out.c.push(m.clone());
        let r = gb.normal_form(&mono(m));
        let r_mono = r.leading_monomial().cloned();
        let below = m.div(&x2).expect("divisible");
        let keep = match r_mono {
            Some(rm) if rm.exps()[z1] > 0 => {
                out.c1.push(m.clone());
                !in_first(&below)
            }
            Some(rm) => {
                out.c2.push(m.clone());
                match rm.div(&x3) {
                    Some(w) => !in_first(&below) || !in_first(&w),
                    None => true,
                }
            }
            None => true,
        };
        if keep {
            out.b1.push(m.clone());
        }
    }
    out.b2 = sets
        .b2prime
        .iter()
        .filter(|m| match m.div(&x2) {
            Some(q) => with_last.contains(&mono(&q)),
            None => true,
        })
        .cloned()
        .collect();
    out.pruned = true;
    Ok(out)
}

/// Which of the seven sums `Σ_{e∈F} e` can be subtracted from a degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacePattern {
    /// `s − eᵢ ∈ 𝒮`.
    pub singles: [bool; 3],
    /// `s − (e₁+e₂)`, `s − (e₁+e₃)`, `s − (e₂+e₃)`.
    pub pairs: [bool; 3],
    pub triple: bool,
}

impl FacePattern {
    /// Seven-bit code: singles in bits 0–2, pairs in bits 3–5, triple in bit 6.
    pub fn code(&self) -> u8 {
        let mut c = 0u8;
        for i in 0..3 {
            c |= (self.singles[i] as u8) << i;
            c |= (self.pairs[i] as u8) << (3 + i);
        }
        c | (self.triple as u8) << 6
    }

    pub fn classify(&self) -> DegreeClass {
        let a = self.singles.iter().filter(|&&b| b).count();
        let b = self.pairs.iter().filter(|&&b| b).count();
        match (a, b, self.triple) {
            (_, _, true) => DegreeClass::Simplex,
            (0, 0, _) => DegreeClass::Apery,
            (3, 3, _) => DegreeClass::E33,
            (3, 1, _) => DegreeClass::E31,
            (3, 0, _) => DegreeClass::E30,
            (2, 0, _) => DegreeClass::E20,
            _ => DegreeClass::Other(self.code()),
        }
    }
}

/// Configuration of a semigroup element with respect to `e₁, e₂, e₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DegreeClass {
    Apery,
    E31,
    E20,
    E30,
    E33,
    Simplex,
    Other(u8),
}

impl DegreeClass {
    pub fn label(&self) -> String {
        match self {
            DegreeClass::Apery => String::from("APERY"),
            DegreeClass::E31 => String::from("E31"),
            DegreeClass::E20 => String::from("E20"),
            DegreeClass::E30 => String::from("E30"),
            DegreeClass::E33 => String::from("E33"),
            DegreeClass::Simplex => String::from("SIMPLEX"),
            DegreeClass::Other(c) => format!("OTHER({})", c),
        }
    }
}

const FACES: [[bool; 3]; 7] = [
    [true, false, false],
    [false, true, false],
    [false, false, true],
    [true, true, false],
    [true, false, true],
    [false, true, true],
    [true, true, true],
];

/// Semigroup membership through `x^β ∈ I_𝒜 + ⟨x^γ⟩`, with the seven
/// auxiliary Gröbner bases built on first use.
pub struct MembershipOracle<'a, K: Field> {
    gb: &'a GroebnerBasis<K>,
    presentation: &'a ToricPresentation,
    faces: [OnceCell<GroebnerBasis<K>>; 7],
}

impl<'a, K: Field> MembershipOracle<'a, K> {
    pub fn new(gb: &'a GroebnerBasis<K>, presentation: &'a ToricPresentation) -> Result<Self> {
        if presentation.d() != 3 {
            return Err(Error::NotDimension3(presentation.d()));
        }
        Ok(MembershipOracle { gb, presentation, faces: Default::default() })
    }

    pub fn presentation(&self) -> &ToricPresentation {
        self.presentation
    }

    fn face_basis(&self, k: usize) -> &GroebnerBasis<K> {
        self.faces[k].get_or_init(|| {
            let ring = self.gb.ring();
            let n = ring.nvars();
            let mut e = vec![0u32; n];
            for i in 0..3 {
                e[n - 3 + i] = FACES[k][i] as u32;
            }
            self.gb.extend(&[ring.monomial(ring.field().one(), Monomial::new(e))])
        })
    }

    fn subtracts(&self, beta: &Monomial, k: usize) -> bool {
        let ring = self.gb.ring();
        self.face_basis(k).contains(&ring.monomial(ring.field().one(), beta.clone()))
    }

    /// The face pattern of `deg_𝒮(x^β)`.
    pub fn pattern(&self, beta: &Monomial) -> FacePattern {
        let q: Vec<bool> = (0..7).map(|k| self.subtracts(beta, k)).collect();
        FacePattern { singles: [q[0], q[1], q[2]], pairs: [q[3], q[4], q[5]], triple: q[6] }
    }

    pub fn classify_monomial(&self, beta: &Monomial) -> DegreeClass {
        self.pattern(beta).classify()
    }
}

/// Some `β` with `𝒜β = s`, if `s ∈ 𝒮`.
pub fn semigroup_factorization(s: &[u64], p: &ToricPresentation) -> Option<Vec<u32>> {
    let cols = p.columns();
    let n = cols.len();
    fn go(
        rest: &mut Vec<u64>,
        cols: &[Vec<u32>],
        start: usize,
        beta: &mut Vec<u32>,
        dead: &mut BTreeSet<(Vec<u64>, usize)>,
    ) -> bool {
        if rest.iter().all(|&x| x == 0) {
            return true;
        }
        if dead.contains(&(rest.clone(), start)) {
            return false;
        }
        for k in start..cols.len() {
            if rest.iter().zip(&cols[k]).any(|(&r, &c)| (c as u64) > r) {
                continue;
            }
            for (r, &c) in rest.iter_mut().zip(&cols[k]) {
                *r -= c as u64;
            }
            beta[k] += 1;
            let ok = go(rest, cols, k, beta, dead);
            if ok {
                return true;
            }
            beta[k] -= 1;
            for (r, &c) in rest.iter_mut().zip(&cols[k]) {
                *r += c as u64;
            }
        }
        dead.insert((rest.clone(), start));
        false
    }
    if s.len() != p.d() {
        return None;
    }
    let mut beta = vec![0u32; n];
    let mut rest = s.to_vec();
    go(&mut rest, &cols, 0, &mut beta, &mut BTreeSet::new()).then_some(beta)
}

/// Classifies `s ∈ 𝒮` by the seven membership queries.
pub fn classify_degree<K: Field>(s: &Degree3, oracle: &MembershipOracle<'_, K>) -> Result<DegreeClass> {
    let beta = semigroup_factorization(s, oracle.presentation)
        .ok_or_else(|| Error::NotInSemigroup(format!("({}, {}, {})", s[0], s[1], s[2])))?;
    Ok(oracle.classify_monomial(&Monomial::new(beta)))
}

/// `deg_𝒮(x^β)` for a 3-row presentation.
pub fn s_degree(beta: &Monomial, p: &ToricPresentation) -> Result<Degree3> {
    let v = multidegree(beta.exps(), p)?;
    match v.as_slice() {
        [a, b, c] => Ok([*a, *b, *c]),
        _ => Err(Error::NotDimension3(v.len())),
    }
}

/// The Apery set and the four exceptional sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExceptionalSets {
    pub ap: BTreeSet<Degree3>,
    pub e31: BTreeSet<Degree3>,
    pub e20: BTreeSet<Degree3>,
    pub e30: BTreeSet<Degree3>,
    pub e33: BTreeSet<Degree3>,
}

impl ExceptionalSets {
    /// Every listed degree with its class, sorted by degree.
    pub fn report(&self) -> Vec<(Degree3, DegreeClass)> {
        let mut out: Vec<(Degree3, DegreeClass)> = Vec::new();
        for (set, c) in [
            (&self.ap, DegreeClass::Apery),
            (&self.e31, DegreeClass::E31),
            (&self.e20, DegreeClass::E20),
            (&self.e30, DegreeClass::E30),
            (&self.e33, DegreeClass::E33),
        ] {
            out.extend(set.iter().map(|s| (*s, c)));
        }
        out.sort();
        out
    }

    /// `𝒮₁` as a multiset: `E³⁰` degrees appear twice.
    pub fn first_syzygy_degrees(&self) -> Vec<Degree3> {
        let mut v: Vec<Degree3> = self.e31.iter().chain(&self.e20).chain(&self.e30).chain(&self.e30).copied().collect();
        v.sort();
        v
    }
}

/// Runs both dimension-3 algorithms and sorts the resulting degrees into
/// classes. Returns the pruned sets alongside.
pub fn apery_and_exceptional_sets<K: Field>(input: &ShortResInput<K>) -> Result<(Dim3Sets, ExceptionalSets)> {
    let sets = prune_dim3(input, &schreyer_sets_dim3(input)?)?;
    let p = input.presentation().expect("checked by prune_dim3");
    let oracle = MembershipOracle::new(input.groebner_basis(), p)?;
    let mut ex = ExceptionalSets::default();
    for u in &sets.b0 {
        ex.ap.insert(s_degree(u, p)?);
    }
    for m in &sets.b1 {
        let s = s_degree(m, p)?;
        match oracle.classify_monomial(m) {
            DegreeClass::E31 => ex.e31.insert(s),
            DegreeClass::E20 => ex.e20.insert(s),
            DegreeClass::E30 => ex.e30.insert(s),
            c => {
                return Err(Error::NotToric(format!(
                    "first syzygy degree ({}, {}, {}) has configuration {}",
                    s[0],
                    s[1],
                    s[2],
                    c.label()
                )))
            }
        };
    }
    for m in &sets.b2 {
        ex.e33.insert(s_degree(m, p)?);
    }
    Ok((sets, ex))
}

/// `Σ_AP t^s − Σ_{E³¹} t^s − Σ_{E²⁰} t^s − 2Σ_{E³⁰} t^s + Σ_{E³³} t^s`,
/// zero coefficients dropped.
pub fn multigraded_hilbert_numerator(e: &ExceptionalSets) -> BTreeMap<Degree3, i64> {
    let mut num: BTreeMap<Degree3, i64> = BTreeMap::new();
    for (set, c) in [(&e.ap, 1), (&e.e31, -1), (&e.e20, -1), (&e.e30, -2), (&e.e33, 1)] {
        for s in set {
            *num.entry(*s).or_insert(0) += c;
        }
    }
    num.retain(|_, c| *c != 0);
    num
}

fn level(s: &Degree3, dd: u64) -> u64 {
    (s[0] + s[1] + s[2]) / dd
}

/// Regularity of the projective monomial surface from the Apery and
/// exceptional sets; `dd` is the common column sum.
pub fn surface_regularity(e: &ExceptionalSets, dd: Option<u64>) -> Result<i64> {
    let dd = match dd {
        Some(x) if x > 0 => x,
        _ => return Err(Error::NotEquigenerated),
    };
    let m = |set: &BTreeSet<Degree3>| set.iter().map(|s| level(s, dd) as i64).max();
    let cands = [
        m(&e.ap),
        m(&e.e31).map(|x| x - 1),
        m(&e.e20).map(|x| x - 1),
        m(&e.e30).map(|x| x - 1),
        m(&e.e33).map(|x| x - 2),
    ];
    Ok(cands.into_iter().flatten().max().unwrap_or(0))
}

/// Elements of a set lying in `H_s`.
pub fn count_at_level(set: &BTreeSet<Degree3>, s: u64, dd: u64) -> usize {
    set.iter().filter(|x| x[0] + x[1] + x[2] == s * dd).count()
}

/// `|s𝒜|`, the number of distinct sums of `s` columns.
pub fn sumset_size(p: &ToricPresentation, s: usize) -> Result<usize> {
    if p.homogeneous_degree().is_none() {
        return Err(Error::NotEquigenerated);
    }
    let cols: BTreeSet<Vec<u64>> = p.columns().into_iter().map(|c| c.into_iter().map(u64::from).collect()).collect();
    let mut cur: BTreeSet<Vec<u64>> = BTreeSet::new();
    cur.insert(vec![0; p.d()]);
    for _ in 0..s {
        let mut next = BTreeSet::new();
        for x in &cur {
            for c in &cols {
                next.insert(x.iter().zip(c).map(|(a, b)| a + b).collect::<Vec<u64>>());
            }
        }
        cur = next;
    }
    Ok(cur.len())
}

/// Right-hand side of the `|AP_s|` identity at level `s`.
pub fn apery_level_prediction(p: &ToricPresentation, e: &ExceptionalSets, s: u64) -> Result<i64> {
    let dd = p.homogeneous_degree().ok_or(Error::NotEquigenerated)?;
    let binom = [1i64, -3, 3, -1];
    let mut v = 0i64;
    for (k, c) in binom.iter().enumerate() {
        if s >= k as u64 {
            v += c * sumset_size(p, (s - k as u64) as usize)? as i64;
        }
    }
    v += count_at_level(&e.e31, s, dd) as i64;
    v += count_at_level(&e.e20, s, dd) as i64;
    v += 2 * count_at_level(&e.e30, s, dd) as i64;
    v -= count_at_level(&e.e33, s, dd) as i64;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::shortres::short_resolution;
    use crate::toric::validate_presentation;
    use proptest::prelude::*;

    fn seven_columns() -> ToricPresentation {
        validate_presentation(&[
            vec![1, 5, 3, 5, 2, 0, 0],
            vec![3, 1, 5, 5, 0, 2, 0],
            vec![5, 5, 3, 1, 0, 0, 2],
        ])
        .unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    /// Brute force over a box: `reach[s]` iff `s ∈ 𝒮`.
    fn semigroup_box(p: &ToricPresentation, bound: u64) -> BTreeSet<Degree3> {
        let cols = p.columns();
        let mut reach = BTreeSet::new();
        let mut stack = vec![[0u64; 3]];
        while let Some(s) = stack.pop() {
            if !reach.insert(s) {
                continue;
            }
            for c in &cols {
                let t = [s[0] + c[0] as u64, s[1] + c[1] as u64, s[2] + c[2] as u64];
                if t.iter().all(|&x| x <= bound) {
                    stack.push(t);
                }
            }
        }
        reach
    }

    fn brute_pattern(s: Degree3, p: &ToricPresentation) -> FacePattern {
        let e = p.extremal_scales();
        let sub = |f: [bool; 3]| -> bool {
            let mut t = [0i64; 3];
            for i in 0..3 {
                t[i] = s[i] as i64 - if f[i] { e[i] as i64 } else { 0 };
            }
            t.iter().all(|&x| x >= 0)
                && semigroup_factorization(&[t[0] as u64, t[1] as u64, t[2] as u64], p).is_some()
        };
        let q: Vec<bool> = FACES.iter().map(|f| sub(*f)).collect();
        FacePattern { singles: [q[0], q[1], q[2]], pairs: [q[3], q[4], q[5]], triple: q[6] }
    }

    #[test]
    fn seven_column_sets() {
        let p = seven_columns();
        let input = ShortResInput::from_presentation(&p, Rationals).unwrap();
        let sets = schreyer_sets_dim3(&input).unwrap();
        let want_b1: BTreeSet<Monomial> = [
            mono(&[0, 0, 1, 0, 1, 0, 0]),
            mono(&[0, 1, 0, 0, 0, 2, 0]),
            mono(&[1, 0, 0, 0, 2, 0, 0]),
            mono(&[1, 0, 0, 0, 1, 1, 0]),
        ]
        .into_iter()
        .collect();
        assert_eq!(sets.b1prime.iter().cloned().collect::<BTreeSet<_>>(), want_b1);
        assert_eq!(sets.b2prime, vec![mono(&[1, 0, 0, 0, 2, 1, 0])]);
        let pruned = prune_dim3(&input, &sets).unwrap();
        assert_eq!(pruned.b1.len(), 3);
        assert!(pruned.b2.is_empty());
        assert_eq!(pruned.b1prime.len() - pruned.b1.len(), pruned.b2prime.len() - pruned.b2.len());

        let oracle = MembershipOracle::new(input.groebner_basis(), &p).unwrap();
        let s = s_degree(&mono(&[1, 0, 0, 0, 2, 1, 0]), &p).unwrap();
        // pruned away: the pair (e₂, e₃) does not subtract
        let c = classify_degree(&s, &oracle).unwrap();
        assert_eq!(c, DegreeClass::Other(31));
        assert_eq!(brute_pattern(s, &p).classify(), c);

        let (_, ex) = apery_and_exceptional_sets(&input).unwrap();
        let ap: BTreeSet<Degree3> = [
            [0, 0, 0],
            [1, 3, 5],
            [5, 1, 5],
            [3, 5, 3],
            [5, 5, 1],
        ]
        .into_iter()
        .collect();
        assert_eq!(ex.ap, ap);
        assert!(ex.e33.is_empty());
        let num = multigraded_hilbert_numerator(&ex);
        assert_eq!(num.values().sum::<i64>(), 5 - 3);
    }

    #[test]
    fn trivial_cases() {
        let p = validate_presentation(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let input = ShortResInput::from_presentation(&p, Rationals).unwrap();
        let (sets, ex) = apery_and_exceptional_sets(&input).unwrap();
        assert!(sets.b1prime.is_empty() && sets.b2prime.is_empty());
        assert_eq!(ex.ap.iter().copied().collect::<Vec<_>>(), vec![[0, 0, 0]]);
        assert!(ex.e31.is_empty() && ex.e20.is_empty() && ex.e30.is_empty() && ex.e33.is_empty());
        assert_eq!(multigraded_hilbert_numerator(&ex).into_iter().collect::<Vec<_>>(), vec![([0, 0, 0], 1)]);
        assert_eq!(surface_regularity(&ex, Some(1)).unwrap(), 0);
        assert_eq!(sumset_size(&p, 0).unwrap(), 1);
        assert_eq!(sumset_size(&p, 1).unwrap(), 3);
        let oracle = MembershipOracle::new(input.groebner_basis(), &p).unwrap();
        assert_eq!(classify_degree(&[0, 0, 0], &oracle).unwrap(), DegreeClass::Apery);
        assert_eq!(classify_degree(&[1, 1, 1], &oracle).unwrap(), DegreeClass::Simplex);
    }

    #[test]
    fn refusals() {
        let p = seven_columns();
        let oracle_in = ShortResInput::from_presentation(&p, Rationals).unwrap();
        let oracle = MembershipOracle::new(oracle_in.groebner_basis(), &p).unwrap();
        assert!(matches!(classify_degree(&[1, 0, 0], &oracle), Err(Error::NotInSemigroup(_))));
        let p2 = validate_presentation(&[vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
        assert!(matches!(schreyer_sets_from_presentation(&p2, Rationals), Err(Error::NotDimension3(2))));
        let p3 = validate_presentation(&[vec![1, 0, 0], vec![1, 0, 0]]);
        assert!(p3.is_err());
        let ne = validate_presentation(&[vec![1, 2, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        assert!(matches!(sumset_size(&ne, 2), Err(Error::NotEquigenerated)));
    }

    #[test]
    fn cohen_macaulay_is_free() {
        let p = validate_presentation(&[vec![1, 2, 0, 0], vec![1, 0, 2, 0], vec![0, 0, 0, 2]]).unwrap();
        let sets = schreyer_sets_from_presentation(&p, Rationals).unwrap();
        assert_eq!(sets.b0.len(), 2);
        assert!(sets.b1prime.is_empty() && sets.b2prime.is_empty());
    }

    fn presentation3() -> impl Strategy<Value = ToricPresentation> {
        (1usize..=3, proptest::collection::vec(0u32..=4, 9), proptest::collection::vec(1u32..=4, 3)).prop_filter_map(
            "valid",
            |(k, free, scales)| {
                let mut rows = vec![Vec::new(); 3];
                for j in 0..k {
                    for (i, r) in rows.iter_mut().enumerate() {
                        r.push(free[3 * j + i]);
                    }
                }
                for (i, r) in rows.iter_mut().enumerate() {
                    for j in 0..3 {
                        r.push(if i == j { scales[j] } else { 0 });
                    }
                }
                validate_presentation(&rows).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn pruning_matches_minimalization(p in presentation3()) {
            let input = ShortResInput::from_presentation(&p, PrimeField::new(32003).unwrap()).unwrap();
            let sets = schreyer_sets_dim3(&input).unwrap();
            let pruned = prune_dim3(&input, &sets).unwrap();
            let res = short_resolution(&input).unwrap();
            let degs = |ms: &[Monomial]| {
                let mut v: Vec<Degree3> = ms.iter().map(|m| s_degree(m, &p).unwrap()).collect();
                v.sort();
                v
            };
            let labels = res.schreyer.labels();
            prop_assert_eq!(degs(&sets.b1prime), degs(labels.get(1).map(|v| v.as_slice()).unwrap_or(&[])));
            prop_assert_eq!(degs(&sets.b2prime), degs(labels.get(2).map(|v| v.as_slice()).unwrap_or(&[])));
            let min = res.minimal.labels();
            prop_assert_eq!(degs(&pruned.b1), degs(min.get(1).map(|v| v.as_slice()).unwrap_or(&[])));
            prop_assert_eq!(degs(&pruned.b2), degs(min.get(2).map(|v| v.as_slice()).unwrap_or(&[])));
            prop_assert_eq!(sets.b1prime.len() - pruned.b1.len(), sets.b2prime.len() - pruned.b2.len());
            for m in &pruned.c {
                prop_assert!(pruned.c1.contains(m) != pruned.c2.contains(m));
            }
            for m in sets.b1prime.iter().filter(|m| !pruned.b1.contains(m)) {
                prop_assert!(pruned.c.contains(m));
            }
        }

        #[test]
        fn classification_matches_brute_force(p in presentation3()) {
            let input = ShortResInput::from_presentation(&p, Rationals).unwrap();
            let (sets, ex) = apery_and_exceptional_sets(&input).unwrap();
            let oracle = MembershipOracle::new(input.groebner_basis(), &p).unwrap();
            for m in sets.b0.iter().chain(&sets.b1prime).chain(&sets.b2prime) {
                let s = s_degree(m, &p).unwrap();
                prop_assert_eq!(oracle.pattern(m), brute_pattern(s, &p));
            }
            for m in &sets.c1 {
                let f = oracle.pattern(m);
                prop_assert!(f.singles == [true; 3] && f.pairs[1] && !f.pairs[2]);
            }
            for m in &sets.c2 {
                let f = oracle.pattern(m);
                prop_assert!(f.singles[1] && f.singles[2] && !f.pairs[2]);
            }
            for m in sets.b2prime.iter().filter(|m| !sets.b2.contains(m)) {
                prop_assert!(!oracle.pattern(m).triple);
            }
            let b2deg: BTreeSet<Degree3> = sets.b2prime.iter().map(|m| s_degree(m, &p).unwrap()).collect();
            prop_assert_eq!(b2deg.len(), sets.b2prime.len());

            // the multigraded series against enumeration
            let bound = 20u64;
            let reach = semigroup_box(&p, bound);
            let num = multigraded_hilbert_numerator(&ex);
            let e = p.extremal_scales();
            for a in 0..=bound {
                for b in 0..=bound {
                    for c in 0..=bound {
                        let mut coeff = 0i64;
                        for (s, v) in &num {
                            let (x, y, z) = (a as i64 - s[0] as i64, b as i64 - s[1] as i64, c as i64 - s[2] as i64);
                            if x >= 0 && y >= 0 && z >= 0
                                && x % e[0] as i64 == 0 && y % e[1] as i64 == 0 && z % e[2] as i64 == 0
                            {
                                coeff += v;
                            }
                        }
                        prop_assert_eq!(coeff, reach.contains(&[a, b, c]) as i64);
                    }
                }
            }
        }
    }
}
