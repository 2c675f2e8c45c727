//! Command dispatch: turns a [`Job`] into a [`Report`].

use std::collections::BTreeMap;
use std::path::PathBuf;

use noetherres_core::dim3::{
    apery_and_exceptional_sets, check_toric, multigraded_hilbert_numerator, prune_dim3, s_degree,
    schreyer_sets_dim3, semigroup_factorization, sumset_size, surface_regularity, apery_level_prediction,
    count_at_level, Dim3Sets, ExceptionalSets, MembershipOracle,
};
use noetherres_core::groebner::resolution::BettiGrading;
use noetherres_core::groebner::BettiTable;
use noetherres_core::shortres::{
    alternating_hilbert_sum, check_augmentation, hilbert_series_numerator, multiplicity, regularity_from_resolution,
    short_resolution, ShortResInput, ShortResolution,
};
use noetherres_core::toric::{is_homogeneous_binomial, multidegree, semigroup_contains};
use noetherres_core::{Error, Field, FieldSpec, Monomial, PolyRing, PrimeField, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::input::{load_input, parse_inline_matrix, GeneratorSpec, Input, LoadedInput};
use crate::oracle::{semigroup_box, standard_monomial_counts};
use crate::parallel::{parallel_map, worker_count};
use crate::report::*;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Toric,
    ShortRes,
    Schreyer3,
    Prune3,
    Apery,
    Hilbert,
    Reg,
    Check,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Toric => "toric",
            Command::ShortRes => "short-res",
            Command::Schreyer3 => "schreyer3",
            Command::Prune3 => "prune3",
            Command::Apery => "apery",
            Command::Hilbert => "hilbert",
            Command::Reg => "reg",
            Command::Check => "check",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    Path(PathBuf),
    InlineMatrix(String),
    InlineIdeal { generators: String, weights: Option<Vec<u32>>, d: Option<usize> },
}

/// One invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub command: Command,
    pub source: InputSource,
    pub characteristic: Option<u64>,
    pub standard_graded: bool,
    pub keep_nonminimal: bool,
    /// Degree bound for the series oracles in `check`.
    pub bound: u64,
    pub seed: u64,
}

impl Job {
    pub fn new(command: Command, source: InputSource) -> Self {
        Job {
            command,
            source,
            characteristic: None,
            standard_graded: false,
            keep_nonminimal: false,
            bound: 20,
            seed: DEFAULT_SEED,
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

fn load(source: &InputSource) -> Result<(LoadedInput, String), CliError> {
    match source {
        InputSource::Path(p) => Ok((load_input(p)?, p.display().to_string())),
        InputSource::InlineMatrix(m) => {
            Ok((LoadedInput { input: Input::Matrix(parse_inline_matrix(m)?), characteristic: None }, String::from("<inline>")))
        }
        InputSource::InlineIdeal { generators, weights, d } => {
            let polynomials: Vec<String> =
                generators.split([',', ';']).map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
            let n = match weights {
                Some(w) => w.len(),
                None => infer_nvars(&polynomials)?,
            };
            let weights = weights.clone().unwrap_or_else(|| vec![1; n]);
            let spec = GeneratorSpec { n, weights, d: *d, polynomials };
            Ok((LoadedInput { input: Input::Generators(spec), characteristic: None }, String::from("<inline>")))
        }
    }
}

/// Largest `k` with `xk` occurring in the text.
fn infer_nvars(polys: &[String]) -> Result<usize, CliError> {
    let mut n = 0;
    for p in polys {
        let b = p.as_bytes();
        let mut i = 0;
        while i < b.len() {
            if b[i] == b'x' {
                let j = (i + 1..b.len()).find(|&j| !b[j].is_ascii_digit()).unwrap_or(b.len());
                if j > i + 1 {
                    n = n.max(p[i + 1..j].parse::<usize>().map_err(|e| CliError::Parse(e.to_string()))?);
                }
                i = j;
            } else {
                i += 1;
            }
        }
    }
    if n == 0 {
        return Err(CliError::Parse(String::from("no variables x1, x2, … found; pass --weights")));
    }
    Ok(n)
}

/// Runs a job end to end.
pub fn run(job: &Job) -> Result<Report, CliError> {
    let (loaded, source) = load(&job.source)?;
    let ch = job.characteristic.or(loaded.characteristic).unwrap_or(0);
    let spec = FieldSpec::new(ch)?;
    if spec.characteristic == 0 {
        execute(job, &loaded.input, source, Rationals)
    } else {
        execute(job, &loaded.input, source, PrimeField::new(spec.characteristic)?)
    }
}

fn fmt_monos<K: Field>(ring: &PolyRing<K>, ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(|m| ring.format_monomial(m)).collect()
}

struct Ctx<'a, K: Field> {
    job: &'a Job,
    input: &'a Input,
    sri: ShortResInput<K>,
    unit: u64,
}

impl<K: Field> Ctx<'_, K> {
    fn ring(&self) -> &PolyRing<K> {
        self.sri.ring()
    }

    fn common_degree(&self) -> Option<u64> {
        let w = self.sri.weights().weights();
        w.iter().all(|&x| x == w[0]).then(|| w[0] as u64)
    }

    fn grading(&self) -> Result<(BettiGrading, &'static str), CliError> {
        if self.job.standard_graded {
            let dd = self.common_degree().ok_or(Error::NotEquigenerated)?;
            Ok((BettiGrading::Scaled(dd), "standard"))
        } else {
            Ok((BettiGrading::Omega, "omega"))
        }
    }

    fn table_divisor(&self) -> Result<u64, CliError> {
        Ok(match self.grading()?.0 {
            BettiGrading::Scaled(dd) => dd,
            _ => self.unit,
        })
    }

    fn resolution(&self) -> Result<ShortResolution<K>, CliError> {
        Ok(short_resolution(&self.sri)?)
    }

    fn resolution_info(&self, res: &ShortResolution<K>) -> ResolutionInfo {
        let ring = self.ring();
        let labels = |ls: &[Vec<Monomial>]| ls.iter().map(|l| fmt_monos(ring, l)).collect();
        ResolutionInfo {
            schreyer_ranks: res.schreyer.ranks(),
            minimal_ranks: res.minimal.ranks(),
            schreyer_labels: labels(res.schreyer.labels()),
            minimal_labels: labels(res.minimal.labels()),
            minimal_shifts: res.minimal.shifts().to_vec(),
            pd_a: res.pd_a(),
            pd_r: res.pd_r(),
            depth: res.depth(),
        }
    }

    fn betti_info(&self, res: &ShortResolution<K>) -> Result<BettiInfo, CliError> {
        let (g, name) = self.grading()?;
        let minimal = BettiJson::from_table(&res.minimal.betti_table(g)?, name);
        let schreyer = if self.job.keep_nonminimal {
            Some(BettiJson::from_table(&res.schreyer.betti_table(g)?, name))
        } else {
            None
        };
        Ok(BettiInfo { minimal, schreyer })
    }

    /// Divides raw weighted-degree coefficients by the degree unit.
    fn rescale(&self, h: &[i64]) -> Vec<i64> {
        let u = self.unit as usize;
        (0..h.len()).step_by(u).map(|i| h[i]).collect()
    }

    fn series_info(&self, res: &ShortResolution<K>, ex: Option<&ExceptionalSets>) -> SeriesInfo {
        let n = self.sri.n();
        let d = self.sri.d();
        let w = self.sri.weights().weights();
        SeriesInfo {
            degree_unit: self.unit,
            numerator_schreyer: self.rescale(&hilbert_series_numerator(&res.schreyer)),
            numerator_minimal: self.rescale(&hilbert_series_numerator(&res.minimal)),
            denominator: w[n - d..].iter().map(|&x| x as u64 / self.unit).collect(),
            multiplicity: multiplicity(&res.minimal),
            multigraded: ex.map(|e| {
                multigraded_hilbert_numerator(e)
                    .into_iter()
                    .map(|(degree, coefficient)| MultiTerm { degree, coefficient })
                    .collect()
            }),
        }
    }

    fn dim3_toric(&self) -> bool {
        self.sri.d() == 3 && self.input.presentation().map(|p| p.d() == 3).unwrap_or(false)
    }

    fn pruned_sets(&self) -> Result<Dim3Sets, CliError> {
        if self.sri.d() != 3 {
            return Err(Error::NotDimension3(self.sri.d()).into());
        }
        check_toric(&self.sri)?;
        let sets = schreyer_sets_dim3(&self.sri)?;
        Ok(prune_dim3(&self.sri, &sets)?)
    }

    fn sets_info(&self, s: &Dim3Sets) -> SetsInfo {
        let ring = self.ring();
        let pruned = |v: &[Monomial]| s.pruned.then(|| fmt_monos(ring, v));
        SetsInfo {
            b0: Some(fmt_monos(ring, &s.b0)),
            b1prime: Some(fmt_monos(ring, &s.b1prime)),
            b2prime: Some(fmt_monos(ring, &s.b2prime)),
            b1: pruned(&s.b1),
            b2: pruned(&s.b2),
            c: pruned(&s.c),
            c1: pruned(&s.c1),
            c2: pruned(&s.c2),
            ..SetsInfo::default()
        }
    }

    /// Betti table of the pruned sets.
    fn pruned_table(&self, s: &Dim3Sets) -> Result<BettiInfo, CliError> {
        let (_, name) = self.grading()?;
        let div = self.table_divisor()?;
        let w = self.sri.weights();
        let degs: Vec<Vec<u64>> =
            [&s.b0, &s.b1, &s.b2].iter().map(|l| l.iter().map(|m| w.degree(m) / div).collect()).collect();
        let t = BettiTable::from_degrees(&degs, true);
        Ok(BettiInfo { minimal: BettiJson::from_table(&t, name), schreyer: None })
    }
}

fn exceptional_json(e: &ExceptionalSets) -> ExceptionalJson {
    ExceptionalJson {
        ap: e.ap.iter().copied().collect(),
        e31: e.e31.iter().copied().collect(),
        e20: e.e20.iter().copied().collect(),
        e30: e.e30.iter().copied().collect(),
        e33: e.e33.iter().copied().collect(),
    }
}

fn execute<K: Field>(job: &Job, input: &Input, source: String, field: K) -> Result<Report, CliError> {
    let sri = input.short_res_input(field.clone())?;
    let unit = sri.weights().gcd() as u64;
    let ctx = Ctx { job, input, sri, unit };
    if job.standard_graded {
        ctx.grading()?;
    }
    let mut report = Report {
        command: job.command.name().to_string(),
        input: InputInfo {
            source,
            kind: match input {
                Input::Matrix(_) => "matrix",
                Input::Generators(_) => "generators",
            }
            .to_string(),
            n: ctx.sri.n(),
            d: ctx.sri.d(),
            weights: input.weights(),
        },
        field: FieldInfo { characteristic: field.characteristic() },
        resolution: None,
        betti: None,
        sets: None,
        series: None,
        regularity: None,
        checks: None,
    };
    match job.command {
        Command::Toric => {
            let gb = ctx.sri.groebner_basis();
            let elems = gb.elements().iter().map(|g| ctx.ring().format(g)).collect();
            report.sets = Some(SetsInfo { groebner_basis: Some(elems), ..SetsInfo::default() });
        }
        Command::ShortRes => {
            let res = ctx.resolution()?;
            report.sets = Some(SetsInfo { b0: Some(fmt_monos(ctx.ring(), &res.b0)), ..SetsInfo::default() });
            report.resolution = Some(ctx.resolution_info(&res));
            report.betti = Some(ctx.betti_info(&res)?);
        }
        Command::Schreyer3 => {
            let sets = schreyer_sets_dim3(&ctx.sri)?;
            report.sets = Some(ctx.sets_info(&sets));
        }
        Command::Prune3 => {
            let sets = ctx.pruned_sets()?;
            report.sets = Some(ctx.sets_info(&sets));
            report.betti = Some(ctx.pruned_table(&sets)?);
        }
        Command::Apery => {
            ctx.pruned_sets()?;
            let (sets, ex) = apery_and_exceptional_sets(&ctx.sri)?;
            let mut info = ctx.sets_info(&sets);
            info.exceptional = Some(exceptional_json(&ex));
            info.classification = Some(
                ex.report().into_iter().map(|(degree, c)| ClassEntry { degree, label: c.label() }).collect(),
            );
            report.sets = Some(info);
        }
        Command::Hilbert => {
            let res = ctx.resolution()?;
            let ex = if ctx.dim3_toric() { Some(apery_and_exceptional_sets(&ctx.sri)?.1) } else { None };
            report.series = Some(ctx.series_info(&res, ex.as_ref()));
        }
        Command::Reg => {
            let res = ctx.resolution()?;
            let mut info = RegularityInfo { from_resolution: None, surface: None, notes: Vec::new() };
            match regularity_from_resolution(&res.minimal) {
                Ok(r) => info.from_resolution = Some(r),
                Err(e) if !job.standard_graded => info.notes.push(e.to_string()),
                Err(e) => return Err(e.into()),
            }
            if ctx.dim3_toric() {
                let p = input.presentation().unwrap();
                match p.homogeneous_degree() {
                    Some(dd) => {
                        let (_, ex) = apery_and_exceptional_sets(&ctx.sri)?;
                        info.surface = Some(surface_regularity(&ex, Some(dd))?);
                    }
                    None => info.notes.push(Error::NotEquigenerated.to_string()),
                }
            }
            report.regularity = Some(info);
        }
        Command::Check => {
            report.checks = Some(run_checks(&ctx)?);
        }
    }
    Ok(report)
}

fn verdict(ok: bool, detail: impl Into<String>) -> (bool, String) {
    (ok, detail.into())
}

type CheckFn<'a> = Box<dyn Fn() -> (bool, String) + Sync + 'a>;

fn run_checks<K: Field>(ctx: &Ctx<'_, K>) -> Result<ChecksInfo, CliError> {
    let res = ctx.resolution()?;
    let res = &res;
    let sri = &ctx.sri;
    let seed = ctx.job.seed;
    let bound = ctx.job.bound;
    let unit = ctx.unit;
    let mut checks: Vec<(&str, CheckFn<'_>)> = Vec::new();

    checks.push((
        "complex",
        Box::new(move || {
            let ok = res.schreyer.check_complex() && res.minimal.check_complex();
            verdict(ok, "consecutive differentials compose to zero")
        }),
    ));
    checks.push((
        "homogeneity",
        Box::new(move || {
            let ok = res.schreyer.check_homogeneous() && res.minimal.check_homogeneous();
            verdict(ok, "every differential entry has the degree of its position")
        }),
    ));
    checks.push((
        "augmentation",
        Box::new(move || {
            verdict(check_augmentation(sri, &res.schreyer) && check_augmentation(sri, &res.minimal), "first differential lands in I")
        }),
    ));
    checks.push((
        "numerators",
        Box::new(move || {
            let a = hilbert_series_numerator(&res.schreyer);
            let b = hilbert_series_numerator(&res.minimal);
            let m = multiplicity(&res.minimal);
            let ok = a == b && b.iter().sum::<i64>() == m && multiplicity(&res.schreyer) == m;
            verdict(ok, format!("Schreyer and minimal numerators agree, multiplicity {m}"))
        }),
    ));
    checks.push((
        "hilbert-function",
        Box::new(move || {
            let raw = bound * unit;
            let w = sri.weights().weights();
            let hf = standard_monomial_counts(&sri.initial_ideal(), w, raw);
            let alt = alternating_hilbert_sum(&hf, &w[sri.n() - sri.d()..], raw as usize);
            let mut num = hilbert_series_numerator(&res.minimal);
            num.resize(num.len().max(raw as usize + 1), 0);
            let ok = alt.iter().zip(&num).all(|(a, b)| a == b);
            verdict(ok, format!("alternating sums of standard monomial counts match the numerator up to degree {bound}"))
        }),
    ));
    checks.push((
        "ideal-membership",
        Box::new(move || {
            let ring = sri.ring();
            let gb = sri.groebner_basis();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ok = true;
            for _ in 0..32 {
                if gb.is_empty() {
                    break;
                }
                let g = &gb.elements()[rng.gen_range(0..gb.len())];
                let m = Monomial::new((0..sri.n()).map(|_| rng.gen_range(0..3)).collect());
                let f = ring.mul_term(g, &ring.field().from_i64(rng.gen_range(1..100)), &m);
                ok &= gb.contains(&f);
            }
            verdict(ok, "random multiples of basis elements reduce to zero")
        }),
    ));
    if let Some(p) = ctx.input.presentation() {
        checks.push((
            "toric-binomials",
            Box::new(move || {
                let ok = sri.groebner_basis().elements().iter().all(|g| is_homogeneous_binomial(g, p));
                verdict(ok, "every basis element is a binomial with equal multidegrees")
            }),
        ));
        checks.push((
            "semigroup-membership",
            Box::new(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
                let gb = sri.groebner_basis();
                let n = p.n();
                let mut ok = true;
                for _ in 0..24 {
                    let beta = Monomial::new((0..n).map(|_| rng.gen_range(0..3)).collect());
                    let mut g = vec![0u32; n];
                    g[rng.gen_range(0..n)] = 1;
                    g[rng.gen_range(0..n)] += 1;
                    let gamma = Monomial::new(g);
                    let b = multidegree(beta.exps(), p).unwrap();
                    let c = multidegree(gamma.exps(), p).unwrap();
                    let brute = b.iter().zip(&c).all(|(x, y)| x >= y)
                        && semigroup_factorization(&b.iter().zip(&c).map(|(x, y)| x - y).collect::<Vec<_>>(), p).is_some();
                    ok &= semigroup_contains(gb, &beta, &gamma) == brute;
                }
                verdict(ok, "membership through the ideal agrees with factorization search")
            }),
        ));
    }
    if ctx.dim3_toric() {
        let p = ctx.input.presentation().unwrap();
        checks.push((
            "pruning",
            Box::new(move || {
                let run = || -> noetherres_core::Result<(bool, String)> {
                    let sets = schreyer_sets_dim3(sri)?;
                    let pr = prune_dim3(sri, &sets)?;
                    let degs = |ms: &[Monomial]| {
                        let mut v: Vec<[u64; 3]> = ms.iter().map(|m| s_degree(m, p).unwrap()).collect();
                        v.sort();
                        v
                    };
                    let level = |l: &[Vec<Monomial>], i: usize| l.get(i).cloned().unwrap_or_default();
                    let min = res.minimal.labels();
                    let sch = res.schreyer.labels();
                    let ok = degs(&pr.b1) == degs(&level(min, 1))
                        && degs(&pr.b2) == degs(&level(min, 2))
                        && degs(&sets.b1prime) == degs(&level(sch, 1))
                        && degs(&sets.b2prime) == degs(&level(sch, 2))
                        && sets.b1prime.len() - pr.b1.len() == sets.b2prime.len() - pr.b2.len()
                        && sets.b1prime.iter().filter(|m| !pr.b1.contains(m)).all(|m| pr.c.contains(m));
                    Ok((ok, format!("pruned sets B1 ({}), B2 ({}) match minimalization", pr.b1.len(), pr.b2.len())))
                };
                run().unwrap_or_else(|e| (false, e.to_string()))
            }),
        ));
        checks.push((
            "face-patterns",
            Box::new(move || {
                let run = || -> noetherres_core::Result<(bool, String)> {
                    let (sets, ex) = apery_and_exceptional_sets(sri)?;
                    let oracle = MembershipOracle::new(sri.groebner_basis(), p)?;
                    let mut ok = sets.c1.iter().all(|m| {
                        let f = oracle.pattern(m);
                        f.singles == [true; 3] && f.pairs[1] && !f.pairs[2]
                    });
                    ok &= sets.c2.iter().all(|m| {
                        let f = oracle.pattern(m);
                        f.singles[1] && f.singles[2] && !f.pairs[2]
                    });
                    ok &= sets.b2prime.iter().filter(|m| !sets.b2.contains(m)).all(|m| !oracle.pattern(m).triple);
                    let distinct: std::collections::BTreeSet<_> =
                        sets.b2prime.iter().map(|m| s_degree(m, p).unwrap()).collect();
                    ok &= distinct.len() == sets.b2prime.len();
                    let s1 = ex.first_syzygy_degrees();
                    let mut b1: Vec<[u64; 3]> = sets.b1.iter().map(|m| s_degree(m, p).unwrap()).collect();
                    b1.sort();
                    ok &= s1 == b1;
                    Ok((ok, String::from("C1, C2 and pruned B2' degrees have the expected configurations")))
                };
                run().unwrap_or_else(|e| (false, e.to_string()))
            }),
        ));
        checks.push((
            "multigraded-series",
            Box::new(move || {
                let run = || -> noetherres_core::Result<(bool, String)> {
                    let (_, ex) = apery_and_exceptional_sets(sri)?;
                    let num = multigraded_hilbert_numerator(&ex);
                    let reach = semigroup_box(p, bound);
                    let e = p.extremal_scales();
                    let mut ok = true;
                    let mut coeff: BTreeMap<[u64; 3], i64> = BTreeMap::new();
                    for (s, v) in &num {
                        let mut k = [0u64; 3];
                        // expand the numerator against the geometric series
                        while s[0] + k[0] <= bound {
                            k[1] = 0;
                            while s[1] + k[1] <= bound {
                                k[2] = 0;
                                while s[2] + k[2] <= bound {
                                    *coeff.entry([s[0] + k[0], s[1] + k[1], s[2] + k[2]]).or_insert(0) += v;
                                    k[2] += e[2] as u64;
                                }
                                k[1] += e[1] as u64;
                            }
                            k[0] += e[0] as u64;
                        }
                    }
                    coeff.retain(|_, c| *c != 0);
                    ok &= coeff.values().all(|&c| c == 1);
                    let keys: std::collections::BTreeSet<Vec<u64>> = coeff.keys().map(|k| k.to_vec()).collect();
                    ok &= keys == reach;
                    Ok((ok, format!("multigraded series matches semigroup enumeration up to coordinate {bound}")))
                };
                run().unwrap_or_else(|e| (false, e.to_string()))
            }),
        ));
        if let Some(dd) = p.homogeneous_degree() {
            checks.push((
                "surface-regularity",
                Box::new(move || {
                    let run = || -> noetherres_core::Result<(bool, String)> {
                        let (_, ex) = apery_and_exceptional_sets(sri)?;
                        let a = surface_regularity(&ex, Some(dd))?;
                        let b = regularity_from_resolution(&res.minimal)?;
                        Ok((a == b, format!("regularity {a} from the sets, {b} from the resolution")))
                    };
                    run().unwrap_or_else(|e| (false, e.to_string()))
                }),
            ));
            checks.push((
                "apery-levels",
                Box::new(move || {
                    let run = || -> noetherres_core::Result<(bool, String)> {
                        let (_, ex) = apery_and_exceptional_sets(sri)?;
                        let top = ex.ap.iter().map(|s| (s[0] + s[1] + s[2]) / dd).max().unwrap_or(0) + 3;
                        let mut ok = true;
                        for s in 0..=top {
                            ok &= count_at_level(&ex.ap, s, dd) as i64 == apery_level_prediction(p, &ex, s)?;
                        }
                        ok &= sumset_size(p, 0)? == 1;
                        Ok((ok, format!("Apery set sizes per level match sumset counts for s <= {top}")))
                    };
                    run().unwrap_or_else(|e| (false, e.to_string()))
                }),
            ));
        }
    }

    let results = parallel_map(&checks, worker_count(), |(name, f)| {
        let (passed, detail) = f();
        CheckResult { name: name.to_string(), passed, detail }
    });
    Ok(ChecksInfo { seed, results })
}
