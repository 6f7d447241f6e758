//! Exhaustive census of degree-3 maps `f / g` with `f`, `g` monic and coprime.
//!
//! This population is narrower than the normal form used by
//! [`RatFunc`](crate::projfunc::RatFunc): there the numerator may carry any
//! leading coefficient. Every degree-3 map is `c f / g` for exactly one
//! `c != 0` and one monic pair, so the full population has `(q - 1) N_q`
//! permutations.

use std::collections::{HashMap, VecDeque};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cubicperm::{self, CanonForm, Classifier, CubicError, Mode};
use crate::gf::{prime_power, Elem, Field, GfError};
use crate::polyring::{Poly, PolyRing};
use crate::projfunc::{format_ratfunc, Mobius, RatFunc, Side};

/// Shapes `(deg f, deg g)` enumerated, in output order.
pub const SHAPES: [(usize, usize); 7] = [(3, 3), (3, 2), (3, 1), (3, 0), (2, 3), (1, 3), (0, 3)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("{what} is limited to q <= {max}, got q = {q}")]
    Guard { what: &'static str, q: u32, max: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("thread pool: {0}")]
    Threads(String),
    #[error(transparent)]
    Cubic(#[from] CubicError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Runtime guards and parallelism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    pub brute_max_q: u32,
    pub criterion_max_q: u32,
    pub classes_max_q: u32,
    pub complete_max_q: u32,
    /// `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for CensusConfig {
    fn default() -> CensusConfig {
        CensusConfig { brute_max_q: 11, criterion_max_q: 64, classes_max_q: 9, complete_max_q: 9, threads: None }
    }
}

impl CensusConfig {
    fn guard(&self, what: &'static str, q: u32, max: u32) -> Result<(), CensusError> {
        if q > max {
            return Err(CensusError::Guard { what, q, max });
        }
        Ok(())
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T, CensusError> {
        match self.threads {
            None => Ok(job()),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map(|pool| pool.install(job))
                .map_err(|e| CensusError::Threads(e.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Brute,
    Criterion,
}

impl std::str::FromStr for CountMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<CountMethod, String> {
        match s {
            "brute" => Ok(CountMethod::Brute),
            "criterion" => Ok(CountMethod::Criterion),
            other => Err(format!("unknown count method {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub q: u32,
    pub shape: (usize, usize),
    pub total_pairs: u64,
    pub permutations: u64,
    pub method: CountMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub q: u32,
    pub rows: Vec<CensusRow>,
    pub n_q: u64,
    pub formula: u64,
    /// Permutations of shape (3,3) whose `x^2` coefficients differ.
    pub r33_prime: u64,
}

impl CensusReport {
    pub fn shape_count(&self, s: usize, t: usize) -> u64 {
        self.rows.iter().find(|r| r.shape == (s, t)).map_or(0, |r| r.permutations)
    }

    pub fn total_pairs(&self) -> u64 {
        self.rows.iter().map(|r| r.total_pairs).sum()
    }

    pub fn matches_formula(&self) -> bool {
        self.n_q == self.formula
    }

    /// One JSON object per row.
    pub fn write_json_lines(&self, out: &mut impl Write) -> std::io::Result<()> {
        for row in &self.rows {
            writeln!(out, "{}", serde_json::to_string(row).expect("row serializes"))?;
        }
        Ok(())
    }
}

/// `q,n_q,formula,r33,r32,r30,r31`.
pub fn write_csv(reports: &[CensusReport], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "q,n_q,formula,r33,r32,r30,r31")?;
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.q,
            r.n_q,
            r.formula,
            r.shape_count(3, 3),
            r.shape_count(3, 2),
            r.shape_count(3, 0),
            r.shape_count(3, 1)
        )?;
    }
    Ok(())
}

/// The field of order `q` with its default modulus.
pub fn field_of_order(q: u64) -> Result<Field, CensusError> {
    let (p, k) = prime_power(q).ok_or(CensusError::NotPrimePower(q))?;
    Ok(Field::new(p, k, None)?)
}

/// `N_q` from the closed formulas, by `q mod 3`.
pub fn formula_nq(q: u64) -> Result<u64, CensusError> {
    prime_power(q).ok_or(CensusError::NotPrimePower(q))?;
    let q = q as i128;
    let twice = match q % 3 {
        0 => q.pow(4) + q.pow(3) + q * q + q,
        m => q.pow(4) + 2 * (m - 1) * q.pow(3) + (2 * m - 3) * q * q,
    };
    Ok((twice / 2) as u64)
}

/// `|R_{3,0}|`: monic cubic permutation polynomials.
pub fn formula_r30(q: u64) -> u64 {
    match q % 3 {
        0 => (q * q + q) / 2,
        m => (m - 1) * q * q,
    }
}

/// `|R_{3,2}| = q^2 (q - 1) / 2`.
pub fn formula_r32(q: u64) -> u64 {
    q * q * (q - 1) / 2
}

/// All monic polynomials of degree `d`, in enumeration order of the lower
/// coefficients.
pub fn monic_polys(field: &Field, d: usize) -> Vec<Poly> {
    let q = field.order() as usize;
    (0..q.pow(d as u32))
        .map(|mut idx| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(field.elem((idx % q) as u32));
                idx /= q;
            }
            coeffs.push(field.one());
            Poly::from_coeffs(coeffs)
        })
        .collect()
}

/// Every coprime monic pair of each shape, each exactly once.
pub fn enumerate_pairs(field: &Field) -> impl Iterator<Item = (Poly, Poly)> + '_ {
    let ring = PolyRing::new(field);
    SHAPES.iter().flat_map(move |&(s, t)| {
        let gs = monic_polys(field, t);
        let ring = ring.clone();
        monic_polys(field, s).into_iter().flat_map(move |f| {
            let ring = ring.clone();
            gs.iter().filter(|g| coprime(&ring, &f, g)).map(|g| (f.clone(), g.clone())).collect::<Vec<_>>()
        })
    })
}

fn coprime(ring: &PolyRing, f: &Poly, g: &Poly) -> bool {
    ring.gcd_monic(f, g).map(|d| d.degree() == Some(0)).unwrap_or(false)
}

/// Values of each polynomial on `F_q`, as element indices.
struct ValueTable {
    polys: Vec<Poly>,
    values: Vec<Vec<u32>>,
}

impl ValueTable {
    fn new(field: &Field, d: usize) -> ValueTable {
        let ring = PolyRing::new(field);
        let polys = monic_polys(field, d);
        let values = polys
            .iter()
            .map(|p| field.elements().map(|x| ring.eval(p, x).value()).collect())
            .collect();
        ValueTable { polys, values }
    }
}

/// Permutation test from value vectors; `f` and `g` are monic.
fn permutes_from_values(field: &Field, fv: &[u32], gv: &[u32], s: usize, t: usize, seen: &mut [bool]) -> bool {
    let q = field.order();
    seen.iter_mut().for_each(|b| *b = false);
    let at_infinity = match s.cmp(&t) {
        std::cmp::Ordering::Greater => q,
        std::cmp::Ordering::Equal => field.one().value(),
        std::cmp::Ordering::Less => 0,
    };
    seen[at_infinity as usize] = true;
    for (&a, &b) in fv.iter().zip(gv) {
        let v = if b == 0 { q } else { field.div(field.elem(a), field.elem(b)).value() };
        if std::mem::replace(&mut seen[v as usize], true) {
            return false;
        }
    }
    true
}

/// Per-shape result for one `f`.
#[derive(Default, Clone, Copy)]
struct Tally {
    pairs: u64,
    perms: u64,
    r33_prime: u64,
}

impl std::ops::Add for Tally {
    type Output = Tally;

    fn add(self, o: Tally) -> Tally {
        Tally { pairs: self.pairs + o.pairs, perms: self.perms + o.perms, r33_prime: self.r33_prime + o.r33_prime }
    }
}

/// Calls `visit(f, g, permutes)` for every coprime pair of shape `(s, t)`,
/// partitioned over `f`, and sums the returned tallies.
fn scan_shape<F>(field: &Field, s: usize, t: usize, visit: F) -> Result<Tally, CubicError>
where
    F: Fn(&Poly, &Poly, bool) -> Result<Tally, CubicError> + Sync,
{
    let ft = ValueTable::new(field, s);
    let gt = ValueTable::new(field, t);
    let q = field.order() as usize;
    (0..ft.polys.len())
        .into_par_iter()
        .map(|i| {
            let ring = PolyRing::new(field);
            let mut seen = vec![false; q + 1];
            let f = &ft.polys[i];
            let mut acc = Tally::default();
            for (g, gv) in gt.polys.iter().zip(&gt.values) {
                if !coprime(&ring, f, g) {
                    continue;
                }
                let permutes = permutes_from_values(field, &ft.values[i], gv, s, t, &mut seen);
                acc = acc + visit(f, g, permutes)?;
            }
            Ok(acc)
        })
        .try_reduce(Tally::default, |a, b| Ok(a + b))
}

/// `N_q` with per-shape counts.
pub fn count_permutations(field: &Field, method: CountMethod, config: &CensusConfig) -> Result<CensusReport, CensusError> {
    let q = field.order();
    match method {
        CountMethod::Brute => config.guard("brute-force census", q, config.brute_max_q)?,
        CountMethod::Criterion => config.guard("criterion census", q, config.criterion_max_q)?,
    }
    let classifier = Classifier::new(field)?;
    let mut rows = Vec::new();
    let mut r33_prime = 0;
    for &(s, t) in &SHAPES {
        let tally = config.run(|| {
            scan_shape(field, s, t, |f, g, brute| {
                let perm = match method {
                    CountMethod::Brute => brute,
                    CountMethod::Criterion => {
                        let phi = RatFunc::new(field, f.clone(), g.clone()).map_err(CubicError::from)?;
                        classifier.decide(&phi, Mode::Criterion)?.0
                    }
                };
                let prime = perm && (s, t) == (3, 3) && f.coeffs()[2] != g.coeffs()[2];
                Ok(Tally { pairs: 1, perms: perm as u64, r33_prime: prime as u64 })
            })
        })??;
        r33_prime += tally.r33_prime;
        rows.push(CensusRow { q, shape: (s, t), total_pairs: tally.pairs, permutations: tally.perms, method });
    }
    let n_q = rows.iter().map(|r| r.permutations).sum();
    Ok(CensusReport { q, rows, n_q, formula: formula_nq(q as u64)?, r33_prime })
}

/// Agreement of the criterion with brute force over every enumerated pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crosscheck {
    pub pairs: u64,
    pub permutations: u64,
    pub disagreements: Vec<String>,
}

pub fn crosscheck_census(field: &Field, config: &CensusConfig) -> Result<Crosscheck, CensusError> {
    let q = field.order();
    config.guard("crosscheck census", q, config.brute_max_q)?;
    let classifier = Classifier::new(field)?;
    let mut out = Crosscheck { pairs: 0, permutations: 0, disagreements: Vec::new() };
    for &(s, t) in &SHAPES {
        let bad = std::sync::Mutex::new(Vec::new());
        let tally = config.run(|| {
            scan_shape(field, s, t, |f, g, brute| {
                let phi = RatFunc::new(field, f.clone(), g.clone()).map_err(CubicError::from)?;
                let (crit, _, _) = classifier.decide(&phi, Mode::Criterion)?;
                if crit != brute {
                    bad.lock().unwrap().push(phi.to_string());
                }
                Ok(Tally { pairs: 1, perms: brute as u64, r33_prime: 0 })
            })
        })??;
        out.pairs += tally.pairs;
        out.permutations += tally.perms;
        let mut bad = bad.into_inner().unwrap();
        bad.sort();
        out.disagreements.extend(bad);
    }
    Ok(out)
}

/// The monic-pair permutations in normal form, in enumeration order.
pub fn permutation_population(field: &Field, config: &CensusConfig) -> Result<Vec<RatFunc>, CensusError> {
    config.guard("permutation population", field.order(), config.brute_max_q)?;
    let mut out = Vec::new();
    for &(s, t) in &SHAPES {
        let ft = ValueTable::new(field, s);
        let gt = ValueTable::new(field, t);
        let ring = PolyRing::new(field);
        let mut seen = vec![false; field.order() as usize + 1];
        for (f, fv) in ft.polys.iter().zip(&ft.values) {
            for (g, gv) in gt.polys.iter().zip(&gt.values) {
                if coprime(&ring, f, g) && permutes_from_values(field, fv, gv, s, t, &mut seen) {
                    out.push(RatFunc::new(field, f.clone(), g.clone()).map_err(CubicError::from)?);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub size: usize,
    /// Least member under (numerator, denominator) coefficient order.
    pub representative: RatFunc,
    pub canon: CanonForm,
    /// `m1 ∘ representative ∘ m2` is the canonical representative.
    pub witnesses: (Mobius, Mobius),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTable {
    pub q: u32,
    pub orbits: Vec<Orbit>,
    /// Number of degree-3 permutations in the normal form, `(q - 1) N_q`.
    pub population: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub size: usize,
    pub representative: String,
    pub canon: String,
    pub canonical_representative: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTableJson {
    pub q: u32,
    pub classes: usize,
    pub population: usize,
    pub orbits: Vec<OrbitJson>,
}

impl OrbitTable {
    pub fn class_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn to_json(&self, field: &Field) -> OrbitTableJson {
        OrbitTableJson {
            q: self.q,
            classes: self.orbits.len(),
            population: self.population,
            orbits: self
                .orbits
                .iter()
                .map(|o| OrbitJson {
                    size: o.size,
                    representative: format_ratfunc(&o.representative),
                    canon: o.canon.tag().to_string(),
                    canonical_representative: format_ratfunc(&o.canon.representative(field)),
                })
                .collect(),
        }
    }
}

fn orbit_key(phi: &RatFunc) -> impl Ord {
    struct Key(Poly, Poly);
    impl PartialEq for Key {
        fn eq(&self, o: &Key) -> bool {
            self.cmp(o) == std::cmp::Ordering::Equal
        }
    }
    impl Eq for Key {}
    impl PartialOrd for Key {
        fn partial_cmp(&self, o: &Key) -> Option<std::cmp::Ordering> {
            Some(self.cmp(o))
        }
    }
    impl Ord for Key {
        fn cmp(&self, o: &Key) -> std::cmp::Ordering {
            self.0.cmp_canonical(&o.0).then_with(|| self.1.cmp_canonical(&o.1))
        }
    }
    Key(phi.num().clone(), phi.den().clone())
}

/// Generators of the Möbius group: translations, scalings and `1/x`.
pub fn mobius_generators(field: &Field) -> Vec<Mobius> {
    let mut gens: Vec<Mobius> = field.elements().skip(1).map(|c| Mobius::translate(field, c)).collect();
    gens.extend(field.elements().skip(2).map(|c| Mobius::scale(field, c).expect("nonzero")));
    gens.push(Mobius::reciprocal(field));
    gens
}

/// Orbits of the two-sided Möbius action on degree-3 permutations.
pub fn equivalence_classes(field: &Field, config: &CensusConfig) -> Result<OrbitTable, CensusError> {
    let q = field.order();
    config.guard("equivalence classes", q, config.classes_max_q)?;
    let seeds = permutation_population(field, config)?;
    let gens = mobius_generators(field);
    let classifier = Classifier::new(field)?;
    let mut orbit_of: HashMap<RatFunc, usize> = HashMap::new();
    let mut orbits = Vec::new();
    for seed in seeds {
        if orbit_of.contains_key(&seed) {
            continue;
        }
        let id = orbits.len();
        let mut queue = VecDeque::from([seed.clone()]);
        orbit_of.insert(seed.clone(), id);
        let mut size = 0;
        let mut least = seed;
        while let Some(phi) = queue.pop_front() {
            size += 1;
            if orbit_key(&phi) < orbit_key(&least) {
                least = phi.clone();
            }
            for m in &gens {
                for side in [Side::Left, Side::Right] {
                    let next = phi.compose(m, side);
                    if !orbit_of.contains_key(&next) {
                        orbit_of.insert(next.clone(), id);
                        queue.push_back(next);
                    }
                }
            }
        }
        let (canon, m1, m2) = classifier.canonical_witnesses(&least)?;
        orbits.push(Orbit { size, representative: least, canon, witnesses: (m1, m2) });
    }
    orbits.sort_by_key(|a| orbit_key(&a.representative));
    Ok(OrbitTable { q, orbits, population: orbit_of.len() })
}

/// Monic-pair permutations `phi` with `phi + x` also a permutation.
pub fn complete_census(field: &Field, config: &CensusConfig) -> Result<Vec<RatFunc>, CensusError> {
    config.guard("complete census", field.order(), config.complete_max_q)?;
    Ok(permutation_population(field, config)?.into_iter().filter(cubicperm::is_complete).collect())
}

/// `x^3 + b x + c` with each of `-b`, `-(b + 1)` zero or a non-square, when
/// `3 | q`; empty otherwise.
pub fn predicted_complete(field: &Field) -> Vec<RatFunc> {
    if field.characteristic() != 3 {
        return Vec::new();
    }
    let ok = |a: Elem| a.value() == 0 || !field.is_square(a);
    let mut out = Vec::new();
    for b in field.elements() {
        if !ok(field.neg(b)) || !ok(field.neg(field.add(b, field.one()))) {
            continue;
        }
        for c in field.elements() {
            let f = Poly::from_coeffs(vec![c, b, field.zero(), field.one()]);
            out.push(RatFunc::from_poly(field, f).expect("nonzero"));
        }
    }
    out
}
