//! Degree-3 permutation rational functions.
//!
//! Decides whether a cubic rational map permutes the projective line, either
//! by brute force or through the Galois-theoretic criteria on the pencil
//! `f - t g`, and moves permutations onto a fixed representative of their
//! equivalence class with explicit Möbius witnesses.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Elem, ExtCtx, Field, GfError};
use crate::polyring::{
    bounded_poly_root, const_square_decompose, cubic_discriminant, Poly, PolyError, PolyRing,
};
use crate::projfunc::{Mobius, ProjError, RatFunc, Side};
use crate::ring::Ring;

/// Below this order `Mode::Auto` uses brute force.
pub const CRITERION_THRESHOLD: u32 = 13;
/// Largest `q^n` accepted by [`extension_permutation`] in verify mode.
pub const EXTENSION_LIMIT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicError {
    #[error("expected a rational function of degree 3, got degree {0}")]
    Degree(usize),
    #[error("operation needs {0}")]
    Characteristic(&'static str),
    #[error("criterion needs a separable function")]
    Inseparable,
    #[error("function does not permute the projective line")]
    NotPermutation,
    #[error("crosscheck disagreement: criterion says {criterion}, brute force says {brute}")]
    Disagreement { criterion: bool, brute: bool },
    #[error("{0}")]
    OutOfScope(&'static str),
    #[error("extension of order {0} exceeds the limit {EXTENSION_LIMIT}")]
    TooLarge(u64),
    #[error("input is not normalized: {0}")]
    NotNormalized(&'static str),
    #[error("canonicalization failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// `(B, C)` with `x^2 + B x + C` the quadratic resolvent of `x^3 + a x^2 + b x + c`.
pub fn quadratic_resolvent<R: Ring>(r: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem) -> (R::Elem, R::Elem) {
    let ab = r.mul(a, b);
    let big_b = r.sub(&ab, &r.scale_int(3, c));
    let terms = [
        r.mul(&r.pow(a, 3), c),
        r.pow(b, 3),
        r.scale_int(9, &r.mul(c, c)),
        r.scale_int(-6, &r.mul(&ab, c)),
    ];
    let big_c = terms.iter().fold(r.zero(), |acc, t| r.add(&acc, t));
    (big_b, big_c)
}

/// `f - t g` as the monic cubic `x^3 + c2 x^2 + c1 x + c0` over `F_q[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilCubic {
    pub c2: Poly,
    pub c1: Poly,
    pub c0: Poly,
}

impl PencilCubic {
    /// Requires `f` monic of degree 3 and `deg g <= 2`.
    pub fn from_pair(field: &Field, f: &Poly, g: &Poly) -> Result<PencilCubic, CubicError> {
        if f.degree() != Some(3) || f.lc() != Some(field.one()) {
            return Err(CubicError::NotNormalized("numerator must be monic of degree 3"));
        }
        if g.degree().is_none_or(|d| d > 2) {
            return Err(CubicError::NotNormalized("denominator must be nonzero of degree at most 2"));
        }
        let ring = PolyRing::new(field);
        let coeff = |i| Poly::from_coeffs(vec![ring.coeff(f, i), field.neg(ring.coeff(g, i))]);
        Ok(PencilCubic { c2: coeff(2), c1: coeff(1), c0: coeff(0) })
    }

    pub fn discriminant(&self, ring: &PolyRing) -> Poly {
        cubic_discriminant(ring, &ring.one(), &self.c2, &self.c1, &self.c0)
    }

    pub fn resolvent(&self, ring: &PolyRing) -> (Poly, Poly) {
        quadratic_resolvent(ring, &self.c2, &self.c1, &self.c0)
    }
}

/// Result of bringing a cubic map into pencil shape by left moves.
#[derive(Clone, Debug)]
pub enum PencilBuild {
    /// `left ∘ phi = normalized` with numerator monic of degree 3 and
    /// denominator of degree 0 or 2.
    Pencil { pencil: PencilCubic, normalized: RatFunc, left: Mobius },
    /// The normalized denominator is linear: infinity has two preimages.
    PoleObstruction { pole: Elem },
}

/// Left moves giving numerator monic of degree 3 and denominator of degree at
/// most 2 (possibly 1).
fn normalize(phi: &RatFunc) -> Result<(RatFunc, Mobius), CubicError> {
    if phi.degree() != 3 {
        return Err(CubicError::Degree(phi.degree()));
    }
    let f = phi.field();
    let mut cur = phi.clone();
    let mut left = Mobius::identity(f);
    let mut apply = |cur: &mut RatFunc, m: Mobius| {
        *cur = cur.compose(&m, Side::Left);
        left = m.compose(&left);
    };
    if cur.num().degree() != Some(3) {
        apply(&mut cur, Mobius::reciprocal(f));
    }
    if cur.den().degree() == Some(3) {
        let lambda = f.div(cur.num().lc().unwrap(), cur.den().lc().unwrap());
        apply(&mut cur, Mobius::new(f, f.one(), f.zero(), f.one(), f.neg(lambda))?);
    }
    let lc = cur.num().lc().unwrap();
    if lc != f.one() {
        apply(&mut cur, Mobius::scale(f, f.inv(lc))?);
    }
    Ok((cur, left))
}

pub fn build_pencil(phi: &RatFunc) -> Result<PencilBuild, CubicError> {
    let (normalized, left) = normalize(phi)?;
    let f = phi.field();
    if normalized.den().degree() == Some(1) {
        let pole = f.neg(normalized.den().coeffs()[0]);
        return Ok(PencilBuild::PoleObstruction { pole });
    }
    let pencil = PencilCubic::from_pair(f, normalized.num(), normalized.den())?;
    Ok(PencilBuild::Pencil { pencil, normalized, left })
}

/// Discriminant of `f - t g` over `F_q[t]` after normalization.
pub fn pencil_discriminant(phi: &RatFunc) -> Result<Poly, CubicError> {
    let f = phi.field();
    if !f.is_odd() {
        return Err(CubicError::Characteristic("odd characteristic"));
    }
    let (normalized, _) = normalize(phi)?;
    let pencil = PencilCubic::from_pair(f, normalized.num(), normalized.den())?;
    Ok(pencil.discriminant(&PolyRing::new(f)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Pencil discriminant and its decomposition `u * r^2`, if any.
    Discriminant { delta: Poly, decomposition: Option<(Elem, Poly)> },
    /// Resolvent `x^2 + B x + C` over `F_q[t]` with its polynomial roots over
    /// `F_q` and over `F_{q^2}`.
    Resolvent { b: Poly, c: Poly, base_roots: Vec<Poly>, ext_roots: Vec<Poly> },
    /// Denominator with a single root while infinity is fixed.
    PoleObstruction { pole: Elem },
    /// Numerator and denominator are polynomials in `x^3`.
    Inseparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Auto,
    Criterion,
    Brute,
    Crosscheck,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "auto" => Ok(Mode::Auto),
            "criterion" => Ok(Mode::Criterion),
            "brute" => Ok(Mode::Brute),
            "crosscheck" => Ok(Mode::Crosscheck),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Brute,
    Criterion,
    Crosscheck,
    Inseparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Permutation,
    NotPermutation,
}

/// Fixed class representatives, one family per residue of `q` mod 6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonForm {
    /// `(x^3 + a x) / (b x^2 + 1)`, `ab = 9`, `-b` a non-square.
    OddFractional { a: Elem, b: Elem },
    /// `x^3` in characteristic 3 (inseparable class).
    Char3Cube,
    /// `x^3 + a x`, `-a` a non-square.
    Char3Linearized { a: Elem },
    /// `(x^3 + a2 x^2 + a1 x) / (x^2 + x + b0)`, `Tr(b0) = 1`,
    /// `a1 = b0 + 1/b0`, `a2 = 1 + 1/b0`.
    EvenFractional { b0: Elem },
    /// `x^3` with `q = 2 mod 3`.
    Cube,
}

impl CanonForm {
    pub fn tag(&self) -> &'static str {
        match self {
            CanonForm::OddFractional { .. } => "odd_fractional",
            CanonForm::Char3Cube => "char3_cube",
            CanonForm::Char3Linearized { .. } => "char3_linearized",
            CanonForm::EvenFractional { .. } => "even_fractional",
            CanonForm::Cube => "cube",
        }
    }

    pub fn params(&self) -> Vec<Elem> {
        match *self {
            CanonForm::OddFractional { a, b } => vec![a, b],
            CanonForm::Char3Linearized { a } => vec![a],
            CanonForm::EvenFractional { b0 } => vec![b0],
            CanonForm::Char3Cube | CanonForm::Cube => vec![],
        }
    }

    pub fn representative(&self, f: &Field) -> RatFunc {
        let (z, o) = (f.zero(), f.one());
        let (num, den) = match *self {
            CanonForm::OddFractional { a, b } => (vec![z, a, z, o], vec![o, z, b]),
            CanonForm::Char3Cube | CanonForm::Cube => (vec![z, z, z, o], vec![o]),
            CanonForm::Char3Linearized { a } => (vec![z, a, z, o], vec![o]),
            CanonForm::EvenFractional { b0 } => {
                let (a1, a2) = even_family_coeffs(f, b0);
                (vec![z, a1, a2, o], vec![b0, o, o])
            }
        };
        RatFunc::new(f, Poly::from_coeffs(num), Poly::from_coeffs(den)).expect("coprime representative")
    }
}

/// `(a1, a2) = (b0 + 1/b0, 1 + 1/b0)`.
pub fn even_family_coeffs(f: &Field, b0: Elem) -> (Elem, Elem) {
    let inv = f.inv(b0);
    (f.add(b0, inv), f.add(f.one(), inv))
}

fn is_nonsquare(f: &Field, a: Elem) -> bool {
    !f.is_square(a)
}

/// First `b` in enumeration order with `-b` a non-square.
pub fn first_neg_nonsquare(f: &Field) -> Option<Elem> {
    f.elements().find(|&b| is_nonsquare(f, f.neg(b)))
}

/// First element of absolute trace 1.
pub fn first_trace_one(f: &Field) -> Option<Elem> {
    f.elements().find(|&b| f.abs_trace2(b) == Ok(1))
}

/// The class representatives for `q`, in a fixed order.
pub fn table_representatives(f: &Field) -> Vec<CanonForm> {
    match f.order() % 6 {
        1 => {
            let b = first_neg_nonsquare(f).expect("odd field");
            vec![CanonForm::OddFractional { a: f.div(f.from_int(9), b), b }]
        }
        2 | 5 => vec![CanonForm::Cube],
        3 => vec![
            CanonForm::Char3Cube,
            CanonForm::Char3Linearized { a: first_neg_nonsquare(f).expect("odd field") },
        ],
        _ => vec![CanonForm::EvenFractional { b0: first_trace_one(f).expect("even field") }],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub verdict: Verdict,
    pub separable: bool,
    pub method: Method,
    pub canon: Option<CanonForm>,
    /// `(m1, m2)` with `m1 ∘ phi ∘ m2` equal to the representative.
    pub witnesses: Option<(Mobius, Mobius)>,
    pub evidence: Option<Evidence>,
}

impl ClassReport {
    pub fn is_permutation(&self) -> bool {
        self.verdict == Verdict::Permutation
    }
}

/// Holds the quadratic extension needed by the characteristic-2 criterion.
#[derive(Clone, Debug)]
pub struct Classifier {
    field: Field,
    ext: Option<ExtCtx>,
}

impl Classifier {
    pub fn new(field: &Field) -> Result<Classifier, CubicError> {
        let ext = if field.is_odd() { None } else { Some(ExtCtx::new(field, 2)?) };
        Ok(Classifier { field: field.clone(), ext })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn check_field(&self, phi: &RatFunc) -> Result<(), CubicError> {
        if phi.field() != &self.field {
            return Err(CubicError::Proj(ProjError::ContextMismatch));
        }
        Ok(())
    }

    /// Verdict of the criterion appropriate to the characteristic.
    pub fn criterion(&self, phi: &RatFunc) -> Result<(bool, Evidence), CubicError> {
        if self.field.is_odd() {
            criterion_odd(phi)
        } else {
            self.criterion_even(phi)
        }
    }

    /// The resolvent of the pencil is irreducible over `F_q(t)` and splits
    /// over `F_{q^2}(t)`, with `B != 0`.
    pub fn criterion_even(&self, phi: &RatFunc) -> Result<(bool, Evidence), CubicError> {
        self.check_field(phi)?;
        let ext = self.ext.as_ref().ok_or(CubicError::Characteristic("characteristic 2"))?;
        let (normalized, _) = normalize(phi)?;
        let f = &self.field;
        let pencil = PencilCubic::from_pair(f, normalized.num(), normalized.den())?;
        let ring = PolyRing::new(f);
        let (b, c) = pencil.resolvent(&ring);
        let base_roots = bounded_poly_root(&ring, &b, &c, 2);
        let ext_ring = PolyRing::new(ext.field());
        let ext_roots =
            bounded_poly_root(&ext_ring, &ring.lift(ext, &b), &ring.lift(ext, &c), 2);
        let verdict = !b.is_zero() && base_roots.is_empty() && !ext_roots.is_empty();
        Ok((verdict, Evidence::Resolvent { b, c, base_roots, ext_roots }))
    }

    /// Verdict only, without canonical form or witnesses.
    pub fn decide(&self, phi: &RatFunc, mode: Mode) -> Result<(bool, Method, Option<Evidence>), CubicError> {
        self.check_field(phi)?;
        if phi.degree() != 3 {
            return Err(CubicError::Degree(phi.degree()));
        }
        if !phi.is_separable() {
            return Ok((inseparable_permutes(phi), Method::Inseparable, Some(Evidence::Inseparable)));
        }
        let use_brute = match mode {
            Mode::Brute => true,
            Mode::Auto => self.field.order() < CRITERION_THRESHOLD,
            Mode::Criterion | Mode::Crosscheck => false,
        };
        if use_brute {
            return Ok((phi.is_permutation_bruteforce(), Method::Brute, None));
        }
        let (crit, ev) = self.criterion(phi)?;
        if mode == Mode::Crosscheck {
            let brute = phi.is_permutation_bruteforce();
            if brute != crit {
                return Err(CubicError::Disagreement { criterion: crit, brute });
            }
            return Ok((crit, Method::Crosscheck, Some(ev)));
        }
        Ok((crit, Method::Criterion, Some(ev)))
    }

    pub fn is_permutation(&self, phi: &RatFunc, mode: Mode) -> Result<ClassReport, CubicError> {
        let (perm, method, evidence) = self.decide(phi, mode)?;
        let separable = method != Method::Inseparable;
        let evidence = match (perm, evidence) {
            (false, None) => match build_pencil(phi)? {
                PencilBuild::PoleObstruction { pole } => Some(Evidence::PoleObstruction { pole }),
                PencilBuild::Pencil { .. } => None,
            },
            (_, ev) => ev,
        };
        let (canon, witnesses) = if perm {
            let (canon, m1, m2) = self.canonical_witnesses(phi)?;
            (Some(canon), Some((m1, m2)))
        } else {
            (None, None)
        };
        Ok(ClassReport {
            verdict: if perm { Verdict::Permutation } else { Verdict::NotPermutation },
            separable,
            method,
            canon,
            witnesses,
            evidence,
        })
    }

    /// Permutation report with canonical form and witnesses; errors when `phi`
    /// is not a permutation.
    pub fn canonicalize(&self, phi: &RatFunc) -> Result<ClassReport, CubicError> {
        let report = self.is_permutation(phi, Mode::Auto)?;
        if !report.is_permutation() {
            return Err(CubicError::NotPermutation);
        }
        Ok(report)
    }

    /// Canonical form of a permutation with `m1 ∘ phi ∘ m2 = representative`.
    pub fn canonical_witnesses(&self, phi: &RatFunc) -> Result<(CanonForm, Mobius, Mobius), CubicError> {
        self.check_field(phi)?;
        let f = &self.field;
        let mut tr = Tracker::new(phi);
        let family = reduce_to_family(&mut tr)?;
        let canon = match family {
            Family::Char3Cube => CanonForm::Char3Cube,
            Family::Char3Lin { .. } => {
                let a = first_neg_nonsquare(f).expect("odd field");
                align(&mut tr, family, Family::Char3Lin { b: a })?;
                CanonForm::Char3Linearized { a }
            }
            Family::OddFrac { .. } if f.order() % 3 == 1 => {
                let b = first_neg_nonsquare(f).expect("odd field");
                let a = f.div(f.from_int(9), b);
                align(&mut tr, family, Family::OddFrac { a, b })?;
                CanonForm::OddFractional { a, b }
            }
            Family::EvenFrac { .. } if f.order() % 3 == 1 => {
                let b0 = first_trace_one(f).expect("even field");
                align(&mut tr, family, Family::EvenFrac { b0 })?;
                CanonForm::EvenFractional { b0 }
            }
            Family::OddFrac { .. } | Family::EvenFrac { .. } => {
                // reduce x^3 the same way, meet it in the family, then undo
                let mut cube = Tracker::new(&CanonForm::Cube.representative(f));
                let target = reduce_to_family(&mut cube)?;
                align(&mut tr, family, target)?;
                tr.left(cube.left.inverse());
                tr.right(cube.right.inverse());
                CanonForm::Cube
            }
        };
        if tr.cur != canon.representative(f) {
            return Err(CubicError::Internal(format!(
                "reached {} instead of {}",
                tr.cur,
                canon.representative(f)
            )));
        }
        Ok((canon, tr.left, tr.right))
    }
}

/// Degree-3 inseparable maps permute exactly when both numerator and
/// denominator lie in `F_q[x^3]` in characteristic 3.
fn inseparable_permutes(phi: &RatFunc) -> bool {
    let in_cubes = |p: &Poly| p.coeffs().iter().enumerate().all(|(i, c)| i % 3 == 0 || c.value() == 0);
    phi.field().characteristic() == 3 && in_cubes(phi.num()) && in_cubes(phi.den())
}

/// `Delta(t) = u r(t)^2` with `u` a non-square.
pub fn criterion_odd(phi: &RatFunc) -> Result<(bool, Evidence), CubicError> {
    let f = phi.field();
    if !f.is_odd() {
        return Err(CubicError::Characteristic("odd characteristic"));
    }
    if !phi.is_separable() {
        return Err(CubicError::Inseparable);
    }
    let delta = pencil_discriminant(phi)?;
    if delta.is_zero() {
        return Ok((false, Evidence::Discriminant { delta, decomposition: None }));
    }
    let ring = PolyRing::new(f);
    let decomposition = const_square_decompose(&ring, &delta)?;
    let verdict = decomposition.as_ref().is_some_and(|(u, _)| !f.is_square(*u));
    Ok((verdict, Evidence::Discriminant { delta, decomposition }))
}

pub fn criterion_even(phi: &RatFunc) -> Result<(bool, Evidence), CubicError> {
    if phi.field().is_odd() {
        return Err(CubicError::Characteristic("characteristic 2"));
    }
    Classifier::new(phi.field())?.criterion_even(phi)
}

pub fn is_permutation(phi: &RatFunc, mode: Mode) -> Result<ClassReport, CubicError> {
    Classifier::new(phi.field())?.is_permutation(phi, mode)
}

pub fn canonicalize(phi: &RatFunc) -> Result<ClassReport, CubicError> {
    Classifier::new(phi.field())?.canonicalize(phi)
}

/// `left ∘ phi ∘ right = cur`.
struct Tracker {
    cur: RatFunc,
    left: Mobius,
    right: Mobius,
}

impl Tracker {
    fn new(phi: &RatFunc) -> Tracker {
        let f = phi.field();
        Tracker { cur: phi.clone(), left: Mobius::identity(f), right: Mobius::identity(f) }
    }

    fn left(&mut self, m: Mobius) {
        self.cur = self.cur.compose(&m, Side::Left);
        self.left = m.compose(&self.left);
    }

    fn right(&mut self, m: Mobius) {
        self.cur = self.cur.compose(&m, Side::Right);
        self.right = self.right.compose(&m);
    }

    fn field(&self) -> Field {
        self.cur.field().clone()
    }

    fn coeff_num(&self, i: usize) -> Elem {
        self.cur.ring().coeff(self.cur.num(), i)
    }

    fn coeff_den(&self, i: usize) -> Elem {
        self.cur.ring().coeff(self.cur.den(), i)
    }
}

/// Normal forms reached by the reduction moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    /// `(x^3 + a x) / (b x^2 + 1)`.
    OddFrac { a: Elem, b: Elem },
    /// `x^3 + b x`.
    Char3Lin { b: Elem },
    /// Even fractional family with parameter `b0`.
    EvenFrac { b0: Elem },
    /// `x^3`, inseparable.
    Char3Cube,
}

fn not_perm(what: &str) -> CubicError {
    CubicError::Internal(format!("{what}; the input is not a permutation"))
}

fn normalize_tracked(tr: &mut Tracker) -> Result<(), CubicError> {
    let (_, left) = normalize(&tr.cur)?;
    tr.left(left);
    Ok(())
}

fn reduce_to_family(tr: &mut Tracker) -> Result<Family, CubicError> {
    let f = tr.field();
    if !tr.cur.is_separable() {
        if !inseparable_permutes(&tr.cur) {
            return Err(not_perm("inseparable map outside F_q(x^3)"));
        }
        // phi = F(x^3) with F = (A x + B) / (C x + D)
        let m = Mobius::new(&f, tr.coeff_num(3), tr.coeff_num(0), tr.coeff_den(3), tr.coeff_den(0))?;
        tr.left(m.inverse());
        return Ok(Family::Char3Cube);
    }
    normalize_tracked(tr)?;
    if tr.cur.den().degree() == Some(1) {
        return Err(CubicError::NotPermutation);
    }
    if tr.cur.is_polynomial() {
        tr.left(Mobius::translate(&f, f.neg(tr.coeff_num(0))));
        if f.is_odd() {
            let (a, b) = (tr.coeff_num(2), tr.coeff_num(1));
            if b.value() != 0 {
                tr.left(Mobius::reciprocal(&f));
                tr.right(Mobius::reciprocal(&f));
            } else if a.value() == 0 && f.characteristic() != 3 {
                let (o, z) = (f.one(), f.zero());
                tr.left(Mobius::new(&f, o, z, o, f.neg(o))?);
                tr.right(Mobius::new(&f, o, z, o, o)?);
            } else {
                return Err(not_perm("cubic polynomial with a repeated root"));
            }
        } else {
            // depress (3 = 1 in characteristic 2), then move infinity off the pole
            tr.right(Mobius::translate(&f, tr.coeff_num(2)));
            tr.left(Mobius::translate(&f, tr.coeff_num(0)));
            tr.right(Mobius::new(&f, f.one(), f.zero(), f.one(), f.one())?);
        }
        normalize_tracked(tr)?;
    }
    if tr.cur.den().degree() != Some(2) {
        return Err(not_perm("denominator is not quadratic after normalization"));
    }
    if f.is_odd() {
        reduce_odd_fractional(tr)
    } else {
        reduce_even_fractional(tr)
    }
}

fn reduce_odd_fractional(tr: &mut Tracker) -> Result<Family, CubicError> {
    let f = tr.field();
    let half = f.inv(f.from_int(2));
    tr.right(Mobius::translate(&f, f.neg(f.mul(half, tr.coeff_den(1)))));
    let e = tr.coeff_den(0);
    if e.value() == 0 {
        return Err(CubicError::NotPermutation);
    }
    tr.left(Mobius::translate(&f, f.neg(f.div(tr.coeff_num(0), e))));
    let n3 = tr.coeff_num(3);
    tr.left(Mobius::scale(&f, f.div(e, n3))?);
    // stored as (e x^3 + e a2 x^2 + e a x) / (x^2 + e)
    let (a2, a, b) = (f.div(tr.coeff_num(2), e), f.div(tr.coeff_num(1), e), f.inv(e));
    if a2.value() != 0 {
        return Err(not_perm("quadratic numerator term survives"));
    }
    if !is_nonsquare(&f, f.neg(b)) || f.mul(a, b) != f.from_int(9) {
        return Err(not_perm("family conditions fail"));
    }
    if f.characteristic() == 3 {
        tr.left(Mobius::reciprocal(&f));
        tr.right(Mobius::reciprocal(&f));
        return Ok(Family::Char3Lin { b });
    }
    Ok(Family::OddFrac { a, b })
}

fn reduce_even_fractional(tr: &mut Tracker) -> Result<Family, CubicError> {
    let f = tr.field();
    let d1 = tr.coeff_den(1);
    if d1.value() == 0 {
        return Err(CubicError::NotPermutation);
    }
    tr.right(Mobius::scale(&f, d1)?);
    tr.left(Mobius::scale(&f, f.inv(tr.coeff_num(3)))?);
    let b0 = tr.coeff_den(0);
    if b0.value() == 0 {
        return Err(CubicError::NotPermutation);
    }
    tr.left(Mobius::translate(&f, f.div(tr.coeff_num(0), b0)));
    let (a1, a2) = even_family_coeffs(&f, b0);
    if f.abs_trace2(b0)? != 1 || tr.coeff_num(1) != a1 || tr.coeff_num(2) != a2 {
        return Err(not_perm("family conditions fail"));
    }
    Ok(Family::EvenFrac { b0 })
}

/// Moves the current family member onto `to` within the same family.
fn align(tr: &mut Tracker, from: Family, to: Family) -> Result<(), CubicError> {
    let f = tr.field();
    // x / k^3 ∘ (x^3 + ...) ∘ k x
    let scale_by = |tr: &mut Tracker, k2: Elem| -> Result<(), CubicError> {
        let k = f.sqrt(k2).ok_or_else(|| CubicError::Internal("scaling ratio is not a square".into()))?;
        tr.right(Mobius::scale(&f, k)?);
        tr.left(Mobius::scale(&f, f.inv(f.pow(k, 3)))?);
        Ok(())
    };
    match (from, to) {
        (Family::OddFrac { b, .. }, Family::OddFrac { b: target, .. }) => scale_by(tr, f.div(target, b)),
        (Family::Char3Lin { b }, Family::Char3Lin { b: target }) => scale_by(tr, f.div(b, target)),
        (Family::EvenFrac { b0 }, Family::EvenFrac { b0: target }) => {
            let roots = crate::polyring::quad_roots(&f, f.one(), f.add(target, b0));
            let c = *roots
                .first()
                .ok_or_else(|| CubicError::Internal("no translation between trace-one parameters".into()))?;
            tr.right(Mobius::translate(&f, c));
            tr.left(Mobius::translate(&f, f.div(tr.coeff_num(0), target)));
            Ok(())
        }
        _ => Err(CubicError::Internal(format!("cannot align {from:?} with {to:?}"))),
    }
}

/// Permutation verdict for a normalized polynomial: `x^3 + a x` when
/// `3 ∤ q`, `x^3 + a x^2 + b x` when `3 | q`.
pub fn classify_normalized_poly(f: &Field, a: Elem, b: Option<Elem>) -> Result<bool, CubicError> {
    let q = f.order();
    match (f.characteristic() == 3, b) {
        (false, None) => Ok(a.value() == 0 && q % 3 == 2),
        (true, Some(b)) => Ok(a.value() == 0 && (b.value() == 0 || is_nonsquare(f, f.neg(b)))),
        (false, Some(_)) => Err(CubicError::NotNormalized("x^3 + a x expected when 3 does not divide q")),
        (true, None) => Err(CubicError::NotNormalized("x^3 + a x^2 + b x expected when 3 divides q")),
    }
}

/// `phi + lambda x`, reduced.
pub fn shifted(phi: &RatFunc, lambda: Elem) -> RatFunc {
    let r = phi.ring();
    let num = r.add(phi.num(), &r.mul(&r.monomial(lambda, 1), phi.den()));
    RatFunc::new(phi.field(), num, phi.den().clone()).expect("denominator unchanged")
}

/// Both `phi` and `phi + x` permute the projective line.
pub fn is_complete(phi: &RatFunc) -> bool {
    phi.is_permutation_bruteforce() && shifted(phi, phi.field().one()).is_permutation_bruteforce()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtMode {
    Predict,
    Verify,
}

/// Whether `phi` permutes the projective line over `F_{q^n}`.
pub fn extension_permutation(phi: &RatFunc, n: u32, mode: ExtMode) -> Result<bool, CubicError> {
    let f = phi.field();
    if n == 0 {
        return Err(CubicError::OutOfScope("extension degree must be at least 1"));
    }
    match mode {
        ExtMode::Predict => {
            if !f.is_odd() {
                return Err(CubicError::OutOfScope("prediction covers odd characteristic only"));
            }
            if phi.degree() != 3 {
                return Err(CubicError::Degree(phi.degree()));
            }
            if !phi.is_separable() {
                return Err(CubicError::OutOfScope("prediction covers separable maps only"));
            }
            if !phi.is_permutation_bruteforce() {
                return Err(CubicError::NotPermutation);
            }
            Ok(n % 2 == 1)
        }
        ExtMode::Verify => {
            let size = (f.order() as u64).checked_pow(n).unwrap_or(u64::MAX);
            if size > EXTENSION_LIMIT {
                return Err(CubicError::TooLarge(size));
            }
            if n == 1 {
                return Ok(phi.is_permutation_bruteforce());
            }
            let ext = ExtCtx::new(f, n)?;
            let r = phi.ring();
            let lifted = RatFunc::new(ext.field(), r.lift(&ext, phi.num()), r.lift(&ext, phi.den()))?;
            Ok(lifted.is_permutation_bruteforce())
        }
    }
}

/// Machine-readable [`ClassReport`]. Field elements are written as their
/// enumeration index; polynomials as ascending index lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub field: String,
    pub function: String,
    pub verdict: Verdict,
    pub separable: bool,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub canon: Option<CanonJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witnesses: Option<Vec<WitnessJson>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub evidence: Option<EvidenceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonJson {
    pub tag: String,
    pub params: Vec<u32>,
    pub representative: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    /// `[a, b, c, d]` for `(a x + b) / (c x + d)`.
    pub coeffs: [u32; 4],
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvidenceJson {
    Discriminant { delta: Vec<u32>, u: Option<u32>, r: Option<Vec<u32>> },
    /// Root coefficients over `F_{q^2}` as pairs of base-field indices.
    Resolvent { b: Vec<u32>, c: Vec<u32>, base_roots: Vec<Vec<u32>>, ext_roots: Vec<Vec<[u32; 2]>> },
    PoleObstruction { pole: u32 },
    Inseparable,
}

impl ClassReport {
    pub fn to_json(&self, phi: &RatFunc) -> ReportJson {
        let f = phi.field();
        let q = f.order();
        let witness = |m: &Mobius| WitnessJson { coeffs: m.values(), text: m.to_string() };
        let evidence = self.evidence.as_ref().map(|ev| match ev {
            Evidence::Discriminant { delta, decomposition } => EvidenceJson::Discriminant {
                delta: delta.values(),
                u: decomposition.as_ref().map(|(u, _)| u.value()),
                r: decomposition.as_ref().map(|(_, r)| r.values()),
            },
            Evidence::Resolvent { b, c, base_roots, ext_roots } => EvidenceJson::Resolvent {
                b: b.values(),
                c: c.values(),
                base_roots: base_roots.iter().map(Poly::values).collect(),
                ext_roots: ext_roots
                    .iter()
                    .map(|s| s.values().iter().map(|&v| [v % q, v / q]).collect())
                    .collect(),
            },
            Evidence::PoleObstruction { pole } => EvidenceJson::PoleObstruction { pole: pole.value() },
            Evidence::Inseparable => EvidenceJson::Inseparable,
        });
        ReportJson {
            field: f.spec_string(),
            function: phi.to_string(),
            verdict: self.verdict,
            separable: self.separable,
            method: self.method,
            canon: self.canon.as_ref().map(|c| CanonJson {
                tag: c.tag().to_string(),
                params: c.params().iter().map(|e| e.value()).collect(),
                representative: c.representative(f).to_string(),
            }),
            witnesses: self.witnesses.as_ref().map(|(m1, m2)| vec![witness(m1), witness(m2)]),
            evidence,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projfunc::{parse_ratfunc, proj_points};

    fn field(spec: &str) -> Field {
        spec.parse().unwrap()
    }

    fn rf(f: &Field, text: &str) -> RatFunc {
        parse_ratfunc(text, f).unwrap()
    }

    #[test]
    fn resolvent_examples() {
        let f7 = field("7");
        let r = PolyRing::new(&f7);
        let t = r.x();
        for b in f7.elements() {
            let (bb, cc) = quadratic_resolvent(&r, &Poly::zero(), &r.constant(b), &r.neg(&t));
            assert_eq!(bb, r.scale(f7.from_int(3), &t));
            let expect = r.add(&r.constant(f7.pow(b, 3)), &r.scale(f7.from_int(9), &r.mul(&t, &t)));
            assert_eq!(cc, expect);
        }
        let z = f7.zero();
        assert_eq!(quadratic_resolvent(&f7, &z, &z, &z), (z, z));
    }

    #[test]
    fn resolvent_of_even_family_pencil() {
        // x^3 + a2 x^2 + a1 x - t (x^2 + x + b0) has resolvent
        // x^2 + (t^2 + (a1+a2+b0) t + a1 a2) x + b0 t^4 + (a2 b0 + 1) t^3
        //   + (a1 + a2^2 b0 + b0^2) t^2 + (a1^2 + a2^3 b0) t + a1^3
        let f = field("8");
        let r = PolyRing::new(&f);
        for a1 in f.elements().step_by(3) {
            for a2 in f.elements().step_by(2) {
                for b0 in f.elements().skip(1) {
                    let num = Poly::from_coeffs(vec![f.zero(), a1, a2, f.one()]);
                    let den = Poly::from_coeffs(vec![b0, f.one(), f.one()]);
                    let (b, c) = PencilCubic::from_pair(&f, &num, &den).unwrap().resolvent(&r);
                    let s = |x: Elem, y: Elem| f.add(x, y);
                    let m = |x: Elem, y: Elem| f.mul(x, y);
                    let exp_b = Poly::from_coeffs(vec![m(a1, a2), s(s(a1, a2), b0), f.one()]);
                    let exp_c = Poly::from_coeffs(vec![
                        f.pow(a1, 3),
                        s(m(a1, a1), m(f.pow(a2, 3), b0)),
                        s(s(a1, m(m(a2, a2), b0)), m(b0, b0)),
                        s(m(a2, b0), f.one()),
                        b0,
                    ]);
                    assert_eq!((b, c), (exp_b, exp_c));
                }
            }
        }
    }

    #[test]
    fn pencil_examples() {
        let f5 = field("5");
        let r = PolyRing::new(&f5);
        let p = PencilCubic::from_pair(&f5, &r.from_ints(&[0, 3, 0, 1]), &r.from_ints(&[1, 0, 3])).unwrap();
        assert_eq!(p.c2, r.from_ints(&[0, -3]));
        assert_eq!(p.c1, r.from_ints(&[3]));
        assert_eq!(p.c0, r.from_ints(&[0, -1]));
        match build_pencil(&rf(&f5, "x^3")).unwrap() {
            PencilBuild::Pencil { pencil, .. } => {
                assert!(pencil.c2.is_zero() && pencil.c1.is_zero());
                assert_eq!(pencil.c0, r.from_ints(&[0, -1]));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            build_pencil(&rf(&f5, "x^3/(x+1)")).unwrap(),
            PencilBuild::PoleObstruction { pole } if pole == f5.from_int(-1)
        ));
        assert!(matches!(build_pencil(&rf(&f5, "x^2")), Err(CubicError::Degree(2))));
    }

    #[test]
    fn pencil_discriminant_examples() {
        let f7 = field("7");
        let r7 = PolyRing::new(&f7);
        assert_eq!(pencil_discriminant(&rf(&f7, "x^3")).unwrap(), r7.from_ints(&[0, 0, -27]));
        let f9 = field("9");
        for a in f9.elements() {
            for b in f9.elements() {
                let phi = RatFunc::from_poly(&f9, Poly::from_coeffs(vec![f9.zero(), b, a, f9.one()])).unwrap();
                // a^3 t - b^3 + a^2 b^2
                let a2 = f9.mul(a, a);
                let expect =
                    Poly::from_coeffs(vec![f9.sub(f9.mul(a2, f9.mul(b, b)), f9.pow(b, 3)), f9.mul(a2, a)]);
                assert_eq!(pencil_discriminant(&phi).unwrap(), expect);
            }
        }
        // odd family: -4 b2^3 h(t), checked through the leading and constant terms
        let f11 = field("11");
        let r11 = PolyRing::new(&f11);
        let phi = rf(&f11, "(x^3+2*x^2+5*x)/(3*x^2+1)");
        let delta = pencil_discriminant(&phi).unwrap();
        // after normalizing the denominator to x^2 + 1/3 the pencil is rescaled by 1/3 in t
        assert_eq!(delta.degree(), Some(4));
        assert!(r11.eval(&delta, f11.zero()).value() != 0);
        assert!(pencil_discriminant(&rf(&field("4"), "x^3")).is_err());
    }

    #[test]
    fn odd_criterion_examples() {
        let f5 = field("5");
        let phi = rf(&f5, "(x^3+3*x)/(3*x^2+1)");
        assert!(criterion_odd(&phi).unwrap().0);
        assert!(phi.is_permutation_bruteforce());
        assert!(criterion_odd(&rf(&field("3"), "x^3+x")).unwrap().0);
        assert!(!criterion_odd(&rf(&field("7"), "x^3")).unwrap().0);
        assert_eq!(criterion_odd(&rf(&field("3"), "x^3")).unwrap_err(), CubicError::Inseparable);
    }

    #[test]
    fn even_criterion_examples() {
        let f2 = field("2");
        let (ok, ev) = criterion_even(&rf(&f2, "x^3/(x^2+x+1)")).unwrap();
        assert!(ok);
        let Evidence::Resolvent { ext_roots, base_roots, .. } = ev else { panic!() };
        assert!(base_roots.is_empty());
        // roots u2 t^2 + u1 t + u0 with u2^2 + u2 + 1 = 0, u1 = u2 + 1, u0 = 0
        let f4 = Field::extension(&f2, 2, None).unwrap();
        for s in &ext_roots {
            let c = s.coeffs();
            assert_eq!(c.len(), 3);
            let u2 = f4.elem(c[2].value());
            assert_eq!(f4.add(f4.add(f4.mul(u2, u2), u2), f4.one()), f4.zero());
            assert_eq!(c[1].value(), f4.add(u2, f4.one()).value());
            assert_eq!(c[0].value(), 0);
        }
        let f4 = field("4");
        assert!(!criterion_even(&rf(&f4, "x^3")).unwrap().0);
        assert!(criterion_even(&rf(&f4, "(x^3+w*x^2+x)/(x^2+x+w)")).unwrap().0);
        assert!(criterion_even(&rf(&field("5"), "x^3")).is_err());
    }

    #[test]
    fn dispatcher_examples() {
        let f3 = field("3");
        let rep = is_permutation(&rf(&f3, "(x^3+1)/(x^3+2)"), Mode::Auto).unwrap();
        assert!(rep.is_permutation() && !rep.separable);
        assert_eq!(rep.method, Method::Inseparable);
        assert_eq!(rep.canon, Some(CanonForm::Char3Cube));

        let f7 = field("7");
        for mode in [Mode::Auto, Mode::Brute, Mode::Criterion, Mode::Crosscheck] {
            let rep = is_permutation(&rf(&f7, "(x^3+x)/(2*x^2+1)"), mode).unwrap();
            assert!(rep.is_permutation());
            assert!(rep.canon.is_some() && rep.witnesses.is_some());
            let rep = is_permutation(&rf(&f7, "x^3+x"), mode).unwrap();
            assert!(!rep.is_permutation());
            assert!(rep.canon.is_none() && rep.witnesses.is_none());
        }
        assert!(matches!(is_permutation(&rf(&f7, "x^2"), Mode::Auto), Err(CubicError::Degree(2))));
    }

    fn check_witness(phi: &RatFunc) -> CanonForm {
        let f = phi.field();
        let rep = canonicalize(phi).unwrap();
        let canon = rep.canon.unwrap();
        let (m1, m2) = rep.witnesses.unwrap();
        let target = canon.representative(f);
        assert_eq!(phi.compose(&m1, Side::Left).compose(&m2, Side::Right), target);
        for p in proj_points(f) {
            assert_eq!(m1.apply(phi.eval_point(m2.apply(p))), target.eval_point(p));
        }
        assert!(table_representatives(f).contains(&canon));
        canon
    }

    #[test]
    fn canonicalize_examples() {
        let f5 = field("5");
        assert_eq!(check_witness(&rf(&f5, "(x^3+3*x)/(3*x^2+1)")), CanonForm::Cube);
        assert_eq!(check_witness(&rf(&field("3"), "(x^3+1)/(x^3+2)")), CanonForm::Char3Cube);
        let f4 = field("4");
        let w = f4.generator().unwrap();
        let w2 = f4.mul(w, w);
        assert!(w.value() < w2.value());
        let (a1, a2) = even_family_coeffs(&f4, w2);
        let phi = RatFunc::new(
            &f4,
            Poly::from_coeffs(vec![f4.zero(), a1, a2, f4.one()]),
            Poly::from_coeffs(vec![w2, f4.one(), f4.one()]),
        )
        .unwrap();
        assert_eq!(check_witness(&phi), CanonForm::EvenFractional { b0: w });
        assert!(matches!(canonicalize(&rf(&field("7"), "x^3")), Err(CubicError::NotPermutation)));
    }

    #[test]
    fn representatives_are_permutations() {
        for spec in ["2", "3", "4", "5", "7", "8", "9", "11", "13", "16", "25", "27"] {
            let f = field(spec);
            for canon in table_representatives(&f) {
                let rep = canon.representative(&f);
                assert!(rep.is_permutation_bruteforce(), "{spec}: {rep}");
                assert_eq!(check_witness(&rep), canon);
            }
        }
    }

    #[test]
    fn every_shape_canonicalizes() {
        for spec in ["5", "7", "8", "9", "13", "16"] {
            let f = field(spec);
            let texts = [
                "x^3",
                "x^3+x",
                "(x^3+x)/(2*x^2+1)",
                "(x^3+w*x)/(x^2+x+1)",
                "1/(x^3+2)",
                "(x^3+1)/(x^3+x+3)",
                "(x^2+1)/(x^3+x)",
                "(x+1)/(x^3+2*x+1)",
            ];
            let mut seen = 0;
            for text in texts {
                let Ok(phi) = parse_ratfunc(text, &f) else { continue };
                if phi.degree() != 3 || !phi.is_permutation_bruteforce() {
                    continue;
                }
                for m in [Mobius::reciprocal(&f), Mobius::translate(&f, f.one())] {
                    for side in [Side::Left, Side::Right] {
                        check_witness(&phi.compose(&m, side));
                        seen += 1;
                    }
                }
            }
            assert!(seen > 0 || ["7", "13", "16"].contains(&spec), "{spec}");
        }
    }

    #[test]
    fn criterion_agrees_with_brute_force_on_small_fields() {
        for spec in ["2", "3", "4", "5", "7", "8", "9"] {
            let f = field(spec);
            let cls = Classifier::new(&f).unwrap();
            let (z, o) = (f.zero(), f.one());
            let mut perms = 0;
            for a2 in f.elements() {
                for a1 in f.elements() {
                    for b1 in f.elements() {
                        for b0 in f.elements() {
                            let num = Poly::from_coeffs(vec![z, a1, a2, o]);
                            let den = Poly::from_coeffs(vec![b0, b1, o]);
                            let Ok(phi) = RatFunc::new(&f, num, den) else { continue };
                            if phi.degree() != 3 {
                                continue;
                            }
                            let rep = cls.is_permutation(&phi, Mode::Crosscheck).unwrap();
                            if rep.is_permutation() {
                                perms += 1;
                                let (m1, m2) = rep.witnesses.unwrap();
                                let target = rep.canon.unwrap().representative(&f);
                                assert_eq!(phi.compose(&m1, Side::Left).compose(&m2, Side::Right), target);
                            }
                        }
                    }
                }
            }
            assert!(perms > 0, "{spec}");
        }
    }

    #[test]
    fn normalized_polynomial_verdicts() {
        let f5 = field("5");
        assert!(classify_normalized_poly(&f5, f5.zero(), None).unwrap());
        let f9 = field("9");
        let b = f9.elements().find(|&b| !f9.is_square(f9.neg(b))).unwrap();
        assert!(classify_normalized_poly(&f9, f9.zero(), Some(b)).unwrap());
        let f7 = field("7");
        assert!(!classify_normalized_poly(&f7, f7.zero(), None).unwrap());
        assert!(classify_normalized_poly(&f7, f7.zero(), Some(f7.zero())).is_err());
        for spec in ["2", "3", "4", "5", "7", "8", "9", "11", "13"] {
            let f = field(spec);
            let three = f.characteristic() == 3;
            for a in f.elements() {
                for b in f.elements() {
                    let (poly, bb) = if three {
                        (vec![f.zero(), b, a, f.one()], Some(b))
                    } else if b.value() == 0 {
                        (vec![f.zero(), a, f.zero(), f.one()], None)
                    } else {
                        continue;
                    };
                    let phi = RatFunc::from_poly(&f, Poly::from_coeffs(poly)).unwrap();
                    assert_eq!(classify_normalized_poly(&f, a, bb).unwrap(), phi.is_permutation_bruteforce());
                }
            }
        }
    }

    #[test]
    fn completeness_examples() {
        assert!(is_complete(&rf(&field("3"), "x^3")));
        assert!(!is_complete(&rf(&field("7"), "(x^3+x)/(2*x^2+1)")));
        assert!(!is_complete(&rf(&field("5"), "x^3")));
        let f5 = field("5");
        let phi = rf(&f5, "(4*x^3+x)/(x^2+1)");
        assert_eq!(shifted(&phi, f5.one()), rf(&f5, "2*x/(x^2+1)"));
    }

    #[test]
    fn extension_examples() {
        let f7 = field("7");
        let phi = CanonForm::OddFractional { a: f7.div(f7.from_int(9), f7.from_int(1)), b: f7.from_int(1) }
            .representative(&f7);
        let phi = if phi.is_permutation_bruteforce() {
            phi
        } else {
            table_representatives(&f7)[0].representative(&f7)
        };
        for (n, expect) in [(1, true), (2, false), (3, true)] {
            assert_eq!(extension_permutation(&phi, n, ExtMode::Predict).unwrap(), expect);
            assert_eq!(extension_permutation(&phi, n, ExtMode::Verify).unwrap(), expect);
        }
        assert!(matches!(extension_permutation(&phi, 5, ExtMode::Verify), Err(CubicError::TooLarge(_))));
        let f4 = field("4");
        assert!(extension_permutation(&rf(&f4, "(x^3+w*x^2+x)/(x^2+x+w)"), 2, ExtMode::Predict).is_err());
        assert!(extension_permutation(&rf(&field("3"), "x^3"), 3, ExtMode::Predict).is_err());
    }

    #[test]
    fn report_json_round_trip() {
        let f9 = field("9");
        let phi = rf(&f9, "x^3+w*x");
        for mode in [Mode::Brute, Mode::Criterion] {
            let rep = is_permutation(&phi, mode).unwrap();
            let json = rep.to_json(&phi);
            let text = serde_json::to_string(&json).unwrap();
            let back: ReportJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back, json);
        }
    }
}
