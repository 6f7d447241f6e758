//! Rational functions as self-maps of the projective line over a finite field,
//! the Möbius group acting on both sides, and the text format.

mod parse;

use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::gf::{Elem, Field, GfError};
use crate::polyring::{Poly, PolyError, PolyRing};

pub use parse::{parse_ratfunc, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error("numerator and denominator are both zero")]
    BothZero,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("singular Möbius matrix (ad - bc = 0)")]
    Singular,
    #[error("function does not permute the projective line")]
    NotPermutation,
    #[error("elements belong to different fields")]
    ContextMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ProjPoint {
    Finite(Elem),
    Infinity,
}

impl ProjPoint {
    /// Position in `0..=q`, with infinity last.
    pub fn index(self, q: u32) -> u32 {
        match self {
            ProjPoint::Finite(a) => a.value(),
            ProjPoint::Infinity => q,
        }
    }
}

/// All `q + 1` points: the field elements in enumeration order, then infinity.
pub fn proj_points(field: &Field) -> impl Iterator<Item = ProjPoint> + '_ {
    field.elements().map(ProjPoint::Finite).chain(std::iter::once(ProjPoint::Infinity))
}

/// `num / den` in lowest terms with `den` monic.
#[derive(Clone, Debug)]
pub struct RatFunc {
    field: Field,
    num: Poly,
    den: Poly,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFunc {}

impl Hash for RatFunc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.id().hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl RatFunc {
    pub fn new(field: &Field, num: Poly, den: Poly) -> Result<RatFunc, ProjError> {
        if num.is_zero() && den.is_zero() {
            return Err(ProjError::BothZero);
        }
        let Some(lc) = den.lc() else {
            return Err(ProjError::ZeroDenominator);
        };
        if num.coeffs().iter().chain(den.coeffs()).any(|c| c.field_id() != field.id()) {
            return Err(ProjError::ContextMismatch);
        }
        let ring = PolyRing::new(field);
        if num.is_zero() {
            return Ok(RatFunc { field: field.clone(), num, den: ring.one() });
        }
        let g = ring.gcd_monic(&num, &den)?;
        let (num, _) = ring.divmod(&num, &g)?;
        let (den, _) = ring.divmod(&den, &g)?;
        let scale = field.inv(field.div(lc, g.lc().unwrap()));
        Ok(RatFunc {
            field: field.clone(),
            num: ring.scale(scale, &num),
            den: ring.scale(scale, &den),
        })
    }

    pub fn from_poly(field: &Field, num: Poly) -> Result<RatFunc, ProjError> {
        RatFunc::new(field, num, PolyRing::new(field).one())
    }

    pub fn identity(field: &Field) -> RatFunc {
        let ring = PolyRing::new(field);
        RatFunc { field: field.clone(), num: ring.x(), den: ring.one() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ring(&self) -> PolyRing {
        PolyRing::new(&self.field)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval_point(&self, p: ProjPoint) -> ProjPoint {
        let f = &self.field;
        let ring = self.ring();
        match p {
            ProjPoint::Finite(a) => {
                let d = ring.eval(&self.den, a);
                if d.value() == 0 {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(f.div(ring.eval(&self.num, a), d))
                }
            }
            ProjPoint::Infinity => {
                let (dn, dd) = (self.num.degree(), self.den.degree().unwrap());
                match dn {
                    None => ProjPoint::Finite(f.zero()),
                    Some(dn) if dn > dd => ProjPoint::Infinity,
                    Some(dn) if dn < dd => ProjPoint::Finite(f.zero()),
                    Some(_) => ProjPoint::Finite(f.div(self.num.lc().unwrap(), self.den.lc().unwrap())),
                }
            }
        }
    }

    /// Images of all points in [`proj_points`] order, as indices in `0..=q`.
    pub fn value_table(&self) -> Vec<u32> {
        let q = self.field.order();
        proj_points(&self.field).map(|p| self.eval_point(p).index(q)).collect()
    }

    pub fn is_permutation_bruteforce(&self) -> bool {
        let q = self.field.order() as usize;
        let mut seen = vec![false; q + 1];
        for v in self.value_table() {
            if std::mem::replace(&mut seen[v as usize], true) {
                return false;
            }
        }
        true
    }

    /// `num' den - num den' != 0`, i.e. the map is not a function of `x^p`.
    pub fn is_separable(&self) -> bool {
        let r = self.ring();
        let w = r.sub(
            &r.mul(&r.derivative(&self.num), &self.den),
            &r.mul(&self.num, &r.derivative(&self.den)),
        );
        !w.is_zero()
    }

    /// Shorthand for [`compose_mobius`].
    pub fn compose(&self, m: &Mobius, side: Side) -> RatFunc {
        compose_mobius(self, m, side)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(&format_ratfunc(self))
    }
}

pub fn format_ratfunc(phi: &RatFunc) -> String {
    let r = phi.ring();
    if phi.is_polynomial() {
        r.format(&phi.num, "x")
    } else {
        format!("({})/({})", r.format(&phi.num, "x"), r.format(&phi.den, "x"))
    }
}

/// `(a x + b) / (c x + d)`, scaled so the first nonzero of `(a, c)` is 1.
#[derive(Clone, Debug)]
pub struct Mobius {
    field: Field,
    a: Elem,
    b: Elem,
    c: Elem,
    d: Elem,
}

impl PartialEq for Mobius {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)
    }
}

impl Eq for Mobius {}

impl Hash for Mobius {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.a, self.b, self.c, self.d).hash(state);
    }
}

impl Mobius {
    pub fn new(field: &Field, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<Mobius, ProjError> {
        if [a, b, c, d].iter().any(|e| e.field_id() != field.id()) {
            return Err(ProjError::ContextMismatch);
        }
        if field.sub(field.mul(a, d), field.mul(b, c)).value() == 0 {
            return Err(ProjError::Singular);
        }
        let lead = if a.value() != 0 { a } else { c };
        let s = field.inv(lead);
        Ok(Mobius {
            field: field.clone(),
            a: field.mul(s, a),
            b: field.mul(s, b),
            c: field.mul(s, c),
            d: field.mul(s, d),
        })
    }

    fn unchecked(field: &Field, a: Elem, b: Elem, c: Elem, d: Elem) -> Mobius {
        Mobius::new(field, a, b, c, d).expect("nonsingular by construction")
    }

    pub fn identity(field: &Field) -> Mobius {
        Mobius::unchecked(field, field.one(), field.zero(), field.zero(), field.one())
    }

    /// `x + c`.
    pub fn translate(field: &Field, c: Elem) -> Mobius {
        Mobius::unchecked(field, field.one(), c, field.zero(), field.one())
    }

    /// `c x`, `c != 0`.
    pub fn scale(field: &Field, c: Elem) -> Result<Mobius, ProjError> {
        Mobius::new(field, c, field.zero(), field.zero(), field.one())
    }

    /// `1 / x`.
    pub fn reciprocal(field: &Field) -> Mobius {
        Mobius::unchecked(field, field.zero(), field.one(), field.one(), field.zero())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> (Elem, Elem, Elem, Elem) {
        (self.a, self.b, self.c, self.d)
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &Mobius) -> Mobius {
        let f = &self.field;
        let dot = |x: Elem, y: Elem, z: Elem, w: Elem| f.add(f.mul(x, y), f.mul(z, w));
        Mobius::unchecked(
            f,
            dot(self.a, o.a, self.b, o.c),
            dot(self.a, o.b, self.b, o.d),
            dot(self.c, o.a, self.d, o.c),
            dot(self.c, o.b, self.d, o.d),
        )
    }

    pub fn inverse(&self) -> Mobius {
        let f = &self.field;
        Mobius::unchecked(f, self.d, f.neg(self.b), f.neg(self.c), self.a)
    }

    pub fn apply(&self, p: ProjPoint) -> ProjPoint {
        let f = &self.field;
        match p {
            ProjPoint::Finite(x) => {
                let den = f.add(f.mul(self.c, x), self.d);
                if den.value() == 0 {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(f.div(f.add(f.mul(self.a, x), self.b), den))
                }
            }
            ProjPoint::Infinity if self.c.value() == 0 => ProjPoint::Infinity,
            ProjPoint::Infinity => ProjPoint::Finite(f.div(self.a, self.c)),
        }
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let f = &self.field;
        RatFunc::new(
            f,
            Poly::from_coeffs(vec![self.b, self.a]),
            Poly::from_coeffs(vec![self.d, self.c]),
        )
        .expect("nonsingular")
    }

    /// 4-tuple of element indices.
    pub fn values(&self) -> [u32; 4] {
        [self.a.value(), self.b.value(), self.c.value(), self.d.value()]
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(&format_ratfunc(&self.to_ratfunc()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// `m ∘ phi` (left) or `phi ∘ m` (right), reduced.
pub fn compose_mobius(phi: &RatFunc, m: &Mobius, side: Side) -> RatFunc {
    let f = phi.field();
    let r = phi.ring();
    let (a, b, c, d) = m.coeffs();
    let (num, den) = match side {
        Side::Left => (
            r.add(&r.scale(a, &phi.num), &r.scale(b, &phi.den)),
            r.add(&r.scale(c, &phi.num), &r.scale(d, &phi.den)),
        ),
        Side::Right => {
            // homogenize at n = deg phi: sum_i p_i (ax+b)^i (cx+d)^{n-i}
            let n = phi.degree();
            let top = Poly::from_coeffs(vec![b, a]);
            let bot = Poly::from_coeffs(vec![d, c]);
            let top_pows: Vec<Poly> =
                std::iter::successors(Some(r.one()), |p| Some(r.mul(p, &top))).take(n + 1).collect();
            let bot_pows: Vec<Poly> =
                std::iter::successors(Some(r.one()), |p| Some(r.mul(p, &bot))).take(n + 1).collect();
            let homog = |p: &Poly| {
                p.coeffs().iter().enumerate().fold(Poly::zero(), |acc, (i, &ci)| {
                    r.add(&acc, &r.scale(ci, &r.mul(&top_pows[i], &bot_pows[n - i])))
                })
            };
            (homog(&phi.num), homog(&phi.den))
        }
    };
    RatFunc::new(f, num, den).expect("Möbius action keeps the pair coprime and nonzero")
}

/// Bijection of the field obtained from a permutation of the projective line
/// by sending the pole to the value at infinity. Indexed by element position.
pub fn fractional_jump(phi: &RatFunc) -> Result<Vec<Elem>, ProjError> {
    if !phi.is_permutation_bruteforce() {
        return Err(ProjError::NotPermutation);
    }
    let f = phi.field();
    let at_inf = phi.eval_point(ProjPoint::Infinity);
    Ok(f.elements()
        .map(|a| match phi.eval_point(ProjPoint::Finite(a)) {
            ProjPoint::Finite(b) => b,
            ProjPoint::Infinity => match at_inf {
                ProjPoint::Finite(b) => b,
                ProjPoint::Infinity => unreachable!("a permutation has a single pole"),
            },
        })
        .collect())
}
