//! Finite fields `F_p`, `F_q = F_p[z]/(m)` and relative extensions `F_{q^d}`.
//!
//! Every field is a cheap-to-clone handle around immutable lookup tables.
//! Elements are small `Copy` values that remember which field produced them;
//! arithmetic between elements of different fields panics in the infallible
//! API and is reported as [`GfError::ContextMismatch`] by [`Field::arith`].
//!
//! Element `i` of a field of order `q` is the vector of coordinates given by
//! the base-`p` digits of `i` (coordinate of `z^j` is digit `j`). Enumeration
//! order is the integer order of these indices, which starts at zero.
//! For a relative extension of a field of order `Q`, the base-`Q` digits of an
//! index are the coordinates over the base, so the base field embeds as the
//! indices `0..Q` and addition is digit-wise mod `p` at every level.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::polyring::{is_irreducible, Poly, PolyRing};
use crate::ring::Ring;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u128),
    #[error("elements belong to different fields")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs {expected}, field has characteristic {found}")]
    Characteristic { expected: &'static str, found: u32 },
    #[error("invalid field spec {spec:?}: {reason}")]
    BadSpec { spec: String, reason: String },
}

/// An element of some [`Field`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elem {
    field: u32,
    value: u32,
}

impl Elem {
    /// Position of the element in its field's enumeration order.
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field_id(self) -> u32 {
        self.field
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(u64),
}

/// A finite field. Cloning shares the underlying tables.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    id: u32,
    p: u32,
    /// Degree over the prime field.
    k: u32,
    q: u32,
    /// Field this one was built over; `None` for prime fields.
    base: Option<Field>,
    /// Monic modulus over `base` (ascending coefficient values).
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q = p^k` for a prime `p`, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = *prime_factors(q).first()?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn field_id(p: u32, base: Option<&Field>, modulus: &[u32]) -> u32 {
    let mut h = DefaultHasher::new();
    p.hash(&mut h);
    base.map(|b| b.id()).hash(&mut h);
    modulus.hash(&mut h);
    let x = h.finish();
    (x ^ (x >> 32)) as u32
}

/// Builds the exp/log tables for a field of order `q` given a slow
/// multiplication on indices.
fn build_tables(q: u32, mul: impl Fn(u32, u32) -> u32) -> (Vec<u32>, Vec<u32>) {
    let n = (q - 1) as u64;
    let factors = prime_factors(n);
    let pow = |mut a: u32, mut e: u64| {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    };
    let gen = (1..q)
        .find(|&c| factors.iter().all(|&r| pow(c, n / r) != 1))
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = Vec::with_capacity(2 * (q as usize - 1));
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for i in 0..(q - 1) {
        exp.push(x);
        log[x as usize] = i;
        x = mul(x, gen);
    }
    debug_assert_eq!(x, 1);
    let again = exp.clone();
    exp.extend(again);
    if q == 2 {
        // single-element group still needs two lookups
        exp = vec![1, 1];
    }
    (exp, log)
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if p > MAX_ORDER {
            return Err(GfError::TooLarge(p as u128));
        }
        let pp = p as u32;
        let (exp, log) = build_tables(pp, |a, b| ((a as u64 * b as u64) % p) as u32);
        let modulus = vec![0, 1];
        Ok(Field(Arc::new(Inner {
            id: field_id(pp, None, &modulus),
            p: pp,
            k: 1,
            q: pp,
            base: None,
            modulus,
            exp,
            log,
        })))
    }

    /// `F_{p^k}` with the given modulus (ascending coefficients, monic, degree
    /// `k`) or, when `modulus` is `None`, the least monic irreducible one.
    pub fn new(p: u64, k: u32, modulus: Option<&[i64]>) -> Result<Field, GfError> {
        if k == 0 {
            return Err(GfError::ZeroDegree);
        }
        let prime = Field::prime(p)?;
        match modulus {
            None if k == 1 => Ok(prime),
            None => Field::extension(&prime, k, None),
            Some(coeffs) => {
                let m: Vec<Elem> = coeffs.iter().map(|&c| prime.from_int(c)).collect();
                if k == 1 {
                    // any monic linear modulus gives F_p itself
                    if m.len() != 2 || m[1] != prime.one() {
                        return Err(GfError::BadModulus(format!(
                            "expected a monic polynomial of degree 1, got {coeffs:?}"
                        )));
                    }
                    return Ok(prime);
                }
                Field::extension(&prime, k, Some(&m))
            }
        }
    }

    /// Degree-`d` extension of `base`, with an explicit monic modulus over the
    /// base or the least monic irreducible one.
    pub fn extension(base: &Field, d: u32, modulus: Option<&[Elem]>) -> Result<Field, GfError> {
        if d == 0 {
            return Err(GfError::ZeroDegree);
        }
        let order = (base.order() as u128).pow(d);
        if order > MAX_ORDER as u128 {
            return Err(GfError::TooLarge(order));
        }
        let ring = PolyRing::new(base);
        let modulus = match modulus {
            Some(m) => {
                if m.iter().any(|e| e.field != base.id()) {
                    return Err(GfError::ContextMismatch);
                }
                let poly = Poly::from_coeffs(m.to_vec());
                if poly.degree() != Some(d as usize) || poly.lc() != Some(base.one()) {
                    return Err(GfError::BadModulus(format!(
                        "expected a monic polynomial of degree {d}"
                    )));
                }
                if !is_irreducible(&ring, &poly) {
                    return Err(GfError::BadModulus(format!(
                        "{} is reducible",
                        ring.format(&poly, "z")
                    )));
                }
                poly
            }
            None => default_modulus(&ring, d),
        };
        let qb = base.order();
        let q = order as u32;
        let mvals: Vec<u32> = modulus.coeffs().iter().map(|e| e.value).collect();
        let dd = d as usize;
        let b = base.clone();
        let slow_mul = |x: u32, y: u32| -> u32 {
            let digits = |mut v: u32| {
                let mut out = vec![0u32; dd];
                for slot in out.iter_mut() {
                    *slot = v % qb;
                    v /= qb;
                }
                out
            };
            let (xs, ys) = (digits(x), digits(y));
            let mut prod = vec![0u32; 2 * dd - 1];
            for (i, &a) in xs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &c) in ys.iter().enumerate() {
                    let t = b.mul_raw(a, c);
                    prod[i + j] = b.add_raw(prod[i + j], t);
                }
            }
            for top in (dd..prod.len()).rev() {
                let c = prod[top];
                if c == 0 {
                    continue;
                }
                prod[top] = 0;
                for (j, &mj) in mvals.iter().enumerate().take(dd) {
                    let t = b.mul_raw(c, mj);
                    prod[top - dd + j] = b.sub_raw(prod[top - dd + j], t);
                }
            }
            prod.iter().take(dd).rev().fold(0u32, |acc, &c| acc * qb + c)
        };
        let (exp, log) = build_tables(q, slow_mul);
        Ok(Field(Arc::new(Inner {
            id: field_id(base.characteristic(), Some(base), &mvals),
            p: base.characteristic(),
            k: base.degree() * d,
            q,
            base: Some(base.clone()),
            modulus: mvals,
            exp,
            log,
        })))
    }

    pub fn id(&self) -> u32 {
        self.0.id
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }

    /// Degree over [`Field::base`] (1 for prime fields).
    pub fn relative_degree(&self) -> u32 {
        (self.0.modulus.len() - 1) as u32
    }

    /// The modulus over the base, ascending.
    pub fn modulus(&self) -> Vec<Elem> {
        match self.base() {
            Some(b) => self.0.modulus.iter().map(|&v| b.elem(v)).collect(),
            None => self.0.modulus.iter().map(|&v| self.elem(v)).collect(),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    /// `F_q` with `q = p^k` over the prime field (not a relative tower).
    pub fn is_absolute(&self) -> bool {
        match self.base() {
            None => true,
            Some(b) => b.is_prime_field(),
        }
    }

    pub fn describe(&self) -> String {
        match self.base() {
            None => format!("F_{}", self.0.p),
            Some(b) => {
                let ring = PolyRing::new(b);
                let m = Poly::from_coeffs(self.modulus());
                format!("F_{} = {}[z]/({})", self.0.q, b.describe(), ring.format(&m, "z"))
            }
        }
    }

    /// Spec string that rebuilds this field (absolute fields only).
    pub fn spec_string(&self) -> String {
        if self.is_prime_field() {
            return format!("{}^1", self.0.p);
        }
        let coeffs: Vec<String> = self.0.modulus.iter().map(|v| v.to_string()).collect();
        format!("{}^{}:[{}]", self.0.p, self.0.k, coeffs.join(","))
    }

    /// Element with the given enumeration index.
    pub fn elem(&self, value: u32) -> Elem {
        assert!(value < self.0.q, "index {value} out of range for {}", self.describe());
        Elem { field: self.0.id, value }
    }

    pub fn zero(&self) -> Elem {
        self.elem(0)
    }

    pub fn one(&self) -> Elem {
        self.elem(1)
    }

    /// Image of an integer.
    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.0.p as i64;
        self.elem(n.rem_euclid(p) as u32)
    }

    /// Class of the adjoined variable over the base (`None` for prime fields).
    pub fn generator(&self) -> Option<Elem> {
        let b = self.base()?;
        Some(self.elem(b.order()))
    }

    /// Coordinates over the prime field, length [`Field::degree`].
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        self.check(a);
        let mut v = a.value;
        let p = self.0.p;
        (0..self.0.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    /// Element from prime-field coordinates (missing entries are zero).
    pub fn from_coords(&self, coords: &[i64]) -> Result<Elem, GfError> {
        if coords.len() > self.0.k as usize {
            return Err(GfError::BadSpec {
                spec: format!("{coords:?}"),
                reason: format!("more than {} coordinates", self.0.k),
            });
        }
        let p = self.0.p as i64;
        let v = coords
            .iter()
            .rev()
            .fold(0i64, |acc, &c| acc * p + c.rem_euclid(p));
        Ok(self.elem(v as u32))
    }

    /// Coordinates over the base field.
    pub fn base_coords(&self, a: Elem) -> Vec<Elem> {
        self.check(a);
        match self.base() {
            None => vec![a],
            Some(b) => {
                let qb = b.order();
                let mut v = a.value;
                (0..self.relative_degree())
                    .map(|_| {
                        let d = v % qb;
                        v /= qb;
                        b.elem(d)
                    })
                    .collect()
            }
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.q).map(move |v| self.elem(v))
    }

    #[inline]
    fn check(&self, a: Elem) {
        assert_eq!(a.field, self.0.id, "element from a different field used in {}", self.describe());
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let (mut out, mut place) = (0, 1);
        while a > 0 {
            let d = (p - a % p) % p;
            out += d * place;
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.check(a);
        self.check(b);
        Elem { field: a.field, value: self.add_raw(a.value, b.value) }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.check(a);
        self.check(b);
        Elem { field: a.field, value: self.sub_raw(a.value, b.value) }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.check(a);
        Elem { field: a.field, value: self.neg_raw(a.value) }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.check(a);
        self.check(b);
        Elem { field: a.field, value: self.mul_raw(a.value, b.value) }
    }

    /// Multiplicative inverse; panics on zero (see [`Field::arith`]).
    pub fn inv(&self, a: Elem) -> Elem {
        self.check(a);
        assert!(a.value != 0, "inverse of zero");
        let n = self.0.q - 1;
        let l = self.0.log[a.value as usize];
        Elem { field: a.field, value: self.0.exp[((n - l) % n) as usize] }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        self.check(a);
        let mut base = a;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// Checked arithmetic: rejects foreign elements and zero divisors.
    pub fn arith(&self, a: Elem, b: Elem, op: ArithOp) -> Result<Elem, GfError> {
        if a.field != self.0.id || b.field != self.0.id {
            return Err(GfError::ContextMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
            ArithOp::Pow(n) => self.pow(a, n),
            ArithOp::Inv => {
                if a.value == 0 {
                    return Err(GfError::DivisionByZero);
                }
                self.inv(a)
            }
            ArithOp::Div => {
                if b.value == 0 {
                    return Err(GfError::DivisionByZero);
                }
                self.div(a, b)
            }
        })
    }

    pub fn is_odd(&self) -> bool {
        self.0.p != 2
    }

    pub fn is_square(&self, a: Elem) -> bool {
        self.check(a);
        if !self.is_odd() || a.value == 0 {
            return true;
        }
        self.pow(a, ((self.0.q - 1) / 2) as u64) == self.one()
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn chi(&self, a: Elem) -> i8 {
        if a.value == 0 {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    /// A square root of `a`, the smaller of the two in enumeration order.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        self.check(a);
        if a.value == 0 {
            return Some(a);
        }
        let q = self.0.q as u64;
        if !self.is_odd() {
            return Some(self.pow(a, q / 2));
        }
        if !self.is_square(a) {
            return None;
        }
        if q < 64 {
            return self.elements().find(|&x| self.mul(x, x) == a);
        }
        let x = self.tonelli_shanks(a);
        let y = self.neg(x);
        Some(if y.value < x.value { y } else { x })
    }

    fn tonelli_shanks(&self, a: Elem) -> Elem {
        let q = self.0.q as u64;
        let mut s = 0;
        let mut t = q - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = self
            .elements()
            .find(|&c| !self.is_square(c))
            .expect("odd field has a non-square");
        let mut m = s;
        let mut c = self.pow(z, t);
        let mut r = self.pow(a, t.div_ceil(2));
        let mut tt = self.pow(a, t);
        while tt != self.one() {
            let mut i = 0;
            let mut probe = tt;
            while probe != self.one() {
                probe = self.mul(probe, probe);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            r = self.mul(r, b);
            c = self.mul(b, b);
            tt = self.mul(tt, c);
            m = i;
        }
        r
    }

    /// Absolute trace `F_q -> F_2` for characteristic 2.
    pub fn abs_trace2(&self, a: Elem) -> Result<u8, GfError> {
        self.check(a);
        if self.is_odd() {
            return Err(GfError::Characteristic { expected: "characteristic 2", found: self.0.p });
        }
        let mut acc = a;
        let mut x = a;
        for _ in 1..self.0.k {
            x = self.mul(x, x);
            acc = self.add(acc, x);
        }
        debug_assert!(acc.value <= 1);
        Ok(acc.value as u8)
    }

    /// Human-readable element; extension elements are written in the
    /// generator `w`.
    pub fn fmt_elem(&self, a: Elem) -> String {
        self.check(a);
        match self.base() {
            None => a.value.to_string(),
            Some(b) if b.is_prime_field() => {
                let coords = self.coords(a);
                let terms: Vec<String> = coords
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match (i, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "w".to_string(),
                        (1, c) => format!("{c}*w"),
                        (i, 1) => format!("w^{i}"),
                        (i, c) => format!("{c}*w^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            }
            Some(b) => {
                let parts: Vec<String> =
                    self.base_coords(a).into_iter().map(|c| b.fmt_elem(c)).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }
}

fn default_modulus(ring: &PolyRing, d: u32) -> Poly {
    let base = ring.field();
    let qb = base.order() as u64;
    let count = qb.pow(d);
    (0..count)
        .map(|idx| {
            let mut v = idx;
            let mut coeffs: Vec<Elem> = (0..d)
                .map(|_| {
                    let c = (v % qb) as u32;
                    v /= qb;
                    base.elem(c)
                })
                .collect();
            coeffs.push(base.one());
            Poly::from_coeffs(coeffs)
        })
        .find(|m| is_irreducible(ring, m))
        .expect("irreducible polynomials exist in every degree")
}

impl Ring for Field {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        Field::zero(self)
    }
    fn one(&self) -> Elem {
        Field::one(self)
    }
    fn from_int(&self, n: i64) -> Elem {
        Field::from_int(self, n)
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Field::add(self, *a, *b)
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Field::sub(self, *a, *b)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Field::mul(self, *a, *b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        Field::neg(self, *a)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        a.value == 0
    }
    fn pow(&self, a: &Elem, n: u64) -> Elem {
        Field::pow(self, *a, n)
    }
}

/// Parses `"p^k"`, `"p^k:[c0,c1,...,1]"` or a bare prime power `"q"`.
impl FromStr for Field {
    type Err = GfError;

    fn from_str(spec: &str) -> Result<Field, GfError> {
        let bad = |reason: &str| GfError::BadSpec { spec: spec.to_string(), reason: reason.to_string() };
        let spec_t: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let (size, modulus) = match spec_t.split_once(':') {
            Some((s, m)) => (s, Some(m)),
            None => (spec_t.as_str(), None),
        };
        let (p, k) = match size.split_once('^') {
            Some((p, k)) => {
                let p: u64 = p.parse().map_err(|_| bad("characteristic is not an integer"))?;
                let k: u32 = k.parse().map_err(|_| bad("degree is not an integer"))?;
                if !is_prime(p) {
                    return Err(GfError::NotPrime(p));
                }
                (p, k)
            }
            None => {
                let q: u64 = size.parse().map_err(|_| bad("order is not an integer"))?;
                prime_power(q).ok_or(GfError::NotPrimePower(q))?
            }
        };
        let coeffs = match modulus {
            None => None,
            Some(m) => {
                let inner = m
                    .strip_prefix('[')
                    .and_then(|m| m.strip_suffix(']'))
                    .ok_or_else(|| bad("modulus must be written [c0,c1,...]"))?;
                let parsed: Result<Vec<i64>, _> = inner.split(',').map(str::parse).collect();
                Some(parsed.map_err(|_| bad("modulus coefficient is not an integer"))?)
            }
        };
        Field::new(p, k, coeffs.as_deref())
    }
}

/// A relative extension `F_{q^d} / F_q` with Frobenius, trace and norm.
#[derive(Clone, Debug)]
pub struct ExtCtx {
    base: Field,
    ext: Field,
}

impl ExtCtx {
    pub fn new(base: &Field, d: u32) -> Result<ExtCtx, GfError> {
        if d < 2 {
            return Err(GfError::BadModulus("relative extension degree must be at least 2".into()));
        }
        Ok(ExtCtx { base: base.clone(), ext: Field::extension(base, d, None)? })
    }

    pub fn with_modulus(base: &Field, modulus: &[Elem]) -> Result<ExtCtx, GfError> {
        let d = modulus.len().saturating_sub(1) as u32;
        if d < 2 {
            return Err(GfError::BadModulus("relative extension degree must be at least 2".into()));
        }
        Ok(ExtCtx { base: base.clone(), ext: Field::extension(base, d, Some(modulus))? })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn field(&self) -> &Field {
        &self.ext
    }

    pub fn degree(&self) -> u32 {
        self.ext.relative_degree()
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.base.check(a);
        self.ext.elem(a.value)
    }

    /// Inverse of [`ExtCtx::embed`] on its image.
    pub fn restrict(&self, u: Elem) -> Option<Elem> {
        self.ext.check(u);
        (u.value < self.base.order()).then(|| self.base.elem(u.value))
    }

    pub fn frobenius(&self, u: Elem) -> Elem {
        self.ext.pow(u, self.base.order() as u64)
    }

    fn conjugates(&self, u: Elem) -> Vec<Elem> {
        let mut out = vec![u];
        for _ in 1..self.degree() {
            let next = self.frobenius(*out.last().unwrap());
            out.push(next);
        }
        out
    }

    pub fn trace(&self, u: Elem) -> Elem {
        let s = self.conjugates(u).into_iter().fold(self.ext.zero(), |acc, c| self.ext.add(acc, c));
        self.restrict(s).expect("trace lies in the base field")
    }

    pub fn norm(&self, u: Elem) -> Elem {
        let s = self.conjugates(u).into_iter().fold(self.ext.one(), |acc, c| self.ext.mul(acc, c));
        self.restrict(s).expect("norm lies in the base field")
    }

    /// `(trace, norm, frobenius)` of `u`.
    pub fn ext_ops(&self, u: Elem) -> (Elem, Elem, Elem) {
        (self.trace(u), self.norm(u), self.frobenius(u))
    }
}
