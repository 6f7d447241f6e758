//! Dense univariate polynomials over a [`Field`].
//!
//! Besides ring arithmetic this module has the small amount of polynomial
//! algebra the cubic criteria need: Euclid, resultants, the cubic
//! discriminant, decomposing a discriminant as `u * r(t)^2`, roots of
//! quadratics in both characteristics and roots of `S^2 + B S + C` of bounded
//! degree in `K[t]`.

use std::cmp::Ordering;

use thiserror::Error;

use crate::gf::{Elem, ExtCtx, Field, GfError};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("leading coefficient must be nonzero")]
    ZeroLeading,
    #[error("operation needs {0}")]
    Characteristic(&'static str),
    #[error("degree {0} exceeds the supported bound")]
    DegreeTooLarge(usize),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Ascending coefficients with no trailing zeros; the zero polynomial is empty
/// and has degree `None` (minus infinity).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.value() == 0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient indices, ascending.
    pub fn values(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    /// Order used for minimal representatives: degree first, then the
    /// coefficient vector from the constant term upwards.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.values().cmp(&other.values()))
    }
}

#[derive(Clone, Debug)]
pub struct PolyRing {
    field: Field,
}

impl PolyRing {
    pub fn new(field: &Field) -> PolyRing {
        PolyRing { field: field.clone() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn constant(&self, c: Elem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn x(&self) -> Poly {
        self.monomial(self.field.one(), 1)
    }

    pub fn monomial(&self, c: Elem, n: usize) -> Poly {
        let mut coeffs = vec![self.field.zero(); n + 1];
        coeffs[n] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| self.field.from_int(c)).collect())
    }

    pub fn coeff(&self, p: &Poly, i: usize) -> Elem {
        p.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_coeffs(
            (0..n).map(|i| self.field.add(self.coeff(a, i), self.coeff(b, i))).collect(),
        )
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::from_coeffs(
            (0..n).map(|i| self.field.sub(self.coeff(a, i), self.coeff(b, i))).collect(),
        )
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, c: Elem, a: &Poly) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.value() == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn divmod(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly), PolyError> {
        let db = b.degree().ok_or(PolyError::DivisionByZero)?;
        let inv_lc = self.field.inv(b.lc().unwrap());
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = self.field.mul(rem[top], inv_lc);
            if c.value() == 0 {
                continue;
            }
            quot[top - db] = c;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                let idx = top - db + j;
                rem[idx] = self.field.sub(rem[idx], self.field.mul(c, bj));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divmod(a, b)?.1)
    }

    pub fn eval(&self, p: &Poly, a: Elem) -> Elem {
        p.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| self.field.add(self.field.mul(acc, a), c))
    }

    /// `f(g(x))`.
    pub fn compose(&self, f: &Poly, g: &Poly) -> Poly {
        f.coeffs.iter().rev().fold(Poly::zero(), |acc, &c| {
            self.add(&self.mul(&acc, g), &self.constant(c))
        })
    }

    pub fn monic(&self, p: &Poly) -> Poly {
        match p.lc() {
            None => Poly::zero(),
            Some(lc) => self.scale(self.field.inv(lc), p),
        }
    }

    pub fn gcd_monic(&self, a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
        if a.is_zero() && b.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(self.monic(&a))
    }

    pub fn derivative(&self, p: &Poly) -> Poly {
        Poly::from_coeffs(
            p.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.field.mul(self.field.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn pow_mod(&self, base: &Poly, mut e: u64, m: &Poly) -> Result<Poly, PolyError> {
        let mut acc = self.rem(&self.constant(self.field.one()), m)?;
        let mut b = self.rem(base, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &b), m)?;
            }
            e >>= 1;
            if e > 0 {
                b = self.rem(&self.mul(&b, &b), m)?;
            }
        }
        Ok(acc)
    }

    /// Sylvester-determinant resultant, by the Euclidean recurrence.
    fn resultant_sylvester(&self, a: &Poly, b: &Poly) -> Elem {
        let f = &self.field;
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        if db == 0 {
            return f.pow(b.lc().unwrap(), da as u64);
        }
        if da == 0 {
            return f.pow(a.lc().unwrap(), db as u64);
        }
        let sign = |e: usize| if e % 2 == 1 { f.neg(f.one()) } else { f.one() };
        if da < db {
            return f.mul(sign(da * db), self.resultant_sylvester(b, a));
        }
        let r = self.rem(a, b).expect("b is nonzero");
        let Some(dr) = r.degree() else {
            return f.zero();
        };
        // Res(a, b) = (-1)^{da db} lc(b)^{da - dr} Res(b, r)
        let factor = f.mul(sign(da * db), f.pow(b.lc().unwrap(), (da - dr) as u64));
        f.mul(factor, self.resultant_sylvester(b, &r))
    }

    /// `Res(f, g) = lc(g)^{deg f} * prod_{g(b) = 0} f(b)`, so that
    /// `Res(x - a, x - b) = b - a`. This is `(-1)^{deg f deg g}` times the
    /// Sylvester determinant.
    pub fn resultant(&self, f: &Poly, g: &Poly) -> Result<Elem, PolyError> {
        if f.is_zero() || g.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let s = self.resultant_sylvester(f, g);
        let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
        Ok(if (df * dg) % 2 == 1 { self.field.neg(s) } else { s })
    }

    /// Maps coefficients into the extension field.
    pub fn lift(&self, ext: &ExtCtx, p: &Poly) -> Poly {
        Poly::from_coeffs(p.coeffs.iter().map(|&c| ext.embed(c)).collect())
    }

    pub fn format(&self, p: &Poly, var: &str) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = p
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| c.value() != 0)
            .map(|(i, &c)| {
                let mut cs = self.field.fmt_elem(c);
                if cs.contains('+') {
                    cs = format!("({cs})");
                }
                let one = c == self.field.one();
                match i {
                    0 => cs,
                    1 if one => var.to_string(),
                    1 => format!("{cs}*{var}"),
                    _ if one => format!("{var}^{i}"),
                    _ => format!("{cs}*{var}^{i}"),
                }
            })
            .collect();
        terms.join("+")
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        PolyRing::one(self)
    }
    fn from_int(&self, n: i64) -> Poly {
        self.constant(self.field.from_int(n))
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        PolyRing::add(self, a, b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        PolyRing::sub(self, a, b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        PolyRing::mul(self, a, b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        PolyRing::neg(self, a)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}

/// Discriminant of `c3 x^3 + c2 x^2 + c1 x + c0` over any commutative ring.
pub fn cubic_discriminant<R: Ring>(
    r: &R,
    c3: &R::Elem,
    c2: &R::Elem,
    c1: &R::Elem,
    c0: &R::Elem,
) -> R::Elem {
    let prod = |xs: &[&R::Elem]| xs.iter().fold(r.one(), |acc, x| r.mul(&acc, x));
    let t1 = r.scale_int(18, &prod(&[c3, c2, c1, c0]));
    let t2 = r.scale_int(-4, &prod(&[c2, c2, c2, c0]));
    let t3 = prod(&[c2, c2, c1, c1]);
    let t4 = r.scale_int(-4, &prod(&[c3, c1, c1, c1]));
    let t5 = r.scale_int(-27, &prod(&[c3, c3, c0, c0]));
    [t2, t3, t4, t5].iter().fold(t1, |acc, t| r.add(&acc, t))
}

/// Field version of [`cubic_discriminant`] that rejects a vanishing leading
/// coefficient.
pub fn cubic_discriminant_checked(
    field: &Field,
    c3: Elem,
    c2: Elem,
    c1: Elem,
    c0: Elem,
) -> Result<Elem, PolyError> {
    if c3.value() == 0 {
        return Err(PolyError::ZeroLeading);
    }
    Ok(cubic_discriminant(field, &c3, &c2, &c1, &c0))
}

/// Writes `delta = u * r^2` with `r` monic and `u = lc(delta)`, if possible.
pub fn const_square_decompose(
    ring: &PolyRing,
    delta: &Poly,
) -> Result<Option<(Elem, Poly)>, PolyError> {
    let f = ring.field();
    if !f.is_odd() {
        return Err(PolyError::Characteristic("odd characteristic"));
    }
    let deg = delta.degree().ok_or(PolyError::ZeroInput)?;
    if deg % 2 == 1 {
        return Ok(None);
    }
    let u = delta.lc().unwrap();
    let target = ring.monic(delta);
    let m = deg / 2;
    let mut r = vec![f.zero(); m + 1];
    r[m] = f.one();
    let half = f.inv(f.from_int(2));
    for i in (0..m).rev() {
        // coefficient of t^{m+i} in r^2 is 2 r_i + sum_{j,k > i, j+k = m+i} r_j r_k
        let mut known = f.zero();
        for j in (i + 1)..=m {
            let k = m + i - j;
            if k > i && k <= m {
                known = f.add(known, f.mul(r[j], r[k]));
            }
        }
        r[i] = f.mul(half, f.sub(ring.coeff(&target, m + i), known));
    }
    let r = Poly::from_coeffs(r);
    Ok((ring.mul(&r, &r) == target).then_some((u, r)))
}

/// Solves `s^2 + s = delta` over a characteristic-2 field by linear algebra
/// over `F_2` (index bits are the `F_2`-coordinates).
fn artin_schreier(field: &Field, delta: Elem) -> Option<Elem> {
    let n = field.degree() as usize;
    let mut basis: Vec<Option<(u32, u32)>> = vec![None; n];
    for i in 0..n {
        let e = field.elem(1 << i);
        let mut v = field.add(field.mul(e, e), e).value();
        let mut combo = 1u32 << i;
        for lead in (0..n).rev() {
            if v >> lead & 1 == 0 {
                continue;
            }
            match basis[lead] {
                Some((bv, bc)) => {
                    v ^= bv;
                    combo ^= bc;
                }
                None => {
                    basis[lead] = Some((v, combo));
                    break;
                }
            }
        }
    }
    let mut v = delta.value();
    let mut combo = 0u32;
    for lead in (0..n).rev() {
        if v >> lead & 1 == 0 {
            continue;
        }
        let (bv, bc) = basis[lead]?;
        v ^= bv;
        combo ^= bc;
    }
    (v == 0).then(|| field.elem(combo))
}

/// Roots of `x^2 + beta x + gamma` in `field`, sorted and distinct.
pub fn quad_roots(field: &Field, beta: Elem, gamma: Elem) -> Vec<Elem> {
    let mut roots = if field.is_odd() {
        let disc = field.sub(field.mul(beta, beta), field.mul(field.from_int(4), gamma));
        match field.sqrt(disc) {
            None => Vec::new(),
            Some(r) => {
                let half = field.inv(field.from_int(2));
                let mb = field.neg(beta);
                vec![field.mul(half, field.add(mb, r)), field.mul(half, field.sub(mb, r))]
            }
        }
    } else if beta.value() == 0 {
        vec![field.sqrt(gamma).expect("every element is a square in characteristic 2")]
    } else {
        let delta = field.div(gamma, field.mul(beta, beta));
        match artin_schreier(field, delta) {
            None => Vec::new(),
            Some(s) => vec![field.mul(beta, s), field.mul(beta, field.add(s, field.one()))],
        }
    };
    roots.sort();
    roots.dedup();
    roots
}

/// All `S` with `deg S <= deg_bound` and `S^2 + B S + C = 0` in `K[t]`.
///
/// A root is pinned down by its values at `deg_bound + 1` points of the
/// projective line. At each point the value solves a quadratic over `K`; the
/// point at infinity (leading coefficients) is used first when the degrees of
/// `B` and `C` allow it. Every candidate is checked by full expansion.
pub fn bounded_poly_root(ring: &PolyRing, b: &Poly, c: &Poly, deg_bound: usize) -> Vec<Poly> {
    let f = ring.field();
    let d = deg_bound;
    let q = f.order() as usize;
    let use_inf = b.degree().is_none_or(|x| x <= d) && c.degree().is_none_or(|x| x <= 2 * d);
    let finite = if use_inf { d } else { d + 1 };
    let check = |s: &Poly| {
        let lhs = ring.add(&ring.add(&ring.mul(s, s), &ring.mul(b, s)), c);
        lhs.is_zero()
    };

    let mut found: Vec<Poly> = Vec::new();
    if finite > q {
        // tiny field: enumerate every candidate
        let total = (q as u64).pow(d as u32 + 1);
        for idx in 0..total {
            let mut v = idx;
            let coeffs: Vec<Elem> = (0..=d)
                .map(|_| {
                    let e = f.elem((v % q as u64) as u32);
                    v /= q as u64;
                    e
                })
                .collect();
            let s = Poly::from_coeffs(coeffs);
            if check(&s) {
                found.push(s);
            }
        }
    } else {
        let points: Vec<Elem> = f.elements().take(finite).collect();
        let mut choices: Vec<Vec<Elem>> = Vec::new();
        if use_inf {
            choices.push(quad_roots(f, ring.coeff(b, d), ring.coeff(c, 2 * d)));
        }
        for &tau in &points {
            choices.push(quad_roots(f, ring.eval(b, tau), ring.eval(c, tau)));
        }
        if choices.iter().any(Vec::is_empty) {
            return Vec::new();
        }
        let mut idx = vec![0usize; choices.len()];
        loop {
            let picked: Vec<Elem> = idx.iter().zip(&choices).map(|(&i, ch)| ch[i]).collect();
            let s = if use_inf {
                let lead = ring.monomial(picked[0], d);
                let values: Vec<Elem> = points
                    .iter()
                    .zip(&picked[1..])
                    .map(|(&tau, &y)| f.sub(y, ring.eval(&lead, tau)))
                    .collect();
                ring.add(&lead, &interpolate(ring, &points, &values))
            } else {
                interpolate(ring, &points, &picked)
            };
            if check(&s) && !found.contains(&s) {
                found.push(s);
            }
            // odometer over the per-point choices
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    found.sort_by(|x, y| x.cmp_canonical(y));
    found.dedup();
    found
}

/// Lagrange interpolation through `(points[i], values[i])`.
fn interpolate(ring: &PolyRing, points: &[Elem], values: &[Elem]) -> Poly {
    let f = ring.field();
    let mut acc = Poly::zero();
    for (i, (&xi, &yi)) in points.iter().zip(values).enumerate() {
        if yi.value() == 0 {
            continue;
        }
        let mut basis = ring.one();
        let mut denom = f.one();
        for (j, &xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = ring.mul(&basis, &Poly::from_coeffs(vec![f.neg(xj), f.one()]));
            denom = f.mul(denom, f.sub(xi, xj));
        }
        acc = ring.add(&acc, &ring.scale(f.div(yi, denom), &basis));
    }
    acc
}

/// Irreducibility for degree at most 4: no roots, and for degree 4 no monic
/// irreducible quadratic factor.
pub fn is_irreducible_small(ring: &PolyRing, p: &Poly) -> Result<bool, PolyError> {
    let f = ring.field();
    let deg = p.degree().ok_or(PolyError::ZeroInput)?;
    if deg > 4 {
        return Err(PolyError::DegreeTooLarge(deg));
    }
    if deg == 0 {
        return Ok(false);
    }
    if deg == 1 {
        return Ok(true);
    }
    if f.elements().any(|a| ring.eval(p, a).value() == 0) {
        return Ok(false);
    }
    if deg < 4 {
        return Ok(true);
    }
    for c1 in f.elements() {
        for c0 in f.elements() {
            let quad = Poly::from_coeffs(vec![c0, c1, f.one()]);
            if f.elements().all(|a| ring.eval(&quad, a).value() != 0)
                && ring.rem(p, &quad)?.is_zero()
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ben-Or irreducibility test: no factor of degree `<= n/2`, checked through
/// `gcd(x^{Q^i} - x, p)`.
pub fn is_irreducible(ring: &PolyRing, p: &Poly) -> bool {
    let Some(n) = p.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let p = ring.monic(p);
    let q = ring.field().order() as u64;
    let x = ring.x();
    let mut h = ring.rem(&x, &p).unwrap();
    for _ in 0..n / 2 {
        h = ring.pow_mod(&h, q, &p).unwrap();
        let g = ring.gcd_monic(&ring.sub(&h, &x), &p).unwrap();
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(spec: &str) -> (Field, PolyRing) {
        let f: Field = spec.parse().unwrap();
        let r = PolyRing::new(&f);
        (f, r)
    }

    /// Sylvester determinant by Gaussian elimination (test oracle).
    fn sylvester_det(ring: &PolyRing, a: &Poly, b: &Poly) -> Elem {
        let f = ring.field();
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let size = m + n;
        if size == 0 {
            return f.one();
        }
        let mut mat = vec![vec![f.zero(); size]; size];
        for row in 0..n {
            for (i, &c) in a.coeffs().iter().rev().enumerate() {
                mat[row][row + i] = c;
            }
        }
        for row in 0..m {
            for (i, &c) in b.coeffs().iter().rev().enumerate() {
                mat[n + row][row + i] = c;
            }
        }
        let mut det = f.one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| mat[r][col].value() != 0) else {
                return f.zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = f.neg(det);
            }
            det = f.mul(det, mat[col][col]);
            let inv = f.inv(mat[col][col]);
            for r in (col + 1)..size {
                let factor = f.mul(mat[r][col], inv);
                for c in col..size {
                    mat[r][c] = f.sub(mat[r][c], f.mul(factor, mat[col][c]));
                }
            }
        }
        det
    }

    #[test]
    fn arithmetic_examples() {
        let (_, r2) = setup("2");
        let prod = r2.mul(&r2.from_ints(&[1, 0, 1]), &r2.from_ints(&[1, 1]));
        assert_eq!(prod, r2.from_ints(&[1, 1, 1, 1]));

        let (f7, r7) = setup("7");
        let (q, rem) = r7.divmod(&r7.from_ints(&[0, 0, 0, 1]), &r7.from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(q, r7.from_ints(&[0, 1]));
        assert_eq!(rem, r7.from_ints(&[0, -1]));
        assert_eq!(r7.eval(&r7.from_ints(&[0, 1, 0, 1]), f7.from_int(2)), f7.from_int(3));
        assert_eq!(r7.divmod(&q, &Poly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        let (_, r7) = setup("7");
        let g = r7.gcd_monic(&r7.from_ints(&[-1, 0, 1]), &r7.from_ints(&[-1, 1])).unwrap();
        assert_eq!(g, r7.from_ints(&[6, 1]));
        let (_, r2) = setup("2");
        let g = r2.gcd_monic(&r2.from_ints(&[0, 1, 0, 1]), &r2.from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(g, r2.from_ints(&[1, 0, 1]));
        assert_eq!(r2.gcd_monic(&r2.from_ints(&[0, 1, 1]), &r2.one()).unwrap(), r2.one());
        assert_eq!(r2.gcd_monic(&Poly::zero(), &Poly::zero()), Err(PolyError::BothZero));
    }

    #[test]
    fn derivative_examples() {
        let (f3, r3) = setup("3");
        let a = f3.from_int(2);
        let p = Poly::from_coeffs(vec![f3.zero(), a, f3.zero(), f3.one()]);
        assert_eq!(r3.derivative(&p), r3.constant(a));
        let (_, r7) = setup("7");
        assert_eq!(r7.derivative(&r7.from_ints(&[0, 0, 0, 1])), r7.from_ints(&[0, 0, 3]));
        let (_, r2) = setup("2");
        assert!(r2.derivative(&r2.from_ints(&[0, 0, 1, 0, 1])).is_zero());
    }

    #[test]
    fn resultant_examples() {
        let (f7, r7) = setup("7");
        for a in f7.elements() {
            for b in f7.elements() {
                let fa = Poly::from_coeffs(vec![f7.neg(a), f7.one()]);
                let fb = Poly::from_coeffs(vec![f7.neg(b), f7.one()]);
                assert_eq!(r7.resultant(&fa, &fb).unwrap(), f7.sub(b, a));
            }
        }
        let (f3, r3) = setup("3");
        assert_eq!(r3.resultant(&r3.from_ints(&[1, 0, 1]), &r3.x()).unwrap(), f3.one());
        let p = r3.from_ints(&[1, 2, 0, 1]);
        assert_eq!(r3.resultant(&p, &p).unwrap(), f3.zero());
        assert!(r3.resultant(&p, &Poly::zero()).is_err());
    }

    #[test]
    fn resultant_matches_signed_sylvester() {
        let (f5, r5) = setup("5");
        let polys: Vec<Poly> = (1..200u32)
            .map(|i| {
                let cs = [i % 5, (i / 5) % 5, (i / 25) % 5, (i / 125) % 5];
                Poly::from_coeffs(cs.iter().map(|&c| f5.elem(c)).collect())
            })
            .filter(|p| !p.is_zero())
            .collect();
        for a in polys.iter().step_by(7) {
            for b in polys.iter().step_by(5) {
                let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
                let syl = sylvester_det(&r5, a, b);
                let expect = if da * db % 2 == 1 { f5.neg(syl) } else { syl };
                assert_eq!(r5.resultant(a, b).unwrap(), expect);
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        let (f7, _) = setup("7");
        let (o, z) = (f7.one(), f7.zero());
        assert_eq!(cubic_discriminant_checked(&f7, o, z, z, f7.from_int(-1)).unwrap(), f7.from_int(1));
        assert_eq!(cubic_discriminant_checked(&f7, o, z, z, z).unwrap(), z);
        assert_eq!(cubic_discriminant_checked(&f7, z, o, o, o), Err(PolyError::ZeroLeading));
    }

    fn monic_cubics(f: &Field) -> Vec<Poly> {
        let q = f.order();
        (0..q * q * q)
            .map(|i| {
                Poly::from_coeffs(vec![f.elem(i % q), f.elem((i / q) % q), f.elem(i / q / q), f.one()])
            })
            .collect()
    }

    #[test]
    fn discriminant_vs_resultant_and_gcd() {
        for spec in ["3", "5", "7", "9"] {
            let (f, r) = setup(spec);
            for p in monic_cubics(&f) {
                let c = p.coeffs();
                let disc = cubic_discriminant(&f, &c[3], &c[2], &c[1], &c[0]);
                let g = r.gcd_monic(&p, &r.derivative(&p)).unwrap();
                assert_eq!(disc.value() == 0, g.degree() != Some(0), "{spec}: {p:?}");
                if spec == "5" || spec == "7" {
                    let res = r.resultant(&p, &r.derivative(&p)).unwrap();
                    assert_eq!(disc, f.neg(res));
                }
            }
        }
    }

    #[test]
    fn square_decomposition() {
        let (f7, r7) = setup("7");
        let s = r7.from_ints(&[1, 0, 1]);
        let delta = r7.scale(f7.from_int(3), &r7.mul(&s, &s));
        assert_eq!(const_square_decompose(&r7, &delta).unwrap(), Some((f7.from_int(3), s)));
        let (_, r5) = setup("5");
        assert_eq!(const_square_decompose(&r5, &r5.from_ints(&[0, 0, 0, 1])).unwrap(), None);
        assert_eq!(const_square_decompose(&r5, &Poly::zero()), Err(PolyError::ZeroInput));
        let (_, r4) = setup("4");
        assert!(const_square_decompose(&r4, &r4.one()).is_err());
    }

    #[test]
    fn square_decomposition_exhaustive() {
        for spec in ["3", "5", "7"] {
            let (f, r) = setup(spec);
            let q = f.order();
            for i in 1..q.pow(5) {
                let coeffs: Vec<Elem> = (0..5).map(|j| f.elem((i / q.pow(j)) % q)).collect();
                let delta = Poly::from_coeffs(coeffs);
                let got = const_square_decompose(&r, &delta).unwrap();
                let deg = delta.degree().unwrap();
                let brute = (deg % 2 == 0)
                    && (0..q.pow(deg as u32 / 2)).any(|j| {
                        let mut cs: Vec<Elem> =
                            (0..deg / 2).map(|t| f.elem((j / q.pow(t as u32)) % q)).collect();
                        cs.push(f.one());
                        let rr = Poly::from_coeffs(cs);
                        r.scale(delta.lc().unwrap(), &r.mul(&rr, &rr)) == delta
                    });
                assert_eq!(got.is_some(), brute, "{spec} {delta:?}");
                if let Some((u, rr)) = got {
                    assert_eq!(r.scale(u, &r.mul(&rr, &rr)), delta);
                    assert_eq!(rr.lc(), Some(f.one()));
                }
            }
        }
    }

    #[test]
    fn quadratic_roots() {
        let (f2, _) = setup("2");
        assert!(quad_roots(&f2, f2.one(), f2.one()).is_empty());
        let (f4, _) = setup("4");
        let w = f4.generator().unwrap();
        let mut expect = vec![w, f4.mul(w, w)];
        expect.sort();
        assert_eq!(quad_roots(&f4, f4.one(), f4.one()), expect);
        let (f7, _) = setup("7");
        assert_eq!(quad_roots(&f7, f7.zero(), f7.from_int(-2)), vec![f7.from_int(3), f7.from_int(4)]);
    }

    #[test]
    fn quadratic_roots_exhaustive() {
        for spec in ["2", "3", "4", "5", "8", "9", "16"] {
            let (f, _) = setup(spec);
            for beta in f.elements() {
                for gamma in f.elements() {
                    let roots = quad_roots(&f, beta, gamma);
                    let brute: Vec<Elem> = f
                        .elements()
                        .filter(|&x| f.add(f.mul(x, f.add(x, beta)), gamma).value() == 0)
                        .collect();
                    assert_eq!(roots, brute);
                    if !f.is_odd() && beta.value() != 0 {
                        let tr = f.abs_trace2(f.div(gamma, f.mul(beta, beta))).unwrap();
                        assert_eq!(roots.is_empty(), tr == 1);
                    }
                }
            }
        }
    }

    #[test]
    fn bounded_roots_examples() {
        let (f4, r4) = setup("4");
        let t2 = r4.monomial(f4.one(), 2);
        assert_eq!(bounded_poly_root(&r4, &Poly::zero(), &t2, 2), vec![r4.x()]);
        let (_, r2) = setup("2");
        assert!(bounded_poly_root(&r2, &r2.one(), &r2.one(), 2).is_empty());
    }

    #[test]
    fn bounded_roots_exhaustive() {
        for spec in ["2", "3", "4"] {
            let (f, r) = setup(spec);
            let q = f.order();
            let all_polys = |maxdeg: u32| -> Vec<Poly> {
                (0..q.pow(maxdeg + 1))
                    .map(|i| {
                        Poly::from_coeffs(
                            (0..=maxdeg).map(|j| f.elem((i / q.pow(j)) % q)).collect(),
                        )
                    })
                    .collect()
            };
            let bs = all_polys(2);
            let cs: Vec<Poly> = all_polys(4).into_iter().step_by(if q > 2 { 7 } else { 1 }).collect();
            for d in 0..=2u32 {
                let cands = all_polys(d);
                for b in bs.iter().step_by(if q > 3 { 5 } else { 1 }) {
                    for c in &cs {
                        let got = bounded_poly_root(&r, b, c, d as usize);
                        let mut brute: Vec<Poly> = cands
                            .iter()
                            .filter(|s| r.add(&r.add(&r.mul(s, s), &r.mul(b, s)), c).is_zero())
                            .cloned()
                            .collect();
                        brute.sort_by(|x, y| x.cmp_canonical(y));
                        assert_eq!(got, brute, "{spec} d={d} B={b:?} C={c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn irreducibility() {
        let (_, r2) = setup("2");
        assert!(is_irreducible_small(&r2, &r2.from_ints(&[1, 1, 1])).unwrap());
        assert!(!is_irreducible_small(&r2, &r2.from_ints(&[1, 0, 1])).unwrap());
        assert!(is_irreducible_small(&r2, &r2.from_ints(&[1, 1, 0, 1])).unwrap());
        assert!(is_irreducible_small(&r2, &r2.from_ints(&[1, 0, 0, 0, 0, 1])).is_err());
        // (x^2+x+1)^2 has no roots but is reducible
        assert!(!is_irreducible_small(&r2, &r2.from_ints(&[1, 0, 1, 0, 1])).unwrap());
        assert!(is_irreducible_small(&r2, &r2.from_ints(&[1, 1, 0, 0, 1])).unwrap());
    }

    #[test]
    fn general_irreducibility_agrees_with_small() {
        for spec in ["2", "3", "4"] {
            let (f, r) = setup(spec);
            let q = f.order();
            for deg in 1..=4u32 {
                for i in 0..q.pow(deg) {
                    let mut cs: Vec<Elem> = (0..deg).map(|j| f.elem((i / q.pow(j)) % q)).collect();
                    cs.push(f.one());
                    let p = Poly::from_coeffs(cs);
                    assert_eq!(is_irreducible(&r, &p), is_irreducible_small(&r, &p).unwrap());
                }
            }
        }
    }
}
