//! Sparse multivariate polynomials with exact rational coefficients.

mod order;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use order::MonomialOrder;
pub use parse::ParseError;

pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// An ordered list of variable names.
#[derive(Clone)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.vars.join(" "))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vars.join(" "))
    }
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Ring {
    pub fn new<I, S>(vars: I) -> Result<Ring>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_ident(v) {
                return Err(Error::Contract(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Contract(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring { vars: vars.into() })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::Contract(format!("variable `{name}` not in ring ({self})")))
    }

    pub fn var(&self, name: &str) -> Result<Poly> {
        Ok(self.gen(self.require(name)?))
    }

    pub fn gen(&self, i: usize) -> Poly {
        Poly::monomial(self, Monomial::var(self.nvars(), i, 1), Rational::one())
    }

    pub fn gens(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.gen(i)).collect()
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self, Rational::one())
    }

    pub fn int(&self, c: i64) -> Poly {
        Poly::constant(self, Rational::from_integer(c.into()))
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        parse::parse_poly(self, text).map_err(Error::Parse)
    }

    /// A name not yet used in the ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| self.index_of(n).is_none())
            .expect("unbounded search")
    }

    /// The ring with `extra` variables appended.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring> {
        Ring::new(
            self.vars
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }

    /// The ring with the named variables removed.
    pub fn without<S: AsRef<str>>(&self, drop: &[S]) -> Ring {
        let vars: Vec<String> = self
            .vars
            .iter()
            .filter(|v| !drop.iter().any(|d| d.as_ref() == v.as_str()))
            .cloned()
            .collect();
        Ring { vars: vars.into() }
    }
}

/// Exponent vector, one slot per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize, e: u16) -> Monomial {
        let mut m = Monomial::one(n);
        m.0[i] = e;
        m
    }

    pub fn from_exps(e: &[u16]) -> Monomial {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if it is a monomial.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    fn fmt_with(&self, ring: &Ring, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", ring.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

pub type Term = (Monomial, Rational);

/// A polynomial over the rationals. Terms are kept sorted in descending
/// degrevlex order with no zero coefficients, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: Vec<Term>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Poly {
        Poly::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Poly {
        debug_assert_eq!(m.0.len(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = Term>) -> Poly {
        let mut terms: Vec<Term> = terms.into_iter().collect();
        normalize_terms(&mut terms, &MonomialOrder::DegRevLex);
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; −1 for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .first()
            .map(|(m, _)| m.degree() as i64)
            .unwrap_or(-1)
    }

    pub fn min_degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree() as i64)
            .min()
            .unwrap_or(-1)
    }

    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms
            .iter()
            .map(|(m, _)| m.0[var] as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&Term> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn leading_coefficient(&self, order: &MonomialOrder) -> Option<&Rational> {
        self.leading_term(order).map(|(_, c)| c)
    }

    /// Scaled so the leading coefficient (degrevlex) is one.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Scaled to a primitive integer polynomial with positive leading
    /// coefficient (degrevlex).
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            let v = c.numer() * (&den / c.denom());
            num = num.gcd(&v);
        }
        let mut s = Rational::new(den, num);
        if self.terms[0].1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let e = m2.0[var];
                m2.0[var] -= 1;
                (m2, c * Rational::from_integer(BigInt::from(e)))
            });
        Poly::from_terms(&self.ring, terms)
    }

    /// The sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// Ring homomorphism sending variable i to `images[i]` (all in `target`).
    pub fn compose(&self, images: &[Poly], target: &Ring) -> Poly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Poly::zero(target);
        // cache powers per variable
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes `value` for variable `var`, staying in the same ring.
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        let images: Vec<Poly> = (0..self.ring.nvars())
            .map(|i| if i == var { value.clone() } else { self.ring.gen(i) })
            .collect();
        self.compose(&images, &self.ring)
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    /// Fails if a variable that actually occurs is missing from `target`.
    pub fn to_ring(&self, target: &Ring) -> Result<Poly> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.ring.vars.iter().map(|v| target.index_of(v)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.nvars());
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e.0[j] = x,
                    None => {
                        return Err(Error::Contract(format!(
                            "variable `{}` has no counterpart in ring ({target})",
                            self.ring.vars[i]
                        )))
                    }
                }
            }
            terms.push((e, c.clone()));
        }
        Ok(Poly::from_terms(target, terms))
    }

    /// Evaluates at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lm, lc) = divisor.terms[0].clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = lm.quotient_of(&m)?;
            let k = c / &lc;
            rem = &rem - &divisor.mul_monomial(&q, &k);
            quot.push((q, k));
        }
        Some(Poly::from_terms(&self.ring, quot))
    }

    fn check_ring(&self, other: &Poly) {
        assert!(
            self.ring == other.ring,
            "polynomials from different rings: ({}) vs ({})",
            self.ring,
            other.ring
        );
    }
}

/// Sorts descending under `order`, merges duplicates and drops zeros.
pub(crate) fn normalize_terms(terms: &mut Vec<Term>, order: &MonomialOrder) {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for (m, c) in terms.drain(..) {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if lc.is_zero() {
            out.pop();
        }
    }
    *terms = out;
}

/// Merges two descending term lists: `a + s * b`.
pub(crate) fn merge_add(a: &[Term], b: &[Term], s: &Rational, order: &MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), &b[j].1 * s));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 + &b[j].1 * s;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), c * s)));
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.check_ring(rhs);
        Poly {
            ring: self.ring.clone(),
            terms: merge_add(&self.terms, &rhs.terms, &Rational::one(), &MonomialOrder::DegRevLex),
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.check_ring(rhs);
        Poly {
            ring: self.ring.clone(),
            terms: merge_add(&self.terms, &rhs.terms, &-Rational::one(), &MonomialOrder::DegRevLex),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.check_ring(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ring);
        }
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let order = MonomialOrder::DegRevLex;
        let mut acc: Vec<Term> = Vec::new();
        for (m, c) in &small.terms {
            // multiplying by a monomial preserves a monomial order
            let row: Vec<Term> = big.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
            acc = merge_add(&acc, &row, &Rational::one(), &order);
        }
        Poly {
            ring: self.ring.clone(),
            terms: acc,
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &'a Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_rational(&abs))?;
                }
                m.fmt_with(&self.ring, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(["x", "y", "z", "t"]).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring();
        let x = r.var("x").unwrap();
        let t = r.var("t").unwrap();
        let p = &(&x + &t) * &(&x - &t);
        assert_eq!(p.to_string(), "x^2 - t^2");
        let q = r.parse("(x+t)^2 - 2*x*t").unwrap();
        assert_eq!(q, r.parse("x^2 + t^2").unwrap());
        assert_eq!(r.parse("3/2*x - 1/2").unwrap().to_string(), "3/2*x - 1/2");
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let p = r.parse("x^2 + y*z - t^2").unwrap();
        let q = r.parse("x - t").unwrap();
        let prod = &p * &q;
        assert_eq!(prod.div_exact(&q).unwrap(), p);
        assert!(p.div_exact(&q).is_none());
    }

    #[test]
    fn substitution_and_derivative() {
        let r = ring();
        let p = r.parse("x^2 + y*z - t^2").unwrap();
        let tz = r.parse("0").unwrap();
        assert_eq!(p.substitute(3, &tz), r.parse("x^2 + y*z").unwrap());
        assert_eq!(p.derivative(0), r.parse("2*x").unwrap());
        let sub = Ring::new(["x", "y", "z"]).unwrap();
        assert!(p.to_ring(&sub).is_err());
        assert_eq!(
            p.substitute(3, &tz).to_ring(&sub).unwrap().to_string(),
            "x^2 + y*z"
        );
    }

    #[test]
    fn primitive_and_monic() {
        let r = ring();
        let p = r.parse("-2/3*x + 4/3*y").unwrap();
        assert_eq!(p.primitive(), r.parse("x - 2*y").unwrap());
        assert_eq!(p.monic(), r.parse("x - 2*y").unwrap());
    }
}
