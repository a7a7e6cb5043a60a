//! Zero-dimensional ideals: rational points, point counts and local lengths.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::Ideal;
use crate::poly::{Monomial, MonomialOrder, Poly, Rational, Ring};

/// Dense univariate polynomial, constant term first.
pub type UPoly = Vec<Rational>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Dense coefficients of `p` in variable `var`; `None` if other variables occur.
pub fn to_univariate(p: &Poly, var: usize) -> Option<UPoly> {
    let mut out = vec![Rational::zero(); p.degree_in(var).max(0) as usize + 1];
    for (m, c) in p.terms() {
        if m.exps().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
            return None;
        }
        out[m.exps()[var] as usize] += c;
    }
    Some(trim(out))
}

pub fn from_univariate(ring: &Ring, var: usize, p: &UPoly) -> Poly {
    let n = ring.nvars();
    Poly::from_terms(
        ring,
        p.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Monomial::var(n, var, e as u16), c.clone())),
    )
}

fn u_rem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let q = &r[k] / &lb;
        for i in 0..=db {
            let t = &q * &b[i];
            r[k - db + i] -= t;
        }
        r = trim(r);
    }
    r
}

fn u_div(a: &UPoly, b: &UPoly) -> UPoly {
    let db = b.len() - 1;
    if a.len() <= db {
        return Vec::new();
    }
    let mut r = a.clone();
    let mut q = vec![Rational::zero(); a.len() - db];
    let lb = b[db].clone();
    for k in (db..a.len()).rev() {
        let c = &r[k] / &lb;
        for i in 0..=db {
            let t = &c * &b[i];
            r[k - db + i] -= t;
        }
        q[k - db] = c;
    }
    trim(q)
}

fn u_monic(p: UPoly) -> UPoly {
    match p.last() {
        Some(l) if !l.is_one() => {
            let l = l.clone();
            p.into_iter().map(|c| c / &l).collect()
        }
        _ => p,
    }
}

pub fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = u_rem(&a, &b);
        a = b;
        b = r;
    }
    u_monic(a)
}

fn u_derivative(p: &UPoly) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &UPoly) -> UPoly {
    let p = trim(p.clone());
    if p.len() <= 1 {
        return u_monic(p);
    }
    let g = u_gcd(&p, &u_derivative(&p));
    u_monic(u_div(&p, &g))
}

fn u_eval(p: &UPoly, x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let small = n.to_u64()?;
    if small > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots by the rational root test. Returns `None` when the
/// coefficients are too large to enumerate candidates.
pub fn rational_roots(p: &UPoly) -> Option<Vec<Rational>> {
    let p = squarefree_part(p);
    if p.len() <= 1 {
        return Some(Vec::new());
    }
    // clear denominators
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(Rational::zero());
        let k = ints.iter().position(|c| !c.is_zero()).expect("nonzero poly");
        ints.drain(..k);
    }
    if ints.len() > 1 {
        let a0 = divisors(&ints[0])?;
        let an = divisors(ints.last().expect("nonempty"))?;
        let up: UPoly = ints.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let mut seen = BTreeSet::new();
        for a in &a0 {
            for b in &an {
                for s in [1, -1] {
                    let r = Rational::new(a * BigInt::from(s), b.clone());
                    if seen.insert(r.clone()) && u_eval(&up, &r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

fn require_zero_dim(i: &Ideal) -> Result<()> {
    match i.dimension() {
        0 | -1 => Ok(()),
        d => Err(Error::Contract(format!("expected a zero-dimensional ideal, got dimension {d}"))),
    }
}

/// The rational points of `V(I)` for zero-dimensional `I`, found by
/// back-substitution through a lex basis. `complete` is false when some
/// univariate factor could not be searched for roots.
pub struct PointSet {
    pub points: Vec<Vec<Rational>>,
    pub complete: bool,
}

pub fn rational_points(i: &Ideal) -> Result<PointSet> {
    require_zero_dim(i)?;
    let ring = i.ring();
    let n = ring.nvars();
    if i.is_unit() {
        return Ok(PointSet {
            points: Vec::new(),
            complete: true,
        });
    }
    let gb = i.groebner_basis(&MonomialOrder::Lex);
    let polys = gb.polys();
    let mut complete = true;
    // partial assignments for variables k..n
    let mut partial: Vec<Vec<Rational>> = vec![Vec::new()];
    for k in (0..n).rev() {
        let level: Vec<&Poly> = polys
            .iter()
            .filter(|p| (0..k).all(|j| !p.involves(j)))
            .collect();
        let mut next = Vec::new();
        for a in &partial {
            // a holds values for variables k+1..n
            let mut g: Option<UPoly> = None;
            for p in &level {
                let mut q = (*p).clone();
                for (off, val) in a.iter().enumerate() {
                    q = q.substitute(k + 1 + off, &Poly::constant(ring, val.clone()));
                }
                if q.is_zero() {
                    continue;
                }
                let u = to_univariate(&q, k).expect("lex triangular shape");
                g = Some(match g {
                    None => u,
                    Some(h) => u_gcd(&h, &u),
                });
            }
            let roots = match g {
                None => {
                    return Err(Error::Contract("variable unconstrained in a zero-dimensional ideal".into()))
                }
                Some(u) => match rational_roots(&u) {
                    Some(r) => {
                        if r.len() < squarefree_part(&u).len() - 1 {
                            complete = false;
                        }
                        r
                    }
                    None => {
                        complete = false;
                        Vec::new()
                    }
                },
            };
            for r in roots {
                let mut b = vec![r];
                b.extend(a.iter().cloned());
                next.push(b);
            }
        }
        partial = next;
    }
    partial.sort();
    Ok(PointSet {
        points: partial,
        complete,
    })
}

/// Standard monomials of a zero-dimensional degrevlex basis.
fn standard_monomials(gb: &GroebnerBasis, n: usize) -> Vec<Monomial> {
    let lms = gb.leading_monomials();
    let mut out = Vec::new();
    let mut frontier = vec![Monomial::one(n)];
    let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
    while let Some(m) = frontier.pop() {
        if !seen.insert(m.exps().to_vec()) || lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for v in 0..n {
            frontier.push(m.mul(&Monomial::var(n, v, 1)));
        }
        out.push(m);
    }
    out
}

/// Minimal polynomial of the variable `var` in `k[x]/I` (zero-dimensional I).
pub fn eliminant(i: &Ideal, var: usize) -> Result<UPoly> {
    require_zero_dim(i)?;
    if i.is_unit() {
        return Ok(vec![Rational::one()]);
    }
    let ring = i.ring();
    let gb = i.gb();
    let basis = standard_monomials(gb, ring.nvars());
    let index: BTreeMap<Vec<u16>, usize> =
        basis.iter().enumerate().map(|(k, m)| (m.exps().to_vec(), k)).collect();
    let to_vec = |p: &Poly| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); basis.len()];
        for (m, c) in p.terms() {
            v[index[m.exps()]] = c.clone();
        }
        v
    };
    // rows: reduced echelon vectors, each with a combination of powers
    let mut rows: Vec<(Vec<Rational>, UPoly)> = Vec::new();
    let x = ring.gen(var);
    let mut power = ring.one();
    for d in 0..=basis.len() {
        let mut v = to_vec(&gb.normal_form(&power));
        let mut comb: UPoly = vec![Rational::zero(); d + 1];
        comb[d] = Rational::one();
        for (rv, rc) in &rows {
            let piv = rv.iter().position(|c| !c.is_zero()).expect("nonzero row");
            if !v[piv].is_zero() {
                let f = &v[piv] / &rv[piv];
                for k in 0..v.len() {
                    let t = &f * &rv[k];
                    v[k] -= t;
                }
                for k in 0..rc.len() {
                    let t = &f * &rc[k];
                    comb[k] -= t;
                }
            }
        }
        if v.iter().all(|c| c.is_zero()) {
            return Ok(u_monic(trim(comb)));
        }
        rows.push((v, comb));
        power = &power * &x;
    }
    unreachable!("dependence within dim+1 powers")
}

/// Number of distinct points of `V(I)` over the algebraic closure.
pub fn point_count(i: &Ideal) -> Result<u64> {
    let rad = radical_zero_dim(i)?;
    Ok(rad.length().expect("zero-dimensional"))
}

/// Radical of a zero-dimensional ideal (Seidenberg).
pub fn radical_zero_dim(i: &Ideal) -> Result<Ideal> {
    require_zero_dim(i)?;
    let ring = i.ring();
    let mut extra = Vec::new();
    for v in 0..ring.nvars() {
        let e = eliminant(i, v)?;
        extra.push(from_univariate(ring, v, &squarefree_part(&e)));
    }
    Ok(i.with(extra))
}

/// Moves `point` to the origin: variable i becomes `x_i + point_i`.
pub fn translate(p: &Poly, point: &[Rational]) -> Poly {
    let ring = p.ring();
    let images: Vec<Poly> = (0..ring.nvars())
        .map(|k| &ring.gen(k) + &Poly::constant(ring, point[k].clone()))
        .collect();
    p.compose(&images, ring)
}

/// All monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if cur.len() + 1 == n {
            cur.push(left as u16);
            out.push(Monomial::from_exps(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u16);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Length of the local ring `(k[x]/I)` at a rational point, by stabilizing
/// `length(I + m^k)`. `None` if it fails to stabilize by `max_k`
/// (the point lies on a positive-dimensional component).
pub fn local_length(i: &Ideal, point: &[Rational], max_k: u32) -> Option<u64> {
    let ring = i.ring();
    let n = ring.nvars();
    let moved = Ideal::new(ring, i.gens().iter().map(|g| translate(g, point)).collect()).expect("same ring");
    let mut prev: Option<u64> = None;
    for k in 1..=max_k {
        let powers = monomials_of_degree(n, k)
            .into_iter()
            .map(|m| Poly::monomial(ring, m, Rational::one()));
        let len = moved.with(powers).length().expect("contains a power of m");
        if prev == Some(len) {
            return Some(len);
        }
        prev = Some(len);
    }
    None
}
