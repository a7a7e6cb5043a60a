use std::collections::HashMap;

use super::{BlowupIdeal, HypersurfaceSingularity};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::points::monomials_of_degree;
use crate::poly::{Poly, Rational};

/// Outcome of comparing two fractional ideals on `V(f)`.
#[derive(Clone, Debug)]
pub enum Equivalence {
    /// `a I = b J` modulo `f`; `local` when equality holds only after
    /// localizing at the origin.
    Equivalent { a: Poly, b: Poly, local: bool },
    /// Certified different classes at the origin.
    Inequivalent { reason: String },
    /// No witness among the searched candidates.
    NoWitness { candidates: usize },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

fn key(i: &Ideal) -> String {
    i.gb().polys().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

fn scaled_mod_f(i: &Ideal, a: &Poly, f: &Poly) -> Ideal {
    i.scaled(a).with([f.clone()])
}

/// `L : K`.
fn colon_ideal(l: &Ideal, k: &Ideal) -> Result<Ideal> {
    let mut acc = Ideal::unit(l.ring());
    for g in k.gens() {
        if l.contains(g) {
            continue;
        }
        let c = l.colon(g)?;
        acc = if acc.is_unit() { c } else { acc.intersect(&c)? };
    }
    Ok(acc)
}

fn vanishes_at_origin(i: &Ideal) -> bool {
    !i.with(i.ring().gens()).is_unit()
}

/// `K ⊆ L` after localizing at the origin.
fn locally_contained(k: &Ideal, l: &Ideal) -> Result<bool> {
    if l.contains_ideal(k) {
        return Ok(true);
    }
    Ok(!vanishes_at_origin(&colon_ideal(l, k)?))
}

fn is_homogeneous(p: &Poly) -> bool {
    let d = p.total_degree();
    p.terms().iter().all(|(m, _)| m.degree() as i64 == d)
}

fn candidates(i: &Ideal, j: &Ideal, f: &Poly, degree: u32) -> Vec<Poly> {
    let ring = i.ring();
    let modf = Ideal::new(ring, vec![f.clone()]).expect("same ring");
    let mut pool: Vec<(i64, usize, Poly)> = vec![(0, 0, ring.one())];
    let gens: Vec<Poly> = i.gens().iter().chain(j.gens()).cloned().collect();
    for g in &gens {
        pool.push((g.total_degree(), 1, g.clone()));
    }
    for (k, a) in gens.iter().enumerate() {
        for b in &gens[k..] {
            let p = a * b;
            pool.push((p.total_degree(), 2, p));
        }
    }
    for d in 1..=degree {
        for m in monomials_of_degree(ring.nvars(), d) {
            pool.push((d as i64, 3, Poly::monomial(ring, m, Rational::from_integer(1.into()))));
        }
    }
    pool.sort_by_key(|x| (x.0, x.1));
    let mut out: Vec<Poly> = Vec::new();
    for (d, _, p) in pool {
        if d > degree as i64 || modf.contains(&p) {
            continue;
        }
        let p = p.primitive();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Decides whether `a I = b J` on `V(f)` for some nonzerodivisors `a, b`.
///
/// Searches candidates of degree at most `search_degree` for a global witness
/// first, then derives the only possible multiplier from the colon ideal
/// `(g J + f) : I`, which also certifies inequivalence for homogeneous data
/// on a normal singularity.
pub fn fractional_equivalent(
    i: &BlowupIdeal,
    j: &BlowupIdeal,
    x: &HypersurfaceSingularity,
    search_degree: u32,
) -> Result<Equivalence> {
    if i.ring() != x.ring() || j.ring() != x.ring() {
        return Err(Error::Contract("ideals and hypersurface must share a ring".into()));
    }
    let f = x.f();
    let (ii, jj) = (i.ideal(), j.ideal());
    let cands = candidates(ii, jj, f, search_degree);
    let mut left: HashMap<String, usize> = HashMap::new();
    let mut right: HashMap<String, usize> = HashMap::new();
    for (k, c) in cands.iter().enumerate() {
        let kl = key(&scaled_mod_f(ii, c, f));
        if let Some(&b) = right.get(&kl) {
            return Ok(Equivalence::Equivalent { a: c.clone(), b: cands[b].clone(), local: false });
        }
        left.entry(kl).or_insert(k);
        let kr = key(&scaled_mod_f(jj, c, f));
        if let Some(&a) = left.get(&kr) {
            return Ok(Equivalence::Equivalent { a: cands[a].clone(), b: c.clone(), local: false });
        }
        right.entry(kr).or_insert(k);
    }

    // J = q I forces (g J + f) : I = (q g) locally, for any g in I
    let g = ii.gens()[0].clone();
    let target = scaled_mod_f(jj, &g, f);
    let colon = colon_ideal(&target, &ii.with([f.clone()]))?;
    let hs = colon.with([f.clone()]).minimalized(std::slice::from_ref(f));
    let modf = x.ideal();
    for h in hs.gens() {
        if modf.contains(h) {
            continue;
        }
        let lhs = scaled_mod_f(ii, h, f);
        if lhs.equals(&target) {
            return Ok(Equivalence::Equivalent { a: h.clone(), b: g, local: false });
        }
        if locally_contained(&lhs, &target)? && locally_contained(&target, &lhs)? {
            return Ok(Equivalence::Equivalent { a: h.clone(), b: g, local: true });
        }
    }
    let homogeneous = is_homogeneous(f) && ii.gens().iter().chain(jj.gens()).all(is_homogeneous);
    let isolated = x.singular_ideal().dimension() <= 0 && x.dim() >= 2;
    let nonzero: Vec<&Poly> = hs.gens().iter().filter(|h| !modf.contains(h)).collect();
    if homogeneous && isolated && nonzero.len() >= 2 {
        return Ok(Equivalence::Inequivalent {
            reason: format!(
                "the multiplier ideal ({g} J + f) : I needs {} generators at the origin, so J is not a multiple of I",
                nonzero.len()
            ),
        });
    }
    Ok(Equivalence::NoWitness { candidates: cands.len() })
}
