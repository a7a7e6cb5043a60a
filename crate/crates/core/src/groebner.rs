//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer-Möller installation of both Buchberger criteria.

use num_traits::{One, Zero};

use crate::poly::{merge_add, normalize_terms, Monomial, MonomialOrder, Poly, Rational, Ring, Term};

/// A reduced Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    /// Each element sorted descending under `order`, monic.
    elems: Vec<Vec<Term>>,
}

impl GroebnerBasis {
    pub fn compute(ring: &Ring, gens: &[Poly], order: &MonomialOrder) -> GroebnerBasis {
        let input: Vec<Vec<Term>> = gens
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                assert!(p.ring() == ring, "generator from ring ({}) in ring ({ring})", p.ring());
                to_order(p, order)
            })
            .collect();
        let elems = buchberger(input, order);
        GroebnerBasis {
            ring: ring.clone(),
            order: order.clone(),
            elems,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// True when the basis is {1}.
    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0][0].0.is_one()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.elems
            .iter()
            .map(|e| Poly::from_terms(&self.ring, e.iter().cloned()))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|e| e[0].0.clone()).collect()
    }

    /// Remainder of `p` on division by the basis; zero iff `p` lies in the ideal.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        assert!(p.ring() == &self.ring, "normal_form: ring mismatch");
        let refs: Vec<&[Term]> = self.elems.iter().map(|e| e.as_slice()).collect();
        let r = reduce(to_order(p, &self.order), &refs, &self.order, true);
        Poly::from_terms(&self.ring, r)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Structural equality of two reduced bases (same order assumed).
    pub fn same_as(&self, other: &GroebnerBasis) -> bool {
        self.ring == other.ring && self.order == other.order && self.elems == other.elems
    }
}

pub(crate) fn to_order(p: &Poly, order: &MonomialOrder) -> Vec<Term> {
    let mut t: Vec<Term> = p.terms().to_vec();
    if *order != MonomialOrder::DegRevLex {
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    }
    t
}

fn make_monic(mut p: Vec<Term>) -> Vec<Term> {
    if let Some((_, c)) = p.first() {
        if !c.is_one() {
            let inv = c.recip();
            for (_, a) in p.iter_mut() {
                *a *= &inv;
            }
        }
    }
    p
}

/// Reduces `p` by `basis` (top reduction only unless `full`).
fn reduce(mut p: Vec<Term>, basis: &[&[Term]], order: &MonomialOrder, full: bool) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    let mut pos = 0usize;
    while pos < p.len() {
        let divisor = basis.iter().find(|g| g[0].0.divides(&p[pos].0));
        match divisor {
            Some(g) => {
                // terms before `pos` are irreducible
                out.extend(p[..pos].iter().cloned());
                let q = g[0].0.quotient_of(&p[pos].0).expect("divides");
                let factor = -(&p[pos].1 / &g[0].1);
                let scaled: Vec<Term> = g[1..].iter().map(|(m, c)| (m.mul(&q), c.clone())).collect();
                p = merge_add(&p[pos + 1..], &scaled, &factor, order);
                pos = 0;
            }
            None => {
                if !full {
                    break;
                }
                pos += 1;
            }
        }
    }
    out.extend(p);
    out
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn spoly(f: &[Term], g: &[Term], lcm: &Monomial, order: &MonomialOrder) -> Vec<Term> {
    // both monic
    let a = f[0].0.quotient_of(lcm).expect("lcm");
    let b = g[0].0.quotient_of(lcm).expect("lcm");
    let fa: Vec<Term> = f[1..].iter().map(|(m, c)| (m.mul(&a), c.clone())).collect();
    let gb: Vec<Term> = g[1..].iter().map(|(m, c)| (m.mul(&b), c.clone())).collect();
    merge_add(&fa, &gb, &-Rational::one(), order)
}

struct State<'o> {
    order: &'o MonomialOrder,
    polys: Vec<Vec<Term>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'o> State<'o> {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn active_refs(&self) -> Vec<&[Term]> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p.as_slice())
            .collect()
    }

    /// Gebauer-Möller update with the new element `h`.
    fn update(&mut self, h: Vec<Term>) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(true);
        let hlm = self.lm(hi).clone();

        let cands: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, hlm.lcm(self.lm(g))))
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g, l)) in cands.iter().enumerate() {
            let coprime = hlm.coprime(self.lm(*g));
            let dominated_later = cands[k + 1..].iter().any(|(_, l2)| l2.divides(l));
            let dominated_kept = kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || (!dominated_later && !dominated_kept) {
                kept.push((*g, l.clone()));
            }
        }
        // product criterion
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !hlm.coprime(self.lm(*g)))
            .map(|(g, lcm)| Pair { i: g, j: hi, lcm })
            .collect();

        // chain criterion on the old pairs
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let li = hlm.lcm(&polys[p.i][0].0);
            let lj = hlm.lcm(&polys[p.j][0].0);
            !(hlm.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
        });
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && hlm.divides(&self.polys[g][0].0) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..self.pairs.len() {
            if self.order.cmp(&self.pairs[k].lcm, &self.pairs[best].lcm) == std::cmp::Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

fn unit(n: usize) -> Vec<Vec<Term>> {
    vec![vec![(Monomial::one(n), Rational::one())]]
}

fn buchberger(input: Vec<Vec<Term>>, order: &MonomialOrder) -> Vec<Vec<Term>> {
    let Some(first) = input.first() else {
        return Vec::new();
    };
    let n = first[0].0.exps().len();
    let mut input = input;
    // smaller generators first
    input.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut st = State {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for p in input {
        let r = {
            let refs = st.active_refs();
            reduce(p, &refs, order, true)
        };
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return unit(n);
        }
        st.update(make_monic(r));
    }
    while let Some(pair) = st.select() {
        let s = spoly(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm, order);
        if s.is_empty() {
            continue;
        }
        let h = {
            let refs = st.active_refs();
            reduce(s, &refs, order, true)
        };
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return unit(n);
        }
        st.update(make_monic(h));
    }
    interreduce(st, order)
}

fn interreduce(st: State<'_>, order: &MonomialOrder) -> Vec<Vec<Term>> {
    let mut basis: Vec<Vec<Term>> = st
        .polys
        .into_iter()
        .zip(st.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    basis.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for k in 0..basis.len() {
        let others: Vec<&[Term]> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p.as_slice())
            .collect();
        let head = basis[k][0].clone();
        let tail = reduce(basis[k][1..].to_vec(), &others, order, true);
        let mut p = Vec::with_capacity(tail.len() + 1);
        p.push(head);
        p.extend(tail);
        basis[k] = p;
    }
    for p in basis.iter_mut() {
        let mut t = std::mem::take(p);
        normalize_terms(&mut t, order);
        *p = make_monic(t);
    }
    debug_assert!(basis.iter().all(|p| !p.is_empty() && !p[0].1.is_zero()));
    basis
}
