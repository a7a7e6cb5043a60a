//! Hilbert series numerators of monomial ideals.

use crate::poly::Monomial;

/// Integer polynomial in `t`, lowest degree first.
type TPoly = Vec<i64>;

fn tp_add(a: &TPoly, b: &TPoly) -> TPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    trim(out)
}

fn tp_shift(a: &TPoly, k: usize) -> TPoly {
    let mut out = vec![0; k];
    out.extend_from_slice(a);
    trim(out)
}

fn tp_mul(a: &TPoly, b: &TPoly) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn trim(mut a: TPoly) -> TPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of `k[x]/M`.
pub fn numerator(gens: &[Monomial]) -> TPoly {
    numerator_rec(minimalize(gens.to_vec()))
}

fn numerator_rec(gens: Vec<Monomial>) -> TPoly {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    // pairwise coprime generators give a product of (1 - t^d)
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.coprime(b)));
    if coprime {
        let mut acc = vec![1];
        for g in &gens {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            acc = tp_mul(&acc, &trim(f));
        }
        return acc;
    }
    // pivot on the variable occurring in most non-pure-power generators
    let n = gens[0].exps().len();
    let mut counts = vec![0usize; n];
    for g in &gens {
        if g.support().count() > 1 {
            for v in g.support() {
                counts[v] += 1;
            }
        }
    }
    let var = (0..n).max_by_key(|&v| counts[v]).expect("nonempty ring");
    let e = gens
        .iter()
        .filter(|g| g.exps()[var] > 0)
        .map(|g| g.exps()[var])
        .min()
        .expect("pivot variable occurs");
    let pivot = Monomial::var(n, var, e);
    // N(M) = N(M + (p)) + t^deg(p) N(M : p)
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let exps: Vec<u16> = g
                .exps()
                .iter()
                .zip(pivot.exps())
                .map(|(a, b)| a.saturating_sub(*b))
                .collect();
            Monomial::from_exps(&exps)
        })
        .collect();
    let a = numerator_rec(minimalize(with_pivot));
    let b = numerator_rec(minimalize(colon));
    tp_add(&a, &tp_shift(&b, e as usize))
}

/// Krull dimension and degree of `k[x]/M` for a monomial ideal in `n`
/// variables; `(-1, 0)` for the unit ideal.
pub fn dimension_and_degree(gens: &[Monomial], n: usize) -> (i64, u64) {
    let mut num = numerator(gens);
    if num.is_empty() {
        return (-1, 0);
    }
    let mut k = 0usize;
    // divide by (1 - t) while N(1) == 0
    while num.iter().sum::<i64>() == 0 {
        let mut q = vec![0i64; num.len() - 1];
        let mut carry = 0i64;
        for i in 0..num.len() - 1 {
            carry += num[i];
            q[i] = carry;
        }
        num = trim(q);
        k += 1;
    }
    let deg: i64 = num.iter().sum();
    ((n - k) as i64, deg.unsigned_abs())
}
