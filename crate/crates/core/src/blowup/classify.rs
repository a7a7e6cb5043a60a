use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::points::local_length;
use crate::poly::{Poly, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdeLabel {
    A(u32),
    D(u32),
    E(u32),
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeLabel::A(n) => write!(f, "A{n}"),
            AdeLabel::D(n) => write!(f, "D{n}"),
            AdeLabel::E(n) => write!(f, "E{n}"),
        }
    }
}

impl std::str::FromStr for AdeLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (kind, num) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).unwrap_or(s.len()));
        let n: u32 = num.trim().parse().map_err(|_| format!("bad ADE label `{s}`"))?;
        let label = match kind {
            "A" | "a" if n >= 1 => AdeLabel::A(n),
            "D" | "d" if n >= 4 => AdeLabel::D(n),
            "E" | "e" if (6..=8).contains(&n) => AdeLabel::E(n),
            _ => return Err(format!("bad ADE label `{s}`")),
        };
        Ok(label)
    }
}

/// Result of recognizing a hypersurface germ at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RdpClass {
    /// `None` when the germ is smooth or not a rational double point.
    pub label: Option<AdeLabel>,
    /// Tjurina number (0 for a smooth point).
    pub tau: u64,
    pub hessian_corank: usize,
}

impl fmt::Display for RdpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label {
            Some(l) => write!(f, "{l}"),
            None if self.tau == 0 => write!(f, "smooth (not an RDP)"),
            None => write!(f, "not an RDP (tau = {})", self.tau),
        }
    }
}

/// Row-reduces a rational matrix in place; returns pivot columns.
fn row_reduce(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let k = m[i][c].clone();
                for j in 0..cols {
                    let t = &k * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

fn nullspace(m: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut a = m.to_vec();
    let pivots = row_reduce(&mut a);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); n];
            v[fc] = Rational::from_integer(1.into());
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][fc].clone();
            }
            v
        })
        .collect()
}

fn hessian(g: &Poly) -> Vec<Vec<Rational>> {
    let n = g.ring().nvars();
    let origin = vec![Rational::zero(); n];
    (0..n)
        .map(|i| (0..n).map(|j| g.derivative(i).derivative(j).evaluate(&origin)).collect())
        .collect()
}

/// Coefficients `(c0, c1, c2, c3)` of `c0 a^3 + c1 a^2 b + c2 a b^2 + c3 b^3`.
fn binary_cubic(cubic: &Poly, k1: &[Rational], k2: &[Rational]) -> [Rational; 4] {
    let ab = Ring::new(["a", "b"]).expect("valid names");
    let (a, b) = (ab.gen(0), ab.gen(1));
    let images: Vec<Poly> = k1
        .iter()
        .zip(k2)
        .map(|(p, q)| &a.scale(p) + &b.scale(q))
        .collect();
    let c = cubic.compose(&images, &ab);
    let mut out = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
    for (m, coef) in c.terms() {
        out[m.exps()[1] as usize] = coef.clone();
    }
    out
}

/// Arnold-style recognition of `g` at the origin. Errors if `g(0) != 0` or
/// the singularity is not isolated.
pub fn classify_rdp(g: &Poly) -> Result<RdpClass> {
    let ring = g.ring();
    let n = ring.nvars();
    if !g.constant_term().is_zero() {
        return Err(Error::Contract(format!("{g} does not vanish at the origin")));
    }
    if !g.homogeneous_part(1).is_zero() {
        return Ok(RdpClass {
            label: None,
            tau: 0,
            hessian_corank: 0,
        });
    }
    let mut gens = vec![g.clone()];
    gens.extend((0..n).map(|v| g.derivative(v)));
    let tjurina = Ideal::new(ring, gens)?;
    let origin = vec![Rational::zero(); n];
    let cap = match tjurina.dimension_and_degree() {
        (0, d) => d as u32 + 2,
        _ => 40,
    };
    let tau = local_length(&tjurina, &origin, cap)
        .ok_or_else(|| Error::Verification(format!("{g} has a non-isolated singularity at the origin")))?;
    let h = hessian(g);
    let kernel = nullspace(&h, n);
    let corank = kernel.len();
    let tau32 = tau as u32;
    let label = match corank {
        0 | 1 => Some(AdeLabel::A(tau32)),
        2 => {
            let [c0, c1, c2, c3] = binary_cubic(&g.homogeneous_part(3), &kernel[0], &kernel[1]);
            let r = |k: i64| Rational::from_integer(k.into());
            if [&c0, &c1, &c2, &c3].iter().all(|c| c.is_zero()) {
                None
            } else {
                let disc = &c1 * &c1 * &c2 * &c2 - r(4) * &c0 * &c2 * &c2 * &c2 - r(4) * &c1 * &c1 * &c1 * &c3
                    - r(27) * &c0 * &c0 * &c3 * &c3
                    + r(18) * &c0 * &c1 * &c2 * &c3;
                let triple = &c1 * &c1 == r(3) * &c0 * &c2 && &c2 * &c2 == r(3) * &c1 * &c3 && &c1 * &c2 == r(9) * &c0 * &c3;
                if !disc.is_zero() {
                    (tau == 4).then_some(AdeLabel::D(4))
                } else if !triple {
                    (tau >= 5).then_some(AdeLabel::D(tau32))
                } else {
                    (6..=8).contains(&tau).then_some(AdeLabel::E(tau32))
                }
            }
        }
        _ => None,
    };
    Ok(RdpClass {
        label,
        tau,
        hessian_corank: corank,
    })
}
