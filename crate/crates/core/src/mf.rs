//! Matrix factorisations `(phi, psi)` with `phi psi = psi phi = f I`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorisation {
    f: Poly,
    phi: PolyMatrix,
    psi: PolyMatrix,
    rank: usize,
}

fn check_product(a: &PolyMatrix, b: &PolyMatrix, f: &Poly, label: &str) -> Result<()> {
    let p = a.mul(b)?;
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            let want = if i == j { f.clone() } else { f.ring().zero() };
            if p.get(i, j) != &want {
                return Err(Error::Verification(format!(
                    "{label} entry ({}, {}) is {}, expected {}",
                    i + 1,
                    j + 1,
                    p.get(i, j),
                    want
                )));
            }
        }
    }
    Ok(())
}

/// Generic rank of `coker phi` on `V(f)`: `n - k` where `k` is the largest
/// size of a minor of `phi` that is nonzero modulo `f`.
pub fn generic_rank(phi: &PolyMatrix, f: &Poly) -> Result<usize> {
    let n = phi.rows();
    let modf = Ideal::new(f.ring(), vec![f.clone()])?;
    for k in (1..=n).rev() {
        for m in phi.minor_list(k)? {
            if !modf.contains(&m) {
                return Ok(n - k);
            }
        }
    }
    Ok(n)
}

impl MatrixFactorisation {
    /// Validates the pair and computes its rank.
    pub fn verify(phi: PolyMatrix, psi: PolyMatrix, f: Poly) -> Result<MatrixFactorisation> {
        if !phi.is_square() || !psi.is_square() || phi.rows() != psi.rows() {
            return Err(Error::Contract(format!(
                "phi ({}x{}) and psi ({}x{}) must be square of equal size",
                phi.rows(),
                phi.cols(),
                psi.rows(),
                psi.cols()
            )));
        }
        if phi.ring() != f.ring() || psi.ring() != f.ring() {
            return Err(Error::Contract("phi, psi and f must share a ring".into()));
        }
        if f.is_zero() || f.is_constant() {
            return Err(Error::Contract(format!("degenerate hypersurface equation {f}")));
        }
        check_product(&phi, &psi, &f, "phi*psi")?;
        check_product(&psi, &phi, &f, "psi*phi")?;
        let rank = generic_rank(&phi, &f)?;
        Ok(MatrixFactorisation { f, phi, psi, rank })
    }

    /// Rebuilds with a declared rank, failing if it disagrees.
    pub fn verify_with_rank(phi: PolyMatrix, psi: PolyMatrix, f: Poly, rank: usize) -> Result<MatrixFactorisation> {
        let m = MatrixFactorisation::verify(phi, psi, f)?;
        if m.rank != rank {
            return Err(Error::Verification(format!(
                "declared rank {rank} but the minors give rank {}",
                m.rank
            )));
        }
        Ok(m)
    }

    /// The pair `([f], [1])`, whose cokernel is free of rank one.
    pub fn trivial(f: &Poly) -> MatrixFactorisation {
        let ring = f.ring();
        MatrixFactorisation {
            f: f.clone(),
            phi: PolyMatrix::new(ring, 1, 1, vec![f.clone()]).expect("1x1"),
            psi: PolyMatrix::identity(ring, 1),
            rank: 1,
        }
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn phi(&self) -> &PolyMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &PolyMatrix {
        &self.psi
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn size(&self) -> usize {
        self.phi.rows()
    }

    pub fn ring(&self) -> &Ring {
        self.f.ring()
    }

    /// The swapped pair `(psi, phi)`, presenting the syzygy module.
    pub fn syzygy(&self) -> MatrixFactorisation {
        MatrixFactorisation {
            f: self.f.clone(),
            phi: self.psi.clone(),
            psi: self.phi.clone(),
            rank: self.size() - self.rank,
        }
    }

    /// Substitutes `z -> -z` everywhere; `f` must be invariant.
    pub fn apply_involution(&self, z_var: &str) -> Result<MatrixFactorisation> {
        let zi = self.ring().require(z_var)?;
        let minus_z = -&self.ring().gen(zi);
        let flip = |p: &Poly| p.substitute(zi, &minus_z);
        let f2 = flip(&self.f);
        if f2 != self.f {
            return Err(Error::Contract(format!("{} is not fixed by {z_var} -> -{z_var}", self.f)));
        }
        Ok(MatrixFactorisation {
            f: f2,
            phi: self.phi.map(flip),
            psi: self.psi.map(flip),
            rank: self.rank,
        })
    }

    /// No entry of phi or psi is a unit at the origin.
    pub fn is_minimal(&self) -> bool {
        let at_origin = |m: &PolyMatrix| m.entries().iter().all(|e| e.constant_term() == num_traits::Zero::zero());
        at_origin(&self.phi) && at_origin(&self.psi)
    }

    pub fn direct_sum(&self, other: &MatrixFactorisation) -> Result<MatrixFactorisation> {
        if self.f != other.f {
            return Err(Error::Contract(format!(
                "direct sum over different equations {} and {}",
                self.f, other.f
            )));
        }
        Ok(MatrixFactorisation {
            f: self.f.clone(),
            phi: self.phi.block_diag(&other.phi),
            psi: self.psi.block_diag(&other.psi),
            rank: self.rank + other.rank,
        })
    }

    /// Sets `var = value` and drops the variable from the ring. The rank is
    /// recomputed, so a degenerate specialization shows up as a rank change.
    pub fn specialize(&self, var: &str, value: &crate::poly::Rational) -> Result<MatrixFactorisation> {
        let vi = self.ring().require(var)?;
        let sub_ring = self.ring().without(&[var]);
        let c = Poly::constant(self.ring(), value.clone());
        let sub = |p: &Poly| p.substitute(vi, &c);
        MatrixFactorisation::verify(
            self.phi.map(sub).to_ring(&sub_ring)?,
            self.psi.map(sub).to_ring(&sub_ring)?,
            sub(&self.f).to_ring(&sub_ring)?,
        )
    }

    /// True when `V(f)` is generically reduced, i.e. the singular locus of
    /// `f` is a proper subset of `V(f)`.
    pub fn f_is_reduced(&self) -> bool {
        f_is_reduced(&self.f)
    }
}

pub fn f_is_reduced(f: &Poly) -> bool {
    let ring = f.ring();
    let mut gens = vec![f.clone()];
    gens.extend((0..ring.nvars()).map(|v| f.derivative(v)));
    let sing = Ideal::new(ring, gens).expect("same ring");
    sing.dimension() < ring.nvars() as i64 - 1
}

impl fmt::Display for MatrixFactorisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MF(f = {}, phi = {}, psi = {}, rank {})", self.f, self.phi, self.psi, self.rank)
    }
}

/// `G` and `Theta` with `Theta^2 = -G I`, defining `z^2 + G`.
#[derive(Clone, Debug)]
pub struct KnorrerDatum {
    g: Poly,
    theta: PolyMatrix,
}

impl KnorrerDatum {
    pub fn new(g: Poly, theta: PolyMatrix) -> Result<KnorrerDatum> {
        if !theta.is_square() || !theta.rows().is_multiple_of(2) {
            return Err(Error::Contract(format!(
                "Theta must be square of even size, got {}x{}",
                theta.rows(),
                theta.cols()
            )));
        }
        if theta.ring() != g.ring() {
            return Err(Error::Contract("Theta and G must share a ring".into()));
        }
        let sq = theta.mul(&theta)?;
        if !sq.is_scalar_multiple_of_identity(&-&g) {
            return Err(Error::Verification(format!("Theta^2 = {sq} is not -({g}) I")));
        }
        Ok(KnorrerDatum { g, theta })
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn theta(&self) -> &PolyMatrix {
        &self.theta
    }

    pub fn l(&self) -> usize {
        self.theta.rows() / 2
    }

    /// `N = (zI + Theta, zI - Theta)` over `f = z^2 + G` and its syzygy.
    /// `z_var` must belong to the ring and not occur in `G` or `Theta`.
    pub fn lift(&self, z_var: &str) -> Result<(MatrixFactorisation, MatrixFactorisation)> {
        let ring = self.g.ring();
        let zi = ring.require(z_var)?;
        if self.g.involves(zi) || self.theta.entries().iter().any(|e| e.involves(zi)) {
            return Err(Error::Contract(format!("{z_var} occurs in G or Theta")));
        }
        let z = ring.gen(zi);
        let n = self.theta.rows();
        let zi_m = PolyMatrix::scalar(ring, n, &z);
        let f = &(&z * &z) + &self.g;
        let n_mf = MatrixFactorisation::verify(zi_m.add(&self.theta)?, zi_m.sub(&self.theta)?, f)?;
        let nplus = n_mf.syzygy();
        Ok((n_mf, nplus))
    }
}

pub fn knorrer_lift(k: &KnorrerDatum, z_var: &str) -> Result<(MatrixFactorisation, MatrixFactorisation)> {
    k.lift(z_var)
}

pub fn verify_mf(phi: PolyMatrix, psi: PolyMatrix, f: Poly) -> Result<MatrixFactorisation> {
    MatrixFactorisation::verify(phi, psi, f)
}
