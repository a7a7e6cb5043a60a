//! Blowing up a hypersurface singularity in an MCM module.
//!
//! The module is replaced by its fractional ideal (two independent
//! constructions), which is blown up chart by chart.

mod base_change;
mod charts;
mod classify;
mod equivalence;
mod fibre;
mod report;
mod section;
mod singular;
mod villamayor;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{Poly, Rational, Ring};

pub use base_change::base_change_fibre;
pub use charts::{rees_charts, rees_kernel, BlowupChart, SimplifiedChart};
pub use classify::{classify_rdp, AdeLabel, RdpClass};
pub use equivalence::{fractional_equivalent, Equivalence};
pub use fibre::{exceptional_fibre, preimage_dimension, ExceptionalFibre, FibreChart};
pub use report::{blow_up, BlowupReport};
pub use section::{section_ideal, section_ideal_with};
pub use singular::{singular_locus, Normality, SingularPoint, SingularityReport};
pub use villamayor::{villamayor_ideal, villamayor_ideal_with_columns, villamayor_minors};

/// `V(f)` near the origin of its ambient affine space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceSingularity {
    f: Poly,
}

impl HypersurfaceSingularity {
    /// Requires `f` nonzero, nonconstant, with `f(0) = 0`.
    pub fn new(f: Poly) -> Result<HypersurfaceSingularity> {
        let h = HypersurfaceSingularity::affine(f)?;
        if !h.f.constant_term().is_zero() {
            return Err(Error::Contract(format!("{} does not vanish at the origin", h.f)));
        }
        Ok(h)
    }

    /// A hypersurface with no condition at the origin (fibres away from 0).
    pub fn affine(f: Poly) -> Result<HypersurfaceSingularity> {
        if f.is_zero() || f.is_constant() {
            return Err(Error::Contract(format!("degenerate hypersurface equation {f}")));
        }
        Ok(HypersurfaceSingularity { f })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn ring(&self) -> &Ring {
        self.f.ring()
    }

    pub fn dim(&self) -> i64 {
        self.ring().nvars() as i64 - 1
    }

    /// `(f, df/dx_1, ..., df/dx_n)`, cutting out the singular locus.
    pub fn singular_ideal(&self) -> Ideal {
        let ring = self.ring();
        let mut gens = vec![self.f.clone()];
        gens.extend((0..ring.nvars()).map(|v| self.f.derivative(v)));
        Ideal::new(ring, gens).expect("same ring")
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(self.ring(), vec![self.f.clone()]).expect("same ring")
    }

    /// Sets `var = value` and drops the variable from the ring.
    pub fn specialize(&self, var: &str, value: &Rational) -> Result<HypersurfaceSingularity> {
        let (p, _) = specialize_poly(&self.f, var, value)?;
        HypersurfaceSingularity::affine(p)
    }
}

/// Substitutes a rational value for `var` and moves to the ring without it.
pub(crate) fn specialize_poly(p: &Poly, var: &str, value: &Rational) -> Result<(Poly, Ring)> {
    let ring = p.ring();
    let vi = ring.require(var)?;
    let sub = ring.without(&[var]);
    let q = p.substitute(vi, &Poly::constant(ring, value.clone())).to_ring(&sub)?;
    Ok((q, sub))
}

/// How a blowup ideal was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSource {
    VillamayorMinors { columns: Vec<usize> },
    GenericSections { seed: u64, attempt: usize, sections: Vec<Vec<i64>>, columns: Vec<usize> },
    Specialized { var: String, value: Rational },
    Given,
}

/// A fractional ideal representing a module, as an ideal of the ambient ring
/// whose generators are reduced modulo `f`.
#[derive(Clone, Debug)]
pub struct BlowupIdeal {
    ideal: Ideal,
    source: IdealSource,
}

impl BlowupIdeal {
    /// Normalizes `gens` modulo `f`: reduced, primitive, deduplicated and
    /// stripped of redundant generators.
    pub fn new(gens: Vec<Poly>, x: &HypersurfaceSingularity, source: IdealSource) -> Result<BlowupIdeal> {
        let ideal = normalize_generators(gens, x)?;
        Ok(BlowupIdeal { ideal, source })
    }

    pub fn given(ideal: &Ideal, x: &HypersurfaceSingularity) -> Result<BlowupIdeal> {
        BlowupIdeal::new(ideal.gens().to_vec(), x, IdealSource::Given)
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn gens(&self) -> &[Poly] {
        self.ideal.gens()
    }

    pub fn source(&self) -> &IdealSource {
        &self.source
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    /// The image under `z -> -z`, renormalized; `x` must be invariant.
    pub fn apply_involution(&self, z_var: &str, x: &HypersurfaceSingularity) -> Result<BlowupIdeal> {
        let ring = self.ring();
        let zi = ring.require(z_var)?;
        let minus_z = -&ring.gen(zi);
        if x.f().substitute(zi, &minus_z) != *x.f() {
            return Err(Error::Contract(format!("{} is not fixed by {z_var} -> -{z_var}", x.f())));
        }
        let gens = self.gens().iter().map(|g| g.substitute(zi, &minus_z)).collect();
        BlowupIdeal::new(gens, x, self.source.clone())
    }
}

impl fmt::Display for BlowupIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal)
    }
}

pub(crate) fn normalize_generators(gens: Vec<Poly>, x: &HypersurfaceSingularity) -> Result<Ideal> {
    let ring = x.ring();
    let modf = x.ideal();
    let mut reduced: Vec<Poly> = Vec::new();
    for g in gens {
        if g.ring() != ring {
            return Err(Error::Contract(format!("generator {g} not in ring ({ring})")));
        }
        let r = modf.normal_form(&g).primitive();
        if !r.is_zero() && !reduced.contains(&r) {
            reduced.push(r);
        }
    }
    if reduced.is_empty() {
        return Err(Error::Verification("every generator vanishes modulo f".into()));
    }
    if reduced.iter().any(|g| g.is_constant()) {
        return Ok(Ideal::unit(ring));
    }
    let ideal = Ideal::new(ring, reduced)?.minimalized(&[x.f().clone()]);
    let mut gens = ideal.gens().to_vec();
    gens.sort_by(|a, b| (a.total_degree(), a.len()).cmp(&(b.total_degree(), b.len())).then_with(|| a.to_string().cmp(&b.to_string())));
    Ideal::new(ring, gens)
}
