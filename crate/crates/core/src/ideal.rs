//! Ideals with a cached degrevlex Gröbner basis, elimination and saturation.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::hilbert;
use crate::poly::{MonomialOrder, Poly, Ring};

pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    /// Zero generators are dropped; an empty list is the zero ideal.
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::Contract(format!(
                    "generator {g} lives in ring ({}), expected ({ring})",
                    g.ring()
                )));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        })
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![ring.one()]).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced degrevlex Gröbner basis, computed once.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb
            .get_or_init(|| GroebnerBasis::compute(&self.ring, &self.gens, &MonomialOrder::DegRevLex))
    }

    pub fn groebner_basis(&self, order: &MonomialOrder) -> GroebnerBasis {
        if *order == MonomialOrder::DegRevLex {
            return self.gb().clone();
        }
        GroebnerBasis::compute(&self.ring, &self.gens, order)
    }

    /// The ideal generated by its own reduced degrevlex basis.
    pub fn interreduced(&self) -> Ideal {
        let gb = self.gb().clone();
        let gens = gb.polys();
        let out = Ideal {
            ring: self.ring.clone(),
            gens,
            gb: OnceLock::new(),
        };
        let _ = out.gb.set(gb);
        out
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.gb().normal_form(p)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.gb().contains(p)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    /// Equality as ideals: reduced degrevlex bases coincide.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.gb().same_as(other.gb())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Poly>) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a * b))
            .collect();
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    pub fn scaled(&self, g: &Poly) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|a| a * g).collect()).expect("same ring")
    }

    /// Applies a ring map given by images of each variable.
    pub fn map(&self, images: &[Poly], target: &Ring) -> Ideal {
        Ideal::new(target, self.gens.iter().map(|g| g.compose(images, target)).collect())
            .expect("images live in target")
    }

    pub fn to_ring(&self, target: &Ring) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.to_ring(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// `I ∩ k[remaining variables]`, returned over the smaller ring.
    pub fn eliminate<S: AsRef<str>>(&self, drop: &[S]) -> Result<Ideal> {
        let mask: Vec<bool> = self
            .ring
            .vars()
            .iter()
            .map(|v| drop.iter().any(|d| d.as_ref() == v))
            .collect();
        for d in drop {
            self.ring.require(d.as_ref())?;
        }
        let sub = self.ring.without(drop);
        if !mask.iter().any(|&b| b) {
            return Ok(self.clone());
        }
        let gb = GroebnerBasis::compute(&self.ring, &self.gens, &MonomialOrder::Elimination(mask.clone()));
        let kept: Vec<Poly> = gb
            .polys()
            .into_iter()
            .filter(|p| (0..mask.len()).all(|i| !mask[i] || !p.involves(i)))
            .map(|p| p.to_ring(&sub).expect("free of dropped variables"))
            .collect();
        Ideal::new(&sub, kept)
    }

    /// `I : g^∞`, via elimination of `w` from `I + (1 - w g)`.
    pub fn saturate(&self, g: &Poly) -> Result<Ideal> {
        if g.is_zero() {
            return Err(Error::Contract("saturation by the zero polynomial".into()));
        }
        if g.is_unit() {
            return Ok(self.clone());
        }
        let w = self.ring.fresh_name("w");
        let big = self.ring.extend(&[w.as_str()])?;
        let wv = big.var(&w)?;
        let mut gens: Vec<Poly> = self
            .gens
            .iter()
            .map(|p| p.to_ring(&big))
            .collect::<Result<Vec<_>>>()?;
        gens.push(&big.one() - &(&wv * &g.to_ring(&big)?));
        let ext = Ideal::new(&big, gens)?;
        let out = ext.eliminate(&[w.as_str()])?;
        // same variable order as self
        out.to_ring(&self.ring)
    }

    /// `I ∩ J`, by eliminating `s` from `s I + (1 - s) J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        let s = self.ring.fresh_name("s");
        let big = self.ring.extend(&[s.as_str()])?;
        let sv = big.var(&s)?;
        let one_minus = &big.one() - &sv;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&sv * &g.to_ring(&big)?);
        }
        for g in &other.gens {
            gens.push(&one_minus * &g.to_ring(&big)?);
        }
        Ideal::new(&big, gens)?.eliminate(&[s.as_str()])?.to_ring(&self.ring)
    }

    /// The single colon `I : g`.
    pub fn colon(&self, g: &Poly) -> Result<Ideal> {
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let inter = self.intersect(&Ideal::new(&self.ring, vec![g.clone()])?)?;
        let gens = inter
            .gens
            .iter()
            .map(|p| p.div_exact(g).expect("elements of (g) are divisible by g"))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// Affine Krull dimension and degree of `V(I)`, read from the leading
    /// term ideal; `(-1, 0)` for the unit ideal.
    pub fn dimension_and_degree(&self) -> (i64, u64) {
        let lms = self.gb().leading_monomials();
        hilbert::dimension_and_degree(&lms, self.ring.nvars())
    }

    pub fn dimension(&self) -> i64 {
        self.dimension_and_degree().0
    }

    /// Length of `k[x]/I` for a zero-dimensional ideal.
    pub fn length(&self) -> Option<u64> {
        match self.dimension_and_degree() {
            (0, d) => Some(d),
            (-1, _) => Some(0),
            _ => None,
        }
    }

    /// Drops generators that lie in the ideal of the others (greedy, by
    /// increasing degree).
    pub fn minimalized(&self, modulo: &[Poly]) -> Ideal {
        let mut gens: Vec<Poly> = self.gens.clone();
        gens.sort_by_key(|g| (g.total_degree(), g.len()));
        let mut kept: Vec<Poly> = Vec::new();
        for g in gens {
            let mut basis = modulo.to_vec();
            basis.extend(kept.iter().cloned());
            let gb = GroebnerBasis::compute(&self.ring, &basis, &MonomialOrder::DegRevLex);
            if !gb.contains(&g) {
                kept.push(g);
            }
        }
        // second pass: later generators may make earlier ones redundant
        let mut k = 0;
        while k < kept.len() && kept.len() > 1 {
            let mut basis = modulo.to_vec();
            basis.extend(kept.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p.clone()));
            let gb = GroebnerBasis::compute(&self.ring, &basis, &MonomialOrder::DegRevLex);
            if gb.contains(&kept[k]) {
                kept.remove(k);
            } else {
                k += 1;
            }
        }
        Ideal::new(&self.ring, kept).expect("same ring")
    }
}

/// True iff the two ideals coincide.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> bool {
    a.equals(b)
}
