use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::charts::BlowupChart;
use super::HypersurfaceSingularity;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::points::{local_length, point_count, rational_points};
use crate::poly::{Poly, Rational};

/// The closed fibre over the origin in one chart.
#[derive(Clone, Debug)]
pub struct FibreChart {
    pub chart: usize,
    /// `-1` when the chart misses the fibre.
    pub dimension: i64,
    /// Points in which a generic hyperplane meets the reduced fibre curve.
    pub reduced_degree: u64,
    /// Length of the fibre cut by the same hyperplane.
    pub length: u64,
    /// Local lengths at the cut points (when they are rational).
    pub multiplicities: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct ExceptionalFibre {
    pub charts: Vec<FibreChart>,
    /// Largest fibre dimension over all charts.
    pub dimension: i64,
    /// Common multiplicity of the fibre along its curves, when all agree.
    pub generic_multiplicity: Option<u64>,
    /// Every chart sees the reduced fibre as a union of lines.
    pub rational_curves: bool,
}

impl ExceptionalFibre {
    /// True when the fibre contains no curve.
    pub fn is_trivial(&self) -> bool {
        self.dimension < 1
    }
}

fn fibre_ideal(chart: &BlowupChart) -> Result<Ideal> {
    let simple = &chart.simplified;
    let pulled: Vec<Poly> = simple.images[..chart.ambient].to_vec();
    Ok(simple.ideal.with(pulled))
}

fn random_hyperplane(ring: &crate::poly::Ring, rng: &mut ChaCha8Rng) -> Poly {
    let mut h = Poly::constant(ring, Rational::from_integer(rng.gen_range(1..=9i64).into()));
    for v in 0..ring.nvars() {
        let c: i64 = rng.gen_range(-9..=9);
        h = &h + &ring.gen(v).scale(&Rational::from_integer(c.into()));
    }
    h
}

/// Fibre of the blowup over the origin, with its multiplicity along each
/// curve measured by a random hyperplane section.
pub fn exceptional_fibre(charts: &[BlowupChart], seed: u64) -> Result<ExceptionalFibre> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for chart in charts {
        let fib = fibre_ideal(chart)?;
        // a divisorial fibre is recorded, not measured
        let dim = fib.dimension();
        let mut rec = FibreChart {
            chart: chart.index,
            dimension: dim,
            reduced_degree: 0,
            length: 0,
            multiplicities: Vec::new(),
        };
        if dim == 1 {
            let ring = &chart.simplified.ring;
            let mut cut = None;
            for _ in 0..20 {
                let c = fib.with([random_hyperplane(ring, &mut rng)]);
                if c.dimension() == 0 {
                    cut = Some(c);
                    break;
                }
            }
            let cut = cut.ok_or_else(|| Error::Genericity {
                attempts: 20,
                detail: "no hyperplane cut the fibre in finitely many points".into(),
            })?;
            rec.length = cut.length().expect("zero-dimensional");
            rec.reduced_degree = point_count(&cut)?;
            let pts = rational_points(&cut)?;
            if pts.complete {
                for p in &pts.points {
                    let l = local_length(&cut, p, rec.length as u32 + 2).expect("isolated point");
                    rec.multiplicities.push(l);
                }
            } else if rec.length.is_multiple_of(rec.reduced_degree) {
                // irrational points: only a uniform multiplicity is reported
                rec.multiplicities = vec![rec.length / rec.reduced_degree; rec.reduced_degree as usize];
            }
        }
        out.push(rec);
    }
    let dimension = out.iter().map(|c| c.dimension).max().unwrap_or(-1);
    let mut values: Vec<u64> = out.iter().flat_map(|c| c.multiplicities.iter().copied()).collect();
    values.sort_unstable();
    values.dedup();
    let generic_multiplicity = (values.len() == 1 && dimension == 1).then(|| values[0]);
    let rational_curves = out
        .iter()
        .filter(|c| c.dimension == 1)
        .all(|c| c.multiplicities.len() as u64 == c.reduced_degree);
    Ok(ExceptionalFibre {
        charts: out,
        dimension,
        generic_multiplicity,
        rational_curves,
    })
}

/// Largest dimension, over all charts, of the preimage of the singular
/// locus of `x`.
pub fn preimage_dimension(charts: &[BlowupChart], x: &HypersurfaceSingularity) -> Result<i64> {
    let sing = x.singular_ideal();
    let mut best = -1;
    for chart in charts {
        let pulled = sing.gens().iter().map(|g| chart.pullback(g)).collect::<Result<Vec<_>>>()?;
        best = best.max(chart.simplified.ideal.with(pulled).dimension());
    }
    Ok(best)
}
