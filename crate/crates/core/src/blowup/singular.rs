use num_traits::Zero;

use super::charts::BlowupChart;
use super::classify::{classify_rdp, RdpClass};
use crate::error::Result;
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::points::{rational_points, translate};
use crate::poly::{Poly, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normality {
    Normal,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct SingularPoint {
    /// Coordinates in the full chart ring (ambient variables, then ratios).
    pub coords: Vec<(String, Rational)>,
    /// `None` when no local hypersurface equation could be extracted.
    pub class: Option<RdpClass>,
}

#[derive(Clone, Debug)]
pub struct SingularityReport {
    pub chart: usize,
    /// `-1` when the chart is smooth.
    pub singular_locus_dimension: i64,
    pub smooth: bool,
    pub normality: Normality,
    /// Isolated singular points with rational coordinates.
    pub points: Vec<SingularPoint>,
    /// False when some isolated singular point is not rational.
    pub points_complete: bool,
}

/// Ideal of `c x c` minors of the Jacobian of `gens`.
fn jacobian_minors(gens: &[Poly], ring: &Ring, c: usize) -> Result<Vec<Poly>> {
    let n = ring.nvars();
    let entries: Vec<Poly> = gens
        .iter()
        .flat_map(|g| (0..n).map(move |v| g.derivative(v)))
        .collect();
    let jac = PolyMatrix::new(ring, gens.len(), n, entries)?;
    if c > gens.len().min(n) {
        return Ok(Vec::new());
    }
    jac.minor_list(c)
}

/// Jacobian criterion on the simplified chart. Chart ideals are prime, so
/// the `c x c` minors of the full Jacobian cut out the singular locus.
pub fn singular_locus(chart: &BlowupChart) -> Result<SingularityReport> {
    let simple = &chart.simplified;
    let ring = &simple.ring;
    let ideal = &simple.ideal;
    let done = |dim: i64, normal: Normality| SingularityReport {
        chart: chart.index,
        singular_locus_dimension: dim,
        smooth: dim < 0,
        normality: normal,
        points: Vec::new(),
        points_complete: true,
    };
    if ideal.is_unit() || ideal.is_zero() {
        return Ok(done(-1, Normality::Normal));
    }
    let gens = ideal.gb().polys();
    let dim = ideal.dimension();
    let c = (ring.nvars() as i64 - dim) as usize;
    let sing = ideal.with(jacobian_minors(&gens, ring, c)?);
    let sdim = sing.dimension();
    let minimal = ideal.minimalized(&[]).gens().len();
    let normality = if sdim < 0 || (minimal == c && sdim <= dim - 2) {
        Normality::Normal
    } else {
        Normality::Undetermined
    };
    let mut report = done(sdim, normality);
    if sdim == 0 {
        let pts = rational_points(&sing)?;
        report.points_complete = pts.complete;
        for p in pts.points {
            let coords = chart
                .ring
                .vars()
                .iter()
                .zip(&simple.images)
                .map(|(name, img)| (name.clone(), img.evaluate(&p)))
                .collect();
            let class = local_equation(ideal, &p).map(|g| classify_rdp(&g)).transpose()?;
            report.points.push(SingularPoint { coords, class });
        }
    }
    Ok(report)
}

/// A hypersurface equation for the germ of `V(ideal)` at `p`, moved to the
/// origin, when the germ has embedding codimension one.
fn local_equation(ideal: &Ideal, p: &[Rational]) -> Option<Poly> {
    let ring = ideal.ring();
    let gens = ideal.gb().polys();
    if gens.len() == 1 {
        return Some(translate(&gens[0], p));
    }
    // solve for variables with an invertible Jacobian minor at p, then
    // project them away and check the projection is a local isomorphism
    let n = ring.nvars();
    let c = (n as i64 - ideal.dimension()) as usize;
    if c < 2 {
        return None;
    }
    let moved: Vec<Poly> = gens.iter().map(|g| translate(g, p)).collect();
    let origin = vec![Rational::zero(); n];
    let jac: Vec<Vec<Rational>> = moved
        .iter()
        .map(|g| (0..n).map(|v| g.derivative(v).evaluate(&origin)).collect())
        .collect();
    let pivots = pivot_columns(&jac);
    if pivots.len() != c - 1 {
        return None;
    }
    let drop: Vec<String> = pivots.iter().map(|&v| ring.vars()[v].clone()).collect();
    let local = Ideal::new(ring, moved).ok()?;
    let proj = local.eliminate(&drop).ok()?;
    let pg = proj.gb().polys();
    if pg.len() != 1 {
        return None;
    }
    // fibre of the projection over the origin must be the reduced origin
    let kept: Vec<Poly> = (0..n).filter(|v| !pivots.contains(v)).map(|v| ring.gen(v)).collect();
    if local.with(kept).length() != Some(1) {
        return None;
    }
    Some(pg[0].clone())
}

fn pivot_columns(m: &[Vec<Rational>]) -> Vec<usize> {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            if !a[i][c].is_zero() {
                let k = &a[i][c] / &a[r][c];
                for j in 0..cols {
                    let t = &k * &a[r][j];
                    a[i][j] -= t;
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
