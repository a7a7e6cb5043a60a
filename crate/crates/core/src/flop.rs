//! Simple flops from Knörrer data.
//!
//! A family `f = z^2 + G(x, y, t)` carries the pair `N = (zI + Θ, zI - Θ)`
//! and its syzygy `N+`. Blowing up in `N` and in `N+` gives the two sides
//! `W -> Z <- W+` of the flop; `z -> -z` exchanges them.

use crate::blowup::{
    base_change_fibre, blow_up, classify_rdp, exceptional_fibre, fractional_equivalent, preimage_dimension,
    rees_charts, singular_locus, villamayor_ideal, villamayor_minors, AdeLabel, BlowupChart, BlowupIdeal,
    BlowupReport, Equivalence, HypersurfaceSingularity,
};
use crate::error::{Error, Result};
use crate::graph::katz_morrison;
use crate::mf::{KnorrerDatum, MatrixFactorisation};
use crate::poly::Rational;
use num_traits::Zero;

/// Fibres checked for base change.
pub const BASE_CHANGE_VALUES: [i64; 2] = [0, 1];

#[derive(Clone, Debug)]
pub struct FlopDatum {
    pub family: HypersurfaceSingularity,
    pub knorrer: KnorrerDatum,
    pub z_var: String,
    pub t_var: String,
    pub n: MatrixFactorisation,
    pub nplus: MatrixFactorisation,
    pub i_n: BlowupIdeal,
    pub i_nplus: BlowupIdeal,
    pub w_charts: Vec<BlowupChart>,
    pub wplus_charts: Vec<BlowupChart>,
    pub central_rdp: AdeLabel,
}

/// Lifts `k` to `z^2 + G`, checks the central fibre is an RDP and blows up
/// both sides.
pub fn build_family(k: &KnorrerDatum, z_var: &str, t_var: &str) -> Result<FlopDatum> {
    let ring = k.g().ring();
    ring.require(t_var)?;
    ring.require(z_var)?;
    if z_var == t_var {
        return Err(Error::Contract("the square and parameter variables must differ".into()));
    }
    if ring.nvars() != 4 {
        return Err(Error::Contract(format!("a 3-fold family needs 4 variables, got ({ring})")));
    }
    let (n, nplus) = k.lift(z_var)?;
    if !n.is_minimal() {
        return Err(Error::Contract("Theta has a unit entry, so N has a free summand".into()));
    }
    let family = HypersurfaceSingularity::new(n.f().clone())?;
    let central = family.specialize(t_var, &Rational::zero())?;
    let class = classify_rdp(central.f())?;
    let central_rdp = match class.label {
        Some(l) if class.tau > 0 => l,
        _ => {
            return Err(Error::Contract(format!(
                "central fibre {} is not a rational double point",
                central.f()
            )))
        }
    };
    let i_n = villamayor_ideal(&n, &family)?;
    let i_nplus = villamayor_ideal(&nplus, &family)?;
    let w_charts = rees_charts(&i_n, &family)?;
    let wplus_charts = rees_charts(&i_nplus, &family)?;
    Ok(FlopDatum {
        family,
        knorrer: k.clone(),
        z_var: z_var.to_string(),
        t_var: t_var.to_string(),
        n,
        nplus,
        i_n,
        i_nplus,
        w_charts,
        wplus_charts,
        central_rdp,
    })
}

/// One side of the flop.
#[derive(Clone, Debug)]
pub struct SideReport {
    pub ideal: String,
    pub charts: usize,
    /// Dimension of the preimage of `Sing(Z)`.
    pub exceptional_dimension: i64,
    pub small: bool,
    pub smooth: bool,
    /// Indices of charts failing the Jacobian criterion.
    pub singular_charts: Vec<usize>,
    /// Dimension of the fibre over the origin.
    pub fibre_dimension: i64,
    /// Generic length of the fibre over the origin.
    pub fibre_multiplicity: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct BaseChangeCheck {
    pub side: &'static str,
    pub t_value: Rational,
    /// Family ideal restricted to the fibre.
    pub restricted: String,
    /// Ideal of the restricted factorisation.
    pub direct: String,
    pub equivalence: Equivalence,
}

impl BaseChangeCheck {
    pub fn ok(&self) -> bool {
        self.equivalence.is_equivalent()
    }
}

#[derive(Clone, Debug)]
pub struct FlopReport {
    pub rdp_type: AdeLabel,
    pub rank: usize,
    /// Generic length of the exceptional fibre of `W`, when every curve agrees.
    pub length: Option<u64>,
    pub w: SideReport,
    pub wplus: SideReport,
    /// `z -> -z` carries `I_N` to a fractional multiple of `I_N+`.
    pub swap: Equivalence,
    pub swap_certified: bool,
    /// `I_N` and `I_N+` are not fractionally equivalent.
    pub sides_distinct: Equivalence,
    pub base_change: Vec<BaseChangeCheck>,
    pub base_change_ok: bool,
    /// `None` when the length is undetermined.
    pub length_equals_rank: Option<bool>,
    /// The table entry for the length is the central RDP. Only meaningful
    /// when `t = 0` is a generic hyperplane section and `W` is smooth.
    pub table_consistent: Option<bool>,
    pub seed: u64,
    pub search_degree: u32,
}

fn side(ideal: &BlowupIdeal, charts: &[BlowupChart], x: &HypersurfaceSingularity, seed: u64) -> Result<SideReport> {
    let exceptional_dimension = preimage_dimension(charts, x)?;
    let mut singular_charts = Vec::new();
    for c in charts {
        if !singular_locus(c)?.smooth {
            singular_charts.push(c.index);
        }
    }
    let fibre = exceptional_fibre(charts, seed)?;
    Ok(SideReport {
        ideal: ideal.to_string(),
        charts: charts.len(),
        exceptional_dimension,
        small: exceptional_dimension <= x.dim() - 2,
        smooth: singular_charts.is_empty(),
        singular_charts,
        fibre_dimension: fibre.dimension,
        fibre_multiplicity: fibre.generic_multiplicity,
    })
}

fn base_change(
    d: &FlopDatum,
    which: &'static str,
    m: &MatrixFactorisation,
    i: &BlowupIdeal,
    t: &Rational,
    search_degree: u32,
) -> Result<BaseChangeCheck> {
    let (restricted, fibre) = base_change_fibre(i, &d.family, &d.t_var, t)?;
    let direct = villamayor_minors(&m.specialize(&d.t_var, t)?, &fibre)?;
    let equivalence = fractional_equivalent(&restricted, &direct, &fibre, search_degree)?;
    Ok(BaseChangeCheck {
        side: which,
        t_value: t.clone(),
        restricted: restricted.to_string(),
        direct: direct.to_string(),
        equivalence,
    })
}

/// Runs every check; failures are recorded in the report, not raised.
pub fn verify_flop(d: &FlopDatum, seed: u64, search_degree: u32) -> Result<FlopReport> {
    verify_flop_at(d, seed, search_degree, &[])
}

/// As [`verify_flop`], with base change also checked at `extra` values of `t`.
pub fn verify_flop_at(d: &FlopDatum, seed: u64, search_degree: u32, extra: &[Rational]) -> Result<FlopReport> {
    let x = &d.family;
    let w = side(&d.i_n, &d.w_charts, x, seed)?;
    let wplus = side(&d.i_nplus, &d.wplus_charts, x, seed)?;

    let flipped = d.i_n.apply_involution(&d.z_var, x)?;
    let swap = fractional_equivalent(&flipped, &d.i_nplus, x, search_degree)?;
    let sides_distinct = fractional_equivalent(&d.i_n, &d.i_nplus, x, search_degree)?;

    let mut checks = Vec::new();
    let mut values: Vec<Rational> = BASE_CHANGE_VALUES.iter().map(|&t| Rational::from_integer(t.into())).collect();
    for t in extra {
        if !values.contains(t) {
            values.push(t.clone());
        }
    }
    for t in &values {
        checks.push(base_change(d, "W", &d.n, &d.i_n, t, search_degree)?);
        checks.push(base_change(d, "W+", &d.nplus, &d.i_nplus, t, search_degree)?);
    }
    let base_change_ok = checks.iter().all(BaseChangeCheck::ok);

    let length = w.fibre_multiplicity;
    let length_equals_rank = length.map(|l| l == d.n.rank() as u64);
    let table_consistent = length.map(|l| katz_morrison(l as u32).is_ok_and(|k| k == d.central_rdp));
    Ok(FlopReport {
        rdp_type: d.central_rdp,
        rank: d.n.rank(),
        length,
        swap_certified: swap.is_equivalent(),
        swap,
        sides_distinct,
        base_change: checks,
        base_change_ok,
        length_equals_rank,
        table_consistent,
        w,
        wplus,
        seed,
        search_degree,
    })
}

/// The surface datum at `t = 0`.
#[derive(Clone, Debug)]
pub struct CentralFibre {
    pub surface: HypersurfaceSingularity,
    pub m0: MatrixFactorisation,
    pub blowup: BlowupReport,
}

/// Restricts the family to `t = 0` and blows the surface up in `N|_0`.
pub fn central_fibre(d: &FlopDatum, seed: u64) -> Result<CentralFibre> {
    let zero = Rational::zero();
    let surface = d.family.specialize(&d.t_var, &zero)?;
    let surface = HypersurfaceSingularity::new(surface.f().clone())?;
    let m0 = d.n.specialize(&d.t_var, &zero)?;
    if m0.rank() != d.n.rank() {
        return Err(Error::Verification(format!(
            "specializing at {} = 0 changes the rank from {} to {}",
            d.t_var,
            d.n.rank(),
            m0.rank()
        )));
    }
    let ideal = villamayor_ideal(&m0, &surface)?;
    let blowup = blow_up(ideal, &surface, seed)?;
    Ok(CentralFibre { surface, m0, blowup })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::PolyMatrix;
    use crate::poly::Ring;

    fn atiyah() -> KnorrerDatum {
        let r = Ring::new(["x", "y", "z", "t"]).unwrap();
        let g = r.parse("y*z - t^2").unwrap();
        KnorrerDatum::new(g, PolyMatrix::parse(&r, 2, 2, &["t", "y", "-z", "-t"]).unwrap()).unwrap()
    }

    #[test]
    fn atiyah_flop() {
        let d = build_family(&atiyah(), "x", "t").unwrap();
        assert_eq!(d.central_rdp, AdeLabel::A(1));
        assert_eq!(d.i_n.to_string(), "(z, x + t)");
        assert_eq!(d.i_nplus.to_string(), "(z, x - t)");
        let rep = verify_flop(&d, 1, 4).unwrap();
        assert!(rep.w.small && rep.wplus.small);
        assert!(rep.w.smooth && rep.wplus.smooth);
        assert_eq!(rep.w.charts + rep.wplus.charts, 4);
        assert!(rep.swap_certified);
        assert!(!rep.sides_distinct.is_equivalent());
        assert!(rep.base_change_ok, "{:?}", rep.base_change);
        assert_eq!(rep.length, Some(1));
        assert_eq!(rep.length_equals_rank, Some(true));
        assert_eq!(rep.table_consistent, Some(true));
    }

    #[test]
    fn atiyah_central_fibre() {
        let d = build_family(&atiyah(), "x", "t").unwrap();
        let c = central_fibre(&d, 1).unwrap();
        assert_eq!(c.surface.f().to_string(), "x^2 + y*z");
        assert_eq!(c.m0.phi().to_string(), "[x, y; -z, x]");
        assert!(c.blowup.smooth());
        assert_eq!(c.blowup.fibre.generic_multiplicity, Some(1));
    }

    #[test]
    fn involution_twice_is_identity() {
        let d = build_family(&atiyah(), "x", "t").unwrap();
        let twice = d.i_n.apply_involution("x", &d.family).unwrap().apply_involution("x", &d.family).unwrap();
        assert_eq!(twice.gens(), d.i_n.gens());
        assert_eq!(d.nplus.syzygy().phi(), d.n.phi());
    }

    #[test]
    fn rejects_bad_data() {
        let r = Ring::new(["x", "y", "z", "t"]).unwrap();
        let g = r.parse("y*z - t^2").unwrap();
        let bad = PolyMatrix::parse(&r, 2, 2, &["t", "y", "z", "-t"]).unwrap();
        assert!(KnorrerDatum::new(g, bad).is_err());
        // smooth central fibre
        let g = r.parse("y - t^2").unwrap();
        let theta = PolyMatrix::parse(&r, 2, 2, &["t", "1", "-y", "-t"]).unwrap();
        let k = KnorrerDatum::new(g, theta).unwrap();
        assert!(build_family(&k, "x", "t").is_err());
    }

    #[test]
    fn free_summand_refused() {
        let r = Ring::new(["x", "y", "z", "t"]).unwrap();
        let g = r.parse("y*z - t^2").unwrap();
        let theta = PolyMatrix::parse(
            &r,
            4,
            4,
            &["t", "y", "0", "0", "-z", "-t", "0", "0", "0", "0", "0", "1", "0", "0", "t^2 - y*z", "0"],
        )
        .unwrap();
        let k = KnorrerDatum::new(g, theta).unwrap();
        assert!(matches!(build_family(&k, "x", "t"), Err(Error::Contract(_))));
    }

    // Theta = [[0, a], [-adj a, 0]] puts z and every entry of a into the
    // ideal, so the blowup is not small; the report must say so.
    #[test]
    fn block_theta_is_not_small() {
        let r = Ring::new(["x", "y", "z", "t"]).unwrap();
        let g = r.parse("x^2*y - y^3 + t^2*x").unwrap();
        let e = [
            "0", "0", "y", "x*y + t^2", "0", "0", "-x", "-y^2", "y^2", "x*y + t^2", "0", "0", "-x", "-y", "0", "0",
        ];
        let k = KnorrerDatum::new(g, PolyMatrix::parse(&r, 4, 4, &e).unwrap()).unwrap();
        let d = build_family(&k, "z", "t").unwrap();
        assert_eq!(d.central_rdp, AdeLabel::D(4));
        let rep = verify_flop(&d, 1, 2).unwrap();
        assert!(!rep.w.small);
        assert_eq!(rep.w.fibre_dimension, 2);
        assert_eq!(rep.length, None);
    }
}
