use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::villamayor::{check_pair, greedy_columns};
use super::{BlowupIdeal, HypersurfaceSingularity, IdealSource};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::mf::MatrixFactorisation;
use crate::poly::{Poly, Rational};

/// Builds the ideal of `M / (r - 1 sections)` from explicit integer section
/// vectors (coefficients on the generators of `coker phi`), or reports why the
/// choice is not generic.
pub fn section_ideal_with(
    m: &MatrixFactorisation,
    x: &HypersurfaceSingularity,
    sections: &[Vec<i64>],
) -> Result<BlowupIdeal> {
    attempt(m, x, sections, 0, 0)
}

fn attempt(
    m: &MatrixFactorisation,
    x: &HypersurfaceSingularity,
    sections: &[Vec<i64>],
    seed: u64,
    index: usize,
) -> Result<BlowupIdeal> {
    check_pair(m, x)?;
    let n = m.size();
    let r = m.rank();
    if sections.len() != r - 1 || sections.iter().any(|s| s.len() != n) {
        return Err(Error::Contract(format!("need {} section vectors of length {n}", r - 1)));
    }
    let ring = x.ring();
    let cols: Vec<Vec<Poly>> = sections
        .iter()
        .map(|s| s.iter().map(|&c| Poly::constant(ring, Rational::from_integer(c.into()))).collect())
        .collect();
    let aug: PolyMatrix = m.phi().prepend_columns(&cols)?;
    let fail = |detail: String| Error::Genericity { attempts: index + 1, detail };
    if n == 1 {
        return Err(Error::Contract("a 1x1 factorisation has no sections to add".into()));
    }
    let chosen = greedy_columns(&aug, n - 1, x, 0..aug.cols())?;
    if chosen.len() < n - 1 {
        return Err(fail(format!("only {} independent columns", chosen.len())));
    }
    if (0..r - 1).any(|k| !chosen.contains(&k)) {
        return Err(fail("a section is dependent on the others modulo f".into()));
    }
    // the quotient must be locally free of rank one off codimension two
    let fitting = Ideal::new(ring, aug.minor_list(n - 1)?)?.with([x.f().clone()]);
    if fitting.dimension() > x.dim() - 2 {
        return Err(fail(format!(
            "quotient not locally free in codimension one (degeneracy locus of dimension {})",
            fitting.dimension()
        )));
    }
    let rows: Vec<usize> = (0..n).collect();
    let gens = aug.submatrix(&rows, &chosen).minor_list(n - 1)?;
    BlowupIdeal::new(
        gens,
        x,
        IdealSource::GenericSections {
            seed,
            attempt: index,
            sections: sections.to_vec(),
            columns: chosen,
        },
    )
}

/// Random sections with coefficients in `-2..=2`, retried up to `tries` times.
pub fn section_ideal(
    m: &MatrixFactorisation,
    x: &HypersurfaceSingularity,
    tries: usize,
    seed: u64,
) -> Result<BlowupIdeal> {
    check_pair(m, x)?;
    if m.rank() == 1 {
        return attempt(m, x, &[], seed, 0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for k in 0..tries {
        let sections: Vec<Vec<i64>> = (0..m.rank() - 1)
            .map(|_| (0..m.size()).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        match attempt(m, x, &sections, seed, k) {
            Ok(b) => return Ok(b),
            Err(Error::Genericity { detail, .. }) => failures.push(format!("{sections:?}: {detail}")),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Genericity {
        attempts: tries,
        detail: failures.join("; "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::verify_mf;
    use crate::poly::Ring;

    fn a1_sum() -> (MatrixFactorisation, HypersurfaceSingularity) {
        let r = Ring::new(["x", "y", "z"]).unwrap();
        let f = r.parse("x^2 + y*z").unwrap();
        let phi = PolyMatrix::parse(&r, 2, 2, &["x", "y", "-z", "x"]).unwrap();
        let m = verify_mf(phi.clone(), phi.adjugate().unwrap(), f.clone()).unwrap();
        (m.direct_sum(&m).unwrap(), HypersurfaceSingularity::new(f).unwrap())
    }

    #[test]
    fn zero_section_is_not_generic() {
        let (m, x) = a1_sum();
        let err = section_ideal_with(&m, &x, &[vec![0, 0, 0, 0]]).unwrap_err();
        assert!(matches!(err, Error::Genericity { .. }), "{err}");
    }

    #[test]
    fn seeded_draw_is_reproducible() {
        let (m, x) = a1_sum();
        let a = section_ideal(&m, &x, 10, 7).unwrap();
        let b = section_ideal(&m, &x, 10, 7).unwrap();
        assert!(a.ideal().equals(b.ideal()));
        assert_eq!(a.source(), b.source());
    }
}
