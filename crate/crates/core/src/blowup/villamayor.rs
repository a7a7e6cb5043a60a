use super::{BlowupIdeal, HypersurfaceSingularity, IdealSource};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::mf::MatrixFactorisation;
use crate::poly::Poly;

pub(crate) fn check_pair(m: &MatrixFactorisation, x: &HypersurfaceSingularity) -> Result<()> {
    if m.f() != x.f() {
        return Err(Error::Contract(format!(
            "factorisation of {} used on the hypersurface {}",
            m.f(),
            x.f()
        )));
    }
    if m.rank() == 0 {
        return Err(Error::Contract("module of rank 0".into()));
    }
    Ok(())
}

fn some_minor_nonzero(a: &PolyMatrix, cols: &[usize], modf: &Ideal) -> Result<bool> {
    let rows: Vec<usize> = (0..a.rows()).collect();
    let sub = a.submatrix(&rows, cols);
    Ok(sub.minor_list(cols.len())?.iter().any(|m| !modf.contains(m)))
}

/// Greedy choice of `target` columns of `a` (preferring `forced` first) that
/// stay independent modulo `f`.
pub(crate) fn greedy_columns(
    a: &PolyMatrix,
    target: usize,
    x: &HypersurfaceSingularity,
    order: impl IntoIterator<Item = usize>,
) -> Result<Vec<usize>> {
    let modf = x.ideal();
    let mut chosen: Vec<usize> = Vec::new();
    for j in order {
        if chosen.len() == target {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(j);
        if some_minor_nonzero(a, &trial, &modf)? {
            chosen = trial;
        }
    }
    Ok(chosen)
}

fn minors_ideal(a: &PolyMatrix, cols: &[usize]) -> Result<Vec<Poly>> {
    let rows: Vec<usize> = (0..a.rows()).collect();
    a.submatrix(&rows, cols).minor_list(cols.len())
}

/// Villamayor's construction without the minimality precondition.
pub fn villamayor_minors(m: &MatrixFactorisation, x: &HypersurfaceSingularity) -> Result<BlowupIdeal> {
    check_pair(m, x)?;
    let target = m.size() - m.rank();
    if target == 0 {
        // free module: the ideal is the unit ideal
        return BlowupIdeal::new(vec![x.ring().one()], x, IdealSource::VillamayorMinors { columns: vec![] });
    }
    let cols = greedy_columns(m.phi(), target, x, 0..m.size())?;
    if cols.len() < target {
        return Err(Error::Verification(format!(
            "only {} of the {target} columns needed are independent modulo f; declared rank is wrong",
            cols.len()
        )));
    }
    villamayor_ideal_with_columns(m, x, &cols)
}

/// Ideal of maximal minors of `n - r` generically independent columns of phi.
pub fn villamayor_ideal(m: &MatrixFactorisation, x: &HypersurfaceSingularity) -> Result<BlowupIdeal> {
    if !m.is_minimal() {
        return Err(Error::Contract("villamayor_ideal needs a minimal factorisation".into()));
    }
    villamayor_minors(m, x)
}

/// Same construction with a caller-chosen column set.
pub fn villamayor_ideal_with_columns(
    m: &MatrixFactorisation,
    x: &HypersurfaceSingularity,
    cols: &[usize],
) -> Result<BlowupIdeal> {
    check_pair(m, x)?;
    let target = m.size() - m.rank();
    if cols.len() != target || cols.iter().any(|&c| c >= m.size()) {
        return Err(Error::Contract(format!("need {target} column indices below {}", m.size())));
    }
    let gens = minors_ideal(m.phi(), cols)?;
    if gens.iter().all(|g| x.ideal().contains(g)) {
        return Err(Error::Verification("all maximal minors vanish modulo f".into()));
    }
    BlowupIdeal::new(gens, x, IdealSource::VillamayorMinors { columns: cols.to_vec() })
}
