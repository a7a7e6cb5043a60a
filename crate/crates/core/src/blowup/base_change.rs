use super::{specialize_poly, BlowupIdeal, HypersurfaceSingularity, IdealSource};
use crate::error::{Error, Result};
use crate::poly::Rational;

/// Restricts a family blowup ideal to the fibre `var = value`, returning the
/// specialized ideal and hypersurface over the ring without `var`.
pub fn base_change_fibre(
    i: &BlowupIdeal,
    x: &HypersurfaceSingularity,
    var: &str,
    value: &Rational,
) -> Result<(BlowupIdeal, HypersurfaceSingularity)> {
    let fibre = x.specialize(var, value)?;
    let gens = i
        .gens()
        .iter()
        .map(|g| specialize_poly(g, var, value).map(|(p, _)| p))
        .collect::<Result<Vec<_>>>()?;
    let source = IdealSource::Specialized {
        var: var.to_string(),
        value: value.clone(),
    };
    let b = BlowupIdeal::new(gens, &fibre, source).map_err(|e| match e {
        Error::Verification(_) => Error::Verification(format!("ideal {i} vanishes on the fibre {var} = {value}")),
        other => other,
    })?;
    Ok((b, fibre))
}
