//! Shared fixtures for the benchmarks.

use flopkit::blowup::HypersurfaceSingularity;
use flopkit::catalogue::Catalogue;
use flopkit::{AdeLabel, Ideal, MatrixFactorisation, Ring};

/// Cyclic-3 style ideal in three variables.
pub fn cyclic3() -> Ideal {
    let r = Ring::new(["x", "y", "z"]).unwrap();
    Ideal::parse(&r, &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]).unwrap()
}

/// A mixed-degree ideal whose basis is a few dozen elements.
pub fn katsura3() -> Ideal {
    let r = Ring::new(["a", "b", "c", "d"]).unwrap();
    Ideal::parse(
        &r,
        &[
            "a + 2*b + 2*c + 2*d - 1",
            "a^2 + 2*b^2 + 2*c^2 + 2*d^2 - a",
            "2*a*b + 2*b*c + 2*c*d - b",
            "b^2 + 2*a*c + 2*b*d - c",
        ],
    )
    .unwrap()
}

/// The singularity `A_n` and the direct sum of its catalogue modules.
pub fn regular_module(n: u32) -> (HypersurfaceSingularity, MatrixFactorisation) {
    let cat = Catalogue::builtin().unwrap();
    let es = cat.on(AdeLabel::A(n));
    let mut m = es[0].mf.clone();
    for e in &es[1..] {
        m = m.direct_sum(&e.mf).unwrap();
    }
    (es[0].x.clone(), m)
}

/// The rank-2 module on `D4`.
pub fn d4_central() -> (HypersurfaceSingularity, MatrixFactorisation) {
    let cat = Catalogue::builtin().unwrap();
    let e = cat.entry(AdeLabel::D(4), 2).unwrap();
    (e.x.clone(), e.mf.clone())
}
