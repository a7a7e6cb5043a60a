//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Built without the libtest harness so the lines are always printed; the
//! process exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use flopkit::blowup::{
    blow_up, fractional_equivalent, rees_charts, section_ideal, singular_locus, villamayor_ideal, BlowupChart,
};
use flopkit::catalogue::{build_spec, Catalogue};
use flopkit::flop::verify_flop;
use flopkit::graph::{partial_resolution, wunram_table};
use flopkit::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- oracles

/// Jacobian criterion, written out: the chart is smooth iff the ideal plus
/// the codimension-sized Jacobian minors is the unit ideal.
fn chart_smooth(c: &BlowupChart) -> std::result::Result<bool, String> {
    let ideal = &c.simplified.ideal;
    let ring = &c.simplified.ring;
    if ideal.is_unit() || ideal.gens().iter().all(Poly::is_zero) {
        return Ok(true);
    }
    let gens: Vec<Poly> = ideal.gb().polys();
    let n = ring.nvars();
    let codim = n as i64 - ideal.dimension();
    if codim <= 0 {
        return Ok(true);
    }
    let entries: Vec<Poly> = gens.iter().flat_map(|g| (0..n).map(move |v| g.derivative(v))).collect();
    let jac = ok(PolyMatrix::new(ring, gens.len(), n, entries))?;
    let m = ok(minors(&jac, codim as usize))?;
    Ok(ideal.sum(&m).is_unit())
}

/// Intersection numbers `Z . E_i` from the graph data.
fn dots(g: &DualGraph, z: &[u64]) -> Vec<i64> {
    let m = g.intersection_matrix();
    (0..z.len())
        .map(|i| (0..z.len()).map(|j| m[i][j] * z[j] as i64).sum())
        .collect()
}

/// `z` is anti-nef, and no smaller positive cycle is. The anti-nef cycles
/// are closed under minimum, so checking the box below `z` suffices.
fn is_fundamental(g: &DualGraph, z: &[u64]) -> bool {
    if z.contains(&0) || dots(g, z).iter().any(|&d| d > 0) {
        return false;
    }
    let mut c = vec![1u64; z.len()];
    loop {
        if c != z && dots(g, &c).iter().all(|&d| d <= 0) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == c.len() {
                return true;
            }
            if c[i] < z[i] {
                c[i] += 1;
                break;
            }
            c[i] = 1;
            i += 1;
        }
    }
}

fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    let mut frontier = out.clone();
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..n {
                let k = m.mul(&Monomial::var(n, v, 1));
                if !out.contains(&k) && !next.contains(&k) {
                    next.push(k);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Is `p = sum h_i g_i` solvable with `deg(h_i g_i) <= d`? Exact Gaussian
/// elimination on the coefficient system.
fn in_ideal_bounded(p: &Poly, gens: &[Poly], d: u32) -> bool {
    let ring = p.ring();
    let n = ring.nvars();
    let rows = monomials_up_to(n, d);
    let row_of = |m: &Monomial| rows.iter().position(|r| r == m);
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for g in gens {
        let dg = g.total_degree();
        if dg < 0 || dg as u32 > d {
            continue;
        }
        for m in monomials_up_to(n, d - dg as u32) {
            let prod = g.mul_monomial(&m, &Rational::from_integer(1.into()));
            let mut col = vec![Rational::from_integer(0.into()); rows.len()];
            for (mono, c) in prod.terms() {
                col[row_of(mono).expect("degree bounded")] = c.clone();
            }
            cols.push(col);
        }
    }
    let mut target = vec![Rational::from_integer(0.into()); rows.len()];
    for (mono, c) in p.terms() {
        match row_of(mono) {
            Some(r) => target[r] = c.clone(),
            None => return false,
        }
    }
    // augmented matrix, rows = monomials
    let ncols = cols.len();
    let mut a: Vec<Vec<Rational>> = (0..rows.len())
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != Rational::from_integer(0.into())) else { continue };
        a.swap(rank, piv);
        let inv = a[rank][c].recip();
        for v in a[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != Rational::from_integer(0.into()) {
                let k = a[r][c].clone();
                for j in c..=ncols {
                    let t = &a[rank][j] * &k;
                    a[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    a[rank..].iter().all(|row| row[ncols] == Rational::from_integer(0.into()))
}

// ---------------------------------------------------------------- helpers

fn random_poly(ring: &Ring, rng: &mut ChaCha8Rng, max_deg: u32, terms: usize, constant: bool) -> Poly {
    let n = ring.nvars();
    let monos: Vec<Monomial> = monomials_up_to(n, max_deg)
        .into_iter()
        .filter(|m| constant || !m.is_one())
        .collect();
    let mut p = ring.zero();
    for _ in 0..terms {
        let m = monos.choose(rng).unwrap().clone();
        let mut c: i64 = rng.gen_range(-3..=3);
        if c == 0 {
            c = 1;
        }
        p = &p + &Poly::monomial(ring, m, Rational::from_integer(c.into()));
    }
    if p.is_zero() {
        ring.gen(0)
    } else {
        p
    }
}

fn random_ring(rng: &mut ChaCha8Rng) -> Ring {
    let names = ["x", "y", "z"];
    let n = rng.gen_range(2..=3);
    Ring::new(names[..n].iter().copied()).unwrap()
}

fn expected_residual(n: u32, j: u32) -> Vec<AdeLabel> {
    let mut v: Vec<AdeLabel> = [j - 1, n - j].into_iter().filter(|&k| k > 0).map(AdeLabel::A).collect();
    v.sort();
    v
}

fn an_entries(cat: &Catalogue) -> Vec<&CatalogueEntry> {
    (1..=4).flat_map(|n| cat.on(AdeLabel::A(n))).collect()
}

// ---------------------------------------------------------------- criteria

fn atiyah() -> Outcome {
    let cat = ok(Catalogue::builtin())?;
    let spec = cat.family("atiyah").ok_or("no atiyah family")?;
    let d = ok(build_spec(spec))?;
    let r = d.family.ring();
    let f = ok(r.parse("x^2 + y*z - t^2"))?;
    ensure!(d.family.f() == &f, "family equation is {}", d.family.f());

    // presentation matrix and its adjoint, as printed
    let phi = ok(PolyMatrix::parse(r, 2, 2, &["x + t", "y", "-z", "x - t"]))?;
    let psi = ok(PolyMatrix::parse(r, 2, 2, &["x - t", "-y", "z", "x + t"]))?;
    ensure!(d.n.phi() == &phi && d.n.psi() == &psi, "N = ({}, {})", d.n.phi(), d.n.psi());
    let fi = PolyMatrix::scalar(r, 2, &f);
    ensure!(ok(phi.mul(&psi))? == fi && ok(psi.mul(&phi))? == fi, "phi psi != f I");

    // (z, x + t) kills the columns of phi, (z, -(x - t)) those of psi
    let killed = |row: [&str; 2], m: &PolyMatrix| -> std::result::Result<bool, String> {
        let g = ok(PolyMatrix::parse(r, 1, 2, &row))?;
        let prod = ok(g.mul(m))?;
        let fid = ok(Ideal::new(r, vec![f.clone()]))?;
        Ok(prod.entries().iter().all(|e| fid.contains(e)))
    };
    ensure!(killed(["z", "x + t"], &phi)?, "(z, x + t) is not a relation vector of phi");
    ensure!(killed(["z", "-x + t"], &psi)?, "(z, t - x) is not a relation vector of psi");
    let with_f = |gens: &[&str]| ok(Ideal::parse(r, gens)).map(|i| i.with([f.clone()]));
    ensure!(
        ideal_equal(&d.i_n.ideal().with([f.clone()]), &with_f(&["z", "x + t"])?),
        "I_N = {}",
        d.i_n
    );
    ensure!(
        ideal_equal(&d.i_nplus.ideal().with([f.clone()]), &with_f(&["z", "x - t"])?),
        "I_N+ = {}",
        d.i_nplus
    );

    let charts: Vec<&BlowupChart> = d.w_charts.iter().chain(&d.wplus_charts).collect();
    ensure!(charts.len() == 4, "{} charts", charts.len());
    for c in &charts {
        ensure!(chart_smooth(c)?, "chart {} is singular", c.simplified.ideal);
        ensure!(ok(singular_locus(c))?.smooth, "singular_locus disagrees on {}", c.simplified.ideal);
    }
    let rep = ok(verify_flop(&d, 1, 4))?;
    ensure!(
        rep.w.exceptional_dimension == 1 && rep.wplus.exceptional_dimension == 1,
        "exceptional dimensions {} / {}",
        rep.w.exceptional_dimension,
        rep.wplus.exceptional_dimension
    );
    ensure!(rep.swap_certified, "swap: {:?}", rep.swap);
    ensure!(rep.length == Some(1) && rep.rank == 1, "length {:?}, rank {}", rep.length, rep.rank);
    Ok(format!("I_N = {}, I_N+ = {}, 4 smooth charts, length = rank = 1", d.i_n, d.i_nplus))
}

fn route_equivalence() -> Outcome {
    let cat = ok(Catalogue::builtin())?;
    let mut n = 0;
    for e in &cat.entries {
        let v = ok(villamayor_ideal(&e.mf, &e.x))?;
        let s = ok(section_ideal(&e.mf, &e.x, 5, 1))?;
        let eq = ok(fractional_equivalent(&v, &s, &e.x, 4))?;
        ensure!(eq.is_equivalent(), "{}: {} vs {}: {:?}", e.name(), v, s, eq);
        n += 1;
    }
    Ok(format!("{n} entries, witness found for each"))
}

fn base_change() -> Outcome {
    let cat = ok(Catalogue::builtin())?;
    let mut names = Vec::new();
    for spec in &cat.families {
        let d = ok(build_spec(spec))?;
        let rep = ok(verify_flop(&d, 1, 4))?;
        for b in &rep.base_change {
            ensure!(b.ok(), "{} {} t={}: {} vs {}: {:?}", spec.name, b.side, b.t_value, b.restricted, b.direct, b.equivalence);
        }
        names.push(spec.name.clone());
    }
    Ok(format!("t = 0, 1 on both sides of {}", names.join(", ")))
}

fn mckay_wunram() -> Outcome {
    let cat = ok(Catalogue::builtin())?;
    let mut entries = an_entries(&cat);
    entries.extend(cat.on(AdeLabel::D(4)));
    for e in &entries {
        let graph = DualGraph::ade(e.label);
        let z = ok(fundamental_cycle(&graph))?;
        ensure!(is_fundamental(&graph, &z.0), "{}: {:?} is not the fundamental cycle", e.label, z.0);
        let table = ok(wunram_table(&graph))?;
        let coefficient = table[e.node - 1].1;
        let i = ok(villamayor_ideal(&e.mf, &e.x))?;
        let b = ok(blow_up(i, &e.x, 7))?;
        let mult = b.fibre.generic_multiplicity;
        ensure!(
            mult == Some(e.mf.rank() as u64) && coefficient == e.mf.rank() as u64,
            "{}: multiplicity {:?}, rank {}, cycle coefficient {coefficient}",
            e.name(),
            mult,
            e.mf.rank()
        );
    }
    Ok(format!("{} entries, multiplicity = rank = cycle coefficient", entries.len()))
}

fn contractions() -> Outcome {
    let cat = ok(Catalogue::builtin())?;
    let entries = an_entries(&cat);
    for e in &entries {
        let AdeLabel::A(n) = e.label else { unreachable!() };
        let j = e.node as u32;
        let i = ok(villamayor_ideal(&e.mf, &e.x))?;
        let b = ok(blow_up(i, &e.x, 7))?;
        ensure!(b.residual_complete, "{}: residual points not all classified", e.name());
        let found = b.residual_labels();
        let mut combinatorial = ok(partial_resolution(&DualGraph::ade(e.label), &[e.node]))?.residual;
        combinatorial.sort();
        let expected = expected_residual(n, j);
        ensure!(
            found == expected && combinatorial == expected,
            "{}: charts give {:?}, graph gives {:?}, expected {:?}",
            e.name(),
            found,
            combinatorial,
            expected
        );
    }
    Ok(format!("{} blowups match the contracted subgraphs", entries.len()))
}

fn minimal_resolution() -> Outcome {
    let cat = ok(Catalogue::builtin())?;
    let mut charts = 0;
    for n in 1..=3 {
        let es = cat.on(AdeLabel::A(n));
        let mut m = es[0].mf.clone();
        for e in &es[1..] {
            m = ok(m.direct_sum(&e.mf))?;
        }
        let x = &es[0].x;
        let i = ok(villamayor_ideal(&m, x))?;
        let cs = ok(rees_charts(&i, x))?;
        for c in &cs {
            ensure!(chart_smooth(c)?, "A{n}: chart {} singular", c.simplified.ideal);
            ensure!(ok(singular_locus(c))?.smooth, "A{n}: singular_locus disagrees on {}", c.simplified.ideal);
        }
        charts += cs.len();
    }
    Ok(format!("A1..A3, {charts} charts, all smooth"))
}

fn table_fidelity() -> Outcome {
    let table = [
        AdeLabel::A(1),
        AdeLabel::D(4),
        AdeLabel::E(6),
        AdeLabel::E(7),
        AdeLabel::E(8),
        AdeLabel::E(8),
    ];
    for (k, want) in table.iter().enumerate() {
        let l = k as u32 + 1;
        let got = ok(katz_morrison(l))?;
        ensure!(got == *want, "length {l}: {got}, expected {want}");
        let g = DualGraph::ade(got);
        let z = ok(fundamental_cycle(&g))?;
        ensure!(is_fundamental(&g, &z.0), "{got}: {:?} is not fundamental", z.0);
        ensure!(z.0.contains(&(l as u64)), "{got}: cycle {:?} has no coefficient {l}", z.0);
    }
    ensure!(katz_morrison(0).is_err() && katz_morrison(7).is_err(), "lengths outside 1..6 accepted");
    Ok("A1 D4 E6 E7 E8 E8, each length attained".into())
}

fn kernel() -> Outcome {
    const IDEALS: u64 = 24;
    let mut members = 0;
    let mut non_members = 0;
    let mut undecided = 0;
    for seed in 0..IDEALS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = random_ring(&mut rng);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Poly> = (0..k)
            .map(|_| {
                let t = rng.gen_range(1..=4);
                random_poly(&ring, &mut rng, 3, t, false)
            })
            .collect();
        let ideal = ok(Ideal::new(&ring, gens.clone()))?;

        let gb = ideal.gb();
        let again = GroebnerBasis::compute(&ring, &gb.polys(), gb.order());
        ensure!(again.same_as(gb), "seed {seed}: Gröbner basis not idempotent");
        let lex = ideal.groebner_basis(&MonomialOrder::Lex);
        ensure!(
            GroebnerBasis::compute(&ring, &lex.polys(), &MonomialOrder::Lex).same_as(&lex),
            "seed {seed}: lex basis not idempotent"
        );

        for trial in 0..6 {
            let mut p = ring.zero();
            let mut d = 0;
            for g in &gens {
                let h = random_poly(&ring, &mut rng, 1, 2, true);
                d = d.max(h.total_degree() + g.total_degree());
                p = &p + &(&h * g);
            }
            if trial >= 3 {
                // perturb: membership now unknown
                p = &p + &random_poly(&ring, &mut rng, 3, 1, true);
                d = d.max(p.total_degree());
            }
            let nf_member = ideal.normal_form(&p).is_zero();
            let la_member = in_ideal_bounded(&p, &gens, d.max(0) as u32 + 2);
            ensure!(
                !la_member || nf_member,
                "seed {seed}: {p} has a bounded representation but normal form {}",
                ideal.normal_form(&p)
            );
            if trial < 3 {
                ensure!(nf_member && la_member, "seed {seed}: constructed member {p} rejected");
                members += 1;
            } else if nf_member == la_member {
                non_members += usize::from(!nf_member);
                members += usize::from(nf_member);
            } else {
                undecided += 1;
            }
        }

        let g = random_poly(&ring, &mut rng, 2, 2, false);
        let s1 = ok(ideal.saturate(&g))?;
        let s2 = ok(s1.saturate(&g))?;
        ensure!(ideal_equal(&s1, &s2), "seed {seed}: saturation by {g} not idempotent");
        ensure!(s1.contains_ideal(&ideal), "seed {seed}: saturation lost generators");

        let (rows, cols) = (rng.gen_range(2..=3), 3);
        let entries: Vec<Poly> = (0..rows * cols).map(|_| random_poly(&ring, &mut rng, 2, 2, true)).collect();
        let m = ok(PolyMatrix::new(&ring, rows, cols, entries))?;
        let mut rp: Vec<usize> = (0..rows).collect();
        let mut cp: Vec<usize> = (0..cols).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        let pm = m.submatrix(&rp, &cp);
        for k in 1..=rows {
            ensure!(
                ideal_equal(&ok(minors(&m, k))?, &ok(minors(&pm, k))?),
                "seed {seed}: {k}-minors change under permutation"
            );
        }
    }
    ensure!(undecided == 0, "{undecided} normal-form members lacked a bounded representation");
    Ok(format!(
        "seeds 0..{IDEALS}: {members} members, {non_members} non-members agree with linear algebra"
    ))
}

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { number: 1, name: "Atiyah flop", budget: Some(Duration::from_secs(10)), run: atiyah },
        Criterion { number: 2, name: "route equivalence", budget: Some(Duration::from_secs(60)), run: route_equivalence },
        Criterion { number: 3, name: "base-change square", budget: None, run: base_change },
        Criterion { number: 4, name: "McKay-Wunram multiplicity", budget: None, run: mckay_wunram },
        Criterion { number: 5, name: "contraction combinatorics", budget: None, run: contractions },
        Criterion { number: 6, name: "minimal resolution", budget: Some(Duration::from_secs(120)), run: minimal_resolution },
        Criterion { number: 7, name: "length table", budget: None, run: table_fidelity },
        Criterion { number: 8, name: "kernel invariants", budget: None, run: kernel },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        println!("criterion {} ({}): {tag} [{elapsed:.2?}] {detail}", c.number, c.name);
        failed += usize::from(outcome.is_err());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
