//! Batch front end for flopkit: one job per invocation, one report per job.

pub mod report;

use std::path::{Path, PathBuf};

use flopkit::blowup::{blow_up, classify_rdp, villamayor_ideal, HypersurfaceSingularity};
use flopkit::catalogue::{build_spec, Catalogue};
use flopkit::flop::{central_fibre, verify_flop_at};
use flopkit::format::{parse_document, Document};
use flopkit::graph::{enumerate_partial_resolutions, wunram_table};
use flopkit::{katz_morrison, fundamental_cycle, Error, MatrixFactorisation, MonomialOrder, Rational, Result};

use report::{
    Body, BlowupSummary, CatalogueSummary, ClassifySummary, EntrySummary, FamilySummary, FlopSummary, GraphSummary,
    MfSummary, Report, ResolutionSummary,
};

/// Environment variable naming a catalogue file to use instead of the
/// built-in one.
pub const CATALOGUE_ENV: &str = "FLOPKIT_CATALOGUE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    VerifyMf,
    Blowup,
    Classify,
    Graph,
    Flop,
    Catalogue,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyMf => "verify-mf",
            Command::Blowup => "blowup",
            Command::Classify => "classify",
            Command::Graph => "graph",
            Command::Flop => "flop",
            Command::Catalogue => "catalogue",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    /// `None` means the catalogue (for `flop` and `catalogue`).
    pub input: Option<PathBuf>,
    pub order: MonomialOrder,
    pub seed: u64,
    pub search_degree: u32,
    /// Extra fibre for the base-change check.
    pub t_value: Option<Rational>,
    /// Restrict `flop` to one named family.
    pub family: Option<String>,
    /// Catalogue override, normally read from [`CATALOGUE_ENV`].
    pub catalogue: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(command: Command) -> JobSpec {
        JobSpec {
            command,
            input: None,
            order: MonomialOrder::DegRevLex,
            seed: 1,
            search_degree: 4,
            t_value: None,
            family: None,
            catalogue: None,
        }
    }

    pub fn input_name(&self) -> String {
        match (&self.input, &self.catalogue) {
            (Some(p), _) => p.display().to_string(),
            (None, Some(p)) => p.display().to_string(),
            (None, None) => "builtin".to_string(),
        }
    }
}

pub fn order_name(o: &MonomialOrder) -> &'static str {
    match o {
        MonomialOrder::Lex => "lex",
        MonomialOrder::DegRevLex => "degrevlex",
        MonomialOrder::Elimination(_) => "elimination",
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Contract(format!("cannot read {}: {e}", path.display())))
}

fn document(spec: &JobSpec) -> Result<Document> {
    match &spec.input {
        Some(p) => parse_document(&read(p)?),
        None => Err(Error::Contract(format!("{} needs an input file", spec.command.name()))),
    }
}

fn catalogue(spec: &JobSpec) -> Result<Catalogue> {
    match (&spec.input, &spec.catalogue) {
        (Some(p), _) | (None, Some(p)) => Catalogue::load(p),
        (None, None) => Catalogue::builtin(),
    }
}

/// Named factorisations of a document: `mf` items, then catalogue entries.
fn factorisations(doc: Document) -> Result<Vec<(String, MatrixFactorisation)>> {
    let mut out: Vec<(String, MatrixFactorisation)> = doc.mfs.iter().map(|m| (m.name.clone(), m.mf.clone())).collect();
    let cat = Catalogue::from_document(doc)?;
    out.extend(cat.entries.into_iter().map(|e| (e.name(), e.mf)));
    if out.is_empty() {
        return Err(Error::Contract("the input defines no matrix factorisation".into()));
    }
    Ok(out)
}

fn verify_mf(spec: &JobSpec) -> Result<(bool, Body)> {
    let items: Vec<MfSummary> = factorisations(document(spec)?)?
        .into_iter()
        .map(|(name, m)| MfSummary {
            name,
            f: m.f().to_string(),
            phi: m.phi().to_string(),
            psi: m.psi().to_string(),
            size: m.size(),
            rank: m.rank(),
            syzygy_rank: m.syzygy().rank(),
            minimal: m.is_minimal(),
        })
        .collect();
    Ok((items.iter().all(|m| m.minimal), Body::VerifyMf(items)))
}

fn blowup(spec: &JobSpec) -> Result<(bool, Body)> {
    let mut items = Vec::new();
    for (name, m) in factorisations(document(spec)?)? {
        let x = HypersurfaceSingularity::new(m.f().clone())?;
        let ideal = villamayor_ideal(&m, &x)?;
        let b = blow_up(ideal, &x, spec.seed)?;
        items.push(BlowupSummary::new(&name, m.rank(), m.f().to_string(), &b, &spec.order));
    }
    Ok((true, Body::Blowup(items)))
}

fn classify(spec: &JobSpec) -> Result<(bool, Body)> {
    let doc = document(spec)?;
    if doc.polys.is_empty() {
        return Err(Error::Contract("the input defines no polynomial".into()));
    }
    let mut items = Vec::new();
    for (name, f) in &doc.polys {
        let c = classify_rdp(f)?;
        items.push(ClassifySummary {
            name: name.clone(),
            f: f.to_string(),
            label: c.label.map(|l| l.to_string()),
            verdict: c.to_string(),
            tau: c.tau,
            hessian_corank: c.hessian_corank,
        });
    }
    Ok((true, Body::Classify(items)))
}

fn graph(spec: &JobSpec) -> Result<(bool, Body)> {
    let doc = document(spec)?;
    if doc.graphs.is_empty() {
        return Err(Error::Contract("the input defines no graph".into()));
    }
    let mut items = Vec::new();
    for (name, g) in &doc.graphs {
        let z = fundamental_cycle(g)?;
        let ade = g.label().is_some();
        let flop_lengths = (1..=6u32)
            .filter(|&l| katz_morrison(l).ok() == g.label())
            .collect();
        let partial_resolutions = if ade {
            enumerate_partial_resolutions(g)?.iter().map(ResolutionSummary::from).collect()
        } else {
            Vec::new()
        };
        items.push(GraphSummary {
            name: name.clone(),
            label: g.label().map(|l| l.to_string()),
            self_intersections: g.self_intersections().to_vec(),
            edges: g.edges().collect(),
            fundamental_cycle: z.0,
            wunram: if ade { Some(wunram_table(g)?) } else { None },
            flop_lengths,
            partial_resolutions,
        });
    }
    Ok((true, Body::Graph(items)))
}

fn flop(spec: &JobSpec) -> Result<(bool, Body)> {
    let families = match &spec.input {
        Some(p) => parse_document(&read(p)?)?.families,
        None => catalogue(spec)?.families,
    };
    let families: Vec<_> = match &spec.family {
        Some(name) => families.into_iter().filter(|f| &f.name == name).collect(),
        None => families,
    };
    if families.is_empty() {
        return Err(Error::Contract(match &spec.family {
            Some(name) => format!("no family named {name}"),
            None => "the input defines no family".into(),
        }));
    }
    let extra: Vec<Rational> = spec.t_value.iter().cloned().collect();
    let mut items = Vec::new();
    for fam in &families {
        let d = build_spec(fam)?;
        let r = verify_flop_at(&d, spec.seed, spec.search_degree, &extra)?;
        let c = central_fibre(&d, spec.seed);
        items.push(FlopSummary::new(&fam.name, d.family.f().to_string(), fam.length, &r, c.as_ref()));
    }
    let ok = items.iter().all(|f| f.is_flop);
    Ok((ok, Body::Flop(items)))
}

fn list_catalogue(spec: &JobSpec) -> Result<(bool, Body)> {
    let cat = catalogue(spec)?;
    let entries = cat
        .entries
        .iter()
        .map(|e| EntrySummary {
            name: e.name(),
            f: e.mf.f().to_string(),
            size: e.mf.size(),
            rank: e.mf.rank(),
            minimal: e.mf.is_minimal(),
        })
        .collect();
    let mut families = Vec::new();
    for f in &cat.families {
        let d = build_spec(f)?;
        families.push(FamilySummary {
            name: f.name.clone(),
            f: d.family.f().to_string(),
            g: f.knorrer.g().to_string(),
            theta: f.knorrer.theta().to_string(),
            square: f.square.clone(),
            param: f.param.clone(),
            central_rdp: d.central_rdp.to_string(),
            declared_length: f.length,
        });
    }
    Ok((
        true,
        Body::Catalogue(CatalogueSummary {
            source: spec.input_name(),
            entries,
            families,
        }),
    ))
}

/// Runs one job. `Err` means no report could be produced.
pub fn run(spec: &JobSpec) -> Result<Report> {
    let (ok, body) = match spec.command {
        Command::VerifyMf => verify_mf(spec)?,
        Command::Blowup => blowup(spec)?,
        Command::Classify => classify(spec)?,
        Command::Graph => graph(spec)?,
        Command::Flop => flop(spec)?,
        Command::Catalogue => list_catalogue(spec)?,
    };
    Ok(Report {
        command: spec.command.name().to_string(),
        input: spec.input_name(),
        seed: spec.seed,
        search_degree: spec.search_degree,
        order: order_name(&spec.order).to_string(),
        ok,
        body,
    })
}
