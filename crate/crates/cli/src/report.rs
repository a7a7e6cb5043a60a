//! Structured reports. Every type round-trips through serde, and all
//! mathematical objects are carried as their printed form.

use std::fmt::{self, Write as _};

use flopkit::blowup::{BlowupReport, Equivalence, RdpClass, SingularPoint};
use flopkit::flop::{BaseChangeCheck, CentralFibre, FlopReport, SideReport};
use flopkit::graph::PartialResolution;
use flopkit::{Error, MonomialOrder};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub seed: u64,
    pub search_degree: u32,
    pub order: String,
    /// False when some check in the body failed.
    pub ok: bool,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "items", rename_all = "kebab-case")]
pub enum Body {
    VerifyMf(Vec<MfSummary>),
    Blowup(Vec<BlowupSummary>),
    Classify(Vec<ClassifySummary>),
    Graph(Vec<GraphSummary>),
    Flop(Vec<FlopSummary>),
    Catalogue(CatalogueSummary),
}

/// Written instead of a report when the job could not run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub command: String,
    pub input: String,
    pub kind: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub exit_code: i32,
}

impl Failure {
    pub fn new(command: &str, input: &str, e: &Error) -> Failure {
        let (kind, line, column, exit_code) = match e {
            Error::Format { line, column, .. } => ("parse", Some(*line), Some(*column), 2),
            Error::Parse(p) => ("parse", None, Some(p.offset + 1), 2),
            Error::Contract(_) => ("contract", None, None, 1),
            Error::Verification(_) => ("verification", None, None, 1),
            Error::Genericity { .. } => ("genericity", None, None, 1),
        };
        Failure {
            command: command.to_string(),
            input: input.to_string(),
            kind: kind.to_string(),
            message: e.to_string(),
            line,
            column,
            exit_code,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MfSummary {
    pub name: String,
    pub f: String,
    pub phi: String,
    pub psi: String,
    pub size: usize,
    pub rank: usize,
    pub syzygy_rank: usize,
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub coords: Vec<(String, String)>,
    pub class: Option<String>,
}

impl From<&SingularPoint> for PointSummary {
    fn from(p: &SingularPoint) -> Self {
        PointSummary {
            coords: p.coords.iter().map(|(n, v)| (n.clone(), v.to_string())).collect(),
            class: p.class.as_ref().map(RdpClass::to_string),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartSummary {
    /// 1-based.
    pub index: usize,
    pub variables: Vec<String>,
    /// Reduced Gröbner basis in the requested order.
    pub equations: Vec<String>,
    pub smooth: bool,
    pub singular_locus_dimension: i64,
    pub points: Vec<PointSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowupSummary {
    pub name: String,
    pub f: String,
    pub rank: usize,
    pub ideal: String,
    pub charts: Vec<ChartSummary>,
    pub smooth: bool,
    pub fibre_dimension: i64,
    pub fibre_multiplicity: Option<u64>,
    pub rational_curves: bool,
    pub residual: Vec<String>,
    pub residual_complete: bool,
}

impl BlowupSummary {
    pub fn new(name: &str, rank: usize, f: String, b: &BlowupReport, order: &MonomialOrder) -> Self {
        let charts = b
            .charts
            .iter()
            .zip(&b.singularities)
            .map(|(c, s)| ChartSummary {
                index: c.index + 1,
                variables: c.simplified.ring.vars().to_vec(),
                equations: c
                    .simplified
                    .ideal
                    .groebner_basis(order)
                    .polys()
                    .iter()
                    .map(|p| p.to_string())
                    .collect(),
                smooth: s.smooth,
                singular_locus_dimension: s.singular_locus_dimension,
                points: s.points.iter().map(PointSummary::from).collect(),
            })
            .collect();
        BlowupSummary {
            name: name.to_string(),
            f,
            rank,
            ideal: b.ideal.to_string(),
            charts,
            smooth: b.smooth(),
            fibre_dimension: b.fibre.dimension,
            fibre_multiplicity: b.fibre.generic_multiplicity,
            rational_curves: b.fibre.rational_curves,
            residual: b.residual_labels().iter().map(|l| l.to_string()).collect(),
            residual_complete: b.residual_complete,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifySummary {
    pub name: String,
    pub f: String,
    pub label: Option<String>,
    pub verdict: String,
    pub tau: u64,
    pub hessian_corank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolutionSummary {
    pub kept: Vec<usize>,
    pub contracted: Vec<usize>,
    pub residual: Vec<String>,
}

impl From<&PartialResolution> for ResolutionSummary {
    fn from(p: &PartialResolution) -> Self {
        ResolutionSummary {
            kept: p.kept.clone(),
            contracted: p.contracted.clone(),
            residual: p.residual.iter().map(|l| l.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub name: String,
    pub label: Option<String>,
    pub self_intersections: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    pub fundamental_cycle: Vec<u64>,
    /// `(node, rank)` for ADE graphs.
    pub wunram: Option<Vec<(usize, u64)>>,
    /// Flop lengths whose table entry is this graph.
    pub flop_lengths: Vec<u32>,
    pub partial_resolutions: Vec<ResolutionSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum EquivalenceSummary {
    Equivalent { a: String, b: String, local: bool },
    Inequivalent { reason: String },
    NoWitness { candidates: usize },
}

impl From<&Equivalence> for EquivalenceSummary {
    fn from(e: &Equivalence) -> Self {
        match e {
            Equivalence::Equivalent { a, b, local } => EquivalenceSummary::Equivalent {
                a: a.to_string(),
                b: b.to_string(),
                local: *local,
            },
            Equivalence::Inequivalent { reason } => EquivalenceSummary::Inequivalent { reason: reason.clone() },
            Equivalence::NoWitness { candidates } => EquivalenceSummary::NoWitness { candidates: *candidates },
        }
    }
}

impl fmt::Display for EquivalenceSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceSummary::Equivalent { a, b, local } => {
                write!(f, "equivalent ({a}) I = ({b}) J{}", if *local { " near the origin" } else { "" })
            }
            EquivalenceSummary::Inequivalent { reason } => write!(f, "inequivalent: {reason}"),
            EquivalenceSummary::NoWitness { candidates } => write!(f, "no witness among {candidates} candidates"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideSummary {
    pub ideal: String,
    pub charts: usize,
    pub exceptional_dimension: i64,
    pub small: bool,
    pub smooth: bool,
    pub singular_charts: Vec<usize>,
    pub fibre_dimension: i64,
    pub fibre_multiplicity: Option<u64>,
}

impl From<&SideReport> for SideSummary {
    fn from(s: &SideReport) -> Self {
        SideSummary {
            ideal: s.ideal.clone(),
            charts: s.charts,
            exceptional_dimension: s.exceptional_dimension,
            small: s.small,
            smooth: s.smooth,
            singular_charts: s.singular_charts.iter().map(|c| c + 1).collect(),
            fibre_dimension: s.fibre_dimension,
            fibre_multiplicity: s.fibre_multiplicity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseChangeSummary {
    pub side: String,
    pub t: String,
    pub restricted: String,
    pub direct: String,
    pub equivalence: EquivalenceSummary,
}

impl From<&BaseChangeCheck> for BaseChangeSummary {
    fn from(b: &BaseChangeCheck) -> Self {
        BaseChangeSummary {
            side: b.side.to_string(),
            t: b.t_value.to_string(),
            restricted: b.restricted.clone(),
            direct: b.direct.clone(),
            equivalence: (&b.equivalence).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralSummary {
    pub surface: String,
    pub phi: String,
    pub psi: String,
    pub smooth: bool,
    pub fibre_multiplicity: Option<u64>,
    pub residual: Vec<String>,
}

impl From<&CentralFibre> for CentralSummary {
    fn from(c: &CentralFibre) -> Self {
        CentralSummary {
            surface: c.surface.f().to_string(),
            phi: c.m0.phi().to_string(),
            psi: c.m0.psi().to_string(),
            smooth: c.blowup.smooth(),
            fibre_multiplicity: c.blowup.fibre.generic_multiplicity,
            residual: c.blowup.residual_labels().iter().map(|l| l.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlopSummary {
    pub name: String,
    pub f: String,
    pub rdp: String,
    pub rank: usize,
    pub length: Option<u64>,
    pub declared_length: Option<u64>,
    pub w: SideSummary,
    pub wplus: SideSummary,
    pub swap: EquivalenceSummary,
    pub swap_certified: bool,
    pub sides_distinct: EquivalenceSummary,
    pub base_change: Vec<BaseChangeSummary>,
    pub base_change_ok: bool,
    pub length_equals_rank: Option<bool>,
    pub table_consistent: Option<bool>,
    /// `None` when the central fibre could not be formed.
    pub central: Option<CentralSummary>,
    pub central_error: Option<String>,
    /// Small on both sides, swap certified, base change verified, and the
    /// declared length (if any) reproduced.
    pub is_flop: bool,
}

impl FlopSummary {
    pub fn new(
        name: &str,
        f: String,
        declared_length: Option<u64>,
        r: &FlopReport,
        central: std::result::Result<&CentralFibre, &Error>,
    ) -> Self {
        let is_flop = r.w.small
            && r.wplus.small
            && r.swap_certified
            && r.base_change_ok
            && declared_length.is_none_or(|l| r.length == Some(l));
        FlopSummary {
            name: name.to_string(),
            f,
            rdp: r.rdp_type.to_string(),
            rank: r.rank,
            length: r.length,
            declared_length,
            w: (&r.w).into(),
            wplus: (&r.wplus).into(),
            swap: (&r.swap).into(),
            swap_certified: r.swap_certified,
            sides_distinct: (&r.sides_distinct).into(),
            base_change: r.base_change.iter().map(BaseChangeSummary::from).collect(),
            base_change_ok: r.base_change_ok,
            length_equals_rank: r.length_equals_rank,
            table_consistent: r.table_consistent,
            central: central.ok().map(CentralSummary::from),
            central_error: central.err().map(|e| e.to_string()),
            is_flop,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntrySummary {
    pub name: String,
    pub f: String,
    pub size: usize,
    pub rank: usize,
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub name: String,
    pub f: String,
    pub g: String,
    pub theta: String,
    pub square: String,
    pub param: String,
    pub central_rdp: String,
    pub declared_length: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogueSummary {
    pub source: String,
    pub entries: Vec<EntrySummary>,
    pub families: Vec<FamilySummary>,
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        "none".to_string()
    } else {
        v.join(", ")
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} {}  (seed {}, search degree {}, order {})",
            self.command, self.input, self.seed, self.search_degree, self.order
        );
        match &self.body {
            Body::VerifyMf(items) => {
                for m in items {
                    let _ = writeln!(
                        s,
                        "{}: {}x{} over {}, rank {}, syzygy rank {}, minimal {}",
                        m.name,
                        m.size,
                        m.size,
                        m.f,
                        m.rank,
                        m.syzygy_rank,
                        yes(m.minimal)
                    );
                }
            }
            Body::Blowup(items) => {
                for b in items {
                    let _ = writeln!(s, "{}: blowup of {} in rank {} module", b.name, b.f, b.rank);
                    let _ = writeln!(s, "  ideal {}", b.ideal);
                    for c in &b.charts {
                        let pts: Vec<String> = c.points.iter().map(|p| opt(&p.class)).collect();
                        let _ = writeln!(
                            s,
                            "  chart {} [{}]: ({}) {}",
                            c.index,
                            c.variables.join(" "),
                            c.equations.join(", "),
                            if c.smooth {
                                "smooth".to_string()
                            } else {
                                format!("singular: {}", list(&pts))
                            }
                        );
                    }
                    let _ = writeln!(
                        s,
                        "  fibre dimension {}, multiplicity {}, residual {}{}",
                        b.fibre_dimension,
                        opt(&b.fibre_multiplicity),
                        list(&b.residual),
                        if b.residual_complete { "" } else { " (incomplete)" }
                    );
                }
            }
            Body::Classify(items) => {
                for c in items {
                    let _ = writeln!(s, "{}: {} is {} (tau {})", c.name, c.f, c.verdict, c.tau);
                }
            }
            Body::Graph(items) => {
                for g in items {
                    let _ = writeln!(s, "{}: {} nodes, type {}", g.name, g.self_intersections.len(), opt(&g.label));
                    let z: Vec<String> = g.fundamental_cycle.iter().map(u64::to_string).collect();
                    let _ = writeln!(s, "  fundamental cycle ({})", z.join(", "));
                    if let Some(w) = &g.wunram {
                        let w: Vec<String> = w.iter().map(|(n, r)| format!("{n}:{r}")).collect();
                        let _ = writeln!(s, "  module ranks {}", w.join(" "));
                    }
                    if !g.flop_lengths.is_empty() {
                        let l: Vec<String> = g.flop_lengths.iter().map(u32::to_string).collect();
                        let _ = writeln!(s, "  simple flops of length {}", l.join(", "));
                    }
                    if !g.partial_resolutions.is_empty() {
                        let _ = writeln!(s, "  {} partial resolutions", g.partial_resolutions.len());
                    }
                }
            }
            Body::Flop(items) => {
                for r in items {
                    let _ = writeln!(s, "{}: {}  central {}  rank {}", r.name, r.f, r.rdp, r.rank);
                    for (tag, side) in [("W ", &r.w), ("W+", &r.wplus)] {
                        let _ = writeln!(
                            s,
                            "  {tag} {}  charts {}  small {}  smooth {}  fibre dim {} mult {}",
                            side.ideal,
                            side.charts,
                            yes(side.small),
                            yes(side.smooth),
                            side.fibre_dimension,
                            opt(&side.fibre_multiplicity)
                        );
                    }
                    let _ = writeln!(s, "  swap: {}", r.swap);
                    let _ = writeln!(s, "  W vs W+: {}", r.sides_distinct);
                    for b in &r.base_change {
                        let _ = writeln!(s, "  base change {} t={}: {}", b.side, b.t, b.equivalence);
                    }
                    let _ = writeln!(
                        s,
                        "  length {}  length = rank {}  table {}",
                        opt(&r.length),
                        opt(&r.length_equals_rank.map(yes)),
                        opt(&r.table_consistent.map(yes))
                    );
                    match (&r.central, &r.central_error) {
                        (Some(c), _) => {
                            let _ = writeln!(
                                s,
                                "  t=0: {} with {}, multiplicity {}, residual {}",
                                c.surface,
                                c.phi,
                                opt(&c.fibre_multiplicity),
                                list(&c.residual)
                            );
                        }
                        (None, e) => {
                            let _ = writeln!(s, "  t=0: {}", opt(e));
                        }
                    }
                    let _ = writeln!(s, "  flop: {}", yes(r.is_flop));
                }
            }
            Body::Catalogue(c) => {
                let _ = writeln!(s, "source {}", c.source);
                for e in &c.entries {
                    let _ = writeln!(s, "  {:6} {}x{} rank {} over {}", e.name, e.size, e.size, e.rank, e.f);
                }
                for f in &c.families {
                    let _ = writeln!(
                        s,
                        "  family {}: {}, central {}, length {}",
                        f.name,
                        f.f,
                        f.central_rdp,
                        opt(&f.declared_length)
                    );
                }
            }
        }
        let _ = writeln!(s, "{}", if self.ok { "ok" } else { "FAILED" });
        s
    }
}
