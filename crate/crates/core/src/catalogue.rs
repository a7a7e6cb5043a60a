//! The shipped matrix factorisations and flop families.
//!
//! Nothing is trusted: every entry is re-verified when loaded.

use std::path::Path;

use crate::blowup::{classify_rdp, AdeLabel, HypersurfaceSingularity};
use crate::error::{Error, Result};
use crate::flop::{build_family, FlopDatum};
use crate::format::{parse_document, Document, EntrySpec, FamilySpec};
use crate::graph::{wunram_table, DualGraph};
use crate::mf::MatrixFactorisation;

/// Indecomposable factorisations of `A1`..`A4` and `D4`.
pub const ENTRIES: &str = include_str!("../data/catalogue.fk");
/// One-parameter families given by Knörrer data.
pub const FAMILIES: &str = include_str!("../data/families.fk");

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub label: AdeLabel,
    /// Bourbaki node of the dual graph.
    pub node: usize,
    pub x: HypersurfaceSingularity,
    pub mf: MatrixFactorisation,
}

impl CatalogueEntry {
    /// `A2/1` style name.
    pub fn name(&self) -> String {
        format!("{}/{}", self.label, self.node)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalogue {
    pub entries: Vec<CatalogueEntry>,
    pub families: Vec<FamilySpec>,
}

fn at_line(line: usize, e: Error) -> Error {
    Error::Verification(format!("catalogue line {line}: {e}"))
}

fn check_entry(spec: &EntrySpec) -> Result<CatalogueEntry> {
    let mf = MatrixFactorisation::verify_with_rank(spec.phi.clone(), spec.psi.clone(), spec.f.clone(), spec.rank)?;
    if !mf.is_minimal() {
        return Err(Error::Verification("factorisation has a free summand".into()));
    }
    let class = classify_rdp(&spec.f)?;
    if class.label != Some(spec.label) {
        return Err(Error::Verification(format!("{} is {class}, not {}", spec.f, spec.label)));
    }
    let graph = DualGraph::ade(spec.label);
    let table = wunram_table(&graph)?;
    let Some(&(_, coefficient)) = table.iter().find(|(n, _)| *n == spec.node) else {
        return Err(Error::Verification(format!("{} has no node {}", spec.label, spec.node)));
    };
    if coefficient != spec.rank as u64 {
        return Err(Error::Verification(format!(
            "node {} of {} has fundamental-cycle coefficient {coefficient}, but rank {} is declared",
            spec.node, spec.label, spec.rank
        )));
    }
    Ok(CatalogueEntry {
        label: spec.label,
        node: spec.node,
        x: HypersurfaceSingularity::new(spec.f.clone())?,
        mf,
    })
}

impl Catalogue {
    /// The built-in data, verified.
    pub fn builtin() -> Result<Catalogue> {
        let mut c = Catalogue::parse(ENTRIES)?;
        c.merge(Catalogue::parse(FAMILIES)?);
        Ok(c)
    }

    /// Reads entries and families from one document.
    pub fn parse(text: &str) -> Result<Catalogue> {
        Catalogue::from_document(parse_document(text)?)
    }

    pub fn load(path: &Path) -> Result<Catalogue> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Contract(format!("cannot read {}: {e}", path.display())))?;
        Catalogue::parse(&text)
    }

    pub fn from_document(doc: Document) -> Result<Catalogue> {
        let entries = doc
            .entries
            .iter()
            .map(|s| check_entry(s).map_err(|e| at_line(s.line, e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalogue {
            entries,
            families: doc.families,
        })
    }

    pub fn merge(&mut self, other: Catalogue) {
        self.entries.extend(other.entries);
        self.families.extend(other.families);
    }

    /// Entries on the singularity `label`, in node order.
    pub fn on(&self, label: AdeLabel) -> Vec<&CatalogueEntry> {
        let mut v: Vec<_> = self.entries.iter().filter(|e| e.label == label).collect();
        v.sort_by_key(|e| e.node);
        v
    }

    pub fn entry(&self, label: AdeLabel, node: usize) -> Option<&CatalogueEntry> {
        self.entries.iter().find(|e| e.label == label && e.node == node)
    }

    pub fn family(&self, name: &str) -> Option<&FamilySpec> {
        self.families.iter().find(|f| f.name == name)
    }

    /// Every singularity with at least one entry.
    pub fn labels(&self) -> Vec<AdeLabel> {
        let mut v: Vec<_> = self.entries.iter().map(|e| e.label).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Builds a family and checks the declared central RDP.
pub fn build_spec(spec: &FamilySpec) -> Result<FlopDatum> {
    let d = build_family(&spec.knorrer, &spec.square, &spec.param)?;
    if let Some(rdp) = spec.rdp {
        if rdp != d.central_rdp {
            return Err(Error::Verification(format!(
                "family {} has central fibre {}, declared {rdp}",
                spec.name, d.central_rdp
            )));
        }
    }
    Ok(d)
}
