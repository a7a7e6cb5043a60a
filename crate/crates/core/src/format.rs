//! The line-oriented document format for polynomials, matrices, matrix
//! factorisations, Knörrer data, dual graphs and catalogue entries.
//!
//! ```text
//! # comments run to the end of the line
//! ring x y z t
//! poly g = y*z - t^2
//! matrix theta 2 2 = [t, y; -z, -t]
//! knorrer atiyah G=g theta=theta square=x param=t rdp=A1 length=1
//! matrix phi 2 2 = [x + t, y;
//!                   -z, x - t]
//! poly f = x^2 + y*z - t^2
//! matrix psi 2 2 = [x - t, -y; z, x + t]
//! mf n f=f phi=phi psi=psi rank=1
//! graph e8 E8
//! graph chain weights=-2,-3,-2 edges=1-2,2-3
//! entry A1 1 f=f phi=phi psi=psi rank=1
//! param seed = 7
//! ```
//!
//! Every item after `ring` uses the most recent ring. Names refer to items
//! defined earlier in the same document.

use std::collections::HashMap;

use crate::blowup::AdeLabel;
use crate::error::{Error, Result};
use crate::graph::DualGraph;
use crate::matrix::PolyMatrix;
use crate::mf::{KnorrerDatum, MatrixFactorisation};
use crate::poly::{Poly, Ring};

/// A matrix factorisation with the rank declared in the document, if any.
#[derive(Clone, Debug)]
pub struct NamedMf {
    pub name: String,
    pub mf: MatrixFactorisation,
    pub declared_rank: Option<usize>,
}

/// A Knörrer datum with the roles of its variables.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub name: String,
    pub knorrer: KnorrerDatum,
    pub square: String,
    pub param: String,
    pub rdp: Option<AdeLabel>,
    pub length: Option<u64>,
}

/// `node`-th indecomposable (1-based, Bourbaki numbering) on the RDP `label`.
#[derive(Clone, Debug)]
pub struct EntrySpec {
    pub label: AdeLabel,
    pub node: usize,
    pub f: Poly,
    pub phi: PolyMatrix,
    pub psi: PolyMatrix,
    pub rank: usize,
    pub line: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub rings: Vec<Ring>,
    pub polys: Vec<(String, Poly)>,
    pub matrices: Vec<(String, PolyMatrix)>,
    pub mfs: Vec<NamedMf>,
    pub families: Vec<FamilySpec>,
    pub graphs: Vec<(String, DualGraph)>,
    pub entries: Vec<EntrySpec>,
    pub params: Vec<(String, String)>,
}

impl Document {
    pub fn poly(&self, name: &str) -> Option<&Poly> {
        self.polys.iter().rev().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn matrix(&self, name: &str) -> Option<&PolyMatrix> {
        self.matrices.iter().rev().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn param(&self, name: &str) -> Option<&str> {
        self.params.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Format {
        line,
        column,
        message: message.into(),
    }
}

/// One logical line: text plus the column of each byte in the source.
struct Logical {
    line: usize,
    text: String,
    columns: Vec<usize>,
}

impl Logical {
    fn col(&self, offset: usize) -> usize {
        self.columns
            .get(offset)
            .copied()
            .unwrap_or_else(|| self.columns.last().map_or(1, |c| c + 1))
    }
}

fn strip_comment(s: &str) -> &str {
    s.find('#').map_or(s, |i| &s[..i])
}

/// Joins lines inside an open `[` so matrices may span several lines.
fn logical_lines(text: &str) -> Result<Vec<Logical>> {
    let mut out: Vec<Logical> = Vec::new();
    let mut open: Option<Logical> = None;
    let mut depth = 0i32;
    for (i, raw) in text.lines().enumerate() {
        let body = strip_comment(raw);
        let cols: Vec<usize> = (1..=body.len()).collect();
        match open.as_mut() {
            Some(cur) => {
                cur.text.push(' ');
                cur.columns.push(cur.columns.last().map_or(1, |c| c + 1));
                cur.text.push_str(body);
                cur.columns.extend(cols);
            }
            None => {
                if body.trim().is_empty() {
                    continue;
                }
                open = Some(Logical {
                    line: i + 1,
                    text: body.to_string(),
                    columns: cols,
                });
            }
        }
        depth += body.matches('[').count() as i32 - body.matches(']').count() as i32;
        if depth < 0 {
            let c = body.rfind(']').map_or(1, |c| c + 1);
            return Err(err(i + 1, c, "unmatched `]`"));
        }
        if depth == 0 {
            out.extend(open.take());
        }
    }
    if let Some(cur) = open {
        let c = cur.text.find('[').map_or(1, |o| cur.col(o));
        return Err(err(cur.line, c, "unterminated `[`"));
    }
    Ok(out)
}

/// Whitespace-separated words with their byte offsets.
fn words(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((b, &s[b..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(b) = start {
        out.push((b, &s[b..]));
    }
    out
}

fn is_name(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '+' || c == '-' || c == '.')
}

struct Parser {
    doc: Document,
    ring: Option<Ring>,
    names: HashMap<String, usize>,
}

type KeyValues<'a> = Vec<(usize, &'a str, usize, &'a str)>;

impl Parser {
    fn ring(&self, l: &Logical) -> Result<&Ring> {
        self.ring
            .as_ref()
            .ok_or_else(|| err(l.line, 1, "no `ring` declared before this item"))
    }

    fn claim(&mut self, l: &Logical, at: usize, name: &str) -> Result<()> {
        if !is_name(name) {
            return Err(err(l.line, l.col(at), format!("invalid name `{name}`")));
        }
        if let Some(prev) = self.names.insert(name.to_string(), l.line) {
            return Err(err(l.line, l.col(at), format!("`{name}` already defined on line {prev}")));
        }
        Ok(())
    }

    fn key_values<'a>(l: &Logical, ws: &[(usize, &'a str)]) -> Result<KeyValues<'a>> {
        ws.iter()
            .map(|&(o, w)| match w.split_once('=') {
                Some((k, v)) if !k.is_empty() && !v.is_empty() => Ok((o, k, o + k.len() + 1, v)),
                _ => Err(err(l.line, l.col(o), format!("expected key=value, found `{w}`"))),
            })
            .collect()
    }

    fn lookup_poly(&self, l: &Logical, at: usize, v: &str) -> Result<Poly> {
        if let Some(p) = self.doc.poly(v) {
            return Ok(p.clone());
        }
        // inline expressions without spaces are accepted too
        let ring = self.ring(l)?;
        ring.parse(v).map_err(|e| match e {
            Error::Parse(p) => err(l.line, l.col(at + p.offset), format!("unknown polynomial `{v}`: {}", p.message)),
            other => other,
        })
    }

    fn lookup_matrix(&self, l: &Logical, at: usize, v: &str) -> Result<PolyMatrix> {
        self.doc
            .matrix(v)
            .cloned()
            .ok_or_else(|| err(l.line, l.col(at), format!("unknown matrix `{v}`")))
    }

    fn number<T: std::str::FromStr>(l: &Logical, at: usize, v: &str, what: &str) -> Result<T> {
        v.parse()
            .map_err(|_| err(l.line, l.col(at), format!("expected {what}, found `{v}`")))
    }

    fn wrap(l: &Logical, at: usize, e: Error) -> Error {
        match e {
            Error::Format { .. } => e,
            Error::Parse(p) => err(l.line, l.col(at + p.offset), p.message),
            // keep the kind so callers can tell bad syntax from bad maths
            Error::Contract(m) => Error::Contract(format!("line {}, column {}: {m}", l.line, l.col(at))),
            Error::Verification(m) => Error::Verification(format!("line {}, column {}: {m}", l.line, l.col(at))),
            other => err(l.line, l.col(at), other.to_string()),
        }
    }

    fn item(&mut self, l: &Logical) -> Result<()> {
        let ws = words(&l.text);
        let (_, head) = ws[0];
        match head {
            "ring" => {
                let vars: Vec<&str> = ws[1..].iter().map(|(_, w)| *w).collect();
                let ring = Ring::new(vars).map_err(|e| Self::wrap(l, ws.get(1).map_or(0, |w| w.0), e))?;
                self.doc.rings.push(ring.clone());
                self.ring = Some(ring);
            }
            "poly" => self.poly(l, &ws)?,
            "matrix" => self.matrix(l, &ws)?,
            "mf" => self.mf(l, &ws)?,
            "knorrer" => self.knorrer(l, &ws)?,
            "graph" => self.graph(l, &ws)?,
            "entry" => self.entry(l, &ws)?,
            "param" => {
                let rest = ws.get(1).map_or("", |&(o, _)| &l.text[o..]);
                let Some((k, v)) = rest.split_once('=') else {
                    return Err(err(l.line, l.col(ws[0].0), "expected `param NAME = VALUE`"));
                };
                self.doc.params.push((k.trim().to_string(), v.trim().to_string()));
            }
            other => return Err(err(l.line, l.col(ws[0].0), format!("unknown item `{other}`"))),
        }
        Ok(())
    }

    fn poly(&mut self, l: &Logical, ws: &[(usize, &str)]) -> Result<()> {
        let Some(eq) = l.text.find('=') else {
            return Err(err(l.line, l.col(ws[0].0), "expected `poly NAME = EXPRESSION`"));
        };
        let head = words(&l.text[..eq]);
        if head.len() != 2 {
            return Err(err(l.line, l.col(ws[0].0), "expected `poly NAME = EXPRESSION`"));
        }
        let name = head[1].1;
        self.claim(l, head[1].0, name)?;
        let p = self.ring(l)?.parse(&l.text[eq + 1..]).map_err(|e| Self::wrap(l, eq + 1, e))?;
        self.doc.polys.push((name.to_string(), p));
        Ok(())
    }

    fn matrix(&mut self, l: &Logical, ws: &[(usize, &str)]) -> Result<()> {
        let (Some(eq), Some(open)) = (l.text.find('='), l.text.find('[')) else {
            return Err(err(l.line, l.col(ws[0].0), "expected `matrix NAME ROWS COLS = [..; ..]`"));
        };
        let head = words(&l.text[..eq]);
        if head.len() != 4 || open < eq {
            return Err(err(l.line, l.col(ws[0].0), "expected `matrix NAME ROWS COLS = [..; ..]`"));
        }
        let name = head[1].1;
        let rows: usize = Self::number(l, head[2].0, head[2].1, "a row count")?;
        let cols: usize = Self::number(l, head[3].0, head[3].1, "a column count")?;
        if rows == 0 || cols == 0 {
            return Err(err(l.line, l.col(head[2].0), "matrices need positive dimensions"));
        }
        let close = l.text.rfind(']').expect("brackets balanced");
        if !l.text[close + 1..].trim().is_empty() {
            return Err(err(l.line, l.col(close + 1), "unexpected text after `]`"));
        }
        self.claim(l, head[1].0, name)?;
        let ring = self.ring(l)?.clone();
        let body = &l.text[open + 1..close];
        let mut entries = Vec::new();
        let mut row_start = open + 1;
        let row_texts: Vec<&str> = body.split(';').collect();
        if row_texts.len() != rows {
            return Err(err(l.line, l.col(open), format!("expected {rows} rows, found {}", row_texts.len())));
        }
        for row in row_texts {
            let mut start = row_start;
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != cols {
                return Err(err(
                    l.line,
                    l.col(row_start),
                    format!("expected {cols} entries in a row, found {}", cells.len()),
                ));
            }
            for cell in cells {
                entries.push(ring.parse(cell).map_err(|e| Self::wrap(l, start, e))?);
                start += cell.len() + 1;
            }
            row_start += row.len() + 1;
        }
        let m = PolyMatrix::new(&ring, rows, cols, entries).map_err(|e| Self::wrap(l, open, e))?;
        self.doc.matrices.push((name.to_string(), m));
        Ok(())
    }

    fn required<'a>(l: &Logical, kv: &KeyValues<'a>, key: &str) -> Result<(usize, &'a str)> {
        kv.iter()
            .find(|(_, k, _, _)| *k == key)
            .map(|&(_, _, o, v)| (o, v))
            .ok_or_else(|| err(l.line, l.col(0), format!("missing `{key}=`")))
    }

    fn optional<'a>(kv: &KeyValues<'a>, key: &str) -> Option<(usize, &'a str)> {
        kv.iter().find(|(_, k, _, _)| *k == key).map(|&(_, _, o, v)| (o, v))
    }

    fn check_keys(l: &Logical, kv: &KeyValues, allowed: &[&str]) -> Result<()> {
        for &(o, k, _, _) in kv {
            if !allowed.contains(&k) {
                return Err(err(l.line, l.col(o), format!("unknown key `{k}`")));
            }
        }
        Ok(())
    }

    fn mf_parts(&self, l: &Logical, kv: &KeyValues) -> Result<(Poly, PolyMatrix, PolyMatrix, Option<usize>)> {
        let (fo, f) = Self::required(l, kv, "f")?;
        let (po, phi) = Self::required(l, kv, "phi")?;
        let (qo, psi) = Self::required(l, kv, "psi")?;
        let rank = match Self::optional(kv, "rank") {
            Some((o, v)) => Some(Self::number(l, o, v, "a rank")?),
            None => None,
        };
        Ok((
            self.lookup_poly(l, fo, f)?,
            self.lookup_matrix(l, po, phi)?,
            self.lookup_matrix(l, qo, psi)?,
            rank,
        ))
    }

    fn mf(&mut self, l: &Logical, ws: &[(usize, &str)]) -> Result<()> {
        if ws.len() < 2 {
            return Err(err(l.line, l.col(ws[0].0), "expected `mf NAME f=.. phi=.. psi=..`"));
        }
        let kv = Self::key_values(l, &ws[2..])?;
        Self::check_keys(l, &kv, &["f", "phi", "psi", "rank"])?;
        let (f, phi, psi, declared_rank) = self.mf_parts(l, &kv)?;
        let mf = match declared_rank {
            Some(r) => MatrixFactorisation::verify_with_rank(phi, psi, f, r),
            None => MatrixFactorisation::verify(phi, psi, f),
        }
        .map_err(|e| Self::wrap(l, ws[0].0, e))?;
        self.claim(l, ws[1].0, ws[1].1)?;
        self.doc.mfs.push(NamedMf {
            name: ws[1].1.to_string(),
            mf,
            declared_rank,
        });
        Ok(())
    }

    fn knorrer(&mut self, l: &Logical, ws: &[(usize, &str)]) -> Result<()> {
        if ws.len() < 2 {
            return Err(err(l.line, l.col(ws[0].0), "expected `knorrer NAME G=.. theta=.. square=.. param=..`"));
        }
        let kv = Self::key_values(l, &ws[2..])?;
        Self::check_keys(l, &kv, &["G", "theta", "square", "param", "rdp", "length"])?;
        let (go, g) = Self::required(l, &kv, "G")?;
        let (to, theta) = Self::required(l, &kv, "theta")?;
        let (so, square) = Self::required(l, &kv, "square")?;
        let (ao, param) = Self::required(l, &kv, "param")?;
        let ring = self.ring(l)?.clone();
        for (o, v) in [(so, square), (ao, param)] {
            if ring.index_of(v).is_none() {
                return Err(err(l.line, l.col(o), format!("`{v}` is not a ring variable")));
            }
        }
        let rdp = match Self::optional(&kv, "rdp") {
            Some((o, v)) => Some(v.parse::<AdeLabel>().map_err(|e| err(l.line, l.col(o), e))?),
            None => None,
        };
        let length = match Self::optional(&kv, "length") {
            Some((o, v)) => Some(Self::number(l, o, v, "a length")?),
            None => None,
        };
        let g = self.lookup_poly(l, go, g)?;
        let theta = self.lookup_matrix(l, to, theta)?;
        let knorrer = KnorrerDatum::new(g, theta).map_err(|e| Self::wrap(l, ws[0].0, e))?;
        self.claim(l, ws[1].0, ws[1].1)?;
        self.doc.families.push(FamilySpec {
            name: ws[1].1.to_string(),
            knorrer,
            square: square.to_string(),
            param: param.to_string(),
            rdp,
            length,
        });
        Ok(())
    }

    fn graph(&mut self, l: &Logical, ws: &[(usize, &str)]) -> Result<()> {
        if ws.len() < 3 {
            return Err(err(l.line, l.col(ws[0].0), "expected `graph NAME TYPE` or `graph NAME weights=.. edges=..`"));
        }
        let graph = if ws.len() == 3 && !ws[2].1.contains('=') {
            let label: AdeLabel = ws[2].1.parse().map_err(|e| err(l.line, l.col(ws[2].0), e))?;
            DualGraph::ade(label)
        } else {
            let kv = Self::key_values(l, &ws[2..])?;
            Self::check_keys(l, &kv, &["weights", "edges"])?;
            let (wo, w) = Self::required(l, &kv, "weights")?;
            let weights = w
                .split(',')
                .map(|s| Self::number::<i64>(l, wo, s, "an integer self-intersection"))
                .collect::<Result<Vec<_>>>()?;
            let mut edges = Vec::new();
            if let Some((eo, e)) = Self::optional(&kv, "edges") {
                for pair in e.split(',') {
                    let Some((a, b)) = pair.split_once('-') else {
                        return Err(err(l.line, l.col(eo), format!("expected an edge `a-b`, found `{pair}`")));
                    };
                    edges.push((Self::number(l, eo, a, "a node")?, Self::number(l, eo, b, "a node")?));
                }
            }
            DualGraph::new(weights, &edges).map_err(|e| Self::wrap(l, ws[2].0, e))?
        };
        self.claim(l, ws[1].0, ws[1].1)?;
        self.doc.graphs.push((ws[1].1.to_string(), graph));
        Ok(())
    }

    fn entry(&mut self, l: &Logical, ws: &[(usize, &str)]) -> Result<()> {
        if ws.len() < 3 {
            return Err(err(l.line, l.col(ws[0].0), "expected `entry LABEL NODE f=.. phi=.. psi=.. rank=..`"));
        }
        let label: AdeLabel = ws[1].1.parse().map_err(|e| err(l.line, l.col(ws[1].0), e))?;
        let node: usize = Self::number(l, ws[2].0, ws[2].1, "a node number")?;
        let kv = Self::key_values(l, &ws[3..])?;
        Self::check_keys(l, &kv, &["f", "phi", "psi", "rank"])?;
        let (f, phi, psi, rank) = self.mf_parts(l, &kv)?;
        let rank = rank.ok_or_else(|| err(l.line, l.col(ws[0].0), "catalogue entries need `rank=`"))?;
        self.doc.entries.push(EntrySpec {
            label,
            node,
            f,
            phi,
            psi,
            rank,
            line: l.line,
        });
        Ok(())
    }
}

/// Parses a whole document. Errors carry 1-based line and column.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut p = Parser {
        doc: Document::default(),
        ring: None,
        names: HashMap::new(),
    };
    for l in logical_lines(text)? {
        p.item(&l)?;
    }
    Ok(p.doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ATIYAH: &str = "\
ring x y z t
poly g = y*z - t^2   # the A1 family
matrix theta 2 2 = [t, y; -z, -t]
knorrer atiyah G=g theta=theta square=x param=t rdp=A1 length=1
poly f = x^2 + y*z - t^2
matrix phi 2 2 = [x + t, y;
                  -z, x - t]
matrix psi 2 2 = [x - t, -y; z, x + t]
mf n f=f phi=phi psi=psi rank=1
graph d5 D5
graph chain weights=-2,-3,-2 edges=1-2,2-3
param seed = 7
";

    #[test]
    fn parses_every_item() {
        let d = parse_document(ATIYAH).unwrap();
        assert_eq!(d.families.len(), 1);
        assert_eq!(d.families[0].rdp, Some(AdeLabel::A(1)));
        assert_eq!(d.mfs[0].mf.rank(), 1);
        assert_eq!(d.matrix("phi").unwrap().to_string(), "[x + t, y; -z, x - t]");
        assert_eq!(d.graphs.len(), 2);
        assert_eq!(d.param("seed"), Some("7"));
    }

    fn position(text: &str) -> (usize, usize) {
        match parse_document(text) {
            Err(Error::Format { line, column, .. }) => (line, column),
            other => panic!("expected a format error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(position("ring x y\npoly p = x + * y\n"), (2, 14));
        assert_eq!(position("poly p = x\n"), (1, 1));
        assert_eq!(position("ring x y\nmatrix m 2 2 = [x, y; x]\n"), (2, 22));
        assert_eq!(position("ring x y\nfrob p\n"), (2, 1));
        assert_eq!(position("ring x y\nmatrix m 1 1 = [x\n"), (2, 16));
        assert_eq!(position("ring x y\npoly p = x\npoly p = y\n"), (3, 6));
        assert_eq!(position("ring x y\nmf m f=x phi=a psi=b\n"), (2, 14));
    }

    #[test]
    fn verification_failures_are_reported_in_place() {
        let text = "ring x y z\npoly f = x^2 + y*z\nmatrix a 1 1 = [x]\nmf m f=f phi=a psi=a\n";
        match parse_document(text) {
            Err(Error::Verification(m)) => assert!(m.starts_with("line 4,"), "{m}"),
            other => panic!("expected a verification error, got {other:?}"),
        }
    }
}
