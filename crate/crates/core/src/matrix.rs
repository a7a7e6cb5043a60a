//! Square and rectangular matrices of polynomials.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{Poly, Ring};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<PolyMatrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::Contract("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Contract(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::Contract(format!("entry {bad} not in ring ({ring})")));
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// Parses row-major entry strings.
    pub fn parse(ring: &Ring, rows: usize, cols: usize, entries: &[&str]) -> Result<PolyMatrix> {
        let e = entries.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(ring, rows, cols, e)
    }

    pub fn identity(ring: &Ring, n: usize) -> PolyMatrix {
        PolyMatrix::scalar(ring, n, &ring.one())
    }

    pub fn scalar(ring: &Ring, n: usize, s: &Poly) -> PolyMatrix {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { s.clone() } else { ring.zero() })
            .collect();
        PolyMatrix {
            ring: ring.clone(),
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        let entries: Vec<Poly> = self.entries.iter().map(f).collect();
        let ring = entries.first().map(|e| e.ring().clone()).unwrap_or_else(|| self.ring.clone());
        PolyMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn to_ring(&self, target: &Ring) -> Result<PolyMatrix> {
        let e = self.entries.iter().map(|p| p.to_ring(target)).collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(target, self.rows, self.cols, e)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Contract(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        PolyMatrix::new(&self.ring, self.rows, other.cols, entries)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &PolyMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Contract("matrix shapes differ".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        PolyMatrix::new(&self.ring, self.rows, self.cols, entries)
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &PolyMatrix) -> PolyMatrix {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut entries = vec![self.ring.zero(); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[i * cols + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                entries[(i + self.rows) * cols + j + self.cols] = other.get(i, j).clone();
            }
        }
        PolyMatrix {
            ring: self.ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Appends columns on the left.
    pub fn prepend_columns(&self, cols: &[Vec<Poly>]) -> Result<PolyMatrix> {
        let extra = cols.len();
        let width = self.cols + extra;
        let mut entries = Vec::with_capacity(self.rows * width);
        for i in 0..self.rows {
            for c in cols {
                if c.len() != self.rows {
                    return Err(Error::Contract("column length mismatch".into()));
                }
                entries.push(c[i].clone());
            }
            for j in 0..self.cols {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix::new(&self.ring, self.rows, width, entries)
    }

    pub fn is_scalar_multiple_of_identity(&self, s: &Poly) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e == s
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Contract("determinant of a non-square matrix".into()));
        }
        Ok(bareiss(&self.ring, self.rows, self.entries.clone()))
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det_cofactor(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Contract("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(self.entries[0].clone());
        }
        let mut acc = self.ring.zero();
        for j in 0..n {
            let e = self.get(0, j);
            if e.is_zero() {
                continue;
            }
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = self.submatrix(&rows, &cols).det_cofactor()?;
            let t = e * &minor;
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    /// Adjugate (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::Contract("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return PolyMatrix::new(&self.ring, 1, 1, vec![self.ring.one()]);
        }
        let mut entries = vec![self.ring.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let m = self.submatrix(&rows, &cols).det()?;
                entries[j * n + i] = if (i + j) % 2 == 0 { m } else { -&m };
            }
        }
        PolyMatrix::new(&self.ring, n, n, entries)
    }

    /// All k×k minors, row subsets outer, column subsets inner.
    pub fn minor_list(&self, k: usize) -> Result<Vec<Poly>> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::Contract(format!(
                "minor size {k} out of range for a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut out = Vec::new();
        for rs in (0..self.rows).combinations(k) {
            for cs in (0..self.cols).combinations(k) {
                out.push(self.submatrix(&rs, &cs).det()?);
            }
        }
        Ok(out)
    }
}

fn bareiss(ring: &Ring, n: usize, mut a: Vec<Poly>) -> Poly {
    let mut sign = false;
    let mut prev = ring.one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                    sign = !sign;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i * n + j] * &a[k * n + k]) - &(&a[i * n + k] * &a[k * n + j]);
                a[i * n + j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Ideal generated by all k×k minors.
pub fn minors(m: &PolyMatrix, k: usize) -> Result<Ideal> {
    Ideal::new(m.ring(), m.minor_list(k)?)
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{}x{}{self}", self.rows, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(["x", "y", "z", "t"]).unwrap()
    }

    #[test]
    fn minors_examples() {
        let r = ring();
        let m = PolyMatrix::parse(&r, 2, 2, &["x", "y", "-z", "x"]).unwrap();
        assert!(minors(&m, 2).unwrap().equals(&Ideal::parse(&r, &["x^2 + y*z"]).unwrap()));
        let id = PolyMatrix::identity(&r, 2);
        assert!(minors(&id, 1).unwrap().is_unit());
        let col = PolyMatrix::parse(&r, 2, 1, &["x + t", "-z"]).unwrap();
        assert!(minors(&col, 1).unwrap().equals(&Ideal::parse(&r, &["x + t", "z"]).unwrap()));
        assert!(minors(&m, 3).is_err());
        assert!(minors(&m, 0).is_err());
    }

    #[test]
    fn bareiss_agrees_with_cofactor() {
        let r = ring();
        let m = PolyMatrix::parse(
            &r,
            3,
            3,
            &["0", "x", "y^2", "z", "0", "x*t", "1", "y", "t - x"],
        )
        .unwrap();
        assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
        let adj = m.adjugate().unwrap();
        let prod = m.mul(&adj).unwrap();
        assert!(prod.is_scalar_multiple_of_identity(&m.det().unwrap()));
    }
}
