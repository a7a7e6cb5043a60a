//! Dual graphs of exceptional curves: fundamental cycles, contractions and
//! the rank tables of the McKay correspondence.
//!
//! Nodes are numbered from 1 following Bourbaki: `E_n` has the chain
//! `1-3-4-5-...-n` with node 2 attached to node 4, and `D_n` has the chain
//! `1-2-...-(n-2)` with nodes `n-1` and `n` attached to node `n-2`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::blowup::AdeLabel;
use crate::error::{Error, Result};

/// Weighted graph of exceptional curves with transversal intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    self_intersections: Vec<i64>,
    /// 1-based node pairs, `a < b`.
    edges: BTreeSet<(usize, usize)>,
    label: Option<AdeLabel>,
}

/// Nonnegative coefficients on the nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle(pub Vec<u64>);

/// Intersection numbers of a determinant sheaf with each node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernVector(pub Vec<u64>);

impl ChernVector {
    /// The indicator of node `j` (1-based) among `n` nodes.
    pub fn delta(n: usize, j: usize) -> ChernVector {
        ChernVector((1..=n).map(|k| u64::from(k == j)).collect())
    }
}

impl DualGraph {
    /// Validates the edges and requires a negative definite intersection matrix.
    pub fn new(self_intersections: Vec<i64>, edges: &[(usize, usize)]) -> Result<DualGraph> {
        let n = self_intersections.len();
        if n == 0 {
            return Err(Error::Contract("a dual graph needs at least one node".into()));
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b || a == 0 || b == 0 || a > n || b > n {
                return Err(Error::Contract(format!("invalid edge {a}-{b} for {n} nodes")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::Contract(format!("repeated edge {a}-{b}")));
            }
        }
        let g = DualGraph {
            self_intersections,
            edges: set,
            label: None,
        };
        if !g.is_negative_definite() {
            return Err(Error::Contract("intersection matrix is not negative definite".into()));
        }
        let label = if g.self_intersections.iter().all(|&s| s == -2) {
            identify(&g, &(1..=n).collect::<Vec<_>>())
        } else {
            None
        };
        Ok(DualGraph { label, ..g })
    }

    /// The Dynkin diagram of an ADE label, all self-intersections -2.
    pub fn ade(label: AdeLabel) -> DualGraph {
        let (n, edges): (usize, Vec<(usize, usize)>) = match label {
            AdeLabel::A(n) => (n as usize, (1..n as usize).map(|k| (k, k + 1)).collect()),
            AdeLabel::D(n) => {
                let n = n as usize;
                let mut e: Vec<(usize, usize)> = (1..n - 2).map(|k| (k, k + 1)).collect();
                e.push((n - 2, n - 1));
                e.push((n - 2, n));
                (n, e)
            }
            AdeLabel::E(n) => {
                let n = n as usize;
                let mut e = vec![(1, 3), (2, 4)];
                e.extend((3..n).map(|k| (k, k + 1)));
                (n, e)
            }
        };
        DualGraph::new(vec![-2; n], &edges).expect("Dynkin diagrams are negative definite")
    }

    pub fn len(&self) -> usize {
        self.self_intersections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.self_intersections.is_empty()
    }

    pub fn label(&self) -> Option<AdeLabel> {
        self.label
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn self_intersections(&self) -> &[i64] {
        &self.self_intersections
    }

    /// `(E_i . E_j)`, 0-based.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            m[i][i] = self.self_intersections[i];
        }
        for &(a, b) in &self.edges {
            m[a - 1][b - 1] = 1;
            m[b - 1][a - 1] = 1;
        }
        m
    }

    /// Leading principal minors alternate in sign, starting negative.
    pub fn is_negative_definite(&self) -> bool {
        let m = self.intersection_matrix();
        (1..=self.len()).all(|k| {
            let d = int_det(&m, k);
            if k % 2 == 1 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// `Z . E_i` for each node.
    pub fn dot(&self, z: &Cycle) -> Vec<i64> {
        let m = self.intersection_matrix();
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| z.0[j] as i64 * m[j][i]).sum())
            .collect()
    }

    /// Connected components of the subgraph on `nodes` (1-based).
    pub fn components(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let set: BTreeSet<usize> = nodes.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &set {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbours(v) {
                    if set.contains(&w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

fn int_det(m: &[Vec<i64>], k: usize) -> BigInt {
    let mut a: Vec<Vec<BigInt>> = (0..k).map(|i| (0..k).map(|j| BigInt::from(m[i][j])).collect()).collect();
    let mut sign = false;
    let mut prev = BigInt::from(1);
    for p in 0..k {
        if a[p][p].is_zero() {
            match (p + 1..k).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                a[i][j] = (&a[i][j] * &a[p][p] - &a[i][p] * &a[p][j]) / &prev;
            }
        }
        prev = a[p][p].clone();
    }
    if sign {
        -prev
    } else {
        prev
    }
}

/// ADE type of a connected tree of -2 curves on `nodes`.
fn identify(g: &DualGraph, nodes: &[usize]) -> Option<AdeLabel> {
    let set: BTreeSet<usize> = nodes.iter().copied().collect();
    let k = set.len();
    let deg = |v: usize| g.neighbours(v).into_iter().filter(|w| set.contains(w)).count();
    let edges = g.edges.iter().filter(|(a, b)| set.contains(a) && set.contains(b)).count();
    if edges + 1 != k || g.components(nodes).len() != 1 {
        return None;
    }
    let branch: Vec<usize> = set.iter().copied().filter(|&v| deg(v) >= 3).collect();
    match branch.as_slice() {
        [] => Some(AdeLabel::A(k as u32)),
        [c] if deg(*c) == 3 => {
            let mut arms: Vec<usize> = g
                .neighbours(*c)
                .into_iter()
                .filter(|w| set.contains(w))
                .map(|w| {
                    // walk outward from c through w
                    let (mut prev, mut cur, mut len) = (*c, w, 1);
                    loop {
                        let next: Vec<usize> =
                            g.neighbours(cur).into_iter().filter(|x| set.contains(x) && *x != prev).collect();
                        match next.as_slice() {
                            [n] => {
                                prev = cur;
                                cur = *n;
                                len += 1;
                            }
                            _ => return len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, c] => Some(AdeLabel::D(*c as u32 + 3)),
                [1, 2, 2] => Some(AdeLabel::E(6)),
                [1, 2, 3] => Some(AdeLabel::E(7)),
                [1, 2, 4] => Some(AdeLabel::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Laufer's computation sequence: start from the reduced cycle and add a
/// node while some `Z . E_i > 0`.
pub fn fundamental_cycle(g: &DualGraph) -> Result<Cycle> {
    if !g.is_negative_definite() {
        return Err(Error::Contract("intersection matrix is not negative definite".into()));
    }
    let mut z = Cycle(vec![1; g.len()]);
    loop {
        let d = g.dot(&z);
        match d.iter().position(|&v| v > 0) {
            Some(i) => z.0[i] += 1,
            None => return Ok(z),
        }
    }
}

/// Nodes `i` with `c_i = 0` (1-based); these are contracted.
pub fn contraction_set(g: &DualGraph, c: &ChernVector) -> Result<Vec<usize>> {
    if c.0.len() != g.len() {
        return Err(Error::Contract(format!(
            "chern vector has {} entries for {} nodes",
            c.0.len(),
            g.len()
        )));
    }
    Ok((1..=g.len()).filter(|&i| c.0[i - 1] == 0).collect())
}

/// `(node, rank)` pairs: the rank of the indecomposable module attached to
/// each node is its coefficient in the fundamental cycle.
pub fn wunram_table(g: &DualGraph) -> Result<Vec<(usize, u64)>> {
    if g.label().is_none() {
        return Err(Error::Contract("rank tables exist only for ADE graphs".into()));
    }
    let z = fundamental_cycle(g)?;
    Ok(z.0.iter().enumerate().map(|(i, &r)| (i + 1, r)).collect())
}

/// The RDP hyperplane section of a simple flop of length `l`.
pub fn katz_morrison(l: u32) -> Result<AdeLabel> {
    Ok(match l {
        1 => AdeLabel::A(1),
        2 => AdeLabel::D(4),
        3 => AdeLabel::E(6),
        4 => AdeLabel::E(7),
        5 | 6 => AdeLabel::E(8),
        _ => return Err(Error::Contract(format!("flop length {l} outside 1..6"))),
    })
}

/// One partial resolution: the kept curves, a chern vector realizing it and
/// the rational double points left by the contracted curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialResolution {
    pub kept: Vec<usize>,
    pub chern: ChernVector,
    pub contracted: Vec<usize>,
    pub residual: Vec<AdeLabel>,
}

/// All `2^n` partial resolutions of an ADE graph.
pub fn enumerate_partial_resolutions(g: &DualGraph) -> Result<Vec<PartialResolution>> {
    if g.label().is_none() {
        return Err(Error::Contract("partial resolutions are enumerated only for ADE graphs".into()));
    }
    let n = g.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u64..(1 << n) {
        let kept: Vec<usize> = (1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
        let contracted: Vec<usize> = (1..=n).filter(|&i| mask & (1 << (i - 1)) == 0).collect();
        let mut residual: Vec<AdeLabel> = g
            .components(&contracted)
            .iter()
            .map(|c| identify(g, c).expect("subgraphs of Dynkin diagrams are Dynkin"))
            .collect();
        residual.sort();
        let chern = ChernVector((1..=n).map(|i| u64::from(kept.contains(&i))).collect());
        out.push(PartialResolution {
            kept,
            chern,
            contracted,
            residual,
        });
    }
    Ok(out)
}

/// The partial resolution keeping exactly `kept` (1-based).
pub fn partial_resolution(g: &DualGraph, kept: &[usize]) -> Result<PartialResolution> {
    let want: BTreeSet<usize> = kept.iter().copied().collect();
    enumerate_partial_resolutions(g)?
        .into_iter()
        .find(|p| p.kept.iter().copied().collect::<BTreeSet<_>>() == want)
        .ok_or_else(|| Error::Contract(format!("no node set {kept:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_ade() -> Vec<AdeLabel> {
        let mut v: Vec<AdeLabel> = (1..=8).map(AdeLabel::A).collect();
        v.extend((4..=8).map(AdeLabel::D));
        v.extend((6..=8).map(AdeLabel::E));
        v
    }

    #[test]
    fn known_cycles() {
        let z = |l| fundamental_cycle(&DualGraph::ade(l)).unwrap().0;
        assert_eq!(z(AdeLabel::A(5)), vec![1; 5]);
        assert_eq!(z(AdeLabel::D(4)), vec![1, 2, 1, 1]);
        assert_eq!(z(AdeLabel::D(6)), vec![1, 2, 2, 2, 1, 1]);
        assert_eq!(z(AdeLabel::E(6)), vec![1, 2, 2, 3, 2, 1]);
        assert_eq!(z(AdeLabel::E(7)), vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(z(AdeLabel::E(8)), vec![2, 3, 4, 6, 5, 4, 3, 2]);
        let single = DualGraph::new(vec![-2], &[]).unwrap();
        assert_eq!(fundamental_cycle(&single).unwrap().0, vec![1]);
    }

    /// Minimal cycle >= (1..1) with Z.E_i <= 0, by exhaustive search.
    fn brute_minimal(g: &DualGraph, bound: u64) -> Vec<u64> {
        let n = g.len();
        let mut best: Option<Vec<u64>> = None;
        let mut z = vec![1u64; n];
        loop {
            let c = Cycle(z.clone());
            if g.dot(&c).iter().all(|&v| v <= 0) {
                let better = match &best {
                    None => true,
                    Some(b) => z.iter().sum::<u64>() < b.iter().sum::<u64>(),
                };
                if better {
                    best = Some(z.clone());
                }
            }
            let mut k = 0;
            while k < n {
                z[k] += 1;
                if z[k] <= bound {
                    break;
                }
                z[k] = 1;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        best.expect("bounded search finds the cycle")
    }

    #[test]
    fn laufer_matches_exhaustive_search() {
        for l in all_ade() {
            let g = DualGraph::ade(l);
            let z = fundamental_cycle(&g).unwrap();
            assert!(g.dot(&z).iter().all(|&v| v <= 0));
            if l != AdeLabel::E(8) {
                let bound = z.0.iter().max().unwrap() + 1;
                assert_eq!(z.0, brute_minimal(&g, bound), "{l}");
            }
        }
        // a non-ADE rational graph: -3 node with two -2 neighbours
        let g = DualGraph::new(vec![-2, -3, -2], &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(fundamental_cycle(&g).unwrap().0, brute_minimal(&g, 4));
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(DualGraph::new(vec![-1, -1], &[(1, 2)]).is_err());
        assert!(DualGraph::new(vec![-2, -2], &[(1, 1)]).is_err());
        // affine D4 tilde is semidefinite
        assert!(DualGraph::new(vec![-2; 5], &[(1, 3), (2, 3), (3, 4), (3, 5)]).is_err());
    }

    #[test]
    fn labels_recognised() {
        for l in all_ade() {
            assert_eq!(DualGraph::ade(l).label(), Some(l));
        }
    }

    #[test]
    fn katz_morrison_table() {
        let want = [AdeLabel::A(1), AdeLabel::D(4), AdeLabel::E(6), AdeLabel::E(7), AdeLabel::E(8), AdeLabel::E(8)];
        for (l, w) in (1..=6).zip(want) {
            assert_eq!(katz_morrison(l).unwrap(), w);
        }
        assert!(katz_morrison(0).is_err() && katz_morrison(7).is_err());
    }

    #[test]
    fn contractions() {
        let g = DualGraph::ade(AdeLabel::E(7));
        for j in 1..=7 {
            let kept: Vec<usize> = (1..=7)
                .filter(|i| !contraction_set(&g, &ChernVector::delta(7, j)).unwrap().contains(i))
                .collect();
            assert_eq!(kept, vec![j]);
        }
        assert!(contraction_set(&g, &ChernVector(vec![1; 7])).unwrap().is_empty());
        assert_eq!(contraction_set(&g, &ChernVector(vec![0; 7])).unwrap().len(), 7);
    }

    #[test]
    fn partial_resolutions_of_a2() {
        let g = DualGraph::ade(AdeLabel::A(2));
        let all = enumerate_partial_resolutions(&g).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(partial_resolution(&g, &[1]).unwrap().residual, vec![AdeLabel::A(1)]);
        assert!(partial_resolution(&g, &[1, 2]).unwrap().residual.is_empty());
        assert_eq!(partial_resolution(&g, &[]).unwrap().residual, vec![AdeLabel::A(2)]);
        let e8 = DualGraph::ade(AdeLabel::E(8));
        assert_eq!(partial_resolution(&e8, &[8]).unwrap().residual, vec![AdeLabel::E(7)]);
        assert_eq!(partial_resolution(&e8, &[4]).unwrap().residual, vec![AdeLabel::A(1), AdeLabel::A(2), AdeLabel::A(4)]);
    }
}
