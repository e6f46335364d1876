//! Integral homology of truncated simplicial sets through normalized chains.

mod snf;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::sset::TruncatedSSet;

pub use snf::{smith_normal_form, smith_normal_form_sparse, Snf, SparseMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("degree {degree} requested but the simplicial set is truncated at {dim}")]
    Truncation { degree: usize, dim: usize },
}

/// Normalized chains: basis in degree `k` is the nondegenerate `k`-simplices.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub bases: Vec<Vec<usize>>,
    /// `boundaries[k]: C_k -> C_{k-1}`, rows indexed by `bases[k-1]`.
    /// `boundaries[0]` is the zero map to the zero group.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn rank(&self, k: usize) -> usize {
        self.bases[k].len()
    }

    /// First degree `k` where `d_{k-1} d_k` is nonzero.
    pub fn check_dd(&self) -> Result<(), usize> {
        for k in 2..self.boundaries.len() {
            match self.boundaries[k - 1].mul(&self.boundaries[k]) {
                Some(p) if p.is_zero() => {}
                _ => return Err(k),
            }
        }
        Ok(())
    }
}

pub fn chains(x: &TruncatedSSet) -> ChainComplex {
    let bases: Vec<Vec<usize>> = (0..=x.dim()).map(|k| x.nondegenerate(k).collect()).collect();
    let mut boundaries = vec![SparseMatrix::zeros(0, bases[0].len())];
    for k in 1..=x.dim() {
        let mut pos = vec![usize::MAX; x.count(k - 1)];
        for (i, &y) in bases[k - 1].iter().enumerate() {
            pos[y] = i;
        }
        let mut m = SparseMatrix::zeros(bases[k - 1].len(), bases[k].len());
        for (col, &s) in bases[k].iter().enumerate() {
            for i in 0..=k {
                let f = x.face(k, i, s);
                if !x.is_degenerate(k - 1, f) {
                    m.add(pos[f], col, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex { bases, boundaries }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { betti: rank, torsion: Vec::new() }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
    /// `false` in the top degree of the truncation, where boundaries from
    /// above are missing.
    pub reliable: Vec<bool>,
}

impl HomologyResult {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree  betti  torsion  reliable  group")?;
        for (k, g) in self.groups.iter().enumerate() {
            let tors: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
            let tors = if tors.is_empty() { "-".to_string() } else { tors.join(",") };
            writeln!(f, "{k:>6}  {:>5}  {tors:>7}  {:>8}  {g}", g.betti, if self.reliable[k] { "yes" } else { "no" })?;
        }
        Ok(())
    }
}

/// `H_k` for `k <= max_degree`. Requires `max_degree <= x.dim()`; the top
/// degree of the truncation is flagged unreliable.
pub fn homology(x: &TruncatedSSet, max_degree: usize) -> Result<HomologyResult, HomologyError> {
    if max_degree > x.dim() {
        return Err(HomologyError::Truncation { degree: max_degree, dim: x.dim() });
    }
    let c = chains(x);
    let top = (max_degree + 1).min(x.dim());
    let snfs: Vec<Snf> = (0..=top).map(|k| smith_normal_form_sparse(&c.boundaries[k])).collect();
    let groups = (0..=max_degree)
        .map(|k| {
            let cycles = c.rank(k) - snfs[k].rank();
            let (boundary_rank, torsion) = if k < x.dim() {
                (snfs[k + 1].rank(), snfs[k + 1].torsion())
            } else {
                (0, Vec::new())
            };
            HomologyGroup { betti: cycles - boundary_rank, torsion }
        })
        .collect();
    let reliable = (0..=max_degree).map(|k| k < x.dim()).collect();
    Ok(HomologyResult { groups, reliable })
}

#[derive(Debug, Clone)]
pub struct HomologyComparison {
    pub left: HomologyResult,
    pub right: HomologyResult,
    pub per_degree: Vec<bool>,
}

impl HomologyComparison {
    pub fn equal(&self) -> bool {
        self.per_degree.iter().all(|&b| b)
    }
}

pub fn homology_equal(x: &TruncatedSSet, y: &TruncatedSSet, max_degree: usize) -> Result<HomologyComparison, HomologyError> {
    let left = homology(x, max_degree)?;
    let right = homology(y, max_degree)?;
    let per_degree = left.groups.iter().zip(&right.groups).map(|(a, b)| a == b).collect();
    Ok(HomologyComparison { left, right, per_degree })
}

/// Connected components of the 1-skeleton, by union-find.
pub fn path_components(x: &TruncatedSSet) -> usize {
    let n = x.count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    if x.dim() >= 1 {
        for e in 0..x.count(1) {
            let (a, b) = (find(&mut parent, x.face(1, 0, e)), find(&mut parent, x.face(1, 1, e)));
            parent[a] = b;
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}
