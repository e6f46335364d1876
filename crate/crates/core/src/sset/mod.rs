//! Truncated simplicial sets stored as explicit face and degeneracy tables.
//!
//! Level `k` holds `count(k)` simplices indexed `0..count(k)`. Degenerate
//! simplices are stored like any other and flagged; normalized views skip
//! them.

mod horn;
mod nerve;
mod pushout;
mod text;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use horn::{
    anodyne_search, is_quasicategory_upto, AnodyneCertificate, AnodyneOutcome, AttachStep, Horn, QuasiReport,
    ReplayError, Stuck, Subcomplex,
};
pub use nerve::{nerve, nerve_map, nerve_of_functor, Nerve};
pub use pushout::{comparison_map, sset_pushout, Comparison, SSetPushout};
pub use text::{parse_sset, print_sset};

/// Default truncation.
pub const DEFAULT_DIM: usize = 3;
/// Default cap on the total number of simplices in one construction.
pub const DEFAULT_SIMPLEX_GUARD: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SSetError {
    #[error("level {level} would hold {count} simplices, total above the guard of {guard}")]
    TooLarge { level: usize, count: usize, guard: usize },
    #[error("malformed table: {0}")]
    Table(String),
    #[error("maps do not share a domain or truncation")]
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityViolation {
    FaceFace { k: usize, i: usize, j: usize, x: usize },
    FaceDegeneracy { k: usize, i: usize, j: usize, x: usize },
    DegeneracyDegeneracy { k: usize, i: usize, j: usize, x: usize },
}

impl fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSSet {
    dim: usize,
    counts: Vec<usize>,
    /// `faces[k][i][x]` for `1 <= k <= dim`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[k][i][x]`: level `k` to level `k + 1`, for `k < dim`.
    degens: Vec<Vec<Vec<usize>>>,
    degenerate: Vec<Vec<bool>>,
    labels: Vec<Vec<String>>,
}

impl fmt::Debug for TruncatedSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSSet(dim {}, counts {:?})", self.dim, self.counts)
    }
}

impl TruncatedSSet {
    /// Build from tables, checking ranges and shapes. Degeneracy flags are
    /// derived from the degeneracy tables.
    pub fn from_tables(
        dim: usize,
        counts: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
        labels: Option<Vec<Vec<String>>>,
    ) -> Result<Self, SSetError> {
        let bad = |m: String| Err(SSetError::Table(m));
        if counts.len() != dim + 1 || faces.len() != dim + 1 || degens.len() != dim + 1 {
            return bad("level count does not match the dimension".into());
        }
        for k in 0..=dim {
            let nf = if k == 0 { 0 } else { k + 1 };
            if faces[k].len() != nf {
                return bad(format!("level {k} has {} face maps", faces[k].len()));
            }
            for (i, table) in faces[k].iter().enumerate() {
                if table.len() != counts[k] || table.iter().any(|&y| y >= counts[k - 1]) {
                    return bad(format!("face {i} at level {k} is malformed"));
                }
            }
            let nd = if k < dim { k + 1 } else { 0 };
            if degens[k].len() != nd {
                return bad(format!("level {k} has {} degeneracy maps", degens[k].len()));
            }
            for (i, table) in degens[k].iter().enumerate() {
                if table.len() != counts[k] || table.iter().any(|&y| y >= counts[k + 1]) {
                    return bad(format!("degeneracy {i} at level {k} is malformed"));
                }
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != dim + 1 || (0..=dim).any(|k| l[k].len() != counts[k]) {
                    return bad("labels do not match the simplex counts".into());
                }
                l
            }
            None => (0..=dim).map(|k| (0..counts[k]).map(|x| format!("s{k}_{x}")).collect()).collect(),
        };
        let mut degenerate: Vec<Vec<bool>> = counts.iter().map(|&n| vec![false; n]).collect();
        for k in 0..dim {
            for table in &degens[k] {
                for &y in table {
                    degenerate[k + 1][y] = true;
                }
            }
        }
        Ok(TruncatedSSet { dim, counts, faces, degens, degenerate, labels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, k: usize) -> usize {
        self.counts[k]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn face(&self, k: usize, i: usize, x: usize) -> usize {
        self.faces[k][i][x]
    }

    pub fn degen(&self, k: usize, i: usize, x: usize) -> usize {
        self.degens[k][i][x]
    }

    pub fn is_degenerate(&self, k: usize, x: usize) -> bool {
        self.degenerate[k][x]
    }

    pub fn nondegenerate(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.counts[k]).filter(move |&x| !self.degenerate[k][x])
    }

    pub fn label(&self, k: usize, x: usize) -> &str {
        &self.labels[k][x]
    }

    pub fn labels(&self, k: usize) -> &[String] {
        &self.labels[k]
    }

    /// All faces of `x` at level `k >= 1`, in order `d_0, ..., d_k`.
    pub fn face_tuple(&self, k: usize, x: usize) -> Vec<usize> {
        (0..=k).map(|i| self.faces[k][i][x]).collect()
    }

    /// Vertices of `x` in order, through iterated last/first faces.
    pub fn vertices(&self, k: usize, x: usize) -> Vec<usize> {
        (0..=k)
            .map(|v| {
                // drop everything after v with d_last, everything before with d_0
                let (mut level, mut s) = (k, x);
                while level > v {
                    s = self.faces[level][level][s];
                    level -= 1;
                }
                while level > 0 {
                    s = self.faces[level][0][s];
                    level -= 1;
                }
                s
            })
            .collect()
    }

    /// Restrict to levels `0..=d`.
    pub fn truncate(&self, d: usize) -> TruncatedSSet {
        let d = d.min(self.dim);
        let mut degens = self.degens[..=d].to_vec();
        degens[d] = Vec::new();
        TruncatedSSet {
            dim: d,
            counts: self.counts[..=d].to_vec(),
            faces: self.faces[..=d].to_vec(),
            degens,
            degenerate: self.degenerate[..=d].to_vec(),
            labels: self.labels[..=d].to_vec(),
        }
    }

    /// Exhaustive check of the simplicial identities within the truncation.
    pub fn check_identities(&self) -> Result<(), IdentityViolation> {
        let d = self.dim;
        for k in 2..=d {
            for x in 0..self.counts[k] {
                for j in 0..=k {
                    for i in 0..j {
                        let lhs = self.face(k - 1, i, self.face(k, j, x));
                        let rhs = self.face(k - 1, j - 1, self.face(k, i, x));
                        if lhs != rhs {
                            return Err(IdentityViolation::FaceFace { k, i, j, x });
                        }
                    }
                }
            }
        }
        for k in 0..d {
            for x in 0..self.counts[k] {
                for j in 0..=k {
                    let sx = self.degen(k, j, x);
                    for i in 0..=k + 1 {
                        let lhs = self.face(k + 1, i, sx);
                        let rhs = if i == j || i == j + 1 {
                            Some(x)
                        } else if k == 0 {
                            None
                        } else if i < j {
                            Some(self.degen(k - 1, j - 1, self.face(k, i, x)))
                        } else {
                            Some(self.degen(k - 1, j, self.face(k, i - 1, x)))
                        };
                        if rhs.is_some_and(|r| r != lhs) {
                            return Err(IdentityViolation::FaceDegeneracy { k, i, j, x });
                        }
                    }
                }
            }
        }
        for k in 0..d.saturating_sub(1) {
            for x in 0..self.counts[k] {
                for j in 0..=k {
                    for i in 0..=j {
                        let lhs = self.degen(k + 1, i, self.degen(k, j, x));
                        let rhs = self.degen(k + 1, j + 1, self.degen(k, i, x));
                        if lhs != rhs {
                            return Err(IdentityViolation::DegeneracyDegeneracy { k, i, j, x });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A levelwise map of truncated simplicial sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSetMap {
    pub dom: Arc<TruncatedSSet>,
    pub cod: Arc<TruncatedSSet>,
    /// `levels[k][x]` is the image of the `k`-simplex `x`.
    pub levels: Vec<Vec<usize>>,
}

impl SSetMap {
    pub fn identity(x: Arc<TruncatedSSet>) -> Self {
        let levels = x.counts.iter().map(|&n| (0..n).collect()).collect();
        SSetMap { dom: x.clone(), cod: x, levels }
    }

    pub fn apply(&self, k: usize, x: usize) -> usize {
        self.levels[k][x]
    }

    /// Commutation with every face and degeneracy.
    pub fn is_simplicial(&self) -> bool {
        let (x, y) = (&self.dom, &self.cod);
        if x.dim != y.dim || self.levels.len() != x.dim + 1 {
            return false;
        }
        for k in 0..=x.dim {
            if self.levels[k].len() != x.counts[k] || self.levels[k].iter().any(|&s| s >= y.counts[k]) {
                return false;
            }
        }
        for k in 1..=x.dim {
            for i in 0..=k {
                for s in 0..x.counts[k] {
                    if self.levels[k - 1][x.face(k, i, s)] != y.face(k, i, self.levels[k][s]) {
                        return false;
                    }
                }
            }
        }
        for k in 0..x.dim {
            for i in 0..=k {
                for s in 0..x.counts[k] {
                    if self.levels[k + 1][x.degen(k, i, s)] != y.degen(k, i, self.levels[k][s]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_injective_at(&self, k: usize) -> bool {
        let mut seen = vec![false; self.cod.counts[k]];
        self.levels[k].iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective_at(&self, k: usize) -> bool {
        let mut seen = vec![false; self.cod.counts[k]];
        for &y in &self.levels[k] {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        (0..=self.dom.dim).all(|k| self.is_injective_at(k))
    }

    pub fn is_isomorphism(&self) -> bool {
        (0..=self.dom.dim).all(|k| self.is_injective_at(k) && self.is_surjective_at(k))
    }

    /// `other . self`.
    pub fn then(&self, other: &SSetMap) -> SSetMap {
        SSetMap {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(k, l)| l.iter().map(|&x| other.levels[k][x]).collect())
                .collect(),
        }
    }
}

/// The standard simplex `Delta^n` truncated at `d`.
pub fn standard_simplex(n: usize, d: usize) -> TruncatedSSet {
    nerve(&crate::fixtures::ordinal(n), d).expect("small").sset.as_ref().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplices_satisfy_the_identities() {
        for n in 0..4 {
            let s = standard_simplex(n, 3);
            s.check_identities().unwrap();
            // monotone maps [k] -> [n]
            let binom = |a: usize, b: usize| (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1));
            for k in 0..=3 {
                assert_eq!(s.count(k), binom(n + k + 1, k + 1));
            }
        }
    }

    #[test]
    fn vertices_of_a_simplex() {
        let s = standard_simplex(2, 2);
        let top = s.nondegenerate(2).next().unwrap();
        assert_eq!(s.vertices(2, top), vec![0, 1, 2]);
    }

    #[test]
    fn tampered_table_breaks_identities() {
        let s = standard_simplex(1, 2);
        let mut faces = s.faces.clone();
        let edge = s.nondegenerate(1).next().unwrap();
        faces[1][0][edge] = faces[1][1][edge];
        let t = TruncatedSSet::from_tables(2, s.counts.clone(), faces, s.degens.clone(), None).unwrap();
        assert!(t.check_identities().is_err());
    }
}
