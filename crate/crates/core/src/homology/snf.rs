//! Smith normal form over the integers.
//!
//! Unit pivots are eliminated sparsely first; the remaining block goes through
//! a dense reduction in checked `i64`, and on overflow the dense block is
//! redone with big integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub factors: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }
}

/// Row-major sparse integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: vec![BTreeMap::new(); rows] }
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        let e = self.entries[r].entry(c).or_insert(0);
        *e += v;
        if *e == 0 {
            self.entries[r].remove(&c);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r].get(&c).copied().unwrap_or(0)
    }

    pub fn from_dense(m: &[Vec<i64>]) -> Self {
        let cols = m.first().map_or(0, Vec::len);
        let mut s = SparseMatrix::zeros(m.len(), cols);
        for (r, row) in m.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    s.entries[r].insert(c, v);
                }
            }
        }
        s
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (r, row) in self.entries.iter().enumerate() {
            for (&c, &v) in row {
                d[r][c] = v;
            }
        }
        d
    }

    /// `self * other`, or `None` on overflow.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.entries.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (&k, &a) in row {
                for (&c, &b) in &other.entries[k] {
                    let e = acc.entry(c).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            acc.retain(|_, v| *v != 0);
            out.entries[r] = acc;
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }
}

/// Invariant factors of a dense matrix.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Snf {
    smith_normal_form_sparse(&SparseMatrix::from_dense(m))
}

pub fn smith_normal_form_sparse(m: &SparseMatrix) -> Snf {
    match eliminate_units(m) {
        Some((ones, rest)) => {
            let mut factors = vec![BigInt::one(); ones];
            factors.extend(dense_factors(&rest));
            Snf { factors }
        }
        None => Snf { factors: dense_factors(&m.to_dense()) },
    }
}

fn dense_factors(block: &[Vec<i64>]) -> Vec<BigInt> {
    if let Some(f) = dense_snf(block.to_vec()) {
        return f.into_iter().map(BigInt::from).collect();
    }
    let big: Vec<Vec<BigInt>> = block.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    dense_snf(big).expect("big integers do not overflow")
}

/// Eliminate pivots equal to +-1, cheapest fill-in first. Returns the number
/// of unit pivots and the remaining dense block, or `None` on overflow.
fn eliminate_units(m: &SparseMatrix) -> Option<(usize, Vec<Vec<i64>>)> {
    let mut rows = m.entries.clone();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
        }
    }
    let mut alive_row = vec![true; m.rows];
    let mut alive_col = vec![true; m.cols];
    let mut ones = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        'scan: for c in 0..m.cols {
            if !alive_col[c] {
                continue;
            }
            for &r in &col_rows[c] {
                let v = rows[r][&c];
                if v == 1 || v == -1 {
                    let cost = (col_rows[c].len() - 1) * (rows[r].len() - 1);
                    if best.is_none_or(|b| cost < b.0) {
                        best = Some((cost, r, c));
                        if cost == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pr]);
        let u = pivot_row[&pc];
        let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            let factor = rows[r][&pc].checked_mul(u)?;
            for (&c, &v) in &pivot_row {
                let cur = rows[r].get(&c).copied().unwrap_or(0);
                let next = cur.checked_sub(factor.checked_mul(v)?)?;
                if next == 0 {
                    rows[r].remove(&c);
                    col_rows[c].remove(&r);
                } else {
                    rows[r].insert(c, next);
                    col_rows[c].insert(r);
                }
            }
        }
        for &c in pivot_row.keys() {
            col_rows[c].remove(&pr);
        }
        alive_row[pr] = false;
        alive_col[pc] = false;
        ones += 1;
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| alive_row[r] && !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&c| alive_col[c] && !col_rows[c].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let block = live_rows
        .iter()
        .map(|&r| {
            let mut row = vec![0; live_cols.len()];
            for (&c, &v) in &rows[r] {
                row[col_pos[&c]] = v;
            }
            row
        })
        .collect();
    Some((ones, block))
}

trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn smaller(&self, other: &Self) -> bool;
    fn div_floor(&self, d: &Self) -> Self;
    fn minus_times(&self, q: &Self, b: &Self) -> Option<Self>;
    fn plus(&self, b: &Self) -> Option<Self>;
    fn magnitude(&self) -> Option<Self>;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn smaller(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn div_floor(&self, d: &Self) -> Self {
        Integer::div_floor(self, d)
    }
    fn minus_times(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn plus(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn magnitude(&self) -> Option<Self> {
        self.checked_abs()
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn smaller(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn div_floor(&self, d: &Self) -> Self {
        Integer::div_floor(self, d)
    }
    fn minus_times(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn plus(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn magnitude(&self) -> Option<Self> {
        Some(self.abs())
    }
}

/// Dense reduction; `None` on overflow.
fn dense_snf<T: Scalar>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let mut pivot: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && pivot.is_none_or(|(pi, pj)| v.smaller(&a[pi][pj])) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..n {
                    a[i][j] = a[i][j].minus_times(&q, &a[t][j])?;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    row[j] = row[j].minus_times(&q, &row[t])?;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| {
                    let r = a[i][j].minus_times(&a[i][j].div_floor(&a[t][t]), &a[t][t]);
                    r.is_none_or(|r| !r.is_zero())
                })
            });
            match bad {
                Some(i) => {
                    for j in t..n {
                        a[t][j] = a[t][j].plus(&a[i][j])?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].magnitude()?);
    }
    Some(diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(smith_normal_form(&[vec![1, 0], vec![0, 1]]).factors, ints(&[1, 1]));
        assert_eq!(smith_normal_form(&[vec![2, 4], vec![6, 8]]).factors, ints(&[2, 4]));
        assert_eq!(smith_normal_form(&[vec![0, 0], vec![0, 0]]).rank(), 0);
        assert_eq!(smith_normal_form(&[]).rank(), 0);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2 + 7;
        let m = vec![vec![big, big - 1], vec![big - 3, big + 1]];
        let f = smith_normal_form(&m).factors;
        let det = BigInt::from(big) * BigInt::from(big + 1) - BigInt::from(big - 1) * BigInt::from(big - 3);
        assert_eq!(f.len(), 2);
        assert_eq!(&f[0] * &f[1], det.abs());
    }

    #[test]
    fn boundary_of_a_triangle() {
        // edges 01, 02, 12 against vertices
        let m = vec![vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]];
        assert_eq!(smith_normal_form(&m).factors, ints(&[1, 1]));
    }
}
