//! Finite 1-categories stored with total composition tables.
//!
//! Objects are `0..n` and the identity of object `x` is always morphism `x`;
//! non-identity morphisms follow in insertion order. Labels are decorative:
//! every comparison in this crate is by index.

mod construct;
mod functor;
mod search;
pub(crate) mod text;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use construct::{cone, coproduct, join, opposite, product, CommaCategory, Coproduct, FullSubcategory};
pub use functor::{Functor, FunctorViolation};
pub use search::{find_isomorphism, FunctorSearch, IsoResult, ISO_OBJECT_GUARD as ISO_GUARD};
pub use text::{parse_category, parse_functor, print_category, print_functor, ParseError};

pub type Obj = usize;
pub type Mor = usize;

/// Default upper bound on the number of morphisms accepted by constructions.
pub const DEFAULT_MORPHISM_GUARD: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("object index {0} out of range")]
    ObjectOutOfRange(usize),
    #[error("morphism index {0} out of range")]
    MorphismOutOfRange(usize),
    #[error("composite {g} . {f} is not defined: target of {f} differs from source of {g}")]
    NotComposable { g: Mor, f: Mor },
    #[error("composition table has no entry for {g} . {f}")]
    MissingComposite { g: Mor, f: Mor },
    #[error("category has {0} morphisms, above the guard of {1}")]
    TooLarge(usize, usize),
}

/// A finite category with a total composition table.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCategory {
    obj_labels: Vec<String>,
    mor_labels: Vec<String>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    /// `out[x]`: morphisms with source `x`, ascending.
    out: Vec<Vec<Mor>>,
    /// Position of each morphism inside `out[src]`.
    out_pos: Vec<usize>,
    /// `table[f][out_pos[g]] = g . f`.
    table: Vec<Vec<Mor>>,
    /// `homs[x * n + y]`: morphisms `x -> y`, ascending.
    homs: Vec<Vec<Mor>>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCategory({} objects, {} morphisms)",
            self.num_objects(),
            self.num_morphisms()
        )
    }
}

impl FinCategory {
    pub fn builder<I, S>(objects: I) -> CategoryBuilder
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        CategoryBuilder::new(objects)
    }

    pub fn empty() -> Self {
        CategoryBuilder::new(Vec::<String>::new()).build().expect("empty category")
    }

    pub fn num_objects(&self) -> usize {
        self.obj_labels.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.num_objects()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.num_morphisms()
    }

    /// Non-identity morphisms in index order.
    pub fn non_identities(&self) -> std::ops::Range<Mor> {
        self.num_objects()..self.num_morphisms()
    }

    pub fn src(&self, f: Mor) -> Obj {
        self.src[f]
    }

    pub fn tgt(&self, f: Mor) -> Obj {
        self.tgt[f]
    }

    pub fn identity(&self, x: Obj) -> Mor {
        x
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        f < self.num_objects()
    }

    pub fn obj_label(&self, x: Obj) -> &str {
        &self.obj_labels[x]
    }

    pub fn mor_label(&self, f: Mor) -> &str {
        &self.mor_labels[f]
    }

    pub fn obj_labels(&self) -> &[String] {
        &self.obj_labels
    }

    pub fn find_object(&self, label: &str) -> Option<Obj> {
        self.obj_labels.iter().position(|l| l == label)
    }

    pub fn find_morphism(&self, label: &str) -> Option<Mor> {
        self.mor_labels.iter().position(|l| l == label)
    }

    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        &self.homs[x * self.num_objects() + y]
    }

    pub fn out_of(&self, x: Obj) -> &[Mor] {
        &self.out[x]
    }

    /// `g . f`, or `None` when `tgt(f) != src(g)`.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.tgt[f] != self.src[g] {
            return None;
        }
        Some(self.table[f][self.out_pos[g]])
    }

    /// Composite of a composable chain given in application order.
    pub fn compose_path(&self, start: Obj, path: &[Mor]) -> Option<Mor> {
        path.iter()
            .try_fold(self.identity(start), |acc, &m| self.compose(m, acc))
    }

    /// Composable pairs `(g, f)` with `g . f` defined.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.morphisms()
            .flat_map(move |f| self.out[self.tgt[f]].iter().map(move |&g| (g, f)))
    }

    /// First object `t` with exactly one morphism from every object.
    pub fn terminal_object(&self) -> Option<Obj> {
        self.objects()
            .find(|&t| self.objects().all(|x| self.hom(x, t).len() == 1))
    }

    pub fn is_isomorphism(&self, f: Mor) -> bool {
        let (x, y) = (self.src[f], self.tgt[f]);
        self.hom(y, x).iter().any(|&g| {
            self.compose(g, f) == Some(self.identity(x))
                && self.compose(f, g) == Some(self.identity(y))
        })
    }

    /// Every axiom violation of the stored table.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for f in self.morphisms() {
            let (x, y) = (self.src[f], self.tgt[f]);
            let left = self.compose(self.identity(y), f);
            if left != Some(f) {
                violations.push(Violation::LeftUnit { f, got: left.unwrap_or(usize::MAX) });
            }
            let right = self.compose(f, self.identity(x));
            if right != Some(f) {
                violations.push(Violation::RightUnit { f, got: right.unwrap_or(usize::MAX) });
            }
        }
        for (g, f) in self.composable_pairs() {
            let h = self.table[f][self.out_pos[g]];
            if self.src[h] != self.src[f] || self.tgt[h] != self.tgt[g] {
                violations.push(Violation::Typing { g, f, h });
            }
        }
        for (g, f) in self.composable_pairs() {
            let gf = self.table[f][self.out_pos[g]];
            for &h in &self.out[self.tgt[g]] {
                let hg = self.table[g][self.out_pos[h]];
                let left = self.compose(h, gf);
                let right = self.compose(hg, f);
                if left.is_none() || left != right {
                    violations.push(Violation::Associativity { h, g, f });
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn into_arc(self) -> Arc<FinCategory> {
        Arc::new(self)
    }

    /// Raw table constructor shared by the builder and transformations.
    pub(crate) fn from_raw(
        obj_labels: Vec<String>,
        mor_labels: Vec<String>,
        src: Vec<Obj>,
        tgt: Vec<Obj>,
        composite: impl Fn(Mor, Mor) -> Option<Mor>,
    ) -> Result<Self, CategoryError> {
        let n = obj_labels.len();
        let m = src.len();
        if m < n {
            return Err(CategoryError::MorphismOutOfRange(n));
        }
        for x in 0..n {
            if src[x] != x || tgt[x] != x {
                return Err(CategoryError::ObjectOutOfRange(x));
            }
        }
        for f in 0..m {
            if src[f] >= n {
                return Err(CategoryError::ObjectOutOfRange(src[f]));
            }
            if tgt[f] >= n {
                return Err(CategoryError::ObjectOutOfRange(tgt[f]));
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut out_pos = vec![0; m];
        let mut homs = vec![Vec::new(); n * n];
        for f in 0..m {
            out_pos[f] = out[src[f]].len();
            out[src[f]].push(f);
            homs[src[f] * n + tgt[f]].push(f);
        }
        let mut table = Vec::with_capacity(m);
        for f in 0..m {
            let mut row = Vec::with_capacity(out[tgt[f]].len());
            for &g in &out[tgt[f]] {
                let h = composite(g, f).ok_or(CategoryError::MissingComposite { g, f })?;
                if h >= m {
                    return Err(CategoryError::MorphismOutOfRange(h));
                }
                row.push(h);
            }
            table.push(row);
        }
        Ok(FinCategory { obj_labels, mor_labels, src, tgt, out, out_pos, table, homs })
    }

    /// Relabel-free rebuild with a different composite for one pair; used to
    /// produce corrupted tables in tests.
    pub fn with_composite_overridden(&self, g: Mor, f: Mor, h: Mor) -> Result<Self, CategoryError> {
        if self.tgt[f] != self.src[g] {
            return Err(CategoryError::NotComposable { g, f });
        }
        if h >= self.num_morphisms() {
            return Err(CategoryError::MorphismOutOfRange(h));
        }
        let mut c = self.clone();
        c.table[f][self.out_pos[g]] = h;
        Ok(c)
    }
}

/// Incremental construction with implicit identities and unit laws.
#[derive(Debug, Clone)]
pub struct CategoryBuilder {
    obj_labels: Vec<String>,
    mor_labels: Vec<String>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    composites: std::collections::HashMap<(Mor, Mor), Mor>,
    guard: usize,
}

impl CategoryBuilder {
    pub fn new<I, S>(objects: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let obj_labels: Vec<String> = objects.into_iter().map(Into::into).collect();
        let n = obj_labels.len();
        CategoryBuilder {
            mor_labels: obj_labels.iter().map(|l| format!("1_{l}")).collect(),
            src: (0..n).collect(),
            tgt: (0..n).collect(),
            obj_labels,
            composites: Default::default(),
            guard: DEFAULT_MORPHISM_GUARD,
        }
    }

    pub fn guard(mut self, max_morphisms: usize) -> Self {
        self.guard = max_morphisms;
        self
    }

    pub fn num_objects(&self) -> usize {
        self.obj_labels.len()
    }

    pub fn add_morphism(&mut self, label: impl Into<String>, src: Obj, tgt: Obj) -> Mor {
        self.mor_labels.push(label.into());
        self.src.push(src);
        self.tgt.push(tgt);
        self.src.len() - 1
    }

    /// Records `g . f = h`.
    pub fn set_composite(&mut self, g: Mor, f: Mor, h: Mor) -> &mut Self {
        self.composites.insert((g, f), h);
        self
    }

    pub fn build(self) -> Result<FinCategory, CategoryError> {
        let n = self.obj_labels.len();
        let m = self.src.len();
        if m > self.guard {
            return Err(CategoryError::TooLarge(m, self.guard));
        }
        for (&(g, f), &h) in &self.composites {
            for idx in [g, f, h] {
                if idx >= m {
                    return Err(CategoryError::MorphismOutOfRange(idx));
                }
            }
            if self.tgt[f] != self.src[g] {
                return Err(CategoryError::NotComposable { g, f });
            }
        }
        let composites = self.composites;
        FinCategory::from_raw(self.obj_labels, self.mor_labels, self.src, self.tgt, |g, f| {
            composites.get(&(g, f)).copied().or_else(|| {
                if g < n {
                    Some(f)
                } else if f < n {
                    Some(g)
                } else {
                    None
                }
            })
        })
    }
}

/// One failed axiom instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LeftUnit { f: Mor, got: Mor },
    RightUnit { f: Mor, got: Mor },
    Typing { g: Mor, f: Mor, h: Mor },
    Associativity { h: Mor, g: Mor, f: Mor },
}

impl fmt::Display for Violation {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LeftUnit { f, got } => write!(fmt, "left unit law fails at {f}: id . f = {got}"),
            Violation::RightUnit { f, got } => write!(fmt, "right unit law fails at {f}: f . id = {got}"),
            Violation::Typing { g, f, h } => write!(fmt, "composite {g} . {f} = {h} has wrong endpoints"),
            Violation::Associativity { h, g, f } => {
                write!(fmt, "associativity fails at ({h}, {g}, {f})")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn terminal_and_arrow_are_valid() {
        assert!(fixtures::terminal().validate().is_ok());
        assert!(fixtures::arrow().validate().is_ok());
        assert!(FinCategory::empty().validate().is_ok());
    }

    #[test]
    fn broken_unit_law_is_reported_at_the_arrow() {
        let two = fixtures::arrow();
        let f = 2;
        let bad = two.with_composite_overridden(f, 0, 0).unwrap();
        let report = bad.validate();
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::RightUnit { f: 2, got: 0 })));
    }

    #[test]
    fn missing_composite_is_a_build_error() {
        let mut b = FinCategory::builder(["a", "b", "c"]);
        let f = b.add_morphism("f", 0, 1);
        let g = b.add_morphism("g", 1, 2);
        assert_eq!(b.build().unwrap_err(), CategoryError::MissingComposite { g, f });
    }

    #[test]
    fn hom_sets_and_terminal_object() {
        let p = fixtures::ordinal(2);
        assert_eq!(p.hom(0, 2).len(), 1);
        assert!(p.hom(2, 0).is_empty());
        assert_eq!(p.terminal_object(), Some(2));
        assert_eq!(fixtures::cospan().terminal_object(), Some(1));
        assert_eq!(fixtures::discrete(2).terminal_object(), None);
    }

    #[test]
    fn free_isomorphism_has_invertible_generators() {
        let iso = fixtures::free_iso();
        assert!(iso.non_identities().all(|f| iso.is_isomorphism(f)));
        assert!(!fixtures::arrow().is_isomorphism(2));
    }
}
