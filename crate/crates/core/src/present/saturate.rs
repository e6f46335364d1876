//! Bounded congruence closure on generator words.
//!
//! All composable words of length at most `L` are enumerated, the relations
//! are closed under left and right whiskering (as far as the bound allows),
//! and the result is accepted when every class has a representative of length
//! `< L`. Under that condition right multiplication by a generator is defined
//! on every class and the quotient is exactly the presented category.

use std::sync::Arc;

use super::{Path, PresentError, PresentedCategory, DEFAULT_BOUND, DEFAULT_WORD_CAP};
use crate::fincat::{FinCategory, Mor, Obj};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaturationConfig {
    pub max_word_len: usize,
    pub word_cap: usize,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        SaturationConfig { max_word_len: DEFAULT_BOUND, word_cap: DEFAULT_WORD_CAP }
    }
}

/// A finite quotient together with the word-to-morphism map.
#[derive(Debug, Clone)]
pub struct Saturated {
    pub category: Arc<FinCategory>,
    /// Morphism represented by each single-generator word.
    pub generator_images: Vec<Mor>,
    /// Shortest representative word of each morphism.
    pub representatives: Vec<Path>,
    pub bound: usize,
}

impl Saturated {
    /// Morphism denoted by a composable path.
    pub fn eval(&self, p: &Path) -> Mor {
        let c = &self.category;
        p.gens.iter().fold(c.identity(p.start), |acc, &g| {
            c.compose(self.generator_images[g], acc).expect("composable path")
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconclusive {
    pub bound: usize,
    pub words: usize,
    pub classes: usize,
    /// Classes whose shortest member has the maximal length.
    pub unreduced_classes: usize,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub enum SaturationResult {
    Finite(Saturated),
    Inconclusive(Inconclusive),
}

impl SaturationResult {
    pub fn finite(&self) -> Option<&Saturated> {
        match self {
            SaturationResult::Finite(s) => Some(s),
            SaturationResult::Inconclusive(_) => None,
        }
    }
}

struct WordTable {
    start: Vec<Obj>,
    end: Vec<Obj>,
    len: Vec<usize>,
    last: Vec<Option<(usize, usize)>>,
    /// Right extensions, aligned with `out_gens[end]`; empty at maximal length.
    right: Vec<Vec<usize>>,
    /// Left extensions, aligned with `in_gens[start]`; empty at maximal length.
    left: Vec<Vec<usize>>,
}

struct Shape {
    out_gens: Vec<Vec<usize>>,
    in_gens: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
}

fn shape(p: &PresentedCategory) -> Shape {
    let n = p.objects.len();
    let mut out_gens = vec![Vec::new(); n];
    let mut in_gens = vec![Vec::new(); n];
    let mut out_pos = vec![0; p.generators.len()];
    for (g, gen) in p.generators.iter().enumerate() {
        out_pos[g] = out_gens[gen.src].len();
        out_gens[gen.src].push(g);
        in_gens[gen.tgt].push(g);
    }
    Shape { out_gens, in_gens, out_pos }
}

fn enumerate(p: &PresentedCategory, sh: &Shape, bound: usize, cap: usize) -> Result<WordTable, PresentError> {
    let n = p.objects.len();
    let mut t = WordTable {
        start: (0..n).collect(),
        end: (0..n).collect(),
        len: vec![0; n],
        last: vec![None; n],
        right: vec![Vec::new(); n],
        left: vec![Vec::new(); n],
    };
    let mut level: Vec<usize> = (0..n).collect();
    for length in 0..bound {
        let mut next = Vec::new();
        for &w in &level {
            let mut ext = Vec::with_capacity(sh.out_gens[t.end[w]].len());
            for &g in &sh.out_gens[t.end[w]] {
                let id = t.start.len();
                if id >= cap {
                    return Err(PresentError::ResourceGuard { cap, length: length + 1 });
                }
                t.start.push(t.start[w]);
                t.end.push(p.generators[g].tgt);
                t.len.push(length + 1);
                t.last.push(Some((w, g)));
                t.right.push(Vec::new());
                t.left.push(Vec::new());
                ext.push(id);
                next.push(id);
            }
            t.right[w] = ext;
        }
        level = next;
    }
    for w in 0..t.start.len() {
        if t.len[w] >= bound {
            continue;
        }
        let ext: Vec<usize> = match t.last[w] {
            None => sh.in_gens[t.start[w]]
                .iter()
                .map(|&h| t.right[p.generators[h].src][sh.out_pos[h]])
                .collect(),
            Some((prefix, g)) => t.left[prefix].iter().map(|&pw| t.right[pw][sh.out_pos[g]]).collect(),
        };
        t.left[w] = ext;
    }
    Ok(t)
}

fn lookup(t: &WordTable, sh: &Shape, path: &Path) -> Option<usize> {
    let mut w = path.start;
    for &g in &path.gens {
        w = *t.right[w].get(sh.out_pos[g])?;
    }
    Some(w)
}

struct Congruence {
    parent: Vec<usize>,
    right: Vec<Vec<Option<usize>>>,
    left: Vec<Vec<Option<usize>>>,
}

impl Congruence {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let nx = self.parent[y];
            self.parent[y] = r;
            y = nx;
        }
        r
    }

    fn close(&mut self, mut pending: Vec<(usize, usize)>) {
        while let Some((x, y)) = pending.pop() {
            let (rx, ry) = (self.find(x), self.find(y));
            if rx == ry {
                continue;
            }
            let (root, child) = (rx.min(ry), rx.max(ry));
            self.parent[child] = root;
            for table in [&mut self.right, &mut self.left] {
                let moved = std::mem::take(&mut table[child]);
                for (p, ext) in moved.into_iter().enumerate() {
                    match (table[root][p], ext) {
                        (Some(a), Some(b)) => pending.push((a, b)),
                        (None, Some(b)) => table[root][p] = Some(b),
                        _ => {}
                    }
                }
            }
        }
    }
}

/// Saturate at exactly `config.max_word_len`.
pub fn saturate(p: &PresentedCategory, config: &SaturationConfig) -> Result<SaturationResult, PresentError> {
    let bound = config.max_word_len;
    if bound < 1 {
        return Err(PresentError::BoundTooSmall);
    }
    p.validate()?;
    let sh = shape(p);
    let t = enumerate(p, &sh, bound, config.word_cap)?;
    let nwords = t.start.len();
    let inconclusive = |classes: usize, unreduced: usize, reason: String| {
        Ok(SaturationResult::Inconclusive(Inconclusive {
            bound,
            words: nwords,
            classes,
            unreduced_classes: unreduced,
            reason,
        }))
    };
    let mut pending = Vec::with_capacity(p.relations.len());
    for (lhs, rhs) in &p.relations {
        match (lookup(&t, &sh, lhs), lookup(&t, &sh, rhs)) {
            (Some(a), Some(b)) => pending.push((a, b)),
            _ => return inconclusive(nwords, 0, "a relation is longer than the word bound".into()),
        }
    }
    let wrap = |v: &Vec<usize>| v.iter().map(|&w| Some(w)).collect::<Vec<_>>();
    let mut cong = Congruence {
        parent: (0..nwords).collect(),
        right: t.right.iter().map(wrap).collect(),
        left: t.left.iter().map(wrap).collect(),
    };
    cong.close(pending);

    // representative = least word id (BFS order, so shortest)
    let roots: Vec<usize> = (0..nwords).map(|w| cong.find(w)).collect();
    let mut rep_of_root = vec![usize::MAX; nwords];
    for w in 0..nwords {
        let r = roots[w];
        if rep_of_root[r] == usize::MAX {
            rep_of_root[r] = w;
        }
    }
    let mut class_reps: Vec<usize> = rep_of_root.iter().copied().filter(|&w| w != usize::MAX).collect();
    class_reps.sort_unstable();
    let unreduced = class_reps.iter().filter(|&&w| t.len[w] >= bound).count();
    if unreduced > 0 {
        return inconclusive(
            class_reps.len(),
            unreduced,
            format!("{unreduced} classes have no representative shorter than {bound}"),
        );
    }
    let mut class_of_root = vec![usize::MAX; nwords];
    for (i, &w) in class_reps.iter().enumerate() {
        class_of_root[roots[w]] = i;
    }
    let class_of = |w: usize| class_of_root[roots[w]];
    let n = p.objects.len();
    debug_assert!(class_reps[..n].iter().enumerate().all(|(i, &w)| w == i));

    let act = |m: Mor, g: usize| class_of(t.right[class_reps[m]][sh.out_pos[g]]);
    let path_of = |w: usize| {
        let mut gens = Vec::with_capacity(t.len[w]);
        let mut cur = w;
        while let Some((prefix, g)) = t.last[cur] {
            gens.push(g);
            cur = prefix;
        }
        gens.reverse();
        Path { start: t.start[w], gens }
    };
    let representatives: Vec<Path> = class_reps.iter().map(|&w| path_of(w)).collect();
    let label = |path: &Path| -> String {
        if path.is_empty() {
            format!("1_{}", p.objects[path.start])
        } else {
            path.gens.iter().rev().map(|&g| p.generators[g].name.as_str()).collect::<Vec<_>>().join(".")
        }
    };
    let src: Vec<Obj> = class_reps.iter().map(|&w| t.start[w]).collect();
    let tgt: Vec<Obj> = class_reps.iter().map(|&w| t.end[w]).collect();
    let mor_labels = representatives.iter().map(label).collect();
    let category = FinCategory::from_raw(p.objects.clone(), mor_labels, src, tgt, |g, f| {
        Some(representatives[g].gens.iter().fold(f, |acc, &x| act(acc, x)))
    })
    .expect("quotient table is total");

    let generator_images: Vec<Mor> = (0..p.generators.len())
        .map(|g| class_of(t.right[p.generators[g].src][sh.out_pos[g]]))
        .collect();
    // every word must evaluate to its own class
    for w in n..nwords {
        let (prefix, g) = t.last[w].expect("non-empty word");
        if act(class_of(prefix), g) != class_of(w) {
            return inconclusive(class_reps.len(), 0, "right multiplication is not class-closed".into());
        }
    }
    let report = category.validate();
    if !report.is_ok() {
        return inconclusive(
            class_reps.len(),
            0,
            format!("quotient table fails {} axiom checks", report.violations.len()),
        );
    }
    Ok(SaturationResult::Finite(Saturated {
        category: Arc::new(category),
        generator_images,
        representatives,
        bound,
    }))
}

/// Try bounds from the longest relation up to `config.max_word_len`, returning
/// the first finite result. A finite answer at one bound is the same category
/// at every larger bound.
pub fn saturate_deepening(
    p: &PresentedCategory,
    config: &SaturationConfig,
) -> Result<SaturationResult, PresentError> {
    if config.max_word_len < 1 {
        return Err(PresentError::BoundTooSmall);
    }
    let first = p.max_relation_length().clamp(1, config.max_word_len);
    let mut last = None;
    for bound in first..=config.max_word_len {
        let cfg = SaturationConfig { max_word_len: bound, ..*config };
        match saturate(p, &cfg) {
            Ok(SaturationResult::Finite(s)) => return Ok(SaturationResult::Finite(s)),
            Ok(r @ SaturationResult::Inconclusive(_)) => last = Some(r),
            Err(e @ PresentError::ResourceGuard { .. }) => return last.map(Ok).unwrap_or(Err(e)),
            Err(e) => return Err(e),
        }
    }
    Ok(last.expect("at least one bound tried"))
}
