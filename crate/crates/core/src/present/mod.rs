//! Presented categories: generators, parallel-path relations, and a bounded
//! congruence-closure engine that recovers a finite category when one exists
//! within the word-length bound.

mod saturate;
mod text;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::fincat::{coproduct, FinCategory, Functor, Mor, Obj};
use crate::fixtures;

pub use saturate::{saturate, saturate_deepening, Inconclusive, Saturated, SaturationConfig, SaturationResult};
pub use text::{parse_presentation, print_presentation};

/// Default word-length bound.
pub const DEFAULT_BOUND: usize = 6;
/// Default cap on the number of enumerated words.
pub const DEFAULT_WORD_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentError {
    #[error("generator {0} has an out-of-range endpoint")]
    BadGenerator(usize),
    #[error("relation {0} is not a pair of composable paths")]
    NotComposable(usize),
    #[error("relation {0} relates paths with different endpoints")]
    NotParallel(usize),
    #[error("word bound must be at least 1")]
    BoundTooSmall,
    #[error("word enumeration exceeded the cap of {cap} words at length {length}")]
    ResourceGuard { cap: usize, length: usize },
    #[error("functor domains of the span differ")]
    SpanMismatch,
    #[error("morphism {0} is not in the category")]
    UnknownMorphism(Mor),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A path of generators from `start`, in application order (first generator
/// applied first). The empty path is the identity at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: Obj,
    pub gens: Vec<usize>,
}

impl Path {
    pub fn empty(start: Obj) -> Self {
        Path { start, gens: Vec::new() }
    }

    pub fn single(start: Obj, g: usize) -> Self {
        Path { start, gens: vec![g] }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedCategory {
    pub objects: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<(Path, Path)>,
}

impl PresentedCategory {
    /// End object of a path, or `None` if it is not composable.
    pub fn path_end(&self, p: &Path) -> Option<Obj> {
        let mut at = p.start;
        if at >= self.objects.len() {
            return None;
        }
        for &g in &p.gens {
            let gen = self.generators.get(g)?;
            if gen.src != at {
                return None;
            }
            at = gen.tgt;
        }
        Some(at)
    }

    pub fn validate(&self) -> Result<(), PresentError> {
        let n = self.objects.len();
        for (i, g) in self.generators.iter().enumerate() {
            if g.src >= n || g.tgt >= n {
                return Err(PresentError::BadGenerator(i));
            }
        }
        for (i, (p, q)) in self.relations.iter().enumerate() {
            let (Some(e1), Some(e2)) = (self.path_end(p), self.path_end(q)) else {
                return Err(PresentError::NotComposable(i));
            };
            if p.start != q.start || e1 != e2 {
                return Err(PresentError::NotParallel(i));
            }
        }
        Ok(())
    }

    pub fn max_relation_length(&self) -> usize {
        self.relations.iter().map(|(p, q)| p.len().max(q.len())).max().unwrap_or(0)
    }
}

/// Generators are the non-identity morphisms; relations are the full
/// composition table of non-identity pairs.
pub fn presentation_of(c: &FinCategory) -> PresentedCategory {
    let n = c.num_objects();
    let generators = c
        .non_identities()
        .map(|f| Generator { name: c.mor_label(f).to_string(), src: c.src(f), tgt: c.tgt(f) })
        .collect();
    let word = |h: Mor| {
        if c.is_identity(h) {
            Path::empty(c.src(h))
        } else {
            Path::single(c.src(h), h - n)
        }
    };
    let mut relations = Vec::new();
    for f in c.non_identities() {
        for &g in c.out_of(c.tgt(f)) {
            if c.is_identity(g) {
                continue;
            }
            let h = c.compose(g, f).expect("composable");
            relations.push((Path { start: c.src(f), gens: vec![f - n, g - n] }, word(h)));
        }
    }
    PresentedCategory { objects: c.obj_labels().to_vec(), generators, relations }
}

/// A span presented as one category, with the bookkeeping needed to map the
/// saturated result back onto both legs.
#[derive(Debug, Clone)]
pub struct PushoutPresentation {
    pub presentation: PresentedCategory,
    /// Pushout object of each object of `B` (the codomain of the first leg).
    pub b_objects: Vec<Obj>,
    /// Pushout object of each object of `C`.
    pub c_objects: Vec<Obj>,
    /// Generator of each non-identity morphism of `B` (indexed by morphism).
    pub b_generators: Vec<Option<usize>>,
    pub c_generators: Vec<Option<usize>>,
}

impl PushoutPresentation {
    pub fn b_word(&self, b: &FinCategory, f: Mor) -> Path {
        match self.b_generators[f] {
            Some(g) => Path::single(self.b_objects[b.src(f)], g),
            None => Path::empty(self.b_objects[b.src(f)]),
        }
    }

    pub fn c_word(&self, c: &FinCategory, f: Mor) -> Path {
        match self.c_generators[f] {
            Some(g) => Path::single(self.c_objects[c.src(f)], g),
            None => Path::empty(self.c_objects[c.src(f)]),
        }
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Presentation of the pushout of `I: A -> B` and `F: A -> C`.
pub fn pushout_presentation(i: &Functor, f: &Functor) -> Result<PushoutPresentation, PresentError> {
    if i.dom != f.dom {
        return Err(PresentError::SpanMismatch);
    }
    let (a, b, c) = (&*i.dom, &*i.cod, &*f.cod);
    let nb = b.num_objects();
    let total = nb + c.num_objects();
    let mut parent: Vec<usize> = (0..total).collect();
    for x in a.objects() {
        let (p, q) = (find(&mut parent, i.ob(x)), find(&mut parent, nb + f.ob(x)));
        if p != q {
            let (lo, hi) = (p.min(q), p.max(q));
            parent[hi] = lo;
        }
    }
    let mut class_index: HashMap<usize, Obj> = HashMap::new();
    let mut objects = Vec::new();
    let mut node_obj = vec![0; total];
    for (node, slot) in node_obj.iter_mut().enumerate() {
        let r = find(&mut parent, node);
        *slot = *class_index.entry(r).or_insert_with(|| {
            let label = if r < nb { b.obj_label(r).to_string() } else { c.obj_label(r - nb).to_string() };
            objects.push(label);
            objects.len() - 1
        });
    }
    let b_objects: Vec<Obj> = node_obj[..nb].to_vec();
    let c_objects: Vec<Obj> = node_obj[nb..].to_vec();
    let mut generators = Vec::new();
    let mut b_generators = vec![None; b.num_morphisms()];
    for m in b.non_identities() {
        b_generators[m] = Some(generators.len());
        generators.push(Generator {
            name: b.mor_label(m).to_string(),
            src: b_objects[b.src(m)],
            tgt: b_objects[b.tgt(m)],
        });
    }
    let mut c_generators = vec![None; c.num_morphisms()];
    for m in c.non_identities() {
        c_generators[m] = Some(generators.len());
        generators.push(Generator {
            name: c.mor_label(m).to_string(),
            src: c_objects[c.src(m)],
            tgt: c_objects[c.tgt(m)],
        });
    }
    let mut out = PushoutPresentation {
        presentation: PresentedCategory { objects, generators, relations: Vec::new() },
        b_objects,
        c_objects,
        b_generators,
        c_generators,
    };
    let mut relations = Vec::new();
    for (g, m) in b.composable_pairs() {
        if b.is_identity(g) || b.is_identity(m) {
            continue;
        }
        let h = b.compose(g, m).expect("composable");
        let lhs = Path {
            start: out.b_objects[b.src(m)],
            gens: vec![out.b_generators[m].expect("gen"), out.b_generators[g].expect("gen")],
        };
        relations.push((lhs, out.b_word(b, h)));
    }
    for (g, m) in c.composable_pairs() {
        if c.is_identity(g) || c.is_identity(m) {
            continue;
        }
        let h = c.compose(g, m).expect("composable");
        let lhs = Path {
            start: out.c_objects[c.src(m)],
            gens: vec![out.c_generators[m].expect("gen"), out.c_generators[g].expect("gen")],
        };
        relations.push((lhs, out.c_word(c, h)));
    }
    for m in a.non_identities() {
        let p = out.b_word(b, i.mor(m));
        let q = out.c_word(c, f.mor(m));
        if p != q {
            relations.push((p, q));
        }
    }
    out.presentation.relations = relations;
    Ok(out)
}

/// A pushout computed through saturation, with both legs.
#[derive(Debug, Clone)]
pub struct PresentedPushout {
    pub saturated: Saturated,
    pub g: Functor,
    pub j: Functor,
}

#[derive(Debug, Clone)]
pub enum PushoutOutcome {
    Finite(PresentedPushout),
    Inconclusive(Inconclusive),
}

/// Pushout of `I: A -> B` and `F: A -> C` by saturation with iterative
/// deepening up to `config.max_word_len`. `g: B -> D`, `j: C -> D`.
pub fn pushout_by_presentation(
    i: &Functor,
    f: &Functor,
    config: &SaturationConfig,
) -> Result<PushoutOutcome, PresentError> {
    let pp = pushout_presentation(i, f)?;
    match saturate_deepening(&pp.presentation, config)? {
        SaturationResult::Inconclusive(r) => Ok(PushoutOutcome::Inconclusive(r)),
        SaturationResult::Finite(sat) => {
            let d = sat.category.clone();
            let (b, c) = (&i.cod, &f.cod);
            let g = Functor::new(
                b.clone(),
                d.clone(),
                pp.b_objects.clone(),
                b.morphisms().map(|m| sat.eval(&pp.b_word(b, m))).collect(),
            );
            let j = Functor::new(
                c.clone(),
                d,
                pp.c_objects.clone(),
                c.morphisms().map(|m| sat.eval(&pp.c_word(c, m))).collect(),
            );
            Ok(PushoutOutcome::Finite(PresentedPushout { saturated: sat, g, j }))
        }
    }
}

/// The localization span `C <- coprod_S 2 -> coprod_S I`, one copy per listed
/// morphism (identities included when listed). Returns `(into_iso, into_c)`.
pub fn localization_span(c: &Arc<FinCategory>, sigma: &[Mor]) -> Result<(Functor, Functor), PresentError> {
    if let Some(&m) = sigma.iter().find(|&&m| m >= c.num_morphisms()) {
        return Err(PresentError::UnknownMorphism(m));
    }
    let arrow = Arc::new(fixtures::arrow());
    let iso = Arc::new(fixtures::free_iso());
    let arrows = coproduct(&vec![arrow; sigma.len()]);
    let isos = coproduct(&vec![iso; sigma.len()]);
    let (a, i_cat) = (arrows.category.clone(), isos.category.clone());
    // copy k: objects 2k, 2k+1; arrow n + k in both coproducts
    let n = a.num_objects();
    let mut to_c_obj = vec![0; n];
    let mut to_c_mor = vec![0; a.num_morphisms()];
    let mut to_i_mor = vec![0; a.num_morphisms()];
    for (k, &s) in sigma.iter().enumerate() {
        to_c_obj[2 * k] = c.src(s);
        to_c_obj[2 * k + 1] = c.tgt(s);
        to_c_mor[2 * k] = c.identity(c.src(s));
        to_c_mor[2 * k + 1] = c.identity(c.tgt(s));
        to_c_mor[n + k] = s;
        to_i_mor[2 * k] = 2 * k;
        to_i_mor[2 * k + 1] = 2 * k + 1;
        // forward generator of copy k
        to_i_mor[n + k] = isos.injections[k].mor(2);
    }
    let into_iso = Functor::new(a.clone(), i_cat, (0..n).collect(), to_i_mor);
    let into_c = Functor::new(a, c.clone(), to_c_obj, to_c_mor);
    Ok((into_iso, into_c))
}

/// Invert the listed morphisms by saturating the localization pushout.
pub fn localize(
    c: &Arc<FinCategory>,
    sigma: &[Mor],
    config: &SaturationConfig,
) -> Result<SaturationResult, PresentError> {
    let (into_iso, into_c) = localization_span(c, sigma)?;
    let pp = pushout_presentation(&into_iso, &into_c)?;
    saturate_deepening(&pp.presentation, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{find_isomorphism, ISO_GUARD};

    fn cfg(bound: usize) -> SaturationConfig {
        SaturationConfig { max_word_len: bound, ..Default::default() }
    }

    fn finite(r: SaturationResult) -> Saturated {
        match r {
            SaturationResult::Finite(s) => s,
            SaturationResult::Inconclusive(i) => panic!("inconclusive: {i:?}"),
        }
    }

    fn iso_presentation() -> PresentedCategory {
        PresentedCategory {
            objects: vec!["0".into(), "1".into()],
            generators: vec![
                Generator { name: "f".into(), src: 0, tgt: 1 },
                Generator { name: "g".into(), src: 1, tgt: 0 },
            ],
            relations: vec![
                (Path { start: 0, gens: vec![0, 1] }, Path::empty(0)),
                (Path { start: 1, gens: vec![1, 0] }, Path::empty(1)),
            ],
        }
    }

    pub(crate) fn monoid_presentation() -> PresentedCategory {
        // generators: e, x11, x12, x21, x22
        let names = ["e", "x11", "x12", "x21", "x22"];
        let ij = [(1, 1), (1, 2), (2, 1), (2, 2)];
        let generators =
            names.iter().map(|n| Generator { name: n.to_string(), src: 0, tgt: 0 }).collect();
        let mut relations = vec![(Path::single(0, 0), Path::empty(0))];
        for (a, &(i, _)) in ij.iter().enumerate() {
            for (b, &(_, l)) in ij.iter().enumerate() {
                let prod = ij.iter().position(|&p| p == (i, l)).unwrap();
                // x_ij . x_kl applies x_kl first
                relations.push((Path { start: 0, gens: vec![b + 1, a + 1] }, Path::single(0, prod + 1)));
            }
        }
        PresentedCategory { objects: vec!["*".into()], generators, relations }
    }

    #[test]
    fn free_isomorphism_saturates() {
        let s = finite(saturate(&iso_presentation(), &cfg(3)).unwrap());
        assert_eq!(s.category.num_objects(), 2);
        assert_eq!(s.category.num_morphisms(), 4);
        assert!(find_isomorphism(&s.category, &fixtures::free_iso(), ISO_GUARD).is_iso());
    }

    #[test]
    fn five_element_monoid_saturates() {
        let s = finite(saturate(&monoid_presentation(), &cfg(3)).unwrap());
        assert_eq!(s.category.num_morphisms(), 5);
        assert!(find_isomorphism(&s.category, &fixtures::monoid5(), ISO_GUARD).is_iso());
    }

    #[test]
    fn free_monoid_is_inconclusive() {
        let p = PresentedCategory {
            objects: vec!["*".into()],
            generators: vec![Generator { name: "x".into(), src: 0, tgt: 0 }],
            relations: vec![],
        };
        match saturate(&p, &cfg(6)).unwrap() {
            SaturationResult::Inconclusive(i) => assert_eq!(i.bound, 6),
            SaturationResult::Finite(_) => panic!("free monoid reported finite"),
        }
    }

    #[test]
    fn zero_bound_is_rejected() {
        assert_eq!(saturate(&iso_presentation(), &cfg(0)).unwrap_err(), PresentError::BoundTooSmall);
    }

    #[test]
    fn presentation_of_small_categories() {
        assert!(presentation_of(&fixtures::terminal()).generators.is_empty());
        let two = presentation_of(&fixtures::arrow());
        assert_eq!(two.generators.len(), 1);
        assert!(two.relations.is_empty());
        let m = presentation_of(&fixtures::monoid5());
        let s = finite(saturate(&m, &cfg(2)).unwrap());
        assert_eq!(s.category.num_morphisms(), 5);
    }

    #[test]
    fn presentation_round_trip_is_isomorphic() {
        for c in [fixtures::ordinal(3), fixtures::cospan(), fixtures::free_iso(), fixtures::poset_s2_big()] {
            let s = finite(saturate(&presentation_of(&c), &cfg(2)).unwrap());
            assert!(find_isomorphism(&s.category, &c, ISO_GUARD).is_iso());
        }
    }

    #[test]
    fn gluing_two_arrows_gives_the_ordinal() {
        let one = Arc::new(fixtures::terminal());
        let two = Arc::new(fixtures::arrow());
        let i = Functor::point(one.clone(), two.clone(), 0);
        let f = Functor::point(one, two, 1);
        let PushoutOutcome::Finite(p) = pushout_by_presentation(&i, &f, &cfg(3)).unwrap() else {
            panic!("inconclusive")
        };
        assert!(find_isomorphism(&p.saturated.category, &fixtures::ordinal(2), ISO_GUARD).is_iso());
        assert!(p.g.is_functor() && p.j.is_functor());
    }

    #[test]
    fn pushout_along_identity() {
        let c = Arc::new(fixtures::cospan());
        let one = Arc::new(fixtures::terminal());
        let id = Functor::identity(one.clone());
        let f = Functor::point(one, c.clone(), 1);
        let PushoutOutcome::Finite(p) = pushout_by_presentation(&id, &f, &cfg(3)).unwrap() else {
            panic!("inconclusive")
        };
        assert!(find_isomorphism(&p.saturated.category, &c, ISO_GUARD).is_iso());
    }

    #[test]
    fn monoid_localization_span_is_terminal() {
        let m = Arc::new(fixtures::monoid5());
        let all: Vec<Mor> = m.morphisms().collect();
        let s = finite(localize(&m, &all, &cfg(6)).unwrap());
        assert!(find_isomorphism(&s.category, &fixtures::terminal(), ISO_GUARD).is_iso());
    }

    #[test]
    fn localizing_the_arrow_gives_the_free_isomorphism() {
        let two = Arc::new(fixtures::arrow());
        let s = finite(localize(&two, &[2], &cfg(6)).unwrap());
        assert!(find_isomorphism(&s.category, &fixtures::free_iso(), ISO_GUARD).is_iso());
    }

    #[test]
    fn empty_localization_is_identity() {
        let c = Arc::new(fixtures::ordinal(2));
        let s = finite(localize(&c, &[], &cfg(6)).unwrap());
        assert!(find_isomorphism(&s.category, &c, ISO_GUARD).is_iso());
    }

    #[test]
    fn invalid_relation_is_rejected() {
        let mut p = iso_presentation();
        p.relations.push((Path::single(0, 0), Path::empty(0)));
        assert_eq!(p.validate(), Err(PresentError::NotParallel(2)));
    }
}
