//! Exhaustive backtracking search for functors between finite categories.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{FinCategory, Functor, Mor, Obj};

/// Backtracking enumerator for functors `dom -> cod`, with optional fixed
/// images and injectivity constraints.
pub struct FunctorSearch<'a> {
    dom: &'a FinCategory,
    cod: &'a FinCategory,
    fixed_obj: Vec<Option<Obj>>,
    fixed_mor: Vec<Option<Mor>>,
    injective: bool,
    allowed_obj: Option<Vec<Vec<Obj>>>,
    /// `factorizations[h]`: pairs `(g, f)` with `g . f = h`.
    factorizations: Vec<Vec<(Mor, Mor)>>,
}

struct State {
    obj: Vec<Option<Obj>>,
    mor: Vec<Option<Mor>>,
    used_obj: Vec<bool>,
    used_mor: Vec<bool>,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(dom: &'a FinCategory, cod: &'a FinCategory) -> Self {
        let mut factorizations = vec![Vec::new(); dom.num_morphisms()];
        for (g, f) in dom.composable_pairs() {
            if dom.is_identity(g) || dom.is_identity(f) {
                continue;
            }
            let h = dom.compose(g, f).expect("composable");
            factorizations[h].push((g, f));
        }
        FunctorSearch {
            dom,
            cod,
            fixed_obj: vec![None; dom.num_objects()],
            fixed_mor: vec![None; dom.num_morphisms()],
            injective: false,
            allowed_obj: None,
            factorizations,
        }
    }

    pub fn fix_object(mut self, x: Obj, y: Obj) -> Self {
        self.fixed_obj[x] = Some(y);
        self
    }

    pub fn fix_morphism(mut self, f: Mor, h: Mor) -> Self {
        self.fixed_mor[f] = Some(h);
        self
    }

    /// Require injectivity on objects and on morphisms.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Restrict candidate images of each object.
    pub fn allowed_objects(mut self, allowed: Vec<Vec<Obj>>) -> Self {
        self.allowed_obj = Some(allowed);
        self
    }

    /// Calls `visit` on every functor found; stop early by returning `false`.
    pub fn for_each(&self, rng: Option<&mut dyn rand::RngCore>, mut visit: impl FnMut(&[Obj], &[Mor]) -> bool) {
        let mut state = State {
            obj: vec![None; self.dom.num_objects()],
            mor: vec![None; self.dom.num_morphisms()],
            used_obj: vec![false; self.cod.num_objects()],
            used_mor: vec![false; self.cod.num_morphisms()],
        };
        let mut rng = rng;
        self.assign_object(0, &mut state, &mut rng, &mut visit);
    }

    pub fn count(&self, limit: usize) -> usize {
        let mut n = 0;
        self.for_each(None, |_, _| {
            n += 1;
            n < limit
        });
        n
    }

    pub fn all(&self, limit: usize) -> Vec<(Vec<Obj>, Vec<Mor>)> {
        let mut found = Vec::new();
        self.for_each(None, |o, m| {
            found.push((o.to_vec(), m.to_vec()));
            found.len() < limit
        });
        found
    }

    pub fn first(&self) -> Option<(Vec<Obj>, Vec<Mor>)> {
        self.all(1).pop()
    }

    /// First functor found with candidates visited in a random order.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Option<(Vec<Obj>, Vec<Mor>)> {
        let mut found = None;
        self.for_each(Some(rng), |o, m| {
            found = Some((o.to_vec(), m.to_vec()));
            false
        });
        found
    }

    fn candidates_obj(&self, x: Obj) -> Vec<Obj> {
        if let Some(y) = self.fixed_obj[x] {
            return vec![y];
        }
        match &self.allowed_obj {
            Some(allowed) => allowed[x].clone(),
            None => self.cod.objects().collect(),
        }
    }

    fn assign_object(
        &self,
        x: Obj,
        st: &mut State,
        rng: &mut Option<&mut dyn rand::RngCore>,
        visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool,
    ) -> bool {
        if x == self.dom.num_objects() {
            return self.assign_morphism(self.dom.num_objects(), st, rng, visit);
        }
        let mut cands = self.candidates_obj(x);
        if let Some(r) = rng.as_mut() {
            cands.shuffle(r);
        }
        for y in cands {
            if self.injective && st.used_obj[y] {
                continue;
            }
            // endomorphism monoid sizes must allow the image
            if self.injective && self.cod.hom(y, y).len() != self.dom.hom(x, x).len() {
                continue;
            }
            if !self.objects_compatible(x, y, st) {
                continue;
            }
            st.obj[x] = Some(y);
            st.used_obj[y] = true;
            let go_on = self.assign_object(x + 1, st, rng, visit);
            st.used_obj[y] = false;
            st.obj[x] = None;
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Every hom-set between assigned objects must have a possible image.
    fn objects_compatible(&self, x: Obj, y: Obj, st: &State) -> bool {
        for x2 in 0..x {
            let y2 = st.obj[x2].expect("assigned in order");
            for (a, b, c, d) in [(x, x2, y, y2), (x2, x, y2, y)] {
                let dh = self.dom.hom(a, b).len();
                let ch = self.cod.hom(c, d).len();
                if dh > 0 && ch == 0 {
                    return false;
                }
                if self.injective && dh != ch {
                    return false;
                }
            }
        }
        let own = self.dom.hom(x, x).len();
        !(self.injective && own != self.cod.hom(y, y).len())
    }

    fn assign_morphism(
        &self,
        f: Mor,
        st: &mut State,
        rng: &mut Option<&mut dyn rand::RngCore>,
        visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool,
    ) -> bool {
        let d = self.dom;
        if f == d.num_morphisms() {
            let objs: Vec<Obj> = st.obj.iter().map(|o| o.expect("assigned")).collect();
            let mors: Vec<Mor> = (0..d.num_morphisms())
                .map(|g| {
                    if d.is_identity(g) {
                        self.cod.identity(objs[g])
                    } else {
                        st.mor[g].expect("assigned")
                    }
                })
                .collect();
            return visit(&objs, &mors);
        }
        let (x, y) = (
            st.obj[d.src(f)].expect("assigned"),
            st.obj[d.tgt(f)].expect("assigned"),
        );
        let mut cands: Vec<Mor> = match self.fixed_mor[f] {
            Some(h) => vec![h],
            None => self.cod.hom(x, y).to_vec(),
        };
        if let Some(r) = rng.as_mut() {
            cands.shuffle(r);
        }
        for h in cands {
            if self.cod.src(h) != x || self.cod.tgt(h) != y {
                continue;
            }
            if self.injective && (st.used_mor[h] || self.cod.is_identity(h)) {
                continue;
            }
            st.mor[f] = Some(h);
            if self.consistent(f, st) {
                if self.injective {
                    st.used_mor[h] = true;
                }
                let go_on = self.assign_morphism(f + 1, st, rng, visit);
                if self.injective {
                    st.used_mor[h] = false;
                }
                if !go_on {
                    st.mor[f] = None;
                    return false;
                }
            }
            st.mor[f] = None;
        }
        true
    }

    fn image(&self, g: Mor, st: &State) -> Option<Mor> {
        if self.dom.is_identity(g) {
            st.obj[g].map(|y| self.cod.identity(y))
        } else {
            st.mor[g]
        }
    }

    /// Check every composition equation whose three members are assigned and
    /// which involves `f`.
    fn consistent(&self, f: Mor, st: &State) -> bool {
        let d = self.dom;
        let c = self.cod;
        let check = |g: Mor, h: Mor, gh: Mor| -> bool {
            match (self.image(g, st), self.image(h, st), self.image(gh, st)) {
                (Some(a), Some(b), Some(ab)) => c.compose(a, b) == Some(ab),
                _ => true,
            }
        };
        // f as the right factor
        for &g in d.out_of(d.tgt(f)) {
            if d.is_identity(g) {
                continue;
            }
            if !check(g, f, d.compose(g, f).expect("composable")) {
                return false;
            }
        }
        // f as the left factor
        for h in d.morphisms() {
            if d.tgt(h) != d.src(f) || d.is_identity(h) {
                continue;
            }
            if !check(f, h, d.compose(f, h).expect("composable")) {
                return false;
            }
        }
        // f as a composite
        self.factorizations[f].iter().all(|&(g, h)| check(g, h, f))
    }
}

/// Outcome of an isomorphism test between two categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoResult {
    Isomorphic { obj_map: Vec<Obj>, mor_map: Vec<Mor> },
    NotIsomorphic(String),
    TooLarge(usize),
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Isomorphic { .. })
    }
}

/// Default object-count limit for exhaustive isomorphism search.
pub const ISO_OBJECT_GUARD: usize = 9;

fn profile(c: &FinCategory, x: Obj) -> (usize, Vec<usize>, Vec<usize>) {
    let mut outs: Vec<usize> = c.objects().map(|y| c.hom(x, y).len()).collect();
    let mut ins: Vec<usize> = c.objects().map(|y| c.hom(y, x).len()).collect();
    outs.sort_unstable();
    ins.sort_unstable();
    (c.hom(x, x).len(), outs, ins)
}

/// Exhaustive isomorphism search pruned by hom-cardinality profiles.
pub fn find_isomorphism(c1: &FinCategory, c2: &FinCategory, object_guard: usize) -> IsoResult {
    if c1.num_objects() != c2.num_objects() {
        return IsoResult::NotIsomorphic(format!(
            "object counts differ: {} vs {}",
            c1.num_objects(),
            c2.num_objects()
        ));
    }
    if c1.num_morphisms() != c2.num_morphisms() {
        return IsoResult::NotIsomorphic(format!(
            "morphism counts differ: {} vs {}",
            c1.num_morphisms(),
            c2.num_morphisms()
        ));
    }
    if c1.num_objects() > object_guard {
        return IsoResult::TooLarge(c1.num_objects());
    }
    let p2: Vec<_> = c2.objects().map(|y| profile(c2, y)).collect();
    let allowed: Vec<Vec<Obj>> = c1
        .objects()
        .map(|x| {
            let p = profile(c1, x);
            c2.objects().filter(|&y| p2[y] == p).collect()
        })
        .collect();
    if let Some(x) = allowed.iter().position(|a| a.is_empty()) {
        return IsoResult::NotIsomorphic(format!("no object with the hom profile of {x}"));
    }
    match FunctorSearch::new(c1, c2).injective().allowed_objects(allowed).first() {
        Some((obj_map, mor_map)) => IsoResult::Isomorphic { obj_map, mor_map },
        None => IsoResult::NotIsomorphic("no bijective functor".into()),
    }
}

impl Functor {
    pub fn from_search(dom: Arc<FinCategory>, cod: Arc<FinCategory>, found: (Vec<Obj>, Vec<Mor>)) -> Self {
        Functor::new(dom, cod, found.0, found.1)
    }
}
