//! Simplicial categories stored as truncated simplicial objects in categories
//! with identity-on-objects structure functors.
//!
//! Level `k` is an ordinary finite category `C_k`; all levels share one object
//! set. The hom simplicial set `S(x, y)` has the morphisms `x -> y` of `C_k` as
//! its `k`-simplices.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::dwyer::DwyerWitness;
use crate::fincat::{FinCategory, Functor, FunctorViolation, Mor, Obj};
use crate::homology::homology_equal;
use crate::present::{pushout_by_presentation, pushout_presentation, PresentError, PushoutOutcome, SaturationConfig};
use crate::pushout::{dwyer_pushout, DwyerPushout, PushoutError, PushoutMorphism};
use crate::sset::{IdentityViolation, SSetMap, TruncatedSSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScatError {
    #[error("a simplicial category needs at least one level")]
    Empty,
    #[error("level {0} does not have the object set of level 0")]
    Objects(usize),
    #[error("structure maps at level {0} have the wrong shape")]
    Shape(usize),
    #[error("{kind} {i} at level {level} is not an identity-on-objects functor: {violation}")]
    StructureMap { kind: &'static str, level: usize, i: usize, violation: FunctorViolation },
    #[error("simplicial identity fails in hom({x}, {y}): {violation}")]
    Identity { x: Obj, y: Obj, violation: IdentityViolation },
    #[error("truncation {found} is below the required {required}")]
    Truncation { required: usize, found: usize },
    #[error("composition of path components is not well defined at {g} . {f}")]
    Pi0 { g: Mor, f: Mor },
    #[error("levelwise functor: {0}")]
    Functor(String),
    #[error("the first leg must start at a discrete simplicial category on the span apex")]
    NotOverDisc,
    #[error("pushout at level {level}: {error}")]
    Pushout { level: usize, error: PushoutError },
    #[error("presentation at level {level}: {error}")]
    Present { level: usize, error: PresentError },
    #[error("saturation at level {level} is inconclusive: {reason}")]
    Inconclusive { level: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelwiseSCat {
    levels: Vec<Arc<FinCategory>>,
    /// `faces[k][i]`: morphism map `C_k -> C_{k-1}`, for `k >= 1`.
    faces: Vec<Vec<Vec<Mor>>>,
    /// `degens[k][i]`: morphism map `C_k -> C_{k+1}`, for `k < dim`.
    degens: Vec<Vec<Vec<Mor>>>,
}

impl LevelwiseSCat {
    pub fn new(
        levels: Vec<Arc<FinCategory>>,
        faces: Vec<Vec<Vec<Mor>>>,
        degens: Vec<Vec<Vec<Mor>>>,
    ) -> Result<Self, ScatError> {
        let Some(first) = levels.first() else { return Err(ScatError::Empty) };
        let d = levels.len() - 1;
        for (k, c) in levels.iter().enumerate() {
            if c.obj_labels() != first.obj_labels() {
                return Err(ScatError::Objects(k));
            }
        }
        if faces.len() != d + 1 || degens.len() != d + 1 {
            return Err(ScatError::Shape(0));
        }
        let ids: Vec<Obj> = first.objects().collect();
        for k in 0..=d {
            let (nf, nd) = (if k == 0 { 0 } else { k + 1 }, if k < d { k + 1 } else { 0 });
            if faces[k].len() != nf || degens[k].len() != nd {
                return Err(ScatError::Shape(k));
            }
            let maps = faces[k]
                .iter()
                .enumerate()
                .map(|(i, m)| ("face", i, m, k.wrapping_sub(1)))
                .chain(degens[k].iter().enumerate().map(|(i, m)| ("degeneracy", i, m, k + 1)));
            for (kind, i, map, target) in maps {
                if map.len() != levels[k].num_morphisms() || map.iter().any(|&m| m >= levels[target].num_morphisms()) {
                    return Err(ScatError::Shape(k));
                }
                Functor::new(levels[k].clone(), levels[target].clone(), ids.clone(), map.clone())
                    .check()
                    .map_err(|violation| ScatError::StructureMap { kind, level: k, i, violation })?;
            }
        }
        let s = LevelwiseSCat { levels, faces, degens };
        for x in s.objects() {
            for y in s.objects() {
                s.hom_sset(x, y).check_identities().map_err(|violation| ScatError::Identity { x, y, violation })?;
            }
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &Arc<FinCategory> {
        &self.levels[k]
    }

    pub fn num_objects(&self) -> usize {
        self.levels[0].num_objects()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        self.levels[0].objects()
    }

    pub fn face(&self, k: usize, i: usize, m: Mor) -> Mor {
        self.faces[k][i][m]
    }

    pub fn degen(&self, k: usize, i: usize, m: Mor) -> Mor {
        self.degens[k][i][m]
    }

    /// Structure functor `d_i: C_k -> C_{k-1}`.
    pub fn face_functor(&self, k: usize, i: usize) -> Functor {
        Functor::new(self.levels[k].clone(), self.levels[k - 1].clone(), self.objects().collect(), self.faces[k][i].clone())
    }

    /// Structure functor `s_i: C_k -> C_{k+1}`.
    pub fn degeneracy_functor(&self, k: usize, i: usize) -> Functor {
        Functor::new(self.levels[k].clone(), self.levels[k + 1].clone(), self.objects().collect(), self.degens[k][i].clone())
    }

    /// Every level is the same category and every structure map is the identity.
    pub fn is_discrete(&self) -> bool {
        let same = self.levels.iter().all(|c| **c == *self.levels[0]);
        let ident = |maps: &Vec<Vec<Mor>>| maps.iter().all(|m| m.iter().enumerate().all(|(a, &b)| a == b));
        same && self.faces.iter().all(ident) && self.degens.iter().all(ident)
    }

    pub fn hom_sset(&self, x: Obj, y: Obj) -> TruncatedSSet {
        let d = self.dim();
        let homs: Vec<&[Mor]> = self.levels.iter().map(|c| c.hom(x, y)).collect();
        let pos = |k: usize, m: Mor| homs[k].binary_search(&m).expect("structure maps preserve homs");
        let faces = (0..=d)
            .map(|k| {
                let n = if k == 0 { 0 } else { k + 1 };
                (0..n).map(|i| homs[k].iter().map(|&m| pos(k - 1, self.faces[k][i][m])).collect()).collect()
            })
            .collect();
        let degens = (0..=d)
            .map(|k| {
                let n = if k < d { k + 1 } else { 0 };
                (0..n).map(|i| homs[k].iter().map(|&m| pos(k + 1, self.degens[k][i][m])).collect()).collect()
            })
            .collect();
        let labels = (0..=d)
            .map(|k| homs[k].iter().map(|&m| self.levels[k].mor_label(m).to_string()).collect())
            .collect();
        TruncatedSSet::from_tables(d, homs.iter().map(|h| h.len()).collect(), faces, degens, Some(labels))
            .expect("hom tables are well formed")
    }
}

/// `C` with every level equal to `C` and identity structure maps.
pub fn disc(c: &Arc<FinCategory>, d: usize) -> LevelwiseSCat {
    let id: Vec<Mor> = c.morphisms().collect();
    LevelwiseSCat {
        levels: vec![c.clone(); d + 1],
        faces: (0..=d).map(|k| vec![id.clone(); if k == 0 { 0 } else { k + 1 }]).collect(),
        degens: (0..=d).map(|k| vec![id.clone(); if k < d { k + 1 } else { 0 }]).collect(),
    }
}

/// Path components of every hom simplicial set, as a category.
#[derive(Debug, Clone)]
pub struct Pi0 {
    pub category: Arc<FinCategory>,
    /// Component of each morphism of `C_0`.
    pub class_of: Vec<Mor>,
}

pub fn pi0(s: &LevelwiseSCat) -> Result<Pi0, ScatError> {
    let c0 = s.level(0);
    let mut parent: Vec<usize> = c0.morphisms().collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    if s.dim() >= 1 {
        for m in s.level(1).morphisms() {
            let (a, b) = (find(&mut parent, s.face(1, 0, m)), find(&mut parent, s.face(1, 1, m)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut class_of_root: HashMap<usize, Mor> = HashMap::new();
    let (mut labels, mut src, mut tgt) = (Vec::new(), Vec::new(), Vec::new());
    let mut class_of = vec![0; c0.num_morphisms()];
    for m in c0.morphisms() {
        let r = find(&mut parent, m);
        class_of[m] = *class_of_root.entry(r).or_insert_with(|| {
            labels.push(c0.mor_label(m).to_string());
            src.push(c0.src(m));
            tgt.push(c0.tgt(m));
            labels.len() - 1
        });
    }
    let mut table: HashMap<(Mor, Mor), Mor> = HashMap::new();
    for (g, f) in c0.composable_pairs() {
        let h = class_of[c0.compose(g, f).expect("composable")];
        if *table.entry((class_of[g], class_of[f])).or_insert(h) != h {
            return Err(ScatError::Pi0 { g, f });
        }
    }
    let category = FinCategory::from_raw(c0.obj_labels().to_vec(), labels, src, tgt, |g, f| table.get(&(g, f)).copied())
        .map_err(|_| ScatError::Pi0 { g: 0, f: 0 })?;
    Ok(Pi0 { category: Arc::new(category), class_of })
}

/// A simplicial functor given levelwise, with one object map.
#[derive(Debug, Clone)]
pub struct LevelwiseFunctor {
    pub dom: Arc<LevelwiseSCat>,
    pub cod: Arc<LevelwiseSCat>,
    pub obj_map: Vec<Obj>,
    pub levels: Vec<Vec<Mor>>,
}

impl LevelwiseFunctor {
    pub fn new(dom: Arc<LevelwiseSCat>, cod: Arc<LevelwiseSCat>, obj_map: Vec<Obj>, levels: Vec<Vec<Mor>>) -> Self {
        LevelwiseFunctor { dom, cod, obj_map, levels }
    }

    pub fn identity(s: Arc<LevelwiseSCat>) -> Self {
        let obj_map = s.objects().collect();
        let levels = s.levels.iter().map(|c| c.morphisms().collect()).collect();
        LevelwiseFunctor { dom: s.clone(), cod: s, obj_map, levels }
    }

    /// `disc(F): disc(A) -> disc(C)`.
    pub fn disc(f: &Functor, d: usize) -> Self {
        LevelwiseFunctor {
            dom: Arc::new(disc(&f.dom, d)),
            cod: Arc::new(disc(&f.cod, d)),
            obj_map: f.obj_map.clone(),
            levels: vec![f.mor_map.clone(); d + 1],
        }
    }

    pub fn ob(&self, x: Obj) -> Obj {
        self.obj_map[x]
    }

    pub fn level(&self, k: usize) -> Functor {
        Functor::new(self.dom.level(k).clone(), self.cod.level(k).clone(), self.obj_map.clone(), self.levels[k].clone())
    }

    /// `other . self`.
    pub fn then(&self, other: &LevelwiseFunctor) -> LevelwiseFunctor {
        LevelwiseFunctor {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            obj_map: self.obj_map.iter().map(|&x| other.obj_map[x]).collect(),
            levels: self.levels.iter().zip(&other.levels).map(|(a, b)| a.iter().map(|&m| b[m]).collect()).collect(),
        }
    }

    pub fn check(&self) -> Result<(), ScatError> {
        let d = self.dom.dim();
        if self.cod.dim() != d || self.levels.len() != d + 1 {
            return Err(ScatError::Functor("truncations differ".into()));
        }
        if self.obj_map.len() != self.dom.num_objects() || self.obj_map.iter().any(|&y| y >= self.cod.num_objects()) {
            return Err(ScatError::Functor("object map has the wrong shape".into()));
        }
        for k in 0..=d {
            if self.levels[k].len() != self.dom.level(k).num_morphisms() {
                return Err(ScatError::Functor(format!("level {k} has the wrong length")));
            }
            self.level(k).check().map_err(|v| ScatError::Functor(format!("level {k}: {v}")))?;
        }
        for k in 0..=d {
            for m in self.dom.level(k).morphisms() {
                let hm = self.levels[k][m];
                for i in 0..if k == 0 { 0 } else { k + 1 } {
                    if self.levels[k - 1][self.dom.face(k, i, m)] != self.cod.face(k, i, hm) {
                        return Err(ScatError::Functor(format!("face {i} at level {k} is not preserved at {m}")));
                    }
                }
                for i in 0..if k < d { k + 1 } else { 0 } {
                    if self.levels[k + 1][self.dom.degen(k, i, m)] != self.cod.degen(k, i, hm) {
                        return Err(ScatError::Functor(format!("degeneracy {i} at level {k} is not preserved at {m}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `S(x, y) -> T(Hx, Hy)`.
    pub fn hom_map(&self, x: Obj, y: Obj) -> SSetMap {
        let (hx, hy) = (self.ob(x), self.ob(y));
        let dom = self.dom.hom_sset(x, y);
        let cod = self.cod.hom_sset(hx, hy);
        let levels = (0..=self.dom.dim())
            .map(|k| {
                let target = self.cod.level(k).hom(hx, hy);
                self.dom
                    .level(k)
                    .hom(x, y)
                    .iter()
                    .map(|&m| target.binary_search(&self.levels[k][m]).expect("functor preserves homs"))
                    .collect()
            })
            .collect();
        SSetMap { dom: Arc::new(dom), cod: Arc::new(cod), levels }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomVerdict {
    pub x: Obj,
    pub y: Obj,
    pub pi0_bijective: bool,
    pub homology_equal: bool,
    /// The hom map is an isomorphism of truncated simplicial sets.
    pub isomorphic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DKWitness {
    HomPair { x: Obj, y: Obj },
    /// An object of the codomain not isomorphic in `pi0` to any image.
    Object(Obj),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DKStatus {
    /// Every checked necessary condition holds; not a proof of equivalence.
    Consistent,
    Refuted(DKWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DKReport {
    pub degree: usize,
    pub homs: Vec<HomVerdict>,
    pub essentially_surjective: bool,
    pub status: DKStatus,
}

impl DKReport {
    pub fn is_consistent(&self) -> bool {
        self.status == DKStatus::Consistent
    }
}

impl fmt::Display for DKReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hom pair  pi0  homology  isomorphic")?;
        let yn = |b: bool| if b { "yes" } else { "no" };
        for h in &self.homs {
            writeln!(
                f,
                "({:>2},{:>2})   {:>3}  {:>8}  {:>10}",
                h.x,
                h.y,
                yn(h.pi0_bijective),
                yn(h.homology_equal),
                yn(h.isomorphic)
            )?;
        }
        writeln!(f, "essentially surjective on pi0: {}", yn(self.essentially_surjective))?;
        match self.status {
            DKStatus::Consistent => writeln!(f, "status: consistent through degree {}", self.degree),
            DKStatus::Refuted(DKWitness::HomPair { x, y }) => writeln!(f, "status: refuted at hom pair ({x}, {y})"),
            DKStatus::Refuted(DKWitness::Object(y)) => writeln!(f, "status: refuted at object {y}"),
        }
    }
}

/// Component index of each vertex.
fn vertex_components(x: &TruncatedSSet) -> (usize, Vec<usize>) {
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
    let mut index = HashMap::new();
    let comp = (0..n)
        .map(|v| {
            let r = find(&mut parent, v);
            let next = index.len();
            *index.entry(r).or_insert(next)
        })
        .collect();
    (index.len(), comp)
}

fn pi0_bijective(map: &SSetMap) -> bool {
    let (nd, cd) = vertex_components(&map.dom);
    let (nc, cc) = vertex_components(&map.cod);
    if nd != nc {
        return false;
    }
    let mut image = vec![None; nd];
    let mut hit = vec![false; nc];
    for v in 0..map.dom.count(0) {
        let w = cc[map.apply(0, v)];
        match image[cd[v]] {
            None => {
                if std::mem::replace(&mut hit[w], true) {
                    return false;
                }
                image[cd[v]] = Some(w);
            }
            Some(w0) if w0 != w => return false,
            Some(_) => {}
        }
    }
    hit.iter().all(|&h| h)
}

/// Necessary conditions for `H` to be a Dwyer-Kan equivalence: hom-wise `pi0`
/// bijections and equal homology through `degree`, and essential surjectivity
/// of `pi0(H)`. Both truncations must be at least `degree + 1`.
pub fn dk_check(h: &LevelwiseFunctor, degree: usize) -> Result<DKReport, ScatError> {
    let found = h.dom.dim().min(h.cod.dim());
    if found < degree + 1 {
        return Err(ScatError::Truncation { required: degree + 1, found });
    }
    let mut homs = Vec::new();
    let mut first_bad = None;
    for x in h.dom.objects() {
        for y in h.dom.objects() {
            let map = h.hom_map(x, y);
            let pi0_ok = pi0_bijective(&map);
            let hom_ok = homology_equal(&map.dom, &map.cod, degree).expect("truncation checked").equal();
            if (!pi0_ok || !hom_ok) && first_bad.is_none() {
                first_bad = Some(DKWitness::HomPair { x, y });
            }
            homs.push(HomVerdict { x, y, pi0_bijective: pi0_ok, homology_equal: hom_ok, isomorphic: map.is_isomorphism() });
        }
    }
    let p = pi0(&h.cod)?;
    let t = &p.category;
    let missed = h.cod.objects().find(|&y| {
        !h.obj_map.iter().any(|&hx| t.hom(hx, y).iter().any(|&f| t.is_isomorphism(f)))
    });
    let status = match first_bad.or(missed.map(DKWitness::Object)) {
        None => DKStatus::Consistent,
        Some(w) => DKStatus::Refuted(w),
    };
    Ok(DKReport { degree, homs, essentially_surjective: missed.is_none(), status })
}

/// One factor of a morphism of a levelwise pushout, in composition order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leg {
    B(Mor),
    C(Mor),
}

/// Levelwise pushout of `disc(B) <- disc(A) -> S`.
#[derive(Debug, Clone)]
pub struct LevelwisePushout {
    pub scat: Arc<LevelwiseSCat>,
    pub from_b: LevelwiseFunctor,
    pub from_c: LevelwiseFunctor,
    /// Each morphism of level `k` as a composite of leg images; empty for
    /// identities.
    pub factorizations: Vec<Vec<Vec<Leg>>>,
    /// Explicit level data when the first leg is Dwyer.
    pub explicit: Vec<DwyerPushout>,
}

struct Level {
    d: Arc<FinCategory>,
    from_b: Functor,
    from_c: Functor,
    factor: Vec<Vec<Leg>>,
}

fn evaluate(d: &FinCategory, start: Obj, legs: &[Leg], image: impl Fn(Leg) -> Mor) -> Mor {
    legs.iter().fold(d.identity(start), |acc, &l| d.compose(image(l), acc).expect("composable factorization"))
}

fn assemble(b: &Arc<FinCategory>, s: &Arc<LevelwiseSCat>, levels: Vec<Level>) -> Result<LevelwisePushout, ScatError> {
    let d = s.dim();
    let induced = |k: usize, target: usize, op: &dyn Fn(Mor) -> Mor| -> Vec<Mor> {
        let (src, dst) = (&levels[k], &levels[target]);
        src.d
            .morphisms()
            .map(|m| {
                evaluate(&dst.d, src.d.src(m), &src.factor[m], |l| match l {
                    Leg::B(x) => dst.from_b.mor(x),
                    Leg::C(x) => dst.from_c.mor(op(x)),
                })
            })
            .collect()
    };
    let faces = (0..=d)
        .map(|k| (0..if k == 0 { 0 } else { k + 1 }).map(|i| induced(k, k - 1, &|m| s.face(k, i, m))).collect())
        .collect();
    let degens = (0..=d)
        .map(|k| (0..if k < d { k + 1 } else { 0 }).map(|i| induced(k, k + 1, &|m| s.degen(k, i, m))).collect())
        .collect();
    let scat = Arc::new(LevelwiseSCat::new(levels.iter().map(|l| l.d.clone()).collect(), faces, degens)?);
    let from_b = LevelwiseFunctor::new(
        Arc::new(disc(b, d)),
        scat.clone(),
        levels[0].from_b.obj_map.clone(),
        levels.iter().map(|l| l.from_b.mor_map.clone()).collect(),
    );
    let from_c = LevelwiseFunctor::new(
        s.clone(),
        scat.clone(),
        levels[0].from_c.obj_map.clone(),
        levels.iter().map(|l| l.from_c.mor_map.clone()).collect(),
    );
    from_b.check()?;
    from_c.check()?;
    let factorizations = levels.into_iter().map(|l| l.factor).collect();
    Ok(LevelwisePushout { scat, from_b, from_c, factorizations, explicit: Vec::new() })
}

fn check_over_disc(a: &FinCategory, f: &LevelwiseFunctor) -> Result<(), ScatError> {
    if !f.dom.is_discrete() || **f.dom.level(0) != *a {
        return Err(ScatError::NotOverDisc);
    }
    f.check()
}

/// Levelwise pushout of a Dwyer map along `F: disc(A) -> S`; level `k` is the
/// explicit pushout of `I` along `F_k`.
pub fn levelwise_dwyer_pushout(wit: &DwyerWitness, f: &LevelwiseFunctor) -> Result<LevelwisePushout, ScatError> {
    check_over_disc(wit.a(), f)?;
    let mut explicit = Vec::new();
    let mut levels = Vec::new();
    for k in 0..=f.dom.dim() {
        let p = dwyer_pushout(wit, &f.level(k)).map_err(|error| ScatError::Pushout { level: k, error })?;
        let factor = p
            .d
            .morphisms()
            .map(|m| {
                if p.d.is_identity(m) {
                    return Vec::new();
                }
                match p.origin[m] {
                    PushoutMorphism::C(g) => vec![Leg::C(g)],
                    PushoutMorphism::V(g) => vec![Leg::B(g)],
                    PushoutMorphism::Hat { u, f, .. } => vec![Leg::C(f), Leg::B(wit.eps(u))],
                }
            })
            .collect();
        levels.push(Level { d: p.d.clone(), from_b: p.g.clone(), from_c: p.j.clone(), factor });
        explicit.push(p);
    }
    let mut out = assemble(wit.b(), &f.cod, levels)?;
    out.explicit = explicit;
    Ok(out)
}

/// Levelwise pushout of any `I: A -> B` along `F: disc(A) -> S`, each level
/// computed by presentation and saturation.
pub fn levelwise_pushout(i: &Functor, f: &LevelwiseFunctor, config: &SaturationConfig) -> Result<LevelwisePushout, ScatError> {
    check_over_disc(&i.dom, f)?;
    let mut levels = Vec::new();
    for k in 0..=f.dom.dim() {
        let fk = f.level(k);
        let pp = pushout_presentation(i, &fk).map_err(|error| ScatError::Present { level: k, error })?;
        let mut legs = vec![Leg::B(0); pp.presentation.generators.len()];
        for (m, g) in pp.b_generators.iter().enumerate() {
            if let Some(g) = *g {
                legs[g] = Leg::B(m);
            }
        }
        for (m, g) in pp.c_generators.iter().enumerate() {
            if let Some(g) = *g {
                legs[g] = Leg::C(m);
            }
        }
        let presented = match pushout_by_presentation(i, &fk, config).map_err(|error| ScatError::Present { level: k, error })? {
            PushoutOutcome::Finite(p) => p,
            PushoutOutcome::Inconclusive(r) => return Err(ScatError::Inconclusive { level: k, reason: r.reason }),
        };
        let factor = presented.saturated.representatives.iter().map(|p| p.gens.iter().map(|&g| legs[g]).collect()).collect();
        levels.push(Level { d: presented.saturated.category.clone(), from_b: presented.g, from_c: presented.j, factor });
    }
    assemble(&i.cod, &f.cod, levels)
}

/// The map `D' -> D` between pushouts along `F'` and `M . F'` induced by
/// `M: S' -> S`.
pub fn induced_map(dom: &LevelwisePushout, cod: &LevelwisePushout, m: &LevelwiseFunctor) -> Result<LevelwiseFunctor, ScatError> {
    let mut obj_map = vec![None; dom.scat.num_objects()];
    for x in dom.from_b.dom.objects() {
        obj_map[dom.from_b.ob(x)] = Some(cod.from_b.ob(x));
    }
    for x in dom.from_c.dom.objects() {
        obj_map[dom.from_c.ob(x)] = Some(cod.from_c.ob(m.ob(x)));
    }
    let obj_map: Vec<Obj> = obj_map
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| ScatError::Functor("pushout object outside both legs".into()))?;
    let levels = (0..=dom.scat.dim())
        .map(|k| {
            let (src, dst) = (dom.scat.level(k), cod.scat.level(k));
            src.morphisms()
                .map(|x| {
                    evaluate(dst, obj_map[src.src(x)], &dom.factorizations[k][x], |l| match l {
                        Leg::B(b) => cod.from_b.levels[k][b],
                        Leg::C(c) => cod.from_c.levels[k][m.levels[k][c]],
                    })
                })
                .collect()
        })
        .collect();
    let h = LevelwiseFunctor::new(dom.scat.clone(), cod.scat.clone(), obj_map, levels);
    h.check()?;
    Ok(h)
}

/// Evidence for one instance of flatness: the premise `M` and the induced
/// `H: D' -> D`.
#[derive(Debug, Clone)]
pub struct FlatCheck {
    pub premise: DKReport,
    pub conclusion: DKReport,
    pub dom: LevelwisePushout,
    pub cod: LevelwisePushout,
    pub h: LevelwiseFunctor,
}

impl FlatCheck {
    pub fn status(&self) -> DKStatus {
        self.conclusion.status
    }
}

fn flat_check_with(
    f_prime: &LevelwiseFunctor,
    m: &LevelwiseFunctor,
    degree: usize,
    build: impl Fn(&LevelwiseFunctor) -> Result<LevelwisePushout, ScatError>,
) -> Result<FlatCheck, ScatError> {
    m.check()?;
    let premise = dk_check(m, degree)?;
    let dom = build(f_prime)?;
    let cod = build(&f_prime.then(m))?;
    let h = induced_map(&dom, &cod, m)?;
    let conclusion = dk_check(&h, degree)?;
    Ok(FlatCheck { premise, conclusion, dom, cod, h })
}

/// Push `M: S' -> S` (under `F': disc(A) -> S'`) out along a Dwyer map and
/// check the induced map.
pub fn flat_instance_check(
    wit: &DwyerWitness,
    f_prime: &LevelwiseFunctor,
    m: &LevelwiseFunctor,
    degree: usize,
) -> Result<FlatCheck, ScatError> {
    flat_check_with(f_prime, m, degree, |f| levelwise_dwyer_pushout(wit, f))
}

/// As [`flat_instance_check`] for an arbitrary first leg, through presentations.
pub fn flat_instance_check_presented(
    i: &Functor,
    f_prime: &LevelwiseFunctor,
    m: &LevelwiseFunctor,
    degree: usize,
    config: &SaturationConfig,
) -> Result<FlatCheck, ScatError> {
    flat_check_with(f_prime, m, degree, |f| levelwise_pushout(i, f, config))
}

/// Two parallel arrows `a, b: x -> y` joined by a 1-simplex `h` with
/// `d_1 h = a`, `d_0 h = b`; truncated at 2 with only degenerate 2-simplices.
pub fn merged_parallel_pair() -> LevelwiseSCat {
    let mut l0 = FinCategory::builder(["x", "y"]);
    let a = l0.add_morphism("a", 0, 1);
    let b = l0.add_morphism("b", 0, 1);
    let l0 = l0.build().expect("level 0").into_arc();
    let mut l1 = FinCategory::builder(["x", "y"]);
    let sa = l1.add_morphism("s0a", 0, 1);
    let sb = l1.add_morphism("s0b", 0, 1);
    let h = l1.add_morphism("h", 0, 1);
    let l1 = l1.build().expect("level 1").into_arc();
    let mut l2 = FinCategory::builder(["x", "y"]);
    let names = ["s1s0a", "s1s0b", "s0h", "s1h"];
    let l2m: Vec<Mor> = names.iter().map(|n| l2.add_morphism(*n, 0, 1)).collect();
    let l2 = l2.build().expect("level 2").into_arc();
    let (x, y) = (0, 1);
    let d10 = vec![x, y, a, b, b];
    let d11 = vec![x, y, a, b, a];
    let s00 = vec![x, y, sa, sb];
    // level 2: s1 s0 a, s1 s0 b, s0 h, s1 h
    let d20 = vec![x, y, sa, sb, h, sb];
    let d21 = vec![x, y, sa, sb, h, h];
    let d22 = vec![x, y, sa, sb, sa, h];
    let s10 = vec![x, y, l2m[0], l2m[1], l2m[2]];
    let s11 = vec![x, y, l2m[0], l2m[1], l2m[3]];
    LevelwiseSCat::new(
        vec![l0, l1, l2],
        vec![vec![], vec![d10, d11], vec![d20, d21, d22]],
        vec![vec![s00], vec![s10, s11], vec![]],
    )
    .expect("merged parallel pair")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dwyer::is_dwyer;
    use crate::fixtures;
    use crate::homology::homology;
    use crate::pushout::iso_check;

    fn arc(c: FinCategory) -> Arc<FinCategory> {
        Arc::new(c)
    }

    fn zero_into_two() -> DwyerWitness {
        let i = Functor::new(arc(fixtures::terminal()), arc(fixtures::arrow()), vec![0], vec![0]);
        is_dwyer(&i).unwrap()
    }

    #[test]
    fn disc_is_constant() {
        for c in [fixtures::terminal(), fixtures::arrow(), fixtures::monoid5()] {
            let s = disc(&arc(c.clone()), 2);
            assert!(s.is_discrete());
            assert!(LevelwiseSCat::new(s.levels.clone(), s.faces.clone(), s.degens.clone()).is_ok());
            assert_eq!(*pi0(&s).unwrap().category, c);
        }
    }

    #[test]
    fn hom_ssets_of_the_arrow() {
        let s = disc(&arc(fixtures::arrow()), 2);
        assert_eq!(s.hom_sset(0, 1).counts(), &[1, 1, 1]);
        assert_eq!(s.hom_sset(1, 0).counts(), &[0, 0, 0]);
    }

    #[test]
    fn merged_pair_has_one_component() {
        let s = merged_parallel_pair();
        let h = s.hom_sset(0, 1);
        assert_eq!(h.counts(), &[2, 3, 4]);
        assert_eq!(homology(&h, 1).unwrap().betti(), vec![1, 0]);
        let p = pi0(&s).unwrap();
        assert_eq!(p.category.hom(0, 1).len(), 1);
        assert_eq!(p.class_of[2], p.class_of[3]);
    }

    #[test]
    fn broken_identity_is_rejected() {
        let s = merged_parallel_pair();
        let mut faces = s.faces.clone();
        faces[2][0][4] = 3;
        assert!(matches!(
            LevelwiseSCat::new(s.levels.clone(), faces, s.degens.clone()),
            Err(ScatError::Identity { .. })
        ));
    }

    #[test]
    fn dk_verdicts() {
        let one = arc(fixtures::terminal());
        let iso = Functor::to_terminal(arc(fixtures::free_iso()), one.clone());
        let r = dk_check(&LevelwiseFunctor::disc(&iso, 2), 1).unwrap();
        assert!(r.is_consistent());
        let arrow = Functor::to_terminal(arc(fixtures::arrow()), one);
        let r = dk_check(&LevelwiseFunctor::disc(&arrow, 2), 1).unwrap();
        assert_eq!(r.status, DKStatus::Refuted(DKWitness::HomPair { x: 1, y: 0 }));
        let id = LevelwiseFunctor::identity(Arc::new(merged_parallel_pair()));
        let r = dk_check(&id, 1).unwrap();
        assert!(r.is_consistent() && r.homs.iter().all(|h| h.isomorphic));
        assert!(dk_check(&id, 2).is_err());
    }

    #[test]
    fn collapsing_the_pair_is_consistent() {
        let s = Arc::new(merged_parallel_pair());
        let t = Arc::new(disc(&arc(fixtures::arrow()), 2));
        let levels = (0..=2).map(|k| s.level(k).morphisms().map(|m| if m < 2 { m } else { 2 }).collect()).collect();
        let h = LevelwiseFunctor::new(s, t, vec![0, 1], levels);
        h.check().unwrap();
        let r = dk_check(&h, 1).unwrap();
        assert!(r.is_consistent());
        assert!(!r.homs[1].isomorphic);
    }

    #[test]
    fn disc_commutes_with_dwyer_pushouts() {
        let wit = zero_into_two();
        let f = Functor::new(wit.a().clone(), arc(fixtures::arrow()), vec![1], vec![1]);
        let lp = levelwise_dwyer_pushout(&wit, &LevelwiseFunctor::disc(&f, 2)).unwrap();
        let p = dwyer_pushout(&wit, &f).unwrap();
        assert!(lp.scat.is_discrete());
        assert_eq!(**lp.scat.level(0), *p.d);
    }

    #[test]
    fn hom_formula_over_a_non_discrete_target() {
        let wit = zero_into_two();
        let s = Arc::new(merged_parallel_pair());
        let a = Arc::new(disc(wit.a(), 2));
        let f = LevelwiseFunctor::new(a, s.clone(), vec![1], vec![vec![1]; 3]);
        let lp = levelwise_dwyer_pushout(&wit, &f).unwrap();
        let u = lp.explicit[0].v_object(1).unwrap();
        for k in 0..=2 {
            let d = lp.scat.level(k);
            assert_eq!(d.hom(0, u).len(), s.level(k).hom(0, 1).len());
            assert_eq!(d.hom(1, u).len(), 1);
            assert!(d.hom(u, 0).is_empty() && d.hom(u, 1).is_empty());
            for i in 0..=k {
                if k == 0 {
                    break;
                }
                for &m in d.hom(0, u) {
                    let PushoutMorphism::Hat { c, u: w, f } = lp.explicit[k].origin[m] else { panic!() };
                    let direct = lp.explicit[k - 1].hat_of(c, w, s.face(k, i, f)).unwrap();
                    assert_eq!(lp.scat.face(k, i, m), direct);
                }
            }
        }
        assert_eq!(pi0(&lp.scat).unwrap().category.hom(0, u).len(), 1);
    }

    #[test]
    fn presented_and_explicit_levelwise_agree() {
        let wit = zero_into_two();
        let s = Arc::new(merged_parallel_pair());
        let f = LevelwiseFunctor::new(Arc::new(disc(wit.a(), 2)), s, vec![1], vec![vec![1]; 3]);
        let e = levelwise_dwyer_pushout(&wit, &f).unwrap();
        let p = levelwise_pushout(&wit.inclusion, &f, &SaturationConfig::default()).unwrap();
        for k in 0..=2 {
            assert!(iso_check(e.scat.level(k), p.scat.level(k)).is_iso());
        }
    }

    #[test]
    fn flat_instances() {
        let wit = zero_into_two();
        let iso = arc(fixtures::free_iso());
        let one = arc(fixtures::terminal());
        let f_prime = LevelwiseFunctor::disc(&Functor::new(wit.a().clone(), iso.clone(), vec![0], vec![0]), 2);
        let m = LevelwiseFunctor::disc(&Functor::to_terminal(iso.clone(), one.clone()), 2);
        let r = flat_instance_check(&wit, &f_prime, &m, 1).unwrap();
        assert!(r.premise.is_consistent() && r.conclusion.is_consistent());

        let pts = arc(fixtures::discrete(2));
        let cospan = arc(fixtures::cospan());
        let i = Functor::new(pts.clone(), cospan, vec![0, 2], vec![0, 2]);
        let f_prime = LevelwiseFunctor::disc(&Functor::new(pts, iso, vec![0, 1], vec![0, 1]), 2);
        let r = flat_instance_check_presented(&i, &f_prime, &m, 1, &SaturationConfig::default()).unwrap();
        assert_eq!(r.dom.scat.level(0).num_morphisms(), 9);
        assert!(r.conclusion.is_consistent());
    }
}
