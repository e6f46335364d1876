//! Sieves, cosieves and Dwyer maps between finite categories.
//!
//! A Dwyer map is a full inclusion `I: A -> B` whose image is a sieve and
//! whose minimal cosieve `W` admits a right adjoint left inverse `R: W -> A`.
//! The witness stores `R` and the counit `eps` indexed by objects and
//! morphisms of `B`, so the pushout construction can read them directly.

use std::fmt;
use std::sync::Arc;

use crate::fincat::{CommaCategory, FinCategory, FullSubcategory, Functor, FunctorViolation, Mor, Obj};

/// Classifier of a sieve: `class[x] == 0` on the sieve, `1` on the
/// complementary cosieve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveWitness {
    pub class: Vec<u8>,
}

impl SieveWitness {
    pub fn sieve_objects(&self) -> Vec<Obj> {
        (0..self.class.len()).filter(|&x| self.class[x] == 0).collect()
    }

    pub fn cosieve_objects(&self) -> Vec<Obj> {
        (0..self.class.len()).filter(|&x| self.class[x] == 1).collect()
    }

    pub fn in_sieve(&self, x: Obj) -> bool {
        self.class[x] == 0
    }

    /// The classifier as a functor to the walking arrow `codomain`.
    pub fn classifier(&self, b: &Arc<FinCategory>, arrow: Arc<FinCategory>) -> Functor {
        let obj_map: Vec<Obj> = self.class.iter().map(|&c| c as Obj).collect();
        let mor_map = b
            .morphisms()
            .map(|f| match (self.class[b.src(f)], self.class[b.tgt(f)]) {
                (0, 0) => 0,
                (1, 1) => 1,
                _ => 2,
            })
            .collect();
        Functor::new(b.clone(), arrow, obj_map, mor_map)
    }
}

/// Witness that `s` is a sieve, or the least morphism leaving the
/// complement and landing in `s`.
pub fn is_sieve(b: &FinCategory, s: &[Obj]) -> Result<SieveWitness, Mor> {
    let mut class = vec![1u8; b.num_objects()];
    for &x in s {
        class[x] = 0;
    }
    match b.morphisms().find(|&f| class[b.src(f)] == 1 && class[b.tgt(f)] == 0) {
        Some(f) => Err(f),
        None => Ok(SieveWitness { class }),
    }
}

/// Smallest cosieve containing `a`: `a` together with every codomain of a
/// morphism out of `a`. Ascending.
pub fn minimal_cosieve(b: &FinCategory, a: &[Obj]) -> Vec<Obj> {
    let mut member = vec![false; b.num_objects()];
    for &x in a {
        for &f in b.out_of(x) {
            member[b.tgt(f)] = true;
        }
    }
    (0..member.len()).filter(|&x| member[x]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DwyerRefutation {
    NotAFunctor(FunctorViolation),
    /// Not injective on objects or not faithful.
    NotAnEmbedding,
    NotFull,
    NotASieve { morphism: Mor },
    NoTerminalObjectAt(Obj),
}

impl fmt::Display for DwyerRefutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DwyerRefutation::NotAFunctor(v) => write!(f, "not a functor: {v}"),
            DwyerRefutation::NotAnEmbedding => write!(f, "not injective on objects and faithful"),
            DwyerRefutation::NotFull => write!(f, "not full"),
            DwyerRefutation::NotASieve { morphism } => {
                write!(f, "image is not a sieve: morphism {morphism} enters it")
            }
            DwyerRefutation::NoTerminalObjectAt(w) => {
                write!(f, "comma category over object {w} has no terminal object")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessViolation {
    Inclusion(DwyerRefutation),
    Classifier,
    Cosieve,
    ComplementIntersection,
    RObject(Obj),
    RMorphism(Mor),
    RFunctor { g: Mor, f: Mor },
    Unit(Obj),
    CounitTyping(Obj),
    CounitAtSieve(Obj),
    Naturality(Mor),
    Triangle(Obj),
    NotTerminal(Obj),
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone)]
pub struct DwyerWitness {
    pub inclusion: Functor,
    pub sieve: SieveWitness,
    /// Minimal cosieve containing the image, ascending objects of `B`.
    pub w: Vec<Obj>,
    /// `W` intersected with the complementary cosieve.
    pub u: Vec<Obj>,
    /// `R` on objects: for `w` in `W`, an object of `A`.
    pub r_obj: Vec<Option<Obj>>,
    /// `R` on morphisms of `B` between objects of `W`.
    pub r_mor: Vec<Option<Mor>>,
    /// `eps_w: I R w -> w` for `w` in `W`.
    pub counit: Vec<Option<Mor>>,
}

impl DwyerWitness {
    pub fn a(&self) -> &Arc<FinCategory> {
        &self.inclusion.dom
    }

    pub fn b(&self) -> &Arc<FinCategory> {
        &self.inclusion.cod
    }

    pub fn in_w(&self, x: Obj) -> bool {
        self.r_obj[x].is_some()
    }

    pub fn r(&self, x: Obj) -> Obj {
        self.r_obj[x].expect("object in W")
    }

    pub fn r_of(&self, g: Mor) -> Mor {
        self.r_mor[g].expect("morphism in W")
    }

    pub fn eps(&self, x: Obj) -> Mor {
        self.counit[x].expect("object in W")
    }

    /// Check every defining equation from scratch.
    pub fn verify(&self) -> Result<(), WitnessViolation> {
        let (a, b, i) = (self.a(), self.b(), &self.inclusion);
        check_inclusion(i).map_err(WitnessViolation::Inclusion)?;
        let image: Vec<Obj> = i.obj_map.clone();
        let expected = is_sieve(b, &image).map_err(|m| WitnessViolation::Inclusion(DwyerRefutation::NotASieve { morphism: m }))?;
        if expected != self.sieve {
            return Err(WitnessViolation::Classifier);
        }
        if minimal_cosieve(b, &image) != self.w {
            return Err(WitnessViolation::Cosieve);
        }
        let u: Vec<Obj> = self.w.iter().copied().filter(|&x| !self.sieve.in_sieve(x)).collect();
        if u != self.u {
            return Err(WitnessViolation::ComplementIntersection);
        }
        for x in b.objects() {
            let inside = self.w.binary_search(&x).is_ok();
            match self.r_obj[x] {
                Some(ra) if inside && ra < a.num_objects() => {}
                None if !inside => {}
                _ => return Err(WitnessViolation::RObject(x)),
            }
            match self.counit[x] {
                Some(e) if inside && b.src(e) == i.ob(self.r(x)) && b.tgt(e) == x => {}
                None if !inside => {}
                _ => return Err(WitnessViolation::CounitTyping(x)),
            }
        }
        for g in b.morphisms() {
            let inside = self.in_w(b.src(g)) && self.in_w(b.tgt(g));
            match self.r_mor[g] {
                Some(r) if inside && a.src(r) == self.r(b.src(g)) && a.tgt(r) == self.r(b.tgt(g)) => {}
                None if !inside => {}
                _ => return Err(WitnessViolation::RMorphism(g)),
            }
        }
        for (g, f) in b.composable_pairs() {
            if self.in_w(b.src(f)) && self.in_w(b.tgt(f)) && self.in_w(b.tgt(g)) {
                let h = b.compose(g, f).expect("composable");
                if a.compose(self.r_of(g), self.r_of(f)) != Some(self.r_of(h)) {
                    return Err(WitnessViolation::RFunctor { g, f });
                }
            }
        }
        for x in a.objects() {
            if self.r(i.ob(x)) != x {
                return Err(WitnessViolation::Unit(x));
            }
            if self.eps(i.ob(x)) != b.identity(i.ob(x)) {
                return Err(WitnessViolation::CounitAtSieve(x));
            }
        }
        for f in a.morphisms() {
            if self.r_of(i.mor(f)) != f {
                return Err(WitnessViolation::Unit(a.src(f)));
            }
        }
        for g in b.morphisms() {
            let (w, w2) = (b.src(g), b.tgt(g));
            if !(self.in_w(w) && self.in_w(w2)) {
                continue;
            }
            let lhs = b.compose(self.eps(w2), i.mor(self.r_of(g)));
            let rhs = b.compose(g, self.eps(w));
            if lhs.is_none() || lhs != rhs {
                return Err(WitnessViolation::Naturality(g));
            }
        }
        for &w in &self.w {
            if self.r_of(self.eps(w)) != a.identity(self.r(w)) {
                return Err(WitnessViolation::Triangle(w));
            }
        }
        let sub = FullSubcategory::new(b.clone(), image);
        for &w in &self.w {
            let comma = CommaCategory::over(&sub, w);
            let me = comma
                .objects
                .iter()
                .position(|&(x, e)| x == i.ob(self.r(w)) && e == self.eps(w))
                .ok_or(WitnessViolation::NotTerminal(w))?;
            let c = &comma.category;
            if !c.objects().all(|y| c.hom(y, me).len() == 1) {
                return Err(WitnessViolation::NotTerminal(w));
            }
        }
        Ok(())
    }
}

fn check_inclusion(i: &Functor) -> Result<(), DwyerRefutation> {
    i.check().map_err(DwyerRefutation::NotAFunctor)?;
    if !i.is_injective_on_objects() || !i.is_faithful() {
        return Err(DwyerRefutation::NotAnEmbedding);
    }
    if !i.is_full() {
        return Err(DwyerRefutation::NotFull);
    }
    Ok(())
}

/// Decide whether `i` is a Dwyer map. Obstructions are reported in a fixed
/// order: functoriality, embedding, fullness, sieve, then terminal objects by
/// ascending object of `W`. Among several terminal objects the least comma
/// index is chosen, except on the image of `i`, where the identity is used.
pub fn is_dwyer(i: &Functor) -> Result<DwyerWitness, DwyerRefutation> {
    check_inclusion(i)?;
    let (a, b) = (&i.dom, &i.cod);
    let image: Vec<Obj> = i.obj_map.clone();
    let sieve = is_sieve(b, &image).map_err(|m| DwyerRefutation::NotASieve { morphism: m })?;
    let w = minimal_cosieve(b, &image);
    let u: Vec<Obj> = w.iter().copied().filter(|&x| !sieve.in_sieve(x)).collect();

    let mut preimage = vec![None; b.num_objects()];
    for x in a.objects() {
        preimage[i.ob(x)] = Some(x);
    }
    let mut mor_preimage = vec![None; b.num_morphisms()];
    for f in a.morphisms() {
        mor_preimage[i.mor(f)] = Some(f);
    }

    let sub = FullSubcategory::new(b.clone(), image);
    let mut r_obj = vec![None; b.num_objects()];
    let mut counit = vec![None; b.num_objects()];
    for &x in &w {
        if let Some(ax) = preimage[x] {
            r_obj[x] = Some(ax);
            counit[x] = Some(b.identity(x));
            continue;
        }
        let comma = CommaCategory::over(&sub, x);
        let t = comma.terminal().ok_or(DwyerRefutation::NoTerminalObjectAt(x))?;
        let (ax, e) = comma.objects[t];
        r_obj[x] = preimage[ax];
        counit[x] = Some(e);
    }

    // R(g) is the unique r with eps_{w'} . I(r) = g . eps_w
    let mut r_mor = vec![None; b.num_morphisms()];
    for g in b.morphisms() {
        let (x, y) = (b.src(g), b.tgt(g));
        let (Some(rx), Some(ry)) = (r_obj[x], r_obj[y]) else { continue };
        let target = b.compose(g, counit[x].expect("in W")).expect("composable");
        let eps_y = counit[y].expect("in W");
        let found = b
            .hom(i.ob(rx), i.ob(ry))
            .iter()
            .find(|&&r| b.compose(eps_y, r) == Some(target))
            .expect("terminal object factors every arrow");
        r_mor[g] = mor_preimage[*found];
    }
    Ok(DwyerWitness { inclusion: i.clone(), sieve, w, u, r_obj, r_mor, counit })
}

/// `i` is co-Dwyer when its opposite is Dwyer; the witness lives on the
/// opposite categories.
pub fn is_co_dwyer(i: &Functor) -> Result<DwyerWitness, DwyerRefutation> {
    is_dwyer(&i.opposite())
}

/// A retract diagram exhibiting `j: A' -> B'` as a retract of a Dwyer map
/// `I: A -> B` in the arrow category.
#[derive(Debug, Clone)]
pub struct RetractDiagram {
    pub section_a: Functor,
    pub retraction_a: Functor,
    pub section_b: Functor,
    pub retraction_b: Functor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RetractViolation {
    NotDwyer(WitnessViolation),
    NotAFunctor(&'static str),
    Typing(&'static str),
    NotARetraction(&'static str),
    SquareFails(&'static str),
}

fn is_identity_functor(f: &Functor) -> bool {
    f.obj_map.iter().enumerate().all(|(x, &y)| x == y) && f.mor_map.iter().enumerate().all(|(m, &n)| m == n)
}

fn same_map(f: &Functor, g: &Functor) -> bool {
    f.obj_map == g.obj_map && f.mor_map == g.mor_map
}

/// Verify that `j` is a pseudo-Dwyer map through the supplied retract of
/// `witness.inclusion`. No search is performed.
pub fn verify_pseudo_dwyer(j: &Functor, witness: &DwyerWitness, d: &RetractDiagram) -> Result<(), RetractViolation> {
    witness.verify().map_err(RetractViolation::NotDwyer)?;
    let i = &witness.inclusion;
    let named = [
        ("section on domains", &d.section_a),
        ("retraction on domains", &d.retraction_a),
        ("section on codomains", &d.section_b),
        ("retraction on codomains", &d.retraction_b),
        ("j", j),
    ];
    for (name, f) in named {
        if !f.is_functor() {
            return Err(RetractViolation::NotAFunctor(name));
        }
    }
    let typed = d.section_a.dom == j.dom
        && d.section_a.cod == i.dom
        && d.retraction_a.dom == i.dom
        && d.retraction_a.cod == j.dom
        && d.section_b.dom == j.cod
        && d.section_b.cod == i.cod
        && d.retraction_b.dom == i.cod
        && d.retraction_b.cod == j.cod;
    if !typed {
        return Err(RetractViolation::Typing("retract functors do not match the two maps"));
    }
    if !is_identity_functor(&d.section_a.then(&d.retraction_a)) {
        return Err(RetractViolation::NotARetraction("domains"));
    }
    if !is_identity_functor(&d.section_b.then(&d.retraction_b)) {
        return Err(RetractViolation::NotARetraction("codomains"));
    }
    if !same_map(&d.section_a.then(i), &j.then(&d.section_b)) {
        return Err(RetractViolation::SquareFails("section square"));
    }
    if !same_map(&d.retraction_a.then(j), &i.then(&d.retraction_b)) {
        return Err(RetractViolation::SquareFails("retraction square"));
    }
    Ok(())
}

/// The walking arrow, used as the classifier codomain.
pub fn classifier_codomain() -> Arc<FinCategory> {
    Arc::new(crate::fixtures::arrow())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn point(c: &Arc<FinCategory>, x: Obj) -> Functor {
        Functor::point(Arc::new(fixtures::terminal()), c.clone(), x)
    }

    #[test]
    fn sieves_in_the_arrow() {
        let two = fixtures::arrow();
        assert_eq!(is_sieve(&two, &[0]).unwrap().class, vec![0, 1]);
        assert_eq!(is_sieve(&two, &[1]), Err(2));
        let cs = fixtures::cospan();
        assert!(is_sieve(&cs, &[0, 2]).is_ok());
    }

    #[test]
    fn minimal_cosieves() {
        let two = fixtures::arrow();
        assert_eq!(minimal_cosieve(&two, &[0]), vec![0, 1]);
        assert_eq!(minimal_cosieve(&fixtures::cospan(), &[0, 2]), vec![0, 1, 2]);
        assert_eq!(minimal_cosieve(&fixtures::discrete(2), &[0]), vec![0]);
        let w = minimal_cosieve(&two, &[0]);
        assert_eq!(minimal_cosieve(&two, &w), w);
    }

    #[test]
    fn source_of_the_arrow_is_dwyer() {
        let two = Arc::new(fixtures::arrow());
        let wit = is_dwyer(&point(&two, 0)).unwrap();
        assert_eq!(wit.r(1), 0);
        assert_eq!(wit.eps(1), 2);
        assert_eq!(wit.u, vec![1]);
        wit.verify().unwrap();
    }

    #[test]
    fn target_of_the_arrow_is_not_dwyer() {
        let two = Arc::new(fixtures::arrow());
        assert_eq!(is_dwyer(&point(&two, 1)).unwrap_err(), DwyerRefutation::NotASieve { morphism: 2 });
    }

    #[test]
    fn cospan_ends_have_no_right_adjoint() {
        let cs = Arc::new(fixtures::cospan());
        let inc = FullSubcategory::new(cs, [0, 2]).inclusion();
        assert_eq!(is_dwyer(&inc).unwrap_err(), DwyerRefutation::NoTerminalObjectAt(1));
    }

    #[test]
    fn cone_inclusion_is_dwyer() {
        let a = fixtures::ordinal(2);
        let cone = Arc::new(fixtures::cone(&a));
        let inc = FullSubcategory::new(cone.clone(), 0..3).inclusion();
        let wit = is_dwyer(&inc).unwrap();
        wit.verify().unwrap();
        assert_eq!(wit.r(3), 2);
    }

    #[test]
    fn co_dwyer_examples() {
        let two = Arc::new(fixtures::arrow());
        let wit = is_co_dwyer(&point(&two, 1)).unwrap();
        wit.verify().unwrap();
        assert!(is_co_dwyer(&point(&two, 0)).is_err());
        let one = Arc::new(fixtures::terminal());
        assert!(is_co_dwyer(&Functor::identity(one)).is_ok());
    }

    #[test]
    fn non_full_inclusion_is_refuted() {
        let two = Arc::new(fixtures::arrow());
        let disc = Arc::new(fixtures::discrete(2));
        let inc = Functor::new(disc, two, vec![0, 1], vec![0, 1]);
        assert_eq!(is_dwyer(&inc).unwrap_err(), DwyerRefutation::NotFull);
    }

    #[test]
    fn tampered_witness_fails_verification() {
        let two = Arc::new(fixtures::arrow());
        let mut wit = is_dwyer(&point(&two, 0)).unwrap();
        wit.counit[1] = Some(1);
        assert!(wit.verify().is_err());
    }

    #[test]
    fn identity_is_a_retract_of_itself() {
        let two = Arc::new(fixtures::arrow());
        let i = point(&two, 0);
        let wit = is_dwyer(&i).unwrap();
        let d = RetractDiagram {
            section_a: Functor::identity(i.dom.clone()),
            retraction_a: Functor::identity(i.dom.clone()),
            section_b: Functor::identity(two.clone()),
            retraction_b: Functor::identity(two),
        };
        verify_pseudo_dwyer(&i, &wit, &d).unwrap();
    }
}
