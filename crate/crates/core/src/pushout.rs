//! Explicit pushouts of Dwyer maps.
//!
//! For a Dwyer witness `I: A -> B` and any `F: A -> C`, the pushout `D` has
//! objects `ob C + ob V` and hom sets
//!
//! * `D(c, c') = C(c, c')`,
//! * `D(v, v') = B(v, v')`,
//! * `D(c, u) = C(c, F R u)` for `u` in `U`, written `f^`,
//!
//! and is empty otherwise. Mixed composites are `g . f^ . h = (F(R g) . f . h)^`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::dwyer::{is_dwyer, DwyerRefutation, DwyerWitness, SieveWitness, WitnessViolation};
use crate::fincat::{find_isomorphism, FinCategory, Functor, FunctorSearch, FunctorViolation, IsoResult, Mor, Obj, ISO_GUARD};
use crate::present::{pushout_by_presentation, PresentError, PushoutOutcome, SaturationConfig};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PushoutError {
    #[error("invalid Dwyer witness: {0}")]
    InvalidWitness(WitnessViolation),
    #[error("second leg does not start at the domain of the Dwyer map")]
    DomainMismatch,
    #[error("second leg is not a functor: {0}")]
    NotAFunctor(FunctorViolation),
    #[error("leg is not Dwyer: {0}")]
    NotDwyer(DwyerRefutation),
    #[error("presentation oracle: {0}")]
    Present(PresentError),
}

/// Where a morphism of `D` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PushoutMorphism {
    C(Mor),
    V(Mor),
    /// `f^: c -> u` for `f: c -> F R u` in `C`; `u` is an object of `B`.
    Hat { c: Obj, u: Obj, f: Mor },
}

#[derive(Debug, Clone)]
pub struct DwyerPushout {
    pub d: Arc<FinCategory>,
    pub j: Functor,
    pub g: Functor,
    /// `pi`: 0 on the image of `C`, 1 on `V`.
    pub pi: SieveWitness,
    /// Objects of `B` in `V`, ascending; `D`-object `n_C + k` is `v_objects[k]`.
    pub v_objects: Vec<Obj>,
    /// Provenance of each morphism of `D`.
    pub origin: Vec<PushoutMorphism>,
    /// `(c, u, f) -> f^`.
    pub hat: HashMap<(Obj, Obj, Mor), Mor>,
    /// Right adjoint left inverse `S` of `J` with counit `nu`.
    pub induced: DwyerWitness,
}

impl DwyerPushout {
    /// `D`-object of a `V`-object of `B`.
    pub fn v_object(&self, v: Obj) -> Option<Obj> {
        self.v_objects.binary_search(&v).ok().map(|k| self.j.cod.num_objects() - self.v_objects.len() + k)
    }

    pub fn hat_of(&self, c: Obj, u: Obj, f: Mor) -> Option<Mor> {
        self.hat.get(&(c, u, f)).copied()
    }
}

/// Build the pushout of `wit.inclusion` along `f`.
pub fn dwyer_pushout(wit: &DwyerWitness, f: &Functor) -> Result<DwyerPushout, PushoutError> {
    wit.verify().map_err(PushoutError::InvalidWitness)?;
    if *f.dom != **wit.a() {
        return Err(PushoutError::DomainMismatch);
    }
    f.check().map_err(PushoutError::NotAFunctor)?;
    let (b, c) = (wit.b().clone(), f.cod.clone());
    let nc = c.num_objects();
    let v_objects = wit.sieve.cosieve_objects();
    let nv = v_objects.len();
    let mut d_of_v = vec![None; b.num_objects()];
    for (k, &v) in v_objects.iter().enumerate() {
        d_of_v[v] = Some(nc + k);
    }
    let d_v = |v: Obj| d_of_v[v].expect("object of V");
    // S u = F R u on U
    let s_of = |u: Obj| f.ob(wit.r(u));

    let mut obj_labels: Vec<String> = c.obj_labels().to_vec();
    obj_labels.extend(v_objects.iter().map(|&v| b.obj_label(v).to_string()));
    let mut origin: Vec<PushoutMorphism> = Vec::new();
    let mut mor_labels = Vec::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for x in c.objects() {
        origin.push(PushoutMorphism::C(x));
        mor_labels.push(c.mor_label(x).to_string());
    }
    for &v in &v_objects {
        origin.push(PushoutMorphism::V(v));
        mor_labels.push(b.mor_label(v).to_string());
    }
    src.extend(0..nc + nv);
    tgt.extend(0..nc + nv);
    let mut c_mor = vec![0; c.num_morphisms()];
    for (x, slot) in c_mor.iter_mut().enumerate().take(nc) {
        *slot = x;
    }
    for m in c.non_identities() {
        c_mor[m] = origin.len();
        origin.push(PushoutMorphism::C(m));
        mor_labels.push(c.mor_label(m).to_string());
        src.push(c.src(m));
        tgt.push(c.tgt(m));
    }
    let mut v_mor = vec![None; b.num_morphisms()];
    for &v in &v_objects {
        v_mor[v] = Some(d_v(v));
    }
    for m in b.non_identities() {
        let (x, y) = (b.src(m), b.tgt(m));
        if d_of_v[x].is_some() && d_of_v[y].is_some() {
            v_mor[m] = Some(origin.len());
            origin.push(PushoutMorphism::V(m));
            mor_labels.push(b.mor_label(m).to_string());
            src.push(d_v(x));
            tgt.push(d_v(y));
        }
    }
    let mut hat = HashMap::new();
    for x in c.objects() {
        for &u in &wit.u {
            for &m in c.hom(x, s_of(u)) {
                hat.insert((x, u, m), origin.len());
                origin.push(PushoutMorphism::Hat { c: x, u, f: m });
                mor_labels.push(format!("{}^{}", c.mor_label(m), b.obj_label(u)));
                src.push(x);
                tgt.push(d_v(u));
            }
        }
    }

    let compose = |g: Mor, h: Mor| -> Option<Mor> {
        use PushoutMorphism::*;
        match (origin[g], origin[h]) {
            (C(g), C(h)) => Some(c_mor[c.compose(g, h)?]),
            (V(g), V(h)) => v_mor[b.compose(g, h)?],
            (Hat { c: x, u, f: m }, C(h)) => {
                let k = c.compose(m, h)?;
                hat.get(&(c.src(h), u, k)).copied().filter(|_| x == c.tgt(h))
            }
            (V(g), Hat { c: x, u, f: m }) => {
                if b.src(g) != u {
                    return None;
                }
                let k = c.compose(f.mor(wit.r_of(g)), m)?;
                hat.get(&(x, b.tgt(g), k)).copied()
            }
            _ => None,
        }
    };
    let d = Arc::new(FinCategory::from_raw(obj_labels, mor_labels, src, tgt, compose).expect("pushout composition"));

    let j = Functor::new(c.clone(), d.clone(), (0..nc).collect(), c_mor.clone());
    let g_obj: Vec<Obj> = b
        .objects()
        .map(|x| if wit.sieve.in_sieve(x) { f.ob(wit.r(x)) } else { d_v(x) })
        .collect();
    let g_mor: Vec<Mor> = b
        .morphisms()
        .map(|m| {
            let (x, y) = (b.src(m), b.tgt(m));
            match (wit.sieve.in_sieve(x), wit.sieve.in_sieve(y)) {
                (true, true) => c_mor[f.mor(wit.r_of(m))],
                (true, false) => hat[&(f.ob(wit.r(x)), y, f.mor(wit.r_of(m)))],
                (false, false) => v_mor[m].expect("V morphism"),
                (false, true) => unreachable!("sieve has no incoming morphisms"),
            }
        })
        .collect();
    let g = Functor::new(b.clone(), d.clone(), g_obj, g_mor);

    let mut class = vec![0u8; nc];
    class.extend(std::iter::repeat_n(1u8, nv));
    let pi = SieveWitness { class };

    // induced right adjoint left inverse on Y = C + U
    let nd = d.num_objects();
    let mut s_obj = vec![None; nd];
    let mut nu = vec![None; nd];
    for x in c.objects() {
        s_obj[x] = Some(x);
        nu[x] = Some(x);
    }
    let mut y_objects: Vec<Obj> = (0..nc).collect();
    let mut u_d = Vec::new();
    for &u in &wit.u {
        let du = d_v(u);
        s_obj[du] = Some(s_of(u));
        nu[du] = Some(hat[&(s_of(u), u, s_of(u))]);
        y_objects.push(du);
        u_d.push(du);
    }
    let s_mor: Vec<Option<Mor>> = d
        .morphisms()
        .map(|m| match origin[m] {
            PushoutMorphism::C(k) => Some(k),
            PushoutMorphism::Hat { f: k, .. } => Some(k),
            PushoutMorphism::V(k) if wit.in_w(b.src(k)) => Some(f.mor(wit.r_of(k))),
            PushoutMorphism::V(_) => None,
        })
        .collect();
    let induced =
        DwyerWitness { inclusion: j.clone(), sieve: pi.clone(), w: y_objects, u: u_d, r_obj: s_obj, r_mor: s_mor, counit: nu };
    Ok(DwyerPushout { d, j, g, pi, v_objects, origin, hat, induced })
}

/// Isomorphism of categories with the default exhaustive-search guard.
pub fn iso_check(c1: &FinCategory, c2: &FinCategory) -> IsoResult {
    find_isomorphism(c1, c2, ISO_GUARD)
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    /// Witness recomputed from scratch by `is_dwyer(J)`.
    pub witness: DwyerWitness,
    /// The recomputed witness equals the induced one exactly.
    pub identical: bool,
}

/// Recompute the Dwyer witness for `J` and compare it with the induced
/// `(S, nu)`. Agreement is exact, or up to an isomorphism `phi: S y -> S' y`
/// in `C` with `nu'_y . J phi = nu_y` when several terminal objects exist.
pub fn verify_pushout_dwyer_closure(wit: &DwyerWitness, f: &Functor) -> Result<ClosureReport, PushoutError> {
    let p = dwyer_pushout(wit, f)?;
    p.induced.verify().map_err(PushoutError::InvalidWitness)?;
    let again = is_dwyer(&p.j).map_err(PushoutError::NotDwyer)?;
    let ind = &p.induced;
    let identical = again.r_obj == ind.r_obj && again.counit == ind.counit && again.r_mor == ind.r_mor;
    if !identical {
        let (c, d) = (&p.j.dom, &p.d);
        for &y in &ind.w {
            let (s, s2) = (ind.r(y), again.r(y));
            let agrees = c
                .hom(s, s2)
                .iter()
                .any(|&phi| c.is_isomorphism(phi) && d.compose(again.eps(y), p.j.mor(phi)) == Some(ind.eps(y)));
            if !agrees || again.w != ind.w {
                return Err(PushoutError::InvalidWitness(WitnessViolation::NotTerminal(y)));
            }
        }
    }
    Ok(ClosureReport { witness: again, identical })
}

/// Mediating functors `M: D -> E` with `M . G = h1` and `M . J = h2`, up to
/// `limit` of them.
pub fn mediating_functors(p: &DwyerPushout, h1: &Functor, h2: &Functor, limit: usize) -> Vec<Functor> {
    let (d, e) = (&p.d, &h2.cod);
    let mut search = FunctorSearch::new(d, e);
    for x in p.j.dom.objects() {
        search = search.fix_object(p.j.ob(x), h2.ob(x));
    }
    for m in p.j.dom.morphisms() {
        search = search.fix_morphism(p.j.mor(m), h2.mor(m));
    }
    for x in p.g.dom.objects() {
        search = search.fix_object(p.g.ob(x), h1.ob(x));
    }
    for m in p.g.dom.morphisms() {
        search = search.fix_morphism(p.g.mor(m), h1.mor(m));
    }
    search
        .all(limit)
        .into_iter()
        .map(|found| Functor::from_search(d.clone(), e.clone(), found))
        .collect()
}

#[derive(Debug)]
pub struct CrossCheck {
    pub explicit: DwyerPushout,
    pub presented: PushoutOutcome,
    /// Isomorphism between the two results when the oracle was finite.
    pub iso: Option<IsoResult>,
}

impl CrossCheck {
    /// `None` when the oracle was inconclusive.
    pub fn agrees(&self) -> Option<bool> {
        self.iso.as_ref().map(IsoResult::is_iso)
    }
}

/// Compare the explicit construction with the saturated presentation.
pub fn cross_check(wit: &DwyerWitness, f: &Functor, config: &SaturationConfig) -> Result<CrossCheck, PushoutError> {
    let explicit = dwyer_pushout(wit, f)?;
    let presented = pushout_by_presentation(&wit.inclusion, f, config).map_err(PushoutError::Present)?;
    let iso = match &presented {
        PushoutOutcome::Finite(p) => Some(iso_check(&explicit.d, &p.saturated.category)),
        PushoutOutcome::Inconclusive(_) => None,
    };
    Ok(CrossCheck { explicit, presented, iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FullSubcategory;
    use crate::fixtures;

    fn source_of_arrow() -> DwyerWitness {
        let two = Arc::new(fixtures::arrow());
        is_dwyer(&Functor::point(Arc::new(fixtures::terminal()), two, 0)).unwrap()
    }

    #[test]
    fn gluing_two_arrows_end_to_start() {
        let wit = source_of_arrow();
        let f = Functor::point(wit.a().clone(), Arc::new(fixtures::arrow()), 1);
        let p = dwyer_pushout(&wit, &f).unwrap();
        assert_eq!(p.d.num_objects(), 3);
        assert_eq!(p.d.num_morphisms(), 6);
        assert!(iso_check(&p.d, &fixtures::ordinal(2)).is_iso());
        assert_eq!(p.d.hom(0, 2).len(), 1);
        assert!(p.j.is_functor() && p.g.is_functor());
        assert!(p.d.hom(2, 0).is_empty());
        p.induced.verify().unwrap();
    }

    #[test]
    fn point_at_terminal_object_adds_a_cone_point() {
        let wit = source_of_arrow();
        let c = Arc::new(fixtures::ordinal(2));
        let f = Functor::point(wit.a().clone(), c.clone(), 2);
        let p = dwyer_pushout(&wit, &f).unwrap();
        assert!(iso_check(&p.d, &fixtures::cone(&c)).is_iso());
    }

    #[test]
    fn pushout_along_identity_is_the_codomain() {
        let cone = Arc::new(fixtures::cone(&fixtures::ordinal(2)));
        let inc = FullSubcategory::new(cone.clone(), 0..3).inclusion();
        let wit = is_dwyer(&inc).unwrap();
        let p = dwyer_pushout(&wit, &Functor::identity(wit.a().clone())).unwrap();
        assert!(iso_check(&p.d, &cone).is_iso());
        let report = verify_pushout_dwyer_closure(&wit, &Functor::identity(wit.a().clone())).unwrap();
        assert!(report.identical);
    }

    #[test]
    fn agrees_with_the_presentation() {
        let wit = source_of_arrow();
        let f = Functor::point(wit.a().clone(), Arc::new(fixtures::arrow()), 1);
        let check = cross_check(&wit, &f, &SaturationConfig::default()).unwrap();
        assert_eq!(check.agrees(), Some(true));
    }

    #[test]
    fn cocone_has_a_unique_mediator() {
        let wit = source_of_arrow();
        let two = Arc::new(fixtures::arrow());
        let f = Functor::point(wit.a().clone(), two.clone(), 1);
        let p = dwyer_pushout(&wit, &f).unwrap();
        let e = Arc::new(fixtures::ordinal(2));
        // B lands on 1 -> 2, C on 0 -> 1
        let h1 = Functor::new(two.clone(), e.clone(), vec![1, 2], vec![1, 2, 5]);
        let h2 = Functor::new(two, e.clone(), vec![0, 1], vec![0, 1, 3]);
        assert!(h1.is_functor() && h2.is_functor());
        assert_eq!(mediating_functors(&p, &h1, &h2, 2).len(), 1);
    }

    #[test]
    fn rejects_mismatched_leg() {
        let wit = source_of_arrow();
        let two = Arc::new(fixtures::arrow());
        let f = Functor::identity(two);
        assert_eq!(dwyer_pushout(&wit, &f).unwrap_err(), PushoutError::DomainMismatch);
    }
}
