//! Seeded generators for categories, Dwyer maps and spans.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dwyer::{is_dwyer, DwyerWitness};
use crate::fincat::{coproduct, FinCategory, FullSubcategory, Functor, FunctorSearch, Obj};
use crate::fixtures::{self, cone, join, product};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random poset on `n` objects, each pair `i < j` related with probability `p`.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, p: f64) -> FinCategory {
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                rel.push((i, j));
            }
        }
    }
    fixtures::poset(&refs, &rel)
}

fn atom<R: Rng>(rng: &mut R, max_objects: usize) -> FinCategory {
    loop {
        let n = rng.gen_range(1..=max_objects.clamp(1, 4));
        let c = match rng.gen_range(0..8) {
            0 => fixtures::terminal(),
            1 => fixtures::arrow(),
            2 => fixtures::free_iso(),
            3 => fixtures::monoid5(),
            4 => fixtures::ordinal(n - 1),
            5 => fixtures::cospan(),
            6 => fixtures::discrete(n),
            _ => random_poset(rng, n, 0.5),
        };
        if c.num_objects() <= max_objects {
            return c;
        }
    }
}

/// A random category with at most `max_objects` objects (at least one),
/// built from small fixtures and random posets by products, coproducts and
/// joins.
pub fn random_category<R: Rng>(rng: &mut R, max_objects: usize) -> FinCategory {
    let max_objects = max_objects.max(1);
    let a = atom(rng, max_objects);
    let room = max_objects - a.num_objects().min(max_objects);
    if room == 0 || rng.gen_bool(0.4) {
        return a;
    }
    let b = atom(rng, room);
    let (na, nb) = (a.num_objects(), b.num_objects());
    let small = a.num_morphisms() * b.num_morphisms() <= 40;
    match rng.gen_range(0..3) {
        0 if na * nb <= max_objects && small => product(&a, &b),
        1 => join(&a, &b),
        _ => (*coproduct(&[Arc::new(a), Arc::new(b)]).category).clone(),
    }
}

/// A random functor `a -> c`; with `faithful` it is also injective on
/// objects and faithful, when one is found.
pub fn random_functor<R: Rng>(rng: &mut R, a: &Arc<FinCategory>, c: &Arc<FinCategory>, faithful: bool) -> Option<Functor> {
    let mut search = FunctorSearch::new(a, c);
    if faithful {
        search = search.injective();
    }
    for _ in 0..8 {
        let found = search.random(rng)?;
        let f = Functor::from_search(a.clone(), c.clone(), found);
        if !faithful || f.is_faithful() {
            return Some(f);
        }
    }
    None
}

/// How a random Dwyer map was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DwyerKind {
    /// `A` into `A` with a terminal object added; `A` has a terminal object.
    Cone,
    /// `A` at `0` in `A x 2`, plus a disjoint summand.
    Cylinder,
    /// `A` into `A * K`, `A` with a terminal object.
    Join,
    /// A random full sieve that happened to be Dwyer.
    Sampled,
}

pub fn random_dwyer_map<R: Rng>(rng: &mut R, max_objects: usize) -> (DwyerKind, DwyerWitness) {
    let max_objects = max_objects.max(2);
    let kind = match rng.gen_range(0..4) {
        0 => DwyerKind::Cone,
        1 => DwyerKind::Cylinder,
        2 => DwyerKind::Join,
        _ => DwyerKind::Sampled,
    };
    let built = match kind {
        DwyerKind::Cone => {
            let a = with_terminal(rng, max_objects - 1);
            let n = a.num_objects();
            Some((cone(&a), (0..n).collect::<Vec<Obj>>()))
        }
        DwyerKind::Cylinder => {
            let a = random_category(rng, max_objects / 2);
            let n = a.num_objects();
            let cyl = product(&a, &fixtures::arrow());
            let room = max_objects - 2 * n;
            let b = if room > 0 && rng.gen_bool(0.5) {
                let e = random_category(rng, room);
                (*coproduct(&[Arc::new(cyl), Arc::new(e)]).category).clone()
            } else {
                cyl
            };
            Some((b, (0..n).map(|x| 2 * x).collect()))
        }
        DwyerKind::Join => {
            let a = with_terminal(rng, max_objects - 1);
            let n = a.num_objects();
            let k = random_category(rng, max_objects - n);
            Some((join(&a, &k), (0..n).collect()))
        }
        DwyerKind::Sampled => sample_dwyer_sieve(rng, max_objects),
    };
    let (kind, (b, objects)) = match built {
        Some(x) => (kind, x),
        None => {
            let a = random_category(rng, max_objects / 2);
            let n = a.num_objects();
            (DwyerKind::Cylinder, (product(&a, &fixtures::arrow()), (0..n).map(|x| 2 * x).collect()))
        }
    };
    let inclusion = FullSubcategory::new(Arc::new(b), objects).inclusion();
    let wit = is_dwyer(&inclusion).expect("generated inclusion is Dwyer");
    (kind, wit)
}

fn with_terminal<R: Rng>(rng: &mut R, max_objects: usize) -> FinCategory {
    let c = random_category(rng, max_objects);
    if c.terminal_object().is_some() {
        c
    } else if max_objects > c.num_objects() {
        cone(&c)
    } else {
        fixtures::ordinal(rng.gen_range(0..max_objects.min(3)))
    }
}

fn sample_dwyer_sieve<R: Rng>(rng: &mut R, max_objects: usize) -> Option<(FinCategory, Vec<Obj>)> {
    for _ in 0..20 {
        let b = random_category(rng, max_objects);
        let n = b.num_objects();
        if n < 2 {
            continue;
        }
        let mut order: Vec<Obj> = (0..n).collect();
        order.shuffle(rng);
        let seed = &order[..rng.gen_range(1..n)];
        let mut inside = vec![false; n];
        let mut stack: Vec<Obj> = seed.to_vec();
        while let Some(y) = stack.pop() {
            if std::mem::replace(&mut inside[y], true) {
                continue;
            }
            stack.extend(b.objects().filter(|&x| !b.hom(x, y).is_empty() && !inside[x]));
        }
        let objects: Vec<Obj> = (0..n).filter(|&x| inside[x]).collect();
        if objects.len() == n {
            continue;
        }
        let inclusion = FullSubcategory::new(Arc::new(b.clone()), objects.clone()).inclusion();
        if is_dwyer(&inclusion).is_ok() {
            return Some((b, objects));
        }
    }
    None
}

/// A Dwyer map `I: A -> B` with a second leg `F: A -> C`.
#[derive(Debug, Clone)]
pub struct RandomSpan {
    pub seed: u64,
    pub kind: DwyerKind,
    pub witness: DwyerWitness,
    pub f: Functor,
}

/// Deterministic span for `seed`, every category with at most `max_objects`
/// objects. With `faithful`, `F` is faithful and injective on objects.
pub fn random_span(seed: u64, max_objects: usize, faithful: bool) -> RandomSpan {
    let mut rng = rng(seed);
    loop {
        let (kind, witness) = random_dwyer_map(&mut rng, max_objects);
        let a = witness.a().clone();
        for _ in 0..10 {
            let c = Arc::new(if faithful && rng.gen_bool(0.5) {
                let room = max_objects.saturating_sub(a.num_objects());
                if room > 0 && rng.gen_bool(0.5) {
                    let e = random_category(&mut rng, room);
                    (*coproduct(&[a.clone(), Arc::new(e)]).category).clone()
                } else {
                    (*a).clone()
                }
            } else {
                random_category(&mut rng, max_objects)
            });
            if let Some(f) = random_functor(&mut rng, &a, &c, faithful) {
                return RandomSpan { seed, kind, witness, f };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_are_deterministic_and_small() {
        for seed in 0..40 {
            let s = random_span(seed, 6, false);
            let t = random_span(seed, 6, false);
            assert_eq!(s.f.mor_map, t.f.mor_map);
            assert_eq!(*s.witness.b(), *t.witness.b());
            for c in [s.witness.a(), s.witness.b(), &s.f.cod] {
                assert!(c.num_objects() <= 6 && c.is_valid());
            }
            assert!(s.f.is_functor());
        }
    }

    #[test]
    fn faithful_spans() {
        for seed in 0..20 {
            let s = random_span(seed, 6, true);
            assert!(s.f.is_faithful() && s.f.is_injective_on_objects());
        }
    }

    #[test]
    fn every_kind_occurs() {
        let kinds: Vec<DwyerKind> = (0..60).map(|s| random_span(s, 6, false).kind).collect();
        for k in [DwyerKind::Cone, DwyerKind::Cylinder, DwyerKind::Join, DwyerKind::Sampled] {
            assert!(kinds.contains(&k), "{k:?}");
        }
    }
}
