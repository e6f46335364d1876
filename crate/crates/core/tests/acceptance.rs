use std::sync::Arc;
use std::time::{Duration, Instant};

use dwyerkit::dwyer::{is_dwyer, DwyerRefutation};
use dwyerkit::fincat::{cone, FinCategory, FullSubcategory, Functor, FunctorSearch};
use dwyerkit::fixtures;
use dwyerkit::homology::{chains, homology, homology_equal, smith_normal_form, HomologyGroup};
use dwyerkit::present::{localization_span, pushout_by_presentation, PushoutOutcome, SaturationConfig};
use dwyerkit::pushout::{cross_check, dwyer_pushout, mediating_functors, verify_pushout_dwyer_closure};
use dwyerkit::random::{random_category, random_functor, random_span, rng};
use dwyerkit::scat::{
    disc, dk_check, flat_instance_check, flat_instance_check_presented, levelwise_dwyer_pushout,
    merged_parallel_pair, DKStatus, DKWitness, LevelwiseFunctor,
};
use dwyerkit::sset::{anodyne_search, comparison_map, nerve, nerve_map, sset_pushout, AnodyneOutcome, Subcomplex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

const SEEDS: u64 = 200;

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

fn report(n: usize, name: &str, ok: bool, detail: &str, elapsed: Duration) {
    println!("criterion {n} [{}] {name}: {detail} ({:.2?})", if ok { "PASS" } else { "FAIL" }, elapsed);
}

fn z_groups(betti: &[usize]) -> Vec<HomologyGroup> {
    betti.iter().map(|&b| HomologyGroup::free(b)).collect()
}

/// Simplicial pushout homology and the homology of the nerve of the
/// categorical pushout, both through degree 2 at truncation 3.
fn simplicial_vs_categorical(i: &Functor, f: &Functor) -> (Vec<HomologyGroup>, Vec<HomologyGroup>, Arc<FinCategory>) {
    let (na, nb, nc) = (nerve(&i.dom, 3).unwrap(), nerve(&i.cod, 3).unwrap(), nerve(&f.cod, 3).unwrap());
    let p = sset_pushout(&nerve_map(i, &na, &nb), &nerve_map(f, &na, &nc)).unwrap();
    let simplicial = homology(&p.sset, 2).unwrap().groups;
    let d = match pushout_by_presentation(i, f, &SaturationConfig::default()).unwrap() {
        PushoutOutcome::Finite(p) => p.saturated.category,
        PushoutOutcome::Inconclusive(r) => panic!("categorical pushout inconclusive: {r:?}"),
    };
    let categorical = homology(&nerve(&d, 3).unwrap().sset, 2).unwrap().groups;
    (simplicial, categorical, d)
}

#[test]
fn criterion_1_dwyer_recognition() {
    let t = Instant::now();
    let one = arc(fixtures::terminal());
    let two = arc(fixtures::arrow());
    let mut ok = true;
    let zero = is_dwyer(&Functor::point(one.clone(), two.clone(), 0));
    ok &= zero.as_ref().is_ok_and(|w| w.verify().is_ok());
    let a = fixtures::ordinal(2);
    let tri = FullSubcategory::new(arc(cone(&a)), 0..3).inclusion();
    ok &= is_dwyer(&tri).is_ok_and(|w| w.verify().is_ok());
    let target = is_dwyer(&Functor::point(one, two, 1));
    ok &= matches!(target, Err(DwyerRefutation::NotASieve { .. }));
    let pts = arc(fixtures::discrete(2));
    let legs = Functor::new(pts, arc(fixtures::cospan()), vec![0, 2], vec![0, 2]);
    let cospan = is_dwyer(&legs);
    ok &= matches!(cospan, Err(DwyerRefutation::NoTerminalObjectAt(1)));
    let elapsed = t.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    report(1, "Dwyer recognition", ok, &format!("{:?} / {:?}", target.err(), cospan.err()), elapsed);
    assert!(ok);
}

#[test]
fn criterion_2_closure_under_pushout() {
    let t = Instant::now();
    let config = SaturationConfig::default();
    let (mut dwyer, mut finite, mut agree) = (0, 0, 0);
    let (mut largest, mut morphisms) = (0, 0);
    for seed in 0..SEEDS {
        let s = random_span(seed, 6, false);
        let d = dwyer_pushout(&s.witness, &s.f).unwrap().d;
        largest = largest.max(d.num_objects());
        morphisms += d.num_morphisms();
        if verify_pushout_dwyer_closure(&s.witness, &s.f).is_ok() {
            dwyer += 1;
        }
        let check = cross_check(&s.witness, &s.f, &config).unwrap();
        match check.agrees() {
            Some(true) => {
                finite += 1;
                agree += 1;
            }
            Some(false) => {
                finite += 1;
                println!("seed {seed}: explicit and presented pushouts differ");
            }
            None => {}
        }
    }
    let elapsed = t.elapsed();
    let ok = dwyer == SEEDS && agree == finite && elapsed < Duration::from_secs(60);
    report(2, "closure under pushout", ok, &format!(
            "{dwyer}/{SEEDS} Dwyer, {agree}/{finite} finite oracle cases isomorphic, pushouts up to {largest} objects, {} morphisms on average",
            morphisms / SEEDS as usize
        ), elapsed);
    assert!(ok);
}

#[test]
fn criterion_3_explicit_formula() {
    let t = Instant::now();
    let mut violations = 0;
    for seed in 0..SEEDS {
        let s = random_span(seed, 6, false);
        let (w, f) = (&s.witness, &s.f);
        let (b, c) = (w.b(), &f.cod);
        let p = dwyer_pushout(w, f).unwrap();
        let d = &p.d;
        let v = w.sieve.cosieve_objects();
        let dv = |x| p.v_object(x).unwrap();
        for x in c.objects() {
            for y in c.objects() {
                violations += usize::from(d.hom(x, y).len() != c.hom(x, y).len());
            }
            for &u in &v {
                let expected = if w.u.contains(&u) { c.hom(x, f.ob(w.r(u))).len() } else { 0 };
                violations += usize::from(d.hom(x, dv(u)).len() != expected);
                violations += usize::from(!d.hom(dv(u), x).is_empty());
            }
        }
        for &x in &v {
            for &y in &v {
                violations += usize::from(d.hom(dv(x), dv(y)).len() != b.hom(x, y).len());
            }
        }
        for m in w.a().morphisms() {
            violations += usize::from(p.g.mor(w.inclusion.mor(m)) != p.j.mor(f.mor(m)));
        }
        violations += usize::from(!p.g.is_functor() || !p.j.is_functor());
        violations += d.validate().violations.len();
    }
    let elapsed = t.elapsed();
    report(3, "explicit pushout formula", violations == 0, &format!("{violations} violations over {SEEDS} spans"), elapsed);
    assert_eq!(violations, 0);
}

#[test]
fn criterion_4_monoid_counterexample() {
    let t = Instant::now();
    let m = arc(fixtures::monoid5());
    let sigma: Vec<_> = m.morphisms().collect();
    let (into_iso, into_m) = localization_span(&m, &sigma).unwrap();
    let (simplicial, categorical, d) = simplicial_vs_categorical(&into_m, &into_iso);
    let ok = simplicial == z_groups(&[1, 0, 1]) && categorical == z_groups(&[1, 0, 0]) && d.num_morphisms() == 1;
    let elapsed = t.elapsed();
    report(4, "monoid counterexample", ok, &format!("simplicial {simplicial:?}, categorical {categorical:?}"), elapsed);
    assert!(ok && elapsed < Duration::from_secs(300));
}

#[test]
fn criterion_5_poset_counterexample() {
    let t = Instant::now();
    let i = fixtures::poset_s2_inclusion();
    let f = Functor::to_terminal(i.dom.clone(), arc(fixtures::terminal()));
    let (simplicial, categorical, d) = simplicial_vs_categorical(&i, &f);
    let is_arrow = dwyerkit::pushout::iso_check(&d, &fixtures::arrow()).is_iso();
    let ok = simplicial == z_groups(&[1, 0, 1]) && categorical == z_groups(&[1, 0, 0]) && is_arrow;
    let elapsed = t.elapsed();
    report(5, "poset counterexample", ok, &format!("simplicial {simplicial:?}, categorical {categorical:?}"), elapsed);
    assert!(ok && elapsed < Duration::from_secs(30));
}

#[test]
fn criterion_6_nerve_comparison() {
    let t = Instant::now();
    let mut good = 0;
    for seed in 0..50 {
        let s = random_span(seed, 6, false);
        let p = dwyer_pushout(&s.witness, &s.f).unwrap();
        let cmp = comparison_map(&s.witness.inclusion, &s.f, &p.g, &p.j, 3).unwrap();
        let same = homology_equal(&cmp.pushout.sset, &cmp.nerve_d.sset, 2).unwrap().equal();
        if same && cmp.bijective_on_vertices() {
            good += 1;
        } else {
            println!("seed {seed}: homology equal {same}, vertices {}", cmp.bijective_on_vertices());
        }
    }
    let elapsed = t.elapsed();
    report(6, "nerve comparison", good == 50, &format!("{good}/50"), elapsed);
    assert_eq!(good, 50);
}

#[test]
fn criterion_7_anodyne_certificates() {
    let t = Instant::now();
    let mut good = 0;
    for seed in 0..25 {
        let s = random_span(seed, 6, true);
        let p = dwyer_pushout(&s.witness, &s.f).unwrap();
        let cmp = comparison_map(&s.witness.inclusion, &s.f, &p.g, &p.j, 3).unwrap();
        let x = &cmp.nerve_d.sset;
        let start = cmp.image();
        match anodyne_search(x, &start) {
            AnodyneOutcome::Certificate(cert) if cmp.is_injective() => {
                if cert.replay(x, &start).is_ok() && cert.result.covers_upto(2) {
                    good += 1;
                }
            }
            AnodyneOutcome::Certificate(_) => println!("seed {seed}: comparison not injective"),
            AnodyneOutcome::Stuck(st) => println!("seed {seed}: stuck with {} missing", st.missing.len()),
        }
    }
    let n2 = nerve(&fixtures::ordinal(2), 3).unwrap();
    let outer = Subcomplex::generated(&n2.sset, &[(1, 3), (1, 4)]);
    let control = matches!(anodyne_search(&n2.sset, &outer), AnodyneOutcome::Stuck(_));
    let elapsed = t.elapsed();
    report(7, "anodyne certificates", good == 25 && control, &format!("{good}/25, outer-horn control stuck: {control}"), elapsed);
    assert!(good == 25 && control);
}

#[test]
fn criterion_8_levelwise_machinery() {
    let t = Instant::now();
    let mut disc_ok = 0;
    for seed in 0..SEEDS {
        let s = random_span(seed, 6, false);
        let p = dwyer_pushout(&s.witness, &s.f).unwrap();
        let lp = levelwise_dwyer_pushout(&s.witness, &LevelwiseFunctor::disc(&s.f, 2)).unwrap();
        let expected = disc(&p.d, 2);
        if *lp.scat == expected {
            disc_ok += 1;
        }
    }

    let mut formula_ok = true;
    let mut formula_checks = 0;
    let s = Arc::new(merged_parallel_pair());
    for (b, objects) in [(fixtures::arrow(), vec![0]), (cone(&fixtures::ordinal(1)), vec![0, 1])] {
        let wit = is_dwyer(&FullSubcategory::new(arc(b), objects).inclusion()).unwrap();
        let a = wit.a().clone();
        for (obj, mor) in FunctorSearch::new(&a, s.level(0)).all(4) {
            let mut levels = vec![mor];
            for k in 1..=2 {
                let below: &Vec<_> = &levels[k - 1];
                let up = below.iter().map(|&m| s.degen(k - 1, 0, m)).collect();
                levels.push(up);
            }
            let f = LevelwiseFunctor::new(Arc::new(disc(&a, 2)), s.clone(), obj, levels);
            formula_checks += 1;
            let lp = levelwise_dwyer_pushout(&wit, &f).unwrap();
            for k in 0..=2 {
                let d = lp.scat.level(k);
                let e = &lp.explicit[k];
                for x in s.objects() {
                    for &u in &wit.u {
                        let du = e.v_object(u).unwrap();
                        formula_ok &= d.hom(x, du).len() == s.level(k).hom(x, f.ob(wit.r(u))).len();
                        formula_ok &= d.hom(du, x).is_empty();
                    }
                }
                for &v in &e.v_objects {
                    for &v2 in &e.v_objects {
                        let hom = lp.scat.hom_sset(e.v_object(v).unwrap(), e.v_object(v2).unwrap());
                        formula_ok &= hom.counts().iter().all(|&n| n == wit.b().hom(v, v2).len());
                    }
                }
            }
        }
    }

    let one = arc(fixtures::terminal());
    let iso = arc(fixtures::free_iso());
    let m = LevelwiseFunctor::disc(&Functor::to_terminal(iso.clone(), one.clone()), 2);
    let wit = is_dwyer(&Functor::point(one.clone(), arc(fixtures::arrow()), 0)).unwrap();
    let f1 = LevelwiseFunctor::disc(&Functor::point(one.clone(), iso.clone(), 0), 2);
    let mut flat_ok = flat_instance_check(&wit, &f1, &m, 1).unwrap().status() == DKStatus::Consistent;
    let tri = is_dwyer(&FullSubcategory::new(arc(cone(&fixtures::ordinal(2))), 0..3).inclusion()).unwrap();
    let f3 = Functor::new(tri.a().clone(), iso.clone(), vec![0, 0, 0], vec![0, 0, 0, 0, 0, 0]);
    flat_ok &= flat_instance_check(&tri, &LevelwiseFunctor::disc(&f3, 2), &m, 1).unwrap().status() == DKStatus::Consistent;
    let pts = arc(fixtures::discrete(2));
    let legs = Functor::new(pts.clone(), arc(fixtures::cospan()), vec![0, 2], vec![0, 2]);
    let f2 = LevelwiseFunctor::disc(&Functor::new(pts, iso, vec![0, 1], vec![0, 1]), 2);
    let cospan_ok = flat_instance_check_presented(&legs, &f2, &m, 1, &SaturationConfig::default()).unwrap().status()
        == DKStatus::Consistent;

    let control = dk_check(&LevelwiseFunctor::disc(&Functor::to_terminal(arc(fixtures::arrow()), one), 2), 1).unwrap();
    let refuted = control.status == DKStatus::Refuted(DKWitness::HomPair { x: 1, y: 0 });

    let ok = disc_ok == SEEDS && formula_ok && formula_checks >= 2 && flat_ok && cospan_ok && refuted;
    let elapsed = t.elapsed();
    report(
        8,
        "levelwise machinery",
        ok,
        &format!("disc {disc_ok}/{SEEDS}, hom formulas {formula_ok} on {formula_checks} functors, flat {flat_ok}, cospan {cospan_ok}, control refuted {refuted}"),
        elapsed,
    );
    assert!(ok);
}

/// Invariant factors from gcds of minors: `d_k = g_k / g_{k-1}`.
fn minors_oracle(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    fn det(m: &[Vec<i64>], rs: &[usize], cs: &[usize]) -> BigInt {
        if rs.is_empty() {
            return BigInt::from(1);
        }
        let mut total = BigInt::zero();
        for (j, &c) in cs.iter().enumerate() {
            let rest: Vec<usize> = cs.iter().copied().filter(|&x| x != c).collect();
            let term = BigInt::from(m[rs[0]][c]) * det(m, &rs[1..], &rest);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
            s.push(last);
            s
        })).collect()
    }
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                g = g.gcd(&det(m, &rs, &cs));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}

#[test]
fn criterion_9_infrastructure() {
    let t = Instant::now();
    let mut dd_ok = true;
    for seed in 0..50 {
        let s = random_span(seed, 6, false);
        let p = dwyer_pushout(&s.witness, &s.f).unwrap();
        let cmp = comparison_map(&s.witness.inclusion, &s.f, &p.g, &p.j, 3).unwrap();
        for x in [&cmp.pushout.sset, &cmp.nerve_d.sset, &cmp.nerve_b.sset, &cmp.nerve_c.sset] {
            dd_ok &= chains(x).check_dd().is_ok();
        }
    }

    let mut r = rng(9);
    let mut snf_ok = 0;
    for _ in 0..500 {
        let (rows, cols) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-6..=6)).collect()).collect();
        if smith_normal_form(&m).factors == minors_oracle(&m) {
            snf_ok += 1;
        }
    }

    let (mut cocones, mut unique) = (0, 0);
    for seed in 0..SEEDS {
        let s = random_span(seed, 6, false);
        let p = dwyer_pushout(&s.witness, &s.f).unwrap();
        if p.d.num_objects() > 8 {
            continue;
        }
        let mut r = rng(10_000 + seed);
        for _ in 0..3 {
            let e = arc(random_category(&mut r, 4));
            let Some(h2) = random_functor(&mut r, &s.f.cod, &e, false) else { continue };
            let i = &s.witness.inclusion;
            let mut search = FunctorSearch::new(i.cod.as_ref(), e.as_ref());
            for x in i.dom.objects() {
                search = search.fix_object(i.ob(x), h2.ob(s.f.ob(x)));
            }
            for m in i.dom.morphisms() {
                search = search.fix_morphism(i.mor(m), h2.mor(s.f.mor(m)));
            }
            let Some(found) = search.random(&mut r) else { continue };
            let h1 = Functor::from_search(i.cod.clone(), e.clone(), found);
            cocones += 1;
            if mediating_functors(&p, &h1, &h2, 2).len() == 1 {
                unique += 1;
            }
        }
    }
    let ok = dd_ok && snf_ok == 500 && unique == cocones && cocones > 0;
    let elapsed = t.elapsed();
    report(
        9,
        "infrastructure",
        ok,
        &format!("dd=0 {dd_ok}, SNF {snf_ok}/500, unique mediators {unique}/{cocones}"),
        elapsed,
    );
    assert!(ok);
}
