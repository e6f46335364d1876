//! Levelwise pushouts of simplicial categories and a flatness instance.

use std::sync::Arc;

use dwyerkit::dwyer::is_dwyer;
use dwyerkit::fincat::{Functor, FunctorSearch};
use dwyerkit::fixtures;
use dwyerkit::scat::{disc, dk_check, flat_instance_check, levelwise_dwyer_pushout, merged_parallel_pair, pi0, LevelwiseFunctor};

fn main() {
    let s = Arc::new(merged_parallel_pair());
    let p = pi0(&s).unwrap();
    println!("pi0 of the merged pair: {} morphisms", p.category.num_morphisms());

    let one = Arc::new(fixtures::terminal());
    let wit = is_dwyer(&Functor::point(one.clone(), Arc::new(fixtures::arrow()), 0)).unwrap();
    let (obj, mor) = FunctorSearch::new(wit.a(), s.level(0)).first().unwrap();
    let levels = (0..=2).map(|k| mor.iter().map(|&m| (0..k).fold(m, |m, j| s.degen(j, 0, m))).collect()).collect();
    let f = LevelwiseFunctor::new(Arc::new(disc(wit.a(), 2)), s.clone(), obj, levels);
    let lp = levelwise_dwyer_pushout(&wit, &f).unwrap();
    println!("levelwise pushout objects: {}", lp.scat.num_objects());
    for x in lp.scat.objects() {
        for y in lp.scat.objects() {
            println!("  hom({x}, {y}) counts {:?}", lp.scat.hom_sset(x, y).counts());
        }
    }

    let iso = Arc::new(fixtures::free_iso());
    let m = LevelwiseFunctor::disc(&Functor::to_terminal(iso.clone(), one.clone()), 2);
    let f1 = LevelwiseFunctor::disc(&Functor::point(one, iso, 0), 2);
    let check = flat_instance_check(&wit, &f1, &m, 1).unwrap();
    print!("premise\n{}induced\n{}", check.premise, check.conclusion);

    let control = dk_check(&LevelwiseFunctor::disc(&Functor::to_terminal(Arc::new(fixtures::arrow()), Arc::new(fixtures::terminal())), 2), 1);
    println!("collapsing the arrow: {:?}", control.unwrap().status);
}
