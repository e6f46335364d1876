//! Pushouts of nerves that are not nerves of pushouts.

use std::sync::Arc;

use dwyerkit::fincat::Functor;
use dwyerkit::fixtures;
use dwyerkit::homology::homology;
use dwyerkit::present::{localization_span, pushout_by_presentation, PushoutOutcome, SaturationConfig};
use dwyerkit::sset::{nerve, nerve_map, sset_pushout};

fn compare(name: &str, i: &Functor, f: &Functor) {
    let (na, nb, nc) = (nerve(&i.dom, 3).unwrap(), nerve(&i.cod, 3).unwrap(), nerve(&f.cod, 3).unwrap());
    let p = sset_pushout(&nerve_map(i, &na, &nb), &nerve_map(f, &na, &nc)).unwrap();
    let PushoutOutcome::Finite(d) = pushout_by_presentation(i, f, &SaturationConfig::default()).unwrap() else {
        panic!("pushout did not saturate");
    };
    let hs = homology(&p.sset, 2).unwrap();
    let hd = homology(&nerve(&d.saturated.category, 3).unwrap().sset, 2).unwrap();
    println!("{name}: simplicial {:?}, categorical {:?}", hs.betti(), hd.betti());
}

fn main() {
    let i = fixtures::poset_s2_inclusion();
    let f = Functor::to_terminal(i.dom.clone(), Arc::new(fixtures::terminal()));
    compare("poset", &i, &f);

    let m = Arc::new(fixtures::monoid5());
    let all: Vec<_> = m.morphisms().collect();
    let (into_iso, into_m) = localization_span(&m, &all).unwrap();
    compare("monoid", &into_m, &into_iso);
}
