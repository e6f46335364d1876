//! Build a pushout along a Dwyer map and cross-check it against saturation.

use std::sync::Arc;

use dwyerkit::dwyer::is_dwyer;
use dwyerkit::fincat::{print_category, FullSubcategory, Functor};
use dwyerkit::fixtures;
use dwyerkit::present::SaturationConfig;
use dwyerkit::pushout::{cross_check, dwyer_pushout, PushoutMorphism};

fn main() {
    // [1] as the bottom face of the square [1] x [1], glued onto a free isomorphism
    let square = Arc::new(fixtures::product(&fixtures::arrow(), &fixtures::arrow()));
    let wit = is_dwyer(&FullSubcategory::new(square, [0, 2]).inclusion()).expect("Dwyer");
    let iso = Arc::new(fixtures::free_iso());
    let f = Functor::new(wit.a().clone(), iso, vec![0, 1], vec![0, 1, 2]);

    let p = dwyer_pushout(&wit, &f).expect("pushout");
    print!("{}", print_category(&p.d));
    for (m, origin) in p.origin.iter().enumerate() {
        if let PushoutMorphism::Hat { c, u, .. } = origin {
            println!("{} is a hat morphism from C-object {c} to V-object {u}", p.d.mor_label(m));
        }
    }
    println!("induced J is Dwyer: {}", is_dwyer(&p.j).is_ok());

    let check = cross_check(&wit, &f, &SaturationConfig::default()).expect("cross check");
    println!("agrees with the presentation: {:?}", check.agrees());
}
