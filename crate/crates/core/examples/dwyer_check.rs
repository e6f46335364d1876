//! Recognise Dwyer maps and read off the retraction and counit.

use std::sync::Arc;

use dwyerkit::dwyer::is_dwyer;
use dwyerkit::fincat::{cone, FullSubcategory, Functor};
use dwyerkit::fixtures;

fn main() {
    let one = Arc::new(fixtures::terminal());
    let two = Arc::new(fixtures::arrow());
    for x in [0, 1] {
        match is_dwyer(&Functor::point(one.clone(), two.clone(), x)) {
            Ok(w) => println!("point {x}: Dwyer, W = {:?}, U = {:?}", w.w, w.u),
            Err(e) => println!("point {x}: {e}"),
        }
    }

    let b = Arc::new(cone(&fixtures::ordinal(2)));
    let w = is_dwyer(&FullSubcategory::new(b.clone(), 0..3).inclusion()).expect("base of a cone");
    w.verify().expect("adjunction equations");
    for &y in &w.w {
        println!("R({}) = {}, counit {}", b.obj_label(y), w.a().obj_label(w.r(y)), b.mor_label(w.eps(y)));
    }

    let legs = Functor::new(Arc::new(fixtures::discrete(2)), Arc::new(fixtures::cospan()), vec![0, 2], vec![0, 2]);
    println!("cospan legs: {}", is_dwyer(&legs).unwrap_err());
}
