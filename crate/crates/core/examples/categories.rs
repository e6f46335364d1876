//! Parse a category, enumerate functors into it and test isomorphism.

use std::sync::Arc;

use dwyerkit::fincat::{find_isomorphism, opposite, parse_category, print_category, Functor, FunctorSearch, ISO_GUARD};
use dwyerkit::fixtures;

const SQUARE: &str = "\
# a commuting square
objects: a, b, c, d
morphisms:
  f: a -> b
  g: a -> c
  h: b -> d
  k: c -> d
  diag: a -> d
compose:
  h . f = diag
  k . g = diag
";

fn main() {
    let square = Arc::new(parse_category(SQUARE).expect("valid category"));
    println!("{} objects, {} morphisms, valid: {}", square.num_objects(), square.num_morphisms(), square.is_valid());

    let two = Arc::new(fixtures::arrow());
    let arrows = FunctorSearch::new(&two, &square).all(usize::MAX);
    println!("functors 2 -> square: {}", arrows.len());
    let f = Functor::from_search(two, square.clone(), arrows[arrows.len() - 1].clone());
    println!("last one is faithful: {}, full: {}", f.is_faithful(), f.is_full());

    let op = opposite(&square);
    println!("square is self-dual: {}", find_isomorphism(&square, &op, ISO_GUARD).is_iso());
    println!("terminal object: {:?}", square.terminal_object().map(|x| square.obj_label(x)));
    print!("{}", print_category(&fixtures::ordinal(2)));
}
