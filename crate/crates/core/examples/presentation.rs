//! Saturate a presentation and invert the elements of a monoid.

use std::sync::Arc;

use dwyerkit::fincat::print_category;
use dwyerkit::fixtures;
use dwyerkit::present::{localize, parse_presentation, saturate_deepening, SaturationConfig, SaturationResult};

const CYCLE: &str = "\
objects: a, b
generators:
  f: a -> b
  g: b -> a
relations:
  g . f . g . f = 1_a
  f . g = 1_b
";

fn main() {
    let p = parse_presentation(CYCLE).expect("valid presentation");
    let config = SaturationConfig::default();
    match saturate_deepening(&p, &config).expect("within the word cap") {
        SaturationResult::Finite(s) => {
            println!("finite at word length {}: {} morphisms", s.bound, s.category.num_morphisms());
            print!("{}", print_category(&s.category));
        }
        SaturationResult::Inconclusive(i) => println!("inconclusive: {}", i.reason),
    }

    let m = Arc::new(fixtures::monoid5());
    let all: Vec<_> = m.morphisms().collect();
    if let SaturationResult::Finite(s) = localize(&m, &all, &config).expect("within the word cap") {
        println!("monoid with every element inverted: {} morphism(s)", s.category.num_morphisms());
    }
}
