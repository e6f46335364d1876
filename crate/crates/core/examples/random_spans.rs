//! Seeded random Dwyer spans and closure of Dwyer maps under pushout.

use dwyerkit::pushout::{dwyer_pushout, verify_pushout_dwyer_closure};
use dwyerkit::random::random_span;

fn main() {
    for seed in 0..10 {
        let s = random_span(seed, 6, false);
        let p = dwyer_pushout(&s.witness, &s.f).unwrap();
        let closed = verify_pushout_dwyer_closure(&s.witness, &s.f).map(|r| r.identical);
        println!(
            "seed {seed}: {:?}, B has {} objects, D has {} objects and {} morphisms, closure {:?}",
            s.kind,
            s.witness.b().num_objects(),
            p.d.num_objects(),
            p.d.num_morphisms(),
            closed,
        );
    }
}
