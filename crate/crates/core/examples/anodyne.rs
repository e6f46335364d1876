//! Certify that the nerve of a Dwyer pushout is reached by inner-horn fillers.

use dwyerkit::pushout::dwyer_pushout;
use dwyerkit::random::random_span;
use dwyerkit::sset::{anodyne_search, comparison_map, AnodyneOutcome};

fn main() {
    for seed in 0..8 {
        let s = random_span(seed, 6, true);
        let p = dwyer_pushout(&s.witness, &s.f).unwrap();
        let cmp = comparison_map(&s.witness.inclusion, &s.f, &p.g, &p.j, 3).unwrap();
        let x = &cmp.nerve_d.sset;
        let start = cmp.image();
        match anodyne_search(x, &start) {
            AnodyneOutcome::Certificate(c) => {
                let ok = c.replay(x, &start).is_ok();
                println!("seed {seed}: {} attachments, replay ok {ok}", c.steps.len());
                for st in &c.steps {
                    println!("  fill horn {}:{} with {}", st.k, st.i, x.label(st.k, st.filler));
                }
            }
            AnodyneOutcome::Stuck(st) => println!("seed {seed}: stuck, {} missing", st.missing.len()),
        }
    }
}
