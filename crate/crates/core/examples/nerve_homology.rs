//! Nerves, normalized chains and integral homology.

use dwyerkit::fixtures;
use dwyerkit::homology::{chains, homology, smith_normal_form};
use dwyerkit::sset::{nerve, print_sset};

fn main() {
    let circle = fixtures::poset_s2_sub();
    let n = nerve(&circle, 3).expect("small nerve");
    println!("zigzag circle, simplices per level {:?}", n.sset.counts());
    print!("{}", homology(&n.sset, 2).expect("degree within truncation"));

    let c = chains(&n.sset);
    println!("boundary of boundary vanishes: {}", c.check_dd().is_ok());

    let m = fixtures::monoid5();
    let h = homology(&nerve(&m, 4).expect("small nerve").sset, 3).expect("degree within truncation");
    println!("five-element monoid: {:?}", h.betti());

    print!("{}", print_sset(&nerve(&fixtures::arrow(), 1).expect("small nerve").sset));
    let snf = smith_normal_form(&[vec![2, 4], vec![6, 8]]);
    println!("invariant factors of [[2,4],[6,8]]: {:?}", snf.factors);
}
