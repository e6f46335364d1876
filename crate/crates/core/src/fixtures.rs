//! Small named categories used throughout the tests, examples and builtins.

use std::sync::Arc;

use crate::fincat::{FinCategory, Functor, Obj};

pub use crate::fincat::{cone, join, product};

/// The terminal category with one object `*`.
pub fn terminal() -> FinCategory {
    FinCategory::builder(["*"]).build().expect("terminal")
}

/// The walking arrow `0 -> 1`.
pub fn arrow() -> FinCategory {
    let mut b = FinCategory::builder(["0", "1"]);
    b.add_morphism("f", 0, 1);
    b.build().expect("arrow")
}

/// The free-living isomorphism `f: 0 -> 1`, `g: 1 -> 0`.
pub fn free_iso() -> FinCategory {
    let mut b = FinCategory::builder(["0", "1"]);
    let f = b.add_morphism("f", 0, 1);
    let g = b.add_morphism("g", 1, 0);
    b.set_composite(g, f, 0).set_composite(f, g, 1);
    b.build().expect("free isomorphism")
}

pub fn discrete(n: usize) -> FinCategory {
    FinCategory::builder((0..n).map(|i| i.to_string())).build().expect("discrete")
}

/// The poset on `labels` generated by the given strict relations `(a, b)`
/// meaning `a < b`. Morphisms are ordered by `(source, target)`.
///
/// Panics if the relations contain a cycle.
pub fn poset(labels: &[&str], relations: &[(Obj, Obj)]) -> FinCategory {
    let n = labels.len();
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in relations {
        le[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut b = FinCategory::builder(labels.iter().copied());
    let mut idx = vec![vec![None; n]; n];
    for (i, row) in idx.iter_mut().enumerate() {
        row[i] = Some(i);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] {
                assert!(!le[j][i], "relations contain a cycle");
                idx[i][j] = Some(b.add_morphism(format!("{}{}", labels[i], labels[j]), i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let (Some(f), Some(g), Some(h)) = (idx[i][j], idx[j][k], idx[i][k]) {
                    if i != j && j != k {
                        b.set_composite(g, f, h);
                    }
                }
            }
        }
    }
    b.build().expect("poset")
}

/// The ordinal `[n] = {0 < 1 < ... < n}`.
pub fn ordinal(n: usize) -> FinCategory {
    let labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let rel: Vec<(Obj, Obj)> = (0..n).map(|i| (i, i + 1)).collect();
    poset(&refs, &rel)
}

/// The cospan `l -> m <- r`.
pub fn cospan() -> FinCategory {
    let mut b = FinCategory::builder(["l", "m", "r"]);
    b.add_morphism("a", 0, 1);
    b.add_morphism("b", 2, 1);
    b.build().expect("cospan")
}

/// One object with identity `e` and four idempotent-like elements
/// `x_ij` composing as `x_ij . x_kl = x_il`.
pub fn monoid5() -> FinCategory {
    let mut b = FinCategory::builder(["*"]);
    let names = [(1, 1), (1, 2), (2, 1), (2, 2)];
    let ids: Vec<_> = names
        .iter()
        .map(|(i, j)| b.add_morphism(format!("x{i}{j}"), 0, 0))
        .collect();
    let index = |i: usize, j: usize| ids[names.iter().position(|&p| p == (i, j)).expect("element")];
    for &(i, j) in &names {
        for &(k, l) in &names {
            b.set_composite(index(i, j), index(k, l), index(i, l));
        }
    }
    b.build().expect("monoid")
}

const S2_LABELS: [&str; 7] = ["t", "l", "r", "m", "p", "q", "s"];
const HEXAGON: [(Obj, Obj); 6] = [(0, 1), (0, 2), (4, 1), (4, 5), (6, 2), (6, 5)];

/// The six-object zigzag circle `t < l > p < q > s < r > t`.
pub fn poset_s2_sub() -> FinCategory {
    let labels = ["t", "l", "r", "p", "q", "s"];
    let rel = [(0, 1), (0, 2), (3, 1), (3, 4), (5, 2), (5, 4)];
    poset(&labels, &rel)
}

/// The zigzag circle with a cone point `m` above every element.
pub fn poset_s2_big() -> FinCategory {
    let mut rel: Vec<(Obj, Obj)> = HEXAGON.to_vec();
    for x in [0, 1, 2, 4, 5, 6] {
        rel.push((x, 3));
    }
    poset(&S2_LABELS, &rel)
}

/// The inclusion of the circle into its cone.
pub fn poset_s2_inclusion() -> Functor {
    let sub = Arc::new(poset_s2_sub());
    let big = Arc::new(poset_s2_big());
    let obj_map: Vec<Obj> = sub
        .obj_labels()
        .iter()
        .map(|l| big.find_object(l).expect("shared label"))
        .collect();
    Functor::from_object_map_thin(sub, big, obj_map).expect("poset inclusion")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for c in [
            terminal(),
            arrow(),
            free_iso(),
            discrete(3),
            ordinal(3),
            cospan(),
            monoid5(),
            poset_s2_sub(),
            poset_s2_big(),
        ] {
            assert!(c.validate().is_ok(), "{c:?}");
        }
    }

    #[test]
    fn monoid_has_five_elements() {
        let m = monoid5();
        assert_eq!(m.num_morphisms(), 5);
        let x12 = m.find_morphism("x12").unwrap();
        let x21 = m.find_morphism("x21").unwrap();
        let x11 = m.find_morphism("x11").unwrap();
        assert_eq!(m.compose(x12, x21), Some(x11));
    }

    #[test]
    fn s2_posets() {
        let inc = poset_s2_inclusion();
        assert!(inc.is_functor());
        assert!(inc.is_full() && inc.is_faithful());
        assert_eq!(inc.cod.num_objects(), 7);
        assert_eq!(inc.cod.terminal_object(), inc.cod.find_object("m"));
        assert_eq!(inc.dom.non_identities().len(), 6);
    }
}
