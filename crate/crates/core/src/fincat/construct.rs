use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCategory, Functor, Mor, Obj};

/// Swap sources and targets and transpose composition.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let src = c.morphisms().map(|f| c.tgt(f)).collect();
    let tgt = c.morphisms().map(|f| c.src(f)).collect();
    FinCategory::from_raw(
        c.obj_labels.clone(),
        c.mor_labels.clone(),
        src,
        tgt,
        |g, f| c.compose(f, g),
    )
    .expect("opposite of a total table is total")
}

pub struct Coproduct {
    pub category: Arc<FinCategory>,
    pub injections: Vec<Functor>,
}

/// Disjoint union. Identities come first, then each summand's non-identity
/// morphisms in summand order.
pub fn coproduct(parts: &[Arc<FinCategory>]) -> Coproduct {
    let mut obj_offset = Vec::with_capacity(parts.len());
    let mut obj_labels = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        obj_offset.push(obj_labels.len());
        let tag = parts.len() > 1;
        for x in p.objects() {
            obj_labels.push(if tag {
                format!("{}#{i}", p.obj_label(x))
            } else {
                p.obj_label(x).to_string()
            });
        }
    }
    let n = obj_labels.len();
    let mut mor_labels: Vec<String> = obj_labels.iter().map(|l| format!("1_{l}")).collect();
    let mut src: Vec<Obj> = (0..n).collect();
    let mut tgt: Vec<Obj> = (0..n).collect();
    let mut mor_maps = Vec::with_capacity(parts.len());
    let mut back = vec![(0usize, 0usize); n];
    for x in 0..n {
        let i = obj_offset.partition_point(|&o| o <= x) - 1;
        back[x] = (i, x - obj_offset[i]);
    }
    for (i, p) in parts.iter().enumerate() {
        let mut map = vec![0; p.num_morphisms()];
        for x in p.objects() {
            map[x] = obj_offset[i] + x;
        }
        for f in p.non_identities() {
            map[f] = src.len();
            back.push((i, f));
            let tag = if parts.len() > 1 { format!("#{i}") } else { String::new() };
            mor_labels.push(format!("{}{tag}", p.mor_label(f)));
            src.push(obj_offset[i] + p.src(f));
            tgt.push(obj_offset[i] + p.tgt(f));
        }
        mor_maps.push(map);
    }
    let category = FinCategory::from_raw(obj_labels, mor_labels, src, tgt, |g, f| {
        let (i, gl) = back[g];
        let (j, fl) = back[f];
        (i == j).then(|| mor_maps[i][parts[i].compose(gl, fl).expect("composable in summand")])
    })
    .expect("coproduct table is total")
    .into_arc();
    let injections = parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            Functor::new(
                p.clone(),
                category.clone(),
                p.objects().map(|x| obj_offset[i] + x).collect(),
                mor_maps[i].clone(),
            )
        })
        .collect();
    Coproduct { category, injections }
}

/// Full subcategory on a chosen set of objects.
#[derive(Debug, Clone)]
pub struct FullSubcategory {
    pub ambient: Arc<FinCategory>,
    /// Ambient objects, ascending and deduplicated.
    pub objects: Vec<Obj>,
}

impl FullSubcategory {
    pub fn new(ambient: Arc<FinCategory>, objects: impl IntoIterator<Item = Obj>) -> Self {
        let mut objects: Vec<Obj> = objects.into_iter().collect();
        objects.sort_unstable();
        objects.dedup();
        FullSubcategory { ambient, objects }
    }

    pub fn contains(&self, x: Obj) -> bool {
        self.objects.binary_search(&x).is_ok()
    }

    /// The subcategory as a standalone category together with its inclusion.
    pub fn inclusion(&self) -> Functor {
        let amb = &self.ambient;
        let local: HashMap<Obj, Obj> =
            self.objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let obj_labels = self.objects.iter().map(|&x| amb.obj_label(x).to_string()).collect();
        let n = self.objects.len();
        let mut mor_labels: Vec<String> =
            self.objects.iter().map(|&x| amb.mor_label(x).to_string()).collect();
        let mut src: Vec<Obj> = (0..n).collect();
        let mut tgt: Vec<Obj> = (0..n).collect();
        let mut mor_map: Vec<Mor> = self.objects.clone();
        let mut back: HashMap<Mor, Mor> =
            self.objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        for f in amb.non_identities() {
            if let (Some(&s), Some(&t)) = (local.get(&amb.src(f)), local.get(&amb.tgt(f))) {
                back.insert(f, mor_map.len());
                mor_map.push(f);
                mor_labels.push(amb.mor_label(f).to_string());
                src.push(s);
                tgt.push(t);
            }
        }
        let sub = FinCategory::from_raw(obj_labels, mor_labels, src, tgt, |g, f| {
            back.get(&amb.compose(mor_map[g], mor_map[f])?).copied()
        })
        .expect("full subcategory is closed under composition")
        .into_arc();
        Functor::new(sub, amb.clone(), self.objects.clone(), mor_map)
    }
}

/// The comma category `A / w` for a full subcategory `A` of `C`.
#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub category: FinCategory,
    /// `(a, f: a -> w)` for each object, `a` an ambient object.
    pub objects: Vec<(Obj, Mor)>,
    /// Underlying ambient morphism of each comma morphism.
    pub morphisms: Vec<Mor>,
}

impl CommaCategory {
    /// Objects `(a, f)` over `w` with `a` in `sub`.
    pub fn over(sub: &FullSubcategory, w: Obj) -> Self {
        let c = &sub.ambient;
        let mut objects = Vec::new();
        for &a in &sub.objects {
            for &f in c.hom(a, w) {
                objects.push((a, f));
            }
        }
        let n = objects.len();
        let obj_labels: Vec<String> = objects
            .iter()
            .map(|&(a, f)| format!("({},{})", c.obj_label(a), c.mor_label(f)))
            .collect();
        let mut mor_labels: Vec<String> = obj_labels.iter().map(|l| format!("1_{l}")).collect();
        let mut src: Vec<Obj> = (0..n).collect();
        let mut tgt: Vec<Obj> = (0..n).collect();
        let mut morphisms: Vec<Mor> = objects.iter().map(|&(a, _)| c.identity(a)).collect();
        let mut index: HashMap<(Obj, Obj, Mor), Mor> = HashMap::new();
        for (i, &(a, _)) in objects.iter().enumerate() {
            index.insert((i, i, c.identity(a)), i);
        }
        for (i, &(a, f)) in objects.iter().enumerate() {
            for (j, &(a2, f2)) in objects.iter().enumerate() {
                for &g in c.hom(a, a2) {
                    if c.compose(f2, g) != Some(f) || (i == j && g == c.identity(a)) {
                        continue;
                    }
                    index.insert((i, j, g), morphisms.len());
                    mor_labels.push(c.mor_label(g).to_string());
                    src.push(i);
                    tgt.push(j);
                    morphisms.push(g);
                }
            }
        }
        let category = FinCategory::from_raw(obj_labels, mor_labels, src.clone(), tgt.clone(), |g, f| {
            let h = c.compose(morphisms[g], morphisms[f])?;
            index.get(&(src[f], tgt[g], h)).copied()
        })
        .expect("comma category composition");
        CommaCategory { category, objects, morphisms }
    }

    /// Exhaustive terminal-object search; least index wins.
    pub fn terminal(&self) -> Option<Obj> {
        self.category.terminal_object()
    }
}

/// `A` followed by `K` with exactly one morphism from every object of `A` to
/// every object of `K`.
pub fn join(a: &FinCategory, k: &FinCategory) -> FinCategory {
    let na = a.num_objects();
    let nk = k.num_objects();
    let n = na + nk;
    let mut obj_labels: Vec<String> = a.obj_labels().to_vec();
    obj_labels.extend(k.obj_labels().iter().cloned());
    let mut mor_labels: Vec<String> = obj_labels.iter().map(|l| format!("1_{l}")).collect();
    let mut src: Vec<Obj> = (0..n).collect();
    let mut tgt: Vec<Obj> = (0..n).collect();
    let mut from_a = vec![0; a.num_morphisms()];
    for x in a.objects() {
        from_a[x] = x;
    }
    for f in a.non_identities() {
        from_a[f] = src.len();
        mor_labels.push(a.mor_label(f).to_string());
        src.push(a.src(f));
        tgt.push(a.tgt(f));
    }
    let mut from_k = vec![0; k.num_morphisms()];
    for x in k.objects() {
        from_k[x] = na + x;
    }
    for f in k.non_identities() {
        from_k[f] = src.len();
        mor_labels.push(k.mor_label(f).to_string());
        src.push(na + k.src(f));
        tgt.push(na + k.tgt(f));
    }
    let mut bridge = vec![vec![0; nk]; na];
    for (x, row) in bridge.iter_mut().enumerate() {
        for (y, slot) in row.iter_mut().enumerate() {
            *slot = src.len();
            mor_labels.push(format!("{}>{}", a.obj_label(x), k.obj_label(y)));
            src.push(x);
            tgt.push(na + y);
        }
    }
    let m = src.len();
    let mut kind = vec![(0u8, 0usize); m];
    for f in a.morphisms() {
        kind[from_a[f]] = (0, f);
    }
    for f in k.morphisms() {
        kind[from_k[f]] = (1, f);
    }
    for (x, row) in bridge.iter().enumerate() {
        for (y, &b) in row.iter().enumerate() {
            kind[b] = (2, x * nk + y);
        }
    }
    FinCategory::from_raw(obj_labels, mor_labels, src.clone(), tgt.clone(), |g, f| {
        match (kind[g], kind[f]) {
            ((0, gg), (0, ff)) => Some(from_a[a.compose(gg, ff)?]),
            ((1, gg), (1, ff)) => Some(from_k[k.compose(gg, ff)?]),
            _ => {
                let (x, y) = (src[f], tgt[g]);
                Some(bridge[x][y - na])
            }
        }
    })
    .expect("join table is total")
}

/// Formally adjoin a new terminal object.
pub fn cone(a: &FinCategory) -> FinCategory {
    let top = FinCategory::builder(["top"]).build().expect("terminal");
    join(a, &top)
}

/// Cartesian product; objects and morphisms are pairs in lexicographic order
/// (identities first).
pub fn product(a: &FinCategory, b: &FinCategory) -> FinCategory {
    let nb = b.num_objects();
    let n = a.num_objects() * nb;
    let pair_obj = |x: Obj, y: Obj| x * nb + y;
    let mut obj_labels = Vec::with_capacity(n);
    for x in a.objects() {
        for y in b.objects() {
            obj_labels.push(format!("({},{})", a.obj_label(x), b.obj_label(y)));
        }
    }
    let mut mor_labels: Vec<String> = obj_labels.iter().map(|l| format!("1_{l}")).collect();
    let mut src: Vec<Obj> = (0..n).collect();
    let mut tgt: Vec<Obj> = (0..n).collect();
    let mut pairs: Vec<(Mor, Mor)> = Vec::with_capacity(n);
    for x in a.objects() {
        for y in b.objects() {
            pairs.push((a.identity(x), b.identity(y)));
        }
    }
    let mut index: HashMap<(Mor, Mor), Mor> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    for f in a.morphisms() {
        for g in b.morphisms() {
            if a.is_identity(f) && b.is_identity(g) {
                continue;
            }
            index.insert((f, g), pairs.len());
            pairs.push((f, g));
            mor_labels.push(format!("({},{})", a.mor_label(f), b.mor_label(g)));
            src.push(pair_obj(a.src(f), b.src(g)));
            tgt.push(pair_obj(a.tgt(f), b.tgt(g)));
        }
    }
    FinCategory::from_raw(obj_labels, mor_labels, src, tgt, |h, k| {
        let (h1, h2) = pairs[h];
        let (k1, k2) = pairs[k];
        index.get(&(a.compose(h1, k1)?, b.compose(h2, k2)?)).copied()
    })
    .expect("product table is total")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn opposite_of_arrow_reverses_it() {
        let op = opposite(&fixtures::arrow());
        assert_eq!((op.src(2), op.tgt(2)), (1, 0));
        assert!(op.is_valid());
    }

    #[test]
    fn opposite_of_terminal_is_terminal() {
        assert_eq!(opposite(&fixtures::terminal()), fixtures::terminal());
    }

    #[test]
    fn opposite_is_an_involution() {
        for c in [fixtures::cospan(), fixtures::ordinal(3), fixtures::monoid5(), fixtures::free_iso()] {
            assert_eq!(opposite(&opposite(&c)), c);
        }
    }

    #[test]
    fn opposite_of_cospan_is_a_span() {
        let op = opposite(&fixtures::cospan());
        let m = op.find_object("m").unwrap();
        assert_eq!(op.out_of(m).len(), 3);
        assert_eq!(op.terminal_object(), None);
    }

    #[test]
    fn coproduct_counts() {
        let one = fixtures::terminal().into_arc();
        let two = fixtures::arrow().into_arc();
        let d = coproduct(&[one.clone(), one]);
        assert_eq!((d.category.num_objects(), d.category.num_morphisms()), (2, 2));
        let five = coproduct(&vec![two; 5]);
        assert_eq!(five.category.num_objects(), 10);
        assert_eq!(five.category.non_identities().len(), 5);
        assert!(five.injections.iter().all(|i| i.is_functor()));
        let empty = coproduct(&[]);
        assert_eq!(empty.category.num_objects(), 0);
    }

    #[test]
    fn comma_over_arrow() {
        let two = fixtures::arrow().into_arc();
        let a = FullSubcategory::new(two, [0]);
        let over1 = CommaCategory::over(&a, 1);
        assert_eq!(over1.objects, vec![(0, 2)]);
        assert_eq!(over1.category.num_morphisms(), 1);
        let over0 = CommaCategory::over(&a, 0);
        assert_eq!(over0.objects, vec![(0, 0)]);
        assert_eq!(over0.terminal(), Some(0));
    }

    #[test]
    fn comma_over_cospan_apex_has_no_terminal() {
        let cospan = fixtures::cospan().into_arc();
        let (l, m, r) = (0, 1, 2);
        let a = FullSubcategory::new(cospan, [l, r]);
        let comma = CommaCategory::over(&a, m);
        assert_eq!(comma.category.num_objects(), 2);
        assert_eq!(comma.category.num_morphisms(), 2);
        assert_eq!(comma.terminal(), None);
    }

    #[test]
    fn cone_and_product_are_valid() {
        let c = cone(&fixtures::ordinal(2));
        assert!(c.is_valid());
        assert_eq!(c.terminal_object(), Some(3));
        let p = product(&fixtures::arrow(), &fixtures::arrow());
        assert!(p.is_valid());
        assert_eq!(p.num_objects(), 4);
        assert_eq!(p.num_morphisms(), 9);
    }

    #[test]
    fn full_subcategory_inclusion_is_fully_faithful() {
        let p = fixtures::ordinal(3).into_arc();
        let inc = FullSubcategory::new(p, [0, 2, 3]).inclusion();
        assert!(inc.is_functor());
        assert!(inc.is_full() && inc.is_faithful() && inc.is_injective_on_objects());
        assert_eq!(inc.dom.num_morphisms(), 6);
    }
}
