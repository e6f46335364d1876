//! Levelwise pushouts of simplicial sets and the comparison with the nerve of
//! a categorical pushout.

use std::sync::Arc;

use super::nerve::{nerve, nerve_map, Nerve};
use super::{SSetError, SSetMap, TruncatedSSet};
use crate::fincat::Functor;

#[derive(Debug, Clone)]
pub struct SSetPushout {
    pub sset: Arc<TruncatedSSet>,
    pub from_y: SSetMap,
    pub from_z: SSetMap,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Pushout of `Y <- X -> Z`, levelwise as sets. Elements of `Y` come before
/// elements of `Z`; each class is numbered by its least element.
pub fn sset_pushout(f: &SSetMap, g: &SSetMap) -> Result<SSetPushout, SSetError> {
    if f.dom != g.dom {
        return Err(SSetError::Mismatch);
    }
    let (y, z) = (&f.cod, &g.cod);
    let dim = f.dom.dim();
    if y.dim() != dim || z.dim() != dim {
        return Err(SSetError::Mismatch);
    }
    let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(dim + 1);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        let ny = y.count(k);
        let n = ny + z.count(k);
        let mut parent: Vec<usize> = (0..n).collect();
        for x in 0..f.dom.count(k) {
            let (a, b) = (find(&mut parent, f.apply(k, x)), find(&mut parent, ny + g.apply(k, x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut index = vec![usize::MAX; n];
        let mut level_reps = Vec::new();
        let mut classes = vec![0; n];
        for e in 0..n {
            let r = find(&mut parent, e);
            if index[r] == usize::MAX {
                index[r] = level_reps.len();
                level_reps.push(e);
            }
            classes[e] = index[r];
        }
        class_of.push(classes);
        reps.push(level_reps);
    }
    let counts: Vec<usize> = reps.iter().map(Vec::len).collect();
    let ny: Vec<usize> = (0..=dim).map(|k| y.count(k)).collect();
    // act on a representative inside its own summand
    let face = |k: usize, i: usize, e: usize| {
        if e < ny[k] {
            y.face(k, i, e)
        } else {
            ny[k - 1] + z.face(k, i, e - ny[k])
        }
    };
    let degen = |k: usize, i: usize, e: usize| {
        if e < ny[k] {
            y.degen(k, i, e)
        } else {
            ny[k + 1] + z.degen(k, i, e - ny[k])
        }
    };
    let mut faces = vec![Vec::new()];
    for k in 1..=dim {
        faces.push(
            (0..=k)
                .map(|i| reps[k].iter().map(|&e| class_of[k - 1][face(k, i, e)]).collect())
                .collect(),
        );
    }
    let mut degens = Vec::new();
    for k in 0..=dim {
        if k == dim {
            degens.push(Vec::new());
        } else {
            degens.push(
                (0..=k)
                    .map(|i| reps[k].iter().map(|&e| class_of[k + 1][degen(k, i, e)]).collect())
                    .collect(),
            );
        }
    }
    let labels = (0..=dim)
        .map(|k| {
            reps[k]
                .iter()
                .map(|&e| {
                    if e < ny[k] {
                        y.label(k, e).to_string()
                    } else {
                        z.label(k, e - ny[k]).to_string()
                    }
                })
                .collect()
        })
        .collect();
    let sset = Arc::new(TruncatedSSet::from_tables(dim, counts, faces, degens, Some(labels))?);
    let from_y = SSetMap {
        dom: y.clone(),
        cod: sset.clone(),
        levels: (0..=dim).map(|k| class_of[k][..ny[k]].to_vec()).collect(),
    };
    let from_z = SSetMap {
        dom: z.clone(),
        cod: sset.clone(),
        levels: (0..=dim).map(|k| class_of[k][ny[k]..].to_vec()).collect(),
    };
    Ok(SSetPushout { sset, from_y, from_z })
}

/// `N B +_{N A} N C -> N D` for a span `I: A -> B`, `F: A -> C` and a
/// commuting square `G: B -> D`, `J: C -> D`.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub nerve_b: Nerve,
    pub nerve_c: Nerve,
    pub nerve_d: Nerve,
    pub pushout: SSetPushout,
    pub map: SSetMap,
    pub injective: Vec<bool>,
    pub surjective: Vec<bool>,
}

impl Comparison {
    pub fn bijective_on_vertices(&self) -> bool {
        self.injective[0] && self.surjective[0]
    }

    pub fn is_injective(&self) -> bool {
        self.injective.iter().all(|&b| b)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.surjective.iter().all(|&b| b)
    }

    /// The image of the comparison map as a subcomplex of `N D`.
    pub fn image(&self) -> super::Subcomplex {
        let d = &self.nerve_d.sset;
        let mut members: Vec<Vec<bool>> = (0..=d.dim()).map(|k| vec![false; d.count(k)]).collect();
        for (k, level) in self.map.levels.iter().enumerate() {
            for &y in level {
                members[k][y] = true;
            }
        }
        super::Subcomplex { members }
    }
}

pub fn comparison_map(i: &Functor, f: &Functor, g: &Functor, j: &Functor, dim: usize) -> Result<Comparison, SSetError> {
    if i.dom != f.dom || g.dom != i.cod || j.dom != f.cod || g.cod != j.cod {
        return Err(SSetError::Mismatch);
    }
    let na = nerve(&i.dom, dim)?;
    let nb = nerve(&i.cod, dim)?;
    let nc = nerve(&f.cod, dim)?;
    let nd = nerve(&g.cod, dim)?;
    let ni = nerve_map(i, &na, &nb);
    let nf = nerve_map(f, &na, &nc);
    let ng = nerve_map(g, &nb, &nd);
    let nj = nerve_map(j, &nc, &nd);
    let pushout = sset_pushout(&ni, &nf)?;
    let p = &pushout.sset;
    let mut levels: Vec<Vec<usize>> = (0..=dim).map(|k| vec![usize::MAX; p.count(k)]).collect();
    for k in 0..=dim {
        for (e, &cls) in pushout.from_y.levels[k].iter().enumerate() {
            levels[k][cls] = ng.apply(k, e);
        }
        for (e, &cls) in pushout.from_z.levels[k].iter().enumerate() {
            let image = nj.apply(k, e);
            if levels[k][cls] != usize::MAX && levels[k][cls] != image {
                return Err(SSetError::Table("square does not commute".into()));
            }
            levels[k][cls] = image;
        }
    }
    let map = SSetMap { dom: p.clone(), cod: nd.sset.clone(), levels };
    let injective = (0..=dim).map(|k| map.is_injective_at(k)).collect();
    let surjective = (0..=dim).map(|k| map.is_surjective_at(k)).collect();
    Ok(Comparison { nerve_b: nb, nerve_c: nc, nerve_d: nd, pushout, map, injective, surjective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dwyer::is_dwyer;
    use crate::fixtures;
    use crate::pushout::dwyer_pushout;

    #[test]
    fn point_pushout_is_a_point() {
        let pt = nerve(&fixtures::terminal(), 2).unwrap();
        let id = SSetMap::identity(pt.sset.clone());
        let p = sset_pushout(&id, &id).unwrap();
        assert_eq!(p.sset.counts(), &[1, 1, 1]);
    }

    #[test]
    fn gluing_two_arrows_misses_the_long_edge() {
        let one = Arc::new(fixtures::terminal());
        let two = Arc::new(fixtures::arrow());
        let i = Functor::point(one.clone(), two.clone(), 0);
        let f = Functor::point(one, two, 1);
        let wit = is_dwyer(&i).unwrap();
        let p = dwyer_pushout(&wit, &f).unwrap();
        let cmp = comparison_map(&i, &f, &p.g, &p.j, 3).unwrap();
        assert_eq!(cmp.pushout.sset.count(1), 5);
        assert_eq!(cmp.nerve_d.sset.count(1), 6);
        assert!(cmp.is_injective());
        assert!(cmp.bijective_on_vertices());
        assert!(!cmp.surjective[1] && !cmp.surjective[2]);
        cmp.pushout.sset.check_identities().unwrap();
        assert!(cmp.map.is_simplicial());
    }

    #[test]
    fn identity_span_gives_an_isomorphism() {
        let c = Arc::new(fixtures::cospan());
        let id = Functor::identity(c.clone());
        let cmp = comparison_map(&id, &id, &id, &id, 2).unwrap();
        assert!(cmp.is_isomorphism());
    }
}
