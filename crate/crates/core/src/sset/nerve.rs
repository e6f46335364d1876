//! Nerves of finite categories.
//!
//! A `k`-simplex for `k >= 1` is a chain `[f_1, ..., f_k]` in application
//! order; a 0-simplex is stored as `[id_x]`. `d_0` drops `f_1`, `d_k` drops
//! `f_k`, inner `d_i` composes `f_{i+1} . f_i`, and `s_i` inserts `id` at the
//! `i`-th vertex.

use std::collections::HashMap;
use std::sync::Arc;

use super::{SSetError, SSetMap, TruncatedSSet, DEFAULT_SIMPLEX_GUARD};
use crate::fincat::{FinCategory, Functor, Mor, Obj};

#[derive(Debug, Clone)]
pub struct Nerve {
    pub category: Arc<FinCategory>,
    pub sset: Arc<TruncatedSSet>,
    chains: Vec<Vec<Vec<Mor>>>,
    index: Vec<HashMap<Vec<Mor>, usize>>,
}

impl Nerve {
    pub fn chain(&self, k: usize, x: usize) -> &[Mor] {
        &self.chains[k][x]
    }

    /// Index of a chain at level `k` (for `k = 0`, pass `[id_x]`).
    pub fn simplex(&self, k: usize, chain: &[Mor]) -> Option<usize> {
        self.index[k].get(chain).copied()
    }

    pub fn vertex(&self, x: Obj) -> usize {
        x
    }
}

fn chain_label(c: &FinCategory, k: usize, chain: &[Mor]) -> String {
    if k == 0 {
        c.obj_label(c.src(chain[0])).to_string()
    } else {
        chain.iter().map(|&f| c.mor_label(f)).collect::<Vec<_>>().join(",")
    }
}

pub fn nerve(c: &FinCategory, dim: usize) -> Result<Nerve, SSetError> {
    nerve_guarded(c, dim, DEFAULT_SIMPLEX_GUARD)
}

pub(crate) fn nerve_guarded(c: &FinCategory, dim: usize, guard: usize) -> Result<Nerve, SSetError> {
    let mut chains: Vec<Vec<Vec<Mor>>> = vec![c.objects().map(|x| vec![c.identity(x)]).collect()];
    let mut total = c.num_objects();
    for k in 1..=dim {
        let prev = &chains[k - 1];
        let mut level = Vec::new();
        for ch in prev {
            let end = if k == 1 { c.src(ch[0]) } else { c.tgt(*ch.last().expect("chain")) };
            for &f in c.out_of(end) {
                let mut next = if k == 1 { Vec::with_capacity(1) } else { ch.clone() };
                next.push(f);
                level.push(next);
            }
            if total + level.len() > guard {
                return Err(SSetError::TooLarge { level: k, count: level.len(), guard });
            }
        }
        total += level.len();
        chains.push(level);
    }
    let index: Vec<HashMap<Vec<Mor>, usize>> = chains
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, ch)| (ch.clone(), i)).collect())
        .collect();
    let look = |k: usize, ch: Vec<Mor>| index[k][&ch];
    let counts: Vec<usize> = chains.iter().map(Vec::len).collect();
    let mut faces = vec![Vec::new()];
    for k in 1..=dim {
        let mut level = vec![Vec::with_capacity(counts[k]); k + 1];
        for ch in &chains[k] {
            for (i, table) in level.iter_mut().enumerate() {
                let face = if k == 1 {
                    let x = if i == 0 { c.tgt(ch[0]) } else { c.src(ch[0]) };
                    vec![c.identity(x)]
                } else if i == 0 {
                    ch[1..].to_vec()
                } else if i == k {
                    ch[..k - 1].to_vec()
                } else {
                    let mut f = ch[..i - 1].to_vec();
                    f.push(c.compose(ch[i], ch[i - 1]).expect("composable chain"));
                    f.extend_from_slice(&ch[i + 1..]);
                    f
                };
                table.push(look(k - 1, face));
            }
        }
        faces.push(level);
    }
    let mut degens = Vec::new();
    for k in 0..=dim {
        if k == dim {
            degens.push(Vec::new());
            continue;
        }
        let mut level = vec![Vec::with_capacity(counts[k]); k + 1];
        for ch in &chains[k] {
            for (i, table) in level.iter_mut().enumerate() {
                let deg = if k == 0 {
                    ch.clone()
                } else {
                    let vertex = if i == 0 { c.src(ch[0]) } else { c.tgt(ch[i - 1]) };
                    let mut d = ch[..i].to_vec();
                    d.push(c.identity(vertex));
                    d.extend_from_slice(&ch[i..]);
                    d
                };
                table.push(look(k + 1, deg));
            }
        }
        degens.push(level);
    }
    let labels = chains
        .iter()
        .enumerate()
        .map(|(k, l)| l.iter().map(|ch| chain_label(c, k, ch)).collect())
        .collect();
    let sset = TruncatedSSet::from_tables(dim, counts, faces, degens, Some(labels))?;
    Ok(Nerve { category: Arc::new(c.clone()), sset: Arc::new(sset), chains, index })
}

/// The map of nerves induced by a functor, between the given nerves.
pub fn nerve_map(f: &Functor, dom: &Nerve, cod: &Nerve) -> SSetMap {
    let levels = (0..=dom.sset.dim())
        .map(|k| {
            dom.chains[k]
                .iter()
                .map(|ch| {
                    let image: Vec<Mor> = ch.iter().map(|&m| f.mor(m)).collect();
                    cod.simplex(k, &image).expect("functor maps chains to chains")
                })
                .collect()
        })
        .collect();
    SSetMap { dom: dom.sset.clone(), cod: cod.sset.clone(), levels }
}

/// Nerves of both categories and the induced map.
pub fn nerve_of_functor(f: &Functor, dim: usize) -> Result<(Nerve, Nerve, SSetMap), SSetError> {
    let dom = nerve(&f.dom, dim)?;
    let cod = nerve(&f.cod, dim)?;
    let map = nerve_map(f, &dom, &cod);
    Ok((dom, cod, map))
}
