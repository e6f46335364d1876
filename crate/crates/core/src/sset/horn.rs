//! Inner horns: filler checks and greedy inner-anodyne attachment.

use std::collections::HashMap;

use super::TruncatedSSet;

/// A set of simplices per level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcomplex {
    pub members: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(x: &TruncatedSSet) -> Self {
        Subcomplex { members: x.counts().iter().map(|&n| vec![false; n]).collect() }
    }

    pub fn full(x: &TruncatedSSet) -> Self {
        Subcomplex { members: x.counts().iter().map(|&n| vec![true; n]).collect() }
    }

    /// Smallest subcomplex containing the listed `(level, simplex)` pairs.
    pub fn generated(x: &TruncatedSSet, gens: &[(usize, usize)]) -> Self {
        let mut s = Subcomplex::empty(x);
        for &(k, y) in gens {
            s.close(x, k, y);
        }
        s
    }

    pub fn contains(&self, k: usize, y: usize) -> bool {
        self.members[k][y]
    }

    pub fn count(&self, k: usize) -> usize {
        self.members[k].iter().filter(|&&b| b).count()
    }

    /// Add a simplex with all its faces and degeneracies.
    pub fn close(&mut self, x: &TruncatedSSet, k: usize, y: usize) {
        let mut stack = vec![(k, y)];
        while let Some((k, y)) = stack.pop() {
            if std::mem::replace(&mut self.members[k][y], true) {
                continue;
            }
            if k > 0 {
                stack.extend((0..=k).map(|i| (k - 1, x.face(k, i, y))));
            }
            if k < x.dim() {
                stack.extend((0..=k).map(|i| (k + 1, x.degen(k, i, y))));
            }
        }
    }

    pub fn is_subcomplex_of(&self, x: &TruncatedSSet) -> bool {
        if self.members.len() != x.dim() + 1 {
            return false;
        }
        (0..=x.dim()).all(|k| {
            self.members[k].len() == x.count(k)
                && (0..x.count(k)).filter(|&y| self.members[k][y]).all(|y| {
                    (k == 0 || (0..=k).all(|i| self.members[k - 1][x.face(k, i, y)]))
                        && (k == x.dim() || (0..=k).all(|i| self.members[k + 1][x.degen(k, i, y)]))
                })
        })
    }

    /// Every simplex of dimension `<= d` is present.
    pub fn covers_upto(&self, d: usize) -> bool {
        self.members.iter().take(d + 1).all(|l| l.iter().all(|&b| b))
    }
}

/// A horn `Lambda^k_i`: the faces `y_j` for `j != i`, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Horn {
    pub k: usize,
    pub i: usize,
    pub faces: Vec<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct QuasiReport {
    pub dim: usize,
    /// `(k, i, horns, horns without filler, horns with several fillers)`.
    pub per_horn: Vec<(usize, usize, usize, usize, usize)>,
    /// First unfilled horns found, in search order.
    pub unfilled: Vec<Horn>,
}

impl QuasiReport {
    pub fn fills_all(&self) -> bool {
        self.per_horn.iter().all(|r| r.3 == 0)
    }

    pub fn fills_uniquely(&self) -> bool {
        self.per_horn.iter().all(|r| r.3 == 0 && r.4 == 0)
    }
}

const UNFILLED_SAMPLE: usize = 32;

/// Enumerate all inner horns `Lambda^k_i` with `2 <= k <= d` and look up
/// fillers.
pub fn is_quasicategory_upto(x: &TruncatedSSet, d: usize) -> QuasiReport {
    let d = d.min(x.dim());
    let mut report = QuasiReport { dim: d, ..Default::default() };
    for k in 2..=d {
        // simplices of level k-1 indexed by their 0-th face
        let mut by_face0: Vec<Vec<usize>> = vec![Vec::new(); x.count(k - 2)];
        for y in 0..x.count(k - 1) {
            by_face0[x.face(k - 1, 0, y)].push(y);
        }
        for i in 1..k {
            let mut fillers: HashMap<Vec<usize>, usize> = HashMap::new();
            for s in 0..x.count(k) {
                let mut t = x.face_tuple(k, s);
                t.remove(i);
                *fillers.entry(t).or_default() += 1;
            }
            let mut horns = 0;
            let mut missing = 0;
            let mut multiple = 0;
            let slots: Vec<usize> = (0..=k).filter(|&j| j != i).collect();
            let mut chosen: Vec<usize> = Vec::with_capacity(k);
            enumerate_horns(x, k, &slots, &by_face0, &mut chosen, &mut |faces| {
                horns += 1;
                match fillers.get(faces).copied().unwrap_or(0) {
                    0 => {
                        missing += 1;
                        if report.unfilled.len() < UNFILLED_SAMPLE {
                            report.unfilled.push(Horn { k, i, faces: faces.to_vec() });
                        }
                    }
                    1 => {}
                    _ => multiple += 1,
                }
            });
            report.per_horn.push((k, i, horns, missing, multiple));
        }
    }
    report
}

fn enumerate_horns(
    x: &TruncatedSSet,
    k: usize,
    slots: &[usize],
    by_face0: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let pos = chosen.len();
    if pos == slots.len() {
        visit(chosen);
        return;
    }
    let b = slots[pos];
    let compatible = |y: usize, chosen: &[usize]| {
        chosen
            .iter()
            .zip(slots)
            .all(|(&ya, &a)| x.face(k - 1, a, y) == x.face(k - 1, b - 1, ya))
    };
    if pos == 0 {
        for y in 0..x.count(k - 1) {
            chosen.push(y);
            enumerate_horns(x, k, slots, by_face0, chosen, visit);
            chosen.pop();
        }
    } else {
        // slot 0 is always filled first for inner horns
        let want = x.face(k - 1, b - 1, chosen[0]);
        for &y in &by_face0[want] {
            if compatible(y, chosen) {
                chosen.push(y);
                enumerate_horns(x, k, slots, by_face0, chosen, visit);
                chosen.pop();
            }
        }
    }
}

/// One elementary attachment along an inner horn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachStep {
    pub k: usize,
    pub i: usize,
    /// `d_j filler` for `j != i`, all already present.
    pub horn: Vec<usize>,
    pub filler: usize,
    /// `d_i filler`, new together with the filler.
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnodyneCertificate {
    pub dim: usize,
    pub steps: Vec<AttachStep>,
    pub result: Subcomplex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    NotASubcomplex,
    NotInner(usize),
    BadFiller(usize),
    HornMissing(usize),
    AlreadyPresent(usize),
    ResultDiffers,
    Incomplete,
}

impl AnodyneCertificate {
    /// Re-run the recorded attachments from `start` and check every step.
    pub fn replay(&self, x: &TruncatedSSet, start: &Subcomplex) -> Result<(), ReplayError> {
        if !start.is_subcomplex_of(x) {
            return Err(ReplayError::NotASubcomplex);
        }
        let mut s = start.clone();
        for (n, st) in self.steps.iter().enumerate() {
            if !(0 < st.i && st.i < st.k && st.k <= x.dim()) {
                return Err(ReplayError::NotInner(n));
            }
            if st.filler >= x.count(st.k) || x.is_degenerate(st.k, st.filler) {
                return Err(ReplayError::BadFiller(n));
            }
            let mut faces = x.face_tuple(st.k, st.filler);
            if faces[st.i] != st.face || x.is_degenerate(st.k - 1, st.face) {
                return Err(ReplayError::BadFiller(n));
            }
            faces.remove(st.i);
            if faces != st.horn || !faces.iter().all(|&y| s.contains(st.k - 1, y)) {
                return Err(ReplayError::HornMissing(n));
            }
            if s.contains(st.k, st.filler) || s.contains(st.k - 1, st.face) {
                return Err(ReplayError::AlreadyPresent(n));
            }
            s.close(x, st.k, st.filler);
        }
        if s != self.result {
            return Err(ReplayError::ResultDiffers);
        }
        if !s.covers_upto(self.dim.saturating_sub(1)) {
            return Err(ReplayError::Incomplete);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stuck {
    pub steps: Vec<AttachStep>,
    pub reached: Subcomplex,
    /// Nondegenerate simplices of dimension `< d` still missing.
    pub missing: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnodyneOutcome {
    Certificate(AnodyneCertificate),
    Stuck(Stuck),
}

fn next_attachment(x: &TruncatedSSet, s: &Subcomplex) -> Option<AttachStep> {
    for k in 2..=x.dim() {
        for i in 1..k {
            for sigma in x.nondegenerate(k) {
                if s.contains(k, sigma) {
                    continue;
                }
                let face = x.face(k, i, sigma);
                if s.contains(k - 1, face) || x.is_degenerate(k - 1, face) {
                    continue;
                }
                let mut horn = x.face_tuple(k, sigma);
                horn.remove(i);
                if horn.iter().all(|&y| s.contains(k - 1, y)) {
                    return Some(AttachStep { k, i, horn, filler: sigma, face });
                }
            }
        }
    }
    None
}

/// Attach inner-horn fillers greedily, in lexicographic `(k, i, simplex)`
/// order, until every simplex of dimension `< x.dim()` is present.
pub fn anodyne_search(x: &TruncatedSSet, start: &Subcomplex) -> AnodyneOutcome {
    let target = x.dim().saturating_sub(1);
    let mut s = start.clone();
    let mut steps = Vec::new();
    loop {
        if s.covers_upto(target) {
            return AnodyneOutcome::Certificate(AnodyneCertificate { dim: x.dim(), steps, result: s });
        }
        match next_attachment(x, &s) {
            Some(step) => {
                s.close(x, step.k, step.filler);
                steps.push(step);
            }
            None => {
                let missing = (0..=target)
                    .flat_map(|k| x.nondegenerate(k).filter(|&y| !s.contains(k, y)).map(move |y| (k, y)).collect::<Vec<_>>())
                    .collect();
                return AnodyneOutcome::Stuck(Stuck { steps, reached: s, missing });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::nerve::nerve;
    use super::*;
    use crate::fixtures;

    #[test]
    fn nerves_fill_inner_horns_uniquely() {
        for c in [fixtures::monoid5(), fixtures::poset_s2_big(), fixtures::free_iso()] {
            let n = nerve(&c, 3).unwrap();
            assert!(is_quasicategory_upto(&n.sset, 3).fills_uniquely());
        }
    }

    #[test]
    fn standard_simplex_is_quasi() {
        let n = nerve(&fixtures::ordinal(3), 3).unwrap();
        let r = is_quasicategory_upto(&n.sset, 3);
        assert!(r.fills_uniquely());
        assert_eq!(r.per_horn.len(), 3);
    }

    #[test]
    fn full_subcomplex_needs_no_steps() {
        let n = nerve(&fixtures::ordinal(2), 3).unwrap();
        let AnodyneOutcome::Certificate(c) = anodyne_search(&n.sset, &Subcomplex::full(&n.sset)) else {
            panic!("stuck")
        };
        assert!(c.steps.is_empty());
    }

    #[test]
    fn outer_horn_is_stuck() {
        let n = nerve(&fixtures::ordinal(2), 2).unwrap();
        let e01 = n.simplex(1, &[3]).unwrap();
        let e02 = n.simplex(1, &[4]).unwrap();
        let s0 = Subcomplex::generated(&n.sset, &[(1, e01), (1, e02)]);
        let AnodyneOutcome::Stuck(st) = anodyne_search(&n.sset, &s0) else { panic!("found a certificate") };
        assert!(st.steps.is_empty());
        assert!(st.missing.contains(&(1, n.simplex(1, &[5]).unwrap())));
    }

    #[test]
    fn spine_of_the_two_simplex_is_inner_anodyne() {
        let n = nerve(&fixtures::ordinal(2), 3).unwrap();
        let e01 = n.simplex(1, &[3]).unwrap();
        let e12 = n.simplex(1, &[5]).unwrap();
        let s0 = Subcomplex::generated(&n.sset, &[(1, e01), (1, e12)]);
        let AnodyneOutcome::Certificate(c) = anodyne_search(&n.sset, &s0) else { panic!("stuck") };
        assert_eq!(c.steps.len(), 1);
        assert_eq!((c.steps[0].k, c.steps[0].i), (2, 1));
        c.replay(&n.sset, &s0).unwrap();
        let mut forged = c.clone();
        forged.steps[0].i = 0;
        assert!(forged.replay(&n.sset, &s0).is_err());
    }
}
