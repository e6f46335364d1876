use std::fmt;
use std::sync::Arc;

use super::{FinCategory, Mor, Obj};

/// A candidate functor given by its object and morphism maps.
///
/// Construction does not check functoriality; call [`Functor::check`].
#[derive(Clone, PartialEq, Eq)]
pub struct Functor {
    pub dom: Arc<FinCategory>,
    pub cod: Arc<FinCategory>,
    pub obj_map: Vec<Obj>,
    pub mor_map: Vec<Mor>,
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functor")
            .field("obj_map", &self.obj_map)
            .field("mor_map", &self.mor_map)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorViolation {
    ObjectMapLength { expected: usize, got: usize },
    MorphismMapLength { expected: usize, got: usize },
    ObjectOutOfRange { x: Obj, image: Obj },
    MorphismOutOfRange { f: Mor, image: Mor },
    Source { f: Mor },
    Target { f: Mor },
    Identity { x: Obj },
    Composition { g: Mor, f: Mor },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctorViolation::*;
        match self {
            ObjectMapLength { expected, got } => {
                write!(fmt, "object map has {got} entries, expected {expected}")
            }
            MorphismMapLength { expected, got } => {
                write!(fmt, "morphism map has {got} entries, expected {expected}")
            }
            ObjectOutOfRange { x, image } => write!(fmt, "object {x} maps to out-of-range {image}"),
            MorphismOutOfRange { f, image } => {
                write!(fmt, "morphism {f} maps to out-of-range {image}")
            }
            Source { f } => write!(fmt, "source not preserved at morphism {f}"),
            Target { f } => write!(fmt, "target not preserved at morphism {f}"),
            Identity { x } => write!(fmt, "identity not preserved at object {x}"),
            Composition { g, f } => write!(fmt, "composition not preserved at {g} . {f}"),
        }
    }
}

impl Functor {
    pub fn new(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Self {
        Functor { dom, cod, obj_map, mor_map }
    }

    /// Object map only; the morphism map is filled in when every hom-set of the
    /// image has a unique candidate (posets, thin categories).
    pub fn from_object_map_thin(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        obj_map: Vec<Obj>,
    ) -> Option<Self> {
        let mor_map = dom
            .morphisms()
            .map(|f| {
                let h = cod.hom(obj_map[dom.src(f)], obj_map[dom.tgt(f)]);
                (h.len() == 1).then(|| h[0])
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Functor { dom, cod, obj_map, mor_map })
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let obj_map = c.objects().collect();
        let mor_map = c.morphisms().collect();
        Functor { dom: c.clone(), cod: c, obj_map, mor_map }
    }

    /// The functor `1 -> C` picking out `x`.
    pub fn point(terminal: Arc<FinCategory>, cod: Arc<FinCategory>, x: Obj) -> Self {
        Functor { dom: terminal, cod, obj_map: vec![x], mor_map: vec![x] }
    }

    /// The unique functor to a one-object, one-morphism category.
    pub fn to_terminal(dom: Arc<FinCategory>, terminal: Arc<FinCategory>) -> Self {
        let obj_map = vec![0; dom.num_objects()];
        let mor_map = vec![0; dom.num_morphisms()];
        Functor { dom, cod: terminal, obj_map, mor_map }
    }

    pub fn ob(&self, x: Obj) -> Obj {
        self.obj_map[x]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.mor_map[f]
    }

    /// First violated functor law, or `Ok` when this is a functor.
    pub fn check(&self) -> Result<(), FunctorViolation> {
        let (d, c) = (&*self.dom, &*self.cod);
        if self.obj_map.len() != d.num_objects() {
            return Err(FunctorViolation::ObjectMapLength {
                expected: d.num_objects(),
                got: self.obj_map.len(),
            });
        }
        if self.mor_map.len() != d.num_morphisms() {
            return Err(FunctorViolation::MorphismMapLength {
                expected: d.num_morphisms(),
                got: self.mor_map.len(),
            });
        }
        for (x, &y) in self.obj_map.iter().enumerate() {
            if y >= c.num_objects() {
                return Err(FunctorViolation::ObjectOutOfRange { x, image: y });
            }
        }
        for (f, &h) in self.mor_map.iter().enumerate() {
            if h >= c.num_morphisms() {
                return Err(FunctorViolation::MorphismOutOfRange { f, image: h });
            }
        }
        for x in d.objects() {
            if self.mor_map[d.identity(x)] != c.identity(self.obj_map[x]) {
                return Err(FunctorViolation::Identity { x });
            }
        }
        for f in d.morphisms() {
            let h = self.mor_map[f];
            if c.src(h) != self.obj_map[d.src(f)] {
                return Err(FunctorViolation::Source { f });
            }
            if c.tgt(h) != self.obj_map[d.tgt(f)] {
                return Err(FunctorViolation::Target { f });
            }
        }
        for (g, f) in d.composable_pairs() {
            let gf = d.compose(g, f).expect("composable");
            if c.compose(self.mor_map[g], self.mor_map[f]) != Some(self.mor_map[gf]) {
                return Err(FunctorViolation::Composition { g, f });
            }
        }
        Ok(())
    }

    pub fn is_functor(&self) -> bool {
        self.check().is_ok()
    }

    /// `other . self`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            obj_map: self.obj_map.iter().map(|&x| other.obj_map[x]).collect(),
            mor_map: self.mor_map.iter().map(|&f| other.mor_map[f]).collect(),
        }
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.cod.num_objects()];
        self.obj_map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_faithful(&self) -> bool {
        let d = &self.dom;
        d.objects().all(|x| {
            d.objects().all(|y| {
                let mut images: Vec<Mor> = d.hom(x, y).iter().map(|&f| self.mor_map[f]).collect();
                images.sort_unstable();
                images.windows(2).all(|w| w[0] != w[1])
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let d = &self.dom;
        d.objects().all(|x| {
            d.objects().all(|y| {
                let target = self.cod.hom(self.obj_map[x], self.obj_map[y]);
                target.iter().all(|h| d.hom(x, y).iter().any(|&f| self.mor_map[f] == *h))
            })
        })
    }

    /// Functor between opposite categories, given the already-built opposites.
    pub fn opposite_with(&self, dom_op: Arc<FinCategory>, cod_op: Arc<FinCategory>) -> Functor {
        Functor {
            dom: dom_op,
            cod: cod_op,
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    pub fn opposite(&self) -> Functor {
        let dom_op = Arc::new(super::opposite(&self.dom));
        let cod_op = Arc::new(super::opposite(&self.cod));
        self.opposite_with(dom_op, cod_op)
    }
}
