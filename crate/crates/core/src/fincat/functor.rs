use std::sync::Arc;

use super::category::same_category;
use super::{FincatError, FiniteCategory, MorId, ObjId};

/// A functor between finite categories, stored as two lookup tables.
#[derive(Clone, Debug)]
pub struct Functor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.object_map == other.object_map
            && self.morphism_map == other.morphism_map
            && same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
    }
}

impl Functor {
    /// Wrap the maps after checking their sizes and ranges. Functor laws are
    /// checked separately by [`super::validate_functor`].
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<Self, FincatError> {
        if object_map.len() != source.num_objects() || morphism_map.len() != source.num_morphisms() {
            return Err(FincatError::Structure("functor maps do not cover the source".into()));
        }
        if object_map.iter().any(|&y| y >= target.num_objects())
            || morphism_map.iter().any(|&g| g >= target.num_morphisms())
        {
            return Err(FincatError::Structure("functor maps leave the target".into()));
        }
        Ok(Self {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    /// Build from closures over object and morphism indices.
    pub fn from_fn(
        source: &Arc<FiniteCategory>,
        target: &Arc<FiniteCategory>,
        obj: impl Fn(ObjId) -> ObjId,
        mor: impl Fn(MorId) -> MorId,
    ) -> Result<Self, FincatError> {
        let object_map = (0..source.num_objects()).map(obj).collect();
        let morphism_map = (0..source.num_morphisms()).map(mor).collect();
        Self::new(source.clone(), target.clone(), object_map, morphism_map)
    }

    /// Like [`Self::from_fn`] with fallible closures.
    pub fn try_from_fn<E>(
        source: &Arc<FiniteCategory>,
        target: &Arc<FiniteCategory>,
        obj: impl Fn(ObjId) -> Result<ObjId, E>,
        mor: impl Fn(MorId) -> Result<MorId, E>,
    ) -> Result<Self, E>
    where
        E: From<FincatError>,
    {
        let object_map = (0..source.num_objects()).map(obj).collect::<Result<_, _>>()?;
        let morphism_map = (0..source.num_morphisms()).map(mor).collect::<Result<_, _>>()?;
        Ok(Self::new(source.clone(), target.clone(), object_map, morphism_map)?)
    }

    pub fn identity(c: &Arc<FiniteCategory>) -> Self {
        Self {
            source: c.clone(),
            target: c.clone(),
            object_map: (0..c.num_objects()).collect(),
            morphism_map: (0..c.num_morphisms()).collect(),
        }
    }

    /// The functor sending every object to `y` and every morphism to `id_y`.
    pub fn constant(source: &Arc<FiniteCategory>, target: &Arc<FiniteCategory>, y: ObjId) -> Self {
        let id = target.identity(y);
        Self::from_fn(source, target, |_| y, |_| id).expect("constant functor")
    }

    /// The functor between preorder categories induced by a monotone map.
    /// Panics if the map is not monotone.
    pub fn monotone(source: &Arc<FiniteCategory>, target: &Arc<FiniteCategory>, map: &[ObjId]) -> Self {
        Self::from_fn(
            source,
            target,
            |x| map[x],
            |f| {
                let (x, y) = (map[source.dom(f)], map[source.cod(f)]);
                *target.hom(x, y).first().expect("map is not monotone")
            },
        )
        .expect("monotone map")
    }

    /// `g ∘ f`: apply `f` first.
    pub fn compose(g: &Functor, f: &Functor) -> Result<Functor, FincatError> {
        if !same_category(&f.target, &g.source) {
            return Err(FincatError::Mismatch("functors are not composable".into()));
        }
        Ok(Functor {
            source: f.source.clone(),
            target: g.target.clone(),
            object_map: f.object_map.iter().map(|&x| g.object_map[x]).collect(),
            morphism_map: f.morphism_map.iter().map(|&m| g.morphism_map[m]).collect(),
        })
    }

    /// `self ∘ f`, panicking on a mismatch.
    pub fn after(&self, f: &Functor) -> Functor {
        Functor::compose(self, f).expect("composable functors")
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.object_map[x]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.morphism_map[f]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.morphism_map
    }

    /// Replace the source and target by equal categories (used to re-anchor
    /// a functor on shared `Arc`s).
    pub fn rebase(&self, source: &Arc<FiniteCategory>, target: &Arc<FiniteCategory>) -> Result<Self, FincatError> {
        if !same_category(source, &self.source) || !same_category(target, &self.target) {
            return Err(FincatError::Mismatch("rebase onto different categories".into()));
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            object_map: self.object_map.clone(),
            morphism_map: self.morphism_map.clone(),
        })
    }
}

/// A natural transformation `source ⇒ target` between parallel functors.
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalTransformation {
    source: Functor,
    target: Functor,
    components: Vec<MorId>,
}

impl NaturalTransformation {
    /// Check parallelism and component typing. Naturality is checked by
    /// [`super::validate_nat_trans`].
    pub fn new(source: Functor, target: Functor, components: Vec<MorId>) -> Result<Self, FincatError> {
        if !same_category(source.source(), target.source()) || !same_category(source.target(), target.target()) {
            return Err(FincatError::Mismatch("transformation between non-parallel functors".into()));
        }
        let (a, b) = (source.source().clone(), source.target().clone());
        if components.len() != a.num_objects() {
            return Err(FincatError::Structure(format!(
                "{} components for {} objects",
                components.len(),
                a.num_objects()
            )));
        }
        for (x, &c) in components.iter().enumerate() {
            if c >= b.num_morphisms() || b.dom(c) != source.obj(x) || b.cod(c) != target.obj(x) {
                return Err(FincatError::Structure(format!(
                    "component at `{}` has the wrong endpoints",
                    a.object_name(x)
                )));
            }
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub fn from_fn(source: Functor, target: Functor, comp: impl Fn(ObjId) -> MorId) -> Result<Self, FincatError> {
        let components = (0..source.source().num_objects()).map(comp).collect();
        Self::new(source, target, components)
    }

    pub fn identity(f: &Functor) -> Self {
        let t = f.target();
        let components = (0..f.source().num_objects()).map(|x| t.identity(f.obj(x))).collect();
        Self {
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Functor {
        &self.source
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn component(&self, x: ObjId) -> MorId {
        self.components[x]
    }

    pub fn components(&self) -> &[MorId] {
        &self.components
    }

    /// Vertical composite `self ∘ first`.
    pub fn vertical(&self, first: &NaturalTransformation) -> Result<Self, FincatError> {
        if self.source != first.target {
            return Err(FincatError::Mismatch("transformations are not composable".into()));
        }
        let b = self.source.target();
        let components = (0..self.components.len())
            .map(|x| b.compose(self.components[x], first.components[x]))
            .collect();
        Ok(Self {
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    /// `self · h`: components `self_{h(x)}`, from `F∘h` to `G∘h`.
    pub fn whisker_right(&self, h: &Functor) -> Result<Self, FincatError> {
        let components = (0..h.source().num_objects())
            .map(|x| self.components[h.obj(x)])
            .collect();
        Self::new(
            Functor::compose(&self.source, h)?,
            Functor::compose(&self.target, h)?,
            components,
        )
    }

    /// `k · self`: components `k(self_x)`, from `k∘F` to `k∘G`.
    pub fn whisker_left(&self, k: &Functor) -> Result<Self, FincatError> {
        let components = self.components.iter().map(|&c| k.mor(c)).collect();
        Self::new(
            Functor::compose(k, &self.source)?,
            Functor::compose(k, &self.target)?,
            components,
        )
    }

    /// True when every component is an isomorphism.
    pub fn is_iso(&self) -> bool {
        let b = self.source.target();
        self.components.iter().all(|&c| b.is_iso(c))
    }
}
