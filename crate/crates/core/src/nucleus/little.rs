use std::sync::Arc;

use crate::fincat::{full_image, FiniteCategory, FullImage, Functor};

use super::{simple_nucleus, Adjunction, NucleusError, SimpleNucleus};

/// The little nucleus: the Kleisli resolution of the simple nucleus,
/// realized as the full images of `F̄` and `Ḡ`.
#[derive(Clone, Debug)]
pub struct LittleNucleus {
    pub simple: SimpleNucleus,
    /// `Karm`: objects of `Ec`, hom-sets `Em(F̄a, F̄a')`, with its fully
    /// faithful embedding into `Em`.
    pub karm: FullImage,
    /// `Karc`: objects of `Em`, hom-sets `Ec(Ḡb, Ḡb')`, with its fully
    /// faithful embedding into `Ec`.
    pub karc: FullImage,
    /// `Karm → Karc`, `a ↦ F̄a`, `k ↦ Ḡk`, and back by `b ↦ Ḡb`, `k ↦ F̄k`.
    pub adjunction: Adjunction,
}

impl LittleNucleus {
    pub fn karm(&self) -> &Arc<FiniteCategory> {
        &self.karm.lifted.category
    }

    pub fn karc(&self) -> &Arc<FiniteCategory> {
        &self.karc.lifted.category
    }
}

pub fn little_nucleus(a: &Adjunction) -> Result<LittleNucleus, NucleusError> {
    let simple = simple_nucleus(a)?;
    let (fbar, gbar) = (simple.adjunction.left(), simple.adjunction.right());
    let karm = full_image(fbar)?;
    let karc = full_image(gbar)?;
    let (m, c) = (&karm.lifted, &karc.lifted);
    let (mc, cc) = (m.category.clone(), c.category.clone());
    let left = Functor::try_from_fn(&mc, &cc, |i| Ok::<_, NucleusError>(fbar.obj(i)), |k| {
        let (i, j) = (mc.dom(k), mc.cod(k));
        Ok(c.lift_or_err(fbar.obj(i), fbar.obj(j), gbar.mor(m.underlying[k]))?)
    })?;
    let right = Functor::try_from_fn(&cc, &mc, |j| Ok::<_, NucleusError>(gbar.obj(j)), |k| {
        let (i, j) = (cc.dom(k), cc.cod(k));
        Ok(m.lift_or_err(gbar.obj(i), gbar.obj(j), fbar.mor(c.underlying[k]))?)
    })?;
    let unit = (0..mc.num_objects())
        .map(|i| m.lift_or_err(i, right.obj(left.obj(i)), fbar.mor(simple.adjunction.eta(i))))
        .collect::<Result<_, _>>()?;
    let counit = (0..cc.num_objects())
        .map(|j| c.lift_or_err(left.obj(right.obj(j)), j, gbar.mor(simple.adjunction.epsilon(j))))
        .collect::<Result<_, _>>()?;
    let adjunction = Adjunction::new(left, right, unit, counit)?;
    Ok(LittleNucleus {
        simple,
        karm,
        karc,
        adjunction,
    })
}
