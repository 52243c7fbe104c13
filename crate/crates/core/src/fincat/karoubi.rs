use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FincatError, FiniteCategory, Functor, Lifted, MorId, ObjId};

/// A splitting `φ = m∘e` with `e∘m = id_small`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Retraction {
    pub big: ObjId,
    pub small: ObjId,
    pub e: MorId,
    pub m: MorId,
}

impl Retraction {
    pub fn holds(&self, c: &FiniteCategory) -> bool {
        c.dom(self.e) == self.big
            && c.cod(self.e) == self.small
            && c.dom(self.m) == self.small
            && c.cod(self.m) == self.big
            && c.compose(self.e, self.m) == c.identity(self.small)
    }

    /// The comparison `e'∘m: small → small'` between two splittings of the
    /// same idempotent, with its candidate inverse `e∘m'`.
    pub fn comparison(&self, other: &Retraction, c: &FiniteCategory) -> (MorId, MorId) {
        (c.compose(other.e, self.m), c.compose(self.e, other.m))
    }

    /// True when the comparison with `other` is an isomorphism.
    pub fn comparison_is_iso(&self, other: &Retraction, c: &FiniteCategory) -> bool {
        let (fwd, back) = self.comparison(other, c);
        c.compose(back, fwd) == c.identity(self.small) && c.compose(fwd, back) == c.identity(other.small)
    }
}

fn check_idempotent(c: &FiniteCategory, phi: MorId) -> Result<(), FincatError> {
    if c.is_idempotent(phi) {
        Ok(())
    } else {
        Err(FincatError::NotIdempotent(c.morphism_name(phi).to_string()))
    }
}

fn splittings(c: &FiniteCategory, phi: MorId) -> impl Iterator<Item = Retraction> + '_ {
    let x = c.dom(phi);
    (0..c.num_objects()).flat_map(move |s| {
        c.hom(x, s).iter().flat_map(move |&e| {
            c.hom(s, x).iter().filter_map(move |&m| {
                (c.compose(m, e) == phi && c.compose(e, m) == c.identity(s)).then_some(Retraction {
                    big: x,
                    small: s,
                    e,
                    m,
                })
            })
        })
    })
}

/// First splitting of `phi` found by exhaustive search over objects in
/// index order.
pub fn split_idempotent(c: &FiniteCategory, phi: MorId) -> Result<Retraction, FincatError> {
    check_idempotent(c, phi)?;
    splittings(c, phi)
        .next()
        .ok_or_else(|| FincatError::NoSplitting(c.morphism_name(phi).to_string()))
}

/// Every splitting of `phi`.
pub fn all_splittings(c: &FiniteCategory, phi: MorId) -> Result<Vec<Retraction>, FincatError> {
    check_idempotent(c, phi)?;
    Ok(splittings(c, phi).collect())
}

/// The Karoubi envelope: idempotents as objects, `f: e → e'` whenever
/// `e'∘f∘e = f`, with `e` the identity at `e`.
#[derive(Clone, Debug)]
pub struct Karoubi {
    pub lifted: Lifted,
    /// The idempotent behind each object.
    pub idempotents: Vec<MorId>,
    /// `x ↦ id_x`, full and faithful.
    pub embedding: Functor,
}

impl Karoubi {
    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.lifted.category
    }

    /// The object of the envelope for idempotent `e`.
    pub fn object_of(&self, e: MorId) -> Option<ObjId> {
        self.idempotents.iter().position(|&i| i == e)
    }
}

pub fn karoubi_envelope(c: &Arc<FiniteCategory>) -> Karoubi {
    let idempotents = c.idempotents();
    let names = idempotents.iter().map(|&e| c.morphism_name(e).to_string()).collect();
    let carrier: Vec<ObjId> = idempotents.iter().map(|&e| c.dom(e)).collect();
    let lifted = Lifted::build(
        c,
        names,
        carrier,
        |i| idempotents[i],
        |i, j, f| c.compose(idempotents[j], c.compose(f, idempotents[i])) == f,
    )
    .expect("Karoubi envelope is closed under composition");
    let obj_of: Vec<ObjId> = (0..c.num_objects())
        .map(|x| idempotents.iter().position(|&e| e == c.identity(x)).expect("identity is idempotent"))
        .collect();
    let embedding = Functor::from_fn(c, &lifted.category, |x| obj_of[x], |f| {
        lifted
            .lift(obj_of[c.dom(f)], obj_of[c.cod(f)], f)
            .expect("every morphism lies between identities")
    })
    .expect("Karoubi embedding");
    Karoubi {
        lifted,
        idempotents,
        embedding,
    }
}
