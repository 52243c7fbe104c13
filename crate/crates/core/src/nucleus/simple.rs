use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{FincatError, FiniteCategory, Functor, Lifted, MorId, ObjId};
use crate::report::Report;

use super::{Adjunction, Algebras, Coalgebras, NucleusError};

/// An object of `Ec` or `Em`: a carrier, an idempotent on its image under
/// the adjoint, and the stored splitting witness.
///
/// For `Ec`: `x ∈ 𝔸`, `α ∈ 𝔹(F̂x, F̂x)`, `witness: ǦF̂x → x` with
/// `witness ∘ α̃ = id` and `α̃ ∘ witness = Ǧα` where `α̃ = Ǧα ∘ η_x`.
/// For `Em`: `u ∈ 𝔹`, `β ∈ 𝔸(Ǧu, Ǧu)`, `witness: u → F̂Ǧu` with
/// `β̃ ∘ witness = id` and `witness ∘ β̃ = F̂β` where `β̃ = ε_u ∘ F̂β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimpleObject {
    pub carrier: ObjId,
    pub alpha: MorId,
    pub witness: MorId,
}

/// The simple nucleus `F̄ ⊣ Ḡ` on `Ec ⇄ Em`.
#[derive(Clone, Debug)]
pub struct SimpleNucleus {
    pub input: Adjunction,
    pub ec: Lifted,
    pub em: Lifted,
    pub ec_objects: Vec<SimpleObject>,
    pub em_objects: Vec<SimpleObject>,
    /// `F̄(x, α) = (F̂x, η_x ∘ e)`, `Ḡ(u, β) = (Ǧu, m ∘ ε_u)`, unit `α̃`,
    /// counit `β̃`.
    pub adjunction: Adjunction,
    /// `K⁰: 𝔸 → Ec`, `x ↦ (ǦF̂x, F̂η_x ∘ ε_{F̂x})`.
    pub k0: Functor,
    /// `K₁: 𝔹 → Em`, `u ↦ (F̂Ǧu, η_{Ǧu} ∘ Ǧε_u)`.
    pub k1: Functor,
    ec_index: HashMap<(ObjId, MorId), ObjId>,
    em_index: HashMap<(ObjId, MorId), ObjId>,
}

impl SimpleNucleus {
    pub fn ec_category(&self) -> &Arc<FiniteCategory> {
        &self.ec.category
    }

    pub fn em_category(&self) -> &Arc<FiniteCategory> {
        &self.em.category
    }

    pub fn find_ec(&self, x: ObjId, alpha: MorId) -> Option<ObjId> {
        self.ec_index.get(&(x, alpha)).copied()
    }

    pub fn find_em(&self, u: ObjId, beta: MorId) -> Option<ObjId> {
        self.em_index.get(&(u, beta)).copied()
    }

    /// `𝔹_S → Ec`, `(y, β) ↦ (Ǧy, β ∘ ε_y)`, `g ↦ Ǧg`.
    pub fn from_coalgebras(&self, coalgebras: &Coalgebras) -> Result<Functor, NucleusError> {
        let a = &self.input;
        let cb = a.codomain();
        let obj = (0..coalgebras.category().num_objects())
            .map(|i| {
                let y = coalgebras.carrier(i);
                let alpha = cb.compose(coalgebras.structure[i], a.epsilon(y));
                self.find_ec(a.right().obj(y), alpha).ok_or_else(|| {
                    NucleusError::Construction(format!(
                        "coalgebra `{}` has no Ec counterpart",
                        coalgebras.category().object_name(i)
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(lift_functor(&coalgebras.lifted, &self.ec, &obj, a.right())?)
    }

    /// `𝔸^T → Em`, `(z, γ) ↦ (F̂z, η_z ∘ γ)`, `f ↦ F̂f`.
    pub fn from_algebras(&self, algebras: &Algebras) -> Result<Functor, NucleusError> {
        let a = &self.input;
        let ca = a.domain();
        let obj = (0..algebras.category().num_objects())
            .map(|k| {
                let z = algebras.carrier(k);
                let beta = ca.compose(a.eta(z), algebras.structure[k]);
                self.find_em(a.left().obj(z), beta).ok_or_else(|| {
                    NucleusError::Construction(format!(
                        "algebra `{}` has no Em counterpart",
                        algebras.category().object_name(k)
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(lift_functor(&algebras.lifted, &self.em, &obj, a.left())?)
    }
}

/// The functor between lifted categories given on objects by `obj` and
/// on underlying morphisms by `base`.
fn lift_functor(src: &Lifted, tgt: &Lifted, obj: &[ObjId], base: &Functor) -> Result<Functor, FincatError> {
    let sc = &src.category;
    Functor::try_from_fn(sc, &tgt.category, |i| Ok(obj[i]), |m| {
        tgt.lift_or_err(obj[sc.dom(m)], obj[sc.cod(m)], base.mor(src.underlying[m]))
    })
}

struct Side {
    names: Vec<String>,
    objects: Vec<SimpleObject>,
    index: HashMap<(ObjId, MorId), ObjId>,
}

/// Admit `(x, α)` for each idempotent `α` on `image(x)` in `d` that has a
/// candidate witness accepted by `accept`; the first one is stored.
fn scan(
    c: &FiniteCategory,
    d: &FiniteCategory,
    image: impl Fn(ObjId) -> ObjId,
    candidates: impl Fn(ObjId, MorId) -> Vec<MorId>,
    accept: impl Fn(ObjId, MorId, MorId) -> bool,
) -> Side {
    let mut side = Side {
        names: Vec::new(),
        objects: Vec::new(),
        index: HashMap::new(),
    };
    for x in 0..c.num_objects() {
        let fx = image(x);
        for &alpha in d.hom(fx, fx) {
            if !d.is_idempotent(alpha) {
                continue;
            }
            if let Some(w) = candidates(x, alpha).into_iter().find(|&w| accept(x, alpha, w)) {
                side.index.insert((x, alpha), side.objects.len());
                side.names.push(format!("({},{})", c.object_name(x), d.morphism_name(alpha)));
                side.objects.push(SimpleObject {
                    carrier: x,
                    alpha,
                    witness: w,
                });
            }
        }
    }
    side
}

/// Build `Ec`, `Em`, the adjunction between them and the comparison
/// functors `K⁰`, `K₁`.
pub fn simple_nucleus(a: &Adjunction) -> Result<SimpleNucleus, NucleusError> {
    let (ca, cb) = (a.domain().clone(), a.codomain().clone());
    let (fh, gc) = (a.left().clone(), a.right().clone());

    let ec_side = scan(
        &ca,
        &cb,
        |x| fh.obj(x),
        |x, _| ca.hom(gc.obj(fh.obj(x)), x).to_vec(),
        |x, alpha, e| {
            let t = ca.compose(gc.mor(alpha), a.eta(x));
            ca.compose(e, t) == ca.identity(x) && ca.compose(t, e) == gc.mor(alpha)
        },
    );
    let em_side = scan(
        &cb,
        &ca,
        |u| gc.obj(u),
        |u, _| cb.hom(u, fh.obj(gc.obj(u))).to_vec(),
        |u, beta, m| {
            let t = cb.compose(a.epsilon(u), fh.mor(beta));
            cb.compose(t, m) == cb.identity(u) && cb.compose(m, t) == fh.mor(beta)
        },
    );

    let ec_objs = ec_side.objects.clone();
    let ec = Lifted::build(
        &ca,
        ec_side.names,
        ec_objs.iter().map(|o| o.carrier).collect(),
        |i| ca.identity(ec_objs[i].carrier),
        |i, j, f| cb.compose(fh.mor(f), ec_objs[i].alpha) == cb.compose(ec_objs[j].alpha, fh.mor(f)),
    )?;
    let em_objs = em_side.objects.clone();
    let em = Lifted::build(
        &cb,
        em_side.names,
        em_objs.iter().map(|o| o.carrier).collect(),
        |i| cb.identity(em_objs[i].carrier),
        |i, j, g| ca.compose(gc.mor(g), em_objs[i].alpha) == ca.compose(em_objs[j].alpha, gc.mor(g)),
    )?;

    let missing = |what: &str, name: &str| NucleusError::Construction(format!("{what} of `{name}` is not admitted"));
    let left_obj = ec_objs
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let beta = ca.compose(a.eta(o.carrier), o.witness);
            em_side
                .index
                .get(&(fh.obj(o.carrier), beta))
                .copied()
                .ok_or_else(|| missing("F̄-image", ec.category.object_name(i)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let right_obj = em_objs
        .iter()
        .enumerate()
        .map(|(j, o)| {
            let alpha = cb.compose(o.witness, a.epsilon(o.carrier));
            ec_side
                .index
                .get(&(gc.obj(o.carrier), alpha))
                .copied()
                .ok_or_else(|| missing("Ḡ-image", em.category.object_name(j)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let left = lift_functor(&ec, &em, &left_obj, &fh)?;
    let right = lift_functor(&em, &ec, &right_obj, &gc)?;
    let unit = ec_objs
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let t = ca.compose(gc.mor(o.alpha), a.eta(o.carrier));
            ec.lift_or_err(i, right_obj[left_obj[i]], t)
        })
        .collect::<Result<_, _>>()?;
    let counit = em_objs
        .iter()
        .enumerate()
        .map(|(j, o)| {
            let t = cb.compose(a.epsilon(o.carrier), fh.mor(o.alpha));
            em.lift_or_err(left_obj[right_obj[j]], j, t)
        })
        .collect::<Result<_, _>>()?;
    let adjunction = Adjunction::new(left, right, unit, counit)?;

    let k0_obj = (0..ca.num_objects())
        .map(|x| {
            let fx = fh.obj(x);
            let alpha = cb.compose(fh.mor(a.eta(x)), a.epsilon(fx));
            ec_side
                .index
                .get(&(gc.obj(fx), alpha))
                .copied()
                .ok_or_else(|| missing("K⁰-image", ca.object_name(x)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let k0 = Functor::try_from_fn(&ca, &ec.category, |x| Ok(k0_obj[x]), |f| {
        ec.lift_or_err(k0_obj[ca.dom(f)], k0_obj[ca.cod(f)], gc.mor(fh.mor(f)))
    })?;
    let k1_obj = (0..cb.num_objects())
        .map(|u| {
            let gu = gc.obj(u);
            let beta = ca.compose(a.eta(gu), gc.mor(a.epsilon(u)));
            em_side
                .index
                .get(&(fh.obj(gu), beta))
                .copied()
                .ok_or_else(|| missing("K₁-image", cb.object_name(u)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let k1 = Functor::try_from_fn(&cb, &em.category, |u| Ok(k1_obj[u]), |g| {
        em.lift_or_err(k1_obj[cb.dom(g)], k1_obj[cb.cod(g)], fh.mor(gc.mor(g)))
    })?;

    Ok(SimpleNucleus {
        input: a.clone(),
        ec,
        em,
        ec_objects: ec_objs,
        em_objects: em_objs,
        adjunction,
        k0,
        k1,
        ec_index: ec_side.index,
        em_index: em_side.index,
    })
}

/// A pair `s: a → b`, `r: b → a` with `r ∘ s = id_a`, first in index
/// order.
pub fn retract_witness(c: &FiniteCategory, a: ObjId, b: ObjId) -> Option<(MorId, MorId)> {
    let id = c.identity(a);
    c.hom(a, b)
        .iter()
        .find_map(|&s| c.hom(b, a).iter().find(|&&r| c.compose(r, s) == id).map(|&r| (s, r)))
}

/// Every object of `Ec` is a retract of `ḠF̄` of it, and every object of
/// `Em` of `F̄Ḡ` of it.
pub fn check_retracts(s: &SimpleNucleus) -> Report {
    let mut r = Report::new();
    let (f, g) = (s.adjunction.left(), s.adjunction.right());
    let (ec, em) = (s.ec_category(), s.em_category());
    for i in 0..ec.num_objects() {
        r.require(retract_witness(ec, i, g.obj(f.obj(i))).is_some(), "retract of ḠF̄", || {
            ec.object_name(i).to_string()
        });
    }
    for j in 0..em.num_objects() {
        r.require(retract_witness(em, j, f.obj(g.obj(j))).is_some(), "retract of F̄Ḡ", || {
            em.object_name(j).to_string()
        });
    }
    r
}

/// For every idempotent `φ = m ∘ e` with `m` monic and `e` epi,
/// `e ∘ m = id`.
pub fn check_splitting_lemma(c: &FiniteCategory) -> Report {
    let mut r = Report::new();
    for phi in c.idempotents() {
        let x = c.dom(phi);
        for s in 0..c.num_objects() {
            for &e in c.hom(x, s) {
                for &m in c.hom(s, x) {
                    if c.compose(m, e) != phi || !c.is_monic(m) || !c.is_epi(e) {
                        continue;
                    }
                    r.require(c.compose(e, m) == c.identity(s), "monic-epi splitting e ∘ m = id", || {
                        format!("({}, {})", c.morphism_name(e), c.morphism_name(m))
                    });
                }
            }
        }
    }
    r
}

/// For every `α ∈ 𝔹(F̂x, F̂x)` with `Ǧα = α̃ ∘ e`, `α̃ = Ǧα ∘ η_x` monic and
/// `e` epi, `e ∘ η_x = id`.
pub fn check_unit_splitting(a: &Adjunction) -> Report {
    let mut r = Report::new();
    let (ca, cb) = (a.domain(), a.codomain());
    let (fh, gc) = (a.left(), a.right());
    for x in 0..ca.num_objects() {
        let fx = fh.obj(x);
        for &alpha in cb.hom(fx, fx) {
            let t = ca.compose(gc.mor(alpha), a.eta(x));
            if !ca.is_monic(t) {
                continue;
            }
            for &e in ca.hom(gc.obj(fx), x) {
                if ca.compose(t, e) != gc.mor(alpha) || !ca.is_epi(e) {
                    continue;
                }
                r.require(ca.compose(e, a.eta(x)) == ca.identity(x), "unit splitting e ∘ η = id", || {
                    format!("({}, {})", ca.object_name(x), cb.morphism_name(alpha))
                });
            }
        }
    }
    r
}
