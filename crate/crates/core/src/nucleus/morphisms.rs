use crate::fincat::{validate_functor, validate_nat_trans, FincatError, Functor, MorId, NaturalTransformation};
use crate::report::Report;

use super::{Adjunction, Comonad, Monad};

/// `⟨H, χ⟩: T → S` with `H` between the carriers and invertible
/// `χ_a: H(Ta) → S(Ha)`.
#[derive(Clone, Debug)]
pub struct MonadMorphism {
    pub functor: Functor,
    pub chi: NaturalTransformation,
}

impl MonadMorphism {
    pub fn new(t: &Monad, s: &Monad, functor: Functor, chi: Vec<MorId>) -> Result<Self, FincatError> {
        let ht = Functor::compose(&functor, t.endofunctor())?;
        let sh = Functor::compose(s.endofunctor(), &functor)?;
        let chi = NaturalTransformation::new(ht, sh, chi)?;
        Ok(Self { functor, chi })
    }

    /// The identity morphism on `t`.
    pub fn identity(t: &Monad) -> Self {
        let c = t.carrier();
        let chi = (0..c.num_objects()).map(|x| c.identity(t.t_obj(x))).collect();
        Self::new(t, t, Functor::identity(c), chi).expect("identity monad morphism")
    }
}

/// Check `χ ∘ Hη = ηH` and `μH ∘ Sχ ∘ χT = χ ∘ Hμ`, naturality and
/// invertibility.
pub fn check_monad_morphism(t: &Monad, s: &Monad, m: &MonadMorphism) -> Report {
    let mut r = Report::new();
    r.absorb("functor", validate_functor(&m.functor));
    if r.has_violations() {
        return r;
    }
    r.absorb("χ", validate_nat_trans(&m.chi));
    let (a, b, h) = (t.carrier(), s.carrier(), &m.functor);
    for x in 0..a.num_objects() {
        let chi = m.chi.component(x);
        let name = || a.object_name(x).to_string();
        r.require(b.is_iso(chi), "χ invertible", name);
        r.require(
            b.compose(chi, h.mor(t.eta(x))) == s.eta(h.obj(x)),
            "monad morphism unit χ ∘ Hη = ηH",
            name,
        );
        let lhs = b.compose_path(&[m.chi.component(t.t_obj(x)), s.t_mor(chi), s.mu(h.obj(x))]);
        let rhs = b.compose(chi, h.mor(t.mu(x)));
        r.require(lhs == rhs, "monad morphism multiplication μH ∘ Sχ ∘ χT = χ ∘ Hμ", name);
    }
    r
}

/// `⟨K, κ⟩: S → T` between comonads with invertible
/// `κ_b: K(Sb) → T(Kb)`.
#[derive(Clone, Debug)]
pub struct ComonadMorphism {
    pub functor: Functor,
    pub kappa: NaturalTransformation,
}

impl ComonadMorphism {
    pub fn new(s: &Comonad, t: &Comonad, functor: Functor, kappa: Vec<MorId>) -> Result<Self, FincatError> {
        let ks = Functor::compose(&functor, s.endofunctor())?;
        let tk = Functor::compose(t.endofunctor(), &functor)?;
        let kappa = NaturalTransformation::new(ks, tk, kappa)?;
        Ok(Self { functor, kappa })
    }

    pub fn identity(s: &Comonad) -> Self {
        let c = s.carrier();
        let kappa = (0..c.num_objects()).map(|y| c.identity(s.s_obj(y))).collect();
        Self::new(s, s, Functor::identity(c), kappa).expect("identity comonad morphism")
    }
}

/// Check `εK ∘ κ = Kε` and `νK ∘ κ = Tκ ∘ κS ∘ Kν`, naturality and
/// invertibility.
pub fn check_comonad_morphism(s: &Comonad, t: &Comonad, m: &ComonadMorphism) -> Report {
    let mut r = Report::new();
    r.absorb("functor", validate_functor(&m.functor));
    if r.has_violations() {
        return r;
    }
    r.absorb("κ", validate_nat_trans(&m.kappa));
    let (b, d, k) = (s.carrier(), t.carrier(), &m.functor);
    for y in 0..b.num_objects() {
        let kappa = m.kappa.component(y);
        let name = || b.object_name(y).to_string();
        r.require(d.is_iso(kappa), "κ invertible", name);
        r.require(
            d.compose(t.epsilon(k.obj(y)), kappa) == k.mor(s.epsilon(y)),
            "comonad morphism counit εK ∘ κ = Kε",
            name,
        );
        let lhs = d.compose(t.nu(k.obj(y)), kappa);
        let rhs = d.compose_path(&[k.mor(s.nu(y)), m.kappa.component(s.s_obj(y)), t.s_mor(kappa)]);
        r.require(lhs == rhs, "comonad morphism comultiplication νK ∘ κ = Tκ ∘ κS ∘ Kν", name);
    }
    r
}

/// `⟨H, K, υ̂, ǔ⟩` from `F̂ ⊣ Ǧ` on `𝔸 ⇄ 𝔹` to `Ĝ ⊣ Ǧ'` on `ℂ ⇄ 𝔻`, with
/// `H: 𝔸 → ℂ`, `K: 𝔹 → 𝔻`, invertible `υ̂: KF̂ ⇒ ĜH` and `ǔ: HǦ ⇒ Ǧ'K`.
#[derive(Clone, Debug)]
pub struct AdjunctionMorphism {
    pub h: Functor,
    pub k: Functor,
    pub upsilon_left: NaturalTransformation,
    pub upsilon_right: NaturalTransformation,
}

impl AdjunctionMorphism {
    pub fn new(
        source: &Adjunction,
        target: &Adjunction,
        h: Functor,
        k: Functor,
        upsilon_left: Vec<MorId>,
        upsilon_right: Vec<MorId>,
    ) -> Result<Self, FincatError> {
        let upsilon_left = NaturalTransformation::new(
            Functor::compose(&k, source.left())?,
            Functor::compose(target.left(), &h)?,
            upsilon_left,
        )?;
        let upsilon_right = NaturalTransformation::new(
            Functor::compose(&h, source.right())?,
            Functor::compose(target.right(), &k)?,
            upsilon_right,
        )?;
        Ok(Self {
            h,
            k,
            upsilon_left,
            upsilon_right,
        })
    }

    pub fn identity(a: &Adjunction) -> Self {
        let (ca, cb) = (a.domain(), a.codomain());
        let ul = (0..ca.num_objects()).map(|x| cb.identity(a.left().obj(x))).collect();
        let ur = (0..cb.num_objects()).map(|y| ca.identity(a.right().obj(y))).collect();
        Self::new(a, a, Functor::identity(ca), Functor::identity(cb), ul, ur).expect("identity adjunction morphism")
    }
}

/// Check the two coherence equations
/// `εK ∘ Ĝǔ ∘ υ̂Ǧ = Kε` and `ηH = Ǧ'υ̂ ∘ ǔF̂ ∘ Hη`, naturality and
/// invertibility.
pub fn check_adjunction_morphism(source: &Adjunction, target: &Adjunction, m: &AdjunctionMorphism) -> Report {
    let mut r = Report::new();
    r.absorb("H", validate_functor(&m.h));
    r.absorb("K", validate_functor(&m.k));
    if r.has_violations() {
        return r;
    }
    r.absorb("υ̂", validate_nat_trans(&m.upsilon_left));
    r.absorb("ǔ", validate_nat_trans(&m.upsilon_right));
    let (ca, cb) = (source.domain(), source.codomain());
    let (cc, cd) = (target.domain(), target.codomain());
    for x in 0..ca.num_objects() {
        let name = || ca.object_name(x).to_string();
        let ul = m.upsilon_left.component(x);
        r.require(cd.is_iso(ul), "υ̂ invertible", name);
        let lhs = target.eta(m.h.obj(x));
        let rhs = cc.compose_path(&[
            m.h.mor(source.eta(x)),
            m.upsilon_right.component(source.left().obj(x)),
            target.right().mor(ul),
        ]);
        r.require(lhs == rhs, "adjunction morphism unit ηH = Ǧ'υ̂ ∘ ǔF̂ ∘ Hη", name);
    }
    for y in 0..cb.num_objects() {
        let name = || cb.object_name(y).to_string();
        let ur = m.upsilon_right.component(y);
        r.require(cc.is_iso(ur), "ǔ invertible", name);
        let lhs = cd.compose_path(&[
            m.upsilon_left.component(source.right().obj(y)),
            target.left().mor(ur),
            target.epsilon(m.k.obj(y)),
        ]);
        let rhs = m.k.mor(source.epsilon(y));
        r.require(lhs == rhs, "adjunction morphism counit εK ∘ Ĝǔ ∘ υ̂Ǧ = Kε", name);
    }
    r
}
