use std::sync::Arc;

use crate::fincat::{
    validate_functor, validate_nat_trans, FincatError, FiniteCategory, Functor, MorId, NaturalTransformation, ObjId,
};
use crate::report::Report;

/// An adjunction `F̂ ⊣ Ǧ` with `F̂: 𝔸 → 𝔹`.
#[derive(Clone, Debug, PartialEq)]
pub struct Adjunction {
    left: Functor,
    right: Functor,
    unit: NaturalTransformation,
    counit: NaturalTransformation,
}

impl Adjunction {
    /// Assemble from the two functors and the components of `η` (indexed by
    /// objects of `𝔸`) and `ε` (indexed by objects of `𝔹`). Only typing is
    /// checked here; see [`check_adjunction`] for the laws.
    pub fn new(left: Functor, right: Functor, unit: Vec<MorId>, counit: Vec<MorId>) -> Result<Self, FincatError> {
        let gf = Functor::compose(&right, &left)?;
        let fg = Functor::compose(&left, &right)?;
        let unit = NaturalTransformation::new(Functor::identity(left.source()), gf, unit)?;
        let counit = NaturalTransformation::new(fg, Functor::identity(right.source()), counit)?;
        Ok(Self {
            left,
            right,
            unit,
            counit,
        })
    }

    /// `id ⊣ id` on `c`.
    pub fn identity(c: &Arc<FiniteCategory>) -> Self {
        let ids = c.identities().to_vec();
        Self::new(Functor::identity(c), Functor::identity(c), ids.clone(), ids).expect("identity adjunction")
    }

    /// `𝔸`, the source of the left adjoint.
    pub fn domain(&self) -> &Arc<FiniteCategory> {
        self.left.source()
    }

    /// `𝔹`, the source of the right adjoint.
    pub fn codomain(&self) -> &Arc<FiniteCategory> {
        self.right.source()
    }

    pub fn left(&self) -> &Functor {
        &self.left
    }

    pub fn right(&self) -> &Functor {
        &self.right
    }

    pub fn unit(&self) -> &NaturalTransformation {
        &self.unit
    }

    pub fn counit(&self) -> &NaturalTransformation {
        &self.counit
    }

    pub fn eta(&self, x: ObjId) -> MorId {
        self.unit.component(x)
    }

    pub fn epsilon(&self, y: ObjId) -> MorId {
        self.counit.component(y)
    }
}

/// Validate the constituents and both triangle identities.
pub fn check_adjunction(a: &Adjunction) -> Report {
    let mut r = Report::new();
    r.absorb("left adjoint", validate_functor(a.left()));
    r.absorb("right adjoint", validate_functor(a.right()));
    if r.has_violations() {
        return r;
    }
    r.absorb("unit", validate_nat_trans(a.unit()));
    r.absorb("counit", validate_nat_trans(a.counit()));
    let (ca, cb) = (a.domain(), a.codomain());
    let (f, g) = (a.left(), a.right());
    for x in 0..ca.num_objects() {
        let lhs = cb.compose(a.epsilon(f.obj(x)), f.mor(a.eta(x)));
        r.require(lhs == cb.identity(f.obj(x)), "triangle ε F̂ ∘ F̂ η = id", || {
            ca.object_name(x).to_string()
        });
    }
    for y in 0..cb.num_objects() {
        let lhs = ca.compose(g.mor(a.epsilon(y)), a.eta(g.obj(y)));
        r.require(lhs == ca.identity(g.obj(y)), "triangle Ǧ ε ∘ η Ǧ = id", || {
            cb.object_name(y).to_string()
        });
    }
    r
}

/// A monad `(T, η, μ)` on a finite category.
#[derive(Clone, Debug, PartialEq)]
pub struct Monad {
    endofunctor: Functor,
    eta: NaturalTransformation,
    mu: NaturalTransformation,
}

impl Monad {
    pub fn new(endofunctor: Functor, eta: Vec<MorId>, mu: Vec<MorId>) -> Result<Self, FincatError> {
        let c = endofunctor.source().clone();
        if !Arc::ptr_eq(&c, endofunctor.target()) && **endofunctor.target() != *c {
            return Err(FincatError::Mismatch("monad on a functor that is not an endofunctor".into()));
        }
        let tt = Functor::compose(&endofunctor, &endofunctor)?;
        let eta = NaturalTransformation::new(Functor::identity(&c), endofunctor.clone(), eta)?;
        let mu = NaturalTransformation::new(tt, endofunctor.clone(), mu)?;
        Ok(Self { endofunctor, eta, mu })
    }

    /// The identity monad on `c`.
    pub fn identity(c: &Arc<FiniteCategory>) -> Self {
        let ids = c.identities().to_vec();
        Self::new(Functor::identity(c), ids.clone(), ids).expect("identity monad")
    }

    pub fn carrier(&self) -> &Arc<FiniteCategory> {
        self.endofunctor.source()
    }

    pub fn endofunctor(&self) -> &Functor {
        &self.endofunctor
    }

    pub fn unit(&self) -> &NaturalTransformation {
        &self.eta
    }

    pub fn multiplication(&self) -> &NaturalTransformation {
        &self.mu
    }

    pub fn t_obj(&self, x: ObjId) -> ObjId {
        self.endofunctor.obj(x)
    }

    pub fn t_mor(&self, f: MorId) -> MorId {
        self.endofunctor.mor(f)
    }

    pub fn eta(&self, x: ObjId) -> MorId {
        self.eta.component(x)
    }

    pub fn mu(&self, x: ObjId) -> MorId {
        self.mu.component(x)
    }
}

/// A comonad `(S, ε, ν)` on a finite category.
#[derive(Clone, Debug, PartialEq)]
pub struct Comonad {
    endofunctor: Functor,
    epsilon: NaturalTransformation,
    nu: NaturalTransformation,
}

impl Comonad {
    pub fn new(endofunctor: Functor, epsilon: Vec<MorId>, nu: Vec<MorId>) -> Result<Self, FincatError> {
        let c = endofunctor.source().clone();
        if !Arc::ptr_eq(&c, endofunctor.target()) && **endofunctor.target() != *c {
            return Err(FincatError::Mismatch("comonad on a functor that is not an endofunctor".into()));
        }
        let ss = Functor::compose(&endofunctor, &endofunctor)?;
        let epsilon = NaturalTransformation::new(endofunctor.clone(), Functor::identity(&c), epsilon)?;
        let nu = NaturalTransformation::new(endofunctor.clone(), ss, nu)?;
        Ok(Self {
            endofunctor,
            epsilon,
            nu,
        })
    }

    pub fn identity(c: &Arc<FiniteCategory>) -> Self {
        let ids = c.identities().to_vec();
        Self::new(Functor::identity(c), ids.clone(), ids).expect("identity comonad")
    }

    pub fn carrier(&self) -> &Arc<FiniteCategory> {
        self.endofunctor.source()
    }

    pub fn endofunctor(&self) -> &Functor {
        &self.endofunctor
    }

    pub fn counit(&self) -> &NaturalTransformation {
        &self.epsilon
    }

    pub fn comultiplication(&self) -> &NaturalTransformation {
        &self.nu
    }

    pub fn s_obj(&self, y: ObjId) -> ObjId {
        self.endofunctor.obj(y)
    }

    pub fn s_mor(&self, g: MorId) -> MorId {
        self.endofunctor.mor(g)
    }

    pub fn epsilon(&self, y: ObjId) -> MorId {
        self.epsilon.component(y)
    }

    pub fn nu(&self, y: ObjId) -> MorId {
        self.nu.component(y)
    }
}

/// `T = ǦF̂` with `η` the unit and `μ = Ǧ ε F̂`.
pub fn monad_of(a: &Adjunction) -> Monad {
    let (f, g) = (a.left(), a.right());
    let mu = (0..a.domain().num_objects()).map(|x| g.mor(a.epsilon(f.obj(x)))).collect();
    Monad::new(Functor::compose(g, f).expect("composable adjoints"), a.unit().components().to_vec(), mu)
        .expect("induced monad is well typed")
}

/// `S = F̂Ǧ` with `ε` the counit and `ν = F̂ η Ǧ`.
pub fn comonad_of(a: &Adjunction) -> Comonad {
    let (f, g) = (a.left(), a.right());
    let nu = (0..a.codomain().num_objects()).map(|y| f.mor(a.eta(g.obj(y)))).collect();
    Comonad::new(Functor::compose(f, g).expect("composable adjoints"), a.counit().components().to_vec(), nu)
        .expect("induced comonad is well typed")
}

/// Validate the constituents and the unit and associativity laws.
pub fn check_monad(m: &Monad) -> Report {
    let mut r = Report::new();
    r.absorb("endofunctor", validate_functor(m.endofunctor()));
    if r.has_violations() {
        return r;
    }
    r.absorb("unit", validate_nat_trans(m.unit()));
    r.absorb("multiplication", validate_nat_trans(m.multiplication()));
    let c = m.carrier();
    for x in 0..c.num_objects() {
        let tx = m.t_obj(x);
        let id = c.identity(tx);
        let name = || c.object_name(x).to_string();
        r.require(c.compose(m.mu(x), m.eta(tx)) == id, "monad unit μ ∘ ηT = id", name);
        r.require(c.compose(m.mu(x), m.t_mor(m.eta(x))) == id, "monad unit μ ∘ Tη = id", name);
        r.require(
            c.compose(m.mu(x), m.t_mor(m.mu(x))) == c.compose(m.mu(x), m.mu(tx)),
            "monad associativity μ ∘ Tμ = μ ∘ μT",
            name,
        );
    }
    r
}

/// Validate the constituents and the counit and coassociativity laws.
pub fn check_comonad(s: &Comonad) -> Report {
    let mut r = Report::new();
    r.absorb("endofunctor", validate_functor(s.endofunctor()));
    if r.has_violations() {
        return r;
    }
    r.absorb("counit", validate_nat_trans(s.counit()));
    r.absorb("comultiplication", validate_nat_trans(s.comultiplication()));
    let c = s.carrier();
    for y in 0..c.num_objects() {
        let sy = s.s_obj(y);
        let id = c.identity(sy);
        let name = || c.object_name(y).to_string();
        r.require(c.compose(s.epsilon(sy), s.nu(y)) == id, "comonad counit εS ∘ ν = id", name);
        r.require(c.compose(s.s_mor(s.epsilon(y)), s.nu(y)) == id, "comonad counit Sε ∘ ν = id", name);
        r.require(
            c.compose(s.s_mor(s.nu(y)), s.nu(y)) == c.compose(s.nu(sy), s.nu(y)),
            "comonad coassociativity Sν ∘ ν = νS ∘ ν",
            name,
        );
    }
    r
}
