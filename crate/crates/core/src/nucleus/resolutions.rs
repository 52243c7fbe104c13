use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{FincatError, FiniteCategory, Functor, Lifted, MorId, Morphism, ObjId};

use super::{comonad_of, monad_of, Adjunction, Comonad, Monad};

/// The Eilenberg-Moore category `𝔸^T` with its free/forgetful adjunction.
#[derive(Clone, Debug)]
pub struct Algebras {
    pub monad: Monad,
    pub lifted: Lifted,
    /// Structure map `α: Tx → x` of each algebra.
    pub structure: Vec<MorId>,
    /// Free ⊣ forgetful, with left adjoint `x ↦ (Tx, μ_x)`.
    pub adjunction: Adjunction,
    index: HashMap<(ObjId, MorId), ObjId>,
}

impl Algebras {
    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.lifted.category
    }

    /// The algebra `(x, α)`, if `α` is an algebra structure on `x`.
    pub fn find(&self, x: ObjId, alpha: MorId) -> Option<ObjId> {
        self.index.get(&(x, alpha)).copied()
    }

    pub fn carrier(&self, i: ObjId) -> ObjId {
        self.lifted.carrier[i]
    }

    pub fn forgetful(&self) -> &Functor {
        self.adjunction.right()
    }

    pub fn free(&self) -> &Functor {
        self.adjunction.left()
    }
}

fn pair_name(c: &FiniteCategory, x: ObjId, f: MorId) -> String {
    format!("({},{})", c.object_name(x), c.morphism_name(f))
}

/// Enumerate every algebra by scanning the hom-sets `Tx → x`.
pub fn em_algebras(m: &Monad) -> Algebras {
    let c = m.carrier().clone();
    let mut names = Vec::new();
    let mut carrier = Vec::new();
    let mut structure = Vec::new();
    let mut index = HashMap::new();
    for x in 0..c.num_objects() {
        let tx = m.t_obj(x);
        for &alpha in c.hom(tx, x) {
            let unit_law = c.compose(alpha, m.eta(x)) == c.identity(x);
            if unit_law && c.compose(alpha, m.t_mor(alpha)) == c.compose(alpha, m.mu(x)) {
                index.insert((x, alpha), names.len());
                names.push(pair_name(&c, x, alpha));
                carrier.push(x);
                structure.push(alpha);
            }
        }
    }
    let lifted = Lifted::build(
        &c,
        names,
        carrier.clone(),
        |i| c.identity(carrier[i]),
        |i, j, f| c.compose(f, structure[i]) == c.compose(structure[j], m.t_mor(f)),
    )
    .expect("algebra homomorphisms compose");
    let alg = lifted.category.clone();
    let free_obj: Vec<ObjId> = (0..c.num_objects())
        .map(|x| index[&(m.t_obj(x), m.mu(x))])
        .collect();
    let free = Functor::from_fn(&c, &alg, |x| free_obj[x], |f| {
        lifted
            .lift(free_obj[c.dom(f)], free_obj[c.cod(f)], m.t_mor(f))
            .expect("Tf is a homomorphism of free algebras")
    })
    .expect("free functor");
    let unit = (0..c.num_objects()).map(|x| m.eta(x)).collect();
    let counit = (0..alg.num_objects())
        .map(|i| {
            lifted
                .lift(free_obj[carrier[i]], i, structure[i])
                .expect("structure map is a homomorphism")
        })
        .collect();
    let adjunction = Adjunction::new(free, lifted.forgetful(), unit, counit).expect("free ⊣ forgetful");
    Algebras {
        monad: m.clone(),
        lifted,
        structure,
        adjunction,
        index,
    }
}

/// The category of coalgebras `𝔹_S` with its forgetful/cofree adjunction.
#[derive(Clone, Debug)]
pub struct Coalgebras {
    pub comonad: Comonad,
    pub lifted: Lifted,
    /// Structure map `β: y → Sy` of each coalgebra.
    pub structure: Vec<MorId>,
    /// Forgetful ⊣ cofree, with right adjoint `y ↦ (Sy, ν_y)`.
    pub adjunction: Adjunction,
    index: HashMap<(ObjId, MorId), ObjId>,
}

impl Coalgebras {
    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.lifted.category
    }

    pub fn find(&self, y: ObjId, beta: MorId) -> Option<ObjId> {
        self.index.get(&(y, beta)).copied()
    }

    pub fn carrier(&self, i: ObjId) -> ObjId {
        self.lifted.carrier[i]
    }

    pub fn forgetful(&self) -> &Functor {
        self.adjunction.left()
    }

    pub fn cofree(&self) -> &Functor {
        self.adjunction.right()
    }
}

/// Enumerate every coalgebra by scanning the hom-sets `y → Sy`.
pub fn em_coalgebras(s: &Comonad) -> Coalgebras {
    let c = s.carrier().clone();
    let mut names = Vec::new();
    let mut carrier = Vec::new();
    let mut structure = Vec::new();
    let mut index = HashMap::new();
    for y in 0..c.num_objects() {
        let sy = s.s_obj(y);
        for &beta in c.hom(y, sy) {
            let counit_law = c.compose(s.epsilon(y), beta) == c.identity(y);
            if counit_law && c.compose(s.s_mor(beta), beta) == c.compose(s.nu(y), beta) {
                index.insert((y, beta), names.len());
                names.push(pair_name(&c, y, beta));
                carrier.push(y);
                structure.push(beta);
            }
        }
    }
    let lifted = Lifted::build(
        &c,
        names,
        carrier.clone(),
        |i| c.identity(carrier[i]),
        |i, j, g| c.compose(structure[j], g) == c.compose(s.s_mor(g), structure[i]),
    )
    .expect("coalgebra homomorphisms compose");
    let coalg = lifted.category.clone();
    let cofree_obj: Vec<ObjId> = (0..c.num_objects())
        .map(|y| index[&(s.s_obj(y), s.nu(y))])
        .collect();
    let cofree = Functor::from_fn(&c, &coalg, |y| cofree_obj[y], |g| {
        lifted
            .lift(cofree_obj[c.dom(g)], cofree_obj[c.cod(g)], s.s_mor(g))
            .expect("Sg is a homomorphism of cofree coalgebras")
    })
    .expect("cofree functor");
    let unit = (0..coalg.num_objects())
        .map(|i| {
            lifted
                .lift(i, cofree_obj[carrier[i]], structure[i])
                .expect("structure map is a homomorphism")
        })
        .collect();
    let counit = (0..c.num_objects()).map(|y| s.epsilon(y)).collect();
    let adjunction = Adjunction::new(lifted.forgetful(), cofree, unit, counit).expect("forgetful ⊣ cofree");
    Coalgebras {
        comonad: s.clone(),
        lifted,
        structure,
        adjunction,
        index,
    }
}

/// The Kleisli category of a monad: `hom(x, x') = 𝔸(x, Tx')`.
#[derive(Clone, Debug)]
pub struct Kleisli {
    pub monad: Monad,
    pub category: Arc<FiniteCategory>,
    /// The morphism `x → Tx'` of the carrier behind each Kleisli morphism.
    pub underlying: Vec<MorId>,
    /// Left adjoint `x ↦ x`, `f ↦ η∘f`; right adjoint `x ↦ Tx`.
    pub adjunction: Adjunction,
    index: HashMap<(ObjId, ObjId, MorId), MorId>,
}

impl Kleisli {
    /// The Kleisli morphism `x → x'` given by `f: x → Tx'`.
    pub fn lift(&self, x: ObjId, x2: ObjId, f: MorId) -> Option<MorId> {
        self.index.get(&(x, x2, f)).copied()
    }
}

fn kleisli_table(
    c: &FiniteCategory,
    n: usize,
    hom: impl Fn(ObjId, ObjId) -> Vec<MorId>,
    identity: impl Fn(ObjId) -> MorId,
) -> (Vec<Morphism>, Vec<MorId>, Vec<MorId>, HashMap<(ObjId, ObjId, MorId), MorId>) {
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut identities = vec![0; n];
    let mut index = HashMap::new();
    for x in 0..n {
        for x2 in 0..n {
            for f in hom(x, x2) {
                let k = morphisms.len();
                let name = if x == x2 && f == identity(x) {
                    identities[x] = k;
                    format!("id:{}", c.object_name(x))
                } else {
                    format!("{}:{}->{}", c.morphism_name(f), c.object_name(x), c.object_name(x2))
                };
                morphisms.push(Morphism { name, dom: x, cod: x2 });
                underlying.push(f);
                index.insert((x, x2, f), k);
            }
        }
    }
    (morphisms, underlying, identities, index)
}

/// Kleisli category with `g ∘ f = μ ∘ Tg ∘ f` and identities `η`, and the
/// initial resolution of `m`.
pub fn kleisli_monad(m: &Monad) -> Kleisli {
    let c = m.carrier().clone();
    let n = c.num_objects();
    let (morphisms, underlying, identities, index) =
        kleisli_table(&c, n, |x, x2| c.hom(x, m.t_obj(x2)).to_vec(), |x| m.eta(x));
    let ms = morphisms.clone();
    let kl = FiniteCategory::generate(c.objects().to_vec(), morphisms, identities, |g, f| {
        let h = c.compose_path(&[underlying[f], m.t_mor(underlying[g]), m.mu(ms[g].cod)]);
        index.get(&(ms[f].dom, ms[g].cod, h)).copied().ok_or_else(|| FincatError::NotClosed {
            first: ms[f].name.clone(),
            then: ms[g].name.clone(),
        })
    })
    .expect("Kleisli composition is total")
    .into_arc();
    let left = Functor::from_fn(&c, &kl, |x| x, |f| index[&(c.dom(f), c.cod(f), c.compose(m.eta(c.cod(f)), f))])
        .expect("Kleisli left adjoint");
    let right = Functor::from_fn(&kl, &c, |x| m.t_obj(x), |k| {
        c.compose(m.mu(kl.cod(k)), m.t_mor(underlying[k]))
    })
    .expect("Kleisli right adjoint");
    let unit = (0..n).map(|x| m.eta(x)).collect();
    let counit = (0..n)
        .map(|x| index[&(m.t_obj(x), x, c.identity(m.t_obj(x)))])
        .collect();
    let adjunction = Adjunction::new(left, right, unit, counit).expect("Kleisli resolution");
    Kleisli {
        monad: m.clone(),
        category: kl,
        underlying,
        adjunction,
        index,
    }
}

/// The Kleisli category of a comonad: `hom(y, y') = 𝔹(Sy, y')`.
#[derive(Clone, Debug)]
pub struct KleisliComonad {
    pub comonad: Comonad,
    pub category: Arc<FiniteCategory>,
    /// The morphism `Sy → y'` of the carrier behind each Kleisli morphism.
    pub underlying: Vec<MorId>,
    /// Left adjoint `y ↦ Sy`, `g ↦ Sg ∘ ν`; right adjoint `y ↦ y`,
    /// `g ↦ g ∘ ε`.
    pub adjunction: Adjunction,
    index: HashMap<(ObjId, ObjId, MorId), MorId>,
}

impl KleisliComonad {
    pub fn lift(&self, y: ObjId, y2: ObjId, g: MorId) -> Option<MorId> {
        self.index.get(&(y, y2, g)).copied()
    }
}

/// Kleisli category with `h ∘ g = h ∘ Sg ∘ ν` and identities `ε`, and the
/// initial resolution of `s`.
pub fn kleisli_comonad(s: &Comonad) -> KleisliComonad {
    let c = s.carrier().clone();
    let n = c.num_objects();
    let (morphisms, underlying, identities, index) =
        kleisli_table(&c, n, |y, y2| c.hom(s.s_obj(y), y2).to_vec(), |y| s.epsilon(y));
    let ms = morphisms.clone();
    let kl = FiniteCategory::generate(c.objects().to_vec(), morphisms, identities, |h, g| {
        let k = c.compose_path(&[s.nu(ms[g].dom), s.s_mor(underlying[g]), underlying[h]]);
        index.get(&(ms[g].dom, ms[h].cod, k)).copied().ok_or_else(|| FincatError::NotClosed {
            first: ms[g].name.clone(),
            then: ms[h].name.clone(),
        })
    })
    .expect("Kleisli composition is total")
    .into_arc();
    let left = Functor::from_fn(&kl, &c, |y| s.s_obj(y), |g| {
        c.compose(s.s_mor(underlying[g]), s.nu(kl.dom(g)))
    })
    .expect("Kleisli left adjoint");
    let right = Functor::from_fn(&c, &kl, |y| y, |g| {
        index[&(c.dom(g), c.cod(g), c.compose(g, s.epsilon(c.dom(g))))]
    })
    .expect("Kleisli right adjoint");
    let unit = (0..n)
        .map(|y| index[&(y, s.s_obj(y), c.identity(s.s_obj(y)))])
        .collect();
    let counit = (0..n).map(|y| s.epsilon(y)).collect();
    let adjunction = Adjunction::new(left, right, unit, counit).expect("Kleisli resolution");
    KleisliComonad {
        comonad: s.clone(),
        category: kl,
        underlying,
        adjunction,
        index,
    }
}

/// `H₁: 𝔹 → 𝔸^T`, `y ↦ (Ǧy, Ǧε_y)`, `g ↦ Ǧg`. `algebras` must be built
/// from `monad_of(a)`.
pub fn comparison_h1(a: &Adjunction, algebras: &Algebras) -> Result<Functor, FincatError> {
    let b = a.codomain();
    let g = a.right();
    let obj: Vec<ObjId> = (0..b.num_objects())
        .map(|y| {
            algebras
                .find(g.obj(y), g.mor(a.epsilon(y)))
                .ok_or_else(|| FincatError::Structure(format!("Ǧε at `{}` is not an algebra", b.object_name(y))))
        })
        .collect::<Result<_, _>>()?;
    Functor::try_from_fn(b, algebras.category(), |y| Ok(obj[y]), |h| {
        algebras.lifted.lift_or_err(obj[b.dom(h)], obj[b.cod(h)], g.mor(h))
    })
}

/// `H⁰: 𝔸 → 𝔹_S`, `x ↦ (F̂x, F̂η_x)`, `f ↦ F̂f`. `coalgebras` must be built
/// from `comonad_of(a)`.
pub fn comparison_h0(a: &Adjunction, coalgebras: &Coalgebras) -> Result<Functor, FincatError> {
    let ca = a.domain();
    let f = a.left();
    let obj: Vec<ObjId> = (0..ca.num_objects())
        .map(|x| {
            coalgebras
                .find(f.obj(x), f.mor(a.eta(x)))
                .ok_or_else(|| FincatError::Structure(format!("F̂η at `{}` is not a coalgebra", ca.object_name(x))))
        })
        .collect::<Result<_, _>>()?;
    Functor::try_from_fn(ca, coalgebras.category(), |x| Ok(obj[x]), |h| {
        coalgebras.lifted.lift_or_err(obj[ca.dom(h)], obj[ca.cod(h)], f.mor(h))
    })
}

/// Convenience: both Eilenberg-Moore resolutions of an adjunction.
pub(crate) fn em_pair(a: &Adjunction) -> (Algebras, Coalgebras) {
    (em_algebras(&monad_of(a)), em_coalgebras(&comonad_of(a)))
}
