use std::fmt;

use crate::fincat::{
    is_equivalence, iso_classes, karoubi_envelope, EquivalenceCheck, FincatError, FiniteCategory, Functor, Karoubi,
    MorId, ObjId,
};
use crate::report::Report;

use super::resolutions::em_pair;
use super::{
    comonad_of, comparison_h0, comparison_h1, kleisli_comonad, kleisli_monad, monad_of, Adjunction, Algebras,
    Coalgebras, Comonad, Monad, NucleusError,
};

/// Options shared by the constructions that need idempotent-complete
/// carriers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NucleusOptions {
    /// Replace the carriers by their Karoubi envelopes instead of refusing
    /// carriers with non-split idempotents.
    pub karoubi: bool,
}

/// The nucleus together with the data it is built from.
#[derive(Clone, Debug)]
pub struct NucleusData {
    /// The adjunction the nucleus was computed from, after the optional
    /// Karoubi completion.
    pub input: Adjunction,
    pub algebras: Algebras,
    pub coalgebras: Coalgebras,
    /// `H₁: 𝔹 → 𝔸^T`.
    pub h1: Functor,
    /// `H⁰: 𝔸 → 𝔹_S`.
    pub h0: Functor,
    /// Left adjoint `H₁ ∘ V: 𝔹_S → 𝔸^T`, right adjoint `H⁰ ∘ U`, unit the
    /// coalgebra structures and counit the algebra structures.
    pub adjunction: Adjunction,
}

pub(crate) fn require_complete(c: &FiniteCategory, side: &str) -> Result<(), NucleusError> {
    match c.non_split_idempotent() {
        None => Ok(()),
        Some(e) => Err(NucleusError::NotIdempotentComplete {
            side: side.to_string(),
            idempotent: c.morphism_name(e).to_string(),
        }),
    }
}

/// Compute the nucleus, refusing carriers with non-split idempotents
/// unless `opts.karoubi` is set.
pub fn nucleus_data(a: &Adjunction, opts: NucleusOptions) -> Result<NucleusData, NucleusError> {
    let a = if opts.karoubi {
        karoubi_adjunction(a)?.adjunction
    } else {
        require_complete(a.domain(), "domain")?;
        require_complete(a.codomain(), "codomain")?;
        a.clone()
    };
    nucleus_data_unchecked(&a)
}

/// The nucleus construction without the idempotent-completeness
/// precondition.
pub fn nucleus_data_unchecked(a: &Adjunction) -> Result<NucleusData, NucleusError> {
    let (algebras, coalgebras) = em_pair(a);
    let h1 = comparison_h1(a, &algebras)?;
    let h0 = comparison_h0(a, &coalgebras)?;
    let left = h1.after(coalgebras.forgetful());
    let right = h0.after(algebras.forgetful());
    let (alg, coalg) = (algebras.category(), coalgebras.category());
    let unit = (0..coalg.num_objects())
        .map(|i| coalgebras.lifted.lift_or_err(i, right.obj(left.obj(i)), coalgebras.structure[i]))
        .collect::<Result<_, _>>()?;
    let counit = (0..alg.num_objects())
        .map(|k| algebras.lifted.lift_or_err(left.obj(right.obj(k)), k, algebras.structure[k]))
        .collect::<Result<_, _>>()?;
    let adjunction = Adjunction::new(left, right, unit, counit)?;
    Ok(NucleusData {
        input: a.clone(),
        algebras,
        coalgebras,
        h1,
        h0,
        adjunction,
    })
}

/// The nucleus adjunction `𝔹_S ⇄ 𝔸^T`.
pub fn nucleus(a: &Adjunction, opts: NucleusOptions) -> Result<Adjunction, NucleusError> {
    Ok(nucleus_data(a, opts)?.adjunction)
}

/// Check that `f ↦ F̂f ∘ β` and `g ↦ α ∘ Ǧg` are mutually inverse between
/// `𝔸^T(H₁y, (x, α))` and `𝔹_S((y, β), H⁰x)` for every coalgebra and
/// algebra.
pub fn check_hom_bijection(d: &NucleusData) -> Report {
    let mut r = Report::new();
    let a = &d.input;
    let (ca, cb) = (a.domain(), a.codomain());
    let (fh, gc) = (a.left(), a.right());
    let (alg, coalg) = (&d.algebras, &d.coalgebras);
    let (left, right) = (d.adjunction.left(), d.adjunction.right());
    for i in 0..coalg.category().num_objects() {
        let (y, beta) = (coalg.carrier(i), coalg.structure[i]);
        let li = left.obj(i);
        for k in 0..alg.category().num_objects() {
            let (x, alpha) = (alg.carrier(k), alg.structure[k]);
            let rk = right.obj(k);
            let loc = || format!("({}, {})", coalg.category().object_name(i), alg.category().object_name(k));
            let p: Vec<MorId> = ca
                .hom(gc.obj(y), x)
                .iter()
                .copied()
                .filter(|&f| alg.lifted.lift(li, k, f).is_some())
                .collect();
            let q: Vec<MorId> = cb
                .hom(y, fh.obj(x))
                .iter()
                .copied()
                .filter(|&g| coalg.lifted.lift(i, rk, g).is_some())
                .collect();
            let phi = |f: MorId| cb.compose(fh.mor(f), beta);
            let psi = |g: MorId| ca.compose(alpha, gc.mor(g));
            let forward_ok = p.iter().all(|&f| q.contains(&phi(f)) && psi(phi(f)) == f);
            let backward_ok = q.iter().all(|&g| p.contains(&psi(g)) && phi(psi(g)) == g);
            r.require(forward_ok, "hom bijection: g ∘ f̄ round trip on algebra maps", loc);
            r.require(backward_ok, "hom bijection: f̄ ∘ g round trip on coalgebra maps", loc);
        }
    }
    r
}

/// Evaluate the four squares for an algebra `(x, α)`, a coalgebra
/// `(y, β)` and `f: Ǧy → x`, with `f̄ = F̂f ∘ β`:
///
/// 1. `α ∘ ǦF̂f = f ∘ Ǧε_y`
/// 2. `α ∘ ǦF̂f ∘ Ǧβ = f`
/// 3. `F̂α ∘ F̂Ǧf̄ ∘ β = f̄`
/// 4. `F̂Ǧf̄ ∘ β = F̂η_x ∘ f̄`
pub fn lemma_a_squares(a: &Adjunction, algebra: (ObjId, MorId), coalgebra: (ObjId, MorId), f: MorId) -> [bool; 4] {
    let (ca, cb) = (a.domain(), a.codomain());
    let (fh, gc) = (a.left(), a.right());
    let ((x, alpha), (y, beta)) = (algebra, coalgebra);
    let gff = gc.mor(fh.mor(f));
    let fbar = cb.compose(fh.mor(f), beta);
    let fgfbar = fh.mor(gc.mor(fbar));
    [
        ca.compose(alpha, gff) == ca.compose(f, gc.mor(a.epsilon(y))),
        ca.compose_path(&[gc.mor(beta), gff, alpha]) == f,
        cb.compose_path(&[beta, fgfbar, fh.mor(alpha)]) == fbar,
        cb.compose(fgfbar, beta) == cb.compose(fh.mor(a.eta(x)), fbar),
    ]
}

/// Evidence for [`is_nuclear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuclearEvidence {
    /// Whether `H₁: 𝔹 → 𝔸^T` is an equivalence.
    pub h1: EquivalenceCheck,
    /// Whether `H⁰: 𝔸 → 𝔹_S` is an equivalence.
    pub h0: EquivalenceCheck,
}

impl NuclearEvidence {
    pub fn holds(&self) -> bool {
        self.h1.holds() && self.h0.holds()
    }
}

impl fmt::Display for NuclearEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H₁: {}; H⁰: {}", self.h1, self.h0)
    }
}

/// Nuclear: the right adjoint is monadic and the left comonadic, i.e.
/// both comparison functors are equivalences.
pub fn is_nuclear(a: &Adjunction) -> Result<NuclearEvidence, NucleusError> {
    let (algebras, coalgebras) = em_pair(a);
    let h1 = comparison_h1(a, &algebras)?;
    let h0 = comparison_h0(a, &coalgebras)?;
    Ok(NuclearEvidence {
        h1: is_equivalence(&h1),
        h0: is_equivalence(&h0),
    })
}

/// Evidence for [`is_subnuclear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubnuclearEvidence {
    pub left_essentially_surjective: bool,
    pub right_essentially_surjective: bool,
    /// `E¹: Kl_T → 𝔹`, checked only when `F̂` is essentially surjective.
    pub e1: Option<EquivalenceCheck>,
    /// `E₀: Kl_S → 𝔸`, checked only when `Ǧ` is essentially surjective.
    pub e0: Option<EquivalenceCheck>,
}

impl SubnuclearEvidence {
    pub fn holds(&self) -> bool {
        self.left_essentially_surjective
            && self.right_essentially_surjective
            && self.e1.as_ref().is_some_and(EquivalenceCheck::holds)
            && self.e0.as_ref().is_some_and(EquivalenceCheck::holds)
    }
}

fn essentially_surjective(f: &Functor) -> bool {
    let mut hit = vec![false; f.target().num_objects()];
    for &y in f.object_map() {
        hit[y] = true;
    }
    iso_classes(f.target()).iter().all(|cl| cl.iter().any(|&y| hit[y]))
}

/// Subnuclear: both categories are recovered as Kleisli categories, i.e.
/// `E¹: Kl_T → 𝔹` and `E₀: Kl_S → 𝔸` are equivalences.
pub fn is_subnuclear(a: &Adjunction) -> Result<SubnuclearEvidence, NucleusError> {
    let (ca, cb) = (a.domain(), a.codomain());
    let (fh, gc) = (a.left(), a.right());
    let left_es = essentially_surjective(fh);
    let right_es = essentially_surjective(gc);
    let e1 = if left_es {
        let kl = kleisli_monad(&monad_of(a));
        let e1 = Functor::from_fn(&kl.category, cb, |x| fh.obj(x), |k| {
            let x2 = kl.category.cod(k);
            cb.compose(a.epsilon(fh.obj(x2)), fh.mor(kl.underlying[k]))
        })?;
        Some(is_equivalence(&e1))
    } else {
        None
    };
    let e0 = if right_es {
        let kl = kleisli_comonad(&comonad_of(a));
        let e0 = Functor::from_fn(&kl.category, ca, |y| gc.obj(y), |k| {
            let y = kl.category.dom(k);
            ca.compose(gc.mor(kl.underlying[k]), a.eta(gc.obj(y)))
        })?;
        Some(is_equivalence(&e0))
    } else {
        None
    };
    Ok(SubnuclearEvidence {
        left_essentially_surjective: left_es,
        right_essentially_surjective: right_es,
        e1,
        e0,
    })
}

/// An adjunction transported to the Karoubi envelopes of its carriers.
#[derive(Clone, Debug)]
pub struct KaroubiAdjunction {
    pub domain: Karoubi,
    pub codomain: Karoubi,
    /// `(x, e) ↦ (F̂x, F̂e)` and `(y, d) ↦ (Ǧy, Ǧd)`, unit `η ∘ e`, counit
    /// `ε ∘ F̂Ǧd`.
    pub adjunction: Adjunction,
}

fn kar_functor(src: &Karoubi, tgt: &Karoubi, f: &Functor) -> Result<Functor, FincatError> {
    let obj: Vec<ObjId> = src
        .idempotents
        .iter()
        .map(|&e| tgt.object_of(f.mor(e)).expect("functors preserve idempotents"))
        .collect();
    let sc = src.category();
    Functor::try_from_fn(sc, tgt.category(), |i| Ok(obj[i]), |m| {
        tgt.lifted
            .lift_or_err(obj[sc.dom(m)], obj[sc.cod(m)], f.mor(src.lifted.underlying[m]))
    })
}

pub fn karoubi_adjunction(a: &Adjunction) -> Result<KaroubiAdjunction, NucleusError> {
    let (ca, cb) = (a.domain(), a.codomain());
    let ka = karoubi_envelope(ca);
    let kb = karoubi_envelope(cb);
    let left = kar_functor(&ka, &kb, a.left())?;
    let right = kar_functor(&kb, &ka, a.right())?;
    let unit = (0..ka.category().num_objects())
        .map(|i| {
            let e = ka.idempotents[i];
            let u = ca.compose(a.eta(ca.dom(e)), e);
            ka.lifted.lift_or_err(i, right.obj(left.obj(i)), u)
        })
        .collect::<Result<_, _>>()?;
    let counit = (0..kb.category().num_objects())
        .map(|j| {
            let d = kb.idempotents[j];
            let c = cb.compose(a.epsilon(cb.dom(d)), a.left().mor(a.right().mor(d)));
            kb.lifted.lift_or_err(left.obj(right.obj(j)), j, c)
        })
        .collect::<Result<_, _>>()?;
    let adjunction = Adjunction::new(left, right, unit, counit)?;
    Ok(KaroubiAdjunction {
        domain: ka,
        codomain: kb,
        adjunction,
    })
}

/// The monad `e ↦ Te` on the Karoubi envelope of the carrier, with
/// `η ∘ e` and `μ ∘ TTe`.
pub fn karoubi_monad(m: &Monad) -> Result<(Karoubi, Monad), NucleusError> {
    let c = m.carrier();
    let k = karoubi_envelope(c);
    let t = kar_functor(&k, &k, m.endofunctor())?;
    let n = k.category().num_objects();
    let eta = (0..n)
        .map(|i| {
            let e = k.idempotents[i];
            k.lifted.lift_or_err(i, t.obj(i), c.compose(m.eta(c.dom(e)), e))
        })
        .collect::<Result<_, _>>()?;
    let mu = (0..n)
        .map(|i| {
            let e = k.idempotents[i];
            let tte = m.t_mor(m.t_mor(e));
            k.lifted.lift_or_err(t.obj(t.obj(i)), t.obj(i), c.compose(m.mu(c.dom(e)), tte))
        })
        .collect::<Result<_, _>>()?;
    let monad = Monad::new(t, eta, mu)?;
    Ok((k, monad))
}

/// The comonad `d ↦ Sd` on the Karoubi envelope of the carrier, with
/// `ε ∘ Sd` and `SSd ∘ ν`.
pub fn karoubi_comonad(s: &Comonad) -> Result<(Karoubi, Comonad), NucleusError> {
    let c = s.carrier();
    let k = karoubi_envelope(c);
    let t = kar_functor(&k, &k, s.endofunctor())?;
    let n = k.category().num_objects();
    let epsilon = (0..n)
        .map(|i| {
            let d = k.idempotents[i];
            k.lifted.lift_or_err(t.obj(i), i, c.compose(s.epsilon(c.dom(d)), s.s_mor(d)))
        })
        .collect::<Result<_, _>>()?;
    let nu = (0..n)
        .map(|i| {
            let d = k.idempotents[i];
            let ssd = s.s_mor(s.s_mor(d));
            k.lifted.lift_or_err(t.obj(i), t.obj(t.obj(i)), c.compose(ssd, s.nu(c.dom(d))))
        })
        .collect::<Result<_, _>>()?;
    let comonad = Comonad::new(t, epsilon, nu)?;
    Ok((k, comonad))
}
