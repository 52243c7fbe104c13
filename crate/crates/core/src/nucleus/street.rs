use crate::fincat::{equivalent, find_natural_iso, EquivalenceOutcome, IsoOutcome, NaturalTransformation};

use super::big::{karoubi_comonad, require_complete};
use super::{
    comonad_of, em_algebras, em_coalgebras, karoubi_monad, kleisli_comonad, kleisli_monad, monad_of, Comonad, Monad,
    NucleusError, NucleusOptions,
};

fn prepare_monad(m: &Monad, opts: NucleusOptions) -> Result<Monad, NucleusError> {
    if opts.karoubi {
        Ok(karoubi_monad(m)?.1)
    } else {
        require_complete(m.carrier(), "carrier")?;
        Ok(m.clone())
    }
}

/// Kleisli resolution, its comonad, the coalgebra resolution of that, and
/// the monad it induces.
pub fn street_nucleus_monad(m: &Monad, opts: NucleusOptions) -> Result<Monad, NucleusError> {
    let m = prepare_monad(m, opts)?;
    let kl = kleisli_monad(&m);
    let coalgebras = em_coalgebras(&comonad_of(&kl.adjunction));
    Ok(monad_of(&coalgebras.adjunction))
}

/// Kleisli resolution, its monad, the algebra resolution of that, and the
/// comonad it induces.
pub fn street_nucleus_comonad(s: &Comonad, opts: NucleusOptions) -> Result<Comonad, NucleusError> {
    let s = if opts.karoubi {
        karoubi_comonad(s)?.1
    } else {
        require_complete(s.carrier(), "carrier")?;
        s.clone()
    };
    let kl = kleisli_comonad(&s);
    let algebras = em_algebras(&monad_of(&kl.adjunction));
    Ok(comonad_of(&algebras.adjunction))
}

/// Outcome of applying the Street construction twice.
#[derive(Clone, Debug)]
pub struct StreetIdempotence {
    pub once: Monad,
    pub twice: Monad,
    /// Equivalence search between the two carriers; `forward` goes from
    /// the twice-applied carrier to the once-applied one.
    pub carriers: EquivalenceOutcome,
    /// A natural isomorphism `T₁ ∘ E ≅ E ∘ T₂` across the equivalence `E`.
    pub transport: Option<IsoOutcome<NaturalTransformation>>,
}

impl StreetIdempotence {
    pub fn holds(&self) -> bool {
        self.carriers.is_equivalent() && matches!(self.transport, Some(IsoOutcome::Found(_)))
    }

    pub fn is_undecided(&self) -> bool {
        self.carriers.is_undecided() || matches!(self.transport, Some(IsoOutcome::Undecided))
    }
}

/// Apply [`street_nucleus_monad`] twice and compare the results.
pub fn check_street_idempotence(m: &Monad, opts: NucleusOptions, cap: u64) -> Result<StreetIdempotence, NucleusError> {
    let once = street_nucleus_monad(m, opts)?;
    let twice = street_nucleus_monad(&once, NucleusOptions::default())?;
    let carriers = equivalent(twice.carrier(), once.carrier(), cap);
    let transport = match &carriers {
        EquivalenceOutcome::Equivalent { forward, .. } => {
            let lhs = once.endofunctor().after(forward);
            let rhs = forward.after(twice.endofunctor());
            Some(find_natural_iso(&lhs, &rhs, cap)?)
        }
        _ => None,
    };
    Ok(StreetIdempotence {
        once,
        twice,
        carriers,
        transport,
    })
}
