use serde::{Deserialize, Serialize};

use super::{FincatError, FiniteCategory, MorId};
use crate::report::Report;

/// The diagram `A --i--> B ==f,j==> C` with retractions `q: B → A` and
/// `r: C → B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitEqualizer {
    pub i: MorId,
    pub q: MorId,
    pub f: MorId,
    pub j: MorId,
    pub r: MorId,
}

/// What [`check_split_equalizer`] found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEqualizerOutcome {
    /// `r∘f` is idempotent.
    pub idempotent: bool,
    /// `i∘q = r∘f`.
    pub composite_condition: bool,
    /// `i` is an equalizer of `f` and `j`, decided from the universal
    /// property.
    pub is_equalizer: bool,
    pub report: Report,
}

impl SplitEqualizer {
    fn typed(&self, c: &FiniteCategory) -> bool {
        let (a, b, cc) = (c.dom(self.i), c.cod(self.i), c.cod(self.f));
        c.dom(self.q) == b
            && c.cod(self.q) == a
            && c.dom(self.f) == b
            && c.dom(self.j) == b
            && c.cod(self.j) == cc
            && c.dom(self.r) == cc
            && c.cod(self.r) == b
    }

    /// Whether the three defining equations hold.
    pub fn preconditions(&self, c: &FiniteCategory) -> Result<(), FincatError> {
        if !self.typed(c) {
            return Err(FincatError::Precondition("the six morphisms do not form the diagram".into()));
        }
        let (a, b) = (c.dom(self.i), c.cod(self.i));
        if c.compose(self.q, self.i) != c.identity(a) {
            return Err(FincatError::Precondition("q∘i is not the identity".into()));
        }
        if c.compose(self.r, self.j) != c.identity(b) {
            return Err(FincatError::Precondition("r∘j is not the identity".into()));
        }
        let rf = c.compose(self.r, self.f);
        if c.compose(self.f, rf) != c.compose(self.j, rf) {
            return Err(FincatError::Precondition("f∘r∘f differs from j∘r∘f".into()));
        }
        Ok(())
    }
}

/// Whether `i` equalizes `f` and `j` universally: `f∘i = j∘i`, and every
/// `h` with `f∘h = j∘h` factors through `i` uniquely.
pub fn is_equalizer(c: &FiniteCategory, i: MorId, f: MorId, j: MorId) -> bool {
    if c.compose(f, i) != c.compose(j, i) {
        return false;
    }
    let (a, b) = (c.dom(i), c.cod(i));
    (0..c.num_objects()).all(|x| {
        c.hom(x, b).iter().all(|&h| {
            if c.compose(f, h) != c.compose(j, h) {
                return true;
            }
            c.hom(x, a).iter().filter(|&&k| c.compose(i, k) == h).count() == 1
        })
    })
}

/// Check a split-equalizer diagram: `r∘f` idempotent, and whether the
/// condition `i∘q = r∘f` agrees with `i` being an equalizer.
pub fn check_split_equalizer(c: &FiniteCategory, d: &SplitEqualizer) -> Result<SplitEqualizerOutcome, FincatError> {
    d.preconditions(c)?;
    let rf = c.compose(d.r, d.f);
    let idempotent = c.compose(rf, rf) == rf;
    let composite_condition = c.compose(d.i, d.q) == rf;
    let equalizer = is_equalizer(c, d.i, d.f, d.j);
    let mut report = Report::new();
    let loc = || {
        format!(
            "(i={}, q={}, f={}, j={}, r={})",
            c.morphism_name(d.i),
            c.morphism_name(d.q),
            c.morphism_name(d.f),
            c.morphism_name(d.j),
            c.morphism_name(d.r)
        )
    };
    report.require(idempotent, "r∘f idempotent", loc);
    report.require(
        composite_condition == equalizer,
        "equalizer iff i∘q = r∘f",
        || format!("{} with i∘q = r∘f: {}, equalizer: {}", loc(), composite_condition, equalizer),
    );
    Ok(SplitEqualizerOutcome {
        idempotent,
        composite_condition,
        is_equalizer: equalizer,
        report,
    })
}
