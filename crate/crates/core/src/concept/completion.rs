use crate::report::Report;

use super::{concept_lattice, ConceptError, ConceptLattice, Context, LatticeOptions, Poset};

/// The Dedekind-MacNeille completion of a poset and its embedding.
#[derive(Clone, Debug)]
pub struct Completion {
    pub poset: Poset,
    pub lattice: ConceptLattice,
    /// `embedding[x]` is the concept `(↓x, ↑x)`.
    pub embedding: Vec<usize>,
}

/// Concepts of the context `(P, P, ≤)`.
pub fn dedekind_macneille(p: &Poset, opts: LatticeOptions) -> Result<Completion, ConceptError> {
    let ctx = Context::with_orders(p.clone(), p.clone(), |a, b| p.leq(a, b))?;
    let lattice = concept_lattice(&ctx, opts)?;
    let embedding = (0..p.len())
        .map(|x| {
            lattice
                .find_extent(&p.down_set(x))
                .ok_or_else(|| ConceptError::Construction(format!("↓{} is not an extent", p.elements()[x])))
        })
        .collect::<Result<_, _>>()?;
    Ok(Completion {
        poset: p.clone(),
        lattice,
        embedding,
    })
}

impl Completion {
    /// Check that the embedding is injective, preserves and reflects the
    /// order, and preserves every binary meet and join that exists.
    pub fn verify(&self) -> Report {
        let p = &self.poset;
        let e = &self.embedding;
        let name = |x: usize| p.elements()[x].clone();
        let mut r = self.lattice.verify();
        for x in 0..p.len() {
            for y in 0..p.len() {
                r.require(x == y || e[x] != e[y], "embedding injective", || format!("{}, {}", name(x), name(y)));
                r.require(p.leq(x, y) == self.lattice.leq(e[x], e[y]), "embedding order", || {
                    format!("{}, {}", name(x), name(y))
                });
                if let Some(m) = p.meet(x, y) {
                    r.require(self.lattice.meet(e[x], e[y]) == Some(e[m]), "meet preserved", || {
                        format!("{} ∧ {}", name(x), name(y))
                    });
                }
                if let Some(j) = p.join(x, y) {
                    r.require(self.lattice.join(e[x], e[y]) == Some(e[j]), "join preserved", || {
                        format!("{} ∨ {}", name(x), name(y))
                    });
                }
            }
        }
        r
    }
}
