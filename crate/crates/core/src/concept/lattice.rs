use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::report::Report;

use super::{ConceptError, Context};

/// A fixed pair `(L, U)` with `L = ǦU` and `F̂L = U`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: FixedBitSet,
    pub intent: FixedBitSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeOptions {
    pub max_concepts: usize,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions {
            max_concepts: 1_000_000,
        }
    }
}

/// All concepts of a context, sorted lexicographically by extent (as the
/// list of object positions).
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    context: Context,
    concepts: Vec<Concept>,
    by_extent: HashMap<FixedBitSet, usize>,
    by_intent: HashMap<FixedBitSet, usize>,
}

fn prefix_eq(a: &FixedBitSet, b: &FixedBitSet, i: usize) -> bool {
    (0..i).all(|k| a.contains(k) == b.contains(k))
}

/// Closed attribute sets in lectic order (Ganter's NextClosure).
fn next_closure(c: &Context, max: usize) -> Result<Vec<FixedBitSet>, ConceptError> {
    let m = c.num_attributes();
    let mut current = c.close_attributes(&c.empty_attributes());
    let mut out = vec![current.clone()];
    'outer: loop {
        for i in (0..m).rev() {
            if current.contains(i) {
                continue;
            }
            let mut seed = current.clone();
            seed.set_range(i.., false);
            seed.insert(i);
            let next = c.close_attributes(&seed);
            if prefix_eq(&next, &current, i) {
                if out.len() >= max {
                    return Err(ConceptError::TooManyConcepts(max));
                }
                out.push(next.clone());
                current = next;
                continue 'outer;
            }
        }
        return Ok(out);
    }
}

/// Enumerate every concept of `c`.
pub fn concept_lattice(c: &Context, opts: LatticeOptions) -> Result<ConceptLattice, ConceptError> {
    let intents = next_closure(c, opts.max_concepts)?;
    let mut concepts: Vec<Concept> = intents
        .into_iter()
        .map(|intent| Concept {
            extent: c.extent(&intent),
            intent,
        })
        .collect();
    concepts.sort_by_cached_key(|k| k.extent.ones().collect::<Vec<_>>());
    let by_extent = concepts.iter().enumerate().map(|(i, k)| (k.extent.clone(), i)).collect();
    let by_intent = concepts.iter().enumerate().map(|(i, k)| (k.intent.clone(), i)).collect();
    Ok(ConceptLattice {
        context: c.clone(),
        concepts,
        by_extent,
        by_intent,
    })
}

impl ConceptLattice {
    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn find_extent(&self, extent: &FixedBitSet) -> Option<usize> {
        self.by_extent.get(extent).copied()
    }

    pub fn find_intent(&self, intent: &FixedBitSet) -> Option<usize> {
        self.by_intent.get(intent).copied()
    }

    /// `(L, U) ≤ (L', U')` iff `L ⊆ L'`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.concepts[i].extent.is_subset(&self.concepts[j].extent)
    }

    /// The meet: intersect extents. `None` only if the lattice is broken.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let mut l = self.concepts[i].extent.clone();
        l.intersect_with(&self.concepts[j].extent);
        self.find_extent(&l)
    }

    /// The join: intersect intents.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let mut u = self.concepts[i].intent.clone();
        u.intersect_with(&self.concepts[j].intent);
        self.find_intent(&u)
    }

    pub fn bottom(&self) -> usize {
        self.find_extent(&self.context.close_objects(&self.context.empty_objects()))
            .expect("closure of the empty set is an extent")
    }

    pub fn top(&self) -> usize {
        self.find_intent(&self.context.close_attributes(&self.context.empty_attributes()))
            .expect("closure of the empty set is an intent")
    }

    /// Covering pairs `(lower, upper)` of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let below = |i: usize, j: usize| i != j && self.leq(i, j);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if below(i, j) && !(0..n).any(|k| below(i, k) && below(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Display name of a concept: its extent and intent by element names.
    pub fn name(&self, i: usize) -> String {
        let k = &self.concepts[i];
        format!(
            "({{{}}}, {{{}}})",
            self.context.object_names(&k.extent).join(","),
            self.context.attribute_names(&k.intent).join(",")
        )
    }

    /// Check the fixed-point equations, the order, closure of meets and
    /// joins, and that extents, intents and cuts are order-isomorphic.
    pub fn verify(&self) -> Report {
        let c = &self.context;
        let mut r = Report::new();
        for (i, k) in self.concepts.iter().enumerate() {
            r.require(c.extent(&k.intent) == k.extent, "cut fixed point L = ǦU", || self.name(i));
            r.require(c.intent(&k.extent) == k.intent, "cut fixed point F̂L = U", || self.name(i));
            r.require(c.object_order().is_lower_set(&k.extent), "extent lower-closed", || self.name(i));
            r.require(c.attribute_order().is_upper_set(&k.intent), "intent upper-closed", || {
                self.name(i)
            });
            r.require(c.close_objects(&k.extent) == k.extent, "closure fixed point", || self.name(i));
            r.require(c.close_attributes(&k.intent) == k.intent, "interior fixed point", || {
                self.name(i)
            });
        }
        r.require(self.by_extent.len() == self.len(), "extents distinct", String::new);
        r.require(self.by_intent.len() == self.len(), "intents distinct", String::new);
        for i in 0..self.len() {
            for j in 0..self.len() {
                let (a, b) = (&self.concepts[i], &self.concepts[j]);
                let ext = a.extent.is_subset(&b.extent);
                let int = b.intent.is_subset(&a.intent);
                r.require(ext == int, "cut order L ⊆ L' ⇔ U ⊇ U'", || {
                    format!("{} vs {}", self.name(i), self.name(j))
                });
                r.require(self.meet(i, j).is_some(), "meet is a concept", || {
                    format!("{} ∧ {}", self.name(i), self.name(j))
                });
                r.require(self.join(i, j).is_some(), "join is a concept", || {
                    format!("{} ∨ {}", self.name(i), self.name(j))
                });
            }
        }
        r
    }
}
