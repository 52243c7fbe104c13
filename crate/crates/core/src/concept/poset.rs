use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::ConceptError;

/// A finite partial order. Row `i` of `up` is the set `{j | i ≤ j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    up: Vec<FixedBitSet>,
}

/// JSON form: element names and generating pairs `[a, b]` meaning `a ≤ b`.
/// The order is the reflexive-transitive closure of the pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
}

impl Poset {
    /// The discrete order on `elements`.
    pub fn discrete(elements: Vec<String>) -> Self {
        let n = elements.len();
        let up = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        Poset { elements, up }
    }

    /// Build from a relation matrix, which must already be a partial order.
    pub fn from_relation(elements: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, ConceptError> {
        let n = elements.len();
        let up = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                for j in 0..n {
                    row.set(j, leq(i, j));
                }
                row
            })
            .collect();
        let p = Poset { elements, up };
        p.check_axioms()?;
        Ok(p)
    }

    /// The order generated by `pairs` (reflexive-transitive closure). Fails
    /// if the closure is not antisymmetric.
    pub fn generated(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, ConceptError> {
        let n = elements.len();
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        for &(a, b) in pairs {
            up[a].insert(b);
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    let row = up[k].clone();
                    up[i].union_with(&row);
                }
            }
        }
        let p = Poset { elements, up };
        p.check_axioms()?;
        Ok(p)
    }

    pub fn from_json(json: &PosetJson) -> Result<Self, ConceptError> {
        let index: HashMap<&str, usize> = json.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != json.elements.len() {
            return Err(ConceptError::InvalidOrder("duplicate element".into()));
        }
        let find = |s: &str| index.get(s).copied().ok_or_else(|| ConceptError::UnknownElement(s.to_string()));
        let pairs = json
            .order
            .iter()
            .map(|(a, b)| Ok((find(a)?, find(b)?)))
            .collect::<Result<Vec<_>, ConceptError>>()?;
        Poset::generated(json.elements.clone(), &pairs)
    }

    pub fn to_json(&self) -> PosetJson {
        let n = self.len();
        let order = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| i != j && self.leq(i, j)).map(move |j| (i, j)))
            .map(|(i, j)| (self.elements[i].clone(), self.elements[j].clone()))
            .collect();
        PosetJson {
            elements: self.elements.clone(),
            order,
        }
    }

    fn check_axioms(&self) -> Result<(), ConceptError> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(ConceptError::InvalidOrder(format!("not reflexive at {}", self.elements[i])));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(ConceptError::InvalidOrder(format!(
                        "not antisymmetric at ({}, {})",
                        self.elements[i], self.elements[j]
                    )));
                }
                if self.leq(i, j) && !self.up[j].is_subset(&self.up[i]) {
                    return Err(ConceptError::InvalidOrder(format!(
                        "not transitive above ({}, {})",
                        self.elements[i], self.elements[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn is_discrete(&self) -> bool {
        self.up.iter().all(|r| r.count_ones(..) == 1)
    }

    /// `{j | i ≤ j}`.
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    /// `{j | j ≤ i}`.
    pub fn down_set(&self, i: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        for j in 0..self.len() {
            s.set(j, self.leq(j, i));
        }
        s
    }

    pub fn is_lower_set(&self, s: &FixedBitSet) -> bool {
        s.ones().all(|i| self.down_set(i).is_subset(s))
    }

    pub fn is_upper_set(&self, s: &FixedBitSet) -> bool {
        s.ones().all(|i| self.up[i].is_subset(s))
    }

    /// Smallest lower set containing `s`.
    pub fn down_closure(&self, s: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for i in s.ones() {
            out.union_with(&self.down_set(i));
        }
        out
    }

    /// Smallest upper set containing `s`.
    pub fn up_closure(&self, s: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for i in s.ones() {
            out.union_with(&self.up[i]);
        }
        out
    }

    /// Elements listed so that every element comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&i| (self.down_set(i).count_ones(..), i));
        idx
    }

    /// Greatest lower bound of `i` and `j`, if it exists.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&k| self.leq(k, i) && self.leq(k, j)).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&k| self.leq(k, m)))
    }

    /// Least upper bound of `i` and `j`, if it exists.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&k| self.leq(i, k) && self.leq(j, k)).collect();
        upper.iter().copied().find(|&m| upper.iter().all(|&k| self.leq(m, k)))
    }
}
