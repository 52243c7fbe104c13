use fixedbitset::FixedBitSet;

use super::{ConceptError, Poset};

/// A formal context: objects, attributes and an incidence relation, with
/// optional orders on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    objects: Poset,
    attributes: Poset,
    /// `rows[a]` = attributes of object `a`.
    rows: Vec<FixedBitSet>,
    /// `cols[b]` = objects having attribute `b`.
    cols: Vec<FixedBitSet>,
}

impl Context {
    /// A context with discrete orders.
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, ConceptError> {
        Context::with_orders(Poset::discrete(objects), Poset::discrete(attributes), incidence)
    }

    /// A context over ordered objects and attributes. The incidence must be
    /// lower-closed in the objects and upper-closed in the attributes; it is
    /// checked, not repaired.
    pub fn with_orders(
        objects: Poset,
        attributes: Poset,
        incidence: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, ConceptError> {
        let (n, m) = (objects.len(), attributes.len());
        check_unique(objects.elements(), "object")?;
        check_unique(attributes.elements(), "attribute")?;
        let mut rows = vec![FixedBitSet::with_capacity(m); n];
        let mut cols = vec![FixedBitSet::with_capacity(n); m];
        for a in 0..n {
            for b in 0..m {
                if incidence(a, b) {
                    rows[a].insert(b);
                    cols[b].insert(a);
                }
            }
        }
        let c = Context {
            objects,
            attributes,
            rows,
            cols,
        };
        c.check_monotone()?;
        Ok(c)
    }

    /// Build from object names paired with the names of their attributes.
    pub fn from_rows(attributes: &[&str], rows: &[(&str, &[&str])]) -> Result<Self, ConceptError> {
        let attrs: Vec<String> = attributes.iter().map(|s| s.to_string()).collect();
        let objs: Vec<String> = rows.iter().map(|(o, _)| o.to_string()).collect();
        for (_, r) in rows {
            for b in r.iter() {
                if !attributes.contains(b) {
                    return Err(ConceptError::UnknownAttribute(b.to_string()));
                }
            }
        }
        Context::new(objs, attrs, |a, b| rows[a].1.contains(&attributes[b]))
    }

    fn check_monotone(&self) -> Result<(), ConceptError> {
        for a in 0..self.num_objects() {
            for b in self.rows[a].ones() {
                for a2 in self.objects.down_set(a).ones() {
                    for b2 in self.attributes.up_set(b).ones() {
                        if !self.incident(a2, b2) {
                            return Err(ConceptError::NotClosed(format!(
                                "{} ≤ {}, {} has {}, {} ≤ {}, but {} lacks {}",
                                self.object_name(a2),
                                self.object_name(a),
                                self.object_name(a),
                                self.attribute_name(b),
                                self.attribute_name(b),
                                self.attribute_name(b2),
                                self.object_name(a2),
                                self.attribute_name(b2)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.rows.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.cols.len()
    }

    pub fn objects(&self) -> &[String] {
        self.objects.elements()
    }

    pub fn attributes(&self) -> &[String] {
        self.attributes.elements()
    }

    pub fn object_order(&self) -> &Poset {
        &self.objects
    }

    pub fn attribute_order(&self) -> &Poset {
        &self.attributes
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects.elements()[a]
    }

    pub fn attribute_name(&self, b: usize) -> &str {
        &self.attributes.elements()[b]
    }

    pub fn incident(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn row(&self, a: usize) -> &FixedBitSet {
        &self.rows[a]
    }

    pub fn column(&self, b: usize) -> &FixedBitSet {
        &self.cols[b]
    }

    pub fn empty_objects(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.num_objects())
    }

    pub fn empty_attributes(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.num_attributes())
    }

    pub fn all_objects(&self) -> FixedBitSet {
        let mut s = self.empty_objects();
        s.insert_range(..);
        s
    }

    pub fn all_attributes(&self) -> FixedBitSet {
        let mut s = self.empty_attributes();
        s.insert_range(..);
        s
    }

    /// `F̂L`: the attributes shared by every object of `l`.
    pub fn intent(&self, l: &FixedBitSet) -> FixedBitSet {
        let mut out = self.all_attributes();
        for a in l.ones() {
            out.intersect_with(&self.rows[a]);
        }
        out
    }

    /// `ǦU`: the objects having every attribute of `u`.
    pub fn extent(&self, u: &FixedBitSet) -> FixedBitSet {
        let mut out = self.all_objects();
        for b in u.ones() {
            out.intersect_with(&self.cols[b]);
        }
        out
    }

    /// The closure `ǦF̂` on object sets.
    pub fn close_objects(&self, l: &FixedBitSet) -> FixedBitSet {
        self.extent(&self.intent(l))
    }

    /// The interior `F̂Ǧ` on attribute sets (a closure for `⊆`, an interior
    /// for the reversed order on upper sets).
    pub fn close_attributes(&self, u: &FixedBitSet) -> FixedBitSet {
        self.intent(&self.extent(u))
    }

    pub fn object_set(&self, names: &[&str]) -> Result<FixedBitSet, ConceptError> {
        let mut s = self.empty_objects();
        for n in names {
            let i = self
                .objects
                .index_of(n)
                .ok_or_else(|| ConceptError::UnknownObject(n.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn attribute_set(&self, names: &[&str]) -> Result<FixedBitSet, ConceptError> {
        let mut s = self.empty_attributes();
        for n in names {
            let i = self
                .attributes
                .index_of(n)
                .ok_or_else(|| ConceptError::UnknownAttribute(n.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn object_names(&self, s: &FixedBitSet) -> Vec<String> {
        s.ones().map(|a| self.object_name(a).to_string()).collect()
    }

    pub fn attribute_names(&self, s: &FixedBitSet) -> Vec<String> {
        s.ones().map(|b| self.attribute_name(b).to_string()).collect()
    }

    /// [`Context::intent`] by name.
    pub fn derive_intent(&self, objects: &[&str]) -> Result<Vec<String>, ConceptError> {
        Ok(self.attribute_names(&self.intent(&self.object_set(objects)?)))
    }

    /// [`Context::extent`] by name.
    pub fn derive_extent(&self, attributes: &[&str]) -> Result<Vec<String>, ConceptError> {
        Ok(self.object_names(&self.extent(&self.attribute_set(attributes)?)))
    }
}

fn check_unique(names: &[String], what: &str) -> Result<(), ConceptError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(ConceptError::Parse(format!("duplicate {what} `{n}`")));
        }
    }
    Ok(())
}
