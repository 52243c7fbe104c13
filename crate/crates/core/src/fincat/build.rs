use std::collections::HashMap;

use super::{FincatError, FiniteCategory, MorId, Morphism, ObjId};

/// Incremental construction of a category by names.
///
/// Identities are named `id:<object>`. A morphism with that name and
/// matching endpoints becomes the designated identity; missing identities
/// are synthesized, and composites involving identities are inferred unless
/// given explicitly.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    object_index: HashMap<String, ObjId>,
    morphisms: Vec<Morphism>,
    morphism_index: HashMap<String, MorId>,
    composites: HashMap<(MorId, MorId), MorId>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> Result<ObjId, FincatError> {
        if self.object_index.contains_key(name) {
            return Err(FincatError::DuplicateObject(name.to_string()));
        }
        let id = self.objects.len();
        self.objects.push(name.to_string());
        self.object_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn objects<S: AsRef<str>>(&mut self, names: &[S]) -> Result<&mut Self, FincatError> {
        for n in names {
            self.object(n.as_ref())?;
        }
        Ok(self)
    }

    pub fn morphism(&mut self, name: &str, dom: &str, cod: &str) -> Result<MorId, FincatError> {
        let d = self.object_id(dom)?;
        let c = self.object_id(cod)?;
        if self.morphism_index.contains_key(name) {
            return Err(FincatError::DuplicateMorphism(name.to_string()));
        }
        if let Some(obj) = name.strip_prefix("id:") {
            if let Some(&x) = self.object_index.get(obj) {
                if d != x || c != x {
                    return Err(FincatError::BadIdentity {
                        object: obj.to_string(),
                        morphism: name.to_string(),
                    });
                }
            }
        }
        let id = self.morphisms.len();
        self.morphisms.push(Morphism {
            name: name.to_string(),
            dom: d,
            cod: c,
        });
        self.morphism_index.insert(name.to_string(), id);
        Ok(id)
    }

    /// Record `then ∘ first = equals`.
    pub fn compose(&mut self, first: &str, then: &str, equals: &str) -> Result<&mut Self, FincatError> {
        let f = self.morphism_id(first)?;
        let g = self.morphism_id(then)?;
        let h = self.morphism_id(equals)?;
        match self.composites.insert((f, g), h) {
            Some(old) if old != h => Err(FincatError::Structure(format!(
                "conflicting composites for `{then}` after `{first}`: `{}` and `{equals}`",
                self.morphisms[old].name
            ))),
            _ => Ok(self),
        }
    }

    fn object_id(&self, name: &str) -> Result<ObjId, FincatError> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| FincatError::UnknownObject(name.to_string()))
    }

    fn morphism_id(&mut self, name: &str) -> Result<MorId, FincatError> {
        if let Some(&m) = self.morphism_index.get(name) {
            return Ok(m);
        }
        if let Some(obj) = name.strip_prefix("id:") {
            if self.object_index.contains_key(obj) {
                return self.morphism(name, obj, obj);
            }
        }
        Err(FincatError::UnknownMorphism(name.to_string()))
    }

    /// Assemble without checking the category axioms.
    pub fn build_unchecked(mut self) -> Result<FiniteCategory, FincatError> {
        let mut identities = Vec::with_capacity(self.objects.len());
        for x in 0..self.objects.len() {
            let name = format!("id:{}", self.objects[x]);
            let id = match self.morphism_index.get(&name) {
                Some(&m) => m,
                None => {
                    let m = self.morphisms.len();
                    self.morphisms.push(Morphism {
                        name: name.clone(),
                        dom: x,
                        cod: x,
                    });
                    self.morphism_index.insert(name, m);
                    m
                }
            };
            identities.push(id);
        }
        let n = self.morphisms.len();
        let mut table = vec![None; n * n];
        for f in 0..n {
            let (d, c) = (self.morphisms[f].dom, self.morphisms[f].cod);
            table[identities[d] * n + f] = Some(f);
            table[f * n + identities[c]] = Some(f);
        }
        for (&(f, g), &h) in &self.composites {
            table[f * n + g] = Some(h);
        }
        FiniteCategory::from_parts(self.objects, self.morphisms, identities, table)
    }

    /// Assemble and check every axiom.
    pub fn build(self) -> Result<FiniteCategory, FincatError> {
        let c = self.build_unchecked()?;
        let report = super::validate_category(&c);
        if report.is_empty() {
            Ok(c)
        } else {
            Err(FincatError::InvalidCategory(report))
        }
    }
}
