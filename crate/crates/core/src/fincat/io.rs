//! JSON encodings of categories, functors and natural transformations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CategoryBuilder, FincatError, FiniteCategory, Functor, MorId, NaturalTransformation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// `then ∘ first = equals`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionJson {
    pub first: String,
    pub then: String,
    pub equals: String,
}

/// Category file format. Identities `id:<object>` and composites with
/// identities may be omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismJson>,
    #[serde(default)]
    pub composition: Vec<CompositionJson>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub source: String,
    pub target: String,
    pub object_map: BTreeMap<String, String>,
    #[serde(default)]
    pub morphism_map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatTransJson {
    pub components: BTreeMap<String, String>,
}

/// Parse without checking the category axioms; see
/// [`super::validate_category`].
pub fn category_from_json(json: &CategoryJson) -> Result<FiniteCategory, FincatError> {
    let mut b = CategoryBuilder::new();
    for o in &json.objects {
        b.object(o)?;
    }
    for m in &json.morphisms {
        b.morphism(&m.name, &m.dom, &m.cod)?;
    }
    for c in &json.composition {
        b.compose(&c.first, &c.then, &c.equals)?;
    }
    b.build_unchecked()
}

/// Emit a category, omitting identities and composites with identities.
pub fn category_to_json(c: &FiniteCategory) -> CategoryJson {
    let morphisms = (0..c.num_morphisms())
        .filter(|&f| !c.is_identity(f))
        .map(|f| MorphismJson {
            name: c.morphism_name(f).to_string(),
            dom: c.object_name(c.dom(f)).to_string(),
            cod: c.object_name(c.cod(f)).to_string(),
        })
        .collect();
    let mut composition = Vec::new();
    for f in 0..c.num_morphisms() {
        if c.is_identity(f) {
            continue;
        }
        for g in 0..c.num_morphisms() {
            if c.is_identity(g) {
                continue;
            }
            if let Some(h) = c.try_compose(g, f) {
                composition.push(CompositionJson {
                    first: c.morphism_name(f).to_string(),
                    then: c.morphism_name(g).to_string(),
                    equals: c.morphism_name(h).to_string(),
                });
            }
        }
    }
    CategoryJson {
        objects: c.objects().to_vec(),
        morphisms,
        composition,
    }
}

fn lookup_object(c: &FiniteCategory, name: &str) -> Result<usize, FincatError> {
    c.object_id(name).ok_or_else(|| FincatError::UnknownObject(name.to_string()))
}

fn lookup_morphism(c: &FiniteCategory, name: &str) -> Result<MorId, FincatError> {
    c.morphism_id(name).ok_or_else(|| FincatError::UnknownMorphism(name.to_string()))
}

/// Resolve a functor against its categories. Identities may be omitted from
/// the morphism map.
pub fn functor_from_json(
    json: &FunctorJson,
    source: &Arc<FiniteCategory>,
    target: &Arc<FiniteCategory>,
) -> Result<Functor, FincatError> {
    let mut object_map = Vec::with_capacity(source.num_objects());
    for x in source.objects() {
        let y = json
            .object_map
            .get(x)
            .ok_or_else(|| FincatError::Structure(format!("object map misses `{x}`")))?;
        object_map.push(lookup_object(target, y)?);
    }
    for k in json.object_map.keys() {
        lookup_object(source, k)?;
    }
    for k in json.morphism_map.keys() {
        lookup_morphism(source, k)?;
    }
    let mut morphism_map = Vec::with_capacity(source.num_morphisms());
    for f in 0..source.num_morphisms() {
        let name = source.morphism_name(f);
        let g = match json.morphism_map.get(name) {
            Some(g) => lookup_morphism(target, g)?,
            None if source.is_identity(f) => target.identity(object_map[source.dom(f)]),
            None => return Err(FincatError::Structure(format!("morphism map misses `{name}`"))),
        };
        morphism_map.push(g);
    }
    Functor::new(source.clone(), target.clone(), object_map, morphism_map)
}

/// Emit a functor; identities sent to identities are omitted.
pub fn functor_to_json(f: &Functor, source: &str, target: &str) -> FunctorJson {
    let (s, t) = (f.source(), f.target());
    let object_map = (0..s.num_objects())
        .map(|x| (s.object_name(x).to_string(), t.object_name(f.obj(x)).to_string()))
        .collect();
    let morphism_map = (0..s.num_morphisms())
        .filter(|&m| !(s.is_identity(m) && t.is_identity(f.mor(m))))
        .map(|m| (s.morphism_name(m).to_string(), t.morphism_name(f.mor(m)).to_string()))
        .collect();
    FunctorJson {
        source: source.to_string(),
        target: target.to_string(),
        object_map,
        morphism_map,
    }
}

/// Resolve components against the source category of `source` and the
/// target category of both functors.
pub fn nat_trans_components_from_json(json: &NatTransJson, source: &Functor) -> Result<Vec<MorId>, FincatError> {
    let (a, b) = (source.source(), source.target());
    for k in json.components.keys() {
        lookup_object(a, k)?;
    }
    a.objects()
        .iter()
        .map(|x| {
            let m = json
                .components
                .get(x)
                .ok_or_else(|| FincatError::Structure(format!("no component at `{x}`")))?;
            lookup_morphism(b, m)
        })
        .collect()
}

pub fn nat_trans_to_json(t: &NaturalTransformation) -> NatTransJson {
    let (a, b) = (t.source().source(), t.source().target());
    NatTransJson {
        components: (0..a.num_objects())
            .map(|x| (a.object_name(x).to_string(), b.morphism_name(t.component(x)).to_string()))
            .collect(),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Labeled digraph of the non-identity morphisms, in Graphviz DOT.
pub fn category_dot(c: &FiniteCategory, name: &str) -> String {
    use std::fmt::Write;
    let mut s = format!("digraph \"{}\" {{\n", dot_escape(name));
    for x in 0..c.num_objects() {
        let _ = writeln!(s, "  o{x} [label=\"{}\"];", dot_escape(c.object_name(x)));
    }
    for f in (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)) {
        let _ = writeln!(
            s,
            "  o{} -> o{} [label=\"{}\"];",
            c.dom(f),
            c.cod(f),
            dot_escape(c.morphism_name(f))
        );
    }
    s.push_str("}\n");
    s
}
