//! Bundle files: named categories, functors, adjunctions and monads in one
//! JSON document.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fincat::{
    category_from_json, category_to_json, functor_from_json, functor_to_json, nat_trans_components_from_json,
    nat_trans_to_json, validate_category, CategoryJson, FincatError, FiniteCategory, Functor, FunctorJson,
    NatTransJson,
};
use crate::report::Report;

use super::{Adjunction, Monad, NucleusError};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionJson {
    pub left: String,
    pub right: String,
    pub unit: NatTransJson,
    pub counit: NatTransJson,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonadJson {
    pub endofunctor: String,
    pub eta: NatTransJson,
    pub mu: NatTransJson,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleJson {
    #[serde(default)]
    pub categories: BTreeMap<String, CategoryJson>,
    #[serde(default)]
    pub functors: BTreeMap<String, FunctorJson>,
    #[serde(default)]
    pub adjunctions: BTreeMap<String, AdjunctionJson>,
    #[serde(default)]
    pub monads: BTreeMap<String, MonadJson>,
}

/// A resolved bundle. Categories are parsed without checking their
/// axioms; `category_reports` holds the result of checking them, and
/// nothing built on a category with a non-empty report should be used
/// for computation.
#[derive(Clone, Debug, Default)]
pub struct Bundle {
    pub categories: BTreeMap<String, Arc<FiniteCategory>>,
    pub category_reports: BTreeMap<String, Report>,
    pub functors: BTreeMap<String, Functor>,
    pub adjunctions: BTreeMap<String, Adjunction>,
    pub monads: BTreeMap<String, Monad>,
}

impl Bundle {
    /// True when every category satisfies its axioms.
    pub fn categories_valid(&self) -> bool {
        self.category_reports.values().all(Report::is_empty)
    }
}

fn context(kind: &str, name: &str) -> impl Fn(FincatError) -> NucleusError {
    let what = format!("{kind} `{name}`");
    move |e| NucleusError::Input(format!("{what}: {e}"))
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str, owner: &str) -> Result<&'a T, NucleusError> {
    map.get(name)
        .ok_or_else(|| NucleusError::Input(format!("{owner}: unknown {kind} `{name}`")))
}

pub fn load_bundle(json: &BundleJson) -> Result<Bundle, NucleusError> {
    let mut b = Bundle::default();
    for (name, c) in &json.categories {
        let cat = category_from_json(c).map_err(context("category", name))?;
        b.category_reports.insert(name.clone(), validate_category(&cat));
        b.categories.insert(name.clone(), Arc::new(cat));
    }
    for (name, f) in &json.functors {
        let owner = format!("functor `{name}`");
        let s = lookup(&b.categories, "category", &f.source, &owner)?;
        let t = lookup(&b.categories, "category", &f.target, &owner)?;
        let func = functor_from_json(f, s, t).map_err(context("functor", name))?;
        b.functors.insert(name.clone(), func);
    }
    for (name, a) in &json.adjunctions {
        let owner = format!("adjunction `{name}`");
        let left = lookup(&b.functors, "functor", &a.left, &owner)?.clone();
        let right = lookup(&b.functors, "functor", &a.right, &owner)?.clone();
        let err = context("adjunction", name);
        let unit = nat_trans_components_from_json(&a.unit, &Functor::identity(left.source())).map_err(&err)?;
        let counit = nat_trans_components_from_json(&a.counit, &Functor::identity(right.source())).map_err(&err)?;
        let adj = Adjunction::new(left, right, unit, counit).map_err(&err)?;
        b.adjunctions.insert(name.clone(), adj);
    }
    for (name, m) in &json.monads {
        let owner = format!("monad `{name}`");
        let t = lookup(&b.functors, "functor", &m.endofunctor, &owner)?.clone();
        let err = context("monad", name);
        let id = Functor::identity(t.source());
        let eta = nat_trans_components_from_json(&m.eta, &id).map_err(&err)?;
        let mu = nat_trans_components_from_json(&m.mu, &id).map_err(&err)?;
        let monad = Monad::new(t, eta, mu).map_err(&err)?;
        b.monads.insert(name.clone(), monad);
    }
    Ok(b)
}

/// Serialize an adjunction as a bundle with categories `<name>.domain`,
/// `<name>.codomain` and functors `<name>.left`, `<name>.right`.
pub fn adjunction_bundle(name: &str, a: &Adjunction) -> BundleJson {
    let (dom, cod) = (format!("{name}.domain"), format!("{name}.codomain"));
    let (l, r) = (format!("{name}.left"), format!("{name}.right"));
    let mut b = BundleJson::default();
    b.categories.insert(dom.clone(), category_to_json(a.domain()));
    b.categories.insert(cod.clone(), category_to_json(a.codomain()));
    b.functors.insert(l.clone(), functor_to_json(a.left(), &dom, &cod));
    b.functors.insert(r.clone(), functor_to_json(a.right(), &cod, &dom));
    b.adjunctions.insert(
        name.to_string(),
        AdjunctionJson {
            left: l,
            right: r,
            unit: nat_trans_to_json(a.unit()),
            counit: nat_trans_to_json(a.counit()),
        },
    );
    b
}

/// Serialize a monad as a bundle with category `<name>.carrier` and
/// functor `<name>.endofunctor`.
pub fn monad_bundle(name: &str, m: &Monad) -> BundleJson {
    let (c, t) = (format!("{name}.carrier"), format!("{name}.endofunctor"));
    let mut b = BundleJson::default();
    b.categories.insert(c.clone(), category_to_json(m.carrier()));
    b.functors.insert(t.clone(), functor_to_json(m.endofunctor(), &c, &c));
    b.monads.insert(
        name.to_string(),
        MonadJson {
            endofunctor: t,
            eta: nat_trans_to_json(m.unit()),
            mu: nat_trans_to_json(m.multiplication()),
        },
    );
    b
}
