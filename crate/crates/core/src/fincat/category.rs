use std::collections::HashMap;
use std::sync::Arc;

use super::{validate_category, FincatError};

/// Index of an object in its category.
pub type ObjId = usize;
/// Index of a morphism in its category.
pub type MorId = usize;

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A finite category with interned names and a dense composition table.
///
/// `table[f * n + g]` holds `g ∘ f` ("first `f`, then `g`"). Entries for
/// non-composable pairs are normally absent; a category read from a file may
/// carry stray entries, which [`validate_category`] reports.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    table: Vec<usize>,
    object_index: HashMap<String, ObjId>,
    morphism_index: HashMap<String, MorId>,
    homs: Vec<Vec<MorId>>,
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.table == other.table
    }
}

impl Eq for FiniteCategory {}

impl FiniteCategory {
    /// Assemble a category from raw parts without checking the axioms.
    ///
    /// Only structural consistency is enforced here: unique names, indices
    /// in range, identities that are endomorphisms. Use [`Self::new`] or
    /// [`validate_category`] for the laws.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        table: Vec<Option<MorId>>,
    ) -> Result<Self, FincatError> {
        let n = morphisms.len();
        if identities.len() != objects.len() {
            return Err(FincatError::Structure(format!(
                "{} identities for {} objects",
                identities.len(),
                objects.len()
            )));
        }
        if table.len() != n * n {
            return Err(FincatError::Structure(format!(
                "composition table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        let mut object_index = HashMap::with_capacity(objects.len());
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(FincatError::DuplicateObject(o.clone()));
            }
        }
        let mut morphism_index = HashMap::with_capacity(n);
        for (i, m) in morphisms.iter().enumerate() {
            if m.dom >= objects.len() || m.cod >= objects.len() {
                return Err(FincatError::Structure(format!(
                    "morphism `{}` has an out-of-range endpoint",
                    m.name
                )));
            }
            if morphism_index.insert(m.name.clone(), i).is_some() {
                return Err(FincatError::DuplicateMorphism(m.name.clone()));
            }
        }
        for (x, &id) in identities.iter().enumerate() {
            let bad = id >= n || morphisms[id].dom != x || morphisms[id].cod != x;
            if bad {
                return Err(FincatError::BadIdentity {
                    object: objects[x].clone(),
                    morphism: morphisms.get(id).map(|m| m.name.clone()).unwrap_or_default(),
                });
            }
        }
        let mut dense = Vec::with_capacity(n * n);
        for entry in table {
            match entry {
                Some(h) if h >= n => {
                    return Err(FincatError::Structure(format!("composite index {h} out of range")))
                }
                Some(h) => dense.push(h),
                None => dense.push(NONE),
            }
        }
        let no = objects.len();
        let mut homs = vec![Vec::new(); no * no];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.dom * no + m.cod].push(i);
        }
        Ok(Self {
            objects,
            morphisms,
            identities,
            table: dense,
            object_index,
            morphism_index,
            homs,
        })
    }

    /// Assemble a category and check every axiom.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        table: Vec<Option<MorId>>,
    ) -> Result<Self, FincatError> {
        let c = Self::from_parts(objects, morphisms, identities, table)?;
        let report = validate_category(&c);
        if report.is_empty() {
            Ok(c)
        } else {
            Err(FincatError::InvalidCategory(report))
        }
    }

    /// Build a category whose composites are produced by `compose(g, f)`
    /// for every composable pair (`f` first).
    pub fn generate(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> Result<MorId, FincatError>,
    ) -> Result<Self, FincatError> {
        let n = morphisms.len();
        let mut table = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                if morphisms[f].cod == morphisms[g].dom {
                    table[f * n + g] = Some(compose(g, f)?);
                }
            }
        }
        Self::from_parts(objects, morphisms, identities, table)
    }

    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new(), Vec::new(), Vec::new()).expect("empty category")
    }

    /// The category with one object `*` and only its identity.
    pub fn terminal() -> Self {
        Self::discrete(&["*"])
    }

    /// A category with the given objects and only identity morphisms.
    pub fn discrete<S: AsRef<str>>(names: &[S]) -> Self {
        Self::poset(names, |i, j| i == j)
    }

    /// The category of a preorder given by `leq`: one morphism `x<=y` for
    /// each related pair, identities named `id:x`.
    ///
    /// `leq` must be reflexive and transitive; antisymmetry is not needed.
    pub fn poset<S: AsRef<str>>(names: &[S], leq: impl Fn(usize, usize) -> bool) -> Self {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut pair = vec![NONE; n * n];
        let mut identities = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if i == j || leq(i, j) {
                    let name = if i == j {
                        format!("id:{}", objects[i])
                    } else {
                        format!("{}<={}", objects[i], objects[j])
                    };
                    pair[i * n + j] = morphisms.len();
                    if i == j {
                        identities[i] = morphisms.len();
                    }
                    morphisms.push(Morphism { name, dom: i, cod: j });
                }
            }
        }
        let ms = morphisms.clone();
        Self::generate(objects, morphisms, identities, |g, f| {
            let k = pair[ms[f].dom * n + ms[g].cod];
            if k == NONE {
                Err(FincatError::Structure("relation is not transitive".into()))
            } else {
                Ok(k)
            }
        })
        .expect("preorder relation must be reflexive and transitive")
    }

    /// The full subcategory of finite sets on objects of the given sizes,
    /// with every function as a morphism. Object `k` is named `n<size>`;
    /// a function is named by its value list, e.g. `f[0,2,1]:n3->n3`.
    pub fn finite_sets(sizes: &[usize]) -> Self {
        let objects: Vec<String> = sizes.iter().enumerate().map(|(k, s)| set_object_name(k, *s)).collect();
        let mut morphisms = Vec::new();
        let mut values: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<(ObjId, ObjId, Vec<usize>), MorId> = HashMap::new();
        let mut identities = vec![0; sizes.len()];
        for (a, &m) in sizes.iter().enumerate() {
            for (b, &n) in sizes.iter().enumerate() {
                for f in all_functions(m, n) {
                    let id = morphisms.len();
                    let name = if a == b && f.iter().enumerate().all(|(i, &v)| i == v) {
                        identities[a] = id;
                        format!("id:{}", objects[a])
                    } else {
                        format!("f{:?}:{}->{}", f, objects[a], objects[b]).replace(' ', "")
                    };
                    morphisms.push(Morphism { name, dom: a, cod: b });
                    index.insert((a, b, f.clone()), id);
                    values.push(f);
                }
            }
        }
        let ms = morphisms.clone();
        Self::generate(objects, morphisms, identities, |g, f| {
            let composite: Vec<usize> = values[f].iter().map(|&v| values[g][v]).collect();
            Ok(index[&(ms[f].dom, ms[g].cod, composite)])
        })
        .expect("finite sets form a category")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.object_index.get(name).copied()
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorId> {
        self.morphism_index.get(name).copied()
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f].cod
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x]
    }

    pub fn identities(&self) -> &[MorId] {
        &self.identities
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.dom(f)] == f
    }

    /// Morphisms `x → y` in index order.
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.homs[x * self.objects.len() + y]
    }

    /// Raw table entry for "first `f`, then `g`", whether or not the pair is
    /// composable.
    pub fn table_entry(&self, f: MorId, g: MorId) -> Option<MorId> {
        let h = self.table[f * self.morphisms.len() + g];
        (h != NONE).then_some(h)
    }

    /// `g ∘ f`, or `None` when the pair is not composable or the table has
    /// no entry.
    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.cod(f) != self.dom(g) {
            return None;
        }
        self.table_entry(f, g)
    }

    /// `g ∘ f`. Panics if the pair is not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        match self.try_compose(g, f) {
            Some(h) => h,
            None => panic!(
                "cannot compose `{}` after `{}`",
                self.morphisms[g].name, self.morphisms[f].name
            ),
        }
    }

    /// Compose a path given in application order: `path[0]` first.
    pub fn compose_path(&self, path: &[MorId]) -> MorId {
        let mut it = path.iter();
        let mut acc = *it.next().expect("nonempty path");
        for &g in it {
            acc = self.compose(g, acc);
        }
        acc
    }

    pub fn is_endomorphism(&self, f: MorId) -> bool {
        self.dom(f) == self.cod(f)
    }

    pub fn is_idempotent(&self, f: MorId) -> bool {
        self.is_endomorphism(f) && self.compose(f, f) == f
    }

    /// All idempotent morphisms, identities included, in index order.
    pub fn idempotents(&self) -> Vec<MorId> {
        (0..self.num_morphisms()).filter(|&f| self.is_idempotent(f)).collect()
    }

    /// The two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (x, y) = (self.dom(f), self.cod(f));
        self.hom(y, x)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.identity(x) && self.compose(f, g) == self.identity(y))
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Left-cancellable: `f∘g = f∘h ⇒ g = h` for all parallel `g, h`.
    pub fn is_monic(&self, f: MorId) -> bool {
        let x = self.dom(f);
        (0..self.num_objects()).all(|w| {
            let mut seen = std::collections::HashSet::new();
            self.hom(w, x).iter().all(|&g| seen.insert(self.compose(f, g)))
        })
    }

    /// Right-cancellable: `g∘f = h∘f ⇒ g = h` for all parallel `g, h`.
    pub fn is_epi(&self, f: MorId) -> bool {
        let y = self.cod(f);
        (0..self.num_objects()).all(|w| {
            let mut seen = std::collections::HashSet::new();
            self.hom(y, w).iter().all(|&g| seen.insert(self.compose(g, f)))
        })
    }

    /// The opposite category. Morphisms keep their names and swap ends.
    pub fn opposite(&self) -> Self {
        let morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                name: m.name.clone(),
                dom: m.cod,
                cod: m.dom,
            })
            .collect();
        let n = self.morphisms.len();
        let mut table = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                // first f then g in the opposite is first g then f here
                table[f * n + g] = self.table_entry(g, f);
            }
        }
        Self::from_parts(self.objects.clone(), morphisms, self.identities.clone(), table)
            .expect("opposite of a well-formed category")
    }

    /// The product category. Objects are `(x,y)`, morphisms `(f,g)`, and
    /// identities `id:(x,y)`.
    pub fn product(&self, other: &Self) -> Self {
        let no = other.num_objects();
        let nm = other.num_morphisms();
        let objects: Vec<String> = self
            .objects
            .iter()
            .flat_map(|x| other.objects.iter().map(move |y| format!("({x},{y})")))
            .collect();
        let mut morphisms = Vec::with_capacity(self.num_morphisms() * nm);
        for f in &self.morphisms {
            for g in &other.morphisms {
                morphisms.push(Morphism {
                    name: String::new(),
                    dom: f.dom * no + g.dom,
                    cod: f.cod * no + g.cod,
                });
            }
        }
        let mut identities = vec![0; objects.len()];
        for (k, m) in morphisms.iter_mut().enumerate() {
            let (f, g) = (k / nm.max(1), k % nm.max(1));
            if self.is_identity(f) && other.is_identity(g) {
                identities[m.dom] = k;
                m.name = format!("id:{}", objects[m.dom]);
            } else {
                m.name = format!("({},{})", self.morphisms[f].name, other.morphisms[g].name);
            }
        }
        Self::generate(objects, morphisms, identities, |h2, h1| {
            let (f1, g1) = (h1 / nm, h1 % nm);
            let (f2, g2) = (h2 / nm, h2 % nm);
            Ok(self.compose(f2, f1) * nm + other.compose(g2, g1))
        })
        .expect("product of categories")
    }

    /// First idempotent (in index order) that does not split, if any.
    pub fn non_split_idempotent(&self) -> Option<MorId> {
        self.idempotents()
            .into_iter()
            .find(|&e| super::split_idempotent(self, e).is_err())
    }

    pub fn is_idempotent_complete(&self) -> bool {
        self.non_split_idempotent().is_none()
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }
}

pub(crate) fn set_object_name(_k: usize, size: usize) -> String {
    format!("n{size}")
}

fn all_functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(out.len() * n);
        for prefix in &out {
            for v in 0..n {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// True when `a` and `b` are the same category, by pointer or by table.
pub(crate) fn same_category(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
