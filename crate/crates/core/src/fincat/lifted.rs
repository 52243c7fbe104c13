use std::collections::HashMap;
use std::sync::Arc;

use super::{FincatError, FiniteCategory, Functor, MorId, Morphism, ObjId};

/// A category whose objects are decorated objects of a base category and
/// whose morphisms are base morphisms singled out by a predicate.
///
/// Algebras, coalgebras, the Karoubi envelope and the simple-nucleus
/// categories are all of this shape. Morphism `f` from object `i` to `j`
/// is named `<f>:<i>-><j>`, except identities, which are `id:<i>`.
#[derive(Clone, Debug)]
pub struct Lifted {
    pub category: Arc<FiniteCategory>,
    pub base: Arc<FiniteCategory>,
    /// Base object carrying each object.
    pub carrier: Vec<ObjId>,
    /// Base morphism underlying each morphism.
    pub underlying: Vec<MorId>,
    index: HashMap<(ObjId, ObjId, MorId), MorId>,
}

impl Lifted {
    /// Build the category with objects `names`, carried by `carrier`, whose
    /// identity at `i` is the base morphism `identity(i)` and whose
    /// morphisms `i → j` are the base morphisms `carrier[i] → carrier[j]`
    /// accepted by `admits(i, j, f)`.
    pub fn build(
        base: &Arc<FiniteCategory>,
        names: Vec<String>,
        carrier: Vec<ObjId>,
        identity: impl Fn(usize) -> MorId,
        admits: impl Fn(usize, usize, MorId) -> bool,
    ) -> Result<Self, FincatError> {
        let n = names.len();
        let mut morphisms = Vec::new();
        let mut underlying = Vec::new();
        let mut identities = vec![usize::MAX; n];
        let mut index = HashMap::new();
        for i in 0..n {
            let id_i = identity(i);
            for j in 0..n {
                for &f in base.hom(carrier[i], carrier[j]) {
                    let is_id = i == j && f == id_i;
                    if !is_id && !admits(i, j, f) {
                        continue;
                    }
                    let k = morphisms.len();
                    let name = if is_id {
                        identities[i] = k;
                        format!("id:{}", names[i])
                    } else {
                        format!("{}:{}->{}", base.morphism_name(f), names[i], names[j])
                    };
                    morphisms.push(Morphism { name, dom: i, cod: j });
                    underlying.push(f);
                    index.insert((i, j, f), k);
                }
            }
            if identities[i] == usize::MAX {
                return Err(FincatError::Structure(format!(
                    "identity of `{}` is not a morphism from its carrier to itself",
                    names[i]
                )));
            }
        }
        let ms = morphisms.clone();
        let category = FiniteCategory::generate(names, morphisms, identities, |g, f| {
            let h = base.compose(underlying[g], underlying[f]);
            index
                .get(&(ms[f].dom, ms[g].cod, h))
                .copied()
                .ok_or_else(|| FincatError::NotClosed {
                    first: ms[f].name.clone(),
                    then: ms[g].name.clone(),
                })
        })?;
        Ok(Self {
            category: Arc::new(category),
            base: base.clone(),
            carrier,
            underlying,
            index,
        })
    }

    /// The morphism `i → j` over base morphism `f`, if admitted.
    pub fn lift(&self, i: ObjId, j: ObjId, f: MorId) -> Option<MorId> {
        self.index.get(&(i, j, f)).copied()
    }

    /// Like [`Self::lift`] but with a structural error naming the morphism.
    pub fn lift_or_err(&self, i: ObjId, j: ObjId, f: MorId) -> Result<MorId, FincatError> {
        self.lift(i, j, f).ok_or_else(|| {
            FincatError::Structure(format!(
                "`{}` is not a morphism `{}` → `{}`",
                self.base.morphism_name(f),
                self.category.object_name(i),
                self.category.object_name(j)
            ))
        })
    }

    /// The forgetful functor to the base.
    pub fn forgetful(&self) -> Functor {
        Functor::new(
            self.category.clone(),
            self.base.clone(),
            self.carrier.clone(),
            self.underlying.clone(),
        )
        .expect("forgetful functor")
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.category.object_id(name)
    }
}

/// The full subcategory on `objects` (in the given order), with its
/// inclusion. Morphism names are kept.
pub fn full_subcategory(c: &Arc<FiniteCategory>, objects: &[ObjId]) -> (Arc<FiniteCategory>, Functor) {
    let mut pos = vec![usize::MAX; c.num_objects()];
    for (k, &x) in objects.iter().enumerate() {
        pos[x] = k;
    }
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut local = HashMap::new();
    for (i, &x) in objects.iter().enumerate() {
        for (j, &y) in objects.iter().enumerate() {
            for &f in c.hom(x, y) {
                local.insert(f, morphisms.len());
                underlying.push(f);
                morphisms.push(Morphism {
                    name: c.morphism_name(f).to_string(),
                    dom: i,
                    cod: j,
                });
            }
        }
    }
    let identities = objects.iter().map(|&x| local[&c.identity(x)]).collect();
    let names = objects.iter().map(|&x| c.object_name(x).to_string()).collect();
    let sub = FiniteCategory::generate(names, morphisms, identities, |g, f| {
        Ok(local[&c.compose(underlying[g], underlying[f])])
    })
    .expect("full subcategory");
    let sub = Arc::new(sub);
    let inclusion = Functor::new(sub.clone(), c.clone(), objects.to_vec(), underlying.clone()).expect("inclusion");
    (sub, inclusion)
}

/// The full image of a functor `F: C → D`: objects of `C`, with
/// `hom(a, a') = D(Fa, Fa')`.
#[derive(Clone, Debug)]
pub struct FullImage {
    pub lifted: Lifted,
    /// `C → image`, identity on objects.
    pub corestriction: Functor,
    /// `image → D`, fully faithful.
    pub embedding: Functor,
}

pub fn full_image(f: &Functor) -> Result<FullImage, FincatError> {
    let (c, d) = (f.source(), f.target());
    let names = c.objects().to_vec();
    let carrier: Vec<ObjId> = (0..c.num_objects()).map(|x| f.obj(x)).collect();
    let lifted = Lifted::build(d, names, carrier, |i| d.identity(f.obj(i)), |_, _, _| true)?;
    let image = lifted.category.clone();
    let corestriction = Functor::from_fn(c, &image, |x| x, |m| {
        lifted
            .lift(c.dom(m), c.cod(m), f.mor(m))
            .expect("image contains every image morphism")
    })?;
    let embedding = lifted.forgetful();
    Ok(FullImage {
        lifted,
        corestriction,
        embedding,
    })
}
