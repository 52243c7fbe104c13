use std::sync::Arc;

use super::{FincatError, FiniteCategory, Functor, MorId, Morphism, ObjId};
use crate::report::Report;

/// A finite distributor `Φ: A^op × B → Set`.
///
/// For `f: a → a'` in `A` and `g: b' → b` in `B`, the action
/// `Φ(f, g): Φ(a', b') → Φ(a, b)` is stored as an index map.
#[derive(Clone, Debug)]
pub struct FiniteDistributor {
    a: Arc<FiniteCategory>,
    b: Arc<FiniteCategory>,
    values: Vec<Vec<String>>,
    actions: Vec<Vec<usize>>,
}

impl FiniteDistributor {
    /// `values(a, b)` lists `Φ(a, b)`; `action(f, g, k)` is the image of
    /// element `k` of `Φ(a', b')`.
    pub fn new(
        a: &Arc<FiniteCategory>,
        b: &Arc<FiniteCategory>,
        values: impl Fn(ObjId, ObjId) -> Vec<String>,
        action: impl Fn(MorId, MorId, usize) -> usize,
    ) -> Result<Self, FincatError> {
        let nb = b.num_objects();
        let mut vals = Vec::with_capacity(a.num_objects() * nb);
        for x in 0..a.num_objects() {
            for y in 0..nb {
                vals.push(values(x, y));
            }
        }
        let nbm = b.num_morphisms();
        let mut actions = vec![Vec::new(); a.num_morphisms() * nbm];
        for f in 0..a.num_morphisms() {
            for g in 0..nbm {
                let src = &vals[a.cod(f) * nb + b.dom(g)];
                actions[f * nbm + g] = (0..src.len()).map(|k| action(f, g, k)).collect();
            }
        }
        let d = Self {
            a: a.clone(),
            b: b.clone(),
            values: vals,
            actions,
        };
        let report = d.validate();
        if report.is_empty() {
            Ok(d)
        } else {
            Err(FincatError::Structure(format!("distributor is not functorial:\n{report}")))
        }
    }

    /// The hom distributor `C(−, −)` with `Φ(f, g)(h) = g∘h∘f`.
    pub fn hom(c: &Arc<FiniteCategory>) -> Self {
        let nm = c.num_morphisms();
        let mut pos = vec![0; nm];
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                for (k, &h) in c.hom(x, y).iter().enumerate() {
                    pos[h] = k;
                }
            }
        }
        Self::new(
            c,
            c,
            |x, y| c.hom(x, y).iter().map(|&h| c.morphism_name(h).to_string()).collect(),
            |f, g, k| {
                let h = c.hom(c.cod(f), c.dom(g))[k];
                pos[c.compose_path(&[f, h, g])]
            },
        )
        .expect("hom distributor is functorial")
    }

    pub fn left(&self) -> &Arc<FiniteCategory> {
        &self.a
    }

    pub fn right(&self) -> &Arc<FiniteCategory> {
        &self.b
    }

    pub fn values(&self, x: ObjId, y: ObjId) -> &[String] {
        &self.values[x * self.b.num_objects() + y]
    }

    pub fn act(&self, f: MorId, g: MorId, k: usize) -> usize {
        self.actions[f * self.b.num_morphisms() + g][k]
    }

    /// Check ranges, the identity action and functoriality.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let (a, b) = (&self.a, &self.b);
        let nb = b.num_objects();
        for f in 0..a.num_morphisms() {
            for g in 0..b.num_morphisms() {
                let target = self.values[a.dom(f) * nb + b.cod(g)].len();
                let map = &self.actions[f * b.num_morphisms() + g];
                if map.iter().any(|&v| v >= target) {
                    r.violation("action leaves its value set", format!("({}, {})", a.morphism_name(f), b.morphism_name(g)));
                }
            }
        }
        if r.has_violations() {
            return r;
        }
        for x in 0..a.num_objects() {
            for y in 0..nb {
                let (ia, ib) = (a.identity(x), b.identity(y));
                for k in 0..self.values(x, y).len() {
                    if self.act(ia, ib, k) != k {
                        r.violation("identity action", format!("({}, {})", a.object_name(x), b.object_name(y)));
                        break;
                    }
                }
            }
        }
        for f1 in 0..a.num_morphisms() {
            for y in 0..a.num_objects() {
                for &f2 in a.hom(a.cod(f1), y) {
                    for g1 in 0..b.num_morphisms() {
                        for z in 0..nb {
                            for &g2 in b.hom(z, b.dom(g1)) {
                                let f = a.compose(f2, f1);
                                let g = b.compose(g1, g2);
                                let n = self.values(a.cod(f2), b.dom(g2)).len();
                                for k in 0..n {
                                    if self.act(f1, g1, self.act(f2, g2, k)) != self.act(f, g, k) {
                                        r.violation(
                                            "action functoriality",
                                            format!(
                                                "({}, {}) then ({}, {})",
                                                a.morphism_name(f2),
                                                b.morphism_name(g2),
                                                a.morphism_name(f1),
                                                b.morphism_name(g1)
                                            ),
                                        );
                                        break;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        r
    }
}

/// The category of elements of a distributor with its projection.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub category: Arc<FiniteCategory>,
    /// `A × B^op`.
    pub base: Arc<FiniteCategory>,
    pub projection: Functor,
    /// `(a, b, k)` for each object: element `k` of `Φ(a, b)`.
    pub elements: Vec<(ObjId, ObjId, usize)>,
}

impl Grothendieck {
    /// Check that every morphism of the base into the image of an element
    /// has exactly one lift ending at that element.
    pub fn check_discrete_fibration(&self) -> Report {
        let mut r = Report::new();
        let (e, c, p) = (&self.category, &self.base, &self.projection);
        for x in 0..e.num_objects() {
            let px = p.obj(x);
            for u in (0..c.num_objects()).flat_map(|z| c.hom(z, px).iter().copied()) {
                let lifts = (0..e.num_objects())
                    .flat_map(|w| e.hom(w, x).iter().copied())
                    .filter(|&m| p.mor(m) == u)
                    .count();
                if lifts != 1 {
                    r.violation(
                        "unique lifting",
                        format!("{} lifts of {} at {}", lifts, c.morphism_name(u), e.object_name(x)),
                    );
                }
            }
        }
        r
    }
}

/// Build `∫Φ`: elements `x ∈ Φ(a, b)` as objects and `(f, g): x → x'` for
/// `f: a → a'`, `g: b' → b` whenever `x = Φ(f, g)(x')`.
pub fn grothendieck(phi: &FiniteDistributor) -> Result<Grothendieck, FincatError> {
    let report = phi.validate();
    if !report.is_empty() {
        return Err(FincatError::Structure(format!("distributor is not functorial:\n{report}")));
    }
    let (a, b) = (phi.left(), phi.right());
    let base = Arc::new(a.product(&b.opposite()));
    let mut elements = Vec::new();
    let mut names = Vec::new();
    let mut first = vec![0; a.num_objects() * b.num_objects()];
    for x in 0..a.num_objects() {
        for y in 0..b.num_objects() {
            first[x * b.num_objects() + y] = elements.len();
            for (k, v) in phi.values(x, y).iter().enumerate() {
                elements.push((x, y, k));
                names.push(format!("{}@({},{})", v, a.object_name(x), b.object_name(y)));
            }
        }
    }
    let obj = |x: ObjId, y: ObjId, k: usize| first[x * b.num_objects() + y] + k;
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut identities = vec![0; elements.len()];
    let mut index = std::collections::HashMap::new();
    for (i, &(x, y, k)) in elements.iter().enumerate() {
        for x2 in 0..a.num_objects() {
            for &f in a.hom(x, x2) {
                for y2 in 0..b.num_objects() {
                    for &g in b.hom(y2, y) {
                        for k2 in 0..phi.values(x2, y2).len() {
                            if phi.act(f, g, k2) != k {
                                continue;
                            }
                            let j = obj(x2, y2, k2);
                            let id = morphisms.len();
                            let name = if i == j && a.is_identity(f) && b.is_identity(g) {
                                identities[i] = id;
                                format!("id:{}", names[i])
                            } else {
                                format!("({},{}):{}->{}", a.morphism_name(f), b.morphism_name(g), names[i], names[j])
                            };
                            morphisms.push(Morphism { name, dom: i, cod: j });
                            pairs.push((f, g));
                            index.insert((i, j, f, g), id);
                        }
                    }
                }
            }
        }
    }
    let ms = morphisms.clone();
    let category = FiniteCategory::generate(names, morphisms, identities, |h2, h1| {
        let ((f1, g1), (f2, g2)) = (pairs[h1], pairs[h2]);
        let key = (ms[h1].dom, ms[h2].cod, a.compose(f2, f1), b.compose(g1, g2));
        index.get(&key).copied().ok_or_else(|| FincatError::NotClosed {
            first: ms[h1].name.clone(),
            then: ms[h2].name.clone(),
        })
    })?;
    let category = Arc::new(category);
    let nbm = b.num_morphisms();
    let projection = Functor::from_fn(
        &category,
        &base,
        |i| elements[i].0 * b.num_objects() + elements[i].1,
        |m| pairs[m].0 * nbm + pairs[m].1,
    )?;
    Ok(Grothendieck {
        category,
        base,
        projection,
        elements,
    })
}
