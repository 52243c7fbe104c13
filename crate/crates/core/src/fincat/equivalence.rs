use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{full_subcategory, FincatError, FiniteCategory, Functor, MorId, NaturalTransformation, ObjId};

/// Default node budget for isomorphism searches.
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

const NONE: usize = usize::MAX;

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq)]
pub enum IsoOutcome<T> {
    Found(T),
    NotFound,
    /// The node budget ran out first.
    Undecided,
}

impl<T> IsoOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            IsoOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Partition of the objects into isomorphism classes, each sorted by index,
/// classes ordered by their first member.
pub fn iso_classes(c: &FiniteCategory) -> Vec<Vec<ObjId>> {
    let n = c.num_objects();
    let mut class = vec![NONE; n];
    let mut out: Vec<Vec<ObjId>> = Vec::new();
    for x in 0..n {
        if class[x] != NONE {
            continue;
        }
        class[x] = out.len();
        let mut members = vec![x];
        for y in x + 1..n {
            if class[y] == NONE && iso_between(c, x, y).is_some() {
                class[y] = out.len();
                members.push(y);
            }
        }
        out.push(members);
    }
    out
}

/// An isomorphism `x → y` with its inverse, if one exists.
pub fn iso_between(c: &FiniteCategory, x: ObjId, y: ObjId) -> Option<(MorId, MorId)> {
    c.hom(x, y).iter().find_map(|&f| {
        c.hom(y, x)
            .iter()
            .find(|&&g| c.compose(g, f) == c.identity(x) && c.compose(f, g) == c.identity(y))
            .map(|&g| (f, g))
    })
}

/// A skeleton with the data needed to map back and forth.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub category: Arc<FiniteCategory>,
    pub inclusion: Functor,
    /// `c → skeleton`, an equivalence inverse to the inclusion.
    pub retraction: Functor,
    /// Skeleton object of each object of `c`.
    pub class_of: Vec<ObjId>,
    /// Chosen isomorphism `x → rep(x)` in `c`.
    pub to_rep: Vec<MorId>,
    /// Its inverse `rep(x) → x`.
    pub from_rep: Vec<MorId>,
}

/// Full subcategory on one representative per isomorphism class (the
/// lexicographically least name), with the inclusion and a retraction.
pub fn skeleton_data(c: &Arc<FiniteCategory>) -> Skeleton {
    let classes = iso_classes(c);
    let mut reps: Vec<ObjId> = classes
        .iter()
        .map(|cl| *cl.iter().min_by(|&&a, &&b| c.object_name(a).cmp(c.object_name(b))).expect("nonempty class"))
        .collect();
    reps.sort_unstable();
    let (category, inclusion) = full_subcategory(c, &reps);
    let mut class_of = vec![NONE; c.num_objects()];
    let mut to_rep = vec![NONE; c.num_objects()];
    let mut from_rep = vec![NONE; c.num_objects()];
    for (k, &r) in reps.iter().enumerate() {
        let cl = classes.iter().find(|cl| cl.contains(&r)).expect("class of representative");
        for &x in cl {
            class_of[x] = k;
            let (f, g) = if x == r {
                (c.identity(x), c.identity(x))
            } else {
                iso_between(c, x, r).expect("members of a class are isomorphic")
            };
            to_rep[x] = f;
            from_rep[x] = g;
        }
    }
    let mut local: HashMap<MorId, MorId> = HashMap::new();
    for m in 0..category.num_morphisms() {
        local.insert(inclusion.mor(m), m);
    }
    let retraction = Functor::from_fn(c, &category, |x| class_of[x], |f| {
        let (x, y) = (c.dom(f), c.cod(f));
        local[&c.compose_path(&[from_rep[x], f, to_rep[y]])]
    })
    .expect("retraction onto skeleton");
    Skeleton {
        category,
        inclusion,
        retraction,
        class_of,
        to_rep,
        from_rep,
    }
}

pub fn skeleton(c: &Arc<FiniteCategory>) -> (Arc<FiniteCategory>, Functor) {
    let s = skeleton_data(c);
    (s.category, s.inclusion)
}

struct Search<'a> {
    c: &'a FiniteCategory,
    d: &'a FiniteCategory,
    cap: u64,
    nodes: u64,
    exhausted: bool,
    obj: Vec<usize>,
    obj_used: Vec<bool>,
    mor: Vec<usize>,
    mor_used: Vec<bool>,
    trail: Vec<MorId>,
}

type Signature = (usize, Vec<usize>, Vec<usize>);

fn signature(c: &FiniteCategory, x: ObjId) -> Signature {
    let n = c.num_objects();
    let mut out: Vec<usize> = (0..n).map(|y| c.hom(x, y).len()).collect();
    let mut inc: Vec<usize> = (0..n).map(|y| c.hom(y, x).len()).collect();
    out.sort_unstable();
    inc.sort_unstable();
    (c.hom(x, x).len(), out, inc)
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.cap {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn objects(&mut self, x: usize, sig_c: &[Signature], sig_d: &[Signature]) -> bool {
        if x == self.c.num_objects() {
            return self.morphisms_start();
        }
        for y in 0..self.d.num_objects() {
            if self.obj_used[y] || sig_c[x] != sig_d[y] {
                continue;
            }
            if !self.tick() {
                return false;
            }
            self.obj[x] = y;
            let consistent = (0..=x).all(|x2| {
                let y2 = self.obj[x2];
                self.c.hom(x, x2).len() == self.d.hom(y, y2).len()
                    && self.c.hom(x2, x).len() == self.d.hom(y2, y).len()
            });
            if consistent {
                self.obj_used[y] = true;
                if self.objects(x + 1, sig_c, sig_d) {
                    return true;
                }
                self.obj_used[y] = false;
            }
            if self.exhausted {
                return false;
            }
        }
        self.obj[x] = NONE;
        false
    }

    fn morphisms_start(&mut self) -> bool {
        let mark = self.trail.len();
        let mut ok = true;
        for x in 0..self.c.num_objects() {
            if !self.assign(self.c.identity(x), self.d.identity(self.obj[x])) {
                ok = false;
                break;
            }
        }
        if ok && self.morphisms(0) {
            return true;
        }
        self.undo(mark);
        false
    }

    fn morphisms(&mut self, from: MorId) -> bool {
        let Some(f) = (from..self.c.num_morphisms()).find(|&f| self.mor[f] == NONE) else {
            return true;
        };
        let (x, y) = (self.obj[self.c.dom(f)], self.obj[self.c.cod(f)]);
        let candidates: Vec<MorId> = self.d.hom(x, y).iter().copied().filter(|&g| !self.mor_used[g]).collect();
        for g in candidates {
            if !self.tick() {
                return false;
            }
            let mark = self.trail.len();
            if self.assign(f, g) && self.morphisms(f + 1) {
                return true;
            }
            self.undo(mark);
            if self.exhausted {
                return false;
            }
        }
        false
    }

    /// Assign `f ↦ g` and everything it forces through composition.
    fn assign(&mut self, f: MorId, g: MorId) -> bool {
        let mut queue = vec![(f, g)];
        while let Some((f, g)) = queue.pop() {
            if self.mor[f] != NONE {
                if self.mor[f] != g {
                    return false;
                }
                continue;
            }
            if self.mor_used[g] {
                return false;
            }
            self.mor[f] = g;
            self.mor_used[g] = true;
            self.trail.push(f);
            let (c, d) = (self.c, self.d);
            for z in 0..c.num_objects() {
                for &h in c.hom(c.cod(f), z) {
                    if self.mor[h] != NONE {
                        queue.push((c.compose(h, f), d.compose(self.mor[h], g)));
                    }
                }
                for &h in c.hom(z, c.dom(f)) {
                    if self.mor[h] != NONE {
                        queue.push((c.compose(f, h), d.compose(g, self.mor[h])));
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let f = self.trail.pop().expect("trail entry");
            self.mor_used[self.mor[f]] = false;
            self.mor[f] = NONE;
        }
    }
}

/// Search for an isomorphism of categories `c → d`.
pub fn find_isomorphism(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>, cap: u64) -> IsoOutcome<Functor> {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return IsoOutcome::NotFound;
    }
    let sig_c: Vec<Signature> = (0..c.num_objects()).map(|x| signature(c, x)).collect();
    let sig_d: Vec<Signature> = (0..d.num_objects()).map(|x| signature(d, x)).collect();
    let (mut a, mut b) = (sig_c.clone(), sig_d.clone());
    a.sort();
    b.sort();
    if a != b {
        return IsoOutcome::NotFound;
    }
    let mut s = Search {
        c,
        d,
        cap,
        nodes: 0,
        exhausted: false,
        obj: vec![NONE; c.num_objects()],
        obj_used: vec![false; d.num_objects()],
        mor: vec![NONE; c.num_morphisms()],
        mor_used: vec![false; d.num_morphisms()],
        trail: Vec::new(),
    };
    if s.objects(0, &sig_c, &sig_d) {
        let f = Functor::new(c.clone(), d.clone(), s.obj, s.mor).expect("isomorphism found by search");
        IsoOutcome::Found(f)
    } else if s.exhausted {
        IsoOutcome::Undecided
    } else {
        IsoOutcome::NotFound
    }
}

/// Outcome of [`equivalent`].
#[derive(Clone, Debug)]
pub enum EquivalenceOutcome {
    Equivalent {
        /// Isomorphism between the skeleta.
        iso: Functor,
        /// An equivalence `c → d` through the skeleta.
        forward: Functor,
        /// An equivalence `d → c` through the skeleta.
        backward: Functor,
    },
    NotEquivalent,
    Undecided,
}

impl EquivalenceOutcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceOutcome::Equivalent { .. })
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, EquivalenceOutcome::Undecided)
    }
}

/// Decide whether two categories are equivalent by comparing skeleta.
pub fn equivalent(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>, cap: u64) -> EquivalenceOutcome {
    let sc = skeleton_data(c);
    let sd = skeleton_data(d);
    match find_isomorphism(&sc.category, &sd.category, cap) {
        IsoOutcome::Found(iso) => {
            let inverse = invert_isomorphism(&iso);
            let forward = sd.inclusion.after(&iso.after(&sc.retraction));
            let backward = sc.inclusion.after(&inverse.after(&sd.retraction));
            EquivalenceOutcome::Equivalent { iso, forward, backward }
        }
        IsoOutcome::NotFound => EquivalenceOutcome::NotEquivalent,
        IsoOutcome::Undecided => EquivalenceOutcome::Undecided,
    }
}

fn invert_isomorphism(f: &Functor) -> Functor {
    let (c, d) = (f.source(), f.target());
    let mut obj = vec![0; d.num_objects()];
    let mut mor = vec![0; d.num_morphisms()];
    for x in 0..c.num_objects() {
        obj[f.obj(x)] = x;
    }
    for m in 0..c.num_morphisms() {
        mor[f.mor(m)] = m;
    }
    Functor::new(d.clone(), c.clone(), obj, mor).expect("inverse isomorphism")
}

/// Why a functor is or is not an equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceCheck {
    Equivalence,
    NotFaithful { x: String, y: String },
    NotFull { x: String, y: String },
    NotEssentiallySurjective { object: String },
}

impl EquivalenceCheck {
    pub fn holds(&self) -> bool {
        *self == EquivalenceCheck::Equivalence
    }
}

impl fmt::Display for EquivalenceCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceCheck::Equivalence => write!(f, "equivalence"),
            EquivalenceCheck::NotFaithful { x, y } => write!(f, "not faithful on hom({x}, {y})"),
            EquivalenceCheck::NotFull { x, y } => write!(f, "not full on hom({x}, {y})"),
            EquivalenceCheck::NotEssentiallySurjective { object } => {
                write!(f, "not essentially surjective: nothing maps onto `{object}` up to isomorphism")
            }
        }
    }
}

/// True when `F` is full, faithful and essentially surjective.
pub fn is_equivalence(func: &Functor) -> EquivalenceCheck {
    let (c, d) = (func.source(), func.target());
    for x in 0..c.num_objects() {
        for y in 0..c.num_objects() {
            let hom = c.hom(x, y);
            let mut images: Vec<MorId> = hom.iter().map(|&f| func.mor(f)).collect();
            images.sort_unstable();
            images.dedup();
            let names = || (c.object_name(x).to_string(), c.object_name(y).to_string());
            if images.len() != hom.len() {
                let (x, y) = names();
                return EquivalenceCheck::NotFaithful { x, y };
            }
            if images.len() != d.hom(func.obj(x), func.obj(y)).len() {
                let (x, y) = names();
                return EquivalenceCheck::NotFull { x, y };
            }
        }
    }
    let classes = iso_classes(d);
    let mut hit = vec![false; d.num_objects()];
    for x in 0..c.num_objects() {
        hit[func.obj(x)] = true;
    }
    for cl in &classes {
        if !cl.iter().any(|&y| hit[y]) {
            return EquivalenceCheck::NotEssentiallySurjective {
                object: d.object_name(cl[0]).to_string(),
            };
        }
    }
    EquivalenceCheck::Equivalence
}

/// Search for a natural isomorphism `F ⇒ G` between parallel functors.
pub fn find_natural_iso(f: &Functor, g: &Functor, cap: u64) -> Result<IsoOutcome<NaturalTransformation>, FincatError> {
    let a = f.source().clone();
    let b = f.target().clone();
    // probe parallelism with an empty check
    if !(super::category::same_category(f.source(), g.source()) && super::category::same_category(f.target(), g.target())) {
        return Err(FincatError::Mismatch("natural isomorphism between non-parallel functors".into()));
    }
    let n = a.num_objects();
    let candidates: Vec<Vec<MorId>> = (0..n)
        .map(|x| b.hom(f.obj(x), g.obj(x)).iter().copied().filter(|&m| b.is_iso(m)).collect())
        .collect();
    let mut comp = vec![NONE; n];
    let mut nodes = 0u64;
    let mut exhausted = false;

    fn natural_at(a: &FiniteCategory, b: &FiniteCategory, f: &Functor, g: &Functor, comp: &[MorId], x: ObjId) -> bool {
        for y in 0..=x {
            for &(p, q) in &[(x, y), (y, x)] {
                for &m in a.hom(p, q) {
                    if b.compose(g.mor(m), comp[p]) != b.compose(comp[q], f.mor(m)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        x: usize,
        a: &FiniteCategory,
        b: &FiniteCategory,
        f: &Functor,
        g: &Functor,
        candidates: &[Vec<MorId>],
        comp: &mut Vec<MorId>,
        nodes: &mut u64,
        cap: u64,
        exhausted: &mut bool,
    ) -> bool {
        if x == comp.len() {
            return true;
        }
        for &m in &candidates[x] {
            *nodes += 1;
            if *nodes > cap {
                *exhausted = true;
                return false;
            }
            comp[x] = m;
            if natural_at(a, b, f, g, comp, x) && go(x + 1, a, b, f, g, candidates, comp, nodes, cap, exhausted) {
                return true;
            }
            if *exhausted {
                return false;
            }
        }
        comp[x] = NONE;
        false
    }

    if go(0, &a, &b, f, g, &candidates, &mut comp, &mut nodes, cap, &mut exhausted) {
        Ok(IsoOutcome::Found(NaturalTransformation::new(f.clone(), g.clone(), comp)?))
    } else if exhausted {
        Ok(IsoOutcome::Undecided)
    } else {
        Ok(IsoOutcome::NotFound)
    }
}
