//! Generated and hand-built adjunctions used to exercise the nucleus laws.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::fincat::{full_subcategory, karoubi_envelope, CategoryBuilder, FiniteCategory, Functor, ObjId};

use super::{kleisli_monad, monad_of, Adjunction};

/// A finite partial order as a reflexive relation matrix.
pub type Order = Vec<Vec<bool>>;

fn is_partial_order(leq: &Order) -> bool {
    let n = leq.len();
    (0..n).all(|i| {
        leq[i][i]
            && (0..n).all(|j| {
                (i == j || !(leq[i][j] && leq[j][i])) && (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k])
            })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(leq: &Order, perms: &[Vec<usize>]) -> Vec<bool> {
    perms
        .iter()
        .map(|p| {
            let n = leq.len();
            let mut code = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    code[p[i] * n + p[j]] = leq[i][j];
                }
            }
            code
        })
        .min()
        .unwrap_or_default()
}

/// All partial orders on `n` points up to isomorphism, in a fixed order.
pub fn posets_of_size(n: usize) -> Vec<Order> {
    let perms = permutations(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (b, &(i, j)) in pairs.iter().enumerate() {
            leq[i][j] = mask >> b & 1 == 1;
        }
        if is_partial_order(&leq) && seen.insert(canonical(&leq, &perms)) {
            out.push(leq);
        }
    }
    out
}

/// All partial orders with at most `n` points up to isomorphism.
pub fn posets_up_to(n: usize) -> Vec<Order> {
    (0..=n).flat_map(posets_of_size).collect()
}

/// The poset as a category with objects `"0"`, `"1"`, ...
pub fn poset_category(leq: &Order) -> Arc<FiniteCategory> {
    let names: Vec<String> = (0..leq.len()).map(|i| i.to_string()).collect();
    Arc::new(FiniteCategory::poset(&names, |i, j| leq[i][j]))
}

fn maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..n).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every Galois connection `f ⊣ g` from `p` to `q`, as the pair of maps.
pub fn galois_connections(p: &Order, q: &Order) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (m, n) = (p.len(), q.len());
    let mut out = Vec::new();
    for f in maps(m, n) {
        let monotone = (0..m).all(|i| (0..m).all(|j| !p[i][j] || q[f[i]][f[j]]));
        if !monotone {
            continue;
        }
        let g: Option<Vec<usize>> = (0..n)
            .map(|y| {
                let below: Vec<usize> = (0..m).filter(|&x| q[f[x]][y]).collect();
                below.iter().copied().find(|&t| below.iter().all(|&x| p[x][t]))
            })
            .collect();
        if let Some(g) = g {
            out.push((f, g));
        }
    }
    out
}

/// The adjunction between poset categories induced by `f ⊣ g`.
pub fn galois_adjunction(p: &Arc<FiniteCategory>, q: &Arc<FiniteCategory>, f: &[ObjId], g: &[ObjId]) -> Adjunction {
    let left = Functor::monotone(p, q, f);
    let right = Functor::monotone(q, p, g);
    let unit = (0..p.num_objects()).map(|x| p.hom(x, g[f[x]])[0]).collect();
    let counit = (0..q.num_objects()).map(|y| q.hom(f[g[y]], y)[0]).collect();
    Adjunction::new(left, right, unit, counit).expect("Galois connection")
}

/// Every adjunction between posets with at most `n` points, named
/// `P<i>->P<j>#<k>` after the enumeration order.
pub fn poset_adjunctions(n: usize) -> Vec<(String, Adjunction)> {
    let posets = posets_up_to(n);
    let cats: Vec<_> = posets.iter().map(poset_category).collect();
    let mut out = Vec::new();
    for (i, p) in posets.iter().enumerate() {
        for (j, q) in posets.iter().enumerate() {
            for (k, (f, g)) in galois_connections(p, q).into_iter().enumerate() {
                out.push((format!("P{i}->P{j}#{k}"), galois_adjunction(&cats[i], &cats[j], &f, &g)));
            }
        }
    }
    out
}

/// The chain `0 ≤ 1` as a category.
pub fn chain2() -> Arc<FiniteCategory> {
    poset_category(&vec![vec![true, true], vec![false, true]])
}

/// `2 ⇄ 1`: the constant functor to the terminal category, right adjoint
/// to nothing but left adjoint to the functor picking the top element.
pub fn two_to_one() -> Adjunction {
    let two = chain2();
    let one = FiniteCategory::terminal().into_arc();
    galois_adjunction(&two, &one, &[0, 0], &[1])
}

/// The monoid `{1, e}` with `e∘e = e`, as a one-object category whose
/// idempotent `e` does not split.
pub fn idempotent_monoid() -> Arc<FiniteCategory> {
    let mut b = CategoryBuilder::new();
    b.object("*").expect("fresh object");
    b.morphism("e", "*", "*").expect("fresh morphism");
    b.compose("e", "e", "e").expect("known morphisms");
    b.build().expect("idempotent monoid").into_arc()
}

/// Two isomorphic objects `x ≅ y` and the terminal category: an adjoint
/// equivalence with `F̂` collapsing and `Ǧ` picking `x`.
pub fn adjoint_equivalence() -> Adjunction {
    let mut b = CategoryBuilder::new();
    b.objects(&["x", "y"]).expect("fresh objects");
    b.morphism("f", "x", "y").expect("fresh morphism");
    b.morphism("g", "y", "x").expect("fresh morphism");
    b.compose("f", "g", "id:x").expect("known morphisms");
    b.compose("g", "f", "id:y").expect("known morphisms");
    let c = b.build().expect("isomorphic pair").into_arc();
    let one = FiniteCategory::terminal().into_arc();
    let left = Functor::constant(&c, &one, 0);
    let right = Functor::constant(&one, &c, 0);
    let g = c.morphism_id("g").expect("g");
    Adjunction::new(left, right, vec![c.identity(0), g], vec![one.identity(0)]).expect("adjoint equivalence")
}

/// The Karoubi envelope of [`idempotent_monoid`], its full subcategory on
/// the object `e`, the inclusion `i` and the collapse `r` onto it.
pub fn karoubi_pair() -> (Arc<FiniteCategory>, Arc<FiniteCategory>, Functor, Functor) {
    let m = idempotent_monoid();
    let kar = karoubi_envelope(&m);
    let k = kar.category().clone();
    let e = kar.object_of(m.morphism_id("e").expect("e")).expect("object e");
    let (sub, i) = full_subcategory(&k, &[e]);
    let only = sub.identity(0);
    let r = Functor::from_fn(&k, &sub, |_| 0, |_| only).expect("collapse");
    (k, sub, i, r)
}

/// `r ⊣ i` on the Karoubi envelope of the idempotent monoid.
pub fn karoubi_reflection() -> Adjunction {
    let (k, sub, i, r) = karoubi_pair();
    let e = i.obj(0);
    let unit = (0..k.num_objects()).map(|x| k.hom(x, e)[0]).collect();
    Adjunction::new(r, i, unit, vec![sub.identity(0)]).expect("reflection")
}

/// `i ⊣ r` on the Karoubi envelope of the idempotent monoid.
pub fn karoubi_coreflection() -> Adjunction {
    let (k, sub, i, r) = karoubi_pair();
    let e = i.obj(0);
    let counit = (0..k.num_objects()).map(|x| k.hom(e, x)[0]).collect();
    Adjunction::new(i, r, vec![sub.identity(0)], counit).expect("coreflection")
}

/// Finite sets of sizes 0, 1, 2 with the terminal-object adjunction
/// `! ⊣ 1`.
pub fn terminal_object() -> Adjunction {
    let c = FiniteCategory::finite_sets(&[0, 1, 2]).into_arc();
    let one = FiniteCategory::terminal().into_arc();
    let t = c.object_id("n1").expect("n1");
    let unit = (0..c.num_objects()).map(|x| c.hom(x, t)[0]).collect();
    Adjunction::new(Functor::constant(&c, &one, 0), Functor::constant(&one, &c, t), unit, vec![one.identity(0)])
        .expect("terminal object")
}

/// Finite sets of sizes 0, 1, 2 with the initial-object adjunction
/// `0 ⊣ !`.
pub fn initial_object() -> Adjunction {
    let c = FiniteCategory::finite_sets(&[0, 1, 2]).into_arc();
    let one = FiniteCategory::terminal().into_arc();
    let z = c.object_id("n0").expect("n0");
    let counit = (0..c.num_objects()).map(|x| c.hom(z, x)[0]).collect();
    Adjunction::new(Functor::constant(&one, &c, z), Functor::constant(&c, &one, 0), vec![one.identity(0)], counit)
        .expect("initial object")
}

/// Non-posetal adjunctions with idempotent-complete carriers.
pub fn hand_built() -> Vec<(String, Adjunction)> {
    let kar = karoubi_pair().0;
    vec![
        ("adjoint equivalence".to_string(), adjoint_equivalence()),
        ("Karoubi reflection".to_string(), karoubi_reflection()),
        ("Karoubi coreflection".to_string(), karoubi_coreflection()),
        (
            "Kleisli resolution on Karoubi envelope".to_string(),
            kleisli_monad(&monad_of(&karoubi_reflection())).adjunction,
        ),
        ("identity on Karoubi envelope".to_string(), Adjunction::identity(&kar)),
        ("terminal object in finite sets".to_string(), terminal_object()),
        ("initial object in finite sets".to_string(), initial_object()),
    ]
}

/// [`poset_adjunctions`] up to 4 points followed by [`hand_built`].
pub fn standard_family() -> Vec<(String, Adjunction)> {
    let mut out = poset_adjunctions(4);
    out.extend(hand_built());
    out
}
