use std::sync::Arc;

use nucleus_core::fincat::*;
use proptest::prelude::*;

fn arc(c: FiniteCategory) -> Arc<FiniteCategory> {
    Arc::new(c)
}

fn two() -> Arc<FiniteCategory> {
    arc(FiniteCategory::poset(&["0", "1"], |i, j| i <= j))
}

/// One object `*` with morphisms `1` and `e`, `e∘e = e`.
fn monoid_m() -> Arc<FiniteCategory> {
    let mut b = CategoryBuilder::new();
    b.object("*").unwrap();
    b.morphism("e", "*", "*").unwrap();
    b.compose("e", "e", "e").unwrap();
    arc(b.build().unwrap())
}

fn iso_pair() -> Arc<FiniteCategory> {
    let mut b = CategoryBuilder::new();
    b.objects(&["x", "y"]).unwrap();
    b.morphism("f", "x", "y").unwrap();
    b.morphism("g", "y", "x").unwrap();
    b.compose("f", "g", "id:x").unwrap();
    b.compose("g", "f", "id:y").unwrap();
    arc(b.build().unwrap())
}

fn names(c: &FiniteCategory, ms: &[MorId]) -> Vec<String> {
    ms.iter().map(|&m| c.morphism_name(m).to_string()).collect()
}

#[test]
fn poset_two_is_valid() {
    let c = two();
    assert_eq!(c.num_objects(), 2);
    assert_eq!(c.num_morphisms(), 3);
    assert!(validate_category(&c).is_empty());
}

#[test]
fn deleted_composite_is_reported() {
    let c = two();
    let n = c.num_morphisms();
    let f = c.morphism_id("0<=1").unwrap();
    let id1 = c.identity(1);
    let mut table = Vec::new();
    for a in 0..n {
        for b in 0..n {
            table.push(if (a, b) == (f, id1) { None } else { c.table_entry(a, b) });
        }
    }
    let raw = FiniteCategory::from_parts(c.objects().to_vec(), c.morphisms().to_vec(), c.identities().to_vec(), table)
        .unwrap();
    let r = validate_category(&raw);
    assert_eq!(r.len(), 1);
    assert_eq!(r.entries()[0].law, "missing composite");
    assert_eq!(r.entries()[0].location, "(0<=1, id:1)");
}

#[test]
fn redirected_composite_breaks_associativity() {
    let mut b = CategoryBuilder::new();
    b.objects(&["0", "1", "2"]).unwrap();
    for (m, d, c) in [("f", "0", "1"), ("g", "1", "2"), ("h", "2", "2"), ("k", "0", "2"), ("k'", "0", "2"), ("g'", "1", "2")] {
        b.morphism(m, d, c).unwrap();
    }
    for (first, then, eq) in [
        ("f", "g", "k"),
        ("f", "g'", "k"), // should be k'
        ("g", "h", "g'"),
        ("g'", "h", "g'"),
        ("h", "h", "h"),
        ("k", "h", "k'"),
        ("k'", "h", "k'"),
    ] {
        b.compose(first, then, eq).unwrap();
    }
    let c = b.build_unchecked().unwrap();
    let r = validate_category(&c);
    assert!(r
        .entries()
        .iter()
        .any(|e| e.law == "associativity" && e.location == "(f, g, h)"));
}

#[test]
fn functor_examples() {
    let c = two();
    assert!(validate_functor(&Functor::identity(&c)).is_empty());
    let one = arc(FiniteCategory::terminal());
    assert!(validate_functor(&Functor::constant(&c, &one, 0)).is_empty());

    let m = monoid_m();
    let e = m.morphism_id("e").unwrap();
    let id = m.identity(0);
    let bad = Functor::from_fn(&c, &m, |_| 0, |f| if f == c.identity(0) || !c.is_identity(f) { e } else { id }).unwrap();
    let r = validate_functor(&bad);
    assert!(r.entries().iter().any(|x| x.law == "identity not preserved" && x.location == "0"));
}

#[test]
fn nat_trans_examples() {
    let c = two();
    let idf = Functor::identity(&c);
    assert!(validate_nat_trans(&NaturalTransformation::identity(&idf)).is_empty());

    // monotone maps p ≤ q pointwise on the chain 0<1<2
    let chain = arc(FiniteCategory::poset(&["0", "1", "2"], |i, j| i <= j));
    let p = Functor::monotone(&chain, &chain, &[0, 0, 1]);
    let q = Functor::monotone(&chain, &chain, &[1, 2, 2]);
    let t = NaturalTransformation::from_fn(p.clone(), q.clone(), |x| chain.hom(p.obj(x), q.obj(x))[0]).unwrap();
    assert!(validate_nat_trans(&t).is_empty());

    // one failing square in a three-object category
    let mut b = CategoryBuilder::new();
    b.objects(&["x", "y", "z"]).unwrap();
    for (m, d, cc) in [("a", "x", "y"), ("a'", "x", "y"), ("e", "y", "y"), ("b", "y", "z"), ("ba", "x", "z")] {
        b.morphism(m, d, cc).unwrap();
    }
    for (f, g, h) in [("a", "e", "a'"), ("a'", "e", "a'"), ("e", "e", "e"), ("a", "b", "ba"), ("a'", "b", "ba"), ("e", "b", "b")] {
        b.compose(f, g, h).unwrap();
    }
    let k = arc(b.build().unwrap());
    let id = Functor::identity(&k);
    let e = k.morphism_id("e").unwrap();
    let t = NaturalTransformation::from_fn(id.clone(), id, |x| if x == 1 { e } else { k.identity(x) }).unwrap();
    let r = validate_nat_trans(&t);
    assert_eq!(r.len(), 1);
    assert_eq!(r.entries()[0].location, "a");
}

#[test]
fn wrong_component_is_structural() {
    let c = two();
    let idf = Functor::identity(&c);
    let f = c.morphism_id("0<=1").unwrap();
    assert!(NaturalTransformation::new(idf.clone(), idf, vec![f, c.identity(1)]).is_err());
}

#[test]
fn skeleton_examples() {
    let (s, inc) = skeleton(&iso_pair());
    assert_eq!(s.num_objects(), 1);
    assert_eq!(s.object_name(0), "x");
    assert!(validate_functor(&inc).is_empty());

    let c = two();
    let (s, _) = skeleton(&c);
    assert_eq!(*s, *c);

    let k = karoubi_envelope(&monoid_m());
    let (s, _) = skeleton(k.category());
    assert_eq!(s.num_objects(), 2);
}

#[test]
fn skeleton_retraction_is_an_equivalence() {
    let data = skeleton_data(&iso_pair());
    assert!(validate_functor(&data.retraction).is_empty());
    assert!(is_equivalence(&data.retraction).holds());
    assert!(is_equivalence(&data.inclusion).holds());
}

#[test]
fn equivalence_examples() {
    let c = two();
    let renamed = arc(FiniteCategory::poset(&["lo", "hi"], |i, j| i <= j));
    assert!(equivalent(&c, &renamed, DEFAULT_SEARCH_CAP).is_equivalent());

    let pair = iso_pair();
    let (sub, _) = full_subcategory(&pair, &[0]);
    assert!(equivalent(&pair, &sub, DEFAULT_SEARCH_CAP).is_equivalent());

    let disc = arc(FiniteCategory::discrete(&["0", "1"]));
    assert!(matches!(equivalent(&c, &disc, DEFAULT_SEARCH_CAP), EquivalenceOutcome::NotEquivalent));
}

#[test]
fn equivalence_witness_is_a_functor() {
    let pair = iso_pair();
    let one = arc(FiniteCategory::terminal());
    match equivalent(&pair, &one, DEFAULT_SEARCH_CAP) {
        EquivalenceOutcome::Equivalent { forward, backward, .. } => {
            assert!(validate_functor(&forward).is_empty());
            assert!(validate_functor(&backward).is_empty());
            assert!(is_equivalence(&forward).holds());
            assert!(is_equivalence(&backward).holds());
        }
        other => panic!("expected equivalence, got {other:?}"),
    }
}

#[test]
fn tiny_cap_is_undecided() {
    // two copies of the finite-set fragment force a real morphism search
    let a = arc(FiniteCategory::finite_sets(&[2, 3]));
    let b = arc(FiniteCategory::finite_sets(&[2, 3]));
    assert!(equivalent(&a, &b, 3).is_undecided());
    assert!(equivalent(&a, &b, DEFAULT_SEARCH_CAP).is_equivalent());
}

#[test]
fn non_isomorphic_monoids_with_equal_counts() {
    // {1, e} with e∘e = e versus {1, s} with s∘s = 1
    let m = monoid_m();
    let mut b = CategoryBuilder::new();
    b.object("*").unwrap();
    b.morphism("s", "*", "*").unwrap();
    b.compose("s", "s", "id:*").unwrap();
    let z2 = arc(b.build().unwrap());
    assert!(matches!(find_isomorphism(&m, &z2, DEFAULT_SEARCH_CAP), IsoOutcome::NotFound));
}

#[test]
fn grothendieck_examples() {
    let one = arc(FiniteCategory::terminal());
    let phi = FiniteDistributor::new(&one, &one, |_, _| vec!["x".into()], |_, _, _| 0).unwrap();
    let g = grothendieck(&phi).unwrap();
    assert!(equivalent(&g.category, &one, DEFAULT_SEARCH_CAP).is_equivalent());
    assert_eq!(g.category.num_morphisms(), 1);

    let c = two();
    let g = grothendieck(&FiniteDistributor::hom(&c)).unwrap();
    assert_eq!(g.category.num_objects(), 3);
    assert!(validate_category(&g.category).is_empty());
    assert!(validate_functor(&g.projection).is_empty());
    assert!(g.check_discrete_fibration().is_empty());

    let empty = FiniteDistributor::new(&c, &c, |_, _| Vec::new(), |_, _, _| 0).unwrap();
    let g = grothendieck(&empty).unwrap();
    assert_eq!(g.category.num_objects(), 0);
}

#[test]
fn non_functorial_distributor_is_rejected() {
    let c = two();
    // swap the two elements of Φ(0,1) under the identity action
    let res = FiniteDistributor::new(
        &c,
        &c,
        |x, y| if (x, y) == (0, 1) { vec!["p".into(), "q".into()] } else { vec!["r".into()] },
        |f, g, k| if c.is_identity(f) && c.is_identity(g) && c.dom(f) == 0 && c.dom(g) == 1 { 1 - k } else { 0 },
    );
    assert!(res.is_err());
}

#[test]
fn karoubi_of_idempotent_monoid() {
    let m = monoid_m();
    let k = karoubi_envelope(&m);
    let kc = k.category();
    assert!(validate_category(kc).is_empty());
    assert_eq!(kc.num_objects(), 2);
    let i = kc.object_id("id:*").unwrap();
    let e = kc.object_id("e").unwrap();
    let under = |x, y| {
        let mut v: Vec<String> = kc.hom(x, y).iter().map(|&f| m.morphism_name(k.lifted.underlying[f]).to_string()).collect();
        v.sort();
        v
    };
    assert_eq!(under(i, i), vec!["e".to_string(), "id:*".to_string()]);
    assert_eq!(under(i, e), vec!["e".to_string()]);
    assert_eq!(under(e, i), vec!["e".to_string()]);
    assert_eq!(under(e, e), vec!["e".to_string()]);
    assert!(kc.is_idempotent_complete());
    assert!(validate_functor(&k.embedding).is_empty());
    let emb = is_equivalence(&k.embedding);
    assert!(matches!(emb, EquivalenceCheck::NotEssentiallySurjective { .. }));
}

#[test]
fn karoubi_of_complete_category_is_equivalent() {
    let c = two();
    let k = karoubi_envelope(&c);
    assert!(equivalent(&c, k.category(), DEFAULT_SEARCH_CAP).is_equivalent());
    assert!(is_equivalence(&k.embedding).holds());
    let empty = arc(FiniteCategory::empty());
    assert_eq!(karoubi_envelope(&empty).category().num_objects(), 0);
}

#[test]
fn splitting_examples() {
    let c = two();
    let r = split_idempotent(&c, c.identity(1)).unwrap();
    assert_eq!((r.e, r.m), (c.identity(1), c.identity(1)));

    let m = monoid_m();
    let e = m.morphism_id("e").unwrap();
    assert_eq!(split_idempotent(&m, e), Err(FincatError::NoSplitting("e".into())));
    assert!(!m.is_idempotent_complete());

    let k = karoubi_envelope(&m);
    let kc = k.category();
    let i = kc.object_id("id:*").unwrap();
    let eo = kc.object_id("e").unwrap();
    let phi = kc.lifted_morphism(&k, i, i, e);
    let r = split_idempotent(kc, phi).unwrap();
    assert_eq!(r.small, eo);
    assert!(r.holds(kc));

    let fs = FiniteCategory::finite_sets(&[2]);
    let swap = fs.morphism_id("f[1,0]:n2->n2").unwrap();
    assert!(matches!(split_idempotent(&fs, swap), Err(FincatError::NotIdempotent(_))));
}

trait LiftedLookup {
    fn lifted_morphism(&self, k: &Karoubi, i: ObjId, j: ObjId, base: MorId) -> MorId;
}

impl LiftedLookup for Arc<FiniteCategory> {
    fn lifted_morphism(&self, k: &Karoubi, i: ObjId, j: ObjId, base: MorId) -> MorId {
        k.lifted.lift(i, j, base).unwrap()
    }
}

#[test]
fn all_splittings_are_isomorphic() {
    let fs = FiniteCategory::finite_sets(&[1, 2, 3]);
    let mut checked = 0;
    for phi in fs.idempotents() {
        let all = all_splittings(&fs, phi).unwrap();
        assert!(!all.is_empty(), "finite sets split {}", fs.morphism_name(phi));
        for a in &all {
            assert!(a.holds(&fs));
            assert_eq!(fs.compose(a.m, a.e), phi);
            for b in &all {
                assert!(a.comparison_is_iso(b, &fs));
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn karoubi_is_idempotent_up_to_equivalence() {
    let m = monoid_m();
    let k1 = karoubi_envelope(&m);
    let k2 = karoubi_envelope(k1.category());
    assert!(equivalent(k1.category(), k2.category(), DEFAULT_SEARCH_CAP).is_equivalent());
    for phi in k2.category().idempotents() {
        assert!(split_idempotent(k2.category(), phi).is_ok());
    }
}

#[test]
fn split_equalizer_identities() {
    let one = FiniteCategory::terminal();
    let id = one.identity(0);
    let d = SplitEqualizer { i: id, q: id, f: id, j: id, r: id };
    let out = check_split_equalizer(&one, &d).unwrap();
    assert!(out.idempotent && out.is_equalizer && out.composite_condition);
    assert!(out.report.is_empty());
}

fn fs_map(fs: &FiniteCategory, values: &[usize], dom: usize, cod: usize) -> MorId {
    let name = if dom == cod && values.iter().enumerate().all(|(i, &v)| i == v) {
        format!("id:n{dom}")
    } else {
        format!("f{values:?}:n{dom}->n{cod}").replace(' ', "")
    };
    fs.morphism_id(&name).unwrap_or_else(|| panic!("no morphism {name}"))
}

#[test]
fn split_equalizer_in_finite_sets() {
    let fs = FiniteCategory::finite_sets(&[1, 2]);
    let d = SplitEqualizer {
        i: fs_map(&fs, &[0], 1, 2),
        q: fs_map(&fs, &[0, 0], 2, 1),
        f: fs_map(&fs, &[0, 0], 2, 2),
        j: fs_map(&fs, &[0, 1], 2, 2),
        r: fs_map(&fs, &[0, 1], 2, 2),
    };
    let out = check_split_equalizer(&fs, &d).unwrap();
    assert!(out.idempotent && out.composite_condition && out.is_equalizer);

    // f = j = r = id: i∘q is constant, r∘f is not, and i does not equalize
    let d = SplitEqualizer {
        f: fs_map(&fs, &[0, 1], 2, 2),
        ..d
    };
    let out = check_split_equalizer(&fs, &d).unwrap();
    assert!(out.idempotent && !out.composite_condition && !out.is_equalizer);
    assert!(out.report.is_empty());
}

#[test]
fn split_equalizer_precondition() {
    let fs = FiniteCategory::finite_sets(&[1, 2]);
    let d = SplitEqualizer {
        i: fs_map(&fs, &[0], 1, 2),
        q: fs_map(&fs, &[0, 0], 2, 1),
        f: fs_map(&fs, &[1, 0], 2, 2),
        j: fs_map(&fs, &[0, 1], 2, 2),
        r: fs_map(&fs, &[0, 0], 2, 2),
    };
    assert!(matches!(check_split_equalizer(&fs, &d), Err(FincatError::Precondition(_))));
}

/// An equalizer whose retraction `q` is not the one induced by `r∘f`.
#[test]
fn equalizer_without_composite_condition() {
    let fs = FiniteCategory::finite_sets(&[2, 3, 4]);
    let d = SplitEqualizer {
        i: fs_map(&fs, &[0, 1], 2, 3),
        q: fs_map(&fs, &[0, 1, 1], 3, 2),
        f: fs_map(&fs, &[0, 1, 3], 3, 4),
        j: fs_map(&fs, &[0, 1, 2], 3, 4),
        r: fs_map(&fs, &[0, 1, 2, 0], 4, 3),
    };
    let out = check_split_equalizer(&fs, &d).unwrap();
    assert!(out.idempotent);
    assert!(out.is_equalizer);
    assert!(!out.composite_condition);
    assert!(out.report.has_violations());
    // the induced retraction q' = q∘r∘f does satisfy the condition
    let rf = fs.compose(d.r, d.f);
    let q2 = fs.compose(d.q, rf);
    let out2 = check_split_equalizer(&fs, &SplitEqualizer { q: q2, ..d }).unwrap();
    assert!(out2.composite_condition && out2.is_equalizer);
}

#[test]
fn opposite_is_an_involution() {
    for c in [two(), monoid_m(), iso_pair(), arc(FiniteCategory::finite_sets(&[1, 2]))] {
        let op = c.opposite();
        assert!(validate_category(&op).is_empty());
        assert_eq!(op.opposite(), *c);
    }
}

#[test]
fn json_round_trip() {
    for c in [two(), monoid_m(), iso_pair()] {
        let j = category_to_json(&c);
        let text = serde_json::to_string(&j).unwrap();
        let back: CategoryJson = serde_json::from_str(&text).unwrap();
        let d = category_from_json(&back).unwrap();
        assert!(validate_category(&d).is_empty());
        assert_eq!(names(&d, &(0..d.num_morphisms()).collect::<Vec<_>>()).len(), c.num_morphisms());
        assert!(find_isomorphism(&c, &Arc::new(d), DEFAULT_SEARCH_CAP).found().is_some());
    }
}

#[test]
fn monic_and_epi_by_cancellation() {
    let fs = FiniteCategory::finite_sets(&[1, 2, 3]);
    let inj = fs_map(&fs, &[0, 2], 2, 3);
    let sur = fs_map(&fs, &[0, 1, 1], 3, 2);
    assert!(fs.is_monic(inj) && !fs.is_epi(inj));
    assert!(fs.is_epi(sur) && !fs.is_monic(sur));
}

/// Random preorders on up to five objects, optionally renamed.
fn preorder_strategy() -> impl Strategy<Value = (usize, Vec<bool>)> {
    (1usize..=5).prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n)))
}

fn preorder(n: usize, bits: &[bool], perm_seed: usize) -> Arc<FiniteCategory> {
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            rel[i * n + j] = i == j || bits[i * n + j];
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i * n + k] && rel[k * n + j] {
                    rel[i * n + j] = true;
                }
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("o{}", (i + perm_seed) % n)).collect();
    arc(FiniteCategory::poset(&names, |i, j| rel[i * n + j]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equivalence_is_an_equivalence_relation(
        (n1, b1) in preorder_strategy(),
        (n2, b2) in preorder_strategy(),
        (n3, b3) in preorder_strategy(),
        s in 0usize..5,
    ) {
        let a = preorder(n1, &b1, 0);
        let b = preorder(n2, &b2, s);
        let c = preorder(n3, &b3, 0);
        let cap = DEFAULT_SEARCH_CAP;
        prop_assert!(equivalent(&a, &a, cap).is_equivalent());
        let ab = equivalent(&a, &b, cap).is_equivalent();
        prop_assert_eq!(ab, equivalent(&b, &a, cap).is_equivalent());
        let bc = equivalent(&b, &c, cap).is_equivalent();
        if ab && bc {
            prop_assert!(equivalent(&a, &c, cap).is_equivalent());
        }
        // a renamed copy is always equivalent
        let a2 = preorder(n1, &b1, s);
        prop_assert!(equivalent(&a, &a2, cap).is_equivalent());
    }

    #[test]
    fn preorders_are_valid_and_skeleta_are_skeletal((n, bits) in preorder_strategy()) {
        let c = preorder(n, &bits, 0);
        prop_assert!(validate_category(&c).is_empty());
        let (s, inc) = skeleton(&c);
        prop_assert!(validate_functor(&inc).is_empty());
        prop_assert_eq!(iso_classes(&s).len(), s.num_objects());
        prop_assert!(is_equivalence(&inc).holds());
        prop_assert_eq!(c.opposite().opposite(), (*c).clone());
    }

    #[test]
    fn composite_condition_implies_equalizer(seed in any::<u64>()) {
        let fs = FiniteCategory::finite_sets(&[1, 2, 3]);
        if let Some(d) = random_split_diagram(&fs, seed) {
            let out = check_split_equalizer(&fs, &d).unwrap();
            prop_assert!(out.idempotent);
            if out.composite_condition {
                prop_assert!(out.is_equalizer);
            }
        }
    }
}

fn random_split_diagram(fs: &FiniteCategory, seed: u64) -> Option<SplitEqualizer> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let pick = |rng: &mut rand_chacha::ChaCha8Rng, x: usize, y: usize| {
            let h = fs.hom(x, y);
            h[rng.gen_range(0..h.len())]
        };
        let n = fs.num_objects();
        let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let d = SplitEqualizer {
            i: pick(&mut rng, a, b),
            q: pick(&mut rng, b, a),
            f: pick(&mut rng, b, c),
            j: pick(&mut rng, b, c),
            r: pick(&mut rng, c, b),
        };
        if d.preconditions(fs).is_ok() {
            return Some(d);
        }
    }
    None
}
