use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use proptest::prelude::*;

use nucleus_core::concept::*;
use nucleus_core::fincat::{equivalent, find_isomorphism, FiniteCategory, IsoOutcome, DEFAULT_SEARCH_CAP};
use nucleus_core::nucleus::families::{galois_adjunction, poset_category};
use nucleus_core::nucleus::{nucleus, NucleusOptions};
use nucleus_core::Status;

fn fig2() -> Context {
    let all = ["b0", "b1", "b2", "b3"];
    let car = ["b0", "b1", "b2"];
    Context::from_rows(
        &all,
        &[
            ("a0", &all),
            ("a1", &car),
            ("a2", &car),
            ("a3", &car),
            ("a4", &["b1", "b2", "b3"]),
        ],
    )
    .unwrap()
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Closed intents by brute force: every intersection of a subfamily of rows.
fn oracle_intents(rows: &[u32], m: usize) -> BTreeSet<u32> {
    let all = (1u32 << m) - 1;
    (0u32..1 << rows.len())
        .map(|sub| (0..rows.len()).filter(|i| sub >> i & 1 == 1).fold(all, |acc, i| acc & rows[i]))
        .collect()
}

fn to_mask(s: &FixedBitSet) -> u32 {
    s.ones().fold(0, |m, i| m | 1 << i)
}

fn context_from_masks(rows: &[u32], m: usize) -> Context {
    Context::new(
        (0..rows.len()).map(|i| format!("a{i}")).collect(),
        (0..m).map(|j| format!("b{j}")).collect(),
        |a, b| rows[a] >> b & 1 == 1,
    )
    .unwrap()
}

#[test]
fn fig2_derivations() {
    let c = fig2();
    assert_eq!(c.derive_intent(&["a0", "a4"]).unwrap(), names(&["b1", "b2", "b3"]));
    assert_eq!(c.derive_extent(&["b0", "b1", "b2"]).unwrap(), names(&["a0", "a1", "a2", "a3"]));
    assert_eq!(c.derive_intent(&[]).unwrap(), names(&["b0", "b1", "b2", "b3"]));
    assert!(matches!(c.derive_intent(&["zz"]), Err(ConceptError::UnknownObject(_))));
    assert!(matches!(c.derive_extent(&["zz"]), Err(ConceptError::UnknownAttribute(_))));
}

#[test]
fn fig2_has_four_concepts() {
    let l = concept_lattice(&fig2(), LatticeOptions::default()).unwrap();
    assert_eq!(l.len(), 4);
    let got: Vec<(Vec<String>, Vec<String>)> = l
        .concepts()
        .iter()
        .map(|k| (l.context().object_names(&k.extent), l.context().attribute_names(&k.intent)))
        .collect();
    let want = vec![
        (names(&["a0"]), names(&["b0", "b1", "b2", "b3"])),
        (names(&["a0", "a1", "a2", "a3"]), names(&["b0", "b1", "b2"])),
        (names(&["a0", "a1", "a2", "a3", "a4"]), names(&["b1", "b2"])),
        (names(&["a0", "a4"]), names(&["b1", "b2", "b3"])),
    ];
    assert_eq!(got, want);
    assert!(l.verify().is_empty());
    assert_eq!(l.covers().len(), 4);
}

#[test]
fn empty_incidence_has_top_and_bottom() {
    let c = Context::new(names(&["x", "y"]), names(&["p", "q", "r"]), |_, _| false).unwrap();
    let l = concept_lattice(&c, LatticeOptions::default()).unwrap();
    assert_eq!(l.len(), 2);
    assert_ne!(l.top(), l.bottom());
}

#[test]
fn concept_cap_is_enforced() {
    let c = Context::new(names(&["x", "y", "z"]), names(&["p", "q", "r"]), |a, b| a != b).unwrap();
    let err = concept_lattice(&c, LatticeOptions { max_concepts: 3 }).unwrap_err();
    assert_eq!(err, ConceptError::TooManyConcepts(3));
    assert_eq!(concept_lattice(&c, LatticeOptions::default()).unwrap().len(), 8);
}

#[test]
fn closure_examples() {
    let c = fig2();
    let cl = closure_operator(&c);
    let got = cl.apply(&c.object_set(&["a1"]).unwrap());
    assert_eq!(c.object_names(&got), names(&["a0", "a1", "a2", "a3"]));
    // ∅ closes to the extent of all attributes.
    assert_eq!(cl.apply(&c.empty_objects()), c.extent(&c.all_attributes()));
    assert_eq!(cl.apply(&c.all_objects()), c.all_objects());
    assert!(cl.check_laws(1 << 20).is_empty());
    assert!(interior_operator(&c).check_laws(1 << 20).is_empty());
}

#[test]
fn galois_check_small_cases() {
    assert!(galois_check(&fig2(), GaloisOptions::default()).is_empty());
    let one = Context::new(names(&["a"]), names(&["b"]), |_, _| true).unwrap();
    assert!(galois_check(&one, GaloisOptions::default()).is_empty());
    let sampled = galois_check(
        &fig2(),
        GaloisOptions {
            cap: 16,
            samples: 500,
            seed: 3,
        },
    );
    assert!(!sampled.has_violations());
    assert_eq!(sampled.len(), 1);
    assert_eq!(sampled.entries()[0].status, Status::Sampled);
}

/// The literal `F̂L ⊆ U ⇔ L ⊇ ǦU` fails on the full 1×1 context, which is
/// why the check uses the reversed order on attribute sets.
#[test]
fn literal_superset_reading_fails_on_full_context() {
    let c = Context::new(names(&["a"]), names(&["b"]), |_, _| true).unwrap();
    let l = c.all_objects();
    let u = c.empty_attributes();
    let lhs = c.intent(&l).is_subset(&u);
    let rhs = c.extent(&u).is_subset(&l);
    assert_ne!(lhs, rhs);
}

#[test]
fn lower_and_upper_set_counts() {
    let chain = Poset::generated(names(&["0", "1", "2"]), &[(0, 1), (1, 2)]).unwrap();
    assert_eq!(lower_sets(&chain, 100).unwrap().len(), 4);
    assert_eq!(upper_sets(&chain, 100).unwrap().len(), 4);
    let anti = Poset::discrete(names(&["x", "y", "z"]));
    assert_eq!(lower_sets(&anti, 100).unwrap().len(), 8);
    assert!(lower_sets(&anti, 7).is_none());
    for s in upper_sets(&chain, 100).unwrap() {
        assert!(chain.is_upper_set(&s));
    }
}

#[test]
fn ordered_contexts_must_be_closed() {
    let p = Poset::generated(names(&["lo", "hi"]), &[(0, 1)]).unwrap();
    let q = Poset::discrete(names(&["b"]));
    // hi has b but lo ≤ hi does not.
    let bad = Context::with_orders(p.clone(), q.clone(), |a, _| a == 1);
    assert!(matches!(bad, Err(ConceptError::NotClosed(_))));
    let good = Context::with_orders(p, q, |a, _| a == 0).unwrap();
    let l = concept_lattice(&good, LatticeOptions::default()).unwrap();
    assert!(l.verify().is_empty());
    assert!(galois_check(&good, GaloisOptions::default()).is_empty());
}

#[test]
fn poset_validation() {
    let cyc = Poset::generated(names(&["x", "y"]), &[(0, 1), (1, 0)]);
    assert!(matches!(cyc, Err(ConceptError::InvalidOrder(_))));
    let json = PosetJson {
        elements: names(&["x", "y"]),
        order: vec![("x".into(), "w".into())],
    };
    assert!(matches!(Poset::from_json(&json), Err(ConceptError::UnknownElement(_))));
}

fn chain(n: usize) -> Poset {
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::generated((0..n).map(|i| i.to_string()).collect(), &pairs).unwrap()
}

#[test]
fn dedekind_macneille_examples() {
    let c = dedekind_macneille(&chain(3), LatticeOptions::default()).unwrap();
    assert_eq!(c.lattice.len(), 3);
    assert!(c.verify().is_empty());

    let anti = Poset::discrete(names(&["x", "y"]));
    let c = dedekind_macneille(&anti, LatticeOptions::default()).unwrap();
    assert_eq!(c.lattice.len(), 4);
    assert!(c.verify().is_empty());

    // The four-element Boolean lattice is its own completion.
    let b = Poset::generated(names(&["0", "x", "y", "1"]), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let c = dedekind_macneille(&b, LatticeOptions::default()).unwrap();
    assert_eq!(c.lattice.len(), 4);
    let mut hit: Vec<usize> = c.embedding.clone();
    hit.sort();
    assert_eq!(hit, vec![0, 1, 2, 3]);
}

#[test]
fn cxt_and_csv_parsing() {
    let c = fig2();
    let text = write_cxt(&c);
    assert_eq!(parse_context(&text).unwrap(), c);
    let named = "B\nfig2\n2\n2\n\nx\ny\np\nq\nX.\n.X\n";
    let d = parse_cxt(named).unwrap();
    assert_eq!(d.objects(), &names(&["x", "y"]));
    assert!(d.incident(0, 0) && !d.incident(0, 1));

    let csv = ",p,q\nx,1,\ny,0,X\n";
    let e = parse_context(csv).unwrap();
    assert_eq!(e.attributes(), &names(&["p", "q"]));
    assert!(e.incident(0, 0) && e.incident(1, 1) && !e.incident(1, 0));

    assert!(matches!(parse_cxt("B\n1\n1\nx\np\nQ\n"), Err(ConceptError::Parse(_))));
    assert!(matches!(parse_cxt("B\n1\n2\nx\np\nq\nX\n"), Err(ConceptError::Parse(_))));
    assert!(matches!(parse_csv(",p\nx,2\n"), Err(ConceptError::Parse(_))));
    assert!(matches!(parse_csv(",p\nx,1\nx,0\n"), Err(ConceptError::Parse(_))));
}

#[test]
fn json_and_dot_output_are_stable() {
    let l = concept_lattice(&fig2(), LatticeOptions::default()).unwrap();
    let j = lattice_json(&l);
    assert_eq!(j.concepts.len(), 4);
    assert_eq!(j.concepts[3].extent, names(&["a0", "a4"]));
    let dot = lattice_dot(&l);
    assert!(dot.starts_with("digraph lattice {"));
    assert_eq!(dot.matches("->").count(), 4);
    assert_eq!(dot, lattice_dot(&concept_lattice(&fig2(), LatticeOptions::default()).unwrap()));
}

fn context_strategy(max: usize) -> impl Strategy<Value = (Vec<u32>, usize)> {
    (1..=max, 1..=max).prop_flat_map(|(n, m)| (prop::collection::vec(0u32..(1 << m), n), Just(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn next_closure_matches_brute_force((rows, m) in context_strategy(8)) {
        let c = context_from_masks(&rows, m);
        let l = concept_lattice(&c, LatticeOptions::default()).unwrap();
        let got: BTreeSet<u32> = l.concepts().iter().map(|k| to_mask(&k.intent)).collect();
        prop_assert_eq!(got.len(), l.len());
        prop_assert_eq!(got, oracle_intents(&rows, m));
        prop_assert!(l.verify().is_empty());
    }

    #[test]
    fn derivations_are_antitone((rows, m) in context_strategy(10), s1 in any::<u32>(), s2 in any::<u32>()) {
        let c = context_from_masks(&rows, m);
        let n = rows.len();
        let set = |mask: u32, k: usize| {
            let mut s = FixedBitSet::with_capacity(k);
            for i in 0..k { s.set(i, mask >> i & 1 == 1); }
            s
        };
        let (l, l2) = (set(s1, n), set(s1 | s2, n));
        prop_assert!(c.intent(&l2).is_subset(&c.intent(&l)));
        let (u, u2) = (set(s1, m), set(s1 | s2, m));
        prop_assert!(c.extent(&u2).is_subset(&c.extent(&u)));
    }

    #[test]
    fn operators_are_closures((rows, m) in context_strategy(6)) {
        let c = context_from_masks(&rows, m);
        prop_assert!(closure_operator(&c).check_laws(1 << 14).is_empty());
        prop_assert!(interior_operator(&c).check_laws(1 << 14).is_empty());
        prop_assert!(galois_check(&c, GaloisOptions::default()).is_empty());
    }

    #[test]
    fn fixpoint_lattices_are_isomorphic((rows, m) in context_strategy(5)) {
        let c = context_from_masks(&rows, m);
        let f = fixpoint_lattices(&c, 1 << 10).unwrap();
        prop_assert!(check_order_isomorphisms(&c, &f).is_empty());
        // Independent oracle: isomorphism search between the poset categories.
        let closed = FiniteCategory::poset(&f.closed.iter().map(|s| format!("{s}")).collect::<Vec<_>>(),
            |i, j| f.closed[i].is_subset(&f.closed[j])).into_arc();
        let open = FiniteCategory::poset(&f.open.iter().map(|s| format!("{s}")).collect::<Vec<_>>(),
            |i, j| f.open[j].is_subset(&f.open[i])).into_arc();
        let iso = find_isomorphism(&closed, &open, DEFAULT_SEARCH_CAP);
        prop_assert!(matches!(iso, IsoOutcome::Found(_)));
        let l = concept_lattice(&c, LatticeOptions::default()).unwrap();
        prop_assert_eq!(l.len(), f.cuts.len());
    }

    #[test]
    fn completion_preserves_meets_and_joins(n in 1usize..9, bits in any::<u64>()) {
        // A random order: i < j allowed only for i < j as integers.
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .enumerate().filter(|(k, _)| bits >> (k % 64) & 1 == 1).map(|(_, p)| p).collect();
        let p = Poset::generated((0..n).map(|i| format!("p{i}")).collect(), &pairs).unwrap();
        let c = dedekind_macneille(&p, LatticeOptions::default()).unwrap();
        prop_assert!(c.verify().is_empty());
        // Completing the completion changes nothing.
        let l = &c.lattice;
        let q = Poset::from_relation((0..l.len()).map(|i| format!("c{i}")).collect(), |i, j| l.leq(i, j)).unwrap();
        let cc = dedekind_macneille(&q, LatticeOptions::default()).unwrap();
        prop_assert_eq!(cc.lattice.len(), l.len());
    }
}

/// The Galois connection of a context, as an adjunction between the lower
/// sets of the objects (by `⊆`) and the upper sets of the attributes (by `⊇`).
fn context_adjunction(c: &Context) -> nucleus_core::nucleus::Adjunction {
    let lows = lower_sets(c.object_order(), 1 << 10).unwrap();
    let ups = upper_sets(c.attribute_order(), 1 << 10).unwrap();
    let p: Vec<Vec<bool>> = lows.iter().map(|a| lows.iter().map(|b| a.is_subset(b)).collect()).collect();
    let q: Vec<Vec<bool>> = ups.iter().map(|a| ups.iter().map(|b| b.is_subset(a)).collect()).collect();
    let f: Vec<usize> = lows.iter().map(|l| ups.iter().position(|u| *u == c.intent(l)).unwrap()).collect();
    let g: Vec<usize> = ups.iter().map(|u| lows.iter().position(|l| *l == c.extent(u)).unwrap()).collect();
    galois_adjunction(&poset_category(&p), &poset_category(&q), &f, &g)
}

#[test]
fn nucleus_of_a_context_is_its_concept_lattice() {
    let mut checked = 0;
    for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (1, 4), (4, 1)] {
        for bits in 0u32..1 << (n * m) {
            let c = Context::new(
                (0..n).map(|i| format!("a{i}")).collect(),
                (0..m).map(|j| format!("b{j}")).collect(),
                |a, b| bits >> (a * m + b) & 1 == 1,
            )
            .unwrap();
            let a = context_adjunction(&c);
            let nuc = nucleus(&a, NucleusOptions::default()).unwrap();
            let l = concept_lattice(&c, LatticeOptions::default()).unwrap();
            let order: Vec<Vec<bool>> = (0..l.len()).map(|i| (0..l.len()).map(|j| l.leq(i, j)).collect()).collect();
            let lattice = poset_category(&order);
            for side in [nuc.domain(), nuc.codomain()] {
                let out = equivalent(side, &lattice, DEFAULT_SEARCH_CAP);
                assert!(out.is_equivalent(), "{n}x{m} context {bits:b}");
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 2 + 4 * 2 + 16 + 8 * 2 + 16 * 2);
}
