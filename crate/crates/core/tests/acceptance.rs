//! The acceptance criteria, one line each. The lines go straight to
//! standard output so that they show up without `--nocapture`.

use std::collections::HashSet;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nucleus_core::chu::{check_se_reduce, find_chu_isomorphism, se_reduce, ChuSpace};
use nucleus_core::concept::{
    check_order_isomorphisms, concept_lattice, dedekind_macneille, fixpoint_lattices, galois_check, lattice_json,
    Context, GaloisOptions, LatticeOptions, Poset,
};
use nucleus_core::fincat::{
    category_to_json, check_split_equalizer, equivalent, karoubi_envelope, split_idempotent, FiniteCategory, MorId,
    SplitEqualizer, DEFAULT_SEARCH_CAP,
};
use nucleus_core::linalg::{check_spectral, nucleus_idempotence_check, svd_nucleus, DenseMatrix, SpectralTolerances};
use nucleus_core::nucleus::families::{chain2, idempotent_monoid, standard_family, two_to_one};
use nucleus_core::nucleus::{
    check_adjunction, check_comonad, check_hom_bijection, check_monad, check_retracts, check_street_idempotence,
    comonad_of, is_nuclear, is_subnuclear, little_nucleus, monad_of, nucleus, nucleus_data, simple_nucleus, Adjunction,
    Monad, NucleusOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Fail with the first problem found, else pass with `detail`.
fn from_problems(problems: Vec<String>, detail: String) -> Outcome {
    match problems.first() {
        None => outcome(true, detail),
        Some(p) => outcome(false, format!("{} problem(s), first: {p}", problems.len())),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            o.pass = false;
            o.detail = format!("{}; over the {:?} budget", o.detail, limit);
        }
    }
    (o, took)
}

fn equiv(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>) -> bool {
    equivalent(c, d, DEFAULT_SEARCH_CAP).is_equivalent()
}

fn masks_context(rows: &[u32], m: usize) -> Context {
    Context::new(
        (0..rows.len()).map(|i| format!("a{i}")).collect(),
        (0..m).map(|j| format!("b{j}")).collect(),
        |a, b| rows[a] >> b & 1 == 1,
    )
    .unwrap()
}

fn c1_fca_golden() -> Outcome {
    let rows: [u32; 5] = [0b1111, 0b0111, 0b0111, 0b0111, 0b1110];
    let l = concept_lattice(&masks_context(&rows, 4), LatticeOptions::default()).unwrap();
    let j = lattice_json(&l);
    let has = |e: &[&str], i: &[&str]| j.concepts.iter().any(|c| c.extent == e && c.intent == i);
    let ok = j.concepts.len() == 4
        && has(&["a0", "a4"], &["b1", "b2", "b3"])
        && has(&["a0", "a1", "a2", "a3"], &["b0", "b1", "b2"]);
    outcome(ok, format!("{} concepts", j.concepts.len()))
}

fn c2_galois() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut problems = Vec::new();
    for k in 0..1000 {
        let (n, m) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
        let rows: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << m)).collect();
        let r = galois_check(&masks_context(&rows, m), GaloisOptions::default());
        if !r.is_empty() {
            problems.push(format!("context {k} ({n}×{m}): {r}"));
        }
    }
    from_problems(problems, "1000 contexts, every (L, U) pair".into())
}

/// Non-decreasing sequences of `n` row masks below `2^m`.
fn row_multisets(n: usize, m: usize, f: &mut impl FnMut(&[u32])) {
    fn go(rows: &mut Vec<u32>, n: usize, top: u32, f: &mut impl FnMut(&[u32])) {
        if rows.len() == n {
            f(rows);
            return;
        }
        let start = rows.last().copied().unwrap_or(0);
        for x in start..top {
            rows.push(x);
            go(rows, n, top, f);
            rows.pop();
        }
    }
    go(&mut Vec::new(), n, 1 << m, f);
}

fn c3_order_isomorphisms() -> Outcome {
    let mut problems = Vec::new();
    let mut count = 0u64;
    for n in 0..=5 {
        for m in 0..=5 {
            row_multisets(n, m, &mut |rows| {
                count += 1;
                let c = masks_context(rows, m);
                let f = fixpoint_lattices(&c, 1 << 20).unwrap();
                let r = check_order_isomorphisms(&c, &f);
                if !r.is_empty() && problems.len() < 10 {
                    problems.push(format!("{rows:?}: {r}"));
                }
            });
        }
    }
    from_problems(problems, format!("{count} contexts up to row order"))
}

fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> Poset {
    let p = rng.gen_range(0.05..0.6);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    // Shuffle names so that the linear order is not the index order.
    let mut names: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        names.swap(i, rng.gen_range(0..=i));
    }
    Poset::generated(names.iter().map(|k| format!("p{k}")).collect(), &pairs).unwrap()
}

fn is_lattice(p: &Poset) -> bool {
    !p.is_empty() && (0..p.len()).all(|i| (0..p.len()).all(|j| p.meet(i, j).is_some() && p.join(i, j).is_some()))
}

fn c4_dedekind_macneille() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut problems = Vec::new();
    let mut lattices = 0;
    for k in 0..200 {
        let n = rng.gen_range(1..=12);
        let p = random_poset(&mut rng, n);
        let c = dedekind_macneille(&p, LatticeOptions::default()).unwrap();
        let r = c.verify();
        if !r.is_empty() {
            problems.push(format!("poset {k}: {r}"));
        }
        if is_lattice(&p) {
            lattices += 1;
            if c.lattice.len() != p.len() {
                problems.push(format!("poset {k} is a lattice but its completion has {} elements", c.lattice.len()));
            }
        }
        // The completion is a lattice; completing it again changes nothing.
        let l = &c.lattice;
        let q = Poset::from_relation((0..l.len()).map(|i| format!("c{i}")).collect(), |i, j| l.leq(i, j)).unwrap();
        let cc = dedekind_macneille(&q, LatticeOptions::default()).unwrap();
        if cc.lattice.len() != q.len() || !cc.verify().is_empty() {
            problems.push(format!("poset {k}: completion of the completion is not isomorphic to it"));
        }
    }
    from_problems(problems, format!("200 posets, {lattices} of them lattices"))
}

fn c5_svd() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut problems = Vec::new();
    let mut worst = 0.0f64;
    for k in 0..500 {
        let (r, c) = (rng.gen_range(1..=16), rng.gen_range(1..=16));
        let mut random = |r: usize, c: usize| {
            DenseMatrix::new(r, c, (0..r * c).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
        };
        // Every fourth matrix is a product through a thin middle.
        let m = if k % 4 == 3 {
            let mid = (r.min(c) / 2).max(1);
            random(r, mid).matmul(&random(mid, c)).unwrap()
        } else {
            random(r, c)
        };
        let s = svd_nucleus(&m, 1e-10).unwrap();
        let rep = check_spectral(&m, &s, SpectralTolerances::default());
        if !rep.is_empty() {
            problems.push(format!("matrix {k} ({r}×{c}): {rep}"));
        }
        let idem = nucleus_idempotence_check(&m, 1e-10).unwrap();
        worst = worst.max(idem.max_deviation);
        if !idem.report.is_empty() || idem.max_deviation > 1e-9 {
            problems.push(format!("matrix {k}: re-nucleus moved σ by {:e}", idem.max_deviation));
        }
    }
    from_problems(problems, format!("500 matrices, worst re-nucleus drift {worst:.1e}"))
}

struct FamilyRun {
    problems: [Vec<String>; 6],
    size: usize,
}

/// Criteria 6 to 10 share the family and the nucleus computations.
fn run_family() -> FamilyRun {
    let mut problems: [Vec<String>; 6] = Default::default();
    let family = standard_family();
    let opts = NucleusOptions::default();
    let non_posetal = family.iter().filter(|(n, _)| !n.contains('⇄')).count();
    if non_posetal < 3 {
        problems[0].push(format!("only {non_posetal} hand-built adjunctions"));
    }
    for (name, a) in &family {
        let laws = |p: &mut Vec<String>, what: &str, a: &Adjunction| {
            for (law, r) in [
                ("adjunction", check_adjunction(a)),
                ("monad", check_monad(&monad_of(a))),
                ("comonad", check_comonad(&comonad_of(a))),
            ] {
                if !r.is_empty() {
                    p.push(format!("{name} ({what}, {law}): {r}"));
                }
            }
        };
        laws(&mut problems[0], "input", a);
        let d = match nucleus_data(a, opts) {
            Ok(d) => d,
            Err(e) => {
                problems[0].push(format!("{name}: {e}"));
                continue;
            }
        };
        let n = &d.adjunction;
        laws(&mut problems[0], "nucleus", n);
        match is_nuclear(n) {
            Ok(ev) if ev.holds() => {}
            Ok(ev) => problems[0].push(format!("{name}: nucleus not nuclear: {ev}")),
            Err(e) => problems[0].push(format!("{name}: {e}")),
        }
        match nucleus(n, opts) {
            Ok(nn) if equiv(nn.domain(), n.domain()) && equiv(nn.codomain(), n.codomain()) => {}
            Ok(_) => problems[0].push(format!("{name}: nucleus twice is not equivalent to once")),
            Err(e) => problems[0].push(format!("{name}: {e}")),
        }

        let r = check_hom_bijection(&d);
        if !r.is_empty() {
            problems[2].push(format!("{name}: {r}"));
        }

        match simple_nucleus(a) {
            Ok(s) => {
                if !equiv(s.ec_category(), d.coalgebras.category()) {
                    problems[1].push(format!("{name}: Ec ≄ coalgebras"));
                }
                if !equiv(s.em_category(), d.algebras.category()) {
                    problems[1].push(format!("{name}: Em ≄ algebras"));
                }
                let r = check_retracts(&s);
                if !r.is_empty() {
                    problems[3].push(format!("{name}: {r}"));
                }
            }
            Err(e) => problems[1].push(format!("{name}: {e}")),
        }

        match little_nucleus(a) {
            Ok(l) => {
                if !is_subnuclear(&l.adjunction).map(|e| e.holds()).unwrap_or(false) {
                    problems[4].push(format!("{name}: little nucleus is not subnuclear"));
                }
                match nucleus(&l.adjunction, opts) {
                    Ok(nl) if equiv(nl.domain(), n.domain()) && equiv(nl.codomain(), n.codomain()) => {}
                    Ok(_) => problems[4].push(format!("{name}: nucleus of little ≄ nucleus")),
                    Err(e) => problems[4].push(format!("{name}: {e}")),
                }
            }
            Err(e) => problems[4].push(format!("{name}: {e}")),
        }
    }
    FamilyRun {
        problems,
        size: family.len(),
    }
}

fn c11_street() -> Outcome {
    let mut problems = Vec::new();
    let monads = [
        ("identity on 2", Monad::identity(&chain2())),
        ("closure on 2", monad_of(&two_to_one())),
    ];
    for (name, m) in &monads {
        match check_street_idempotence(m, NucleusOptions::default(), DEFAULT_SEARCH_CAP) {
            Ok(s) if s.holds() => {}
            Ok(_) => problems.push(format!("{name}: twice ≄ once")),
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    from_problems(problems, "identity and closure monads".into())
}

fn all_spaces(rows: usize, cols: usize, k: usize, f: &mut impl FnMut(ChuSpace)) {
    let cells = rows * cols;
    for mut code in 0..(k as u64).pow(cells as u32) {
        let mut m = vec![vec![0; cols]; rows];
        for c in 0..cells {
            m[c / cols][c % cols] = (code % k as u64) as usize;
            code /= k as u64;
        }
        let mut x = ChuSpace::from_matrix(k, m).unwrap();
        x.b = (0..cols).map(|j| format!("b{j}")).collect();
        f(x);
    }
}

fn c12_chu() -> Outcome {
    let mut problems = Vec::new();
    let mut check = |x: &ChuSpace| {
        let s = se_reduce(x);
        let r = check_se_reduce(x, &s);
        if !r.is_empty() {
            problems.push(format!("{:?}: {r}", x.matrix));
        } else if find_chu_isomorphism(&s.rows_first.reduced, &s.columns_first.reduced).is_none() {
            problems.push(format!("{:?}: orders give non-isomorphic spaces", x.matrix));
        }
    };
    let mut exhaustive = 0u64;
    for k in 1..=3 {
        for rows in 0..=3 {
            for cols in 0..=3 {
                all_spaces(rows, cols, k, &mut |x| {
                    check(&x);
                    exhaustive += 1;
                });
            }
        }
    }
    all_spaces(4, 4, 2, &mut |x| {
        check(&x);
        exhaustive += 1;
    });
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let sampled = 20_000;
    for _ in 0..sampled {
        let k = rng.gen_range(1..=4);
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        // Draw rows from a small pool so that merges actually happen.
        let pool: Vec<Vec<usize>> = (0..rng.gen_range(1..=r)).map(|_| (0..c).map(|_| rng.gen_range(0..k)).collect()).collect();
        let m = (0..r).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        check(&ChuSpace::from_matrix(k, m).unwrap());
    }
    from_problems(
        problems,
        format!("{exhaustive} spaces exhaustively (≤3×3 over ≤3 letters, 4×4 binary), {sampled} sampled up to 8×8 over ≤4"),
    )
}

/// Values of a function in the finite-set category, read off its name.
fn values(fs: &FiniteCategory, f: MorId) -> Vec<usize> {
    let name = fs.morphism_name(f);
    if name.starts_with("id:") {
        return (0..size(fs, fs.dom(f))).collect();
    }
    let list = &name[name.find('[').unwrap() + 1..name.find(']').unwrap()];
    list.split(',').filter(|s| !s.is_empty()).map(|s| s.parse().unwrap()).collect()
}

fn size(fs: &FiniteCategory, x: usize) -> usize {
    fs.object_name(x)[1..].parse().unwrap()
}

fn fs_morphism(fs: &FiniteCategory, vals: &[usize], dom: usize, cod: usize) -> MorId {
    *fs.hom(dom, cod).iter().find(|&&f| values(fs, f) == vals).unwrap()
}

/// Set-level equalizer test: `i` injective with image `{b | f b = j b}`.
fn equalizer_oracle(fs: &FiniteCategory, d: &SplitEqualizer) -> bool {
    let (i, f, j) = (values(fs, d.i), values(fs, d.f), values(fs, d.j));
    let image: HashSet<usize> = i.iter().copied().collect();
    let eq: HashSet<usize> = (0..f.len()).filter(|&b| f[b] == j[b]).collect();
    image.len() == i.len() && image == eq
}

struct SplitRun {
    generated: usize,
    idempotent_failures: usize,
    forward_failures: usize,
    oracle_disagreements: usize,
    converse_failures: usize,
    first_converse: Option<String>,
}

fn random_injection(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        all.swap(i, rng.gen_range(0..=i));
    }
    all.truncate(m);
    all
}

/// A random `q` with `q∘i = id`.
fn random_retraction(rng: &mut ChaCha8Rng, i: &[usize], n: usize) -> Vec<usize> {
    (0..n)
        .map(|b| i.iter().position(|&x| x == b).unwrap_or_else(|| rng.gen_range(0..i.len())))
        .collect()
}

fn run_split_equalizers() -> SplitRun {
    let sizes = [1, 2, 3, 4];
    let fs = FiniteCategory::finite_sets(&sizes);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut run = SplitRun {
        generated: 0,
        idempotent_failures: 0,
        forward_failures: 0,
        oracle_disagreements: 0,
        converse_failures: 0,
        first_converse: None,
    };
    while run.generated < 1000 {
        let a = rng.gen_range(0..sizes.len());
        let b = rng.gen_range(a..sizes.len());
        let c = rng.gen_range(b..sizes.len());
        let (na, nb, nc) = (sizes[a], sizes[b], sizes[c]);
        let i = random_injection(&mut rng, na, nb);
        let q = random_retraction(&mut rng, &i, nb);
        let j = random_injection(&mut rng, nb, nc);
        let r = random_retraction(&mut rng, &j, nc);
        let f: Vec<usize> = (0..nb).map(|_| rng.gen_range(0..nc)).collect();
        // f∘r∘f = j∘r∘f
        if !(0..nb).all(|x| f[r[f[x]]] == j[r[f[x]]]) {
            continue;
        }
        let d = SplitEqualizer {
            i: fs_morphism(&fs, &i, a, b),
            q: fs_morphism(&fs, &q, b, a),
            f: fs_morphism(&fs, &f, b, c),
            j: fs_morphism(&fs, &j, b, c),
            r: fs_morphism(&fs, &r, c, b),
        };
        let out = check_split_equalizer(&fs, &d).expect("generated diagrams meet the preconditions");
        run.generated += 1;
        if !out.idempotent {
            run.idempotent_failures += 1;
        }
        if out.composite_condition && !out.is_equalizer {
            run.forward_failures += 1;
        }
        if out.is_equalizer != equalizer_oracle(&fs, &d) {
            run.oracle_disagreements += 1;
        }
        if out.is_equalizer && !out.composite_condition {
            run.converse_failures += 1;
            run.first_converse.get_or_insert(format!("i={i:?} q={q:?} f={f:?} j={j:?} r={r:?}"));
        }
    }
    run
}

fn c13_outcome(run: &SplitRun) -> Outcome {
    let pass = run.idempotent_failures == 0
        && run.forward_failures == 0
        && run.oracle_disagreements == 0
        && run.converse_failures == 0;
    let mut detail = format!(
        "{} instances: r∘f idempotent on all but {}, (i∘q = r∘f) ⇒ equalizer on all but {}, equalizer ⇒ (i∘q = r∘f) fails on {}",
        run.generated, run.idempotent_failures, run.forward_failures, run.converse_failures
    );
    if let Some(first) = &run.first_converse {
        detail.push_str(&format!("; e.g. {first}"));
    }
    outcome(pass, detail)
}

fn c14_karoubi() -> Outcome {
    let mut cats: Vec<Arc<FiniteCategory>> = vec![
        idempotent_monoid(),
        Arc::new(FiniteCategory::finite_sets(&[1, 2])),
        Arc::new(FiniteCategory::finite_sets(&[2, 3])),
    ];
    for (_, a) in standard_family() {
        cats.push(a.domain().clone());
        cats.push(a.codomain().clone());
    }
    let mut seen = HashSet::new();
    cats.retain(|c| seen.insert(serde_json::to_string(&category_to_json(c)).unwrap()));
    let mut problems = Vec::new();
    for c in &cats {
        let k1 = karoubi_envelope(c);
        let k2 = karoubi_envelope(k1.category());
        if !equiv(k1.category(), k2.category()) {
            problems.push(format!("{:?}: envelope not idempotent", c.objects()));
        }
        for k in [k1.category(), k2.category()] {
            for e in k.idempotents() {
                if let Err(err) = split_idempotent(k, e) {
                    problems.push(format!("{:?}: {} does not split: {err}", c.objects(), k.morphism_name(e)));
                }
            }
        }
    }
    from_problems(problems, format!("{} distinct categories", cats.len()))
}

/// Bypasses the test harness's capture of `println!`.
fn say(text: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
    let _ = out.flush();
}

fn line(k: usize, title: &str, o: &Outcome, took: Duration) {
    let mark = if o.pass { "PASS" } else { "FAIL" };
    say(format!("{mark} {k:>2} {title}: {} ({:.2?})", o.detail, took));
}

#[test]
fn acceptance_criteria() {
    let mut results: Vec<(usize, bool)> = Vec::new();
    let mut report = |k: usize, title: &str, (o, took): (Outcome, Duration)| {
        line(k, title, &o, took);
        results.push((k, o.pass));
    };

    report(1, "FCA golden", timed(Some(Duration::from_secs(1)), c1_fca_golden));
    report(2, "Galois law", timed(Some(Duration::from_secs(30)), c2_galois));
    report(3, "posetal order isomorphisms", timed(None, c3_order_isomorphisms));
    report(4, "Dedekind-MacNeille preservation", timed(None, c4_dedekind_macneille));
    report(5, "spectral nucleus", timed(Some(Duration::from_secs(10)), c5_svd));

    let start = Instant::now();
    let fam = run_family();
    let took = start.elapsed();
    let titles = [
        "categorical law suite",
        "simple-nucleus equivalences",
        "hom-bijection",
        "retract corollary",
        "little nucleus",
    ];
    for (k, title) in titles.iter().enumerate() {
        let o = from_problems(fam.problems[k].clone(), format!("{} adjunctions", fam.size));
        let o = if k == 0 && took > Duration::from_secs(300) {
            outcome(false, format!("{}; over the 5 min budget", o.detail))
        } else {
            o
        };
        // The family is computed once; its time is shown against criterion 6.
        report(k + 6, title, (o, if k == 0 { took } else { Duration::ZERO }));
    }

    report(11, "Street idempotence", timed(None, c11_street));
    report(12, "Chu reduction", timed(None, c12_chu));

    let start = Instant::now();
    let split = run_split_equalizers();
    report(13, "split equalizers", (c13_outcome(&split), start.elapsed()));

    report(14, "Karoubi envelope", timed(None, c14_karoubi));

    let failed: Vec<usize> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    say(format!("{} of {} criteria pass", results.len() - failed.len(), results.len()));

    // Criterion 13 asks for a biconditional whose converse is false in
    // finite sets; the line above reports it as failing. What must hold is
    // everything else about it: idempotence, the forward implication, and
    // agreement of the equalizer decision with the set-level oracle, so that
    // every converse failure is a genuine counterexample.
    assert_eq!(split.idempotent_failures, 0);
    assert_eq!(split.forward_failures, 0);
    assert_eq!(split.oracle_disagreements, 0);
    assert!(failed.iter().all(|&k| k == 13), "failing criteria: {failed:?}");
}

/// Criterion 13 as literally stated. Expected to fail; see the converse
/// counterexamples printed by `acceptance_criteria`.
#[test]
#[ignore = "the converse of the split-equalizer condition is false in finite sets"]
fn split_equalizer_biconditional_strict() {
    let run = run_split_equalizers();
    let o = c13_outcome(&run);
    assert!(o.pass, "{}", o.detail);
}
