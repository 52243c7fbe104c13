use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Report;

use super::{ConceptError, Context, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisOptions {
    /// Largest number of `(L, U)` pairs checked exhaustively.
    pub cap: u64,
    /// Pairs drawn when the cap is exceeded.
    pub samples: usize,
    pub seed: u64,
}

impl Default for GaloisOptions {
    fn default() -> Self {
        GaloisOptions {
            cap: 1 << 24,
            samples: 100_000,
            seed: 0,
        }
    }
}

/// All lower sets of `p`, or `None` once there are more than `cap`.
pub fn lower_sets(p: &Poset, cap: u64) -> Option<Vec<FixedBitSet>> {
    let order = p.linear_extension();
    let mut out = Vec::new();
    let mut current = FixedBitSet::with_capacity(p.len());
    fn go(p: &Poset, order: &[usize], k: usize, cur: &mut FixedBitSet, out: &mut Vec<FixedBitSet>, cap: u64) -> bool {
        if k == order.len() {
            out.push(cur.clone());
            return (out.len() as u64) <= cap;
        }
        let x = order[k];
        if !go(p, order, k + 1, cur, out, cap) {
            return false;
        }
        let mut below = p.down_set(x);
        below.set(x, false);
        if below.is_subset(cur) {
            cur.insert(x);
            let ok = go(p, order, k + 1, cur, out, cap);
            cur.set(x, false);
            return ok;
        }
        true
    }
    go(p, &order, 0, &mut current, &mut out, cap).then_some(out)
}

/// All upper sets of `p`: complements of the lower sets.
pub fn upper_sets(p: &Poset, cap: u64) -> Option<Vec<FixedBitSet>> {
    lower_sets(p, cap).map(|v| {
        v.into_iter()
            .map(|mut s| {
                s.toggle_range(..);
                s
            })
            .collect()
    })
}

fn mask(s: &FixedBitSet) -> u64 {
    s.ones().fold(0, |m, i| m | 1 << i)
}

fn show(c: &Context, l: &FixedBitSet, u: &FixedBitSet) -> String {
    format!(
        "L={{{}}}, U={{{}}}",
        c.object_names(l).join(","),
        c.attribute_names(u).join(",")
    )
}

const GALOIS_LAW: &str = "Galois connection U ⊆ F̂L ⇔ L ⊆ ǦU";

/// Check `U ⊆ F̂L ⇔ L ⊆ ǦU` for lower sets `L` and upper sets `U`:
/// exhaustively when the number of pairs is within the cap, otherwise on
/// seeded random pairs with a sampling note in the report.
pub fn galois_check(c: &Context, opts: GaloisOptions) -> Report {
    let mut r = Report::new();
    let side_cap = opts.cap.max(1);
    let lows = lower_sets(c.object_order(), side_cap);
    let ups = upper_sets(c.attribute_order(), side_cap);
    if let (Some(lows), Some(ups)) = (&lows, &ups) {
        if (lows.len() as u64).saturating_mul(ups.len() as u64) <= opts.cap {
            if c.num_objects() <= 64 && c.num_attributes() <= 64 {
                let fl: Vec<(u64, u64)> = lows.iter().map(|l| (mask(l), mask(&c.intent(l)))).collect();
                let gu: Vec<(u64, u64)> = ups.iter().map(|u| (mask(u), mask(&c.extent(u)))).collect();
                for (i, &(l, f)) in fl.iter().enumerate() {
                    for (j, &(u, g)) in gu.iter().enumerate() {
                        if (u & !f == 0) != (l & !g == 0) {
                            r.violation(GALOIS_LAW, show(c, &lows[i], &ups[j]));
                        }
                    }
                }
            } else {
                for l in lows {
                    let f = c.intent(l);
                    for u in ups {
                        if u.is_subset(&f) != l.is_subset(&c.extent(u)) {
                            r.violation(GALOIS_LAW, show(c, l, u));
                        }
                    }
                }
            }
            return r;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (n, m) = (c.num_objects(), c.num_attributes());
    for k in 0..opts.samples {
        let mut l = FixedBitSet::with_capacity(n);
        for a in 0..n {
            l.set(a, rng.gen_bool(0.5));
        }
        let l = c.object_order().down_closure(&l);
        // Every other sample sits on the boundary U = F̂L.
        let u = if k % 2 == 0 {
            c.intent(&l)
        } else {
            let mut u = FixedBitSet::with_capacity(m);
            for b in 0..m {
                u.set(b, rng.gen_bool(0.5));
            }
            c.attribute_order().up_closure(&u)
        };
        if u.is_subset(&c.intent(&l)) != l.is_subset(&c.extent(&u)) {
            r.violation(GALOIS_LAW, show(c, &l, &u));
        }
    }
    r.note_sampled(GALOIS_LAW, format!("{} random pairs, seed {}", opts.samples, opts.seed));
    r
}

/// Which side an [`Operator`] acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `ǦF̂` on lower sets of objects.
    Objects,
    /// `F̂Ǧ` on upper sets of attributes.
    Attributes,
}

/// The closure `ǦF̂` on lower sets or the interior `F̂Ǧ` on upper sets
/// (ordered by `⊇`).
#[derive(Clone, Copy, Debug)]
pub struct Operator<'a> {
    pub context: &'a Context,
    pub side: Side,
}

pub fn closure_operator(c: &Context) -> Operator<'_> {
    Operator {
        context: c,
        side: Side::Objects,
    }
}

pub fn interior_operator(c: &Context) -> Operator<'_> {
    Operator {
        context: c,
        side: Side::Attributes,
    }
}

impl Operator<'_> {
    pub fn apply(&self, s: &FixedBitSet) -> FixedBitSet {
        match self.side {
            Side::Objects => self.context.close_objects(s),
            Side::Attributes => self.context.close_attributes(s),
        }
    }

    fn domain(&self, cap: u64) -> Option<Vec<FixedBitSet>> {
        match self.side {
            Side::Objects => lower_sets(self.context.object_order(), cap),
            Side::Attributes => upper_sets(self.context.attribute_order(), cap),
        }
    }

    fn describe(&self, s: &FixedBitSet) -> String {
        let names = match self.side {
            Side::Objects => self.context.object_names(s),
            Side::Attributes => self.context.attribute_names(s),
        };
        format!("{{{}}}", names.join(","))
    }

    /// Check the operator laws on every set of its domain (and every
    /// comparable pair for monotonicity). As sets, both operators grow
    /// their argument; for the interior this is deflation in `⊇`.
    pub fn check_laws(&self, cap: u64) -> Report {
        let (kind, grow) = match self.side {
            Side::Objects => ("closure", "closure extensive"),
            Side::Attributes => ("interior", "interior deflationary"),
        };
        let mut r = Report::new();
        let Some(dom) = self.domain(cap) else {
            r.undecided(format!("{kind} laws"), format!("more than {cap} sets"));
            return r;
        };
        let images: Vec<FixedBitSet> = dom.iter().map(|s| self.apply(s)).collect();
        for (s, t) in dom.iter().zip(&images) {
            r.require(s.is_subset(t), grow, || self.describe(s));
            r.require(&self.apply(t) == t, &format!("{kind} idempotent"), || self.describe(s));
            let closed = match self.side {
                Side::Objects => self.context.object_order().is_lower_set(t),
                Side::Attributes => self.context.attribute_order().is_upper_set(t),
            };
            r.require(closed, &format!("{kind} stays in its domain"), || self.describe(s));
        }
        if (dom.len() as u64).saturating_mul(dom.len() as u64) <= cap {
            for (i, s) in dom.iter().enumerate() {
                for (j, s2) in dom.iter().enumerate() {
                    if s.is_subset(s2) && !images[i].is_subset(&images[j]) {
                        r.violation(
                            format!("{kind} monotone"),
                            format!("{} ⊆ {}", self.describe(s), self.describe(s2)),
                        );
                    }
                }
            }
        } else {
            r.undecided(format!("{kind} monotone"), format!("more than {cap} pairs"));
        }
        r
    }
}

/// The three fixed-point lattices found by brute force: closure-closed
/// lower sets, interior-open upper sets, and cuts.
#[derive(Clone, Debug)]
pub struct FixpointLattices {
    pub closed: Vec<FixedBitSet>,
    pub open: Vec<FixedBitSet>,
    pub cuts: Vec<(FixedBitSet, FixedBitSet)>,
}

/// Enumerate every lower set, upper set and pair to find the three
/// fixed-point lattices. Fails when a side has more than `cap` sets.
pub fn fixpoint_lattices(c: &Context, cap: u64) -> Result<FixpointLattices, ConceptError> {
    let lows = lower_sets(c.object_order(), cap).ok_or(ConceptError::TooLarge(cap))?;
    let ups = upper_sets(c.attribute_order(), cap).ok_or(ConceptError::TooLarge(cap))?;
    let closed = lows.iter().filter(|l| &c.close_objects(l) == *l).cloned().collect();
    let open = ups.iter().filter(|u| &c.close_attributes(u) == *u).cloned().collect();
    let mut cuts = Vec::new();
    for l in &lows {
        let f = c.intent(l);
        for u in &ups {
            if f == *u && c.extent(u) == *l {
                cuts.push((l.clone(), u.clone()));
            }
        }
    }
    Ok(FixpointLattices { closed, open, cuts })
}

/// Verify that `L ↦ F̂L`, `L ↦ (L, F̂L)` and `U ↦ (ǦU, U)` are order
/// isomorphisms between the three fixed-point lattices.
pub fn check_order_isomorphisms(c: &Context, f: &FixpointLattices) -> Report {
    let mut r = Report::new();
    let bijection = |r: &mut Report, law: &str, images: Vec<Option<usize>>, size: usize| {
        let mut hit = vec![false; size];
        for (i, im) in images.iter().enumerate() {
            match im {
                Some(j) if !hit[*j] => hit[*j] = true,
                _ => r.violation(law, format!("element {i}")),
            }
        }
        r.require(images.len() == size, law, || format!("sizes {} and {size}", images.len()));
    };
    let closed_to_open: Vec<Option<usize>> =
        f.closed.iter().map(|l| f.open.iter().position(|u| *u == c.intent(l))).collect();
    let closed_to_cut: Vec<Option<usize>> = f
        .closed
        .iter()
        .map(|l| f.cuts.iter().position(|(l2, _)| l2 == l))
        .collect();
    let open_to_cut: Vec<Option<usize>> =
        f.open.iter().map(|u| f.cuts.iter().position(|(_, u2)| u2 == u)).collect();
    for (law, images, size) in [
        ("closed ≅ open bijective", &closed_to_open, f.open.len()),
        ("closed ≅ cuts bijective", &closed_to_cut, f.cuts.len()),
        ("open ≅ cuts bijective", &open_to_cut, f.cuts.len()),
    ] {
        bijection(&mut r, law, images.clone(), size);
    }
    if r.has_violations() {
        return r;
    }
    let cut_leq = |i: usize, j: usize| {
        let ((l, u), (l2, u2)) = (&f.cuts[i], &f.cuts[j]);
        l.is_subset(l2) && u2.is_subset(u)
    };
    let open_leq = |i: usize, j: usize| f.open[j].is_subset(&f.open[i]);
    for i in 0..f.closed.len() {
        for j in 0..f.closed.len() {
            let le = f.closed[i].is_subset(&f.closed[j]);
            let (oi, oj) = (closed_to_open[i].unwrap(), closed_to_open[j].unwrap());
            let (ci, cj) = (closed_to_cut[i].unwrap(), closed_to_cut[j].unwrap());
            r.require(le == open_leq(oi, oj), "closed ≅ open order", || format!("({i}, {j})"));
            r.require(le == cut_leq(ci, cj), "closed ≅ cuts order", || format!("({i}, {j})"));
        }
    }
    for i in 0..f.open.len() {
        for j in 0..f.open.len() {
            let (ci, cj) = (open_to_cut[i].unwrap(), open_to_cut[j].unwrap());
            r.require(open_leq(i, j) == cut_leq(ci, cj), "open ≅ cuts order", || format!("({i}, {j})"));
        }
    }
    r
}
