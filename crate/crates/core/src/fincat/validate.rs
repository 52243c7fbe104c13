use super::{FiniteCategory, Functor, NaturalTransformation};
use crate::report::Report;

/// Check composition typing, identity laws and associativity.
pub fn validate_category(c: &FiniteCategory) -> Report {
    let mut r = Report::new();
    let n = c.num_morphisms();
    let name = |f: usize| c.morphism_name(f).to_string();
    let mut typed = true;
    for f in 0..n {
        for g in 0..n {
            let composable = c.cod(f) == c.dom(g);
            match (composable, c.table_entry(f, g)) {
                (true, None) => {
                    typed = false;
                    r.violation("missing composite", format!("({}, {})", name(f), name(g)));
                }
                (true, Some(h)) => {
                    if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) {
                        typed = false;
                        r.violation(
                            "composite in wrong hom-set",
                            format!("({}, {}) = {}", name(f), name(g), name(h)),
                        );
                    }
                }
                (false, Some(h)) => {
                    r.violation(
                        "composite of non-composable pair",
                        format!("({}, {}) = {}", name(f), name(g), name(h)),
                    );
                }
                (false, None) => {}
            }
        }
    }
    if !typed {
        return r;
    }
    for f in 0..n {
        if c.compose(c.identity(c.cod(f)), f) != f {
            r.violation("left identity", name(f));
        }
        if c.compose(f, c.identity(c.dom(f))) != f {
            r.violation("right identity", name(f));
        }
    }
    for f in 0..n {
        for &g in out_of(c, c.cod(f)) {
            let gf = c.compose(g, f);
            for &h in out_of(c, c.cod(g)) {
                let lhs = c.compose(h, gf);
                let rhs = c.compose(c.compose(h, g), f);
                if lhs != rhs {
                    r.violation("associativity", format!("({}, {}, {})", name(f), name(g), name(h)));
                }
            }
        }
    }
    r
}

fn out_of(c: &FiniteCategory, x: usize) -> impl Iterator<Item = &usize> {
    (0..c.num_objects()).flat_map(move |y| c.hom(x, y).iter())
}

/// Check that a functor preserves endpoints, identities and composites.
pub fn validate_functor(f: &Functor) -> Report {
    let mut r = Report::new();
    let (s, t) = (f.source(), f.target());
    for m in 0..s.num_morphisms() {
        let fm = f.mor(m);
        if t.dom(fm) != f.obj(s.dom(m)) || t.cod(fm) != f.obj(s.cod(m)) {
            r.violation("endpoints not preserved", s.morphism_name(m).to_string());
        }
    }
    if r.has_violations() {
        return r;
    }
    for x in 0..s.num_objects() {
        if f.mor(s.identity(x)) != t.identity(f.obj(x)) {
            r.violation("identity not preserved", s.object_name(x).to_string());
        }
    }
    for a in 0..s.num_morphisms() {
        for y in 0..s.num_objects() {
            for &b in s.hom(s.cod(a), y) {
                if f.mor(s.compose(b, a)) != t.compose(f.mor(b), f.mor(a)) {
                    r.violation(
                        "composition not preserved",
                        format!("({}, {})", s.morphism_name(a), s.morphism_name(b)),
                    );
                }
            }
        }
    }
    r
}

/// Check every naturality square `G(f)∘α_x = α_y∘F(f)`.
pub fn validate_nat_trans(t: &NaturalTransformation) -> Report {
    let mut r = Report::new();
    let (f, g) = (t.source(), t.target());
    let (a, b) = (f.source(), f.target());
    for m in 0..a.num_morphisms() {
        let (x, y) = (a.dom(m), a.cod(m));
        let lhs = b.compose(g.mor(m), t.component(x));
        let rhs = b.compose(t.component(y), f.mor(m));
        if lhs != rhs {
            r.violation("naturality", a.morphism_name(m).to_string());
        }
    }
    r
}
