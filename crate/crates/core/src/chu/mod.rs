//! Finite Chu spaces and their separated-extensional reduction.
//!
//! A Chu space `Φ: A × B → R` is stored as a matrix of indices into the
//! alphabet. A morphism `Φ → Ψ` with `Ψ: C × D → R` is a pair
//! `f: A → C`, `g: D → B` with `Φ(a, g d) = Ψ(f a, d)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChuError {
    #[error("malformed Chu space: {0}")]
    Shape(String),
    #[error("alphabets differ")]
    Alphabet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChuSpace {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "R")]
    pub r: Vec<String>,
    /// `matrix[a][b]` indexes into `r`.
    pub matrix: Vec<Vec<usize>>,
}

impl ChuSpace {
    pub fn new(a: Vec<String>, b: Vec<String>, r: Vec<String>, matrix: Vec<Vec<usize>>) -> Result<Self, ChuError> {
        let x = ChuSpace { a, b, r, matrix };
        x.validate()?;
        Ok(x)
    }

    /// A space with elements named `a0.., b0..` over the alphabet `0..k`.
    pub fn from_matrix(k: usize, matrix: Vec<Vec<usize>>) -> Result<Self, ChuError> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, Vec::len);
        ChuSpace::new(
            (0..rows).map(|i| format!("a{i}")).collect(),
            (0..cols).map(|j| format!("b{j}")).collect(),
            (0..k).map(|v| v.to_string()).collect(),
            matrix,
        )
    }

    /// Check totality and that every entry lies in the alphabet.
    pub fn validate(&self) -> Result<(), ChuError> {
        if self.matrix.len() != self.a.len() {
            return Err(ChuError::Shape(format!(
                "{} rows for {} points",
                self.matrix.len(),
                self.a.len()
            )));
        }
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != self.b.len() {
                return Err(ChuError::Shape(format!(
                    "row {} has {} entries, expected {}",
                    self.a[i],
                    row.len(),
                    self.b.len()
                )));
            }
            if let Some(j) = row.iter().position(|&v| v >= self.r.len()) {
                return Err(ChuError::Shape(format!(
                    "entry ({}, {}) = {} is outside the alphabet",
                    self.a[i], self.b[j], row[j]
                )));
            }
        }
        Ok(())
    }

    pub fn entry(&self, a: usize, b: usize) -> usize {
        self.matrix[a][b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.matrix[a]
    }

    pub fn column(&self, b: usize) -> Vec<usize> {
        self.matrix.iter().map(|r| r[b]).collect()
    }

    /// The row map `A → Rᴮ` is injective.
    pub fn is_separated(&self) -> bool {
        distinct((0..self.a.len()).map(|i| self.row(i).to_vec()))
    }

    /// The column map `B → Rᴬ` is injective.
    pub fn is_extensional(&self) -> bool {
        distinct((0..self.b.len()).map(|j| self.column(j)))
    }

    /// The dual space `B × A → R`.
    pub fn dual(&self) -> ChuSpace {
        ChuSpace {
            a: self.b.clone(),
            b: self.a.clone(),
            r: self.r.clone(),
            matrix: (0..self.b.len()).map(|j| self.column(j)).collect(),
        }
    }
}

fn distinct<T: std::hash::Hash + Eq>(it: impl Iterator<Item = T>) -> bool {
    let mut seen = std::collections::HashSet::new();
    it.into_iter().all(|x| seen.insert(x))
}

/// `f: A → C` forwards on points, `g: D → B` backwards on states.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChuMorphism {
    pub f_left: Vec<usize>,
    pub f_right: Vec<usize>,
}

impl ChuMorphism {
    pub fn identity(x: &ChuSpace) -> Self {
        ChuMorphism {
            f_left: (0..x.a.len()).collect(),
            f_right: (0..x.b.len()).collect(),
        }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &ChuMorphism) -> ChuMorphism {
        ChuMorphism {
            f_left: self.f_left.iter().map(|&a| other.f_left[a]).collect(),
            f_right: other.f_right.iter().map(|&d| self.f_right[d]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        is_permutation(&self.f_left) && is_permutation(&self.f_right)
    }
}

fn is_permutation(f: &[usize]) -> bool {
    let mut hit = vec![false; f.len()];
    f.iter().all(|&x| x < f.len() && !std::mem::replace(&mut hit[x], true))
}

/// Check shapes and `Φ(a, g d) = Ψ(f a, d)` at every `(a, d)`.
pub fn check_chu_morphism(phi: &ChuSpace, psi: &ChuSpace, m: &ChuMorphism) -> Report {
    let mut r = Report::new();
    if phi.r != psi.r {
        r.violation("same alphabet", "R");
        return r;
    }
    let shape_ok = m.f_left.len() == phi.a.len()
        && m.f_right.len() == psi.b.len()
        && m.f_left.iter().all(|&c| c < psi.a.len())
        && m.f_right.iter().all(|&b| b < phi.b.len());
    if !shape_ok {
        r.violation("morphism shape", "f: A → C, g: D → B");
        return r;
    }
    for a in 0..phi.a.len() {
        for d in 0..psi.b.len() {
            r.require(
                phi.entry(a, m.f_right[d]) == psi.entry(m.f_left[a], d),
                "Chu adjointness Φ(a, g d) = Ψ(f a, d)",
                || format!("({}, {})", phi.a[a], psi.b[d]),
            );
        }
    }
    r
}

/// Group equal keys; classes are numbered by their least member, and the
/// representative of each class is that least member.
fn classes<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> (Vec<usize>, Vec<usize>) {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut class = Vec::new();
    let mut reps = Vec::new();
    for (i, k) in keys.enumerate() {
        let next = reps.len();
        let c = *index.entry(k).or_insert(next);
        if c == next {
            reps.push(i);
        }
        class.push(c);
    }
    (class, reps)
}

/// Restrict `x` to the given rows and columns.
fn restrict(x: &ChuSpace, rows: &[usize], cols: &[usize]) -> ChuSpace {
    ChuSpace {
        a: rows.iter().map(|&i| x.a[i].clone()).collect(),
        b: cols.iter().map(|&j| x.b[j].clone()).collect(),
        r: x.r.clone(),
        matrix: rows.iter().map(|&i| cols.iter().map(|&j| x.entry(i, j)).collect()).collect(),
    }
}

/// One merge step with its quotient data.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Merge {
    space: ChuSpace,
    row_class: Vec<usize>,
    row_reps: Vec<usize>,
    col_class: Vec<usize>,
    col_reps: Vec<usize>,
}

fn merge_rows(x: &ChuSpace) -> Merge {
    let (row_class, row_reps) = classes((0..x.a.len()).map(|i| x.row(i).to_vec()));
    let cols: Vec<usize> = (0..x.b.len()).collect();
    Merge {
        space: restrict(x, &row_reps, &cols),
        row_class,
        row_reps,
        col_class: cols.clone(),
        col_reps: cols,
    }
}

fn merge_columns(x: &ChuSpace) -> Merge {
    let (col_class, col_reps) = classes((0..x.b.len()).map(|j| x.column(j)));
    let rows: Vec<usize> = (0..x.a.len()).collect();
    Merge {
        space: restrict(x, &rows, &col_reps),
        row_class: rows.clone(),
        row_reps: rows,
        col_class,
        col_reps,
    }
}

/// Compose two merge steps.
fn chain(first: &Merge, second: &Merge) -> Merge {
    Merge {
        space: second.space.clone(),
        row_class: first.row_class.iter().map(|&c| second.row_class[c]).collect(),
        row_reps: second.row_reps.iter().map(|&r| first.row_reps[r]).collect(),
        col_class: first.col_class.iter().map(|&c| second.col_class[c]).collect(),
        col_reps: second.col_reps.iter().map(|&r| first.col_reps[r]).collect(),
    }
}

/// A separated-extensional reduction of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub reduced: ChuSpace,
    /// `x → reduced`: the row quotient `A ↠ A'` and the column
    /// representatives `B' ↣ B`.
    pub onto: ChuMorphism,
    /// `reduced → x`: the row representatives `A' ↣ A` and the column
    /// quotient `B ↠ B'`.
    pub into: ChuMorphism,
}

fn reduction_of(m: Merge) -> Reduction {
    Reduction {
        onto: ChuMorphism {
            f_left: m.row_class.clone(),
            f_right: m.col_reps.clone(),
        },
        into: ChuMorphism {
            f_left: m.row_reps,
            f_right: m.col_class,
        },
        reduced: m.space,
    }
}

/// Merge equal rows, then equal columns.
pub fn reduce_rows_first(x: &ChuSpace) -> Reduction {
    let first = merge_rows(x);
    reduction_of(chain(&first, &merge_columns(&first.space)))
}

/// Merge equal columns, then equal rows.
pub fn reduce_columns_first(x: &ChuSpace) -> Reduction {
    let first = merge_columns(x);
    reduction_of(chain(&first, &merge_rows(&first.space)))
}

/// The comparison `r₁.reduced → r₂.reduced` induced by the two quotients
/// of the same space: a point class goes to the class of its
/// representative, and dually for states.
pub fn comparison(r1: &Reduction, r2: &Reduction) -> ChuMorphism {
    ChuMorphism {
        f_left: r1.into.f_left.iter().map(|&a| r2.onto.f_left[a]).collect(),
        f_right: r2.onto.f_right.iter().map(|&b| r1.into.f_right[b]).collect(),
    }
}

/// Reduction in both orders with the isomorphism between the results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeReduction {
    pub rows_first: Reduction,
    pub columns_first: Reduction,
    /// `rows_first.reduced → columns_first.reduced`.
    pub order_iso: ChuMorphism,
}

impl SeReduction {
    pub fn reduced(&self) -> &ChuSpace {
        &self.rows_first.reduced
    }
}

pub fn se_reduce(x: &ChuSpace) -> SeReduction {
    let rows_first = reduce_rows_first(x);
    let columns_first = reduce_columns_first(x);
    let order_iso = comparison(&rows_first, &columns_first);
    SeReduction {
        rows_first,
        columns_first,
        order_iso,
    }
}

fn check_reduction(r: &mut Report, label: &str, x: &ChuSpace, red: &Reduction) {
    let y = &red.reduced;
    r.require(y.is_separated(), &format!("{label}: separated"), || format!("{:?}", y.a));
    r.require(y.is_extensional(), &format!("{label}: extensional"), || format!("{:?}", y.b));
    r.absorb(&format!("{label}: quotient x → reduced"), check_chu_morphism(x, y, &red.onto));
    r.absorb(&format!("{label}: section reduced → x"), check_chu_morphism(y, x, &red.into));
    let onto_points = (0..y.a.len()).all(|c| red.onto.f_left.contains(&c));
    let onto_states = (0..y.b.len()).all(|c| red.into.f_right.contains(&c));
    r.require(onto_points && onto_states, &format!("{label}: quotients surjective"), String::new);
    let round = red.into.then(&red.onto);
    r.require(round == ChuMorphism::identity(y), &format!("{label}: section then quotient = id"), String::new);
}

/// Verify both reductions, the isomorphism between them, and that
/// reducing again changes nothing.
pub fn check_se_reduce(x: &ChuSpace, s: &SeReduction) -> Report {
    let mut r = Report::new();
    check_reduction(&mut r, "rows first", x, &s.rows_first);
    check_reduction(&mut r, "columns first", x, &s.columns_first);
    let (y1, y2) = (&s.rows_first.reduced, &s.columns_first.reduced);
    r.absorb("order isomorphism", check_chu_morphism(y1, y2, &s.order_iso));
    r.require(s.order_iso.is_bijective(), "order isomorphism bijective", String::new);
    let again = se_reduce(y1);
    r.require(&again.rows_first.reduced == y1, "idempotence", || "space changed".into());
    r.require(
        again.rows_first.onto == ChuMorphism::identity(y1) && again.rows_first.into == ChuMorphism::identity(y1),
        "idempotence",
        || "reduction maps are not identities".into(),
    );
    r
}

/// Search for an isomorphism `x → y` by backtracking over state bijections.
pub fn find_chu_isomorphism(x: &ChuSpace, y: &ChuSpace) -> Option<ChuMorphism> {
    if x.r != y.r || x.a.len() != y.a.len() || x.b.len() != y.b.len() {
        return None;
    }
    let n = x.b.len();
    fn go(x: &ChuSpace, y: &ChuSpace, g: &mut Vec<usize>, used: &mut [bool]) -> Option<Vec<usize>> {
        let d = g.len();
        // Rows restricted to the states fixed so far must match as multisets.
        let sig = |s: &ChuSpace, cols: &[usize]| {
            let mut v: Vec<Vec<usize>> = (0..s.a.len()).map(|a| cols.iter().map(|&c| s.entry(a, c)).collect()).collect();
            v.sort();
            v
        };
        if sig(x, g) != sig(y, &(0..d).collect::<Vec<_>>()) {
            return None;
        }
        if d == y.b.len() {
            return Some(g.clone());
        }
        for b in 0..x.b.len() {
            if !used[b] {
                used[b] = true;
                g.push(b);
                if let Some(found) = go(x, y, g, used) {
                    return Some(found);
                }
                g.pop();
                used[b] = false;
            }
        }
        None
    }
    let g = go(x, y, &mut Vec::new(), &mut vec![false; n])?;
    // Match rows: a ↦ some unused c with equal pattern.
    let mut used = vec![false; y.a.len()];
    let mut f = Vec::with_capacity(x.a.len());
    for a in 0..x.a.len() {
        let c = (0..y.a.len()).find(|&c| !used[c] && (0..n).all(|d| x.entry(a, g[d]) == y.entry(c, d)))?;
        used[c] = true;
        f.push(c);
    }
    Some(ChuMorphism {
        f_left: f,
        f_right: g,
    })
}

/// Output of `chu reduce`: the input, the reduced space and the maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionJson {
    pub input: ChuSpace,
    pub reduced: ChuSpace,
    /// For each point of `A`, its class in `A'`.
    pub points: Vec<String>,
    /// For each state of `B`, its class in `B'`.
    pub states: Vec<String>,
    pub report: Report,
}

impl ReductionJson {
    pub fn new(x: &ChuSpace, s: &SeReduction) -> Self {
        let y = s.reduced();
        ReductionJson {
            input: x.clone(),
            reduced: y.clone(),
            points: s.rows_first.onto.f_left.iter().map(|&c| y.a[c].clone()).collect(),
            states: s.rows_first.into.f_right.iter().map(|&c| y.b[c].clone()).collect(),
            report: check_se_reduce(x, s),
        }
    }
}
