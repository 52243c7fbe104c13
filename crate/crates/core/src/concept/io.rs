use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{ConceptError, ConceptLattice, Context};

/// Parse a Burmeister `.cxt` file.
pub fn parse_cxt(text: &str) -> Result<Context, ConceptError> {
    let mut lines = text.lines().map(str::trim_end).enumerate().peekable();
    let err = |line: usize, msg: &str| ConceptError::Parse(format!("line {}: {msg}", line + 1));
    let mut next_nonblank = |what: &str| -> Result<(usize, &str), ConceptError> {
        loop {
            match lines.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((i, l)) => return Ok((i, l)),
                None => return Err(ConceptError::Parse(format!("unexpected end of file, expected {what}"))),
            }
        }
    };
    let (i, head) = next_nonblank("`B`")?;
    if head.trim() != "B" {
        return Err(err(i, "expected `B`"));
    }
    let (mut i, mut l) = next_nonblank("object count")?;
    if l.trim().parse::<usize>().is_err() {
        // name line
        (i, l) = next_nonblank("object count")?;
    }
    let n: usize = l.trim().parse().map_err(|_| err(i, "bad object count"))?;
    let (i, l) = next_nonblank("attribute count")?;
    let m: usize = l.trim().parse().map_err(|_| err(i, "bad attribute count"))?;
    let mut objects = Vec::with_capacity(n);
    for _ in 0..n {
        objects.push(next_nonblank("object name")?.1.trim().to_string());
    }
    let mut attributes = Vec::with_capacity(m);
    for _ in 0..m {
        attributes.push(next_nonblank("attribute name")?.1.trim().to_string());
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (i, l) = next_nonblank("incidence row")?;
        let l = l.trim();
        if l.chars().count() != m {
            return Err(err(i, &format!("expected {m} cells, found {}", l.chars().count())));
        }
        let row = l
            .chars()
            .map(|ch| match ch {
                'X' | 'x' => Ok(true),
                '.' => Ok(false),
                _ => Err(err(i, &format!("bad cell `{ch}`"))),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        rows.push(row);
    }
    Context::new(objects, attributes, |a, b| rows[a][b])
}

/// Write a context in Burmeister format.
pub fn write_cxt(c: &Context) -> String {
    let mut s = format!("B\n\n{}\n{}\n\n", c.num_objects(), c.num_attributes());
    for o in c.objects() {
        let _ = writeln!(s, "{o}");
    }
    for a in c.attributes() {
        let _ = writeln!(s, "{a}");
    }
    for a in 0..c.num_objects() {
        let row: String = (0..c.num_attributes())
            .map(|b| if c.incident(a, b) { 'X' } else { '.' })
            .collect();
        let _ = writeln!(s, "{row}");
    }
    s
}

/// Parse a CSV context: a header of attribute names after a corner cell,
/// then one row per object with cells `0`, `1`, `X` or blank.
pub fn parse_csv(text: &str) -> Result<Context, ConceptError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| ConceptError::Parse(e.to_string()))?.clone();
    let attributes: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut objects = Vec::new();
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| ConceptError::Parse(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        let mut cells = rec.iter();
        objects.push(cells.next().unwrap_or_default().to_string());
        let row = cells
            .map(|cell| match cell {
                "1" | "X" | "x" => Ok(true),
                "0" | "" => Ok(false),
                _ => Err(ConceptError::Parse(format!("line {line}: bad cell `{cell}`"))),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        if row.len() != attributes.len() {
            return Err(ConceptError::Parse(format!(
                "line {line}: expected {} cells, found {}",
                attributes.len(),
                row.len()
            )));
        }
        rows.push(row);
    }
    Context::new(objects, attributes, |a, b| rows[a][b])
}

/// Parse by content: `.cxt` when the first non-blank line is `B`,
/// otherwise CSV.
pub fn parse_context(text: &str) -> Result<Context, ConceptError> {
    if text.lines().find(|l| !l.trim().is_empty()).map(str::trim) == Some("B") {
        parse_cxt(text)
    } else {
        parse_csv(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptJson {
    pub extent: Vec<String>,
    pub intent: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub concepts: Vec<ConceptJson>,
    /// Hasse diagram edges `[lower, upper]` as concept positions.
    pub covers: Vec<(usize, usize)>,
}

pub fn lattice_json(l: &ConceptLattice) -> LatticeJson {
    let c = l.context();
    LatticeJson {
        objects: c.objects().to_vec(),
        attributes: c.attributes().to_vec(),
        concepts: l
            .concepts()
            .iter()
            .map(|k| ConceptJson {
                extent: c.object_names(&k.extent),
                intent: c.attribute_names(&k.intent),
            })
            .collect(),
        covers: l.covers(),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram in Graphviz DOT, bottom to top.
pub fn lattice_dot(l: &ConceptLattice) -> String {
    let mut s = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..l.len() {
        let _ = writeln!(s, "  c{i} [label=\"{}\"];", dot_escape(&l.name(i)));
    }
    for (a, b) in l.covers() {
        let _ = writeln!(s, "  c{a} -> c{b};");
    }
    s.push_str("}\n");
    s
}
