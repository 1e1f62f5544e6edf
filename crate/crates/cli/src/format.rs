//! The plain-text algebra format.
//!
//! ```text
//! semiring B
//! elements 0 1
//! zero 0
//! one 1
//! add
//! 0 1
//! 1 1
//! mul
//! 0 0
//! 0 1
//! end
//!
//! semimodule Bsq over B
//! ...
//! act          # one row per semiring element
//! ...
//! end
//!
//! map f : A -> B
//! 0 -> 0
//! end
//! ```
//!
//! Tokens are whitespace separated and `#` comments run to end of line.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use semilab::algebra::{
    validate_semimodule, validate_semiring, RawSemimodule, RawSemiring, Semimodule, Semiring,
};
use semilab::morphism::{check_linear, LinearMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("line {line}: unresolved reference `{name}`")]
    UnresolvedReference { line: usize, name: String },
    #[error("line {line}: shape error: {msg}")]
    Shape { line: usize, msg: String },
    #[error("line {line}: `{name}` is declared twice")]
    DuplicateName { line: usize, name: String },
    #[error("{name}: {source}")]
    Algebra {
        name: String,
        #[source]
        source: semilab::Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub pairs: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Semiring(RawSemiring),
    Semimodule { over: String, raw: RawSemimodule },
    Map(MapDecl),
}

impl Block {
    pub fn name(&self) -> &str {
        match self {
            Block::Semiring(r) => &r.name,
            Block::Semimodule { raw, .. } => &raw.name,
            Block::Map(m) => &m.name,
        }
    }
}

/// A parsed file; `lines[i]` is the header line of `blocks[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraFile {
    pub blocks: Vec<Block>,
    pub lines: Vec<usize>,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in content.char_indices().chain([(content.len(), ' ')]) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        tokens.push((s + 1, &content[s..pos]));
                        start = None;
                    }
                    _ => {}
                }
            }
            (!tokens.is_empty()).then_some(Line {
                number: i + 1,
                tokens,
            })
        })
        .collect()
}

fn parse_error(line: &Line<'_>, idx: usize, msg: impl Into<String>) -> FormatError {
    let col = line.tokens.get(idx).map_or_else(
        || line.tokens.last().map_or(1, |(c, t)| c + t.len()),
        |(c, _)| *c,
    );
    FormatError::Parse {
        line: line.number,
        col,
        msg: msg.into(),
    }
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    fn next(&mut self) -> Option<&Line<'a>> {
        let l = self.lines.get(self.pos);
        self.pos += 1;
        l
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.number)
    }
}

fn words(line: &Line<'_>, from: usize) -> Vec<String> {
    line.tokens[from..].iter().map(|(_, t)| t.to_string()).collect()
}

/// Reads `rows` table rows of `cols` entries following a keyword line whose
/// trailing tokens (if any) form the first row.
fn read_table(
    cur: &mut Cursor<'_>,
    header: usize,
    first: Vec<String>,
    what: &str,
    rows: usize,
    cols: usize,
) -> Result<Vec<Vec<String>>, FormatError> {
    let mut out = Vec::with_capacity(rows);
    if !first.is_empty() {
        if first.len() != cols {
            return Err(FormatError::Shape {
                line: header,
                msg: format!("{what} row 1 has {} entries, expected {cols}", first.len()),
            });
        }
        out.push(first);
    }
    while out.len() < rows {
        let Some(line) = cur.peek() else {
            return Err(FormatError::Shape {
                line: cur.last_line(),
                msg: format!("{what} table has {} rows, expected {rows}", out.len()),
            });
        };
        if is_keyword(line.tokens[0].1) {
            return Err(FormatError::Shape {
                line: line.number,
                msg: format!("{what} table has {} rows, expected {rows}", out.len()),
            });
        }
        if line.tokens.len() != cols {
            return Err(FormatError::Shape {
                line: line.number,
                msg: format!(
                    "{what} row {} has {} entries, expected {cols}",
                    out.len() + 1,
                    line.tokens.len()
                ),
            });
        }
        out.push(words(line, 0));
        cur.pos += 1;
    }
    Ok(out)
}

fn is_keyword(t: &str) -> bool {
    matches!(
        t,
        "elements" | "zero" | "one" | "add" | "mul" | "act" | "end" | "semiring" | "semimodule" | "map"
    )
}

/// Fields of a semiring or semimodule block, filled as keywords appear.
#[derive(Default)]
struct Fields {
    elements: Option<Vec<String>>,
    zero: Option<String>,
    one: Option<String>,
    add: Option<Vec<Vec<String>>>,
    mul: Option<Vec<Vec<String>>>,
    act: Option<Vec<Vec<String>>>,
}

fn single(line: &Line<'_>) -> Result<String, FormatError> {
    match line.tokens.len() {
        2 => Ok(line.tokens[1].1.to_string()),
        1 => Err(parse_error(line, 1, format!("`{}` needs an element", line.tokens[0].1))),
        _ => Err(parse_error(line, 2, "unexpected token")),
    }
}

fn read_fields(
    cur: &mut Cursor<'_>,
    header: usize,
    module_rows: Option<usize>,
    ring_lookup: &dyn Fn(&str) -> Option<usize>,
    over: Option<&str>,
) -> Result<Fields, FormatError> {
    let mut f = Fields::default();
    loop {
        let Some(line) = cur.next() else {
            return Err(FormatError::Parse {
                line: cur.last_line(),
                col: 1,
                msg: format!("block starting at line {header} has no `end`"),
            });
        };
        let number = line.number;
        let kw = line.tokens[0].1;
        let rest = words(line, 1);
        let n = || f.elements.as_ref().map(Vec::len);
        match kw {
            "end" if line.tokens.len() == 1 => return Ok(f),
            "elements" => {
                if rest.is_empty() {
                    return Err(parse_error(line, 1, "empty element list"));
                }
                f.elements = Some(rest);
            }
            "zero" => f.zero = Some(single(line)?),
            "one" if module_rows.is_none() => f.one = Some(single(line)?),
            "add" | "mul" | "act" => {
                let Some(n) = n() else {
                    return Err(parse_error(line, 0, "`elements` must come before tables"));
                };
                let rows = match kw {
                    "act" => match module_rows {
                        Some(_) => over
                            .and_then(ring_lookup)
                            .ok_or_else(|| FormatError::UnresolvedReference {
                                line: header,
                                name: over.unwrap_or_default().to_string(),
                            })?,
                        None => return Err(parse_error(line, 0, "`act` belongs to semimodules")),
                    },
                    "mul" if module_rows.is_some() => {
                        return Err(parse_error(line, 0, "`mul` belongs to semirings"))
                    }
                    _ => n,
                };
                let table = read_table(cur, number, rest, kw, rows, n)?;
                match kw {
                    "add" => f.add = Some(table),
                    "mul" => f.mul = Some(table),
                    _ => f.act = Some(table),
                }
            }
            _ => return Err(parse_error(line, 0, format!("unexpected `{kw}`"))),
        }
    }
}

fn missing(header: usize, what: &str) -> FormatError {
    FormatError::Shape {
        line: header,
        msg: format!("missing `{what}`"),
    }
}

/// Parses a file. `external_ring` reports the element count of semirings
/// declared elsewhere, so `act` tables can be read for them.
pub fn parse_with(
    text: &str,
    external_ring: &dyn Fn(&str) -> Option<usize>,
) -> Result<AlgebraFile, FormatError> {
    let mut cur = Cursor {
        lines: tokenize(text),
        pos: 0,
    };
    let mut file = AlgebraFile::default();
    let mut names: HashSet<String> = HashSet::new();
    let mut ring_sizes: BTreeMap<String, usize> = BTreeMap::new();
    while let Some(line) = cur.next() {
        let header = line.number;
        let toks: Vec<&str> = line.tokens.iter().map(|(_, t)| *t).collect();
        let block = match toks[0] {
            "semiring" => {
                if toks.len() != 2 {
                    return Err(parse_error(line, toks.len().min(2), "expected `semiring NAME`"));
                }
                let name = toks[1].to_string();
                let f = read_fields(&mut cur, header, None, &|_| None, None)?;
                let raw = RawSemiring {
                    name,
                    elements: f.elements.ok_or_else(|| missing(header, "elements"))?,
                    zero: f.zero.ok_or_else(|| missing(header, "zero"))?,
                    one: f.one.ok_or_else(|| missing(header, "one"))?,
                    add: f.add.ok_or_else(|| missing(header, "add"))?,
                    mul: f.mul.ok_or_else(|| missing(header, "mul"))?,
                };
                ring_sizes.insert(raw.name.clone(), raw.elements.len());
                Block::Semiring(raw)
            }
            "semimodule" => {
                if toks.len() != 4 || toks[2] != "over" {
                    return Err(parse_error(line, toks.len().min(3), "expected `semimodule NAME over SEMIRING`"));
                }
                let (name, over) = (toks[1].to_string(), toks[3].to_string());
                let lookup = |r: &str| ring_sizes.get(r).copied().or_else(|| external_ring(r));
                let f = read_fields(&mut cur, header, Some(0), &lookup, Some(&over))?;
                let raw = RawSemimodule {
                    name,
                    elements: f.elements.ok_or_else(|| missing(header, "elements"))?,
                    zero: f.zero.ok_or_else(|| missing(header, "zero"))?,
                    add: f.add.ok_or_else(|| missing(header, "add"))?,
                    act: f.act.ok_or_else(|| missing(header, "act"))?,
                };
                Block::Semimodule { over, raw }
            }
            "map" => {
                let decl = parse_map_header(line)?;
                let mut pairs = Vec::new();
                loop {
                    let Some(l) = cur.next() else {
                        return Err(FormatError::Parse {
                            line: cur.last_line(),
                            col: 1,
                            msg: format!("map starting at line {header} has no `end`"),
                        });
                    };
                    let t: Vec<&str> = l.tokens.iter().map(|(_, t)| *t).collect();
                    match t.as_slice() {
                        ["end"] => break,
                        [src, "->", dst] => pairs.push((src.to_string(), dst.to_string())),
                        _ => return Err(parse_error(l, 0, "expected `SRC -> DST` or `end`")),
                    }
                }
                Block::Map(MapDecl { pairs, ..decl })
            }
            other => return Err(parse_error(line, 0, format!("unexpected `{other}`"))),
        };
        if !names.insert(block.name().to_string()) {
            return Err(FormatError::DuplicateName {
                line: header,
                name: block.name().to_string(),
            });
        }
        file.blocks.push(block);
        file.lines.push(header);
    }
    Ok(file)
}

pub fn parse(text: &str) -> Result<AlgebraFile, FormatError> {
    parse_with(text, &|_| None)
}

fn parse_map_header(line: &Line<'_>) -> Result<MapDecl, FormatError> {
    // `map f : A -> B`, also accepting `map f: A -> B`
    let mut toks: Vec<String> = Vec::new();
    for (_, t) in &line.tokens {
        match t.strip_suffix(':') {
            Some(head) if !head.is_empty() => {
                toks.push(head.to_string());
                toks.push(":".into());
            }
            _ => toks.push(t.to_string()),
        }
    }
    match toks.as_slice() {
        [_, name, colon, source, arrow, target] if colon == ":" && arrow == "->" => Ok(MapDecl {
            name: name.clone(),
            source: source.clone(),
            target: target.clone(),
            pairs: Vec::new(),
        }),
        _ => Err(parse_error(line, 1, "expected `map NAME : SOURCE -> TARGET`")),
    }
}

/// Canonical text: zero first, then the remaining elements in declaration
/// order; tables and `act` rows follow that order.
pub fn serialize(file: &AlgebraFile) -> String {
    let mut ring_orders: BTreeMap<&str, (Vec<String>, Vec<usize>)> = BTreeMap::new();
    let mut out = String::new();
    for (k, block) in file.blocks.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        match block {
            Block::Semiring(r) => {
                let order = canonical_order(&r.elements, &r.zero);
                let _ = writeln!(out, "semiring {}", r.name);
                write_elements(&mut out, &r.elements, &order);
                let _ = writeln!(out, "zero {}\none {}", r.zero, r.one);
                write_square(&mut out, "add", &r.add, &order);
                write_square(&mut out, "mul", &r.mul, &order);
                out.push_str("end\n");
                ring_orders.insert(&r.name, (r.elements.clone(), order));
            }
            Block::Semimodule { over, raw } => {
                let order = canonical_order(&raw.elements, &raw.zero);
                let _ = writeln!(out, "semimodule {} over {}", raw.name, over);
                write_elements(&mut out, &raw.elements, &order);
                let _ = writeln!(out, "zero {}", raw.zero);
                write_square(&mut out, "add", &raw.add, &order);
                out.push_str("act\n");
                let rows: Vec<usize> = match ring_orders.get(over.as_str()) {
                    Some((_, ring_order)) => ring_order.clone(),
                    None => (0..raw.act.len()).collect(),
                };
                for &s in &rows {
                    let row: Vec<&str> = order
                        .iter()
                        .map(|&j| raw.act.get(s).and_then(|r| r.get(j)).map_or("", String::as_str))
                        .collect();
                    let _ = writeln!(out, "{}", row.join(" "));
                }
                out.push_str("end\n");
            }
            Block::Map(m) => {
                let _ = writeln!(out, "map {} : {} -> {}", m.name, m.source, m.target);
                for (a, b) in &m.pairs {
                    let _ = writeln!(out, "{a} -> {b}");
                }
                out.push_str("end\n");
            }
        }
    }
    out
}

fn canonical_order(elements: &[String], zero: &str) -> Vec<usize> {
    let z = elements.iter().position(|e| e == zero);
    z.into_iter()
        .chain((0..elements.len()).filter(|&i| Some(i) != z))
        .collect()
}

fn write_elements(out: &mut String, elements: &[String], order: &[usize]) {
    let e: Vec<&str> = order.iter().map(|&i| elements[i].as_str()).collect();
    let _ = writeln!(out, "elements {}", e.join(" "));
}

fn write_square(out: &mut String, kw: &str, table: &[Vec<String>], order: &[usize]) {
    let _ = writeln!(out, "{kw}");
    for &i in order {
        let row: Vec<&str> = order.iter().map(|&j| table[i][j].as_str()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

pub fn semiring_block(s: &Semiring) -> Block {
    let l = |i: usize| s.label(i).to_string();
    Block::Semiring(RawSemiring {
        name: s.name().to_string(),
        elements: s.labels().to_vec(),
        zero: l(s.zero()),
        one: l(s.one()),
        add: s.elements().map(|a| s.elements().map(|b| l(s.add(a, b))).collect()).collect(),
        mul: s.elements().map(|a| s.elements().map(|b| l(s.mul(a, b))).collect()).collect(),
    })
}

pub fn semimodule_block(m: &Semimodule) -> Block {
    let l = |i: usize| m.label(i).to_string();
    Block::Semimodule {
        over: m.ring().name().to_string(),
        raw: RawSemimodule {
            name: m.name().to_string(),
            elements: m.labels().to_vec(),
            zero: l(m.zero()),
            add: m.elements().map(|a| m.elements().map(|b| l(m.add(a, b))).collect()).collect(),
            act: m
                .ring()
                .elements()
                .map(|s| m.elements().map(|x| l(m.act(s, x))).collect())
                .collect(),
        },
    }
}

pub fn map_block(name: &str, f: &LinearMap) -> Block {
    Block::Map(MapDecl {
        name: name.to_string(),
        source: f.source().name().to_string(),
        target: f.target().name().to_string(),
        pairs: f
            .source()
            .elements()
            .map(|x| (f.source().label(x).to_string(), f.target().label(f.apply(x)).to_string()))
            .collect(),
    })
}

/// Validated objects by name. Semiring names also resolve, as modules, to
/// their regular semimodules.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub semirings: BTreeMap<String, Arc<Semiring>>,
    pub modules: BTreeMap<String, Arc<Semimodule>>,
    pub maps: BTreeMap<String, LinearMap>,
}

impl Workspace {
    pub fn semiring(&self, name: &str) -> Option<&Arc<Semiring>> {
        self.semirings.get(name)
    }

    pub fn module(&self, name: &str) -> Option<Arc<Semimodule>> {
        self.modules.get(name).cloned()
    }

    pub fn map(&self, name: &str) -> Option<&LinearMap> {
        self.maps.get(name)
    }

    fn ring_size(&self, name: &str) -> Option<usize> {
        self.semirings.get(name).map(|s| s.len())
    }

    fn taken(&self, name: &str) -> bool {
        self.semirings.contains_key(name) || self.modules.contains_key(name) || self.maps.contains_key(name)
    }

    /// Parses `text` against the objects already present and adds its
    /// blocks after validation.
    pub fn load(&mut self, text: &str) -> Result<(), FormatError> {
        let file = parse_with(text, &|r| self.ring_size(r))?;
        self.add_file(&file)
    }

    pub fn add_file(&mut self, file: &AlgebraFile) -> Result<(), FormatError> {
        for (block, &line) in file.blocks.iter().zip(&file.lines) {
            self.add_block(block, line)?;
        }
        Ok(())
    }

    /// Adds every block it can, reporting each one; later blocks that refer
    /// to a rejected one come back unresolved.
    pub fn add_each(&mut self, file: &AlgebraFile) -> Vec<(String, Result<(), FormatError>)> {
        file.blocks
            .iter()
            .zip(&file.lines)
            .map(|(block, &line)| (block.name().to_string(), self.add_block(block, line)))
            .collect()
    }

    pub fn add_block(&mut self, block: &Block, line: usize) -> Result<(), FormatError> {
        if self.taken(block.name()) {
            return Err(FormatError::DuplicateName {
                line,
                name: block.name().to_string(),
            });
        }
        let algebra = |source| FormatError::Algebra {
            name: block.name().to_string(),
            source,
        };
        match block {
            Block::Semiring(raw) => {
                let s = Arc::new(validate_semiring(raw).map_err(algebra)?);
                let regular = Arc::new(Semimodule::regular(&s));
                self.modules.insert(raw.name.clone(), regular);
                self.semirings.insert(raw.name.clone(), s);
            }
            Block::Semimodule { over, raw } => {
                let ring = self.semirings.get(over).ok_or_else(|| FormatError::UnresolvedReference {
                    line,
                    name: over.clone(),
                })?;
                let m = validate_semimodule(ring, raw).map_err(algebra)?;
                self.modules.insert(raw.name.clone(), Arc::new(m));
            }
            Block::Map(decl) => {
                let f = self.resolve_map(decl, line)?;
                self.maps.insert(decl.name.clone(), f);
            }
        }
        Ok(())
    }

    fn resolve_map(&self, decl: &MapDecl, line: usize) -> Result<LinearMap, FormatError> {
        let unresolved = |name: &str| FormatError::UnresolvedReference {
            line,
            name: name.to_string(),
        };
        let src = self.module(&decl.source).ok_or_else(|| unresolved(&decl.source))?;
        let dst = self.module(&decl.target).ok_or_else(|| unresolved(&decl.target))?;
        let mut images = vec![None; src.len()];
        for (a, b) in &decl.pairs {
            let x = src.index_of(a).ok_or_else(|| unresolved(a))?;
            let y = dst.index_of(b).ok_or_else(|| unresolved(b))?;
            if images[x].replace(y).is_some() {
                return Err(FormatError::Shape {
                    line,
                    msg: format!("`{a}` is assigned twice"),
                });
            }
        }
        let images: Vec<usize> = images
            .into_iter()
            .enumerate()
            .map(|(x, y)| {
                y.ok_or_else(|| FormatError::Shape {
                    line,
                    msg: format!("no image for `{}`", src.label(x)),
                })
            })
            .collect::<Result<_, _>>()?;
        check_linear(&src, &dst, images).map_err(|source| FormatError::Algebra {
            name: decl.name.clone(),
            source,
        })
    }
}
