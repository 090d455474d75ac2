//! Line-oriented scenario files: parsing with positioned diagnostics,
//! canonical printing (so `parse(print(s)) == s`), and compilation of
//! the declarations into live rings, sequences and base-change maps.
//!
//! Grammar, one declaration per line (`#` starts a comment):
//!
//! ```text
//! field Q | field Fp <prime>
//! base A = <vars> / [<polys>]                         (optional)
//! ring R = <vars> over A / [<polys>]
//! seq t = [<polys>] alpha = [<ints>]
//! map g : A -> A2 vars <vars> / [<polys>] images [<polys>]
//! task <name> <key=value ...>
//! ```
//!
//! `field` defaults to `Q` when omitted. Polynomials inside brackets
//! are comma separated; relation lists may be empty. Several `map`
//! lines chain: each later map's source must be the previous target.

use dualis_core::algebra::order::MonomialOrder;
use dualis_core::{FieldKind, Polynomial, Ring, RingMap, RingPresentation};
use std::fmt;

pub const TASK_NAMES: [&str; 9] = [
    "pairing",
    "residue",
    "local-duality",
    "theta",
    "residue-bc",
    "cech-sign",
    "verdier",
    "koszul-ext",
    "lc-tensor",
];

/// A syntax or structure error with its position in the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diag {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl Diag {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> Diag {
        Diag {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for Diag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for Diag {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldDecl {
    Q,
    Fp(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseDecl {
    pub name: String,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub vars: Vec<String>,
    pub over: Option<String>,
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqDecl {
    pub name: String,
    pub polys: Vec<String>,
    pub alpha: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub images: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskDecl {
    pub name: String,
    pub args: Vec<(String, String)>,
}

impl TaskDecl {
    pub fn arg(&self, key: &str) -> Option<&str> {
        self.args
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// The parsed, purely syntactic scenario. Polynomials stay verbatim
/// strings here; `compile` turns them into checked objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub field: FieldDecl,
    pub base: Option<BaseDecl>,
    pub ring: RingDecl,
    pub seq: SeqDecl,
    pub maps: Vec<MapDecl>,
    pub tasks: Vec<TaskDecl>,
}

/// Splits a bracketed, comma-separated list starting at `text[open..]`
/// (which must be `[`). Returns the trimmed entries and the index just
/// past the closing bracket.
fn bracket_list(line_no: usize, text: &str, open: usize) -> Result<(Vec<String>, usize), Diag> {
    debug_assert_eq!(&text[open..open + 1], "[");
    let close = match text[open..].find(']') {
        Some(rel) => open + rel,
        None => return Err(Diag::new(line_no, open + 1, "unclosed bracket")),
    };
    let inner = &text[open + 1..close];
    if inner.contains('[') {
        // The ']' we found closes a later list, so this one never
        // closed.
        return Err(Diag::new(line_no, open + 1, "unclosed bracket"));
    }
    let entries: Vec<String> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(|s| s.trim().to_string()).collect()
    };
    if entries.iter().any(|e| e.is_empty()) {
        return Err(Diag::new(line_no, open + 1, "empty entry in bracket list"));
    }
    Ok((entries, close + 1))
}

/// Scans a line as: leading fixed words, then bare words up to a
/// bracket list or separator. Small hand-rolled cursor so every error
/// can carry a column.
struct Cursor<'a> {
    line_no: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line_no: usize, text: &'a str) -> Cursor<'a> {
        Cursor {
            line_no,
            text,
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn diag(&self, msg: impl Into<String>) -> Diag {
        Diag::new(self.line_no, self.pos + 1, msg)
    }

    /// Next whitespace-delimited word.
    fn word(&mut self, what: &str) -> Result<&'a str, Diag> {
        self.skip_ws();
        if self.pos >= self.text.len() {
            return Err(self.diag(format!("expected {what}")));
        }
        let start = self.pos;
        while self.pos < self.text.len() && !self.text.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        Ok(&self.text[start..self.pos])
    }

    fn expect(&mut self, token: &str) -> Result<(), Diag> {
        let w = self.word(&format!("`{token}`"))?;
        if w == token {
            Ok(())
        } else {
            Err(Diag::new(
                self.line_no,
                self.pos - w.len() + 1,
                format!("expected `{token}`, found `{w}`"),
            ))
        }
    }

    /// Bare words until one of `stops` or a `[` or end of line.
    fn words_until(&mut self, stops: &[&str]) -> Vec<String> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            if self.pos >= self.text.len() || self.text.as_bytes()[self.pos] == b'[' {
                return out;
            }
            let save = self.pos;
            let Ok(w) = self.word("word") else { return out };
            if stops.contains(&w) {
                self.pos = save;
                return out;
            }
            out.push(w.to_string());
        }
    }

    fn bracket(&mut self) -> Result<Vec<String>, Diag> {
        self.skip_ws();
        if self.pos >= self.text.len() || self.text.as_bytes()[self.pos] != b'[' {
            return Err(self.diag("expected `[`"));
        }
        let (items, next) = bracket_list(self.line_no, self.text, self.pos)?;
        self.pos = next;
        Ok(items)
    }

    fn done(&mut self) -> Result<(), Diag> {
        if self.at_end() {
            Ok(())
        } else {
            let rest: String = self.text[self.pos..].chars().take(20).collect();
            Err(self.diag(format!("unexpected trailing input `{rest}`")))
        }
    }
}

pub fn parse_scenario(name: &str, text: &str) -> Result<Scenario, Diag> {
    let mut field: Option<(usize, FieldDecl)> = None;
    let mut base: Option<BaseDecl> = None;
    let mut ring: Option<RingDecl> = None;
    let mut seq: Option<SeqDecl> = None;
    let mut maps: Vec<MapDecl> = Vec::new();
    let mut tasks: Vec<TaskDecl> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(h) => &raw[..h],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line_no, line);
        let head = cur.word("a declaration")?;
        match head {
            "field" => {
                if field.is_some() {
                    return Err(cur.diag("duplicate `field` declaration"));
                }
                let kind = cur.word("`Q` or `Fp <prime>`")?;
                let decl = match kind {
                    "Q" => FieldDecl::Q,
                    "Fp" => {
                        let p = cur.word("a prime")?;
                        let p: u32 = p
                            .parse()
                            .map_err(|_| cur.diag(format!("`{p}` is not a number")))?;
                        FieldDecl::Fp(p)
                    }
                    other => {
                        return Err(cur.diag(format!(
                            "unknown field `{other}` (expected `Q` or `Fp <prime>`)"
                        )))
                    }
                };
                cur.done()?;
                field = Some((line_no, decl));
            }
            "base" => {
                if base.is_some() {
                    return Err(cur.diag("duplicate `base` declaration"));
                }
                let bname = cur.word("a base name")?.to_string();
                cur.expect("=")?;
                let vars = cur.words_until(&["/"]);
                if vars.is_empty() {
                    return Err(cur.diag("base needs at least one variable"));
                }
                let relations = if cur.peek() == Some('/') {
                    cur.expect("/")?;
                    cur.bracket()?
                } else {
                    Vec::new()
                };
                cur.done()?;
                base = Some(BaseDecl {
                    name: bname,
                    vars,
                    relations,
                });
            }
            "ring" => {
                if ring.is_some() {
                    return Err(cur.diag("duplicate `ring` declaration"));
                }
                let rname = cur.word("a ring name")?.to_string();
                cur.expect("=")?;
                let vars = cur.words_until(&["over", "/"]);
                if vars.is_empty() {
                    return Err(cur.diag("ring needs at least one variable"));
                }
                let mut over = None;
                if cur.peek() == Some('o') {
                    cur.expect("over")?;
                    over = Some(cur.word("a base name")?.to_string());
                }
                let relations = if cur.peek() == Some('/') {
                    cur.expect("/")?;
                    cur.bracket()?
                } else {
                    Vec::new()
                };
                cur.done()?;
                ring = Some(RingDecl {
                    name: rname,
                    vars,
                    over,
                    relations,
                });
            }
            "seq" => {
                if seq.is_some() {
                    return Err(cur.diag("duplicate `seq` declaration"));
                }
                let sname = cur.word("a sequence name")?.to_string();
                cur.expect("=")?;
                let polys = cur.bracket()?;
                if polys.is_empty() {
                    return Err(cur.diag("sequence must be nonempty"));
                }
                cur.expect("alpha")?;
                cur.expect("=")?;
                let alpha_s = cur.bracket()?;
                let mut alpha = Vec::with_capacity(alpha_s.len());
                for a in &alpha_s {
                    let v: u32 = a
                        .parse()
                        .map_err(|_| cur.diag(format!("`{a}` is not a nonnegative integer")))?;
                    if v == 0 {
                        return Err(cur.diag("alpha entries must be at least 1"));
                    }
                    alpha.push(v);
                }
                if alpha.len() != polys.len() {
                    return Err(cur.diag(format!(
                        "{} sequence entries but {} exponents",
                        polys.len(),
                        alpha.len()
                    )));
                }
                cur.done()?;
                seq = Some(SeqDecl {
                    name: sname,
                    polys,
                    alpha,
                });
            }
            "map" => {
                let mname = cur.word("a map name")?.to_string();
                cur.expect(":")?;
                let source = cur.word("a source ring name")?.to_string();
                cur.expect("->")?;
                let target = cur.word("a target ring name")?.to_string();
                cur.expect("vars")?;
                let vars = cur.words_until(&["/", "images"]);
                let relations = if cur.peek() == Some('/') {
                    cur.expect("/")?;
                    cur.bracket()?
                } else {
                    Vec::new()
                };
                cur.expect("images")?;
                let images = cur.bracket()?;
                cur.done()?;
                maps.push(MapDecl {
                    name: mname,
                    source,
                    target,
                    vars,
                    relations,
                    images,
                });
            }
            "task" => {
                let tname = cur.word("a task name")?.to_string();
                if !TASK_NAMES.contains(&tname.as_str()) {
                    return Err(Diag::new(
                        line_no,
                        cur.pos - tname.len() + 1,
                        format!(
                            "unknown task `{tname}` (expected one of: {})",
                            TASK_NAMES.join(", ")
                        ),
                    ));
                }
                let mut args = Vec::new();
                while !cur.at_end() {
                    let kv = cur.word("key=value")?;
                    match kv.split_once('=') {
                        Some((k, v)) if !k.is_empty() && !v.is_empty() => {
                            args.push((k.to_string(), v.to_string()));
                        }
                        _ => {
                            return Err(Diag::new(
                                line_no,
                                cur.pos - kv.len() + 1,
                                format!("expected key=value, found `{kv}`"),
                            ))
                        }
                    }
                }
                tasks.push(TaskDecl { name: tname, args });
            }
            other => {
                return Err(Diag::new(
                    line_no,
                    1,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }

    let last = text.lines().count().max(1);
    let ring = ring.ok_or_else(|| Diag::new(last, 1, "missing `ring` declaration"))?;
    let seq = seq.ok_or_else(|| Diag::new(last, 1, "missing `seq` declaration"))?;
    if tasks.is_empty() {
        return Err(Diag::new(last, 1, "scenario declares no tasks"));
    }
    if let Some(over) = &ring.over {
        match &base {
            None => {
                return Err(Diag::new(
                    last,
                    1,
                    format!("ring is declared over `{over}` but no base is declared"),
                ))
            }
            Some(b) if &b.name != over => {
                return Err(Diag::new(
                    last,
                    1,
                    format!("ring is over `{over}` but the base is named `{}`", b.name),
                ))
            }
            _ => {}
        }
    }
    Ok(Scenario {
        name: name.to_string(),
        field: field.map(|(_, f)| f).unwrap_or(FieldDecl::Q),
        base,
        ring,
        seq,
        maps,
        tasks,
    })
}

/// Canonical text form; `parse_scenario(name, print(s)) == s`.
pub fn print_scenario(s: &Scenario) -> String {
    let mut out = String::new();
    match s.field {
        FieldDecl::Q => out.push_str("field Q\n"),
        FieldDecl::Fp(p) => out.push_str(&format!("field Fp {p}\n")),
    }
    if let Some(b) = &s.base {
        out.push_str(&format!(
            "base {} = {} / [{}]\n",
            b.name,
            b.vars.join(" "),
            b.relations.join(", ")
        ));
    }
    let over = match &s.ring.over {
        Some(o) => format!(" over {o}"),
        None => String::new(),
    };
    out.push_str(&format!(
        "ring {} = {}{} / [{}]\n",
        s.ring.name,
        s.ring.vars.join(" "),
        over,
        s.ring.relations.join(", ")
    ));
    out.push_str(&format!(
        "seq {} = [{}] alpha = [{}]\n",
        s.seq.name,
        s.seq.polys.join(", "),
        s.seq
            .alpha
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    for m in &s.maps {
        out.push_str(&format!(
            "map {} : {} -> {} vars {} / [{}] images [{}]\n",
            m.name,
            m.source,
            m.target,
            m.vars.join(" "),
            m.relations.join(", "),
            m.images.join(", ")
        ));
    }
    for t in &s.tasks {
        out.push_str(&format!("task {}", t.name));
        for (k, v) in &t.args {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push('\n');
    }
    out
}

/// The declarations turned into live objects, type-checked end to end.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub field: FieldKind,
    pub base: Option<Ring>,
    pub ring: Ring,
    pub t: Vec<Polynomial>,
    pub alpha: Vec<u32>,
    /// Base-change maps in declaration order; chained head to tail.
    pub maps: Vec<(String, RingMap)>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn compile(s: &Scenario) -> Result<Compiled, String> {
    let field = match s.field {
        FieldDecl::Q => FieldKind::Q,
        FieldDecl::Fp(p) => {
            if !is_prime(p) {
                return Err(format!("field Fp {p}: {p} is not prime"));
            }
            FieldKind::Fp(p)
        }
    };
    let order = MonomialOrder::DegRevLex;
    let base = match &s.base {
        None => None,
        Some(b) => {
            let vars: Vec<&str> = b.vars.iter().map(|v| v.as_str()).collect();
            let rels: Vec<&str> = b.relations.iter().map(|r| r.as_str()).collect();
            Some(
                RingPresentation::quotient_parsed(field, &vars, order, &rels)
                    .map_err(|e| format!("base {}: {e}", b.name))?,
            )
        }
    };
    let field_ring = RingPresentation::polynomial(field, Vec::new(), order)
        .map_err(|e| format!("field: {e}"))?;
    let under = base.clone().unwrap_or_else(|| field_ring.clone());
    let fiber: Vec<&str> = s.ring.vars.iter().map(|v| v.as_str()).collect();
    let rels: Vec<&str> = s.ring.relations.iter().map(|r| r.as_str()).collect();
    let ring = RingPresentation::algebra_over_parsed(&under, &fiber, &rels)
        .map_err(|e| format!("ring {}: {e}", s.ring.name))?;

    let mut t = Vec::with_capacity(s.seq.polys.len());
    for (i, p) in s.seq.polys.iter().enumerate() {
        let poly = ring
            .parse(p)
            .map_err(|e| format!("seq {} entry {}: {e}", s.seq.name, i + 1))?;
        t.push(ring.nf(&poly));
    }

    let mut maps = Vec::new();
    let mut source = under.clone();
    let mut source_name = s
        .base
        .as_ref()
        .map(|b| b.name.clone())
        .unwrap_or_else(|| match s.field {
            FieldDecl::Q => "Q".to_string(),
            FieldDecl::Fp(p) => format!("Fp{p}"),
        });
    for m in &s.maps {
        if !maps.is_empty() && m.source != source_name {
            return Err(format!(
                "map {}: source `{}` does not match the previous target `{source_name}`",
                m.name, m.source
            ));
        }
        let vars: Vec<&str> = m.vars.iter().map(|v| v.as_str()).collect();
        let rels: Vec<&str> = m.relations.iter().map(|r| r.as_str()).collect();
        let target = RingPresentation::quotient_parsed(field, &vars, order, &rels)
            .map_err(|e| format!("map {} target: {e}", m.name))?;
        if m.images.len() != source.arity() {
            return Err(format!(
                "map {}: {} images for {} source variables",
                m.name,
                m.images.len(),
                source.arity()
            ));
        }
        let mut images = Vec::with_capacity(m.images.len());
        for (i, img) in m.images.iter().enumerate() {
            let p = target
                .parse(img)
                .map_err(|e| format!("map {} image {}: {e}", m.name, i + 1))?;
            images.push(p);
        }
        let rm = RingMap::new(source.clone(), target.clone(), images)
            .map_err(|e| format!("map {}: {e}", m.name))?;
        maps.push((m.name.clone(), rm));
        source = target;
        source_name = m.target.clone();
    }

    Ok(Compiled {
        field,
        base,
        ring,
        t,
        alpha: s.seq.alpha.clone(),
        maps,
    })
}
