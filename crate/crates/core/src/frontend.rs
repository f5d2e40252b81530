//! Declarative text format (".cat" files) for categories, strict
//! 2-categories, distinguished classes, and check queries, plus the
//! resolvers that turn declarations into the engine's table types.
//!
//! The parser is a hand-written recursive-descent over a token stream with
//! 1-based line/column positions; the first error wins and is reported with
//! its position and the expected-token set.  Printing a parsed [`Document`]
//! yields canonical text that reparses to an equal `Document` (positions are
//! ignored by equality).

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::bf_fractions::OneClass;
use crate::bicat::{BicatParts, CellData, CellId, FinBicategory, OneData, OneId, SizeCaps};
use crate::fincat::{FinCategory, MorClass};
use crate::Result;

/// Parse or resolution failure with a 1-based source position.
#[derive(Debug, Error)]
#[error("parse error at {line}:{column}: {message}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
    /// Token kinds that would have been accepted at this position.
    pub expected: Vec<String>,
}

impl ParseError {
    fn at(pos: Pos, message: String, expected: Vec<String>) -> Self {
        ParseError {
            message,
            line: pos.line,
            column: pos.column,
            expected,
        }
    }
}

/// 1-based source position.
#[derive(Copy, Clone, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

/// A value with the position it was parsed at.  Equality ignores the
/// position so that round-tripped documents compare equal.
#[derive(Clone, Debug)]
pub struct Sp<T> {
    pub v: T,
    pub pos: Pos,
}

impl<T: PartialEq> PartialEq for Sp<T> {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}
impl<T: Eq> Eq for Sp<T> {}

/// A parsed file: an ordered list of declarations.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Category(CategoryDecl),
    Bicategory(BicatDecl),
    Class(ClassDecl),
    Query(QueryDecl),
}

/// `category NAME { objects: ... mor ... let ... }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryDecl {
    pub name: Sp<String>,
    pub objects: Vec<Sp<String>>,
    pub mors: Vec<ArrowDecl>,
    pub lets: Vec<CompDecl>,
}

/// `mor f: A -> B` or `cell a: f => g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: Sp<String>,
    pub src: Sp<String>,
    pub tgt: Sp<String>,
}

/// `let g . f = h` (g after f), `vcomp a . b = c`, or `hcomp a * b = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompDecl {
    pub left: Sp<String>,
    pub right: Sp<String>,
    pub result: Sp<String>,
}

/// `bicategory NAME { ...category body... cell ... vcomp ... hcomp ... }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicatDecl {
    pub base: CategoryDecl,
    pub cells: Vec<ArrowDecl>,
    pub vcomps: Vec<CompDecl>,
    pub hcomps: Vec<CompDecl>,
}

/// `class W of C = { ids, w1, ... }` or `class W of C = { w1, ... }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecl {
    pub name: Sp<String>,
    pub of: Sp<String>,
    pub ids: bool,
    pub members: Vec<Sp<String>>,
}

/// `check KIND key=value ...`; values are comma-separated name lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryDecl {
    pub kind: Sp<String>,
    pub args: Vec<(Sp<String>, Vec<Sp<String>>)>,
}

const QUERY_KINDS: [&str; 6] = ["cf", "bf", "pullback", "wfp", "abc", "suite"];

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Colon,
    Comma,
    Dot,
    Star,
    Eq,
    Arrow,  // ->
    DArrow, // =>
    LBrace,
    RBrace,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::DArrow => write!(f, "`=>`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> std::result::Result<Vec<(Tok, Pos)>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column: col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            ':' => {
                bump(&mut chars);
                toks.push((Tok::Colon, pos));
            }
            ',' => {
                bump(&mut chars);
                toks.push((Tok::Comma, pos));
            }
            '.' => {
                bump(&mut chars);
                toks.push((Tok::Dot, pos));
            }
            '*' => {
                bump(&mut chars);
                toks.push((Tok::Star, pos));
            }
            '{' => {
                bump(&mut chars);
                toks.push((Tok::LBrace, pos));
            }
            '}' => {
                bump(&mut chars);
                toks.push((Tok::RBrace, pos));
            }
            '=' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    toks.push((Tok::DArrow, pos));
                } else {
                    toks.push((Tok::Eq, pos));
                }
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    toks.push((Tok::Arrow, pos));
                } else {
                    return Err(ParseError::at(
                        pos,
                        "stray `-` (expected `->`)".into(),
                        vec!["`->`".into()],
                    ));
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Name(name), pos));
            }
            other => {
                return Err(ParseError::at(
                    pos,
                    format!("unexpected character `{other}`"),
                    vec!["a name".into()],
                ));
            }
        }
    }
    toks.push((
        Tok::Eof,
        Pos {
            line,
            column: col,
        },
    ));
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }
    fn peek2(&self) -> &Tok {
        &self.toks[(self.i + 1).min(self.toks.len() - 1)].0
    }
    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }
    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }
    fn expect(&mut self, want: &Tok, what: &str) -> PResult<Pos> {
        if self.peek() == want {
            Ok(self.next().1)
        } else {
            Err(ParseError::at(
                self.pos(),
                format!("expected {what}, found {}", self.peek()),
                vec![want.to_string()],
            ))
        }
    }
    fn name(&mut self, what: &str) -> PResult<Sp<String>> {
        match self.peek().clone() {
            Tok::Name(n) => {
                let pos = self.next().1;
                Ok(Sp { v: n, pos })
            }
            other => Err(ParseError::at(
                self.pos(),
                format!("expected {what}, found {other}"),
                vec!["a name".into()],
            )),
        }
    }
    /// Is the next token the keyword `kw`?
    fn at_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Name(n) if n == kw)
    }
    fn kw(&mut self, kw: &str) -> PResult<Pos> {
        if self.at_kw(kw) {
            Ok(self.next().1)
        } else {
            Err(ParseError::at(
                self.pos(),
                format!("expected `{kw}`, found {}", self.peek()),
                vec![format!("`{kw}`")],
            ))
        }
    }

    fn namelist(&mut self, what: &str) -> PResult<Vec<Sp<String>>> {
        let mut out = vec![self.name(what)?];
        while self.peek() == &Tok::Comma {
            self.next();
            out.push(self.name(what)?);
        }
        Ok(out)
    }

    fn category_body(&mut self, name: Sp<String>) -> PResult<CategoryDecl> {
        self.expect(&Tok::LBrace, "`{`")?;
        self.kw("objects")?;
        self.expect(&Tok::Colon, "`:` after `objects`")?;
        let objects = self.namelist("an object name")?;
        let mut mors = Vec::new();
        while self.at_kw("mor") {
            self.next();
            let mname = self.name("a morphism name")?;
            self.expect(&Tok::Colon, "`:` after the morphism name")?;
            let src = self.name("a source object")?;
            self.expect(&Tok::Arrow, "`->`")?;
            let tgt = self.name("a target object")?;
            mors.push(ArrowDecl {
                name: mname,
                src,
                tgt,
            });
        }
        let mut lets = Vec::new();
        while self.at_kw("let") {
            self.next();
            let left = self.name("a morphism name")?;
            self.expect(&Tok::Dot, "`.`")?;
            let right = self.name("a morphism name")?;
            self.expect(&Tok::Eq, "`=`")?;
            let result = self.name("a morphism name")?;
            lets.push(CompDecl {
                left,
                right,
                result,
            });
        }
        Ok(CategoryDecl {
            name,
            objects,
            mors,
            lets,
        })
    }

    fn category(&mut self) -> PResult<CategoryDecl> {
        self.kw("category")?;
        let name = self.name("a category name")?;
        let decl = self.category_body(name)?;
        self.expect(&Tok::RBrace, "`}` closing the category")?;
        Ok(decl)
    }

    fn bicategory(&mut self) -> PResult<BicatDecl> {
        self.kw("bicategory")?;
        let name = self.name("a bicategory name")?;
        let base = self.category_body(name)?;
        let mut cells = Vec::new();
        while self.at_kw("cell") {
            self.next();
            let cname = self.name("a 2-cell name")?;
            self.expect(&Tok::Colon, "`:` after the 2-cell name")?;
            let src = self.name("a source 1-cell")?;
            self.expect(&Tok::DArrow, "`=>`")?;
            let tgt = self.name("a target 1-cell")?;
            cells.push(ArrowDecl {
                name: cname,
                src,
                tgt,
            });
        }
        let mut vcomps = Vec::new();
        while self.at_kw("vcomp") {
            self.next();
            let left = self.name("a 2-cell name")?;
            self.expect(&Tok::Dot, "`.`")?;
            let right = self.name("a 2-cell name")?;
            self.expect(&Tok::Eq, "`=`")?;
            let result = self.name("a 2-cell name")?;
            vcomps.push(CompDecl {
                left,
                right,
                result,
            });
        }
        let mut hcomps = Vec::new();
        while self.at_kw("hcomp") {
            self.next();
            let left = self.name("a 2-cell name")?;
            self.expect(&Tok::Star, "`*`")?;
            let right = self.name("a 2-cell name")?;
            self.expect(&Tok::Eq, "`=`")?;
            let result = self.name("a 2-cell name")?;
            hcomps.push(CompDecl {
                left,
                right,
                result,
            });
        }
        self.expect(&Tok::RBrace, "`}` closing the bicategory")?;
        Ok(BicatDecl {
            base,
            cells,
            vcomps,
            hcomps,
        })
    }

    fn class(&mut self) -> PResult<ClassDecl> {
        self.kw("class")?;
        let name = self.name("a class name")?;
        self.kw("of")?;
        let of = self.name("a category name")?;
        self.expect(&Tok::Eq, "`=`")?;
        self.expect(&Tok::LBrace, "`{`")?;
        let mut ids = false;
        let mut members = Vec::new();
        if self.at_kw("ids") {
            ids = true;
            self.next();
            while self.peek() == &Tok::Comma {
                self.next();
                members.push(self.name("a morphism name")?);
            }
        } else {
            members = self.namelist("a morphism name or `ids`")?;
        }
        self.expect(&Tok::RBrace, "`}` closing the class")?;
        Ok(ClassDecl {
            name,
            of,
            ids,
            members,
        })
    }

    fn query(&mut self) -> PResult<QueryDecl> {
        self.kw("check")?;
        let kind = self.name("a check kind")?;
        if !QUERY_KINDS.contains(&kind.v.as_str()) {
            return Err(ParseError::at(
                kind.pos,
                format!("unknown check kind `{}`", kind.v),
                QUERY_KINDS.iter().map(|k| format!("`{k}`")).collect(),
            ));
        }
        let mut args = Vec::new();
        // `key=value` pairs end where the next name is not followed by `=`
        // (the start of the next item, or end of input).
        while matches!(self.peek(), Tok::Name(_)) && self.peek2() == &Tok::Eq {
            let key = self.name("an argument key")?;
            self.expect(&Tok::Eq, "`=`")?;
            let value = self.namelist("an argument value")?;
            args.push((key, value));
        }
        Ok(QueryDecl { kind, args })
    }

    fn document(&mut self) -> PResult<Document> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => break,
                Tok::Name(n) => match n.as_str() {
                    "category" => items.push(Item::Category(self.category()?)),
                    "bicategory" => items.push(Item::Bicategory(self.bicategory()?)),
                    "class" => items.push(Item::Class(self.class()?)),
                    "check" => items.push(Item::Query(self.query()?)),
                    other => {
                        return Err(ParseError::at(
                            self.pos(),
                            format!("expected a declaration, found `{other}`"),
                            vec![
                                "`category`".into(),
                                "`bicategory`".into(),
                                "`class`".into(),
                                "`check`".into(),
                            ],
                        ));
                    }
                },
                other => {
                    return Err(ParseError::at(
                        self.pos(),
                        format!("expected a declaration, found {other}"),
                        vec![
                            "`category`".into(),
                            "`bicategory`".into(),
                            "`class`".into(),
                            "`check`".into(),
                        ],
                    ));
                }
            }
        }
        Ok(Document { items })
    }
}

/// Parse a document; the first error wins and carries its 1-based position.
pub fn parse(text: &str) -> std::result::Result<Document, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, i: 0 };
    let doc = p.document()?;
    // Names unique per kind.
    let mut seen: HashMap<(&str, &str), ()> = HashMap::new();
    for item in &doc.items {
        let (kind, name) = match item {
            Item::Category(c) => ("category", &c.name),
            Item::Bicategory(b) => ("category", &b.base.name),
            Item::Class(c) => ("class", &c.name),
            Item::Query(_) => continue,
        };
        if seen.insert((kind, name.v.as_str()), ()).is_some() {
            return Err(ParseError::at(
                name.pos,
                format!("duplicate {kind} name `{}`", name.v),
                vec![],
            ));
        }
    }
    Ok(doc)
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

fn print_category_body(out: &mut String, c: &CategoryDecl) {
    out.push_str("  objects: ");
    out.push_str(
        &c.objects
            .iter()
            .map(|o| o.v.clone())
            .collect::<Vec<_>>()
            .join(", "),
    );
    out.push('\n');
    for m in &c.mors {
        out.push_str(&format!("  mor {}: {} -> {}\n", m.name.v, m.src.v, m.tgt.v));
    }
    for l in &c.lets {
        out.push_str(&format!(
            "  let {} . {} = {}\n",
            l.left.v, l.right.v, l.result.v
        ));
    }
}

/// Canonical text for a document; `parse(print(d)) == d`.
pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    for item in &doc.items {
        match item {
            Item::Category(c) => {
                out.push_str(&format!("category {} {{\n", c.name.v));
                print_category_body(&mut out, c);
                out.push_str("}\n");
            }
            Item::Bicategory(b) => {
                out.push_str(&format!("bicategory {} {{\n", b.base.name.v));
                print_category_body(&mut out, &b.base);
                for c in &b.cells {
                    out.push_str(&format!(
                        "  cell {}: {} => {}\n",
                        c.name.v, c.src.v, c.tgt.v
                    ));
                }
                for v in &b.vcomps {
                    out.push_str(&format!(
                        "  vcomp {} . {} = {}\n",
                        v.left.v, v.right.v, v.result.v
                    ));
                }
                for h in &b.hcomps {
                    out.push_str(&format!(
                        "  hcomp {} * {} = {}\n",
                        h.left.v, h.right.v, h.result.v
                    ));
                }
                out.push_str("}\n");
            }
            Item::Class(c) => {
                let mut names: Vec<String> = Vec::new();
                if c.ids {
                    names.push("ids".into());
                }
                names.extend(c.members.iter().map(|m| m.v.clone()));
                out.push_str(&format!(
                    "class {} of {} = {{ {} }}\n",
                    c.name.v,
                    c.of.v,
                    names.join(", ")
                ));
            }
            Item::Query(q) => {
                out.push_str(&format!("check {}", q.kind.v));
                for (k, vs) in &q.args {
                    out.push_str(&format!(
                        " {}={}",
                        k.v,
                        vs.iter().map(|v| v.v.clone()).collect::<Vec<_>>().join(",")
                    ));
                }
                out.push('\n');
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Resolvers
// ---------------------------------------------------------------------------

fn err_at<T>(pos: Pos, message: String) -> Result<T> {
    Err(crate::Error::Parse(ParseError::at(pos, message, vec![])))
}

fn find_category<'a>(doc: &'a Document, name: &str) -> Option<&'a CategoryDecl> {
    doc.items.iter().find_map(|i| match i {
        Item::Category(c) if c.name.v == name => Some(c),
        Item::Bicategory(b) if b.base.name.v == name => Some(&b.base),
        _ => None,
    })
}

fn find_bicategory<'a>(doc: &'a Document, name: &str) -> Option<&'a BicatDecl> {
    doc.items.iter().find_map(|i| match i {
        Item::Bicategory(b) if b.base.name.v == name => Some(b),
        _ => None,
    })
}

fn find_class<'a>(doc: &'a Document, name: &str) -> Option<&'a ClassDecl> {
    doc.items.iter().find_map(|i| match i {
        Item::Class(c) if c.name.v == name => Some(c),
        _ => None,
    })
}

/// Check every name reference in a category body, reporting the first
/// unknown one at its own position, then hand off to the table builder.
fn build_category(decl: &CategoryDecl) -> Result<FinCategory> {
    let objects: Vec<&str> = decl.objects.iter().map(|o| o.v.as_str()).collect();
    for m in &decl.mors {
        for end in [&m.src, &m.tgt] {
            if !objects.contains(&end.v.as_str()) {
                return err_at(end.pos, format!("unknown object `{}`", end.v));
            }
        }
    }
    let mut mor_names: Vec<String> = objects.iter().map(|o| format!("id_{o}")).collect();
    mor_names.extend(decl.mors.iter().map(|m| m.name.v.clone()));
    for l in &decl.lets {
        for n in [&l.left, &l.right, &l.result] {
            if !mor_names.iter().any(|m| m == &n.v) {
                return err_at(n.pos, format!("unknown morphism `{}`", n.v));
            }
        }
    }
    let mors: Vec<(&str, &str, &str)> = decl
        .mors
        .iter()
        .map(|m| (m.name.v.as_str(), m.src.v.as_str(), m.tgt.v.as_str()))
        .collect();
    let comps: Vec<(&str, &str, &str)> = decl
        .lets
        .iter()
        .map(|l| (l.left.v.as_str(), l.right.v.as_str(), l.result.v.as_str()))
        .collect();
    FinCategory::build(&decl.name.v, &objects, &mors, &comps)
        .map_err(|e| crate::Error::Parse(ParseError::at(decl.name.pos, e.to_string(), vec![])))
}

/// The category declared under `name` (a bicategory's underlying category
/// also answers to its name).
pub fn resolve_category(doc: &Document, name: &str) -> Result<FinCategory> {
    match find_category(doc, name) {
        Some(decl) => build_category(decl),
        None => err_at(Pos::default(), format!("no category named `{name}`")),
    }
}

/// The distinguished class `name`, as a morphism class of `parent`.
pub fn resolve_mor_class(doc: &Document, name: &str, parent: &FinCategory) -> Result<MorClass> {
    let decl = match find_class(doc, name) {
        Some(d) => d,
        None => return err_at(Pos::default(), format!("no class named `{name}`")),
    };
    if decl.of.v != parent.name {
        return err_at(
            decl.of.pos,
            format!("class `{name}` is declared over `{}`", decl.of.v),
        );
    }
    let mut members: Vec<crate::fincat::MorId> = Vec::new();
    if decl.ids {
        members.extend(parent.objects().map(|a| parent.id(a)));
    }
    for m in &decl.members {
        match parent.mor_by_name(&m.v) {
            Some(id) => members.push(id),
            None => return err_at(m.pos, format!("unknown morphism `{}`", m.v)),
        }
    }
    MorClass::new(parent, members)
}

/// The strict 2-category declared under `name`; a plain category declaration
/// is promoted trivially.
pub fn resolve_bicategory(doc: &Document, name: &str, caps: &SizeCaps) -> Result<FinBicategory> {
    let decl = match find_bicategory(doc, name) {
        Some(d) => d,
        None => return Ok(FinBicategory::from_trivial(&resolve_category(doc, name)?)),
    };
    let c = build_category(&decl.base)?;
    let base = FinBicategory::from_trivial(&c);
    // 1-cells and identity 2-cells keep the trivial promotion's ordinals;
    // declared 2-cells follow.
    let ones: Vec<OneData> = base
        .one_ids()
        .map(|f| OneData {
            name: base.one_name(f).to_string(),
            src: base.one_src(f),
            tgt: base.one_tgt(f),
        })
        .collect();
    let mut cells: Vec<CellData> = base
        .cell_ids()
        .map(|a| CellData {
            name: base.cell_name(a).to_string(),
            src: base.cell_src(a),
            tgt: base.cell_tgt(a),
        })
        .collect();
    let mut cell_index: HashMap<String, CellId> = cells
        .iter()
        .enumerate()
        .map(|(i, a)| (a.name.clone(), CellId(i as u16)))
        .collect();
    let one_of = |n: &Sp<String>| -> Result<OneId> {
        base.one_by_name(&n.v)
            .ok_or(())
            .or_else(|_| err_at(n.pos, format!("unknown 1-cell `{}`", n.v)))
    };
    for cd in &decl.cells {
        if cell_index.contains_key(&cd.name.v) {
            return err_at(cd.name.pos, format!("duplicate 2-cell name `{}`", cd.name.v));
        }
        let src = one_of(&cd.src)?;
        let tgt = one_of(&cd.tgt)?;
        let id = CellId(cells.len() as u16);
        cell_index.insert(cd.name.v.clone(), id);
        cells.push(CellData {
            name: cd.name.v.clone(),
            src,
            tgt,
        });
    }
    let cell_of = |n: &Sp<String>| -> Result<CellId> {
        cell_index
            .get(&n.v)
            .copied()
            .ok_or(())
            .or_else(|_| err_at(n.pos, format!("unknown 2-cell `{}`", n.v)))
    };
    let id2: Vec<CellId> = base.one_ids().map(|f| base.id2(f)).collect();
    // Unit-law composites are implicit; everything else must be declared.
    let mut vcomp: HashMap<(CellId, CellId), CellId> = HashMap::new();
    let mut hcomp: HashMap<(CellId, CellId), CellId> = HashMap::new();
    for (i, a) in cells.iter().enumerate() {
        let this = CellId(i as u16);
        vcomp.insert((id2[a.tgt.0 as usize], this), this);
        vcomp.insert((this, id2[a.src.0 as usize]), this);
        let lobj = ones[a.src.0 as usize].tgt;
        let robj = ones[a.src.0 as usize].src;
        hcomp.insert((id2[base.id1(lobj).0 as usize], this), this);
        hcomp.insert((this, id2[base.id1(robj).0 as usize]), this);
    }
    for g in base.one_ids() {
        for f in base.one_ids() {
            if base.one_tgt(f) != base.one_src(g) {
                continue;
            }
            let h = base.c1(g, f)?;
            hcomp.insert((base.id2(g), base.id2(f)), base.id2(h));
        }
    }
    for v in &decl.vcomps {
        vcomp.insert((cell_of(&v.left)?, cell_of(&v.right)?), cell_of(&v.result)?);
    }
    for h in &decl.hcomps {
        hcomp.insert((cell_of(&h.left)?, cell_of(&h.right)?), cell_of(&h.result)?);
    }
    // Strict: associators and unitors are identity 2-cells of the composites.
    let mut assoc = HashMap::new();
    for h in base.one_ids() {
        for g in base.one_ids() {
            if base.one_tgt(g) != base.one_src(h) {
                continue;
            }
            for f in base.one_ids() {
                if base.one_tgt(f) != base.one_src(g) {
                    continue;
                }
                let hgf = base.c1(h, base.c1(g, f)?)?;
                assoc.insert((h, g, f), base.id2(hgf));
            }
        }
    }
    let parts = BicatParts {
        name: decl.base.name.v.clone(),
        objects: base.objects().map(|a| base.object_name(a).to_string()).collect(),
        ones,
        cells,
        id1: base.objects().map(|a| base.id1(a)).collect(),
        id2: id2.clone(),
        comp1: {
            let mut comp1 = HashMap::new();
            for g in base.one_ids() {
                for f in base.one_ids() {
                    if base.one_tgt(f) == base.one_src(g) {
                        comp1.insert((g, f), base.c1(g, f)?);
                    }
                }
            }
            comp1
        },
        vcomp,
        hcomp,
        assoc,
        runitor: id2.clone(),
        lunitor: id2,
        strict: true,
    };
    FinBicategory::from_parts(parts, caps).map_err(|e| {
        crate::Error::Parse(ParseError::at(decl.base.name.pos, e.to_string(), vec![]))
    })
}

/// The distinguished class `name`, as a 1-cell class of `parent`.
pub fn resolve_one_class(doc: &Document, name: &str, parent: &FinBicategory) -> Result<OneClass> {
    let decl = match find_class(doc, name) {
        Some(d) => d,
        None => return err_at(Pos::default(), format!("no class named `{name}`")),
    };
    if decl.of.v != parent.name {
        return err_at(
            decl.of.pos,
            format!("class `{name}` is declared over `{}`", decl.of.v),
        );
    }
    let mut members: Vec<OneId> = Vec::new();
    if decl.ids {
        members.extend(parent.objects().map(|a| parent.id1(a)));
    }
    for m in &decl.members {
        match parent.one_by_name(&m.v) {
            Some(id) => members.push(id),
            None => return err_at(m.pos, format!("unknown 1-cell `{}`", m.v)),
        }
    }
    Ok(OneClass::new(parent, members))
}

/// Curated malformed inputs; each must produce a positioned [`ParseError`].
#[doc(hidden)]
pub const MALFORMED_EXAMPLES: [&str; 20] = [
    "category",
    "category A",
    "category A {",
    "category A { objects X }",
    "category A { objects: }",
    "category A { objects: X, }",
    "category A { objects: X mor }",
    "category A { objects: X mor w X -> X }",
    "category A { objects: X mor w: X > X }",
    "category A { objects: X mor w: X -> X let w w = w }",
    "category A { objects: X } category A { objects: Y }",
    "widget A { objects: X }",
    "class W of = { ids }",
    "class W of A { ids }",
    "class W of A = { }",
    "class W of A = { ids, }",
    "check frobnicate",
    "check cf category=",
    "bicategory B { objects: X cell a: id_X => }",
    "category A { objects: X ! }",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat;

    const ARROW_SRC: &str = "\
# A single non-invertible arrow.
category A {
  objects: X, Y
  mor w: X -> Y
}
class W of A = { ids, w }
check cf category=A class=W
";

    #[test]
    fn arrow_source_parses_and_resolves() {
        let doc = parse(ARROW_SRC).unwrap();
        assert_eq!(doc.items.len(), 3);
        let c = resolve_category(&doc, "A").unwrap();
        assert_eq!(c.n_objects(), 2);
        assert_eq!(c.n_mors(), 3);
        let w = resolve_mor_class(&doc, "W", &c).unwrap();
        assert!(w.contains(c.mor_by_name("w").unwrap()));
        assert!(w.contains(c.id(c.obj_by_name("X").unwrap())));
    }

    #[test]
    fn printed_document_reparses_identically() {
        let doc = parse(ARROW_SRC).unwrap();
        let printed = print(&doc);
        assert_eq!(parse(&printed).unwrap(), doc);
    }

    #[test]
    fn diamond_source_matches_builtin_fixture() {
        let src = "\
category D {
  objects: c, b1, b2, a
  mor cb1: c -> b1
  mor cb2: c -> b2
  mor b1a: b1 -> a
  mor b2a: b2 -> a
  mor ca: c -> a
  let b1a . cb1 = ca
  let b2a . cb2 = ca
}
";
        let doc = parse(src).unwrap();
        let c = resolve_category(&doc, "D").unwrap();
        let builtin = fincat::diamond();
        assert!(fincat::are_isomorphic_categories(&c, &builtin).is_some());
    }

    #[test]
    fn bicategory_with_nontrivial_cell_resolves() {
        let src = "\
bicategory L {
  objects: pt
  cell g: id_pt => id_pt
  vcomp g . g = i_id_pt
  hcomp g * g = i_id_pt
}
";
        let doc = parse(src).unwrap();
        let b = resolve_bicategory(&doc, "L", &SizeCaps::default()).unwrap();
        assert_eq!(b.n_cells(), 2);
        assert!(crate::bicat::validate_bicategory(&b).ok());
        let builtin = crate::bf_fractions::loop_z2();
        assert_eq!(b.n_ones(), builtin.n_ones());
    }

    #[test]
    fn missing_composite_is_reported_at_the_declaration() {
        let src = "\
category D {
  objects: c, b1, a
  mor cb1: c -> b1
  mor b1a: b1 -> a
}
";
        let doc = parse(src).unwrap();
        let err = resolve_category(&doc, "D").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("b1a") && msg.contains("cb1"), "{msg}");
    }

    #[test]
    fn unknown_object_reported_at_its_position() {
        let doc = parse("category A { objects: X mor w: X -> Z }").unwrap();
        match resolve_category(&doc, "A") {
            Err(crate::Error::Parse(e)) => {
                assert_eq!((e.line, e.column), (1, 37));
                assert!(e.message.contains("Z"));
            }
            other => panic!("expected a positioned error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_corpus_produces_positioned_errors() {
        for (i, src) in MALFORMED_EXAMPLES.iter().enumerate() {
            match parse(src) {
                Err(e) => {
                    assert!(e.line >= 1 && e.column >= 1, "case {i}: {e}");
                }
                Ok(doc) => {
                    // A few cases are grammatical but unresolvable; they must
                    // fail during resolution with a position instead.
                    let name = match doc.items.first() {
                        Some(Item::Category(c)) => c.name.v.clone(),
                        Some(Item::Bicategory(b)) => b.base.name.v.clone(),
                        _ => panic!("case {i} unexpectedly parsed: {src}"),
                    };
                    let r = resolve_bicategory(&doc, &name, &SizeCaps::default());
                    assert!(r.is_err(), "case {i} unexpectedly resolved: {src}");
                }
            }
        }
    }

    fn sp(v: &str) -> Sp<String> {
        Sp {
            v: v.to_string(),
            pos: Pos::default(),
        }
    }

    fn arb_document() -> impl proptest::strategy::Strategy<Value = Document> {
        use proptest::prelude::*;
        let name = "[a-z][a-z0-9_]{0,5}";
        let cat = (name.prop_map(String::from), 1usize..4, proptest::collection::vec((name.prop_map(String::from), 0usize..3, 0usize..3), 0..4))
            .prop_map(|(cname, n_obj, mors)| {
                let objects: Vec<Sp<String>> =
                    (0..n_obj).map(|i| sp(&format!("o{i}"))).collect();
                let mors = mors
                    .into_iter()
                    .enumerate()
                    .map(|(i, (_, s, t))| ArrowDecl {
                        name: sp(&format!("m{i}")),
                        src: sp(&format!("o{}", s % n_obj)),
                        tgt: sp(&format!("o{}", t % n_obj)),
                    })
                    .collect();
                CategoryDecl {
                    name: sp(&format!("C_{cname}")),
                    objects,
                    mors,
                    lets: Vec::new(),
                }
            });
        let class = (0usize..4, proptest::bool::ANY).prop_map(|(k, ids)| ClassDecl {
            name: sp("W"),
            of: sp("C"),
            ids: ids || k == 0,
            members: (0..k).map(|i| sp(&format!("m{i}"))).collect(),
        });
        let query = proptest::sample::select(QUERY_KINDS.to_vec()).prop_map(|kind| QueryDecl {
            kind: sp(kind),
            args: vec![(sp("category"), vec![sp("C")])],
        });
        proptest::collection::vec(
            proptest::prop_oneof![
                cat.prop_map(Item::Category),
                class.prop_map(Item::Class),
                query.prop_map(Item::Query),
            ],
            0..4,
        )
        .prop_map(|mut items| {
            // Make declaration names unique per kind.
            let mut n = 0usize;
            for item in &mut items {
                match item {
                    Item::Category(c) => c.name = sp(&format!("C{n}")),
                    Item::Class(c) => c.name = sp(&format!("W{n}")),
                    _ => {}
                }
                n += 1;
            }
            Document { items }
        })
    }

    proptest::proptest! {
        #[test]
        fn printed_random_documents_reparse(doc in arb_document()) {
            let printed = print(&doc);
            let reparsed = parse(&printed).unwrap();
            proptest::prop_assert_eq!(reparsed, doc);
        }
    }

    #[test]
    fn query_arguments_stop_at_the_next_item() {
        let src = "check suite fixture=diamond_w\ncategory A { objects: X }\n";
        let doc = parse(src).unwrap();
        assert_eq!(doc.items.len(), 2);
        match &doc.items[0] {
            Item::Query(q) => {
                assert_eq!(q.kind.v, "suite");
                assert_eq!(q.args.len(), 1);
            }
            other => panic!("expected a query, got {other:?}"),
        }
    }
}
