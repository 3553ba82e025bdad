//! The line-oriented structure format.
//!
//! ```text
//! field Q
//! flavor biunital
//! module:
//! 1 0
//! ω 2
//! map mu degree 0:
//! 1,1 -> 1 * 1
//! 1,ω -> 1 * ω
//! ω,1 -> 1 * ω
//! map lambda degree 2:
//! 1 -> 1 * 1#ω + 1 * ω#1
//! ω -> 1 * ω#ω
//! eta:
//! 1 * 1
//! map eps degree -2:
//! ω -> 1 * R
//! ```
//!
//! An `open:` line starts the second sector of an open-closed pair; `zipper` and
//! `cozipper` sections follow it. `window <bound> [slack <s>]` attaches a
//! truncation window, and module lines may carry `weight <w>`.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use cofrob_core::check::Window;
use cofrob_core::structures::{BialgebraData, Flavor};
use cofrob_core::tqft::OpenClosedTQFT;
use cofrob_core::{Element, Error, Field, GradedMap, GradedModule, Scalar, Shape, Terms, Tuple};

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// One graded module with whichever structure maps were given for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub module: Arc<GradedModule>,
    pub mu: Option<GradedMap>,
    pub lambda: Option<GradedMap>,
    pub eta: Option<Element>,
    pub eps: Option<GradedMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub field: Field,
    pub flavor: Option<Flavor>,
    pub window: Option<Window>,
    pub closed: Sector,
    pub open: Option<Sector>,
    pub zipper: Option<GradedMap>,
    pub cozipper: Option<GradedMap>,
}

pub fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::Unital => "unital",
        Flavor::Counital => "counital",
        Flavor::Biunital => "biunital",
    }
}

fn infer_flavor(d: &BialgebraData) -> Option<Flavor> {
    match (d.eta.is_some(), d.eps.is_some()) {
        (true, true) => Some(Flavor::Biunital),
        (true, false) => Some(Flavor::Unital),
        (false, true) => Some(Flavor::Counital),
        (false, false) => None,
    }
}

impl Sector {
    fn of(d: &BialgebraData) -> Sector {
        Sector {
            module: d.module.clone(),
            mu: Some(d.mu.clone()),
            lambda: Some(d.lambda.clone()),
            eta: d.eta.clone(),
            eps: d.eps.clone(),
        }
    }

    fn structure(&self, field: Field, window: Option<Window>, which: &str) -> Result<BialgebraData, Error> {
        let missing = |m: &str| Error::Input(format!("{}: missing map {}", which, m));
        let mu = self.mu.clone().ok_or_else(|| missing("mu"))?;
        let lambda = self.lambda.clone().ok_or_else(|| missing("lambda"))?;
        Ok(BialgebraData::new(self.module.clone(), field, mu, lambda, self.eta.clone(), self.eps.clone())?
            .with_window(window))
    }
}

impl Document {
    pub fn from_structure(d: &BialgebraData) -> Document {
        Document {
            field: d.field,
            flavor: infer_flavor(d),
            window: d.window,
            closed: Sector::of(d),
            open: None,
            zipper: None,
            cozipper: None,
        }
    }

    pub fn from_tqft(t: &OpenClosedTQFT) -> Document {
        Document {
            field: t.closed.field,
            flavor: infer_flavor(&t.closed),
            window: t.window(),
            closed: Sector::of(&t.closed),
            open: Some(Sector::of(&t.open)),
            zipper: Some(t.zipper.clone()),
            cozipper: Some(t.cozipper.clone()),
        }
    }

    pub fn is_pair(&self) -> bool {
        self.open.is_some()
    }

    /// The closed sector as a structure; needs `mu` and `lambda`.
    pub fn structure(&self) -> Result<BialgebraData, Error> {
        self.closed.structure(self.field, self.window, "structure")
    }

    pub fn tqft(&self) -> Result<OpenClosedTQFT, Error> {
        let open = self.open.as_ref().ok_or_else(|| Error::Input("not an open-closed pair: no open: section".into()))?;
        let closed = self.closed.structure(self.field, self.window, "closed sector")?;
        let open = open.structure(self.field, self.window, "open sector")?;
        let zipper = self.zipper.clone().ok_or_else(|| Error::Input("missing map zipper".into()))?;
        let cozipper = self.cozipper.clone().ok_or_else(|| Error::Input("missing map cozipper".into()))?;
        OpenClosedTQFT::new(closed, open, zipper, cozipper)
    }

    /// The declared flavor, or the one the present (co)units allow.
    pub fn effective_flavor(&self) -> Flavor {
        self.flavor.unwrap_or(match (self.closed.eta.is_some(), self.closed.eps.is_some()) {
            (true, false) => Flavor::Unital,
            (false, true) => Flavor::Counital,
            _ => Flavor::Biunital,
        })
    }
}

// ---------------------------------------------------------------------------
// rendering

fn render_terms(shape: &Shape, terms: &Terms, out: &mut String) {
    for (k, (t, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        match (k, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        let _ = write!(out, "{} * {}", magnitude, render_tuple(shape, t));
    }
}

fn render_tuple(shape: &Shape, t: &[u32]) -> String {
    if t.is_empty() {
        return "R".into();
    }
    let parts: Vec<&str> = t.iter().zip(&shape.factors).map(|(&i, m)| m.label(i)).collect();
    parts.join("#")
}

fn render_map(name: &str, f: &GradedMap, out: &mut String) {
    let _ = writeln!(out, "map {} degree {}:", name, f.degree);
    for (src, col) in f.columns() {
        let labels: Vec<&str> = src.iter().zip(&f.src.factors).map(|(&i, m)| m.label(i)).collect();
        let _ = write!(out, "{} -> ", labels.join(","));
        render_terms(&f.dst, col, out);
        out.push('\n');
    }
}

fn render_sector(s: &Sector, field: Field, out: &mut String) {
    out.push_str("module:\n");
    for (label, degree, weight) in s.module.basis() {
        let _ = write!(out, "{} {}", label, degree);
        if weight != 0 {
            let _ = write!(out, " weight {}", weight);
        }
        out.push('\n');
    }
    if let Some(m) = &s.mu {
        render_map("mu", m, out);
    }
    if let Some(m) = &s.lambda {
        render_map("lambda", m, out);
    }
    if let Some(e) = &s.eta {
        out.push_str("eta:\n");
        if e.is_zero() {
            out.push('0');
        }
        render_terms(&Shape::power(field, &s.module, 1), &e.terms, out);
        out.push('\n');
    }
    if let Some(m) = &s.eps {
        render_map("eps", m, out);
    }
}

pub fn render(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", doc.field);
    if let Some(f) = doc.flavor {
        let _ = writeln!(out, "flavor {}", flavor_name(f));
    }
    if let Some(w) = doc.window {
        let _ = writeln!(out, "window {} slack {}", w.bound, w.slack);
    }
    render_sector(&doc.closed, doc.field, &mut out);
    if let Some(open) = &doc.open {
        out.push_str("open:\n");
        render_sector(open, doc.field, &mut out);
    }
    if let Some(z) = &doc.zipper {
        render_map("zipper", z, &mut out);
    }
    if let Some(z) = &doc.cozipper {
        render_map("cozipper", z, &mut out);
    }
    out
}

// ---------------------------------------------------------------------------
// parsing

/// A whitespace-separated token and its 1-based column.
#[derive(Clone, Copy)]
struct Tok<'a> {
    col: usize,
    text: &'a str,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (true, Some((b, c))) => {
                out.push(Tok { col: c + 1, text: &line[b..byte] });
                start = None;
            }
            (false, None) => start = Some((byte, col)),
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        out.push(Tok { col: c + 1, text: &line[b..] });
    }
    out
}

/// Splits a token on a separator, keeping the column of each piece.
fn split_tok<'a>(tok: Tok<'a>, sep: char) -> Vec<Tok<'a>> {
    let mut out = Vec::new();
    let mut col = tok.col;
    for piece in tok.text.split(sep) {
        out.push(Tok { col, text: piece });
        col += piece.chars().count() + 1;
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum MapName {
    Mu,
    Lambda,
    Eps,
    Zipper,
    Cozipper,
}

impl MapName {
    fn parse(s: &str) -> Option<MapName> {
        Some(match s {
            "mu" => MapName::Mu,
            "lambda" => MapName::Lambda,
            "eps" => MapName::Eps,
            "zipper" => MapName::Zipper,
            "cozipper" => MapName::Cozipper,
            _ => return None,
        })
    }

    fn as_str(self) -> &'static str {
        match self {
            MapName::Mu => "mu",
            MapName::Lambda => "lambda",
            MapName::Eps => "eps",
            MapName::Zipper => "zipper",
            MapName::Cozipper => "cozipper",
        }
    }
}

enum Section {
    None,
    Module(Vec<(String, i64, u32)>),
    Map(MapName, GradedMap),
    Eta(Element),
}

#[derive(Default)]
struct SectorBuilder {
    module: Option<Arc<GradedModule>>,
    mu: Option<GradedMap>,
    lambda: Option<GradedMap>,
    eta: Option<Element>,
    eps: Option<GradedMap>,
}

struct Parser {
    line: usize,
    field: Option<Field>,
    flavor: Option<Flavor>,
    window: Option<Window>,
    closed: SectorBuilder,
    open: Option<SectorBuilder>,
    zipper: Option<GradedMap>,
    cozipper: Option<GradedMap>,
    section: Section,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, column, message: message.into() })
}

fn parse_int<T: std::str::FromStr>(line: usize, tok: Tok<'_>, what: &str) -> Result<T, ParseError> {
    tok.text.parse().or_else(|_| err(line, tok.col, format!("expected {} but found '{}'", what, tok.text)))
}

impl Parser {
    fn field(&self) -> Field {
        self.field.unwrap_or(Field::Q)
    }

    fn sector(&mut self) -> &mut SectorBuilder {
        match &mut self.open {
            Some(s) => s,
            None => &mut self.closed,
        }
    }

    fn fail<T>(&self, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
        err(self.line, column, message)
    }

    /// Closes the current section, storing what it built.
    fn finish_section(&mut self) -> Result<(), ParseError> {
        match std::mem::replace(&mut self.section, Section::None) {
            Section::None => {}
            Section::Module(basis) => {
                let m = GradedModule::with_weights(basis).map_err(|e| ParseError {
                    line: self.line,
                    column: 1,
                    message: e.to_string(),
                })?;
                self.sector().module = Some(m);
            }
            Section::Map(name, f) => {
                let slot = match name {
                    MapName::Mu => &mut self.sector().mu,
                    MapName::Lambda => &mut self.sector().lambda,
                    MapName::Eps => &mut self.sector().eps,
                    MapName::Zipper => &mut self.zipper,
                    MapName::Cozipper => &mut self.cozipper,
                };
                *slot = Some(f);
            }
            Section::Eta(e) => self.sector().eta = Some(e),
        }
        Ok(())
    }

    fn module_of(&mut self, col: usize) -> Result<Arc<GradedModule>, ParseError> {
        match &self.sector().module {
            Some(m) => Ok(m.clone()),
            None => self.fail(col, "a module: section must come first"),
        }
    }

    fn header(&mut self, toks: &[Tok<'_>]) -> Result<bool, ParseError> {
        let first = toks[0];
        match first.text {
            "field" => {
                if self.field.is_some() {
                    return self.fail(first.col, "field declared twice");
                }
                let f = match toks.get(1).map(|t| t.text) {
                    Some("Q") if toks.len() == 2 => Field::Q,
                    Some("Fp") if toks.len() == 3 => {
                        let p: u64 = parse_int(self.line, toks[2], "a prime")?;
                        Field::prime(p).or_else(|e| self.fail(toks[2].col, e.to_string()))?
                    }
                    _ => return self.fail(first.col, "expected 'field Q' or 'field Fp <p>'"),
                };
                if self.closed.module.is_some() {
                    return self.fail(first.col, "field must be declared before the module");
                }
                self.field = Some(f);
            }
            "flavor" => {
                self.flavor = Some(match toks.get(1).map(|t| t.text) {
                    Some("unital") => Flavor::Unital,
                    Some("counital") => Flavor::Counital,
                    Some("biunital") => Flavor::Biunital,
                    _ => return self.fail(first.col, "expected 'flavor unital|counital|biunital'"),
                });
                if toks.len() != 2 {
                    return self.fail(toks[toks.len() - 1].col, "trailing input after flavor");
                }
            }
            "window" => {
                let bound: u32 = match toks.get(1) {
                    Some(&t) => parse_int(self.line, t, "a window bound")?,
                    None => return self.fail(first.col, "expected 'window <bound> [slack <s>]'"),
                };
                let mut w = Window::new(bound);
                match toks.len() {
                    2 => {}
                    4 if toks[2].text == "slack" => w.slack = parse_int(self.line, toks[3], "a slack")?,
                    _ => return self.fail(first.col, "expected 'window <bound> [slack <s>]'"),
                }
                self.window = Some(w);
            }
            "module:" => {
                if self.sector().module.is_some() {
                    return self.fail(first.col, "module declared twice in this sector");
                }
                self.section = Section::Module(Vec::new());
            }
            "open:" => {
                if self.open.is_some() {
                    return self.fail(first.col, "open: appears twice");
                }
                if self.closed.module.is_none() {
                    return self.fail(first.col, "the closed sector needs a module first");
                }
                self.open = Some(SectorBuilder::default());
            }
            "eta:" => {
                let m = self.module_of(first.col)?;
                if self.sector().eta.is_some() {
                    return self.fail(first.col, "eta declared twice");
                }
                self.section = Section::Eta(Element::zero(Shape::power(self.field(), &m, 1)));
            }
            "map" => self.map_header(toks)?,
            _ => return Ok(false),
        }
        if toks.len() > 1 && matches!(first.text, "module:" | "open:" | "eta:") {
            return self.fail(toks[1].col, format!("trailing input after {}", first.text));
        }
        Ok(true)
    }

    fn map_header(&mut self, toks: &[Tok<'_>]) -> Result<(), ParseError> {
        let usage = "expected 'map <name> degree <int>:'";
        if toks.len() != 4 || toks[2].text != "degree" || !toks[3].text.ends_with(':') {
            return self.fail(toks[0].col, usage);
        }
        let name = MapName::parse(toks[1].text)
            .map_or_else(|| self.fail(toks[1].col, format!("unknown map '{}'", toks[1].text)), Ok)?;
        let deg_tok = Tok { col: toks[3].col, text: toks[3].text.trim_end_matches(':') };
        let degree: i64 = parse_int(self.line, deg_tok, "an integer degree")?;
        let field = self.field();
        let here = self.module_of(toks[0].col)?;
        let pair = matches!(name, MapName::Zipper | MapName::Cozipper);
        if pair && self.open.as_ref().and_then(|o| o.module.as_ref()).is_none() {
            return self.fail(toks[1].col, format!("map {} needs the open: sector and its module first", name.as_str()));
        }
        let closed = self.closed.module.clone().expect("checked above");
        let p = |m: &Arc<GradedModule>, k| Shape::power(field, m, k);
        let (src, dst, taken) = match name {
            MapName::Mu => (p(&here, 2), p(&here, 1), self.sector().mu.is_some()),
            MapName::Lambda => (p(&here, 1), p(&here, 2), self.sector().lambda.is_some()),
            MapName::Eps => (p(&here, 1), Shape::ground(field), self.sector().eps.is_some()),
            MapName::Zipper => (p(&closed, 1), p(&here, 1), self.zipper.is_some()),
            MapName::Cozipper => (p(&here, 1), p(&closed, 1), self.cozipper.is_some()),
        };
        if taken {
            return self.fail(toks[1].col, format!("map {} declared twice", name.as_str()));
        }
        self.section = Section::Map(name, GradedMap::zero(src, dst, degree));
        Ok(())
    }

    fn module_line(&mut self, toks: &[Tok<'_>]) -> Result<(String, i64, u32), ParseError> {
        let label = toks[0];
        let reserved = matches!(label.text, "R" | "+" | "-" | "->" | "field" | "flavor" | "window" | "map");
        if reserved || label.text.contains([',', '#', '*']) || label.text.ends_with(':') {
            return self.fail(label.col, format!("'{}' cannot be used as a label", label.text));
        }
        let Some(&deg) = toks.get(1) else {
            return self.fail(label.col, "expected 'label <degree> [weight <w>]'");
        };
        let degree: i64 = parse_int(self.line, deg, "an integer degree")?;
        let weight = match toks.len() {
            2 => 0,
            4 if toks[2].text == "weight" => parse_int(self.line, toks[3], "a weight")?,
            _ => return self.fail(toks[2].col, "expected 'weight <w>' or end of line"),
        };
        if let Section::Module(basis) = &self.section {
            if basis.iter().any(|(l, _, _)| l == label.text) {
                return self.fail(label.col, format!("duplicate label '{}'", label.text));
            }
        }
        Ok((label.text.to_string(), degree, weight))
    }

    fn lookup(&self, shape: &Shape, tok: Tok<'_>, sep: char) -> Result<Tuple, ParseError> {
        if shape.arity() == 0 {
            return if tok.text == "R" { Ok(Vec::new()) } else { self.fail(tok.col, "the target of eps is R") };
        }
        let parts = split_tok(tok, sep);
        if parts.len() != shape.arity() {
            return self.fail(
                tok.col,
                format!("'{}' has {} tensor factors, expected {}", tok.text, parts.len(), shape.arity()),
            );
        }
        parts
            .iter()
            .zip(&shape.factors)
            .map(|(p, m)| m.index_of(p.text).map_or_else(|| self.fail(p.col, format!("unknown label '{}'", p.text)), Ok))
            .collect()
    }

    /// `[-] [c *] t (+|- [c *] t)*`, or a lone `0`.
    fn terms<'a>(&self, shape: &Shape, toks: &[Tok<'a>]) -> Result<Vec<(Tok<'a>, Tuple, Scalar)>, ParseError> {
        let field = self.field();
        if toks.len() == 1 && toks[0].text == "0" && shape.arity() == 1 && shape.factors[0].index_of("0").is_none() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < toks.len() {
            let mut negative = false;
            if i > 0 || toks[i].text == "-" {
                match toks[i].text {
                    "+" => {}
                    "-" => negative = true,
                    _ => return self.fail(toks[i].col, format!("expected '+' or '-' before '{}'", toks[i].text)),
                }
                i += 1;
            }
            let Some(&first) = toks.get(i) else {
                return self.fail(toks[i - 1].col, "dangling sign");
            };
            let mut c = field.one();
            let mut basis = first;
            if toks.get(i + 1).is_some_and(|t| t.text == "*") {
                c = field.parse(first.text).or_else(|_| self.fail(first.col, format!("malformed scalar '{}'", first.text)))?;
                basis = match toks.get(i + 2) {
                    Some(&t) => t,
                    None => return self.fail(toks[i + 1].col, "missing basis tuple after '*'"),
                };
                i += 2;
            }
            i += 1;
            let t = self.lookup(shape, basis, '#')?;
            out.push((basis, t, if negative { -c } else { c }));
        }
        Ok(out)
    }

    fn content(&mut self, toks: &[Tok<'_>]) -> Result<(), ParseError> {
        match &self.section {
            Section::None => self.fail(toks[0].col, format!("unexpected '{}' outside any section", toks[0].text)),
            Section::Module(_) => {
                let entry = self.module_line(toks)?;
                if let Section::Module(basis) = &mut self.section {
                    basis.push(entry);
                }
                Ok(())
            }
            Section::Eta(e) => {
                let shape = e.shape.clone();
                let mut terms = Terms::new();
                for (_, t, c) in self.terms(&shape, toks)? {
                    cofrob_core::module::add_term(&mut terms, t, c);
                }
                if let Section::Eta(e) = &mut self.section {
                    *e = e.add(&Element { shape, terms });
                }
                Ok(())
            }
            Section::Map(name, f) => {
                let (name, src_shape, dst_shape, degree) = (*name, f.src.clone(), f.dst.clone(), f.degree);
                let Some(arrow) = toks.iter().position(|t| t.text == "->") else {
                    return self.fail(toks[0].col, "expected 'source -> image'");
                };
                if arrow != 1 {
                    return self.fail(toks[0].col, "the source is a single comma-separated tuple");
                }
                if arrow + 1 == toks.len() {
                    return self.fail(toks[arrow].col, "missing image after '->'");
                }
                let src = self.lookup(&src_shape, toks[0], ',')?;
                let src_degree = src_shape.tuple_degree(&src);
                let terms = self.terms(&dst_shape, &toks[arrow + 1..])?;
                let mut entries = Vec::new();
                for (tok, t, c) in terms {
                    let got = dst_shape.tuple_degree(&t);
                    if got != src_degree + degree {
                        return self.fail(
                            tok.col,
                            format!(
                                "degree mismatch in entry '{} -> {}' of map {}: image has degree {}, expected {} + {} = {}",
                                toks[0].text,
                                tok.text,
                                name.as_str(),
                                got,
                                src_degree,
                                degree,
                                src_degree + degree
                            ),
                        );
                    }
                    entries.push((t, c));
                }
                if let Section::Map(_, f) = &mut self.section {
                    for (t, c) in entries {
                        f.add_entry(src.clone(), t, c).expect("shape and degree checked");
                    }
                }
                Ok(())
            }
        }
    }
}

fn finish_sector(b: SectorBuilder, which: &str) -> Result<Sector, ParseError> {
    let module = b.module.ok_or_else(|| ParseError { line: 1, column: 1, message: format!("{} has no module: section", which) })?;
    Ok(Sector { module, mu: b.mu, lambda: b.lambda, eta: b.eta, eps: b.eps })
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut p = Parser {
        line: 0,
        field: None,
        flavor: None,
        window: None,
        closed: SectorBuilder::default(),
        open: None,
        zipper: None,
        cozipper: None,
        section: Section::None,
    };
    for (k, raw) in text.lines().enumerate() {
        p.line = k + 1;
        let toks = tokenize(raw);
        if toks.is_empty() || toks[0].text.starts_with('#') {
            continue;
        }
        let is_header = matches!(toks[0].text, "field" | "flavor" | "window" | "module:" | "open:" | "eta:" | "map");
        if is_header {
            p.finish_section()?;
            p.header(&toks)?;
        } else {
            p.content(&toks)?;
        }
    }
    p.line += 1;
    p.finish_section()?;
    let field = p.field();
    let closed = finish_sector(p.closed, "the structure")?;
    let open = p.open.map(|o| finish_sector(o, "the open sector")).transpose()?;
    Ok(Document { field, flavor: p.flavor, window: p.window, closed, open, zipper: p.zipper, cozipper: p.cozipper })
}
