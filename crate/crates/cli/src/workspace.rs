//! Model files:
//!
//! ```text
//! model NAME { gen NAME : deg INT [upper INT] ; ... d NAME = ELEMENT ; ... }
//! map NAME : SRC -> DST { NAME -> ELEMENT ; ... }
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use liederiv::lie::{FreeLie, Generator, LieElement};
use liederiv::model::{DglModel, DglMorphism, ValidationReport};
use liederiv::syntax::{parse_element, tokenize, Cursor, SyntaxError, Tok, Token};
use num_traits::ToPrimitive;

/// `d NAME = ...` seen before the generators are final: name, its position, element token span.
type PendingDiff = (String, (usize, usize), (usize, usize));

/// Per-model validation reports and per-map chain-condition failures.
pub type Validation = (Vec<(String, ValidationReport)>, Vec<(String, Option<String>)>);

#[derive(Debug)]
pub struct Workspace {
    pub max_degree: i32,
    models: Vec<Arc<DglModel>>,
    maps: Vec<Arc<DglMorphism>>,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> SyntaxError {
    SyntaxError {
        line,
        col,
        message: message.into(),
    }
}

fn small_int(cur: &mut Cursor, what: &str) -> Result<i64, SyntaxError> {
    let (line, col) = cur.here();
    cur.expect_int()?
        .to_i64()
        .filter(|n| n.abs() < 1 << 20)
        .ok_or_else(|| err(line, col, format!("{what} out of range")))
}

/// Token range of an element, ending before the `;` that closes its statement.
fn element_span(cur: &mut Cursor, toks: &[Token]) -> Result<(usize, usize), SyntaxError> {
    let start = cur.position();
    let mut i = start;
    let mut depth = 0i32;
    while i < toks.len() {
        match &toks[i].tok {
            Tok::Sym("[") => depth += 1,
            Tok::Sym("]") => depth -= 1,
            Tok::Sym(";") if depth == 0 => break,
            Tok::Sym("}") if depth == 0 => break,
            _ => {}
        }
        i += 1;
    }
    if i == start {
        return Err(cur.error("expected an element"));
    }
    cur.set_position(i);
    Ok((start, i))
}

fn parse_span(lie: &FreeLie, toks: &[Token], span: (usize, usize)) -> Result<LieElement, SyntaxError> {
    let slice = &toks[span.0..span.1];
    let mut sub = Cursor::new(slice);
    let e = parse_element(lie, &mut sub)?;
    if !sub.at_end() {
        return Err(sub.error("unexpected token in element"));
    }
    Ok(e)
}

impl Workspace {
    pub fn parse(src: &str, max_degree: i32) -> Result<Workspace, SyntaxError> {
        let toks = tokenize(src)?;
        let mut ws = Workspace {
            max_degree,
            models: Vec::new(),
            maps: Vec::new(),
        };
        let mut cur = Cursor::new(&toks);
        while !cur.at_end() {
            let (kw, line, col) = cur.expect_ident()?;
            match kw.as_str() {
                "model" => ws.parse_model(&toks, &mut cur)?,
                "map" => ws.parse_map(&mut cur)?,
                _ => return Err(err(line, col, format!("expected `model` or `map`, found `{kw}`"))),
            }
        }
        Ok(ws)
    }

    fn name_taken(&self, name: &str) -> bool {
        self.model(name).is_some() || self.map(name).is_some()
    }

    fn parse_model(&mut self, toks: &[Token], cur: &mut Cursor) -> Result<(), SyntaxError> {
        let (name, nl, nc) = cur.expect_ident()?;
        if self.name_taken(&name) {
            return Err(err(nl, nc, format!("duplicate name `{name}`")));
        }
        cur.expect_sym("{")?;
        let mut gens: Vec<Generator> = Vec::new();
        let mut gen_pos: HashMap<String, (usize, usize)> = HashMap::new();
        let mut diffs: Vec<PendingDiff> = Vec::new();
        loop {
            if cur.is_sym("}") {
                cur.advance();
                break;
            }
            let (kw, kl, kc) = cur.expect_ident().map_err(|_| cur.error("expected `gen`, `d` or `}`"))?;
            match kw.as_str() {
                "gen" => {
                    let (g, gl, gc) = cur.expect_ident()?;
                    cur.expect_sym(":")?;
                    cur.expect_keyword("deg")?;
                    let deg = small_int(cur, "degree")?;
                    let mut generator = Generator::new(g.clone(), deg as i32);
                    if matches!(cur.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == "upper") {
                        cur.advance();
                        let (ul, uc) = cur.here();
                        let u = small_int(cur, "upper degree")?;
                        if u < 0 {
                            return Err(err(ul, uc, "upper degrees are non-negative"));
                        }
                        generator = generator.with_upper(u as u32);
                    }
                    cur.expect_sym(";")?;
                    if gen_pos.insert(g.clone(), (gl, gc)).is_some() {
                        return Err(err(gl, gc, format!("duplicate generator `{g}` in model `{name}`")));
                    }
                    if deg < 1 {
                        return Err(err(gl, gc, format!("generator `{g}` must have positive degree")));
                    }
                    if deg > self.max_degree as i64 {
                        return Err(err(
                            gl,
                            gc,
                            format!(
                                "generator `{g}` of degree {deg} exceeds the truncation degree {}",
                                self.max_degree
                            ),
                        ));
                    }
                    gens.push(generator);
                }
                "d" => {
                    let (g, gl, gc) = cur.expect_ident()?;
                    cur.expect_sym("=")?;
                    let span = element_span(cur, toks)?;
                    cur.expect_sym(";")?;
                    diffs.push((g, (gl, gc), span));
                }
                _ => return Err(err(kl, kc, format!("expected `gen` or `d`, found `{kw}`"))),
            }
        }
        let lie = Arc::new(FreeLie::new(gens, self.max_degree).map_err(|e| err(nl, nc, e.to_string()))?);
        let mut values: Vec<Option<LieElement>> = vec![None; lie.ngens()];
        for (g, (gl, gc), span) in diffs {
            let i = lie
                .index_of(&g)
                .ok_or_else(|| err(gl, gc, format!("unknown generator `{g}` in model `{name}`")))?;
            if values[i].is_some() {
                return Err(err(gl, gc, format!("second differential for `{g}`")));
            }
            let e = parse_span(&lie, toks, span)?;
            let expected = lie.generators()[i].degree - 1;
            if !e.is_zero() && e.degree() != expected {
                let t = &toks[span.0];
                return Err(err(
                    t.line,
                    t.col,
                    format!("d({g}) has degree {}, but `{g}` has degree {}", e.degree(), expected + 1),
                ));
            }
            values[i] = Some(e.with_degree(expected));
        }
        let diff = values
            .into_iter()
            .zip(lie.generators())
            .map(|(v, g)| v.unwrap_or_else(|| LieElement::zero(g.degree - 1)))
            .collect();
        let model = DglModel::new(name, lie, diff).map_err(|e| err(nl, nc, e.to_string()))?;
        self.models.push(Arc::new(model));
        Ok(())
    }

    fn parse_map(&mut self, cur: &mut Cursor) -> Result<(), SyntaxError> {
        let (name, nl, nc) = cur.expect_ident()?;
        if self.name_taken(&name) {
            return Err(err(nl, nc, format!("duplicate name `{name}`")));
        }
        cur.expect_sym(":")?;
        let src = self.lookup_model(cur)?;
        cur.expect_sym("->")?;
        let tgt = self.lookup_model(cur)?;
        cur.expect_sym("{")?;
        let mut values: Vec<Option<LieElement>> = vec![None; src.generators().len()];
        while !cur.is_sym("}") {
            let (g, gl, gc) = cur.expect_ident().map_err(|_| cur.error("expected a generator or `}`"))?;
            let i = src
                .lie()
                .index_of(&g)
                .ok_or_else(|| err(gl, gc, format!("unknown generator `{g}` of `{}`", src.name())))?;
            cur.expect_sym("->")?;
            let (el, ec) = cur.here();
            let e = parse_element(tgt.lie(), cur)?;
            cur.expect_sym(";")?;
            if values[i].is_some() {
                return Err(err(gl, gc, format!("second image for `{g}`")));
            }
            let expected = src.generators()[i].degree;
            if !e.is_zero() && e.degree() != expected {
                return Err(err(
                    el,
                    ec,
                    format!("image of `{g}` has degree {}, but `{g}` has degree {expected}", e.degree()),
                ));
            }
            values[i] = Some(e.with_degree(expected));
        }
        cur.expect_sym("}")?;
        let mut vals = Vec::with_capacity(values.len());
        for (v, g) in values.into_iter().zip(src.generators()) {
            match v {
                Some(v) => vals.push(v),
                None => return Err(err(nl, nc, format!("map `{name}` gives no image for `{}`", g.name))),
            }
        }
        let m = DglMorphism::unchecked(name, src, tgt, vals).map_err(|e| err(nl, nc, e.to_string()))?;
        self.maps.push(Arc::new(m));
        Ok(())
    }

    fn lookup_model(&self, cur: &mut Cursor) -> Result<Arc<DglModel>, SyntaxError> {
        let (m, l, c) = cur.expect_ident()?;
        self.model(&m)
            .cloned()
            .ok_or_else(|| err(l, c, format!("unknown model `{m}`")))
    }

    pub fn models(&self) -> &[Arc<DglModel>] {
        &self.models
    }

    pub fn maps(&self) -> &[Arc<DglMorphism>] {
        &self.maps
    }

    pub fn model(&self, name: &str) -> Option<&Arc<DglModel>> {
        self.models.iter().find(|m| m.name() == name)
    }

    pub fn map(&self, name: &str) -> Option<&Arc<DglMorphism>> {
        self.maps.iter().find(|m| m.name() == name)
    }

    /// Validation reports for every model, then chain-condition failures for every map.
    pub fn validate(&self) -> Validation {
        let models = self
            .models
            .iter()
            .map(|m| (m.name().to_string(), m.validate()))
            .collect();
        let maps = self
            .maps
            .iter()
            .map(|f| (f.name().to_string(), f.check_chain().err().map(|e| e.to_string())))
            .collect();
        (models, maps)
    }

    pub fn is_valid(&self) -> bool {
        let (models, maps) = self.validate();
        models.iter().all(|(_, r)| r.ok()) && maps.iter().all(|(_, e)| e.is_none())
    }

    /// Prints the workspace back in the file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for m in &self.models {
            out.push_str(&model_text(m));
            out.push('\n');
        }
        for f in &self.maps {
            let _ = writeln!(out, "map {} : {} -> {} {{", f.name(), f.source().name(), f.target().name());
            for (g, v) in f.source().generators().iter().zip(f.values()) {
                let _ = writeln!(out, "  {} -> {};", g.name, f.target().render(v));
            }
            out.push_str("}\n\n");
        }
        out
    }
}

pub fn model_text(m: &DglModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model {} {{", m.name());
    for g in m.generators() {
        match g.upper {
            Some(u) => {
                let _ = writeln!(out, "  gen {} : deg {} upper {};", g.name, g.degree, u);
            }
            None => {
                let _ = writeln!(out, "  gen {} : deg {};", g.name, g.degree);
            }
        }
    }
    for (g, d) in m.generators().iter().zip(m.diff_values()) {
        if !d.is_zero() {
            let _ = writeln!(out, "  d {} = {};", g.name, m.render(d));
        }
    }
    out.push_str("}\n");
    out
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        let same_model = |a: &Arc<DglModel>, b: &Arc<DglModel>| {
            a.name() == b.name() && a.generators() == b.generators() && a.diff_values() == b.diff_values()
        };
        self.max_degree == other.max_degree
            && self.models.len() == other.models.len()
            && self.models.iter().zip(&other.models).all(|(a, b)| same_model(a, b))
            && self.maps.len() == other.maps.len()
            && self.maps.iter().zip(&other.maps).all(|(a, b)| {
                a.name() == b.name()
                    && a.source().name() == b.source().name()
                    && a.target().name() == b.target().name()
                    && a.values() == b.values()
            })
    }
}
