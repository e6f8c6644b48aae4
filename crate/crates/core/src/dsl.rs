//! The `.aq` input language.
//!
//! ```text
//! file     := (algebra | morphism)*
//! algebra  := "algebra" IDENT "{" item* "}"
//! item     := "gen" IDENT ":" INT ";" | "rel" monomial ";" | "d" IDENT "=" poly ";"
//! morphism := "morphism" IDENT ":" IDENT "->" IDENT "{" (IDENT "|->" poly ";")* "}"
//! poly     := signed-term (("+" | "-") term)*
//! term     := RATIONAL? ("*"? IDENT ("^" INT)?)*
//! ```
//!
//! `#` starts a comment that runs to the end of the line. A generator without
//! a `d` line has zero differential; every morphism image must be given.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cdga::{Cdga, Morphism};
use crate::gca::{Generator, GradedPolynomial, GradedRing, MonomialIdeal, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub span: Span,
    pub message: String,
    pub expected: Option<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: error: {}", self.span, self.message)?;
        if let Some(e) = &self.expected {
            write!(f, " (expected {e})")?;
        }
        Ok(())
    }
}

/// All diagnostics from one parse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostics {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Declaration {
    Algebra(Cdga),
    Morphism(Morphism),
}

impl Declaration {
    pub fn name(&self) -> &str {
        match self {
            Declaration::Algebra(a) => a.name(),
            Declaration::Morphism(m) => m.name(),
        }
    }
}

/// A parsed file: declarations in source order with their starting spans.
#[derive(Clone, Debug)]
pub struct SourceFile {
    pub declarations: Vec<Declaration>,
    pub spans: Vec<Span>,
}

impl PartialEq for SourceFile {
    fn eq(&self, other: &Self) -> bool {
        self.declarations == other.declarations
    }
}

impl SourceFile {
    pub fn algebras(&self) -> impl Iterator<Item = &Cdga> {
        self.declarations.iter().filter_map(|d| match d {
            Declaration::Algebra(a) => Some(a),
            _ => None,
        })
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &Morphism> {
        self.declarations.iter().filter_map(|d| match d {
            Declaration::Morphism(m) => Some(m),
            _ => None,
        })
    }

    pub fn algebra(&self, name: &str) -> Option<&Cdga> {
        self.algebras().find(|a| a.name() == name)
    }

    pub fn morphism(&self, name: &str) -> Option<&Morphism> {
        self.morphisms().find(|m| m.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    LBrace,
    RBrace,
    Colon,
    Semi,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Arrow,
    MapsTo,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::MapsTo => "`|->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, Diagnostic> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => advance(1, &mut i, &mut col),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                col += i - start;
                out.push((Tok::Ident(chars[start..i].iter().collect()), span));
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                col += i - start;
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().expect("ascii digits")), span));
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                advance(2, &mut i, &mut col);
                out.push((Tok::Arrow, span));
            }
            '|' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                advance(3, &mut i, &mut col);
                out.push((Tok::MapsTo, span));
            }
            _ => {
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    '=' => Tok::Eq,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    other => {
                        return Err(Diagnostic {
                            span,
                            message: format!("unexpected character `{other}`"),
                            expected: None,
                        })
                    }
                };
                advance(1, &mut i, &mut col);
                out.push((tok, span));
            }
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

// Syntax tree before name resolution.

#[derive(Clone, Debug)]
struct Factor {
    name: String,
    exp: u32,
    span: Span,
}

#[derive(Clone, Debug)]
struct Term {
    coeff: Rational,
    factors: Vec<Factor>,
}

#[derive(Clone, Debug)]
struct PolyAst {
    terms: Vec<Term>,
    span: Span,
}

#[derive(Clone, Debug)]
enum Item {
    Gen {
        name: String,
        degree: BigInt,
        span: Span,
    },
    Rel {
        factors: Vec<Factor>,
        span: Span,
    },
    Diff {
        gen: String,
        value: PolyAst,
        span: Span,
    },
}

#[derive(Clone, Debug)]
enum DeclAst {
    Algebra {
        name: String,
        items: Vec<Item>,
        span: Span,
    },
    Morphism {
        name: String,
        source: (String, Span),
        target: (String, Span),
        images: Vec<(String, PolyAst, Span)>,
        span: Span,
    },
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Diagnostic {
        Diagnostic {
            span: self.span(),
            message: format!("unexpected {}", self.peek().describe()),
            expected: Some(expected.to_string()),
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.error(&tok.describe()))
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.bump().1;
                Ok((s, span))
            }
            _ => Err(self.error("identifier")),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Span> {
        match self.peek() {
            Tok::Ident(s) if s == kw => Ok(self.bump().1),
            _ => Err(self.error(&format!("`{kw}`"))),
        }
    }

    fn int(&mut self) -> PResult<(BigInt, Span)> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let span = self.bump().1;
                Ok((n, span))
            }
            _ => Err(self.error("integer")),
        }
    }

    fn small_int(&mut self) -> PResult<u32> {
        let (n, span) = self.int()?;
        u32::try_from(&n).map_err(|_| Diagnostic {
            span,
            message: format!("exponent {n} is too large"),
            expected: None,
        })
    }

    fn file(&mut self) -> PResult<Vec<DeclAst>> {
        let mut decls = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(decls),
                Tok::Ident(s) if s == "algebra" => decls.push(self.algebra()?),
                Tok::Ident(s) if s == "morphism" => decls.push(self.morphism()?),
                _ => return Err(self.error("`algebra` or `morphism`")),
            }
        }
    }

    fn algebra(&mut self) -> PResult<DeclAst> {
        let span = self.keyword("algebra")?;
        let (name, _) = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut items = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Ident(kw) if kw == "gen" => {
                    let span = self.bump().1;
                    let (name, _) = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let (degree, _) = self.int()?;
                    self.expect(Tok::Semi)?;
                    items.push(Item::Gen { name, degree, span });
                }
                Tok::Ident(kw) if kw == "rel" => {
                    let span = self.bump().1;
                    let factors = self.factors()?;
                    if factors.is_empty() {
                        return Err(self.error("monomial"));
                    }
                    self.expect(Tok::Semi)?;
                    items.push(Item::Rel { factors, span });
                }
                Tok::Ident(kw) if kw == "d" => {
                    let span = self.bump().1;
                    let (gen, _) = self.ident()?;
                    self.expect(Tok::Eq)?;
                    let value = self.poly()?;
                    self.expect(Tok::Semi)?;
                    items.push(Item::Diff { gen, value, span });
                }
                _ => return Err(self.error("`gen`, `rel`, `d` or `}`")),
            }
        }
        Ok(DeclAst::Algebra { name, items, span })
    }

    fn morphism(&mut self) -> PResult<DeclAst> {
        let span = self.keyword("morphism")?;
        let (name, _) = self.ident()?;
        self.expect(Tok::Colon)?;
        let source = self.ident()?;
        self.expect(Tok::Arrow)?;
        let target = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut images = Vec::new();
        while *self.peek() != Tok::RBrace {
            let (gen, span) = match self.ident() {
                Ok(x) => x,
                Err(_) => return Err(self.error("generator name or `}`")),
            };
            self.expect(Tok::MapsTo)?;
            let value = self.poly()?;
            self.expect(Tok::Semi)?;
            images.push((gen, value, span));
        }
        self.bump();
        Ok(DeclAst::Morphism {
            name,
            source,
            target,
            images,
            span,
        })
    }

    fn poly(&mut self) -> PResult<PolyAst> {
        let span = self.span();
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            Tok::Minus => {
                self.bump();
                negative = true;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let mut term = self.term()?;
            if negative {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            match self.peek() {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                _ => break,
            }
            self.bump();
        }
        Ok(PolyAst { terms, span })
    }

    fn term(&mut self) -> PResult<Term> {
        let mut coeff = Rational::one();
        let mut has_coeff = false;
        if let Tok::Int(_) = self.peek() {
            let (num, _) = self.int()?;
            let mut q = Rational::from_integer(num);
            if *self.peek() == Tok::Slash {
                self.bump();
                let (den, span) = self.int()?;
                if den.is_zero() {
                    return Err(Diagnostic {
                        span,
                        message: "division by zero".into(),
                        expected: None,
                    });
                }
                q /= Rational::from_integer(den);
            }
            coeff = q;
            has_coeff = true;
        }
        let factors = self.factors()?;
        if !has_coeff && factors.is_empty() {
            return Err(self.error("term"));
        }
        Ok(Term { coeff, factors })
    }

    fn factors(&mut self) -> PResult<Vec<Factor>> {
        let mut factors = Vec::new();
        loop {
            let starred = *self.peek() == Tok::Star;
            if starred {
                self.bump();
            }
            match self.peek() {
                Tok::Ident(_) => {}
                _ if starred => return Err(self.error("identifier")),
                _ => break,
            }
            let (name, span) = self.ident()?;
            let exp = if *self.peek() == Tok::Caret {
                self.bump();
                self.small_int()?
            } else {
                1
            };
            factors.push(Factor { name, exp, span });
        }
        Ok(factors)
    }
}

/// Word of generator indices for a list of factors, reporting unknown names.
fn resolve_word(
    ring: &GradedRing,
    factors: &[Factor],
    owner: &str,
    diags: &mut Vec<Diagnostic>,
) -> Option<Vec<usize>> {
    let mut word = Vec::new();
    let mut ok = true;
    for f in factors {
        match ring.index_of(&f.name) {
            Some(i) => word.extend(std::iter::repeat_n(i, f.exp as usize)),
            None => {
                diags.push(Diagnostic {
                    span: f.span,
                    message: format!("unknown symbol `{}` in {owner}", f.name),
                    expected: None,
                });
                ok = false;
            }
        }
    }
    ok.then_some(word)
}

fn resolve_poly(
    ring: &GradedRing,
    p: &PolyAst,
    owner: &str,
    diags: &mut Vec<Diagnostic>,
) -> Option<GradedPolynomial> {
    let mut out = GradedPolynomial::zero();
    let mut ok = true;
    for t in &p.terms {
        let Some(word) = resolve_word(ring, &t.factors, owner, diags) else {
            ok = false;
            continue;
        };
        if let Some((sign, m)) = ring.canonical_monomial(&word) {
            out.add_term(m, sign * &t.coeff);
        }
    }
    ok.then(|| ring.reduce(&out))
}

fn check_degree(
    p: &GradedPolynomial,
    want: i64,
    what: &str,
    span: Span,
    diags: &mut Vec<Diagnostic>,
) {
    if let Some((m, _)) = p.terms().find(|(m, _)| m.degree() != want) {
        diags.push(Diagnostic {
            span,
            message: format!(
                "degree mismatch: {what} has degree {} but must have degree {want}",
                m.degree()
            ),
            expected: None,
        });
    }
}

fn resolve_algebra(name: &str, items: &[Item], diags: &mut Vec<Diagnostic>) -> Option<Cdga> {
    let before = diags.len();
    let mut gens: Vec<Generator> = Vec::new();
    for item in items {
        if let Item::Gen {
            name: g,
            degree,
            span,
        } = item
        {
            if gens.iter().any(|h| &h.name == g) {
                diags.push(Diagnostic {
                    span: *span,
                    message: format!("duplicate generator `{g}` in algebra {name}"),
                    expected: None,
                });
                continue;
            }
            match i64::try_from(degree) {
                Ok(d) if d >= 1 => gens.push(Generator::new(g.clone(), d)),
                _ => diags.push(Diagnostic {
                    span: *span,
                    message: format!("generator `{g}` must have a positive degree, got {degree}"),
                    expected: None,
                }),
            }
        }
    }
    let ring = GradedRing::new(gens).ok()?;
    let mut relations = Vec::new();
    for item in items {
        if let Item::Rel { factors, span } = item {
            let Some(word) = resolve_word(&ring, factors, &format!("algebra {name}"), diags) else {
                continue;
            };
            match ring.canonical_monomial(&word) {
                Some((_, m)) => relations.push(m),
                None => diags.push(Diagnostic {
                    span: *span,
                    message: "relation is already zero (odd generator squared)".into(),
                    expected: None,
                }),
            }
        }
    }
    let ring = ring.with_ideal(MonomialIdeal::new(relations));
    let mut cdga = Cdga::new(name, ring.clone());
    let mut seen: Vec<&str> = Vec::new();
    for item in items {
        if let Item::Diff { gen, value, span } = item {
            let Some(index) = ring.index_of(gen) else {
                diags.push(Diagnostic {
                    span: *span,
                    message: format!("unknown symbol `{gen}` in algebra {name}"),
                    expected: None,
                });
                continue;
            };
            if seen.contains(&gen.as_str()) {
                diags.push(Diagnostic {
                    span: *span,
                    message: format!("differential of `{gen}` given twice"),
                    expected: None,
                });
                continue;
            }
            seen.push(gen);
            let Some(p) = resolve_poly(&ring, value, &format!("algebra {name}"), diags) else {
                continue;
            };
            let want = ring.generator(index).degree + 1;
            check_degree(&p, want, &format!("d {gen}"), value.span, diags);
            cdga.set_differential(gen, p)
                .expect("resolved in this ring");
        }
    }
    (diags.len() == before).then_some(cdga)
}

/// Parses and resolves a file; every problem found is reported.
pub fn parse(text: &str) -> Result<SourceFile, Diagnostics> {
    let toks = lex(text).map_err(|d| Diagnostics(vec![d]))?;
    let mut parser = Parser { toks, pos: 0 };
    let decls = parser.file().map_err(|d| Diagnostics(vec![d]))?;

    let mut diags = Vec::new();
    let mut declarations: Vec<Declaration> = Vec::new();
    let mut spans = Vec::new();
    for decl in decls {
        match decl {
            DeclAst::Algebra { name, items, span } => {
                if declarations.iter().any(|d| d.name() == name) {
                    diags.push(Diagnostic {
                        span,
                        message: format!("`{name}` is declared twice"),
                        expected: None,
                    });
                    continue;
                }
                if let Some(a) = resolve_algebra(&name, &items, &mut diags) {
                    declarations.push(Declaration::Algebra(a));
                    spans.push(span);
                }
            }
            DeclAst::Morphism {
                name,
                source,
                target,
                images,
                span,
            } => {
                if declarations.iter().any(|d| d.name() == name) {
                    diags.push(Diagnostic {
                        span,
                        message: format!("`{name}` is declared twice"),
                        expected: None,
                    });
                    continue;
                }
                let lookup = |(n, s): &(String, Span), diags: &mut Vec<Diagnostic>| {
                    let found = declarations.iter().find_map(|d| match d {
                        Declaration::Algebra(a) if a.name() == n => Some(a.clone()),
                        _ => None,
                    });
                    if found.is_none() {
                        diags.push(Diagnostic {
                            span: *s,
                            message: format!("unknown algebra `{n}`"),
                            expected: None,
                        });
                    }
                    found
                };
                let src = lookup(&source, &mut diags);
                let tgt = lookup(&target, &mut diags);
                let (Some(src), Some(tgt)) = (src, tgt) else {
                    continue;
                };
                let before = diags.len();
                let mut resolved = Vec::new();
                for (gen, value, gspan) in &images {
                    let Some(index) = src.ring().index_of(gen) else {
                        diags.push(Diagnostic {
                            span: *gspan,
                            message: format!(
                                "unknown symbol `{gen}` in source algebra {}",
                                src.name()
                            ),
                            expected: None,
                        });
                        continue;
                    };
                    if resolved.iter().any(|(g, _)| g == gen) {
                        diags.push(Diagnostic {
                            span: *gspan,
                            message: format!("image of `{gen}` given twice"),
                            expected: None,
                        });
                        continue;
                    }
                    let Some(p) = resolve_poly(
                        tgt.ring(),
                        value,
                        &format!("target algebra {}", tgt.name()),
                        &mut diags,
                    ) else {
                        continue;
                    };
                    let want = src.ring().generator(index).degree;
                    check_degree(&p, want, &format!("image of {gen}"), value.span, &mut diags);
                    resolved.push((gen.clone(), p));
                }
                for &i in src.ring().declaration_order() {
                    let g = &src.ring().generator(i).name;
                    if !resolved.iter().any(|(h, _)| h == g)
                        && !images.iter().any(|(h, _, _)| h == g)
                    {
                        diags.push(Diagnostic {
                            span,
                            message: format!("morphism {name} gives no image for `{g}`"),
                            expected: None,
                        });
                    }
                }
                if diags.len() != before {
                    continue;
                }
                match Morphism::new(name, src, tgt, resolved) {
                    Ok(m) => {
                        declarations.push(Declaration::Morphism(m));
                        spans.push(span);
                    }
                    Err(e) => diags.push(Diagnostic {
                        span,
                        message: e.to_string(),
                        expected: None,
                    }),
                }
            }
        }
    }
    if diags.is_empty() {
        Ok(SourceFile {
            declarations,
            spans,
        })
    } else {
        Err(Diagnostics(diags))
    }
}

pub fn print_algebra(a: &Cdga) -> String {
    let ring = a.ring();
    let mut s = format!("algebra {} {{\n", a.name());
    for &i in ring.declaration_order() {
        let g = ring.generator(i);
        s.push_str(&format!("  gen {} : {};\n", g.name, g.degree));
    }
    for r in ring.ideal().generators() {
        s.push_str(&format!("  rel {};\n", ring.format_monomial(r)));
    }
    for &i in ring.declaration_order() {
        if !a.d(i).is_zero() {
            s.push_str(&format!(
                "  d {} = {};\n",
                ring.generator(i).name,
                ring.format_poly(a.d(i))
            ));
        }
    }
    s.push_str("}\n");
    s
}

pub fn print_morphism(f: &Morphism) -> String {
    let src = f.source().ring();
    let mut s = format!(
        "morphism {} : {} -> {} {{\n",
        f.name(),
        f.source().name(),
        f.target().name()
    );
    for &i in src.declaration_order() {
        s.push_str(&format!(
            "  {} |-> {};\n",
            src.generator(i).name,
            f.target().ring().format_poly(f.image(i))
        ));
    }
    s.push_str("}\n");
    s
}

/// Canonical text of a file; parsing it gives back the same declarations.
pub fn print(file: &SourceFile) -> String {
    file.declarations
        .iter()
        .map(|d| match d {
            Declaration::Algebra(a) => print_algebra(a),
            Declaration::Morphism(m) => print_morphism(m),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// A file holding a morphism together with its source and target algebras.
pub fn print_morphism_file(f: &Morphism) -> String {
    format!(
        "{}\n{}\n{}",
        print_algebra(f.source()),
        print_algebra(f.target()),
        print_morphism(f)
    )
}
