use std::fmt;

use super::lexer::{lex, Span, Tok, Token};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Severity {
    Error,
    Warning,
}

/// A parse or validation failure at a source position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn error(span: Span, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, message: message.into(), span }
    }

    /// `error at 3:7: message` followed by the source line and a caret.
    pub fn render_text(&self, src: &str) -> String {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        let line = src.lines().nth(self.span.line.saturating_sub(1)).unwrap_or("");
        let pad: String = line.chars().take(self.span.col.saturating_sub(1)).map(|c| if c == '\t' { '\t' } else { ' ' }).collect();
        let marks = "^".repeat(self.span.len.max(1));
        format!("{sev} at {}: {}\n  {line}\n  {pad}{marks}", self.span, self.message)
    }

    pub fn render_machine(&self) -> String {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        format!("DIAG {sev} {} {}", self.span, self.message)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExprKind {
    Int(String),
    I,
    Tau,
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PoleSpec {
    Poly(Expr),
    Infinity(Name),
}

/// `coef * dx^dy`; no differentials for a function.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormTerm {
    pub negated: bool,
    pub coef: Option<Expr>,
    pub diffs: Vec<Name>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormExpr {
    pub terms: Vec<FormTerm>,
    pub poles: Option<Vec<PoleSpec>>,
    pub span: Span,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PointCoord {
    Inf,
    Value(Expr),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VarietyKind {
    Point(Vec<PointCoord>),
    Homog(Vec<Expr>),
    Graph { params: Vec<Name>, assigns: Vec<(Name, Expr)> },
    Hyp(Expr),
    Whole,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Variety {
    pub kind: VarietyKind,
    pub span: Span,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ChainExpr {
    Term(Variety, FormExpr),
    Scaled(Expr, Box<ChainExpr>),
    Neg(Box<ChainExpr>),
    Sum(Vec<ChainExpr>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpaceRef {
    Named(Name),
    Curve(u64, Span),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Command {
    Residue { chain: Name, along: PoleSpec },
    Residues { chain: Name },
    Boundary { chain: Name, rel: Option<Name> },
    D2 { chain: Name },
    Push { f: Expr, chain: Name },
    Intersect { a: Name, b: Name, space: Name },
    Product { a: Name, b: Name, space: Name },
    Link { c1: Name, c2: Name, s2: Name, space: Name },
    Class0 { chain: Name, rel: Option<Name> },
    Hp(SpaceRef),
    Euler(SpaceRef),
    Property { name: Name, count: u32 },
}

impl Command {
    pub fn keyword(&self) -> &'static str {
        match self {
            Command::Residue { .. } => "residue",
            Command::Residues { .. } => "residues",
            Command::Boundary { .. } => "boundary",
            Command::D2 { .. } => "d2",
            Command::Push { .. } => "push",
            Command::Intersect { .. } => "intersect",
            Command::Product { .. } => "product",
            Command::Link { .. } => "link",
            Command::Class0 { .. } => "class0",
            Command::Hp(_) => "hp",
            Command::Euler(_) => "euler",
            Command::Property { .. } => "property",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StmtKind {
    Space { name: Name, kind: Name },
    Orient { space: Name, form: FormExpr },
    Chain { name: Name, space: Name, value: ChainExpr },
    Relative { name: Name, space: Option<Name>, members: Vec<Variety> },
    Command(Command),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

/// A parsed session: statements in source order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Session {
    pub statements: Vec<Stmt>,
}

const SPACES: [&str; 5] = ["P1", "P2", "P3", "P1xP1", "P1xP1xP1"];
const VARIETIES: [&str; 4] = ["point", "graph", "hyp", "whole"];

fn is_differential(s: &str) -> bool {
    s.len() > 1 && s.starts_with('d') && s != "d2"
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        Diagnostic::error(self.span(), format!("expected {what}, found {}", self.peek()))
    }

    fn expect(&mut self, t: Tok, what: &str) -> PResult<Span> {
        if *self.peek() == t {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn at_ident(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> PResult<Span> {
        if self.at_ident(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("'{kw}'")))
        }
    }

    fn name(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(text) => Ok(Name { text, span: self.bump().span }),
            _ => Err(self.unexpected("a name")),
        }
    }

    fn int(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Int(text) => Ok((text, self.bump().span)),
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn end_of_statement(&mut self) -> PResult<()> {
        match self.peek() {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => Err(self.unexpected("end of line")),
        }
    }

    fn skip_line(&mut self) {
        while !matches!(self.peek(), Tok::Newline | Tok::Eof) {
            self.bump();
        }
        if *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let span = self.span();
        let Tok::Ident(kw) = self.peek().clone() else {
            return Err(self.unexpected("a statement"));
        };
        let kind = match kw.as_str() {
            "space" => {
                self.bump();
                let name = self.name()?;
                self.expect(Tok::Eq, "'='")?;
                let kind = self.name()?;
                if !SPACES.contains(&kind.text.as_str()) {
                    return Err(Diagnostic::error(kind.span, format!("unknown space '{}'; expected one of {}", kind.text, SPACES.join(", "))));
                }
                StmtKind::Space { name, kind }
            }
            "orient" => {
                self.bump();
                let space = self.name()?;
                self.keyword("with")?;
                let form = self.form()?;
                StmtKind::Orient { space, form }
            }
            "chain" => {
                self.bump();
                let name = self.name()?;
                self.keyword("in")?;
                let space = self.name()?;
                self.expect(Tok::Eq, "'='")?;
                let value = self.chain_sum()?;
                StmtKind::Chain { name, space, value }
            }
            "relative" => {
                self.bump();
                let name = self.name()?;
                let space = if self.at_ident("in") {
                    self.bump();
                    Some(self.name()?)
                } else {
                    None
                };
                self.expect(Tok::Eq, "'='")?;
                self.expect(Tok::LBracket, "'['")?;
                let mut members = vec![self.variety()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    members.push(self.variety()?);
                }
                self.expect(Tok::RBracket, "']'")?;
                StmtKind::Relative { name, space, members }
            }
            _ => StmtKind::Command(self.command()?),
        };
        self.end_of_statement()?;
        Ok(Stmt { kind, span })
    }

    fn rel(&mut self) -> PResult<Option<Name>> {
        if self.at_ident("rel") {
            self.bump();
            return Ok(Some(self.name()?));
        }
        Ok(None)
    }

    fn space_ref(&mut self) -> PResult<SpaceRef> {
        if self.at_ident("curve") && *self.peek_at(1) == Tok::LParen {
            let span = self.bump().span;
            self.bump();
            let (g, gs) = self.int()?;
            self.expect(Tok::RParen, "')'")?;
            let g = g.parse::<u64>().map_err(|_| Diagnostic::error(gs, "genus out of range"))?;
            return Ok(SpaceRef::Curve(g, span));
        }
        Ok(SpaceRef::Named(self.name()?))
    }

    fn command(&mut self) -> PResult<Command> {
        let kw = self.name()?;
        Ok(match kw.text.as_str() {
            "residue" => {
                let chain = self.name()?;
                self.keyword("along")?;
                let along = self.pole()?;
                Command::Residue { chain, along }
            }
            "residues" => Command::Residues { chain: self.name()? },
            "boundary" => {
                let chain = self.name()?;
                Command::Boundary { chain, rel: self.rel()? }
            }
            "d2" => Command::D2 { chain: self.name()? },
            "push" => {
                self.expect(Tok::LParen, "'('")?;
                let f = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Command::Push { f, chain: self.name()? }
            }
            "intersect" | "product" => {
                let a = self.name()?;
                let b = self.name()?;
                self.keyword("in")?;
                let space = self.name()?;
                if kw.text == "intersect" {
                    Command::Intersect { a, b, space }
                } else {
                    Command::Product { a, b, space }
                }
            }
            "link" => {
                let c1 = self.name()?;
                let c2 = self.name()?;
                self.keyword("via")?;
                let s2 = self.name()?;
                self.keyword("in")?;
                Command::Link { c1, c2, s2, space: self.name()? }
            }
            "class0" => {
                let chain = self.name()?;
                Command::Class0 { chain, rel: self.rel()? }
            }
            "hp" => Command::Hp(self.space_ref()?),
            "euler" => Command::Euler(self.space_ref()?),
            "property" => {
                let name = self.name()?;
                let (n, ns) = self.int()?;
                let count = n.parse::<u32>().map_err(|_| Diagnostic::error(ns, "count out of range"))?;
                Command::Property { name, count }
            }
            other => return Err(Diagnostic::error(kw.span, format!("unknown statement '{other}'"))),
        })
    }

    fn chain_sum(&mut self) -> PResult<ChainExpr> {
        let mut items = Vec::new();
        let first_neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let first = self.chain_item()?;
        items.push(if first_neg { ChainExpr::Neg(Box::new(first)) } else { first });
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    items.push(self.chain_item()?);
                }
                Tok::Minus => {
                    self.bump();
                    items.push(ChainExpr::Neg(Box::new(self.chain_item()?)));
                }
                _ => break,
            }
        }
        Ok(if items.len() == 1 { items.pop().expect("one") } else { ChainExpr::Sum(items) })
    }

    fn at_chain_open(&self) -> bool {
        match self.peek() {
            Tok::LBracket => true,
            Tok::LParen => matches!(self.peek_at(1), Tok::Ident(s) if VARIETIES.contains(&s.as_str())),
            _ => false,
        }
    }

    fn chain_item(&mut self) -> PResult<ChainExpr> {
        if self.at_chain_open() {
            return self.chain_atom();
        }
        let coef = self.term_until_chain()?;
        self.expect(Tok::Star, "'*'")?;
        if !self.at_chain_open() {
            return Err(self.unexpected("'(' or '[' opening a chain"));
        }
        Ok(ChainExpr::Scaled(coef, Box::new(self.chain_atom()?)))
    }

    /// A product of powers that stops before `* (variety ...` or `* [`.
    fn term_until_chain(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    let save = self.pos;
                    self.bump();
                    if self.at_chain_open() {
                        self.pos = save;
                        return Ok(lhs);
                    }
                    let rhs = self.unary()?;
                    let span = lhs.span;
                    lhs = Expr { kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)), span };
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    let span = lhs.span;
                    lhs = Expr { kind: ExprKind::Div(Box::new(lhs), Box::new(rhs)), span };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn chain_atom(&mut self) -> PResult<ChainExpr> {
        if *self.peek() == Tok::LBracket {
            self.bump();
            let inner = self.chain_sum()?;
            self.expect(Tok::RBracket, "']'")?;
            return Ok(inner);
        }
        self.expect(Tok::LParen, "'('")?;
        let v = self.variety()?;
        self.expect(Tok::Comma, "','")?;
        let f = self.form()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(ChainExpr::Term(v, f))
    }

    fn variety(&mut self) -> PResult<Variety> {
        let kw = self.name()?;
        let span = kw.span;
        let kind = match kw.text.as_str() {
            "whole" => VarietyKind::Whole,
            "hyp" => {
                self.expect(Tok::LParen, "'('")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                VarietyKind::Hyp(e)
            }
            "point" if *self.peek() == Tok::LBracket => {
                self.bump();
                let mut cs = vec![self.expr()?];
                while *self.peek() == Tok::Colon {
                    self.bump();
                    cs.push(self.expr()?);
                }
                self.expect(Tok::RBracket, "']'")?;
                VarietyKind::Homog(cs)
            }
            "point" => {
                self.expect(Tok::LParen, "'('")?;
                let mut cs = Vec::new();
                if *self.peek() != Tok::RParen {
                    loop {
                        if self.at_ident("inf") {
                            self.bump();
                            cs.push(PointCoord::Inf);
                        } else {
                            cs.push(PointCoord::Value(self.expr()?));
                        }
                        if *self.peek() != Tok::Comma {
                            break;
                        }
                        self.bump();
                    }
                }
                self.expect(Tok::RParen, "')'")?;
                VarietyKind::Point(cs)
            }
            "graph" => {
                self.expect(Tok::LParen, "'('")?;
                let mut params = vec![self.param()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    params.push(self.param()?);
                }
                self.expect(Tok::Semi, "';'")?;
                let mut assigns = Vec::new();
                if *self.peek() != Tok::RParen {
                    loop {
                        let n = self.name()?;
                        self.expect(Tok::Eq, "'='")?;
                        assigns.push((n, self.expr()?));
                        if *self.peek() != Tok::Comma {
                            break;
                        }
                        self.bump();
                    }
                }
                self.expect(Tok::RParen, "')'")?;
                VarietyKind::Graph { params, assigns }
            }
            other => return Err(Diagnostic::error(kw.span, format!("expected a variety (point, graph, hyp, whole), found '{other}'"))),
        };
        Ok(Variety { kind, span })
    }

    fn param(&mut self) -> PResult<Name> {
        let n = self.name()?;
        if n.text.starts_with('d') {
            return Err(Diagnostic::error(n.span, "parameter names may not begin with 'd'"));
        }
        Ok(n)
    }

    fn pole(&mut self) -> PResult<PoleSpec> {
        if self.at_ident("infinity") && *self.peek_at(1) == Tok::LParen {
            self.bump();
            self.bump();
            let n = self.name()?;
            self.expect(Tok::RParen, "')'")?;
            return Ok(PoleSpec::Infinity(n));
        }
        Ok(PoleSpec::Poly(self.expr()?))
    }

    fn at_differential(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if is_differential(s))
    }

    fn form(&mut self) -> PResult<FormExpr> {
        let span = self.span();
        let mut terms = Vec::new();
        let mut negated = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        loop {
            let mut t = self.form_term()?;
            t.negated = negated;
            terms.push(t);
            match self.peek() {
                Tok::Plus => negated = false,
                Tok::Minus => negated = true,
                _ => break,
            }
            self.bump();
        }
        let poles = if self.at_ident("poles") {
            self.bump();
            self.expect(Tok::LBracket, "'['")?;
            let mut ps = Vec::new();
            if *self.peek() != Tok::RBracket {
                ps.push(self.pole()?);
                while *self.peek() == Tok::Comma {
                    self.bump();
                    ps.push(self.pole()?);
                }
            }
            self.expect(Tok::RBracket, "']'")?;
            Some(ps)
        } else {
            None
        };
        Ok(FormExpr { terms, poles, span })
    }

    fn form_term(&mut self) -> PResult<FormTerm> {
        if self.at_differential() {
            return Ok(FormTerm { negated: false, coef: None, diffs: self.wedge()? });
        }
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    if self.at_differential() {
                        return Ok(FormTerm { negated: false, coef: Some(lhs), diffs: self.wedge()? });
                    }
                    let rhs = self.power()?;
                    let span = lhs.span;
                    lhs = Expr { kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)), span };
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.power()?;
                    let span = lhs.span;
                    lhs = Expr { kind: ExprKind::Div(Box::new(lhs), Box::new(rhs)), span };
                }
                _ => return Ok(FormTerm { negated: false, coef: Some(lhs), diffs: Vec::new() }),
            }
        }
    }

    fn wedge(&mut self) -> PResult<Vec<Name>> {
        let mut out = vec![self.differential()?];
        while *self.peek() == Tok::Caret {
            self.bump();
            out.push(self.differential()?);
        }
        Ok(out)
    }

    fn differential(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(s) if is_differential(&s) => {
                let span = self.bump().span;
                Ok(Name { text: s[1..].to_string(), span })
            }
            _ => Err(self.unexpected("a differential such as 'dx'")),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let add = match self.peek() {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span;
            let kind = if add { ExprKind::Add(Box::new(lhs), Box::new(rhs)) } else { ExprKind::Sub(Box::new(lhs), Box::new(rhs)) };
            lhs = Expr { kind, span };
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let mul = match self.peek() {
                Tok::Star => true,
                Tok::Slash => false,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span;
            let kind = if mul { ExprKind::Mul(Box::new(lhs), Box::new(rhs)) } else { ExprKind::Div(Box::new(lhs), Box::new(rhs)) };
            lhs = Expr { kind, span };
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if *self.peek() == Tok::Minus {
            let span = self.bump().span;
            let inner = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), span });
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret && matches!(self.peek_at(1), Tok::Int(_)) {
            self.bump();
            let (n, ns) = self.int()?;
            let e = n.parse::<u32>().map_err(|_| Diagnostic::error(ns, "exponent out of range"))?;
            let span = base.span;
            return Ok(Expr { kind: ExprKind::Pow(Box::new(base), e), span });
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let span = self.span();
        let kind = match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                ExprKind::Int(s)
            }
            Tok::Tau => {
                self.bump();
                ExprKind::Tau
            }
            Tok::Ident(s) if s == "i" => {
                self.bump();
                ExprKind::I
            }
            Tok::Ident(s) if s == "tau" => {
                self.bump();
                ExprKind::Tau
            }
            Tok::Ident(s) if is_differential(&s) => return Err(Diagnostic::error(span, format!("differential '{s}' inside a coefficient"))),
            Tok::Ident(s) => {
                self.bump();
                ExprKind::Var(s)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                return Ok(Expr { span, ..e });
            }
            _ => return Err(self.unexpected("an expression")),
        };
        Ok(Expr { kind, span })
    }
}

/// Parses a whole session. Errors are collected per statement: the first
/// error of a statement is kept and parsing resumes on the next line.
pub fn parse(src: &str) -> Result<Session, Vec<Diagnostic>> {
    let toks = match lex(src) {
        Ok(t) => t,
        Err(e) => return Err(vec![Diagnostic::error(e.span, format!("unexpected character '{}'", e.ch))]),
    };
    let mut p = Parser { toks, pos: 0 };
    let mut statements = Vec::new();
    let mut diags = Vec::new();
    loop {
        while *p.peek() == Tok::Newline {
            p.bump();
        }
        if *p.peek() == Tok::Eof {
            break;
        }
        match p.statement() {
            Ok(s) => statements.push(s),
            Err(d) => {
                diags.push(d);
                p.skip_line();
            }
        }
    }
    if diags.is_empty() {
        Ok(Session { statements })
    } else {
        Err(diags)
    }
}

// ---- rendering back to source ----

fn prec(e: &Expr) -> u8 {
    match e.kind {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Mul(..) | ExprKind::Div(..) => 2,
        ExprKind::Neg(_) => 3,
        ExprKind::Pow(..) => 4,
        _ => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if prec(e) < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(s) => f.write_str(s),
            ExprKind::I => f.write_str("i"),
            ExprKind::Tau => f.write_str("tau"),
            ExprKind::Var(s) => f.write_str(s),
            ExprKind::Neg(a) => write!(f, "-{}", wrap(a, 3)),
            ExprKind::Add(a, b) => write!(f, "{} + {}", wrap(a, 1), wrap(b, 2)),
            ExprKind::Sub(a, b) => write!(f, "{} - {}", wrap(a, 1), wrap(b, 2)),
            ExprKind::Mul(a, b) => write!(f, "{}*{}", wrap(a, 2), wrap(b, 3)),
            ExprKind::Div(a, b) => write!(f, "{}/{}", wrap(a, 2), wrap(b, 4)),
            ExprKind::Pow(a, n) => write!(f, "{}^{n}", wrap(a, 5)),
        }
    }
}

impl fmt::Display for PoleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleSpec::Poly(e) => write!(f, "{e}"),
            PoleSpec::Infinity(n) => write!(f, "infinity({})", n.text),
        }
    }
}

impl fmt::Display for FormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.negated) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let ds: Vec<String> = t.diffs.iter().map(|d| format!("d{}", d.text)).collect();
            match (&t.coef, ds.is_empty()) {
                (Some(c), true) => write!(f, "{}", wrap(c, 2))?,
                (Some(c), false) => write!(f, "{}*{}", wrap(c, 2), ds.join("^"))?,
                (None, _) => f.write_str(&ds.join("^"))?,
            }
        }
        if let Some(ps) = &self.poles {
            let ps: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
            write!(f, " poles [{}]", ps.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            VarietyKind::Whole => f.write_str("whole"),
            VarietyKind::Hyp(e) => write!(f, "hyp({e})"),
            VarietyKind::Point(cs) => {
                let cs: Vec<String> = cs
                    .iter()
                    .map(|c| match c {
                        PointCoord::Inf => "inf".to_string(),
                        PointCoord::Value(e) => e.to_string(),
                    })
                    .collect();
                write!(f, "point({})", cs.join(", "))
            }
            VarietyKind::Homog(cs) => {
                let cs: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "point[{}]", cs.join(":"))
            }
            VarietyKind::Graph { params, assigns } => {
                let ps: Vec<&str> = params.iter().map(|p| p.text.as_str()).collect();
                let asg: Vec<String> = assigns.iter().map(|(n, e)| format!("{}={e}", n.text)).collect();
                write!(f, "graph({}; {})", ps.join(", "), asg.join(", "))
            }
        }
    }
}

impl fmt::Display for ChainExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainExpr::Term(v, form) => write!(f, "({v}, {form})"),
            ChainExpr::Scaled(c, inner) => match **inner {
                ChainExpr::Term(..) => write!(f, "{}*{inner}", wrap(c, 3)),
                _ => write!(f, "{}*[{inner}]", wrap(c, 3)),
            },
            ChainExpr::Neg(inner) => match **inner {
                ChainExpr::Sum(_) => write!(f, "-[{inner}]"),
                _ => write!(f, "-{inner}"),
            },
            ChainExpr::Sum(items) => {
                for (i, it) in items.iter().enumerate() {
                    match (i, it) {
                        (0, _) => write!(f, "{it}")?,
                        (_, ChainExpr::Neg(inner)) if !matches!(**inner, ChainExpr::Sum(_)) => write!(f, " - {inner}")?,
                        _ => write!(f, " + {it}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for SpaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceRef::Named(n) => f.write_str(&n.text),
            SpaceRef::Curve(g, _) => write!(f, "curve({g})"),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = |r: &Option<Name>| r.as_ref().map(|n| format!(" rel {}", n.text)).unwrap_or_default();
        match self {
            Command::Residue { chain, along } => write!(f, "residue {} along {along}", chain.text),
            Command::Residues { chain } => write!(f, "residues {}", chain.text),
            Command::Boundary { chain, rel: r } => write!(f, "boundary {}{}", chain.text, rel(r)),
            Command::D2 { chain } => write!(f, "d2 {}", chain.text),
            Command::Push { f: e, chain } => write!(f, "push ({e}) {}", chain.text),
            Command::Intersect { a, b, space } => write!(f, "intersect {} {} in {}", a.text, b.text, space.text),
            Command::Product { a, b, space } => write!(f, "product {} {} in {}", a.text, b.text, space.text),
            Command::Link { c1, c2, s2, space } => write!(f, "link {} {} via {} in {}", c1.text, c2.text, s2.text, space.text),
            Command::Class0 { chain, rel: r } => write!(f, "class0 {}{}", chain.text, rel(r)),
            Command::Hp(s) => write!(f, "hp {s}"),
            Command::Euler(s) => write!(f, "euler {s}"),
            Command::Property { name, count } => write!(f, "property {} {count}", name.text),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Space { name, kind } => write!(f, "space {} = {}", name.text, kind.text),
            StmtKind::Orient { space, form } => write!(f, "orient {} with {form}", space.text),
            StmtKind::Chain { name, space, value } => write!(f, "chain {} in {} = {value}", name.text, space.text),
            StmtKind::Relative { name, space, members } => {
                let ms: Vec<String> = members.iter().map(|m| m.to_string()).collect();
                match space {
                    Some(s) => write!(f, "relative {} in {} = [{}]", name.text, s.text, ms.join(", ")),
                    None => write!(f, "relative {} = [{}]", name.text, ms.join(", ")),
                }
            }
            StmtKind::Command(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
