//! Curve expressions: a small language for holomorphic maps `z ↦ C⁴`.
//!
//! ```text
//! curve   := '(' expr (',' expr)* ')'          2 or 4 components
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' ['-'] integer)*
//! primary := number ['i'] | 'i' | 'z' | func '(' expr ')' | '(' expr ')'
//! func    := exp | log | sin | cos | sinh | cosh | sqrt
//! ```
//!
//! A 2-tuple describes a curve in C² and is padded with zeros. Printing is
//! fully parenthesized, so `parse(print(e))` prints back to the same text.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::ComplexJet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 7] = [
        Func::Exp,
        Func::Log,
        Func::Sin,
        Func::Cos,
        Func::Sinh,
        Func::Cosh,
        Func::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    Literal(Complex64),
    Var,
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Pow(Box<Node>, i64),
    Call(Func, Box<Node>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub kind: NodeKind,
    pub pos: Pos,
}

impl Node {
    pub fn new(kind: NodeKind) -> Self {
        Node {
            kind,
            pos: Pos::default(),
        }
    }

    pub fn lit(c: Complex64) -> Self {
        Node::new(NodeKind::Literal(c))
    }

    pub fn var() -> Self {
        Node::new(NodeKind::Var)
    }

    pub fn binary(op: BinOp, a: Node, b: Node) -> Self {
        Node::new(NodeKind::Binary(op, Box::new(a), Box::new(b)))
    }

    pub fn pow(a: Node, n: i64) -> Self {
        Node::new(NodeKind::Pow(Box::new(a), n))
    }

    pub fn call(f: Func, a: Node) -> Self {
        Node::new(NodeKind::Call(f, Box::new(a)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, NodeKind::Literal(c) if c == Complex64::new(0.0, 0.0))
    }

    /// Holomorphic jet of this expression at the point described by `z`.
    pub fn eval(&self, z: &ComplexJet) -> Result<ComplexJet> {
        let fail = |s: crate::jets::Singularity| Error::Evaluation {
            kind: s.as_str(),
            subexpr: self.to_string(),
            column: self.pos.column,
        };
        Ok(match &self.kind {
            NodeKind::Literal(c) => ComplexJet::constant(*c),
            NodeKind::Var => *z,
            NodeKind::Neg(a) => -a.eval(z)?,
            NodeKind::Binary(op, a, b) => {
                let (x, y) = (a.eval(z)?, b.eval(z)?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => x.div(&y).map_err(fail)?,
                }
            }
            NodeKind::Pow(a, n) => a.eval(z)?.powi(*n).map_err(fail)?,
            NodeKind::Call(f, a) => {
                let x = a.eval(z)?;
                match f {
                    Func::Exp => x.exp(),
                    Func::Log => x.ln().map_err(fail)?,
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                    Func::Sqrt => x.sqrt().map_err(fail)?,
                }
            }
        })
    }
}

fn write_real(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    // `{:?}` is the shortest round-trip form and always keeps a digit
    // before any exponent, which the lexer accepts.
    write!(f, "{x:?}")
}

fn write_literal(f: &mut fmt::Formatter<'_>, c: Complex64) -> fmt::Result {
    let neg_zero = |x: f64| x == 0.0;
    match (neg_zero(c.re), neg_zero(c.im)) {
        (_, true) if c.re >= 0.0 || c.re.is_nan() => write_real(f, c.re.abs()),
        (_, true) => {
            f.write_str("(-")?;
            write_real(f, -c.re)?;
            f.write_str(")")
        }
        (true, false) if c.im > 0.0 => {
            write_real(f, c.im)?;
            f.write_str("i")
        }
        (true, false) => {
            f.write_str("(-")?;
            write_real(f, -c.im)?;
            f.write_str("i)")
        }
        (false, false) => {
            f.write_str("(")?;
            if c.re < 0.0 {
                f.write_str("-")?;
            }
            write_real(f, c.re.abs())?;
            f.write_str(if c.im < 0.0 { "-" } else { "+" })?;
            write_real(f, c.im.abs())?;
            f.write_str("i)")
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            NodeKind::Literal(c) => write_literal(f, *c),
            NodeKind::Var => f.write_str("z"),
            NodeKind::Neg(a) => write!(f, "(-{a})"),
            NodeKind::Binary(op, a, b) => write!(f, "({a}{}{b})", op.symbol()),
            NodeKind::Pow(a, n) => write!(f, "({a}^{n})"),
            NodeKind::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

/// A parsed holomorphic curve into C⁴.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveExpr {
    pub components: [Node; 4],
    /// Number of components written in the source (2 or 4).
    pub arity: usize,
}

impl CurveExpr {
    pub fn new(components: [Node; 4]) -> Self {
        CurveExpr {
            components,
            arity: 4,
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<[ComplexJet; 4]> {
        let zj = ComplexJet::variable(z);
        let [a, b, c, d] = &self.components;
        Ok([a.eval(&zj)?, b.eval(&zj)?, c.eval(&zj)?, d.eval(&zj)?])
    }

    /// Every component multiplied by the constant `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        CurveExpr {
            components: self
                .components
                .clone()
                .map(|n| Node::binary(BinOp::Mul, Node::lit(c), n)),
            arity: self.arity,
        }
    }

    /// Every component shifted by the constant vector `p`.
    pub fn shifted(&self, p: [Complex64; 4]) -> Self {
        let mut k = 0;
        CurveExpr {
            components: self.components.clone().map(|n| {
                let out = Node::binary(BinOp::Add, n, Node::lit(p[k]));
                k += 1;
                out
            }),
            arity: 4,
        }
    }

    /// The holomorphic inversion `Z ↦ R²Z/⟨⟨Z,Z⟩⟩` applied to this curve.
    pub fn holomorphic_inversion(&self, radius: f64) -> Self {
        let mut q: Option<Node> = None;
        for n in &self.components {
            if n.is_zero() {
                continue;
            }
            let sq = Node::pow(n.clone(), 2);
            q = Some(match q {
                None => sq,
                Some(acc) => Node::binary(BinOp::Add, acc, sq),
            });
        }
        let q = q.unwrap_or_else(|| Node::lit(Complex64::new(0.0, 0.0)));
        let r2 = Node::lit(Complex64::new(radius * radius, 0.0));
        CurveExpr {
            components: self.components.clone().map(|n| {
                if n.is_zero() {
                    n
                } else {
                    Node::binary(
                        BinOp::Div,
                        Node::binary(BinOp::Mul, r2.clone(), n),
                        q.clone(),
                    )
                }
            }),
            arity: 4,
        }
    }
}

impl fmt::Display for CurveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, n) in self.components.iter().take(self.arity).enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64, bool),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(..) => "number".into(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn syntax(pos: Pos, expected: &[&str], found: String) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        let pos = Pos { line, column: col };
        if ch == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if ch.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        let single = match ch {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            col += 1;
            k += 1;
            continue;
        }
        let start = k;
        if ch.is_ascii_digit() || ch == '.' {
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            if k < chars.len() && (chars[k] == 'e' || chars[k] == 'E') {
                let mut m = k + 1;
                if m < chars.len() && (chars[m] == '+' || chars[m] == '-') {
                    m += 1;
                }
                if m < chars.len() && chars[m].is_ascii_digit() {
                    while m < chars.len() && chars[m].is_ascii_digit() {
                        m += 1;
                    }
                    k = m;
                }
            }
            let text: String = chars[start..k].iter().collect();
            let value: f64 = text
                .parse()
                .map_err(|_| syntax(pos, &["number"], format!("`{text}`")))?;
            let imag = k < chars.len() && chars[k] == 'i' && !chars.get(k + 1).is_some_and(|c| c.is_alphanumeric());
            if imag {
                k += 1;
            }
            col += k - start;
            out.push((Tok::Num(value, imag), pos));
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            col += k - start;
            out.push((Tok::Ident(text), pos));
            continue;
        }
        return Err(syntax(pos, &["token"], format!("`{ch}`")));
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        syntax(self.pos(), expected, self.peek().describe())
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn curve(&mut self) -> Result<CurveExpr> {
        self.expect(Tok::LParen, "`(`")?;
        let mut comps = vec![self.expr()?];
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                    comps.push(self.expr()?);
                }
                Tok::RParen => {
                    let close = self.pos();
                    self.bump();
                    if comps.len() != 2 && comps.len() != 4 {
                        return Err(syntax(
                            close,
                            &["2 or 4 components"],
                            format!("{} components", comps.len()),
                        ));
                    }
                    break;
                }
                _ => return Err(self.error(&["`,`", "`)`", "operator"])),
            }
        }
        if *self.peek() != Tok::Eof {
            return Err(self.error(&["end of input"]));
        }
        let arity = comps.len();
        while comps.len() < 4 {
            comps.push(Node::lit(Complex64::new(0.0, 0.0)));
        }
        let components: [Node; 4] = comps.try_into().expect("four components");
        Ok(CurveExpr { components, arity })
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let pos = lhs.pos;
            self.bump();
            let rhs = self.term()?;
            lhs = Node {
                kind: NodeKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            let pos = lhs.pos;
            self.bump();
            let rhs = self.unary()?;
            lhs = Node {
                kind: NodeKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if *self.peek() == Tok::Minus {
            let (_, pos) = self.bump();
            let inner = self.unary()?;
            return Ok(Node {
                kind: NodeKind::Neg(Box::new(inner)),
                pos,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let mut base = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let n = self.integer()?;
            let pos = base.pos;
            base = Node {
                kind: NodeKind::Pow(Box::new(base), n),
                pos,
            };
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let n = match self.peek().clone() {
            Tok::Num(x, false) if libm::trunc(x) == x && x.abs() <= 1024.0 => {
                self.bump();
                x as i64
            }
            _ => return Err(self.error(&["integer exponent"])),
        };
        if paren {
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(if neg { -n } else { n })
    }

    fn primary(&mut self) -> Result<Node> {
        let pos = self.pos();
        let node = |kind| Node { kind, pos };
        match self.peek().clone() {
            Tok::Num(x, imag) => {
                self.bump();
                let c = if imag {
                    Complex64::new(0.0, x)
                } else {
                    Complex64::new(x, 0.0)
                };
                Ok(node(NodeKind::Literal(c)))
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "z" => Ok(node(NodeKind::Var)),
                    "i" => Ok(node(NodeKind::Literal(Complex64::new(0.0, 1.0)))),
                    other => match Func::from_name(other) {
                        Some(f) => {
                            self.expect(Tok::LParen, "`(`")?;
                            let arg = self.expr()?;
                            self.expect(Tok::RParen, "`)`")?;
                            Ok(node(NodeKind::Call(f, Box::new(arg))))
                        }
                        None => Err(syntax(
                            pos,
                            &["expression"],
                            format!("unknown identifier `{other}`"),
                        )),
                    },
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.error(&["expression"])),
        }
    }
}

/// Parses a curve tuple such as `"(cos(z), sin(z), -i*z, 0)"`.
pub fn parse_curve(text: &str) -> Result<CurveExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    p.curve()
}

/// Parses a single complex expression in `z`.
pub fn parse_expr(text: &str) -> Result<Node> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let n = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(expr: &CurveExpr, z: Complex64) -> [Complex64; 4] {
        expr.eval(z).unwrap().map(|j| j.value())
    }

    #[test]
    fn catenoid_tuple() {
        let e = parse_curve("(cos(z), sin(z), -i*z, 0)").unwrap();
        assert_eq!(e.arity, 4);
        let v = at(&e, Complex64::new(0.0, 0.0));
        assert_eq!(v, [1.0, 0.0, 0.0, 0.0].map(|x| Complex64::new(x, 0.0)));
    }

    #[test]
    fn pair_is_padded() {
        let e = parse_curve("(z, 1/z)").unwrap();
        assert_eq!(e.arity, 2);
        let v = at(&e, Complex64::new(2.0, 0.0));
        assert_eq!(v[1], Complex64::new(0.5, 0.0));
        assert_eq!(v[3], Complex64::new(0.0, 0.0));
        assert_eq!(e.to_string(), "(z, (1.0/z))");
    }

    #[test]
    fn truncated_input_points_past_the_end() {
        match parse_curve("(z, ") {
            Err(Error::Syntax {
                line,
                column,
                expected,
                ..
            }) => {
                assert_eq!((line, column), (1, 5));
                assert_eq!(expected, vec!["expression".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence() {
        let n = parse_expr("-z^2").unwrap();
        let j = n.eval(&ComplexJet::variable(Complex64::new(3.0, 0.0))).unwrap();
        assert_eq!(j.value(), Complex64::new(-9.0, 0.0));
        let n = parse_expr("1 - 2 - 3").unwrap();
        assert_eq!(n.eval(&ComplexJet::ZERO).unwrap().value().re, -4.0);
        let n = parse_expr("12 / 2 / 3").unwrap();
        assert_eq!(n.eval(&ComplexJet::ZERO).unwrap().value().re, 2.0);
        let n = parse_expr("2.5i * 2").unwrap();
        assert_eq!(n.eval(&ComplexJet::ZERO).unwrap().value(), Complex64::new(0.0, 5.0));
        let n = parse_expr("z^-2").unwrap();
        let j = n.eval(&ComplexJet::variable(Complex64::new(2.0, 0.0))).unwrap();
        assert_eq!(j.value().re, 0.25);
    }

    #[test]
    fn pole_names_subexpression() {
        let e = parse_curve("(z, 1/z)").unwrap();
        match e.eval(Complex64::new(0.0, 0.0)) {
            Err(Error::Evaluation { kind, subexpr, column }) => {
                assert_eq!(kind, "pole");
                assert_eq!(subexpr, "(1.0/z)");
                assert_eq!(column, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn multiline_positions() {
        match parse_curve("(z,\n  z +)") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 6)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn literal_printing_round_trips() {
        for c in [
            Complex64::new(0.5, -0.25),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -3.0),
            Complex64::new(-0.1, 1e-20),
        ] {
            let n = Node::lit(c);
            let back = parse_expr(&n.to_string()).unwrap();
            let v = back.eval(&ComplexJet::ZERO).unwrap().value();
            assert_eq!(v, c);
        }
    }

    #[test]
    fn holomorphic_inversion_expression() {
        let e = parse_curve("(z, 0, 0, 0)").unwrap().holomorphic_inversion(1.0);
        let v = at(&e, Complex64::new(2.0, 0.0));
        assert_eq!(v[0], Complex64::new(0.5, 0.0));
    }
}
