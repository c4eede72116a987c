//! The element expression language.
//!
//! Grammar (LL(1)):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := scalar | call | '(' expr ')'
//! call   := name '(' args ')'
//! ```
//!
//! Calls: `delta(g)`, `char(lambda)`, `poly(k)`, `e({g1,g2,...})`,
//! `adj(expr)`, `antipode(expr)`; the bare name `unit` is the identity
//! multiplier. Scalar literals are signed rationals `p` or `p/q`, plus the
//! named constants `i` (Gaussian fields) and `zeta` (cyclotomic fields).
//! Parse errors carry a one-based column and the expected token set.

use std::fmt::Write as _;

use qbohr_core::error::{Error, Result};
use qbohr_core::model::QuantumGroupModel;
use qbohr_core::poly::MultiPoly;
use qbohr_core::scalar::{FieldDescriptor, Scalar};
use qbohr_core::shape::{BlockIndex, BlockShape, Window};
use qbohr_core::tail::{ExpPoly, TailRule};
use qbohr_core::{FiniteElement, Multiplier};

// ---------------------------------------------------------------------------
// tokens
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    End,
}

impl std::fmt::Display for Token {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "{s}"),
            Token::Number(s) => write!(f, "{s}"),
            Token::Plus => write!(f, "+"),
            Token::Minus => write!(f, "-"),
            Token::Star => write!(f, "*"),
            Token::Slash => write!(f, "/"),
            Token::LParen => write!(f, "("),
            Token::RParen => write!(f, ")"),
            Token::LBrace => write!(f, "{{"),
            Token::RBrace => write!(f, "}}"),
            Token::Comma => write!(f, ","),
            Token::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    while pos < bytes.len() {
        let c = bytes[pos];
        let column = pos + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                pos += 1;
            }
            '+' => {
                out.push((Token::Plus, column));
                pos += 1;
            }
            '-' => {
                out.push((Token::Minus, column));
                pos += 1;
            }
            '*' => {
                out.push((Token::Star, column));
                pos += 1;
            }
            '/' => {
                out.push((Token::Slash, column));
                pos += 1;
            }
            '(' => {
                out.push((Token::LParen, column));
                pos += 1;
            }
            ')' => {
                out.push((Token::RParen, column));
                pos += 1;
            }
            '{' => {
                out.push((Token::LBrace, column));
                pos += 1;
            }
            '}' => {
                out.push((Token::RBrace, column));
                pos += 1;
            }
            ',' => {
                out.push((Token::Comma, column));
                pos += 1;
            }
            '0'..='9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                out.push((
                    Token::Number(bytes[start..pos].iter().collect()),
                    start + 1,
                ));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == '_')
                {
                    pos += 1;
                }
                out.push((
                    Token::Ident(bytes[start..pos].iter().collect()),
                    start + 1,
                ));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character '{other}' at column {column}"
                )));
            }
        }
    }
    out.push((Token::End, bytes.len() + 1));
    Ok(out)
}

// ---------------------------------------------------------------------------
// ast
// ---------------------------------------------------------------------------

/// An argument index: resolved against the model's shape at evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArgIndex {
    Name(String),
    Numbers(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Scalar(ScalarLit),
    Unit,
    Delta(ArgIndex),
    Char(Vec<ScalarLit>),
    Poly(Vec<u32>),
    Idempotent(Vec<ArgIndex>),
    Adj(Box<Expr>),
    Antipode(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

/// A scalar literal: a signed rational or a named field constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarLit {
    Ratio(i64, i64),
    I,
    Zeta,
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn column(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, token: Token) -> Result<()> {
        if *self.peek() == token {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&format!("'{token}'")))
        }
    }

    fn error(&self, expected: &str) -> Error {
        Error::Parse(format!(
            "syntax error at column {}: found '{}', expected {expected}",
            self.column(),
            self.peek()
        ))
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.advance();
                    acc = Expr::Add(Box::new(acc), Box::new(self.parse_term()?));
                }
                Token::Minus => {
                    self.advance();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.parse_term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr> {
        let mut acc = self.parse_factor()?;
        while *self.peek() == Token::Star {
            self.advance();
            acc = Expr::Mul(Box::new(acc), Box::new(self.parse_factor()?));
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Token::Number(_) | Token::Minus => Ok(Expr::Scalar(self.parse_scalar_lit()?)),
            Token::LParen => {
                self.advance();
                let inner = self.parse_expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Token::Ident(name) => {
                self.advance();
                match name.as_str() {
                    "unit" => Ok(Expr::Unit),
                    "i" => Ok(Expr::Scalar(ScalarLit::I)),
                    "zeta" => Ok(Expr::Scalar(ScalarLit::Zeta)),
                    "delta" => {
                        self.expect(Token::LParen)?;
                        let arg = self.parse_arg_index(true)?;
                        self.expect(Token::RParen)?;
                        Ok(Expr::Delta(arg))
                    }
                    "char" => {
                        self.expect(Token::LParen)?;
                        let mut bases = vec![self.parse_scalar_lit()?];
                        while *self.peek() == Token::Comma {
                            self.advance();
                            bases.push(self.parse_scalar_lit()?);
                        }
                        self.expect(Token::RParen)?;
                        Ok(Expr::Char(bases))
                    }
                    "poly" => {
                        self.expect(Token::LParen)?;
                        let mut exps = vec![self.parse_unsigned()?];
                        while *self.peek() == Token::Comma {
                            self.advance();
                            exps.push(self.parse_unsigned()?);
                        }
                        self.expect(Token::RParen)?;
                        Ok(Expr::Poly(exps))
                    }
                    "e" => {
                        self.expect(Token::LParen)?;
                        self.expect(Token::LBrace)?;
                        let mut indices = vec![self.parse_arg_index(false)?];
                        while *self.peek() == Token::Comma {
                            self.advance();
                            indices.push(self.parse_arg_index(false)?);
                        }
                        self.expect(Token::RBrace)?;
                        self.expect(Token::RParen)?;
                        Ok(Expr::Idempotent(indices))
                    }
                    "adj" => {
                        self.expect(Token::LParen)?;
                        let inner = self.parse_expr()?;
                        self.expect(Token::RParen)?;
                        Ok(Expr::Adj(Box::new(inner)))
                    }
                    "antipode" => {
                        self.expect(Token::LParen)?;
                        let inner = self.parse_expr()?;
                        self.expect(Token::RParen)?;
                        Ok(Expr::Antipode(Box::new(inner)))
                    }
                    other => Err(Error::Parse(format!(
                        "syntax error at column {}: unknown name '{other}', expected \
                         one of unit, delta, char, poly, e, adj, antipode, i, zeta",
                        self.tokens[self.pos - 1].1
                    ))),
                }
            }
            _ => Err(self.error("a scalar, a call, or '('")),
        }
    }

    fn parse_scalar_lit(&mut self) -> Result<ScalarLit> {
        let negative = if *self.peek() == Token::Minus {
            self.advance();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Token::Number(text) => {
                self.advance();
                let num: i64 = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("number {text} out of range")))?;
                let num = if negative { -num } else { num };
                if *self.peek() == Token::Slash {
                    self.advance();
                    match self.peek().clone() {
                        Token::Number(den_text) => {
                            self.advance();
                            let den: i64 = den_text.parse().map_err(|_| {
                                Error::Parse(format!("number {den_text} out of range"))
                            })?;
                            if den == 0 {
                                return Err(Error::Parse("zero denominator".into()));
                            }
                            Ok(ScalarLit::Ratio(num, den))
                        }
                        _ => Err(self.error("a denominator")),
                    }
                } else {
                    Ok(ScalarLit::Ratio(num, 1))
                }
            }
            Token::Ident(name) if name == "i" && !negative => {
                self.advance();
                Ok(ScalarLit::I)
            }
            Token::Ident(name) if name == "zeta" && !negative => {
                self.advance();
                Ok(ScalarLit::Zeta)
            }
            _ => Err(self.error("a number")),
        }
    }

    fn parse_unsigned(&mut self) -> Result<u32> {
        match self.peek().clone() {
            Token::Number(text) => {
                self.advance();
                text.parse()
                    .map_err(|_| Error::Parse(format!("exponent {text} out of range")))
            }
            _ => Err(self.error("a nonnegative exponent")),
        }
    }

    /// A block index argument. `delta(...)` takes a bare comma-separated
    /// coordinate list; inside `e({...})` commas separate whole indices, so
    /// higher-rank lattice points use the tuple form `(a,b)`.
    fn parse_arg_index(&mut self, allow_bare_list: bool) -> Result<ArgIndex> {
        match self.peek().clone() {
            Token::Ident(name) => {
                self.advance();
                Ok(ArgIndex::Name(name))
            }
            Token::LParen => {
                self.advance();
                let mut coords = vec![self.parse_signed()?];
                while *self.peek() == Token::Comma {
                    self.advance();
                    coords.push(self.parse_signed()?);
                }
                self.expect(Token::RParen)?;
                Ok(ArgIndex::Numbers(coords))
            }
            Token::Number(_) | Token::Minus => {
                let mut coords = vec![self.parse_signed()?];
                if allow_bare_list {
                    while *self.peek() == Token::Comma {
                        self.advance();
                        coords.push(self.parse_signed()?);
                    }
                }
                Ok(ArgIndex::Numbers(coords))
            }
            _ => Err(self.error("a block index")),
        }
    }

    fn parse_signed(&mut self) -> Result<i64> {
        let negative = if *self.peek() == Token::Minus {
            self.advance();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Token::Number(text) => {
                self.advance();
                let n: i64 = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("number {text} out of range")))?;
                Ok(if negative { -n } else { n })
            }
            _ => Err(self.error("a number")),
        }
    }
}

/// Parse an expression into its abstract syntax tree.
pub fn parse(text: &str) -> Result<Expr> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.parse_expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.error("end of input, '+', '-', or '*'"));
    }
    Ok(expr)
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

fn resolve_scalar(field: &FieldDescriptor, lit: &ScalarLit) -> Result<Scalar> {
    match lit {
        ScalarLit::Ratio(n, d) => Ok(Scalar::from_ratio(*n, *d)),
        ScalarLit::I => match field {
            FieldDescriptor::Gaussian => Ok(Scalar::i()),
            FieldDescriptor::Cyclotomic { order } if order % 4 == 0 => {
                Ok(Scalar::root_power(*order, (*order as i64) / 4))
            }
            _ => Err(Error::UnsupportedSymbol(
                "'i' needs a Gaussian or 4-divisible cyclotomic field".into(),
            )),
        },
        ScalarLit::Zeta => match field {
            FieldDescriptor::Cyclotomic { order } => Ok(Scalar::primitive_root(*order)),
            _ => Err(Error::UnsupportedSymbol(
                "'zeta' needs a cyclotomic field".into(),
            )),
        },
    }
}

fn resolve_index(shape: &BlockShape, arg: &ArgIndex) -> Result<BlockIndex> {
    let index = match (shape, arg) {
        (BlockShape::Lattice { rank }, ArgIndex::Numbers(coords)) => {
            if coords.len() != *rank {
                return Err(Error::ShapeMismatch(format!(
                    "index has {} coordinates, lattice rank is {rank}",
                    coords.len()
                )));
            }
            BlockIndex::Lattice(coords.clone())
        }
        (BlockShape::Finite(_), ArgIndex::Numbers(coords)) => {
            // numeric labels of finite models
            let label = coords
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",");
            BlockIndex::named(label)
        }
        (_, ArgIndex::Name(name)) => BlockIndex::named(name.clone()),
    };
    if !shape.contains(&index) {
        return Err(Error::UnknownIndex(index.to_string()));
    }
    Ok(index)
}

/// Evaluate an expression over a model.
pub fn eval(model: &QuantumGroupModel, expr: &Expr) -> Result<Multiplier> {
    let shape = model.shape();
    match expr {
        Expr::Scalar(lit) => {
            let s = resolve_scalar(model.field(), lit)?;
            Ok(Multiplier::scalar_identity(shape.clone(), s))
        }
        Expr::Unit => Ok(Multiplier::one(shape.clone())),
        Expr::Delta(arg) => {
            let index = resolve_index(shape, arg)?;
            let e = FiniteElement::block_unit(shape, &index)?;
            Multiplier::embed(shape.clone(), &e)
        }
        Expr::Char(bases) => {
            let rank = shape.lattice_rank().ok_or_else(|| {
                Error::UnsupportedSymbol("char needs a lattice model".into())
            })?;
            if bases.len() != rank {
                return Err(Error::ShapeMismatch(format!(
                    "char has {} bases, lattice rank is {rank}",
                    bases.len()
                )));
            }
            let scalars: Vec<Scalar> = bases
                .iter()
                .map(|b| resolve_scalar(model.field(), b))
                .collect::<Result<_>>()?;
            Multiplier::character(shape.clone(), scalars)
        }
        Expr::Poly(exps) => {
            let rank = shape.lattice_rank().ok_or_else(|| {
                Error::UnsupportedSymbol("poly needs a lattice model".into())
            })?;
            if exps.len() != rank {
                return Err(Error::ShapeMismatch(format!(
                    "poly has {} exponents, lattice rank is {rank}",
                    exps.len()
                )));
            }
            let tail = ExpPoly::term(
                vec![Scalar::one(); rank],
                MultiPoly::monomial(rank, exps.clone(), Scalar::one()),
            );
            Multiplier::from_tail(shape.clone(), tail)
        }
        Expr::Idempotent(args) => {
            let indices: Vec<BlockIndex> = args
                .iter()
                .map(|a| resolve_index(shape, a))
                .collect::<Result<_>>()?;
            let window = Window::new(indices);
            let e = FiniteElement::central_idempotent(shape, &window)?;
            Multiplier::embed(shape.clone(), &e)
        }
        Expr::Adj(inner) => Ok(eval(model, inner)?.adjoint()),
        Expr::Antipode(inner) => model.antipode_multiplier(&eval(model, inner)?),
        Expr::Add(a, b) => Ok(eval(model, a)?.add(&eval(model, b)?)),
        Expr::Sub(a, b) => Ok(eval(model, a)?.sub(&eval(model, b)?)),
        Expr::Mul(a, b) => Ok(eval(model, a)?.mul(&eval(model, b)?)),
    }
}

/// Parse and evaluate in one step.
pub fn parse_element(model: &QuantumGroupModel, text: &str) -> Result<Multiplier> {
    eval(model, &parse(text)?)
}

// ---------------------------------------------------------------------------
// canonical printer
// ---------------------------------------------------------------------------

/// Print a multiplier as a grammar expression, when it is expressible:
/// lattice multipliers always are; finite-model multipliers must have
/// scalar blocks. The printed form parses back to the same canonical
/// multiplier.
pub fn print_expr(model: &QuantumGroupModel, x: &Multiplier) -> Option<String> {
    let shape = model.shape();
    let mut parts: Vec<String> = Vec::new();
    match &**shape {
        BlockShape::Lattice { rank } => {
            if let TailRule::ExpPoly(f) = x.tail() {
                for (base, poly) in f.terms() {
                    let poly_text = print_poly(poly)?;
                    let base_text: Vec<String> =
                        base.iter().map(print_scalar_lit).collect::<Option<_>>()?;
                    if base.iter().all(|b| b.is_one()) {
                        // char(1,...,1) is the unit
                        parts.push(format!("({poly_text})*unit"));
                    } else {
                        parts.push(format!(
                            "({poly_text})*char({})",
                            base_text.join(",")
                        ));
                    }
                }
            }
            let tail_fn = match x.tail() {
                TailRule::ExpPoly(f) => f.clone(),
                _ => ExpPoly::zero(*rank),
            };
            for (index, mat) in x.explicit() {
                let point = index.as_lattice()?;
                let dev = mat.at(0, 0).sub(&tail_fn.eval(point));
                let dev_text = print_scalar_lit(&dev)?;
                let coords: Vec<String> = point.iter().map(|c| c.to_string()).collect();
                parts.push(format!("({dev_text})*delta({})", coords.join(",")));
            }
        }
        BlockShape::Finite(_) => {
            for (index, mat) in x.explicit() {
                // expressible only when the block is a scalar multiple of
                // the identity
                let c = mat.at(0, 0).clone();
                if *mat != qbohr_core::Mat::scalar(mat.rows(), &c) {
                    return None;
                }
                let c_text = print_scalar_lit(&c)?;
                parts.push(format!("({c_text})*delta({index})"));
            }
        }
    }
    if parts.is_empty() {
        return Some("0*unit".to_string());
    }
    Some(parts.join(" + "))
}

fn print_poly(poly: &MultiPoly) -> Option<String> {
    let mut parts = Vec::new();
    for (exps, coeff) in poly.terms() {
        let c = print_scalar_lit(coeff)?;
        if exps.iter().all(|&e| e == 0) {
            parts.push(c);
        } else {
            let exp_text: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
            parts.push(format!("{c}*poly({})", exp_text.join(",")));
        }
    }
    if parts.is_empty() {
        return Some("0".into());
    }
    Some(parts.join(" + "))
}

/// Scalars expressible as literals: rationals always; i and zeta powers are
/// not reconstructed, so extension scalars print only when rational.
fn print_scalar_lit(s: &Scalar) -> Option<String> {
    let mut out = String::new();
    match s {
        Scalar::Rational(r) => {
            write!(out, "{r}").ok()?;
            Some(out)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qbohr_core::model::{builtin_model, lattice_model};

    fn z_model() -> std::sync::Arc<QuantumGroupModel> {
        lattice_model(1)
    }

    fn block_scalar(m: &Multiplier, n: i64) -> Scalar {
        m.block(&BlockIndex::int(n)).unwrap().at(0, 0).clone()
    }

    #[test]
    fn the_reference_expression_evaluates_blockwise() {
        let model = z_model();
        let m = parse_element(&model, "char(2) + 3*delta(0)").unwrap();
        assert_eq!(block_scalar(&m, 0), Scalar::from_int(4));
        assert_eq!(block_scalar(&m, 3), Scalar::from_int(8));
        assert_eq!(block_scalar(&m, -1), Scalar::from_ratio(1, 2));
    }

    #[test]
    fn delta_absorbs_characters() {
        let model = z_model();
        let m = parse_element(&model, "delta(0)*char(2)").unwrap();
        let d0 = parse_element(&model, "delta(0)").unwrap();
        assert_eq!(m, d0);
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let model = z_model();
        let err = parse_element(&model, "char(2").unwrap_err();
        let text = err.to_string();
        assert!(text.contains("column 7"), "{text}");
        let err2 = parse_element(&model, "delta(0) + ").unwrap_err();
        assert!(err2.to_string().contains("column 12"), "{err2}");
    }

    #[test]
    fn char_is_rejected_on_nonabelian_duals() {
        let model = builtin_model("dual(S3)").unwrap();
        let err = parse_element(&model, "char(2)").unwrap_err();
        assert!(matches!(err, Error::UnsupportedSymbol(_)));
        // but delta on a block label works
        let m = parse_element(&model, "delta(std)").unwrap();
        assert!(!m.is_zero());
    }

    #[test]
    fn windows_poly_adj_and_antipode() {
        let model = z_model();
        let e = parse_element(&model, "e({-1,0,1})").unwrap();
        assert_eq!(block_scalar(&e, 1), Scalar::one());
        assert_eq!(block_scalar(&e, 2), Scalar::zero());
        let p = parse_element(&model, "poly(1)*char(2)").unwrap();
        assert_eq!(block_scalar(&p, 3), Scalar::from_int(24));
        let k = parse_element(&model, "antipode(char(2))").unwrap();
        assert_eq!(block_scalar(&k, 1), Scalar::from_ratio(1, 2));
        let a = parse_element(&model, "adj(char(2))").unwrap();
        assert_eq!(a, parse_element(&model, "char(2)").unwrap());
    }

    #[test]
    fn rational_and_negative_literals() {
        let model = z_model();
        let m = parse_element(&model, "1/2*char(3) - 2*delta(1)").unwrap();
        assert_eq!(
            block_scalar(&m, 1),
            Scalar::from_ratio(3, 2).sub(&Scalar::from_int(2))
        );
        let n = parse_element(&model, "char(-2)").unwrap();
        assert_eq!(block_scalar(&n, 2), Scalar::from_int(4));
        assert_eq!(block_scalar(&n, 1), Scalar::from_int(-2));
    }

    #[test]
    fn lattice_rank_two_arguments() {
        let model = lattice_model(2);
        let m = parse_element(&model, "char(2,3) + delta(1,-1)").unwrap();
        assert_eq!(
            m.block(&BlockIndex::lattice(vec![2, 1]))
                .unwrap()
                .at(0, 0)
                .clone(),
            Scalar::from_int(12)
        );
        assert_eq!(
            m.block(&BlockIndex::lattice(vec![1, -1]))
                .unwrap()
                .at(0, 0)
                .clone(),
            Scalar::from_ratio(2, 3).add(&Scalar::one())
        );
    }

    #[test]
    fn zeta_on_cyclotomic_duals() {
        let model = builtin_model("dual(Z/3)").unwrap();
        let m = parse_element(&model, "zeta*delta(x1)").unwrap();
        let b = m.block(&BlockIndex::named("x1")).unwrap();
        assert_eq!(b.at(0, 0), &Scalar::primitive_root(3));
        assert!(parse_element(&model, "i").is_err());
    }

    #[test]
    fn printer_round_trips() {
        let model = z_model();
        for text in [
            "char(2) + 3*delta(0)",
            "poly(1)*char(2) - 1/2*unit",
            "delta(5)*char(2) + char(3)*char(3)",
            "antipode(char(2)) + adj(delta(-2))",
        ] {
            let x = parse_element(&model, text).unwrap();
            let printed = print_expr(&model, &x).unwrap();
            let reparsed = parse_element(&model, &printed).unwrap();
            assert_eq!(reparsed, x, "printed form: {printed}");
        }
        // finite models print central elements
        let s3 = builtin_model("C(S3)").unwrap();
        let x = parse_element(&s3, "delta(e) + 2*delta(r1)").unwrap();
        let printed = print_expr(&s3, &x).unwrap();
        assert_eq!(parse_element(&s3, &printed).unwrap(), x);
    }

    #[test]
    fn zero_prints_and_parses() {
        let model = z_model();
        let zero = parse_element(&model, "char(2) - char(2)").unwrap();
        assert!(zero.is_zero());
        let printed = print_expr(&model, &zero).unwrap();
        assert!(parse_element(&model, &printed).unwrap().is_zero());
    }
}
