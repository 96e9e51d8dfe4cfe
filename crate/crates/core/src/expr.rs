//! Infix expressions over antiquaternions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := ('-' | '~') factor | primary
//! primary := Number | Basis | Ident ['(' expr (',' expr)* ')'] | '(' expr (',' expr)* ')'
//! ```
//!
//! `e1`..`e4` are basis elements, numbers embed as scalars, `~x` is the
//! conjugate and `a / b` is the right quotient `a * b^-1`. A parenthesized
//! list of four scalar expressions `(a1, a2, a3, a4)` builds an element
//! from its components, which is how results are printed.
//!
//! Functions: `conj`, `inv`, `pnorm`, `norm`, `ldiv(a, b)` (the `x` with
//! `b * x = a`), `rdiv(a, b)` (same as `a / b`) and `quat(a1, a2, a3, a4)`.

use std::fmt;

use thiserror::Error;

use crate::antiquaternion::AntiQuaternion;
use crate::error::Error as AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    Number(f64),
    /// 1-based basis index.
    Basis(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Tilde,
    LParen,
    RParen,
    Comma,
    Ident(String),
    End,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Number(v) => format!("number {v}"),
            TokenKind::Basis(k) => format!("e{k}"),
            TokenKind::Plus => "'+'".into(),
            TokenKind::Minus => "'-'".into(),
            TokenKind::Star => "'*'".into(),
            TokenKind::Slash => "'/'".into(),
            TokenKind::Tilde => "'~'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
            TokenKind::Comma => "','".into(),
            TokenKind::Ident(s) => format!("identifier `{s}`"),
            TokenKind::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// Character offset into the source.
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Conj,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    /// Right quotient.
    Div,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AstNode {
    Literal {
        value: AntiQuaternion,
        offset: usize,
    },
    Unary {
        op: UnaryOp,
        child: Box<AstNode>,
        offset: usize,
    },
    Binary {
        op: BinaryOp,
        left: Box<AstNode>,
        right: Box<AstNode>,
        offset: usize,
    },
    /// A bare identifier parses as a call with no arguments.
    Call {
        name: String,
        args: Vec<AstNode>,
        offset: usize,
    },
}

impl AstNode {
    pub fn offset(&self) -> usize {
        match self {
            AstNode::Literal { offset, .. }
            | AstNode::Unary { offset, .. }
            | AstNode::Binary { offset, .. }
            | AstNode::Call { offset, .. } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ExprError {
    #[error("unexpected character {found:?} at offset {offset}")]
    Lex { offset: usize, found: char },

    #[error("at offset {offset}: expected {}, found {found}", .expected.join(" or "))]
    Parse {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("at offset {offset}: {kind}")]
    Eval { offset: usize, kind: EvalErrorKind },
}

impl ExprError {
    pub fn offset(&self) -> usize {
        match self {
            ExprError::Lex { offset, .. }
            | ExprError::Parse { offset, .. }
            | ExprError::Eval { offset, .. } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum EvalErrorKind {
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("`{name}` takes {expected} argument(s), got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("component {index} of an element literal is not a scalar")]
    NonScalarComponent { index: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match c {
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            '*' => TokenKind::Star,
            '/' => TokenKind::Slash,
            '~' => TokenKind::Tilde,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ',' => TokenKind::Comma,
            c if c.is_ascii_digit()
                || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) =>
            {
                let end = scan_number(&chars, i);
                let text: String = chars[i..end].iter().collect();
                let value = text.parse::<f64>().expect("scanned number is valid");
                i = end;
                tokens.push(Token {
                    kind: TokenKind::Number(value),
                    lexeme: text,
                    position: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = i + 1;
                while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_')
                {
                    end += 1;
                }
                let text: String = chars[i..end].iter().collect();
                let kind = match text.as_str() {
                    "e1" => TokenKind::Basis(1),
                    "e2" => TokenKind::Basis(2),
                    "e3" => TokenKind::Basis(3),
                    "e4" => TokenKind::Basis(4),
                    _ => TokenKind::Ident(text.clone()),
                };
                i = end;
                tokens.push(Token {
                    kind,
                    lexeme: text,
                    position: start,
                });
                continue;
            }
            other => {
                return Err(ExprError::Lex {
                    offset: i,
                    found: other,
                })
            }
        };
        i += 1;
        tokens.push(Token {
            kind,
            lexeme: c.to_string(),
            position: start,
        });
    }
    tokens.push(Token {
        kind: TokenKind::End,
        lexeme: String::new(),
        position: chars.len(),
    });
    Ok(tokens)
}

/// Longest decimal literal starting at `i`: digits, optional fraction,
/// optional exponent (only taken when at least one exponent digit follows).
fn scan_number(chars: &[char], mut i: usize) -> usize {
    let digits = |mut j: usize| {
        while j < chars.len() && chars[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    i = digits(i);
    if chars.get(i) == Some(&'.') {
        i = digits(i + 1);
    }
    if matches!(chars.get(i), Some('e' | 'E')) {
        let mut j = i + 1;
        if matches!(chars.get(j), Some('+' | '-')) {
            j += 1;
        }
        if chars.get(j).is_some_and(char::is_ascii_digit) {
            i = digits(j);
        }
    }
    i
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &'a Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> &'a Token {
        let t = self.peek();
        if self.pos < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ExprError {
        let t = self.peek();
        ExprError::Parse {
            offset: t.position,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.kind.describe(),
        }
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<(), ExprError> {
        if self.peek().kind == kind {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn expr(&mut self) -> Result<AstNode, ExprError> {
        let mut left = self.term()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => BinaryOp::Add,
                TokenKind::Minus => BinaryOp::Sub,
                _ => return Ok(left),
            };
            let offset = self.advance().position;
            let right = self.term()?;
            left = AstNode::Binary {
                op,
                left: Box::new(left),
                right: Box::new(right),
                offset,
            };
        }
    }

    fn term(&mut self) -> Result<AstNode, ExprError> {
        let mut left = self.factor()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Star => BinaryOp::Mul,
                TokenKind::Slash => BinaryOp::Div,
                _ => return Ok(left),
            };
            let offset = self.advance().position;
            let right = self.factor()?;
            left = AstNode::Binary {
                op,
                left: Box::new(left),
                right: Box::new(right),
                offset,
            };
        }
    }

    fn factor(&mut self) -> Result<AstNode, ExprError> {
        let op = match self.peek().kind {
            TokenKind::Minus => UnaryOp::Neg,
            TokenKind::Tilde => UnaryOp::Conj,
            _ => return self.primary(),
        };
        let offset = self.advance().position;
        let child = self.factor()?;
        Ok(AstNode::Unary {
            op,
            child: Box::new(child),
            offset,
        })
    }

    fn primary(&mut self) -> Result<AstNode, ExprError> {
        const START: &[&str] = &["number", "basis element", "identifier", "'('", "'-'", "'~'"];
        let tok = self.peek();
        let offset = tok.position;
        match &tok.kind {
            TokenKind::Number(v) => {
                self.advance();
                Ok(AstNode::Literal {
                    value: AntiQuaternion::scalar(*v).map_err(|e| eval_err(offset, e.into()))?,
                    offset,
                })
            }
            TokenKind::Basis(k) => {
                self.advance();
                Ok(AstNode::Literal {
                    value: AntiQuaternion::basis(*k).expect("lexer emits e1..e4"),
                    offset,
                })
            }
            TokenKind::Ident(name) => {
                self.advance();
                let args = if self.peek().kind == TokenKind::LParen {
                    self.advance();
                    self.arguments()?
                } else {
                    Vec::new()
                };
                Ok(AstNode::Call {
                    name: name.clone(),
                    args,
                    offset,
                })
            }
            TokenKind::LParen => {
                self.advance();
                let mut items = self.arguments()?;
                if items.len() == 1 {
                    Ok(items.pop().unwrap())
                } else {
                    Ok(AstNode::Call {
                        name: "quat".into(),
                        args: items,
                        offset,
                    })
                }
            }
            _ => Err(self.error(START)),
        }
    }

    /// `expr (',' expr)* ')'`, after the opening parenthesis.
    fn arguments(&mut self) -> Result<Vec<AstNode>, ExprError> {
        let mut args = vec![self.expr()?];
        loop {
            match self.peek().kind {
                TokenKind::Comma => {
                    self.advance();
                    args.push(self.expr()?);
                }
                TokenKind::RParen => {
                    self.advance();
                    return Ok(args);
                }
                _ => return Err(self.error(&["','", "')'"])),
            }
        }
    }
}

pub fn parse(tokens: &[Token]) -> Result<AstNode, ExprError> {
    assert!(
        tokens.last().is_some_and(|t| t.kind == TokenKind::End),
        "token stream must end with End"
    );
    let mut p = Parser { tokens, pos: 0 };
    let ast = p.expr()?;
    p.expect(TokenKind::End, "end of input")?;
    Ok(ast)
}

fn eval_err(offset: usize, kind: EvalErrorKind) -> ExprError {
    ExprError::Eval { offset, kind }
}

fn finite(offset: usize, v: AntiQuaternion) -> Result<AntiQuaternion, ExprError> {
    AntiQuaternion::from_array(v.to_array()).map_err(|e| eval_err(offset, e.into()))
}

pub fn eval(ast: &AstNode) -> Result<AntiQuaternion, ExprError> {
    match ast {
        AstNode::Literal { value, .. } => Ok(*value),
        AstNode::Unary { op, child, offset } => {
            let v = eval(child)?;
            let r = match op {
                UnaryOp::Neg => -v,
                UnaryOp::Conj => v.conjugate(),
            };
            finite(*offset, r)
        }
        AstNode::Binary {
            op,
            left,
            right,
            offset,
        } => {
            let l = eval(left)?;
            let r = eval(right)?;
            let v = match op {
                BinaryOp::Add => l + r,
                BinaryOp::Sub => l - r,
                BinaryOp::Mul => l * r,
                BinaryOp::Div => l.div_right(r).map_err(|e| eval_err(*offset, e.into()))?,
            };
            finite(*offset, v)
        }
        AstNode::Call { name, args, offset } => {
            let values = args.iter().map(eval).collect::<Result<Vec<_>, _>>()?;
            let v = call(name, &values, *offset)?;
            finite(*offset, v)
        }
    }
}

const FUNCTIONS: &[(&str, usize)] = &[
    ("conj", 1),
    ("inv", 1),
    ("pnorm", 1),
    ("norm", 1),
    ("ldiv", 2),
    ("rdiv", 2),
    ("quat", 4),
];

/// Names accepted in calls.
pub fn function_names() -> impl Iterator<Item = &'static str> {
    FUNCTIONS.iter().map(|&(n, _)| n)
}

fn call(name: &str, args: &[AntiQuaternion], offset: usize) -> Result<AntiQuaternion, ExprError> {
    let expected = FUNCTIONS
        .iter()
        .find(|&&(n, _)| n == name)
        .map(|&(_, a)| a)
        .ok_or_else(|| eval_err(offset, EvalErrorKind::UnknownIdentifier(name.to_string())))?;
    if args.len() != expected {
        return Err(eval_err(
            offset,
            EvalErrorKind::Arity {
                name: name.to_string(),
                expected,
                got: args.len(),
            },
        ));
    }
    let algebra =
        |r: crate::error::Result<AntiQuaternion>| r.map_err(|e| eval_err(offset, e.into()));
    match name {
        "conj" => Ok(args[0].conjugate()),
        "inv" => algebra(args[0].inverse()),
        "pnorm" => algebra(AntiQuaternion::scalar(args[0].pseudonorm())),
        "norm" => algebra(AntiQuaternion::scalar(args[0].norm())),
        "ldiv" => algebra(args[0].div_left(args[1])),
        "rdiv" => algebra(args[0].div_right(args[1])),
        "quat" => {
            let mut c = [0.0; 4];
            for (i, a) in args.iter().enumerate() {
                if !a.is_scalar() {
                    return Err(eval_err(
                        offset,
                        EvalErrorKind::NonScalarComponent { index: i + 1 },
                    ));
                }
                c[i] = a.a1();
            }
            algebra(AntiQuaternion::from_array(c))
        }
        _ => unreachable!("registered function without implementation"),
    }
}

/// Tokenizes, parses and evaluates `src`.
pub fn evaluate(src: &str) -> Result<AntiQuaternion, ExprError> {
    let tokens = tokenize(src)?;
    let ast = parse(&tokens)?;
    eval(&ast)
}

/// Renders `err` with the offending source line and a caret under `offset`.
pub fn render_diagnostic(src: &str, err: &ExprError) -> String {
    let offset = err.offset();
    let line = src.replace(['\n', '\r', '\t'], " ");
    let caret = " ".repeat(offset.min(line.chars().count()));
    format!("error: {err}\n  {line}\n  {caret}^")
}

impl fmt::Display for AstNode {
    /// Fully parenthesized source form that parses back to the same tree
    /// (modulo offsets).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AstNode::Literal { value, .. } => write!(f, "{value}"),
            AstNode::Unary { op, child, .. } => {
                let sym = match op {
                    UnaryOp::Neg => '-',
                    UnaryOp::Conj => '~',
                };
                write!(f, "{sym}({child})")
            }
            AstNode::Binary {
                op, left, right, ..
            } => {
                let sym = match op {
                    BinaryOp::Add => '+',
                    BinaryOp::Sub => '-',
                    BinaryOp::Mul => '*',
                    BinaryOp::Div => '/',
                };
                write!(f, "({left} {sym} {right})")
            }
            AstNode::Call { name, args, .. } => {
                write!(f, "{name}")?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}
