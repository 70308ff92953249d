use thiserror::Error;

use super::named::{from_named, Named};
use super::term::Term;
use super::types::Type;

/// The surface grammar accepted by [`parse`] and [`parse_type`].
pub const GRAMMAR: &str = r#"term   := sum
sum    := app ("+" app)*
app    := prefix+                       (left-associative juxtaposition)
prefix := "eps" prefix | "D(" term ")" "*" prefix | atom
atom   := "0" | ident | "(" term ")" | "\" ident (":" type)? "." term
type   := btype ("->" type)?
btype  := ident | "(" type ")"
ident  := [a-zA-Z_][a-zA-Z0-9_']*       (excluding the keywords eps, D)
"#;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    BadChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("keyword `{0}` cannot be used as an identifier")]
    Keyword(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Backslash,
    Dot,
    Colon,
    Comma,
    LParen,
    RParen,
    Plus,
    Star,
    Arrow,
    Zero,
    Eps,
    D,
    Ident(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Backslash => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Zero => "`0`".into(),
            Tok::Eps => "`eps`".into(),
            Tok::D => "`D`".into(),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |tok: Tok, out: &mut Vec<Spanned>| {
            out.push(Spanned {
                tok,
                line: l0,
                col: c0,
            })
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '\\' => Some(Tok::Backslash),
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '0' => Some(Tok::Zero),
            _ => None,
        };
        if let Some(tok) = single {
            push(tok, &mut out);
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            push(Tok::Arrow, &mut out);
            i += 2;
            col += 2;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = match word.as_str() {
                "eps" => Tok::Eps,
                "D" => Tok::D,
                _ => Tok::Ident(word),
            };
            push(tok, &mut out);
            continue;
        }
        return Err(ParseError {
            line,
            col,
            kind: ParseErrorKind::BadChar(c),
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let s = &self.toks[self.pos];
        let kind = match &s.tok {
            Tok::Eps | Tok::D if expected == "identifier" => {
                ParseErrorKind::Keyword(if s.tok == Tok::Eps { "eps" } else { "D" }.into())
            }
            other => ParseErrorKind::Unexpected {
                expected: expected.into(),
                found: other.describe(),
            },
        };
        ParseError {
            line: s.line,
            col: s.col,
            kind,
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("identifier")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn term(&mut self) -> Result<Named, ParseError> {
        let mut acc = self.app()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.app()?;
            acc = Named::Sum {
                left: Box::new(acc),
                right: Box::new(rhs),
            };
        }
        Ok(acc)
    }

    fn starts_prefix(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Eps | Tok::D | Tok::Zero | Tok::Ident(_) | Tok::LParen | Tok::Backslash
        )
    }

    fn app(&mut self) -> Result<Named, ParseError> {
        let mut acc = self.prefix()?;
        while self.starts_prefix() {
            let arg = self.prefix()?;
            acc = Named::App {
                fun: Box::new(acc),
                arg: Box::new(arg),
            };
        }
        Ok(acc)
    }

    fn prefix(&mut self) -> Result<Named, ParseError> {
        match self.peek() {
            Tok::Eps => {
                self.bump();
                let body = self.prefix()?;
                Ok(Named::Eps {
                    body: Box::new(body),
                })
            }
            Tok::D => {
                self.bump();
                self.expect(Tok::LParen)?;
                let fun = self.term()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Star)?;
                let arg = self.prefix()?;
                Ok(Named::Dapp {
                    fun: Box::new(fun),
                    arg: Box::new(arg),
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Named, ParseError> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Named::Zero)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Named::Var { name })
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Backslash => {
                self.bump();
                let binder = self.ident()?;
                let annotation = if *self.peek() == Tok::Colon {
                    self.bump();
                    Some(self.ty()?)
                } else {
                    None
                };
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                Ok(Named::Lam {
                    binder,
                    annotation,
                    body: Box::new(body),
                })
            }
            _ => Err(self.error("a term")),
        }
    }

    fn ty(&mut self) -> Result<Type, ParseError> {
        let dom = match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Type::base(&name)
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                t
            }
            _ => return Err(self.error("a type")),
        };
        if *self.peek() == Tok::Arrow {
            self.bump();
            let cod = self.ty()?;
            Ok(Type::arrow(dom, cod))
        } else {
            Ok(dom)
        }
    }
}

pub fn parse_named(text: &str) -> Result<Named, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parse a term of the surface syntax.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    Ok(from_named(&parse_named(text)?))
}

pub fn parse_type(text: &str) -> Result<Type, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

/// Parse a typing context such as `x:a, f:a->b`; the empty string is the empty context.
pub fn parse_context(text: &str) -> Result<Vec<(String, Type)>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    if *p.peek() == Tok::End {
        return Ok(out);
    }
    loop {
        let name = p.ident()?;
        p.expect(Tok::Colon)?;
        let ty = p.ty()?;
        out.push((name, ty));
        if *p.peek() == Tok::Comma {
            p.bump();
        } else {
            break;
        }
    }
    p.finish()?;
    Ok(out)
}
