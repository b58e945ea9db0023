//! Lexer and parser for `.mcat` workspace files.
//!
//! ```text
//! // comments run to the end of the line
//! category V {
//!   objects: bot, a, b
//!   arrows:
//!     ia : bot -> a
//!     ib : bot -> b
//!   compose:
//! }
//! functor U : D2 -> V { obj: a => a, b => b }
//! class R in V { id_a, id_b }
//! gamma G in V { cone bot -> [ia, ib]; cone a -> [] }
//! diagram P : D2 -> V { obj: a => a, b => b }
//! ```
//!
//! Identities are implicit and named `id_<object>`; `g . f = h` reads
//! "g after f is h". Names are runs of alphanumerics and `_'()|@*+^~<!?#$%&/`,
//! or double-quoted strings with `\"` and `\\` escapes.

use std::fmt;

use thiserror::Error;

/// A 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: syntax error at `{token}`: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub token: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Name(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Dot,
    Eq,
    Arrow,
    FatArrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "{n}"),
            Tok::LBrace => write!(f, "{{"),
            Tok::RBrace => write!(f, "}}"),
            Tok::LBracket => write!(f, "["),
            Tok::RBracket => write!(f, "]"),
            Tok::Comma => write!(f, ","),
            Tok::Semi => write!(f, ";"),
            Tok::Colon => write!(f, ":"),
            Tok::Dot => write!(f, "."),
            Tok::Eq => write!(f, "="),
            Tok::Arrow => write!(f, "->"),
            Tok::FatArrow => write!(f, "=>"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

const NAME_PUNCT: &str = "_'()|@*+^~<!?#$%&/";

pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || NAME_PUNCT.contains(c)
}

/// A name that prints without quotes.
pub fn is_bare_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_name_char) && !s.contains("//")
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                {
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
            }
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let simple = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, pos });
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        if two == "->" || two == "=>" {
            let tok = if two == "->" {
                Tok::Arrow
            } else {
                Tok::FatArrow
            };
            out.push(Token { tok, pos });
            advance(&mut i, &mut line, &mut col, c);
            {
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            continue;
        }
        if c == '=' {
            out.push(Token { tok: Tok::Eq, pos });
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '"' {
            advance(&mut i, &mut line, &mut col, c);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => {
                        return Err(SyntaxError {
                            pos,
                            token: format!("\"{s}"),
                            message: "unterminated quoted name".into(),
                        })
                    }
                    Some('"') => {
                        advance(&mut i, &mut line, &mut col, '"');
                        break;
                    }
                    Some('\\') => {
                        let esc = chars.get(i + 1).copied();
                        match esc {
                            Some(e @ ('"' | '\\')) => {
                                s.push(e);
                                advance(&mut i, &mut line, &mut col, '\\');
                                advance(&mut i, &mut line, &mut col, e);
                            }
                            _ => {
                                return Err(SyntaxError {
                                    pos: Pos { line, col },
                                    token: format!(
                                        "\\{}",
                                        esc.map(String::from).unwrap_or_default()
                                    ),
                                    message: "unknown escape in quoted name".into(),
                                })
                            }
                        }
                    }
                    Some(&ch) => {
                        s.push(ch);
                        advance(&mut i, &mut line, &mut col, ch);
                    }
                }
            }
            if s.is_empty() {
                return Err(SyntaxError {
                    pos,
                    token: "\"\"".into(),
                    message: "empty name".into(),
                });
            }
            out.push(Token {
                tok: Tok::Name(s),
                pos,
            });
            continue;
        }
        if is_name_char(c) {
            let mut s = String::new();
            while i < chars.len() && is_name_char(chars[i]) {
                if chars[i] == '/' && chars.get(i + 1) == Some(&'/') {
                    break;
                }
                s.push(chars[i]);
                {
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
            }
            out.push(Token {
                tok: Tok::Name(s),
                pos,
            });
            continue;
        }
        return Err(SyntaxError {
            pos,
            token: c.to_string(),
            message: "unexpected character".into(),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

/// A name together with where it was written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub name: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryAst {
    pub name: Spanned,
    pub objects: Vec<Spanned>,
    pub arrows: Vec<(Spanned, Spanned, Spanned)>,
    pub compose: Vec<(Spanned, Spanned, Spanned)>,
}

/// Functor and diagram bodies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapAst {
    pub name: Spanned,
    pub source: Spanned,
    pub target: Spanned,
    pub obj: Vec<(Spanned, Spanned)>,
    pub mor: Vec<(Spanned, Spanned)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAst {
    pub name: Spanned,
    pub category: Spanned,
    pub members: Vec<Spanned>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaAst {
    pub name: Spanned,
    pub category: Spanned,
    pub cones: Vec<(Spanned, Vec<Spanned>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Category(CategoryAst),
    Functor(MapAst),
    Class(ClassAst),
    Gamma(GammaAst),
    Diagram(MapAst),
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> &Token {
        &self.toks[self.at.min(self.toks.len() - 1)]
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        let t = self.here();
        SyntaxError {
            pos: t.pos,
            token: t.tok.to_string(),
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Token {
        let t = self.here().clone();
        if self.at < self.toks.len() - 1 {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, SyntaxError> {
        if *self.peek(0) == tok {
            Ok(self.bump().pos)
        } else {
            Err(self.error(format!("expected `{tok}`")))
        }
    }

    fn name(&mut self, what: &str) -> Result<Spanned, SyntaxError> {
        match self.peek(0).clone() {
            Tok::Name(name) => {
                let pos = self.bump().pos;
                Ok(Spanned { name, pos })
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        match self.peek(0) {
            Tok::Name(n) if n == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.error(format!("expected `{kw}`"))),
        }
    }

    fn is_keyword(&self, k: usize, kw: &str) -> bool {
        matches!(self.peek(k), Tok::Name(n) if n == kw)
    }

    fn separator(&mut self) {
        if matches!(self.peek(0), Tok::Comma | Tok::Semi) {
            self.bump();
        }
    }

    fn blocks(&mut self) -> Result<Vec<Block>, SyntaxError> {
        let mut out = Vec::new();
        while *self.peek(0) != Tok::Eof {
            let kw = match self.peek(0) {
                Tok::Name(n) => n.clone(),
                _ => {
                    return Err(
                        self.error("expected `category`, `functor`, `class`, `gamma` or `diagram`")
                    )
                }
            };
            let block = match kw.as_str() {
                "category" => {
                    self.bump();
                    Block::Category(self.category()?)
                }
                "functor" => {
                    self.bump();
                    Block::Functor(self.map()?)
                }
                "diagram" => {
                    self.bump();
                    Block::Diagram(self.map()?)
                }
                "class" => {
                    self.bump();
                    Block::Class(self.class()?)
                }
                "gamma" => {
                    self.bump();
                    Block::Gamma(self.gamma()?)
                }
                _ => {
                    return Err(
                        self.error("expected `category`, `functor`, `class`, `gamma` or `diagram`")
                    )
                }
            };
            out.push(block);
        }
        Ok(out)
    }

    fn category(&mut self) -> Result<CategoryAst, SyntaxError> {
        let name = self.name("a category name")?;
        self.expect(Tok::LBrace)?;
        self.keyword("objects")?;
        self.expect(Tok::Colon)?;
        let mut objects = Vec::new();
        let section_next = |p: &Parser| {
            (p.is_keyword(0, "arrows") || p.is_keyword(0, "compose")) && *p.peek(1) == Tok::Colon
        };
        if !(*self.peek(0) == Tok::RBrace || section_next(self)) {
            objects.push(self.name("an object name")?);
            while *self.peek(0) == Tok::Comma {
                self.bump();
                objects.push(self.name("an object name")?);
            }
        }
        let mut arrows = Vec::new();
        if self.is_keyword(0, "arrows") && *self.peek(1) == Tok::Colon {
            self.bump();
            self.bump();
            // `compose :` opens the next section unless it is an arrow named compose
            while matches!(self.peek(0), Tok::Name(_))
                && !(self.is_keyword(0, "compose")
                    && *self.peek(1) == Tok::Colon
                    && *self.peek(3) != Tok::Arrow)
            {
                let a = self.name("an arrow name")?;
                self.expect(Tok::Colon)?;
                let d = self.name("a domain")?;
                self.expect(Tok::Arrow)?;
                let c = self.name("a codomain")?;
                self.separator();
                arrows.push((a, d, c));
            }
        }
        let mut compose = Vec::new();
        if self.is_keyword(0, "compose") && *self.peek(1) == Tok::Colon {
            self.bump();
            self.bump();
            while matches!(self.peek(0), Tok::Name(_)) {
                let g = self.name("an arrow name")?;
                self.expect(Tok::Dot)?;
                let f = self.name("an arrow name")?;
                self.expect(Tok::Eq)?;
                let h = self.name("an arrow name")?;
                self.separator();
                compose.push((g, f, h));
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(CategoryAst {
            name,
            objects,
            arrows,
            compose,
        })
    }

    fn map(&mut self) -> Result<MapAst, SyntaxError> {
        let name = self.name("a name")?;
        self.expect(Tok::Colon)?;
        let source = self.name("a source category")?;
        self.expect(Tok::Arrow)?;
        let target = self.name("a target category")?;
        self.expect(Tok::LBrace)?;
        let mut obj = Vec::new();
        let mut mor = Vec::new();
        for (kw, into) in [("obj", &mut obj), ("mor", &mut mor)] {
            if self.is_keyword(0, kw) && *self.peek(1) == Tok::Colon {
                self.bump();
                self.bump();
                while matches!(self.peek(0), Tok::Name(_)) && *self.peek(1) == Tok::FatArrow {
                    let x = self.name("a name")?;
                    self.expect(Tok::FatArrow)?;
                    let y = self.name("a name")?;
                    self.separator();
                    into.push((x, y));
                }
            }
        }
        if *self.peek(0) != Tok::RBrace {
            return Err(self.error("expected `obj:`, `mor:`, a mapping `x => y` or `}`"));
        }
        self.bump();
        Ok(MapAst {
            name,
            source,
            target,
            obj,
            mor,
        })
    }

    fn class(&mut self) -> Result<ClassAst, SyntaxError> {
        let name = self.name("a class name")?;
        self.keyword("in")?;
        let category = self.name("a category name")?;
        self.expect(Tok::LBrace)?;
        let mut members = Vec::new();
        if *self.peek(0) != Tok::RBrace {
            members.push(self.name("a morphism name")?);
            while *self.peek(0) == Tok::Comma {
                self.bump();
                members.push(self.name("a morphism name")?);
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(ClassAst {
            name,
            category,
            members,
        })
    }

    fn gamma(&mut self) -> Result<GammaAst, SyntaxError> {
        let name = self.name("a cone class name")?;
        self.keyword("in")?;
        let category = self.name("a category name")?;
        self.expect(Tok::LBrace)?;
        let mut cones = Vec::new();
        while *self.peek(0) != Tok::RBrace {
            self.keyword("cone")?;
            let vertex = self.name("a vertex")?;
            self.expect(Tok::Arrow)?;
            self.expect(Tok::LBracket)?;
            let mut legs = Vec::new();
            if *self.peek(0) != Tok::RBracket {
                legs.push(self.name("a leg")?);
                while *self.peek(0) == Tok::Comma {
                    self.bump();
                    legs.push(self.name("a leg")?);
                }
            }
            self.expect(Tok::RBracket)?;
            cones.push((vertex, legs));
            if *self.peek(0) == Tok::Semi {
                self.bump();
            } else if *self.peek(0) != Tok::RBrace {
                return Err(self.error("expected `;` or `}`"));
            }
        }
        self.bump();
        Ok(GammaAst {
            name,
            category,
            cones,
        })
    }
}

pub fn parse_blocks(text: &str) -> Result<Vec<Block>, SyntaxError> {
    let toks = tokenize(text)?;
    Parser { toks, at: 0 }.blocks()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let t = tokenize("category A {\n  objects: x // c\n}").unwrap();
        assert_eq!(t[0].tok, Tok::Name("category".into()));
        assert_eq!(t[3].pos, Pos { line: 2, col: 3 });
        assert_eq!(
            (&t[4].tok, t[4].pos),
            (&Tok::Colon, Pos { line: 2, col: 10 })
        );
        assert_eq!(t.last().unwrap().tok, Tok::Eof);
        let t = tokenize("g/q sq(f|g) \"a b\"").unwrap();
        assert_eq!(t[0].tok, Tok::Name("g/q".into()));
        assert_eq!(t[1].tok, Tok::Name("sq(f|g)".into()));
        assert_eq!(t[2].tok, Tok::Name("a b".into()));
    }

    #[test]
    fn bad_characters() {
        let e = tokenize("category A {\n  objects: x,\n  -\n}").unwrap_err();
        assert_eq!(e.pos, Pos { line: 3, col: 3 });
        assert_eq!(e.token, "-");
    }

    #[test]
    fn arrow_named_compose() {
        let b = parse_blocks("category A { objects: x arrows: compose : x -> x compose: compose . compose = compose }")
            .unwrap();
        let Block::Category(c) = &b[0] else { panic!() };
        assert_eq!(c.arrows.len(), 1);
        assert_eq!(c.compose.len(), 1);
    }

    #[test]
    fn gamma_blocks() {
        let b = parse_blocks("gamma G in C { cone k -> [a, b]; cone k -> [] }").unwrap();
        let Block::Gamma(g) = &b[0] else { panic!() };
        assert_eq!(g.cones.len(), 2);
        assert!(g.cones[1].1.is_empty());
    }

    #[test]
    fn missing_brace() {
        let e = parse_blocks("category A { objects: x").unwrap_err();
        assert_eq!(e.token, "end of input");
    }
}
