//! Knot expressions: parsing, rendering, normalization, and standard
//! diagrams.
//!
//! Grammar (whitespace-insensitive, one expression per line):
//!
//! ```text
//!   expr   := term ('#' term)*          connected sum
//!   term   := INT '*' term              n-fold connected sum
//!           | factor
//!   factor := atom '*'*                 postfix mirror
//!   atom   := '0_1'                     unknot
//!           | 'C' '(' ints ')'          2-bridge (Conway notation)
//!           | 'P' '(' ints ')'          pretzel
//!           | 'T' '(' int ',' int ')'   torus knot
//!           | 'B' '[' int ';' ints ']'  braid closure, signed generators
//!           | 'D' '(' expr [';' '-'] ')'   Whitehead double (clasp sign)
//!           | 'Sat' '(' expr ';' expr ')'  satellite (pattern; companion)
//!           | NAME                      table knot, e.g. 3_1, K11n39
//!           | '(' expr ')'
//! ```
//!
//! Normalization: double mirrors cancel, mirrors distribute over connected
//! sums, sums are flattened, trivial parts are dropped, and `n * K` expands
//! to an n-fold sum.

mod construct;

pub use construct::TANGLE_CONVENTION_DOC;

use crate::diagram::Diagram;
use crate::facts;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NotationError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("connected sum requires at least one part")]
    EmptySum,
    #[error("unknown named knot {0}")]
    UnknownName(String),
    #[error("no standard diagram: {0}")]
    Unsupported(String),
    #[error("{0} closes to a {1}-component link, not a knot")]
    NotAKnot(String, usize),
}

/// Abstract syntax naming a knot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Unknot,
    TwoBridge(Vec<i64>),
    Pretzel(Vec<i64>),
    Torus(i64, i64),
    BraidClosure { strands: usize, word: Vec<i64> },
    Named(String),
    Mirror(Box<KnotExpr>),
    ConnectedSum(Vec<KnotExpr>),
    WhiteheadDouble { companion: Box<KnotExpr>, clasp: i8 },
    Satellite { pattern: Box<KnotExpr>, companion: Box<KnotExpr> },
}

impl KnotExpr {
    pub fn mirror(self) -> KnotExpr {
        KnotExpr::Mirror(Box::new(self)).normalize()
    }

    pub fn sum(parts: Vec<KnotExpr>) -> KnotExpr {
        KnotExpr::ConnectedSum(parts).normalize()
    }

    pub fn repeated(self, n: usize) -> KnotExpr {
        KnotExpr::ConnectedSum(vec![self; n]).normalize()
    }

    pub fn double(self, clasp: i8) -> KnotExpr {
        KnotExpr::WhiteheadDouble {
            companion: Box::new(self),
            clasp,
        }
    }

    /// Apply the normalization rules bottom-up.
    pub fn normalize(self) -> KnotExpr {
        use KnotExpr::*;
        match self {
            Mirror(inner) => match inner.normalize() {
                Unknot => Unknot,
                Mirror(e) => *e,
                ConnectedSum(parts) => ConnectedSum(
                    parts
                        .into_iter()
                        .map(|p| Mirror(Box::new(p)).normalize())
                        .collect(),
                ),
                e => Mirror(Box::new(e)),
            },
            ConnectedSum(parts) => {
                let mut flat = Vec::new();
                for p in parts {
                    match p.normalize() {
                        Unknot => {}
                        ConnectedSum(inner) => flat.extend(inner),
                        e => flat.push(e),
                    }
                }
                match flat.len() {
                    0 => Unknot,
                    1 => flat.pop().unwrap(),
                    _ => ConnectedSum(flat),
                }
            }
            WhiteheadDouble { companion, clasp } => WhiteheadDouble {
                companion: Box::new(companion.normalize()),
                clasp,
            },
            Satellite { pattern, companion } => Satellite {
                pattern: Box::new(pattern.normalize()),
                companion: Box::new(companion.normalize()),
            },
            e => e,
        }
    }

    /// Construct the standard diagram of this expression.
    pub fn standard_diagram(&self) -> Result<Diagram, NotationError> {
        construct::standard_diagram(self)
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Render an expression in the published grammar; inverse of [`parse`] on
/// normalized expressions.
pub fn render(e: &KnotExpr) -> String {
    use KnotExpr::*;
    match e {
        Unknot => "0_1".to_string(),
        TwoBridge(entries) => format!("C({})", join_ints(entries)),
        Pretzel(entries) => format!("P({})", join_ints(entries)),
        Torus(p, q) => format!("T({p},{q})"),
        BraidClosure { strands, word } => format!("B[{strands};{}]", join_ints(word)),
        Named(id) => id.clone(),
        Mirror(inner) => format!("{}*", render(inner)),
        ConnectedSum(parts) => {
            // Compress maximal runs of equal parts back into `n * K` sugar.
            let mut pieces: Vec<String> = Vec::new();
            let mut i = 0;
            while i < parts.len() {
                let mut j = i;
                while j < parts.len() && parts[j] == parts[i] {
                    j += 1;
                }
                let run = j - i;
                let part = render(&parts[i]);
                if run == 1 {
                    pieces.push(part);
                } else {
                    pieces.push(format!("{run} * {part}"));
                }
                i = j;
            }
            pieces.join(" # ")
        }
        WhiteheadDouble { companion, clasp } => {
            if *clasp >= 0 {
                format!("D({})", render(companion))
            } else {
                format!("D({}; -)", render(companion))
            }
        }
        Satellite { pattern, companion } => {
            format!("Sat({}; {})", render(pattern), render(companion))
        }
    }
}

fn join_ints(v: &[i64]) -> String {
    v.iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parse a knot expression. The result is normalized.
pub fn parse(text: &str) -> Result<KnotExpr, NotationError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e.normalize())
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Name(String),
    Word(String), // C, P, T, B, D, Sat
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Star,
    Hash,
    Minus,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, NotationError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'[' => {
                out.push((i, Tok::LBracket));
                i += 1;
            }
            b']' => {
                out.push((i, Tok::RBracket));
                i += 1;
            }
            b',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            b';' => {
                out.push((i, Tok::Semi));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'#' => {
                out.push((i, Tok::Hash));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // Digits followed by `_digits` form a table name like 3_1.
                if i < bytes.len() && bytes[i] == b'_' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    out.push((start, Tok::Name(text[start..i].to_string())));
                } else {
                    let n: i64 = text[start..i].parse().map_err(|_| NotationError::Syntax {
                        position: start,
                        message: "integer out of range".into(),
                    })?;
                    out.push((start, Tok::Int(n)));
                }
            }
            b'A'..=b'Z' | b'a'..=b'z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                match word {
                    "C" | "P" | "T" | "B" | "D" | "Sat" => {
                        out.push((start, Tok::Word(word.to_string())))
                    }
                    _ => out.push((start, Tok::Name(word.to_string()))),
                }
            }
            _ => {
                return Err(NotationError::Syntax {
                    position: i,
                    message: format!("unexpected character {:?}", b as char),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn err(&self, message: &str) -> NotationError {
        let position = self
            .tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(usize::MAX);
        NotationError::Syntax {
            position,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), NotationError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(what))
        }
    }

    fn expr(&mut self) -> Result<KnotExpr, NotationError> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some(&Tok::Hash) {
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            KnotExpr::ConnectedSum(parts)
        })
    }

    fn term(&mut self) -> Result<KnotExpr, NotationError> {
        if let Some(Tok::Int(n)) = self.peek() {
            let n = *n;
            // `INT * term` is n-fold repetition.
            if self.tokens.get(self.pos + 1).map(|(_, t)| t) == Some(&Tok::Star) {
                self.pos += 2;
                let inner = self.term()?;
                return Ok(KnotExpr::ConnectedSum(vec![inner; n as usize]));
            }
            return Err(self.err("bare integer is not a knot"));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<KnotExpr, NotationError> {
        let mut e = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            e = KnotExpr::Mirror(Box::new(e));
        }
        Ok(e)
    }

    fn int(&mut self) -> Result<i64, NotationError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Int(n)) => Ok(if neg { -n } else { n }),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err("expected an integer"))
            }
        }
    }

    fn int_list(&mut self, terminator: Tok, what: &str) -> Result<Vec<i64>, NotationError> {
        let mut out = vec![self.int()?];
        loop {
            match self.peek() {
                Some(Tok::Comma) => {
                    self.pos += 1;
                    out.push(self.int()?);
                }
                Some(t) if *t == terminator => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err(what)),
            }
        }
    }

    fn atom(&mut self) -> Result<KnotExpr, NotationError> {
        match self.next() {
            Some(Tok::Word(w)) => match w.as_str() {
                "C" => {
                    self.expect(Tok::LParen, "expected ( after C")?;
                    let entries = self.int_list(Tok::RParen, "expected , or ) in C(...)")?;
                    Ok(KnotExpr::TwoBridge(entries))
                }
                "P" => {
                    self.expect(Tok::LParen, "expected ( after P")?;
                    let entries = self.int_list(Tok::RParen, "expected , or ) in P(...)")?;
                    Ok(KnotExpr::Pretzel(entries))
                }
                "T" => {
                    self.expect(Tok::LParen, "expected ( after T")?;
                    let p = self.int()?;
                    self.expect(Tok::Comma, "expected , in T(p,q)")?;
                    let q = self.int()?;
                    self.expect(Tok::RParen, "expected ) in T(p,q)")?;
                    Ok(KnotExpr::Torus(p, q))
                }
                "B" => {
                    self.expect(Tok::LBracket, "expected [ after B")?;
                    let strands = self.int()?;
                    if strands < 1 {
                        return Err(self.err("braid needs at least one strand"));
                    }
                    self.expect(Tok::Semi, "expected ; in B[s;...]")?;
                    let word = self.int_list(Tok::RBracket, "expected , or ] in B[...]")?;
                    Ok(KnotExpr::BraidClosure {
                        strands: strands as usize,
                        word,
                    })
                }
                "D" => {
                    self.expect(Tok::LParen, "expected ( after D")?;
                    let companion = self.expr()?;
                    let clasp = if self.peek() == Some(&Tok::Semi) {
                        self.pos += 1;
                        match self.next() {
                            Some(Tok::Minus) => -1,
                            _ => return Err(self.err("expected - after ; in D(...)")),
                        }
                    } else {
                        1
                    };
                    self.expect(Tok::RParen, "expected ) in D(...)")?;
                    Ok(KnotExpr::WhiteheadDouble {
                        companion: Box::new(companion),
                        clasp,
                    })
                }
                "Sat" => {
                    self.expect(Tok::LParen, "expected ( after Sat")?;
                    let pattern = self.expr()?;
                    self.expect(Tok::Semi, "expected ; in Sat(pattern; companion)")?;
                    let companion = self.expr()?;
                    self.expect(Tok::RParen, "expected ) in Sat(...)")?;
                    Ok(KnotExpr::Satellite {
                        pattern: Box::new(pattern),
                        companion: Box::new(companion),
                    })
                }
                _ => unreachable!("lexer only emits known words"),
            },
            Some(Tok::Name(id)) => {
                if id == "0_1" {
                    Ok(KnotExpr::Unknot)
                } else {
                    Ok(KnotExpr::Named(id))
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "expected closing )")?;
                Ok(e)
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err("expected a knot expression"))
            }
        }
    }
}

/// Resolve a named knot to its stored construction.
pub fn named_expr(id: &str) -> Result<KnotExpr, NotationError> {
    facts::named_recipe(id)
        .map(|r| r.expr())
        .ok_or_else(|| NotationError::UnknownName(id.to_string()))
}

/// Double an explicit companion diagram; test hook for pinning the cable
/// and compensation wiring on diagrams that no expression produces.
#[doc(hidden)]
pub fn construct_double_for_tests(companion: &Diagram, clasp: i8) -> Diagram {
    construct::whitehead_double_diagram(companion, clasp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(text: &str) -> KnotExpr {
        let e = parse(text).unwrap();
        let rendered = render(&e);
        let e2 = parse(&rendered).unwrap();
        assert_eq!(e, e2, "render/parse round trip of {text} via {rendered}");
        e
    }

    #[test]
    fn parse_examples() {
        assert_eq!(roundtrip("C(2,2)"), KnotExpr::TwoBridge(vec![2, 2]));
        assert_eq!(roundtrip("0_1"), KnotExpr::Unknot);
        let e = roundtrip("3_1* # 3_1*");
        assert_eq!(
            e,
            KnotExpr::ConnectedSum(vec![
                KnotExpr::Mirror(Box::new(KnotExpr::Named("3_1".into()))),
                KnotExpr::Mirror(Box::new(KnotExpr::Named("3_1".into()))),
            ])
        );
        assert_eq!(roundtrip("P(3,-2,3)"), KnotExpr::Pretzel(vec![3, -2, 3]));
        assert_eq!(
            roundtrip("B[3;1,1,2,-1,2]"),
            KnotExpr::BraidClosure {
                strands: 3,
                word: vec![1, 1, 2, -1, 2]
            }
        );
        roundtrip("T(2,5)");
        roundtrip("D(C(3))");
        roundtrip("D(C(3); -)");
        roundtrip("Sat(10_133*; 2 * 3_1)");
        roundtrip("K11n39");
    }

    #[test]
    fn repetition_expands() {
        let e = parse("3 * 3_1").unwrap();
        assert_eq!(
            e,
            KnotExpr::ConnectedSum(vec![KnotExpr::Named("3_1".into()); 3])
        );
        // Sugar is regenerated when rendering.
        assert_eq!(render(&e), "3 * 3_1");
        // 1 * K collapses, 0 * K is the unknot.
        assert_eq!(parse("1 * 4_1").unwrap(), KnotExpr::Named("4_1".into()));
        assert_eq!(parse("0 * 4_1").unwrap(), KnotExpr::Unknot);
    }

    #[test]
    fn mirror_normalization() {
        assert_eq!(parse("4_1**").unwrap(), KnotExpr::Named("4_1".into()));
        assert_eq!(parse("0_1*").unwrap(), KnotExpr::Unknot);
        // Mirrors distribute over sums.
        let e = parse("(3_1 # 4_1)*").unwrap();
        assert_eq!(
            e,
            KnotExpr::ConnectedSum(vec![
                KnotExpr::Mirror(Box::new(KnotExpr::Named("3_1".into()))),
                KnotExpr::Mirror(Box::new(KnotExpr::Named("4_1".into()))),
            ])
        );
    }

    #[test]
    fn sums_flatten_and_drop_trivial_parts() {
        let e = parse("3_1 # 0_1 # (4_1 # 5_2)").unwrap();
        assert_eq!(
            e,
            KnotExpr::ConnectedSum(vec![
                KnotExpr::Named("3_1".into()),
                KnotExpr::Named("4_1".into()),
                KnotExpr::Named("5_2".into()),
            ])
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("C(2,,3)") {
            Err(NotationError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse("").is_err());
        assert!(parse("C(2) trailing").is_err());
        assert!(parse("2 3_1").is_err());
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse("C( 2 , 3 )").unwrap(), parse("C(2,3)").unwrap());
        assert_eq!(parse("2*3_1#4_1").unwrap(), parse("2 * 3_1 # 4_1").unwrap());
    }
}
