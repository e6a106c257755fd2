use super::Term;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty term")]
    Empty,
    #[error("unknown token `{token}` at position {position}")]
    UnknownToken { position: usize, token: String },
    #[error("expected {expected} at position {position}, found {found}")]
    Unexpected {
        position: usize,
        expected: &'static str,
        found: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Arrow,
    DualArrow,
    Or,
    And,
    Not,
    Tilde,
    Plus,
    Box,
    Diamond,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        let s = match self {
            Tok::Ident(v) => return format!("identifier `{v}`"),
            Tok::Zero => "0",
            Tok::One => "1",
            Tok::Arrow => "->",
            Tok::DualArrow => "-<",
            Tok::Or => "|",
            Tok::And => "&",
            Tok::Not => "!",
            Tok::Tilde => "~",
            Tok::Plus => "+",
            Tok::Box => "[]",
            Tok::Diamond => "<>",
            Tok::LParen => "(",
            Tok::RParen => ")",
        };
        format!("`{s}`")
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = j + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((i, Tok::Ident(src[i..end].to_string())));
            continue;
        }
        let rest = &src[i..];
        let (tok, len) = match c {
            '0' if !next_is_digit(rest) => (Tok::Zero, 1),
            '1' if !next_is_digit(rest) => (Tok::One, 1),
            '|' => (Tok::Or, 1),
            '&' => (Tok::And, 1),
            '!' => (Tok::Not, 1),
            '~' => (Tok::Tilde, 1),
            '+' => (Tok::Plus, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            _ if rest.starts_with("->") => (Tok::Arrow, 2),
            _ if rest.starts_with("-<") => (Tok::DualArrow, 2),
            _ if rest.starts_with("[]") => (Tok::Box, 2),
            _ if rest.starts_with("<>") => (Tok::Diamond, 2),
            _ => {
                let token: String = rest
                    .chars()
                    .take_while(|ch| !ch.is_whitespace())
                    .take(3)
                    .collect();
                return Err(ParseError::UnknownToken { position: i, token });
            }
        };
        out.push((i, tok));
        for _ in 0..len {
            chars.next();
        }
    }
    Ok(out)
}

fn next_is_digit(rest: &str) -> bool {
    rest[1..].starts_with(|c: char| c.is_ascii_digit())
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn found(&self) -> String {
        self.peek().map_or_else(|| "end of input".to_string(), Tok::describe)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            position: self.position(),
            expected,
            found: self.found(),
        }
    }

    fn implication(&mut self) -> Result<Term, ParseError> {
        let lhs = self.disjunction()?;
        match self.peek() {
            Some(Tok::Arrow) => {
                self.pos += 1;
                Ok(Term::imp(lhs, self.implication()?))
            }
            Some(Tok::DualArrow) => {
                self.pos += 1;
                Ok(Term::dimpl(lhs, self.implication()?))
            }
            _ => Ok(lhs),
        }
    }

    fn disjunction(&mut self) -> Result<Term, ParseError> {
        let mut t = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            t = Term::join(t, self.conjunction()?);
        }
        Ok(t)
    }

    fn conjunction(&mut self) -> Result<Term, ParseError> {
        let mut t = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            t = Term::meet(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        let wrap: fn(Term) -> Term = match self.peek() {
            Some(Tok::Not) => Term::neg,
            Some(Tok::Tilde) => Term::invol,
            Some(Tok::Plus) => Term::dualneg,
            Some(Tok::Box) => Term::nec,
            Some(Tok::Diamond) => Term::poss,
            _ => return self.atom(),
        };
        self.pos += 1;
        Ok(wrap(self.unary()?))
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let t = match self.peek() {
            Some(Tok::Zero) => Term::Const0,
            Some(Tok::One) => Term::Const1,
            Some(Tok::Ident(v)) => Term::Var(v.clone()),
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.implication()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                t
            }
            _ => return Err(self.unexpected("a term")),
        };
        self.pos += 1;
        Ok(t)
    }
}

/// Parses a term in the concrete syntax described in the module docs.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let t = p.implication()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Term {
        Term::var(name)
    }

    #[test]
    fn examples() {
        assert_eq!(
            parse_term("[]x & []!x").unwrap(),
            Term::meet(Term::nec(v("x")), Term::nec(Term::neg(v("x"))))
        );
        assert_eq!(
            parse_term("x -> y -> z").unwrap(),
            Term::imp(v("x"), Term::imp(v("y"), v("z")))
        );
        assert_eq!(
            parse_term("x -< (y | 1)").unwrap(),
            Term::dimpl(v("x"), Term::join(v("y"), Term::Const1))
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_term("a | b & c -> d").unwrap(),
            Term::imp(Term::join(v("a"), Term::meet(v("b"), v("c"))), v("d"))
        );
        assert_eq!(
            parse_term("x -> y -< z").unwrap(),
            Term::imp(v("x"), Term::dimpl(v("y"), v("z")))
        );
        assert_eq!(
            parse_term("!~+<>[]x_1").unwrap(),
            Term::neg(Term::invol(Term::dualneg(Term::poss(Term::nec(v("x_1"))))))
        );
        assert_eq!(
            parse_term("a | b | c").unwrap(),
            Term::join(Term::join(v("a"), v("b")), v("c"))
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_term("  "), Err(ParseError::Empty));
        assert!(matches!(
            parse_term("x & $"),
            Err(ParseError::UnknownToken { position: 4, .. })
        ));
        assert!(matches!(
            parse_term("(x | y"),
            Err(ParseError::Unexpected { position: 6, expected: "`)`", .. })
        ));
        assert!(matches!(
            parse_term("x y"),
            Err(ParseError::Unexpected { position: 2, .. })
        ));
        assert!(matches!(
            parse_term("x & "),
            Err(ParseError::Unexpected { position: 4, .. })
        ));
        assert!(matches!(parse_term("12"), Err(ParseError::UnknownToken { position: 0, .. })));
    }
}
