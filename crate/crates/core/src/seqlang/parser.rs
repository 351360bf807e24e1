use std::collections::BTreeSet;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{BinOp, Expr, Guard, ParseError, SequenceExpr, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigUint),
    Word(String),
    Sym(&'static str),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Word(w) => format!("\"{w}\""),
            Tok::Sym(s) => format!("\"{s}\""),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

const SYMBOLS: [&str; 11] = [">=", "+", "-", "*", "/", "^", "(", ")", ":", ";", "<"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    'outer: while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        if c == b'#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let v = BigUint::parse_bytes(&bytes[start..pos], 10).expect("digits");
            out.push((start, Tok::Int(v)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            out.push((start, Tok::Word(text[start..pos].to_string())));
            continue;
        }
        for sym in SYMBOLS {
            if text[pos..].starts_with(sym) {
                out.push((pos, Tok::Sym(sym)));
                pos += sym.len();
                continue 'outer;
            }
        }
        let ch = text[pos..].chars().next().unwrap();
        return Err(ParseError::Syntax {
            offset: pos,
            found: format!("character {ch:?}"),
            expected: vec!["a token".to_string()],
        });
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    expected: BTreeSet<&'static str>,
    expected_at: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn expect_here(&mut self, what: &'static str) {
        let at = self.offset();
        if at != self.expected_at {
            self.expected.clear();
            self.expected_at = at;
        }
        self.expected.insert(what);
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat_sym(&mut self, sym: &'static str) -> bool {
        if *self.peek() == Tok::Sym(sym) {
            self.advance();
            true
        } else {
            self.expect_here(sym);
            false
        }
    }

    fn eat_word(&mut self, word: &'static str) -> bool {
        if matches!(self.peek(), Tok::Word(w) if w == word) {
            self.advance();
            true
        } else {
            self.expect_here(word);
            false
        }
    }

    fn error(&mut self) -> ParseError {
        let offset = self.offset();
        let expected = if offset == self.expected_at {
            self.expected.iter().map(|s| s.to_string()).collect()
        } else {
            Vec::new()
        };
        ParseError::Syntax {
            offset,
            found: self.peek().describe(),
            expected,
        }
    }

    fn int_literal(&mut self) -> Result<BigUint, ParseError> {
        if let Tok::Int(v) = self.peek() {
            let v = v.clone();
            self.advance();
            Ok(v)
        } else {
            self.expect_here("integer");
            Err(self.error())
        }
    }

    fn small_int<T: TryFrom<u64>>(&mut self) -> Result<T, ParseError> {
        let offset = self.offset();
        let v = self.int_literal()?;
        v.to_u64()
            .and_then(|x| T::try_from(x).ok())
            .ok_or_else(|| ParseError::Syntax {
                offset,
                found: format!("integer {v}"),
                expected: vec!["a smaller integer".to_string()],
            })
    }

    fn file(&mut self) -> Result<SequenceExpr, ParseError> {
        let mut defs = vec![self.defn()?];
        while self.eat_sym(";") {
            defs.push(self.defn()?);
        }
        if *self.peek() != Tok::Eof {
            self.expect_here("end of input");
            return Err(self.error());
        }
        if defs.len() == 1 && defs[0].0.is_none() {
            return Ok(SequenceExpr::Plain(defs.pop().unwrap().1));
        }
        Ok(SequenceExpr::Piecewise(
            defs.into_iter()
                .map(|(g, e)| (g.unwrap_or(Guard::Otherwise), e))
                .collect(),
        ))
    }

    fn defn(&mut self) -> Result<(Option<Guard>, Expr), ParseError> {
        if self.eat_word("case") {
            let guard = self.guard()?;
            if !self.eat_sym(":") {
                return Err(self.error());
            }
            Ok((Some(guard), self.expr()?))
        } else {
            Ok((None, self.expr()?))
        }
    }

    fn guard(&mut self) -> Result<Guard, ParseError> {
        if self.eat_word("otherwise") {
            return Ok(Guard::Otherwise);
        }
        if self.eat_word("i") {
            if self.eat_word("odd") {
                return Ok(Guard::IOdd);
            }
            if self.eat_word("even") {
                return Ok(Guard::IEven);
            }
            return Err(self.error());
        }
        if self.eat_word("n") {
            if self.eat_sym("<") {
                return Ok(Guard::NLess(self.small_int()?));
            }
            if self.eat_sym(">=") {
                return Ok(Guard::NAtLeast(self.small_int()?));
            }
            return Err(self.error());
        }
        Err(self.error())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat_sym("+") {
                BinOp::Add
            } else if self.eat_sym("-") {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::bin(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = if self.eat_sym("*") {
                BinOp::Mul
            } else if self.eat_sym("/") {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::bin(op, lhs, self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let negated = self.eat_sym("-");
        let mut e = self.atom()?;
        if self.eat_sym("^") {
            e = Expr::Pow(Box::new(e), self.small_int()?);
        }
        Ok(if negated { Expr::Neg(Box::new(e)) } else { e })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        if let Tok::Int(_) = self.peek() {
            return Ok(Expr::Int(self.int_literal()?));
        }
        if self.eat_word("n") {
            return Ok(Expr::Var(Var::N));
        }
        if self.eat_word("i") {
            return Ok(Expr::Var(Var::I));
        }
        if self.eat_sym("(") {
            let inner = self.expr()?;
            if !self.eat_sym(")") {
                return Err(self.error());
            }
            return Ok(inner);
        }
        self.expect_here("integer");
        Err(self.error())
    }
}

/// Positions at which some guard can change its outcome.
fn critical_positions(cases: &[(Guard, Expr)]) -> Vec<u64> {
    let mut ns: BTreeSet<u64> = BTreeSet::from([1]);
    for (g, _) in cases {
        if let Guard::NLess(k) | Guard::NAtLeast(k) = g {
            ns.insert(*k);
            ns.insert(k.saturating_sub(1).max(1));
            ns.insert(k.saturating_add(1));
        }
    }
    ns.into_iter().collect()
}

fn check_total(def: &SequenceExpr) -> Result<(), ParseError> {
    let SequenceExpr::Piecewise(cases) = def else {
        return Ok(());
    };
    for n in critical_positions(cases) {
        for i in [1i64, 2] {
            if !cases.iter().any(|(g, _)| g.matches(i, n)) {
                return Err(ParseError::NotTotal { i, n });
            }
        }
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<SequenceExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        expected: BTreeSet::new(),
        expected_at: usize::MAX,
    };
    let def = p.file()?;
    check_total(&def)?;
    Ok(def)
}

/// Reads and parses a `.seq` file.
pub fn parse_file(path: &Path) -> Result<SequenceExpr, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse(&text)
}
