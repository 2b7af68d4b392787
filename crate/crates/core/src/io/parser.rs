use num_traits::{One, Zero};

use super::lexer::{tokenize, Tok, Token};
use super::{CoeffTag, Directive, Input, ParseError, ParseErrorKind, RingSpec};
use crate::arith::{is_prime_u64, Integer, Rational};
use crate::coeff::Coeff;
use crate::poly::{Polynomial, PowerProduct, TermOrdering};

/// Largest exponent allowed on an indeterminate.
const MAX_VAR_EXPONENT: u32 = 10_000;
/// Largest exponent allowed on a number or parenthesized expression.
const MAX_EXPR_EXPONENT: u32 = 64;
/// Largest exponent any term may reach while evaluating.
const MAX_TERM_EXPONENT: u32 = 1_000_000;
/// Largest number of terms an intermediate polynomial may have.
const MAX_TERMS: usize = 100_000;

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Token>,
    pos: usize,
    names: Vec<String>,
    ord: TermOrdering,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(text: &'a str, names: Vec<String>, ord: TermOrdering) -> PResult<Self> {
        Ok(Parser { text, toks: tokenize(text)?, pos: 0, names, ord })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, tok: &Token, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError { kind, line: tok.line, column: tok.column, message: message.into() }
    }

    fn error(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        self.error_at(self.peek(), kind, message)
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Number(s) => format!("number {s}"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::Eof => "end of input".to_string(),
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<Token> {
        if self.peek().tok == Tok::Sym(c) {
            Ok(self.next())
        } else {
            Err(self.error(ParseErrorKind::Syntax, format!("expected '{c}', found {}", Self::describe(&self.peek().tok))))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_ident(&mut self) -> PResult<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => Err(self.error_at(&t, ParseErrorKind::Syntax, format!("expected a name, found {}", Self::describe(other)))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(()),
            other => Err(self.error_at(&t, ParseErrorKind::Syntax, format!("expected '{kw}', found {}", Self::describe(other)))),
        }
    }

    fn expect_number(&mut self) -> PResult<(Integer, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Number(s) => Ok((s.parse::<Integer>().expect("digits"), t.clone())),
            other => Err(self.error_at(&t, ParseErrorKind::Syntax, format!("expected a number, found {}", Self::describe(other)))),
        }
    }

    fn var_index(&self, name: &str, tok: &Token) -> PResult<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| self.error_at(tok, ParseErrorKind::UnknownIndeterminate, format!("'{name}' is not an indeterminate of the ring")))
    }

    // ---- ring declaration -------------------------------------------------

    fn ring(&mut self) -> PResult<RingSpec> {
        self.expect_keyword("ring")?;
        let (tag, tag_tok) = self.expect_ident()?;
        let coeffs = match tag.as_str() {
            "QQ" => CoeffTag::Rationals,
            "ZZ" if self.peek().tok == Tok::Sym('/') => {
                self.next();
                self.expect_sym('(')?;
                let (p, ptok) = self.expect_number()?;
                self.expect_sym(')')?;
                let p64 = u64::try_from(&p).ok().filter(|&p| p < 1 << 63 && is_prime_u64(p));
                match p64 {
                    Some(p) => CoeffTag::PrimeField(p),
                    None => {
                        return Err(self.error_at(&ptok, ParseErrorKind::NonPrimeModulus, format!("{p} is not a prime below 2^63")))
                    }
                }
            }
            "ZZ" => CoeffTag::Integers,
            other => return Err(self.error_at(&tag_tok, ParseErrorKind::Syntax, format!("unknown coefficient ring '{other}'"))),
        };
        self.expect_sym('[')?;
        let mut names = Vec::new();
        loop {
            let (name, tok) = self.expect_ident()?;
            if names.contains(&name) {
                return Err(self.error_at(&tok, ParseErrorKind::Syntax, format!("indeterminate '{name}' declared twice")));
            }
            if ["ring", "ideal", "option"].contains(&name.as_str()) {
                return Err(self.error_at(&tok, ParseErrorKind::Syntax, format!("'{name}' is reserved")));
            }
            names.push(name);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(']')?;
        self.names = names.clone();
        let ordering = if self.peek().tok == Tok::Sym(';') { TermOrdering::degrevlex(names.len()) } else { self.ordering()? };
        Ok(RingSpec { coeffs, names, ordering })
    }

    fn ordering(&mut self) -> PResult<TermOrdering> {
        let (kind, tok) = self.expect_ident()?;
        let n = self.names.len();
        match kind.as_str() {
            "lex" => Ok(TermOrdering::lex(n)),
            "deglex" => Ok(TermOrdering::deglex(n)),
            "degrevlex" => Ok(TermOrdering::degrevlex(n)),
            "elim" => {
                self.expect_sym('(')?;
                let mut block = Vec::new();
                loop {
                    let (name, t) = self.expect_ident()?;
                    block.push(self.var_index(&name, &t)?);
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.expect_sym(')')?;
                TermOrdering::elim(n, &block).map_err(|e| self.error_at(&tok, ParseErrorKind::Syntax, e.to_string()))
            }
            "matrix" => {
                self.expect_sym('(')?;
                let mut rows: Vec<Vec<Rational>> = Vec::new();
                loop {
                    let open = self.expect_sym('[')?;
                    let mut row = Vec::new();
                    loop {
                        row.push(self.signed_rational()?);
                        if !self.eat_sym(',') {
                            break;
                        }
                    }
                    self.expect_sym(']')?;
                    if row.len() != n {
                        return Err(self.error_at(
                            &open,
                            ParseErrorKind::Arity,
                            format!("weight row has {} entries, the ring has {n} indeterminates", row.len()),
                        ));
                    }
                    rows.push(row);
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.expect_sym(')')?;
                TermOrdering::matrix(&rows).map_err(|e| self.error_at(&tok, ParseErrorKind::Syntax, e.to_string()))
            }
            other => Err(self.error_at(&tok, ParseErrorKind::Syntax, format!("unknown term ordering '{other}'"))),
        }
    }

    fn signed_rational(&mut self) -> PResult<Rational> {
        let negative = self.eat_sym('-');
        let (num, _) = self.expect_number()?;
        let mut q = Rational::from_integer(num);
        if self.eat_sym('/') {
            let (den, t) = self.expect_number()?;
            if Zero::is_zero(&den) {
                return Err(self.error_at(&t, ParseErrorKind::Syntax, "division by zero"));
            }
            q /= Rational::from_integer(den);
        }
        Ok(if negative { -q } else { q })
    }

    // ---- expressions -------------------------------------------------------

    fn check_size(&self, f: &Polynomial<Rational>, tok: &Token) -> PResult<()> {
        if f.len() > MAX_TERMS {
            return Err(self.error_at(tok, ParseErrorKind::Syntax, format!("expression has more than {MAX_TERMS} terms")));
        }
        if f.terms().iter().any(|(t, _)| t.exponents().iter().any(|&e| e > MAX_TERM_EXPONENT)) {
            return Err(self.error_at(tok, ParseErrorKind::Syntax, format!("exponent exceeds {MAX_TERM_EXPONENT}")));
        }
        Ok(())
    }

    fn expr(&mut self, depth: usize) -> PResult<Polynomial<Rational>> {
        if depth > 200 {
            return Err(self.error(ParseErrorKind::Syntax, "expression nested too deeply"));
        }
        let n = self.names.len();
        let negative = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        let mut acc = self.term(depth)?;
        if negative {
            acc = acc.neg();
        }
        loop {
            if self.eat_sym('+') {
                let t = self.term(depth)?;
                acc = acc.add(&t, &self.ord);
            } else if self.eat_sym('-') {
                let t = self.term(depth)?;
                acc = acc.sub(&t, &self.ord);
            } else {
                break;
            }
            let tok = self.peek().clone();
            self.check_size(&acc, &tok)?;
        }
        debug_assert_eq!(acc.nvars(), n);
        Ok(acc)
    }

    fn term(&mut self, depth: usize) -> PResult<Polynomial<Rational>> {
        let (mut acc, mut last_number) = self.factor(depth)?;
        loop {
            let tok = self.peek().clone();
            let implicit = last_number && matches!(tok.tok, Tok::Ident(_) | Tok::Sym('('));
            if self.eat_sym('*') || implicit {
                let (f, is_number) = self.factor(depth)?;
                acc = acc.mul(&f, &self.ord);
                last_number = is_number;
            } else if self.eat_sym('/') {
                let (f, is_number) = self.factor(depth)?;
                let c = match f.terms() {
                    [(t, c)] if t.is_one() => c.clone(),
                    [] => return Err(self.error_at(&tok, ParseErrorKind::Syntax, "division by zero")),
                    _ => return Err(self.error_at(&tok, ParseErrorKind::Syntax, "division by a non-constant")),
                };
                acc = acc.scale(&(Rational::one() / c));
                last_number = is_number;
            } else {
                break;
            }
            self.check_size(&acc, &tok)?;
        }
        Ok(acc)
    }

    /// Returns the factor and whether it was a bare number literal.
    fn factor(&mut self, depth: usize) -> PResult<(Polynomial<Rational>, bool)> {
        let n = self.names.len();
        let tok = self.next();
        let (base, cap, is_number) = match &tok.tok {
            Tok::Number(s) => {
                let v: Integer = s.parse().expect("digits");
                (Polynomial::constant(n, Rational::from_integer(v)), MAX_EXPR_EXPONENT, true)
            }
            Tok::Ident(name) => {
                let i = self.var_index(name, &tok)?;
                (Polynomial::monomial(PowerProduct::var(n, i), Rational::one()), MAX_VAR_EXPONENT, false)
            }
            Tok::Sym('(') => {
                let e = self.expr(depth + 1)?;
                self.expect_sym(')')?;
                (e, MAX_EXPR_EXPONENT, false)
            }
            other => {
                return Err(self.error_at(&tok, ParseErrorKind::Syntax, format!("expected a number, name or '(', found {}", Self::describe(other))))
            }
        };
        if !self.eat_sym('^') {
            return Ok((base, is_number));
        }
        let (e, etok) = self.expect_number()?;
        let e = u32::try_from(&e).ok().filter(|&e| e <= cap).ok_or_else(|| {
            self.error_at(&etok, ParseErrorKind::Syntax, format!("exponent {e} exceeds the limit {cap} for this base"))
        })?;
        if base.is_monomial() {
            let (t, c) = base.leading().expect("monomial");
            let mut exps: Vec<u32> = t.exponents().to_vec();
            for x in &mut exps {
                *x = x.checked_mul(e).filter(|&v| v <= MAX_TERM_EXPONENT).ok_or_else(|| {
                    self.error_at(&etok, ParseErrorKind::Syntax, format!("exponent exceeds {MAX_TERM_EXPONENT}"))
                })?;
            }
            let mut c_pow = Rational::one();
            for _ in 0..e {
                c_pow = c_pow.mul_ref(c);
            }
            return Ok((Polynomial::monomial(PowerProduct::new(exps), c_pow), false));
        }
        if base.is_zero() {
            let v = if e == 0 { Rational::one() } else { Rational::zero() };
            return Ok((Polynomial::constant(n, v), false));
        }
        let mut acc = Polynomial::constant(n, Rational::one());
        for _ in 0..e {
            acc = acc.mul(&base, &self.ord);
            self.check_size(&acc, &etok)?;
        }
        Ok((acc, false))
    }

    fn expr_list(&mut self, close: char) -> PResult<Vec<Polynomial<Rational>>> {
        let mut out = Vec::new();
        if self.peek().tok == Tok::Sym(close) || self.peek().tok == Tok::Eof {
            return Ok(out);
        }
        loop {
            out.push(self.expr(0)?);
            if !self.eat_sym(',') {
                break;
            }
        }
        Ok(out)
    }

    fn check_coefficients(&self, coeffs: CoeffTag, polys: &[Polynomial<Rational>], tok: &Token) -> PResult<()> {
        for f in polys {
            match coeffs {
                CoeffTag::Rationals => {}
                CoeffTag::Integers if !f.is_integral() => {
                    return Err(self.error_at(tok, ParseErrorKind::Syntax, "non-integral coefficient in a ZZ ring"));
                }
                CoeffTag::PrimeField(p) if f.reduce_mod_p(p).is_err() => {
                    return Err(self.error_at(tok, ParseErrorKind::Syntax, format!("a denominator is divisible by {p}")));
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn input(&mut self) -> PResult<Input> {
        let ring = self.ring()?;
        self.ord = ring.ordering.clone();
        self.expect_sym(';')?;
        let mut ideals = Vec::new();
        let mut directives = Vec::new();
        loop {
            let tok = self.peek().clone();
            match &tok.tok {
                Tok::Eof => break,
                Tok::Ident(kw) if kw == "ideal" => {
                    self.next();
                    self.expect_sym('(')?;
                    let gens = self.expr_list(')')?;
                    self.expect_sym(')')?;
                    self.check_coefficients(ring.coeffs, &gens, &tok)?;
                    self.expect_sym(';')?;
                    ideals.push(gens);
                }
                Tok::Ident(kw) if kw == "option" => {
                    self.next();
                    let (key, _) = self.expect_ident()?;
                    self.expect_sym('=')?;
                    let start = self.peek().start;
                    while !matches!(self.peek().tok, Tok::Sym(';') | Tok::Eof) {
                        self.next();
                    }
                    let end = self.peek().start;
                    let value = self.text[start..end].split_whitespace().collect::<Vec<_>>().join(" ");
                    if value.is_empty() {
                        return Err(self.error(ParseErrorKind::Syntax, format!("option '{key}' has no value")));
                    }
                    self.expect_sym(';')?;
                    directives.push(Directive { key, value });
                }
                other => {
                    return Err(self.error_at(&tok, ParseErrorKind::Syntax, format!("expected 'ideal' or 'option', found {}", Self::describe(other))))
                }
            }
        }
        if ideals.is_empty() {
            return Err(self.error(ParseErrorKind::Syntax, "expected at least one ideal declaration"));
        }
        Ok(Input { ring, ideals, directives })
    }

    fn finish(&mut self) -> PResult<()> {
        if self.peek().tok != Tok::Eof {
            return Err(self.error(ParseErrorKind::Syntax, format!("unexpected {}", Self::describe(&self.peek().tok))));
        }
        Ok(())
    }
}

/// Parses a complete input file.
pub fn parse_input(text: &str) -> Result<Input, ParseError> {
    let mut p = Parser::new(text, Vec::new(), TermOrdering::degrevlex(0))?;
    p.input()
}

/// Parses a comma-separated list of polynomials over the given indeterminates.
pub fn parse_polys(text: &str, names: &[String], ord: &TermOrdering) -> Result<Vec<Polynomial<Rational>>, ParseError> {
    let mut p = Parser::new(text, names.to_vec(), ord.clone())?;
    let out = p.expr_list('\0')?;
    p.finish()?;
    Ok(out)
}

/// Parses a comma-separated list of power products such as `x*y^2, z`.
pub fn parse_monomials(text: &str, names: &[String]) -> Result<Vec<PowerProduct>, ParseError> {
    let ord = TermOrdering::degrevlex(names.len());
    let mut p = Parser::new(text, names.to_vec(), ord)?;
    let mut out = Vec::new();
    loop {
        let tok = p.peek().clone();
        let f = p.term(0)?;
        match f.terms() {
            [(t, c)] if One::is_one(c) => out.push(t.clone()),
            _ => return Err(p.error_at(&tok, ParseErrorKind::Syntax, "expected a power product")),
        }
        if !p.eat_sym(',') {
            break;
        }
    }
    p.finish()?;
    Ok(out)
}

/// Parses a term ordering such as `elim(x,y)` for a ring with the given indeterminates.
pub fn parse_ordering(text: &str, names: &[String]) -> Result<TermOrdering, ParseError> {
    let mut p = Parser::new(text, names.to_vec(), TermOrdering::degrevlex(names.len()))?;
    let ord = p.ordering()?;
    p.finish()?;
    Ok(ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    #[test]
    fn parses_ring_and_ideals() {
        let input = parse_input("ring QQ[x,y,z] degrevlex; ideal(x^2 - y, x*y + z + 1, z^2 + x);").unwrap();
        assert_eq!(input.ring.names, vec!["x", "y", "z"]);
        assert_eq!(input.ideals[0].len(), 3);
        assert_eq!(input.ideals[0][1].format(&input.ring.names), "x*y + z + 1");

        let input = parse_input("ring QQ[x] lex; ideal(2x + 4/3);").unwrap();
        let f = &input.ideals[0][0];
        assert_eq!(f.coeff_of(&PowerProduct::one(1)), Some(&rat(4, 3)));
        assert_eq!(f.format(&input.ring.names), "2*x + 4/3");

        let input = parse_input("ring QQ[x] lex; ideal();").unwrap();
        assert!(input.ideals[0].is_empty());
    }

    #[test]
    fn orderings_and_options() {
        let input = parse_input(
            "ring ZZ/(7)[x,y,s,t] elim(x,y); option tau = elim(s, t); option primes = 2,3 ; ideal(x - s^2);",
        )
        .unwrap();
        assert_eq!(input.ring.coeffs, CoeffTag::PrimeField(7));
        assert_eq!(input.directive("tau"), Some("elim(s, t)"));
        assert_eq!(input.directive("primes"), Some("2,3"));
        let m = parse_input("ring QQ[x,y] matrix([1,1],[0,-1]); ideal(x);").unwrap();
        assert_eq!(m.ring.ordering.rows(), &[vec![1, 1], vec![0, -1]]);
    }

    #[test]
    fn error_kinds_are_distinct() {
        let kind = |s: &str| parse_input(s).unwrap_err().kind;
        assert_eq!(kind("ring QQ[x] lex; ideal(x ? 1);"), ParseErrorKind::Lexical);
        assert_eq!(kind("ring QQ[x] lex; ideal(x +);"), ParseErrorKind::Syntax);
        assert_eq!(kind("ring QQ[x,y] matrix([1,0,0],[0,1]); ideal(x);"), ParseErrorKind::Arity);
        assert_eq!(kind("ring QQ[x] lex; ideal(y);"), ParseErrorKind::UnknownIndeterminate);
        assert_eq!(kind("ring ZZ/(6)[x] lex; ideal(x);"), ParseErrorKind::NonPrimeModulus);
        let e = parse_input("ring QQ[x] lex;\nideal(x,\n  z);").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
    }

    #[test]
    fn limits() {
        let kind = |s: &str| parse_input(s).unwrap_err().kind;
        assert!(parse_input("ring QQ[x] lex; ideal(x^10000);").is_ok());
        assert_eq!(kind("ring QQ[x] lex; ideal(x^10001);"), ParseErrorKind::Syntax);
        assert_eq!(kind("ring QQ[x] lex; ideal((x+1)^65);"), ParseErrorKind::Syntax);
        assert_eq!(kind("ring QQ[x] lex; ideal(x/0);"), ParseErrorKind::Syntax);
        assert_eq!(kind("ring QQ[x] lex; ideal(1/x);"), ParseErrorKind::Syntax);
        assert_eq!(kind("ring ZZ[x] lex; ideal(x/2);"), ParseErrorKind::Syntax);
    }

    #[test]
    fn helpers() {
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let ord = TermOrdering::degrevlex(2);
        let f = parse_polys("(x + y)^2, -x/2", &names, &ord).unwrap();
        assert_eq!(f[0].format(&names), "x^2 + 2*x*y + y^2");
        assert_eq!(f[1].format(&names), "-1/2*x");
        assert_eq!(parse_monomials("x*y^2, y", &names).unwrap().len(), 2);
        assert!(parse_monomials("2*x", &names).is_err());
        assert_eq!(parse_ordering("elim(y)", &names).unwrap(), TermOrdering::elim(2, &[1]).unwrap());
    }

    proptest! {
        #[test]
        fn never_panics(s in "\\PC{0,80}") {
            let _ = parse_input(&s);
        }

        #[test]
        fn never_panics_on_grammar_like_text(s in "(ring |QQ|ZZ|\\[x,y\\]|lex|;|ideal|\\(|\\)|x|y|\\^|[0-9]{1,3}|\\+|-|\\*|/|,| ){0,40}") {
            let _ = parse_input(&s);
        }
    }
}
