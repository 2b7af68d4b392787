//! Text input format: a ring declaration, ideals and option directives.
//!
//! ```text
//! ring QQ[x,y,z] degrevlex;
//! ideal(x^2 - y, x*y + z + 1, z^2 + x);
//! option tau = lex;
//! ```

mod lexer;
mod parser;

use std::fmt;

use crate::arith::Rational;
use crate::poly::{Polynomial, PowerProduct, TermOrdering};

pub use parser::{parse_input, parse_monomials, parse_ordering, parse_polys};

/// Grammar summary shown with usage errors.
pub const GRAMMAR_HELP: &str = "\
input     := ring ';' { ideal ';' | option ';' }
ring      := 'ring' coeffs '[' name { ',' name } ']' [ order ]
coeffs    := 'QQ' | 'ZZ' | 'ZZ/(' prime ')'
order     := 'lex' | 'deglex' | 'degrevlex' | 'elim(' names ')' | 'matrix(' row { ',' row } ')'
row       := '[' int { ',' int } ']'
ideal     := 'ideal(' [ expr { ',' expr } ] ')'
option    := 'option' name '=' text
expr      := [ '+' | '-' ] term { ( '+' | '-' ) term }
term      := factor { [ '*' | '/' ] factor }     (implicit '*' only after a number)
factor    := ( number | name | '(' expr ')' ) [ '^' int ]
comments start with '//' or '#' and run to the end of the line";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Arity,
    UnknownIndeterminate,
    NonPrimeModulus,
}

impl ParseErrorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Arity => "arity error",
            ParseErrorKind::UnknownIndeterminate => "unknown indeterminate",
            ParseErrorKind::NonPrimeModulus => "non-prime modulus",
        }
    }
}

/// A parse failure with its 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {}: {message}", kind.as_str())]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffTag {
    Rationals,
    Integers,
    PrimeField(u64),
}

impl fmt::Display for CoeffTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffTag::Rationals => write!(f, "QQ"),
            CoeffTag::Integers => write!(f, "ZZ"),
            CoeffTag::PrimeField(p) => write!(f, "ZZ/({p})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RingSpec {
    pub coeffs: CoeffTag,
    pub names: Vec<String>,
    pub ordering: TermOrdering,
}

impl RingSpec {
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Directive {
    pub key: String,
    pub value: String,
}

/// A parsed input file. Polynomials are kept over ℚ, sorted under the ring ordering.
#[derive(Clone, Debug, PartialEq)]
pub struct Input {
    pub ring: RingSpec,
    pub ideals: Vec<Vec<Polynomial<Rational>>>,
    pub directives: Vec<Directive>,
}

impl Input {
    pub fn directive(&self, key: &str) -> Option<&str> {
        self.directives.iter().rev().find(|d| d.key == key).map(|d| d.value.as_str())
    }

    /// Canonical text form; parsing it yields an equal value.
    pub fn serialize(&self) -> String {
        let r = &self.ring;
        let mut out = format!("ring {}[{}] {};\n", r.coeffs, r.names.join(","), r.ordering.describe(&r.names));
        for d in &self.directives {
            out.push_str(&format!("option {} = {};\n", d.key, d.value));
        }
        for ideal in &self.ideals {
            out.push_str(&format!("ideal({});\n", format_list(ideal, &r.names, ", ")));
        }
        out
    }
}

/// Joins formatted polynomials.
pub fn format_list<C: crate::coeff::Coeff>(polys: &[Polynomial<C>], names: &[String], sep: &str) -> String {
    polys.iter().map(|f| f.format(names)).collect::<Vec<_>>().join(sep)
}

/// `[f1, f2, ...]`, the basis display used by the command line tool.
pub fn format_basis<C: crate::coeff::Coeff>(polys: &[Polynomial<C>], names: &[String]) -> String {
    format!("[{}]", format_list(polys, names, ", "))
}

/// `[t1, t2, ...]` for power products.
pub fn format_terms(terms: &[PowerProduct], names: &[String]) -> String {
    format!("[{}]", terms.iter().map(|t| t.format(names)).collect::<Vec<_>>().join(", "))
}
