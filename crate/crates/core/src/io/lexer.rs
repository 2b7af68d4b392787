use super::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
    /// Byte offset of the token in the source.
    pub start: usize,
}

const SYMBOLS: &str = ";,()[]+-*/^=";

/// Splits `text` into tokens; `//` and `#` start comments running to the end of the line.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&(i, c)) = chars.peek() {
        let (tl, tc) = (line, column);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            let (_, c) = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        if c.is_whitespace() {
            advance(&mut chars);
        } else if c == '#' || (c == '/' && text[i..].starts_with("//")) {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                advance(&mut chars);
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, c)) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                end = j + c.len_utf8();
                advance(&mut chars);
            }
            out.push(Token { tok: Tok::Ident(text[i..end].to_string()), line: tl, column: tc, start: i });
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                advance(&mut chars);
            }
            out.push(Token { tok: Tok::Number(text[i..end].to_string()), line: tl, column: tc, start: i });
        } else if SYMBOLS.contains(c) {
            advance(&mut chars);
            out.push(Token { tok: Tok::Sym(c), line: tl, column: tc, start: i });
        } else {
            return Err(ParseError {
                kind: ParseErrorKind::Lexical,
                line: tl,
                column: tc,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push(Token { tok: Tok::Eof, line, column, start: text.len() });
    Ok(out)
}
