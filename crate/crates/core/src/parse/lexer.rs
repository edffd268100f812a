use num_bigint::BigInt;

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    X,
    N,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: usize,
}

pub fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(i) => format!("integer {i}"),
        Tok::X => "`X`".into(),
        Tok::N => "`n`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, pos });
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v: BigInt = text[pos..i].parse().expect("ascii digits");
            out.push(Token { tok: Tok::Int(v), pos });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let tok = match &text[pos..i] {
                "X" => Tok::X,
                "n" => Tok::N,
                other => {
                    return Err(ParseError::syntax(pos, format!("unknown identifier `{other}`")));
                }
            };
            out.push(Token { tok, pos });
        } else {
            let ch = text[pos..].chars().next().unwrap();
            return Err(ParseError::syntax(pos, format!("unexpected character `{ch}`")));
        }
    }
    out.push(Token { tok: Tok::End, pos: text.len() });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_byte_offsets() {
        let toks = tokenize(" 12 *X").unwrap();
        assert_eq!(toks[0].pos, 1);
        assert_eq!(toks[1].pos, 4);
        assert_eq!(toks[2].pos, 5);
        assert_eq!(toks[3].tok, Tok::End);
    }

    #[test]
    fn rejects_unknown_identifier() {
        let err = tokenize("2^n * x(2^n)").unwrap_err();
        assert_eq!(err.position, 6);
    }

    #[test]
    fn rejects_decimal_point() {
        assert_eq!(tokenize("1.5").unwrap_err().position, 1);
    }
}
