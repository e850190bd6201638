use std::fmt;

use thiserror::Error;

use super::{multiply, Letter, PauliOp, MAX_QUBITS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnexpectedChar(char),
    MissingIndex,
    BadIndex,
    TooManyQubits,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => f.write_str("empty Pauli string"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::MissingIndex => f.write_str("letter without qubit index"),
            ParseErrorKind::BadIndex => f.write_str("qubit index must be between 1 and 64"),
            ParseErrorKind::TooManyQubits => write!(f, "more than {MAX_QUBITS} qubits"),
        }
    }
}

/// Parse failure; `position` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

fn err(position: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { position, kind }
}

fn letter(c: char) -> Option<Letter> {
    match c {
        'I' => Some(Letter::I),
        'X' => Some(Letter::X),
        'Y' => Some(Letter::Y),
        'Z' => Some(Letter::Z),
        _ => None,
    }
}

/// Parses a Pauli string.
///
/// Accepted forms, each with an optional prefix `+`, `-`, `i`, `+i`, `-i`:
/// compact (`XZZ`, one letter per qubit) and indexed (`X1*Z2*Z3`, qubits
/// numbered from 1, the qubit count being the largest index). Indexed factors
/// are multiplied left to right, so `X1*Z1` is `X·Z`.
pub fn parse_pauli(text: &str) -> Result<PauliOp, ParseError> {
    let start = text.len() - text.trim_start().len();
    let body_all = text.trim();
    if body_all.is_empty() {
        return Err(err(start, ParseErrorKind::Empty));
    }
    let (phase, skip) = if let Some(r) = body_all.strip_prefix("-i") {
        (3u8, body_all.len() - r.len())
    } else if let Some(r) = body_all.strip_prefix("+i") {
        (1, body_all.len() - r.len())
    } else if let Some(r) = body_all.strip_prefix('i') {
        (1, body_all.len() - r.len())
    } else if let Some(r) = body_all.strip_prefix('-') {
        (2, body_all.len() - r.len())
    } else if let Some(r) = body_all.strip_prefix('+') {
        (0, body_all.len() - r.len())
    } else {
        (0, 0)
    };
    let offset = start + skip;
    let body = &body_all[skip..];
    if body.is_empty() {
        return Err(err(offset, ParseErrorKind::Empty));
    }
    let op = if body.bytes().any(|b| b.is_ascii_digit()) {
        parse_indexed(body, offset)?
    } else {
        parse_compact(body, offset)?
    };
    Ok(op.with_phase(op.phase() + phase))
}

fn parse_compact(body: &str, offset: usize) -> Result<PauliOp, ParseError> {
    let mut letters = Vec::new();
    for (i, c) in body.char_indices() {
        letters.push(letter(c).ok_or_else(|| err(offset + i, ParseErrorKind::UnexpectedChar(c)))?);
    }
    if letters.len() > MAX_QUBITS {
        return Err(err(offset + MAX_QUBITS, ParseErrorKind::TooManyQubits));
    }
    Ok(PauliOp::from_letters(&letters, 1).expect("length checked"))
}

fn parse_indexed(body: &str, offset: usize) -> Result<PauliOp, ParseError> {
    let mut factors: Vec<(usize, Letter)> = Vec::new();
    let bytes = body.as_bytes();
    let mut i = 0;
    loop {
        let c = body[i..]
            .chars()
            .next()
            .ok_or_else(|| err(offset + i, ParseErrorKind::Empty))?;
        let l = letter(c).ok_or_else(|| err(offset + i, ParseErrorKind::UnexpectedChar(c)))?;
        i += c.len_utf8();
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if digits_start == i {
            return Err(err(offset + digits_start, ParseErrorKind::MissingIndex));
        }
        let idx: usize = body[digits_start..i]
            .parse()
            .map_err(|_| err(offset + digits_start, ParseErrorKind::BadIndex))?;
        if idx == 0 || idx > MAX_QUBITS {
            return Err(err(offset + digits_start, ParseErrorKind::BadIndex));
        }
        factors.push((idx - 1, l));
        if i == bytes.len() {
            break;
        }
        let sep = body[i..].chars().next().expect("not at end");
        if sep != '*' {
            return Err(err(offset + i, ParseErrorKind::UnexpectedChar(sep)));
        }
        i += 1;
    }
    let n = factors
        .iter()
        .map(|(q, _)| q + 1)
        .max()
        .expect("at least one factor");
    let mut acc = PauliOp::identity(n);
    for (q, l) in factors {
        acc = multiply(&acc, &PauliOp::single(n, q, l)).expect("same arity");
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_encoding() {
        let p = parse_pauli("XZZ").unwrap();
        assert_eq!(p.qubits(), 3);
        // qubit 1 is bit 0
        assert_eq!((p.xbits(), p.zbits(), p.phase()), (0b001, 0b110, 0));
    }

    #[test]
    fn prefixes() {
        assert_eq!(parse_pauli("-iY").unwrap().letter_phase(), 3);
        assert_eq!(parse_pauli("+iX").unwrap().phase(), 1);
        assert_eq!(parse_pauli("iX").unwrap().phase(), 1);
        assert_eq!(parse_pauli("-X").unwrap().phase(), 2);
        assert_eq!(parse_pauli("+X").unwrap().phase(), 0);
        assert_eq!(parse_pauli("  XI ").unwrap().qubits(), 2);
    }

    #[test]
    fn indexed_form() {
        let p = parse_pauli("X1*Z2*Z3").unwrap();
        assert_eq!(p, parse_pauli("XZZ").unwrap());
        assert_eq!(parse_pauli("Z4").unwrap().to_string(), "IIIZ");
        // factors multiply in order: X·Z = -iY
        assert_eq!(parse_pauli("X1*Z1").unwrap().to_string(), "-iY");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_pauli("XYQ"),
            Err(ParseError {
                position: 2,
                kind: ParseErrorKind::UnexpectedChar('Q')
            })
        );
        assert_eq!(parse_pauli("").unwrap_err().kind, ParseErrorKind::Empty);
        assert_eq!(parse_pauli("-").unwrap_err().kind, ParseErrorKind::Empty);
        assert_eq!(parse_pauli("X1*Z").unwrap_err().position, 4);
        assert_eq!(parse_pauli("X1Z2").unwrap_err().position, 2);
        assert_eq!(
            parse_pauli("X0").unwrap_err().kind,
            ParseErrorKind::BadIndex
        );
        assert_eq!(parse_pauli("X1*").unwrap_err().kind, ParseErrorKind::Empty);
        assert_eq!(parse_pauli("xyz").unwrap_err().position, 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn print_parse_is_idempotent(n in 1usize..10, x in any::<u64>(), z in any::<u64>(), ph in 0u8..4) {
                let p = PauliOp::new(n, x, z, ph).unwrap();
                let printed = p.to_string();
                let reparsed = parse_pauli(&printed).unwrap();
                prop_assert_eq!(reparsed, p);
                prop_assert_eq!(reparsed.to_string(), printed);
            }
        }
    }
}
