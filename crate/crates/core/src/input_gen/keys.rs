//! Key sequences and their on-disk formats.
//!
//! Text: one key per line. Integers are written as decimal integers, reals in
//! Rust's round-trip `Debug` form (always with a `.` or exponent, e.g. `1.0`).
//! Blank lines are ignored when reading.
//!
//! Binary (24-byte header, then the values):
//!
//! | offset | size | content                                  |
//! |--------|------|------------------------------------------|
//! | 0      | 8    | magic `SSKEYS01`                          |
//! | 8      | 1    | `i` for i64 keys, `f` for f64 keys        |
//! | 9      | 7    | zero                                      |
//! | 16     | 8    | key count, u64 little-endian              |
//! | 24     | 8·n  | keys, little-endian i64 or IEEE-754 f64   |

use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};

use super::GenError;

pub const BINARY_MAGIC: [u8; 8] = *b"SSKEYS01";
const HEADER_LEN: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub enum Keys {
    Int(Vec<i64>),
    Real(Vec<f64>),
}

impl Keys {
    pub fn len(&self) -> usize {
        match self {
            Keys::Int(v) => v.len(),
            Keys::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn write_text<W: Write>(&self, out: W) -> io::Result<()> {
        let mut out = BufWriter::new(out);
        match self {
            Keys::Int(v) => v.iter().try_for_each(|x| writeln!(out, "{x}"))?,
            Keys::Real(v) => v.iter().try_for_each(|x| writeln!(out, "{x:?}"))?,
        }
        out.flush()
    }

    pub fn write_binary<W: Write>(&self, out: W) -> io::Result<()> {
        let mut out = BufWriter::new(out);
        let mut header = [0u8; HEADER_LEN];
        header[..8].copy_from_slice(&BINARY_MAGIC);
        header[8] = match self {
            Keys::Int(_) => b'i',
            Keys::Real(_) => b'f',
        };
        header[16..].copy_from_slice(&(self.len() as u64).to_le_bytes());
        out.write_all(&header)?;
        match self {
            Keys::Int(v) => v.iter().try_for_each(|x| out.write_all(&x.to_le_bytes()))?,
            Keys::Real(v) => v.iter().try_for_each(|x| out.write_all(&x.to_le_bytes()))?,
        }
        out.flush()
    }

    /// Reads either format, detected by the magic prefix.
    pub fn read<R: Read>(input: R) -> Result<Keys, GenError> {
        let mut input = BufReader::new(input);
        let is_binary = input.fill_buf()?.starts_with(&BINARY_MAGIC);
        if is_binary {
            let mut bytes = Vec::new();
            input.read_to_end(&mut bytes)?;
            Self::from_binary(&bytes)
        } else {
            let mut text = String::new();
            input.read_to_string(&mut text).map_err(|e| match e.kind() {
                io::ErrorKind::InvalidData => GenError::Format("input is neither text nor binary keys".into()),
                _ => GenError::Io(e),
            })?;
            Self::parse_text(&text)
        }
    }

    /// Parses the text format. All-integer input gives [`Keys::Int`];
    /// otherwise every line must be a finite real.
    pub fn parse_text(text: &str) -> Result<Keys, GenError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        if let Ok(ints) = lines
            .iter()
            .map(|(_, l)| l.parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
        {
            return Ok(Keys::Int(ints));
        }
        lines
            .iter()
            .map(|&(line, l)| match l.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(GenError::Parse {
                    line,
                    content: l.to_string(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Keys::Real)
    }

    fn from_binary(bytes: &[u8]) -> Result<Keys, GenError> {
        if bytes.len() < HEADER_LEN {
            return Err(GenError::Format("truncated header".into()));
        }
        let count = u64::from_le_bytes(bytes[16..24].try_into().unwrap());
        let body = &bytes[HEADER_LEN..];
        if Some(body.len() as u64) != count.checked_mul(8) {
            return Err(GenError::Format(format!(
                "header announces {count} keys but body holds {} bytes",
                body.len()
            )));
        }
        let words = body.chunks_exact(8).map(|c| <[u8; 8]>::try_from(c).unwrap());
        match bytes[8] {
            b'i' => Ok(Keys::Int(words.map(i64::from_le_bytes).collect())),
            b'f' => {
                let v: Vec<f64> = words.map(f64::from_le_bytes).collect();
                if let Some(pos) = v.iter().position(|x| !x.is_finite()) {
                    return Err(GenError::Format(format!("key {pos} is not finite")));
                }
                Ok(Keys::Real(v))
            }
            other => Err(GenError::Format(format!("unknown key type byte {other:#04x}"))),
        }
    }
}
