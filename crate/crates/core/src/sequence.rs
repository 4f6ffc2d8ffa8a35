//! Symbol sequences and the two input modes.
//!
//! Every algorithm in the crate works on [`Sequence`], a list of `u32`
//! symbols. In byte mode a symbol is the byte value itself. In token mode the
//! input is split on ASCII whitespace and each distinct token receives a dense
//! id in first-seen order; the dictionary is shared by both strings of a pair
//! so equal tokens map to equal ids.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u32;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sequence(Vec<Symbol>);

impl Sequence {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Sequence(symbols)
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        Sequence(bytes.iter().map(|&b| Symbol::from(b)).collect())
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    /// Order-preserving restriction to the given (increasing) positions.
    pub fn restrict(&self, positions: &[usize]) -> Sequence {
        Sequence(positions.iter().map(|&i| self.0[i]).collect())
    }
}

impl From<&str> for Sequence {
    fn from(s: &str) -> Self {
        Sequence::from_bytes(s.as_bytes())
    }
}

impl From<&[u8]> for Sequence {
    fn from(s: &[u8]) -> Self {
        Sequence::from_bytes(s)
    }
}

impl From<Vec<Symbol>> for Sequence {
    fn from(v: Vec<Symbol>) -> Self {
        Sequence(v)
    }
}

impl std::ops::Index<usize> for Sequence {
    type Output = Symbol;

    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum InputMode {
    /// One symbol per byte; no newline stripping.
    #[default]
    Bytes,
    /// One symbol per ASCII-whitespace separated token.
    Tokens,
}

impl fmt::Display for InputMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputMode::Bytes => f.write_str("bytes"),
            InputMode::Tokens => f.write_str("tokens"),
        }
    }
}

/// First-seen-order token to id dictionary.
#[derive(Debug, Default)]
pub struct TokenDictionary {
    ids: HashMap<Vec<u8>, Symbol>,
}

impl TokenDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn tokenize(&mut self, text: &[u8]) -> Sequence {
        let symbols = text
            .split(|b| b.is_ascii_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                let next = self.ids.len() as Symbol;
                *self.ids.entry(tok.to_vec()).or_insert(next)
            })
            .collect();
        Sequence(symbols)
    }
}

/// Decodes a pair of raw inputs into sequences under the given mode.
pub fn parse_pair(mode: InputMode, a: &[u8], b: &[u8]) -> (Sequence, Sequence) {
    match mode {
        InputMode::Bytes => (Sequence::from_bytes(a), Sequence::from_bytes(b)),
        InputMode::Tokens => {
            let mut dict = TokenDictionary::new();
            let x = dict.tokenize(a);
            let y = dict.tokenize(b);
            (x, y)
        }
    }
}

/// Splits a single combined buffer (as read from standard input) into the
/// two raw inputs: a NUL byte separates them in byte mode, the first blank
/// line does in token mode.
pub fn split_combined(mode: InputMode, data: &[u8]) -> Result<(&[u8], &[u8])> {
    match mode {
        InputMode::Bytes => match data.iter().position(|&b| b == 0) {
            Some(p) => Ok((&data[..p], &data[p + 1..])),
            None => Err(Error::Usage(
                "standard input in bytes mode must hold two sequences separated by a NUL byte"
                    .into(),
            )),
        },
        InputMode::Tokens => {
            let mut start = 0;
            while start < data.len() {
                let end = data[start..]
                    .iter()
                    .position(|&b| b == b'\n')
                    .map_or(data.len(), |p| start + p);
                let line = &data[start..end];
                if line.iter().all(|b| b.is_ascii_whitespace()) {
                    let rest = if end < data.len() { end + 1 } else { end };
                    return Ok((&data[..start], &data[rest..]));
                }
                start = end + 1;
            }
            Err(Error::Usage(
                "standard input in tokens mode must hold two sequences separated by a blank line"
                    .into(),
            ))
        }
    }
}

const ALNUM: &[u8; 62] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// Renders a generated pair to file contents. Byte mode uses the letters
/// `a..z A..Z 0..9` when the joint alphabet fits in 62 symbols and raw byte
/// values when it fits in 256; token mode writes `w<id>` words separated by
/// single spaces with a trailing newline.
pub fn render_pair(mode: InputMode, x: &Sequence, y: &Sequence) -> Result<(Vec<u8>, Vec<u8>)> {
    let max = x.0.iter().chain(y.0.iter()).copied().max().unwrap_or(0);
    match mode {
        InputMode::Bytes if max < ALNUM.len() as Symbol => {
            let r = |s: &Sequence| s.0.iter().map(|&c| ALNUM[c as usize]).collect();
            Ok((r(x), r(y)))
        }
        InputMode::Bytes if max < 256 => {
            let r = |s: &Sequence| s.0.iter().map(|&c| c as u8).collect();
            Ok((r(x), r(y)))
        }
        InputMode::Bytes => Err(Error::Usage(format!(
            "alphabet of {} symbols does not fit bytes mode; use --mode tokens",
            max as u64 + 1
        ))),
        InputMode::Tokens => {
            let r = |s: &Sequence| {
                let mut out =
                    s.0.iter()
                        .map(|c| format!("w{c}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                        .into_bytes();
                out.push(b'\n');
                out
            };
            Ok((r(x), r(y)))
        }
    }
}
