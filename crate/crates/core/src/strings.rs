//! Strings over the alphabet `{0, .., a-1}`.
//!
//! Symbols are small integers rather than characters. The textual literal
//! form is a compact digit string when `a <= 10` (`"01121"`), a
//! comma-separated list otherwise (`"0,11,3"`), and `"-"` for the empty
//! string.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u32;

/// Literal used for the empty string.
pub const EMPTY_LITERAL: &str = "-";

/// Alphabet `{0, .., a-1}` with `a >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Alphabet(u32);

impl Alphabet {
    pub fn new(size: u32) -> Result<Self> {
        if size < 2 {
            return Err(Error::invalid(format!(
                "alphabet size must be at least 2, got {size}"
            )));
        }
        Ok(Alphabet(size))
    }

    #[inline]
    pub fn size(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, symbol: Symbol) -> bool {
        symbol < self.0
    }

    pub fn check_symbol(self, symbol: Symbol) -> Result<()> {
        if self.contains(symbol) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "symbol {symbol} is outside the alphabet {{0..{}}}",
                self.0 - 1
            )))
        }
    }

    /// `N_alpha(w)` with the symbol checked against the alphabet.
    pub fn count_symbol(self, w: &[Symbol], symbol: Symbol) -> Result<usize> {
        self.check_symbol(symbol)?;
        Ok(count_symbol(w, symbol))
    }

    pub fn symbols(self) -> impl Iterator<Item = Symbol> {
        0..self.0
    }
}

impl TryFrom<u32> for Alphabet {
    type Error = Error;

    fn try_from(size: u32) -> Result<Self> {
        Alphabet::new(size)
    }
}

impl From<Alphabet> for u32 {
    fn from(a: Alphabet) -> u32 {
        a.0
    }
}

/// A finite sequence of symbols. May be empty.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LevString(Vec<Symbol>);

impl LevString {
    pub fn empty() -> Self {
        LevString(Vec::new())
    }

    /// Builds a string, rejecting symbols outside `alphabet`.
    pub fn new(symbols: Vec<Symbol>, alphabet: Alphabet) -> Result<Self> {
        for &s in &symbols {
            alphabet.check_symbol(s)?;
        }
        Ok(LevString(symbols))
    }

    /// Builds a string without alphabet validation.
    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        LevString(symbols)
    }

    /// `alpha^len`.
    pub fn run(symbol: Symbol, len: usize) -> Self {
        LevString(vec![symbol; len])
    }

    /// `alpha^l beta^r`.
    pub fn two_runs(alpha: Symbol, l: usize, beta: Symbol, r: usize) -> Self {
        let mut v = Vec::with_capacity(l + r);
        v.resize(l, alpha);
        v.resize(l + r, beta);
        LevString(v)
    }

    /// Parses a literal and validates it against `alphabet`.
    pub fn parse_literal(text: &str, alphabet: Alphabet) -> Result<Self> {
        let text = text.trim();
        if text == EMPTY_LITERAL {
            return Ok(LevString::empty());
        }
        if text.is_empty() {
            return Err(Error::invalid(format!(
                "empty literal; write the empty string as \"{EMPTY_LITERAL}\""
            )));
        }
        let symbols: Vec<Symbol> = if alphabet.size() <= 10 && !text.contains(',') {
            text.chars()
                .map(|c| {
                    c.to_digit(10).ok_or_else(|| {
                        Error::invalid(format!("bad symbol {c:?} in literal {text:?}"))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            text.split(',')
                .map(|tok| {
                    tok.trim().parse::<Symbol>().map_err(|_| {
                        Error::invalid(format!("bad symbol {tok:?} in literal {text:?}"))
                    })
                })
                .collect::<Result<_>>()?
        };
        LevString::new(symbols, alphabet)
    }

    /// Literal form for an alphabet of the given size.
    pub fn to_literal(&self, alphabet: Alphabet) -> String {
        format_literal(&self.0, alphabet.size() <= 10)
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    /// `N_alpha(w)`.
    pub fn count(&self, symbol: Symbol) -> usize {
        count_symbol(&self.0, symbol)
    }

    /// `r(w)`.
    pub fn runs(&self) -> usize {
        run_count(&self.0)
    }

    pub fn prefix(&self, n: usize) -> Result<LevString> {
        if n > self.len() {
            return Err(Error::invalid(format!(
                "prefix length {n} exceeds string length {}",
                self.len()
            )));
        }
        Ok(LevString(self.0[..n].to_vec()))
    }

    pub fn suffix(&self, n: usize) -> Result<LevString> {
        if n > self.len() {
            return Err(Error::invalid(format!(
                "suffix length {n} exceeds string length {}",
                self.len()
            )));
        }
        Ok(LevString(self.0[self.len() - n..].to_vec()))
    }

    pub fn reversed(&self) -> LevString {
        LevString(self.0.iter().rev().copied().collect())
    }

    /// Run-length decomposition as `(symbol, length)` pairs.
    pub fn run_lengths(&self) -> Vec<(Symbol, usize)> {
        run_lengths(&self.0)
    }
}

impl Deref for LevString {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for LevString {
    fn from(v: Vec<Symbol>) -> Self {
        LevString(v)
    }
}

impl fmt::Display for LevString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.iter().all(|&s| s < 10);
        f.write_str(&format_literal(&self.0, compact))
    }
}

impl fmt::Debug for LevString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LevString({self})")
    }
}

/// Test and fixture helper: parses digit literals (`"01121"`, `"-"`).
///
/// Panics on anything but ASCII digits.
pub fn lit(text: &str) -> LevString {
    if text == EMPTY_LITERAL || text.is_empty() {
        return LevString::empty();
    }
    LevString(
        text.chars()
            .map(|c| c.to_digit(10).expect("digit literal"))
            .collect(),
    )
}

fn format_literal(symbols: &[Symbol], compact: bool) -> String {
    if symbols.is_empty() {
        return EMPTY_LITERAL.to_string();
    }
    if compact {
        symbols
            .iter()
            .map(|&s| char::from_digit(s, 10).expect("symbol below 10"))
            .collect()
    } else {
        symbols
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[inline]
pub fn count_symbol(w: &[Symbol], symbol: Symbol) -> usize {
    w.iter().filter(|&&s| s == symbol).count()
}

pub fn run_count(w: &[Symbol]) -> usize {
    if w.is_empty() {
        return 0;
    }
    1 + w.windows(2).filter(|p| p[0] != p[1]).count()
}

pub fn run_lengths(w: &[Symbol]) -> Vec<(Symbol, usize)> {
    let mut out: Vec<(Symbol, usize)> = Vec::new();
    for &s in w {
        match out.last_mut() {
            Some((sym, len)) if *sym == s => *len += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

/// Index of `w` among all strings of length `|w|` in lexicographic order.
pub(crate) fn lex_index(w: &[Symbol], a: u32) -> u128 {
    w.iter().fold(0u128, |acc, &s| acc * a as u128 + s as u128)
}

/// Inverse of [`lex_index`] for a fixed length.
pub(crate) fn from_lex_index(mut index: u128, len: usize, a: u32) -> Vec<Symbol> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % a as u128) as Symbol;
        index /= a as u128;
    }
    out
}
