//! Generator symbols and words over them.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::chart::{CurveId, InvolutionName};
use crate::params::SurfaceParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("cannot parse symbol {0:?}")]
    BadSymbol(String),
    #[error("bad exponent in {0:?}; expected ^1 or ^-1")]
    BadExponent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorSymbol {
    Twist(CurveId),
    CrosscapSlide,
    SlideV(usize),
    SlideW(usize),
    Involution(InvolutionName),
}

impl GeneratorSymbol {
    pub fn is_involution(&self) -> bool {
        matches!(self, GeneratorSymbol::Involution(_))
    }

    /// Whether the symbol exists for `params` (mode and index ranges).
    pub fn valid_for(&self, params: &SurfaceParams) -> bool {
        match *self {
            GeneratorSymbol::Twist(_) | GeneratorSymbol::CrosscapSlide => true,
            GeneratorSymbol::SlideV(i) => (1..=params.n).contains(&i),
            GeneratorSymbol::SlideW(i) => params.is_even() && (1..=params.n).contains(&i),
            GeneratorSymbol::Involution(s) => params.is_even() || !s.even_only(),
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSymbol::Twist(c) => write!(f, "t[{c}]"),
            GeneratorSymbol::CrosscapSlide => f.write_str("y"),
            GeneratorSymbol::SlideV(i) => write!(f, "v[{i}]"),
            GeneratorSymbol::SlideW(i) => write!(f, "w[{i}]"),
            GeneratorSymbol::Involution(s) => f.write_str(s.as_str()),
        }
    }
}

fn bracketed<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    s.strip_prefix(head)?.strip_prefix('[')?.strip_suffix(']')
}

impl FromStr for GeneratorSymbol {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::BadSymbol(s.to_string());
        if s == "y" {
            return Ok(GeneratorSymbol::CrosscapSlide);
        }
        if let Some(inner) = bracketed(s, "t") {
            return inner.parse().map(GeneratorSymbol::Twist).map_err(|_| bad());
        }
        let index = |inner: &str| inner.parse::<usize>().ok().filter(|&i| i >= 1).ok_or_else(bad);
        if let Some(inner) = bracketed(s, "v") {
            return index(inner).map(GeneratorSymbol::SlideV);
        }
        if let Some(inner) = bracketed(s, "w") {
            return index(inner).map(GeneratorSymbol::SlideW);
        }
        s.parse().map(GeneratorSymbol::Involution).map_err(|_| bad())
    }
}

/// A symbol with exponent `+1` (`inverse == false`) or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub symbol: GeneratorSymbol,
    pub inverse: bool,
}

impl Letter {
    pub fn new(symbol: GeneratorSymbol) -> Self {
        Self { symbol, inverse: false }
    }

    pub fn inv(symbol: GeneratorSymbol) -> Self {
        Self { symbol, inverse: true }
    }

    pub fn involution(name: InvolutionName) -> Self {
        Self::new(GeneratorSymbol::Involution(name))
    }

    pub fn exponent(&self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Self {
            symbol: self.symbol,
            inverse: !self.inverse,
        }
    }

    fn cancels(&self, next: &Letter) -> bool {
        self.symbol == next.symbol && (self.inverse != next.inverse || self.symbol.is_involution())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.symbol)
        } else {
            write!(f, "{}", self.symbol)
        }
    }
}

impl FromStr for Letter {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (body, inverse) = match s.split_once('^') {
            None => (s, false),
            Some((body, "-1")) => (body, true),
            Some((body, "1")) => (body, false),
            Some(_) => return Err(WordError::BadExponent(s.to_string())),
        };
        Ok(Self {
            symbol: body.parse()?,
            inverse,
        })
    }
}

/// A product of letters, read left to right: `[f, g]` is `f·g`, so `g`
/// acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MappingWord {
    letters: Vec<Letter>,
}

impl MappingWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn single(symbol: GeneratorSymbol) -> Self {
        Self {
            letters: alloc::vec![Letter::new(symbol)],
        }
    }

    /// A word of positive involution letters.
    pub fn involutions(names: &[InvolutionName]) -> Self {
        Self {
            letters: names.iter().map(|&n| Letter::involution(n)).collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    /// Reversed word with each letter inverted. An involution letter is
    /// its own inverse, so it keeps its written exponent.
    pub fn inverse(&self) -> Self {
        Self {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| if l.symbol.is_involution() { *l } else { l.inverted() })
                .collect(),
        }
    }

    /// Same letters with exactly one position inverted.
    pub fn with_inverted(&self, position: usize) -> Self {
        let mut letters = self.letters.clone();
        letters[position] = letters[position].inverted();
        Self { letters }
    }

    /// Same letters with one position removed.
    pub fn without(&self, position: usize) -> Self {
        let mut letters = self.letters.clone();
        letters.remove(position);
        Self { letters }
    }

    pub fn only_involutions(&self) -> bool {
        self.letters.iter().all(|l| l.symbol.is_involution())
    }

    /// The involution names occurring in the word.
    pub fn involution_names(&self) -> impl Iterator<Item = InvolutionName> + '_ {
        self.letters.iter().filter_map(|l| match l.symbol {
            GeneratorSymbol::Involution(n) => Some(n),
            _ => None,
        })
    }

    /// Parses whitespace- or comma-separated letters; `1` (or nothing) is
    /// the empty word.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens == ["1"] {
            return Ok(Self::empty());
        }
        tokens.into_iter().map(str::parse).collect::<Result<Vec<_>, _>>().map(Self::from_letters)
    }

    /// Symbol strings, one per letter, as written in certificate files.
    pub fn to_symbols(&self) -> Vec<String> {
        self.letters.iter().map(|l| l.to_string()).collect()
    }
}

impl fmt::Display for MappingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Cancels `x x⁻¹` pairs and squares of involution letters until none
/// remain. Involution letters come out with exponent `+1`.
pub fn free_reduce(w: &MappingWord) -> MappingWord {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for l in &w.letters {
        let mut l = *l;
        if l.symbol.is_involution() {
            l.inverse = false;
        }
        match stack.last() {
            Some(top) if top.cancels(&l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    MappingWord { letters: stack }
}

/// `f · w · f⁻¹`, freely reduced.
pub fn conjugate(f: &MappingWord, w: &MappingWord) -> MappingWord {
    free_reduce(&f.concat(w).concat(&f.inverse()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use InvolutionName::*;

    fn w(text: &str) -> MappingWord {
        MappingWord::parse(text).unwrap()
    }

    #[test]
    fn symbols_round_trip() {
        for s in ["t[a3]", "y", "v[2]", "w[3]", "rho1", "sigma", "I", "t[alpha1]", "t[xi]"] {
            let sym: GeneratorSymbol = s.parse().unwrap();
            assert_eq!(sym.to_string(), s);
        }
        for bad in ["t[]", "v[0]", "q", "t[a3", "w[x]"] {
            assert!(bad.parse::<GeneratorSymbol>().is_err(), "{bad}");
        }
        assert_eq!("t[a1]^-1".parse::<Letter>().unwrap(), Letter::inv(GeneratorSymbol::Twist(CurveId::a(1))));
        assert!("tau^2".parse::<Letter>().is_err());
    }

    #[test]
    fn reduction_examples() {
        assert!(free_reduce(&w("tau tau")).is_empty());
        assert!(free_reduce(&w("t[a1] t[a1]^-1")).is_empty());
        assert!(free_reduce(&w("tau sigma sigma tau")).is_empty());
        assert_eq!(free_reduce(&w("t[a1] t[a1]")), w("t[a1] t[a1]"));
        assert_eq!(free_reduce(&w("tau^-1 sigma")), w("tau sigma"));
    }

    #[test]
    fn conjugation_examples() {
        let f = MappingWord::involutions(&[Tau, Sigma]);
        let a1 = MappingWord::involutions(&[Tau, Rho1]);
        let a2 = conjugate(&f, &a1);
        assert_eq!(a2, w("tau sigma tau rho1 sigma tau"));
        assert_eq!(conjugate(&f, &a2).to_string(), "tau sigma tau sigma tau rho1 sigma tau sigma tau");
        assert_eq!(conjugate(&MappingWord::empty(), &w("t[a2] y")), w("t[a2] y"));
    }

    #[test]
    fn inverse_of_involution_word_is_reversal() {
        let word = MappingWord::involutions(&[Tau, Sigma, Rho1]);
        assert_eq!(word.inverse(), MappingWord::involutions(&[Rho1, Sigma, Tau]));
        assert_eq!(w("t[a1] y^-1").inverse(), w("y t[a1]^-1"));
    }

    #[test]
    fn display_and_parse_agree() {
        let word = w("sigma, t[b2]^-1, v[3]");
        assert_eq!(MappingWord::parse(&word.to_string()).unwrap(), word);
        assert_eq!(MappingWord::empty().to_string(), "1");
        assert!(w("1").is_empty());
        assert_eq!(word.to_symbols(), vec!["sigma", "t[b2]^-1", "v[3]"]);
    }

    #[test]
    fn validity_by_mode() {
        let odd = SurfaceParams::new(13, 5).unwrap();
        let even = SurfaceParams::new(16, 4).unwrap();
        assert!(!GeneratorSymbol::SlideW(1).valid_for(&odd));
        assert!(GeneratorSymbol::SlideW(4).valid_for(&even));
        assert!(!GeneratorSymbol::SlideV(5).valid_for(&even));
        assert!(!GeneratorSymbol::Involution(K).valid_for(&odd));
    }
}
