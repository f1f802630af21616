//! Words over the free group `F₂ = ⟨a, b⟩`.
//!
//! Words are never freely reduced: `a a⁻¹` has length 2. Length is the plain
//! letter count, which is what the coset-representative bounds are stated in.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    /// Breadth-first traversals expand letters in this order.
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    /// ASCII form: lower case for generators, upper case for inverses.
    pub fn symbol(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        GeneratorWord { letters }
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

    pub fn push_power(&mut self, letter: Letter, times: usize) {
        self.letters.extend(core::iter::repeat_n(letter, times));
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GeneratorWord { letters }
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }
}

impl From<Vec<Letter>> for GeneratorWord {
    fn from(letters: Vec<Letter>) -> Self {
        GeneratorWord { letters }
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

/// Accepts `a`, `b`, their inverses as `A`/`B`, `a^-1` or `a⁻¹`; whitespace
/// is ignored.
impl FromStr for GeneratorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters: Vec<Letter> = Vec::new();
        let mut rest = s;
        while let Some(c) = rest.chars().next() {
            rest = &rest[c.len_utf8()..];
            let letter = match c {
                c if c.is_whitespace() => continue,
                'a' => Letter::A,
                'A' => Letter::AInv,
                'b' => Letter::B,
                'B' => Letter::BInv,
                _ => return Err(Error::InvalidWord(format!("unexpected {c:?} in {s:?}"))),
            };
            let inverted = if let Some(r) = rest.strip_prefix("^-1") {
                rest = r;
                true
            } else if let Some(r) = rest.strip_prefix("⁻¹") {
                rest = r;
                true
            } else {
                false
            };
            letters.push(if inverted { letter.inverse() } else { letter });
        }
        Ok(GeneratorWord { letters })
    }
}
