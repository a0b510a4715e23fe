use crate::spectral_core::SpectralField;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Branch of the complex wave variable: `Plus` is the field itself and
/// `Minus` its complex conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    /// Mixing constant: `−i` for `Plus`, `+i` for `Minus`.
    pub fn c(self) -> Complex64 {
        match self {
            Sign::Plus => Complex64::new(0.0, -1.0),
            Sign::Minus => Complex64::new(0.0, 1.0),
        }
    }

    /// Propagation direction: `+1` for `Plus`, `−1` for `Minus`.
    pub fn a(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Selects the branch of a complex field.
    pub fn branch(self, f: &SpectralField) -> SpectralField {
        match self {
            Sign::Plus => f.clone(),
            Sign::Minus => f.conj(),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Sign label including the index of the real curl variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignIndex {
    Zero,
    Plus,
    Minus,
}

impl From<Sign> for SignIndex {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => SignIndex::Plus,
            Sign::Minus => SignIndex::Minus,
        }
    }
}

/// The three interaction types kept after merging `(+,−)` with `(−,+)`.
pub const PAIRS: [(Sign, Sign); 3] = [
    (Sign::Plus, Sign::Plus),
    (Sign::Plus, Sign::Minus),
    (Sign::Minus, Sign::Minus),
];

/// All four ordered sign pairs.
pub const ALL_PAIRS: [(Sign, Sign); 4] = [
    (Sign::Plus, Sign::Plus),
    (Sign::Plus, Sign::Minus),
    (Sign::Minus, Sign::Plus),
    (Sign::Minus, Sign::Minus),
];

pub fn pair_label(mu: Sign, nu: Sign) -> String {
    format!("{}{}", mu.symbol(), nu.symbol())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        for s in Sign::BOTH {
            assert_eq!(s.c().re, 0.0);
            assert_eq!(s.a().abs(), 1.0);
            assert_eq!(s.flip().flip(), s);
        }
        assert_eq!(Sign::Plus.c() * Sign::Minus.c(), Complex64::new(1.0, 0.0));
        assert_eq!(Sign::Plus.c() * Sign::Plus.c(), Complex64::new(-1.0, 0.0));
    }
}
