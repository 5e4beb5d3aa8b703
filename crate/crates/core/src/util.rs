//! Small combinatorial helpers shared by every enumeration in the crate.

use crate::error::{Error, Result};

/// Default number of candidates an exhaustive enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Upper bound on the number of candidates an enumeration is allowed to visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }

    /// Fails with [`Error::BudgetExceeded`] when `candidates` does not fit.
    pub fn admit(&self, candidates: u128) -> Result<()> {
        if candidates > self.0 as u128 {
            Err(Error::BudgetExceeded {
                needed: candidates,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// Saturating product of radices; the number of digit vectors of a [`MixedRadix`].
pub fn radix_product<I: IntoIterator<Item = usize>>(radices: I) -> u128 {
    radices
        .into_iter()
        .fold(1u128, |acc, r| acc.saturating_mul(r as u128))
}

/// Saturating `base^exp`.
pub fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc = 1u128;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc == 0 {
            break;
        }
    }
    acc
}

/// Advances `digits` to the lexicographic successor under `radices`
/// (first digit most significant). Returns `false` after the last vector.
pub fn advance(digits: &mut [usize], radices: &[usize]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radices[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// Lexicographic iterator over all digit vectors `d` with `d[i] < radices[i]`.
///
/// An empty radix list yields exactly one empty vector; any zero radix
/// yields nothing.
#[derive(Debug, Clone)]
pub struct MixedRadix {
    radices: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl MixedRadix {
    pub fn new(radices: Vec<usize>) -> Self {
        let next = if radices.contains(&0) {
            None
        } else {
            Some(vec![0; radices.len()])
        };
        MixedRadix { radices, next }
    }

    pub fn count_total(&self) -> u128 {
        if self.radices.contains(&0) {
            0
        } else {
            radix_product(self.radices.iter().copied())
        }
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        if advance(&mut successor, &self.radices) {
            self.next = Some(successor);
        }
        Some(current)
    }
}

/// Index of a digit vector in the lexicographic order of [`MixedRadix`].
pub fn rank(digits: &[usize], radices: &[usize]) -> usize {
    digits
        .iter()
        .zip(radices)
        .fold(0usize, |acc, (&d, &r)| acc * r + d)
}

/// Inverse of [`rank`].
pub fn unrank(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        let r = radices[i].max(1);
        digits[i] = index % r;
        index /= r;
    }
    digits
}

const RESERVED: &[char] = &['(', ')', '[', ']', '{', '}', '<', '>', ',', ';', '|', '\\'];

/// Escapes characters that composite atom names use as delimiters, so
/// that labels built from escaped parts stay injective.
pub fn escape_atom(atom: &str) -> String {
    if !atom.contains(RESERVED) {
        return atom.to_string();
    }
    let mut out = String::with_capacity(atom.len() + 4);
    for c in atom.chars() {
        if RESERVED.contains(&c) {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

/// Joins escaped atoms with `,` between the given brackets.
pub fn bracket<'a, I: IntoIterator<Item = &'a str>>(open: char, parts: I, close: char) -> String {
    let mut out = String::new();
    out.push(open);
    for (i, p) in parts.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&escape_atom(p));
    }
    out.push(close);
    out
}
