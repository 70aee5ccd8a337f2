//! Zeckendorf-Fibonacci numeration.
//!
//! Every positive integer is a unique sum of non-consecutive Fibonacci numbers
//! `F_2, F_3, ...` (with `F_2 = 1`). We write the expansion as a binary word
//! `u_n ... u_2` (most significant first, digit at position `i` carrying
//! weight `F_i`) with no factor `11`, a *ZF-word*. Leading zeros are
//! equivalent; the canonical form has none.

use std::fmt;

use crate::{Error, Result};

/// Largest index for which `F_i` fits in `u128`.
pub const MAX_FIB_INDEX: u32 = 184;

/// `F_i` with `F_1 = F_2 = 1`.
pub fn fib(i: u32) -> Result<u128> {
    if i < 1 {
        return Err(Error::Domain(format!("fib requires i >= 1, got {i}")));
    }
    if i > MAX_FIB_INDEX {
        return Err(Error::Domain(format!(
            "fib({i}) exceeds the u128 range (max index {MAX_FIB_INDEX})"
        )));
    }
    let (mut a, mut b) = (1u128, 1u128); // F_1, F_2
    for _ in 2..i {
        let next = a + b;
        a = b;
        b = next;
    }
    Ok(if i == 1 { a } else { b })
}

/// A binary word with no factor `11`; position `i` (from 2 upward, least
/// significant last) carries weight `F_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZfWord {
    /// Most significant digit first; digit `digits[len-1]` sits at position 2.
    digits: Vec<u8>,
}

impl ZfWord {
    /// The canonical zero word (empty).
    pub fn zero() -> ZfWord {
        ZfWord { digits: Vec::new() }
    }

    /// Builds a word from most-significant-first digits, rejecting any `11`
    /// factor. Leading zeros are trimmed to canonical form.
    pub fn from_digits(digits: &[u8]) -> Result<ZfWord> {
        for &d in digits {
            if d > 1 {
                return Err(Error::InvalidZfWord(format!("digit {d} is not binary")));
            }
        }
        if digits.windows(2).any(|w| w == [1, 1]) {
            return Err(Error::InvalidZfWord(format!(
                "word {} contains the factor 11",
                digits.iter().map(|d| d.to_string()).collect::<String>()
            )));
        }
        let start = digits.iter().position(|&d| d == 1).unwrap_or(digits.len());
        Ok(ZfWord {
            digits: digits[start..].to_vec(),
        })
    }

    pub fn parse(word: &str) -> Result<ZfWord> {
        let digits: Vec<u8> = word
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidZfWord(format!("unexpected character {c:?}"))),
            })
            .collect::<Result<_>>()?;
        ZfWord::from_digits(&digits)
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Number of digits in canonical form.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at weight position `i >= 2` (0 beyond the stored length).
    pub fn digit(&self, i: u32) -> u8 {
        if i < 2 {
            return 0;
        }
        let offset = (i - 2) as usize;
        if offset >= self.digits.len() {
            0
        } else {
            self.digits[self.digits.len() - 1 - offset]
        }
    }

    /// Position of the leading 1 (`None` for zero); equals `len() + 1`.
    pub fn leading_position(&self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.digits.len() as u32 + 1)
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.digits.iter().map(|&d| d as u32).sum()
    }

    /// Most-significant-first digits, left-padded with zeros to `width`.
    pub fn padded(&self, width: usize) -> String {
        let body: String = self.digits.iter().map(|d| d.to_string()).collect();
        format!("{}{}", "0".repeat(width.saturating_sub(body.len())), body)
    }
}

impl fmt::Display for ZfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return write!(f, "0");
        }
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Greedy Zeckendorf expansion of `k` (the empty word for `k = 0`).
pub fn zeckendorf(k: u128) -> ZfWord {
    if k == 0 {
        return ZfWord::zero();
    }
    // i := max(j : F_j <= r), subtract, repeat.
    let mut top = 2;
    while fib(top + 1).map(|f| f <= k).unwrap_or(false) {
        top += 1;
    }
    let mut digits = vec![0u8; (top - 1) as usize];
    let mut r = k;
    let mut i = top;
    while r > 0 {
        while fib(i).unwrap() > r {
            i -= 1;
        }
        digits[(top - i) as usize] = 1;
        r -= fib(i).unwrap();
    }
    ZfWord { digits }
}

/// The value `Σ u_i F_i` of a ZF-word; inverse of [`zeckendorf`] on canonical
/// forms.
pub fn zf_value(w: &ZfWord) -> Result<u128> {
    let mut sum = 0u128;
    for (offset, &d) in w.digits.iter().rev().enumerate() {
        if d == 1 {
            sum += fib(offset as u32 + 2)?;
        }
    }
    Ok(sum)
}

/// The largest digit position at which the expansions of `m-1` and `m`
/// differ (positions are weight indices, starting at 2).
pub fn leading_change_index(m: u128) -> Result<u32> {
    if m < 1 {
        return Err(Error::Domain(format!(
            "leading_change_index requires m >= 1, got {m}"
        )));
    }
    let prev = zeckendorf(m - 1);
    let cur = zeckendorf(m);
    let top = (prev.len().max(cur.len()) as u32) + 1;
    for i in (2..=top).rev() {
        if prev.digit(i) != cur.digit(i) {
            return Ok(i);
        }
    }
    unreachable!("consecutive integers have distinct expansions")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fib_convention() {
        assert_eq!(fib(1).unwrap(), 1);
        assert_eq!(fib(2).unwrap(), 1);
        assert_eq!(fib(3).unwrap(), 2);
        assert_eq!(fib(7).unwrap(), 13);
        assert!(fib(0).is_err());
        assert!(fib(MAX_FIB_INDEX).is_ok());
        assert!(fib(MAX_FIB_INDEX + 1).is_err());
    }

    #[test]
    fn zeckendorf_examples() {
        assert_eq!(zeckendorf(0).to_string(), "0");
        assert_eq!(zeckendorf(1).to_string(), "1");
        assert_eq!(zeckendorf(7).to_string(), "1010");
        assert_eq!(zeckendorf(12).to_string(), "10101");
    }

    #[test]
    fn zeckendorf_matches_subset_brute_force() {
        // Independent oracle: enumerate all subsets of {F_2..F_6} and check
        // that exactly one non-consecutive subset sums to 12, namely F_6+F_4+F_2.
        let weights: Vec<u128> = (2..=6).map(|i| fib(i).unwrap()).collect();
        let mut hits = Vec::new();
        for mask in 0u32..1 << weights.len() {
            if mask & (mask << 1) != 0 {
                continue; // consecutive indices
            }
            let sum: u128 = (0..weights.len())
                .filter(|&j| mask >> j & 1 == 1)
                .map(|j| weights[j])
                .sum();
            if sum == 12 {
                hits.push(mask);
            }
        }
        assert_eq!(hits, vec![0b10101]);
    }

    #[test]
    fn zf_value_examples() {
        assert_eq!(zf_value(&ZfWord::parse("1").unwrap()).unwrap(), 1);
        assert_eq!(zf_value(&ZfWord::parse("10101").unwrap()).unwrap(), 12);
        assert!(ZfWord::parse("110").is_err());
    }

    #[test]
    fn roundtrip_small_range() {
        for k in 0..=10_000u128 {
            assert_eq!(zf_value(&zeckendorf(k)).unwrap(), k);
        }
    }

    #[test]
    fn no_factor_11_up_to_1e5() {
        for k in 0..=100_000u128 {
            let w = zeckendorf(k);
            assert!(!w.to_string().contains("11"), "zeckendorf({k}) = {w}");
        }
    }

    #[test]
    fn uniqueness_by_exhaustive_enumeration() {
        // For k < F_20, every value is hit by exactly one ZF-word of length <= 18.
        let bound = fib(20).unwrap() as usize;
        let mut counts = vec![0u32; bound];
        for mask in 0u32..1 << 18 {
            if mask & (mask << 1) != 0 {
                continue;
            }
            let mut sum = 0u128;
            for j in 0..18 {
                if mask >> j & 1 == 1 {
                    sum += fib(j + 2).unwrap();
                }
            }
            if (sum as usize) < bound {
                counts[sum as usize] += 1;
            }
        }
        assert!(counts.iter().all(|&c| c == 1));
    }

    #[test]
    fn leading_change_examples() {
        assert_eq!(leading_change_index(1).unwrap(), 2);
        assert_eq!(leading_change_index(2).unwrap(), 3);
        assert_eq!(leading_change_index(5).unwrap(), 5);
        assert!(leading_change_index(0).is_err());
    }

    #[test]
    fn leading_change_at_fibonacci_carry() {
        for n in 2..=25 {
            assert_eq!(leading_change_index(fib(n + 1).unwrap()).unwrap(), n + 1);
        }
    }

    proptest! {
        #[test]
        fn roundtrip_random(k in 0u128..1_000_000_000_000) {
            prop_assert_eq!(zf_value(&zeckendorf(k)).unwrap(), k);
        }

        #[test]
        fn padding_equivalence(k in 0u128..1_000_000) {
            let w = zeckendorf(k);
            let padded = ZfWord::parse(&format!("000{w}")).unwrap();
            if k == 0 {
                prop_assert!(padded.is_zero());
            } else {
                prop_assert_eq!(padded, w);
            }
        }
    }
}
