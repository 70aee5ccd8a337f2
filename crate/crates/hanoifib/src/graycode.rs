//! The Gray-like code on ZF-words.
//!
//! Blocks are built by a mirroring recursion
//! `N_n = 10 rev(N_{n-1}') + 10 rev(N_{n-2})` (prime drops the leftmost
//! letter, overline reverses the list), or equivalently without mirroring by
//! duplicating words ending in 0 and appending digits read off the Fibonacci
//! substitution's fixed point. Consecutive words differ in one digit except
//! at block boundaries `m + 1 = F_k`, where they differ in two.

use crate::numeration::fib;
use crate::{Error, Result};

/// The block `N_n`: the ZF-words of length `n` starting `10`, in code order
/// (`|N_n| = F_n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayBlock {
    pub n: u32,
    pub words: Vec<String>,
}

/// `N_n` by the mirror recursion.
pub fn gray_block_mirror(n: u32) -> GrayBlock {
    let mut blocks: Vec<Vec<String>> = vec![Vec::new(), vec!["1".to_string()]];
    for m in 2..=n.max(1) as usize {
        let prev: &Vec<String> = &blocks[m - 1];
        let mut words: Vec<String> = prev
            .iter()
            .rev()
            .map(|w| format!("10{}", &w[1..]))
            .collect();
        words.extend(blocks[m - 2].iter().rev().map(|w| format!("10{w}")));
        blocks.push(words);
    }
    GrayBlock {
        n,
        words: blocks[n as usize].clone(),
    }
}

/// The concatenation `N_1 + ... + N_n`, each word left-padded with zeros to
/// length `n`; `F_{n+2} - 1` words in total.
pub fn gray_list(n: u32) -> Vec<String> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<String>> = vec![Vec::new(), vec!["1".to_string()]];
    for m in 2..=n as usize {
        let prev = &blocks[m - 1];
        let mut words: Vec<String> = prev
            .iter()
            .rev()
            .map(|w| format!("10{}", &w[1..]))
            .collect();
        words.extend(blocks[m - 2].iter().rev().map(|w| format!("10{w}")));
        blocks.push(words);
    }
    for block in blocks.iter().take(n as usize + 1) {
        for w in block {
            out.push(format!("{}{w}", "0".repeat(n as usize - w.len())));
        }
    }
    out
}

/// First `len` digits of the word `τ`, which drives the digit-append rule of
/// the de-mirrored construction: `τ_1 = 1` and, for `n >= 2`, `τ_n = 1` iff
/// the letter of index `⌊n/2⌋ - 1` (from 0) of the Fibonacci substitution's
/// fixed point is β.
pub fn tau_prefix(len: usize) -> Vec<u8> {
    // Fixed point of α -> αβ, β -> α, indexed from 0: α β α α β α β α α β α ...
    let needed = len / 2;
    let mut sigma = vec![false]; // false = α, true = β
    while sigma.len() < needed {
        let mut next = Vec::with_capacity(sigma.len() * 2);
        for &letter in &sigma {
            if letter {
                next.push(false);
            } else {
                next.push(false);
                next.push(true);
            }
        }
        sigma = next;
    }
    (1..=len)
        .map(|i| {
            if i == 1 {
                1
            } else {
                let idx = i / 2 - 1;
                sigma[idx] as u8
            }
        })
        .collect()
}

/// `N_n` computed without mirroring, by the duplicate-and-append algorithm.
/// Must equal [`gray_block_mirror`] for every `n`.
pub fn gray_block_demirror(n: u32) -> Result<GrayBlock> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "de-mirrored construction bootstraps at n = 2, got {n}"
        )));
    }
    // τ is consumed at global g-indices; block N_m spans F_{m+1} .. F_{m+2}-1.
    let tau = tau_prefix((fib(n + 2)? - 1) as usize);
    let mut words = vec!["10".to_string()]; // N_2
    for m in 2..n {
        let mut next = Vec::with_capacity(fib(m + 1)? as usize);
        for w in &words {
            next.push(w.clone());
            if w.ends_with('0') {
                next.push(w.clone());
            }
        }
        let start = fib(m + 2)? as usize; // g-index of the first word of N_{m+1}
        for (offset, w) in next.iter_mut().enumerate() {
            w.push(if tau[start + offset - 1] == 1 { '1' } else { '0' });
            if w.contains("11") {
                return Err(Error::InvalidZfWord(format!(
                    "de-mirrored word {w} violates the no-11 invariant"
                )));
            }
        }
        words = next;
    }
    Ok(GrayBlock { n, words })
}

/// Hamming distance after left-padding the shorter word with zeros.
pub fn hamming(w: &str, w2: &str) -> usize {
    let len = w.len().max(w2.len());
    let pad = |s: &str| -> Vec<u8> {
        let mut v = vec![b'0'; len - s.len()];
        v.extend_from_slice(s.as_bytes());
        v
    };
    pad(w)
        .iter()
        .zip(pad(w2).iter())
        .filter(|(a, b)| a != b)
        .count()
}

/// The reflected binary Gray code: `2^n` words of length `n`, consecutive
/// words differing in exactly one digit.
pub fn classical_gray(n: u32) -> Vec<String> {
    let mut list = vec![String::new()];
    for _ in 0..n {
        let mut next: Vec<String> = list.iter().map(|w| format!("0{w}")).collect();
        next.extend(list.iter().rev().map(|w| format!("1{w}")));
        list = next;
    }
    list
}
