//! Reduced words in a free group.
//!
//! A word is a sequence of nonzero letters: letter `+k` is the k-th generator
//! (1-based), `-k` its inverse. A word is reduced when no adjacent pair
//! cancels. All functions keep words reduced, so `Vec` equality is group
//! equality.

use crate::error::{Error, Result};

pub type Letter = i8;

pub fn is_reduced(w: &[Letter]) -> bool {
    w.iter().all(|&l| l != 0) && w.windows(2).all(|p| p[0] != -p[1])
}

/// Concatenate and cancel at the seam.
pub fn mul(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    debug_assert!(is_reduced(a) && is_reduced(b));
    let mut out: Vec<Letter> = a.to_vec();
    for &l in b {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inv(a: &[Letter]) -> Vec<Letter> {
    a.iter().rev().map(|&l| -l).collect()
}

/// Full free reduction of an arbitrary letter sequence.
pub fn reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if l == 0 {
            continue;
        }
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// "e" for the empty word; otherwise letters, with uppercase marking inverses:
/// [1, -2, 1] over rank 2 renders as "aBa".
pub fn name(w: &[Letter]) -> String {
    if w.is_empty() {
        return "e".to_string();
    }
    w.iter()
        .map(|&l| {
            let idx = (l.unsigned_abs() - 1) as u8;
            if l > 0 {
                (b'a' + idx) as char
            } else {
                (b'A' + idx) as char
            }
        })
        .collect()
}

/// Accepts the compact letter form ("aBa", "e") and the spaced form with
/// explicit exponents ("a b^-1 a"). The result is fully reduced.
pub fn parse(s: &str, rank: usize) -> Result<Vec<Letter>> {
    let bad = |msg: String| Error::InvalidGroupSpec(msg);
    let s = s.trim();
    if s.is_empty() || s == "e" || s == "1" {
        return Ok(Vec::new());
    }
    let mut letters: Vec<Letter> = Vec::new();
    if s.contains(' ') || s.contains('^') || s.contains('*') {
        for token in s.split([' ', '*']).filter(|t| !t.is_empty()) {
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| bad(format!("bad exponent in word token {token:?}")))?;
                    (b, e)
                }
                None => (token, 1),
            };
            if base == "e" || base == "1" {
                continue;
            }
            let l = letter_of(base, rank)?;
            let step = if exp >= 0 { l } else { -l };
            for _ in 0..exp.unsigned_abs() {
                letters.push(step);
            }
        }
    } else {
        for ch in s.chars() {
            letters.push(letter_of(&ch.to_string(), rank)?);
        }
    }
    Ok(reduce(&letters))
}

fn letter_of(tok: &str, rank: usize) -> Result<Letter> {
    let mut chars = tok.chars();
    let (ch, rest) = (chars.next(), chars.next());
    let ch = match (ch, rest) {
        (Some(c), None) => c,
        _ => return Err(Error::InvalidGroupSpec(format!("bad generator token {tok:?}"))),
    };
    let (idx, sign) = if ch.is_ascii_lowercase() {
        (ch as u8 - b'a', 1i8)
    } else if ch.is_ascii_uppercase() {
        (ch as u8 - b'A', -1i8)
    } else {
        return Err(Error::InvalidGroupSpec(format!("bad generator letter {ch:?}")));
    };
    if (idx as usize) >= rank {
        return Err(Error::InvalidGroupSpec(format!(
            "generator {ch:?} is outside rank {rank}"
        )));
    }
    Ok(sign * (idx as i8 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_cancels_at_the_seam() {
        // (a b) (b^-1 a) = a a
        assert_eq!(mul(&[1, 2], &[-2, 1]), vec![1, 1]);
        // full collapse to the empty word
        assert_eq!(mul(&[1, 2], &[-2, -1]), Vec::<Letter>::new());
    }

    #[test]
    fn inverse_reverses_and_negates() {
        let w = vec![1, -2, 1];
        assert_eq!(inv(&w), vec![-1, 2, -1]);
        assert_eq!(mul(&w, &inv(&w)), Vec::<Letter>::new());
    }

    #[test]
    fn names_round_trip() {
        for w in [vec![], vec![1], vec![-1], vec![1, -2, 1], vec![2, 2, -1]] {
            assert_eq!(parse(&name(&w), 2).unwrap(), w);
        }
        assert_eq!(parse("a b^-1 a", 2).unwrap(), vec![1, -2, 1]);
        assert_eq!(parse("a^3", 1).unwrap(), vec![1, 1, 1]);
        assert_eq!(parse("a^-2", 1).unwrap(), vec![-1, -1]);
        assert!(parse("c", 2).is_err());
        assert!(parse("a?b", 2).is_err());
    }
}
