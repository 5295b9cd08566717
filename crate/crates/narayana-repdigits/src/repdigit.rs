//! Exact repdigit construction, recognition, and enumeration.
//!
//! A repdigit in base g is d·(g^ℓ − 1)/(g − 1) with 1 ≤ d ≤ g − 1 and ℓ ≥ 1:
//! the number whose base-g expansion repeats the digit d exactly ℓ times.
//! All arithmetic is exact integer arithmetic; recognition works by digit
//! extraction, never through floating point.

use crate::{Error, Result};
use rug::ops::Pow;
use rug::Integer;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repdigit {
    digit: u32,
    length: u32,
    base: u32,
    value: Integer,
}

impl Repdigit {
    pub fn digit(&self) -> u32 {
        self.digit
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn value(&self) -> &Integer {
        &self.value
    }

    /// Base-g numeral, e.g. "333" for (3, 3, 6). Digits ≥ 10 are rendered in
    /// their decimal form separated by apostrophes, which only matters for
    /// bases above ten.
    pub fn numeral(&self) -> String {
        if self.digit < 10 {
            std::iter::repeat_n(char::from_digit(self.digit, 10).unwrap(), self.length as usize)
                .collect()
        } else {
            (0..self.length)
                .map(|_| self.digit.to_string())
                .collect::<Vec<_>>()
                .join("'")
        }
    }
}

impl PartialOrd for Repdigit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Repdigit {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then(self.base.cmp(&other.base))
    }
}

/// Build the repdigit with the given digit, length, and base.
pub fn make(digit: u32, length: u32, base: u32) -> Result<Repdigit> {
    if base < 2 {
        return Err(Error::InvalidInput(format!("base must be ≥ 2, got {base}")));
    }
    if digit < 1 || digit >= base {
        return Err(Error::InvalidInput(format!(
            "digit must be in [1, {}], got {digit}",
            base - 1
        )));
    }
    if length < 1 {
        return Err(Error::InvalidInput("length must be ≥ 1".into()));
    }
    let repunit = (Integer::from(base).pow(length) - 1u32) / (base - 1);
    Ok(Repdigit {
        digit,
        length,
        base,
        value: repunit * digit,
    })
}

/// Recognize `v` as a base-`base` repdigit, returning its (digit, length).
///
/// Absence is a normal result, not an error. The pair is unique when it
/// exists.
pub fn recognize(v: &Integer, base: u32) -> Option<(u32, u32)> {
    debug_assert!(base >= 2);
    if *v < 1u32 {
        return None;
    }
    let mut rest = v.clone();
    let base_int = Integer::from(base);
    let mut digit: Option<u32> = None;
    let mut length = 0u32;
    while rest != 0u32 {
        let (q, r) = rest.div_rem(base_int.clone());
        let d = r.to_u32().expect("remainder below base fits in u32");
        match digit {
            None => digit = Some(d),
            Some(first) if first != d => return None,
            Some(_) => {}
        }
        length += 1;
        rest = q;
    }
    let d = digit?;
    if d == 0 {
        return None;
    }
    Some((d, length))
}

/// All (base − 1)·max_length repdigits of the base, sorted by value.
pub fn enumerate(base: u32, max_length: u32) -> Vec<Repdigit> {
    assert!(base >= 2 && max_length >= 1);
    let mut out = Vec::with_capacity(((base - 1) * max_length) as usize);
    for length in 1..=max_length {
        for digit in 1..base {
            out.push(make(digit, length, base).expect("in-range parameters"));
        }
    }
    // length-major, digit-minor generation is already value-sorted: the
    // largest length-ℓ repdigit g^ℓ − 1 is below the smallest of length ℓ+1
    debug_assert!(out.windows(2).all(|w| w[0].value() < w[1].value()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_known_values() {
        assert_eq!(make(1, 2, 2).unwrap().value(), &Integer::from(3));
        assert_eq!(make(3, 3, 6).unwrap().value(), &Integer::from(129));
        for g in 2..=10u32 {
            for d in 1..g {
                assert_eq!(make(d, 1, g).unwrap().value(), &Integer::from(d));
            }
        }
        assert_eq!(make(4, 2, 6).unwrap().value(), &Integer::from(28));
        assert_eq!(make(1, 6, 2).unwrap().value(), &Integer::from(63));
    }

    #[test]
    fn make_rejects_domain_violations() {
        assert!(make(0, 3, 10).is_err());
        assert!(make(10, 3, 10).is_err());
        assert!(make(1, 0, 10).is_err());
        assert!(make(1, 3, 1).is_err());
    }

    #[test]
    fn numeral_rendering() {
        assert_eq!(make(1, 2, 2).unwrap().numeral(), "11");
        assert_eq!(make(3, 3, 6).unwrap().numeral(), "333");
        assert_eq!(make(7, 1, 8).unwrap().numeral(), "7");
    }

    #[test]
    fn recognize_known_values() {
        assert_eq!(recognize(&Integer::from(63), 2), Some((1, 6)));
        assert_eq!(recognize(&Integer::from(10), 10), None);
        assert_eq!(recognize(&Integer::from(28), 6), Some((4, 2)));
        // 44 in base 6 is "112", not a repdigit
        assert_eq!(recognize(&Integer::from(44), 6), None);
        assert_eq!(recognize(&Integer::from(0), 7), None);
        assert_eq!(recognize(&Integer::from(13), 3), Some((1, 3)));
    }

    #[test]
    fn enumerate_known_lists() {
        let vals = |g: u32, l: u32| -> Vec<u64> {
            enumerate(g, l)
                .iter()
                .map(|r| r.value().to_u64().unwrap())
                .collect()
        };
        assert_eq!(vals(2, 3), vec![1, 3, 7]);
        assert_eq!(vals(10, 1), (1..=9).collect::<Vec<_>>());
        assert_eq!(vals(6, 2), vec![1, 2, 3, 4, 5, 7, 14, 21, 28, 35]);
    }

    #[test]
    fn round_trip_and_distinct_values() {
        for g in 2..=10u32 {
            let mut seen = std::collections::HashSet::new();
            for l in 1..=50u32 {
                for d in 1..g {
                    let r = make(d, l, g).unwrap();
                    assert_eq!(recognize(r.value(), g), Some((d, l)), "g={g} d={d} l={l}");
                    assert!(seen.insert(r.value().clone()), "duplicate value in base {g}");
                }
            }
        }
    }

    #[test]
    fn value_bounds() {
        for g in [2u32, 5, 10] {
            for l in 1..=20u32 {
                for d in 1..g {
                    let r = make(d, l, g).unwrap();
                    let lower = Integer::from(g).pow(l - 1);
                    let upper = Integer::from(g).pow(l);
                    assert!(r.value() >= &lower && r.value() < &upper);
                }
            }
        }
    }
}
