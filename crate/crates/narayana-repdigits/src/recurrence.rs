//! Exact integer sequence N_k = N_{k−1} + N_{k−3} (N₀ = 0, N₁ = N₂ = 1) and
//! certified growth/residual verification against the Binet form.
//!
//! Exact terms come only from the integer recurrence; the Binet expression is
//! never used to produce values, only to bound residuals.

use crate::algebraic::CubicConstants;
use crate::interval::RealInterval;
use crate::{Error, Result};
use rug::{Float, Integer};
use std::io::Write;

/// Exact table of sequence values for indices 0..=k_max.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NarayanaTable {
    values: Vec<Integer>,
}

/// Build the table up to and including `k_max`.
pub fn narayana_upto(k_max: u64) -> NarayanaTable {
    let n = (k_max + 1) as usize;
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let v = match k {
            0 => Integer::from(0),
            1 | 2 => Integer::from(1),
            _ => Integer::from(&values[k - 1] + &values[k - 3]),
        };
        values.push(v);
    }
    NarayanaTable { values }
}

impl NarayanaTable {
    pub fn k_max(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn get(&self, k: u64) -> &Integer {
        &self.values[k as usize]
    }

    pub fn values(&self) -> &[Integer] {
        &self.values
    }

    /// Export as CSV (`k,value` with a header row).
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "k,value")?;
        for (k, v) in self.values.iter().enumerate() {
            writeln!(out, "{k},{v}")?;
        }
        Ok(())
    }
}

/// Outcome of checking α^(n−2) ≤ N_n ≤ α^(n−1) exactly for 1 ≤ n ≤ k_max.
///
/// The two inequalities are reported separately because they do not have the
/// same validity range: the upper bound holds everywhere we have checked,
/// while the lower bound fails for every n ≥ 3 (the Binet coefficient puts
/// N_n ≈ 0.896·α^(n−2) asymptotically). Callers that need a true lower bound
/// should use α^(n−3) ≤ N_n, which `lower_shifted_failures` tracks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrowthReport {
    pub checked_upto: u64,
    pub lower_failures: Vec<u64>,
    pub upper_failures: Vec<u64>,
    pub lower_shifted_failures: Vec<u64>,
    pub undecided: Vec<u64>,
}

impl GrowthReport {
    pub fn all_hold(&self) -> bool {
        self.lower_failures.is_empty()
            && self.upper_failures.is_empty()
            && self.undecided.is_empty()
    }

    /// Largest prefix 1..=n on which both stated inequalities hold.
    pub fn valid_prefix(&self) -> u64 {
        let first_bad = self
            .lower_failures
            .iter()
            .chain(&self.upper_failures)
            .chain(&self.undecided)
            .min()
            .copied();
        match first_bad {
            Some(n) => n - 1,
            None => self.checked_upto,
        }
    }
}

/// Three-way certified comparison outcome.
enum Cmp {
    Holds,
    Fails,
    Undecided,
}

/// Compare α-powers against the exact table with certified enclosures.
///
/// Zero exponents are compared exactly (α⁰ = 1), so the equality cases at
/// n = 1, 2, 3 are decided rather than reported as undecidable.
pub fn growth_report(table: &NarayanaTable, c: &CubicConstants) -> GrowthReport {
    let k_max = table.k_max();
    let mut report = GrowthReport {
        checked_upto: k_max,
        ..GrowthReport::default()
    };
    let alpha = c.alpha();
    let inv = alpha.recip();
    let inv_sq = inv.square();

    // pows[e − 1] encloses α^e for e ≥ 1
    let mut pows: Vec<RealInterval> = Vec::new();
    if k_max >= 2 {
        let mut cur = alpha.clone();
        for _ in 1..k_max {
            pows.push(cur.clone());
            cur = cur.mul(alpha);
        }
    }

    // certified α^e ≤ v
    let le = |pow: &RealInterval, v: &Integer| -> Cmp {
        if pow.hi() <= v {
            Cmp::Holds
        } else if pow.lo() > v {
            Cmp::Fails
        } else {
            Cmp::Undecided
        }
    };
    let one_le = |v: &Integer| -> Cmp {
        if v >= &1u32 {
            Cmp::Holds
        } else {
            Cmp::Fails
        }
    };
    // certified v ≤ α^e
    let ge = |pow: &RealInterval, v: &Integer| -> Cmp {
        if pow.lo() >= v {
            Cmp::Holds
        } else if pow.hi() < v {
            Cmp::Fails
        } else {
            Cmp::Undecided
        }
    };

    for n in 1..=k_max {
        let v = table.get(n);
        // lower: α^(n−2) ≤ N_n
        let lower = match n {
            1 => le(&inv, v),
            2 => one_le(v),
            _ => le(&pows[n as usize - 3], v),
        };
        // shifted lower: α^(n−3) ≤ N_n
        let shifted = match n {
            1 => le(&inv_sq, v),
            2 => le(&inv, v),
            3 => one_le(v),
            _ => le(&pows[n as usize - 4], v),
        };
        // upper: N_n ≤ α^(n−1)
        let upper = match n {
            1 => {
                if v <= &1u32 {
                    Cmp::Holds
                } else {
                    Cmp::Fails
                }
            }
            _ => ge(&pows[n as usize - 2], v),
        };
        match lower {
            Cmp::Holds => {}
            Cmp::Fails => report.lower_failures.push(n),
            Cmp::Undecided => report.undecided.push(n),
        }
        match shifted {
            Cmp::Holds => {}
            Cmp::Fails => report.lower_shifted_failures.push(n),
            Cmp::Undecided => report.undecided.push(n),
        }
        match upper {
            Cmp::Holds => {}
            Cmp::Fails => report.upper_failures.push(n),
            Cmp::Undecided => report.undecided.push(n),
        }
    }
    report.undecided.sort_unstable();
    report.undecided.dedup();
    report
}

/// Strict verifier: true iff both inequalities hold for all 1 ≤ n ≤ k_max.
/// Undecidable comparisons trigger precision doubling up to 4096 bits before
/// being treated as failures. Returns the first offending index on failure.
pub fn verify_growth(k_max: u64, c: &CubicConstants) -> (bool, Option<u64>) {
    let table = narayana_upto(k_max);
    let mut prec = c.precision_bits();
    loop {
        let constants;
        let current = if prec == c.precision_bits() {
            c
        } else {
            constants = match crate::algebraic::compute_constants(prec) {
                Ok(v) => v,
                Err(_) => return (false, None),
            };
            &constants
        };
        let report = growth_report(&table, current);
        if report.undecided.is_empty() {
            let first = report
                .lower_failures
                .iter()
                .chain(&report.upper_failures)
                .min()
                .copied();
            return (first.is_none(), first);
        }
        if prec >= 4096 {
            return (false, report.undecided.first().copied());
        }
        prec = (prec * 2).min(4096);
    }
}

/// Upper enclosure of the Binet residual |N_k − a·α^k|.
///
/// The contract downstream is residual < α^(−k/2); the subtraction is done at
/// a working precision large enough to embed N_k exactly, so the only widths
/// involved come from the constants' enclosures. Fails with
/// `PrecisionExhausted` when the enclosure is too wide to certify even its
/// leading digit.
pub fn binet_residual(k: u64, c: &CubicConstants) -> Result<Float> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let table = narayana_upto(k);
    binet_residual_from_table(k, c, &table)
}

/// [`binet_residual`] with the retry protocol: starting from the given
/// constants, double the constant precision (up to 4096 bits) whenever the
/// enclosure is too wide to certify. Returns the residual upper bound and
/// the precision that sufficed. The enclosure of α^k loses about 0.83·k bits
/// against the α^(−k/2) scale, so k near 1000 genuinely needs ~1024-bit
/// constants no matter how tight the arithmetic is.
pub fn binet_residual_certified(
    k: u64,
    c: &CubicConstants,
    table: &NarayanaTable,
) -> Result<(Float, u32)> {
    let mut prec = c.precision_bits();
    let mut current: Option<CubicConstants> = None;
    loop {
        let cref = current.as_ref().unwrap_or(c);
        match binet_residual_from_table(k, cref, table) {
            Ok(v) => return Ok((v, prec)),
            Err(Error::PrecisionExhausted(_)) if prec < 4096 => {
                prec = (prec * 2).min(4096);
                current = Some(crate::algebraic::compute_constants(prec)?);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Same as [`binet_residual`] but reusing a prebuilt table.
pub fn binet_residual_from_table(
    k: u64,
    c: &CubicConstants,
    table: &NarayanaTable,
) -> Result<Float> {
    let n_k = table.get(k);
    let needed = n_k.significant_bits() + 64;
    let work = c.precision_bits().max(needed);
    let alpha = c.alpha().with_prec(work);
    let a = c.a_coeff().with_prec(work);
    let mut pow = RealInterval::from_u64(work, 1);
    let mut e = k;
    let mut base = alpha;
    // square-and-multiply keeps the enclosure growth logarithmic in k
    while e > 0 {
        if e & 1 == 1 {
            pow = pow.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    let resid = a.mul(&pow).sub(&RealInterval::from_integer(work, n_k)).abs();
    let width = resid.width_upper();
    let upper = resid.hi().clone();
    if width.is_sign_positive() && !upper.is_zero() && width > upper.clone() / 2u32 {
        return Err(Error::PrecisionExhausted(format!(
            "residual enclosure at k={k} too wide to certify"
        )));
    }
    Ok(upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::compute_constants;

    // hand-unrolled values for k = 0..20
    const FIRST_21: [u64; 21] = [
        0, 1, 1, 1, 2, 3, 4, 6, 9, 13, 19, 28, 41, 60, 88, 129, 189, 277, 406, 595, 872,
    ];

    #[test]
    fn table_matches_hand_unrolled_prefix() {
        let t = narayana_upto(20);
        for (k, expect) in FIRST_21.iter().enumerate() {
            assert_eq!(t.get(k as u64), &Integer::from(*expect), "k={k}");
        }
        assert_eq!(t.get(16), &Integer::from(189));
        assert_eq!(t.get(13), &Integer::from(60));
        assert_eq!(t.get(8), &Integer::from(9));
    }

    #[test]
    fn degenerate_table() {
        let t = narayana_upto(0);
        assert_eq!(t.values(), &[Integer::from(0)]);
    }

    #[test]
    fn prefix_consistency() {
        let small = narayana_upto(40);
        let big = narayana_upto(300);
        assert_eq!(&big.values()[..=40], small.values());
    }

    #[test]
    fn strictly_increasing_from_four() {
        let t = narayana_upto(500);
        for k in 4..=500u64 {
            assert!(t.get(k) > t.get(k - 1), "not increasing at {k}");
        }
    }

    #[test]
    fn growth_lower_bound_fails_from_three() {
        let c = compute_constants(256).unwrap();
        let t = narayana_upto(100);
        let r = growth_report(&t, &c);
        assert!(r.undecided.is_empty());
        assert!(r.upper_failures.is_empty());
        // stated lower bound holds only at n = 1, 2
        assert_eq!(r.lower_failures, (3..=100).collect::<Vec<_>>());
        // the shifted lower bound α^(n−3) ≤ N_n holds everywhere
        assert!(r.lower_shifted_failures.is_empty());
        assert_eq!(r.valid_prefix(), 2);
    }

    #[test]
    fn growth_verifier_reports_first_offender() {
        let c = compute_constants(256).unwrap();
        let (ok2, off2) = verify_growth(2, &c);
        assert!(ok2 && off2.is_none());
        let (ok, off) = verify_growth(1000, &c);
        assert!(!ok);
        assert_eq!(off, Some(3));
    }

    #[test]
    fn growth_at_sixteen_matches_exact_arithmetic() {
        // α^14 ≈ 210.9 exceeds N_16 = 189, so the stated lower bound fails
        // there; the upper bound α^15 ≈ 309 holds.
        let c = compute_constants(256).unwrap();
        let t = narayana_upto(16);
        let r = growth_report(&t, &c);
        assert!(r.lower_failures.contains(&16));
        assert!(!r.upper_failures.contains(&16));
        let a14 = c.alpha().pow_u32(14);
        assert!(a14.lo() > t.get(16));
    }

    #[test]
    fn binet_residual_contract_small_k() {
        let c = compute_constants(512).unwrap();
        let t = narayana_upto(128);
        for k in [1u64, 10, 100] {
            let resid = binet_residual_from_table(k, &c, &t).unwrap();
            let bound = {
                // α^(−k/2) lower enclosure: use α^k then sqrt then recip
                let p = c.alpha().pow_u32(k as u32).sqrt().recip();
                p.lo().clone()
            };
            assert!(resid < bound, "k={k}: {resid} !< {bound}");
        }
        // cross-check against a plain f64 evaluation for small k
        let alpha = c.alpha_f64();
        let a = c.a_coeff().to_f64();
        for k in 1..=30u64 {
            let direct = (t.get(k).to_f64() - a * alpha.powi(k as i32)).abs();
            let certified = binet_residual_from_table(k, &c, &t).unwrap().to_f64();
            assert!((direct - certified).abs() < 1e-9, "k={k}");
        }
    }

    #[test]
    fn binet_residual_rejects_k_zero() {
        let c = compute_constants(256).unwrap();
        assert!(binet_residual(0, &c).is_err());
    }

    #[test]
    fn binet_residual_escalates_precision_when_needed() {
        // at 512-bit constants the k = 700 enclosure is too wide; the retry
        // protocol resolves it one doubling later
        let c = compute_constants(512).unwrap();
        let t = narayana_upto(700);
        assert!(matches!(
            binet_residual_from_table(700, &c, &t),
            Err(Error::PrecisionExhausted(_))
        ));
        let (resid, prec) = binet_residual_certified(700, &c, &t).unwrap();
        assert_eq!(prec, 1024);
        let c1024 = compute_constants(1024).unwrap();
        let bound = c1024.alpha().pow_u32(700).sqrt().recip();
        assert!(resid < *bound.lo());
    }

    #[test]
    fn digit_length_growth() {
        let c = compute_constants(256).unwrap();
        let t = narayana_upto(400);
        let ln_alpha = c.ln_alpha_f64();
        for k in 50..=400u64 {
            let ln_nk = t.get(k).to_f64().ln();
            assert!((ln_nk - k as f64 * ln_alpha).abs() < 2.0, "k={k}");
        }
    }

    #[test]
    fn csv_export() {
        let t = narayana_upto(5);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "k,value\n0,0\n1,1\n2,1\n3,1\n4,2\n5,3\n");
    }
}
