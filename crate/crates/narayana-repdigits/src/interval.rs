//! Outward-rounded interval arithmetic over MPFR floats.
//!
//! Every value is a closed interval `[lo, hi]` of arbitrary-precision floats
//! whose endpoints are rounded outward, so the exact real number is always
//! contained in the enclosure. Comparisons are certified: a predicate is
//! reported true only when it holds for every point of the enclosure, and
//! code that needs a definite answer treats an overlapping comparison as
//! "undecided" rather than guessing.
//!
//! This is deliberately a small fit-for-purpose kit, not a general interval
//! library: only the operations the solver pipeline needs are implemented
//! (field operations, `ln`/`exp`/`sqrt`, integer powers of nonnegative
//! intervals, and distance to the nearest integer).

use rug::float::Round;
use rug::ops::PowAssignRound;
use rug::{Float, Integer, Rational};
use std::fmt;

/// A closed interval of reals with outward-rounded endpoints.
#[derive(Clone, PartialEq)]
pub struct RealInterval {
    lo: Float,
    hi: Float,
}

impl fmt::Debug for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            self.lo.to_string_radix(10, Some(20)),
            self.hi.to_string_radix(10, Some(20))
        )
    }
}

impl RealInterval {
    pub fn new(lo: Float, hi: Float) -> Self {
        assert!(lo.is_finite() && hi.is_finite(), "endpoints must be finite");
        assert!(lo <= hi, "inverted interval: {:?} > {:?}", lo, hi);
        Self { lo, hi }
    }

    /// Degenerate interval holding a single exactly-representable value.
    pub fn point(value: Float) -> Self {
        assert!(value.is_finite());
        Self { lo: value.clone(), hi: value }
    }

    pub fn from_integer(prec: u32, n: &Integer) -> Self {
        let lo = Float::with_val_round(prec, n, Round::Down).0;
        let hi = Float::with_val_round(prec, n, Round::Up).0;
        Self { lo, hi }
    }

    pub fn from_u64(prec: u32, n: u64) -> Self {
        Self::from_integer(prec, &Integer::from(n))
    }

    /// Exact embedding of an f64 (every finite f64 is representable).
    pub fn from_f64(prec: u32, v: f64) -> Self {
        assert!(prec >= 53);
        Self::point(Float::with_val(prec, v))
    }

    pub fn from_rational(prec: u32, r: &Rational) -> Self {
        let lo = Float::with_val_round(prec, r, Round::Down).0;
        let hi = Float::with_val_round(prec, r, Round::Up).0;
        Self { lo, hi }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    /// Re-round to a (usually lower) precision, widening outward.
    pub fn with_prec(&self, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, &self.lo, Round::Down).0;
        let hi = Float::with_val_round(prec, &self.hi, Round::Up).0;
        Self { lo, hi }
    }

    pub fn mid(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, &self.lo + &self.hi) / 2u32
    }

    /// Upper bound on the half-width of the enclosure.
    pub fn rad_upper(&self) -> Float {
        let p = self.prec();
        let w = Float::with_val_round(p, &self.hi - &self.lo, Round::Up).0;
        Float::with_val_round(64, w / 2u32, Round::Up).0
    }

    pub fn width_upper(&self) -> Float {
        let p = self.prec();
        Float::with_val_round(p, &self.hi - &self.lo, Round::Up).0
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0u32 && self.hi >= 0u32
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo > 0u32
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi < 0u32
    }

    /// Certified `self < other` (true only if it holds for all points).
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    pub fn neg(&self) -> Self {
        Self { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let lo = Float::with_val_round(p, &self.lo + &rhs.lo, Round::Down).0;
        let hi = Float::with_val_round(p, &self.hi + &rhs.hi, Round::Up).0;
        Self { lo, hi }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let lo = Float::with_val_round(p, &self.lo - &rhs.hi, Round::Down).0;
        let hi = Float::with_val_round(p, &self.hi - &rhs.lo, Round::Up).0;
        Self { lo, hi }
    }

    pub fn sub_integer(&self, n: &Integer) -> Self {
        let p = self.prec();
        let lo = Float::with_val_round(p, &self.lo - n, Round::Down).0;
        let hi = Float::with_val_round(p, &self.hi - n, Round::Up).0;
        Self { lo, hi }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let down = Float::with_val_round(p, a * b, Round::Down).0;
            let up = Float::with_val_round(p, a * b, Round::Up).0;
            lo = Some(match lo {
                Some(cur) => cur.min(&down),
                None => down,
            });
            hi = Some(match hi {
                Some(cur) => cur.max(&up),
                None => up,
            });
        }
        Self { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    pub fn mul_integer(&self, n: &Integer) -> Self {
        let p = self.prec();
        if n.is_negative() {
            return self.neg().mul_integer(&n.clone().abs());
        }
        let lo = Float::with_val_round(p, &self.lo * n, Round::Down).0;
        let hi = Float::with_val_round(p, &self.hi * n, Round::Up).0;
        Self { lo, hi }
    }

    pub fn mul_u64(&self, n: u64) -> Self {
        self.mul_integer(&Integer::from(n))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(
            !rhs.contains_zero(),
            "interval division by an enclosure containing zero"
        );
        let p = self.prec().max(rhs.prec());
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let down = Float::with_val_round(p, a / b, Round::Down).0;
            let up = Float::with_val_round(p, a / b, Round::Up).0;
            lo = Some(match lo {
                Some(cur) => cur.min(&down),
                None => down,
            });
            hi = Some(match hi {
                Some(cur) => cur.max(&up),
                None => up,
            });
        }
        Self { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.contains_zero(), "reciprocal of an enclosure containing zero");
        let p = self.prec();
        let one = Float::with_val(p, 1);
        let lo = Float::with_val_round(p, &one / &self.hi, Round::Down).0;
        let hi = Float::with_val_round(p, &one / &self.lo, Round::Up).0;
        Self { lo, hi }
    }

    pub fn abs(&self) -> Self {
        if self.lo >= 0u32 {
            self.clone()
        } else if self.hi <= 0u32 {
            self.neg()
        } else {
            let hi = self.hi.clone().max(&(-self.lo.clone()));
            Self { lo: Float::with_val(self.prec(), 0), hi }
        }
    }

    pub fn square(&self) -> Self {
        let a = self.abs();
        a.mul(&a)
    }

    /// Natural logarithm; requires a strictly positive enclosure.
    pub fn ln(&self) -> Self {
        assert!(self.is_strictly_positive(), "ln of a non-positive enclosure");
        let p = self.prec();
        let mut lo = Float::with_val(p, &self.lo);
        lo.ln_round(Round::Down);
        let mut hi = Float::with_val(p, &self.hi);
        hi.ln_round(Round::Up);
        Self { lo, hi }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let mut lo = Float::with_val(p, &self.lo);
        lo.exp_round(Round::Down);
        let mut hi = Float::with_val(p, &self.hi);
        hi.exp_round(Round::Up);
        Self { lo, hi }
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.lo >= 0u32, "sqrt of a negative enclosure");
        let p = self.prec();
        let mut lo = Float::with_val(p, &self.lo);
        lo.sqrt_round(Round::Down);
        let mut hi = Float::with_val(p, &self.hi);
        hi.sqrt_round(Round::Up);
        Self { lo, hi }
    }

    /// Integer power of a nonnegative interval (monotone in the base).
    pub fn pow_u32(&self, k: u32) -> Self {
        assert!(self.lo >= 0u32, "pow_u32 requires a nonnegative enclosure");
        let p = self.prec();
        if k == 0 {
            return Self::point(Float::with_val(p, 1));
        }
        let mut lo = Float::with_val(p, &self.lo);
        lo.pow_assign_round(k, Round::Down);
        let mut hi = Float::with_val(p, &self.hi);
        hi.pow_assign_round(k, Round::Up);
        Self { lo, hi }
    }

    /// Distance from the enclosed real to the nearest integer, as an enclosure.
    ///
    /// Sound for any input: if the enclosure is wider than 1 the result is the
    /// trivial `[0, 1/2]`.
    pub fn dist_to_nearest_integer(&self) -> Self {
        let p = self.prec() + 4;
        let zero = Float::with_val(p, 0);
        let half = Float::with_val(p, 0.5);
        if self.width_upper() >= 1u32 {
            return Self { lo: zero, hi: half };
        }
        let n = self
            .mid()
            .to_integer()
            .expect("finite interval midpoint rounds to an integer");
        // d encloses x − n with |d| < 3/2; the distance of x to the nearest
        // integer is the tent map of d (zeros at −1, 0, 1; peaks 1/2 at ±1/2).
        let d = self.with_prec(p).sub_integer(&n);
        let crosses = |v: i32| d.lo <= v && d.hi >= v;
        let min_is_zero = crosses(-1) || crosses(0) || crosses(1);
        let covers_peak = (d.lo <= -0.5f64 && d.hi >= -0.5f64) || (d.lo <= 0.5f64 && d.hi >= 0.5f64);

        // The endpoints of d are exact floats with |d| < 3/2, so t − k for
        // the nearest integer k ∈ {−1, 0, 1} fits in p + 8 bits exactly; the
        // Equal ordering asserts that no rounding occurred.
        let tent = |t: &Float| -> Float {
            let k = t.clone().to_integer().expect("finite");
            let (mut v, ord) = Float::with_val_round(p + 8, t - &k, Round::Nearest);
            assert_eq!(ord, std::cmp::Ordering::Equal, "tent evaluation must be exact");
            v.abs_mut();
            v
        };
        let t_lo = tent(&d.lo);
        let t_hi = tent(&d.hi);
        let lo = if min_is_zero {
            zero
        } else {
            t_lo.clone().min(&t_hi)
        };
        let hi = if covers_peak { half } else { t_lo.max(&t_hi).min(&half) };
        Self { lo, hi }
    }
}

/// Rectangular complex interval: independent enclosures for both parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexInterval {
    pub fn new(re: RealInterval, im: RealInterval) -> Self {
        Self { re, im }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    pub fn add_real(&self, rhs: &RealInterval) -> Self {
        Self { re: self.re.add(rhs), im: self.im.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        Self { re, im }
    }

    pub fn mul_real(&self, rhs: &RealInterval) -> Self {
        Self { re: self.re.mul(rhs), im: self.im.mul(rhs) }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let den = rhs.re.square().add(&rhs.im.square());
        let re = self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im)).div(&den);
        let im = self.im.mul(&rhs.re).sub(&self.re.mul(&rhs.im)).div(&den);
        Self { re, im }
    }

    pub fn norm_sq(&self) -> RealInterval {
        self.re.square().add(&self.im.square())
    }

    pub fn pow_u32(&self, k: u32) -> Self {
        let p = self.re.prec();
        let mut acc = ComplexInterval::new(
            RealInterval::point(Float::with_val(p, 1)),
            RealInterval::point(Float::with_val(p, 0)),
        );
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(prec: u32, v: f64) -> RealInterval {
        RealInterval::from_f64(prec, v)
    }

    #[test]
    fn arithmetic_encloses_exact_results() {
        let a = ri(128, 1.5);
        let b = ri(128, 2.25);
        let s = a.add(&b);
        assert!(s.lo() <= &3.75 && s.hi() >= &3.75);
        let m = a.mul(&b);
        assert!(m.lo() <= &3.375 && m.hi() >= &3.375);
        let d = b.div(&a);
        assert!(d.lo() <= &1.5 && d.hi() >= &1.5);
    }

    #[test]
    fn multiplication_sign_cases() {
        let cases = [(-3.0, -2.0), (-3.0, 2.0), (2.0, 3.0)];
        for (alo, ahi) in cases {
            for (blo, bhi) in cases {
                let a = RealInterval::new(
                    Float::with_val(96, alo),
                    Float::with_val(96, ahi),
                );
                let b = RealInterval::new(
                    Float::with_val(96, blo),
                    Float::with_val(96, bhi),
                );
                let m = a.mul(&b);
                // sample the corners; all products must be enclosed
                for x in [alo, ahi] {
                    for y in [blo, bhi] {
                        assert!(m.lo() <= &(x * y) && m.hi() >= &(x * y));
                    }
                }
            }
        }
    }

    #[test]
    fn ln_exp_round_trip_encloses() {
        let a = ri(256, 7.0);
        let back = a.ln().exp();
        assert!(back.lo() <= &7.0 && back.hi() >= &7.0);
        assert!(back.width_upper().to_f64() < 1e-60);
    }

    #[test]
    fn dist_to_nearest_integer_cases() {
        // 3.25 → 0.25
        let d = ri(128, 3.25).dist_to_nearest_integer();
        assert!(d.lo() <= &0.25 && d.hi() >= &0.25);
        assert!(d.width_upper().to_f64() < 1e-30);
        // −2.75 → 0.25
        let d = ri(128, -2.75).dist_to_nearest_integer();
        assert!(d.lo() <= &0.25 && d.hi() >= &0.25);
        // exactly an integer → 0
        let d = ri(128, 42.0).dist_to_nearest_integer();
        assert!(d.lo().is_zero());
        // exactly a half-integer → 1/2
        let d = ri(128, 6.5).dist_to_nearest_integer();
        assert!(d.hi() >= &0.5 && d.lo() <= &0.5);
        // wide interval → trivial [0, 1/2]
        let w = RealInterval::new(Float::with_val(64, 0.1), Float::with_val(64, 5.3));
        let d = w.dist_to_nearest_integer();
        assert!(d.lo().is_zero() && d.hi() == &0.5);
        // interval straddling an integer boundary → lower bound 0
        let s = RealInterval::new(Float::with_val(64, 3.999), Float::with_val(64, 4.001));
        let d = s.dist_to_nearest_integer();
        assert!(d.lo().is_zero());
        assert!(d.hi().to_f64() <= 0.0011);
    }

    #[test]
    fn complex_mul_div_inverse() {
        let z = ComplexInterval::new(ri(192, 0.3), ri(192, -1.7));
        let w = ComplexInterval::new(ri(192, -2.1), ri(192, 0.9));
        let back = z.mul(&w).div(&w);
        assert!(back.re.lo() <= &0.3 && back.re.hi() >= &0.3);
        assert!(back.im.lo() <= &-1.7 && back.im.hi() >= &-1.7);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let z = ComplexInterval::new(ri(192, 0.4), ri(192, 0.25));
        let mut acc = z.clone();
        for _ in 1..7 {
            acc = acc.mul(&z);
        }
        let fast = z.pow_u32(7);
        // both enclose the same exact value
        assert!(fast.re.lo() <= acc.re.hi() && acc.re.lo() <= fast.re.hi());
        let r = ri(160, 1.25).pow_u32(10);
        let exact = 1.25f64.powi(10);
        assert!(r.lo() <= &exact && r.hi() >= &exact);
    }
}
