//! Certified values of the cubic constants.
//!
//! The characteristic polynomial of the sequence is φ(x) = x³ − x² − 1, with
//! one real root α > 1 and a complex-conjugate pair β, γ of modulus < 1. The
//! closed Binet form of the sequence is
//!
//!   N_k = a·α^k + b·β^k + conj(b)·conj(β)^k,
//!
//! where a = α²/(α³ + 2) and b = β²/(β³ + 2). Everything downstream (growth
//! verification, residual bounds, the reduction step's τ and μ) consumes the
//! enclosures produced here, so all values carry explicit outward-rounded
//! error bounds.
//!
//! Roots are isolated numerically and then certified by a sign-change test on
//! exact interval evaluations of φ; no closed-form radicals are evaluated.

use crate::interval::{ComplexInterval, RealInterval};
use crate::{Error, Result};
use rug::float::Round;
use rug::{Float, Integer};

/// Certified enclosures of the characteristic roots and Binet coefficients.
#[derive(Clone, Debug)]
pub struct CubicConstants {
    precision_bits: u32,
    alpha: RealInterval,
    beta: ComplexInterval,
    a_coeff: RealInterval,
    b_coeff: ComplexInterval,
    error_radius: Float,
}

/// Evaluate φ(x) = x³ − x² − 1 on an interval.
fn phi(x: &RealInterval) -> RealInterval {
    let p = x.prec();
    let one = RealInterval::point(Float::with_val(p, 1));
    let x2 = x.mul(x);
    x2.mul(x).sub(&x2).sub(&one)
}

/// Compute certified constants at the requested precision.
///
/// Fails for `precision_bits < 128`: the downstream reduction step cannot
/// certify its ε signs with less, so a smaller request is a caller bug.
pub fn compute_constants(precision_bits: u32) -> Result<CubicConstants> {
    if precision_bits < 128 {
        return Err(Error::InvalidInput(format!(
            "precision_bits must be at least 128, got {precision_bits}"
        )));
    }
    let work = precision_bits + 64;

    // Newton iteration for the real root of φ, converging from 1.5.
    // φ' = 3x² − 2x is positive and bounded away from 0 near the root.
    let mut x = Float::with_val(work, 1.5);
    for _ in 0..64 {
        let x2 = x.clone().square();
        let f = Float::with_val(work, &x2 * &x) - &x2 - 1u32;
        let df = Float::with_val(work, 3u32 * &x2) - Float::with_val(work, 2u32 * &x);
        let step = f / df;
        let done = step.clone().abs() < Float::with_val(work, Float::i_exp(1, -(work as i32 - 4)));
        x -= step;
        if done {
            break;
        }
    }

    // Certify α ∈ [x − h, x + h] by a sign change of φ at the endpoints.
    let mut h = Float::with_val(work, Float::i_exp(1, -(precision_bits as i32) + 4));
    let alpha = loop {
        let lo = Float::with_val_round(work, &x - &h, Round::Down).0;
        let hi = Float::with_val_round(work, &x + &h, Round::Up).0;
        let at_lo = phi(&RealInterval::point(lo.clone()));
        let at_hi = phi(&RealInterval::point(hi.clone()));
        if at_lo.is_strictly_negative() && at_hi.is_strictly_positive() {
            break RealInterval::new(lo, hi);
        }
        h *= 2u32;
        if h > 1u32 {
            return Err(Error::PrecisionExhausted(
                "real root isolation failed to certify a bracket".into(),
            ));
        }
    };

    // β = (1 − α)/2 + i·sqrt(3α² − 2α − 1)/2 from the quadratic cofactor
    // x² + (α − 1)x + (α² − α) of φ.
    let two = RealInterval::from_u64(work, 2);
    let one = RealInterval::from_u64(work, 1);
    let three = RealInterval::from_u64(work, 3);
    let beta_re = one.sub(&alpha).div(&two);
    let disc = three
        .mul(&alpha.mul(&alpha))
        .sub(&two.mul(&alpha))
        .sub(&one);
    if !disc.is_strictly_positive() {
        return Err(Error::PrecisionExhausted(
            "discriminant of the quadratic cofactor is not certified positive".into(),
        ));
    }
    let beta_im = disc.sqrt().div(&two);
    let beta = ComplexInterval::new(beta_re, beta_im);

    // Binet coefficients a = α²/(α³ + 2), b = β²/(β³ + 2).
    let alpha_sq = alpha.mul(&alpha);
    let a_coeff = alpha_sq.div(&alpha_sq.mul(&alpha).add(&two));
    let beta_sq = beta.mul(&beta);
    let b_coeff = beta_sq.div(&beta_sq.mul(&beta).add_real(&two));

    let alpha = alpha.with_prec(precision_bits);
    let beta = ComplexInterval::new(
        beta.re.with_prec(precision_bits),
        beta.im.with_prec(precision_bits),
    );
    let a_coeff = a_coeff.with_prec(precision_bits);
    let b_coeff = ComplexInterval::new(
        b_coeff.re.with_prec(precision_bits),
        b_coeff.im.with_prec(precision_bits),
    );

    let mut error_radius = Float::with_val(64, 0);
    for r in [
        alpha.rad_upper(),
        beta.re.rad_upper(),
        beta.im.rad_upper(),
        a_coeff.rad_upper(),
        b_coeff.re.rad_upper(),
        b_coeff.im.rad_upper(),
    ] {
        error_radius = error_radius.max(&r);
    }
    let budget = Float::with_val(64, Float::i_exp(1, -(precision_bits as i32) + 8));
    if error_radius > budget {
        return Err(Error::PrecisionExhausted(format!(
            "constant enclosures wider than budget at {precision_bits} bits"
        )));
    }

    Ok(CubicConstants {
        precision_bits,
        alpha,
        beta,
        a_coeff,
        b_coeff,
        error_radius,
    })
}

impl CubicConstants {
    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// The real root α ≈ 1.46557 of x³ − x² − 1.
    pub fn alpha(&self) -> &RealInterval {
        &self.alpha
    }

    /// One complex root β; the other complex root is its conjugate.
    pub fn beta(&self) -> &ComplexInterval {
        &self.beta
    }

    pub fn gamma(&self) -> ComplexInterval {
        self.beta.conj()
    }

    /// Leading Binet coefficient a ≈ 0.41724, a root of 31x³ − 3x − 1.
    pub fn a_coeff(&self) -> &RealInterval {
        &self.a_coeff
    }

    pub fn b_coeff(&self) -> &ComplexInterval {
        &self.b_coeff
    }

    pub fn c_coeff(&self) -> ComplexInterval {
        self.b_coeff.conj()
    }

    /// Upper bound on the half-width of every stored enclosure.
    pub fn error_radius(&self) -> &Float {
        &self.error_radius
    }

    pub fn ln_alpha(&self) -> RealInterval {
        self.alpha.ln()
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha.to_f64()
    }

    pub fn ln_alpha_f64(&self) -> f64 {
        self.ln_alpha().to_f64()
    }
}

/// Logarithmic height of the reduced rational p/q: log max(|p|, q).
///
/// Rejects non-reduced input instead of silently reducing it, since a
/// non-reduced fraction here means the caller assembled the wrong number.
pub fn height_rational(p: i64, q: u64) -> Result<f64> {
    if q == 0 {
        return Err(Error::InvalidInput("zero denominator".into()));
    }
    let g = Integer::from(p).gcd(&Integer::from(q));
    if g != 1u32 {
        return Err(Error::InvalidInput(format!(
            "fraction {p}/{q} is not in lowest terms (gcd {g})"
        )));
    }
    Ok((p.unsigned_abs().max(q) as f64).ln())
}

/// Logarithmic height of α: since φ is monic with the two remaining
/// conjugates inside the unit circle, h(α) = (log α)/3.
pub fn height_alpha(c: &CubicConstants) -> f64 {
    c.ln_alpha_f64() / 3.0
}

/// Exact height of the leading Binet coefficient from its minimal
/// polynomial 31x³ − 3x − 1 (all conjugates lie inside the unit circle).
pub fn height_a_coeff_exact() -> f64 {
    31f64.ln() / 3.0
}

/// The looser constant used by the reproduction bound profile, kept separate
/// so both variants of the bound chain can be exercised.
pub fn height_a_coeff_loose() -> f64 {
    23f64.ln() / 3.0
}
