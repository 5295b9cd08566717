//! Certified continued-fraction machinery and the Dujella–Pethő reduction.
//!
//! The reduction criterion: let τ be irrational, p/q a convergent of τ with
//! q > 6M, and ε := ‖μq‖ − M·‖τq‖ (‖·‖ distance to the nearest integer).
//! If ε > 0 then 0 < |uτ − v + μ| < A·B^(−w) has no solution in positive
//! integers with u ≤ M and w ≥ log(Aq/ε)/log B.
//!
//! Soundness rests on two legs:
//!
//! * Partial quotients are extracted from an exact rational enclosure of τ,
//!   emitting a quotient only while both endpoints agree on it, so every
//!   returned convergent is unconditionally correct. On top of that the
//!   whole list is recomputed at doubled precision and compared.
//! * Every ε sign decision is made on an interval enclosure that must
//!   exclude zero; ‖·‖ itself returns an enclosure.
//!
//! The three sweeps instantiate the criterion per digit combination (and per
//! ℓ, then per ℓ and m), mirroring the three linear forms of the bound
//! chain, and reduce the 10^54-scale absolute bounds to a few hundred.

use crate::algebraic::{compute_constants, CubicConstants};
use crate::interval::RealInterval;
use crate::{Error, Result};
use rayon::prelude::*;
use rug::float::Round;
use rug::ops::Pow;
use rug::Integer;
use serde::Serialize;
use std::collections::BTreeMap;

/// One convergent p/q of a continued-fraction expansion, with its index in
/// the expansion (index 0 is the integer part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    pub p: Integer,
    pub q: Integer,
}

const MAX_PARTIAL_QUOTIENTS: usize = 100_000;

/// Convergents of the real enclosed by `x`, in increasing q, up to and
/// including the first with q > `q_target`.
///
/// A partial quotient is emitted only when both endpoints of the enclosure
/// agree on it, so the output is certified regardless of how `x` was
/// computed. If the endpoints disagree before the target is reached the
/// enclosure was too wide: the caller retries at higher precision. Exact
/// rational inputs terminate with their full finite expansion.
pub fn continued_fraction_convergents(
    x: &RealInterval,
    q_target: &Integer,
) -> Result<Vec<Convergent>> {
    let mut lo = x
        .lo()
        .to_rational()
        .ok_or_else(|| Error::InvalidInput("non-finite enclosure".into()))?;
    let mut hi = x
        .hi()
        .to_rational()
        .ok_or_else(|| Error::InvalidInput("non-finite enclosure".into()))?;
    let exact_input = lo == hi;

    let mut out = Vec::new();
    // convergent recurrence state: h_t = a_t·h_{t−1} + h_{t−2}
    let mut h_prev2 = Integer::from(0);
    let mut k_prev2 = Integer::from(1);
    let mut h_prev1 = Integer::from(1);
    let mut k_prev1 = Integer::from(0);

    for index in 0..MAX_PARTIAL_QUOTIENTS {
        let a_lo = Integer::from(lo.floor_ref());
        let a_hi = Integer::from(hi.floor_ref());
        if a_lo != a_hi {
            return Err(Error::PrecisionExhausted(format!(
                "partial quotient {index} undetermined (endpoints floor to {a_lo} and {a_hi})"
            )));
        }
        let a = a_lo;
        let h = Integer::from(&a * &h_prev1) + &h_prev2;
        let k = Integer::from(&a * &k_prev1) + &k_prev2;
        out.push(Convergent {
            index,
            p: h.clone(),
            q: k.clone(),
        });
        if &k > q_target {
            return Ok(out);
        }
        h_prev2 = std::mem::replace(&mut h_prev1, h);
        k_prev2 = std::mem::replace(&mut k_prev1, k);

        lo -= &a;
        hi -= &a;
        if exact_input {
            if lo.cmp0() == std::cmp::Ordering::Equal {
                // finite exact expansion
                return Ok(out);
            }
            let inv = lo.clone().recip();
            lo = inv.clone();
            hi = inv;
            continue;
        }
        if lo.cmp0() == std::cmp::Ordering::Equal || hi.cmp0() == std::cmp::Ordering::Equal {
            return Err(Error::PrecisionExhausted(format!(
                "enclosure endpoint hit an integer after quotient {index}"
            )));
        }
        // inversion reverses the order of the (positive) fractional parts
        let new_lo = hi.recip();
        let new_hi = lo.recip();
        lo = new_lo;
        hi = new_hi;
    }
    Err(Error::PrecisionExhausted(
        "partial quotient budget exhausted".into(),
    ))
}

/// One instance of the reduction criterion.
#[derive(Clone, Debug)]
pub struct ReductionProblem {
    pub tau: RealInterval,
    pub mu: RealInterval,
    /// The A parameter (certified, since it involves log α).
    pub a_param: RealInterval,
    /// The B parameter; always the base here.
    pub b_base: u32,
    /// Bound M on the integer coefficient u.
    pub m_limit: Integer,
    pub label: String,
}

/// The convergent certifying a reduction instance.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergentWitness {
    pub index: usize,
    #[serde(serialize_with = "crate::report::integer_as_string")]
    pub p: Integer,
    #[serde(serialize_with = "crate::report::integer_as_string")]
    pub q: Integer,
    /// Certified lower bound on ε.
    pub epsilon: f64,
    pub epsilon_upper: f64,
    /// Upper bound on log(Aq/ε)/log B: no solution has w at or above this.
    pub w_bound: f64,
}

/// Evaluate ε at one convergent; `m_norm_tau` is M·‖τq‖, precomputed by the
/// sweeps since it does not depend on μ.
fn witness_at(
    mu: &RealInterval,
    a_param: &RealInterval,
    b_base: u32,
    conv: &Convergent,
    m_norm_tau: &RealInterval,
) -> Option<ConvergentWitness> {
    let norm_mu = mu.mul_integer(&conv.q).dist_to_nearest_integer();
    let eps = norm_mu.sub(m_norm_tau);
    if !eps.is_strictly_positive() {
        return None;
    }
    debug_assert_eq!(conv.p.clone().gcd(&conv.q), 1u32);
    let ln_b = RealInterval::from_u64(mu.prec(), b_base as u64).ln();
    let w = a_param.mul_integer(&conv.q).div(&eps).ln().div(&ln_b);
    Some(ConvergentWitness {
        index: conv.index,
        p: conv.p.clone(),
        q: conv.q.clone(),
        epsilon: eps.lo().to_f64_round(Round::Down),
        epsilon_upper: eps.hi().to_f64_round(Round::Up),
        w_bound: w.hi().to_f64_round(Round::Up),
    })
}

/// Evaluate ε at every convergent with q > 6M and return all certified
/// witnesses (in convergent order). Each one excludes w at or above its own
/// threshold, so any of them — in particular the one with the smallest
/// threshold — bounds the instance.
pub fn evaluate_instance(
    problem: &ReductionProblem,
    convergents: &[Convergent],
) -> Vec<ConvergentWitness> {
    let six_m = Integer::from(6) * &problem.m_limit;
    convergents
        .iter()
        .filter(|c| c.q > six_m)
        .filter_map(|conv| {
            let m_norm_tau = problem
                .tau
                .mul_integer(&conv.q)
                .dist_to_nearest_integer()
                .mul_integer(&problem.m_limit);
            witness_at(&problem.mu, &problem.a_param, problem.b_base, conv, &m_norm_tau)
        })
        .collect()
}

/// Scan the convergents with q > 6M in order and return the first one whose
/// ε is certified positive, escalating past failed candidates.
pub fn dujella_petho(
    problem: &ReductionProblem,
    convergents: &[Convergent],
) -> Result<ConvergentWitness> {
    if problem.b_base < 2 {
        return Err(Error::InvalidInput("B must exceed 1".into()));
    }
    if !problem.a_param.is_strictly_positive() {
        return Err(Error::InvalidInput("A must be positive".into()));
    }
    if problem.m_limit < 1u32 {
        return Err(Error::InvalidInput("M must be ≥ 1".into()));
    }
    let six_m = Integer::from(6) * &problem.m_limit;
    if convergents.last().map(|c| c.q <= six_m).unwrap_or(true) {
        return Err(Error::InvalidInput(format!(
            "convergent list does not cover q > 6M for {}",
            problem.label
        )));
    }
    let mut scanned = 0usize;
    for conv in convergents.iter().filter(|c| c.q > six_m) {
        scanned += 1;
        let m_norm_tau = problem
            .tau
            .mul_integer(&conv.q)
            .dist_to_nearest_integer()
            .mul_integer(&problem.m_limit);
        if let Some(w) = witness_at(&problem.mu, &problem.a_param, problem.b_base, conv, &m_norm_tau)
        {
            return Ok(w);
        }
    }
    Err(Error::NoWitness {
        label: problem.label.clone(),
        scanned,
    })
}

/// Integers w ≥ w_bound are excluded, so the largest possibly-feasible
/// integer is ceil(w_bound) − 1.
fn excluded_from(w_bound: f64) -> u32 {
    let c = w_bound.ceil();
    if c < 1.0 {
        0
    } else {
        (c as u32) - 1
    }
}

/// Summary of the witness attaining the step's worst (largest) bound.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WitnessSummary {
    pub label: String,
    pub digits: [u32; 3],
    pub ell: Option<u32>,
    pub m_len: Option<u32>,
    pub index: usize,
    pub q_decimal: String,
    pub epsilon: f64,
    pub w_bound: f64,
}

/// Output of one reduction sweep.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct StepReport {
    pub g: u32,
    pub step: u8,
    pub precision_bits: u32,
    pub instances: u64,
    /// Reduced integer bound on the step variable (ℓ, m, or n), from the
    /// best workable convergent per instance.
    pub bound: u32,
    /// Same bound when every instance stops at its first workable convergent.
    pub first_workable_bound: u32,
    pub worst: WitnessSummary,
    /// Index and denominator of the first convergent with q > 6M.
    pub first_index_over_6m: usize,
    pub q_first_decimal: String,
    /// Minimum certified ε among instances witnessed at each convergent index.
    pub eps_min_by_index: BTreeMap<usize, f64>,
    /// Step 3 only: bound under the alternative A = 4/log α.
    pub alt_bound: Option<u32>,
    /// Step 3 only: bound over the instances restricted to m ≤ 183.
    pub restricted_m_bound: Option<u32>,
}

/// Per-base state shared by the three sweeps: certified τ, its convergents
/// (doubling-checked), and M·‖τq‖ for every candidate convergent.
pub struct SweepContext {
    g: u32,
    precision_bits: u32,
    constants: CubicConstants,
    inv_ln_alpha: RealInterval,
    m_limit: Integer,
    convergents: Vec<Convergent>,
    first_idx: usize,
    m_norm_tau: Vec<RealInterval>,
    tau: RealInterval,
}

/// τ = log g / log α at the given precision.
pub fn tau_at(g: u32, precision_bits: u32) -> Result<RealInterval> {
    let c = compute_constants(precision_bits)?;
    Ok(RealInterval::from_u64(precision_bits, g as u64)
        .ln()
        .div(&c.ln_alpha()))
}

impl SweepContext {
    pub fn new(g: u32, m_limit: Integer, precision_bits: u32) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidInput(format!("base must be ≥ 2, got {g}")));
        }
        if m_limit < 1u32 {
            return Err(Error::InvalidInput("M must be ≥ 1".into()));
        }
        let constants = compute_constants(precision_bits)?;
        let tau = tau_at(g, precision_bits)?;

        // enough headroom past 6M that escalating over failed candidates
        // never runs off the list
        let q_target = Integer::from(6) * &m_limit * Integer::from(10u32).pow(18);
        let convergents = continued_fraction_convergents(&tau, &q_target)?;
        // certification gate: identical list at doubled precision
        let tau2 = tau_at(g, precision_bits * 2)?;
        let convergents2 = continued_fraction_convergents(&tau2, &q_target)?;
        if convergents != convergents2 {
            return Err(Error::PrecisionExhausted(format!(
                "convergent lists differ between {precision_bits} and {} bits",
                precision_bits * 2
            )));
        }

        let six_m = Integer::from(6) * &m_limit;
        let first_idx = convergents
            .iter()
            .position(|c| c.q > six_m)
            .ok_or_else(|| Error::PrecisionExhausted("no convergent beyond 6M".into()))?;
        let m_norm_tau = convergents
            .iter()
            .map(|c| {
                tau.mul_integer(&c.q)
                    .dist_to_nearest_integer()
                    .mul_integer(&m_limit)
            })
            .collect();
        let inv_ln_alpha = constants.ln_alpha().recip();
        Ok(Self {
            g,
            precision_bits,
            constants,
            inv_ln_alpha,
            m_limit,
            convergents,
            first_idx,
            m_norm_tau,
            tau,
        })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn constants(&self) -> &CubicConstants {
        &self.constants
    }

    pub fn tau(&self) -> &RealInterval {
        &self.tau
    }

    pub fn convergents(&self) -> &[Convergent] {
        &self.convergents
    }

    pub fn first_index_over_6m(&self) -> usize {
        self.convergents[self.first_idx].index
    }

    pub fn m_limit(&self) -> &Integer {
        &self.m_limit
    }

    /// log((g−1)³ · a) as an interval, the digit-independent part of μ.
    fn mu_numerator_base(&self) -> RealInterval {
        let gm1_cubed = Integer::from(self.g - 1).pow(3);
        RealInterval::from_integer(self.precision_bits, &gm1_cubed)
            .ln()
            .add(&self.constants.a_coeff().ln())
    }

    /// log(g^e − 1) as an interval (exact integer argument).
    fn ln_power_minus_one(&self, e: u32) -> RealInterval {
        let v = Integer::from(self.g).pow(e) - 1u32;
        RealInterval::from_integer(self.precision_bits, &v).ln()
    }

    /// Scan this context's convergents and return both the first certified
    /// witness and the one with the smallest w-threshold.
    ///
    /// The criterion holds at every convergent with q > 6M and ε > 0, and the
    /// exclusions intersect, so the instance is bounded by the minimum
    /// threshold over all workable convergents. Taking only the first
    /// workable one would let a freak near-degenerate ε (which does occur in
    /// these sweeps) inflate the bound for no reason; the first-workable
    /// witness is still recorded so both readings of the published data can
    /// be compared. Since q grows geometrically while ε ≤ 1/2, later
    /// convergents stop being able to improve the minimum almost
    /// immediately, which caps the scan.
    fn find_witness(
        &self,
        mu: &RealInterval,
        a_param: &RealInterval,
        label: &str,
    ) -> Result<InstanceWitnesses> {
        let mut scanned = 0usize;
        let mut first: Option<ConvergentWitness> = None;
        let mut best: Option<ConvergentWitness> = None;
        let a_upper = a_param.hi().to_f64();
        let ln_b = (self.g as f64).ln();
        for (pos, conv) in self.convergents.iter().enumerate().skip(self.first_idx) {
            if let Some(b) = &best {
                // cheapest possible threshold at this q (ε can never exceed
                // 1/2); the margin keeps the f64 estimate conservative
                let floor = (a_upper * conv.q.to_f64() / 0.5).ln() / ln_b;
                if floor > b.w_bound + 0.1 {
                    break;
                }
            }
            scanned += 1;
            if let Some(w) = witness_at(mu, a_param, self.g, conv, &self.m_norm_tau[pos]) {
                if first.is_none() {
                    first = Some(w.clone());
                }
                let better = best
                    .as_ref()
                    .map(|b| w.w_bound < b.w_bound)
                    .unwrap_or(true);
                if better {
                    best = Some(w);
                }
            }
        }
        match (first, best) {
            (Some(first), Some(best)) => Ok(InstanceWitnesses { first, best }),
            _ => Err(Error::NoWitness {
                label: label.to_string(),
                scanned,
            }),
        }
    }
}

/// Nondecreasing digit triples (d₁ ≤ d₂ ≤ d₃ ≤ g−1).
pub fn digit_triples(g: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for d1 in 1..g {
        for d2 in d1..g {
            for d3 in d2..g {
                out.push((d1, d2, d3));
            }
        }
    }
    out
}

/// First-workable and best-threshold witnesses for one instance.
struct InstanceWitnesses {
    first: ConvergentWitness,
    best: ConvergentWitness,
}

struct InstanceOutcome {
    label: String,
    digits: [u32; 3],
    ell: Option<u32>,
    witness: ConvergentWitness,
    first_witness: ConvergentWitness,
    /// Step 3 alternative-A bound, if tracked.
    alt_w_bound: Option<f64>,
    m_value: Option<u32>,
}

fn aggregate(
    step: u8,
    ctx: &SweepContext,
    outcomes: Vec<InstanceOutcome>,
    hypothesis_floor: u32,
    to_variable_bound: impl Fn(u32) -> u32,
) -> StepReport {
    let mut eps_min_by_index: BTreeMap<usize, f64> = BTreeMap::new();
    let mut worst: Option<&InstanceOutcome> = None;
    let mut bound = hypothesis_floor;
    let mut first_workable_bound = hypothesis_floor;
    let mut alt_bound: Option<u32> = None;
    let mut restricted: Option<u32> = None;
    for o in &outcomes {
        eps_min_by_index
            .entry(o.witness.index)
            .and_modify(|e| *e = e.min(o.witness.epsilon))
            .or_insert(o.witness.epsilon);
        let b = to_variable_bound(excluded_from(o.witness.w_bound)).max(hypothesis_floor);
        let replace = match worst {
            None => true,
            Some(w) => o.witness.w_bound > w.witness.w_bound,
        };
        if replace {
            worst = Some(o);
        }
        bound = bound.max(b);
        let fb = to_variable_bound(excluded_from(o.first_witness.w_bound)).max(hypothesis_floor);
        first_workable_bound = first_workable_bound.max(fb);
        if let Some(aw) = o.alt_w_bound {
            let ab = to_variable_bound(excluded_from(aw)).max(hypothesis_floor);
            alt_bound = Some(alt_bound.map_or(ab, |c: u32| c.max(ab)));
        }
        if let Some(m) = o.m_value {
            if m <= 183 {
                restricted = Some(restricted.map_or(b, |c: u32| c.max(b)));
            }
        }
    }
    let worst = worst.expect("at least one instance");
    StepReport {
        g: ctx.g,
        step,
        precision_bits: ctx.precision_bits,
        instances: outcomes.len() as u64,
        bound,
        first_workable_bound,
        worst: WitnessSummary {
            label: worst.label.clone(),
            digits: worst.digits,
            ell: worst.ell,
            m_len: worst.m_value,
            index: worst.witness.index,
            q_decimal: worst.witness.q.to_string(),
            epsilon: worst.witness.epsilon,
            w_bound: worst.witness.w_bound,
        },
        first_index_over_6m: ctx.first_index_over_6m(),
        q_first_decimal: ctx.convergents[ctx.first_idx].q.to_string(),
        eps_min_by_index,
        alt_bound,
        restricted_m_bound: restricted,
    }
}

/// Step 1: bound ℓ. One instance per digit triple, with
/// μ = log((g−1)³a/(d₁d₂d₃))/log α, A = 16/log α, B = g, w = ℓ. The
/// underlying inequality needs ℓ ≥ 5, so the returned bound is never
/// below 4 (smaller ℓ is left to the exhaustive search).
pub fn sweep_step1(ctx: &SweepContext) -> Result<StepReport> {
    let base = ctx.mu_numerator_base();
    let a_param = ctx.inv_ln_alpha.mul_u64(16);
    let triples = digit_triples(ctx.g);
    let outcomes: Vec<Result<InstanceOutcome>> = triples
        .par_iter()
        .map(|&(d1, d2, d3)| {
            let prod = Integer::from(d1 as u64 * d2 as u64 * d3 as u64);
            let mu = base
                .sub(&RealInterval::from_integer(ctx.precision_bits, &prod).ln())
                .mul(&ctx.inv_ln_alpha);
            let label = format!("g={} d=({d1},{d2},{d3})", ctx.g);
            let w = ctx.find_witness(&mu, &a_param, &label)?;
            Ok(InstanceOutcome {
                label,
                digits: [d1, d2, d3],
                ell: None,
                witness: w.best,
                first_witness: w.first,
                alt_w_bound: None,
                m_value: None,
            })
        })
        .collect();
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(aggregate(1, ctx, outcomes, 4, |w| w))
}

/// Step 2: bound m. Instances per digit triple and 1 ≤ ℓ ≤ ell_max, with the
/// (g^ℓ − 1) factor folded into μ; A = 8/log α, w = m (valid for m ≥ 4).
pub fn sweep_step2(ctx: &SweepContext, ell_max: u32) -> Result<StepReport> {
    let base = ctx.mu_numerator_base();
    let a_param = ctx.inv_ln_alpha.mul_u64(8);
    let ln_pow: Vec<RealInterval> = (1..=ell_max).map(|e| ctx.ln_power_minus_one(e)).collect();
    let mut instances = Vec::new();
    for &(d1, d2, d3) in &digit_triples(ctx.g) {
        for ell in 1..=ell_max {
            instances.push((d1, d2, d3, ell));
        }
    }
    let outcomes: Vec<Result<InstanceOutcome>> = instances
        .par_iter()
        .map(|&(d1, d2, d3, ell)| {
            let prod = Integer::from(d1 as u64 * d2 as u64 * d3 as u64);
            let mu = base
                .sub(&RealInterval::from_integer(ctx.precision_bits, &prod).ln())
                .sub(&ln_pow[ell as usize - 1])
                .mul(&ctx.inv_ln_alpha);
            let label = format!("g={} d=({d1},{d2},{d3}) l={ell}", ctx.g);
            let w = ctx.find_witness(&mu, &a_param, &label)?;
            Ok(InstanceOutcome {
                label,
                digits: [d1, d2, d3],
                ell: Some(ell),
                witness: w.best,
                first_witness: w.first,
                alt_w_bound: None,
                m_value: None,
            })
        })
        .collect();
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(aggregate(2, ctx, outcomes, 3, |w| w))
}

/// Step 3: bound n. Instances per digit triple, ℓ ≤ ell_max, m ≤ m_max, with
/// both (g^ℓ − 1)(g^m − 1) factors in μ; A = 8/log α, w = n − 1 (valid for
/// n ≥ 4). Only pairs with ℓ ≤ m are swept: the factor lengths of any
/// solution are ordered, so instances with ℓ > m cannot occur and would only
/// dilute the bound. Results under the alternative A = 4/log α and under the
/// restriction m ≤ 183 are reported alongside.
pub fn sweep_step3(ctx: &SweepContext, ell_max: u32, m_max: u32) -> Result<StepReport> {
    let base = ctx.mu_numerator_base();
    let a_param = ctx.inv_ln_alpha.mul_u64(8);
    let max_pow = ell_max.max(m_max);
    let ln_pow: Vec<RealInterval> = (1..=max_pow).map(|e| ctx.ln_power_minus_one(e)).collect();
    let mut instances = Vec::new();
    for &(d1, d2, d3) in &digit_triples(ctx.g) {
        for ell in 1..=ell_max {
            for m in ell..=m_max {
                instances.push((d1, d2, d3, ell, m));
            }
        }
    }
    let ln2 = RealInterval::from_u64(ctx.precision_bits, 2).ln();
    let ln_g = RealInterval::from_u64(ctx.precision_bits, ctx.g as u64).ln();
    // halving A shifts the w-threshold down by log 2 / log g
    let half_shift = ln2.div(&ln_g).lo().to_f64_round(Round::Down);
    let outcomes: Vec<Result<InstanceOutcome>> = instances
        .par_iter()
        .map(|&(d1, d2, d3, ell, m)| {
            let prod = Integer::from(d1 as u64 * d2 as u64 * d3 as u64);
            let mu = base
                .sub(&RealInterval::from_integer(ctx.precision_bits, &prod).ln())
                .sub(&ln_pow[ell as usize - 1])
                .sub(&ln_pow[m as usize - 1])
                .mul(&ctx.inv_ln_alpha);
            let label = format!("g={} d=({d1},{d2},{d3}) l={ell} m={m}", ctx.g);
            let w = ctx.find_witness(&mu, &a_param, &label)?;
            let alt = w.best.w_bound - half_shift;
            Ok(InstanceOutcome {
                label,
                digits: [d1, d2, d3],
                ell: Some(ell),
                witness: w.best,
                first_witness: w.first,
                alt_w_bound: Some(alt),
                m_value: Some(m),
            })
        })
        .collect();
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    // w = n − 1, so the bound on n is one more than the excluded threshold
    Ok(aggregate(3, ctx, outcomes, 3, |w| w + 1))
}

/// The M used for the published reduction data: k < 1.99·10^54 covers every
/// base 2 ≤ g ≤ 10.
pub fn reference_m_limit() -> Integer {
    Integer::from(199u32) * Integer::from(10u32).pow(52)
}
