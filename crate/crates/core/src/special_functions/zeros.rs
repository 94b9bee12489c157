//! Zero counting for general Jacobi polynomials on (-1, 1) and (1, inf).
//!
//! Two independent routes: the closed-form counts N1 and N3 built from the
//! staircase function, and the case enumerations (rule 1 for (-1, 1), rule 2 for
//! (1, inf)) listing exactly when a polynomial is zero-free. A sign-change scan
//! serves as the brute-force oracle for both.

use serde::{Deserialize, Serialize};

use super::jacobi::{generalized_binomial, jacobi_eval, JacobiSpec};
use crate::error::{Error, Result};

/// Absolute tolerance for deciding that a real parameter is an integer.
pub const INTEGER_TOLERANCE: f64 = 1e-12;

/// Margin kept from u = 0 and u = 1 when scanning (1, inf) through z = 1 + u/(1-u).
pub const MOBIUS_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Interval {
    /// The open interval (-1, 1), where z = tanh x lives.
    MinusOneToOne,
    /// The open half-line (1, inf), where z = coth x lives.
    OneToInfinity,
}

/// Staircase values and binomial signs feeding the N1 / N3 counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCountInputs {
    pub x: u64,
    pub z: u64,
    /// Sign of (-1)^n C(n+alpha, n) C(n+beta, n).
    pub sign1: f64,
    /// Sign of C(2n+alpha+beta, n) C(n+alpha, n).
    pub sign3: f64,
}

fn as_integer(u: f64) -> Option<i64> {
    let r = u.round();
    ((u - r).abs() <= INTEGER_TOLERANCE).then_some(r as i64)
}

fn integer_in(v: f64, lo: i64, hi: i64) -> bool {
    matches!(as_integer(v), Some(k) if (lo..=hi).contains(&k))
}

/// E(u): 0 for u <= 0, floor(u) for non-integer u > 0, u - 1 for u = 1, 2, 3, ...
pub fn staircase(u: f64) -> u64 {
    if u <= 0.0 {
        return 0;
    }
    match as_integer(u) {
        Some(k) if k >= 1 => (k - 1) as u64,
        // u within tolerance of 0 from above
        Some(_) => 0,
        None => u.floor() as u64,
    }
}

/// False when alpha or beta is in {-1, ..., -n} or alpha+beta in {-2n, ..., -n-1}.
pub fn is_admissible(spec: JacobiSpec) -> bool {
    if !spec.is_finite() {
        return false;
    }
    let n = spec.n as i64;
    if n == 0 {
        return true;
    }
    !(integer_in(spec.alpha, -n, -1)
        || integer_in(spec.beta, -n, -1)
        || integer_in(spec.alpha + spec.beta, -2 * n, -n - 1))
}

pub fn zero_count_inputs(spec: JacobiSpec) -> ZeroCountInputs {
    let n = spec.n as f64;
    let (a, b) = (spec.alpha, spec.beta);
    let x = staircase(0.5 * ((2.0 * n + a + b + 1.0).abs() - a.abs() - b.abs() + 1.0));
    let z = staircase(0.5 * (-(2.0 * n + a + b + 1.0).abs() - a.abs() + b.abs() + 1.0));
    let parity = if spec.n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let binom_a = generalized_binomial(n + a, spec.n);
    let sign1 = (parity * binom_a * generalized_binomial(n + b, spec.n)).signum();
    let sign3 = (generalized_binomial(2.0 * n + a + b, spec.n) * binom_a).signum();
    ZeroCountInputs { x, z, sign1, sign3 }
}

fn count_from(stair: u64, sign: f64) -> usize {
    if sign > 0.0 {
        (2 * stair.div_ceil(2)) as usize
    } else {
        (2 * (stair / 2) + 1) as usize
    }
}

/// Exact number of zeros in the open interval (N1 on (-1, 1), N3 on (1, inf)).
///
/// The constant polynomial (n = 0) is zero-free by convention.
pub fn count_zeros(spec: JacobiSpec, interval: Interval) -> Result<usize> {
    if !is_admissible(spec) {
        return Err(Error::InadmissibleParameters(spec));
    }
    if spec.n == 0 {
        return Ok(0);
    }
    let inputs = zero_count_inputs(spec);
    Ok(match interval {
        Interval::MinusOneToOne => count_from(inputs.x, inputs.sign1),
        Interval::OneToInfinity => count_from(inputs.z, inputs.sign3),
    })
}

fn open(v: f64, lo: f64, hi: f64) -> bool {
    lo < v && v < hi
}

/// Rule 1: no zero in (-1, 1), by case enumeration. Assumes admissible parameters.
pub fn rule_1_nodeless(spec: JacobiSpec) -> bool {
    let n = spec.n as i64;
    if n == 0 {
        return true;
    }
    let (a, b) = (spec.alpha, spec.beta);
    let nf = n as f64;
    if integer_in(a + b, -2 * n, -n - 1) {
        return false;
    }
    // Case a and case b.
    if (a >= 0.0 && b < -nf) || (a < -nf && b >= 0.0) {
        return true;
    }
    let k = n / 2;
    let f = |v: i64| v as f64;
    if n % 2 == 0 {
        let kf = f(2 * k);
        if a < -kf && b < -kf {
            return true;
        }
        if a < -kf && (0..k).any(|l| open(b, f(-2 * l - 1), f(-2 * l))) {
            return true;
        }
        if b < -kf && (0..k).any(|l| open(a, f(-2 * l - 1), f(-2 * l))) {
            return true;
        }
        if (0..=k - 2).any(|l| {
            open(a, f(-2 * l - 3), f(-2 * l - 2))
                && (k - l - 2..=k - 2).any(|m| open(b, f(-2 * m - 3), f(-2 * m - 2)))
        }) {
            return true;
        }
        (0..k).any(|l| {
            open(a, f(-2 * l - 2), f(-2 * l - 1))
                && (k - l - 1..=k - 1).any(|m| open(b, f(-2 * m - 2), f(-2 * m - 1)))
        })
    } else {
        let kf = f(2 * k + 1);
        if a < -kf && (0..=k).any(|l| open(b, f(-2 * l - 1), f(-2 * l))) {
            return true;
        }
        if b < -kf && (0..=k).any(|l| open(a, f(-2 * l - 1), f(-2 * l))) {
            return true;
        }
        if (0..k).any(|l| {
            open(a, f(-2 * l - 2), f(-2 * l - 1))
                && (k - l - 1..=k - 1).any(|m| open(b, f(-2 * m - 3), f(-2 * m - 2)))
        }) {
            return true;
        }
        (0..k).any(|l| {
            open(a, f(-2 * l - 3), f(-2 * l - 2))
                && (k - l - 1..=k - 1).any(|m| open(b, f(-2 * m - 2), f(-2 * m - 1)))
        })
    }
}

/// Rule 2: no zero in (1, inf), by case enumeration. Assumes admissible parameters.
pub fn rule_2_nodeless(spec: JacobiSpec) -> bool {
    let n = spec.n as i64;
    if n == 0 {
        return true;
    }
    let (a, b) = (spec.alpha, spec.beta);
    let s = a + b;
    let nf = n as f64;
    if integer_in(b, -n, -1) {
        return false;
    }
    if (a < -nf && s < -2.0 * nf) || (a > -1.0 && s > -nf - 1.0) {
        return true;
    }
    let k = n / 2;
    let f = |v: i64| v as f64;
    if n % 2 == 0 {
        let upper_tail = s > f(-2 * k - 1);
        if a < f(-2 * k)
            && ((1..k).any(|l| open(s, f(-2 * k - 2 * l - 1), f(-2 * k - 2 * l))) || upper_tail)
        {
            return true;
        }
        if (0..k).any(|l| {
            open(a, f(-2 * l - 2), f(-2 * l - 1))
                && (0..=l).any(|m| open(s, f(-2 * k - 2 * m - 2), f(-2 * k - 2 * m - 1)))
        }) {
            return true;
        }
        (0..=k - 2).any(|l| {
            open(a, f(-2 * l - 3), f(-2 * l - 2))
                && ((0..=l).any(|m| open(s, f(-2 * k - 2 * m - 3), f(-2 * k - 2 * m - 2)))
                    || upper_tail)
        })
    } else {
        if a < f(-2 * k - 1) && (1..=k).any(|l| open(s, f(-2 * k - 2 * l - 1), f(-2 * k - 2 * l))) {
            return true;
        }
        if (0..k).any(|l| {
            open(a, f(-2 * l - 2), f(-2 * l - 1))
                && (0..=l).any(|m| open(s, f(-2 * k - 2 * m - 3), f(-2 * k - 2 * m - 2)))
        }) {
            return true;
        }
        (0..k).any(|l| {
            open(a, f(-2 * l - 3), f(-2 * l - 2))
                && ((0..=l).any(|m| open(s, f(-2 * k - 2 * m - 4), f(-2 * k - 2 * m - 3)))
                    || s > f(-2 * k - 2))
        })
    }
}

/// Zero-free test on an interval, computed by the case enumeration and by the
/// closed-form count; a disagreement is reported as [`Error::RuleInconsistency`].
pub fn is_nodeless(spec: JacobiSpec, interval: Interval) -> Result<bool> {
    let count = count_zeros(spec, interval)?;
    let rule = match interval {
        Interval::MinusOneToOne => rule_1_nodeless(spec),
        Interval::OneToInfinity => rule_2_nodeless(spec),
    };
    if rule != (count == 0) {
        return Err(Error::RuleInconsistency { spec, rule, count });
    }
    Ok(rule)
}

/// Sample points of the brute-force scan: uniform on (-1, 1), or uniform in
/// u in (eps, 1-eps) mapped through z = 1 + u/(1-u) for (1, inf).
pub fn scan_points(interval: Interval, resolution: usize) -> Vec<f64> {
    match interval {
        Interval::MinusOneToOne => {
            let h = 2.0 / (resolution + 1) as f64;
            (1..=resolution).map(|i| -1.0 + i as f64 * h).collect()
        }
        Interval::OneToInfinity => {
            let span = 1.0 - 2.0 * MOBIUS_MARGIN;
            let denom = resolution.saturating_sub(1).max(1) as f64;
            (0..resolution)
                .map(|i| {
                    let u = MOBIUS_MARGIN + span * i as f64 / denom;
                    1.0 + u / (1.0 - u)
                })
                .collect()
        }
    }
}

/// Number of sign changes of the polynomial over `resolution` interior sample points.
///
/// This is an oracle for simple zeros only: a double zero, or two zeros closer
/// than the sample spacing, produce no sign change. Callers sample parameters
/// generically so that neither situation arises.
pub fn brute_force_zero_count(spec: JacobiSpec, interval: Interval, resolution: usize) -> usize {
    if spec.n == 0 {
        return 0;
    }
    let mut changes = 0;
    let mut last_sign = 0.0;
    for z in scan_points(interval, resolution) {
        let value = jacobi_eval(spec, z);
        if value == 0.0 {
            continue;
        }
        let s = value.signum();
        if last_sign != 0.0 && s != last_sign {
            changes += 1;
        }
        last_sign = s;
    }
    changes
}
