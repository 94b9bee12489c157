use serde::Serialize;

use super::{ExtensionSpec, ExtensionType};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::potentials::{Coordinate, Family};

/// V_rat = N1/D + N2/D^2 + C with N1, N2, D polynomials in t = tanh x (Rosen-Morse II)
/// or t = coth x (Eckart).
///
/// The Eckart forms are the Rosen-Morse II ones with (A, B, tanh x) replaced by
/// (-A, -B, coth x).
///
/// Evaluation uses V_rat = ((1 - t^2) M + R) / D^2, where N1 D + N2 + C D^2 = (1 - t^2) M + R.
/// R vanishes identically because V_rat decays at t = +-1, so the three terms never have
/// to cancel against each other in the tails.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalClosedForm {
    pub family: Family,
    pub numerator1: Poly,
    pub numerator2: Poly,
    pub denominator: Poly,
    pub constant: f64,
    pub reduced_numerator: Poly,
    pub remainder: Poly,
}

impl RationalClosedForm {
    /// Supported: Rosen-Morse II types I and II with m = 1, 2, type III with m = 2,
    /// and the Eckart images (type I with m = 1, 2, type III with m = 2).
    pub fn for_spec(spec: &ExtensionSpec) -> Result<Self> {
        let unsupported = || Error::UnsupportedClosedForm(*spec);
        let (a, b) = match spec.family {
            Family::RosenMorseII => (spec.a, spec.b),
            Family::Eckart => (-spec.a, -spec.b),
        };
        let coefficients = match (spec.family, spec.ext_type, spec.m) {
            (Family::RosenMorseII, ExtensionType::I | ExtensionType::II, 1)
            | (Family::Eckart, ExtensionType::I, 1) => degree_one(a, b),
            (Family::RosenMorseII, ExtensionType::I | ExtensionType::II, 2)
            | (Family::Eckart, ExtensionType::I, 2) => degree_two(a, b),
            (Family::RosenMorseII | Family::Eckart, ExtensionType::III, 2) => degree_two_raised(a, b),
            _ => return Err(unsupported()),
        };
        spec.ensure_valid()?;
        let (numerator1, numerator2, denominator, constant) = coefficients;
        let combined = &(&(&numerator1 * &denominator) + &numerator2)
            + &(&denominator * &denominator).scale(constant);
        let (reduced_numerator, remainder) = divide_by_one_minus_t2(&combined);
        Ok(Self {
            family: spec.family,
            numerator1,
            numerator2,
            denominator,
            constant,
            reduced_numerator,
            remainder,
        })
    }

    /// The tabulated expression N1/D + N2/D^2 + C, evaluated term by term.
    pub fn tabulated_at_t(&self, t: f64) -> f64 {
        let d = self.denominator.eval(t);
        self.numerator1.eval(t) / d + self.numerator2.eval(t) / (d * d) + self.constant
    }

    pub fn value_at_t(&self, t: f64) -> f64 {
        self.reduced_value(t, 1.0 - t * t)
    }

    fn reduced_value(&self, t: f64, one_minus_t2: f64) -> f64 {
        let d = self.denominator.eval(t);
        (one_minus_t2 * self.reduced_numerator.eval(t) + self.remainder.eval(t)) / (d * d)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        let c = Coordinate::new(self.family, x)?;
        if self.denominator.eval(c.z) == 0.0 {
            return Err(Error::Pole { z: c.z });
        }
        Ok(self.reduced_value(c.z, c.one_minus_z2))
    }
}

/// p = (1 - t^2) q + r with deg r < 2; r is dropped when it is rounding noise.
fn divide_by_one_minus_t2(p: &Poly) -> (Poly, Poly) {
    let mut r = p.coeffs().to_vec();
    let n = r.len();
    if n < 3 {
        return (Poly::zero(), Poly::new(r));
    }
    let mut q = vec![0.0; n - 2];
    for k in (2..n).rev() {
        q[k - 2] = -r[k];
        r[k - 2] += r[k];
        r[k] = 0.0;
    }
    r.truncate(2);
    let noise = 1e-9 * p.max_abs_coeff();
    if r.iter().all(|c| c.abs() <= noise) {
        r = vec![0.0];
    }
    (Poly::new(q), Poly::new(r))
}

type Parts = (Poly, Poly, Poly, f64);

fn degree_one(a: f64, b: f64) -> Parts {
    let s = a * a * (a + 1.0).powi(2);
    let k = s - b * b;
    (
        Poly::constant(4.0 * b * k / s),
        Poly::constant(2.0 * k * k / s),
        Poly::new(vec![b, a * (a + 1.0)]),
        -2.0 * k / s,
    )
}

fn degree_two(a: f64, b: f64) -> Parts {
    let am = a - 1.0;
    let ap = a + 1.0;
    let q = b * b - am * am * ap * ap;
    let den = am * am * ap.powi(3) * (2.0 * a + 1.0);
    let n1 = Poly::new(vec![
        (a * a + 4.0 * a + 1.0) * b * b + a * am.powi(3) * ap * ap,
        am * am * ap * (2.0 * a + 1.0) * b,
    ])
    .scale(-16.0 * q / den);
    let n2 = Poly::new(vec![
        (3.0 * a + 1.0) * b * b + a * a * am * am * ap,
        2.0 * a * am * (2.0 * a + 1.0) * b,
    ])
    .scale(32.0 * q * q / den);
    let d = Poly::new(vec![
        2.0 * b * b - am * am * ap,
        2.0 * am * (2.0 * a + 1.0) * b,
        am * am * ap * (2.0 * a + 1.0),
    ]);
    let c = 8.0 * a * q / (am * am * ap * ap * (2.0 * a + 1.0));
    (n1, n2, d, c)
}

fn degree_two_raised(a: f64, b: f64) -> Parts {
    let a1 = a + 1.0;
    let a2 = a + 2.0;
    let q = b * b - a * a * a2 * a2;
    let den = a.powi(3) * a2 * a2 * (2.0 * a + 1.0);
    let n1 = Poly::new(vec![
        (a * a - 2.0 * a - 2.0) * b * b + a * a * a1 * a2.powi(3),
        a * a2 * a2 * (2.0 * a + 1.0) * b,
    ])
    .scale(-16.0 * q / den);
    let n2 = Poly::new(vec![
        (3.0 * a + 2.0) * b * b + a * a1 * a1 * a2 * a2,
        2.0 * a1 * a2 * (2.0 * a + 1.0) * b,
    ])
    .scale(-32.0 * q * q / den);
    let d = Poly::new(vec![
        2.0 * b * b + a * a2 * a2,
        2.0 * a2 * (2.0 * a + 1.0) * b,
        a * a2 * a2 * (2.0 * a + 1.0),
    ]);
    let c = 8.0 * a1 * q / (a * a * a2 * a2 * (2.0 * a + 1.0));
    (n1, n2, d, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn constants() {
        let rm = |t, a, b, m| ExtensionSpec::new(Family::RosenMorseII, t, a, b, m);
        let cf = rm(ExtensionType::I, 1.0, 3.0, 1).closed_form().unwrap();
        assert!((cf.constant - 2.5).abs() < 1e-14);
        assert!((cf.value(0.0).unwrap() + 10.0 / 9.0).abs() < 1e-12);
        let cf = rm(ExtensionType::I, 2.0, 3.1, 2).closed_form().unwrap();
        assert!((cf.constant - 0.216_888_888_9).abs() < 1e-9);
    }

    #[test]
    fn tabulated_and_reduced_forms_agree() {
        let spec = ExtensionSpec::new(Family::RosenMorseII, ExtensionType::III, 2.5, 1.0, 2);
        let cf = spec.closed_form().unwrap();
        assert_eq!(cf.remainder.coeffs(), &[0.0]);
        for t in [-0.9, -0.3, 0.0, 0.4, 0.8] {
            assert!(rel(cf.tabulated_at_t(t), cf.value_at_t(t)) < 1e-12);
        }
        let spec = ExtensionSpec::new(Family::Eckart, ExtensionType::I, 3.0, 5.5, 2);
        let cf = spec.closed_form().unwrap();
        assert_eq!(cf.remainder.coeffs(), &[0.0]);
        // Deep in the tail V_rat ~ 4.4e-6 while each tabulated term is O(7).
        let x = 7.920_100_502_512_563;
        let reference = -4.387_618_229_406_711_7e-6;
        assert!(rel(cf.value(x).unwrap(), reference) < 1e-13);
    }

    #[test]
    fn unsupported_cases() {
        let spec = ExtensionSpec::new(Family::RosenMorseII, ExtensionType::I, 3.0, 9.5, 3);
        assert!(matches!(spec.closed_form(), Err(Error::UnsupportedClosedForm(_))));
        let spec = ExtensionSpec::new(Family::Eckart, ExtensionType::II, 1.5, 16.0, 2);
        assert!(spec.closed_form().is_err());
    }

    #[test]
    fn agrees_with_general_formula() {
        let cases = [
            ExtensionSpec::new(Family::RosenMorseII, ExtensionType::I, 1.0, 3.0, 1),
            ExtensionSpec::new(Family::RosenMorseII, ExtensionType::I, 2.0, 3.1, 2),
            ExtensionSpec::new(Family::RosenMorseII, ExtensionType::III, 2.5, 1.0, 2),
            ExtensionSpec::new(Family::Eckart, ExtensionType::I, 3.0, 5.0, 1),
            ExtensionSpec::new(Family::Eckart, ExtensionType::I, 3.0, 5.5, 2),
            ExtensionSpec::new(Family::Eckart, ExtensionType::III, 3.0, 20.0, 2),
        ];
        for spec in cases {
            let cf = spec.closed_form().unwrap();
            for i in 0..40 {
                let x = match spec.family {
                    Family::RosenMorseII => -6.0 + 0.3 * i as f64,
                    Family::Eckart => 0.05 + 0.2 * i as f64,
                };
                let general = spec.rational_part_value(x).unwrap();
                let closed = cf.value(x).unwrap();
                assert!(
                    rel(closed, general) < 1e-9 || (closed - general).abs() < 1e-12,
                    "{spec} x={x}: {closed} vs {general}"
                );
            }
        }
    }
}
