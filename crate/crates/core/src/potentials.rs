//! Conventional Rosen-Morse II and Eckart potentials (units hbar = 2m = 1).

use std::f64::consts::LN_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_functions::{jacobi_eval, Interval, JacobiSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// -A(A+1) sech^2 x + 2B tanh x on the whole line, z = tanh x.
    #[serde(rename = "rm2")]
    RosenMorseII,
    /// A(A-1) csch^2 x - 2B coth x on x > 0, z = coth x.
    #[serde(rename = "eckart")]
    Eckart,
}

impl Family {
    pub fn interval(self) -> Interval {
        match self {
            Family::RosenMorseII => Interval::MinusOneToOne,
            Family::Eckart => Interval::OneToInfinity,
        }
    }

    pub fn contains(self, x: f64) -> bool {
        match self {
            Family::RosenMorseII => x.is_finite(),
            Family::Eckart => x.is_finite() && x > 0.0,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Family::RosenMorseII => "rm2",
            Family::Eckart => "eckart",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::RosenMorseII => f.write_str("Rosen-Morse II"),
            Family::Eckart => f.write_str("Eckart"),
        }
    }
}

/// The variable z together with quantities that lose accuracy when formed from z.
///
/// `one_minus_z2` is sech^2 x (Rosen-Morse II) or -csch^2 x (Eckart), and the
/// logarithms are ln|1 - z| and ln(1 + z), all evaluated directly from x. In both
/// families dz/dx = 1 - z^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coordinate {
    pub x: f64,
    pub z: f64,
    pub one_minus_z2: f64,
    pub ln_abs_one_minus_z: f64,
    pub ln_one_plus_z: f64,
}

impl Coordinate {
    pub fn new(family: Family, x: f64) -> Result<Self> {
        if !family.contains(x) {
            return Err(Error::Domain { family, x });
        }
        Ok(match family {
            Family::RosenMorseII => {
                let ax = x.abs();
                let ln_cosh = ax + (-2.0 * ax).exp().ln_1p() - LN_2;
                let sech = 1.0 / x.cosh();
                Self {
                    x,
                    z: x.tanh(),
                    one_minus_z2: sech * sech,
                    ln_abs_one_minus_z: -x - ln_cosh,
                    ln_one_plus_z: x - ln_cosh,
                }
            }
            Family::Eckart => {
                let ln_sinh = x + (-(-2.0 * x).exp_m1()).ln() - LN_2;
                let csch = 1.0 / x.sinh();
                Self {
                    x,
                    z: 1.0 / x.tanh(),
                    one_minus_z2: -csch * csch,
                    ln_abs_one_minus_z: -x - ln_sinh,
                    ln_one_plus_z: x - ln_sinh,
                }
            }
        })
    }

    /// |1 - z|^p (1 + z)^q.
    pub fn weight(&self, (p, q): (f64, f64)) -> f64 {
        (p * self.ln_abs_one_minus_z + q * self.ln_one_plus_z).exp()
    }
}

/// z = tanh x (Rosen-Morse II) or z = coth x (Eckart, x > 0).
pub fn coordinate_map(family: Family, x: f64) -> Result<f64> {
    Coordinate::new(family, x).map(|c| c.z)
}

/// Potential value for arbitrary couplings, without the bound-state constraints.
pub fn potential_value_raw(family: Family, a: f64, b: f64, x: f64) -> Result<f64> {
    let c = Coordinate::new(family, x)?;
    Ok(match family {
        Family::RosenMorseII => -a * (a + 1.0) * c.one_minus_z2 + 2.0 * b * c.z,
        Family::Eckart => -a * (a - 1.0) * c.one_minus_z2 - 2.0 * b * c.z,
    })
}

/// kappa_nu = A - nu (Rosen-Morse II) or A + nu (Eckart); energies are -kappa^2 - B^2/kappa^2.
pub fn formal_kappa(family: Family, a: f64, nu: i64) -> f64 {
    match family {
        Family::RosenMorseII => a - nu as f64,
        Family::Eckart => a + nu as f64,
    }
}

/// Jacobi parameters (alpha_nu, beta_nu) of level nu, continued to any integer nu.
pub fn formal_jacobi_parameters(family: Family, a: f64, b: f64, nu: i64) -> (f64, f64) {
    let k = formal_kappa(family, a, nu);
    match family {
        Family::RosenMorseII => (k + b / k, k - b / k),
        Family::Eckart => (-k + b / k, -k - b / k),
    }
}

pub fn formal_energy(family: Family, a: f64, b: f64, nu: i64) -> f64 {
    let k = formal_kappa(family, a, nu);
    -k * k - b * b / (k * k)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConventionalParams {
    family: Family,
    a: f64,
    b: f64,
}

impl ConventionalParams {
    /// Rosen-Morse II needs A > 0 and 0 < B < A^2; Eckart needs A > 1 and B > A^2.
    pub fn new(family: Family, a: f64, b: f64) -> Result<Self> {
        let reason = if !(a.is_finite() && b.is_finite()) {
            Some("couplings must be finite")
        } else {
            match family {
                Family::RosenMorseII if a <= 0.0 => Some("A must be positive"),
                Family::RosenMorseII if !(b > 0.0 && b < a * a) => Some("B must lie in (0, A^2)"),
                Family::Eckart if a <= 1.0 => Some("A must exceed 1"),
                Family::Eckart if b <= a * a => Some("B must exceed A^2"),
                _ => None,
            }
        };
        match reason {
            Some(r) => Err(Error::InvalidParameters {
                family,
                a,
                b,
                reason: r.to_string(),
            }),
            None => Ok(Self { family, a, b }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn potential_value(&self, x: f64) -> Result<f64> {
        potential_value_raw(self.family, self.a, self.b, x)
    }

    /// Largest bound-state index: the integer in [A-1-sqrt B, A-sqrt B) for
    /// Rosen-Morse II, or in [sqrt B-A-1, sqrt B-A) for Eckart.
    pub fn nu_max(&self) -> usize {
        let upper = match self.family {
            Family::RosenMorseII => self.a - self.b.sqrt(),
            Family::Eckart => self.b.sqrt() - self.a,
        };
        (upper.ceil() - 1.0).max(0.0) as usize
    }

    pub fn bound_state_count(&self) -> usize {
        self.nu_max() + 1
    }

    fn check_level(&self, nu: i64) -> Result<()> {
        let top = self.nu_max() as i64;
        if (0..=top).contains(&nu) {
            Ok(())
        } else {
            Err(Error::LevelIndex {
                nu,
                allowed: format!("0..={top}"),
            })
        }
    }

    pub fn energy_level(&self, nu: i64) -> Result<f64> {
        self.check_level(nu)?;
        Ok(formal_energy(self.family, self.a, self.b, nu))
    }

    pub fn energies(&self) -> Vec<f64> {
        (0..=self.nu_max() as i64)
            .map(|nu| formal_energy(self.family, self.a, self.b, nu))
            .collect()
    }

    pub fn jacobi_parameters(&self, nu: i64) -> (f64, f64) {
        formal_jacobi_parameters(self.family, self.a, self.b, nu)
    }

    pub fn bound_state(&self, nu: i64) -> Result<BoundState> {
        self.check_level(nu)?;
        let (alpha, beta) = self.jacobi_parameters(nu);
        Ok(BoundState {
            family: self.family,
            nu,
            energy: formal_energy(self.family, self.a, self.b, nu),
            weight_exponents: (alpha / 2.0, beta / 2.0),
            polynomial: JacobiSpec::new(nu as usize, alpha, beta),
        })
    }

    /// Unnormalized wavefunction |1-z|^(alpha/2) (1+z)^(beta/2) P_nu^(alpha,beta)(z),
    /// identical to (sech x)^(A-nu) exp(-Bx/(A-nu)) P_nu or (sinh x)^(A+nu) exp(-Bx/(A+nu)) P_nu.
    pub fn wavefunction_value(&self, nu: i64, x: f64) -> Result<f64> {
        self.bound_state(nu)?.value(x)
    }

    /// -2B: the lower asymptote of the potential.
    pub fn continuum_threshold(&self) -> f64 {
        -2.0 * self.b
    }
}

/// An analytic bound state: weight |1-z|^p (1+z)^q times a Jacobi polynomial in z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundState {
    pub family: Family,
    pub nu: i64,
    pub energy: f64,
    pub weight_exponents: (f64, f64),
    pub polynomial: JacobiSpec,
}

impl BoundState {
    pub fn value(&self, x: f64) -> Result<f64> {
        let c = Coordinate::new(self.family, x)?;
        Ok(c.weight(self.weight_exponents) * jacobi_eval(self.polynomial, c.z))
    }
}
