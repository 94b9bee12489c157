//! Rationally-extended Rosen-Morse II and Eckart potentials.
//!
//! Each extension is the partner V(-) = W^2 + W' + E of a conventional potential
//! with coupling A' (and the same B), obtained from a nodeless polynomial-type
//! factorization function |1-z|^p (1+z)^q g(z). The extended potential is
//! V_A,B + V_rat with
//!
//! V_rat = 2(1-z^2) { 2z g'/g - (1-z^2) [g''/g - (g'/g)^2] - m }
//!
//! and g = g_m^(A,B) the denominator polynomial.

mod closed_form;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use closed_form::RationalClosedForm;

use crate::error::{Error, Result};
use crate::potentials::{
    formal_energy, formal_jacobi_parameters, potential_value_raw, ConventionalParams, Coordinate,
    Family,
};
use crate::special_functions::{is_nodeless, jacobi_eval, JacobiSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtensionType {
    I,
    II,
    III,
}

impl fmt::Display for ExtensionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExtensionType::I => "I",
            ExtensionType::II => "II",
            ExtensionType::III => "III",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtensionSpec {
    pub family: Family,
    pub ext_type: ExtensionType,
    pub a: f64,
    pub b: f64,
    pub m: usize,
}

impl fmt::Display for ExtensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} type {} (A = {}, B = {}, m = {})",
            self.family, self.ext_type, self.a, self.b, self.m
        )
    }
}

/// List of violated constraints; empty means the extension is valid.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn require(&mut self, holds: bool, message: impl FnOnce() -> String) {
        if !holds {
            self.violations.push(message());
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            f.write_str("ok")
        } else {
            f.write_str(&self.violations.join("; "))
        }
    }
}

/// A polynomial-type solution of the conventional Schrodinger equation:
/// |1-z|^p (1+z)^q P(z) at energy `energy`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorizationBranch {
    pub weight_exponents: (f64, f64),
    pub polynomial: JacobiSpec,
    pub energy: f64,
}

/// Which of the two polynomial-type solutions seeds a given extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Branch {
    /// The continuation of level nu = m.
    First,
    /// The sign-flipped continuation of level nu = -m-1.
    Second,
}

fn branch_solution(family: Family, a_prime: f64, b: f64, m: usize, branch: Branch) -> FactorizationBranch {
    let nu = match branch {
        Branch::First => m as i64,
        Branch::Second => -(m as i64) - 1,
    };
    let (alpha, beta) = formal_jacobi_parameters(family, a_prime, b, nu);
    let energy = formal_energy(family, a_prime, b, nu);
    match branch {
        Branch::First => FactorizationBranch {
            weight_exponents: (alpha / 2.0, beta / 2.0),
            polynomial: JacobiSpec::new(m, alpha, beta),
            energy,
        },
        Branch::Second => FactorizationBranch {
            weight_exponents: (-alpha / 2.0, -beta / 2.0),
            polynomial: JacobiSpec::new(m, -alpha, -beta),
            energy,
        },
    }
}

/// Both polynomial-type solutions of the conventional (family, A', B) equation
/// for polynomial degree m, first branch then second.
pub fn factorization_branches(
    family: Family,
    a_prime: f64,
    b: f64,
    m: usize,
) -> Result<[FactorizationBranch; 2]> {
    ConventionalParams::new(family, a_prime, b)?;
    Ok([
        branch_solution(family, a_prime, b, m, Branch::First),
        branch_solution(family, a_prime, b, m, Branch::Second),
    ])
}

/// Ratios g'/g and g''/g at z.
#[derive(Debug, Clone, Copy)]
pub struct LogDerivatives {
    pub first: f64,
    pub second: f64,
}

pub fn log_derivatives(g: JacobiSpec, z: f64) -> Result<LogDerivatives> {
    let value = jacobi_eval(g, z);
    if value == 0.0 || !value.is_finite() {
        return Err(Error::Pole { z });
    }
    Ok(LogDerivatives {
        first: g.derivative(z) / value,
        second: g.second_derivative(z) / value,
    })
}

impl ExtensionSpec {
    pub fn new(family: Family, ext_type: ExtensionType, a: f64, b: f64, m: usize) -> Self {
        Self {
            family,
            ext_type,
            a,
            b,
            m,
        }
    }

    /// Same family and type with a different A and m.
    pub fn with(&self, a: f64, m: usize) -> Self {
        Self { a, m, ..*self }
    }

    fn branch(&self) -> Branch {
        match (self.family, self.ext_type) {
            (Family::RosenMorseII, ExtensionType::I | ExtensionType::II) => Branch::First,
            (Family::RosenMorseII, ExtensionType::III) => Branch::Second,
            (Family::Eckart, ExtensionType::I) => Branch::First,
            (Family::Eckart, ExtensionType::II | ExtensionType::III) => Branch::Second,
        }
    }

    /// A' of the conventional potential whose factorization produces this extension.
    pub fn partner_a(&self) -> f64 {
        match (self.family, self.ext_type) {
            (Family::RosenMorseII, ExtensionType::I | ExtensionType::II) => self.a + 1.0,
            (Family::RosenMorseII, ExtensionType::III) => self.a - 1.0,
            (Family::Eckart, ExtensionType::I) => self.a - 1.0,
            (Family::Eckart, ExtensionType::II | ExtensionType::III) => self.a + 1.0,
        }
    }

    /// Whether the y polynomials have degree m + nu + 1 (rather than m + nu - 1).
    pub fn raises_degree(&self) -> bool {
        self.branch() == Branch::Second
    }

    /// Factorization function data from the tabulated formulas, without validation.
    pub fn factorization_unchecked(&self) -> FactorizationBranch {
        branch_solution(self.family, self.partner_a(), self.b, self.m, self.branch())
    }

    /// The denominator polynomial g_m^(A,B) from the tabulated formulas, without validation.
    pub fn g_formula(&self) -> JacobiSpec {
        self.factorization_unchecked().polynomial
    }

    fn range_constraints(&self, report: &mut ValidationReport) {
        let (a, b, m) = (self.a, self.b, self.m as f64);
        let mf = self.m;
        match (self.family, self.ext_type) {
            (Family::RosenMorseII, ExtensionType::I) => {
                report.require(mf >= 1, || "m must be at least 1".into());
                report.require(a > m - 1.0, || format!("A must exceed m - 1 = {}", m - 1.0));
                let lo = (a + 1.0) * (a + 1.0 - m);
                report.require(b > lo, || format!("B must exceed (A+1)(A+1-m) = {lo}"));
                let hi = (a + 1.0).powi(2);
                report.require(b < hi, || format!("B must be below (A+1)^2 = {hi}"));
            }
            (Family::RosenMorseII, ExtensionType::II) => {
                report.require(mf >= 1, || "m must be at least 1".into());
                let (lo_a, hi_a) = ((m - 2.0) / 2.0, m - 1.0);
                report.require(a > lo_a && a < hi_a, || {
                    format!("A must lie in ((m-2)/2, m-1) = ({lo_a}, {hi_a})")
                });
                let lo = -(a + 1.0) * (a + 1.0 - m);
                report.require(b > lo, || format!("B must exceed -(A+1)(A+1-m) = {lo}"));
                let hi = (a + 1.0).powi(2);
                report.require(b < hi, || format!("B must be below (A+1)^2 = {hi}"));
            }
            (Family::RosenMorseII, ExtensionType::III) => {
                report.require(mf >= 2 && mf.is_multiple_of(2), || "m must be even".into());
                report.require(a > 1.0, || "A must exceed 1".into());
                let hi = (a - 1.0).powi(2);
                report.require(b > 0.0 && b < hi, || format!("B must lie in (0, (A-1)^2) = (0, {hi})"));
            }
            (Family::Eckart, ExtensionType::I) => {
                report.require(mf >= 1, || "m must be at least 1".into());
                report.require(a > 2.0, || "A must exceed 2".into());
                let lo = (a - 1.0).powi(2);
                report.require(b > lo, || format!("B must exceed (A-1)^2 = {lo}"));
                let hi = (a - 1.0) * (a - 1.0 + m);
                report.require(b < hi, || format!("B must be below (A-1)(A-1+m) = {hi}"));
            }
            (Family::Eckart, ExtensionType::II) => {
                report.require(mf >= 1, || "m must be at least 1".into());
                let (lo_a, hi_a) = ((m - 1.0) / 2.0, m);
                report.require(a > lo_a && a < hi_a, || {
                    format!("A must lie in ((m-1)/2, m) = ({lo_a}, {hi_a})")
                });
                let lo = (a + 1.0).powi(2);
                report.require(b > lo, || format!("B must exceed (A+1)^2 = {lo}"));
            }
            (Family::Eckart, ExtensionType::III) => {
                report.require(mf >= 2 && mf.is_multiple_of(2), || "m must be even".into());
                report.require(a > m, || format!("A must exceed m = {m}"));
                let lo = (a + 1.0).powi(2);
                report.require(b > lo, || format!("B must exceed (A+1)^2 = {lo}"));
            }
        }
    }

    /// Checks the parameter region of the family/type and that g_m has no zero
    /// on the family's z-interval.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if !(self.a.is_finite() && self.b.is_finite()) {
            report.violations.push("A and B must be finite".into());
            return report;
        }
        self.range_constraints(&mut report);
        if !report.is_ok() {
            return report;
        }
        let g = self.g_formula();
        match is_nodeless(g, self.family.interval()) {
            Ok(true) => {}
            Ok(false) => report
                .violations
                .push(format!("denominator polynomial {g} has a zero on the physical interval")),
            Err(e) => report.violations.push(e.to_string()),
        }
        report
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidExtension {
                spec: *self,
                report,
            })
        }
    }

    pub fn factorization(&self) -> Result<FactorizationBranch> {
        self.ensure_valid()?;
        Ok(self.factorization_unchecked())
    }

    pub fn g_polynomial(&self) -> Result<JacobiSpec> {
        self.factorization().map(|f| f.polynomial)
    }

    /// The conventional potential (family, A', B) the extension is built from.
    pub fn conventional_partner(&self) -> Result<ConventionalParams> {
        self.ensure_valid()?;
        ConventionalParams::new(self.family, self.partner_a(), self.b)
    }

    pub fn rational_part_value(&self, x: f64) -> Result<f64> {
        let g = self.g_polynomial()?;
        let c = Coordinate::new(self.family, x)?;
        rational_part_at(g, self.m, &c)
    }

    pub fn extended_potential_value(&self, x: f64) -> Result<f64> {
        let rational = self.rational_part_value(x)?;
        Ok(potential_value_raw(self.family, self.a, self.b, x)? + rational)
    }

    /// Bound states of the extension ordered by energy. Types I and II copy the
    /// partner spectrum; type III prepends the level nu = -m-1.
    pub fn extended_energy_levels(&self) -> Result<Vec<Level>> {
        let partner = self.conventional_partner()?;
        let mut levels = Vec::with_capacity(partner.bound_state_count() + 1);
        if self.ext_type == ExtensionType::III {
            levels.push(Level {
                nu: -(self.m as i64) - 1,
                energy: self.factorization_unchecked().energy,
            });
        }
        levels.extend(partner.energies().into_iter().enumerate().map(|(nu, energy)| Level {
            nu: nu as i64,
            energy,
        }));
        Ok(levels)
    }

    /// Level indices of the extension, in the same order as [`Self::extended_energy_levels`].
    pub fn level_indices(&self) -> Result<Vec<i64>> {
        Ok(self.extended_energy_levels()?.iter().map(|l| l.nu).collect())
    }

    pub fn closed_form(&self) -> Result<RationalClosedForm> {
        RationalClosedForm::for_spec(self)
    }

    pub fn closed_form_rational(&self, x: f64) -> Result<f64> {
        self.closed_form()?.value(x)
    }
}

pub(crate) fn rational_part_at(g: JacobiSpec, m: usize, c: &Coordinate) -> Result<f64> {
    let d = log_derivatives(g, c.z)?;
    let w = c.one_minus_z2;
    Ok(2.0 * w * (2.0 * c.z * d.first - w * (d.second - d.first * d.first) - m as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level {
    pub nu: i64,
    pub energy: f64,
}
