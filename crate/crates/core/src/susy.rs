//! First-order SUSY machinery for the extended potentials.
//!
//! With z the family coordinate (dz/dx = 1 - z^2), the factorization function
//! phi = |1-z|^p (1+z)^q g(z) gives W = -(log phi)' = (p - q) + (p + q) z - (1-z^2) g'/g
//! and the partners V(+-) = W^2 -+ W' + E.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extensions::{log_derivatives, ExtensionSpec, ExtensionType, FactorizationBranch};
use crate::poly::Poly;
use crate::potentials::{
    formal_jacobi_parameters, potential_value_raw, ConventionalParams, Coordinate, Family,
};
use crate::special_functions::{jacobi_eval, JacobiSpec};

/// Value and first two z-derivatives of a function.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Jet {
    v: f64,
    d1: f64,
    d2: f64,
}

impl Jet {
    fn jacobi(spec: JacobiSpec, z: f64) -> Self {
        Self {
            v: jacobi_eval(spec, z),
            d1: spec.derivative(z),
            d2: spec.second_derivative(z),
        }
    }

    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }

    fn scale(self, s: f64) -> Jet {
        Jet {
            v: s * self.v,
            d1: s * self.d1,
            d2: s * self.d2,
        }
    }

    fn add(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }
}

/// Data shared by the closed-form operator, the y polynomials and W-bar.
#[derive(Debug, Clone, Copy)]
struct Ingredients {
    partner: ConventionalParams,
    g: JacobiSpec,
    /// The neighbouring denominator g^(A-+1,B)_(m-+1); same parameters as g.
    h: JacobiSpec,
    /// Signed coefficient of h/g in the closed-form operator.
    k: f64,
    /// W of the partner ground state: c0 + c1 z.
    c0: f64,
    c1: f64,
}

fn ingredients(spec: &ExtensionSpec) -> Result<Ingredients> {
    let partner = spec.conventional_partner()?;
    let g = spec.g_formula();
    let m = spec.m as f64;
    let (p, q) = (g.alpha, g.beta);
    let (h, k) = if spec.raises_degree() {
        let k3 = 2.0 * (m + 1.0) * (m + p + q + 1.0) / (2.0 * m + p + q + 2.0);
        (JacobiSpec::new(spec.m + 1, p, q), k3)
    } else {
        let k1 = 2.0 * (m + p) * (m + q) / (2.0 * m + p + q);
        (JacobiSpec::new(spec.m - 1, p, q), -k1)
    };
    let (a0, b0) = partner.jacobi_parameters(0);
    Ok(Ingredients {
        partner,
        g,
        h,
        k,
        c0: 0.5 * (a0 - b0),
        c1: 0.5 * (a0 + b0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Superpotential {
    pub spec: ExtensionSpec,
    pub factorization: FactorizationBranch,
}

impl Superpotential {
    pub fn new(spec: ExtensionSpec) -> Result<Self> {
        Ok(Self {
            spec,
            factorization: spec.factorization()?,
        })
    }

    pub fn energy(&self) -> f64 {
        self.factorization.energy
    }

    fn parts(&self, x: f64) -> Result<(Coordinate, f64, f64)> {
        let c = Coordinate::new(self.spec.family, x)?;
        let (p, q) = self.factorization.weight_exponents;
        let d = log_derivatives(self.factorization.polynomial, c.z)?;
        let w = c.one_minus_z2;
        let value = (p - q) + (p + q) * c.z - w * d.first;
        let derivative =
            w * ((p + q) + 2.0 * c.z * d.first - w * (d.second - d.first * d.first));
        Ok((c, value, derivative))
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        self.parts(x).map(|(_, v, _)| v)
    }

    /// dW/dx by the chain rule through z.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        self.parts(x).map(|(_, _, d)| d)
    }

    /// W^2 - W' + E.
    pub fn upper_partner(&self, x: f64) -> Result<f64> {
        let (_, w, dw) = self.parts(x)?;
        Ok(w * w - dw + self.energy())
    }

    /// W^2 + W' + E.
    pub fn lower_partner(&self, x: f64) -> Result<f64> {
        let (_, w, dw) = self.parts(x)?;
        Ok(w * w + dw + self.energy())
    }
}

pub fn superpotential_value(spec: &ExtensionSpec, x: f64) -> Result<f64> {
    Superpotential::new(*spec)?.value(x)
}

/// Largest deviations of W^2 - W' + E from the conventional partner and of
/// W^2 + W' + E from the extended potential over the sample points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartnerDeviation {
    pub upper: f64,
    pub lower: f64,
}

pub fn partner_consistency(spec: &ExtensionSpec, xs: &[f64]) -> Result<PartnerDeviation> {
    let sp = Superpotential::new(*spec)?;
    let partner = spec.conventional_partner()?;
    let mut dev = PartnerDeviation {
        upper: 0.0,
        lower: 0.0,
    };
    for &x in xs {
        let upper = (sp.upper_partner(x)? - partner.potential_value(x)?).abs();
        let lower = (sp.lower_partner(x)? - spec.extended_potential_value(x)?).abs();
        dev.upper = dev.upper.max(upper);
        dev.lower = dev.lower.max(lower);
    }
    Ok(dev)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperatorForm {
    /// (1-z^2) d/dz + W with W from the logarithmic derivative of g.
    Differential,
    /// (1-z^2) d/dz + c0 + c1 z + K h/g after the Jacobi contiguity relations.
    Closed,
}

fn check_partner_level(partner: &ConventionalParams, nu: i64) -> Result<()> {
    partner.bound_state(nu).map(|_| ())
}

/// A applied to the partner bound state psi(+)_nu = |1-z|^(a/2) (1+z)^(b/2) P_nu^(a,b).
pub fn apply_a_operator(spec: &ExtensionSpec, nu: i64, x: f64, form: OperatorForm) -> Result<f64> {
    let ing = ingredients(spec)?;
    check_partner_level(&ing.partner, nu)?;
    let c = Coordinate::new(spec.family, x)?;
    let (alpha, beta) = ing.partner.jacobi_parameters(nu);
    let poly = JacobiSpec::new(nu as usize, alpha, beta);
    let w = match form {
        OperatorForm::Differential => Superpotential::new(*spec)?.value(x)?,
        OperatorForm::Closed => {
            let g = jacobi_eval(ing.g, c.z);
            if g == 0.0 {
                return Err(Error::Pole { z: c.z });
            }
            ing.c0 + ing.c1 * c.z + ing.k * jacobi_eval(ing.h, c.z) / g
        }
    };
    let (p, q) = (alpha / 2.0, beta / 2.0);
    let bracket = c.one_minus_z2 * poly.derivative(c.z)
        + (w - p * (1.0 + c.z) + q * (1.0 - c.z)) * jacobi_eval(poly, c.z);
    Ok(c.weight((p, q)) * bracket)
}

fn check_extended_level(spec: &ExtensionSpec, nu: i64) -> Result<()> {
    let levels = spec.level_indices()?;
    if levels.contains(&nu) {
        Ok(())
    } else {
        let allowed = levels
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        Err(Error::LevelIndex {
            nu,
            allowed: format!("{{{allowed}}}"),
        })
    }
}

/// Polynomial part of an extended bound state: psi(-)_nu = |1-z|^(a/2) (1+z)^(b/2) y(z) / g(z).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YPolynomial {
    pub spec: ExtensionSpec,
    pub nu: i64,
    pub coefficients: Poly,
    pub degree: usize,
    /// Jacobi parameters (a, b) of the partner level nu.
    pub level_parameters: (f64, f64),
    #[serde(skip)]
    terms: YTerms,
}

#[derive(Debug, Clone, PartialEq)]
enum YTerms {
    /// y = 1 (the extra type III ground state).
    One,
    /// y = c g P_(nu-1) + k h P_nu.
    Sum {
        c: f64,
        g: JacobiSpec,
        lower: Option<JacobiSpec>,
        k: f64,
        h: JacobiSpec,
        level: JacobiSpec,
    },
}

impl YPolynomial {
    fn jet(&self, z: f64) -> Jet {
        match &self.terms {
            YTerms::One => Jet {
                v: 1.0,
                d1: 0.0,
                d2: 0.0,
            },
            YTerms::Sum {
                c,
                g,
                lower,
                k,
                h,
                level,
            } => {
                let second = Jet::jacobi(*h, z).mul(Jet::jacobi(*level, z)).scale(*k);
                match lower {
                    Some(l) => Jet::jacobi(*g, z).mul(Jet::jacobi(*l, z)).scale(*c).add(second),
                    None => second,
                }
            }
        }
    }

    pub fn value(&self, z: f64) -> f64 {
        self.jet(z).v
    }

    /// Left-hand side of the second-order equation satisfied by y, with the
    /// constant term shifted by `constant_shift` (zero for the true equation).
    pub fn ode_residual(&self, z: f64, constant_shift: f64) -> Result<OdeResidual> {
        let spec = &self.spec;
        let g = spec.g_formula();
        let gv = jacobi_eval(g, z);
        let natural = g.to_poly().coeffs().iter().enumerate().fold(0.0, |acc, (j, c)| {
            acc + c.abs() * z.abs().powi(j as i32)
        });
        if gv.abs() <= 1e-12 * natural {
            return Err(Error::Pole { z });
        }
        let r = log_derivatives(g, z)?.first;
        let (a, b) = self.level_parameters;
        let (p, q) = (g.alpha, g.beta);
        let nu = self.nu as f64;
        let m = spec.m as f64;
        let k0 = if spec.raises_degree() {
            (nu + 1.0) * (a + b + nu + 2.0) - m * (m + p + q - 1.0)
        } else {
            (nu - 1.0) * (a + b + nu) - m * (p + q + m - 1.0)
        } + constant_shift;
        let y = self.jet(z);
        let w = 1.0 - z * z;
        let terms = [
            w * y.d2,
            -(a - b) * y.d1,
            -(a + b + 2.0) * z * y.d1,
            -2.0 * w * r * y.d1,
            k0 * y.v,
            (a - b + p - q) * r * y.v,
            (a + b + p + q) * z * r * y.v,
        ];
        Ok(OdeResidual {
            residual: terms.iter().sum(),
            scale: terms.iter().fold(0.0_f64, |s, t| s.max(t.abs())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeResidual {
    pub residual: f64,
    /// Magnitude of the largest individual summand.
    pub scale: f64,
}

impl OdeResidual {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.residual.abs()
        } else {
            self.residual.abs() / self.scale
        }
    }
}

pub fn y_polynomial(spec: &ExtensionSpec, nu: i64) -> Result<YPolynomial> {
    check_extended_level(spec, nu)?;
    let ing = ingredients(spec)?;
    let level_parameters = formal_jacobi_parameters(spec.family, ing.partner.a(), spec.b, nu);
    if nu < 0 {
        return Ok(YPolynomial {
            spec: *spec,
            nu,
            coefficients: Poly::constant(1.0),
            degree: 0,
            level_parameters,
            terms: YTerms::One,
        });
    }
    let (a, b) = level_parameters;
    let n = nu as usize;
    let level = JacobiSpec::new(n, a, b);
    let lower = (n > 0).then(|| JacobiSpec::new(n - 1, a, b));
    let c = if n > 0 {
        2.0 * (nu as f64 + a) * (nu as f64 + b) / (2.0 * nu as f64 + a + b)
    } else {
        0.0
    };
    let mut coefficients = &ing.h.to_poly() * &level.to_poly();
    coefficients = coefficients.scale(ing.k);
    if let Some(l) = lower {
        coefficients = &coefficients + &(&ing.g.to_poly() * &l.to_poly()).scale(c);
    }
    let degree = coefficients.nominal_degree();
    Ok(YPolynomial {
        spec: *spec,
        nu,
        coefficients,
        degree,
        level_parameters,
        terms: YTerms::Sum {
            c,
            g: ing.g,
            lower,
            k: ing.k,
            h: ing.h,
            level,
        },
    })
}

/// Unnormalized extended bound state |1-z|^(a/2) (1+z)^(b/2) y(z) / g(z).
pub fn extended_wavefunction_value(spec: &ExtensionSpec, nu: i64, x: f64) -> Result<f64> {
    let y = y_polynomial(spec, nu)?;
    let c = Coordinate::new(spec.family, x)?;
    let g = jacobi_eval(spec.g_formula(), c.z);
    if g == 0.0 {
        return Err(Error::Pole { z: c.z });
    }
    let (a, b) = y.level_parameters;
    Ok(c.weight((a / 2.0, b / 2.0)) * y.value(c.z) / g)
}

pub fn y_ode_residual(spec: &ExtensionSpec, nu: i64, z: f64) -> Result<OdeResidual> {
    y_polynomial(spec, nu)?.ode_residual(z, 0.0)
}

fn require_isospectral(spec: &ExtensionSpec) -> Result<()> {
    match spec.ext_type {
        ExtensionType::I | ExtensionType::II => Ok(()),
        ExtensionType::III => Err(Error::NotIsospectral(*spec)),
    }
}

/// W-bar = -(log psi(-)_0)' = c0 + c1 z - (1-z^2)(h'/h - g'/g), and its x-derivative.
fn deleted_ground_parts(spec: &ExtensionSpec, x: f64) -> Result<(f64, f64)> {
    require_isospectral(spec)?;
    let ing = ingredients(spec)?;
    let c = Coordinate::new(spec.family, x)?;
    let dg = log_derivatives(ing.g, c.z)?;
    let dh = log_derivatives(ing.h, c.z)?;
    let w = c.one_minus_z2;
    let r = dh.first - dg.first;
    let value = ing.c0 + ing.c1 * c.z - w * r;
    let curvature = (dh.second - dh.first * dh.first) - (dg.second - dg.first * dg.first);
    let derivative = w * (ing.c1 + 2.0 * c.z * r - w * curvature);
    Ok((value, derivative))
}

pub fn deleted_ground_superpotential(spec: &ExtensionSpec, x: f64) -> Result<f64> {
    deleted_ground_parts(spec, x).map(|(v, _)| v)
}

pub fn deleted_ground_superpotential_derivative(spec: &ExtensionSpec, x: f64) -> Result<f64> {
    deleted_ground_parts(spec, x).map(|(_, d)| d)
}

/// The extension reached by deleting the ground state: (A-1, m-1) for Rosen-Morse II,
/// (A+1, m-1) for Eckart type I and (A+1, m+1) for Eckart type II.
pub fn enlarged_partner_spec(spec: &ExtensionSpec) -> Result<ExtensionSpec> {
    require_isospectral(spec)?;
    spec.ensure_valid()?;
    let partner = match (spec.family, spec.ext_type) {
        (Family::RosenMorseII, _) if spec.m >= 1 => Some(spec.with(spec.a - 1.0, spec.m - 1)),
        (Family::Eckart, ExtensionType::I) if spec.m >= 1 => Some(spec.with(spec.a + 1.0, spec.m - 1)),
        (Family::Eckart, ExtensionType::II) => Some(spec.with(spec.a + 1.0, spec.m + 1)),
        _ => None,
    };
    let partner = partner.ok_or(Error::NotIsospectral(*spec))?;
    let report = partner.validate();
    if report.is_ok() {
        Ok(partner)
    } else {
        Err(Error::ChainExit {
            spec: *spec,
            partner,
            report,
        })
    }
}

/// max |V_ext(spec) + 2 W-bar' - V_ext(partner)| over the sample points.
pub fn shape_invariance_check(spec: &ExtensionSpec, xs: &[f64]) -> Result<f64> {
    let partner = enlarged_partner_spec(spec)?;
    let mut worst = 0.0_f64;
    for &x in xs {
        let lhs = spec.extended_potential_value(x)? + 2.0 * deleted_ground_superpotential_derivative(spec, x)?;
        worst = worst.max((lhs - partner.extended_potential_value(x)?).abs());
    }
    Ok(worst)
}

/// V_A,B(x) for the raw couplings of an extension; handy for residual checks.
pub fn conventional_value(spec: &ExtensionSpec, x: f64) -> Result<f64> {
    potential_value_raw(spec.family, spec.a, spec.b, x)
}
