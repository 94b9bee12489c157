use std::fmt;

use serde::Serialize;

use crate::poly::Poly;

/// A Jacobi polynomial P_n^(alpha, beta) with arbitrary real parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiSpec {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiSpec {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Self {
        Self { n, alpha, beta }
    }

    pub fn is_finite(&self) -> bool {
        self.alpha.is_finite() && self.beta.is_finite()
    }

    /// P_n^(a,b)(z) with (a, b) swapped: P_n^(a,b)(-z) = (-1)^n P_n^(b,a)(z).
    pub fn swapped(&self) -> Self {
        Self::new(self.n, self.beta, self.alpha)
    }

    /// Parameters of the derivative: d/dz P_n^(a,b) is proportional to P_{n-1}^(a+1,b+1).
    fn lowered(&self) -> Self {
        Self::new(self.n - 1, self.alpha + 1.0, self.beta + 1.0)
    }

    pub fn eval(&self, z: f64) -> f64 {
        jacobi_eval(*self, z)
    }

    pub fn derivative(&self, z: f64) -> f64 {
        jacobi_derivative(*self, z)
    }

    pub fn second_derivative(&self, z: f64) -> f64 {
        jacobi_second_derivative(*self, z)
    }

    /// Power-basis coefficients from the same explicit sum used by [`jacobi_eval`].
    pub fn to_poly(&self) -> Poly {
        let weights = sum_weights(*self);
        let n = self.n;
        weights
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (k, &w)| {
                let term = &Poly::binomial_power(-1.0, n - k) * &Poly::binomial_power(1.0, k);
                &acc + &term.scale(w)
            })
    }
}

impl fmt::Display for JacobiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_{}^({}, {})", self.n, self.alpha, self.beta)
    }
}

/// Generalized binomial coefficient a (a-1) ... (a-k+1) / k! for real `a`.
pub fn generalized_binomial(a: f64, k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * (a - j as f64 + 1.0) / j as f64)
}

/// Weights c_k = C(n+alpha, k) C(n+beta, n-k) / 2^n of the explicit sum.
fn sum_weights(spec: JacobiSpec) -> Vec<f64> {
    let n = spec.n;
    let a = n as f64 + spec.alpha;
    let b = n as f64 + spec.beta;
    let mut binom_a = vec![1.0; n + 1];
    let mut binom_b = vec![1.0; n + 1];
    for k in 1..=n {
        binom_a[k] = binom_a[k - 1] * (a - k as f64 + 1.0) / k as f64;
        binom_b[k] = binom_b[k - 1] * (b - k as f64 + 1.0) / k as f64;
    }
    let scale = 0.5_f64.powi(n as i32);
    (0..=n).map(|k| binom_a[k] * binom_b[n - k] * scale).collect()
}

/// P_n^(alpha,beta)(z) from the explicit finite sum
/// 2^-n sum_k C(n+alpha, k) C(n+beta, n-k) (z-1)^(n-k) (z+1)^k.
///
/// Valid for every real alpha, beta; the three-term recurrence is avoided because
/// its denominators 2n+alpha+beta vanish for some of the parameters used here.
pub fn jacobi_eval(spec: JacobiSpec, z: f64) -> f64 {
    let n = spec.n;
    if n == 0 {
        return 1.0;
    }
    let weights = sum_weights(spec);
    let zm = z - 1.0;
    let zp = z + 1.0;
    let mut pow_m = vec![1.0; n + 1];
    let mut pow_p = vec![1.0; n + 1];
    for j in 1..=n {
        pow_m[j] = pow_m[j - 1] * zm;
        pow_p[j] = pow_p[j - 1] * zp;
    }
    weights
        .iter()
        .enumerate()
        .map(|(k, w)| w * pow_m[n - k] * pow_p[k])
        .sum()
}

/// dP_n^(a,b)/dz = (n+a+b+1)/2 P_{n-1}^(a+1,b+1)(z).
pub fn jacobi_derivative(spec: JacobiSpec, z: f64) -> f64 {
    if spec.n == 0 {
        return 0.0;
    }
    let factor = 0.5 * (spec.n as f64 + spec.alpha + spec.beta + 1.0);
    factor * jacobi_eval(spec.lowered(), z)
}

/// Second derivative by applying the derivative identity twice.
pub fn jacobi_second_derivative(spec: JacobiSpec, z: f64) -> f64 {
    if spec.n < 2 {
        return 0.0;
    }
    let factor = 0.5 * (spec.n as f64 + spec.alpha + spec.beta + 1.0);
    factor * jacobi_derivative(spec.lowered(), z)
}
