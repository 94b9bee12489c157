use std::collections::BTreeMap;

use susyext::error::Error;
use susyext::extensions::{factorization_branches, ExtensionSpec, ExtensionType};
use susyext::numerics::{
    default_grid, discretize_hamiltonian, eigen_bound_states, inner_product, node_count, numeric_spectrum, Grid,
};
use susyext::potentials::{coordinate_map, ConventionalParams, Family};
use susyext::special_functions::{
    brute_force_zero_count, count_zeros, generalized_binomial, is_admissible, is_nodeless, jacobi_derivative,
    jacobi_eval, rule_1_nodeless, rule_2_nodeless, staircase, Interval, JacobiSpec,
};
use susyext::susy::{
    apply_a_operator, deleted_ground_superpotential, enlarged_partner_spec, extended_wavefunction_value,
    partner_consistency, shape_invariance_check, superpotential_value, y_ode_residual, y_polynomial, OperatorForm,
};

use crate::args::Suite;
use crate::report::{assemble, Relation, RunReport, SectionBuilder};

type R<T> = Result<T, Error>;

const SUITES: [(Suite, &str); 6] = [
    (Suite::ZeroRules, "zero-rules"),
    (Suite::ClosedForm, "closed-form"),
    (Suite::Operators, "operators"),
    (Suite::Residuals, "residuals"),
    (Suite::Isospectral, "isospectral"),
    (Suite::ShapeInvariance, "shape-invariance"),
];

pub fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::All => "all",
        s => SUITES.iter().find(|(k, _)| *k == s).map(|(_, n)| *n).unwrap(),
    }
}

pub fn run(suite: Suite) -> RunReport {
    let selected: Vec<(Suite, &str)> = match suite {
        Suite::All => SUITES.to_vec(),
        s => SUITES.iter().copied().filter(|(k, _)| *k == s).collect(),
    };
    let sections = selected
        .into_iter()
        .map(|(s, name)| {
            let mut b = SectionBuilder::new(name);
            match s {
                Suite::ZeroRules => zero_rules(&mut b),
                Suite::ClosedForm => closed_form(&mut b),
                Suite::Operators => operators(&mut b),
                Suite::Residuals => residuals(&mut b),
                Suite::Isospectral => isospectral(&mut b),
                Suite::ShapeInvariance => shape_invariance(&mut b),
                Suite::All => unreachable!(),
            }
            b
        })
        .collect();
    let mut parameters = BTreeMap::new();
    parameters.insert("suite".to_string(), suite_name(suite).to_string());
    assemble(format!("verify {}", suite_name(suite)), parameters, sections)
}

fn rm(t: ExtensionType, a: f64, b: f64, m: usize) -> ExtensionSpec {
    ExtensionSpec::new(Family::RosenMorseII, t, a, b, m)
}

fn eck(t: ExtensionType, a: f64, b: f64, m: usize) -> ExtensionSpec {
    ExtensionSpec::new(Family::Eckart, t, a, b, m)
}

/// Valid extensions covering every family/type combination.
pub fn catalogue() -> Vec<ExtensionSpec> {
    use ExtensionType::*;
    vec![
        rm(I, 1.0, 2.2, 1),
        rm(I, 2.0, 3.1, 2),
        rm(I, 3.0, 9.5, 3),
        rm(II, 0.8, 0.5, 2),
        rm(II, 1.6, 2.0, 3),
        rm(III, 2.5, 1.0, 2),
        rm(III, 4.2, 1.5, 4),
        eck(I, 3.0, 5.0, 1),
        eck(I, 3.0, 11.0, 4),
        eck(II, 1.5, 16.0, 2),
        eck(II, 0.8, 5.0, 1),
        eck(III, 3.0, 20.0, 2),
    ]
}

fn sample_xs(family: Family, count: usize) -> Vec<f64> {
    let (lo, hi) = match family {
        Family::RosenMorseII => (-12.0, 12.0),
        Family::Eckart => (0.05, 12.0),
    };
    (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect()
}

fn interior_zs(family: Family) -> Vec<f64> {
    match family {
        Family::RosenMorseII => (1..=50).map(|i| -1.0 + 2.0 * i as f64 / 51.0).collect(),
        Family::Eckart => (1..=50).map(|i| 1.0 + 0.1 * i as f64).collect(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn zero_rules(s: &mut SectionBuilder) {
    s.uses(&[
        "is_admissible",
        "count_zeros",
        "brute_force_zero_count",
        "is_nodeless",
        "jacobi_eval",
        "jacobi_derivative",
        "generalized_binomial",
        "staircase",
    ]);
    let values: Vec<f64> = (0..11).map(|i| -9.7 + 15.0 * (i as f64 + 0.5) / 11.0).collect();
    let mut specs = Vec::new();
    for n in 1..=6 {
        for &alpha in &values {
            for &beta in &values {
                let spec = JacobiSpec::new(n, alpha, beta);
                if is_admissible(spec) {
                    specs.push(spec);
                }
            }
        }
    }
    let mut comparisons = 0;
    let (mut mismatches, mut rule_one, mut rule_two, mut inconsistencies) = (0, 0, 0, 0);
    for &spec in &specs {
        for interval in [Interval::MinusOneToOne, Interval::OneToInfinity] {
            let count = match count_zeros(spec, interval) {
                Ok(c) => c,
                Err(_) => {
                    mismatches += 1;
                    continue;
                }
            };
            comparisons += 1;
            if count != brute_force_zero_count(spec, interval, 20_000) {
                mismatches += 1;
            }
            let rule = match interval {
                Interval::MinusOneToOne => rule_1_nodeless(spec),
                Interval::OneToInfinity => rule_2_nodeless(spec),
            };
            if rule != (count == 0) {
                match interval {
                    Interval::MinusOneToOne => rule_one += 1,
                    Interval::OneToInfinity => rule_two += 1,
                }
            }
            if is_nodeless(spec, interval).is_err() {
                inconsistencies += 1;
            }
        }
    }
    s.at_least("formula vs brute-force comparisons", comparisons as f64, 500.0);
    s.at_most("formula vs brute-force mismatches", mismatches as f64, 0.0);
    s.at_most("rule 1 disagreements with (count == 0)", rule_one as f64, 0.0);
    s.at_most("rule 2 disagreements with (count == 0)", rule_two as f64, 0.0);
    s.at_most("is_nodeless internal inconsistencies", inconsistencies as f64, 0.0);

    let mut endpoint = 0.0_f64;
    let mut derivative = 0.0_f64;
    for &spec in specs.iter().step_by(7) {
        endpoint = endpoint.max(rel(jacobi_eval(spec, 1.0), generalized_binomial(spec.n as f64 + spec.alpha, spec.n)));
        for z in [-0.7, 0.1, 0.9, 1.6] {
            let h = 1e-5;
            let fd = (jacobi_eval(spec, z + h) - jacobi_eval(spec, z - h)) / (2.0 * h);
            let d = jacobi_derivative(spec, z);
            derivative = derivative.max((fd - d).abs() / d.abs().max(1.0));
        }
    }
    s.at_most("P_n(1) = binomial(n + alpha, n), max relative deviation", endpoint, 1e-12);
    s.at_most("jacobi_derivative vs central difference", derivative, 1e-6);
    let stairs = [(-1.0, 0), (0.5, 0), (1.0, 0), (2.7, 2), (3.0, 2)];
    let wrong = stairs.iter().filter(|(u, e)| staircase(*u) != *e).count();
    s.at_most("staircase E(u) reference values", wrong as f64, 0.0);
}

fn closed_form(s: &mut SectionBuilder) {
    s.uses(&["closed_form_rational", "rational_part_value"]);
    use ExtensionType::*;
    let cases = [
        rm(I, 1.0, 3.0, 1),
        rm(I, 2.0, 3.1, 2),
        rm(III, 2.5, 1.0, 2),
        eck(I, 3.0, 5.0, 1),
        eck(I, 3.0, 5.5, 2),
        eck(III, 3.0, 20.0, 2),
    ];
    for spec in cases {
        let result = (|| -> R<f64> {
            let (lo, hi) = match spec.family {
                Family::RosenMorseII => (-6.0, 6.0),
                Family::Eckart => (0.05, 8.0),
            };
            let mut worst = 0.0_f64;
            for i in 0..200 {
                let x = lo + (hi - lo) * i as f64 / 199.0;
                let closed = spec.closed_form_rational(x)?;
                let general = spec.rational_part_value(x)?;
                worst = worst.max(rel(closed, general));
            }
            Ok(worst)
        })();
        s.at_most_or(format!("closed form vs general V_rat, {spec}"), result, 1e-9);
    }
    let unsupported = matches!(
        eck(II, 1.5, 16.0, 2).closed_form(),
        Err(Error::UnsupportedClosedForm(_))
    );
    s.at_least("unsupported closed form is reported", unsupported as u8 as f64, 1.0);
}

fn operators(s: &mut SectionBuilder) {
    s.uses(&[
        "validate",
        "factorization_branches",
        "g_polynomial",
        "conventional_partner",
        "extended_energy_levels",
        "apply_A_operator",
        "y_polynomial",
        "extended_wavefunction_value",
        "superpotential_value",
        "partner_consistency",
        "inner_product",
        "node_count",
        "count_zeros",
        "coordinate_map",
        "potential_value",
        "nu_max",
        "energy_level",
        "wavefunction_value",
        "continuum_threshold",
    ]);

    let conventional = (|| -> R<f64> {
        let p = ConventionalParams::new(Family::RosenMorseII, 4.0, 4.0)?;
        let mut dev = (p.nu_max() as f64 - 1.0).abs();
        dev = dev.max((p.energy_level(0)? + 17.0).abs());
        dev = dev.max((p.energy_level(1)? + 97.0 / 9.0).abs());
        dev = dev.max((p.continuum_threshold() + 8.0).abs());
        dev = dev.max((p.potential_value(0.0)? + 20.0).abs());
        dev = dev.max((coordinate_map(Family::RosenMorseII, 0.5)? - 0.5_f64.tanh()).abs());
        dev = dev.max((coordinate_map(Family::Eckart, 0.5)? - 1.0 / 0.5_f64.tanh()).abs());
        let e = ConventionalParams::new(Family::Eckart, 2.0, 6.0)?;
        dev = dev.max((e.energy_level(0)? + 13.0).abs());
        let v0 = p.wavefunction_value(0, 0.0)?;
        dev = dev.max((v0 - 1.0).abs());
        Ok(dev)
    })();
    s.at_most_or("conventional reference values", conventional, 1e-12);

    let rejected = rm(ExtensionType::III, 2.5, 1.0, 3)
        .validate()
        .violations
        .iter()
        .any(|v| v.contains("m must be even"));
    s.at_least("odd m rejected for type III", rejected as u8 as f64, 1.0);

    let mut two_form = 0.0_f64;
    let mut degree_misses = 0;
    let mut node_misses = 0;
    let mut off_diagonal = 0.0_f64;
    let mut diagonal = 0.0_f64;
    let mut g_zeros = 0;
    let mut branch_energy = 0.0_f64;
    let mut errors = Vec::new();
    for spec in catalogue() {
        let result = (|| -> R<()> {
            let g = spec.g_polynomial()?;
            g_zeros += count_zeros(g, spec.family.interval())?;
            let partner = spec.conventional_partner()?;
            let branches = factorization_branches(spec.family, partner.a(), spec.b, spec.m)?;
            let picked = spec.factorization()?;
            let expected = if spec.raises_degree() { branches[1] } else { branches[0] };
            branch_energy = branch_energy.max((picked.energy - expected.energy).abs());

            for nu in 0..partner.bound_state_count() as i64 {
                for x in sample_xs(spec.family, 100) {
                    let d = apply_a_operator(&spec, nu, x, OperatorForm::Differential)?;
                    let c = apply_a_operator(&spec, nu, x, OperatorForm::Closed)?;
                    if d.abs().max(c.abs()) > 1e-250 {
                        two_form = two_form.max(rel(d, c));
                    }
                }
            }

            let levels = spec.level_indices()?;
            for &nu in &levels {
                let y = y_polynomial(&spec, nu)?;
                let want = if nu < 0 {
                    0
                } else if spec.raises_degree() {
                    spec.m + nu as usize + 1
                } else {
                    spec.m + nu as usize - 1
                };
                if y.degree != want {
                    degree_misses += 1;
                }
            }
            if spec.extended_energy_levels()?.len() != levels.len() {
                degree_misses += 1;
            }

            let grid = match spec.family {
                Family::RosenMorseII => Grid::new(-40.0, 40.0, 40_000)?,
                Family::Eckart => Grid::new(1e-3, 40.0, 40_000)?,
            };
            let nodes = grid.nodes();
            let mut states = Vec::new();
            for (k, &nu) in levels.iter().enumerate() {
                let mut psi = nodes
                    .iter()
                    .map(|&x| extended_wavefunction_value(&spec, nu, x))
                    .collect::<R<Vec<f64>>>()?;
                let last = psi.len() - 1;
                psi[0] = 0.0;
                psi[last] = 0.0;
                if node_count(&psi[1..last]) != k {
                    node_misses += 1;
                }
                let norm = inner_product(&psi, &psi, &grid)?.sqrt();
                psi.iter_mut().for_each(|v| *v /= norm);
                states.push(psi);
            }
            for i in 0..states.len() {
                for j in 0..=i {
                    let ip = inner_product(&states[i], &states[j], &grid)?;
                    if i == j {
                        diagonal = diagonal.max((ip - 1.0).abs());
                    } else {
                        off_diagonal = off_diagonal.max(ip.abs());
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            errors.push(format!("{spec}: {e}"));
        }
    }
    if let Some(e) = errors.first() {
        s.error("catalogue evaluation", Relation::AtMost, 0.0, e);
    }
    s.at_most("g_m zeros on the physical interval", g_zeros as f64, 0.0);
    s.at_most("selected factorization branch energy", branch_energy, 0.0);
    s.at_most("operator two-form relative deviation", two_form, 1e-10);
    s.at_most("y-degree law violations", degree_misses as f64, 0.0);
    s.at_most("node-count law violations", node_misses as f64, 0.0);
    s.at_most("orthonormality, off-diagonal", off_diagonal, 1e-6);
    s.at_most("orthonormality, |diagonal - 1|", diagonal, 1e-6);

    let first_excited = catalogue()
        .into_iter()
        .filter(|spec| spec.ext_type == ExtensionType::III)
        .map(|spec| -> R<f64> {
            let g = spec.g_polynomial()?;
            let h = JacobiSpec::new(spec.m + 1, g.alpha, g.beta);
            Ok((count_zeros(h, spec.family.interval())? as f64 - 1.0).abs())
        })
        .try_fold(0.0_f64, |m, v| v.map(|v| m.max(v)));
    s.at_most_or("type III first-excited factor has one zero", first_excited, 0.0);

    let spec = rm(ExtensionType::I, 1.0, 2.2, 1);
    s.at_most_or("W(+inf) = 3.2", superpotential_value(&spec, 40.0).map(|w| (w - 3.2).abs()), 1e-9);
    s.at_most_or("W(0) = 1.2909", superpotential_value(&spec, 0.0).map(|w| (w - 1.2909).abs()), 1e-4);

    for spec in [
        rm(ExtensionType::I, 1.0, 2.2, 1),
        eck(ExtensionType::II, 1.5, 16.0, 2),
        rm(ExtensionType::III, 2.5, 1.0, 2),
    ] {
        let d = partner_consistency(&spec, &sample_xs(spec.family, 1000)).map(|d| d.upper.max(d.lower));
        s.at_most_or(format!("W^2 -+ W' + E reproduces both partners, {spec}"), d, 1e-9);
    }
}

fn richardson_residual<F: Fn(f64) -> R<f64>, V: Fn(f64) -> R<f64>>(
    psi: F,
    potential: V,
    energy: f64,
    lo: f64,
    hi: f64,
) -> R<f64> {
    let h = 1e-3;
    let n = ((hi - lo) / h) as usize;
    let xs: Vec<f64> = (0..n).map(|i| lo + h * i as f64).collect();
    let values = xs.iter().map(|&x| psi(x)).collect::<R<Vec<f64>>>()?;
    let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0_f64;
    for i in 2..n - 2 {
        let d_h = (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (h * h);
        let d_2h = (values[i + 2] - 2.0 * values[i] + values[i - 2]) / (4.0 * h * h);
        let d2 = (4.0 * d_h - d_2h) / 3.0;
        worst = worst.max((-d2 + (potential(xs[i])? - energy) * values[i]).abs());
    }
    Ok(worst / peak)
}

fn residuals(s: &mut SectionBuilder) {
    s.uses(&[
        "y_ode_residual",
        "y_polynomial",
        "extended_wavefunction_value",
        "apply_A_operator",
        "extended_potential_value",
        "deleted_ground_superpotential",
        "wavefunction_value",
        "potential_value",
        "inner_product",
        "node_count",
    ]);
    let mut ode = 0.0_f64;
    let mut sensitivity = f64::INFINITY;
    let mut errors = Vec::new();
    for spec in catalogue() {
        let result = (|| -> R<()> {
            for nu in spec.level_indices()? {
                let y = y_polynomial(&spec, nu)?;
                for z in interior_zs(spec.family) {
                    ode = ode.max(y_ode_residual(&spec, nu, z)?.relative());
                    if y.value(z).abs() >= 0.1 {
                        sensitivity = sensitivity.min(y.ode_residual(z, 1e-3)?.residual.abs());
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            errors.push(format!("{spec}: {e}"));
        }
    }
    if let Some(e) = errors.first() {
        s.error("catalogue evaluation", Relation::AtMost, 0.0, e);
    }
    s.at_most("y ODE residual, relative to the largest term", ode, 1e-8);
    s.at_least("y ODE residual with constant shifted by 1e-3", sensitivity, 1e-4);
    s.at_most_or(
        "type III y = 1 solves the ODE",
        y_ode_residual(&rm(ExtensionType::III, 2.5, 1.0, 2), -3, 0.2).map(|r| r.residual.abs()),
        1e-12,
    );

    let conventional = (|| -> R<f64> {
        let mut worst = 0.0_f64;
        for (family, a, b, lo, hi) in [
            (Family::RosenMorseII, 2.0, 1.5, -15.0, 15.0),
            (Family::Eckart, 2.0, 6.0, 0.5, 20.0),
        ] {
            let p = ConventionalParams::new(family, a, b)?;
            for nu in 0..p.bound_state_count() as i64 {
                let e = p.energy_level(nu)?;
                let h = 1e-3;
                let n = ((hi - lo) / h) as usize;
                let values = (0..n)
                    .map(|i| p.wavefunction_value(nu, lo + h * i as f64))
                    .collect::<R<Vec<f64>>>()?;
                let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
                for i in 1..n - 1 {
                    let d2 = (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (h * h);
                    let v = p.potential_value(lo + h * i as f64)?;
                    worst = worst.max((-d2 + (v - e) * values[i]).abs() / peak);
                }
            }
        }
        Ok(worst)
    })();
    s.at_most_or("conventional Schrodinger residual, step 1e-3", conventional, 1e-5);

    for spec in [
        rm(ExtensionType::I, 2.0, 3.1, 2),
        rm(ExtensionType::II, 1.6, 2.0, 3),
        eck(ExtensionType::I, 3.0, 11.0, 4),
        eck(ExtensionType::II, 1.5, 16.0, 2),
    ] {
        let result = (|| -> R<f64> {
            let partner = spec.conventional_partner()?;
            let (lo, hi) = match spec.family {
                Family::RosenMorseII => (-15.0, 15.0),
                Family::Eckart => (0.3, 20.0),
            };
            let mut worst = 0.0_f64;
            for nu in 0..partner.bound_state_count() as i64 {
                let e = partner.energy_level(nu)?;
                worst = worst.max(richardson_residual(
                    |x| apply_a_operator(&spec, nu, x, OperatorForm::Closed),
                    |x| spec.extended_potential_value(x),
                    e,
                    lo,
                    hi,
                )?);
            }
            Ok(worst)
        })();
        s.at_most_or(format!("A psi solves the extended equation, {spec}"), result, 1e-5);
    }

    for spec in [rm(ExtensionType::I, 2.0, 3.1, 2), eck(ExtensionType::II, 1.5, 16.0, 2)] {
        let result = (|| -> R<f64> {
            let step = 1e-5;
            let mut worst = 0.0_f64;
            for x in sample_xs(spec.family, 100) {
                let lp = extended_wavefunction_value(&spec, 0, x + step)?.abs().ln();
                let lm = extended_wavefunction_value(&spec, 0, x - step)?.abs().ln();
                let fd = -(lp - lm) / (2.0 * step);
                let w = deleted_ground_superpotential(&spec, x)?;
                worst = worst.max((fd - w).abs() / w.abs().max(1.0));
            }
            Ok(worst)
        })();
        s.at_most_or(format!("ground-state-deleted W vs -(log psi0)', {spec}"), result, 1e-7);
    }

    let spec = eck(ExtensionType::III, 3.0, 20.0, 2);
    let deep = (|| -> R<(f64, usize, f64)> {
        let mut r = 0.0_f64;
        for z in interior_zs(spec.family) {
            r = r.max(y_ode_residual(&spec, -3, z)?.relative());
        }
        let grid = Grid::new(1e-3, 40.0, 40_000)?;
        let psi = grid
            .nodes()
            .iter()
            .map(|&x| extended_wavefunction_value(&spec, -3, x))
            .collect::<R<Vec<f64>>>()?;
        let nodes = node_count(&psi[1..psi.len() - 1]);
        Ok((r, nodes, inner_product(&psi, &psi, &grid)?))
    })();
    match deep {
        Ok((r, nodes, norm)) => {
            s.at_most("deep type III state (E = -401): ODE residual", r, 1e-8);
            s.at_most("deep type III state (E = -401): nodes", nodes as f64, 0.0);
            let finite = norm.is_finite() && norm > 0.0;
            s.at_least("deep type III state (E = -401): finite positive norm", finite as u8 as f64, 1.0);
        }
        Err(e) => s.error("deep type III state (E = -401)", Relation::AtMost, 1e-8, e),
    }
}

fn spectrum_deviation(
    potential: impl Fn(f64) -> R<f64>,
    grid: &Grid,
    threshold: f64,
    want: &[f64],
) -> R<(Vec<f64>, f64)> {
    let r = numeric_spectrum(|x| potential(x).unwrap_or(f64::NAN), grid, threshold)?;
    if r.energies.len() != want.len() {
        return Ok((r.energies, f64::INFINITY));
    }
    let dev = r.energies.iter().zip(want).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    Ok((r.energies, dev))
}

fn isospectral(s: &mut SectionBuilder) {
    s.uses(&[
        "numeric_spectrum",
        "discretize_hamiltonian",
        "eigen_bound_states",
        "default_grid",
        "inner_product",
        "extended_energy_levels",
        "extended_potential_value",
        "potential_value",
        "conventional_partner",
    ]);

    let free = (|| -> R<f64> {
        let grid = Grid::new(0.0, 1.0, 100)?;
        let h = grid.spacing();
        let m = discretize_hamiltonian(|_| 0.0, &grid)?;
        let r = eigen_bound_states(&m, h, f64::INFINITY, usize::MAX)?;
        let n = grid.n_points;
        Ok(r.energies.iter().enumerate().fold(0.0_f64, |w, (k, e)| {
            let exact = 2.0 * (1.0 - ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos()) / (h * h);
            w.max((e - exact).abs())
        }))
    })();
    s.at_most_or("free-particle stencil spectrum", free, 1e-10);

    let oscillator = (|| -> R<f64> {
        let grid = Grid::new(-10.0, 10.0, 1999)?;
        let r = numeric_spectrum(|x| x * x, &grid, 6.0)?;
        let d = r.energies.iter().zip([1.0, 3.0, 5.0]).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        Ok(if r.energies.len() == 3 { d } else { f64::INFINITY })
    })();
    s.at_most_or("harmonic oscillator {1, 3, 5}", oscillator, 1e-3);

    let quadrature = (|| -> R<f64> {
        let grid = Grid::new(0.0, 2.0 * std::f64::consts::PI, 1000)?;
        let nodes = grid.nodes();
        let sin: Vec<f64> = nodes.iter().map(|x| x.sin()).collect();
        let cos: Vec<f64> = nodes.iter().map(|x| x.cos()).collect();
        Ok(inner_product(&sin, &cos, &grid)?.abs())
    })();
    s.at_most_or("trapezoid <sin, cos> on [0, 2 pi]", quadrature, 1e-6);

    let grid_rule = default_grid(Family::RosenMorseII, -17.0, -97.0 / 9.0, -8.0).map(|g| {
        let ok = g.x_min == -30.0 && g.x_max == 30.0 && g.spacing() <= 0.01;
        (!ok) as u8 as f64
    });
    s.at_most_or("default grid for RM-II (4, 4)", grid_rule, 0.0);

    let conv = |family, a, b, grid: Grid, want: &[f64]| -> R<(Vec<f64>, f64)> {
        let p = ConventionalParams::new(family, a, b)?;
        spectrum_deviation(|x| p.potential_value(x), &grid, p.continuum_threshold(), want)
    };
    let ext = |spec: ExtensionSpec, grid: Grid, want: &[f64]| -> R<(Vec<f64>, f64)> {
        let threshold = spec.conventional_partner()?.continuum_threshold();
        spectrum_deviation(|x| spec.extended_potential_value(x), &grid, threshold, want)
    };

    s.at_most_or(
        "RM-II (4, 4) spectrum vs {-17, -10.77778}",
        Grid::new(-30.0, 30.0, 6000)
            .and_then(|g| conv(Family::RosenMorseII, 4.0, 4.0, g, &[-17.0, -10.77778]))
            .map(|r| r.1),
        5e-3,
    );
    s.at_most_or(
        "Eckart (2, 6) spectrum vs {-13}",
        Grid::new(1e-3, 40.0, 8000)
            .and_then(|g| conv(Family::Eckart, 2.0, 6.0, g, &[-13.0]))
            .map(|r| r.1),
        5e-3,
    );

    let pairs = [
        (rm(ExtensionType::I, 2.0, 3.1, 2), (-30.0, 30.0, 6000), vec![-10.06778, -6.4025], 5e-3),
        (rm(ExtensionType::I, 1.0, 2.2, 1), (-40.0, 40.0, 8000), vec![-5.21], 5e-3),
        (eck(ExtensionType::II, 1.5, 16.0, 2), (1e-3, 30.0, 12_000), vec![-47.21, -33.14796], 2e-2),
    ];
    for (spec, (lo, hi, n), want, tol) in pairs {
        let result = (|| -> R<(f64, f64, f64)> {
            let grid = Grid::new(lo, hi, n)?;
            let partner = spec.conventional_partner()?;
            let (pe, pd) = conv(spec.family, partner.a(), partner.b(), grid, &want)?;
            let (ee, ed) = ext(spec, grid, &want)?;
            let mutual = if pe.len() == ee.len() {
                pe.iter().zip(&ee).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
            } else {
                f64::INFINITY
            };
            Ok((pd, ed, mutual))
        })();
        match result {
            Ok((pd, ed, mutual)) => {
                s.at_most(format!("partner spectrum, {spec}"), pd, tol);
                s.at_most(format!("extended spectrum, {spec}"), ed, tol);
                s.at_most(format!("partner vs extended numeric spectra, {spec}"), mutual, 1e-3);
            }
            Err(e) => s.error(format!("isospectrality, {spec}"), Relation::AtMost, tol, e),
        }
    }

    s.at_most_or(
        "RM-II type III (2.5, 1, 2) spectrum vs {-20.29938, -2.69444}",
        Grid::new(-25.0, 25.0, 10_000)
            .and_then(|g| ext(rm(ExtensionType::III, 2.5, 1.0, 2), g, &[-20.29938, -2.69444]))
            .map(|r| r.1),
        1e-2,
    );
    match Grid::new(1e-3, 30.0, 30_000).and_then(|g| ext(eck(ExtensionType::III, 3.0, 20.0, 2), g, &[-401.0, -41.0])) {
        Ok((energies, _)) if energies.len() == 2 => {
            s.at_most("Eckart type III (3, 20, 2) shallow state vs -41", (energies[1] + 41.0).abs(), 2e-2);
            s.at_most(
                "Eckart type III (3, 20, 2) deep state vs -401, relative",
                (energies[0] + 401.0).abs() / 401.0,
                1e-2,
            );
        }
        Ok((energies, _)) => s.at_most("Eckart type III (3, 20, 2) state count", energies.len() as f64, 2.0),
        Err(e) => s.error("Eckart type III (3, 20, 2) spectrum", Relation::AtMost, 2e-2, e),
    }

    let refinement = (|| -> R<f64> {
        let mut worst = f64::INFINITY;
        for (family, a, b, lo, hi) in [
            (Family::RosenMorseII, 4.0, 4.0, -30.0, 30.0),
            (Family::Eckart, 2.0, 6.0, 1e-3, 40.0),
        ] {
            let p = ConventionalParams::new(family, a, b)?;
            let exact = p.energies();
            let (coarse, _) = conv(family, a, b, Grid::new(lo, hi, 1499)?, &exact)?;
            let (fine, _) = conv(family, a, b, Grid::new(lo, hi, 2999)?, &exact)?;
            for k in 0..exact.len() {
                worst = worst.min((coarse[k] - exact[k]).abs() / (fine[k] - exact[k]).abs());
            }
        }
        Ok(worst)
    })();
    match refinement {
        Ok(v) => s.at_least("error ratio when halving h", v, 3.0),
        Err(e) => s.error("error ratio when halving h", Relation::AtLeast, 3.0, e),
    }

    let counts = (|| -> R<f64> {
        let mut misses = 0;
        for spec in catalogue() {
            let levels = spec.extended_energy_levels()?;
            let threshold = spec.conventional_partner()?.continuum_threshold();
            let grid = default_grid(spec.family, levels[0].energy, levels[levels.len() - 1].energy, threshold)?;
            let (got, _) = ext(spec, grid, &[])?;
            if got.len() != levels.len() {
                misses += 1;
            }
        }
        Ok(misses as f64)
    })();
    s.at_most_or("numeric bound-state count vs extended levels", counts, 0.0);

    let repeat = (|| -> R<f64> {
        let grid = Grid::new(-30.0, 30.0, 3000)?;
        let spec = rm(ExtensionType::I, 2.0, 3.1, 2);
        let (a, _) = ext(spec, grid, &[])?;
        let (b, _) = ext(spec, grid, &[])?;
        let same = a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits());
        Ok((!same) as u8 as f64)
    })();
    s.at_most_or("repeated eigenvalues differ bitwise", repeat, 0.0);
}

fn shape_invariance(s: &mut SectionBuilder) {
    s.uses(&["enlarged_partner_spec", "shape_invariance_check", "deleted_ground_superpotential"]);
    let cases = [
        (rm(ExtensionType::I, 2.0, 3.1, 2), (1.0, 1), (-15.0, 15.0)),
        (eck(ExtensionType::I, 3.0, 11.0, 4), (4.0, 3), (0.05, 30.0)),
        (eck(ExtensionType::II, 1.5, 16.0, 2), (2.5, 3), (0.05, 30.0)),
    ];
    for (spec, (a, m), (lo, hi)) in cases {
        let mapped = enlarged_partner_spec(&spec).map(|p| (p.a != a || p.m != m || p.b != spec.b) as u8 as f64);
        s.at_most_or(format!("enlarged partner of {spec} is (A = {a}, m = {m})"), mapped, 0.0);
        let xs: Vec<f64> = (0..1000).map(|i| lo + (hi - lo) * i as f64 / 999.0).collect();
        s.at_most_or(
            format!("|V_ext + 2 W' - V_ext(partner)|, {spec}"),
            shape_invariance_check(&spec, &xs),
            1e-8,
        );
    }
    let exit = matches!(
        shape_invariance_check(&rm(ExtensionType::I, 1.0, 2.2, 1), &[0.0]),
        Err(Error::ChainExit { .. })
    );
    s.at_least("chain exit reported for m = 1 -> 0", exit as u8 as f64, 1.0);
}
