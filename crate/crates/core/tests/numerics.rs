mod common;

use common::{catalogue, eck, rm};
use susyext::extensions::{ExtensionSpec, ExtensionType};
use susyext::numerics::{default_grid, node_count, numeric_spectrum, Grid, SpectralResult};
use susyext::potentials::{ConventionalParams, Family};
use susyext::susy::y_ode_residual;

fn conventional(family: Family, a: f64, b: f64, grid: &Grid) -> (Vec<f64>, SpectralResult) {
    let p = ConventionalParams::new(family, a, b).unwrap();
    let r = numeric_spectrum(|x| p.potential_value(x).unwrap(), grid, p.continuum_threshold()).unwrap();
    (p.energies(), r)
}

fn extended(spec: &ExtensionSpec, grid: &Grid) -> SpectralResult {
    let threshold = spec.conventional_partner().unwrap().continuum_threshold();
    numeric_spectrum(|x| spec.extended_potential_value(x).unwrap(), grid, threshold).unwrap()
}

fn assert_close(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= tol, "{got:?} vs {want:?}");
    }
}

#[test]
fn conventional_spectra() {
    let (_, r) = conventional(Family::RosenMorseII, 4.0, 4.0, &Grid::new(-30.0, 30.0, 6000).unwrap());
    assert_close(&r.energies, &[-17.0, -10.77778], 5e-3);
    let (_, r) = conventional(Family::Eckart, 2.0, 6.0, &Grid::new(1e-3, 40.0, 8000).unwrap());
    assert_close(&r.energies, &[-13.0], 5e-3);
    for (k, v) in r.eigenvectors.iter().enumerate() {
        assert_eq!(node_count(&v[1..v.len() - 1]), k);
    }
}

#[test]
fn isospectral_pairs() {
    let cases = [
        (rm(ExtensionType::I, 2.0, 3.1, 2), Grid::new(-30.0, 30.0, 6000).unwrap(), vec![-10.06778, -6.4025], 5e-3),
        (rm(ExtensionType::I, 1.0, 2.2, 1), Grid::new(-40.0, 40.0, 8000).unwrap(), vec![-5.21], 5e-3),
        (eck(ExtensionType::II, 1.5, 16.0, 2), Grid::new(1e-3, 30.0, 12000).unwrap(), vec![-47.21, -33.14796], 2e-2),
    ];
    for (spec, grid, want, tol) in cases {
        let partner = spec.conventional_partner().unwrap();
        let (_, p) = conventional(spec.family, partner.a(), partner.b(), &grid);
        let e = extended(&spec, &grid);
        assert_close(&p.energies, &want, tol);
        assert_close(&e.energies, &want, tol);
        assert_close(&e.energies, &p.energies, 1e-3);
    }
}

#[test]
fn type_three_extra_state() {
    let spec = rm(ExtensionType::III, 2.5, 1.0, 2);
    let r = extended(&spec, &Grid::new(-25.0, 25.0, 10_000).unwrap());
    assert_close(&r.energies, &[-20.29938, -2.69444], 1e-2);

    let spec = eck(ExtensionType::III, 3.0, 20.0, 2);
    let levels = spec.extended_energy_levels().unwrap();
    assert!((levels[0].energy + 401.0).abs() < 1e-9 && (levels[1].energy + 41.0).abs() < 1e-9);
    let r = extended(&spec, &Grid::new(1e-3, 30.0, 30_000).unwrap());
    assert_eq!(r.len(), 2);
    assert!((r.energies[1] + 41.0).abs() <= 2e-2);
    assert!((r.energies[0] + 401.0).abs() <= 1e-2 * 401.0);
    for i in 1..=50 {
        let z = 1.0 + 0.1 * i as f64;
        assert!(y_ode_residual(&spec, -3, z).unwrap().relative() <= 1e-8);
    }
}

#[test]
fn halving_the_step_reduces_the_error() {
    let cases = [
        (Family::RosenMorseII, 4.0, 4.0, -30.0, 30.0),
        (Family::RosenMorseII, 2.0, 3.0, -30.0, 30.0),
        (Family::Eckart, 2.0, 6.0, 1e-3, 40.0),
        (Family::Eckart, 3.0, 20.0, 1e-3, 30.0),
    ];
    for (family, a, b, lo, hi) in cases {
        let coarse = Grid::new(lo, hi, 1499).unwrap();
        let fine = Grid::new(lo, hi, 2999).unwrap();
        let (exact, rc) = conventional(family, a, b, &coarse);
        let (_, rf) = conventional(family, a, b, &fine);
        for (k, e) in exact.iter().enumerate() {
            let ec = (rc.energies[k] - e).abs();
            let ef = (rf.energies[k] - e).abs();
            assert!(ec >= 3.0 * ef, "{family:?} ({a}, {b}) level {k}: {ec} vs {ef}");
        }
    }
}

#[test]
fn numeric_counts_match_extended_levels() {
    for spec in catalogue() {
        let levels = spec.extended_energy_levels().unwrap();
        let threshold = spec.conventional_partner().unwrap().continuum_threshold();
        let grid = default_grid(
            spec.family,
            levels.first().unwrap().energy,
            levels.last().unwrap().energy,
            threshold,
        )
        .unwrap();
        let r = extended(&spec, &grid);
        assert_eq!(r.len(), levels.len(), "{spec}: {:?} vs {levels:?}", r.energies);
        for (k, v) in r.eigenvectors.iter().enumerate() {
            assert_eq!(node_count(&v[1..v.len() - 1]), k, "{spec} state {k}");
        }
    }
}

#[test]
fn spectra_are_bitwise_reproducible() {
    let spec = rm(ExtensionType::I, 2.0, 3.1, 2);
    let grid = Grid::new(-30.0, 30.0, 3000).unwrap();
    let a = extended(&spec, &grid);
    let b = extended(&spec, &grid);
    let bits = |r: &SpectralResult| {
        r.energies
            .iter()
            .chain(r.eigenvectors.iter().flatten())
            .map(|v| v.to_bits())
            .collect::<Vec<_>>()
    };
    assert_eq!(bits(&a), bits(&b));
}
