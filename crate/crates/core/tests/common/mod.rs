#![allow(dead_code)]

use susyext::extensions::{ExtensionSpec, ExtensionType};
use susyext::potentials::Family;

pub fn rm(t: ExtensionType, a: f64, b: f64, m: usize) -> ExtensionSpec {
    ExtensionSpec::new(Family::RosenMorseII, t, a, b, m)
}

pub fn eck(t: ExtensionType, a: f64, b: f64, m: usize) -> ExtensionSpec {
    ExtensionSpec::new(Family::Eckart, t, a, b, m)
}

/// Valid extensions of every family and type.
pub fn catalogue() -> Vec<ExtensionSpec> {
    use ExtensionType::*;
    let specs = vec![
        rm(I, 1.0, 2.2, 1),
        rm(I, 1.0, 3.0, 1),
        rm(I, 2.0, 3.1, 2),
        rm(I, 3.0, 9.5, 3),
        rm(II, 0.8, 0.5, 2),
        rm(II, 1.6, 2.0, 3),
        rm(III, 2.5, 1.0, 2),
        rm(III, 3.5, 2.0, 2),
        rm(III, 4.2, 1.5, 4),
        eck(I, 3.0, 11.0, 4),
        eck(I, 3.0, 5.0, 1),
        eck(I, 3.0, 5.5, 2),
        eck(II, 1.5, 16.0, 2),
        eck(II, 0.8, 5.0, 1),
        eck(III, 3.0, 20.0, 2),
        eck(III, 4.5, 40.0, 4),
    ];
    for s in &specs {
        assert!(s.validate().is_ok(), "{s}: {}", s.validate());
    }
    specs
}

/// Sample points in the interesting part of the domain.
pub fn sample_xs(family: Family, count: usize) -> Vec<f64> {
    let (lo, hi) = match family {
        Family::RosenMorseII => (-12.0, 12.0),
        Family::Eckart => (0.05, 12.0),
    };
    (0..count)
        .map(|i| lo + (hi - lo) * (i as f64 + 0.5) / count as f64)
        .collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}
