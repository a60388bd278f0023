//! Spectrum cache: exact round-trip, distinct keys, corrupt files.

use std::fs;

use bilap::cache::{cache_key, cache_path, cache_spectrum, load_spectrum, lookup};
use bilap_core::spectra1d::spectrum_1d;
use bilap_core::{BoundaryCondition, DomainSpec, Pair, Source, Spectrum};

#[test]
fn round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let s = spectrum_1d(Pair::KUTTLER_SIGILLITO, 60, 0.7).unwrap();
    let path = cache_spectrum(&s, dir.path()).unwrap();
    let key = cache_key(&s.domain(), &s.bc(), &s.source());
    assert_eq!(path, cache_path(dir.path(), &key));
    let back = load_spectrum(dir.path(), &key).unwrap().unwrap();
    assert_eq!(back, s);
    for (a, b) in back.values().iter().zip(s.values()) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
    assert!(load_spectrum(dir.path(), "absent").unwrap().is_none());
}

#[test]
fn different_parameters_give_different_files() {
    let sq = DomainSpec::unit_square();
    let bc = BoundaryCondition::dirichlet();
    let keys = [
        cache_key(&sq, &bc, &Source::FiniteDifference { nx: 31, ny: 31 }),
        cache_key(&sq, &bc, &Source::FiniteDifference { nx: 63, ny: 63 }),
        cache_key(&DomainSpec::rectangle(1.0, 2.0).unwrap(), &bc, &Source::FiniteDifference { nx: 31, ny: 31 }),
        cache_key(&DomainSpec::rectangle(2.0, 1.0).unwrap(), &bc, &Source::FiniteDifference { nx: 31, ny: 31 }),
        cache_key(&sq, &BoundaryCondition::laplacian_dirichlet(), &Source::FiniteDifference { nx: 31, ny: 31 }),
        cache_key(&DomainSpec::interval(1.0).unwrap(), &BoundaryCondition::pair(0, 1).unwrap(), &Source::Exact),
        cache_key(&DomainSpec::interval(1.0).unwrap(), &BoundaryCondition::pair(0, 2).unwrap(), &Source::Exact),
    ];
    let dir = tempfile::tempdir().unwrap();
    let distinct: std::collections::HashSet<_> = keys.iter().map(|k| cache_path(dir.path(), k)).collect();
    assert_eq!(distinct.len(), keys.len());
}

#[test]
fn corrupt_entry_is_a_miss() {
    let dir = tempfile::tempdir().unwrap();
    let s = Spectrum::new(vec![1.0, 2.0], DomainSpec::unit_square(), BoundaryCondition::dirichlet(), Source::Exact).unwrap();
    let path = cache_spectrum(&s, dir.path()).unwrap();
    let key = cache_key(&s.domain(), &s.bc(), &s.source());
    assert!(lookup(dir.path(), &key, 2).is_some());
    assert!(lookup(dir.path(), &key, 3).is_none(), "too short to serve");
    fs::write(&path, "{ not json").unwrap();
    assert!(load_spectrum(dir.path(), &key).is_err());
    assert!(lookup(dir.path(), &key, 1).is_none());
    let unordered = fs::read_to_string(cache_spectrum(&s, dir.path()).unwrap()).unwrap().replace("2.0000000000000000e0", "0.5");
    fs::write(&path, unordered).unwrap();
    assert!(load_spectrum(dir.path(), &key).is_err());
}
