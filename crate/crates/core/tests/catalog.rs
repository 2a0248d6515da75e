use std::time::{Duration, Instant};

use eigenseq::catalog::{check_closed_forms, Catalog, CycleMatch};
use eigenseq::eigen::partition_orbit;
use eigenseq::{Offset, Property, Sequence};

#[test]
fn every_row_reproduces() {
    let catalog = Catalog::builtin();
    let start = Instant::now();
    let summary = catalog.verify_all();
    let elapsed = start.elapsed();
    for r in summary.failures() {
        eprintln!("{r}");
    }
    assert!(summary.all_passed());
    assert_eq!(summary.reports.len(), 55);
    assert!(elapsed < Duration::from_secs(10), "{elapsed:?}");
}

#[test]
fn ids_are_contiguous() {
    let catalog = Catalog::builtin();
    let ids: Vec<String> = catalog.ids().into_iter().map(String::from).collect();
    let mut numbers: Vec<u32> = ids.iter().map(|id| id[1..].parse().unwrap()).collect();
    numbers.sort_unstable();
    assert_eq!(numbers, (1..=52).collect::<Vec<_>>());
}

#[test]
fn duplicate_rows_agree() {
    let catalog = Catalog::builtin();
    for id in ["S11", "S15", "S39"] {
        let rows = catalog.entries_for(id);
        assert_eq!(rows.len(), 2);
        assert_ne!(rows[0].operator, rows[1].operator);
        assert_eq!(rows[0].terms.terms(), rows[1].terms.terms());
    }
}

#[test]
fn closed_forms_at_higher_order() {
    for check in check_closed_forms(14) {
        assert!(check.passed, "{check}");
    }
}

#[test]
fn delta_rows_form_the_listed_cycles() {
    let catalog = Catalog::builtin();
    for entry in catalog
        .entries()
        .iter()
        .filter(|e| e.property == Property::Delta)
    {
        let report = partition_orbit(&entry.terms, entry.terms.len(), 4).unwrap();
        assert_eq!(report.tail, 0, "{}", entry.id);
        let expected = if entry.id == "S34" { 1 } else { 2 };
        assert_eq!(report.period, expected, "{}", entry.id);
        match catalog.classify_cycle(report.cycle()) {
            CycleMatch::Listed(ids) => assert_eq!(ids[0], entry.id),
            other => panic!("{}: {other:?}", entry.id),
        }
    }
}

#[test]
fn naturals_fall_into_a_two_cycle() {
    let catalog = Catalog::builtin();
    for len in [12usize, 20, 30] {
        let start: Vec<i64> = (1..=len as i64).collect();
        let report = partition_orbit(&Sequence::from_ints(Offset::One, &start), len, 30).unwrap();
        assert_eq!(report.period, 2);
        assert_eq!(report.exact, len);
        let CycleMatch::Listed(mut ids) = catalog.classify_cycle(report.cycle()) else {
            panic!("unlisted cycle");
        };
        ids.sort();
        assert_eq!(ids, ["S37", "S38"]);
    }
}
