use std::path::PathBuf;

use maxclique::bench::ResultTable;
use maxclique::calibration::{audit_rescaling, compute_scaling_factor, empirical_ratio, rescale_predict};
use maxclique::{Algorithm, CalibrationError, CalibrationProfile, ScalingFactor};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn profile(machine: &str) -> CalibrationProfile {
    CalibrationProfile::load(data(&format!("dfmax_{machine}.json"))).unwrap()
}

fn results(machine: &str) -> ResultTable {
    ResultTable::load(data(&format!("java_{machine}.csv"))).unwrap()
}

fn dp2(x: f64) -> String {
    format!("{x:.2}")
}

#[test]
fn published_dfmax_factors() {
    let cyprus = profile("cyprus");
    let fais = compute_scaling_factor(&cyprus, &profile("fais")).unwrap();
    let dale = compute_scaling_factor(&cyprus, &profile("daleview")).unwrap();
    // 7.31 / 17.70 and 7.31 / 14.48
    assert!((fais.value - 7.31 / 17.70).abs() < 1e-12);
    assert!((dale.value - 7.31 / 14.48).abs() < 1e-12);
    assert_eq!(dp2(fais.value), "0.41");
    assert_eq!(dp2(dale.value), "0.50");
    assert_eq!(
        (fais.reference_label.as_str(), fais.target_label.as_str()),
        ("cyprus", "fais")
    );
    let own = compute_scaling_factor(&cyprus, &cyprus).unwrap();
    assert_eq!(own.value, 1.0);
}

#[test]
fn mean_of_ratios_would_not_reproduce_daleview() {
    let (c, d) = (profile("cyprus"), profile("daleview"));
    let mean: f64 = c
        .retained()
        .iter()
        .zip(d.retained())
        .map(|(a, b)| a.seconds / b.seconds)
        .sum::<f64>()
        / 3.0;
    assert_eq!(dp2(mean), "0.49");
    assert_eq!(dp2(compute_scaling_factor(&c, &d).unwrap().value), "0.50");
}

#[test]
fn drop_count_must_match_and_leave_entries() {
    let c = profile("cyprus");
    let f = profile("fais").with_drop_count(1);
    assert!(matches!(
        compute_scaling_factor(&c, &f),
        Err(CalibrationError::WorkloadMismatch(_))
    ));
    let all = c.clone().with_drop_count(5);
    assert!(matches!(all.validate(), Err(CalibrationError::DropCount { .. })));
    // dropping nothing keeps the zero entry and warns about it
    let c0 = c.with_drop_count(0);
    assert_eq!(c0.warnings().len(), 1);
    assert!(compute_scaling_factor(&c0, &profile("fais").with_drop_count(0)).is_ok());
}

#[test]
fn empirical_ratios_from_published_runs() {
    let (c, f, d) = (results("cyprus"), results("fais"), results("daleview"));
    let cases = [
        (Algorithm::Mcsa, &f, "0.12"),
        (Algorithm::Mcsa, &d, "0.26"),
        (Algorithm::Bbmc, &f, "0.14"),
        (Algorithm::Bbmc, &d, "0.10"),
    ];
    for (alg, target, want) in cases {
        let r: f64 = empirical_ratio(&c, target, alg).unwrap();
        assert_eq!(dp2(r), want, "{alg} {}", target.machines()[0]);
    }
}

#[test]
fn empirical_ratios_from_published_totals() {
    let pairs = [
        (1098.0 / 9033.0, "0.12"),
        (1098.0 / 4202.0, "0.26"),
        (539.4 / 3937.0, "0.14"),
        (539.4 / 5622.0, "0.10"),
    ];
    for (r, want) in pairs {
        assert_eq!(dp2(r), want);
    }
}

#[test]
fn worked_examples() {
    let (c, f, d) = (results("cyprus"), results("fais"), results("daleview"));
    let f041 = ScalingFactor::given(0.41, "cyprus", "fais").unwrap();
    let a = audit_rescaling(&f041, &c, &f, Algorithm::Mcsa).unwrap();
    let row = a.rows.iter().find(|r| r.instance == "brock200-1").unwrap();
    assert_eq!(format!("{:.2}", row.predicted_reference), "7.93");
    assert_eq!(format!("{:.1}", row.actual_reference), "4.8");
    assert!(row.relative_error.unwrap() > 0.6);
    assert!(a.render().contains("7.93"));

    let f050 = ScalingFactor::given(0.50, "cyprus", "daleview").unwrap();
    let b = audit_rescaling(&f050, &c, &d, Algorithm::Bbmc).unwrap();
    let row = b.rows.iter().find(|r| r.instance == "san1000").unwrap();
    assert_eq!(format!("{:.1}", row.predicted_reference), "27.4");
    assert_eq!(format!("{:.1}", row.actual_reference), "5.9");
    // the empirical ratio gives a much closer estimate
    assert_eq!(format!("{:.1}", 54.816 * 0.10), "5.5");
    assert_eq!(dp2(b.empirical_ratio), "0.10");

    assert_eq!(format!("{:.1}", rescale_predict(19.343, &f041)), "7.9");
}

#[test]
fn audit_with_empirical_factor_has_no_total_error() {
    let (c, f) = (results("cyprus"), results("fais"));
    let r: f64 = empirical_ratio(&c, &f, Algorithm::Mcsa).unwrap();
    let factor = ScalingFactor::given(r, "cyprus", "fais").unwrap();
    let a = audit_rescaling(&factor, &c, &f, Algorithm::Mcsa).unwrap();
    assert!(a.total_relative_error.abs() < 1e-12);
    let mut csv = Vec::new();
    a.write_csv(&mut csv).unwrap();
    assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 22);
}

#[test]
fn daleview_finding_is_expressible() {
    // BBMC loses to MCSa on the Atom machine for most instances
    let d = results("daleview");
    let t = maxclique::bench::ratio_table(&d, Algorithm::Mcsa, Algorithm::Bbmc).unwrap();
    let below = t.rows.iter().filter(|r| r.ratio.value().unwrap() < 1.0).count();
    assert_eq!(below, 18);
    assert!(t.total.value().unwrap() < 1.0);
    let c = results("cyprus");
    let tc = maxclique::bench::ratio_table(&c, Algorithm::Mcsa, Algorithm::Bbmc).unwrap();
    assert!(tc.total.value().unwrap() > 1.0);
}

#[test]
fn mismatched_instance_sets_are_rejected() {
    let c = results("cyprus");
    let f = results("fais");
    let fewer = ResultTable::from_records(
        f.metadata.clone(),
        f.records()
            .iter()
            .filter(|r| r.instance != "san1000")
            .cloned()
            .collect(),
    )
    .unwrap();
    assert!(matches!(
        empirical_ratio::<f64>(&c, &fewer, Algorithm::Mcsa),
        Err(CalibrationError::InstanceMismatch(_))
    ));
    assert!(ScalingFactor::given(0.0, "a", "b").is_err());
    assert!(ScalingFactor::given(f64::NAN, "a", "b").is_err());
}

#[test]
fn profile_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    let prof = CalibrationProfile::new("box", [("r100.5", 0.0), ("r200.5", 0.1), ("r300.5", 0.5)]);
    prof.save(&p).unwrap();
    assert_eq!(CalibrationProfile::load(&p).unwrap(), prof);
}
