use qubit_thermo::dynamics::TimeGrid;
use qubit_thermo::quantifiers::QuadratureSpec;
use qubit_thermo::runner::{
    corr, parse_config, parse_csv, render_csv, render_plot, run, write_csv, write_plot, ModelConfig, RunSpec,
    CSV_HEADER,
};
use qubit_thermo::spin_boson::gad::GadConfig;
use qubit_thermo::spin_boson::jcm::JcmConfig;
use qubit_thermo::spin_boson::nmad::NmadConfig;
use qubit_thermo::spin_spin::collision::CollisionConfig;

fn short_gad() -> RunSpec {
    RunSpec::new(ModelConfig::Gad(GadConfig {
        t_grid: TimeGrid::uniform(0.0, 20.0, 21).unwrap(),
        ..GadConfig::figure5()
    }))
}

fn assert_well_formed_svg(text: &str) {
    let doc = roxmltree::Document::parse(text).expect("well-formed XML");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    let polylines = root.descendants().filter(|n| n.has_tag_name("polyline")).count();
    assert_eq!(polylines, 4, "two series per panel");
    assert!(!text.contains("href"), "no external resources");
}

#[test]
fn figure2_collision_run_has_100_records_and_negative_corr() {
    let out = run(&RunSpec::new(ModelConfig::Collision(CollisionConfig::figure2()))).unwrap();
    assert_eq!(out.records.len(), 100);
    assert_eq!(out.records[0].abscissa, 1.0);
    let d = out.column(|r| r.delta);
    let s = out.column(|r| r.entropy);
    assert!(corr(&d, &s).unwrap() < 0.0);
}

#[test]
fn single_collision_gives_one_record() {
    let cfg = CollisionConfig {
        n_collisions: 1,
        ..CollisionConfig::figure2()
    };
    let out = run(&RunSpec::new(ModelConfig::Collision(cfg))).unwrap();
    assert_eq!(out.records.len(), 1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.csv");
    write_csv(&out, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let comments = lines.iter().filter(|l| l.starts_with('#')).count();
    assert_eq!(comments, out.metadata.len());
    assert_eq!(lines.len(), comments + 2);
    assert_eq!(lines[comments], CSV_HEADER);
    // The plot needs two points.
    assert!(render_plot(&out).is_err());
}

#[test]
fn csv_round_trip_at_twelve_digits() {
    let out = run(&short_gad()).unwrap();
    let text = render_csv(&out);
    assert!(!text.contains('\r'));
    let (meta, recs) = parse_csv(&text).unwrap();
    assert_eq!(meta, out.metadata);
    assert_eq!(recs.len(), out.records.len());
    let round = |v: f64| format!("{v:.11e}").parse::<f64>().unwrap();
    for (a, b) in recs.iter().zip(&out.records) {
        assert_eq!(a.abscissa, round(b.abscissa));
        assert_eq!(a.delta, round(b.delta));
        assert_eq!(a.entropy, round(b.entropy));
        assert_eq!(a.sigma, round(b.sigma));
        assert_eq!(a.ergotropy, round(b.ergotropy));
        if b.delta != 0.0 {
            assert!(((a.delta - b.delta) / b.delta).abs() < 1e-11);
        }
    }
    // Each data field carries 12 significant digits.
    let row = text.lines().find(|l| l.starts_with("2.0")).unwrap();
    for field in row.split(',') {
        let mantissa = field.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 12, "{field}");
    }
}

#[test]
fn csv_bytes_deterministic() {
    let a = render_csv(&run(&short_gad()).unwrap());
    let b = render_csv(&run(&short_gad()).unwrap());
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    write_csv(&run(&short_gad()).unwrap(), &p1).unwrap();
    write_csv(&run(&short_gad()).unwrap(), &p2).unwrap();
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
}

#[test]
fn metadata_carries_conventions() {
    let out = run(&RunSpec::new(ModelConfig::Nmad(NmadConfig {
        t_grid: TimeGrid::uniform(0.0, 5.0, 6).unwrap(),
        ..NmadConfig::figure4()
    })))
    .unwrap();
    assert_eq!(out.metadata["reg_epsilon"], "0.000000001");
    assert!(out.metadata.contains_key("kernel"));
    assert!(out.metadata.contains_key("version"));

    let out = run(&RunSpec::new(ModelConfig::Jcm(JcmConfig {
        t_grid: TimeGrid::uniform(0.0, 2.0, 3).unwrap(),
        ..JcmConfig::figure6()
    })))
    .unwrap();
    assert!(out.metadata.contains_key("truncation_tail_weight"));
    assert!(!out.metadata.contains_key("warning"));
}

#[test]
fn plot_is_well_formed_two_panel_svg() {
    let out = run(&RunSpec::new(ModelConfig::Collision(CollisionConfig::figure2()))).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.svg");
    write_plot(&out, &path).unwrap();
    assert!(std::fs::metadata(&path).unwrap().len() > 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_well_formed_svg(&text);
    for label in ["δ", "S", "Σ", "𝒲"] {
        assert!(text.contains(&format!(">{label}</text>")), "{label}");
    }
}

#[test]
fn constant_series_plot_is_finite() {
    // g = 0: the qubit does not evolve, every series is flat.
    let out = run(&RunSpec::new(ModelConfig::Jcm(JcmConfig {
        g: 0.0,
        t_grid: TimeGrid::uniform(0.0, 3.0, 4).unwrap(),
        ..JcmConfig::figure6()
    })))
    .unwrap();
    let svg = render_plot(&out).unwrap();
    assert!(!svg.contains("NaN") && !svg.contains("inf"));
    assert_well_formed_svg(&svg);
}

#[test]
fn quadrature_override_is_recorded() {
    let mut spec = short_gad();
    spec.quadrature = QuadratureSpec::new(16, 32).unwrap();
    let out = run(&spec).unwrap();
    assert_eq!(out.metadata["quadrature"], "16x32");
}

#[test]
fn parsed_config_runs() {
    let spec =
        parse_config("model = nmad\nomega0 = 10\nlambda = 0.05\ngamma0 = 50\nt_max = 3\nn_samples = 4\n").unwrap();
    let out = run(&spec).unwrap();
    assert_eq!(out.records.len(), 4);
    assert_eq!(out.records[0].sigma, 0.0);
}
