use proptest::prelude::*;
use quasispin::format::{format_float, serialize, Cell, OutputFormat, Table, THERMO_COLUMNS};
use quasispin::par;
use quasispin_core::sweep::{
    figure1_series, figure2_series, phase_map, temperature_sweep, PhaseMapConfig, SweepConfig,
};
use quasispin_core::{ModelParams, Variant};

proptest! {
    #[test]
    fn full_precision_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let back: f64 = format_float(x, 17).parse().unwrap();
        prop_assert_eq!(back, if x == 0.0 { 0.0 } else { x });
    }

    #[test]
    fn rounding_error_is_bounded(x in -1e30f64..1e30, p in 6usize..=17) {
        let back: f64 = format_float(x, p).parse().unwrap();
        let bound = 0.5 * 10f64.powi(1 - p as i32) * x.abs();
        prop_assert!((back - x).abs() <= bound * (1.0 + 1e-12) + f64::MIN_POSITIVE);
    }

    #[test]
    fn csv_text_round_trips(cells in prop::collection::vec("[ -~\n]{0,12}", 1..6)) {
        let columns: Vec<String> = (0..cells.len()).map(|i| format!("c{i}")).collect();
        let mut table = Table::new(&columns);
        table.push(cells.iter().map(|s| Cell::Text(s.clone())).collect());
        let bytes = table.render(OutputFormat::Csv, 9);
        let mut reader = csv::Reader::from_reader(bytes.as_slice());
        let rows: Vec<csv::StringRecord> = reader.records().collect::<Result<_, _>>().unwrap();
        prop_assert_eq!(rows.len(), 1);
        let got: Vec<&str> = rows[0].iter().collect();
        prop_assert_eq!(got, cells.iter().map(String::as_str).collect::<Vec<_>>());
    }
}

#[test]
fn sweep_json_and_csv_carry_the_same_values() {
    let params = ModelParams::from_ratio(0.6, Variant::Proposed).unwrap();
    let pts = temperature_sweep(&SweepConfig::new(params, 0.0, 1.0, 7)).unwrap();
    let csv_text = String::from_utf8(serialize(&pts, OutputFormat::Csv, 12)).unwrap();
    let json = String::from_utf8(serialize(&pts, OutputFormat::Json, 12)).unwrap();
    assert!(json.starts_with("[\n  {\"theta\": 0, ") && json.ends_with("}\n]\n"));
    for (line, obj) in csv_text.lines().skip(1).zip(json.lines().skip(1)) {
        let mut rebuilt = String::from("{");
        for (i, (key, value)) in THERMO_COLUMNS.iter().zip(line.split(',')).enumerate() {
            if i > 0 {
                rebuilt.push_str(", ");
            }
            let quoted = matches!(*key, "phase" | "variant");
            if quoted {
                rebuilt.push_str(&format!("\"{key}\": \"{value}\""));
            } else {
                rebuilt.push_str(&format!("\"{key}\": {value}"));
            }
        }
        rebuilt.push('}');
        assert_eq!(obj.trim().trim_end_matches(','), rebuilt);
    }
}

#[test]
fn parallel_drivers_match_sequential() {
    let pool = par::pool(3);
    let base = ModelParams::from_ratio(0.6, Variant::Traditional).unwrap();

    let cfg = SweepConfig::new(base, 0.0, 1.0, 57);
    assert_eq!(
        par::temperature_sweep(&pool, &cfg).unwrap(),
        temperature_sweep(&cfg).unwrap()
    );

    let ratios = [0.5, 0.51, 0.6];
    assert_eq!(
        par::figure1_series(&pool, &base, &ratios, 41, 1e-10).unwrap(),
        figure1_series(&base, &ratios, 41, 1e-10).unwrap()
    );
    assert_eq!(
        par::figure2_series(&pool, &base, 0.6, 41, 1e-10).unwrap(),
        figure2_series(&base, 0.6, 41, 1e-10).unwrap()
    );

    let cfg = PhaseMapConfig {
        base: base.with_variant(Variant::Proposed),
        chi_ratio_range: (0.3, 0.9),
        theta_range: (0.005, 1.0),
        nx: 9,
        ny: 30,
        tol: 1e-10,
    };
    assert_eq!(par::phase_map(&pool, &cfg).unwrap(), phase_map(&cfg).unwrap());
}

#[test]
fn empty_tables() {
    let table = Table::new(&["a", "b"]);
    assert_eq!(table.render(OutputFormat::Json, 9), b"[]\n");
    assert_eq!(table.render(OutputFormat::Csv, 9), b"a,b\n");
}
