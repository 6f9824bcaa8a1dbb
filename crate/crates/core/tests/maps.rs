use susyrad::geonium::{coulomb_to_geonium, GeoniumLevel};
use susyrad::maps::{
    default_grid, enumerate_admissible_targets, solve_map_parameters, verify_map_identity,
    CoulombLabel, MapMode,
};

#[test]
fn exact_maps_are_constant_over_the_admissible_table() {
    let grid = default_grid();
    let mut verified = 0;
    for d in 2..=5 {
        for n in 1..=4 {
            for l in 0..n {
                let source = CoulombLabel { dimension: d, n, l };
                for lambda in [0.0, 1.0] {
                    let Ok(spec) = solve_map_parameters(source, lambda, MapMode::Exact) else {
                        continue;
                    };
                    let v = verify_map_identity(&spec, &grid).unwrap();
                    assert!(v.passed(), "{source:?} λ={lambda}: {:e}", v.constancy_defect);
                    verified += 1;
                }
            }
        }
    }
    assert!(verified >= 60, "only {verified} maps");
}

#[test]
fn hydrogen_lands_on_geonium() {
    let grid = default_grid();
    for n in 1..=4 {
        for l in 0..n {
            let (big_n, big_l) = coulomb_to_geonium(n, l).unwrap();
            let source = CoulombLabel { dimension: 3, n, l };
            let spec = solve_map_parameters(source, 1.0, MapMode::Exact).unwrap();
            assert!(verify_map_identity(&spec, &grid).unwrap().passed());
            let level = GeoniumLevel::new(big_n, big_l, 0.0).unwrap();
            assert_eq!(level.energy, 2.0 * n as f64);
        }
    }
}

#[test]
fn enumeration_is_sorted_and_complete() {
    let source = CoulombLabel { dimension: 3, n: 2, l: 0 };
    let specs = enumerate_admissible_targets(source, &[-1.0, 0.0, 1.0, 2.0], &[MapMode::Exact]).unwrap();
    let dims: Vec<u32> = specs.iter().map(|s| s.target.dimension).collect();
    assert_eq!(dims, vec![2, 4]);
    let mut sorted = specs.clone();
    sorted.sort_by_key(|s| s.target);
    assert_eq!(sorted, specs);
}

#[test]
fn rejections_name_every_violation() {
    let source = CoulombLabel { dimension: 2, n: 1, l: 0 };
    let text = solve_map_parameters(source, 2.0, MapMode::Exact).unwrap_err().to_string();
    assert!(text.contains("D < 2"), "{text}");
    let report = solve_map_parameters(source, -3.0, MapMode::Exact).unwrap_err();
    let text = report.to_string();
    assert!(text.contains("N < 0") && text.contains("L < 0"), "{text}");
    assert_eq!(report.violations.len(), 2, "{text}");
}
