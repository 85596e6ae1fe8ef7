use grasscode::codes::{grassmann_code, schubert_code};
use grasscode::grassgeo::Grassmannian;
use grasscode::verify::{run_suite, run_suites};
use grasscode::{FieldSpec, Suite};

#[test]
fn grassmann_weight_distribution() {
    let f = FieldSpec::from_order(2).unwrap();
    let w = grassmann_code(2, 4, &f)
        .unwrap()
        .weight_distribution()
        .unwrap();
    let nonzero: Vec<(usize, u64)> = w.into_iter().enumerate().filter(|&(_, c)| c > 0).collect();
    assert_eq!(nonzero, [(0, 1), (16, 35), (20, 28)]);
}

// distance of the divisor code is q^3 for (2,4) and q^5 for (2,5)
#[test]
fn schubert_code_distance() {
    for (m, q, d) in [(4, 2, 8), (4, 3, 27), (5, 2, 32)] {
        let f = FieldSpec::from_order(q).unwrap();
        assert_eq!(schubert_code(2, m, &f).unwrap().min_distance().unwrap(), d);
    }
}

#[test]
fn strata_sizes() {
    let f = FieldSpec::from_order(3).unwrap();
    let g = Grassmannian::new(2, 4, &f).unwrap();
    assert_eq!(g.stratum_sizes(), [81, 48, 1]);
    let g = Grassmannian::new(3, 5, &FieldSpec::from_order(2).unwrap()).unwrap();
    assert_eq!(g.stratum_sizes(), [64, 84, 7, 0]);
}

#[test]
fn plane_geometry() {
    // G(2,3) is the dual Fano plane
    let f = FieldSpec::from_order(2).unwrap();
    let checks = run_suite(Suite::Chow, 2, 3, &f, 0).unwrap();
    assert_eq!(checks[0].csv_line(), "chow,(2,3,2),168,168,PASS");
}

#[test]
fn suites_at_larger_fixtures() {
    let suites = [
        Suite::Hodge,
        Suite::Kernel,
        Suite::Strata,
        Suite::Orders,
        Suite::Schubert,
    ];
    for (l, m, q) in [(2, 5, 2), (3, 5, 2), (2, 4, 5), (3, 6, 2)] {
        let f = FieldSpec::from_order(q).unwrap();
        for c in run_suites(&suites, l, m, &f, 3).unwrap() {
            assert!(c.pass, "{c}");
        }
    }
}

#[test]
fn guards_are_errors() {
    let f = FieldSpec::from_order(3).unwrap();
    assert!(run_suite(Suite::Paut, 2, 4, &f, 0).unwrap_err().is_guard());
    assert!(run_suite(Suite::Chow, 2, 4, &f, 0).unwrap_err().is_guard());
    assert!(run_suite(Suite::Kernel, 1, 4, &f, 0).is_err());
}
