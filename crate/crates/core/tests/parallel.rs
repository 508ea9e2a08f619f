use lgcy_core::continuation::build_u_matrix_with;
use lgcy_core::continuation::{e_const, C_CONST};
use lgcy_core::ifunction::{build_fjrw_omegas, build_gw_omegas};
use lgcy_core::mirror::{fjrw_j_coefficients, instanton_numbers};
use lgcy_core::singularity::{ProfileReport, SingularityProfile};
use lgcy_core::{Complex, Execution};

#[test]
fn periods_agree() {
    let seq = build_fjrw_omegas(40, Execution::Sequential).unwrap();
    let par = build_fjrw_omegas(40, Execution::Parallel).unwrap();
    assert_eq!(seq.omegas, par.omegas);
    let seq = build_gw_omegas(8, Execution::Sequential).unwrap();
    let par = build_gw_omegas(8, Execution::Parallel).unwrap();
    assert_eq!(seq.omegas, par.omegas);
}

#[test]
fn j_slots_agree() {
    assert_eq!(
        fjrw_j_coefficients(30, Execution::Sequential).unwrap(),
        fjrw_j_coefficients(30, Execution::Parallel).unwrap()
    );
}

#[test]
fn instantons_agree() {
    let seq = instanton_numbers(6, Execution::Sequential).unwrap();
    let par = instanton_numbers(6, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn u_matrix_agrees() {
    let c = Complex::new(C_CONST, 0.0);
    let seq = build_u_matrix_with(c, e_const(), Execution::Sequential).unwrap();
    let par = build_u_matrix_with(c, e_const(), Execution::Parallel).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn profile_report_round_trip() {
    for text in ["x1^5+x2^5+x3^5+x4^5+x5^5", "x^3+x*y^3", "x^2*y+y^3", "x^3+x*y^2+y*z^2"] {
        let report = SingularityProfile::from_text(text).unwrap().report();
        let json = serde_json::to_string(&report).unwrap();
        let back: ProfileReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
