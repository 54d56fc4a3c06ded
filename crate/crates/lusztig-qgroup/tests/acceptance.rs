//! Acceptance suite: every headline identity of the construction, run at
//! concrete parameters with exact arithmetic. One test per criterion; each
//! prints a single pass/fail line (visible with `--nocapture`).

use std::sync::Arc;

use lusztig_qgroup::cartan::CartanMatrix;
use lusztig_qgroup::cyclotomic::CycParams;
use lusztig_qgroup::report::CheckResult;
use lusztig_qgroup::uq::UqContext;
use lusztig_qgroup::{multi, suites, td, torus_special, uq};

fn require_all(criterion: &str, checks: &[CheckResult]) {
    let failed: Vec<&CheckResult> = checks.iter().filter(|c| !c.passed()).collect();
    if failed.is_empty() {
        println!("{}: PASS ({} checks)", criterion, checks.len());
    } else {
        println!("{}: FAIL ({}/{} checks failed)", criterion, failed.len(), checks.len());
        for f in &failed {
            println!("    {} ({}): {:?}", f.id, f.rule, f.witness);
        }
        panic!("{} failed", criterion);
    }
}

#[test]
fn criterion_01_p_table_byte_match() {
    require_all("criterion 01 (p table)", &suites::p_table_check().unwrap());
}

#[test]
fn criterion_02_p_diagonal_closed_form() {
    require_all(
        "criterion 02 (diagonal p closed form, n <= 12)",
        &suites::p_diag_check(12).unwrap(),
    );
}

#[test]
fn criterion_03_k_power_difference() {
    require_all(
        "criterion 03 (K-power difference expansion, n <= 12)",
        &suites::k_power_difference_check(12).unwrap(),
    );
}

#[test]
fn criterion_04_comultiplication_of_k() {
    require_all(
        "criterion 04 (comultiplication of k, t <= 10)",
        &suites::comult_k_check(10).unwrap(),
    );
}

#[test]
fn criterion_05_cyclotomic_identities() {
    require_all(
        "criterion 05 (cyclotomic evaluations, l in 2..=6, m <= 4)",
        &suites::cyclotomic_checks(&[2, 3, 4, 5, 6], 4).unwrap(),
    );
}

#[test]
fn criterion_06_k2l_derived_and_products() {
    let mut checks = Vec::new();
    for ell in [2i64, 3, 4, 5] {
        let params = CycParams::new(ell).unwrap();
        checks.extend(torus_special::verify_k2l_derivation(&params, 1).unwrap());
        let ctx = torus_special::SpecContext::new(Arc::clone(&params), 1);
        checks.extend(torus_special::verify_spec_k_products(&ctx, 0, 4).unwrap());
    }
    require_all("criterion 06 (derived K^(2l) = 1 and k products, l in 2..=5)", &checks);
}

#[test]
fn criterion_07_splitting_isomorphism() {
    let mut checks = Vec::new();
    for ell in [2i64, 3, 4, 5] {
        let params = CycParams::new(ell).unwrap();
        checks.extend(torus_special::verify_iso(&params, 2 * ell).unwrap());
    }
    require_all("criterion 07 (splitting isomorphism, l in 2..=5)", &checks);
}

#[test]
fn criterion_08_counit_table() {
    require_all(
        "criterion 08 (counit table, |c| <= 4, t <= 4, l = 3)",
        &suites::counit_table_check(3, 4, 4).unwrap(),
    );
}

#[test]
fn criterion_09_kl_commutators() {
    let mut checks = Vec::new();
    for (name, cm) in [
        ("A1", CartanMatrix::a1()),
        ("A1xA1", CartanMatrix::a1_x_a1()),
        ("A2", CartanMatrix::a2()),
    ] {
        let ctx = UqContext::new(cm, CycParams::new(3).unwrap());
        checks.extend(uq::verify_kl_commutators(&ctx, name).unwrap());
    }
    require_all("criterion 09 (k_l commutators, l = 3, three Cartan types)", &checks);
}

#[test]
fn criterion_10_derived_t_constants() {
    let mut checks = Vec::new();
    for ell in [3i64, 5, 2, 4] {
        checks.extend(suites::t_constants_check(ell).unwrap());
    }
    require_all(
        "criterion 10 (t-commutation constants: engine = oracle; closed values for odd l)",
        &checks,
    );
}

#[test]
fn criterion_11_datum_oracle_equivalence() {
    let mut checks = Vec::new();
    for (name, cm) in [("A1", CartanMatrix::a1()), ("A2", CartanMatrix::a2())] {
        let ctx = UqContext::new(cm, CycParams::new(3).unwrap());
        checks.extend(td::verify_oracle_equivalence(&ctx, name, 6).unwrap());
    }
    let ctx = UqContext::new(CartanMatrix::a2(), CycParams::new(3).unwrap());
    checks.extend(td::verify_reconstruction(&ctx, "A2", 200, 3, 20260809).unwrap());
    require_all(
        "criterion 11 (datum vs projections, deg <= 2l; 200 reconstructed products)",
        &checks,
    );
}

#[test]
fn criterion_12_td_axiom_sweep() {
    let ctx = UqContext::new(CartanMatrix::a2(), CycParams::new(3).unwrap());
    require_all(
        "criterion 12 (datum axiom sweep, l = 3, A2, bound l)",
        &td::verify_td_axioms(&ctx, "A2", 3).unwrap(),
    );
}

#[test]
fn criterion_13_multi_laced() {
    let mut checks = Vec::new();
    let mp = multi::MultiParams::new(vec![1, 2], CycParams::new(5).unwrap()).unwrap();
    checks.extend(multi::verify_multi(&mp, 4).unwrap());
    let mp2 = multi::MultiParams::new(vec![1, 2], CycParams::new(2).unwrap()).unwrap();
    let violation = multi::verify_multi(&mp2, 4).unwrap();
    assert!(
        violation
            .iter()
            .any(|c| c.id == "multi.split.l2.i2"
                && c.witness.as_deref().unwrap_or("").contains("hypothesis violated")),
        "the hypothesis-violation path must be exercised and reported"
    );
    checks.extend(violation);
    require_all(
        "criterion 13 (scaled torus: l = 5, d = (1,2) verified; l = 2 violation reported)",
        &checks,
    );
}

#[test]
fn criterion_14_confluence_sweep() {
    require_all(
        "criterion 14 (rank-2 confluence sweep, l = 3, words of <= 3 letters)",
        &suites::confluence_check(3, 3).unwrap(),
    );
}
