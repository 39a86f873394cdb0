use lattice_lab_core::zeta::{conjecture_check, verify_up_to, xi_check, zeta, zeta_prime, Middle};
use lattice_lab_core::ZetaPolynomial;

#[test]
fn xi_criterion_agrees_with_the_conjecture_check() {
    for g in 1..=32 {
        let c = conjecture_check(g).unwrap();
        let x = xi_check(g);
        assert!(c.passed(), "g = {g}: {:?}", c.offending);
        assert_eq!(c.passed(), x.ok, "g = {g}");
    }
}

#[test]
fn sweep_certifies_every_g() {
    let mut seen = 0;
    let all = verify_up_to(40, |_| seen += 1);
    assert_eq!(seen, 40);
    assert!(all.iter().all(|c| c.passed()));
    assert_eq!(
        all.iter().map(|c| c.g).collect::<Vec<_>>(),
        (1..=40).collect::<Vec<_>>()
    );
}

#[test]
fn recursion_by_hand() {
    // alpha zeta_2 + 4 (beta + 8) zeta_1 + 8 gamma
    let z3 = ZetaPolynomial::parse(Middle::Beta, "α³ + 5αβ + 24α + 8γ").unwrap();
    assert_eq!(zeta(3), z3, "{}", zeta(3));
    assert_eq!(zeta_prime(3), z3.without_gamma());
}
