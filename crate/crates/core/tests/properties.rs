mod common;

use common::{qubit_state, unit_scalar, unitary2};
use cswitch::circuits::{run_classical_baseline, run_generalized_deutsch};
use cswitch::oracles::{
    classify, ground_truth_odd_constants, product_oracle, FunctionClass, SignedPauli,
};
use cswitch::qmath::{
    anticommutator, commutator, equal_up_to_global_phase, is_unitary, matmul, r, tensor,
    ComplexMatrix,
};
use cswitch::qswitch::{
    measure_control, run_ico_algorithm, switch_closed_form, switch_output_state,
};
use cswitch::sagnac::{
    perturb, simulate_sagnac, standard_stack, Gate, NoiseModel, Polarization, SagnacConfig,
};
use cswitch::{BooleanFunction, OracleSet};
use proptest::prelude::*;

fn small_int_matrix() -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-3i32..=3, 4).prop_map(|v| {
        let rows: Vec<Vec<f64>> = v
            .chunks(2)
            .map(|c| c.iter().map(|&x| x as f64).collect())
            .collect();
        ComplexMatrix::from_real_rows(&[&rows[0], &rows[1]])
    })
}

fn oracle_set(max_len: usize) -> impl Strategy<Value = OracleSet> {
    prop::collection::vec(0usize..4, 1..=max_len).prop_map(|idx| {
        OracleSet::new(idx.into_iter().map(|i| BooleanFunction::ALL[i]).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn tensor_is_associative(a in small_int_matrix(), b in small_int_matrix(), c in small_int_matrix()) {
        prop_assert_eq!(tensor(&tensor(&a, &b), &c), tensor(&a, &tensor(&b, &c)));
    }

    #[test]
    fn commutator_plus_twice_ba_is_anticommutator(a in unitary2(), b in unitary2()) {
        let lhs = &commutator(&a, &b).unwrap() + &matmul(&b, &a).unwrap().scale(r(2.0));
        prop_assert!(lhs.max_abs_diff(&anticommutator(&a, &b).unwrap()) <= 1e-12);
    }

    #[test]
    fn products_of_unitaries_are_unitary(a in unitary2(), b in unitary2()) {
        prop_assert!(is_unitary(&a, 1e-12));
        prop_assert!(is_unitary(&matmul(&a, &b).unwrap(), 1e-12));
        prop_assert!(is_unitary(&tensor(&a, &b), 1e-12));
    }

    #[test]
    fn global_phase_equivalence(a in unitary2(), b in unitary2(), u in unit_scalar(), v in unit_scalar()) {
        let tol = 1e-12;
        prop_assert!(equal_up_to_global_phase(&a, &a, tol));
        prop_assert!(equal_up_to_global_phase(&a.scale(u), &a.scale(v), tol));
        prop_assert_eq!(equal_up_to_global_phase(&a, &b, 1e-9), equal_up_to_global_phase(&b, &a, 1e-9));
        let same = equal_up_to_global_phase(&a, &b, 1e-9);
        prop_assert_eq!(equal_up_to_global_phase(&a.scale(u), &b, 1e-9), same);
        prop_assert_eq!(equal_up_to_global_phase(&a, &b.scale(v), 1e-9), same);
    }

    #[test]
    fn product_oracle_is_signed_pauli(s in oracle_set(12)) {
        let u1 = product_oracle(&s);
        let p = SignedPauli::identify(&u1);
        prop_assert!(p.is_some());
        let balanced = s.functions().iter().filter(|&&f| classify(f) == FunctionClass::Balanced).count();
        prop_assert_eq!(!p.unwrap().is_identity_like(), balanced % 2 == 1);
    }

    #[test]
    fn all_three_methods_agree(s in oracle_set(10)) {
        let truth = ground_truth_odd_constants(&s);
        prop_assert_eq!(run_generalized_deutsch(&s).decoded_odd_constants, truth);
        prop_assert_eq!(run_classical_baseline(&s).decoded_odd_constants, truth);
        let d = run_ico_algorithm(&s, &cswitch::StateVector::zero()).unwrap();
        prop_assert_eq!(d.odd_constants, truth);
    }

    #[test]
    fn switch_matches_closed_form(u1 in unitary2(), u2 in unitary2(), t in qubit_state()) {
        let op = switch_output_state(&u1, &u2, &t).unwrap();
        let closed = switch_closed_form(&u1, &u2, &t).unwrap();
        prop_assert!(op.joint.max_abs_diff(&closed) <= 1e-12);
        let (p0, p1) = measure_control(&op);
        prop_assert!((p0 + p1 - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn ico_decision_is_target_independent(s in oracle_set(6), t in qubit_state()) {
        let d = run_ico_algorithm(&s, &t).unwrap();
        let (p0, p1) = d.control_outcome_probs;
        prop_assert!(p0.max(p1) >= 1.0 - 1e-9);
        prop_assert_eq!(d.odd_constants, ground_truth_odd_constants(&s));
    }

    #[test]
    fn noisy_sagnac_conserves_probability(seed in any::<u64>(), gate in 0usize..4, basis in 0usize..4) {
        let gate = [Gate::I, Gate::MinusI, Gate::Z, Gate::MinusZ][gate];
        let cfg = SagnacConfig::ideal(standard_stack(gate), standard_stack(Gate::X), Polarization::ALL[basis]);
        let mut noise = NoiseModel::calibrated(seed);
        noise.plate_angle_sigma = 2.0;
        noise.retardance_sigma = 0.1;
        noise.bs_imbalance_sigma = 0.05;
        let out = simulate_sagnac(&perturb(&cfg, &noise).unwrap()).unwrap();
        prop_assert!((out.p_a + out.p_b - 1.0).abs() <= 1e-10);
    }
}

#[test]
fn ico_targets_agree_on_basis_and_hadamard_states() {
    use cswitch::StateVector;
    for n in 1..=3 {
        for s in OracleSet::enumerate(n) {
            let decisions: Vec<bool> = [
                StateVector::zero(),
                StateVector::one(),
                StateVector::plus(),
                StateVector::minus(),
            ]
            .iter()
            .map(|t| run_ico_algorithm(&s, t).unwrap().odd_constants)
            .collect();
            assert!(decisions.windows(2).all(|w| w[0] == w[1]), "{s}");
        }
    }
}
