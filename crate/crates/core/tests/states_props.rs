//! Property and invariant tests for symbolic states and gates: Hermitian
//! symmetry of the inner product, exact inner-product preservation under
//! the transform, the pairwise action identities across all audited
//! dimensions, and coherence between the symbolic states and the
//! independent float constructors.

use std::collections::BTreeMap;

use num_complex::Complex64;
use proptest::prelude::*;

use qdft_core::cyclo::{root_of_unity, CyclotomicNumber};
use qdft_core::phasepoly::{PhasePolynomial, PhaseVariable};
use qdft_core::qstates::{
    dft_matrix, equatorial_family, float, inner_product, pairwise_gate, StateVector,
};

const VARIABLES: [&str; 2] = ["u", "w"];

fn amplitude() -> impl Strategy<Value = PhasePolynomial> {
    let term = (
        proptest::collection::btree_map(
            proptest::sample::select(VARIABLES.to_vec()),
            -2i64..=2,
            0..=2,
        ),
        -3i64..=3,
        proptest::sample::select(vec![1u32, 3, 4]),
    );
    proptest::collection::vec(term, 0..=2).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(exponents, scale, order)| {
                let root = root_of_unity(order, 1).unwrap();
                let coeff = root * CyclotomicNumber::from_integer(scale);
                exponents.into_iter().fold(
                    PhasePolynomial::constant(coeff),
                    |acc, (name, exponent)| {
                        acc * PhasePolynomial::variable_pow(&PhaseVariable::new(name), exponent)
                    },
                )
            })
            .sum()
    })
}

fn state(dimension: usize) -> impl Strategy<Value = StateVector> {
    (
        proptest::collection::vec(amplitude(), dimension),
        proptest::sample::select(vec![1u64, 2, 3, 6]),
    )
        .prop_map(move |(amplitudes, d)| StateVector::new(amplitudes, d).unwrap())
}

fn dimension_and_pair() -> impl Strategy<Value = (usize, StateVector, StateVector)> {
    (2usize..=4).prop_flat_map(|n| (Just(n), state(n), state(n)))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn inner_product_is_hermitian((_, a, b) in dimension_and_pair()) {
        let forward = inner_product(&a, &b).unwrap();
        let backward = inner_product(&b, &a).unwrap();
        prop_assert_eq!(forward.conjugate(), backward);
    }

    #[test]
    fn inner_product_with_itself_is_conjugation_fixed((_, a, _) in dimension_and_pair()) {
        // ⟨a|a⟩ is fixed by conjugation (it is a "real" polynomial).
        let norm = inner_product(&a, &a).unwrap();
        prop_assert_eq!(norm.conjugate(), norm);
    }

    #[test]
    fn the_transform_preserves_inner_products_exactly((n, a, b) in dimension_and_pair()) {
        let gate = dft_matrix(n).unwrap();
        let before = inner_product(&a, &b).unwrap();
        let after = inner_product(&gate.apply(&a).unwrap(), &gate.apply(&b).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn equatorial_states_agree_with_the_float_constructors(
        delta in -std::f64::consts::PI..std::f64::consts::PI,
        phi in -std::f64::consts::PI..std::f64::consts::PI,
    ) {
        // The symbolic equatorial family evaluated at angles must match
        // the independent float constructor amplitude by amplitude.
        let variables = [PhaseVariable::new("delta"), PhaseVariable::new("phi")];
        let family = equatorial_family(3, &variables).unwrap();
        let assignment: BTreeMap<PhaseVariable, f64> =
            [(variables[0].clone(), delta), (variables[1].clone(), phi)]
                .into_iter()
                .collect();
        for r in 0..3 {
            let symbolic = family.state(r).evaluate(&assignment).unwrap();
            let direct = float::equatorial_member(3, r, &[delta, phi]);
            for (s, d) in symbolic.iter().zip(&direct.amplitudes) {
                prop_assert!(close(*s, *d));
            }
        }
    }

    #[test]
    fn counterexample_families_agree_with_the_float_constructors(
        delta in -std::f64::consts::PI..std::f64::consts::PI,
        phi in -std::f64::consts::PI..std::f64::consts::PI,
    ) {
        let (v, w) = qdft_core::qstates::counterexample_families();
        let v_assignment: BTreeMap<PhaseVariable, f64> = [
            (PhaseVariable::new("delta_k"), delta),
            (PhaseVariable::new("phi_k"), phi),
        ]
        .into_iter()
        .collect();
        let w_assignment: BTreeMap<PhaseVariable, f64> = [
            (PhaseVariable::new("delta_j"), delta),
            (PhaseVariable::new("phi_j"), phi),
        ]
        .into_iter()
        .collect();
        let v_direct = float::v_family(delta, phi);
        let w_direct = float::w_family(delta, phi);
        for r in 0..3 {
            let v_symbolic = v.state(r).evaluate(&v_assignment).unwrap();
            let w_symbolic = w.state(r).evaluate(&w_assignment).unwrap();
            for (s, d) in v_symbolic.iter().zip(&v_direct[r].amplitudes) {
                prop_assert!(close(*s, *d));
            }
            for (s, d) in w_symbolic.iter().zip(&w_direct[r].amplitudes) {
                prop_assert!(close(*s, *d));
            }
        }
    }
}

/// The pairwise gate's cyclic action identities hold at every dimension up
/// to twelve — independent of the unitarity verdict at that dimension.
#[test]
fn pairwise_action_identities_hold_up_to_dimension_twelve() {
    let i = root_of_unity(4, 1).unwrap();
    for n in 2..=12usize {
        let gate = pairwise_gate(n).unwrap();
        let phases: Vec<PhaseVariable> = if n == 3 {
            vec![PhaseVariable::new("delta"), PhaseVariable::new("phi")]
        } else {
            Vec::new()
        };
        let family = equatorial_family(n, &phases).unwrap();
        for r in 0..n {
            let actual = gate.apply(family.state(r)).unwrap();
            let prescribed = StateVector::linear_combination(
                &[CyclotomicNumber::one(), i.clone()],
                &[family.state(r), family.state((r + 1) % n)],
                2,
            )
            .unwrap();
            for component in actual.residual_against(&prescribed).unwrap() {
                assert!(component.is_zero(), "n = {n}, member {r}: {component}");
            }
        }
    }
}

/// The symbolic gate constructors and the independent float constructors
/// describe the same matrices, normalization included.
#[test]
fn gate_constructors_agree_with_their_float_twins() {
    let empty = BTreeMap::new();
    let pairs: Vec<(qdft_core::qstates::GateMatrix, float::FloatMatrix)> = vec![
        (dft_matrix(5).unwrap(), float::dft_matrix(5)),
        (
            qdft_core::qstates::qubit_equatorial_gate(),
            float::qubit_equatorial_gate(),
        ),
        (pairwise_gate(4).unwrap(), float::pairwise_gate(4)),
        (
            qdft_core::qstates::equatorial_dft_gate(qdft_core::qstates::EquatorialVariant::Gamma),
            float::equatorial_dft_gate(qdft_core::qstates::EquatorialVariant::Gamma),
        ),
    ];
    for (exact, direct) in pairs {
        let n = exact.dimension();
        let scale = 1.0 / (exact.normalization_d() as f64).sqrt();
        for r in 0..n {
            for c in 0..n {
                let symbolic = exact.entry(r, c).evaluate(&empty).unwrap() * scale;
                assert!(
                    close(symbolic, direct.entries[r][c]),
                    "entry ({r}, {c}): {symbolic} vs {}",
                    direct.entries[r][c],
                );
            }
        }
    }
}
