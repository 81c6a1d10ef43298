use proptest::prelude::*;
use semiact::exactnum::RationalMatrix;
use semiact::families::{plane_bipartite_corpus, random_flat_matrix, random_tp_instance, trial_rng};
use semiact::formats::{
    matrix_to_json, network_to_json, parse_matrix, parse_network, parse_planegraph, planegraph_to_json,
};
use semiact::ormatroid::{f_poly_rational, GenericVector, MatroidContext};
use semiact::planardual::{alexander_poly, bipartition};
use semiact::totpos::{f_tp_closed, tp_from_network};

fn lex_f(m: &RationalMatrix) -> semiact::polyshape::RatPolynomial {
    f_poly_rational(&MatroidContext::new(m.clone()).unwrap(), &GenericVector::LexOrder).unwrap()
}

#[test]
fn plane_files_round_trip_to_the_same_polynomial() {
    for (name, p) in plane_bipartite_corpus() {
        let part1 = bipartition(&p).unwrap();
        let text = planegraph_to_json(&p, &part1).to_string();
        let (q, q_part1) = parse_planegraph(&text).unwrap();
        assert_eq!(q_part1, part1, "{name}");
        assert_eq!(alexander_poly(&q, &q_part1).unwrap(), alexander_poly(&p, &part1).unwrap(), "{name}");
    }
}

#[test]
fn network_files_reproduce_closed_form() {
    let mut rng = trial_rng(31, 0);
    for _ in 0..8 {
        let (net, fmp) = random_tp_instance(&mut rng, 3, 6);
        let back = parse_network(&network_to_json(&net).to_string()).unwrap();
        assert_eq!(tp_from_network(&back), fmp.a);
        let a = parse_matrix(&matrix_to_json(&fmp.a).to_string()).unwrap();
        assert_eq!(lex_f(&a), f_tp_closed(&fmp).0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // a unimodular row operation keeps every basis volume and every circuit
    #[test]
    fn row_shear_keeps_polynomial(seed in 0u64..1000, k in -2i64..=2) {
        let mut rng = trial_rng(seed, 1);
        let m = random_flat_matrix(&mut rng, 3, 6);
        let shear = RationalMatrix::from_i64(&[vec![1, k, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let sheared = shear.mul(&m).unwrap();
        prop_assert_eq!(lex_f(&sheared), lex_f(&m));
    }
}
