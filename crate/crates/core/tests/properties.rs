use codeweights::census::{census, CensusOptions};
use codeweights::code::{brute_weight_distribution, min_distance, random_code, EnumerationOptions, LinearCode};
use codeweights::field::Field;
use codeweights::matrix::for_each_subset;
use num_bigint::BigUint;
use proptest::prelude::*;

fn field(q: u32) -> Field {
    match q {
        4 => Field::new(2, 2, None).unwrap(),
        8 => Field::new(2, 3, None).unwrap(),
        p => Field::prime(p).unwrap(),
    }
}

fn code_strategy() -> impl Strategy<Value = LinearCode> {
    (prop::sample::select(vec![2u32, 3, 4, 5]), 2usize..=7, any::<u64>())
        .prop_flat_map(|(q, n, seed)| (Just(q), Just(n), 1..n, Just(seed)))
        .prop_map(|(q, n, k, seed)| random_code(&field(q), n, k, seed).unwrap())
}

fn all_codewords(code: &LinearCode) -> Vec<Vec<u32>> {
    let q = code.q();
    let mut msg = vec![0u32; code.k()];
    let mut out = Vec::new();
    loop {
        out.push(code.encode(&msg));
        let mut i = 0;
        loop {
            if i == msg.len() {
                return out;
            }
            msg[i] += 1;
            if msg[i] < q {
                break;
            }
            msg[i] = 0;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn support_columns_of_h_are_dependent(code in code_strategy()) {
        let h = code.parity_check();
        for c in all_codewords(&code) {
            let support: Vec<usize> = (0..c.len()).filter(|&j| c[j] != 0).collect();
            prop_assert_eq!(support.len(), c.iter().filter(|&&x| x != 0).count());
            if !support.is_empty() {
                prop_assert!(h.select_columns(&support).unwrap().rank() < support.len());
            }
        }
    }

    #[test]
    fn minimum_distance_is_first_dependent_column_set(code in code_strategy()) {
        let d = min_distance(&code, &EnumerationOptions::default()).unwrap();
        prop_assert!(d <= code.n() - code.k() + 1);
        let h = code.parity_check();
        let dependent = |size: usize| {
            let mut found = false;
            for_each_subset(code.n(), size, |s| {
                found = h.select_columns(s).unwrap().rank() < size;
                !found
            });
            found
        };
        prop_assert!(dependent(d));
        prop_assert!((1..d).all(|s| !dependent(s)));
    }

    #[test]
    fn census_totals_are_binomials(code in code_strategy()) {
        let n = code.n();
        for nu in 1..=n {
            let c = census(code.parity_check(), nu, &CensusOptions::default()).unwrap();
            prop_assert_eq!(c.total(), c.expected_total());
            prop_assert!(c.counts.keys().all(|&r| r <= nu.min(n - code.k())));
        }
    }

    #[test]
    fn dual_of_dual_has_same_distribution(code in code_strategy()) {
        let a = brute_weight_distribution(&code).unwrap();
        let b = brute_weight_distribution(&code.dual().dual()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn expected_total_is_binomial() {
    let code = random_code(&field(3), 6, 2, 11).unwrap();
    let c = census(code.parity_check(), 3, &CensusOptions::default()).unwrap();
    assert_eq!(c.expected_total(), BigUint::from(20u32));
}
