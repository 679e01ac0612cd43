//! Concrete codes used as fixtures: two formally inequivalent `[8, 4, 4]`
//! near-MDS codes over GF(4), the `[7, 4, 3]` Hamming code and the extended
//! binary Golay code.

use crate::code::LinearCode;
use crate::field::Field;
use crate::matrix::CodeMatrix;

/// GF(4) with modulus `x^2 + x + 1`; `alpha` encodes as 2, `alpha^2` as 3.
pub fn gf4() -> Field {
    Field::new(2, 2, Some(&[1, 1, 1])).expect("x^2 + x + 1 is irreducible over GF(2)")
}

const A: u32 = 2;
const A2: u32 = 3;

fn code(field: &Field, rows: &[Vec<u32>]) -> LinearCode {
    LinearCode::from_generator(CodeMatrix::from_rows(field, rows).expect("valid rows"))
        .expect("full-rank generator")
}

pub fn c1_generator_rows() -> Vec<Vec<u32>> {
    vec![
        vec![1, 0, 0, 0, 1, A2, A, 0],
        vec![0, 1, 0, 0, 0, 1, A2, A],
        vec![0, 0, 1, 0, A, A, 0, 1],
        vec![0, 0, 0, 1, 1, A2, 1, 1],
    ]
}

pub fn c2_generator_rows() -> Vec<Vec<u32>> {
    vec![
        vec![1, 0, 0, 0, 1, A2, A, 0],
        vec![0, 1, 0, 0, A2, 0, 1, 1],
        vec![0, 0, 1, 0, 0, 1, A2, A2],
        vec![0, 0, 0, 1, A, A, 0, 1],
    ]
}

/// `[8, 4, 4]_4` near-MDS code with distribution `{1,0,0,0,27,60,78,60,30}`.
pub fn c1() -> LinearCode {
    code(&gf4(), &c1_generator_rows())
}

/// `[8, 4, 4]_4` near-MDS code with distribution `{1,0,0,0,30,48,96,48,33}`.
pub fn c2() -> LinearCode {
    code(&gf4(), &c2_generator_rows())
}

pub fn hamming_7_4() -> LinearCode {
    code(
        &Field::prime(2).expect("2 is prime"),
        &[
            vec![1, 0, 0, 0, 0, 1, 1],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 1, 1, 0],
            vec![0, 0, 0, 1, 1, 1, 1],
        ],
    )
}

/// Extended Golay `[24, 12, 8]_2`: the cyclic `[23, 12, 7]` code generated by
/// `1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11`, plus an overall parity bit.
pub fn extended_golay() -> LinearCode {
    let g = [1u32, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1];
    let rows: Vec<Vec<u32>> = (0..12)
        .map(|i| {
            let mut row = vec![0u32; 24];
            for (j, &c) in g.iter().enumerate() {
                row[i + j] = c;
            }
            row[23] = row[..23].iter().sum::<u32>() % 2;
            row
        })
        .collect();
    code(&Field::prime(2).expect("2 is prime"), &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::extremal_distribution;
    use crate::code::brute_weight_distribution;

    fn counts(code: &LinearCode) -> Vec<String> {
        brute_weight_distribution(code)
            .unwrap()
            .counts()
            .iter()
            .map(|c| c.to_string())
            .collect()
    }

    #[test]
    fn near_mds_pair() {
        assert_eq!(counts(&c1()), ["1", "0", "0", "0", "27", "60", "78", "60", "30"]);
        assert_eq!(counts(&c2()), ["1", "0", "0", "0", "30", "48", "96", "48", "33"]);
    }

    #[test]
    fn hamming() {
        assert_eq!(counts(&hamming_7_4()), ["1", "0", "0", "7", "7", "0", "0", "1"]);
    }

    #[test]
    fn golay_is_extremal() {
        let a = brute_weight_distribution(&extended_golay()).unwrap();
        assert_eq!(a, extremal_distribution(1).unwrap());
        let nonzero: Vec<(usize, String)> = (0..=24)
            .filter(|&i| !a.get(i).to_string().eq("0"))
            .map(|i| (i, a.get(i).to_string()))
            .collect();
        assert_eq!(
            nonzero,
            [(0, "1"), (8, "759"), (12, "2576"), (16, "759"), (24, "1")]
                .map(|(i, s)| (i, s.to_string()))
        );
    }
}
