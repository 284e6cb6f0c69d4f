//! Column matroids from exact matrices over ℚ or GF(p).
//!
//! Ranks come from exact Gaussian elimination; there is no floating
//! point anywhere. Rationals use arbitrary-precision integers with
//! normalized fractions.

mod counterexample;
mod field;
mod matrix;
mod projective;

pub use counterexample::{counterexample_matrix, verify_counterexample};
pub use field::{parse_rational, rational_to_string, FieldSpec};
pub use matrix::{column_matroid, ExactMatrix};
pub use projective::projective_geometry;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::uniform;

    #[test]
    fn identity_matrix_is_free() {
        let a = ExactMatrix::from_integers(
            ["1", "2", "3"],
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let m = column_matroid(&a).unwrap();
        assert_eq!(m, uniform(3, 3).unwrap());
    }

    #[test]
    fn zero_column_is_a_loop() {
        let a = ExactMatrix::from_integers(["z", "e"], vec![vec![0, 0], vec![1, 2]]).unwrap();
        let m = column_matroid(&a).unwrap();
        assert_eq!(m.loops().label_vec(), ["z"]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn fractions_are_exact() {
        // second column is 1/3 of the first: rank 1
        let a = ExactMatrix::rational(
            ["a", "b"],
            vec![
                vec![parse_rational("1").unwrap(), parse_rational("2/3").unwrap()],
                vec![parse_rational("1/3").unwrap(), parse_rational("2/9").unwrap()],
            ],
        )
        .unwrap();
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn gf2_rank() {
        let a = ExactMatrix::prime_field(
            2,
            ["a", "b", "c"],
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        )
        .unwrap();
        assert_eq!(a.rank(), 2);
        let m = column_matroid(&a).unwrap();
        // three points on a GF(2) line: U_{2,3}
        assert_eq!(m.circuits().len(), 1);
        assert_eq!(m.circuits()[0].len(), 3);
    }
}
