use crate::error::{Error, Result};
use crate::kernel::{Matroid, MAX_ELEMENTS};
use crate::linear::field::check_prime;
use crate::linear::matrix::{column_matroid, ExactMatrix};

/// The rank-`r` projective geometry over GF(p): the column matroid of
/// one representative of every nonzero vector of GF(p)^r up to scalar
/// (normalized so the first nonzero coordinate is 1).
///
/// PG(r-1, p) in geometric notation; e.g. `projective_geometry(4, 2)`
/// is the 15-point PG(3,2).
pub fn projective_geometry(r: u32, p: u64) -> Result<Matroid> {
    if r < 1 {
        return Err(Error::Precondition("projective geometry needs rank >= 1".into()));
    }
    check_prime(p)?;
    let points = {
        let mut count: u128 = 1;
        for _ in 0..r {
            count = count.saturating_mul(p as u128);
        }
        (count - 1) / (p as u128 - 1)
    };
    if points > MAX_ELEMENTS as u128 {
        return Err(Error::GroundSetTooLarge(points as usize));
    }

    let mut labels = Vec::with_capacity(points as usize);
    let mut columns = Vec::with_capacity(points as usize);
    let total = (p as u128).pow(r);
    for k in 1..total {
        // digits of k in base p, most significant coordinate first
        let mut vec = vec![0u64; r as usize];
        let mut rest = k;
        for i in (0..r as usize).rev() {
            vec[i] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        if vec.iter().copied().find(|&v| v != 0) != Some(1) {
            continue; // keep one representative per projective point
        }
        let digits: Vec<String> = vec.iter().map(u64::to_string).collect();
        labels.push(if p < 10 { digits.concat() } else { digits.join("_") });
        columns.push(vec);
    }
    column_matroid(
        &ExactMatrix::prime_field(p, labels, columns).expect("projective point set is well-formed"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane() {
        let fano = projective_geometry(3, 2).unwrap();
        assert_eq!(fano.size(), 7);
        assert_eq!(fano.rank(), 3);
        // 7 lines of 3 points each
        let lines = fano.lines();
        assert_eq!(lines.len(), 7);
        assert!(lines.iter().all(|l| l.len() == 3));
    }

    #[test]
    fn pg32_shape() {
        let pg = projective_geometry(4, 2).unwrap();
        assert_eq!(pg.size(), 15);
        assert_eq!(pg.rank(), 4);
        assert_eq!(pg.lines().len(), 35);
        assert_eq!(pg.planes().len(), 15);
    }

    #[test]
    fn pg23_shape() {
        let pg = projective_geometry(3, 3).unwrap();
        assert_eq!(pg.size(), 13);
        assert_eq!(pg.rank(), 3);
        assert_eq!(pg.lines().len(), 13);
        assert!(pg.lines().iter().all(|l| l.len() == 4));
    }

    #[test]
    fn size_cap_and_primality() {
        assert!(matches!(projective_geometry(7, 2), Err(Error::GroundSetTooLarge(_))));
        assert!(matches!(projective_geometry(2, 4), Err(Error::NotPrime(4))));
    }
}
