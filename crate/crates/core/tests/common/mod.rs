#![allow(dead_code)]

pub mod oracles;

use num_bigint::BigInt;
use rand::Rng;
use stieltjes_core::{PolyMatrix, QPoly};

pub fn qpoly(coeffs: &[i128]) -> QPoly {
    QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

/// Permanent by Laplace expansion along the first row.
pub fn permanent(m: &PolyMatrix) -> QPoly {
    fn go(m: &PolyMatrix, row: usize, free: &mut [bool]) -> QPoly {
        if row == m.nrows() {
            return QPoly::one();
        }
        let mut total = QPoly::zero();
        for c in 0..m.ncols() {
            if free[c] {
                free[c] = false;
                total += m.get(row, c) * &go(m, row + 1, free);
                free[c] = true;
            }
        }
        total
    }
    go(m, 0, &mut vec![true; m.ncols()])
}

/// Square matrix of polynomials of degree below 3 with coefficients in -3..=3.
pub fn random_matrix(rng: &mut impl Rng, n: usize) -> PolyMatrix {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let len = rng.random_range(0..=3);
                    let c: Vec<i64> = (0..len).map(|_| rng.random_range(-3..=3)).collect();
                    QPoly::from_i64s(&c)
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(rows).unwrap()
}
