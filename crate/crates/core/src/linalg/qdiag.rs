//! Exact symmetric diagonalization over Q by congruence (simultaneous row and
//! column operations). Yields Sylvester signature and a rational q-orthogonal
//! basis without any eigenvalue computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zmat::ZMat;

type Rat = BigRational;

/// `basis[i]` are rows of a rational basis with q(basis[i], basis[j]) =
/// values[i] * delta_ij for the input form.
pub struct SymDiag {
    pub basis: Vec<Vec<Rat>>,
    pub values: Vec<Rat>,
}

impl SymDiag {
    pub fn signature(&self) -> (usize, usize) {
        let p = self.values.iter().filter(|v| v.is_positive()).count();
        let n = self.values.iter().filter(|v| v.is_negative()).count();
        (p, n)
    }

    pub fn is_degenerate(&self) -> bool {
        self.values.iter().any(|v| v.is_zero())
    }

    /// Rational diagonalizing vectors with positive value, denominators
    /// cleared to integer vectors.
    pub fn positive_frame_integer(&self) -> Vec<Vec<BigInt>> {
        self.basis
            .iter()
            .zip(self.values.iter())
            .filter(|(_, v)| v.is_positive())
            .map(|(b, _)| clear_denominators(b))
            .collect()
    }

    pub fn negative_frame_integer(&self) -> Vec<Vec<BigInt>> {
        self.basis
            .iter()
            .zip(self.values.iter())
            .filter(|(_, v)| v.is_negative())
            .map(|(b, _)| clear_denominators(b))
            .collect()
    }
}

pub fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in v {
        l = l.lcm(c.denom());
    }
    let scaled: Vec<BigInt> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &scaled {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        scaled
    } else {
        scaled.iter().map(|c| c / &g).collect()
    }
}

pub fn symmetric_diagonalize(gram: &ZMat) -> SymDiag {
    assert_eq!(gram.rows, gram.cols);
    let n = gram.rows;
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rat::from_integer(gram[(i, j)].clone()))
                .collect()
        })
        .collect();
    let mut basis: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();

    for i in 0..n {
        if m[i][i].is_zero() {
            // prefer a later diagonal pivot; otherwise manufacture one from an
            // off-diagonal entry (char 0: adding the row/col doubles it)
            if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(i, j);
                for row in m.iter_mut() {
                    row.swap(i, j);
                }
                basis.swap(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                for k in 0..n {
                    let v = &m[i][k] + &m[j][k];
                    m[i][k] = v;
                }
                for row in m.iter_mut() {
                    let v = &row[i] + &row[j];
                    row[i] = v;
                }
                for k in 0..n {
                    let v = &basis[i][k] + &basis[j][k];
                    basis[i][k] = v;
                }
            } else {
                continue; // row and column i are zero: degenerate direction
            }
        }
        let pivot = m[i][i].clone();
        for j in i + 1..n {
            if m[j][i].is_zero() {
                continue;
            }
            let f = &m[j][i] / &pivot;
            for k in 0..n {
                let v = &m[j][k] - &f * &m[i][k];
                m[j][k] = v;
            }
            for row in m.iter_mut() {
                let v = &row[j] - &f * &row[i];
                row[j] = v;
            }
            for k in 0..n {
                let v = &basis[j][k] - &f * &basis[i][k];
                basis[j][k] = v;
            }
        }
    }

    let values = (0..n).map(|i| m[i][i].clone()).collect();
    SymDiag { basis, values }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_plane() {
        let u = ZMat::from_i64(&[&[0, 1], &[1, 0]]);
        let d = symmetric_diagonalize(&u);
        assert_eq!(d.signature(), (1, 1));
        assert!(!d.is_degenerate());
    }

    #[test]
    fn diagonal_forms() {
        let m = ZMat::from_i64(&[&[1, 0, 0], &[0, -2, 0], &[0, 0, 5]]);
        let d = symmetric_diagonalize(&m);
        assert_eq!(d.signature(), (2, 1));
    }

    #[test]
    fn degenerate_detected() {
        let m = ZMat::from_i64(&[&[1, 1], &[1, 1]]);
        let d = symmetric_diagonalize(&m);
        assert!(d.is_degenerate());
        assert_eq!(d.signature(), (1, 0));
    }

    #[test]
    fn basis_diagonalizes() {
        let g = ZMat::from_i64(&[&[0, 1, 2], &[1, 0, -1], &[2, -1, 4]]);
        let d = symmetric_diagonalize(&g);
        // check q(b_i, b_j) = values[i] delta_ij
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rat::zero();
                for r in 0..n {
                    for c in 0..n {
                        acc += &d.basis[i][r]
                            * Rat::from_integer(g[(r, c)].clone())
                            * &d.basis[j][c];
                    }
                }
                if i == j {
                    assert_eq!(acc, d.values[i]);
                } else {
                    assert!(acc.is_zero());
                }
            }
        }
    }
}
