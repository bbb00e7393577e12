//! Row-style Hermite normal form with optional transformation tracking, and
//! the integer kernel computed from it. The HNF here is the canonical one:
//! pivots positive, entries above a pivot reduced into [0, pivot).

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::zmat::{Int, ZMat};

/// Result of a row HNF computation: `h = transform * input`, `transform`
/// unimodular, `h` canonical with zero rows at the bottom.
pub struct RowHnf {
    pub h: ZMat,
    pub transform: ZMat,
    pub rank: usize,
}

pub fn row_hnf(input: &ZMat) -> RowHnf {
    let mut h = input.clone();
    let mut t = ZMat::identity(input.rows);
    let rows = input.rows;
    let cols = input.cols;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // clear column c below row r by gcd combinations
        let mut pivot_found = false;
        for i in r..rows {
            if !h[(i, c)].is_zero() {
                if !pivot_found {
                    h.swap_rows(r, i);
                    t.swap_rows(r, i);
                    pivot_found = true;
                } else {
                    gcd_rows(&mut h, &mut t, r, i, c);
                }
            }
        }
        if !pivot_found {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut t, r);
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                row_axpy(&mut h, i, r, &-&q);
                row_axpy(&mut t, i, r, &-&q);
            }
        }
        r += 1;
    }
    RowHnf {
        h,
        transform: t,
        rank: r,
    }
}

/// Unimodular row pair operation putting gcd at (r, c) and zero at (i, c).
fn gcd_rows(h: &mut ZMat, t: &mut ZMat, r: usize, i: usize, c: usize) {
    let a = h[(r, c)].clone();
    let b = h[(i, c)].clone();
    let e = a.extended_gcd(&b);
    let (g, s, u) = (e.gcd, e.x, e.y);
    let af = &a / &g;
    let bf = &b / &g;
    // (row_r, row_i) <- (s*row_r + u*row_i, af*row_i - bf*row_r)
    combine_rows(h, r, i, &s, &u, &af, &bf);
    combine_rows(t, r, i, &s, &u, &af, &bf);
}

fn combine_rows(m: &mut ZMat, r: usize, i: usize, s: &Int, u: &Int, af: &Int, bf: &Int) {
    for j in 0..m.cols {
        let x = m[(r, j)].clone();
        let y = m[(i, j)].clone();
        m[(r, j)] = s * &x + u * &y;
        m[(i, j)] = af * &y - bf * &x;
    }
}

fn negate_row(m: &mut ZMat, i: usize) {
    for j in 0..m.cols {
        let v = -&m[(i, j)];
        m[(i, j)] = v;
    }
}

fn row_axpy(m: &mut ZMat, dst: usize, src: usize, k: &Int) {
    for j in 0..m.cols {
        let v = &m[(dst, j)] + k * &m[(src, j)];
        m[(dst, j)] = v;
    }
}

/// Canonical HNF basis (nonzero rows only) of the row span of `input`.
pub fn hnf_basis(input: &ZMat) -> Vec<Vec<Int>> {
    let r = row_hnf(input);
    (0..r.rank).map(|i| r.h.row(i).to_vec()).collect()
}

/// Basis of the right integer kernel {x in Z^cols : input * x = 0},
/// returned in canonical HNF. The kernel of the transposed system is read
/// off the transformation rows matching zero rows of the HNF.
pub fn integer_kernel(input: &ZMat) -> Vec<Vec<Int>> {
    let at = input.transpose();
    let r = row_hnf(&at);
    let mut gens: Vec<Vec<Int>> = Vec::new();
    for i in r.rank..at.rows {
        gens.push(r.transform.row(i).to_vec());
    }
    if gens.is_empty() {
        return gens;
    }
    hnf_basis(&ZMat::from_rows(gens))
}

/// Does the row span of `basis` (assumed HNF) contain `v`? Exact divisibility
/// back-substitution along the pivot columns.
pub fn hnf_contains(basis: &[Vec<Int>], v: &[Int]) -> bool {
    let mut v = v.to_vec();
    for row in basis {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if v[p].is_zero() {
            continue;
        }
        let (q, rem) = v[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return false;
        }
        for (vi, ri) in v.iter_mut().zip(row.iter()) {
            *vi -= &q * ri;
        }
    }
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_is_canonical_across_bases() {
        // two generating sets of the same lattice
        let a = ZMat::from_i64(&[&[2, 0], &[0, 3]]);
        let b = ZMat::from_i64(&[&[2, 3], &[2, -3], &[4, 3]]);
        assert_eq!(hnf_basis(&a), hnf_basis(&b));
    }

    #[test]
    fn transform_reconstructs() {
        let m = ZMat::from_i64(&[&[4, 6, 2], &[6, 9, 3], &[2, 0, 1]]);
        let r = row_hnf(&m);
        assert_eq!(r.transform.mul(&m), r.h);
        assert!(r.transform.is_unimodular());
    }

    #[test]
    fn kernel_of_rank_deficient() {
        // rows are dependent: kernel of [[1,2,3],[2,4,6]] as a map Z^3 -> Z^2
        let m = ZMat::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            let img = m.mul_vec(v);
            assert!(img.iter().all(|x| x.is_zero()));
        }
        // saturation: (1, 1, -1) is in the kernel and must lie in the span
        assert!(hnf_contains(&k, &[Int::from(1), Int::from(1), Int::from(-1)]));
    }

    #[test]
    fn kernel_trivial_for_full_rank() {
        let m = ZMat::from_i64(&[&[1, 0], &[0, 1], &[5, 7]]);
        assert!(integer_kernel(&m).is_empty());
    }

    #[test]
    fn membership() {
        let basis = hnf_basis(&ZMat::from_i64(&[&[2, 0], &[0, 3]]));
        assert!(hnf_contains(&basis, &[Int::from(4), Int::from(3)]));
        assert!(!hnf_contains(&basis, &[Int::from(1), Int::from(0)]));
    }
}
