//! Smith normal form with full transformation tracking, used to build
//! self-contained kernel-triviality witnesses: U * A * V = S with U, V
//! unimodular and S diagonal with a divisibility chain.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::zmat::{Int, ZMat};

/// u * input * v = s; u_inv and v_inv are the exact inverses, so a verifier
/// can confirm unimodularity by multiplication alone.
pub struct Snf {
    pub s: ZMat,
    pub u: ZMat,
    pub v: ZMat,
    pub u_inv: ZMat,
    pub v_inv: ZMat,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.s.rows.min(self.s.cols);
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(input: &ZMat) -> Snf {
    let mut s = input.clone();
    let rows = s.rows;
    let cols = s.cols;
    let mut u = ZMat::identity(rows);
    let mut u_inv = ZMat::identity(rows);
    let mut v = ZMat::identity(cols);
    let mut v_inv = ZMat::identity(cols);

    let n = rows.min(cols);
    for k in 0..n {
        if !move_pivot(&mut s, &mut u, &mut u_inv, &mut v, &mut v_inv, k) {
            break; // remaining block is zero
        }
        // alternate row/column clearing until the cross at k is clean
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if !s[(i, k)].is_zero() {
                    let (q, r) = s[(i, k)].div_rem(&s[(k, k)]);
                    row_op(&mut s, &mut u, &mut u_inv, i, k, &q);
                    if !r.is_zero() {
                        swap_rows(&mut s, &mut u, &mut u_inv, i, k);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                if !s[(k, j)].is_zero() {
                    let (q, r) = s[(k, j)].div_rem(&s[(k, k)]);
                    col_op(&mut s, &mut v, &mut v_inv, j, k, &q);
                    if !r.is_zero() {
                        swap_cols(&mut s, &mut v, &mut v_inv, j, k);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        if s[(k, k)].is_negative() {
            negate_row(&mut s, &mut u, &mut u_inv, k);
        }
    }

    // enforce the divisibility chain d_k | d_{k+1}
    loop {
        let mut fixed = true;
        for k in 0..n.saturating_sub(1) {
            let a = s[(k, k)].clone();
            let b = s[(k + 1, k + 1)].clone();
            if a.is_zero() && !b.is_zero() {
                swap_rows(&mut s, &mut u, &mut u_inv, k, k + 1);
                swap_cols(&mut s, &mut v, &mut v_inv, k, k + 1);
                fixed = false;
                continue;
            }
            if !a.is_zero() && !(&b % &a).is_zero() {
                // fold d_{k+1} into position (k+1, k) and re-reduce the block
                col_op(&mut s, &mut v, &mut v_inv, k, k + 1, &Int::from(-1));
                reduce_block(&mut s, &mut u, &mut u_inv, &mut v, &mut v_inv, k);
                fixed = false;
            }
        }
        if fixed {
            break;
        }
    }

    Snf {
        s,
        u,
        v,
        u_inv,
        v_inv,
    }
}

/// Bring some nonzero entry of the trailing block to (k, k). Returns false if
/// the block is identically zero.
fn move_pivot(
    s: &mut ZMat,
    u: &mut ZMat,
    u_inv: &mut ZMat,
    v: &mut ZMat,
    v_inv: &mut ZMat,
    k: usize,
) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for i in k..s.rows {
        for j in k..s.cols {
            if !s[(i, j)].is_zero() {
                let better = match &best {
                    None => true,
                    Some((bi, bj)) => s[(i, j)].abs() < s[(*bi, *bj)].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
    }
    let Some((i, j)) = best else {
        return false;
    };
    if i != k {
        swap_rows(s, u, u_inv, i, k);
    }
    if j != k {
        swap_cols(s, v, v_inv, j, k);
    }
    true
}

/// After folding a diagonal entry below the pivot, clear the 2x2 corner again.
fn reduce_block(
    s: &mut ZMat,
    u: &mut ZMat,
    u_inv: &mut ZMat,
    v: &mut ZMat,
    v_inv: &mut ZMat,
    k: usize,
) {
    loop {
        if !s[(k + 1, k)].is_zero() {
            let (q, r) = s[(k + 1, k)].div_rem(&s[(k, k)]);
            row_op(s, u, u_inv, k + 1, k, &q);
            if !r.is_zero() {
                swap_rows(s, u, u_inv, k + 1, k);
                continue;
            }
        }
        if !s[(k, k + 1)].is_zero() {
            let (q, r) = s[(k, k + 1)].div_rem(&s[(k, k)]);
            col_op(s, v, v_inv, k + 1, k, &q);
            if !r.is_zero() {
                swap_cols(s, v, v_inv, k + 1, k);
                continue;
            }
        }
        break;
    }
    if s[(k, k)].is_negative() {
        negate_row(s, u, u_inv, k);
    }
    if s[(k + 1, k + 1)].is_negative() {
        negate_row(s, u, u_inv, k + 1);
    }
}

// Each elementary operation is applied to s and mirrored on the transform and
// its inverse so that u * input * v = s stays invariant.

fn row_op(s: &mut ZMat, u: &mut ZMat, u_inv: &mut ZMat, dst: usize, src: usize, q: &Int) {
    // row_dst -= q * row_src  (on the left: u <- E u, u_inv <- u_inv E^{-1})
    for j in 0..s.cols {
        let x = &s[(dst, j)] - q * &s[(src, j)];
        s[(dst, j)] = x;
    }
    for j in 0..u.cols {
        let x = &u[(dst, j)] - q * &u[(src, j)];
        u[(dst, j)] = x;
    }
    for i in 0..u_inv.rows {
        let x = &u_inv[(i, src)] + q * &u_inv[(i, dst)];
        u_inv[(i, src)] = x;
    }
}

fn col_op(s: &mut ZMat, v: &mut ZMat, v_inv: &mut ZMat, dst: usize, src: usize, q: &Int) {
    // col_dst -= q * col_src (on the right: v <- v E, v_inv <- E^{-1} v_inv)
    for i in 0..s.rows {
        let x = &s[(i, dst)] - q * &s[(i, src)];
        s[(i, dst)] = x;
    }
    for i in 0..v.rows {
        let x = &v[(i, dst)] - q * &v[(i, src)];
        v[(i, dst)] = x;
    }
    for j in 0..v_inv.cols {
        let x = &v_inv[(src, j)] + q * &v_inv[(dst, j)];
        v_inv[(src, j)] = x;
    }
}

fn swap_rows(s: &mut ZMat, u: &mut ZMat, u_inv: &mut ZMat, a: usize, b: usize) {
    s.swap_rows(a, b);
    u.swap_rows(a, b);
    // u_inv columns swap
    for i in 0..u_inv.rows {
        let x = u_inv[(i, a)].clone();
        u_inv[(i, a)] = u_inv[(i, b)].clone();
        u_inv[(i, b)] = x;
    }
}

fn swap_cols(s: &mut ZMat, v: &mut ZMat, v_inv: &mut ZMat, a: usize, b: usize) {
    for i in 0..s.rows {
        let x = s[(i, a)].clone();
        s[(i, a)] = s[(i, b)].clone();
        s[(i, b)] = x;
    }
    for i in 0..v.rows {
        let x = v[(i, a)].clone();
        v[(i, a)] = v[(i, b)].clone();
        v[(i, b)] = x;
    }
    v_inv.swap_rows(a, b);
}

fn negate_row(s: &mut ZMat, u: &mut ZMat, u_inv: &mut ZMat, i: usize) {
    for j in 0..s.cols {
        let x = -&s[(i, j)];
        s[(i, j)] = x;
    }
    for j in 0..u.cols {
        let x = -&u[(i, j)];
        u[(i, j)] = x;
    }
    for r in 0..u_inv.rows {
        let x = -&u_inv[(r, i)];
        u_inv[(r, i)] = x;
    }
}
