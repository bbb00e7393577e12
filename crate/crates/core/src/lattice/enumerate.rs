//! Bounded vector enumeration in sublattices. The box enumerator is complete
//! only within the stated coordinate box; the definite enumerator is complete
//! for (positive or negative) definite restricted forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Sublattice;
use crate::linalg::ZMat;

type Int = BigInt;
type Rat = BigRational;

/// All vectors of the sublattice with coordinates (in the sublattice basis)
/// bounded by `box_bound` in absolute value and q = `target_norm`, one
/// representative per +- pair (lexicographically positive one), in
/// deterministic lexicographic order of coordinates.
///
/// Complete only within the box: vectors with any coordinate exceeding the
/// bound are not seen.
pub fn norm_vectors_in_box(s: &Sublattice, target_norm: &Int, box_bound: u32) -> Vec<Vec<Int>> {
    let r = s.rank();
    if r == 0 {
        return vec![];
    }
    let gram = s.restricted_gram();
    let bound = box_bound as i64;

    // small fast path: i128 evaluation when entries cannot overflow
    if let Some(small) = to_i128(&gram) {
        let mut max_abs: i128 = 0;
        for row in &small {
            for &v in row {
                max_abs = max_abs.max(v.abs());
            }
        }
        let worst = (r as i128) * (r as i128) * (bound as i128) * (bound as i128);
        if max_abs < i128::MAX / (worst.max(1) * 4) {
            return enumerate_i128(&small, target_norm, bound);
        }
    }
    enumerate_big(&gram, target_norm, bound)
}

fn to_i128(m: &ZMat) -> Option<Vec<Vec<i128>>> {
    let mut out = vec![vec![0i128; m.cols]; m.rows];
    for i in 0..m.rows {
        for j in 0..m.cols {
            out[i][j] = m[(i, j)].to_i128()?;
        }
    }
    Some(out)
}

fn enumerate_i128(gram: &[Vec<i128>], target: &Int, bound: i64) -> Vec<Vec<Int>> {
    let r = gram.len();
    let Some(target) = target.to_i128() else {
        return vec![];
    };
    let mut out = Vec::new();
    let mut x = vec![-(bound as i128); r];
    'outer: loop {
        if is_lex_positive_i128(&x) {
            let mut q: i128 = 0;
            for i in 0..r {
                if x[i] == 0 {
                    continue;
                }
                for j in 0..r {
                    q += x[i] * gram[i][j] * x[j];
                }
            }
            if q == target {
                out.push(x.iter().map(|&c| Int::from(c)).collect());
            }
        }
        // odometer increment
        for i in (0..r).rev() {
            if x[i] < bound as i128 {
                x[i] += 1;
                continue 'outer;
            }
            x[i] = -(bound as i128);
        }
        break;
    }
    out
}

fn enumerate_big(gram: &ZMat, target: &Int, bound: i64) -> Vec<Vec<Int>> {
    let r = gram.rows;
    let mut out = Vec::new();
    let mut x = vec![-bound; r];
    'outer: loop {
        if is_lex_positive(&x) {
            let xi: Vec<Int> = x.iter().map(|&c| Int::from(c)).collect();
            let mut q = Int::zero();
            for i in 0..r {
                for j in 0..r {
                    q += &xi[i] * &gram[(i, j)] * &xi[j];
                }
            }
            if &q == target {
                out.push(xi);
            }
        }
        for i in (0..r).rev() {
            if x[i] < bound {
                x[i] += 1;
                continue 'outer;
            }
            x[i] = -bound;
        }
        break;
    }
    out
}

fn is_lex_positive(x: &[i64]) -> bool {
    for &c in x {
        if c > 0 {
            return true;
        }
        if c < 0 {
            return false;
        }
    }
    false // zero vector excluded
}

fn is_lex_positive_i128(x: &[i128]) -> bool {
    for &c in x {
        if c > 0 {
            return true;
        }
        if c < 0 {
            return false;
        }
    }
    false
}

/// Complete enumeration of q = `target_norm` vectors for a definite
/// restricted form (Fincke–Pohst style recursion on an exact LDL^T
/// decomposition; no box, no floats). Returns sublattice coordinates,
/// sign-canonicalized and sorted. Errors with None if the restricted form is
/// not definite or the target has the wrong sign.
pub fn norm_vectors_definite(s: &Sublattice, target_norm: &Int) -> Option<Vec<Vec<Int>>> {
    let r = s.rank();
    if r == 0 {
        return Some(vec![]);
    }
    let gram = s.restricted_gram();
    let diag = crate::linalg::symmetric_diagonalize(&gram);
    let (p, n) = diag.signature();
    let (gram, target) = if p == r {
        (gram, target_norm.clone())
    } else if n == r {
        (gram.neg(), -target_norm)
    } else {
        return None;
    };
    if target.is_negative() {
        return Some(vec![]);
    }
    if target.is_zero() {
        return Some(vec![]); // definite: only the zero vector, excluded
    }

    // exact LDL^T: q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2
    let mut d = vec![Rat::zero(); r];
    let mut u = vec![vec![Rat::zero(); r]; r];
    let mut a: Vec<Vec<Rat>> = (0..r)
        .map(|i| (0..r).map(|j| Rat::from_integer(gram[(i, j)].clone())).collect())
        .collect();
    for i in 0..r {
        d[i] = a[i][i].clone();
        for j in i + 1..r {
            u[i][j] = &a[i][j] / &d[i];
        }
        for k in i + 1..r {
            for l in i + 1..r {
                let v = &a[k][l] - &(&u[i][k] * &d[i] * &u[i][l]);
                a[k][l] = v;
            }
        }
    }

    let mut out = Vec::new();
    let mut x = vec![Int::zero(); r];
    recurse(
        &d,
        &u,
        r,
        &Rat::from_integer(target.clone()),
        &mut x,
        &mut out,
    );
    out.retain(|v| is_lex_positive_big(v));
    out.sort();
    Some(out)
}

pub(crate) fn is_lex_positive_big(x: &[Int]) -> bool {
    for c in x {
        if c.is_positive() {
            return true;
        }
        if c.is_negative() {
            return false;
        }
    }
    false
}

/// Fill coordinates from the last one down; `budget` is what remains of the
/// target after the already-fixed outer coordinates.
fn recurse(
    d: &[Rat],
    u: &[Vec<Rat>],
    level: usize,
    budget: &Rat,
    x: &mut Vec<Int>,
    out: &mut Vec<Vec<Int>>,
) {
    if level == 0 {
        if budget.is_zero() {
            out.push(x.clone());
        }
        return;
    }
    let i = level - 1;
    // center c = sum_{j>i} u_ij x_j
    let mut c = Rat::zero();
    for j in i + 1..x.len() {
        c += &u[i][j] * Rat::from_integer(x[j].clone());
    }
    // d_i (x_i + c)^2 <= budget; |x_i + c| grows monotonically walking away
    // from the rounded center, so each direction stops at the first failure
    let center = (-&c).round().to_integer();
    for dir in [0i64, 1, -1] {
        let mut k = center.clone() + Int::from(dir);
        loop {
            let off = Rat::from_integer(k.clone()) + &c;
            let term = &d[i] * &off * &off;
            if &term > budget {
                break;
            }
            x[i] = k.clone();
            let rest = budget - &term;
            recurse(d, u, level - 1, &rest, x, out);
            x[i] = Int::zero();
            match dir {
                0 => break,
                1 => k += 1,
                _ => k -= 1,
            }
        }
    }
}
