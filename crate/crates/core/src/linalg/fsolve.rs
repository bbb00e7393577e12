//! Exact Gaussian elimination over a number field. Pivot selection only needs
//! zero-testing, which is a coefficient check, never a sign computation.

use crate::scalar::{FVector, NumberFieldSpec, Scalar};

/// Rank of the span of the given vectors.
pub fn rank(vectors: &[FVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let field = common_field(vectors);
    let mut rows: Vec<Vec<Scalar>> = vectors
        .iter()
        .map(|v| v.promote(&field).expect("mixed fields").coords().to_vec())
        .collect();
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for k in c..cols {
                let v = &rows[i][k] - &(&f * &rows[r][k]);
                rows[i][k] = v;
            }
        }
        r += 1;
    }
    r
}

/// Solve target = sum_i x_i basis[i] exactly; None if target is outside the
/// span. The result is verified by reconstruction before returning.
pub fn solve_in_span(basis: &[FVector], target: &FVector) -> Option<Vec<Scalar>> {
    assert!(!basis.is_empty(), "empty basis");
    let mut all = basis.to_vec();
    all.push(target.clone());
    let field = common_field(&all);
    let n = basis[0].len();
    let k = basis.len();
    // columns are basis vectors, last column the target
    let mut m: Vec<Vec<Scalar>> = (0..n)
        .map(|row| {
            let mut line: Vec<Scalar> = Vec::with_capacity(k + 1);
            for b in basis {
                line.push(promote_coord(b, row, &field));
            }
            line.push(promote_coord(target, row, &field));
            line
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..n {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..=k {
                let v = &m[i][j] - &(&f * &m[r][j]);
                m[i][j] = v;
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    // inconsistent if a zero basis-row has nonzero target entry
    for i in r..n {
        if !m[i][k].is_zero() {
            return None;
        }
    }
    let mut x = vec![Scalar::zero(&field); k];
    for (row, col) in &pivots {
        x[*col] = &m[*row][k] / &m[*row][*col];
    }
    // exact reconstruction check
    let mut recon = FVector::zero(&field, n);
    for (c, b) in basis.iter().enumerate() {
        recon = recon.add(&b.promote(&field).unwrap().scale(&x[c]));
    }
    let t = target.promote(&field).unwrap();
    if recon == t {
        Some(x)
    } else {
        None
    }
}

/// Basis of {x : rows * x = 0} over the field, by Gaussian elimination and
/// free-variable extraction.
pub fn nullspace(rows: &[FVector]) -> Vec<FVector> {
    assert!(!rows.is_empty(), "empty system");
    let field = common_field(rows);
    let n = rows[0].len();
    let mut m: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| r.promote(&field).expect("mixed fields").coords().to_vec())
        .collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..n {
                let v = &m[i][j] - &(&f * &m[r][j]);
                m[i][j] = v;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(&field); n];
        v[free] = Scalar::one(&field);
        for (row, &pc) in pivot_cols.iter().enumerate() {
            // pivot_col value = -m[row][free] / m[row][pc]
            v[pc] = -&(&m[row][free] / &m[row][pc]);
        }
        out.push(FVector::new(&field, v));
    }
    out
}

fn promote_coord(v: &FVector, i: usize, field: &NumberFieldSpec) -> Scalar {
    let c = v.coord(i);
    if c.field() == field {
        c.clone()
    } else {
        Scalar::new(field, c.coeffs().to_vec())
    }
}

fn common_field(vectors: &[FVector]) -> NumberFieldSpec {
    let mut field = vectors[0].field().clone();
    for v in vectors {
        field = FVector::common_field(&field, v.field()).expect("mixed fields");
    }
    field
}
