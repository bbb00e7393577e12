//! Integral quadratic lattices: the catalog of Beauville–Bogomolov forms,
//! exact signatures, integer orthogonality kernels, sublattices in canonical
//! HNF, and verified isometries.

pub mod enumerate;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{self, qdiag::SymDiag, ZMat};
use crate::scalar::{FVector, Scalar};

type Int = BigInt;
type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix must be square and symmetric")]
    NotSymmetric,
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("catalog parameter out of range: {0}")]
    OutOfRange(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not an isometry of the lattice")]
    NotIsometry,
}

struct LatticeData {
    gram: ZMat,
    signature: (usize, usize),
    diag: SymDiag,
}

/// Non-degenerate integral symmetric bilinear form of rank b. Cheap to clone;
/// equality is on the gram matrix.
#[derive(Clone)]
pub struct QuadLattice(Arc<LatticeData>);

impl fmt::Debug for QuadLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QuadLattice(rank {}, signature {:?})",
            self.rank(),
            self.signature()
        )
    }
}

impl PartialEq for QuadLattice {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.gram == other.0.gram
    }
}
impl Eq for QuadLattice {}

impl QuadLattice {
    pub fn new(gram: ZMat) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        let diag = linalg::symmetric_diagonalize(&gram);
        if diag.is_degenerate() {
            return Err(LatticeError::Degenerate);
        }
        let signature = diag.signature();
        Ok(QuadLattice(Arc::new(LatticeData {
            gram,
            signature,
            diag,
        })))
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        Self::new(ZMat::from_i64(rows))
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self, LatticeError> {
        let n = entries.len();
        let mut m = ZMat::zero(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = Int::from(e);
        }
        Self::new(m)
    }

    pub fn rank(&self) -> usize {
        self.0.gram.rows
    }

    pub fn gram(&self) -> &ZMat {
        &self.0.gram
    }

    /// Sylvester signature (p, n), computed by exact rational congruence
    /// reduction; p + n = rank by non-degeneracy.
    pub fn signature(&self) -> (usize, usize) {
        self.0.signature
    }

    /// Rational pairwise q-orthogonal vectors with q > 0, denominators
    /// cleared: the canonical positive frame used for cone references,
    /// orientation classes, and path waypoints.
    pub fn positive_frame(&self) -> Vec<Vec<Int>> {
        self.0.diag.positive_frame_integer()
    }

    /// q(u, v) for integer vectors.
    pub fn pair_int(&self, u: &[Int], v: &[Int]) -> Int {
        let gv = self.0.gram.mul_vec(v);
        u.iter().zip(gv.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_int(&self, v: &[Int]) -> Int {
        self.pair_int(v, v)
    }

    /// q(u, v) for field vectors.
    pub fn pair(&self, u: &FVector, v: &FVector) -> Scalar {
        assert_eq!(u.len(), self.rank(), "vector length mismatch");
        assert_eq!(v.len(), self.rank(), "vector length mismatch");
        let field = FVector::common_field(u.field(), v.field()).expect("mixed fields");
        let u = u.promote(&field).unwrap();
        let v = v.promote(&field).unwrap();
        let mut acc = Scalar::zero(&field);
        for i in 0..self.rank() {
            if u.coord(i).is_zero() {
                continue;
            }
            let mut row = Scalar::zero(&field);
            for j in 0..self.rank() {
                let g = &self.0.gram[(i, j)];
                if g.is_zero() || v.coord(j).is_zero() {
                    continue;
                }
                let term = v
                    .coord(j)
                    .checked_mul(&Scalar::from_rat(&field, Rat::from_integer(g.clone())))
                    .unwrap();
                row += &term;
            }
            row = row.checked_mul(u.coord(i)).unwrap();
            acc += &row;
        }
        acc
    }

    pub fn norm(&self, v: &FVector) -> Scalar {
        self.pair(v, v)
    }

    /// Orthogonal complement of the span of `constraints` inside the lattice:
    /// {alpha : q(alpha, w_i) = 0 for all i}. Each degree-d field constraint
    /// expands into d rational rows; the integer kernel is read off the HNF
    /// and returned canonical.
    pub fn integral_kernel(&self, constraints: &[FVector]) -> Result<Sublattice, LatticeError> {
        let c = self.constraint_matrix(constraints)?;
        let basis = if c.rows == 0 {
            linalg::hnf_basis(&ZMat::identity(self.rank()))
        } else {
            linalg::integer_kernel(&c)
        };
        Ok(Sublattice {
            ambient: self.clone(),
            basis,
        })
    }

    /// The integer constraint matrix whose kernel is the orthogonality
    /// kernel: one row per power-basis component of each q(., w_i),
    /// denominators cleared deterministically.
    pub fn constraint_matrix(&self, constraints: &[FVector]) -> Result<ZMat, LatticeError> {
        let b = self.rank();
        let mut rows: Vec<Vec<Int>> = Vec::new();
        for w in constraints {
            if w.len() != b {
                return Err(LatticeError::DimensionMismatch {
                    expected: b,
                    got: w.len(),
                });
            }
            let d = w.field().degree();
            // gw[j] = q(e_j, w), a field scalar; row l collects the rational
            // coefficient of t^l in each gw[j]
            let mut rational_rows: Vec<Vec<Rat>> = vec![vec![Rat::zero(); b]; d];
            for j in 0..b {
                let mut acc = Scalar::zero(w.field());
                for k in 0..b {
                    let g = &self.0.gram[(j, k)];
                    if g.is_zero() || w.coord(k).is_zero() {
                        continue;
                    }
                    acc += &w
                        .coord(k)
                        .checked_mul(&Scalar::from_rat(
                            w.field(),
                            Rat::from_integer(g.clone()),
                        ))
                        .unwrap();
                }
                for (l, coeff) in acc.coeffs().iter().enumerate() {
                    rational_rows[l][j] = coeff.clone();
                }
            }
            for rr in rational_rows {
                if rr.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let mut lcm = Int::one();
                for c in &rr {
                    lcm = lcm.lcm(c.denom());
                }
                rows.push(rr.iter().map(|c| c.numer() * (&lcm / c.denom())).collect());
            }
        }
        if rows.is_empty() {
            return Ok(ZMat::zero(0, b));
        }
        Ok(ZMat::from_rows(rows))
    }
}

/// Catalog of named lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogKind {
    /// 2(-E8) + 3U: the even unimodular lattice of signature (3, 19).
    K3,
    /// K3 lattice plus <-2(n-1)>, n >= 2.
    HilbK3(u32),
    /// 3U plus <-2n>, n >= 3; the torus part is realized as 3U.
    Kummer(u32),
    U,
    E8Neg,
    Rank1(i64),
}

/// Negated Cartan matrix of the E8 root system (Bourbaki node numbering:
/// node 2 is the branch node attached to node 4).
pub const E8_NEG_GRAM: [[i64; 8]; 8] = [
    [-2, 0, 1, 0, 0, 0, 0, 0],
    [0, -2, 0, 1, 0, 0, 0, 0],
    [1, 0, -2, 1, 0, 0, 0, 0],
    [0, 1, 1, -2, 1, 0, 0, 0],
    [0, 0, 0, 1, -2, 1, 0, 0],
    [0, 0, 0, 0, 1, -2, 1, 0],
    [0, 0, 0, 0, 0, 1, -2, 1],
    [0, 0, 0, 0, 0, 0, 1, -2],
];

pub fn direct_sum(parts: &[&ZMat]) -> ZMat {
    let n: usize = parts.iter().map(|p| p.rows).sum();
    let mut out = ZMat::zero(n, n);
    let mut off = 0;
    for p in parts {
        for i in 0..p.rows {
            for j in 0..p.cols {
                out[(off + i, off + j)] = p[(i, j)].clone();
            }
        }
        off += p.rows;
    }
    out
}

pub fn make_catalog(kind: &CatalogKind) -> Result<QuadLattice, LatticeError> {
    let u = ZMat::from_i64(&[&[0, 1], &[1, 0]]);
    let e8neg = {
        let rows: Vec<&[i64]> = E8_NEG_GRAM.iter().map(|r| r.as_slice()).collect();
        ZMat::from_i64(&rows)
    };
    match kind {
        CatalogKind::U => QuadLattice::new(u),
        CatalogKind::E8Neg => QuadLattice::new(e8neg),
        CatalogKind::K3 => QuadLattice::new(direct_sum(&[&e8neg, &e8neg, &u, &u, &u])),
        CatalogKind::HilbK3(n) => {
            if *n < 2 {
                return Err(LatticeError::OutOfRange(format!("HilbK3 needs n >= 2, got {n}")));
            }
            let k3 = direct_sum(&[&e8neg, &e8neg, &u, &u, &u]);
            let mut extra = ZMat::zero(1, 1);
            extra[(0, 0)] = Int::from(-2 * (i64::from(*n) - 1));
            QuadLattice::new(direct_sum(&[&k3, &extra]))
        }
        CatalogKind::Kummer(n) => {
            if *n < 3 {
                return Err(LatticeError::OutOfRange(format!("Kummer needs n >= 3, got {n}")));
            }
            let torus = direct_sum(&[&u, &u, &u]);
            let mut extra = ZMat::zero(1, 1);
            extra[(0, 0)] = Int::from(-2 * i64::from(*n));
            QuadLattice::new(direct_sum(&[&torus, &extra]))
        }
        CatalogKind::Rank1(k) => {
            if *k == 0 {
                return Err(LatticeError::OutOfRange("rank1 needs k != 0".into()));
            }
            QuadLattice::diagonal(&[*k])
        }
    }
}

/// Parse the CLI catalog syntax: "k3", "hilb:3", "kummer:4", "u", "e8neg",
/// "rank1:-2".
pub fn parse_catalog(name: &str) -> Result<QuadLattice, LatticeError> {
    let kind = if name == "k3" {
        CatalogKind::K3
    } else if name == "u" {
        CatalogKind::U
    } else if name == "e8neg" {
        CatalogKind::E8Neg
    } else if let Some(n) = name.strip_prefix("hilb:") {
        CatalogKind::HilbK3(
            n.parse()
                .map_err(|_| LatticeError::OutOfRange(format!("bad parameter in {name}")))?,
        )
    } else if let Some(n) = name.strip_prefix("kummer:") {
        CatalogKind::Kummer(
            n.parse()
                .map_err(|_| LatticeError::OutOfRange(format!("bad parameter in {name}")))?,
        )
    } else if let Some(k) = name.strip_prefix("rank1:") {
        CatalogKind::Rank1(
            k.parse()
                .map_err(|_| LatticeError::OutOfRange(format!("bad parameter in {name}")))?,
        )
    } else {
        return Err(LatticeError::OutOfRange(format!("unknown lattice: {name}")));
    };
    make_catalog(&kind)
}

/// A sublattice of a fixed ambient lattice, held in canonical HNF so equal
/// sublattices have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    ambient: QuadLattice,
    basis: Vec<Vec<Int>>,
}

impl Sublattice {
    pub fn from_generators(ambient: &QuadLattice, generators: Vec<Vec<Int>>) -> Self {
        let basis = if generators.is_empty() {
            vec![]
        } else {
            linalg::hnf_basis(&ZMat::from_rows(generators))
        };
        Sublattice {
            ambient: ambient.clone(),
            basis,
        }
    }

    pub fn full(ambient: &QuadLattice) -> Self {
        Self::from_generators(ambient, ZMat::identity(ambient.rank()).to_rows())
    }

    pub fn ambient(&self) -> &QuadLattice {
        &self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        linalg::hnf_contains(&self.basis, v)
    }

    /// Gram matrix of the restricted form, B G B^T.
    pub fn restricted_gram(&self) -> ZMat {
        let r = self.rank();
        let mut out = ZMat::zero(r, r);
        for i in 0..r {
            for j in 0..r {
                out[(i, j)] = self.ambient.pair_int(&self.basis[i], &self.basis[j]);
            }
        }
        out
    }

    /// Map sublattice coordinates to an ambient vector.
    pub fn to_ambient(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.rank());
        let b = self.ambient.rank();
        let mut out = vec![Int::zero(); b];
        for (c, row) in coords.iter().zip(self.basis.iter()) {
            for (o, r) in out.iter_mut().zip(row.iter()) {
                *o += c * r;
            }
        }
        out
    }
}

/// An integer matrix verified to satisfy M^T G M = G with |det M| = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIsometry {
    lattice: QuadLattice,
    matrix: ZMat,
}

/// Residual certificate for an isometry check: all-zero exactly on success.
pub struct IsometryCheck {
    pub ok: bool,
    pub residual: ZMat,
    pub det: Int,
}

/// true iff M^T G M = G and |det M| = 1; the residual M^T G M - G is returned
/// either way so a failure is re-checkable.
pub fn is_isometry(lattice: &QuadLattice, matrix: &ZMat) -> IsometryCheck {
    let g = lattice.gram();
    let residual = matrix.transpose().mul(g).mul(matrix).sub(g);
    let det = if matrix.rows == matrix.cols && matrix.rows == lattice.rank() {
        matrix.det()
    } else {
        Int::zero()
    };
    IsometryCheck {
        ok: residual.is_zero() && det.abs().is_one(),
        residual,
        det,
    }
}

impl LatticeIsometry {
    pub fn new(lattice: &QuadLattice, matrix: ZMat) -> Result<Self, LatticeError> {
        if matrix.rows != lattice.rank() || matrix.cols != lattice.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: lattice.rank(),
                got: matrix.rows,
            });
        }
        if !is_isometry(lattice, &matrix).ok {
            return Err(LatticeError::NotIsometry);
        }
        Ok(LatticeIsometry {
            lattice: lattice.clone(),
            matrix,
        })
    }

    pub fn identity(lattice: &QuadLattice) -> Self {
        LatticeIsometry {
            lattice: lattice.clone(),
            matrix: ZMat::identity(lattice.rank()),
        }
    }

    pub fn neg_identity(lattice: &QuadLattice) -> Self {
        LatticeIsometry {
            lattice: lattice.clone(),
            matrix: ZMat::identity(lattice.rank()).neg(),
        }
    }

    pub fn lattice(&self) -> &QuadLattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &ZMat {
        &self.matrix
    }

    pub fn compose(&self, other: &LatticeIsometry) -> LatticeIsometry {
        assert_eq!(self.lattice, other.lattice, "isometries of different lattices");
        LatticeIsometry {
            lattice: self.lattice.clone(),
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn apply_int(&self, v: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(v)
    }

    pub fn apply(&self, v: &FVector) -> FVector {
        assert_eq!(v.len(), self.lattice.rank(), "vector length mismatch");
        let field = v.field();
        let coords = (0..self.matrix.rows)
            .map(|i| {
                let mut acc = Scalar::zero(field);
                for j in 0..self.matrix.cols {
                    let m = &self.matrix[(i, j)];
                    if m.is_zero() || v.coord(j).is_zero() {
                        continue;
                    }
                    acc += &v
                        .coord(j)
                        .checked_mul(&Scalar::from_rat(field, Rat::from_integer(m.clone())))
                        .unwrap();
                }
                acc
            })
            .collect();
        FVector::new(field, coords)
    }
}
