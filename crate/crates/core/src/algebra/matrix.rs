//! Exact matrices with polynomial entries, plus scalar linear algebra.
//!
//! Entries live in a fixed ring and are kept in normal form, so matrix
//! equality is class equality. Determinants use Gaussian elimination
//! when the entries are field constants and the Berkowitz algorithm
//! otherwise; Berkowitz is division free and therefore valid over any
//! commutative coefficient ring, including ones with nilpotents.

use super::module::ModuleElt;
use super::poly::Polynomial;
use super::ring::Ring;
use super::scalar::Scalar;
use crate::error::{AlgebraError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    nrows: usize,
    ncols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Ring, nrows: usize, ncols: usize) -> PolyMatrix {
        PolyMatrix {
            ring: ring.clone(),
            nrows,
            ncols,
            data: vec![ring.zero(); nrows * ncols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(
        ring: &Ring,
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(ring, nrows, ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> PolyMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut m = PolyMatrix::zeros(ring, nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert_eq!(p.arity(), self.ring.arity(), "entry from another ring");
        self.data[i * self.ncols + j] = self.ring.nf(&p);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        PolyMatrix::from_fn(&self.ring, self.nrows, self.ncols, |i, j| {
            self.entry(i, j).add(other.entry(i, j))
        })
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        PolyMatrix::from_fn(&self.ring, self.nrows, self.ncols, |i, j| {
            self.entry(i, j).sub(other.entry(i, j))
        })
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.nrows, self.ncols, |i, j| {
            self.entry(i, j).neg()
        })
    }

    pub fn scale(&self, p: &Polynomial) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.nrows, self.ncols, |i, j| {
            self.entry(i, j).mul(p)
        })
    }

    pub fn scale_i64(&self, n: i64) -> PolyMatrix {
        self.scale(&self.ring.constant_i64(n))
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        PolyMatrix::from_fn(&self.ring, self.nrows, other.ncols, |i, j| {
            let mut acc = self.ring.zero();
            for k in 0..self.ncols {
                acc = acc.add(&self.entry(i, k).mul(other.entry(k, j)));
            }
            acc
        })
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.ncols, self.nrows, |i, j| {
            self.entry(j, i).clone()
        })
    }

    /// Kronecker product; row index flattens as `i1 * other.nrows + i2`.
    pub fn kron(&self, other: &PolyMatrix) -> PolyMatrix {
        PolyMatrix::from_fn(
            &self.ring,
            self.nrows * other.nrows,
            self.ncols * other.ncols,
            |i, j| {
                let (i1, i2) = (i / other.nrows, i % other.nrows);
                let (j1, j2) = (j / other.ncols, j % other.ncols);
                self.entry(i1, j1).mul(other.entry(i2, j2))
            },
        )
    }

    /// Writes `block` into `self` with upper-left corner `(r, c)`.
    pub fn insert_block(&mut self, r: usize, c: usize, block: &PolyMatrix) {
        for i in 0..block.nrows {
            for j in 0..block.ncols {
                self.set(r + i, c + j, block.entry(i, j).clone());
            }
        }
    }

    pub fn column(&self, j: usize) -> ModuleElt {
        ModuleElt::from_comps((0..self.nrows).map(|i| self.entry(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<ModuleElt> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    /// Matrix-vector product on a module element of rank `ncols`.
    pub fn apply(&self, v: &ModuleElt) -> ModuleElt {
        assert_eq!(v.ncomp(), self.ncols);
        let mut out = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut acc = self.ring.zero();
            for j in 0..self.ncols {
                acc = acc.add(&self.entry(i, j).mul(v.comp(j)));
            }
            out.push(self.ring.nf(&acc));
        }
        ModuleElt::from_comps(out)
    }

    /// All entries as field constants, if the matrix is constant.
    pub fn as_constants(&self) -> Option<ScalarMat> {
        let mut data = Vec::with_capacity(self.data.len());
        for p in &self.data {
            if p.is_zero() {
                data.push(Scalar::zero(self.ring.field()));
            } else {
                data.push(p.as_constant()?);
            }
        }
        Some(ScalarMat {
            nrows: self.nrows,
            ncols: self.ncols,
            data,
        })
    }

    /// Exact determinant. Gaussian elimination on constant matrices,
    /// Berkowitz otherwise.
    pub fn det(&self) -> Polynomial {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        if let Some(sm) = self.as_constants() {
            if !self.ring.has_relations() || self.ring.arity() == 0 {
                return self.ring.constant(sm.det());
            }
        }
        let n = self.nrows;
        if n == 0 {
            return self.ring.one();
        }
        let coeffs = self.char_poly();
        // char(A) = x^n + c_1 x^(n-1) + ... + c_n, det = (-1)^n c_n.
        let cn = &coeffs[n];
        let det = if n % 2 == 0 { cn.clone() } else { cn.neg() };
        self.ring.nf(&det)
    }

    /// Coefficients `[1, c_1, ..., c_n]` of the characteristic
    /// polynomial `x^n + c_1 x^(n-1) + ... + c_n` via Berkowitz.
    pub fn char_poly(&self) -> Vec<Polynomial> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let ring = &self.ring;
        let mut c: Vec<Polynomial> = vec![ring.one()];
        for m in 1..=n {
            // Principal m x m block: split off last row/column.
            let a = self.entry(m - 1, m - 1).clone();
            let r: Vec<Polynomial> = (0..m - 1).map(|i| self.entry(i, m - 1).clone()).collect();
            let s: Vec<Polynomial> = (0..m - 1).map(|j| self.entry(m - 1, j).clone()).collect();
            // q[k] = s * B^k * r where B is the (m-1) principal block.
            let mut q: Vec<Polynomial> = Vec::new();
            if m >= 2 {
                let mut vec_r = r.clone();
                for _ in 0..m - 1 {
                    let mut dot = ring.zero();
                    for (sj, rj) in s.iter().zip(&vec_r) {
                        dot = dot.add(&sj.mul(rj));
                    }
                    q.push(ring.nf(&dot));
                    // vec_r <- B * vec_r
                    let mut next = vec![ring.zero(); m - 1];
                    for (i, nx) in next.iter_mut().enumerate() {
                        let mut acc = ring.zero();
                        for k in 0..m - 1 {
                            acc = acc.add(&self.entry(i, k).mul(&vec_r[k]));
                        }
                        *nx = ring.nf(&acc);
                    }
                    vec_r = next;
                }
            }
            // Toeplitz column: [1, -a, -q0, -q1, ...].
            let mut col = vec![ring.one(), ring.nf(&a.neg())];
            for qi in &q {
                col.push(qi.neg());
            }
            // c_new[i] = sum_j col[i - j] * c[j].
            let mut next = vec![ring.zero(); m + 1];
            for (i, nx) in next.iter_mut().enumerate() {
                let mut acc = ring.zero();
                for (j, cj) in c.iter().enumerate() {
                    if i >= j && i - j < col.len() {
                        acc = acc.add(&col[i - j].mul(cj));
                    }
                }
                *nx = ring.nf(&acc);
            }
            c = next;
        }
        c
    }

    /// Adjugate matrix: `adj(A) * A = det(A) * I`, division free.
    pub fn adjugate(&self) -> PolyMatrix {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let ring = &self.ring;
        if n == 0 {
            return PolyMatrix::zeros(ring, 0, 0);
        }
        let c = self.char_poly();
        // Horner evaluation of A^(n-1) + c_1 A^(n-2) + ... + c_(n-1) I,
        // scaled by (-1)^(n-1); Cayley-Hamilton makes this the adjugate.
        let mut horner = PolyMatrix::zeros(ring, n, n);
        for ck in c.iter().take(n) {
            horner = horner.mul(self);
            horner = horner.add(&PolyMatrix::identity(ring, n).scale(ck));
        }
        let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
        horner.scale_i64(sign)
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.nrows)
            .map(|i| {
                (0..self.ncols)
                    .map(|j| self.ring.display(self.entry(i, j)))
                    .collect()
            })
            .collect()
    }
}

/// Dense matrix of field scalars with exact Gaussian elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMat {
    nrows: usize,
    ncols: usize,
    data: Vec<Scalar>,
}

impl ScalarMat {
    pub fn new(nrows: usize, ncols: usize, data: Vec<Scalar>) -> ScalarMat {
        assert_eq!(data.len(), nrows * ncols);
        ScalarMat {
            nrows,
            ncols,
            data,
        }
    }

    pub fn from_fn(
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> ScalarMat {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        ScalarMat {
            nrows,
            ncols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.ncols {
            if rank == m.nrows {
                break;
            }
            let pivot = (rank..m.nrows).find(|&r| !m.entry(r, col).is_zero());
            let Some(p) = pivot else { continue };
            for j in 0..m.ncols {
                let tmp = m.entry(rank, j).clone();
                let v = m.entry(p, j).clone();
                m.set(rank, j, v);
                m.set(p, j, tmp);
            }
            let inv = m.entry(rank, col).inv().unwrap();
            for j in 0..m.ncols {
                let v = m.entry(rank, j).mul(&inv);
                m.set(rank, j, v);
            }
            for r in 0..m.nrows {
                if r != rank && !m.entry(r, col).is_zero() {
                    let f = m.entry(r, col).clone();
                    for j in 0..m.ncols {
                        let v = m.entry(r, j).sub(&m.entry(rank, j).mul(&f));
                        m.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.nrows, self.ncols);
        if self.nrows == 0 {
            // Empty product: determinant of the empty matrix is 1, but
            // we have no field tag; callers handle n = 0 themselves.
            panic!("determinant of 0 x 0 scalar matrix needs a field tag");
        }
        let kind = self.data[0].kind();
        let mut m = self.clone();
        let mut det = Scalar::one(kind);
        for col in 0..m.ncols {
            let pivot = (col..m.nrows).find(|&r| !m.entry(r, col).is_zero());
            let Some(p) = pivot else {
                return Scalar::zero(kind);
            };
            if p != col {
                det = det.neg();
                for j in 0..m.ncols {
                    let tmp = m.entry(col, j).clone();
                    let v = m.entry(p, j).clone();
                    m.set(col, j, v);
                    m.set(p, j, tmp);
                }
            }
            let d = m.entry(col, col).clone();
            det = det.mul(&d);
            let inv = d.inv().unwrap();
            for r in col + 1..m.nrows {
                if !m.entry(r, col).is_zero() {
                    let f = m.entry(r, col).mul(&inv);
                    for j in 0..m.ncols {
                        let v = m.entry(r, j).sub(&m.entry(col, j).mul(&f));
                        m.set(r, j, v);
                    }
                }
            }
        }
        det
    }

    /// Solves `self * x = rhs` when a unique solution exists.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.nrows);
        if self.nrows != self.ncols {
            return Err(AlgebraError::Other(
                "solve requires a square system".to_string(),
            ));
        }
        let n = self.nrows;
        if n == 0 {
            return Ok(Vec::new());
        }
        let kind = self.data[0].kind();
        let mut m = self.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.entry(r, col).is_zero());
            let Some(p) = pivot else {
                return Err(AlgebraError::SingularMatrix {
                    det: "0".to_string(),
                });
            };
            if p != col {
                for j in 0..n {
                    let tmp = m.entry(col, j).clone();
                    let v = m.entry(p, j).clone();
                    m.set(col, j, v);
                    m.set(p, j, tmp);
                }
                b.swap(col, p);
            }
            let inv = m.entry(col, col).inv().unwrap();
            for j in 0..n {
                let v = m.entry(col, j).mul(&inv);
                m.set(col, j, v);
            }
            b[col] = b[col].mul(&inv);
            for r in 0..n {
                if r != col && !m.entry(r, col).is_zero() {
                    let f = m.entry(r, col).clone();
                    for j in 0..n {
                        let v = m.entry(r, j).sub(&m.entry(col, j).mul(&f));
                        m.set(r, j, v);
                    }
                    b[r] = b[r].sub(&b[col].mul(&f));
                }
            }
        }
        let _ = kind;
        Ok(b)
    }
}
