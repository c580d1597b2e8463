// The dispatch macros expand the same body for `u64` and `BigRational` elements.
#![allow(clippy::clone_on_copy)]

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::field::{inv_mod, Field, Scalar};
use crate::error::{Error, Result};

/// Arithmetic backend for one concrete field representation.
trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn to_scalar(&self, a: &Self::E) -> Scalar;
    fn lift(&self, s: &Scalar) -> Self::E;
    fn wrap(&self, v: Vec<Self::E>) -> Data;

    /// `dst[k] -= f * src[k]` over a whole row.
    fn axpy_neg(&self, dst: &mut [Self::E], f: &Self::E, src: &[Self::E]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.sub(d, &self.mul(f, s));
            }
        }
    }
}

struct RatArith;

impl Arith for RatArith {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(q) => q.clone(),
            _ => panic!("field mismatch: expected a rational scalar"),
        }
    }
    fn wrap(&self, v: Vec<BigRational>) -> Data {
        Data::Rational(v)
    }
}

struct ModArith(u64);

impl Arith for ModArith {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Prime { value: *a, modulus: self.0 }
    }
    fn lift(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Prime { value, modulus } if *modulus == self.0 => *value,
            _ => panic!("field mismatch: expected an element of F_{}", self.0),
        }
    }
    fn wrap(&self, v: Vec<u64>) -> Data {
        Data::Prime { p: self.0, v }
    }
    fn axpy_neg(&self, dst: &mut [u64], f: &u64, src: &[u64]) {
        let p = self.0;
        let neg_f = (p - f) % p;
        for (d, s) in dst.iter_mut().zip(src) {
            if *s != 0 {
                *d = (*d + neg_f * s) % p;
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Data {
    Rational(Vec<BigRational>),
    Prime { p: u64, v: Vec<u64> },
}

macro_rules! dispatch {
    ($data:expr, $a:ident, $v:ident => $body:expr) => {
        match $data {
            Data::Rational($v) => {
                let $a = RatArith;
                $body
            }
            Data::Prime { p, v: $v } => {
                let $a = ModArith(*p);
                $body
            }
        }
    };
}

macro_rules! dispatch2 {
    ($d1:expr, $d2:expr, $a:ident, $x:ident, $y:ident => $body:expr) => {
        match ($d1, $d2) {
            (Data::Rational($x), Data::Rational($y)) => {
                let $a = RatArith;
                $body
            }
            (Data::Prime { p, v: $x }, Data::Prime { p: q, v: $y }) if p == q => {
                let $a = ModArith(*p);
                $body
            }
            _ => panic!("field mismatch between matrices"),
        }
    };
}

/// Dense row-major matrix over `Q` or `F_p` with exact arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Data,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        let n = rows * cols;
        let data = match field {
            Field::Rational => Data::Rational(vec![BigRational::zero(); n]),
            Field::Prime { p } => Data::Prime { p, v: vec![0; n] },
        };
        Matrix { rows, cols, data }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, &field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, &f(i, j));
            }
        }
        m
    }

    /// Builds a matrix from row-major scalars.
    pub fn from_scalars(field: Field, rows: usize, cols: usize, entries: &[Scalar]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(format!("entry {bad} is not in {field}")));
        }
        Ok(Matrix::from_fn(field, rows, cols, |i, j| entries[i * cols + j].clone()))
    }

    /// Convenience constructor from small integers (reduced into the field).
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Matrix::from_fn(field, rows, cols, |i, j| field.from_i64(entries[i * cols + j]))
    }

    /// Parses row-major entries in the textual element format.
    pub fn from_strings(field: Field, rows: usize, cols: usize, entries: &[String]) -> Result<Self> {
        let scalars = entries
            .iter()
            .map(|s| field.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_scalars(field, rows, cols, &scalars)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries().iter().map(|s| s.to_string()).collect()
    }

    pub fn column_vector(field: Field, entries: &[Scalar]) -> Self {
        Matrix::from_fn(field, entries.len(), 1, |i, _| entries[i].clone())
    }

    pub fn row_vector(field: Field, entries: &[Scalar]) -> Self {
        Matrix::from_fn(field, 1, entries.len(), |_, j| entries[j].clone())
    }

    pub fn field(&self) -> Field {
        match &self.data {
            Data::Rational(_) => Field::Rational,
            Data::Prime { p, .. } => Field::Prime { p: *p },
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let k = i * self.cols + j;
        dispatch!(&self.data, a, v => a.to_scalar(&v[k]))
    }

    pub fn set(&mut self, i: usize, j: usize, s: &Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let k = i * self.cols + j;
        match &mut self.data {
            Data::Rational(v) => v[k] = RatArith.lift(s),
            Data::Prime { p, v } => v[k] = ModArith(*p).lift(s),
        }
    }

    /// Row-major list of entries.
    pub fn entries(&self) -> Vec<Scalar> {
        dispatch!(&self.data, a, v => v.iter().map(|x| a.to_scalar(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        dispatch!(&self.data, a, v => v.iter().all(|x| a.is_zero(x)))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field(), self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let (r, c) = (self.rows, self.cols);
        let data = dispatch!(&self.data, a, v => {
            let mut out = Vec::with_capacity(r * c);
            for j in 0..c {
                for i in 0..r {
                    out.push(v[i * c + j].clone());
                }
            }
            a.wrap(out)
        });
        Matrix { rows: c, cols: r, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let (n, m, k) = (self.rows, self.cols, other.cols);
        let data = dispatch2!(&self.data, &other.data, a, x, y => {
            let mut out = vec![a.zero(); n * k];
            for i in 0..n {
                for l in 0..m {
                    let f = &x[i * m + l];
                    if a.is_zero(f) {
                        continue;
                    }
                    let nf = a.neg(f);
                    a.axpy_neg(&mut out[i * k..(i + 1) * k], &nf, &y[l * k..(l + 1) * k]);
                }
            }
            a.wrap(out)
        });
        Matrix { rows: n, cols: k, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in addition");
        let data = dispatch2!(&self.data, &other.data, a, x, y =>
            a.wrap(x.iter().zip(y).map(|(s, t)| a.add(s, t)).collect()));
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in subtraction");
        let data = dispatch2!(&self.data, &other.data, a, x, y =>
            a.wrap(x.iter().zip(y).map(|(s, t)| a.sub(s, t)).collect()));
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = dispatch!(&self.data, a, v => a.wrap(v.iter().map(|s| a.neg(s)).collect()));
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = dispatch!(&self.data, a, v => {
            let c = a.lift(c);
            a.wrap(v.iter().map(|s| a.mul(&c, s)).collect())
        });
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Horizontal concatenation; all parts must share the row count.
    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    /// Vertical concatenation; all parts must share the column count.
    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.set_block(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `m`.
    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "block out of range");
        let cols = self.cols;
        let (mr, mc) = (m.rows, m.cols);
        match (&mut self.data, &m.data) {
            (Data::Rational(dst), Data::Rational(src)) => {
                for i in 0..mr {
                    dst[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + mc]
                        .clone_from_slice(&src[i * mc..(i + 1) * mc]);
                }
            }
            (Data::Prime { p, v: dst }, Data::Prime { p: q, v: src }) if p == q => {
                for i in 0..mr {
                    dst[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + mc]
                        .copy_from_slice(&src[i * mc..(i + 1) * mc]);
                }
            }
            _ => panic!("field mismatch in set_block"),
        }
    }

    /// The block of rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let cols = self.cols;
        let data = dispatch!(&self.data, a, v => {
            let mut out = Vec::with_capacity((r1 - r0) * (c1 - c0));
            for i in r0..r1 {
                out.extend_from_slice(&v[i * cols + c0..i * cols + c1]);
            }
            a.wrap(out)
        });
        Matrix { rows: r1 - r0, cols: c1 - c0, data }
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.submatrix(0, self.rows, j, j + 1)
    }

    pub fn row(&self, i: usize) -> Matrix {
        self.submatrix(i, i + 1, 0, self.cols)
    }

    /// Reshapes without touching the row-major entry order.
    pub fn reshape(&self, rows: usize, cols: usize) -> Matrix {
        assert_eq!(rows * cols, self.rows * self.cols, "reshape must preserve entry count");
        Matrix { rows, cols, data: self.data.clone() }
    }

    /// Reduced row echelon form. Pivots are chosen as the leftmost column with
    /// a nonzero entry at or below the current row, taking the topmost such row.
    pub fn rref(&self) -> Rref {
        let (rows, cols) = (self.rows, self.cols);
        let (data, pivots) = dispatch!(&self.data, a, v => {
            let mut m = v.clone();
            let pivots = rref_in_place(&a, &mut m, rows, cols);
            (a.wrap(m), pivots)
        });
        let rank = pivots.len();
        Rref { matrix: Matrix { rows, cols, data }, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, one column vector per free column, in
    /// increasing order of free column. Each vector has a 1 at its free column.
    pub fn kernel_basis(&self) -> Vec<Matrix> {
        let field = self.field();
        let rref = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rref.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Matrix::zeros(field, self.cols, 1);
                v.set(f, 0, &field.one());
                for (r, &pc) in rref.pivots.iter().enumerate() {
                    let e = rref.matrix.get(r, f);
                    if !e.is_zero() {
                        v.set(pc, 0, &e.neg());
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.cols != 1 || b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side must be a {}x1 column, got {}x{}",
                self.rows, b.rows, b.cols
            )));
        }
        Ok(self.solve_right(b))
    }

    /// Some `X` with `self * X = rhs` (all columns at once), or `None`.
    pub fn solve_right(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve_right row mismatch");
        let field = self.field();
        let n = self.cols;
        let k = rhs.cols;
        let aug = Matrix::hstack(field, self.rows, &[self, rhs]);
        let rref = aug.rref();
        if rref.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::zeros(field, n, k);
        for (r, &pc) in rref.pivots.iter().enumerate() {
            for j in 0..k {
                x.set(pc, j, &rref.matrix.get(r, n + j));
            }
        }
        Some(x)
    }

    /// Some `X` with `X * self = rhs`, or `None`.
    pub fn solve_left(&self, rhs: &Matrix) -> Option<Matrix> {
        self.transpose()
            .solve_right(&rhs.transpose())
            .map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_right(&Matrix::identity(self.field(), self.rows))?;
        // A one-sided inverse of a square matrix is two-sided.
        Some(x)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        let mut out = Matrix::zeros(self.field(), r1 * r2, c1 * c2);
        for i in 0..r1 {
            for j in 0..c1 {
                let s = self.get(i, j);
                if !s.is_zero() {
                    out.set_block(i * r2, j * c2, &other.scale(&s));
                }
            }
        }
        out
    }

    /// Kernel basis assembled as the columns of a `cols x nullity` matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        let ks = self.kernel_basis();
        let refs: Vec<&Matrix> = ks.iter().collect();
        Matrix::hstack(self.field(), self.cols, &refs)
    }

    /// Rows spanning the left null space, as a `nullity x rows` matrix.
    pub fn left_kernel_matrix(&self) -> Matrix {
        self.transpose().kernel_matrix().transpose()
    }

    /// Columns at the pivot positions of the RREF: a basis of the column space.
    pub fn column_space(&self) -> Matrix {
        let rref = self.rref();
        let cols: Vec<Matrix> = rref.pivots.iter().map(|&c| self.column(c)).collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        Matrix::hstack(self.field(), self.rows, &refs)
    }

    /// Reduces the row vector `self` by rows of `basis`, which must be in RREF
    /// with the given pivots. The result vanishes at every pivot column.
    pub(crate) fn reduce_by(&self, basis: &Matrix, pivots: &[usize]) -> Matrix {
        assert_eq!(self.rows, 1, "reduce_by expects a row vector");
        assert_eq!(self.cols, basis.cols, "reduce_by width mismatch");
        let n = self.cols;
        let data = dispatch2!(&self.data, &basis.data, a, v, b => {
            let mut out = v.clone();
            for (r, &pc) in pivots.iter().enumerate() {
                if a.is_zero(&out[pc]) {
                    continue;
                }
                let f = out[pc].clone();
                a.axpy_neg(&mut out, &f, &b[r * n..(r + 1) * n]);
            }
            a.wrap(out)
        });
        Matrix { rows: 1, cols: n, data }
    }

    /// Stable textual rendering used for checksums and replay files.
    pub fn canonical_string(&self) -> String {
        format!("{}x{}[{}]", self.rows, self.cols, self.to_strings().join(","))
    }
}

fn rref_in_place<A: Arith>(a: &A, m: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a.is_zero(&m[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = a.inv(&m[r * cols + c]);
        for j in c..cols {
            let x = a.mul(&m[r * cols + j], &inv);
            m[r * cols + j] = x;
        }
        let pivot_row: Vec<A::E> = m[r * cols..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m[i * cols + c].clone();
            if a.is_zero(&f) {
                continue;
            }
            a.axpy_neg(&mut m[i * cols..(i + 1) * cols], &f, &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.field(), self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Integer helper used by tests and fixtures.
pub fn rational(n: i64, d: i64) -> Scalar {
    Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn rref_of_empty_matrix() {
        let m = Matrix::zeros(Field::Rational, 0, 0);
        let r = m.rref();
        assert_eq!(r.matrix.shape(), (0, 0));
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_of_identity_over_f5() {
        let id = Matrix::identity(f5(), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_rank_one_rational() {
        // [[2,4],[1,2]] reduces to [[1,2],[0,0]].
        let m = Matrix::from_i64(Field::Rational, 2, 2, &[2, 4, 1, 2]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.matrix, Matrix::from_i64(Field::Rational, 2, 2, &[1, 2, 0, 0]));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(f5(), 4).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(f5(), 2, 3).kernel_basis().len(), 3);
        let m = Matrix::from_i64(f5(), 2, 3, &[1, 1, 0, 0, 0, 1]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], Matrix::from_i64(f5(), 3, 1, &[-1, 1, 0]));
        assert!(m.mul(&k[0]).is_zero());
    }

    #[test]
    fn solve_examples() {
        let q = Field::Rational;
        let b = Matrix::from_i64(q, 3, 1, &[3, -1, 7]);
        assert_eq!(Matrix::identity(q, 3).solve(&b).unwrap(), Some(b.clone()));

        let z = Matrix::zeros(q, 2, 2);
        let nz = Matrix::from_i64(q, 2, 1, &[1, 0]);
        assert_eq!(z.solve(&nz).unwrap(), None);

        let m = Matrix::from_i64(q, 2, 2, &[1, 2, 2, 4]);
        let x = m.solve(&Matrix::from_i64(q, 2, 1, &[1, 2])).unwrap().unwrap();
        // x1 + 2 x2 = 1
        let lhs = x.get(0, 0).add(&x.get(1, 0).mul(&q.from_i64(2)));
        assert!(lhs.is_one());

        assert!(m.solve(&Matrix::from_i64(q, 3, 1, &[1, 2, 3])).is_err());
    }

    #[test]
    fn inverse_and_left_solve() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, 2, 2, &[2, 1, 1, 1]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let x = m.solve_left(&Matrix::identity(q, 2)).unwrap();
        assert!(x.mul(&m).is_identity());
        assert!(Matrix::from_i64(q, 2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn rational_entries_in_lowest_terms() {
        let q = Field::Rational;
        let m = Matrix::from_strings(q, 1, 2, &["2/4".into(), "-6/3".into()]).unwrap();
        assert_eq!(m.to_strings(), vec!["1/2", "-2"]);
        assert_eq!(m.get(0, 0), rational(1, 2));
    }
}
