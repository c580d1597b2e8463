use super::{Field, Matrix, Scalar};

/// A subspace of `K^n` stored as the nonzero rows of an RREF matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    n: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, n: usize) -> Self {
        Subspace { field, n, basis: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    /// Span of the rows of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let rref = m.rref();
        let basis = rref.matrix.submatrix(0, rref.rank, 0, m.cols());
        Subspace { field: m.field(), n: m.cols(), basis, pivots: rref.pivots }
    }

    /// Span of row vectors of width `n`.
    pub fn spanned_by(field: Field, n: usize, rows: &[Matrix]) -> Self {
        let refs: Vec<&Matrix> = rows.iter().collect();
        Subspace::from_matrix(&Matrix::vstack(field, n, &refs))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// RREF basis rows, one per pivot.
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Matrix> {
        (0..self.dim()).map(|i| self.basis.row(i)).collect()
    }

    /// Canonical coset representative of the row vector `v`; zero at every pivot.
    pub fn reduce(&self, v: &Matrix) -> Matrix {
        v.reduce_by(&self.basis, &self.pivots)
    }

    pub fn contains(&self, v: &Matrix) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coefficients of `v` in the RREF basis, when `v` lies in the subspace.
    pub fn coordinates(&self, v: &Matrix) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v.get(0, c)).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_matrix(&Matrix::vstack(self.field, self.n, &[&self.basis, &other.basis]))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }
}

/// The quotient `V / S` of an ambient subspace `V` by `S ⊆ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    sub: Subspace,
    reps: Subspace,
}

impl QuotientSpace {
    /// `ambient` spans `V`; `sub` must lie in `V`.
    pub fn new(ambient: &[Matrix], sub: Subspace) -> Self {
        let reduced: Vec<Matrix> = ambient.iter().map(|v| sub.reduce(v)).collect();
        let reps = Subspace::spanned_by(sub.field(), sub.ambient_dim(), &reduced);
        QuotientSpace { sub, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// Canonical representative of the coset of `v`.
    pub fn canonical(&self, v: &Matrix) -> Matrix {
        self.sub.reduce(v)
    }

    /// Coordinates of the coset of `v` in the representative basis, or `None`
    /// when `v` is outside the ambient space.
    pub fn coordinates(&self, v: &Matrix) -> Option<Vec<Scalar>> {
        self.reps.coordinates(&self.canonical(v))
    }

    /// Canonical representatives forming a basis of the quotient.
    pub fn representatives(&self) -> Vec<Matrix> {
        self.reps.basis()
    }

    pub fn is_zero_class(&self, v: &Matrix) -> bool {
        self.sub.contains(v)
    }
}
