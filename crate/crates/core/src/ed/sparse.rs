use nalgebra::DMatrix;
use nalgebra_sparse::{CooMatrix, CsrMatrix};

/// Accumulates matrix elements; duplicates are summed on conversion to CSR.
pub(crate) struct TripletBuilder {
    coo: CooMatrix<f64>,
}

impl TripletBuilder {
    pub fn new(dim: usize) -> Self {
        TripletBuilder {
            coo: CooMatrix::new(dim, dim),
        }
    }

    pub fn push(&mut self, row: usize, col: usize, value: f64) {
        self.coo.push(row, col, value);
    }

    /// Pushes (row, col) and its mirror with the same value.
    pub fn push_symmetric(&mut self, row: usize, col: usize, value: f64) {
        self.coo.push(row, col, value);
        if row != col {
            self.coo.push(col, row, value);
        }
    }

    /// Pushes value at (row, col) and −value at (col, row).
    pub fn push_antisymmetric(&mut self, row: usize, col: usize, value: f64) {
        debug_assert_ne!(row, col);
        self.coo.push(row, col, value);
        self.coo.push(col, row, -value);
    }

    pub fn finish(self) -> CsrMatrix<f64> {
        CsrMatrix::from(&self.coo)
    }
}

/// y = A x, accumulated row by row in stored order.
pub fn matvec(a: &CsrMatrix<f64>, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(a.ncols(), x.len());
    debug_assert_eq!(a.nrows(), y.len());
    let offsets = a.row_offsets();
    let cols = a.col_indices();
    let vals = a.values();
    for (row, out) in y.iter_mut().enumerate() {
        let mut acc = 0.0;
        for k in offsets[row]..offsets[row + 1] {
            acc += vals[k] * x[cols[k]];
        }
        *out = acc;
    }
}

pub fn apply(a: &CsrMatrix<f64>, x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; a.nrows()];
    matvec(a, x, &mut y);
    y
}

/// max_i Σ_j |A_ij|
pub fn inf_norm(a: &CsrMatrix<f64>) -> f64 {
    a.row_iter()
        .map(|r| r.values().iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn is_symmetric(a: &CsrMatrix<f64>) -> bool {
    a.transpose() == *a
}

pub fn is_antisymmetric(a: &CsrMatrix<f64>) -> bool {
    let mut neg = a.clone();
    neg.values_mut().iter_mut().for_each(|v| *v = -*v);
    a.transpose() == neg
}

pub fn to_dense(a: &CsrMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from(a)
}

/// Real-symmetric Hamiltonian together with the Z₂ parity of its basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseHamiltonian {
    pub matrix: CsrMatrix<f64>,
    /// ±1 per basis state when the model conserves a parity, used to pick a
    /// definite-parity ground state out of a near-degenerate doublet.
    pub parity: Option<Vec<i8>>,
}

impl SparseHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn nnz(&self) -> usize {
        self.matrix.nnz()
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric(&self.matrix)
    }

    pub fn inf_norm(&self) -> f64 {
        inf_norm(&self.matrix)
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        apply(&self.matrix, x)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        to_dense(&self.matrix)
    }

    /// Wraps an arbitrary symmetric matrix given densely; entries equal to
    /// zero are dropped.
    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        let mut b = TripletBuilder::new(m.nrows());
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if m[(i, j)] != 0.0 {
                    b.push(i, j, m[(i, j)]);
                }
            }
        }
        SparseHamiltonian {
            matrix: b.finish(),
            parity: None,
        }
    }
}
