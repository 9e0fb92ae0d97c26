//! Dense complex Gaussian elimination with partial pivoting.

use num_complex::Complex64;

/// Row-major dense square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.n + col]
    }

    pub fn add(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.n + col] += value;
    }

    fn row(&self, row: usize) -> &[Complex64] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Failure of [`solve`]: the pivot ratio exceeded the singularity bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singular {
    /// `max |u_ii| / min |u_ii|` of the partially built factor.
    pub condition: f64,
}

/// Pivots smaller than this, relative to the largest pivot, mean singular.
const SINGULAR_PIVOT: f64 = 1e-14;

/// Solves `A x = b`. Rows are first scaled to unit max-norm.
pub fn solve(matrix: &DenseMatrix, rhs: &[Complex64]) -> Result<Vec<Complex64>, Singular> {
    let n = matrix.n;
    assert_eq!(rhs.len(), n, "right-hand side length mismatch");
    let mut a = matrix.data.clone();
    let mut b = rhs.to_vec();

    for i in 0..n {
        let scale = a[i * n..(i + 1) * n]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Singular {
                condition: f64::INFINITY,
            });
        }
        let inv = 1.0 / scale;
        a[i * n..(i + 1) * n].iter_mut().for_each(|z| *z *= inv);
        b[i] *= inv;
    }

    let mut max_pivot = 0.0f64;
    let mut min_pivot = f64::INFINITY;
    for col in 0..n {
        let (pivot_row, pivot_abs) =
            (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        max_pivot = max_pivot.max(pivot_abs);
        min_pivot = min_pivot.min(pivot_abs);
        if pivot_abs.is_nan() || pivot_abs <= SINGULAR_PIVOT * max_pivot {
            return Err(Singular {
                condition: max_pivot / pivot_abs,
            });
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(col * n + j, pivot_row * n + j);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for r in col + 1..n {
            let factor = a[r * n + col] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            a[r * n + col] = Complex64::new(0.0, 0.0);
            for j in col + 1..n {
                let upper = a[col * n + j];
                a[r * n + j] -= factor * upper;
            }
            let upper = b[col];
            b[r] -= factor * upper;
        }
    }

    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in i + 1..n {
            acc -= a[i * n + j] * x[j];
        }
        x[i] = acc / a[i * n + i];
    }
    Ok(x)
}
