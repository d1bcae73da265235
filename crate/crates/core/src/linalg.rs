//! Dense row-major matrices and the SVD-based Moore–Penrose pseudoinverse.
//!
//! The decomposition itself is delegated to `faer`; everything the ELM
//! touches (products, activations, argmax) works on [`Matrix`] directly.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} values, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from equal-length rows. An empty slice gives a 0×0 matrix.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} columns, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[f64]> {
        // chunks_exact panics on zero width
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.row_iter().map(<[f64]>::to_vec).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Plain triple loop in i-k-j order; summation order is fixed, so results
    /// are reproducible bit for bit.
    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot subtract {}x{} from {}x{}",
                rhs.rows, rhs.cols, self.rows, self.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, columns: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * columns.len());
        for row in self.row_iter() {
            data.extend(columns.iter().map(|&c| row[c]));
        }
        Matrix {
            rows: self.rows,
            cols: columns.len(),
            data,
        }
    }
}

/// Cutoff below which singular values are treated as zero when no explicit
/// tolerance is given: `max(rows, cols) * eps * sigma_max`.
pub fn default_tolerance(rows: usize, cols: usize, sigma_max: f64) -> f64 {
    rows.max(cols) as f64 * f64::EPSILON * sigma_max
}

/// Moore–Penrose pseudoinverse via SVD; singular values `<= tol` are dropped.
pub fn pinv(a: &Matrix, tol: Option<f64>) -> Result<Matrix> {
    if !a.is_finite() {
        return Err(Error::InvalidArgument(
            "pseudoinverse input contains non-finite values".into(),
        ));
    }
    let (rows, cols) = a.shape();
    if rows == 0 || cols == 0 {
        return Ok(Matrix::zeros(cols, rows));
    }
    let svd = faer::Mat::<f64>::from_fn(rows, cols, |i, j| a.get(i, j))
        .thin_svd()
        .map_err(|_| Error::SvdFailure)?;
    let (u, v) = (svd.U(), svd.V());
    let sigma = svd.S().column_vector();
    let sigma_max = sigma.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol.unwrap_or_else(|| default_tolerance(rows, cols, sigma_max));

    // A+ = V * diag(1/s) * U^T over the retained singular triplets
    let mut out = Matrix::zeros(cols, rows);
    for (k, &s) in sigma.iter().enumerate() {
        if !(s > cutoff) {
            continue;
        }
        let inv = 1.0 / s;
        for i in 0..cols {
            let vi = v[(i, k)] * inv;
            if vi == 0.0 {
                continue;
            }
            let row = out.row_mut(i);
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += vi * u[(j, k)];
            }
        }
    }
    Ok(out)
}

/// Minimum-norm least-squares solution `X = A+ B`.
pub fn lstsq_min_norm(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "lstsq needs equal row counts, got {} and {}",
            a.rows(),
            b.rows()
        )));
    }
    pinv(a, None)?.matmul(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::from_vec(
            rows,
            cols,
            (0..rows * cols)
                .map(|_| rng.random_range(-1.0..1.0))
                .collect(),
        )
        .unwrap()
    }

    fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
        a.sub(b)
            .unwrap()
            .as_slice()
            .iter()
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    /// (A^T A)^-1 A^T by Gauss-Jordan elimination, for full column rank A.
    fn normal_equations_pinv(a: &Matrix) -> Matrix {
        let at = a.transpose();
        let ata = at.matmul(a).unwrap();
        let n = ata.rows();
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, ata.get(i, j));
            }
            aug.set(i, n + i, 1.0);
        }
        for c in 0..n {
            let p = (c..n)
                .max_by(|&x, &y| aug.get(x, c).abs().total_cmp(&aug.get(y, c).abs()))
                .unwrap();
            for j in 0..2 * n {
                let (x, y) = (aug.get(c, j), aug.get(p, j));
                aug.set(c, j, y);
                aug.set(p, j, x);
            }
            let piv = aug.get(c, c);
            for j in 0..2 * n {
                aug.set(c, j, aug.get(c, j) / piv);
            }
            for r in 0..n {
                if r != c {
                    let f = aug.get(r, c);
                    for j in 0..2 * n {
                        aug.set(r, j, aug.get(r, j) - f * aug.get(c, j));
                    }
                }
            }
        }
        let inv = Matrix::from_rows(
            &aug.to_rows()
                .iter()
                .map(|r| r[n..].to_vec())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        inv.matmul(&at).unwrap()
    }

    #[test]
    fn identity_is_its_own_pinv() {
        assert_eq!(
            max_abs_diff(
                &pinv(&Matrix::identity(3), None).unwrap(),
                &Matrix::identity(3)
            ),
            0.0
        );
    }

    #[test]
    fn singular_diagonal() {
        let p = pinv(&Matrix::diag(&[2.0, 0.0]), None).unwrap();
        assert!(max_abs_diff(&p, &Matrix::diag(&[0.5, 0.0])) < 1e-15);
    }

    #[test]
    fn explicit_tolerance_drops_small_singular_values() {
        let p = pinv(&Matrix::diag(&[2.0, 1e-3]), Some(1e-2)).unwrap();
        assert!(max_abs_diff(&p, &Matrix::diag(&[0.5, 0.0])) < 1e-15);
    }

    #[test]
    fn full_rank_tall_matches_normal_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random(5, 3, &mut rng);
            let p = pinv(&a, None).unwrap();
            assert!(max_abs_diff(&p.matmul(&a).unwrap(), &Matrix::identity(3)) < 1e-10);
            assert!(max_abs_diff(&p, &normal_equations_pinv(&a)) < 1e-9);
        }
    }

    #[test]
    fn lstsq_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let b = random(4, 2, &mut rng);
        assert!(max_abs_diff(&lstsq_min_norm(&Matrix::identity(4), &b).unwrap(), &b) < 1e-14);

        let a = random(8, 3, &mut rng);
        let x_true = random(3, 2, &mut rng);
        let b = a.matmul(&x_true).unwrap();
        let x = lstsq_min_norm(&a, &b).unwrap();
        assert!(a.matmul(&x).unwrap().sub(&b).unwrap().frobenius_norm() < 1e-10);

        // rank 2 in a 6x4 shape
        let a = random(6, 2, &mut rng)
            .matmul(&random(2, 4, &mut rng))
            .unwrap();
        let b = random(6, 3, &mut rng);
        let x = lstsq_min_norm(&a, &b).unwrap();
        let via_pinv = pinv(&a, None).unwrap().matmul(&b).unwrap();
        assert!(max_abs_diff(&x, &via_pinv) < 1e-12);

        assert!(matches!(
            lstsq_min_norm(&a, &random(5, 1, &mut rng)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn wide_and_empty_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random(3, 7, &mut rng);
        let p = pinv(&a, None).unwrap();
        assert_eq!(p.shape(), (7, 3));
        assert!(max_abs_diff(&a.matmul(&p).unwrap(), &Matrix::identity(3)) < 1e-10);
        assert_eq!(pinv(&Matrix::zeros(0, 3), None).unwrap().shape(), (3, 0));
    }

    #[test]
    fn rejects_non_finite() {
        let a = Matrix::from_vec(1, 2, vec![1.0, f64::NAN]).unwrap();
        assert!(pinv(&a, None).is_err());
    }

    #[test]
    fn matmul_shape_checks() {
        let a = Matrix::zeros(2, 3);
        assert!(a.matmul(&Matrix::zeros(2, 2)).is_err());
        assert_eq!(a.matmul(&Matrix::zeros(3, 4)).unwrap().shape(), (2, 4));
        assert!(Matrix::from_vec(2, 2, vec![1.0]).is_err());
        assert!(Matrix::from_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }
}
