//! Dense complex matrices and the handful of linear-algebra primitives the
//! decomposition needs: products, adjoints, Fourier and permutation matrices,
//! tolerance-aware membership predicates and Haar-random unitaries.
//!
//! All residuals are max-entry moduli (`‖·‖_max`), compared against an absolute
//! [`Tolerance`].

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Absolute entrywise tolerance.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tolerance {
    abs_eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-10;

    pub fn new(abs_eps: f64) -> Result<Self> {
        if abs_eps.is_finite() && abs_eps >= 0.0 {
            Ok(Tolerance { abs_eps })
        } else {
            Err(Error::Parse(format!(
                "tolerance must be a finite non-negative number, got {abs_eps}"
            )))
        }
    }

    /// Panics on a negative or non-finite value; meant for literals.
    pub fn abs(abs_eps: f64) -> Self {
        Self::new(abs_eps).expect("invalid tolerance")
    }

    pub fn eps(self) -> f64 {
        self.abs_eps
    }

    #[inline]
    pub fn accepts(self, residual: f64) -> bool {
        residual <= self.abs_eps
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: Self::DEFAULT_EPS,
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Row-major entries; errors if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape {
                expected: format!("{rows}x{cols} = {} entries", rows * cols),
                got: format!("{} entries", data.len()),
            });
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows; panics on ragged input.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend_from_slice(row.as_ref());
        }
        CMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.as_ref().iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn try_mul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape {
                expected: format!("{} rows on the right", self.cols),
                got: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let lhs_row = self.row(i);
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in lhs_row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> CMatrix {
        self.scale(Complex64::new(s, 0.0))
    }

    /// `‖A - B‖_max`; `f64::INFINITY` on shape mismatch.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖A‖_max`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: Tolerance) -> bool {
        tol.accepts(self.max_abs_diff(other))
    }

    /// Copies the `rows × cols` sub-block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> CMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        CMatrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    /// `‖A†A − I‖_max`.
    pub fn unitarity_residual(&self) -> Result<f64> {
        let n = self.require_square()?;
        let gram = self.adjoint().try_mul(self)?;
        Ok(gram.max_abs_diff(&CMatrix::identity(n)))
    }

    /// Largest deviation of any row or column sum from 1.
    pub fn line_sum_residual(&self) -> Result<f64> {
        let n = self.require_square()?;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let row: Complex64 = self.row(i).iter().sum();
            let col: Complex64 = (0..n).map(|k| self[(k, i)]).sum();
            worst = worst.max((row - ONE).norm()).max((col - ONE).norm());
        }
        Ok(worst)
    }

    pub fn is_unitary(&self, tol: Tolerance) -> Result<bool> {
        Ok(tol.accepts(self.unitarity_residual()?))
    }

    /// Unitary with every row and column sum equal to 1.
    pub fn is_xu(&self, tol: Tolerance) -> Result<bool> {
        Ok(self.is_unitary(tol)? && tol.accepts(self.line_sum_residual()?))
    }

    /// Real, entries in `[0, 1]`, all line sums 1 (each within tolerance).
    pub fn is_doubly_stochastic(&self, tol: Tolerance) -> Result<bool> {
        self.require_square()?;
        let eps = tol.eps();
        let entries_ok = self
            .data
            .iter()
            .all(|z| z.im.abs() <= eps && z.re >= -eps && z.re <= 1.0 + eps);
        Ok(entries_ok && tol.accepts(self.line_sum_residual()?))
    }

    /// Errors with [`Error::NotXu`] carrying both residuals unless `is_xu` holds.
    pub fn require_xu(&self, tol: Tolerance) -> Result<()> {
        let unitarity = self.unitarity_residual()?;
        let line_sum = self.line_sum_residual()?;
        if tol.accepts(unitarity) && tol.accepts(line_sum) {
            Ok(())
        } else {
            Err(Error::NotXu {
                unitarity,
                line_sum,
                tol: tol.eps(),
            })
        }
    }

    pub(crate) fn from_nalgebra(m: &DMatrix<Complex64>) -> CMatrix {
        CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    /// Panics on incompatible shapes; see [`CMatrix::try_mul`].
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.try_mul(rhs).expect("incompatible shapes")
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `ω^k` for `ω = exp(2πi/n)`, with the exponent reduced mod `n` first.
#[inline]
pub fn root_of_unity(n: usize, k: i64) -> Complex64 {
    let k = k.rem_euclid(n as i64) as f64;
    Complex64::from_polar(1.0, 2.0 * PI * k / n as f64)
}

/// The 0/1 matrix with a one at `(σ(i), i)`.
pub fn permutation_matrix(sigma: &Permutation) -> CMatrix {
    let n = sigma.degree();
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(sigma.map(i), i)] = ONE;
    }
    m
}

/// Unitary Fourier matrix with entries `ω^{jk}/√n`, zero-based exponents.
pub fn fourier_matrix(n: usize) -> CMatrix {
    assert!(n >= 1, "Fourier matrix needs n >= 1");
    let s = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |j, k| root_of_unity(n, (j * k) as i64) * s)
}

/// `F† A F` with no membership check.
pub(crate) fn fourier_similarity(a: &CMatrix) -> CMatrix {
    let f = fourier_matrix(a.rows());
    &(&f.adjoint() * a) * &f
}

/// `F† X F` for `X ∈ XU(n)`; the result is `1 ⊕ U` up to rounding.
pub fn conjugate_by_fourier(x: &CMatrix, tol: Tolerance) -> Result<CMatrix> {
    x.require_xu(tol)?;
    Ok(fourier_similarity(x))
}

/// Haar-distributed `m × m` unitary, deterministic in `seed`.
///
/// QR of a complex Ginibre matrix, with the columns of `Q` rephased so that
/// `R` has a positive diagonal.
pub fn random_unitary(m: usize, seed: u64) -> CMatrix {
    assert!(m >= 1, "random_unitary needs m >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g = DMatrix::<Complex64>::from_fn(m, m, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re * scale, im * scale)
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..m {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..m {
            q[(i, j)] *= phase;
        }
    }
    CMatrix::from_nalgebra(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn phased_fourier4() -> CMatrix {
        let i = c(0.0, 1.0);
        let one = c(1.0, 0.0);
        CMatrix::from_rows(&[
            [one, -i, one, i],
            [one, one, -one, one],
            [one, i, one, -i],
            [-one, one, one, one],
        ])
        .scale_real(0.5)
    }

    #[test]
    fn permutation_matrix_examples() {
        let id = Permutation::identity(3);
        assert_eq!(permutation_matrix(&id), CMatrix::identity(3));
        let t23 = Permutation::transposition(3, 2, 3).unwrap();
        let expected = CMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]);
        assert_eq!(permutation_matrix(&t23), expected);
        let tol = Tolerance::default();
        for s in enumerate(4).unwrap() {
            let p = permutation_matrix(&s);
            assert!(p.is_xu(tol).unwrap());
            assert!(p.is_doubly_stochastic(tol).unwrap());
            assert_eq!(p.trace().re as usize, s.fixed_points());
        }
    }

    #[test]
    fn homomorphism_exhaustive() {
        for n in 1..=5 {
            let all = enumerate(n).unwrap();
            let mats: Vec<CMatrix> = all.iter().map(permutation_matrix).collect();
            for (a, pa) in all.iter().zip(&mats) {
                for (b, pb) in all.iter().zip(&mats) {
                    let ab = a.compose(b).unwrap();
                    assert_eq!(permutation_matrix(&ab), pa * pb);
                }
            }
        }
    }

    #[test]
    fn fourier_examples() {
        assert!(fourier_matrix(1).approx_eq(&CMatrix::identity(1), Tolerance::abs(1e-15)));
        let h = CMatrix::from_real_rows(&[[1.0, 1.0], [1.0, -1.0]]).scale_real(1.0 / 2f64.sqrt());
        assert!(fourier_matrix(2).approx_eq(&h, Tolerance::abs(1e-15)));
        let w = c(-0.5, 3f64.sqrt() / 2.0);
        let w2 = w * w;
        let one = c(1.0, 0.0);
        let f3 = CMatrix::from_rows(&[[one, one, one], [one, w, w2], [one, w2, w]])
            .scale_real(1.0 / 3f64.sqrt());
        assert!(fourier_matrix(3).approx_eq(&f3, Tolerance::abs(1e-15)));
        for n in 1..=12 {
            let f = fourier_matrix(n);
            assert!(f.is_unitary(Tolerance::abs(1e-10)).unwrap(), "n = {n}");
            let s = 1.0 / (n as f64).sqrt();
            for k in 0..n {
                assert!((f[(0, k)] - c(s, 0.0)).norm() < 1e-15);
                assert!((f[(k, 0)] - c(s, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn predicate_examples() {
        let tol = Tolerance::default();
        let id = CMatrix::identity(3);
        assert!(id.is_unitary(tol).unwrap());
        assert!(id.is_xu(tol).unwrap());
        assert!(id.is_doubly_stochastic(tol).unwrap());

        let x = phased_fourier4();
        assert!(x.is_xu(tol).unwrap());
        assert!(!x.is_doubly_stochastic(tol).unwrap());

        let half = CMatrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]);
        assert!(half.is_doubly_stochastic(tol).unwrap());
        assert!(!half.is_unitary(tol).unwrap());

        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(rect.is_unitary(tol), Err(Error::NotSquare { .. })));
        assert!(rect.is_xu(tol).is_err());
        assert!(rect.is_doubly_stochastic(tol).is_err());
    }

    #[test]
    fn predicates_monotone_in_tolerance() {
        let noisy = &permutation_matrix(&Permutation::new(&[2, 3, 1]).unwrap())
            + &CMatrix::from_fn(3, 3, |i, j| c(1e-7 * (i as f64 - j as f64), 0.0));
        let tols = [0.0, 1e-12, 1e-9, 1e-6, 1e-3, 1.0];
        for pred in [CMatrix::is_unitary, CMatrix::is_xu, CMatrix::is_doubly_stochastic] {
            let results: Vec<bool> = tols.iter().map(|&t| pred(&noisy, Tolerance::abs(t)).unwrap()).collect();
            let first_true = results.iter().position(|&b| b).unwrap_or(results.len());
            assert!(results[first_true..].iter().all(|&b| b), "{results:?}");
        }
    }

    #[test]
    fn fourier_conjugation() {
        let tol = Tolerance::default();
        let id = conjugate_by_fourier(&CMatrix::identity(4), tol).unwrap();
        assert!(id.approx_eq(&CMatrix::identity(4), tol));
        for n in 1..=5 {
            for s in enumerate(n).unwrap() {
                let b = conjugate_by_fourier(&permutation_matrix(&s), tol).unwrap();
                assert!((b[(0, 0)] - ONE).norm() < 1e-12);
                for k in 1..n {
                    assert!(b[(0, k)].norm() < 1e-12 && b[(k, 0)].norm() < 1e-12);
                }
            }
        }
        let bad = CMatrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]);
        assert!(matches!(conjugate_by_fourier(&bad, tol), Err(Error::NotXu { .. })));
    }

    #[test]
    fn random_unitary_examples() {
        let u1 = random_unitary(1, 7);
        assert!((u1[(0, 0)].norm() - 1.0).abs() < 1e-14);
        let u3 = random_unitary(3, 11);
        assert!(u3.is_unitary(Tolerance::abs(1e-10)).unwrap());
        assert_eq!(u3, random_unitary(3, 11));
        assert!(u3.max_abs_diff(&random_unitary(3, 12)) > 1e-3);
        for m in 1..=8 {
            for seed in 0..10 {
                assert!(random_unitary(m, seed).is_unitary(Tolerance::abs(1e-10)).unwrap());
            }
        }
    }

    #[test]
    fn random_unitary_first_moment() {
        // Haar: E[U_00] = 0 and E[|U_00|^2] = 1/m
        let m = 3;
        let samples = 4000;
        let mut mean = ZERO;
        let mut second = 0.0;
        for seed in 0..samples {
            let u = random_unitary(m, seed);
            mean += u[(0, 0)];
            second += u[(0, 0)].norm_sqr();
        }
        mean /= samples as f64;
        second /= samples as f64;
        assert!(mean.norm() < 0.05, "{mean}");
        assert!((second - 1.0 / m as f64).abs() < 0.02, "{second}");
    }

    #[test]
    fn shape_errors() {
        assert!(CMatrix::from_vec(2, 2, vec![ONE; 3]).is_err());
        assert!(CMatrix::zeros(2, 3).try_mul(&CMatrix::zeros(2, 3)).is_err());
        let a = CMatrix::identity(2).direct_sum(&CMatrix::identity(1));
        assert_eq!(a, CMatrix::identity(3));
        assert_eq!(a.block(1, 1, 2, 2), CMatrix::identity(2));
    }
}
