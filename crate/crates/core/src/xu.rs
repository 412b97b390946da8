//! The group `XU(n)` of unitary matrices with unit line sums, its isomorphism with
//! `U(n−1)`, and the classification of a matrix as unitary and/or doubly stochastic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{fourier_matrix, random_unitary, CMatrix, Tolerance};
use crate::perm::Permutation;

/// A matrix certified to lie in `XU(n)` at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct XUMatrix {
    matrix: CMatrix,
    tol: Tolerance,
}

impl XUMatrix {
    pub fn new(matrix: CMatrix, tol: Tolerance) -> Result<Self> {
        matrix.require_xu(tol)?;
        Ok(XUMatrix { matrix, tol })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn degree(&self) -> usize {
        self.matrix.rows()
    }

    /// Group product; trusts both certificates.
    pub fn compose(&self, other: &XUMatrix) -> Result<XUMatrix> {
        Ok(XUMatrix {
            matrix: self.matrix.try_mul(&other.matrix)?,
            tol: Tolerance::abs(self.tol.eps().max(other.tol.eps())),
        })
    }

    /// Group inverse, the conjugate transpose.
    pub fn inverse(&self) -> XUMatrix {
        XUMatrix {
            matrix: self.matrix.adjoint(),
            tol: self.tol,
        }
    }

    /// The `U(n−1)` block of `F† X F`.
    pub fn to_unitary(&self) -> CMatrix {
        let n = self.degree();
        let f = fourier_matrix(n);
        (&(&f.adjoint() * &self.matrix) * &f).block(1, 1, n - 1, n - 1)
    }
}

impl AsRef<CMatrix> for XUMatrix {
    fn as_ref(&self) -> &CMatrix {
        &self.matrix
    }
}

/// `F_n (1 ⊕ U) F_n†` for an `(n−1)×(n−1)` unitary `U`.
pub fn embed_unitary(u: &CMatrix, tol: Tolerance) -> Result<XUMatrix> {
    let residual = u.unitarity_residual()?;
    if !tol.accepts(residual) {
        return Err(Error::NotUnitary {
            residual,
            tol: tol.eps(),
        });
    }
    let n = u.rows() + 1;
    let f = fourier_matrix(n);
    let x = &(&f * &CMatrix::identity(1).direct_sum(u)) * &f.adjoint();
    XUMatrix::new(x, tol)
}

/// Haar-random element of `XU(n)`: [`embed_unitary`] of a Haar-random `U(n−1)` element.
pub fn random_xu(n: usize, seed: u64) -> XUMatrix {
    assert!(n >= 1, "random_xu needs n >= 1");
    let tol = Tolerance::default();
    if n == 1 {
        return XUMatrix {
            matrix: CMatrix::identity(1),
            tol,
        };
    }
    embed_unitary(&random_unitary(n - 1, seed), tol).expect("Haar sample embeds into XU(n)")
}

/// The permutation `σ` with `A ≈ P_σ`: every entry within `tol` of 0 or 1 and exactly one
/// near-1 entry per row and column.
pub fn is_permutation_matrix(a: &CMatrix, tol: Tolerance) -> Result<Option<Permutation>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let one = num_complex::Complex64::new(1.0, 0.0);
    let mut images = vec![usize::MAX; n];
    for col in 0..n {
        for row in 0..n {
            let z = a[(row, col)];
            if tol.accepts((z - one).norm()) {
                if images[col] != usize::MAX {
                    return Ok(None);
                }
                images[col] = row;
            } else if !tol.accepts(z.norm()) {
                return Ok(None);
            }
        }
        if images[col] == usize::MAX {
            return Ok(None);
        }
    }
    // a repeated row index means some row has two ones
    Ok(Permutation::from_zero_based(images).ok())
}

/// Four-way membership of a square matrix in `XU(n)` and `DS(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    XuOnly,
    DsOnly,
    Both,
    Neither,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::XuOnly => "XU-only",
            Classification::DsOnly => "DS-only",
            Classification::Both => "both",
            Classification::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub class: Classification,
    /// Recovered permutation when the matrix is a permutation matrix.
    pub permutation: Option<Permutation>,
}

impl Verdict {
    /// Unitary and doubly stochastic implies permutation matrix.
    pub fn is_consistent(&self) -> bool {
        self.class != Classification::Both || self.permutation.is_some()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.class)?;
        if let Some(p) = &self.permutation {
            write!(f, " permutation={p} cycles={}", p.cycle_string())?;
        }
        Ok(())
    }
}

/// Classifies `a` and attempts permutation recovery.
pub fn classify(a: &CMatrix, tol: Tolerance) -> Result<Verdict> {
    let xu = a.is_xu(tol)?;
    let ds = a.is_doubly_stochastic(tol)?;
    let class = match (xu, ds) {
        (true, true) => Classification::Both,
        (true, false) => Classification::XuOnly,
        (false, true) => Classification::DsOnly,
        (false, false) => Classification::Neither,
    };
    Ok(Verdict {
        class,
        permutation: is_permutation_matrix(a, tol)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irreps::standard_rep;
    use crate::matrix::{conjugate_by_fourier, permutation_matrix};
    use crate::perm::enumerate;
    use num_complex::Complex64;

    #[test]
    fn embed_examples() {
        let tol = Tolerance::default();
        for n in 2..=6 {
            let x = embed_unitary(&CMatrix::identity(n - 1), tol).unwrap();
            assert!(x.matrix().approx_eq(&CMatrix::identity(n), Tolerance::abs(1e-14)));
        }
        let u = random_unitary(3, 4);
        let x = embed_unitary(&u, tol).unwrap();
        assert_eq!(x.degree(), 4);
        let back = conjugate_by_fourier(x.matrix(), tol).unwrap().block(1, 1, 3, 3);
        assert!(back.max_abs_diff(&u) < 1e-10);
        assert!(x.to_unitary().max_abs_diff(&u) < 1e-10);
        let bad = CMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 1.0]]);
        assert!(matches!(embed_unitary(&bad, tol), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn embed_standard_rep_gives_permutation_matrix() {
        for n in 2..=5 {
            for s in enumerate(n).unwrap() {
                let x = embed_unitary(&standard_rep(&s).unwrap(), Tolerance::default()).unwrap();
                assert!(x.matrix().max_abs_diff(&permutation_matrix(&s)) < 1e-10);
            }
        }
    }

    #[test]
    fn random_xu_examples() {
        assert_eq!(random_xu(1, 3).matrix(), &CMatrix::identity(1));
        let x = random_xu(4, 9);
        assert!(x.matrix().is_xu(Tolerance::abs(1e-10)).unwrap());
        assert_eq!(&x, &random_xu(4, 9));
        assert!(x.matrix().max_abs_diff(random_xu(4, 10).matrix()) > 1e-3);
    }

    #[test]
    fn group_closure() {
        let tol = Tolerance::abs(1e-9);
        for n in 2..=6 {
            for seed in 0..20 {
                let a = random_xu(n, seed);
                let b = random_xu(n, seed + 1000);
                assert!(a.compose(&b).unwrap().matrix().is_xu(tol).unwrap());
                assert!(a.inverse().matrix().is_xu(tol).unwrap());
            }
        }
    }

    #[test]
    fn permutation_recovery() {
        let tol = Tolerance::default();
        let id = is_permutation_matrix(&CMatrix::identity(3), tol).unwrap();
        assert_eq!(id, Some(Permutation::identity(3)));
        let s = Permutation::new(&[3, 1, 4, 2]).unwrap();
        let noisy = &permutation_matrix(&s) + &CMatrix::from_fn(4, 4, |i, j| Complex64::new(1e-12 * (i + j) as f64, -1e-12));
        assert_eq!(is_permutation_matrix(&noisy, tol).unwrap(), Some(s));
        let x = crate::golden::phased_fourier4();
        assert_eq!(is_permutation_matrix(&x, tol).unwrap(), None);
        let two_ones = CMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 0.0]]);
        assert_eq!(is_permutation_matrix(&two_ones, tol).unwrap(), None);
        let same_row = CMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 0.0]]).transpose();
        assert_eq!(is_permutation_matrix(&same_row, tol).unwrap(), None);
        assert!(is_permutation_matrix(&CMatrix::zeros(2, 3), tol).is_err());
    }

    #[test]
    fn classification_examples() {
        let tol = Tolerance::default();
        for s in enumerate(4).unwrap() {
            let v = classify(&permutation_matrix(&s), tol).unwrap();
            assert_eq!(v.class, Classification::Both);
            assert_eq!(v.permutation, Some(s));
        }
        let v = classify(random_xu(4, 1).matrix(), tol).unwrap();
        assert_eq!(v.class, Classification::XuOnly);
        assert!(v.permutation.is_none());
        let uniform = CMatrix::from_fn(4, 4, |_, _| Complex64::new(0.25, 0.0));
        let v = classify(&uniform, tol).unwrap();
        assert_eq!(v.class, Classification::DsOnly);
        let v = classify(&CMatrix::zeros(3, 3), tol).unwrap();
        assert_eq!(v.class, Classification::Neither);
        assert!(v.is_consistent());
    }
}
