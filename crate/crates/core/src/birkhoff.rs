//! Birkhoff weights for `XU(n)` matrices.
//!
//! Every `X ∈ XU(n)` is written as `X = Σ_σ c_σ P_σ` with `Σ c_σ = 1` and
//! `Σ |c_σ|² = 1`. The coefficients come from the trace formula
//!
//! ```text
//! c_σ = (1/n!) Σ_ν n_ν Tr(D^(ν)(σ)† U^(ν))
//! ```
//!
//! where `U^(0) = 1` and `U^(1) = U^(s)` are read off `F† X F = 1 ⊕ U^(s)` and every other
//! `U^(ν)` is a free unitary. The strategies below fix that freedom in different ways;
//! the last three need only the standard irrep.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::irreps::{character_standard, irrep_table, standard_rep, MAX_REGULAR_DEGREE, MAX_TABLE_DEGREE};
use crate::matrix::{conjugate_by_fourier, CMatrix, Tolerance};
use crate::perm::{enumerate, factorial, Permutation, MAX_DEGREE};

/// How the free unitaries `U^(ν)`, `ν ≥ 2`, are chosen.
#[derive(Debug, Clone)]
pub enum StrategyChoice {
    /// Explicit unitaries keyed by irrep index in [`irrep_table`] order; every index
    /// `2..table.len()` must be present.
    General(BTreeMap<usize, CMatrix>),
    /// `U^(ν) = D^(ν)(τ)` for all `ν ≥ 2`.
    CanonicalTau(Permutation),
    /// `U^(s) = U^(a) = U`, all others identity; odd weights vanish. Needs `n ≥ 4`.
    EvenOnly,
    /// `U^(s) = U`, `U^(a) = −U`, all others identity. Needs `n ≥ 4`.
    EvenOddSplit,
}

impl StrategyChoice {
    pub fn kind(&self) -> Strategy {
        match self {
            StrategyChoice::General(_) => Strategy::General,
            StrategyChoice::CanonicalTau(t) => Strategy::CanonicalTau(t.clone()),
            StrategyChoice::EvenOnly => Strategy::EvenOnly,
            StrategyChoice::EvenOddSplit => Strategy::EvenOddSplit,
        }
    }
}

/// Strategy label recorded alongside a set of weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    General,
    CanonicalTau(Permutation),
    EvenOnly,
    EvenOddSplit,
}

impl Strategy {
    /// Kebab-case name used by the CLI and the weight file.
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::General => "general",
            Strategy::CanonicalTau(_) => "canonical-tau",
            Strategy::EvenOnly => "even-only",
            Strategy::EvenOddSplit => "even-odd-split",
        }
    }

    pub fn tau(&self) -> Option<&Permutation> {
        match self {
            Strategy::CanonicalTau(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::CanonicalTau(t) => write!(f, "canonical-tau(tau={t})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Complex weights over all of `S_n`, stored densely in [`enumerate`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct BirkhoffWeights {
    n: usize,
    weights: Vec<Complex64>,
    strategy: Strategy,
    residual: Option<f64>,
}

impl BirkhoffWeights {
    /// Wraps a dense weight vector; `weights.len()` must be `n!`.
    pub fn new(n: usize, weights: Vec<Complex64>, strategy: Strategy) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange {
                what: "weights",
                n,
                min: 1,
                max: MAX_DEGREE,
            });
        }
        if weights.len() != factorial(n) {
            return Err(Error::Shape {
                expected: format!("{} weights", factorial(n)),
                got: format!("{}", weights.len()),
            });
        }
        Ok(BirkhoffWeights {
            n,
            weights,
            strategy,
            residual: None,
        })
    }

    /// A single unit weight on `sigma`.
    pub fn delta(sigma: &Permutation) -> Self {
        let n = sigma.degree();
        let mut weights = vec![Complex64::new(0.0, 0.0); factorial(n)];
        weights[sigma.rank()] = Complex64::new(1.0, 0.0);
        BirkhoffWeights {
            n,
            weights,
            strategy: Strategy::CanonicalTau(sigma.clone()),
            residual: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Weights in enumeration order.
    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn weights_mut(&mut self) -> &mut [Complex64] {
        self.residual = None;
        &mut self.weights
    }

    pub fn get(&self, sigma: &Permutation) -> Option<Complex64> {
        (sigma.degree() == self.n).then(|| self.weights[sigma.rank()])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Permutation, Complex64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(|(r, &c)| (Permutation::unrank(self.n, r).expect("rank in range"), c))
    }

    pub fn strategy(&self) -> &Strategy {
        &self.strategy
    }

    /// `‖X − Σ c_σ P_σ‖_max` against the matrix that was decomposed, when known.
    pub fn residual(&self) -> Option<f64> {
        self.residual
    }

    /// `Σ_σ c_σ`, summed in enumeration order.
    pub fn sum(&self) -> Complex64 {
        self.weights.iter().sum()
    }

    /// `Σ_σ |c_σ|²`.
    pub fn squared_modulus_sum(&self) -> f64 {
        self.weights.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Number of weights with modulus above `eps`.
    pub fn support_size(&self, eps: f64) -> usize {
        self.weights.iter().filter(|c| c.norm() > eps).count()
    }
}

/// Decomposes `x` with any strategy.
pub fn decompose(x: &CMatrix, choice: &StrategyChoice, tol: Tolerance) -> Result<BirkhoffWeights> {
    match choice {
        StrategyChoice::General(_) | StrategyChoice::CanonicalTau(_) => decompose_general(x, choice, tol),
        StrategyChoice::EvenOnly => decompose_even_only(x, tol),
        StrategyChoice::EvenOddSplit => decompose_even_odd_split(x, tol),
    }
}

/// Checks membership and returns `(n, U^(s))`.
fn prepare(x: &CMatrix, tol: Tolerance, max_n: usize, what: &'static str) -> Result<(usize, CMatrix)> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let n = x.rows();
    if !(1..=max_n).contains(&n) {
        return Err(Error::DegreeOutOfRange {
            what,
            n,
            min: 1,
            max: max_n,
        });
    }
    let block = conjugate_by_fourier(x, tol)?;
    Ok((n, block.block(1, 1, n - 1, n - 1)))
}

fn finish(x: &CMatrix, n: usize, weights: Vec<Complex64>, strategy: Strategy) -> BirkhoffWeights {
    let mut w = BirkhoffWeights {
        n,
        weights,
        strategy,
        residual: None,
    };
    w.residual = Some(reconstruct(&w).max_abs_diff(x));
    w
}

/// `Tr(A B)` for square matrices of equal size.
fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let d = a.rows();
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for k in 0..d {
            s += a[(i, k)] * b[(k, i)];
        }
    }
    s
}

/// `Tr(A† B)`.
fn trace_adjoint_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| x.conj() * y)
        .sum()
}

/// Weights from the standard irrep only: `weight(σ, Tr(D^(s)(σ⁻¹) U^(s)))`.
fn standard_only<F>(n: usize, u_s: &CMatrix, weight: F) -> Result<Vec<Complex64>>
where
    F: Fn(&Permutation, Complex64) -> Complex64 + Sync,
{
    let perms = enumerate(n)?;
    perms
        .par_iter()
        .map(|sigma| {
            let d_inv = standard_rep(&sigma.inverse())?;
            Ok(weight(sigma, trace_of_product(&d_inv, u_s)))
        })
        .collect()
}

fn trivial_degree(x: &CMatrix, strategy: Strategy) -> BirkhoffWeights {
    finish(x, 1, vec![Complex64::new(1.0, 0.0)], strategy)
}

/// Decomposition with the `General` or `CanonicalTau` choice.
///
/// `CanonicalTau(τ)` uses the closed form
/// `c_σ = δ_στ − ((n−1)/n!) χ^(s)(σ⁻¹τ) + ((n−1)/n!) Tr(D^(s)(σ⁻¹) U^(s))`
/// and runs up to `n = 8`; `General` evaluates every irrep and is limited to `n ≤ 6`.
pub fn decompose_general(x: &CMatrix, choice: &StrategyChoice, tol: Tolerance) -> Result<BirkhoffWeights> {
    match choice {
        StrategyChoice::CanonicalTau(tau) => {
            let (n, u_s) = prepare(x, tol, MAX_DEGREE, "canonical-tau decomposition")?;
            if tau.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: tau.degree(),
                });
            }
            if n == 1 {
                return Ok(trivial_degree(x, choice.kind()));
            }
            let scale = (n - 1) as f64 / factorial(n) as f64;
            let weights = standard_only(n, &u_s, |sigma, tr| {
                let delta = if sigma == tau { 1.0 } else { 0.0 };
                let chi = character_standard(&sigma.inverse().compose(tau).expect("same degree"));
                Complex64::new(delta - scale * chi as f64, 0.0) + tr * scale
            })?;
            Ok(finish(x, n, weights, choice.kind()))
        }
        StrategyChoice::General(unitaries) => {
            let (n, u_s) = prepare(x, tol, MAX_TABLE_DEGREE, "general decomposition")?;
            if n == 1 {
                if let Some(&index) = unitaries.keys().next() {
                    return Err(Error::BadIrrepUnitary {
                        index,
                        reason: "S_1 has no free irreps".into(),
                    });
                }
                return Ok(trivial_degree(x, choice.kind()));
            }
            let table = irrep_table(n)?;
            for &index in unitaries.keys() {
                if index < 2 || index >= table.len() {
                    return Err(Error::BadIrrepUnitary {
                        index,
                        reason: format!("free irreps of S_{n} are indexed 2..{}", table.len()),
                    });
                }
            }
            let mut blocks = vec![CMatrix::identity(1), u_s];
            for (index, irrep) in table.irreps().iter().enumerate().skip(2) {
                let u = unitaries.get(&index).ok_or_else(|| Error::BadIrrepUnitary {
                    index,
                    reason: format!("missing unitary for irrep {}", irrep.label()),
                })?;
                let d = irrep.dimension();
                if u.rows() != d || u.cols() != d {
                    return Err(Error::BadIrrepUnitary {
                        index,
                        reason: format!("expected {d}x{d}, got {}x{}", u.rows(), u.cols()),
                    });
                }
                let residual = u.unitarity_residual()?;
                if !tol.accepts(residual) {
                    return Err(Error::BadIrrepUnitary {
                        index,
                        reason: format!("not unitary (residual {residual:.3e})"),
                    });
                }
                blocks.push(u.clone());
            }

            let order = factorial(n);
            let mut weights = vec![Complex64::new(0.0, 0.0); order];
            for (irrep, u) in table.irreps().iter().zip(&blocks) {
                let mats = irrep.all_matrices()?;
                let dim = irrep.dimension() as f64;
                let terms: Vec<Complex64> = mats
                    .par_iter()
                    .map(|d| trace_adjoint_product(d, u) * dim)
                    .collect();
                for (w, t) in weights.iter_mut().zip(terms) {
                    *w += t;
                }
            }
            let inv = 1.0 / order as f64;
            weights.iter_mut().for_each(|w| *w *= inv);
            Ok(finish(x, n, weights, choice.kind()))
        }
        StrategyChoice::EvenOnly => decompose_even_only(x, tol),
        StrategyChoice::EvenOddSplit => decompose_even_odd_split(x, tol),
    }
}

fn require_four(n: usize, strategy: &'static str) -> Result<()> {
    if n < 4 {
        return Err(Error::StrategyDegree {
            strategy,
            n,
            min: 4,
        });
    }
    Ok(())
}

/// Weights supported on even permutations only:
/// `c_σ = δ_σ0 − 2((n−1)/n!) χ^(s)(σ) + 2((n−1)/n!) Tr(D^(s)(σ⁻¹) U)` for even `σ`, and
/// exactly zero for odd `σ`.
pub fn decompose_even_only(x: &CMatrix, tol: Tolerance) -> Result<BirkhoffWeights> {
    let (n, u_s) = prepare(x, tol, MAX_DEGREE, "even-only decomposition")?;
    require_four(n, "even-only")?;
    let scale = 2.0 * (n - 1) as f64 / factorial(n) as f64;
    let weights = standard_only(n, &u_s, |sigma, tr| {
        if !sigma.is_even() {
            return Complex64::new(0.0, 0.0);
        }
        let delta = if sigma.is_identity() { 1.0 } else { 0.0 };
        Complex64::new(delta - scale * character_standard(sigma) as f64, 0.0) + tr * scale
    })?;
    Ok(finish(x, n, weights, Strategy::EvenOnly))
}

/// Even weights `δ_σ0 − 2((n−1)/n!) χ^(s)(σ)` independent of `X`; odd weights
/// `2((n−1)/n!) Tr(D^(s)(σ⁻¹) U)` carry all of the dependence on `X`.
pub fn decompose_even_odd_split(x: &CMatrix, tol: Tolerance) -> Result<BirkhoffWeights> {
    let (n, u_s) = prepare(x, tol, MAX_DEGREE, "even-odd-split decomposition")?;
    require_four(n, "even-odd-split")?;
    let scale = 2.0 * (n - 1) as f64 / factorial(n) as f64;
    let weights = standard_only(n, &u_s, |sigma, tr| {
        if sigma.is_even() {
            let delta = if sigma.is_identity() { 1.0 } else { 0.0 };
            Complex64::new(delta - scale * character_standard(sigma) as f64, 0.0)
        } else {
            tr * scale
        }
    })?;
    Ok(finish(x, n, weights, Strategy::EvenOddSplit))
}

/// `Σ_σ c_σ P_σ`, accumulated in enumeration order.
pub fn reconstruct(weights: &BirkhoffWeights) -> CMatrix {
    let n = weights.n;
    let mut out = CMatrix::zeros(n, n);
    for (rank, &c) in weights.weights.iter().enumerate() {
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let sigma = Permutation::unrank(n, rank).expect("rank in range");
        for i in 0..n {
            out[(sigma.map(i), i)] += c;
        }
    }
    out
}

/// The `n! × n!` matrix with entry `c_{g⁻¹h}` at `(g, h)`, both in enumeration order.
pub fn group_circulant(weights: &BirkhoffWeights) -> Result<CMatrix> {
    let n = weights.n;
    if n > MAX_REGULAR_DEGREE {
        return Err(Error::DegreeOutOfRange {
            what: "group circulant",
            n,
            min: 1,
            max: MAX_REGULAR_DEGREE,
        });
    }
    let perms = enumerate(n)?;
    let inverses: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
    let order = perms.len();
    let mut out = CMatrix::zeros(order, order);
    for (g, g_inv) in inverses.iter().enumerate() {
        for (h, h_perm) in perms.iter().enumerate() {
            out[(g, h)] = weights.weights[g_inv.compose(h_perm)?.rank()];
        }
    }
    Ok(out)
}

/// One checked quantity of a [`VerifyReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub residual: f64,
    pub passed: bool,
}

impl Check {
    fn new(residual: f64, tol: Tolerance) -> Self {
        Check {
            residual,
            passed: tol.accepts(residual),
        }
    }
}

/// Outcome of [`verify`]: the weight-sum, squared-modulus and reconstruction contracts,
/// plus circulant unitarity when `n ≤ 5`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub weight_sum: Check,
    pub squared_modulus_sum: Check,
    pub reconstruction: Check,
    pub circulant_unitarity: Option<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.weight_sum.passed
            && self.squared_modulus_sum.passed
            && self.reconstruction.passed
            && self.circulant_unitarity.is_none_or(|c| c.passed)
    }

    /// The four named residuals; circulant unitarity is `null` when not computed.
    pub fn residuals(&self) -> ReportResiduals {
        ReportResiduals {
            weight_sum: self.weight_sum.residual,
            squared_modulus_sum: self.squared_modulus_sum.residual,
            reconstruction: self.reconstruction.residual,
            circulant_unitarity: self.circulant_unitarity.map(|c| c.residual),
        }
    }
}

/// Serialized form of a [`VerifyReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportResiduals {
    pub weight_sum: f64,
    pub squared_modulus_sum: f64,
    pub reconstruction: f64,
    pub circulant_unitarity: Option<f64>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |f: &mut fmt::Formatter<'_>, name: &str, c: &Check| {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "{name:<20} {:.16e} {verdict}", c.residual)
        };
        line(f, "weight_sum", &self.weight_sum)?;
        line(f, "squared_modulus_sum", &self.squared_modulus_sum)?;
        line(f, "reconstruction", &self.reconstruction)?;
        match &self.circulant_unitarity {
            Some(c) => line(f, "circulant_unitarity", c)?,
            None => writeln!(f, "{:<20} skipped", "circulant_unitarity")?,
        }
        write!(f, "{:<20} {:.16e}", "tolerance", self.tolerance)
    }
}

/// Checks the three decomposition contracts of `weights` against `x` and, for
/// `n ≤ 5`, unitarity of the group circulant. Failures are report entries.
pub fn verify(weights: &BirkhoffWeights, x: &CMatrix, tol: Tolerance) -> VerifyReport {
    let sum_res = (weights.sum() - Complex64::new(1.0, 0.0)).norm();
    let sq_res = (weights.squared_modulus_sum() - 1.0).abs();
    let recon_res = reconstruct(weights).max_abs_diff(x);
    let circulant_unitarity = if weights.n <= MAX_REGULAR_DEGREE {
        let residual = group_circulant(weights)
            .and_then(|c| c.unitarity_residual())
            .unwrap_or(f64::INFINITY);
        Some(Check::new(residual, tol))
    } else {
        None
    };
    VerifyReport {
        tolerance: tol.eps(),
        weight_sum: Check::new(sum_res, tol),
        squared_modulus_sum: Check::new(sq_res, tol),
        reconstruction: Check::new(recon_res, tol),
        circulant_unitarity,
    }
}
