//! Known values: the two `n = 4` even-only decompositions and
//! the Fourier-basis standard representation of `S_3`. [`self_test`] reproduces all of it.

use num_complex::Complex64;

use crate::birkhoff::{decompose_even_only, BirkhoffWeights};
use crate::error::Result;
use crate::irreps::standard_rep;
use crate::matrix::{fourier_matrix, permutation_matrix, root_of_unity, CMatrix, Tolerance};
use crate::perm::{class_representatives, enumerate, Permutation};

/// Tolerance for matching a computed weight against a reference value.
pub const MULTISET_TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `½[[1,−i,1,i],[1,1,−1,1],[1,i,1,−i],[−1,1,1,1]]`, a rephased 4×4 Fourier matrix
/// with all entries of modulus ½.
pub fn phased_fourier4() -> CMatrix {
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

/// The 4×4 permutation matrix swapping the last two basis vectors.
pub fn swap_last_two() -> CMatrix {
    permutation_matrix(&Permutation::new(&[1, 2, 4, 3]).expect("valid"))
}

/// Reference even-permutation weights of [`phased_fourier4`], in units of 1/8.
pub const PHASED_FOURIER4_EVEN_WEIGHTS: [(f64, f64); 12] = [
    (4.0, 0.0),
    (-1.0, -1.0),
    (1.0, 1.0),
    (2.0, -2.0),
    (-1.0, -1.0),
    (-1.0, -1.0),
    (1.0, 1.0),
    (-1.0, -1.0),
    (4.0, 0.0),
    (1.0, 1.0),
    (1.0, 1.0),
    (-2.0, 2.0),
];

/// Reference even-permutation weights of [`swap_last_two`], in units of 1/4.
pub const SWAP_LAST_TWO_EVEN_WEIGHTS: [f64; 12] =
    [2.0, 1.0, 1.0, 2.0, -1.0, -1.0, -1.0, 1.0, 0.0, -1.0, 1.0, 0.0];

pub fn phased_fourier4_expected() -> Vec<Complex64> {
    PHASED_FOURIER4_EVEN_WEIGHTS
        .iter()
        .map(|&(re, im)| c(re / 8.0, im / 8.0))
        .collect()
}

pub fn swap_last_two_expected() -> Vec<Complex64> {
    SWAP_LAST_TWO_EVEN_WEIGHTS.iter().map(|&x| c(x / 4.0, 0.0)).collect()
}

/// The six `S_3` standard-representation matrices with their cycle labels.
pub fn s3_standard_reference() -> Vec<(&'static str, Permutation, CMatrix)> {
    let w = root_of_unity(3, 1);
    let w2 = root_of_unity(3, 2);
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    let cyc = |cycles: &[&[usize]]| Permutation::from_cycles(3, cycles).expect("valid cycles");
    vec![
        ("()", Permutation::identity(3), CMatrix::from_rows(&[[l, o], [o, l]])),
        ("(123)", cyc(&[&[1, 2, 3]]), CMatrix::from_rows(&[[w2, o], [o, w]])),
        ("(132)", cyc(&[&[1, 3, 2]]), CMatrix::from_rows(&[[w, o], [o, w2]])),
        ("(12)", cyc(&[&[1, 2]]), CMatrix::from_rows(&[[o, w2], [w, o]])),
        ("(13)", cyc(&[&[1, 3]]), CMatrix::from_rows(&[[o, w], [w2, o]])),
        ("(23)", cyc(&[&[2, 3]]), CMatrix::from_rows(&[[o, l], [l, o]])),
    ]
}

/// The `S_3` permutation matrices with their cycle labels.
pub fn s3_permutation_reference() -> Vec<(&'static str, CMatrix)> {
    vec![
        ("()", CMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])),
        ("(123)", CMatrix::from_real_rows(&[[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])),
        ("(132)", CMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])),
        ("(12)", CMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])),
        ("(13)", CMatrix::from_real_rows(&[[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]])),
        ("(23)", CMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])),
    ]
}

/// Standard character of `S_3` on the classes `(1³), (2,1), (3)`.
pub const S3_STANDARD_CHARACTERS: [i64; 3] = [2, 0, -1];

/// Greedy nearest-neighbour multiset match: each expected value is consumed at most once
/// and every actual value must find an unused expected value within `tol`.
pub fn match_multiset(actual: &[Complex64], expected: &[Complex64], tol: f64) -> bool {
    if actual.len() != expected.len() {
        return false;
    }
    let mut used = vec![false; expected.len()];
    for a in actual {
        let best = expected
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, e)| (i, (a - e).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match best {
            Some((i, d)) if d <= tol => used[i] = true,
            _ => return false,
        }
    }
    true
}

/// Even and odd weights of a decomposition, in enumeration order.
pub fn split_by_parity(w: &BirkhoffWeights) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (s, c) in w.iter() {
        if s.is_even() {
            even.push(c);
        } else {
            odd.push(c);
        }
    }
    (even, odd)
}

/// One line of [`self_test`] output.
#[derive(Debug, Clone)]
pub struct SelfTestItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn even_only_item(name: &'static str, x: &CMatrix, expected: &[Complex64]) -> Result<SelfTestItem> {
    let w = decompose_even_only(x, Tolerance::default())?;
    let (even, odd) = split_by_parity(&w);
    let odd_zero = odd.iter().all(|c| *c == Complex64::new(0.0, 0.0));
    let matched = match_multiset(&even, expected, MULTISET_TOL);
    let sum = (w.sum() - c(1.0, 0.0)).norm();
    let sq = (w.squared_modulus_sum() - 1.0).abs();
    let passed = odd_zero && matched && sum <= 1e-10 && sq <= 1e-10;
    Ok(SelfTestItem {
        name,
        passed,
        detail: format!(
            "odd weights zero: {odd_zero}, multiset match: {matched}, |sum-1| = {sum:.2e}, |sum|c|^2-1| = {sq:.2e}"
        ),
    })
}

/// Reproduces every reference value in this module.
pub fn self_test() -> Result<Vec<SelfTestItem>> {
    let mut items = Vec::new();

    // diag(1,1,1,-1)·X·diag(1,i,1,-i) = F_4
    let i = c(0.0, 1.0);
    let left = CMatrix::from_rows(&[
        [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
    ]);
    let right = CMatrix::from_rows(&[
        [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), i, c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), -i],
    ]);
    let phased = &(&left * &phased_fourier4()) * &right;
    let d = phased.max_abs_diff(&fourier_matrix(4));
    items.push(SelfTestItem {
        name: "phased-fourier4 rephases to F_4",
        passed: d <= 1e-12,
        detail: format!("max deviation {d:.2e}"),
    });

    items.push(even_only_item(
        "even-only weights of phased-fourier4",
        &phased_fourier4(),
        &phased_fourier4_expected(),
    )?);
    items.push(even_only_item(
        "even-only weights of swap-last-two",
        &swap_last_two(),
        &swap_last_two_expected(),
    )?);

    let mut worst: f64 = 0.0;
    for ((label, sigma, expected), (plabel, pmat)) in
        s3_standard_reference().iter().zip(s3_permutation_reference())
    {
        debug_assert_eq!(*label, plabel);
        worst = worst.max(permutation_matrix(sigma).max_abs_diff(&pmat));
        worst = worst.max(standard_rep(sigma)?.max_abs_diff(expected));
    }
    items.push(SelfTestItem {
        name: "S_3 standard representation matrices",
        passed: worst <= 1e-12,
        detail: format!("max deviation {worst:.2e}"),
    });

    let chars: Vec<f64> = class_representatives(3)
        .iter()
        .map(|(_, rep)| standard_rep(rep).map(|m| m.trace().re))
        .collect::<Result<_>>()?;
    let char_ok = chars
        .iter()
        .zip(S3_STANDARD_CHARACTERS)
        .all(|(a, b)| (a - b as f64).abs() <= 1e-12);
    items.push(SelfTestItem {
        name: "S_3 standard character row",
        passed: char_ok,
        detail: format!("characters on (1^3),(2,1),(3): {chars:?}"),
    });

    let all_even = enumerate(4)?.iter().filter(|s| s.is_even()).count() == 12;
    items.push(SelfTestItem {
        name: "S_4 has twelve even permutations",
        passed: all_even,
        detail: String::new(),
    });
    Ok(items)
}
