//! Irreducible representations of the symmetric group.
//!
//! The standard irrep `(n-1,1)` is realized as the lower-right block of `F† P_σ F`, the
//! same conjugation that extracts `U^(s)` from an `XU(n)` matrix, so the two live in one
//! basis. Its sign twist realizes `(2,1^(n-2))`. The trivial and sign irreps are
//! scalars and every other shape uses Young's orthogonal form.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{root_of_unity, CMatrix};
use crate::partition::{partitions, Partition};
use crate::perm::{class_representatives, enumerate, factorial, CycleType, Permutation};

/// Largest degree for which [`irrep_table`] is built.
pub const MAX_TABLE_DEGREE: usize = 6;
/// Largest degree for the dense `n! × n!` regular-representation matrix.
pub const MAX_REGULAR_DEGREE: usize = 5;

/// The D^(s) block of `F† P_σ F`.
pub fn standard_rep(sigma: &Permutation) -> Result<CMatrix> {
    let n = sigma.degree();
    if n < 2 {
        return Err(Error::DegreeOutOfRange {
            what: "standard representation",
            n,
            min: 2,
            max: usize::MAX,
        });
    }
    let roots: Vec<Complex64> = (0..n as i64).map(|k| root_of_unity(n, k)).collect();
    let inv_n = 1.0 / n as f64;
    // (F† P F)_{ab} = (1/n) Σ_k ω^{k·b − σ(k)·a}
    Ok(CMatrix::from_fn(n - 1, n - 1, |i, j| {
        let (a, b) = (i + 1, j + 1);
        let s: Complex64 = (0..n)
            .map(|k| roots[(k * b + n * n - sigma.map(k) * a) % n])
            .sum();
        s * inv_n
    }))
}

/// `sign(σ) · D^(s)(σ)`.
pub fn anti_standard_rep(sigma: &Permutation) -> Result<CMatrix> {
    Ok(standard_rep(sigma)?.scale_real(sigma.sign() as f64))
}

/// `χ^(s)(σ) = fix(σ) − 1`, computed without any matrix.
pub fn character_standard(sigma: &Permutation) -> i64 {
    sigma.fixed_points() as i64 - 1
}

/// `Σ_σ χ^(s)(σ)²` in exact integer arithmetic; equals `n!` because the standard
/// representation is irreducible.
pub fn character_sum_check(n: usize) -> Result<u64> {
    if !(2..=crate::perm::MAX_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange {
            what: "character sum check",
            n,
            min: 2,
            max: crate::perm::MAX_DEGREE,
        });
    }
    Ok(enumerate(n)?
        .iter()
        .map(|s| character_standard(s).pow(2) as u64)
        .sum())
}

/// Young's orthogonal form for one shape: the standard tableaux (last-letter order)
/// and the real orthogonal matrices of the adjacent transpositions.
#[derive(Debug, Clone)]
pub struct YoungOrthogonalForm {
    shape: Partition,
    /// `tableaux[t][letter] = (row, col)`.
    tableaux: Vec<Vec<(usize, usize)>>,
    /// `generators[k]` represents the transposition of zero-based letters `k` and `k+1`.
    generators: Vec<CMatrix>,
}

impl YoungOrthogonalForm {
    pub fn new(shape: &Partition) -> Self {
        let tableaux = standard_tableaux(shape);
        let n = shape.size();
        let index: HashMap<&[(usize, usize)], usize> = tableaux
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_slice(), i))
            .collect();
        let dim = tableaux.len();
        let content = |(r, c): (usize, usize)| c as f64 - r as f64;
        let generators = (0..n.saturating_sub(1))
            .map(|k| {
                let mut g = CMatrix::zeros(dim, dim);
                for (t, tab) in tableaux.iter().enumerate() {
                    let axial = content(tab[k + 1]) - content(tab[k]);
                    g[(t, t)] = Complex64::new(1.0 / axial, 0.0);
                    if axial.abs() > 1.0 {
                        let mut swapped = tab.clone();
                        swapped.swap(k, k + 1);
                        let u = index[swapped.as_slice()];
                        g[(u, t)] = Complex64::new((1.0 - 1.0 / (axial * axial)).sqrt(), 0.0);
                    }
                }
                g
            })
            .collect();
        YoungOrthogonalForm {
            shape: shape.clone(),
            tableaux,
            generators,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dimension(&self) -> usize {
        self.tableaux.len()
    }

    /// Standard tableaux in last-letter order, as `(row, col)` per zero-based letter.
    pub fn tableaux(&self) -> &[Vec<(usize, usize)>] {
        &self.tableaux
    }

    pub fn generator(&self, k: usize) -> &CMatrix {
        &self.generators[k]
    }

    pub fn matrix(&self, sigma: &Permutation) -> Result<CMatrix> {
        if sigma.degree() != self.shape.size() {
            return Err(Error::DegreeMismatch {
                left: self.shape.size(),
                right: sigma.degree(),
            });
        }
        let mut acc = CMatrix::identity(self.dimension());
        for k in sigma.adjacent_word() {
            acc = &self.generators[k] * &acc;
        }
        Ok(acc)
    }

    /// Matrices for every permutation in enumeration order.
    ///
    /// Uses `D(σ) = D(σ ∘ s_k) · D(s_k)` at the first descent `k`; `σ ∘ s_k` precedes `σ`
    /// lexicographically, so each step reuses an already computed matrix.
    pub fn all_matrices(&self) -> Result<Vec<CMatrix>> {
        let n = self.shape.size();
        let perms = enumerate(n)?;
        let mut out: Vec<CMatrix> = Vec::with_capacity(perms.len());
        for sigma in &perms {
            let m = match sigma.first_descent() {
                None => CMatrix::identity(self.dimension()),
                Some(k) => {
                    let mut images = sigma.images().to_vec();
                    images.swap(k, k + 1);
                    let prev = Permutation::from_zero_based(images)?.rank();
                    &out[prev] * &self.generators[k]
                }
            };
            out.push(m);
        }
        Ok(out)
    }
}

fn standard_tableaux(shape: &Partition) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        rows: &mut Vec<usize>,
        placed: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if rows.iter().all(|&r| r == 0) {
            let mut t = placed.clone();
            t.reverse();
            out.push(t);
            return;
        }
        for r in 0..rows.len() {
            let len = rows[r];
            let removable = len > 0 && rows.get(r + 1).is_none_or(|&below| below < len);
            if removable {
                rows[r] -= 1;
                placed.push((r, len - 1));
                rec(rows, placed, out);
                placed.pop();
                rows[r] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut shape.parts().to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Matrices of Young's orthogonal form for shape `shape` at `σ`.
pub fn young_orthogonal_rep(shape: &Partition, sigma: &Permutation) -> Result<CMatrix> {
    YoungOrthogonalForm::new(shape).matrix(sigma)
}

/// Basis convention of an irrep realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Realization {
    Scalar,
    FourierStandard,
    SignTwistedStandard,
    YoungOrthogonal,
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realization::Scalar => "scalar",
            Realization::FourierStandard => "fourier-standard",
            Realization::SignTwistedStandard => "sign-twisted-standard",
            Realization::YoungOrthogonal => "young-orthogonal",
        })
    }
}

#[derive(Debug, Clone)]
enum Provider {
    Trivial,
    Sign,
    Standard,
    AntiStandard,
    Young(YoungOrthogonalForm),
}

/// One irreducible representation of `S_n` together with its matrix provider.
#[derive(Debug, Clone)]
pub struct Irrep {
    label: Partition,
    dimension: usize,
    provider: Provider,
}

impl Irrep {
    pub fn label(&self) -> &Partition {
        &self.label
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn degree(&self) -> usize {
        self.label.size()
    }

    pub fn realization(&self) -> Realization {
        match self.provider {
            Provider::Trivial | Provider::Sign => Realization::Scalar,
            Provider::Standard => Realization::FourierStandard,
            Provider::AntiStandard => Realization::SignTwistedStandard,
            Provider::Young(_) => Realization::YoungOrthogonal,
        }
    }

    pub fn matrix(&self, sigma: &Permutation) -> Result<CMatrix> {
        if sigma.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: sigma.degree(),
            });
        }
        match &self.provider {
            Provider::Trivial => Ok(CMatrix::identity(1)),
            Provider::Sign => Ok(CMatrix::identity(1).scale_real(sigma.sign() as f64)),
            Provider::Standard => standard_rep(sigma),
            Provider::AntiStandard => anti_standard_rep(sigma),
            Provider::Young(form) => form.matrix(sigma),
        }
    }

    /// Matrices for every permutation of [`enumerate`] order.
    pub fn all_matrices(&self) -> Result<Vec<CMatrix>> {
        match &self.provider {
            Provider::Young(form) => form.all_matrices(),
            _ => enumerate(self.degree())?
                .iter()
                .map(|s| self.matrix(s))
                .collect(),
        }
    }

    pub fn character(&self, sigma: &Permutation) -> Result<Complex64> {
        Ok(self.matrix(sigma)?.trace())
    }
}

/// All irreps of `S_n`: trivial first, the Fourier-basis standard irrep second, then the
/// remaining shapes in lexicographically descending order.
#[derive(Debug, Clone)]
pub struct IrrepTable {
    n: usize,
    irreps: Vec<Irrep>,
    classes: Vec<(CycleType, Permutation)>,
}

impl IrrepTable {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Irrep> {
        self.irreps.get(index)
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.irreps.iter().map(Irrep::dimension).collect()
    }

    /// Conjugacy classes with a representative each, `(1^n)` first.
    pub fn classes(&self) -> &[(CycleType, Permutation)] {
        &self.classes
    }

    /// Character table: one row per irrep, one column per class.
    pub fn character_table(&self) -> Result<CMatrix> {
        let mut t = CMatrix::zeros(self.irreps.len(), self.classes.len());
        for (i, irrep) in self.irreps.iter().enumerate() {
            for (j, (_, rep)) in self.classes.iter().enumerate() {
                t[(i, j)] = irrep.character(rep)?;
            }
        }
        Ok(t)
    }
}

fn characters_match(
    classes: &[(CycleType, Permutation)],
    form: &YoungOrthogonalForm,
    expected: impl Fn(&Permutation) -> i64,
) -> Result<bool> {
    for (_, rep) in classes {
        let chi = form.matrix(rep)?.trace();
        if (chi - Complex64::new(expected(rep) as f64, 0.0)).norm() > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn irrep_table(n: usize) -> Result<IrrepTable> {
    if !(2..=MAX_TABLE_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange {
            what: "irrep table",
            n,
            min: 2,
            max: MAX_TABLE_DEGREE,
        });
    }
    let classes = class_representatives(n);
    let standard = Partition::standard(n);
    let anti = Partition::anti_standard(n);

    // Confirm by characters that (n-1,1) and (2,1^(n-2)) are the shapes being replaced.
    let std_form = YoungOrthogonalForm::new(&standard);
    if !characters_match(&classes, &std_form, character_standard)? {
        return Err(Error::IrrepIdentification(format!(
            "shape {standard} does not carry the character fix(σ) − 1"
        )));
    }
    if n >= 4 {
        let anti_form = YoungOrthogonalForm::new(&anti);
        let twisted = |s: &Permutation| s.sign() as i64 * character_standard(s);
        if !characters_match(&classes, &anti_form, twisted)? {
            return Err(Error::IrrepIdentification(format!(
                "shape {anti} does not carry the character sign(σ)·(fix(σ) − 1)"
            )));
        }
    }

    let mut irreps = vec![
        Irrep {
            label: Partition::trivial(n),
            dimension: 1,
            provider: Provider::Trivial,
        },
        Irrep {
            label: standard.clone(),
            dimension: n - 1,
            provider: Provider::Standard,
        },
    ];
    for shape in partitions(n) {
        if shape == Partition::trivial(n) || shape == standard {
            continue;
        }
        let irrep = if shape == Partition::sign(n) {
            Irrep {
                label: shape,
                dimension: 1,
                provider: Provider::Sign,
            }
        } else if shape == anti {
            Irrep {
                label: shape,
                dimension: n - 1,
                provider: Provider::AntiStandard,
            }
        } else {
            let form = YoungOrthogonalForm::new(&shape);
            Irrep {
                label: shape,
                dimension: form.dimension(),
                provider: Provider::Young(form),
            }
        };
        irreps.push(irrep);
    }
    Ok(IrrepTable {
        n,
        irreps,
        classes,
    })
}

/// The rescaled `n! × n!` matrix `√(n_ν/n!)·D^(ν)_ij(σ)`, rows `(ν,i,j)` in table order,
/// columns in [`enumerate`] order. Unitary by Schur orthogonality.
pub fn regular_rep_matrix(n: usize) -> Result<CMatrix> {
    if !(2..=MAX_REGULAR_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange {
            what: "regular representation matrix",
            n,
            min: 2,
            max: MAX_REGULAR_DEGREE,
        });
    }
    let table = irrep_table(n)?;
    let order = factorial(n);
    let mut out = CMatrix::zeros(order, order);
    let mut row = 0;
    for irrep in table.irreps() {
        let d = irrep.dimension();
        let scale = (d as f64 / order as f64).sqrt();
        let mats = irrep.all_matrices()?;
        for i in 0..d {
            for j in 0..d {
                for (col, m) in mats.iter().enumerate() {
                    out[(row, col)] = m[(i, j)] * scale;
                }
                row += 1;
            }
        }
    }
    debug_assert_eq!(row, order);
    Ok(out)
}
