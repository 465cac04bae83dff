//! Immanants, determinants, positivity sweeps and the cubic Hankel
//! inequalities.
//!
//! `Imm_λ M = Σ_π χ^λ(π) Π_i m_{i,π(i)}`. Every immanant of `M` is a
//! combination of the class sums `S_μ = Σ_{π of type μ} Π_i m_{i,π(i)}`, so the
//! permutation sum is done once per matrix and then read off for every `λ`.

use std::sync::Arc;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::csmatrix::{submatrix, CSMatrix, MatrixError, PolyMatrix};
use crate::qpoly::QPoly;
use crate::symchar::{
    character_table, cycle_type_zero_based, degree, CharacterTable, Partition, SymError,
};

/// Largest matrix size accepted by default (`9! = 362880` terms).
pub const DEFAULT_SIZE_CAP: usize = 9;

/// Sweeps enumerate every submatrix while the count stays at or below this.
pub const EXHAUSTIVE_LIMIT: usize = 20_000;

/// Below this size the permutation sum is not worth splitting across threads.
const PARALLEL_MIN_SIZE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImmanantError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix size {size} exceeds the immanant size cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("index error: {0}")]
    Index(String),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The class sums `S_μ` of a square matrix, indexed like the classes of its
/// character table.
#[derive(Debug, Clone)]
pub struct ClassSums {
    table: Arc<CharacterTable>,
    sums: Vec<QPoly>,
}

impl ClassSums {
    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn sum(&self, mu: &Partition) -> Option<&QPoly> {
        self.table.class_index(mu).map(|i| &self.sums[i])
    }

    pub fn immanant(&self, lambda: &Partition) -> Result<QPoly, ImmanantError> {
        let row = self.table.row(lambda).ok_or_else(|| {
            ImmanantError::Shape(format!("{lambda} is not a partition of {}", self.table.n()))
        })?;
        Ok(row
            .iter()
            .zip(&self.sums)
            .map(|(&chi, s)| s.scale(chi))
            .sum())
    }

    /// `(λ, Imm_λ)` for every partition, in character-table order.
    pub fn immanants(&self) -> Vec<(Partition, QPoly)> {
        self.table
            .irreps()
            .iter()
            .zip(self.table.values())
            .map(|(l, row)| {
                (
                    l.clone(),
                    row.iter()
                        .zip(&self.sums)
                        .map(|(&chi, s)| s.scale(chi))
                        .sum(),
                )
            })
            .collect()
    }
}

/// Immanant evaluation with an enforced matrix-size cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImmanantCalculator {
    size_cap: usize,
}

impl Default for ImmanantCalculator {
    fn default() -> Self {
        ImmanantCalculator {
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

impl ImmanantCalculator {
    pub fn new(size_cap: usize) -> Self {
        ImmanantCalculator { size_cap }
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    fn check_size(&self, m: &PolyMatrix) -> Result<usize, ImmanantError> {
        if !m.is_square() {
            return Err(ImmanantError::Shape(format!(
                "immanant of a {}x{} matrix",
                m.nrows(),
                m.ncols()
            )));
        }
        let n = m.nrows();
        if n > self.size_cap {
            return Err(ImmanantError::SizeCapExceeded {
                size: n,
                cap: self.size_cap,
            });
        }
        Ok(n)
    }

    /// Sums the `n!` permutation products once, grouped by cycle type.
    /// Parallel runs split on `π(0)` and add the parts in column order, so
    /// the result never depends on scheduling.
    pub fn class_sums(&self, m: &PolyMatrix) -> Result<ClassSums, ImmanantError> {
        let n = self.check_size(m)?;
        let table = character_table(n)?;
        let sums = if n >= PARALLEL_MIN_SIZE {
            let parts: Vec<Vec<QPoly>> = (0..n)
                .into_par_iter()
                .map(|c| {
                    let mut walk = PermutationWalk::new(m, &table);
                    walk.fix_first(c);
                    walk.sums
                })
                .collect();
            let mut total = vec![QPoly::zero(); table.classes().len()];
            for part in parts {
                for (acc, s) in total.iter_mut().zip(part) {
                    *acc += s;
                }
            }
            total
        } else {
            let mut walk = PermutationWalk::new(m, &table);
            walk.descend(0, &QPoly::one());
            walk.sums
        };
        Ok(ClassSums { table, sums })
    }

    pub fn immanant(&self, m: &PolyMatrix, lambda: &Partition) -> Result<QPoly, ImmanantError> {
        let n = self.check_size(m)?;
        if lambda.n() != n {
            return Err(ImmanantError::Shape(format!(
                "{lambda} is not a partition of {n}"
            )));
        }
        self.class_sums(m)?.immanant(lambda)
    }
}

/// Depth-first walk over permutations, skipping zero entries early.
struct PermutationWalk<'a> {
    m: &'a PolyMatrix,
    table: &'a CharacterTable,
    perm: Vec<usize>,
    used: Vec<bool>,
    sums: Vec<QPoly>,
}

impl<'a> PermutationWalk<'a> {
    fn new(m: &'a PolyMatrix, table: &'a CharacterTable) -> Self {
        let n = m.nrows();
        PermutationWalk {
            m,
            table,
            perm: vec![0; n],
            used: vec![false; n],
            sums: vec![QPoly::zero(); table.classes().len()],
        }
    }

    fn fix_first(&mut self, c: usize) {
        let entry = self.m.get(0, c).clone();
        if entry.is_zero() {
            return;
        }
        self.perm[0] = c;
        self.used[c] = true;
        self.descend(1, &entry);
    }

    fn descend(&mut self, row: usize, prod: &QPoly) {
        let n = self.perm.len();
        if row == n {
            let mu = cycle_type_zero_based(&self.perm).expect("walk builds bijections");
            let idx = self
                .table
                .class_index(&mu)
                .expect("every cycle type is a class");
            self.sums[idx] += prod;
            return;
        }
        for c in 0..n {
            if self.used[c] || self.m.get(row, c).is_zero() {
                continue;
            }
            let next = prod * self.m.get(row, c);
            self.perm[row] = c;
            self.used[c] = true;
            self.descend(row + 1, &next);
            self.used[c] = false;
        }
    }
}

/// `Imm_λ M` with the default size cap.
pub fn immanant(m: &PolyMatrix, lambda: &Partition) -> Result<QPoly, ImmanantError> {
    ImmanantCalculator::default().immanant(m, lambda)
}

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact in `Z[q]`.
pub fn determinant(m: &PolyMatrix) -> Result<QPoly, ImmanantError> {
    if !m.is_square() {
        return Err(ImmanantError::Shape(format!(
            "determinant of a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(QPoly::one());
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = QPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(QPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = cross.div_exact(&prev).expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// One immanant of one square submatrix, with its positivity verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImmanantReport {
    pub lambda: Partition,
    pub value: QPoly,
    pub q_nonnegative: bool,
    /// `Imm_λ M - deg(χ^λ) det M`.
    pub dominance_gap: QPoly,
    pub gap_nonnegative: bool,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub family: String,
}

impl ImmanantReport {
    pub fn passes(&self) -> bool {
        self.q_nonnegative && self.gap_nonnegative
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOptions {
    pub size_cap: usize,
    pub exhaustive_limit: usize,
    pub seed: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            size_cap: DEFAULT_SIZE_CAP,
            exhaustive_limit: EXHAUSTIVE_LIMIT,
            seed: 0,
        }
    }
}

/// All reports of a sweep, plus how the submatrices were chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub family: String,
    pub max_size: usize,
    /// Square submatrices of size `1..=max_size` in the matrix.
    pub submatrices_total: u128,
    pub submatrices_checked: usize,
    /// `Some(seed)` when the submatrices were sampled rather than enumerated.
    pub sampled_with_seed: Option<u64>,
    pub reports: Vec<ImmanantReport>,
}

impl SweepReport {
    pub fn all_nonnegative(&self) -> bool {
        self.reports.iter().all(|r| r.q_nonnegative)
    }

    pub fn all_gaps_nonnegative(&self) -> bool {
        self.reports.iter().all(|r| r.gap_nonnegative)
    }

    pub fn passes(&self) -> bool {
        self.reports.iter().all(ImmanantReport::passes)
    }

    pub fn violations(&self) -> impl Iterator<Item = &ImmanantReport> {
        self.reports.iter().filter(|r| !r.passes())
    }

    /// One row per (submatrix, λ).
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let join = |v: &[usize]| v.iter().map(usize::to_string).join(" ");
        w.write_record([
            "family",
            "rows",
            "cols",
            "lambda",
            "value",
            "q_nonnegative",
            "dominance_gap",
            "gap_nonnegative",
        ])
        .expect("writing to memory");
        for r in &self.reports {
            w.write_record([
                r.family.clone(),
                join(&r.rows),
                join(&r.cols),
                r.lambda.to_string(),
                r.value.to_string(),
                r.q_nonnegative.to_string(),
                r.dominance_gap.to_string(),
                r.gap_nonnegative.to_string(),
            ])
            .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is UTF-8")
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn sorted_sample(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut v = sample(rng, n, k).into_vec();
    v.sort_unstable();
    v
}

/// Row and column index lists of one square submatrix.
type Window = (Vec<usize>, Vec<usize>);

/// The submatrices a sweep visits, and whether they were sampled.
fn sweep_windows(
    nrows: usize,
    ncols: usize,
    max_size: usize,
    opts: &SweepOptions,
) -> (Vec<Window>, bool) {
    let sizes: Vec<usize> = (1..=max_size).collect();
    let total: u128 = sizes
        .iter()
        .map(|&s| binomial(nrows, s) * binomial(ncols, s))
        .sum();
    let mut out = Vec::new();
    if total <= opts.exhaustive_limit as u128 {
        for &s in &sizes {
            for rows in (0..nrows).combinations(s) {
                for cols in (0..ncols).combinations(s) {
                    out.push((rows.clone(), cols));
                }
            }
        }
        return (out, false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let budget = (opts.exhaustive_limit / sizes.len()).max(1);
    for &s in &sizes {
        let count = binomial(nrows, s) * binomial(ncols, s);
        if count <= budget as u128 {
            for rows in (0..nrows).combinations(s) {
                for cols in (0..ncols).combinations(s) {
                    out.push((rows.clone(), cols));
                }
            }
        } else {
            for _ in 0..budget {
                out.push((
                    sorted_sample(&mut rng, nrows, s),
                    sorted_sample(&mut rng, ncols, s),
                ));
            }
        }
    }
    (out, true)
}

/// Every immanant of every square submatrix of size at most `max_size`,
/// with default options.
pub fn positivity_sweep(m: &CSMatrix, max_size: usize) -> Result<SweepReport, ImmanantError> {
    positivity_sweep_with(m, max_size, &SweepOptions::default())
}

/// Like [`positivity_sweep`]; when the submatrix count exceeds
/// `opts.exhaustive_limit`, large sizes are sampled with a seeded generator
/// and the report records the seed.
pub fn positivity_sweep_with(
    m: &CSMatrix,
    max_size: usize,
    opts: &SweepOptions,
) -> Result<SweepReport, ImmanantError> {
    let (nrows, ncols) = (m.entries.nrows(), m.entries.ncols());
    let max_size = max_size.min(nrows).min(ncols);
    if max_size > opts.size_cap {
        return Err(ImmanantError::SizeCapExceeded {
            size: max_size,
            cap: opts.size_cap,
        });
    }
    let calc = ImmanantCalculator::new(opts.size_cap);
    let (windows, sampled) = sweep_windows(nrows, ncols, max_size, opts);
    let per_window: Vec<Vec<ImmanantReport>> = windows
        .par_iter()
        .map(
            |(rows, cols)| -> Result<Vec<ImmanantReport>, ImmanantError> {
                let sub = submatrix(m, rows, cols)?;
                let det = determinant(&sub.entries)?;
                let sums = calc.class_sums(&sub.entries)?;
                Ok(sums
                    .immanants()
                    .into_iter()
                    .map(|(lambda, value)| {
                        let dominance_gap = &value - &det.scale(degree(&lambda));
                        ImmanantReport {
                            q_nonnegative: value.is_q_nonnegative(),
                            gap_nonnegative: dominance_gap.is_q_nonnegative(),
                            lambda,
                            value,
                            dominance_gap,
                            rows: sub.row_indices.clone(),
                            cols: sub.col_indices.clone(),
                            family: sub.family.clone(),
                        }
                    })
                    .collect())
            },
        )
        .collect::<Result<_, _>>()?;
    let submatrices_total = (1..=max_size)
        .map(|s| binomial(nrows, s) * binomial(ncols, s))
        .sum();
    Ok(SweepReport {
        family: m.family.clone(),
        max_size,
        submatrices_total,
        submatrices_checked: windows.len(),
        sampled_with_seed: sampled.then_some(opts.seed),
        reports: per_window.into_iter().flatten().collect(),
    })
}

fn term(a: &[QPoly], idx: usize) -> Result<&QPoly, ImmanantError> {
    a.get(idx).ok_or_else(|| {
        ImmanantError::Index(format!("a_{idx} needed but only {} terms given", a.len()))
    })
}

fn check_increasing(name: &str, t: [usize; 3]) -> Result<(), ImmanantError> {
    if t[0] < t[1] && t[1] < t[2] {
        Ok(())
    } else {
        Err(ImmanantError::Index(format!(
            "{name} = {t:?} is not strictly increasing"
        )))
    }
}

/// `Imm_(2,1) - 2 det` of the Hankel window `(a_{i_r + j_s})`, expanded:
/// twice the transposition terms minus three times the 3-cycle terms.
pub fn six_index_inequality(
    a: &[QPoly],
    i: [usize; 3],
    j: [usize; 3],
) -> Result<QPoly, ImmanantError> {
    check_increasing("i", i)?;
    check_increasing("j", j)?;
    let x = |r: usize, s: usize| term(a, i[r] + j[s]);
    let transpositions = x(0, 1)? * x(1, 0)? * x(2, 2)?
        + x(0, 2)? * x(1, 1)? * x(2, 0)?
        + x(0, 0)? * x(1, 2)? * x(2, 1)?;
    let three_cycles = x(0, 1)? * x(1, 2)? * x(2, 0)? + x(0, 2)? * x(1, 0)? * x(2, 1)?;
    Ok(transpositions.scale(2) - three_cycles.scale(3))
}

/// `a_{2i} a_{j+k}^2 + a_{2j} a_{i+k}^2 + a_{2k} a_{i+j}^2 - 3 a_{i+j} a_{j+k} a_{k+i}`.
pub fn three_index_inequality(
    a: &[QPoly],
    i: usize,
    j: usize,
    k: usize,
) -> Result<QPoly, ImmanantError> {
    check_increasing("(i, j, k)", [i, j, k])?;
    let x = |idx: usize| term(a, idx);
    let squares =
        x(2 * i)? * x(j + k)?.pow(2) + x(2 * j)? * x(i + k)?.pow(2) + x(2 * k)? * x(i + j)?.pow(2);
    let product = x(i + j)? * x(j + k)? * x(k + i)?;
    Ok(squares - product.scale(3))
}

/// The window `(a_{r + c})` for `r` in `rows`, `c` in `cols`.
pub fn hankel_window(
    a: &[QPoly],
    rows: &[usize],
    cols: &[usize],
) -> Result<PolyMatrix, ImmanantError> {
    let data = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|&c| term(a, r + c).cloned())
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() || cols.is_empty() {
        return Ok(PolyMatrix::zeros(rows.len(), cols.len()));
    }
    Ok(PolyMatrix::from_rows(data)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csmatrix::{catalan_like, catalan_stieltjes, hankel};
    use crate::families::{builtin, FamilySpec, BUILTIN_NAMES};
    use crate::symchar::partitions_of;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn matrix(rows: Vec<Vec<QPoly>>) -> PolyMatrix {
        PolyMatrix::from_rows(rows).unwrap()
    }

    /// Permanent by Laplace expansion along the first row.
    fn permanent(m: &PolyMatrix) -> QPoly {
        fn go(m: &PolyMatrix, row: usize, free: &mut Vec<bool>) -> QPoly {
            if row == m.nrows() {
                return QPoly::one();
            }
            let mut total = QPoly::zero();
            for c in 0..m.ncols() {
                if free[c] {
                    free[c] = false;
                    total += m.get(row, c) * &go(m, row + 1, free);
                    free[c] = true;
                }
            }
            total
        }
        go(m, 0, &mut vec![true; m.ncols()])
    }

    /// Determinant by Laplace expansion with alternating signs.
    fn laplace_det(m: &PolyMatrix) -> QPoly {
        let n = m.nrows();
        if n == 0 {
            return QPoly::one();
        }
        (0..n)
            .map(|c| {
                let rest: Vec<usize> = (0..n).filter(|&x| x != c).collect();
                let minor = m.select(&(1..n).collect::<Vec<_>>(), &rest).unwrap();
                let t = m.get(0, c) * &laplace_det(&minor);
                if c % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    }

    /// Direct `S_3` permutation sum with hard-coded `χ^(2,1)` values
    /// `(2, 0, -1)` on identity, transpositions, 3-cycles.
    fn imm21_direct(m: &PolyMatrix) -> QPoly {
        let x = |i: usize, j: usize| m.get(i, j).clone();
        let id = x(0, 0) * x(1, 1) * x(2, 2);
        let three = x(0, 1) * x(1, 2) * x(2, 0) + x(0, 2) * x(1, 0) * x(2, 1);
        id.scale(2) - three
    }

    #[test]
    fn small_examples() {
        let m = matrix(vec![vec![p(&[0, 2, 1])]]);
        assert_eq!(immanant(&m, &part(&[1])).unwrap(), p(&[0, 2, 1]));
        let (a, b, c, d) = (p(&[1, 1]), p(&[2]), p(&[0, 1]), p(&[3, 0, 1]));
        let m = matrix(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]);
        assert_eq!(immanant(&m, &part(&[2])).unwrap(), &a * &d + &b * &c);
        assert_eq!(immanant(&m, &part(&[1, 1])).unwrap(), &a * &d - &b * &c);
    }

    #[test]
    fn narayana_hankel_imm21() {
        let h = hankel(&builtin("narayana").unwrap(), 2).unwrap().entries;
        assert_eq!(immanant(&h, &part(&[2, 1])).unwrap(), imm21_direct(&h));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&PolyMatrix::identity(1)).unwrap(), QPoly::one());
        assert_eq!(determinant(&PolyMatrix::zeros(0, 0)).unwrap(), QPoly::one());
        let nar = builtin("narayana").unwrap();
        for n in 0..6 {
            assert_eq!(
                determinant(&catalan_stieltjes(&nar, n).unwrap().entries).unwrap(),
                QPoly::one()
            );
        }
        let h = hankel(&nar, 1).unwrap().entries;
        assert_eq!(
            h,
            matrix(vec![
                vec![p(&[1]), p(&[0, 1])],
                vec![p(&[0, 1]), p(&[0, 1, 1])]
            ])
        );
        assert_eq!(determinant(&h).unwrap(), QPoly::q());
        // Needs a row swap.
        let m = matrix(vec![
            vec![p(&[0]), p(&[1]), p(&[2])],
            vec![p(&[1]), p(&[0]), p(&[1])],
            vec![p(&[0, 1]), p(&[1]), p(&[0])],
        ]);
        assert_eq!(determinant(&m).unwrap(), laplace_det(&m));
        assert!(matches!(
            determinant(&PolyMatrix::zeros(2, 3)),
            Err(ImmanantError::Shape(_))
        ));
    }

    #[test]
    fn errors() {
        let m = PolyMatrix::identity(3);
        assert!(matches!(
            immanant(&m, &part(&[2, 1, 1])),
            Err(ImmanantError::Shape(_))
        ));
        assert!(matches!(
            immanant(&PolyMatrix::zeros(2, 3), &part(&[2])),
            Err(ImmanantError::Shape(_))
        ));
        let calc = ImmanantCalculator::new(2);
        assert_eq!(
            calc.immanant(&m, &part(&[3])),
            Err(ImmanantError::SizeCapExceeded { size: 3, cap: 2 })
        );
        assert_eq!(ImmanantCalculator::default().size_cap(), 9);
    }

    #[test]
    fn identity_matrix_immanant_is_degree() {
        for n in 1..=6 {
            let sums = ImmanantCalculator::default()
                .class_sums(&PolyMatrix::identity(n))
                .unwrap();
            for (lambda, value) in sums.immanants() {
                assert_eq!(value, QPoly::constant(degree(&lambda)));
            }
        }
    }

    #[test]
    fn parallel_path_agrees_with_laplace() {
        let f = builtin("schroder").unwrap();
        let h = hankel(&f, 6).unwrap().entries;
        let sums = ImmanantCalculator::default().class_sums(&h).unwrap();
        assert_eq!(
            sums.immanant(&Partition::column(7)).unwrap(),
            laplace_det(&h)
        );
        assert_eq!(sums.immanant(&Partition::row(7)).unwrap(), permanent(&h));
        assert_eq!(determinant(&h).unwrap(), laplace_det(&h));
    }

    #[test]
    fn sweep_builtin_families() {
        for name in BUILTIN_NAMES {
            let f = builtin(name).unwrap();
            let report = positivity_sweep(&catalan_stieltjes(&f, 4).unwrap(), 3).unwrap();
            assert!(report.passes(), "{name}");
            assert_eq!(report.sampled_with_seed, None);
            assert_eq!(report.submatrices_total, 25 + 100 + 100);
            assert_eq!(report.submatrices_checked, 225);
            let report = positivity_sweep(&hankel(&f, 3).unwrap(), 3).unwrap();
            assert!(report.passes(), "{name}");
        }
    }

    #[test]
    fn sweep_size_one_matches_entries() {
        let m = catalan_stieltjes(&negative_control(), 3).unwrap();
        let report = positivity_sweep(&m, 1).unwrap();
        assert_eq!(report.reports.len(), 16);
        for r in &report.reports {
            assert_eq!(
                r.q_nonnegative,
                m.get(r.rows[0], r.cols[0]).is_q_nonnegative()
            );
        }
    }

    /// `r_k = 1`, `s_k = 0`, `t_k = 1`: every one of the five conditions fails.
    fn negative_control() -> FamilySpec {
        crate::families::load_family(
            r#"{"name": "negative-control",
                "r": {"tail": {"linear": [], "constant": [1]}},
                "s": {"tail": {"linear": [], "constant": []}},
                "t": {"tail": {"linear": [], "constant": [1]}}}"#,
        )
        .unwrap()
    }

    #[test]
    fn sweep_detects_negative_control() {
        let m = catalan_stieltjes(&negative_control(), 2).unwrap();
        let report = positivity_sweep(&m, 2).unwrap();
        assert!(!report.passes());
        let bad = report
            .violations()
            .find(|r| r.rows == [1, 2] && r.cols == [0, 1] && r.lambda == part(&[1, 1]))
            .expect("the minor [[0,1],[1,0]] is reported");
        assert_eq!(bad.value, p(&[-1]));
    }

    #[test]
    fn sweep_sampling_is_seeded() {
        let f = builtin("narayana").unwrap();
        let m = catalan_stieltjes(&f, 6).unwrap();
        let opts = SweepOptions {
            exhaustive_limit: 200,
            seed: 7,
            ..SweepOptions::default()
        };
        let a = positivity_sweep_with(&m, 3, &opts).unwrap();
        let b = positivity_sweep_with(&m, 3, &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sampled_with_seed, Some(7));
        assert!(a.submatrices_checked < a.submatrices_total as usize);
        assert!(a.passes());
        assert!(matches!(
            positivity_sweep_with(
                &m,
                5,
                &SweepOptions {
                    size_cap: 4,
                    ..opts
                }
            ),
            Err(ImmanantError::SizeCapExceeded { size: 5, cap: 4 })
        ));
    }

    #[test]
    fn sweep_csv_and_json() {
        let f = builtin("narayana").unwrap();
        let report = positivity_sweep(&catalan_stieltjes(&f, 1).unwrap(), 1).unwrap();
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("family,rows,cols,lambda,value,q_nonnegative,dominance_gap,gap_nonnegative")
        );
        assert_eq!(lines.next(), Some("narayana,0,0,(1),1,true,0,true"));
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["reports"][2]["value"], serde_json::json!([0, 1]));
        assert_eq!(json["reports"][2]["lambda"], serde_json::json!([1]));
    }

    #[test]
    fn inequality_examples() {
        let ones = vec![QPoly::one(); 8];
        assert!(three_index_inequality(&ones, 0, 1, 2).unwrap().is_zero());
        let e = catalan_like(&builtin("eulerian").unwrap(), 4).unwrap();
        assert!(six_index_inequality(&e, [0, 1, 2], [0, 1, 2])
            .unwrap()
            .is_q_nonnegative());
        let n = catalan_like(&builtin("narayana").unwrap(), 4).unwrap();
        let v = three_index_inequality(&n, 0, 1, 2).unwrap();
        assert!(v.is_q_nonnegative());
        // a = (1, q, q+q^2, q+3q^2+q^3, q+6q^2+6q^3+q^4), expanded by hand:
        // a0 a3^2 + a2 a2^2 + a4 a1^2 - 3 a1 a3 a2.
        let a = |i: usize| n[i].clone();
        let expected =
            a(0) * a(3).pow(2) + a(2).pow(3) + a(4) * a(1).pow(2) - (a(1) * a(3) * a(2)).scale(3);
        assert_eq!(v, expected);
        assert!(matches!(
            three_index_inequality(&n, 0, 1, 3),
            Err(ImmanantError::Index(_))
        ));
        assert!(matches!(
            three_index_inequality(&n, 1, 1, 2),
            Err(ImmanantError::Index(_))
        ));
        assert!(matches!(
            six_index_inequality(&n, [0, 2, 1], [0, 1, 2]),
            Err(ImmanantError::Index(_))
        ));
    }

    #[test]
    fn six_index_inequality_is_hankel_immanant_gap() {
        for name in BUILTIN_NAMES {
            let a = catalan_like(&builtin(name).unwrap(), 10).unwrap();
            for i in (0..=5).combinations(3) {
                for j in (0..=5).combinations(3) {
                    let w = hankel_window(&a, &i, &j).unwrap();
                    let gap =
                        immanant(&w, &part(&[2, 1])).unwrap() - determinant(&w).unwrap().scale(2);
                    let (it, jt) = ([i[0], i[1], i[2]], [j[0], j[1], j[2]]);
                    assert_eq!(six_index_inequality(&a, it, jt).unwrap(), gap);
                    assert_eq!(gap, imm21_direct(&w) - laplace_det(&w).scale(2));
                }
                let it = [i[0], i[1], i[2]];
                // Setting j = i doubles every term of the three-index form.
                assert_eq!(
                    six_index_inequality(&a, it, it).unwrap(),
                    three_index_inequality(&a, i[0], i[1], i[2])
                        .unwrap()
                        .scale(2)
                );
            }
        }
    }

    fn small_poly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec(-3i64..=3, 0..3).prop_map(|c| QPoly::from_i64s(&c))
    }

    fn square(max: usize) -> impl Strategy<Value = PolyMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(small_poly(), n), n)
                .prop_map(|rows| PolyMatrix::from_rows(rows).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn sign_immanant_is_determinant(m in square(5)) {
            let n = m.nrows();
            let det = determinant(&m).unwrap();
            prop_assert_eq!(immanant(&m, &Partition::column(n)).unwrap(), det.clone());
            prop_assert_eq!(det, laplace_det(&m));
        }

        #[test]
        fn trivial_immanant_is_permanent(m in square(5)) {
            prop_assert_eq!(immanant(&m, &Partition::row(m.nrows())).unwrap(), permanent(&m));
        }

        #[test]
        fn degree_weighted_sum_is_diagonal(m in square(5)) {
            let n = m.nrows();
            let sums = ImmanantCalculator::default().class_sums(&m).unwrap();
            let total: QPoly = sums.immanants().iter().map(|(l, v)| v.scale(degree(l))).sum();
            let factorial: i64 = (1..=n as i64).product();
            let diag: QPoly = (0..n).map(|i| m.get(i, i)).product();
            prop_assert_eq!(total, diag.scale(factorial));
            prop_assert_eq!(sums.immanants().len(), partitions_of(n).unwrap().len());
        }

        #[test]
        fn transpose_preserves_immanants(m in square(4)) {
            let a = ImmanantCalculator::default().class_sums(&m).unwrap().immanants();
            let b = ImmanantCalculator::default().class_sums(&m.transpose()).unwrap().immanants();
            prop_assert_eq!(a, b);
        }
    }
}
