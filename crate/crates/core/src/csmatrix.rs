//! Dense polynomial matrices and the Catalan-Stieltjes / Hankel constructions.
//!
//! `C_n` is generated row by row from
//! `c_{n,k} = r_{k-1} c_{n-1,k-1} + s_k c_{n-1,k} + t_{k+1} c_{n-1,k+1}` with
//! `c_{0,0} = 1`, and `H_n = (a_{i+j})` with `a_k = c_{k,0}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{FamilyError, FamilySpec};
use crate::qpoly::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("index error: {0}")]
    Index(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Row-major matrix of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<QPoly>,
}

impl PolyMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        PolyMatrix {
            nrows,
            ncols,
            data: vec![QPoly::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, QPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<QPoly>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(MatrixError::Shape("ragged rows".into()));
        }
        Ok(PolyMatrix {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from small integer coefficient arrays, one per entry.
    pub fn from_coeff_rows(rows: &[Vec<Vec<i64>>]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| QPoly::from_i64s(c)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &QPoly {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: QPoly) {
        self.data[i * self.ncols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[QPoly] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[QPoly]> {
        (0..self.nrows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<QPoly>> {
        self.rows().map(<[QPoly]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if self.ncols != rhs.nrows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let mut out = Self::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for j in 0..rhs.ncols {
                let v: QPoly = (0..self.ncols)
                    .map(|k| self.get(i, k) * rhs.get(k, j))
                    .sum();
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// `diag(1, self)`.
    pub fn bordered(&self) -> PolyMatrix {
        let mut out = Self::zeros(self.nrows + 1, self.ncols + 1);
        out.set(0, 0, QPoly::one());
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(i + 1, j + 1, self.get(i, j).clone());
            }
        }
        out
    }

    /// The submatrix on the given (not necessarily sorted) row and column lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix, MatrixError> {
        if let Some(&i) = rows.iter().find(|&&i| i >= self.nrows) {
            return Err(MatrixError::Index(format!(
                "row {i} out of range 0..{}",
                self.nrows
            )));
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.ncols) {
            return Err(MatrixError::Index(format!(
                "column {j} out of range 0..{}",
                self.ncols
            )));
        }
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn entries(&self) -> impl Iterator<Item = &QPoly> {
        self.data.iter()
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(
                self.rows()
                    .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()),
            )
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    CatalanStieltjes,
    Hankel,
    Submatrix,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::CatalanStieltjes => "catalan_stieltjes",
            MatrixKind::Hankel => "hankel",
            MatrixKind::Submatrix => "submatrix",
        })
    }
}

/// A finite window of `C` or `H`, with the absolute indices that select it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSMatrix {
    pub kind: MatrixKind,
    pub family: String,
    pub row_indices: Vec<usize>,
    pub col_indices: Vec<usize>,
    pub entries: PolyMatrix,
}

impl CSMatrix {
    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> &QPoly {
        self.entries.get(i, j)
    }

    /// Renders cells as ascending polynomial strings.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        for row in self.entries.rows() {
            w.write_record(row.iter().map(ToString::to_string))
                .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 output")
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .entries
            .rows()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let ncols = self.entries.ncols();
        let widths: Vec<usize> = (0..ncols)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        let mut out = format!(
            "{} ({}) rows {:?} cols {:?}\n",
            self.kind, self.family, self.row_indices, self.col_indices
        );
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct CSMatrixJson {
    kind: MatrixKind,
    family: String,
    rows: Vec<usize>,
    cols: Vec<usize>,
    entries: Vec<Vec<QPoly>>,
}

impl Serialize for CSMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CSMatrixJson {
            kind: self.kind,
            family: self.family.clone(),
            rows: self.row_indices.clone(),
            cols: self.col_indices.clone(),
            entries: self.entries.to_rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CSMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let j = CSMatrixJson::deserialize(deserializer)?;
        if j.entries.len() != j.rows.len() || j.entries.iter().any(|r| r.len() != j.cols.len()) {
            return Err(serde::de::Error::custom("entries do not match rows/cols"));
        }
        Ok(CSMatrix {
            kind: j.kind,
            family: j.family,
            row_indices: j.rows,
            col_indices: j.cols,
            entries: PolyMatrix::from_rows(j.entries).map_err(serde::de::Error::custom)?,
        })
    }
}

/// Rows `0..=n` of the lower-triangular array, each of length `n + 1`.
fn recurrence_rows(f: &FamilySpec, n: usize) -> Result<PolyMatrix, FamilyError> {
    let mut m = PolyMatrix::zeros(n + 1, n + 1);
    m.set(0, 0, QPoly::one());
    let r: Vec<QPoly> = (0..n as isize).map(|k| f.r(k)).collect::<Result<_, _>>()?;
    let s: Vec<QPoly> = (0..n as isize).map(|k| f.s(k)).collect::<Result<_, _>>()?;
    let t: Vec<QPoly> = (0..n as isize).map(|k| f.t(k)).collect::<Result<_, _>>()?;
    for row in 1..=n {
        for k in 0..=row {
            let mut v = QPoly::zero();
            if k >= 1 {
                v += &r[k - 1] * m.get(row - 1, k - 1);
            }
            if k < row {
                v += &s[k] * m.get(row - 1, k);
            }
            if k + 1 < row {
                v += &t[k + 1] * m.get(row - 1, k + 1);
            }
            m.set(row, k, v);
        }
    }
    Ok(m)
}

/// The leading principal submatrix `C_n = (c_{i,j})_{0<=i,j<=n}`.
pub fn catalan_stieltjes(f: &FamilySpec, n: usize) -> Result<CSMatrix, MatrixError> {
    Ok(CSMatrix {
        kind: MatrixKind::CatalanStieltjes,
        family: f.name().to_string(),
        row_indices: (0..=n).collect(),
        col_indices: (0..=n).collect(),
        entries: recurrence_rows(f, n)?,
    })
}

/// `[a_0, ..., a_{up_to}]` with `a_k = c_{k,0}`.
pub fn catalan_like(f: &FamilySpec, up_to: usize) -> Result<Vec<QPoly>, MatrixError> {
    let m = recurrence_rows(f, up_to)?;
    Ok((0..=up_to).map(|k| m.get(k, 0).clone()).collect())
}

/// The leading principal submatrix `H_n = (a_{i+j})_{0<=i,j<=n}`.
pub fn hankel(f: &FamilySpec, n: usize) -> Result<CSMatrix, MatrixError> {
    let c = catalan_stieltjes(f, 2 * n)?;
    let mut entries = PolyMatrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in 0..=n {
            entries.set(i, j, c.get(i + j, 0).clone());
        }
    }
    Ok(CSMatrix {
        kind: MatrixKind::Hankel,
        family: f.name().to_string(),
        row_indices: (0..=n).collect(),
        col_indices: (0..=n).collect(),
        entries,
    })
}

/// The `(n+2) x (n+2)` factor with `C_{n+1} = diag(1, C_n) L_n`: first row
/// `(1, 0, ...)`, then row `i >= 1` holds `t_{i-1}, s_{i-1}, r_{i-1}` ending
/// on the diagonal.
pub fn build_ln(f: &FamilySpec, n: usize) -> Result<PolyMatrix, MatrixError> {
    let mut l = PolyMatrix::zeros(n + 2, n + 2);
    l.set(0, 0, QPoly::one());
    for i in 1..=n + 1 {
        let k = i as isize - 1;
        l.set(i, i, f.r(k)?);
        l.set(i, i - 1, f.s(k)?);
        if i >= 2 {
            l.set(i, i - 2, f.t(k)?);
        }
    }
    Ok(l)
}

fn check_strictly_increasing(idx: &[usize], what: &str) -> Result<(), MatrixError> {
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MatrixError::Index(format!(
            "{what} indices {idx:?} are not strictly increasing"
        )));
    }
    Ok(())
}

/// Selects rows and columns (positions within `m`), keeping absolute indices.
pub fn submatrix(m: &CSMatrix, rows: &[usize], cols: &[usize]) -> Result<CSMatrix, MatrixError> {
    if rows.len() != cols.len() {
        return Err(MatrixError::Shape(format!(
            "{} rows but {} columns selected",
            rows.len(),
            cols.len()
        )));
    }
    check_strictly_increasing(rows, "row")?;
    check_strictly_increasing(cols, "column")?;
    let entries = m.entries.select(rows, cols)?;
    Ok(CSMatrix {
        kind: MatrixKind::Submatrix,
        family: m.family.clone(),
        row_indices: rows.iter().map(|&i| m.row_indices[i]).collect(),
        col_indices: cols.iter().map(|&j| m.col_indices[j]).collect(),
        entries,
    })
}
