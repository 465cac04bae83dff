//! Integer partitions and irreducible characters of the symmetric group.
//!
//! Characters are evaluated with the Murnaghan-Nakayama rule on beta-sets
//! (first-column hook lengths): removing a border strip of length `r` moves
//! one bead from position `b` to the empty position `b - r`, with sign
//! `(-1)^(beads strictly between)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("n = {0} is outside the supported range 0..={1}")]
    OutOfRange(usize, usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// Largest `n` accepted by [`partitions_of`].
pub const MAX_PARTITION_N: usize = 20;

/// Largest `n` for which [`character_table`] builds and caches a table.
pub const MAX_TABLE_N: usize = 12;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, SymError> {
        if parts.contains(&0) {
            return Err(SymError::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymError::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_multiset(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// `(n)`, the trivial character.
    pub fn row(n: usize) -> Self {
        Self::from_multiset(vec![n])
    }

    /// `(1^n)`, the sign character.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The partitioned integer.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..width)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count())
                .collect(),
        }
    }

    /// Hook lengths of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.n());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push((row - j - 1) + (conj.parts[j] - i - 1) + 1);
            }
        }
        hooks
    }

    /// `(-1)^(n - number of parts)`: the sign of any permutation of this cycle type.
    pub fn sign(&self) -> i64 {
        if (self.n() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Order of the centralizer of a permutation with this cycle type:
    /// `prod_i i^{m_i} m_i!`.
    pub fn centralizer_order(&self) -> u128 {
        let mut z: u128 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mult = self.parts[i..].iter().take_while(|&&p| p == part).count();
            for m in 1..=mult {
                z *= part as u128 * m as u128;
            }
            i += mult;
        }
        z
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `2,1`, `(2,1)`, `2 1` and `()`.
impl FromStr for Partition {
    type Err = SymError;

    fn from_str(s: &str) -> Result<Self, SymError> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| SymError::InvalidPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse lexicographic order, e.g.
/// `(3), (2,1), (1,1,1)`.
pub fn partitions_of(n: usize) -> Result<Vec<Partition>, SymError> {
    if n > MAX_PARTITION_N {
        return Err(SymError::OutOfRange(n, MAX_PARTITION_N));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill_partitions(
    rest: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if rest == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        current.push(part);
        fill_partitions(rest - part, part, current, out);
        current.pop();
    }
}

/// Cycle type of a permutation of `{1..n}` given as its image list.
pub fn cycle_type(images: &[usize]) -> Result<Partition, SymError> {
    let zero_based: Option<Vec<usize>> = images.iter().map(|&x| x.checked_sub(1)).collect();
    zero_based
        .and_then(|p| cycle_type_zero_based(&p))
        .ok_or_else(|| SymError::NotAPermutation(images.to_vec()))
}

/// Cycle type of a permutation of `{0..n-1}`; `None` if it is not a bijection.
pub(crate) fn cycle_type_zero_based(perm: &[usize]) -> Option<Partition> {
    let n = perm.len();
    let mut seen = vec![false; n];
    if perm
        .iter()
        .any(|&x| x >= n || std::mem::replace(&mut seen[x], true))
    {
        return None;
    }
    let mut visited = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !visited[x] {
            visited[x] = true;
            x = perm[x];
            len += 1;
        }
        lengths.push(len);
    }
    Some(Partition::from_multiset(lengths))
}

/// `n! / prod(hook lengths)`, the dimension of the irreducible representation.
pub fn degree(lambda: &Partition) -> i64 {
    let n = lambda.n() as u128;
    let factorial: u128 = (1..=n).product();
    let hooks: u128 = lambda.hook_lengths().iter().map(|&h| h as u128).product();
    (factorial / hooks) as i64
}

type MnKey = (Vec<usize>, usize);

/// Memoized Murnaghan-Nakayama evaluation for a fixed cycle type.
struct MnEvaluator<'a> {
    mu: &'a [usize],
    memo: HashMap<MnKey, i64>,
}

impl<'a> MnEvaluator<'a> {
    fn new(mu: &'a [usize]) -> Self {
        MnEvaluator {
            mu,
            memo: HashMap::new(),
        }
    }

    /// Character of `lambda` at the cycle type `mu[pos..]`.
    fn eval(&mut self, lambda: &[usize], pos: usize) -> i64 {
        if pos == self.mu.len() {
            return if lambda.is_empty() { 1 } else { 0 };
        }
        let key = (lambda.to_vec(), pos);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let r = self.mu[pos];
        let len = lambda.len();
        let beta: Vec<usize> = lambda
            .iter()
            .enumerate()
            .map(|(i, &p)| p + len - 1 - i)
            .collect();
        let mut total = 0i64;
        for (idx, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
            let sign = if between % 2 == 0 { 1 } else { -1 };
            let mut next = beta.clone();
            next[idx] = b - r;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let shape: Vec<usize> = next
                .iter()
                .enumerate()
                .map(|(i, &x)| x - (len - 1 - i))
                .filter(|&p| p > 0)
                .collect();
            total += sign * self.eval(&shape, pos + 1);
        }
        self.memo.insert(key, total);
        total
    }
}

/// `chi^lambda(mu)`, the irreducible character of `lambda` on the class of
/// cycle type `mu`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64, SymError> {
    if lambda.n() != mu.n() {
        return Err(SymError::Shape(format!(
            "|{lambda}| = {} but |{mu}| = {}",
            lambda.n(),
            mu.n()
        )));
    }
    Ok(MnEvaluator::new(&mu.parts).eval(&lambda.parts, 0))
}

/// The full character table of the symmetric group on `n` letters.
///
/// Rows (irreducibles) follow [`partitions_of`] order, `(n)` first. Columns
/// (conjugacy classes) run the other way, so the identity class `(1^n)`
/// comes first and the first column holds the degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    n: usize,
    irreps: Vec<Partition>,
    classes: Vec<Partition>,
    irrep_index: HashMap<Partition, usize>,
    class_index: HashMap<Partition, usize>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn build(n: usize) -> Result<Self, SymError> {
        if n > MAX_TABLE_N {
            return Err(SymError::OutOfRange(n, MAX_TABLE_N));
        }
        let irreps = partitions_of(n)?;
        let classes: Vec<Partition> = irreps.iter().rev().cloned().collect();
        let mut values = vec![vec![0i64; classes.len()]; irreps.len()];
        // One memo per class, shared across all rows.
        for (col, mu) in classes.iter().enumerate() {
            let mut mn = MnEvaluator::new(&mu.parts);
            for (row, lambda) in irreps.iter().enumerate() {
                values[row][col] = mn.eval(&lambda.parts, 0);
            }
        }
        let positions = |ps: &[Partition]| {
            ps.iter()
                .cloned()
                .enumerate()
                .map(|(i, p)| (p, i))
                .collect()
        };
        Ok(CharacterTable {
            n,
            irrep_index: positions(&irreps),
            class_index: positions(&classes),
            irreps,
            classes,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row labels.
    pub fn irreps(&self) -> &[Partition] {
        &self.irreps
    }

    /// Column labels (cycle types).
    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    pub fn class_index(&self, mu: &Partition) -> Option<usize> {
        self.class_index.get(mu).copied()
    }

    /// Row of `lambda`, indexed by class position.
    pub fn row(&self, lambda: &Partition) -> Option<&[i64]> {
        self.irrep_index
            .get(lambda)
            .map(|&i| self.values[i].as_slice())
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<i64> {
        self.row(lambda)
            .zip(self.class_index(mu))
            .map(|(r, j)| r[j])
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "classes": self.classes,
            "chars": self
                .irreps
                .iter()
                .zip(&self.values)
                .map(|(lambda, values)| serde_json::json!({ "lambda": lambda, "values": values }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let rows: Vec<String> = self.irreps.iter().map(ToString::to_string).collect();
        let cols: Vec<String> = self.classes.iter().map(ToString::to_string).collect();
        let width = rows
            .iter()
            .chain(&cols)
            .map(String::len)
            .chain(self.values.iter().flatten().map(|v| v.to_string().len()))
            .max()
            .unwrap_or(1);
        let mut out = format!("{:>width$} |", "");
        for l in &cols {
            out.push_str(&format!(" {l:>width$}"));
        }
        out.push('\n');
        for (l, row) in rows.iter().zip(&self.values) {
            out.push_str(&format!("{l:>width$} |"));
            for v in row {
                out.push_str(&format!(" {v:>width$}"));
            }
            out.push('\n');
        }
        out
    }
}

/// The cached character table for `n`, built on first use.
pub fn character_table(n: usize) -> Result<Arc<CharacterTable>, SymError> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables
        .lock()
        .expect("character table cache poisoned")
        .get(&n)
    {
        return Ok(Arc::clone(t));
    }
    // Built outside the lock; a racing builder produces an identical table.
    let table = Arc::new(CharacterTable::build(n)?);
    let mut guard = tables.lock().expect("character table cache poisoned");
    Ok(Arc::clone(guard.entry(n).or_insert(table)))
}
