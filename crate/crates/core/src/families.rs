//! Parameter triples `(r_k)`, `(s_k)`, `(t_k)` that drive the three-term
//! recurrence, the five sufficient positivity conditions, and the built-in
//! Eulerian, Schroeder and Narayana families.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qpoly::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?} (expected eulerian, schroder or narayana)")]
    UnknownFamily(String),
    #[error("condition 5 needs witness sequences b and c")]
    MissingWitness,
    #[error("parameter {sequence}_{index} = {value} has a negative coefficient")]
    NonNonnegativeParameter {
        sequence: char,
        index: usize,
        value: QPoly,
    },
    #[error("sequence {sequence} has no term at index {index} (prefix exhausted, no tail rule)")]
    SequenceExhausted { sequence: char, index: usize },
    #[error("family document: {0}")]
    Schema(String),
    #[error("condition index {0} out of range 1..=5")]
    InvalidCondition(u8),
}

/// Extends a sequence past its explicit prefix with `linear * k + constant`,
/// where `k` is the absolute index of the term.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailRule {
    #[serde(default)]
    pub linear: QPoly,
    #[serde(default)]
    pub constant: QPoly,
}

impl TailRule {
    pub fn constant(c: QPoly) -> Self {
        TailRule {
            linear: QPoly::zero(),
            constant: c,
        }
    }

    pub fn affine(linear: QPoly, constant: QPoly) -> Self {
        TailRule { linear, constant }
    }

    pub fn at(&self, k: usize) -> QPoly {
        self.linear.scale(k as u64) + &self.constant
    }
}

/// One parameter sequence: explicit terms from index `start` on, then an
/// optional tail rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    label: char,
    start: usize,
    prefix: Vec<QPoly>,
    tail: Option<TailRule>,
}

impl Sequence {
    pub fn new(label: char, start: usize, prefix: Vec<QPoly>, tail: Option<TailRule>) -> Self {
        Sequence {
            label,
            start,
            prefix,
            tail,
        }
    }

    pub fn label(&self) -> char {
        self.label
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn prefix(&self) -> &[QPoly] {
        &self.prefix
    }

    pub fn tail(&self) -> Option<&TailRule> {
        self.tail.as_ref()
    }

    /// The term at absolute index `k` without the nonnegativity check.
    /// Indices below `start` are zero.
    pub fn raw_term(&self, k: usize) -> Result<QPoly, FamilyError> {
        if k < self.start {
            return Ok(QPoly::zero());
        }
        let offset = k - self.start;
        if let Some(p) = self.prefix.get(offset) {
            return Ok(p.clone());
        }
        match &self.tail {
            Some(rule) => Ok(rule.at(k)),
            None => Err(FamilyError::SequenceExhausted {
                sequence: self.label,
                index: k,
            }),
        }
    }

    /// The term at absolute index `k`, which must be q-nonnegative.
    pub fn term(&self, k: usize) -> Result<QPoly, FamilyError> {
        let value = self.raw_term(k)?;
        if !value.is_q_nonnegative() {
            return Err(FamilyError::NonNonnegativeParameter {
                sequence: self.label,
                index: k,
                value,
            });
        }
        Ok(value)
    }

    fn validate_declared(&self) -> Result<(), FamilyError> {
        for k in self.start..self.start + self.prefix.len() {
            self.term(k)?;
        }
        if self.tail.is_some() {
            self.term(self.start + self.prefix.len())?;
        }
        Ok(())
    }
}

/// Condition-5 witnesses: `r_k = 1`, `s_k = b_k + c_k`, `t_{k+1} = b_{k+1} c_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub b: Sequence,
    pub c: Sequence,
}

/// The parameter triple `(r_k)_{k>=0}`, `(s_k)_{k>=0}`, `(t_k)_{k>=1}`.
///
/// Accessors take signed indices so that the conventions `r_{-1} = t_0 = 0`
/// fall out of the index arithmetic in the weight formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    name: String,
    r: Sequence,
    s: Sequence,
    t: Sequence,
    witness: Option<Witness>,
}

impl FamilySpec {
    pub fn new(
        name: impl Into<String>,
        r: Sequence,
        s: Sequence,
        t: Sequence,
        witness: Option<Witness>,
    ) -> Result<Self, FamilyError> {
        let f = FamilySpec {
            name: name.into(),
            r,
            s,
            t,
            witness,
        };
        f.r.validate_declared()?;
        f.s.validate_declared()?;
        f.t.validate_declared()?;
        Ok(f)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn r(&self, k: isize) -> Result<QPoly, FamilyError> {
        Self::signed(&self.r, k)
    }

    pub fn s(&self, k: isize) -> Result<QPoly, FamilyError> {
        Self::signed(&self.s, k)
    }

    /// `t_0` is zero by convention.
    pub fn t(&self, k: isize) -> Result<QPoly, FamilyError> {
        Self::signed(&self.t, k)
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn b(&self, k: isize) -> Result<QPoly, FamilyError> {
        let w = self.witness.as_ref().ok_or(FamilyError::MissingWitness)?;
        Self::signed(&w.b, k)
    }

    pub fn c(&self, k: isize) -> Result<QPoly, FamilyError> {
        let w = self.witness.as_ref().ok_or(FamilyError::MissingWitness)?;
        Self::signed(&w.c, k)
    }

    fn signed(seq: &Sequence, k: isize) -> Result<QPoly, FamilyError> {
        if k < 0 {
            Ok(QPoly::zero())
        } else {
            seq.term(k as usize)
        }
    }

    pub fn sequences(&self) -> (&Sequence, &Sequence, &Sequence) {
        (&self.r, &self.s, &self.t)
    }
}

/// One of the five sufficient conditions for q-total positivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Condition(u8);

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition(1),
        Condition(2),
        Condition(3),
        Condition(4),
        Condition(5),
    ];

    pub fn new(index: u8) -> Result<Self, FamilyError> {
        if (1..=5).contains(&index) {
            Ok(Condition(index))
        } else {
            Err(FamilyError::InvalidCondition(index))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub k: usize,
    /// The polynomial that should have been q-nonnegative (or zero, for the
    /// identities of condition 5).
    pub difference: QPoly,
    pub relation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition_index: u8,
    pub holds: bool,
    pub first_violation: Option<Violation>,
}

/// Checks one condition for every `k <= up_to`, stopping at the first failure.
pub fn check_condition(
    f: &FamilySpec,
    which: Condition,
    up_to: usize,
) -> Result<ConditionReport, FamilyError> {
    let report = |v: Option<Violation>| ConditionReport {
        condition_index: which.index(),
        holds: v.is_none(),
        first_violation: v,
    };
    if which.index() == 5 && f.witness.is_none() {
        return Err(FamilyError::MissingWitness);
    }
    for k in 0..=up_to {
        if let Some(v) = condition_at(f, which, k)? {
            return Ok(report(Some(v)));
        }
    }
    Ok(report(None))
}

fn condition_at(
    f: &FamilySpec,
    which: Condition,
    k: usize,
) -> Result<Option<Violation>, FamilyError> {
    let i = k as isize;
    let one = QPoly::one();
    let nonneg = |difference: QPoly, relation: String| {
        (!difference.is_q_nonnegative()).then_some(Violation {
            k,
            difference,
            relation,
        })
    };
    let violation = match which.index() {
        1 => nonneg(
            f.s(i)? - f.r(i)? - f.t(i)?,
            format!("s_{k} >= r_{k} + t_{k}"),
        ),
        2 => nonneg(
            f.s(i)? - f.r(i - 1)? - f.t(i + 1)?,
            format!("s_{k} >= r_{} + t_{}", i - 1, k + 1),
        ),
        3 => nonneg(
            f.s(i)? - f.r(i - 1)? * f.t(i)? - &one,
            format!("s_{k} >= r_{} t_{k} + 1", i - 1),
        ),
        4 if k == 0 => nonneg(f.s(0)? - f.r(0)? * f.t(1)?, "s_0 >= r_0 t_1".into()),
        4 => nonneg(
            f.s(i)? - f.r(i)? * f.t(i + 1)? - &one,
            format!("s_{k} >= r_{k} t_{} + 1", k + 1),
        ),
        _ => {
            let w = f.witness.as_ref().ok_or(FamilyError::MissingWitness)?;
            let b = w.b.raw_term(k)?;
            let c = w.c.raw_term(k)?;
            let b_next = w.b.raw_term(k + 1)?;
            let zero = |difference: QPoly, relation: String| {
                (!difference.is_zero()).then_some(Violation {
                    k,
                    difference,
                    relation,
                })
            };
            nonneg(b.clone(), format!("b_{k} >=_q 0"))
                .or_else(|| nonneg(c.clone(), format!("c_{k} >=_q 0")))
                .or(zero(f.r(i)? - &one, format!("r_{k} = 1")))
                .or(zero(f.s(i)? - &b - &c, format!("s_{k} = b_{k} + c_{k}")))
                .or(zero(
                    f.t(i + 1)? - &b_next * &c,
                    format!("t_{} = b_{} c_{k}", k + 1, k + 1),
                ))
        }
    };
    Ok(violation)
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 3] = ["eulerian", "schroder", "narayana"];

/// The example families, with condition-5 witnesses where they apply.
///
/// * `eulerian`: `r_k = k+1`, `s_k = k(q+1)+1`, `t_k = kq`.
/// * `schroder`: `r_k = 1`, `s_0 = 1+q`, `s_k = 1+2q`, `t_k = q+q^2`;
///   witnesses `b = (0, q, q, ...)`, `c = (1+q, 1+q, ...)`.
/// * `narayana`: `r_k = 1`, `s_0 = q`, `s_k = 1+q`, `t_k = q`;
///   witnesses `b = (0, 1, 1, ...)`, `c = (q, q, ...)`.
pub fn builtin(name: &str) -> Result<FamilySpec, FamilyError> {
    let p = QPoly::from_i64s;
    let constant =
        |label, start, c: QPoly| Sequence::new(label, start, vec![], Some(TailRule::constant(c)));
    let family = match name.to_ascii_lowercase().as_str() {
        "eulerian" => FamilySpec::new(
            "eulerian",
            Sequence::new('r', 0, vec![], Some(TailRule::affine(p(&[1]), p(&[1])))),
            Sequence::new('s', 0, vec![], Some(TailRule::affine(p(&[1, 1]), p(&[1])))),
            Sequence::new('t', 1, vec![], Some(TailRule::affine(p(&[0, 1]), p(&[])))),
            None,
        ),
        "schroder" | "schröder" => FamilySpec::new(
            "schroder",
            constant('r', 0, p(&[1])),
            Sequence::new(
                's',
                0,
                vec![p(&[1, 1])],
                Some(TailRule::constant(p(&[1, 2]))),
            ),
            constant('t', 1, p(&[0, 1, 1])),
            Some(Witness {
                b: Sequence::new('b', 0, vec![p(&[])], Some(TailRule::constant(p(&[0, 1])))),
                c: constant('c', 0, p(&[1, 1])),
            }),
        ),
        "narayana" => FamilySpec::new(
            "narayana",
            constant('r', 0, p(&[1])),
            Sequence::new(
                's',
                0,
                vec![p(&[0, 1])],
                Some(TailRule::constant(p(&[1, 1]))),
            ),
            constant('t', 1, p(&[0, 1])),
            Some(Witness {
                b: Sequence::new('b', 0, vec![p(&[])], Some(TailRule::constant(p(&[1])))),
                c: constant('c', 0, p(&[0, 1])),
            }),
        ),
        _ => return Err(FamilyError::UnknownFamily(name.to_string())),
    };
    family
}

/// JSON form of one sequence.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDocument {
    #[serde(default)]
    pub prefix: Vec<QPoly>,
    #[serde(default)]
    pub tail: Option<TailRule>,
}

/// JSON form of a family. `r`, `s`, `witness_b` and `witness_c` are indexed
/// from 0; `t` is indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub name: String,
    pub r: SequenceDocument,
    pub s: SequenceDocument,
    pub t: SequenceDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_b: Option<SequenceDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_c: Option<SequenceDocument>,
}

impl FamilyDocument {
    pub fn into_family(self) -> Result<FamilySpec, FamilyError> {
        let seq = |label, start, d: SequenceDocument| Sequence::new(label, start, d.prefix, d.tail);
        let witness = match (self.witness_b, self.witness_c) {
            (Some(b), Some(c)) => Some(Witness {
                b: seq('b', 0, b),
                c: seq('c', 0, c),
            }),
            (None, None) => None,
            _ => {
                return Err(FamilyError::Schema(
                    "witness_b and witness_c must be given together".into(),
                ))
            }
        };
        FamilySpec::new(
            self.name,
            seq('r', 0, self.r),
            seq('s', 0, self.s),
            seq('t', 1, self.t),
            witness,
        )
    }

    pub fn from_family(f: &FamilySpec) -> Self {
        let doc = |s: &Sequence| SequenceDocument {
            prefix: s.prefix.clone(),
            tail: s.tail.clone(),
        };
        FamilyDocument {
            name: f.name.clone(),
            r: doc(&f.r),
            s: doc(&f.s),
            t: doc(&f.t),
            witness_b: f.witness.as_ref().map(|w| doc(&w.b)),
            witness_c: f.witness.as_ref().map(|w| doc(&w.c)),
        }
    }
}

/// Parses a family document (JSON).
pub fn load_family(document: &str) -> Result<FamilySpec, FamilyError> {
    let doc: FamilyDocument =
        serde_json::from_str(document).map_err(|e| FamilyError::Schema(e.to_string()))?;
    doc.into_family()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    fn cond(i: u8) -> Condition {
        Condition::new(i).unwrap()
    }

    #[test]
    fn builtin_parameters() {
        let e = builtin("eulerian").unwrap();
        assert_eq!(e.s(0).unwrap(), p(&[1]));
        assert_eq!(e.r(3).unwrap(), p(&[4]));
        assert_eq!(e.s(2).unwrap(), p(&[3, 2]));
        assert_eq!(e.t(1).unwrap(), p(&[0, 1]));
        assert_eq!(e.t(4).unwrap(), p(&[0, 4]));
        let n = builtin("narayana").unwrap();
        assert_eq!(n.s(0).unwrap(), QPoly::q());
        assert_eq!(n.s(5).unwrap(), p(&[1, 1]));
        let s = builtin("schroder").unwrap();
        assert_eq!(s.t(1).unwrap(), p(&[0, 1, 1]));
        assert_eq!(s.s(0).unwrap(), p(&[1, 1]));
        assert_eq!(s.s(1).unwrap(), p(&[1, 2]));
        assert!(matches!(
            builtin("motzkin"),
            Err(FamilyError::UnknownFamily(_))
        ));
    }

    #[test]
    fn index_conventions() {
        let e = builtin("eulerian").unwrap();
        assert!(e.r(-1).unwrap().is_zero());
        assert!(e.t(0).unwrap().is_zero());
        assert!(matches!(e.b(0), Err(FamilyError::MissingWitness)));
    }

    #[test]
    fn eulerian_condition_one_is_tight() {
        let e = builtin("eulerian").unwrap();
        assert!(check_condition(&e, cond(1), 10).unwrap().holds);
        for k in 0..=10 {
            let diff = e.s(k).unwrap() - e.r(k).unwrap() - e.t(k).unwrap();
            assert!(diff.is_zero(), "k = {k}");
        }
    }

    #[test]
    fn witnesses_hold() {
        for name in ["narayana", "schroder"] {
            let f = builtin(name).unwrap();
            let r = check_condition(&f, cond(5), 10).unwrap();
            assert!(r.holds, "{name}: {:?}", r.first_violation);
        }
    }

    #[test]
    fn asserted_conditions_hold_to_twenty() {
        let claims: [(&str, &[u8]); 3] = [
            ("eulerian", &[1]),
            ("schroder", &[5]),
            ("narayana", &[2, 4, 5]),
        ];
        for (name, conds) in claims {
            let f = builtin(name).unwrap();
            for &c in conds {
                let r = check_condition(&f, cond(c), 20).unwrap();
                assert!(
                    r.holds && r.first_violation.is_none(),
                    "{name} condition {c}"
                );
            }
        }
    }

    #[test]
    fn failing_conditions_report_first_violation() {
        let n = builtin("narayana").unwrap();
        // s_0 = q is not >= r_0 = 1.
        let r = check_condition(&n, cond(1), 5).unwrap();
        assert!(!r.holds);
        let v = r.first_violation.unwrap();
        assert_eq!(v.k, 0);
        assert_eq!(v.difference, p(&[-1, 1]));
        // s_0 = q is not >= 1.
        let r3 = check_condition(&n, cond(3), 5).unwrap();
        assert_eq!(r3.first_violation.unwrap().k, 0);
        let e = builtin("eulerian").unwrap();
        assert!(matches!(
            check_condition(&e, cond(5), 3),
            Err(FamilyError::MissingWitness)
        ));
    }

    #[test]
    fn check_is_monotone_in_depth() {
        for name in BUILTIN_NAMES {
            let f = builtin(name).unwrap();
            for c in Condition::ALL {
                let Ok(deep) = check_condition(&f, c, 12) else {
                    continue;
                };
                for up_to in 0..12 {
                    let shallow = check_condition(&f, c, up_to).unwrap();
                    if deep.holds {
                        assert!(shallow.holds);
                    }
                    if let Some(v) = &deep.first_violation {
                        assert_eq!(shallow.holds, up_to < v.k);
                    }
                }
            }
        }
    }

    #[test]
    fn condition_index_bounds() {
        assert!(Condition::new(0).is_err());
        assert!(Condition::new(6).is_err());
        assert_eq!(Condition::new(4).unwrap().index(), 4);
    }

    const NARAYANA_DOC: &str = r#"{
        "name": "narayana-file",
        "r": {"prefix": [[1], [1]], "tail": {"constant": [1]}},
        "s": {"prefix": [[0, 1], [1, 1]], "tail": {"constant": [1, 1]}},
        "t": {"prefix": [[0, 1]], "tail": {"constant": [0, 1]}}
    }"#;

    #[test]
    fn load_matches_builtin() {
        let loaded = load_family(NARAYANA_DOC).unwrap();
        let reference = builtin("narayana").unwrap();
        assert_eq!(loaded.name(), "narayana-file");
        for k in 0..=20 {
            assert_eq!(loaded.r(k).unwrap(), reference.r(k).unwrap());
            assert_eq!(loaded.s(k).unwrap(), reference.s(k).unwrap());
            assert_eq!(loaded.t(k + 1).unwrap(), reference.t(k + 1).unwrap());
        }
    }

    #[test]
    fn load_errors() {
        let exhausted = r#"{"name": "x", "r": {"prefix": [[1]]}, "s": {"prefix": [[1]]}, "t": {"prefix": [[1]]}}"#;
        let f = load_family(exhausted).unwrap();
        assert!(f.s(0).is_ok());
        assert_eq!(
            f.s(1),
            Err(FamilyError::SequenceExhausted {
                sequence: 's',
                index: 1
            })
        );
        let negative =
            r#"{"name": "x", "r": {"prefix": [[1]]}, "s": {"prefix": [[-1, 1]]}, "t": {}}"#;
        assert!(matches!(
            load_family(negative),
            Err(FamilyError::NonNonnegativeParameter {
                sequence: 's',
                index: 0,
                ..
            })
        ));
        let negative_tail = r#"{"name": "x", "r": {"tail": {"constant": [-2]}}, "s": {}, "t": {}}"#;
        assert!(matches!(
            load_family(negative_tail),
            Err(FamilyError::NonNonnegativeParameter { sequence: 'r', .. })
        ));
        assert!(matches!(load_family("{}"), Err(FamilyError::Schema(_))));
        assert!(matches!(load_family("[1, 2]"), Err(FamilyError::Schema(_))));
        let half_witness = r#"{"name": "x", "r": {}, "s": {}, "t": {}, "witness_b": {}}"#;
        assert!(matches!(
            load_family(half_witness),
            Err(FamilyError::Schema(_))
        ));
        let unknown_field = r#"{"name": "x", "r": {}, "s": {}, "t": {}, "u": {}}"#;
        assert!(matches!(
            load_family(unknown_field),
            Err(FamilyError::Schema(_))
        ));
    }

    #[test]
    fn lazy_tail_check() {
        // t_k = k - 2 is negative at k = 1 only once the tail is reached.
        let doc = r#"{"name": "x", "r": {"tail": {"constant": [1]}}, "s": {"tail": {"constant": [3]}},
                      "t": {"prefix": [[0]], "tail": {"linear": [1], "constant": [-2]}}}"#;
        let f = load_family(doc).unwrap();
        assert!(f.t(1).unwrap().is_zero());
        assert_eq!(f.t(5).unwrap(), p(&[3]));
    }

    #[test]
    fn document_roundtrip() {
        for name in BUILTIN_NAMES {
            let f = builtin(name).unwrap();
            let text = serde_json::to_string(&FamilyDocument::from_family(&f)).unwrap();
            assert_eq!(load_family(&text).unwrap(), f);
        }
    }
}
