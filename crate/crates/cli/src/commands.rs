use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;
use thiserror::Error;

use stieltjes_core::csmatrix::{
    catalan_like, catalan_stieltjes, hankel as hankel_matrix, submatrix, CSMatrix,
};
use stieltjes_core::families::{
    builtin, check_condition, load_family, Condition, FamilyError, FamilySpec,
};
use stieltjes_core::immanant::{
    positivity_sweep_with, six_index_inequality, three_index_inequality, ImmanantError,
    SweepOptions, DEFAULT_SIZE_CAP,
};
use stieltjes_core::network::{
    build_cs_network, build_hankel_factored, build_hankel_network, NetworkError,
};
use stieltjes_core::symchar::{character_table, MAX_TABLE_N};
use stieltjes_core::{MatrixError, PlanarNetwork, QPoly, SymError};

use crate::{
    CharsArgs, Format, HankelArgs, InequalityArgs, MatrixArgs, MatrixChoice, NetworkArgs,
    VerifyArgs,
};

const SIZE_CAP_VAR: &str = "STIELTJES_SIZE_CAP";

/// Violations listed on stderr before the rest are summarised.
const MAX_LISTED_VIOLATIONS: usize = 20;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Family(String),
    /// The network was printed but its path matrix is wrong.
    #[error("{message}")]
    CheckFailed { output: String, message: String },
    /// The report was printed and contains violations.
    #[error("{message}")]
    Violation { output: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Family(_) => 3,
            CliError::CheckFailed { .. } => 4,
            CliError::Violation { .. } => 5,
        }
    }

    pub fn output(&self) -> Option<&str> {
        match self {
            CliError::CheckFailed { output, .. } | CliError::Violation { output, .. } => {
                Some(output)
            }
            _ => None,
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        CliError::Family(e.to_string())
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Family(f) => f.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<NetworkError> for CliError {
    fn from(e: NetworkError) -> Self {
        match e {
            NetworkError::NegativeWeight { .. }
            | NetworkError::MissingWitness
            | NetworkError::RequiresUnitGamma { .. }
            | NetworkError::Family(_) => CliError::Family(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<ImmanantError> for CliError {
    fn from(e: ImmanantError) -> Self {
        match e {
            ImmanantError::Matrix(m) => m.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<SymError> for CliError {
    fn from(e: SymError) -> Self {
        CliError::Config(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn load(family: &str) -> Result<FamilySpec> {
    let path = Path::new(family);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{family}: {e}")))?;
        return Ok(load_family(&text)?);
    }
    Ok(builtin(family)?)
}

fn size_cap() -> Result<usize> {
    match std::env::var(SIZE_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Config(format!(
                "{SIZE_CAP_VAR}={v:?} is not a non-negative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_SIZE_CAP),
    }
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Config(format!("format {format:?} is not available for {command}").to_lowercase())
}

fn json_string(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise to JSON");
    s.push('\n');
    s
}

fn render_matrix(m: &CSMatrix, format: Format, command: &str) -> Result<String> {
    match format {
        Format::Json => Ok(json_string(m)),
        Format::Csv => Ok(m.to_csv()),
        Format::Text => Ok(m.to_text()),
        Format::Dot => Err(unsupported(format, command)),
    }
}

pub fn matrix(args: &MatrixArgs) -> Result<String> {
    let f = load(&args.family.family)?;
    let mut m = catalan_stieltjes(&f, args.n)?;
    if let (Some(rows), Some(cols)) = (&args.rows, &args.cols) {
        m = submatrix(&m, rows, cols)?;
    }
    render_matrix(&m, args.format, "matrix")
}

pub fn hankel(args: &HankelArgs) -> Result<String> {
    let f = load(&args.family.family)?;
    render_matrix(&hankel_matrix(&f, args.n)?, args.format, "hankel")
}

/// First weight case whose positivity condition holds for `k <= up_to`.
fn default_case(f: &FamilySpec, up_to: usize) -> Result<Condition> {
    Condition::ALL
        .into_iter()
        .find(|&c| check_condition(f, c, up_to).is_ok_and(|r| r.holds))
        .ok_or_else(|| {
            CliError::Family(format!(
                "{} satisfies none of the five positivity conditions",
                f.name()
            ))
        })
}

fn layer_cases(f: &FamilySpec, given: &[u8], layers: usize) -> Result<Vec<Condition>> {
    let cases = given
        .iter()
        .map(|&i| Condition::new(i).map_err(|e| CliError::Config(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    match cases.len() {
        0 if layers == 0 => Ok(vec![]),
        0 => Ok(vec![default_case(f, layers)?; layers]),
        1 => Ok(vec![cases[0]; layers]),
        len if len == layers => Ok(cases),
        len => Err(CliError::Config(format!(
            "{len} weight cases given for {layers} layers"
        ))),
    }
}

fn render_network(net: &PlanarNetwork, format: Format) -> Result<String> {
    match format {
        Format::Dot => Ok(net.export_dot()),
        Format::Json => Ok(json_string(&net.to_json())),
        Format::Text => {
            let mut out = String::new();
            let names = |vs: &[stieltjes_core::Vertex]| {
                vs.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let _ = writeln!(out, "vertices: {}", net.vertex_count());
            let _ = writeln!(out, "arcs: {}", net.arc_count());
            let _ = writeln!(out, "sources: {}", names(net.sources()));
            let _ = writeln!(out, "sinks: {}", names(net.sinks()));
            for a in net.arcs() {
                let _ = writeln!(out, "{} -> {}: {}", a.tail, a.head, a.weight);
            }
            Ok(out)
        }
        Format::Csv => Err(unsupported(format, "network")),
    }
}

pub fn network(args: &NetworkArgs) -> Result<String> {
    let f = load(&args.family.family)?;
    let n = args.n;
    let (net, expected, label) = if args.hankel {
        let cases = layer_cases(&f, &args.cases, 2 * n + args.k)?;
        let net = build_hankel_network(&f, n, args.k, &cases)?;
        (net, hankel_matrix(&f, n)?, format!("H_{n}"))
    } else if args.hankel_factored {
        let cases = layer_cases(&f, &args.cases, n)?;
        let net = build_hankel_factored(&f, n, &cases)?;
        (net, hankel_matrix(&f, n)?, format!("H_{n}"))
    } else {
        let cases = layer_cases(&f, &args.cases, n)?;
        let net = build_cs_network(&f, n, &cases)?;
        (net, catalan_stieltjes(&f, n)?, format!("C_{n}"))
    };
    let output = render_network(&net, args.format)?;
    if !args.check {
        return Ok(output);
    }
    let gf = net.gf_matrix();
    if gf == expected.entries {
        eprintln!("check: pass (path matrix equals {label})");
        Ok(output)
    } else {
        let mut message = format!("check: FAIL (path matrix differs from {label})");
        for i in 0..gf.nrows() {
            for j in 0..gf.ncols() {
                if gf.get(i, j) != expected.get(i, j) {
                    let _ = write!(
                        message,
                        "\n  ({i}, {j}): paths give {}, matrix has {}",
                        gf.get(i, j),
                        expected.get(i, j)
                    );
                }
            }
        }
        Err(CliError::CheckFailed { output, message })
    }
}

pub fn verify(args: &VerifyArgs) -> Result<String> {
    let f = load(&args.family.family)?;
    let (m, label) = match args.matrix {
        MatrixChoice::C => (catalan_stieltjes(&f, args.n)?, format!("C_{}", args.n)),
        MatrixChoice::H => (hankel_matrix(&f, args.n)?, format!("H_{}", args.n)),
    };
    let opts = SweepOptions {
        size_cap: size_cap()?,
        seed: args.seed,
        ..SweepOptions::default()
    };
    let report = positivity_sweep_with(&m, args.max_size, &opts)?;
    let output = match args.format {
        Format::Json => json_string(&report),
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut out = String::new();
            let how = match report.sampled_with_seed {
                Some(seed) => format!("sampled with seed {seed}"),
                None => "exhaustive".to_string(),
            };
            let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
            let _ = writeln!(out, "family: {}", report.family);
            let _ = writeln!(
                out,
                "matrix: {label}, square submatrices up to size {}",
                report.max_size
            );
            let _ = writeln!(
                out,
                "submatrices: {} of {} ({how})",
                report.submatrices_checked, report.submatrices_total
            );
            let _ = writeln!(out, "immanants: {}", report.reports.len());
            let _ = writeln!(
                out,
                "immanants q-nonnegative: {}",
                verdict(report.all_nonnegative())
            );
            let _ = writeln!(
                out,
                "Imm - deg * det q-nonnegative: {}",
                verdict(report.all_gaps_nonnegative())
            );
            out
        }
        Format::Dot => return Err(unsupported(args.format, "verify")),
    };
    let violations: Vec<_> = report.violations().collect();
    if violations.is_empty() {
        return Ok(output);
    }
    let mut message = format!("{} positivity violations", violations.len());
    for r in violations.iter().take(MAX_LISTED_VIOLATIONS) {
        let _ = write!(
            message,
            "\n  rows {:?} cols {:?} lambda {}: Imm = {}, Imm - deg * det = {}",
            r.rows, r.cols, r.lambda, r.value, r.dominance_gap
        );
    }
    if violations.len() > MAX_LISTED_VIOLATIONS {
        let _ = write!(
            message,
            "\n  ... and {} more",
            violations.len() - MAX_LISTED_VIOLATIONS
        );
    }
    Err(CliError::Violation { output, message })
}

struct Entry {
    name: &'static str,
    i: Vec<usize>,
    j: Vec<usize>,
    value: QPoly,
}

fn triples(max_index: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..=max_index).flat_map(move |a| {
        (a + 1..=max_index).flat_map(move |b| (b + 1..=max_index).map(move |c| [a, b, c]))
    })
}

pub fn inequality(args: &InequalityArgs) -> Result<String> {
    let f = load(&args.family.family)?;
    let chosen: Vec<[usize; 3]> = match &args.triple {
        Some(t) => {
            let t = [t[0], t[1], t[2]];
            if !(t[0] < t[1] && t[1] < t[2]) {
                return Err(CliError::Config(format!(
                    "triple {t:?} is not strictly increasing"
                )));
            }
            vec![t]
        }
        None => triples(args.max_index).collect(),
    };
    let top = chosen.iter().map(|t| 2 * t[2]).max().unwrap_or(0);
    let a = catalan_like(&f, top)?;
    let mut entries = Vec::new();
    for t in &chosen {
        entries.push(Entry {
            name: "three-index",
            i: t.to_vec(),
            j: vec![],
            value: three_index_inequality(&a, t[0], t[1], t[2])?,
        });
    }
    let pairs: Vec<([usize; 3], [usize; 3])> = match &args.triple {
        Some(_) => vec![(chosen[0], chosen[0])],
        None => chosen
            .iter()
            .flat_map(|&i| chosen.iter().map(move |&j| (i, j)))
            .collect(),
    };
    for (i, j) in pairs {
        entries.push(Entry {
            name: "six-index",
            i: i.to_vec(),
            j: j.to_vec(),
            value: six_index_inequality(&a, i, j)?,
        });
    }
    let failures = entries
        .iter()
        .filter(|e| !e.value.is_q_nonnegative())
        .count();
    let output = match args.format {
        Format::Json => {
            let rows: Vec<_> = entries
                .iter()
                .map(|e| {
                    json!({
                        "inequality": e.name,
                        "i": e.i,
                        "j": e.j,
                        "value": e.value,
                        "q_nonnegative": e.value.is_q_nonnegative(),
                    })
                })
                .collect();
            json_string(&json!({ "family": f.name(), "entries": rows, "violations": failures }))
        }
        Format::Csv => {
            let mut out = String::from("inequality,i,j,value,q_nonnegative\n");
            let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            for e in &entries {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    e.name,
                    join(&e.i),
                    join(&e.j),
                    e.value,
                    e.value.is_q_nonnegative()
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "family: {}", f.name());
            for e in &entries {
                let ok = e.value.is_q_nonnegative();
                if !(args.show || !ok) {
                    continue;
                }
                let verdict = if ok { "pass" } else { "FAIL" };
                let label = if e.j.is_empty() {
                    format!("({},{},{})", e.i[0], e.i[1], e.i[2])
                } else {
                    format!(
                        "i=({},{},{}) j=({},{},{})",
                        e.i[0], e.i[1], e.i[2], e.j[0], e.j[1], e.j[2]
                    )
                };
                let _ = writeln!(out, "{} {label}: {verdict}: {}", e.name, e.value);
            }
            let count = |name: &str| entries.iter().filter(|e| e.name == name).count();
            let _ = writeln!(
                out,
                "checked {} three-index and {} six-index instances: {}",
                count("three-index"),
                count("six-index"),
                if failures == 0 {
                    "all pass".to_string()
                } else {
                    format!("{failures} FAIL")
                }
            );
            out
        }
        Format::Dot => return Err(unsupported(args.format, "inequality")),
    };
    if failures == 0 {
        Ok(output)
    } else {
        Err(CliError::Violation {
            output,
            message: format!("{failures} inequality instances are not q-nonnegative"),
        })
    }
}

pub fn chars(args: &CharsArgs) -> Result<String> {
    if args.n > MAX_TABLE_N {
        return Err(CliError::Config(format!(
            "n = {} exceeds the supported maximum {MAX_TABLE_N}",
            args.n
        )));
    }
    let table = character_table(args.n)?;
    let mut output = match args.format {
        Format::Json => json_string(&table.to_json()),
        Format::Text => table.to_text(),
        _ => return Err(unsupported(args.format, "chars")),
    };
    if args.check {
        // sum_mu |class mu| chi(mu) psi(mu) = n! [chi = psi]
        let fact: i128 = (1..=args.n as i128).product();
        let sizes: Vec<i128> = table
            .classes()
            .iter()
            .map(|mu| fact / mu.centralizer_order() as i128)
            .collect();
        let rows = table.values();
        let ok = rows.iter().enumerate().all(|(a, ra)| {
            rows.iter().enumerate().all(|(b, rb)| {
                let s: i128 = (0..sizes.len())
                    .map(|k| sizes[k] * (ra[k] * rb[k]) as i128)
                    .sum();
                s == if a == b { fact } else { 0 }
            })
        });
        if !ok {
            return Err(CliError::Config(
                "character table fails the orthogonality relations".into(),
            ));
        }
        if args.format == Format::Text {
            output.push_str("orthogonality: pass\n");
        } else {
            eprintln!("orthogonality: pass");
        }
    }
    Ok(output)
}
