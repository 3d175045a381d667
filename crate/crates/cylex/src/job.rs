//! The job model behind the command-line surface: a machine-readable input
//! document naming a field, a truncation, one construction and a command;
//! fully validated parsing with stable error codes; deterministic dispatch.
//!
//! Matrix and tensor entries in the document are strings parsed as exact
//! fractions (over `Q`) or integer residues (over `F_p`); floating point is
//! not representable by design.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructors::{
    a_natural, group_action_cylindrical, tensor_cylindrical, AlgebraSpec, AutomorphismSpec,
    GroupActionSpec, GroupSpec, ValidationError,
};
use crate::convention;
use crate::cylindrical::CylindricalModule;
use crate::ez;
use crate::matrix::Matrix;
use crate::mixed::MixedComplex;
use crate::report::{Check, Report};
use crate::scalar::{FieldSpec, Scalar};
use crate::simplicial::{OracleError, ParacyclicModule};

#[derive(Debug, Error)]
pub enum JobError {
    #[error("MALFORMED_DOCUMENT: {0}")]
    Malformed(String),
    #[error("NON_PRIME_CHARACTERISTIC: {0} is not prime")]
    NonPrime(u64),
    #[error("{0}")]
    Invalid(ValidationError),
    #[error("{0}")]
    Oracle(OracleError),
    #[error("UNSAFE_DEGREE: degree {degree} is outside the safe window (max {max}); pass --unsafe to print it")]
    UnsafeDegree { degree: usize, max: usize },
    #[error("MAX_DEGREE_EXCEEDS_TRUNCATION: {max} > {trunc}")]
    MaxDegreeTooLarge { max: usize, trunc: usize },
    #[error("COMMAND_REQUIRES_CYLINDRICAL: {0} needs a group_action or tensor construction")]
    RequiresCylindrical(&'static str),
    #[error("ORACLE_REQUIRES_CYCLIC: the chosen module is not cyclic")]
    OracleRequiresCyclic,
    #[error("TRUNCATION_INVALID: truncation must be at least 1")]
    TruncationInvalid,
}

impl JobError {
    /// Exit codes: 2 for invalid input, 3 for resource caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Invalid(ValidationError::DimensionCap { .. }) => 3,
            _ => 2,
        }
    }
}

impl From<ValidationError> for JobError {
    fn from(e: ValidationError) -> Self {
        JobError::Invalid(e)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Check,
    Homology,
    EzVerify,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomologyTarget {
    Module,
    Diagonal,
    Total,
    Both,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Options {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<HomologyTarget>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(rename = "unsafe", skip_serializing_if = "std::ops::Not::not")]
    pub unsafe_degrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random_probes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_cap: Option<usize>,
}

// ---------------------------------------------------------------------------
// Raw document model: everything stringly, validated into domain types.

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub field: FieldSpec,
    pub truncation: usize,
    pub construction: ConstructionDoc,
    pub command: Command,
    #[serde(default, skip_serializing_if = "is_default_options")]
    pub options: Options,
}

fn is_default_options(o: &Options) -> bool {
    *o == Options::default()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum ConstructionDoc {
    #[serde(rename = "a_natural_g")]
    ANaturalG { algebra: AlgebraDoc, automorphism: Vec<Vec<String>> },
    #[serde(rename = "group_action")]
    GroupAction { algebra: AlgebraDoc, group: GroupDoc, action: Vec<Vec<Vec<String>>> },
    #[serde(rename = "tensor")]
    Tensor { left: FactorDoc, right: FactorDoc },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub structure_constants: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    pub algebra: AlgebraDoc,
}

// ---------------------------------------------------------------------------
// Validated job.

#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    ANaturalG { algebra: AlgebraSpec, automorphism: AutomorphismSpec },
    GroupAction { algebra: AlgebraSpec, action: GroupActionSpec },
    Tensor { left: AlgebraSpec, right: AlgebraSpec },
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub field: FieldSpec,
    pub truncation: usize,
    pub construction: Construction,
    pub command: Command,
    pub options: Options,
}

fn parse_scalar(field: FieldSpec, s: &str, path: &str) -> Result<Scalar, JobError> {
    field.parse(s).map_err(|e| JobError::Malformed(format!("{path}: {e}")))
}

fn parse_matrix(
    field: FieldSpec,
    rows: &[Vec<String>],
    path: &str,
) -> Result<Matrix, JobError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(JobError::Malformed(format!("{path}: ragged matrix rows")));
    }
    let mut m = Matrix::zero(field, nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            m.set(i, j, parse_scalar(field, s, &format!("{path}[{i}][{j}]"))?);
        }
    }
    Ok(m)
}

fn parse_algebra(field: FieldSpec, doc: &AlgebraDoc, path: &str) -> Result<AlgebraSpec, JobError> {
    let d = doc.dim;
    if doc.structure_constants.len() != d
        || doc.structure_constants.iter().any(|ci| {
            ci.len() != d || ci.iter().any(|cij| cij.len() != d)
        })
        || doc.unit.len() != d
    {
        return Err(JobError::Malformed(format!(
            "{path}: structure constants must be {d}x{d}x{d} and the unit length {d}"
        )));
    }
    let mut c = vec![vec![vec![field.zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                c[i][j][k] = parse_scalar(
                    field,
                    &doc.structure_constants[i][j][k],
                    &format!("{path}.structure_constants[{i}][{j}][{k}]"),
                )?;
            }
        }
    }
    let unit = doc
        .unit
        .iter()
        .enumerate()
        .map(|(i, s)| parse_scalar(field, s, &format!("{path}.unit[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let alg = AlgebraSpec::new(field, d, c, unit);
    alg.validate()?;
    Ok(alg)
}

fn serialize_matrix(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

fn serialize_algebra(alg: &AlgebraSpec) -> AlgebraDoc {
    AlgebraDoc {
        dim: alg.dim,
        structure_constants: alg
            .structure_constants
            .iter()
            .map(|ci| ci.iter().map(|cij| cij.iter().map(Scalar::to_string).collect()).collect())
            .collect(),
        unit: alg.unit.iter().map(Scalar::to_string).collect(),
    }
}

/// Parses and fully validates an input document.
pub fn parse_input(text: &str) -> Result<JobSpec, JobError> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| JobError::Malformed(e.to_string()))?;
    if doc.truncation == 0 {
        return Err(JobError::TruncationInvalid);
    }
    if let Err(e) = doc.field.validate() {
        return Err(match doc.field {
            FieldSpec::Prime { p } => JobError::NonPrime(p),
            FieldSpec::Rationals => JobError::Malformed(e.to_string()),
        });
    }
    let field = doc.field;
    let construction = match &doc.construction {
        ConstructionDoc::ANaturalG { algebra, automorphism } => {
            let alg = parse_algebra(field, algebra, "construction.algebra")?;
            let auto = AutomorphismSpec {
                matrix: parse_matrix(field, automorphism, "construction.automorphism")?,
            };
            auto.validate(&alg)?;
            Construction::ANaturalG { algebra: alg, automorphism: auto }
        }
        ConstructionDoc::GroupAction { algebra, group, action } => {
            let alg = parse_algebra(field, algebra, "construction.algebra")?;
            let gspec =
                GroupSpec { order: group.order, table: group.table.clone(), identity: group.identity };
            gspec.validate()?;
            let autos = action
                .iter()
                .enumerate()
                .map(|(i, rows)| {
                    Ok(AutomorphismSpec {
                        matrix: parse_matrix(field, rows, &format!("construction.action[{i}]"))?,
                    })
                })
                .collect::<Result<Vec<_>, JobError>>()?;
            let act = GroupActionSpec { group: gspec, action: autos };
            act.validate(&alg)?;
            Construction::GroupAction { algebra: alg, action: act }
        }
        ConstructionDoc::Tensor { left, right } => {
            let l = parse_algebra(field, &left.algebra, "construction.left.algebra")?;
            let r = parse_algebra(field, &right.algebra, "construction.right.algebra")?;
            Construction::Tensor { left: l, right: r }
        }
    };
    if let Some(max) = doc.options.max_degree {
        if max > doc.truncation {
            return Err(JobError::MaxDegreeTooLarge { max, trunc: doc.truncation });
        }
    }
    Ok(JobSpec {
        field,
        truncation: doc.truncation,
        construction,
        command: doc.command,
        options: doc.options,
    })
}

/// Serializes a job back into its document form; `parse_input . serialize`
/// is the identity on valid jobs.
pub fn serialize(job: &JobSpec) -> String {
    let construction = match &job.construction {
        Construction::ANaturalG { algebra, automorphism } => ConstructionDoc::ANaturalG {
            algebra: serialize_algebra(algebra),
            automorphism: serialize_matrix(&automorphism.matrix),
        },
        Construction::GroupAction { algebra, action } => ConstructionDoc::GroupAction {
            algebra: serialize_algebra(algebra),
            group: GroupDoc {
                order: action.group.order,
                table: action.group.table.clone(),
                identity: action.group.identity,
            },
            action: action.action.iter().map(|a| serialize_matrix(&a.matrix)).collect(),
        },
        Construction::Tensor { left, right } => ConstructionDoc::Tensor {
            left: FactorDoc { algebra: serialize_algebra(left) },
            right: FactorDoc { algebra: serialize_algebra(right) },
        },
    };
    let doc = Document {
        field: job.field,
        truncation: job.truncation,
        construction,
        command: job.command,
        options: job.options.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
}

enum BuiltModule {
    Paracyclic(ParacyclicModule, bool),
    Cylindrical(Box<CylindricalModule>),
}

fn build(job: &JobSpec) -> Result<BuiltModule, JobError> {
    let cap = job.options.dim_cap;
    Ok(match &job.construction {
        Construction::ANaturalG { algebra, automorphism } => {
            let claims_cyclic =
                automorphism.matrix == Matrix::identity(job.field, algebra.dim);
            BuiltModule::Paracyclic(
                a_natural(algebra, automorphism, job.truncation, cap)?,
                claims_cyclic,
            )
        }
        Construction::GroupAction { algebra, action } => BuiltModule::Cylindrical(Box::new(
            group_action_cylindrical(algebra, action, job.truncation, cap)?,
        )),
        Construction::Tensor { left, right } => {
            let l = a_natural(left, &AutomorphismSpec::identity(left), job.truncation, cap)?;
            let r = a_natural(right, &AutomorphismSpec::identity(right), job.truncation, cap)?;
            BuiltModule::Cylindrical(Box::new(
                tensor_cylindrical(&l, &r).map_err(JobError::Invalid)?,
            ))
        }
    })
}

/// A small deterministic PRNG for the seeded probe checks.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n.max(1) as u64) as usize
    }
}

/// Seeded spot checks: evaluate randomly chosen relation instances on random
/// basis vectors. Redundant with the full matrix checks, but cheap and
/// reproducible for a given seed.
fn probe_check(m: &ParacyclicModule, seed: u64, count: usize) -> Check {
    let mut rng = SplitMix64(seed);
    let field = m.field();
    for probe in 0..count {
        let n = 1 + rng.below(m.trunc());
        if m.dim(n) == 0 {
            continue;
        }
        let i = rng.below(n + 1);
        let col = rng.below(m.dim(n));
        let mut v = vec![field.zero(); m.dim(n)];
        v[col] = field.one();
        // d_i tau_n applied to a basis vector, against the matching relation.
        let lhs = m.face(n, i).apply(&m.tau(n).apply(&v));
        let rhs = if i == 0 {
            m.face(n, n).apply(&v)
        } else {
            m.tau(n - 1).apply(&m.face(n, i - 1).apply(&v))
        };
        if lhs != rhs {
            return Check::fail(
                "random-probes",
                "vector-level spot checks of the face-tau relation",
                format!("seed {seed}, {count} probes"),
                format!("probe {probe}: n={n}, i={i}, basis {col}"),
            );
        }
    }
    Check::pass(
        "random-probes",
        "vector-level spot checks of the face-tau relation",
        format!("seed {seed}, {count} probes"),
    )
}

fn homology_lines(
    report: &mut Report,
    label: &str,
    mixed: &MixedComplex,
    max_degree: usize,
    allow_unsafe: bool,
) -> Result<(), JobError> {
    let window = mixed.homology_window();
    if max_degree > window && !allow_unsafe {
        return Err(JobError::UnsafeDegree { degree: max_degree, max: window });
    }
    for n in 0..=max_degree.min(mixed.trunc()) {
        let hh = mixed.hochschild_dim(n).expect("inside truncation");
        let hc = mixed.cyclic_dim(n).expect("inside truncation");
        let flag = if !hh.safe || !hc.safe {
            " (UNRELIABLE: truncation clipped the guard differential)"
        } else if n == window {
            " (safe window edge)"
        } else {
            ""
        };
        report.note(format!("{label}: degree {n}: HH = {}, HC = {}{flag}", hh.dim, hc.dim));
    }
    Ok(())
}

/// Runs a validated job and produces its deterministic report.
pub fn run(job: &JobSpec) -> Result<Report, JobError> {
    let built = build(job)?;
    let conv = convention::frozen();
    let mut report = Report::new(match job.command {
        Command::Check => "check",
        Command::Homology => "homology",
        Command::EzVerify => "ez-verify",
        Command::Oracle => "oracle",
    });
    // The comparison pipeline quotes the convention itself.
    if job.command != Command::EzVerify {
        for line in conv.describe() {
            report.note(line);
        }
    }
    match (job.command, &built) {
        (Command::Check, BuiltModule::Paracyclic(m, claims_cyclic)) => {
            let mut relations = m.check_relations();
            relations.title = "module".into();
            report.extend(relations);
            report.push(m.cyclic_check(*claims_cyclic));
            if m.is_cyclic() {
                report.push(m.norm_annihilation_check());
            }
            let mut mixed = m.mixed_complex().identities_report();
            mixed.title = "mixed complex".into();
            report.extend(mixed);
            if let Some(count) = job.options.random_probes {
                report.push(probe_check(m, job.options.seed.unwrap_or(0), count));
            }
        }
        (Command::Check, BuiltModule::Cylindrical(x)) => {
            let mut structure = x.check_report();
            structure.title = "cylindrical".into();
            report.extend(structure);
            let d = x.diagonal();
            report.push(d.cyclic_check(true));
            match x.total_mixed() {
                Ok(tot) => {
                    let mut ids = tot.identities_report();
                    ids.title = "total mixed complex".into();
                    report.extend(ids);
                }
                Err(failed) => report.extend(*failed),
            }
            if let Some(count) = job.options.random_probes {
                report.push(probe_check(&d, job.options.seed.unwrap_or(0), count));
            }
        }
        (Command::Homology, built) => {
            let max = job.options.max_degree.unwrap_or(job.truncation.saturating_sub(1));
            match built {
                BuiltModule::Paracyclic(m, _) => {
                    let norm = m.normalized().map_err(|e| {
                        JobError::Malformed(format!("normalization failed: {e}"))
                    })?;
                    report.note(format!(
                        "normalized dimensions: {:?}",
                        norm.dims()
                    ));
                    homology_lines(&mut report, "module", &norm.mixed, max, job.options.unsafe_degrees)?;
                }
                BuiltModule::Cylindrical(x) => {
                    let target = job.options.target.unwrap_or(HomologyTarget::Both);
                    let ez_data = ez::normalized_ez(x).map_err(|e| {
                        JobError::Malformed(format!("normalization failed: {e}"))
                    })?;
                    if matches!(target, HomologyTarget::Diagonal | HomologyTarget::Both) {
                        homology_lines(
                            &mut report,
                            "diagonal",
                            &ez_data.diag.mixed,
                            max,
                            job.options.unsafe_degrees,
                        )?;
                    }
                    if matches!(target, HomologyTarget::Total | HomologyTarget::Both) {
                        homology_lines(
                            &mut report,
                            "total",
                            &ez_data.tot,
                            max,
                            job.options.unsafe_degrees,
                        )?;
                    }
                    if matches!(target, HomologyTarget::Module) {
                        return Err(JobError::Malformed(
                            "target 'module' needs an a_natural_g construction".into(),
                        ));
                    }
                }
            }
            report.push(Check::pass(
                "homology-computed",
                "kernel/image dimension counts over the exact field",
                format!("0 <= n <= {max}"),
            ));
        }
        (Command::EzVerify, BuiltModule::Cylindrical(x)) => {
            let outcome = ez::verify_main_theorem(x);
            report.extend(outcome.report);
            report.note(format!(
                "constrained homotopy solve (B_d h = 0) feasible: {}",
                outcome.constrained_feasible
            ));
            if outcome.strong_conclusion {
                report.note("B_inf = B_t exact; every higher perturbation term is zero");
            }
        }
        (Command::EzVerify, BuiltModule::Paracyclic(..)) => {
            return Err(JobError::RequiresCylindrical("ez-verify"));
        }
        (Command::Oracle, built) => {
            if !job.field.is_rational() {
                return Err(JobError::Oracle(OracleError::RequiresCharZero));
            }
            let module = match built {
                BuiltModule::Paracyclic(m, _) => m.clone(),
                BuiltModule::Cylindrical(x) => x.diagonal(),
            };
            if !module.is_cyclic() {
                return Err(JobError::OracleRequiresCyclic);
            }
            let max = job
                .options
                .max_degree
                .unwrap_or(job.truncation.saturating_sub(1))
                .min(job.truncation.saturating_sub(1));
            let norm = module
                .normalized()
                .map_err(|e| JobError::Malformed(format!("normalization failed: {e}")))?;
            let mut agree = true;
            let mut witness = String::new();
            for n in 0..=max {
                let lambda = module.connes_lambda_dim(n).map_err(JobError::Oracle)?;
                let hc = norm.mixed.cyclic_dim(n).expect("inside window");
                report.note(format!(
                    "degree {n}: lambda-complex dim = {lambda}, HC via bicomplex = {}",
                    hc.dim
                ));
                if lambda != hc.dim && agree {
                    agree = false;
                    witness = format!("n={n}: lambda {lambda} vs HC {}", hc.dim);
                }
            }
            report.push(if agree {
                Check::pass(
                    "oracle-agreement",
                    "quotient-complex homology equals HC via the bicomplex",
                    format!("0 <= n <= {max}"),
                )
            } else {
                Check::fail(
                    "oracle-agreement",
                    "quotient-complex homology equals HC via the bicomplex",
                    format!("0 <= n <= {max}"),
                    witness,
                )
            });
        }
    }
    Ok(report)
}

/// Renders a report in the requested format.
pub fn render(report: &Report, json: bool) -> String {
    if json {
        serde_json::to_string_pretty(&report.to_json()).expect("valid json") + "\n"
    } else {
        report.render_text()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_doc() -> String {
        r#"{
            "field": {"type": "Q"},
            "truncation": 3,
            "construction": {
                "kind": "a_natural_g",
                "algebra": {"dim": 1, "structure_constants": [[["1"]]], "unit": ["1"]},
                "automorphism": [["1"]]
            },
            "command": "check"
        }"#
        .to_owned()
    }

    #[test]
    fn minimal_document_parses() {
        let job = parse_input(&minimal_doc()).unwrap();
        assert_eq!(job.truncation, 3);
        assert_eq!(job.command, Command::Check);
        let report = run(&job).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn roundtrip_is_identity() {
        let job = parse_input(&minimal_doc()).unwrap();
        let text = serialize(&job);
        let again = parse_input(&text).unwrap();
        assert_eq!(job, again);
    }

    #[test]
    fn bad_group_table_is_rejected() {
        let doc = r#"{
            "field": {"type": "Q"},
            "truncation": 2,
            "construction": {
                "kind": "group_action",
                "algebra": {"dim": 1, "structure_constants": [[["1"]]], "unit": ["1"]},
                "group": {"order": 2, "table": [[0, 1], [1, 1]], "identity": 0},
                "action": [[["1"]], [["1"]]]
            },
            "command": "check"
        }"#;
        let err = parse_input(doc).unwrap_err();
        assert!(err.to_string().contains("GROUP_NOT_INVERTIBLE"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn non_associative_algebra_witnessed() {
        let doc = r#"{
            "field": {"type": "Q"},
            "truncation": 2,
            "construction": {
                "kind": "a_natural_g",
                "algebra": {
                    "dim": 2,
                    "structure_constants": [
                        [["1", "0"], ["1", "0"]],
                        [["1", "0"], ["0", "0"]]
                    ],
                    "unit": ["1", "0"]
                },
                "automorphism": [["1", "0"], ["0", "1"]]
            },
            "command": "check"
        }"#;
        let err = parse_input(doc).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("ALGEBRA_NOT_ASSOCIATIVE"), "{text}");
        assert!(text.contains("(0, 1, 1)"), "{text}");
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        let doc = minimal_doc().replace(r#"{"type": "Q"}"#, r#"{"type": "Fp", "p": 6}"#);
        let err = parse_input(&doc).unwrap_err();
        assert!(err.to_string().contains("NON_PRIME_CHARACTERISTIC"), "{err}");
    }

    #[test]
    fn oracle_requires_char_zero() {
        let doc = minimal_doc()
            .replace(r#"{"type": "Q"}"#, r#"{"type": "Fp", "p": 5}"#)
            .replace("\"check\"", "\"oracle\"");
        let job = parse_input(&doc).unwrap();
        let err = run(&job).unwrap_err();
        assert!(err.to_string().contains("ORACLE_REQUIRES_CHAR_ZERO"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn dimension_cap_exit_code() {
        let mut job = parse_input(&minimal_doc()).unwrap();
        job.options.dim_cap = Some(0);
        let err = run(&job).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("DIMENSION_CAP_EXCEEDED"), "{err}");
    }

    #[test]
    fn reports_are_deterministic() {
        let job = parse_input(&minimal_doc()).unwrap();
        let a = render(&run(&job).unwrap(), false);
        let b = render(&run(&job).unwrap(), false);
        assert_eq!(a, b);
        let ja = render(&run(&job).unwrap(), true);
        let jb = render(&run(&job).unwrap(), true);
        assert_eq!(ja, jb);
    }
}
