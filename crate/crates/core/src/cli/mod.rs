//! JSON instance and report formats, and the operations behind the `insep`
//! binary.
//!
//! Every document carries `"schema": 1`. Reports embed the tool version and
//! the SHA-256 of the canonical JSON of their input.
//!
//! Exit codes: 0 success, 1 structural failure (report still written),
//! 2 input error.

pub mod census;
pub mod gen;
pub mod params;

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::classify::{
    classify_critical, normal_form, quadratic_part_class, validate_normal_form, ClassifyError,
    LocalSection, NormalForm, Taxonomy,
};
use crate::field::{Elem, FieldDescriptor, FieldError, FieldTower};
use crate::germ::{Germ, GermError, QuadricClass};
use crate::poly::{MultiPoly, PolyError, PolyTerm};
use crate::resolve::{resolve, Mode, ResolutionReport};

pub const SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema: {0}")]
    Schema(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceMode {
    Resolve,
    Classify,
    Census,
    CheckParams,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    #[serde(default)]
    pub warn: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<String>,
}

/// A germ (`x_1..x_n, y`) or a local section (`x_1..x_n`) with its field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub schema: u32,
    pub mode: InstanceMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<gen::GenKind>,
    pub field: FieldDescriptor,
    pub n: usize,
    /// Covering degree.
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub germ: Option<Vec<PolyTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<PolyTerm>>,
    /// Degree through which `section` is exact; absent means exact.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub options: RunOptions,
}

pub enum Payload {
    Germ(Germ),
    Section(LocalSection),
}

impl InstanceSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn hash(&self) -> String {
        sha256_hex(
            serde_json::to_string(self)
                .expect("serializable")
                .as_bytes(),
        )
    }

    pub fn field(&self) -> Result<FieldTower, CliError> {
        Ok(FieldTower::from_descriptor(&self.field)?)
    }

    /// Checks the schema invariants and builds the payload.
    pub fn payload(&self) -> Result<Payload, CliError> {
        if self.schema != SCHEMA {
            return Err(CliError::Schema(format!(
                "unsupported schema {}",
                self.schema
            )));
        }
        let f = self.field()?;
        let p = f.characteristic();
        if self.m < 2 || !(self.m as u64).is_multiple_of(p) {
            return Err(CliError::Schema(format!(
                "p = {p} must divide m = {}",
                self.m
            )));
        }
        if self.mode == InstanceMode::Resolve && self.n < 3 {
            return Err(CliError::Schema(format!(
                "resolve needs n >= 3, got {}",
                self.n
            )));
        }
        match (&self.germ, &self.section) {
            (Some(terms), None) => {
                let eq = MultiPoly::from_json(&f, self.n + 1, terms)?;
                Ok(Payload::Germ(Germ::new(self.n, eq)?))
            }
            (None, Some(terms)) => {
                let g = MultiPoly::from_json(&f, self.n, terms)?;
                let s = LocalSection::new(g, self.m, self.order.unwrap_or(u32::MAX))?;
                Ok(Payload::Section(s))
            }
            _ => Err(CliError::Schema(
                "exactly one of germ and section is required".into(),
            )),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_instance(path: &Path) -> Result<InstanceSpec, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// What the normal form did to a section, with the exact inversion check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormSummary {
    pub field: FieldDescriptor,
    pub d: u32,
    pub e: u32,
    pub gammas: Vec<Vec<u64>>,
    pub shift: Vec<u64>,
    pub y_scale: Vec<u64>,
    pub germ: Vec<PolyTerm>,
    pub inverse_matches: bool,
}

impl NormalFormSummary {
    pub fn of(nf: &NormalForm) -> Self {
        let f = nf.germ.field();
        let meta = nf
            .germ
            .meta
            .clone()
            .expect("normal forms carry their shape");
        NormalFormSummary {
            field: f.descriptor(),
            d: meta.d,
            e: meta.e,
            gammas: meta.gammas.iter().map(|&g| f.digits(g)).collect(),
            shift: f.digits(nf.shift),
            y_scale: f.digits(nf.y_scale),
            germ: nf.germ.equation.to_json(),
            inverse_matches: nf.invert() == nf.source_equation(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveOutput {
    pub schema: u32,
    pub tool_version: String,
    pub input_hash: String,
    pub mode: Mode,
    pub success: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ResolutionReport>,
}

impl ResolveOutput {
    pub fn exit_code(&self) -> i32 {
        if self.success {
            0
        } else {
            1
        }
    }
}

/// Classify, normalize (for sections), resolve. Input errors are `Err`;
/// structural failures come back as an unsuccessful output.
pub fn run_resolve(spec: &InstanceSpec, mode: Mode) -> Result<ResolveOutput, CliError> {
    let payload = spec.payload()?;
    let mut out = ResolveOutput {
        schema: SCHEMA,
        tool_version: TOOL_VERSION.into(),
        input_hash: spec.hash(),
        mode,
        success: false,
        error: None,
        normal_form: None,
        report: None,
    };
    let germ = match payload {
        Payload::Germ(g) => g,
        Payload::Section(s) => match normal_form(&s) {
            Ok(nf) => {
                out.normal_form = Some(NormalFormSummary::of(&nf));
                nf.germ
            }
            Err(e) => {
                out.error = Some(e.to_string());
                return Ok(out);
            }
        },
    };
    match resolve(&germ, mode) {
        Ok(r) => {
            out.success = r.is_success();
            if let Some(f) = r.failures.first() {
                out.error = Some(f.to_error().to_string());
            } else if !out.success {
                out.error = Some("resolution incomplete or form verdict not regular".into());
            }
            out.report = Some(r);
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub schema: u32,
    pub tool_version: String,
    pub input_hash: String,
    pub taxonomy: Option<Taxonomy>,
    pub admissible: bool,
    pub case: Option<u8>,
    pub is_singular_point: Option<bool>,
    pub quadratic_part: Option<QuadricClass>,
    pub t_quadric: Option<QuadricClass>,
    pub radical: Option<Vec<Vec<u64>>>,
    pub beta: Option<Vec<u64>>,
    pub cubic: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Sections are classified at the origin (and normalized when exact and
/// admissible); germs are checked against the normal-form shape.
pub fn run_classify(spec: &InstanceSpec) -> Result<ClassifyOutput, CliError> {
    let payload = spec.payload()?;
    let mut out = ClassifyOutput {
        schema: SCHEMA,
        tool_version: TOOL_VERSION.into(),
        input_hash: spec.hash(),
        taxonomy: None,
        admissible: false,
        case: None,
        is_singular_point: None,
        quadratic_part: None,
        t_quadric: None,
        radical: None,
        beta: None,
        cubic: None,
        normal_form: None,
        error: None,
    };
    match payload {
        Payload::Section(s) => {
            let f = s.field().clone();
            let digits = |e: Elem| f.digits(e);
            let v = match classify_critical(&s) {
                Ok(v) => v,
                Err(e) => {
                    out.error = Some(e.to_string());
                    return Ok(out);
                }
            };
            out.taxonomy = Some(v.taxonomy);
            out.admissible = v.admissible;
            out.case = Some(v.case);
            out.is_singular_point = Some(v.is_singular_point);
            out.quadratic_part = quadratic_part_class(&s).ok();
            out.t_quadric = v.t_quadric.map(|q| q.classification);
            out.radical = v.radical.map(|r| r.into_iter().map(digits).collect());
            out.beta = v.beta.map(digits);
            out.cubic = v.cubic.map(digits);
            if v.admissible && s.order == u32::MAX {
                match normal_form(&s) {
                    Ok(nf) => out.normal_form = Some(NormalFormSummary::of(&nf)),
                    Err(e) => out.error = Some(e.to_string()),
                }
            }
        }
        Payload::Germ(g) => match validate_normal_form(&g) {
            Ok(meta) => {
                out.admissible = true;
                out.beta = meta.beta.map(|b| g.field().digits(b));
                out.cubic = meta.cubic.map(|c| g.field().digits(c));
            }
            Err(e) => {
                if let ClassifyError::NotAdmissible { case, .. } = &e {
                    out.case = *case;
                }
                out.error = Some(e.to_string());
            }
        },
    }
    Ok(out)
}
