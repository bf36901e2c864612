//! The `tropjac` command-line front end.
//!
//! Input is one JSON document:
//!
//! ```json
//! {"monoid": {"rank": 2, "generators": [[1,0],[0,1]]},
//!  "curve": {"vertices": ["v1"],
//!            "edges": [{"id": "e1", "ends": ["v1","v1"], "length": [1,1]}]},
//!  "options": {"format": "json", "enumerate": false}}
//! ```
//!
//! Integers may be JSON numbers or decimal strings; on output, integers of
//! magnitude above 2^53 are written as decimal strings.
//!
//! Exit codes: 0 success, 2 input error, 3 domain error, 4 internal
//! consistency failure.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::Error;
use crate::fsmonoid::FsMonoid;
use crate::jacobian::{is_aligned, tropical_jacobian, AlignmentReport, TropicalJacobian, Witness};
use crate::strata::{self, build_family, check_family, classify_models, ModelClassification, StratifiedFamily};
use crate::tropcurve::{EdgeSpec, TropCurve};
use crate::zlinalg::ZVec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Environment variable overriding the enumeration guard.
pub const MAX_ENUM_VAR: &str = "TROPJAC_MAX_ENUM";

/// An integer that serializes as a JSON number when it fits in 53 bits and
/// as a decimal string otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JsonInt(pub BigInt);

const SAFE_BITS: u64 = 53;

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.magnitude().bits() <= SAFE_BITS {
            let v: i64 = (&self.0).try_into().expect("fits in 53 bits");
            s.serialize_i64(v)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        parse_int(&v).map(JsonInt).ok_or_else(|| serde::de::Error::custom("expected an integer"))
    }
}

fn parse_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => {
            let digits = s.strip_prefix('-').unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            s.parse().ok()
        }
        _ => None,
    }
}

fn json_vec(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

fn big_vec(v: &[JsonInt]) -> ZVec {
    v.iter().map(|x| x.0.clone()).collect()
}

/// A malformed input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputError {
    Parse { line: usize, column: usize, message: String },
    Schema { path: String, message: String },
    Io(String),
    Usage(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse { line, column, message } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            InputError::Schema { path, message } => write!(f, "schema error at {path}: {message}"),
            InputError::Io(m) => write!(f, "cannot read input: {m}"),
            InputError::Usage(m) => write!(f, "{m}"),
        }
    }
}

fn schema(path: &str, message: impl Into<String>) -> InputError {
    InputError::Schema { path: path.to_string(), message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidJson {
    pub rank: usize,
    pub generators: Vec<Vec<JsonInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub ends: [String; 2],
    pub length: Vec<JsonInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptionsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default)]
    pub enumerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub monoid: MonoidJson,
    pub curve: CurveJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsJson>,
}

fn get<'a>(obj: &'a serde_json::Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, InputError> {
    obj.get(key).ok_or_else(|| schema(&format!("{path}.{key}"), "missing field"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a serde_json::Map<String, Value>, InputError> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn as_string(v: &Value, path: &str) -> Result<String, InputError> {
    v.as_str().map(str::to_string).ok_or_else(|| schema(path, "expected a string"))
}

fn int_list(v: &Value, path: &str) -> Result<Vec<JsonInt>, InputError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            parse_int(x).map(JsonInt).ok_or_else(|| schema(&format!("{path}[{i}]"), "expected an integer"))
        })
        .collect()
}

impl FamilyDocument {
    /// Parses and validates a document, reporting the JSON path of the first
    /// offending field.
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let root: Value = serde_json::from_str(text).map_err(|e| InputError::Parse {
            line: e.line(),
            column: e.column(),
            message: {
                let m = e.to_string();
                m.rsplit_once(" at line ").map_or(m.clone(), |(head, _)| head.to_string())
            },
        })?;
        let obj = as_object(&root, "$")?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "monoid" | "curve" | "options") {
                return Err(schema(&format!("$.{key}"), "unknown field"));
            }
        }

        let m = as_object(get(obj, "monoid", "$")?, "$.monoid")?;
        let rank_v = get(m, "rank", "$.monoid")?;
        let rank = rank_v.as_u64().ok_or_else(|| schema("$.monoid.rank", "expected a nonnegative integer"))? as usize;
        let gens_v = as_array(get(m, "generators", "$.monoid")?, "$.monoid.generators")?;
        let mut generators = Vec::with_capacity(gens_v.len());
        for (i, g) in gens_v.iter().enumerate() {
            let path = format!("$.monoid.generators[{i}]");
            let g = int_list(g, &path)?;
            if g.len() != rank {
                return Err(schema(&path, format!("expected {rank} entries, found {}", g.len())));
            }
            generators.push(g);
        }

        let c = as_object(get(obj, "curve", "$")?, "$.curve")?;
        let vertices = as_array(get(c, "vertices", "$.curve")?, "$.curve.vertices")?
            .iter()
            .enumerate()
            .map(|(i, v)| as_string(v, &format!("$.curve.vertices[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let edges_v = as_array(get(c, "edges", "$.curve")?, "$.curve.edges")?;
        let mut edges = Vec::with_capacity(edges_v.len());
        for (i, e) in edges_v.iter().enumerate() {
            let path = format!("$.curve.edges[{i}]");
            let e = as_object(e, &path)?;
            let id = as_string(get(e, "id", &path)?, &format!("{path}.id"))?;
            let ends_path = format!("{path}.ends");
            let ends = as_array(get(e, "ends", &path)?, &ends_path)?;
            if ends.len() != 2 {
                return Err(schema(&ends_path, "expected exactly two vertex ids"));
            }
            let ends = [as_string(&ends[0], &format!("{ends_path}[0]"))?, as_string(&ends[1], &format!("{ends_path}[1]"))?];
            let length_path = format!("{path}.length");
            let length = int_list(get(e, "length", &path)?, &length_path)?;
            if length.len() != rank {
                return Err(schema(&length_path, format!("expected {rank} entries, found {}", length.len())));
            }
            edges.push(EdgeJson { id, ends, length });
        }

        let options = match obj.get("options") {
            None | Some(Value::Null) => None,
            Some(v) => {
                let o = as_object(v, "$.options")?;
                let format = match o.get("format") {
                    None | Some(Value::Null) => None,
                    Some(f) => {
                        let f = as_string(f, "$.options.format")?;
                        if f != "json" && f != "text" {
                            return Err(schema("$.options.format", "expected \"json\" or \"text\""));
                        }
                        Some(f)
                    }
                };
                let enumerate = match o.get("enumerate") {
                    None | Some(Value::Null) => false,
                    Some(b) => b.as_bool().ok_or_else(|| schema("$.options.enumerate", "expected a boolean"))?,
                };
                Some(OptionsJson { format, enumerate })
            }
        };

        Ok(Self { monoid: MonoidJson { rank, generators }, curve: CurveJson { vertices, edges }, options })
    }

    /// Builds the monoid and curve; lengths are mapped into the monoid's
    /// internal coordinates.
    pub fn build(&self) -> Result<(FsMonoid, TropCurve), Error> {
        let monoid = FsMonoid::new(self.monoid.rank, self.monoid.generators.iter().map(|g| big_vec(g)).collect())?;
        let edges = self
            .curve
            .edges
            .iter()
            .map(|e| {
                let length = monoid.to_internal(&big_vec(&e.length))?;
                Ok(EdgeSpec { id: e.id.clone(), ends: e.ends.clone(), length })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let curve = TropCurve::new(monoid.clone(), self.curve.vertices.clone(), edges)?;
        Ok((monoid, curve))
    }

    /// Document describing `curve`, with lengths in `monoid`'s input lattice.
    pub fn from_curve(curve: &TropCurve) -> Self {
        let monoid = curve.monoid();
        let to_json = |v: &[BigInt]| json_vec(&monoid.to_ambient(v));
        FamilyDocument {
            monoid: MonoidJson {
                rank: monoid.ambient_rank(),
                generators: monoid.generators().iter().map(|g| to_json(g)).collect(),
            },
            curve: CurveJson {
                vertices: curve.vertices().to_vec(),
                edges: curve
                    .edges()
                    .iter()
                    .map(|e| EdgeJson {
                        id: e.id.clone(),
                        ends: [curve.vertices()[e.tail].clone(), curve.vertices()[e.head].clone()],
                        length: to_json(&e.length),
                    })
                    .collect(),
            },
            options: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleTermJson {
    pub edge: String,
    pub coeff: JsonInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub cycle: Vec<CycleTermJson>,
    pub edges: Vec<String>,
    /// Extreme-ray index of each listed edge; `null` when on no ray.
    pub rays: Vec<Option<usize>>,
}

impl WitnessJson {
    fn new(curve: &TropCurve, w: &Witness) -> Self {
        Self {
            cycle: w
                .cycle
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| CycleTermJson { edge: curve.edges()[e].id.clone(), coeff: JsonInt(c.clone()) })
                .collect(),
            edges: w.edges.iter().map(|&e| curve.edges()[e].id.clone()).collect(),
            rays: w.rays.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub hom_rank: usize,
    pub periods: Vec<Vec<JsonInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianJson {
    pub rank: usize,
    pub torsion: Vec<JsonInt>,
    pub aligned: bool,
    pub witness: Option<WitnessJson>,
    pub presentation: PresentationJson,
}

impl JacobianJson {
    pub fn new(curve: &TropCurve, j: &TropicalJacobian, alignment: &AlignmentReport) -> Self {
        Self {
            rank: j.group().rank,
            torsion: json_vec(&j.group().invariant_factors),
            aligned: alignment.aligned,
            witness: alignment.witness.as_ref().map(|w| WitnessJson::new(curve, w)),
            presentation: PresentationJson {
                hom_rank: j.hom_rank(),
                periods: j.periods().row_vecs().iter().map(|r| json_vec(r)).collect(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub rays: Vec<usize>,
    pub aligned: bool,
    pub jacobian: JacobianJson,
    pub torsion: Vec<JsonInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionFaceJson {
    pub face: Vec<usize>,
    pub torsion: Vec<JsonInt>,
    pub generators: Vec<Vec<JsonInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub face: Vec<usize>,
    pub order: u64,
    pub invariant_factors: Vec<JsonInt>,
    pub generators: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub systems: Vec<Vec<SubgroupJson>>,
    pub covers: Vec<(usize, usize)>,
    pub minimum: usize,
    pub maximum: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelsJson {
    pub torsion_system: Vec<TorsionFaceJson>,
    pub systems: Option<PosetJson>,
}

impl ModelsJson {
    pub fn new(base: &FsMonoid, cls: &ModelClassification) -> Self {
        let rays = |f: usize| base.faces()[f].ray_indices().to_vec();
        Self {
            torsion_system: cls
                .torsion_system
                .iter()
                .map(|t| TorsionFaceJson {
                    face: rays(t.face),
                    torsion: json_vec(&t.group.invariant_factors),
                    generators: t.generators.iter().map(|g| json_vec(g)).collect(),
                })
                .collect(),
            systems: cls.poset.as_ref().map(|p| PosetJson {
                systems: p
                    .systems
                    .iter()
                    .map(|s| {
                        s.subgroups
                            .iter()
                            .enumerate()
                            .map(|(f, g)| SubgroupJson {
                                face: rays(f),
                                order: g.order,
                                invariant_factors: json_vec(&g.invariant_factors),
                                generators: g.generators.clone(),
                            })
                            .collect()
                    })
                    .collect(),
                covers: p.covers.clone(),
                minimum: p.minimum,
                maximum: p.maximum,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReportJson {
    pub faces: Vec<FaceJson>,
    pub quasi_finite: bool,
    pub finite_everywhere: bool,
    pub torsion_is_everything: bool,
    pub models: Option<ModelsJson>,
}

impl FamilyReportJson {
    pub fn new(fam: &StratifiedFamily, models: Option<&ModelClassification>) -> Result<Self, Error> {
        let report = check_family(fam)?;
        let faces = report
            .faces
            .iter()
            .map(|f| {
                let fiber = fam.fiber(f.face);
                let alignment = AlignmentReport { aligned: f.aligned, witness: f.witness.clone() };
                FaceJson {
                    rays: f.rays.clone(),
                    aligned: f.aligned,
                    jacobian: JacobianJson::new(&fiber.curve, &fiber.jacobian, &alignment),
                    torsion: json_vec(&f.torsion.invariant_factors),
                }
            })
            .collect();
        Ok(Self {
            faces,
            quasi_finite: report.quasi_finite,
            finite_everywhere: report.finite_everywhere,
            torsion_is_everything: report.torsion_is_everything,
            models: models.map(|m| ModelsJson::new(fam.base(), m)),
        })
    }
}

#[derive(Parser, Debug)]
#[command(name = "tropjac", version, about = "Tropical Jacobians of monoid-metrized tropical curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Input document (JSON).
    file: std::path::PathBuf,
    /// Emit machine-readable JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, invariant factors and presentation of the tropical Jacobian.
    Jacobian(Common),
    /// Decide alignment and print a witness cycle if it fails.
    Align(Common),
    /// Fibers and Jacobians over every face of the base monoid.
    Strata(Common),
    /// Torsion subgroup of the Jacobian with generators.
    Torsion(Common),
    /// Torsion system and, optionally, all subgroup systems.
    Models {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        enumerate: bool,
    },
    /// Contract along a face given by extreme-ray indices, e.g. `--face 0,2`.
    Contract {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "i,j,...", allow_hyphen_values = true)]
        face: String,
    },
    /// Split an edge into two pieces, e.g. `--edge e1 --split 1,0 0,1`.
    Subdivide {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        edge: String,
        #[arg(long, num_args = 2, value_names = ["L1", "L2"], allow_hyphen_values = true)]
        split: Vec<String>,
    },
    /// Verify alignment against finiteness on every stratum.
    Check(Common),
}

enum Failure {
    Input(InputError),
    Domain(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TheoremViolation { .. } | Error::Inconsistent(_) => EXIT_INTERNAL,
        _ => EXIT_DOMAIN,
    }
}

fn enumeration_limit() -> Result<u64, InputError> {
    match std::env::var(MAX_ENUM_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| InputError::Usage(format!("{MAX_ENUM_VAR} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(strata::DEFAULT_ENUMERATION_LIMIT),
    }
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<BigInt>, InputError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| InputError::Usage(format!("bad {what}: {s:?}"))))
        .collect()
}

fn load(path: &std::path::Path) -> Result<FamilyDocument, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io(format!("{}: {e}", path.display())))?;
    FamilyDocument::parse(&text)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn fmt_ints(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn support(curve: &TropCurve, cycle: &[BigInt]) -> String {
    let ids: Vec<&str> = cycle
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, _)| curve.edges()[e].id.as_str())
        .collect();
    format!("{{{}}}", ids.join(","))
}

fn alignment_line(curve: &TropCurve, a: &AlignmentReport) -> String {
    match &a.witness {
        None => "ALIGNED".to_string(),
        Some(w) if w.edges.len() == 1 => format!(
            "NOT ALIGNED: cycle {} has edge {} off the extreme rays",
            support(curve, &w.cycle),
            curve.edges()[w.edges[0]].id
        ),
        Some(w) => format!("NOT ALIGNED: cycle {} crosses rays", support(curve, &w.cycle)),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let common = match &cli.command {
        Command::Jacobian(c) | Command::Align(c) | Command::Strata(c) | Command::Torsion(c) | Command::Check(c) => c,
        Command::Models { common, .. } | Command::Contract { common, .. } | Command::Subdivide { common, .. } => common,
    };
    let doc = load(&common.file)?;
    let opts = doc.options.clone().unwrap_or_default();
    let json = common.json || opts.format.as_deref() == Some("json");
    let (monoid, curve) = doc.build()?;

    let mut emit = |s: String| writeln!(out, "{s}").map_err(|e| Failure::Input(InputError::Usage(format!("cannot write output: {e}"))));

    match cli.command {
        Command::Jacobian(_) => {
            let j = tropical_jacobian(&curve)?;
            let a = is_aligned(&curve)?;
            if json {
                emit(to_json(&JacobianJson::new(&curve, &j, &a)))?;
            } else {
                emit(format!("rank {}, torsion {}", j.group().rank, fmt_ints(&j.group().invariant_factors)))?;
                emit(format!("group: {}", j.group()))?;
                emit(format!("presentation: Z^{} modulo {} periods", j.hom_rank(), j.periods().rows()))?;
                for r in j.periods().row_vecs() {
                    emit(format!("  {}", fmt_ints(&r)))?;
                }
            }
        }
        Command::Align(_) => {
            let a = is_aligned(&curve)?;
            if json {
                #[derive(Serialize)]
                struct AlignJson {
                    aligned: bool,
                    witness: Option<WitnessJson>,
                }
                emit(to_json(&AlignJson { aligned: a.aligned, witness: a.witness.as_ref().map(|w| WitnessJson::new(&curve, w)) }))?;
            } else {
                emit(alignment_line(&curve, &a))?;
            }
        }
        Command::Strata(_) | Command::Check(_) => {
            let is_check = matches!(cli.command, Command::Check(_));
            let fam = build_family(&monoid, &curve)?;
            let models = if is_check { Some(strata::saturated_system(&fam)?) } else { None };
            let report = FamilyReportJson::new(&fam, models.as_ref())?;
            if json {
                emit(to_json(&report))?;
            } else {
                emit(format!("{:<12} {:<8} {:<16} {}", "face", "aligned", "jacobian", "torsion"))?;
                for (f, face) in report.faces.iter().zip(fam.fibers()) {
                    let label = monoid.faces()[face.face].label();
                    emit(format!(
                        "{:<12} {:<8} {:<16} {}",
                        label,
                        if f.aligned { "yes" } else { "no" },
                        face.jacobian.group().to_string(),
                        face.jacobian.group().torsion()
                    ))?;
                }
                emit(format!("quasi-finite: {}", report.quasi_finite))?;
                if is_check {
                    emit(format!("finite everywhere: {}", report.finite_everywhere))?;
                    emit(format!("torsion is everything: {}", report.torsion_is_everything))?;
                }
            }
        }
        Command::Torsion(_) => {
            let j = tropical_jacobian(&curve)?;
            let (g, gens) = crate::jacobian::torsion_subgroup(&j);
            if json {
                #[derive(Serialize)]
                struct TorsionJson {
                    torsion: Vec<JsonInt>,
                    generators: Vec<Vec<JsonInt>>,
                }
                emit(to_json(&TorsionJson {
                    torsion: json_vec(&g.invariant_factors),
                    generators: gens.iter().map(|x| json_vec(x)).collect(),
                }))?;
            } else {
                emit(format!("torsion {} ({})", fmt_ints(&g.invariant_factors), g))?;
                for (d, x) in g.invariant_factors.iter().zip(&gens) {
                    emit(format!("  order {d}: {}", fmt_ints(x)))?;
                }
            }
        }
        Command::Models { enumerate, .. } => {
            let fam = build_family(&monoid, &curve)?;
            let cls = classify_models(&fam, enumerate || opts.enumerate, enumeration_limit()?)?;
            if json {
                emit(to_json(&ModelsJson::new(&monoid, &cls)))?;
            } else {
                for t in &cls.torsion_system {
                    emit(format!("{:<12} torsion {}", monoid.faces()[t.face].label(), t.group))?;
                }
                if let Some(p) = &cls.poset {
                    emit(format!("{} subgroup systems", p.systems.len()))?;
                    for (i, s) in p.systems.iter().enumerate() {
                        let orders: Vec<String> = s.subgroups.iter().map(|g| g.order.to_string()).collect();
                        let tag = if i == p.maximum { " (maximum)" } else { "" };
                        emit(format!("  #{i}: orders [{}]{tag}", orders.join(", ")))?;
                    }
                    let covers: Vec<String> = p.covers.iter().map(|(a, b)| format!("{a} < {b}")).collect();
                    emit(format!("covers: {}", covers.join(", ")))?;
                }
            }
        }
        Command::Contract { face, .. } => {
            let rays: Vec<usize> = parse_ints(&face, "face")?
                .iter()
                .map(|x| usize::try_from(x).map_err(|_| InputError::Usage(format!("bad face index {x}"))))
                .collect::<Result<_, _>>()?;
            let face = monoid.face_from_rays(&rays)?;
            let (proj, q) = monoid.quotient_by_face(face)?;
            let (contracted, _) = curve.contract(&proj, &q)?;
            if json {
                emit(to_json(&FamilyDocument::from_curve(&contracted)))?;
            } else {
                emit(format!("contracted along face {}", face.label()))?;
                emit(contracted.to_string().trim_end().to_string())?;
            }
        }
        Command::Subdivide { edge, split, .. } => {
            let l1 = monoid.to_internal(&parse_ints(&split[0], "split")?)?;
            let l2 = monoid.to_internal(&parse_ints(&split[1], "split")?)?;
            let (sub, _) = curve.subdivide(&edge, l1, l2)?;
            if json {
                emit(to_json(&FamilyDocument::from_curve(&sub)))?;
            } else {
                emit(sub.to_string().trim_end().to_string())?;
            }
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
