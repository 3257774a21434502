//! JSON data files with the `logcalc/1` schema header.

use std::sync::Arc;

use logcalc_core::intertwiner::{IntertwinerTable, ModeKey, VertexTable};
use logcalc_core::mobius::{GradedSpace, GradingGroup, GroupElem, Module, Sl2Action};
use logcalc_core::report::Report;
use logcalc_core::{CoeffVector, ExactMatrix, ExactScalar};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parse::{parse_exponent, parse_scalar};

pub const SCHEMA: &str = "logcalc/1";

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{pointer}: {msg}")]
    Schema { pointer: String, msg: String },
    #[error("{pointer}: module rejected, relation {relation} fails: {detail}")]
    Module { pointer: String, relation: String, detail: String },
}

fn schema_err(pointer: impl Into<String>, msg: impl Into<String>) -> FileError {
    FileError::Schema { pointer: pointer.into(), msg: msg.into() }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupData {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModuleData {
    pub name: String,
    pub dim: usize,
    pub weights: Vec<String>,
    pub degrees: Vec<Vec<i64>>,
    pub group: GroupData,
    pub indecomposable: bool,
    #[serde(rename = "Lm1")]
    pub lm1: Vec<Vec<String>>,
    #[serde(rename = "L0")]
    pub l0: Vec<Vec<String>>,
    #[serde(rename = "L1")]
    pub l1: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub schema: String,
    pub name: String,
    pub dim: usize,
    pub weights: Vec<String>,
    pub degrees: Vec<Vec<i64>>,
    pub group: GroupData,
    pub indecomposable: bool,
    #[serde(rename = "Lm1")]
    pub lm1: Vec<Vec<String>>,
    #[serde(rename = "L0")]
    pub l0: Vec<Vec<String>>,
    #[serde(rename = "L1")]
    pub l1: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TypeData {
    pub w1: ModuleData,
    pub w2: ModuleData,
    pub w3: ModuleData,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModeData {
    pub i: usize,
    pub j: usize,
    pub n: String,
    pub k: u32,
    pub value: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct IntertwinerFile {
    pub schema: String,
    #[serde(rename = "type")]
    pub ty: TypeData,
    pub modes: Vec<ModeData>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ActionData {
    pub v: usize,
    pub m: i64,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VertexFile {
    pub schema: String,
    pub vdim: usize,
    pub w1: Vec<ActionData>,
    pub w2: Vec<ActionData>,
    pub w3: Vec<ActionData>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FusionFile {
    pub schema: String,
    pub dim: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub basis: Vec<IntertwinerFile>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CheckData {
    pub id: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ReportData {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckData>,
}

impl From<&Report> for ReportData {
    fn from(r: &Report) -> Self {
        ReportData {
            suite: r.title.clone(),
            passed: r.passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckData {
                    id: c.id.clone(),
                    name: c.name.clone(),
                    pass: c.pass,
                    detail: c.detail.clone(),
                    witness: c.witness.clone(),
                })
                .collect(),
        }
    }
}

/// Canonical JSON text: pretty-printed with a trailing newline.
pub fn to_canonical<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("file types serialize");
    s.push('\n');
    s
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        use serde_path_to_error::Segment;
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

fn decode<T: DeserializeOwned>(text: &str) -> Result<T, FileError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        let inner = e.into_inner();
        schema_err(pointer, format!("{inner}"))
    })
}

fn check_schema(pointer: &str, got: &str) -> Result<(), FileError> {
    if got == SCHEMA {
        Ok(())
    } else {
        Err(schema_err(format!("{pointer}/schema"), format!("expected \"{SCHEMA}\", found \"{got}\"")))
    }
}

pub fn read_text(path: &str) -> Result<String, FileError> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|source| FileError::Io { path: "<stdin>".into(), source })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|source| FileError::Io { path: path.into(), source })
}

fn scalar_at(text: &str, pointer: String) -> Result<ExactScalar, FileError> {
    parse_scalar(text).map_err(|e| schema_err(pointer, format!("{e}")))
}

fn matrix_from(rows: &[Vec<String>], n: usize, pointer: &str) -> Result<ExactMatrix, FileError> {
    if rows.len() != n {
        return Err(schema_err(pointer, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut out = ExactMatrix::zero(n, n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(schema_err(format!("{pointer}/{r}"), format!("expected {n} entries, found {}", row.len())));
        }
        for (c, e) in row.iter().enumerate() {
            out.set(r, c, scalar_at(e, format!("{pointer}/{r}/{c}"))?);
        }
    }
    Ok(out)
}

fn matrix_to(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|e| e.to_string()).collect()).collect()
}

impl ModuleData {
    pub fn from_module(m: &Module) -> Self {
        let sp = m.space();
        ModuleData {
            name: sp.name.clone(),
            dim: sp.dim(),
            weights: sp.weights.iter().map(|w| w.to_string()).collect(),
            degrees: sp.degrees.iter().map(|d| d.0.clone()).collect(),
            group: GroupData { free_rank: sp.group.free_rank, torsion: sp.group.torsion.clone() },
            indecomposable: sp.indecomposable,
            lm1: matrix_to(m.l(-1)),
            l0: matrix_to(m.l(0)),
            l1: matrix_to(m.l(1)),
        }
    }

    /// Build and validate; `pointer` locates this object in its file.
    pub fn to_module(&self, pointer: &str) -> Result<Module, FileError> {
        let n = self.dim;
        if self.weights.len() != n {
            return Err(schema_err(format!("{pointer}/weights"), format!("expected {n} weights, found {}", self.weights.len())));
        }
        if self.degrees.len() != n {
            return Err(schema_err(format!("{pointer}/degrees"), format!("expected {n} degrees, found {}", self.degrees.len())));
        }
        let group = GradingGroup { free_rank: self.group.free_rank, torsion: self.group.torsion.clone() };
        if self.group.torsion.contains(&0) {
            return Err(schema_err(format!("{pointer}/group/torsion"), "torsion orders must be positive"));
        }
        let mut weights = Vec::with_capacity(n);
        for (i, w) in self.weights.iter().enumerate() {
            weights.push(parse_exponent(w).map_err(|e| schema_err(format!("{pointer}/weights/{i}"), format!("{e}")))?);
        }
        let mut degrees = Vec::with_capacity(n);
        for (i, d) in self.degrees.iter().enumerate() {
            if d.len() != group.rank() {
                return Err(schema_err(
                    format!("{pointer}/degrees/{i}"),
                    format!("expected {} components, found {}", group.rank(), d.len()),
                ));
            }
            let g = group.normalize(d);
            if &g.0 != d {
                return Err(schema_err(format!("{pointer}/degrees/{i}"), "torsion components must be reduced"));
            }
            degrees.push(GroupElem(d.clone()));
        }
        let action = Sl2Action {
            lm1: matrix_from(&self.lm1, n, &format!("{pointer}/Lm1"))?,
            l0: matrix_from(&self.l0, n, &format!("{pointer}/L0"))?,
            l1: matrix_from(&self.l1, n, &format!("{pointer}/L1"))?,
        };
        let space = GradedSpace { name: self.name.clone(), weights, degrees, group, indecomposable: self.indecomposable };
        Module::new(space, action).map_err(|e| FileError::Module {
            pointer: if pointer.is_empty() { "/".into() } else { pointer.into() },
            relation: e.relation,
            detail: e.detail,
        })
    }
}

impl ModuleFile {
    pub fn from_module(m: &Module) -> Self {
        let d = ModuleData::from_module(m);
        ModuleFile {
            schema: SCHEMA.into(),
            name: d.name,
            dim: d.dim,
            weights: d.weights,
            degrees: d.degrees,
            group: d.group,
            indecomposable: d.indecomposable,
            lm1: d.lm1,
            l0: d.l0,
            l1: d.l1,
        }
    }

    fn data(&self) -> ModuleData {
        ModuleData {
            name: self.name.clone(),
            dim: self.dim,
            weights: self.weights.clone(),
            degrees: self.degrees.clone(),
            group: self.group.clone(),
            indecomposable: self.indecomposable,
            lm1: self.lm1.clone(),
            l0: self.l0.clone(),
            l1: self.l1.clone(),
        }
    }
}

pub fn parse_module(text: &str) -> Result<Module, FileError> {
    let f: ModuleFile = decode(text)?;
    check_schema("", &f.schema)?;
    f.data().to_module("")
}

pub fn module_json(m: &Module) -> String {
    to_canonical(&ModuleFile::from_module(m))
}

impl IntertwinerFile {
    pub fn from_table(t: &IntertwinerTable) -> Self {
        let d3 = t.w3().dim();
        IntertwinerFile {
            schema: SCHEMA.into(),
            ty: TypeData { w1: ModuleData::from_module(t.w1()), w2: ModuleData::from_module(t.w2()), w3: ModuleData::from_module(t.w3()) },
            modes: t
                .modes()
                .map(|(k, v)| ModeData {
                    i: k.i,
                    j: k.j,
                    n: k.n.to_string(),
                    k: k.k,
                    value: (0..d3).map(|c| v.get(c).to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn to_table(&self, pointer: &str) -> Result<IntertwinerTable, FileError> {
        check_schema(pointer, &self.schema)?;
        let w1 = Arc::new(self.ty.w1.to_module(&format!("{pointer}/type/w1"))?);
        let w2 = Arc::new(self.ty.w2.to_module(&format!("{pointer}/type/w2"))?);
        let w3 = Arc::new(self.ty.w3.to_module(&format!("{pointer}/type/w3"))?);
        let (d1, d2, d3) = (w1.dim(), w2.dim(), w3.dim());
        let mut t = IntertwinerTable::new(w1, w2, w3);
        let mut prev: Option<ModeKey> = None;
        for (idx, m) in self.modes.iter().enumerate() {
            let at = format!("{pointer}/modes/{idx}");
            if m.i >= d1 {
                return Err(schema_err(format!("{at}/i"), format!("index {} out of range for dimension {d1}", m.i)));
            }
            if m.j >= d2 {
                return Err(schema_err(format!("{at}/j"), format!("index {} out of range for dimension {d2}", m.j)));
            }
            if m.value.len() != d3 {
                return Err(schema_err(format!("{at}/value"), format!("expected {d3} entries, found {}", m.value.len())));
            }
            let n = parse_exponent(&m.n).map_err(|e| schema_err(format!("{at}/n"), format!("{e}")))?;
            let mut v = CoeffVector::zero();
            for (c, e) in m.value.iter().enumerate() {
                v.set(c, scalar_at(e, format!("{at}/value/{c}"))?);
            }
            if v.is_zero() {
                return Err(schema_err(format!("{at}/value"), "stored modes must be nonzero"));
            }
            let key = ModeKey::new(m.i, m.j, n, m.k);
            if prev.as_ref().is_some_and(|p| p >= &key) {
                return Err(schema_err(at, "modes must be sorted by (i, j, n, k) without repeats"));
            }
            prev = Some(key.clone());
            t.set(key, v);
        }
        Ok(t)
    }
}

pub fn parse_table(text: &str) -> Result<IntertwinerTable, FileError> {
    let f: IntertwinerFile = decode(text)?;
    f.to_table("")
}

pub fn table_json(t: &IntertwinerTable) -> String {
    to_canonical(&IntertwinerFile::from_table(t))
}

/// `dims` are the dimensions of `W₁, W₂, W₃`.
pub fn parse_vertex(text: &str, dims: [usize; 3]) -> Result<VertexTable, FileError> {
    let f: VertexFile = decode(text)?;
    check_schema("", &f.schema)?;
    let mut vt = VertexTable::new(f.vdim);
    for (w, (name, list)) in [("w1", &f.w1), ("w2", &f.w2), ("w3", &f.w3)].into_iter().enumerate() {
        let n = dims[w];
        for (idx, a) in list.iter().enumerate() {
            let at = format!("/{name}/{idx}");
            if a.v >= f.vdim {
                return Err(schema_err(format!("{at}/v"), format!("index {} out of range for vdim {}", a.v, f.vdim)));
            }
            vt.set(w, a.v, a.m, matrix_from(&a.matrix, n, &format!("{at}/matrix"))?);
        }
    }
    Ok(vt)
}

pub fn vertex_json(vt: &VertexTable) -> String {
    let list =
        |w: usize| -> Vec<ActionData> { vt.entries(w).map(|((v, m), a)| ActionData { v: *v, m: *m, matrix: matrix_to(a) }).collect() };
    to_canonical(&VertexFile { schema: SCHEMA.into(), vdim: vt.vdim(), w1: list(0), w2: list(1), w3: list(2) })
}

/// Which kind of data file `text` holds, judged by its top-level keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Module,
    Intertwiner,
    Vertex,
    Fusion,
}

pub fn sniff(text: &str) -> Result<FileKind, FileError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| schema_err("/", format!("{e}")))?;
    let obj = v.as_object().ok_or_else(|| schema_err("/", "expected a JSON object"))?;
    if obj.contains_key("modes") {
        Ok(FileKind::Intertwiner)
    } else if obj.contains_key("vdim") {
        Ok(FileKind::Vertex)
    } else if obj.contains_key("basis") {
        Ok(FileKind::Fusion)
    } else if obj.contains_key("L0") {
        Ok(FileKind::Module)
    } else {
        Err(schema_err("/", "not a logcalc data file"))
    }
}

pub fn parse_fusion(text: &str) -> Result<Vec<IntertwinerTable>, FileError> {
    let f: FusionFile = decode(text)?;
    check_schema("", &f.schema)?;
    f.basis.iter().enumerate().map(|(b, t)| t.to_table(&format!("/basis/{b}"))).collect()
}

/// Re-encode a data file; canonical files come back byte for byte.
pub fn reencode(text: &str) -> Result<String, FileError> {
    Ok(match sniff(text)? {
        FileKind::Module => module_json(&parse_module(text)?),
        FileKind::Intertwiner => table_json(&parse_table(text)?),
        FileKind::Vertex => {
            let f: VertexFile = decode(text)?;
            let dim = |l: &[ActionData]| l.first().map_or(0, |a| a.matrix.len());
            vertex_json(&parse_vertex(text, [dim(&f.w1), dim(&f.w2), dim(&f.w3)])?)
        }
        FileKind::Fusion => {
            let f: FusionFile = decode(text)?;
            check_schema("", &f.schema)?;
            let basis = parse_fusion(text)?;
            to_canonical(&FusionFile {
                schema: SCHEMA.into(),
                dim: basis.len(),
                unknowns: f.unknowns,
                equations: f.equations,
                rank: f.rank,
                basis: basis.iter().map(IntertwinerFile::from_table).collect(),
            })
        }
    })
}
