//! Result documents, model loading and the plain-text table format.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cohomology::{CohomologySpace, Engine, MapSummary};
use crate::diamond::{DiamondError, DimTables, HodgeDiamond, InvarianceReport, SurfaceData, SCHEMA};
use crate::dsl::{parse_model, DslError};
use crate::invariants::{Check, CheckKind, Graded, InvariantReport};
use crate::model::LieModel;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("no such file: {0}")]
    NoSuchFile(String),
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("unknown corpus model {0:?}")]
    UnknownModel(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: DslError },
    #[error("{path}: invalid JSON: {message}")]
    Json { path: String, message: String },
    #[error("{path}: {source}")]
    Table { path: String, source: DiamondError },
}

/// A model together with the text it was parsed from.
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub model: LieModel,
    pub source: String,
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Reads a text file, or the embedded corpus entry for `corpus:NAME`.
pub fn read_source(path: &str) -> Result<String, IoError> {
    if let Some(name) = path.strip_prefix("corpus:") {
        return crate::corpus::source(name).map(str::to_string).ok_or_else(|| IoError::UnknownModel(name.into()));
    }
    read_file(path)
}

fn read_file(path: &str) -> Result<String, IoError> {
    if !Path::new(path).exists() {
        return Err(IoError::NoSuchFile(path.into()));
    }
    std::fs::read_to_string(path).map_err(|e| IoError::Read { path: path.into(), message: e.to_string() })
}

/// Loads `corpus:NAME` or a `.lie` file.
pub fn load_model(path: &str) -> Result<LoadedModel, IoError> {
    let source = read_source(path)?;
    let model = parse_model(&source).map_err(|source| IoError::Parse { path: path.into(), source })?;
    Ok(LoadedModel { model, source })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, IoError> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| IoError::Json { path: path.into(), message: e.to_string() })
}

pub fn read_hodge_diamond(path: &str) -> Result<HodgeDiamond, IoError> {
    let h: HodgeDiamond = read_json(path)?;
    h.validate().map_err(|source| IoError::Table { path: path.into(), source })?;
    Ok(h)
}

pub fn read_surface(path: &str) -> Result<SurfaceData, IoError> {
    let s: SurfaceData = read_json(path)?;
    s.validate().map_err(|source| IoError::Table { path: path.into(), source })?;
    Ok(s)
}

/// Dimension tables from `corpus:point`, `corpus:MODEL` (computed by the engine) or
/// a DimTables JSON file.
pub fn load_tables(path: &str) -> Result<DimTables, IoError> {
    let t = match path.strip_prefix("corpus:") {
        Some("point") => DimTables::point(),
        Some(name) => {
            let m = crate::corpus::load(name).ok_or_else(|| IoError::UnknownModel(name.into()))?;
            DimTables::from_engine(&Engine::new(m), 1, 1)
        }
        None => read_json(path)?,
    };
    t.validate().map_err(|source| IoError::Table { path: path.into(), source })?;
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelInfo {
    pub name: String,
    pub n: usize,
    pub source_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapRecord {
    pub src: String,
    pub dst: String,
    pub src_dim: usize,
    pub dst_dim: usize,
    pub rank: usize,
    pub ker_dim: usize,
    pub coker_dim: usize,
    pub ker_generators: Vec<String>,
    pub coker_generators: Vec<String>,
}

impl MapRecord {
    pub fn from_summary(m: &MapSummary) -> Self {
        MapRecord {
            src: m.src.label.to_string(),
            dst: m.dst.label.to_string(),
            src_dim: m.src.dim(),
            dst_dim: m.dst.dim(),
            rank: m.rank,
            ker_dim: m.ker_dim(),
            coker_dim: m.coker_dim(),
            ker_generators: m.ker_generators.iter().map(|f| f.normalized().to_string()).collect(),
            coker_generators: m.coker_generators.iter().map(|f| f.normalized().to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceRecord {
    pub label: String,
    pub dim: usize,
    pub generators: Vec<String>,
}

impl SpaceRecord {
    pub fn from_space(s: &CohomologySpace) -> Self {
        SpaceRecord {
            label: s.label.to_string(),
            dim: s.dim(),
            generators: s.generators.iter().map(|f| f.normalized().to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapTables {
    /// `I^{p,q}: H_BC^{p,q} -> H_dbar^{p,q}`, keyed `"p,q"`.
    #[serde(rename = "I")]
    pub i: BTreeMap<String, MapRecord>,
    /// `C^k: H^k_BC(C(1,1)) -> H^k(C(1))`, keyed `"k"`.
    #[serde(rename = "C")]
    pub c: BTreeMap<String, MapRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub schema: String,
    pub model: ModelInfo,
    /// Present for a full computation; absent when only selected spaces or maps
    /// were requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<InvariantReport>,
    pub maps: MapTables,
    pub spaces: Vec<SpaceRecord>,
    pub checks: Vec<Check>,
}

/// What `compute` should produce.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Selection {
    /// `(p,q)` Bott–Chern spaces.
    pub bc: Vec<(i64, i64)>,
    /// `(k,p,q)` Bott–Chern hypercohomology spaces.
    pub hyper: Vec<(i64, i64, i64)>,
    /// `(k,p)` truncated holomorphic de Rham hypercohomology spaces.
    pub trunc: Vec<(i64, i64)>,
    pub maps_i: bool,
    pub maps_c: bool,
}

impl Selection {
    pub fn is_empty(&self) -> bool {
        self.bc.is_empty() && self.hyper.is_empty() && self.trunc.is_empty() && !self.maps_i && !self.maps_c
    }
}

fn d_squared_check(m: &LieModel) -> Check {
    let v = m.validate();
    Check {
        name: "d-squared".into(),
        kind: CheckKind::Structural,
        passed: v.passed(),
        detail: if v.passed() { "d^2 = 0 on generators".into() } else { v.to_string().trim_end().to_string() },
    }
}

/// Runs a computation. An empty selection means everything: invariant tables and
/// all `I` and `C` maps.
pub fn compute(loaded: &LoadedModel, sel: &Selection) -> ResultDocument {
    let e = Engine::new(loaded.model.clone());
    let n = e.dim() as i64;
    let full = sel.is_empty();
    let mut tables = None;
    let mut checks = Vec::new();
    if full {
        let mut r = crate::invariants::consistency_report(&e);
        checks = std::mem::take(&mut r.checks);
        tables = Some(r);
    } else {
        checks.push(d_squared_check(e.model()));
    }
    let mut maps = MapTables::default();
    if full || sel.maps_i {
        for p in 0..=n {
            for q in 0..=n {
                maps.i.insert(format!("{p},{q}"), MapRecord::from_summary(&e.map_i(p, q)));
            }
        }
    }
    if full || sel.maps_c {
        for k in 1..=2 * n {
            maps.c.insert(k.to_string(), MapRecord::from_summary(&e.map_c(k)));
        }
    }
    let mut spaces = Vec::new();
    for &(p, q) in &sel.bc {
        spaces.push(SpaceRecord::from_space(&e.bott_chern(p, q)));
    }
    for &(k, p, q) in &sel.hyper {
        spaces.push(SpaceRecord::from_space(&e.hyper_bc(k, p, q)));
    }
    for &(k, p) in &sel.trunc {
        spaces.push(SpaceRecord::from_space(&e.hyper_truncated(k, p)));
    }
    ResultDocument {
        schema: SCHEMA.into(),
        model: ModelInfo { name: e.model().name().into(), n: e.dim(), source_sha256: sha256_hex(&loaded.source) },
        tables,
        maps,
        spaces,
        checks,
    }
}

/// Output of the `diamond` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiamondDocument {
    pub schema: String,
    /// `"kahler"` or `"surface"`.
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Full tables in Kähler mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<DimTables>,
    pub spade: Graded<i64>,
    /// Not available in surface mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub club: Option<Graded<i64>>,
}

/// Output of the `blowup` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupDocument {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<String>,
    pub report: InvarianceReport,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn row(label: &str, values: impl IntoIterator<Item = i64>) -> String {
    let cells: Vec<String> = values.into_iter().map(|x| x.to_string()).collect();
    format!("{label}: {}\n", cells.join(" "))
}

fn graded_row(label: &str, g: &Graded<i64>, ks: std::ops::RangeInclusive<i64>) -> String {
    row(label, ks.map(|k| g.get(k)))
}

fn check_line(c: &Check) -> String {
    let verdict = if c.passed { "PASS" } else { "FAIL" };
    let kind = match c.kind {
        CheckKind::Structural => "structural",
        CheckKind::Informational => "informational",
    };
    if c.detail.is_empty() {
        format!("{verdict} {} ({kind})\n", c.name)
    } else {
        format!("{verdict} {} ({kind}): {}\n", c.name, c.detail)
    }
}

fn diamond_block(title: &str, h: &[Vec<i64>], n: usize) -> String {
    let d = HodgeDiamond::new(n, h.to_vec());
    format!("{title}:\n{}", d.render())
}

/// Invariant tables in text form, degrees `1..=2n` in columns.
pub fn report_table(r: &InvariantReport) -> String {
    let n = r.n as i64;
    let ks = || 1..=2 * n;
    let mut out = String::new();
    out.push_str(&row("k", ks()));
    out.push_str(&graded_row("betti", &r.betti, ks()));
    out.push_str(&graded_row("hyper_c1", &r.hyper_c1, ks()));
    out.push_str(&graded_row("hyper_bc11", &r.hyper_bc11, ks()));
    out.push_str(&graded_row("spade", &r.spade, ks()));
    out.push_str(&graded_row("club", &r.club, ks()));
    out.push_str(&graded_row("nk_degree", &r.nk_degree, ks()));
    out.push('\n');
    out.push_str(&diamond_block("hodge", &r.hodge, r.n));
    out.push_str(&diamond_block("bott_chern", &r.bott_chern, r.n));
    out.push_str(&diamond_block("aeppli", &r.aeppli, r.n));
    out.push('\n');
    let _ = writeln!(out, "ddbar_lemma: {}", r.ddbar_lemma);
    let _ = writeln!(out, "frolicher_e1: {}", r.frolicher_e1);
    let e = &r.euler;
    let _ = writeln!(
        out,
        "euler: topological {} structure_sheaf {} truncated_c1 {} bott_chern_11 {}",
        e.topological, e.structure_sheaf, e.truncated_c1, e.bott_chern_11
    );
    out
}

fn map_block(title: &str, m: &MapRecord) -> String {
    let mut out = format!(
        "{title}: {} -> {}: rank {} ker {} coker {}\n",
        m.src, m.dst, m.rank, m.ker_dim, m.coker_dim
    );
    for g in &m.ker_generators {
        let _ = writeln!(out, "  ker {g}");
    }
    for g in &m.coker_generators {
        let _ = writeln!(out, "  coker {g}");
    }
    out
}

/// The whole result document in text form.
pub fn document_table(doc: &ResultDocument) -> String {
    let mut out = format!("model: {} (n = {})\n", doc.model.name, doc.model.n);
    if let Some(r) = &doc.tables {
        out.push('\n');
        out.push_str(&report_table(r));
    }
    if !doc.spaces.is_empty() {
        out.push('\n');
        for s in &doc.spaces {
            let _ = writeln!(out, "{}: dim {}", s.label, s.dim);
            for g in &s.generators {
                let _ = writeln!(out, "  {g}");
            }
        }
    }
    if !doc.maps.i.is_empty() || !doc.maps.c.is_empty() {
        out.push('\n');
        for (key, m) in &doc.maps.i {
            out.push_str(&map_block(&format!("I({key})"), m));
        }
        for (key, m) in &doc.maps.c {
            out.push_str(&map_block(&format!("C({key})"), m));
        }
    }
    out.push('\n');
    for c in &doc.checks {
        out.push_str(&check_line(c));
    }
    out
}

pub fn checks_text(checks: &[Check]) -> String {
    checks.iter().map(check_line).collect()
}

pub fn diamond_table(doc: &DiamondDocument) -> String {
    let mut out = format!("mode: {}\n", doc.mode);
    if let Some(name) = &doc.name {
        let _ = writeln!(out, "name: {name}");
    }
    let ks = doc.spade.degrees();
    out.push_str(&row("k", ks.clone()));
    if let Some(t) = &doc.tables {
        out.push_str(&row("betti", ks.clone().map(|k| t.betti_at(k))));
    }
    out.push_str(&graded_row("spade", &doc.spade, ks.clone()));
    if let Some(c) = &doc.club {
        out.push_str(&graded_row("club", c, ks));
    }
    out
}

pub fn blowup_table(doc: &BlowupDocument) -> String {
    let r = &doc.report;
    let ks = r.spade_before.degrees();
    let mut out = format!("codimension: {}\n", r.codimension);
    out.push_str(&row("k", ks.clone()));
    out.push_str(&graded_row("spade_before", &r.spade_before, ks.clone()));
    out.push_str(&graded_row("spade_after", &r.spade_after, ks.clone()));
    out.push_str(&graded_row("club_before", &r.club_before, ks.clone()));
    out.push_str(&graded_row("club_after", &r.club_after, ks));
    out.push_str(&row("betti_gain", r.betti_gain.iter().copied()));
    out.push_str(&checks_text(&r.checks));
    out
}
