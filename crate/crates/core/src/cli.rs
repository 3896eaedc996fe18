//! Line-oriented file formats and command dispatch for the `setext` binary.
//!
//! Files use 1-based vertex ids and `#` comments. Conversion to 0-based
//! indices happens only in the parsers and emitters below.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::constants::{
    cheeger, chemical_cheeger, down_cheeger, dual_cheeger_k, hypergraph_lagrangian, k_way_cheeger, maxcut,
    simplicial_cheeger, simplicial_h, CheegerReport,
};
use crate::error::{Error, Result};
use crate::extend::{diagonal, lovasz, multilinear};
use crate::linalg::symmetric_eigen;
use crate::scalar::{fmt_f64, fmt_rational, parse_rational, Rational};
use crate::setfn::{SetTupleFunction, SubsetMask};
use crate::spectra::{
    collatz_wielandt_max, dinkelbach_multistart, eigen_residual, quadratic_pair_spectrum, start_vectors,
    ternary_eigen_enumerate, ChemicalEnergy, HomogeneousFn, HomogeneousPair, RatioDcaParams, SubspaceProjection,
    WeightedPower,
};
use crate::structures::{
    boundary_matrix, ChemicalEdge, ChemicalHypergraph, SignedGraph, SimplicialComplex, SymmetricTensor,
    UniformHypergraph, WeightedGraph,
};
use crate::verify::{run_suites, tally, up_spectra, Suite, Verdict, VerificationReport};

// ---------------------------------------------------------------------------
// Input kinds

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Graph,
    SignedGraph,
    ChemicalHypergraph,
    UniformHypergraph,
    Tensor,
    Complex,
    SetfnTable,
}

impl InputKind {
    /// Kind implied by a file extension, if any.
    pub fn from_path(path: &Path) -> Option<InputKind> {
        let ext = path.extension()?.to_str()?;
        Some(match ext {
            "graph" => InputKind::Graph,
            "sgraph" | "signed" => InputKind::SignedGraph,
            "chem" => InputKind::ChemicalHypergraph,
            "hyper" | "uhg" => InputKind::UniformHypergraph,
            "tensor" => InputKind::Tensor,
            "complex" | "cx" => InputKind::Complex,
            "setfn" => InputKind::SetfnTable,
            _ => return None,
        })
    }
}

/// A set-function table with exact values when every entry parsed as a rational.
#[derive(Debug, Clone)]
pub enum SetfnTable {
    Exact(SetTupleFunction<Rational>),
    Float(SetTupleFunction<f64>),
}

impl SetfnTable {
    pub fn n(&self) -> usize {
        match self {
            SetfnTable::Exact(f) => f.n(),
            SetfnTable::Float(f) => f.n(),
        }
    }

    pub fn k(&self) -> usize {
        match self {
            SetfnTable::Exact(f) => f.k(),
            SetfnTable::Float(f) => f.k(),
        }
    }
}

impl PartialEq for SetfnTable {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SetfnTable::Exact(a), SetfnTable::Exact(b)) => a.n() == b.n() && a.k() == b.k() && a.table() == b.table(),
            (SetfnTable::Float(a), SetfnTable::Float(b)) => a.n() == b.n() && a.k() == b.k() && a.table() == b.table(),
            _ => false,
        }
    }
}

/// Any parsed input file.
#[derive(Debug, Clone, PartialEq)]
pub enum Structure {
    Graph(WeightedGraph),
    SignedGraph(SignedGraph),
    Chemical(ChemicalHypergraph),
    Uniform(UniformHypergraph),
    Tensor(SymmetricTensor),
    Complex(SimplicialComplex),
    Setfn(SetfnTable),
}

// ---------------------------------------------------------------------------
// Parsing

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn data_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let toks: Vec<&str> = l.split_whitespace().collect();
            (!toks.is_empty()).then_some((i + 1, toks))
        })
        .collect()
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| perr(line, format!("expected {what}, found '{tok}'")))
}

fn parse_f64(line: usize, tok: &str) -> Result<f64> {
    if let Ok(v) = tok.parse::<f64>() {
        return Ok(v);
    }
    match parse_rational(tok) {
        Some(r) => Ok(*r.numer() as f64 / *r.denom() as f64),
        None => Err(perr(line, format!("expected a number, found '{tok}'"))),
    }
}

/// 1-based vertex id to 0-based index, checked against `n`.
fn parse_vertex(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v = parse_usize(line, tok, "a vertex id")?;
    if v == 0 || v > n {
        return Err(perr(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn header_n(lines: &[(usize, Vec<&str>)]) -> Result<usize> {
    let (line, toks) = lines.first().ok_or_else(|| perr(1, "missing header"))?;
    if toks.len() != 1 {
        return Err(perr(*line, "header must be the vertex count"));
    }
    parse_usize(*line, toks[0], "the vertex count")
}

fn parse_edge_list(text: &str, signed: bool) -> Result<(usize, Vec<(usize, usize, f64)>)> {
    let lines = data_lines(text);
    let n = header_n(&lines)?;
    let mut edges = Vec::new();
    for (line, toks) in &lines[1..] {
        if toks.len() != 2 && toks.len() != 3 {
            return Err(perr(*line, "expected 'i j [w]'"));
        }
        let i = parse_vertex(*line, toks[0], n)?;
        let j = parse_vertex(*line, toks[1], n)?;
        if i == j {
            return Err(perr(*line, "loops are not allowed"));
        }
        let w = match toks.get(2) {
            Some(t) => parse_f64(*line, t)?,
            None => 1.0,
        };
        if !w.is_finite() || (!signed && w < 0.0) {
            return Err(perr(*line, format!("bad weight {w}")));
        }
        edges.push((i, j, w));
    }
    Ok((n, edges))
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let (n, edges) = parse_edge_list(text, false)?;
    WeightedGraph::from_edges(n, &edges)
}

pub fn parse_signed_graph(text: &str) -> Result<SignedGraph> {
    let (n, edges) = parse_edge_list(text, true)?;
    SignedGraph::from_edges(n, &edges)
}

fn parse_side(line: usize, body: &str, n: usize) -> Result<SubsetMask> {
    let mut idx = Vec::new();
    for t in body.split_whitespace() {
        idx.push(parse_vertex(line, t, n)?);
    }
    if idx.is_empty() {
        return Err(perr(line, "empty side"));
    }
    Ok(SubsetMask::from_indices(&idx))
}

pub fn parse_chemical(text: &str) -> Result<ChemicalHypergraph> {
    let lines = data_lines(text);
    let n = header_n(&lines)?;
    if n == 0 || n > 24 {
        return Err(perr(lines[0].0, format!("vertex count {n} not in 1..=24")));
    }
    let mut edges = Vec::new();
    for (line, toks) in &lines[1..] {
        let joined = toks.join(" ");
        let (a, b) = joined.split_once('|').ok_or_else(|| perr(*line, "expected 'in: ... | out: ...'"))?;
        let a = a.trim().strip_prefix("in:").ok_or_else(|| perr(*line, "missing 'in:'"))?;
        let b = b.trim().strip_prefix("out:").ok_or_else(|| perr(*line, "missing 'out:'"))?;
        let e = ChemicalEdge { input: parse_side(*line, a, n)?, output: parse_side(*line, b, n)? };
        if e.input.union(e.output).len() < 2 {
            return Err(perr(*line, "edge touches fewer than two vertices"));
        }
        edges.push(e);
    }
    ChemicalHypergraph::new(n, edges)
}

/// Header `k` or `k n`; without `n` the vertex count is the largest id.
pub fn parse_uniform(text: &str) -> Result<UniformHypergraph> {
    let lines = data_lines(text);
    let (hline, head) = lines.first().ok_or_else(|| perr(1, "missing header"))?;
    if head.len() > 2 {
        return Err(perr(*hline, "header must be 'k' or 'k n'"));
    }
    let k = parse_usize(*hline, head[0], "the edge size")?;
    let mut raw = Vec::new();
    for (line, toks) in &lines[1..] {
        if toks.len() != k {
            return Err(perr(*line, format!("expected {k} vertices")));
        }
        let ids = toks.iter().map(|t| parse_usize(*line, t, "a vertex id")).collect::<Result<Vec<_>>>()?;
        if ids.contains(&0) {
            return Err(perr(*line, "vertex ids start at 1"));
        }
        let mut s = ids.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != k {
            return Err(perr(*line, "repeated vertex"));
        }
        raw.push((*line, ids));
    }
    let max_id = raw.iter().flat_map(|(_, e)| e.iter().copied()).max().unwrap_or(0);
    let n = match head.get(1) {
        Some(t) => {
            let n = parse_usize(*hline, t, "the vertex count")?;
            if let Some((line, _)) = raw.iter().find(|(_, e)| e.iter().any(|&v| v > n)) {
                return Err(perr(*line, format!("vertex outside 1..={n}")));
            }
            n
        }
        None => max_id,
    };
    let edges = raw.into_iter().map(|(_, e)| e.into_iter().map(|v| v - 1).collect()).collect();
    UniformHypergraph::new(n, k, edges)
}

/// Header `k n`; each entry line sets every permutation of its index tuple.
pub fn parse_tensor(text: &str) -> Result<SymmetricTensor> {
    let lines = data_lines(text);
    let (hline, head) = lines.first().ok_or_else(|| perr(1, "missing header"))?;
    if head.len() != 2 {
        return Err(perr(*hline, "header must be 'k n'"));
    }
    let k = parse_usize(*hline, head[0], "the order")?;
    let n = parse_usize(*hline, head[1], "the dimension")?;
    let mut t = SymmetricTensor::new(k, n).map_err(|e| perr(*hline, e.to_string()))?;
    for (line, toks) in &lines[1..] {
        if toks.len() != k + 1 {
            return Err(perr(*line, format!("expected {k} indices and a value")));
        }
        let idx = toks[..k].iter().map(|s| parse_vertex(*line, s, n)).collect::<Result<Vec<_>>>()?;
        let v = parse_f64(*line, toks[k])?;
        t.set(&idx, v).map_err(|e| perr(*line, e.to_string()))?;
    }
    Ok(t)
}

/// Maximal simplices one per line; the vertex count is the largest id.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let lines = data_lines(text);
    let mut facets = Vec::new();
    for (line, toks) in &lines {
        let ids = toks.iter().map(|t| parse_usize(*line, t, "a vertex id")).collect::<Result<Vec<_>>>()?;
        if ids.contains(&0) {
            return Err(perr(*line, "vertex ids start at 1"));
        }
        let mut s = ids.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != ids.len() {
            return Err(perr(*line, "repeated vertex in a simplex"));
        }
        facets.push(ids.into_iter().map(|v| v - 1).collect::<Vec<_>>());
    }
    let n = facets.iter().flat_map(|f| f.iter().map(|v| v + 1)).max().unwrap_or(0);
    SimplicialComplex::from_facets(n, &facets)
}

/// Header `k n`; lines hold `k` decimal bitmasks and a value. Unlisted
/// tuples are zero.
pub fn parse_setfn(text: &str) -> Result<SetfnTable> {
    let lines = data_lines(text);
    let (hline, head) = lines.first().ok_or_else(|| perr(1, "missing header"))?;
    if head.len() != 2 {
        return Err(perr(*hline, "header must be 'k n'"));
    }
    let k = parse_usize(*hline, head[0], "the arity")?;
    let n = parse_usize(*hline, head[1], "the ground set size")?;
    if k == 0 || n == 0 || n * k > 24 {
        return Err(perr(*hline, format!("need k, n >= 1 and k*n <= 24, got k={k} n={n}")));
    }
    let mut rows: Vec<(usize, usize, &str)> = Vec::new();
    for (line, toks) in &lines[1..] {
        if toks.len() != k + 1 {
            return Err(perr(*line, format!("expected {k} bitmasks and a value")));
        }
        let mut idx = 0usize;
        for (l, t) in toks[..k].iter().enumerate() {
            let m: u64 = t.parse().map_err(|_| perr(*line, format!("bad bitmask '{t}'")))?;
            if m >> n != 0 {
                return Err(perr(*line, format!("bitmask {m} outside a ground set of size {n}")));
            }
            idx |= (m as usize) << (l * n);
        }
        rows.push((*line, idx, toks[k]));
    }
    let size = 1usize << (n * k);
    let exact: Option<Vec<Rational>> = rows.iter().map(|(_, _, v)| parse_rational(v)).collect();
    match exact {
        Some(vals) => {
            let mut table = vec![Rational::from_integer(0); size];
            for ((_, idx, _), v) in rows.iter().zip(vals) {
                table[*idx] = v;
            }
            Ok(SetfnTable::Exact(SetTupleFunction::from_table(n, k, table)?))
        }
        None => {
            let mut table = vec![0.0; size];
            for (line, idx, v) in &rows {
                table[*idx] = parse_f64(*line, v)?;
            }
            Ok(SetfnTable::Float(SetTupleFunction::from_table(n, k, table)?))
        }
    }
}

pub fn parse_structure(text: &str, kind: InputKind) -> Result<Structure> {
    Ok(match kind {
        InputKind::Graph => Structure::Graph(parse_graph(text)?),
        InputKind::SignedGraph => Structure::SignedGraph(parse_signed_graph(text)?),
        InputKind::ChemicalHypergraph => Structure::Chemical(parse_chemical(text)?),
        InputKind::UniformHypergraph => Structure::Uniform(parse_uniform(text)?),
        InputKind::Tensor => Structure::Tensor(parse_tensor(text)?),
        InputKind::Complex => Structure::Complex(parse_complex(text)?),
        InputKind::SetfnTable => Structure::Setfn(parse_setfn(text)?),
    })
}

pub fn parse_input(path: &Path, kind: InputKind) -> Result<Structure> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_structure(&text, kind)
}

// ---------------------------------------------------------------------------
// Emitting

fn ids(m: SubsetMask) -> String {
    m.indices().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn emit_edges(n: usize, edges: &[(usize, usize, f64)]) -> String {
    let mut s = format!("{n}\n");
    for &(i, j, w) in edges {
        let _ = writeln!(s, "{} {} {}", i + 1, j + 1, w);
    }
    s
}

pub fn emit_graph(g: &WeightedGraph) -> String {
    emit_edges(g.n(), &g.edges())
}

pub fn emit_signed_graph(g: &SignedGraph) -> String {
    emit_edges(g.n(), &g.edges())
}

pub fn emit_chemical(h: &ChemicalHypergraph) -> String {
    let mut s = format!("{}\n", h.n());
    for e in h.edges() {
        let _ = writeln!(s, "in: {} | out: {}", ids(e.input), ids(e.output));
    }
    s
}

pub fn emit_uniform(h: &UniformHypergraph) -> String {
    let mut s = format!("{} {}\n", h.k(), h.n());
    for e in h.edges() {
        let _ = writeln!(s, "{}", e.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" "));
    }
    s
}

pub fn emit_tensor(t: &SymmetricTensor) -> String {
    let mut s = format!("{} {}\n", t.order(), t.dim());
    for (idx, v) in t.entries() {
        let _ = writeln!(s, "{} {}", idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" "), v);
    }
    s
}

pub fn emit_complex(k: &SimplicialComplex) -> String {
    let mut s = String::new();
    for f in k.facets() {
        let _ = writeln!(s, "{}", f.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" "));
    }
    s
}

/// Float tables are written in exponent form so that they parse back as floats.
pub fn emit_setfn(f: &SetfnTable) -> String {
    let (n, k) = (f.n(), f.k());
    let mut s = format!("{k} {n}\n");
    let mask = (1usize << n) - 1;
    let masks = |idx: usize| (0..k).map(|l| ((idx >> (l * n)) & mask).to_string()).collect::<Vec<_>>().join(" ");
    match f {
        SetfnTable::Exact(f) => {
            for (idx, v) in f.table().unwrap_or(&[]).iter().enumerate() {
                if *v != Rational::from_integer(0) {
                    let _ = writeln!(s, "{} {}", masks(idx), fmt_rational(v));
                }
            }
        }
        SetfnTable::Float(f) => {
            for (idx, v) in f.table().unwrap_or(&[]).iter().enumerate() {
                if idx == 0 || *v != 0.0 {
                    let _ = writeln!(s, "{} {:e}", masks(idx), v);
                }
            }
        }
    }
    s
}

pub fn emit_structure(s: &Structure) -> String {
    match s {
        Structure::Graph(g) => emit_graph(g),
        Structure::SignedGraph(g) => emit_signed_graph(g),
        Structure::Chemical(h) => emit_chemical(h),
        Structure::Uniform(h) => emit_uniform(h),
        Structure::Tensor(t) => emit_tensor(t),
        Structure::Complex(k) => emit_complex(k),
        Structure::Setfn(f) => emit_setfn(f),
    }
}

// ---------------------------------------------------------------------------
// Command line

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExtensionKind {
    Lovasz,
    Multilinear,
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumMode {
    Quadratic,
    Dinkelbach,
    Ternary,
    TensorCw,
}

/// `lap`/`signless` are the normalized p-Laplacian pairs (`p = 2` unless
/// `--p` is given); `onelap`/`signless-one` fix `p = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairKind {
    Lap,
    Signless,
    Onelap,
    SignlessOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheegerKind {
    Plain,
    Kway,
    Dual,
    Chemical,
    Simplicial,
    Multiset,
    Down,
}

/// Run configuration: one command plus shared flags.
#[derive(Debug, Clone, Parser)]
#[command(name = "setext", version, about = "Set-function extensions, homogeneous spectra and brute-force checks")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Input file; the format follows the extension unless --kind is given.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub kind: Option<InputKind>,
    /// Homogeneity exponent, at least 1.
    #[arg(long, global = true)]
    pub p: Option<f64>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub iters: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate an extension of a set-function table at a point.
    ExtendEval {
        #[arg(long = "ext", value_enum, default_value_t = ExtensionKind::Multilinear)]
        ext: ExtensionKind,
        /// One comma-separated vector per component; entries may be p/q.
        #[arg(long = "x", required = true)]
        x: Vec<String>,
    },
    /// Eigenvalues of a homogeneous pair.
    Spectrum {
        #[arg(long, value_enum)]
        mode: SpectrumMode,
        #[arg(long, value_enum, default_value_t = PairKind::Lap)]
        pair: PairKind,
    },
    /// Cheeger constants by exhaustive enumeration.
    Cheeger {
        #[arg(long, value_enum, default_value_t = CheegerKind::Plain)]
        variant: CheegerKind,
        /// Simplex dimension for the simplicial variants.
        #[arg(long, default_value_t = 0)]
        d: usize,
        /// Multiplicity bound for the multiset and down variants.
        #[arg(long = "multiplicity", default_value_t = 1)]
        multiplicity: usize,
    },
    /// Maximum cut by enumeration, with the continuous form sampled.
    Maxcut,
    /// Lagrangian of a uniform hypergraph.
    Lagrangian,
    /// Up-Laplacian and anti-signed spectra of a simplicial complex.
    ComplexSpec {
        #[arg(long, default_value_t = 0)]
        d: usize,
    },
    /// Run verification suites.
    Verify {
        /// Suite name, `inequalities` or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// What a command printed and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Field {
    Num(f64),
    Exact(Rational),
    Int(u64),
    Bool(bool),
    Text(String),
    /// Ascending values printed with braces.
    Set(Vec<f64>),
    /// Values in order printed with brackets.
    List(Vec<f64>),
    Sets(Vec<SubsetMask>),
}

struct Record {
    command: &'static str,
    fields: Vec<(&'static str, Field)>,
    reports: Option<Vec<VerificationReport>>,
    code: i32,
}

impl Record {
    fn new(command: &'static str) -> Self {
        Record { command, fields: Vec::new(), reports: None, code: 0 }
    }

    fn with(mut self, key: &'static str, v: Field) -> Self {
        self.fields.push((key, v));
        self
    }
}

fn num_json(v: f64) -> Value {
    if v.is_finite() {
        let rounded: f64 = fmt_f64(v).parse().unwrap_or(v);
        serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
    } else {
        Value::String(fmt_f64(v))
    }
}

/// Zeroes eigenvalues at rounding level relative to the largest one.
fn snap(values: Vec<f64>) -> Vec<f64> {
    let scale = values.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    values.into_iter().map(|v| if v.abs() <= 1e-12 * scale { 0.0 } else { v }).collect()
}

fn set_text(m: SubsetMask) -> String {
    format!("{{{}}}", m.indices().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(", "))
}

fn list_text(v: &[f64]) -> String {
    v.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(", ")
}

impl Field {
    fn text(&self) -> String {
        match self {
            Field::Num(v) => fmt_f64(*v),
            Field::Exact(r) => fmt_rational(r),
            Field::Int(v) => v.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
            Field::Set(v) => format!("{{{}}}", list_text(v)),
            Field::List(v) => format!("[{}]", list_text(v)),
            Field::Sets(s) => s.iter().map(|m| set_text(*m)).collect::<Vec<_>>().join(" "),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Num(v) => num_json(*v),
            Field::Exact(r) => Value::String(fmt_rational(r)),
            Field::Int(v) => Value::from(*v),
            Field::Bool(b) => Value::Bool(*b),
            Field::Text(s) => Value::String(s.clone()),
            Field::Set(v) | Field::List(v) => Value::Array(v.iter().map(|x| num_json(*x)).collect()),
            Field::Sets(s) => Value::Array(
                s.iter().map(|m| Value::Array(m.indices().map(|i| Value::from(i as u64 + 1)).collect())).collect(),
            ),
        }
    }
}

fn render(rec: &Record, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = String::new();
            for (k, v) in &rec.fields {
                let _ = writeln!(s, "{k}: {}", v.text());
            }
            if let Some(reports) = &rec.reports {
                for r in reports {
                    let tag = match r.verdict {
                        Verdict::Pass => "PASS",
                        Verdict::Fail => "FAIL",
                        Verdict::Skip => "SKIP",
                    };
                    let rel = match r.relation {
                        crate::verify::Relation::Eq => "=",
                        crate::verify::Relation::Le => "<=",
                        crate::verify::Relation::Ge => ">=",
                        crate::verify::Relation::Lt => "<",
                    };
                    let _ = writeln!(
                        s,
                        "{tag} {}  {} {rel} {}  gap={} tol={}",
                        r.id,
                        fmt_f64(r.lhs),
                        fmt_f64(r.rhs),
                        fmt_f64(r.gap),
                        fmt_f64(r.tolerance)
                    );
                }
                let (p, f, k) = tally(reports);
                let _ = writeln!(s, "pass: {p}  fail: {f}  skip: {k}");
            }
            s
        }
        Format::Json => {
            let mut m = Map::new();
            m.insert("command".into(), Value::String(rec.command.into()));
            for (k, v) in &rec.fields {
                m.insert((*k).into(), v.json());
            }
            if let Some(reports) = &rec.reports {
                let (p, f, k) = tally(reports);
                m.insert("pass".into(), Value::from(p as u64));
                m.insert("fail".into(), Value::from(f as u64));
                m.insert("skip".into(), Value::from(k as u64));
                m.insert("reports".into(), serde_json::to_value(reports).unwrap_or(Value::Null));
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(m)).unwrap_or_default();
            s.push('\n');
            s
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Cap(_) => 2,
        Error::NoConvergence(_) => 3,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                RunOutput { stdout: text, stderr: String::new(), code }
            } else {
                RunOutput { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

/// Exit code 0 iff the command succeeded and no verdict failed; 2 when a
/// cap is exceeded; 3 when a solver did not converge.
pub fn run(cfg: &RunConfig) -> RunOutput {
    match dispatch(cfg) {
        Ok(rec) => RunOutput { stdout: render(&rec, cfg.format), stderr: String::new(), code: rec.code },
        Err(e) => RunOutput { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(&e) },
    }
}

impl RunConfig {
    fn p(&self, default: f64) -> Result<f64> {
        let p = self.p.unwrap_or(default);
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::Invalid(format!("p must be finite and at least 1, got {p}")));
        }
        Ok(p)
    }

    fn load(&self, default: InputKind) -> Result<Structure> {
        let path = self.input.as_ref().ok_or_else(|| Error::Invalid("--input is required".into()))?;
        let kind = self.kind.or_else(|| InputKind::from_path(path)).unwrap_or(default);
        parse_input(path, kind)
    }
}

fn wrong_kind(expected: &str) -> Error {
    Error::Invalid(format!("this command needs a {expected} input"))
}

fn dispatch(cfg: &RunConfig) -> Result<Record> {
    match &cfg.command {
        Command::ExtendEval { ext, x } => extend_eval(cfg, *ext, x),
        Command::Spectrum { mode, pair } => spectrum(cfg, *mode, *pair),
        Command::Cheeger { variant, d, multiplicity } => cheeger_cmd(cfg, *variant, *d, *multiplicity),
        Command::Maxcut => {
            let g = match cfg.load(InputKind::Graph)? {
                Structure::Graph(g) => g,
                _ => return Err(wrong_kind("graph")),
            };
            let r = maxcut(&g, cfg.iters.unwrap_or(2000), cfg.seed)?;
            Ok(Record::new("maxcut")
                .with("value", Field::Num(r.value))
                .with("side", Field::Sets(vec![r.side]))
                .with("sample_max", Field::Num(r.sample_max))
                .with("witness_value", Field::Num(r.witness_value)))
        }
        Command::Lagrangian => {
            let h = match cfg.load(InputKind::UniformHypergraph)? {
                Structure::Uniform(h) => h,
                Structure::Graph(g) => UniformHypergraph::from_graph(&g),
                _ => return Err(wrong_kind("uniform hypergraph")),
            };
            let r = hypergraph_lagrangian(&h, cfg.iters.unwrap_or(32), cfg.seed)?;
            Ok(Record::new("lagrangian")
                .with("discrete", Field::Num(r.discrete))
                .with("discrete_set", Field::Sets(vec![r.discrete_set]))
                .with("continuous", Field::Num(r.continuous))
                .with("clique_hypergraph", Field::Bool(r.clique_hypergraph)))
        }
        Command::ComplexSpec { d } => complex_spec(cfg, *d),
        Command::Verify { suite } => {
            let suites =
                Suite::parse_selector(suite).ok_or_else(|| Error::Invalid(format!("unknown suite '{suite}'")))?;
            let reports = run_suites(&suites, cfg.seed)?;
            let (_, fail, _) = tally(&reports);
            let mut rec = Record::new("verify").with("suite", Field::Text(suite.clone()));
            rec.code = if fail == 0 { 0 } else { 1 };
            rec.reports = Some(reports);
            Ok(rec)
        }
    }
}

fn parse_point_f64(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|t| parse_f64(0, t.trim()).map_err(|_| Error::Invalid(format!("bad coordinate '{t}'")))).collect()
}

fn parse_point_exact(s: &str) -> Option<Vec<Rational>> {
    s.split(',').map(|t| parse_rational(t.trim())).collect()
}

fn extend_eval(cfg: &RunConfig, ext: ExtensionKind, x: &[String]) -> Result<Record> {
    let table = match cfg.load(InputKind::SetfnTable)? {
        Structure::Setfn(t) => t,
        _ => return Err(wrong_kind("set-function table")),
    };
    let need = match ext {
        ExtensionKind::Multilinear => table.k(),
        ExtensionKind::Lovasz | ExtensionKind::Diagonal => 1,
    };
    if x.len() != need {
        return Err(Error::Arity { expected: need, got: x.len() });
    }
    if ext == ExtensionKind::Lovasz && table.k() != 1 {
        return Err(Error::Invalid("the Lovász extension needs a table with k = 1".into()));
    }
    let rec = Record::new("extend-eval");
    if let SetfnTable::Exact(f) = &table {
        if let Some(xs) = x.iter().map(|s| parse_point_exact(s)).collect::<Option<Vec<_>>>() {
            let v = match ext {
                ExtensionKind::Multilinear => multilinear(f, &xs)?,
                ExtensionKind::Lovasz => lovasz(f, &xs[0])?,
                ExtensionKind::Diagonal => diagonal(f, &xs[0])?,
            };
            return Ok(rec.with("value", Field::Exact(v)).with("exact", Field::Bool(true)));
        }
    }
    let f = match &table {
        SetfnTable::Exact(f) => f.to_f64(),
        SetfnTable::Float(f) => f.clone(),
    };
    let xs = x.iter().map(|s| parse_point_f64(s)).collect::<Result<Vec<_>>>()?;
    let v = match ext {
        ExtensionKind::Multilinear => multilinear(&f, &xs)?,
        ExtensionKind::Lovasz => lovasz(&f, &xs[0])?,
        ExtensionKind::Diagonal => diagonal(&f, &xs[0])?,
    };
    Ok(rec.with("value", Field::Num(v)).with("exact", Field::Bool(false)))
}

fn graph_pair(s: &Structure, pair: PairKind, p: f64) -> Result<HomogeneousPair> {
    match (s, pair) {
        (Structure::Graph(g), PairKind::Lap | PairKind::Onelap) => HomogeneousPair::graph_p_laplacian(g, p, true),
        (Structure::Graph(g), PairKind::Signless | PairKind::SignlessOne) => {
            HomogeneousPair::signless_p_laplacian(g, p, true)
        }
        (Structure::SignedGraph(g), _) => HomogeneousPair::signed_p_laplacian(g, p, true),
        _ => Err(wrong_kind("graph or signed graph")),
    }
}

fn spectrum(cfg: &RunConfig, mode: SpectrumMode, pair: PairKind) -> Result<Record> {
    let one = matches!(pair, PairKind::Onelap | PairKind::SignlessOne);
    match mode {
        SpectrumMode::Quadratic => {
            if one {
                return Err(Error::Invalid("quadratic mode needs --pair lap or signless".into()));
            }
            let s = cfg.load(InputKind::Graph)?;
            let hp = graph_pair(&s, pair, 2.0)?;
            let (a, b) = hp.quadratic_matrices().ok_or_else(|| Error::Invalid("pair is not quadratic".into()))?;
            let eig = quadratic_pair_spectrum(&a, &b)?;
            Ok(Record::new("spectrum")
                .with("mode", Field::Text("quadratic".into()))
                .with("eigenvalues", Field::List(snap(eig.values))))
        }
        SpectrumMode::Ternary => {
            let s = cfg.load(InputKind::Graph)?;
            if !one && !matches!(s, Structure::SignedGraph(_)) {
                return Err(Error::Invalid("ternary mode needs --pair onelap or signless-one".into()));
            }
            let hp = graph_pair(&s, pair, 1.0)?;
            let r = ternary_eigen_enumerate(&hp, cfg.tol.unwrap_or(1e-9))?;
            Ok(Record::new("spectrum")
                .with("mode", Field::Text("ternary".into()))
                .with("eigenvalues", Field::Set(r.eigenvalues))
                .with("checked", Field::Int(r.checked as u64))
                .with("exact_domain", Field::Bool(r.exact_domain)))
        }
        SpectrumMode::Dinkelbach => {
            let p = if one { 1.0 } else { cfg.p(2.0)? };
            let s = cfg.load(InputKind::Graph)?;
            let (hp, degrees) = match &s {
                Structure::Chemical(h) => (HomogeneousPair::chemical_p_laplacian(h, p)?, h.degrees()),
                Structure::Graph(g) => (graph_pair(&s, pair, p)?, g.degrees()),
                Structure::SignedGraph(g) => (graph_pair(&s, pair, p)?, g.degrees()),
                _ => return Err(wrong_kind("graph or chemical hypergraph")),
            };
            let n = hp.dim();
            if degrees.iter().any(|d| *d <= 0.0) {
                return Err(Error::Invalid("every vertex needs positive degree".into()));
            }
            let f1: Arc<dyn HomogeneousFn> = match &s {
                Structure::Chemical(h) => Arc::new(ChemicalEnergy::new(h.clone(), p)?),
                _ => hp.f.clone(),
            };
            let g = WeightedPower::new(degrees, p)?;
            let proj = match (&s, pair) {
                (Structure::Graph(_) | Structure::Chemical(_), PairKind::Lap | PairKind::Onelap) => {
                    SubspaceProjection::constants(g)
                }
                _ => SubspaceProjection::trivial(g),
            };
            let params = RatioDcaParams {
                max_iter: cfg.iters.unwrap_or(500),
                rtol: cfg.tol.unwrap_or(1e-12),
                ..RatioDcaParams::default()
            };
            let starts = start_vectors(n, 16, cfg.seed);
            let run = dinkelbach_multistart(&f1, None, &proj, &starts, &params)?;
            let lambda = run.estimate.lambda;
            let residual = eigen_residual(&hp, lambda, &run.estimate.x).unwrap_or(f64::NAN);
            let mut rec = Record::new("spectrum")
                .with("mode", Field::Text("dinkelbach".into()))
                .with("p", Field::Num(p))
                .with("lambda", Field::Num(lambda))
                .with("eigenvector", Field::List(run.estimate.x.clone()))
                .with("residual", Field::Num(residual))
                .with("steps", Field::Int(run.ratios.len() as u64))
                .with("converged", Field::Bool(run.converged));
            if !run.converged {
                rec.code = 3;
            }
            Ok(rec)
        }
        SpectrumMode::TensorCw => {
            let t = match cfg.load(InputKind::Tensor)? {
                Structure::Tensor(t) => t,
                _ => return Err(wrong_kind("tensor")),
            };
            let d = vec![1.0; t.dim()];
            let r = collatz_wielandt_max(&t, &d, cfg.tol.unwrap_or(1e-12), cfg.iters.unwrap_or(100_000))?;
            let mut rec = Record::new("spectrum")
                .with("mode", Field::Text("tensor-cw".into()))
                .with("lambda", Field::Num(r.lambda))
                .with("lower", Field::Num(r.lower))
                .with("upper", Field::Num(r.upper))
                .with("eigenvector", Field::List(r.x.clone()))
                .with("iterations", Field::Int(r.iterations as u64))
                .with("converged", Field::Bool(r.converged));
            if !r.converged {
                rec.code = 3;
            }
            Ok(rec)
        }
    }
}

fn cheeger_record(r: &CheegerReport) -> Record {
    Record::new("cheeger")
        .with("value", Field::Num(r.value))
        .with("sets", Field::Sets(r.sets.clone()))
        .with("enumerated", Field::Int(r.enumerated))
}

fn cheeger_cmd(cfg: &RunConfig, variant: CheegerKind, d: usize, mult: usize) -> Result<Record> {
    let k = cfg.k.unwrap_or(2);
    match variant {
        CheegerKind::Plain | CheegerKind::Kway | CheegerKind::Dual => {
            let g = match cfg.load(InputKind::Graph)? {
                Structure::Graph(g) => g,
                _ => return Err(wrong_kind("graph")),
            };
            let r = match variant {
                CheegerKind::Plain => cheeger(&g)?,
                CheegerKind::Kway => k_way_cheeger(&g, k)?,
                _ => dual_cheeger_k(&g, k)?,
            };
            Ok(cheeger_record(&r))
        }
        CheegerKind::Chemical => {
            let h = match cfg.load(InputKind::ChemicalHypergraph)? {
                Structure::Chemical(h) => h,
                Structure::Graph(g) => ChemicalHypergraph::from_graph(&g)?,
                _ => return Err(wrong_kind("chemical hypergraph")),
            };
            Ok(cheeger_record(&chemical_cheeger(&h)?))
        }
        CheegerKind::Simplicial | CheegerKind::Multiset | CheegerKind::Down => {
            let kc = match cfg.load(InputKind::Complex)? {
                Structure::Complex(kc) => kc,
                _ => return Err(wrong_kind("simplicial complex")),
            };
            match variant {
                CheegerKind::Simplicial => Ok(cheeger_record(&simplicial_cheeger(&kc, d, k)?)),
                CheegerKind::Down => Ok(cheeger_record(&down_cheeger(&kc, d, mult)?)),
                _ => {
                    let r = simplicial_h(&kc, d, &[mult])?;
                    let r = r.first().ok_or_else(|| Error::Invalid("no multiset result".into()))?;
                    let witness: Vec<f64> = r.witness.iter().map(|v| *v as f64).collect();
                    Ok(Record::new("cheeger")
                        .with("value", Field::Num(r.value))
                        .with("witness", Field::List(witness))
                        .with("enumerated", Field::Int(r.enumerated)))
                }
            }
        }
    }
}

fn complex_spec(cfg: &RunConfig, d: usize) -> Result<Record> {
    let kc = match cfg.load(InputKind::Complex)? {
        Structure::Complex(kc) => kc,
        _ => return Err(wrong_kind("simplicial complex")),
    };
    let dim = kc.dim().unwrap_or(0);
    if d >= dim {
        return Err(Error::Invalid(format!("need d < dim K = {dim}")));
    }
    let b = boundary_matrix(&kc, d + 1)?.to_f64();
    let up = b.mul(&b.transpose());
    let vals = symmetric_eigen(&up)?.values;
    let scale = 1.0 + vals.last().copied().unwrap_or(0.0);
    let zeros = vals.iter().filter(|v| v.abs() <= 1e-9 * scale).count();
    let sp = up_spectra(&kc, d)?;
    let counts: Vec<f64> = (0..=dim).map(|i| kc.count(i) as f64).collect();
    Ok(Record::new("complex-spec")
        .with("f_vector", Field::List(counts))
        .with("up_laplacian", Field::List(snap(vals)))
        .with("zero_multiplicity", Field::Int(zeros as u64))
        .with("normalized_up", Field::List(snap(sp.up)))
        .with("anti_signed", Field::List(snap(sp.anti)))
        .with("identity_gap", Field::Num(sp.identity_gap))
        .with("top_multiplicity", Field::Int(sp.top_multiplicity as u64))
        .with("balanced_components", Field::Int(sp.balanced as u64)))
}

#[cfg(test)]
fn sample(lines: &[&str]) -> String {
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{random_chemical_hypergraph, random_two_complex, seeded_rng};
    use rand::Rng;

    #[test]
    fn path_graph_example() {
        let g = parse_graph(&sample(&["3", "1 2 1", "2 3 1"])).unwrap();
        assert_eq!(g, WeightedGraph::path(3));
    }

    #[test]
    fn triangle_closure() {
        let k = parse_complex("1 2 3\n").unwrap();
        assert_eq!(k.count(0), 3);
        assert_eq!(k.count(1), 3);
        assert_eq!(k.count(2), 1);
    }

    #[test]
    fn tensor_symmetrization() {
        let t = parse_tensor(&sample(&["3 3", "1 2 3 1.0"])).unwrap();
        assert_eq!(t.implicit_entries(), 6);
        assert_eq!(t.get(&[2, 0, 1]).unwrap(), 1.0);
    }

    #[test]
    fn comments_and_line_numbers() {
        let g = parse_graph("# header\n3\n1 2 # edge\n\n2 3 0.5\n").unwrap();
        assert_eq!(g.weight(1, 2), 0.5);
        match parse_graph("3\n1 2\n1 4\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_complex("1 2 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_chemical("3\nin: 1 2 out: 3\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn setfn_mode_detection() {
        let f = parse_setfn("1 2\n1 1/2\n3 1\n").unwrap();
        let SetfnTable::Exact(f) = f else { panic!("expected exact table") };
        assert_eq!(f.get(&[SubsetMask(1)]), Rational::new(1, 2));
        let f = parse_setfn("1 2\n1 1e-3\n").unwrap();
        assert!(matches!(f, SetfnTable::Float(_)));
    }

    #[test]
    fn round_trips() {
        let rng = &mut seeded_rng(7, 0);
        for _ in 0..20 {
            let n = rng.gen_range(3..=7);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.5) {
                        edges.push((i, j, rng.gen_range(0.1..3.0)));
                    }
                }
            }
            let g = WeightedGraph::from_edges(n, &edges).unwrap();
            assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
            let signed: Vec<_> =
                edges.iter().map(|&(i, j, w)| (i, j, if rng.gen_bool(0.5) { w } else { -w })).collect();
            let sg = SignedGraph::from_edges(n, &signed).unwrap();
            assert_eq!(parse_signed_graph(&emit_signed_graph(&sg)).unwrap(), sg);
            let h = random_chemical_hypergraph(n, n, rng);
            assert_eq!(parse_chemical(&emit_chemical(&h)).unwrap(), h);
            let kc = random_two_complex(n, rng);
            assert_eq!(parse_complex(&emit_complex(&kc)).unwrap(), kc);
            let u = UniformHypergraph::new(n + 1, 3, vec![vec![0, 1, 2], vec![1, n - 1, n]]).unwrap();
            assert_eq!(parse_uniform(&emit_uniform(&u)).unwrap(), u);
            let mut t = SymmetricTensor::new(3, n).unwrap();
            for _ in 0..5 {
                let idx: Vec<usize> = (0..3).map(|_| rng.gen_range(0..n)).collect();
                t.set(&idx, rng.gen_range(-2.0..2.0)).unwrap();
            }
            assert_eq!(parse_tensor(&emit_tensor(&t)).unwrap(), t);
            let k = rng.gen_range(1..=2);
            let m = rng.gen_range(1..=4);
            let exact = SetfnTable::Exact(
                SetTupleFunction::tabulate(m, k, |_| Rational::new(rng.gen_range(-5..5), rng.gen_range(1..4))).unwrap(),
            );
            assert_eq!(parse_setfn(&emit_setfn(&exact)).unwrap(), exact);
            let float = SetfnTable::Float(
                SetTupleFunction::tabulate(m, k, |_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(-1.0..1.0) })
                    .unwrap(),
            );
            assert_eq!(parse_setfn(&emit_setfn(&float)).unwrap(), float);
        }
    }

    #[test]
    fn zero_float_table_stays_float() {
        let f = SetfnTable::Float(SetTupleFunction::tabulate(2, 1, |_| 0.5).unwrap());
        assert_eq!(parse_setfn(&emit_setfn(&f)).unwrap(), f);
        let z = SetfnTable::Float(SetTupleFunction::tabulate(2, 1, |_| 0.0).unwrap());
        assert_eq!(parse_setfn(&emit_setfn(&z)).unwrap(), z);
    }

    #[test]
    fn p_below_one_rejected() {
        let out = run_args(["setext", "spectrum", "--mode", "dinkelbach", "--p", "0.5", "--input", "x.graph"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("p must be"), "{}", out.stderr);
    }

    #[test]
    fn unknown_command_exits_one() {
        let out = run_args(["setext", "frobnicate"]);
        assert_eq!(out.code, 1);
    }
}
