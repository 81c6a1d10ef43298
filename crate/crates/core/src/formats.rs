//! JSON file formats read and written by the command-line tool.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};
use thiserror::Error;

use crate::exactnum::{format_rational, parse_rational, MatrixError, Rational, RationalMatrix};
use crate::graphkit::{Bigraph, Digraph, GraphError};
use crate::planardual::{HalfEdge, PlanarError, PlaneGraph};
use crate::polyshape::{IntPolynomial, RatPolynomial};
use crate::totpos::{GridNetwork, TotposError};
use crate::zonolattice::LatticePointSet;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected format {expected:?}, found {found:?}")]
    WrongFormat { expected: &'static str, found: String },
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error(transparent)]
    Totpos(#[from] TotposError),
}

pub const MATRIX: &str = "matrix-v1";
pub const POLY: &str = "poly-v1";
pub const DIGRAPH: &str = "digraph-v1";
pub const BIGRAPH: &str = "bigraph-v1";
pub const PLANEGRAPH: &str = "planegraph-v1";
pub const POINTS: &str = "points-v1";
pub const NETWORK: &str = "network-v1";

/// The `format` tag of a JSON document.
pub fn detect_format(text: &str) -> Result<String, FormatError> {
    #[derive(Deserialize)]
    struct Tag {
        format: String,
    }
    Ok(serde_json::from_str::<Tag>(text)?.format)
}

fn read<T: serde::de::DeserializeOwned>(text: &str, expected: &'static str) -> Result<T, FormatError> {
    let found = detect_format(text)?;
    if found != expected {
        return Err(FormatError::WrongFormat { expected, found });
    }
    Ok(serde_json::from_str(text)?)
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    format: String,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

fn parse_grid(entries: &[Vec<String>], rows: usize, cols: usize) -> Result<Vec<Vec<Rational>>, FormatError> {
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(FormatError::Shape(format!("entries do not form a {rows}x{cols} grid")));
    }
    entries
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s).map_err(FormatError::from)).collect())
        .collect()
}

fn format_grid(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect()).collect()
}

pub fn parse_matrix(text: &str) -> Result<RationalMatrix, FormatError> {
    let f: MatrixFile = read(text, MATRIX)?;
    let m = RationalMatrix::from_rows_with_cols(parse_grid(&f.entries, f.rows, f.cols)?, f.cols)?;
    Ok(match f.labels {
        Some(l) => m.with_labels(l)?,
        None => m,
    })
}

pub fn matrix_to_json(m: &RationalMatrix) -> Value {
    serde_json::to_value(MatrixFile {
        format: MATRIX.into(),
        rows: m.rows(),
        cols: m.cols(),
        entries: format_grid(m),
        labels: m.labels().map(<[String]>::to_vec),
    })
    .expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct PolyFile {
    format: String,
    #[serde(default = "default_variable")]
    variable: String,
    coeffs: Vec<Value>,
}

fn default_variable() -> String {
    "t".into()
}

fn big_number(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

pub fn parse_poly(text: &str) -> Result<IntPolynomial, FormatError> {
    let f: PolyFile = read(text, POLY)?;
    let coeffs = f
        .coeffs
        .iter()
        .map(|v| {
            let s = match v {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                other => return Err(FormatError::Shape(format!("coefficient {other} is not an integer"))),
            };
            s.parse::<BigInt>().map_err(|_| FormatError::Shape(format!("coefficient {s} is not an integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::new(coeffs))
}

pub fn poly_to_json(p: &IntPolynomial) -> Value {
    serde_json::to_value(PolyFile {
        format: POLY.into(),
        variable: default_variable(),
        coeffs: p.coeffs().iter().map(big_number).collect(),
    })
    .expect("serializable")
}

/// Integer coefficients are written as numbers, others as `"p/q"` strings.
pub fn rat_poly_to_json(p: &RatPolynomial) -> Value {
    if let Some(ip) = p.to_integer() {
        return poly_to_json(&ip);
    }
    serde_json::to_value(PolyFile {
        format: POLY.into(),
        variable: default_variable(),
        coeffs: p
            .coeffs()
            .iter()
            .map(|c| if c.is_integer() { big_number(c.numer()) } else { Value::String(format_rational(c)) })
            .collect(),
    })
    .expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct DigraphFile {
    format: String,
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

pub fn parse_digraph(text: &str) -> Result<Digraph, FormatError> {
    let f: DigraphFile = read(text, DIGRAPH)?;
    Ok(Digraph::new(f.vertices, f.edges)?)
}

pub fn digraph_to_json(g: &Digraph) -> Value {
    serde_json::to_value(DigraphFile { format: DIGRAPH.into(), vertices: g.n_vertices(), edges: g.edges().to_vec() })
        .expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct BigraphFile {
    format: String,
    vertices: usize,
    part1: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

pub fn parse_bigraph(text: &str) -> Result<Bigraph, FormatError> {
    let f: BigraphFile = read(text, BIGRAPH)?;
    Ok(Bigraph::new(f.vertices, &f.part1, f.edges)?)
}

pub fn bigraph_to_json(g: &Bigraph) -> Value {
    serde_json::to_value(BigraphFile {
        format: BIGRAPH.into(),
        vertices: g.n_vertices(),
        part1: g.part1(),
        edges: g.edges().to_vec(),
    })
    .expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct PlaneGraphFile {
    format: String,
    vertices: usize,
    part1: Vec<usize>,
    edges: Vec<(usize, usize)>,
    rotations: Vec<Vec<HalfEdge>>,
}

/// A plane graph together with the vertex class `part1` stored alongside it.
pub fn parse_planegraph(text: &str) -> Result<(PlaneGraph, Vec<usize>), FormatError> {
    let f: PlaneGraphFile = read(text, PLANEGRAPH)?;
    let g = Digraph::new(f.vertices, f.edges)?;
    Ok((PlaneGraph::new(g, f.rotations)?, f.part1))
}

pub fn planegraph_to_json(p: &PlaneGraph, part1: &[usize]) -> Value {
    serde_json::to_value(PlaneGraphFile {
        format: PLANEGRAPH.into(),
        vertices: p.digraph().n_vertices(),
        part1: part1.to_vec(),
        edges: p.digraph().edges().to_vec(),
        rotations: p.rotations().to_vec(),
    })
    .expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct PointsFile {
    format: String,
    dim: usize,
    points: Vec<Vec<i64>>,
    levels: Vec<i64>,
}

pub fn parse_points(text: &str) -> Result<LatticePointSet, FormatError> {
    let f: PointsFile = read(text, POINTS)?;
    if f.points.len() != f.levels.len() || f.points.iter().any(|p| p.len() != f.dim) {
        return Err(FormatError::Shape("points and levels disagree in shape".into()));
    }
    Ok(LatticePointSet { dim: f.dim, points: f.points, levels: f.levels })
}

pub fn points_to_json(s: &LatticePointSet) -> Value {
    serde_json::to_value(PointsFile {
        format: POINTS.into(),
        dim: s.dim,
        points: s.points.clone(),
        levels: s.levels.clone(),
    })
    .expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    format: String,
    rows: usize,
    cols: usize,
    weights: Vec<Vec<String>>,
    #[serde(default = "yes")]
    last_row_unit: bool,
}

fn yes() -> bool {
    true
}

pub fn parse_network(text: &str) -> Result<GridNetwork, FormatError> {
    let f: NetworkFile = read(text, NETWORK)?;
    Ok(GridNetwork::new(parse_grid(&f.weights, f.rows, f.cols)?, f.last_row_unit)?)
}

pub fn network_to_json(net: &GridNetwork) -> Value {
    serde_json::to_value(NetworkFile {
        format: NETWORK.into(),
        rows: net.rows(),
        cols: net.cols(),
        weights: net.weights.iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        last_row_unit: net.last_row_unit,
    })
    .expect("serializable")
}
