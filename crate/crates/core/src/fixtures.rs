//! Quivers and worked sequences used by the tests, the benches and the
//! `selftest` command. The data lives in `fixtures/*.json`.

use serde_json::Value;

use crate::io::{parse_matrix, parse_quiver, parse_vector};
use crate::matrix::IntMatrix;
use crate::quiver::{ExchangeMatrix, ValuedQuiver, Vertex};

pub const A2: &str = include_str!("../fixtures/a2.json");
pub const A3_LINEAR: &str = include_str!("../fixtures/a3_linear.json");
pub const A3_CYCLIC: &str = include_str!("../fixtures/a3_cyclic.json");
pub const KRONECKER: &str = include_str!("../fixtures/kronecker.json");
pub const MULLER: &str = include_str!("../fixtures/muller.json");
pub const WEIGHTED_PATH: &str = include_str!("../fixtures/weighted_path.json");
pub const AFFINE_A2: &str = include_str!("../fixtures/affine_a2.json");
pub const WORKED: &str = include_str!("../fixtures/worked_examples.json");

/// Every named fixture quiver as `(name, json)`.
pub const QUIVERS: &[(&str, &str)] = &[
    ("a2", A2),
    ("a3_linear", A3_LINEAR),
    ("a3_cyclic", A3_CYCLIC),
    ("kronecker", KRONECKER),
    ("muller", MULLER),
    ("weighted_path", WEIGHTED_PATH),
    ("affine_a2", AFFINE_A2),
];

/// Looks up a fixture quiver by name.
pub fn quiver(name: &str) -> Option<ValuedQuiver> {
    QUIVERS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_quiver(text).expect("fixture quiver parses"))
}

pub fn exchange(name: &str) -> Option<ExchangeMatrix> {
    quiver(name).map(|q| ExchangeMatrix::from_quiver(&q))
}

/// The five quivers the search properties are checked on.
pub fn regression_set() -> Vec<(&'static str, ExchangeMatrix)> {
    ["a2", "a3_linear", "a3_cyclic", "kronecker", "muller"]
        .into_iter()
        .map(|n| (n, exchange(n).expect("known fixture")))
        .collect()
}

fn worked() -> Value {
    serde_json::from_str(WORKED).expect("worked examples parse")
}

fn vertices(v: &Value) -> Vec<Vertex> {
    v.as_array()
        .expect("vertex list")
        .iter()
        .map(|x| x.as_u64().expect("vertex") as Vertex)
        .collect()
}

pub struct WeightedPath {
    pub e: IntMatrix,
    pub b: IntMatrix,
    pub d: Vec<num_bigint::BigInt>,
    pub x2_plus: IntMatrix,
    pub x2_minus: IntMatrix,
}

pub fn weighted_path_matrices() -> WeightedPath {
    let w = worked();
    let x = &w["weighted_path"];
    WeightedPath {
        e: parse_matrix(&x["E"]).unwrap(),
        b: parse_matrix(&x["B"]).unwrap(),
        d: parse_vector(&x["D"]).unwrap(),
        x2_plus: parse_matrix(&x["X2_plus"]).unwrap(),
        x2_minus: parse_matrix(&x["X2_minus"]).unwrap(),
    }
}

/// A worked run: start from `quiver` mutated along `premutate`, run
/// `sequence`, expect `c_matrices` (`C_0` to `C_m`).
pub struct CMatrixRun {
    pub b0: ExchangeMatrix,
    pub sequence: Vec<Vertex>,
    pub c_matrices: Vec<IntMatrix>,
}

pub fn c_matrix_runs() -> Vec<CMatrixRun> {
    let w = worked();
    w["c_matrix_runs"]
        .as_array()
        .expect("runs")
        .iter()
        .map(|r| {
            let base = exchange(r["quiver"].as_str().unwrap()).expect("known fixture");
            CMatrixRun {
                b0: base.mutate_along(&vertices(&r["premutate"])).unwrap(),
                sequence: vertices(&r["sequence"]),
                c_matrices: r["c_matrices"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|m| parse_matrix(m).unwrap())
                    .collect(),
            }
        })
        .collect()
}

/// The sequence `(2, 1, 3, 2)` on `3 => 2 -> 1` with every intermediate
/// exchange matrix and the resulting permutation.
pub struct MullerRun {
    pub b0: ExchangeMatrix,
    pub sequence: Vec<Vertex>,
    pub b_matrices: Vec<IntMatrix>,
    pub sigma: Vec<Vertex>,
}

pub fn muller_run() -> MullerRun {
    let w = worked();
    let r = &w["muller_sequence"];
    MullerRun {
        b0: exchange(r["quiver"].as_str().unwrap()).expect("known fixture"),
        sequence: vertices(&r["sequence"]),
        b_matrices: r["b_matrices"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| parse_matrix(m).unwrap())
            .collect(),
        sigma: vertices(&r["sigma"]),
    }
}

pub fn muller_mgs() -> Vec<Vec<Vertex>> {
    worked()["muller_mgs"]
        .as_array()
        .unwrap()
        .iter()
        .map(vertices)
        .collect()
}

pub fn kronecker_reddening() -> Vec<Vertex> {
    vertices(&worked()["kronecker_reddening"])
}
