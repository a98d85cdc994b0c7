//! Bounded enumeration of maximal green and reddening sequences, and BFS
//! export of the oriented exchange graph.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::quiver::{ExchangeMatrix, Vertex};
use crate::seed::{Seed, VertexColor};
use crate::sequence::{classify, is_terminal, run_sequence, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_length: usize,
    pub max_red: usize,
    pub prune_infinite_source: bool,
    pub prune_repetition: bool,
    pub parallel: bool,
}

impl SearchConfig {
    /// Maximal green search with both prunings on.
    pub fn mgs(max_length: usize) -> Self {
        SearchConfig {
            max_length,
            max_red: 0,
            prune_infinite_source: true,
            prune_repetition: true,
            parallel: true,
        }
    }

    /// Reddening search; source pruning is off since it only holds for
    /// maximal green sequences.
    pub fn reddening(max_length: usize, max_red: usize) -> Self {
        SearchConfig {
            max_length,
            max_red,
            prune_infinite_source: false,
            prune_repetition: true,
            parallel: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_length == 0 {
            return Err(Error::InvalidConfig("max_length must be >= 1".into()));
        }
        if self.prune_infinite_source && self.max_red > 0 {
            return Err(Error::InvalidConfig(
                "infinite-source pruning is only valid for maximal green search (max_red = 0)"
                    .into(),
            ));
        }
        Ok(())
    }
}

/// A c-matrix up to column permutation: its columns sorted by sign, then
/// entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCMatrix(Vec<(i8, Vec<BigInt>)>);

impl CanonicalCMatrix {
    pub fn new(c: &IntMatrix) -> Self {
        let mut cols: Vec<(i8, Vec<BigInt>)> = c
            .columns()
            .into_iter()
            .map(|col| {
                let sign = col.iter().find(|x| !x.is_zero()).map_or(0, |x| {
                    if x.is_positive() {
                        1
                    } else {
                        -1
                    }
                });
                (sign, col)
            })
            .collect();
        cols.sort();
        CanonicalCMatrix(cols)
    }

    pub fn columns(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.0.iter().map(|(_, c)| c)
    }
}

/// A sequence found by the search, already re-validated by `classify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundSequence {
    pub sequence: Vec<Vertex>,
    pub red_count: usize,
    pub sigma: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    /// Sorted lexicographically by sequence.
    pub found: Vec<FoundSequence>,
    pub bound: usize,
    pub max_red: usize,
    pub pruned: bool,
    /// Some admissible path reached the length bound without becoming
    /// reddening, so longer sequences may exist.
    pub truncated: bool,
    pub nodes: u64,
}

impl SearchReport {
    pub fn sequences(&self) -> Vec<Vec<Vertex>> {
        self.found.iter().map(|f| f.sequence.clone()).collect()
    }

    pub fn count(&self) -> usize {
        self.found.len()
    }

    /// Distinct lengths of the found sequences, ascending.
    pub fn lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.found.iter().map(|f| f.sequence.len()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Green vertices of `seed` that are not the source of an infinite-type
/// arrow of the current quiver. A maximal green sequence never mutates at
/// such a source.
pub fn prune_check(seed: &Seed) -> Result<Vec<Vertex>> {
    let q = seed.b().to_quiver();
    let sources: Vec<Vertex> = q.infinite_type_arrows().iter().map(|a| a.source).collect();
    Ok(seed
        .green_vertices()?
        .into_iter()
        .filter(|v| !sources.contains(v))
        .collect())
}

/// `false` (prune) iff some class occurs more than `r + 1` times in `path`.
pub fn repetition_prune_check(path: &[CanonicalCMatrix], r: usize) -> bool {
    let mut counts: HashMap<&CanonicalCMatrix, usize> = HashMap::new();
    for key in path {
        let c = counts.entry(key).or_insert(0);
        *c += 1;
        if *c > r + 1 {
            return false;
        }
    }
    true
}

struct Frame {
    seed: Seed,
    path: Vec<Vertex>,
    keys: Vec<CanonicalCMatrix>,
    red: usize,
}

#[derive(Default)]
struct Partial {
    found: Vec<Vec<Vertex>>,
    truncated: bool,
    nodes: u64,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.found.extend(other.found);
        self.truncated |= other.truncated;
        self.nodes += other.nodes;
        self
    }
}

fn children(frame: &Frame, cfg: &SearchConfig) -> Result<Vec<Vertex>> {
    if cfg.max_red == 0 {
        if cfg.prune_infinite_source {
            prune_check(&frame.seed)
        } else {
            frame.seed.green_vertices()
        }
    } else {
        Ok((1..=frame.seed.n()).collect())
    }
}

fn step(frame: &Frame, k: Vertex, cfg: &SearchConfig) -> Result<Option<Frame>> {
    let red = frame.red + usize::from(frame.seed.color(k)? == VertexColor::Red);
    if red > cfg.max_red {
        return Ok(None);
    }
    let seed = frame.seed.mutate(k)?;
    let mut keys = frame.keys.clone();
    if cfg.prune_repetition {
        keys.push(CanonicalCMatrix::new(seed.c()));
        if !repetition_prune_check(&keys, cfg.max_red) {
            return Ok(None);
        }
    }
    let mut path = frame.path.clone();
    path.push(k);
    Ok(Some(Frame {
        seed,
        path,
        keys,
        red,
    }))
}

fn dfs(root: Frame, cfg: &SearchConfig) -> Result<Partial> {
    let mut out = Partial::default();
    let mut stack = vec![root];
    while let Some(frame) = stack.pop() {
        out.nodes += 1;
        let terminal = is_terminal(frame.seed.c());
        if terminal {
            out.found.push(frame.path.clone());
        }
        let ks = children(&frame, cfg)?;
        if frame.path.len() >= cfg.max_length {
            if !terminal && !ks.is_empty() {
                out.truncated = true;
            }
            continue;
        }
        // Reverse so the smallest vertex is popped first.
        for &k in ks.iter().rev() {
            if let Some(child) = step(&frame, k, cfg)? {
                stack.push(child);
            }
        }
    }
    Ok(out)
}

fn search(b0: &ExchangeMatrix, cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    let seed = Seed::initial(b0);
    let keys = if cfg.prune_repetition {
        vec![CanonicalCMatrix::new(seed.c())]
    } else {
        Vec::new()
    };
    let root = Frame {
        seed,
        path: Vec::new(),
        keys,
        red: 0,
    };

    let mut partial = Partial {
        nodes: 1,
        ..Partial::default()
    };
    if is_terminal(root.seed.c()) {
        partial.found.push(Vec::new());
    }
    let first: Vec<Frame> = children(&root, cfg)?
        .into_iter()
        .map(|k| step(&root, k, cfg))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let sub = if cfg.parallel {
        first
            .into_par_iter()
            .map(|f| dfs(f, cfg))
            .collect::<Result<Vec<_>>>()?
    } else {
        first
            .into_iter()
            .map(|f| dfs(f, cfg))
            .collect::<Result<Vec<_>>>()?
    };
    for p in sub {
        partial = partial.merge(p);
    }

    partial.found.sort();
    let mut found = Vec::with_capacity(partial.found.len());
    for ks in partial.found {
        let t = run_sequence(b0, &ks)?;
        let class = classify(&t)?;
        let (Some(sigma), Some(red_count)) = (class.sigma(), class.red_count()) else {
            return Err(Error::InvariantViolation(format!(
                "search emitted a non-reddening sequence {ks:?}"
            )));
        };
        found.push(FoundSequence {
            sequence: ks,
            red_count,
            sigma: sigma.clone(),
        });
    }
    Ok(SearchReport {
        found,
        bound: cfg.max_length,
        max_red: cfg.max_red,
        pruned: cfg.prune_infinite_source || cfg.prune_repetition,
        truncated: partial.truncated,
        nodes: partial.nodes,
    })
}

/// All maximal green sequences of length `<= cfg.max_length`. `cfg.max_red`
/// is ignored.
pub fn enumerate_mgs(b0: &ExchangeMatrix, cfg: &SearchConfig) -> Result<SearchReport> {
    let cfg = SearchConfig {
        max_red: 0,
        ..cfg.clone()
    };
    search(b0, &cfg)
}

/// All reddening sequences with at most `cfg.max_red` red steps and length
/// `<= cfg.max_length`. A path keeps going after it first turns all red.
pub fn enumerate_reddening(b0: &ExchangeMatrix, cfg: &SearchConfig) -> Result<SearchReport> {
    search(b0, cfg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub key: CanonicalCMatrix,
    /// Exchange matrix of the first seed that reached this node.
    pub b: IntMatrix,
    pub depth: usize,
}

/// Edge oriented in the green direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub vertex: Vertex,
    /// Colour of the mutated vertex on the traversal that found the edge.
    pub color: VertexColor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeGraphSlice {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
    pub depth: usize,
}

impl ExchangeGraphSlice {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph exchange {\n");
        for i in 0..self.nodes.len() {
            let _ = writeln!(s, "  n{i} [label=\"{i}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  n{} -> n{} [label=\"{}\", color={}];",
                e.from, e.to, e.vertex, e.color
            );
        }
        s.push_str("}\n");
        s
    }
}

/// BFS slice of the oriented exchange graph from `C = I`, nodes keyed by
/// `CanonicalCMatrix`, up to `depth` mutations away. Edges between any two
/// discovered nodes are kept once.
pub fn export_exchange_graph(b0: &ExchangeMatrix, depth: usize) -> Result<ExchangeGraphSlice> {
    let root = Seed::initial(b0);
    let mut index: HashMap<CanonicalCMatrix, usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut edges: BTreeMap<(usize, usize), GraphEdge> = BTreeMap::new();
    let mut queue = VecDeque::new();

    let key = CanonicalCMatrix::new(root.c());
    index.insert(key.clone(), 0);
    nodes.push(GraphNode {
        key,
        b: root.b().b().clone(),
        depth: 0,
    });
    queue.push_back((root, 0usize));

    while let Some((seed, id)) = queue.pop_front() {
        let d = nodes[id].depth;
        for k in 1..=seed.n() {
            let color = seed.color(k)?;
            let next = seed.mutate(k)?;
            let key = CanonicalCMatrix::new(next.c());
            let other = match index.get(&key) {
                Some(&j) => j,
                None if d < depth => {
                    let j = nodes.len();
                    index.insert(key.clone(), j);
                    nodes.push(GraphNode {
                        key,
                        b: next.b().b().clone(),
                        depth: d + 1,
                    });
                    queue.push_back((next, j));
                    j
                }
                None => continue,
            };
            let (from, to) = match color {
                VertexColor::Green => (id, other),
                VertexColor::Red => (other, id),
            };
            edges
                .entry((from.min(to), from.max(to)))
                .or_insert(GraphEdge {
                    from,
                    to,
                    vertex: k,
                    color,
                });
        }
    }
    Ok(ExchangeGraphSlice {
        nodes,
        edges: edges.into_values().collect(),
        depth,
    })
}
