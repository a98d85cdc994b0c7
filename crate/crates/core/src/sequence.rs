//! Mutation trajectories and everything that is read off them: colours,
//! reddening / maximal green classification, the associated permutation,
//! rotation of reddening sequences, and the lockstep c-matrix identities that
//! relate a sequence on `B` to its tail on `mu_{k0} B`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{mat_vec, sign_of_vector, IntMatrix};
use crate::quiver::{check_vertex, ExchangeMatrix, Sign, Vertex};
use crate::seed::{simple_root, Seed, VertexColor};

/// One mutation step: the vertex, the c-vector that was mutated (column `k`
/// of `C` before the step), its colour, and the resulting seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub vertex: Vertex,
    pub c_vector: Vec<BigInt>,
    pub color: VertexColor,
    pub seed_after: Seed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationTrajectory {
    initial: Seed,
    steps: Vec<StepRecord>,
}

impl MutationTrajectory {
    pub fn b0(&self) -> &ExchangeMatrix {
        self.initial.b0()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[StepRecord] {
        &self.steps
    }

    pub fn sequence(&self) -> Vec<Vertex> {
        self.steps.iter().map(|s| s.vertex).collect()
    }

    /// Seed after `s` steps; `seed(0)` is the initial seed.
    pub fn seed(&self, s: usize) -> &Seed {
        if s == 0 {
            &self.initial
        } else {
            &self.steps[s - 1].seed_after
        }
    }

    pub fn terminal(&self) -> &Seed {
        self.seed(self.len())
    }

    /// `C_0, ..., C_m`.
    pub fn c_matrices(&self) -> Vec<IntMatrix> {
        (0..=self.len()).map(|s| self.seed(s).c().clone()).collect()
    }

    pub fn red_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.color == VertexColor::Red)
            .count()
    }

    pub fn colors(&self) -> Vec<VertexColor> {
        self.steps.iter().map(|s| s.color).collect()
    }

    /// Index `l` where the maximal green tail starts: one past the last red
    /// step, or 0 when every step is green.
    pub fn green_tail_start(&self) -> usize {
        self.steps
            .iter()
            .rposition(|s| s.color == VertexColor::Red)
            .map_or(0, |i| i + 1)
    }

    /// Steps after the last red mutation.
    pub fn maximal_green_tail(&self) -> &[StepRecord] {
        &self.steps[self.green_tail_start()..]
    }

    /// Number of steps mutating the c-vector `+e_k` and `-e_k` respectively.
    pub fn one_more_time_counts(&self, k: Vertex) -> Result<(usize, usize)> {
        check_vertex(k, self.initial.n())?;
        let mut plus = 0;
        let mut minus = 0;
        for step in &self.steps {
            match simple_root(&step.c_vector) {
                Some((kk, Sign::Plus)) if kk == k => plus += 1,
                Some((kk, Sign::Minus)) if kk == k => minus += 1,
                _ => {}
            }
        }
        Ok((plus, minus))
    }
}

/// Runs `ks` (1-based) from the initial seed of `b0`.
pub fn run_sequence(b0: &ExchangeMatrix, ks: &[Vertex]) -> Result<MutationTrajectory> {
    let initial = Seed::initial(b0);
    let mut steps = Vec::with_capacity(ks.len());
    let mut current = initial.clone();
    for &k in ks {
        let color = current.color(k)?;
        let c_vector = current.c_vector(k)?;
        let next = current.mutate(k)?;
        steps.push(StepRecord {
            vertex: k,
            c_vector,
            color,
            seed_after: next.clone(),
        });
        current = next;
    }
    Ok(MutationTrajectory { initial, steps })
}

/// A permutation of `1..=n`, stored as the images `sigma(1), ..., sigma(n)`.
/// For a reddening sequence column `j` of the terminal c-matrix is
/// `-e_{sigma(j)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation(Vec<Vertex>);

impl Permutation {
    pub fn new(images: Vec<Vertex>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let i = check_vertex(v, n)?;
            if seen[i] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[Vertex] {
        &self.0
    }

    pub fn apply(&self, j: Vertex) -> Vertex {
        self.0[j - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (j, &s) in self.0.iter().enumerate() {
            inv[s - 1] = j + 1;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &s)| s == i + 1)
    }

    /// The matrix `P_sigma` whose column `j` is `e_{sigma(j)}`.
    pub fn matrix(&self) -> IntMatrix {
        let n = self.n();
        let mut p = IntMatrix::zeros(n, n);
        for (j, &s) in self.0.iter().enumerate() {
            p[(s - 1, j)] = BigInt::one();
        }
        p
    }

    /// Reads `sigma` from a negative permutation matrix.
    pub fn from_negative_permutation_matrix(c: &IntMatrix) -> Option<Permutation> {
        let n = c.ncols();
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            match simple_root(&c.column(j)) {
                Some((k, Sign::Minus)) => images.push(k),
                _ => return None,
            }
        }
        Permutation::new(images).ok()
    }

    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v - 1] {
                seen[v - 1] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            out.push(cycle);
        }
        out
    }
}

/// Cycle notation, e.g. `(1 3 2)`; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceClass {
    NotReddening,
    Reddening {
        red_count: usize,
        sigma: Permutation,
    },
    MaximalGreen {
        sigma: Permutation,
    },
}

impl SequenceClass {
    pub fn is_reddening(&self) -> bool {
        !matches!(self, SequenceClass::NotReddening)
    }

    pub fn is_maximal_green(&self) -> bool {
        matches!(self, SequenceClass::MaximalGreen { .. })
    }

    pub fn sigma(&self) -> Option<&Permutation> {
        match self {
            SequenceClass::NotReddening => None,
            SequenceClass::Reddening { sigma, .. } | SequenceClass::MaximalGreen { sigma } => {
                Some(sigma)
            }
        }
    }

    pub fn red_count(&self) -> Option<usize> {
        match self {
            SequenceClass::NotReddening => None,
            SequenceClass::Reddening { red_count, .. } => Some(*red_count),
            SequenceClass::MaximalGreen { .. } => Some(0),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SequenceClass::NotReddening => "not_reddening",
            SequenceClass::Reddening { .. } => "reddening",
            SequenceClass::MaximalGreen { .. } => "maximal_green",
        }
    }
}

/// Reddening iff the terminal c-matrix is entrywise nonpositive, in which
/// case it is `-P_sigma`; maximal green iff additionally no step was red.
pub fn classify(t: &MutationTrajectory) -> Result<SequenceClass> {
    let terminal = t.terminal();
    if !terminal.is_all_red() {
        return Ok(SequenceClass::NotReddening);
    }
    let sigma = Permutation::from_negative_permutation_matrix(terminal.c()).ok_or_else(|| {
        Error::InvariantViolation("all-red c-matrix is not a negative permutation matrix".into())
    })?;
    let red_count = t.red_count();
    Ok(if red_count == 0 {
        SequenceClass::MaximalGreen { sigma }
    } else {
        SequenceClass::Reddening { red_count, sigma }
    })
}

/// Rotates a reddening sequence `(k0, ..., k_{m-1})` on `b0` into
/// `(k1, ..., k_{m-1}, sigma^{-1}(k0))` on `mu_{k0} b0`. The rotated sequence
/// is re-run and must be reddening with the same permutation and red count.
pub fn rotate(b0: &ExchangeMatrix, ks: &[Vertex]) -> Result<(ExchangeMatrix, Vec<Vertex>)> {
    let t = run_sequence(b0, ks)?;
    let class = classify(&t)?;
    let (Some(sigma), Some(red)) = (class.sigma(), class.red_count()) else {
        return Err(Error::NotReddening);
    };
    let Some((&k0, rest)) = ks.split_first() else {
        // n = 0: the empty sequence is reddening and rotates to itself.
        return Ok((b0.clone(), Vec::new()));
    };
    let b1 = b0.mutate(k0)?;
    let mut rotated = rest.to_vec();
    rotated.push(sigma.inverse().apply(k0));

    let rt = run_sequence(&b1, &rotated)?;
    let rclass = classify(&rt)?;
    if rclass.sigma() != Some(sigma) || rclass.red_count() != Some(red) {
        return Err(Error::InvariantViolation(format!(
            "rotation changed the class: {:?} -> {:?}",
            class, rclass
        )));
    }
    Ok((b1, rotated))
}

/// Lockstep comparison of `ks` on `b0` with its tail `(k1, ...)` on
/// `mu_{k0} b0`: checks `C'_s = X_{k0}^{eps(s)} C_s` at every `s >= 1`, with
/// `eps(s) = +` exactly when `C_s` lies in the `k0`-hemisphere `H^-`, and the
/// column-sign pairing (equal signs unless the column is `±e_{k0}`, in which
/// case the paired column is its negation).
pub fn mutation_formula_check(b0: &ExchangeMatrix, ks: &[Vertex]) -> Result<bool> {
    let Some((&k0, rest)) = ks.split_first() else {
        return Err(Error::Shape(
            "mutation formula needs a nonempty sequence".into(),
        ));
    };
    let original = run_sequence(b0, ks)?;
    let shifted = run_sequence(&b0.mutate(k0)?, rest)?;
    let x_plus = b0.x_matrix(k0, Sign::Plus)?;
    let x_minus = b0.x_matrix(k0, Sign::Minus)?;
    for s in 1..=ks.len() {
        let cs = original.seed(s);
        let cps = shifted.seed(s - 1).c();
        let x = match cs.hemisphere(k0)? {
            Sign::Minus => &x_plus,
            Sign::Plus => &x_minus,
        };
        if &(x.matrix() * cs.c()) != cps {
            return Ok(false);
        }
        for j in 0..cs.n() {
            let c = cs.c().column(j);
            let cp = cps.column(j);
            match simple_root(&c) {
                Some((k, _)) if k == k0 => {
                    if cp != c.iter().map(|x| -x).collect::<Vec<_>>() {
                        return Ok(false);
                    }
                }
                _ => {
                    if sign_of_vector(&c) != sign_of_vector(&cp) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// For a reddening sequence, with `t` the last step whose mutated c-vector is
/// `e_{k0}`, checks `c_s = X_{k0}^+ c'_s` for all `t < s < m`, where `c'_s`
/// labels the rotated sequence.
pub fn post_tail_transport_check(b0: &ExchangeMatrix, ks: &[Vertex]) -> Result<bool> {
    let original = run_sequence(b0, ks)?;
    if !classify(&original)?.is_reddening() {
        return Err(Error::NotReddening);
    }
    let Some(&k0) = ks.first() else {
        return Ok(true);
    };
    let n = b0.n();
    let e_k0 = crate::seed::unit_vector(n, k0, Sign::Plus);
    let t = original
        .steps()
        .iter()
        .rposition(|st| st.c_vector == e_k0)
        .expect("step 0 always mutates e_k0");
    let (b1, rotated) = rotate(b0, ks)?;
    let rt = run_sequence(&b1, &rotated)?;
    let x_plus = b0.x_matrix(k0, Sign::Plus)?;
    // Original step s corresponds to rotated step s - 1.
    for s in t + 1..ks.len() {
        let c = &original.steps()[s].c_vector;
        let cp = &rt.steps()[s - 1].c_vector;
        if &mat_vec(x_plus.matrix(), cp) != c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parses a comma-separated 1-based sequence such as `2,3,1,3,2`. An empty
/// string is the empty sequence.
pub fn parse_sequence(s: &str) -> Result<Vec<Vertex>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<Vertex>()
                .map_err(|_| Error::Parse(format!("bad vertex '{}'", p.trim())))
        })
        .collect()
}

pub fn format_sequence(ks: &[Vertex]) -> String {
    ks.iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// True when every entry of the terminal c-matrix is `<= 0`; used by search
/// code that does not need the full trajectory.
pub(crate) fn is_terminal(c: &IntMatrix) -> bool {
    c.iter().all(|x| x <= &BigInt::zero())
}
