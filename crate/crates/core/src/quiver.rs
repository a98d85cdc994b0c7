//! Valued quivers, skew-symmetrizable exchange matrices and their mutation.
//!
//! Vertex labels exposed by this module are 1-based. An arrow `s -> t` carries
//! the valuation pair `(d_st, d_ts)` subject to `d_st * f_t = d_ts * f_s`. The
//! exchange matrix is tied to the quiver by `D B = E^t - E`, which gives
//! `b_st = d_ts` and `b_ts = -d_st` for every arrow `s -> t`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// 1-based vertex label.
pub type Vertex = usize;

pub(crate) fn check_vertex(v: Vertex, n: usize) -> Result<usize> {
    if v == 0 || v > n {
        Err(Error::IndexOutOfRange { vertex: v, n })
    } else {
        Ok(v - 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub(crate) fn from_i8(s: i8) -> Sign {
        if s > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub source: Vertex,
    pub target: Vertex,
    /// `d_{source,target}`
    pub d_st: BigInt,
    /// `d_{target,source}`
    pub d_ts: BigInt,
}

impl Arrow {
    pub fn new(
        source: Vertex,
        target: Vertex,
        d_st: impl Into<BigInt>,
        d_ts: impl Into<BigInt>,
    ) -> Self {
        Arrow {
            source,
            target,
            d_st: d_st.into(),
            d_ts: d_ts.into(),
        }
    }

    /// Simply-laced arrow of multiplicity `m` (valuation `(m, m)`).
    pub fn simple(source: Vertex, target: Vertex, multiplicity: i64) -> Self {
        Arrow::new(source, target, multiplicity, multiplicity)
    }

    pub fn is_infinite_type(&self) -> bool {
        &self.d_st * &self.d_ts >= BigInt::from(4)
    }
}

/// A valued quiver without loops or 2-cycles. Arrows are kept sorted by
/// `(source, target)` so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValuedQuiver {
    weights: Vec<BigInt>,
    arrows: Vec<Arrow>,
}

impl ValuedQuiver {
    pub fn new(weights: Vec<BigInt>, mut arrows: Vec<Arrow>) -> Result<Self> {
        let n = weights.len();
        if let Some(i) = weights.iter().position(|f| !f.is_positive()) {
            return Err(Error::InvalidQuiver(format!(
                "weight f_{} must be positive",
                i + 1
            )));
        }
        for a in &arrows {
            check_vertex(a.source, n).map_err(|e| Error::InvalidQuiver(e.to_string()))?;
            check_vertex(a.target, n).map_err(|e| Error::InvalidQuiver(e.to_string()))?;
            if a.source == a.target {
                return Err(Error::InvalidQuiver(format!("loop at vertex {}", a.source)));
            }
            if !a.d_st.is_positive() || !a.d_ts.is_positive() {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {}->{} has a non-positive valuation",
                    a.source, a.target
                )));
            }
            let (fs, ft) = (&weights[a.source - 1], &weights[a.target - 1]);
            if &a.d_st * ft != &a.d_ts * fs {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {}->{} violates d_st*f_t = d_ts*f_s ({}*{} != {}*{})",
                    a.source, a.target, a.d_st, ft, a.d_ts, fs
                )));
            }
        }
        arrows.sort();
        for w in arrows.windows(2) {
            if (w[0].source, w[0].target) == (w[1].source, w[1].target) {
                return Err(Error::InvalidQuiver(format!(
                    "parallel arrows {}->{}; encode multiplicity as a valuation",
                    w[0].source, w[0].target
                )));
            }
        }
        for a in &arrows {
            if arrows
                .binary_search_by(|b| (b.source, b.target).cmp(&(a.target, a.source)))
                .is_ok()
            {
                return Err(Error::InvalidQuiver(format!(
                    "2-cycle between {} and {}",
                    a.source, a.target
                )));
            }
        }
        Ok(ValuedQuiver { weights, arrows })
    }

    /// Quiver with all weights 1 and arrows `(source, target, multiplicity)`.
    pub fn simply_laced(n: usize, arrows: &[(Vertex, Vertex, i64)]) -> Result<Self> {
        ValuedQuiver::new(
            vec![BigInt::one(); n],
            arrows
                .iter()
                .map(|&(s, t, m)| Arrow::simple(s, t, m))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, source: Vertex, target: Vertex) -> Option<&Arrow> {
        self.arrows
            .iter()
            .find(|a| a.source == source && a.target == target)
    }

    /// Euler matrix with `DB = E^t - E`: `E_ii = f_i` and, for each arrow
    /// `s -> t`, `E_st = -f_t d_st` (`= -f_s d_ts`). This is `-d_st` whenever
    /// the target has weight 1.
    pub fn euler_matrix(&self) -> IntMatrix {
        let mut e = IntMatrix::diagonal(&self.weights);
        for a in &self.arrows {
            e[(a.source - 1, a.target - 1)] = -(&self.weights[a.target - 1] * &a.d_st);
        }
        e
    }

    /// Arrows `j -> i` with `d_ji * d_ij >= 4`.
    pub fn infinite_type_arrows(&self) -> Vec<Arrow> {
        self.arrows
            .iter()
            .filter(|a| a.is_infinite_type())
            .cloned()
            .collect()
    }

    /// True when the quiver has no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target - 1] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source - 1 == v) {
                indeg[a.target - 1] -= 1;
                if indeg[a.target - 1] == 0 {
                    stack.push(a.target - 1);
                }
            }
        }
        seen == n
    }
}

/// Skew-symmetrizable `B` together with its diagonal symmetrizer `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    b: IntMatrix,
    d: Vec<BigInt>,
}

impl ExchangeMatrix {
    pub fn new(b: IntMatrix, d: Vec<BigInt>) -> Result<Self> {
        let n = d.len();
        if b.nrows() != n || b.ncols() != n {
            return Err(Error::InvalidExchangeMatrix(format!(
                "B is {}x{} but D has {} entries",
                b.nrows(),
                b.ncols(),
                n
            )));
        }
        if let Some(i) = d.iter().position(|f| !f.is_positive()) {
            return Err(Error::InvalidExchangeMatrix(format!(
                "symmetrizer entry {} must be positive",
                i + 1
            )));
        }
        for i in 0..n {
            if !b[(i, i)].is_zero() {
                return Err(Error::InvalidExchangeMatrix(format!(
                    "nonzero diagonal entry at {}",
                    i + 1
                )));
            }
            for j in i + 1..n {
                if &d[i] * &b[(i, j)] + &d[j] * &b[(j, i)] != BigInt::zero() {
                    return Err(Error::InvalidExchangeMatrix(format!(
                        "D*B is not skew-symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(ExchangeMatrix { b, d })
    }

    /// Skew-symmetric `B` with `D = I`.
    pub fn skew_symmetric(b: IntMatrix) -> Result<Self> {
        let n = b.nrows();
        ExchangeMatrix::new(b, vec![BigInt::one(); n])
    }

    pub fn from_quiver(q: &ValuedQuiver) -> Self {
        let n = q.n();
        let mut b = IntMatrix::zeros(n, n);
        for a in q.arrows() {
            b[(a.source - 1, a.target - 1)] = a.d_ts.clone();
            b[(a.target - 1, a.source - 1)] = -a.d_st.clone();
        }
        ExchangeMatrix {
            b,
            d: q.weights().to_vec(),
        }
    }

    pub fn to_quiver(&self) -> ValuedQuiver {
        let n = self.n();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.b[(i, j)].is_positive() {
                    arrows.push(Arrow {
                        source: i + 1,
                        target: j + 1,
                        d_st: -self.b[(j, i)].clone(),
                        d_ts: self.b[(i, j)].clone(),
                    });
                }
            }
        }
        ValuedQuiver::new(self.d.clone(), arrows)
            .expect("a valid exchange matrix always yields a valid quiver")
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn d(&self) -> &[BigInt] {
        &self.d
    }

    pub fn d_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.d)
    }

    pub fn entry(&self, i: Vertex, j: Vertex) -> &BigInt {
        &self.b[(i - 1, j - 1)]
    }

    pub fn euler_matrix(&self) -> IntMatrix {
        self.to_quiver().euler_matrix()
    }

    pub fn mutate(&self, k: Vertex) -> Result<ExchangeMatrix> {
        Ok(ExchangeMatrix {
            b: mutate_matrix(&self.b, k)?,
            d: self.d.clone(),
        })
    }

    /// Mutation along a whole sequence.
    pub fn mutate_along(&self, ks: &[Vertex]) -> Result<ExchangeMatrix> {
        ks.iter().try_fold(self.clone(), |acc, &k| acc.mutate(k))
    }

    /// `P^t B P` for the permutation matrix whose column `j` is `e_{sigma(j)}`.
    pub fn conjugate_by_permutation(&self, sigma: &[Vertex]) -> ExchangeMatrix {
        let n = self.n();
        let b = IntMatrix::from_fn(n, n, |i, j| self.b[(sigma[i] - 1, sigma[j] - 1)].clone());
        let d = (0..n).map(|i| self.d[sigma[i] - 1].clone()).collect();
        ExchangeMatrix { b, d }
    }

    pub fn x_matrix(&self, j: Vertex, sign: Sign) -> Result<XMatrix> {
        XMatrix::new(self, j, sign)
    }
}

/// Matrix mutation in direction `k` (1-based) of an `m x n` matrix, `m >= n`;
/// the same rule serves `B` and the extended matrix `[B; C]`.
pub fn mutate_matrix(m: &IntMatrix, k: Vertex) -> Result<IntMatrix> {
    let k = check_vertex(k, m.ncols())?;
    if m.nrows() < m.ncols() {
        return Err(Error::Shape(format!(
            "mutation needs at least as many rows as columns, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let zero = BigInt::zero();
    Ok(IntMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        let bij = &m[(i, j)];
        if i == k || j == k {
            return -bij;
        }
        let bik = &m[(i, k)];
        let bkj = &m[(k, j)];
        if (bik > &zero && bkj > &zero) || (bik < &zero && bkj < &zero) {
            bij + bik * bkj.abs()
        } else {
            bij.clone()
        }
    }))
}

/// The column-operation matrix `X_j^±`: the identity except row `j`, which is
/// `-1` on the diagonal and `max(±b_jk, 0)` elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XMatrix {
    matrix: IntMatrix,
    sign: Sign,
    pivot: Vertex,
}

impl XMatrix {
    pub fn new(b: &ExchangeMatrix, j: Vertex, sign: Sign) -> Result<Self> {
        let n = b.n();
        let jj = check_vertex(j, n)?;
        let mut m = IntMatrix::identity(n);
        for k in 0..n {
            m[(jj, k)] = if k == jj {
                -BigInt::one()
            } else {
                let v = match sign {
                    Sign::Plus => b.b[(jj, k)].clone(),
                    Sign::Minus => -b.b[(jj, k)].clone(),
                };
                v.max(BigInt::zero())
            };
        }
        Ok(XMatrix {
            matrix: m,
            sign,
            pivot: j,
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn pivot(&self) -> Vertex {
        self.pivot
    }
}
