//! Chebyshev-like polynomials `U_n(x, y)` and the preinjective root ladders of
//! a single valued arrow `j -> i`.
//!
//! With `a = d_ij` and `b = d_ji`, the `t`-th preinjective root of the rank-2
//! subquiver, extended by zero, is `q_t` with `q_t(i) = U_{t-1}(b, a)` and
//! `q_t(j) = U_t(a, b)`; `q_{-1} = -e_i`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::mat_vec;
use crate::quiver::{check_vertex, ExchangeMatrix, Sign, Vertex};

/// `U_n(x, y)` for `n >= -1`, with `U_{-1} = 0`, `U_0 = 1` and
/// `U_n(x, y) = x U_{n-1}(y, x) - U_{n-2}(x, y)`.
pub fn chebyshev_u(n: i64, x: &BigInt, y: &BigInt) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::Parse(format!("U_n needs n >= -1, got {n}")));
    }
    let (xy, _) = chebyshev_pair(n, x, y);
    Ok(xy.last().cloned().unwrap_or_else(BigInt::zero))
}

/// Values `U_{-1..=n}(x, y)` and `U_{-1..=n}(y, x)`.
fn chebyshev_pair(n: i64, x: &BigInt, y: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut xy = vec![BigInt::zero()];
    let mut yx = vec![BigInt::zero()];
    if n >= 0 {
        xy.push(BigInt::one());
        yx.push(BigInt::one());
    }
    extend_pair(&mut xy, &mut yx, n, x, y);
    (xy, yx)
}

// Index 0 holds U_{-1}; index k + 1 holds U_k.
fn extend_pair(xy: &mut Vec<BigInt>, yx: &mut Vec<BigInt>, n: i64, x: &BigInt, y: &BigInt) {
    while (xy.len() as i64) < n + 2 {
        let k = xy.len();
        let next_xy = x * &yx[k - 1] - &xy[k - 2];
        let next_yx = y * &xy[k - 1] - &yx[k - 2];
        xy.push(next_xy);
        yx.push(next_yx);
    }
}

type PairTable = (Vec<BigInt>, Vec<BigInt>);

/// Memoised `U_n(x, y)`; safe to share between threads.
#[derive(Default)]
pub struct ChebyshevTable {
    memo: Mutex<HashMap<(BigInt, BigInt), PairTable>>,
}

impl ChebyshevTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: i64, x: &BigInt, y: &BigInt) -> Result<BigInt> {
        if n < -1 {
            return Err(Error::Parse(format!("U_n needs n >= -1, got {n}")));
        }
        let mut memo = self.memo.lock().expect("chebyshev memo poisoned");
        let entry = memo.entry((x.clone(), y.clone())).or_insert_with(|| {
            (
                vec![BigInt::zero(), BigInt::one()],
                vec![BigInt::zero(), BigInt::one()],
            )
        });
        extend_pair(&mut entry.0, &mut entry.1, n, x, y);
        Ok(entry.0[(n + 1) as usize].clone())
    }

    pub fn len(&self) -> usize {
        self.memo.lock().expect("chebyshev memo poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Preinjective ladder `q_{-1}, q_0, q_1, ...` of the arrow `source -> target`
/// inside an ambient rank-`n` quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Ladder {
    n: usize,
    source: Vertex,
    target: Vertex,
    a: BigInt,
    b: BigInt,
}

impl Rank2Ladder {
    /// Ladder of the arrow `source -> target` of `ex` (`b_{target,source} > 0`).
    pub fn new(ex: &ExchangeMatrix, source: Vertex, target: Vertex) -> Result<Self> {
        let n = ex.n();
        check_vertex(source, n)?;
        check_vertex(target, n)?;
        let b_ts = ex.entry(source, target);
        if source == target || *b_ts <= BigInt::zero() {
            return Err(Error::ArrowAbsent {
                source_vertex: source,
                target,
            });
        }
        Ok(Rank2Ladder {
            n,
            source,
            target,
            // a = d_ij = b_{source,target}, b = d_ji = -b_{target,source}
            a: b_ts.clone(),
            b: -ex.entry(target, source).clone(),
        })
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    /// `(a, b) = (d_ij, d_ji)` for the arrow `j -> i`.
    pub fn valuation(&self) -> (&BigInt, &BigInt) {
        (&self.a, &self.b)
    }

    pub fn is_infinite_type(&self) -> bool {
        &self.a * &self.b >= BigInt::from(4)
    }

    /// `q_t` from the closed form, `t >= -1`.
    pub fn root(&self, t: i64) -> Result<Vec<BigInt>> {
        if t < -1 {
            return Err(Error::Parse(format!("ladder index must be >= -1, got {t}")));
        }
        let mut q = vec![BigInt::zero(); self.n];
        if t == -1 {
            q[self.target - 1] = -BigInt::one();
            return Ok(q);
        }
        q[self.target - 1] = chebyshev_u(t - 1, &self.b, &self.a)?;
        q[self.source - 1] = chebyshev_u(t, &self.a, &self.b)?;
        Ok(q)
    }

    /// `q_0, ..., q_{t_max}` from the closed form.
    pub fn roots(&self, t_max: usize) -> Vec<Vec<BigInt>> {
        (0..=t_max as i64)
            .map(|t| self.root(t).expect("t >= 0"))
            .collect()
    }

    /// `q_0, ..., q_{t_max}` by `q_t = tau q_{t-2}` with the rank-2 block
    /// `tau = [[-1, b], [-a, ab - 1]]` on coordinates `(i, j)`, seeded by
    /// `q_0 = e_j` and `q_1 = e_i + a e_j`.
    pub fn roots_by_tau(&self, t_max: usize) -> Vec<Vec<BigInt>> {
        let (a, b) = (&self.a, &self.b);
        let ab1 = a * b - BigInt::one();
        let mut pairs: Vec<(BigInt, BigInt)> =
            vec![(BigInt::zero(), BigInt::one()), (BigInt::one(), a.clone())];
        while pairs.len() <= t_max {
            let (qi, qj) = pairs[pairs.len() - 2].clone();
            pairs.push((-&qi + b * &qj, -(a * &qi) + &ab1 * &qj));
        }
        pairs
            .into_iter()
            .take(t_max + 1)
            .map(|(qi, qj)| {
                let mut q = vec![BigInt::zero(); self.n];
                q[self.target - 1] = qi;
                q[self.source - 1] = qj;
                q
            })
            .collect()
    }
}

/// Closed form and `tau` iteration give the same `q_0, ..., q_{t_max}`.
pub fn roots_agree(ladder: &Rank2Ladder, t_max: usize) -> bool {
    ladder.roots(t_max) == ladder.roots_by_tau(t_max)
}

/// Checks `X_j^+ q_t = q'_{t-1}` for `0 <= t <= t_max`, where `q'` is the
/// ladder of the reversed arrow `i -> j` in `mu_j B` and `X_j^+` is built
/// from `B`.
pub fn ladder_rotation_check(
    ex: &ExchangeMatrix,
    source: Vertex,
    target: Vertex,
    t_max: usize,
) -> Result<bool> {
    let ladder = Rank2Ladder::new(ex, source, target)?;
    let mutated = ex.mutate(source)?;
    let reversed = Rank2Ladder::new(&mutated, target, source)?;
    let x = ex.x_matrix(source, Sign::Plus)?;
    for t in 0..=t_max as i64 {
        let lhs = mat_vec(x.matrix(), &ladder.root(t)?);
        if lhs != reversed.root(t - 1)? {
            return Ok(false);
        }
    }
    Ok(true)
}
