//! Tame-type machinery on root vectors: Euler pairing, AR translation
//! `tau = -E^{-1} E^t`, null root, Coxeter period and defect, the root sets
//! `P_k` / `I_k`, the regions `V_k` / `W_k`, and dimension-vector matrices of
//! clusters recovered from c-matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{dot, mat_vec, primitive_integer_vector, IntMatrix, RatMatrix};
use crate::quiver::ValuedQuiver;

pub const DEFAULT_PERIOD_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Preprojective layers `P_k` and preinjective layers `I_k`, `k * n`
/// vectors each, layer by layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSets {
    pub k: usize,
    pub p_k: Vec<Vec<BigInt>>,
    pub i_k: Vec<Vec<BigInt>>,
}

/// Membership of a point (or of the interior of a cluster cone) in `V_k` and
/// `W_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionClass {
    pub in_v: bool,
    pub in_w: bool,
}

impl RegionClass {
    /// Inside `V_k \ W_k`.
    pub fn is_inside(&self) -> bool {
        self.in_v && !self.in_w
    }

    pub fn label(&self) -> &'static str {
        if self.is_inside() {
            "inside"
        } else {
            "outside"
        }
    }
}

#[derive(Clone, Debug)]
pub struct TameContext {
    e: IntMatrix,
    d: Vec<BigInt>,
    tau: RatMatrix,
    tau_inv: RatMatrix,
    e_inv_t: RatMatrix,
    eta: Vec<BigInt>,
    m: usize,
    delta: Vec<BigInt>,
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn apply_rat(m: &RatMatrix, v: &[BigInt]) -> Vec<BigRational> {
    (0..m.nrows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (a, x)| acc + a * rat(x))
        })
        .collect()
}

fn integral(v: Vec<BigRational>, what: &str) -> Result<Vec<BigInt>> {
    if v.iter().all(|x| x.is_integer()) {
        Ok(v.into_iter().map(|x| x.to_integer()).collect())
    } else {
        Err(Error::NonIntegral(what.to_string()))
    }
}

fn is_positive_vector(v: &[BigInt]) -> bool {
    v.iter().all(|x| !x.is_negative()) && v.iter().any(|x| x.is_positive())
}

impl TameContext {
    pub fn new(q: &ValuedQuiver) -> Result<Self> {
        Self::with_period_cap(q, DEFAULT_PERIOD_CAP)
    }

    pub fn with_period_cap(q: &ValuedQuiver, cap: usize) -> Result<Self> {
        let n = q.n();
        let e = q.euler_matrix();
        let e_rat = e.to_rational();
        let e_inv = e_rat
            .inverse()
            .ok_or_else(|| Error::NotTame("Euler matrix is singular".into()))?;
        let e_inv_t = e_inv.transpose();
        let tau = -&(&e_inv * &e_rat.transpose());
        let tau_inv = -&(&e_inv_t * &e_rat);

        let sym = (&e + &e.transpose()).to_rational();
        let kernel = sym.null_space();
        if kernel.len() != 1 {
            return Err(Error::NotTame(format!(
                "E + E^t has kernel of rank {}, expected 1",
                kernel.len()
            )));
        }
        let mut eta = primitive_integer_vector(&kernel[0]);
        if eta.iter().all(|x| !x.is_positive()) {
            eta = eta.into_iter().map(|x| -x).collect();
        }
        if !eta.iter().all(|x| x.is_positive()) {
            return Err(Error::NotTame(format!(
                "kernel vector {eta:?} is not sincere and positive"
            )));
        }
        if integral(apply_rat(&tau, &eta), "tau eta")? != eta {
            return Err(Error::NotTame("tau does not fix the null root".into()));
        }

        let mut ctx = TameContext {
            e,
            d: q.weights().to_vec(),
            tau,
            tau_inv,
            e_inv_t,
            eta,
            m: 0,
            delta: vec![BigInt::zero(); n],
        };
        let (m, delta) = ctx.find_period(cap)?;
        ctx.m = m;
        ctx.delta = delta;
        Ok(ctx)
    }

    // Smallest m with tau^m - I = eta delta^t, delta integral and nonzero.
    fn find_period(&self, cap: usize) -> Result<(usize, Vec<BigInt>)> {
        let n = self.n();
        let id = RatMatrix::identity(n);
        let pivot = self
            .eta
            .iter()
            .position(|x| !x.is_zero())
            .expect("eta is positive");
        let mut power = id.clone();
        for m in 1..=cap {
            power = &power * &self.tau;
            let diff = &power - &id;
            let delta: Vec<BigRational> = (0..n)
                .map(|j| &diff[(pivot, j)] / rat(&self.eta[pivot]))
                .collect();
            if delta.iter().all(|x| x.is_zero()) {
                continue;
            }
            let rank_one =
                (0..n).all(|i| (0..n).all(|j| diff[(i, j)] == rat(&self.eta[i]) * &delta[j]));
            if rank_one && delta.iter().all(|x| x.is_integer()) {
                return Ok((m, delta.into_iter().map(|x| x.to_integer()).collect()));
            }
        }
        Err(Error::PeriodNotFound(cap))
    }

    pub fn n(&self) -> usize {
        self.e.nrows()
    }

    pub fn euler_matrix(&self) -> &IntMatrix {
        &self.e
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.d
    }

    /// `-E^{-1} E^t` over the rationals.
    pub fn tau_matrix(&self) -> &RatMatrix {
        &self.tau
    }

    pub fn null_root(&self) -> &[BigInt] {
        &self.eta
    }

    pub fn coxeter_period(&self) -> usize {
        self.m
    }

    /// `delta` with `tau^m - I = eta delta^t`.
    pub fn defect_functional(&self) -> &[BigInt] {
        &self.delta
    }

    pub fn defect(&self, x: &[BigInt]) -> Result<BigInt> {
        self.check_len(x)?;
        Ok(dot(&self.delta, x))
    }

    fn check_len(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::Shape(format!(
                "vector of length {} in rank {}",
                x.len(),
                self.n()
            )));
        }
        Ok(())
    }

    /// `<x, y> = x^t E y`.
    pub fn euler_pairing(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(dot(x, &mat_vec(&self.e, y)))
    }

    pub fn ar_translate(&self, x: &[BigInt], dir: Direction) -> Result<Vec<BigInt>> {
        self.check_len(x)?;
        let m = match dir {
            Direction::Forward => &self.tau,
            Direction::Backward => &self.tau_inv,
        };
        integral(apply_rat(m, x), &format!("tau image of {x:?}"))
    }

    /// Projective roots `pi_i = E^{-t} D e_i`, as the columns of the result.
    pub fn projective_roots(&self) -> Result<Vec<Vec<BigInt>>> {
        (0..self.n())
            .map(|i| {
                let col: Vec<BigRational> = (0..self.n())
                    .map(|r| &self.e_inv_t[(r, i)] * rat(&self.d[i]))
                    .collect();
                integral(col, "projective root")
            })
            .collect()
    }

    /// Injective roots `-tau pi_i`.
    pub fn injective_roots(&self) -> Result<Vec<Vec<BigInt>>> {
        self.projective_roots()?
            .iter()
            .map(|p| {
                Ok(self
                    .ar_translate(p, Direction::Forward)?
                    .into_iter()
                    .map(|x| -x)
                    .collect())
            })
            .collect()
    }

    pub fn root_sets(&self, k: usize) -> Result<RootSets> {
        if k == 0 {
            return Err(Error::InvalidConfig("root sets need k >= 1".into()));
        }
        let layers = |start: Vec<Vec<BigInt>>, dir: Direction| -> Result<Vec<Vec<BigInt>>> {
            let mut out = Vec::with_capacity(k * self.n());
            let mut layer = start;
            for t in 0..k {
                if t > 0 {
                    layer = layer
                        .iter()
                        .map(|v| self.ar_translate(v, dir))
                        .collect::<Result<_>>()?;
                }
                for v in &layer {
                    if !is_positive_vector(v) {
                        return Err(Error::NotTame(format!(
                            "translate {v:?} is not a positive root"
                        )));
                    }
                }
                out.extend(layer.iter().cloned());
            }
            Ok(out)
        };
        Ok(RootSets {
            k,
            p_k: layers(self.projective_roots()?, Direction::Backward)?,
            i_k: layers(self.injective_roots()?, Direction::Forward)?,
        })
    }

    pub fn region_membership_in(&self, x: &[BigInt], sets: &RootSets) -> Result<RegionClass> {
        let mut in_w = false;
        for a in &sets.p_k {
            if self.euler_pairing(x, a)?.is_positive() {
                in_w = true;
                break;
            }
        }
        let mut in_v = true;
        for b in &sets.i_k {
            if self.euler_pairing(x, b)?.is_negative() {
                in_v = false;
                break;
            }
        }
        Ok(RegionClass { in_v, in_w })
    }

    /// `x in W_k` iff `<x, a> > 0` for some `a in P_k`; `x in V_k` iff
    /// `<x, b> >= 0` for all `b in I_k`.
    pub fn region_membership(&self, x: &[BigInt], k: usize) -> Result<RegionClass> {
        let sets = self.root_sets(k)?;
        self.region_membership_in(x, &sets)
    }

    /// `<x, eta> = 0`.
    pub fn on_null_hyperplane(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.euler_pairing(x, &self.eta)?.is_zero())
    }

    /// `x in D(eta)`, with "all preprojective roots" cut down to `P_K`,
    /// `K = 4m`.
    pub fn in_d_eta(&self, x: &[BigInt]) -> Result<bool> {
        if !self.on_null_hyperplane(x)? {
            return Ok(false);
        }
        let sets = self.root_sets(4 * self.m)?;
        for a in &sets.p_k {
            if self.euler_pairing(x, a)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Integer basis of the hyperplane `<x, eta> = 0`.
    pub fn null_hyperplane_basis(&self) -> Vec<Vec<BigInt>> {
        let row = mat_vec(&self.e, &self.eta);
        let m = RatMatrix::from_rows(vec![row.iter().map(rat).collect()]).expect("one row");
        m.null_space()
            .iter()
            .map(|v| primitive_integer_vector(v))
            .collect()
    }

    /// `V` with `V^t E C = -D`, i.e. `V = -E^{-t} C^{-t} D`. Its columns are
    /// the dimension vectors of the cluster with c-matrix `C`.
    pub fn cluster_dim_matrix(&self, c: &IntMatrix) -> Result<IntMatrix> {
        let n = self.n();
        if c.nrows() != n || c.ncols() != n {
            return Err(Error::Shape(format!("c-matrix must be {n}x{n}")));
        }
        let c_inv = c.inverse_unimodular()?;
        let d = IntMatrix::diagonal(&self.d).to_rational();
        let v = -&(&(&self.e_inv_t * &c_inv.transpose().to_rational()) * &d);
        let v = v.to_integer().ok_or_else(|| {
            Error::InvariantViolation(format!("dimension matrix for C = {c} is not integral"))
        })?;
        let check = &(&v.transpose() * &self.e) * c;
        if check != -&IntMatrix::diagonal(&self.d) {
            return Err(Error::InvariantViolation("V^t E C != -D".into()));
        }
        Ok(v)
    }

    /// Classifies the interior of the cone spanned by the columns of the
    /// dimension matrix of `C`. The barycenter and points pulled towards each
    /// ray are tested; they must agree on both flags.
    pub fn region_class(&self, c: &IntMatrix, k: usize) -> Result<RegionClass> {
        let sets = self.root_sets(k)?;
        self.region_class_in(c, &sets)
    }

    pub fn region_class_in(&self, c: &IntMatrix, sets: &RootSets) -> Result<RegionClass> {
        let n = self.n();
        let v = self.cluster_dim_matrix(c)?;
        let cols = v.columns();
        let bary: Vec<BigInt> = (0..n)
            .map(|i| cols.iter().fold(BigInt::zero(), |acc, col| acc + &col[i]))
            .collect();
        let class = self.region_membership_in(&bary, sets)?;
        let weight = BigInt::from(n as u64);
        for col in &cols {
            let p: Vec<BigInt> = bary.iter().zip(col).map(|(b, x)| b + &weight * x).collect();
            if self.region_membership_in(&p, sets)? != class {
                return Err(Error::InvariantViolation(format!(
                    "cone of C = {c} straddles a region boundary at k = {}",
                    sets.k
                )));
            }
        }
        Ok(class)
    }
}
