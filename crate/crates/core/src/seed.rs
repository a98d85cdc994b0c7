//! Seeds `(B, C)` reached from an initial exchange matrix, with their
//! g-matrices, vertex colours and hemispheres.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{sign_of_vector, IntMatrix};
use crate::quiver::{check_vertex, ExchangeMatrix, Sign, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexColor {
    Green,
    Red,
}

impl fmt::Display for VertexColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexColor::Green => "green",
            VertexColor::Red => "red",
        })
    }
}

/// The g-matrix `G = (D C^{-1} D^{-1})^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMatrix(pub IntMatrix);

impl GMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    /// Sign of row `k` (1-based). Mixed rows are an invariant violation.
    pub fn row_sign(&self, k: Vertex) -> Result<Sign> {
        let kk = check_vertex(k, self.0.nrows())?;
        sign_of_vector(self.0.row(kk))
            .map(Sign::from_i8)
            .ok_or_else(|| {
                Error::InvariantViolation(format!("row {k} of the g-matrix is not sign-coherent"))
            })
    }
}

/// An extended seed: current exchange matrix, c-matrix, and the initial
/// exchange matrix it was reached from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    b: ExchangeMatrix,
    c: IntMatrix,
    b0: Arc<ExchangeMatrix>,
}

impl Seed {
    pub fn initial(b0: &ExchangeMatrix) -> Seed {
        Seed {
            b: b0.clone(),
            c: IntMatrix::identity(b0.n()),
            b0: Arc::new(b0.clone()),
        }
    }

    /// Seed with a prescribed c-matrix; `B` is recovered from
    /// `D B = C^t D B0 C`. Fails if `C` is not unimodular and column
    /// sign-coherent or if the recovered `B` is not integral.
    pub fn with_c_matrix(b0: &ExchangeMatrix, c: IntMatrix) -> Result<Seed> {
        let n = b0.n();
        if c.nrows() != n || c.ncols() != n {
            return Err(Error::Shape(format!("c-matrix must be {n}x{n}")));
        }
        let det = c.det();
        if !(det.is_one() || (-&det).is_one()) {
            return Err(Error::InvariantViolation(format!(
                "det C = {det}, expected ±1"
            )));
        }
        if !c.columns_sign_coherent() {
            return Err(Error::InvariantViolation(
                "c-matrix has a column that is not sign-coherent".into(),
            ));
        }
        let d = b0.d_matrix();
        let db = &(&c.transpose() * &d) * &(b0.b() * &c);
        let mut b = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let (q, r) = db[(i, j)].div_rem(&b0.d()[i]);
                if !r.is_zero() {
                    return Err(Error::InvariantViolation(
                        "C^t D B0 C is not divisible by D".into(),
                    ));
                }
                b[(i, j)] = q;
            }
        }
        Ok(Seed {
            b: ExchangeMatrix::new(b, b0.d().to_vec())?,
            c,
            b0: Arc::new(b0.clone()),
        })
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn b(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn c(&self) -> &IntMatrix {
        &self.c
    }

    pub fn b0(&self) -> &ExchangeMatrix {
        &self.b0
    }

    /// Column `k` (1-based) of `C`.
    pub fn c_vector(&self, k: Vertex) -> Result<Vec<BigInt>> {
        let kk = check_vertex(k, self.n())?;
        Ok(self.c.column(kk))
    }

    pub fn color(&self, k: Vertex) -> Result<VertexColor> {
        let col = self.c_vector(k)?;
        match sign_of_vector(&col) {
            Some(s) if s > 0 => Ok(VertexColor::Green),
            Some(_) => Ok(VertexColor::Red),
            None => Err(Error::InvariantViolation(format!(
                "c-vector {k} is not sign-coherent"
            ))),
        }
    }

    pub fn colors(&self) -> Result<Vec<VertexColor>> {
        (1..=self.n()).map(|k| self.color(k)).collect()
    }

    pub fn green_vertices(&self) -> Result<Vec<Vertex>> {
        Ok(self
            .colors()?
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c == VertexColor::Green)
            .map(|(i, _)| i + 1)
            .collect())
    }

    /// All c-vectors nonpositive.
    pub fn is_all_red(&self) -> bool {
        self.c.iter().all(|x| x <= &BigInt::zero())
    }

    /// Mutation at `k`: `B` by matrix mutation, `C` by right multiplication
    /// with `X_k^±` built from the current `B`, the sign being that of column
    /// `k` of `C`.
    pub fn mutate(&self, k: Vertex) -> Result<Seed> {
        let sign = match self.color(k)? {
            VertexColor::Green => Sign::Plus,
            VertexColor::Red => Sign::Minus,
        };
        let x = self.b.x_matrix(k, sign)?;
        Ok(Seed {
            b: self.b.mutate(k)?,
            c: &self.c * x.matrix(),
            b0: Arc::clone(&self.b0),
        })
    }

    pub fn mutate_along(&self, ks: &[Vertex]) -> Result<Seed> {
        ks.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// `G = (D C^{-1} D^{-1})^t`, computed with the exact adjugate.
    pub fn g_matrix(&self) -> Result<GMatrix> {
        let n = self.n();
        let cinv = self.c.inverse_unimodular()?;
        let d = self.b.d();
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let (q, r) = (&d[i] * &cinv[(i, j)]).div_rem(&d[j]);
                if !r.is_zero() {
                    return Err(Error::InvariantViolation(
                        "g-matrix has a non-integral entry".into(),
                    ));
                }
                g[(j, i)] = q;
            }
        }
        Ok(GMatrix(g))
    }

    /// `+` when row `k` of `G` is nonnegative, `-` when nonpositive.
    pub fn hemisphere(&self, k: Vertex) -> Result<Sign> {
        self.g_matrix()?.row_sign(k)
    }

    /// `D B = C^t D B0 C` exactly.
    pub fn check_nz(&self) -> bool {
        let d = self.b.d_matrix();
        let lhs = &d * self.b.b();
        let rhs = &(&self.c.transpose() * &d) * &(self.b0.b() * &self.c);
        lhs == rhs
    }

    /// Checks every seed invariant: unimodular `C`, sign-coherent nonzero
    /// c-vectors, the NZ identity, sign-coherent g-rows, `G^t D C = D`, and
    /// `f_k = f_j` whenever column `j` is `±e_k`.
    pub fn check_invariants(&self) -> Result<()> {
        let det = self.c.det();
        if !(det.is_one() || (-&det).is_one()) {
            return Err(Error::InvariantViolation(format!("det C = {det}")));
        }
        if !self.c.columns_sign_coherent() {
            return Err(Error::InvariantViolation(
                "c-vector not sign-coherent".into(),
            ));
        }
        if !self.check_nz() {
            return Err(Error::InvariantViolation("D B != C^t D B0 C".into()));
        }
        let g = self.g_matrix()?;
        if !g.matrix().rows_sign_coherent() {
            return Err(Error::InvariantViolation(
                "g-vector rows not sign-coherent".into(),
            ));
        }
        let d = self.b.d_matrix();
        if &(&g.matrix().transpose() * &d) * &self.c != d {
            return Err(Error::InvariantViolation("G^t D C != D".into()));
        }
        for j in 1..=self.n() {
            if let Some((k, _)) = simple_root(&self.c_vector(j)?) {
                if self.b.d()[k - 1] != self.b.d()[j - 1] {
                    return Err(Error::InvariantViolation(format!(
                        "column {j} is ±e_{k} but f_{k} != f_{j}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `Some((k, sign))` when `v = ±e_k` (1-based `k`).
pub fn simple_root(v: &[BigInt]) -> Option<(Vertex, Sign)> {
    let mut found = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if found.is_some() {
            return None;
        }
        if x.is_one() {
            found = Some((i + 1, Sign::Plus));
        } else if (-x).is_one() {
            found = Some((i + 1, Sign::Minus));
        } else {
            return None;
        }
    }
    found
}

/// The standard basis vector `sign * e_k` of length `n`.
pub fn unit_vector(n: usize, k: Vertex, sign: Sign) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[k - 1] = match sign {
        Sign::Plus => BigInt::one(),
        Sign::Minus => -BigInt::one(),
    };
    v
}
