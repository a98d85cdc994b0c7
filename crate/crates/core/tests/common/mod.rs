#![allow(dead_code)]

use greenseq_core::{ExchangeMatrix, IntMatrix, Vertex};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;

/// Random skew-symmetrizable `B` of rank `n` with weights in `{1, 2, 3}`.
/// Each pair gets `f_i b_ij = s`, `f_j b_ji = -s` with `s` a small multiple of
/// `lcm(f_i, f_j)`.
pub fn random_exchange<R: Rng>(rng: &mut R, n: usize, max_mult: i64) -> ExchangeMatrix {
    let f: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut b = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let t = rng.gen_range(-max_mult..=max_mult);
            let s = t * f[i].lcm(&f[j]);
            b[(i, j)] = BigInt::from(s / f[i]);
            b[(j, i)] = BigInt::from(-s / f[j]);
        }
    }
    ExchangeMatrix::new(b, f.into_iter().map(BigInt::from).collect())
        .expect("generator keeps DB skew-symmetric")
}

pub fn random_sequence<R: Rng>(rng: &mut R, n: usize, len: usize) -> Vec<Vertex> {
    (0..len).map(|_| rng.gen_range(1..=n)).collect()
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
