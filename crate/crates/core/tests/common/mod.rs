//! Oracles shared by the integration tests. Nothing here calls into the
//! crate's own algebra beyond constructing inputs.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tautochow::algebra::{int, Polynomial};
use tautochow::bv::{self, BV};

/// Coefficients of `Π_{m≥1} (1 − q^m)^{−24}` up to `q^n`, by repeated
/// multiplication with the geometric series `1/(1 − q^m)`.
pub fn gottsche_euler(n: usize) -> Vec<BigInt> {
    let mut series = vec![BigInt::zero(); n + 1];
    series[0] = BigInt::one();
    for m in 1..=n {
        for _ in 0..24 {
            // in place: s_k += s_{k-m}, ascending k
            for k in m..=n {
                let prev = series[k - m].clone();
                series[k] += prev;
            }
        }
    }
    series
}

/// Number of ways to grow the Young diagram `(a, b)` one box at a time to
/// the full `2 × 4` box. This is `∫ σ_{a,b}·σ_1^{8−a−b}` over `G(2,6)`.
pub fn box_paths(a: u32, b: u32) -> u64 {
    if a == 4 && b == 4 {
        return 1;
    }
    let mut n = 0;
    if a < 4 {
        n += box_paths(a + 1, b);
    }
    if b < a {
        n += box_paths(a, b + 1);
    }
    n
}

/// Hook-length count of standard tableaux of a two-row shape.
pub fn hook_length_two_rows(a: u64, b: u64) -> u64 {
    let n = a + b;
    let fact = |k: u64| (1..=k).product::<u64>().max(1);
    let mut hooks = 1;
    for j in 0..a {
        // box in the first row, column j
        let below = u64::from(j < b);
        hooks *= a - j + below;
    }
    for j in 0..b {
        hooks *= b - j;
    }
    fact(n) / hooks
}

/// Left kernel of `rows` (vectors `v` with `Σ v_i · rows_i = 0`), by
/// Gauss-Jordan elimination on the transpose.
pub fn left_kernel(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = rows.len();
    if n == 0 {
        return vec![];
    }
    let cols = rows[0].len();
    // a[c][r] = rows[r][c]
    let mut a: Vec<Vec<BigRational>> = (0..cols)
        .map(|c| (0..n).map(|r| rows[r][c].clone()).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = BigRational::one() / a[row][col].clone();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let sub = &f * &a[row][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// A random polynomial on `S^m` with 1 to 4 terms, each of codimension at
/// most `2m`, integer coefficients in `[−9, 9]` and divisor labels up to `rho`.
pub fn random_bv(rng: &mut ChaCha8Rng, m: u16, rho: u16) -> Polynomial {
    let mut p = Polynomial::zero(BV);
    for _ in 0..rng.random_range(1..=4) {
        let target = rng.random_range(0..=2 * m as u32);
        let mut term = Polynomial::one(BV);
        let mut codim = 0;
        while codim < target {
            let idx = |rng: &mut ChaCha8Rng| rng.random_range(1..=m);
            let g = match rng.random_range(0..3) {
                0 if target - codim >= 2 => bv::o(idx(rng)),
                1 if target - codim >= 2 && m >= 2 => {
                    let i = idx(rng);
                    let j = loop {
                        let j = idx(rng);
                        if j != i {
                            break j;
                        }
                    };
                    bv::d(i, j)
                }
                _ => bv::l(rng.random_range(1..=rho), idx(rng)),
            };
            codim += g.codim as u32;
            term = &term * &Polynomial::gen(BV, g);
        }
        let c = rng.random_range(-9..=9_i64);
        p.add_scaled(&term, &int(c));
    }
    p
}
