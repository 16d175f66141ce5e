#![allow(dead_code)]

//! Shared helpers for the integration suites: a deterministic generator,
//! exhaustive small-matrix sweeps, and brute-force oracles kept
//! independent of the library's own search paths.

use almost_affine::equivalence::{verifies, Permutation};
use almost_affine::matrix::CartanMatrix;

/// Small deterministic generator (splitmix-style) so test inputs are
/// reproducible without pulling a full RNG stack into every suite.
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// All candidate off-diagonal pairs with entries in {0, -1, ..., -4} and a
/// symmetric zero pattern.
fn pair_values() -> Vec<(i64, i64)> {
    let mut v = vec![(0, 0)];
    for a in 1..=4 {
        for b in 1..=4 {
            v.push((-a, -b));
        }
    }
    v
}

/// Every even matrix of rank 1..=3 with off-diagonal entries in
/// {0, -1, ..., -4}, decomposable ones included.
pub fn all_even_rank_le_3() -> Vec<CartanMatrix> {
    let pairs = pair_values();
    let mut out = vec![CartanMatrix::from_rows(&[vec![2]]).unwrap()];
    for &(a, b) in &pairs {
        out.push(CartanMatrix::from_rows(&[vec![2, a], vec![b, 2]]).unwrap());
    }
    for &(a01, a10) in &pairs {
        for &(a02, a20) in &pairs {
            for &(a12, a21) in &pairs {
                out.push(
                    CartanMatrix::from_rows(&[
                        vec![2, a01, a02],
                        vec![a10, 2, a12],
                        vec![a20, a21, 2],
                    ])
                    .unwrap(),
                );
            }
        }
    }
    out
}

fn random_matrix_with_diag(rng: &mut Lcg, diag: &[i64]) -> CartanMatrix {
    let n = diag.len();
    let pairs = pair_values();
    loop {
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut row = vec![0; n];
                row[i] = diag[i];
                row
            })
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                // keep matrices sparse enough to hit every class kind
                let (a, b) = if rng.below(5) < 2 {
                    (0, 0)
                } else {
                    pairs[1 + rng.below((pairs.len() - 1) as u64) as usize]
                };
                rows[i][j] = a;
                rows[j][i] = b;
            }
        }
        let m = CartanMatrix::from_rows(&rows).expect("construction keeps invariants");
        if m.is_indecomposable() {
            return m;
        }
    }
}

/// Random indecomposable even matrix of the given rank.
pub fn random_even_matrix(rng: &mut Lcg, rank: usize) -> CartanMatrix {
    random_matrix_with_diag(rng, &vec![2; rank])
}

/// Random indecomposable matrix with diagonal entries drawn from {1, 2}.
pub fn random_super_matrix(rng: &mut Lcg, rank: usize) -> CartanMatrix {
    let diag: Vec<i64> = (0..rank).map(|_| 1 + rng.below(2) as i64).collect();
    random_matrix_with_diag(rng, &diag)
}

pub fn random_permutation(rng: &mut Lcg, n: usize) -> Vec<usize> {
    let mut image: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below((i + 1) as u64) as usize;
        image.swap(i, j);
    }
    image
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Exhaustive equivalence check over all n! permutations, independent of
/// the canonical-form search.
pub fn brute_force_equivalent(m1: &CartanMatrix, m2: &CartanMatrix) -> bool {
    if m1.rank() != m2.rank() {
        return false;
    }
    permutations(m1.rank()).into_iter().any(|image| {
        let sigma = Permutation::from_image(image).expect("generated bijections");
        verifies(m1, m2, &sigma)
    })
}
