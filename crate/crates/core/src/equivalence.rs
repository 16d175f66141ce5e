//! Canonical forms and permutation-equivalence witnesses for
//! parity-labeled Cartan matrices.
//!
//! The canonical form is the minimum of `C[s(i)][s(j)] = M[i][j]` over all
//! parity-preserving simultaneous row/column permutations `s`, under the
//! total order: lexicographic on (parity sequence, row-major entry
//! sequence). The search is an exhaustive branch-and-bound over position
//! assignments, pruned by parity classes and sorted-row-multiset lower
//! bounds, which keeps the worst case far below the raw n! sweep.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::{CartanMatrix, Parity};

/// A bijection on `0..n`; `image[i]` is where old index `i` is sent.
/// External formats use 1-based arrays, e.g. `[2,3,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Permutation> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(Error::NotABijection(image.clone()));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn from_one_based(image: &[usize]) -> Result<Permutation> {
        let shifted: Vec<usize> = image.iter().map(|&v| v.wrapping_sub(1)).collect();
        if image.contains(&0) {
            return Err(Error::NotABijection(image.to_vec()));
        }
        Permutation::from_image(shifted)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { image: inv }
    }

    /// Composition `(self.then(other))(i) = other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: self.image.iter().map(|&v| other.image[v]).collect(),
        }
    }

    /// The conjugated matrix `C` with `C[s(i)][s(j)] = M[i][j]` and
    /// `parity_C[s(i)] = parity_M[i]`.
    pub fn apply_matrix(&self, m: &CartanMatrix) -> CartanMatrix {
        let n = m.rank();
        assert_eq!(n, self.len(), "permutation size must match matrix rank");
        let inv = self.inverse();
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| m.entry(inv.apply(p), inv.apply(q)).clone())
                    .collect()
            })
            .collect();
        let parity: Vec<Parity> = (0..n).map(|p| m.parity(inv.apply(p))).collect();
        CartanMatrix::validate(rows, Some(parity)).expect("conjugation preserves validity")
    }
}

/// Branch-and-bound search for the lexicographically minimal row-major
/// layout. `assign[p]` is the old index placed at position `p`; parity
/// classes are fixed up front since the canonical parity sequence is the
/// sorted one. Entries are compared through the `entry` callback so the
/// same search serves BigInt matrices and the enumerator's small-integer
/// scratch matrices.
pub(crate) fn canonical_assignment<T, F>(n: usize, parity: &[Parity], entry: F) -> Vec<usize>
where
    T: Ord,
    F: Fn(usize, usize) -> T,
{
    // positions grouped by parity: Even block, then OddNonIsotropic, then
    // OddIsotropic, matching the Parity ordering
    let mut initial: Vec<usize> = (0..n).collect();
    initial.sort_by_key(|&i| parity[i]);
    let target: Vec<Parity> = initial.iter().map(|&i| parity[i]).collect();

    let mut best = initial.clone();
    let mut assign: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];

    // Compares the candidate prefix (rows 0..k over assigned columns,
    // optimistically completed with each row's sorted remainder) against
    // `best`. `Less` means the branch can still beat `best`.
    fn bound_cmp<T: Ord, F: Fn(usize, usize) -> T>(
        n: usize,
        entry: &F,
        assign: &[usize],
        used: &[bool],
        best: &[usize],
    ) -> Ordering {
        let k = assign.len();
        let unused: Vec<usize> = (0..n).filter(|&o| !used[o]).collect();
        for r in 0..k {
            for c in 0..k {
                let lhs = entry(assign[r], assign[c]);
                let rhs = entry(best[r], best[c]);
                match lhs.cmp(&rhs) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
            // optimistic tail: the smallest arrangement of the entries of
            // this row over the not-yet-assigned columns
            let mut tail: Vec<T> = unused.iter().map(|&o| entry(assign[r], o)).collect();
            tail.sort();
            for (t, val) in tail.into_iter().enumerate() {
                let rhs = entry(best[r], best[k + t]);
                match val.cmp(&rhs) {
                    Ordering::Equal => {}
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                }
            }
        }
        Ordering::Equal
    }

    fn exact_cmp<T: Ord, F: Fn(usize, usize) -> T>(
        n: usize,
        entry: &F,
        a: &[usize],
        b: &[usize],
    ) -> Ordering {
        for r in 0..n {
            for c in 0..n {
                match entry(a[r], a[c]).cmp(&entry(b[r], b[c])) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
        }
        Ordering::Equal
    }

    fn dfs<T: Ord, F: Fn(usize, usize) -> T>(
        n: usize,
        entry: &F,
        target: &[Parity],
        parity: &[Parity],
        assign: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Vec<usize>,
    ) {
        let k = assign.len();
        if k == n {
            if exact_cmp(n, entry, assign, best) == Ordering::Less {
                best.clone_from(assign);
            }
            return;
        }
        for o in 0..n {
            if used[o] || parity[o] != target[k] {
                continue;
            }
            assign.push(o);
            used[o] = true;
            if bound_cmp(n, entry, assign, used, best) != Ordering::Greater {
                dfs(n, entry, target, parity, assign, used, best);
            }
            used[o] = false;
            assign.pop();
        }
    }

    dfs(
        n,
        &entry,
        &target,
        parity,
        &mut assign,
        &mut used,
        &mut best,
    );
    best
}

/// Canonical form of a matrix together with the witness permutation:
/// returns `(C, s)` with `C[s(i)][s(j)] = M[i][j]`, `C` minimal and
/// identical for all inputs in one permutation orbit.
pub fn canonical_form(m: &CartanMatrix) -> (CartanMatrix, Permutation) {
    let n = m.rank();
    let assignment = match m.entries_i64() {
        Some(flat) => canonical_assignment(n, m.parities(), |i, j| flat[i * n + j]),
        None => canonical_assignment(n, m.parities(), |i, j| m.entry(i, j).clone()),
    };
    // assignment maps position -> old index; the witness maps old -> position
    let mut image = vec![0; n];
    for (pos, &old) in assignment.iter().enumerate() {
        image[old] = pos;
    }
    let sigma = Permutation { image };
    let canon = sigma.apply_matrix(m);
    (canon, sigma)
}

/// A permutation witness `s` with `M2[s(i)][s(j)] = M1[i][j]` and matching
/// parities, when one exists. Implemented via canonical form comparison;
/// the returned witness verifies by direct substitution.
pub fn are_equivalent(m1: &CartanMatrix, m2: &CartanMatrix) -> Option<Permutation> {
    if m1.rank() != m2.rank() {
        return None;
    }
    let (c1, s1) = canonical_form(m1);
    let (c2, s2) = canonical_form(m2);
    if c1 != c2 {
        return None;
    }
    let witness = s1.then(&s2.inverse());
    debug_assert!(verifies(m1, m2, &witness));
    Some(witness)
}

/// Direct substitution check: `M2[s(i)][s(j)] = M1[i][j]` with parities.
pub fn verifies(m1: &CartanMatrix, m2: &CartanMatrix, sigma: &Permutation) -> bool {
    let n = m1.rank();
    if m2.rank() != n || sigma.len() != n {
        return false;
    }
    for i in 0..n {
        if m2.parity(sigma.apply(i)) != m1.parity(i) {
            return false;
        }
        for j in 0..n {
            if m2.entry(sigma.apply(i), sigma.apply(j)) != m1.entry(i, j) {
                return false;
            }
        }
    }
    true
}

/// Total order on matrices used for deterministic emission: rank, parity
/// sequence, then row-major entries.
pub type CanonicalKey = (usize, Vec<u8>, Vec<BigInt>);

/// Sort key for deterministic emission of canonical matrices.
pub fn canonical_sort_key(m: &CartanMatrix) -> CanonicalKey {
    (
        m.rank(),
        m.parities().iter().map(|p| p.diagonal() as u8).collect(),
        m.entries().to_vec(),
    )
}
