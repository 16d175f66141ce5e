//! Exact representation, validation and structural decomposition of
//! (super) Cartan matrices.
//!
//! A matrix is kept in the normalized form: diagonal entries in {0, 1, 2}
//! determined by the parity of the index, non-positive integer off-diagonal
//! entries, and a symmetric zero pattern (`A_ij = 0` iff `A_ji = 0`).
//! Entries are arbitrary-precision integers; symmetrizers are exact
//! rationals. All values are immutable and all operations are pure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parity of a simple root, read off the diagonal of a normalized matrix:
/// 2 is even, 1 is odd non-isotropic, 0 is odd isotropic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    OddNonIsotropic,
    OddIsotropic,
}

impl Parity {
    /// The diagonal entry a normalized matrix must carry at an index of
    /// this parity.
    pub fn diagonal(self) -> i64 {
        match self {
            Parity::Even => 2,
            Parity::OddNonIsotropic => 1,
            Parity::OddIsotropic => 0,
        }
    }

    fn from_diagonal(v: &BigInt) -> Option<Parity> {
        if *v == BigInt::from(2) {
            Some(Parity::Even)
        } else if v.is_one() {
            Some(Parity::OddNonIsotropic)
        } else if v.is_zero() {
            Some(Parity::OddIsotropic)
        } else {
            None
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Parity::Even => 'e',
            Parity::OddNonIsotropic => 'o',
            Parity::OddIsotropic => 'i',
        }
    }

    pub fn from_char(c: char) -> Option<Parity> {
        match c {
            'e' => Some(Parity::Even),
            'o' => Some(Parity::OddNonIsotropic),
            'i' => Some(Parity::OddIsotropic),
            _ => None,
        }
    }
}

/// A validated, normalized (super) Cartan matrix.
///
/// Indices are 0-based throughout the library; external formats use
/// 1-based indices and the conversion happens at the JSON boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<BigInt>, // row-major, n*n
    parity: Vec<Parity>,
}

impl CartanMatrix {
    /// Validates raw integer rows into a `CartanMatrix`.
    ///
    /// When `parity` is absent it is inferred from the diagonal; when
    /// present it must agree with the diagonal entry at every index.
    pub fn validate(raw: Vec<Vec<BigInt>>, parity: Option<Vec<Parity>>) -> Result<CartanMatrix> {
        let n = raw.len();
        for (i, row) in raw.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
        }
        let mut inferred = Vec::with_capacity(n);
        for (i, row) in raw.iter().enumerate() {
            match Parity::from_diagonal(&row[i]) {
                Some(p) => inferred.push(p),
                None => {
                    return Err(Error::DiagonalOutOfRange {
                        index: i,
                        value: row[i].to_string(),
                    })
                }
            }
        }
        if let Some(explicit) = parity {
            if explicit.len() != n {
                return Err(Error::ParityLength {
                    len: explicit.len(),
                    expected: n,
                });
            }
            for i in 0..n {
                if explicit[i] != inferred[i] {
                    return Err(Error::ParityMismatch { index: i });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if raw[i][j].is_positive() {
                    return Err(Error::PositiveOffDiagonal {
                        row: i,
                        col: j,
                        value: raw[i][j].to_string(),
                    });
                }
                if raw[i][j].is_zero() != raw[j][i].is_zero() {
                    return Err(Error::ZeroPatternAsymmetric { row: i, col: j });
                }
            }
        }
        let entries = raw.into_iter().flatten().collect();
        Ok(CartanMatrix {
            n,
            entries,
            parity: inferred,
        })
    }

    /// Convenience constructor from machine integers, parity inferred.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<CartanMatrix> {
        let raw = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        CartanMatrix::validate(raw, None)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    /// Row-major entry slice, length `n * n`.
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn is_even(&self) -> bool {
        self.parity.iter().all(|&p| p == Parity::Even)
    }

    /// Indices of odd (non-isotropic or isotropic) rows.
    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.parity[i] != Parity::Even)
            .collect()
    }

    pub fn has_isotropic(&self) -> Option<usize> {
        (0..self.n).find(|&i| self.parity[i] == Parity::OddIsotropic)
    }

    /// Neighbors of `i` in the nonzero-pattern graph.
    fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| j != i && !self.entry(i, j).is_zero())
    }

    /// Connected components of the nonzero-pattern graph, each sorted,
    /// ordered by smallest member. Their disjoint union is `0..n`.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_indecomposable(&self) -> bool {
        self.components().len() == 1
    }

    /// Strikes row and column `i` (0-based).
    pub fn main_submatrix(&self, i: usize) -> Result<CartanMatrix> {
        if self.n < 2 {
            return Err(Error::RankTooSmall { min: 2 });
        }
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.n,
            });
        }
        let keep: Vec<usize> = (0..self.n).filter(|&k| k != i).collect();
        self.principal_submatrix(&keep)
    }

    /// Restriction of entries and parity to the index set `keep`,
    /// order-preserving. `keep` must be nonempty, sorted and in range.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Result<CartanMatrix> {
        if keep.is_empty() {
            return Err(Error::EmptySet);
        }
        for &k in keep {
            if k >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    rank: self.n,
                });
            }
        }
        let m = keep.len();
        let mut entries = Vec::with_capacity(m * m);
        for &i in keep {
            for &j in keep {
                entries.push(self.entry(i, j).clone());
            }
        }
        let parity = keep.iter().map(|&i| self.parity[i]).collect();
        Ok(CartanMatrix {
            n: m,
            entries,
            parity,
        })
    }

    /// A positive rational symmetrizer `d` with `d_i A_ij = d_j A_ji`,
    /// normalized so the smallest index of each component carries 1.
    ///
    /// Assigns `d` along a spanning tree of each component and verifies
    /// every remaining edge; a violated edge means no symmetrizer exists,
    /// which is a valid result rather than an error.
    pub fn symmetrizer(&self) -> Option<Symmetrizer> {
        let mut d: Vec<Option<BigRational>> = vec![None; self.n];
        for comp in self.components() {
            let root = comp[0];
            d[root] = Some(BigRational::one());
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let dv = d[v].clone().expect("visited vertices carry a value");
                for w in self.neighbors(v) {
                    if d[w].is_none() {
                        // d_w = d_v * A_vw / A_wv across the tree edge
                        let ratio =
                            BigRational::new(self.entry(v, w).clone(), self.entry(w, v).clone());
                        d[w] = Some(&dv * ratio);
                        stack.push(w);
                    }
                }
            }
        }
        let d: Vec<BigRational> = d
            .into_iter()
            .map(|x| x.expect("all vertices visited"))
            .collect();
        // Verify every edge, tree or not.
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if &d[i] * self.entry(i, j) != &d[j] * self.entry(j, i) {
                    return None;
                }
            }
        }
        Some(Symmetrizer { d })
    }

    /// `B = diag(d) * A` when a symmetrizer exists; `B` is exactly
    /// symmetric in rational arithmetic.
    pub fn symmetrize(&self) -> Option<Vec<Vec<BigRational>>> {
        let sym = self.symmetrizer()?;
        let b = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| &sym.d[i] * BigRational::from(self.entry(i, j).clone()))
                    .collect()
            })
            .collect();
        Some(b)
    }

    pub fn is_symmetrizable(&self) -> bool {
        self.symmetrizer().is_some()
    }

    /// Entries as `i64` when they all fit, row-major.
    pub(crate) fn entries_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.entries.iter().map(|e| e.to_i64()).collect()
    }
}

/// Positive rational symmetrizer of a matrix, defined up to one positive
/// scalar per indecomposable component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrizer {
    pub d: Vec<BigRational>,
}

/// The JSON form of a matrix: optional name, optional parity string over
/// `{e,o,i}`, and integer rows. This object is the unit consumed by every
/// CLI subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<String>,
    pub rows: Vec<Vec<i64>>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<CartanMatrix> {
        let raw: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let parity = match &self.parity {
            None => None,
            Some(s) => {
                let mut ps = Vec::with_capacity(s.len());
                for c in s.chars() {
                    match Parity::from_char(c) {
                        Some(p) => ps.push(p),
                        None => {
                            return Err(Error::ParseError(format!(
                                "invalid parity character {c:?}, expected one of e, o, i"
                            )))
                        }
                    }
                }
                Some(ps)
            }
        };
        CartanMatrix::validate(raw, parity)
    }

    pub fn from_matrix(m: &CartanMatrix, name: Option<&str>) -> Result<MatrixJson> {
        use num_traits::ToPrimitive;
        let mut rows = Vec::with_capacity(m.rank());
        for i in 0..m.rank() {
            let mut row = Vec::with_capacity(m.rank());
            for j in 0..m.rank() {
                match m.entry(i, j).to_i64() {
                    Some(v) => row.push(v),
                    None => return Err(Error::EntryOutOfJsonRange { row: i, col: j }),
                }
            }
            rows.push(row);
        }
        let parity: String = m.parities().iter().map(|p| p.as_char()).collect();
        Ok(MatrixJson {
            name: name.map(str::to_owned),
            parity: Some(parity),
            rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_4() -> CartanMatrix {
        CartanMatrix::from_rows(&[vec![2, -1, -2], vec![-1, 1, -1], vec![-2, -1, 2]]).unwrap()
    }

    #[test]
    fn validates_with_inferred_parity() {
        let m = s3_4();
        assert_eq!(
            m.parities(),
            &[Parity::Even, Parity::OddNonIsotropic, Parity::Even]
        );
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn rank_one_even_matrix_is_valid() {
        let m = CartanMatrix::from_rows(&[vec![2]]).unwrap();
        assert_eq!(m.parities(), &[Parity::Even]);
    }

    #[test]
    fn asymmetric_zero_pattern_rejected() {
        let err = CartanMatrix::from_rows(&[vec![2, -1], vec![0, 2]]).unwrap_err();
        assert!(matches!(err, Error::ZeroPatternAsymmetric { .. }));
    }

    #[test]
    fn positive_off_diagonal_rejected() {
        let err = CartanMatrix::from_rows(&[vec![2, 1], vec![-1, 2]]).unwrap_err();
        assert!(matches!(err, Error::PositiveOffDiagonal { .. }));
    }

    #[test]
    fn non_normalized_diagonal_rejected() {
        let err = CartanMatrix::from_rows(&[vec![4, -1], vec![-1, 2]]).unwrap_err();
        assert!(matches!(err, Error::DiagonalOutOfRange { .. }));
        let err = CartanMatrix::from_rows(&[vec![-1]]).unwrap_err();
        assert!(matches!(err, Error::DiagonalOutOfRange { .. }));
    }

    #[test]
    fn explicit_parity_must_match_diagonal() {
        let raw = vec![vec![BigInt::from(2)]];
        let err = CartanMatrix::validate(raw, Some(vec![Parity::OddNonIsotropic])).unwrap_err();
        assert!(matches!(err, Error::ParityMismatch { index: 0 }));
    }

    #[test]
    fn indecomposability_and_components() {
        assert!(s3_4().is_indecomposable());
        assert!(CartanMatrix::from_rows(&[vec![2, -1], vec![-1, 2]])
            .unwrap()
            .is_indecomposable());
        let block =
            CartanMatrix::from_rows(&[vec![2, 0, 0], vec![0, 2, -1], vec![0, -1, 2]]).unwrap();
        assert!(!block.is_indecomposable());
        assert_eq!(block.components(), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn main_submatrix_of_h3_93() {
        let h =
            CartanMatrix::from_rows(&[vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]]).unwrap();
        let sub = h.main_submatrix(0).unwrap();
        assert_eq!(
            sub,
            CartanMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]).unwrap()
        );
    }

    #[test]
    fn main_submatrix_rank_one_fails() {
        let m = CartanMatrix::from_rows(&[vec![2]]).unwrap();
        assert!(matches!(
            m.main_submatrix(0),
            Err(Error::RankTooSmall { .. })
        ));
    }

    #[test]
    fn main_submatrix_keeps_parity() {
        let sub = s3_4().main_submatrix(1).unwrap();
        assert_eq!(
            sub,
            CartanMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]).unwrap()
        );
        assert_eq!(sub.parities(), &[Parity::Even, Parity::Even]);
    }

    #[test]
    fn main_submatrix_can_disconnect() {
        // Row 2 of H3_98 couples rows 1 and 3; striking it leaves diag(2,2).
        let h =
            CartanMatrix::from_rows(&[vec![2, -2, 0], vec![-2, 2, -2], vec![0, -1, 2]]).unwrap();
        let sub = h.main_submatrix(1).unwrap();
        assert_eq!(sub.components(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn principal_submatrix_cases() {
        let h =
            CartanMatrix::from_rows(&[vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]]).unwrap();
        let sub = h.principal_submatrix(&[0, 2]).unwrap();
        assert_eq!(
            sub,
            CartanMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]).unwrap()
        );
        assert_eq!(h.principal_submatrix(&[0, 1, 2]).unwrap(), h);
        assert!(matches!(h.principal_submatrix(&[]), Err(Error::EmptySet)));
    }

    #[test]
    fn symmetrizer_of_symmetric_matrix_is_ones() {
        let sym = s3_4().symmetrizer().unwrap();
        // S3_4 is symmetric, so the tree assignment never leaves 1.
        assert!(sym.d.iter().all(|x| x.is_one()));
    }

    #[test]
    fn symmetrizer_of_s3_6() {
        let s =
            CartanMatrix::from_rows(&[vec![2, -1, -1], vec![-2, 1, -1], vec![-2, -1, 2]]).unwrap();
        let sym = s.symmetrizer().unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(sym.d, vec![BigRational::one(), half.clone(), half]);
    }

    #[test]
    fn ns3_35_is_not_symmetrizable() {
        let s =
            CartanMatrix::from_rows(&[vec![2, -2, -1], vec![-1, 1, -1], vec![-2, -2, 2]]).unwrap();
        assert!(s.symmetrizer().is_none());
        assert!(s.symmetrize().is_none());
    }

    #[test]
    fn symmetrize_is_exactly_symmetric() {
        let s =
            CartanMatrix::from_rows(&[vec![2, -1, -1], vec![-2, 1, -1], vec![-2, -1, 2]]).unwrap();
        let b = s.symmetrize().unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(b[1][1], half);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b[i][j], b[j][i]);
            }
        }
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = s3_4();
        let json = MatrixJson::from_matrix(&m, Some("S3_4")).unwrap();
        assert_eq!(json.parity.as_deref(), Some("eoe"));
        let back = json.to_matrix().unwrap();
        assert_eq!(back, m);
    }
}
