//! The desuperization map (double the diagonal-1 rows) and the inverse
//! superization search, with pairing verification.
//!
//! Desuperization sends a super Cartan matrix with non-isotropic odd rows
//! to an even generalized Cartan matrix; it is the matrix-level shadow of
//! the osp(1|2n) -> sp(2n) passage. Superization inverts it: halve a set
//! of all-even rows and mark them odd. For a fixed even matrix the halvable
//! subsets, taken up to the matrix's own symmetries, exhaust all
//! superization classes.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::classify::{self, VerdictKind};
use crate::equivalence::{self, Permutation};
use crate::error::{Error, Result};
use crate::matrix::{CartanMatrix, MatrixJson, Parity};

/// Doubles every row with diagonal 1. The result is an even matrix with
/// all-2 diagonal. Errors when an odd isotropic index is present or when
/// there is nothing to desuperize.
pub fn desuperize(s: &CartanMatrix) -> Result<CartanMatrix> {
    if let Some(index) = s.has_isotropic() {
        return Err(Error::IsotropicUnsupported { index });
    }
    let odd = s.odd_indices();
    if odd.is_empty() {
        return Err(Error::NoOddIndex);
    }
    let n = s.rank();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let doubled = s.parity(i) == Parity::OddNonIsotropic;
            (0..n)
                .map(|j| {
                    if doubled {
                        s.entry(i, j) * 2
                    } else {
                        s.entry(i, j).clone()
                    }
                })
                .collect()
        })
        .collect();
    CartanMatrix::validate(rows, None)
}

/// True iff `H[sigma(i)][sigma(j)] = desuperize(S)[i][j]` for all `i, j`.
/// A missing permutation means the identity, matching the empty cells of
/// the catalog tables.
pub fn verify_pair(
    s: &CartanMatrix,
    h: &CartanMatrix,
    sigma: Option<&Permutation>,
) -> Result<bool> {
    if s.rank() != h.rank() {
        return Err(Error::SizeMismatch {
            left: s.rank(),
            right: h.rank(),
        });
    }
    let identity;
    let sigma = match sigma {
        Some(p) => {
            if p.len() != s.rank() {
                return Err(Error::SizeMismatch {
                    left: p.len(),
                    right: s.rank(),
                });
            }
            p
        }
        None => {
            identity = Permutation::identity(s.rank());
            &identity
        }
    };
    let even = desuperize(s)?;
    let n = even.rank();
    for i in 0..n {
        for j in 0..n {
            if h.entry(sigma.apply(i), sigma.apply(j)) != even.entry(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All superization classes of an even matrix together with their count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperizationReport {
    pub h: CartanMatrix,
    /// Canonical forms, pairwise inequivalent, canonically sorted.
    pub superizations: Vec<CartanMatrix>,
    pub multiplicity: usize,
}

/// Finds every superization class of `h`: for each nonempty subset of
/// indices whose rows consist entirely of even integers, halve those rows,
/// mark them odd non-isotropic, keep the result when it is a valid almost
/// affine super matrix, and deduplicate by canonical form.
///
/// `h` must be even and, unless `relax` is set, almost affine; with
/// `relax` every valid halved matrix is kept regardless of its
/// classification, for exploratory use.
pub fn find_superizations(h: &CartanMatrix, relax: bool) -> Result<SuperizationReport> {
    if let Some(index) = h.parities().iter().position(|&p| p != Parity::Even) {
        return Err(Error::NotEven { index });
    }
    if !relax && classify::type_of(h)?.kind != VerdictKind::AlmostAffine {
        return Err(Error::NotAlmostAffine);
    }
    let n = h.rank();
    let halvable: Vec<usize> = (0..n)
        .filter(|&i| (0..n).all(|j| h.entry(i, j).is_even()))
        .collect();
    let mut classes: Vec<CartanMatrix> = Vec::new();
    for mask in 1u64..(1 << halvable.len()) {
        let odd_set: Vec<usize> = halvable
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if odd_set.contains(&i) {
                            h.entry(i, j) / 2
                        } else {
                            h.entry(i, j).clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let Ok(candidate) = CartanMatrix::validate(rows, None) else {
            continue;
        };
        if !relax && classify::classify_super(&candidate)?.kind != VerdictKind::AlmostAffine {
            continue;
        }
        let (canon, _) = equivalence::canonical_form(&candidate);
        if !classes.contains(&canon) {
            classes.push(canon);
        }
    }
    classes.sort_by(|a, b| {
        equivalence::canonical_sort_key(a).cmp(&equivalence::canonical_sort_key(b))
    });
    Ok(SuperizationReport {
        h: h.clone(),
        multiplicity: classes.len(),
        superizations: classes,
    })
}

/// JSON form of a superization report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuperizationReportJson {
    pub h: MatrixJson,
    pub multiplicity: usize,
    pub superizations: Vec<MatrixJson>,
}

impl SuperizationReportJson {
    pub fn from_report(r: &SuperizationReport) -> Result<SuperizationReportJson> {
        Ok(SuperizationReportJson {
            h: MatrixJson::from_matrix(&r.h, None)?,
            multiplicity: r.multiplicity,
            superizations: r
                .superizations
                .iter()
                .map(|s| MatrixJson::from_matrix(s, None))
                .collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> CartanMatrix {
        CartanMatrix::from_rows(rows).unwrap()
    }

    fn s3_4() -> CartanMatrix {
        m(&[vec![2, -1, -2], vec![-1, 1, -1], vec![-2, -1, 2]])
    }

    fn h3_4() -> CartanMatrix {
        m(&[vec![2, -2, -1], vec![-2, 2, -1], vec![-2, -2, 2]])
    }

    #[test]
    fn desuperize_doubles_odd_rows() {
        let even = desuperize(&s3_4()).unwrap();
        assert_eq!(
            even,
            m(&[vec![2, -1, -2], vec![-2, 2, -2], vec![-2, -1, 2]])
        );
        assert!(even.is_even());
    }

    #[test]
    fn desuperize_fully_odd_matrix() {
        let s3_46 = m(&[vec![1, -1, -1], vec![-1, 1, -1], vec![-1, -1, 1]]);
        let h3_93 = m(&[vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]]);
        assert_eq!(desuperize(&s3_46).unwrap(), h3_93);
    }

    #[test]
    fn desuperize_osp_style_bottom_line() {
        // the rank-2 shadow of the osp(1|2n) -> sp(2n) passage
        let s = m(&[vec![2, -1], vec![-1, 1]]);
        assert_eq!(desuperize(&s).unwrap(), m(&[vec![2, -1], vec![-2, 2]]));
    }

    #[test]
    fn desuperize_errors() {
        let even = m(&[vec![2, -1], vec![-1, 2]]);
        assert!(matches!(desuperize(&even), Err(Error::NoOddIndex)));
        let iso = m(&[vec![0, -1], vec![-1, 0]]);
        assert!(matches!(
            desuperize(&iso),
            Err(Error::IsotropicUnsupported { .. })
        ));
    }

    #[test]
    fn verify_pair_with_listed_permutation() {
        let sigma = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert!(verify_pair(&s3_4(), &h3_4(), Some(&sigma)).unwrap());
        // identity does not work for this pair
        assert!(!verify_pair(&s3_4(), &h3_4(), None).unwrap());
    }

    #[test]
    fn verify_pair_identity_for_s3_46() {
        let s3_46 = m(&[vec![1, -1, -1], vec![-1, 1, -1], vec![-1, -1, 1]]);
        let h3_93 = m(&[vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]]);
        assert!(verify_pair(&s3_46, &h3_93, None).unwrap());
    }

    #[test]
    fn verify_pair_size_mismatch() {
        let s = m(&[vec![1]]);
        assert!(matches!(
            verify_pair(&s, &h3_4(), None),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn superizations_of_h3_93() {
        let h3_93 = m(&[vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]]);
        let report = find_superizations(&h3_93, false).unwrap();
        assert_eq!(report.multiplicity, 3);
        for s in &report.superizations {
            assert!(!s.odd_indices().is_empty());
            let even = desuperize(s).unwrap();
            assert!(equivalence::are_equivalent(&even, &h3_93).is_some());
        }
    }

    #[test]
    fn superizations_of_h3_113() {
        let h = m(&[vec![2, -2, 0], vec![-2, 2, -2], vec![0, -2, 2]]);
        assert_eq!(find_superizations(&h, false).unwrap().multiplicity, 5);
    }

    #[test]
    fn superizations_of_h3_4() {
        let report = find_superizations(&h3_4(), false).unwrap();
        assert_eq!(report.multiplicity, 1);
        assert!(equivalence::are_equivalent(&report.superizations[0], &s3_4()).is_some());
    }

    #[test]
    fn superize_rejects_non_almost_affine_unless_relaxed() {
        let finite = m(&[vec![2, -1], vec![-1, 2]]);
        assert!(matches!(
            find_superizations(&finite, false),
            Err(Error::NotAlmostAffine)
        ));
        let relaxed = find_superizations(&finite, true).unwrap();
        // halving any subset of the simply laced rows is not integral
        assert_eq!(relaxed.multiplicity, 0);
        // halving either single row gives equivalent matrices, so the
        // subsets {1}, {2}, {1,2} fall into two classes
        let affine = m(&[vec![2, -2], vec![-2, 2]]);
        let relaxed = find_superizations(&affine, true).unwrap();
        assert_eq!(relaxed.multiplicity, 2);
    }
}
