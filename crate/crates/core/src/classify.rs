//! Finite / affine / indefinite trichotomy for even generalized Cartan
//! matrices, and the almost-affine (hyperbolic) test for even and super
//! matrices.
//!
//! The primary classifier is the principal-minor criterion, evaluated in
//! exact integer arithmetic. A positive-vector classifier implemented as
//! exact rational linear feasibility serves as an independent cross-check
//! and should only be reached from tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{CartanMatrix, Parity};
use crate::supermap;

/// Component-level classification of an indecomposable even matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Finite,
    Affine,
    Indefinite,
}

/// Overall classification of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Finite,
    Affine,
    AlmostAffine,
    OtherIndefinite,
}

/// Classification result with the per-component breakdown.
///
/// For a decomposable matrix the overall kind is the worst component under
/// Finite < Affine < Indefinite; `AlmostAffine` and `OtherIndefinite` are
/// reported only for indecomposable matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeVerdict {
    pub kind: VerdictKind,
    /// Index sets (0-based) with the kind of each component.
    pub components: Vec<(Vec<usize>, Kind)>,
}

impl TypeVerdict {
    pub fn all_components_finite_or_affine(&self) -> bool {
        self.components.iter().all(|(_, k)| *k != Kind::Indefinite)
    }
}

fn require_even(m: &CartanMatrix) -> Result<()> {
    match m.parities().iter().position(|&p| p != Parity::Even) {
        Some(index) => Err(Error::NotEven { index }),
        None => Ok(()),
    }
}

/// Classifies an indecomposable even matrix by the principal-minor
/// criterion: finite iff every principal minor is positive; affine iff the
/// determinant vanishes and every proper principal minor is positive;
/// indefinite otherwise.
pub fn trichotomy(m: &CartanMatrix) -> Result<Kind> {
    require_even(m)?;
    if !m.is_indecomposable() {
        return Err(Error::Decomposable);
    }
    Ok(trichotomy_unchecked(m))
}

fn trichotomy_unchecked(m: &CartanMatrix) -> Kind {
    let n = m.rank();
    // subsets by increasing size so cheap minors reject early; if any
    // proper principal minor fails the matrix is neither finite nor affine
    let mut subsets: Vec<u64> = (1u64..(1 << n)).collect();
    subsets.sort_by_key(|s| s.count_ones());
    for mask in subsets {
        let size = mask.count_ones() as usize;
        let keep: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let mut sub = Vec::with_capacity(size * size);
        for &i in &keep {
            for &j in &keep {
                sub.push(m.entry(i, j).clone());
            }
        }
        let det = linalg::bareiss_det(&sub, size);
        if size == n {
            return if det.is_positive() {
                Kind::Finite
            } else if det.is_zero() {
                Kind::Affine
            } else {
                Kind::Indefinite
            };
        }
        if !det.is_positive() {
            return Kind::Indefinite;
        }
    }
    unreachable!("full subset is always visited")
}

/// Full verdict for an even matrix: component decomposition, per-component
/// trichotomy, and the almost-affine test for indecomposable indefinite
/// matrices (every main submatrix must have only finite or affine
/// components).
pub fn type_of(m: &CartanMatrix) -> Result<TypeVerdict> {
    require_even(m)?;
    let comps = m.components();
    let kinds: Vec<(Vec<usize>, Kind)> = comps
        .iter()
        .map(|c| {
            let sub = m
                .principal_submatrix(c)
                .expect("component indices are valid");
            (c.clone(), trichotomy_unchecked(&sub))
        })
        .collect();
    if kinds.len() > 1 {
        let worst = kinds.iter().map(|(_, k)| *k).max_by_key(|k| match k {
            Kind::Finite => 0,
            Kind::Affine => 1,
            Kind::Indefinite => 2,
        });
        let kind = match worst.expect("at least one component") {
            Kind::Finite => VerdictKind::Finite,
            Kind::Affine => VerdictKind::Affine,
            Kind::Indefinite => VerdictKind::OtherIndefinite,
        };
        return Ok(TypeVerdict {
            kind,
            components: kinds,
        });
    }
    let kind = match kinds[0].1 {
        Kind::Finite => VerdictKind::Finite,
        Kind::Affine => VerdictKind::Affine,
        Kind::Indefinite => {
            if is_almost_affine_indefinite(m) {
                VerdictKind::AlmostAffine
            } else {
                VerdictKind::OtherIndefinite
            }
        }
    };
    Ok(TypeVerdict {
        kind,
        components: kinds,
    })
}

/// For an indecomposable indefinite matrix of rank >= 2: do all main
/// submatrices decompose into finite or affine components?
fn is_almost_affine_indefinite(m: &CartanMatrix) -> bool {
    if m.rank() < 2 {
        return false;
    }
    (0..m.rank()).all(|i| {
        let sub = m.main_submatrix(i).expect("rank checked above");
        sub.components().iter().all(|c| {
            let comp = sub
                .principal_submatrix(c)
                .expect("component indices are valid");
            trichotomy_unchecked(&comp) != Kind::Indefinite
        })
    })
}

/// Classifies a super matrix through its desuperization. The matrix must
/// have at least one odd index, all of them non-isotropic.
pub fn classify_super(s: &CartanMatrix) -> Result<TypeVerdict> {
    let even = supermap::desuperize(s)?;
    type_of(&even)
}

/// Independent classifier via the positive-vector characterization:
/// finite iff some u > 0 has Au > 0 componentwise, affine iff some u > 0
/// has Au = 0, indefinite otherwise. Exact rational linear feasibility;
/// used as a test oracle against [`trichotomy`].
pub fn trichotomy_oracle(m: &CartanMatrix) -> Result<Kind> {
    require_even(m)?;
    if !m.is_indecomposable() {
        return Err(Error::Decomposable);
    }
    let n = m.rank();
    // u_i > 0 together with (Au)_i > 0
    let mut constraints: Vec<Vec<BigRational>> = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut c = vec![BigRational::zero(); n];
        c[i] = BigRational::one();
        constraints.push(c);
    }
    for i in 0..n {
        constraints.push(
            (0..n)
                .map(|j| BigRational::from(m.entry(i, j).clone()))
                .collect(),
        );
    }
    if linalg::strict_feasible(constraints, n) {
        return Ok(Kind::Finite);
    }
    // positive vector in the kernel: u = K^T c with all components > 0
    let flat: Vec<BigInt> = m.entries().to_vec();
    let kernel = linalg::kernel_basis(&flat, n);
    if !kernel.is_empty() {
        let dim = kernel.len();
        let positivity: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..dim).map(|b| kernel[b][i].clone()).collect())
            .collect();
        if linalg::strict_feasible(positivity, dim) {
            return Ok(Kind::Affine);
        }
    }
    Ok(Kind::Indefinite)
}

/// Verdict JSON: overall kind plus per-component breakdown with 1-based
/// indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictJson {
    pub kind: VerdictKind,
    pub components: Vec<ComponentJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentJson {
    pub indices: Vec<usize>,
    pub kind: Kind,
}

impl VerdictJson {
    pub fn from_verdict(v: &TypeVerdict) -> VerdictJson {
        VerdictJson {
            kind: v.kind,
            components: v
                .components
                .iter()
                .map(|(idx, k)| ComponentJson {
                    indices: idx.iter().map(|i| i + 1).collect(),
                    kind: *k,
                })
                .collect(),
        }
    }
}
