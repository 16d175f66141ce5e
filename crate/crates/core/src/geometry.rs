//! Billiard-wall geometry of a symmetrizable matrix: Gram cosines,
//! Lorentzian signature and the Minkowski wall embedding.
//!
//! The signed squared cosines between wall normals are computable without
//! the symmetrizer (the `d`-dependence cancels), so a superization and its
//! desuperization share them exactly: doubling a root rescales its row but
//! does not move its orthogonal hyperplane. All chamber comparisons run in
//! exact rationals; floating point appears only in the embedding output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::equivalence::Permutation;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{CartanMatrix, Symmetrizer};
use crate::supermap;

/// Exact Gram data of a symmetrizable matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramData {
    pub d: Symmetrizer,
    /// `B = diag(d) * A`, exactly symmetric.
    pub b: Vec<Vec<BigRational>>,
    /// Signed squared cosines: `sign(A_ij) * A_ij * A_ji / (A_ii * A_jj)`
    /// off the diagonal, 1 on it.
    pub cos2: Vec<Vec<BigRational>>,
    /// Inertia `(positive, negative, zero)` of `B`.
    pub signature: (usize, usize, usize),
}

/// Floating-point realization of the wall normals in Minkowski space of
/// signature `(n-1, 1)`, metric `diag(+,...,+,-)`.
#[derive(Debug, Clone)]
pub struct WallEmbedding {
    pub vectors: Vec<Vec<f64>>,
    pub tolerance: f64,
}

/// Exact Gram data: symmetrizer, symmetrized matrix, signed cosine-squared
/// matrix and inertia signature, computed by exact symmetric pivoting.
pub fn gram_data(m: &CartanMatrix) -> Result<GramData> {
    if let Some(index) = m.has_isotropic() {
        // a zero diagonal entry has no finite cosine normalization
        return Err(Error::IsotropicUnsupported { index });
    }
    let d = m.symmetrizer().ok_or(Error::NotSymmetrizable)?;
    let n = m.rank();
    let b: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| &d.d[i] * BigRational::from(m.entry(i, j).clone()))
                .collect()
        })
        .collect();
    let cos2 = cos2_matrix(m);
    let signature = linalg::inertia(&b);
    Ok(GramData {
        d,
        b,
        cos2,
        signature,
    })
}

/// The signed cosine-squared matrix, well defined for any matrix without
/// isotropic rows; no symmetrizer is involved.
pub fn cos2_matrix(m: &CartanMatrix) -> Vec<Vec<BigRational>> {
    let n = m.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        return BigRational::one();
                    }
                    let aij = m.entry(i, j);
                    if aij.is_zero() {
                        return BigRational::zero();
                    }
                    let num = aij * m.entry(j, i);
                    let den = m.entry(i, i) * m.entry(j, j);
                    let sign = if aij.is_negative() { -1 } else { 1 };
                    BigRational::new(num * sign, den)
                })
                .collect()
        })
        .collect()
}

/// True iff the wall geometry of `S` and `H` coincides under `sigma`:
/// `cos2_H[sigma(i)][sigma(j)] = cos2_S[i][j]` for all `i, j` and the
/// signatures agree. Requires `verify_pair(S, H, sigma)` to hold.
pub fn billiard_compare(s: &CartanMatrix, h: &CartanMatrix, sigma: &Permutation) -> Result<bool> {
    if !supermap::verify_pair(s, h, Some(sigma))? {
        return Err(Error::PairMismatch);
    }
    let gs = gram_data(s)?;
    let gh = gram_data(h)?;
    if gs.signature != gh.signature {
        return Ok(false);
    }
    let n = s.rank();
    for i in 0..n {
        for j in 0..n {
            if gh.cos2[sigma.apply(i)][sigma.apply(j)] != gs.cos2[i][j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Realizes `B` as the Gram matrix of `n` vectors in Minkowski space.
/// The signature of `B` must be exactly `(n-1, 1, 0)`. The construction is
/// exact congruence diagonalization; conversion to floating point happens
/// last, and the reconstruction error stays below the tolerance.
pub fn lorentz_embedding(b: &[Vec<BigRational>], tolerance: f64) -> Result<WallEmbedding> {
    let n = b.len();
    let (d, t) = linalg::congruence_diagonalize(b);
    let mut pos = 0;
    let mut neg = 0;
    let mut zero = 0;
    for v in &d {
        if v.is_zero() {
            zero += 1;
        } else if v.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    if neg != 1 || zero != 0 || pos != n - 1 {
        return Err(Error::NotLorentzian { pos, neg, zero });
    }
    // B = U D U^T with U = T^{-1}; scale columns by sqrt(|D|) and place
    // the negative axis last to match the metric diag(+,...,+,-)
    let u = linalg::invert(&t).ok_or(Error::NotLorentzian { pos, neg, zero })?;
    let mut order: Vec<usize> = (0..n).filter(|&k| d[k].is_positive()).collect();
    order.extend((0..n).filter(|&k| d[k].is_negative()));
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            order
                .iter()
                .map(|&k| {
                    let scale = d[k].abs().to_f64().expect("rational fits in f64").sqrt();
                    u[i][k].to_f64().expect("rational fits in f64") * scale
                })
                .collect()
        })
        .collect();
    Ok(WallEmbedding { vectors, tolerance })
}

impl WallEmbedding {
    /// Largest componentwise deviation of the Minkowski Gram matrix of the
    /// vectors from `b`.
    pub fn gram_error(&self, b: &[Vec<BigRational>]) -> f64 {
        let n = self.vectors.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for c in 0..n {
                    let sign = if c + 1 == n { -1.0 } else { 1.0 };
                    acc += sign * self.vectors[i][c] * self.vectors[j][c];
                }
                let expect = b[i][j].to_f64().expect("rational fits in f64");
                worst = worst.max((acc - expect).abs());
            }
        }
        worst
    }
}

/// Renders a rational as an exact fraction string such as `-1/4` (integers
/// print without a denominator), the form used by the geometry JSON.
pub fn fraction_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses the output of [`fraction_string`].
pub fn parse_fraction(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.trim().parse().ok()?;
            Some(BigRational::from(n))
        }
    }
}
