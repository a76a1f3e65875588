//! Affine maps between standard simplices with exact rational coordinates.
//!
//! The standard simplex is `Δ^n = {0 ≤ t_1 ≤ … ≤ t_n ≤ 1} ⊂ R^n` with
//! vertices `E_i^n = e_n + e_{n-1} + ⋯ + e_{n-i+1}` (ones in the last `i`
//! coordinates). An affine map `Δ^q → R^p` is stored as the images of
//! `E_0^q, …, E_q^q`; two maps are equal exactly when these lists agree.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{InvolPoint, Permutation, Sign};

/// A point of `R^n` with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub Vec<BigRational>);

impl RationalPoint {
    pub fn zero(n: usize) -> Self {
        RationalPoint(vec![BigRational::zero(); n])
    }

    pub fn from_integers(v: &[i64]) -> Self {
        RationalPoint(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    /// The point `(num_1/den, …, num_n/den)`.
    pub fn from_fractions(nums: &[i64], den: i64) -> Self {
        let den = BigInt::from(den);
        RationalPoint(
            nums.iter()
                .map(|&x| BigRational::new(x.into(), den.clone()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    /// Whether `0 ≤ t_1 ≤ … ≤ t_n ≤ 1`.
    pub fn in_standard_simplex(&self) -> bool {
        let zero = BigRational::zero();
        let one = BigRational::one();
        let mut prev = &zero;
        for t in &self.0 {
            if t < prev {
                return false;
            }
            prev = t;
        }
        *prev <= one
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(RationalPoint)
    }
}

/// `E_i^n`, the vertex with ones in the last `i` coordinates.
pub fn vertex_e(n: usize, i: usize) -> Result<RationalPoint> {
    if i > n {
        return Err(Error::IndexOutOfRange {
            index: i,
            lo: 0,
            hi: n,
        });
    }
    Ok(RationalPoint(
        (1..=n)
            .map(|j| {
                if j + i > n {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect(),
    ))
}

/// An affine map `Δ^q → R^p` given by the images of the vertices of `Δ^q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineSimplexMap {
    domain_dim: usize,
    codomain_dim: usize,
    vertices: Vec<RationalPoint>,
}

impl AffineSimplexMap {
    /// The map `[P_0, …, P_q]` sending `E_m^q` to `P_m`.
    pub fn new(codomain_dim: usize, vertices: Vec<RationalPoint>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for p in &vertices {
            if p.dim() != codomain_dim {
                return Err(Error::DimensionMismatch {
                    expected: codomain_dim,
                    found: p.dim(),
                });
            }
        }
        Ok(AffineSimplexMap {
            domain_dim: vertices.len() - 1,
            codomain_dim,
            vertices,
        })
    }

    /// `[E_{i_0}^p, …, E_{i_q}^p]`.
    pub fn from_vertex_indices(p: usize, indices: &[usize]) -> Result<Self> {
        let vertices = indices
            .iter()
            .map(|&i| vertex_e(p, i))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, vertices)
    }

    pub fn identity(n: usize) -> Self {
        let vertices = (0..=n).map(|i| vertex_e(n, i).expect("i <= n")).collect();
        AffineSimplexMap {
            domain_dim: n,
            codomain_dim: n,
            vertices,
        }
    }

    /// The face `∂_i^n : Δ^{n-1} → Δ^n`, omitting the vertex `E_{n-i}^n`.
    /// Pointwise it is `(t_1, …, t_{n-1}) ↦ (t_1, …, t_i, t_i, …, t_{n-1})`
    /// with `t_0 = 0` and `t_n = 1`.
    pub fn face(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange {
                index: i,
                lo: 0,
                hi: n,
            });
        }
        let indices: Vec<usize> = (0..=n).filter(|&m| m != n - i).collect();
        Self::from_vertex_indices(n, &indices)
    }

    /// The subdivision piece `c_k(v, σ) : x ↦ (v + σ* x) / k`.
    pub fn subdivision_piece(v: &[i64], sigma: &Permutation, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        let n = sigma.degree();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let k = BigInt::from(k);
        let vertices = (0..=n)
            .map(|m| {
                let e = vertex_e(n, m).expect("m <= n");
                let moved = sigma.pullback(e.coords());
                RationalPoint(
                    v.iter()
                        .zip(moved)
                        .map(|(&vi, t)| (t + BigRational::from_integer(vi.into())) / &k)
                        .collect(),
                )
            })
            .collect();
        Ok(AffineSimplexMap {
            domain_dim: n,
            codomain_dim: n,
            vertices,
        })
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    /// Evaluates the map at `x ∈ R^q` using barycentric weights
    /// `λ_0 = 1 - x_q`, `λ_m = x_{q-m+1} - x_{q-m}` (with `x_0 = 0`).
    pub fn apply(&self, x: &RationalPoint) -> Result<RationalPoint> {
        let q = self.domain_dim;
        if x.dim() != q {
            return Err(Error::DimensionMismatch {
                expected: q,
                found: x.dim(),
            });
        }
        let coord = |j: usize| -> BigRational {
            if j == 0 {
                BigRational::zero()
            } else {
                x.0[j - 1].clone()
            }
        };
        let mut out = vec![BigRational::zero(); self.codomain_dim];
        for (m, p) in self.vertices.iter().enumerate() {
            let lambda = if m == 0 {
                BigRational::one() - coord(q)
            } else {
                coord(q - m + 1) - coord(q - m)
            };
            if lambda.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&p.0) {
                *o += &lambda * t;
            }
        }
        Ok(RationalPoint(out))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineSimplexMap) -> Result<Self> {
        if other.codomain_dim != self.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.domain_dim,
                found: other.codomain_dim,
            });
        }
        let vertices = other
            .vertices
            .iter()
            .map(|p| self.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(AffineSimplexMap {
            domain_dim: other.domain_dim,
            codomain_dim: self.codomain_dim,
            vertices,
        })
    }

    /// Whether every vertex image lies in `Δ^p`, so the map carries `Δ^q`
    /// into `Δ^p`.
    pub fn is_simplex_valued(&self) -> bool {
        self.vertices.iter().all(RationalPoint::in_standard_simplex)
    }

    /// `[P_0, …, P_q, A]`.
    pub fn with_extra_vertex(&self, apex: RationalPoint) -> Result<Self> {
        let mut vertices = self.vertices.clone();
        vertices.push(apex);
        Self::new(self.codomain_dim, vertices)
    }
}

impl fmt::Display for AffineSimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// `f(v, σ, i) = c_k(v, σ) ∘ ∂_i^n` with sign `(-1)^i ε(σ)`.
pub fn f_map(x: &InvolPoint, k: usize) -> Result<(AffineSimplexMap, Sign)> {
    let n = x.dim();
    let piece = AffineSimplexMap::subdivision_piece(&x.v, &x.sigma, k)?;
    let face = AffineSimplexMap::face(n, x.i)?;
    Ok((piece.compose(&face)?, x.sign()))
}

/// `f̃(w, τ, i) = ∂_i^n ∘ c_k(w, τ)` with sign `(-1)^i ε(τ)`, where
/// `n = deg τ + 1`.
pub fn ftilde_map(w: &[i64], tau: &Permutation, i: usize, k: usize) -> Result<(AffineSimplexMap, Sign)> {
    let n = tau.degree() + 1;
    let piece = AffineSimplexMap::subdivision_piece(w, tau, k)?;
    let face = AffineSimplexMap::face(n, i)?;
    Ok((face.compose(&piece)?, Sign::from_parity(i) * tau.sign()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{bij, enumerate_ens};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pt(nums: &[i64], den: i64) -> RationalPoint {
        RationalPoint::from_fractions(nums, den)
    }

    #[test]
    fn vertex_examples() {
        assert_eq!(vertex_e(3, 0).unwrap(), pt(&[0, 0, 0], 1));
        assert_eq!(vertex_e(3, 1).unwrap(), pt(&[0, 0, 1], 1));
        assert_eq!(vertex_e(3, 3).unwrap(), pt(&[1, 1, 1], 1));
        assert!(vertex_e(3, 4).is_err());
    }

    #[test]
    fn faces_in_low_dimension() {
        let d10 = AffineSimplexMap::face(1, 0).unwrap();
        let d11 = AffineSimplexMap::face(1, 1).unwrap();
        assert_eq!(d10.vertices(), &[pt(&[0], 1)]);
        assert_eq!(d11.vertices(), &[pt(&[1], 1)]);
        let d21 = AffineSimplexMap::face(2, 1).unwrap();
        let t = pt(&[1], 3);
        assert_eq!(d21.apply(&t).unwrap(), pt(&[1, 1], 3));
        assert!(AffineSimplexMap::face(2, 3).is_err());
    }

    // The vertex-list definition of ∂_i^n must agree with the coordinate
    // formula (t_1, …, t_i, t_i, …, t_{n-1}) with t_0 = 0, t_n = 1.
    #[test]
    fn face_matches_pointwise_formula() {
        for n in 1..=5usize {
            for i in 0..=n {
                let face = AffineSimplexMap::face(n, i).unwrap();
                let nums: Vec<i64> = (1..n as i64).map(|j| j * j + 1).collect();
                let den = (n as i64) * (n as i64) + 2;
                let t = pt(&nums, den);
                let mut ext = vec![BigRational::zero()];
                ext.extend(t.0.iter().cloned());
                ext.push(BigRational::one());
                // ext[j] = t_j for j in 0..=n
                let expected: Vec<BigRational> = (1..=n)
                    .map(|j| {
                        if j <= i {
                            ext[j].clone()
                        } else {
                            ext[j - 1].clone()
                        }
                    })
                    .collect();
                assert_eq!(face.apply(&t).unwrap(), RationalPoint(expected), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn apply_hits_vertices() {
        let m = AffineSimplexMap::subdivision_piece(&[0, 1, 1], &Permutation::new(vec![3, 1, 2]).unwrap(), 3)
            .unwrap();
        for (i, v) in m.vertices().iter().enumerate() {
            assert_eq!(&m.apply(&vertex_e(3, i).unwrap()).unwrap(), v);
        }
    }

    #[test]
    fn subdivision_piece_examples() {
        assert_eq!(
            AffineSimplexMap::subdivision_piece(&[0, 0, 0], &Permutation::identity(3), 1).unwrap(),
            AffineSimplexMap::identity(3)
        );
        let m = AffineSimplexMap::subdivision_piece(&[1], &Permutation::identity(1), 2).unwrap();
        assert_eq!(m.apply(&pt(&[1], 3)).unwrap(), RationalPoint(vec![q(2, 3)]));
        let m =
            AffineSimplexMap::subdivision_piece(&[0, 1], &Permutation::new(vec![2, 1]).unwrap(), 2).unwrap();
        assert_eq!(m.vertices(), &[pt(&[0, 1], 2), pt(&[1, 1], 2), pt(&[1, 2], 2)]);
    }

    #[test]
    fn compose_examples() {
        let f = AffineSimplexMap::subdivision_piece(&[1], &Permutation::identity(1), 2).unwrap();
        assert_eq!(AffineSimplexMap::identity(1).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&AffineSimplexMap::identity(1)).unwrap(), f);
        let a = AffineSimplexMap::face(2, 0)
            .unwrap()
            .compose(&AffineSimplexMap::face(1, 0).unwrap())
            .unwrap();
        let b = AffineSimplexMap::face(2, 1)
            .unwrap()
            .compose(&AffineSimplexMap::face(1, 0).unwrap())
            .unwrap();
        assert_eq!(a.vertices(), &[pt(&[0, 0], 1)]);
        assert_eq!(b.vertices(), &[pt(&[0, 0], 1)]);
        assert_eq!(a, b);
        let c = f.compose(&AffineSimplexMap::face(1, 0).unwrap()).unwrap();
        assert_eq!(c.vertices(), &[pt(&[1], 2)]);
        assert!(f.compose(&AffineSimplexMap::identity(2)).is_err());
    }

    #[test]
    fn f_map_examples() {
        let x = InvolPoint::new(vec![0, 0], Permutation::identity(2), 1).unwrap();
        let (m, s) = f_map(&x, 2).unwrap();
        assert_eq!(m.vertices(), &[pt(&[0, 0], 1), pt(&[1, 1], 2)]);
        assert_eq!(s, Sign::Neg);
        let x = InvolPoint::new(vec![0, 0, 0], Permutation::identity(3), 0).unwrap();
        assert_eq!(
            f_map(&x, 1).unwrap(),
            (AffineSimplexMap::face(3, 0).unwrap(), Sign::Pos)
        );
    }

    #[test]
    fn ftilde_examples() {
        let (m, s) = ftilde_map(&[0, 0], &Permutation::identity(2), 0, 1).unwrap();
        assert_eq!((m, s), (AffineSimplexMap::face(3, 0).unwrap(), Sign::Pos));
        let y = ftilde_map(&[0], &Permutation::identity(1), 1, 2).unwrap();
        assert_eq!(
            f_map(&bij(&[0], &Permutation::identity(1), 1, 2).unwrap(), 2).unwrap(),
            y
        );
        let tau = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(ftilde_map(&[0, 1], &tau, 2, 2).unwrap().1, tau.sign());
    }

    #[test]
    fn pieces_stay_in_simplex() {
        for n in 0..=4 {
            for k in 1..=4 {
                for e in enumerate_ens(n, k).unwrap() {
                    let m = AffineSimplexMap::subdivision_piece(&e.v, &e.sigma, k).unwrap();
                    assert!(m.is_simplex_valued(), "n={n} k={k} {e:?}");
                }
            }
        }
    }

    #[test]
    fn rational_point_serde_roundtrip() {
        let p = pt(&[1, 2, 3], 4);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/4","1/2","3/4"]"#);
        let back: RationalPoint = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
