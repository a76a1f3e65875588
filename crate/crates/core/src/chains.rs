//! Formal integer chains of affine simplex maps, with the boundary,
//! subdivision and homotopy operators built from them.
//!
//! A [`FormalChain`] of type `q → p` is a finite sum `Σ c_j [f_j]` of affine
//! maps `Δ^q → Δ^p`. Chains compose bilinearly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::affine::{f_map, vertex_e, AffineSimplexMap};
use crate::error::{Error, Result};
use crate::perm::{enumerate_ens, InvolPoint};

/// A finite integer combination of affine maps `Δ^q → Δ^p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalChain {
    domain_dim: usize,
    codomain_dim: usize,
    terms: BTreeMap<AffineSimplexMap, i64>,
}

impl FormalChain {
    pub fn zero(domain_dim: usize, codomain_dim: usize) -> Self {
        FormalChain {
            domain_dim,
            codomain_dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_map(map: AffineSimplexMap) -> Self {
        let mut c = Self::zero(map.domain_dim(), map.codomain_dim());
        c.terms.insert(map, 1);
        c
    }

    /// `id_n` as a one-term chain.
    pub fn identity(n: usize) -> Self {
        Self::from_map(AffineSimplexMap::identity(n))
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, map: &AffineSimplexMap) -> i64 {
        self.terms.get(map).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AffineSimplexMap, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Adds `coeff · [map]`, dropping the term if it cancels.
    pub fn add_term(&mut self, map: AffineSimplexMap, coeff: i64) -> Result<()> {
        if map.domain_dim() != self.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.domain_dim,
                found: map.domain_dim(),
            });
        }
        if map.codomain_dim() != self.codomain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.codomain_dim,
                found: map.codomain_dim(),
            });
        }
        if coeff == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(map);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    pub fn scale(&self, factor: i64) -> Self {
        let mut out = Self::zero(self.domain_dim, self.codomain_dim);
        if factor != 0 {
            out.terms = self.terms.iter().map(|(m, &c)| (m.clone(), c * factor)).collect();
        }
        out
    }

    fn check_same_type(&self, other: &FormalChain) -> Result<()> {
        if self.domain_dim != other.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.domain_dim,
                found: other.domain_dim,
            });
        }
        if self.codomain_dim != other.codomain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.codomain_dim,
                found: other.codomain_dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FormalChain) -> Result<Self> {
        self.check_same_type(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &FormalChain) -> Result<Self> {
        self.try_add(&other.scale(-1))
    }

    /// The bilinear composite `self ∘ other`.
    pub fn compose(&self, other: &FormalChain) -> Result<Self> {
        if other.codomain_dim != self.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.domain_dim,
                found: other.codomain_dim,
            });
        }
        let mut out = Self::zero(other.domain_dim, self.codomain_dim);
        for (g, &a) in &self.terms {
            for (f, &b) in &other.terms {
                out.add_term(g.compose(f)?, a * b)?;
            }
        }
        Ok(out)
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// The cone on the apex `A = E_apex^p`: `[P_0, …, P_q] ↦ [P_0, …, P_q, A]`,
    /// extended linearly. It satisfies
    /// `cone(x) ∘ ∂ = x - cone(x ∘ ∂)` for `q ≥ 1` and
    /// `cone(x) ∘ ∂ = x - aug(x)·[A]` for `q = 0`.
    pub fn cone(&self, apex_index: usize) -> Result<Self> {
        let apex = vertex_e(self.codomain_dim, apex_index)?;
        let mut out = Self::zero(self.domain_dim + 1, self.codomain_dim);
        for (m, &c) in &self.terms {
            out.add_term(m.with_extra_vertex(apex.clone())?, c)?;
        }
        Ok(out)
    }
}

impl Add for &FormalChain {
    type Output = FormalChain;
    fn add(self, other: &FormalChain) -> FormalChain {
        self.try_add(other).expect("adding chains of different types")
    }
}

impl Sub for &FormalChain {
    type Output = FormalChain;
    fn sub(self, other: &FormalChain) -> FormalChain {
        self.try_sub(other)
            .expect("subtracting chains of different types")
    }
}

impl Neg for &FormalChain {
    type Output = FormalChain;
    fn neg(self) -> FormalChain {
        self.scale(-1)
    }
}

impl fmt::Display for FormalChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// `∂_{n-1,n} = Σ_{i=0}^n (-1)^i ∂_i^n`.
pub fn boundary_chain(n: usize) -> Result<FormalChain> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            lo: 1,
            hi: usize::MAX,
        });
    }
    let mut out = FormalChain::zero(n - 1, n);
    for i in 0..=n {
        out.add_term(AffineSimplexMap::face(n, i)?, if i % 2 == 0 { 1 } else { -1 })?;
    }
    Ok(out)
}

/// `div_n^k = Σ_{(v,σ) ∈ Ens_n^k} ε(σ) c_k(v, σ)`.
pub fn div_chain(n: usize, k: usize) -> Result<FormalChain> {
    let mut out = FormalChain::zero(n, n);
    for e in enumerate_ens(n, k)? {
        let piece = AffineSimplexMap::subdivision_piece(&e.v, &e.sigma, k)?;
        out.add_term(piece, e.sigma.sign().to_i64())?;
    }
    Ok(out)
}

/// The operators `L^k_{m+1,m}` for `m = 0..=n_max` (index `m` of the result),
/// defined by `L_{1,0} = 0` and
/// `L_{m+1,m} = cone(id_m - div_m^k - ∂_{m-1,m} ∘ L_{m,m-1})`, apex `E_0^m`.
/// They satisfy `id_m - div_m^k = L_{m+1,m} ∘ ∂_{m,m+1} + ∂_{m-1,m} ∘ L_{m,m-1}`.
pub fn build_homotopy_l(k: usize, n_max: usize) -> Result<Vec<FormalChain>> {
    let mut out: Vec<FormalChain> = Vec::with_capacity(n_max + 1);
    for m in 0..=n_max {
        let mut x = FormalChain::identity(m).try_sub(&div_chain(m, k)?)?;
        if m >= 1 {
            x = x.try_sub(&boundary_chain(m)?.compose(&out[m - 1])?)?;
        }
        out.push(x.cone(0)?);
    }
    Ok(out)
}

/// Both sides of the homotopy identity in dimension `m`, given the family
/// produced by [`build_homotopy_l`]: `(id_m - div_m^k, L∘∂ + ∂∘L)`.
pub fn homotopy_identity_sides(ls: &[FormalChain], m: usize, k: usize) -> Result<(FormalChain, FormalChain)> {
    if m >= ls.len() {
        return Err(Error::MissingDegree(m));
    }
    let lhs = FormalChain::identity(m).try_sub(&div_chain(m, k)?)?;
    let mut rhs = ls[m].compose(&boundary_chain(m + 1)?)?;
    if m >= 1 {
        rhs = rhs.try_add(&boundary_chain(m)?.compose(&ls[m - 1])?)?;
    }
    Ok((lhs, rhs))
}

/// `Σ sgn(x) f(x)` over `x ∈ Ens_n^k × [0, n]` whose involution partner
/// stays in `Ens_n^k × [0, n]`. These are the interior faces of the
/// subdivision, which cancel in pairs.
pub fn interior_face_sum(n: usize, k: usize) -> Result<FormalChain> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            lo: 1,
            hi: usize::MAX,
        });
    }
    let mut out = FormalChain::zero(n - 1, n);
    for e in enumerate_ens(n, k)? {
        for i in 0..=n {
            let x = InvolPoint::new(e.v.clone(), e.sigma.clone(), i)?;
            if x.invol().in_ens(k) {
                let (m, s) = f_map(&x, k)?;
                out.add_term(m, s.to_i64())?;
            }
        }
    }
    Ok(out)
}
