//! Permutations, compositions and the shuffle combinatorics behind edgewise
//! subdivision.
//!
//! Permutations are 1-indexed: a permutation of degree `n` is stored as the
//! list of images of `1..=n`. Composition `a.compose(b)` is `a ∘ b`, i.e. `b`
//! is applied first. The pullback `σ*` acts on coordinate vectors by
//! `(σ* x)_i = x_{σ(i)}`, so `(σ ∘ τ)* = τ* ∘ σ*`.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sign `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    /// `(-1)^k`.
    pub fn from_parity(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// `p_i : [1,n] -> [1,n-1]`, identifying `i` and `i+1`.
pub fn collapse_at(i: usize, x: usize) -> usize {
    if x <= i {
        x
    } else {
        x - 1
    }
}

/// `st_i : [1,n-1] -> [1,n]`, skipping the value `i+1`.
pub fn skip_after(i: usize, x: usize) -> usize {
    if x <= i {
        x
    } else {
        x + 1
    }
}

/// A permutation of `[1, n]`, stored as its list of images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation { degree: n, images });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition `s_{i,i+1}` of `[1, n]`.
    pub fn adjacent_transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                lo: 1,
                hi: n.saturating_sub(1),
            });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    /// The `n`-cycle `c` with `c(i) = i + 1` for `i < n` and `c(n) = 1`.
    pub fn long_cycle(n: usize) -> Self {
        Permutation {
            images: (1..=n).map(|i| if i == n { 1 } else { i + 1 }).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(x)` for `x` in `1..=n`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    /// `σ* x = (x_{σ(1)}, …, x_{σ(n)})`.
    pub fn pullback<T: Clone>(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.degree(), "pullback: length mismatch");
        self.images.iter().map(|&s| x[s - 1].clone()).collect()
    }

    pub fn inversion_count(&self) -> usize {
        let n = self.degree();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.images[a] > self.images[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `ε(σ) = (-1)^{|inv(σ)|}`.
    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.inversion_count())
    }

    /// `inv(τ, i) = { j | (j - i)(τ(j) - τ(i)) < 0 }`, in increasing order.
    pub fn inversions_at(&self, i: usize) -> Result<Vec<usize>> {
        let n = self.degree();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange {
                index: i,
                lo: 1,
                hi: n,
            });
        }
        let ti = self.apply(i) as i64;
        Ok((1..=n)
            .filter(|&j| (j as i64 - i as i64) * (self.apply(j) as i64 - ti) < 0)
            .collect())
    }

    /// The extension `τ^(i)` of a permutation of `[1, n-1]` to `[1, n]`
    /// (here `n - 1 = self.degree()` and `i ∈ [0, n]`).
    ///
    /// For `0 < i < n` it is the unique permutation with
    /// `p_{τ(i)} ∘ τ^(i) = τ ∘ p_i`, `τ^(i)(i) = τ(i)` and
    /// `τ^(i)(i+1) = τ(i) + 1`. For `i = 0` it fixes `1` and shifts `τ` up;
    /// for `i = n` it fixes `n`.
    pub fn face_extension(&self, i: usize) -> Result<Self> {
        let m = self.degree();
        let n = m + 1;
        if i > n {
            return Err(Error::IndexOutOfRange {
                index: i,
                lo: 0,
                hi: n,
            });
        }
        let images = if i == 0 {
            std::iter::once(1)
                .chain(self.images.iter().map(|&x| x + 1))
                .collect()
        } else if i == n {
            self.images.iter().copied().chain(std::iter::once(n)).collect()
        } else {
            let ti = self.apply(i);
            (1..=n)
                .map(|x| {
                    if x == i {
                        ti
                    } else if x == i + 1 {
                        ti + 1
                    } else {
                        skip_after(ti, self.apply(collapse_at(i, x)))
                    }
                })
                .collect()
        };
        Ok(Permutation { images })
    }

    /// All permutations of `[1, n]` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for x in 1..=n {
                if !used[x] {
                    used[x] = true;
                    current.push(x);
                    rec(n, current, used, out);
                    current.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

/// A composition `(n_1, …, n_k)` of `n` into non-negative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    /// The composition `(|v⁻¹(0)|, …, |v⁻¹(k-1)|)` of a level vector.
    pub fn from_levels(v: &[i64], k: usize) -> Self {
        let mut parts = vec![0; k];
        for &x in v {
            parts[x as usize] += 1;
        }
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The non-decreasing level vector taking value `b` on block `b`.
    pub fn levels(&self) -> Vec<i64> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(b, &len)| std::iter::repeat_n(b as i64, len))
            .collect()
    }

    /// Block index (0-based) of every position `1..=n`.
    pub fn block_of_positions(&self) -> Vec<usize> {
        self.levels().into_iter().map(|b| b as usize).collect()
    }

    /// The set `{n_1, n_1 + n_2, …, n_1 + ⋯ + n_k}` of partial sums.
    pub fn block_ends(&self) -> Vec<usize> {
        let mut acc = 0;
        let mut out: Vec<usize> = self
            .parts
            .iter()
            .map(|&p| {
                acc += p;
                acc
            })
            .collect();
        out.dedup();
        out
    }

    /// Whether `σ` is increasing on every block.
    pub fn is_shuffle(&self, sigma: &Permutation) -> bool {
        if sigma.degree() != self.total() {
            return false;
        }
        let mut start = 0;
        for &len in &self.parts {
            let block = &sigma.images()[start..start + len];
            if block.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            start += len;
        }
        true
    }

    /// All shuffles of the composition, in lexicographic order of images.
    pub fn shuffles(&self) -> Vec<Permutation> {
        let n = self.total();
        let starts: Vec<usize> = self
            .parts
            .iter()
            .scan(0, |acc, &p| {
                let s = *acc;
                *acc += p;
                Some(s)
            })
            .collect();
        let mut fill = vec![0usize; self.parts.len()];
        let mut images = vec![0usize; n];
        let mut out = Vec::new();
        // Values are handed out in increasing order, each to a block with
        // room left; the block's next free slot receives it.
        fn rec(
            value: usize,
            n: usize,
            parts: &[usize],
            starts: &[usize],
            fill: &mut [usize],
            images: &mut [usize],
            out: &mut Vec<Permutation>,
        ) {
            if value > n {
                out.push(Permutation {
                    images: images.to_vec(),
                });
                return;
            }
            for b in 0..parts.len() {
                if fill[b] < parts[b] {
                    images[starts[b] + fill[b]] = value;
                    fill[b] += 1;
                    rec(value + 1, n, parts, starts, fill, images, out);
                    fill[b] -= 1;
                }
            }
        }
        rec(1, n, &self.parts, &starts, &mut fill, &mut images, &mut out);
        out.sort();
        out
    }

    /// Whether `s_{i,i+1} ∘ σ` leaves the set of shuffles, decided by the
    /// positional criterion `σ⁻¹(i) ∉ block_ends` and `σ⁻¹(i+1) = σ⁻¹(i) + 1`.
    pub fn transposition_leaves_shuffles(&self, sigma: &Permutation, i: usize) -> Result<bool> {
        if !self.is_shuffle(sigma) {
            return Err(Error::NotAShuffle {
                parts: self.parts.clone(),
                sigma: sigma.images().to_vec(),
            });
        }
        let n = sigma.degree();
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                lo: 1,
                hi: n.saturating_sub(1),
            });
        }
        let inv = sigma.inverse();
        let j = inv.apply(i);
        Ok(!self.block_ends().contains(&j) && inv.apply(i + 1) == j + 1)
    }

    /// All compositions of `n` into exactly `k` parts, in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<Composition> {
        let mut out = Vec::new();
        let mut parts = Vec::with_capacity(k);
        fn rec(remaining: usize, slots: usize, parts: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if slots == 1 {
                parts.push(remaining);
                out.push(Composition { parts: parts.clone() });
                parts.pop();
                return;
            }
            for first in 0..=remaining {
                parts.push(first);
                rec(remaining - first, slots - 1, parts, out);
                parts.pop();
            }
        }
        if k == 0 {
            if n == 0 {
                out.push(Composition { parts: vec![] });
            }
            return out;
        }
        rec(n, k, &mut parts, &mut out);
        out
    }
}

/// A pair `(v, σ)` with `v` non-decreasing in `[0, k-1]^n` and `σ`
/// increasing on each level set of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EnsElement {
    pub v: Vec<i64>,
    pub sigma: Permutation,
}

/// Membership test for the index set of the degree-`k` subdivision.
pub fn is_ens(v: &[i64], sigma: &Permutation, k: usize) -> bool {
    if v.len() != sigma.degree() || k == 0 {
        return false;
    }
    if v.iter().any(|&x| x < 0 || x >= k as i64) || v.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    Composition::from_levels(v, k).is_shuffle(sigma)
}

/// All of `Ens_n^k`, ordered lexicographically by `v` then by `σ`. There
/// are exactly `k^n` elements.
pub fn enumerate_ens(n: usize, k: usize) -> Result<Vec<EnsElement>> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let mut comps = Composition::all(n, k);
    // Lexicographic order on level vectors is reverse-lexicographic on parts.
    comps.sort_by_key(|c| c.levels());
    let mut out = Vec::new();
    for c in comps {
        let v = c.levels();
        for sigma in c.shuffles() {
            out.push(EnsElement { v: v.clone(), sigma });
        }
    }
    Ok(out)
}

/// A point `(v, σ, i)` of `Z^n × S_n × [0, n]`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvolPoint {
    pub v: Vec<i64>,
    pub sigma: Permutation,
    pub i: usize,
}

impl InvolPoint {
    pub fn new(v: Vec<i64>, sigma: Permutation, i: usize) -> Result<Self> {
        let n = sigma.degree();
        if n == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                lo: 1,
                hi: usize::MAX,
            });
        }
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        if i > n {
            return Err(Error::IndexOutOfRange {
                index: i,
                lo: 0,
                hi: n,
            });
        }
        Ok(InvolPoint { v, sigma, i })
    }

    pub fn dim(&self) -> usize {
        self.sigma.degree()
    }

    /// `sgn(v, σ, i) = (-1)^i ε(σ)`.
    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.i) * self.sigma.sign()
    }

    /// Whether `(v, σ) ∈ Ens_n^k`.
    pub fn in_ens(&self, k: usize) -> bool {
        is_ens(&self.v, &self.sigma, k)
    }

    /// The sign-reversing involution pairing cancelling faces of adjacent
    /// subdivision pieces.
    pub fn invol(&self) -> InvolPoint {
        let n = self.dim();
        let i = self.i;
        if (1..n).contains(&i) {
            let s = Permutation::adjacent_transposition(n, i).expect("1 <= i < n");
            InvolPoint {
                v: self.v.clone(),
                sigma: s.compose(&self.sigma).expect("same degree"),
                i,
            }
        } else if i == n {
            // σ*(e_n) = e_{σ⁻¹(n)}
            let mut v = self.v.clone();
            v[self.sigma.inverse().apply(n) - 1] += 1;
            let c = Permutation::long_cycle(n);
            InvolPoint {
                v,
                sigma: c.compose(&self.sigma).expect("same degree"),
                i: 0,
            }
        } else {
            let mut v = self.v.clone();
            v[self.sigma.inverse().apply(1) - 1] -= 1;
            let c_inv = Permutation::long_cycle(n).inverse();
            InvolPoint {
                v,
                sigma: c_inv.compose(&self.sigma).expect("same degree"),
                i: n,
            }
        }
    }
}

/// The map `(w, τ, i) ↦ (w ∘ p_i, τ^(i), τ(i))` (with the padded vectors
/// `(0, w)` and `(w, k-1)` at `i = 0` and `i = n`). Restricted to
/// `Ens_{n-1}^k × [0, n]` it is a bijection onto the points whose
/// involution partner leaves `Ens_n^k`.
pub fn bij(w: &[i64], tau: &Permutation, i: usize, k: usize) -> Result<InvolPoint> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let m = tau.degree();
    if w.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: w.len(),
        });
    }
    let n = m + 1;
    if i > n {
        return Err(Error::IndexOutOfRange {
            index: i,
            lo: 0,
            hi: n,
        });
    }
    let sigma = tau.face_extension(i)?;
    let point = if i == 0 {
        let v = std::iter::once(0).chain(w.iter().copied()).collect();
        InvolPoint { v, sigma, i: 0 }
    } else if i == n {
        let v = w.iter().copied().chain(std::iter::once(k as i64 - 1)).collect();
        InvolPoint { v, sigma, i: n }
    } else {
        let v = (1..=n).map(|x| w[collapse_at(i, x) - 1]).collect();
        InvolPoint {
            v,
            sigma,
            i: tau.apply(i),
        }
    };
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![3, 1]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(Permutation::identity(4).sign(), Sign::Pos);
        assert_eq!(p(&[2, 1]).sign(), Sign::Neg);
        assert_eq!(Permutation::long_cycle(3), p(&[2, 3, 1]));
        assert_eq!(p(&[2, 3, 1]).sign(), Sign::Pos);
        for n in 1..=7 {
            assert_eq!(Permutation::long_cycle(n).sign(), Sign::from_parity(n - 1));
        }
    }

    #[test]
    fn inversions_at_examples() {
        let id = Permutation::identity(4);
        for i in 1..=4 {
            assert!(id.inversions_at(i).unwrap().is_empty());
        }
        let t = p(&[2, 3, 1]);
        assert_eq!(t.inversions_at(1).unwrap(), vec![3]);
        assert_eq!(t.inversions_at(3).unwrap(), vec![1, 2]);
        assert!(t.inversions_at(0).is_err());
        assert!(t.inversions_at(4).is_err());
    }

    #[test]
    fn face_extension_examples() {
        assert_eq!(
            Permutation::identity(2).face_extension(1).unwrap(),
            Permutation::identity(3)
        );
        assert_eq!(p(&[2, 1]).face_extension(1).unwrap(), p(&[2, 3, 1]));
        assert_eq!(p(&[2, 1]).face_extension(0).unwrap(), p(&[1, 3, 2]));
        assert_eq!(p(&[2, 1]).face_extension(3).unwrap(), p(&[2, 1, 3]));
        assert!(p(&[2, 1]).face_extension(4).is_err());
    }

    #[test]
    fn pullback_is_contravariant() {
        let x = vec![10, 20, 30, 40];
        for s in Permutation::all(4) {
            for t in Permutation::all(4) {
                let st = s.compose(&t).unwrap();
                assert_eq!(st.pullback(&x), t.pullback(&s.pullback(&x)));
            }
        }
    }

    #[test]
    fn invol_examples() {
        let x = InvolPoint::new(vec![0, 1], Permutation::identity(2), 1).unwrap();
        assert_eq!(x.invol(), InvolPoint::new(vec![0, 1], p(&[2, 1]), 1).unwrap());
        let y = InvolPoint::new(vec![0, 0], Permutation::identity(2), 2).unwrap();
        assert_eq!(y.invol(), InvolPoint::new(vec![0, 1], p(&[2, 1]), 0).unwrap());
        assert_eq!(y.invol().invol(), y);
        assert!(InvolPoint::new(vec![], Permutation::identity(0), 0).is_err());
    }

    #[test]
    fn bij_examples() {
        let id1 = Permutation::identity(1);
        let id2 = Permutation::identity(2);
        assert_eq!(
            bij(&[0], &id1, 1, 2).unwrap(),
            InvolPoint::new(vec![0, 0], id2.clone(), 1).unwrap()
        );
        assert_eq!(
            bij(&[0], &id1, 0, 2).unwrap(),
            InvolPoint::new(vec![0, 0], id2.clone(), 0).unwrap()
        );
        assert_eq!(
            bij(&[0], &id1, 2, 2).unwrap(),
            InvolPoint::new(vec![0, 1], id2, 2).unwrap()
        );
        assert_eq!(bij(&[0], &id1, 1, 0), Err(Error::ZeroArity));
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(
            Composition::new(vec![1, 1]).shuffles(),
            vec![p(&[1, 2]), p(&[2, 1])]
        );
        assert_eq!(
            Composition::new(vec![2, 0]).shuffles(),
            vec![Permutation::identity(2)]
        );
        assert_eq!(Composition::new(vec![2, 1]).shuffles().len(), 3);
        assert_eq!(
            Composition::new(vec![]).shuffles(),
            vec![Permutation::identity(0)]
        );
    }

    #[test]
    fn shuffle_transposition_examples() {
        let c11 = Composition::new(vec![1, 1]);
        assert!(!c11
            .transposition_leaves_shuffles(&Permutation::identity(2), 1)
            .unwrap());
        let c20 = Composition::new(vec![2, 0]);
        assert!(c20
            .transposition_leaves_shuffles(&Permutation::identity(2), 1)
            .unwrap());
        assert!(matches!(
            c20.transposition_leaves_shuffles(&p(&[2, 1]), 1),
            Err(Error::NotAShuffle { .. })
        ));
        let c21 = Composition::new(vec![2, 1]);
        // [1,3,2]: s_{2,3}∘σ = [1,2,3] is still a shuffle.
        assert!(!c21.transposition_leaves_shuffles(&p(&[1, 3, 2]), 2).unwrap());
        // [1,2,3]: s_{1,2}∘σ = [2,1,3] breaks the first block.
        assert!(c21.transposition_leaves_shuffles(&p(&[1, 2, 3]), 1).unwrap());
    }

    #[test]
    fn ens_examples() {
        assert_eq!(enumerate_ens(2, 2).unwrap().len(), 4);
        let one = enumerate_ens(1, 3).unwrap();
        let expected: Vec<EnsElement> = (0..3)
            .map(|j| EnsElement {
                v: vec![j],
                sigma: Permutation::identity(1),
            })
            .collect();
        assert_eq!(one, expected);
        for n in 0..5 {
            let single = enumerate_ens(n, 1).unwrap();
            assert_eq!(single.len(), 1);
            assert_eq!(single[0].v, vec![0; n]);
            assert_eq!(single[0].sigma, Permutation::identity(n));
        }
        assert_eq!(enumerate_ens(2, 0), Err(Error::ZeroArity));
    }

    #[test]
    fn ens_order_is_lexicographic() {
        let all = enumerate_ens(3, 3).unwrap();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn compositions_enumerated() {
        assert_eq!(Composition::all(2, 2).len(), 3);
        assert_eq!(Composition::all(0, 3), vec![Composition::new(vec![0, 0, 0])]);
        assert_eq!(Composition::all(3, 0), vec![]);
        assert_eq!(Composition::new(vec![2, 0, 1]).block_ends(), vec![2, 3]);
    }
}
