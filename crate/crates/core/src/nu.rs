//! The map from words to relative homology classes of `(X^n, Y)`.
//!
//! A positive word `w = x_{e_1} ⋯ x_{e_ℓ}`, read as the concatenated loop on
//! `[0, 1]` (letter `b` on `[(b-1)/ℓ, b/ℓ]`), gives the singular simplex
//! `t ↦ (w(t_1), …, w(t_n))`. Its degree-`ℓ` edgewise subdivision splits
//! into `ℓ^n` pieces, each a product of single-letter loops precomposed
//! with a coordinate permutation. In the simplicial model every piece is a
//! product simplex, and the signed sum of pieces is a relative cycle whose
//! class is `ν_n(w)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::affine::{AffineSimplexMap, RationalPoint};
use crate::error::{Error, Result};
use crate::pair::{add_simplex, PairComplex, ProductSimplex, SimplexChain, WedgeSimplex};
use crate::perm::{Composition, Permutation, Sign};
use crate::words::{positivize, Word, WordCombination};
use crate::zlinalg::{HomologyClass, HomologySummary, IntMatrix};

/// One summand `ε(σ) (γ_1^{(n_1)} × ⋯ × γ_ℓ^{(n_ℓ)}) ∘ σ*` of the
/// subdivided simplex of a positive word, with blocks labelled by `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShuffleTerm<L> {
    pub labels: Vec<L>,
    pub parts: Composition,
    pub sigma: Permutation,
    pub sign: Sign,
}

impl<L: Clone> ShuffleTerm<L> {
    /// Label of the block containing each position `1..=n`.
    pub fn position_labels(&self) -> Vec<L> {
        self.parts
            .block_of_positions()
            .into_iter()
            .map(|b| self.labels[b].clone())
            .collect()
    }
}

/// All `ℓ^n` shuffle terms for blocks labelled `labels` (in traversal
/// order), ordered by composition and then by shuffle.
pub fn shuffle_expand_labels<L: Clone>(labels: &[L], n: usize) -> Vec<ShuffleTerm<L>> {
    let mut out = Vec::new();
    let mut comps = Composition::all(n, labels.len());
    comps.sort_by_key(Composition::levels);
    for parts in comps {
        for sigma in parts.shuffles() {
            out.push(ShuffleTerm {
                labels: labels.to_vec(),
                parts: parts.clone(),
                sign: sigma.sign(),
                sigma,
            });
        }
    }
    out
}

/// Shuffle terms of a non-empty positive word; labels are generator indices.
pub fn shuffle_expand(w: &Word, n: usize) -> Result<Vec<ShuffleTerm<usize>>> {
    if w.is_empty() || !w.is_positive() {
        return Err(Error::NotPositive(w.to_string()));
    }
    let labels: Vec<usize> = w.letters().iter().map(|l| l.generator()).collect();
    Ok(shuffle_expand_labels(&labels, n))
}

/// The product simplex of a term: position `p` in block `b` becomes the
/// edge of letter `b` with jump `n - σ(p) + 1`, so that it reads the
/// coordinate `t_{σ(p)}`.
pub fn term_to_simplex(t: &ShuffleTerm<usize>) -> Result<ProductSimplex> {
    let n = t.sigma.degree();
    if t.parts.total() != n || t.parts.parts().len() != t.labels.len() {
        return Err(Error::InvalidSimplex(format!(
            "term with parts {:?} does not match {} letters in degree {n}",
            t.parts.parts(),
            t.labels.len()
        )));
    }
    if !t.parts.is_shuffle(&t.sigma) {
        return Err(Error::NotAShuffle {
            parts: t.parts.parts().to_vec(),
            sigma: t.sigma.images().to_vec(),
        });
    }
    let components = t
        .position_labels()
        .into_iter()
        .enumerate()
        .map(|(p, g)| WedgeSimplex::edge(g, n - t.sigma.apply(p + 1) + 1))
        .collect();
    ProductSimplex::new(n, components)
}

/// The signed sum of product simplices representing `ν_n(w)` for a
/// positive word; the empty word gives the zero chain.
pub fn nu_chain(w: &Word, n: usize) -> Result<SimplexChain> {
    let mut chain = SimplexChain::new();
    if w.is_empty() {
        return Ok(chain);
    }
    for t in shuffle_expand(w, n)? {
        add_simplex(&mut chain, term_to_simplex(&t)?, t.sign.to_i64());
    }
    Ok(chain)
}

/// Evaluates `ν_n` for a wedge of `g` circles.
#[derive(Debug, Clone)]
pub struct NuEvaluator {
    n: usize,
    g: usize,
    complex: PairComplex,
    homology: HomologySummary,
}

impl NuEvaluator {
    pub fn new(n: usize, g: usize) -> Result<Self> {
        let complex = PairComplex::for_top_degree(n, g)?;
        let homology = complex.homology(n)?;
        Ok(NuEvaluator {
            n,
            g,
            complex,
            homology,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn complex(&self) -> &PairComplex {
        &self.complex
    }

    pub fn homology(&self) -> &HomologySummary {
        &self.homology
    }

    /// The chain vector of `ν_n` applied to a combination; words with
    /// inverse letters are first rewritten as positive combinations.
    pub fn chain_of(&self, c: &WordCombination) -> Result<Vec<i64>> {
        let positive = if c.is_positive() {
            c.clone()
        } else {
            c.iter().fold(WordCombination::zero(), |acc, (w, k)| {
                acc.add(&positivize(w, self.n).scale(k))
            })
        };
        let mut total = vec![0i64; self.complex.rank(self.n)];
        for (w, k) in positive.iter() {
            w.check_rank(self.g)?;
            let chain = nu_chain(w, self.n)?;
            let v = self
                .complex
                .chain_vector(self.n, chain.iter().map(|(s, &c)| (s, c)))?;
            for (t, x) in total.iter_mut().zip(v) {
                *t += k * x;
            }
        }
        Ok(total)
    }

    /// Homology coordinates of `ν_n(c)`.
    pub fn eval(&self, c: &WordCombination) -> Result<HomologyClass> {
        self.homology.coordinates_i64(&self.chain_of(c)?)
    }

    pub fn eval_word(&self, w: &Word) -> Result<HomologyClass> {
        self.eval(&WordCombination::from_word(w.clone()))
    }

    /// Homology coordinates of a chain of product simplices of dimension `n`.
    pub fn eval_chain(&self, chain: &SimplexChain) -> Result<HomologyClass> {
        let v = self
            .complex
            .chain_vector(self.n, chain.iter().map(|(s, &c)| (s, c)))?;
        self.homology.coordinates_i64(&v)
    }
}

/// The word `α_{i_1} ⋯ α_{i_m} γ` (in traversal order) for `I = {i_1 < ⋯ < i_m}`.
pub fn subset_word(gamma: &Word, alphas: &[Word], subset: &[usize]) -> Word {
    subset
        .iter()
        .fold(Word::empty(), |acc, &i| acc.concat(&alphas[i]))
        .concat(gamma)
}

/// Subsets of `[0, m)` as sorted index lists, in binary order.
pub fn subsets(m: usize) -> Vec<Vec<usize>> {
    (0u64..1 << m)
        .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Result of summing `Σ_I (-1)^{|I|} ν_n(α_I γ)` over all `I ⊂ [0, n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopSubsetOutcome {
    pub total: HomologyClass,
    pub terms: Vec<(Vec<usize>, HomologyClass)>,
}

impl LoopSubsetOutcome {
    pub fn vanishes(&self) -> bool {
        self.total.is_zero()
    }
}

/// Evaluates the alternating sum over subsets of the `n + 1` loops.
pub fn loop_subset_check(eval: &NuEvaluator, gamma: &Word, alphas: &[Word]) -> Result<LoopSubsetOutcome> {
    let n = eval.n();
    if alphas.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: alphas.len(),
        });
    }
    for w in std::iter::once(gamma).chain(alphas) {
        if !w.is_positive() {
            return Err(Error::NotPositive(w.to_string()));
        }
    }
    let mut total = vec![0i64; eval.complex().rank(n)];
    let mut terms = Vec::new();
    for subset in subsets(n + 1) {
        let w = subset_word(gamma, alphas, &subset);
        let v = eval.chain_of(&WordCombination::from_word(w))?;
        let sign = if subset.len() % 2 == 0 { 1 } else { -1 };
        for (t, x) in total.iter_mut().zip(&v) {
            *t += sign * x;
        }
        terms.push((subset, eval.homology().coordinates_i64(&v)?));
    }
    Ok(LoopSubsetOutcome {
        total: eval.homology().coordinates_i64(&total)?,
        terms,
    })
}

/// A formal path: the base path `γ` or one of the loops `α_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PathSymbol {
    Alpha(usize),
    Gamma,
}

/// A product of formal paths precomposed with a coordinate permutation:
/// output position `p` reads path `slots[p].0` at coordinate `slots[p].1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolicMapTerm {
    pub slots: Vec<(PathSymbol, usize)>,
}

impl SymbolicMapTerm {
    fn from_term(t: &ShuffleTerm<PathSymbol>) -> Self {
        SymbolicMapTerm {
            slots: t
                .position_labels()
                .into_iter()
                .enumerate()
                .map(|(p, s)| (s, t.sigma.apply(p + 1)))
                .collect(),
        }
    }

    /// Number of positions read by each symbol, as `(ν_0, …, ν_n, ν_γ)`.
    pub fn profile(&self, n: usize) -> Vec<usize> {
        let mut nu = vec![0; n + 2];
        for (s, _) in &self.slots {
            match s {
                PathSymbol::Alpha(i) => nu[*i] += 1,
                PathSymbol::Gamma => nu[n + 1] += 1,
            }
        }
        nu
    }
}

/// Symbolic sum of subdivided simplices.
pub type SymbolicChain = BTreeMap<SymbolicMapTerm, i64>;

/// The subdivided simplex of `α_{i_1} ⋯ α_{i_m} γ` in degree `|I| + 1`,
/// expanded into symbolic terms.
pub fn subset_expansion(subset: &[usize], n: usize) -> SymbolicChain {
    let labels: Vec<PathSymbol> = subset
        .iter()
        .map(|&i| PathSymbol::Alpha(i))
        .chain(std::iter::once(PathSymbol::Gamma))
        .collect();
    let mut out = SymbolicChain::new();
    for t in shuffle_expand_labels(&labels, n) {
        let key = SymbolicMapTerm::from_term(&t);
        *out.entry(key).or_insert(0) += t.sign.to_i64();
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `Σ_{I ⊂ [0, n]} (-1)^{|I|} (div_n^{|I|+1})^*(c_I)` in symbolic form; it
/// is the zero chain.
pub fn alternating_subdivision_sum(n: usize) -> Result<SymbolicChain> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            lo: 1,
            hi: usize::MAX,
        });
    }
    let mut out = SymbolicChain::new();
    for subset in subsets(n + 1) {
        let sign = if subset.len() % 2 == 0 { 1 } else { -1 };
        for (t, c) in subset_expansion(&subset, n) {
            *out.entry(t).or_insert(0) += sign * c;
        }
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// `Σ (-1)^{|I|}` over the subsets `I ⊂ [0, n]` containing the support of
/// `profile[0..=n]`, computed by enumeration.
pub fn profile_coefficient(profile: &[usize]) -> i64 {
    let m = profile.len().saturating_sub(1);
    subsets(m)
        .into_iter()
        .filter(|s| (0..m).all(|x| profile[x] == 0 || s.contains(&x)))
        .map(|s| if s.len() % 2 == 0 { 1 } else { -1 })
        .sum()
}

/// A point of the wedge: the basepoint, or an interior point of a loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WedgePoint {
    Base,
    OnLoop { generator: usize, param: BigRational },
}

impl WedgePoint {
    fn on(generator: usize, t: &BigRational) -> WedgePoint {
        if t.is_zero() || t.is_one() {
            WedgePoint::Base
        } else {
            WedgePoint::OnLoop {
                generator,
                param: t.clone(),
            }
        }
    }
}

/// The concatenated loop of a positive word at parameter `s ∈ [0, 1]`.
pub fn evaluate_path(w: &Word, s: &BigRational) -> WedgePoint {
    let l = w.len();
    if l == 0 {
        return WedgePoint::Base;
    }
    let ks = s * BigRational::from_integer(l.into());
    if ks.is_integer() {
        return WedgePoint::Base;
    }
    let b = ks.ceil().to_integer();
    let local = &ks - BigRational::from_integer(&b - 1);
    let b: usize = b.try_into().expect("segment index fits usize");
    WedgePoint::on(w.letters()[b - 1].generator(), &local)
}

/// The geometric realization of a product simplex at a point of `Δ^d`.
pub fn realize_simplex(s: &ProductSimplex, x: &RationalPoint) -> Vec<WedgePoint> {
    let d = s.dim();
    s.components()
        .iter()
        .map(|c| match *c {
            WedgeSimplex::Const => WedgePoint::Base,
            WedgeSimplex::Edge { generator, jump } => WedgePoint::on(generator, &x.coords()[d - jump]),
        })
        .collect()
}

/// A disagreement found by [`sample_eval_oracle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleMismatch {
    pub parts: Vec<usize>,
    pub sigma: Vec<usize>,
    pub point: RationalPoint,
}

/// Outcome of the pointwise comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub cases: usize,
    pub mismatch: Option<OracleMismatch>,
}

/// Compares, at every given point of `Δ^n` and for every piece of the
/// degree-`|w|` subdivision, three evaluations: the loop applied to the
/// subdivision piece `c_k(v, σ)`, the block form
/// `(γ_1^{(n_1)} × ⋯) ∘ σ*`, and the realization of the product simplex
/// from [`term_to_simplex`].
pub fn sample_eval_oracle(w: &Word, n: usize, points: &[RationalPoint]) -> Result<OracleOutcome> {
    for x in points {
        if x.dim() != n || !x.in_standard_simplex() {
            return Err(Error::PointOutsideSimplex(x.to_string()));
        }
    }
    if !w.is_positive() {
        return Err(Error::NotPositive(w.to_string()));
    }
    if w.is_empty() {
        // The constant loop: both sides are the basepoint everywhere.
        let id = AffineSimplexMap::identity(n);
        for x in points {
            let y = id.apply(x)?;
            if y.coords().iter().any(|s| evaluate_path(w, s) != WedgePoint::Base) {
                return Ok(OracleOutcome {
                    cases: points.len(),
                    mismatch: Some(OracleMismatch {
                        parts: vec![],
                        sigma: Permutation::identity(n).images().to_vec(),
                        point: x.clone(),
                    }),
                });
            }
        }
        return Ok(OracleOutcome {
            cases: points.len(),
            mismatch: None,
        });
    }
    let k = w.len();
    let mut cases = 0;
    for t in shuffle_expand(w, n)? {
        let v = t.parts.levels();
        let piece = AffineSimplexMap::subdivision_piece(&v, &t.sigma, k)?;
        let simplex = term_to_simplex(&t)?;
        let labels = t.position_labels();
        for x in points {
            cases += 1;
            let y = piece.apply(x)?;
            let via_piece: Vec<WedgePoint> = y.coords().iter().map(|s| evaluate_path(w, s)).collect();
            let via_blocks: Vec<WedgePoint> = labels
                .iter()
                .enumerate()
                .map(|(p, &g)| WedgePoint::on(g, &x.coords()[t.sigma.apply(p + 1) - 1]))
                .collect();
            let via_simplex = realize_simplex(&simplex, x);
            if via_piece != via_blocks || via_blocks != via_simplex {
                return Ok(OracleOutcome {
                    cases,
                    mismatch: Some(OracleMismatch {
                        parts: t.parts.parts().to_vec(),
                        sigma: t.sigma.images().to_vec(),
                        point: x.clone(),
                    }),
                });
            }
        }
    }
    Ok(OracleOutcome {
        cases,
        mismatch: None,
    })
}

/// `count` random points of `Δ^n`: sorted numerators over a random
/// denominator in `[1, 64]`.
pub fn random_simplex_points<R: Rng>(n: usize, count: usize, rng: &mut R) -> Vec<RationalPoint> {
    (0..count)
        .map(|_| {
            let den: i64 = rng.gen_range(1..=64);
            let mut nums: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=den)).collect();
            nums.sort_unstable();
            RationalPoint::from_fractions(&nums, den)
        })
        .collect()
}

/// A pointed map between wedges: generator `i` (1-based) of the source goes
/// to `targets[i-1]`, either a generator of the target or the basepoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WedgeMap {
    pub target_rank: usize,
    pub targets: Vec<Option<usize>>,
}

impl WedgeMap {
    pub fn new(target_rank: usize, targets: Vec<Option<usize>>) -> Result<Self> {
        if let Some(bad) = targets.iter().flatten().find(|&&t| t == 0 || t > target_rank) {
            return Err(Error::InvalidMap(format!(
                "target generator {bad} outside 1..={target_rank}"
            )));
        }
        Ok(WedgeMap { target_rank, targets })
    }

    pub fn source_rank(&self) -> usize {
        self.targets.len()
    }

    pub fn image(&self, g: usize) -> Option<usize> {
        self.targets.get(g - 1).copied().flatten()
    }

    /// All maps from a wedge of `source` circles to one of `target` circles.
    pub fn all(source: usize, target: usize) -> Vec<WedgeMap> {
        let options: Vec<Option<usize>> = std::iter::once(None).chain((1..=target).map(Some)).collect();
        let mut out = vec![vec![]];
        for _ in 0..source {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Option<usize>>| {
                    options.iter().map(move |&o| {
                        let mut p = prefix.clone();
                        p.push(o);
                        p
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|targets| WedgeMap {
                target_rank: target,
                targets,
            })
            .collect()
    }
}

/// Both sides of naturality for one map and word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalityOutcome {
    pub pushed: HomologyClass,
    pub direct: HomologyClass,
}

impl NaturalityOutcome {
    pub fn holds(&self) -> bool {
        self.pushed == self.direct
    }
}

/// Compares the push-forward of the cycle representing `ν_n(w)` with
/// `ν_n(φ(w))` computed in the target wedge.
pub fn naturality_check(
    source: &NuEvaluator,
    target: &NuEvaluator,
    map: &WedgeMap,
    w: &Word,
) -> Result<NaturalityOutcome> {
    if map.source_rank() != source.g() || map.target_rank != target.g() {
        return Err(Error::InvalidMap(format!(
            "map of ranks {}→{} used between wedges of ranks {}→{}",
            map.source_rank(),
            map.target_rank,
            source.g(),
            target.g()
        )));
    }
    if source.n() != target.n() {
        return Err(Error::DimensionMismatch {
            expected: source.n(),
            found: target.n(),
        });
    }
    w.check_rank(source.g())?;
    let n = source.n();
    let mut pushed_chain = SimplexChain::new();
    for (pw, k) in positivize(w, n).iter() {
        for (s, c) in nu_chain(pw, n)? {
            add_simplex(&mut pushed_chain, s.push_forward(|g| map.image(g)), k * c);
        }
    }
    let pushed = target.eval_chain(&pushed_chain)?;
    let image = w.substitute(|g| map.image(g))?;
    let direct = target.eval_word(&image)?;
    Ok(NaturalityOutcome { pushed, direct })
}

/// The matrix of `ν_n` on the preimages `(x - 1)^m`, `m = 0..=n`, of the
/// Magnus basis `1, X, …, X^n` for a single circle. Column `m` holds the
/// free homology coordinates of `ν_n((x - 1)^m)`.
pub fn nu_magnus_matrix(eval: &NuEvaluator) -> Result<IntMatrix> {
    let n = eval.n();
    let rank = eval.homology().free_rank();
    let mut m = IntMatrix::zeros(rank, n + 1);
    for j in 0..=n {
        let c = WordCombination::magnus_basis_preimage(&vec![1; j])?;
        let class = eval.eval(&c)?;
        for (i, x) in class.free.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ps(d: usize, pairs: &[(usize, usize)]) -> ProductSimplex {
        ProductSimplex::from_pairs(d, pairs).unwrap()
    }

    fn free(c: &HomologyClass) -> Vec<i64> {
        c.free_i64().unwrap()
    }

    #[test]
    fn expansion_examples() {
        let t = shuffle_expand(&w("a"), 2).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].parts.parts(), &[2]);
        let t = shuffle_expand(&w("aa"), 2).unwrap();
        let summary: Vec<(Vec<usize>, Vec<usize>, Sign)> = t
            .iter()
            .map(|t| (t.parts.parts().to_vec(), t.sigma.images().to_vec(), t.sign))
            .collect();
        assert_eq!(
            summary,
            vec![
                (vec![2, 0], vec![1, 2], Sign::Pos),
                (vec![1, 1], vec![1, 2], Sign::Pos),
                (vec![1, 1], vec![2, 1], Sign::Neg),
                (vec![0, 2], vec![1, 2], Sign::Pos),
            ]
        );
        let t = shuffle_expand(&w("abc"), 1).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t
            .iter()
            .all(|t| t.parts.parts().iter().filter(|&&p| p > 0).count() == 1));
        assert!(shuffle_expand(&w(""), 2).is_err());
        assert!(shuffle_expand(&w("aB"), 2).is_err());
    }

    #[test]
    fn term_count_is_power() {
        for l in 1..=3 {
            for n in 1..=4 {
                let word = Word::from_generators(&vec![1; l]).unwrap();
                assert_eq!(shuffle_expand(&word, n).unwrap().len(), l.pow(n as u32));
            }
        }
    }

    #[test]
    fn simplex_examples() {
        let t = &shuffle_expand(&w("a"), 2).unwrap()[0];
        assert_eq!(term_to_simplex(t).unwrap(), ps(2, &[(1, 2), (1, 1)]));
        let terms = shuffle_expand(&w("aa"), 2).unwrap();
        assert_eq!(term_to_simplex(&terms[2]).unwrap(), ps(2, &[(1, 1), (1, 2)]));
        let terms = shuffle_expand(&w("ab"), 2).unwrap();
        assert_eq!(term_to_simplex(&terms[1]).unwrap(), ps(2, &[(1, 2), (2, 1)]));
    }

    #[test]
    fn nu_values_in_degree_two() {
        let e = NuEvaluator::new(2, 1).unwrap();
        assert_eq!(free(&e.eval_word(&w("")).unwrap()), vec![0, 0]);
        assert_eq!(free(&e.eval_word(&w("a")).unwrap()), vec![1, 0]);
        assert_eq!(free(&e.eval_word(&w("aa")).unwrap()), vec![3, -1]);
        assert_eq!(free(&e.eval_word(&w("aaa")).unwrap()), vec![6, -3]);
    }

    #[test]
    fn loop_subset_examples() {
        let e = NuEvaluator::new(2, 1).unwrap();
        let out = loop_subset_check(&e, &w(""), &[w("a"), w("a"), w("a")]).unwrap();
        assert!(out.vanishes());
        assert_eq!(out.terms.len(), 8);
        let out = loop_subset_check(&e, &w("aa"), &[w("a"), w(""), w("a")]).unwrap();
        assert!(out.vanishes());
        let e2 = NuEvaluator::new(2, 2).unwrap();
        let out = loop_subset_check(&e2, &w("b"), &[w("a"), w("a"), w("a")]).unwrap();
        assert!(out.vanishes());
        assert!(loop_subset_check(&e2, &w("b"), &[w("a")]).is_err());
    }

    // The loops may equally be traversed after the base path.
    #[test]
    fn loop_subsets_with_base_path_first() {
        let e = NuEvaluator::new(2, 2).unwrap();
        let alphas = [w("a"), w("b"), w("a")];
        let gamma = w("ba");
        let mut total = vec![0i64; e.complex().rank(2)];
        for s in subsets(3) {
            let word = s.iter().fold(gamma.clone(), |acc, &i| acc.concat(&alphas[i]));
            let v = e.chain_of(&WordCombination::from_word(word)).unwrap();
            let sign = if s.len() % 2 == 0 { 1 } else { -1 };
            for (t, x) in total.iter_mut().zip(v) {
                *t += sign * x;
            }
        }
        assert!(e.homology().coordinates_i64(&total).unwrap().is_zero());
    }

    #[test]
    fn alternating_sum_small() {
        assert!(alternating_subdivision_sum(1).unwrap().is_empty());
        assert!(alternating_subdivision_sum(2).unwrap().is_empty());
        // single subsets do not cancel on their own
        assert!(!subset_expansion(&[0, 1], 2).is_empty());
    }

    #[test]
    fn profile_coefficients_vanish() {
        assert_eq!(profile_coefficient(&[0, 0, 0, 2]), 0);
        assert_eq!(profile_coefficient(&[1, 0, 1, 0]), 0);
        assert_eq!(profile_coefficient(&[0, 2, 0, 0]), 0);
    }

    #[test]
    fn path_evaluation() {
        let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        let word = w("ab");
        assert_eq!(evaluate_path(&word, &q(1, 2)), WedgePoint::Base);
        assert_eq!(
            evaluate_path(&word, &q(1, 4)),
            WedgePoint::OnLoop {
                generator: 1,
                param: q(1, 2)
            }
        );
        assert_eq!(
            evaluate_path(&word, &q(5, 6)),
            WedgePoint::OnLoop {
                generator: 2,
                param: q(2, 3)
            }
        );
        assert_eq!(evaluate_path(&w(""), &q(1, 3)), WedgePoint::Base);
    }

    #[test]
    fn oracle_examples() {
        let p = RationalPoint::from_fractions(&[1, 2], 3);
        let out = sample_eval_oracle(&w("ab"), 2, std::slice::from_ref(&p)).unwrap();
        assert!(out.mismatch.is_none());
        assert_eq!(out.cases, 4);
        assert!(sample_eval_oracle(&w(""), 2, &[p]).unwrap().mismatch.is_none());
        let outside = RationalPoint::from_fractions(&[2, 1], 3);
        assert!(sample_eval_oracle(&w("a"), 2, &[outside]).is_err());
    }

    #[test]
    fn oracle_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for word in ["a", "ab", "aba", "bb"] {
            for n in 1..=3 {
                let pts = random_simplex_points(n, 20, &mut rng);
                let out = sample_eval_oracle(&w(word), n, &pts).unwrap();
                assert!(out.mismatch.is_none(), "{word} n={n}: {:?}", out.mismatch);
            }
        }
    }

    // A wrong jump convention (reading t_{σ(p)} through jump σ(p)) must be
    // caught by the oracle.
    #[test]
    fn oracle_detects_wrong_jumps() {
        let t = &shuffle_expand(&w("a"), 2).unwrap()[0];
        let wrong = ps(2, &[(1, 1), (1, 2)]);
        let x = RationalPoint::from_fractions(&[1, 2], 3);
        assert_ne!(
            realize_simplex(&wrong, &x),
            realize_simplex(&term_to_simplex(t).unwrap(), &x)
        );
    }

    #[test]
    fn naturality_examples() {
        let src = NuEvaluator::new(2, 1).unwrap();
        let tgt = NuEvaluator::new(2, 1).unwrap();
        let id = WedgeMap::new(1, vec![Some(1)]).unwrap();
        assert!(naturality_check(&src, &tgt, &id, &w("aa")).unwrap().holds());
        let collapse = WedgeMap::new(1, vec![None]).unwrap();
        let out = naturality_check(&src, &tgt, &collapse, &w("a")).unwrap();
        assert!(out.holds() && out.direct.is_zero());
        let tgt2 = NuEvaluator::new(2, 2).unwrap();
        let to_b = WedgeMap::new(2, vec![Some(2)]).unwrap();
        assert!(naturality_check(&src, &tgt2, &to_b, &w("aA")).unwrap().holds());
        assert!(WedgeMap::new(1, vec![Some(2)]).is_err());
        assert_eq!(WedgeMap::all(2, 2).len(), 9);
    }

    #[test]
    fn magnus_matrix_degree_two() {
        let e = NuEvaluator::new(2, 1).unwrap();
        let m = nu_magnus_matrix(&e).unwrap();
        // ν(1) = 0, ν(x - 1) = A, ν((x - 1)^2) = ν(xx) - 2ν(x) = A - B
        assert_eq!(m, IntMatrix::from_rows(&[vec![0, 1, 1], vec![0, 0, -1]]).unwrap());
    }
}
