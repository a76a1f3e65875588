//! Verification suites over bounded parameter ranges. Each suite counts
//! the cases it checks and keeps the first failing case as a witness.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::affine::{f_map, ftilde_map};
use crate::chains::{
    boundary_chain, build_homotopy_l, div_chain, homotopy_identity_sides, interior_face_sum,
};
use crate::error::Result;
use crate::nu::{
    alternating_subdivision_sum, loop_subset_check, naturality_check, profile_coefficient,
    random_simplex_points, sample_eval_oracle, NuEvaluator, WedgeMap,
};
use crate::perm::{bij, collapse_at, enumerate_ens, is_ens, Composition, InvolPoint, Permutation, Sign};
use crate::words::{Letter, Word};

/// Tally of a suite run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub cases: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records one case; the witness is only built for the first failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn merge(&mut self, other: SuiteOutcome) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }
}

/// `div_n^k ∘ ∂ = ∂ ∘ div_{n-1}^k` and the cancellation of interior faces,
/// for `1 ≤ n ≤ max_n`, `1 ≤ k ≤ max_k`.
pub fn subdivision_suite(max_n: usize, max_k: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    for n in 1..=max_n {
        for k in 1..=max_k {
            let lhs = div_chain(n, k)?.compose(&boundary_chain(n)?)?;
            let rhs = boundary_chain(n)?.compose(&div_chain(n - 1, k)?)?;
            out.check(lhs == rhs, || format!("div∘∂ ≠ ∂∘div at n={n}, k={k}"));
            let interior = interior_face_sum(n, k)?;
            out.check(interior.is_zero(), || {
                format!("interior faces do not cancel at n={n}, k={k}: {interior}")
            });
        }
    }
    Ok(out)
}

/// `id - div = L∘∂ + ∂∘L` for the constructed homotopies, `m ≤ max_n`,
/// `1 ≤ k ≤ max_k`.
pub fn homotopy_suite(max_n: usize, max_k: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    for k in 1..=max_k {
        let ls = build_homotopy_l(k, max_n)?;
        out.check(ls[0].is_zero(), || format!("L_(1,0) is nonzero for k={k}"));
        for m in 0..=max_n {
            let (lhs, rhs) = homotopy_identity_sides(&ls, m, k)?;
            out.check(lhs == rhs, || format!("homotopy identity fails at m={m}, k={k}"));
        }
    }
    Ok(out)
}

/// All vectors in `[lo, hi]^n`.
fn box_vectors(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// The involution is a fixed-point-free involution reversing signs and
/// preserving `f`, for `v ∈ [-1, k]^n`, all `σ`, `i`, `n ≤ max_n`,
/// `k ≤ max_k`.
pub fn involution_suite(max_n: usize, max_k: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    for n in 1..=max_n {
        let perms = Permutation::all(n);
        for k in 1..=max_k {
            for v in box_vectors(n, -1, k as i64) {
                for sigma in &perms {
                    for i in 0..=n {
                        let x = InvolPoint::new(v.clone(), sigma.clone(), i)?;
                        let y = x.invol();
                        let (fx, sx) = f_map(&x, k)?;
                        let (fy, sy) = f_map(&y, k)?;
                        let ok = y.invol() == x && y != x && sy == -sx && fx == fy;
                        out.check(ok, || format!("involution fails at k={k}, {x:?} ↦ {y:?}"));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `bij` maps `Ens_{n-1}^k × [0, n]` bijectively onto the points of
/// `Ens_n^k × [0, n]` whose partner leaves `Ens_n^k`, with `f∘bij = f̃`
/// and matching signs.
pub fn bijection_suite(max_n: usize, max_k: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    for n in 1..=max_n {
        for k in 1..=max_k {
            let mut target = BTreeSet::new();
            for e in enumerate_ens(n, k)? {
                for i in 0..=n {
                    let x = InvolPoint::new(e.v.clone(), e.sigma.clone(), i)?;
                    if !x.invol().in_ens(k) {
                        target.insert(x);
                    }
                }
            }
            let mut image = BTreeSet::new();
            let mut domain_size = 0;
            for e in enumerate_ens(n - 1, k)? {
                for i in 0..=n {
                    domain_size += 1;
                    let y = bij(&e.v, &e.sigma, i, k)?;
                    let (fy, sy) = f_map(&y, k)?;
                    let (ft, st) = ftilde_map(&e.v, &e.sigma, i, k)?;
                    let ok = target.contains(&y) && fy == ft && sy == st;
                    out.check(ok, || {
                        format!("bij fails at n={n}, k={k}, w={:?}, τ={:?}, i={i}", e.v, e.sigma)
                    });
                    image.insert(y);
                }
            }
            out.check(image.len() == domain_size, || {
                format!("bij is not injective at n={n}, k={k}")
            });
            out.check(image == target, || format!("bij is not onto at n={n}, k={k}"));
        }
    }
    Ok(out)
}

/// Inversion parity and the sign of `τ^(i)` for all `τ ∈ S_m`, `m ≤ max_m`,
/// together with `p_{τ(i)} ∘ τ^(i) = τ ∘ p_i`.
pub fn permutation_identities_suite(max_m: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    for m in 1..=max_m {
        for tau in Permutation::all(m) {
            for i in 1..=m {
                let inv = tau.inversions_at(i)?;
                let diff = tau.apply(i) as i64 - i as i64;
                out.check((inv.len() as i64 - diff).rem_euclid(2) == 0, || {
                    format!("inversion parity fails for τ={tau:?}, i={i}")
                });
                let ext = tau.face_extension(i)?;
                let expected = tau.sign() * Sign::from_parity(diff.unsigned_abs() as usize);
                let commutes = (1..=m + 1)
                    .all(|x| collapse_at(tau.apply(i), ext.apply(x)) == tau.apply(collapse_at(i, x)));
                let pinned = ext.apply(i) == tau.apply(i) && ext.apply(i + 1) == tau.apply(i) + 1;
                out.check(ext.sign() == expected && commutes && pinned, || {
                    format!("face extension fails for τ={tau:?}, i={i}: {ext:?}")
                });
            }
        }
    }
    Ok(out)
}

/// The positional criterion for `s_{i,i+1} ∘ σ` leaving the shuffles,
/// against direct membership, for every composition of `n ≤ max_n` into at
/// most `n + 1` parts.
pub fn shuffle_transposition_suite(max_n: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    for n in 2..=max_n {
        for parts in 1..=n + 1 {
            for c in Composition::all(n, parts) {
                for sigma in c.shuffles() {
                    for i in 1..n {
                        let s = Permutation::adjacent_transposition(n, i)?;
                        let brute = !c.is_shuffle(&s.compose(&sigma)?);
                        let fast = c.transposition_leaves_shuffles(&sigma, i)?;
                        out.check(brute == fast, || {
                            format!("criterion fails for parts={:?}, σ={sigma:?}, i={i}", c.parts())
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Shuffle counts are multinomial and agree with filtering `S_n`;
/// `|Ens_n^k| = k^n` and `Ens` agrees with a brute-force filter.
pub fn enumeration_suite(max_n: usize, max_k: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    for n in 0..=max_n {
        let perms = Permutation::all(n);
        for parts in 1..=3 {
            for c in Composition::all(n, parts) {
                let sh = c.shuffles();
                let multinomial = factorial(n) / c.parts().iter().map(|&p| factorial(p)).product::<usize>();
                let brute: Vec<Permutation> = perms.iter().filter(|s| c.is_shuffle(s)).cloned().collect();
                out.check(sh.len() == multinomial && sh == brute, || {
                    format!("shuffles of {:?} are wrong", c.parts())
                });
            }
        }
        for k in 1..=max_k {
            let ens = enumerate_ens(n, k)?;
            out.check(ens.len() == k.pow(n as u32), || {
                format!("|Ens_{n}^{k}| = {} ≠ {}", ens.len(), k.pow(n as u32))
            });
            if n <= 4 {
                let mut brute = Vec::new();
                for v in box_vectors(n, 0, k as i64 - 1) {
                    for s in &perms {
                        if is_ens(&v, s, k) {
                            brute.push((v.clone(), s.clone()));
                        }
                    }
                }
                let listed: Vec<(Vec<i64>, Permutation)> = ens.into_iter().map(|e| (e.v, e.sigma)).collect();
                out.check(listed == brute, || {
                    format!("Ens_{n}^{k} differs from brute force")
                });
            }
        }
    }
    Ok(out)
}

/// Everything in the combinatorial layer: permutation identities (`m ≤ 6`),
/// shuffle criterion (`n ≤ 5`), enumeration (`n ≤ 5`, `k ≤ 4`) and the
/// involution and bijection suites up to `(max_n, max_k)`.
pub fn combinatorics_suite(max_n: usize, max_k: usize) -> Result<SuiteOutcome> {
    let mut out = permutation_identities_suite(6)?;
    out.merge(shuffle_transposition_suite(5)?);
    out.merge(enumeration_suite(5, 4)?);
    out.merge(involution_suite(max_n, max_k)?);
    out.merge(bijection_suite(max_n, max_k)?);
    Ok(out)
}

/// The alternating sum of subdivided simplices vanishes symbolically for
/// `1 ≤ n ≤ max_n`, and every profile coefficient is zero.
pub fn cancellation_suite(max_n: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    for n in 1..=max_n {
        let sum = alternating_subdivision_sum(n)?;
        out.check(sum.is_empty(), || format!("{} terms survive at n={n}", sum.len()));
        for profile in profiles(n) {
            out.check(profile_coefficient(&profile) == 0, || {
                format!("profile {profile:?} has nonzero coefficient")
            });
        }
    }
    Ok(out)
}

/// All `(ν_0, …, ν_{n+1})` of non-negative integers summing to `n`.
fn profiles(n: usize) -> Vec<Vec<usize>> {
    Composition::all(n, n + 2)
        .into_iter()
        .map(|c| c.parts().to_vec())
        .collect()
}

/// All positive words of length `≤ max_len` in generators `1..=g`, by
/// length then lexicographically.
pub fn positive_words(g: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 1..=g {
                next.push(w.concat(&Word::from_generators(&[x]).expect("x ≤ 26")));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// All words (with inverse letters) of length `≤ max_len` in `g` generators.
pub fn all_words(g: usize, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (1..=g)
        .flat_map(|x| [false, true].map(|inv| Letter::new(x, inv).expect("x ≤ 26")))
        .collect();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                next.push(w.concat(&Word::from_letters(vec![l])));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// One vanishing check for a fixed base path and loops.
pub fn loop_subset_single(g: usize, n: usize, gamma: &Word, alphas: &[Word]) -> Result<SuiteOutcome> {
    let eval = NuEvaluator::new(n, g)?;
    let res = loop_subset_check(&eval, gamma, alphas)?;
    let mut out = SuiteOutcome::default();
    out.check(res.vanishes(), || {
        format!("γ={gamma}, α={alphas:?}: alternating sum is {:?}", res.total)
    });
    Ok(out)
}

/// The vanishing relation for `g ≤ max_g`, `n ≤ max_n`, every positive
/// `γ` with `|γ| ≤ max_gamma` and every choice of single-letter loops.
pub fn loop_subset_sweep(max_g: usize, max_n: usize, max_gamma: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    for g in 1..=max_g {
        for n in 1..=max_n {
            let eval = NuEvaluator::new(n, g)?;
            let singles: Vec<Word> = (1..=g)
                .map(|x| Word::from_generators(&[x]).expect("x ≤ 26"))
                .collect();
            let mut choices: Vec<Vec<Word>> = vec![vec![]];
            for _ in 0..=n {
                choices = choices
                    .into_iter()
                    .flat_map(|p| {
                        singles.iter().map(move |s| {
                            let mut q = p.clone();
                            q.push(s.clone());
                            q
                        })
                    })
                    .collect();
            }
            for gamma in positive_words(g, max_gamma) {
                for alphas in &choices {
                    let res = loop_subset_check(&eval, &gamma, alphas)?;
                    out.check(res.vanishes(), || {
                        format!("g={g}, n={n}, γ={gamma}, α={alphas:?}: sum {:?}", res.total)
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Naturality for every map between wedges of rank `≤ max_g`, every word
/// of length `≤ max_len` (inverse letters allowed) and `n ≤ max_n`.
pub fn naturality_suite(max_g: usize, max_len: usize, max_n: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    for n in 1..=max_n {
        let evals: Vec<NuEvaluator> = (1..=max_g)
            .map(|g| NuEvaluator::new(n, g))
            .collect::<Result<_>>()?;
        for gs in 1..=max_g {
            for gt in 1..=max_g {
                for map in WedgeMap::all(gs, gt) {
                    for w in all_words(gs, max_len) {
                        let res = naturality_check(&evals[gs - 1], &evals[gt - 1], &map, &w)?;
                        out.check(res.holds(), || {
                            format!(
                                "n={n}, map {:?}→rank {gt}, w={w}: {:?} vs {:?}",
                                map.targets, res.pushed, res.direct
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The pointwise oracle at `points` seeded random points for every
/// positive word of length `≤ max_len` in `g` generators and `n ≤ max_n`.
/// One case is one word, degree and point.
pub fn oracle_suite(
    g: usize,
    max_len: usize,
    max_n: usize,
    points: usize,
    seed: u64,
) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::default();
    for n in 1..=max_n {
        for w in positive_words(g, max_len) {
            let pts = random_simplex_points(n, points, &mut rng);
            let res = sample_eval_oracle(&w, n, &pts)?;
            out.cases += points;
            if let Some(m) = res.mismatch {
                out.failures += 1;
                if out.witness.is_none() {
                    out.witness = Some(format!(
                        "w={w}, n={n}, parts={:?}, σ={:?}, point {}",
                        m.parts, m.sigma, m.point
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// The pointwise oracle for one positive word in degree `n`.
pub fn oracle_word_suite(w: &Word, n: usize, points: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = random_simplex_points(n, points, &mut rng);
    let res = sample_eval_oracle(w, n, &pts)?;
    Ok(SuiteOutcome {
        cases: points,
        failures: usize::from(res.mismatch.is_some()),
        witness: res.mismatch.map(|m| {
            format!(
                "w={w}, n={n}, parts={:?}, σ={:?}, point {}",
                m.parts, m.sigma, m.point
            )
        }),
    })
}
