//! Acceptance run: one PASS/FAIL line per criterion. All checks are exact
//! (zero tolerance); the only numeric bound is the 10 s budget on the
//! subdivision commutation check.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relhom::nu::nu_magnus_matrix;
use relhom::suites::{self, SuiteOutcome};
use relhom::zlinalg::check_smith_form;
use relhom::{smith_normal_form, IntMatrix, NuEvaluator, PairComplex, ProductSimplex, Word};

const SUBDIVISION_BUDGET: Duration = Duration::from_secs(10);
const ORACLE_SEED: u64 = 20_240_607;
const SNF_SEED: u64 = 1_729;
const SNF_MATRICES: usize = 200;
const SNF_MAX_DIM: usize = 30;
const SNF_MAX_ENTRY: i64 = 50;

struct Line {
    id: usize,
    name: &'static str,
    ok: bool,
    detail: String,
}

fn from_suite(id: usize, name: &'static str, r: relhom::Result<SuiteOutcome>) -> Line {
    match r {
        Ok(o) => Line {
            id,
            name,
            ok: o.passed() && o.cases > 0,
            detail: match &o.witness {
                Some(w) => format!("{} cases, {} failures; first: {w}", o.cases, o.failures),
                None => format!("{} cases, 0 failures", o.cases),
            },
        },
        Err(e) => Line {
            id,
            name,
            ok: false,
            detail: format!("error: {e}"),
        },
    }
}

fn subdivision() -> Line {
    let start = Instant::now();
    let r = suites::subdivision_suite(4, 4);
    let elapsed = start.elapsed();
    let mut line = from_suite(1, "subdivision commutes with boundary (n ≤ 4, k ≤ 4)", r);
    line.ok &= elapsed < SUBDIVISION_BUDGET;
    line.detail = format!(
        "{}; {:.2}s of {}s budget",
        line.detail,
        elapsed.as_secs_f64(),
        SUBDIVISION_BUDGET.as_secs()
    );
    line
}

fn permutation_identities() -> Line {
    let r = suites::permutation_identities_suite(6).and_then(|mut o| {
        o.merge(suites::shuffle_transposition_suite(5)?);
        Ok(o)
    });
    from_suite(
        5,
        "inversion parity, face-extension sign (m ≤ 6), shuffle criterion (n ≤ 5)",
        r,
    )
}

fn rank_corroboration() -> Line {
    let mut detail = Vec::new();
    let mut ok = true;
    for n in 1..=3 {
        let check = || -> relhom::Result<(usize, usize, bool)> {
            let eval = NuEvaluator::new(n, 1)?;
            let rank = eval.homology().free_rank();
            let m = nu_magnus_matrix(&eval)?;
            let snf = smith_normal_form(&m);
            let first_column_zero = (0..m.rows()).all(|i| m[(i, 0)] == BigInt::from(0));
            Ok((
                rank,
                snf.rank,
                first_column_zero && eval.homology().torsion().is_empty(),
            ))
        };
        match check() {
            Ok((rank, nu_rank, kernel_ok)) => {
                ok &= rank == n && nu_rank == n && kernel_ok;
                detail.push(format!("n={n}: rank H={rank}, rank ν={nu_rank}"));
            }
            Err(e) => {
                ok = false;
                detail.push(format!("n={n}: error {e}"));
            }
        }
    }
    Line {
        id: 10,
        name: "rank H_n((S¹)^n, Y) = n and ν has rank n on the Magnus basis",
        ok,
        detail: detail.join("; "),
    }
}

fn derived_values() -> Line {
    let check = || -> relhom::Result<bool> {
        let complex = PairComplex::for_top_degree(2, 1)?;
        let a = ProductSimplex::from_pairs(2, &[(1, 2), (1, 1)])?;
        let b = ProductSimplex::from_pairs(2, &[(1, 1), (1, 2)])?;
        let basis_ok = complex.basis(2)? == [a, b];
        let eval = NuEvaluator::new(2, 1)?;
        let mut ok = basis_ok;
        for (word, expected) in [("a", [1, 0]), ("aa", [3, -1]), ("aaa", [6, -3])] {
            let w: Word = word.parse()?;
            let got = eval.eval_word(&w)?.free_i64();
            ok &= got.as_deref() == Some(&expected[..]);
        }
        Ok(ok)
    };
    let (ok, detail) = match check() {
        Ok(ok) => (ok, "ν₂(x)=A, ν₂(xx)=3A−B, ν₂(xxx)=6A−3B".to_string()),
        Err(e) => (false, format!("error: {e}")),
    };
    Line {
        id: 11,
        name: "pinned values of ν₂ in the basis (A, B)",
        ok,
        detail,
    }
}

fn snf_contract() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SNF_SEED);
    let mut failures = 0;
    let mut first = None;
    for t in 0..SNF_MATRICES {
        let rows = rng.gen_range(1..=SNF_MAX_DIM);
        let cols = rng.gen_range(1..=SNF_MAX_DIM);
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| rng.gen_range(-SNF_MAX_ENTRY..=SNF_MAX_ENTRY))
                    .collect()
            })
            .collect();
        let a = IntMatrix::from_rows(&data).expect("rectangular");
        let s = smith_normal_form(&a);
        if let Err(e) = check_smith_form(&a, &s) {
            failures += 1;
            first.get_or_insert(format!("matrix {t} ({rows}x{cols}): {e}"));
        }
    }
    Line {
        id: 13,
        name: "Smith normal form contract on 200 random matrices up to 30x30",
        ok: failures == 0,
        detail: match first {
            Some(w) => format!("{failures} failures; first: {w}"),
            None => format!("{SNF_MATRICES} matrices, 0 failures"),
        },
    }
}

fn main() -> ExitCode {
    let criteria: Vec<fn() -> Line> = vec![
        subdivision,
        || {
            from_suite(
                2,
                "homotopy identity with constructed L (n ≤ 3, k ≤ 3)",
                suites::homotopy_suite(3, 3),
            )
        },
        || {
            from_suite(
                3,
                "involution: order 2, no fixed points, sign flip, f preserved (n ≤ 4, k ≤ 3)",
                suites::involution_suite(4, 3),
            )
        },
        || {
            from_suite(
                4,
                "bijection onto boundary faces, f∘bij = f̃ (n ≤ 4, k ≤ 3)",
                suites::bijection_suite(4, 3),
            )
        },
        permutation_identities,
        || {
            from_suite(
                6,
                "|Ens_n^k| = k^n (n ≤ 5, k ≤ 4)",
                suites::enumeration_suite(5, 4),
            )
        },
        || {
            from_suite(
                7,
                "pointwise shuffle decomposition, 100 seeded points per case (|w| ≤ 3, n ≤ 3)",
                suites::oracle_suite(2, 3, 3, 100, ORACLE_SEED),
            )
        },
        || {
            from_suite(
                8,
                "symbolic cancellation of the alternating subdivided sum (n ≤ 3)",
                suites::cancellation_suite(3),
            )
        },
        || {
            from_suite(
                9,
                "alternating sum over loop subsets vanishes in homology (g ≤ 2, n ≤ 3, |γ| ≤ 2)",
                suites::loop_subset_sweep(2, 3, 2),
            )
        },
        rank_corroboration,
        derived_values,
        || {
            from_suite(
                12,
                "naturality under relabel/collapse maps (ranks ≤ 2, |w| ≤ 2, n ≤ 2)",
                suites::naturality_suite(2, 2, 2),
            )
        },
        snf_contract,
    ];
    let mut failed = 0;
    for criterion in criteria {
        let start = Instant::now();
        let line = criterion();
        let tag = if line.ok { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] criterion {:>2}: {} ({}; {:.2}s)",
            line.id,
            line.name,
            line.detail,
            start.elapsed().as_secs_f64()
        );
        if !line.ok {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all 13 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 13 criteria failed");
        ExitCode::FAILURE
    }
}
