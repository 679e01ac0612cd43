//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use codeweights::census::{check_full_rank_regime, verify_counting_identity_cached, CensusCache, CensusOptions};
use codeweights::closed_forms::{
    amds_distribution, extremal_distribution, extremal_system, mds_distribution, nmds_distribution, verify_extremal,
    AmdsInput, ExtremalParams,
};
use codeweights::code::{
    brute_weight_distribution, brute_weight_distribution_with, macwilliams_transform, parameters_from_distribution,
    random_code, reed_solomon, CodeParameters, EnumerationOptions, LinearCode, WeightDistribution,
};
use codeweights::field::Field;
use codeweights::matrix::{pascal_minor_check, solve_exact, MatrixError};
use codeweights::moments::{
    build_pascal_system, build_pless_system, cross_check_systems, solve_with_knowns, trivial_knowns, verify_pless_full,
};
use num_bigint::BigInt;
use num_traits::Pow;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const CORPUS_SEED: u64 = 0x5eed_c0de;
const CORPUS_SIZE: usize = 120;
const AMDS_SEARCH_SEED: u64 = 2024;
const AMDS_TARGET: usize = 6;
/// Excludes codes with a weight-one word.
const MIN_AMDS_DISTANCE: usize = 2;

const LIMIT_EXAMPLE: Duration = Duration::from_secs(1);
const LIMIT_IDENTITY: Duration = Duration::from_secs(120);
const LIMIT_MDS: Duration = Duration::from_secs(60);
const LIMIT_AMDS: Duration = Duration::from_secs(300);

/// `[9, 9]_9` has `9^9` codewords.
const RS_BUDGET: u64 = 400_000_000;

type Outcome = Result<String, String>;

struct Entry {
    code: LinearCode,
    a: WeightDistribution,
    params: CodeParameters,
}

fn field(q: u32) -> Field {
    match q {
        4 => Field::new(2, 2, None),
        8 => Field::new(2, 3, None),
        9 => Field::new(3, 2, None),
        p => Field::prime(p),
    }
    .expect("supported order")
}

fn corpus() -> Vec<Entry> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let qs = [2u32, 3, 4, 5];
    (0..CORPUS_SIZE)
        .map(|i| {
            let q = qs[i % qs.len()];
            let n = rng.gen_range(3..=10);
            let k = rng.gen_range(1..n);
            let code = random_code(&field(q), n, k, rng.gen()).expect("0 < k < n");
            let a = brute_weight_distribution(&code).expect("small code");
            let params = parameters_from_distribution(&a).expect("nonzero code");
            Entry { code, a, params }
        })
        .collect()
}

fn label(e: &Entry) -> String {
    format!("[{},{}]_{}", e.params.n, e.params.k, e.params.q)
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    if t < limit {
        Ok(t)
    } else {
        Err(format!("took {:.2?}, limit {:.0?}", t, limit))
    }
}

fn ints(xs: &[u64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn criterion_1() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let expected = [
        ("c1.code", [1u64, 0, 0, 0, 27, 60, 78, 60, 30]),
        ("c2.code", [1, 0, 0, 0, 30, 48, 96, 48, 33]),
    ];
    let mut worst = Duration::ZERO;
    for (file, want) in expected {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_codeweights"))
            .arg("enumerate")
            .arg(dir.join(file))
            .output()
            .map_err(|e| e.to_string())?;
        worst = worst.max(within(LIMIT_EXAMPLE, start)?);
        let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("{file}: {e}"))?;
        let got: Vec<String> = v["A"]
            .as_array()
            .ok_or("no distribution")?
            .iter()
            .map(|x| x.as_str().unwrap_or_default().to_string())
            .collect();
        let want: Vec<String> = want.iter().map(u64::to_string).collect();
        if got != want {
            return Err(format!("{file}: got {got:?}"));
        }
    }
    Ok(format!("G1, G2 exact; slowest run {worst:.2?}"))
}

fn criterion_2(corpus: &[Entry], start: Instant) -> Outcome {
    let mut checks = 0;
    let qs: BTreeSet<u32> = corpus.iter().map(|e| e.params.q).collect();
    for e in corpus {
        let mut cache = CensusCache::new(e.code.parity_check(), CensusOptions::default());
        for nu in 1..=e.params.n {
            let c = verify_counting_identity_cached(&mut cache, e.params.q, &e.a, nu).map_err(|x| x.to_string())?;
            if !c.holds {
                return Err(format!("{} nu={nu}: {} != {}", label(e), c.lhs, c.rhs));
            }
            checks += 1;
        }
    }
    let t = within(LIMIT_IDENTITY, start)?;
    Ok(format!("{} codes, q in {qs:?}, {checks} (code, nu) pairs in {t:.2?}", corpus.len()))
}

fn criterion_3(corpus: &[Entry]) -> Outcome {
    let mut checks = 0;
    for e in corpus {
        let p = e.params;
        for nu in p.n + 1 - p.d_perp..=p.n {
            let ok = check_full_rank_regime(&e.code, nu, p.d_perp, &CensusOptions::default())
                .map_err(|x| x.to_string())?;
            if !ok {
                return Err(format!("{} nu={nu}", label(e)));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} (code, nu) pairs all full rank"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let opts = EnumerationOptions::with_budget(RS_BUDGET);
    let mut count = 0;
    for q in [4u32, 5, 7, 8, 9] {
        let f = field(q);
        for n in 1..=q as usize {
            for k in 1..=n {
                let code = reed_solomon(&f, n, k).map_err(|e| e.to_string())?;
                let brute = brute_weight_distribution_with(&code, &opts).map_err(|e| e.to_string())?;
                let formula = mds_distribution(n, k, q).map_err(|e| e.to_string())?;
                if brute != formula {
                    return Err(format!("RS [{n},{k}]_{q}: {brute:?} vs {formula:?}"));
                }
                count += 1;
            }
        }
    }
    let t = within(LIMIT_MDS, start)?;
    Ok(format!("{count} Reed-Solomon codes in {t:.2?}"))
}

fn criterion_5() -> Outcome {
    let cases = [
        (27u64, [1u64, 0, 0, 0, 27, 60, 78, 60, 30]),
        (30, [1, 0, 0, 0, 30, 48, 96, 48, 33]),
    ];
    for (a_d, want) in cases {
        let a_d = BigInt::from(a_d);
        let nmds = nmds_distribution(8, 4, 4, &a_d).map_err(|e| e.to_string())?;
        if nmds.counts() != ints(&want) {
            return Err(format!("nmds A_4={a_d}: {nmds:?}"));
        }
        let amds = amds_distribution(&AmdsInput {
            n: 8,
            k: 4,
            q: 4,
            sigma: 2,
            seed_weights: vec![a_d.clone()],
        })
        .map_err(|e| e.to_string())?;
        if amds != nmds {
            return Err(format!("amds sigma=2 A_4={a_d}: {amds:?}"));
        }
    }
    Ok("A_4 = 27 and 30 reproduce both example distributions; sigma=2 AMDS agrees".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(AMDS_SEARCH_SEED);
    let mut found: Vec<String> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut trials = 0;
    while found.len() < AMDS_TARGET && start.elapsed() < LIMIT_AMDS {
        trials += 1;
        let q = [3u32, 4, 5][rng.gen_range(0..3)];
        let n = rng.gen_range(5..=10);
        let k = rng.gen_range(3..n);
        let code = random_code(&field(q), n, k, rng.gen()).map_err(|e| e.to_string())?;
        let a = brute_weight_distribution(&code).map_err(|e| e.to_string())?;
        let p = parameters_from_distribution(&a).map_err(|e| e.to_string())?;
        if p.d + 1 != n + 1 - k || p.sigma() != 3 || p.d < MIN_AMDS_DISTANCE {
            continue;
        }
        let seeds = vec![a.get(n - k).clone(), a.get(n - k + 1).clone()];
        let formula = amds_distribution(&AmdsInput {
            n,
            k,
            q,
            sigma: 3,
            seed_weights: seeds,
        })
        .map_err(|e| format!("[{n},{k}]_{q}: {e}"))?;
        if formula != a {
            return Err(format!("[{n},{k}]_{q}: formula {formula:?}, brute {a:?}"));
        }
        if seen.insert(format!("{a:?}")) {
            found.push(format!("[{n},{k},{}]_{q}", p.d));
        }
    }
    let t = within(LIMIT_AMDS, start)?;
    if found.len() < AMDS_TARGET {
        return Err(format!("only {} sigma=3 codes found in {trials} trials", found.len()));
    }
    Ok(format!("{} distinct sigma=3 codes {found:?} from {trials} trials in {t:.2?}", found.len()))
}

fn criterion_7() -> Outcome {
    let s12 = extremal_system(1, &[22, 24], true).map_err(|e| e.to_string())?;
    let x = solve_exact(&s12.matrix, &s12.rhs).map_err(|e| format!("system (22, 24): {e}"))?;
    let want: Vec<String> = ["759", "2576", "759"].map(String::from).to_vec();
    let got: Vec<String> = x.iter().map(ToString::to_string).collect();
    if got != want || s12.col_labels != [8, 12, 16] {
        return Err(format!("system (22, 24) gives {got:?}"));
    }
    let s13 = extremal_system(1, &[23, 24], true).map_err(|e| e.to_string())?;
    match solve_exact(&s13.matrix, &s13.rhs) {
        Err(MatrixError::Singular { rank: 2, .. }) => {}
        other => return Err(format!("system (23, 24) not singular with rank 2: {other:?}")),
    }
    for m in 1..=5 {
        let ep = ExtremalParams::new(m).map_err(|e| e.to_string())?;
        let a = extremal_distribution(m).map_err(|e| format!("m={m}: {e}"))?;
        verify_extremal(&ep, &a).map_err(|e| format!("m={m}: {e}"))?;
        if a.total() != Pow::pow(&BigInt::from(2), (12 * m) as u32) {
            return Err(format!("m={m}: total {}", a.total()));
        }
        let rows = extremal_system(m, &ep.nu_range().collect::<Vec<_>>(), false).map_err(|e| e.to_string())?;
        if rows.rows() != 4 * m + 4 || !rows.satisfied_by(&a) {
            return Err(format!("m={m}: relation rows not all satisfied"));
        }
    }
    Ok("(759, 2576, 759); (23, 24) singular rank 2; m = 1..5 verified".into())
}

/// Index patterns of size `sigma - 1` within `d..=n`: the lowest block, the
/// highest block and a random non-consecutive choice.
fn patterns(p: &CodeParameters, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let extra = (p.n + 1 - p.d_perp).saturating_sub(p.d);
    if extra == 0 {
        return vec![vec![]];
    }
    let low: Vec<usize> = (p.d..p.d + extra).collect();
    let high: Vec<usize> = (p.n + 1 - extra..=p.n).collect();
    let mut spread = vec![p.d, p.n];
    let mut middle: Vec<usize> = (p.d + 1..p.n).collect();
    middle.shuffle(rng);
    spread.extend(middle.into_iter().take(extra.saturating_sub(2)));
    spread.truncate(extra);
    if extra == 1 {
        spread = vec![p.n];
    }
    spread.sort_unstable();
    vec![low, high, spread]
}

fn knowns_for(e: &Entry, idx: &[usize]) -> BTreeMap<usize, BigInt> {
    let mut k = trivial_knowns(e.params.d);
    for &i in idx {
        k.insert(i, e.a.get(i).clone());
    }
    k
}

fn criterion_8(corpus: &[Entry]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 8);
    let (mut solves, mut scattered) = (0, 0);
    for e in corpus {
        let system = build_pascal_system(&e.params);
        for idx in patterns(&e.params, &mut rng) {
            if idx.windows(2).any(|w| w[1] != w[0] + 1) || idx.first().is_some_and(|&i| i != e.params.d) {
                scattered += 1;
            }
            let got = solve_with_knowns(&system, &knowns_for(e, &idx))
                .map_err(|x| format!("{} knowns {idx:?}: {x}", label(e)))?;
            if got != e.a {
                return Err(format!("{} knowns {idx:?}: {got:?} vs {:?}", label(e), e.a));
            }
            solves += 1;
        }
    }
    Ok(format!("{solves} recoveries, {scattered} with non-lowest index patterns"))
}

fn criterion_9(corpus: &[Entry]) -> Outcome {
    for e in corpus {
        let p = e.params;
        let extra = (p.n + 1 - p.d_perp).saturating_sub(p.d);
        let idx: Vec<usize> = (p.d..p.d + extra).collect();
        let cc = cross_check_systems(&p, &knowns_for(e, &idx)).map_err(|x| format!("{}: {x}", label(e)))?;
        if !cc.agree || cc.pascal != e.a || cc.pless != e.a {
            return Err(format!("{}: pascal {:?} pless {:?}", label(e), cc.pascal, cc.pless));
        }
        if !build_pless_system(&p).satisfied_by(&e.a) {
            return Err(format!("{}: reduced moments violated", label(e)));
        }
        let b = macwilliams_transform(&e.a).map_err(|x| x.to_string())?;
        for nu in 0..=p.n {
            let c = verify_pless_full(&e.a, &b, nu);
            if !c.holds {
                return Err(format!("{} nu={nu}: {} != {}", label(e), c.lhs, c.rhs));
            }
        }
    }
    Ok(format!("{} codes: systems agree with enumeration; full moments hold", corpus.len()))
}

fn criterion_10() -> Outcome {
    let mut count = 0;
    for r in 1..=5 {
        for t in r - 1..=12 {
            if !pascal_minor_check(r, t) {
                return Err(format!("zero minor in P_{{{r},{t}}}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} matrices, every maximal minor nonzero"))
}

fn criterion_11(corpus: &[Entry]) -> Outcome {
    for e in corpus {
        let transformed = macwilliams_transform(&e.a).map_err(|x| x.to_string())?;
        let dual = brute_weight_distribution(&e.code.dual()).map_err(|x| x.to_string())?;
        if transformed != dual {
            return Err(format!("{}: {transformed:?} vs {dual:?}", label(e)));
        }
    }
    Ok(format!("{} codes", corpus.len()))
}

fn main() {
    let start = Instant::now();
    let corpus = corpus();
    let mut results: Vec<(usize, &str, Outcome)> = vec![(1, "example distributions", criterion_1())];
    results.push((2, "counting identity", criterion_2(&corpus, start)));
    results.push((3, "full-rank regime", criterion_3(&corpus)));
    results.push((4, "MDS formula vs Reed-Solomon", criterion_4()));
    results.push((5, "NMDS formula", criterion_5()));
    results.push((6, "AMDS formula, sigma = 3", criterion_6()));
    results.push((7, "extremal systems", criterion_7()));
    results.push((8, "recovery from knowns", criterion_8(&corpus)));
    results.push((9, "Pless equivalence", criterion_9(&corpus)));
    results.push((10, "Pascal minors", criterion_10()));
    results.push((11, "MacWilliams vs dual enumeration", criterion_11(&corpus)));

    let mut failed = 0;
    for (i, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS {i:>2} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {i:>2} {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
