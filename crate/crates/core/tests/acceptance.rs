//! Acceptance suite. One line per criterion; run a subset by passing criterion
//! numbers, e.g. `cargo test -p fqcount --test acceptance -- 7 11`.
//!
//! The process exits nonzero when a criterion fails unexpectedly. A criterion
//! that is known to be unattainable still prints FAIL but does not fail the run.

mod common;

use common::*;
use fqcount::bounds::{
    bound_main_estimate, brun_lower_bound, existence_predicates, nm_main_term, sandwich_check, verify_diagonal,
    verify_moment, verify_moment_all_targets, ExistenceQuery,
};
use fqcount::combinatorics::{generating_c, generating_c_alternating_q, p_cycle_alternating_sum};
use fqcount::diagonal::{
    bruteforce_distribution, count_points_bruteforce, count_points_dp, homogeneous_equivalence_check,
    solution_distribution, Domain, WeightedDiagonalSystem,
};
use fqcount::moment::{image_tuple_counts, moment_distribution, subset_total, MomentInstance, SspMethod};
use fqcount::{FieldElement, FieldSpec, ImageFamily, Limits, PolySpec, QSqrt};
use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::{Duration, Instant};

const SEED: u64 = 0x5eed_2024;

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the failure is documented as mathematically unattainable.
    known_unattainable: bool,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into(), known_unattainable: false }
    }
}

/// Collects the first few mismatches of a criterion.
#[derive(Default)]
struct Mismatches {
    count: usize,
    first: Vec<String>,
}

impl Mismatches {
    fn push(&mut self, what: impl FnOnce() -> String) {
        self.count += 1;
        if self.first.len() < 3 {
            self.first.push(what());
        }
    }

    fn summary(&self) -> String {
        if self.count == 0 {
            String::new()
        } else {
            format!("; {} mismatches, e.g. {}", self.count, self.first.join(" | "))
        }
    }
}

fn lim() -> Limits {
    Limits::default()
}

// ---------------------------------------------------------------- 1

fn random_system(rng: &mut ChaCha8Rng) -> WeightedDiagonalSystem {
    let q = [2u64, 3, 4, 5, 7, 8, 9][rng.gen_range(0..7)];
    let f = field_of_order(q);
    let l = rng.gen_range(1..=5);
    let m = rng.gen_range(1..=2);
    let mut exps: Vec<u64> = Vec::new();
    while exps.len() < m {
        let d = rng.gen_range(1..=8);
        if !exps.contains(&d) {
            exps.push(d);
        }
    }
    exps.sort_unstable();
    let weights = (0..l).map(|_| rng.gen_range(1..=2 * q)).collect();
    let targets = (0..m).map(|_| f.element(rng.gen_range(0..f.order())).unwrap()).collect();
    let domain = if rng.gen_bool(0.5) {
        Domain::FullField
    } else {
        let mut pick: Vec<FieldElement> = f.elements().filter(|_| rng.gen_bool(0.5)).collect();
        if pick.is_empty() {
            pick.push(FieldElement::ZERO);
        }
        Domain::subset(pick)
    };
    WeightedDiagonalSystem::new(f, exps, weights, targets, domain).unwrap()
}

fn grid_systems() -> Vec<WeightedDiagonalSystem> {
    let mut out = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = field_of_order(q);
        for l in 1..=5 {
            for m in 1..=2 {
                for exps in increasing_lists(&[1, 2, 3, 4], m) {
                    let zero = vec![FieldElement::ZERO; m];
                    out.push(WeightedDiagonalSystem::unweighted(f.clone(), exps, l, zero, Domain::FullField).unwrap());
                }
            }
        }
    }
    out
}

fn weighted_systems() -> Vec<WeightedDiagonalSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..200).map(|_| random_system(&mut rng)).collect()
}

fn describe(sys: &WeightedDiagonalSystem) -> String {
    format!(
        "q={} exps={:?} weights={:?} b={:?}",
        sys.field().order(),
        sys.exponents(),
        sys.weights(),
        sys.targets().iter().map(|x| x.index()).collect::<Vec<_>>()
    )
}

fn criterion_1() -> Outcome {
    let grid = grid_systems();
    let weighted = weighted_systems();
    let bad: Vec<String> = grid
        .par_iter()
        .chain(weighted.par_iter())
        .filter_map(|sys| {
            let dp = solution_distribution(sys, &lim()).unwrap();
            let brute = bruteforce_distribution(sys, &lim()).unwrap();
            let single = count_points_dp(sys, &lim()).unwrap().count == count_points_bruteforce(sys, &lim()).unwrap().count;
            (dp != brute || !single).then(|| describe(sys))
        })
        .collect();
    let mut mm = Mismatches::default();
    bad.into_iter().for_each(|s| mm.push(|| s));
    Outcome::new(
        mm.count == 0,
        format!("{} grid + {} weighted systems, every target{}", grid.len(), weighted.len(), mm.summary()),
    )
}

// ---------------------------------------------------------------- 2

const SSP_EXPONENTS: [&[u64]; 4] = [&[1], &[1, 2], &[1, 2, 3], &[2, 3]];

fn ssp_grid() -> Vec<(u64, usize, &'static [u64])> {
    let mut out = Vec::new();
    for (p, s) in prime_powers_upto(13) {
        for k in 1..=5 {
            for exps in SSP_EXPONENTS {
                out.push((p.pow(s), k, exps));
            }
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let grid = ssp_grid();
    let bad: Vec<String> = grid
        .par_iter()
        .filter_map(|&(q, k, exps)| {
            let f = field_of_order(q);
            let dists: Vec<_> = SspMethod::ALL
                .iter()
                .map(|&method| moment_distribution(&f, &Domain::FullField, k, exps, method, &lim()).unwrap())
                .collect();
            (dists[0] != dists[1] || dists[1] != dists[2]).then(|| format!("q={q} k={k} exps={exps:?}"))
        })
        .collect();
    let mut mm = Mismatches::default();
    bad.into_iter().for_each(|s| mm.push(|| s));
    Outcome::new(
        mm.count == 0,
        format!("{} (q, k, exponents) instances, all targets, ie = dist = brute{}", grid.len(), mm.summary()),
    )
}

// ---------------------------------------------------------------- 3

fn criterion_3() -> Outcome {
    let mut mm = Mismatches::default();
    let mut rows = 0;
    for k in 1..=12u64 {
        for q in 0..=60u64 {
            let q = BigInt::from(q);
            rows += 1;
            let lhs = generating_c_alternating_q(k as usize, &q).unwrap();
            // same sum, built from the raw generating function
            let t: Vec<BigInt> = (0..k).map(|i| if i % 2 == 0 { q.clone() } else { -&q }).collect();
            let direct = generating_c(k as usize, &t).unwrap();
            let rhs = falling(&q, k);
            if lhs != rhs || direct != rhs {
                mm.push(|| format!("k={k} q={q}: {lhs} vs {rhs}"));
            }
        }
    }
    Outcome::new(mm.count == 0, format!("{rows} rows, k <= 12, q in [0, 60]{}", mm.summary()))
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Outcome {
    let mut mm = Mismatches::default();
    let mut rows = 0;
    for q in [2u64, 3, 5, 7, 11, 13] {
        let q = BigInt::from(q);
        let root = QSqrt::sqrt(&q);
        for k in 1..=12u64 {
            rows += 1;
            let lhs = generating_c(k as usize, &vec![root.clone(); k as usize]).unwrap();
            // (-1)^k binom(-sqrt q, k) k! = sqrt(q) (sqrt(q) + 1) ... (sqrt(q) + k - 1)
            let rhs = (0..k).fold(QSqrt::one(&q), |acc, i| &acc * &(&root + &QSqrt::integer(&q, i)));
            if lhs != rhs {
                mm.push(|| format!("k={k} q={q}"));
            }
        }
    }
    Outcome::new(mm.count == 0, format!("{rows} rows in Q[sqrt q], q in {{2,3,5,7,11,13}}, k <= 12{}", mm.summary()))
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Outcome {
    let mut mm = Mismatches::default();
    let mut rows = 0;
    for p in [2u64, 3, 5] {
        for s in 1..=3 {
            let q = BigInt::from(p.pow(s));
            for k in 1..=12u64 {
                rows += 1;
                let lhs = p_cycle_alternating_sum(k as usize, p, &q).unwrap();
                let rhs = if k % p != 0 {
                    BigInt::zero()
                } else {
                    let v = binom(&(&q / BigInt::from(p)), k / p) * fact(k);
                    if (k + k / p) % 2 == 0 {
                        v
                    } else {
                        -v
                    }
                };
                if lhs != rhs {
                    mm.push(|| format!("p={p} q={q} k={k}: {lhs} vs {rhs}"));
                }
            }
        }
    }
    Outcome::new(mm.count == 0, format!("{rows} rows, p in {{2,3,5}}, q in {{p,p^2,p^3}}, k <= 12{}", mm.summary()))
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let ssp = ssp_grid();
    let bad_ssp: Vec<String> = ssp
        .par_iter()
        .flat_map_iter(|&(q, k, exps)| {
            let f = field_of_order(q);
            SspMethod::ALL.into_iter().filter_map(move |method| {
                let d = moment_distribution(&f, &Domain::FullField, k, exps, method, &lim()).unwrap();
                (d.total() != subset_total(q, k)).then(|| format!("{} q={q} k={k} exps={exps:?}", method.name()))
            })
        })
        .collect();
    let systems: Vec<_> = grid_systems().into_iter().chain(weighted_systems()).collect();
    let bad_dp: Vec<String> = systems
        .par_iter()
        .filter_map(|sys| {
            let size = BigUint::from(sys.domain().size(sys.field()));
            let total = solution_distribution(sys, &lim()).unwrap().total();
            (total != size.pow(sys.l() as u32)).then(|| describe(sys))
        })
        .collect();
    let mut mm = Mismatches::default();
    bad_ssp.into_iter().chain(bad_dp).for_each(|s| mm.push(|| s));
    Outcome::new(
        mm.count == 0,
        format!(
            "{} subset distributions sum to binom(|D|, k); {} diagonal distributions sum to |D|^l{}",
            3 * ssp.len(),
            systems.len(),
            mm.summary()
        ),
    )
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let mut instances = Vec::new();
    for q in [3u64, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
        let (p, _) = prime_power(q).unwrap();
        let pool: Vec<u64> = (2..=7).filter(|d| d % p != 0).collect();
        for k in 1..=8usize {
            for m in 1..=3usize {
                if 2 * m > k - 1 {
                    continue;
                }
                for exps in increasing_lists(&pool, m) {
                    instances.push((q, k, exps));
                }
            }
        }
    }
    let results: Vec<(bool, bool, String)> = instances
        .par_iter()
        .map(|(q, k, exps)| {
            let f = field_of_order(*q);
            let m = exps.len();
            let sys = WeightedDiagonalSystem::unweighted(f, exps.clone(), *k, vec![FieldElement::ZERO; m], Domain::FullField).unwrap();
            let dist = solution_distribution(&sys, &lim()).unwrap();
            let qb = BigInt::from(*q);
            let main = qb.pow((k - m) as u32);
            let lo = BigInt::from(dist.counts().iter().min().unwrap().clone());
            let hi = BigInt::from(dist.counts().iter().max().unwrap().clone());
            let residual = (&hi - &main).abs().max((&lo - &main).abs());
            let d_m = *exps.last().unwrap();
            let bound = bound_main_estimate(&qb, *k as u64, m as u64, d_m).value;
            let ok = QSqrt::integer(&qb, residual) <= bound;
            let in_hyp = verify_diagonal(&sys, &lim()).unwrap().in_hypothesis;
            (ok, in_hyp, format!("q={q} k={k} exps={exps:?}"))
        })
        .collect();
    let mut mm = Mismatches::default();
    let mut in_hyp = 0;
    for (ok, h, what) in results {
        in_hyp += usize::from(h);
        if !ok {
            mm.push(|| what);
        }
    }
    Outcome::new(
        mm.count == 0 && in_hyp == instances.len(),
        format!(
            "{} systems, every target; {in_hyp} flagged in hypothesis (no q floor applies){}",
            instances.len(),
            mm.summary()
        ),
    )
}

// ---------------------------------------------------------------- 8

fn criterion_8() -> Outcome {
    let mut mm = Mismatches::default();

    // GF(4), k = 2, m = 1: the main term is exact on both branches
    let f = field(2, 2);
    let elements: Vec<FieldElement> = f.elements().collect();
    for b in f.elements() {
        let inst = MomentInstance::new(f.clone(), Domain::FullField, 2, vec![1], vec![b]).unwrap();
        let r = verify_moment(&inst, &lim()).unwrap();
        let oracle = subsets_oracle(&f, &elements, 2, &[1], &[b]);
        let main = nm_main_term(&BigInt::from(4), 2, 1, 2, b.is_zero()).unwrap();
        if r.exact != BigUint::from(oracle) || BigRational::from_integer(BigInt::from(oracle)) != main || !r.pass {
            mm.push(|| format!("GF(4) b={b}: exact {} main {main}", r.exact));
        }
    }

    let mut grid = Vec::new();
    for (p, s) in prime_powers_upto(49) {
        for k in 1..=6usize {
            for exps in [&[1u64][..], &[2], &[1, 2], &[2, 3]] {
                grid.push((p, s, k, exps));
            }
        }
    }
    let results: Vec<(usize, usize, Vec<String>)> = grid
        .par_iter()
        .map(|&(p, s, k, exps)| {
            let f = field(p, s);
            let reports = verify_moment_all_targets(&f, k, exps, &lim()).unwrap();
            let out_of_hyp = reports.iter().filter(|r| !r.in_hypothesis).count();
            let bad = reports
                .iter()
                .filter(|r| !r.pass)
                .map(|r| format!("q={} k={k} exps={exps:?} b={:?}", r.q, r.targets.iter().map(|x| x.index()).collect::<Vec<_>>()))
                .collect();
            (reports.len(), out_of_hyp, bad)
        })
        .collect();
    let (mut rows, mut out_of_hyp) = (0, 0);
    for (n, o, bad) in results {
        rows += n;
        out_of_hyp += o;
        bad.into_iter().for_each(|s| mm.push(|| s));
    }
    Outcome::new(
        mm.count == 0,
        format!(
            "GF(4) pairs exact on both branches; {rows} grid rows within the error term, {out_of_hyp} of them out of hypothesis (q <= 2^20){}",
            mm.summary()
        ),
    )
}

// ---------------------------------------------------------------- 9

fn criterion_9() -> Outcome {
    let mut mm = Mismatches::default();
    let mut sizes = Vec::new();
    for (q, k, m) in [(7u64, 3usize, 2usize), (11, 4, 3), (5, 4, 2), (13, 3, 2)] {
        let f = field_of_order(q);
        let c = homogeneous_equivalence_check(&f, k, m, &lim()).unwrap();
        sizes.push(format!("({q},{k},{m}): {}", c.power_sum_zero));
        if !c.equal || c.power_sum_zero != c.elementary_zero {
            mm.push(|| format!("q={q} k={k} m={m}"));
        }
    }
    Outcome::new(mm.count == 0, format!("zero sets coincide, sizes {}{}", sizes.join(", "), mm.summary()))
}

// ---------------------------------------------------------------- 10

/// Value set of `x -> f(x)` over the field, by direct evaluation.
fn value_set(f: &FieldSpec, eval: impl Fn(FieldElement) -> FieldElement) -> usize {
    let mut seen = vec![false; f.order() as usize];
    for x in f.elements() {
        seen[eval(x).index() as usize] = true;
    }
    seen.into_iter().filter(|&b| b).count()
}

fn pow(f: &FieldSpec, x: FieldElement, n: u64) -> FieldElement {
    (0..n).fold(FieldElement::ONE, |acc, _| f.mul(acc, x))
}

fn dickson(f: &FieldSpec, n: u64, a: FieldElement, x: FieldElement) -> FieldElement {
    // D_0 = 2, D_1 = x, D_j = x D_{j-1} - a D_{j-2}
    let mut d = [f.from_int(2), x];
    if n == 0 {
        return d[0];
    }
    for _ in 1..n {
        d = [d[1], f.sub(f.mul(x, d[1]), f.mul(a, d[0]))];
    }
    d[1]
}

fn criterion_10() -> Outcome {
    let mut unequal = Mismatches::default();
    let mut broken = Mismatches::default();
    let mut checked = 0;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = field_of_order(q);
        let polys = [
            ("T^2", PolySpec::monomial(2)),
            ("T^3+T^2", PolySpec::from_int_terms(&f, &[(3, 1), (2, 1)])),
            ("T^4+T^2", PolySpec::from_int_terms(&f, &[(4, 1), (2, 1)])),
        ];
        for (name, poly) in &polys {
            for k in 1..=3usize {
                for exps in [&[1u64][..], &[1, 2]] {
                    for b in all_targets(&f, exps.len()) {
                        checked += 1;
                        let t = image_tuple_counts(&f, poly, k, exps, &b, SspMethod::SubsetDp, &lim()).unwrap();
                        let what = || format!("q={q} f={name} k={k} exps={exps:?} b={:?}: |A|={} |B|={}", b.iter().map(|x| x.index()).collect::<Vec<_>>(), t.a, t.b);
                        if !t.sets_equinumerous() {
                            unequal.push(what);
                        }
                        // identities that do hold: |B| through fibers, |A| = k! N
                        if t.b != t.b_from_fibers || t.a != &t.n * fact(k as u64).magnitude() {
                            broken.push(what);
                        }
                    }
                }
            }
        }
    }

    let mut family = Mismatches::default();
    let mut families = 0;
    for (p, s) in prime_powers_upto(64) {
        let f = field(p, s);
        for fam in ImageFamily::instances(&f, 2 * p.max(6)) {
            let Some(expected) = fam.expected_size(&f) else { continue };
            families += 1;
            let got = match fam {
                ImageFamily::PShiftedMonomial => value_set(&f, |x| f.sub(pow(&f, x, p), pow(&f, x, p - 1))),
                ImageFamily::Monomial { n } => value_set(&f, |x| pow(&f, x, n)),
                ImageFamily::Dickson { n, a } => value_set(&f, |x| dickson(&f, n, a, x)),
            };
            if got as u64 != expected || fam.image(&f).len() != got {
                family.push(|| format!("q={} {fam:?}: {got} vs {expected}", f.order()));
            }
        }
    }

    let pass = unequal.count == 0 && broken.count == 0 && family.count == 0;
    Outcome {
        pass,
        detail: format!(
            "|A| = |B| on {}/{checked} rows{}; fiber identity and |A| = k! N on all rows{}; {families} family image sizes{}",
            checked - unequal.count,
            unequal.summary(),
            broken.summary(),
            family.summary()
        ),
        known_unattainable: !pass && broken.count == 0 && family.count == 0,
    }
}

// ---------------------------------------------------------------- 11

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    let mut mm = Mismatches::default();
    let mut rows = 0;
    for q in [4u64, 9, 16, 25, 49, 10_000] {
        // k <= q - sqrt(q) + 1, and every q here is a perfect square
        let k_max = q - q.sqrt() + 1;
        let mut ks: Vec<u64> = vec![1, k_max];
        ks.extend((0..48).map(|_| rng.gen_range(1..=k_max)));
        for k in ks {
            rows += 1;
            let s = sandwich_check(&BigInt::from(q), k).unwrap();
            // the exact triple is formed where its fractions stay small
            let exact = q > 49 || {
                let r = s.ratio();
                s.lower() <= r && r <= s.upper()
            };
            if !s.pass || !exact {
                mm.push(|| format!("q={q} k={k}"));
            }
        }
    }
    Outcome::new(mm.count == 0, format!("{rows} (q, k) pairs, lower <= ratio <= upper{}", mm.summary()))
}

// ---------------------------------------------------------------- 12

const DIGITS: u32 = 200;

fn scale() -> BigInt {
    BigInt::from(10).pow(DIGITS)
}

/// `floor((num / den)^(1/n) * 10^DIGITS)`.
fn root_fixed(num: &BigInt, den: &BigInt, n: u32) -> BigInt {
    (num * scale().pow(n) / den).nth_root(n)
}

/// The predicate flags recomputed from 200-digit decimal values of every real
/// threshold.
fn reference_predicates(query: &ExistenceQuery) -> [Option<bool>; 5] {
    let ExistenceQuery { p, k, m, d_m, n, b_is_zero, .. } = *query;
    let q = query.q();
    let one = BigInt::one();
    let ten = scale();
    let kk = BigInt::from(k) * &ten;

    // q^0.24
    let k_small = kk <= root_fixed(&q.pow(24), &one, 100);
    // (k - 25) / 50 in fixed point
    let brun_cap = (BigInt::from(k) - 25) * &ten / 50;
    let brun = m >= 1 && m <= d_m && BigInt::from(d_m) * &ten <= brun_cap && k_small;
    let image_brun = m >= 1 && n >= 1 && BigInt::from(m * n) * &ten < brun_cap && k_small;

    // 2 q^0.9 - sqrt(q) + 1, each root to 200 digits; within a few units of
    // the last place the reference abstains
    let lk: BigInt = BigInt::from(2) * root_fixed(&q.pow(9), &one, 10) - root_fixed(&q, &one, 2) + &ten;
    let large_k = if (&kk - &lk).abs() <= BigInt::from(3) { None } else { Some(kk <= lk) };
    // (sqrt(3)/3) k^0.02 = (k^2 / 3^50)^(1/100)
    let small_d = BigInt::from(d_m) * &ten <= root_fixed(&BigInt::from(k).pow(2), &BigInt::from(3).pow(50), 100);
    let shared = large_k.map(|lk| p >= 3 && m >= 1 && m <= d_m && small_d && lk);
    let divisible = k % p == 0;
    let coprime = shared.map(|s| s && (!divisible || b_is_zero) && q > BigInt::from(1u64 << 20));
    let div = shared.map(|s| s && divisible && !b_is_zero && q >= BigInt::from(1u64 << 21));

    // q > (7 m d / 2)^((2k + 2)/(k - 2m)), as (k - 2m) ln q > (2k + 2) ln(7 m d / 2);
    // k may be near 2^40, so compare logarithms rather than powers
    let diagonal = if k <= 2 * m {
        None
    } else if k < 5 || m < 1 {
        Some(false)
    } else {
        let lhs = BigInt::from(k - 2 * m) * BigInt::from(query.s) * ln_fixed(p);
        let rhs = BigInt::from(2 * k + 2) * (ln_fixed(7 * m * d_m) - ln_fixed(2));
        // each log is off by at most a few thousand units in the last place
        let slack = BigInt::from(u128::from(k - 2 * m) * u128::from(query.s) + u128::from(2 * k + 3)) * 4000;
        if (&lhs - &rhs).abs() <= slack {
            None
        } else {
            Some(lhs > rhs)
        }
    };
    [diagonal, coprime, div, Some(brun), Some(image_brun)]
}

const LN_DIGITS: u32 = 220;

/// `atanh(a/b) * 10^LN_DIGITS` for `0 <= a/b <= 1/3`, truncated term by term.
fn atanh_fixed(a: u64, b: u64) -> BigInt {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    let mut term = BigInt::from(10).pow(LN_DIGITS) * &a / &b;
    let (a2, b2) = (&a * &a, &b * &b);
    let mut sum = BigInt::zero();
    let mut i = 0u64;
    while !term.is_zero() {
        sum += &term / BigInt::from(2 * i + 1);
        term = term * &a2 / &b2;
        i += 1;
    }
    sum
}

/// `ln(n) * 10^LN_DIGITS` for `n >= 1`, from `ln n = j ln 2 + 2 atanh((x-1)/(x+1))`
/// with `x = n / 2^j` in `[1, 2)`.
fn ln_fixed(n: u64) -> BigInt {
    let j = 63 - n.leading_zeros() as u64;
    let pow = 1u64 << j;
    let ln2 = 2 * atanh_fixed(1, 3);
    BigInt::from(j) * ln2 + 2 * atanh_fixed(n - pow, n + pow)
}

fn sample_query(rng: &mut ChaCha8Rng, i: usize) -> ExistenceQuery {
    let p = [2u64, 3, 5, 7, 11][rng.gen_range(0..5)];
    let b_is_zero = rng.gen_bool(0.3);
    match i % 3 {
        // around k = q^0.24 with Brun-sized d
        0 => {
            let s = rng.gen_range(40..=300u32);
            let q = BigInt::from(p).pow(s);
            let edge = q.pow(24).nth_root(100).to_string().parse::<u64>().unwrap_or(u64::MAX / 2).min(1 << 40);
            let k = (edge as i64 + rng.gen_range(-2..=2)).max(1) as u64;
            let d_m = rng.gen_range(1..=(k / 50).clamp(1, 200));
            let m = rng.gen_range(1..=d_m);
            ExistenceQuery { p, s, k, m, d_m, n: rng.gen_range(1..=4), b_is_zero }
        }
        // around k = 2 q^0.9 - sqrt(q) + 1 with k past 3^25
        1 => {
            let p = [3u64, 5, 7][rng.gen_range(0..3)];
            let s = match p {
                3 => rng.gen_range(32..=40),
                5 => rng.gen_range(22..=27),
                _ => rng.gen_range(18..=22),
            };
            let q = (p as f64).powi(s as i32);
            let edge = 2.0 * q.powf(0.9) - q.sqrt() + 1.0;
            let k = (edge as i64 + rng.gen_range(-3..=3)).max(1) as u64;
            ExistenceQuery { p, s, k, m: 1, d_m: 1, n: 1, b_is_zero }
        }
        // small k, q near the diagonal threshold
        _ => {
            let k = rng.gen_range(5..=40u64);
            let m = rng.gen_range(1..=(k - 1) / 2);
            let d_m = m + rng.gen_range(0..4);
            let c = 3.5 * (m * d_m) as f64;
            let thr = ((2 * k + 2) as f64 / (k - 2 * m) as f64) * c.ln();
            let s = ((thr / (p as f64).ln()).round() as i64 + rng.gen_range(-1..=1)).max(1) as u32;
            ExistenceQuery { p, s, k, m, d_m, n: 1, b_is_zero }
        }
    }
}

fn criterion_12() -> Outcome {
    let mut mm = Mismatches::default();

    let mut certified = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 12);
    let mut synthetic = vec![ExistenceQuery { p: 2, s: 100, k: 1000, m: 19, d_m: 19, n: 1, b_is_zero: false }];
    while synthetic.len() < 40 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let k = rng.gen_range(75..=3000u64);
        let d_m = rng.gen_range(1..=(k - 25) / 50);
        let m = rng.gen_range(1..=d_m);
        let s = rng.gen_range(1..=400u32);
        let query = ExistenceQuery { p, s, k, m, d_m, n: 1, b_is_zero: false };
        if existence_predicates(&query).brun {
            synthetic.push(query);
        }
    }
    for query in &synthetic {
        let e = existence_predicates(query);
        let value = brun_lower_bound(&query.q(), query.k, query.m, query.d_m).value;
        if !e.brun || !value.is_positive() {
            mm.push(|| format!("Brun certificate p={} s={} k={} m={} d={}", query.p, query.s, query.k, query.m, query.d_m));
        } else {
            certified += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1200);
    let (mut agreed, mut abstained, mut positives) = (0, 0, 0);
    for i in 0..100 {
        let query = sample_query(&mut rng, i);
        let got = existence_predicates(&query);
        let got = [got.diagonal, Some(got.large_k_coprime), Some(got.large_k_divisible), Some(got.brun), Some(got.image_brun)];
        let want = reference_predicates(&query);
        let diag_defined = query.k > 2 * query.m;
        let mut ok = true;
        for (j, (g, w)) in got.iter().zip(&want).enumerate() {
            match (j, w) {
                (0, None) if !diag_defined => ok &= g.is_none(),
                (_, None) => abstained += 1,
                (_, Some(w)) => {
                    ok &= *g == Some(*w);
                    positives += usize::from(*w);
                }
            }
        }
        if ok {
            agreed += 1;
        } else {
            mm.push(|| format!("{query:?}: {got:?} vs {want:?}"));
        }
    }
    Outcome::new(
        mm.count == 0,
        format!(
            "{certified}/{} Brun instances certified positive; {agreed}/100 sampled predicate vectors match the 200-digit reference ({positives} true flags, {abstained} abstentions){}",
            synthetic.len(),
            mm.summary()
        ),
    )
}

// ----------------------------------------------------------------

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, u64); 12] = [
        (1, "diagonal dp equals brute force", criterion_1, 60),
        (2, "subset counts agree across three algorithms", criterion_2, 120),
        (3, "generating sum at (q, -q, ...)", criterion_3, 5),
        (4, "generating sum at constant sqrt(q)", criterion_4, 5),
        (5, "p-cycle alternating sum", criterion_5, 5),
        (6, "mass conservation", criterion_6, 180),
        (7, "diagonal estimate on the desk grid", criterion_7, 600),
        (8, "subset main terms within the error term", criterion_8, 120),
        (9, "power-sum and elementary zero sets coincide", criterion_9, 60),
        (10, "image-domain tuple sets and family sizes", criterion_10, 60),
        (11, "binomial ratio sandwich", criterion_11, 30),
        (12, "existence certificates and reference predicates", criterion_12, 60),
    ];
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();

    let mut unexpected = Vec::new();
    for (n, name, run, budget) in criteria {
        if !selected.is_empty() && !selected.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let pass = outcome.pass && in_time;
        let note = match (pass, outcome.known_unattainable && in_time) {
            (true, _) => "",
            (false, true) => " [known unattainable]",
            (false, false) => "",
        };
        println!(
            "criterion {n}: {}{note}  {name}: {}  ({:.2} s of {budget} s{})",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", over the runtime target" }
        );
        if !pass && !(outcome.known_unattainable && in_time) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
