//! Cross-verification suites: every check evaluates the same quantity by several
//! methods and records whether the values agree.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rat, rat_frac, x_vars, Coefficient, Rational, TruncSeries};
use crate::constant_term::{
    qasym_sides, qasym_var_sides, qhtree_formula, stanton_stembridge_sides, vsast_pq_formula, vsast_pq_odd_formula,
    vsastriangle_formula, CtFormula, QasymPoint,
};
use crate::error::{Error, Result};
use crate::formulas::{
    check_q_weight_shift, det_binom_matrix_side, det_binom_product_side, hmt_det_closed, lgv_count, sp_all_ones,
    two_enumeration, Parity, Partition, SpMethod,
};
use crate::objects::{
    enumerate_vsasm, enumerate_vsast, genfun_from_distribution, genfun_from_list, halved_weight_distribution,
    visit_halved_patterns, HalvedShape, NodeBudget, RowMode,
};
use crate::operators::{
    app_sum_even_sides, app_sum_odd_sides, hmt_pq_genfun, qhmt_genfun, qhtree_genfun, sum_op_alt_sides,
    sum_op_normal_sides, vsast_pq_genfun_op, LemmaSides,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Core,
    #[value(name = "appendixA")]
    AppendixA,
    #[value(name = "appendixB")]
    AppendixB,
    Lemmas,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::AppendixA => "appendixA",
            Suite::AppendixB => "appendixB",
            Suite::Lemmas => "lemmas",
        }
    }
}

/// Deliberate corruption used to check that the suites detect errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// Replaces the first nontrivial `(1+x)^e` factor of every constant-term integrand by `(1-x)^e`.
    CtSign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    SkippedResource,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub instance: String,
    pub methods: Vec<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<String>>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub matched: usize,
    pub mismatched: usize,
    pub skipped_resource: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub max_n: usize,
    pub seed: u64,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl VerifyReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Mismatch)
    }

    pub fn is_success(&self) -> bool {
        self.mismatches().next().is_none()
    }

    pub fn exit_code(&self) -> u8 {
        if self.is_success() {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub seed: u64,
    pub budget: NodeBudget,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { max_n: 5, seed: DEFAULT_SEED, budget: NodeBudget::DEFAULT, fault: None }
    }
}

pub const DEFAULT_SEED: u64 = 20_200_601;

type Runner = Box<dyn Fn(&VerifyConfig) -> Result<Vec<String>> + Send + Sync>;

struct Check {
    instance: String,
    methods: Vec<&'static str>,
    run: Runner,
}

fn check(
    instance: String,
    methods: &[&'static str],
    run: impl Fn(&VerifyConfig) -> Result<Vec<String>> + Send + Sync + 'static,
) -> Check {
    Check { instance, methods: methods.to_vec(), run: Box::new(run) }
}

fn is_resource(e: &Error) -> bool {
    matches!(e, Error::ResourceBound { .. } | Error::SizeCap { .. } | Error::CapExceeded { .. })
}

fn execute(c: &Check, cfg: &VerifyConfig) -> Record {
    let start = Instant::now();
    let outcome = (c.run)(cfg);
    let elapsed = start.elapsed();
    let methods = c.methods.iter().map(|m| m.to_string()).collect();
    let (status, values) = match outcome {
        Ok(v) if v.windows(2).all(|w| w[0] == w[1]) => (Status::Match, None),
        Ok(v) => (Status::Mismatch, Some(v)),
        Err(e) if is_resource(&e) => (Status::SkippedResource, Some(vec![e.to_string()])),
        Err(e) => (Status::Mismatch, Some(vec![e.to_string()])),
    };
    Record { instance: c.instance.clone(), methods, status, values, elapsed }
}

/// Runs one suite. Checks run in parallel; records are sorted by instance.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> VerifyReport {
    let checks = match suite {
        Suite::Core => core_checks(cfg),
        Suite::AppendixA => appendix_a_checks(cfg),
        Suite::AppendixB => appendix_b_checks(cfg),
        Suite::Lemmas => lemma_checks(cfg),
    };
    let mut records: Vec<Record> = checks.par_iter().map(|c| execute(c, cfg)).collect();
    records.sort_by(|a, b| a.instance.cmp(&b.instance));
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    let summary = Summary {
        matched: count(Status::Match),
        mismatched: count(Status::Mismatch),
        skipped_resource: count(Status::SkippedResource),
    };
    VerifyReport { suite: suite.name().to_string(), max_n: cfg.max_n, seed: cfg.seed, summary, records }
}

/// Strictly increasing rows of length `m` starting at `-1` or `0` with spread at most `spread`.
pub fn strict_rows(m: usize, spread: i64) -> Vec<Vec<i64>> {
    rows(m, spread, true)
}

/// Weakly increasing rows of length `m` starting at `-1` or `0` with spread at most `spread`.
pub fn weak_rows(m: usize, spread: i64) -> Vec<Vec<i64>> {
    rows(m, spread, false)
}

fn rows(m: usize, spread: i64, strict: bool) -> Vec<Vec<i64>> {
    fn rec(m: usize, hi: i64, strict: bool, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().map_or(hi, |&v| if strict { v + 1 } else { v });
        for v in lo..=hi {
            cur.push(v);
            rec(m, hi, strict, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for first in [-1, 0] {
        rec(m, first + spread, strict, &mut vec![first], &mut out);
    }
    out
}

/// The `(b, k)` grid for order `n`: strictly increasing `k` with spread at most 4 and `b - k_max` in `0..=2`.
pub fn hmt_grid(n: usize) -> Vec<(i64, Vec<i64>)> {
    let mut out = Vec::new();
    for k in strict_rows(n.div_ceil(2), 4) {
        for gap in 0..=2 {
            out.push((k[k.len() - 1] + gap, k.clone()));
        }
    }
    out
}

/// Every valid truncation vector of order `n`, listed with all `ceil(n/2)` entries.
pub fn tree_shapes(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            if HalvedShape::new(n, cur).is_ok() {
                out.push(cur.clone());
            }
            return;
        }
        let cap = cur.last().copied().unwrap_or(n);
        for v in 0..=cap {
            cur.push(v);
            rec(n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.div_ceil(2), &mut Vec::new(), &mut out);
    out
}

/// Shapes on which the equal-pair refinement applies: every diagonal keeps at least
/// two cells and truncating any single diagonal once more leaves a valid shape.
pub fn pair_refinable(n: usize, s: &[usize]) -> bool {
    let Ok(shape) = HalvedShape::new(n, s) else { return false };
    (0..shape.m()).all(|i| {
        let mut t = shape.s().to_vec();
        t[i] += 1;
        shape.diagonal_len(i + 1) >= 2 && HalvedShape::new(n, &t).is_ok()
    })
}

pub const VSAST_INSTANCES: [(usize, usize); 6] = [(2, 3), (2, 5), (2, 7), (4, 3), (4, 5), (6, 3)];

fn brute_halved(n: usize, s: &[usize], b: i64, k: &[i64], mode: RowMode, budget: NodeBudget) -> Result<(Coefficient, u64)> {
    let shape = HalvedShape::new(n, s)?;
    let dist = halved_weight_distribution(&shape, b, k, mode, budget)?;
    Ok((genfun_from_distribution(&dist).substitute_p(&rat(1)), dist.values().sum()))
}

fn polynomial_value(g: &Coefficient) -> String {
    if g.is_nonneg_integer_polynomial() {
        g.at_ones().to_string()
    } else {
        format!("not a polynomial with nonnegative integer coefficients: {g}")
    }
}

fn ct_value(mut f: CtFormula, cfg: &VerifyConfig) -> Result<Coefficient> {
    if cfg.fault == Some(Fault::CtSign) {
        f.flip_binomial_sign();
    }
    f.evaluate()
}

fn zeros(n: usize) -> Vec<usize> {
    vec![0; n.div_ceil(2)]
}

fn core_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=cfg.max_n {
        for (b, k) in hmt_grid(n) {
            let kk = k.clone();
            out.push(check(format!("hmt n={n} b={b} k={k:?}"), &["bruteforce", "operator"], move |cfg| {
                let (brute, _) = brute_halved(n, &zeros(n), b, &kk, RowMode::Strict, cfg.budget)?;
                Ok(vec![brute.to_string(), qhmt_genfun(n, b, &kk)?.to_string()])
            }));
            out.push(check(
                format!("hmt-polynomiality n={n} b={b} k={k:?}"),
                &["operator at Q=1", "cardinality"],
                move |cfg| {
                    let (_, count) = brute_halved(n, &zeros(n), b, &k, RowMode::Strict, cfg.budget)?;
                    Ok(vec![polynomial_value(&qhmt_genfun(n, b, &k)?), count.to_string()])
                },
            ));
        }
    }
    for n in 1..=cfg.max_n.min(5) {
        for s in tree_shapes(n) {
            for (b, k) in hmt_grid(n) {
                let (s2, k2) = (s.clone(), k.clone());
                out.push(check(
                    format!("tree n={n} s={s:?} b={b} k={k:?}"),
                    &["bruteforce", "operator", "ct"],
                    move |cfg| {
                        let (brute, _) = brute_halved(n, &s2, b, &k2, RowMode::Strict, cfg.budget)?;
                        let op = qhtree_genfun(n, b, &k2, &s2)?;
                        let ct = ct_value(qhtree_formula(n, b, &k2, &s2)?, cfg)?;
                        Ok(vec![brute.to_string(), op.to_string(), ct.to_string()])
                    },
                ));
            }
            if !pair_refinable(n, &s) {
                continue;
            }
            let m = n.div_ceil(2);
            for (b, k) in hmt_grid(n) {
                for mask in 0..1u32 << m {
                    let l_eq: BTreeSet<usize> = (1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                    let (s2, k2) = (s.clone(), k.clone());
                    out.push(check(
                        format!("tree-pairs n={n} s={s:?} b={b} k={k:?} equal={l_eq:?}"),
                        &["bruteforce", "operator"],
                        move |cfg| {
                            let brute = brute_equal_pairs(n, &s2, b, &k2, &l_eq, cfg.budget)?;
                            Ok(vec![brute.to_string(), hmt_pq_genfun(n, b, &k2, &s2, &l_eq)?.to_string()])
                        },
                    ));
                }
            }
        }
    }
    for (n, l) in VSAST_INSTANCES {
        if n > cfg.max_n {
            continue;
        }
        out.push(check(format!("vsast n={n} l={l}"), &["bruteforce", "operator", "ct"], move |cfg| {
            let brute = genfun_from_list(&enumerate_vsast(n, l, cfg.budget)?.items);
            let op = vsast_pq_genfun_op(n, l)?;
            let ct = ct_value(vsast_pq_formula(n, l)?, cfg)?;
            Ok(vec![brute.to_string(), op.to_string(), ct.to_string()])
        }));
        out.push(check(
            format!("vsast-polynomiality n={n} l={l}"),
            &["ct at P=Q=1", "cardinality"],
            move |cfg| {
                let count = enumerate_vsast(n, l, cfg.budget)?.items.len();
                Ok(vec![polynomial_value(&ct_value(vsast_pq_formula(n, l)?, cfg)?), count.to_string()])
            },
        ));
    }
    for n in [1usize, 3, 5] {
        if n > cfg.max_n {
            continue;
        }
        out.push(check(format!("vsast-odd n={n} l=1"), &["bruteforce", "ct"], move |cfg| {
            let brute = genfun_from_list(&enumerate_vsast(n, 1, cfg.budget)?.items);
            Ok(vec![brute.to_string(), ct_value(vsast_pq_odd_formula(n)?, cfg)?.to_string()])
        }));
        out.push(check(format!("vsast-odd-vs-triangle n={n}"), &["odd ct", "twice triangle ct"], move |cfg| {
            let odd = ct_value(vsast_pq_odd_formula(n)?, cfg)?;
            let tri = ct_value(vsastriangle_formula(n)?, cfg)?;
            Ok(vec![odd.to_string(), tri.scale(&rat(2)).to_string()])
        }));
    }
    for size in [3usize, 5, 7] {
        if size - 1 > cfg.max_n {
            continue;
        }
        out.push(check(format!("vsasm N={size}"), &["bruteforce", "operator at Q=1"], move |cfg| {
            let brute = enumerate_vsasm(size, cfg.budget)?.len();
            let h = (size - 1) / 2;
            let k: Vec<i64> = (1..=h as i64).collect();
            let op = qhmt_genfun(size - 1, h as i64, &k)?;
            Ok(vec![brute.to_string(), op.at_ones().to_string()])
        }));
    }
    out
}

/// Q-generating function of trees whose bottommost pair is equal exactly on the diagonals in `l_eq`.
pub fn brute_equal_pairs(
    n: usize,
    s: &[usize],
    b: i64,
    k: &[i64],
    l_eq: &BTreeSet<usize>,
    budget: NodeBudget,
) -> Result<Coefficient> {
    let shape = HalvedShape::new(n, s)?;
    let mut acc = Coefficient::zero();
    visit_halved_patterns(&shape, b, k, RowMode::Strict, budget, |p| {
        let eq = p.equal_bottom_pairs();
        if eq.iter().enumerate().all(|(i, &e)| e == l_eq.contains(&(i + 1))) {
            acc += &Coefficient::q_pow(p.special_count() as i64);
        }
    })?;
    Ok(acc)
}

fn appendix_a_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=cfg.max_n {
        for (b, k) in hmt_grid(n) {
            out.push(check(
                format!("two-enumeration n={n} b={b} k={k:?}"),
                &["operator at Q=2", "product"],
                move |_| {
                    let at_two = qhmt_genfun(n, b, &k)?.eval(&rat(2), &rat(1))?;
                    Ok(vec![at_two.to_string(), two_enumeration(n, b, &k)?.to_string()])
                },
            ));
        }
    }
    for n in 1..=cfg.max_n.min(5) {
        for (b, k) in hmt_grid(n) {
            out.push(check(
                format!("q-weight-shift n={n} b={b} k={k:?}"),
                &["shifted special-entry count", "direct q-weight"],
                move |cfg| {
                    let c = check_q_weight_shift(n, b, &k, cfg.budget)?;
                    Ok(vec![format!("{:?}", c.shifted), format!("{:?}", c.direct)])
                },
            ));
        }
    }
    out
}

fn appendix_b_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=cfg.max_n {
        for k in weak_rows(n.div_ceil(2), 3) {
            for gap in 0..=3 {
                let b = k[k.len() - 1] + gap;
                let k = k.clone();
                out.push(check(
                    format!("gelfand-tsetlin n={n} b={b} k={k:?}"),
                    &["bruteforce", "lgv", "hmt-det", "sp-product", "sp-jacobi-trudi"],
                    move |cfg| {
                        let (_, count) = brute_halved(n, &zeros(n), b, &k, RowMode::Weak, cfg.budget)?;
                        let lam = Partition::from_bottom_row(b, &k)?;
                        let parity = Parity::of(n);
                        Ok(vec![
                            count.to_string(),
                            lgv_count(n, b, &k)?.to_string(),
                            hmt_det_closed(n, b, &k)?.to_string(),
                            sp_all_ones(&lam, parity, SpMethod::Product)?.to_string(),
                            sp_all_ones(&lam, parity, SpMethod::JacobiTrudi)?.to_string(),
                        ])
                    },
                ));
            }
        }
    }
    out
}

/// A strictly increasing vector of length `len` with entries in `-3..=4`, and a bound `b >= k_max`.
pub fn random_strict(rng: &mut impl Rng, len: usize) -> (i64, Vec<i64>) {
    let mut pool: Vec<i64> = (-3..=4).collect();
    let mut k = Vec::with_capacity(len);
    for _ in 0..len {
        k.push(pool.remove(rng.gen_range(0..pool.len())));
    }
    k.sort();
    let b = k[len - 1] + rng.gen_range(0..=2);
    (b, k)
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    rat_frac(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// Random point for the antisymmetriser identities that avoids the poles of `sides`.
pub fn random_qasym_point(
    rng: &mut impl Rng,
    m: usize,
    sides: fn(&QasymPoint) -> Result<(Rational, Rational)>,
) -> Result<(QasymPoint, (Rational, Rational))> {
    loop {
        let x = (0..m).map(|_| random_rational(rng)).collect();
        let q = rat_frac(rng.gen_range(1..=12), rng.gen_range(1..=5));
        let pt = QasymPoint { x, q };
        match sides(&pt) {
            Ok(v) => return Ok((pt, v)),
            Err(Error::Pole) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// A random truncated series in `m` variables with caps `cap` and small integer Q-coefficients.
pub fn random_series(rng: &mut impl Rng, m: usize, cap: u32) -> TruncSeries {
    let vars = x_vars(m);
    let mut s = TruncSeries::zero(&vars, &vec![cap; m]);
    for _ in 0..rng.gen_range(1..=8) {
        let exps = (0..m).map(|_| rng.gen_range(0..=cap)).collect();
        let c = Coefficient::from_int(rng.gen_range(-5..=5)).mul_q_power(rng.gen_range(0..=2));
        s.add_term(exps, c);
    }
    s
}

fn sides_values(s: LemmaSides) -> Vec<String> {
    vec![s.lhs.to_string(), s.rhs.to_string()]
}

fn lemma_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for idx in 0..100 {
        let size = rng.gen_range(1..=4);
        let k: Vec<i64> = (0..size).map(|_| rng.gen_range(-6..=6)).collect();
        let parity = if idx % 2 == 0 { Parity::Even } else { Parity::Odd };
        out.push(check(
            format!("det-binom #{idx:03} {parity:?} k={k:?}"),
            &["determinant", "product"],
            move |_| Ok(vec![det_binom_matrix_side(parity, &k)?.to_string(), det_binom_product_side(parity, &k).to_string()]),
        ));
    }
    type SideFn = fn(i64, &[i64]) -> Result<LemmaSides>;
    let lemmas: [(&str, SideFn, usize); 4] = [
        ("app-sum-odd", app_sum_odd_sides, 2),
        ("sum-op-normal", sum_op_normal_sides, 2),
        ("app-sum-even", app_sum_even_sides, 1),
        ("sum-op-alt", sum_op_alt_sides, 1),
    ];
    for (name, f, min_len) in lemmas {
        for len in min_len..=4 {
            for idx in 0..4 {
                let (b, k) = random_strict(&mut rng, len);
                out.push(check(format!("{name} #{idx} b={b} k={k:?}"), &["lhs", "rhs"], move |_| Ok(sides_values(f(b, &k)?))));
            }
        }
    }
    type Sides = fn(&QasymPoint) -> Result<(Rational, Rational)>;
    let variants: [(&str, Sides); 2] = [("qasym", qasym_sides), ("qasym-var", qasym_var_sides)];
    for (name, sides) in variants {
        for m in 1..=3 {
            for idx in 0..20 {
                let sub_seed = rng.gen::<u64>();
                out.push(check(
                    format!("{name} m={m} #{idx:02}"),
                    &["antisymmetrised sum", "product"],
                    move |_| {
                        let mut r = ChaCha8Rng::seed_from_u64(sub_seed);
                        let (_, (lhs, rhs)) = random_qasym_point(&mut r, m, sides)?;
                        Ok(vec![lhs.to_string(), rhs.to_string()])
                    },
                ));
            }
        }
    }
    for m in 1..=3 {
        for idx in 0..5 {
            let cap = rng.gen_range(1..=3u32);
            let series = random_series(&mut rng, m, cap);
            let offset = vec![rng.gen_range(0..=cap as i64); m];
            out.push(check(format!("stanton-stembridge m={m} #{idx}"), &["direct", "symmetrised"], move |_| {
                let (a, b) = stanton_stembridge_sides(&series, &offset)?;
                Ok(vec![a.to_string(), b.to_string()])
            }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(strict_rows(1, 4).len(), 2);
        assert!(strict_rows(3, 4).iter().all(|k| k[0] < k[1] && k[1] < k[2] && k[2] - k[0] <= 4));
        assert_eq!(strict_rows(3, 4).len(), 12);
        assert_eq!(weak_rows(2, 1), vec![vec![-1, -1], vec![-1, 0], vec![0, 0], vec![0, 1]]);
        assert_eq!(hmt_grid(3).len(), 3 * strict_rows(2, 4).len());
        assert!(tree_shapes(5).contains(&vec![2, 1, 0]));
        assert!(tree_shapes(3).iter().all(|s| s.len() == 2));
    }

    #[test]
    fn small_core_run_matches() {
        let cfg = VerifyConfig { max_n: 3, ..VerifyConfig::default() };
        let r = run_suite(Suite::Core, &cfg);
        assert!(r.is_success(), "{:?}", r.mismatches().collect::<Vec<_>>());
        assert!(r.summary.matched > 50);
    }

    #[test]
    fn fault_is_detected() {
        let cfg = VerifyConfig { max_n: 3, fault: Some(Fault::CtSign), ..VerifyConfig::default() };
        assert!(!run_suite(Suite::Core, &cfg).is_success());
    }

    #[test]
    fn records_are_sorted_and_reproducible() {
        let cfg = VerifyConfig { max_n: 2, ..VerifyConfig::default() };
        let a = serde_json::to_string(&run_suite(Suite::Lemmas, &cfg)).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::Lemmas, &cfg)).unwrap();
        assert_eq!(a, b);
        let r = run_suite(Suite::AppendixB, &cfg);
        assert!(r.records.windows(2).all(|w| w[0].instance <= w[1].instance));
    }
}
