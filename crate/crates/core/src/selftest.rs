//! The acceptance suite, runnable from tests and from the command line.

use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boxmod::{BoxModule, CellArrangement, FieldConfig, Interval};
use crate::certificates::{
    augmented_resolution, ext_n_plus_1, fixtures, projective_resolution, support_escape,
    verify_certificate,
};
use crate::complexes::oracle::check_against_oracle;
use crate::complexes::{homology, homology_on, BoxComplex, CellHomologyTable, HomologyOptions};
use crate::error::{Error, Result};
use crate::exponents::{dense_example_group, ExponentGroup, ExponentValue, ExponentVector};
use crate::koszul::{
    binomial, flat_resolution, open_koszul, ordinary_koszul, orthant_resolution, subsets,
    tor_of_power_quotient, total_koszul_truncated, GroupContext, TruncationSequence,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    Small,
    Full,
}

#[derive(Clone, Debug)]
pub struct SelfTestOptions {
    pub depth: Depth,
    pub seed: u64,
    /// Criterion whose fixture is deliberately corrupted.
    pub corrupt: Option<u8>,
}

impl Default for SelfTestOptions {
    fn default() -> Self {
        SelfTestOptions {
            depth: Depth::Full,
            seed: 2024,
            corrupt: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "open Koszul acyclicity"),
    (2, "Tor table"),
    (3, "orthant resolutions"),
    (4, "support escape"),
    (5, "Ext^{n+1} certificate"),
    (6, "projective resolution constructor"),
    (7, "dense subgroup"),
    (8, "group-parameterized rerun"),
    (9, "discretized total Koszul"),
    (10, "oracle equivalence"),
];

/// Run one criterion; errors count as failures.
pub fn run_criterion(id: u8, opts: &SelfTestOptions) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown", |(_, n)| n);
    let corrupt = opts.corrupt == Some(id);
    let start = Instant::now();
    let outcome = match id {
        1 => criterion_1(corrupt),
        2 => criterion_2(corrupt),
        3 => criterion_3(opts, corrupt),
        4 => criterion_4(opts, corrupt),
        5 => criterion_5(opts, corrupt),
        6 => criterion_6(opts, corrupt),
        7 => criterion_7(corrupt),
        8 => criterion_8(opts, corrupt),
        9 => criterion_9(opts, corrupt),
        10 => criterion_10(opts, corrupt),
        _ => Err(Error::InvalidParameter(format!("no criterion {id}"))),
    };
    let (passed, detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_selftest(opts: &SelfTestOptions) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .map(|&(id, _)| run_criterion(id, opts))
        .collect()
}

/// `Ok(Ok(detail))` on pass, `Ok(Err(reason))` on a failed check.
type Outcome = Result<std::result::Result<String, String>>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Ok(Err(format!($($fmt)*)));
        }
    };
}

fn q(p: i64, d: i64) -> ExponentValue {
    ExponentValue::from_ratio(p, d)
}

/// Remove the last column of the top differential, freeing one relation.
fn drop_top_differential(c: &mut BoxComplex) {
    if let Some(top) = c.max_degree() {
        let mut es = c.differential(top).to_vec();
        if let Some(col) = es.iter().map(|e| e.col).max() {
            es.retain(|e| e.col != col);
        }
        c.set_differential(top, es);
    }
}

fn open_koszul_ok(c: &BoxComplex, n: usize) -> Result<std::result::Result<(), String>> {
    let h = homology(c)?;
    if h.arrangement.cell_count() != 3usize.pow(n as u32) {
        return Ok(Err(format!(
            "n = {n}: {} cells",
            h.arrangement.cell_count()
        )));
    }
    for cell in h.arrangement.cells() {
        let origin = cell.iter().all(|&p| p == 1);
        if h.get(&cell, 0) != origin as usize {
            return Ok(Err(format!(
                "n = {n}: H_0 wrong on {}",
                h.arrangement.cell_label(&cell)
            )));
        }
        if (1..=n as i64).any(|d| h.get(&cell, d) != 0) {
            return Ok(Err(format!(
                "n = {n}: higher homology on {}",
                h.arrangement.cell_label(&cell)
            )));
        }
    }
    Ok(Ok(()))
}

fn criterion_1(corrupt: bool) -> Outcome {
    for n in 1..=3 {
        let mut c = open_koszul(n);
        if corrupt {
            drop_top_differential(&mut c);
        }
        if let Err(e) = open_koszul_ok(&c, n)? {
            return Ok(Err(e));
        }
    }
    Ok(Ok(
        "n = 1, 2, 3: H_0 = k at the origin cell, acyclic elsewhere".into(),
    ))
}

fn criterion_2(corrupt: bool) -> Outcome {
    for n in 1..=3usize {
        let mut eps: Vec<ExponentValue> = (1..=n as i64).map(|d| q(1, d)).collect();
        if corrupt {
            eps[0] = ExponentValue::zero();
        }
        let eps = ExponentVector::new(eps);
        for i in 0..=n {
            let t = tor_of_power_quotient(&eps, i as i64)?;
            ensure!(t == binomial(n, i), "n = {n}, i = {i}: Tor = {t}");
        }
    }
    Ok(Ok(
        "Tor_i = C(n, i) for n <= 3 with vanishing induced differentials".into(),
    ))
}

/// A random admissible sequence: `e₀ ∈ [1/2, 2]`, ratios in `(1/4, 3/4)`.
fn random_sequence(
    rng: &mut ChaCha8Rng,
    sigma: &[bool],
    depth: usize,
) -> Result<TruncationSequence> {
    let n = sigma.len();
    let mut cur: Vec<BigRational> = (0..n)
        .map(|_| BigRational::new(rng.gen_range(4..=16).into(), 8.into()))
        .collect();
    let mut entries = Vec::with_capacity(depth + 1);
    for _ in 0..=depth {
        entries.push(
            ExponentVector::new(
                cur.iter()
                    .map(|c| ExponentValue::from_rational(c.clone()))
                    .collect(),
            )
            .restrict(sigma),
        );
        for c in cur.iter_mut() {
            *c = &*c * BigRational::new(rng.gen_range(26..=74).into(), 100.into());
        }
    }
    TruncationSequence::new(sigma.to_vec(), entries)
}

/// Sweep `K = 1..=depth`: `H₁ = 0` everywhere, `H₀ = R(−e_K)` everywhere,
/// and `H₀` agrees with `I_σ` beyond `e_K`, staying so as `K` grows.
fn check_orthant_sweep(
    seq: &TruncationSequence,
    ctx: Option<&GroupContext>,
    flip: bool,
) -> Result<std::result::Result<Vec<CellHomologyTable>, String>> {
    let sigma = seq.sigma().to_vec();
    let n = sigma.len();
    let extra: Vec<Vec<ExponentValue>> = (0..n)
        .map(|i| {
            let mut v: Vec<ExponentValue> = seq.entries().iter().map(|e| e[i].clone()).collect();
            v.push(ExponentValue::zero());
            v
        })
        .collect();
    let arr = CellArrangement::new(extra)?;
    let limit = BoxModule::orthant(&ExponentVector::zeros(n), &sigma);
    let mut stable = vec![false; arr.cell_count()];
    let mut tables = Vec::new();
    for k in 1..=seq.depth() {
        let level = seq.truncate(k)?;
        let res = match ctx {
            Some(c) => c.orthant_resolution(&sigma, &level)?,
            None => orthant_resolution(&sigma, &level)?,
        };
        let mut complex = res.complex;
        if flip {
            drop_top_differential(&mut complex);
        }
        let h = homology_on(&complex, arr.clone(), &HomologyOptions::default())?;
        let e_k = &level.entries()[k];
        for (idx, cell) in arr.cells().into_iter().enumerate() {
            if h.get(&cell, 1) != 0 {
                return Ok(Err(format!(
                    "σ = {sigma:?}, K = {k}: H_1 on {}",
                    arr.cell_label(&cell)
                )));
            }
            let h0 = h.get(&cell, 0);
            if h0 != arr.evaluate(&res.h0, &cell)? {
                return Ok(Err(format!("σ = {sigma:?}, K = {k}: H_0 is not R(-e_K)")));
            }
            let beyond = crate::koszul::truncation_beyond_level(&arr, &cell, &sigma, e_k)?;
            let agrees = h0 == arr.evaluate(&limit, &cell)?;
            if beyond && !agrees {
                return Ok(Err(format!(
                    "σ = {sigma:?}, K = {k}: H_0 differs from I_σ on stabilized cell {}",
                    arr.cell_label(&cell)
                )));
            }
            if stable[idx] && !agrees {
                return Ok(Err(format!(
                    "σ = {sigma:?}: cell {} destabilized",
                    arr.cell_label(&cell)
                )));
            }
            stable[idx] |= agrees;
        }
        tables.push(h);
    }
    Ok(Ok(tables))
}

fn criterion_3(opts: &SelfTestOptions, corrupt: bool) -> Outcome {
    let seeds = match opts.depth {
        Depth::Full => 20,
        Depth::Small => 4,
    };
    let mut runs = 0;
    for s in 0..seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(s));
        for n in 1..=3 {
            let depth = if n == 3 { 3 } else { 4 };
            for i in 0..=n {
                for sigma in subsets(n, i) {
                    let seq = random_sequence(&mut rng, &sigma, depth)?;
                    if let Err(e) = check_orthant_sweep(&seq, None, corrupt)? {
                        return Ok(Err(format!("seed {s}: {e}")));
                    }
                    runs += 1;
                }
            }
        }
    }
    Ok(Ok(format!(
        "{runs} sequences over {seeds} seeds: exact in degree 1, H_0 stabilizes to I_σ"
    )))
}

fn criterion_4(opts: &SelfTestOptions, corrupt: bool) -> Outcome {
    let top = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let geometric =
        TruncationSequence::geometric(&[true], &ExponentVector::from_integers(&[1]), top)?;
    let random = random_sequence(&mut rng, &[true], top)?;
    let one = BigRational::from_integer(1.into());
    let zero = BigRational::from_integer(0.into());
    for seq in [&geometric, &random] {
        for k in 1..=top {
            let c = if corrupt { &zero } else { &one };
            let cert = support_escape(k, c, seq)?;
            ensure!(
                cert.minimal_forced() == Some(k) && cert.support.contains(&k),
                "K = {k}: forced support {:?}",
                cert.forced
            );
            let z = support_escape(k, &zero, seq)?;
            ensure!(
                z.support.is_empty(),
                "K = {k}: c = 0 has support {:?}",
                z.support
            );
        }
    }
    Ok(Ok(
        "K = 1..12: every c = 1 solution uses index K; c = 0 has the empty solution".into(),
    ))
}

fn criterion_5(opts: &SelfTestOptions, corrupt: bool) -> Outcome {
    let k_max = match opts.depth {
        Depth::Full => 10,
        Depth::Small => 4,
    };
    let seq = TruncationSequence::geometric(&[true], &ExponentVector::from_integers(&[1]), k_max)?;
    for n in 1..=3 {
        let cert = ext_n_plus_1(
            n,
            k_max,
            &seq,
            &ExponentValue::from_integer(1),
            FieldConfig::Rational,
        )?;
        ensure!(
            cert.table[n + 1] == vec![(2, n - 1, 1)],
            "n = {n}: top row {:?}",
            cert.table[n + 1]
        );
        let expected: Vec<usize> = (0..n).map(|q| binomial(n - 1, q)).collect();
        ensure!(
            cert.dual_ranks == expected,
            "n = {n}: ranks {:?}",
            cert.dual_ranks
        );
        let mut json = cert.to_json();
        if corrupt {
            json["components"][1]["levels"][0]["minimal_forced"] = serde_json::json!(0);
        }
        ensure!(
            verify_certificate(&json)?,
            "n = {n}: certificate does not re-verify"
        );
    }
    Ok(Ok(format!(
        "n = 1, 2, 3 certified up to K = {k_max}; row n+1 is (2, n-1)"
    )))
}

fn criterion_6(opts: &SelfTestOptions, corrupt: bool) -> Outcome {
    let depth = match opts.depth {
        Depth::Full => 8,
        Depth::Small => 4,
    };
    let mut lines = Vec::new();
    for n in 1..=2 {
        let eps = ExponentVector::new(vec![q(1, 2); n]);
        let mut list = vec![
            ("k", fixtures::residue_field(n)),
            ("R/I", fixtures::quotient_by_i(n)?),
            ("R/I'", fixtures::quotient_by_i_prime(n)?),
            ("B", fixtures::power_quotient(&eps)?),
        ];
        if corrupt {
            // a module the resolution was not built for
            list[0].1 = vec![BoxModule::ring(n)];
        }
        for (name, m) in list {
            let r = projective_resolution(n, &m, depth, None)?;
            let checked = if corrupt && name == "k" {
                // compare against the residue field while resolving R
                let target = fixtures::residue_field(n);
                let h = homology(&r.complex)?;
                let arr = h
                    .arrangement
                    .refine(&vec![vec![ExponentValue::zero()]; n])?;
                let h = homology_on(&r.complex, arr, &HomologyOptions::default())?;
                h.arrangement
                    .cells()
                    .iter()
                    .all(|c| h.get(c, 0) == h.arrangement.evaluate(&target[0], c).unwrap_or(9))
            } else {
                r.is_exact_on_stabilized()
            };
            ensure!(
                r.length() <= n + 1,
                "{name}, n = {n}: length {}",
                r.length()
            );
            ensure!(checked, "{name}, n = {n}: {:?}", r.failures);
            ensure!(
                r.stabilized_cells > 0,
                "{name}, n = {n}: no stabilized cells"
            );
            lines.push(format!("{name}/n={n}: length {}", r.length()));
        }
    }
    Ok(Ok(lines.join(", ")))
}

fn criterion_7(corrupt: bool) -> Outcome {
    let mut g = dense_example_group();
    let ray = g.ray_intersection(1)?.unwrap_or_default();
    let mut names: Vec<String> = ray.iter().map(|v| v.to_string()).collect();
    names.sort();
    ensure!(names == ["2", "e"], "y-ray generators {names:?}");
    let one_one = ExponentVector::parse(&["1", "1"], g.basis_mut())?;
    ensure!(g.in_positive_cone(&one_one)?, "(1,1) not in G_+");
    ensure!(
        !g.in_open_cone(&one_one)?,
        "(1,1) accepted by the open cone"
    );
    let probe = if corrupt { ["0", "2"] } else { ["0", "1"] };
    let v = ExponentVector::parse(&probe, g.basis_mut())?;
    ensure!(
        !g.is_member(&v)?,
        "({}, {}) is a member",
        probe[0],
        probe[1]
    );
    Ok(Ok(
        "y-ray = <2, e>; (1,1) in G_+ but not open; (0,1) not in G".into(),
    ))
}

/// Compare `H₀` of two sweeps' final levels on cells stabilized in both.
fn compare_final(
    a: &CellHomologyTable,
    b: &CellHomologyTable,
    sigma: &[bool],
    ea: &ExponentVector,
    eb: &ExponentVector,
) -> Result<std::result::Result<usize, String>> {
    let crit: Vec<Vec<ExponentValue>> = (0..sigma.len())
        .map(|i| {
            a.arrangement
                .critical(i)
                .iter()
                .chain(b.arrangement.critical(i))
                .cloned()
                .collect()
        })
        .collect();
    let joint = CellArrangement::new(crit)?;
    let mut shared = 0;
    for cell in joint.cells() {
        let beyond = crate::koszul::truncation_beyond_level(&joint, &cell, sigma, ea)?
            && crate::koszul::truncation_beyond_level(&joint, &cell, sigma, eb)?;
        if !beyond {
            continue;
        }
        let ca = a.arrangement.coarsen(&joint, &cell)?;
        let cb = b.arrangement.coarsen(&joint, &cell)?;
        for d in 0..=1 {
            if a.get(&ca, d) != b.get(&cb, d) {
                return Ok(Err(format!("tables differ on {}", joint.cell_label(&cell))));
            }
        }
        shared += 1;
    }
    Ok(Ok(shared))
}

fn criterion_8(opts: &SelfTestOptions, corrupt: bool) -> Outcome {
    let depth = match opts.depth {
        Depth::Full => 4,
        Depth::Small => 2,
    };
    let groups: Vec<(&str, ExponentGroup, ExponentValue)> = vec![
        ("(1/3)Z^n", ExponentGroup::rational_lattice(3, 3), q(1, 3)),
        (
            "dense",
            dense_example_group(),
            ExponentValue::from_integer(2),
        ),
    ];
    let mut shared_total = 0;
    for (name, g, unit) in groups {
        let max_n = g.dimension().min(3);
        for n in 1..=max_n {
            let sub = restrict_group(&g, n)?;
            let ctx = GroupContext::new(sub)?;
            // criterion 1 under G: the open Koszul complex has no exponents beyond 0
            if let Err(e) = open_koszul_ok(&open_koszul(n), n)? {
                return Ok(Err(format!("{name}: {e}")));
            }
            // criterion 2 under G
            let eps = ExponentVector::new(vec![unit.clone(); n]);
            let k = ctx.ordinary_koszul(&eps)?;
            let tk = homology(&k)?;
            let plain = homology(&ordinary_koszul(&ExponentVector::new(vec![
                unit.clone();
                n
            ]))?)?;
            ensure!(
                tk.to_json() == plain.to_json(),
                "{name}: Koszul tables differ"
            );
            for i in 0..=n {
                ensure!(
                    tor_of_power_quotient(&eps, i as i64)? == binomial(n, i),
                    "{name}: Tor_{i} wrong"
                );
            }
            // criterion 3 under G, compared with a geometric run in ℝⁿ
            for i in 0..=n {
                for sigma in subsets(n, i) {
                    let seq = ctx.ray_truncation(&sigma, depth)?;
                    let tables = match check_orthant_sweep(&seq, Some(&ctx), corrupt)? {
                        Ok(t) => t,
                        Err(e) => return Ok(Err(format!("{name}: {e}"))),
                    };
                    let reference = TruncationSequence::geometric(
                        &sigma,
                        &ExponentVector::from_integers(&vec![1; n]),
                        depth,
                    )?;
                    let ref_tables = match check_orthant_sweep(&reference, None, false)? {
                        Ok(t) => t,
                        Err(e) => return Ok(Err(format!("reference: {e}"))),
                    };
                    let (a, b) = (
                        tables.last().expect("depth ≥ 1"),
                        ref_tables.last().expect("depth ≥ 1"),
                    );
                    match compare_final(
                        a,
                        b,
                        &sigma,
                        &seq.entries()[depth],
                        &reference.entries()[depth],
                    )? {
                        Ok(s) => shared_total += s,
                        Err(e) => return Ok(Err(format!("{name}, σ = {sigma:?}: {e}"))),
                    }
                }
            }
        }
    }
    Ok(Ok(format!(
        "(1/3)Z^n and the dense group agree with R^n on {shared_total} shared stabilized cells"
    )))
}

/// The first `n` coordinates of `g`, when `g` is a product (only used for
/// the rational lattice; the dense group is used at its own dimension).
fn restrict_group(g: &ExponentGroup, n: usize) -> Result<ExponentGroup> {
    if n == g.dimension() {
        return Ok(g.clone());
    }
    match g.generators() {
        Some(gens) => {
            let keep: Vec<usize> = (0..n).collect();
            let sub: Vec<ExponentVector> = gens
                .iter()
                .filter(|v| v.iter().skip(n).all(ExponentValue::is_zero))
                .map(|v| ExponentVector::new(keep.iter().map(|&i| v[i].clone()).collect()))
                .collect();
            ExponentGroup::generated(n, g.basis().clone(), sub)
        }
        None => Ok(ExponentGroup::full(n, g.basis().clone())),
    }
}

fn criterion_9(opts: &SelfTestOptions, corrupt: bool) -> Outcome {
    let window = match opts.depth {
        Depth::Full => 4,
        Depth::Small => 2,
    };
    let mut checked = 0;
    for n in 1..=2 {
        let eps = ExponentVector::from_integers(&vec![1; n]);
        let unit = |hi_closed| {
            BoxModule::new(vec![
                Interval::bounded(
                    ExponentValue::zero(),
                    true,
                    ExponentValue::from_integer(1),
                    hi_closed
                )
                .expect("nonempty");
                n
            ])
        };
        let modules: Vec<(&str, Vec<BoxModule>)> = vec![
            ("k", vec![BoxModule::residue_field(n)]),
            ("R", vec![BoxModule::ring(n)]),
            (
                "R shifted",
                vec![BoxModule::free(&ExponentVector::new(vec![q(1, 2); n]))],
            ),
            ("cube", vec![unit(true)]),
            ("half-open cube", vec![unit(false)]),
        ];
        for (name, m) in modules {
            let t = total_koszul_truncated(&m, &eps)?;
            let d = t.discretize(2, window)?;
            let field = FieldConfig::Rational;
            let h = d.homology(field)?;
            let mut fails = h.positive_failures();
            if corrupt && name == "k" {
                fails.push(vec![0; n]);
            }
            ensure!(
                fails.is_empty(),
                "{name}, n = {n}: H_{{>0}} at {:?}",
                fails[0]
            );
            for t in d.degrees().iter().step_by(7) {
                ensure!(d.square_zero_at(t), "{name}, n = {n}: d^2 != 0 at {t:?}");
            }
            if n == 1 && name == "R" {
                for t in 0..=d.window_top() {
                    ensure!(
                        h.get(&[t], 0) as i64 == (t + 1).min(4),
                        "R: H_0({t}) = {}",
                        h.get(&[t], 0)
                    );
                }
            }
            checked += h.entries.len();
        }
    }
    Ok(Ok(format!(
        "{checked} sum degrees, step eps/4, window [0, {window} eps]: acyclic in positive degrees"
    )))
}

fn criterion_10(opts: &SelfTestOptions, corrupt: bool) -> Outcome {
    let samples = match opts.depth {
        Depth::Full => 200,
        Depth::Small => 50,
    };
    let seq =
        TruncationSequence::geometric(&[true, false], &ExponentVector::from_integers(&[1, 1]), 3)?;
    let cube = fixtures::quotient_by_i_prime(2)?;
    let mut complexes: Vec<(String, BoxComplex)> = vec![
        ("open_koszul(1)".into(), open_koszul(1)),
        ("open_koszul(2)".into(), open_koszul(2)),
        ("open_koszul(3)".into(), open_koszul(3)),
        (
            "ordinary_koszul(1/2, 1/3)".into(),
            ordinary_koszul(&ExponentVector::new(vec![q(1, 2), q(1, 3)]))?,
        ),
        (
            "orthant_resolution".into(),
            orthant_resolution(&[true, false], &seq)?.complex,
        ),
        ("flat_resolution(R/I')".into(), flat_resolution(2, &cube)?),
        (
            "augmented_resolution".into(),
            augmented_resolution(&TruncationSequence::geometric(
                &[true],
                &ExponentVector::from_integers(&[1]),
                4,
            )?)?,
        ),
        (
            "projective_resolution(k)".into(),
            projective_resolution(1, &fixtures::residue_field(1), 4, None)?.complex,
        ),
        (
            "projective_resolution(R/I')".into(),
            projective_resolution(2, &cube, 2, None)?.complex,
        ),
    ];
    for (i, (name, c)) in complexes.iter_mut().enumerate() {
        let table = homology(c)?;
        if corrupt && i == 0 {
            drop_top_differential(c);
        }
        let bad = check_against_oracle(c, &table, samples, opts.seed.wrapping_add(i as u64))?;
        ensure!(
            bad.is_empty(),
            "{name}: {} mismatches, first {:?}",
            bad.len(),
            bad[0]
        );
    }
    Ok(Ok(format!(
        "{} complexes x {samples} sampled degrees agree with the oracle",
        complexes.len()
    )))
}
