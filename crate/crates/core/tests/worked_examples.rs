//! Worked examples. Values taken from the theory are checked directly; the
//! rest are pinned against independent oracles (floating point, brute force
//! enumeration, pointwise sampling) computed here rather than by the engine.

use num_rational::BigRational;
use realexp::boxmod::{
    build_arrangement, can_map, minkowski_orthant, BoxModule, FieldConfig, Interval,
};
use realexp::certificates::{
    augmented_resolution, dual_koszul_collapse, ext2_certificate_with, ext_n_plus_1, fixtures,
    projective_resolution, support_escape,
};
use realexp::complexes::oracle::homology_at;
use realexp::complexes::{homology, tensor, tensor_total, BoxComplex};
use realexp::exponents::{
    dense_example_group, ConstantBasis, ExponentGroup, ExponentValue, ExponentVector,
};
use realexp::koszul::{
    binomial, koszul_one, open_koszul, open_koszul_one, ordinary_koszul, orthant_resolution,
    tor_of_power_quotient, total_koszul_truncated, truncated_resolution, GroupContext,
    TruncationSequence,
};
use realexp::Error;

fn q(p: i64, d: i64) -> ExponentValue {
    ExponentValue::from_ratio(p, d)
}

fn vec_of(parts: &[&str]) -> ExponentVector {
    ExponentVector::parse(parts, &mut ConstantBasis::with_builtins()).unwrap()
}

fn f64_of(v: &ExponentValue) -> f64 {
    let (lo, hi) = v.enclosure(30);
    let to = |r: &BigRational| {
        r.numer().to_string().parse::<f64>().unwrap()
            / r.denom().to_string().parse::<f64>().unwrap()
    };
    (to(&lo) + to(&hi)) / 2.0
}

#[test]
fn transcendental_comparisons_match_floating_point() {
    let pi_minus_e = vec_of(&["pi - e"]);
    let float = std::f64::consts::PI - std::f64::consts::E;
    let engine = pi_minus_e[0].compare(&ExponentValue::zero()).unwrap();
    assert_eq!(engine, float.partial_cmp(&0.0).unwrap());

    let v = vec_of(&["pi - 3", "1"]);
    assert_eq!(
        v.is_nonnegative().unwrap(),
        std::f64::consts::PI - 3.0 >= 0.0
    );

    let m = vec_of(&["pi", "2"]).meet(&vec_of(&["3", "e"])).unwrap();
    let float = [std::f64::consts::PI.min(3.0), 2f64.min(std::f64::consts::E)];
    assert_eq!(m, ExponentVector::from_integers(&[3, 2]));
    for (v, f) in m.iter().zip(float) {
        assert!((f64_of(v) - f).abs() < 1e-12);
    }
}

#[test]
fn dense_group_example() {
    let mut g = dense_example_group();
    let mut ray: Vec<String> = g
        .ray_intersection(1)
        .unwrap()
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    ray.sort();
    assert_eq!(ray, ["2", "e"]);
    let v = |g: &mut ExponentGroup, p: &[&str]| ExponentVector::parse(p, g.basis_mut()).unwrap();
    let (a, b) = (v(&mut g, &["0", "2"]), v(&mut g, &["0", "1"]));
    assert!(g.is_member(&a).unwrap());
    assert!(!g.is_member(&b).unwrap());
    let (one, two) = (v(&mut g, &["1", "1"]), v(&mut g, &["2", "2"]));
    assert!(g.in_positive_cone(&one).unwrap());
    assert!(!g.in_open_cone(&one).unwrap());
    // 2 lies on both rays: ⟨2, π⟩ on x and ⟨2, e⟩ on y
    let x_ray: Vec<String> = g
        .ray_intersection(0)
        .unwrap()
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    assert!(x_ray.contains(&"2".to_string()) && ray.contains(&"2".to_string()));
    assert!(g.in_open_cone(&two).unwrap());
}

#[test]
fn diagonal_lattice_meets_the_axis_trivially() {
    let g = ExponentGroup::generated(
        2,
        ConstantBasis::new(),
        vec![ExponentVector::from_integers(&[1, 1])],
    )
    .unwrap();
    // brute force: α·(1,1) has y = 0 only for α = 0
    let on_axis: Vec<i64> = (-50i64..=50).filter(|&a| (a, a).1 == 0).collect();
    assert_eq!(on_axis, [0]);
    assert_eq!(g.ray_intersection(0).unwrap(), Some(vec![]));
}

#[test]
fn dense_group_sequences() {
    let ctx = GroupContext::new(dense_example_group()).unwrap();
    let bad =
        TruncationSequence::geometric(&[true, true], &ExponentVector::from_integers(&[1, 1]), 2)
            .unwrap();
    assert!(matches!(
        ctx.check_sequence(&bad),
        Err(Error::NotInOpenCone(_))
    ));
    let good =
        TruncationSequence::geometric(&[true, true], &ExponentVector::from_integers(&[2, 2]), 0)
            .unwrap();
    ctx.check_sequence(&good).unwrap();
    let a = ExponentVector::from_integers(&[2, 2]);
    let b = ExponentVector::parse(&["pi", "e"], &mut ConstantBasis::with_builtins()).unwrap();
    let m = ctx.meet(&a, &b).unwrap();
    ctx.check_exponent(&m).unwrap();
}

/// Naturality oracle in one variable: a nonzero degree-0 map `S → T` exists
/// only if, at every sample pair `a ≤ b`, multiplication by `x^{b−a}` commutes.
fn naturality_allows(s: &BoxModule, t: &BoxModule, samples: &[ExponentValue]) -> bool {
    let inn = |m: &BoxModule, x: &ExponentValue| {
        m.contains(&ExponentVector::new(vec![x.clone()])).unwrap()
    };
    samples.iter().any(|a| {
        inn(s, a)
            && inn(t, a)
            && samples.iter().all(|b| {
                let up = b.compare(a).unwrap().is_ge();
                let down = b.compare(a).unwrap().is_le();
                (!up || !inn(t, b) || inn(s, b)) && (!down || !inn(s, b) || inn(t, b))
            })
    })
}

#[test]
fn no_map_from_the_residue_field_to_the_ring() {
    let k = BoxModule::residue_field(1);
    let r = BoxModule::ring(1);
    let samples = [ExponentValue::zero(), q(1, 2)];
    assert!(!naturality_allows(&k, &r, &samples));
    assert!(!can_map(&k, &r).unwrap());
    assert!(naturality_allows(&r, &k, &samples));
    assert!(can_map(&r, &k).unwrap());
}

#[test]
fn unit_cube_contains_its_closed_face() {
    let cube = &fixtures::quotient_by_i_prime(2).unwrap()[0];
    let arr = build_arrangement(2, [cube]).unwrap();
    let cell = arr
        .locate(&ExponentVector::new(vec![q(1, 2), q(1, 1)]))
        .unwrap();
    assert_eq!(arr.cell_label(&cell), "(0,1) x {1}");
    assert_eq!(arr.evaluate(cube, &cell).unwrap(), 1);
}

#[test]
fn minkowski_sum_with_an_open_ray() {
    let (a, b, c, d) = (q(1, 2), q(3, 2), q(0, 1), q(1, 1));
    let bx = BoxModule::new(vec![
        Interval::bounded(a.clone(), true, b.clone(), true).unwrap(),
        Interval::bounded(c.clone(), true, d.clone(), true).unwrap(),
    ]);
    let sum = minkowski_orthant(&bx, &[true, false]);
    let grid: Vec<ExponentValue> = (0..5).map(|i| q(i, 2)).collect();
    let samples = |lo: &ExponentValue, hi: &ExponentValue| -> Vec<ExponentValue> {
        (0..=100)
            .map(|i| {
                lo.clone()
                    + (hi.clone() - lo.clone()).scale(&BigRational::new(i.into(), 100.into()))
            })
            .collect()
    };
    let (xs, ys) = (samples(&a, &b), samples(&c, &d));
    for x in &grid {
        for y in &grid {
            // p ∈ B + O_σ iff some q ∈ B has p₁ − q₁ > 0 and p₂ − q₂ ≥ 0
            let x_ok = xs.iter().any(|q1| q1.lt(x).unwrap());
            let y_ok = ys.iter().any(|q2| q2.le(y).unwrap());
            let p = ExponentVector::new(vec![x.clone(), y.clone()]);
            assert_eq!(sum.contains(&p).unwrap(), x_ok && y_ok, "at {p}");
        }
    }
    assert_eq!(sum.to_string(), "(1/2,inf) x [0,inf)");
}

#[test]
fn truncated_f_arrangement_count() {
    let pts: Vec<ExponentVector> = [q(1, 1), q(1, 2), q(1, 4)]
        .into_iter()
        .map(|v| ExponentVector::new(vec![v]))
        .collect();
    let c = truncated_resolution(&pts).unwrap();
    let mut arr = c.arrangement().unwrap();
    arr = arr.refine(&[vec![ExponentValue::zero()]]).unwrap();
    // critical values {0, 1/4, 1/2, 1}: 2·4 + 1 pieces
    assert_eq!(arr.critical(0).len(), 4);
    assert_eq!(arr.cell_count(), 2 * 4 + 1);
}

#[test]
fn koszul_on_one_variable() {
    let h = homology(&open_koszul_one()).unwrap();
    let origin = h.arrangement.locate(&ExponentVector::zeros(1)).unwrap();
    for cell in h.arrangement.cells() {
        assert_eq!(h.get(&cell, 0), (cell == origin) as usize);
        assert_eq!(h.get(&cell, 1), 0);
    }
    // hand evaluation: R₁/x^ε R₁ is k exactly on [0, ε)
    let eps = q(2, 3);
    let c = koszul_one(&eps);
    let h = homology(&c).unwrap();
    for x in [q(-1, 1), q(0, 1), q(1, 3), q(2, 3), q(1, 1)] {
        let inside = !x.lt(&ExponentValue::zero()).unwrap() && x.lt(&eps).unwrap();
        let cell = h.arrangement.locate(&ExponentVector::new(vec![x])).unwrap();
        assert_eq!(h.get(&cell, 0), inside as usize);
    }
}

#[test]
fn product_of_two_open_rays() {
    let t = tensor(&open_koszul_one(), &open_koszul_one());
    assert_eq!((t.rank(0), t.rank(1), t.rank(2)), (1, 2, 1));
    let labels: Vec<String> = (0..=2)
        .map(|d| {
            t.term(d)
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(" + ")
        })
        .collect();
    assert_eq!(
        labels,
        [
            "[0,inf) x [0,inf)",
            "[0,inf) x (0,inf) + (0,inf) x [0,inf)",
            "(0,inf) x (0,inf)"
        ]
    );
    assert_eq!(t.terms().len(), 3);
    assert_eq!(t.term(1), open_koszul(2).term(1));
}

#[test]
fn total_tensor_of_resolutions_is_a_complex() {
    let seq =
        TruncationSequence::geometric(&[true], &ExponentVector::from_integers(&[1]), 2).unwrap();
    let f = orthant_resolution(&[true], &seq).unwrap().complex;
    let tot = tensor_total(&f, &koszul_one(&q(1, 1)));
    assert!(tot.complex.verify().unwrap().is_none());
    assert_eq!(tot.complex.length(), f.length() + 1);
    // a flipped sign is caught
    let mut bad = tot.complex.clone();
    let mut es = bad.differential(2).to_vec();
    es[0].scalar = -es[0].scalar.clone();
    bad.set_differential(2, es);
    assert!(bad.verify().unwrap().is_some());
}

#[test]
fn power_quotient_homology_against_the_pointwise_oracle() {
    let eps = ExponentVector::new(vec![q(1, 2), q(1, 3)]);
    let c = ordinary_koszul(&eps).unwrap();
    let h = homology(&c).unwrap();
    for x in [q(-1, 4), q(0, 1), q(1, 4), q(1, 2), q(3, 4)] {
        for y in [q(0, 1), q(1, 6), q(1, 3), q(1, 1)] {
            let p = ExponentVector::new(vec![x.clone(), y.clone()]);
            let direct = homology_at(&c, &p).unwrap();
            let cell = h.arrangement.locate(&p).unwrap();
            let h0 = direct.iter().find(|(d, _)| *d == 0).map_or(0, |e| e.1);
            assert_eq!(h.get(&cell, 0), h0);
            assert!(direct.iter().all(|&(d, v)| d == 0 || v == 0));
            let inside = !x.lt(&ExponentValue::zero()).unwrap()
                && x.lt(&eps[0]).unwrap()
                && y.lt(&eps[1]).unwrap();
            assert_eq!(h0, inside as usize);
        }
    }
}

#[test]
fn tor_values() {
    let ones = |n: usize| ExponentVector::from_integers(&vec![1; n]);
    for n in 1..=3 {
        assert_eq!(tor_of_power_quotient(&ones(n), n as i64).unwrap(), 1);
    }
    // zero differentials: the count is the number of i-subsets
    let subsets = (0u32..8).filter(|m| m.count_ones() == 1).count();
    assert_eq!(tor_of_power_quotient(&ones(3), 1).unwrap(), subsets);
}

#[test]
fn open_koszul_two_terms() {
    let c = open_koszul(2);
    assert_eq!(c.term(0), [BoxModule::ring(2)]);
    assert_eq!(c.rank(1), 2);
    assert_eq!(c.term(2)[0].to_string(), "(0,inf) x (0,inf)");
}

#[test]
fn orthant_resolution_in_one_variable() {
    let pts = [q(1, 1), q(1, 2), q(1, 4)].map(|v| ExponentVector::new(vec![v]));
    let seq = TruncationSequence::new(vec![true], pts.to_vec()).unwrap();
    let c = orthant_resolution(&[true], &seq).unwrap().complex;
    let h = homology(&c).unwrap();
    for x in [
        q(0, 1),
        q(1, 8),
        q(1, 4),
        q(3, 8),
        q(1, 2),
        q(3, 4),
        q(1, 1),
        q(2, 1),
    ] {
        let p = ExponentVector::new(vec![x.clone()]);
        let cell = h.arrangement.locate(&p).unwrap();
        assert_eq!(h.get(&cell, 0), (!x.lt(&q(1, 4)).unwrap()) as usize);
        assert_eq!(h.get(&cell, 1), 0);
    }
    // stabilization at 3/4 ∈ (1/2, 1) for every K ≥ 1
    for k in 1..=2 {
        let c = orthant_resolution(&[true], &seq.truncate(k).unwrap())
            .unwrap()
            .complex;
        let d = homology_at(&c, &ExponentVector::new(vec![q(3, 4)])).unwrap();
        assert_eq!(d.iter().find(|e| e.0 == 0).map_or(0, |e| e.1), 1);
    }
}

/// Classes of lattice points `(a, b)`, `a + b = t`, under `(a, b) ~ (a + s, b − s)`.
fn lattice_classes(t: i64, s: i64) -> usize {
    let mut seen = std::collections::BTreeSet::new();
    for a in 0..=t {
        seen.insert(a % s);
    }
    seen.len()
}

#[test]
fn discretized_total_koszul_counts() {
    let eps = ExponentVector::from_integers(&[1]);
    let t = total_koszul_truncated(&[BoxModule::ring(1)], &eps).unwrap();
    let d = t.discretize(2, 4).unwrap();
    let h = d.homology(FieldConfig::Rational).unwrap();
    assert!(h.positive_failures().is_empty());
    for c in 0..=d.window_top() {
        assert_eq!(h.get(&[c], 0), lattice_classes(c, 4), "t = {c}");
    }
    // M = k: y acts by zero, leaving R/⟨x^ε⟩
    let t = total_koszul_truncated(&[BoxModule::residue_field(1)], &eps).unwrap();
    assert_eq!((t.summand_count(0), t.summand_count(1)), (1, 1));
    let h = t
        .discretize(2, 4)
        .unwrap()
        .homology(FieldConfig::Rational)
        .unwrap();
    for c in 0..=16 {
        assert_eq!(h.get(&[c], 0), (c < 4) as usize);
    }
    // unit cube in two variables: one summand per coordinate in degree 1
    let cube = BoxModule::new(vec![
        Interval::bounded(q(0, 1), true, q(1, 1), true).unwrap();
        2
    ]);
    let t = total_koszul_truncated(&[cube], &ExponentVector::from_integers(&[1, 1])).unwrap();
    assert_eq!(t.summand_count(1), binomial(2, 1));
}

#[test]
fn support_escape_examples() {
    let seq = |k| {
        TruncationSequence::geometric(&[true], &ExponentVector::from_integers(&[1]), k).unwrap()
    };
    let one = BigRational::from_integer(1.into());
    let cert = support_escape(5, &one, &seq(5)).unwrap();
    assert!(cert.forced.contains(&5));
    let two = BigRational::from_integer(2.into());
    let cert = support_escape(1, &two, &seq(1)).unwrap();
    // by hand: c₀₀ = 0, c₀₁ = c₁₁ = 2
    assert!(cert.support.contains(&1));
    assert!(cert.support.is_subset(&[0, 1].into()));
}

#[test]
fn adversarial_differential_is_detected() {
    let seq =
        TruncationSequence::geometric(&[true], &ExponentVector::from_integers(&[1]), 4).unwrap();
    let flip = |s: &TruncationSequence| -> realexp::Result<BoxComplex> {
        let mut c = augmented_resolution(s)?;
        let mut es = c.differential(1).to_vec();
        let last = es.len() - 1;
        es[last].scalar = -es[last].scalar.clone();
        c.set_differential(1, es);
        Ok(c)
    };
    let r = ext2_certificate_with(4, &seq, FieldConfig::Rational, &flip);
    assert!(matches!(r, Err(Error::EscapeViolated { .. })), "{r:?}");
}

#[test]
fn dual_koszul_ranks_are_binomial() {
    for n in 2..=4 {
        let ranks = dual_koszul_collapse(n, &ExponentValue::from_integer(1)).unwrap();
        let oracle: Vec<usize> = (0..n).map(|q| binomial(n - 1, q)).collect();
        assert_eq!(ranks, oracle);
    }
    assert_eq!(
        dual_koszul_collapse(3, &ExponentValue::from_integer(1)).unwrap(),
        [1, 2, 1]
    );
}

#[test]
fn ext_certificate_for_the_plane() {
    let seq =
        TruncationSequence::geometric(&[true], &ExponentVector::from_integers(&[1]), 10).unwrap();
    let cert = ext_n_plus_1(
        2,
        10,
        &seq,
        &ExponentValue::from_integer(1),
        FieldConfig::Rational,
    )
    .unwrap();
    assert_eq!(cert.status(), "verified-up-to-10");
    assert_eq!(cert.table[3], [(2, 1, 1)]);
}

#[test]
fn projective_resolutions_of_fixtures() {
    let r = projective_resolution(1, &fixtures::residue_field(1), 4, None).unwrap();
    assert_eq!(r.length(), 2);
    assert!(r.is_exact_on_stabilized());
    let r = projective_resolution(2, &fixtures::quotient_by_i_prime(2).unwrap(), 3, None).unwrap();
    assert!(r.length() <= 3);
    assert!(r.complex.verify().unwrap().is_none());
    assert!(r.is_exact_on_stabilized());
}
