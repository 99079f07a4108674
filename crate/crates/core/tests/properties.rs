use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

use qmk_core::asymptotics::{dmk_d_to_m, dmk_m_to_d};
use qmk_core::diagram::{p_k_rectangular, power_sum_difference, RectangularDiagram};
use qmk_core::gallery::{
    plancherel_psi, plancherel_w, semicircle, semicircle_value, trivial_pair, vkls_curve,
};
use qmk_core::grid::{DensityClass, UniformGrid};
use qmk_core::measure::{counting_measure, difference_measure, moment};
use qmk_core::rational::{rat, to_f64};
use qmk_core::repr::{
    branching_law, finite_d_moment, level_rng, projection_chain, tensor_product_law,
    weyl_dimension, CotransitionMethod, SignatureLaw, DEFAULT_DEGREE_CAP, DEFAULT_ENUMERATION_CAP,
};
use qmk_core::series::{Center, TruncatedSeries};
use qmk_core::signature::{InterlacingPair, Signature};
use qmk_core::transform::{
    dequantize, membership_checks, quantize, standard_probes, stieltjes_invert, DiagramR,
    InversionConfig, Member, MuR, PsiR, RFunction,
};
use qmk_core::Rational;

fn signature(max_len: usize) -> impl Strategy<Value = Signature> {
    (1..=max_len)
        .prop_flat_map(|n| prop::collection::vec(-6i64..12, n))
        .prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Signature::new(v).unwrap()
        })
}

fn interlacing_pair() -> impl Strategy<Value = InterlacingPair> {
    signature(7)
        .prop_filter("needs N >= 2", |l| l.len() >= 2)
        .prop_flat_map(|l| {
            let p = l.parts().to_vec();
            let lower: Vec<_> = (0..p.len() - 1).map(|i| p[i + 1]..=p[i]).collect();
            (Just(l), lower)
        })
        .prop_map(|(l, mu)| InterlacingPair::new(l, Signature::new(mu).unwrap()).unwrap())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corner_moments_are_power_sum_differences(pair in interlacing_pair(), k in 0u32..=8) {
        let d = RectangularDiagram::from_pair(&pair);
        let p = p_k_rectangular(&d, k);
        prop_assert_eq!(&p, &power_sum_difference(&d, k));
        prop_assert_eq!(&p, &moment(&difference_measure(&pair), k));
    }

    #[test]
    fn measures_have_unit_mass(pair in interlacing_pair()) {
        prop_assert!(counting_measure(pair.upper()).is_probability());
        prop_assert!(difference_measure(&pair).total_mass().is_one());
    }

    #[test]
    fn sampled_diagrams_are_continual(pair in interlacing_pair()) {
        let d = RectangularDiagram::from_pair(&pair);
        let (a, b) = (to_f64(&d.x()[0]), to_f64(&d.x()[d.x().len() - 1]));
        let grid = UniformGrid::new(a - 1.0, b + 1.0, 400).unwrap();
        let w = d.sample(grid).unwrap();
        let z0 = to_f64(&d.z0());
        let h = grid.spacing();
        for p in w.values().windows(2) {
            prop_assert!((p[1] - p[0]).abs() <= h * (1.0 + 1e-9));
        }
        for (t, v) in grid.points().iter().zip(w.values()) {
            if *t <= a || *t >= b {
                prop_assert!((v - (t - z0).abs()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn exp_log_and_reversion(c in prop::collection::vec(rational(), 1..7)) {
        let order = c.len();
        let mut tail = vec![Rational::zero()];
        tail.extend(c.iter().cloned());
        let s = TruncatedSeries::new(Center::Zero, tail.clone()).unwrap();
        let one_plus = s.add_constant(&Rational::one());
        prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
        let mut r = tail;
        r[1] = Rational::one();
        let s = TruncatedSeries::new(Center::Zero, r).unwrap().truncate(order);
        prop_assert_eq!(s.revert().unwrap().revert().unwrap(), s);
    }

    #[test]
    fn relation_maps_are_inverse(tail in prop::collection::vec(rational(), 1..7)) {
        let mut m = vec![Rational::one()];
        m.extend(tail);
        let d = dmk_m_to_d(&m).unwrap();
        prop_assert_eq!(dmk_d_to_m(&d).unwrap(), m.clone());
        prop_assert_eq!(dmk_m_to_d(&dmk_d_to_m(&m).unwrap()).unwrap(), m);
    }

    #[test]
    fn branching_is_a_probability_law(l in signature(4).prop_filter("N >= 2", |l| l.len() >= 2)) {
        let law = branching_law(&l, DEFAULT_ENUMERATION_CAP).unwrap();
        let total: Rational = law.entries().iter().map(|(_, p)| p.clone()).sum();
        prop_assert!(total.is_one());
        let dims = law.entries().iter().fold(BigInt::zero(), |acc, (mu, _)| acc + weyl_dimension(mu));
        prop_assert_eq!(dims, weyl_dimension(&l));
    }

    #[test]
    fn finite_d_moment_of_a_point_law(l in signature(4).prop_filter("N >= 2", |l| l.len() >= 2), k in 0u32..4) {
        let law = branching_law(&l, DEFAULT_ENUMERATION_CAP).unwrap();
        let direct = law.entries().iter().fold(Rational::zero(), |acc, (mu, p)| {
            let pair = InterlacingPair::new(l.clone(), mu.clone()).unwrap();
            acc + p * moment(&difference_measure(&pair), k)
        });
        let via = finite_d_moment(&SignatureLaw::delta(l.clone()), k, DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert_eq!(via, direct);
    }

    #[test]
    fn schwarz_symmetry(re in -6.0f64..6.0, im in 0.01f64..3.0) {
        let u = Complex64::new(re, im);
        let psi = plancherel_psi(1.5, 600).unwrap();
        let w = plancherel_w(1.5, 600).unwrap();
        let mu = semicircle(600).unwrap();
        let fs: [&dyn RFunction; 3] = [&PsiR(&psi), &DiagramR::new(&w), &MuR(&mu)];
        for f in fs {
            let d = (f.eval(u.conj()) - f.eval(u).conj()).norm();
            prop_assert!(d <= 1e-13 * f.eval(u).norm().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tensor_law_accounts_for_every_dimension(
        raw in prop::collection::vec(prop::collection::vec(0i64..3, 2), 1..4)
    ) {
        let factors: Vec<Signature> = raw
            .into_iter()
            .map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                Signature::new(v).unwrap()
            })
            .collect();
        let law = tensor_product_law(&factors, DEFAULT_DEGREE_CAP).unwrap();
        let total: BigInt = factors.iter().map(weyl_dimension).product();
        let total = Rational::from_integer(total);
        let mult: Rational = law
            .entries()
            .iter()
            .map(|(k, p)| p * &total / Rational::from_integer(weyl_dimension(k)))
            .sum::<Rational>();
        let weighted: Rational = law
            .entries()
            .iter()
            .map(|(k, p)| {
                let m = p * &total / Rational::from_integer(weyl_dimension(k));
                prop_assert!(m.is_integer());
                Ok(m * Rational::from_integer(weyl_dimension(k)))
            })
            .sum::<Result<Rational, TestCaseError>>()?;
        prop_assert!(mult >= Rational::one());
        prop_assert_eq!(weighted, total);
    }
}

#[test]
fn seeded_chains_are_reproducible() {
    let l = Signature::new(vec![6, 6, 6, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    for method in [
        CotransitionMethod::Exact,
        CotransitionMethod::ContinuousLift,
    ] {
        let a = projection_chain(&l, 3, method, &mut level_rng(7, 1, 2)).unwrap();
        let b = projection_chain(&l, 3, method, &mut level_rng(7, 1, 2)).unwrap();
        assert_eq!(a, b);
        let c = projection_chain(&l, 3, method, &mut level_rng(7, 1, 3)).unwrap();
        assert!(a
            .windows(2)
            .all(|p| InterlacingPair::new(p[0].clone(), p[1].clone()).is_ok()));
        assert_eq!(c.len(), a.len());
    }
}

#[test]
fn staircase_variance_shrinks() {
    let mut vars = Vec::new();
    for n in [8usize, 16, 32] {
        let k = (n / 2) as i64;
        let l = Signature::new((0..n as i64).map(|i| if i < k { k } else { 0 }).collect()).unwrap();
        let level = n / 2;
        let samples = 400;
        let stats: Vec<f64> = (0..samples)
            .map(|s| {
                let chain = projection_chain(
                    &l,
                    level - 1,
                    CotransitionMethod::Auto,
                    &mut level_rng(11, n as u64, s),
                )
                .unwrap();
                let pair = InterlacingPair::new(
                    chain[chain.len() - 2].clone(),
                    chain[chain.len() - 1].clone(),
                )
                .unwrap();
                to_f64(&moment(&difference_measure(&pair), 2))
            })
            .collect();
        let mean = stats.iter().sum::<f64>() / samples as f64;
        vars.push(
            stats.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (samples - 1) as f64,
        );
    }
    assert!(vars.windows(2).all(|p| p[1] < p[0]), "{vars:?}");
}

#[test]
fn gallery_objects_are_members_of_their_classes() {
    let (u, t) = trivial_pair(1000).unwrap();
    let mut densities = vec![u, semicircle(2000).unwrap()];
    let mut diagrams = vec![t, vkls_curve(2000).unwrap()];
    for g in [0.5, 1.0, 1.5, 2.5] {
        densities.push(plancherel_psi(g, 2000).unwrap());
        diagrams.push(plancherel_w(g, 2000).unwrap());
    }
    for d in &densities {
        let rep = membership_checks(Member::Density(d));
        assert!(rep.all_required_passed(), "{rep:?}");
    }
    for w in &diagrams {
        let rep = membership_checks(Member::Diagram(w));
        assert!(rep.all_required_passed(), "{rep:?}");
    }
}

#[test]
fn quantization_preserves_mass() {
    let cfg = InversionConfig::default();
    for g in [0.5, 1.0, 2.5] {
        let psi = plancherel_psi(g, 2000).unwrap();
        let mu = quantize(&psi, &cfg).unwrap().value;
        assert!((mu.mass() - 1.0).abs() < 1e-6);
        let back = dequantize(&mu, &cfg).unwrap().value;
        assert!((back.mass() - 1.0).abs() < 1e-6);
        assert_eq!(back.class(), DensityClass::Bounded);
    }
}

#[test]
fn semicircle_from_its_closed_form_transform() {
    let g = |u: Complex64| {
        let s = (u - 2.0).sqrt() * (u + 2.0).sqrt();
        (u - s) / 2.0
    };
    let rec = stieltjes_invert(g, -2.0, 2.0, 2000, &InversionConfig::default()).unwrap();
    let d = rec.value;
    let band = 0.02 * 4.0;
    let err = d
        .grid()
        .points()
        .iter()
        .zip(d.values())
        .filter(|(t, _)| t.abs() < 2.0 - band)
        .map(|(t, v)| (v - semicircle_value(*t)).abs())
        .fold(0.0, f64::max);
    assert!(err <= 5e-3, "{err}");
    let probes = standard_probes(-2.0, 2.0);
    let mu = semicircle(2000).unwrap();
    for p in probes {
        assert!((MuR(&mu).eval(p.value()) - g(p.value())).norm() < 1e-5);
    }
}
