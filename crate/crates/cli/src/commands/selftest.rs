use std::time::Instant;

use num_traits::One;
use serde_json::json;

use qmk_core::asymptotics::{
    d_moments, d_moments_contour, dmk_m_to_d, lagrange_check, m_moments, m_moments_contour,
    ProfileKind, RationalProfile,
};
use qmk_core::diagram::{p_k_rectangular, power_sum_difference, RectangularDiagram};
use qmk_core::experiment::{run_convergence, ConvergenceConfig};
use qmk_core::gallery::{
    plancherel_psi, plancherel_support, plancherel_w, semicircle, trivial_pair, vkls_value,
    CenteredPlancherel,
};
use qmk_core::rational::{int, rat, to_f64};
use qmk_core::repr::{
    apply_power_sum_operator, branching_law, cotransition_sample, eigenvalue, level_rng,
    schur_polynomial, weyl_dimension, DEFAULT_ENUMERATION_CAP,
};
use qmk_core::signature::{interlacing_signatures, InterlacingPair, Signature};
use qmk_core::transform::{
    classical_defect, mk_mu_to_w, probe_defect, qmk_psi_to_w, rescaled_pair, standard_probes,
    DiagramR, InversionConfig, PsiR,
};

use qmk_core::Rational;

use crate::args::SelftestArgs;
use crate::error::CliError;
use crate::io::{Output, Table};

type Check = Result<String, String>;
type Named = (&'static str, Box<dyn Fn() -> Check>);

fn e(x: impl std::fmt::Display) -> String {
    x.to_string()
}

fn sci(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn profiles() -> Vec<RationalProfile> {
    vec![
        RationalProfile::trivial(),
        RationalProfile::constant(int(1)),
        RationalProfile::from_hprime_coeffs(
            &[rat(1, 2), int(-1), rat(3, 4)],
            ProfileKind::Polynomial,
        ),
        RationalProfile::from_hprime_coeffs(
            &[int(2), int(0), int(0), rat(-1, 3)],
            ProfileKind::Polynomial,
        ),
    ]
}

fn trivial_chain() -> Check {
    let p = RationalProfile::trivial();
    let m = m_moments(&p, 10).map_err(e)?;
    let d = d_moments(&p, 10).map_err(e)?;
    let ok = m
        .iter()
        .enumerate()
        .all(|(k, v)| *v == rat(1, k as i64 + 1))
        && d.iter().all(|v| v.is_one());
    ok.then(|| "m_k = 1/(k+1), d_k = 1".into())
        .ok_or_else(|| "trivial moments wrong".into())
}

fn moment_routes() -> Check {
    for (i, p) in profiles().iter().enumerate() {
        let m = m_moments(p, 6).map_err(e)?;
        let d = d_moments(p, 6).map_err(e)?;
        if m != m_moments_contour(p, 6).map_err(e)? || d != d_moments_contour(p, 6).map_err(e)? {
            return Err(format!("profile {i}: routes disagree"));
        }
        if dmk_m_to_d(&m).map_err(e)? != d {
            return Err(format!("profile {i}: relation fails"));
        }
        if !lagrange_check(p, 6).map_err(e)? {
            return Err(format!("profile {i}: reversion identity fails"));
        }
    }
    Ok(format!("{} profiles agree exactly", profiles().len()))
}

fn eigenfunctions() -> Check {
    for parts in [
        vec![0, 0],
        vec![1, 0],
        vec![2, 1],
        vec![2, 2],
        vec![2, 1, 0],
        vec![1, 1, 0],
    ] {
        let l = Signature::new(parts).map_err(e)?;
        let s = schur_polynomial(&l);
        for k in 0..=3 {
            if apply_power_sum_operator(l.len(), k, &s).map_err(e)? != s.scale(&eigenvalue(&l, k)) {
                return Err(format!("lambda = {l}, k = {k}"));
            }
        }
    }
    Ok("exact".into())
}

fn branching(seed: u64) -> Check {
    for parts in [vec![2, 0], vec![3, 1, 0], vec![2, 2, 1, 0]] {
        let l = Signature::new(parts).map_err(e)?;
        let law = branching_law(&l, DEFAULT_ENUMERATION_CAP).map_err(e)?;
        let dims: Rational = law
            .entries()
            .iter()
            .map(|(mu, _)| Rational::from_integer(weyl_dimension(mu)))
            .sum();
        if dims != Rational::from_integer(weyl_dimension(&l)) {
            return Err(format!("dimension sum fails at {l}"));
        }
    }
    let l = Signature::new(vec![3, 1, 0]).map_err(e)?;
    let law = branching_law(&l, DEFAULT_ENUMERATION_CAP).map_err(e)?;
    let mus = interlacing_signatures(&l);
    let draws = 20_000u64;
    let mut counts = vec![0u64; mus.len()];
    for s in 0..draws {
        let mu = cotransition_sample(&l, &mut level_rng(seed, 0, s)).map_err(e)?;
        let i = mus
            .iter()
            .position(|m| *m == mu)
            .ok_or("sample outside the law")?;
        counts[i] += 1;
    }
    let chi2: f64 = mus
        .iter()
        .zip(&counts)
        .map(|(mu, &c)| {
            let ex = to_f64(&law.prob(mu)) * draws as f64;
            (c as f64 - ex).powi(2) / ex
        })
        .sum();
    let df = (mus.len() - 1) as f64;
    let z = (chi2 - df) / (2.0 * df).sqrt();
    if z <= 3.0 {
        Ok(format!("chi-square z = {z:.2}"))
    } else {
        Err(format!("chi-square z = {z:.2} > 3"))
    }
}

fn corner_moments() -> Check {
    let pair = InterlacingPair::new(
        Signature::new(vec![5, 3, 3, -1]).map_err(e)?,
        Signature::new(vec![4, 3, 0]).map_err(e)?,
    )
    .map_err(e)?;
    let d = RectangularDiagram::from_pair(&pair);
    for k in 0..=8 {
        if p_k_rectangular(&d, k) != power_sum_difference(&d, k) {
            return Err(format!("k = {k}"));
        }
    }
    Ok("exact through k = 8".into())
}

fn plancherel_pair() -> Check {
    let g = 1.0;
    let psi = plancherel_psi(g, 40_000).map_err(e)?;
    let w = plancherel_w(g, 40_000).map_err(e)?;
    let (a, b) = plancherel_support(g);
    let d = probe_defect(&PsiR(&psi), &DiagramR::new(&w), &standard_probes(a, b));
    if d <= 1e-5 {
        Ok(format!("|R_psi - R_w| = {d:.1e}"))
    } else {
        Err(format!("|R_psi - R_w| = {d:.1e} > 1e-5"))
    }
}

fn classical_and_trivial() -> Check {
    let cfg = InversionConfig {
        intervals: Some(2000),
        ..Default::default()
    };
    let w = mk_mu_to_w(&semicircle(2000).map_err(e)?, &cfg)
        .map_err(e)?
        .value;
    let err = w
        .grid()
        .points()
        .iter()
        .zip(w.values())
        .filter(|(t, _)| t.abs() < 1.8)
        .map(|(t, v)| (v - vkls_value(*t)).abs())
        .fold(0.0, f64::max);
    if err > 1e-2 {
        return Err(format!("semicircle to VKLS off by {err:.1e}"));
    }
    let (psi, t) = trivial_pair(2000).map_err(e)?;
    let rw = qmk_psi_to_w(&psi, &cfg).map_err(e)?.value;
    let terr = rw
        .values()
        .iter()
        .zip(t.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    if terr > 5e-3 {
        return Err(format!("uniform to |x-1| off by {terr:.1e}"));
    }
    Ok(format!("VKLS {err:.1e}, trivial {terr:.1e}"))
}

fn semiclassical() -> Check {
    let f = CenteredPlancherel { intervals: 2000 };
    let probes = standard_probes(-2.0, 2.0);
    let mut ds = Vec::new();
    for eps in [1.0, 0.5, 0.25] {
        let (mu, w) = rescaled_pair(&f, eps).map_err(e)?;
        ds.push(classical_defect(&mu, &w, &probes));
    }
    let s = sci(&ds);
    if ds.windows(2).all(|p| p[1] < p[0]) {
        Ok(s)
    } else {
        Err(format!("not decreasing: {s}"))
    }
}

fn convergence(seed: u64) -> Check {
    let r = run_convergence(&ConvergenceConfig {
        seed,
        ..Default::default()
    })
    .map_err(e)?;
    let last = &r.levels[r.levels.len() - 1];
    let s = format!(
        "final errors {}, sigma {}",
        sci(&last.error[1..]),
        sci(&last.sigma[1..])
    );
    if r.passed() {
        Ok(s)
    } else {
        Err(s)
    }
}

pub fn run(a: &SelftestArgs, seed: u64) -> Result<Output, CliError> {
    let mut checks: Vec<Named> = vec![
        ("trivial_chain", Box::new(trivial_chain)),
        ("moment_routes", Box::new(moment_routes)),
        ("eigenfunctions", Box::new(eigenfunctions)),
        ("branching", Box::new(move || branching(seed))),
        ("corner_moments", Box::new(corner_moments)),
        ("plancherel_pair", Box::new(plancherel_pair)),
        ("classical_and_trivial", Box::new(classical_and_trivial)),
        ("semiclassical", Box::new(semiclassical)),
    ];
    if a.full {
        checks.push(("convergence", Box::new(move || convergence(seed))));
    }
    let mut table = Table::new(&["check", "status", "detail"]);
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for (name, f) in &checks {
        let t = Instant::now();
        let r = f();
        log::info!("{name} took {:.2?}", t.elapsed());
        let (status, detail) = match r {
            Ok(d) => ("pass", d),
            Err(d) => {
                violations.push(format!("{name}: {d}"));
                ("fail", d)
            }
        };
        rows.push(json!({ "check": name, "status": status, "detail": detail }));
        table.push(vec![name.to_string(), status.to_string(), detail]);
    }
    Ok(Output {
        json: json!({ "checks": rows, "passed": violations.is_empty() }),
        table,
        violations,
    })
}
