use serde_json::json;

use qmk_core::experiment::{run_convergence, ConvergenceConfig, Family};
use qmk_core::repr::CotransitionMethod;

use crate::args::{ConvergeArgs, FamilyArg, MethodArg};
use crate::error::CliError;
use crate::io::{num, parse_list, Output, Table};

pub fn run(a: &ConvergeArgs, seed: u64) -> Result<Output, CliError> {
    let cfg = ConvergenceConfig {
        family: match a.family {
            FamilyArg::Trivial => Family::Trivial,
            FamilyArg::Block => Family::BlockStaircase,
            FamilyArg::Tensor => Family::TensorPower,
        },
        sizes: parse_list(&a.sizes, "size")?,
        samples: a.samples,
        kmax: a.kmax,
        seed,
        method: match a.method {
            MethodArg::Auto => CotransitionMethod::Auto,
            MethodArg::Exact => CotransitionMethod::Exact,
            MethodArg::Lift => CotransitionMethod::ContinuousLift,
        },
        batches: a.batches,
        z: a.z,
        ..Default::default()
    };
    let r = run_convergence(&cfg)?;
    let mut table = Table::new(&[
        "n", "level", "k", "m_hat", "d_hat", "d_pred", "error", "sigma",
    ]);
    let mut levels = Vec::new();
    for l in &r.levels {
        for k in 0..=a.kmax {
            table.push(vec![
                l.n.to_string(),
                l.level.to_string(),
                k.to_string(),
                num(l.m_hat[k]),
                num(l.d_hat[k]),
                num(l.d_pred[k]),
                num(l.error[k]),
                num(l.sigma[k]),
            ]);
        }
        levels.push(json!({
            "n": l.n, "level": l.level,
            "m_hat": l.m_hat, "d_hat": l.d_hat, "d_pred": l.d_pred,
            "error": l.error, "sigma": l.sigma,
            "exact": l.exact.as_ref().map(|(m, d)| json!({ "m": m, "d": d })),
        }));
    }
    let mut violations = Vec::new();
    for k in 1..=a.kmax {
        if !r.decreasing[k] {
            violations.push(format!("k = {k}: error is not strictly decreasing in N"));
        }
        if !r.final_within[k] {
            let l = &r.levels[r.levels.len() - 1];
            violations.push(format!(
                "k = {k}: final error {:.3e} exceeds {} sigma = {:.3e}",
                l.error[k],
                a.z,
                a.z * l.sigma[k]
            ));
        }
    }
    Ok(Output {
        json: json!({
            "family": format!("{:?}", r.family),
            "seed": seed,
            "samples": a.samples,
            "levels": levels,
            "decreasing": r.decreasing,
            "final_within": r.final_within,
        }),
        table,
        violations,
    })
}
