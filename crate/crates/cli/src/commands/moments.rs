use serde::Deserialize;
use serde_json::json;

use qmk_core::asymptotics::{
    d_moments, d_moments_contour, dmk_m_to_d, m_moments, m_moments_contour, AsymptoticProfile,
    ProfileKind,
};
use qmk_core::rational::{format as fmt_rat, parse as parse_rat};
use qmk_core::series::Coeff;

use crate::args::MomentsArgs;
use crate::error::{usage, CliError};
use crate::io::{num, read_text, Output, Table};

/// Agreement required between floating-point routes.
pub const FLOAT_TOL: f64 = 1e-10;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    c: Vec<String>,
    #[serde(default)]
    kind: KindFile,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
enum KindFile {
    #[default]
    Polynomial,
    Truncated,
}

fn source(a: &MomentsArgs) -> Result<(Vec<String>, ProfileKind), CliError> {
    let flag_kind = if a.truncated {
        ProfileKind::Truncated
    } else {
        ProfileKind::Polynomial
    };
    if let Some(p) = &a.profile {
        let f: ProfileFile = serde_json::from_str(&read_text(&p.to_string_lossy())?)?;
        let kind = match f.kind {
            KindFile::Truncated => ProfileKind::Truncated,
            KindFile::Polynomial => flag_kind,
        };
        return Ok((f.c, kind));
    }
    let c = a
        .coeffs
        .as_deref()
        .unwrap_or("")
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    Ok((c, flag_kind))
}

struct Routes<C> {
    m_der: Vec<C>,
    m_con: Vec<C>,
    d_der: Vec<C>,
    d_con: Vec<C>,
    d_rel: Vec<C>,
}

fn routes<C: Coeff>(p: &AsymptoticProfile<C>, kmax: usize) -> Result<Routes<C>, CliError> {
    let m_der = m_moments(p, kmax)?;
    Ok(Routes {
        m_con: m_moments_contour(p, kmax)?,
        d_der: d_moments(p, kmax)?,
        d_con: d_moments_contour(p, kmax)?,
        d_rel: dmk_m_to_d(&m_der)?,
        m_der,
    })
}

fn emit<C: Coeff>(r: &Routes<C>, show: impl Fn(&C) -> String, exact: bool) -> Output {
    let mut table = Table::new(&[
        "k",
        "m_derivative",
        "m_contour",
        "d_derivative",
        "d_contour",
        "d_relation",
    ]);
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let agree = |x: &C, y: &C| {
        if exact {
            x == y
        } else {
            x.close_to(y, FLOAT_TOL)
        }
    };
    for k in 0..r.m_der.len() {
        let cells = [
            &r.m_der[k],
            &r.m_con[k],
            &r.d_der[k],
            &r.d_con[k],
            &r.d_rel[k],
        ];
        let mut row = vec![k.to_string()];
        row.extend(cells.iter().map(|c| show(c)));
        if !agree(cells[0], cells[1]) {
            violations.push(format!(
                "k = {k}: m routes disagree ({} vs {})",
                row[1], row[2]
            ));
        }
        if !agree(cells[2], cells[3]) || !agree(cells[2], cells[4]) {
            violations.push(format!(
                "k = {k}: d routes disagree ({}, {}, {})",
                row[3], row[4], row[5]
            ));
        }
        rows.push(json!({
            "k": k,
            "m_derivative": row[1], "m_contour": row[2],
            "d_derivative": row[3], "d_contour": row[4], "d_relation": row[5],
        }));
        table.push(row);
    }
    Output {
        json: json!({ "exact": exact, "rows": rows, "agree": violations.is_empty() }),
        table,
        violations,
    }
}

pub fn run(a: &MomentsArgs) -> Result<Output, CliError> {
    let (c, kind) = source(a)?;
    if a.float {
        let c = c
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| usage(format!("bad coefficient '{s}'")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let r = routes(&AsymptoticProfile::new(c, kind), a.kmax)?;
        Ok(emit(&r, |x| num(*x), false))
    } else {
        let c = c
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()?;
        let r = routes(&AsymptoticProfile::new(c, kind), a.kmax)?;
        Ok(emit(&r, fmt_rat, true))
    }
}
