use num_traits::One;
use serde::Deserialize;
use serde_json::json;

use qmk_core::rational::{format as fmt_rat, parse as parse_rat};
use qmk_core::repr::{
    finite_d_moment, finite_m_moment, tensor_product_law, SignatureLaw, DEFAULT_DEGREE_CAP,
    DEFAULT_ENUMERATION_CAP,
};
use qmk_core::signature::Signature;

use crate::args::FiniteArgs;
use crate::error::{usage, CliError};
use crate::io::{parse_list, read_text, Output, Table};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LawFile {
    entries: Vec<EntryFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    lambda: Vec<i64>,
    p: String,
}

fn signature(s: &str) -> Result<Signature, CliError> {
    Ok(Signature::new(parse_list(s, "signature part")?)?)
}

fn law(a: &FiniteArgs) -> Result<SignatureLaw, CliError> {
    if let Some(l) = &a.lambda {
        return Ok(SignatureLaw::delta(signature(l)?));
    }
    if let Some(t) = &a.tensor {
        let factors = t.split(';').map(signature).collect::<Result<Vec<_>, _>>()?;
        return Ok(tensor_product_law(&factors, DEFAULT_DEGREE_CAP)?);
    }
    if let Some(p) = &a.law {
        let f: LawFile = serde_json::from_str(&read_text(&p.to_string_lossy())?)?;
        let entries = f
            .entries
            .into_iter()
            .map(|e| Ok((Signature::new(e.lambda)?, parse_rat(&e.p)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        return Ok(SignatureLaw::new(entries)?);
    }
    Err(usage("give one of --lambda, --tensor or --law"))
}

pub fn run(a: &FiniteArgs) -> Result<Output, CliError> {
    let mut law = law(a)?;
    for _ in 0..a.project {
        if law.n() < 2 {
            return Err(usage("cannot project below N = 1"));
        }
        law = law.project(DEFAULT_ENUMERATION_CAP)?;
    }
    let mut table = Table::new(&["k", "m", "d"]);
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for k in 0..=a.kmax as u32 {
        let m = finite_m_moment(&law, k);
        let d = if law.n() >= 2 {
            Some(finite_d_moment(&law, k, DEFAULT_ENUMERATION_CAP)?)
        } else {
            None
        };
        if k == 0 && (!m.is_one() || d.as_ref().is_some_and(|d| !d.is_one())) {
            violations.push("zeroth moments are not 1".to_string());
        }
        let ds = d.as_ref().map(fmt_rat).unwrap_or_default();
        rows.push(json!({ "k": k, "m": fmt_rat(&m), "d": d.as_ref().map(fmt_rat) }));
        table.push(vec![k.to_string(), fmt_rat(&m), ds]);
    }
    Ok(Output {
        json: json!({ "n": law.n(), "support": law.entries().len(), "rows": rows }),
        table,
        violations,
    })
}
