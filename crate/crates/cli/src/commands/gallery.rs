use serde_json::{json, Value};

use qmk_core::gallery::{
    plancherel_psi, plancherel_support, plancherel_w, plancherel_x0, semicircle, trivial_pair,
    vkls_curve, CenteredPlancherel,
};
use qmk_core::grid::{GridDensity, GridDiagram, DEFAULT_INTERVALS};
use qmk_core::transform::{
    classical_defect, membership_checks, probe_defect, rescaled_pair, standard_probes, DiagramR,
    Member, PsiR,
};

use crate::args::{GalleryArgs, GalleryName, Part};
use crate::error::CliError;
use crate::io::{membership_dto, membership_violations, num, parse_list, ObjectDto, Output, Table};

struct Item {
    parameter: Option<(&'static str, f64)>,
    density: Option<GridDensity>,
    diagram: Option<GridDiagram>,
    /// `max |R_density - R_diagram|` on the standard probes, for pairs.
    defect: Option<f64>,
}

fn items(a: &GalleryArgs, m: usize) -> Result<Vec<Item>, CliError> {
    Ok(match a.name {
        GalleryName::Plancherel => parse_list::<f64>(&a.gamma, "gamma")?
            .into_iter()
            .map(|g| {
                let (psi, w) = (plancherel_psi(g, m)?, plancherel_w(g, m)?);
                let (lo, hi) = plancherel_support(g);
                let d = probe_defect(&PsiR(&psi), &DiagramR::new(&w), &standard_probes(lo, hi));
                debug_assert_eq!(w.x0(), plancherel_x0(g));
                Ok(Item {
                    parameter: Some(("gamma", g)),
                    density: Some(psi),
                    diagram: Some(w),
                    defect: Some(d),
                })
            })
            .collect::<Result<_, CliError>>()?,
        GalleryName::Classical => {
            let (mu, w) = (semicircle(m)?, vkls_curve(m)?);
            let d = classical_defect(&mu, &w, &standard_probes(-2.0, 2.0));
            vec![Item {
                parameter: None,
                density: Some(mu),
                diagram: Some(w),
                defect: Some(d),
            }]
        }
        GalleryName::Semicircle => {
            vec![Item {
                parameter: None,
                density: Some(semicircle(m)?),
                diagram: None,
                defect: None,
            }]
        }
        GalleryName::Vkls => {
            vec![Item {
                parameter: None,
                density: None,
                diagram: Some(vkls_curve(m)?),
                defect: None,
            }]
        }
        GalleryName::Trivial => {
            let (psi, w) = trivial_pair(m)?;
            let d = probe_defect(&PsiR(&psi), &DiagramR::new(&w), &standard_probes(0.0, 1.0));
            vec![Item {
                parameter: None,
                density: Some(psi),
                diagram: Some(w),
                defect: Some(d),
            }]
        }
        GalleryName::Semiclassical => {
            let family = CenteredPlancherel { intervals: m };
            parse_list::<f64>(&a.eps, "eps")?
                .into_iter()
                .map(|eps| {
                    let (mu, w) = rescaled_pair(&family, eps)?;
                    let d = classical_defect(&mu, &w, &standard_probes(-2.0, 2.0));
                    Ok(Item {
                        parameter: Some(("eps", eps)),
                        density: Some(mu),
                        diagram: Some(w),
                        defect: Some(d),
                    })
                })
                .collect::<Result<_, CliError>>()?
        }
    })
}

pub fn run(a: &GalleryArgs, grid: Option<usize>) -> Result<Output, CliError> {
    let m = grid.unwrap_or(DEFAULT_INTERVALS);
    let mut table = Table::new(&["parameter", "t", "density", "diagram"]);
    let mut docs = Vec::new();
    let mut violations = Vec::new();
    let want_d = a.part != Part::Diagram;
    let want_w = a.part != Part::Density;
    for it in items(a, m)? {
        let label = it
            .parameter
            .map(|(n, v)| format!("{n}={v}"))
            .unwrap_or_default();
        let mut doc = serde_json::Map::new();
        if let Some((n, v)) = it.parameter {
            doc.insert(n.into(), json!(v));
        }
        let density = it.density.as_ref().filter(|_| want_d);
        let diagram = it.diagram.as_ref().filter(|_| want_w);
        if let Some(d) = density {
            let rep = membership_checks(Member::Density(d));
            violations.extend(membership_violations(&format!("density {label}"), &rep));
            doc.insert("density".into(), json!(ObjectDto::from_density(d)));
            doc.insert("density_membership".into(), json!(membership_dto(&rep)));
        }
        if let Some(w) = diagram {
            let rep = membership_checks(Member::Diagram(w));
            violations.extend(membership_violations(&format!("diagram {label}"), &rep));
            doc.insert("x0".into(), json!(w.x0()));
            doc.insert("diagram".into(), json!(ObjectDto::from_diagram(w)));
            doc.insert("diagram_membership".into(), json!(membership_dto(&rep)));
        }
        if let Some(e) = it.defect {
            doc.insert("r_defect".into(), json!(e));
        }
        let nodes = density
            .map(|d| d.grid().points())
            .or_else(|| diagram.map(|w| w.grid().points()))
            .unwrap_or_default();
        let shared = match (density, diagram) {
            (Some(d), Some(w)) => d.grid() == w.grid(),
            _ => true,
        };
        for (j, t) in nodes.iter().enumerate() {
            let dv = density.map(|d| num(d.values()[j])).unwrap_or_default();
            let wv = diagram
                .map(|w| {
                    num(if shared {
                        w.values()[j]
                    } else {
                        w.value_at(*t)
                    })
                })
                .unwrap_or_default();
            table.push(vec![label.clone(), num(*t), dv, wv]);
        }
        docs.push(Value::Object(doc));
    }
    Ok(Output {
        json: json!({ "name": format!("{:?}", a.name).to_lowercase(), "grid": m, "items": docs }),
        table,
        violations,
    })
}
