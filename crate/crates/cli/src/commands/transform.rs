use serde_json::json;

use qmk_core::grid::{GridDensity, GridDiagram};
use qmk_core::transform::{
    dequantize, membership_checks, mk_mu_to_w, mk_w_to_mu, probe_defect, qmk_psi_to_w,
    qmk_w_to_psi, quantize, standard_probes, DiagramR, InversionConfig, Member, MuR, ProbePoint,
    PsiR,
};

use crate::args::{Direction, TransformArgs};
use crate::error::{usage, CliError};
use crate::io::{
    membership_dto, membership_violations, num, read_text, ObjectDto, Output, ReportDto, Table,
};

fn probes(source: &str, a: f64, b: f64) -> Result<Vec<ProbePoint>, CliError> {
    if source == "standard" {
        return Ok(standard_probes(a, b));
    }
    let raw: Vec<[f64; 2]> = serde_json::from_str(&read_text(source)?)?;
    raw.into_iter()
        .map(|[re, im]| {
            let p = ProbePoint::new(re, im);
            p.check(a, b)
                .map(|_| p)
                .map_err(|_| usage(format!("probe {re}{im:+}i lies on [{a}, {b}]")))
        })
        .collect()
}

enum Produced {
    Density(GridDensity),
    Diagram(GridDiagram),
}

pub fn run(a: &TransformArgs, grid: Option<usize>) -> Result<Output, CliError> {
    let input: ObjectDto = serde_json::from_str(&read_text(&a.input)?)?;
    let cfg = InversionConfig {
        intervals: grid,
        eta_levels: a.eta_levels,
        ..Default::default()
    };
    let (produced, report, defect, n) = match a.direction {
        Direction::Psi2w => {
            let d = input.into_density()?;
            let pr = probes(&a.probes, d.a(), d.b())?;
            let rec = qmk_psi_to_w(&d, &cfg)?;
            let e = probe_defect(&PsiR(&d), &DiagramR::new(&rec.value), &pr);
            (Produced::Diagram(rec.value), rec.report, e, pr.len())
        }
        Direction::Mu2w => {
            let d = input.into_density()?;
            let pr = probes(&a.probes, d.a(), d.b())?;
            let rec = mk_mu_to_w(&d, &cfg)?;
            let e = probe_defect(&MuR(&d), &DiagramR::new(&rec.value), &pr);
            (Produced::Diagram(rec.value), rec.report, e, pr.len())
        }
        Direction::Quantize => {
            let d = input.into_density()?;
            let pr = probes(&a.probes, d.a(), d.b())?;
            let rec = quantize(&d, &cfg)?;
            let e = probe_defect(&PsiR(&d), &MuR(&rec.value), &pr);
            (Produced::Density(rec.value), rec.report, e, pr.len())
        }
        Direction::Dequantize => {
            let d = input.into_density()?;
            let pr = probes(&a.probes, d.a(), d.b())?;
            let rec = dequantize(&d, &cfg)?;
            let e = probe_defect(&MuR(&d), &PsiR(&rec.value), &pr);
            (Produced::Density(rec.value), rec.report, e, pr.len())
        }
        Direction::W2psi => {
            let w = input.into_diagram()?;
            let pr = probes(&a.probes, w.a(), w.b())?;
            let rec = qmk_w_to_psi(&w, &cfg)?;
            let e = probe_defect(&DiagramR::new(&w), &PsiR(&rec.value), &pr);
            (Produced::Density(rec.value), rec.report, e, pr.len())
        }
        Direction::W2mu => {
            let w = input.into_diagram()?;
            let pr = probes(&a.probes, w.a(), w.b())?;
            let rec = mk_w_to_mu(&w, &cfg)?;
            let e = probe_defect(&DiagramR::new(&w), &MuR(&rec.value), &pr);
            (Produced::Density(rec.value), rec.report, e, pr.len())
        }
    };
    let (dto, membership, table) = match &produced {
        Produced::Density(d) => {
            let mut t = Table::new(&["t", "density"]);
            for (x, v) in d.grid().points().iter().zip(d.values()) {
                t.push(vec![num(*x), num(*v)]);
            }
            (
                ObjectDto::from_density(d),
                membership_checks(Member::Density(d)),
                t,
            )
        }
        Produced::Diagram(w) => {
            let mut t = Table::new(&["t", "diagram"]);
            for (x, v) in w.grid().points().iter().zip(w.values()) {
                t.push(vec![num(*x), num(*v)]);
            }
            (
                ObjectDto::from_diagram(w),
                membership_checks(Member::Diagram(w)),
                t,
            )
        }
    };
    let mut violations = membership_violations("result", &membership);
    if !(defect <= a.probe_tol) {
        violations.push(format!(
            "R-function defect {defect:.3e} exceeds {:.1e}",
            a.probe_tol
        ));
    }
    Ok(Output {
        json: json!({
            "direction": format!("{:?}", a.direction).to_lowercase(),
            "result": dto,
            "report": ReportDto::from(&report),
            "probe_defect": defect,
            "probes": n,
            "membership": membership_dto(&membership),
        }),
        table,
        violations,
    })
}
