//! File formats: JSON schemas for gridded objects and table output.

use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use qmk_core::grid::{
    DensityClass, DiagramClass, GridDensity, GridDiagram, Tolerance, UniformGrid,
};
use qmk_core::transform::{InversionReport, MembershipReport};

use crate::args::Format;
use crate::error::{usage, CliError};

/// Fixed-column table written for `--format csv`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Result of one command: its JSON document, its table, and any tolerance violations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Output {
    pub json: Value,
    pub table: Table,
    pub violations: Vec<String>,
}

pub fn write_output(out: &Output, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let mut sink: Box<dyn Write> = match path {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    };
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, &out.json)?;
            writeln!(sink)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(&out.table.header)?;
            for r in &out.table.rows {
                w.write_record(r)?;
            }
            w.flush()?;
            return Ok(());
        }
    }
    sink.flush()?;
    Ok(())
}

/// Contents of `path`, or of standard input for `-`.
pub fn read_text(path: &str) -> Result<String, CliError> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_string(),
            source,
        })?;
    }
    Ok(s)
}

pub fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| usage(format!("bad {what} '{t}'")))
        })
        .collect()
}

pub fn num(x: f64) -> String {
    format!("{x}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityClassDto {
    Probability,
    Bounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagramClassDto {
    Diagram,
    Quantizable,
}

/// JSON form of a gridded density or diagram.
///
/// Densities live on the nodes of a uniform grid over `[a, b]`; diagrams on a
/// uniform grid over `[lo, hi]` containing `[a, b]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectDto {
    Density {
        a: f64,
        b: f64,
        class: DensityClassDto,
        values: Vec<f64>,
        #[serde(default)]
        atoms: Vec<[f64; 2]>,
    },
    Diagram {
        a: f64,
        b: f64,
        x0: f64,
        lo: f64,
        hi: f64,
        class: DiagramClassDto,
        values: Vec<f64>,
    },
}

impl ObjectDto {
    pub fn from_density(d: &GridDensity) -> Self {
        ObjectDto::Density {
            a: d.a(),
            b: d.b(),
            class: match d.class() {
                DensityClass::Probability => DensityClassDto::Probability,
                DensityClass::Bounded => DensityClassDto::Bounded,
            },
            values: d.values().to_vec(),
            atoms: d.atoms().iter().map(|&(c, m)| [c, m]).collect(),
        }
    }

    pub fn from_diagram(w: &GridDiagram) -> Self {
        ObjectDto::Diagram {
            a: w.a(),
            b: w.b(),
            x0: w.x0(),
            lo: w.grid().lo(),
            hi: w.grid().hi(),
            class: match w.class() {
                DiagramClass::Diagram => DiagramClassDto::Diagram,
                DiagramClass::Quantizable => DiagramClassDto::Quantizable,
            },
            values: w.values().to_vec(),
        }
    }

    pub fn into_density(self) -> Result<GridDensity, CliError> {
        match self {
            ObjectDto::Density {
                a,
                b,
                class,
                values,
                atoms,
            } => {
                let class = match class {
                    DensityClassDto::Probability => DensityClass::Probability,
                    DensityClassDto::Bounded => DensityClass::Bounded,
                };
                let atoms = atoms.into_iter().map(|[c, m]| (c, m)).collect();
                Ok(GridDensity::with_atoms(
                    a,
                    b,
                    values,
                    atoms,
                    class,
                    Tolerance::numerical(),
                )?)
            }
            ObjectDto::Diagram { .. } => Err(usage("expected a density, found a diagram")),
        }
    }

    pub fn into_diagram(self) -> Result<GridDiagram, CliError> {
        match self {
            ObjectDto::Diagram {
                a,
                b,
                x0,
                lo,
                hi,
                class,
                values,
            } => {
                if values.len() < 2 {
                    return Err(usage("a diagram needs at least two values"));
                }
                let grid = UniformGrid::new(lo, hi, values.len() - 1)?;
                let class = match class {
                    DiagramClassDto::Diagram => DiagramClass::Diagram,
                    DiagramClassDto::Quantizable => DiagramClass::Quantizable,
                };
                Ok(GridDiagram::with_tolerance(
                    a,
                    b,
                    x0,
                    grid,
                    values,
                    class,
                    Tolerance::numerical(),
                )?)
            }
            ObjectDto::Density { .. } => Err(usage("expected a diagram, found a density")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDto {
    pub raw_mass: f64,
    pub min_raw: f64,
    pub max_raw: f64,
    pub closure: f64,
    pub atoms: Vec<[f64; 2]>,
    pub etas: Vec<f64>,
}

impl From<&InversionReport> for ReportDto {
    fn from(r: &InversionReport) -> Self {
        ReportDto {
            raw_mass: r.raw_mass,
            min_raw: r.min_raw,
            max_raw: r.max_raw,
            closure: r.closure,
            atoms: r.atoms.iter().map(|&(c, m)| [c, m]).collect(),
            etas: r.etas.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckDto {
    pub name: &'static str,
    pub required: bool,
    pub passed: bool,
    pub worst: f64,
}

pub fn membership_dto(rep: &MembershipReport) -> Vec<CheckDto> {
    rep.checks
        .iter()
        .map(|c| CheckDto {
            name: c.name,
            required: c.required,
            passed: c.passed,
            worst: c.worst,
        })
        .collect()
}

/// Violations for every required check that failed.
pub fn membership_violations(what: &str, rep: &MembershipReport) -> Vec<String> {
    rep.checks
        .iter()
        .filter(|c| c.required && !c.passed)
        .map(|c| format!("{what}: check {} failed (worst {})", c.name, c.worst))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objects_round_trip_through_json() {
        let (psi, w) = qmk_core::gallery::trivial_pair(50).unwrap();
        for dto in [ObjectDto::from_density(&psi), ObjectDto::from_diagram(&w)] {
            let s = serde_json::to_string(&dto).unwrap();
            let back: ObjectDto = serde_json::from_str(&s).unwrap();
            assert_eq!(back, dto);
        }
        let d = ObjectDto::from_density(&psi).into_density().unwrap();
        assert_eq!(d, psi);
        assert!(ObjectDto::from_density(&psi).into_diagram().is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(
            parse_list::<usize>("8, 16,32", "size").unwrap(),
            vec![8, 16, 32]
        );
        assert!(parse_list::<usize>("8,x", "size").is_err());
    }
}
