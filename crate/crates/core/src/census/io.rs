//! Tab-separated sphere and point files.
//!
//! ```text
//! # field=p:7
//! 0	0	0	1
//! 3	4	0	5
//! ```
//!
//! Point files use the same layout with three columns, or four with `r = 0`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::sphere::OrientedSphere;

use super::{PointSet, SphereSet};

pub fn format_spheres(set: &SphereSet) -> String {
    let mut out = format!("# field={}\n", set.field());
    for s in set.spheres() {
        let [x, y, z, r] = s.coords();
        writeln!(out, "{x}\t{y}\t{z}\t{r}").unwrap();
    }
    out
}

pub fn format_points(set: &PointSet) -> String {
    let mut out = format!("# field={}\n", set.field());
    for [x, y, z] in set.points() {
        writeln!(out, "{x}\t{y}\t{z}").unwrap();
    }
    out
}

/// Field from the header, checked against `hint` when both are present.
fn resolve_field(text: &str, hint: Option<FieldSpec>) -> Result<FieldSpec> {
    let mut declared = None;
    for (no, line) in text.lines().enumerate() {
        let Some(rest) = line.trim().strip_prefix('#') else {
            continue;
        };
        if let Some(name) = rest.trim().strip_prefix("field=") {
            let f: FieldSpec = name.parse().map_err(|e: Error| Error::Parse {
                line: no + 1,
                msg: e.to_string(),
            })?;
            declared = Some(f);
        }
    }
    match (declared, hint) {
        (Some(d), Some(h)) if d != h => Err(Error::InvalidParameter(format!(
            "file declares field {d} but {h} was requested"
        ))),
        (Some(f), _) | (None, Some(f)) => Ok(f),
        (None, None) => Err(Error::Parse {
            line: 1,
            msg: "missing `# field=...` header and no field given".into(),
        }),
    }
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(no, line)| {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((no + 1, t.split('\t').map(str::trim).collect()))
        }
    })
}

fn parse_cols<const N: usize>(f: FieldSpec, line: usize, cols: &[&str]) -> Result<[Scalar; N]> {
    let mut out = [f.zero(); N];
    for (k, c) in cols.iter().take(N).enumerate() {
        out[k] = f.parse_scalar(c).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
    }
    Ok(out)
}

pub fn parse_spheres(text: &str, hint: Option<FieldSpec>) -> Result<SphereSet> {
    let f = resolve_field(text, hint)?;
    let mut spheres = Vec::new();
    for (line, cols) in records(text) {
        if cols.len() != 4 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 4 columns, found {}", cols.len()),
            });
        }
        let c = parse_cols::<4>(f, line, &cols)?;
        spheres.push(OrientedSphere::from_coords(c)?);
    }
    SphereSet::new(f, spheres)
}

/// With `force_zero`, a fourth column is accepted and ignored; otherwise it
/// must be 0.
pub fn parse_points(text: &str, hint: Option<FieldSpec>, force_zero: bool) -> Result<PointSet> {
    let f = resolve_field(text, hint)?;
    let mut points = Vec::new();
    for (line, cols) in records(text) {
        match cols.len() {
            3 => {}
            4 => {
                let r = parse_cols::<4>(f, line, &cols)?[3];
                if !force_zero && !r.is_zero() {
                    return Err(Error::Parse {
                        line,
                        msg: "point record has nonzero radius".into(),
                    });
                }
            }
            n => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected 3 or 4 columns, found {n}"),
                })
            }
        }
        points.push(parse_cols::<3>(f, line, &cols)?);
    }
    PointSet::new(f, points)
}

pub fn read_spheres(path: &Path, hint: Option<FieldSpec>) -> Result<SphereSet> {
    parse_spheres(&std::fs::read_to_string(path)?, hint)
}

pub fn read_points(path: &Path, hint: Option<FieldSpec>, force_zero: bool) -> Result<PointSet> {
    parse_points(&std::fs::read_to_string(path)?, hint, force_zero)
}
