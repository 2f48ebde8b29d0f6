//! StepFunction JSON input, CSV tables and JSON reports.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::audit::{InequalityStats, PlancherelReport, RatioReport, SCHEMA_VERSION};
use crate::engine::{grid_frequency, StepFunction, TileLayer};
use crate::error::{NlftError, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionFile {
    d: u32,
    cell_exponent: u32,
    support_exponent: u32,
    values: Vec<[f64; 2]>,
}

/// Parse `{"d", "cell_exponent", "support_exponent", "values": [[re, im], …]}`.
/// `origin` names the source in error messages.
pub fn parse_function_str(text: &str, origin: &str) -> Result<StepFunction> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: FunctionFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        NlftError::Parse {
            path: format!("{origin}: {path}"),
            message: e.into_inner().to_string(),
        }
    })?;
    let values = raw.values.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    StepFunction::new(raw.d, raw.cell_exponent, raw.support_exponent, values)
}

pub fn parse_function_file(path: &Path) -> Result<StepFunction> {
    let text = std::fs::read_to_string(path)?;
    parse_function_str(&text, &path.display().to_string())
}

pub fn function_to_json(f: &StepFunction) -> String {
    let raw = FunctionFile {
        d: f.radix(),
        cell_exponent: f.cell_exponent(),
        support_exponent: f.support_exponent(),
        values: f.values().iter().map(|v| [v.re, v.im]).collect(),
    };
    serde_json::to_string(&raw).expect("plain data serializes")
}

fn non_finite(what: &str) -> NlftError {
    NlftError::InvalidArgument(format!("refusing to emit a non-finite value in {what}"))
}

/// Pretty JSON. Non-finite floats serialize as `null`; report types skip
/// absent optionals, so any `null` is refused.
pub fn to_json<T: Serialize>(report: &T) -> Result<String> {
    let value = serde_json::to_value(report).map_err(|e| NlftError::InvalidArgument(e.to_string()))?;
    if contains_null(&value) {
        return Err(non_finite("a JSON report"));
    }
    let mut out = serde_json::to_string_pretty(&value).expect("a Value serializes");
    out.push('\n');
    Ok(out)
}

fn contains_null(v: &serde_json::Value) -> bool {
    use serde_json::Value;
    match v {
        Value::Null => true,
        Value::Array(items) => items.iter().any(contains_null),
        Value::Object(map) => map.values().any(contains_null),
        _ => false,
    }
}

fn csv_table<F>(kind: &str, header: &[&str], fill: F) -> Result<String>
where
    F: FnOnce(&mut csv::Writer<&mut Vec<u8>>) -> Result<()>,
{
    let mut buf = format!("# nlft {kind} v{SCHEMA_VERSION}\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        fill(&mut w)?;
        w.flush()?;
    }
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

fn num(x: f64, what: &str) -> Result<String> {
    if x.is_finite() {
        Ok(x.to_string())
    } else {
        Err(non_finite(what))
    }
}

/// One row per grid frequency of the top layer.
pub fn top_layer_csv(layer: &TileLayer) -> Result<String> {
    if layer.columns() != 1 {
        return Err(NlftError::InvalidArgument("not a top layer".into()));
    }
    let d = layer.radix();
    let nx = u32::try_from(layer.scale()).map_err(|_| NlftError::InvalidArgument("negative top scale".into()))?;
    csv_table(
        "top-layer",
        &["xi_num", "xi_scale", "re_a", "im_a", "re_b", "im_b", "abs_a", "abs_b", "size"],
        |w| {
            for (k, g) in layer.matrices().iter().enumerate() {
                let xi = grid_frequency(d, nx, k);
                let row = [
                    xi.numerator().to_string(),
                    xi.scale().to_string(),
                    num(g.a.re, "top layer")?,
                    num(g.a.im, "top layer")?,
                    num(g.b.re, "top layer")?,
                    num(g.b.im, "top layer")?,
                    num(g.abs_a(), "top layer")?,
                    num(g.abs_b(), "top layer")?,
                    num(g.size(), "top layer")?,
                ];
                w.write_record(&row)?;
            }
            Ok(())
        },
    )
}

/// One row per (inequality, d, p, regime).
pub fn stats_csv(d: u32, stats: &[InequalityStats]) -> Result<String> {
    csv_table(
        "inequalities",
        &["inequality", "d", "p", "regime", "evaluations", "skipped", "guarded", "violations", "max_ratio"],
        |w| {
            for s in stats {
                let p = match s.p {
                    Some(p) => num(p, "inequality table")?,
                    None => String::new(),
                };
                w.write_record(&[
                    s.inequality.clone(),
                    d.to_string(),
                    p,
                    s.regime.to_string(),
                    s.evaluations.to_string(),
                    s.skipped.to_string(),
                    s.guarded.to_string(),
                    s.violations.to_string(),
                    num(s.max_ratio, "inequality table")?,
                ])?;
            }
            Ok(())
        },
    )
}

pub fn plancherel_csv(report: &PlancherelReport) -> Result<String> {
    csv_table("plancherel", &["d", "nxi", "defect"], |w| {
        for (n, &x) in report.freq_exponents.iter().zip(&report.defects) {
            w.write_record(&[report.d.to_string(), n.to_string(), num(x, "plancherel table")?])?;
        }
        Ok(())
    })
}

pub fn ratio_csv(report: &RatioReport) -> Result<String> {
    csv_table("hy-ratio", &["d", "nxi", "p", "ratio", "cap"], |w| {
        for (&p, &r) in report.p_grid.iter().zip(&report.ratios) {
            w.write_record(&[
                report.d.to_string(),
                report.freq_exponent.to_string(),
                num(p, "ratio table")?,
                num(r, "ratio table")?,
                num(report.theoretical_cap, "ratio table")?,
            ])?;
        }
        Ok(())
    })
}
