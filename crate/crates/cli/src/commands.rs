use crw_core::{
    evaluate_point, find_windows, sweep_k, verify_against_oracle, ClusterSpec, SpectrumRecord,
    SweepSpec,
};

use crate::error::{CliError, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::format::{csv_table, g17, json_object, JsonValue};

/// Closed-form vs oracle agreement required by `verify`.
pub const VERIFY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFormat {
    Csv,
    JsonLines,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepArgs {
    pub k_min: f64,
    pub k_max: f64,
    pub points: usize,
}

/// Result document for a single wavenumber.
pub fn cmd_point(cluster: &ClusterSpec, k: f64) -> Result<String, CliError> {
    let mode = cluster.mode(k)?;
    let (res, _) = evaluate_point(cluster, &mode)?;
    let doc = json_object(&[
        ("k", k.into()),
        ("E", mode.energy().into()),
        ("r_re", res.r.re.into()),
        ("r_im", res.r.im.into()),
        ("tN_re", res.t_n.re.into()),
        ("tN_im", res.t_n.im.into()),
        ("R", res.reflectance.into()),
        ("T", res.transmittance.into()),
        ("hermitian", res.hermitian.into()),
    ]);
    Ok(doc + "\n")
}

fn spectrum(cluster: &ClusterSpec, args: SweepArgs) -> Result<SpectrumRecord, CliError> {
    let spec = SweepSpec::new(cluster.clone(), args.k_min, args.k_max, args.points)
        .with_reference(cluster.first_emitter());
    Ok(sweep_k(&spec)?)
}

/// Spectrum table, columns `k,E,detuning,R,T`. The detuning refers to the
/// first emitter of the cluster and is left empty without one.
pub fn cmd_sweep(
    cluster: &ClusterSpec,
    args: SweepArgs,
    format: SweepFormat,
) -> Result<String, CliError> {
    let record = spectrum(cluster, args)?;
    Ok(match format {
        SweepFormat::Csv => {
            let rows: Vec<Vec<String>> = record
                .rows
                .iter()
                .map(|r| {
                    vec![
                        g17(r.k),
                        g17(r.energy),
                        r.detuning.map(g17).unwrap_or_default(),
                        g17(r.reflectance),
                        g17(r.transmittance),
                    ]
                })
                .collect();
            csv_table(&["k", "E", "detuning", "R", "T"], &rows)
        }
        SweepFormat::JsonLines => record
            .rows
            .iter()
            .map(|r| {
                json_object(&[
                    ("k", r.k.into()),
                    ("E", r.energy.into()),
                    ("detuning", r.detuning.into()),
                    ("R", r.reflectance.into()),
                    ("T", r.transmittance.into()),
                    ("method", JsonValue::Str(r.method.as_str().into())),
                ]) + "\n"
            })
            .collect(),
    })
}

/// Perfect-reflection windows, columns `k_lo,k_hi,max_R,slope_lo,slope_hi`.
pub fn cmd_windows(
    cluster: &ClusterSpec,
    args: SweepArgs,
    threshold: f64,
) -> Result<String, CliError> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(CliError::Usage(format!(
            "threshold must lie in (0, 1), got {threshold}"
        )));
    }
    let record = spectrum(cluster, args)?;
    let rows: Vec<Vec<String>> = find_windows(&record, threshold)?
        .iter()
        .map(|w| {
            vec![
                g17(w.k_lo),
                g17(w.k_hi),
                g17(w.max_reflectance),
                g17(w.edge_slopes.0),
                g17(w.edge_slopes.1),
            ]
        })
        .collect();
    Ok(csv_table(
        &["k_lo", "k_hi", "max_R", "slope_lo", "slope_hi"],
        &rows,
    ))
}

/// Verification summary and the exit code it implies.
pub fn cmd_verify(
    cluster: &ClusterSpec,
    samples: usize,
    seed: u64,
) -> Result<(String, i32), CliError> {
    if samples == 0 {
        return Err(CliError::Usage("samples must be ≥ 1".into()));
    }
    let report = verify_against_oracle(cluster, samples, seed);
    let doc = json_object(&[
        ("samples", JsonValue::Integer(samples as i64)),
        ("seed", JsonValue::Integer(seed as i64)),
        ("max_abs_dr", report.max_abs_dr.into()),
        ("max_abs_dt", report.max_abs_dt.into()),
        ("worst_k", report.worst_k.into()),
    ]);
    let code = if report.passes(VERIFY_TOLERANCE) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    Ok((doc + "\n", code))
}
