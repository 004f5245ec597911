use std::collections::BTreeMap;

use serde_json::{json, Value};

use rumin_core::checks::verify_all;
use rumin_core::real;
use rumin_core::spectrum::spectrum_slice;
use rumin_core::torsion::{
    combine_degree_sums, kappa_closed, kappa_reduced, torsion_report, ReducedMode, ReferencePoint,
};
use rumin_core::{KernelConvention, ZetaEngine};

use crate::args::{Command, Format, KappaArgs, Mode, SpectrumArgs, TorsionArgs, VerifyArgs};
use crate::error::CliError;
use crate::parallel::degree_sums;
use crate::record::{
    CheckRecord, KappaPayload, OutputRecord, Payload, ReferenceRecord, SpectrumPayload, TorsionPayload,
    VerifyPayload,
};

pub const DIRECT_DEFAULT_TRUNCATION: u32 = 100;

/// Slack added to truncation bounds when comparing against the closed form.
pub const ROUTE_SLACK: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub record: OutputRecord,
    pub format: Format,
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Spectrum(a) => spectrum(a),
        Command::Kappa(a) => kappa(a),
        Command::Torsion(a) => torsion(a),
        Command::Verify(a) => verify(a),
    }
}

fn finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("--{name} must be a finite number")))
    }
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Outcome, CliError> {
    let n = a.sphere.n;
    let slice = spectrum_slice(n, a.degree, a.max)?;
    // The requested degree is deliberately absent: k and 2n+1-k print the same bytes.
    let parameters = BTreeMap::from([
        ("n", json!(n)),
        ("canonical_degree", json!(slice.canonical_degree())),
        ("max", json!(a.max)),
    ]);
    let payload = SpectrumPayload::from_slice(&slice)?;
    Ok(Outcome {
        record: OutputRecord::new("spectrum", parameters, Payload::Spectrum(payload)),
        format: a.format,
    })
}

pub fn kappa(a: &KappaArgs) -> Result<Outcome, CliError> {
    let n = a.sphere.n;
    let s = finite("s", a.s)?;
    let convention = KernelConvention::from(a.kernel);
    let engine = ZetaEngine::new(a.precision.prec);
    let mut parameters = BTreeMap::from([
        ("n", json!(n)),
        ("s", json!(s)),
        ("mode", json!(a.mode.as_str())),
        ("kernel", json!(convention.as_str())),
        ("prec", json!(a.precision.prec)),
    ]);

    let closed = kappa_closed(&engine, n, s, convention);
    let mut checks = Vec::new();
    let payload = match a.mode {
        Mode::Closed => {
            let k = closed?;
            KappaPayload {
                mode: a.mode.as_str(),
                convention: convention.as_str(),
                value: k.to_f64(),
                value_decimal: Some(real::to_decimal_string(&k.value, &mut real::consts())),
                error_bound: k.error_bound,
                tail_bound: None,
                kappa_one: None,
                kappa_two: None,
                closed_value: None,
                residual: None,
            }
        }
        Mode::Direct => {
            let level = a.max.unwrap_or(DIRECT_DEFAULT_TRUNCATION);
            parameters.insert("max", json!(level));
            let direct = combine_degree_sums(n, &degree_sums(n, s, level)?, convention);
            let closed = closed?.to_f64();
            let residual = (direct.value - closed).abs();
            checks.push(CheckRecord::within(
                "|direct - closed| < tail_bound + 1e-8",
                residual,
                direct.tail_bound + ROUTE_SLACK,
            ));
            KappaPayload {
                mode: a.mode.as_str(),
                convention: convention.as_str(),
                value: direct.value,
                value_decimal: None,
                error_bound: direct.rounding_bound,
                tail_bound: Some(direct.tail_bound),
                kappa_one: None,
                kappa_two: None,
                closed_value: Some(closed),
                residual: Some(residual),
            }
        }
        Mode::Reduced => {
            let route = match a.max {
                Some(level) => {
                    parameters.insert("max", json!(level));
                    ReducedMode::Truncated(level)
                }
                None => ReducedMode::Continuation,
            };
            let r = kappa_reduced(&engine, n, s, route, convention)?;
            let closed = closed?.to_f64();
            let residual = (r.value - closed).abs();
            let allowance = r.tail_bound + r.error_bound + ROUTE_SLACK * closed.abs().max(1.0);
            checks.push(CheckRecord::within("|reduced - closed| within bounds", residual, allowance));
            KappaPayload {
                mode: a.mode.as_str(),
                convention: convention.as_str(),
                value: r.value,
                value_decimal: r
                    .precise
                    .as_ref()
                    .map(|v| real::to_decimal_string(v, &mut real::consts())),
                error_bound: r.error_bound,
                tail_bound: Some(r.tail_bound),
                kappa_one: Some(r.kappa_one),
                kappa_two: Some(r.kappa_two),
                closed_value: Some(closed),
                residual: Some(residual),
            }
        }
    };
    let mut record = OutputRecord::new("kappa", parameters, Payload::Kappa(payload));
    record.checks = checks;
    Ok(Outcome {
        record,
        format: Format::Json,
    })
}

pub fn torsion(a: &TorsionArgs) -> Result<Outcome, CliError> {
    let n = a.sphere.n;
    let convention = KernelConvention::from(a.kernel);
    let engine = ZetaEngine::new(a.precision.prec);
    let reference = ReferencePoint {
        s: finite("reference-s", a.reference_s.unwrap_or(ReferencePoint::default_for(n).s))?,
        truncation: a.max,
    };
    let degrees = degree_sums(n, reference.s, reference.truncation)?;
    let report = torsion_report(&engine, n, convention, reference, Some(degrees))?;

    let fact = report.expected_ratio as f64;
    let kappa_zero = match convention {
        KernelConvention::Include => 0.0,
        KernelConvention::Exclude => f64::from(n + 1),
    };
    let res = |key: &str| report.route_residuals.get(key).copied().unwrap_or(f64::INFINITY);
    let checks = vec![
        CheckRecord::within(
            "kappa(0) == 0 (n+1 with the kernel excluded)",
            (report.kappa_at_0 - kappa_zero).abs(),
            1e-12,
        ),
        CheckRecord::within("T / (4 pi)^(n+1) == 1", res("T_over_4pi_power_minus_1"), 1e-10),
        CheckRecord::within("T / T_ray_singer == n!", (report.ratio - fact).abs() / fact, 1e-10),
        CheckRecord::within("direct route within tail bound", res("direct"), res("direct_tail_bound") + ROUTE_SLACK),
        CheckRecord::within("continuation route matches closed form", res("reduced_continuation"), ROUTE_SLACK),
    ];

    let parameters = BTreeMap::from([
        ("n", json!(n)),
        ("kernel", json!(convention.as_str())),
        ("prec", json!(a.precision.prec)),
        ("reference_s", json!(reference.s)),
        ("max", json!(reference.truncation)),
    ]);
    let payload = TorsionPayload {
        n,
        convention: report.convention.as_str(),
        kappa_at_0: report.kappa_at_0,
        kappa_prime_at_0: report.kappa_prime_at_0,
        kappa_prime_at_0_decimal: report.kappa_prime_at_0_decimal,
        t: report.t,
        t_decimal: report.t_decimal,
        t_ray_singer: report.t_ray_singer,
        ratio: report.ratio,
        expected_ratio: report.expected_ratio,
        reference: ReferenceRecord {
            s: report.reference.s,
            truncation: report.reference.truncation,
        },
        route_residuals: report.route_residuals,
    };
    let mut record = OutputRecord::new("torsion", parameters, Payload::Torsion(payload));
    record.checks = checks;
    Ok(Outcome {
        record,
        format: Format::Json,
    })
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let n = a.sphere.n;
    let engine = ZetaEngine::new(a.precision.prec);
    let checks: Vec<CheckRecord> = verify_all(&engine, n, a.max).into_iter().map(CheckRecord::from).collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    let parameters: BTreeMap<&'static str, Value> = BTreeMap::from([
        ("n", json!(n)),
        ("max", json!(a.max)),
        ("prec", json!(a.precision.prec)),
    ]);
    let payload = VerifyPayload {
        n,
        max: a.max,
        checks_run: checks.len(),
        checks_failed: failed,
    };
    let mut record = OutputRecord::new("verify", parameters, Payload::Verify(payload));
    record.checks = checks;
    Ok(Outcome {
        record,
        format: Format::Json,
    })
}
