//! Subcommand implementations.

use crate::args::{
    AdjustChoice, CalibrateArgs, ChartArgs, Command, FitArgs, IcStudyArgs, LimitsArgs, McArgs,
    OocStudyArgs, RuleChoice, SimulateArgs,
};
use crate::data::{read_data_file, write_data_file, write_data_stream};
use crate::error::CliError;
use crate::grid::parse_grid;
use crate::report::{self, envelope};
use kumachart::calib::{adjust, AdjustmentRequest, AdjustmentResult};
use kumachart::chart::{limits_with, run_chart, PointStatus};
use kumachart::fit::{fit_mle, PhaseISample};
use kumachart::mc::{ooc_study, simulate_carl, summarize, LimitRule, OocRow, StudyConfig};
use kumachart::{CarlSummary, KumaParams, LimitSource, Method, ShiftSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::fs;

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Limits(args) => cmd_limits(args),
        Command::IcStudy(args) => cmd_ic_study(args),
        Command::Calibrate(args) => cmd_calibrate(args),
        Command::OocStudy(args) => cmd_ooc_study(args),
        Command::Chart(args) => cmd_chart(args),
    }
}

fn params_from(theta1: f64, theta2: f64) -> Result<KumaParams, CliError> {
    KumaParams::new(theta1, theta2).map_err(|e| CliError::Other(e.to_string()))
}

/// Uses the explicit seed, or draws one from entropy and echoes it so the
/// run can be reproduced.
fn resolve_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(seed) => seed,
        None => {
            let seed: u64 = rand::rng().random();
            eprintln!("seed: {seed}");
            seed
        }
    }
}

fn validate_rate(alpha: f64) -> Result<(), CliError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(CliError::Other(format!(
            "--alpha {alpha} must lie strictly inside (0, 1)"
        )))
    }
}

fn adjustment_request(
    params0: KumaParams,
    m: usize,
    alpha_nominal: f64,
    mc: &McArgs,
    seed: u64,
) -> AdjustmentRequest {
    AdjustmentRequest {
        params0,
        m,
        alpha_nominal,
        replications: mc.reps,
        seed,
        p: mc.p,
        epsilon: mc.epsilon,
        grid_step: mc.grid_step,
    }
}

/// Turns a rule choice into a concrete limit rule, running the calibration
/// first when the choice asks for an adjusted rate.
fn resolve_rule(
    choice: RuleChoice,
    params0: KumaParams,
    m: usize,
    alpha: f64,
    mc: &McArgs,
    seed: u64,
) -> Result<(LimitRule, Option<AdjustmentResult>), CliError> {
    let method = match choice {
        RuleChoice::Plugin => return Ok((LimitRule::Plugin { alpha }, None)),
        RuleChoice::A => Method::A,
        RuleChoice::B => Method::B,
    };
    let request = adjustment_request(params0, m, alpha, mc, seed);
    let result = adjust(&request, method)?;
    let rule = match method {
        Method::A => LimitRule::AdjustedA {
            alpha: result.alpha_adjusted,
        },
        Method::B => LimitRule::AdjustedB {
            alpha: result.alpha_adjusted,
        },
    };
    Ok((rule, Some(result)))
}

fn print_adjustment(alpha_nominal: f64, result: &AdjustmentResult) {
    println!("alpha_nominal:  {alpha_nominal}");
    println!("alpha_adjusted: {}", result.alpha_adjusted);
    println!();
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let params = params_from(args.theta1, args.theta2)?;
    let seed = resolve_seed(args.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = params.sample(args.m, &mut rng);
    match &args.out {
        Some(path) => write_data_file(path, &values),
        None => write_data_stream(std::io::stdout().lock(), &values)
            .map_err(|e| CliError::Other(format!("stdout: {e}"))),
    }
}

fn cmd_fit(args: FitArgs) -> Result<(), CliError> {
    let values = read_data_file(&args.data)?;
    let sample = PhaseISample::new(values)?;
    let fit = fit_mle(&sample)?;
    println!("m: {}", sample.len());
    println!("{}", report::format_fit(&fit));
    if let Some(path) = &args.out {
        let mut doc = envelope("fit");
        doc.insert("data".into(), json!(args.data.display().to_string()));
        doc.insert("m".into(), json!(sample.len()));
        doc.insert("fit".into(), report::fit_value(&fit));
        report::write_json(path, &doc)?;
    }
    if !fit.converged {
        return Err(CliError::NotConverged);
    }
    Ok(())
}

fn cmd_limits(args: LimitsArgs) -> Result<(), CliError> {
    // The design distribution: estimated from data, or given outright.
    let (params, base_source, fit, data_len) = match (&args.data, args.theta1, args.theta2) {
        (Some(path), None, None) => {
            let values = read_data_file(path)?;
            let sample = PhaseISample::new(values)?;
            let fit = fit_mle(&sample)?;
            if !fit.converged {
                return Err(CliError::NotConverged);
            }
            (
                fit.params_hat,
                LimitSource::Plugin,
                Some(fit),
                Some(sample.len()),
            )
        }
        (None, Some(t1), Some(t2)) => (params_from(t1, t2)?, LimitSource::Known, None, None),
        _ => unreachable!("the argument parser enforces --theta1/--theta2 xor --data"),
    };

    let mut adjustment = None;
    let (rate, source) = if let Some(far) = args.far {
        (far, base_source)
    } else {
        match args.adjust {
            AdjustChoice::None => (args.alpha, base_source),
            AdjustChoice::A | AdjustChoice::B => {
                validate_rate(args.alpha)?;
                let m = args.m.or(data_len).ok_or_else(|| {
                    CliError::Other(
                        "--m is required with --adjust when the parameters are given explicitly"
                            .into(),
                    )
                })?;
                let method = if args.adjust == AdjustChoice::A {
                    Method::A
                } else {
                    Method::B
                };
                let seed = resolve_seed(args.mc.seed);
                let request = adjustment_request(params, m, args.alpha, &args.mc, seed);
                let result = adjust(&request, method)?;
                let rate = result.alpha_adjusted;
                let source = match method {
                    Method::A => LimitSource::AdjustedA,
                    Method::B => LimitSource::AdjustedB,
                };
                adjustment = Some(result);
                (rate, source)
            }
        }
    };
    let limits = limits_with(params, rate, source, args.center.into())?;

    if let Some(fit) = &fit {
        println!("{}", report::format_fit(fit));
        println!();
    }
    if let Some(adj) = &adjustment {
        print_adjustment(args.alpha, adj);
    }
    println!("{}", report::format_limits(&limits));

    if let Some(path) = &args.out {
        let mut doc = envelope("limits");
        if args.far.is_none() {
            doc.insert("alpha_nominal".into(), json!(args.alpha));
        }
        doc.insert("limits".into(), report::limits_value(&limits));
        if let Some(fit) = &fit {
            doc.insert("fit".into(), report::fit_value(fit));
            doc.insert("m".into(), json!(data_len));
        }
        if let Some(adj) = &adjustment {
            doc.insert("adjustment".into(), report::adjustment_value(adj));
        }
        report::write_json(path, &doc)?;
    }
    Ok(())
}

fn cmd_ic_study(args: IcStudyArgs) -> Result<(), CliError> {
    validate_rate(args.alpha)?;
    let params0 = params_from(args.theta1, args.theta2)?;
    let seed = resolve_seed(args.mc.seed);
    let (rule, adjustment) = resolve_rule(args.rule, params0, args.m, args.alpha, &args.mc, seed)?;
    let config = StudyConfig {
        params0,
        m: args.m,
        rule,
        replications: args.mc.reps,
        seed,
    };
    let carl = simulate_carl(&config, ShiftSpec::NULL)?;
    let summary = summarize(&carl.carl_values, 1.0 / args.alpha)
        .ok_or_else(|| CliError::Other("no replication produced a usable chart".into()))?;

    if let Some(adj) = &adjustment {
        print_adjustment(args.alpha, adj);
    }
    println!("{}", report::format_summary(&summary));
    println!(
        "discarded:            {} of {}",
        carl.n_failed, args.mc.reps
    );

    if let Some(path) = &args.out {
        let mut doc = envelope("ic-study");
        doc.insert("alpha_nominal".into(), json!(args.alpha));
        doc.insert("params0".into(), to_json(&params0));
        doc.insert("m".into(), json!(args.m));
        doc.insert("rule".into(), to_json(&rule));
        doc.insert("replications".into(), json!(args.mc.reps));
        doc.insert("seed".into(), json!(seed));
        doc.insert("n_failed".into(), json!(carl.n_failed));
        doc.insert("summary".into(), report::summary_value(&summary));
        if let Some(adj) = &adjustment {
            doc.insert("adjustment".into(), report::adjustment_value(adj));
        }
        report::write_json(path, &doc)?;
    }
    Ok(())
}

fn cmd_calibrate(args: CalibrateArgs) -> Result<(), CliError> {
    validate_rate(args.alpha)?;
    let params0 = params_from(args.theta1, args.theta2)?;
    let seed = resolve_seed(args.mc.seed);
    let request = adjustment_request(params0, args.m, args.alpha, &args.mc, seed);
    let result = adjust(&request, args.method.into())?;

    let method = match result.method {
        Method::A => "a",
        Method::B => "b",
    };
    println!("method:          {method}");
    println!("alpha_nominal:   {}", args.alpha);
    println!("alpha_adjusted:  {}", result.alpha_adjusted);
    println!("criterion_value: {:.6}", result.criterion_value);
    println!("evaluations:     {}", result.evaluations);
    println!();
    println!("{}", report::format_summary(&result.summary));

    if let Some(path) = &args.out {
        let mut doc = envelope("calibrate");
        doc.insert("request".into(), to_json(&request));
        doc.insert("result".into(), report::adjustment_value(&result));
        report::write_json(path, &doc)?;
    }
    Ok(())
}

fn cmd_ooc_study(args: OocStudyArgs) -> Result<(), CliError> {
    validate_rate(args.alpha)?;
    let params0 = params_from(args.theta1, args.theta2)?;
    let shifts = build_shifts(&args)?;
    let seed = resolve_seed(args.mc.seed);
    let (rule, adjustment) = resolve_rule(args.rule, params0, args.m, args.alpha, &args.mc, seed)?;
    let config = StudyConfig {
        params0,
        m: args.m,
        rule,
        replications: args.mc.reps,
        seed,
    };
    let rows = ooc_study(&config, args.alpha, &shifts)?;

    if let Some(adj) = &adjustment {
        print_adjustment(args.alpha, adj);
    }
    println!(
        "{:>8} {:>8} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "delta1", "delta2", "case_k", "aarl", "sdarl", "frac<ref", "p50"
    );
    for row in &rows {
        println!(
            "{:>8} {:>8} {:>10.2} {:>10.2} {:>10.2} {:>10.4} {:>10.2}",
            row.shift.delta1,
            row.shift.delta2,
            row.case_k_arl,
            row.summary.aarl,
            row.summary.sdarl,
            row.summary.frac_below_reference,
            percentile_of(&row.summary, 0.50),
        );
    }

    if let Some(path) = &args.out {
        fs::write(path, ooc_tsv(&rows)).map_err(CliError::io(path))?;
    }
    if let Some(path) = &args.dump_samples {
        let mut text = String::from("delta1\tdelta2\tcarl\n");
        for row in &rows {
            for carl in &row.carl_values {
                text.push_str(&format!(
                    "{}\t{}\t{}\n",
                    row.shift.delta1, row.shift.delta2, carl
                ));
            }
        }
        fs::write(path, text).map_err(CliError::io(path))?;
    }
    Ok(())
}

fn cmd_chart(args: ChartArgs) -> Result<(), CliError> {
    let phase1 = read_data_file(&args.phase1)?;
    let n1 = phase1.len();
    let sample = PhaseISample::new(phase1.clone())?;
    let fit = fit_mle(&sample)?;
    if !fit.converged {
        return Err(CliError::NotConverged);
    }
    let params_hat = fit.params_hat;

    let mut adjustment = None;
    let (rate, source) = if let Some(far) = args.far {
        (far, LimitSource::Plugin)
    } else {
        match args.adjust {
            AdjustChoice::None => (args.alpha, LimitSource::Plugin),
            AdjustChoice::A | AdjustChoice::B => {
                validate_rate(args.alpha)?;
                let method = if args.adjust == AdjustChoice::A {
                    Method::A
                } else {
                    Method::B
                };
                let seed = resolve_seed(args.mc.seed);
                let request = adjustment_request(params_hat, n1, args.alpha, &args.mc, seed);
                let result = adjust(&request, method)?;
                let rate = result.alpha_adjusted;
                let source = match method {
                    Method::A => LimitSource::AdjustedA,
                    Method::B => LimitSource::AdjustedB,
                };
                adjustment = Some(result);
                (rate, source)
            }
        }
    };
    let limits = limits_with(params_hat, rate, source, args.center.into())?;

    let mut observations = phase1;
    if let Some(path) = &args.phase2 {
        observations.extend(read_data_file(path)?);
    }
    let chart = run_chart(&limits, &observations);

    println!("{}", report::format_fit(&fit));
    println!();
    if let Some(adj) = &adjustment {
        print_adjustment(args.alpha, adj);
    }
    println!("{}", report::format_limits(&limits));
    println!();
    let phase1_signals = chart.points[..n1]
        .iter()
        .filter(|p| p.status.is_signal())
        .count();
    println!("phase I points:  {n1} ({phase1_signals} signals)");
    if args.phase2.is_some() {
        println!(
            "phase II points: {} ({} signals)",
            chart.points.len() - n1,
            chart.n_signals - phase1_signals
        );
    }
    match chart.first_signal {
        Some(index) => {
            let phase = if index <= n1 { "I" } else { "II" };
            println!("first signal: index {index} (phase {phase})");
        }
        None => println!("no signals"),
    }

    if let Some(path) = &args.out {
        let mut text = String::from("index\tvalue\tlcl\tcl\tucl\tstatus\n");
        for point in &chart.points {
            text.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                point.index,
                point.value,
                limits.lcl(),
                limits.cl(),
                limits.ucl(),
                status_str(point.status),
            ));
        }
        fs::write(path, text).map_err(CliError::io(path))?;
    }
    Ok(())
}

fn build_shifts(args: &OocStudyArgs) -> Result<Vec<ShiftSpec>, CliError> {
    let parse = |name: &str, spec: &Option<String>| -> Result<Option<Vec<f64>>, CliError> {
        spec.as_deref()
            .map(parse_grid)
            .transpose()
            .map_err(|msg| CliError::Other(format!("{name}: {msg}")))
    };
    let delta1 = parse("--delta1-grid", &args.delta1_grid)?;
    let delta2 = parse("--delta2-grid", &args.delta2_grid)?;
    match (&delta1, &delta2) {
        (None, None) => {
            return Err(CliError::Other(
                "provide --delta1-grid and/or --delta2-grid".into(),
            ))
        }
        (Some(_), Some(_)) if !args.allow_both => {
            return Err(CliError::Other(
                "passing both grids crosses them; add --allow-both to confirm".into(),
            ))
        }
        _ => {}
    }
    let delta1 = delta1.unwrap_or_else(|| vec![1.0]);
    let delta2 = delta2.unwrap_or_else(|| vec![1.0]);
    let mut shifts = Vec::with_capacity(delta1.len() * delta2.len());
    for &d1 in &delta1 {
        for &d2 in &delta2 {
            shifts.push(ShiftSpec {
                delta1: d1,
                delta2: d2,
            });
        }
    }
    Ok(shifts)
}

fn ooc_tsv(rows: &[OocRow]) -> String {
    let mut text = String::from(
        "delta1\tdelta2\tcase_k_arl\taarl\tsdarl\tfrac_below_reference\t\
         p05\tp10\tp25\tp50\tp75\tp90\tp95\tn_effective\n",
    );
    for row in rows {
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            row.shift.delta1,
            row.shift.delta2,
            row.case_k_arl,
            row.summary.aarl,
            row.summary.sdarl,
            row.summary.frac_below_reference
        ));
        for (_, value) in &row.summary.percentiles {
            text.push_str(&format!("\t{value}"));
        }
        text.push_str(&format!("\t{}\n", row.summary.n_effective));
    }
    text
}

fn percentile_of(summary: &CarlSummary, level: f64) -> f64 {
    summary
        .percentiles
        .iter()
        .find(|(l, _)| (l - level).abs() < 1e-12)
        .map(|(_, v)| *v)
        .unwrap_or(f64::NAN)
}

fn status_str(status: PointStatus) -> &'static str {
    match status {
        PointStatus::InControl => "in-control",
        PointStatus::BelowLower => "below-lower",
        PointStatus::AboveUpper => "above-upper",
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report serialization cannot fail")
}
