//! Parsing of shift-multiplier grids from the command line.
//!
//! Two spellings are accepted:
//!
//! * `START:STOP:STEP` — an inclusive arithmetic grid, e.g. `1.0:2.0:0.1`.
//!   The stop point is included whenever it lands on the grid (up to a tiny
//!   rounding allowance).
//! * `V1,V2,...` — an explicit comma-separated list, e.g. `0.5,0.8,1.2`.
//!
//! All multipliers must be positive and finite.

const MAX_GRID_POINTS: usize = 1_000_000;

/// Parses one grid specification.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.len() {
        1 => parse_list(spec),
        3 => parse_range(parts[0], parts[1], parts[2]),
        _ => Err(format!(
            "expected VALUE[,VALUE...] or START:STOP:STEP, found {spec:?}"
        )),
    }
}

fn parse_multiplier(text: &str) -> Result<f64, String> {
    let value: f64 = text
        .trim()
        .parse()
        .map_err(|_| format!("expected a number, found {:?}", text.trim()))?;
    if !(value.is_finite() && value > 0.0) {
        return Err(format!(
            "shift multiplier {value} must be positive and finite"
        ));
    }
    Ok(value)
}

fn parse_list(spec: &str) -> Result<Vec<f64>, String> {
    spec.split(',').map(parse_multiplier).collect()
}

fn parse_range(start: &str, stop: &str, step: &str) -> Result<Vec<f64>, String> {
    let start = parse_multiplier(start)?;
    let stop = parse_multiplier(stop)?;
    let step = parse_multiplier(step)?;
    if stop < start {
        return Err(format!("grid stop {stop} is below start {start}"));
    }
    // A small allowance keeps e.g. 1.0:2.0:0.1 from dropping its stop point
    // to floating-point rounding.
    let span = (stop - start) / step + 1e-9;
    if span > MAX_GRID_POINTS as f64 {
        return Err(format!(
            "grid would have more than {MAX_GRID_POINTS} points"
        ));
    }
    let last = span.floor() as usize;
    Ok((0..=last).map(|i| start + i as f64 * step).collect())
}
