//! Numerical experiments around the decay estimates: λ- and ε-sweeps,
//! exponent fits, sublevel measures and ratio verdicts.

mod csv;
mod epsilon;
mod fit;
mod morse;
mod sublevel;
mod sweep;

pub use csv::{
    fmt_f64, morse_csv, parse_csv, parse_sublevel_csv, parse_sweep_csv, sublevel_csv, sweep_csv, CsvTable, MORSE_COLUMNS, SUBLEVEL_COLUMNS,
    SWEEP_COLUMNS,
};
pub use epsilon::{epsilon_sweep, Regime, SublevelFit, SublevelReport, SublevelSample, SublevelVerdict, DELTA_TOLERANCE, MAX_FIT_EPSILON};
pub use fit::{fit_decay, DecayFit, MIN_FIT_SAMPLES};
pub use morse::{morse_case_check, MorseRow, MorseSign, MorseVerdict, DEFAULT_LEVEL};
pub use sublevel::{classify_cell, sublevel_measure, sublevel_measure_with, CellClass, SublevelConfig, SublevelMeasure};
pub use sweep::{
    bound_ratio, geometric_grid, lambda_sweep, verify_theorem1, DecayReport, DecaySample, TheoremBranch, TheoremVerdict, Trend,
    MAX_SLOPE_PER_DECADE, MAX_SPREAD,
};

use crate::phase_algebra::Rational;
use num_traits::One;

/// Power of ln λ in the decay bound: m for h > 1, and 2 on the h = 1 branch.
pub fn bound_log_power(h: &Rational, m: u8) -> u32 {
    if *h > Rational::one() {
        u32::from(m)
    } else {
        2
    }
}
