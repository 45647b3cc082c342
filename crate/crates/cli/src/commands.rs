use crate::config::{ExperimentConfig, Kernel};
use crate::document::{Block, Document};
use num_complex::Complex64;
use osc_decay::decay_lab::{
    epsilon_sweep, fmt_f64, lambda_sweep, morse_case_check, morse_csv, sublevel_csv, sweep_csv, verify_theorem1, DecayReport,
    MorseRow, MorseSign, MorseVerdict, SublevelReport, SublevelSample, Trend, MORSE_COLUMNS, SUBLEVEL_COLUMNS, SWEEP_COLUMNS,
};
use osc_decay::integrator::{integrate_classical, integrate_envelope, integrate_ml};
use osc_decay::ml_special::{ml_bound_ratio, ml_eval, MLParams};
use osc_decay::newton_geometry::{analyze, format_rational, NewtonInvariants, PROVISIONAL_NOTE};
use osc_decay::phase_algebra::{parse_phase, Rational};
use osc_decay::Error;

pub const INTEGRATE_COLUMNS: &str = "lambda,re,im,abs,error_estimate,cells";

/// Why a command stopped without a verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    /// Bad flags, config or parameters: exit 2.
    Usage(String),
    /// The phase is outside the theory's reach: exit 3.
    Refused(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Refused(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Refused(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotNormalized { .. } | Error::UnboundedPrincipalFace | Error::EmptySupport | Error::ZeroPolynomial => {
                Failure::Refused(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// A finished run: the document to write and the exit status (0 or 1).
#[derive(Debug)]
pub struct Outcome {
    pub document: Document,
    pub exit: u8,
}

fn verdict_word(pass: Option<bool>) -> &'static str {
    match pass {
        Some(true) => "PASS",
        Some(false) => "FAIL",
        None => "N/A",
    }
}

fn exit_of(verdict: &Block) -> u8 {
    match verdict.get("verdict") {
        Some("FAIL") => 1,
        _ => u8::from(verdict.get("excluded").is_some_and(|n| n != "0")),
    }
}

fn push_trend(b: &mut Block, prefix: &str, t: &Trend) {
    b.push(&format!("{prefix}slope_per_decade"), fmt_f64(t.slope_per_decade));
    b.push(&format!("{prefix}max_over_min"), fmt_f64(t.max_over_min));
}

fn invariants(cfg: &ExperimentConfig) -> Result<NewtonInvariants, Failure> {
    let f = cfg.phase()?;
    Ok(analyze(&f, cfg.adapted)?)
}

fn height_header(inv: &NewtonInvariants) -> Vec<(String, String)> {
    let mut d = vec![("h".to_string(), format_rational(&inv.height_in_coords)), ("m".to_string(), inv.multiplicity_m.to_string())];
    if inv.m_provisional() {
        d.push(("note".into(), PROVISIONAL_NOTE.into()));
    }
    d
}

fn height_of(doc: &Document) -> Result<(Rational, u8), Failure> {
    let h = doc.derived("h").ok_or_else(|| Failure::Usage("missing h".into()))?;
    let m = doc.derived("m").ok_or_else(|| Failure::Usage("missing m".into()))?;
    let h: Rational = h.parse().map_err(|_| Failure::Usage(format!("bad h {h:?}")))?;
    let m: u8 = m.parse().map_err(|_| Failure::Usage(format!("bad m {m:?}")))?;
    Ok((h, m))
}

// ---- sweep ----

pub fn sweep_block(report: &DecayReport) -> Result<Block, Failure> {
    let mut b = Block::default();
    let verdict = if report.samples.len() >= 2 { Some(verify_theorem1(report)?) } else { None };
    b.push("verdict", verdict_word(verdict.as_ref().map(|v| v.pass)));
    b.push("branch", report.theorem_branch);
    b.push("h", format_rational(&report.h_used));
    b.push("m", report.m_used);
    b.push("log_power", report.log_power());
    b.push("samples", report.samples.len());
    b.push("excluded", report.excluded.len());
    b.push("bound_ratio_max", fmt_f64(report.bound_ratio_max));
    if let Some(v) = &verdict {
        push_trend(&mut b, "", &v.trend);
        if let Some(s) = &v.sharper {
            push_trend(&mut b, "sharper_", s);
        }
    }
    match &report.fit {
        Some(fit) => {
            b.push("fitted_p", fmt_f64(fit.p));
            b.push("fitted_q", fmt_f64(fit.q));
            b.push("fit_residual", fmt_f64(fit.residual));
        }
        None => b.push("fit", "refused"),
    }
    Ok(b)
}

pub fn sweep(cfg: &ExperimentConfig) -> Result<Outcome, Failure> {
    cfg.validate().map_err(Failure::Usage)?;
    let inv = invariants(cfg)?;
    let f = cfg.phase()?;
    let psi = cfg.amplitude()?;
    let report =
        lambda_sweep(&f, &psi, cfg.params()?, &cfg.lambda_grid()?, &inv.height_in_coords, inv.multiplicity_m, &cfg.quad()?)?;
    let mut derived = height_header(&inv);
    if !psi.is_smooth() {
        derived.push(("amplitude_smooth".into(), "false".into()));
    }
    for s in &report.excluded {
        derived.push(("excluded".into(), [s.lambda, s.abs_value, s.error_estimate].map(fmt_f64).join(",")));
    }
    let verdict = sweep_block(&report)?;
    let exit = exit_of(&verdict);
    let document = Document {
        command: "sweep".into(),
        config: cfg.clone(),
        derived,
        columns: SWEEP_COLUMNS.into(),
        rows: Vec::new(),
        table: sweep_csv(&report),
        verdict,
    };
    Ok(Outcome { document, exit })
}

fn replay_sweep(doc: &Document) -> Result<Block, Failure> {
    let (h, m) = height_of(doc)?;
    let values: Vec<(f64, f64, f64)> = doc.rows.iter().map(|r| (r[0], r[1], r[2])).collect();
    let mut excluded = Vec::new();
    for e in doc.derived_all("excluded") {
        let v: Vec<f64> = e.split(',').map(|x| x.parse()).collect::<Result<_, _>>().map_err(|_| Failure::Usage(format!("bad excluded row {e:?}")))?;
        if v.len() != 3 {
            return Err(Failure::Usage(format!("bad excluded row {e:?}")));
        }
        excluded.push((v[0], v[1], v[2]));
    }
    sweep_block(&DecayReport::from_values(&values, &excluded, &h, m)?)
}

// ---- sublevel ----

pub fn sublevel_block(report: &SublevelReport) -> Result<Block, Failure> {
    let v = report.verdict()?;
    let mut b = Block::default();
    b.push("verdict", verdict_word(v.pass));
    b.push("regime", v.regime);
    b.push("delta", fmt_f64(report.delta));
    b.push("m", report.m);
    b.push("log_power", v.log_power);
    b.push("samples", report.samples.len());
    if let Some(t) = &v.trend {
        push_trend(&mut b, "", t);
    }
    match &report.fitted {
        Some(fit) => {
            b.push("fitted_delta", fmt_f64(fit.delta));
            b.push("fitted_logpow", fmt_f64(fit.log_power));
            b.push("fit_residual", fmt_f64(fit.residual));
        }
        None => b.push("fit", "refused"),
    }
    if let Some(c) = v.delta_consistent {
        b.push("delta_consistent", c);
    }
    Ok(b)
}

pub fn sublevel(cfg: &ExperimentConfig) -> Result<Outcome, Failure> {
    cfg.validate().map_err(Failure::Usage)?;
    let inv = invariants(cfg)?;
    let f = cfg.phase()?;
    let domain = cfg.quad()?.domain;
    let report = epsilon_sweep(&f, domain, &cfg.epsilon_grid()?, &inv.height_in_coords, inv.multiplicity_m, &cfg.sublevel())?;
    let verdict = sublevel_block(&report)?;
    let exit = exit_of(&verdict);
    let document = Document {
        command: "sublevel".into(),
        config: cfg.clone(),
        derived: height_header(&inv),
        columns: SUBLEVEL_COLUMNS.into(),
        rows: Vec::new(),
        table: sublevel_csv(&report.samples),
        verdict,
    };
    Ok(Outcome { document, exit })
}

fn replay_sublevel(doc: &Document) -> Result<Block, Failure> {
    let (h, m) = height_of(doc)?;
    let samples = doc.rows.iter().map(|r| SublevelSample { epsilon: r[0], measure: r[1], measure_error: r[2] }).collect();
    sublevel_block(&SublevelReport::from_samples(samples, &h, m)?)
}

// ---- morse ----

pub fn morse_block(v: &MorseVerdict) -> Block {
    let mut b = Block::default();
    b.push("verdict", verdict_word(Some(v.pass)));
    b.push("sign", v.sign);
    b.push("level", fmt_f64(v.level));
    b.push("samples", v.rows.len());
    push_trend(&mut b, "inner_", &v.inner);
    push_trend(&mut b, "inner_tail_", &v.inner_tail);
    push_trend(&mut b, "outer_", &v.outer);
    push_trend(&mut b, "outer_tail_", &v.outer_tail);
    b
}

pub fn morse(cfg: &ExperimentConfig) -> Result<Outcome, Failure> {
    cfg.validate().map_err(Failure::Usage)?;
    let v = morse_case_check(cfg.sign, &cfg.lambda_grid()?, cfg.level, &cfg.quad()?)?;
    let verdict = morse_block(&v);
    let exit = exit_of(&verdict);
    let document = Document {
        command: "morse".into(),
        config: cfg.clone(),
        // the phase and amplitude keys are fixed by the sign here
        derived: vec![
            ("morse_phase".into(), if v.sign == MorseSign::Plus { "x^2 + y^2" } else { "x^2 - y^2" }.into()),
            ("morse_amplitude".into(), "square indicator over the domain".into()),
        ],
        columns: MORSE_COLUMNS.into(),
        rows: Vec::new(),
        table: morse_csv(&v),
        verdict,
    };
    Ok(Outcome { document, exit })
}

fn replay_morse(doc: &Document) -> Result<Block, Failure> {
    let sign = doc.config.sign;
    let rows = doc.rows.iter().map(|r| MorseRow::new(sign, r[0], r[1], r[3])).collect();
    Ok(morse_block(&MorseVerdict::from_rows(sign, doc.config.level, rows)?))
}

// ---- integrate ----

fn integrate_block(tolerance_met: bool) -> Block {
    let mut b = Block::default();
    b.push("verdict", verdict_word(Some(tolerance_met)));
    b.push("tolerance_met", tolerance_met);
    b
}

pub fn integrate(cfg: &ExperimentConfig) -> Result<Outcome, Failure> {
    cfg.validate().map_err(Failure::Usage)?;
    let f = cfg.phase()?;
    let psi = cfg.amplitude()?;
    let q = cfg.quad()?;
    let (value, err, cells, met) = match cfg.kernel {
        Kernel::Ml => {
            let r = integrate_ml(&f, &psi, cfg.params()?, cfg.lambda, &q)?;
            (r.value, r.abs_error_estimate, r.cells_used, r.tolerance_met)
        }
        Kernel::Classical => {
            let r = integrate_classical(&f, &psi, cfg.lambda, &q)?;
            (r.value, r.abs_error_estimate, r.cells_used, r.tolerance_met)
        }
        Kernel::Envelope => {
            let r = integrate_envelope(&f, &psi, cfg.lambda, &q)?;
            (Complex64::new(r.value, 0.0), r.abs_error_estimate, r.cells_used, r.tolerance_met)
        }
    };
    let row = [cfg.lambda, value.re, value.im, value.norm(), err].map(fmt_f64).join(",");
    let verdict = integrate_block(met);
    let mut derived = vec![("tolerance_met".to_string(), met.to_string())];
    if !psi.is_smooth() {
        derived.push(("amplitude_smooth".into(), "false".into()));
    }
    let document = Document {
        command: "integrate".into(),
        config: cfg.clone(),
        derived,
        columns: INTEGRATE_COLUMNS.into(),
        rows: Vec::new(),
        table: format!("{INTEGRATE_COLUMNS}\n{row},{cells}\n"),
        verdict,
    };
    Ok(Outcome { document, exit: u8::from(!met) })
}

fn replay_integrate(doc: &Document) -> Result<Block, Failure> {
    match doc.derived("tolerance_met") {
        Some("true") => Ok(integrate_block(true)),
        Some("false") => Ok(integrate_block(false)),
        _ => Err(Failure::Usage("missing tolerance_met".into())),
    }
}

// ---- report ----

pub fn columns_of(command: &str) -> Option<&'static str> {
    match command {
        "sweep" => Some(SWEEP_COLUMNS),
        "sublevel" => Some(SUBLEVEL_COLUMNS),
        "morse" => Some(MORSE_COLUMNS),
        "integrate" => Some(INTEGRATE_COLUMNS),
        _ => None,
    }
}

/// Recomputes the verdict of a written document.
pub struct Replay {
    pub command: String,
    pub verdict: Block,
    pub reproduced: bool,
    pub exit: u8,
}

pub fn report(text: &str) -> Result<Replay, Failure> {
    let doc = Document::parse(text, columns_of).map_err(Failure::Usage)?;
    let verdict = match doc.command.as_str() {
        "sweep" => replay_sweep(&doc)?,
        "sublevel" => replay_sublevel(&doc)?,
        "morse" => replay_morse(&doc)?,
        "integrate" => replay_integrate(&doc)?,
        other => return Err(Failure::Usage(format!("cannot report on {other:?}"))),
    };
    let reproduced = verdict == doc.verdict;
    let exit = if reproduced { exit_of(&verdict) } else { 1 };
    Ok(Replay { command: doc.command, verdict, reproduced, exit })
}

// ---- ml and newton ----

/// `a+bi`, `a-bi`, `bi`, `a`; exponents allowed.
pub fn parse_complex(text: &str) -> Result<Complex64, Failure> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Failure::Usage(format!("cannot parse complex number {text:?}"));
    let num = |t: &str| -> Result<f64, Failure> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(s.parse().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let z = match split {
        Some(i) => Complex64::new(body[..i].parse().map_err(|_| bad())?, num(&body[i..])?),
        None => Complex64::new(0.0, num(body)?),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

pub fn ml(alpha: f64, beta: f64, z: &str, tol: f64, with_ratio: bool) -> Result<Block, Failure> {
    let p = MLParams::new(alpha, beta)?;
    let z = parse_complex(z)?;
    let e = ml_eval(p, z, tol)?;
    let mut b = Block::default();
    b.push("re", fmt_f64(e.re));
    b.push("im", fmt_f64(e.im));
    b.push("abs", fmt_f64(e.norm()));
    if with_ratio {
        if z.re != 0.0 {
            return Err(Failure::Usage("--bound-ratio needs z on the imaginary axis".into()));
        }
        b.push("bound_ratio", fmt_f64(ml_bound_ratio(p, z.im)?));
    }
    Ok(b)
}

pub const NEWTON_COLUMNS: &str = "phase,d,nu,m,principal_face,adapted_declared";

pub struct NewtonOutput {
    pub text: String,
    pub warnings: Vec<String>,
}

pub fn newton(phase: &str, adapted: bool) -> Result<NewtonOutput, Failure> {
    let f = parse_phase(phase).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut warnings: Vec<String> = f.normalization_warnings().into_iter().map(|t| format!("term {t} violates f(0)=0, ∇f(0)=0")).collect();
    let inv = analyze(&f, adapted)?;
    if inv.m_provisional() {
        warnings.push(PROVISIONAL_NOTE.into());
    }
    let vertices: Vec<String> = inv.hull_vertices.iter().map(|(j, k)| format!("({j},{k})")).collect();
    let faces: Vec<String> = inv.compact_faces.iter().map(|c| c.to_string()).collect();
    let d = format_rational(&inv.distance_d);
    let lines = [
        ("phase", f.to_string()),
        ("d", d.clone()),
        ("nu", inv.nu.to_string()),
        ("m", inv.multiplicity_m.to_string()),
        ("principal_face", inv.principal_face.to_string()),
        ("principal_part", inv.principal_part.to_string()),
        ("hull_vertices", vertices.join(" ")),
        ("compact_faces", faces.join("; ")),
        ("height_in_coords", format_rational(&inv.height_in_coords)),
        ("adapted_declared", inv.adapted_declared.to_string()),
    ];
    let mut text = String::new();
    for (k, v) in &lines {
        text += &format!("{k:<18}{v}\n");
    }
    text += &format!("\n{NEWTON_COLUMNS}\n{},{d},{},{},\"{}\",{}\n", f, inv.nu, inv.multiplicity_m, inv.principal_face, inv.adapted_declared);
    Ok(NewtonOutput { text, warnings })
}
