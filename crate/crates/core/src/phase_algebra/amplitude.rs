use super::{eval_phase, parse_phase, PolynomialPhase};
use crate::error::{Error, Result};
use std::fmt;

/// The square [−ρ,ρ]² the integrals and sublevel sets live on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkingDomain {
    pub rho: f64,
}

impl Default for WorkingDomain {
    fn default() -> Self {
        WorkingDomain { rho: 1.0 }
    }
}

impl WorkingDomain {
    pub fn new(rho: f64) -> Result<Self> {
        if rho.is_finite() && rho > 0.0 {
            Ok(WorkingDomain { rho })
        } else {
            Err(Error::InvalidArgument(format!("rho must be positive, got {rho}")))
        }
    }

    pub fn area(&self) -> f64 {
        4.0 * self.rho * self.rho
    }
}

/// Amplitude ψ.
#[derive(Debug, Clone, PartialEq)]
pub enum Amplitude {
    /// Radial C^∞ cutoff: 1 on |x| ≤ σ, 0 on |x| ≥ 2σ.
    Bump { sigma: f64 },
    /// 1 on the closed disk |x| ≤ radius.
    IndicatorDisk { radius: f64 },
    /// 1 on the closed square max(|x₁|,|x₂|) ≤ radius.
    IndicatorSquare { radius: f64 },
    /// ψ = p on the whole working domain.
    Polynomial(PolynomialPhase),
}

/// exp(−1/t) for t > 0, else 0.
fn glue(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Smooth step: 0 for s ≤ 0, 1 for s ≥ 1.
fn smooth_step(s: f64) -> f64 {
    let a = glue(s);
    let b = glue(1.0 - s);
    if a + b == 0.0 {
        0.0
    } else {
        a / (a + b)
    }
}

impl Amplitude {
    /// Parses `bump:σ`, `disk:r`, `square:r` or `poly:<phase>`.
    pub fn parse(spec: &str) -> Result<Amplitude> {
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("amplitude `{spec}`: expected kind:value")))?;
        let num = || -> Result<f64> {
            let v: f64 = arg
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("amplitude `{spec}`: bad number")))?;
            if v.is_finite() && v > 0.0 {
                Ok(v)
            } else {
                Err(Error::InvalidArgument(format!("amplitude `{spec}`: size must be positive")))
            }
        };
        match kind.trim() {
            "bump" => Ok(Amplitude::Bump { sigma: num()? }),
            "disk" => Ok(Amplitude::IndicatorDisk { radius: num()? }),
            "square" => Ok(Amplitude::IndicatorSquare { radius: num()? }),
            "poly" => Ok(Amplitude::Polynomial(parse_phase(arg)?)),
            other => Err(Error::InvalidArgument(format!("unknown amplitude kind `{other}`"))),
        }
    }

    /// Indicators are discontinuous; reports flag them.
    pub fn is_smooth(&self) -> bool {
        matches!(self, Amplitude::Bump { .. } | Amplitude::Polynomial(_))
    }

    /// Support must fit in the domain square.
    pub fn check_domain(&self, domain: WorkingDomain) -> Result<()> {
        let reach = match self {
            Amplitude::Bump { sigma } => 2.0 * sigma,
            Amplitude::IndicatorDisk { radius } | Amplitude::IndicatorSquare { radius } => *radius,
            Amplitude::Polynomial(_) => return Ok(()),
        };
        if reach <= domain.rho * (1.0 + 1e-12) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "amplitude {self} reaches {reach}, outside the domain [-{0},{0}]^2",
                domain.rho
            )))
        }
    }

    /// Radius of a radial support, if the amplitude is radial.
    pub fn radial_support(&self) -> Option<f64> {
        match self {
            Amplitude::Bump { sigma } => Some(2.0 * sigma),
            Amplitude::IndicatorDisk { radius } => Some(*radius),
            _ => None,
        }
    }

    /// Radial profile ψ(r) for radial kinds.
    pub fn radial_profile(&self, r: f64) -> f64 {
        match self {
            Amplitude::Bump { sigma } => 1.0 - smooth_step(r / sigma - 1.0),
            Amplitude::IndicatorDisk { radius } => {
                if r <= *radius {
                    1.0
                } else {
                    0.0
                }
            }
            _ => f64::NAN,
        }
    }

    /// Half-width of the square that contains the support.
    pub fn support_half_width(&self, domain: WorkingDomain) -> f64 {
        match self {
            Amplitude::Bump { sigma } => (2.0 * sigma).min(domain.rho),
            Amplitude::IndicatorDisk { radius } | Amplitude::IndicatorSquare { radius } => radius.min(domain.rho),
            Amplitude::Polynomial(_) => domain.rho,
        }
    }

    /// ‖ψ‖_∞ on the domain: exact for bumps and indicators, a 1024² sample
    /// maximum times 1.05 for polynomials.
    pub fn sup_norm(&self, domain: WorkingDomain) -> f64 {
        match self {
            Amplitude::Polynomial(p) => {
                const N: usize = 1024;
                let h = 2.0 * domain.rho / (N - 1) as f64;
                let mut m = 0.0f64;
                for i in 0..N {
                    let x = -domain.rho + h * i as f64;
                    for j in 0..N {
                        let y = -domain.rho + h * j as f64;
                        m = m.max(eval_phase(p, x, y).abs());
                    }
                }
                1.05 * m
            }
            _ => 1.0,
        }
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Amplitude::Bump { sigma } => write!(f, "bump:{sigma}"),
            Amplitude::IndicatorDisk { radius } => write!(f, "disk:{radius}"),
            Amplitude::IndicatorSquare { radius } => write!(f, "square:{radius}"),
            Amplitude::Polynomial(p) => write!(f, "poly:{p}"),
        }
    }
}

/// ψ(x₁,x₂).
pub fn eval_amplitude(a: &Amplitude, x1: f64, x2: f64) -> f64 {
    match a {
        Amplitude::Bump { .. } | Amplitude::IndicatorDisk { .. } => a.radial_profile(x1.hypot(x2)),
        Amplitude::IndicatorSquare { radius } => {
            if x1.abs() <= *radius && x2.abs() <= *radius {
                1.0
            } else {
                0.0
            }
        }
        Amplitude::Polynomial(p) => eval_phase(p, x1, x2),
    }
}
