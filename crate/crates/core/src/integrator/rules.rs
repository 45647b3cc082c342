//! Gauss–Kronrod pairs (QUADPACK tables) and a small adaptive driver for
//! smooth real integrands.

use crate::error::{Error, Result};
use num_complex::Complex64;

#[allow(clippy::excessive_precision)]
const XGK15: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK15: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG15: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[allow(clippy::excessive_precision)]
const XGK21: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK21: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
#[allow(clippy::excessive_precision)]
const WG21: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[allow(clippy::excessive_precision)]
const XGK31: [f64; 16] = [
    0.998002298693397060285172840152271,
    0.987992518020485428489565718586613,
    0.967739075679139134257347978784337,
    0.937273392400705904307758947710209,
    0.897264532344081900882509656454496,
    0.848206583410427216200648320774217,
    0.790418501442465932967649294817947,
    0.724417731360170047416186054613938,
    0.650996741297416970533735895313275,
    0.570972172608538847537226737253911,
    0.485081863640239680693655740232351,
    0.394151347077563369897207370981045,
    0.299180007153168812166780024266389,
    0.201194093997434522300628303394596,
    0.101142066918717499027074231447392,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK31: [f64; 16] = [
    0.005377479872923348987792051430128,
    0.015007947329316122538374763075807,
    0.025460847326715320186874001019653,
    0.035346360791375846222037948478360,
    0.044589751324764876608227299373280,
    0.053481524690928087265343147239430,
    0.062009567800670640285139230960803,
    0.069854121318728258709520077099147,
    0.076849680757720378894432777482659,
    0.083080502823133021038289247286104,
    0.088564443056211770647275443693774,
    0.093126598170825321225486872747346,
    0.096642726983623678505179907627589,
    0.099173598721791959332393173484603,
    0.100769845523875595044946662617570,
    0.101330007014791549017374792767493,
];
#[allow(clippy::excessive_precision)]
const WG31: [f64; 8] = [
    0.030753241996117268354628393577204,
    0.070366047488108124709267416450667,
    0.107159220467171935011869546685869,
    0.139570677926154314447804794511028,
    0.166269205816993933553200860481209,
    0.186161000015562211026800561866423,
    0.198431485327111576456118326443839,
    0.202578241925561272880620199967519,
];

/// Kronrod nodes on [−1,1] in ascending order with both weight sets
/// (Gauss weight 0 where the node is Kronrod-only).
#[derive(Debug, Clone)]
pub(crate) struct Rule {
    pub x: Vec<f64>,
    pub wk: Vec<f64>,
    pub wg: Vec<f64>,
}

/// Kronrod estimate, embedded Gauss estimate, and Σ wₖ|f|.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RuleSum<T> {
    pub kronrod: T,
    pub gauss: T,
    pub abs: f64,
}

impl Rule {
    pub fn new(order: usize) -> Result<Rule> {
        let (xgk, wgk, wg): (&[f64], &[f64], &[f64]) = match order {
            15 => (&XGK15, &WGK15, &WG15),
            21 => (&XGK21, &WGK21, &WG21),
            31 => (&XGK31, &WGK31, &WG31),
            _ => return Err(Error::InvalidArgument(format!("rule_order must be 15, 21 or 31, got {order}"))),
        };
        let half = xgk.len() - 1;
        let gauss_w = |i: usize| if i % 2 == 1 { wg[i / 2] } else { 0.0 };
        let mut r = Rule { x: Vec::new(), wk: Vec::new(), wg: Vec::new() };
        for i in 0..half {
            r.x.push(-xgk[i]);
            r.wk.push(wgk[i]);
            r.wg.push(gauss_w(i));
        }
        r.x.push(0.0);
        r.wk.push(wgk[half]);
        r.wg.push(gauss_w(half));
        for i in (0..half).rev() {
            r.x.push(xgk[i]);
            r.wk.push(wgk[i]);
            r.wg.push(gauss_w(i));
        }
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    /// Nodes mapped to [a, b].
    pub fn nodes(&self, a: f64, b: f64) -> impl Iterator<Item = f64> + '_ {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        self.x.iter().map(move |&t| c + h * t)
    }

    pub fn apply_complex<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> RuleSum<Complex64> {
        let h = 0.5 * (b - a);
        let mut k = Complex64::new(0.0, 0.0);
        let mut g = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        for ((x, &wk), &wg) in self.nodes(a, b).zip(&self.wk).zip(&self.wg) {
            let v = f(x);
            k += v * wk;
            g += v * wg;
            abs += wk * v.norm();
        }
        RuleSum { kronrod: k * h, gauss: g * h, abs: abs * h.abs() }
    }

    /// Combine precomputed node values.
    pub fn combine(&self, a: f64, b: f64, values: &[Complex64], errs: &[f64], l1: &[f64]) -> (RuleSum<Complex64>, f64) {
        let h = 0.5 * (b - a);
        let mut k = Complex64::new(0.0, 0.0);
        let mut g = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        let mut inner = 0.0;
        for i in 0..values.len() {
            k += values[i] * self.wk[i];
            g += values[i] * self.wg[i];
            abs += self.wk[i] * l1[i];
            inner += self.wk[i] * errs[i];
        }
        (RuleSum { kronrod: k * h, gauss: g * h, abs: abs * h.abs() }, inner * h.abs())
    }
}

/// Adaptive GK21 for a real integrand on [a, b] with interior breakpoints.
/// Returns (value, error estimate).
pub(crate) fn adaptive_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], abs_tol: f64, max_panels: usize) -> (f64, f64) {
    let rule = Rule::new(21).expect("21 is supported");
    let eval = |lo: f64, hi: f64| {
        let s = rule.apply_complex(lo, hi, |x| Complex64::new(f(x), 0.0));
        (s.kronrod.re, (s.kronrod.re - s.gauss.re).abs())
    };
    let mut pts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&t| t > a && t < b))
        .chain(std::iter::once(b))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut panels: Vec<(f64, f64, f64, f64)> = pts
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let (v, e) = eval(w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();
    loop {
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= abs_tol || panels.len() >= max_panels {
            break;
        }
        let (i, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3).then(y.0.cmp(&x.0)))
            .unwrap();
        let (lo, hi, _, _) = panels[i];
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        let (v1, e1) = eval(lo, mid);
        let (v2, e2) = eval(mid, hi);
        panels[i] = (lo, mid, v1, e1);
        panels.insert(i + 1, (mid, hi, v2, e2));
    }
    (panels.iter().map(|p| p.2).sum(), panels.iter().map(|p| p.3).sum())
}
