//! Real-argument Airy functions `Ai`, `Bi`, `Ai'`, `Bi'` and the Airy
//! modulus `Ai^2 + Bi^2`, as needed by the transition-region expansions.
//!
//! Three evaluation zones:
//! * `|x| <= 4.5` (configurable seam): Maclaurin series, no cancellation at
//!   this range in either function for double precision;
//! * `4.5 < |x| <= 8.5`: Taylor stepping of the Airy ODE `y'' = x y` from
//!   frozen high-precision values at the nearest integer node. Neither the
//!   Maclaurin series (cancellation grows like `e^{2 zeta}` on the positive
//!   axis) nor the asymptotic series (optimal-truncation error ~ `e^{-2 zeta}`)
//!   can hold 1e-10 relative accuracy in this band;
//! * beyond: standard asymptotic forms in `zeta = (2/3) |x|^{3/2}` with
//!   min-term truncation.

use crate::{Error, Result};

/// `Ai`, `Bi` and derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValues {
    pub ai: f64,
    pub bi: f64,
    pub aip: f64,
    pub bip: f64,
}

/// Evaluation seams; exposed so tests can move them.
#[derive(Debug, Clone, Copy)]
pub struct AirySeams {
    /// Maclaurin series up to this |x|.
    pub series: f64,
    /// Node-stepping up to this |x|; asymptotics beyond.
    pub asymptotic: f64,
}

impl Default for AirySeams {
    fn default() -> Self {
        Self {
            series: 4.5,
            asymptotic: 8.5,
        }
    }
}

/// Supported domain bound.
pub const AIRY_X_MAX: f64 = 40.0;

/// Ai(0), Bi(0), Ai'(0), Bi'(0).
pub const AI_0: f64 = 0.355_028_053_887_817_24;
pub const BI_0: f64 = 0.614_926_627_446_000_74;
pub const AIP_0: f64 = -0.258_819_403_792_806_8;
pub const BIP_0: f64 = 0.448_288_357_353_826_36;

/// First zeros of `Ai` (all negative), for phase-branch bookkeeping.
pub const AI_ZEROS: [f64; 8] = [
    -2.338_107_410_459_767,
    -4.087_949_444_130_970_6,
    -5.520_559_828_095_551,
    -6.786_708_090_071_759,
    -7.944_133_587_120_853,
    -9.022_650_853_340_98,
    -10.040_174_341_558_086,
    -11.008_524_303_733_263,
];

// Frozen 25-digit values at integer nodes 1..=8: (Ai, Bi, Ai', Bi') at +n and -n.
#[allow(clippy::type_complexity)]
const NODES_POS: [(f64, f64, f64, f64); 8] = [
    (0.135_292_416_312_881_42, 1.207_423_594_952_871_3, -0.159_147_441_296_793_21, 0.932_435_933_392_775_6),
    (0.034_924_130_423_274_379, 3.298_094_999_978_214_7, -0.053_090_384_433_653_632, 4.100_682_049_932_889_9),
    (0.006_591_139_357_460_719_1, 14.037_328_963_730_232, -0.011_912_976_705_951_318, 22.922_214_966_382_17),
    (0.000_951_563_851_204_801_87, 83.847_071_408_468_14, -0.001_958_640_950_204_178_9, 161.926_683_504_613_4),
    (0.000_108_344_428_136_074_42, 657.792_044_171_171_18, -0.000_247_413_890_868_462_48, 1_435.819_080_217_982_5),
    (9.947_694_360_252_889_6e-6, 6_536.446_104_809_863_5, -2.476_520_039_703_495_5e-5, 15_725.602_621_930_477),
    (7.492_128_863_997_167e-7, 80_327.790_709_430_247, -2.008_150_894_738_792e-6, 209_552.670_873_971_32),
    (4.692_207_616_099_231_6e-8, 1_199_586.004_124_46, -1.341_439_297_906_786_6e-7, 3_354_342.312_744_538_9),
];

#[allow(clippy::type_complexity)]
const NODES_NEG: [(f64, f64, f64, f64); 8] = [
    (0.535_560_883_292_352_12, 0.103_997_389_496_944_61, -0.010_160_567_116_645_209, 0.592_375_626_422_792_35),
    (0.227_407_428_201_685_58, -0.412_302_587_956_398_49, 0.618_259_020_741_691_04, 0.278_795_166_921_169_52),
    (-0.378_814_293_677_658_07, -0.198_289_626_374_926_54, 0.314_583_769_216_598_81, -0.675_611_222_685_258_54),
    (-0.070_265_532_949_289_515, 0.392_234_705_706_999_29, -0.790_628_575_368_581_38, -0.116_670_567_438_340_89),
    (0.350_761_009_024_114_32, -0.138_369_134_901_600_58, 0.327_192_818_554_443_14, 0.778_411_773_001_899_25),
    (-0.329_145_173_629_823_11, -0.146_698_376_670_557_04, 0.345_935_487_281_342_89, -0.812_898_785_105_067),
    (0.184_280_835_250_505_64, 0.293_762_071_854_414_02, -0.771_008_168_410_126_55, 0.498_244_590_058_113_49),
    (-0.052_705_050_356_386_203, -0.331_251_580_751_137_86, 0.935_560_938_198_306_55, -0.159_450_497_812_981_39),
];

/// Evaluate all four Airy functions at `x` with the default seams.
pub fn airy_eval(x: f64) -> Result<AiryValues> {
    airy_eval_with(x, &AirySeams::default())
}

/// Evaluate with explicit seams (primarily for seam-consistency tests).
pub fn airy_eval_with(x: f64, seams: &AirySeams) -> Result<AiryValues> {
    if !x.is_finite() || x.abs() > AIRY_X_MAX {
        return Err(Error::Domain(format!(
            "airy_eval: |x| must be <= {AIRY_X_MAX}, got {x}"
        )));
    }
    let ax = x.abs();
    if ax <= seams.series {
        Ok(maclaurin(x))
    } else if ax <= seams.asymptotic {
        Ok(step_from_node(x))
    } else {
        Ok(asymptotic(x))
    }
}

/// `Ai^2(x) + Bi^2(x)`, strictly positive.
pub fn airy_modulus_sq(x: f64) -> Result<f64> {
    let v = airy_eval(x)?;
    Ok(v.ai * v.ai + v.bi * v.bi)
}

/// Maclaurin series: `Ai = c1 f - c2 g`, `Bi = sqrt(3) (c1 f + c2 g)` with
/// `f = sum 3^k (1/3)_k x^{3k} / (3k)!`, `g = sum 3^k (2/3)_k x^{3k+1} / (3k+1)!`.
fn maclaurin(x: f64) -> AiryValues {
    let c1 = AI_0;
    let c2 = -AIP_0;
    let x3 = x * x * x;
    // f, f', g, g'
    let (mut f, mut fp, mut g, mut gp) = (1.0, 0.0, x, 1.0);
    let mut tf = 1.0; // term of f
    let mut tg = x; // term of g
    for k in 0..200usize {
        let kf = k as f64;
        // next f term: multiply by x^3 (3k+1)/( (3k+1)(3k+2)(3k+3) ) = x^3 / ((3k+2)(3k+3))
        let new_tf = tf * x3 / ((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        let new_tg = tg * x3 / ((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        f += new_tf;
        g += new_tg;
        fp += new_tf * (3.0 * kf + 3.0) / x;
        gp += new_tg * (3.0 * kf + 4.0) / x;
        tf = new_tf;
        tg = new_tg;
        if tf.abs() < 1e-18 * f.abs() && tg.abs() < 1e-18 * g.abs().max(1e-300) {
            break;
        }
    }
    if x == 0.0 {
        return AiryValues {
            ai: AI_0,
            bi: BI_0,
            aip: AIP_0,
            bip: BIP_0,
        };
    }
    let s3 = 3.0_f64.sqrt();
    AiryValues {
        ai: c1 * f - c2 * g,
        bi: s3 * (c1 * f + c2 * g),
        aip: c1 * fp - c2 * gp,
        bip: s3 * (c1 * fp + c2 * gp),
    }
}

/// Taylor stepping of `y'' = x y` from the nearest frozen node.
fn step_from_node(x: f64) -> AiryValues {
    let n = x.abs().round() as usize;
    let n = n.clamp(1, 8);
    let x0 = if x >= 0.0 { n as f64 } else { -(n as f64) };
    let (ai0, bi0, aip0, bip0) = if x >= 0.0 { NODES_POS[n - 1] } else { NODES_NEG[n - 1] };
    let h = x - x0;
    let (ai, aip) = taylor_ode_step(x0, ai0, aip0, h);
    let (bi, bip) = taylor_ode_step(x0, bi0, bip0, h);
    AiryValues { ai, bi, aip, bip }
}

/// One Taylor step for `y'' = x y`: coefficients obey
/// `c_{k+2} = (x0 c_k + c_{k-1}) / ((k+1)(k+2))`.
fn taylor_ode_step(x0: f64, y0: f64, yp0: f64, h: f64) -> (f64, f64) {
    const N: usize = 36;
    let mut c = [0.0f64; N];
    c[0] = y0;
    c[1] = yp0;
    c[2] = 0.5 * x0 * y0;
    for k in 1..N - 2 {
        c[k + 2] = (x0 * c[k] + c[k - 1]) / (((k + 1) * (k + 2)) as f64);
    }
    let mut y = 0.0;
    let mut yp = 0.0;
    for k in (1..N).rev() {
        y = y * h + c[k];
        yp = yp * h + k as f64 * c[k];
    }
    y = y * h + c[0];
    (y, yp)
}

/// Asymptotic coefficient `u_k` of the Airy expansions; `v_k` is derived.
fn airy_uv(kmax: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = Vec::with_capacity(kmax + 1);
    let mut v = Vec::with_capacity(kmax + 1);
    u.push(1.0);
    v.push(1.0);
    for k in 1..=kmax {
        let kf = k as f64;
        let prev = u[k - 1];
        let next = prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / (216.0 * kf * (2.0 * kf - 1.0));
        u.push(next);
        v.push(next * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf));
    }
    (u, v)
}

fn asymptotic(x: f64) -> AiryValues {
    let (u, v) = airy_uv(24);
    let ax = x.abs();
    let zeta = 2.0 / 3.0 * ax.powf(1.5);
    let sp = std::f64::consts::PI.sqrt();
    let q = ax.powf(0.25);
    if x > 0.0 {
        // min-term truncated sums of u_k / zeta^k with alternating / plain signs
        let (mut s_ai, mut s_bi, mut s_aip, mut s_bip) = (0.0, 0.0, 0.0, 0.0);
        let mut prev = f64::INFINITY;
        let mut zp = 1.0;
        for k in 0..u.len() {
            let tu = u[k] * zp;
            if tu.abs() > prev {
                break;
            }
            prev = tu.abs();
            let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
            s_ai += sgn * tu;
            s_bi += tu;
            s_aip += sgn * v[k] * zp;
            s_bip += v[k] * zp;
            zp /= zeta;
        }
        let em = (-zeta).exp();
        let ep = zeta.exp();
        AiryValues {
            ai: em * s_ai / (2.0 * sp * q),
            bi: ep * s_bi / (sp * q),
            aip: -q * em * s_aip / (2.0 * sp),
            bip: q * ep * s_bip / sp,
        }
    } else {
        let c = (zeta - std::f64::consts::FRAC_PI_4).cos();
        let s = (zeta - std::f64::consts::FRAC_PI_4).sin();
        let (mut se, mut so, mut pe, mut po) = (0.0, 0.0, 0.0, 0.0);
        let mut prev = f64::INFINITY;
        for k in 0..u.len() / 2 {
            let te = u[2 * k] / zeta.powi(2 * k as i32);
            if te.abs() > prev {
                break;
            }
            prev = te.abs();
            let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
            se += sgn * te;
            so += sgn * u[2 * k + 1] / zeta.powi(2 * k as i32 + 1);
            pe += sgn * v[2 * k] / zeta.powi(2 * k as i32);
            po += sgn * v[2 * k + 1] / zeta.powi(2 * k as i32 + 1);
        }
        AiryValues {
            ai: (c * se + s * so) / (sp * q),
            bi: (-s * se + c * so) / (sp * q),
            aip: q * (s * pe - c * po) / sp,
            bip: q * (c * pe + s * po) / sp,
        }
    }
}
