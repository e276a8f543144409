//! Globally adaptive 21-point Gauss-Kronrod quadrature over a chain of legs.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::path::{Integrand, Leg};
use super::QuadResult;
use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_221_930,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const EPS: f64 = f64::EPSILON;
/// Panels are split only while `|f jac|` can matter: anything this far below
/// the peak of the leg is resolved without the oscillation cap.
const NEGLIGIBLE: f64 = 40.0;
const SCAN: usize = 256;
const MAX_INITIAL: usize = 4000;

#[derive(Debug, Clone, Copy)]
struct Panel {
    leg: usize,
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    /// Part of `err` that is rounding in the rule itself; bisecting a panel
    /// whose error is all floor gains nothing.
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn integrand_at(leg: &Leg, f: &Integrand, s: f64) -> Complex64 {
    let p = leg.at(s);
    let v = f.log_at(p.k, p.arg).exp() * p.jac;
    if v.re.is_finite() && v.im.is_finite() {
        v
    } else if f.log_at(p.k, p.arg).re < 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(f64::INFINITY, 0.0)
    }
}

fn gk21(leg: &Leg, f: &Integrand, idx: usize, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = integrand_at(leg, f, centre);
    let mut resk = fc * WGK[10];
    let mut resg = Complex64::new(0.0, 0.0);
    let mut fv1 = [Complex64::new(0.0, 0.0); 10];
    let mut fv2 = [Complex64::new(0.0, 0.0); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = integrand_at(leg, f, centre - dx);
        let f2 = integrand_at(leg, f, centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resabs = fc.norm() * WGK[10];
    let mut resasc = (fc - mean).norm() * WGK[10];
    for j in 0..10 {
        resabs += WGK[j] * (fv1[j].norm() + fv2[j].norm());
        resasc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let scale = half.abs();
    resabs *= scale;
    resasc *= scale;
    let mut err = ((resk - resg) * half).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * EPS * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * EPS) {
        err = err.max(floor);
    }
    if !err.is_finite() || !resk.re.is_finite() || !resk.im.is_finite() {
        err = f64::INFINITY;
    }
    Panel {
        leg: idx,
        a,
        b,
        value: resk * half,
        err,
        floor,
    }
}

/// Initial panels: no wider than half a period of the local phase, except
/// where the integrand is negligible against the peak of the leg.
fn initial_panels(leg: &Leg, f: &Integrand) -> Vec<(f64, f64)> {
    let t = leg.domain();
    if t <= 0.0 {
        return Vec::new();
    }
    let peak = leg.log_peak(f, SCAN);
    let widest = t / 8.0;
    let narrowest = t / MAX_INITIAL as f64;
    let width_at = |s: f64| -> f64 {
        if leg.log_weight(f, s) < peak - NEGLIGIBLE {
            return widest;
        }
        let p = leg.at(s);
        let rate = (f.log_slope(p.k) * p.jac).im.abs();
        if rate > 0.0 {
            (std::f64::consts::PI / rate).clamp(narrowest, widest)
        } else {
            widest
        }
    };
    let mut out = Vec::new();
    let mut s = 0.0;
    while s < t {
        let mut w = width_at(s);
        w = w.min(width_at((s + w).min(t)));
        let e = if t - s < 1.5 * w { t } else { s + w };
        out.push((s, e));
        s = e;
    }
    out
}

/// Integrate `f` along the chain of legs to `abs_err <= tol max(floor, |value|)`.
/// `floor = 1` gives the mixed absolute/relative target used for the Laplace
/// integrals; a tiny floor makes it purely relative.
pub fn integrate(
    legs: &[Leg],
    f: &Integrand,
    tol: f64,
    floor: f64,
    node_ceiling: usize,
) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let mut settled: Vec<Panel> = Vec::new();
    let mut nodes = 0usize;
    for (idx, leg) in legs.iter().enumerate() {
        for (a, b) in initial_panels(leg, f) {
            heap.push(gk21(leg, f, idx, a, b));
            nodes += 21;
        }
    }
    let totals = |heap: &BinaryHeap<Panel>, settled: &[Panel]| {
        heap.iter()
            .chain(settled.iter())
            .fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| {
                (v + p.value, e + p.err)
            })
    };
    let (mut value, mut err) = totals(&heap, &settled);
    let mut since_resum = 0;
    loop {
        if err <= tol * value.norm().max(floor) || since_resum >= 200 {
            let (v, e) = totals(&heap, &settled);
            value = v;
            err = e;
            since_resum = 0;
            if err <= tol * value.norm().max(floor) {
                break;
            }
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        if nodes >= node_ceiling {
            heap.push(worst);
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        if worst.err <= worst.floor
            || (worst.b - worst.a) <= 1e-13 * (1.0 + worst.a.abs())
            || mid <= worst.a
            || mid >= worst.b
        {
            settled.push(worst);
            continue;
        }
        let leg = &legs[worst.leg];
        let left = gk21(leg, f, worst.leg, worst.a, mid);
        let right = gk21(leg, f, worst.leg, mid, worst.b);
        nodes += 42;
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        since_resum += 1;
    }
    let (value, err) = totals(&heap, &settled);
    let result = QuadResult {
        value,
        abs_err_est: err,
        nodes: nodes.max(1),
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("quadrature value"));
    }
    if err <= tol * value.norm().max(floor) {
        Ok(result)
    } else {
        Err(Error::ToleranceNotMet(result))
    }
}
