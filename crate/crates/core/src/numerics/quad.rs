//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Infinite limits are mapped onto a finite parameter interval before
//! integration: `θ = t/(1−t²)` on (−1, 1) for the whole line and
//! `θ = a ± t/(1−t)` on [0, 1) for half lines. Optional breakpoints are
//! mapped through the same transform and seed the initial partition, so a
//! narrow peak far out on a wide domain is never missed.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{invalid, Error, Result};

/// Tolerances and work limit for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec { abs_tol: 1e-10, rel_tol: 1e-10, max_subdivisions: 200 }
    }
}

impl QuadSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = QuadSpec { abs_tol, rel_tol, max_subdivisions };
        spec.validate()?;
        Ok(spec)
    }

    /// Tighter settings used by the inference routines.
    pub fn precise() -> Self {
        QuadSpec { abs_tol: 1e-14, rel_tol: 1e-12, max_subdivisions: 400 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(invalid("abs_tol must be positive"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(invalid("rel_tol must be positive"));
        }
        if self.max_subdivisions < 1 {
            return Err(invalid("max_subdivisions must be at least 1"));
        }
        Ok(())
    }
}

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub intervals: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (XGK[1], XGK[3], XGK[5], XGK[7]).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    piece: usize,
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    // max-heap on error; ties broken by position so the order is total and
    // the result does not depend on insertion history
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.piece.cmp(&self.piece))
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    let mut fv = [0.0_f64; 14];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv[2 * j] - mean).abs() + (fv[2 * j + 1] - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { piece: 0, a, b, value, error }
}

/// Parametrisation of the integration domain onto a finite interval.
#[derive(Debug, Clone, Copy)]
enum Map {
    Finite,
    Whole,
    Upper(f64),
    Lower(f64),
}

impl Map {
    fn theta_and_jacobian(self, t: f64) -> (f64, f64) {
        match self {
            Map::Finite => (t, 1.0),
            Map::Whole => {
                let d = 1.0 - t * t;
                (t / d, (1.0 + t * t) / (d * d))
            }
            Map::Upper(a) => {
                let d = 1.0 - t;
                (a + t / d, 1.0 / (d * d))
            }
            Map::Lower(b) => {
                let d = 1.0 - t;
                (b - t / d, 1.0 / (d * d))
            }
        }
    }
}

/// ∫ f over [lo, hi]; either limit may be infinite.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, spec: &QuadSpec) -> Result<Quadrature> {
    integrate_with_breaks(f, lo, hi, &[], spec)
}

/// ∫ f over [lo, hi] with an initial partition at `breaks` (points outside
/// the open domain are ignored). Either limit may be infinite.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    spec: &QuadSpec,
) -> Result<Quadrature> {
    spec.validate()?;
    if lo.is_nan() || hi.is_nan() {
        return Err(invalid("integration limits must not be NaN"));
    }
    if lo == hi {
        return Ok(Quadrature { value: 0.0, abs_error: 0.0, intervals: 0 });
    }
    if lo > hi {
        let q = integrate_with_breaks(f, hi, lo, breaks, spec)?;
        return Ok(Quadrature { value: -q.value, ..q });
    }
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x.is_finite() && x > lo && x < hi).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();

    // Infinite ends become half-lines anchored at the outermost breakpoint,
    // so that features near the breakpoints are not compressed into a
    // sliver of the mapped interval.
    let mut pieces: Vec<(Map, f64, f64)> = Vec::new();
    match (inner.first().copied(), inner.last().copied()) {
        (Some(first), Some(last)) => {
            if lo.is_finite() {
                pieces.push((Map::Finite, lo, first));
            } else {
                pieces.push((Map::Lower(first), 0.0, 1.0));
            }
            for w in inner.windows(2) {
                pieces.push((Map::Finite, w[0], w[1]));
            }
            if hi.is_finite() {
                pieces.push((Map::Finite, last, hi));
            } else {
                pieces.push((Map::Upper(last), 0.0, 1.0));
            }
        }
        _ => pieces.push(match (lo.is_finite(), hi.is_finite()) {
            (true, true) => (Map::Finite, lo, hi),
            (false, false) => (Map::Whole, -1.0, 1.0),
            (true, false) => (Map::Upper(lo), 0.0, 1.0),
            (false, true) => (Map::Lower(hi), 0.0, 1.0),
        }),
    }
    let g = |map: Map, t: f64| {
        let (theta, jac) = map.theta_and_jacobian(t);
        if !theta.is_finite() || !jac.is_finite() {
            return 0.0;
        }
        let v = f(theta);
        if v == 0.0 {
            0.0
        } else {
            v * jac
        }
    };
    let rule = |piece: usize, a: f64, b: f64| {
        let map = pieces[piece].0;
        let mut s = kronrod15(&|t| g(map, t), a, b);
        s.piece = piece;
        s
    };

    let mut heap = BinaryHeap::new();
    for (i, (_, a, b)) in pieces.iter().enumerate() {
        heap.push(rule(i, *a, *b));
    }
    let mut intervals = heap.len();
    loop {
        let (value, error) = heap.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        let tol = spec.abs_tol.max(spec.rel_tol * value.abs());
        if error.is_finite() && error <= tol {
            return Ok(Quadrature { value, abs_error: error, intervals });
        }
        if intervals >= spec.max_subdivisions {
            return Err(Error::QuadratureFailure { estimate: value, abs_error: error, subdivisions: intervals });
        }
        let worst = heap.pop().expect("partition is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // cannot split further in floating point
            return Err(Error::QuadratureFailure { estimate: value, abs_error: error, subdivisions: intervals });
        }
        heap.push(rule(worst.piece, worst.a, mid));
        heap.push(rule(worst.piece, mid, worst.b));
        intervals += 1;
    }
}
