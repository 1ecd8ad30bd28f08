//! Globally adaptive Gauss–Kronrod (7, 15) quadrature for real- and
//! complex-valued integrands on finite and infinite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Values the integrator can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Stopping rule: the summed error estimate must fall below
/// `max(abs_tol, rel_tol * |estimate|)` within `max_subdivisions` bisections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && abs_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "tolerance",
                value: rel_tol.min(abs_tol),
                reason: "quadrature tolerances must be positive",
            });
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-13,
            max_subdivisions: 4000,
        }
    }
}

/// Integration domain. Infinite ends are mapped onto `(0, 1)`:
/// `x = a + u/(1-u)` for half-lines (keeps algebraically decaying
/// integrands integrable) and `x = log(u/(1-u))` for the whole line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite(f64, f64),
    /// `[a, inf)`.
    UpperHalfLine(f64),
    /// `(-inf, b]`.
    LowerHalfLine(f64),
    RealLine,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    pub subdivisions: usize,
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl<T> Eq for Segment<T> {}

impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One Kronrod panel; the error estimate is `|K15 - G7|`, which is
/// pessimistic for smooth integrands.
fn gauss_kronrod<T: QuadValue>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, &x) in XGK[..7].iter().enumerate() {
        let pair = f(center - half * x) + f(center + half * x);
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    (kronrod, (kronrod - gauss).magnitude())
}

/// Integrate `f` over `domain`.
pub fn integrate<T, F>(mut f: F, domain: Domain, spec: &QuadratureSpec) -> Result<Estimate<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    match domain {
        Domain::Finite(a, b) => integrate_finite(&mut f, a, b, spec),
        Domain::UpperHalfLine(a) => integrate_finite(
            &mut |u: f64| {
                let s = 1.0 - u;
                mapped(&mut f, a + u / s, 1.0 / (s * s))
            },
            0.0,
            1.0,
            spec,
        ),
        Domain::LowerHalfLine(b) => integrate_finite(
            &mut |u: f64| {
                let s = 1.0 - u;
                mapped(&mut f, b - u / s, 1.0 / (s * s))
            },
            0.0,
            1.0,
            spec,
        ),
        Domain::RealLine => integrate_finite(
            &mut |u: f64| mapped(&mut f, (u / (1.0 - u)).ln(), 1.0 / (u * (1.0 - u))),
            0.0,
            1.0,
            spec,
        ),
    }
}

fn mapped<T: QuadValue>(f: &mut impl FnMut(f64) -> T, x: f64, jacobian: f64) -> T {
    if !x.is_finite() {
        return T::zero();
    }
    let value = f(x);
    // A vanishing integrand wins over a huge Jacobian near the mapped end.
    if value.magnitude() == 0.0 {
        T::zero()
    } else {
        value * jacobian
    }
}

/// Integrate over `[points[0], points[last]]`, starting from the panels
/// between consecutive breakpoints. Breakpoints keep the first pass from
/// stepping over narrow features of a long interval.
pub fn integrate_with_breakpoints<T, F>(mut f: F, points: &[f64], spec: &QuadratureSpec) -> Result<Estimate<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    integrate_panels(&mut f, points, spec)
}

/// `0, 1, 2, 4, ...` up to `upper`, for integrands concentrated near the
/// origin of `[0, upper]`.
pub fn geometric_breakpoints(upper: f64) -> Vec<f64> {
    let mut points = vec![0.0];
    let mut x = 1.0;
    while x < upper {
        points.push(x);
        x *= 2.0;
    }
    points.push(upper);
    points
}

fn integrate_finite<T: QuadValue>(
    f: &mut impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate<T>> {
    integrate_panels(f, &[a, b], spec)
}

fn integrate_panels<T: QuadValue>(
    f: &mut impl FnMut(f64) -> T,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate<T>> {
    let mut heap = BinaryHeap::new();
    for pair in points.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a != b {
            let (value, error) = gauss_kronrod(f, a, b);
            heap.push(Segment { a, b, value, error });
        }
    }
    if heap.is_empty() {
        return Ok(Estimate {
            value: T::zero(),
            error: 0.0,
            subdivisions: 0,
        });
    }
    let mut subdivisions = 0;
    loop {
        let (total, total_error) = heap
            .iter()
            .fold((T::zero(), 0.0), |(v, e), s| (v + s.value, e + s.error));
        if !total.magnitude().is_finite() || !total_error.is_finite() {
            return Err(Error::QuadratureNoConvergence {
                estimate: total.magnitude(),
                error_estimate: total_error,
                subdivisions,
            });
        }
        if total_error <= spec.abs_tol.max(spec.rel_tol * total.magnitude()) {
            return Ok(Estimate {
                value: total,
                error: total_error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if subdivisions >= spec.max_subdivisions || !(worst.a < mid && mid < worst.b) {
            return Err(Error::QuadratureNoConvergence {
                estimate: total.magnitude(),
                error_estimate: total_error,
                subdivisions,
            });
        }
        subdivisions += 1;
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gauss_kronrod(f, lo, hi);
            heap.push(Segment { a: lo, b: hi, value, error });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tight() -> QuadratureSpec {
        QuadratureSpec::new(1e-13, 1e-15, 2000).unwrap()
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x: f64| x.powi(5) - 2.0 * x * x, Domain::Finite(-1.0, 2.0), &tight()).unwrap();
        assert!((r.value - (63.0 / 6.0 - 6.0)).abs() < 1e-13);
        assert_eq!(r.subdivisions, 0);
    }

    #[test]
    fn damped_gaussian_cosine() {
        // int_0^inf e^{-v^2/2} cos v dv = sqrt(pi/2) e^{-1/2}
        let r = integrate(
            |v: f64| (-0.5 * v * v).exp() * v.cos(),
            Domain::UpperHalfLine(0.0),
            &tight(),
        )
        .unwrap();
        assert!((r.value - (PI / 2.0).sqrt() * (-0.5f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn algebraic_tail() {
        let r = integrate(|x: f64| 1.0 / (x * x), Domain::UpperHalfLine(1.0), &tight()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = integrate(|x: f64| (x).exp(), Domain::LowerHalfLine(0.0), &tight()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn whole_line_complex() {
        // Fourier transform of the standard normal density at 1.5.
        let r = integrate(
            |x: f64| Complex64::new(0.0, 1.5 * x).exp() * (-0.5 * x * x).exp() / (2.0 * PI).sqrt(),
            Domain::RealLine,
            &tight(),
        )
        .unwrap();
        assert!((r.value - (-1.125f64).exp()).norm() < 1e-12);
    }

    #[test]
    fn breakpoints_find_narrow_peaks() {
        // A single Kronrod panel on [0, 5000] sees nothing of this bump.
        let bump = |x: f64| (-0.5 * x * x).exp();
        let blind = integrate(bump, Domain::Finite(0.0, 5000.0), &tight()).unwrap();
        assert!(blind.value < 1e-3);
        let r = integrate_with_breakpoints(bump, &geometric_breakpoints(5000.0), &tight()).unwrap();
        assert!((r.value - (PI / 2.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let spec = QuadratureSpec::new(1e-12, 1e-14, 5).unwrap();
        let r = integrate(|x: f64| (1.0 / x).sin(), Domain::Finite(1e-6, 1.0), &spec);
        assert!(matches!(r, Err(Error::QuadratureNoConvergence { .. })));
        assert!(QuadratureSpec::new(0.0, 1e-3, 10).is_err());
    }
}
