//! Test-only oracles, built without the library's closed forms.
#![allow(dead_code, clippy::excessive_precision)]

use reuleaux::geom::{Point3, Tolerances};
use reuleaux::{PointConfig, ReuleauxStructure};

pub fn structure(name: &str) -> ReuleauxStructure {
    ReuleauxStructure::build(PointConfig::generator(name, Tolerances::default()).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------
// Adaptive Gauss–Kronrod (7, 15) quadrature.

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
/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15(f: &mut dyn FnMut(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let s = f(c - h * XGK[i]) + f(c + h * XGK[i]);
        kron += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

fn adapt(f: &mut dyn FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64, depth: u32) -> f64 {
    let (k, err) = gk15(f, lo, hi);
    if err <= tol || depth == 0 {
        return k;
    }
    let mid = 0.5 * (lo + hi);
    adapt(f, lo, mid, 0.5 * tol, depth - 1) + adapt(f, mid, hi, 0.5 * tol, depth - 1)
}

/// `∫_lo^hi f` to absolute tolerance `tol`.
pub fn integrate(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    if hi == lo {
        return 0.0;
    }
    adapt(&mut f, lo, hi, tol, 40)
}

/// `∫_a^b ∫_{lo(x)}^{hi(x)} f(x, y) dy dx`.
pub fn integrate_2d(
    f: impl Fn(f64, f64) -> f64,
    a: f64,
    b: f64,
    lo: impl Fn(f64) -> f64,
    hi: impl Fn(f64) -> f64,
    tol: f64,
) -> f64 {
    integrate(
        |x| integrate(|y| f(x, y), lo(x), hi(x), 0.1 * tol),
        a,
        b,
        tol,
    )
}

// ---------------------------------------------------------------------------
// One dual edge pair placed in the coordinates `b = a e₃`, `c = −a e₃`,
// `b′ = √(1−a²) e₁`, `c′ = √(1−a²)(cos φ, sin φ, 0)`.

pub struct SpecialPair {
    pub theta: f64,
    pub theta_prime: f64,
    pub a: f64,
    pub phi: f64,
    pub phi_prime: f64,
    pub b: Point3,
    pub c: Point3,
    pub bp: Point3,
    pub cp: Point3,
}

impl SpecialPair {
    pub fn new(theta: f64, theta_prime: f64) -> Self {
        let a = (0.5 * theta).sin();
        let phi = 2.0 * ((0.5 * theta_prime).sin() / (0.5 * theta).cos()).asin();
        let phi_prime = 2.0 * ((0.5 * theta).sin() / (0.5 * theta_prime).cos()).asin();
        let r = (1.0 - a * a).sqrt();
        SpecialPair {
            theta,
            theta_prime,
            a,
            phi,
            phi_prime,
            b: Point3::new(0.0, 0.0, a),
            c: Point3::new(0.0, 0.0, -a),
            bp: Point3::new(r, 0.0, 0.0),
            cp: Point3::new(r * phi.cos(), r * phi.sin(), 0.0),
        }
    }

    /// The same pair placed at arbitrary points, angles taken from distances.
    pub fn from_points(b: Point3, c: Point3, bp: Point3, cp: Point3) -> Self {
        let theta = 2.0 * (0.5 * b.dist(c)).asin();
        let theta_prime = 2.0 * (0.5 * bp.dist(cp)).asin();
        SpecialPair {
            b,
            c,
            bp,
            cp,
            ..SpecialPair::new(theta, theta_prime)
        }
    }

    fn sliver_bounds(&self) -> (f64, impl Fn(f64) -> f64) {
        // R_c: |x − c| = 1, x₃ ≥ 0, (x − c)·u ≤ 0 with u = (b′ − c) × (c′ − c).
        let u = (self.bp - self.c).cross(self.cp - self.c);
        assert!(u.z > 0.0);
        let t_lo = self.a.asin();
        let t_hi = move |psi: f64| (-(u.x * psi.cos() + u.y * psi.sin())).atan2(u.z);
        (t_lo, t_hi)
    }

    fn sphere_point(&self, psi: f64, t: f64) -> Point3 {
        self.c + Point3::new(t.cos() * psi.cos(), t.cos() * psi.sin(), t.sin())
    }

    /// Area of the sliver patch `R_c` by quadrature.
    pub fn sliver_area(&self, tol: f64) -> f64 {
        let (t_lo, t_hi) = self.sliver_bounds();
        integrate_2d(|_psi, t| t.cos(), 0.0, self.phi, |_| t_lo, t_hi, tol)
    }

    /// `∫_{R_c} x·n dS` by quadrature, `n` the outward sphere normal.
    pub fn sliver_flux(&self, tol: f64) -> f64 {
        let (t_lo, t_hi) = self.sliver_bounds();
        integrate_2d(
            |psi, t| {
                let y = self.sphere_point(psi, t);
                y.dot(y - self.c) * t.cos()
            },
            0.0,
            self.phi,
            |_| t_lo,
            t_hi,
            tol,
        )
    }

    fn eta_frame(&self) -> (Point3, Point3, Point3) {
        let m = self.bp.midpoint(self.cp);
        let v = (self.bp - self.cp).normalized();
        let r0 = self.b - m;
        (m, r0, v.cross(r0))
    }

    /// `η(s)`, the kept edge rotated from `b` about the line through `b′`, `c′`.
    pub fn eta(&self, s: f64) -> Point3 {
        let (m, r0, w0) = self.eta_frame();
        m + r0 * s.cos() + w0 * s.sin()
    }

    /// `(X, ∂ₛX, ∂ₜX)` of the spindle parametrization, differentiated by hand.
    pub fn spindle(&self, s: f64, t: f64) -> (Point3, Point3, Point3) {
        let (m, r0, w0) = self.eta_frame();
        let eta = m + r0 * s.cos() + w0 * s.sin();
        let d_eta = r0 * (-s.sin()) + w0 * s.cos();
        let (st, ct) = (self.theta_prime.sin(), self.theta_prime.cos());
        let q = (self.cp - self.bp * ct) / st;
        let k = 1.0 - t.cos() - t.sin() * (1.0 - ct) / st;
        let dk = t.sin() - t.cos() * (1.0 - ct) / st;
        let x = eta * k + self.bp * t.cos() + q * t.sin();
        let xs = d_eta * k;
        let xt = eta * dk - self.bp * t.sin() + q * t.cos();
        (x, xs, xt)
    }

    pub fn spindle_area(&self, tol: f64) -> f64 {
        integrate_2d(
            |s, t| {
                let (_, xs, xt) = self.spindle(s, t);
                xs.cross(xt).norm()
            },
            0.0,
            self.phi_prime,
            |_| 0.0,
            |_| self.theta_prime,
            tol,
        )
    }

    /// `∫_{R_s} x·n dS` with `n ∝ ∂ₛX × ∂ₜX`.
    pub fn spindle_flux(&self, tol: f64) -> f64 {
        integrate_2d(
            |s, t| {
                let (x, xs, xt) = self.spindle(s, t);
                x.dot(xs.cross(xt))
            },
            0.0,
            self.phi_prime,
            |_| 0.0,
            |_| self.theta_prime,
            tol,
        )
    }
}

// ---------------------------------------------------------------------------
// Rigid motions.

/// Rotation from a unit quaternion built from three uniforms in `[0, 1)`.
pub fn rotation(u1: f64, u2: f64, u3: f64) -> [[f64; 3]; 3] {
    use std::f64::consts::TAU;
    let (s1, s2) = ((1.0 - u1).sqrt(), u1.sqrt());
    let (w, x, y, z) = (
        s1 * (TAU * u2).sin(),
        s1 * (TAU * u2).cos(),
        s2 * (TAU * u3).sin(),
        s2 * (TAU * u3).cos(),
    );
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

pub fn apply(r: &[[f64; 3]; 3], shift: Point3, p: Point3) -> Point3 {
    let v = [p.x, p.y, p.z];
    let row = |i: usize| r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2];
    Point3::new(row(0), row(1), row(2)) + shift
}
