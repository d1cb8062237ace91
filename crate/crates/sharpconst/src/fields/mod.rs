//! Analytic test-function families with exact derivatives up to second
//! order, used as inequality inputs and as optimizing sequences.
//!
//! Complex-valued fields are pairs (real part, imaginary part) of
//! [`ScalarField`]; operations needing complex data combine the parts.

mod families;
mod profiles;

pub use families::{
    angular_mode, annulus_bump, compact_bump, gaussian_bump, halfspace_lift, interior_bump,
    log_stretch, mollified_log, plane_wave_bump, smooth_cutoff_radial, sphere_concentrated,
    talenti_profile, xn_times, AnnulusSpec,
};
pub use profiles::{Jet, Radial};

use crate::quad::{QuadError, RadialDecreasing};
use std::sync::Arc;

/// Domain a field lives on. Half-space means { x_n > 0 }.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Whole,
    HalfSpace,
    PuncturedPlane,
}

pub(crate) trait FieldImpl: Send + Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64], out: &mut [f64]);
    fn hessian(&self, x: &[f64], out: &mut [f64]);
}

#[derive(Clone)]
pub(crate) struct Meta {
    pub domain: Domain,
    pub support_radius: f64,
    pub inner_radius: f64,
    pub zero_angular_mean: bool,
    pub vanishes_on_boundary: bool,
    pub radial: Option<Arc<dyn Radial>>,
}

impl Meta {
    fn whole(support_radius: f64) -> Self {
        Meta {
            domain: Domain::Whole,
            support_radius,
            inner_radius: 0.0,
            zero_angular_mean: false,
            vanishes_on_boundary: false,
            radial: None,
        }
    }
}

/// An analytic scalar test function with exact value, gradient and Hessian.
#[derive(Clone)]
pub struct ScalarField {
    imp: Arc<dyn FieldImpl>,
    meta: Meta,
}

impl ScalarField {
    pub(crate) fn new(imp: Arc<dyn FieldImpl>, meta: Meta) -> Self {
        Self { imp, meta }
    }

    pub fn dim(&self) -> usize {
        self.imp.dim()
    }

    pub fn domain(&self) -> Domain {
        self.meta.domain
    }

    /// Radius beyond which |value| < 1e-16 (exactly zero for the compactly
    /// supported families).
    pub fn support_radius(&self) -> f64 {
        self.meta.support_radius
    }

    /// Radius of a centered ball on which the field vanishes identically.
    pub fn inner_radius(&self) -> f64 {
        self.meta.inner_radius
    }

    pub fn has_zero_angular_mean(&self) -> bool {
        self.meta.zero_angular_mean
    }

    pub fn vanishes_on_boundary(&self) -> bool {
        self.meta.vanishes_on_boundary
    }

    pub fn is_radial(&self) -> bool {
        self.meta.radial.is_some()
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.imp.value(x)
    }

    pub fn gradient(&self, x: &[f64], out: &mut [f64]) {
        self.imp.gradient(x, out)
    }

    pub fn hessian(&self, x: &[f64], out: &mut [f64]) {
        self.imp.hessian(x, out)
    }

    pub fn laplacian(&self, x: &[f64]) -> f64 {
        let n = self.dim();
        let mut h = vec![0.0; n * n];
        self.imp.hessian(x, &mut h);
        (0..n).map(|i| h[i * n + i]).sum()
    }

    pub fn value2(&self, x: f64, y: f64) -> f64 {
        self.imp.value(&[x, y])
    }

    pub fn gradient2(&self, x: f64, y: f64) -> [f64; 2] {
        let mut g = [0.0; 2];
        self.imp.gradient(&[x, y], &mut g);
        g
    }

    pub fn hessian2(&self, x: f64, y: f64) -> [f64; 4] {
        let mut h = [0.0; 4];
        self.imp.hessian(&[x, y], &mut h);
        h
    }

    pub fn laplacian2(&self, x: f64, y: f64) -> f64 {
        let h = self.hessian2(x, y);
        h[0] + h[3]
    }

    /// The radial profile as a nonincreasing level-set field, when the field
    /// is radial and nonincreasing; errors otherwise.
    pub fn radial_decreasing(&self) -> Result<RadialDecreasing, QuadError> {
        match &self.meta.radial {
            Some(profile) => {
                let p = Arc::clone(profile);
                RadialDecreasing::new(
                    move |r| p.jet(r).f,
                    profile.support_radius(),
                    self.dim() as u32,
                )
            }
            None => Err(QuadError::Domain(
                "field is not radial; level-set operations are unsupported".to_string(),
            )),
        }
    }

    /// The radial jet (value and two derivatives), when radial.
    pub fn radial_jet(&self, r: f64) -> Option<Jet> {
        self.meta.radial.as_ref().map(|p| p.jet(r))
    }

    /// Dilated field u_s(x) = u(s x).
    pub fn dilate(&self, s: f64) -> ScalarField {
        assert!(s > 0.0, "dilation factor must be positive");
        let mut meta = self.meta.clone();
        meta.support_radius /= s;
        meta.inner_radius /= s;
        meta.radial = None;
        ScalarField::new(
            Arc::new(Dilated { base: Arc::clone(&self.imp), s, dim: self.dim() }),
            meta,
        )
    }

    /// Pointwise scaling c * u.
    pub fn scale(&self, c: f64) -> ScalarField {
        let meta = self.meta.clone();
        ScalarField::new(
            Arc::new(Scaled { base: Arc::clone(&self.imp), c, dim: self.dim() }),
            meta,
        )
    }
}

struct Dilated {
    base: Arc<dyn FieldImpl>,
    s: f64,
    dim: usize,
}

impl FieldImpl for Dilated {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        let y: Vec<f64> = x.iter().map(|&v| v * self.s).collect();
        self.base.value(&y)
    }

    fn gradient(&self, x: &[f64], out: &mut [f64]) {
        let y: Vec<f64> = x.iter().map(|&v| v * self.s).collect();
        self.base.gradient(&y, out);
        for g in out.iter_mut() {
            *g *= self.s;
        }
    }

    fn hessian(&self, x: &[f64], out: &mut [f64]) {
        let y: Vec<f64> = x.iter().map(|&v| v * self.s).collect();
        self.base.hessian(&y, out);
        for h in out.iter_mut() {
            *h *= self.s * self.s;
        }
    }
}

struct Scaled {
    base: Arc<dyn FieldImpl>,
    c: f64,
    dim: usize,
}

impl FieldImpl for Scaled {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.c * self.base.value(x)
    }

    fn gradient(&self, x: &[f64], out: &mut [f64]) {
        self.base.gradient(x, out);
        for g in out.iter_mut() {
            *g *= self.c;
        }
    }

    fn hessian(&self, x: &[f64], out: &mut [f64]) {
        self.base.hessian(x, out);
        for h in out.iter_mut() {
            *h *= self.c;
        }
    }
}

struct ZeroField {
    dim: usize,
}

impl FieldImpl for ZeroField {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, _x: &[f64]) -> f64 {
        0.0
    }

    fn gradient(&self, _x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
    }

    fn hessian(&self, _x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
    }
}

/// A complex-valued field as a (re, im) pair of scalar fields.
#[derive(Clone)]
pub struct ComplexField {
    pub re: ScalarField,
    pub im: ScalarField,
}

impl ComplexField {
    pub fn from_real(re: ScalarField) -> Self {
        let dim = re.dim();
        let meta = re.meta.clone();
        let im = ScalarField::new(Arc::new(ZeroField { dim }), meta);
        Self { re, im }
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    pub fn domain(&self) -> Domain {
        self.re.domain()
    }

    pub fn support_radius(&self) -> f64 {
        self.re.support_radius().max(self.im.support_radius())
    }

    pub fn inner_radius(&self) -> f64 {
        self.re.inner_radius().min(self.im.inner_radius())
    }

    pub fn value_c(&self, x: &[f64]) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.value(x), self.im.value(x))
    }

    pub fn laplacian_c(&self, x: &[f64]) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.laplacian(x), self.im.laplacian(x))
    }

    pub fn dilate(&self, s: f64) -> ComplexField {
        ComplexField { re: self.re.dilate(s), im: self.im.dilate(s) }
    }
}

/// Mean of the field over the circle of radius r:
/// (1/2pi) int_0^{2pi} u(r, phi) dphi by the trapezoidal rule on 1024 points.
pub fn angular_mean(field: &ScalarField, r: f64) -> f64 {
    assert_eq!(field.dim(), 2, "angular_mean is a planar operation");
    assert!(r >= 0.0);
    let m = 1024;
    let mut sum = 0.0;
    for k in 0..m {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
        sum += field.value2(r * phi.cos(), r * phi.sin());
    }
    sum / m as f64
}
