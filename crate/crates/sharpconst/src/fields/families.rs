//! The registered test-function families.

use super::profiles::{
    AnnulusProfile, CompactBumpProfile, CutoffProfile, GaussProfile, Jet, LogStretchProfile,
    MollifiedLogProfile, Radial, TalentiProfile,
};
use super::{ComplexField, Domain, FieldImpl, Meta, ScalarField};
use num_complex::Complex64;
use std::sync::Arc;

/// A purely radial field f(|x|) in any dimension.
pub(crate) struct RadialWhole {
    profile: Arc<dyn Radial>,
    dim: usize,
}

impl RadialWhole {
    fn radius(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl FieldImpl for RadialWhole {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.profile.jet(Self::radius(x)).f
    }

    fn gradient(&self, x: &[f64], out: &mut [f64]) {
        let r = Self::radius(x);
        if r < 1e-300 {
            out.fill(0.0);
            return;
        }
        let j = self.profile.jet(r);
        for (o, &xi) in out.iter_mut().zip(x) {
            *o = j.df * xi / r;
        }
    }

    fn hessian(&self, x: &[f64], out: &mut [f64]) {
        let n = self.dim;
        let r = Self::radius(x);
        if r < 1e-12 * self.profile.support_radius() {
            // radial profiles used here have df(0) = 0, so H -> f''(0) I
            let d2 = self.profile.jet(0.0).d2f;
            out.fill(0.0);
            for i in 0..n {
                out[i * n + i] = d2;
            }
            return;
        }
        let j = self.profile.jet(r);
        let radial_part = (j.d2f - j.df / r) / (r * r);
        for i in 0..n {
            for k in 0..n {
                let mut h = radial_part * x[i] * x[k];
                if i == k {
                    h += j.df / r;
                }
                out[i * n + k] = h;
            }
        }
    }
}

struct Shifted {
    base: Arc<dyn FieldImpl>,
    center: Vec<f64>,
}

impl FieldImpl for Shifted {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let y: Vec<f64> = x.iter().zip(&self.center).map(|(a, c)| a - c).collect();
        self.base.value(&y)
    }

    fn gradient(&self, x: &[f64], out: &mut [f64]) {
        let y: Vec<f64> = x.iter().zip(&self.center).map(|(a, c)| a - c).collect();
        self.base.gradient(&y, out);
    }

    fn hessian(&self, x: &[f64], out: &mut [f64]) {
        let y: Vec<f64> = x.iter().zip(&self.center).map(|(a, c)| a - c).collect();
        self.base.hessian(&y, out);
    }
}

fn radial_field(profile: Arc<dyn Radial>, dim: usize, domain: Domain) -> ScalarField {
    let meta = Meta {
        domain,
        support_radius: profile.support_radius(),
        inner_radius: profile.inner_radius(),
        zero_angular_mean: false,
        vanishes_on_boundary: false,
        radial: Some(Arc::clone(&profile)),
    };
    ScalarField::new(Arc::new(RadialWhole { profile, dim }), meta)
}

fn shifted_field(profile: Arc<dyn Radial>, dim: usize, center: &[f64]) -> ScalarField {
    assert_eq!(center.len(), dim);
    let center_norm = center.iter().map(|v| v * v).sum::<f64>().sqrt();
    if center_norm == 0.0 {
        return radial_field(profile, dim, Domain::Whole);
    }
    let meta = Meta::whole(profile.support_radius() + center_norm);
    let base = Arc::new(RadialWhole { profile, dim });
    ScalarField::new(Arc::new(Shifted { base, center: center.to_vec() }), meta)
}

/// Gaussian bump exp(-|x-c|^2 / (2 width^2)).
pub fn gaussian_bump(dim: usize, center: &[f64], width: f64) -> ScalarField {
    shifted_field(Arc::new(GaussProfile { width }), dim, center)
}

/// Exactly compactly supported bump around `center`, vanishing for
/// |x - c| >= radius.
pub fn compact_bump(dim: usize, center: &[f64], radius: f64) -> ScalarField {
    shifted_field(Arc::new(CompactBumpProfile { radius }), dim, center)
}

/// A compactly supported bump placed strictly inside the half-space
/// { x_n > 0 }: requires center_n > radius.
pub fn interior_bump(dim: usize, center: &[f64], radius: f64) -> ScalarField {
    assert!(
        center[dim - 1] > radius,
        "interior bump must not touch the boundary: center_n = {}, radius = {radius}",
        center[dim - 1]
    );
    let mut f = compact_bump(dim, center, radius);
    f.meta.domain = Domain::HalfSpace;
    f.meta.vanishes_on_boundary = true;
    f
}

/// Radial cutoff: identically 1 on [0, r0], smooth descent to 0 on [r0, r1].
pub fn smooth_cutoff_radial(dim: usize, r0: f64, r1: f64) -> ScalarField {
    radial_field(Arc::new(CutoffProfile { r0, r1 }), dim, Domain::Whole)
}

/// Radial annular plateau bump; in the plane with a0 > 0 this is a
/// punctured-plane field.
pub fn annulus_bump(dim: usize, a0: f64, a1: f64, b0: f64, b1: f64) -> ScalarField {
    let domain = if dim == 2 && a0 > 0.0 { Domain::PuncturedPlane } else { Domain::Whole };
    radial_field(Arc::new(AnnulusProfile::new(a0, a1, b0, b1)), dim, domain)
}

/// Mollified planar logarithm: cutoff(|x|) * log sqrt(|x|^2 + eps^2),
/// equal to log|x| on eps-free scales; the cutoff descends over [1, 2].
pub fn mollified_log(eps: f64) -> ScalarField {
    assert!(eps > 0.0 && eps < 0.25, "mollification scale out of range: {eps}");
    radial_field(
        Arc::new(MollifiedLogProfile { eps, cutoff: CutoffProfile { r0: 1.0, r1: 2.0 } }),
        2,
        Domain::Whole,
    )
}

/// Talenti profile (1+|x|^2)^{-(m-2)/2} in R^m with a smooth log-scale far
/// cutoff descending over [cutoff_start, cutoff_end].
pub fn talenti_profile(m: u32, cutoff_start: f64, cutoff_end: f64) -> ScalarField {
    assert!(m >= 3, "the Sobolev optimizer needs dimension >= 3");
    assert!(1.0 < cutoff_start && cutoff_start < cutoff_end);
    radial_field(
        Arc::new(TalentiProfile { m, cutoff_start, cutoff_end }),
        m as usize,
        Domain::Whole,
    )
}

/// Slowly log-modulated radial profile |x| psi(log|x| / (2T)) on the
/// punctured plane; saturates the radial Hardy-type estimate as T grows.
pub fn log_stretch(t_span: f64) -> ScalarField {
    assert!(t_span > 0.5);
    radial_field(Arc::new(LogStretchProfile { t_span }), 2, Domain::PuncturedPlane)
}

/// Annulus geometry for modulated families.
#[derive(Debug, Clone, Copy)]
pub struct AnnulusSpec {
    pub a0: f64,
    pub a1: f64,
    pub b0: f64,
    pub b1: f64,
}

impl AnnulusSpec {
    pub fn plateau(a0: f64, a1: f64, b0: f64, b1: f64) -> Self {
        assert!(0.0 <= a0 && a0 < a1 && a1 <= b0 && b0 < b1);
        Self { a0, a1, b0, b1 }
    }

    /// Annulus concentrated at radius scale `scale`: plateau on
    /// [scale/2, scale] with ramps one octave wide.
    pub fn at_scale(scale: f64) -> Self {
        Self::plateau(0.25 * scale, 0.5 * scale, scale, 2.0 * scale)
    }

    fn profile(&self) -> Arc<AnnulusProfile> {
        Arc::new(AnnulusProfile::new(self.a0, self.a1, self.b0, self.b1))
    }
}

trait ComplexCore: Send + Sync {
    fn value_c(&self, x: f64, y: f64) -> Complex64;
    fn gradient_c(&self, x: f64, y: f64) -> [Complex64; 2];
    fn hessian_c(&self, x: f64, y: f64) -> [Complex64; 4];
}

struct PartField {
    core: Arc<dyn ComplexCore>,
    imag: bool,
}

impl PartField {
    fn pick(&self, z: Complex64) -> f64 {
        if self.imag {
            z.im
        } else {
            z.re
        }
    }
}

impl FieldImpl for PartField {
    fn dim(&self) -> usize {
        2
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.pick(self.core.value_c(x[0], x[1]))
    }

    fn gradient(&self, x: &[f64], out: &mut [f64]) {
        let g = self.core.gradient_c(x[0], x[1]);
        out[0] = self.pick(g[0]);
        out[1] = self.pick(g[1]);
    }

    fn hessian(&self, x: &[f64], out: &mut [f64]) {
        let h = self.core.hessian_c(x[0], x[1]);
        for i in 0..4 {
            out[i] = self.pick(h[i]);
        }
    }
}

fn complex_pair(core: Arc<dyn ComplexCore>, meta: Meta) -> ComplexField {
    ComplexField {
        re: ScalarField::new(Arc::new(PartField { core: Arc::clone(&core), imag: false }), meta.clone()),
        im: ScalarField::new(Arc::new(PartField { core, imag: true }), meta),
    }
}

/// z^k g(|z|): a pure angular Fourier mode with a Gaussian-type radial
/// profile smooth at the origin.
struct AngularCore {
    k: u32,
    profile: GaussProfile,
}

impl AngularCore {
    fn radial(&self, r: f64) -> Jet {
        self.profile.jet(r)
    }
}

impl ComplexCore for AngularCore {
    fn value_c(&self, x: f64, y: f64) -> Complex64 {
        let z = Complex64::new(x, y);
        let r = z.norm();
        z.powu(self.k) * self.radial(r).f
    }

    fn gradient_c(&self, x: f64, y: f64) -> [Complex64; 2] {
        let z = Complex64::new(x, y);
        let r = z.norm();
        if r < 1e-300 {
            // only k = 1 has a nonzero gradient limit at the origin
            if self.k == 1 {
                let g0 = self.radial(0.0).f;
                return [Complex64::new(g0, 0.0), Complex64::new(0.0, g0)];
            }
            return [Complex64::new(0.0, 0.0); 2];
        }
        let j = self.radial(r);
        let k = self.k;
        let wk1 = z.powu(k.saturating_sub(1)) * k as f64;
        let w = z.powu(k);
        let w1 = if k == 0 { Complex64::new(0.0, 0.0) } else { wk1 };
        let w2 = if k == 0 { Complex64::new(0.0, 0.0) } else { wk1 * Complex64::i() };
        [
            w1 * j.f + w * (j.df * x / r),
            w2 * j.f + w * (j.df * y / r),
        ]
    }

    fn hessian_c(&self, x: f64, y: f64) -> [Complex64; 4] {
        let z = Complex64::new(x, y);
        let r = z.norm();
        let k = self.k;
        if r < 1e-300 {
            let zero = Complex64::new(0.0, 0.0);
            let mut h = [zero; 4];
            if k == 0 {
                let d2 = self.radial(0.0).d2f;
                h[0] = Complex64::new(d2, 0.0);
                h[3] = Complex64::new(d2, 0.0);
            } else if k == 2 {
                let g0 = self.radial(0.0).f;
                // Hessian of z^2 at 0: [[2, 2i],[2i, -2]] g(0)
                h[0] = Complex64::new(2.0 * g0, 0.0);
                h[1] = Complex64::new(0.0, 2.0 * g0);
                h[2] = h[1];
                h[3] = Complex64::new(-2.0 * g0, 0.0);
            }
            return h;
        }
        let j = self.radial(r);
        let kf = k as f64;
        let w = z.powu(k);
        let w1 = if k == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            z.powu(k - 1) * kf
        };
        let wd = [w1, w1 * Complex64::i()];
        let w11 = if k < 2 {
            Complex64::new(0.0, 0.0)
        } else {
            z.powu(k - 2) * (kf * (kf - 1.0))
        };
        // second derivatives of z^k: [w11, i w11; i w11, -w11]
        let wdd = [w11, w11 * Complex64::i(), w11 * Complex64::i(), -w11];
        let xv = [x, y];
        let radial_part = (j.d2f - j.df / r) / (r * r);
        let mut h = [Complex64::new(0.0, 0.0); 4];
        for i in 0..2 {
            for l in 0..2 {
                let mut hr = radial_part * xv[i] * xv[l];
                if i == l {
                    hr += j.df / r;
                }
                h[i * 2 + l] = wdd[i * 2 + l] * j.f
                    + wd[i] * (j.df * xv[l] / r)
                    + wd[l] * (j.df * xv[i] / r)
                    + w * hr;
            }
        }
        h
    }
}

/// Angular mode k with a Gaussian radial envelope: u = z^k e^{-|z|^2/(2w^2)}.
pub fn angular_mode(k: u32, width: f64) -> ComplexField {
    let support = 10.0 * width + 2.0;
    let meta = Meta {
        domain: Domain::Whole,
        support_radius: support,
        inner_radius: 0.0,
        zero_angular_mean: k >= 1,
        vanishes_on_boundary: false,
        radial: None,
    };
    complex_pair(Arc::new(AngularCore { k, profile: GaussProfile { width } }), meta)
}

/// Modulated annular bump e^{i xi . x} eta(|x|).
struct PlaneWaveCore {
    xi: [f64; 2],
    env: Arc<AnnulusProfile>,
}

impl ComplexCore for PlaneWaveCore {
    fn value_c(&self, x: f64, y: f64) -> Complex64 {
        let r = x.hypot(y);
        let j = self.env.jet(r);
        if j.f == 0.0 && j.df == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(1.0, self.xi[0] * x + self.xi[1] * y) * j.f
    }

    fn gradient_c(&self, x: f64, y: f64) -> [Complex64; 2] {
        let r = x.hypot(y);
        let j = self.env.jet(r);
        if j.f == 0.0 && j.df == 0.0 {
            return [Complex64::new(0.0, 0.0); 2];
        }
        let e = Complex64::from_polar(1.0, self.xi[0] * x + self.xi[1] * y);
        let xv = [x, y];
        let mut g = [Complex64::new(0.0, 0.0); 2];
        for i in 0..2 {
            g[i] = e * (Complex64::i() * self.xi[i] * j.f + j.df * xv[i] / r);
        }
        g
    }

    fn hessian_c(&self, x: f64, y: f64) -> [Complex64; 4] {
        let r = x.hypot(y);
        let j = self.env.jet(r);
        if j.f == 0.0 && j.df == 0.0 && j.d2f == 0.0 {
            return [Complex64::new(0.0, 0.0); 4];
        }
        let e = Complex64::from_polar(1.0, self.xi[0] * x + self.xi[1] * y);
        let xv = [x, y];
        let radial_part = (j.d2f - j.df / r) / (r * r);
        let mut h = [Complex64::new(0.0, 0.0); 4];
        for i in 0..2 {
            for l in 0..2 {
                let mut eta_il = radial_part * xv[i] * xv[l];
                if i == l {
                    eta_il += j.df / r;
                }
                let eta_i = j.df * xv[i] / r;
                let eta_l = j.df * xv[l] / r;
                h[i * 2 + l] = e
                    * (-self.xi[i] * self.xi[l] * j.f
                        + Complex64::i() * (self.xi[i] * eta_l + self.xi[l] * eta_i)
                        + eta_il);
            }
        }
        h
    }
}

/// Plane wave e^{i xi . x} times a smooth annular envelope. With a positive
/// inner radius the parts are punctured-plane fields.
pub fn plane_wave_bump(xi: [f64; 2], spec: AnnulusSpec) -> ComplexField {
    let env = spec.profile();
    let meta = Meta {
        domain: if spec.a0 > 0.0 { Domain::PuncturedPlane } else { Domain::Whole },
        support_radius: env.support_radius(),
        inner_radius: env.inner_radius(),
        zero_angular_mean: false,
        vanishes_on_boundary: false,
        radial: None,
    };
    complex_pair(Arc::new(PlaneWaveCore { xi, env }), meta)
}

/// eta(|x|) rho_eps(direction): an angular bump of width eps around the
/// direction theta with a radial annular envelope.
struct SphereConcentrated {
    target: [f64; 2],
    inv_eps2: f64,
    env: Arc<AnnulusProfile>,
}

impl FieldImpl for SphereConcentrated {
    fn dim(&self) -> usize {
        2
    }

    fn value(&self, x: &[f64]) -> f64 {
        let r = x[0].hypot(x[1]);
        let j = self.env.jet(r);
        if j.f == 0.0 {
            return 0.0;
        }
        let q = (x[0] * self.target[0] + x[1] * self.target[1]) / r;
        j.f * ((q - 1.0) * self.inv_eps2).exp()
    }

    fn gradient(&self, x: &[f64], out: &mut [f64]) {
        let r = x[0].hypot(x[1]);
        let j = self.env.jet(r);
        if j.f == 0.0 && j.df == 0.0 {
            out.fill(0.0);
            return;
        }
        let t = self.target;
        let dot = x[0] * t[0] + x[1] * t[1];
        let q = dot / r;
        let e = ((q - 1.0) * self.inv_eps2).exp();
        for i in 0..2 {
            let dq = t[i] / r - dot * x[i] / (r * r * r);
            out[i] = j.df * x[i] / r * e + j.f * e * self.inv_eps2 * dq;
        }
    }

    fn hessian(&self, x: &[f64], out: &mut [f64]) {
        let r = x[0].hypot(x[1]);
        let j = self.env.jet(r);
        if j.f == 0.0 && j.df == 0.0 && j.d2f == 0.0 {
            out.fill(0.0);
            return;
        }
        let t = self.target;
        let dot = x[0] * t[0] + x[1] * t[1];
        let q = dot / r;
        let e = ((q - 1.0) * self.inv_eps2).exp();
        let r3 = r * r * r;
        let r5 = r3 * r * r;
        let dq = [t[0] / r - dot * x[0] / r3, t[1] / r - dot * x[1] / r3];
        let radial_part = (j.d2f - j.df / r) / (r * r);
        for i in 0..2 {
            for l in 0..2 {
                let d2q = -(t[i] * x[l] + t[l] * x[i]) / r3 - if i == l { dot / r3 } else { 0.0 }
                    + 3.0 * dot * x[i] * x[l] / r5;
                let he = e * (self.inv_eps2 * self.inv_eps2 * dq[i] * dq[l] + self.inv_eps2 * d2q);
                let ge = [e * self.inv_eps2 * dq[0], e * self.inv_eps2 * dq[1]];
                let geta = [j.df * x[0] / r, j.df * x[1] / r];
                let mut eta_il = radial_part * x[i] * x[l];
                if i == l {
                    eta_il += j.df / r;
                }
                out[i * 2 + l] = eta_il * e + geta[i] * ge[l] + geta[l] * ge[i] + j.f * he;
            }
        }
    }
}

/// Directionally concentrated field h(x) = eta(|x|) rho_eps(x/|x| - theta).
pub fn sphere_concentrated(theta: f64, eps: f64, r0: f64, r1: f64) -> ScalarField {
    assert!(eps > 0.0 && r0 > 0.0 && r1 > r0);
    let env = Arc::new(AnnulusProfile::new(0.5 * r0, r0, r1, 1.5 * r1));
    let meta = Meta {
        domain: Domain::PuncturedPlane,
        support_radius: env.support_radius(),
        inner_radius: env.inner_radius(),
        zero_angular_mean: false,
        vanishes_on_boundary: false,
        radial: None,
    };
    ScalarField::new(
        Arc::new(SphereConcentrated {
            target: [theta.cos(), theta.sin()],
            inv_eps2: 1.0 / (eps * eps),
            env,
        }),
        meta,
    )
}

/// x_n^{power} v(x) on the half-space; power 1/2 and -1/2 are the lifts
/// relating the weighted and Hardy-difference forms.
struct XnPower {
    base: Arc<dyn FieldImpl>,
    power: f64,
}

impl FieldImpl for XnPower {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let n = self.dim();
        let xn = x[n - 1];
        xn.powf(self.power) * self.base.value(x)
    }

    fn gradient(&self, x: &[f64], out: &mut [f64]) {
        let n = self.dim();
        let xn = x[n - 1];
        let v = self.base.value(x);
        self.base.gradient(x, out);
        let w = xn.powf(self.power);
        for g in out.iter_mut() {
            *g *= w;
        }
        out[n - 1] += self.power * xn.powf(self.power - 1.0) * v;
    }

    fn hessian(&self, x: &[f64], out: &mut [f64]) {
        let n = self.dim();
        let xn = x[n - 1];
        let v = self.base.value(x);
        let mut g = vec![0.0; n];
        self.base.gradient(x, &mut g);
        self.base.hessian(x, out);
        let w = xn.powf(self.power);
        let w1 = self.power * xn.powf(self.power - 1.0);
        for h in out.iter_mut() {
            *h *= w;
        }
        for i in 0..n {
            out[i * n + (n - 1)] += w1 * g[i];
            out[(n - 1) * n + i] += w1 * g[i];
        }
        if self.power != 1.0 {
            out[(n - 1) * n + (n - 1)] +=
                self.power * (self.power - 1.0) * xn.powf(self.power - 2.0) * v;
        }
    }
}

/// x_n times a smooth field: the basic boundary-vanishing half-space family.
pub fn xn_times(base: ScalarField) -> ScalarField {
    let mut meta = base.meta.clone();
    let dim = base.dim();
    meta.domain = Domain::HalfSpace;
    meta.vanishes_on_boundary = true;
    meta.radial = None;
    // |x_n v| <= support * |v|
    meta.support_radius = base.support_radius();
    ScalarField::new(Arc::new(XnPower { base: base.imp, power: 1.0 }), meta)
}

/// x_n^{power} v: the half-space lift. Positive powers vanish on the
/// boundary; the field is only evaluated at x_n > 0.
pub fn halfspace_lift(power: f64, base: ScalarField) -> ScalarField {
    let mut meta = base.meta.clone();
    meta.domain = Domain::HalfSpace;
    meta.vanishes_on_boundary = power > 0.0;
    meta.radial = None;
    ScalarField::new(Arc::new(XnPower { base: base.imp, power }), meta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angular_mode_is_a_pure_mode() {
        let m = angular_mode(2, 1.0);
        // value at angle phi is e^{2 i phi} r^2 g(r)
        let r = 1.3f64;
        for phi in [0.1, 0.9, 2.4] {
            let (x, y) = (r * phi.cos(), r * phi.sin());
            let v = Complex64::new(m.re.value2(x, y), m.im.value2(x, y));
            let expected_arg = 2.0 * phi;
            let diff = (v.arg() - expected_arg).rem_euclid(2.0 * std::f64::consts::PI);
            assert!(diff.min(2.0 * std::f64::consts::PI - diff) < 1e-12);
        }
    }

    #[test]
    fn plane_wave_vanishes_near_origin() {
        let f = plane_wave_bump([4.0, 0.0], AnnulusSpec::plateau(0.5, 1.0, 2.0, 3.0));
        assert_eq!(f.re.value2(0.1, 0.2), 0.0);
        assert_eq!(f.im.value2(0.3, 0.0), 0.0);
        assert!(f.re.inner_radius() > 0.0);
        assert!(f.re.value2(1.5, 0.0).abs() > 0.0);
    }

    #[test]
    fn xn_times_vanishes_on_boundary() {
        let f = xn_times(compact_bump(2, &[0.0, 0.5], 1.0));
        assert_eq!(f.value2(0.3, 0.0), 0.0);
        assert!(f.vanishes_on_boundary());
        assert!(f.value2(0.0, 0.5) > 0.0);
    }

    #[test]
    fn interior_bump_requires_clearance() {
        let f = interior_bump(2, &[0.0, 2.0], 1.0);
        assert!(f.vanishes_on_boundary());
        assert_eq!(f.value2(0.0, 0.9), 0.0);
        assert!(f.value2(0.0, 2.0) > 0.0);
    }

    #[test]
    #[should_panic]
    fn interior_bump_rejects_boundary_touching() {
        interior_bump(2, &[0.0, 0.5], 1.0);
    }
}
