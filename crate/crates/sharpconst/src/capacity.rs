//! Closed-form (p,a)-capacities of balls, the isocapacitary ball-equality
//! check, and the capacitary integral functional for radial fields.

use crate::quad::{integrate, QuadError, QuadResult, RadialDecreasing};
use crate::specfun::{isocap_constant, sphere_area, ConstantError, HSParams};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CapacityError {
    #[error("capacity domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Constant(#[from] ConstantError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Parameters of a (p,a)-capacity query for a centered ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityQuery {
    p: f64,
    a: f64,
    n: u32,
    radius: f64,
}

impl CapacityQuery {
    pub fn new(p: f64, a: f64, n: u32, radius: f64) -> Result<Self, CapacityError> {
        let nf = n as f64;
        if !(1.0..nf).contains(&p) {
            return Err(CapacityError::Domain(format!(
                "requires 1 <= p < n, got p = {p}, n = {n}"
            )));
        }
        if !(0.0..nf - p).contains(&a) {
            return Err(CapacityError::Domain(format!(
                "requires 0 <= a < n - p, got a = {a}"
            )));
        }
        if !(radius > 0.0) {
            return Err(CapacityError::Domain(format!("radius must be positive, got {radius}")));
        }
        Ok(Self { p, a, n, radius })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// (p,a)-capacity of the centered ball of radius R in R^n:
/// |S^{n-1}| ((n-p-a)/(p-1))^{p-1} R^{n-p-a}, with the 0^0 = 1 convention
/// at p = 1 (value |S^{n-1}| R^{n-1-a}).
///
/// This is the value of the radial minimizer of the capacity integral;
/// the test suite confirms it against a discrete variational oracle.
pub fn ball_capacity(qry: &CapacityQuery) -> f64 {
    let (p, a, nf) = (qry.p, qry.a, qry.n as f64);
    let area = sphere_area(qry.n).expect("validated dimension");
    let kappa = if p == 1.0 {
        1.0
    } else {
        ((p - 1.0) * ((nf - p - a).ln() - (p - 1.0).ln())).exp()
    };
    area * kappa * qry.radius.powf(nf - p - a)
}

/// mu_b of the centered ball of radius R: |S^{n-1}| R^{n-b} / (n-b).
pub fn mu_b_ball(n: u32, b: f64, radius: f64) -> Result<f64, CapacityError> {
    let nf = n as f64;
    if b >= nf {
        return Err(CapacityError::Domain(format!("requires b < n, got b = {b}, n = {n}")));
    }
    if !(radius > 0.0) {
        return Err(CapacityError::Domain(format!("radius must be positive, got {radius}")));
    }
    let area = sphere_area(n)?;
    Ok(area * radius.powf(nf - b) / (nf - b))
}

/// Both sides of the isocapacitary inequality for a centered ball, where
/// equality is attained: lhs = mu_b(B)^{(n-p-a)/(n-b)},
/// rhs = isocap_constant * cap_{p,a}(B).
#[derive(Debug, Clone, Copy)]
pub struct IsocapCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub relative_gap: f64,
}

pub fn isocap_check(h: &HSParams, radius: f64) -> Result<IsocapCheck, CapacityError> {
    let qry = CapacityQuery::new(h.p(), h.a(), h.n(), radius)?;
    let nf = h.n() as f64;
    let lhs = mu_b_ball(h.n(), h.b(), radius)?.powf((nf - h.p() - h.a()) / (nf - h.b()));
    let rhs = isocap_constant(h) * ball_capacity(&qry);
    let relative_gap = (lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE);
    Ok(IsocapCheck { lhs, rhs, relative_gap })
}

/// Left side of the capacitary integral inequality for a radial
/// nonincreasing field:
/// ( int_0^inf cap_{p,a}(M_t)^{q/p} d(t^q) )^{1/q} with M_t the level balls.
pub fn capacitary_lhs_radial(
    u: &RadialDecreasing,
    h: &HSParams,
    q: f64,
) -> Result<QuadResult, CapacityError> {
    if q < h.p() {
        return Err(CapacityError::Domain(format!(
            "requires q >= p, got q = {q} < p = {}",
            h.p()
        )));
    }
    if u.dim() != h.n() {
        return Err(CapacityError::Domain(format!(
            "field dimension {} does not match parameters n = {}",
            u.dim(),
            h.n()
        )));
    }
    let t_max = u.max_value();
    if t_max <= 0.0 {
        return Ok(QuadResult { value: 0.0, abs_error: 0.0, evaluations: 0 });
    }
    let exponent = q / h.p();
    let inner = integrate(
        |t| {
            let r = u.level_radius(t);
            if r == 0.0 {
                return 0.0;
            }
            let cap = ball_capacity(
                &CapacityQuery::new(h.p(), h.a(), h.n(), r).expect("validated parameters"),
            );
            cap.powf(exponent) * q * t.powf(q - 1.0)
        },
        0.0,
        t_max,
        1e-10,
    )?;
    Ok(QuadResult {
        value: inner.value.powf(1.0 / q),
        abs_error: inner.abs_error,
        evaluations: inner.evaluations,
    })
}
