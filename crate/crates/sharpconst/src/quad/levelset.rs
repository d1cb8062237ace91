//! Level-set measures and Lorentz quasi-norms of radial nonincreasing fields.

use super::{integrate, QuadError, QuadResult};
use crate::specfun::sphere_area;

/// A radial, nonincreasing profile r -> u(r) supported in [0, support].
pub struct RadialDecreasing {
    profile: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    support: f64,
    dim: u32,
}

impl RadialDecreasing {
    pub fn new(
        profile: impl Fn(f64) -> f64 + Send + Sync + 'static,
        support: f64,
        dim: u32,
    ) -> Result<Self, QuadError> {
        if !(support > 0.0) || dim < 1 {
            return Err(QuadError::Domain(format!(
                "invalid radial field: support {support}, dim {dim}"
            )));
        }
        let out = Self { profile: Box::new(profile), support, dim };
        // monotonicity spot check
        let mut prev = out.eval(0.0);
        for k in 1..=64 {
            let cur = out.eval(support * k as f64 / 64.0);
            if cur > prev + 1e-12 * prev.abs().max(1.0) {
                return Err(QuadError::Domain(
                    "radial profile is not nonincreasing".to_string(),
                ));
            }
            prev = cur;
        }
        Ok(out)
    }

    pub fn eval(&self, r: f64) -> f64 {
        if r >= self.support {
            0.0
        } else {
            (self.profile)(r)
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    pub fn max_value(&self) -> f64 {
        self.eval(0.0)
    }

    /// Radius of the level set {u >= t} by bisection, resolved to
    /// 1e-12 * support.
    pub fn level_radius(&self, t: f64) -> f64 {
        if t > self.max_value() {
            return 0.0;
        }
        if t <= self.eval(self.support * (1.0 - 1e-15)) {
            return self.support;
        }
        let (mut lo, mut hi) = (0.0, self.support);
        // invariant: u(lo) >= t > u(hi)
        while hi - lo > 1e-12 * self.support {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) >= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// mu_b of the level set {u >= t}: for a radial nonincreasing field the set
/// is the ball of radius r(t) and the measure is |S^{n-1}| r^{n-b} / (n-b).
pub fn mu_b_measure(u: &RadialDecreasing, t: f64, b: f64) -> Result<f64, QuadError> {
    let n = u.dim();
    if b >= n as f64 {
        return Err(QuadError::Domain(format!("mu_b requires b < n, got b = {b}, n = {n}")));
    }
    if !(t > 0.0) {
        return Err(QuadError::Domain(format!("level t must be positive, got {t}")));
    }
    let r = u.level_radius(t);
    if r == 0.0 {
        return Ok(0.0);
    }
    let area = sphere_area(n).map_err(|e| QuadError::Domain(e.to_string()))?;
    Ok(area * r.powf(n as f64 - b) / (n as f64 - b))
}

/// Lorentz quasi-norm || u ||_{L_{tau,q}(mu_b)} =
/// ( int_0^inf mu_b({u >= t})^{q/tau} d(t^q) )^{1/q},
/// with d(t^q) substituted analytically as q t^{q-1} dt.
pub fn lorentz_quasinorm(
    u: &RadialDecreasing,
    tau: f64,
    q: f64,
    b: f64,
) -> Result<QuadResult, QuadError> {
    if !(tau > 0.0 && q > 0.0) {
        return Err(QuadError::Domain(format!("tau, q must be positive, got {tau}, {q}")));
    }
    let t_max = u.max_value();
    if t_max <= 0.0 {
        return Ok(QuadResult { value: 0.0, abs_error: 0.0, evaluations: 0 });
    }
    let exponent = q / tau;
    let inner = integrate(
        |t| {
            let m = mu_b_measure(u, t, b).unwrap_or(0.0);
            m.powf(exponent) * q * t.powf(q - 1.0)
        },
        0.0,
        t_max,
        1e-10,
    )?;
    Ok(QuadResult {
        value: inner.value.powf(1.0 / q),
        abs_error: inner.abs_error / q * inner.value.powf(1.0 / q - 1.0).min(1e300),
        evaluations: inner.evaluations,
    })
}
