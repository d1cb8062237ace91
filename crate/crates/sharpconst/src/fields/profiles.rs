//! One-dimensional radial profiles with closed-form derivatives to second
//! order. All smooth cutoffs are built from the standard exp(-1/t) bump
//! composed with affine ramps.

/// Value and first two derivatives of a profile at radius r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
}

impl Jet {
    pub const ZERO: Jet = Jet { f: 0.0, df: 0.0, d2f: 0.0 };

    pub fn constant(c: f64) -> Jet {
        Jet { f: c, df: 0.0, d2f: 0.0 }
    }

    pub fn product(a: Jet, b: Jet) -> Jet {
        Jet {
            f: a.f * b.f,
            df: a.df * b.f + a.f * b.df,
            d2f: a.d2f * b.f + 2.0 * a.df * b.df + a.f * b.d2f,
        }
    }
}

/// A radial profile r -> f(r) with two derivatives, supported in
/// [inner_radius, support_radius].
pub trait Radial: Send + Sync {
    fn jet(&self, r: f64) -> Jet;
    fn support_radius(&self) -> f64;
    fn inner_radius(&self) -> f64 {
        0.0
    }
}

/// exp(-1/t) for t > 0, zero otherwise, with derivatives.
fn seed_bump(t: f64) -> Jet {
    if t <= 0.0 {
        return Jet::ZERO;
    }
    // underflows to an exact zero jet for t < ~1/700
    let f = (-1.0 / t).exp();
    if f == 0.0 {
        return Jet::ZERO;
    }
    let df = f / (t * t);
    let d2f = f * (1.0 / (t * t * t * t) - 2.0 / (t * t * t));
    Jet { f, df, d2f }
}

/// Smooth transition s with s(t) = 0 for t <= 0 and s(t) = 1 for t >= 1.
pub fn smooth_step(t: f64) -> Jet {
    if t <= 0.0 {
        return Jet::ZERO;
    }
    if t >= 1.0 {
        return Jet::constant(1.0);
    }
    let a = seed_bump(t);
    let b = seed_bump(1.0 - t);
    let denom = a.f + b.f;
    let s = a.f / denom;
    // quotient rule with b'(t) meaning d/dt of seed_bump(1-t) = -b.df
    let dden = a.df - b.df;
    let d2den = a.d2f + b.d2f;
    let ds = (a.df * denom - a.f * dden) / (denom * denom);
    let d2s = (a.d2f * denom - a.f * d2den) / (denom * denom)
        - 2.0 * dden * ds / denom;
    Jet { f: s, df: ds, d2f: d2s }
}

/// Smooth bump on [0,1]: zero outside, identically 1 on [1/3, 2/3].
pub fn smooth_bump01(t: f64) -> Jet {
    let up = smooth_step(3.0 * t);
    let down = smooth_step(3.0 * (1.0 - t));
    let up = Jet { f: up.f, df: 3.0 * up.df, d2f: 9.0 * up.d2f };
    let down = Jet { f: down.f, df: -3.0 * down.df, d2f: 9.0 * down.d2f };
    Jet::product(up, down)
}

/// Gaussian exp(-r^2 / (2 width^2)).
pub struct GaussProfile {
    pub width: f64,
}

impl Radial for GaussProfile {
    fn jet(&self, r: f64) -> Jet {
        let w2 = self.width * self.width;
        let f = (-r * r / (2.0 * w2)).exp();
        Jet {
            f,
            df: -r / w2 * f,
            d2f: (r * r / w2 - 1.0) / w2 * f,
        }
    }

    fn support_radius(&self) -> f64 {
        // exp(-40.5) < 3e-18
        9.0 * self.width
    }
}

/// Exactly compactly supported bump exp(-1/(1 - (r/R)^2)) for r < R.
pub struct CompactBumpProfile {
    pub radius: f64,
}

impl Radial for CompactBumpProfile {
    fn jet(&self, r: f64) -> Jet {
        let rho = r / self.radius;
        let t = 1.0 - rho * rho;
        let inner = seed_bump(t);
        // chain rule through t(r) = 1 - r^2/R^2
        let dt = -2.0 * r / (self.radius * self.radius);
        let d2t = -2.0 / (self.radius * self.radius);
        Jet {
            f: inner.f,
            df: inner.df * dt,
            d2f: inner.d2f * dt * dt + inner.df * d2t,
        }
    }

    fn support_radius(&self) -> f64 {
        self.radius
    }
}

/// 1 on [0, r0], smooth ramp down to 0 on [r0, r1].
pub struct CutoffProfile {
    pub r0: f64,
    pub r1: f64,
}

impl Radial for CutoffProfile {
    fn jet(&self, r: f64) -> Jet {
        let len = self.r1 - self.r0;
        let s = smooth_step((self.r1 - r) / len);
        Jet { f: s.f, df: -s.df / len, d2f: s.d2f / (len * len) }
    }

    fn support_radius(&self) -> f64 {
        self.r1
    }
}

/// Annular plateau: 0 before a0, ramp up on [a0, a1], 1 on [a1, b0],
/// ramp down on [b0, b1].
pub struct AnnulusProfile {
    pub a0: f64,
    pub a1: f64,
    pub b0: f64,
    pub b1: f64,
}

impl AnnulusProfile {
    pub fn new(a0: f64, a1: f64, b0: f64, b1: f64) -> Self {
        assert!(0.0 <= a0 && a0 < a1 && a1 <= b0 && b0 < b1, "bad annulus {a0} {a1} {b0} {b1}");
        Self { a0, a1, b0, b1 }
    }
}

impl Radial for AnnulusProfile {
    fn jet(&self, r: f64) -> Jet {
        let lu = self.a1 - self.a0;
        let up = smooth_step((r - self.a0) / lu);
        let up = Jet { f: up.f, df: up.df / lu, d2f: up.d2f / (lu * lu) };
        let ld = self.b1 - self.b0;
        let down = smooth_step((self.b1 - r) / ld);
        let down = Jet { f: down.f, df: -down.df / ld, d2f: down.d2f / (ld * ld) };
        Jet::product(up, down)
    }

    fn support_radius(&self) -> f64 {
        self.b1
    }

    fn inner_radius(&self) -> f64 {
        self.a0
    }
}

/// Talenti-type profile (1 + r^2)^{-(m-2)/2} with a smooth far cutoff
/// ramping down over [start, end] in log radius.
pub struct TalentiProfile {
    pub m: u32,
    pub cutoff_start: f64,
    pub cutoff_end: f64,
}

impl Radial for TalentiProfile {
    fn jet(&self, r: f64) -> Jet {
        let alpha = (self.m as f64 - 2.0) / 2.0;
        let s = 1.0 + r * r;
        let f = s.powf(-alpha);
        let core = Jet {
            f,
            df: -alpha * s.powf(-alpha - 1.0) * 2.0 * r,
            d2f: alpha * (alpha + 1.0) * s.powf(-alpha - 2.0) * 4.0 * r * r
                - 2.0 * alpha * s.powf(-alpha - 1.0),
        };
        if r <= self.cutoff_start {
            return core;
        }
        // ramp in log radius keeps the cutoff gradient energy ~ 1/(R log R)
        let len = (self.cutoff_end / self.cutoff_start).ln();
        let w = ((self.cutoff_end).ln() - r.ln()) / len;
        let s = smooth_step(w);
        let dw = -1.0 / (r * len);
        let d2w = 1.0 / (r * r * len);
        let chi = Jet { f: s.f, df: s.df * dw, d2f: s.d2f * dw * dw + s.df * d2w };
        Jet::product(core, chi)
    }

    fn support_radius(&self) -> f64 {
        self.cutoff_end
    }
}

/// Mollified logarithm: cutoff(r) * (1/2) ln(r^2 + eps^2).
pub struct MollifiedLogProfile {
    pub eps: f64,
    pub cutoff: CutoffProfile,
}

impl Radial for MollifiedLogProfile {
    fn jet(&self, r: f64) -> Jet {
        let e2 = self.eps * self.eps;
        let s = r * r + e2;
        let log_part = Jet {
            f: 0.5 * s.ln(),
            df: r / s,
            d2f: (e2 - r * r) / (s * s),
        };
        Jet::product(log_part, self.cutoff.jet(r))
    }

    fn support_radius(&self) -> f64 {
        self.cutoff.support_radius()
    }
}

/// Slowly modulated linear profile r * psi(log r / (2T)) supported on
/// r in [e^{-T}, e^{T}]; saturates the radial Hardy-type estimate as T grows.
pub struct LogStretchProfile {
    pub t_span: f64,
}

impl Radial for LogStretchProfile {
    fn jet(&self, r: f64) -> Jet {
        if r <= 0.0 {
            return Jet::ZERO;
        }
        let t2 = 2.0 * self.t_span;
        let w = (r.ln() / self.t_span + 1.0) / 2.0; // in [0,1] over the support
        let b = smooth_bump01(w);
        // f = r * b(w(r)) with w' = 1/(2T r), so f' = b + b'/(2T) and
        // f'' = (b' + b''/(2T)) w'
        let dw = 1.0 / (t2 * r);
        Jet {
            f: r * b.f,
            df: b.f + b.df / t2,
            d2f: (b.df + b.d2f / t2) * dw,
        }
    }

    fn support_radius(&self) -> f64 {
        self.t_span.exp()
    }

    fn inner_radius(&self) -> f64 {
        (-self.t_span).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_jet_fd(p: &dyn Radial, r: f64, tol: f64) {
        let h = 1e-6 * r.max(1.0);
        let j = p.jet(r);
        let fp = p.jet(r + h).f;
        let fm = p.jet(r - h).f;
        let df_fd = (fp - fm) / (2.0 * h);
        let d2f_fd = (fp - 2.0 * j.f + fm) / (h * h);
        let scale = j.f.abs().max(j.df.abs()).max(1e-12);
        assert!(
            (j.df - df_fd).abs() <= tol * scale.max(df_fd.abs()),
            "df mismatch at r={r}: {} vs fd {}",
            j.df,
            df_fd
        );
        assert!(
            (j.d2f - d2f_fd).abs() <= 100.0 * tol * scale.max(d2f_fd.abs()).max(j.d2f.abs()),
            "d2f mismatch at r={r}: {} vs fd {}",
            j.d2f,
            d2f_fd
        );
    }

    #[test]
    fn profile_derivatives_match_finite_differences() {
        let profiles: Vec<Box<dyn Radial>> = vec![
            Box::new(GaussProfile { width: 0.8 }),
            Box::new(CompactBumpProfile { radius: 2.0 }),
            Box::new(CutoffProfile { r0: 1.0, r1: 2.0 }),
            Box::new(AnnulusProfile::new(0.5, 1.0, 2.0, 3.0)),
            Box::new(TalentiProfile { m: 3, cutoff_start: 50.0, cutoff_end: 500.0 }),
            Box::new(MollifiedLogProfile {
                eps: 0.05,
                cutoff: CutoffProfile { r0: 1.0, r1: 2.0 },
            }),
            Box::new(LogStretchProfile { t_span: 3.0 }),
        ];
        for p in &profiles {
            let hi = p.support_radius().min(600.0);
            let lo = p.inner_radius();
            for k in 1..40 {
                let r = lo + (hi - lo) * k as f64 / 40.0;
                check_jet_fd(p.as_ref(), r, 1e-5);
            }
        }
    }

    #[test]
    fn smooth_step_endpoints() {
        assert_eq!(smooth_step(-0.5), Jet::ZERO);
        assert_eq!(smooth_step(1.5), Jet::constant(1.0));
        let mid = smooth_step(0.5);
        assert!((mid.f - 0.5).abs() < 1e-14); // symmetric construction
    }

    #[test]
    fn compact_bump_is_exactly_supported() {
        let p = CompactBumpProfile { radius: 1.0 };
        assert_eq!(p.jet(1.0), Jet::ZERO);
        assert_eq!(p.jet(1.5), Jet::ZERO);
        assert!(p.jet(0.5).f > 0.0);
    }
}
