//! Maximization of |sum a_ij w_i w_j| over real unit vectors w.
//!
//! For n = 2 the maximand is a trigonometric polynomial in the angle, so a
//! dense sweep plus golden-section refinement is exact to roundoff. For
//! n > 2 the modulus splits as ((w'Bw)^2 + (w'Cw)^2)^(1/2) with B, C the
//! symmetrized real and imaginary parts; stationary points align with
//! eigenvectors of B and C, which seed a projected gradient ascent with
//! deterministic random restarts.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// |w' A w| for a real unit vector w.
fn form_abs(sym_re: &[f64], sym_im: &[f64], n: usize, w: &[f64]) -> f64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for i in 0..n {
        for j in 0..n {
            re += sym_re[i * n + j] * w[i] * w[j];
            im += sym_im[i * n + j] * w[i] * w[j];
        }
    }
    re.hypot(im)
}

fn normalize(w: &mut [f64]) {
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in w.iter_mut() {
            *x /= norm;
        }
    }
}

fn mat_vec(m: &[f64], n: usize, v: &[f64], out: &mut [f64]) {
    for i in 0..n {
        out[i] = (0..n).map(|j| m[i * n + j] * v[j]).sum();
    }
}

/// Eigenvectors of a symmetric matrix by cyclic Jacobi rotations.
/// Returns column vectors flattened row-major (v[k] = column k).
fn jacobi_eigenvectors(mat: &[f64], n: usize) -> Vec<Vec<f64>> {
    let mut a = mat.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + a.iter().map(|x| x * x).sum::<f64>().sqrt()) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    (0..n).map(|k| (0..n).map(|i| v[i * n + k]).collect()).collect()
}

/// Projected gradient ascent on f(w) = |w'Aw| over the unit sphere.
fn polish(sym_re: &[f64], sym_im: &[f64], n: usize, start: &[f64]) -> (f64, Vec<f64>) {
    let mut w = start.to_vec();
    normalize(&mut w);
    let mut best = form_abs(sym_re, sym_im, n, &w);
    let mut bw = vec![0.0; n];
    let mut cw = vec![0.0; n];
    let mut step = 0.5;
    for _ in 0..400 {
        mat_vec(sym_re, n, &w, &mut bw);
        mat_vec(sym_im, n, &w, &mut cw);
        let fb: f64 = (0..n).map(|i| bw[i] * w[i]).sum();
        let fc: f64 = (0..n).map(|i| cw[i] * w[i]).sum();
        let f = fb.hypot(fc);
        // gradient of f^2 is 4(fb * Bw + fc * Cw); project onto tangent space
        let mut g: Vec<f64> = (0..n).map(|i| fb * bw[i] + fc * cw[i]).collect();
        let gw: f64 = (0..n).map(|i| g[i] * w[i]).sum();
        for i in 0..n {
            g[i] -= gw * w[i];
        }
        let gnorm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if gnorm < 1e-15 * (1.0 + f) {
            break;
        }
        let mut advanced = false;
        while step > 1e-16 {
            let mut trial: Vec<f64> = (0..n).map(|i| w[i] + step * g[i]).collect();
            normalize(&mut trial);
            let ft = form_abs(sym_re, sym_im, n, &trial);
            if ft > best {
                w = trial;
                best = ft;
                advanced = true;
                step *= 1.3;
                break;
            }
            step *= 0.5;
        }
        if !advanced {
            break;
        }
    }
    (best, w)
}

/// Maximum of |sum a_ij w_i w_j| over the unit sphere S^{n-1}.
pub fn sphere_form_max(entries: &[Complex64], n: usize) -> f64 {
    assert_eq!(entries.len(), n * n);
    let mut sym_re = vec![0.0; n * n];
    let mut sym_im = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            sym_re[i * n + j] = 0.5 * (entries[i * n + j].re + entries[j * n + i].re);
            sym_im[i * n + j] = 0.5 * (entries[i * n + j].im + entries[j * n + i].im);
        }
    }
    if n == 2 {
        return sphere_form_max_2d(&sym_re, &sym_im);
    }

    let mut best = 0.0;
    let mut consider = |w: &[f64]| {
        let (f, _) = polish(&sym_re, &sym_im, n, w);
        if f > best {
            best = f;
        }
    };
    for v in jacobi_eigenvectors(&sym_re, n) {
        consider(&v);
    }
    for v in jacobi_eigenvectors(&sym_im, n) {
        consider(&v);
    }
    // deterministic random restarts
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1_ab1e);
    for _ in 0..16 {
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if w.iter().map(|x| x * x).sum::<f64>() > 1e-4 {
            consider(&w);
        }
    }
    best
}

/// n = 2: 4096-point angle grid, then golden-section refinement to 1e-12.
fn sphere_form_max_2d(sym_re: &[f64], sym_im: &[f64]) -> f64 {
    let f = |phi: f64| {
        let w = [phi.cos(), phi.sin()];
        form_abs(sym_re, sym_im, 2, &w)
    };
    let m = 4096;
    let mut best_k = 0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..m {
        let phi = std::f64::consts::PI * k as f64 / m as f64;
        let v = f(phi);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let h = std::f64::consts::PI / m as f64;
    let center = h * best_k as f64;
    golden_max(&f, center - h, center + h, 1e-12)
}

fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn diag_1_m1_gives_one() {
        let a = [c(1.0), c(0.0), c(0.0), c(-1.0)];
        // max |w1^2 - w2^2| = 1 attained at the axes
        assert!((sphere_form_max(&a, 2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn offdiag_gives_one() {
        let a = [c(0.0), c(1.0), c(1.0), c(0.0)];
        // max |2 w1 w2| = 1 at the diagonal direction
        assert!((sphere_form_max(&a, 2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn n3_matches_dense_sampling_oracle() {
        let mats: Vec<Vec<Complex64>> = vec![
            vec![c(1.0), c(0.0), c(0.0), c(0.0), c(1.0), c(0.0), c(0.0), c(0.0), c(-2.0)],
            vec![c(0.5), c(0.3), c(0.0), c(0.3), c(-1.1), c(0.2), c(0.0), c(0.2), c(0.6)],
            vec![
                Complex64::new(1.0, 0.5),
                c(0.2),
                c(0.0),
                c(0.2),
                Complex64::new(-0.4, -0.5),
                c(0.1),
                c(0.0),
                c(0.1),
                c(-0.6),
            ],
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in &mats {
            let fast = sphere_form_max(m, 3);
            let mut sym_re = vec![0.0; 9];
            let mut sym_im = vec![0.0; 9];
            for i in 0..3 {
                for j in 0..3 {
                    sym_re[i * 3 + j] = 0.5 * (m[i * 3 + j].re + m[j * 3 + i].re);
                    sym_im[i * 3 + j] = 0.5 * (m[i * 3 + j].im + m[j * 3 + i].im);
                }
            }
            let mut brute: f64 = 0.0;
            for _ in 0..200_000 {
                let mut w = [
                    rng.gen_range(-1.0..1.0f64),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ];
                let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm < 1e-3 {
                    continue;
                }
                w.iter_mut().for_each(|x| *x /= norm);
                brute = brute.max(form_abs(&sym_re, &sym_im, 3, &w));
            }
            assert!(fast >= brute - 1e-9, "polished max below sampled max");
            assert!(fast - brute < 5e-3, "sampled max {brute} far from polished {fast}");
        }
    }
}
