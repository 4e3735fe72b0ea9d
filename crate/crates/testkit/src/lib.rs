//! Independent numerical oracles for the test suites. Nothing here shares
//! code with the library under test: finite differences, Sturm bisection,
//! Simpson quadrature and direct time integration only.
//!
//! Not a dependency of any library target; dev-dependencies only.

use num_complex::Complex64;

/// ħ²/2m₀ in meV·nm² (CODATA 2018), restated here so the oracles do not
/// borrow the library's constants table.
pub const H2M: f64 = 38.09982111485961;

/// Radial symmetry of the finite-difference oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialKind {
    /// 2D polar: weight r, centrifugal ℓ².
    Cylindrical,
    /// 3D spherical: weight r², centrifugal ℓ(ℓ+1).
    Spherical,
}

/// Lowest eigenvalues of the radial effective-mass Hamiltonian
///
///   −(ħ²/2)(1/w) d/dr[(w/m) dR/dr] + [ħ²c_ℓ/(2m r²) + U(r)]R = E R
///
/// with a conservative flux stencil on a staggered grid (the r = 0 flux
/// vanishes naturally) and Sturm-sequence bisection on the symmetrized
/// tridiagonal.
#[allow(clippy::too_many_arguments)]
pub fn fd_radial_levels(
    kind: RadialKind,
    l: i32,
    r0: f64,
    mass_well: f64,
    mass_barrier: f64,
    barrier_height: f64,
    n_pts: usize,
    r_max: f64,
    n_levels: usize,
) -> Vec<f64> {
    let h = r_max / n_pts as f64;
    let centrifugal = match kind {
        RadialKind::Cylindrical => (l * l) as f64,
        RadialKind::Spherical => (l * (l + 1)) as f64,
    };
    let weight = |r: f64| match kind {
        RadialKind::Cylindrical => r,
        RadialKind::Spherical => r * r,
    };
    let mass = |r: f64| if r < r0 { mass_well } else { mass_barrier };

    let r: Vec<f64> = (0..n_pts).map(|i| (i as f64 + 0.5) * h).collect();
    let a: Vec<f64> = (0..=n_pts)
        .map(|i| {
            let rh = i as f64 * h;
            weight(rh) / mass(rh)
        })
        .collect();

    let mut diag = vec![0.0; n_pts];
    let mut off = vec![0.0; n_pts - 1];
    for i in 0..n_pts {
        let w = weight(r[i]);
        let potential = if r[i] < r0 { 0.0 } else { barrier_height }
            + H2M * centrifugal / (mass(r[i]) * r[i] * r[i]);
        diag[i] = H2M / (h * h) * (a[i] + a[i + 1]) / w + potential;
        if i + 1 < n_pts {
            off[i] = -H2M / (h * h) * a[i + 1] / (weight(r[i]) * weight(r[i + 1])).sqrt();
        }
    }

    (0..n_levels)
        .map(|k| tridiagonal_eigenvalue(&diag, &off, k))
        .collect()
}

/// k-th smallest eigenvalue of a symmetric tridiagonal matrix by
/// Sturm-count bisection.
pub fn tridiagonal_eigenvalue(diag: &[f64], off: &[f64], k: usize) -> f64 {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let radius =
            if i > 0 { off[i - 1].abs() } else { 0.0 } + if i < n - 1 { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    let count_below = |x: f64| -> usize {
        let mut count = 0;
        let mut q = 1.0_f64;
        for i in 0..n {
            let e2 = if i > 0 { off[i - 1] * off[i - 1] } else { 0.0 };
            q = diag[i] - x - e2 / q;
            if q == 0.0 {
                q = 1e-300;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count_below(mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-10 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Composite Simpson rule with n (rounded up to even) intervals.
pub fn simpson<F: FnMut(f64) -> f64>(a: f64, b: f64, n: usize, mut f: F) -> f64 {
    let n = if n.is_multiple_of(2) { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let coeff = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += coeff * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Adaptive Simpson on [a, b] to the given absolute tolerance.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// RK4 time integration of the linearized damped Liouville system
/// (ħ = 1, time in 1/meV, all energies meV):
///
///   ρ₂₁′ = −i(E₂₁ + ΔM·E₀)ρ₂₁ + i·m·e^{−iωt} − γρ₂₁
///   ρ₁₂′ = +i(E₂₁ + ΔM·E₀)ρ₁₂ − i·m·e^{−iωt} − γρ₁₂
///   ρ₁₁′ = +i·m·(ρ₂₁ − ρ₁₂) − γρ₁₁
///
/// with the static inversion ρ₁₁⁽⁰⁾ − ρ₂₂⁽⁰⁾ = 1 feeding the coherence
/// drive m (in meV). Returns (ρ̂₂₁, ρ̂₁₂, ρ̂₁₁): the e^{−iωt} amplitudes
/// after transients have decayed.
pub fn liouville_time_domain(
    homega: f64,
    gap_mev: f64,
    drive_mev: f64,
    stark_mev: f64,
    gamma_mev: f64,
) -> (Complex64, Complex64, Complex64) {
    let gap = gap_mev + stark_mev;
    let m = drive_mev;
    let gamma = gamma_mev;
    let i = Complex64::i();

    let deriv = |time: f64, y: &[Complex64; 3]| -> [Complex64; 3] {
        let drive = (Complex64::new(0.0, -homega * time)).exp() * m;
        [
            -i * gap * y[0] + i * drive - gamma * y[0],
            i * gap * y[1] - i * drive - gamma * y[1],
            i * m * (y[0] - y[1]) - gamma * y[2],
        ]
    };

    let t_end = 16.0 / gamma;
    let rate = homega.abs().max(gap.abs()) + gamma;
    let h = (0.08 / rate).min(t_end / 4000.0);
    let steps = (t_end / h).ceil() as usize;
    let h = t_end / steps as f64;

    let mut y = [Complex64::new(0.0, 0.0); 3];
    let mut time = 0.0;
    for _ in 0..steps {
        let k1 = deriv(time, &y);
        let y2 = [
            y[0] + 0.5 * h * k1[0],
            y[1] + 0.5 * h * k1[1],
            y[2] + 0.5 * h * k1[2],
        ];
        let k2 = deriv(time + 0.5 * h, &y2);
        let y3 = [
            y[0] + 0.5 * h * k2[0],
            y[1] + 0.5 * h * k2[1],
            y[2] + 0.5 * h * k2[2],
        ];
        let k3 = deriv(time + 0.5 * h, &y3);
        let y4 = [y[0] + h * k3[0], y[1] + h * k3[1], y[2] + h * k3[2]];
        let k4 = deriv(time + h, &y4);
        for n in 0..3 {
            y[n] += h / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
        }
        time += h;
    }
    let unwind = (Complex64::new(0.0, homega * time)).exp();
    (y[0] * unwind, y[1] * unwind, y[2] * unwind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_bisection_on_known_matrix() {
        // eigenvalues of [[2,-1],[-1,2]] are 1 and 3
        let diag = [2.0, 2.0];
        let off = [-1.0];
        assert!((tridiagonal_eigenvalue(&diag, &off, 0) - 1.0).abs() < 1e-9);
        assert!((tridiagonal_eigenvalue(&diag, &off, 1) - 3.0).abs() < 1e-9);
    }

    #[test]
    fn simpson_on_polynomial() {
        let v = simpson(0.0, 1.0, 100, |x| x * x * x);
        assert!((v - 0.25).abs() < 1e-12);
    }

    #[test]
    fn infinite_well_reference() {
        // deep cylindrical well approaches ħ²j₀₁²/(2m r₀²)
        let levels = fd_radial_levels(
            RadialKind::Cylindrical,
            0,
            4.0,
            0.13,
            0.13,
            1.596e6,
            8000,
            8.0,
            1,
        );
        let expect = H2M * 2.404825557695773_f64.powi(2) / (0.13 * 16.0);
        assert!((levels[0] - expect).abs() / expect < 0.01);
    }
}
