//! Pole-aware 1D root scan shared by the cylindrical and spherical
//! matching solvers.

/// Scan parameters on an open interval (lo, hi).
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScanConfig {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub refine_tol: f64,
}

/// Finds up to `max_n` sign-change roots of `residual`, splitting brackets
/// at sign changes of the accompanying pole marker (the residual has a
/// pole exactly where the marker vanishes). `eval` returns
/// (residual, pole_marker) or None outside the domain.
pub(crate) fn scan_roots<F>(cfg: ScanConfig, eval: F, max_n: usize) -> Vec<f64>
where
    F: Fn(f64) -> Option<(f64, f64)>,
{
    let steps = cfg.steps.max(16);
    let step = (cfg.hi - cfg.lo) / steps as f64;
    let mut roots = Vec::new();
    let mut prev_e = cfg.lo;
    let Some(mut prev) = eval(prev_e) else {
        return roots;
    };
    for k in 1..=steps {
        let e = cfg.lo + step * k as f64;
        let Some(point) = eval(e) else { continue };
        if prev.1.signum() != point.1.signum() {
            let e_pole = bisect_on(prev_e, e, cfg.refine_tol * 1e-3, |x| eval(x).map(|p| p.1));
            let delta = step * 1e-7 + 1e-12;
            let left = (e_pole - delta).max(prev_e);
            if let Some(lp) = eval(left) {
                if lp.0.signum() != prev.0.signum() {
                    roots.push(bisect_on(prev_e, left, cfg.refine_tol, |x| {
                        eval(x).map(|p| p.0)
                    }));
                }
            }
            let right = (e_pole + delta).min(e);
            if let Some(rp) = eval(right) {
                if rp.0.signum() != point.0.signum() {
                    roots.push(bisect_on(right, e, cfg.refine_tol, |x| {
                        eval(x).map(|p| p.0)
                    }));
                }
            }
        } else if prev.0.signum() != point.0.signum() {
            roots.push(bisect_on(prev_e, e, cfg.refine_tol, |x| {
                eval(x).map(|p| p.0)
            }));
        }
        if roots.len() >= max_n {
            roots.truncate(max_n);
            break;
        }
        prev_e = e;
        prev = point;
    }
    roots
}

fn bisect_on<F>(mut lo: f64, mut hi: f64, tol: f64, f: F) -> f64
where
    F: Fn(f64) -> Option<f64>,
{
    let Some(f_lo) = f(lo) else {
        return 0.5 * (lo + hi);
    };
    let sign_lo = f_lo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let Some(f_mid) = f(mid) else { break };
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
