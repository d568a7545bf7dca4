//! Small quadrature and search helpers shared by the kernel constants.

/// Positive half of the 16-point Gauss-Legendre rule on [-1, 1].
const GL16: [(f64, f64); 8] = [
    (0.09501250983763745, 0.18945061045506859),
    (0.2816035507792589, 0.1826034150449236),
    (0.45801677765722737, 0.16915651939500262),
    (0.6178762444026438, 0.14959598881657676),
    (0.755404408355003, 0.12462897125553403),
    (0.8656312023878318, 0.09515851168249259),
    (0.9445750230732326, 0.062253523938647706),
    (0.9894009349916499, 0.027152459411754037),
];

pub(crate) fn gauss_legendre<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let mut acc = 0.0;
    for &(x, w) in &GL16 {
        acc += w * (f(mid - half * x) + f(mid + half * x));
    }
    acc * half
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximization of `f` on `[lo, hi]`. Returns `(argmax, max)`.
pub(crate) fn golden_max<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximize `f` on `[lo, hi]`: scan `samples + 1` equispaced points, then
/// refine by golden section in the bracket around the best scan point.
pub(crate) fn scan_then_refine<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    samples: usize,
    tol: f64,
) -> (f64, f64) {
    let step = (hi - lo) / samples as f64;
    let mut best = (lo, f(lo));
    for i in 1..=samples {
        let x = lo + step * i as f64;
        let v = f(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    let a = (best.0 - step).max(lo);
    let b = (best.0 + step).min(hi);
    let refined = golden_max(&f, a, b, tol);
    if refined.1 > best.1 {
        refined
    } else {
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_low_degree_polynomials() {
        let v = gauss_legendre(|x| x.powi(7) - 3.0 * x * x + 1.0, -1.0, 2.0);
        let exact = (2f64.powi(8) - 1.0) / 8.0 - (8.0 + 1.0) + 3.0;
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn golden_section_finds_interior_peak() {
        let (x, v) = golden_max(|x| -(x - 0.3).powi(2) + 2.0, 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn scan_handles_multimodal_functions() {
        let f = |x: f64| (5.0 * x).sin() + 0.1 * x;
        let (_, v) = scan_then_refine(f, 0.0, 4.0, 64, 1e-10);
        let brute = (0..=400_000)
            .map(|i| f(i as f64 * 1e-5))
            .fold(f64::MIN, f64::max);
        assert!(v >= brute - 1e-9);
    }
}
