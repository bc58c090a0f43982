//! Golden-section refinement used to polish discrete maxima.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Returns `(x_max, f_max)` of the best probe. The bracket endpoints are
/// not evaluated; callers that scan a grid first already hold those values.
pub(crate) fn golden_section_max<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    xtol: f64,
    max_iter: usize,
) -> (f64, f64) {
    if !(b > a) {
        return (a, f(a));
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if (b - a).abs() <= xtol {
            break;
        }
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let (x, v) = golden_section_max(|x| 1.0 - (x - 0.3) * (x - 0.3), -1.0, 1.0, 1e-12, 200);
        assert!((x - 0.3).abs() < 1e-9);
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn handles_boundary_maximum() {
        let (_, v) = golden_section_max(|x| x, 0.0, 1.0, 1e-12, 200);
        assert!(v > 1.0 - 1e-9);
    }
}
