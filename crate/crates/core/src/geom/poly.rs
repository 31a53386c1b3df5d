use nalgebra::{Complex, DMatrix, Schur};

/// Leading coefficients smaller than this (relative to the largest) are dropped.
const LEADING_REL: f64 = 1e-14;
/// Eigenvalues with relative imaginary part up to this are reported as real
/// candidates; near-double roots split into complex pairs of about √ε.
const IMAG_REL: f64 = 1e-6;
/// Schur iteration cap. The unbounded default can cycle forever on companion
/// matrices with repeated complex roots, such as `(1 + t²)²`.
const SCHUR_MAX_ITER: usize = 200;
const ABERTH_MAX_ITER: usize = 200;

/// Approximate real roots of `c[0] + c[1]·t + … + c[4]·t⁴`, from the
/// eigenvalues of the companion matrix. Callers polish the results.
pub fn real_roots_quartic(c: [f64; 5]) -> Vec<f64> {
    let max = c.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if max == 0.0 {
        return Vec::new();
    }
    let mut deg = 4;
    while deg > 0 && c[deg].abs() <= LEADING_REL * max {
        deg -= 1;
    }
    match deg {
        0 => return Vec::new(),
        1 => return vec![-c[0] / c[1]],
        _ => {}
    }
    let lead = c[deg];
    let monic: Vec<f64> = c[..=deg].iter().map(|v| v / lead).collect();
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -monic[i];
    }
    let eig: Vec<Complex<f64>> = match Schur::try_new(comp, f64::EPSILON, SCHUR_MAX_ITER) {
        Some(s) => s.complex_eigenvalues().iter().copied().collect(),
        None => aberth(&monic),
    };
    let mut roots: Vec<f64> =
        eig.iter().filter(|z| z.im.abs() <= IMAG_REL * (1.0 + z.re.abs())).map(|z| z.re).collect();
    roots.sort_by(f64::total_cmp);
    roots
}

/// Simultaneous Aberth–Ehrlich iteration on a monic polynomial given by its
/// coefficients in ascending order.
fn aberth(monic: &[f64]) -> Vec<Complex<f64>> {
    let n = monic.len() - 1;
    let eval = |z: Complex<f64>| {
        let mut p = Complex::new(1.0, 0.0);
        let mut dp = Complex::new(0.0, 0.0);
        for &a in monic[..n].iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    // Cauchy bound on the root moduli, starts spread off the real axis.
    let bound = 1.0 + monic[..n].iter().fold(0.0_f64, |m, a| m.max(a.abs()));
    let mut z: Vec<Complex<f64>> =
        (0..n).map(|k| Complex::from_polar(0.5 * bound, 0.4 + std::f64::consts::TAU * k as f64 / n as f64)).collect();
    for _ in 0..ABERTH_MAX_ITER {
        let mut moved = 0.0_f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex<f64> = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close_set(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-9, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn four_real_roots() {
        // (t-1)(t+2)(t-3)(t+0.5) = t⁴ - 1.5t³ - 6t² + 3.5t + 3
        close_set(&real_roots_quartic([3.0, 3.5, -6.0, -1.5, 1.0]), &[-2.0, -0.5, 1.0, 3.0]);
    }

    #[test]
    fn complex_pair_dropped() {
        // (t² + 1)(t - 2)(t + 1) = t⁴ - t³ - t² - t - 2
        close_set(&real_roots_quartic([-2.0, -1.0, -1.0, -1.0, 1.0]), &[-1.0, 2.0]);
    }

    #[test]
    fn repeated_complex_pair_terminates() {
        assert!(real_roots_quartic([1.0, 0.0, 2.0, 0.0, 1.0]).is_empty());
        for z in aberth(&[1.0, 0.0, 2.0, 0.0, 1.0]) {
            assert!((z.re.abs()) < 1e-6 && (z.im.abs() - 1.0).abs() < 1e-6, "{z}");
        }
    }

    #[test]
    fn aberth_finds_simple_roots() {
        // (t-1)(t+2)(t-3) = t³ - 2t² - 5t + 6
        let mut re: Vec<f64> = aberth(&[6.0, -5.0, -2.0, 1.0]).iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        close_set(&re, &[-2.0, 1.0, 3.0]);
    }

    #[test]
    fn lower_degree() {
        close_set(&real_roots_quartic([-4.0, 0.0, 1.0, 0.0, 0.0]), &[-2.0, 2.0]);
        close_set(&real_roots_quartic([1.0, 2.0, 0.0, 0.0, 0.0]), &[-0.5]);
        assert!(real_roots_quartic([1.0, 0.0, 0.0, 0.0, 0.0]).is_empty());
    }
}
