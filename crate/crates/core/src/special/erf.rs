//! Error function of a complex argument, validated on |w| <= 12.
//!
//! The Maclaurin series handles the disk |w| <= 3 and the near-imaginary
//! strip (where its alternating cancellation stays bounded by e^{2 Re(w)²});
//! away from the strip the Laplace continued fraction for erfc takes over.
//! Odd symmetry erf(-w) = -erf(w) is exact by construction: arguments are
//! reflected into Re w >= 0 before evaluation.

use crate::error::Error;
use crate::Result;
use num_complex::Complex64 as C;

const VALID_RADIUS: f64 = 12.0;
const TWO_OVER_SQRT_PI: f64 = 1.128_379_167_095_512_57;
const ONE_OVER_SQRT_PI: f64 = 0.564_189_583_547_756_29;

pub fn erf_complex(w: C) -> Result<C> {
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::BadParams("erf: non-finite argument".into()));
    }
    if w.norm() > VALID_RADIUS {
        return Err(Error::OutOfValidatedRange(w.norm(), VALID_RADIUS));
    }
    if w.re < 0.0 {
        return Ok(-erf_positive(-w));
    }
    Ok(erf_positive(w))
}

fn erf_positive(w: C) -> C {
    if w.norm() <= 3.0 || w.re <= 2.0 {
        erf_series(w)
    } else {
        C::new(1.0, 0.0) - erfc_continued_fraction(w)
    }
}

/// erf(w) = (2/sqrt(pi)) sum_n (-1)^n w^{2n+1} / (n! (2n+1)).
fn erf_series(w: C) -> C {
    let w2 = w * w;
    let mut term = w; // (-1)^n w^{2n+1} / n!
    let mut sum = w;
    for n in 1..400 {
        term = -term * w2 / (n as f64);
        let contrib = term / (2.0 * n as f64 + 1.0);
        sum += contrib;
        if contrib.norm() < 1e-18 * sum.norm().max(1e-300) {
            break;
        }
    }
    TWO_OVER_SQRT_PI * sum
}

/// Laplace continued fraction
/// erfc(z) = (e^{-z²}/sqrt(pi)) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
/// evaluated by the modified Lentz algorithm. Requires Re z > 0 and
/// converges rapidly away from the imaginary axis.
fn erfc_continued_fraction(z: C) -> C {
    let tiny = C::new(1e-300, 0.0);
    let mut f = z;
    if f.norm() == 0.0 {
        f = tiny;
    }
    let mut c = f;
    let mut d = C::new(0.0, 0.0);
    for k in 1..200 {
        let a = C::new(k as f64 / 2.0, 0.0);
        d = z + a * d;
        if d.norm() == 0.0 {
            d = tiny;
        }
        c = z + a / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (-z * z).exp() * ONE_OVER_SQRT_PI / f
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_maps_to_zero() {
        assert_eq!(erf_complex(C::new(0.0, 0.0)).unwrap(), C::new(0.0, 0.0));
    }

    #[test]
    fn odd_symmetry_is_exact() {
        for &w in &[
            C::new(1.3, 0.4),
            C::new(0.2, -2.7),
            C::new(4.5, 1.0),
            C::new(0.4, 9.0),
        ] {
            let a = erf_complex(w).unwrap();
            let b = erf_complex(-w).unwrap();
            assert_eq!(a, -b);
        }
    }

    #[test]
    fn real_argument_matches_quadrature_oracle() {
        // (2/sqrt(pi)) ∫₀² e^{-t²} dt by fine composite Simpson
        let n = 200_000;
        let h = 2.0 / n as f64;
        let f = |t: f64| (-t * t).exp();
        let mut s = 0.0;
        for i in 0..n / 2 {
            let t0 = 2.0 * i as f64 * h;
            s += h / 3.0 * (f(t0) + 4.0 * f(t0 + h) + f(t0 + 2.0 * h));
        }
        let oracle = TWO_OVER_SQRT_PI * s;
        let v = erf_complex(C::new(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, oracle, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn large_real_argument_saturates() {
        let v = erf_complex(C::new(6.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn series_and_fraction_agree_on_the_seam() {
        // points with |w| near 3 and Re w near 2 where both branches apply
        for &w in &[C::new(2.2, 2.2), C::new(2.5, 1.8), C::new(3.5, 0.5)] {
            let a = erf_series(w);
            let b = C::new(1.0, 0.0) - erfc_continued_fraction(w);
            assert!(
                (a - b).norm() < 1e-10 * a.norm().max(1.0),
                "branch mismatch at {w}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn derivative_matches_gaussian() {
        // d/dw erf = (2/sqrt(pi)) e^{-w²}, checked by FD along both axes
        let h = 1e-5;
        for &w in &[C::new(0.7, 0.3), C::new(-1.1, 1.2), C::new(1.9, -0.8)] {
            let expect = TWO_OVER_SQRT_PI * (-w * w).exp();
            let dx = (erf_complex(w + h).unwrap() - erf_complex(w - h).unwrap()) / (2.0 * h);
            let dy = (erf_complex(w + C::new(0.0, h)).unwrap()
                - erf_complex(w - C::new(0.0, h)).unwrap())
                / C::new(0.0, 2.0 * h);
            assert!((dx - expect).norm() < 1e-6);
            assert!((dy - expect).norm() < 1e-6);
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(
            erf_complex(C::new(13.0, 0.0)),
            Err(Error::OutOfValidatedRange(_, _))
        ));
    }
}
