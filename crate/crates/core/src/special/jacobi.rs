//! Jacobi elliptic functions by the descending Landen / arithmetic-geometric
//! mean ladder, for real argument and modulus 0 <= k <= 1.
//!
//! The AGM recursion a_{n+1} = (a_n+b_n)/2, b_{n+1} = sqrt(a_n b_n) is run
//! until |a_n - b_n| < 1e-15; the amplitude is then unwound through
//! φ_{n-1} = ½[φ_n + asin((c_n/a_n) sin φ_n)], giving sn = sin φ₀,
//! cn = cos φ₀, dn = cos φ₀ / cos(φ₁ - φ₀). Quadratic convergence makes a
//! dozen levels more than enough at double precision.

use crate::error::Error;
use crate::Result;

const AGM_TOL: f64 = 1e-15;
/// Moduli below this collapse to the circular closure sin/cos/1.
const CIRCULAR_K: f64 = 1e-12;
const MAX_LEVELS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobi {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// sn, cn, dn of real argument `u` at modulus `k` (not k²).
pub fn jacobi(u: f64, k: f64) -> Result<Jacobi> {
    if !u.is_finite() {
        return Err(Error::BadParams("jacobi: non-finite argument".into()));
    }
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::BadParams(format!(
            "jacobi: modulus k = {k} outside [0, 1]"
        )));
    }
    if k < CIRCULAR_K {
        return Ok(Jacobi {
            sn: u.sin(),
            cn: u.cos(),
            dn: 1.0,
        });
    }
    if 1.0 - k < 1e-15 {
        // hyperbolic degeneration
        let sech = 1.0 / u.cosh();
        return Ok(Jacobi {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        });
    }

    // 4K-periodicity: reducing the argument keeps the unwound amplitude
    // small, which is what limits accuracy at large |u|
    let quarter = complete_elliptic_k(k)?;
    let period = 4.0 * quarter;
    let u = u - period * (u / period).round();

    Ok(sncndn_descending(u, (1.0 - k) * (1.0 + k)))
}

/// Bulirsch's sncndn: descending Landen ladder on the complementary
/// parameter emc = 1 - k² (here always in (0, 1]), trigonometric closure,
/// then the backward recurrence that carries dn at full precision.
fn sncndn_descending(u: f64, emc: f64) -> Jacobi {
    const CA: f64 = 1e-8; // ladder cutoff; convergence is quadratic

    let mut emc = emc;
    let mut u = u;
    let mut em = [0.0f64; MAX_LEVELS];
    let mut en = [0.0f64; MAX_LEVELS];
    let mut a = 1.0f64;
    let mut dn = 1.0f64;
    let mut c = 0.0f64;
    let mut last = 0usize;
    for i in 0..MAX_LEVELS {
        last = i;
        em[i] = a;
        emc = emc.sqrt();
        en[i] = emc;
        c = 0.5 * (a + emc);
        if (a - emc).abs() <= CA * a {
            break;
        }
        emc *= a;
        a = c;
    }
    u *= c;
    let mut sn = u.sin();
    let mut cn = u.cos();
    if sn != 0.0 {
        let mut aa = cn / sn;
        c *= aa;
        for i in (0..=last).rev() {
            let b = em[i];
            aa *= c;
            c *= dn;
            dn = (en[i] + aa) / (b + aa);
            aa = c / b;
        }
        let norm = 1.0 / (c * c + 1.0).sqrt();
        sn = if sn >= 0.0 { norm } else { -norm };
        cn = c * sn;
    }
    Jacobi { sn, cn, dn }
}

/// tn = sn/cn. Diverges at the zeros of cn; callers mask those.
pub fn tn(u: f64, k: f64) -> Result<f64> {
    let j = jacobi(u, k)?;
    Ok(j.sn / j.cn)
}

/// Complete elliptic integral of the first kind, K(k) = π / (2 agm(1, k')).
pub fn complete_elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::BadParams(format!(
            "complete_elliptic_k: modulus k = {k} outside [0, 1]"
        )));
    }
    if 1.0 - k < 1e-15 {
        return Err(Error::PeriodDiverges);
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    let mut a = 1.0f64;
    let mut b = kp;
    while (a - b).abs() > AGM_TOL * a {
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    Ok(std::f64::consts::FRAC_PI_2 / a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn origin_values() {
        for k in [0.0, 0.3, 0.7, 0.99, 1.0] {
            let j = jacobi(0.0, k).unwrap();
            assert_abs_diff_eq!(j.sn, 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(j.cn, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(j.dn, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn circular_degeneration() {
        for &u in &[-3.0, -0.7, 0.2, 1.9, 6.5] {
            let j = jacobi(u, 0.0).unwrap();
            assert_abs_diff_eq!(j.sn, u.sin(), epsilon = 1e-12);
            assert_abs_diff_eq!(j.cn, u.cos(), epsilon = 1e-12);
            assert_abs_diff_eq!(j.dn, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn hyperbolic_degeneration() {
        for &u in &[-2.0, -0.3, 0.1, 1.4, 3.0] {
            let j = jacobi(u, 1.0).unwrap();
            assert_abs_diff_eq!(j.sn, u.tanh(), epsilon = 1e-12);
            assert_abs_diff_eq!(j.cn, 1.0 / u.cosh(), epsilon = 1e-12);
            assert_abs_diff_eq!(j.dn, 1.0 / u.cosh(), epsilon = 1e-12);
        }
    }

    #[test]
    fn quarter_period_from_agm_and_quadrature() {
        // K(0) = π/2
        assert_abs_diff_eq!(
            complete_elliptic_k(0.0).unwrap(),
            std::f64::consts::FRAC_PI_2,
            epsilon = 1e-15
        );
        // independent oracle: midpoint quadrature of the defining integral
        // K(k) = ∫₀^{π/2} dθ / sqrt(1 - k² sin²θ)
        let k = std::f64::consts::FRAC_1_SQRT_2;
        let n = 200_000;
        let h = std::f64::consts::FRAC_PI_2 / n as f64;
        let mut quad = 0.0;
        for i in 0..n {
            let th = (i as f64 + 0.5) * h;
            quad += h / (1.0 - (k * th.sin()).powi(2)).sqrt();
        }
        assert_abs_diff_eq!(complete_elliptic_k(k).unwrap(), quad, epsilon = 1e-10);
    }

    #[test]
    fn sn_at_quarter_period_is_one() {
        let k = 0.3;
        let kk = complete_elliptic_k(k).unwrap();
        let j = jacobi(kk, k).unwrap();
        assert_abs_diff_eq!(j.sn, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn k_one_diverges() {
        assert!(matches!(complete_elliptic_k(1.0), Err(Error::PeriodDiverges)));
    }

    #[test]
    fn duplication_consistency() {
        // sn(2u) from the ladder vs the duplication formula
        // sn(2u) = 2 sn cn dn / (1 - k² sn⁴)
        for &(u, k) in &[(0.37, 0.2), (0.9, 0.6), (-1.3, 0.85), (2.1, 0.45)] {
            let j = jacobi(u, k).unwrap();
            let dup = 2.0 * j.sn * j.cn * j.dn / (1.0 - (k * k) * j.sn.powi(4));
            let direct = jacobi(2.0 * u, k).unwrap().sn;
            assert_abs_diff_eq!(direct, dup, epsilon = 1e-10);
        }
    }
}
