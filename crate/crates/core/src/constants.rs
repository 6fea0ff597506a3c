//! Closed-form sharp constants of the fractional inequalities on an H-type
//! group with parameters (n, m), homogeneous dimension Q = 2n + 2m.
//!
//! Everything is evaluated through log-gamma sums and a single `exp`, so the
//! constants stay finite and accurate for n + m up to the tested range.

use crate::error::{Error, Result};

const LN_PI: f64 = 1.1447298858494001741; // ln(pi)
const LN_4: f64 = 1.3862943611198906188; // ln(4)
const HALF_LN_2PI: f64 = 0.91893853320467274178; // ln(2 pi)/2

/// Natural log of the gamma function for x > 0 (Lanczos, g = 607/128).
///
/// Relative accuracy ~1e-15 over the range used here.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    const G: f64 = 4.7421875;
    const C: [f64; 15] = [
        0.99999999999999709182,
        57.156235665862923517,
        -59.597960355475491248,
        14.136097974741747174,
        -0.49191381609762019978,
        3.3994649984811888699e-5,
        4.6523628927048575665e-5,
        -9.8374475304879564677e-5,
        1.5808870322491248884e-4,
        -2.1026444172410488319e-4,
        2.1743961811521264320e-4,
        -1.6431810653676389022e-4,
        8.4418223983852743293e-5,
        -2.6190838401581408670e-5,
        3.6899182659531622704e-6,
    ];
    let mut a = C[0];
    for (k, c) in C.iter().enumerate().skip(1) {
        a += c / (x - 1.0 + k as f64);
    }
    let t = x + G - 0.5;
    HALF_LN_2PI + (x - 0.5) * t.ln() - t + (a).ln()
}

/// ln |Gamma(-s)| for 0 < s < 1 via the reflection formula in log space.
pub fn ln_abs_gamma_neg(s: f64) -> f64 {
    assert!(s > 0.0 && s < 1.0);
    LN_PI - (std::f64::consts::PI * s).sin().ln() - ln_gamma(1.0 + s)
}

/// A fractional order together with the formula family it is valid for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    s: f64,
}

impl FractionalOrder {
    /// Order for the main inequalities: 0 < s < 1.
    pub fn main(s: f64) -> Result<Self> {
        if s > 0.0 && s < 1.0 {
            Ok(Self { s })
        } else {
            Err(Error::OutOfRange {
                name: "s",
                value: s,
                range: "(0, 1)",
            })
        }
    }

    /// Order for the Green's function / eigenrelation family: 0 < s < n + 1.
    pub fn extended(s: f64, n: usize) -> Result<Self> {
        if s > 0.0 && s < n as f64 + 1.0 {
            Ok(Self { s })
        } else {
            Err(Error::OutOfRange {
                name: "s",
                value: s,
                range: "(0, n + 1)",
            })
        }
    }

    pub fn value(&self) -> f64 {
        self.s
    }
}

fn check_main_range(s: f64) -> Result<()> {
    if s > 0.0 && s < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "s",
            value: s,
            range: "(0, 1)",
        })
    }
}

fn check_extended_range(s: f64, n: usize) -> Result<()> {
    if s > 0.0 && s < n as f64 + 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "s",
            value: s,
            range: "(0, n + 1)",
        })
    }
}

fn qdim(n: usize, m: usize) -> f64 {
    (2 * n + 2 * m) as f64
}

/// Ratio Gamma((n+1+s)/2) Gamma((n+m+s)/2) / (Gamma((n+1-s)/2) Gamma((n+m-s)/2)) in log form.
fn ln_gamma_ratio(n: usize, m: usize, s: f64) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    ln_gamma((nf + 1.0 + s) / 2.0) + ln_gamma((nf + mf + s) / 2.0)
        - ln_gamma((nf + 1.0 - s) / 2.0)
        - ln_gamma((nf + mf - s) / 2.0)
}

/// Sharp constant of the fractional Sobolev inequality.
pub fn sharp_sobolev(n: usize, m: usize, s: f64) -> Result<f64> {
    check_main_range(s)?;
    let q = qdim(n, m);
    let (nf, mf) = (n as f64, m as f64);
    let ln = s * (q + 2.0 * nf) / q * LN_4
        + s * (2.0 * nf + mf) / q * LN_PI
        + ln_gamma_ratio(n, m, s)
        + 2.0 * s / q * (ln_gamma(nf + mf / 2.0) - ln_gamma(2.0 * nf + mf));
    Ok(ln.exp())
}

/// Sharp constant of the Hardy inequality (also the lowest weighted eigenvalue).
pub fn hardy_const(n: usize, m: usize, s: f64) -> Result<f64> {
    check_main_range(s)?;
    Ok((s * LN_4 + ln_gamma_ratio(n, m, s)).exp())
}

/// Constant in the Green's function of the conformal fractional power.
pub fn green_const(n: usize, m: usize, s: f64) -> Result<f64> {
    check_extended_range(s, n)?;
    let (nf, mf) = (n as f64, m as f64);
    let ln = ln_gamma((nf + 1.0 - s) / 2.0) + ln_gamma((nf + mf - s) / 2.0)
        - (nf + 1.0 + s) * std::f64::consts::LN_2
        - (nf + (mf + 1.0) / 2.0) * LN_PI
        - ln_gamma(s);
    Ok(ln.exp())
}

/// Constant of the ground-state (difference-quotient) representation.
pub fn groundstate_const(n: usize, m: usize, s: f64) -> Result<f64> {
    check_main_range(s)?;
    let (nf, mf) = (n as f64, m as f64);
    let ln = (-nf - 2.0 + s) * std::f64::consts::LN_2 - (nf + (mf + 1.0) / 2.0) * LN_PI
        + ln_gamma((nf + 1.0 + s) / 2.0)
        + ln_gamma((nf + mf + s) / 2.0)
        - ln_abs_gamma_neg(s);
    Ok(ln.exp())
}

/// Total mass of the Cayley Jacobian (the volume of the image sphere).
pub fn sphere_volume(n: usize, m: usize) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    (nf * LN_4 + (nf + mf / 2.0) * LN_PI + ln_gamma(nf + mf / 2.0) - ln_gamma(2.0 * nf + mf)).exp()
}

/// Sharp constant of the entropy (log-Sobolev) inequality.
pub fn logsobolev_const(n: usize, m: usize) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let q = qdim(n, m);
    ((nf + 3.0) * std::f64::consts::LN_2 + (nf + (mf + 1.0) / 2.0) * LN_PI
        - q.ln()
        - ln_gamma((nf + 1.0) / 2.0)
        - ln_gamma((nf + mf) / 2.0))
    .exp()
}

/// Sharp constant of the trace inequality: 2^(1-2s) Gamma(1-s)/Gamma(s) times
/// the Sobolev constant.
pub fn trace_factor(n: usize, m: usize, s: f64) -> Result<f64> {
    check_main_range(s)?;
    let pre = ((1.0 - 2.0 * s) * std::f64::consts::LN_2 + ln_gamma(1.0 - s) - ln_gamma(s)).exp();
    Ok(pre * sharp_sobolev(n, m, s)?)
}

/// Sharp constant of the convolution (HLS) inequality: 1 / (S c).
pub fn hls_const(n: usize, m: usize, s: f64) -> Result<f64> {
    check_main_range(s)?;
    Ok(1.0 / (sharp_sobolev(n, m, s)? * green_const(n, m, s)?))
}

/// Normalization constant of the Poisson kernel of the extension problem.
pub fn poisson_norm(n: usize, m: usize, s: f64) -> Result<f64> {
    check_main_range(s)?;
    let (nf, mf) = (n as f64, m as f64);
    let ln = (-2.0 * nf - 2.0 * s) * std::f64::consts::LN_2 - (nf + mf / 2.0) * LN_PI
        + ln_gamma(nf + s)
        + ln_gamma((nf + mf + s) / 2.0)
        - ln_gamma(s)
        - ln_gamma((nf + s) / 2.0);
    Ok(ln.exp())
}

// ---- plumbing shared with the quadrature layer ----

/// Mass of the weight [(1 + |z|^2/4)^2 + |w|^2]^(-beta/2) over the whole group.
/// Finite iff beta > m + 2n... specifically requires beta - m - n > 0.
pub(crate) fn quartic_profile_mass(n: usize, m: usize, beta: f64) -> Result<f64> {
    let (nf, mf) = (n as f64, m as f64);
    if beta - mf - nf <= 0.0 {
        return Err(Error::Divergent(format!(
            "profile exponent beta = {beta} too small for (n, m) = ({n}, {m})"
        )));
    }
    let ln = nf * LN_4 + (nf + mf / 2.0) * LN_PI + ln_gamma((beta - mf) / 2.0)
        + ln_gamma(beta - mf - nf)
        - ln_gamma(beta / 2.0)
        - ln_gamma(beta - mf);
    Ok(ln.exp())
}

/// Measure of the unit gauge sphere in the homogeneous polar decomposition.
pub(crate) fn gauge_sphere_area(n: usize, m: usize) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    // 2^{2n} |S^{2n-1}| |S^{m-1}| B(m/2, n/2) / 2 = 2^{2n+1} pi^{n+m/2} Gamma(n/2) / (Gamma(n) Gamma((n+m)/2))
    let ln = (2.0 * nf + 1.0) * std::f64::consts::LN_2 + (nf + mf / 2.0) * LN_PI
        + ln_gamma(nf / 2.0)
        - ln_gamma(nf)
        - ln_gamma((nf + mf) / 2.0);
    ln.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn ln_gamma_matches_known_values() {
        assert_relative_eq!(ln_gamma(1.0), 0.0, epsilon = 1e-14);
        assert_relative_eq!(ln_gamma(2.0), 0.0, epsilon = 1e-14);
        assert_relative_eq!(ln_gamma(0.5), (PI.sqrt()).ln(), max_relative = 1e-14);
        assert_relative_eq!(ln_gamma(10.0), 12.801827480081469611, max_relative = 1e-14);
        assert_relative_eq!(ln_gamma(0.25), 1.2880225246980774573, max_relative = 1e-13);
        // factorials
        let mut f = 1.0f64;
        for k in 2..30u32 {
            f *= (k - 1) as f64;
            assert_relative_eq!(ln_gamma(k as f64), f.ln(), max_relative = 1e-13);
        }
    }

    #[test]
    fn reflection_formula() {
        // |Gamma(-1/2)| = 2 sqrt(pi)
        assert_relative_eq!(
            ln_abs_gamma_neg(0.5).exp(),
            2.0 * PI.sqrt(),
            max_relative = 1e-13
        );
    }

    // Reference values computed with 40-digit gamma arithmetic.
    #[test]
    fn frozen_reference_values() {
        assert_relative_eq!(
            sharp_sobolev(1, 1, 0.5).unwrap(),
            1.9394541117411771434,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            hardy_const(1, 1, 0.5).unwrap(),
            1.0942198076132383194,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            green_const(1, 1, 0.5).unwrap(),
            0.015174623344114827865,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            groundstate_const(1, 1, 0.5).unwrap(),
            0.0041510933590501705124,
            max_relative = 1e-13
        );
        assert_relative_eq!(sphere_volume(1, 1), PI * PI, max_relative = 1e-13);
        assert_relative_eq!(
            sphere_volume(2, 1),
            15.503138340149910088,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            logsobolev_const(1, 1),
            4.0 * PI * PI,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            hls_const(1, 1, 0.5).unwrap(),
            33.97837236771102921,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            poisson_norm(1, 1, 0.5).unwrap(),
            0.0083021867181003410249,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            trace_factor(1, 1, 0.25).unwrap(),
            0.6722159042679924221,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            sharp_sobolev(2, 3, 0.5).unwrap(),
            3.3116528635134770284,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            green_const(2, 3, 0.25).unwrap(),
            0.00032336552595590550229,
            max_relative = 1e-13
        );
    }

    #[test]
    fn hardy_times_volume_power_equals_sobolev() {
        for &(n, m) in &[(1usize, 1usize), (2, 1), (2, 3), (4, 7), (3, 1), (8, 8)] {
            let q = 2.0 * (n + m) as f64;
            for &s in &[0.1, 0.25, 0.5, 0.75, 0.9] {
                let lhs = sharp_sobolev(n, m, s).unwrap();
                let rhs = hardy_const(n, m, s).unwrap() * sphere_volume(n, m).powf(2.0 * s / q);
                assert!(
                    ((lhs - rhs) / lhs).abs() <= 1e-12,
                    "identity violated at ({n},{m},{s}): {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn small_s_limits() {
        // Every constant in the Sobolev/Hardy family tends to 1 as s -> 0.
        for &(n, m) in &[(1usize, 1usize), (2, 3)] {
            assert_relative_eq!(sharp_sobolev(n, m, 1e-8).unwrap(), 1.0, epsilon = 1e-6);
            assert_relative_eq!(hardy_const(n, m, 1e-8).unwrap(), 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn green_sobolev_limit_chain() {
        // (S c)/s approaches Gamma((n+1)/2) Gamma((n+m)/2) / (2^{n+1} pi^{n+(m+1)/2}).
        for &(n, m) in &[(1usize, 1usize), (2, 3)] {
            let (nf, mf) = (n as f64, m as f64);
            let s = 1e-4;
            let lim = (ln_gamma((nf + 1.0) / 2.0) + ln_gamma((nf + mf) / 2.0)
                - (nf + 1.0) * std::f64::consts::LN_2
                - (nf + (mf + 1.0) / 2.0) * LN_PI)
                .exp();
            let at = sharp_sobolev(n, m, s).unwrap() * green_const(n, m, s).unwrap() / s;
            assert!(
                ((at - lim) / lim).abs() < 1e-3,
                "limit chain off at ({n},{m}): {at} vs {lim}"
            );
        }
    }

    #[test]
    fn hardy_shape_in_s() {
        // At (1, 1) the constant rises from 1, peaks near s = 0.6, and
        // returns to 1 as s -> 1; it stays strictly above 1 throughout.
        let mut prev = 1.0;
        for k in 1..=24 {
            let s = k as f64 / 48.0; // grid up to 0.5
            let v = hardy_const(1, 1, s).unwrap();
            assert!(v > prev, "not increasing at s = {s}");
            prev = v;
        }
        for k in 1..40 {
            let s = k as f64 / 40.0;
            assert!(hardy_const(1, 1, s).unwrap() > 1.0);
        }
        assert!(hardy_const(1, 1, 0.7).unwrap() < hardy_const(1, 1, 0.6).unwrap());
    }

    #[test]
    fn trace_factor_is_sobolev_at_half() {
        assert_relative_eq!(
            trace_factor(1, 1, 0.5).unwrap(),
            sharp_sobolev(1, 1, 0.5).unwrap(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            trace_factor(2, 3, 0.5).unwrap(),
            sharp_sobolev(2, 3, 0.5).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn range_checks_are_per_formula() {
        // s = 1.5 is out of range for the main family but fine for the Green family at n = 2.
        assert!(sharp_sobolev(2, 1, 1.5).is_err());
        assert!(green_const(2, 1, 1.5).is_ok());
        assert!(green_const(1, 1, 2.5).is_err());
        assert!(FractionalOrder::main(0.5).is_ok());
        assert!(FractionalOrder::main(1.0).is_err());
        assert!(FractionalOrder::extended(2.5, 2).is_ok());
    }

    #[test]
    fn profile_mass_and_sphere_area() {
        // mass at beta = Q is the sphere volume
        for &(n, m) in &[(1usize, 1usize), (2, 1), (2, 3)] {
            let q = (2 * n + 2 * m) as f64;
            assert_relative_eq!(
                quartic_profile_mass(n, m, q).unwrap(),
                sphere_volume(n, m),
                max_relative = 1e-12
            );
        }
        // frozen values at (1,1)
        assert_relative_eq!(
            quartic_profile_mass(1, 1, 2.5).unwrap(),
            60.2250969506509902,
            max_relative = 1e-12
        );
        assert_relative_eq!(gauge_sphere_area(1, 1), 8.0 * PI * PI, max_relative = 1e-12);
        assert!(quartic_profile_mass(1, 1, 2.0).is_err());
    }
}
