//! The extremal profile, its conformal orbit, the Cayley transform, and the
//! unit-sphere coordinate functions obtained as normalized first variations
//! of the orbit.
//!
//! Everything here is built on the quartic profile
//!
//!   B(z, w) = (1 + |z|^2/4)^2 + |w|^2,
//!
//! whose power B^{-(Q-2s)/4} is the extremal of the Sobolev quotient and
//! whose power B^{-Q/2} is the Jacobian of the Cayley transform.

use std::sync::Arc;

use crate::constants::FractionalOrder;
use crate::error::{Error, Result};
use crate::group::{GroupPoint, GroupSpec};

/// Symmetry metadata used by the quadrature planner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// Depends only on |z| and |w|.
    Cylindrical,
    None,
}

type EvalFn = Arc<dyn Fn(&GroupPoint) -> f64 + Send + Sync>;
type CylFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// An evaluable scalar function on the group with the decay metadata the
/// quadrature layer needs: |f| <= bound * (1 + norm)^(-decay).
#[derive(Clone)]
pub struct ScalarField {
    eval: EvalFn,
    /// Fast path for cylindrical fields: arguments (|z|^2, |w|^2).
    cyl: Option<CylFn>,
    pub symmetry: Symmetry,
    pub decay: f64,
    pub bound: f64,
    pub label: String,
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField")
            .field("label", &self.label)
            .field("symmetry", &self.symmetry)
            .field("decay", &self.decay)
            .field("bound", &self.bound)
            .finish()
    }
}

impl ScalarField {
    pub fn new(
        label: impl Into<String>,
        decay: f64,
        bound: f64,
        eval: impl Fn(&GroupPoint) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            cyl: None,
            symmetry: Symmetry::None,
            decay,
            bound,
            label: label.into(),
        }
    }

    pub fn new_cylindrical(
        label: impl Into<String>,
        decay: f64,
        bound: f64,
        cyl: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        let cyl: CylFn = Arc::new(cyl);
        let c2 = cyl.clone();
        Self {
            eval: Arc::new(move |p: &GroupPoint| c2(p.z_norm2(), p.w_norm2())),
            cyl: Some(cyl),
            symmetry: Symmetry::Cylindrical,
            decay,
            bound,
            label: label.into(),
        }
    }

    #[inline]
    pub fn eval(&self, p: &GroupPoint) -> f64 {
        (self.eval)(p)
    }

    /// Cylindrical fast path; arguments are |z|^2 and |w|^2.
    #[inline]
    pub fn eval_cyl(&self, z2: f64, w2: f64) -> Option<f64> {
        self.cyl.as_ref().map(|c| c(z2, w2))
    }

    /// Pointwise scaling by a constant.
    pub fn scaled(&self, c: f64) -> Self {
        let e = self.eval.clone();
        let cylp = self.cyl.clone().map(|f| {
            let g: CylFn = Arc::new(move |z2, w2| c * f(z2, w2));
            g
        });
        Self {
            eval: Arc::new(move |p| c * e(p)),
            cyl: cylp,
            symmetry: self.symmetry,
            decay: self.decay,
            bound: self.bound * c.abs(),
            label: format!("{} * {c}", self.label),
        }
    }

    /// Pointwise product; decay exponents add.
    pub fn product(&self, other: &Self) -> Self {
        let a = self.eval.clone();
        let b = other.eval.clone();
        let sym = if self.symmetry == Symmetry::Cylindrical
            && other.symmetry == Symmetry::Cylindrical
        {
            Symmetry::Cylindrical
        } else {
            Symmetry::None
        };
        let cyl = match (self.cyl.clone(), other.cyl.clone()) {
            (Some(f), Some(g)) => {
                let h: CylFn = Arc::new(move |z2, w2| f(z2, w2) * g(z2, w2));
                Some(h)
            }
            _ => None,
        };
        Self {
            eval: Arc::new(move |p| a(p) * b(p)),
            cyl,
            symmetry: sym,
            decay: self.decay + other.decay,
            bound: self.bound * other.bound,
            label: format!("{} * {}", self.label, other.label),
        }
    }

    /// Pointwise sum; the weaker decay wins.
    pub fn sum(&self, other: &Self) -> Self {
        let a = self.eval.clone();
        let b = other.eval.clone();
        let sym = if self.symmetry == Symmetry::Cylindrical
            && other.symmetry == Symmetry::Cylindrical
        {
            Symmetry::Cylindrical
        } else {
            Symmetry::None
        };
        let cyl = match (self.cyl.clone(), other.cyl.clone()) {
            (Some(f), Some(g)) => {
                let h: CylFn = Arc::new(move |z2, w2| f(z2, w2) + g(z2, w2));
                Some(h)
            }
            _ => None,
        };
        Self {
            eval: Arc::new(move |p| a(p) + b(p)),
            cyl,
            symmetry: sym,
            decay: self.decay.min(other.decay),
            bound: self.bound + other.bound,
            label: format!("{} + {}", self.label, other.label),
        }
    }
}

/// Dilation-translation parameters of the conformal orbit.
#[derive(Debug, Clone)]
pub struct ConformalParams {
    pub mu: f64,
    pub eta: GroupPoint,
    pub s: FractionalOrder,
}

impl ConformalParams {
    pub fn new(mu: f64, eta: GroupPoint, s: FractionalOrder) -> Result<Self> {
        if !(mu > 0.0) {
            return Err(Error::OutOfRange {
                name: "mu",
                value: mu,
                range: "(0, inf)",
            });
        }
        Ok(Self { mu, eta, s })
    }
}

/// The quartic profile B(z, w) from squared lengths.
#[inline]
pub fn quartic_profile(z2: f64, w2: f64) -> f64 {
    let a = 1.0 + z2 / 4.0;
    a * a + w2
}

/// The extremal profile B^{-(Q-2s)/4}. Valid for 0 < s < n + 1; the
/// inequalities themselves restrict to 0 < s < 1.
pub fn extremal_u(group: &GroupSpec, s: f64) -> Result<ScalarField> {
    let n = group.n() as f64;
    if !(s > 0.0 && s < n + 1.0) {
        return Err(Error::OutOfRange {
            name: "s",
            value: s,
            range: "(0, n + 1)",
        });
    }
    let q = group.q();
    let alpha = q - 2.0 * s;
    // B >= max(1, norm^4) so B^{-alpha/4} <= 2^alpha (1 + norm)^{-alpha}.
    Ok(ScalarField::new_cylindrical(
        format!("U[s={s}]"),
        alpha,
        (2.0f64).powf(alpha),
        move |z2, w2| quartic_profile(z2, w2).powf(-alpha / 4.0),
    ))
}

/// The two-parameter profile family B_rho^{-(Q+2s)/4} with
/// B_rho = (rho + |z|^2/4)^2 + |w|^2. At (s, rho) = (-s0, 1) this is the
/// extremal profile of order s0.
pub fn phi(group: &GroupSpec, s: f64, rho: f64) -> Result<ScalarField> {
    let n = group.n() as f64;
    if !(s > -(n + 1.0) && s < n + 1.0) {
        return Err(Error::OutOfRange {
            name: "s",
            value: s,
            range: "(-n - 1, n + 1)",
        });
    }
    if !(rho > 0.0) {
        return Err(Error::OutOfRange {
            name: "rho",
            value: rho,
            range: "(0, inf)",
        });
    }
    let q = group.q();
    let alpha = q + 2.0 * s;
    let bound = (2.0f64).powf(alpha) * rho.powf(-alpha / 2.0).max(1.0);
    Ok(ScalarField::new_cylindrical(
        format!("phi[s={s},rho={rho}]"),
        alpha,
        bound,
        move |z2, w2| {
            let a = rho + z2 / 4.0;
            (a * a + w2).powf(-alpha / 4.0)
        },
    ))
}

/// The translated-dilated extremal mu^{(Q-2s)/2} U(delta_mu(eta^{-1} o xi)).
pub fn conformal_orbit(group: &GroupSpec, params: &ConformalParams) -> Result<ScalarField> {
    let s = params.s.value();
    let q = group.q();
    let alpha = q - 2.0 * s;
    let mu = params.mu;
    let eta_inv = group.inverse(&params.eta)?;
    let g = group.clone();
    let amp = mu.powf(alpha / 2.0);
    let bound = amp
        * (2.0 * (1.0 + group.norm(&params.eta)) * (1.0 + 1.0 / mu)).powf(alpha)
        * (2.0f64).powf(alpha);
    Ok(ScalarField::new(
        format!("U[mu={mu},eta,s={s}]"),
        alpha,
        bound,
        move |p: &GroupPoint| {
            let mut shifted = GroupPoint::origin(g.n(), g.m());
            g.multiply_into(&eta_inv, p, &mut shifted);
            let z2 = shifted.z_norm2() * mu * mu;
            let w2 = shifted.w_norm2() * mu.powi(4);
            amp * quartic_profile(z2, w2).powf(-alpha / 4.0)
        },
    ))
}

/// Jacobian of the Cayley transform: B^{-Q/2} = U^{2Q/(Q-2s)}.
pub fn cayley_jacobian(group: &GroupSpec) -> ScalarField {
    let q = group.q();
    ScalarField::new_cylindrical(
        "J_cayley",
        2.0 * q,
        (2.0f64).powf(2.0 * q),
        move |z2, w2| quartic_profile(z2, w2).powf(-q / 2.0),
    )
}

/// The conformal map onto the unit sphere of R^{2n+m+1}.
///
/// Components: (A-bar z / B, 2w / B, (-1 + |z|^4/16 + |w|^2) / B) with
/// A-bar = (1 + |z|^2/4) - J_w. Always unit length.
pub fn cayley(group: &GroupSpec, p: &GroupPoint) -> Result<Vec<f64>> {
    let dim = 2 * group.n();
    if p.z.len() != dim || p.w.len() != group.m() {
        return Err(Error::DimensionMismatch {
            expect_z: dim,
            expect_w: group.m(),
            got_z: p.z.len(),
            got_w: p.w.len(),
        });
    }
    let z2 = p.z_norm2();
    let w2 = p.w_norm2();
    let a = 1.0 + z2 / 4.0;
    let b = a * a + w2;
    let mut out = vec![0.0; dim + group.m() + 1];
    // A-bar z = a z - J_w z, with J_w = sum_k w_k U^(k)^T; so
    // (A-bar z)_i = a z_i - sum_k w_k (U^(k)^T z)_i = a z_i - sum_k w_k <z, U^(k) e_i>.
    for i in 0..dim {
        let mut v = a * p.z[i];
        for k in 0..group.m() {
            let mut col = 0.0;
            // (U^T z)_i = sum_l z_l U_{l,i}
            for l in 0..dim {
                col += p.z[l] * group.generators().mats[k][(l, i)];
            }
            v -= p.w[k] * col;
        }
        out[i] = v / b;
    }
    for k in 0..group.m() {
        out[dim + k] = 2.0 * p.w[k] / b;
    }
    out[dim + group.m()] = (-1.0 + z2 * z2 / 16.0 + w2) / b;
    Ok(out)
}

/// The coordinate functions obtained by differentiating the conformal orbit
/// in its translation and dilation parameters at the identity, normalized so
/// their squares sum to 1.
///
/// Closed forms (independent of s, as the normalization cancels the U-powers):
///   omega_j       = (A-bar z)_j / B            for j = 1..2n,
///   omega_{2n+r}  = 2 w_r / B                  for r = 1..m,
///   omega_{2n+m+1}= 2(1 + |z|^2/4)/B - 1.
///
/// These are exactly the Cayley coordinates with the last one negated, so
/// the unit-norm identity is inherited.
pub fn omega(group: &GroupSpec, s: f64, j: usize) -> Result<ScalarField> {
    let n = group.n() as f64;
    if !(s > 0.0 && s < n + 1.0) {
        return Err(Error::OutOfRange {
            name: "s",
            value: s,
            range: "(0, n + 1)",
        });
    }
    let total = 2 * group.n() + group.m() + 1;
    if j == 0 || j > total {
        return Err(Error::OutOfRange {
            name: "j",
            value: j as f64,
            range: "1..=2n+m+1",
        });
    }
    let g = group.clone();
    let dim = 2 * group.n();
    let idx = j - 1;
    let eval = move |p: &GroupPoint| -> f64 {
        let z2 = p.z_norm2();
        let w2 = p.w_norm2();
        let a = 1.0 + z2 / 4.0;
        let b = a * a + w2;
        if idx < dim {
            let mut v = a * p.z[idx];
            for k in 0..g.m() {
                let mut col = 0.0;
                for l in 0..dim {
                    col += p.z[l] * g.generators().mats[k][(l, idx)];
                }
                v -= p.w[k] * col;
            }
            v / b
        } else if idx < dim + g.m() {
            2.0 * p.w[idx - dim] / b
        } else {
            2.0 * a / b - 1.0
        }
    };
    // Bounded by 1 everywhere; no decay at infinity in general (the last
    // component tends to -1), so decay 0 with bound 1.
    Ok(ScalarField::new(format!("omega[{j}]"), 0.0, 1.0, eval))
}

/// Sharpness test family C_eps (sqrt(1 - eps^2) + eps omega_1), with the
/// normalization constant supplied by the caller (it is quadrature-determined
/// at a higher layer).
pub fn f_epsilon_normalized(group: &GroupSpec, eps: f64, c_eps: f64) -> Result<ScalarField> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
            range: "(0, 1/2)",
        });
    }
    let om = omega(group, 0.5, 1)?;
    let base = (1.0 - eps * eps).sqrt();
    Ok(ScalarField::new(
        format!("F[eps={eps}]"),
        0.0,
        c_eps * (base + eps),
        move |p| c_eps * (base + eps * om.eval(p)),
    ))
}
