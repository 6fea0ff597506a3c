//! Group law, homogeneous geometry, and finite-difference differential
//! operators of an H-type group.
//!
//! Points are written (z, w) with z in R^{2n} and w in R^m. The group law is
//!
//!   (z, w) o (z', w') = (z + z', w_k + w'_k + <z, U^(k) z'> / 2),
//!
//! the gauge norm is (|z|^4/16 + |w|^2)^{1/4}, and the anisotropic dilation
//! scales z by mu and w by mu^2, giving homogeneous dimension Q = 2n + 2m.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::clifford::{build_generators, verify_generators, GeneratorSet, GeneratorSetDump};
use crate::error::{Error, Result};

/// An H-type group: a validated generator system plus cached flat matrices.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    gens: GeneratorSet,
    n: usize,
    m: usize,
    /// Row-major copies of the generators for allocation-free inner loops.
    flat: Vec<Vec<f64>>,
}

/// A group element.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupPoint {
    pub z: Vec<f64>,
    pub w: Vec<f64>,
}

impl GroupPoint {
    pub fn new(z: Vec<f64>, w: Vec<f64>) -> Self {
        Self { z, w }
    }

    pub fn origin(n: usize, m: usize) -> Self {
        Self {
            z: vec![0.0; 2 * n],
            w: vec![0.0; m],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.z.iter().chain(self.w.iter()).all(|x| x.is_finite())
    }

    /// Squared Euclidean length of the horizontal part.
    pub fn z_norm2(&self) -> f64 {
        self.z.iter().map(|x| x * x).sum()
    }

    /// Squared Euclidean length of the center part.
    pub fn w_norm2(&self) -> f64 {
        self.w.iter().map(|x| x * x).sum()
    }
}

/// Serialization form used by the CLI dump command.
#[derive(Debug, Clone, Serialize)]
pub struct GroupSpecDump {
    pub n: usize,
    pub m: usize,
    pub q: usize,
    pub generators: GeneratorSetDump,
}

impl GroupSpec {
    /// Wrap a generator system, validating its invariants.
    pub fn new(gens: GeneratorSet) -> Result<Self> {
        let report = verify_generators(&gens);
        if report.max_residual() > 1e-13 {
            return Err(Error::Normalization(format!(
                "generator system fails its invariants (max residual {})",
                report.max_residual()
            )));
        }
        let dim = 2 * gens.n;
        let flat = gens
            .mats
            .iter()
            .map(|u| {
                let mut v = Vec::with_capacity(dim * dim);
                for i in 0..dim {
                    for j in 0..dim {
                        v.push(u[(i, j)]);
                    }
                }
                v
            })
            .collect();
        Ok(Self {
            n: gens.n,
            m: gens.m,
            gens,
            flat,
        })
    }

    /// The deterministic standard group for the given dimensions.
    pub fn standard(n: usize, m: usize) -> Result<Self> {
        Self::new(build_generators(n, m)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Homogeneous dimension Q = 2n + 2m.
    pub fn q(&self) -> f64 {
        (2 * self.n + 2 * self.m) as f64
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn dump(&self) -> GroupSpecDump {
        GroupSpecDump {
            n: self.n,
            m: self.m,
            q: 2 * self.n + 2 * self.m,
            generators: self.gens.dump(),
        }
    }

    pub fn origin(&self) -> GroupPoint {
        GroupPoint::origin(self.n, self.m)
    }

    fn check_dims(&self, p: &GroupPoint) -> Result<()> {
        if p.z.len() != 2 * self.n || p.w.len() != self.m {
            return Err(Error::DimensionMismatch {
                expect_z: 2 * self.n,
                expect_w: self.m,
                got_z: p.z.len(),
                got_w: p.w.len(),
            });
        }
        Ok(())
    }

    /// Bilinear form <a, U^(k) b> of the k-th generator.
    #[inline]
    pub fn u_form(&self, k: usize, a: &[f64], b: &[f64]) -> f64 {
        let dim = 2 * self.n;
        let u = &self.flat[k];
        let mut acc = 0.0;
        for i in 0..dim {
            let mut row = 0.0;
            let base = i * dim;
            for j in 0..dim {
                row += u[base + j] * b[j];
            }
            acc += a[i] * row;
        }
        acc
    }

    /// In-place group product, no dimension checks. `out` must not alias.
    #[inline]
    pub fn multiply_into(&self, a: &GroupPoint, b: &GroupPoint, out: &mut GroupPoint) {
        for i in 0..2 * self.n {
            out.z[i] = a.z[i] + b.z[i];
        }
        for k in 0..self.m {
            out.w[k] = a.w[k] + b.w[k] + 0.5 * self.u_form(k, &a.z, &b.z);
        }
    }

    /// Group product a o b.
    pub fn multiply(&self, a: &GroupPoint, b: &GroupPoint) -> Result<GroupPoint> {
        self.check_dims(a)?;
        self.check_dims(b)?;
        let mut out = self.origin();
        self.multiply_into(a, b, &mut out);
        Ok(out)
    }

    /// Group inverse: (-z, -w). The bilinear term vanishes by skewness.
    pub fn inverse(&self, a: &GroupPoint) -> Result<GroupPoint> {
        self.check_dims(a)?;
        Ok(GroupPoint {
            z: a.z.iter().map(|x| -x).collect(),
            w: a.w.iter().map(|x| -x).collect(),
        })
    }

    /// Gauge norm (|z|^4/16 + |w|^2)^{1/4}.
    pub fn norm(&self, a: &GroupPoint) -> f64 {
        let z2 = a.z_norm2();
        let w2 = a.w_norm2();
        (z2 * z2 / 16.0 + w2).sqrt().sqrt()
    }

    /// Anisotropic dilation (mu z, mu^2 w).
    pub fn dilate(&self, mu: f64, a: &GroupPoint) -> Result<GroupPoint> {
        if !(mu > 0.0) {
            return Err(Error::OutOfRange {
                name: "mu",
                value: mu,
                range: "(0, inf)",
            });
        }
        self.check_dims(a)?;
        Ok(GroupPoint {
            z: a.z.iter().map(|x| mu * x).collect(),
            w: a.w.iter().map(|x| mu * mu * x).collect(),
        })
    }

    /// Left-invariant distance: gauge norm of b^{-1} o a.
    pub fn distance(&self, a: &GroupPoint, b: &GroupPoint) -> f64 {
        debug_assert!(a.z.len() == 2 * self.n && b.z.len() == 2 * self.n);
        // norm(b^{-1} o a) computed without allocating the product
        let mut z2 = 0.0;
        for i in 0..2 * self.n {
            let d = a.z[i] - b.z[i];
            z2 += d * d;
        }
        let mut w2 = 0.0;
        for k in 0..self.m {
            // w-part of b^{-1} o a: a_w - b_w + <-b_z, U a_z>/2
            let cross = 0.5 * self.u_form(k, &b.z, &a.z);
            let d = a.w[k] - b.w[k] - cross;
            w2 += d * d;
        }
        (z2 * z2 / 16.0 + w2).sqrt().sqrt()
    }

    /// The orthogonal map J_w on the horizontal layer induced by a center
    /// vector w through the defining identity <J_w v, o> = <w, [v, o]>.
    ///
    /// With the group law above, the commutator is [v, o]_k = <v, U^(k) o>,
    /// which forces J_w = sum_k w_k (U^(k))^T.
    pub fn j_map(&self, w: &[f64]) -> DMatrix<f64> {
        assert_eq!(w.len(), self.m);
        let dim = 2 * self.n;
        let mut j = DMatrix::zeros(dim, dim);
        for (k, u) in self.gens.mats.iter().enumerate() {
            j += u.transpose() * w[k];
        }
        j
    }

    /// Commutator of two horizontal vectors as a center vector:
    /// [v, o]_k = <v, U^(k) o>.
    pub fn horizontal_commutator(&self, v: &[f64], o: &[f64]) -> Vec<f64> {
        (0..self.m).map(|k| self.u_form(k, v, o)).collect()
    }

    /// Split p != 0 into (gauge radius, unit-sphere direction).
    pub fn polar_split(&self, p: &GroupPoint) -> Result<(f64, GroupPoint)> {
        self.check_dims(p)?;
        let rho = self.norm(p);
        if rho == 0.0 {
            return Err(Error::OutOfRange {
                name: "norm(p)",
                value: 0.0,
                range: "(0, inf)",
            });
        }
        let sigma = self.dilate(1.0 / rho, p)?;
        Ok((rho, sigma))
    }

    /// Default finite-difference step at a point.
    pub fn fd_step(&self, p: &GroupPoint) -> f64 {
        1e-4 * (1.0 + self.norm(p))
    }

    /// Second-order central-difference evaluation of the sublaplacian
    ///
    ///   -Delta_z - |z|^2/4 Delta_w - sum_k <z, U^(k) grad_z> d/dw_k
    ///
    /// applied to `f` at `p`, with step `h`.
    pub fn sublaplacian_fd<F>(&self, f: F, p: &GroupPoint, h: f64) -> Result<f64>
    where
        F: Fn(&GroupPoint) -> f64,
    {
        self.check_dims(p)?;
        let dim = 2 * self.n;
        let f0 = f(p);
        let mut acc = 0.0;
        let mut q = p.clone();
        // -Delta_z
        for i in 0..dim {
            q.z[i] = p.z[i] + h;
            let fp = f(&q);
            q.z[i] = p.z[i] - h;
            let fm = f(&q);
            q.z[i] = p.z[i];
            acc -= (fp - 2.0 * f0 + fm) / (h * h);
        }
        // -|z|^2/4 Delta_w
        let z2 = p.z_norm2();
        for k in 0..self.m {
            q.w[k] = p.w[k] + h;
            let fp = f(&q);
            q.w[k] = p.w[k] - h;
            let fm = f(&q);
            q.w[k] = p.w[k];
            acc -= z2 / 4.0 * (fp - 2.0 * f0 + fm) / (h * h);
        }
        // -sum_k <z, U^(k) grad_z> d/dw_k via 4-point mixed stencils:
        // coefficient of d^2f/(dz_j dw_k) is (U^(k)T z)_j = <z, U^(k) e_j>.
        for k in 0..self.m {
            for j in 0..dim {
                let mut coeff = 0.0;
                let u = &self.flat[k];
                for i in 0..dim {
                    coeff += p.z[i] * u[i * dim + j];
                }
                if coeff == 0.0 {
                    continue;
                }
                q.z[j] = p.z[j] + h;
                q.w[k] = p.w[k] + h;
                let fpp = f(&q);
                q.w[k] = p.w[k] - h;
                let fpm = f(&q);
                q.z[j] = p.z[j] - h;
                let fmm = f(&q);
                q.w[k] = p.w[k] + h;
                let fmp = f(&q);
                q.z[j] = p.z[j];
                q.w[k] = p.w[k];
                let mixed = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
                acc -= coeff * mixed;
            }
        }
        if acc.is_finite() {
            Ok(acc)
        } else {
            Err(Error::NonFiniteSample {
                z: p.z.clone(),
                w: p.w.clone(),
            })
        }
    }

    /// Central-difference horizontal gradient (X_1 f, ..., X_2n f) at `p`.
    ///
    /// X_j = d/dz_j + (1/2) sum_k (U^(k)T z)_j d/dw_k.
    pub fn horizontal_gradient_fd<F>(&self, f: F, p: &GroupPoint, h: f64) -> Result<Vec<f64>>
    where
        F: Fn(&GroupPoint) -> f64,
    {
        self.check_dims(p)?;
        let dim = 2 * self.n;
        let mut q = p.clone();
        let mut dz = vec![0.0; dim];
        for j in 0..dim {
            q.z[j] = p.z[j] + h;
            let fp = f(&q);
            q.z[j] = p.z[j] - h;
            let fm = f(&q);
            q.z[j] = p.z[j];
            dz[j] = (fp - fm) / (2.0 * h);
        }
        let mut dw = vec![0.0; self.m];
        for k in 0..self.m {
            q.w[k] = p.w[k] + h;
            let fp = f(&q);
            q.w[k] = p.w[k] - h;
            let fm = f(&q);
            q.w[k] = p.w[k];
            dw[k] = (fp - fm) / (2.0 * h);
        }
        let mut grad = vec![0.0; dim];
        for j in 0..dim {
            let mut g = dz[j];
            for k in 0..self.m {
                let u = &self.flat[k];
                let mut coeff = 0.0;
                for i in 0..dim {
                    coeff += p.z[i] * u[i * dim + j];
                }
                g += 0.5 * coeff * dw[k];
            }
            grad[j] = g;
        }
        if grad.iter().all(|x| x.is_finite()) {
            Ok(grad)
        } else {
            Err(Error::NonFiniteSample {
                z: p.z.clone(),
                w: p.w.clone(),
            })
        }
    }
}
