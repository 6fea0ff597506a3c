//! Construction and validation of the anticommuting skew-orthogonal matrix
//! systems that define an H-type group.
//!
//! A valid system on R^{2n} is a list of m matrices U^(1), ..., U^(m), each
//! skew-symmetric and orthogonal, with U^(j) U^(k) + U^(k) U^(j) = 0 for
//! j != k. The maximal m is rho(2n) - 1, where rho is the Hurwitz-Radon
//! function. The builder below produces integer-valued (signed permutation)
//! matrices, so the invariants hold exactly in floating point.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};

/// A system of m generator matrices on R^{2n}.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    /// Half the horizontal dimension.
    pub n: usize,
    /// Center dimension (number of matrices).
    pub m: usize,
    /// The matrices, each 2n x 2n.
    pub mats: Vec<DMatrix<f64>>,
}

/// Maximal residuals of the three defining invariants, one per invariant.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ValidationReport {
    /// max |U + U^T| entrywise over all matrices.
    pub skew: f64,
    /// max |U^T U - I| entrywise over all matrices.
    pub orthogonality: f64,
    /// max |U^(j) U^(k) + U^(k) U^(j)| entrywise over pairs j != k.
    pub anticommutation: f64,
}

impl ValidationReport {
    pub fn max_residual(&self) -> f64 {
        self.skew.max(self.orthogonality).max(self.anticommutation)
    }
}

/// Serialization form of a [`GeneratorSet`]: matrices as nested row-major arrays.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSetDump {
    pub n: usize,
    pub m: usize,
    pub mats: Vec<Vec<Vec<f64>>>,
}

impl GeneratorSet {
    pub fn dump(&self) -> GeneratorSetDump {
        GeneratorSetDump {
            n: self.n,
            m: self.m,
            mats: self
                .mats
                .iter()
                .map(|u| {
                    (0..u.nrows())
                        .map(|i| (0..u.ncols()).map(|j| u[(i, j)]).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// Hurwitz-Radon function: rho(N) = 8a + 2^b where N = 2^(4a+b) c, c odd, 0 <= b <= 3.
pub fn radon_hurwitz(n: usize) -> usize {
    assert!(n >= 1, "radon_hurwitz requires N >= 1");
    let e = n.trailing_zeros() as usize;
    let (a, b) = (e / 4, e % 4);
    8 * a + (1 << b)
}

// 2x2 building blocks: rotation (skew), the two real reflections, identity.
fn rot2() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
}
fn refl_diag() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
}
fn refl_anti() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

/// Structure constants of the Cayley-Dickson algebra of dimension d
/// (d = 1, 2, 4, 8 for reals, complexes, quaternions, octonions):
/// e_i e_j = sign * e_k. Uses (a,b)(c,d) = (ac - d~ b, da + b c~) on pairs,
/// with conjugation negating every imaginary unit.
fn cd_mul(d: usize, i: usize, j: usize) -> (i32, usize) {
    if d == 1 {
        return (1, 0);
    }
    let h = d / 2;
    let conj = |(s, k): (i32, usize)| if k == 0 { (s, k) } else { (-s, k) };
    match (i < h, j < h) {
        (true, true) => cd_mul(h, i, j),
        (true, false) => {
            // (a, 0)(0, d) = (0, d a)
            let (s, k) = cd_mul(h, j - h, i);
            (s, k + h)
        }
        (false, true) => {
            // (0, b)(c, 0) = (0, b c~)
            let (sc, kc) = conj((1, j));
            let (s, k) = cd_mul(h, i - h, kc);
            (s * sc, k + h)
        }
        (false, false) => {
            // (0, b)(0, d) = (-d~ b, 0)
            let (sd, kd) = conj((1, j - h));
            let (s, k) = cd_mul(h, kd, i - h);
            (-s * sd, k)
        }
    }
}

/// Left-multiplication matrices of the seven imaginary octonion units.
/// Entries are 0 or +-1; alternativity makes them skew-orthogonal and
/// mutually anticommuting on R^8.
fn octonion_left_mults() -> Vec<DMatrix<f64>> {
    let dim = 8usize;
    (1..dim)
        .map(|i| {
            let mut l = DMatrix::zeros(dim, dim);
            for j in 0..dim {
                let (s, k) = cd_mul(dim, i, j);
                l[(k, j)] = s as f64;
            }
            l
        })
        .collect()
}

/// Optimal anticommuting family on R^(2^e), built recursively:
/// e = 0 empty; e = 1 the rotation; e = 2 a triple; e = 3 the octonion
/// left-multiplications; e >= 4 the period-8 step through R^16.
fn family_for_power(e: usize) -> Vec<DMatrix<f64>> {
    match e {
        0 => vec![],
        1 => vec![rot2()],
        2 => {
            let (ee, p, q) = (rot2(), refl_diag(), refl_anti());
            let id2 = DMatrix::identity(2, 2);
            vec![kron(&ee, &p), kron(&ee, &q), kron(&id2, &ee)]
        }
        3 => octonion_left_mults(),
        _ => {
            // Family on R^16: octonion family tensor refl_diag, plus I8 tensor rot2.
            let oct = octonion_left_mults();
            let id8 = DMatrix::identity(8, 8);
            let mut k16: Vec<DMatrix<f64>> =
                oct.iter().map(|b| kron(b, &refl_diag())).collect();
            k16.push(kron(&id8, &rot2()));
            // Chirality element: product of all eight; symmetric, orthogonal,
            // anticommutes with each of them.
            let mut r16 = DMatrix::identity(16, 16);
            for k in &k16 {
                r16 = &r16 * k;
            }
            let sub = family_for_power(e - 4);
            let d = 1usize << (e - 4);
            let id_d = DMatrix::identity(d, d);
            let mut fam: Vec<DMatrix<f64>> =
                k16.iter().map(|k| kron(&id_d, k)).collect();
            fam.extend(sub.iter().map(|j| kron(j, &r16)));
            fam
        }
    }
}

/// Build a generator system for the group with parameters (n, m).
///
/// The construction is deterministic: the minimal power-of-two block that
/// admits m generators is built by the tensor ladder and then repeated
/// block-diagonally to fill R^{2n}.
pub fn build_generators(n: usize, m: usize) -> Result<GeneratorSet> {
    assert!(n >= 1 && m >= 1, "build_generators requires n, m >= 1");
    let dim = 2 * n;
    let bound = radon_hurwitz(dim) - 1;
    if m > bound {
        return Err(Error::InadmissibleGroup { n, m, bound });
    }
    // Smallest 2^e dividing 2n that carries at least m generators.
    let e_max = dim.trailing_zeros() as usize;
    let e = (0..=e_max)
        .find(|&e| {
            let rho = radon_hurwitz(1 << e);
            rho >= m + 1
        })
        .expect("admissibility implies a sufficient power-of-two block");
    let block = family_for_power(e);
    let d = 1usize << e;
    let copies = dim / d;
    let mats = block
        .into_iter()
        .take(m)
        .map(|b| {
            let mut u = DMatrix::zeros(dim, dim);
            for c in 0..copies {
                u.view_mut((c * d, c * d), (d, d)).copy_from(&b);
            }
            u
        })
        .collect();
    Ok(GeneratorSet { n, m, mats })
}

/// Report the maximal residual of each defining invariant.
pub fn verify_generators(g: &GeneratorSet) -> ValidationReport {
    let dim = 2 * g.n;
    let id = DMatrix::<f64>::identity(dim, dim);
    let mut skew = 0.0f64;
    let mut orth = 0.0f64;
    let mut anti = 0.0f64;
    for u in &g.mats {
        let s = u + u.transpose();
        skew = skew.max(s.amax());
        let o = u.transpose() * u - &id;
        orth = orth.max(o.amax());
    }
    for j in 0..g.mats.len() {
        for k in (j + 1)..g.mats.len() {
            let a = &g.mats[j] * &g.mats[k] + &g.mats[k] * &g.mats[j];
            anti = anti.max(a.amax());
        }
    }
    ValidationReport {
        skew,
        orthogonality: orth,
        anticommutation: anti,
    }
}
