use num_traits::Zero;

use super::{ExactAlgError, GaussianRational};
use crate::Rational;

/// Square matrix over the Gaussian rationals equal to its conjugate transpose.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HermitianMatrix {
    n: usize,
    entries: Vec<GaussianRational>,
}

/// Sign counts of a Hermitian form.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

impl HermitianMatrix {
    pub fn new(n: usize, entries: Vec<GaussianRational>) -> Result<Self, ExactAlgError> {
        if entries.len() != n * n {
            return Err(ExactAlgError::Shape);
        }
        for i in 0..n {
            for j in i..n {
                if entries[i * n + j] != entries[j * n + i].conj() {
                    return Err(ExactAlgError::NotHermitian { row: i, col: j });
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// Real symmetric integer matrix viewed as Hermitian.
    pub fn from_symmetric_i64(n: usize, entries: &[i64]) -> Result<Self, ExactAlgError> {
        Self::new(
            n,
            entries
                .iter()
                .map(|&x| GaussianRational::from_int(x))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.n + j]
    }
}

/// Inertia of `h` from a pivoted LDL* decomposition in exact arithmetic.
///
/// Pivots on the diagonal entry of largest absolute value; when every remaining
/// diagonal entry is zero, eliminates a 2x2 hyperbolic block on the off-diagonal
/// entry of largest norm, which contributes one positive and one negative square.
pub fn ldlstar_inertia(h: &HermitianMatrix) -> Inertia {
    let n = h.n;
    let mut a: Vec<Vec<GaussianRational>> = (0..n)
        .map(|i| (0..n).map(|j| h.get(i, j).clone()).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia::default();

    while !active.is_empty() {
        let diag = active
            .iter()
            .copied()
            .filter(|&i| !a[i][i].is_zero())
            .max_by(|&i, &j| abs(a[i][i].re()).cmp(&abs(a[j][j].re())));
        if let Some(p) = diag {
            let d = a[p][p].re().clone();
            if d > Rational::zero() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            active.retain(|&k| k != p);
            let dinv = GaussianRational::from_rational(Rational::from_integer(1.into()) / d);
            for &r in &active {
                if a[r][p].is_zero() {
                    continue;
                }
                let f = &a[r][p] * &dinv;
                for &c in &active {
                    if a[p][c].is_zero() {
                        continue;
                    }
                    let t = &f * &a[p][c];
                    a[r][c] = &a[r][c] - &t;
                }
            }
            continue;
        }

        let mut best: Option<(usize, usize, Rational)> = None;
        for (x, &i) in active.iter().enumerate() {
            for &j in &active[x + 1..] {
                if a[i][j].is_zero() {
                    continue;
                }
                let nrm = a[i][j].norm_sqr();
                if best.as_ref().is_none_or(|b| nrm > b.2) {
                    best = Some((i, j, nrm));
                }
            }
        }
        let Some((i, j, _)) = best else {
            out.nullity += active.len();
            break;
        };
        out.positive += 1;
        out.negative += 1;
        active.retain(|&k| k != i && k != j);
        // Block [[0, h], [conj h, 0]] has inverse [[0, 1/conj h], [1/h, 0]].
        let hinv = a[i][j].recip();
        let hbar_inv = a[j][i].recip();
        for &r in &active {
            let left_i = &a[r][i] * &hbar_inv;
            let left_j = &a[r][j] * &hinv;
            for &c in &active {
                let t1 = &left_i * &a[j][c];
                let t2 = &left_j * &a[i][c];
                a[r][c] = &(&a[r][c] - &t1) - &t2;
            }
        }
    }
    out
}

/// `(signature, nullity)` of `h`.
pub fn ldlstar_signature(h: &HermitianMatrix) -> (i64, usize) {
    let inertia = ldlstar_inertia(h);
    (inertia.signature(), inertia.nullity)
}

fn abs(r: &Rational) -> Rational {
    if r < &Rational::zero() {
        -r
    } else {
        r.clone()
    }
}

/// Exact determinant by Gaussian elimination over the Gaussian rationals.
pub fn determinant(n: usize, entries: &[GaussianRational]) -> GaussianRational {
    let mut a: Vec<Vec<GaussianRational>> = (0..n)
        .map(|i| entries[i * n..(i + 1) * n].to_vec())
        .collect();
    let mut det = GaussianRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return GaussianRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -&det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    det
}
