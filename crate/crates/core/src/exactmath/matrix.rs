//! Symmetric rational matrices and exact positivity tests.
//!
//! Positive semidefiniteness is decided through the characteristic
//! polynomial's coefficient signs, not leading principal minors: leading
//! minors are silent on singular PSD matrices, and singular matrices are
//! precisely what appears at exact thresholds.

use num::{One, Signed, Zero};

use super::poly::UniPoly;
use super::Rat;
use crate::error::{Error, Result};

/// Symmetric matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<Rat>, // row-major, full storage
}

impl SymMatrix {
    /// Build from an entry generator; `f(i, j)` is only consulted for
    /// `i <= j` and mirrored.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        assert!(order > 0, "order must be positive");
        let mut entries = vec![Rat::zero(); order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                entries[i * order + j] = v.clone();
                entries[j * order + i] = v;
            }
        }
        SymMatrix { order, entries }
    }

    /// Build from explicit rows, checking symmetry.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 || rows.iter().any(|r| r.len() != order) {
            return Err(Error::DimensionMismatch("matrix must be square and nonempty".into()));
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::DimensionMismatch(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(SymMatrix { order, entries: rows.into_iter().flatten().collect() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.order + j]
    }

    fn rows(&self) -> Vec<Vec<Rat>> {
        (0..self.order)
            .map(|i| self.entries[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }

    /// Characteristic polynomial `det(lambda*I - M)`, monic, computed by the
    /// Faddeev-LeVerrier trace recursion (exact over Q).
    pub fn char_poly(&self) -> UniPoly {
        let n = self.order;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        // B starts as the identity.
        let mut b = vec![Rat::zero(); n * n];
        for i in 0..n {
            b[i * n + i] = Rat::one();
        }
        for k in 1..=n {
            // AB = M * B
            let mut ab = vec![Rat::zero(); n * n];
            for i in 0..n {
                for l in 0..n {
                    let a_il = &self.entries[i * n + l];
                    if a_il.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let t = a_il * &b[l * n + j];
                        ab[i * n + j] += t;
                    }
                }
            }
            let trace: Rat = (0..n).map(|i| ab[i * n + i].clone()).sum();
            let ck = -trace / Rat::from_integer(k.into());
            for i in 0..n {
                ab[i * n + i] += &ck;
            }
            coeffs[n - k] = ck;
            b = ab;
        }
        UniPoly::with_var("λ", coeffs)
    }

    /// Exact determinant (Gaussian elimination with partial pivoting).
    pub fn det(&self) -> Rat {
        det_dense(&self.rows())
    }

    /// Exact PSD test: all eigenvalues `>= 0`.
    ///
    /// With `c_0..c_n` the characteristic coefficients, the matrix is PSD iff
    /// `(-1)^(n-i) * c_i >= 0` for every `i` — the coefficients are signed
    /// elementary symmetric functions of the (real) eigenvalues.
    pub fn is_psd(&self) -> bool {
        let cp = self.char_poly();
        let n = self.order;
        (0..=n).all(|i| {
            let c = cp.coeff(i);
            if (n - i) % 2 == 0 {
                c >= Rat::zero()
            } else {
                c <= Rat::zero()
            }
        })
    }
}

/// Exact determinant of a general square matrix, by fraction elimination
/// with partial pivoting. Accepts non-symmetric input.
pub fn det_dense(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "det of non-square matrix");
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// Largest admissible corner value for a bordered PSD matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CornerThreshold {
    /// The bordered matrix `[[1/c, g^T], [g, h]]` is PSD exactly for
    /// `0 < c <=` this value.
    Finite(Rat),
    /// `g = 0`: every corner value works.
    Infinite,
    /// `g` is outside the range of `h`: no corner value works.
    OutOfRange,
}

/// Largest `c >= 0` such that `[[1/c, g^T], [g, h]]` is PSD, for PSD `h`.
///
/// By the Schur-complement characterization this is `1 / (g^T h^+ g)` when
/// `g` lies in the range of `h`; the pseudo-inverse quadratic form is
/// computed as `g . z` for any exact solution of `h z = g`, found by pivoted
/// elimination with an explicit consistency test so that singular `h`
/// (degenerate tails) is handled exactly.
pub fn psd_corner_threshold(h: &SymMatrix, g: &[Rat]) -> Result<CornerThreshold> {
    let n = h.order();
    if g.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "border has length {} but matrix order is {n}",
            g.len()
        )));
    }
    if !h.is_psd() {
        return Err(Error::NotPsd);
    }
    if g.iter().all(|x| x.is_zero()) {
        return Ok(CornerThreshold::Infinite);
    }
    match solve_consistent(&h.rows(), g) {
        None => Ok(CornerThreshold::OutOfRange),
        Some(z) => {
            let q: Rat = g.iter().zip(&z).map(|(a, b)| a * b).sum();
            // g nonzero and in the range of PSD h forces q > 0.
            debug_assert!(q.is_positive());
            Ok(CornerThreshold::Finite(q.recip()))
        }
    }
}

// Solve `m z = g` exactly; None if inconsistent. Free variables are set to 0.
fn solve_consistent(m: &[Vec<Rat>], g: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(g)
        .map(|(row, gi)| {
            let mut r = row.clone();
            r.push(gi.clone());
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0;
    for col in 0..n {
        let Some(piv) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(piv, row);
        let p = a[row][col].clone();
        for c in col..=n {
            a[row][c] /= &p;
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let t = &factor * &a[row][c];
                    a[r][c] -= t;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == n {
            break;
        }
    }
    // Inconsistent iff some zero row has a nonzero right-hand side.
    for r in row..n {
        if !a[r][n].is_zero() {
            return None;
        }
    }
    let mut z = vec![Rat::zero(); n];
    for (r, c) in pivots {
        z[c] = a[r][n].clone();
    }
    Some(z)
}
