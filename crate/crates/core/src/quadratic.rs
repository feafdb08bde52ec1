//! Quadratic hyponormality machinery.
//!
//! For a hyponormal shift, quadratic hyponormality (hyponormality of
//! `W + sW^2` for every complex `s`) is governed by the tridiagonal
//! self-commutator truncations `D_n(s)`, whose determinants `d_n` are
//! polynomials in `t = |s|^2`. Everything here works with `t` alone; the
//! complex parameter never appears.
//!
//! Two independent routes to `d_n` are provided: the three-term recursion
//! (`d_poly`) and dense exact elimination on the tridiagonal matrix itself
//! (`det_window`). The Maclaurin coefficients `c(n, i)` of `d_n` drive the
//! "positively quadratically hyponormal" (PQH) test: all `c(n, i) >= 0`.
//!
//! For the one-parameter back-step power family the same recursions run over
//! the polynomial ring in the squared extension weight `x`, and the exact
//! PQH threshold falls out by root isolation.

use std::ops::{Add, Mul, Sub};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{det_dense, nonneg_on_ray, nonneg_prefix_on_ray, RayNonneg, Rat, UniPoly};
use crate::weights::WeightSequenceSq;

/// Default verification window for the hypothesis `u_{n+1} v_n >= w_n`.
pub const DEFAULT_HYPOTHESIS_WINDOW: usize = 100;

/// `(u_k, v_k, w_k)` from the squared weights, with `s_{-1} = s_{-2} = 0`:
/// `u_k = s_k - s_{k-1}`, `v_k = s_k s_{k+1} - s_{k-1} s_{k-2}`,
/// `w_k = s_k (s_{k+1} - s_{k-1})^2`.
pub fn uvw(w: &WeightSequenceSq, k: usize) -> (Rat, Rat, Rat) {
    let s = |i: isize| -> Rat {
        if i < 0 {
            Rat::zero()
        } else {
            w.weight_sq(i as usize)
        }
    };
    let k = k as isize;
    let u = s(k) - s(k - 1);
    let v = s(k) * s(k + 1) - s(k - 1) * s(k - 2);
    let diff = s(k + 1) - s(k - 1);
    let wk = s(k) * &diff * &diff;
    (u, v, wk)
}

/// The u/v/w sequences, over rationals or over polynomials in a parameter.
#[derive(Clone, Debug)]
pub struct QuadSeqData<T> {
    pub u: Vec<T>,
    pub v: Vec<T>,
    pub w: Vec<T>,
}

impl<T> QuadSeqData<T>
where
    T: Clone + Zero + Sub<Output = T> + Mul<Output = T>,
{
    /// Build from squared weights `s_0, s_1, ...`; needs `len + 2` of them.
    pub fn from_weights_sq(s: &[T], len: usize) -> Self {
        assert!(s.len() >= len + 2, "need len + 2 squared weights");
        let at = |i: isize| -> T {
            if i < 0 {
                T::zero()
            } else {
                s[i as usize].clone()
            }
        };
        let mut u = Vec::with_capacity(len);
        let mut v = Vec::with_capacity(len);
        let mut w = Vec::with_capacity(len);
        for k in 0..len as isize {
            u.push(at(k) - at(k - 1));
            v.push(at(k) * at(k + 1) - at(k - 1) * at(k - 2));
            let diff = at(k + 1) - at(k - 1);
            w.push(at(k) * diff.clone() * diff);
        }
        QuadSeqData { u, v, w }
    }
}

impl QuadSeqData<Rat> {
    pub fn from_shift(w: &WeightSequenceSq, len: usize) -> Self {
        let s: Vec<Rat> = (0..len + 2).map(|i| w.weight_sq(i)).collect();
        Self::from_weights_sq(&s, len)
    }
}

/// The coefficient triangle `c(n, i)`, `0 <= i <= n + 1`, rows `0 ..= depth`.
///
/// Row sums against powers of `t` reproduce `d_n`:
/// `d_n(t) = sum_i c(n, i) t^i`.
#[derive(Clone, Debug)]
pub struct CnTable<T> {
    rows: Vec<Vec<T>>,
}

impl<T> CnTable<T> {
    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    /// `c(n, i)`; only defined for `0 <= i <= n + 1`.
    pub fn get(&self, n: usize, i: usize) -> &T {
        &self.rows[n][i]
    }

    pub fn row(&self, n: usize) -> &[T] {
        &self.rows[n]
    }
}

/// Run the coefficient recursion
/// `c(n+2, i) = u_{n+2} c(n+1, i) + v_{n+2} c(n+1, i-1) - w_{n+1} c(n, i-1)`
/// from the explicit first two rows, over any commutative ring.
pub fn c_table_from<T>(data: &QuadSeqData<T>, depth: usize) -> CnTable<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    assert!(depth >= 1, "depth must be >= 1");
    assert!(data.u.len() > depth && data.w.len() > depth, "u/v/w too short for depth");
    let u = &data.u;
    let v = &data.v;
    let w = &data.w;
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(depth + 1);
    rows.push(vec![u[0].clone(), v[0].clone()]);
    rows.push(vec![
        u[1].clone() * u[0].clone(),
        u[1].clone() * v[0].clone() + u[0].clone() * v[1].clone() - w[0].clone(),
        v[1].clone() * v[0].clone(),
    ]);
    for n in 2..=depth {
        let prev = &rows[n - 1];
        let prev2 = &rows[n - 2];
        let at = |row: &[T], i: isize| -> T {
            if i < 0 || i as usize >= row.len() {
                T::zero()
            } else {
                row[i as usize].clone()
            }
        };
        let mut row = Vec::with_capacity(n + 2);
        for i in 0..=(n + 1) as isize {
            row.push(
                u[n].clone() * at(prev, i) + v[n].clone() * at(prev, i - 1)
                    - w[n - 1].clone() * at(prev2, i - 1),
            );
        }
        rows.push(row);
    }
    CnTable { rows }
}

/// Coefficient triangle of a concrete shift, to the given depth.
pub fn c_table(w: &WeightSequenceSq, depth: usize) -> CnTable<Rat> {
    c_table_from(&QuadSeqData::from_shift(w, depth + 1), depth)
}

/// `d_n` as a polynomial in `t`, by the three-term recursion
/// `d_{n+2} = q_{n+2} d_{n+1} - t w_{n+1} d_n` with `q_k = u_k + t v_k`.
pub fn d_poly(w: &WeightSequenceSq, n: usize) -> UniPoly {
    let q = |k: usize| -> UniPoly {
        let (u, v, _) = uvw(w, k);
        UniPoly::with_var("t", vec![u, v])
    };
    let mut d_prev = q(0); // d_0
    if n == 0 {
        return d_prev;
    }
    let w0 = uvw(w, 0).2;
    let mut d_cur = &q(1) * &d_prev - UniPoly::with_var("t", vec![Rat::zero(), w0]);
    for m in 2..=n {
        let wk = uvw(w, m - 1).2;
        let t_w = UniPoly::with_var("t", vec![Rat::zero(), wk]);
        let next = &q(m) * &d_cur - &t_w * &d_prev;
        d_prev = d_cur;
        d_cur = next;
    }
    d_cur
}

/// Determinant of the `(n+1) x (n+1)` tridiagonal truncation at a concrete
/// `t >= 0`, by dense exact elimination. Off-diagonal pairs enter only
/// through their product `t w_k`, so the matrix is stored with sub-diagonal
/// 1 and super-diagonal `t w_k`.
///
/// Independent of the recursion in [`d_poly`]; serves as its oracle.
pub fn det_window(w: &WeightSequenceSq, n: usize, t: &Rat) -> Rat {
    let dim = n + 1;
    let mut rows = vec![vec![Rat::zero(); dim]; dim];
    for k in 0..dim {
        let (u, v, wk) = uvw(w, k);
        rows[k][k] = u + t * v;
        if k + 1 < dim {
            rows[k][k + 1] = t * wk;
            rows[k + 1][k] = Rat::one();
        }
    }
    det_dense(&rows)
}

/// Verdict of the positive-quadratic-hyponormality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PqhVerdict {
    /// `u_{n+1} v_n >= w_n` verified for `3 <= n <= hypothesis_window`, and
    /// `c(3,2) >= 0`, `c(4,3) >= 0`: PQH certified modulo the reported
    /// hypothesis window (the underlying condition is for all `n >= 3`).
    CertifiedPqh { hypothesis_window: usize },
    /// An explicitly negative Maclaurin coefficient: not PQH.
    FailedPqh { n: usize, i: usize },
    /// No negative coefficient found, but the certification route's
    /// hypothesis failed inside the window.
    IndeterminateWindow { window: usize },
}

/// Three-valued PQH check: scan the coefficient triangle to depth
/// `hyp_window` for a negative entry, then try the two-coefficient
/// certification under the verified hypothesis.
pub fn pqh_check(w: &WeightSequenceSq, hyp_window: usize) -> PqhVerdict {
    let hyp_window = hyp_window.max(5);
    let data = QuadSeqData::from_shift(w, hyp_window + 2);
    let table = c_table_from(&data, hyp_window);
    for n in 0..=table.depth() {
        for (i, c) in table.row(n).iter().enumerate() {
            if c < &Rat::zero() {
                return PqhVerdict::FailedPqh { n, i };
            }
        }
    }
    let hypothesis_holds =
        (3..=hyp_window).all(|n| &data.u[n + 1] * &data.v[n] >= data.w[n]);
    if hypothesis_holds
        && table.get(3, 2) >= &Rat::zero()
        && table.get(4, 3) >= &Rat::zero()
    {
        PqhVerdict::CertifiedPqh { hypothesis_window: hyp_window }
    } else {
        PqhVerdict::IndeterminateWindow { window: hyp_window }
    }
}

/// Verdict of the windowed quadratic-hyponormality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QhWindowVerdict {
    /// `d_n(t) >= 0` on the ray for every `n <= window`. Evidence only.
    VerifiedUpToWindow(usize),
    /// `d_n` goes negative somewhere on `t >= 0`: not quadratically
    /// hyponormal.
    Violated(usize),
}

/// Check `d_n(t) >= 0` for all `t >= 0` and all `n <= depth`.
pub fn qh_window(w: &WeightSequenceSq, depth: usize) -> QhWindowVerdict {
    for n in 0..=depth {
        if !nonneg_on_ray(&d_poly(w, n)) {
            return QhWindowVerdict::Violated(n);
        }
    }
    QhWindowVerdict::VerifiedUpToWindow(depth)
}

/// Squared weights of the back-step power family: `s_0 = 2x/(l+1)` and
/// `s_j = (jl+1)/((j+1)l+1)` for `j >= 1` — the 0-th piece of the `l`-th
/// power of the Bergman shift extended by squared weight `x`.
pub fn beta_shift(l: usize, x: &Rat) -> Result<WeightSequenceSq> {
    assert!(l >= 1, "power must be >= 1");
    WeightSequenceSq::bergman().backstep(x)?.packet(l, 0)
}

/// The same family with the back-step parameter left formal: squared weights
/// as polynomials in `x`. Only `s_0` actually involves `x`.
pub fn beta_weights_sq_poly(l: usize, count: usize) -> Vec<UniPoly> {
    let lr = crate::exactmath::rat_int(l as i64);
    let mut s = Vec::with_capacity(count);
    s.push(UniPoly::with_var(
        "x",
        vec![Rat::zero(), crate::exactmath::rat_int(2) / (&lr + Rat::one())],
    ));
    for j in 1..count {
        let jr = crate::exactmath::rat_int(j as i64);
        let val = (&jr * &lr + Rat::one()) / ((jr + Rat::one()) * &lr + Rat::one());
        s.push(UniPoly::with_var("x", vec![val]));
    }
    s
}

/// Exact PQH threshold for the back-step power family, computed from
/// scratch: the constraint polynomials `c(3,2)(x)`, `c(4,3)(x)` and the
/// hyponormality constraint `u_1(x)` are built over the polynomial ring in
/// `x`, and the threshold is the smallest of their nonnegativity bounds,
/// each extracted by exact root isolation.
pub fn pqh_threshold_family(l: usize) -> Result<Rat> {
    assert!(l >= 1, "power must be >= 1");
    let s = beta_weights_sq_poly(l, 8);
    let data = QuadSeqData::from_weights_sq(&s, 6);
    let table = c_table_from(&data, 4);
    let constraints = [data.u[1].clone(), table.get(3, 2).clone(), table.get(4, 3).clone()];
    let mut best: Option<Rat> = None;
    for p in &constraints {
        match nonneg_prefix_on_ray(p)? {
            RayNonneg::Everywhere => {}
            RayNonneg::UpTo(r) => {
                best = Some(match best {
                    None => r,
                    Some(b) => b.min(r),
                });
            }
            RayNonneg::Nowhere => return Ok(Rat::zero()),
        }
    }
    best.ok_or_else(|| {
        Error::InvalidFamily("every PQH constraint is unbounded in the parameter".into())
    })
}
