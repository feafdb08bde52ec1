//! Real-root isolation and sign analysis on the nonnegative ray.
//!
//! Sturm sequences decide root counts exactly; bisection (with deflation
//! whenever a midpoint happens to hit a root) isolates them. On top of that
//! sit the two consumers the rest of the crate needs: `nonneg_on_ray`
//! (is `p(t) >= 0` for every `t >= 0`?) and `nonneg_prefix_on_ray`
//! (up to which point does nonnegativity hold?), the latter with exact
//! rational reconstruction of the bounding root.

use num::{One, Zero};

use super::poly::UniPoly;
use super::{simplest_in_interval, Rat};
use crate::error::{Error, Result};

/// Location of one real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLoc {
    /// The root is exactly this rational.
    Exact(Rat),
    /// Exactly one root lies in the open interval; endpoints are non-roots.
    Open(Rat, Rat),
}

impl RootLoc {
    /// Lower edge, for ordering. Disjointness of the returned locations
    /// makes this a total order on any one isolation result.
    pub fn lo(&self) -> &Rat {
        match self {
            RootLoc::Exact(r) => r,
            RootLoc::Open(a, _) => a,
        }
    }

    pub fn hi(&self) -> &Rat {
        match self {
            RootLoc::Exact(r) => r,
            RootLoc::Open(_, b) => b,
        }
    }
}

/// Sturm chain of a squarefree polynomial.
struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    fn new(p: &UniPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[k - 2].div_rem(&chain[k - 1]).1;
            chain.push(-r);
        }
        SturmChain { chain }
    }

    fn variations_at(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    fn count_in(&self, a: &Rat, b: &Rat) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Isolate every real root `>= 0` of `p` into pairwise-disjoint locations,
/// sorted increasingly. Errors on the zero polynomial.
pub fn isolate_nonneg_roots(p: &UniPoly) -> Result<Vec<RootLoc>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut q = p.squarefree_part();
    let mut out = Vec::new();
    if q.is_zero() || q.degree() == Some(0) {
        return Ok(out);
    }
    if q.eval(&Rat::zero()).is_zero() {
        out.push(RootLoc::Exact(Rat::zero()));
        q = q.div_exact(&UniPoly::monomial(Rat::one(), 1).rename_var(q.var_name()));
    }
    if q.degree().unwrap_or(0) >= 1 {
        let bound = q.root_bound();
        let chain = SturmChain::new(&q);
        isolate_rec(&q, &chain, &Rat::zero(), &bound, &mut out);
    }
    out.sort_by(|a, b| a.lo().cmp(b.lo()));
    Ok(out)
}

// Invariant: a and b are non-roots of q; q is squarefree.
fn isolate_rec(q: &UniPoly, chain: &SturmChain, a: &Rat, b: &Rat, out: &mut Vec<RootLoc>) {
    let n = chain.count_in(a, b);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RootLoc::Open(a.clone(), b.clone()));
        return;
    }
    let mid = (a + b) / super::rat_int(2);
    if q.eval(&mid).is_zero() {
        out.push(RootLoc::Exact(mid.clone()));
        // Deflate; the midpoint is a simple root, so it is not a root of q2.
        let lin = UniPoly::with_var(q.var_name(), vec![-mid.clone(), Rat::one()]);
        let q2 = q.div_exact(&lin);
        if q2.degree().unwrap_or(0) >= 1 {
            let chain2 = SturmChain::new(&q2);
            isolate_rec(&q2, &chain2, a, &mid, out);
            isolate_rec(&q2, &chain2, &mid, b, out);
        }
    } else {
        isolate_rec(q, chain, a, &mid, out);
        isolate_rec(q, chain, &mid, b, out);
    }
}

/// Is `p(t) >= 0` for every `t >= 0`? Exact.
///
/// True iff `p` is the zero polynomial, or its leading coefficient is
/// positive and no sign change (odd-multiplicity root) occurs at any `t > 0`.
/// A root at the origin never flips the sign on the open ray.
pub fn nonneg_on_ray(p: &UniPoly) -> bool {
    if p.is_zero() {
        return true;
    }
    if p.leading_coeff() < Rat::zero() {
        return false;
    }
    let odd = p.odd_multiplicity_part();
    if odd.degree().unwrap_or(0) == 0 {
        return true;
    }
    positive_roots(&odd).is_empty()
}

// Roots of q that are strictly positive, via isolation on [0, bound).
fn positive_roots(q: &UniPoly) -> Vec<RootLoc> {
    let locs = match isolate_nonneg_roots(q) {
        Ok(l) => l,
        Err(_) => return vec![],
    };
    locs.into_iter()
        .filter(|l| match l {
            RootLoc::Exact(r) => r > &Rat::zero(),
            RootLoc::Open(..) => true, // isolation starts at 0, interval roots are > 0
        })
        .collect()
}

/// Where `p` stops being nonnegative on the ray `t >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayNonneg {
    /// `p(t) >= 0` for every `t >= 0`.
    Everywhere,
    /// `p >= 0` exactly on `[0, r]`; negative immediately beyond.
    UpTo(Rat),
    /// `p` is negative at points arbitrarily close to `0+`.
    Nowhere,
}

/// Maximal prefix `[0, r]` of the ray on which `p >= 0`, with `r` exact.
///
/// The bounding point is a sign-change root; if it cannot be identified as a
/// rational (it may be irrational), this returns `Error::IrrationalThreshold`
/// rather than an approximation.
pub fn nonneg_prefix_on_ray(p: &UniPoly) -> Result<RayNonneg> {
    if p.is_zero() {
        return Ok(RayNonneg::Everywhere);
    }
    let odd = p.odd_multiplicity_part();
    let flips = if odd.degree().unwrap_or(0) == 0 { vec![] } else { positive_roots(&odd) };
    if flips.is_empty() {
        return Ok(if sign_beyond(p) >= 0 { RayNonneg::Everywhere } else { RayNonneg::Nowhere });
    }
    // Strip any factor of x: positive roots are unaffected and the stripped
    // polynomial has a usable sign at the origin.
    let mut odd_pos = odd.clone();
    let x_factor = UniPoly::monomial(Rat::one(), 1).rename_var(odd.var_name());
    while !odd_pos.is_zero() && odd_pos.eval(&Rat::zero()).is_zero() {
        odd_pos = odd_pos.div_exact(&x_factor);
    }
    // Pin down the first sign-change root: either exactly, or by an interval
    // (lo, hi) with 0 < lo < root < hi and lo, hi non-roots of the odd part.
    let two = super::rat_int(2);
    let mut exact: Option<Rat> = None;
    let mut lo;
    let mut hi;
    match &flips[0] {
        RootLoc::Exact(r) => {
            exact = Some(r.clone());
            lo = r / &two;
            hi = r.clone();
        }
        RootLoc::Open(a, b) => {
            lo = a.clone();
            hi = b.clone();
            let s0 = odd_pos.sign_at(&Rat::zero());
            while lo.is_zero() && exact.is_none() {
                let mid = &hi / &two;
                match odd_pos.sign_at(&mid) {
                    0 => exact = Some(mid),
                    s if s == s0 => lo = mid,
                    _ => hi = mid,
                }
            }
            if let Some(r) = &exact {
                lo = r / &two;
            }
        }
    }
    // Sign of p on (0, root): probe strictly below the root, halving past
    // any even-multiplicity zeros of p.
    let mut probe = lo.clone();
    let mut s = p.sign_at(&probe);
    while s == 0 {
        probe /= &two;
        s = p.sign_at(&probe);
    }
    if s < 0 {
        return Ok(RayNonneg::Nowhere);
    }
    match exact {
        Some(r) => Ok(RayNonneg::UpTo(r)),
        None => {
            let r = identify_rational_root(&odd_pos, &lo, &hi).ok_or(Error::IrrationalThreshold)?;
            Ok(RayNonneg::UpTo(r))
        }
    }
}

// Sign of p(t) for t beyond every root: the sign of the leading coefficient.
fn sign_beyond(p: &UniPoly) -> i32 {
    super::sign(&p.leading_coeff())
}

/// Try to pin the unique root of `q` in `(a, b)` to an exact rational by
/// interleaving bisection with simplest-rational reconstruction. A rational
/// root is found once the interval is tight enough that it is the simplest
/// number inside; an irrational root makes every candidate fail until the
/// iteration cap, and `None` is returned.
pub fn identify_rational_root(q: &UniPoly, a: &Rat, b: &Rat) -> Option<Rat> {
    let mut lo = a.clone();
    let mut hi = b.clone();
    let two = super::rat_int(2);
    for _ in 0..256 {
        let cand = simplest_in_interval(&lo, &hi);
        if q.eval(&cand).is_zero() {
            return Some(cand);
        }
        let mid = (&lo + &hi) / &two;
        if q.eval(&mid).is_zero() {
            return Some(mid);
        }
        if q.sign_at(&lo) * q.sign_at(&mid) < 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    None
}
