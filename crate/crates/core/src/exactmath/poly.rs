//! Univariate polynomials over the rationals.
//!
//! Dense representation, index = degree, trailing zeros trimmed so the
//! leading coefficient of a nonzero polynomial is never zero. The variable
//! name is a display label only; arithmetic keeps the left operand's label.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{sign, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
    var: String,
}

impl UniPoly {
    /// Build from coefficients in ascending degree; trailing zeros trimmed.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Self::with_var("x", coeffs)
    }

    pub fn with_var(var: &str, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs, var: var.to_string() }
    }

    pub fn zero_poly() -> Self {
        UniPoly { coeffs: vec![], var: "x".to_string() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(c: Rat, d: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    pub fn rename_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect();
        UniPoly::with_var(&self.var, coeffs)
    }

    pub fn scale(&self, k: &Rat) -> UniPoly {
        UniPoly::with_var(&self.var, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divide by the leading coefficient. Panics on zero.
    pub fn monic(&self) -> UniPoly {
        let lc = self.leading_coeff();
        assert!(!lc.is_zero(), "monic of zero polynomial");
        self.scale(&lc.recip())
    }

    /// Euclidean division over the field Q: `self = q * d + r`, deg r < deg d.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lc;
            for i in 0..=dd {
                let t = &d.coeffs[i] * &q;
                rem[k + i] -= t;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            quot[k] = q;
        }
        (UniPoly::with_var(&self.var, quot), UniPoly::with_var(&self.var, rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Squarefree decomposition (Yun): returns `[(f_1, 1), (f_2, 2), ...]`
    /// with the `f_i` squarefree, pairwise coprime, nonconstant, and
    /// `self = lc * prod f_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        if self.degree() == Some(0) {
            return vec![];
        }
        let p = self.monic();
        let dp = p.derivative();
        let a = p.gcd(&dp);
        if a.degree() == Some(0) {
            return vec![(p, 1)];
        }
        let mut out = Vec::new();
        let mut b = p.div_exact(&a);
        let mut d = dp.div_exact(&a) - b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let f = b.gcd(&d);
            if f.degree().unwrap_or(0) > 0 {
                out.push((f.clone(), i));
            }
            b = b.div_exact(&f);
            let c = d.div_exact(&f);
            d = c - b.derivative();
            i += 1;
        }
        out
    }

    /// Product of the squarefree factors (radical), monic.
    pub fn squarefree_part(&self) -> UniPoly {
        let mut out = UniPoly::constant(Rat::one()).rename_var(&self.var);
        for (f, _) in self.squarefree_decomposition() {
            out = out * f;
        }
        out
    }

    /// Product of the odd-multiplicity squarefree factors: the polynomial
    /// whose roots are exactly the sign-change points of `self`.
    pub fn odd_multiplicity_part(&self) -> UniPoly {
        let mut out = UniPoly::constant(Rat::one()).rename_var(&self.var);
        for (f, m) in self.squarefree_decomposition() {
            if m % 2 == 1 {
                out = out * f;
            }
        }
        out
    }

    /// Cauchy bound: every real root has absolute value strictly below
    /// `1 + max |a_i| / |a_n|`.
    pub fn root_bound(&self) -> Rat {
        assert!(!self.is_zero());
        let lc = self.leading_coeff().abs();
        let mx = self
            .coeffs
            .iter()
            .take(self.coeffs.len() - 1)
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero);
        Rat::one() + mx / lc
    }

    /// Sign of the polynomial at `x`: -1, 0, 1.
    pub fn sign_at(&self, x: &Rat) -> i32 {
        sign(&self.eval(x))
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly::zero_poly()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::with_var(&self.var, coeffs)
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::with_var(&self.var, coeffs)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::with_var(&self.var, self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero_poly().rename_var(&self.var);
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::with_var(&self.var, coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "{}", self.var)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
