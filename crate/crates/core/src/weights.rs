//! Squared weight sequences and their transforms.
//!
//! Weights are stored *squared*: every quantity tested downstream (moments,
//! Hankel entries, the u/v/w sequences) depends only on the squares, and
//! keeping squares keeps everything rational. Back-step parameters are
//! squared first weights throughout.
//!
//! A sequence is an explicit positive prefix plus a tail rule, or a
//! composition of such sequences under the three transforms: back-step
//! extension (prepend a weight), Schur product (entrywise product) and
//! packet product (products of `l` adjacent weights, realizing the pieces
//! of the `l`-th operator power).

use std::sync::{Arc, Mutex};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{exact_str, UniPoly};
use crate::measures::Measure;
use crate::Rat;

/// Tail rules are validated up to this index at construction; beyond it,
/// evaluation still asserts positivity.
const TAIL_CHECK_WINDOW: usize = 256;

/// How squared weights continue after the explicit prefix.
///
/// Tail rules use *tail-local* indices: the rule's `j`-th value is the
/// squared weight at absolute index `prefix_len + j`. Prepending to the
/// prefix therefore shifts the tail without rewriting it.
#[derive(Clone, Debug)]
pub enum TailRule {
    /// `s = num(j + offset) / den(j + offset)` at tail-local index `j`.
    RationalFunction { num: UniPoly, den: UniPoly, offset: usize },
    /// Moment ratios of a probability measure: `s = gamma_{j+1} / gamma_j`.
    Measure(Measure),
    /// Constant squared weight.
    Constant(Rat),
}

impl TailRule {
    fn eval(&self, j: usize) -> Rat {
        match self {
            TailRule::RationalFunction { num, den, offset } => {
                let x = Rat::from_integer((j + offset).into());
                let d = den.eval(&x);
                assert!(!d.is_zero(), "rational tail denominator vanishes at index {}", j + offset);
                let v = num.eval(&x) / d;
                assert!(
                    v.is_positive(),
                    "rational tail is nonpositive at index {}: {}",
                    j + offset,
                    exact_str(&v)
                );
                v
            }
            TailRule::Measure(mu) => {
                // Positive for probability measures with support != {0}.
                mu.moment(j + 1) / mu.moment(j)
            }
            TailRule::Constant(c) => c.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            TailRule::RationalFunction { num, den, offset } => {
                if num.is_zero() {
                    return Err(Error::InvalidFamily("rational tail numerator is zero".into()));
                }
                let (dn, dd) = (num.degree().unwrap(), den.degree().unwrap_or(0));
                if den.is_zero() {
                    return Err(Error::InvalidFamily("rational tail denominator is zero".into()));
                }
                if dn > dd {
                    return Err(Error::InvalidFamily(
                        "rational tail is unbounded (numerator degree exceeds denominator degree)"
                            .into(),
                    ));
                }
                if (num.leading_coeff() * den.leading_coeff()).is_negative() {
                    return Err(Error::InvalidFamily(
                        "rational tail is eventually negative".into(),
                    ));
                }
                for j in 0..TAIL_CHECK_WINDOW {
                    let x = Rat::from_integer((j + offset).into());
                    let d = den.eval(&x);
                    if d.is_zero() {
                        return Err(Error::InvalidFamily(format!(
                            "rational tail denominator vanishes at index {}",
                            j + offset
                        )));
                    }
                    if !(num.eval(&x) / d).is_positive() {
                        return Err(Error::InvalidFamily(format!(
                            "rational tail is nonpositive at index {}",
                            j + offset
                        )));
                    }
                }
                Ok(())
            }
            TailRule::Measure(mu) => {
                if mu.support_is_origin_only() {
                    return Err(Error::DegenerateSupport);
                }
                if !mu.is_probability() {
                    return Err(Error::InvalidMeasure(format!(
                        "measure tail has total mass {}",
                        exact_str(&mu.total_mass())
                    )));
                }
                Ok(())
            }
            TailRule::Constant(c) => {
                if c.is_positive() {
                    Ok(())
                } else {
                    Err(Error::NonPositive(exact_str(c)))
                }
            }
        }
    }
}

enum SeqKind {
    Base { prefix: Vec<Rat>, tail: TailRule },
    Backstep { head: Rat, rest: WeightSequenceSq },
    Schur(WeightSequenceSq, WeightSequenceSq),
    Packet { inner: WeightSequenceSq, size: usize, phase: usize },
}

struct SeqInner {
    kind: SeqKind,
    // Append-only moment cache: moments[n] = gamma_n.
    moments: Mutex<Vec<Rat>>,
}

/// An immutable squared weight sequence with memoized moments.
/// Cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct WeightSequenceSq {
    inner: Arc<SeqInner>,
}

impl WeightSequenceSq {
    fn from_kind(kind: SeqKind) -> Self {
        WeightSequenceSq {
            inner: Arc::new(SeqInner { kind, moments: Mutex::new(vec![Rat::one()]) }),
        }
    }

    /// Explicit prefix of squared weights followed by a tail rule.
    pub fn base(prefix: Vec<Rat>, tail: TailRule) -> Result<Self> {
        for s in &prefix {
            if !s.is_positive() {
                return Err(Error::NonPositive(exact_str(s)));
            }
        }
        tail.validate()?;
        Ok(Self::from_kind(SeqKind::Base { prefix, tail }))
    }

    /// Constant squared weight `c`.
    pub fn constant(c: Rat) -> Result<Self> {
        Self::base(vec![], TailRule::Constant(c))
    }

    /// The Bergman shift: squared weights `(n+2)/(n+3)`.
    pub fn bergman() -> Self {
        let num = UniPoly::with_var("n", vec![crate::exactmath::rat_int(2), Rat::one()]);
        let den = UniPoly::with_var("n", vec![crate::exactmath::rat_int(3), Rat::one()]);
        Self::base(vec![], TailRule::RationalFunction { num, den, offset: 0 })
            .expect("bergman tail is valid")
    }

    /// Squared weight `s_n`.
    pub fn weight_sq(&self, n: usize) -> Rat {
        match &self.inner.kind {
            SeqKind::Base { prefix, tail } => {
                if n < prefix.len() {
                    prefix[n].clone()
                } else {
                    tail.eval(n - prefix.len())
                }
            }
            SeqKind::Backstep { head, rest } => {
                if n == 0 {
                    head.clone()
                } else {
                    rest.weight_sq(n - 1)
                }
            }
            SeqKind::Schur(a, b) => a.weight_sq(n) * b.weight_sq(n),
            SeqKind::Packet { inner, size, phase } => {
                let mut v = Rat::one();
                for m in 0..*size {
                    v *= inner.weight_sq(size * n + phase + m);
                }
                v
            }
        }
    }

    /// Moment `gamma_n`: `gamma_0 = 1`, `gamma_{n+1} = gamma_n * s_n`.
    pub fn moment(&self, n: usize) -> Rat {
        let mut memo = self.inner.moments.lock().unwrap();
        while memo.len() <= n {
            let k = memo.len() - 1;
            let next = &memo[k] * self.weight_sq(k);
            memo.push(next);
        }
        memo[n].clone()
    }

    /// Back-step extension: prepend the squared weight `s`.
    pub fn backstep(&self, s: &Rat) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::NonPositive(exact_str(s)));
        }
        match &self.inner.kind {
            // Tail rules are prefix-relative, so prepending is a prefix push.
            SeqKind::Base { prefix, tail } => {
                let mut p = Vec::with_capacity(prefix.len() + 1);
                p.push(s.clone());
                p.extend(prefix.iter().cloned());
                Ok(Self::from_kind(SeqKind::Base { prefix: p, tail: tail.clone() }))
            }
            _ => Ok(Self::from_kind(SeqKind::Backstep { head: s.clone(), rest: self.clone() })),
        }
    }

    /// Schur (entrywise) product: squared weights and moments both multiply
    /// pointwise.
    pub fn schur(&self, other: &WeightSequenceSq) -> Self {
        Self::from_kind(SeqKind::Schur(self.clone(), other.clone()))
    }

    /// Packet sequence: `s'_j = prod_{m=0}^{size-1} s_{size*j + phase + m}`,
    /// the `phase`-th piece of the `size`-th power of the shift.
    pub fn packet(&self, size: usize, phase: usize) -> Result<Self> {
        assert!(size >= 1, "packet size must be >= 1");
        if phase >= size {
            return Err(Error::IndexOutOfRange { phase, size });
        }
        if size == 1 {
            return Ok(self.clone());
        }
        Ok(Self::from_kind(SeqKind::Packet { inner: self.clone(), size, phase }))
    }

    /// All pieces of the `l`-th power: `[packet(l, 0), ..., packet(l, l-1)]`.
    pub fn power_decompose(&self, l: usize) -> Vec<WeightSequenceSq> {
        assert!(l >= 1, "power must be >= 1");
        (0..l).map(|i| self.packet(l, i).expect("phase < size")).collect()
    }
}

impl std::fmt::Debug for WeightSequenceSq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let head: Vec<String> = (0..4).map(|n| exact_str(&self.weight_sq(n))).collect();
        write!(f, "WeightSequenceSq[{}, ...]", head.join(", "))
    }
}
