//! Finitely presented representing measures on `[0, 1]`.
//!
//! A [`Measure`] is a sum of point masses plus generalized monomial density
//! terms `a * t^q dt` (rational exponent `q > -1`) supported on `[0, 1]`.
//! The class is closed under every transform used here — pushforward under
//! `t -> t^l`, the power-piece reweighting, and the back-step extension —
//! and all of its moments are rational, so everything stays exact.
//!
//! Total mass 1 is required of inputs that represent shifts; `split_origin`
//! deliberately returns the origin-free part *unrenormalized*, so the type
//! itself also accommodates sub-probability measures.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{exact_str, Rat};
use crate::weights::{TailRule, WeightSequenceSq};

/// Point mass at `location` with weight `mass`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub location: Rat,
    pub mass: Rat,
}

/// Density term `coeff * t^exponent dt` on `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityTerm {
    pub coeff: Rat,
    pub exponent: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    atoms: Vec<Atom>,
    densities: Vec<DensityTerm>,
}

impl Measure {
    /// Validating constructor: atom locations in `[0, 1]`, pairwise distinct,
    /// masses positive; density coefficients positive, exponents `> -1`.
    /// Total mass is *not* forced to 1 here; see [`Measure::is_probability`].
    pub fn new(atoms: Vec<Atom>, densities: Vec<DensityTerm>) -> Result<Self> {
        for a in &atoms {
            if a.location.is_negative() || a.location > Rat::one() {
                return Err(Error::InvalidMeasure(format!(
                    "atom location {} outside [0, 1]",
                    exact_str(&a.location)
                )));
            }
            if !a.mass.is_positive() {
                return Err(Error::InvalidMeasure(format!(
                    "atom mass {} must be positive",
                    exact_str(&a.mass)
                )));
            }
        }
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                if atoms[i].location == atoms[j].location {
                    return Err(Error::InvalidMeasure(format!(
                        "duplicate atom location {}",
                        exact_str(&atoms[i].location)
                    )));
                }
            }
        }
        for d in &densities {
            if !d.coeff.is_positive() {
                return Err(Error::InvalidMeasure(format!(
                    "density coefficient {} must be positive",
                    exact_str(&d.coeff)
                )));
            }
            if d.exponent <= -Rat::one() {
                return Err(Error::InvalidMeasure(format!(
                    "density exponent {} must exceed -1",
                    exact_str(&d.exponent)
                )));
            }
        }
        Ok(Measure { atoms, densities })
    }

    /// The unit point mass at `p`.
    pub fn point_mass(p: Rat) -> Result<Self> {
        Self::new(vec![Atom { location: p, mass: Rat::one() }], vec![])
    }

    /// Lebesgue measure `dt` on `[0, 1]`.
    pub fn lebesgue() -> Self {
        Measure { atoms: vec![], densities: vec![DensityTerm { coeff: Rat::one(), exponent: Rat::zero() }] }
    }

    /// `2t dt` on `[0, 1]` — the measure of the Bergman shift.
    pub fn bergman() -> Self {
        Measure {
            atoms: vec![],
            densities: vec![DensityTerm { coeff: crate::exactmath::rat_int(2), exponent: Rat::one() }],
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn densities(&self) -> &[DensityTerm] {
        &self.densities
    }

    /// `mu([0, 1])`: atom masses plus `coeff / (exponent + 1)` per term.
    pub fn total_mass(&self) -> Rat {
        let from_atoms: Rat = self.atoms.iter().map(|a| a.mass.clone()).sum();
        let from_density: Rat =
            self.densities.iter().map(|d| &d.coeff / (&d.exponent + Rat::one())).sum();
        from_atoms + from_density
    }

    pub fn is_probability(&self) -> bool {
        self.total_mass().is_one()
    }

    /// Is the whole mass concentrated at the origin?
    pub fn support_is_origin_only(&self) -> bool {
        self.densities.is_empty() && self.atoms.iter().all(|a| a.location.is_zero())
    }

    /// `∫ t^n dμ(t)`, exact.
    pub fn moment(&self, n: usize) -> Rat {
        let npow = |p: &Rat| num::pow::pow(p.clone(), n);
        let from_atoms: Rat = self.atoms.iter().map(|a| &a.mass * npow(&a.location)).sum();
        let from_density: Rat = self
            .densities
            .iter()
            .map(|d| &d.coeff / (&d.exponent + Rat::from_integer(n.into()) + Rat::one()))
            .sum();
        from_atoms + from_density
    }

    /// `∫ t^{-j} dμ(t)`, or `Infinite` when the integral diverges (an atom at
    /// the origin, or a density exponent with `q - j <= -1`).
    pub fn neg_moment(&self, j: usize) -> NegMoment {
        assert!(j >= 1, "neg_moment needs j >= 1");
        let jr = Rat::from_integer(j.into());
        if self.atoms.iter().any(|a| a.location.is_zero()) {
            return NegMoment::Infinite;
        }
        if self.densities.iter().any(|d| &d.exponent - &jr <= -Rat::one()) {
            return NegMoment::Infinite;
        }
        let from_atoms: Rat =
            self.atoms.iter().map(|a| &a.mass / num::pow::pow(a.location.clone(), j)).sum();
        let from_density: Rat =
            self.densities.iter().map(|d| &d.coeff / (&d.exponent - &jr + Rat::one())).sum();
        NegMoment::Finite(from_atoms + from_density)
    }

    /// Split off the atom at the origin: returns `(nu, rho)` with
    /// `mu = nu + rho * delta_0` and `nu({0}) = 0`. `nu` is not renormalized.
    pub fn split_origin(&self) -> (Measure, Rat) {
        let mut rho = Rat::zero();
        let mut atoms = Vec::new();
        for a in &self.atoms {
            if a.location.is_zero() {
                rho = a.mass.clone();
            } else {
                atoms.push(a.clone());
            }
        }
        (Measure { atoms, densities: self.densities.clone() }, rho)
    }

    /// Pushforward under `t -> t^l`: the measure of the 0-th power piece.
    ///
    /// Atoms move to `p^l`; a density term `a t^q` becomes
    /// `(a/l) t^{(q+1)/l - 1}`, which stays in the class.
    pub fn pushforward_power(&self, l: usize) -> Measure {
        assert!(l >= 1, "power must be >= 1");
        let lr = Rat::from_integer(l.into());
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom { location: num::pow::pow(a.location.clone(), l), mass: a.mass.clone() })
            .collect();
        let densities = self
            .densities
            .iter()
            .map(|d| DensityTerm {
                coeff: &d.coeff / &lr,
                exponent: (&d.exponent + Rat::one()) / &lr - Rat::one(),
            })
            .collect();
        Measure { atoms, densities }
    }

    /// Measure of the `i`-th piece (`1 <= i <= l-1`) of the `l`-th power of
    /// the shift this measure represents. `gamma_i` is the `i`-th moment of
    /// that shift. Only the origin-free part contributes.
    pub fn piece_measure(&self, l: usize, i: usize, gamma_i: &Rat) -> Result<Measure> {
        if i == 0 || i >= l {
            return Err(Error::IndexOutOfRange { phase: i, size: l });
        }
        let (nu, _) = self.split_origin();
        let lr = Rat::from_integer(l.into());
        let atoms = nu
            .atoms
            .iter()
            .map(|a| Atom {
                location: num::pow::pow(a.location.clone(), l),
                mass: &a.mass * num::pow::pow(a.location.clone(), i) / gamma_i,
            })
            .collect();
        let densities = nu
            .densities
            .iter()
            .map(|d| DensityTerm {
                coeff: &d.coeff / (gamma_i * &lr),
                exponent: (&d.exponent + Rat::from_integer(i.into()) + Rat::one()) / &lr - Rat::one(),
            })
            .collect();
        Ok(Measure { atoms, densities })
    }

    /// The subnormal shift with these moments: squared weights
    /// `s_n = moment(n+1) / moment(n)`.
    pub fn shift(&self) -> Result<WeightSequenceSq> {
        if self.support_is_origin_only() {
            return Err(Error::DegenerateSupport);
        }
        if !self.is_probability() {
            return Err(Error::InvalidMeasure(format!(
                "total mass {} but a shift needs a probability measure",
                exact_str(&self.total_mass())
            )));
        }
        WeightSequenceSq::base(vec![], TailRule::Measure(self.clone()))
    }

    /// Largest squared weight `s` for which the back-step extension by `s`
    /// is subnormal: `1 / ∫ t^{-1} dμ`, and 0 when that integral diverges
    /// (no subnormal extension exists, e.g. mass at the origin).
    pub fn backstep_subnormal_threshold(&self) -> Rat {
        match self.neg_moment(1) {
            NegMoment::Infinite => Rat::zero(),
            NegMoment::Finite(v) => v.recip(),
        }
    }

    /// Largest squared weight `s` for which the `l`-th power of the back-step
    /// extension by `s` is subnormal: `1 / ∫ t^{-1} dν` with `ν` the
    /// origin-free part. Independent of `l`.
    pub fn power_backstep_subnormal_threshold(&self, l: usize) -> Rat {
        assert!(l >= 1, "power must be >= 1");
        let (nu, _) = self.split_origin();
        match nu.neg_moment(1) {
            NegMoment::Infinite => Rat::zero(),
            NegMoment::Finite(v) => v.recip(),
        }
    }

    /// Measure of the back-step extension by squared weight `s`
    /// (`0 < s <= backstep_subnormal_threshold`): with `N = ∫ t^{-1} dμ` and
    /// `theta = s * N`, the result is `theta * (t^{-1}/N) dμ + (1-theta) δ_0`.
    pub fn backstep_measure(&self, s: &Rat) -> Result<Measure> {
        if !s.is_positive() {
            return Err(Error::NonPositive(exact_str(s)));
        }
        for d in &self.densities {
            // q - 1 <= -1 would leave the representable class
            if !d.exponent.is_positive() {
                return Err(Error::UnsupportedDensity(exact_str(&d.exponent)));
            }
        }
        let norm = match self.neg_moment(1) {
            NegMoment::Infinite => {
                return Err(Error::AboveThreshold { given: exact_str(s), threshold: "0".into() })
            }
            NegMoment::Finite(v) => v,
        };
        let threshold = norm.recip();
        if s > &threshold {
            return Err(Error::AboveThreshold {
                given: exact_str(s),
                threshold: exact_str(&threshold),
            });
        }
        let theta = s * &norm;
        let mut atoms: Vec<Atom> = self
            .atoms
            .iter()
            .map(|a| Atom { location: a.location.clone(), mass: s * &a.mass / &a.location })
            .collect();
        let densities = self
            .densities
            .iter()
            .map(|d| DensityTerm { coeff: s * &d.coeff, exponent: &d.exponent - Rat::one() })
            .collect();
        let rho = Rat::one() - theta;
        if rho.is_positive() {
            atoms.push(Atom { location: Rat::zero(), mass: rho });
        }
        Measure::new(atoms, densities)
    }

    /// Subnormality of the multi-step back-step extension with squared
    /// weights `s_list` (innermost first: `s_list[0]` sits next to the base
    /// sequence). Subnormal iff every `∫ t^{-j}` is finite for `j <= n`, the
    /// partial products match `1/∫ t^{-j}` exactly for `j < n`, and the full
    /// product is `<= 1/∫ t^{-n}`.
    pub fn multi_backstep_check(&self, s_list: &[Rat]) -> MultiBackstepVerdict {
        assert!(!s_list.is_empty(), "s_list must be nonempty");
        let n = s_list.len();
        let mut product = Rat::one();
        for (idx, s) in s_list.iter().enumerate() {
            let j = idx + 1;
            if !s.is_positive() {
                return MultiBackstepVerdict::NotSubnormal(BackstepViolation::NonPositiveWeight {
                    step: j,
                });
            }
            product *= s;
            let bound = match self.neg_moment(j) {
                NegMoment::Infinite => {
                    return MultiBackstepVerdict::NotSubnormal(
                        BackstepViolation::NegMomentInfinite { j },
                    )
                }
                NegMoment::Finite(v) => v.recip(),
            };
            if j < n {
                if product != bound {
                    return MultiBackstepVerdict::NotSubnormal(
                        BackstepViolation::IntermediateProductMismatch { j },
                    );
                }
            } else if product > bound {
                return MultiBackstepVerdict::NotSubnormal(BackstepViolation::FinalProductTooLarge {
                    j,
                });
            }
        }
        MultiBackstepVerdict::Subnormal
    }
}

/// A possibly divergent negative moment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NegMoment {
    Finite(Rat),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiBackstepVerdict {
    Subnormal,
    NotSubnormal(BackstepViolation),
}

/// First violated condition in a multi-step back-step check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BackstepViolation {
    NonPositiveWeight { step: usize },
    NegMomentInfinite { j: usize },
    IntermediateProductMismatch { j: usize },
    FinalProductTooLarge { j: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};

    fn two_t() -> Measure {
        Measure::bergman()
    }

    #[test]
    fn moments_of_basic_measures() {
        assert_eq!(two_t().moment(2), rat(1, 2));
        let d1 = Measure::point_mass(rat_int(1)).unwrap();
        for n in 0..6 {
            assert_eq!(d1.moment(n), rat_int(1));
        }
        // 2t dt: moments 2/(n+2)
        for n in 0..10 {
            assert_eq!(two_t().moment(n), rat(2, n as i64 + 2));
        }
    }

    #[test]
    fn split_origin_variants() {
        let m = two_t();
        let (nu, rho) = m.split_origin();
        assert_eq!(nu, m);
        assert!(rho.is_zero());

        let mix = Measure::new(
            vec![
                Atom { location: rat_int(0), mass: rat(1, 2) },
                Atom { location: rat_int(1), mass: rat(1, 2) },
            ],
            vec![],
        )
        .unwrap();
        let (nu, rho) = mix.split_origin();
        assert_eq!(rho, rat(1, 2));
        assert_eq!(nu.atoms().len(), 1);
        assert_eq!(nu.total_mass(), rat(1, 2));
    }

    #[test]
    fn neg_moments() {
        assert_eq!(two_t().neg_moment(1), NegMoment::Finite(rat_int(2)));
        assert_eq!(two_t().neg_moment(2), NegMoment::Infinite);
        let m = Measure::new(
            vec![],
            vec![DensityTerm { coeff: rat_int(3), exponent: rat_int(2) }],
        )
        .unwrap();
        assert_eq!(m.neg_moment(1), NegMoment::Finite(rat(3, 2)));
        assert_eq!(m.neg_moment(2), NegMoment::Finite(rat_int(3)));
        assert_eq!(m.neg_moment(3), NegMoment::Infinite);
        let at0 = Measure::new(vec![Atom { location: rat_int(0), mass: rat_int(1) }], vec![]).unwrap();
        assert_eq!(at0.neg_moment(1), NegMoment::Infinite);
    }

    #[test]
    fn shift_of_bergman_measure() {
        let w = two_t().shift().unwrap();
        for n in 0..8 {
            assert_eq!(w.weight_sq(n), rat(n as i64 + 2, n as i64 + 3));
        }
        let unit = Measure::point_mass(rat_int(1)).unwrap().shift().unwrap();
        for n in 0..8 {
            assert_eq!(unit.weight_sq(n), rat_int(1));
        }
        let leb = Measure::lebesgue().shift().unwrap();
        for n in 0..8 {
            assert_eq!(leb.weight_sq(n), rat(n as i64 + 1, n as i64 + 2));
        }
    }

    #[test]
    fn shift_rejects_origin_only() {
        let at0 = Measure::new(vec![Atom { location: rat_int(0), mass: rat_int(1) }], vec![]).unwrap();
        assert!(matches!(at0.shift(), Err(Error::DegenerateSupport)));
    }

    #[test]
    fn pushforward_examples() {
        let m = two_t();
        assert_eq!(m.pushforward_power(1), m);
        // 2t dt under t -> t^2 is dt
        assert_eq!(m.pushforward_power(2), Measure::lebesgue());
        let half = Measure::point_mass(rat(1, 2)).unwrap();
        assert_eq!(half.pushforward_power(2), Measure::point_mass(rat(1, 4)).unwrap());
    }

    #[test]
    fn piece_measure_bergman() {
        // 2t dt, l=2, i=1, gamma_1 = 2/3 -> (3/2) t^{1/2} dt
        let m = two_t();
        let piece = m.piece_measure(2, 1, &rat(2, 3)).unwrap();
        assert_eq!(piece.densities().len(), 1);
        assert_eq!(piece.densities()[0].coeff, rat(3, 2));
        assert_eq!(piece.densities()[0].exponent, rat(1, 2));
        assert!(piece.is_probability());
        // moments must be gamma_{2n+1}/gamma_1 = 3/(2n+3)
        for n in 0..10 {
            assert_eq!(piece.moment(n), rat(3, 2 * n as i64 + 3));
        }
        assert!(m.piece_measure(2, 0, &rat_int(1)).is_err());
        assert!(m.piece_measure(2, 2, &rat_int(1)).is_err());
    }

    #[test]
    fn piece_measure_atom_fixed_point() {
        let d1 = Measure::point_mass(rat_int(1)).unwrap();
        let piece = d1.piece_measure(3, 2, &rat_int(1)).unwrap();
        assert_eq!(piece, d1);
    }

    #[test]
    fn backstep_thresholds() {
        assert_eq!(two_t().backstep_subnormal_threshold(), rat(1, 2));
        let d1 = Measure::point_mass(rat_int(1)).unwrap();
        assert_eq!(d1.backstep_subnormal_threshold(), rat_int(1));
        let at0 = Measure::new(
            vec![
                Atom { location: rat_int(0), mass: rat(1, 2) },
                Atom { location: rat_int(1), mass: rat(1, 2) },
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(at0.backstep_subnormal_threshold(), rat_int(0));
        // power variant drops the origin atom first: 1/(1/2) = 2
        assert_eq!(at0.power_backstep_subnormal_threshold(2), rat_int(2));
        assert_eq!(two_t().power_backstep_subnormal_threshold(5), rat(1, 2));
        assert_eq!(d1.power_backstep_subnormal_threshold(3), rat_int(1));
    }

    #[test]
    fn backstep_measure_at_and_below_threshold() {
        // 2t dt at s = 1/2 (theta = 1): dt, no origin atom
        let m = two_t();
        let full = m.backstep_measure(&rat(1, 2)).unwrap();
        assert_eq!(full, Measure::lebesgue());
        // at s = 1/4 (theta = 1/2): (1/2) dt + (1/2) delta_0
        let half = m.backstep_measure(&rat(1, 4)).unwrap();
        assert_eq!(half.densities().len(), 1);
        assert_eq!(half.densities()[0].coeff, rat(1, 2));
        assert_eq!(half.densities()[0].exponent, rat_int(0));
        assert_eq!(half.atoms().len(), 1);
        assert_eq!(half.atoms()[0].location, rat_int(0));
        assert_eq!(half.atoms()[0].mass, rat(1, 2));
        assert!(half.is_probability());

        assert!(matches!(
            m.backstep_measure(&rat(3, 5)),
            Err(Error::AboveThreshold { .. })
        ));
        assert!(matches!(m.backstep_measure(&rat_int(0)), Err(Error::NonPositive(_))));
        // lebesgue density has exponent 0: one back-step would need exponent -1
        assert!(matches!(
            Measure::lebesgue().backstep_measure(&rat(1, 4)),
            Err(Error::UnsupportedDensity(_))
        ));
    }

    #[test]
    fn multi_backstep_examples() {
        let m = two_t();
        assert_eq!(m.multi_backstep_check(&[rat(1, 2)]), MultiBackstepVerdict::Subnormal);
        assert_eq!(
            m.multi_backstep_check(&[rat(1, 2), rat(1, 10)]),
            MultiBackstepVerdict::NotSubnormal(BackstepViolation::NegMomentInfinite { j: 2 })
        );
        let t2 = Measure::new(vec![], vec![DensityTerm { coeff: rat_int(3), exponent: rat_int(2) }])
            .unwrap();
        assert_eq!(
            t2.multi_backstep_check(&[rat(2, 3), rat(1, 2)]),
            MultiBackstepVerdict::Subnormal
        );
        assert_eq!(
            t2.multi_backstep_check(&[rat(2, 3), rat(1, 2) + rat(1, 1000)]),
            MultiBackstepVerdict::NotSubnormal(BackstepViolation::FinalProductTooLarge { j: 2 })
        );
        assert_eq!(
            t2.multi_backstep_check(&[rat(1, 2), rat(1, 2)]),
            MultiBackstepVerdict::NotSubnormal(BackstepViolation::IntermediateProductMismatch {
                j: 1
            })
        );
    }

    #[test]
    fn validation_rejects_bad_measures() {
        assert!(Measure::new(
            vec![Atom { location: rat_int(2), mass: rat_int(1) }],
            vec![]
        )
        .is_err());
        assert!(Measure::new(
            vec![Atom { location: rat(1, 2), mass: rat_int(0) }],
            vec![]
        )
        .is_err());
        assert!(Measure::new(
            vec![],
            vec![DensityTerm { coeff: rat_int(1), exponent: rat_int(-1) }]
        )
        .is_err());
        assert!(Measure::new(
            vec![
                Atom { location: rat(1, 2), mass: rat(1, 2) },
                Atom { location: rat(1, 2), mass: rat(1, 2) },
            ],
            vec![]
        )
        .is_err());
    }
}
