//! The k-hyponormality engine.
//!
//! A shift is k-hyponormal iff every `(k+1) x (k+1)` Hankel window of its
//! moment sequence is PSD. No finite certificate exists for a general tail,
//! so windowed checks return an explicit verdict carrying the window that
//! was examined; a passing verdict is evidence, not a proof. Back-step
//! thresholds, by contrast, reduce to a single bordered-matrix corner
//! problem and are exact.

use crate::error::Result;
use crate::exactmath::{psd_corner_threshold, CornerThreshold, Rat, SymMatrix};
use crate::weights::WeightSequenceSq;

/// Default number of Hankel windows examined by the windowed checks.
pub const DEFAULT_WINDOW: usize = 25;

/// The Hankel moment window `A_{n,k}`: entries `gamma_{n+r+c}`.
#[derive(Clone, Debug)]
pub struct HankelWindow {
    pub base: usize,
    pub order: usize,
    pub matrix: SymMatrix,
}

/// `A_{n,k}`: the `(k+1) x (k+1)` matrix of moments `gamma_n .. gamma_{n+2k}`.
pub fn hankel(w: &WeightSequenceSq, n: usize, k: usize) -> HankelWindow {
    assert!(k >= 1, "order must be >= 1");
    let matrix = SymMatrix::from_fn(k + 1, |r, c| w.moment(n + r + c));
    HankelWindow { base: n, order: k, matrix }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KHypStatus {
    /// Every window `0 <= n <= N` is PSD. Necessary evidence, not a proof.
    PassedWindow,
    /// `A_{n,k}` is not PSD at this first failing `n`.
    FailedAt(usize),
}

/// Verdict of a windowed k-hyponormality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KHypVerdict {
    pub k: usize,
    pub window: usize,
    pub status: KHypStatus,
}

impl KHypVerdict {
    pub fn passed(&self) -> bool {
        self.status == KHypStatus::PassedWindow
    }
}

/// Check `A_{n,k} >= 0` for `0 <= n <= window`, reporting the first failure.
pub fn is_k_hyponormal_window(w: &WeightSequenceSq, k: usize, window: usize) -> KHypVerdict {
    for n in 0..=window {
        if !hankel(w, n, k).matrix.is_psd() {
            return KHypVerdict { k, window, status: KHypStatus::FailedAt(n) };
        }
    }
    KHypVerdict { k, window, status: KHypStatus::PassedWindow }
}

/// Windowed k-hyponormality of the `l`-th power, piece by piece: the power
/// is k-hyponormal iff every packet sequence is. Overall verdict = all pass.
pub fn is_power_k_hyponormal_window(
    w: &WeightSequenceSq,
    l: usize,
    k: usize,
    window: usize,
) -> Vec<KHypVerdict> {
    w.power_decompose(l).iter().map(|piece| is_k_hyponormal_window(piece, k, window)).collect()
}

/// Largest squared back-step weight `s` for which the extension of a
/// subnormal `w` stays k-hyponormal.
///
/// The bordered test matrix has corner `1/s`, border `(gamma_0 .. gamma_{k-1})`
/// and Hankel block `gamma_{r+c+1}`; subnormality of the base is the caller's
/// responsibility (a non-PSD block reports `NotPsd`).
pub fn backstep_k_threshold(w: &WeightSequenceSq, k: usize) -> Result<CornerThreshold> {
    power_backstep_k_threshold(w, 1, k)
}

/// Largest squared back-step weight `s` for which the `l`-th power of the
/// extension stays k-hyponormal: corner `1/s`, border `gamma_{(j+1)l - 1}`,
/// block `gamma_{(r+c+2)l - 1}`. Reduces to `backstep_k_threshold` at `l = 1`.
pub fn power_backstep_k_threshold(
    w: &WeightSequenceSq,
    l: usize,
    k: usize,
) -> Result<CornerThreshold> {
    assert!(l >= 1, "power must be >= 1");
    assert!(k >= 1, "order must be >= 1");
    let h = SymMatrix::from_fn(k, |r, c| w.moment((r + c + 2) * l - 1));
    let g: Vec<Rat> = (0..k).map(|j| w.moment((j + 1) * l - 1)).collect();
    psd_corner_threshold(&h, &g)
}

/// Verify, for `0 <= n <= window`, that the Hankel window of a Schur product
/// is the entrywise product of the factors' windows, and that PSD-ness of
/// both factor windows carries over to the product window.
pub fn schur_preservation_check(
    w1: &WeightSequenceSq,
    w2: &WeightSequenceSq,
    k: usize,
    window: usize,
) -> bool {
    let prod = w1.schur(w2);
    for n in 0..=window {
        let a = hankel(w1, n, k).matrix;
        let b = hankel(w2, n, k).matrix;
        let ab = hankel(&prod, n, k).matrix;
        let entrywise = SymMatrix::from_fn(k + 1, |r, c| a.get(r, c) * b.get(r, c));
        if ab != entrywise {
            return false;
        }
        if a.is_psd() && b.is_psd() && !ab.is_psd() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};
    use crate::measures::Measure;
    use crate::weights::WeightSequenceSq;

    #[test]
    fn hankel_window_entries() {
        let w = WeightSequenceSq::bergman();
        let h = hankel(&w, 0, 1);
        assert_eq!(*h.matrix.get(0, 0), rat_int(1));
        assert_eq!(*h.matrix.get(0, 1), rat(2, 3));
        assert_eq!(*h.matrix.get(1, 0), rat(2, 3));
        assert_eq!(*h.matrix.get(1, 1), rat(1, 2));
        // Hankel structure: entry depends only on r + c
        let h = hankel(&w, 3, 3);
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(h.matrix.get(r, c), &w.moment(3 + r + c));
            }
        }
    }

    #[test]
    fn constant_sequence_always_passes() {
        let one = WeightSequenceSq::constant(rat_int(1)).unwrap();
        let v = is_k_hyponormal_window(&one, 4, 30);
        assert!(v.passed());
    }

    #[test]
    fn backstep_above_threshold_fails_at_zero() {
        let w = WeightSequenceSq::bergman();
        let too_big = w.backstep(&(rat(9, 16) + rat(1, 100))).unwrap();
        let v = is_k_hyponormal_window(&too_big, 2, 10);
        assert_eq!(v.status, KHypStatus::FailedAt(0));
        let boundary = w.backstep(&rat(9, 16)).unwrap();
        assert!(is_k_hyponormal_window(&boundary, 2, 25).passed());
    }

    #[test]
    fn bergman_backstep_thresholds() {
        let w = WeightSequenceSq::bergman();
        assert_eq!(backstep_k_threshold(&w, 1).unwrap(), CornerThreshold::Finite(rat(2, 3)));
        assert_eq!(backstep_k_threshold(&w, 2).unwrap(), CornerThreshold::Finite(rat(9, 16)));
    }

    #[test]
    fn constant_one_threshold() {
        let one = WeightSequenceSq::constant(rat_int(1)).unwrap();
        assert_eq!(backstep_k_threshold(&one, 1).unwrap(), CornerThreshold::Finite(rat_int(1)));
        assert_eq!(backstep_k_threshold(&one, 3).unwrap(), CornerThreshold::Finite(rat_int(1)));
    }

    #[test]
    fn power_threshold_closed_form_k1() {
        let w = WeightSequenceSq::bergman();
        for l in 1..=8i64 {
            let expected = rat((l + 1) * (l + 1), 2 * (2 * l + 1));
            assert_eq!(
                power_backstep_k_threshold(&w, l as usize, 1).unwrap(),
                CornerThreshold::Finite(expected)
            );
        }
    }

    #[test]
    fn power_pieces_verdicts() {
        let w = WeightSequenceSq::bergman();
        let ok = w.backstep(&rat(9, 10)).unwrap();
        let verdicts = is_power_k_hyponormal_window(&ok, 2, 1, 15);
        assert!(verdicts.iter().all(|v| v.passed()));
        let bad = w.backstep(&(rat(9, 10) + rat(1, 100))).unwrap();
        let verdicts = is_power_k_hyponormal_window(&bad, 2, 1, 15);
        assert_eq!(verdicts[0].status, KHypStatus::FailedAt(0));
        assert!(verdicts[1].passed());
    }

    #[test]
    fn subnormal_bases_pass_power_checks() {
        let shifts = [
            Measure::bergman().shift().unwrap(),
            Measure::point_mass(rat(1, 2)).unwrap().shift().unwrap(),
        ];
        for w in &shifts {
            for l in 2..=3usize {
                for k in 1..=3usize {
                    let verdicts = is_power_k_hyponormal_window(w, l, k, 20);
                    assert!(verdicts.iter().all(|v| v.passed()), "l={l}, k={k}");
                }
            }
        }
    }

    #[test]
    fn power_one_reduces_to_plain_check() {
        let w = WeightSequenceSq::bergman();
        let v = is_power_k_hyponormal_window(&w, 1, 2, 10);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0], is_k_hyponormal_window(&w, 2, 10));
    }

    #[test]
    fn schur_preservation_examples() {
        let b = WeightSequenceSq::bergman();
        assert!(schur_preservation_check(&b, &b, 2, 20));
        let one = WeightSequenceSq::constant(rat_int(1)).unwrap();
        assert!(schur_preservation_check(&one, &b, 2, 15));
        let half = Measure::point_mass(rat(1, 2)).unwrap().shift().unwrap();
        let third = Measure::point_mass(rat(1, 3)).unwrap().shift().unwrap();
        assert!(schur_preservation_check(&half, &third, 3, 20));
    }

    #[test]
    fn dkl_matches_packet_window_up_to_scale() {
        // A_{0,k} of packet(backstep(w, s), l, 0) equals s * D_{k;l} entrywise,
        // where D_{k;l} is built directly from base moments with corner 1/s.
        let w = WeightSequenceSq::bergman();
        let s = rat(1, 3);
        for l in 1..=3usize {
            for k in 1..=3usize {
                let piece = w.backstep(&s).unwrap().packet(l, 0).unwrap();
                let win = hankel(&piece, 0, k).matrix;
                let direct = SymMatrix::from_fn(k + 1, |r, c| {
                    if r == 0 && c == 0 {
                        s.recip()
                    } else {
                        w.moment((r + c) * l - 1)
                    }
                });
                let scaled = SymMatrix::from_fn(k + 1, |r, c| &s * direct.get(r, c));
                assert_eq!(win, scaled);
            }
        }
    }
}
