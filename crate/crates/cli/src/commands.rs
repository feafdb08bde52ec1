//! The five analysis commands. Each returns a [`Report`] plus the process
//! exit code: 0 success, 1 mathematical failure, 2 usage error (the latter
//! raised as [`CliError`] before a report exists).

use wshift::exactmath::{exact_str, rat, CornerThreshold, Rat, Zero};
use wshift::measures::Measure;
use wshift::positivity::{is_power_k_hyponormal_window, power_backstep_k_threshold, KHypStatus};
use wshift::quadratic::pqh_threshold_family;
use wshift::weights::WeightSequenceSq;

use crate::config::{bergman_power_base, FamilyConfig, Piece};
use crate::report::Report;
use crate::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH_FAIL: i32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMode {
    KHyp,
    Subnormal,
    Pqh,
}

/// `moments`: the first `count` moments of every piece.
pub fn cmd_moments(config: &FamilyConfig, count: usize) -> Result<(Report, i32), CliError> {
    if count == 0 {
        return Err(CliError::Usage("count must be >= 1".into()));
    }
    let pieces = config.build()?;
    let mut report = Report::new("moments");
    for Piece { label, seq } in &pieces {
        for n in 0..count {
            let key = if pieces.len() == 1 {
                format!("gamma_{n}")
            } else {
                format!("{label}.gamma_{n}")
            };
            report.value(key, seq.moment(n));
        }
    }
    Ok((report, EXIT_OK))
}

/// `check`: windowed k-hyponormality of the family (all pieces of the
/// `power`-th operator power). Exit 1 on any failing window.
pub fn cmd_check(
    config: &FamilyConfig,
    k: usize,
    window: usize,
    power: usize,
) -> Result<(Report, i32), CliError> {
    if k == 0 || power == 0 {
        return Err(CliError::Usage("k and power must be >= 1".into()));
    }
    let pieces = config.build()?;
    let mut report = Report::new(&format!("k-hyponormality check (k={k}, window={window})"));
    let mut all_pass = true;
    for Piece { label, seq } in &pieces {
        for (i, verdict) in is_power_k_hyponormal_window(seq, power, k, window).iter().enumerate() {
            let key = if power == 1 {
                label.clone()
            } else {
                format!("{label}.power{power}.piece{i}")
            };
            match verdict.status {
                KHypStatus::PassedWindow => {
                    report.note(key, format!("passed windows 0..={window}"));
                }
                KHypStatus::FailedAt(n) => {
                    all_pass = false;
                    report.note(key, format!("FAILED at n={n}"));
                }
            }
        }
    }
    Ok((report, if all_pass { EXIT_OK } else { EXIT_MATH_FAIL }))
}

/// `threshold`: exact largest squared back-step weight in the given mode.
pub fn cmd_threshold(
    config: &FamilyConfig,
    k: usize,
    power: usize,
    mode: ThresholdMode,
) -> Result<(Report, i32), CliError> {
    if k == 0 || power == 0 {
        return Err(CliError::Usage("k and power must be >= 1".into()));
    }
    let mut report = Report::new("back-step threshold (squared weight)");
    match mode {
        ThresholdMode::KHyp => {
            let w = config.build_single()?;
            let label = format!("khyp k={k} power={power}");
            match power_backstep_k_threshold(&w, power, k).map_err(CliError::Family)? {
                CornerThreshold::Finite(s) => report.value(label, s),
                CornerThreshold::Infinite => report.note(label, "unbounded (zero border)"),
                CornerThreshold::OutOfRange => {
                    report.note(label, "no admissible extension (border outside range)");
                    return Ok((report, EXIT_MATH_FAIL));
                }
            }
        }
        ThresholdMode::Subnormal => {
            let mu = base_measure_for_subnormal(config)?;
            let s = mu.power_backstep_subnormal_threshold(power);
            if s.is_zero() {
                report.value_with_note(
                    format!("subnormal power={power}"),
                    s,
                    "no subnormal extension exists",
                );
                return Ok((report, EXIT_MATH_FAIL));
            }
            report.value(format!("subnormal power={power}"), s);
        }
        ThresholdMode::Pqh => {
            let refuse = || {
                CliError::Usage(
                    "pqh mode supports only the (n+2)/(n+3) rational-tail (2t dt) base, \
                     optionally with a power transform matching --power"
                        .into(),
                )
            };
            // power may come from the config's transform, the flag, or both
            // (in agreement).
            let l = match bergman_power_base(config)?.ok_or_else(refuse)? {
                1 => power,
                l if power == 1 || power == l => l,
                _ => return Err(refuse()),
            };
            let s = pqh_threshold_family(l).map_err(CliError::Family)?;
            report.value(format!("pqh power={l}"), s);
        }
    }
    Ok((report, EXIT_OK))
}

fn base_measure_for_subnormal(config: &FamilyConfig) -> Result<Measure, CliError> {
    use crate::config::TransformConfig;
    let only_power =
        config.transforms.iter().all(|t| matches!(t, TransformConfig::Power { .. }));
    if !only_power {
        return Err(CliError::Usage(
            "subnormal mode needs a measure-presentable base without transforms \
             (other than power)"
                .into(),
        ));
    }
    match config.base.build_measure()? {
        Some(mu) => Ok(mu),
        None => Err(CliError::Usage(
            "subnormal mode needs a base with a known measure: a measure base, a \
             constant, or a recognized rational tail"
                .into(),
        )),
    }
}

/// `decompose`: squared weights and moments of every piece of the power.
pub fn cmd_decompose(
    config: &FamilyConfig,
    power: usize,
    count: usize,
) -> Result<(Report, i32), CliError> {
    if power == 0 || count == 0 {
        return Err(CliError::Usage("power and count must be >= 1".into()));
    }
    let pieces = config.build()?;
    let mut report = Report::new(&format!("power-{power} decomposition"));
    for Piece { label, seq } in &pieces {
        for (i, piece) in seq.power_decompose(power).into_iter().enumerate() {
            let prefix = if pieces.len() == 1 && power > 1 {
                format!("piece{i}")
            } else if power == 1 {
                label.clone()
            } else {
                format!("{label}.piece{i}")
            };
            for n in 0..count {
                report.value(format!("{prefix}.s_{n}"), piece.weight_sq(n));
            }
            for n in 0..count {
                report.value(format!("{prefix}.gamma_{n}"), piece.moment(n));
            }
        }
    }
    Ok((report, EXIT_OK))
}

/// `paper-tables`: regenerate the built-in reference table of back-step
/// thresholds for powers 1..=8, computing each entry twice — once through
/// the full pipeline and once from the closed-form expression — and flag
/// them MATCH/MISMATCH. Exit 1 on any mismatch.
pub fn cmd_paper_tables() -> Result<(Report, i32), CliError> {
    let w = WeightSequenceSq::bergman();
    let mu = Measure::bergman();
    let mut report = Report::new("reference thresholds (squared back-step weight)");
    let mut all_match = true;
    let mut emit = |report: &mut Report, label: String, computed: Rat, closed: Rat| {
        let ok = computed == closed;
        all_match &= ok;
        let note = if ok {
            format!("MATCH closed form {}", exact_str(&closed))
        } else {
            format!("MISMATCH closed form {}", exact_str(&closed))
        };
        report.value_with_note(label, computed, note);
    };
    for l in 1..=8usize {
        let li = l as i64;
        let hyp = match power_backstep_k_threshold(&w, l, 1).map_err(CliError::Family)? {
            CornerThreshold::Finite(s) => s,
            _ => return Err(CliError::Usage("unexpected non-finite threshold".into())),
        };
        emit(&mut report, format!("l={l} hyponormal"), hyp, rat((li + 1) * (li + 1), 2 * (2 * li + 1)));
        let hyp2 = match power_backstep_k_threshold(&w, l, 2).map_err(CliError::Family)? {
            CornerThreshold::Finite(s) => s,
            _ => return Err(CliError::Usage("unexpected non-finite threshold".into())),
        };
        emit(
            &mut report,
            format!("l={l} 2-hyponormal"),
            hyp2,
            rat(
                (li + 1) * (li + 1) * (2 * li + 1) * (2 * li + 1),
                2 * (3 * li + 1) * (4 * li * li + 3 * li + 1),
            ),
        );
        emit(
            &mut report,
            format!("l={l} subnormal"),
            mu.power_backstep_subnormal_threshold(l),
            rat(1, 2),
        );
        let pqh_closed = if li <= 2 {
            rat((li + 1) * (li + 1), 2 * (2 * li + 1))
        } else {
            rat(
                (li + 1) * (li + 1) * (1 + 7 * li + 34 * li * li + 44 * li * li * li),
                2 * (1 + 9 * li + 45 * li * li + 99 * li * li * li + 94 * li * li * li * li),
            )
        };
        emit(
            &mut report,
            format!("l={l} pqh"),
            pqh_threshold_family(l).map_err(CliError::Family)?,
            pqh_closed,
        );
    }
    report.note("overall", if all_match { "all MATCH" } else { "MISMATCH present" });
    Ok((report, if all_match { EXIT_OK } else { EXIT_MATH_FAIL }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use wshift::exactmath::rat_int;

    fn bergman_config() -> FamilyConfig {
        FamilyConfig::from_json(
            r#"{"base": {"kind": "rational_tail", "numerator": ["2","1"], "denominator": ["3","1"]}}"#,
        )
        .unwrap()
    }

    #[test]
    fn moments_of_bergman() {
        let (report, code) = cmd_moments(&bergman_config(), 4).unwrap();
        assert_eq!(code, EXIT_OK);
        let values: Vec<Rat> = report.rows.iter().map(|r| r.exact.clone().unwrap()).collect();
        assert_eq!(values, vec![rat_int(1), rat(2, 3), rat(1, 2), rat(2, 5)]);
    }

    #[test]
    fn moments_of_measure_and_constant_bases() {
        let measure = FamilyConfig::from_json(
            r#"{"base": {"kind": "measure", "density_terms": [{"coeff": "2", "exponent": "1"}]}}"#,
        )
        .unwrap();
        let (report, _) = cmd_moments(&measure, 3).unwrap();
        let values: Vec<Rat> = report.rows.iter().map(|r| r.exact.clone().unwrap()).collect();
        assert_eq!(values, vec![rat_int(1), rat(2, 3), rat(1, 2)]);

        let one = FamilyConfig::from_json(r#"{"base": {"kind": "constant", "c": "1"}}"#).unwrap();
        let (report, _) = cmd_moments(&one, 3).unwrap();
        assert!(report.rows.iter().all(|r| r.exact == Some(rat_int(1))));
        assert!(cmd_moments(&one, 0).is_err());
    }

    #[test]
    fn check_exit_codes() {
        let pass = FamilyConfig::from_json(
            r#"{
              "base": {"kind": "rational_tail", "numerator": ["2","1"], "denominator": ["3","1"]},
              "transforms": [{"kind": "backstep", "s": "9/16"}]
            }"#,
        )
        .unwrap();
        assert_eq!(cmd_check(&pass, 2, 25, 1).unwrap().1, EXIT_OK);
        let fail = FamilyConfig::from_json(
            r#"{
              "base": {"kind": "rational_tail", "numerator": ["2","1"], "denominator": ["3","1"]},
              "transforms": [{"kind": "backstep", "s": "3/5"}]
            }"#,
        )
        .unwrap();
        let (report, code) = cmd_check(&fail, 2, 10, 1).unwrap();
        assert_eq!(code, EXIT_MATH_FAIL);
        assert!(report.rows[0].note.as_deref().unwrap().contains("n=0"));
    }

    #[test]
    fn threshold_modes() {
        let cfg = bergman_config();
        let (report, code) = cmd_threshold(&cfg, 2, 3, ThresholdMode::KHyp).unwrap();
        assert_eq!(code, EXIT_OK);
        assert_eq!(report.rows[0].exact, Some(rat(98, 115)));
        let (report, _) = cmd_threshold(&cfg, 1, 4, ThresholdMode::Subnormal).unwrap();
        assert_eq!(report.rows[0].exact, Some(rat(1, 2)));
        let (report, _) = cmd_threshold(&cfg, 1, 2, ThresholdMode::Pqh).unwrap();
        assert_eq!(report.rows[0].exact, Some(rat(9, 10)));
        // pqh refuses non-Bergman bases
        let other = FamilyConfig::from_json(r#"{"base": {"kind": "constant", "c": "1"}}"#).unwrap();
        assert!(matches!(
            cmd_threshold(&other, 1, 2, ThresholdMode::Pqh),
            Err(CliError::Usage(_))
        ));
        // power may live in the config instead of the flag
        let powered = FamilyConfig::from_json(
            r#"{
              "base": {"kind": "rational_tail", "numerator": ["2","1"], "denominator": ["3","1"]},
              "transforms": [{"kind": "power", "l": 3}]
            }"#,
        )
        .unwrap();
        let (report, _) = cmd_threshold(&powered, 1, 1, ThresholdMode::Pqh).unwrap();
        assert_eq!(report.rows[0].exact, Some(rat(379, 335)));
        // conflicting powers refused
        assert!(matches!(
            cmd_threshold(&powered, 1, 2, ThresholdMode::Pqh),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn decompose_pieces() {
        let (report, code) = cmd_decompose(&bergman_config(), 2, 2).unwrap();
        assert_eq!(code, EXIT_OK);
        // piece0: s_0 = 1/2, s_1 = 2/3; piece1: s_0 = 3/5
        assert_eq!(report.rows[0].exact, Some(rat(1, 2)));
        assert_eq!(report.rows[1].exact, Some(rat(2, 3)));
        let piece1_s0 = report.rows.iter().find(|r| r.label == "piece1.s_0").unwrap();
        assert_eq!(piece1_s0.exact, Some(rat(3, 5)));

        // power 1 is the sequence itself
        let (report, _) = cmd_decompose(&bergman_config(), 1, 2).unwrap();
        assert_eq!(report.rows[0].label, "sequence.s_0");
        assert_eq!(report.rows[0].exact, Some(rat(2, 3)));

        // constant sequence: four identical pieces
        let one = FamilyConfig::from_json(r#"{"base": {"kind": "constant", "c": "1"}}"#).unwrap();
        let (report, _) = cmd_decompose(&one, 4, 2).unwrap();
        assert_eq!(report.rows.len(), 16);
        assert!(report.rows.iter().all(|r| r.exact == Some(rat_int(1))));
    }

    #[test]
    fn paper_tables_all_match() {
        let (report, code) = cmd_paper_tables().unwrap();
        assert_eq!(code, EXIT_OK);
        assert!(report
            .rows
            .iter()
            .all(|r| r.note.as_deref().map(|n| !n.contains("MISMATCH")).unwrap_or(true)));
    }
}
