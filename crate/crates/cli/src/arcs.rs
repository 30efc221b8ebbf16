//! Arcs on the rational unit circle. An arrow `(x, b)` of the internal
//! category over the punctured disk starts at `b` and ends at `h(x)·b`,
//! where `h(x) = x/‖x‖`; composable arrows compose to `(x′x, b)`.

use std::path::Path;

use conj_core::algebra::{Outcome, Witness};
use conj_core::builders::circle_arcs;
use conj_core::carriers::plan::tuple_rng;
use conj_core::carriers::{GaussianRational, Rational};
use conj_core::catalog::unit_part;
use conj_core::internal::build_internal_category;
use conj_core::{Elem, EnumerationPlan, Verdict};
use serde::{Deserialize, Serialize};

use crate::commands::CliError;
use crate::report::Report;

pub const DEFAULT_COUNT: usize = 1000;

/// Samples used to check the action and category laws while building.
const BUILD_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcRecord {
    pub x: GaussianRational,
    pub b: GaussianRational,
    pub radius2: Rational,
    pub start: GaussianRational,
    pub end: GaussianRational,
}

impl ArcRecord {
    /// `None` when `x` has irrational norm or is zero.
    pub fn new(x: GaussianRational, b: GaussianRational) -> Option<Self> {
        let end = &unit_part(&x)? * &b;
        Some(ArcRecord { radius2: x.norm2(), start: b.clone(), x, b, end })
    }

    fn elem(&self) -> Elem {
        Elem::pair(Elem::Gauss(self.x.clone()), Elem::Gauss(self.b.clone()))
    }
}

/// `second` after `first`, and the composite computed by the category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcPair {
    pub first: ArcRecord,
    pub second: ArcRecord,
    pub composite: ArcRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseCheck {
    pub arrow: ArcRecord,
    /// `(x⁻¹, h(x)·b)`, the only possible inverse arrow.
    pub candidate_x: GaussianRational,
    pub candidate_b: GaussianRational,
    pub candidate_radius2: Rational,
    pub in_carrier: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcFile {
    pub seed: u64,
    pub pairs: Vec<ArcPair>,
    pub inverse_check: InverseCheck,
}

/// Composability and composition predicates of every pair, recomputed from
/// the stored coordinates. Empty when the file is consistent.
pub fn validate(file: &ArcFile) -> Vec<String> {
    let mut out = Vec::new();
    let one = Rational::one();
    for (i, p) in file.pairs.iter().enumerate() {
        for (which, arc) in [("first", &p.first), ("second", &p.second), ("composite", &p.composite)] {
            match ArcRecord::new(arc.x.clone(), arc.b.clone()) {
                Some(fresh) if fresh == *arc => {}
                _ => out.push(format!("pair {i}: {which} arc has inconsistent derived fields")),
            }
            if arc.radius2.is_zero() || arc.radius2 > one || arc.b.norm2() != one {
                out.push(format!("pair {i}: {which} arc is outside the carrier"));
            }
        }
        if p.second.start != p.first.end {
            out.push(format!("pair {i}: second arc does not start where the first ends"));
        }
        if p.composite.x != &p.second.x * &p.first.x || p.composite.b != p.first.b {
            out.push(format!("pair {i}: composite is not (x'x, b)"));
        }
        if p.composite.end != p.second.end {
            out.push(format!("pair {i}: composite does not end where the second arc ends"));
        }
    }
    let c = &file.inverse_check;
    if c.in_carrier != (c.candidate_radius2 <= one) {
        out.push("inverse check: carrier flag disagrees with the radius".into());
    }
    out
}

fn witness(law: &str, vars: &[&str], arcs: &[&ArcRecord], detail: String) -> Witness {
    Witness {
        law: law.into(),
        vars: vars.iter().map(|v| v.to_string()).collect(),
        elems: arcs.iter().map(|a| a.elem()).collect(),
        shown: arcs.iter().map(|a| format!("({}, {})", a.x, a.b)).collect(),
        detail,
    }
}

fn arc_of(e: &Elem) -> ArcRecord {
    let (x, b) = (e.fst().as_gauss().expect("disk element"), e.snd().as_gauss().expect("circle point"));
    ArcRecord::new(x.clone(), b.clone()).expect("disk elements have rational norm")
}

/// Samples `count` composable pairs, checks the composite against
/// `(x′x, b)`, the unit arcs, and the inverse candidate of `(i/2, 1)`.
pub fn demo_arcs(count: usize, seed: u64, out: Option<&Path>) -> Result<Report, CliError> {
    let sampled = EnumerationPlan::sampled(count.max(1), seed)?;
    let build = EnumerationPlan::sampled(BUILD_SAMPLES, seed)?;
    let d = circle_arcs(&build)?;
    let cat = build_internal_category(&d, &build)?;
    let (x_set, b_set) = (&d.e.x, &d.e.b);
    let mut report = Report::new(format!("demo-arcs --count {count} --seed {seed}"), Some(sampled));
    report.structure(x_set.summary());
    report.structure(b_set.summary());
    let holds = Outcome::HoldsSampled { count, seed };

    let mut pairs = Vec::with_capacity(count);
    let (mut comp_fail, mut end_fail, mut unit_fail) = (None, None, None);
    for i in 0..count as u64 {
        let mut rng = tuple_rng(seed, i);
        let x = x_set.sample(&mut rng);
        let b = b_set.sample(&mut rng);
        let x2 = x_set.sample(&mut rng);
        let first = arc_of(&Elem::pair(x, b));
        let second = ArcRecord::new(x2.as_gauss().expect("disk element").clone(), first.end.clone())
            .expect("rational norm");
        let pair = Elem::pair(second.elem(), first.elem());
        if !cat.pairs.contains(&pair) && end_fail.is_none() {
            end_fail = Some(witness("composable", &["a", "a'"], &[&second, &first], "pair rejected by the category".into()));
        }
        let composite = arc_of(&cat.m.apply(&pair));
        let expected_x = &second.x * &first.x;
        if (composite.x != expected_x || composite.b != first.b) && comp_fail.is_none() {
            comp_fail = Some(witness(
                "composition-rule",
                &["a", "a'"],
                &[&second, &first],
                format!("m gives ({}, {}) but (x'x, b) = ({expected_x}, {})", composite.x, composite.b, first.b),
            ));
        }
        if composite.end != second.end && end_fail.is_none() {
            end_fail = Some(witness("composite-end", &["a", "a'"], &[&second, &first], "endpoints differ".into()));
        }
        let unit_at = |p: &GaussianRational| ArcRecord::new(GaussianRational::one(), p.clone()).expect("unit arc");
        let left = cat.m.apply(&Elem::pair(unit_at(&first.end).elem(), first.elem()));
        let right = cat.m.apply(&Elem::pair(first.elem(), unit_at(&first.start).elem()));
        if (left != first.elem() || right != first.elem()) && unit_fail.is_none() {
            unit_fail = Some(witness("identity-arcs", &["a"], &[&first], "unit arc does not compose neutrally".into()));
        }
        pairs.push(ArcPair { first, second, composite });
    }
    let n = count as u64;
    for (law, fail) in [("composition-rule", comp_fail), ("composable-endpoints", end_fail), ("identity-arcs", unit_fail)] {
        let v = match fail {
            Some(w) => Verdict::failure(law, n, w),
            None => Verdict::new(law, n, holds.clone()),
        };
        report.push("arcs", v);
    }

    // (i/2, 1) has the formal inverse (−2i, i), which leaves the disk.
    let half_i = GaussianRational::new(Rational::zero(), Rational::new(1, 2));
    let arrow = ArcRecord::new(half_i.clone(), GaussianRational::one()).expect("rational norm");
    let cx = half_i.recip().expect("nonzero");
    let candidate_b = arrow.end.clone();
    let in_carrier = x_set.contains(&Elem::Gauss(cx.clone()));
    let check = InverseCheck {
        candidate_radius2: cx.norm2(),
        candidate_x: cx.clone(),
        candidate_b: candidate_b.clone(),
        in_carrier,
        arrow: arrow.clone(),
    };
    report.note(format!(
        "arrow (i/2, 1): inverse candidate ({cx}, {candidate_b}) has |x|^2 = {}, {}",
        check.candidate_radius2,
        if in_carrier { "inside the disk" } else { "outside the disk" }
    ));
    let formal = &cx * &half_i == GaussianRational::one();
    let outside = if !in_carrier && formal {
        Verdict::new("inverse-candidate-outside", 1, Outcome::HoldsExhaustive)
    } else {
        Verdict::failure(
            "inverse-candidate-outside",
            1,
            witness("inverse-candidate-outside", &["a"], &[&arrow], format!("candidate x = {cx}")),
        )
    };
    report.push("arcs", outside);

    let file = ArcFile { seed, pairs, inverse_check: check };
    let text = serde_json::to_string_pretty(&file).expect("arc records serialize");
    if let Some(path) = out {
        std::fs::write(path, &text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        report.note(format!("wrote {} pairs to {}", file.pairs.len(), path.display()));
    }
    let back: ArcFile = serde_json::from_str(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let violations = validate(&back);
    let round_trip = if back == file && violations.is_empty() {
        Verdict::new("arc-file-round-trip", n, holds.clone())
    } else {
        Verdict::failure(
            "arc-file-round-trip",
            n,
            Witness {
                law: "arc-file-round-trip".into(),
                vars: vec![],
                elems: vec![],
                shown: vec![],
                detail: violations.first().cloned().unwrap_or_else(|| "records changed on reading back".into()),
            },
        )
    };
    report.push("arcs", round_trip);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turn_arc_ends_at_i() {
        let a = ArcRecord::new(GaussianRational::new(Rational::zero(), Rational::new(1, 2)), GaussianRational::one())
            .unwrap();
        assert_eq!(a.end, GaussianRational::i());
        assert_eq!(a.radius2, Rational::new(1, 4));
    }

    #[test]
    fn validation_catches_tampering() {
        let report = demo_arcs(20, 3, None).unwrap();
        assert!(report.passed(), "{}", report.render());
        let mut file = ArcFile {
            seed: 3,
            pairs: vec![],
            inverse_check: InverseCheck {
                arrow: ArcRecord::new(GaussianRational::one(), GaussianRational::one()).unwrap(),
                candidate_x: GaussianRational::one(),
                candidate_b: GaussianRational::one(),
                candidate_radius2: Rational::one(),
                in_carrier: true,
            },
        };
        assert!(validate(&file).is_empty());
        let a = ArcRecord::new(GaussianRational::new(Rational::new(3, 5), Rational::new(4, 5)), GaussianRational::one())
            .unwrap();
        let bad = ArcPair { first: a.clone(), second: a.clone(), composite: a };
        file.pairs.push(bad);
        assert!(!validate(&file).is_empty());
    }
}
