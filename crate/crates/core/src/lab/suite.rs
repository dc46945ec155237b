use super::plan::{parse_plan, ExperimentPlan};
use crate::error::Result;

/// The built-in `paper` suite: one plan per prime.
pub const PAPER_PLANS: &[(&str, &str)] = &[
    ("paper-p2", include_str!("../../plans/paper-p2.yaml")),
    ("paper-p3", include_str!("../../plans/paper-p3.yaml")),
    ("paper-p5", include_str!("../../plans/paper-p5.yaml")),
    ("paper-p7", include_str!("../../plans/paper-p7.yaml")),
];

pub fn paper_suite() -> Result<Vec<ExperimentPlan>> {
    PAPER_PLANS.iter().map(|(_, text)| parse_plan(text)).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn suite_parses() {
        let plans = super::paper_suite().unwrap();
        assert_eq!(plans.len(), 4);
        assert!(plans.iter().all(|p| !p.experiments.is_empty()));
    }
}
