//! Share of findings per criticality.

use std::fmt;

use crate::results::ValidationResults;
use crate::rule::Criticality;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeveritySummary {
    pub total: usize,
    /// Indexed in [`Criticality::ALL`] order.
    pub counts: [usize; 3],
}

/// Percentage in tenths of a percent, rounded half up. Integer arithmetic
/// only, so 8.65 never turns into 8.6 through binary rounding.
pub fn percent_tenths(count: usize, total: usize) -> u64 {
    if total == 0 {
        return 0;
    }
    let (c, t) = (count as u64, total as u64);
    (2000 * c + t) / (2 * t)
}

/// Renders tenths as `d.d`.
pub fn format_tenths(tenths: u64) -> String {
    format!("{}.{}", tenths / 10, tenths % 10)
}

impl SeveritySummary {
    pub fn from_counts(high: usize, medium: usize, low: usize) -> Self {
        SeveritySummary { total: high + medium + low, counts: [high, medium, low] }
    }

    fn index(c: Criticality) -> usize {
        match c {
            Criticality::High => 0,
            Criticality::Medium => 1,
            Criticality::Low => 2,
        }
    }

    pub fn count(&self, c: Criticality) -> usize {
        self.counts[Self::index(c)]
    }

    pub fn percent_tenths(&self, c: Criticality) -> u64 {
        percent_tenths(self.count(c), self.total)
    }

    /// One decimal, e.g. `"8.6"`.
    pub fn percent(&self, c: Criticality) -> String {
        format_tenths(self.percent_tenths(c))
    }
}

impl fmt::Display for SeveritySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} findings", self.total)?;
        for c in Criticality::ALL {
            write!(f, ", {} {} ({}%)", c, self.count(c), self.percent(c))?;
        }
        Ok(())
    }
}

/// Counts findings by the criticality of the rule that produced them.
pub fn summarize(results: &ValidationResults) -> SeveritySummary {
    let mut counts = [0; 3];
    for report in &results.reports {
        counts[SeveritySummary::index(report.rule.criticality)] += report.findings.len();
    }
    SeveritySummary { total: counts.iter().sum(), counts }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_half_up() {
        assert_eq!(percent_tenths(1, 8), 125);
        assert_eq!(percent_tenths(1, 16), 63);
        assert_eq!(percent_tenths(1, 3), 333);
        assert_eq!(percent_tenths(2, 3), 667);
    }

    #[test]
    fn degenerate_totals() {
        let s = SeveritySummary::from_counts(0, 0, 0);
        assert_eq!(s.percent(Criticality::High), "0.0");
        let s = SeveritySummary::from_counts(7, 0, 0);
        assert_eq!(s.percent(Criticality::High), "100.0");
        assert_eq!(s.percent(Criticality::Low), "0.0");
    }
}
