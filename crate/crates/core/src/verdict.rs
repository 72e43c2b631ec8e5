use serde::{Deserialize, Serialize};

/// Outcome of a bounded check. Searches that run out of room are reported as
/// `BoundedInconclusive`, never as `Fail`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BoundedInconclusive,
    SkippedHypothesis,
}

impl Status {
    fn rank(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::SkippedHypothesis => 1,
            Status::BoundedInconclusive => 2,
            Status::Fail => 3,
        }
    }

    /// The worse of the two; a failure is never masked.
    pub fn and(self, o: Status) -> Status {
        if o.rank() > self.rank() {
            o
        } else {
            self
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BoundedInconclusive => "bounded-inconclusive",
            Status::SkippedHypothesis => "skipped-hypothesis",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fail_dominates() {
        use Status::*;
        assert_eq!(Pass.and(BoundedInconclusive), BoundedInconclusive);
        assert_eq!(BoundedInconclusive.and(Fail), Fail);
        assert_eq!(Fail.and(Pass), Fail);
        assert_eq!(SkippedHypothesis.and(Pass), SkippedHypothesis);
        assert_eq!(serde_json::to_string(&BoundedInconclusive).unwrap(), "\"bounded-inconclusive\"");
    }
}
