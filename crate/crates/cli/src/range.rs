use std::fmt;
use std::str::FromStr;

/// `lo..hi` with both ends included. A single number is accepted as a
/// one-point range; `lo > hi` is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InclusiveRange {
    pub lo: u32,
    pub hi: u32,
}

impl InclusiveRange {
    pub fn new(lo: u32, hi: u32) -> Self {
        InclusiveRange { lo, hi }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRangeError(String);

impl fmt::Display for ParseRangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected N or LO..HI, got {:?}", self.0)
    }
}

impl std::error::Error for ParseRangeError {}

impl FromStr for InclusiveRange {
    type Err = ParseRangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseRangeError(s.to_string());
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        match s.split_once("..") {
            Some((lo, hi)) => Ok(InclusiveRange::new(num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?)),
            None => {
                let v = num(s)?;
                Ok(InclusiveRange::new(v, v))
            }
        }
    }
}

impl fmt::Display for InclusiveRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}
