//! `a..b` inclusive ranges and comma lists on the command line.

use std::str::FromStr;

use anyhow::{anyhow, bail, Result};

/// Inclusive integer range, a single value, or a comma list of either.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRange(pub Vec<u32>);

impl FromStr for IntRange {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            match part.split_once("..") {
                Some((lo, hi)) => {
                    let lo: u32 = lo.trim().parse().map_err(|_| anyhow!("bad range start in {part:?}"))?;
                    let hi = hi.trim().trim_start_matches('=');
                    let hi: u32 = hi.parse().map_err(|_| anyhow!("bad range end in {part:?}"))?;
                    if hi < lo {
                        bail!("empty range {part:?}");
                    }
                    out.extend(lo..=hi);
                }
                None => out.push(part.parse().map_err(|_| anyhow!("bad integer {part:?}"))?),
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(Self(out))
    }
}

/// Real values: a comma list, or `a..b` stepping by one (or one half with
/// `half_steps`).
#[derive(Debug, Clone, PartialEq)]
pub struct RealSpec(pub Vec<RealPart>);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealPart {
    Value(f64),
    Range(f64, f64),
}

impl FromStr for RealSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| -> Result<f64> {
            let v: f64 = parse_real(t.trim())?;
            if !v.is_finite() {
                bail!("non-finite value {t:?}");
            }
            Ok(v)
        };
        let mut parts = Vec::new();
        for part in s.split(',') {
            match part.split_once("..") {
                Some((lo, hi)) => {
                    let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
                    if hi < lo {
                        bail!("empty range {part:?}");
                    }
                    parts.push(RealPart::Range(lo, hi));
                }
                None => parts.push(RealPart::Value(parse(part)?)),
            }
        }
        Ok(Self(parts))
    }
}

/// Accepts decimals and simple fractions such as `1/2` or `-3/2`.
fn parse_real(t: &str) -> Result<f64> {
    if let Some((num, den)) = t.split_once('/') {
        let num: f64 = num.trim().parse().map_err(|_| anyhow!("bad number {t:?}"))?;
        let den: f64 = den.trim().parse().map_err(|_| anyhow!("bad number {t:?}"))?;
        return Ok(num / den);
    }
    t.parse().map_err(|_| anyhow!("bad number {t:?}"))
}

impl RealSpec {
    pub fn values(&self, half_steps: bool) -> Vec<f64> {
        let mut out = Vec::new();
        for p in &self.0 {
            match *p {
                RealPart::Value(v) => out.push(v),
                RealPart::Range(lo, hi) => {
                    out.extend(susyrad::maps::lambda_range(lo, hi, half_steps));
                }
            }
        }
        out
    }

    /// A single value, as needed for scalar flags.
    pub fn single(&self) -> Option<f64> {
        match self.0.as_slice() {
            [RealPart::Value(v)] => Some(*v),
            _ => None,
        }
    }
}

/// `lo..hi` bounds of a coordinate grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval(pub f64, pub f64);

impl FromStr for Interval {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| anyhow!("expected lo..hi, got {s:?}"))?;
        let (lo, hi) = (parse_real(lo.trim())?, parse_real(hi.trim())?);
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            bail!("grid interval must satisfy 0 < lo < hi, got {s:?}");
        }
        Ok(Self(lo, hi))
    }
}
