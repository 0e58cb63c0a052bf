//! Axis grammar: `lo:hi:n` ranges and `lo:hi` windows.

use std::str::FromStr;

/// An inclusive axis `lo:hi:n` with `n` nodes.
#[derive(Debug, Clone, Copy)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Range {
    pub fn bounds(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:n, got `{s}`"));
        }
        let lo: f64 = parts[0].parse().map_err(|_| format!("bad lo in `{s}`"))?;
        let hi: f64 = parts[1].parse().map_err(|_| format!("bad hi in `{s}`"))?;
        let n: usize = parts[2].parse().map_err(|_| format!("bad n in `{s}`"))?;
        if n < 2 {
            return Err(format!("need at least 2 nodes, got {n}"));
        }
        if hi.is_nan() || lo.is_nan() || hi < lo {
            return Err(format!("hi must be >= lo in `{s}`"));
        }
        Ok(Range { lo, hi, n })
    }
}

/// A `lo:hi` interval.
#[derive(Debug, Clone, Copy)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 2 {
            return Err(format!("expected lo:hi, got `{s}`"));
        }
        let lo: f64 = parts[0].parse().map_err(|_| format!("bad lo in `{s}`"))?;
        let hi: f64 = parts[1].parse().map_err(|_| format!("bad hi in `{s}`"))?;
        if hi.is_nan() || lo.is_nan() || hi < lo {
            return Err(format!("hi must be >= lo in `{s}`"));
        }
        Ok(Window { lo, hi })
    }
}
