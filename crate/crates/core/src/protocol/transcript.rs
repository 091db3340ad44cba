//! Per-shot protocol records and their line-delimited JSON form.
//!
//! One JSON object per line:
//! `{"shot":0,"mu":1,"nu":1,"h1_sample":1.707...,"v_sample":-0.585...}`.
//! `h1_sample` is the readout of the receiver field term `h Z_B + const`,
//! `v_sample` the readout of `2k X_A X_B + const`.

use crate::error::{Error, Result};
use crate::quantum::Outcome;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShotRecord {
    pub shot: u64,
    pub mu: Outcome,
    pub nu: Outcome,
    pub h1_sample: f64,
    pub v_sample: f64,
}

impl ShotRecord {
    pub fn energy(&self) -> f64 {
        self.h1_sample + self.v_sample
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Accept,
    Reject,
    Undecided,
}

/// Sample mean and standard error of a set of readouts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
}

impl Estimate {
    pub fn from_samples(samples: impl IntoIterator<Item = f64>) -> Self {
        let mut n = 0usize;
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for x in samples {
            n += 1;
            let d = x - mean;
            mean += d / n as f64;
            m2 += d * (x - mean);
        }
        if n == 0 {
            return Self { mean: f64::NAN, std_error: f64::NAN, n };
        }
        let var = if n > 1 { m2 / (n as f64 - 1.0) } else { 0.0 };
        Self { mean, std_error: (var / n as f64).sqrt(), n }
    }

    /// `mean / std_error`; infinite when the samples have no spread.
    pub fn z_score(&self) -> f64 {
        if self.std_error > 0.0 {
            self.mean / self.std_error
        } else if self.mean == 0.0 {
            0.0
        } else {
            self.mean.signum() * f64::INFINITY
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolTranscript {
    pub rounds: Vec<ShotRecord>,
    pub decision: Decision,
}

impl ProtocolTranscript {
    pub fn energy(&self) -> Estimate {
        Estimate::from_samples(self.rounds.iter().map(ShotRecord::energy))
    }

    pub fn h1(&self) -> Estimate {
        Estimate::from_samples(self.rounds.iter().map(|r| r.h1_sample))
    }

    pub fn v(&self) -> Estimate {
        Estimate::from_samples(self.rounds.iter().map(|r| r.v_sample))
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        write_jsonl(&self.rounds, &mut w)
    }
}

pub fn write_jsonl<W: Write>(rounds: &[ShotRecord], mut w: W) -> Result<()> {
    for r in rounds {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<ShotRecord>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ShotRecord =
            serde_json::from_str(&line).map_err(|e| Error::Io(format!("line {}: {e}", i + 1)))?;
        out.push(rec);
    }
    Ok(out)
}
