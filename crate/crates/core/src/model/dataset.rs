use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::joint::JointActionRewardTable;
use super::support::RewardSupport;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One expert log entry. The context is deliberately absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Record {
    pub action: usize,
    /// Index into the reward support.
    pub level: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    t: u64,
    x: usize,
    y: f64,
}

/// Expert log of `(action, reward)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationalDataset<T> {
    support: RewardSupport<T>,
    num_arms: usize,
    records: Vec<Record>,
}

impl<T: Scalar> ObservationalDataset<T> {
    pub fn new(support: RewardSupport<T>, num_arms: usize, records: Vec<Record>) -> Result<Self> {
        for r in &records {
            if r.action >= num_arms {
                return Err(Error::ArmOutOfRange {
                    arm: r.action,
                    num_arms,
                });
            }
            if r.level >= support.len() {
                return Err(Error::InvalidArgument(format!(
                    "reward level {} out of range",
                    r.level
                )));
            }
        }
        Ok(Self {
            support,
            num_arms,
            records,
        })
    }

    /// Builds a dataset from `(action, reward value)` pairs, mapping each
    /// reward onto its support level.
    pub fn from_pairs(
        support: RewardSupport<T>,
        num_arms: usize,
        pairs: impl IntoIterator<Item = (usize, T)>,
    ) -> Result<Self> {
        let records = pairs
            .into_iter()
            .map(|(action, y)| {
                support
                    .level_of(y)
                    .map(|level| Record { action, level })
                    .ok_or(Error::UnknownReward(y.as_f64()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(support, num_arms, records)
    }

    pub fn support(&self) -> &RewardSupport<T> {
        &self.support
    }

    pub fn num_arms(&self) -> usize {
        self.num_arms
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Empirical frequencies of every `(arm, level)` pair.
    pub fn joint_table(&self) -> Result<JointActionRewardTable<T>> {
        if self.records.is_empty() {
            return Err(Error::InsufficientData(
                "cannot estimate P(x, y) from an empty dataset".into(),
            ));
        }
        let mut counts = vec![vec![0u64; self.support.len()]; self.num_arms];
        for r in &self.records {
            counts[r.action][r.level] += 1;
        }
        let n = T::from_count(self.records.len() as u64);
        let entries = counts
            .into_iter()
            .map(|row| row.into_iter().map(|c| T::from_count(c) / n).collect())
            .collect();
        JointActionRewardTable::new(self.support.clone(), entries)
    }

    /// Writes the `t,x,y` CSV form.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(writer);
        for (t, r) in self.records.iter().enumerate() {
            w.serialize(CsvRow {
                t: t as u64,
                x: r.action,
                y: self.support.value(r.level).as_f64(),
            })?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the `t,x,y` CSV form, validating arms and reward levels.
    pub fn read_csv<R: Read>(
        reader: R,
        support: RewardSupport<T>,
        num_arms: usize,
    ) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["t", "x", "y"] {
            return Err(Error::InvalidArgument(format!(
                "dataset header must be `t,x,y`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut pairs = Vec::new();
        for row in rdr.deserialize::<CsvRow>() {
            let row = row?;
            let y = T::from_f64(row.y).ok_or(Error::UnknownReward(row.y))?;
            pairs.push((row.x, y));
        }
        Self::from_pairs(support, num_arms, pairs)
    }
}
