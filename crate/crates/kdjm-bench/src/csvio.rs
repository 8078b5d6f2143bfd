//! Fixed-schema CSV serialization of experiment records:
//! `instance,algorithm,config,k,seed,status,weight,rel_quality,t1_ns,t2_ns,t3_ns,t_median_ns`

use crate::runner::{ExperimentRecord, RunStatus};
use anyhow::{bail, Context, Result};
use std::path::Path;

pub const HEADER: [&str; 12] = [
    "instance",
    "algorithm",
    "config",
    "k",
    "seed",
    "status",
    "weight",
    "rel_quality",
    "t1_ns",
    "t2_ns",
    "t3_ns",
    "t_median_ns",
];

fn opt_to_field<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map(T::to_string).unwrap_or_default()
}

pub fn write_csv(path: impl AsRef<Path>, records: &[ExperimentRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path.as_ref())?;
    w.write_record(HEADER)?;
    for r in records {
        if r.times_ns.len() > 3 {
            bail!("the CSV schema holds at most 3 repetition times");
        }
        let times: Vec<String> = (0..3)
            .map(|i| r.times_ns.get(i).map(u64::to_string).unwrap_or_default())
            .collect();
        w.write_record([
            r.instance.as_str(),
            r.algorithm.as_str(),
            r.config.as_str(),
            &r.k.to_string(),
            &r.seed.to_string(),
            r.status.label(),
            &opt_to_field(&r.weight),
            &opt_to_field(&r.rel_quality),
            &times[0],
            &times[1],
            &times[2],
            &opt_to_field(&r.median_ns),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn parse_opt<T: std::str::FromStr>(field: &str, what: &str) -> Result<Option<T>> {
    if field.is_empty() {
        return Ok(None);
    }
    match field.parse() {
        Ok(v) => Ok(Some(v)),
        Err(_) => bail!("bad {what}: {field:?}"),
    }
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<ExperimentRecord>> {
    let mut reader = csv::Reader::from_path(path.as_ref())?;
    {
        let headers = reader.headers()?;
        let got: Vec<&str> = headers.iter().collect();
        if got != HEADER {
            bail!("unexpected CSV header {got:?}");
        }
    }
    let mut records = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let row = row?;
        let context = || format!("record {}", idx + 1);
        if row.len() != HEADER.len() {
            bail!("{}: expected {} fields, got {}", context(), HEADER.len(), row.len());
        }
        let times_ns: Vec<u64> = (8..11)
            .filter_map(|i| {
                let f = &row[i];
                (!f.is_empty()).then(|| f.parse::<u64>())
            })
            .collect::<std::result::Result<_, _>>()
            .with_context(context)?;
        records.push(ExperimentRecord {
            instance: row[0].to_string(),
            algorithm: row[1].to_string(),
            config: row[2].to_string(),
            k: row[3].parse().with_context(context)?,
            seed: row[4].parse().with_context(context)?,
            status: RunStatus::parse(&row[5])
                .with_context(|| format!("{}: bad status {:?}", context(), &row[5]))?,
            weight: parse_opt(&row[6], "weight").with_context(context)?,
            rel_quality: parse_opt(&row[7], "rel_quality").with_context(context)?,
            times_ns,
            median_ns: parse_opt(&row[11], "t_median_ns").with_context(context)?,
            rep_weights: Vec::new(),
            class_weights: Vec::new(),
        });
    }
    Ok(records)
}
