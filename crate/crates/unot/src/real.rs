//! Real-amplitude table: exact NOT against optimal estimation.

use std::io::Write;
use std::ops::RangeInclusive;

use anyhow::{bail, Result};
use serde::Serialize;
use unot_core::restricted::{gap_report, GapReport};

use crate::format::decimal;
use crate::sweep::OutputFormat;

pub fn real_rows(n_range: RangeInclusive<usize>) -> Result<Vec<GapReport>> {
    if n_range.is_empty() || *n_range.start() == 0 {
        bail!("N range must be nonempty and start at 1");
    }
    Ok(n_range.map(gap_report).collect::<unot_core::Result<_>>()?)
}

#[derive(Serialize)]
struct JsonGap {
    #[serde(rename = "N")]
    n: usize,
    quantum: String,
    classical: String,
    gap: String,
}

pub fn write_real<W: Write>(rows: &[GapReport], format: OutputFormat, mut out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
            w.write_record(["N", "quantum", "classical", "gap"])?;
            for r in rows {
                w.write_record([r.n.to_string(), decimal(r.quantum), decimal(r.classical), decimal(r.gap)])?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let json: Vec<JsonGap> = rows
                .iter()
                .map(|r| JsonGap {
                    n: r.n,
                    quantum: decimal(r.quantum),
                    classical: decimal(r.classical),
                    gap: decimal(r.gap),
                })
                .collect();
            serde_json::to_writer_pretty(&mut out, &json)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}
