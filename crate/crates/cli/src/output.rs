use std::io::{self, Write};
use std::time::Instant;

use serde::Serialize;

pub fn json<T: Serialize + ?Sized>(value: &T) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Writes `rows` under a fixed header.
pub fn csv_rows<T: Serialize>(rows: &[T]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Replaces ASCII digits by subscript digits.
pub fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap_or(0)).unwrap_or(c))
        .collect()
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Wall-clock reporting on stderr, enabled by `--timings`.
pub struct Timer {
    start: Instant,
    enabled: bool,
}

impl Timer {
    pub fn new(enabled: bool) -> Self {
        Timer {
            start: Instant::now(),
            enabled,
        }
    }

    pub fn report(&self, what: &str) {
        if self.enabled {
            eprintln!("[time] {what}: {:.3} s", self.start.elapsed().as_secs_f64());
        }
    }
}
