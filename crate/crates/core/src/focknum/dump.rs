use std::io::{self, Write};

/// Writes `x,p,value` rows with a header line.
pub fn write_csv<W: Write>(mut out: W, rows: &[(f64, f64, f64)]) -> io::Result<()> {
    writeln!(out, "x,p,value")?;
    for (x, p, v) in rows {
        writeln!(out, "{x},{p},{v}")?;
    }
    Ok(())
}
