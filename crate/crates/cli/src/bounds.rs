use std::io::Write;

use anyhow::Result;

use eaq_turbo::channel::noise_limit;

pub fn write_bounds<W: Write>(out: &mut W, rates: &[f64], assisted: bool) -> Result<()> {
    writeln!(out, "rate,assisted,noise_limit")?;
    for &r in rates {
        writeln!(out, "{r},{assisted},{:.6}", noise_limit(r, assisted)?)?;
    }
    Ok(())
}
