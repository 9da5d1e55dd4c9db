use std::io::Write;

use anyhow::Result;
use serde::Serialize;

use eaq_turbo::spectrum::{distance_spectrum_with, DistanceSpectrum, SpectrumOptions};
use eaq_turbo::state_diagram::{PropertyReport, StateDiagram};
use eaq_turbo::{ConvolutionalEncoder, ResourceSignature};

pub const DEFAULT_DEGREE: usize = 10;

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub signature: ResourceSignature,
    pub decimals: Vec<u64>,
    pub properties: PropertyReport,
    pub spectrum: Option<DistanceSpectrum>,
}

pub fn analyze(enc: &ConvolutionalEncoder, degree: Option<usize>, opts: SpectrumOptions) -> Result<Analysis> {
    let d = StateDiagram::build(enc)?;
    let properties = d.properties();
    let spectrum = match degree {
        Some(w) => Some(distance_spectrum_with(&d, w, opts)?),
        None => None,
    };
    Ok(Analysis {
        signature: *enc.signature(),
        decimals: enc.decimals().to_vec(),
        properties,
        spectrum,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn write_report<W: Write>(out: &mut W, a: &Analysis) -> Result<()> {
    let p = &a.properties;
    writeln!(out, "signature: {}", a.signature)?;
    writeln!(out, "non-catastrophic: {}", yes(p.non_catastrophic))?;
    writeln!(out, "quasi-recursive: {}", yes(p.quasi_recursive))?;
    writeln!(out, "recursive: {}", yes(p.recursive))?;
    let zs: Vec<String> = p.zero_cycle_vertices.iter().map(|v| v.to_string()).collect();
    writeln!(out, "zero-cycle memory states: {{{}}}", zs.join(","))?;
    if let Some(s) = &a.spectrum {
        match s.free_distance {
            Some(d) => writeln!(out, "free distance: {d}")?,
            None => writeln!(out, "free distance: > {}", s.max_degree())?,
        }
        writeln!(out, "w,count")?;
        for (w, c) in s.counts.iter().enumerate() {
            writeln!(out, "{w},{c}")?;
        }
    }
    writeln!(out, "# record {}", serde_json::to_string(a)?)?;
    Ok(())
}
