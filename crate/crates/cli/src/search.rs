//! Random search over seed transformations of a fixed signature.

use std::str::FromStr;

use anyhow::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use eaq_turbo::state_diagram::{PropertyReport, StateDiagram};
use eaq_turbo::symplectic::sample_symplectic;
use eaq_turbo::{ConvolutionalEncoder, ResourceSignature};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    Recursive,
    NonRecursive,
    QuasiRecursive,
    NonCatastrophic,
    Catastrophic,
}

impl Filter {
    pub fn accepts(&self, r: &PropertyReport) -> bool {
        match self {
            Filter::Recursive => r.recursive,
            Filter::NonRecursive => !r.recursive,
            Filter::QuasiRecursive => r.quasi_recursive,
            Filter::NonCatastrophic => r.non_catastrophic,
            Filter::Catastrophic => !r.non_catastrophic,
        }
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "recursive" => Filter::Recursive,
            "non-recursive" => Filter::NonRecursive,
            "quasi-recursive" => Filter::QuasiRecursive,
            "non-catastrophic" => Filter::NonCatastrophic,
            "catastrophic" => Filter::Catastrophic,
            _ => return Err(format!("unknown filter {s:?}")),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub sample: u64,
    pub encoder: ConvolutionalEncoder,
    pub report: PropertyReport,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub samples: u64,
    pub candidates: Vec<Candidate>,
}

/// Draws `count` uniformly random encoders; sample `i` uses stream `i` of `seed`.
pub fn search(sig: ResourceSignature, count: u64, filters: &[Filter], seed: u64) -> Result<SearchOutcome> {
    sig.validate()?;
    let found: Vec<Option<Candidate>> = (0..count)
        .into_par_iter()
        .map(|i| -> Result<Option<Candidate>> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let enc = ConvolutionalEncoder::new(sig, sample_symplectic(sig.total(), &mut rng))?;
            let report = StateDiagram::build(&enc)?.properties();
            Ok(filters.iter().all(|f| f.accepts(&report)).then_some(Candidate {
                sample: i,
                encoder: enc,
                report,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(SearchOutcome {
        samples: count,
        candidates: found.into_iter().flatten().collect(),
    })
}
