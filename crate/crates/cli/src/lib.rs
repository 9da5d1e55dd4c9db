//! Library side of the `eaqturbo` command-line tool.

pub mod analyze;
pub mod bounds;
pub mod search;
pub mod simulate;

use anyhow::{Context, Result};
use eaq_turbo::data;
use eaq_turbo::ConvolutionalEncoder;

pub const VERSION: &str = env!("EAQTURBO_VERSION");

/// Loads `@name` from the bundled set, anything else from disk.
pub fn load_encoder(arg: &str) -> Result<ConvolutionalEncoder> {
    if let Some(name) = arg.strip_prefix('@') {
        let known = data::names();
        if !known.contains(&name.to_ascii_lowercase().as_str()) {
            let why = if data::UNAVAILABLE.contains(&name) {
                "its matrix was never published"
            } else {
                "no such bundled encoder"
            };
            anyhow::bail!("@{name}: {why}; bundled encoders are {}", known.join(", "));
        }
        return data::bundled(name).map_err(Into::into);
    }
    // unreadable files are usage errors; only their contents can be invalid
    let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
    text.parse::<ConvolutionalEncoder>()
        .with_context(|| format!("loading encoder {arg}"))
}
