//! Signal files and CSV dumps.
//!
//! Signals are stored either as JSON `{"re": [...], "im": [...]}` or as
//! two-column CSV (`re,im`, optional header). The Zak and bracket dumps
//! are plain CSV tables for plotting.

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use zakframes_core::{BracketFunction, ZakArray};
use zakframes_group::{Group, Signal};

use crate::error::{CliError, Result};

#[derive(Debug, Serialize, Deserialize)]
pub struct SignalFile {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl SignalFile {
    pub fn from_signal(s: &Signal) -> SignalFile {
        SignalFile {
            re: s.values().iter().map(|v| v.re).collect(),
            im: s.values().iter().map(|v| v.im).collect(),
        }
    }

    pub fn into_signal(self, group: &Arc<Group>, path: &Path) -> Result<Signal> {
        if self.re.len() != self.im.len() {
            return Err(CliError::BadSignal {
                path: path.display().to_string(),
                reason: format!(
                    "re has {} entries but im has {}",
                    self.re.len(),
                    self.im.len()
                ),
            });
        }
        let values: Vec<Complex64> = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        Signal::new(Arc::clone(group), values).map_err(CliError::from)
    }
}

fn read_csv_signal(text: &str, group: &Arc<Group>, path: &Path) -> Result<Signal> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',').map(str::trim);
        let re = cols.next().unwrap_or("");
        let im = cols.next().unwrap_or("0");
        match (re.parse::<f64>(), im.parse::<f64>()) {
            (Ok(re), Ok(im)) => values.push(Complex64::new(re, im)),
            _ if lineno == 0 => continue, // header row
            _ => {
                return Err(CliError::BadSignal {
                    path: path.display().to_string(),
                    reason: format!("unparsable line {}", lineno + 1),
                })
            }
        }
    }
    Signal::new(Arc::clone(group), values).map_err(CliError::from)
}

/// Loads a signal from JSON or CSV, decided by the file extension.
pub fn load_signal(path: &Path, group: &Arc<Group>) -> Result<Signal> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    if path.extension().map(|e| e == "csv").unwrap_or(false) {
        read_csv_signal(&text, group, path)
    } else {
        let file: SignalFile = serde_json::from_str(&text)?;
        file.into_signal(group, path)
    }
}

pub fn save_signal(path: &Path, signal: &Signal) -> Result<()> {
    let text = crate::jsonfmt::to_json_string(&SignalFile::from_signal(signal))?;
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Zak array as CSV rows `alpha_index,coset_index,re,im`.
pub fn zak_csv(z: &ZakArray) -> String {
    let mut out = String::from("alpha_index,coset_index,re,im\n");
    for alpha in 0..z.n_fibers() {
        for c in 0..z.n_cosets() {
            let v = z.at(alpha, c);
            out.push_str(&format!("{alpha},{c},{:.17e},{:.17e}\n", v.re, v.im));
        }
    }
    out
}

/// Bracket function as CSV rows `alpha_index,re,im`.
pub fn bracket_csv(b: &BracketFunction) -> String {
    let mut out = String::from("alpha_index,re,im\n");
    for (alpha, v) in b.values().iter().enumerate() {
        out.push_str(&format!("{alpha},{:.17e},{:.17e}\n", v.re, v.im));
    }
    out
}
