use std::fs;
use std::path::Path;
use std::str::FromStr;

use ainf::{AInfAlgebra, Chain};
use ring_r::{Monomial, Precision};
use rmodule::{catalogue, GradedModule};

use crate::commands::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// `NAME`, `NAME<k>` (shifted by k) or a path to module JSON.
pub fn module(spec: &str, p: Precision, lo: i64) -> Result<GradedModule, CliError> {
    if spec.ends_with(".json") {
        let j: rmodule::ModuleJson = serde_json::from_str(&read(Path::new(spec))?).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
        let m = GradedModule::from_json(&j).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
        if m.precision() != p {
            return Err(CliError::Input(format!("{spec}: precision {} but -p {}", m.precision().get(), p.get())));
        }
        return Ok(m);
    }
    let (name, shift) = match spec.split_once('<') {
        Some((name, rest)) => {
            let k = rest.strip_suffix('>').and_then(|k| k.trim().parse::<i64>().ok()).ok_or_else(|| CliError::Input(format!("bad shift in {spec:?}")))?;
            (name, k)
        }
        None => (spec, 0),
    };
    let entry = catalogue(name, p, lo - shift).map_err(|e| CliError::Input(e.to_string()))?;
    entry.module.shift(shift).map_err(|e| CliError::Input(format!("{spec}: {e}")))
}

/// A sum of basis labels such as `Q2`, `V^1*Q^0+Q` or `a`.
pub fn element(a: &AInfAlgebra, spec: &str) -> Result<Chain, CliError> {
    let basis = a.basis();
    let mut out = Chain::zero();
    for term in spec.split('+') {
        let term = term.trim();
        let id = basis
            .find(term)
            .or_else(|| Monomial::from_str(term).ok().and_then(|m| basis.find(&m.to_string())))
            .ok_or_else(|| CliError::Input(format!("{term:?} is not a basis label of {}", a.name)))?;
        out.toggle(id);
    }
    Ok(out)
}
