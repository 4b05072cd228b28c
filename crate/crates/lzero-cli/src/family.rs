//! Family selection: explicit character rows, canonical indices, the
//! Ramanujan form, or a JSON descriptor file.

use lzero::characters::{
    character_by_index, conductor, enumerate_characters, is_primitive, DirichletCharacter,
};
use lzero::generic::descriptor_from_json;
use lzero::kernel::PrecisionContext;
use lzero::modular::ModularLDescriptor;
use lzero::solver::{lambert_guess_modular, Family};
use rug::Rational;
use serde_json::{json, Value};
use std::fs;
use std::path::PathBuf;

#[derive(clap::Args)]
pub struct FamilyArgs {
    /// Dirichlet modulus; alone it selects the trivial character (k = 1)
    #[arg(long, conflicts_with_all = ["ramanujan", "descriptor"])]
    pub modulus: Option<u64>,

    /// Character as comma-separated rotation numbers, one per residue
    /// 1..=k, e.g. "0,1/3,1/6,2/3,5/6,1/2,-"; "-", "x", "null" or an
    /// empty entry marks a residue where the character vanishes
    #[arg(long, requires = "modulus", conflicts_with_all = ["char_file", "char_index"])]
    pub char_row: Option<String>,

    /// File whose first non-empty line is a row as for --char-row
    #[arg(long, requires = "modulus", conflicts_with = "char_index")]
    pub char_file: Option<PathBuf>,

    /// 1-based index into the canonical character enumeration of the
    /// modulus (see the characters subcommand)
    #[arg(long, requires = "modulus")]
    pub char_index: Option<usize>,

    /// The Ramanujan form: weight 12, level 1
    #[arg(long, conflicts_with = "descriptor")]
    pub ramanujan: bool,

    /// JSON descriptor file for a generic L-function
    #[arg(long)]
    pub descriptor: Option<PathBuf>,
}

pub struct ResolvedFamily {
    pub family: Family,
    /// Family object embedded in every output record.
    pub json: Value,
}

/// Height the run is expected to reach, for sizing the modular
/// coefficient list. Falls back to a safe floor for tiny labels.
pub fn modular_height_hint(n_hi: i64) -> f64 {
    if n_hi <= 3 {
        return 30.0;
    }
    let Ok(ctx) = PrecisionContext::new(20) else {
        return 30.0;
    };
    match lambert_guess_modular(n_hi, 12, &ctx) {
        Ok(g) => g.to_f64().abs() + 10.0,
        Err(_) => 30.0,
    }
}

/// Coefficient list sized for the working precision plus the cancellation
/// margin the exponential sum needs at height y_hint.
fn ramanujan_family(digits: u32, y_hint: f64) -> ResolvedFamily {
    let wd = f64::from(digits) + 45.0;
    let terms = (wd * std::f64::consts::LN_10 / std::f64::consts::TAU).ceil() as usize
        + 24
        + (0.6825 * y_hint.abs()).ceil() as usize
        + 16;
    ResolvedFamily {
        family: Family::Modular(ModularLDescriptor::delta(terms.max(160))),
        json: json!({ "ramanujan": {} }),
    }
}

fn row_strings(chi: &DirichletCharacter) -> Vec<Value> {
    chi.rotations()
        .iter()
        .map(|r| match r {
            Some(q) => Value::String(q.to_string()),
            None => Value::Null,
        })
        .collect()
}

pub fn parse_char_row(k: u64, row: &str) -> Result<DirichletCharacter, String> {
    let parts: Vec<&str> = row.split(',').map(str::trim).collect();
    if parts.len() != k as usize {
        return Err(format!(
            "character row for modulus {k} needs {k} entries, got {}",
            parts.len()
        ));
    }
    let mut rotations = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        let entry = match part.to_ascii_lowercase().as_str() {
            "" | "-" | "x" | "null" => None,
            _ => {
                let q: Rational = part
                    .parse()
                    .map_err(|e| format!("row entry {} {part:?}: {e}", i + 1))?;
                Some(q)
            }
        };
        rotations.push(entry);
    }
    DirichletCharacter::from_rotations(k, rotations).map_err(|e| e.to_string())
}

pub fn resolve(args: &FamilyArgs, digits: u32, y_hint: f64) -> Result<ResolvedFamily, String> {
    if args.ramanujan {
        return Ok(ramanujan_family(digits, y_hint));
    }
    if let Some(path) = &args.descriptor {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let descriptor = descriptor_from_json(&text).map_err(|e| e.to_string())?;
        let raw: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        return Ok(ResolvedFamily {
            family: Family::Generic(descriptor),
            json: json!({ "generic": { "descriptor": raw } }),
        });
    }
    let Some(k) = args.modulus else {
        return Err("pick a family: --modulus, --ramanujan or --descriptor".into());
    };
    if k == 0 {
        return Err("modulus must be positive".into());
    }
    let chi = if let Some(row) = &args.char_row {
        parse_char_row(k, row)?
    } else if let Some(path) = &args.char_file {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or_else(|| format!("{}: no character row found", path.display()))?;
        parse_char_row(k, line)?
    } else if let Some(j) = args.char_index {
        character_by_index(k, j).map_err(|e| e.to_string())?
    } else if k == 1 {
        enumerate_characters(1).remove(0)
    } else {
        return Err("modulus > 1 needs --char-row, --char-file or --char-index".into());
    };
    if !is_primitive(&chi) {
        let (f, _) = conductor(&chi);
        eprintln!(
            "warning: character mod {k} is induced from conductor {f}; \
             zeros are those of the primitive character"
        );
    }
    let json = json!({ "dirichlet": { "k": chi.modulus(), "row": row_strings(&chi) } });
    Ok(ResolvedFamily {
        family: Family::Dirichlet(chi),
        json,
    })
}
