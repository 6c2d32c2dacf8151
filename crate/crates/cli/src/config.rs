//! Code instance configuration from flags, a JSON file and the environment.
//!
//! Precedence, lowest first: the table named by `SUBCODEC_MODULUS_TABLE`,
//! the `--config` file, then individual flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use subcodec_core::{CodeParams, HSchedule, ModulusTable};

use crate::formats::{modulus_table_from_json, parse_h_schedule, ModulusTableJson};

pub const MODULUS_TABLE_ENV: &str = "SUBCODEC_MODULUS_TABLE";

/// The config file and config echo format.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeConfig {
    pub q: u32,
    pub m: usize,
    pub ell: usize,
    pub k: usize,
    #[serde(default)]
    pub h_schedule: BTreeMap<String, usize>,
    #[serde(default)]
    pub modulus_table: ModulusTableJson,
    /// Modulus of the outer field `F_{q^m}`; folded into `modulus_table`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

/// Same fields as [`CodeConfig`], all optional, for partial files.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialConfig {
    q: Option<u32>,
    m: Option<usize>,
    ell: Option<usize>,
    k: Option<usize>,
    #[serde(default)]
    h_schedule: BTreeMap<String, usize>,
    #[serde(default)]
    modulus_table: ModulusTableJson,
    modulus: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub q: Option<u32>,
    pub m: Option<usize>,
    pub ell: Option<usize>,
    pub k: Option<usize>,
    pub h_schedule: Option<String>,
    pub config: Option<PathBuf>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {what} {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed {what} {}", path.display()))
}

/// The modulus table named by `SUBCODEC_MODULUS_TABLE`, empty when unset.
pub fn env_modulus_table() -> Result<ModulusTableJson> {
    match std::env::var_os(MODULUS_TABLE_ENV) {
        Some(path) if !path.is_empty() => read_json(Path::new(&path), "modulus table"),
        _ => Ok(ModulusTableJson::new()),
    }
}

fn merge_tables(base: &mut ModulusTableJson, over: ModulusTableJson) {
    for (q, row) in over {
        base.entry(q).or_default().extend(row);
    }
}

impl CodeConfig {
    /// Resolves flags over the config file over the environment table;
    /// `defaults` fills whatever is still missing.
    pub fn resolve(o: &Overrides, defaults: Option<(u32, usize, usize, usize)>) -> Result<Self> {
        let file: PartialConfig = match &o.config {
            Some(path) => read_json(path, "config")?,
            None => PartialConfig::default(),
        };
        let mut table = env_modulus_table()?;
        merge_tables(&mut table, file.modulus_table);
        let d = defaults.map(|(q, ell, m, k)| (Some(q), Some(ell), Some(m), Some(k))).unwrap_or_default();
        let q = o.q.or(file.q).or(d.0).context("missing --q")?;
        let ell = o.ell.or(file.ell).or(d.1).context("missing --ell")?;
        let m = o.m.or(file.m).or(d.2).context("missing --m")?;
        let k = o.k.or(file.k).or(d.3).context("missing --k")?;
        let mut h_schedule = file.h_schedule;
        if let Some(s) = &o.h_schedule {
            h_schedule.extend(parse_h_schedule(s)?);
        }
        if let Some(modulus) = &file.modulus {
            table.entry(q.to_string()).or_default().insert(m.to_string(), modulus.clone());
        }
        Ok(Self { q, m, ell, k, h_schedule, modulus_table: table, modulus: None })
    }

    pub fn schedule(&self) -> Result<HSchedule> {
        let mut s = HSchedule::zeros();
        for (ambient, &h) in &self.h_schedule {
            let ambient: usize = ambient.parse().with_context(|| format!("h_schedule key {ambient:?}"))?;
            s.set(ambient, h);
        }
        Ok(s)
    }

    pub fn table(&self) -> Result<ModulusTable> {
        modulus_table_from_json(&self.modulus_table)
    }

    pub fn params(&self) -> Result<CodeParams> {
        let mut p = CodeParams::new(self.q, self.ell, self.m, self.k).with_schedule(self.schedule()?);
        p.moduli = self.table()?;
        Ok(p)
    }
}
