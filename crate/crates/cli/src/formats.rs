//! JSON and CSV shapes for everything the CLI reads or writes.
//!
//! Subspace rows are digit strings in coordinate order: character `i` is
//! coordinate `i`, written in base 36 (`0-9a-z`), so any `q <= 36` fits.

use std::collections::BTreeMap;

use anyhow::{bail, ensure, Context, Result};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use subcodec_core::bounds::BoundReport;
use subcodec_core::{Branch, BranchWord, FieldSpec, GaloisField, LinearizedPoly, ModulusTable, RecursiveCode, Subspace};

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Largest characteristic whose coordinates fit one row digit.
pub const MAX_ROW_Q: u32 = 36;

pub fn row_to_string(row: &[u32]) -> String {
    row.iter().map(|&c| DIGITS[c as usize] as char).collect()
}

pub fn parse_row(s: &str, q: u32) -> Result<Vec<u32>> {
    s.chars()
        .map(|ch| {
            let c = ch.to_digit(36).with_context(|| format!("bad digit {ch:?} in row {s:?}"))?;
            ensure!(c < q, "digit {ch:?} in row {s:?} is not below q = {q}");
            Ok(c)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub n: usize,
    pub rows: Vec<String>,
}

impl SubspaceJson {
    pub fn from_subspace(s: &Subspace) -> Self {
        Self { n: s.ambient_dim(), rows: s.rows().iter().map(|r| row_to_string(r)).collect() }
    }

    /// Row-reduces the rows; they need not be independent or canonical.
    pub fn to_subspace(&self, q: u32) -> Result<Subspace> {
        let rows = self.rows.iter().map(|r| parse_row(r, q)).collect::<Result<Vec<_>>>()?;
        for r in &rows {
            ensure!(r.len() == self.n, "row of length {} in a space of dimension {}", r.len(), self.n);
        }
        Ok(Subspace::from_generators(q, self.n, &rows)?)
    }
}

/// Either a bare subspace or any object carrying one under `"subspace"`,
/// such as the output of `encode`.
pub fn parse_subspace_document(text: &str) -> Result<SubspaceJson> {
    let value: serde_json::Value = serde_json::from_str(text).context("input is not JSON")?;
    let inner = match value.get("subspace") {
        Some(s) => s.clone(),
        None => value,
    };
    serde_json::from_value(inner).context("expected {\"n\": .., \"rows\": [..]}")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpecJson {
    pub q: u32,
    pub m: usize,
    pub modulus: Vec<u32>,
}

impl From<&FieldSpec> for FieldSpecJson {
    fn from(s: &FieldSpec) -> Self {
        Self { q: s.q(), m: s.m(), modulus: s.modulus().to_vec() }
    }
}

impl FieldSpecJson {
    pub fn to_spec(&self) -> Result<FieldSpec> {
        Ok(FieldSpec::new(self.q, self.m, self.modulus.clone())?)
    }
}

/// Coefficients as coordinate vectors, lowest q-degree first.
pub fn poly_to_json(field: &GaloisField, p: &LinearizedPoly) -> Vec<Vec<u32>> {
    p.coeffs().iter().map(|&c| field.expand(c)).collect()
}

pub fn poly_from_json(field: &GaloisField, coeffs: &[Vec<u32>]) -> Result<LinearizedPoly> {
    let coeffs = coeffs.iter().map(|c| field.contract(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(LinearizedPoly::new(coeffs))
}

/// `{"q": {"m": [coefficients]}}`, keys as decimal strings.
pub type ModulusTableJson = BTreeMap<String, BTreeMap<String, Vec<u32>>>;

pub fn modulus_table_from_json(json: &ModulusTableJson) -> Result<ModulusTable> {
    let mut table = ModulusTable::new();
    for (q, row) in json {
        let q: u32 = q.parse().with_context(|| format!("modulus table key {q:?} is not a characteristic"))?;
        for (m, modulus) in row {
            let m: usize = m.parse().with_context(|| format!("modulus table key {m:?} is not a degree"))?;
            ensure!(
                modulus.len() == m + 1,
                "modulus for q={q} m={m} has {} coefficients, expected {}",
                modulus.len(),
                m + 1
            );
            table.insert(q, modulus.clone());
        }
    }
    Ok(table)
}

pub fn modulus_table_to_json(table: &ModulusTable) -> ModulusTableJson {
    let mut json = ModulusTableJson::new();
    for (q, m, p) in table.entries() {
        json.entry(q.to_string()).or_default().insert(m.to_string(), p.to_vec());
    }
    json
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BranchJson {
    K { level: usize, message: Vec<Vec<u32>> },
    B { level: usize, sigma: u128, pilots: [usize; 2] },
}

pub fn branch_to_json(code: &RecursiveCode, word: &BranchWord) -> BranchJson {
    match &word.branch {
        Branch::Base { message } => {
            let field = code.level_code(word.level).expect("word from this code").field();
            BranchJson::K { level: word.level, message: poly_to_json(field, message) }
        }
        Branch::Appended { sigma, pilots } => {
            BranchJson::B { level: word.level, sigma: *sigma, pilots: [pilots.start, pilots.end] }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WangJson {
    pub numer: String,
    pub denom: String,
    pub floor: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatesJson {
    pub log_q_size: f64,
    pub log_q_base_size: f64,
    pub log_q_singleton: f64,
    pub log_q_wang: f64,
    pub log_q_johnson: f64,
    /// `log_q(N) / (l + m)`.
    pub rate_per_symbol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReportJson {
    pub q: u32,
    pub ell: usize,
    pub m: usize,
    pub k: usize,
    pub size: String,
    pub base_size: String,
    pub gain: String,
    pub singleton: String,
    pub wang: WangJson,
    pub johnson: String,
    pub within_bounds: bool,
    pub rates: RatesJson,
}

fn log_q(x: &BigUint, q: u32) -> f64 {
    // shift large values into f64 range before taking the logarithm
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let head = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    (head.ln() + shift as f64 * std::f64::consts::LN_2) / f64::from(q).ln()
}

impl From<&BoundReport> for BoundReportJson {
    fn from(r: &BoundReport) -> Self {
        let size = BigUint::from(r.size);
        let log_size = log_q(&size, r.q);
        Self {
            q: r.q,
            ell: r.ell,
            m: r.m,
            k: r.k,
            size: r.size.to_string(),
            base_size: r.base_size.to_string(),
            gain: r.gain().to_string(),
            singleton: r.singleton.to_string(),
            wang: WangJson {
                numer: r.wang.exact.numer().to_string(),
                denom: r.wang.exact.denom().to_string(),
                floor: r.wang.floor.to_string(),
            },
            johnson: r.johnson.to_string(),
            within_bounds: r.within_bounds(),
            rates: RatesJson {
                log_q_size: log_size,
                log_q_base_size: log_q(&BigUint::from(r.base_size), r.q),
                log_q_singleton: log_q(&r.singleton, r.q),
                log_q_wang: log_q(r.wang.exact.numer(), r.q) - log_q(r.wang.exact.denom(), r.q),
                log_q_johnson: log_q(&r.johnson, r.q),
                rate_per_symbol: log_size / (r.ell + r.m) as f64,
            },
        }
    }
}

/// One row of `bounds --format csv`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub q: u32,
    pub ell: usize,
    pub m: usize,
    pub k: usize,
    pub size: String,
    pub base_size: String,
    pub singleton: String,
    pub wang_numer: String,
    pub wang_denom: String,
    pub wang_floor: String,
    pub johnson: String,
    pub within_bounds: bool,
    pub log_q_size: f64,
    pub rate_per_symbol: f64,
    pub seed: u64,
}

impl BoundRow {
    pub fn new(r: &BoundReportJson, seed: u64) -> Self {
        Self {
            q: r.q,
            ell: r.ell,
            m: r.m,
            k: r.k,
            size: r.size.clone(),
            base_size: r.base_size.clone(),
            singleton: r.singleton.clone(),
            wang_numer: r.wang.numer.clone(),
            wang_denom: r.wang.denom.clone(),
            wang_floor: r.wang.floor.clone(),
            johnson: r.johnson.clone(),
            within_bounds: r.within_bounds,
            log_q_size: r.rates.log_q_size,
            rate_per_symbol: r.rates.rate_per_symbol,
            seed,
        }
    }
}

/// Parses `"7:1,12:0"` into `(ambient, h)` pairs.
pub fn parse_h_schedule(s: &str) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((ambient, h)) = part.split_once(':') else {
            bail!("h-schedule entry {part:?} is not ambient:h");
        };
        let ambient: usize = ambient.trim().parse().with_context(|| format!("bad ambient dimension in {part:?}"))?;
        let h: usize = h.trim().parse().with_context(|| format!("bad h in {part:?}"))?;
        out.insert(ambient.to_string(), h);
    }
    Ok(out)
}
