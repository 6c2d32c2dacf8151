//! The recursive code `C[l+m, l, k] = K[l+m, l, k] ∪ B`.
//!
//! Each level of the recursion is a code in `F_q^{l+m}` over its own field
//! `F_{q^m}`. With `h` the level's design parameter, the level is a boundary
//! (`C = K`) when `m < 2(l - h)` or `l - h < k`. Otherwise the subcode
//! `C[m, l-h, k]` lives in the tail `F_q^m`, and `B` holds `t` words
//! `V_σ = span(S_σ ∪ T_σ)`:
//!
//! - `T_σ` lifts the echelon basis of the σ-th subcode word by `l` zeros;
//! - `S_σ = {(α_j, 0^m) : (σ-1)h < j <= σh}` (empty when `h = 0`);
//! - `t = N(m, l, k)` for `h = 0` and `min(⌊l/h⌋, N(m, l-h, k))` otherwise.
//!
//! Codeword indices list `K` first (message digits, see
//! [`KkCode::message_from_index`]) and then `B` in σ order, recursing into the
//! subcode's own indexing.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::field::{GaloisField, ModulusTable};
use crate::kk::{kk_size, KkCode, KkOutcome};
use crate::linearized::LinearizedPoly;
use crate::prime::PrimeField;
use crate::subspace::Subspace;
use crate::{Error, Result};

pub const DEFAULT_ENUMERATION_LIMIT: u128 = 1_000_000;

/// Per-level `h`, keyed by the level's ambient dimension `l + m`. Missing
/// levels use `h = 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HSchedule {
    by_ambient: BTreeMap<usize, usize>,
}

impl HSchedule {
    pub fn zeros() -> Self {
        Self::default()
    }

    pub fn with(mut self, ambient: usize, h: usize) -> Self {
        self.set(ambient, h);
        self
    }

    pub fn set(&mut self, ambient: usize, h: usize) {
        self.by_ambient.insert(ambient, h);
    }

    pub fn get(&self, ambient: usize) -> usize {
        self.by_ambient.get(&ambient).copied().unwrap_or(0)
    }

    pub fn is_all_zero(&self) -> bool {
        self.by_ambient.values().all(|&h| h == 0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.by_ambient.iter().map(|(&a, &h)| (a, h))
    }
}

/// `m < 2(l - h)` or `l - h < k`.
pub fn is_boundary(ell: usize, m: usize, h: usize, k: usize) -> bool {
    match ell.checked_sub(h) {
        Some(rest) => m < 2 * rest || rest < k,
        None => true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    pub q: u32,
    pub ell: usize,
    pub m: usize,
    pub k: usize,
    pub h_schedule: HSchedule,
    pub moduli: ModulusTable,
}

impl CodeParams {
    /// Parameters with the all-zero schedule and default moduli.
    pub fn new(q: u32, ell: usize, m: usize, k: usize) -> Self {
        Self {
            q,
            ell,
            m,
            k,
            h_schedule: HSchedule::zeros(),
            moduli: ModulusTable::default(),
        }
    }

    pub fn with_schedule(mut self, schedule: HSchedule) -> Self {
        self.h_schedule = schedule;
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ell + self.m
    }

    /// The levels of the recursion, outermost first.
    pub fn levels(&self) -> Result<Vec<LevelShape>> {
        level_shapes(self.ell, self.m, self.k, &self.h_schedule)
    }
}

/// Dimensions and design parameter of one recursion level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelShape {
    pub ell: usize,
    pub m: usize,
    pub h: usize,
    pub boundary: bool,
}

impl LevelShape {
    pub fn ambient_dim(&self) -> usize {
        self.ell + self.m
    }
}

fn check_dims(ell: usize, m: usize, k: usize) -> Result<()> {
    if !(1 <= k && k <= ell && ell <= m) {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= l <= m, got k={k} l={ell} m={m}"
        )));
    }
    Ok(())
}

pub fn level_shapes(ell: usize, m: usize, k: usize, schedule: &HSchedule) -> Result<Vec<LevelShape>> {
    check_dims(ell, m, k)?;
    if let Some((ambient, h)) = schedule.entries().find(|&(_, h)| h >= k) {
        return Err(Error::InvalidParameters(format!(
            "h = {h} at ambient dimension {ambient} is not below k = {k}"
        )));
    }
    let mut shapes = Vec::new();
    let (mut ell, mut m) = (ell, m);
    loop {
        let h = schedule.get(ell + m);
        let boundary = is_boundary(ell, m, h, k);
        shapes.push(LevelShape { ell, m, h, boundary });
        if boundary {
            return Ok(shapes);
        }
        // subcode C[m, l-h, k]
        let sub_ell = ell - h;
        m -= sub_ell;
        ell = sub_ell;
    }
}

/// Number of appended words `t` given the subcode size.
fn appended_count(ell: usize, h: usize, sub_size: u128) -> u128 {
    match ell.checked_div(h) {
        None => sub_size,
        Some(per_pilot) => sub_size.min(per_pilot as u128),
    }
}

/// `N(l+m, l, k)` by the recursion `N = q^{mk} + t`, `N = q^{mk}` at a boundary.
pub fn cardinality(q: u32, ell: usize, m: usize, k: usize, schedule: &HSchedule) -> Result<u128> {
    PrimeField::new(q)?;
    let shapes = level_shapes(ell, m, k, schedule)?;
    let mut size = 0u128;
    for shape in shapes.iter().rev() {
        let base = kk_size(q, shape.m, k)?;
        let t = if shape.boundary { 0 } else { appended_count(shape.ell, shape.h, size) };
        size = base.checked_add(t).ok_or(Error::Overflow("code size"))?;
    }
    Ok(size)
}

/// `(q^{(l+m)k} - q^{(r+l)k}) / (q^{lk} - 1)` with `r = m mod l`, valid for
/// the all-zero schedule.
pub fn cardinality_closed_form(q: u32, ell: usize, m: usize, k: usize, schedule: &HSchedule) -> Result<u128> {
    PrimeField::new(q)?;
    check_dims(ell, m, k)?;
    if !schedule.is_all_zero() {
        return Err(Error::NonZeroSchedule);
    }
    let r = m % ell;
    let pow = |e: usize| -> Result<u128> {
        u32::try_from(e)
            .ok()
            .and_then(|e| u128::from(q).checked_pow(e))
            .ok_or(Error::Overflow("closed form"))
    };
    let num = pow((ell + m) * k)? - pow((r + ell) * k)?;
    let den = pow(ell * k)? - 1;
    Ok(num / den)
}

/// The smallest `h ∈ [0, k-1]` maximizing the number of appended words at
/// the outer level, with every subcode optimized the same way. Returns
/// `(h, N)` for the resulting code.
pub fn optimize_h(q: u32, ell: usize, m: usize, k: usize) -> Result<(usize, u128)> {
    let (schedule, size) = optimized_schedule(q, ell, m, k)?;
    Ok((schedule.get(ell + m), size))
}

/// The schedule chosen by [`optimize_h`] at every level, with the code size.
pub fn optimized_schedule(q: u32, ell: usize, m: usize, k: usize) -> Result<(HSchedule, u128)> {
    PrimeField::new(q)?;
    check_dims(ell, m, k)?;
    let base = kk_size(q, m, k)?;
    let mut best: Option<(usize, u128, HSchedule)> = None;
    for h in 0..k {
        let (t, sub_schedule) = if is_boundary(ell, m, h, k) {
            (0, HSchedule::zeros())
        } else {
            let sub_ell = ell - h;
            let (s, n) = optimized_schedule(q, sub_ell, m - sub_ell, k)?;
            (appended_count(ell, h, n), s)
        };
        if best.as_ref().is_none_or(|(_, bt, _)| t > *bt) {
            best = Some((h, t, sub_schedule));
        }
    }
    let (h, t, mut schedule) = best.expect("k >= 1");
    schedule.set(ell + m, h);
    let size = base.checked_add(t).ok_or(Error::Overflow("code size"))?;
    Ok((schedule, size))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Branch {
    /// A word of the lifted Gabidulin code at `level`.
    Base { message: LinearizedPoly },
    /// `V_σ` (1-based `sigma`) of a level with `h > 0`; `pilots` are the
    /// 0-based `α` indices spanning `S_σ`.
    Appended { sigma: u128, pilots: Range<usize> },
}

/// Where a codeword comes from. Levels with `h = 0` embed their subcode by
/// a zero prefix, so a word found at `level > 0` belongs to `B` at every
/// level above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchWord {
    pub level: usize,
    pub branch: Branch,
}

impl BranchWord {
    /// True for words of the outer `K`.
    pub fn is_base(&self) -> bool {
        self.level == 0 && matches!(self.branch, Branch::Base { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Decoded { index: u128, word: BranchWord, codeword: Subspace },
    /// The decoder's `?`.
    Failure,
}

impl DecodeOutcome {
    pub fn index(&self) -> Option<u128> {
        match self {
            DecodeOutcome::Decoded { index, .. } => Some(*index),
            DecodeOutcome::Failure => None,
        }
    }

    pub fn codeword(&self) -> Option<&Subspace> {
        match self {
            DecodeOutcome::Decoded { codeword, .. } => Some(codeword),
            DecodeOutcome::Failure => None,
        }
    }
}

#[derive(Debug, Clone)]
struct Level {
    shape: LevelShape,
    kk: KkCode,
    kk_size: u128,
    appended: u128,
    size: u128,
    /// `V_σ` for levels with `h > 0`.
    candidates: Vec<Subspace>,
}

/// A constructed code, immutable after [`RecursiveCode::new`].
#[derive(Debug, Clone)]
pub struct RecursiveCode {
    params: CodeParams,
    levels: Vec<Level>,
}

impl RecursiveCode {
    pub fn new(params: CodeParams) -> Result<Self> {
        let shapes = params.levels()?;
        let mut levels: Vec<Level> = Vec::with_capacity(shapes.len());
        for shape in &shapes {
            let field = GaloisField::new(params.moduli.spec(params.q, shape.m)?);
            let kk = KkCode::with_polynomial_basis(field, shape.ell, params.k)?;
            let kk_size = kk.cardinality()?;
            levels.push(Level {
                shape: *shape,
                kk,
                kk_size,
                appended: 0,
                size: kk_size,
                candidates: Vec::new(),
            });
        }
        let mut code = Self { params, levels };
        for d in (0..code.levels.len()).rev() {
            if code.levels[d].shape.boundary {
                continue;
            }
            let sub_size = code.levels[d + 1].size;
            let shape = code.levels[d].shape;
            let appended = appended_count(shape.ell, shape.h, sub_size);
            let size = code.levels[d]
                .kk_size
                .checked_add(appended)
                .ok_or(Error::Overflow("code size"))?;
            let candidates = if shape.h > 0 {
                (0..appended)
                    .map(|s| code.build_appended(d, s))
                    .collect::<Result<Vec<_>>>()?
            } else {
                Vec::new()
            };
            let level = &mut code.levels[d];
            level.appended = appended;
            level.size = size;
            level.candidates = candidates;
        }
        Ok(code)
    }

    /// `V_σ = span(S_σ ∪ T_σ)` for 0-based `sigma0` at a level with `h > 0`.
    fn build_appended(&self, d: usize, sigma0: u128) -> Result<Subspace> {
        let shape = self.levels[d].shape;
        let (_, sub_word) = self.encode_at(d + 1, sigma0)?;
        let n = shape.ambient_dim();
        let mut rows: Vec<Vec<u32>> = pilot_range(sigma0, shape.h)
            .map(|j| {
                let mut r = vec![0; n];
                r[j] = 1;
                r
            })
            .collect();
        rows.extend(sub_word.lift_zero_prefix(shape.ell).rows().iter().cloned());
        Subspace::from_generators(self.params.q, n, &rows)
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn ambient_dim(&self) -> usize {
        self.params.ambient_dim()
    }

    /// `N(l+m, l, k)`.
    pub fn size(&self) -> u128 {
        self.levels[0].size
    }

    /// `|K| = q^{mk}` of the outer level.
    pub fn base_size(&self) -> u128 {
        self.levels[0].kk_size
    }

    /// `t`, the number of appended words at the outer level.
    pub fn appended_size(&self) -> u128 {
        self.levels[0].appended
    }

    pub fn radius(&self) -> usize {
        self.params.ell - self.params.k + 1
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level_shapes(&self) -> Vec<LevelShape> {
        self.levels.iter().map(|l| l.shape).collect()
    }

    /// The outer level's lifted Gabidulin code.
    pub fn base_code(&self) -> &KkCode {
        &self.levels[0].kk
    }

    /// The lifted Gabidulin code of recursion level `level` (0 is the outer code).
    pub fn level_code(&self, level: usize) -> Option<&KkCode> {
        self.levels.get(level).map(|l| &l.kk)
    }

    /// The materialized `B` words of the outer level (empty when `h = 0`).
    pub fn candidates(&self) -> &[Subspace] {
        &self.levels[0].candidates
    }

    pub fn encode_index(&self, index: u128) -> Result<(BranchWord, Subspace)> {
        self.encode_at(0, index)
    }

    fn encode_at(&self, d: usize, index: u128) -> Result<(BranchWord, Subspace)> {
        let level = &self.levels[d];
        if index >= level.size {
            return Err(Error::IndexOutOfRange { index, size: level.size });
        }
        if index < level.kk_size {
            let message = level.kk.message_from_index(index)?;
            let word = level.kk.encode(&message)?;
            return Ok((BranchWord { level: d, branch: Branch::Base { message } }, word));
        }
        let sigma0 = index - level.kk_size;
        if level.shape.h == 0 {
            let (branch, sub) = self.encode_at(d + 1, sigma0)?;
            Ok((branch, sub.lift_zero_prefix(level.shape.ell)))
        } else {
            let branch = Branch::Appended {
                sigma: sigma0 + 1,
                pilots: pilot_range(sigma0, level.shape.h),
            };
            Ok((BranchWord { level: d, branch }, level.candidates[sigma0 as usize].clone()))
        }
    }

    /// Every codeword in index order; fails on a repeated subspace.
    pub fn enumerate(&self, limit: u128) -> Result<Vec<(BranchWord, Subspace)>> {
        let size = self.size();
        if size > limit {
            return Err(Error::EnumerationLimit { size, limit });
        }
        let words = (0..size)
            .map(|i| self.encode_index(i))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = BTreeSet::new();
        for (i, (_, w)) in words.iter().enumerate() {
            if !seen.insert(w) {
                return Err(Error::DuplicateCodeword(i as u128));
            }
        }
        Ok(words)
    }

    fn check_received(&self, received: &Subspace) -> Result<()> {
        if received.q() != self.params.q {
            return Err(Error::CharacteristicMismatch { left: received.q(), right: self.params.q });
        }
        if received.ambient_dim() != self.ambient_dim() {
            return Err(Error::AmbientMismatch {
                left: received.ambient_dim(),
                right: self.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Recursive decoder. Runs the base decoder; on failure at an `h = 0`
    /// level (with `m >= 2l`) decodes the projection onto the tail with the
    /// subcode's decoder and lifts the result, and at an `h > 0` level
    /// scans the stored `B` words. Never returns a codeword at distance
    /// `>= l - k + 1` from the input.
    pub fn decode(&self, received: &Subspace) -> Result<DecodeOutcome> {
        self.check_received(received)?;
        self.decode_at(0, received)
    }

    fn decode_at(&self, d: usize, received: &Subspace) -> Result<DecodeOutcome> {
        let level = &self.levels[d];
        if let KkOutcome::Decoded { message, codeword } = level.kk.decode(received)? {
            let index = level.kk.message_index(&message)?;
            let word = BranchWord { level: d, branch: Branch::Base { message } };
            return Ok(DecodeOutcome::Decoded { index, word, codeword });
        }
        if level.shape.boundary {
            return Ok(DecodeOutcome::Failure);
        }
        if level.shape.h > 0 {
            return self.scan_candidates(d, received);
        }
        let ell = level.shape.ell;
        let projected = received.project_onto_tail(ell)?;
        match self.decode_at(d + 1, &projected)? {
            DecodeOutcome::Decoded { index, word, codeword } => {
                let lifted = codeword.lift_zero_prefix(ell);
                if received.distance(&lifted)? < self.radius() {
                    Ok(DecodeOutcome::Decoded { index: level.kk_size + index, word, codeword: lifted })
                } else {
                    Ok(DecodeOutcome::Failure)
                }
            }
            DecodeOutcome::Failure => Ok(DecodeOutcome::Failure),
        }
    }

    /// Candidate check over the outer level's stored `B` words: returns the
    /// first within distance `l - k` of the input.
    pub fn decode_general(&self, received: &Subspace) -> Result<DecodeOutcome> {
        self.check_received(received)?;
        self.scan_candidates(0, received)
    }

    fn scan_candidates(&self, d: usize, received: &Subspace) -> Result<DecodeOutcome> {
        let level = &self.levels[d];
        for (s, cand) in level.candidates.iter().enumerate() {
            if received.distance(cand)? < self.radius() {
                let sigma0 = s as u128;
                let branch = Branch::Appended {
                    sigma: sigma0 + 1,
                    pilots: pilot_range(sigma0, level.shape.h),
                };
                return Ok(DecodeOutcome::Decoded {
                    index: level.kk_size + sigma0,
                    word: BranchWord { level: d, branch },
                    codeword: cand.clone(),
                });
            }
        }
        Ok(DecodeOutcome::Failure)
    }
}

fn pilot_range(sigma0: u128, h: usize) -> Range<usize> {
    let start = sigma0 as usize * h;
    start..start + h
}

/// Largest pairwise intersection dimension and smallest pairwise distance
/// of a set of subspaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceProfile {
    pub max_intersection: usize,
    pub min_distance: usize,
}

pub fn distance_profile(words: &[Subspace]) -> Result<Option<DistanceProfile>> {
    let mut profile: Option<DistanceProfile> = None;
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            let common = u.intersect(v)?.dim();
            let dist = u.dim() + v.dim() - 2 * common;
            let p = profile.get_or_insert(DistanceProfile { max_intersection: common, min_distance: dist });
            p.max_intersection = p.max_intersection.max(common);
            p.min_distance = p.min_distance.min(dist);
        }
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_is_checked() {
        let zeros = HSchedule::zeros();
        assert_eq!(cardinality(4, 2, 4, 1, &zeros), Err(Error::InvalidCharacteristic(4)));
        assert!(cardinality_closed_form(1, 2, 4, 1, &zeros).is_err());
        assert!(optimize_h(6, 2, 4, 1).is_err());
    }

    #[test]
    fn boundary_condition() {
        assert!(is_boundary(2, 2, 0, 1));
        assert!(!is_boundary(2, 4, 0, 1));
        assert!(is_boundary(4, 8, 3, 2));
        assert!(is_boundary(3, 3, 0, 1));
    }

    #[test]
    fn small_cardinalities() {
        let z = HSchedule::zeros();
        assert_eq!(cardinality(2, 2, 2, 1, &z), Ok(4));
        assert_eq!(cardinality(2, 2, 4, 1, &z), Ok(20));
        assert_eq!(cardinality(2, 4, 8, 2, &z), Ok(65792));
        assert_eq!(cardinality(2, 3, 3, 1, &z), Ok(8));
        assert_eq!(cardinality_closed_form(2, 2, 4, 1, &z), Ok(20));
        assert_eq!(cardinality_closed_form(2, 3, 3, 1, &z), Ok(8));
        assert_eq!(cardinality_closed_form(2, 4, 8, 2, &z), Ok(65792));
    }

    #[test]
    fn closed_form_rejects_nonzero_schedule() {
        let s = HSchedule::zeros().with(12, 1);
        assert_eq!(cardinality_closed_form(2, 4, 8, 2, &s), Err(Error::NonZeroSchedule));
    }

    #[test]
    fn schedule_validation() {
        let s = HSchedule::zeros().with(6, 1);
        assert!(matches!(level_shapes(2, 4, 1, &s), Err(Error::InvalidParameters(_))));
        assert!(matches!(level_shapes(3, 2, 1, &HSchedule::zeros()), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn h_one_appends_at_most_ell_words() {
        // C[7,3,2] with h = 1: subcode C[4,2,2] has 16 words, t = min(3, 16)
        let s = HSchedule::zeros().with(7, 1);
        assert_eq!(cardinality(2, 3, 4, 2, &s), Ok(256 + 3));
        let shapes = level_shapes(3, 4, 2, &s).unwrap();
        assert_eq!(shapes.len(), 2);
        assert_eq!((shapes[1].ell, shapes[1].m), (2, 2));
    }

    #[test]
    fn optimizer_trivial_cases() {
        assert_eq!(optimize_h(2, 2, 4, 1), Ok((0, 20)));
        assert_eq!(optimize_h(2, 3, 8, 2).unwrap().0, 0);
    }

    #[test]
    fn first_appended_word() {
        let code = RecursiveCode::new(CodeParams::new(2, 2, 4, 1)).unwrap();
        let (word, v) = code.encode_index(16).unwrap();
        assert_eq!(word.level, 1);
        assert!(!word.is_base());
        assert_eq!(v.rows(), [vec![0, 0, 1, 0, 0, 0], vec![0, 0, 0, 1, 0, 0]]);
        assert_eq!(
            code.encode_index(20).err(),
            Some(Error::IndexOutOfRange { index: 20, size: 20 })
        );
    }
}
