//! Exhaustive search over all placements for a fixed size vector.
//!
//! A size vector `k_1..k_n` admits `Π (k_i - 3)` encodings, one per choice of
//! `w_i ∈ 0..=k_i-4` on each interior polygon. [`extremal_search`] evaluates
//! every one exactly and reports the extreme values as canonical orbits,
//! together with four structural verdicts:
//!
//! * `near_centered_max`: every maximizer has `|2 w_i - (k_i - 4)| <= 1`;
//! * `helicene_min`: the minimizers are exactly the helicene orbit;
//! * `even_centered_max` (all sizes even): the maximizers are exactly the
//!   orbit of `w_i = (k_i - 4) / 2`;
//! * `odd_alternating_max` (all sizes odd): the maximizers are exactly the
//!   orbit of `(k_2-5)/2, (k_3-3)/2, (k_4-5)/2, ...`.
//!
//! Chains with fewer than three polygons have a single encoding and every
//! verdict is [`Verdict::NotApplicable`].

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chain::{check_sizes, helicene, ChainError, ChainSpec, ValidatedChainSpec};
use crate::kirchhoff::{kirchhoff_index, KirchhoffError};
use crate::number::Rational;

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtremalError {
    #[error("family has {count} encodings, above the cap of {cap}")]
    FamilyTooLarge { count: String, cap: usize },
    #[error("claimed encoding is invalid for its family: {0}")]
    BadClaim(ChainError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Kirchhoff(#[from] KirchhoffError),
}

/// Number of encodings `Π (k_i - 3)` over interior polygons, if it fits in `usize`.
pub fn family_size(sizes: &[usize]) -> Option<usize> {
    interior(sizes).iter().try_fold(1usize, |acc, &k| acc.checked_mul(k.saturating_sub(3)))
}

fn interior(sizes: &[usize]) -> &[usize] {
    if sizes.len() < 3 {
        &[]
    } else {
        &sizes[1..sizes.len() - 1]
    }
}

/// All encodings of `sizes` in lexicographic order of `w`.
pub fn enumerate(sizes: &[usize], cap: usize) -> Result<Encodings, ExtremalError> {
    check_sizes(sizes)?;
    let count = family_size(sizes);
    match count {
        Some(c) if c <= cap => {}
        _ => {
            let shown = count.map_or_else(|| String::from("more than usize::MAX"), |c| alloc::format!("{c}"));
            return Err(ExtremalError::FamilyTooLarge { count: shown, cap });
        }
    }
    let limits: Vec<usize> = interior(sizes).iter().map(|&k| k - 4).collect();
    Ok(Encodings { sizes: sizes.to_vec(), next: Some(vec![0; limits.len()]), limits })
}

/// Odometer over placement vectors; see [`enumerate`].
#[derive(Debug, Clone)]
pub struct Encodings {
    sizes: Vec<usize>,
    limits: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for Encodings {
    type Item = ValidatedChainSpec;

    fn next(&mut self) -> Option<ValidatedChainSpec> {
        let w = self.next.take()?;
        let mut succ = w.clone();
        let mut pos = succ.len();
        self.next = loop {
            if pos == 0 {
                break None;
            }
            pos -= 1;
            if succ[pos] < self.limits[pos] {
                succ[pos] += 1;
                break Some(succ);
            }
            succ[pos] = 0;
        };
        Some(ChainSpec::new(self.sizes.clone(), w).validate().expect("odometer stays in range"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        }
    }

    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A verdict with the encoding that decided a failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub verdict: Verdict,
    pub witness: Option<ValidatedChainSpec>,
}

impl Flag {
    fn pass() -> Flag {
        Flag { verdict: Verdict::Pass, witness: None }
    }

    fn not_applicable() -> Flag {
        Flag { verdict: Verdict::NotApplicable, witness: None }
    }

    fn fail(witness: ValidatedChainSpec) -> Flag {
        Flag { verdict: Verdict::Fail, witness: Some(witness) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalReport {
    pub sizes: Vec<usize>,
    /// Every encoding with its exact Kirchhoff index, in enumeration order.
    pub values: Vec<(ValidatedChainSpec, Rational)>,
    pub min: Rational,
    pub max: Rational,
    /// All encodings attaining the minimum, sorted.
    pub argmin: Vec<ValidatedChainSpec>,
    pub argmax: Vec<ValidatedChainSpec>,
    pub near_centered_max: Flag,
    pub helicene_min: Flag,
    pub even_centered_max: Flag,
    pub odd_alternating_max: Flag,
}

impl ExtremalReport {
    pub fn count(&self) -> usize {
        self.values.len()
    }

    /// Canonical representatives of the minimizing orbits.
    pub fn argmin_orbits(&self) -> Vec<ValidatedChainSpec> {
        canonical_set(&self.argmin)
    }

    pub fn argmax_orbits(&self) -> Vec<ValidatedChainSpec> {
        canonical_set(&self.argmax)
    }

    /// Verdicts by name, in a fixed order.
    pub fn flags(&self) -> [(&'static str, &Flag); 4] {
        [
            ("near_centered_max", &self.near_centered_max),
            ("helicene_min", &self.helicene_min),
            ("even_centered_max", &self.even_centered_max),
            ("odd_alternating_max", &self.odd_alternating_max),
        ]
    }

    pub fn passed(&self) -> bool {
        self.flags().iter().all(|(_, f)| !f.verdict.is_fail())
    }
}

fn canonical_set(specs: &[ValidatedChainSpec]) -> Vec<ValidatedChainSpec> {
    let set: BTreeSet<ValidatedChainSpec> = specs.iter().map(ValidatedChainSpec::canonicalize).collect();
    set.into_iter().collect()
}

/// Evaluates every encoding of `sizes` sequentially.
pub fn extremal_search(sizes: &[usize], cap: usize) -> Result<ExtremalReport, ExtremalError> {
    let values = enumerate(sizes, cap)?
        .map(|spec| {
            let kf = kirchhoff_index(&spec.build_graph().to_network())?;
            Ok((spec, kf))
        })
        .collect::<Result<Vec<_>, ExtremalError>>()?;
    summarize(sizes, values)
}

/// Builds the report from precomputed values, which must cover the whole
/// family. Order of `values` does not matter.
pub fn summarize(
    sizes: &[usize],
    mut values: Vec<(ValidatedChainSpec, Rational)>,
) -> Result<ExtremalReport, ExtremalError> {
    check_sizes(sizes)?;
    values.sort_by(|a, b| a.0.cmp(&b.0));
    let min = values.iter().map(|(_, v)| v).min().cloned().ok_or(ChainError::Empty)?;
    let max = values.iter().map(|(_, v)| v).max().cloned().ok_or(ChainError::Empty)?;
    let at = |target: &Rational| -> Vec<ValidatedChainSpec> {
        values.iter().filter(|(_, v)| v == target).map(|(s, _)| s.clone()).collect()
    };
    let (argmin, argmax) = (at(&min), at(&max));

    let applicable = sizes.len() >= 3;
    let near_centered_max = if applicable {
        match argmax.iter().find(|s| !is_near_centered(s)) {
            Some(bad) => Flag::fail(bad.clone()),
            None => Flag::pass(),
        }
    } else {
        Flag::not_applicable()
    };
    let helicene_min = if applicable {
        compare_sets(&argmin, &helicene(sizes)?.orbit().members)
    } else {
        Flag::not_applicable()
    };
    let even = sizes.iter().all(|k| k % 2 == 0);
    let odd = sizes.iter().all(|k| k % 2 == 1);
    let even_centered_max = if applicable && even {
        compare_sets(&argmax, &centered(sizes)?.orbit().members)
    } else {
        Flag::not_applicable()
    };
    let odd_alternating_max = if applicable && odd {
        compare_sets(&argmax, &alternating(sizes)?.orbit().members)
    } else {
        Flag::not_applicable()
    };

    Ok(ExtremalReport {
        sizes: sizes.to_vec(),
        values,
        min,
        max,
        argmin,
        argmax,
        near_centered_max,
        helicene_min,
        even_centered_max,
        odd_alternating_max,
    })
}

/// Passes when `found` equals `expected` as sets; otherwise the witness is
/// the first encoding in one but not the other.
fn compare_sets(found: &[ValidatedChainSpec], expected: &[ValidatedChainSpec]) -> Flag {
    let extra = found.iter().find(|s| !expected.contains(s));
    let absent = expected.iter().find(|s| !found.contains(s));
    match extra.or(absent) {
        Some(w) => Flag::fail(w.clone()),
        None => Flag::pass(),
    }
}

/// `|2 w_i - (k_i - 4)| <= 1` on every interior polygon.
pub fn is_near_centered(spec: &ValidatedChainSpec) -> bool {
    spec.w.iter().zip(interior(&spec.sizes)).all(|(&w, &k)| (2 * w).abs_diff(k - 4) <= 1)
}

/// `w_i = (k_i - 4) / 2`, rounded down.
pub fn centered(sizes: &[usize]) -> Result<ValidatedChainSpec, ChainError> {
    let w = interior(sizes).iter().map(|&k| (k - 4) / 2).collect();
    ChainSpec::new(sizes.to_vec(), w).validate()
}

/// `w_i = (k_i - 5) / 2` for even `i` and `(k_i - 3) / 2` for odd `i`; for odd sizes.
pub fn alternating(sizes: &[usize]) -> Result<ValidatedChainSpec, ChainError> {
    check_sizes(sizes)?;
    let w = interior(sizes)
        .iter()
        .enumerate()
        .map(|(j, &k)| if j % 2 == 0 { (k - 5) / 2 } else { (k - 3) / 2 })
        .collect();
    ChainSpec::new(sizes.to_vec(), w).validate()
}

/// Asserted extreme encodings for a family, compared orbit-wise.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Claims {
    pub argmin: Option<Vec<Vec<usize>>>,
    pub argmax: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCertificate {
    pub report: ExtremalReport,
    /// `argmin_claim` / `argmax_claim` outcomes, present when claimed.
    pub claims: Vec<(&'static str, Flag)>,
}

impl FamilyCertificate {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.claims.iter().all(|(_, f)| !f.verdict.is_fail())
    }

    /// First failing verdict and its witness.
    pub fn failure(&self) -> Option<(&'static str, &Flag)> {
        self.report
            .flags()
            .into_iter()
            .chain(self.claims.iter().map(|(n, f)| (*n, f)))
            .find(|(_, f)| f.verdict.is_fail())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    pub families: Vec<FamilyCertificate>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyCertificate::passed)
    }
}

/// Checks claimed encodings against a finished report.
pub fn check_claims(report: &ExtremalReport, claims: &Claims) -> Result<Vec<(&'static str, Flag)>, ExtremalError> {
    let expand = |ws: &[Vec<usize>]| -> Result<Vec<ValidatedChainSpec>, ExtremalError> {
        let mut members = BTreeSet::new();
        for w in ws {
            let spec = ChainSpec::new(report.sizes.clone(), w.clone()).validate().map_err(ExtremalError::BadClaim)?;
            members.extend(spec.orbit().members);
        }
        Ok(members.into_iter().collect())
    };
    let mut out = Vec::new();
    if let Some(ws) = &claims.argmin {
        out.push(("argmin_claim", compare_sets(&report.argmin, &expand(ws)?)));
    }
    if let Some(ws) = &claims.argmax {
        out.push(("argmax_claim", compare_sets(&report.argmax, &expand(ws)?)));
    }
    Ok(out)
}

/// Sequential batch certification; the first error aborts the run.
pub fn certify_family(families: &[(Vec<usize>, Claims)], cap: usize) -> Result<Certificate, ExtremalError> {
    let mut cert = Certificate::default();
    for (sizes, claims) in families {
        let report = extremal_search(sizes, cap)?;
        let claims = check_claims(&report, claims)?;
        cert.families.push(FamilyCertificate { report, claims });
    }
    Ok(cert)
}

/// Every size vector with `n` polygons drawn from `range`, lexicographically.
pub fn size_vectors(n: usize, range: core::ops::RangeInclusive<usize>) -> Vec<Vec<usize>> {
    let choices: Vec<usize> = range.collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |&k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}
