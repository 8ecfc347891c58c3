//! Occupation-number states of the `f`-site bosonic chain.
//!
//! Sites are numbered `1..=f` in the public API (matching `a_1 … a_f`);
//! storage is zero-based.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `|n_1, …, n_f⟩`: number of quanta on each site.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OccupationVector(Vec<u32>);

impl OccupationVector {
    pub fn new(occ: Vec<u32>) -> Result<Self> {
        if occ.is_empty() {
            return Err(Error::ZeroSites);
        }
        Ok(OccupationVector(occ))
    }

    /// The empty state `|0,…,0⟩` on `sites` sites.
    pub fn vacuum(sites: usize) -> Result<Self> {
        Self::new(vec![0; sites])
    }

    pub fn sites(&self) -> usize {
        self.0.len()
    }

    /// Total number of quanta `n = n_1 + … + n_f`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn occupations(&self) -> &[u32] {
        &self.0
    }

    /// Occupation of the zero-based site `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub(crate) fn with_site(&self, i: usize, value: u32) -> Self {
        let mut occ = self.0.clone();
        occ[i] = value;
        OccupationVector(occ)
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ">")
    }
}

/// Which quanta sectors a basis spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuantaSelector {
    /// `V_n`
    Exactly(u32),
    /// `V_0 ⊕ … ⊕ V_n`
    AtMost(u32),
}

impl QuantaSelector {
    pub fn admits(&self, total: u32) -> bool {
        match *self {
            QuantaSelector::Exactly(n) => total == n,
            QuantaSelector::AtMost(n) => total <= n,
        }
    }

    /// Largest number of quanta in the selected space.
    pub fn max_quanta(&self) -> u32 {
        match *self {
            QuantaSelector::Exactly(n) | QuantaSelector::AtMost(n) => n,
        }
    }

    fn sectors(&self) -> std::ops::RangeInclusive<u32> {
        match *self {
            QuantaSelector::Exactly(n) => n..=n,
            QuantaSelector::AtMost(n) => 0..=n,
        }
    }
}

/// Ordered, indexed enumeration of the occupation vectors admitted by a selector.
///
/// Ordering: total quanta ascending, then occupations lexicographically
/// descending. For `f = 2`, `Exactly(2)` this gives `|2,0>, |1,1>, |0,2>`.
#[derive(Debug, Clone)]
pub struct FockBasis {
    sites: usize,
    selector: QuantaSelector,
    states: Vec<OccupationVector>,
    index: HashMap<OccupationVector, usize>,
}

impl PartialEq for FockBasis {
    // states and index are fully determined by (sites, selector)
    fn eq(&self, other: &Self) -> bool {
        self.sites == other.sites && self.selector == other.selector
    }
}

impl Eq for FockBasis {}

impl FockBasis {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn selector(&self) -> QuantaSelector {
        self.selector
    }

    pub fn states(&self) -> &[OccupationVector] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, position: usize) -> &OccupationVector {
        &self.states[position]
    }

    /// Position of `v`, or `None` if `v` is not admitted by the selector.
    ///
    /// A vector with the wrong number of sites is an error rather than `None`.
    pub fn state_index(&self, v: &OccupationVector) -> Result<Option<usize>> {
        if v.sites() != self.sites {
            return Err(Error::LengthMismatch {
                expected: self.sites,
                found: v.sites(),
            });
        }
        Ok(self.index.get(v).copied())
    }

    pub(crate) fn position(&self, v: &OccupationVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Positions of all states carrying exactly `n` quanta.
    pub fn sector_positions(&self, n: u32) -> Vec<usize> {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.total() == n)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Enumerate the occupation basis of `f` sites for `selector`.
pub fn enumerate_basis(f: usize, selector: QuantaSelector) -> Result<FockBasis> {
    if f == 0 {
        return Err(Error::ZeroSites);
    }
    let mut states = Vec::new();
    for n in selector.sectors() {
        let mut prefix = Vec::with_capacity(f);
        push_compositions(n, f, &mut prefix, &mut states);
    }
    let index = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    Ok(FockBasis {
        sites: f,
        selector,
        states,
        index,
    })
}

// Compositions of `remaining` into `slots` parts, first part largest-first,
// which yields lexicographically descending order.
fn push_compositions(
    remaining: u32,
    slots: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<OccupationVector>,
) {
    if slots == 1 {
        prefix.push(remaining);
        out.push(OccupationVector(prefix.clone()));
        prefix.pop();
        return;
    }
    for head in (0..=remaining).rev() {
        prefix.push(head);
        push_compositions(remaining - head, slots - 1, prefix, out);
        prefix.pop();
    }
}

/// Right cyclic shift `T|n_1,…,n_f> = |n_f, n_1, …, n_{f-1}>`.
pub fn translate(v: &OccupationVector) -> OccupationVector {
    let mut occ = v.0.clone();
    occ.rotate_right(1);
    OccupationVector(occ)
}

/// `binomial(n, k)` for the small arguments used in dimension counting.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim V_n = binomial(n + f - 1, f - 1)`.
pub fn sector_dimension(f: usize, n: u32) -> u64 {
    binomial(n as u64 + f as u64 - 1, f as u64 - 1)
}
