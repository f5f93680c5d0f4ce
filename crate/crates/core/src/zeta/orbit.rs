//! Closed-orbit records.
//!
//! An orbit is stored combinatorially: a period used by the generators as
//! bookkeeping, a holonomy (a group element of positive degree — every closed
//! orbit crosses the circle direction positively), and the counts of real
//! return-map eigenvalues beyond `+1` and below `-1`.  Orbit sets carry the
//! degree through which the list is known to be complete, so downstream
//! truncations can refuse to read past what an enumeration actually covered.

use crate::error::{KernelError, Result};
use crate::group::{GroupDescriptor, GroupElement};

/// One prime closed orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedOrbit {
    period: u64,
    holonomy: GroupElement,
    i_plus: u32,
    i_minus: u32,
}

impl ClosedOrbit {
    pub fn new(
        desc: &GroupDescriptor,
        period: u64,
        holonomy: GroupElement,
        i_plus: u32,
        i_minus: u32,
    ) -> Result<Self> {
        if period == 0 {
            return Err(KernelError::Invalid("orbit period must be positive".into()));
        }
        if holonomy.vec.len() != desc.nvars() {
            return Err(KernelError::Shape(format!(
                "orbit holonomy has {} lattice coordinates, descriptor has {}",
                holonomy.vec.len(),
                desc.nvars()
            )));
        }
        let alpha = holonomy.alpha(desc);
        if alpha < 1 {
            return Err(KernelError::Invalid(format!(
                "orbit holonomy must have positive degree, got {alpha}"
            )));
        }
        Ok(ClosedOrbit { period, holonomy, i_plus, i_minus })
    }

    /// How many return-map traversals close this orbit up.
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn holonomy(&self) -> &GroupElement {
        &self.holonomy
    }

    /// Count of real return-map eigenvalues greater than `1`.
    pub fn i_plus(&self) -> u32 {
        self.i_plus
    }

    /// Count of real return-map eigenvalues less than `-1`.
    pub fn i_minus(&self) -> u32 {
        self.i_minus
    }

    /// Degree of the holonomy under the circle character.
    pub fn alpha(&self, desc: &GroupDescriptor) -> i64 {
        self.holonomy.alpha(desc)
    }
}

/// A multiset of prime closed orbits, complete through a stated degree.
///
/// Orbits that a counter sees many times with the same data (for example the
/// period-`p` orbits of a suspension flow, which all share the holonomy
/// `t^p`) are stored once with a repetition count, so large orbit families
/// stay cheap to hold and to multiply out.
#[derive(Debug, Clone)]
pub struct OrbitSet {
    desc: GroupDescriptor,
    entries: Vec<(ClosedOrbit, u64)>,
    complete_through: i64,
}

impl OrbitSet {
    /// Wraps a plain orbit list, every orbit with multiplicity one.
    pub fn new(
        desc: &GroupDescriptor,
        orbits: Vec<ClosedOrbit>,
        complete_through: i64,
    ) -> Result<Self> {
        Self::with_multiplicities(
            desc,
            orbits.into_iter().map(|o| (o, 1)).collect(),
            complete_through,
        )
    }

    /// Wraps an orbit list with repetition counts.
    pub fn with_multiplicities(
        desc: &GroupDescriptor,
        entries: Vec<(ClosedOrbit, u64)>,
        complete_through: i64,
    ) -> Result<Self> {
        for (orbit, mult) in &entries {
            ClosedOrbit::new(
                desc,
                orbit.period,
                orbit.holonomy.clone(),
                orbit.i_plus,
                orbit.i_minus,
            )?;
            if *mult == 0 {
                return Err(KernelError::Invalid(
                    "orbit multiplicity must be positive".into(),
                ));
            }
        }
        Ok(OrbitSet { desc: desc.clone(), entries, complete_through })
    }

    pub fn desc(&self) -> &GroupDescriptor {
        &self.desc
    }

    /// Orbit records with their repetition counts.
    pub fn entries(&self) -> &[(ClosedOrbit, u64)] {
        &self.entries
    }

    /// The degree through which this list contains every prime orbit.
    pub fn complete_through(&self) -> i64 {
        self.complete_through
    }

    /// Number of distinct orbit records.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total orbit count, multiplicities included.
    pub fn total_count(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Total multiplicity of orbits whose holonomy has the given degree.
    pub fn count_at_degree(&self, alpha: i64) -> u64 {
        self.entries
            .iter()
            .filter(|(o, _)| o.alpha(&self.desc) == alpha)
            .map(|(_, m)| m)
            .sum()
    }
}
