//! Dempster-Shafer primitives: frames of discernment, mass functions, and
//! the belief / plausibility measures derived from them.
//!
//! Subsets of a frame are bitmasks over its ordered elements, so a frame is
//! capped at [`MAX_FRAME_SIZE`] elements.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest frame whose power set we index by bitmask.
pub const MAX_FRAME_SIZE: usize = 16;

/// A subset of a frame, bit `i` set when element `i` is included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn singleton(index: usize) -> Self {
        Subset(1 << index)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < 32 && self.0 & (1 << index) != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }
}

/// Ordered set of mutually exclusive, exhaustive event labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameOfDiscernment {
    elements: Vec<String>,
}

impl FrameOfDiscernment {
    pub fn new<I, S>(elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(Error::InvalidFrame(
                "frame must have at least one element".into(),
            ));
        }
        if elements.len() > MAX_FRAME_SIZE {
            return Err(Error::InvalidFrame(format!(
                "{} elements exceeds the cap of {MAX_FRAME_SIZE}",
                elements.len()
            )));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::InvalidFrame(format!("duplicate element {e:?}")));
            }
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Ω itself.
    pub fn full(&self) -> Subset {
        Subset(((1u64 << self.len()) - 1) as u32)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == label)
            .ok_or_else(|| Error::UnknownElement(label.to_owned()))
    }

    /// Subset from labels; an empty slice gives the empty set.
    pub fn subset(&self, labels: &[&str]) -> Result<Subset> {
        labels.iter().try_fold(Subset::EMPTY, |acc, l| {
            Ok(acc.union(Subset::singleton(self.index_of(l)?)))
        })
    }

    pub fn complement(&self, a: Subset) -> Result<Subset> {
        self.check(a)?;
        Ok(Subset(self.full().0 & !a.0))
    }

    /// All 2^N subsets, empty set first.
    pub fn power_set(&self) -> impl Iterator<Item = Subset> {
        (0..=self.full().0).map(Subset)
    }

    fn check(&self, a: Subset) -> Result<()> {
        if a.is_subset_of(self.full()) {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!(
                "subset bitmask {:#b} exceeds a frame of {} elements",
                a.0,
                self.len()
            )))
        }
    }

    pub fn describe(&self, a: Subset) -> String {
        let names: Vec<&str> = (0..self.len())
            .filter(|&i| a.contains(i))
            .map(|i| self.elements[i].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Basic probability assignment over the non-empty subsets of a frame.
///
/// The empty set cannot carry mass: it is never stored, and construction
/// rejects any assignment to it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassFunction<T> {
    frame: FrameOfDiscernment,
    masses: BTreeMap<Subset, T>,
}

impl<T: Scalar> MassFunction<T> {
    /// Builds a mass function. Duplicate subsets are summed, zero weights are
    /// dropped, and a total within [`Scalar::NORMALIZATION_TOL`] of one is
    /// renormalized by dividing through by the sum.
    pub fn new<I>(frame: FrameOfDiscernment, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, T)>,
    {
        let mut masses: BTreeMap<Subset, T> = BTreeMap::new();
        for (subset, weight) in assignments {
            if subset.is_empty() {
                return Err(Error::EmptySetAssigned);
            }
            frame.check(subset)?;
            if !weight.is_finite() || weight < T::zero() {
                return Err(Error::NegativeWeight {
                    weight: weight.as_f64(),
                });
            }
            let slot = masses.entry(subset).or_insert_with(T::zero);
            *slot = *slot + weight;
        }
        masses.retain(|_, w| *w > T::zero());

        let sum: T = masses.values().copied().sum();
        if (sum - T::one()).abs() > T::NORMALIZATION_TOL {
            return Err(Error::NotNormalized { sum: sum.as_f64() });
        }
        if sum != T::one() {
            for w in masses.values_mut() {
                *w = *w / sum;
            }
        }
        Ok(Self { frame, masses })
    }

    /// Builds from `(labels, weight)` pairs, resolving labels against the frame.
    pub fn from_labels(frame: FrameOfDiscernment, assignments: &[(&[&str], T)]) -> Result<Self> {
        let resolved = assignments
            .iter()
            .map(|(labels, w)| Ok((frame.subset(labels)?, *w)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(frame, resolved)
    }

    pub fn frame(&self) -> &FrameOfDiscernment {
        &self.frame
    }

    /// m(A); zero for subsets without mass, including ∅.
    pub fn mass(&self, a: Subset) -> T {
        self.masses.get(&a).copied().unwrap_or_else(T::zero)
    }

    /// Focal elements with their masses, in bitmask order.
    pub fn focal_elements(&self) -> impl Iterator<Item = (Subset, T)> + '_ {
        self.masses.iter().map(|(s, w)| (*s, *w))
    }

    /// Bel(A) = Σ_{∅ ≠ B ⊆ A} m(B).
    pub fn belief(&self, a: Subset) -> Result<T> {
        self.frame.check(a)?;
        if a == self.frame.full() {
            return Ok(T::one());
        }
        Ok(self
            .masses
            .iter()
            .filter(|(b, _)| b.is_subset_of(a))
            .map(|(_, w)| *w)
            .sum())
    }

    /// Pl(A) = Σ_{B ∩ A ≠ ∅} m(B).
    pub fn plausibility(&self, a: Subset) -> Result<T> {
        self.frame.check(a)?;
        if a == self.frame.full() {
            return Ok(T::one());
        }
        Ok(self
            .masses
            .iter()
            .filter(|(b, _)| b.intersects(a))
            .map(|(_, w)| *w)
            .sum())
    }

    /// (Bel(A), Pl(A)).
    pub fn interval(&self, a: Subset) -> Result<(T, T)> {
        Ok((self.belief(a)?, self.plausibility(a)?))
    }
}

impl<T: Scalar> fmt::Display for MassFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .masses
            .iter()
            .map(|(s, w)| format!("{}: {}", self.frame.describe(*s), w))
            .collect();
        write!(f, "m[{}]", parts.join(", "))
    }
}
