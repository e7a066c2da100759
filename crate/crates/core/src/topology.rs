//! Topology on finite carriers.
//!
//! A finite Hausdorff space is discrete, and a finite étale groupoid built from
//! such a space is discrete as well. Interior and closure are therefore the
//! identity; they are spelled out as functions so that each topological
//! condition reads like its definition and the collapse is visible at the
//! call site.

use std::collections::BTreeSet;

/// Interior of `set` in a finite discrete space.
pub fn interior(set: &BTreeSet<usize>) -> BTreeSet<usize> {
    set.clone()
}

/// Closure of `set` in a finite discrete space.
pub fn closure(set: &BTreeSet<usize>) -> BTreeSet<usize> {
    set.clone()
}

/// Whether `set` is closed relative to `ambient`.
pub fn is_relatively_closed(set: &BTreeSet<usize>, ambient: &BTreeSet<usize>) -> bool {
    let closed_in_ambient: BTreeSet<usize> = closure(set).intersection(ambient).copied().collect();
    set.is_subset(ambient) && closed_in_ambient == *set
}
