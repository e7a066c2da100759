//! Partial injections of `{0..degree}` and inverse semigroups generated by them.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use super::InverseSemigroup;
use crate::error::{Error, Result};

/// A partial map on `{0..degree}`; `images[i]` is the image of point `i`.
///
/// Ordering is lexicographic on `images` with `None < Some(_)`, so the empty
/// map sorts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    images: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn new(images: Vec<Option<usize>>) -> Self {
        Self { images }
    }

    pub fn empty(degree: usize) -> Self {
        Self { images: vec![None; degree] }
    }

    pub fn identity_on(degree: usize, domain: impl IntoIterator<Item = usize>) -> Self {
        let mut images = vec![None; degree];
        for x in domain {
            images[x] = Some(x);
        }
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Option<usize>] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.images.get(x).copied().flatten()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.images.iter().flatten().all(|&y| seen.insert(y))
    }

    pub fn is_empty_map(&self) -> bool {
        self.images.iter().all(Option::is_none)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|y| y.and_then(|y| self.apply(y))).collect(),
        }
    }

    /// The map inverse. Only meaningful for injective maps.
    pub fn inverse(&self) -> Self {
        let mut images = vec![None; self.degree()];
        for (x, y) in self.images.iter().enumerate() {
            if let Some(y) = *y {
                images[y] = Some(x);
            }
        }
        Self { images }
    }
}

impl fmt::Display for PartialMap {
    /// Image tokens as in the `.isg` generator syntax: `[1 0]`, `[0 _]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, y) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match y {
                Some(y) => write!(f, "{y}")?,
                None => f.write_str("_")?,
            }
        }
        f.write_str("]")
    }
}

impl InverseSemigroup {
    /// The inverse semigroup of partial injections generated by `generators`,
    /// with the empty map adjoined as zero.
    ///
    /// Elements are sorted by image vector, so the empty map is index 0 and the
    /// result does not depend on generator order. The returned vector maps each
    /// element index to its partial map.
    pub fn from_partial_maps(
        degree: usize,
        generators: &[PartialMap],
    ) -> Result<(Self, Vec<PartialMap>)> {
        Self::from_partial_maps_capped(degree, generators, None)
    }

    /// As [`from_partial_maps`](Self::from_partial_maps), failing with
    /// `ClosureTooLarge` once the closure exceeds `cap` elements.
    pub fn from_partial_maps_capped(
        degree: usize,
        generators: &[PartialMap],
        cap: Option<usize>,
    ) -> Result<(Self, Vec<PartialMap>)> {
        for (g, map) in generators.iter().enumerate() {
            if map.degree() != degree {
                return Err(Error::DegreeMismatch { generator: g, expected: degree, found: map.degree() });
            }
            if let Some(&image) = map.images.iter().flatten().find(|&&y| y >= degree) {
                return Err(Error::ImageOutOfRange { generator: g, image, degree });
            }
            if !map.is_injective() {
                return Err(Error::NotInjective(g));
            }
        }

        let mut letters: Vec<PartialMap> = Vec::new();
        for g in generators {
            for m in [g.clone(), g.inverse()] {
                if !letters.contains(&m) {
                    letters.push(m);
                }
            }
        }

        let mut seen: HashSet<PartialMap> = HashSet::new();
        seen.insert(PartialMap::empty(degree));
        let mut queue: VecDeque<PartialMap> = VecDeque::new();
        for l in &letters {
            if !seen.contains(l) {
                if let Some(cap) = cap.filter(|&cap| seen.len() >= cap) {
                    return Err(Error::ClosureTooLarge { cap });
                }
                seen.insert(l.clone());
                queue.push_back(l.clone());
            }
        }
        while let Some(word) = queue.pop_front() {
            for l in &letters {
                let next = word.compose(l);
                if !seen.contains(&next) {
                    if let Some(cap) = cap.filter(|&cap| seen.len() >= cap) {
                        return Err(Error::ClosureTooLarge { cap });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }

        let mut elements: Vec<PartialMap> = seen.into_iter().collect();
        elements.sort();
        let index: HashMap<&PartialMap, usize> =
            elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rows: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        let labels: Vec<String> = elements
            .iter()
            .map(|m| if m.is_empty_map() { "0".to_string() } else { m.to_string() })
            .collect();
        let semigroup = Self::from_table(&rows, 0)?.with_labels(labels)?;
        Ok((semigroup, elements))
    }
}
