//! Actions of finite inverse semigroups on finite sets by partial bijections.
//!
//! The main instance is the standard action on the tight spectrum,
//! `θ_s(ξ) = ↑{ s e s* : e ∈ ξ }` on the domain `{ξ : s*s ∈ ξ}`.
//! Carriers are finite, hence discrete; see [`crate::topology`].

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::InverseSemigroup;
use crate::spectrum::{Character, Filter, TightSpectrum};
use crate::topology::{closure, interior};

/// Carriers up to this size get the exhaustive local-contraction search.
pub const EXHAUSTIVE_CARRIER_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionViolation {
    #[error("malformed action: {0}")]
    Malformed(String),
    #[error("the zero element acts nontrivially")]
    ZeroNotEmpty,
    #[error("idempotent {0} does not act as the identity on its domain")]
    IdempotentNotIdentity(usize),
    #[error("element {0} does not act injectively")]
    NotInjective(usize),
    #[error("the map of the inverse of element {0} is not its inverse map")]
    InverseMismatch(usize),
    #[error("domain or range of element {0} disagrees with D(s*s) or D(ss*)")]
    DomainMismatch(usize),
    #[error("idempotent domains do not cover point {0}")]
    DomainNotCovering(usize),
    #[error("composition mismatch: a({s}) a({t}) != a({s}{t}) at point {x}")]
    CompositionMismatch { s: usize, t: usize, x: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixedPointWitness {
    pub s: usize,
    pub point: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreenessVerdict {
    pub holds: bool,
    /// A fixed point (interior, for topological freeness) that is not trivial.
    pub witness: Option<FixedPointWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonContraction {
    /// Injectivity: `|α(V)| = |V|`, so `α(V) ⊊ V` is impossible for finite `V`.
    CardinalityObstruction,
    EmptySpectrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ContractionVerdict {
    pub contracting: bool,
    pub reason: Option<NonContraction>,
    /// Outcome of the brute-force search, when the instance was small enough.
    pub exhaustive: Option<bool>,
}

/// Trajectory classes of an action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    classes: Vec<BTreeSet<usize>>,
}

impl OrbitPartition {
    pub fn classes(&self) -> &[BTreeSet<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// A family of partial injections `α_s` of `{0..carrier}`.
#[derive(Clone)]
pub struct FiniteAction<'s> {
    semigroup: &'s InverseSemigroup,
    carrier: usize,
    maps: Vec<Vec<Option<usize>>>,
    point_labels: Vec<String>,
}

impl fmt::Debug for FiniteAction<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAction")
            .field("carrier", &self.carrier)
            .field("maps", &self.maps)
            .finish()
    }
}

impl<'s> FiniteAction<'s> {
    /// Checks shape only; see [`validate`](Self::validate) for the axioms.
    pub fn new(
        semigroup: &'s InverseSemigroup,
        carrier: usize,
        maps: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let malformed = |msg: String| Error::InvalidAction(ActionViolation::Malformed(msg));
        if maps.len() != semigroup.len() {
            return Err(malformed(format!("{} maps for {} elements", maps.len(), semigroup.len())));
        }
        for (s, map) in maps.iter().enumerate() {
            if map.len() != carrier {
                return Err(malformed(format!("map of element {s} has length {}", map.len())));
            }
            if map.iter().flatten().any(|&y| y >= carrier) {
                return Err(malformed(format!("map of element {s} leaves the carrier")));
            }
        }
        Ok(Self {
            semigroup,
            carrier,
            maps,
            point_labels: (0..carrier).map(|x| x.to_string()).collect(),
        })
    }

    pub fn with_point_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.carrier);
        self.point_labels = labels;
        self
    }

    pub fn semigroup(&self) -> &'s InverseSemigroup {
        self.semigroup
    }

    pub fn carrier_len(&self) -> usize {
        self.carrier
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.carrier
    }

    pub fn point_label(&self, x: usize) -> &str {
        &self.point_labels[x]
    }

    #[inline]
    pub fn apply(&self, s: usize, x: usize) -> Option<usize> {
        self.maps[s][x]
    }

    /// Domain of `α_s`.
    pub fn domain(&self, s: usize) -> BTreeSet<usize> {
        self.points().filter(|&x| self.maps[s][x].is_some()).collect()
    }

    pub fn range(&self, s: usize) -> BTreeSet<usize> {
        self.maps[s].iter().flatten().copied().collect()
    }

    #[inline]
    pub fn in_domain(&self, s: usize, x: usize) -> bool {
        self.maps[s][x].is_some()
    }

    /// Image of a set of points under `α_s`, ignoring points outside its domain.
    pub fn image(&self, s: usize, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().filter_map(|&x| self.maps[s][x]).collect()
    }

    /// `D_F = ∪_{f ∈ F} D_f`.
    pub fn union_of_domains(&self, idems: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        idems.into_iter().flat_map(|e| self.domain(e)).collect()
    }

    /// Exhaustive check of the action axioms.
    pub fn validate(&self) -> std::result::Result<(), ActionViolation> {
        let s = self.semigroup;
        if self.maps[s.zero()].iter().any(Option::is_some) {
            return Err(ActionViolation::ZeroNotEmpty);
        }
        for &e in s.idempotents() {
            if self.maps[e].iter().enumerate().any(|(x, y)| y.is_some_and(|y| y != x)) {
                return Err(ActionViolation::IdempotentNotIdentity(e));
            }
        }
        for t in s.elements() {
            let mut hit = vec![false; self.carrier];
            for &y in self.maps[t].iter().flatten() {
                if std::mem::replace(&mut hit[y], true) {
                    return Err(ActionViolation::NotInjective(t));
                }
            }
            let inverse = &self.maps[s.star(t)];
            for x in self.points() {
                let back = self.maps[t][x].map(|y| inverse[y] == Some(x));
                if back == Some(false) {
                    return Err(ActionViolation::InverseMismatch(t));
                }
            }
            if self.range(t) != self.domain(s.star(t)) {
                return Err(ActionViolation::InverseMismatch(t));
            }
            if self.domain(t) != self.domain(s.source_idem(t))
                || self.range(t) != self.domain(s.range_idem(t))
            {
                return Err(ActionViolation::DomainMismatch(t));
            }
        }
        let covered = self.union_of_domains(s.idempotents().iter().copied());
        if let Some(x) = self.points().find(|x| !covered.contains(x)) {
            return Err(ActionViolation::DomainNotCovering(x));
        }
        for a in s.elements() {
            for b in s.elements() {
                let ab = s.mul(a, b);
                for x in self.points() {
                    let composite = self.maps[b][x].and_then(|y| self.maps[a][y]);
                    if composite != self.maps[ab][x] {
                        return Err(ActionViolation::CompositionMismatch { s: a, t: b, x });
                    }
                }
            }
        }
        Ok(())
    }

    /// `X_s = ∪_{e ∈ J_s} D_e`.
    pub fn x_alpha_s(&self, s: usize) -> BTreeSet<usize> {
        self.union_of_domains(self.semigroup.j_s(s).members().iter().copied())
    }

    /// `F_s = {x ∈ D_{s*s} : α_s(x) = x}`.
    pub fn fixed_points(&self, s: usize) -> BTreeSet<usize> {
        self.points().filter(|&x| self.maps[s][x] == Some(x)).collect()
    }

    /// Points `x` with some idempotent `e ≤ s`, `x ∈ D_e`; this is `X_s`.
    pub fn trivial_fixed_points(&self, s: usize) -> BTreeSet<usize> {
        self.x_alpha_s(s)
    }

    /// Every fixed point of every element is trivial.
    pub fn is_free(&self) -> FreenessVerdict {
        self.freeness(|fixed| fixed.clone())
    }

    /// For every `s`, the interior of `F_s` consists of trivial fixed points.
    /// Interiors are taken in the discrete topology, so on finite carriers
    /// this coincides with [`is_free`](Self::is_free).
    pub fn is_topologically_free(&self) -> FreenessVerdict {
        self.freeness(interior)
    }

    fn freeness(&self, region: impl Fn(&BTreeSet<usize>) -> BTreeSet<usize>) -> FreenessVerdict {
        for s in self.semigroup.elements() {
            let candidates = region(&self.fixed_points(s));
            let trivial = self.trivial_fixed_points(s);
            if let Some(&point) = candidates.difference(&trivial).next() {
                return FreenessVerdict { holds: false, witness: Some(FixedPointWitness { s, point }) };
            }
        }
        FreenessVerdict { holds: true, witness: None }
    }

    /// `Orb(V) = ∪_s α_s(V ∩ D_{s*s})`.
    pub fn orb(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.semigroup.elements().flat_map(|s| self.image(s, set)).collect()
    }

    /// `α_s(W ∩ D_{s*s}) ⊆ W` for every `s`.
    pub fn is_invariant(&self, set: &BTreeSet<usize>) -> bool {
        self.semigroup.elements().all(|s| self.image(s, set).is_subset(set))
    }

    /// Trajectory classes, by union-find over every `x ~ α_s(x)`.
    pub fn orbit_partition(&self) -> OrbitPartition {
        let mut parent: Vec<usize> = self.points().collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for map in &self.maps {
            for (x, y) in map.iter().enumerate() {
                if let Some(y) = *y {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    if rx != ry {
                        parent[rx.max(ry)] = rx.min(ry);
                    }
                }
            }
        }
        let mut classes: Vec<BTreeSet<usize>> = Vec::new();
        let mut class_of_root = vec![usize::MAX; self.carrier];
        for x in self.points() {
            let r = find(&mut parent, x);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = classes.len();
                classes.push(BTreeSet::new());
            }
            classes[class_of_root[r]].insert(x);
        }
        OrbitPartition { classes }
    }

    pub fn orbit(&self, x: usize) -> BTreeSet<usize> {
        self.orbit_partition()
            .classes
            .into_iter()
            .find(|c| c.contains(&x))
            .unwrap_or_default()
    }

    /// No open invariant subsets besides `∅` and the carrier. Every subset is
    /// open here, so this says the carrier is a single trajectory class.
    pub fn is_irreducible(&self) -> bool {
        self.orbit_partition().len() == 1
    }

    /// Every nonempty open `U` contains an open `V` and some `s` with
    /// `cl(V) ⊆ D_{s*s}` and `α_s(cl V) ⊊ V`.
    ///
    /// On a finite nonempty carrier this never holds: `α_s` is injective, so
    /// `|α_s(V)| = |V|`. That verdict is returned directly; carriers of at most
    /// [`EXHAUSTIVE_CARRIER_LIMIT`] points are also searched, and a search that
    /// disagrees is reported as a theorem violation.
    pub fn is_locally_contracting_action(&self) -> Result<ContractionVerdict> {
        if self.carrier == 0 {
            return Ok(ContractionVerdict {
                contracting: false,
                reason: Some(NonContraction::EmptySpectrum),
                exhaustive: None,
            });
        }
        let exhaustive = (self.carrier <= EXHAUSTIVE_CARRIER_LIMIT).then(|| self.contracting_by_search());
        if exhaustive == Some(true) {
            return Err(Error::TheoremViolation {
                property: "locally contracting action".into(),
                criterion: false,
                direct: true,
                detail: "exhaustive search found a contraction on a finite carrier".into(),
            });
        }
        Ok(ContractionVerdict {
            contracting: false,
            reason: Some(NonContraction::CardinalityObstruction),
            exhaustive,
        })
    }

    fn contracting_by_search(&self) -> bool {
        let full: u32 = (1 << self.carrier) - 1;
        let as_set = |mask: u32| -> BTreeSet<usize> {
            self.points().filter(|&x| mask & (1 << x) != 0).collect()
        };
        let contracted: Vec<u32> = (1..=full)
            .filter(|&v| {
                let v_closed = closure(&as_set(v));
                let v_set = as_set(v);
                self.semigroup.elements().any(|s| {
                    let dom = self.domain(s);
                    if !v_closed.is_subset(&dom) {
                        return false;
                    }
                    let img = self.image(s, &v_closed);
                    img.is_subset(&v_set) && img != v_set
                })
            })
            .collect();
        (1..=full).all(|u| contracted.iter().any(|&v| v & !u == 0))
    }
}

impl InverseSemigroup {
    /// `β_s(ξ) = ↑(s m s*)` for `ξ = ↑m` with `s*s ∈ ξ`; `None` off the domain.
    pub fn act_on_filter(&self, s: usize, f: &Filter) -> Option<Filter> {
        if !f.contains(self.source_idem(s)) {
            return None;
        }
        Some(self.filter_from_min(self.conjugate(s, f.min())).expect("conjugate of a member of D(s*s) is nonzero"))
    }

    /// Up-closure of `{ s e s* : e ∈ ξ }`, computed literally from the members.
    pub fn act_on_filter_by_members(&self, s: usize, f: &Filter) -> Option<Filter> {
        if !f.contains(self.source_idem(s)) {
            return None;
        }
        let generated: BTreeSet<usize> = self
            .idempotents()
            .iter()
            .copied()
            .filter(|&g| f.members().iter().any(|&e| self.idem_leq(self.conjugate(s, e), g)))
            .collect();
        Filter::from_members(self, &generated).ok()
    }

    /// `β_s(φ)(e) = φ(s* e s)`, defined when `φ(s*s) = 1`.
    pub fn beta_on_character(&self, s: usize, c: &Character) -> Result<Character> {
        if !c.value(self.source_idem(s)) {
            return Err(Error::NotInDomain(s));
        }
        let star = self.star(s);
        let values = self.idempotents().iter().map(|&e| (e, c.value(self.mul3(star, e, s)))).collect();
        Character::new(self, values)
    }
}

/// The standard action `θ` of `S` on its tight spectrum.
pub fn standard_action<'s>(
    semigroup: &'s InverseSemigroup,
    spectrum: &TightSpectrum,
) -> Result<FiniteAction<'s>> {
    if spectrum.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let mut maps = Vec::with_capacity(semigroup.len());
    for s in semigroup.elements() {
        let mut map = Vec::with_capacity(spectrum.len());
        for point in spectrum.points() {
            let image = match semigroup.act_on_filter(s, point) {
                Some(image) => Some(spectrum.point_of(Filter::min(&image)).ok_or_else(|| {
                    Error::InvalidAction(ActionViolation::Malformed(format!(
                        "element {s} maps a tight filter outside the spectrum"
                    )))
                })?),
                None => None,
            };
            map.push(image);
        }
        maps.push(map);
    }
    let labels = spectrum
        .points()
        .iter()
        .map(|p| format!("↑{}", semigroup.label(p.min())))
        .collect();
    Ok(FiniteAction::new(semigroup, spectrum.len(), maps)?.with_point_labels(labels))
}
