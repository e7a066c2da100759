//! The groupoid of germs of a finite action.
//!
//! Arrows are classes of pairs `(s, x)` with `x ∈ D_{s*s}`, where `(s, x)` and
//! `(t, x)` are identified when `se = te` for some idempotent `e` with
//! `x ∈ D_e`. Each class is represented by its lexicographically smallest
//! pair, and arrow ids follow that order.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::action::{ContractionVerdict, FiniteAction, NonContraction};
use crate::error::{Error, Result};
use crate::topology::{closure, interior, is_relatively_closed};

/// Groupoids with at most this many arrows get the exhaustive bisection search.
pub const EXHAUSTIVE_ARROW_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Germ {
    pub rep_s: usize,
    pub rep_x: usize,
    pub class_id: usize,
}

/// A failed groupoid axiom, with the arrows involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomFailure {
    Associativity(usize, usize, usize),
    SourceRange(usize, usize),
    Inverse(usize),
    Unit(usize),
}

pub struct GermGroupoid<'a> {
    action: &'a FiniteAction<'a>,
    arrows: Vec<Germ>,
    src: Vec<usize>,
    rng: Vec<usize>,
    class_of: Vec<Vec<Option<usize>>>,
    unit_of_point: Vec<usize>,
    is_unit: Vec<bool>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Builds `G_α` from a validated action.
pub fn build_germ_groupoid<'a>(action: &'a FiniteAction<'a>) -> Result<GermGroupoid<'a>> {
    action.validate().map_err(Error::InvalidAction)?;
    let s = action.semigroup();
    let carrier = action.carrier_len();
    let pair = |t: usize, x: usize| t * carrier + x;

    let mut uf = UnionFind::new(s.len() * carrier);
    for x in action.points() {
        for &e in s.idempotents().iter().filter(|&&e| action.in_domain(e, x)) {
            // (t, x) ~ (u, x) whenever te = ue; group by te
            let mut first_with_product = vec![None; s.len()];
            for t in s.elements().filter(|&t| action.in_domain(t, x)) {
                match first_with_product[s.mul(t, e)] {
                    Some(u) => uf.union(pair(u, x), pair(t, x)),
                    None => first_with_product[s.mul(t, e)] = Some(t),
                }
            }
        }
    }

    // Pairs are visited in lexicographic order, so the first pair seen in a
    // class is its canonical representative and class ids are sorted by it.
    let mut class_of = vec![vec![None; carrier]; s.len()];
    let mut class_of_root = vec![usize::MAX; s.len() * carrier];
    let mut arrows = Vec::new();
    let mut src = Vec::new();
    let mut rng = Vec::new();
    for t in s.elements() {
        for x in action.points() {
            let Some(y) = action.apply(t, x) else { continue };
            let root = uf.find(pair(t, x));
            if class_of_root[root] == usize::MAX {
                class_of_root[root] = arrows.len();
                arrows.push(Germ { rep_s: t, rep_x: x, class_id: arrows.len() });
                src.push(x);
                rng.push(y);
            }
            class_of[t][x] = Some(class_of_root[root]);
        }
    }

    let mut unit_of_point = Vec::with_capacity(carrier);
    for x in action.points() {
        let e = s
            .idempotents()
            .iter()
            .copied()
            .find(|&e| action.in_domain(e, x))
            .expect("validated actions cover the carrier");
        unit_of_point.push(class_of[e][x].expect("x lies in the domain of e"));
    }
    let mut is_unit = vec![false; arrows.len()];
    for &u in &unit_of_point {
        is_unit[u] = true;
    }

    Ok(GermGroupoid { action, arrows, src, rng, class_of, unit_of_point, is_unit })
}

impl<'a> GermGroupoid<'a> {
    pub fn action(&self) -> &'a FiniteAction<'a> {
        self.action
    }

    pub fn arrows(&self) -> &[Germ] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn src(&self, arrow: usize) -> usize {
        self.src[arrow]
    }

    pub fn rng(&self, arrow: usize) -> usize {
        self.rng[arrow]
    }

    /// Class of the pair `(s, x)`, or `None` when `x ∉ D_{s*s}`.
    pub fn germ(&self, s: usize, x: usize) -> Option<usize> {
        self.class_of[s][x]
    }

    /// The unit `[e, x]`, identified with the point `x`.
    pub fn unit(&self, x: usize) -> usize {
        self.unit_of_point[x]
    }

    pub fn is_unit(&self, arrow: usize) -> bool {
        self.is_unit[arrow]
    }

    pub fn units(&self) -> BTreeSet<usize> {
        self.unit_of_point.iter().copied().collect()
    }

    pub fn unit_count(&self) -> usize {
        self.unit_of_point.len()
    }

    /// `[s, z][t, x] = [st, x]`, defined when `z = α_t(x)`.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        if self.src[a] != self.rng[b] {
            return None;
        }
        let (ga, gb) = (self.arrows[a], self.arrows[b]);
        let st = self.action.semigroup().mul(ga.rep_s, gb.rep_s);
        self.class_of[st][gb.rep_x]
    }

    /// `[s, x]⁻¹ = [s*, α_s(x)]`.
    pub fn inv(&self, a: usize) -> usize {
        let g = self.arrows[a];
        let star = self.action.semigroup().star(g.rep_s);
        self.class_of[star][self.rng[a]].expect("α_s(x) lies in the domain of s*")
    }

    /// Canonical representative rendered with element and point labels.
    pub fn arrow_label(&self, a: usize) -> String {
        let g = self.arrows[a];
        format!(
            "[{}, {}]",
            self.action.semigroup().label(g.rep_s),
            self.action.point_label(g.rep_x)
        )
    }

    /// `Θ(s, U) = {[s, x] : x ∈ U}`.
    pub fn theta_slice(&self, s: usize, u: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        u.iter()
            .map(|&x| self.class_of[s][x].ok_or(Error::DomainViolation { s, point: x }))
            .collect()
    }

    /// Source and range are both injective on `arrows`.
    pub fn is_bisection(&self, arrows: &BTreeSet<usize>) -> bool {
        let sources: BTreeSet<usize> = arrows.iter().map(|&a| self.src[a]).collect();
        let ranges: BTreeSet<usize> = arrows.iter().map(|&a| self.rng[a]).collect();
        sources.len() == arrows.len() && ranges.len() == arrows.len()
    }

    /// `G' = {γ : d(γ) = r(γ)}`.
    pub fn isotropy_bundle(&self) -> BTreeSet<usize> {
        (0..self.len()).filter(|&a| self.src[a] == self.rng[a]).collect()
    }

    /// `G(x) = {γ : d(γ) = r(γ) = x}`.
    pub fn isotropy_group(&self, x: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&a| self.src[a] == x && self.rng[a] == x).collect()
    }

    pub fn is_principal(&self) -> bool {
        self.isotropy_bundle() == self.units()
    }

    /// The interior of `G'` equals the unit space. The groupoid is discrete,
    /// so this is the same as being principal.
    pub fn is_essentially_principal(&self) -> bool {
        interior(&self.isotropy_bundle()) == self.units()
    }

    /// `Θ(s, D_{s*s}) ∩ G⁽⁰⁾ = Θ(s, X_s)`.
    pub fn slice_identity_holds(&self, s: usize) -> bool {
        let units = self.units();
        let full = self.theta_slice(s, &self.action.domain(s)).expect("domain slice");
        let trivial = self.theta_slice(s, &self.action.x_alpha_s(s)).expect("X_s lies in the domain");
        full.intersection(&units).copied().collect::<BTreeSet<_>>() == trivial
    }

    /// The unit space is closed, checked together with the slice identity
    /// for every element and closedness of each `X_s` in `D_{s*s}`.
    /// A failure of the latter two while the first holds is a contradiction
    /// and is reported as such.
    pub fn is_hausdorff_direct(&self) -> Result<bool> {
        let units = self.units();
        let all: BTreeSet<usize> = (0..self.len()).collect();
        let unit_space_closed = is_relatively_closed(&units, &all) && closure(&units) == units;
        for s in self.action.semigroup().elements() {
            let xs_closed = is_relatively_closed(&self.action.x_alpha_s(s), &self.action.domain(s));
            let slice = self.slice_identity_holds(s);
            if unit_space_closed && !(xs_closed && slice) {
                return Err(Error::TheoremViolation {
                    property: "hausdorff".into(),
                    criterion: xs_closed && slice,
                    direct: unit_space_closed,
                    detail: format!("slice identity or closedness of X_s fails at element {s}"),
                });
            }
        }
        Ok(unit_space_closed)
    }

    /// Orbits of units under arrows.
    pub fn unit_orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut uf = UnionFind::new(self.unit_count());
        for a in 0..self.len() {
            uf.union(self.src[a], self.rng[a]);
        }
        let mut orbits: Vec<BTreeSet<usize>> = Vec::new();
        let mut orbit_of_root = vec![usize::MAX; self.unit_count()];
        for x in 0..self.unit_count() {
            let r = uf.find(x);
            if orbit_of_root[r] == usize::MAX {
                orbit_of_root[r] = orbits.len();
                orbits.push(BTreeSet::new());
            }
            orbits[orbit_of_root[r]].insert(x);
        }
        orbits
    }

    /// The only invariant open sets of units are `∅` and `G⁽⁰⁾`; with
    /// discrete units, a single orbit.
    pub fn is_minimal_groupoid(&self) -> bool {
        self.unit_orbits().len() == 1
    }

    /// Every nonempty open `U ⊆ G⁽⁰⁾` contains an open `V` and an open
    /// bisection `S` with `cl V ⊆ S⁻¹S` and `S (cl V) S⁻¹ ⊊ V`.
    ///
    /// Never true for a finite groupoid: `S` induces an injection of `V` into
    /// a proper subset of itself. Groupoids with at most
    /// [`EXHAUSTIVE_ARROW_LIMIT`] arrows are also searched.
    pub fn is_locally_contracting_groupoid(&self) -> Result<ContractionVerdict> {
        if self.unit_count() == 0 {
            return Ok(ContractionVerdict {
                contracting: false,
                reason: Some(NonContraction::EmptySpectrum),
                exhaustive: None,
            });
        }
        let exhaustive = (self.len() <= EXHAUSTIVE_ARROW_LIMIT).then(|| self.contracting_by_search());
        if exhaustive == Some(true) {
            return Err(Error::TheoremViolation {
                property: "locally contracting groupoid".into(),
                criterion: false,
                direct: true,
                detail: "exhaustive search found a contracting bisection in a finite groupoid".into(),
            });
        }
        Ok(ContractionVerdict {
            contracting: false,
            reason: Some(NonContraction::CardinalityObstruction),
            exhaustive,
        })
    }

    fn contracting_by_search(&self) -> bool {
        let arrows = self.len();
        let units = self.unit_count();
        let bisections: Vec<u32> = (1u32..(1 << arrows))
            .filter(|&mask| {
                let (mut srcs, mut rngs) = (0u32, 0u32);
                for a in (0..arrows).filter(|a| mask & (1 << a) != 0) {
                    if srcs & (1 << self.src[a]) != 0 || rngs & (1 << self.rng[a]) != 0 {
                        return false;
                    }
                    srcs |= 1 << self.src[a];
                    rngs |= 1 << self.rng[a];
                }
                true
            })
            .collect();
        let contracted: Vec<u32> = (1u32..(1 << units))
            .filter(|&v| {
                bisections.iter().any(|&bis| {
                    let mut sources = 0u32;
                    let mut image = 0u32;
                    for a in (0..arrows).filter(|a| bis & (1 << a) != 0) {
                        sources |= 1 << self.src[a];
                        if v & (1 << self.src[a]) != 0 {
                            image |= 1 << self.rng[a];
                        }
                    }
                    v & !sources == 0 && image & !v == 0 && image != v
                })
            })
            .collect();
        (1u32..(1 << units)).all(|u| contracted.iter().any(|&v| v & !u == 0))
    }

    /// Exhaustive check of associativity, inverse and unit laws.
    pub fn check_groupoid_axioms(&self) -> std::result::Result<(), AxiomFailure> {
        let n = self.len();
        // composable pairs, indexed by the shared unit
        let mut ending_at: Vec<Vec<usize>> = vec![Vec::new(); self.unit_count()];
        for a in 0..n {
            ending_at[self.rng[a]].push(a);
        }
        for a in 0..n {
            let inv = self.inv(a);
            if self.inv(inv) != a
                || self.compose(a, inv) != Some(self.unit(self.rng[a]))
                || self.compose(inv, a) != Some(self.unit(self.src[a]))
            {
                return Err(AxiomFailure::Inverse(a));
            }
            if self.compose(self.unit(self.rng[a]), a) != Some(a)
                || self.compose(a, self.unit(self.src[a])) != Some(a)
            {
                return Err(AxiomFailure::Unit(a));
            }
            for &b in &ending_at[self.src[a]] {
                let Some(ab) = self.compose(a, b) else {
                    return Err(AxiomFailure::SourceRange(a, b));
                };
                if self.src[ab] != self.src[b] || self.rng[ab] != self.rng[a] {
                    return Err(AxiomFailure::SourceRange(a, b));
                }
                for &c in &ending_at[self.src[b]] {
                    let left = self.compose(ab, c);
                    let right = self.compose(b, c).and_then(|bc| self.compose(a, bc));
                    if left.is_none() || left != right {
                        return Err(AxiomFailure::Associativity(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }
}
