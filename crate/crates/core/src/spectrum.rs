//! Filters, characters, ultrafilters and the tight spectrum of `E`.
//!
//! In a finite semilattice every filter is the up-set of its meet, so a filter
//! is identified by its minimum idempotent. Filters compare and hash by that
//! minimum; the member set is derived.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::semigroup::{Ideal, InverseSemigroup};

#[derive(Debug, Clone)]
pub struct Filter {
    min: usize,
    members: Vec<usize>,
}

impl Filter {
    pub fn min(&self) -> usize {
        self.min
    }

    /// Members in increasing index order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.members.iter().all(|&e| other.contains(e))
    }

    /// Validates an arbitrary subset of `E` against the filter axioms.
    pub fn from_members(s: &InverseSemigroup, members: &BTreeSet<usize>) -> Result<Self> {
        for &e in members {
            s.require_idempotent(e)?;
        }
        if !is_filter_set(s, members) {
            return Err(Error::InvalidFilter(format!("{members:?} violates the filter axioms")));
        }
        let min = members.iter().fold(None, |acc: Option<usize>, &e| Some(acc.map_or(e, |m| s.mul(m, e))));
        s.filter_from_min(min.expect("filters are nonempty"))
    }
}

impl PartialEq for Filter {
    fn eq(&self, other: &Self) -> bool {
        self.min == other.min
    }
}

impl Eq for Filter {}

impl Hash for Filter {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.min.hash(state);
    }
}

impl PartialOrd for Filter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Filter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.min.cmp(&other.min)
    }
}

/// Nonempty, zero-free, meet-closed, up-closed.
pub(crate) fn is_filter_set(s: &InverseSemigroup, set: &BTreeSet<usize>) -> bool {
    !set.is_empty()
        && !set.contains(&s.zero())
        && set.iter().all(|&e| set.iter().all(|&f| set.contains(&s.mul(e, f))))
        && set.iter().all(|&e| {
            s.idempotents().iter().all(|&f| !s.idem_leq(e, f) || set.contains(&f))
        })
}

/// A `{0,1}`-valued multiplicative map on `E`, nonzero, vanishing at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: BTreeMap<usize, bool>,
}

impl Character {
    pub fn new(s: &InverseSemigroup, values: BTreeMap<usize, bool>) -> Result<Self> {
        let keys: Vec<usize> = values.keys().copied().collect();
        if keys != s.idempotents() {
            return Err(Error::InvalidCharacter("domain is not the idempotent semilattice".into()));
        }
        if values[&s.zero()] {
            return Err(Error::InvalidCharacter("value at zero is 1".into()));
        }
        if !values.values().any(|&v| v) {
            return Err(Error::InvalidCharacter("identically zero".into()));
        }
        for (&e, &ve) in &values {
            for (&f, &vf) in &values {
                if values[&s.mul(e, f)] != (ve && vf) {
                    return Err(Error::InvalidCharacter(format!(
                        "not multiplicative at ({e}, {f})"
                    )));
                }
            }
        }
        Ok(Self { values })
    }

    pub fn value(&self, e: usize) -> bool {
        self.values.get(&e).copied().unwrap_or(false)
    }

    pub fn values(&self) -> &BTreeMap<usize, bool> {
        &self.values
    }
}

/// A counterexample to tightness: `X ⊆ ξ`, `Y ∩ ξ = ∅`, and `Z` a cover of
/// `E^{X,Y}` missing `ξ`. `x` is `None` for `X = ∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessWitness {
    pub x: Option<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TightnessConfig {
    /// Largest `|Y|` explored; `None` explores every subset of `E \ ξ`.
    pub max_y: Option<usize>,
}

impl TightnessConfig {
    /// No cap for `|E| <= 20`, `|Y| <= 4` beyond that.
    pub fn for_semigroup(s: &InverseSemigroup) -> Self {
        Self { max_y: if s.idempotents().len() <= 20 { None } else { Some(4) } }
    }
}

/// The tight filters of `E`, sorted by minimum idempotent.
#[derive(Debug, Clone)]
pub struct TightSpectrum {
    points: Vec<Filter>,
    index: HashMap<usize, usize>,
}

impl TightSpectrum {
    pub fn points(&self) -> &[Filter] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, id: usize) -> &Filter {
        &self.points[id]
    }

    /// Point id of the filter with minimum `min`, if it is tight.
    pub fn point_of(&self, min: usize) -> Option<usize> {
        self.index.get(&min).copied()
    }
}

impl InverseSemigroup {
    /// The up-set of a nonzero idempotent.
    pub fn filter_from_min(&self, e: usize) -> Result<Filter> {
        self.require_idempotent(e)?;
        if e == self.zero() {
            return Err(Error::ZeroGeneratesNoFilter);
        }
        Ok(Filter {
            min: e,
            members: self.idempotents().iter().copied().filter(|&f| self.idem_leq(e, f)).collect(),
        })
    }

    /// One filter per nonzero idempotent, sorted by minimum.
    pub fn all_filters(&self) -> Result<Vec<Filter>> {
        let filters: Vec<Filter> = self
            .nonzero_idempotents()
            .map(|e| self.filter_from_min(e))
            .collect::<Result<_>>()?;
        if filters.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        Ok(filters)
    }

    pub fn char_of(&self, f: &Filter) -> Character {
        Character {
            values: self.idempotents().iter().map(|&e| (e, f.contains(e))).collect(),
        }
    }

    pub fn filter_of(&self, c: &Character) -> Result<Filter> {
        let members: BTreeSet<usize> =
            c.values().iter().filter(|(_, &v)| v).map(|(&e, _)| e).collect();
        Filter::from_members(self, &members)
    }

    /// No filter properly contains `f`.
    pub fn is_ultrafilter(&self, f: &Filter) -> bool {
        self.nonzero_idempotents()
            .filter(|&m| m != f.min())
            .all(|m| !self.idem_leq(m, f.min()))
    }

    /// `f` contains every idempotent that intersects all of its members.
    pub fn is_ultrafilter_by_intersection(&self, f: &Filter) -> bool {
        self.idempotents().iter().all(|&e| {
            f.contains(e) || !f.members().iter().all(|&m| self.meets(e, m))
        })
    }

    pub fn ultrafilters(&self) -> Result<Vec<Filter>> {
        Ok(self.all_filters()?.into_iter().filter(|f| self.is_ultrafilter(f)).collect())
    }

    /// `U(X, Y)`: filters containing `X` and missing `Y`.
    pub fn basic_open(&self, xs: &[usize], ys: &[usize]) -> Vec<Filter> {
        self.all_filters()
            .unwrap_or_default()
            .into_iter()
            .filter(|f| xs.iter().all(|&x| f.contains(x)) && ys.iter().all(|&y| !f.contains(y)))
            .collect()
    }

    /// For an ultrafilter `ξ ∈ U(X, Y)`, an `e ∈ ξ` with
    /// `ξ ∈ U({e}, ∅) ⊆ U(X, Y)`: the meet of `X` with, for each `y`, some
    /// member of `ξ` orthogonal to `y`.
    pub fn basic_neighborhood(&self, xi: &Filter, xs: &[usize], ys: &[usize]) -> Option<usize> {
        if !xs.iter().all(|&x| xi.contains(x)) || ys.iter().any(|&y| xi.contains(y)) {
            return None;
        }
        let mut acc = xi.members().iter().copied().find(|_| xs.is_empty() && ys.is_empty());
        for &x in xs {
            acc = Some(acc.map_or(x, |a| self.mul(a, x)));
        }
        for &y in ys {
            let f_y = xi.members().iter().copied().find(|&f| !self.meets(f, y))?;
            acc = Some(acc.map_or(f_y, |a| self.mul(a, f_y)));
        }
        acc
    }

    pub fn is_tight_filter(&self, f: &Filter) -> bool {
        self.tightness_witness(f, TightnessConfig::for_semigroup(self)).is_none()
    }

    /// Searches for a counterexample to tightness of `f`.
    ///
    /// `X` ranges over `∅` and singletons `{x}` with `x ∈ f` (since
    /// `E^{X,Y} = E^{{∧X},Y}`). `Y` ranges over subsets of `E \ f`, explored
    /// breadth-first and deduplicated by the ideal `∩_y J_y^⊥` they induce.
    /// For each pair only `Z* = (E^{X,Y} \ {0}) \ f` is tested: if any cover
    /// of `E^{X,Y}` misses `f` it lies inside `Z*`, and supersets of covers
    /// within the ideal are covers.
    pub fn tightness_witness(&self, f: &Filter, config: TightnessConfig) -> Option<TightnessWitness> {
        let zero = self.zero();
        let outside: Vec<usize> =
            self.idempotents().iter().copied().filter(|&e| !f.contains(e)).collect();

        let everything = Ideal::new_unchecked(self.idempotents().iter().copied().collect());
        let mut y_family: Vec<(Ideal, Vec<usize>)> = vec![(everything.clone(), Vec::new())];
        let mut seen: BTreeSet<Ideal> = BTreeSet::from([everything]);
        let mut frontier = 0;
        while frontier < y_family.len() {
            let (ideal, ys) = y_family[frontier].clone();
            frontier += 1;
            if config.max_y.is_some_and(|cap| ys.len() >= cap) {
                continue;
            }
            for &y in &outside {
                let next = ideal.intersection(&self.perp_of(y));
                if seen.insert(next.clone()) {
                    let mut next_ys = ys.clone();
                    next_ys.push(y);
                    y_family.push((next, next_ys));
                }
            }
        }

        let x_choices = f.members().iter().copied().map(Some).chain(std::iter::once(None));
        for x in x_choices {
            for (perp_part, ys) in &y_family {
                let ideal: Vec<usize> = perp_part
                    .members()
                    .iter()
                    .copied()
                    .filter(|&e| x.is_none_or(|x| self.idem_leq(e, x)))
                    .collect();
                let z_star: Vec<usize> =
                    ideal.iter().copied().filter(|&e| e != zero && !f.contains(e)).collect();
                if self.outer_covers(z_star.iter().copied(), ideal.iter().copied()) {
                    return Some(TightnessWitness { x, y: ys.clone(), z: z_star });
                }
            }
        }
        None
    }

    pub fn tight_spectrum(&self) -> Result<TightSpectrum> {
        let points: Vec<Filter> =
            self.all_filters()?.into_iter().filter(|f| self.is_tight_filter(f)).collect();
        if points.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        let index = points.iter().enumerate().map(|(i, f)| (f.min(), i)).collect();
        Ok(TightSpectrum { points, index })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::fixtures::{b2, e4, i2, z2z};

    const A: usize = 1;
    const B: usize = 2;
    const ONE: usize = 3;

    fn mins(fs: &[Filter]) -> Vec<usize> {
        fs.iter().map(Filter::min).collect()
    }

    #[test]
    fn up_sets() {
        let s = e4();
        assert_eq!(s.filter_from_min(ONE).unwrap().members(), &[ONE]);
        assert_eq!(s.filter_from_min(A).unwrap().members(), &[A, ONE]);
        assert_eq!(s.filter_from_min(0).unwrap_err(), Error::ZeroGeneratesNoFilter);
    }

    #[test]
    fn filter_counts() {
        assert_eq!(mins(&e4().all_filters().unwrap()), vec![A, B, ONE]);
        assert_eq!(b2().all_filters().unwrap().len(), 2);
        assert_eq!(mins(&z2z().all_filters().unwrap()), vec![1]);
        let trivial = InverseSemigroup::from_table(&[vec![0]], 0).unwrap();
        assert_eq!(trivial.all_filters().unwrap_err(), Error::EmptySpectrum);
        assert_eq!(trivial.tight_spectrum().unwrap_err(), Error::EmptySpectrum);
    }

    #[test]
    fn characters() {
        let s = e4();
        let up_a = s.filter_from_min(A).unwrap();
        let c = s.char_of(&up_a);
        assert!(c.value(A) && c.value(ONE) && !c.value(B) && !c.value(0));
        assert_eq!(s.filter_of(&c).unwrap(), up_a);
        assert!(Character::new(&s, c.values().clone()).is_ok());
        let mut bad = c.values().clone();
        bad.insert(B, true);
        assert!(Character::new(&s, bad).is_err());
    }

    #[test]
    fn ultrafilters() {
        let s = e4();
        assert!(s.is_ultrafilter(&s.filter_from_min(A).unwrap()));
        assert!(!s.is_ultrafilter(&s.filter_from_min(ONE).unwrap()));
        assert!(z2z().is_ultrafilter(&z2z().filter_from_min(1).unwrap()));
        let i2 = i2();
        let labels: Vec<&str> = i2.ultrafilters().unwrap().iter().map(|f| i2.label(f.min())).collect();
        assert_eq!(labels, vec!["[_ 1]", "[0 _]"]);
    }

    #[test]
    fn basic_opens() {
        let s = e4();
        assert_eq!(s.basic_open(&[], &[]).len(), 3);
        assert_eq!(mins(&s.basic_open(&[ONE], &[A])), vec![B, ONE]);
        assert!(s.basic_open(&[A], &[ONE]).is_empty());
    }

    #[test]
    fn tightness() {
        let s = e4();
        let top = s.filter_from_min(ONE).unwrap();
        let w = s.tightness_witness(&top, TightnessConfig { max_y: None }).unwrap();
        assert_eq!(w, TightnessWitness { x: Some(ONE), y: vec![], z: vec![A, B] });
        assert!(s.is_tight_filter(&s.filter_from_min(A).unwrap()));
        assert!(z2z().is_tight_filter(&z2z().filter_from_min(1).unwrap()));
    }

    #[test]
    fn tight_spectra() {
        assert_eq!(mins(e4().tight_spectrum().unwrap().points()), vec![A, B]);
        assert_eq!(i2().tight_spectrum().unwrap().len(), 2);
        let b2 = b2();
        let labels: Vec<&str> =
            b2.tight_spectrum().unwrap().points().iter().map(|f| b2.label(f.min())).collect();
        assert_eq!(labels, vec!["e11", "e22"]);
    }

    #[test]
    fn neighborhood_of_ultrafilter() {
        let s = e4();
        let xi = s.filter_from_min(A).unwrap();
        let e = s.basic_neighborhood(&xi, &[ONE], &[B]).unwrap();
        assert_eq!(e, A);
        assert_eq!(s.basic_neighborhood(&xi, &[B], &[]), None);
    }
}
