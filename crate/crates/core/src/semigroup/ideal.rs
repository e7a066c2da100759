//! Ideals of the idempotent semilattice and the cover predicates on them.

use std::collections::BTreeSet;

use super::InverseSemigroup;
use crate::error::{Error, Result};

/// A zero-containing, downward-closed set of idempotents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    members: BTreeSet<usize>,
}

impl Ideal {
    /// Checks the ideal axioms against `s`.
    pub fn new(s: &InverseSemigroup, members: BTreeSet<usize>) -> Result<Self> {
        for &e in &members {
            s.require_idempotent(e)?;
        }
        let closed = members.contains(&s.zero())
            && members
                .iter()
                .all(|&e| s.idempotents().iter().all(|&f| !s.idem_leq(f, e) || members.contains(&f)));
        if closed {
            Ok(Self { members })
        } else {
            Err(Error::NotAnIdeal)
        }
    }

    pub(crate) fn new_unchecked(members: BTreeSet<usize>) -> Self {
        Self { members }
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True for the trivial ideal `{0}`.
    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self { members: self.members.intersection(&other.members).copied().collect() }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self { members: self.members.union(&other.members).copied().collect() }
    }
}

/// A candidate set `C` for a cover test. Being a cover is a predicate, not an
/// invariant, so any set of idempotents is accepted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverCandidate {
    members: BTreeSet<usize>,
}

impl CoverCandidate {
    pub fn new(s: &InverseSemigroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        for &e in &members {
            s.require_idempotent(e)?;
        }
        Ok(Self { members })
    }

    pub(crate) fn from_set(members: BTreeSet<usize>) -> Self {
        Self { members }
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.contains(&e)
    }
}

impl InverseSemigroup {
    /// `J_e = {f in E : f <= e}`.
    pub fn principal_ideal(&self, e: usize) -> Result<Ideal> {
        self.require_idempotent(e)?;
        Ok(self.principal_ideal_unchecked(e))
    }

    pub(crate) fn principal_ideal_unchecked(&self, e: usize) -> Ideal {
        Ideal::new_unchecked(
            self.idempotents().iter().copied().filter(|&f| self.idem_leq(f, e)).collect(),
        )
    }

    /// `J^perp`: the idempotents orthogonal to every member of `j`.
    pub fn ideal_perp(&self, j: &Ideal) -> Ideal {
        Ideal::new_unchecked(
            self.idempotents()
                .iter()
                .copied()
                .filter(|&f| j.members().iter().all(|&e| !self.meets(f, e)))
                .collect(),
        )
    }

    /// `J_e^perp = {f : f e = 0}`.
    pub(crate) fn perp_of(&self, e: usize) -> Ideal {
        Ideal::new_unchecked(
            self.idempotents().iter().copied().filter(|&f| !self.meets(f, e)).collect(),
        )
    }

    /// `E^{X,Y}`: the intersection of `J_x` over `x` in `X` and of `J_y^perp`
    /// over `y` in `Y`. Empty families intersect to all of `E`.
    pub fn exy_ideal(&self, xs: &[usize], ys: &[usize]) -> Result<Ideal> {
        for &e in xs.iter().chain(ys) {
            self.require_idempotent(e)?;
        }
        Ok(Ideal::new_unchecked(
            self.idempotents()
                .iter()
                .copied()
                .filter(|&f| {
                    xs.iter().all(|&x| self.idem_leq(f, x)) && ys.iter().all(|&y| !self.meets(f, y))
                })
                .collect(),
        ))
    }

    /// `J_s = {e in E : e <= s}`, computed through `e = s e`.
    pub fn j_s(&self, s: usize) -> Ideal {
        Ideal::new_unchecked(
            self.idempotents().iter().copied().filter(|&e| self.mul(s, e) == e).collect(),
        )
    }

    /// Every nonzero member of `j` intersects some member of `c`.
    pub fn is_outer_cover(&self, c: &CoverCandidate, j: &Ideal) -> bool {
        self.outer_covers(c.members().iter().copied(), j.members().iter().copied())
    }

    /// An outer cover contained in `j`.
    pub fn is_cover(&self, c: &CoverCandidate, j: &Ideal) -> bool {
        c.members().is_subset(j.members()) && self.is_outer_cover(c, j)
    }

    pub(crate) fn outer_covers<C, J>(&self, c: C, j: J) -> bool
    where
        C: IntoIterator<Item = usize>,
        C::IntoIter: Clone,
        J: IntoIterator<Item = usize>,
    {
        let c = c.into_iter();
        j.into_iter()
            .filter(|&f| f != self.zero())
            .all(|f| c.clone().any(|x| self.meets(x, f)))
    }

    /// Outer-cover test for a principal ideal `J_e` without materializing it.
    pub(crate) fn outer_covers_idem(&self, c: &[usize], e: usize) -> bool {
        self.idempotents()
            .iter()
            .filter(|&&f| f != self.zero() && self.idem_leq(f, e))
            .all(|&f| c.iter().any(|&x| self.meets(x, f)))
    }

    /// The maximal nonzero members of `j`. Every nonzero member lies below one
    /// of them, so the result is always a cover; it is empty iff `j = {0}`.
    pub fn canonical_cover(&self, j: &Ideal) -> CoverCandidate {
        let zero = self.zero();
        let nonzero: Vec<usize> = j.members().iter().copied().filter(|&e| e != zero).collect();
        CoverCandidate::from_set(
            nonzero
                .iter()
                .copied()
                .filter(|&e| !nonzero.iter().any(|&f| f != e && self.idem_leq(e, f)))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // 0, a, b, 1 with ab = 0
    fn e4() -> InverseSemigroup {
        InverseSemigroup::from_table(
            &[vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 2, 2], vec![0, 1, 2, 3]],
            0,
        )
        .unwrap()
    }

    // 0, e11, e12, e21, e22
    fn b2() -> InverseSemigroup {
        let unit = |i: usize, j: usize| 1 + 2 * i + j;
        let mut rows = vec![vec![0; 5]; 5];
        for (i, j, k, l) in quadruples(2) {
            if j == k {
                rows[unit(i, j)][unit(k, l)] = unit(i, l);
            }
        }
        InverseSemigroup::from_table(&rows, 0).unwrap()
    }

    fn quadruples(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
        (0..n).flat_map(move |i| {
            (0..n).flat_map(move |j| (0..n).flat_map(move |k| (0..n).map(move |l| (i, j, k, l))))
        })
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    const A: usize = 1;
    const B: usize = 2;
    const ONE: usize = 3;

    #[test]
    fn principal_ideals() {
        let s = e4();
        assert_eq!(s.principal_ideal(0).unwrap().members(), &set(&[0]));
        assert_eq!(s.principal_ideal(ONE).unwrap().members(), &set(&[0, A, B, ONE]));
        let b2 = b2();
        assert_eq!(b2.principal_ideal(1).unwrap().members(), &set(&[0, 1]));
    }

    #[test]
    fn perps() {
        let s = e4();
        let zero = s.principal_ideal(0).unwrap();
        assert_eq!(s.ideal_perp(&zero).members(), &set(&[0, A, B, ONE]));
        assert_eq!(s.ideal_perp(&s.principal_ideal(A).unwrap()).members(), &set(&[0, B]));
        assert_eq!(s.ideal_perp(&s.principal_ideal(ONE).unwrap()).members(), &set(&[0]));
    }

    #[test]
    fn exy() {
        let s = e4();
        assert_eq!(s.exy_ideal(&[], &[]).unwrap().members(), &set(&[0, A, B, ONE]));
        assert_eq!(s.exy_ideal(&[ONE], &[A]).unwrap().members(), &set(&[0, B]));
        assert_eq!(s.exy_ideal(&[A], &[A]).unwrap().members(), &set(&[0]));
        assert!(s.exy_ideal(&[7], &[]).is_err());
    }

    #[test]
    fn j_s_of_idempotent_is_principal() {
        let s = e4();
        for &e in s.idempotents() {
            assert_eq!(s.j_s(e), s.principal_ideal(e).unwrap());
        }
    }

    #[test]
    fn cover_predicates() {
        let s = e4();
        let zero = s.principal_ideal(0).unwrap();
        let top = s.principal_ideal(ONE).unwrap();
        let ja = s.principal_ideal(A).unwrap();
        let c = |xs: &[usize]| CoverCandidate::new(&s, xs.iter().copied()).unwrap();
        assert!(s.is_cover(&c(&[]), &zero));
        assert!(s.is_cover(&c(&[A, B]), &top));
        assert!(!s.is_cover(&c(&[A]), &top));
        assert!(s.is_outer_cover(&c(&[ONE]), &ja));
        assert!(!s.is_cover(&c(&[ONE]), &ja));
    }

    #[test]
    fn canonical_covers() {
        let s = e4();
        assert!(s.canonical_cover(&s.principal_ideal(0).unwrap()).is_empty());
        assert_eq!(s.canonical_cover(&s.principal_ideal(ONE).unwrap()).members(), &set(&[ONE]));
        let j = s.exy_ideal(&[ONE], &[A]).unwrap();
        assert_eq!(s.canonical_cover(&j).members(), &set(&[B]));
    }

    #[test]
    fn ideal_validation() {
        let s = e4();
        assert!(Ideal::new(&s, set(&[0, A])).is_ok());
        assert_eq!(Ideal::new(&s, set(&[A])).unwrap_err(), Error::NotAnIdeal);
        assert_eq!(Ideal::new(&s, set(&[0, ONE])).unwrap_err(), Error::NotAnIdeal);
    }

    #[test]
    fn brandt_orthogonality() {
        let s = b2();
        assert!(s.orthogonal(1, 4).unwrap());
    }
}
