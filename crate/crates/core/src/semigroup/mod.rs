//! Finite inverse semigroups with zero, stored as dense multiplication tables.
//!
//! Elements are indices `0..n`. The involution `s*` and the idempotent
//! semilattice are computed once at validation time, so every predicate in the
//! rest of the crate is a finite scan over the table.

mod ideal;
mod partial;

pub use ideal::{CoverCandidate, Ideal};
pub use partial::PartialMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSemigroup {
    n: usize,
    /// Row-major `n * n` table: `mul[a * n + b] = a * b`.
    mul: Vec<usize>,
    zero: usize,
    star: Vec<usize>,
    idempotents: Vec<usize>,
    is_idem: Vec<bool>,
    labels: Vec<String>,
}

impl InverseSemigroup {
    /// Validates a multiplication table with a designated zero.
    ///
    /// Checks run in order: shape, associativity, existence and uniqueness of
    /// inverses, then the zero.
    pub fn from_table(rows: &[Vec<usize>], zero: usize) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        let mut mul = Vec::with_capacity(n * n);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::RaggedTable { row, len: entries.len(), expected: n });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(Error::EntryOutOfRange { row, col, value, n });
                }
                mul.push(value);
            }
        }
        if zero >= n {
            return Err(Error::ZeroOutOfRange { zero, n });
        }
        Self::from_flat(n, mul, zero)
    }

    /// Like [`from_table`](Self::from_table), but locates the zero itself.
    pub fn from_table_detect_zero(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let zero = (0..n)
            .find(|&z| (0..n).all(|s| rows[z].get(s) == Some(&z) && rows[s].get(z) == Some(&z)))
            .ok_or(Error::NoZero)?;
        Self::from_table(rows, zero)
    }

    fn from_flat(n: usize, mul: Vec<usize>, zero: usize) -> Result<Self> {
        let at = |a: usize, b: usize| mul[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }

        let mut star = Vec::with_capacity(n);
        for s in 0..n {
            let mut found = None;
            for t in 0..n {
                if at(at(s, t), s) == s && at(at(t, s), t) == t {
                    if found.is_some() {
                        return Err(Error::InverseNotUnique(s));
                    }
                    found = Some(t);
                }
            }
            star.push(found.ok_or(Error::InverseMissing(s))?);
        }

        for s in 0..n {
            if at(s, zero) != zero || at(zero, s) != zero {
                return Err(Error::ZeroNotAbsorbing(s));
            }
        }

        let is_idem: Vec<bool> = (0..n).map(|s| at(s, s) == s).collect();
        let idempotents: Vec<usize> = (0..n).filter(|&s| is_idem[s]).collect();
        debug_assert!(idempotents
            .iter()
            .all(|&e| idempotents.iter().all(|&f| at(e, f) == at(f, e))));

        Ok(Self {
            n,
            mul,
            zero,
            star,
            idempotents,
            is_idem,
            labels: (0..n).map(|i| i.to_string()).collect(),
        })
    }

    /// Replaces the display labels. Labels must be unique and nonempty.
    pub fn with_labels<I, S>(mut self, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n {
            return Err(Error::BadLabels(format!(
                "{} labels for {} elements",
                labels.len(),
                self.n
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if l.is_empty() || !seen.insert(l.as_str()) {
                return Err(Error::BadLabels(format!("empty or duplicate label {l:?}")));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// Number of elements, zero included.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    /// `a * b * c`
    #[inline]
    pub fn mul3(&self, a: usize, b: usize, c: usize) -> usize {
        self.mul(self.mul(a, b), c)
    }

    #[inline]
    pub fn star(&self, s: usize) -> usize {
        self.star[s]
    }

    /// `s* s`, the idempotent whose domain is the domain of `s`.
    pub fn source_idem(&self, s: usize) -> usize {
        self.mul(self.star[s], s)
    }

    /// `s s*`
    pub fn range_idem(&self, s: usize) -> usize {
        self.mul(s, self.star[s])
    }

    /// `s f s*`
    pub fn conjugate(&self, s: usize, f: usize) -> usize {
        self.mul3(s, f, self.star[s])
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.is_idem[s]
    }

    /// The idempotent semilattice, sorted by index. Always contains the zero.
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn nonzero_idempotents(&self) -> impl Iterator<Item = usize> + '_ {
        self.idempotents.iter().copied().filter(move |&e| e != self.zero)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The table as rows, for printing and dumping.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub(crate) fn require_idempotent(&self, e: usize) -> Result<()> {
        if e < self.n && self.is_idem[e] {
            Ok(())
        } else {
            Err(Error::NotIdempotent(e))
        }
    }

    /// Natural partial order: `s <= t` iff `s = t s* s`.
    pub fn nat_leq(&self, s: usize, t: usize) -> bool {
        s == self.mul3(t, self.star[s], s)
    }

    /// Order restricted to idempotents: `e <= f` iff `e = e f`.
    #[inline]
    pub fn idem_leq(&self, e: usize, f: usize) -> bool {
        self.mul(e, f) == e
    }

    pub fn meet(&self, e: usize, f: usize) -> Result<usize> {
        self.require_idempotent(e)?;
        self.require_idempotent(f)?;
        Ok(self.mul(e, f))
    }

    pub fn orthogonal(&self, e: usize, f: usize) -> Result<bool> {
        Ok(self.meet(e, f)? == self.zero)
    }

    pub fn intersects(&self, e: usize, f: usize) -> Result<bool> {
        Ok(!self.orthogonal(e, f)?)
    }

    /// Unchecked `e f != 0`, for idempotents already known to be valid.
    #[inline]
    pub(crate) fn meets(&self, e: usize, f: usize) -> bool {
        self.mul(e, f) != self.zero
    }

    /// True iff no non-idempotent element dominates a nonzero idempotent.
    pub fn is_e_star_unitary(&self) -> bool {
        self.elements()
            .filter(|&s| !self.is_idem[s])
            .all(|s| self.j_s(s).is_zero())
    }

    /// The 0-direct union: nonzero elements of `self` and `other` side by side,
    /// with every mixed product equal to the shared zero.
    ///
    /// Indices: the shared zero is 0, then the nonzero elements of `self` in
    /// order, then those of `other`.
    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let left: Vec<usize> = self.elements().filter(|&s| s != self.zero).collect();
        let right: Vec<usize> = other.elements().filter(|&s| s != other.zero).collect();
        let n = 1 + left.len() + right.len();
        let mut new_index_left = vec![0; self.n];
        for (i, &s) in left.iter().enumerate() {
            new_index_left[s] = 1 + i;
        }
        let mut new_index_right = vec![0; other.n];
        for (i, &s) in right.iter().enumerate() {
            new_index_right[s] = 1 + left.len() + i;
        }
        let mut rows = vec![vec![0; n]; n];
        for &a in &left {
            for &b in &left {
                rows[new_index_left[a]][new_index_left[b]] = new_index_left[self.mul(a, b)];
            }
        }
        for &a in &right {
            for &b in &right {
                rows[new_index_right[a]][new_index_right[b]] = new_index_right[other.mul(a, b)];
            }
        }
        let mut labels = vec!["0".to_string()];
        labels.extend(left.iter().map(|&s| format!("{}.L", self.label(s))));
        labels.extend(right.iter().map(|&s| format!("{}.R", other.label(s))));
        Self::from_table(&rows, 0)
            .and_then(|s| s.with_labels(labels))
            .expect("0-direct union of inverse semigroups is an inverse semigroup")
    }
}
