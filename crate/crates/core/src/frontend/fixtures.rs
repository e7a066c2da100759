//! Named example semigroups and the standard parametrized families.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semigroup::{InverseSemigroup, PartialMap};

/// Size limits for the parametrized families.
#[derive(Debug, Clone, Copy)]
pub struct FixtureCaps {
    pub max_symmetric_degree: usize,
    pub max_brandt_degree: usize,
    pub max_cyclic_order: usize,
}

impl Default for FixtureCaps {
    fn default() -> Self {
        Self { max_symmetric_degree: 4, max_brandt_degree: 12, max_cyclic_order: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    /// Symmetric inverse monoid on `n` points.
    Symmetric(usize),
    /// Brandt semigroup of `n x n` matrix units plus zero.
    Brandt(usize),
    /// Cyclic group of order `n` with a zero adjoined.
    CyclicWithZero(usize),
    /// The four-element semilattice `{0, a, b, 1}` with `ab = 0`.
    E4,
    /// 0-direct union of two fixtures.
    Sum(Box<Fixture>, Box<Fixture>),
}

impl Fixture {
    pub fn build(&self) -> Result<InverseSemigroup> {
        self.build_with(&FixtureCaps::default())
    }

    pub fn build_with(&self, caps: &FixtureCaps) -> Result<InverseSemigroup> {
        match self {
            Fixture::Symmetric(n) => {
                check_cap("symmetric inverse monoid degree", *n, caps.max_symmetric_degree)?;
                Ok(symmetric_inverse_monoid(*n))
            }
            Fixture::Brandt(n) => {
                check_cap("Brandt degree", *n, caps.max_brandt_degree)?;
                Ok(brandt(*n))
            }
            Fixture::CyclicWithZero(n) => {
                check_cap("cyclic group order", *n, caps.max_cyclic_order)?;
                Ok(cyclic_group_with_zero(*n))
            }
            Fixture::E4 => Ok(e4()),
            Fixture::Sum(a, b) => Ok(a.build_with(caps)?.orthogonal_sum(&b.build_with(caps)?)),
        }
    }
}

fn check_cap(what: &str, value: usize, cap: usize) -> Result<()> {
    if value == 0 || value > cap {
        return Err(Error::CapExceeded { what: what.to_string(), value, cap });
    }
    Ok(())
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::Symmetric(n) => write!(f, "I{n}"),
            Fixture::Brandt(n) => write!(f, "B{n}"),
            Fixture::CyclicWithZero(n) => write!(f, "Z{n}z"),
            Fixture::E4 => f.write_str("E4"),
            Fixture::Sum(a, b) => write!(f, "{a}+{b}"),
        }
    }
}

impl FromStr for Fixture {
    type Err = Error;

    /// Accepts `I2`, `B2`, `Z2z`, `E4`, `In(n)`/`I<n>`, `Bn(n)`/`B<n>`,
    /// `Z<n>z`, and sums `A+B`.
    fn from_str(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownFixture(name.to_string());
        let name = name.trim();
        if let Some((a, b)) = name.split_once('+') {
            return Ok(Fixture::Sum(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        if name == "E4" {
            return Ok(Fixture::E4);
        }
        let number = |digits: &str| digits.parse::<usize>().map_err(|_| unknown());
        fn parenthesized(rest: &str) -> Option<&str> {
            rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).map(str::trim)
        }
        if let Some(rest) = name.strip_prefix("In") {
            return Ok(Fixture::Symmetric(number(parenthesized(rest).ok_or_else(unknown)?)?));
        }
        if let Some(rest) = name.strip_prefix("Bn") {
            return Ok(Fixture::Brandt(number(parenthesized(rest).ok_or_else(unknown)?)?));
        }
        if let Some(rest) = name.strip_prefix('I') {
            return Ok(Fixture::Symmetric(number(rest)?));
        }
        if let Some(rest) = name.strip_prefix('B') {
            return Ok(Fixture::Brandt(number(rest)?));
        }
        if let Some(rest) = name.strip_prefix('Z').and_then(|r| r.strip_suffix('z')) {
            return Ok(Fixture::CyclicWithZero(number(rest)?));
        }
        Err(unknown())
    }
}

/// Builds a fixture by name with default caps.
pub fn build_fixture(name: &str) -> Result<InverseSemigroup> {
    name.parse::<Fixture>()?.build()
}

/// `sum_k C(n,k)^2 k!`
pub fn symmetric_inverse_monoid_order(n: usize) -> usize {
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    let fact = |k: usize| (1..=k).product::<usize>();
    (0..=n).map(|k| binom(n, k).pow(2) * fact(k)).sum()
}

/// All partial injections of `{0..n}`, generated as a closure so that element
/// order and labels follow the partial-map convention.
pub fn symmetric_inverse_monoid(n: usize) -> InverseSemigroup {
    let mut maps = Vec::new();
    let mut images = vec![None; n];
    let mut used = vec![false; n];
    all_partial_injections(0, &mut images, &mut used, &mut maps);
    let (s, _) = InverseSemigroup::from_partial_maps(n, &maps)
        .expect("partial injections generate an inverse semigroup");
    assert_eq!(s.len(), symmetric_inverse_monoid_order(n));
    s
}

fn all_partial_injections(
    point: usize,
    images: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    out: &mut Vec<PartialMap>,
) {
    if point == images.len() {
        out.push(PartialMap::new(images.clone()));
        return;
    }
    images[point] = None;
    all_partial_injections(point + 1, images, used, out);
    for y in 0..images.len() {
        if !used[y] {
            used[y] = true;
            images[point] = Some(y);
            all_partial_injections(point + 1, images, used, out);
            used[y] = false;
        }
    }
    images[point] = None;
}

/// Matrix units `e_ij` (1-based labels) at index `1 + n*i + j`, zero at 0.
pub fn brandt(n: usize) -> InverseSemigroup {
    let size = n * n + 1;
    let unit = |i: usize, j: usize| 1 + n * i + j;
    let mut rows = vec![vec![0; size]; size];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                rows[unit(i, j)][unit(j, l)] = unit(i, l);
            }
        }
    }
    let mut labels = vec!["0".to_string()];
    for i in 0..n {
        for j in 0..n {
            labels.push(if n < 10 { format!("e{}{}", i + 1, j + 1) } else { format!("e{}_{}", i + 1, j + 1) });
        }
    }
    let s = InverseSemigroup::from_table(&rows, 0)
        .and_then(|s| s.with_labels(labels))
        .expect("matrix units form an inverse semigroup");
    assert_eq!(s.len(), n * n + 1);
    s
}

/// `Z/n` with a zero adjoined: zero at 0, `g^k` at `1 + k`. Labels `0, 1, g, g2, ...`.
pub fn cyclic_group_with_zero(n: usize) -> InverseSemigroup {
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let labels = (0..n).map(|k| match k {
        0 => "1".to_string(),
        1 => "g".to_string(),
        k => format!("g{k}"),
    });
    group_with_zero(&table, labels).expect("cyclic groups are groups")
}

/// Adjoins a zero to a finite group given by its Cayley table. The zero
/// becomes index 0 and group element `k` becomes `k + 1`.
pub fn group_with_zero<I, S>(table: &[Vec<usize>], labels: I) -> Result<InverseSemigroup>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let n = table.len();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| table[e].get(g) == Some(&g) && table[g].get(e) == Some(&g)))
        .ok_or_else(|| Error::PreconditionViolated("group table has no identity".into()))?;
    for (g, row) in table.iter().enumerate() {
        if !row.contains(&identity) {
            return Err(Error::PreconditionViolated(format!("group element {g} has no inverse")));
        }
    }
    let mut rows = vec![vec![0; n + 1]; n + 1];
    for a in 0..n {
        for b in 0..n {
            rows[a + 1][b + 1] = table[a][b] + 1;
        }
    }
    let mut all_labels = vec!["0".to_string()];
    all_labels.extend(labels.into_iter().map(Into::into));
    let s = InverseSemigroup::from_table(&rows, 0)?.with_labels(all_labels)?;
    assert_eq!(s.len(), n + 1);
    Ok(s)
}

/// `{0, a, b, 1}` with `ab = 0`, at indices 0..4.
pub fn e4() -> InverseSemigroup {
    InverseSemigroup::from_table(
        &[vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 2, 2], vec![0, 1, 2, 3]],
        0,
    )
    .and_then(|s| s.with_labels(["0", "a", "b", "1"]))
    .expect("E4 is a semilattice with zero")
}

pub fn i2() -> InverseSemigroup {
    symmetric_inverse_monoid(2)
}

pub fn b2() -> InverseSemigroup {
    brandt(2)
}

pub fn z2z() -> InverseSemigroup {
    cyclic_group_with_zero(2)
}
