//! Brute-force oracles that work from the multiplication table alone.
//!
//! Nothing here calls into the library beyond `mul`, `len` and `zero`, so the
//! values they produce are independent of the code under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use isg_core::frontend::corpus::generate_corpus;
use isg_core::frontend::fixtures::{b2, e4, i2, z2z};
use isg_core::InverseSemigroup;

pub type Set = BTreeSet<usize>;

pub fn fixtures() -> Vec<(&'static str, InverseSemigroup)> {
    vec![("I2", i2()), ("B2", b2()), ("Z2z", z2z()), ("E4", e4())]
}

/// Fixtures followed by `count` corpus instances for `seed`.
pub fn instances(seed: u64, count: usize) -> Vec<(String, InverseSemigroup)> {
    let mut out: Vec<(String, InverseSemigroup)> =
        fixtures().into_iter().map(|(n, s)| (n.to_string(), s)).collect();
    out.extend(generate_corpus(seed, count).into_iter().map(|c| (c.spec.name, c.semigroup)));
    out
}

pub fn idempotents(s: &InverseSemigroup) -> Vec<usize> {
    (0..s.len()).filter(|&a| s.mul(a, a) == a).collect()
}

pub fn leq(s: &InverseSemigroup, e: usize, f: usize) -> bool {
    s.mul(e, f) == e
}

/// The unique `u` with `t u t = t` and `u t u = u`.
pub fn inverse(s: &InverseSemigroup, t: usize) -> usize {
    let found: Vec<usize> =
        (0..s.len()).filter(|&u| s.mul(s.mul(t, u), t) == t && s.mul(s.mul(u, t), u) == u).collect();
    assert_eq!(found.len(), 1, "element {t} must have exactly one inverse");
    found[0]
}

pub fn subsets(items: &[usize]) -> std::vec::IntoIter<Set> {
    assert!(items.len() < 24);
    (0u32..1 << items.len())
        .map(|mask| (0..items.len()).filter(|i| mask & (1 << i) != 0).map(|i| items[i]).collect())
        .collect::<Vec<Set>>()
        .into_iter()
}

pub fn is_filter(s: &InverseSemigroup, set: &Set) -> bool {
    let idems = idempotents(s);
    !set.is_empty()
        && !set.contains(&s.zero())
        && set.iter().all(|&e| set.iter().all(|&f| set.contains(&s.mul(e, f))))
        && set.iter().all(|&e| idems.iter().all(|&f| !leq(s, e, f) || set.contains(&f)))
}

/// Every subset of `E` passing the filter axioms.
pub fn filters(s: &InverseSemigroup) -> Vec<Set> {
    let idems = idempotents(s);
    subsets(&idems).filter(|c| is_filter(s, c)).collect()
}

pub fn ultrafilters(s: &InverseSemigroup) -> Vec<Set> {
    let all = filters(s);
    all.iter()
        .filter(|f| !all.iter().any(|g| g != *f && f.is_subset(g)))
        .cloned()
        .collect()
}

/// `E^{X,Y} = {z : z ≤ x for x ∈ X, z y = 0 for y ∈ Y}`.
pub fn exy(s: &InverseSemigroup, xs: &Set, ys: &Set) -> Set {
    idempotents(s)
        .into_iter()
        .filter(|&z| xs.iter().all(|&x| leq(s, z, x)) && ys.iter().all(|&y| s.mul(z, y) == s.zero()))
        .collect()
}

/// `Z ⊆ I` and every nonzero member of `I` meets a member of `Z`.
pub fn is_cover(s: &InverseSemigroup, z: &Set, ideal: &Set) -> bool {
    z.is_subset(ideal)
        && ideal
            .iter()
            .filter(|&&w| w != s.zero())
            .all(|&w| z.iter().any(|&c| s.mul(c, w) != s.zero()))
}

/// Tightness by sweeping every `X, Y ⊆ E` and every `Z ⊆ E`.
pub fn is_tight_literal(s: &InverseSemigroup, xi: &Set) -> bool {
    let idems = idempotents(s);
    for xs in subsets(&idems) {
        if !xs.is_subset(xi) {
            continue;
        }
        for ys in subsets(&idems) {
            if !ys.is_disjoint(xi) {
                continue;
            }
            let ideal = exy(s, &xs, &ys);
            let members: Vec<usize> = ideal.iter().copied().collect();
            for z in subsets(&members) {
                if is_cover(s, &z, &ideal) && z.is_disjoint(xi) {
                    return false;
                }
            }
        }
    }
    true
}

/// `↑{t e t* : e ∈ ξ}` when `t*t ∈ ξ`.
pub fn act(s: &InverseSemigroup, t: usize, xi: &Set) -> Option<Set> {
    let star = inverse(s, t);
    if !xi.contains(&s.mul(star, t)) {
        return None;
    }
    let conj: Set = xi.iter().map(|&e| s.mul(s.mul(t, e), star)).collect();
    Some(
        idempotents(s)
            .into_iter()
            .filter(|&f| conj.iter().any(|&c| leq(s, c, f)))
            .collect(),
    )
}

/// The groupoid of germs of the action on `points`, built from the germ
/// relation itself without union-find.
pub struct OracleGroupoid {
    pub points: Vec<Set>,
    /// Class id of each `(t, x)` in `Ω`.
    pub class: HashMap<(usize, usize), usize>,
    pub src: Vec<usize>,
    pub rng: Vec<usize>,
    pub units: Set,
}

impl OracleGroupoid {
    pub fn arrows(&self) -> usize {
        self.src.len()
    }

    pub fn is_principal(&self) -> bool {
        (0..self.arrows()).filter(|&a| self.src[a] == self.rng[a]).all(|a| self.units.contains(&a))
    }

    /// One orbit of units under arrows.
    pub fn is_minimal(&self) -> bool {
        let mut reached = Set::from([0]);
        loop {
            let before = reached.len();
            for a in 0..self.arrows() {
                if reached.contains(&self.src[a]) || reached.contains(&self.rng[a]) {
                    reached.insert(self.src[a]);
                    reached.insert(self.rng[a]);
                }
            }
            if reached.len() == before {
                return reached.len() == self.points.len();
            }
        }
    }

    /// Searches every nonempty `U`, `V ⊆ U` and bisection `S` for
    /// `V ⊆ d(S)` and `r(S|V) ⊊ V`.
    pub fn is_locally_contracting(&self) -> bool {
        let n = self.arrows();
        let m = self.points.len();
        assert!(n <= 12 && m <= 12);
        let bisections: Vec<Vec<usize>> = (1u32..1 << n)
            .map(|mask| (0..n).filter(|a| mask & (1 << a) != 0).collect::<Vec<usize>>())
            .filter(|b: &Vec<usize>| {
                let srcs: Set = b.iter().map(|&a| self.src[a]).collect();
                let rngs: Set = b.iter().map(|&a| self.rng[a]).collect();
                srcs.len() == b.len() && rngs.len() == b.len()
            })
            .collect();
        let points: Vec<usize> = (0..m).collect();
        subsets(&points).filter(|u| !u.is_empty()).all(|u| {
            let u_items: Vec<usize> = u.iter().copied().collect();
            subsets(&u_items).filter(|v| !v.is_empty()).any(|v| {
                bisections.iter().any(|b| {
                    let sources: Set = b.iter().map(|&a| self.src[a]).collect();
                    let image: Set = b.iter().filter(|&&a| v.contains(&self.src[a])).map(|&a| self.rng[a]).collect();
                    v.is_subset(&sources) && image.is_subset(&v) && image != v
                })
            })
        })
    }
}

pub fn germ_groupoid(s: &InverseSemigroup, points: &[Set]) -> OracleGroupoid {
    let idems = idempotents(s);
    let index = |f: &Set| points.iter().position(|p| p == f).expect("action stays in the carrier");
    let omega: Vec<(usize, usize)> = (0..s.len())
        .flat_map(|t| (0..points.len()).map(move |x| (t, x)))
        .filter(|&(t, x)| act(s, t, &points[x]).is_some())
        .collect();
    let related = |(t, x): (usize, usize), (u, y): (usize, usize)| {
        x == y && idems.iter().any(|&e| points[x].contains(&e) && s.mul(t, e) == s.mul(u, e))
    };
    for &a in &omega {
        for &b in &omega {
            assert_eq!(related(a, b), related(b, a), "germ relation is symmetric");
            if related(a, b) {
                for &c in &omega {
                    if related(b, c) {
                        assert!(related(a, c), "germ relation is transitive");
                    }
                }
            }
        }
    }
    let mut class = HashMap::new();
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for &p in &omega {
        let id = match reps.iter().position(|&r| related(r, p)) {
            Some(id) => id,
            None => {
                reps.push(p);
                reps.len() - 1
            }
        };
        class.insert(p, id);
    }
    let src: Vec<usize> = reps.iter().map(|&(_, x)| x).collect();
    let rng: Vec<usize> = reps.iter().map(|&(t, x)| index(&act(s, t, &points[x]).unwrap())).collect();
    let units: Set = omega.iter().filter(|&&(t, _)| s.mul(t, t) == t).map(|p| class[p]).collect();
    OracleGroupoid { points: points.to_vec(), class, src, rng, units }
}

/// Tight filters found by the literal sweep.
pub fn tight_filters(s: &InverseSemigroup) -> Vec<Set> {
    filters(s).into_iter().filter(|f| is_tight_literal(s, f)).collect()
}
