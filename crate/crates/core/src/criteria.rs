//! Algebraic criteria on `S` for properties of its tight groupoid, and the
//! report that pairs each criterion with the direct groupoid verdict.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::action::{standard_action, ContractionVerdict};
use crate::error::{Error, Result};
use crate::germs::build_germ_groupoid;
use crate::semigroup::InverseSemigroup;

/// Default bound on `|F|` for the bounded contraction search.
pub const DEFAULT_MAX_F: usize = 4;
/// Pools of at most this many idempotents are swept completely.
pub const FULL_SWEEP_POOL: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    pub s: usize,
    pub cover: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HausdorffCriterion {
    pub holds: bool,
    /// One cover of `J_s` per element `s`.
    pub covers: Vec<CoverWitness>,
}

/// An idempotent `e` weakly fixed by `s` without a cover of fixed idempotents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeaklyFixedWitness {
    pub s: usize,
    pub e: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopFreeCriterion {
    pub holds: bool,
    pub witness: Option<WeaklyFixedWitness>,
}

/// Conjugators `s` whose conjugates `s f s*` outer-cover `e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugateFamily {
    pub e: usize,
    pub f: usize,
    pub conjugators: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalCriterion {
    pub holds: bool,
    /// A pair `(e, f)` whose conjugate family does not outer-cover `e`.
    pub failure: Option<(usize, usize)>,
    pub families: Vec<ConjugateFamily>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionWitness {
    pub e: usize,
    pub s: usize,
    /// `F`, with `f_0` first.
    pub family: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocContrCriterion {
    pub holds: bool,
    /// No nonzero idempotents at all.
    pub vacuous: bool,
    /// First nonzero `e` admitting no `(s, F)`.
    pub failure: Option<usize>,
    pub witnesses: Vec<ContractionWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EasierWitness {
    pub e: usize,
    pub s: usize,
    pub f0: usize,
    pub f1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EasierCriterion {
    pub holds: bool,
    pub vacuous: bool,
    pub failure: Option<usize>,
    pub witnesses: Vec<EasierWitness>,
}

/// Outcome of the bounded contraction search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Holds,
    Fails,
    /// The size cap on `F` was reached without deciding.
    SearchCapExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerdictPair {
    pub criterion: bool,
    pub direct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CstarFlags {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub conclusions: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActionLevel {
    pub topologically_free: bool,
    pub irreducible: bool,
    pub locally_contracting: ContractionVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub hausdorff: VerdictPair,
    pub essentially_principal: VerdictPair,
    pub minimal: VerdictPair,
    pub locally_contracting: VerdictPair,
    pub e_star_unitary: bool,
    pub action_level: ActionLevel,
    pub groupoid_contraction: ContractionVerdict,
    pub hausdorff_witness: HausdorffCriterion,
    pub top_free_witness: TopFreeCriterion,
    pub minimal_witness: MinimalCriterion,
    pub locally_contracting_witness: LocContrCriterion,
    pub easier_locally_contracting: EasierCriterion,
    pub cstar_flags: CstarFlags,
    pub spectrum_size: usize,
    pub arrows: usize,
    pub units: usize,
}

/// Every `J_s` has a finite cover; its maximal nonzero members are one.
pub fn hausdorff_criterion(s: &InverseSemigroup) -> HausdorffCriterion {
    let mut holds = true;
    let mut covers = Vec::with_capacity(s.len());
    for t in s.elements() {
        let j = s.j_s(t);
        let cover = s.canonical_cover(&j);
        holds &= s.is_cover(&cover, &j);
        covers.push(CoverWitness { s: t, cover: cover.members().iter().copied().collect() });
    }
    HausdorffCriterion { holds, covers }
}

/// `e ≤ s*s` is weakly fixed by `s` when `(s f s*) f ≠ 0` for every nonzero `f ≤ e`.
pub fn weakly_fixed(semigroup: &InverseSemigroup, e: usize, s: usize) -> Result<bool> {
    semigroup.require_idempotent(e)?;
    if !semigroup.idem_leq(e, semigroup.source_idem(s)) {
        return Err(Error::PreconditionViolated(format!(
            "idempotent {e} is not below s*s for element {s}"
        )));
    }
    Ok(weakly_fixed_unchecked(semigroup, e, s))
}

fn weakly_fixed_unchecked(semigroup: &InverseSemigroup, e: usize, s: usize) -> bool {
    semigroup
        .nonzero_idempotents()
        .filter(|&f| semigroup.idem_leq(f, e))
        .all(|f| semigroup.meets(semigroup.conjugate(s, f), f))
}

/// For every `s` and every `e` weakly fixed by `s`, `J_e` has a finite cover
/// inside `J_e ∩ J_s`.
///
/// Covering is monotone in the candidate set, so it suffices to test the
/// whole of `J_e ∩ J_s`.
pub fn top_free_criterion(s: &InverseSemigroup) -> TopFreeCriterion {
    for t in s.elements() {
        let source = s.source_idem(t);
        let j_t = s.j_s(t);
        for e in s.nonzero_idempotents().filter(|&e| s.idem_leq(e, source)) {
            if !weakly_fixed_unchecked(s, e, t) {
                continue;
            }
            let fixed: Vec<usize> = j_t.members().iter().copied().filter(|&f| s.idem_leq(f, e)).collect();
            if !s.outer_covers_idem(&fixed, e) {
                return TopFreeCriterion { holds: false, witness: Some(WeaklyFixedWitness { s: t, e }) };
            }
        }
    }
    TopFreeCriterion { holds: true, witness: None }
}

/// For all nonzero `e, f`, the conjugates `{s f s* : s ∈ S}` outer-cover `e`.
///
/// The full conjugate family is the largest candidate; a greedy subfamily is
/// kept for the report.
pub fn minimal_criterion(s: &InverseSemigroup) -> MinimalCriterion {
    let mut families = Vec::new();
    for e in s.nonzero_idempotents() {
        for f in s.nonzero_idempotents() {
            match greedy_conjugators(s, e, f) {
                Some(conjugators) => families.push(ConjugateFamily { e, f, conjugators }),
                None => return MinimalCriterion { holds: false, failure: Some((e, f)), families },
            }
        }
    }
    MinimalCriterion { holds: true, failure: None, families }
}

fn greedy_conjugators(s: &InverseSemigroup, e: usize, f: usize) -> Option<Vec<usize>> {
    let mut uncovered: BTreeSet<usize> = s.nonzero_idempotents().filter(|&g| s.idem_leq(g, e)).collect();
    let conjugates: Vec<(usize, usize)> = s.elements().map(|t| (t, s.conjugate(t, f))).collect();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (t, hits) = conjugates
            .iter()
            .map(|&(t, c)| (t, uncovered.iter().filter(|&&g| s.meets(g, c)).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))?;
        if hits == 0 {
            return None;
        }
        let c = s.conjugate(t, f);
        uncovered.retain(|&g| !s.meets(g, c));
        chosen.push(t);
    }
    Some(chosen)
}

/// Nonzero idempotents below `e s*s`.
fn contraction_pool(s: &InverseSemigroup, e: usize, t: usize) -> Vec<usize> {
    let bound = s.mul(e, s.source_idem(t));
    s.nonzero_idempotents().filter(|&f| s.idem_leq(f, bound)).collect()
}

/// For every nonzero `e` there are `s` and `F = {f_0, ..., f_n}` with
/// `0 ≠ f_i ≤ e s*s`, `F` an outer cover of each `s f_i s*`, and
/// `f_0 s f_i = 0`.
///
/// For fixed `e, s, f_0` the admissible members are
/// `A = {f in the pool : f_0 s f = 0}`. A union of families satisfying the
/// cover condition satisfies it again, so there is a largest such family
/// inside `A`; it is found by repeatedly discarding members whose conjugate
/// is not outer-covered. A solution exists iff `f_0` survives.
pub fn locally_contracting_criterion(s: &InverseSemigroup) -> LocContrCriterion {
    let mut witnesses = Vec::new();
    let mut any = false;
    for e in s.nonzero_idempotents() {
        any = true;
        match contraction_for(s, e) {
            Some(w) => witnesses.push(w),
            None => return LocContrCriterion { holds: false, vacuous: false, failure: Some(e), witnesses },
        }
    }
    LocContrCriterion { holds: true, vacuous: !any, failure: None, witnesses }
}

fn contraction_for(s: &InverseSemigroup, e: usize) -> Option<ContractionWitness> {
    for t in s.elements() {
        let pool = contraction_pool(s, e, t);
        for &f0 in &pool {
            let mut family: Vec<usize> =
                pool.iter().copied().filter(|&f| s.mul3(f0, t, f) == s.zero()).collect();
            loop {
                let before = family.len();
                let current = family.clone();
                family.retain(|&f| s.outer_covers_idem(&current, s.conjugate(t, f)));
                if family.len() == before {
                    break;
                }
            }
            if family.contains(&f0) {
                family.retain(|&f| f != f0);
                family.insert(0, f0);
                return Some(ContractionWitness { e, s: t, family });
            }
        }
    }
    None
}

/// The same condition decided by enumerating families `F` directly.
///
/// `F` must lie in `A(f_0) = {f : f_0 s f = 0}`; when that set has at most
/// [`FULL_SWEEP_POOL`] members every subset is tried, otherwise only subsets
/// of size up to `max_f`, and an unsuccessful capped sweep is reported as
/// [`SearchOutcome::SearchCapExceeded`] rather than as a failure.
pub fn locally_contracting_search(s: &InverseSemigroup, max_f: usize) -> SearchOutcome {
    let mut capped = false;
    for e in s.nonzero_idempotents() {
        let mut found = false;
        'elements: for t in s.elements() {
            let pool = contraction_pool(s, e, t);
            for &f0 in &pool {
                let admissible: Vec<usize> =
                    pool.iter().copied().filter(|&f| f != f0 && s.mul3(f0, t, f) == s.zero()).collect();
                if s.mul3(f0, t, f0) != s.zero() {
                    continue;
                }
                let full = admissible.len() < FULL_SWEEP_POOL;
                let limit = if full { admissible.len() } else { max_f.saturating_sub(1) };
                if !full {
                    capped = true;
                }
                if search_families(s, t, f0, &admissible, limit) {
                    found = true;
                    break 'elements;
                }
            }
        }
        if !found {
            if capped {
                return SearchOutcome::SearchCapExceeded;
            }
            return SearchOutcome::Fails;
        }
        capped = false;
    }
    SearchOutcome::Holds
}

/// Tries `F = {f0} ∪ R` for every `R ⊆ rest` with `|R| ≤ limit`.
fn search_families(s: &InverseSemigroup, t: usize, f0: usize, rest: &[usize], limit: usize) -> bool {
    let mut family = vec![f0];
    fn go(
        s: &InverseSemigroup,
        t: usize,
        rest: &[usize],
        start: usize,
        limit: usize,
        family: &mut Vec<usize>,
    ) -> bool {
        if family.iter().all(|&f| s.outer_covers_idem(family, s.conjugate(t, f))) {
            return true;
        }
        if family.len() > limit {
            return false;
        }
        for i in start..rest.len() {
            family.push(rest[i]);
            if go(s, t, rest, i + 1, limit, family) {
                return true;
            }
            family.pop();
        }
        false
    }
    go(s, t, rest, 0, limit, &mut family)
}

/// For every nonzero `e` there are `s, f_0, f_1` with
/// `0 ≠ f_0 ≤ f_1 ≤ e s*s`, `s f_1 s* ≤ f_1` and `f_0 s f_1 = 0`.
pub fn easier_loc_contr_criterion(s: &InverseSemigroup) -> EasierCriterion {
    let mut witnesses = Vec::new();
    let mut any = false;
    for e in s.nonzero_idempotents() {
        any = true;
        let found = s.elements().find_map(|t| {
            let pool = contraction_pool(s, e, t);
            pool.iter()
                .copied()
                .filter(|&f1| s.idem_leq(s.conjugate(t, f1), f1))
                .find_map(|f1| {
                    pool.iter()
                        .copied()
                        .find(|&f0| s.idem_leq(f0, f1) && s.mul3(f0, t, f1) == s.zero())
                        .map(|f0| EasierWitness { e, s: t, f0, f1 })
                })
        });
        match found {
            Some(w) => witnesses.push(w),
            None => return EasierCriterion { holds: false, vacuous: false, failure: Some(e), witnesses },
        }
    }
    EasierCriterion { holds: true, vacuous: !any, failure: None, witnesses }
}

/// Tight groupoid both Hausdorff and essentially principal.
pub fn ess_principal_and_hausdorff_criterion(s: &InverseSemigroup) -> bool {
    hausdorff_criterion(s).holds && top_free_criterion(s).holds
}

fn cstar_flags(a: bool, b: bool, c: bool, d: bool) -> CstarFlags {
    let mut conclusions = vec![
        "countability of S and second countability of the groupoid hold since the instance is finite"
            .to_string(),
    ];
    if a && b {
        conclusions.push("a+b: the tight groupoid is Hausdorff and essentially principal".into());
    }
    if a && b && c {
        conclusions.push("a+b+c: the reduced C*-algebra of the tight groupoid is simple".into());
    }
    if a && b && c && d {
        conclusions.push("a+b+c+d: that algebra is moreover purely infinite".into());
    }
    if !(a && b && c) {
        conclusions.push("no simplicity conclusion: some of a, b, c fail".into());
    }
    CstarFlags { a, b, c, d, conclusions }
}

fn pair(property: &str, criterion: bool, direct: bool, s: &InverseSemigroup) -> Result<VerdictPair> {
    if criterion != direct {
        return Err(Error::TheoremViolation {
            property: property.to_string(),
            criterion,
            direct,
            detail: crate::frontend::parse::table_dump(s),
        });
    }
    Ok(VerdictPair { criterion, direct })
}

/// All criteria next to the direct verdicts on the tight groupoid. A
/// disagreement aborts with [`Error::TheoremViolation`].
pub fn full_report(s: &InverseSemigroup) -> Result<PropertyReport> {
    let spectrum = s.tight_spectrum()?;
    let theta = standard_action(s, &spectrum)?;
    let g = build_germ_groupoid(&theta)?;

    let hausdorff_witness = hausdorff_criterion(s);
    let top_free_witness = top_free_criterion(s);
    let minimal_witness = minimal_criterion(s);
    let locally_contracting_witness = locally_contracting_criterion(s);
    let easier_locally_contracting = easier_loc_contr_criterion(s);

    let groupoid_contraction = g.is_locally_contracting_groupoid()?;
    let action_level = ActionLevel {
        topologically_free: theta.is_topologically_free().holds,
        irreducible: theta.is_irreducible(),
        locally_contracting: theta.is_locally_contracting_action()?,
    };

    let hausdorff = pair("hausdorff", hausdorff_witness.holds, g.is_hausdorff_direct()?, s)?;
    let essentially_principal = pair(
        "essentially principal",
        top_free_witness.holds,
        g.is_essentially_principal(),
        s,
    )?;
    let minimal = pair("minimal", minimal_witness.holds, g.is_minimal_groupoid(), s)?;
    let locally_contracting = pair(
        "locally contracting",
        locally_contracting_witness.holds,
        groupoid_contraction.contracting,
        s,
    )?;
    pair(
        "locally contracting action",
        locally_contracting_witness.holds,
        action_level.locally_contracting.contracting,
        s,
    )?;

    let cstar_flags = cstar_flags(
        hausdorff.criterion,
        essentially_principal.criterion,
        minimal.criterion,
        locally_contracting.criterion,
    );
    Ok(PropertyReport {
        hausdorff,
        essentially_principal,
        minimal,
        locally_contracting,
        e_star_unitary: s.is_e_star_unitary(),
        action_level,
        groupoid_contraction,
        hausdorff_witness,
        top_free_witness,
        minimal_witness,
        locally_contracting_witness,
        easier_locally_contracting,
        cstar_flags,
        spectrum_size: spectrum.len(),
        arrows: g.len(),
        units: g.unit_count(),
    })
}
