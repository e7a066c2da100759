//! Instance-wide consistency checks: each criterion against its direct
//! counterpart, plus the set identities relating idempotents, domains,
//! slices and fixed points.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{standard_action, FiniteAction, NonContraction};
use crate::criteria::{
    easier_loc_contr_criterion, ess_principal_and_hausdorff_criterion, full_report,
    locally_contracting_search, minimal_criterion, top_free_criterion, weakly_fixed,
    PropertyReport, SearchOutcome, DEFAULT_MAX_F,
};
use crate::error::Result;
use crate::germs::{build_germ_groupoid, GermGroupoid};
use crate::semigroup::{CoverCandidate, Ideal, InverseSemigroup};

/// Instances with at most this many idempotents get every candidate cover.
pub const ALL_COVERS_LIMIT: usize = 8;
/// Groupoid axioms are checked exhaustively up to this many arrows.
pub const AXIOM_ARROW_LIMIT: usize = 2000;
/// The bounded contraction search runs when `|E|` is at most this.
pub const SEARCH_IDEMPOTENT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Number of individual cases examined.
    pub cases: usize,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarnessSummary {
    pub checks: Vec<CheckOutcome>,
    #[serde(skip)]
    pub report: PropertyReport,
}

impl HarnessSummary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Recorder {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Recorder {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failure: None }
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome { name: self.name, passed: self.failure.is_none(), cases: self.cases, detail: self.failure }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    /// Bound on `|F|` for the bounded contraction search.
    pub max_f: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self { max_f: DEFAULT_MAX_F }
    }
}

impl HarnessConfig {
    /// Default configuration, with `max_f` taken from `ISG_MAX_F` when set.
    pub fn from_env() -> Self {
        let max_f = std::env::var("ISG_MAX_F").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_F);
        Self { max_f }
    }
}

/// Runs every check on `s`. Verdict-pair disagreements surface as errors from
/// [`full_report`]; the identities are collected in the summary.
pub fn check_instance(s: &InverseSemigroup) -> Result<HarnessSummary> {
    check_instance_with(s, HarnessConfig::default())
}

pub fn check_instance_with(s: &InverseSemigroup, config: HarnessConfig) -> Result<HarnessSummary> {
    let report = full_report(s)?;
    let spectrum = s.tight_spectrum()?;
    let theta = standard_action(s, &spectrum)?;
    let g = build_germ_groupoid(&theta)?;

    let checks = vec![
        weakly_fixed_vs_fixed_points(s, &theta),
        covers_vs_domains(s, &theta),
        trivial_germs_in_slice(s, &g),
        conjugated_domains(s, &theta),
        ultrafilter_preservation(s),
        top_free_three_way(s, &theta),
        tight_equals_ultra(s),
        implications(s, &theta),
        groupoid_axioms(&g),
        equivalences(s, &theta, &g, &report),
        germ_structure(s, &g),
        contraction(s, &theta, &g, &report, config),
        characters(s),
    ];
    Ok(HarnessSummary { checks, report })
}

/// `e ≤ s*s` is weakly fixed by `s` iff every point of `D_e` is fixed by `θ_s`.
fn weakly_fixed_vs_fixed_points(s: &InverseSemigroup, theta: &FiniteAction<'_>) -> CheckOutcome {
    let mut r = Recorder::new("weakly_fixed_vs_fixed_points");
    for t in s.elements() {
        let fixed = theta.fixed_points(t);
        for &e in s.idempotents().iter().filter(|&&e| s.idem_leq(e, s.source_idem(t))) {
            let algebraic = weakly_fixed(s, e, t).expect("e is below s*s");
            let dynamic = theta.domain(e).is_subset(&fixed);
            r.case(algebraic == dynamic, || format!("s={t} e={e}: weakly fixed {algebraic}, D_e fixed {dynamic}"));
        }
    }
    r.finish()
}

fn candidate_covers(s: &InverseSemigroup, j: &Ideal, rng: &mut ChaCha8Rng) -> Vec<BTreeSet<usize>> {
    let idems = s.idempotents();
    if idems.len() <= ALL_COVERS_LIMIT {
        return (0u32..1 << idems.len())
            .map(|mask| (0..idems.len()).filter(|i| mask & (1 << i) != 0).map(|i| idems[i]).collect())
            .collect();
    }
    let mut out: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    out.push(j.members().clone());
    out.push(s.canonical_cover(j).members().clone());
    out.extend(idems.iter().map(|&e| BTreeSet::from([e])));
    for _ in 0..24 {
        let size = rng.random_range(1..=4.min(idems.len()));
        out.push(idems.choose_multiple(rng, size).copied().collect());
        let inside: Vec<usize> = j.members().iter().copied().collect();
        let size = rng.random_range(0..=inside.len().min(4));
        out.push(inside.choose_multiple(rng, size).copied().collect());
    }
    out
}

/// `C` outer-covers `J` iff `D_J ⊆ D_C`; for `C ⊆ J`, `C` covers `J` iff they are equal.
fn covers_vs_domains(s: &InverseSemigroup, theta: &FiniteAction<'_>) -> CheckOutcome {
    let mut r = Recorder::new("covers_vs_domains");
    let mut rng = ChaCha8Rng::seed_from_u64(s.len() as u64);
    let mut ideals: Vec<Ideal> = Vec::new();
    for e in s.nonzero_idempotents() {
        let je = s.principal_ideal(e).expect("idempotent");
        ideals.push(s.ideal_perp(&je));
        ideals.push(je);
    }
    ideals.extend(s.elements().map(|t| s.j_s(t)));
    ideals.sort();
    ideals.dedup();
    for j in &ideals {
        let d_j = theta.union_of_domains(j.members().iter().copied());
        for c in candidate_covers(s, j, &mut rng) {
            let d_c = theta.union_of_domains(c.iter().copied());
            let cand = CoverCandidate::new(s, c.iter().copied()).expect("idempotents");
            let outer = s.is_outer_cover(&cand, j);
            r.case(outer == d_j.is_subset(&d_c), || format!("outer cover {c:?} of {:?}", j.members()));
            if c.is_subset(j.members()) {
                let cover = s.is_cover(&cand, j);
                r.case(cover == (d_j == d_c), || format!("cover {c:?} of {:?}", j.members()));
            }
        }
    }
    r.finish()
}

/// `Θ(s, D_{s*s}) ∩ G⁽⁰⁾ = Θ(s, X_s)`, with units found by class comparison.
fn trivial_germs_in_slice(s: &InverseSemigroup, g: &GermGroupoid<'_>) -> CheckOutcome {
    let mut r = Recorder::new("trivial_germs_in_slice");
    let theta = g.action();
    for t in s.elements() {
        let unit_points: BTreeSet<usize> = theta
            .domain(t)
            .into_iter()
            .filter(|&x| g.germ(t, x) == Some(g.unit(x)))
            .collect();
        r.case(unit_points == theta.x_alpha_s(t), || format!("s={t}: {unit_points:?}"));
    }
    r.finish()
}

/// `θ_s(D_f ∩ D_{s*s}) = D_{sfs*}`.
fn conjugated_domains(s: &InverseSemigroup, theta: &FiniteAction<'_>) -> CheckOutcome {
    let mut r = Recorder::new("conjugated_domains");
    for t in s.elements() {
        for &f in s.idempotents() {
            let image = theta.image(t, &theta.domain(f));
            r.case(image == theta.domain(s.conjugate(t, f)), || format!("s={t} f={f}"));
        }
    }
    r.finish()
}

/// Ultrafilters in `D_{s*s}` are mapped to ultrafilters, and both ways of
/// acting on filters agree.
fn ultrafilter_preservation(s: &InverseSemigroup) -> CheckOutcome {
    let mut r = Recorder::new("ultrafilter_preservation");
    let filters = s.all_filters().unwrap_or_default();
    for t in s.elements() {
        for f in &filters {
            let image = s.act_on_filter(t, f);
            r.case(image == s.act_on_filter_by_members(t, f), || format!("s={t} on ↑{}", f.min()));
            if s.is_ultrafilter(f) {
                if let Some(image) = image {
                    r.case(s.is_ultrafilter(&image), || format!("s={t} on ↑{}", f.min()));
                }
            }
        }
    }
    r.finish()
}

/// Topological freeness of `θ`, the fixed-cover criterion, and the
/// ultrafilter formulation all agree.
fn top_free_three_way(s: &InverseSemigroup, theta: &FiniteAction<'_>) -> CheckOutcome {
    let mut r = Recorder::new("top_free_three_way");
    let action_level = theta.is_topologically_free().holds;
    let criterion = top_free_criterion(s).holds;
    let ultra = ultrafilter_condition(s);
    r.case(action_level == criterion && criterion == ultra, || {
        format!("action {action_level}, criterion {criterion}, ultrafilters {ultra}")
    });
    let free = theta.is_free().holds;
    r.case(free == action_level, || format!("free {free}, topologically free {action_level}"));
    r.finish()
}

/// Every ultrafilter fixed by `s` contains an idempotent `e` with `se = e`.
fn ultrafilter_condition(s: &InverseSemigroup) -> bool {
    let ultras = s.ultrafilters().unwrap_or_default();
    s.elements().all(|t| {
        let j_t = s.j_s(t);
        ultras.iter().all(|xi| {
            s.act_on_filter(t, xi).as_ref() != Some(xi) || j_t.members().iter().any(|&e| xi.contains(e))
        })
    })
}

fn tight_equals_ultra(s: &InverseSemigroup) -> CheckOutcome {
    let mut r = Recorder::new("tight_equals_ultra");
    let tight: Vec<usize> = s.tight_spectrum().map(|t| t.points().iter().map(|f| f.min()).collect()).unwrap_or_default();
    let ultra: Vec<usize> = s.ultrafilters().unwrap_or_default().iter().map(|f| f.min()).collect();
    r.case(tight == ultra, || format!("tight {tight:?}, ultra {ultra:?}"));
    for f in &s.all_filters().unwrap_or_default() {
        r.case(s.is_ultrafilter(f) == s.is_ultrafilter_by_intersection(f), || format!("↑{}", f.min()));
    }
    r.finish()
}

fn implications(s: &InverseSemigroup, theta: &FiniteAction<'_>) -> CheckOutcome {
    let mut r = Recorder::new("implications");
    let hausdorff = crate::criteria::hausdorff_criterion(s).holds;
    r.case(!s.is_e_star_unitary() || hausdorff, || "E*-unitary but not Hausdorff".into());
    for t in s.elements() {
        for &e in s.idempotents().iter().filter(|&&e| s.idem_leq(e, s.source_idem(t))) {
            if s.mul(t, e) == e {
                r.case(weakly_fixed(s, e, t).expect("e below s*s"), || format!("s={t} fixes {e}"));
            }
        }
        let (trivial, fixed) = (theta.trivial_fixed_points(t), theta.fixed_points(t));
        r.case(trivial.is_subset(&fixed), || format!("TF_s ⊄ F_s at s={t}"));
    }
    let easier = easier_loc_contr_criterion(s).holds;
    let main = crate::criteria::locally_contracting_criterion(s).holds;
    r.case(!easier || main, || "easier contraction criterion holds but main fails".into());
    if s.is_e_star_unitary() {
        let no_fixed = s
            .elements()
            .filter(|&t| !s.is_idempotent(t))
            .all(|t| theta.fixed_points(t).is_empty());
        r.case(theta.is_free().holds == no_fixed, || "E*-unitary freeness".into());
        let nontrivial = s
            .elements()
            .filter(|&t| !s.is_idempotent(t))
            .all(|t| theta.trivial_fixed_points(t).is_empty());
        r.case(nontrivial, || "non-idempotent with trivial fixed points".into());
    }
    r.finish()
}

fn groupoid_axioms(g: &GermGroupoid<'_>) -> CheckOutcome {
    let mut r = Recorder::new("groupoid_axioms");
    if g.len() <= AXIOM_ARROW_LIMIT {
        let result = g.check_groupoid_axioms();
        r.case(result.is_ok(), || format!("{result:?}"));
    }
    r.finish()
}

fn equivalences(
    s: &InverseSemigroup,
    theta: &FiniteAction<'_>,
    g: &GermGroupoid<'_>,
    report: &PropertyReport,
) -> CheckOutcome {
    let mut r = Recorder::new("equivalences");
    r.case(g.is_essentially_principal() == theta.is_topologically_free().holds, || {
        "essentially principal vs topologically free".into()
    });
    r.case(theta.is_free() == theta.is_topologically_free(), || "free vs topologically free".into());
    r.case(g.is_principal() == g.is_essentially_principal(), || "principal vs essentially principal".into());
    let all_isotropy_trivial = (0..g.unit_count()).all(|x| g.isotropy_group(x).len() == 1);
    r.case(all_isotropy_trivial == g.is_essentially_principal(), || "trivial isotropy".into());
    let minimal = minimal_criterion(s).holds;
    r.case(minimal == theta.is_irreducible() && minimal == g.is_minimal_groupoid(), || {
        "minimal criterion vs irreducible vs minimal groupoid".into()
    });
    let both = g.is_hausdorff_direct().unwrap_or(false) && g.is_essentially_principal();
    r.case(ess_principal_and_hausdorff_criterion(s) == both, || "Hausdorff and essentially principal".into());
    r.case(report.hausdorff.criterion == report.hausdorff.direct, || "hausdorff pair".into());
    r.finish()
}

fn germ_structure(s: &InverseSemigroup, g: &GermGroupoid<'_>) -> CheckOutcome {
    let mut r = Recorder::new("germ_structure");
    let theta = g.action();
    for x in theta.points() {
        for &e in s.idempotents().iter().filter(|&&e| theta.in_domain(e, x)) {
            r.case(g.germ(e, x) == Some(g.unit(x)), || format!("unit at {x} depends on e={e}"));
        }
        r.case(g.src(g.unit(x)) == x && g.rng(g.unit(x)) == x, || format!("unit at {x}"));
    }
    r.case(g.units().len() == g.unit_count(), || "units not injective".into());
    for t in s.elements() {
        for x in theta.domain(t) {
            let a = g.germ(t, x).expect("in domain");
            r.case(theta.apply(t, x) == Some(g.rng(a)) && g.src(a) == x, || format!("germ of ({t}, {x})"));
        }
        let slice = g.theta_slice(t, &theta.domain(t)).expect("domain slice");
        r.case(g.is_bisection(&slice), || format!("slice of {t} is not a bisection"));
    }
    r.finish()
}

fn contraction(
    s: &InverseSemigroup,
    theta: &FiniteAction<'_>,
    g: &GermGroupoid<'_>,
    report: &PropertyReport,
    config: HarnessConfig,
) -> CheckOutcome {
    let mut r = Recorder::new("no_finite_contraction");
    let obstruction = Some(NonContraction::CardinalityObstruction);
    for verdict in [report.action_level.locally_contracting, report.groupoid_contraction] {
        r.case(!verdict.contracting && verdict.reason == obstruction && verdict.exhaustive != Some(true), || {
            format!("{verdict:?}")
        });
    }
    r.case(!report.locally_contracting.criterion, || "criterion holds on a finite instance".into());
    if s.idempotents().len() <= SEARCH_IDEMPOTENT_LIMIT {
        let search = locally_contracting_search(s, config.max_f);
        r.case(search == SearchOutcome::Fails, || format!("bounded search: {search:?}"));
    }
    r.case(theta.carrier_len() == g.unit_count(), || "units vs carrier".into());
    r.finish()
}

fn characters(s: &InverseSemigroup) -> CheckOutcome {
    let mut r = Recorder::new("characters");
    for f in &s.all_filters().unwrap_or_default() {
        let c = s.char_of(f);
        r.case(s.filter_of(&c).as_ref() == Ok(f), || format!("round trip at ↑{}", f.min()));
        for t in s.elements() {
            let by_filter = s.act_on_filter(t, f).map(|image| s.char_of(&image));
            let by_character = s.beta_on_character(t, &c).ok();
            r.case(by_filter == by_character, || format!("s={t} on ↑{}", f.min()));
        }
    }
    r.finish()
}
