//! Registry of the twelve headline claims the toolkit can verify exactly.
//! Each claim pairs a mathematical statement with a runner that either
//! confirms it against freshly built objects or reports the first
//! discrepancy. Runners share a lazily built corpus of the standard family
//! outputs so a full run enumerates each group once.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;

use crate::cyclo::{rational, Rational};
use crate::families;
use crate::rep::Representation;
use crate::report::analysis_prime;
use crate::stiefel::{
    bott_order, chi_tor, chi_tor_composite, cone_homology, coprime_to_lower_factorial,
    poincare_series, product_homology, sphere_dims, propagation_report, two_sphere_necessity,
    IntPolynomial, Tier,
};

type ClaimResult = std::result::Result<String, String>;

/// Every standard family output with order at most 625 at p in {3, 5}.
pub const FAMILY_KEYS: [&str; 11] = [
    "heisenberg-3",
    "heisenberg-5",
    "modular-3-3",
    "modular-3-4",
    "modular-5-3",
    "modular-5-4",
    "excep2-5-4",
    "excep3-5-4-1",
    "excep3-5-4-2",
    "gp-3",
    "wreath-3",
];

fn build_family(key: &str) -> crate::Result<Representation> {
    match key {
        "heisenberg-3" => families::heisenberg(3),
        "heisenberg-5" => families::heisenberg(5),
        "modular-3-3" => families::modular_metacyclic(3, 3),
        "modular-3-4" => families::modular_metacyclic(3, 4),
        "modular-5-3" => families::modular_metacyclic(5, 3),
        "modular-5-4" => families::modular_metacyclic(5, 4),
        "excep2-5-4" => families::exceptional_family_two(5, 4),
        "excep3-5-4-1" => families::exceptional_family_three(5, 4, 1),
        "excep3-5-4-2" => families::exceptional_family_three(5, 4, 2),
        "gp-3" => families::g_p(3),
        "wreath-3" => families::wreath(3),
        other => Err(crate::Error::FamilyParameter(format!(
            "unknown family key '{other}'"
        ))),
    }
}

/// Lazily built, shared family outputs.
pub struct Corpus {
    cache: RefCell<HashMap<&'static str, Rc<Representation>>>,
}

impl Corpus {
    pub fn new() -> Self {
        Corpus {
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn rep(&self, key: &'static str) -> std::result::Result<Rc<Representation>, String> {
        if let Some(r) = self.cache.borrow().get(key) {
            return Ok(r.clone());
        }
        let built = Rc::new(build_family(key).map_err(|e| format!("building {key}: {e}"))?);
        self.cache.borrow_mut().insert(key, built.clone());
        Ok(built)
    }
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus::new()
    }
}

pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    runner: fn(&Corpus) -> ClaimResult,
}

#[derive(Clone, Debug)]
pub struct ClaimOutcome {
    pub id: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn claim_fixity_oracle(corpus: &Corpus) -> ClaimResult {
    let mut elements = 0usize;
    for key in FAMILY_KEYS {
        let rep = corpus.rep(key)?;
        rep.verify_fixed_dims_kernel()
            .map_err(|e| format!("{key}: {e}"))?;
        elements += rep.order();
    }
    Ok(format!(
        "{} representations, {elements} elements, both routes agree everywhere",
        FAMILY_KEYS.len()
    ))
}

fn claim_four_families(corpus: &Corpus) -> ClaimResult {
    let keys = ["modular-5-4", "excep2-5-4", "excep3-5-4-1", "excep3-5-4-2"];
    for key in keys {
        let rep = corpus.rep(key)?;
        ensure(rep.order() == 625, || {
            format!("{key}: order {} != 625", rep.order())
        })?;
        ensure(rep.degree() == 5, || {
            format!("{key}: degree {} != 5", rep.degree())
        })?;
        let irreducible = rep.is_irreducible().map_err(|e| format!("{key}: {e}"))?;
        ensure(irreducible, || format!("{key}: reducible"))?;
        let fixity = rep.fixity().map_err(|e| format!("{key}: {e}"))?.fixity;
        ensure(fixity == 1, || format!("{key}: fixity {fixity} != 1"))?;
    }
    Ok("4 constructions: order 625, faithful by construction, irreducible, degree 5, fixity 1".into())
}

fn claim_classification(corpus: &Corpus) -> ClaimResult {
    let mut checked = 0usize;
    for key in FAMILY_KEYS {
        let rep = corpus.rep(key)?;
        let p = analysis_prime(rep.order());
        let fixity = rep.fixity().map_err(|e| format!("{key}: {e}"))?.fixity;
        if fixity >= p as i64 {
            continue;
        }
        let record = rep
            .classification_crosscheck(p)
            .map_err(|e| format!("{key}: {e}"))?;
        ensure(record.all_pass(), || {
            format!(
                "{key}: rank_matches={} cyclic_center={} abelian_maximal={}",
                record.rank_matches, record.cyclic_center, record.abelian_maximal
            )
        })?;
        checked += 1;
    }
    Ok(format!(
        "{checked} outputs with fixity < p all have rank f+1, cyclic center, abelian maximal"
    ))
}

fn claim_rank_bound(corpus: &Corpus) -> ClaimResult {
    for key in FAMILY_KEYS {
        let rep = corpus.rep(key)?;
        let ok = rep.rank_fixity_bound().map_err(|e| format!("{key}: {e}"))?;
        ensure(ok, || format!("{key}: rank exceeds fixity + 1"))?;
    }
    let wreath = corpus.rep("wreath-3")?;
    let r = wreath.group().p_rank(3).r_p;
    let f = wreath.fixity().map_err(|e| e.to_string())?.fixity;
    ensure(r == 3 && f == 2, || {
        format!("wreath-3: rank {r}, fixity {f}, expected equality 3 = 2 + 1")
    })?;
    Ok(format!(
        "{}/{} satisfy r(G) <= f + 1; equality 3 = 2 + 1 at wreath(3)",
        FAMILY_KEYS.len(),
        FAMILY_KEYS.len()
    ))
}

fn claim_isotropy_tower(corpus: &Corpus) -> ClaimResult {
    for key in FAMILY_KEYS {
        let rep = corpus.rep(key)?;
        let tower = rep.isotropy_tower().map_err(|e| format!("{key}: {e}"))?;
        for w in tower.ranks.windows(2) {
            ensure(w[1] >= w[0] && w[1] - w[0] <= 1, || {
                format!("{key}: tower {:?} is not a unit-step staircase", tower.ranks)
            })?;
        }
    }
    let wreath = corpus.rep("wreath-3")?;
    let tower = wreath.isotropy_tower().map_err(|e| e.to_string())?;
    ensure(tower.ranks == vec![0, 1, 2, 3], || {
        format!("wreath-3 tower {:?} != [0, 1, 2, 3]", tower.ranks)
    })?;
    Ok(format!(
        "{} towers monotone with unit steps; wreath(3) realizes [0, 1, 2, 3]",
        FAMILY_KEYS.len()
    ))
}

fn claim_bott(_corpus: &Corpus) -> ClaimResult {
    let mut factorial = BigUint::one();
    let mut table = Vec::new();
    for n in 1..=8u32 {
        factorial *= n;
        let b = bott_order(n).map_err(|e| e.to_string())?;
        ensure(b == factorial, || format!("n={n}: {b} != {factorial}"))?;
        if n >= 2 {
            let prev = bott_order(n - 1).map_err(|e| e.to_string())?;
            ensure(b == prev * n, || format!("recurrence fails at n={n}"))?;
        }
        table.push(b.to_string());
    }
    Ok(format!("n! for n = 1..8: {}", table.join(", ")))
}

fn claim_cohomology(_corpus: &Corpus) -> ClaimResult {
    let mut pairs = 0usize;
    for n in 2..=6u32 {
        for k in 1..n {
            let series = poincare_series(n, k).map_err(|e| e.to_string())?;
            let dims = sphere_dims(n, k).map_err(|e| e.to_string())?;
            let homology = product_homology(&dims).poincare_polynomial();
            ensure(series == homology, || {
                format!("n={n} k={k}: series {series} != homology {homology}")
            })?;
            let up = if k + 1 == n {
                IntPolynomial::one()
            } else {
                poincare_series(n, k + 1).map_err(|e| e.to_string())?
            };
            ensure(up.coeff(2 * k as usize + 2) == 0, || {
                format!("n={n} k={k}: Euler coefficient nonzero in {up}")
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} (n, k) pairs: series = product = sphere homology; Euler coefficients vanish"
    ))
}

fn claim_chi_tor(_corpus: &Corpus) -> ClaimResult {
    let mut pairs = 0usize;
    for n in 2..=6u32 {
        for k in 1..n {
            let chi = chi_tor_composite(n, k).map_err(|e| e.to_string())?;
            ensure(chi.is_one(), || format!("n={n} k={k}: chi^tor = {chi} != 1"))?;
            pairs += 1;
        }
    }
    let moore = cone_homology(&[3], 2).map_err(|e| e.to_string())?;
    let half = chi_tor(&moore).map_err(|e| e.to_string())?;
    ensure(half == rational(1, 2), || {
        format!("degree-2 cone on S^3: chi^tor = {half} != 1/2")
    })?;
    Ok(format!(
        "{pairs} composites equal 1 by both routes; single-cone sanity value 1/2"
    ))
}

fn claim_propagation(corpus: &Corpus) -> ClaimResult {
    let rep = corpus.rep("modular-5-4")?;
    let report = propagation_report(&rep, 3).map_err(|e| e.to_string())?;
    ensure(report.tier == Tier::SmoothManifold, || {
        format!("tier {} != smooth-manifold", report.tier)
    })?;
    ensure(report.target == vec![9, 7], || {
        format!("target {:?} != [9, 7]", report.target)
    })?;
    ensure(report.chi_tor == Rational::one(), || {
        format!("chi^tor {} != 1", report.chi_tor)
    })?;
    ensure(report.swan_unit == Some(1), || {
        format!("unit class {:?} != Some(1)", report.swan_unit)
    })?;
    ensure(coprime_to_lower_factorial(625, 5), || {
        "625 shares a factor with 4!".into()
    })?;
    Ok("order 625 vs 4! = 24: free, coprime, chi^tor = 1, unit class 1, target [9, 7]".into())
}

fn claim_product_action(_corpus: &Corpus) -> ClaimResult {
    let small = families::product_action_certificate(3, 2, 1).map_err(|e| e.to_string())?;
    ensure(
        small.sphere_dims == (5, 1) && small.group_order == 27 && small.kernel_order == 9,
        || format!("(3,2,1): {small:?}"),
    )?;
    let large = families::product_action_certificate(5, 3, 1).map_err(|e| e.to_string())?;
    ensure(
        large.sphere_dims == (9, 1) && large.group_order == 625 && large.kernel_order == 125,
        || format!("(5,3,1): {large:?}"),
    )?;
    Ok(format!(
        "(3,2,1): {} elements checked; (5,3,1): {} elements checked; all free off the kernel",
        small.checked, large.checked
    ))
}

fn claim_gp_order(corpus: &Corpus) -> ClaimResult {
    let rep = corpus.rep("gp-3")?;
    ensure(rep.order() == 108, || {
        format!("order {} != 108", rep.order())
    })?;
    let fixity = rep.fixity().map_err(|e| e.to_string())?.fixity;
    ensure(fixity == 1, || format!("fixity {fixity} != 1"))?;
    Ok("order 108 = 2 * 3^3 * (3 - 1), fixity 1".into())
}

fn claim_two_sphere(corpus: &Corpus) -> ClaimResult {
    let mut low = 0usize;
    for key in FAMILY_KEYS {
        let rep = corpus.rep(key)?;
        let p = analysis_prime(rep.order());
        let eligible = two_sphere_necessity(rep.group(), p);
        let rank = rep.group().p_rank(p).r_p;
        ensure(eligible == (rank <= 2), || {
            format!("{key}: predicate {eligible} but rank {rank}")
        })?;
        if key == "wreath-3" {
            ensure(!eligible, || "wreath-3: rank-3 group passed".into())?;
        } else {
            ensure(eligible, || format!("{key}: rank-{rank} group rejected"))?;
            low += 1;
        }
    }
    Ok(format!(
        "{low} rank-<=2 outputs accepted; the rank-3 wreath output rejected"
    ))
}

pub fn claims() -> &'static [Claim] {
    const CLAIMS: [Claim; 12] = [
        Claim {
            id: "fixity-oracle",
            statement: "Character-average and kernel-rank fixed dimensions agree on every \
                        element of every built-in family output of order at most 625 at p in {3, 5}",
            runner: claim_fixity_oracle,
        },
        Claim {
            id: "four-families",
            statement: "The four order-625 constructions at (p, n) = (5, 4) are faithful \
                        irreducible degree-5 representations with fixity exactly 1",
            runner: claim_four_families,
        },
        Claim {
            id: "classification",
            statement: "Every built-in output with fixity f < p has p-rank f + 1, cyclic Sylow \
                        center, and an abelian maximal subgroup of its Sylow p-subgroup",
            runner: claim_classification,
        },
        Claim {
            id: "rank-bound",
            statement: "The p-rank never exceeds fixity + 1; the wreath output at p = 3 attains \
                        equality 3 = 2 + 1",
            runner: claim_rank_bound,
        },
        Claim {
            id: "isotropy-tower",
            statement: "Maximal isotropy rank along the stage ladder is nondecreasing with unit \
                        steps, and the wreath output at p = 3 realizes the full staircase \
                        [0, 1, 2, 3]",
            runner: claim_isotropy_tower,
        },
        Claim {
            id: "bott",
            statement: "The obstruction order for extending a rank-n bundle over the (2n+2)-cell \
                        is n!, satisfying the recurrence n * (n-1)! for n <= 8",
            runner: claim_bott,
        },
        Claim {
            id: "cohomology",
            statement: "The Poincare series of U(n)/U(k) equals the product of (1 + t^{2i+1}) and \
                        the homology of the matching sphere product for 1 <= k < n <= 6, with \
                        vanishing Euler coefficient one stage up",
            runner: claim_cohomology,
        },
        Claim {
            id: "chi-tor",
            statement: "The torsion Euler characteristic of the composite stage collapse is 1 for \
                        1 <= k < n <= 6 by both the exponent formula and cone homology; a single \
                        degree-2 cone on S^3 gives 1/2",
            runner: claim_chi_tor,
        },
        Claim {
            id: "propagation",
            statement: "The order-625 metacyclic representation at stage k = 3 earns the \
                        smooth-manifold tier with target spheres [9, 7], its order being coprime \
                        to 4! = 24",
            runner: claim_propagation,
        },
        Claim {
            id: "product-action",
            statement: "Characters induced from an index-p subgroup act freely away from the \
                        kernel: certified at (p, t, s) = (3, 2, 1) and (5, 3, 1) by checking \
                        every element",
            runner: claim_product_action,
        },
        Claim {
            id: "gp-order",
            statement: "The degree-3 semidirect construction at p = 3 has order 2p^3(p-1) = 108 \
                        and fixity 1",
            runner: claim_gp_order,
        },
        Claim {
            id: "two-sphere",
            statement: "p-rank at most 2 is necessary for a free action on a product of two \
                        spheres: the predicate rejects exactly the rank-3 wreath output among \
                        the built-ins",
            runner: claim_two_sphere,
        },
    ];
    &CLAIMS
}

/// Runs every claim whose id contains `filter` (all claims when absent),
/// sharing one corpus across runners.
pub fn run_claims(filter: Option<&str>) -> Vec<ClaimOutcome> {
    let corpus = Corpus::new();
    let mut outcomes = Vec::new();
    for claim in claims() {
        if let Some(f) = filter {
            if !claim.id.contains(f) {
                continue;
            }
        }
        let start = Instant::now();
        let result = (claim.runner)(&corpus);
        let millis = start.elapsed().as_millis();
        let (passed, detail) = match result {
            Ok(detail) => (true, detail),
            Err(detail) => (false, detail),
        };
        outcomes.push(ClaimOutcome {
            id: claim.id,
            statement: claim.statement,
            passed,
            detail,
            millis,
        });
    }
    outcomes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_twelve_distinct_ids() {
        let ids: Vec<_> = claims().iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), 12);
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 12);
    }

    #[test]
    fn filtering_selects_by_substring() {
        let outcomes = run_claims(Some("bott"));
        assert_eq!(outcomes.len(), 1);
        assert_eq!(outcomes[0].id, "bott");
        assert!(outcomes[0].passed, "{}", outcomes[0].detail);
        assert!(outcomes[0].detail.contains("40320"));
    }

    #[test]
    fn cheap_claims_pass_individually() {
        for id in ["cohomology", "chi-tor", "two-sphere", "gp-order"] {
            let outcomes = run_claims(Some(id));
            assert_eq!(outcomes.len(), 1, "{id}");
            assert!(outcomes[0].passed, "{id}: {}", outcomes[0].detail);
        }
    }

    #[test]
    fn unknown_filter_selects_nothing() {
        assert!(run_claims(Some("no-such-claim")).is_empty());
    }
}
