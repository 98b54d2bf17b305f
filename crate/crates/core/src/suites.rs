//! Named verification suites, as run by `kla2 verify`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::alcove::{region_is_equilateral_triangle, verify_hexagon_geometry, verify_tessellation};
use crate::coxeter::{bruhat_leq, classify_all, elements_by_length, lower_interval, theta_variant, Elt, Family};
use crate::error::{Error, Result};
use crate::hecke::kl_basis;
use crate::klformulas::{
    kl_beyond_variant, kl_closed, verify_content, verify_counting, verify_hexagon_step, verify_kl_properties,
    verify_lemma_notperverse, verify_monotonicity, verify_mu_induction, verify_mu_support_wall, verify_ngeq_instances,
    verify_prop_out, verify_prop_wall_b, verify_support_shape_wall, verify_thm1_wall,
};
use crate::leaves::{deodhar_suite, hom_dims_suite, tree_classify};
use crate::projcoeff::{beyond_rec_check, wall_rec_check};
use crate::report::{Report, VerifyReport};

pub const DEFAULT_MAX_LEN: usize = 15;

/// Every suite name accepted by [`run_suite`], in the order `all` reports them.
pub const SUITES: [&str; 17] = [
    "bruhat",
    "classification",
    "coeff-recursions",
    "counting",
    "deodhar",
    "hexagon",
    "hom-dims",
    "kl-basis",
    "lemma-tree",
    "monotonicity",
    "mu-support",
    "notperverse",
    "prop-out",
    "prop-wall-b",
    "support-shape",
    "thm1-beyond",
    "thm1-wall",
];

/// Scope of a suite run. `max_len` caps the length of any element handed
/// to the brute-force basis; `max` overrides the suite's main index bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub max_len: usize,
    pub max: Option<usize>,
    pub max_beyond: Option<usize>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            max_len: DEFAULT_MAX_LEN,
            max: None,
            max_beyond: None,
        }
    }
}

impl SuiteParams {
    fn bound(&self, default: usize) -> usize {
        self.max.unwrap_or(default)
    }
}

pub fn is_suite(name: &str) -> bool {
    name == "all" || SUITES.contains(&name)
}

/// Runs one suite. `all` is not accepted here; see [`run_all`].
pub fn run_suite(name: &str, p: &SuiteParams) -> Result<VerifyReport> {
    let l = p.max_len;
    let mut r = Report::new(name).param("max_len", l);
    if let Some(max) = p.max {
        r = r.param("max", max);
    }
    match name {
        "thm1-wall" => {
            for n in 1..=p.bound(14).min(l) {
                r.absorb(&verify_thm1_wall(n)?);
            }
        }
        "thm1-beyond" => r.absorb(&verify_beyond_closed(p.bound(13).min(l))),
        "prop-wall-b" => {
            for n in 5..=p.bound(12).min(l.saturating_sub(1)) {
                r.absorb(&verify_prop_wall_b(n)?);
            }
        }
        "prop-out" => {
            for total in 0..=p.bound(5) {
                if 2 * total + 5 > l {
                    break;
                }
                for m in 0..=total {
                    r.absorb(&verify_prop_out(m, total - m));
                }
            }
        }
        "notperverse" => {
            for n in 5..=p.bound(10).min(l.saturating_sub(3)) {
                r.absorb(&verify_lemma_notperverse(n)?);
            }
        }
        "counting" => {
            let sum = p.bound(5);
            r.absorb(&verify_counting(p.bound(14), sum));
            r.absorb(&verify_content(sum.min(l.saturating_sub(3) / 2)));
        }
        "classification" => r.absorb(&verify_classification(p.bound(12).min(l))?),
        "bruhat" => r.absorb(&verify_bruhat(p.bound(12).min(l))),
        "monotonicity" => r.absorb(&verify_monotonicity(p.bound(10).min(l))),
        "kl-basis" => {
            let len = p.bound(12).min(l);
            r.absorb(&verify_kl_properties(len));
            r.absorb(&verify_mu_induction(len));
            r.absorb(&verify_ngeq_instances(len));
        }
        "deodhar" => r.absorb(&deodhar_suite(6, 200, p.bound(10))?),
        "lemma-tree" => {
            for n in 4..=p.bound(16) {
                r.absorb(&tree_classify(n)?);
            }
        }
        "hom-dims" => r.absorb(&hom_dims_suite(p.bound(15).min(l), 10.min(l.saturating_sub(3)))?),
        "hexagon" => {
            let sum = p.bound(3);
            for total in 0..=sum {
                for m in 0..=total {
                    if 2 * total + 7 <= l {
                        r.absorb(&verify_hexagon_step(m, total - m));
                    }
                    r.absorb(&verify_hexagon_geometry(m, total - m));
                }
            }
            r.absorb(&verify_hexagon_step(2, 0));
            r.absorb(&verify_hexagon_step(3, 1));
            r.absorb(&verify_hexagon_geometry(3, 1));
            for m in 0..=4 {
                r.absorb(&region_is_equilateral_triangle(m)?);
            }
            r.absorb(&verify_tessellation(10.min(l)));
        }
        "support-shape" => {
            for n in 1..=p.bound(12).min(l) {
                r.absorb(&verify_support_shape_wall(n));
            }
        }
        "mu-support" => {
            for n in 1..=p.bound(12).min(l) {
                r.absorb(&verify_mu_support_wall(n));
            }
        }
        "coeff-recursions" => {
            let beyond = p.max_beyond.unwrap_or(1000);
            r = r.param("max_beyond", beyond);
            r.absorb(&wall_rec_check(p.bound(10_000))?);
            r.absorb(&beyond_rec_check(beyond, beyond)?);
        }
        other => return Err(Error::Precondition(format!("unknown suite {other:?}"))),
    }
    Ok(r.finish())
}

/// Runs every suite in parallel; reports come back in [`SUITES`] order.
pub fn run_all(p: &SuiteParams) -> Result<Vec<VerifyReport>> {
    SUITES.par_iter().map(|name| run_suite(name, p)).collect()
}

/// Closed beyond-the-wall forms for every flag variant of length at most
/// `max_len`.
pub fn verify_beyond_closed(max_len: usize) -> VerifyReport {
    let mut r = Report::new("thm1-beyond").param("max_len", max_len);
    let mut cases = Vec::new();
    for total in 0..=max_len / 2 {
        for m in 0..=total {
            for (left_r, right_s) in [(false, false), (true, false), (false, true), (true, true)] {
                let x = theta_variant(m, total - m, left_r, right_s);
                if x.length() <= max_len {
                    cases.push((m, total - m, left_r, right_s, x));
                }
            }
        }
    }
    let subs: Vec<VerifyReport> = cases
        .par_iter()
        .map(|&(m, n, left_r, right_s, x)| {
            let mut sub = Report::new("variant")
                .param("m", m)
                .param("n", n)
                .param("r", left_r)
                .param("s", right_s);
            let closed = kl_beyond_variant(m, n, left_r, right_s);
            let oracle = kl_basis(x);
            sub.check("H(x)", closed == *oracle, &closed, &oracle);
            sub.finish()
        })
        .collect();
    for sub in &subs {
        r.absorb(sub);
    }
    r.info("variants", subs.len());
    r.finish()
}

/// Families related by the color action: `θ(m,n)` and `θ(n,m)` (same
/// flags) lie in one orbit, so they count as one family.
fn family_class(f: Family) -> Family {
    match f {
        Family::Beyond { m, n, left_r, right_s } => Family::Beyond {
            m: m.min(n),
            n: m.max(n),
            left_r,
            right_s,
        },
        other => other,
    }
}

/// Every element of length at most `max_len` is, up to the color action,
/// in exactly one family class; the family representatives are pairwise
/// distinct; and the closed form of the matching family is the canonical
/// basis element.
pub fn verify_classification(max_len: usize) -> Result<VerifyReport> {
    let mut r = Report::new("classification").param("max_len", max_len);
    let mut reps: BTreeMap<Elt, Family> = BTreeMap::new();
    for len in 0..=max_len {
        for family in Family::candidates_of_length(len) {
            let rep = family.representative();
            if let Some(prev) = reps.insert(rep, family) {
                r.mismatch(format!("{family} and {prev}"), "disjoint", format!("both are {rep}"));
            }
            r.check(format!("{family} length"), rep.length() == len, len, rep.length());
        }
    }
    let elts: Vec<Elt> = elements_by_length(max_len).into_iter().flatten().collect();
    let subs: Vec<Result<VerifyReport>> = elts
        .par_iter()
        .map(|&x| {
            let mut sub = Report::new("elt").param("x", x.to_string());
            let tags = classify_all(x);
            let classes: BTreeSet<Family> = tags.iter().map(|t| family_class(t.family)).collect();
            let names: Vec<String> = tags.iter().map(|t| format!("{}·{}", t.sigma, t.family)).collect();
            sub.check("one family class", classes.len() == 1, 1, format!("{names:?}"));
            for tag in &tags {
                sub.check(
                    format!("{} rebuilds x", tag.family),
                    tag.element() == x,
                    x,
                    tag.element(),
                );
                let closed = kl_closed(tag)?;
                let oracle = kl_basis(x);
                sub.check(
                    format!("closed form of {}", tag.family),
                    closed == *oracle,
                    &closed,
                    &oracle,
                );
            }
            Ok(sub.finish())
        })
        .collect();
    for sub in subs {
        r.absorb(&sub?);
    }
    r.info("elements", elts.len());
    Ok(r.finish())
}

/// The lifting recursion for the Bruhat order against subword closure of
/// a reduced word, on all pairs of elements up to `max_len`.
pub fn verify_bruhat(max_len: usize) -> VerifyReport {
    let mut r = Report::new("bruhat").param("max_len", max_len);
    let elts: Vec<Elt> = elements_by_length(max_len).into_iter().flatten().collect();
    let subs: Vec<VerifyReport> = elts
        .par_iter()
        .map(|&x| {
            let mut sub = Report::new("interval").param("x", x.to_string());
            let by_subwords = lower_interval(x);
            let by_lifting: BTreeSet<Elt> = elts
                .iter()
                .copied()
                .filter(|&y| y.length() <= x.length() && bruhat_leq(y, x))
                .collect();
            sub.check(
                "same lower interval",
                by_subwords == by_lifting,
                by_subwords.len(),
                by_lifting.len(),
            );
            let mut finished = sub.finish();
            finished.details.checks = elts.len();
            finished
        })
        .collect();
    for sub in &subs {
        r.absorb(sub);
    }
    r.finish()
}
