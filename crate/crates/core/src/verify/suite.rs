use serde::{Deserialize, Serialize};

use crate::algebra::FiniteMonoid;
use crate::expansions::{RelationTag, DEFAULT_BOUND};

use super::harness::*;
use super::registry::*;
use super::{Status, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub seed: u64,
    pub bound: usize,
    /// Samples per lemma for the `D_u` suite.
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            bound: DEFAULT_BOUND,
            samples: 500,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub inconclusive: usize,
}

impl SuiteSummary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = SuiteSummary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }

    pub fn all_pass(&self) -> bool {
        self.fail == 0
    }
}

/// Every harness over the curated registry, in a fixed order; `emit`
/// sees each report as soon as it is produced.
pub fn run_suite(opts: &SuiteOptions, emit: &mut dyn FnMut(&VerificationReport)) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let mut push = |r: VerificationReport, out: &mut Vec<VerificationReport>| {
        emit(&r);
        out.push(r);
    };
    let monoids = monoid_registry();
    for m in &monoids {
        let mut tags = vec![RelationTag::Ls, RelationTag::Rs, RelationTag::S, RelationTag::Hom];
        if m.monoid.size() <= 2 {
            tags.insert(0, RelationTag::Pm);
        }
        for tag in tags {
            push(verify_main(&m.name, &m.monoid, tag, opts.bound), &mut out);
        }
    }
    for m in monoids.iter().filter(|m| m.monoid.size() <= 3) {
        push(verify_ample(&m.name, &m.monoid, RelationTag::Hom, opts.bound), &mut out);
    }
    for m in &monoids {
        for tag in [RelationTag::S, RelationTag::Hom] {
            push(verify_embedding(&m.name, &m.monoid, tag, opts.bound), &mut out);
        }
    }
    for letters in [1, 2] {
        push(verify_embedding_free(letters, 10_000, opts.seed), &mut out);
    }
    let groups = [
        ("trivial", FiniteMonoid::trivial()),
        ("Z2", FiniteMonoid::cyclic(2)),
        ("Z3", FiniteMonoid::cyclic(3)),
        ("Z2xZ2", FiniteMonoid::cyclic(2).direct_product(&FiniteMonoid::cyclic(2))),
        ("S3", FiniteMonoid::symmetric_group(3)),
    ];
    for (name, g) in &groups {
        push(verify_prefix_presentation(name, g, opts.bound), &mut out);
    }
    for s in &restriction_registry() {
        push(verify_cg(&s.name, &s.algebra), &mut out);
        push(verify_alpha_tau(&s.name, &s.algebra), &mut out);
        push(verify_agreement(&s.name, &s.algebra), &mut out);
    }
    push(verify_d_lemmas(2, 8, opts.samples, opts.seed), &mut out);
    push(verify_d_lemmas_sensitivity(2, 8, opts.samples, opts.seed), &mut out);
    let maps = constructed_premorphisms();
    for c in &maps {
        push(verify_strongness(c), &mut out);
    }
    push(verify_strongness_fuzz(&maps, 100, opts.seed), &mut out);
    out
}

pub fn default_suite(opts: &SuiteOptions) -> Vec<VerificationReport> {
    run_suite(opts, &mut |_| {})
}
