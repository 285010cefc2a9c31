//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use restrix::algebra::{extend_homomorphism, find_isomorphism, FiniteMonoid};
use restrix::expansions::{
    bounded_enumerate, prefix_expand_group, prefix_size_formula, ClosedModel, PresentedExpansion,
    RelationTag,
};
use restrix::freerestr::LemmaSuite;
use restrix::verify::{
    constructed_premorphisms, monoid_registry, restriction_registry, verify_agreement, verify_ample,
    verify_cg, verify_d_lemmas, verify_d_lemmas_sensitivity, verify_main, verify_strongness,
    verify_strongness_fuzz, Status, VerificationReport,
};

type Outcome = Result<String, String>;

fn closed(m: &FiniteMonoid, tag: RelationTag, inverse: bool) -> Result<ClosedModel, String> {
    let mut p = PresentedExpansion::new(m.clone(), tag);
    if inverse {
        p = p.inverse();
    }
    bounded_enumerate(&p)
        .map_err(|e| e.to_string())?
        .into_closed()
        .ok_or_else(|| "enumeration did not close".to_string())
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t < limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn failures(reports: &[VerificationReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| r.is_failure())
        .map(|r| format!("{} on {}: {}", r.theorem, r.instance, r.witness.clone().unwrap_or_default()))
        .collect()
}

fn idempotent_pair_model() -> Outcome {
    let start = Instant::now();
    let m = FiniteMonoid::idempotent_pair();
    let fr = closed(&m, RelationTag::Hom, false)?;
    let fi = closed(&m, RelationTag::Hom, true)?;
    let s = &fr.algebra;
    let a = fr.generators[1];
    if s.size() != 3 {
        return Err(format!("|FR| = {}, expected 3", s.size()));
    }
    if s.plus(a) != s.star(a) {
        return Err("⌊a⌋⁺ ≠ ⌊a⌋*".into());
    }
    if fi.algebra.size() != 2 {
        return Err(format!("|FI| = {}, expected 2", fi.algebra.size()));
    }
    let psi = extend_homomorphism(s, &fr.generators, &fi.algebra, &fi.generators).map_err(|e| e.to_string())?;
    if a == s.star(a) || psi[a] != psi[s.star(a)] {
        return Err("ψ does not identify ⌊a⌋ with ⌊a⌋*".into());
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("|FR| = 3, |FI| = 2, ψ(⌊a⌋) = ψ(⌊a⌋*) with ⌊a⌋ ≠ ⌊a⌋*, {:?}", start.elapsed()))
}

fn main_theorem() -> Outcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    for m in monoid_registry() {
        for tag in [RelationTag::S, RelationTag::Hom] {
            reports.push(verify_main(&m.name, &m.monoid, tag, 6));
        }
    }
    let bad = failures(&reports);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    within(start, Duration::from_secs(60))?;
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    let open = reports.len() - passed;
    Ok(format!("{passed} instances pass, {open} did not close, {:?}", start.elapsed()))
}

fn prefix_sizes() -> Outcome {
    let groups = [
        ("Z2", FiniteMonoid::cyclic(2), 3),
        ("Z3", FiniteMonoid::cyclic(3), 8),
        ("S3", FiniteMonoid::symmetric_group(3), 112),
    ];
    let mut notes = Vec::new();
    for (name, g, want) in &groups {
        let p = prefix_expand_group(g).map_err(|e| e.to_string())?;
        let formula = prefix_size_formula(g.size());
        if p.algebra.size() != *want || formula != *want {
            return Err(format!("{name}: pairs {}, formula {formula}, expected {want}", p.algebra.size()));
        }
        if g.size() <= 3 {
            let fi = closed(g, RelationTag::S, true)?;
            match find_isomorphism(&fi.algebra, &p.algebra) {
                Ok(Some(_)) => notes.push(format!("{name}: {want}, FI_s ≅ prefix")),
                other => return Err(format!("{name}: FI_s has {} elements, isomorphism {other:?}", fi.algebra.size())),
            }
        } else {
            notes.push(format!("{name}: {want}"));
        }
    }
    Ok(notes.join(", "))
}

fn reconstruction() -> Outcome {
    let mut reports = Vec::new();
    for s in restriction_registry() {
        reports.push(verify_cg(&s.name, &s.algebra));
    }
    let bad = failures(&reports);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let required = ["reduced Z2", "FR_hom {1,a}: a^2=a", "prefix Z2", "prefix Z3", "M(I2, E(I2))"];
    for name in required {
        match reports.iter().find(|r| r.instance == name) {
            Some(r) if r.status == Status::Pass => {}
            Some(r) => return Err(format!("{name}: {}", r.status)),
            None => return Err(format!("{name} missing from the registry")),
        }
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    Ok(format!("{passed} proper instances rebuilt, {} not proper", reports.len() - passed))
}

fn d_lemmas() -> Outcome {
    let start = Instant::now();
    let suite = LemmaSuite {
        letters: 2,
        max_len: 8,
        samples: 500,
        seed: 0,
    };
    let outcomes = suite.run();
    if outcomes.len() != 5 {
        return Err(format!("{} lemmas, expected 5", outcomes.len()));
    }
    if let Some(o) = outcomes.iter().find(|o| o.cases < 500) {
        return Err(format!("{}: only {} cases", o.lemma, o.cases));
    }
    let r = verify_d_lemmas(2, 8, 500, 0);
    if r.status != Status::Pass {
        return Err(r.witness.unwrap_or_default());
    }
    let m = verify_d_lemmas_sensitivity(2, 8, 500, 0);
    if m.status != Status::Pass {
        return Err("mutated recursion went undetected".into());
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{}; mutation: {}", r.detail.unwrap_or_default(), m.detail.unwrap_or_default()))
}

fn ample() -> Outcome {
    let mut reports = Vec::new();
    for n in 1..=3 {
        for (i, m) in FiniteMonoid::all_of_order(n).into_iter().enumerate() {
            reports.push(verify_ample(&format!("order{n}/{i}"), &m, RelationTag::Hom, 6));
        }
    }
    let bad = failures(&reports);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    if passed == 0 {
        return Err("no instance closed".into());
    }
    Ok(format!("{passed} of {} monoids of order ≤ 3: all three biconditionals hold", reports.len()))
}

fn strongness() -> Outcome {
    let maps = constructed_premorphisms();
    let reports: Vec<_> = maps.iter().map(verify_strongness).collect();
    let bad = failures(&reports);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let agreeing = reports.iter().filter(|r| r.status == Status::Pass).count();
    if agreeing < 20 {
        return Err(format!("only {agreeing} constructed premorphisms"));
    }
    let fuzz = verify_strongness_fuzz(&maps, 100, 0);
    if fuzz.status != Status::Pass {
        return Err(fuzz.witness.unwrap_or_default());
    }
    Ok(format!("{agreeing} constructed premorphisms agree; fuzz: {}", fuzz.detail.unwrap_or_default()))
}

fn agreement() -> Outcome {
    let mut reports = Vec::new();
    for s in restriction_registry() {
        reports.push(verify_agreement(&s.name, &s.algebra));
    }
    let bad = failures(&reports);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    Ok(format!("{passed} F-restriction instances, zero disagreements"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 FR_hom and FI_hom of {1,a}: a^2=a", idempotent_pair_model),
        ("2 η̃ isomorphism over the registry, R ∈ {s, hom}", main_theorem),
        ("3 prefix expansion sizes", prefix_sizes),
        ("4 proper monoids as partial action products", reconstruction),
        ("5 D_u lemma suite and mutation sensitivity", d_lemmas),
        ("6 cancellativity against ampleness", ample),
        ("7 strongness characterization", strongness),
        ("8 φ/τ agreement on F-restriction monoids", agreement),
    ];
    let mut ok = true;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                ok = false;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
