//! The verification suite behind `operadics selftest` and the `acceptance`
//! integration test target.
//!
//! Each criterion is a self-contained check with its tolerances pinned in
//! code: exact equalities throughout, at truncations small enough to finish
//! in seconds. Where a criterion compares two constructions, the two sides
//! are computed along genuinely different routes (rewriting against
//! congruence closure, direct formulas against transported operators,
//! enumerated maps against operad levels).

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::coproduct::{idempotent_monoid, OperadCoproduct, Side};
use crate::cosimplicial::{build_cosimplicial, compare_hochschild};
use crate::elem::Elem;
use crate::free_operad::{free_operad_level, pointed_normalize, LabeledTree};
use crate::graded::{distribute, GradedSet};
use crate::modules::{
    envelope_of_hochschild, envelope_oracle_census, hochschild, module_endomorphism_operad,
    splitting_resolution, RightModule,
};
use crate::report::{Check, Report};
use crate::table::{Multiplication, OpRef, OperadMap, TableOperad};
use crate::tree::{enumerate_trees, Tree};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 0x0ead1c5;

/// Runs every criterion and returns one check per line.
pub fn run_all(seed: u64, jobs: usize) -> Result<Report> {
    let mut report = Report::new("acceptance criteria");
    report.push(criterion_1_free_operad_laws()?);
    report.push(criterion_2_catalan()?);
    report.push(criterion_3_normal_form_uniqueness()?);
    report.push(criterion_4_pushout_census(jobs)?);
    report.push(criterion_5_identity_suites()?);
    report.push(criterion_6_comparison_lemma()?);
    report.push(criterion_7_envelope_formula()?);
    report.push(criterion_8_splitting_components()?);
    report.push(criterion_9_module_endomorphisms()?);
    report.push(criterion_10_distributive_law(seed)?);
    report.push(criterion_11_discrete_limits()?);
    report.push(operation_smoke(seed)?);
    Ok(report)
}

/// All tuples of trees from `pool` with the given length and a shared branch
/// budget.
fn tree_tuples(pool: &[LabeledTree<Elem>], len: usize, budget: u32) -> Vec<Vec<LabeledTree<Elem>>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for t in pool.iter().filter(|t| t.branch_count() <= budget) {
        for mut rest in tree_tuples(pool, len - 1, budget - t.branch_count()) {
            let mut v = Vec::with_capacity(len);
            v.push(t.clone());
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Criterion 1: operad unit and associativity laws for free operads on two
/// generators, exhaustively over all grafting triples with a shared branch
/// budget of 3 and arities up to 3.
pub fn criterion_1_free_operad_laws() -> Result<Check> {
    let budget = 3u32;
    let configs: Vec<GradedSet> = vec![
        GradedSet::new(vec![
            vec![Elem::atom(0, "z")],
            vec![],
            vec![Elem::atom(2, "m")],
        ])?,
        GradedSet::new(vec![
            vec![],
            vec![],
            vec![Elem::atom(2, "m")],
            vec![Elem::atom(3, "t")],
        ])?,
    ];
    let mut v = Vec::new();
    let mut instances = 0u64;
    for gens in &configs {
        let max_level = 1 + budget * 2;
        let pool: Vec<LabeledTree<Elem>> = (0..=max_level)
            .flat_map(|n| free_operad_level(gens, n, budget, 3))
            .collect();

        for a in &pool {
            let ids = vec![LabeledTree::Leaf; a.level() as usize];
            if a.graft(&ids)
                .map_err(|e| Error::InvalidElement(e.to_string()))?
                != *a
            {
                v.push(format!("right unit law fails on {a}"));
            }
            if LabeledTree::Leaf.graft(std::slice::from_ref(a))? != *a {
                v.push(format!("left unit law fails on {a}"));
            }
        }

        for a in pool.iter().filter(|a| a.branch_count() <= budget) {
            let m = a.level() as usize;
            for bs in tree_tuples(&pool, m, budget - a.branch_count()) {
                let used: u32 =
                    a.branch_count() + bs.iter().map(LabeledTree::branch_count).sum::<u32>();
                let ab = a.graft(&bs)?;
                for cs in tree_tuples(&pool, ab.level() as usize, budget - used) {
                    instances += 1;
                    let lhs = ab.graft(&cs)?;
                    let mut blockwise = Vec::with_capacity(bs.len());
                    let mut offset = 0usize;
                    for b in &bs {
                        let take = b.level() as usize;
                        blockwise.push(b.graft(&cs[offset..offset + take])?);
                        offset += take;
                    }
                    let rhs = a.graft(&blockwise)?;
                    if lhs != rhs {
                        v.push(format!("associativity fails on {a} with {} args", bs.len()));
                    }
                }
            }
        }
    }
    let mut check = Check::from_violations(
        format!("1. free operad laws ({instances} associativity instances)"),
        v,
    );
    if instances < 500 {
        check.passed = false;
        check.details.push(format!(
            "only {instances} instances enumerated; the sweep looks degenerate"
        ));
    }
    Ok(check)
}

/// Criterion 2: the free operad on one binary generator has level counts
/// 1, 1, 2, 5, 14 at levels 1..=5.
pub fn criterion_2_catalan() -> Result<Check> {
    let gens = GradedSet::new(vec![vec![], vec![], vec![Elem::atom(2, "m")]])?;
    let counts: Vec<usize> = (1..=5)
        .map(|n| free_operad_level(&gens, n, 16, 2).len())
        .collect();
    let expected = vec![1usize, 1, 2, 5, 14];
    let mut v = Vec::new();
    if counts != expected {
        v.push(format!("level counts {counts:?}, expected {expected:?}"));
    }
    Ok(Check::from_violations(
        "2. binary generator level counts",
        v,
    ))
}

/// Criterion 3: for the idempotent monoid and for the level-one part of the
/// two-point endomorphism operad, every congruence class contains exactly one
/// normal form and normalization lands on it, at level 1 with branch count up
/// to 3.
pub fn criterion_3_normal_form_uniqueness() -> Result<Check> {
    let mut v = Vec::new();
    let cases: Vec<(&str, TableOperad)> = vec![
        ("idempotent monoid", idempotent_monoid()),
        (
            "set endomorphism monoid",
            TableOperad::endomorphism_monoid(2)?,
        ),
    ];
    for (name, op) in cases {
        let cop = OperadCoproduct::new(op.clone(), op);
        let (_, classes, report) = cop.oracle(1, 3)?;
        if !report.passed() {
            v.push(format!("{name}: {}", report.to_text().replace('\n', "; ")));
        }
        if classes.is_empty() {
            v.push(format!("{name}: no classes enumerated"));
        }
    }
    Ok(Check::from_violations("3. normal form uniqueness", v))
}

/// Criterion 4: the filtration recursion holds at every branch count up to 3
/// in the monoid test cases, including the hand-derived instance
/// (16, 14, 3, 5), and the filtration agrees with the congruence classes.
pub fn criterion_4_pushout_census(jobs: usize) -> Result<Check> {
    let mut v = Vec::new();

    let cop = OperadCoproduct::new(idempotent_monoid(), idempotent_monoid());
    let census = cop.census(1, 3, jobs)?;
    if !(census.t[2] == 16 && census.c[2] == 14 && census.f[1] == 3 && census.f[2] == 5) {
        v.push(format!(
            "hand-derived instance mismatch: t2={} c2={} f1={} f2={}",
            census.t[2], census.c[2], census.f[1], census.f[2]
        ));
    }
    if !census.recursion_holds {
        v.push("recursion fails for the idempotent monoid".into());
    }
    // Cross-check the filtration against the congruence classes.
    let (words, classes, _) = cop.oracle(1, 3)?;
    for k in 0..=3u32 {
        let reached = classes
            .iter()
            .filter(|cl| cl.iter().map(|&i| words[i].branch_count()).min().unwrap() <= k)
            .count() as u64;
        if reached != census.f[k as usize] {
            v.push(format!(
                "classes reached by branch count {k}: {reached}, filtration says {}",
                census.f[k as usize]
            ));
        }
    }

    let mon = TableOperad::endomorphism_monoid(2)?;
    let census = OperadCoproduct::new(mon.clone(), mon).census(1, 3, jobs)?;
    if !census.recursion_holds {
        v.push("recursion fails for the set endomorphism monoid".into());
    }
    Ok(Check::from_violations("4. pushout census recursion", v))
}

/// Criterion 5: simplicial identities for the Hochschild resolution up to
/// degree 3 and cosimplicial identities up to degree 3, over the one-point
/// operad and the two-point set endomorphisms, at truncations pinned here.
pub fn criterion_5_identity_suites() -> Result<Check> {
    let mut v = Vec::new();

    for (name, op, bound) in [
        ("one-point operad", TableOperad::associative(1), 1u32),
        (
            "set endomorphisms",
            TableOperad::endomorphism_of_set(2, 1)?,
            1,
        ),
    ] {
        let h = hochschild(&op, 3, bound)?;
        let report = h.check();
        if !report.passed() {
            v.push(format!(
                "Hochschild over {name}: {} violations",
                report.violations()
            ));
        }
    }

    let a3 = TableOperad::associative(3);
    let am = Multiplication::new(a3, OpRef::new(0, 0), OpRef::new(2, 0));
    let e3 = TableOperad::endomorphism_of_set(2, 3)?;
    let em = Multiplication::new(e3.clone(), e3.ref_by_name("0")?, e3.ref_by_name("0111")?);
    for (name, m) in [("one-point operad", am), ("set endomorphisms", em)] {
        let c = build_cosimplicial(&m, 3)?;
        let report = c.check();
        if !report.passed() {
            v.push(format!(
                "cosimplicial over {name}: {} violations",
                report.violations()
            ));
        }
    }
    Ok(Check::from_violations(
        "5. simplicial and cosimplicial identity suites",
        v,
    ))
}

/// Criterion 6: transporting the bar resolution's operators agrees with the
/// direct cosimplicial construction for the two-point endomorphism operad
/// with its max/0 multiplication at truncation 2, degrees up to 2, including
/// the bijection of bimodule maps with operad levels.
pub fn criterion_6_comparison_lemma() -> Result<Check> {
    let e = TableOperad::endomorphism_of_set(2, 2)?;
    let m = Multiplication::new(e.clone(), e.ref_by_name("0")?, e.ref_by_name("0111")?);
    let report = compare_hochschild(&m, 2)?;
    let mut v = Vec::new();
    if !report.passed() {
        v.push(report.to_text().replace('\n', "; "));
    }
    Ok(Check::from_violations("6. bar resolution comparison", v))
}

/// Criterion 7: the enveloping operad of a Hochschild degree, computed as a
/// three-colored normal form census, agrees with the congruence-closure
/// oracle on the bimodule presentation, for the one-point operad at
/// truncation 1, degrees 0 and 1, branch counts up to 2.
pub fn criterion_7_envelope_formula() -> Result<Check> {
    let a = TableOperad::associative(1);
    let mut v = Vec::new();
    for n in 0..=1u32 {
        let env = envelope_of_hochschild(&a, n, 1)?;
        for level in 0..=1u32 {
            let free_route = env.census_by_branch(level, 2)?;
            let oracle_route = envelope_oracle_census(&a, n, 1, level, 2)?;
            if free_route != oracle_route {
                v.push(format!(
                    "degree {n} level {level}: {free_route:?} vs {oracle_route:?}"
                ));
            }
        }
    }
    Ok(Check::from_violations(
        "7. envelope presentation censuses",
        v,
    ))
}

/// Criterion 8: for the free operad on one binary generator, path components
/// of the splitting resolution count binary trees (1, 1, 2, 5 at levels
/// 1..=4) and every component is connected.
pub fn criterion_8_splitting_components() -> Result<Check> {
    let gens = GradedSet::new(vec![vec![], vec![], vec![Elem::atom(2, "m")]])?;
    let res = splitting_resolution(&gens, 2, 4, 4)?;
    let mut v = Vec::new();

    let identities = res.simplicial.check_identities();
    if !identities.passed() {
        v.push(format!(
            "simplicial identities: {} violations",
            identities.violations()
        ));
    }

    let (counts, report) = res.pi0_report()?;
    if counts != vec![0, 1, 1, 2, 5] {
        v.push(format!(
            "component counts {counts:?}, expected [0, 1, 1, 2, 5]"
        ));
    }
    if !report.passed() {
        v.push(report.to_text().replace('\n', "; "));
    }
    let fiber = res.fiber_of(&LabeledTree::Leaf)?;
    if fiber.len() != 1 {
        v.push(format!(
            "the trivial composite has {} splittings, expected 1",
            fiber.len()
        ));
    }
    Ok(Check::from_violations(
        "8. splitting resolution components",
        v,
    ))
}

/// Criterion 9: evaluation at the identity tuple identifies the endomorphism
/// operad of a module over itself with the operad, for the one-point operad
/// and the two-point set endomorphisms at truncation 2, arities up to 2.
pub fn criterion_9_module_endomorphisms() -> Result<Check> {
    let mut v = Vec::new();
    for (name, op) in [
        ("one-point operad", TableOperad::associative(2)),
        ("set endomorphisms", TableOperad::endomorphism_of_set(2, 2)?),
    ] {
        let module = RightModule::over_self(&op, 2)?;
        let end = module_endomorphism_operad(&module, 2, 1 << 22)?;
        if !end.operad.verify().passed() {
            v.push(format!("{name}: endomorphism operad fails its axioms"));
        }
        let report = end.compare_with_operad(&module)?;
        if !report.passed() {
            v.push(format!("{name}: {}", report.to_text().replace('\n', "; ")));
        }
    }
    Ok(Check::from_violations(
        "9. module endomorphism comparison",
        v,
    ))
}

fn random_graded_set(rng: &mut StdRng, tag: &str, bound: u32) -> GradedSet {
    let levels = (0..=bound)
        .map(|n| {
            (0..rng.random_range(0..=2))
                .map(|k| Elem::atom(n, format!("{tag}{n}_{k}")))
                .collect()
        })
        .collect();
    GradedSet::new(levels).expect("generated names are distinct")
}

/// Criterion 10: the distributive isomorphism round-trips on every element at
/// truncation 3 for 50 seeded random triples with at most two elements per
/// level.
pub fn criterion_10_distributive_law(seed: u64) -> Result<Check> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut v = Vec::new();
    for trial in 0..50 {
        let x = random_graded_set(&mut rng, "x", 3);
        let y = random_graded_set(&mut rng, "y", 3);
        let z = random_graded_set(&mut rng, "z", 3);
        let (forward, backward) = distribute(&x, &y, &z, 3)?;
        if !forward.mutually_inverse(&backward) {
            v.push(format!("trial {trial}: round trip is not the identity"));
        }
    }
    Ok(Check::from_violations(
        "10. distributive isomorphism round trip",
        v,
    ))
}

/// Criterion 11: discrete limits are a single point for the one-point
/// operad, both points for max/0 on two-point set endomorphisms, and a single
/// point for the left-zero-with-unit monoid on three points.
pub fn criterion_11_discrete_limits() -> Result<Check> {
    let mut v = Vec::new();

    let a = TableOperad::associative(2);
    let am = Multiplication::new(a, OpRef::new(0, 0), OpRef::new(2, 0));
    let got = build_cosimplicial(&am, 1)?.discrete_limit()?.len();
    if got != 1 {
        v.push(format!("one-point operad: limit size {got}, expected 1"));
    }

    let e2 = TableOperad::endomorphism_of_set(2, 2)?;
    let em = Multiplication::new(e2.clone(), e2.ref_by_name("0")?, e2.ref_by_name("0111")?);
    let got = build_cosimplicial(&em, 1)?.discrete_limit()?.len();
    if got != 2 {
        v.push(format!("max/0 on two points: limit size {got}, expected 2"));
    }

    let e3 = TableOperad::endomorphism_of_set(3, 3)?;
    let m3 = Multiplication::new(
        e3.clone(),
        e3.ref_by_name("0")?,
        e3.ref_by_name("012111222")?,
    );
    let got = build_cosimplicial(&m3, 1)?.discrete_limit()?.len();
    if got != 1 {
        v.push(format!("left-zero monoid: limit size {got}, expected 1"));
    }
    Ok(Check::from_violations("11. discrete limit values", v))
}

/// Exercises the operations not already load-bearing above, so the selftest
/// touches every public operation at least once.
pub fn operation_smoke(seed: u64) -> Result<Check> {
    let mut v = Vec::new();

    // Tree invariants and bounded enumeration.
    let corolla3 = Tree::Node(vec![Tree::Leaf, Tree::Leaf, Tree::Leaf]);
    if corolla3.invariants() != (1, 3, 1) {
        v.push("tree invariants of the three-leaf corolla".into());
    }
    if enumerate_trees(1, 0, 3, true) != vec![Tree::Leaf] {
        v.push("enumeration with no branch budget".into());
    }
    if enumerate_trees(0, 2, 1, true).len() != 2 {
        v.push("nullary chain enumeration".into());
    }

    // Pointed normalization splices the basepoint.
    let base = Elem::atom(1, "u");
    let x = Elem::atom(2, "x");
    let nested = LabeledTree::Node {
        label: base.clone(),
        children: vec![LabeledTree::corolla(x.clone())],
    };
    if pointed_normalize(&nested, &base)? != LabeledTree::corolla(x) {
        v.push("basepoint splice".into());
    }

    // Homomorphism verification and evaluation through the coproduct.
    let cop = OperadCoproduct::new(idempotent_monoid(), idempotent_monoid());
    let target = TableOperad::endomorphism_monoid(2)?;
    let p = cop.side(Side::Left);
    let into = OperadMap::from_fn(p, &target, |r| {
        Ok(match p.name_of(r).as_str() {
            "a" => target.ref_by_name("00")?,
            _ => target.identity(),
        })
    })?;
    if !into.verify().passed() {
        v.push("homomorphism verification".into());
    }
    let w = cop.word_from_chain(&[(Side::Left, "a"), (Side::Right, "a")])?;
    let direct = cop.eval(&into, &into, &w)?;
    let via = cop.eval(&into, &into, &cop.normalize(&w)?)?;
    if direct != via {
        v.push("evaluation invariance under normalization".into());
    }
    if cop.normalize_random(&w, seed)? != cop.normalize(&w)? {
        v.push("randomized rewriting strategy".into());
    }

    // Composition of coproduct elements.
    let u = cop.embed(Side::Left, "a")?;
    if cop.compose(&u, std::slice::from_ref(&u))? != u {
        v.push("coproduct composition".into());
    }

    // Multiplication checks, including a failing unit.
    let e2 = TableOperad::endomorphism_of_set(2, 2)?;
    let bad = Multiplication::new(e2.clone(), e2.ref_by_name("1")?, e2.ref_by_name("0111")?);
    if bad.check().passed() {
        v.push("a failing unit law went unnoticed".into());
    }

    // Fault injection in a composition table.
    let max = e2.ref_by_name("0111")?;
    let zero = e2.ref_by_name("0")?;
    let one = e2.ref_by_name("1")?;
    let corrupted = e2.with_corrupted_entry(max, 1, zero, one);
    if corrupted.verify().passed() {
        v.push("a corrupted table went unnoticed".into());
    }

    Ok(Check::from_violations("12. operation coverage smoke", v))
}
