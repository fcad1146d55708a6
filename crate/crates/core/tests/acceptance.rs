//! The ten acceptance criteria, one report line each.
//!
//! Criterion 8 contains a sub-check that cannot hold: `ω·ω*` is
//! bi-embeddable with `ω·ω* + 1` without being isomorphic to it, so it is
//! not CSB and the classifier answers no. The check is kept as stated and
//! its failure is expected.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revcore::cardinal::{check_representation, decide_reversible, is_independent, semigroup_member, CardValue, CardinalSequence, Independence};
use revcore::family::{decide_family, orbit_fiber_check, validate_merge_witness, DecideOptions, Evidence, FamilyVerdict, StructureFamily};
use revcore::ordinal::presentation::{check_normalization, DEFAULT_WINDOW};
use revcore::ordinal::{
    classify_csb_limit, decide_union_reversibility, normalize_blocks, normalize_limit_sum, rewrite_blocks, Classification,
    Expr, Ordinal, OtpFamily,
};
use revcore::structure::{check_morphism, find_morphisms, is_reversible_bruteforce, BinaryStructure, MorphismKind};
use revcore::wellfounded::{find_cycle, product_relation, FiniteRelation};
use revcore::Multiplicity::{self, Aleph0, Finite};

type Check = fn() -> Result<String, String>;

const EXPECTED_RED: &[usize] = &[8];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_digraph(rng: &mut ChaCha8Rng, n: usize) -> BinaryStructure {
    let p = rng.random_range(0.1..0.6);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|_| rng.random_bool(p)).collect();
    BinaryStructure::from_indexed((0..n).map(|i| format!("v{i}")).collect(), edges)
}

fn c1_finite_reversibility() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut condensations = 0;
    for _ in 0..500 {
        let n = rng.random_range(3..=7);
        let x = random_digraph(&mut rng, n);
        let report = is_reversible_bruteforce(&x, 9).map_err(|e| e.to_string())?;
        ensure(report.reversible && report.counterexample.is_none(), || format!("not reversible: {x:?}"))?;
        for map in find_morphisms(&x, &x, MorphismKind::Condensation, None) {
            condensations += 1;
            ensure(check_morphism(&x, &x, MorphismKind::Isomorphism, &map).is_ok(), || {
                format!("condensation {map:?} of {x:?} is not an automorphism")
            })?;
        }
    }
    Ok(format!("500 digraphs, {condensations} bijective endomorphisms, all automorphisms"))
}

fn seq(entries: &[(CardValue, Multiplicity)]) -> CardinalSequence {
    CardinalSequence::from_entries(entries.iter().copied())
}

fn c2_cardinal_vectors() -> Result<String, String> {
    let v = decide_reversible(&seq(&[(CardValue::Nat(2), Aleph0), (CardValue::Nat(5), Aleph0)]));
    ensure(v.reversible, || format!("{{2:inf,5:inf}}: {}", v.to_text()))?;

    let v = decide_reversible(&seq(&[(CardValue::Nat(2), Aleph0), (CardValue::Nat(4), Aleph0)]));
    ensure(!v.reversible && v.to_text().contains("representation 4 = 2 + 2"), || {
        format!("{{2:inf,4:inf}}: {}", v.to_text())
    })?;

    for entries in [
        vec![(CardValue::Nat(1), Finite(3))],
        vec![(CardValue::Nat(2), Finite(4)), (CardValue::Nat(5), Finite(1)), (CardValue::Aleph(1), Finite(2))],
        vec![(CardValue::Aleph(0), Finite(6))],
    ] {
        let v = decide_reversible(&seq(&entries));
        ensure(v.reversible && v.to_text().contains("finite-to-one"), || format!("{entries:?}: {}", v.to_text()))?;
    }

    let v = decide_reversible(&seq(&[(CardValue::Aleph(0), Aleph0)]));
    ensure(!v.reversible && v.to_text().contains("not-all-natural"), || format!("{{aleph_0:inf}}: {}", v.to_text()))?;
    let v = decide_reversible(&seq(&[(CardValue::Nat(3), Aleph0), (CardValue::Aleph(0), Aleph0)]));
    ensure(!v.reversible, || format!("{{3:inf,aleph_0:inf}}: {}", v.to_text()))?;
    Ok("reference vectors reproduced".into())
}

/// All subsets of `1..=20` with one to four elements.
fn small_generator_sets() -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    fn go(start: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == 4 {
            return;
        }
        for x in start..=20 {
            cur.push(x);
            go(x + 1, cur, out);
            cur.pop();
        }
    }
    go(1, &mut Vec::new(), &mut out);
    out
}

/// Every `n ≤ limit` that is a nonempty sum of generators, by walking all
/// coefficient vectors.
fn reachable_by_enumeration(gens: &[u64], limit: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    fn go(gens: &[u64], i: usize, total: u64, used: bool, limit: u64, out: &mut BTreeSet<u64>) {
        if i == gens.len() {
            if used {
                out.insert(total);
            }
            return;
        }
        let mut t = total;
        let mut c = 0;
        while t <= limit {
            go(gens, i + 1, t, used || c > 0, limit, out);
            t += gens[i];
            c += 1;
        }
    }
    go(gens, 0, 0, false, limit, &mut out);
    out
}

fn c3_semigroup_oracle() -> Result<String, String> {
    let sets = small_generator_sets();
    let mut cases = 0;
    for k in &sets {
        let reachable = reachable_by_enumeration(k, 40);
        for n in 1..=40 {
            cases += 1;
            let dp = semigroup_member(n, k);
            ensure(dp.is_some() == reachable.contains(&n), || format!("n={n} K={k:?}: dp {dp:?}"))?;
            if let Some(parts) = dp {
                ensure(check_representation(n, &parts, k, None), || format!("bad representation {parts:?} of {n}"))?;
            }
        }
        // independence agrees with the same oracle
        let dependent = k.iter().find(|&&m| reachable_by_enumeration(&k.iter().copied().filter(|&g| g != m).collect::<Vec<_>>(), m).contains(&m));
        match is_independent(k) {
            Independence::Independent => ensure(dependent.is_none(), || format!("K={k:?} called independent"))?,
            Independence::Dependent { n, representation } => ensure(
                dependent.is_some() && check_representation(n, &representation, k, Some(n)),
                || format!("K={k:?} dependent via {n} = {representation:?}"),
            )?,
        }
    }
    Ok(format!("{} generator sets, {cases} (n, K) pairs", sets.len()))
}

fn c4_cross_module() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut merges = 0;
    for round in 0..50 {
        let count = rng.random_range(1..=4);
        let mut sizes: Vec<usize> = (1..=6).collect();
        let mut templates = Vec::new();
        for _ in 0..count {
            let n = sizes.remove(rng.random_range(0..sizes.len()));
            let m = match rng.random_range(0..7) {
                0 => Aleph0,
                k => Finite(k),
            };
            templates.push((format!("C{n}"), BinaryStructure::chain(n), m));
        }
        let cards: Vec<(CardValue, Multiplicity)> =
            templates.iter().map(|(_, s, m)| (CardValue::Nat(s.len() as u64), *m)).collect();
        let fam = StructureFamily::from_parts(templates).map_err(|e| e.to_string())?;
        let expected = decide_reversible(&seq(&cards));
        let verdict = decide_family(&fam, DecideOptions::default());
        ensure(verdict.status == expected.status(), || {
            format!("round {round}: family says {}, cardinals say {}\n{}", verdict.status, expected.status(), fam.to_text())
        })?;
        if let Evidence::Merge(w) = &verdict.evidence {
            merges += 1;
            validate_merge_witness(&fam, w, 200).map_err(|e| format!("round {round}: {e}"))?;
        }
        let reread = FamilyVerdict::parse(&verdict.to_text(&fam), &fam).map_err(|e| e.to_string())?;
        ensure(reread == verdict, || format!("round {round}: verdict text does not round-trip"))?;
        reread.validate(&fam, 200).map_err(|e| format!("round {round}: {e}"))?;
    }
    Ok(format!("50 families agree, {merges} merge witnesses re-validated"))
}

fn c5_orbit_fiber() -> Result<String, String> {
    let mut checked = 0u64;
    let mut surjections = 0u64;
    for n in 1..=6usize {
        let total = n.pow(n as u32);
        for code in 0..total {
            let mut f = vec![0; n];
            let mut c = code;
            for slot in f.iter_mut() {
                *slot = c % n;
                c /= n;
            }
            let image: BTreeSet<usize> = f.iter().copied().collect();
            if image.len() == n {
                surjections += 1;
            }
            for j in 0..n {
                let fiber = f.iter().filter(|&&v| v == j).count();
                if fiber < 2 {
                    continue;
                }
                checked += 1;
                let r = orbit_fiber_check(&f, j).map_err(|e| format!("f={f:?} j={j}: {e}"))?;
                ensure(r.intersection.len() <= 1, || format!("f={f:?} j={j}"))?;
            }
        }
    }
    Ok(format!(
        "{checked} (map, j) cases with fiber >= 2 over all endomaps; the {surjections} surjections have none"
    ))
}

fn all_relations(n: usize) -> impl Iterator<Item = FiniteRelation> {
    (0u32..1 << (n * n)).map(move |bits| {
        let pairs = (0..n * n).filter(|i| bits >> i & 1 == 1).map(|i| (i / n, i % n));
        FiniteRelation::numbered(n, pairs)
    })
}

fn c6_products() -> Result<String, String> {
    let mut acyclic: Vec<FiniteRelation> = Vec::new();
    for n in 0..=3 {
        acyclic.extend(all_relations(n).filter(|r| find_cycle(r).is_none()));
    }
    let mut pairs = 0;
    for a in &acyclic {
        for b in &acyclic {
            pairs += 1;
            let p = product_relation(a, b);
            ensure(find_cycle(&p).is_none(), || format!("cycle in product of {a:?} and {b:?}"))?;
        }
    }
    // the full relation space on 3 points: products of cycle-free factors are
    // cycle-free, and a cycle in one nonempty factor lifts to the product
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let rel = |bits: u32| FiniteRelation::numbered(3, (0..9).filter(|i| bits >> i & 1 == 1).map(|i| (i / 3, i % 3)));
    for _ in 0..100_000 {
        let (a, b) = (rel(rng.random_range(0..512)), rel(rng.random_range(0..512)));
        let cyclic_factor = find_cycle(&a).is_some() || find_cycle(&b).is_some();
        let cyclic_product = find_cycle(&product_relation(&a, &b)).is_some();
        ensure(cyclic_factor == cyclic_product, || format!("{a:?} x {b:?}"))?;
    }
    Ok(format!("{pairs} cycle-free pairs on carriers <= 3 exhaustively, 100000 random pairs on 3 points"))
}

/// Ordinals with at most two CNF terms, coefficients in `1..=3` and
/// exponents of height at most one: a finite slice of height ≤ 2.
fn cnf_universe() -> Vec<Ordinal> {
    let w = Ordinal::omega();
    let exps = [
        Ordinal::zero(),
        Ordinal::one(),
        Ordinal::nat(2),
        w.clone(),
        &w + &Ordinal::one(),
        Ordinal::term(Ordinal::one(), 2),
        Ordinal::omega_pow(Ordinal::nat(2)),
    ];
    let mut out = vec![Ordinal::zero()];
    for (i, e) in exps.iter().enumerate() {
        for c in 1..=3 {
            out.push(Ordinal::term(e.clone(), c));
            for f in &exps[..i] {
                for d in 1..=3 {
                    out.push(Ordinal::from_terms(vec![(e.clone(), c), (f.clone(), d)]));
                }
            }
        }
    }
    out
}

fn c7_cnf_laws() -> Result<String, String> {
    let w = Ordinal::omega();
    let w2 = Ordinal::omega_pow(Ordinal::nat(2));
    ensure(&Ordinal::one() + &w == w, || "1 + w != w".into())?;
    ensure(&w + &w2 == w2, || "w + w^2 != w^2".into())?;
    ensure(&w2 * &w == Ordinal::omega_pow(Ordinal::nat(3)), || "w^2 * w != w^3".into())?;
    ensure(w2 > Ordinal::term(Ordinal::one(), 5), || "w^2 <= w*5".into())?;
    let u = cnf_universe();
    for a in &u {
        for b in &u {
            ensure((a < b) as u8 + (a == b) as u8 + (a > b) as u8 == 1, || format!("{a} vs {b}"))?;
            let ab = a + b;
            ensure(ab >= *b && ab >= *a, || format!("{a} + {b} below a summand"))?;
            for c in &u {
                ensure(&ab + c == a + &(b + c), || format!("({a}+{b})+{c} != {a}+({b}+{c})"))?;
                if a < b {
                    ensure(a + c <= b + c, || format!("{a} < {b} but {a}+{c} > {b}+{c}"))?;
                    if b < c {
                        ensure(a < c, || format!("{a} < {b} < {c} not transitive"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{} ordinals, {} triples", u.len(), u.len().pow(3)))
}

fn c8_classifier_anchors() -> Result<String, String> {
    let classify = |s: &str| classify_csb_limit(&Expr::parse(s).expect("anchor parses"));
    let mut failures = Vec::new();
    match classify("w^2") {
        Classification::Yes(n) if n.to_string() == "L(w^2)" => {}
        other => failures.push(format!("w^2: {other:?}")),
    }
    match classify("w+1") {
        Classification::No(r) if r.definitive => {}
        other => failures.push(format!("w+1: {other:?}")),
    }
    match classify("w^2*rev(w)+w^5") {
        Classification::Yes(n) if n.to_string() == "Z(2,5)" => {}
        other => failures.push(format!("w^2*rev(w)+w^5: {other:?}")),
    }
    match classify("w*rev(w)+1") {
        Classification::No(r) if r.definitive => {}
        other => failures.push(format!("w*rev(w)+1: {other:?}")),
    }
    match classify("w*rev(w)") {
        Classification::Yes(_) => {}
        other => failures.push(format!("w*rev(w) expected yes, got {other:?}")),
    }
    if failures.is_empty() {
        Ok("all anchors".into())
    } else {
        Err(failures.join("; "))
    }
}

fn c9_union() -> Result<String, String> {
    let fam = OtpFamily::parse("otp w^2 times inf").map_err(|e| e.to_string())?;
    let v = decide_union_reversibility(&fam);
    ensure(!v.reversible, || "{L(w^2):inf} called reversible".into())?;
    let witness = v.witness.ok_or("no witness")?;
    witness.validate(DEFAULT_WINDOW)?;

    let fam = OtpFamily::parse("otp w times 1\notp w^2 times 1\notp w^3 times 1").map_err(|e| e.to_string())?;
    ensure(decide_union_reversibility(&fam).reversible, || "{w, w^2, w^3} called not reversible".into())?;
    Ok(format!("even/odd split validated on {DEFAULT_WINDOW} points"))
}

fn random_ordinal_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth <= 1 || rng.random_bool(0.3) {
        return if rng.random_bool(0.5) { Expr::Omega } else { Expr::Nat(rng.random_range(0..4)) };
    }
    let a = Box::new(random_ordinal_expr(rng, depth - 1));
    let b = Box::new(random_ordinal_expr(rng, depth - 1));
    match rng.random_range(0..3) {
        0 => Expr::Sum(a, b),
        1 => Expr::Product(a, b),
        _ => Expr::Power(a, Box::new(Expr::Nat(rng.random_range(0..3)))),
    }
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth <= 1 || rng.random_bool(0.2) {
        return match rng.random_range(0..3) {
            0 => Expr::Nat(rng.random_range(0..4)),
            _ => Expr::Omega,
        };
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(random_expr(rng, depth - 1));
    match rng.random_range(0..6) {
        0 | 1 => Expr::Sum(sub(rng), sub(rng)),
        2 => Expr::Product(sub(rng), sub(rng)),
        3 => Expr::Rev(sub(rng)),
        4 => Expr::Power(Box::new(random_ordinal_expr(rng, depth - 1)), Box::new(Expr::Nat(rng.random_range(1..3)))),
        _ if depth >= 3 => {
            let inner = Box::new(random_expr(rng, depth - 2));
            Expr::Product(Box::new(random_ordinal_expr(rng, depth - 1)), Box::new(Expr::Rev(inner)))
        }
        _ => Expr::Rev(sub(rng)),
    }
}

fn c10_rewrite_sanity() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut yes, mut no, mut unsupported, mut steps) = (0, 0, 0, 0);
    for i in 0..1000 {
        let e = random_expr(&mut rng, 6);
        ensure(e.depth() <= 5, || format!("generator produced depth {}", e.depth()))?;
        let Ok(n) = normalize_limit_sum(&e) else {
            unsupported += 1;
            continue;
        };
        steps += n.steps.len();
        check_normalization(&n, DEFAULT_WINDOW).map_err(|err| format!("#{i} `{e}`: {err}"))?;
        let (again, extra) = rewrite_blocks(n.reduced.clone());
        ensure(extra.is_empty() && again == n.reduced, || format!("#{i} `{e}`: reduced list is not a fixed point"))?;
        match &n.result {
            Ok(sum) => {
                yes += 1;
                let reparsed = Expr::parse(&sum.to_expr_string()).map_err(|err| err.to_string())?;
                let second = normalize_limit_sum(&reparsed).map_err(|err| err.to_string())?;
                ensure(second.result.as_ref() == Ok(sum), || format!("#{i} `{e}`: {sum} re-normalizes differently"))?;
                ensure(normalize_blocks(sum.blocks()).result.as_ref() == Ok(sum), || format!("#{i}: block round trip"))?;
            }
            Err(_) => no += 1,
        }
    }
    Ok(format!("1000 expressions: {yes} yes, {no} no, {unsupported} unsupported; {steps} rewrites passed the window oracle"))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("finite reversibility oracle", c1_finite_reversibility),
        ("cardinal criterion on reference vectors", c2_cardinal_vectors),
        ("semigroup DP vs exhaustive oracle", c3_semigroup_oracle),
        ("family vs cardinal consistency", c4_cross_module),
        ("orbit/fiber lemma", c5_orbit_fiber),
        ("products of cycle-free relations", c6_products),
        ("CNF arithmetic laws", c7_cnf_laws),
        ("CSB limit-type classifier anchors", c8_classifier_anchors),
        ("union of limit-type orders", c9_union),
        ("rewrite-system sanity", c10_rewrite_sanity),
    ];
    let mut unexpected = Vec::new();
    for (i, (title, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        let expected_red = EXPECTED_RED.contains(&id);
        match &result {
            Ok(detail) => println!("criterion {id:>2} PASS  {title} ({secs:.2}s): {detail}"),
            Err(detail) if expected_red => println!("criterion {id:>2} FAIL  {title} ({secs:.2}s) [expected]: {detail}"),
            Err(detail) => println!("criterion {id:>2} FAIL  {title} ({secs:.2}s): {detail}"),
        }
        if result.is_ok() == expected_red {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        println!("criteria with an unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
