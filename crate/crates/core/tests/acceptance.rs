//! The acceptance battery. Each criterion runs at exact tolerance and
//! reports one line; run with `--nocapture` to see them on success.

use std::collections::BTreeSet;
use std::time::Instant;

use frucht::aut::naive::backtrack_isomorphisms;
use frucht::aut::{decode_consistency, PermutationMap};
use frucht::codec::{xi_digits, SupportCoding};
use frucht::frucht::{degree_classes, oracle_agreement};
use frucht::groups::{acceptance_catalog, XorElement, XorGroup};
use frucht::{
    anchored_rigidity_check, cantor_pair, cantor_unpair, decode, finite_psi, lift, lift_permutation,
    materialize, materialize_gadget, verify_realization, zeta, BigRational, CodeWord, EdgeOracle, FiniteGroup,
    FruchtGraph, Group, GroupSpec, Vertex, VerifyOptions,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn catalog_graphs() -> Vec<(GroupSpec, FiniteGroup, FruchtGraph)> {
    acceptance_catalog()
        .into_iter()
        .map(|spec| {
            let group = spec.build().unwrap();
            let graph = materialize(&group, &finite_psi(&group)).unwrap();
            (spec, group, graph)
        })
        .collect()
}

/// All terminated code words with `1..=max_len` bits.
fn codes(max_len: usize) -> Vec<CodeWord> {
    (1..=max_len)
        .flat_map(|len| {
            (0..1u32 << (len - 1)).map(move |payload| {
                CodeWord::terminated((0..len - 1).map(|b| (payload >> b) & 1 == 1).collect())
            })
        })
        .collect()
}

fn realization() -> Outcome {
    let specs = acceptance_catalog();
    ensure(specs.len() == 14, || format!("catalog has {} groups", specs.len()))?;
    for spec in &specs {
        let group = spec.build().unwrap();
        let started = Instant::now();
        let report = verify_realization(&group, &finite_psi(&group), VerifyOptions::default())
            .map_err(|e| format!("{spec}: {e}"))?;
        ensure(report.passed() && report.aut_count == group.order(), || format!("{spec}: {report:?}"))?;
        let secs = started.elapsed().as_secs_f64();
        ensure(secs < 60.0, || format!("{spec}: took {secs:.1}s"))?;
    }
    Ok(format!("{} groups, |Aut| = |G| and Aut = lifts", specs.len()))
}

fn gadget_rigidity() -> Outcome {
    let all = codes(8);
    ensure(all.len() == 255, || format!("{} codes", all.len()))?;
    for code in &all {
        let gadget = materialize_gadget(code).unwrap();
        ensure(anchored_rigidity_check(&gadget), || format!("{code} is not anchored-rigid"))?;
        if code.len() <= 5 {
            let anchored = backtrack_isomorphisms(gadget.graph(), gadget.graph(), &[0], 2);
            ensure(anchored.len() == 1, || format!("{code}: naive search found {} maps", anchored.len()))?;
        }
    }
    Ok(format!("{} codes rigid, naive cross-check up to length 5", all.len()))
}

fn gadget_separation() -> Outcome {
    let gadgets: Vec<_> = codes(5).iter().map(|c| materialize_gadget(c).unwrap()).collect();
    let mut pairs = 0;
    for (i, a) in gadgets.iter().enumerate() {
        for b in &gadgets[i + 1..] {
            let iso = backtrack_isomorphisms(a.graph(), b.graph(), &[], 1);
            ensure(iso.is_empty(), || format!("{} ≅ {}", a.code(), b.code()))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs of distinct codes non-isomorphic"))
}

fn decoder() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for (spec, group, graph) in catalog_graphs() {
        let probes: Vec<Vertex<usize>> = graph.probes().cloned().collect();
        for _ in 0..100 {
            let g = rng.gen_range(0..group.order());
            let f = lift(&group, &g).unwrap();
            let chosen: Vec<Vertex<usize>> = if group.order() <= 7 {
                probes.clone()
            } else {
                probes.choose_multiple(&mut rng, 50).cloned().collect()
            };
            for probe in &chosen {
                let decoded = decode(&f, &group, probe).map_err(|e| format!("{spec}: {e}"))?;
                ensure(decoded == g, || format!("{spec}: probe {probe} decoded {decoded}, expected {g}"))?;
            }
            if !probes.is_empty() {
                let permutation = lift_permutation(&graph, &group, g).unwrap();
                let map = PermutationMap { graph: &graph, permutation: &permutation };
                ensure(decode_consistency(&map, &group, &chosen, graph.vertices()), || {
                    format!("{spec}: materialized lift of {g} decodes inconsistently")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} trials, decode(lift(g)) = g from every probe checked"))
}

fn random_xor(rng: &mut ChaCha8Rng) -> XorElement {
    (0..12u64).filter(|_| rng.gen_bool(0.4)).collect()
}

fn random_pair(rng: &mut ChaCha8Rng) -> (Vertex<XorElement>, Vertex<XorElement>) {
    let x = random_xor(rng);
    let y = if rng.gen_bool(0.2) { x.clone() } else { random_xor(rng) };
    let u = Vertex::new(x.clone(), y.clone(), rng.gen_range(0..40));
    let v = match rng.gen_range(0..4) {
        0 => Vertex::new(x, y, u.k + rng.gen_range(1..3)),
        1 => Vertex::new(x.clone(), x, 0),
        2 => Vertex::new(y.clone(), y, 0),
        _ => Vertex::new(random_xor(rng), random_xor(rng), rng.gen_range(0..40)),
    };
    (u, v)
}

fn oracle_agreement_criterion() -> Outcome {
    let graphs = catalog_graphs();
    for (spec, group, graph) in &graphs {
        let coding = finite_psi(group);
        let bit = |e: &usize, i: u64| coding.word(*e).bit(i);
        ensure(oracle_agreement(graph, &EdgeOracle::new(group, &bit)), || format!("{spec}: adjacency differs"))?;
    }

    let group = XorGroup;
    let oracle = EdgeOracle::new(&group, &SupportCoding);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut adjacent = 0;
    for _ in 0..100_000 {
        let (u, v) = random_pair(&mut rng);
        let f = lift(&group, &random_xor(&mut rng)).unwrap();
        let before = oracle.main_edge(&u, &v).unwrap();
        let after = oracle.main_edge(&f.apply(&u), &f.apply(&v)).unwrap();
        ensure(before == after, || format!("lift by {} breaks {u:?} ~ {v:?}", group.encode(f.element())))?;
        adjacent += usize::from(before);
    }
    ensure(adjacent > 1000, || format!("only {adjacent} adjacent pairs sampled"))?;
    Ok(format!("{} catalog graphs agree; 10^5 XOR pairs preserved ({adjacent} edges)", graphs.len()))
}

fn codec() -> Outcome {
    for p in 0..1_000_000u64 {
        let (m, n) = cantor_unpair(&p).unwrap();
        ensure(cantor_pair(&m, &n) == Ok(p), || format!("roundtrip fails at {p}"))?;
    }
    let mut seen = BTreeSet::new();
    for m in 0..1000u64 {
        for n in 0..1000u64 {
            let p = cantor_pair(&m, &n).unwrap();
            ensure(cantor_unpair(&p) == Ok((m, n)), || format!("roundtrip fails at ({m}, {n})"))?;
            seen.insert(p);
        }
    }
    ensure(seen.len() == 1_000_000, || "pairing is not injective on the grid".into())?;

    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let half_digits = xi_digits(&half, 64).unwrap();
    let third_digits = xi_digits(&third, 64).unwrap();
    ensure(half_digits.iter().enumerate().all(|(i, &d)| d == (i > 0)), || "1/2 digits".into())?;
    ensure(third_digits.iter().enumerate().all(|(i, &d)| d == (i % 2 == 1)), || "1/3 digits".into())?;
    let tail = BigRational::new(BigInt::one(), BigInt::one() << 64);
    for (x, digits) in [(&half, &half_digits), (&third, &third_digits)] {
        let sum = digits.iter().enumerate().fold(BigRational::zero(), |acc, (i, &d)| {
            if d {
                acc + BigRational::new(BigInt::one(), BigInt::one() << (i + 1))
            } else {
                acc
            }
        });
        let gap = x - &sum;
        ensure(gap > BigRational::zero() && gap <= tail, || format!("partial sum of {x} off by {gap}"))?;
    }

    let relocated = zeta(|m, n| (m, n) == (0, 1));
    let ones: Vec<u64> = (0..10_000).filter(|&p| relocated.bit(p)).collect();
    ensure(ones == [2], || format!("zeta put (0,1) at {ones:?}"))?;
    Ok("pairing roundtrips, 1/2 and 1/3 to depth 64, zeta(0,1) = 2".into())
}

fn degree_catalog() -> Outcome {
    let mut checked = 0;
    for (spec, group, graph) in catalog_graphs().into_iter().filter(|(_, g, _)| g.order() >= 3) {
        let classes = degree_classes(graph.graph(), group.order());
        let expect = |pred: &dyn Fn(&Vertex<usize>) -> bool| -> Vec<usize> {
            (0..graph.vertices().len()).filter(|&i| pred(graph.vertex(i))).collect()
        };
        let off = |v: &Vertex<usize>, k| !v.is_diagonal() && v.k == k;
        ensure(classes.hubs == expect(&|v| v.is_hub()), || format!("{spec}: hubs"))?;
        ensure(classes.bases == expect(&|v| off(v, 0)), || format!("{spec}: (x,y,0) class"))?;
        ensure(classes.leaves == expect(&|v| off(v, 1)), || format!("{spec}: (x,y,1) class"))?;
        ensure(classes.anchors == expect(&|v| off(v, 2)), || format!("{spec}: (x,y,2) class"))?;
        checked += 1;
    }
    Ok(format!("{checked} graphs with |G| >= 3, all four classes recovered"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 7] = [
        ("realization", realization),
        ("gadget rigidity", gadget_rigidity),
        ("gadget separation", gadget_separation),
        ("decoder", decoder),
        ("oracle agreement", oracle_agreement_criterion),
        ("codec", codec),
        ("degree catalog", degree_catalog),
    ];
    let mut failed = Vec::new();
    for (number, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.1}s)", number + 1),
            Err(detail) => {
                println!("criterion {}: FAIL {name} ({detail}; {secs:.1}s)", number + 1);
                failed.push(number + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
