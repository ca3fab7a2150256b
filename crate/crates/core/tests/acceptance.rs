//! End-to-end acceptance checks over the bundled corpus. Each test prints
//! one `criterion N: PASS|FAIL` line to stderr (uncaptured) and fails on
//! FAIL.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcat_core::anodyne::{
    find_ascending_segment, find_descending_segment, lemma8_certificate, maximal_shuffle, minimal_shuffle,
    random_mutations, shuffle_leq, shuffles, theorem45_certificate, verify_certificate, AnodyneCertificate,
};
use qcat_core::category::{
    enumerate_functors, example40_with, is_equivalence_of_categories, iso_subgroupoid, nerve, FiniteCategory,
    IsoPowers,
};
use qcat_core::corpus::{corpus_categories, corpus_complexes};
use qcat_core::pathcat::{
    bounded_table, counit_check, hom_sets, induced_comparison, is_loop_free, path_category, product_comparison,
};
use qcat_core::quasi::{
    certify_quasi_category, core, enumerate_horns, find_filler, ho_category, quasi_iso_edges, quasi_iso_witness,
    CertVerdict, QuasiCategory,
};
use qcat_core::sset::{build_standard, iso_check, product, SimplicialSet, StandardKind};

type Outcome = Result<String, String>;

fn record(n: usize, title: &str, outcome: Outcome) {
    let line = match &outcome {
        Ok(detail) => format!("criterion {n}: PASS  {title} ({detail})\n"),
        Err(why) => format!("criterion {n}: FAIL  {title}: {why}\n"),
    };
    // straight to the handle, so the line survives output capture
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    if let Err(why) = outcome {
        panic!("criterion {n} failed: {why}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn standard(kind: StandardKind, n: usize, k: Option<usize>) -> Arc<SimplicialSet> {
    build_standard(kind, n, k).unwrap().complex
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Nerves in these checks are stored to dimension 3; the nerve is
/// 2-coskeletal, so this is enough to settle 3-dimensional horns directly.
const NERVE_BOUND: usize = 3;

#[test]
fn criterion_01_counit() {
    let mut checked = 0;
    let outcome = (|| {
        for c in corpus_categories() {
            let r = counit_check(&c.category, 2).map_err(|e| format!("{}: {e}", c.name))?;
            ensure(r.verdict.is_true(), || format!("{}: {:?}", c.name, r.failure))?;
            // loop-free cases: hom-sets of P(BC) counted by rewriting must be
            // the hom-sets of C itself
            let b = nerve(&c.category, 2);
            let p = path_category(&b.complex);
            if p.is_loop_free() {
                let t = hom_sets(&p).unwrap();
                for x in 0..c.category.num_objects() {
                    for y in 0..c.category.num_objects() {
                        let (px, py) = (p.object_of(b.vertex(x)).unwrap(), p.object_of(b.vertex(y)).unwrap());
                        ensure(t.count(px, py) == c.category.hom(x, y).len(), || {
                            format!("{}: |hom({x},{y})| differs", c.name)
                        })?;
                    }
                }
            }
            checked += 1;
        }
        Ok(format!("{checked} categories"))
    })();
    record(1, "counit P(BC) -> C is an isomorphism", outcome);
}

#[test]
fn criterion_02_products() {
    let mut inputs: Vec<(String, Arc<SimplicialSet>)> =
        corpus_complexes().unwrap().into_iter().map(|x| (x.name, x.complex)).collect();
    for c in corpus_categories() {
        let b = nerve(&c.category, 2);
        inputs.push((format!("B{}", c.name), b.complex));
    }
    inputs.retain(|(_, x)| is_loop_free(x));
    let mut pairs = 0;
    let outcome = (|| {
        for (nx, x) in &inputs {
            for (ny, y) in &inputs {
                // every pair of non-degenerate simplices contributes at least
                // one non-degenerate simplex, so this bound is a cheap filter
                if x.len() * y.len() > 200 {
                    continue;
                }
                let prod = product(x.clone(), y.clone(), None).unwrap();
                if prod.complex.len() > 200 {
                    continue;
                }
                let r = product_comparison(x, y).map_err(|e| format!("{nx} x {ny}: {e}"))?;
                ensure(r.isomorphism, || format!("{nx} x {ny}: {:?}", r.failure))?;
                pairs += 1;
            }
        }
        ensure(pairs > 0, || "no pairs".into())?;
        Ok(format!("{pairs} pairs"))
    })();
    record(2, "P(X x Y) -> P(X) x P(Y) is an isomorphism", outcome);
}

#[test]
fn criterion_03_inner_horns() {
    let outcome = (|| {
        let mut count = 0;
        for n in 2..=5 {
            for k in 1..n {
                let h = build_standard(StandardKind::Horn, n, Some(k)).unwrap();
                let r = induced_comparison(h.inclusion.as_ref().unwrap()).unwrap();
                ensure(r.isomorphism, || format!("({n},{k}): {:?}", r.failure))?;
                count += 1;
            }
        }
        let mut failures = Vec::new();
        for k in [0, 2] {
            let h = build_standard(StandardKind::Horn, 2, Some(k)).unwrap();
            let r = induced_comparison(h.inclusion.as_ref().unwrap()).unwrap();
            ensure(!r.isomorphism, || format!("outer horn (2,{k}) compared as isomorphic"))?;
            failures.push(format!("(2,{k}): {}", r.failure.unwrap_or_default()));
        }
        Ok(format!("{count} inner horns; outer {}", failures.join("; ")))
    })();
    record(3, "P(inner horn) -> P(simplex) is an isomorphism", outcome);
}

fn check_certificate(c: &AnodyneCertificate, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let v = verify_certificate(c);
    ensure(v.ok, || format!("{}: {:?}", c.label, v.reason))?;
    // every step adds exactly two simplices, and together they fill the gap
    let gap = c.target.len() - c.source.len();
    ensure(gap == 2 * c.steps.len(), || format!("{}: {gap} missing, {} steps", c.label, c.steps.len()))?;
    for (kind, m) in random_mutations(c, 100, rng) {
        ensure(!verify_certificate(&m).ok, || format!("{}: {kind:?} mutation accepted", c.label))?;
    }
    Ok(())
}

#[test]
fn criterion_04_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let outcome = (|| {
        let mut lemma8 = 0;
        for n in 1..=5usize {
            for bits in 0u32..(1 << (n + 1)) {
                let s: BTreeSet<usize> = (0..=n).filter(|i| bits & (1 << i) != 0).collect();
                if !s.contains(&0) || !s.contains(&n) || s.len() > n {
                    ensure(lemma8_certificate(n, &s).is_err(), || format!("invalid S {s:?} accepted for n={n}"))?;
                    continue;
                }
                let c = lemma8_certificate(n, &s).map_err(|e| format!("n={n} S={s:?}: {e}"))?;
                check_certificate(&c, &mut rng)?;
                lemma8 += 1;
            }
        }
        let mut prisms = 0;
        for n in 2..=4 {
            for k in 1..n {
                for m in 0..=3 {
                    let c = theorem45_certificate(n, k, m).map_err(|e| format!("({n},{k},{m}): {e}"))?;
                    check_certificate(&c, &mut rng)?;
                    prisms += 1;
                }
            }
        }
        Ok(format!("{lemma8} face-union and {prisms} prism certificates, 100 mutations each rejected"))
    })();
    record(4, "anodyne certificates build, replay, and reject mutations", outcome);
}

/// Lattice paths by dynamic programming over the grid.
fn count_paths(r: usize, s: usize) -> usize {
    let mut grid = vec![vec![0usize; s + 1]; r + 1];
    for i in 0..=r {
        for j in 0..=s {
            grid[i][j] = if i == 0 || j == 0 { 1 } else { grid[i - 1][j] + grid[i][j - 1] };
        }
    }
    grid[r][s]
}

/// Non-degenerate simplices of Δ¹ × Δ¹ by brute force: pairs of monotone
/// maps [n] -> [1] that are jointly injective.
fn square_counts() -> Vec<usize> {
    let monotone = |n: usize| -> Vec<Vec<usize>> { (0..=n + 1).map(|c| (0..=n).map(|t| usize::from(t >= c)).collect()).collect() };
    (0..=3)
        .map(|n| {
            let maps = monotone(n);
            maps.iter()
                .flat_map(|a| maps.iter().map(move |b| (a, b)))
                .filter(|(a, b)| {
                    let pts: BTreeSet<(usize, usize)> = (0..=n).map(|t| (a[t], b[t])).collect();
                    pts.len() == n + 1
                })
                .count()
        })
        .take_while(|&c| c > 0)
        .collect()
}

#[test]
fn criterion_05_shuffles() {
    let outcome = (|| {
        for r in 0..=10 {
            for s in 0..=10 - r {
                let list = shuffles(r, s);
                ensure(list.len() == count_paths(r, s) && list.len() == binomial(r + s, r), || {
                    format!("({r},{s}): {} shuffles", list.len())
                })?;
            }
        }
        let mut exhaustive = 0;
        for r in 0..=7 {
            for s in 0..=7 - r {
                let (lo, hi) = (minimal_shuffle(r, s), maximal_shuffle(r, s));
                for sigma in shuffles(r, s) {
                    ensure(shuffle_leq(&lo, &sigma).unwrap() && shuffle_leq(&sigma, &hi).unwrap(), || {
                        format!("({r},{s}): extrema fail for {:?}", sigma.points)
                    })?;
                    // a j-step followed by an i-step exists iff sigma is not the top
                    match find_descending_segment(&sigma) {
                        None => ensure(sigma == hi, || format!("({r},{s}): no segment below the top"))?,
                        Some(t) => {
                            ensure(!sigma.is_i_step(t) && sigma.is_i_step(t + 1), || "not a corner".into())?;
                            let up = sigma.swap_corner(t);
                            ensure(shuffle_leq(&sigma, &up).unwrap() && up != sigma, || "swap does not go up".into())?;
                            ensure(up.face(t + 1) == sigma.face(t + 1), || "swap changes more than a corner".into())?;
                        }
                    }
                    match find_ascending_segment(&sigma) {
                        None => ensure(sigma == lo, || format!("({r},{s}): no segment above the bottom"))?,
                        Some(t) => {
                            ensure(sigma.is_i_step(t) && !sigma.is_i_step(t + 1), || "not a corner".into())?;
                            let down = sigma.swap_corner(t);
                            ensure(shuffle_leq(&down, &sigma).unwrap() && down != sigma, || "swap does not go down".into())?;
                        }
                    }
                    exhaustive += 1;
                }
            }
        }
        let d1 = standard(StandardKind::Simplex, 1, None);
        let counts = product(d1.clone(), d1, None).unwrap().complex.counts();
        let oracle = square_counts();
        ensure(counts == oracle && counts == vec![4, 5, 2], || format!("square counts {counts:?} vs {oracle:?}"))?;
        Ok(format!("{exhaustive} shuffles checked exhaustively, square counts {counts:?}"))
    })();
    record(5, "shuffle counts, extrema and corners", outcome);
}

/// Certification fails, with an inner horn that has no filler.
fn located_failure(name: &str, x: &SimplicialSet) -> Result<(), String> {
    let r = certify_quasi_category(x).unwrap();
    ensure(r.verdict == CertVerdict::Counterexample, || format!("{name}: {:?}", r.verdict))?;
    let h = r.counterexample.ok_or_else(|| format!("{name}: no horn reported"))?;
    ensure(h.is_inner(), || format!("{name}: reported horn is outer"))?;
    ensure(find_filler(x, &h).unwrap().is_none(), || format!("{name}: reported horn has a filler"))?;
    let candidates = x.all_simplices(h.n);
    ensure(!candidates.iter().any(|s| h.is_filled_by(x, s)), || format!("{name}: brute force finds a filler"))?;
    Ok(())
}

#[test]
fn criterion_06_certification() {
    let outcome = (|| {
        let mut passed = 0;
        for c in corpus_categories() {
            let b = nerve(&c.category, NERVE_BOUND);
            let r = certify_quasi_category(&b.complex).unwrap();
            ensure(r.verdict == CertVerdict::QuasiCategory, || format!("B{}: {:?}", c.name, r.verdict))?;
            passed += 1;
        }
        for n in 0..=4 {
            for m in 0..=4 - n {
                let x = product(standard(StandardKind::Simplex, n, None), standard(StandardKind::Simplex, m, None), None).unwrap();
                let r = certify_quasi_category(&x.complex).unwrap();
                ensure(r.verdict == CertVerdict::QuasiCategory, || format!("D{n} x D{m}: {:?}", r.verdict))?;
                passed += 1;
            }
        }
        located_failure("horn(2,1)", &standard(StandardKind::Horn, 2, Some(1)))?;
        for k in 0..=3 {
            located_failure(&format!("horn(3,{k})"), &standard(StandardKind::Horn, 3, Some(k)))?;
        }
        Ok(format!("{passed} quasi-categories certified, 5 failures located"))
    })();
    record(6, "quasi-category certification", outcome);
}

#[test]
fn criterion_07_cores() {
    let outcome = (|| {
        let mut groupoids = 0;
        for c in corpus_categories() {
            let b = nerve(&c.category, NERVE_BOUND);
            let q = QuasiCategory::certify(b.complex.clone()).unwrap();
            let j = core(&q).unwrap();
            let iso = nerve(iso_subgroupoid(&c.category).groupoid.category(), NERVE_BOUND);
            let found = iso_check(&j.complex, &iso.complex, Some(10_000)).map_err(|e| format!("{}: {e}", c.name))?;
            ensure(found.is_some(), || format!("{}: core is not B(Iso C)", c.name))?;
            if c.category.is_groupoid() {
                ensure(j.complex.len() == b.complex.len(), || format!("{}: groupoid core is smaller", c.name))?;
                groupoids += 1;
            }
            for &e in j.complex.edges() {
                let edge = b.complex.expr(j.ambient(e));
                let w = quasi_iso_witness(&b.complex, &edge).ok_or_else(|| format!("{}: core edge without witness", c.name))?;
                ensure(w.check(&b.complex), || format!("{}: witness does not check", c.name))?;
            }
        }
        Ok(format!("{} categories, {groupoids} groupoids", corpus_categories().len()))
    })();
    record(7, "core of a nerve is the nerve of the isomorphisms", outcome);
}

#[test]
fn criterion_08_homotopy_category() {
    let outcome = (|| {
        let mut xs: Vec<(String, Arc<SimplicialSet>, Option<Arc<FiniteCategory>>)> =
            corpus_complexes().unwrap().into_iter().map(|x| (x.name, x.complex, None)).collect();
        for c in corpus_categories() {
            xs.push((format!("B{}", c.name), nerve(&c.category, NERVE_BOUND).complex, Some(c.category)));
        }
        let mut certified = 0;
        for (name, x, c) in xs {
            if certify_quasi_category(&x).unwrap().verdict != CertVerdict::QuasiCategory {
                continue;
            }
            let q = QuasiCategory::certify(x.clone()).unwrap();
            let h = ho_category(&q).map_err(|e| format!("{name}: {e}"))?;
            let p = path_category(&x);
            // words of length 3 already relate every path to its composite
            let table = if p.is_loop_free() { hom_sets(&p).unwrap() } else { bounded_table(&p, 3).unwrap() };
            ensure(h.matches_path_category(&q, &p, &table), || format!("{name}: ho(X) differs from P(X)"))?;
            ensure(h.filler_independent, || format!("{name}: composition depends on the filler"))?;
            ensure(h.homotopy_coherent, || format!("{name}: left and right homotopy differ"))?;
            if let Some(c) = c {
                ensure(h.category.num_arrows() == c.num_arrows() && h.category.num_objects() == c.num_objects(), || {
                    format!("{name}: ho(BC) has the wrong size")
                })?;
            }
            certified += 1;
        }
        Ok(format!("{certified} certified complexes"))
    })();
    record(8, "ho(X) agrees with P(X)", outcome);
}

#[test]
fn criterion_09_example40() {
    let outcome = (|| {
        let small: Vec<_> = corpus_categories().into_iter().filter(|c| c.category.num_objects() <= 3).collect();
        let powers: Vec<IsoPowers> = small.iter().map(|c| IsoPowers::new(&c.category)).collect();
        let (mut functors, mut equivalences) = (0, 0);
        for (i, c) in small.iter().enumerate() {
            for (j, d) in small.iter().enumerate() {
                for f in enumerate_functors(&c.category, &d.category) {
                    let e = example40_with(&f, &powers[i], &powers[j]).unwrap().equivalent;
                    ensure(e == is_equivalence_of_categories(&f), || {
                        format!("{} -> {}: criterion says {e}", c.name, d.name)
                    })?;
                    functors += 1;
                    equivalences += usize::from(e);
                }
            }
        }
        Ok(format!("{} categories, {functors} functors, {equivalences} equivalences", small.len()))
    })();
    record(9, "nerve equivalence test agrees with categorical equivalence", outcome);
}

#[test]
fn criterion_10_outer_horns() {
    let outcome = (|| {
        let mut xs: Vec<(String, Arc<SimplicialSet>)> = corpus_complexes().unwrap().into_iter().map(|x| (x.name, x.complex)).collect();
        for c in corpus_categories() {
            xs.push((format!("B{}", c.name), nerve(&c.category, 4).complex));
        }
        let (mut filled, mut spaces) = (0, 0);
        for (name, x) in xs {
            if certify_quasi_category(&x).unwrap().verdict != CertVerdict::QuasiCategory {
                continue;
            }
            spaces += 1;
            let q = QuasiCategory::certify(x.clone()).unwrap();
            let table = quasi_iso_edges(&q);
            for n in 2..=x.dim_bound().min(4) {
                for h in enumerate_horns(&x, n, 0).unwrap() {
                    if table.contains(h.leading_edge()) {
                        ensure(find_filler(&x, &h).unwrap().is_some(), || format!("{name}: Λ^{n}_0 horn does not fill"))?;
                        filled += 1;
                    }
                }
                for h in enumerate_horns(&x, n, n).unwrap() {
                    if table.contains(h.trailing_edge()) {
                        ensure(find_filler(&x, &h).unwrap().is_some(), || format!("{name}: Λ^{n}_{n} horn does not fill"))?;
                        filled += 1;
                    }
                }
            }
        }
        // B[1]: the arrow 0 -> 1 has no inverse, so extending it against the
        // identity of 0 fails
        let b = nerve(&Arc::new(FiniteCategory::poset(1)), 2);
        let q = QuasiCategory::certify(b.complex.clone()).unwrap();
        let table = quasi_iso_edges(&q);
        let stuck = enumerate_horns(&b.complex, 2, 0)
            .unwrap()
            .into_iter()
            .find(|h| !table.contains(h.leading_edge()) && find_filler(&b.complex, h).unwrap().is_none())
            .ok_or("no non-filling outer horn in B[1]")?;
        ensure(stuck.leading_edge().dim() == 1 && !stuck.leading_edge().is_degenerate(), || "leading edge is degenerate".into())?;
        Ok(format!("{filled} outer horns filled over {spaces} quasi-categories; non-filling horn found in B[1]"))
    })();
    record(10, "outer horns with invertible edge fill", outcome);
}
