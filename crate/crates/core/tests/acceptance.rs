//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use graph_monads::category::{compose, Hom, DEFAULT_HOM_CAP};
use graph_monads::family::{labeled_graphs_up_to, random_graph};
use graph_monads::fixtures;
use graph_monads::graph::Graph;
use graph_monads::label::VertexLabel;
use graph_monads::matching::{
    algebra_to_matching, check_matching, check_monad_laws_t, enumerate_matchings, enumerate_perf_morphisms,
    enumerate_t_algebras, equalizer_perf, factor_through, is_perf_morphism, matching_to_algebra,
    product_perf, product_projections, PerfectMatching, DEFAULT_MATCHING_CAP,
};
use graph_monads::monad::Tower;
use graph_monads::steiner::{
    self, algebra_to_psts, check_monad_laws_s, enumerate_psts_morphisms, enumerate_psts_on,
    enumerate_s_algebras, is_complete_sts, is_psts, product_psts, psts_to_algebra, Psts, Triangle,
    DEFAULT_STEINER_CAP,
};

type Outcome = Result<String, String>;

/// Name, time limit, check.
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// All labeled graphs up to 5 vertices, then 100 seeded random graphs on 6 to 9.
fn law_family() -> Vec<Arc<Graph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out: Vec<Arc<Graph>> = labeled_graphs_up_to(5).map(Arc::new).collect();
    for _ in 0..100 {
        let n = rng.gen_range(6..=9);
        out.push(Arc::new(random_graph(n, 0.5, &mut rng)));
    }
    out
}

fn example_reproduction() -> Outcome {
    let g = Arc::new(fixtures::square_with_chord());
    let found = enumerate_matchings(&g, DEFAULT_MATCHING_CAP).map_err(|e| e.to_string())?;
    let (a1, a2) = fixtures::example_matchings(&g);
    ensure(found == vec![a1, a2], || format!("got {found:?}"))?;
    Ok("2 matchings: ab|cd, ac|bd".into())
}

fn monad_laws(family: &[Arc<Graph>], check: fn(&Arc<Graph>) -> graph_monads::monad::LawReport) -> Outcome {
    let failures: Vec<String> = family
        .par_iter()
        .filter_map(|g| {
            let report = check(g);
            (!report.all_hold()).then(|| format!("{g:?}: {report}"))
        })
        .collect();
    ensure(failures.is_empty(), || failures[0].clone())?;
    Ok(format!("{} graphs, 0 failures", family.len()))
}

fn s_laws(family: &[Arc<Graph>]) -> Outcome {
    let summary = monad_laws(family, check_monad_laws_s)?;
    let nested: usize = family
        .par_iter()
        .map(|g| Tower::<Triangle>::new(g.clone(), 3).level(3).order())
        .sum();
    Ok(format!("{summary}, {nested} S³ vertices"))
}

fn t_algebra_bijection() -> Outcome {
    let graphs: Vec<Arc<Graph>> = labeled_graphs_up_to(5).map(Arc::new).collect();
    let totals = graphs
        .par_iter()
        .map(|g| -> Result<usize, String> {
            let matchings = enumerate_matchings(g, DEFAULT_MATCHING_CAP).map_err(|e| e.to_string())?;
            let algebras = enumerate_t_algebras(g, DEFAULT_MATCHING_CAP).map_err(|e| e.to_string())?;
            ensure(matchings.len() == algebras.len(), || {
                format!(
                    "{g:?}: {} matchings, {} algebras",
                    matchings.len(),
                    algebras.len()
                )
            })?;
            for m in &matchings {
                ensure(algebra_to_matching(&matching_to_algebra(m)) == *m, || {
                    format!("{g:?}: {m:?}")
                })?;
            }
            for a in &algebras {
                ensure(matching_to_algebra(&algebra_to_matching(a)) == *a, || {
                    format!("{g:?}: {a:?}")
                })?;
            }
            let image: BTreeSet<Vec<usize>> = matchings
                .iter()
                .map(|m| matching_to_algebra(m).structure_map().indices().to_vec())
                .collect();
            let direct: BTreeSet<Vec<usize>> = algebras
                .iter()
                .map(|a| a.structure_map().indices().to_vec())
                .collect();
            ensure(image == direct, || format!("{g:?}: algebra sets differ"))?;
            Ok(matchings.len())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!(
        "{} graphs, {} matchings",
        graphs.len(),
        totals.iter().sum::<usize>()
    ))
}

fn s_algebra_bijection() -> Outcome {
    let graphs: Vec<Arc<Graph>> = labeled_graphs_up_to(6).map(Arc::new).collect();
    let totals = graphs
        .par_iter()
        .map(|g| -> Result<usize, String> {
            let systems = enumerate_psts_on(g, DEFAULT_STEINER_CAP).map_err(|e| e.to_string())?;
            let algebras = enumerate_s_algebras(g, DEFAULT_STEINER_CAP).map_err(|e| e.to_string())?;
            let mut derived: Vec<Psts> = algebras.iter().map(algebra_to_psts).collect();
            derived.sort();
            ensure(derived == systems, || {
                format!("{g:?}: {} systems, {} algebras", systems.len(), algebras.len())
            })?;
            for a in &algebras {
                let p = algebra_to_psts(a);
                let back = psts_to_algebra(&p).map_err(|e| e.to_string())?;
                ensure(back == *a, || format!("{g:?}: algebra round trip"))?;
            }
            for p in &systems {
                let alg = psts_to_algebra(p).map_err(|e| e.to_string())?;
                ensure(algebra_to_psts(&alg) == *p, || {
                    format!("{g:?}: system round trip")
                })?;
            }
            Ok(systems.len())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!(
        "{} graphs, {} corresponding pairs",
        graphs.len(),
        totals.iter().sum::<usize>()
    ))
}

/// Every matched graph on at most `max_n` labeled vertices.
fn perf_structures(max_n: usize) -> Vec<PerfectMatching> {
    labeled_graphs_up_to(max_n)
        .flat_map(|g| enumerate_matchings(&Arc::new(g), DEFAULT_MATCHING_CAP).expect("small graph"))
        .collect()
}

/// Every partial Steiner system on at most `max_n` labeled points.
fn psts_structures(max_n: usize) -> Vec<Psts> {
    labeled_graphs_up_to(max_n)
        .flat_map(|g| enumerate_psts_on(&g, DEFAULT_STEINER_CAP).expect("small graph"))
        .collect()
}

fn perf_morphisms(a: &PerfectMatching, b: &PerfectMatching) -> Vec<Hom> {
    enumerate_perf_morphisms(a, b, DEFAULT_HOM_CAP).expect("small search")
}

fn perf_product(factors: &[PerfectMatching], tests: &[PerfectMatching]) -> Result<usize, String> {
    // Morphisms from each test object into each factor.
    let into: Vec<Vec<Vec<Hom>>> = tests
        .iter()
        .map(|c| factors.iter().map(|a| perf_morphisms(c, a)).collect())
        .collect();
    let pairs: Vec<(usize, usize)> = (0..factors.len())
        .flat_map(|i| (0..factors.len()).map(move |j| (i, j)))
        .collect();
    let checked = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<usize, String> {
            let (a, b) = (&factors[i], &factors[j]);
            let p = product_perf(a, b);
            ensure(check_matching(p.graph(), &p.label_map()).holds(), || {
                format!("product of {a:?} and {b:?} is not matched")
            })?;
            let (pa, pb) = product_projections(&p, a, b);
            ensure(
                is_perf_morphism(&pa, &p, a).map_err(|e| e.to_string())?.holds()
                    && is_perf_morphism(&pb, &p, b).map_err(|e| e.to_string())?.holds(),
                || "projection is not a Perf morphism".into(),
            )?;
            for (t, c) in tests.iter().enumerate() {
                let cones: BTreeSet<(Vec<usize>, Vec<usize>)> = into[t][i]
                    .iter()
                    .flat_map(|f| {
                        into[t][j]
                            .iter()
                            .map(|g| (f.indices().to_vec(), g.indices().to_vec()))
                    })
                    .collect();
                let mediating = perf_morphisms(c, &p);
                let legs: BTreeSet<(Vec<usize>, Vec<usize>)> = mediating
                    .iter()
                    .map(|h| {
                        let f = compose(&pa, h).expect("composable");
                        let g = compose(&pb, h).expect("composable");
                        (f.indices().to_vec(), g.indices().to_vec())
                    })
                    .collect();
                ensure(mediating.len() == cones.len() && legs == cones, || {
                    format!(
                        "{c:?} into {a:?} x {b:?}: {} mediating, {} cones",
                        mediating.len(),
                        cones.len()
                    )
                })?;
            }
            Ok(tests.len())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(checked.iter().sum())
}

fn psts_product(factors: &[Psts]) -> Result<usize, String> {
    let into: Vec<Vec<Vec<Vec<usize>>>> = factors
        .iter()
        .map(|c| factors.iter().map(|a| enumerate_psts_morphisms(c, a)).collect())
        .collect();
    let pairs: Vec<(usize, usize)> = (0..factors.len())
        .flat_map(|i| (0..factors.len()).map(move |j| (i, j)))
        .collect();
    let checked = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<usize, String> {
            let (a, b) = (&factors[i], &factors[j]);
            let p = product_psts(a, b);
            let triples: Vec<Vec<VertexLabel>> = (0..p.triples().len())
                .map(|n| p.triple_labels(n).to_vec())
                .collect();
            ensure(is_psts(p.points(), &triples).holds(), || {
                format!("product of {a:?} and {b:?}")
            })?;
            let (pa, pb) = steiner::product_projections(a, b);
            let nb = b.points().len();
            for (t, c) in factors.iter().enumerate() {
                let cones: BTreeSet<(Vec<usize>, Vec<usize>)> = into[t][i]
                    .iter()
                    .flat_map(|f| into[t][j].iter().map(|g| (f.clone(), g.clone())))
                    .collect();
                let mediating = enumerate_psts_morphisms(c, &p);
                let legs: BTreeSet<(Vec<usize>, Vec<usize>)> = mediating
                    .iter()
                    .map(|h| {
                        (
                            h.iter().map(|&k| pa[k]).collect(),
                            h.iter().map(|&k| pb[k]).collect(),
                        )
                    })
                    .collect();
                ensure(mediating.len() == cones.len() && legs == cones, || {
                    format!(
                        "{c:?} into {a:?} x {b:?}: {} mediating, {} cones",
                        mediating.len(),
                        cones.len()
                    )
                })?;
                // The mediating map of a cone is the pairing.
                for h in &mediating {
                    ensure(h.iter().all(|&k| k == pa[k] * nb + pb[k]), || "pairing".into())?;
                }
            }
            Ok(factors.len())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(checked.iter().sum())
}

fn products() -> Outcome {
    let perf = perf_structures(4);
    let perf_cases = perf_product(&perf, &perf)?;
    let psts = psts_structures(4);
    let psts_cases = psts_product(&psts)?;
    Ok(format!(
        "{} matched graphs, {perf_cases} Perf cases; {} systems, {psts_cases} PSTS cases",
        perf.len(),
        psts.len()
    ))
}

fn equalizers() -> Outcome {
    let objects = perf_structures(4);
    let pairs: Vec<(usize, usize)> = (0..objects.len())
        .flat_map(|i| (0..objects.len()).map(move |j| (i, j)))
        .collect();
    let into: Vec<Vec<Vec<Hom>>> = objects
        .iter()
        .map(|c| objects.iter().map(|a| perf_morphisms(c, a)).collect())
        .collect();
    let counts = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<usize, String> {
            let (a, b) = (&objects[i], &objects[j]);
            let maps = &into[i][j];
            let mut cases = 0;
            for f in maps {
                for g in maps {
                    let (e, incl) = equalizer_perf(f, g, a, b).map_err(|e| e.to_string())?;
                    ensure(check_matching(e.graph(), &e.label_map()).holds(), || {
                        "not matched".into()
                    })?;
                    ensure(
                        is_perf_morphism(&incl, &e, a).map_err(|e| e.to_string())?.holds(),
                        || "inclusion is not a Perf morphism".into(),
                    )?;
                    let (fi, gi) = (
                        compose(f, &incl).expect("composable"),
                        compose(g, &incl).expect("composable"),
                    );
                    ensure(fi == gi, || "inclusion does not equalize".into())?;
                    for (t, c) in objects.iter().enumerate() {
                        let equalizing: Vec<&Hom> = into[t][i]
                            .iter()
                            .filter(|h| {
                                compose(f, h).expect("composable") == compose(g, h).expect("composable")
                            })
                            .collect();
                        for h in &equalizing {
                            let k =
                                factor_through(h, &incl).ok_or_else(|| format!("{h:?} does not factor"))?;
                            let k = Hom::new(c.graph().clone(), e.graph().clone(), k)
                                .map_err(|e| e.to_string())?;
                            ensure(
                                is_perf_morphism(&k, c, &e).map_err(|e| e.to_string())?.holds(),
                                || "factorization is not a Perf morphism".into(),
                            )?;
                        }
                        // Composing with the inclusion is injective, so equal counts
                        // make factorization unique.
                        let through = perf_morphisms(c, &e);
                        ensure(through.len() == equalizing.len(), || {
                            format!(
                                "{} maps into the equalizer, {} equalizing",
                                through.len(),
                                equalizing.len()
                            )
                        })?;
                    }
                    cases += 1;
                }
            }
            Ok(cases)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!(
        "{} objects, {} parallel pairs",
        objects.len(),
        counts.iter().sum::<usize>()
    ))
}

fn fano_product() -> Outcome {
    let fano = fixtures::fano();
    ensure(is_complete_sts(&fano), || "Fano is not complete".into())?;
    let p = product_psts(&fano, &fano);
    let labels: Vec<Vec<VertexLabel>> = (0..p.triples().len())
        .map(|n| p.triple_labels(n).to_vec())
        .collect();
    ensure(p.points().len() == 49, || format!("{} points", p.points().len()))?;
    ensure(is_psts(p.points(), &labels).holds(), || {
        "product fails is_psts".into()
    })?;

    // Brute force: a 3-set of pairs whose both projections are triples.
    let lines: BTreeSet<[usize; 3]> = fano.triples().iter().copied().collect();
    let is_line = |mut t: [usize; 3]| {
        t.sort_unstable();
        lines.contains(&t)
    };
    let mut brute = BTreeSet::new();
    for x in 0..49 {
        for y in x + 1..49 {
            for z in y + 1..49 {
                if is_line([x / 7, y / 7, z / 7]) && is_line([x % 7, y % 7, z % 7]) {
                    brute.insert([x, y, z]);
                }
            }
        }
    }
    let built: BTreeSet<[usize; 3]> = p.triples().iter().copied().collect();
    ensure(built == brute, || {
        format!("{} built, {} by brute force", built.len(), brute.len())
    })?;
    Ok(format!("{} triples on 49 points", built.len()))
}

fn degenerate_cases() -> Outcome {
    let graphs: Vec<Arc<Graph>> = labeled_graphs_up_to(5).map(Arc::new).collect();
    let checked = graphs
        .par_iter()
        .map(|g| -> Result<(usize, usize), String> {
            let odd = g.order() % 2 == 1;
            let isolated = (0..g.order()).any(|i| g.degree(i) == 0);
            let mut cases = (0, 0);
            if odd || isolated {
                let n = enumerate_matchings(g, DEFAULT_MATCHING_CAP)
                    .map_err(|e| e.to_string())?
                    .len();
                ensure(n == 0, || format!("{g:?}: {n} matchings"))?;
                cases.0 += 1;
            }
            let triangle_free = g
                .edges()
                .iter()
                .all(|&(u, v)| g.neighbors(u).iter().all(|&w| !g.adjacent(v, w)));
            if g.size() >= 1 && triangle_free {
                let n = enumerate_psts_on(g, DEFAULT_STEINER_CAP)
                    .map_err(|e| e.to_string())?
                    .len();
                ensure(n == 0, || format!("{g:?}: {n} systems"))?;
                cases.1 += 1;
            }
            Ok(cases)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (m, s) = checked.iter().fold((0, 0), |acc, c| (acc.0 + c.0, acc.1 + c.1));
    Ok(format!("{m} graphs without matchings, {s} triangle-free graphs"))
}

fn main() -> ExitCode {
    let family = law_family();
    let criteria: Vec<Criterion> = vec![
        (
            "example matchings",
            Duration::from_secs(1),
            Box::new(example_reproduction),
        ),
        (
            "T monad laws",
            Duration::from_secs(60),
            Box::new(|| monad_laws(&family, check_monad_laws_t)),
        ),
        (
            "S monad laws",
            Duration::from_secs(120),
            Box::new(|| s_laws(&family)),
        ),
        (
            "T algebras = matchings",
            Duration::from_secs(120),
            Box::new(t_algebra_bijection),
        ),
        (
            "S algebras = partial Steiner systems",
            Duration::from_secs(300),
            Box::new(s_algebra_bijection),
        ),
        ("products", Duration::from_secs(120), Box::new(products)),
        ("equalizers", Duration::from_secs(60), Box::new(equalizers)),
        ("Fano product", Duration::from_secs(10), Box::new(fano_product)),
        (
            "degenerate graphs",
            Duration::from_secs(60),
            Box::new(degenerate_cases),
        ),
    ];
    let mut failed = 0;
    for (n, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > *limit => Err(format!("{detail}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({took:.2?})", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({took:.2?})", n + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
