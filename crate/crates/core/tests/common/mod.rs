//! Checks shared by the acceptance suite and the property tests. Each returns `Err` with a
//! description of the first counterexample.
#![allow(dead_code)]

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use tempoclass::bandwidth::{bandwidth_curve, enumerate_raw, fit_class, FitReport, GridSystem, Limits, Model};
use tempoclass::classify::{analyse, labels, meagerness_witness, ObesityType, Options};
use tempoclass::dbm::{language_class, path_timing_dbm, Bound, Dbm, LanguageClass};
use tempoclass::orbit::{
    direct_path_orbit, path_orbit, scc_decomposition, Abstraction, Freedom, OrbitElement, Semiring, Speed,
};
use tempoclass::rational::{int, ratio, to_f64};
use tempoclass::region::{closed_predecessor, closed_successor};
use tempoclass::words::{
    directed_distance, distance, exact_capacity, exact_entropy, greedy_net, greedy_separated, Distance,
};
use tempoclass::{classify, corpus, region_split, Class, Fatness, Rational, Region, Rsta, TimedWord};

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn split(name: &str) -> Rsta {
    region_split(&corpus::automaton(name)).expect("corpus automata split")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A random walk of 1..=max_len edges, or `None` when the automaton has no edges.
pub fn random_path(r: &Rsta, rng: &mut ChaCha8Rng, max_len: usize) -> Option<Vec<usize>> {
    let starts: Vec<usize> = (0..r.locations.len()).filter(|&l| !r.outgoing(l).is_empty()).collect();
    let mut loc = *starts.choose(rng)?;
    let len = rng.gen_range(1..=max_len);
    let mut path = Vec::new();
    while path.len() < len {
        let Some(&e) = r.outgoing(loc).choose(rng) else { break };
        path.push(e);
        loc = r.edges[e].dst;
    }
    Some(path)
}

/// The cycle through the regions `(0,1)×{0}` of the first location and its successor.
pub fn main_cycle(name: &str) -> (Rsta, usize, usize) {
    let r = split(name);
    let q = r.locations.iter().position(|l| l.original == 0 && l.region.contains(&[ratio(1, 2), int(0)])).unwrap();
    let d1 = *r.outgoing(q).iter().find(|&&e| r.edges[e].guard.is_open_in_time()).unwrap();
    let p = r.edges[d1].dst;
    let d2 = *r.outgoing(p).iter().find(|&&e| r.edges[e].dst == q && r.edges[e].guard.is_open_in_time()).unwrap();
    (r, d1, d2)
}

/// A uniformly drawn point of `region` whose fractional parts are multiples of `1/den`.
pub fn random_point(region: &Region, rng: &mut ChaCha8Rng, den: i64) -> Option<Vec<Rational>> {
    let blocks = region.blocks().len();
    let mut fracs: BTreeSet<i64> = BTreeSet::new();
    if blocks as i64 >= den {
        return None;
    }
    while fracs.len() < blocks {
        fracs.insert(rng.gen_range(1..den));
    }
    let fracs: Vec<i64> = fracs.into_iter().collect();
    let m = region.max_constant() as i64;
    let mut x = vec![int(0); region.num_clocks()];
    for (c, xc) in x.iter_mut().enumerate() {
        *xc = match region.int_part(c) {
            None => int(m + 1) + ratio(rng.gen_range(0..4 * den), den),
            Some(k) => int(k as i64),
        };
    }
    for (b, block) in region.blocks().iter().enumerate() {
        for &c in block {
            x[c] = &x[c] + ratio(fracs[b], den);
        }
    }
    debug_assert!(region.contains(&x));
    Some(x)
}

fn b(rows: &[&[u8]]) -> Vec<Vec<&'static str>> {
    rows.iter().map(|r| r.iter().map(|&x| if x == 1 { "1" } else { "0" }).collect()).collect()
}

// 1. Classification of the corpus.

pub fn golden_classification() -> Check {
    let expected = [
        ("a1", Class::Obese, ObesityType::I, Fatness::Thick),
        ("a2", Class::Obese, ObesityType::II, Fatness::Thick),
        ("a3", Class::Meager, ObesityType::None, Fatness::Thin),
        ("a4", Class::Normal, ObesityType::None, Fatness::Thick),
        ("a5", Class::Meager, ObesityType::None, Fatness::Thin),
        ("a6", Class::Meager, ObesityType::None, Fatness::Thin),
        // Hand saturation of the two-edge cycle monoids.
        ("a7", Class::Obese, ObesityType::I, Fatness::Thick),
        ("a8", Class::Obese, ObesityType::II, Fatness::Thin),
        ("a9", Class::Meager, ObesityType::None, Fatness::Thin),
        ("a10", Class::Normal, ObesityType::None, Fatness::Thin),
    ];
    for (name, class, obesity, fatness) in expected {
        let v = classify(&corpus::automaton(name)).map_err(|e| format!("{name}: {e}"))?;
        let got = (v.class, v.obesity_type, v.fatness);
        ensure(got == (class, obesity, fatness), || format!("{name}: got {got:?}, want {:?}", (class, obesity, fatness)))?;
        if name == "a7" {
            ensure(!v.structurally_meager, || "a7 must not be structurally meager".into())?;
        }
        if name == "a9" {
            ensure(v.obesity_type == ObesityType::None, || "a9 must not be structurally obese".into())?;
        }
    }
    Ok(())
}

// 2. Displayed orbit matrices.

pub fn orbit_matrices() -> Check {
    let (r, d1, d2) = main_cycle("a6");
    let q = r.edges[d1].src;
    let p = r.edges[d1].dst;
    let cases: [(Vec<usize>, Vec<Vec<&str>>, (usize, usize)); 4] = [
        (vec![d1], b(&[&[1, 1], &[1, 0]]), (q, p)),
        (vec![d2], b(&[&[0, 1], &[1, 1]]), (p, q)),
        (vec![d1, d2], b(&[&[1, 1], &[0, 1]]), (q, q)),
        (vec![d2, d1], b(&[&[1, 0], &[1, 1]]), (p, p)),
    ];
    for (path, want, ends) in &cases {
        for e in [direct_path_orbit::<bool>(&r, path), path_orbit::<bool>(&r, path)] {
            ensure(labels(&e) == *want && e.endpoints() == Some(*ends), || format!("p-orbit of {path:?}: {:?}", labels(&e)))?;
        }
    }
    let (n, w, z) = ("narrow", "wide", "0");
    let f_cases: [(Vec<usize>, Vec<Vec<&str>>); 4] = [
        (vec![d1], vec![vec![n, n], vec![n, z]]),
        (vec![d2], vec![vec![z, n], vec![n, n]]),
        (vec![d1, d2], vec![vec![n, w], vec![z, n]]),
        (vec![d2, d1], vec![vec![n, z], vec![w, n]]),
    ];
    for (path, want) in &f_cases {
        for e in [direct_path_orbit::<Freedom>(&r, path), path_orbit::<Freedom>(&r, path)] {
            ensure(labels(&e) == *want, || format!("f-orbit of {path:?}: {:?}", labels(&e)))?;
        }
    }
    let opts = Options::default();
    let a6 = analyse(&r, &opts).map_err(|e| e.to_string())?;
    ensure(meagerness_witness(&r, &a6.f).is_none(), || "a6 has a wide self-loop".into())?;
    let r7 = split("a7");
    let a7 = analyse(&r7, &opts).map_err(|e| e.to_string())?;
    ensure(meagerness_witness(&r7, &a7.f).is_some(), || "a7 lacks a wide self-loop".into())
}

// 3. Distances.

fn word(s: &str) -> TimedWord {
    TimedWord::parse(&s.replace(';', "\n")).unwrap()
}

pub fn distances() -> Check {
    let u = word("a 0.7;b 1.8;a 3;b 4;a 4.1");
    let v = word("a 0.6;a 1;b 1.7;a 3;a 4.1;b 4.2");
    ensure(directed_distance(&u, &v) == Distance::Finite(ratio(1, 5)), || "d(u→v) ≠ 0.2".into())?;
    ensure(directed_distance(&v, &u) == Distance::Finite(ratio(3, 10)), || "d(v→u) ≠ 0.3".into())?;
    ensure(distance(&u, &v) == Distance::Finite(ratio(3, 10)), || "d(u,v) ≠ 0.3".into())?;
    ensure(distance(&word("a 1;b 1"), &word("b 1;b 1;a 1")) == Distance::Finite(int(0)), || "simultaneous pair not at 0".into())?;
    ensure(distance(&word("a 1"), &word("b 1")) == Distance::Infinite, || "no matching letter must be ∞".into())
}

// 4. Semirings and orbit monoids.

pub fn semiring_axioms<S: Semiring>() -> Check {
    let all = S::ALL;
    for &a in all {
        ensure(a.add(S::zero()) == a && a.mul(S::one()) == a && S::one().mul(a) == a, || format!("identities fail at {a:?}"))?;
        ensure(a.mul(S::zero()) == S::zero() && S::zero().mul(a) == S::zero(), || format!("zero not absorbing at {a:?}"))?;
        for &b in all {
            ensure(a.add(b) == b.add(a), || format!("+ not commutative at {a:?},{b:?}"))?;
            for &c in all {
                ensure(a.add(b).add(c) == a.add(b.add(c)), || format!("+ not associative at {a:?},{b:?},{c:?}"))?;
                ensure(a.mul(b).mul(c) == a.mul(b.mul(c)), || format!("× not associative at {a:?},{b:?},{c:?}"))?;
                ensure(a.mul(b.add(c)) == a.mul(b).add(a.mul(c)), || format!("left distributivity at {a:?},{b:?},{c:?}"))?;
                ensure(b.add(c).mul(a) == b.mul(a).add(c.mul(a)), || format!("right distributivity at {a:?},{b:?},{c:?}"))?;
            }
        }
    }
    Ok(())
}

fn zero_pattern<S: Semiring>(e: &OrbitElement<S>) -> Option<Vec<Vec<bool>>> {
    e.matrix().map(|m| m.to_rows().iter().map(|r| r.iter().map(|x| x.is_zero()).collect()).collect())
}

fn check_total<S: Semiring>(e: &OrbitElement<S>, what: &str) -> Check {
    match e.matrix() {
        Some(m) => ensure(m.is_total(), || format!("{what}: matrix not total")),
        None => Ok(()),
    }
}

fn morphism<S: Abstraction>(r: &Rsta, path: &[usize], k: usize) -> Check {
    let whole: OrbitElement<S> = direct_path_orbit(r, path);
    let split: OrbitElement<S> = direct_path_orbit::<S>(r, &path[..k]).compose(&direct_path_orbit(r, &path[k..]));
    ensure(whole == split, || format!("{}-orbit of {path:?} split at {k}: {whole:?} vs {split:?}", S::KIND.name()))?;
    ensure(whole == path_orbit::<S>(r, path), || format!("{}-orbit of {path:?}: composition differs", S::KIND.name()))
}

/// Morphism, zero coincidence, totality and fast richness on random split paths.
pub fn monoid_suite(samples: usize) -> Check {
    semiring_axioms::<bool>()?;
    semiring_axioms::<Freedom>()?;
    semiring_axioms::<Speed>()?;
    for (seed, name) in corpus::NAMES.iter().enumerate() {
        let r = split(name);
        let mut rng = rng(seed as u64);
        let mut done = 0;
        while done < samples {
            let Some(path) = random_path(&r, &mut rng, 6) else { break };
            if path.len() < 2 {
                continue;
            }
            done += 1;
            let k = rng.gen_range(1..path.len());
            morphism::<bool>(&r, &path, k).map_err(|e| format!("{name}: {e}"))?;
            morphism::<Freedom>(&r, &path, k).map_err(|e| format!("{name}: {e}"))?;
            morphism::<Speed>(&r, &path, k).map_err(|e| format!("{name}: {e}"))?;
            let p: OrbitElement<bool> = direct_path_orbit(&r, &path);
            let f: OrbitElement<Freedom> = direct_path_orbit(&r, &path);
            let d: OrbitElement<Speed> = direct_path_orbit(&r, &path);
            let zp = zero_pattern(&p);
            ensure(zp == zero_pattern(&f) && zp == zero_pattern(&d), || format!("{name}: zeros differ on {path:?}"))?;
            check_total(&p, name)?;
            check_total(&f, name)?;
            check_total(&d, name)?;
            if let (Some((src, dst)), Some(m)) = (d.endpoints(), d.matrix()) {
                for (u, vu) in r.vertices(src).iter().enumerate() {
                    for (w, vw) in r.vertices(dst).iter().enumerate() {
                        if m.get(u, w) != Speed::Fast {
                            continue;
                        }
                        let rich = match language_class(&r, &path, vu, vw) {
                            LanguageClass::Wide { duration } => duration.contains(&int(0)) && duration.contains(&int(1)),
                            _ => false,
                        };
                        ensure(rich, || format!("{name}: fast entry ({u},{w}) of {path:?} lacks [0,1]"))?;
                    }
                }
            }
        }
        let an = analyse(&r, &Options::default()).map_err(|e| e.to_string())?;
        for (e, _) in an.p.iter() {
            check_total(e, name)?;
        }
        for (e, _) in an.f.iter() {
            check_total(e, name)?;
        }
        for (e, _) in an.d.iter() {
            check_total(e, name)?;
        }
    }
    Ok(())
}

// 5. DBMs.

/// Independent feasibility oracle: Bellman-Ford on the constraint graph, strictness encoded
/// as an infinitesimal.
pub fn feasible(n: usize, bounds: &[(usize, usize, i64, bool)]) -> bool {
    let k = 2 * (n as i64 + 2);
    let nodes = n + 1;
    let mut dist = vec![0i64; nodes];
    for _ in 0..=nodes {
        let mut changed = false;
        for &(i, j, w, strict) in bounds {
            let cand = dist[i] + w * k - strict as i64;
            if cand < dist[j] {
                dist[j] = cand;
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
    false
}

/// A random DBM over `t_1..t_n` inside the box `[0, 8]`, with its raw bounds in quarter units.
pub fn random_dbm(rng: &mut ChaCha8Rng) -> (Dbm, Vec<(usize, usize, i64, bool)>) {
    let n = rng.gen_range(1..=5);
    let mut d = Dbm::unconstrained(n);
    let mut raw = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            if i != j && rng.gen_bool(0.4) {
                let v = rng.gen_range(-4i64..=4);
                let strict = rng.gen_bool(0.3);
                d.constrain(i, j, if strict { Bound::lt(int(v)) } else { Bound::le(int(v)) });
                raw.push((i, j, 4 * v, strict));
            }
        }
    }
    for i in 1..=n {
        d.constrain(0, i, Bound::le(int(8)));
        d.constrain(i, 0, Bound::le(int(0)));
        raw.push((0, i, 32, false));
        raw.push((i, 0, 0, false));
    }
    (d, raw)
}

pub fn dbm_projection(samples: usize) -> Check {
    let mut rng = rng(55);
    for s in 0..samples {
        let (d, raw) = random_dbm(&mut rng);
        let n = d.n();
        let canon = d.canonicalize();
        ensure(canon.is_some() == feasible(n, &raw), || format!("sample {s}: emptiness disagrees\n{}", d.dump()))?;
        let Some(c) = canon else { continue };
        ensure(c.canonicalize().as_ref() == Some(&c), || format!("sample {s}: canonicalize not idempotent"))?;
        for i in 1..=n {
            let proj = c.project(i);
            for q in 0..=32i64 {
                let mut with = raw.clone();
                with.push((0, i, q, false));
                with.push((i, 0, -q, false));
                let t = ratio(q, 4);
                ensure(proj.contains(&t) == feasible(n, &with), || format!("sample {s}: t{i}={t} disagrees\n{}", c.dump()))?;
            }
        }
    }
    Ok(())
}

fn close(a: &Rational, b: &Rational, tol: &Rational) -> bool {
    (a - b).abs() < *tol
}

/// Moving `x`, `y` by less than `ε` inside their regions moves projection endpoints by less
/// than `3ε`.
pub fn lipschitz(samples_per_cycle: usize) -> Check {
    let mut compared = 0usize;
    for name in corpus::NAMES {
        let r = split(name);
        let an = analyse(&r, &Options::default()).map_err(|e| e.to_string())?;
        let cycles: Vec<Vec<usize>> = an.p.cyclic().map(|(_, _, w)| w.to_vec()).filter(|w| w.len() <= 4).take(12).collect();
        let mut rng = rng(77);
        for path in cycles {
            let src = &r.locations[r.edges[path[0]].src].region;
            let dst = &r.locations[r.edges[*path.last().unwrap()].dst].region;
            for eps in [ratio(1, 8), ratio(1, 16)] {
                let tol = &eps * int(3);
                for _ in 0..samples_per_cycle {
                    let (Some(x), Some(y)) = (random_point(src, &mut rng, 64), random_point(dst, &mut rng, 64)) else { break };
                    let near = |p: &Vec<Rational>, reg: &Region, rng: &mut ChaCha8Rng| {
                        (0..200).find_map(|_| random_point(reg, rng, 64).filter(|q| p.iter().zip(q).all(|(a, b)| close(a, b, &eps))))
                    };
                    let (Some(x2), Some(y2)) = (near(&x, src, &mut rng), near(&y, dst, &mut rng)) else { continue };
                    let (Some(a), Some(b)) =
                        (path_timing_dbm(&r, &path, &x, &y).canonical(), path_timing_dbm(&r, &path, &x2, &y2).canonical())
                    else {
                        continue;
                    };
                    compared += 1;
                    for i in 1..=path.len() {
                        let (p1, p2) = (a.project(i), b.project(i));
                        let hi_ok = match (&p1.hi, &p2.hi) {
                            (Some(h1), Some(h2)) => close(h1, h2, &tol),
                            (None, None) => true,
                            _ => false,
                        };
                        ensure(close(&p1.lo, &p2.lo, &tol) && hi_ok, || {
                            format!("{name} {path:?} eps={eps}: t{i} moved from {p1:?} to {p2:?}")
                        })?;
                    }
                }
            }
        }
    }
    eprintln!("lipschitz: {compared} perturbed pairs");
    ensure(compared >= 100, || format!("only {compared} perturbed pairs were comparable"))
}

// 6. ε-capacity laws.

pub fn random_word(rng: &mut ChaCha8Rng, max_events: usize, den: i64, horizon: i64) -> TimedWord {
    let len = rng.gen_range(0..=max_events);
    let mut dates: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=horizon * den)).collect();
    dates.sort();
    let letters = ["a", "b"];
    TimedWord::new(dates.into_iter().map(|d| (letters[rng.gen_range(0..2)].to_string(), ratio(d, den))).collect())
}

pub fn capacity_laws(sets: usize) -> Check {
    let mut rng = rng(66);
    for s in 0..sets {
        let size = rng.gen_range(1..=10);
        let mut words: Vec<TimedWord> = (0..size).map(|_| random_word(&mut rng, 3, 8, 2)).collect();
        words.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
        words.dedup();
        for eps in [ratio(1, 8), ratio(1, 4), ratio(1, 2)] {
            let c = exact_capacity(&words, &eps).map_err(|e| e.to_string())?;
            let h = exact_entropy(&words, &eps).map_err(|e| e.to_string())?;
            let c2 = exact_capacity(&words, &(&eps * int(2))).map_err(|e| e.to_string())?;
            ensure(c2 <= h + 1e-12 && h <= c + 1e-12, || format!("set {s}, eps {eps}: C2e={c2} H={h} C={c}"))?;
            let gs = (greedy_separated(&words, &eps).len() as f64).log2();
            let gn = (greedy_net(&words, &eps).len() as f64).log2();
            ensure(gs <= c + 1e-12 && h <= gn + 1e-12, || format!("set {s}, eps {eps}: greedy {gs}/{gn} vs exact {c}/{h}"))?;
        }
    }
    Ok(())
}

// 7. Empirical fits.

pub const FIT_EPSILONS: [(i64, i64); 4] = [(1, 2), (1, 4), (1, 8), (1, 16)];

/// Durations of at least eight cycle lengths per automaton.
pub fn fit_durations(name: &str) -> Vec<Rational> {
    let ts: &[i64] = match name {
        "a1" => &[8, 12],
        "a2" | "a4" => &[48, 72],
        "a5" => &[40, 60],
        "a3" => &[16, 24],
        _ => &[32, 48],
    };
    ts.iter().map(|&t| int(t)).collect()
}

pub fn fit(name: &str) -> Result<FitReport, String> {
    let eps: Vec<Rational> = FIT_EPSILONS.iter().map(|&(n, d)| ratio(n, d)).collect();
    let curve = bandwidth_curve(&corpus::automaton(name), &fit_durations(name), &eps, None, false).map_err(|e| e.to_string())?;
    fit_class(&curve).map_err(|e| e.to_string())
}

pub fn empirical_fit() -> Check {
    for (name, model) in [("a5", Model::Constant), ("a6", Model::Constant), ("a4", Model::Logarithmic), ("a1", Model::Inverse)] {
        let f = fit(name)?;
        ensure(f.model == model && f.residual_ratio >= 2.0, || {
            format!("{name}: fit {:?} with ratio {}, want {model:?}", f.model, f.residual_ratio)
        })?;
        if name == "a4" {
            ensure((0.2..=0.6).contains(&f.constant), || format!("a4 slope {} outside [0.2, 0.6]", f.constant))?;
        }
        if name == "a1" {
            let rate = f.rates.iter().find(|(e, _)| *e == 0.125).map(|r| r.1).unwrap_or(0.0);
            let target = 2.0 / 0.125;
            ensure(rate >= target / 2.0 && rate <= target * 2.0, || format!("a1 rate {rate} at ε=1/8, want ≈ {target}"))?;
        }
    }
    Ok(())
}

// 8. Region split.

pub fn grid_words(sys: &GridSystem, t: &Rational, events: usize) -> Result<BTreeSet<Vec<(String, Rational)>>, String> {
    let limits = Limits { max_words: 5_000_000, max_events: events, max_delay: None };
    let raw = enumerate_raw(sys, t, limits).map_err(|e| e.to_string())?;
    let step = sys.step();
    Ok(raw
        .into_iter()
        .map(|w| w.into_iter().map(|(l, d)| (sys.alphabet[l as usize].clone(), step.date(d as u64))).collect())
        .collect())
}

pub fn split_soundness(events: usize) -> Check {
    let g = ratio(1, 4);
    let t = int(6);
    for name in corpus::NAMES {
        let a = corpus::automaton(name);
        let r = split(name);
        let before = grid_words(&GridSystem::from_automaton(&a, &g).map_err(|e| e.to_string())?, &t, events)?;
        let after = grid_words(&GridSystem::from_rsta(&r, &g).map_err(|e| e.to_string())?, &t, events)?;
        eprintln!("split {name}: {} grid words", before.len());
        ensure(before == after, || {
            let only: Vec<_> = before.symmetric_difference(&after).take(3).collect();
            format!("{name}: grid languages differ, e.g. {only:?}")
        })?;
        for (e, edge) in r.edges.iter().enumerate() {
            let (vs, ws) = (r.vertices(edge.src), r.vertices(edge.dst));
            let succ = closed_successor(&r, e, vs).map_err(|err| err.to_string())?;
            let pred = closed_predecessor(&r, e, ws).map_err(|err| err.to_string())?;
            ensure(succ.as_slice() == ws && pred.as_slice() == vs, || format!("{name}: edge e{} is not exact", e + 1))?;
        }
    }
    Ok(())
}

// 9. Lyapunov families.

/// One run along `path` from a random grid point of its source region, if any exists.
fn sample_run(r: &Rsta, path: &[usize], rng: &mut ChaCha8Rng, den: i64) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let src = &r.locations[r.edges[path[0]].src].region;
    let x = random_point(src, rng, den)?;
    let mut cur = x.clone();
    let max = (r.max_constant as i64 + 1) * den;
    for &e in path {
        let options: Vec<Vec<Rational>> = (0..=max).filter_map(|k| r.fire(e, &cur, &ratio(k, den))).collect();
        cur = options.choose(rng)?.clone();
    }
    Some((x, cur))
}

pub fn lyapunov(runs: usize) -> Check {
    let mut total = 0usize;
    for name in corpus::NAMES {
        let r = split(name);
        let an = analyse(&r, &Options::default()).map_err(|e| e.to_string())?;
        let mut rng = rng(99);
        for (q, e, w) in an.p.cyclic() {
            if w.len() > 6 {
                continue;
            }
            let family = scc_decomposition(e).map_err(|err| format!("{err:?}"))?;
            let region = &r.locations[q].region;
            let mut done = 0;
            for _ in 0..runs * 20 {
                if done == runs {
                    break;
                }
                let Some((x, y)) = sample_run(&r, w, &mut rng, 8) else { continue };
                let (Some(lx), Some(ly)) = (region.barycentric(&x), region.barycentric(&y)) else { continue };
                done += 1;
                total += 1;
                let (fx, fy) = (family.evaluate(&lx), family.evaluate(&ly));
                ensure(fx.iter().zip(&fy).all(|(a, b)| a >= b), || {
                    format!("{name} cycle {w:?}: ℓ rises from {:?} to {:?}", fx.iter().map(to_f64).collect::<Vec<_>>(), fy.iter().map(to_f64).collect::<Vec<_>>())
                })?;
            }
        }
    }
    eprintln!("lyapunov: {total} runs");
    ensure(total >= runs, || format!("only {total} runs were sampled"))
}

/// Text of a random deterministic automaton: at most one edge per (location, letter).
pub fn random_automaton_text(rng: &mut ChaCha8Rng, max_locations: usize, max_clocks: usize, max_constant: u32) -> String {
    let clocks = ["x", "y", "z"];
    let n = rng.gen_range(1..=max_clocks);
    let locs = rng.gen_range(1..=max_locations);
    let rels = ["<", "<=", ">", ">=", "="];
    let mut out = format!("automaton random\nclocks {}\nalphabet a b\n", clocks[..n].join(" "));
    let zeros: Vec<String> = clocks[..n].iter().map(|c| format!("{c}=0")).collect();
    for l in 0..locs {
        let initial = if l == 0 { format!(" initial {}", zeros.join(",")) } else { String::new() };
        let accepting = if l == locs - 1 || rng.gen_bool(0.5) { " accepting" } else { "" };
        out.push_str(&format!("location l{l}{initial}{accepting}\n"));
    }
    for l in 0..locs {
        for letter in ["a", "b"] {
            if rng.gen_bool(0.3) {
                continue;
            }
            let dst = rng.gen_range(0..locs);
            let mut guard: Vec<String> = Vec::new();
            for _ in 0..rng.gen_range(0..=2) {
                let c = clocks[rng.gen_range(0..n)];
                if guard.iter().any(|g| g.starts_with(c)) {
                    continue;
                }
                guard.push(format!("{c}{}{}", rels[rng.gen_range(0..rels.len())], rng.gen_range(0..=max_constant)));
            }
            let resets: Vec<&str> = clocks[..n].iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
            let mut line = format!("edge l{l} -> l{dst} on {letter}");
            if !guard.is_empty() {
                line.push_str(&format!(" guard {}", guard.join(", ")));
            }
            if !resets.is_empty() {
                line.push_str(&format!(" reset {}", resets.join(",")));
            }
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}
