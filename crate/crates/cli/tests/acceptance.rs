//! Acceptance suite: ten end-to-end criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed. Exits
//! non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use tightspan::parallel::{audit_theorem, default_threads};
use tightspan_core::combinatorics::binom;
use tightspan_core::constructions::{complete_kpartite, fig1, fig1_min_degree, fixture, surface_lower_bound, tight_cycle, FixtureName};
use tightspan_core::framework::{closed_walk_residues, framework_report, DEFAULT_STATE_CAP};
use tightspan_core::oracle::audit::DEFAULT_MAX_TRIPLES;
use tightspan_core::oracle::{search_spanning_sphere, verify_spanning_component_theorem, AbsenceReason, AuditMode, SearchOutcome};
use tightspan_core::sphere::{build_spanning_sphere, build_spanning_surface, surface_cluster_bound, surface_n0, SPHERE_CLUSTER_BOUND};
use tightspan_core::topology::{connected_sum, euler_obstruction};
use tightspan_core::{is_spanning_in_blowup, tight_components, Hypergraph, Surface2, SurfaceClass};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn exhaustive_audit() -> Verdict {
    let r5 = verify_spanning_component_theorem(5, AuditMode::Exhaustive, DEFAULT_MAX_TRIPLES).map_err(err)?;
    ensure(r5.tested == 1024 && r5.holds(), || format!("n=5: tested {}, {} counterexamples", r5.tested, r5.counterexamples.len()))?;
    let start = Instant::now();
    let r6 = verify_spanning_component_theorem(6, AuditMode::Exhaustive, DEFAULT_MAX_TRIPLES).map_err(err)?;
    let t = start.elapsed();
    ensure(r6.tested == 1 << 20 && r6.holds(), || format!("n=6: tested {}, {} counterexamples", r6.tested, r6.counterexamples.len()))?;
    ensure(t <= Duration::from_secs(600), || format!("n=6 took {t:?}"))?;
    Ok(format!("n=5: 1024 graphs, n=6: 1048576 graphs, 0 counterexamples; n=6 single-threaded in {:.2}s", t.as_secs_f64()))
}

fn sampled_audit() -> Verdict {
    let mut parts = Vec::new();
    for n in [7, 8, 9] {
        let (p_num, p_den) = tightspan_core::oracle::audit::default_sample_probability(n);
        let mode = AuditMode::Sample { count: 1_000_000, seed: 1, p_num, p_den };
        let r = audit_theorem(n, mode, DEFAULT_MAX_TRIPLES, default_threads()).map_err(err)?;
        ensure(r.tested == 1_000_000, || format!("n={n}: tested {}", r.tested))?;
        ensure(r.holds(), || format!("n={n}: {} counterexamples", r.counterexamples.len()))?;
        parts.push(format!("n={n}: {} qualifying", r.qualifying));
    }
    Ok(format!("10^6 samples each (seed 1), 0 counterexamples; {}", parts.join(", ")))
}

fn fig1_family() -> Verdict {
    let mut worst = i64::MAX;
    for n in 20..=500 {
        let f = fig1(n, None, None).map_err(err)?;
        let d = tight_components(&f.graph);
        ensure(d.len() == 2 && !d.has_spanning_part(), || format!("n={n}: {} components", d.len()))?;
        let delta = f.graph.min_degree(1).map_err(err)?;
        let formula = fig1_min_degree(f.part_size("X"), f.part_size("Y"), f.part_size("Z"));
        ensure(delta == formula, || format!("n={n}: δ₁ = {delta}, formula gives {formula}"))?;
        // δ₁ ≥ C(n,2)/2 − 3n, doubled to stay in integers
        let slack = 2 * delta as i64 - (binom(n, 2) as i64 - 6 * n as i64);
        ensure(slack >= 0, || format!("n={n}: δ₁ = {delta} below C(n,2)/2 - 3n"))?;
        worst = worst.min(slack);
    }
    Ok(format!("n in [20,500]: 2 components, none spanning, δ₁ exact; smallest margin {:.1}", worst as f64 / 2.0))
}

fn fixtures() -> Verdict {
    let start = Instant::now();
    let expect = [
        (FixtureName::T9, SurfaceClass::orientable(1), (9, 27, 18)),
        (FixtureName::P12, SurfaceClass::non_orientable(1), (12, 33, 22)),
    ];
    for (name, class, counts) in expect {
        let (s, host) = fixture(name);
        ensure(s.classify() == class, || format!("{} classifies as {}", name.as_str(), s.classify()))?;
        ensure(s.counts() == counts, || format!("{} has (v,e,f) = {:?}", name.as_str(), s.counts()))?;
        ensure(is_spanning_in_blowup(&s.to_hypergraph(), &host).map_err(err)?, || format!("{} does not span", name.as_str()))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("T9 torus (9,27,18) in P3(3,3,3), P12 RP2 (12,33,22) in P3(4,4,4), {:.1}ms", t.as_secs_f64() * 1e3))
}

fn sphere_builder() -> Verdict {
    let n0 = surface_n0(SurfaceClass::sphere()).map_err(err)?;
    let mut worst = 0;
    for n in n0..=n0 + 60 {
        let s = build_spanning_sphere(3, n).map_err(|e| format!("n={n}: {e}"))?;
        ensure(s.surface.classify() == SurfaceClass::sphere(), || format!("n={n}: {}", s.surface.classify()))?;
        ensure(s.surface.n() == n && s.surface.used_vertices().len() == n, || format!("n={n}: wrong vertex count"))?;
        ensure(s.surface.face_count() == 2 * n - 4, || format!("n={n}: {} faces", s.surface.face_count()))?;
        let spans = is_spanning_in_blowup(&s.surface.to_hypergraph(), &s.host).map_err(err)?;
        ensure(spans, || format!("n={n}: does not span its host"))?;
        ensure(s.host.max_cluster() <= SPHERE_CLUSTER_BOUND, || format!("n={n}: cluster {}", s.host.max_cluster()))?;
        worst = worst.max(s.host.max_cluster());
    }
    Ok(format!("n0 = {n0}; every n in [{n0},{}] gives a spanning sphere, largest cluster {worst}", n0 + 60))
}

fn surface_builder() -> Verdict {
    let mut specs: Vec<SurfaceClass> = (1..=3).map(SurfaceClass::orientable).collect();
    specs.extend((1..=3).map(SurfaceClass::non_orientable));
    let mut parts = Vec::new();
    for spec in specs {
        let n0 = surface_n0(spec).map_err(err)?;
        let m = surface_cluster_bound(spec).map_err(err)?;
        for n in [n0, n0 + 1, n0 + 2] {
            let s = build_spanning_surface(spec, n).map_err(|e| format!("{spec} n={n}: {e}"))?;
            let class = s.surface.classify();
            ensure((class.kind, class.genus) == (spec.kind, spec.genus), || format!("{spec} n={n}: got {class}"))?;
            ensure(s.surface.used_vertices().len() == n, || format!("{spec} n={n}: not all vertices used"))?;
            let spans = is_spanning_in_blowup(&s.surface.to_hypergraph(), &s.host).map_err(err)?;
            ensure(spans && s.host.max_cluster() <= m, || format!("{spec} n={n}: cluster {} > {m}", s.host.max_cluster()))?;
        }
        parts.push(format!("{}{}: n0={n0} m={m}", spec.kind, spec.genus));
    }
    Ok(parts.join("; "))
}

fn euler_construction() -> Verdict {
    for n in 12..=300 {
        let c = surface_lower_bound(n, 0).map_err(err)?;
        let d = tight_components(&c.graph);
        let spanning = (0..d.len()).filter(|&p| d.is_spanning(p)).count();
        ensure(d.len() == 2 && spanning == 1, || format!("n={n}: {} components, {spanning} spanning", d.len()))?;
        let (x, y) = (c.part_size("X") as u64, c.part_size("Y") as u64);
        ensure(euler_obstruction(x, y, 0), || format!("n={n}: no obstruction for |X|={x}, |Y|={y}"))?;
    }
    let mut parts = Vec::new();
    for n in [9, 10] {
        let g = surface_lower_bound(n, 0).map_err(err)?.graph;
        let start = Instant::now();
        let outcome = search_spanning_sphere(&g, u64::MAX).map_err(err)?;
        let t = start.elapsed();
        let SearchOutcome::ProvenAbsent(reason) = outcome else {
            return Err(format!("n={n}: search did not prove absence"));
        };
        ensure(t < Duration::from_secs(60), || format!("n={n}: took {t:?}"))?;
        parts.push(format!("n={n}: {reason:?} in {:.3}s", t.as_secs_f64()));
    }
    Ok(format!("n in [12,300]: 2 components, one spanning, obstruction holds; {}", parts.join(", ")))
}

fn frameworks() -> Verdict {
    let third = BigRational::new(1.into(), 3.into());
    for n in 4..=30 {
        let c = tight_cycle(3, n).map_err(err)?;
        let r = framework_report(&c, None).map_err(err)?;
        let m = r.f2.as_ref().ok_or_else(|| format!("n={n}: no perfect fractional matching"))?;
        ensure(m.is_perfect_for(&c) && m.weights.iter().all(|w| *w == third), || format!("n={n}: matching is not uniform 1/3"))?;
        ensure(r.f3 == (n % 3 != 0), || format!("n={n}: F3 = {}", r.f3))?;
    }
    let pentagon = tight_cycle(2, 5).map_err(err)?;
    let square = tight_cycle(2, 4).map_err(err)?;
    let odd = closed_walk_residues(&pentagon, DEFAULT_STATE_CAP).map_err(err)?.contains(1);
    let even = closed_walk_residues(&square, DEFAULT_STATE_CAP).map_err(err)?.contains(1);
    ensure(odd && !even, || format!("pentagon aperiodic = {odd}, square aperiodic = {even}"))?;
    Ok("C(3,n) for n in [4,30]: F2 by uniform 1/3, F3 iff 3 ∤ n; pentagon aperiodic, square not".into())
}

fn tetrahedron() -> Surface2 {
    Surface2::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).expect("tetrahedron")
}

fn permuted(s: &Surface2, rng: &mut ChaCha8Rng) -> Surface2 {
    let n = s.n();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        perm.swap(i, (rng.next_u64() % (i as u64 + 1)) as usize);
    }
    s.map_vertices(&perm, n).expect("permutation")
}

fn topology() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pieces = [tetrahedron(), fixture(FixtureName::T9).0, fixture(FixtureName::P12).0];
    let mut glues = 0;
    for _ in 0..100 {
        let mut s = pieces[(rng.next_u64() % 3) as usize].clone();
        let (mut tori, mut crosscaps) = (0u32, 0u32);
        let mut account = |i: usize| match i {
            1 => tori += 1,
            2 => crosscaps += 1,
            _ => {}
        };
        let first = pieces.iter().position(|p| p.counts() == s.counts()).unwrap();
        account(first);
        for _ in 0..1 + rng.next_u64() % 4 {
            let i = (rng.next_u64() % 3) as usize;
            let p = permuted(&pieces[i], &mut rng);
            let at = s.faces()[(rng.next_u64() % s.face_count() as u64) as usize];
            let from = p.faces()[(rng.next_u64() % p.face_count() as u64) as usize];
            let moved = p.align_face(from, at, s.n() as u32).map_err(err)?;
            let sum = connected_sum(&s, &moved, at).map_err(err)?;
            let chi = s.euler_characteristic() + p.euler_characteristic() - 2;
            ensure(sum.euler_characteristic() == chi, || format!("χ = {}, expected {chi}", sum.euler_characteristic()))?;
            account(i);
            s = sum;
            glues += 1;
        }
        let expected = if crosscaps == 0 {
            SurfaceClass::orientable(tori)
        } else {
            SurfaceClass::non_orientable(2 * tori + crosscaps)
        };
        ensure(s.classify() == expected, || format!("glued surface is {}, expected {expected}", s.classify()))?;
    }
    for name in [FixtureName::T9, FixtureName::P12] {
        let (s, _) = fixture(name);
        for _ in 0..100 {
            let t = permuted(&s, &mut rng);
            ensure(t.classify() == s.classify(), || format!("{} relabelled to {}", name.as_str(), t.classify()))?;
        }
    }
    Ok(format!("100 glue sequences ({glues} sums) additive and classified; 200 relabellings invariant"))
}

fn counting_bound() -> Verdict {
    let g: Hypergraph = complete_kpartite(3, &[1, 2, 2]).map_err(err)?.result().clone();
    let start = Instant::now();
    let outcome = search_spanning_sphere(&g, 0).map_err(err)?;
    let t = start.elapsed();
    match outcome {
        SearchOutcome::ProvenAbsent(AbsenceReason::TooFewEdges { available, required }) if t < Duration::from_millis(100) => {
            Ok(format!("K(1,2,2): {available} edges < 2n-4 = {required}, {:.1}µs", t.as_secs_f64() * 1e6))
        }
        other => Err(format!("{other:?} after {t:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("exhaustive audit n=5,6", exhaustive_audit),
        ("sampled audit n=7,8,9", sampled_audit),
        ("two-component construction", fig1_family),
        ("surface fixtures", fixtures),
        ("sphere builder", sphere_builder),
        ("surface builder", surface_builder),
        ("Euler-obstruction construction", euler_construction),
        ("framework checks", frameworks),
        ("topology properties", topology),
        ("counting-bound absence", counting_bound),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{secs:.1}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.1}s]: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
