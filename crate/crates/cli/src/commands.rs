use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Result;
use serde_json::{json, Value};
use tightspan_core::constructions::{self, FixtureName, PartitionedGraph};
use tightspan_core::framework::{check_consistency, framework_report, largest_component, THRESHOLDS};
use tightspan_core::oracle::audit::{default_sample_probability, exact_threshold_from, theorem_degree_bound, DEFAULT_MAX_TRIPLES};
use tightspan_core::oracle::{codegree_batch, search_spanning_sphere, AbsenceReason, AuditMode, SearchOutcome};
use tightspan_core::sphere::{build_spanning_sphere, build_spanning_surface, surface_cluster_bound, surface_n0, EmbeddedSurface};
use tightspan_core::{
    is_spanning_in_blowup, link_component_diagnostics, tight_components, BlowUp, Hypergraph, Surface2, SurfaceClass,
    SurfaceKind,
};

use crate::args::{Audit, BuildOutput, Cli, Command, Gen, Kind, Output, Search};
use crate::config::Config;
use crate::format::{self, parse_blowup, parse_hypergraph, parse_surface, write_blowup, write_hypergraph, write_surface};
use crate::parallel::{audit_theorem, default_threads};
use crate::report::render;
use crate::{exit, CliError};

const DEFAULT_BUDGET: u64 = 1_000_000;
const DEFAULT_SEED: u64 = 0;

struct Ctx<'a> {
    json: bool,
    threads: usize,
    config: Config,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, report: &Value) -> Result<()> {
        self.out.write_all(render(report, self.json).as_bytes())?;
        Ok(())
    }

    /// Timing goes to stderr so that reports stay byte-identical across runs.
    fn elapsed(&mut self, start: Instant) {
        if !self.json {
            let _ = writeln!(self.err, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
        }
    }

    fn seed(&self, flag: Option<u64>) -> u64 {
        flag.or(self.config.seed).unwrap_or(DEFAULT_SEED)
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let threads = cli.threads.or(config.threads).unwrap_or_else(default_threads);
    if threads == 0 {
        return Err(usage("--threads must be at least 1"));
    }
    let json = cli.json || config.json.unwrap_or(false);
    let mut ctx = Ctx { json, threads, config, out, err };
    match &cli.command {
        Command::Gen { what } => gen(&mut ctx, what),
        Command::Components { input } => components(&mut ctx, input),
        Command::Degree { input, d, link } => degree(&mut ctx, input, *d, *link),
        Command::Classify { input, expect, host } => classify(&mut ctx, input, expect.as_deref(), host.as_deref()),
        Command::BuildSphere { k, n, out } => {
            let built = build_spanning_sphere(*k, *n)?;
            let bound = tightspan_core::sphere::SPHERE_CLUSTER_BOUND;
            emit_built(&mut ctx, &built, SurfaceClass::sphere(), bound, None, out)
        }
        Command::BuildSurface { kind, genus, n, out } => {
            let spec = match (kind, *genus) {
                (Kind::Sphere, 0) => SurfaceClass::sphere(),
                (Kind::Orientable, g) => SurfaceClass::orientable(g),
                (Kind::Nonorientable, h) if h >= 1 => SurfaceClass::non_orientable(h),
                (Kind::Sphere, _) => return Err(usage("a sphere has genus 0")),
                (Kind::Nonorientable, _) => return Err(usage("a non-orientable surface needs --genus >= 1")),
            };
            let n0 = surface_n0(spec)?;
            let built = build_spanning_surface(spec, *n)?;
            emit_built(&mut ctx, &built, spec, surface_cluster_bound(spec)?, Some(n0), out)
        }
        Command::CheckFramework { input, framework, component_index, consistency } => {
            check_framework(&mut ctx, input, framework.as_deref(), *component_index, consistency.as_deref())
        }
        Command::Audit { what } => audit(&mut ctx, what),
        Command::Search { what: Search::Sphere { input, budget, output } } => {
            search(&mut ctx, input, *budget, output.as_deref())
        }
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    CliError::Usage(msg.into()).into()
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    Ok(())
}

fn read_graph(path: &Path) -> Result<Hypergraph> {
    format::read(path, parse_hypergraph)
}

fn meta_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn parse_ratio(s: &str) -> Result<(u64, u64)> {
    let bad = || usage(format!("expected NUM/DEN, got {s:?}"));
    let (a, b) = s.split_once('/').ok_or_else(bad)?;
    let (a, b) = (a.trim().parse::<u64>().map_err(|_| bad())?, b.trim().parse::<u64>().map_err(|_| bad())?);
    if b == 0 || a > b {
        return Err(usage(format!("probability {s} is not in [0, 1]")));
    }
    Ok((a, b))
}

// ---- gen ----

struct Generated {
    text: String,
    meta: Value,
    host: Option<BlowUp>,
}

fn graph_meta(generator: &str, g: &Hypergraph) -> Value {
    json!({ "generator": generator, "k": g.k(), "n": g.n(), "edges": g.edge_count() })
}

fn partitioned(generator: &str, p: &PartitionedGraph) -> Generated {
    let mut meta = graph_meta(generator, &p.graph);
    let params: serde_json::Map<String, Value> = p.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    meta["params"] = Value::Object(params);
    meta["parts"] = p
        .parts
        .iter()
        .map(|part| json!({ "name": part.name, "start": part.range.start, "end": part.range.end }))
        .collect();
    Generated { text: write_hypergraph(&p.graph), meta, host: None }
}

fn blown(generator: &str, base: Hypergraph, sizes: Option<&[usize]>) -> Result<Generated> {
    let Some(sizes) = sizes else {
        let meta = graph_meta(generator, &base);
        return Ok(Generated { text: write_hypergraph(&base), meta, host: None });
    };
    let b = tightspan_core::blow_up(&base, sizes)?;
    let mut meta = graph_meta(generator, b.result());
    meta["sizes"] = json!(sizes);
    meta["base_n"] = json!(base.n());
    Ok(Generated { text: write_hypergraph(b.result()), meta, host: Some(b) })
}

fn gen(ctx: &mut Ctx, what: &Gen) -> Result<u8> {
    let (generated, out, host_path): (Generated, &Output, Option<&PathBuf>) = match what {
        Gen::Fig1 { n, x, z, out } => (partitioned("fig1", &constructions::fig1(*n, *x, *z)?), out, None),
        Gen::SurfaceLb { n, g, out } => {
            (partitioned("surface-lb", &constructions::surface_lower_bound(*n, *g)?), out, None)
        }
        Gen::Kgraph { n, k, out } => (partitioned("kgraph", &constructions::kgraph_lower_bound(*n, *k)?), out, None),
        Gen::Fixture { name, out, host } => {
            let name: FixtureName = name.parse()?;
            let (surface, b) = constructions::fixture(name);
            let mut meta = graph_meta("fixture", &surface.to_hypergraph());
            meta["name"] = json!(name.as_str());
            meta["labels"] = json!(constructions::fixture_labels(name));
            meta["sizes"] = json!(b.sizes());
            (Generated { text: write_surface(&surface), meta, host: Some(b) }, out, host.as_ref())
        }
        Gen::Path { k, l, sizes, out, host } => {
            (blown("path", constructions::tight_path(*k, *l)?, sizes.as_deref())?, out, host.as_ref())
        }
        Gen::Cycle { k, n, sizes, out, host } => {
            (blown("cycle", constructions::tight_cycle(*k, *n)?, sizes.as_deref())?, out, host.as_ref())
        }
        Gen::Kpartite { k, sizes, out } => {
            let b = constructions::complete_kpartite(*k, sizes)?;
            let mut meta = graph_meta("kpartite", b.result());
            meta["sizes"] = json!(sizes);
            (Generated { text: write_hypergraph(b.result()), meta, host: None }, out, None)
        }
        Gen::Tetrahedra { input, out } => {
            let g = read_graph(input)?;
            let t = g.tetrahedra()?;
            (Generated { text: write_hypergraph(&t), meta: graph_meta("tetrahedra", &t), host: None }, out, None)
        }
    };
    if let (Some(path), Some(b)) = (host_path, &generated.host) {
        write_file(path, &write_blowup(b))?;
    }
    match &out.output {
        None => ctx.out.write_all(generated.text.as_bytes())?,
        Some(path) => {
            write_file(path, &generated.text)?;
            let meta_file = meta_path(path);
            let mut meta_text = serde_json::to_string_pretty(&generated.meta)?;
            meta_text.push('\n');
            write_file(&meta_file, &meta_text)?;
            let mut report = generated.meta.clone();
            report["output"] = json!(path.display().to_string());
            report["meta"] = json!(meta_file.display().to_string());
            ctx.emit(&report)?;
        }
    }
    Ok(exit::OK)
}

// ---- inspection ----

fn components(ctx: &mut Ctx, input: &Path) -> Result<u8> {
    let g = read_graph(input)?;
    let d = tight_components(&g);
    let parts: Vec<Value> = (0..d.len())
        .map(|p| {
            json!({
                "index": p,
                "edges": d.parts()[p].len(),
                "vertices": d.vertex_sets()[p].len(),
                "spanning": d.is_spanning(p),
            })
        })
        .collect();
    ctx.emit(&json!({
        "k": g.k(),
        "n": g.n(),
        "edges": g.edge_count(),
        "components": d.len(),
        "spanning": d.has_spanning_part(),
        "spanning_component": d.spanning_part(),
        "parts": parts,
    }))?;
    Ok(exit::OK)
}

fn degree(ctx: &mut Ctx, input: &Path, d: Option<usize>, link: Option<u32>) -> Result<u8> {
    let g = read_graph(input)?;
    let ds: Vec<usize> = match d {
        Some(d) => vec![d],
        None => (1..g.k()).collect(),
    };
    let mut degrees = Vec::new();
    for d in ds {
        degrees.push(json!({ "d": d, "min_degree": g.min_degree(d)? }));
    }
    let mut report = json!({ "k": g.k(), "n": g.n(), "edges": g.edge_count(), "degrees": degrees });
    if let Some(x) = link {
        let link_graph = g.link_graph(x)?;
        let c = link_component_diagnostics(&g, x)?;
        report["link"] = json!({
            "vertex": x,
            "degree": g.degree(x),
            "link_edges": link_graph.edge_count(),
            "component_vertices": c.vertices,
            "component_edges": c.witness.len(),
        });
    }
    ctx.emit(&report)?;
    Ok(exit::OK)
}

fn parse_expected(s: &str) -> Result<SurfaceClass> {
    let count = |v: &str| v.parse::<u32>().map_err(|_| usage(format!("bad surface {s:?}")));
    Ok(match s.to_ascii_lowercase().as_str() {
        "sphere" => SurfaceClass::sphere(),
        "torus" => SurfaceClass::orientable(1),
        "rp2" | "projective" => SurfaceClass::non_orientable(1),
        other => match other.split_once(':') {
            Some(("orientable", g)) => SurfaceClass::orientable(count(g)?),
            Some(("nonorientable", h)) if count(h)? >= 1 => SurfaceClass::non_orientable(count(h)?),
            _ => return Err(usage(format!("unknown surface {s:?} (sphere, torus, rp2, orientable:G, nonorientable:H)"))),
        },
    })
}

fn class_json(s: &Surface2) -> Value {
    let class = s.classify();
    let (v, e, f) = s.counts();
    json!({
        "kind": class.kind.as_str(),
        "genus": class.genus,
        "chi": class.euler,
        "v": v,
        "e": e,
        "f": f,
    })
}

fn classify(ctx: &mut Ctx, input: &Path, expect: Option<&str>, host: Option<&Path>) -> Result<u8> {
    let expected = expect.map(parse_expected).transpose()?;
    let s = format::read(input, parse_surface)?;
    let class = s.classify();
    let mut report = class_json(&s);
    let mut ok = class.is_closed_surface();
    if let Err(defect) = s.check_closed_surface()? {
        report["defect"] = json!(defect.to_string());
    }
    if let Some(exp) = expected {
        let matches = (class.kind, class.genus) == (exp.kind, exp.genus);
        report["expected"] = json!(exp.to_string());
        report["matches"] = json!(matches);
        ok &= matches;
    }
    if let Some(path) = host {
        let b = format::read(path, parse_blowup)?;
        if b.result().n() != s.n() {
            return Err(usage(format!("host has {} vertices, surface has {}", b.result().n(), s.n())));
        }
        let spanning = is_spanning_in_blowup(&s.to_hypergraph(), &b)?;
        report["spanning"] = json!(spanning);
        report["max_cluster"] = json!(b.max_cluster());
        ok &= spanning;
    }
    ctx.emit(&report)?;
    Ok(if ok { exit::OK } else { exit::PROPERTY_FAILS })
}

// ---- builders ----

fn emit_built(
    ctx: &mut Ctx,
    built: &EmbeddedSurface,
    spec: SurfaceClass,
    bound: usize,
    n0: Option<usize>,
    out: &BuildOutput,
) -> Result<u8> {
    let mut report = class_json(&built.surface);
    report["requested"] = json!(spec.to_string());
    if let Some(n0) = n0 {
        report["n0"] = json!(n0);
    }
    report["clusters"] = json!(built.host.sizes());
    report["max_cluster"] = json!(built.host.max_cluster());
    report["cluster_bound"] = json!(bound);
    report["spanning"] = json!(is_spanning_in_blowup(&built.surface.to_hypergraph(), &built.host)?);
    report["double_cover"] = json!(built.cover.is_some());
    if let Some(path) = &out.output {
        write_file(path, &write_surface(&built.surface))?;
    }
    if let Some(path) = &out.host {
        write_file(path, &write_blowup(&built.host))?;
    }
    ctx.emit(&report)?;
    Ok(exit::OK)
}

// ---- framework ----

fn check_framework(
    ctx: &mut Ctx,
    input: &Path,
    framework: Option<&Path>,
    component_index: Option<usize>,
    consistency: Option<&[u32]>,
) -> Result<u8> {
    let g = read_graph(input)?;
    let mut report = match (framework, component_index) {
        (Some(path), _) => framework_report(&g, Some(&read_graph(path)?))?,
        (None, Some(i)) => {
            let d = tight_components(&g);
            let part = d
                .parts()
                .get(i)
                .ok_or_else(|| usage(format!("component {i} does not exist ({} components)", d.len())))?;
            let mut r = framework_report(&g, Some(&g.restrict(part)))?;
            r.component_index = Some(i);
            r
        }
        (None, None) => framework_report(&g, None)?,
    };
    match consistency {
        None => {}
        Some(&[x, y]) => report.f4 = Some(check_consistency(&g, x, y, largest_component)?),
        Some(_) => return Err(usage("--consistency takes two vertices X,Y")),
    }
    let thresholds: Vec<Value> = THRESHOLDS
        .iter()
        .map(|t| {
            json!({
                "family": t.family,
                "k": t.k.map_or_else(|| "any".to_string(), |k| k.to_string()),
                "d": t.d,
                "value": format!("{}/{}", t.numerator, t.denominator),
                "status": format!("{:?}", t.status),
            })
        })
        .collect();
    let holds = report.f1_to_f3() && report.f4 != Some(false);
    ctx.emit(&json!({
        "k": g.k(),
        "n": g.n(),
        "framework_edges": report.framework.edge_count(),
        "component_index": report.component_index,
        "f1": report.f1,
        "f2": report.f2.is_some(),
        "f2_size": report.f2.as_ref().map(|m| m.size.to_string()),
        "f3": report.f3,
        "f3_witness": report.f3_witness,
        "f4": report.f4,
        "framework": holds,
        "thresholds": thresholds,
    }))?;
    Ok(if holds { exit::OK } else { exit::PROPERTY_FAILS })
}

// ---- audits ----

fn write_witnesses(dir: &Path, graphs: &[Hypergraph], prefix: &str) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.display().to_string(), e))?;
    let mut names = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let path = dir.join(format!("{prefix}-{i}.hg"));
        write_file(&path, &write_hypergraph(g))?;
        names.push(path.display().to_string());
    }
    Ok(names)
}

fn audit(ctx: &mut Ctx, what: &Audit) -> Result<u8> {
    let start = Instant::now();
    let code = match what {
        Audit::Theorem { n, exhaustive: _, samples, seed, p, max_triples, witness_dir } => {
            let max_triples = max_triples.or(ctx.config.max_triples).unwrap_or(DEFAULT_MAX_TRIPLES);
            let mode = match samples {
                None => AuditMode::Exhaustive,
                Some(count) => {
                    let (p_num, p_den) = match p {
                        Some(p) => parse_ratio(p)?,
                        None => default_sample_probability(*n),
                    };
                    AuditMode::Sample { count: *count, seed: ctx.seed(*seed), p_num, p_den }
                }
            };
            let r = audit_theorem(*n, mode, max_triples, ctx.threads)?;
            let mut report = json!({ "n": n, "degree_bound": theorem_degree_bound(*n) });
            match mode {
                AuditMode::Exhaustive => report["mode"] = json!("exhaustive"),
                AuditMode::Sample { count, seed, p_num, p_den } => {
                    report["mode"] = json!("sample");
                    report["samples"] = json!(count);
                    report["seed"] = json!(seed);
                    report["p"] = json!(format!("{p_num}/{p_den}"));
                }
            }
            report["tested"] = json!(r.tested);
            report["qualifying"] = json!(r.qualifying);
            report["counterexamples"] = json!(r.counterexamples.len());
            report["holds"] = json!(r.holds());
            report["extremal_min_degree"] = json!(r.extremal.as_ref().map(|(d, _)| d));
            if let Some(dir) = witness_dir {
                let mut files = write_witnesses(dir, &r.counterexamples, "counterexample")?;
                if let Some((_, w)) = &r.extremal {
                    files.extend(write_witnesses(dir, std::slice::from_ref(w), "extremal")?);
                }
                report["witness_files"] = json!(files);
            }
            ctx.emit(&report)?;
            if r.holds() { exit::OK } else { exit::PROPERTY_FAILS }
        }
        Audit::Threshold { n, max_triples, witness } => {
            let max_triples = max_triples.or(ctx.config.max_triples).unwrap_or(DEFAULT_MAX_TRIPLES);
            let r = audit_theorem(*n, AuditMode::Exhaustive, max_triples, ctx.threads)?;
            let t = exact_threshold_from(&r)?;
            if let Some(path) = witness {
                write_file(path, &write_hypergraph(&t.witness))?;
            }
            ctx.emit(&json!({
                "n": n,
                "threshold": t.threshold,
                "theorem_bound": theorem_degree_bound(*n),
                "tested": t.tested,
                "witness_min_degree": t.witness.min_degree(1)?,
                "witness_edges": t.witness.edge_count(),
            }))?;
            exit::OK
        }
        Audit::Codegree { n, k, samples, seed, p, witness_dir } => {
            let (p_num, p_den) = match p {
                Some(p) => parse_ratio(p)?,
                None => (1, 2),
            };
            let seed = ctx.seed(*seed);
            let b = codegree_batch(*n, *k, *samples, seed, p_num, p_den)?;
            let mut report = json!({
                "n": n,
                "k": k,
                "samples": samples,
                "seed": seed,
                "p": format!("{p_num}/{p_den}"),
                "tested": b.tested,
                "above_bound": b.above_bound,
                "counterexamples": b.counterexamples.len(),
            });
            if let Some(dir) = witness_dir {
                report["witness_files"] = json!(write_witnesses(dir, &b.counterexamples, "counterexample")?);
            }
            ctx.emit(&report)?;
            if b.counterexamples.is_empty() { exit::OK } else { exit::PROPERTY_FAILS }
        }
    };
    ctx.elapsed(start);
    Ok(code)
}

// ---- search ----

fn reason_json(r: &AbsenceReason) -> Value {
    match r {
        AbsenceReason::TooFewVertices => json!({ "reason": "too-few-vertices" }),
        AbsenceReason::LowDegree { vertex, degree } => {
            json!({ "reason": "low-degree", "vertex": vertex, "degree": degree })
        }
        AbsenceReason::NoSpanningComponent => json!({ "reason": "no-spanning-component" }),
        AbsenceReason::TooFewEdges { available, required } => {
            json!({ "reason": "counting-bound", "available": available, "required": required })
        }
        AbsenceReason::CoverBound { independent, required, allowed } => json!({
            "reason": "cover-bound",
            "independent": independent,
            "required": required,
            "allowed": allowed,
        }),
        AbsenceReason::Exhausted { nodes } => json!({ "reason": "search-exhausted", "nodes": nodes }),
    }
}

fn search(ctx: &mut Ctx, input: &Path, budget: Option<u64>, output: Option<&Path>) -> Result<u8> {
    let g = read_graph(input)?;
    let budget = budget.or(ctx.config.budget).unwrap_or(DEFAULT_BUDGET);
    let start = Instant::now();
    let outcome = search_spanning_sphere(&g, budget)?;
    let (report, code) = match &outcome {
        SearchOutcome::Found(s) => {
            if let Some(path) = output {
                write_file(path, &write_surface(s))?;
            }
            let mut r = json!({ "outcome": "found" });
            r["sphere"] = class_json(s);
            debug_assert_eq!(s.classify().kind, SurfaceKind::Sphere);
            (r, exit::OK)
        }
        SearchOutcome::ProvenAbsent(reason) => {
            let mut r = json!({ "outcome": "proven-absent" });
            r["absence"] = reason_json(reason);
            (r, exit::PROPERTY_FAILS)
        }
        SearchOutcome::BudgetExhausted { nodes } => {
            (json!({ "outcome": "budget-exhausted", "nodes": nodes, "budget": budget }), exit::RESOURCE)
        }
    };
    ctx.emit(&report)?;
    ctx.elapsed(start);
    Ok(code)
}
