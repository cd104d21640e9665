//! Command-line front end: instance generation, pipelines, rendering and
//! verification. Reports are plain `key: value` text with fixed float
//! precision and carry no timing, so equal inputs give equal bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use hyperlam::covering::{
    covering_from_hyperfinite, suspend, validate_local_homeo, CoveringConfig, LocalHomeoReport, SuspensionInstance,
};
use hyperlam::envelope::{envelope, integral_decomposition, strong_filtration};
use hyperlam::filtration::hypercompact_filtration;
use hyperlam::generators::{block_filtration, grid_disk, linear_foliation_window};
use hyperlam::instance::{partition_block, Approximant, Instance, InstanceError};
use hyperlam::relations::check_filtration;
use hyperlam::svg;
use hyperlam::uniformize::{dirichlet_solve, DirichletProblem, WeightScheme};
use hyperlam::{components, disk_certificate, FinitePartition, Region, TriId, VertexId};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const AFFINE_TOL: f64 = 1e-9;
/// Largest development drawn by `run covering`; later stages are skipped.
const SVG_MAX_TRIANGLES: usize = 20_000;

#[derive(Debug, Parser)]
#[command(name = "hyperlam", version, about = "Filtrations, envelopes and torus coverings of lamination windows")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(name = "grid_window")]
    GridWindow,
    #[value(name = "block_filtration")]
    BlockFiltration,
    #[value(name = "linear_foliation_window")]
    LinearFoliationWindow,
    #[value(name = "suspension")]
    Suspension,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pipeline {
    #[value(name = "covering", alias = "covering_from_hyperfinite")]
    Covering,
    #[value(name = "hypercompact", alias = "hypercompact_filtration")]
    Hypercompact,
    #[value(name = "strong", alias = "strong_filtration")]
    Strong,
    #[value(name = "envelope")]
    Envelope,
    #[value(name = "dirichlet", alias = "dirichlet_solve")]
    Dirichlet,
    #[value(name = "suspension")]
    Suspension,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Auto,
    Complex,
    Partition,
    Region,
    Envelope,
    Development,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Weights {
    Cotangent,
    Uniform,
}

impl From<Weights> for WeightScheme {
    fn from(w: Weights) -> Self {
        match w {
            Weights::Cotangent => WeightScheme::Cotangent,
            Weights::Uniform => WeightScheme::Uniform,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit an instance document.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        /// Half-width of the grid window.
        #[arg(long, default_value_t = 4)]
        radius: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Block side exponents of a block filtration.
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3])]
        steps: Vec<u32>,
        /// Rational slope approximants `p/q`.
        #[arg(long, default_value = "99/70")]
        alpha: String,
        #[arg(long, default_value = "99/70")]
        beta: String,
        /// Largest fiber of a random suspension.
        #[arg(long, default_value_t = 16)]
        size: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a pipeline on an instance and write a report.
    Run {
        #[arg(value_enum)]
        pipeline: Pipeline,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Largest envelope volume admitted; defaults to the window size.
        #[arg(long)]
        qmax: Option<usize>,
        #[arg(long, default_value_t = 4)]
        retries: u32,
        #[arg(long, value_enum, default_value_t = Weights::Cotangent)]
        weights: Weights,
        /// Overrides the radius of a suspension block.
        #[arg(long)]
        radius: Option<u32>,
    },
    /// Render an instance as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, alias = "svg")]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Style::Auto)]
        style: Style,
        #[arg(long, default_value_t = 20.0)]
        scale: f64,
    },
    /// Check an instance document and every block it carries.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(msg: impl ToString) -> Self {
        CliError { code: EXIT_INPUT, message: msg.to_string() }
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        CliError::input(e)
    }
}

/// Files to write and the exit status.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub report_path: Option<PathBuf>,
    pub svg: Option<(PathBuf, String)>,
}

impl Outcome {
    pub fn write(&self) -> std::io::Result<()> {
        match &self.report_path {
            Some(p) => std::fs::write(p, &self.report)?,
            None => print!("{}", self.report),
        }
        if let Some((p, s)) = &self.svg {
            std::fs::write(p, s)?;
        }
        Ok(())
    }
}

fn read_instance(path: &PathBuf) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok(Instance::from_json(&text)?)
}

fn parse_ratio(s: &str) -> Result<(i64, i64), CliError> {
    let (p, q) = s.split_once('/').ok_or_else(|| CliError::input(format!("slope `{s}` is not of the form p/q")))?;
    let p: i64 = p.trim().parse().map_err(|_| CliError::input(format!("bad numerator in `{s}`")))?;
    let q: i64 = q.trim().parse().map_err(|_| CliError::input(format!("bad denominator in `{s}`")))?;
    if q <= 0 {
        return Err(CliError::input(format!("denominator of `{s}` must be positive")));
    }
    Ok((p, q))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn generate(
    kind: Kind,
    radius: u32,
    seed: u64,
    steps: &[u32],
    alpha: &str,
    beta: &str,
    size: usize,
) -> Result<Instance, CliError> {
    if radius == 0 {
        return Err(CliError::input("radius must be positive"));
    }
    let mut doc = match kind {
        Kind::GridWindow => Instance::from_complex(&grid_disk(radius)),
        Kind::BlockFiltration => {
            if steps.is_empty() || steps.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CliError::input("block steps must be a nonempty increasing list"));
            }
            if steps.iter().any(|&k| k > 16) {
                return Err(CliError::input("block exponents above 16 are not supported"));
            }
            let g = grid_disk(radius);
            let mut doc = Instance::from_complex(&g);
            doc.set_filtration(&block_filtration(&g, steps, seed));
            doc
        }
        Kind::LinearFoliationWindow => {
            let (a, qa) = parse_ratio(alpha)?;
            let (b, qb) = parse_ratio(beta)?;
            let q = qa / gcd(qa, qb) * qb;
            let w = linear_foliation_window(radius, a * (q / qa), b * (q / qb), q);
            let mut doc = Instance::from_complex(&w.window);
            doc.approximant = Some(Approximant { alpha: [a, qa], beta: [b, qb] });
            doc.fiber_labels = Some(w.fiber_labels.iter().map(|(t, &z)| (t.0, z)).collect());
            let orbits: Vec<Vec<u32>> = w.orbit_partition.values().map(|o| o.iter().copied().collect()).collect();
            let orbit_of: BTreeMap<u32, usize> =
                orbits.iter().enumerate().flat_map(|(k, o)| o.iter().map(move |&z| (z, k))).collect();
            let p = FinitePartition::from_labels(w.fiber_labels.iter().map(|(&t, z)| (t, orbit_of[z])));
            doc.partition = Some(partition_block(&p));
            doc.orbits = Some(orbits);
            doc
        }
        Kind::Suspension => {
            if size == 0 {
                return Err(CliError::input("suspension size must be positive"));
            }
            let s = SuspensionInstance::random(size, radius, seed);
            let sus = suspend(&s);
            let w = &sus.windows[0];
            let mut doc = Instance::from_complex(&w.window.complex);
            doc.leaf_index = Some(w.leaf);
            doc.fiber_labels = Some(w.window.labels.iter().map(|(t, &z)| (t.0, z)).collect());
            doc.orbits = Some(s.orbits());
            doc.fiber_relation = Some(sus.fiber_relation.clone());
            doc.suspension = Some(s);
            doc
        }
    };
    doc.kind = Some(
        match kind {
            Kind::GridWindow => "grid_window",
            Kind::BlockFiltration => "block_filtration",
            Kind::LinearFoliationWindow => "linear_foliation_window",
            Kind::Suspension => "suspension",
        }
        .to_string(),
    );
    Ok(doc)
}

fn ids(ts: &[TriId]) -> String {
    let v: Vec<String> = ts.iter().map(|t| t.0.to_string()).collect();
    format!("[{}]", v.join(", "))
}

fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn local_homeo_line(r: &LocalHomeoReport) -> String {
    format!(
        "triangles {} negative {} missing {} interior_vertices {} bad_links {} folded_boundary {}",
        r.triangles,
        r.negative.len(),
        r.missing.len(),
        r.interior_vertices,
        r.bad_links.len(),
        r.folded_boundary.len()
    )
}

pub struct RunConfig {
    pub qmax: Option<usize>,
    pub retries: u32,
    pub weights: Weights,
    pub radius: Option<u32>,
}

/// Runs a pipeline; returns the report, an optional SVG and whether every
/// certificate passed.
pub fn run(pipeline: Pipeline, doc: &Instance, cfg: &RunConfig) -> Result<(String, Option<String>, bool), CliError> {
    let mut out = String::new();
    let name = match pipeline {
        Pipeline::Covering => "covering_from_hyperfinite",
        Pipeline::Hypercompact => "hypercompact_filtration",
        Pipeline::Strong => "strong_filtration",
        Pipeline::Envelope => "envelope",
        Pipeline::Dirichlet => "dirichlet_solve",
        Pipeline::Suspension => "suspension",
    };
    writeln!(out, "pipeline: {name}").unwrap();
    if pipeline == Pipeline::Suspension {
        let mut s = doc.suspension.clone().ok_or(InstanceError::Missing("suspension"))?;
        if let Some(r) = cfg.radius {
            s.radius = r;
        }
        let s = SuspensionInstance::new(s.a, s.b, s.radius).map_err(CliError::input)?;
        let sus = suspend(&s);
        let orbits = s.orbits();
        let pass = sus.fiber_relation == orbits;
        writeln!(out, "fiber_size: {}\nradius: {}", s.size(), s.radius).unwrap();
        writeln!(out, "orbits: {:?}\nfiber_relation: {:?}", orbits, sus.fiber_relation).unwrap();
        writeln!(out, "status: {}", status(pass)).unwrap();
        let w = &sus.windows[0];
        let svg = svg::region_svg(&w.window.complex, None, Some(&w.window.labels), 20.0);
        return Ok((out, Some(svg), pass));
    }

    let c = doc.complex()?;
    writeln!(out, "window: {} vertices, {} triangles", c.num_vertices(), c.num_triangles()).unwrap();
    match pipeline {
        Pipeline::Covering => {
            let f = doc.filtration()?;
            let ccfg = CoveringConfig { q_max: cfg.qmax, retries: cfg.retries, ..CoveringConfig::default() };
            match covering_from_hyperfinite(&f, &c, &ccfg) {
                Err(e) => {
                    writeln!(out, "error: stage {} ({}): {}", e.stage, e.name, e.message).unwrap();
                    writeln!(out, "status: fail").unwrap();
                    Ok((out, None, false))
                }
                Ok(rep) => {
                    let cov = &rep.covering;
                    writeln!(out, "vacuous: {}", rep.vacuous()).unwrap();
                    writeln!(out, "hypercompact: steps {} volumes {:?} missed {}", rep.hypercompact.steps, rep.hypercompact.volumes, rep.hypercompact.missed.len()).unwrap();
                    writeln!(out, "strong: levels {} bad_components {} missed {} monotone {}", rep.strong.levels, rep.strong.bad_components.len(), rep.strong.missed.len(), rep.strong.monotone).unwrap();
                    writeln!(out, "stage_volumes: {:?}", rep.stage_volumes).unwrap();
                    writeln!(out, "refinements: {}\nattempts: {}", cov.refinements, cov.attempts).unwrap();
                    if let Some(a) = cov.anchor {
                        writeln!(out, "anchor: ({:.9}, {:.9})", a.x, a.y).unwrap();
                    }
                    for s in &cov.stages {
                        let k = &s.certificate;
                        writeln!(out, "stage {}: {}", k.stage, status(k.passed())).unwrap();
                        writeln!(out, "  depth {} components {}", k.depth, k.components).unwrap();
                        writeln!(out, "  local_homeo {}", local_homeo_line(&k.local_homeo)).unwrap();
                        writeln!(out, "  extends_previous {}", k.extends_previous).unwrap();
                        writeln!(out, "  radius required {:.6} certified {:.9}", k.required_radius, k.certified_radius).unwrap();
                    }
                    writeln!(out, "torus_surjective: {}", cov.torus_surjective()).unwrap();
                    let pass = rep.passed();
                    let shown = (0..cov.stages.len()).rev().find(|&k| cov.stages[k].development.domain.len() <= SVG_MAX_TRIANGLES);
                    let svg = match shown {
                        Some(k) => {
                            writeln!(out, "svg_stage: {}", k + 1).unwrap();
                            svg::development_svg(&cov.complexes[k], &cov.stages[k].development, 20.0)
                        }
                        None => svg::region_svg(&c, Some(&Region::new()), None, 20.0),
                    };
                    writeln!(out, "status: {}", status(pass)).unwrap();
                    Ok((out, Some(svg), pass))
                }
            }
        }
        Pipeline::Hypercompact | Pipeline::Strong => {
            let f = doc.filtration()?;
            let (bs, hc) = hypercompact_filtration(&f, &c);
            writeln!(out, "steps: {}\nvolumes: {:?}", hc.steps, hc.volumes).unwrap();
            writeln!(out, "relation_violation: {:?}\nregion_violation: {:?}", hc.relation_violation, hc.region_violation).unwrap();
            writeln!(out, "exhaustible: {}\nmissed: {}", hc.exhaustible, ids(&hc.missed)).unwrap();
            if pipeline == Pipeline::Hypercompact {
                writeln!(out, "status: {}", status(hc.passed())).unwrap();
                let last = bs.last().cloned().unwrap_or_default();
                return Ok((out, Some(svg::region_svg(&c, Some(&last), None, 20.0)), hc.passed()));
            }
            let q_max = cfg.qmax.unwrap_or(c.num_triangles());
            let (sf, rep) = strong_filtration(&c, &bs, q_max);
            writeln!(out, "q_max: {q_max}\nvacuous: {}", sf.is_vacuous()).unwrap();
            for (q, r) in &sf.levels {
                writeln!(out, "level {q}: {} triangles", r.len()).unwrap();
            }
            writeln!(out, "bad_components: {:?}", rep.bad_components.iter().map(|(q, t)| (*q, t.0)).collect::<Vec<_>>()).unwrap();
            writeln!(out, "monotone: {}\nstrong_missed: {}", rep.monotone, ids(&rep.missed)).unwrap();
            let pass = hc.monotone() && rep.passed();
            writeln!(out, "status: {}", status(pass)).unwrap();
            Ok((out, Some(svg::region_svg(&c, Some(&sf.last()), None, 20.0)), pass))
        }
        Pipeline::Envelope => {
            let omega = doc.region()?;
            let env = envelope(&c, &omega);
            writeln!(out, "input: {} triangles\nenvelope: {} triangles", omega.len(), env.region.len()).unwrap();
            writeln!(out, "filled: {}\nunbounded: {}\nreliable: {}", env.filled.len(), env.unbounded.len(), env.reliable).unwrap();
            let mut pass = true;
            for comp in components(&c, &env.region) {
                let cert = disk_certificate(&c, &comp);
                let min = comp.min_id().map_or(0, |t| t.0);
                writeln!(out, "component {min}: {} triangles, chi {}, boundary cycles {}, disk {}", comp.len(), cert.euler, cert.boundary_cycles.map_or("-".to_string(), |b| b.to_string()), cert.is_disk()).unwrap();
                let frontier = comp.triangles.iter().any(|&t| c.triangle(t).unwrap().iter().any(|&v| c.vertex(c.vertex_idx(v).unwrap()).on_frontier));
                pass &= frontier || cert.is_disk();
            }
            match integral_decomposition(&c, &omega) {
                Ok(parts) => writeln!(out, "integral_decomposition: {} parts", parts.len()).unwrap(),
                Err(e) => writeln!(out, "integral_decomposition: {e}").unwrap(),
            }
            writeln!(out, "status: {}", status(pass)).unwrap();
            Ok((out, Some(svg::envelope_svg(&c, &omega, &env, 20.0)), pass))
        }
        Pipeline::Dirichlet => {
            let affine = doc.boundary_values.is_none();
            let bv: BTreeMap<VertexId, f64> = match doc.boundary_values() {
                Some(b) => b,
                None => {
                    let mut on = vec![false; c.num_vertices()];
                    for e in c.edges().iter().filter(|e| e.is_boundary()) {
                        on[e.v[0] as usize] = true;
                        on[e.v[1] as usize] = true;
                    }
                    c.vertices().iter().zip(on).filter(|(_, b)| *b).map(|(v, _)| (v.id, v.pos.x + 0.5 * v.pos.y)).collect()
                }
            };
            let scheme = WeightScheme::from(cfg.weights);
            let sol = dirichlet_solve(&DirichletProblem::new(&c, bv.clone(), scheme)).map_err(CliError::input)?;
            let (lo, hi) = bv.values().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
            let (slo, shi) = sol.values().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
            let max_principle = slo >= lo - AFFINE_TOL && shi <= hi + AFFINE_TOL;
            writeln!(out, "weights: {}", cfg.weights.to_possible_value().unwrap().get_name()).unwrap();
            writeln!(out, "boundary_range: [{lo:.9}, {hi:.9}]\nsolution_range: [{slo:.9}, {shi:.9}]").unwrap();
            writeln!(out, "max_principle: {max_principle}").unwrap();
            let mut pass = max_principle;
            if affine {
                let err = c.vertices().iter().map(|v| (sol[&v.id] - (v.pos.x + 0.5 * v.pos.y)).abs()).fold(0.0, f64::max);
                writeln!(out, "affine_error: {err:.3e}").unwrap();
                if cfg.weights == Weights::Cotangent {
                    pass &= err <= AFFINE_TOL;
                }
            }
            writeln!(out, "status: {}", status(pass)).unwrap();
            Ok((out, Some(svg::heat_svg(&c, &sol, 20.0)), pass))
        }
        Pipeline::Suspension => unreachable!(),
    }
}

pub fn verify(doc: &Instance) -> Result<(String, bool), CliError> {
    let mut out = String::new();
    let c = doc.complex()?;
    writeln!(out, "complex: {} vertices, {} triangles, chi {}", c.num_vertices(), c.num_triangles(), c.euler_characteristic()).unwrap();
    let mut pass = true;
    let universe: BTreeSet<TriId> = c.triangle_ids().collect();
    if doc.partition.is_some() {
        let p = doc.partition()?;
        let ok = p.universe().all(|t| universe.contains(&t));
        writeln!(out, "partition: {} classes, inside window {ok}", p.num_classes()).unwrap();
        pass &= ok;
    }
    if doc.filtration.is_some() {
        let f = doc.filtration()?;
        let last = f.last().cloned().ok_or_else(|| CliError::input("empty filtration"))?;
        let rep = check_filtration(&f, &last).map_err(CliError::input)?;
        writeln!(out, "filtration: {} steps, monotone {}", rep.steps, rep.monotone).unwrap();
        pass &= rep.monotone;
    }
    if doc.region.is_some() {
        let r = doc.region()?;
        let ok = r.triangles.iter().all(|t| universe.contains(t));
        writeln!(out, "region: {} triangles, inside window {ok}", r.len()).unwrap();
        pass &= ok;
    }
    if doc.development.is_some() {
        let d = doc.development(&c)?;
        let rep = validate_local_homeo(&c, &d);
        writeln!(out, "development: {}", local_homeo_line(&rep)).unwrap();
        pass &= rep.passed();
    }
    if let (Some(rel), Some(orb)) = (&doc.fiber_relation, &doc.orbits) {
        let ok = rel == orb;
        writeln!(out, "fiber_relation matches orbits: {ok}").unwrap();
        pass &= ok;
    }
    writeln!(out, "status: {}", status(pass)).unwrap();
    Ok((out, pass))
}

pub fn render(doc: &Instance, style: Style, scale: f64) -> Result<String, CliError> {
    if !(scale > 0.0) {
        return Err(CliError::input("scale must be positive"));
    }
    let c = doc.complex()?;
    let style = match style {
        Style::Auto if doc.development.is_some() => Style::Development,
        Style::Auto if doc.partition.is_some() || doc.fiber_labels.is_some() => Style::Partition,
        Style::Auto if doc.region.is_some() => Style::Region,
        Style::Auto => Style::Complex,
        s => s,
    };
    Ok(match style {
        Style::Complex | Style::Auto => svg::region_svg(&c, None, None, scale),
        Style::Partition => {
            let classes: BTreeMap<TriId, u32> = match (&doc.partition, &doc.fiber_labels) {
                (Some(_), _) => {
                    let p = doc.partition()?;
                    p.universe().map(|t| (t, p.class_index(t).unwrap())).collect()
                }
                (None, Some(l)) => l.iter().map(|(&t, &z)| (TriId(t), z)).collect(),
                (None, None) => return Err(InstanceError::Missing("partition").into()),
            };
            svg::region_svg(&c, None, Some(&classes), scale)
        }
        Style::Region => svg::region_svg(&c, Some(&doc.region()?), None, scale),
        Style::Envelope => {
            let omega = doc.region()?;
            svg::envelope_svg(&c, &omega, &envelope(&c, &omega), scale)
        }
        Style::Development => svg::development_svg(&c, &doc.development(&c)?, scale),
    })
}

/// Executes a parsed command line without touching the file system for
/// outputs.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Generate { kind, radius, seed, steps, alpha, beta, size, output } => {
            let doc = generate(*kind, *radius, *seed, steps, alpha, beta, *size)?;
            Ok(Outcome { code: EXIT_PASS, report: doc.to_json(), report_path: output.clone(), svg: None })
        }
        Command::Run { pipeline, input, output, svg, qmax, retries, weights, radius } => {
            let doc = read_instance(input)?;
            let cfg = RunConfig { qmax: *qmax, retries: *retries, weights: *weights, radius: *radius };
            let (report, image, pass) = run(*pipeline, &doc, &cfg)?;
            Ok(Outcome {
                code: if pass { EXIT_PASS } else { EXIT_FAIL },
                report,
                report_path: output.clone(),
                svg: svg.clone().zip(image),
            })
        }
        Command::Render { input, output, style, scale } => {
            let doc = read_instance(input)?;
            let image = render(&doc, *style, *scale)?;
            Ok(match output {
                Some(p) => Outcome { code: EXIT_PASS, report: String::new(), report_path: None, svg: Some((p.clone(), image)) },
                None => Outcome { code: EXIT_PASS, report: image, report_path: None, svg: None },
            })
        }
        Command::Verify { input, output } => {
            let doc = read_instance(input)?;
            let (report, pass) = verify(&doc)?;
            Ok(Outcome { code: if pass { EXIT_PASS } else { EXIT_FAIL }, report, report_path: output.clone(), svg: None })
        }
    }
}
