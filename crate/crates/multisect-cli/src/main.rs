//! `msd`: build, check and transform multisection diagrams from the command line.
//!
//! Exit status is 0 on success, 2 when an input or result fails validation, and 1 for
//! anything else (bad usage, unreadable files, failed moves).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use multisect::bundle::{circle_bundle_diagram, parse_perm, scheme_for, sphere_base_bundle_diagram, twisted_w_m, Monodromy, Scheme};
use multisect::diagram::{
    destabilize, destabilize_relaxed, find_stabilizations, find_stabilizations_relaxed, gen1_sphere_diagram,
    MultisectionDiagram, SlideScript, StabilizationWitness,
};
use multisect::goodball::{
    extract_base_graph, rpn_decomposition, s2xs1_decomposition, sphere_decomposition, star_decomposition,
    validate_ball_likeness, GoodBallDecomposition, SimplicialComplex,
};
use multisect::fixtures;
use multisect::io::{parse, render_diagram, render_scheme, serialize, serialize_numbered, FormatError};

#[derive(Parser)]
#[command(name = "msd", version, about = "Multisection diagrams of closed manifolds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a diagram, scheme or decomposition: `kind=<kind> [key=value ...]`.
    ///
    /// Kinds and their keys: gen1-sphere n k; sphere-bundle n g; w-twist m;
    /// circle-bundle fiber [sigma] [scheme] [phi]; scheme sigma n; goodball base [m|n]
    /// [complex] [g]; fixture name (cp2, s2s2, cp2s1-alt-scheme, cp2s1-slides,
    /// cp2-reflection).
    Generate {
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that every family is a cut system and the families meet transversally.
    Validate { input: Option<PathBuf> },
    /// Print genus, family sizes, cell counts and metadata.
    Invariants { input: Option<PathBuf> },
    /// Apply a slide script.
    Move {
        script: PathBuf,
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List destabilization witnesses, cleanly separated ones first.
    FindDestab { input: Option<PathBuf> },
    /// Destabilize along a witness from `find-destab`.
    Destab {
        input: Option<PathBuf>,
        /// Position in the `find-destab` list, from 1.
        #[arg(short, long, default_value_t = 1)]
        witness: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exit 0 iff the two diagrams are isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Allow renaming the families.
        #[arg(long)]
        permute_families: bool,
    },
    /// Draw a scheme or diagram as SVG.
    Render {
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

use Failure::{Invalid, Usage};

type Res<T> = Result<T, Failure>;

fn read(path: Option<&Path>) -> Res<String> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p).map_err(|e| Usage(format!("{}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn write(path: Option<&Path>, text: &str) -> Res<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: Option<&Path>) -> Res<MultisectionDiagram> {
    let name = path.map_or("stdin".to_string(), |p| p.display().to_string());
    parse(&read(path)?).map_err(|e| match e {
        FormatError::ValidationFailed { .. } => Invalid(format!("{name}: {e}")),
        _ => Usage(format!("{name}: {e}")),
    })
}

struct Params(BTreeMap<String, String>);

impl Params {
    fn new(args: &[String]) -> Res<Self> {
        let mut map = BTreeMap::new();
        for a in args {
            let (k, v) = a.split_once('=').ok_or_else(|| Usage(format!("expected key=value, found `{a}`")))?;
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Usage(format!("`{k}` given twice")));
            }
        }
        Ok(Params(map))
    }

    fn take(&mut self, k: &str) -> Option<String> {
        self.0.remove(k)
    }

    fn need(&mut self, k: &str) -> Res<String> {
        self.take(k).ok_or_else(|| Usage(format!("missing `{k}=`")))
    }

    fn number(&mut self, k: &str) -> Res<usize> {
        let v = self.need(k)?;
        v.parse().map_err(|_| Usage(format!("`{k}` must be a number, found `{v}`")))
    }

    fn done(self) -> Res<()> {
        match self.0.keys().next() {
            Some(k) => Err(Usage(format!("unknown key `{k}`"))),
            None => Ok(()),
        }
    }
}

fn generate(args: &[String]) -> Res<String> {
    let mut p = Params::new(args)?;
    let kind = p.need("kind")?;
    let err = |e: &dyn std::fmt::Display| Usage(e.to_string());
    let out = match kind.as_str() {
        "gen1-sphere" => {
            let (n, k) = (p.number("n")?, p.number("k")?);
            serialize(&gen1_sphere_diagram(n, k).map_err(|e| err(&e))?)
        }
        "sphere-bundle" => {
            let (n, g) = (p.number("n")?, p.number("g")?);
            serialize(&sphere_base_bundle_diagram(n, g).map_err(|e| err(&e))?)
        }
        "w-twist" => serialize(&twisted_w_m(p.number("m")?).map_err(|e| err(&e))?),
        "circle-bundle" => {
            let fiber_path = PathBuf::from(p.need("fiber")?);
            let fiber = load(Some(&fiber_path))?;
            let sigma_text = p.take("sigma").unwrap_or_else(|| "id".into());
            let sigma = parse_perm(&sigma_text, fiber.n()).map_err(|e| err(&e))?;
            let phi = match p.take("phi") {
                Some(f) => read(Some(Path::new(&f)))?
                    .split_whitespace()
                    .map(|w| w.parse().map_err(|_| Usage(format!("{f}: bad dart `{w}`"))))
                    .collect::<Res<Vec<usize>>>()?,
                None if sigma.iter().enumerate().all(|(i, &s)| i == s) => (0..fiber.map.num_darts()).collect(),
                None => return Err(Usage("a non-identity sigma needs `phi=<file>`".into())),
            };
            let scheme = match p.take("scheme") {
                Some(f) => Scheme::parse(&read(Some(Path::new(&f)))?).map_err(|e| Usage(format!("{f}: {e}")))?,
                None => scheme_for(&sigma).map_err(|e| err(&e))?,
            };
            let d = circle_bundle_diagram(&fiber, &Monodromy { sigma, phi }, &scheme).map_err(|e| err(&e))?;
            serialize(&d)
        }
        "scheme" => {
            let n = p.number("n")?;
            if n < 2 {
                return Err(Usage("a scheme needs n >= 2".into()));
            }
            let sigma = parse_perm(&p.need("sigma")?, n - 1).map_err(|e| err(&e))?;
            scheme_for(&sigma).map_err(|e| err(&e))?.to_string()
        }
        "goodball" => {
            let g = p.take("g").map(|v| v.parse().map_err(|_| Usage(format!("`g` must be a number, found `{v}`")))).transpose()?;
            let base = p.need("base")?;
            let gbd = match base.as_str() {
                "sphere" => sphere_decomposition(p.number("m")?),
                "rpn" => rpn_decomposition(p.number("n")?),
                "s2xs1" => s2xs1_decomposition(),
                "complex" => {
                    let f = p.need("complex")?;
                    let k = SimplicialComplex::parse(&read(Some(Path::new(&f)))?).map_err(|e| Usage(format!("{f}: {e}")))?;
                    star_decomposition(&k).map_err(|e| err(&e))?
                }
                _ => return Err(Usage(format!("unknown base `{base}`"))),
            };
            goodball_report(&gbd, g)
        }
        "fixture" => {
            let name = p.need("name")?;
            match name.as_str() {
                "cp2" => serialize(&fixtures::cp2()),
                "s2s2" => serialize(&fixtures::s2s2()),
                "cp2s1-alt-scheme" => fixtures::CP2S1_ALT_SCHEME.to_string(),
                "cp2s1-slides" => fixtures::CP2S1_SLIDES.to_string(),
                "cp2-reflection" => {
                    // dart images in the numbering of the written cp2 fixture
                    let (_, num) = serialize_numbered(&fixtures::cp2());
                    let phi = fixtures::cp2_reflection().phi;
                    let mut out = vec![0; phi.len()];
                    for (d, &e) in phi.iter().enumerate() {
                        out[num[d]] = num[e];
                    }
                    out.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ") + "\n"
                }
                _ => return Err(Usage(format!("unknown fixture `{name}`"))),
            }
        }
        _ => return Err(Usage(format!("unknown kind `{kind}`"))),
    };
    p.done()?;
    Ok(out)
}

fn goodball_report(gbd: &GoodBallDecomposition, g: Option<usize>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "base {:?} dim {} pieces {} euler {}", gbd.base, gbd.dim, gbd.pieces, gbd.base_euler);
    for st in &gbd.strata {
        let set: Vec<String> = st.set.iter().map(|i| i.to_string()).collect();
        let comps: Vec<String> = st.components.iter().map(|c| format!("{}:{}", c.dim, c.euler)).collect();
        let _ = writeln!(out, "stratum {} components {} dim:euler {}", set.join(","), st.components.len(), comps.join(" "));
    }
    let checks = validate_ball_likeness(gbd);
    let _ = writeln!(out, "ball-like {}/{}", checks.iter().filter(|c| c.passes()).count(), checks.len());
    match extract_base_graph(gbd) {
        Ok(graph) => {
            let _ = writeln!(out, "graph vertices {} colors {} edges {}", graph.vertices, graph.colors, graph.edges.len());
            if let Some(g) = g {
                let _ = writeln!(out, "predicted genus {}", graph.predicted_genus(g));
            }
        }
        Err(_) => out.push_str("graph not simple\n"),
    }
    out
}

fn invariants(d: &MultisectionDiagram) -> String {
    let m = &d.map;
    let mut out = String::new();
    let _ = writeln!(out, "genus {}", d.genus());
    let _ = writeln!(out, "families {}", d.n());
    let sizes: Vec<String> = d.families.iter().map(|f| f.len().to_string()).collect();
    let _ = writeln!(out, "curves {}", sizes.join(" "));
    let _ = writeln!(out, "cells darts {} vertices {} edges {} faces {}", m.num_darts(), m.num_vertices(), m.num_edges(), m.num_faces());
    for ((a, b), counts) in d.intersection_matrix() {
        let total: usize = counts.iter().flatten().sum();
        let _ = writeln!(out, "intersections {} {} {total}", a + 1, b + 1);
    }
    for (k, v) in &d.meta {
        let _ = writeln!(out, "meta {k} {v}");
    }
    out
}

/// Witnesses in listing order, flagged when they need the relaxed destabilization.
fn witnesses(d: &MultisectionDiagram) -> Vec<(StabilizationWitness, bool)> {
    let strict = find_stabilizations(d);
    let mut out: Vec<(StabilizationWitness, bool)> = strict.iter().cloned().map(|w| (w, false)).collect();
    for w in find_stabilizations_relaxed(d) {
        if !strict.iter().any(|s| s.a == w.a && s.b == w.b) {
            out.push((w, true));
        }
    }
    out
}

fn curve_names(d: &MultisectionDiagram, refs: &[(usize, usize)]) -> String {
    let names: Vec<String> = refs
        .iter()
        .map(|&(f, c)| {
            let l = &d.labels[f][c];
            if l.is_empty() { format!("{}:{c}", f + 1) } else { format!("{}:{l}", f + 1) }
        })
        .collect();
    names.join(",")
}

fn run(cmd: Cmd) -> Res<()> {
    match cmd {
        Cmd::Generate { params, output } => write(output.as_deref(), &generate(&params)?),
        Cmd::Validate { input } => {
            let d = load(input.as_deref())?;
            let r = d.validate();
            if r.is_valid() {
                println!("valid: genus {} with {} families", d.genus(), d.n());
                Ok(())
            } else {
                Err(Invalid(r.failures().join("\n")))
            }
        }
        Cmd::Invariants { input } => write(None, &invariants(&load(input.as_deref())?)),
        Cmd::Move { script, input, output } => {
            let s = SlideScript::parse(&read(Some(&script))?).map_err(|e| Usage(format!("{}: {e}", script.display())))?;
            let d = load(input.as_deref())?;
            let e = s.apply(&d).map_err(|e| Usage(format!("{}: {e}", script.display())))?;
            write(output.as_deref(), &serialize(&e))
        }
        Cmd::FindDestab { input } => {
            let d = load(input.as_deref())?;
            let ws = witnesses(&d);
            let mut out = format!("witnesses {}\n", ws.len());
            for (i, (w, relaxed)) in ws.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{} {} k={} a={} b={}",
                    i + 1,
                    if *relaxed { "relaxed" } else { "clean" },
                    w.k(),
                    curve_names(&d, &w.a),
                    curve_names(&d, &w.b)
                );
            }
            write(None, &out)
        }
        Cmd::Destab { input, witness, output } => {
            let d = load(input.as_deref())?;
            let ws = witnesses(&d);
            let (w, relaxed) = witness
                .checked_sub(1)
                .and_then(|i| ws.get(i))
                .ok_or_else(|| Usage(format!("no witness {witness}; find-destab lists {}", ws.len())))?;
            let e = if *relaxed { destabilize_relaxed(&d, w) } else { destabilize(&d, w) }.map_err(|e| Usage(e.to_string()))?;
            if !e.is_valid() {
                return Err(Invalid(e.validate().failures().join("\n")));
            }
            write(output.as_deref(), &serialize(&e))
        }
        Cmd::Iso { a, b, permute_families } => {
            let (x, y) = (load(Some(&a))?, load(Some(&b))?);
            if x.isomorphic(&y, permute_families) {
                println!("isomorphic");
                Ok(())
            } else {
                Err(Usage("not isomorphic".into()))
            }
        }
        Cmd::Render { input, output } => {
            let text = read(input.as_deref())?;
            let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
            let svg = if first.starts_with("scheme") {
                render_scheme(&Scheme::parse(&text).map_err(|e| Usage(e.to_string()))?)
            } else {
                render_diagram(&parse(&text).map_err(|e| Usage(e.to_string()))?)
            };
            write(output.as_deref(), &svg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Usage(msg)) => {
            eprintln!("msd: {msg}");
            ExitCode::from(1)
        }
        Err(Invalid(msg)) => {
            eprintln!("msd: {msg}");
            ExitCode::from(2)
        }
    }
}
