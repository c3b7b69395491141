use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use helmtop::builders::{lattice_link_complement, preset, PRESETS};
use helmtop::cut::{classify_at_depth, cut_open, minimal_subsystems, DEFAULT_DEPTH};
use helmtop::domain::{chain_record, corank_bounds, int_value, DomainContext};
use helmtop::group::{abelianize, longitude_word, wirtinger, MilnorContext};
use helmtop::homology::SimplicialHomology;
use helmtop::io::{parse_complex_json, parse_lattice_paths, to_complex_json, MarkedComplex};
use helmtop::link::{link_helmholtz_verdict, link_preset, parse_pd, seifert_data, LinkDiagram, DEFAULT_SEARCH_LENGTH, LINK_PRESETS};
use helmtop::Error;

#[derive(Parser)]
#[command(name = "helmtop", version, about = "Homology, cut systems and link invariants for triangulated 3-domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ComplexInput {
    /// Built-in complex (see `preset-list`).
    #[arg(long, conflicts_with_all = ["input", "lattice"])]
    preset: Option<String>,
    /// JSON complex file: {"simplices": [...], "marked_subcomplexes": {...}}.
    #[arg(long, conflicts_with = "lattice")]
    input: Option<PathBuf>,
    /// Lattice path file; the complement of the tubes around the paths is used.
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Box margin around the tubes for `--lattice`.
    #[arg(long, default_value_t = 1)]
    margin: i64,
}

#[derive(Args)]
struct SystemArgs {
    /// Comma-separated names of marked surfaces.
    #[arg(long, value_delimiter = ',')]
    system: Vec<String>,
    /// Barycentric subdivisions used for cutting.
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
}

#[derive(Args)]
struct LinkInput {
    /// PD code file.
    #[arg(long, conflicts_with = "link")]
    pd: Option<PathBuf>,
    /// Built-in diagram (see `preset-list`).
    #[arg(long)]
    link: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Integral homology groups.
    Homology {
        #[command(flatten)]
        input: ComplexInput,
    },
    /// Identity checks, simplicity, boundary kernel, Lagrangian obstruction and corank bounds.
    Analyze {
        #[command(flatten)]
        input: ComplexInput,
        /// Surfaces exhibited for the corank lower bound.
        #[arg(long, value_delimiter = ',')]
        system: Vec<String>,
    },
    /// Cut a complex open along marked surfaces and report the pieces.
    Cut {
        #[command(flatten)]
        input: ComplexInput,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Classify a surface system as a Helmholtz / weak / minimal weak cut-system.
    ClassifyCuts {
        #[command(flatten)]
        input: ComplexInput,
        #[command(flatten)]
        system: SystemArgs,
        /// Also list the subsets of size b₁ that are minimal weak cut-systems.
        #[arg(long)]
        subsets: bool,
    },
    /// Linking matrix (writhes on the diagonal).
    LinkLk {
        #[command(flatten)]
        link: LinkInput,
    },
    /// Seifert circles and the genus of the Seifert surface.
    LinkSeifert {
        #[command(flatten)]
        link: LinkInput,
    },
    /// Helmholtz and weakly-Helmholtz verdicts for the link complement.
    LinkVerdict {
        #[command(flatten)]
        link: LinkInput,
        /// Longest Milnor index sequence searched.
        #[arg(long, default_value_t = DEFAULT_SEARCH_LENGTH)]
        length: usize,
    },
    /// Milnor μ and μ̄ invariants.
    Milnor {
        #[command(flatten)]
        link: LinkInput,
        /// 1-based component indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
        /// Magnus truncation degree; defaults to one more than the index count.
        #[arg(long)]
        q: Option<usize>,
    },
    /// List built-in complexes and diagrams.
    PresetList {
        /// Write every preset to this directory as JSON / PD files.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_complex(input: &ComplexInput) -> Result<MarkedComplex, Error> {
    match (&input.preset, &input.input, &input.lattice) {
        (Some(name), _, _) => preset(name),
        (_, Some(path), _) => parse_complex_json(&read(path)?),
        (_, _, Some(path)) => lattice_link_complement(&parse_lattice_paths(&read(path)?)?, input.margin),
        _ => Err(Error::Parse("one of --preset, --input or --lattice is required".into())),
    }
}

fn load_link(input: &LinkInput) -> Result<LinkDiagram, Error> {
    match (&input.pd, &input.link) {
        (Some(path), _) => parse_pd(&read(path)?),
        (_, Some(name)) => link_preset(name),
        _ => Err(Error::Parse("one of --pd or --link is required".into())),
    }
}

fn f_vector(k: &helmtop::SimplicialComplex) -> Vec<usize> {
    (0..4).map(|n| k.count(n)).collect()
}

fn homology_json(k: &helmtop::SimplicialComplex) -> Value {
    let h = SimplicialHomology::new(k);
    let groups = h.groups();
    json!({
        "f_vector": f_vector(k),
        "euler_characteristic": k.euler_characteristic(),
        "betti": h.betti(),
        "groups": groups,
        "display": groups.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    })
}

fn analyze(m: &MarkedComplex, system: &[String]) -> Result<Value, Error> {
    let k = &m.complex;
    let ctx = DomainContext::new(k)?;
    let report = ctx.report()?;
    let kernel = ctx.kernel()?;
    let lagrangian = ctx.lagrangian_obstruction()?;
    let exhibited = if system.is_empty() { None } else { Some(system) };
    Ok(json!({
        "report": report,
        "all_checks_pass": report.all_checks_pass(),
        "simplicity": ctx.is_simple(),
        "boundary_kernel": {
            "rank": kernel.rank,
            "cycles": kernel.cycles.iter().map(|c| chain_record(k, 1, c)).collect::<Vec<_>>(),
        },
        "lagrangian": lagrangian.to_json(k),
        "not_weakly_helmholtz": lagrangian.not_weakly_helmholtz(),
        "corank": corank_bounds(m, exhibited)?,
    }))
}

fn cut(m: &MarkedComplex, s: &SystemArgs) -> Result<Value, Error> {
    let result = cut_open(m, &s.system, s.depth)?;
    let pieces: Vec<Value> = result
        .components
        .iter()
        .map(|c| json!({ "f_vector": f_vector(c), "betti": SimplicialHomology::new(c).betti() }))
        .collect();
    Ok(json!({
        "system": s.system,
        "depth": s.depth,
        "component_count": pieces.len(),
        "components": pieces,
    }))
}

fn classify(m: &MarkedComplex, s: &SystemArgs, subsets: bool) -> Result<Value, Error> {
    let verdict = classify_at_depth(m, &s.system, s.depth)?;
    let mut out = serde_json::to_value(&verdict).expect("serializable");
    if subsets {
        out["minimal_subsystems"] = json!(minimal_subsystems(m, &s.system)?);
    }
    Ok(out)
}

fn link_lk(d: &LinkDiagram) -> Value {
    let p = wirtinger(d);
    json!({
        "components": d.component_count(),
        "crossings": d.crossing_count(),
        "signs": d.crossings.iter().map(|c| c.sign).collect::<Vec<_>>(),
        "linking_matrix": d.linking_matrix(),
        "writhes": (0..d.component_count()).map(|j| d.writhe(j)).collect::<Vec<_>>(),
        "group_abelianization": abelianize(&p).to_string(),
        "longitudes": (0..d.component_count())
            .map(|j| longitude_word(d, j).map(|w| p.format_word(&w)).unwrap_or_default())
            .collect::<Vec<_>>(),
    })
}

fn milnor(d: &LinkDiagram, indices: &[usize], q: Option<usize>) -> Result<Value, Error> {
    let q = q.unwrap_or(indices.len() + 1);
    let ctx = MilnorContext::new(d, q)?;
    let v = ctx.mubar(indices)?;
    let mut out = v.to_json();
    out["q"] = json!(q);
    out["residue"] = int_value(&v.residue);
    Ok(out)
}

fn preset_list(export: Option<&Path>) -> Result<Value, Error> {
    if let Some(dir) = export {
        std::fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("cannot create {}: {e}", dir.display())))?;
        let write = |name: String, text: &str| {
            let path = dir.join(name);
            std::fs::write(&path, text).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
        };
        for name in PRESETS {
            write(format!("{name}.json"), &to_complex_json(&preset(name)?))?;
        }
        for (name, text) in LINK_PRESETS {
            write(format!("{name}.pd"), text)?;
        }
    }
    let complexes: Vec<Value> = PRESETS
        .iter()
        .map(|name| {
            let m = preset(name)?;
            Ok(json!({ "name": name, "f_vector": f_vector(&m.complex), "marked": m.marked.keys().collect::<Vec<_>>() }))
        })
        .collect::<Result<_, Error>>()?;
    let links: Vec<Value> = LINK_PRESETS
        .iter()
        .map(|(name, _)| {
            let d = link_preset(name)?;
            Ok(json!({ "name": name, "components": d.component_count(), "crossings": d.crossing_count() }))
        })
        .collect::<Result<_, Error>>()?;
    Ok(json!({ "complexes": complexes, "links": links }))
}

fn run(cli: &Cli) -> Result<Value, Error> {
    match &cli.command {
        Command::Homology { input } => Ok(homology_json(&load_complex(input)?.complex)),
        Command::Analyze { input, system } => analyze(&load_complex(input)?, system),
        Command::Cut { input, system } => cut(&load_complex(input)?, system),
        Command::ClassifyCuts { input, system, subsets } => classify(&load_complex(input)?, system, *subsets),
        Command::LinkLk { link } => Ok(link_lk(&load_link(link)?)),
        Command::LinkSeifert { link } => Ok(serde_json::to_value(seifert_data(&load_link(link)?)).expect("serializable")),
        Command::LinkVerdict { link, length } => {
            Ok(serde_json::to_value(link_helmholtz_verdict(&load_link(link)?, *length)?).expect("serializable"))
        }
        Command::Milnor { link, indices, q } => milnor(&load_link(link)?, indices, *q),
        Command::PresetList { export } => preset_list(export.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 1 } else { 2 })
        }
    }
}
