use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cominuscule::classify::COMINUSCULE_TABLE;
use cominuscule::verify::{sweep_with, Rules};
use cominuscule::{
    flag_hasse, hasse, highest_component, parse_spec_with, render_diagram, render_spec, run_pipeline, CominusculeId,
    Error, Format, GradedRootSystem, Numbering, Pipeline, Root, RootSystem,
};

/// Associated cominuscule subvarieties of flag varieties.
///
/// Diagrams are written `<type>(x<type>)*:<decoration>`, e.g. `B4:oxoo` or
/// `A2xA1:xox`, with `x` for a crossed node and `o` for an uncrossed node in
/// Bourbaki order.
#[derive(Parser, Debug)]
#[command(name = "cominuscule", version)]
struct Cli {
    /// Drop components without a crossed node instead of rejecting them.
    #[arg(long, global = true)]
    allow_point_factors: bool,

    /// Node numbering used in decorations of exceptional types.
    #[arg(long, global = true, value_enum, default_value_t = NumberingArg::Bourbaki)]
    numbering: NumberingArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NumberingArg {
    Bourbaki,
    Carter,
}

impl From<NumberingArg> for Numbering {
    fn from(n: NumberingArg) -> Numbering {
        match n {
            NumberingArg::Bourbaki => Numbering::Bourbaki,
            NumberingArg::Carter => Numbering::Carter,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the associated cominuscule subvariety of a flag variety.
    Compute {
        spec: String,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Emit a Hasse diagram.
    Hasse {
        spec: String,
        #[command(flatten)]
        which: HasseKind,
        #[arg(long, default_value = "text", value_parser = ["dot", "json", "text"])]
        format: String,
        /// Write to a file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check the pipeline against the rule tables on every decoration.
    Sweep {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(2..))]
        max_rank: u32,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Corrupt one rule so that the sweep must fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Print the table of irreducible cominuscule varieties.
    Table,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct HasseKind {
    /// The Hasse diagram of the root system (default).
    #[arg(long)]
    full: bool,
    /// The flag-variety diagram: edges of crossed labels erased.
    #[arg(long)]
    flag: bool,
    /// Only the component of the flag diagram containing the highest root.
    #[arg(long = "box")]
    boxed: bool,
}

#[derive(Serialize)]
struct ComputeReport {
    input: String,
    input_diagram: String,
    subsystem: String,
    subsystem_diagram: String,
    components: Vec<CominusculeId>,
    box_size: usize,
    embedding: Vec<Root>,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(report)) => {
            print!("{report}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let numbering = Numbering::from(cli.numbering);
    match cli.command {
        Command::Compute { spec, json } => {
            let d = parse_spec_with(&spec, numbering)?;
            let rs = Arc::new(RootSystem::new(&d.dtype));
            let p = run_pipeline(rs, d.dec.clone(), cli.allow_point_factors)?;
            let report = ComputeReport {
                input: render_spec(&d.dtype, &d.dec),
                input_diagram: render_diagram(&d.dtype, &d.dec),
                subsystem: render_spec(&p.diagram.dtype, &p.diagram.dec),
                subsystem_diagram: render_diagram(&p.diagram.dtype, &p.diagram.dec),
                components: p.ids.clone(),
                box_size: p.graded.maximal_indices().len(),
                embedding: p.diagram.node_embedding.clone(),
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print_compute(&report, &p);
            }
        }
        Command::Hasse {
            spec,
            which,
            format,
            output,
        } => {
            let format: Format = format.parse()?;
            let d = parse_spec_with(&spec, numbering)?;
            let rs = Arc::new(RootSystem::new(&d.dtype));
            let diagram = if which.flag || which.boxed {
                let g = GradedRootSystem::build(rs, d.dec, cli.allow_point_factors)?;
                let h = flag_hasse(&g);
                if which.boxed {
                    let keep: Vec<Root> = highest_component(&h, &g).concat();
                    h.restrict(&keep)
                } else {
                    h
                }
            } else {
                hasse(&rs)
            };
            let mut text = diagram.export(format);
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match output {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
        Command::Sweep {
            max_rank,
            json,
            inject_fault,
        } => {
            let report = sweep_with(max_rank as usize, Rules { inject_fault });
            let text = if json {
                format!("{}\n", report.to_json())
            } else {
                report.to_text()
            };
            if !report.is_success() {
                return Err(Failure::Verification(text));
            }
            print!("{text}");
        }
        Command::Table => {
            println!("{:<5} {:<10} {:<10} description", "type", "crossed", "dimension");
            for (t, node, dim, desc) in COMINUSCULE_TABLE {
                println!("{t:<5} {node:<10} {dim:<10} {desc}");
            }
        }
    }
    Ok(())
}

fn print_compute(r: &ComputeReport, p: &Pipeline) {
    let g = &p.graded;
    println!("input:       {}", r.input);
    println!("             {}", r.input_diagram);
    let dropped: Vec<String> = (0..g.root_system().dtype().components().len())
        .filter(|&k| !g.is_active(k))
        .map(|k| (k + 1).to_string())
        .collect();
    if !dropped.is_empty() {
        println!("dropped:     point factors {}", dropped.join(", "));
    }
    println!("subsystem:   {}", r.subsystem);
    println!("             {}", r.subsystem_diagram);
    for id in &r.components {
        println!("cominuscule: {}", id.summary());
    }
    println!("box size:    {}", r.box_size);
    println!("embedding:");
    let offsets = p.diagram.dtype.offsets();
    for (i, root) in r.embedding.iter().enumerate() {
        let k = offsets.iter().rposition(|&o| o <= i).unwrap_or(0);
        println!("  component {} node {} -> {root}", k + 1, i - offsets[k] + 1);
    }
}
