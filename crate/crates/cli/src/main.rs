use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pairgeom::catalog;
use pairgeom::commands;
use pairgeom::document::ModelBundle;
use pairgeom::report::Report;
use pairgeom::Error;

#[derive(Parser)]
#[command(name = "pairgeom", version, about = "Exact verifier for contact pairs, lcs forms and Vaisman structures on Lie algebras")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print nothing; only the exit status is meaningful
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A model file, or the name of a built-in model.
#[derive(clap::Args)]
struct ModelArg {
    model: String,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in models
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check the structure equations and every expectation in a model
    Verify(ModelArg),
    /// Check that (alpha, beta) is a contact pair of type (h, k)
    ContactPair {
        #[command(flatten)]
        m: ModelArg,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Solve for the Reeb vector fields of a pair
    Reeb {
        #[command(flatten)]
        m: ModelArg,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Build the lcs form dα + α ∧ β (or dα + c α ∧ β for a generalized pair)
    ToLcs {
        #[command(flatten)]
        m: ModelArg,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// A rational value of c, or `formal`
        #[arg(long)]
        c: Option<String>,
        /// Write the model with the resulting forms added as `lcs_omega` and `lcs_theta`
        #[arg(long)]
        output_model: Option<PathBuf>,
    },
    /// Build a contact pair from an lcs form and an infinitesimal automorphism
    FromLcs {
        #[command(flatten)]
        m: ModelArg,
        #[arg(long)]
        omega: String,
        /// `e3` or a comma-separated coordinate list
        #[arg(long)]
        x: String,
    },
    /// Check that a 2-form is lcs and compute its Lee form
    Lcs {
        #[command(flatten)]
        m: ModelArg,
        #[arg(long)]
        omega: String,
    },
    /// Nijenhuis tensor of an almost complex structure
    Nijenhuis {
        #[command(flatten)]
        m: ModelArg,
        #[arg(long)]
        j: String,
    },
    /// Normality of a metric contact pair
    Normal {
        #[command(flatten)]
        m: ModelArg,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        j: String,
        #[arg(long)]
        g: String,
    },
    /// Vaisman test for a Hermitian structure
    Vaisman {
        #[command(flatten)]
        m: ModelArg,
        #[arg(long)]
        j: String,
        #[arg(long)]
        g: String,
    },
    /// Check a symplectic pair in dimension 4
    SymplecticPair {
        #[command(flatten)]
        m: ModelArg,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
    },
    /// Check a Kähler pair in dimension 4
    KahlerPair {
        #[command(flatten)]
        m: ModelArg,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
        #[arg(long)]
        j: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List built-in models
    List,
    /// Print a built-in model as a JSON document
    Show {
        name: String,
        /// Write the document to a file instead of printing it
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(arg: &ModelArg) -> Result<ModelBundle, Failure> {
    let path = Path::new(&arg.model);
    if !path.exists() && catalog::list_models().contains(&arg.model.as_str()) {
        return Ok(catalog::load_model(&arg.model)?);
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", arg.model)))?;
    ModelBundle::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", arg.model)))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

enum Outcome {
    Report(Report),
    Printed(String),
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let r = match &cli.command {
        Command::Catalog { action } => return catalog_action(action, cli.format),
        Command::Verify(m) => commands::verify(&load(m)?),
        Command::ContactPair { m, alpha, beta, h, k } => commands::contact_pair(&load(m)?, alpha, beta, *h, *k)?,
        Command::Reeb { m, alpha, beta } => commands::reeb(&load(m)?, alpha, beta)?,
        Command::ToLcs { m, alpha, beta, c, output_model } => {
            let b = load(m)?;
            let c = c.as_deref().map(commands::parse_c).transpose()?;
            let r = commands::to_lcs(&b, alpha, beta, c)?;
            if let Some(path) = output_model {
                let (Some(omega), Some(theta)) =
                    (commands::report_form(&r, "omega", b.dim()), commands::report_form(&r, "theta", b.dim()))
                else {
                    return Err(Failure::Input(format!(
                        "{}: no lcs form to write (use a numeric c)",
                        path.display()
                    )));
                };
                let out = b.with_form("lcs_omega", omega).with_form("lcs_theta", theta);
                write_file(path, &out.to_document().to_json())?;
            }
            r
        }
        Command::FromLcs { m, omega, x } => commands::from_lcs(&load(m)?, omega, x)?,
        Command::Lcs { m, omega } => commands::lcs(&load(m)?, omega)?,
        Command::Nijenhuis { m, j } => commands::nijenhuis(&load(m)?, j)?,
        Command::Normal { m, alpha, beta, j, g } => commands::normal(&load(m)?, alpha, beta, j, g)?,
        Command::Vaisman { m, j, g } => commands::vaisman(&load(m)?, j, g)?,
        Command::SymplecticPair { m, w1, w2 } => commands::symplectic_pair(&load(m)?, w1, w2)?,
        Command::KahlerPair { m, w1, w2, j } => commands::kahler_pair(&load(m)?, w1, w2, j)?,
    };
    Ok(Outcome::Report(r))
}

fn catalog_action(action: &CatalogAction, format: Format) -> Result<Outcome, Failure> {
    match action {
        CatalogAction::List => {
            let models = catalog::all_models();
            let text = match format {
                Format::Json => {
                    let list: Vec<_> = models
                        .iter()
                        .map(|b| serde_json::json!({ "name": b.name, "dimension": b.dim(), "description": b.description }))
                        .collect();
                    serde_json::to_string_pretty(&list).expect("catalog serializes")
                }
                Format::Text => models
                    .iter()
                    .map(|b| {
                        format!(
                            "{:<10} {}",
                            b.name.as_deref().unwrap_or(""),
                            b.description.as_deref().unwrap_or("")
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            Ok(Outcome::Printed(text))
        }
        CatalogAction::Show { name, export } => {
            let doc = catalog::load_model(name)?.to_document().to_json();
            match export {
                Some(path) => {
                    write_file(path, &doc)?;
                    Ok(Outcome::Printed(format!("wrote {}", path.display())))
                }
                None => Ok(Outcome::Printed(doc)),
            }
        }
    }
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Printed(text)) => {
            if !cli.quiet {
                emit(&format!("{text}\n"));
            }
            ExitCode::SUCCESS
        }
        Ok(Outcome::Report(r)) => {
            if !cli.quiet {
                match cli.format {
                    Format::Json => emit(&format!("{}\n", r.to_json())),
                    Format::Text => emit(&r.to_text()),
                }
            }
            if r.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
