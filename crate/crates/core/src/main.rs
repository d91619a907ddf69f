use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use equicat::functors::{check_igspace, find_natural_iso, IGSpaceFin};
use equicat::kan::{extend, internal_smash, Extension};
use equicat::schema::{self, BundleDoc, Document, Kind, LoadError};
use equicat::site::SiteCatalog;
use equicat::Error;

#[derive(Parser)]
#[command(name = "equicat", version, about = "Exact checks for finite equivariant indexing categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate definition files.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Run the verification suites named in a configuration file.
    Suite {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Overrides the seed in the configuration.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Extend an I-space to one group, or smash two extensions.
    Kan {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long, required_unless_present = "smash")]
        functor: Option<PathBuf>,
        #[arg(long)]
        group: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        smash: Option<Vec<PathBuf>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Self { code: e.exit_code(), message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { paths } => Ok(validate(&paths)),
        Command::Suite { config, format, seed } => suite(&config, format, seed),
        Command::Kan { catalog, functor, group, smash } => kan(&catalog, functor.as_deref(), &group, smash.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn validate(paths: &[PathBuf]) -> u8 {
    let mut worst = 0;
    for path in paths {
        let code = match validate_one(path) {
            Ok(summary) => {
                println!("ok {}: {summary}", path.display());
                0
            }
            Err(f) => {
                println!("FAIL {}", f.message);
                f.code
            }
        };
        worst = worst.max(code);
    }
    worst
}

fn validate_one(path: &Path) -> Result<String, Failure> {
    let invalid = |e: Error| Failure::from(LoadError::Invalid { path: path.display().to_string(), source: e });
    match schema::read_document(path)? {
        Document::Catalog(doc) => {
            let c = doc.build().map_err(invalid)?;
            let reps: usize = (0..c.groups().len()).map(|g| c.reps(g).len()).sum();
            Ok(format!("catalog with {} groups, {} homomorphisms, {reps} representations", c.groups().len(), c.homs().len()))
        }
        Document::GSets(doc) => {
            let g = doc.build().map_err(invalid)?;
            Ok(format!("{} pointed G-sets", g.sets.len()))
        }
        Document::ISpace(doc) => {
            let x = doc.build().map_err(invalid)?;
            Ok(format!("I-space over {} up to dimension {}", x.group().name(), x.dim_cap()))
        }
        Document::Bundle(doc) => {
            let a = doc.build().map_err(invalid)?;
            let report = check_igspace(&a);
            if !report.all_passed() {
                return Err(Failure { code: 1, message: format!("{}\n{}", path.display(), report.to_text()) });
            }
            Ok(format!("functor over {} on {} representations", a.group().name(), a.reps().len()))
        }
        Document::Suite(doc) => {
            let referenced = |e: LoadError| Failure { code: e.exit_code(), message: format!("{}: via {e}", path.display()) };
            schema::read_catalog(&schema::relative_to(path, &doc.catalog)).map_err(referenced)?;
            if let Some(g) = &doc.gsets {
                schema::read_gsets(&schema::relative_to(path, g)).map_err(referenced)?;
            }
            Ok(format!("suite configuration with {} suites", doc.suites.len()))
        }
    }
}

fn suite(config: &Path, format: Format, seed: Option<u64>) -> Result<u8, Failure> {
    let report = equicat::suite::run_config(config, seed)?;
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn computation(e: Error) -> Failure {
    let hint = match &e {
        Error::DimCapExceeded { .. } => {
            Some("lower the catalog dim_cap or supply an I-space defined up to the catalog's cap")
        }
        Error::CatalogIncomplete(_) => {
            Some("add the missing representations to the catalog, or set \"close\": true to generate sums")
        }
        Error::ExtentMismatch { .. } => Some("the I-space must live over the trivial group or the chosen group"),
        _ => None,
    };
    match hint {
        Some(h) => Failure { code: 2, message: format!("{e}\nhint: {h}") },
        None => Failure { code: 1, message: e.to_string() },
    }
}

fn extend_file(path: &Path, catalog: &Arc<SiteCatalog>, g: usize) -> Result<Extension, Failure> {
    let x = schema::read_ispace(path)?;
    extend(&x, catalog, g).map_err(computation)
}

fn certify(doc: &mut BundleDoc, against: &Path, a: &IGSpaceFin, other: &IGSpaceFin) {
    let iso = find_natural_iso(a, other);
    doc.certify(&against.display().to_string(), iso.as_deref(), a, other);
}

fn kan(catalog_path: &Path, functor: Option<&Path>, group: &str, smash: Option<&[PathBuf]>) -> Result<u8, Failure> {
    let catalog = Arc::new(schema::read_catalog(catalog_path)?);
    let g = catalog.group_index(group).ok_or_else(|| Failure {
        code: 2,
        message: format!("{}: no group named {group}", catalog_path.display()),
    })?;
    let doc = match smash {
        None => {
            let path = functor.expect("clap requires --functor without --smash");
            let e = extend_file(path, &catalog, g)?;
            BundleDoc::from_functor(&e.functor, Some(&e)).map_err(computation)?
        }
        Some(pair) => {
            let left = extend_file(&pair[0], &catalog, g)?;
            let right = extend_file(&pair[1], &catalog, g)?;
            let product = internal_smash(&left.functor, &right.functor).map_err(computation)?;
            let mut doc = BundleDoc::from_functor(&product, None).map_err(computation)?;
            certify(&mut doc, &pair[0], &product, &left.functor);
            certify(&mut doc, &pair[1], &product, &right.functor);
            if let Some(path) = functor {
                let e = extend_file(path, &catalog, g)?;
                certify(&mut doc, path, &product, &e.functor);
            }
            doc
        }
    };
    println!("{}", schema::to_json_string(Kind::Bundle, &doc));
    Ok(0)
}
