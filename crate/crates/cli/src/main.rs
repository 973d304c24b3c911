//! `modlie`: build the example algebras, decompose metabelian algebras under
//! a non-singular derivation, and run the property suites.
//!
//! Exit status: 0 on success, 1 when a check that must hold fails, 2 on
//! invalid input or an unmet hypothesis.

use clap::{Parser, Subcommand};
use modlie::deriv::Derivation;
use modlie::pcyclic::xp_decompose;
use modlie::serial;
use modlie::suites::{run_suite, SuiteParams};
use modlie::zoo::{self, Family};
use modlie::{make_field, Error, FiniteField, LieAlg, Scalar};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "modlie", version, about = "Lie algebras over finite fields with non-singular derivations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an example algebra, write it with its derivation, print a certificate.
    Zoo {
        /// mattarei, maxclass, heis2p or heisp3
        family: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Parameters as field-element indices (all of a, b for maxclass and
        /// heis2p; a, b, c, d for heisp3).
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        c: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        /// Directory for the algebra and derivation files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Split L' into (x,p)-cyclic summands.
    Decompose {
        algebra: PathBuf,
        derivation: PathBuf,
        /// Index of the basis vector used as x (default: first one outside L').
        #[arg(long)]
        x: Option<usize>,
        /// Write the summands as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
    },
}

/// Failures that must not happen on valid input exit with 1.
fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Invariant(_) => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn fail(e: Error) -> ExitCode {
    let key = match e {
        Error::Hypothesis(_) => "hypothesis",
        Error::Invariant(_) => "invariant",
        _ => "error",
    };
    println!("{key}={e}");
    exit_for(&e)
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn params(f: &FiniteField, vals: &[Option<u64>]) -> Result<Option<Vec<Scalar>>, Error> {
    if vals.iter().all(Option::is_none) {
        return Ok(None);
    }
    if vals.iter().any(Option::is_none) {
        return Err(Error::Hypothesis(format!("give all {} parameters or none", vals.len())));
    }
    vals.iter().map(|v| f.element(v.unwrap())).collect::<Result<Vec<_>, _>>().map(Some)
}

fn cmd_zoo(family: &str, p: u64, k: usize, abcd: [Option<u64>; 4], out: &Path) -> ExitCode {
    let family: Family = match family.parse() {
        Ok(fam) => fam,
        Err(e) => return fail(e),
    };
    let f = match make_field(p, k) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let built = match family {
        Family::Mattarei => {
            if abcd.iter().any(Option::is_some) {
                Err(Error::Hypothesis("mattarei takes no parameters".into()))
            } else {
                zoo::mattarei(&f)
            }
        }
        Family::MaxClass => params(&f, &abcd[..2]).and_then(|v| zoo::max_class_example(&f, v.map(|v| (v[0], v[1])))),
        Family::Heis2p => params(&f, &abcd[..2]).and_then(|v| zoo::heisenberg_2p(&f, v.map(|v| (v[0], v[1])))),
        Family::HeisP3 => params(&f, &abcd).and_then(|v| zoo::heisenberg_p3(&f, v.map(|v| [v[0], v[1], v[2], v[3]]))),
    };
    let ex = match built {
        Ok(ex) => ex,
        Err(e) => {
            // K exists even when no admissible degrees do
            if family == Family::MaxClass {
                if let Ok(rep) = zoo::max_class_module(&f) {
                    println!("dim_K={}", rep.algebra().dim());
                }
            }
            return fail(e);
        }
    };
    let stem = format!("{}_p{}_k{}", family.name(), p, k);
    let alg_path = out.join(format!("{stem}.algebra.json"));
    let der_path = out.join(format!("{stem}.derivation.json"));
    let written = write(&alg_path, &serial::algebra_to_json(&ex.algebra))
        .and_then(|_| write(&der_path, &serial::derivation_to_json(&ex.algebra, &ex.delta)));
    if let Err(e) = written {
        return fail(e);
    }
    let cert = ex.check();
    println!("algebra_file={}", alg_path.display());
    println!("derivation_file={}", der_path.display());
    let l = &ex.algebra;
    println!(
        "summary=derived_length={} {} {}",
        l.derived_length().map_or("none".into(), |n| n.to_string()),
        if l.is_nilpotent() { "nilpotent" } else { "nonnilpotent" },
        if ex.delta.is_nonsingular() { "nonsingular" } else { "singular" }
    );
    println!("{cert}");
    if cert.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load(algebra: &Path, derivation: &Path) -> Result<(LieAlg, Derivation), Error> {
    let l = serial::algebra_from_json(&read(algebra)?)?;
    let d = serial::derivation_from_json(&l, &read(derivation)?)?;
    Ok((l, d))
}

fn cmd_decompose(algebra: &Path, derivation: &Path, x: Option<usize>, out: Option<&Path>) -> ExitCode {
    let (l, d) = match load(algebra, derivation) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let n = l.dim();
    let xi = match x {
        Some(i) if i < n => i,
        Some(i) => return fail(Error::Dimension(format!("x index {i} out of range for dimension {n}"))),
        None => match l.derived_algebra().complement_indices().first() {
            Some(&i) => i,
            None => return fail(Error::Hypothesis("L = L', no candidate for x".into())),
        },
    };
    let dec = match xp_decompose(&l, &modlie::linalg::unit(n, xi), &d) {
        Ok(dec) => dec,
        Err(e) => return fail(e),
    };
    let f = &dec.field;
    println!("field=GF({}^{})", f.characteristic(), f.degree());
    println!("x={}", l.label(xi));
    println!("dim_derived={}", dec.derived.dim());
    println!("summands={}", dec.summands.len());
    for (i, s) in dec.summands.iter().enumerate() {
        let gen: Vec<String> = s.generator.iter().map(|&c| f.fmt_scalar(c)).collect();
        println!(
            "summand_{i}=dim {} r {} eigenvalue {} minpoly {} generator [{}]",
            s.dim(),
            s.r,
            s.eigenvalue.map_or("-".into(), |a| f.fmt_scalar(a)),
            s.minpoly,
            gen.join(", ")
        );
    }
    if let Some(path) = out {
        let doc = serde_json::json!({
            "field": f.spec(),
            "summands": dec.summands.iter().map(serial::summand_doc).collect::<Vec<_>>(),
        });
        if let Err(e) = write(path, &serde_json::to_string_pretty(&doc).expect("serializable")) {
            return fail(e);
        }
    }
    match dec.direct_sum_certificate() {
        Ok(()) => {
            println!("certificate=pass");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("certificate=fail");
            fail(e)
        }
    }
}

fn cmd_verify(suite: &str, params: SuiteParams) -> ExitCode {
    match run_suite(suite, &params) {
        Ok(r) => {
            println!("{r}");
            if r.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Zoo { family, p, k, a, b, c, d, out } => cmd_zoo(&family, p, k, [a, b, c, d], &out),
        Command::Decompose { algebra, derivation, x, out } => cmd_decompose(&algebra, &derivation, x, out.as_deref()),
        Command::Verify { suite, seed, p, trials, n, s } => cmd_verify(&suite, SuiteParams { seed, p, trials, n, s }),
    }
}
