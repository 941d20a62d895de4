//! Command-line front end: analyze generator documents, export the built-in
//! families, describe sphere ladders, run eligibility reports, and execute
//! the verifiable-claims suite.
//!
//! Exit codes: 0 success, 2 malformed input document, 3 enumeration cap
//! exceeded, 4 claim failure, 1 any other error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fixity_core::claims::run_claims;
use fixity_core::error::Error;
use fixity_core::group::DEFAULT_ENUMERATION_CAP;
use fixity_core::report::{
    analysis_document_from_json, build_analysis, default_stage, export_representation,
    import_representation, rep_document_from_json, to_json_string, AnalysisDocument,
    PropagationSummary,
};
use fixity_core::stiefel::{
    bott_order, chi_tor_composite, poincare_series, propagation_report, sphere_dims,
};
use fixity_core::{families, Representation, Result};

#[derive(Parser)]
#[command(
    name = "fixity",
    version,
    about = "Exact fixity, rank, and sphere-product eligibility analysis for finite unitary matrix groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a generator document: fixity, rank inventory,
    /// isotropy tower, classification crosscheck, and eligibility.
    Analyze {
        /// Generator document (JSON).
        path: PathBuf,
        /// Stage to evaluate; defaults to k = n - fixity - 1.
        #[arg(long)]
        k: Option<u32>,
        /// Recompute every fixed dimension through kernel ranks first.
        #[arg(long)]
        paranoid: bool,
        /// Emit the analysis document as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Element enumeration cap.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Write the generator document for a built-in family.
    Family {
        #[arg(long, value_enum)]
        name: FamilyName,
        /// The odd prime parameter.
        #[arg(long)]
        p: u64,
        /// Order exponent for the metacyclic and exceptional families.
        #[arg(long)]
        n: Option<u32>,
        /// Twist parameter for excep3: 1 or a quadratic nonresidue mod p.
        #[arg(long)]
        lambda: Option<u64>,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Describe the sphere ladder of U(n)/U(k).
    Stiefel {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Eligibility report for a generator document at one stage.
    Propagate {
        /// Generator document (JSON).
        path: PathBuf,
        #[arg(long)]
        k: u32,
        /// Element enumeration cap.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Run the verifiable-claims suite.
    Claims {
        /// Only run claims whose id contains this substring.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    /// Extraspecial exponent-p group of order p^3 in degree p.
    Heisenberg,
    /// Metacyclic group of order p^n induced from a faithful character.
    Modular,
    /// First exceptional shape of order p^n, p >= 5, n >= 4.
    Excep2,
    /// Second exceptional shape of order p^n via bounded character search.
    Excep3,
    /// Semidirect construction of order 2p^3(p-1).
    Gp,
    /// Wreath-shaped group of order p^(p+1) with maximal fixity.
    Wreath,
}

fn build_family(
    name: FamilyName,
    p: u64,
    n: Option<u32>,
    lambda: Option<u64>,
) -> Result<Representation> {
    let need_n = |what: &str| {
        n.ok_or_else(|| Error::FamilyParameter(format!("family {what} needs --n")))
    };
    match name {
        FamilyName::Heisenberg => families::heisenberg(p),
        FamilyName::Modular => families::modular_metacyclic(p, need_n("modular")?),
        FamilyName::Excep2 => families::exceptional_family_two(p, need_n("excep2")?),
        FamilyName::Excep3 => {
            families::exceptional_family_three(p, need_n("excep3")?, lambda.unwrap_or(1))
        }
        FamilyName::Gp => families::g_p(p),
        FamilyName::Wreath => families::wreath(p),
    }
}

fn print_propagation(summary: &PropagationSummary) {
    println!(
        "stage {} [{}]: free {}, coprime {}, chi^tor {}/{}, unit class {}",
        summary.stage,
        summary.tier,
        summary.free,
        summary.coprime,
        summary.chi_tor[0],
        summary.chi_tor[1],
        summary
            .swan_unit
            .map_or_else(|| "none".to_string(), |u| u.to_string()),
    );
    println!("  target spheres: {:?}", summary.target);
    for note in &summary.notes {
        println!("  note: {note}");
    }
}

fn print_analysis(doc: &AnalysisDocument) {
    println!(
        "group order {} (degree {}, conductor {})",
        doc.group_order, doc.degree, doc.conductor
    );
    match doc.witness {
        Some(w) => println!("fixity {} (witness element {w})", doc.fixity),
        None => println!("fixity {}", doc.fixity),
    }
    println!("irreducible: {}", doc.irreducible);
    println!(
        "p-rank at p = {}: {} (subgroup counts by rank: {:?})",
        doc.rank_inventory.p, doc.rank_inventory.r_p, doc.rank_inventory.subgroup_counts
    );
    println!(
        "isotropy tower: ranks {:?}, breakpoints {:?}",
        doc.isotropy_tower.ranks, doc.isotropy_tower.breakpoints
    );
    match &doc.crosscheck {
        Some(c) => println!(
            "crosscheck at p = {}: rank matches {}, cyclic center {}, abelian maximal {} -> {}",
            c.p,
            c.rank_matches,
            c.cyclic_center,
            c.abelian_maximal,
            if c.all_pass { "pass" } else { "fail" }
        ),
        None => println!("crosscheck: not applicable"),
    }
    for summary in &doc.propagation {
        print_propagation(summary);
    }
    for note in &doc.notes {
        println!("note: {note}");
    }
}

fn cmd_analyze(path: &PathBuf, k: Option<u32>, paranoid: bool, json: bool, cap: usize) -> Result<()> {
    let text = fs::read_to_string(path)?;
    let doc = rep_document_from_json(&text)?;
    let rep = import_representation(&doc, cap)?;
    let stage = match k {
        Some(k) => k,
        None => default_stage(rep.degree(), rep.fixity()?.fixity),
    };
    let analysis = build_analysis(&rep, &[stage], paranoid)?;
    if json {
        // Belt and braces: the emitted document must parse back to itself.
        let emitted = to_json_string(&analysis)?;
        let parsed = analysis_document_from_json(&emitted)?;
        if parsed != analysis {
            return Err(Error::Schema("analysis document failed round-trip".into()));
        }
        print!("{emitted}");
    } else {
        print_analysis(&analysis);
    }
    Ok(())
}

fn cmd_family(
    name: FamilyName,
    p: u64,
    n: Option<u32>,
    lambda: Option<u64>,
    out: Option<&PathBuf>,
) -> Result<()> {
    let rep = build_family(name, p, n, lambda)?;
    let doc = export_representation(&rep);
    let text = to_json_string(&doc)?;
    match out {
        Some(path) => fs::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_stiefel(n: u32, k: u32) -> Result<()> {
    let dims = sphere_dims(n, k)?;
    let series = poincare_series(n, k)?;
    println!("U({n})/U({k}): sphere dimensions {dims:?}");
    println!("poincare series: {series}");
    println!(
        "total rank {}, top degree {}",
        series.eval_at_one(),
        series.degree()
    );
    println!("bundle-extension obstruction order n! = {}", bott_order(n)?);
    if k >= 1 && n >= 2 {
        println!(
            "chi^tor of the composite stage collapse: {}",
            chi_tor_composite(n, k)?
        );
    }
    Ok(())
}

fn cmd_propagate(path: &PathBuf, k: u32, cap: usize) -> Result<()> {
    let text = fs::read_to_string(path)?;
    let doc = rep_document_from_json(&text)?;
    let rep = import_representation(&doc, cap)?;
    let report = propagation_report(&rep, k)?;
    println!(
        "group order {}, degree {}, stage {}",
        report.group_order, report.degree, report.stage
    );
    print_propagation(&PropagationSummary::from_report(&report));
    Ok(())
}

fn cmd_claims(filter: Option<&str>) -> Result<bool> {
    let outcomes = run_claims(filter);
    if outcomes.is_empty() {
        println!(
            "no claims matched filter '{}'",
            filter.unwrap_or_default()
        );
        return Ok(true);
    }
    let mut passed = 0usize;
    for outcome in &outcomes {
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{verdict}] {} ({} ms)", outcome.id, outcome.millis);
        println!("       claim: {}", outcome.statement);
        println!("       check: {}", outcome.detail);
        if outcome.passed {
            passed += 1;
        }
    }
    println!("{passed} passed, {} failed", outcomes.len() - passed);
    Ok(passed == outcomes.len())
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Schema(_) | Error::Json(_) => 2,
        Error::CapExceeded { .. } => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze {
            path,
            k,
            paranoid,
            json,
            cap,
        } => cmd_analyze(&path, k, paranoid, json, cap).map(|()| 0),
        Command::Family {
            name,
            p,
            n,
            lambda,
            out,
        } => cmd_family(name, p, n, lambda, out.as_ref()).map(|()| 0),
        Command::Stiefel { n, k } => cmd_stiefel(n, k).map(|()| 0),
        Command::Propagate { path, k, cap } => cmd_propagate(&path, k, cap).map(|()| 0),
        Command::Claims { filter } => {
            cmd_claims(filter.as_deref()).map(|ok| if ok { 0 } else { 4 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
