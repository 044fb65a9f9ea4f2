use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use stabcert::cert::Certificate;
use stabcert::demazure::verify_demazure_algebra;
use stabcert::kclass::verify_charge_transforms;
use stabcert::schubert::{double_schubert, schubert_poly};
use stabcert::soergel::{graph_twist_table, verify_bimodule_closure, verify_filtration_identity, verify_unitriangularity};
use stabcert::stability::{bayer_shadow_scan, derive_twist_chain, hn_split_p1, ChainOutcome, ChainStep};
use stabcert::{rational, ChargeParams, Permutation, Rational, SplitSheafP1};

/// Exact Schubert calculus and stability-condition certificates.
#[derive(Parser)]
#[command(name = "stabcert", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the (double) Schubert polynomial of a permutation.
    Schubert {
        #[arg(long)]
        n: usize,
        /// One-line notation, e.g. 2,3,1.
        #[arg(long, value_delimiter = ',', required = true)]
        w: Vec<usize>,
        #[arg(long)]
        double: bool,
    },
    #[command(subcommand)]
    Verify(Verify),
    #[command(subcommand)]
    Scan(Scan),
    #[command(subcommand)]
    Hn(Hn),
    #[command(subcommand)]
    Derive(Derive),
    #[command(subcommand)]
    Table(Table),
}

#[derive(Subcommand)]
enum Verify {
    /// Nil-Hecke relations and reduced-word independence on random inputs.
    Demazure {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Filtration identity, unitriangularity and (for n <= 3) bimodule closure.
    Soergel {
        #[arg(long)]
        n: usize,
    },
    /// Isogeny and twist transformation laws of the central charge.
    Charges {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        b: Rational,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Scan {
    /// Phase decrease under twisting by the dual polarization.
    Bayer {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        b: Rational,
        #[arg(long)]
        bound: i64,
    },
}

#[derive(Subcommand)]
enum Hn {
    /// HN filtration of a split sheaf on P1.
    P1 {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degrees: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        torsion: Vec<u64>,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        b: Rational,
    },
}

#[derive(Subcommand)]
enum Derive {
    /// Prove sigma(a_j) below sigma[j] from the Bayer and restriction relations.
    Chain {
        #[arg(long, value_delimiter = ',')]
        adegrees: Vec<u64>,
        #[arg(long = "N")]
        big_n: u64,
    },
}

#[derive(Subcommand)]
enum Table {
    /// Inversion sets, Delta_w and per-variable degrees for all of S_n.
    GraphTwists {
        #[arg(long)]
        n: usize,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

struct Output {
    json: Value,
    text: String,
    violations: usize,
}

impl Output {
    fn plain(json: Value, text: String) -> Self {
        Self { json, text, violations: 0 }
    }

    fn certificates(certs: &[&dyn CertView]) -> Self {
        let violations = certs.iter().map(|c| c.count()).sum();
        let text = certs.iter().map(|c| c.line()).collect::<Vec<_>>().join("\n");
        let json = if certs.len() == 1 { certs[0].json() } else { json!({ "certificates": certs.iter().map(|c| c.json()).collect::<Vec<_>>() }) };
        Self { json, text, violations }
    }
}

// object-safe view of a certificate
trait CertView {
    fn json(&self) -> Value;
    fn count(&self) -> usize;
    fn line(&self) -> String;
}

impl<C: Certificate> CertView for C {
    fn json(&self) -> Value {
        self.to_json()
    }

    fn count(&self) -> usize {
        self.violation_count()
    }

    fn line(&self) -> String {
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        format!("{}: {verdict} ({} violations)", self.check(), self.violation_count())
    }
}

fn run(command: Command) -> stabcert::Result<Output> {
    Ok(match command {
        Command::Schubert { n, w, double } => {
            let w = Permutation::new(w)?;
            if w.n() != n {
                return Err(stabcert::Error::RankMismatch { expected: n, found: w.n() });
            }
            let poly = if double { double_schubert(&w) } else { schubert_poly(&w) };
            Output::plain(serde_json::to_value(&poly).expect("polynomials serialize"), poly.to_string())
        }
        Command::Verify(Verify::Demazure { n, trials, seed }) => {
            eprintln!("checking Demazure relations on S_{n}, {trials} trials");
            Output::certificates(&[&verify_demazure_algebra(n, trials, seed)])
        }
        Command::Verify(Verify::Soergel { n }) => {
            eprintln!("checking filtration identity on S_{n}");
            let filtration = verify_filtration_identity(n);
            eprintln!("checking change-of-basis unitriangularity");
            let tri = verify_unitriangularity(n);
            let mut closures = Vec::new();
            if n <= 3 {
                let top = n * n.saturating_sub(1) / 2 + 1;
                for j in 0..=top {
                    eprintln!("checking closure of Gamma_{j}");
                    closures.push(verify_bimodule_closure(n, j));
                }
            }
            let mut certs: Vec<&dyn CertView> = vec![&filtration, &tri];
            certs.extend(closures.iter().map(|c| c as &dyn CertView));
            Output::certificates(&certs)
        }
        Command::Verify(Verify::Charges { n, m, a, b, trials, seed }) => {
            eprintln!("checking charge transformation laws, n = {n}, m = {m}");
            Output::certificates(&[&verify_charge_transforms(&ChargeParams::new(a, b, n)?, m, trials, seed)?])
        }
        Command::Scan(Scan::Bayer { n, a, b, bound }) => {
            eprintln!("scanning box of size {bound} for n = {n}");
            let cert = bayer_shadow_scan(&ChargeParams::new(a, b, n)?, bound)?;
            let mut out = Output::certificates(&[&cert]);
            out.text += &format!(
                "\nscanned {}, skipped {}, equalities {}, exploratory violations {}{}",
                cert.scanned,
                cert.skipped,
                cert.equalities,
                cert.exploratory_violations,
                if cert.rigorous { "" } else { " (not asserted)" }
            );
            out
        }
        Command::Hn(Hn::P1 { degrees, torsion, a, b }) => {
            let sheaf = SplitSheafP1::new(degrees, torsion)?;
            let factors = hn_split_p1(&sheaf, &ChargeParams::new(a, b, 1)?)?;
            let text = factors
                .iter()
                .map(|f| {
                    let mut parts: Vec<String> = f.factor.bundle_degrees.iter().map(|d| format!("O({d})")).collect();
                    parts.extend(f.factor.torsion_lengths.iter().map(|l| format!("T({l})")));
                    format!("{}  Z = {}", parts.join(" + "), f.phase.charge())
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output::plain(serde_json::to_value(&factors).expect("factors serialize"), text)
        }
        Command::Derive(Derive::Chain { adegrees, big_n }) => {
            let report = derive_twist_chain(&adegrees, big_n)?;
            let text = report
                .outcomes
                .iter()
                .map(|o| match o {
                    ChainOutcome::Proved(c) => {
                        let bayer = c.steps.iter().filter(|s| **s == ChainStep::Bayer).count();
                        format!("j={}: proved with {bayer} Bayer and {} restriction steps", c.j, c.steps.len() - bayer)
                    }
                    ChainOutcome::Refused { j, obstruction, .. } => format!("j={j}: refused, {obstruction}"),
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output { json: report.to_json(), text, violations: report.violation_count() }
        }
        Command::Table(Table::GraphTwists { n }) => {
            let table = graph_twist_table(n);
            let text = table
                .iter()
                .map(|e| {
                    let inv: Vec<String> = e.inversion_set.iter().map(|(i, j)| format!("({i},{j})")).collect();
                    format!("{}  inv {{{}}}  degrees {:?}  {}", e.w, inv.join(","), e.degrees, e.delta_w)
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output::plain(serde_json::to_value(&table).expect("table serializes"), text)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let body = if cli.json { serde_json::to_string_pretty(&out.json).expect("values serialize") } else { out.text };
            // a closed pipe downstream is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.violations == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
