use clap::{Parser, Subcommand, ValueEnum};
use nsqft::hopf::{self, SqrtChoice};
use nsqft::mcg::{self, Side};
use nsqft::rep::Category;
use nsqft::tangle::{parse_surgery, surgery_invariant, CouponRegistry, Evaluator, DEFAULT_WIDTH_CAP};
use nsqft::{suite, Error};
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "nsqft", version, about = "Exact non-semisimple quantum invariants and mapping class group representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Exact,
    #[value(name = "exact+float")]
    ExactFloat,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump the structure tensors of the small quantum group, or of a
    /// Hopf algebra read from a file.
    Structure {
        #[arg(long, default_value_t = 3)]
        r: u32,
        /// Load this tensor file instead of building the quantum group.
        #[arg(long)]
        input: Option<String>,
    },
    /// Run every module's invariant checks and print a pass/fail table.
    Verify {
        #[arg(long, default_value_t = 3)]
        r: u32,
    },
    /// Evaluate the renormalized invariant of a surgery file.
    Invariant {
        file: String,
        #[arg(long, default_value_t = 3)]
        r: u32,
        /// Largest allowed state-space width per slice.
        #[arg(long)]
        cap: Option<u128>,
        #[arg(long, value_enum, default_value_t = Format::ExactFloat)]
        format: Format,
        #[arg(long, default_value_t = 12)]
        digits: usize,
    },
    /// Export generator matrices of a mapping class group representation.
    Mcg {
        #[arg(long, default_value_t = 3)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        /// Comma-separated puncture labels, e.g. P1,P1.
        #[arg(long, default_value = "")]
        labels: String,
        #[arg(long, default_value = "lyu")]
        side: String,
    },
    /// Export S and T on the coend and check the SL(2,Z) relations.
    Sl2z {
        #[arg(long, default_value_t = 3)]
        r: u32,
    },
}

/// Output text and whether every requested check passed.
type Outcome = Result<(String, bool), Error>;

fn category(r: u32) -> Result<Category, Error> {
    nsqft::cyclo::field_init(r)?;
    Category::qsl2(r)
}

fn structure(r: u32, input: Option<&str>) -> Outcome {
    let h = match input {
        Some(path) => hopf::load_hopf(&read(path)?)?,
        None => hopf::small_qsl2(r)?,
    };
    Ok((hopf::dump_hopf(&h), true))
}

fn verify(r: u32) -> Outcome {
    let report = suite::run(r)?;
    Ok((report.to_text(), report.all_passed()))
}

fn read(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn invariant(file: &str, r: u32, cap: Option<u128>, format: Format, digits: usize) -> Outcome {
    if cap == Some(0) {
        return Err(Error::Invalid("width cap must be at least 1".into()));
    }
    let text = read(file)?;
    let cat = category(r)?;
    let params = hopf::stabilization_params(&cat.hopf, SqrtChoice::Positive)?;
    let coupons = CouponRegistry::standard(&cat)?;
    let ev = Evaluator::new(&cat, &coupons).with_cap(cap.unwrap_or(DEFAULT_WIDTH_CAP));
    let p = parse_surgery(&text, &ev)?;
    let v = surgery_invariant(&p, &params, &ev)?;
    let mut out = format!("invariant {v}\n");
    if format == Format::ExactFloat {
        let _ = writeln!(out, "approx {} (floating point, not exact)", v.format_approx(digits));
    }
    Ok((out, true))
}

fn parse_labels(labels: &str) -> Vec<&str> {
    labels.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn mcg_export(r: u32, genus: usize, labels: &str, side: &str) -> Outcome {
    let side: Side = side.parse()?;
    let cat = category(r)?;
    let ops = mcg::coend_operators(&cat)?;
    let labels = parse_labels(labels);
    let rep = match side {
        Side::Lyu => mcg::lyu_rep(&ops, genus, &labels)?,
        Side::RhoX => mcg::rhox_rep(&ops, genus, &labels)?,
    };
    Ok((rep.to_text(), true))
}

fn status(c: &mcg::Check) -> &'static str {
    if c.ok {
        "OK"
    } else {
        "FAIL"
    }
}

fn scalar_of(c: &mcg::Check) -> &str {
    c.detail.strip_prefix("scalar ").unwrap_or(&c.detail)
}

fn sl2z(r: u32) -> Outcome {
    let cat = category(r)?;
    let ops = mcg::coend_operators(&cat)?;
    let mut out = String::new();
    out.push_str("S\n");
    out.push_str(&ops.s_op.matrix.to_text());
    out.push_str("T\n");
    out.push_str(&ops.t_op.matrix.to_text());
    // the relations are judged on the closed-torus state space C(1, L)
    let (_, _, torus) = suite::torus_sl2z(&ops)?;
    let _ = writeln!(out, "relations: (ST)^3 ∝ S^2 {}, S^4 ∝ id {}", status(&torus[0]), status(&torus[1]));
    let _ = writeln!(out, "scalars on C(1,L): (ST)^3 = c S^2 with c = {}; S^4 = c id with c = {}", scalar_of(&torus[0]), scalar_of(&torus[1]));
    let coend = mcg::coend_sl2z_checks(&ops);
    let _ = writeln!(
        out,
        "on L: (ST)^3 ∝ S^2 {} ({}), S^4 ∝ θ_L^-1 {} ({})",
        status(&coend[0]),
        coend[0].detail,
        status(&coend[1]),
        coend[1].detail
    );
    let ok = torus.iter().chain(&coend).all(|c| c.ok);
    Ok((out, ok))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Structure { r, input } => structure(r, input.as_deref()),
        Command::Verify { r } => verify(r),
        Command::Invariant { file, r, cap, format, digits } => invariant(&file, r, cap, format, digits),
        Command::Mcg { r, genus, labels, side } => mcg_export(r, genus, &labels, &side),
        Command::Sl2z { r } => sl2z(r),
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("bad arguments").trim_start_matches("error: ");
            eprintln!("ERROR usage {}", one_line(first));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("ERROR {} {}", e.code(), one_line(&e.to_string()));
            ExitCode::FAILURE
        }
    }
}
