use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use latzeta::formulas::{doubling_ratio, Formulas};
use latzeta::report::{canonical_json, Elapsed, VerificationReport};
use latzeta::sublattice::{brute_coefficients, partial_sums, CoefficientTable};
use latzeta::{field_data, Bqf, ClassGroup, Error, Mode};

const DEFAULT_CAP: usize = 10_000;

#[derive(Parser)]
#[command(name = "latzeta", version, about = "Sublattice zeta functions of binary quadratic lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced classes, structure and the distinguished subgroups.
    Classgroup(Common),
    /// Coefficients by sublattice enumeration.
    Brute(Common),
    /// Coefficients from the closed formulas.
    Formula(Common),
    /// Compare formula and enumeration; exit 1 on any mismatch.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Verify every class of the discriminant instead of one form.
        #[arg(long)]
        all_classes: bool,
    },
    /// Test multiplicativity of the proper coefficients.
    Euler(Common),
    /// Prime-power coefficients `a_{p^i}^+` for `0 ≤ i ≤ k`.
    Localfactor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 5)]
        k: u32,
    },
    /// Residue of the proper zeta function at s = 2 and the growth of partial sums.
    Residue(Common),
}

#[derive(Args)]
struct Common {
    /// Negative fundamental discriminant.
    #[arg(long, allow_hyphen_values = true)]
    disc: i64,
    /// Form as `a,b,c`; defaults to the principal form.
    #[arg(long, allow_hyphen_values = true)]
    form: Option<String>,
    #[arg(long = "max", default_value_t = 300)]
    max: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    mode: ModeArg,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Spread the enumeration over all cores.
    #[arg(long)]
    parallel: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Sl,
    Gl,
    Both,
}

impl ModeArg {
    fn modes(self) -> &'static [Mode] {
        match self {
            ModeArg::Sl => &[Mode::Sl],
            ModeArg::Gl => &[Mode::Gl],
            ModeArg::Both => &Mode::BOTH,
        }
    }
}

impl Common {
    fn cap(&self) -> Result<usize, Error> {
        let cap = match std::env::var("LATZETA_MAX_N") {
            Ok(v) => v.trim().parse().map_err(|_| Error::Domain(format!("LATZETA_MAX_N={v} is not a number")))?,
            Err(_) => DEFAULT_CAP,
        };
        if self.max == 0 || self.max > cap {
            return Err(Error::Domain(format!("--max {} outside 1..={cap}", self.max)));
        }
        Ok(self.max)
    }

    fn group(&self) -> Result<ClassGroup, Error> {
        field_data(self.disc)?;
        ClassGroup::new(self.disc)
    }

    fn form(&self, group: &ClassGroup) -> Result<Bqf, Error> {
        let f = match &self.form {
            None => Bqf::principal(self.disc as i128)?,
            Some(text) => text.parse::<Bqf>()?,
        };
        group.class_of(&f)?;
        Ok(f)
    }
}

enum Outcome {
    Ok,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Classgroup(c) => classgroup(&c),
        Command::Brute(c) => coefficients(&c, true),
        Command::Formula(c) => coefficients(&c, false),
        Command::Verify { common, all_classes } => verify(&common, all_classes),
        Command::Euler(c) => euler(&c),
        Command::Localfactor { common, p, k } => localfactor(&common, p, k),
        Command::Residue(c) => residue(&c),
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Error> {
    println!("{}", canonical_json(value)?);
    Ok(())
}

fn classgroup(c: &Common) -> Result<Outcome, Error> {
    let group = c.group()?;
    let summary = group.summary()?;
    if c.json {
        print_json(&summary)?;
    } else {
        println!("D = {}, h = {}, Cl ≅ {}", summary.disc, summary.h, summary.structure);
        let list = |v: &[Bqf]| v.iter().map(Bqf::to_string).collect::<Vec<_>>().join(" ");
        println!("classes: {}", list(&summary.classes));
        println!("refl:    {}", list(&summary.refl));
        println!("ram:     {}", list(&summary.ram));
        match &summary.ortho {
            Some(o) => println!("ortho:   {}", list(o)),
            None => println!("ortho:   absent"),
        }
    }
    Ok(Outcome::Ok)
}

fn formula_table(f: &Bqf, n: usize) -> Result<CoefficientTable, Error> {
    let bundle = latzeta::formulas::gl_zeta_for_form(f, n)?;
    bundle.check()?;
    let to_u64 = |v: Vec<i64>| v.into_iter().map(|x| x as u64).collect();
    Ok(CoefficientTable { form: *f, sl: to_u64(bundle.sl.to_integers()?), gl: to_u64(bundle.gl.to_integers()?) })
}

fn coefficients(c: &Common, brute: bool) -> Result<Outcome, Error> {
    let n = c.cap()?;
    let group = c.group()?;
    let f = c.form(&group)?;
    let table = if brute { brute_coefficients(&f, n, c.parallel)? } else { formula_table(&f, n)? };
    let modes = c.mode.modes();
    if c.json {
        let mut obj = json!({ "disc": c.disc, "form": f.to_string(), "N": n });
        for &mode in modes {
            obj[mode.to_string()] = json!(table.column(mode));
        }
        print_json(&obj)?;
    } else {
        let sep = if c.csv { "," } else { "\t" };
        let mut header = vec!["m".to_string()];
        header.extend(modes.iter().map(|m| format!("a_{m}")));
        println!("{}", header.join(sep));
        for m in 1..=n {
            let mut row = vec![m.to_string()];
            row.extend(modes.iter().map(|&mode| table.column(mode)[m - 1].to_string()));
            println!("{}", row.join(sep));
        }
    }
    Ok(Outcome::Ok)
}

fn verify(c: &Common, all_classes: bool) -> Result<Outcome, Error> {
    let n = c.cap()?;
    let group = c.group()?;
    let forms: Vec<Bqf> = if all_classes { group.forms().to_vec() } else { vec![c.form(&group)?] };
    let formulas = Formulas::from_group(group.clone(), n)?;
    let mut reports = Vec::new();
    for f in &forms {
        let start = Instant::now();
        let bundle = formulas.gl_zeta(group.class_of(f)?)?;
        bundle.check()?;
        let formula_ms = start.elapsed().as_millis() as u64;
        let start = Instant::now();
        let brute = brute_coefficients(f, n, c.parallel)?;
        let brute_ms = start.elapsed().as_millis() as u64;
        for &mode in c.mode.modes() {
            let series = match mode {
                Mode::Sl => &bundle.sl,
                Mode::Gl => &bundle.gl,
            };
            let elapsed = Elapsed { formula: formula_ms, brute: brute_ms };
            reports.push(VerificationReport::new(c.disc, f.to_string(), mode, series.to_integers()?, brute.column(mode), elapsed));
        }
    }
    if c.json {
        if let [single] = reports.as_slice() {
            print_json(single)?;
        } else {
            print_json(&reports)?;
        }
    } else if c.csv {
        for (i, r) in reports.iter().enumerate() {
            if reports.len() > 1 {
                if i > 0 {
                    println!();
                }
                println!("# disc={} form={} mode={}", r.disc, r.form, r.mode);
            }
            print!("{}", r.to_csv());
        }
    } else {
        for r in &reports {
            let status = if r.passed() { "ok" } else { "MISMATCH" };
            println!("D={} form={} mode={} N={}: {status} ({} mismatches)", r.disc, r.form, r.mode, r.n, r.mismatches.len());
            for m in r.mismatches.iter().take(10) {
                println!("  m={}: formula {} brute {}", m.m, m.formula, m.brute);
            }
        }
    }
    Ok(if reports.iter().all(VerificationReport::passed) { Outcome::Ok } else { Outcome::Mismatch })
}

fn euler(c: &Common) -> Result<Outcome, Error> {
    let n = c.cap()?;
    let report = Formulas::new(c.disc, n)?.euler_report()?;
    if c.json {
        print_json(&report)?;
        return Ok(Outcome::Ok);
    }
    let verdict = if report.holds { "holds" } else { "fails" };
    println!("D={}: Euler product {verdict} up to m={}", report.disc, report.max_index);
    if let Some((m, a, prod)) = report.witness {
        println!("witness: m={m}, a_m^+={a}, product of prime-power coefficients={prod}");
    }
    let squares = if report.elementary_two { "every class squares to 1" } else { "some class has order > 2" };
    println!("Cl ≅ {} ({squares})", report.structure);
    Ok(Outcome::Ok)
}

fn localfactor(c: &Common, p: u64, k: u32) -> Result<Outcome, Error> {
    let formulas = Formulas::new(c.disc, 1)?;
    let kind = formulas.group().field().split_type(p)?.kind;
    let values = formulas.local_factor(p, k)?;
    if c.json {
        let strings: Vec<String> = values.iter().map(u128::to_string).collect();
        print_json(&json!({ "disc": c.disc, "p": p, "kind": kind, "coeffs": strings }))?;
    } else {
        println!("D={} p={p} ({kind})", c.disc);
        for (i, v) in values.iter().enumerate() {
            println!("a_{p}^{i} = {v}");
        }
    }
    Ok(Outcome::Ok)
}

fn residue(c: &Common) -> Result<Outcome, Error> {
    let n = c.cap()?;
    let report = Formulas::new(c.disc, n)?.residue_report()?;
    let group = c.group()?;
    let f = c.form(&group)?;
    let brute = brute_coefficients(&f, n, c.parallel)?;
    let sums = partial_sums(&brute.sl);
    let ratio = doubling_ratio(&sums);
    if c.json {
        print_json(&json!({ "report": report, "doubling_ratio": ratio }))?;
    } else {
        println!("D={} N={n}", report.disc);
        println!("class sum      {:.6}", report.class_sum_approx);
        println!("ζ(2)/ζ_F(2)    {:.6}", report.zeta_ratio);
        println!("residue        {:.6}", report.residue);
        println!("s_N predicted  {:.6}", report.predicted_partial_sum);
        println!("s_N            {}", report.partial_sum);
        if let Some(r) = ratio {
            println!("s_N/s_(N/2)    {r:.6}");
        }
    }
    Ok(Outcome::Ok)
}
