use std::path::PathBuf;
use std::process::ExitCode;

use b2tensor::cache::Cache;
use b2tensor::closed_forms::{ClosedFormFamily, CoordinateMap, FormulaVariant};
use b2tensor::engine::{
    extract_multiplicities, iterate_single_step, tensor_power_weights, DecompositionResult,
    MultiplicityTower,
};
use b2tensor::fan::{
    ambient_singular_power, fan_diff, fan_power_direct, fan_recursion_solve, singular_diff,
    singular_power_direct,
};
use b2tensor::io;
use b2tensor::lattice::{is_dominant, Fundamental, HalfInt, Weight};
use b2tensor::verify::{self, Suite};
use b2tensor::{closed_forms, LatticeSeries};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "b2tensor",
    version,
    about = "Exact tensor-power decompositions for B2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Module {
    Vector,
    Spinor,
}

impl From<Module> for Fundamental {
    fn from(m: Module) -> Self {
        match m {
            Module::Vector => Fundamental::Vector,
            Module::Spinor => Fundamental::Spinor,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Recurrence,
    Oracle,
    SingleStep,
    Fan,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Diagonal,
    SpinorTable,
    VectorTable,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the p-th tensor power into irreducibles.
    Decompose {
        #[arg(long, value_enum)]
        module: Module,
        #[arg(long)]
        power: u32,
        #[arg(long, value_enum, default_value = "recurrence")]
        method: Method,
        /// Directory for cached results.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Multiplicity of one highest weight.
    Multiplicity {
        #[arg(long, value_enum)]
        module: Module,
        #[arg(long)]
        power: u32,
        #[arg(long, allow_hyphen_values = true)]
        weight: Weight,
        /// Accept non-dominant weights and report the antisymmetric extension.
        #[arg(long)]
        extended: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The p-fold injection fan.
    Fan {
        #[arg(long)]
        power: u32,
        /// Index from the lowest fan weight instead of the origin.
        #[arg(long)]
        shifted: bool,
        /// Report where the printed closed form differs from the direct fan.
        #[arg(long)]
        diff_printed: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Singular element of the p-th tensor power.
    Singular {
        #[arg(long, value_enum)]
        module: Module,
        #[arg(long)]
        power: u32,
        /// Print the product (Ψ^ω)^p instead of ch(L^ω)^p · Ψ^0.
        #[arg(long)]
        ambient: bool,
        /// Report where the printed closed form differs from (Ψ^ω)^p.
        #[arg(long)]
        diff_printed: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate a closed-form family and compare it with the engine.
    ClosedForm {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        power: u32,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        /// Table column; half-integers allowed for the spinor table.
        #[arg(long)]
        a: Option<HalfInt>,
        #[arg(long)]
        b: Option<u32>,
        /// Vector table row offset r (row p - r).
        #[arg(long)]
        row: Option<u32>,
        /// Use the printed formula and weight map.
        #[arg(long)]
        literal: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Fit p ↦ M(pω + offset, p) by a polynomial.
    Fit {
        #[arg(long, value_enum)]
        module: Module,
        #[arg(long, allow_hyphen_values = true)]
        offset: Weight,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        pmin: u32,
        #[arg(long)]
        pmax: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        pmax: u32,
    },
    /// Layered DOT diagram of single tensor steps.
    Diagram {
        #[arg(long, value_enum)]
        module: Module,
        #[arg(long, default_value_t = 8)]
        pmax: u32,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
    /// Output was produced but a check did not hold.
    Verification,
}

impl From<b2tensor::Error> for Failure {
    fn from(e: b2tensor::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(text: &str) {
    print!("{text}");
}

fn emit_value(value: &serde_json::Value) -> Outcome {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Runtime(e.to_string()))?;
    s.push('\n');
    emit(&s);
    Ok(())
}

fn emit_series(series: &LatticeSeries, format: Format) -> Outcome {
    match format {
        Format::Json => emit(&io::series_to_json(series)?),
        Format::Csv => emit(&io::series_to_csv(series)?),
        Format::Pretty => emit(&io::series_to_pretty(series)),
    }
    Ok(())
}

fn emit_diff(entries: &[b2tensor::fan::DiffEntry], format: Format) -> Outcome {
    match format {
        Format::Csv => emit(&io::diff_to_csv(entries)?),
        _ => emit(&io::diff_to_json(entries)?),
    }
    Ok(())
}

fn decompose(module: Fundamental, p: u32, method: Method) -> b2tensor::Result<DecompositionResult> {
    match method {
        Method::Recurrence => Ok(MultiplicityTower::new(module).level(p).decomposition()),
        Method::Oracle => extract_multiplicities(&tensor_power_weights(module, p), module, p),
        Method::SingleStep => iterate_single_step(module, p),
        Method::Fan => Ok(fan_recursion_solve(module, p, None)?
            .function
            .decomposition()),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Decompose {
            module,
            power,
            method,
            cache,
            out,
        } => {
            let module = module.into();
            let d = match cache {
                Some(dir) => {
                    Cache::open(dir)?
                        .get_or_compute(module, power, || decompose(module, power, method))?
                        .0
                }
                None => decompose(module, power, method)?,
            };
            match out.format {
                Format::Json => emit(&io::decomposition_to_json(&d)?),
                Format::Csv => emit(&io::decomposition_to_csv(&d)?),
                Format::Pretty => emit(&io::decomposition_to_pretty(&d)),
            }
            Ok(())
        }
        Command::Multiplicity {
            module,
            power,
            weight,
            extended,
            out,
        } => {
            if !extended && !is_dominant(weight) {
                return Err(Failure::Usage(format!(
                    "weight {weight} is not dominant; pass --extended for the antisymmetric extension"
                )));
            }
            let value = MultiplicityTower::new(module.into()).value(power, weight);
            match out.format {
                Format::Pretty => emit(&format!("{value}\n")),
                Format::Csv => emit(&format!("weight,mult\n\"{weight}\",{value}\n")),
                Format::Json => emit_value(&json!({
                    "module": Fundamental::from(module).name(),
                    "power": power,
                    "weight": weight.to_string(),
                    "mult": value.to_string(),
                    "extended": extended,
                }))?,
            }
            Ok(())
        }
        Command::Fan {
            power,
            shifted,
            diff_printed,
            out,
        } => {
            if diff_printed {
                return emit_diff(&fan_diff(power, FormulaVariant::Literal)?, out.format);
            }
            let fan = fan_power_direct(power)?;
            let fan = if shifted {
                fan.to_lowest_weight_shifted()
            } else {
                fan
            };
            emit_series(fan.terms(), out.format)
        }
        Command::Singular {
            module,
            power,
            ambient,
            diff_printed,
            out,
        } => {
            let module = module.into();
            if diff_printed {
                return emit_diff(
                    &singular_diff(module, power, FormulaVariant::Literal),
                    out.format,
                );
            }
            let series = if ambient {
                ambient_singular_power(module, power)
            } else {
                singular_power_direct(module, power)?.terms().clone()
            };
            emit_series(&series, out.format)
        }
        Command::ClosedForm {
            family,
            power,
            s,
            t,
            a,
            b,
            row,
            literal,
            out,
        } => {
            let need = |v: Option<u32>, flag: &str| {
                v.ok_or_else(|| Failure::Usage(format!("this family needs --{flag}")))
            };
            let fam = match family {
                Family::Diagonal => ClosedFormFamily::Diagonal {
                    s: need(s, "s")?,
                    t: need(t, "t")?,
                },
                Family::SpinorTable => ClosedFormFamily::SpinorTable {
                    a: a.ok_or_else(|| Failure::Usage("this family needs --a".into()))?,
                    b: need(b, "b")?,
                },
                Family::VectorTable => {
                    let a = a.ok_or_else(|| Failure::Usage("this family needs --a".into()))?;
                    let a = a
                        .to_integer()
                        .and_then(|v| u32::try_from(v).ok())
                        .ok_or_else(|| Failure::Usage("vector table column must be 0..3".into()))?;
                    ClosedFormFamily::VectorTable {
                        a,
                        row: need(row, "row")?,
                    }
                }
            };
            let (variant, map) = if literal {
                (FormulaVariant::Literal, CoordinateMap::Literal)
            } else {
                (FormulaVariant::Validated, CoordinateMap::Validated)
            };
            let value = match fam.evaluate(power, variant) {
                Ok(v) => v.to_string(),
                Err(b2tensor::Error::NonIntegral { value, .. }) => value,
                Err(b2tensor::Error::OutOfRange(m)) => return Err(Failure::Usage(m)),
                Err(e) => return Err(e.into()),
            };
            let mut tower = MultiplicityTower::new(fam.module());
            let engine = fam.engine_value(&mut tower, power, map);
            let agrees = value == engine.to_string();
            match out.format {
                Format::Pretty => emit(&format!("{value}\nengine {engine}\n")),
                _ => emit_value(&json!({
                    "family": fam.id(),
                    "power": power,
                    "weight": fam.weight(power, map).map(|w| w.to_string()),
                    "value": value,
                    "engine": engine.to_string(),
                    "agrees": agrees,
                    "in_domain": fam.in_domain(power),
                }))?,
            }
            if agrees {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Fit {
            module,
            offset,
            degree,
            pmin,
            pmax,
            out,
        } => {
            let module: Fundamental = module.into();
            let mut tower = MultiplicityTower::new(module);
            let fit = closed_forms::fit_polynomial(
                &mut tower,
                |p| module.top_weight(p) + offset,
                degree,
                pmin..=pmax,
            );
            let fit = match fit {
                Ok(f) => f,
                Err(b2tensor::Error::Polynomiality(m)) => {
                    emit_value(&json!({ "polynomial": null, "error": m }))?;
                    return Err(Failure::Verification);
                }
                Err(b2tensor::Error::OutOfRange(m)) => return Err(Failure::Usage(m)),
                Err(e) => return Err(e.into()),
            };
            match out.format {
                Format::Pretty => emit(&format!("{}\n", fit.poly)),
                _ => emit_value(&json!({
                    "module": module.name(),
                    "offset": offset.to_string(),
                    "window": [pmin, pmax],
                    "polynomial": fit.poly.to_string(),
                    "coefficients": fit.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "predictions": fit.predictions.iter().map(|(p, v, _)| json!({"p": p, "value": v.to_string()})).collect::<Vec<_>>(),
                }))?,
            }
            Ok(())
        }
        Command::Verify { suite, pmax } => {
            let report = verify::run(suite, pmax)?;
            emit(&report.to_json()?);
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Diagram { module, pmax } => {
            emit(&io::diagram_dot(module.into(), pmax)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}
