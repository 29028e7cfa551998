use clap::Args;
use serde_json::json;

use dq_core::lagrangian::{base_context, convolve, euler_index, CycleFile, LagCycle, ShearKernel};
use dq_core::symbolic::parse_poly;

use crate::report::{DigestBuilder, RunReport};
use crate::{parse_json, read_file, Cli, CliError};

#[derive(Args)]
pub struct IndexArgs {
    /// First cycle file (JSON).
    #[arg(long = "cycle-a")]
    pub cycle_a: String,
    /// Second cycle file; pairs with the first.
    #[arg(long = "cycle-b")]
    pub cycle_b: Option<String>,
    /// Shear polynomial q(x); transforms the first cycle instead of pairing.
    #[arg(long)]
    pub convolve: Option<String>,
}

pub fn run(args: &IndexArgs, cli: &Cli, echo: &[String]) -> Result<(), CliError> {
    let a_src = read_file(&args.cycle_a)?;
    let a_file: CycleFile = parse_json(&args.cycle_a, &a_src)?;
    let a = LagCycle::from_file(&a_file)?;

    match (&args.cycle_b, &args.convolve) {
        (Some(b_path), None) => {
            let b_src = read_file(b_path)?;
            let b_file: CycleFile = parse_json(b_path, &b_src)?;
            let b = LagCycle::from_file(&b_file)?;
            let index = euler_index(&a, &b)?;
            let mut d = DigestBuilder::new();
            d.add("cycle_a", &a_src);
            d.add("cycle_b", &b_src);
            crate::report::emit(&RunReport {
                command: echo.join(" "),
                inputs_digest: d.finish(),
                seed: cli.seed,
                results: json!({
                    "index": index,
                    // recorded, not applied: the pairing counts +1 per
                    // transversal point; the dualizing sign for a
                    // two-dimensional phase space would be -1
                    "sign_convention": "+1 per transversal point",
                }),
            });
            Ok(())
        }
        (None, Some(q_src)) => {
            let q = parse_poly(q_src, &base_context())?;
            let kernel = ShearKernel::new(q)?;
            let image = convolve(&kernel, &a)?;
            let mut d = DigestBuilder::new();
            d.add("cycle_a", &a_src);
            d.add("convolve", q_src);
            crate::report::emit(&RunReport {
                command: echo.join(" "),
                inputs_digest: d.finish(),
                seed: cli.seed,
                results: json!({ "cycle": image.to_file() }),
            });
            Ok(())
        }
        _ => Err(CliError::Usage(
            "give exactly one of --cycle-b (pairing) or --convolve (shear)".into(),
        )),
    }
}
