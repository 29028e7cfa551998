use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;

use dq_core::homology::{
    self, graded_les_check, homology_table, localize, snf, ComplexFile, FreeComplex, HbarMatrix,
    MatrixFile,
};
use dq_core::quantized::{
    build_hbar_derham, build_p_complex, derham_comparison, hochschild_commutative,
    koszul_notisoc_check, WeightSchedule,
};
use dq_core::sample::Sampler;

use crate::report::{DigestBuilder, RunReport};
use crate::{parse_json, read_file, Cli, CliError};

#[derive(Subcommand)]
pub enum HomologyCmd {
    /// Smith normal form of a matrix over Q[h].
    Snf(SnfArgs),
    /// Homology table of a free complex.
    Complex(ComplexArgs),
    /// Graded exact-sequence dimension check.
    Grles(GrlesArgs),
    /// The deformed de Rham complex and its comparison ladder.
    Derham(DerhamArgs),
    /// Diagonal Koszul dimensions of the commutative Hochschild homology.
    Hkr(HkrArgs),
    /// The weighted form-pair complex.
    Pcomplex(PcomplexArgs),
    /// The doubled PBW Koszul identity.
    Notisoc(NotisocArgs),
}

#[derive(Args)]
pub struct SnfArgs {
    /// Matrix file (JSON, entries in the `h` grammar).
    #[arg(long, conflicts_with = "random")]
    pub matrix: Option<String>,
    /// Run the contract sweep on N random matrices instead.
    #[arg(long)]
    pub random: Option<usize>,
    /// Square size of the random matrices.
    #[arg(long, default_value_t = 5)]
    pub size: usize,
    /// Entry h-degree bound of the random matrices.
    #[arg(long, default_value_t = 3)]
    pub hdeg: usize,
}

#[derive(Args)]
pub struct ComplexArgs {
    /// Complex file (JSON).
    #[arg(long)]
    pub complex: String,
    /// Also report the h-inverted summand counts per degree.
    #[arg(long)]
    pub localize: bool,
}

#[derive(Args)]
pub struct GrlesArgs {
    /// Complex file; omit to run the randomized suite instead.
    #[arg(long)]
    pub complex: Option<String>,
    /// Number of random complexes when no file is given.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Also check conservativity and vanishing transfer; the random suite
    /// then samples complexes whose torsion is h-divisible.
    #[arg(long)]
    pub conservativity: bool,
}

#[derive(Args)]
pub struct DerhamArgs {
    /// Number of coordinates (must be even).
    #[arg(long)]
    pub vars: usize,
    /// Weight bound of the filtration.
    #[arg(long)]
    pub bound: u32,
    /// Report only the h-inverted ranks per form degree.
    #[arg(long)]
    pub localize: bool,
    /// Verify the comparison ladder and report the induced power on H^0.
    #[arg(long)]
    pub compare: bool,
}

#[derive(Args)]
pub struct HkrArgs {
    #[arg(long)]
    pub vars: usize,
    #[arg(long)]
    pub bound: u32,
}

#[derive(Args)]
pub struct PcomplexArgs {
    #[arg(long)]
    pub vars: usize,
    #[arg(long)]
    pub bound: u32,
    /// Comma-separated integer weights per level; default is the standard
    /// schedule w(k) = k.
    #[arg(long)]
    pub weights: Option<String>,
    /// Also run N random trials of the pairing chain-map identity and the
    /// module-action associativity.
    #[arg(long)]
    pub check_pairing: Option<usize>,
}

#[derive(Args)]
pub struct NotisocArgs {
    /// Monomial degree bound for the identity sweep.
    #[arg(long, default_value_t = 4)]
    pub degree: u32,
    /// Truncation order of the doubled PBW algebra.
    #[arg(long, default_value_t = 8)]
    pub order: usize,
}

fn emit<T: Serialize>(echo: &[String], digest: String, seed: u64, results: T) {
    crate::report::emit(&RunReport { command: echo.join(" "), inputs_digest: digest, seed, results });
}

fn digest_of(parts: &[(&str, &str)]) -> String {
    let mut d = DigestBuilder::new();
    for (label, data) in parts {
        d.add(label, data);
    }
    d.finish()
}

pub fn run(cmd: &HomologyCmd, cli: &Cli, echo: &[String]) -> Result<(), CliError> {
    match cmd {
        HomologyCmd::Snf(a) => match (&a.matrix, a.random) {
            (Some(path), None) => {
                let src = read_file(path)?;
                let file: MatrixFile = parse_json(path, &src)?;
                let m = HbarMatrix::from_file(&file)?;
                let f = snf(&m);
                // exit 3 if the contract is broken: that can only be a bug
                if f.u.mul(&m)?.mul(&f.v)? != f.d {
                    return Err(CliError::InternalCheckFailed("U A V != D".into()));
                }
                let diagonal: Vec<String> = f.diagonal().iter().map(|p| p.render()).collect();
                let invariant_factors: Vec<String> =
                    f.invariant_factors().iter().map(|p| p.render()).collect();
                emit(
                    echo,
                    digest_of(&[("matrix", &src)]),
                    cli.seed,
                    json!({
                        "rank": f.rank,
                        "diagonal": diagonal,
                        "invariant_factors": invariant_factors,
                        "det_u": dq_core::symbolic::format_rat(&f.det_u),
                        "det_v": dq_core::symbolic::format_rat(&f.det_v),
                    }),
                );
                Ok(())
            }
            (None, Some(trials)) => {
                let mut s = Sampler::new(cli.seed);
                let mut failures = 0usize;
                for _ in 0..trials {
                    let m = homology::random::random_matrix(&mut s, a.size, a.size, a.hdeg);
                    let f = snf(&m);
                    let chain_ok = f
                        .diagonal()
                        .windows(2)
                        .all(|w| w[0].divides(&w[1]));
                    let transforms_ok = f.u.mul(&m)?.mul(&f.v)? == f.d
                        && f.u.mul(&f.u_inv)? == HbarMatrix::identity(a.size)
                        && f.v.mul(&f.v_inv)? == HbarMatrix::identity(a.size);
                    if !chain_ok || !transforms_ok {
                        failures += 1;
                    }
                }
                emit(
                    echo,
                    digest_of(&[("random", &trials.to_string()), ("size", &a.size.to_string())]),
                    cli.seed,
                    json!({ "trials": trials, "size": a.size, "hdeg": a.hdeg, "failures": failures }),
                );
                if failures > 0 {
                    return Err(CliError::InternalCheckFailed(format!(
                        "{failures} random matrices broke the normal-form contract"
                    )));
                }
                Ok(())
            }
            _ => Err(CliError::Usage("give exactly one of --matrix or --random".into())),
        },
        HomologyCmd::Complex(a) => {
            let src = read_file(&a.complex)?;
            let file: ComplexFile = parse_json(&a.complex, &src)?;
            let c = FreeComplex::from_file(&file)?;
            let hom = c.homology();
            let mut results = json!({ "homology": homology_table(&hom) });
            if a.localize {
                let loc = localize(&c);
                results["localized_summands"] = json!(loc
                    .iter()
                    .map(|(d, n)| json!({ "degree": d, "count": n }))
                    .collect::<Vec<_>>());
            }
            emit(echo, digest_of(&[("complex", &src)]), cli.seed, results);
            Ok(())
        }
        HomologyCmd::Grles(a) => match &a.complex {
            Some(path) => {
                let src = read_file(path)?;
                let file: ComplexFile = parse_json(path, &src)?;
                let c = FreeComplex::from_file(&file)?;
                let rows = graded_les_check(&c);
                let all_hold = rows.iter().all(|r| r.holds);
                emit(
                    echo,
                    digest_of(&[("complex", &src)]),
                    cli.seed,
                    json!({ "rows": rows, "all_hold": all_hold }),
                );
                if !all_hold {
                    return Err(CliError::InternalCheckFailed(
                        "graded dimension identity failed".into(),
                    ));
                }
                Ok(())
            }
            None => {
                let mut s = Sampler::new(cli.seed);
                let mut failures = 0usize;
                let class = if a.conservativity {
                    homology::random::ComplexClass::HAdapted
                } else {
                    homology::random::ComplexClass::General
                };
                for trial in 0..a.trials {
                    let c = if a.conservativity && trial % 3 == 0 {
                        homology::random::random_complex(
                            &mut s,
                            4,
                            4,
                            2,
                            homology::random::ComplexClass::Exact,
                        )
                    } else {
                        homology::random::random_complex(&mut s, 4, 4, 2, class)
                    };
                    if homology::graded_les_first_failure(&c).is_some() {
                        failures += 1;
                    }
                    if a.conservativity {
                        let ok = homology::conservativity_check(&c)
                            && (0..4).all(|cut| homology::vanishing_transfer_check(&c, cut));
                        if !ok {
                            failures += 1;
                        }
                    }
                }
                emit(
                    echo,
                    digest_of(&[
                        ("trials", &a.trials.to_string()),
                        ("conservativity", &a.conservativity.to_string()),
                    ]),
                    cli.seed,
                    json!({
                        "trials": a.trials,
                        "conservativity": a.conservativity,
                        "failures": failures,
                    }),
                );
                if failures > 0 {
                    return Err(CliError::InternalCheckFailed(format!(
                        "{failures} random complexes failed the dimension identity"
                    )));
                }
                Ok(())
            }
        },
        HomologyCmd::Derham(a) => {
            let digest = digest_of(&[
                ("vars", &a.vars.to_string()),
                ("bound", &a.bound.to_string()),
            ]);
            if a.localize {
                let pair = build_hbar_derham(a.vars, a.bound)?;
                let loc = localize(&pair.deformed);
                let ranks: Vec<usize> =
                    pair.deformed.degrees().map(|d| loc[&d]).collect();
                emit(echo, digest, cli.seed, json!({ "ranks": ranks }));
                return Ok(());
            }
            let mut results = json!({});
            let pair = build_hbar_derham(a.vars, a.bound)?;
            results["homology"] = json!(homology_table(&pair.deformed.homology()));
            if a.compare {
                let (_, report) = derham_comparison(a.vars, a.bound)?;
                if !report.chain_map_holds || !report.h0_is_constants {
                    return Err(CliError::InternalCheckFailed(
                        "comparison ladder is not a chain map".into(),
                    ));
                }
                results["comparison"] = json!({
                    "scalars": report.map.scalars,
                    "induced_h_power_on_h0": report.induced_h_power_on_h0,
                });
            }
            emit(echo, digest, cli.seed, results);
            Ok(())
        }
        HomologyCmd::Hkr(a) => {
            let r = hochschild_commutative(a.vars, a.bound)?;
            let digest = digest_of(&[
                ("vars", &a.vars.to_string()),
                ("bound", &a.bound.to_string()),
            ]);
            emit(
                echo,
                digest,
                cli.seed,
                json!({
                    "koszul_squares_to_zero": r.koszul_squares_to_zero,
                    "induced_differentials_vanish": r.induced_differentials_vanish,
                    "dimensions": r.dimensions,
                    "expected_dimensions": r.expected_dimensions,
                }),
            );
            if !r.passes() {
                return Err(CliError::InternalCheckFailed(
                    "diagonal Koszul check failed".into(),
                ));
            }
            Ok(())
        }
        HomologyCmd::Pcomplex(a) => {
            let schedule = match &a.weights {
                None => WeightSchedule::Standard,
                Some(csv) => {
                    let weights = csv
                        .split(',')
                        .map(|w| w.trim().parse::<i64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| CliError::Usage(format!("bad --weights: {e}")))?;
                    WeightSchedule::Custom(weights)
                }
            };
            let r = build_p_complex(a.vars, a.bound, &schedule)?;
            let digest = digest_of(&[
                ("vars", &a.vars.to_string()),
                ("bound", &a.bound.to_string()),
                ("weights", a.weights.as_deref().unwrap_or("standard")),
            ]);
            let mut results = json!({
                "homology_dims_by_level": r.homology_dims,
                "ranks": r.complex.degrees().map(|d| r.complex.rank(d)).collect::<Vec<_>>(),
                // the sign convention fixed for the pairing on odd-degree
                // interchanges
                "pairing_sign_convention":
                    "mu(a, b) = (omega_a ^ omega_b, theta_a ^ omega_b + (-1)^deg(a) omega_a ^ theta_b)",
            });
            if let Some(trials) = a.check_pairing {
                let pairing_ok =
                    dq_core::quantized::mu_pairing_check(a.vars, a.bound, trials, cli.seed)?;
                let action_ok =
                    dq_core::quantized::p2_action_check(a.vars, a.bound, trials, cli.seed + 1)?;
                results["pairing_trials"] = json!(trials);
                results["pairing_ok"] = json!(pairing_ok);
                results["action_ok"] = json!(action_ok);
                if !pairing_ok || !action_ok {
                    emit(echo, digest, cli.seed, results);
                    return Err(CliError::InternalCheckFailed(
                        "pairing or module-action trials failed".into(),
                    ));
                }
            }
            emit(echo, digest, cli.seed, results);
            Ok(())
        }
        HomologyCmd::Notisoc(a) => {
            let r = koszul_notisoc_check(a.degree, a.order)?;
            let digest = digest_of(&[
                ("degree", &a.degree.to_string()),
                ("order", &a.order.to_string()),
            ]);
            emit(
                echo,
                digest,
                cli.seed,
                json!({
                    "beta_alpha_zero": r.beta_alpha_zero(),
                    "monomials_checked": r.checked,
                }),
            );
            if !r.beta_alpha_zero() {
                return Err(CliError::InternalCheckFailed(
                    "beta . alpha != 0 in the doubled PBW algebra".into(),
                ));
            }
            Ok(())
        }
    }
}
