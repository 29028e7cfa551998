use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;

use dq_core::sample::Sampler;
use dq_core::star::config::{centralizer_from_configs, FamilyConfig, GaugeConfig, StarConfig};
use dq_core::star::{gauge_transport, StarKind, StarProduct};
use dq_core::symbolic::{parse_series, HSeries};

use crate::report::{DigestBuilder, RunReport};
use crate::{parse_json, read_file, Cli, CliError};

#[derive(Subcommand)]
pub enum StarCmd {
    /// Star-multiply two expressions.
    Mul(MulArgs),
    /// Audit associativity on random triples.
    Assoc(AssocArgs),
    /// Extract the Poisson bracket table.
    Poisson(PoissonArgs),
    /// Transport a product along a gauge morphism.
    Gauge(GaugeArgs),
    /// External product on a disjoint union of contexts.
    External(ExternalArgs),
    /// Reconstruct a product from commuting operator families.
    Centralizer(CentralizerArgs),
    /// The opposite product.
    Opposite(OppositeArgs),
}

#[derive(Args)]
pub struct MulArgs {
    /// Star product config (JSON).
    #[arg(long)]
    pub product: String,
    #[arg(long)]
    pub lhs: String,
    #[arg(long)]
    pub rhs: String,
    /// Override the config's truncation order.
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Args)]
pub struct AssocArgs {
    #[arg(long)]
    pub product: String,
    /// Max total degree of the random polynomials.
    #[arg(long, default_value_t = 4)]
    pub degree: u32,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
}

#[derive(Args)]
pub struct PoissonArgs {
    #[arg(long)]
    pub product: String,
    /// Optional explicit pair; default emits the full coordinate table.
    #[arg(long)]
    pub lhs: Option<String>,
    #[arg(long)]
    pub rhs: Option<String>,
}

#[derive(Args)]
pub struct GaugeArgs {
    #[arg(long)]
    pub product: String,
    /// Gauge file: `{"ops": [[{coeff, partial}], ...]}` for R_1, R_2, ...
    #[arg(long)]
    pub gauge: String,
    /// Trials for the post-transport associativity audit.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
}

#[derive(Args)]
pub struct ExternalArgs {
    #[arg(long)]
    pub product: String,
    /// Second factor config.
    #[arg(long = "with")]
    pub with_product: String,
}

#[derive(Args)]
pub struct CentralizerArgs {
    /// Operator family file for the A side.
    #[arg(long = "a-ops")]
    pub a_ops: String,
    /// Operator family file for the B side.
    #[arg(long = "b-ops")]
    pub b_ops: String,
    /// Degree bound for the emitted monomial product table.
    #[arg(long, default_value_t = 2)]
    pub degree: u32,
}

#[derive(Args)]
pub struct OppositeArgs {
    #[arg(long)]
    pub product: String,
}

fn load_product(path: &str, order_override: Option<usize>) -> Result<StarProduct, CliError> {
    let data = read_file(path)?;
    let mut cfg: StarConfig = parse_json(path, &data)?;
    if let Some(n) = order_override {
        cfg.order = n;
    }
    Ok(cfg.build()?)
}

fn digest_of(parts: &[(&str, &str)]) -> String {
    let mut d = DigestBuilder::new();
    for (label, data) in parts {
        d.add(label, data);
    }
    d.finish()
}

fn emit<T: Serialize>(echo: &[String], digest: String, seed: u64, results: T) {
    crate::report::emit(&RunReport { command: echo.join(" "), inputs_digest: digest, seed, results });
}

pub fn run(cmd: &StarCmd, cli: &Cli, echo: &[String]) -> Result<(), CliError> {
    match cmd {
        StarCmd::Mul(a) => {
            let product_src = read_file(&a.product)?;
            let sp = load_product(&a.product, a.order)?;
            let ctx = sp.context().clone();
            let lhs = parse_series(&a.lhs, &ctx, sp.order())?;
            let rhs = parse_series(&a.rhs, &ctx, sp.order())?;
            let result = sp.star_mul(&lhs, &rhs)?;
            let digest = digest_of(&[("product", &product_src), ("lhs", &a.lhs), ("rhs", &a.rhs)]);
            emit(echo, digest, cli.seed, json!({ "result": result.to_string() }));
            Ok(())
        }
        StarCmd::Assoc(a) => {
            let product_src = read_file(&a.product)?;
            let sp = load_product(&a.product, None)?;
            let ctx = sp.context().clone();
            let mut s = Sampler::new(cli.seed);
            let mut max_defect = "0".to_string();
            let mut nonzero = 0usize;
            for _ in 0..a.trials {
                let f = HSeries::from_poly(&s.poly(&ctx, a.degree, 3), sp.order());
                let g = HSeries::from_poly(&s.poly(&ctx, a.degree, 3), sp.order());
                let h = HSeries::from_poly(&s.poly(&ctx, a.degree, 3), sp.order());
                let defect = sp.assoc_defect(&f, &g, &h)?;
                if !defect.is_zero() {
                    if nonzero == 0 {
                        max_defect = defect.to_string();
                    }
                    nonzero += 1;
                }
            }
            let digest = digest_of(&[("product", &product_src)]);
            emit(
                echo,
                digest,
                cli.seed,
                json!({ "trials": a.trials, "degree": a.degree, "nonzero_trials": nonzero, "max_defect": max_defect }),
            );
            if nonzero > 0 {
                return Err(CliError::AuditFailed(format!(
                    "{nonzero} of {} triples had a nonzero associativity defect",
                    a.trials
                )));
            }
            Ok(())
        }
        StarCmd::Poisson(a) => {
            let product_src = read_file(&a.product)?;
            let sp = load_product(&a.product, None)?;
            let ctx = sp.context().clone();
            let results = match (&a.lhs, &a.rhs) {
                (Some(l), Some(r)) => {
                    let f = dq_core::symbolic::parse_poly(l, &ctx)?;
                    let g = dq_core::symbolic::parse_poly(r, &ctx)?;
                    json!({ "bracket": sp.poisson_bracket(&f, &g)?.to_string() })
                }
                (None, None) => {
                    let mut table = Vec::new();
                    for i in 0..ctx.len() {
                        for j in i + 1..ctx.len() {
                            let xi = dq_core::symbolic::Poly::var(&ctx, i);
                            let xj = dq_core::symbolic::Poly::var(&ctx, j);
                            table.push(json!({
                                "lhs": ctx.name(i),
                                "rhs": ctx.name(j),
                                "bracket": sp.poisson_bracket(&xi, &xj)?.to_string(),
                            }));
                        }
                    }
                    json!({ "brackets": table })
                }
                _ => {
                    return Err(CliError::Usage(
                        "--lhs and --rhs must be given together".into(),
                    ))
                }
            };
            let digest = digest_of(&[("product", &product_src)]);
            emit(echo, digest, cli.seed, results);
            Ok(())
        }
        StarCmd::Gauge(a) => {
            let product_src = read_file(&a.product)?;
            let gauge_src = read_file(&a.gauge)?;
            let sp = load_product(&a.product, None)?;
            let gauge_cfg: GaugeConfig = parse_json(&a.gauge, &gauge_src)?;
            let phi = gauge_cfg.build(sp.context(), sp.order())?;
            let transported = gauge_transport(&sp, &phi)?;
            // audit the result
            let ctx = sp.context().clone();
            let mut s = Sampler::new(cli.seed);
            for _ in 0..a.trials {
                let f = HSeries::from_poly(&s.poly(&ctx, 3, 3), sp.order());
                let g = HSeries::from_poly(&s.poly(&ctx, 3, 3), sp.order());
                let h = HSeries::from_poly(&s.poly(&ctx, 3, 3), sp.order());
                if !transported.assoc_defect(&f, &g, &h)?.is_zero() {
                    return Err(CliError::AuditFailed(
                        "transported product failed the associativity audit".into(),
                    ));
                }
            }
            let cfg = transported.to_config()?;
            let digest = digest_of(&[("product", &product_src), ("gauge", &gauge_src)]);
            emit(
                echo,
                digest,
                cli.seed,
                json!({ "transported": cfg, "audit_trials": a.trials, "audit": "pass" }),
            );
            Ok(())
        }
        StarCmd::External(a) => {
            let left_src = read_file(&a.product)?;
            let right_src = read_file(&a.with_product)?;
            let left = load_product(&a.product, None)?;
            let right = load_product(&a.with_product, None)?;
            let ext = left.external_product(&right)?;
            let digest = digest_of(&[("left", &left_src), ("right", &right_src)]);
            emit(echo, digest, cli.seed, json!({ "product": ext.to_config()? }));
            Ok(())
        }
        StarCmd::Centralizer(a) => {
            let a_src = read_file(&a.a_ops)?;
            let b_src = read_file(&a.b_ops)?;
            let fam_a: FamilyConfig = parse_json(&a.a_ops, &a_src)?;
            let fam_b: FamilyConfig = parse_json(&a.b_ops, &b_src)?;
            let cp = centralizer_from_configs(&fam_a, &fam_b)?;
            let sp = StarProduct::new(
                cp.context(),
                cp.order(),
                StarKind::Centralizer(cp.clone()),
            )?;
            // emit the product table on monomials up to the degree bound
            let ctx = cp.context().clone();
            let monos =
                dq_core::quantized::forms_basis::monomials_up_to(ctx.len(), a.degree);
            let mut table = Vec::new();
            for m1 in &monos {
                for m2 in &monos {
                    let f = HSeries::from_poly(
                        &dq_core::symbolic::Poly::monomial(&ctx, m1.clone(), dq_core::symbolic::rat_int(1)),
                        cp.order(),
                    );
                    let g = HSeries::from_poly(
                        &dq_core::symbolic::Poly::monomial(&ctx, m2.clone(), dq_core::symbolic::rat_int(1)),
                        cp.order(),
                    );
                    let prod = sp.star_mul(&f, &g)?;
                    table.push(json!({
                        "lhs": f.to_string(),
                        "rhs": g.to_string(),
                        "star": prod.to_string(),
                    }));
                }
            }
            let digest = digest_of(&[("a_ops", &a_src), ("b_ops", &b_src)]);
            emit(
                echo,
                digest,
                cli.seed,
                json!({ "preconditions": "verified", "degree": a.degree, "products": table }),
            );
            Ok(())
        }
        StarCmd::Opposite(a) => {
            let product_src = read_file(&a.product)?;
            let sp = load_product(&a.product, None)?;
            let digest = digest_of(&[("product", &product_src)]);
            emit(echo, digest, cli.seed, json!({ "product": sp.opposite().to_config()? }));
            Ok(())
        }
    }
}
