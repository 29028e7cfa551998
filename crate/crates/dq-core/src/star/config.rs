//! JSON schemas for star products, gauges and operator families: rational
//! and polynomial entries are grammar strings, multi-indices are
//! variable-to-exponent maps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{centralizer_star, CentralizerProduct, GaugeMorphism, PbwRelations, StarKind, StarProduct};
use crate::error::{DqError, Result};
use crate::symbolic::{
    format_rat, parse_poly, parse_rat, BiDiffOp, Context, DiffOp, HDiffOp, Mono,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StarConfigKind {
    /// Skew matrix plus an ordering convention.
    ConstantPoisson { matrix: Vec<Vec<String>>, ordering: OrderingKind },
    /// Raw constant twist matrix (the general closed form; produced when a
    /// derived product no longer matches a named ordering).
    Twist { matrix: Vec<Vec<String>> },
    /// Explicit bidifferential operators P_0, P_1, ...
    Bidiff { ops: Vec<Vec<BiDiffTermConfig>> },
    /// PBW relation table.
    Pbw { relations: Vec<PbwRelationConfig> },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum OrderingKind {
    Normal,
    Weyl,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StarConfig {
    pub context: Vec<String>,
    pub order: usize,
    #[serde(flatten)]
    pub kind: StarConfigKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BiDiffTermConfig {
    pub coeff: String,
    pub alpha: BTreeMap<String, u32>,
    pub beta: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PbwRelationConfig {
    /// `[left, right] = h * bracket`, with `left` before `right` in the
    /// declared variable order.
    pub left: String,
    pub right: String,
    pub bracket: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiffTermConfig {
    pub coeff: String,
    pub partial: BTreeMap<String, u32>,
}

/// Gauge file: R_0 is the identity, `ops[k]` describes R_{k+1}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaugeConfig {
    pub ops: Vec<Vec<DiffTermConfig>>,
}

/// Operator family file for the centralizer construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub context: Vec<String>,
    pub order: usize,
    /// `family[i]` is the operator attached to the i-th variable;
    /// `family[i][k]` lists the terms of its h^k level.
    pub family: Vec<Vec<Vec<DiffTermConfig>>>,
}

fn multi_index(ctx: &Context, m: &BTreeMap<String, u32>) -> Result<Mono> {
    let mut pairs = Vec::with_capacity(m.len());
    for (name, &e) in m {
        let idx = ctx.index_of(name).ok_or_else(|| {
            DqError::ContextMismatch(format!("unknown variable `{name}` in a multi-index"))
        })?;
        pairs.push((idx, e));
    }
    Ok(Mono::from_pairs(pairs))
}

fn multi_index_to_map(ctx: &Context, m: &Mono) -> BTreeMap<String, u32> {
    m.pairs().iter().map(|&(i, e)| (ctx.name(i).to_string(), e)).collect()
}

pub fn diff_op_from_terms(ctx: &Context, terms: &[DiffTermConfig]) -> Result<DiffOp> {
    let mut op = DiffOp::zero(ctx);
    for t in terms {
        let coeff = parse_poly(&t.coeff, ctx)?;
        let alpha = multi_index(ctx, &t.partial)?;
        op = op.add(&DiffOp::term(ctx, coeff, alpha))?;
    }
    Ok(op)
}

fn bidiff_from_terms(ctx: &Context, terms: &[BiDiffTermConfig]) -> Result<BiDiffOp> {
    let mut op = BiDiffOp::zero(ctx);
    for t in terms {
        let coeff = parse_poly(&t.coeff, ctx)?;
        let alpha = multi_index(ctx, &t.alpha)?;
        let beta = multi_index(ctx, &t.beta)?;
        op = op.add(&BiDiffOp::term(ctx, coeff, alpha, beta))?;
    }
    Ok(op)
}

fn rational_matrix(m: &[Vec<String>]) -> Result<Vec<Vec<crate::symbolic::Rat>>> {
    m.iter()
        .map(|row| row.iter().map(|s| parse_rat(s)).collect())
        .collect()
}

impl StarConfig {
    pub fn build(&self) -> Result<StarProduct> {
        let ctx = Context::new(self.context.clone())?;
        match &self.kind {
            StarConfigKind::ConstantPoisson { matrix, ordering } => {
                let skew = rational_matrix(matrix)?;
                match ordering {
                    OrderingKind::Weyl => StarProduct::weyl(&ctx, self.order, skew),
                    OrderingKind::Normal => StarProduct::normal(&ctx, self.order, skew),
                }
            }
            StarConfigKind::Twist { matrix } => {
                let twist = rational_matrix(matrix)?;
                StarProduct::new(&ctx, self.order, StarKind::ConstantTwist { twist })
            }
            StarConfigKind::Bidiff { ops } => {
                let ops = ops
                    .iter()
                    .map(|terms| bidiff_from_terms(&ctx, terms))
                    .collect::<Result<Vec<_>>>()?;
                StarProduct::new(&ctx, self.order, StarKind::BiDiff(ops))
            }
            StarConfigKind::Pbw { relations } => {
                let mut brackets = Vec::with_capacity(relations.len());
                for r in relations {
                    let i = ctx.index_of(&r.left).ok_or_else(|| {
                        DqError::ContextMismatch(format!("unknown variable `{}`", r.left))
                    })?;
                    let j = ctx.index_of(&r.right).ok_or_else(|| {
                        DqError::ContextMismatch(format!("unknown variable `{}`", r.right))
                    })?;
                    brackets.push(((i, j), parse_poly(&r.bracket, &ctx)?));
                }
                StarProduct::pbw(&ctx, self.order, PbwRelations::new(&ctx, brackets)?)
            }
        }
    }
}

impl StarProduct {
    /// Emits a config that rebuilds this product. Centralizer products have
    /// no closed bidifferential form and are not serializable.
    pub fn to_config(&self) -> Result<StarConfig> {
        let ctx = self.context();
        let kind = match self.kind() {
            StarKind::ConstantTwist { twist } => StarConfigKind::Twist {
                matrix: twist
                    .iter()
                    .map(|row| row.iter().map(format_rat).collect())
                    .collect(),
            },
            StarKind::BiDiff(ops) => StarConfigKind::Bidiff {
                ops: ops
                    .iter()
                    .map(|op| {
                        op.terms()
                            .map(|((a, b), c)| BiDiffTermConfig {
                                coeff: c.to_string(),
                                alpha: multi_index_to_map(ctx, a),
                                beta: multi_index_to_map(ctx, b),
                            })
                            .collect()
                    })
                    .collect(),
            },
            StarKind::Pbw(rel) => StarConfigKind::Pbw {
                relations: rel
                    .bracket_entries()
                    .map(|(&(i, j), b)| PbwRelationConfig {
                        left: ctx.name(i).to_string(),
                        right: ctx.name(j).to_string(),
                        bracket: b.to_string(),
                    })
                    .collect(),
            },
            StarKind::Centralizer(_) => {
                return Err(DqError::Unsupported(
                    "centralizer products have no finite closed form to serialize".into(),
                ))
            }
        };
        Ok(StarConfig {
            context: ctx.names().to_vec(),
            order: self.order(),
            kind,
        })
    }
}

impl GaugeConfig {
    pub fn build(&self, ctx: &Context, order: usize) -> Result<GaugeMorphism> {
        let higher = self
            .ops
            .iter()
            .map(|terms| diff_op_from_terms(ctx, terms))
            .collect::<Result<Vec<_>>>()?;
        GaugeMorphism::new(ctx, order, higher)
    }
}

impl FamilyConfig {
    pub fn build_ops(&self) -> Result<(Context, Vec<HDiffOp>)> {
        let ctx = Context::new(self.context.clone())?;
        let mut out = Vec::with_capacity(self.family.len());
        for levels in &self.family {
            if levels.is_empty() || levels.len() > self.order {
                return Err(DqError::Precondition(format!(
                    "family operator must carry between 1 and {} h-levels",
                    self.order
                )));
            }
            let mut ops = levels
                .iter()
                .map(|terms| diff_op_from_terms(&ctx, terms))
                .collect::<Result<Vec<_>>>()?;
            ops.resize(self.order, DiffOp::zero(&ctx));
            out.push(HDiffOp::from_ops(&ctx, ops)?);
        }
        Ok((ctx, out))
    }
}

/// Builds the centralizer product out of two family files.
pub fn centralizer_from_configs(
    a: &FamilyConfig,
    b: &FamilyConfig,
) -> Result<CentralizerProduct> {
    let (ctx_a, a_ops) = a.build_ops()?;
    let (ctx_b, b_ops) = b.build_ops()?;
    ctx_a.check_same(&ctx_b)?;
    if a.order != b.order {
        return Err(DqError::OrderMismatch { left: a.order, right: b.order });
    }
    centralizer_star(&ctx_a, a.order, a_ops, b_ops)
}
