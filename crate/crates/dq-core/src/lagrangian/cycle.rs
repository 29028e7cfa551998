use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{DqError, Result};
use crate::symbolic::{format_rat, parse_poly, parse_rat, Context, Poly, Rat};

/// The base coordinate context for cycles: a single variable `x`; the fiber
/// coordinate is implicit.
pub fn base_context() -> Context {
    Context::new(vec!["x"]).expect("valid context")
}

/// A smooth Lagrangian component of the cotangent plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LagComponent {
    /// `u = 0`
    ZeroSection,
    /// `u = p(x)` for a univariate polynomial section
    GraphOfSection(Poly),
    /// `x = a`
    Fiber(Rat),
}

impl LagComponent {
    /// Graphs store their section canonically; the zero graph is the zero
    /// section.
    pub fn graph(p: Poly) -> LagComponent {
        if p.is_zero() {
            LagComponent::ZeroSection
        } else {
            LagComponent::GraphOfSection(p)
        }
    }

    /// The section polynomial of a horizontal component.
    fn section(&self) -> Option<Poly> {
        match self {
            LagComponent::ZeroSection => Some(Poly::zero(&base_context())),
            LagComponent::GraphOfSection(p) => Some(p.clone()),
            LagComponent::Fiber(_) => None,
        }
    }
}

impl fmt::Display for LagComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LagComponent::ZeroSection => write!(f, "zero_section"),
            LagComponent::GraphOfSection(p) => write!(f, "graph(u = {p})"),
            LagComponent::Fiber(a) => write!(f, "fiber(x = {})", format_rat(a)),
        }
    }
}

/// An integer-weighted formal sum of distinct components.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LagCycle {
    components: Vec<(LagComponent, i64)>,
}

impl LagCycle {
    pub fn zero() -> Self {
        LagCycle::default()
    }

    pub fn new(components: Vec<(LagComponent, i64)>) -> Self {
        let mut out = LagCycle::zero();
        for (c, m) in components {
            out.add_component(c, m);
        }
        out
    }

    pub fn add_component(&mut self, c: LagComponent, mult: i64) {
        if mult == 0 {
            return;
        }
        for (existing, m) in &mut self.components {
            if *existing == c {
                *m += mult;
                self.components.retain(|(_, m)| *m != 0);
                return;
            }
        }
        self.components.push((c, mult));
    }

    pub fn components(&self) -> &[(LagComponent, i64)] {
        &self.components
    }

    pub fn scale(&self, k: i64) -> LagCycle {
        if k == 0 {
            return LagCycle::zero();
        }
        LagCycle {
            components: self.components.iter().map(|(c, m)| (c.clone(), m * k)).collect(),
        }
    }

    pub fn add(&self, other: &LagCycle) -> LagCycle {
        let mut out = self.clone();
        for (c, m) in &other.components {
            out.add_component(c.clone(), *m);
        }
        out
    }
}

/// `[Lambda]` with multiplicity one.
pub fn canonical_cycle(component: LagComponent) -> LagCycle {
    LagCycle::new(vec![(component, 1)])
}

/// Pairwise intersection multiplicity of two smooth components. Horizontal
/// components meet in the zeros of the difference of their sections, all
/// counted over the algebraic closure, so the total is the degree.
fn component_intersection(a: &LagComponent, b: &LagComponent) -> Result<i64> {
    use LagComponent::*;
    match (a, b) {
        (Fiber(p), Fiber(q)) => {
            if p == q {
                Err(DqError::NonProperIntersection(format!(
                    "{a} and {b} coincide; the intersection is not compact"
                )))
            } else {
                Ok(0)
            }
        }
        (Fiber(_), ZeroSection | GraphOfSection(_)) => Ok(1),
        (ZeroSection | GraphOfSection(_), Fiber(_)) => Ok(1),
        _ => {
            let p = a.section().expect("horizontal");
            let q = b.section().expect("horizontal");
            let diff = p.sub(&q)?;
            if diff.is_zero() {
                return Err(DqError::NonProperIntersection(format!(
                    "{a} and {b} coincide; the intersection is not compact"
                )));
            }
            // number of zeros of the difference over the closure, counted
            // with multiplicity
            Ok(diff.total_degree() as i64)
        }
    }
}

/// Bilinear extension of the component pairing over multiplicities.
pub fn intersection_number(c1: &LagCycle, c2: &LagCycle) -> Result<i64> {
    let mut total = 0;
    for (a, m) in c1.components() {
        for (b, n) in c2.components() {
            total += m * n * component_intersection(a, b)?;
        }
    }
    Ok(total)
}

/// The index pairing equals the cycle intersection number with the
/// +1-per-transversal-point convention.
pub fn euler_index(c1: &LagCycle, c2: &LagCycle) -> Result<i64> {
    intersection_number(c1, c2)
}

/// The fiberwise translation `(x, u) -> (x, u + q(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShearKernel {
    q: Poly,
}

impl ShearKernel {
    pub fn new(q: Poly) -> Result<Self> {
        base_context().check_same(q.context())?;
        Ok(ShearKernel { q })
    }

    pub fn shift(&self) -> &Poly {
        &self.q
    }
}

/// Componentwise image of a cycle under the shear: horizontal sections are
/// translated, fibers are preserved, multiplicities carry over.
pub fn convolve(kernel: &ShearKernel, cycle: &LagCycle) -> Result<LagCycle> {
    let mut out = LagCycle::zero();
    for (c, m) in cycle.components() {
        let image = match c {
            LagComponent::Fiber(a) => LagComponent::Fiber(a.clone()),
            other => {
                let p = other.section().expect("horizontal");
                LagComponent::graph(p.add(&kernel.q)?)
            }
        };
        out.add_component(image, *m);
    }
    Ok(out)
}

/// JSON shape of a cycle file.
#[derive(Debug, Serialize, Deserialize)]
pub struct CycleFile {
    pub components: Vec<CycleComponentFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CycleComponentFile {
    ZeroSection { mult: i64 },
    Graph { p: String, mult: i64 },
    Fiber { a: String, mult: i64 },
}

impl LagCycle {
    pub fn to_file(&self) -> CycleFile {
        CycleFile {
            components: self
                .components
                .iter()
                .map(|(c, m)| match c {
                    LagComponent::ZeroSection => CycleComponentFile::ZeroSection { mult: *m },
                    LagComponent::GraphOfSection(p) => {
                        CycleComponentFile::Graph { p: p.to_string(), mult: *m }
                    }
                    LagComponent::Fiber(a) => {
                        CycleComponentFile::Fiber { a: format_rat(a), mult: *m }
                    }
                })
                .collect(),
        }
    }

    pub fn from_file(file: &CycleFile) -> Result<Self> {
        let ctx = base_context();
        let mut out = LagCycle::zero();
        for c in &file.components {
            match c {
                CycleComponentFile::ZeroSection { mult } => {
                    out.add_component(LagComponent::ZeroSection, *mult)
                }
                CycleComponentFile::Graph { p, mult } => {
                    out.add_component(LagComponent::graph(parse_poly(p, &ctx)?), *mult)
                }
                CycleComponentFile::Fiber { a, mult } => {
                    out.add_component(LagComponent::Fiber(parse_rat(a)?), *mult)
                }
            }
        }
        Ok(out)
    }
}

/// The derivative of a potential: the section whose graph is the
/// deformation of the zero section by the potential's differential.
pub fn gradient_section(potential: &Poly) -> Poly {
    potential.partial(0)
}
