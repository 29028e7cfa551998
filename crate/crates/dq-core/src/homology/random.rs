//! Random free complexes for the property suites: block sums of elementary
//! two-term complexes and free summands, conjugated by random unimodular
//! basis changes so nothing stays block diagonal.

use super::complex::FreeComplex;
use super::hpoly::HPoly;
use super::matrix::HbarMatrix;
use crate::sample::Sampler;
use crate::symbolic::Rat;

/// A unimodular matrix together with its inverse, built from a random walk
/// of elementary operations.
fn random_unimodular(s: &mut Sampler, n: usize, max_h_degree: usize, steps: usize) -> (HbarMatrix, HbarMatrix) {
    let mut t = HbarMatrix::identity(n);
    let mut t_inv = HbarMatrix::identity(n);
    if n < 2 {
        return (t, t_inv);
    }
    for _ in 0..steps {
        let i = s.usize_in(0, n - 1);
        let mut j = s.usize_in(0, n - 1);
        if i == j {
            j = (j + 1) % n;
        }
        match s.usize_in(0, 2) {
            0 => {
                // t <- L t with L = swap(i, j); t_inv <- t_inv L^-1
                t.swap_rows(i, j);
                t_inv.swap_cols(i, j);
            }
            1 => {
                let f = s.hpoly(max_h_degree);
                // t <- (I + f E_ij) t
                t.add_row_multiple(i, j, &f);
                t_inv.add_col_multiple(j, i, &f.neg());
            }
            _ => {
                let c = s.rat_nonzero();
                t.scale_row(i, &c);
                let inv = Rat::new(1.into(), 1.into()) / c;
                for r in 0..n {
                    let v = t_inv.at(r, i).scale(&inv);
                    t_inv.set(r, i, v);
                }
            }
        }
    }
    (t, t_inv)
}

/// Which torsion the elementary blocks may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexClass {
    /// Arbitrary nonzero block maps, including prime-to-h torsion like h - 1.
    General,
    /// Torsion blocks are multiples of h, so every homology class is either
    /// free or h-divisible torsion. The graded reduction sees all of the
    /// homology on this class, so exactness transfers in both directions.
    HAdapted,
    /// Every block is invertible; the complex is exact.
    Exact,
}

/// Random complex on `degrees` degrees with per-degree rank at most
/// `max_rank` and entry h-degree at most `max_h_degree`.
pub fn random_complex(
    s: &mut Sampler,
    degrees: usize,
    max_rank: usize,
    max_h_degree: usize,
    class: ComplexClass,
) -> FreeComplex {
    assert!(degrees >= 2);
    let mut ranks = vec![0usize; degrees];
    // entries[(a, i, j)] of the block differential from degree a
    let mut blocks: Vec<Vec<(usize, usize, HPoly)>> = vec![Vec::new(); degrees - 1];

    // Elementary two-term blocks R --p--> R.
    let n_blocks = s.usize_in(1, (degrees - 1) * 2);
    for _ in 0..n_blocks {
        let a = s.usize_in(0, degrees - 2);
        if ranks[a] >= max_rank || ranks[a + 1] >= max_rank {
            continue;
        }
        let p = match class {
            ComplexClass::Exact => HPoly::constant(s.rat_nonzero()),
            ComplexClass::General => match s.usize_in(0, 3) {
                0 => HPoly::zero(),
                1 => HPoly::constant(s.rat_nonzero()),
                _ => loop {
                    let q = s.hpoly(max_h_degree);
                    if !q.is_zero() {
                        break q;
                    }
                },
            },
            ComplexClass::HAdapted => match s.usize_in(0, 3) {
                0 => HPoly::zero(),
                1 => HPoly::constant(s.rat_nonzero()),
                _ => loop {
                    let q = s.hpoly(max_h_degree.saturating_sub(1));
                    if !q.is_zero() {
                        break q.mul(&HPoly::h_pow(1));
                    }
                },
            },
        };
        let i = ranks[a + 1];
        let j = ranks[a];
        ranks[a] += 1;
        ranks[a + 1] += 1;
        blocks[a].push((i, j, p));
    }

    // A few free summands in random degrees.
    if class != ComplexClass::Exact {
        for _ in 0..s.usize_in(0, 2) {
            let a = s.usize_in(0, degrees - 1);
            if ranks[a] < max_rank {
                ranks[a] += 1;
            }
        }
    }
    for r in ranks.iter_mut() {
        if *r == 0 {
            *r = if class == ComplexClass::Exact { 0 } else { usize::from(s.usize_in(0, 1) == 0) };
        }
    }

    let mut diffs: Vec<HbarMatrix> = (0..degrees - 1)
        .map(|a| {
            let mut m = HbarMatrix::zero(ranks[a + 1], ranks[a]);
            for (i, j, p) in &blocks[a] {
                m.set(*i, *j, p.clone());
            }
            m
        })
        .collect();

    // Conjugate by random unimodular changes of basis in every degree.
    let transforms: Vec<(HbarMatrix, HbarMatrix)> = ranks
        .iter()
        .map(|&n| random_unimodular(s, n, max_h_degree.min(1), 2 * n))
        .collect();
    for a in 0..degrees - 1 {
        let (t_next, _) = &transforms[a + 1];
        let (_, t_inv) = &transforms[a];
        diffs[a] = t_next.mul(&diffs[a]).expect("shape").mul(t_inv).expect("shape");
    }

    FreeComplex::new(0, ranks, diffs).expect("block construction is a complex")
}

/// Random dense matrix with entry h-degree at most `max_h_degree`.
pub fn random_matrix(s: &mut Sampler, rows: usize, cols: usize, max_h_degree: usize) -> HbarMatrix {
    HbarMatrix::from_fn(rows, cols, |_, _| s.hpoly(max_h_degree))
}

/// A fresh random change of basis in every degree: the result is
/// isomorphic to the input, so every homology summary must agree.
pub fn conjugate(s: &mut Sampler, c: &FreeComplex, max_h_degree: usize) -> FreeComplex {
    let degrees: Vec<i64> = c.degrees().collect();
    let transforms: Vec<(HbarMatrix, HbarMatrix)> = degrees
        .iter()
        .map(|&a| {
            let n = c.rank(a);
            random_unimodular(s, n, max_h_degree, 2 * n)
        })
        .collect();
    let ranks: Vec<usize> = degrees.iter().map(|&a| c.rank(a)).collect();
    let diffs: Vec<HbarMatrix> = degrees[..degrees.len() - 1]
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let d = c.differential(a).expect("in range");
            transforms[i + 1]
                .0
                .mul(d)
                .expect("shape")
                .mul(&transforms[i].1)
                .expect("shape")
        })
        .collect();
    FreeComplex::new(c.min_degree(), ranks, diffs).expect("conjugation preserves d.d = 0")
}
