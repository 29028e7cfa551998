use num::One;

use super::hpoly::HPoly;
use super::matrix::HbarMatrix;
use crate::symbolic::Rat;

/// Smith normal form `U * A * V = D` over Q[h], with the transforms, their
/// inverses and tracked determinants. The diagonal of `D` is monic and forms
/// a divisibility chain.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: HbarMatrix,
    pub u_inv: HbarMatrix,
    pub v: HbarMatrix,
    pub v_inv: HbarMatrix,
    pub d: HbarMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
    /// det(U), a nonzero rational (tracked through the elementary operations).
    pub det_u: Rat,
    pub det_v: Rat,
}

impl Snf {
    /// Nonzero diagonal entries (monic, divisibility chain).
    pub fn diagonal(&self) -> Vec<HPoly> {
        (0..self.rank).map(|i| self.d.at(i, i).clone()).collect()
    }

    /// The nonunit diagonal entries: the invariant factors of the cokernel.
    pub fn invariant_factors(&self) -> Vec<HPoly> {
        self.diagonal().into_iter().filter(|p| !p.is_one()).collect()
    }
}

struct Worker {
    m: HbarMatrix,
    u: HbarMatrix,
    u_inv: HbarMatrix,
    v: HbarMatrix,
    v_inv: HbarMatrix,
    det_u: Rat,
    det_v: Rat,
}

impl Worker {
    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
        self.det_u = -self.det_u.clone();
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
        self.det_v = -self.det_v.clone();
    }

    /// row_i += f * row_j
    fn row_add(&mut self, i: usize, j: usize, f: &HPoly) {
        self.m.add_row_multiple(i, j, f);
        self.u.add_row_multiple(i, j, f);
        self.u_inv.add_col_multiple(j, i, &f.neg());
    }

    /// col_i += f * col_j
    fn col_add(&mut self, i: usize, j: usize, f: &HPoly) {
        self.m.add_col_multiple(i, j, f);
        self.v.add_col_multiple(i, j, f);
        self.v_inv.add_row_multiple(j, i, &f.neg());
    }

    /// row_i *= c
    fn row_scale(&mut self, i: usize, c: &Rat) {
        self.m.scale_row(i, c);
        self.u.scale_row(i, c);
        let inv = Rat::one() / c.clone();
        for r in 0..self.u_inv.rows() {
            let v = self.u_inv.at(r, i).scale(&inv);
            self.u_inv.set(r, i, v);
        }
        self.det_u = self.det_u.clone() * c;
    }

    /// `(row_i, row_j) <- (x row_i + y row_j, z row_i + w row_j)`, `xw - yz = 1`.
    fn row_two(&mut self, i: usize, j: usize, x: &HPoly, y: &HPoly, z: &HPoly, w: &HPoly) {
        self.m.two_row_transform(i, j, x, y, z, w);
        self.u.two_row_transform(i, j, x, y, z, w);
        // inverse acts on columns of u_inv: adjugate of [[x,y],[z,w]]
        self.u_inv.two_col_transform(i, j, w, &z.neg(), &y.neg(), x);
    }

    /// `(col_i, col_j) <- (x col_i + y col_j, z col_i + w col_j)`, `xw - yz = 1`.
    fn col_two(&mut self, i: usize, j: usize, x: &HPoly, y: &HPoly, z: &HPoly, w: &HPoly) {
        self.m.two_col_transform(i, j, x, y, z, w);
        self.v.two_col_transform(i, j, x, y, z, w);
        self.v_inv.two_row_transform(i, j, w, &z.neg(), &y.neg(), x);
    }
}

/// Computes the Smith normal form by gcd-driven row/column elimination.
pub fn snf(a: &HbarMatrix) -> Snf {
    let rows = a.rows();
    let cols = a.cols();
    let mut w = Worker {
        m: a.clone(),
        u: HbarMatrix::identity(rows),
        u_inv: HbarMatrix::identity(rows),
        v: HbarMatrix::identity(cols),
        v_inv: HbarMatrix::identity(cols),
        det_u: Rat::one(),
        det_v: Rat::one(),
    };

    let mut n = 0;
    'outer: while n < rows && n < cols {
        // Bring a minimal-degree nonzero entry of the trailing block to (n, n);
        // starting from a low-degree pivot keeps the gcd chains short.
        let mut best: Option<(usize, usize, usize)> = None;
        for r in n..rows {
            for c in n..cols {
                if let Some(d) = w.m.at(r, c).degree() {
                    if best.map(|(bd, _, _)| d < bd).unwrap_or(true) {
                        best = Some((d, r, c));
                    }
                }
            }
        }
        let Some((_, r, c)) = best else { break 'outer };
        w.row_swap(n, r);
        w.col_swap(n, c);

        loop {
            // Clear the pivot row.
            let mut dirty = false;
            for c in n + 1..cols {
                if w.m.at(n, c).is_zero() {
                    continue;
                }
                let a = w.m.at(n, n).clone();
                let b = w.m.at(n, c).clone();
                let (q, r) = b.div_rem(&a);
                if r.is_zero() {
                    w.col_add(c, n, &q.neg());
                } else {
                    let (g, s, t) = a.xgcd(&b);
                    let (bq, _) = b.div_rem(&g);
                    let (aq, _) = a.div_rem(&g);
                    w.col_two(n, c, &s, &t, &bq.neg(), &aq);
                    dirty = true;
                }
            }
            // Clear the pivot column.
            for r in n + 1..rows {
                if w.m.at(r, n).is_zero() {
                    continue;
                }
                let a = w.m.at(n, n).clone();
                let b = w.m.at(r, n).clone();
                let (q, rem) = b.div_rem(&a);
                if rem.is_zero() {
                    w.row_add(r, n, &q.neg());
                } else {
                    let (g, s, t) = a.xgcd(&b);
                    let (bq, _) = b.div_rem(&g);
                    let (aq, _) = a.div_rem(&g);
                    w.row_two(n, r, &s, &t, &bq.neg(), &aq);
                    dirty = true;
                }
            }
            let row_clear = (n + 1..cols).all(|c| w.m.at(n, c).is_zero());
            let col_clear = (n + 1..rows).all(|r| w.m.at(r, n).is_zero());
            if row_clear && col_clear {
                if dirty {
                    continue;
                }
                // Pivot must divide the whole trailing block; if not, fold the
                // offending row into the pivot row and keep reducing.
                let pivot = w.m.at(n, n).clone();
                let offender = (n + 1..rows).find(|&r| {
                    (n + 1..cols).any(|c| !pivot.divides(w.m.at(r, c)))
                });
                match offender {
                    Some(r) => w.row_add(n, r, &HPoly::one()),
                    None => break,
                }
            }
        }

        // Monic pivot.
        let lead = w.m.at(n, n).leading();
        if !lead.is_one() {
            w.row_scale(n, &(Rat::one() / lead));
        }
        n += 1;
    }

    Snf {
        rank: n,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        d: w.m,
        det_u: w.det_u,
        det_v: w.det_v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::matrix::HbarMatrix;

    fn hp(s: &str) -> HPoly {
        HPoly::parse(s).unwrap()
    }

    fn mat(rows: Vec<Vec<&str>>) -> HbarMatrix {
        HbarMatrix::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(hp).collect()).collect(),
        )
        .unwrap()
    }

    fn check_contract(a: &HbarMatrix, s: &Snf) {
        // U A V = D
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        // transforms invert exactly
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), HbarMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), HbarMatrix::identity(a.cols()));
        // diagonal, monic, divisibility chain
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.at(i, j).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[0].divides(&w[1]), "{} does not divide {}", w[0], w[1]);
        }
        for d in &diag {
            assert!(d.leading().is_one());
        }
    }

    #[test]
    fn already_diagonal() {
        let a = mat(vec![vec!["h", "0"], vec!["0", "h^2"]]);
        let s = snf(&a);
        check_contract(&a, &s);
        assert_eq!(s.d, a);
    }

    #[test]
    fn unit_entry_absorbs_pivot() {
        // [[h, 1], [0, h]] -> diag(1, h^2)
        let a = mat(vec![vec!["h", "1"], vec!["0", "h"]]);
        let s = snf(&a);
        check_contract(&a, &s);
        assert_eq!(s.diagonal(), vec![hp("1"), hp("h^2")]);
        assert_eq!(s.invariant_factors(), vec![hp("h^2")]);
    }

    #[test]
    fn zero_matrix() {
        let a = HbarMatrix::zero(3, 2);
        let s = snf(&a);
        check_contract(&a, &s);
        assert_eq!(s.rank, 0);
        assert_eq!(s.u, HbarMatrix::identity(3));
        assert_eq!(s.v, HbarMatrix::identity(2));
    }

    #[test]
    fn mixed_entries() {
        let a = mat(vec![
            vec!["h^2", "h"],
            vec!["h", "1"],
        ]);
        let s = snf(&a);
        check_contract(&a, &s);
        // rank 1: rows are proportional over the fraction field
        assert_eq!(s.rank, 1);
        assert_eq!(s.diagonal(), vec![hp("1")]);
    }

    #[test]
    fn determinant_product_matches() {
        let a = mat(vec![vec!["h", "1"], vec!["0", "h"]]);
        let s = snf(&a);
        // det(D) = det(U) det(A) det(V): h^2 = det_u * h^2 * det_v
        let det_d = s.d.det_small().unwrap();
        let det_a = a.det_small().unwrap();
        let scaled = det_a.scale(&(s.det_u.clone() * s.det_v.clone()));
        assert_eq!(det_d, scaled);
    }
}
