use std::cmp::Ordering;

/// A monomial (or derivative multi-index): sparse exponent vector indexed
/// by position in the owning [`Context`](super::Context).
///
/// Entries are sorted by variable index and never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    exps: Vec<(usize, u32)>,
}

impl Mono {
    pub fn one() -> Self {
        Mono { exps: Vec::new() }
    }

    pub fn var(idx: usize) -> Self {
        Mono { exps: vec![(idx, 1)] }
    }

    pub fn from_pairs(mut pairs: Vec<(usize, u32)>) -> Self {
        pairs.retain(|&(_, e)| e != 0);
        pairs.sort_by_key(|&(i, _)| i);
        let mut exps: Vec<(usize, u32)> = Vec::with_capacity(pairs.len());
        for (i, e) in pairs {
            match exps.last_mut() {
                Some((j, f)) if *j == i => *f += e,
                _ => exps.push((i, e)),
            }
        }
        Mono { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.exps
            .binary_search_by_key(&idx, |&(i, _)| i)
            .map(|p| self.exps[p].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => match i.cmp(&j) {
                    Ordering::Less => {
                        exps.push((i, e));
                        a.next();
                    }
                    Ordering::Greater => {
                        exps.push((j, f));
                        b.next();
                    }
                    Ordering::Equal => {
                        exps.push((i, e + f));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    exps.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    exps.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Mono { exps }
    }

    pub fn pow(&self, n: u32) -> Mono {
        if n == 0 {
            return Mono::one();
        }
        Mono { exps: self.exps.iter().map(|&(i, e)| (i, e * n)).collect() }
    }

    /// Divides by `other` if every exponent allows it.
    pub fn checked_div(&self, other: &Mono) -> Option<Mono> {
        for &(i, f) in &other.exps {
            if self.exponent(i) < f {
                return None;
            }
        }
        let mut pairs = Vec::with_capacity(self.exps.len());
        for &(i, e) in &self.exps {
            let rem = e - other.exponent(i);
            if rem > 0 {
                pairs.push((i, rem));
            }
        }
        Some(Mono { exps: pairs })
    }

    /// Lowers the exponent of `idx` by one; `None` when the variable is absent.
    pub fn step_down(&self, idx: usize) -> Option<(u32, Mono)> {
        let pos = self.exps.binary_search_by_key(&idx, |&(i, _)| i).ok()?;
        let e = self.exps[pos].1;
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(pos);
        } else {
            exps[pos].1 = e - 1;
        }
        Some((e, Mono { exps }))
    }

    /// Remaps variable indices (used when embedding into a union context).
    pub fn remap(&self, map: &[usize]) -> Mono {
        Mono::from_pairs(self.exps.iter().map(|&(i, e)| (map[i], e)).collect())
    }
}

/// Graded-lexicographic order: total degree first, then the earlier
/// variable with the larger exponent wins.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut a, mut b) = (self.exps.iter(), other.exps.iter());
        loop {
            match (a.next(), b.next()) {
                (Some(&(i, e)), Some(&(j, f))) => {
                    // The side whose next exponent sits on an earlier variable
                    // is lexicographically larger.
                    match i.cmp(&j) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match e.cmp(&f) {
                            Ordering::Equal => {}
                            ord => return ord,
                        },
                    }
                }
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x = Mono::var(0);
        let y = Mono::var(1);
        let x2 = x.pow(2);
        let xy = x.mul(&y);
        let y2 = y.pow(2);
        // degree dominates
        assert!(x2 > x);
        // same degree: x^2 > x*y > y^2
        assert!(x2 > xy);
        assert!(xy > y2);
        assert!(x > y);
    }

    #[test]
    fn mul_and_div() {
        let x = Mono::var(0);
        let y = Mono::var(1);
        let m = x.pow(3).mul(&y);
        assert_eq!(m.checked_div(&x.pow(2)).unwrap(), x.mul(&y));
        assert!(m.checked_div(&y.pow(2)).is_none());
        assert_eq!(m.total_degree(), 4);
    }

    #[test]
    fn step_down_tracks_exponent() {
        let m = Mono::var(0).pow(3);
        let (e, m2) = m.step_down(0).unwrap();
        assert_eq!(e, 3);
        assert_eq!(m2, Mono::var(0).pow(2));
        assert!(m.step_down(1).is_none());
    }
}
