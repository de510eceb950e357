//! Sparse row echelon forms: modulo a 61-bit prime for fast rank and
//! row selection, and over the rationals with row provenance for
//! certificates.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Rational;

/// `2^61 − 1`.
pub const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64) -> u64 {
    assert!(a % PRIME != 0, "no inverse of zero");
    pow_mod(a, PRIME - 2)
}

pub fn int_mod(n: i64) -> u64 {
    n.rem_euclid(PRIME as i64) as u64
}

/// Image of a rational whose denominator is prime to [`PRIME`].
pub fn rational_mod(q: &Rational) -> u64 {
    let p = num_bigint::BigInt::from(PRIME);
    let reduce = |x: &num_bigint::BigInt| {
        let r = x % &p;
        let r = if r.is_negative() { r + &p } else { r };
        r.to_u64().expect("residue fits")
    };
    mul_mod(reduce(q.numer()), inv_mod(reduce(q.denom())))
}

pub type ModRow = Vec<(u32, u64)>;

/// Row echelon form over `F_p`; each stored row has leading coefficient 1.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    ncols: usize,
    pivot_of: Vec<Option<u32>>,
    rows: Vec<ModRow>,
}

impl ModEchelon {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, pivot_of: vec![None; ncols], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after elimination by the stored rows.
    pub fn reduce(&self, v: &[(u32, u64)]) -> ModRow {
        let mut dense = vec![0u64; self.ncols];
        let mut heap = BinaryHeap::new();
        for &(c, x) in v {
            let c = c as usize;
            if dense[c] == 0 {
                heap.push(Reverse(c as u32));
            }
            dense[c] = (dense[c] + x) % PRIME;
        }
        let mut out = Vec::new();
        let mut last = u32::MAX;
        while let Some(Reverse(c)) = heap.pop() {
            if c == last {
                continue;
            }
            last = c;
            let x = dense[c as usize];
            if x == 0 {
                continue;
            }
            match self.pivot_of[c as usize] {
                Some(r) => {
                    for &(d, y) in &self.rows[r as usize] {
                        let d = d as usize;
                        if dense[d] == 0 {
                            heap.push(Reverse(d as u32));
                        }
                        dense[d] = (dense[d] + PRIME - mul_mod(x, y)) % PRIME;
                    }
                }
                None => out.push((c, x)),
            }
        }
        out
    }

    /// Adds `v` if it is independent of the stored rows.
    pub fn insert(&mut self, v: &[(u32, u64)]) -> bool {
        let r = self.reduce(v);
        let Some(&(lead, x)) = r.first() else { return false };
        let inv = inv_mod(x);
        let row: ModRow = r.into_iter().map(|(c, y)| (c, mul_mod(y, inv))).collect();
        self.pivot_of[lead as usize] = Some(self.rows.len() as u32);
        self.rows.push(row);
        true
    }
}

pub type QRow = BTreeMap<u32, Rational>;

fn axpy(target: &mut QRow, factor: &Rational, row: &QRow) {
    for (c, y) in row {
        let e = target.entry(*c).or_insert_with(Rational::zero);
        *e -= factor * y;
        if e.is_zero() {
            target.remove(c);
        }
    }
}

fn axpy_prov(target: &mut BTreeMap<usize, Rational>, factor: &Rational, row: &BTreeMap<usize, Rational>) {
    for (c, y) in row {
        let e = target.entry(*c).or_insert_with(Rational::zero);
        *e -= factor * y;
        if e.is_zero() {
            target.remove(c);
        }
    }
}

/// Exact row echelon form over ℚ. Each stored row remembers the
/// combination of inserted rows (by caller-supplied id) it equals.
#[derive(Clone, Debug, Default)]
pub struct ExactEchelon {
    pivots: BTreeMap<u32, usize>,
    rows: Vec<(QRow, BTreeMap<usize, Rational>)>,
}

/// Result of reducing a vector: what is left, and the combination of
/// inserted rows that was subtracted.
pub struct Reduction {
    pub residual: QRow,
    pub subtracted: BTreeMap<usize, Rational>,
}

impl ExactEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &QRow) -> Reduction {
        let mut v = v.clone();
        let mut prov = BTreeMap::new();
        let mut cursor = 0u32;
        loop {
            let Some((&c, x)) = v.range(cursor..).next() else { break };
            match self.pivots.get(&c) {
                Some(&r) => {
                    let factor = x.clone();
                    let (row, rp) = &self.rows[r];
                    axpy(&mut v, &factor, row);
                    // prov tracks −(what was subtracted); flip at the end
                    axpy_prov(&mut prov, &factor, rp);
                }
                None => cursor = c + 1,
            }
        }
        let subtracted = prov.into_iter().map(|(k, x)| (k, -x)).collect();
        Reduction { residual: v, subtracted }
    }

    /// Inserts row `id`; returns whether it was independent.
    pub fn insert(&mut self, id: usize, v: &QRow) -> bool {
        let red = self.reduce(v);
        let Some((&lead, x)) = red.residual.iter().next() else { return false };
        let inv = x.recip();
        let row: QRow = red.residual.iter().map(|(c, y)| (*c, y * &inv)).collect();
        // row = (v − subtracted)/x
        let mut prov: BTreeMap<usize, Rational> = red.subtracted.into_iter().map(|(k, y)| (k, -y * &inv)).collect();
        let e = prov.entry(id).or_insert_with(Rational::zero);
        *e += &inv;
        if e.is_zero() {
            prov.remove(&id);
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push((row, prov));
        true
    }

    /// Writes `v` as a combination of inserted rows, if it lies in their span.
    pub fn express(&self, v: &QRow) -> Option<BTreeMap<usize, Rational>> {
        let red = self.reduce(v);
        red.residual.is_empty().then_some(red.subtracted)
    }

    /// A functional vanishing on the row space but not on `v`, as sparse
    /// coefficients over columns; `None` if `v` is in the span.
    pub fn separating_functional(&self, v: &QRow) -> Option<QRow> {
        // reduced row echelon form
        let mut rref: Vec<(u32, QRow)> = self.pivots.iter().map(|(&c, &r)| (c, self.rows[r].0.clone())).collect();
        for i in (0..rref.len()).rev() {
            let (ci, rowi) = rref[i].clone();
            for (_, rowj) in rref.iter_mut().take(i) {
                if let Some(x) = rowj.get(&ci).cloned() {
                    axpy(rowj, &x, &rowi);
                }
            }
        }
        let mut residual = v.clone();
        for (c, row) in &rref {
            if let Some(x) = residual.get(c).cloned() {
                axpy(&mut residual, &x, row);
            }
        }
        let (&f, _) = residual.iter().next()?;
        // φ(w) = w_f − Σ_p (E_p)_f w_p
        let mut phi = QRow::new();
        phi.insert(f, Rational::one());
        for (c, row) in &rref {
            if let Some(x) = row.get(&f) {
                phi.insert(*c, -x.clone());
            }
        }
        Some(phi)
    }
}

pub fn dot(phi: &QRow, v: &QRow) -> Rational {
    let (small, large) = if phi.len() <= v.len() { (phi, v) } else { (v, phi) };
    small.iter().filter_map(|(c, x)| large.get(c).map(|y| x * y)).fold(Rational::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(entries: &[(u32, i64)]) -> QRow {
        entries.iter().map(|&(c, x)| (c, rat(x, 1))).collect()
    }

    #[test]
    fn modular_inverse() {
        for a in [1u64, 2, 3, 12345, PRIME - 1] {
            assert_eq!(mul_mod(a, inv_mod(a)), 1);
        }
        assert_eq!(rational_mod(&rat(1, 2)), inv_mod(2));
        assert_eq!(rational_mod(&rat(-1, 1)), PRIME - 1);
    }

    #[test]
    fn modular_rank() {
        let mut e = ModEchelon::new(4);
        assert!(e.insert(&[(0, 1), (1, 1)]));
        assert!(e.insert(&[(1, 1), (2, 1)]));
        assert!(!e.insert(&[(0, 1), (2, PRIME - 1)]));
        assert!(e.insert(&[(3, 5)]));
        assert_eq!(e.rank(), 3);
        assert!(e.reduce(&[(0, 2), (1, 4), (2, 2)]).is_empty());
    }

    #[test]
    fn exact_expression_and_functional() {
        let mut e = ExactEchelon::new();
        let r0 = q(&[(0, 1), (1, 2)]);
        let r1 = q(&[(1, 1), (2, -1)]);
        assert!(e.insert(10, &r0));
        assert!(e.insert(11, &r1));
        assert!(!e.insert(12, &q(&[(0, 2), (1, 5), (2, -1)])));
        let target = q(&[(0, 3), (1, 7), (2, -1)]);
        let comb = e.express(&target).unwrap();
        assert_eq!(comb, BTreeMap::from([(10, rat(3, 1)), (11, rat(1, 1))]));
        let outside = q(&[(2, 1)]);
        assert!(e.express(&outside).is_none());
        let phi = e.separating_functional(&outside).unwrap();
        assert!(dot(&phi, &r0).is_zero());
        assert!(dot(&phi, &r1).is_zero());
        assert!(!dot(&phi, &outside).is_zero());
    }
}
