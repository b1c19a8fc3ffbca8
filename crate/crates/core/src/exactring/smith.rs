//! Smith normal form over the local ring `Z/p^N`.

use super::arith::{inv_mod, mul_mod, sub_mod, valuation_capped};
use super::matrix::ExactMatrix;
use super::scalar::{Ring, Valuation};
use crate::error::{Error, Result};

/// `left * m * right = diag(p^e_1, p^e_2, ...)` with `left_inv = left^-1`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub exponents: Vec<Valuation>,
    pub left: ExactMatrix,
    pub left_inv: ExactMatrix,
    pub right: ExactMatrix,
}

impl SmithForm {
    /// Number of elementary divisors that are nonzero at this precision.
    pub fn rank(&self) -> usize {
        self.exponents.iter().filter(|e| e.is_finite()).count()
    }
}

fn expect_padic(m: &ExactMatrix) -> Result<(u64, u32)> {
    match m.ring() {
        Ring::Zpn { p, n } => Ok((p, n)),
        Ring::Fp { .. } => Err(Error::ExpectedPadic),
    }
}

/// Local elimination: pivot on an entry of least valuation (ties go to the first
/// entry scanning each column top to bottom, columns left to right), clear its
/// row and column, and record the valuation as an elementary divisor.
pub fn smith_form(m: &ExactMatrix) -> Result<SmithForm> {
    let (p, n) = expect_padic(m)?;
    let ring = m.ring();
    let q = ring.modulus();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = ExactMatrix::identity(ring, rows);
    let mut left_inv = ExactMatrix::identity(ring, rows);
    let mut right = ExactMatrix::identity(ring, cols);
    let mut exps = Vec::new();

    for t in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for j in t..cols {
            for i in t..rows {
                let x = a.get(i, j);
                if x == 0 {
                    continue;
                }
                let v = valuation_capped(x, p, n);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            exps.extend((t..rows.min(cols)).map(|_| Valuation::AtLeast(n)));
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        left_inv.swap_cols(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        let pv = p.pow(v);
        let unit = a.get(t, t) / pv;
        let uinv = inv_mod(unit % q, q).expect("pivot cofactor is a unit");

        // Normalize the pivot row so the pivot becomes exactly p^v.
        scale_row(&mut a, t, uinv);
        scale_row(&mut left, t, uinv);
        scale_col(&mut left_inv, t, unit);

        for i in t + 1..rows {
            let x = a.get(i, t);
            if x == 0 {
                continue;
            }
            let f = x / pv; // a_it = f * p^v mod p^N
            row_axpy(&mut a, i, t, f);
            row_axpy(&mut left, i, t, f);
            // left_inv <- left_inv * (I + f e_it): column t += f * column i
            col_axpy_neg(&mut left_inv, t, i, f);
        }
        for j in t + 1..cols {
            let x = a.get(t, j);
            if x == 0 {
                continue;
            }
            let f = x / pv;
            col_axpy(&mut a, j, t, f);
            col_axpy(&mut right, j, t, f);
        }
        exps.push(Valuation::Finite(v));
    }
    Ok(SmithForm { exponents: exps, left, left_inv, right })
}

fn scale_row(m: &mut ExactMatrix, r: usize, s: u64) {
    let q = m.ring().modulus();
    for j in 0..m.cols() {
        let x = m.get(r, j);
        m.set(r, j, mul_mod(x, s, q));
    }
}

fn scale_col(m: &mut ExactMatrix, c: usize, s: u64) {
    let q = m.ring().modulus();
    for i in 0..m.rows() {
        let x = m.get(i, c);
        m.set(i, c, mul_mod(x, s, q));
    }
}

// row_i -= f * row_t
fn row_axpy(m: &mut ExactMatrix, i: usize, t: usize, f: u64) {
    let q = m.ring().modulus();
    for j in 0..m.cols() {
        let y = m.get(t, j);
        if y != 0 {
            let x = m.get(i, j);
            m.set(i, j, sub_mod(x, mul_mod(f, y, q), q));
        }
    }
}

// col_j -= f * col_t
fn col_axpy(m: &mut ExactMatrix, j: usize, t: usize, f: u64) {
    let q = m.ring().modulus();
    for i in 0..m.rows() {
        let y = m.get(i, t);
        if y != 0 {
            let x = m.get(i, j);
            m.set(i, j, sub_mod(x, mul_mod(f, y, q), q));
        }
    }
}

// col_t += f * col_i
fn col_axpy_neg(m: &mut ExactMatrix, t: usize, i: usize, f: u64) {
    let q = m.ring().modulus();
    for r in 0..m.rows() {
        let y = m.get(r, i);
        if y != 0 {
            let x = m.get(r, t);
            m.set(r, t, (x + mul_mod(f, y, q)) % q);
        }
    }
}

/// Elementary divisor exponents of a matrix over `Z/p^N`, sorted ascending.
pub fn padic_elementary_divisors(m: &ExactMatrix) -> Result<Vec<Valuation>> {
    let mut e = smith_form(m)?.exponents;
    e.sort();
    Ok(e)
}

/// A `Z_p`-sublattice of `Z_p^ambient`, truncated at precision `N`.
///
/// Built from a generating set; keeps the Smith transform so that membership
/// and coordinates can be read off directly.
#[derive(Clone, Debug)]
pub struct Lattice {
    ring: Ring,
    ambient: usize,
    exps: Vec<u32>,
    basis: Vec<Vec<u64>>,
    left: ExactMatrix,
}

impl Lattice {
    pub fn from_generators(ring: Ring, ambient: usize, gens: &[Vec<u64>]) -> Result<Self> {
        let g = ExactMatrix::from_columns(ring, ambient, gens)?;
        let sf = smith_form(&g)?;
        let q = ring.modulus();
        let p = ring.prime();
        let mut exps = Vec::new();
        let mut basis = Vec::new();
        for (i, e) in sf.exponents.iter().enumerate() {
            if let Valuation::Finite(v) = *e {
                let pv = p.pow(v);
                exps.push(v);
                basis.push(sf.left_inv.column(i).iter().map(|&x| mul_mod(x, pv, q)).collect());
            }
        }
        Ok(Lattice { ring, ambient, exps, basis, left: sf.left })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    /// Exponents `e_i` of the diagonal form; the lattice is saturated iff all are zero.
    pub fn divisor_exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Coordinates of `v` in [`Lattice::basis`], reduced mod `p`.
    ///
    /// Requires one digit of precision to survive the division by `p^e_i`.
    pub fn coords_mod_p(&self, v: &[u64]) -> Result<Vec<u64>> {
        let n = self.ring.precision();
        let p = self.ring.prime();
        let w = self.left.mul_vec(v)?;
        let mut out = Vec::with_capacity(self.exps.len());
        for (i, &e) in self.exps.iter().enumerate() {
            if e >= n {
                return Err(Error::Hypothesis("no precision left for coordinates".into()));
            }
            let pe = p.pow(e);
            if w[i] % pe != 0 {
                return Err(Error::NotMember(format!("vector leaves the lattice (coordinate {i})")));
            }
            out.push((w[i] / pe) % p);
        }
        if w[self.exps.len()..].iter().any(|&x| x != 0) {
            return Err(Error::NotMember("vector leaves the rational span".into()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zpn(p: u64, n: u32, rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(Ring::zpn(p, n).unwrap(), rows).unwrap()
    }

    #[test]
    fn divisor_examples() {
        let d = zpn(5, 5, &[vec![1, 0, 0], vec![0, 5, 0], vec![0, 0, 25]]);
        assert_eq!(
            padic_elementary_divisors(&d).unwrap(),
            vec![Valuation::Finite(0), Valuation::Finite(1), Valuation::Finite(2)]
        );
        let z = zpn(5, 3, &[vec![0, 0], vec![0, 0]]);
        assert_eq!(
            padic_elementary_divisors(&z).unwrap(),
            vec![Valuation::AtLeast(3), Valuation::AtLeast(3)]
        );
        let m = zpn(5, 4, &[vec![5, 1], vec![0, 5]]);
        assert_eq!(
            padic_elementary_divisors(&m).unwrap(),
            vec![Valuation::Finite(0), Valuation::Finite(2)]
        );
    }

    #[test]
    fn transforms_diagonalize() {
        let m = zpn(3, 4, &[vec![3, 6, 9], vec![1, 3, 0], vec![2, 0, 27]]);
        let sf = smith_form(&m).unwrap();
        let d = sf.left.mul(&m).unwrap().mul(&sf.right).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = match (i == j, sf.exponents[i]) {
                    (true, Valuation::Finite(v)) => 3u64.pow(v),
                    _ => 0,
                };
                assert_eq!(d.get(i, j), expect, "entry ({i},{j})");
            }
        }
        let id = sf.left.mul(&sf.left_inv).unwrap();
        assert_eq!(id, ExactMatrix::identity(m.ring(), 3));
    }

    #[test]
    fn fp_tag_rejected() {
        let m = ExactMatrix::identity(Ring::fp(5).unwrap(), 2);
        assert!(matches!(padic_elementary_divisors(&m), Err(Error::ExpectedPadic)));
    }

    #[test]
    fn lattice_coordinates() {
        let ring = Ring::zpn(5, 4).unwrap();
        // span of (1, 1, 0) and (0, 5, 0)
        let l = Lattice::from_generators(ring, 3, &[vec![1, 1, 0], vec![0, 5, 0], vec![2, 7, 0]])
            .unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.coords_mod_p(&[3, 8, 0]).is_ok());
        assert!(l.coords_mod_p(&[1, 2, 0]).is_err());
        assert!(l.coords_mod_p(&[0, 0, 1]).is_err());
    }
}
