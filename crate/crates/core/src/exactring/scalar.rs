use std::fmt;

use serde::{Deserialize, Serialize};

use super::arith::{self, add_mod, checked_pow, inv_mod, mul_mod, neg_mod, sub_mod};
use crate::error::{Error, Result};

/// Coefficient ring of an exact scalar or matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    /// The prime field `F_p`.
    Fp { p: u64 },
    /// Truncated `p`-adic integers `Z/p^N`.
    Zpn { p: u64, n: u32 },
}

impl Ring {
    pub fn fp(p: u64) -> Result<Ring> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring::Fp { p })
    }

    pub fn zpn(p: u64, n: u32) -> Result<Ring> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroPrecision);
        }
        checked_pow(p, n).ok_or(Error::PrecisionTooLarge { p, n })?;
        Ok(Ring::Zpn { p, n })
    }

    pub fn prime(&self) -> u64 {
        match *self {
            Ring::Fp { p } | Ring::Zpn { p, .. } => p,
        }
    }

    /// Precision `N`; a prime field counts as precision 1.
    pub fn precision(&self) -> u32 {
        match *self {
            Ring::Fp { .. } => 1,
            Ring::Zpn { n, .. } => n,
        }
    }

    pub fn modulus(&self) -> u64 {
        match *self {
            Ring::Fp { p } => p,
            Ring::Zpn { p, n } => p.pow(n),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Fp { .. })
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Fp { p } => write!(f, "F_{p}"),
            Ring::Zpn { p, n } => write!(f, "Z/{p}^{n}"),
        }
    }
}

/// An element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpScalar {
    p: u64,
    value: u64,
}

impl FpScalar {
    pub fn new(p: u64, value: i128) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FpScalar { p, value: arith::from_i128(value, p) })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::RingMismatch(format!("F_{} vs F_{}", self.p, other.p)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(FpScalar { p: self.p, value: add_mod(self.value, other.value, self.p) })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(FpScalar { p: self.p, value: sub_mod(self.value, other.value, self.p) })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(FpScalar { p: self.p, value: mul_mod(self.value, other.value, self.p) })
    }

    pub fn inverse(&self) -> Result<Self> {
        inv_mod(self.value, self.p)
            .map(|value| FpScalar { p: self.p, value })
            .ok_or_else(|| Error::NotInvertible("zero in F_p".into()))
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.p)
    }
}

/// p-adic valuation of a truncated element. Zero only has a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    AtLeast(u32),
}

impl Valuation {
    /// Numeric value used for ordering; `AtLeast(n)` sorts as `n`, after every finite value.
    pub fn sort_key(&self) -> (u32, u8) {
        match *self {
            Valuation::Finite(v) => (v, 0),
            Valuation::AtLeast(n) => (n, 1),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Finite(_))
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(n) => write!(f, "≥{n}"),
        }
    }
}

/// An element of `Z_p` known modulo `p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicScalar {
    p: u64,
    n: u32,
    value: u64,
}

impl PadicScalar {
    pub fn new(p: u64, n: u32, value: i128) -> Result<Self> {
        let ring = Ring::zpn(p, n)?;
        Ok(PadicScalar { p, n, value: arith::from_i128(value, ring.modulus()) })
    }

    /// Constructor for callers that already validated `(p, n)`.
    pub(crate) fn from_ring(ring: Ring, value: i128) -> Self {
        PadicScalar {
            p: ring.prime(),
            n: ring.precision(),
            value: arith::from_i128(value, ring.modulus()),
        }
    }

    pub fn zero(p: u64, n: u32) -> Result<Self> {
        Self::new(p, n, 0)
    }

    pub fn one(p: u64, n: u32) -> Result<Self> {
        Self::new(p, n, 1)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ring(&self) -> Ring {
        Ring::Zpn { p: self.p, n: self.n }
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn valuation(&self) -> Valuation {
        padic_valuation(self)
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.p)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::RingMismatch(format!("Z_{} vs Z_{}", self.p, other.p)));
        }
        if self.n != other.n {
            return Err(Error::PrecisionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(PadicScalar { value: add_mod(self.value, other.value, self.modulus()), ..*self })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(PadicScalar { value: sub_mod(self.value, other.value, self.modulus()), ..*self })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(PadicScalar { value: mul_mod(self.value, other.value, self.modulus()), ..*self })
    }

    pub fn neg(&self) -> Self {
        PadicScalar { value: neg_mod(self.value, self.modulus()), ..*self }
    }

    pub fn inverse(&self) -> Result<Self> {
        inv_mod(self.value, self.modulus())
            .map(|value| PadicScalar { value, ..*self })
            .ok_or_else(|| Error::NotInvertible(format!("{} is not a unit", self)))
    }

    /// `true` when `p^k` divides the element (always true for `k <= 0`).
    pub fn divisible_by_p_pow(&self, k: u32) -> bool {
        match self.valuation() {
            Valuation::Finite(v) => v >= k,
            Valuation::AtLeast(_) => true,
        }
    }

    /// Exact division by `p^k`; the quotient is only known modulo `p^(N-k)`.
    pub fn div_p_pow(&self, k: u32) -> Result<Self> {
        if k >= self.n {
            return Err(Error::Hypothesis(format!(
                "division by p^{k} leaves no digits at precision {}",
                self.n
            )));
        }
        if !self.divisible_by_p_pow(k) {
            return Err(Error::NotInvertible(format!("p^{k} does not divide {}", self)));
        }
        let n = self.n - k;
        let value = (self.value / self.p.pow(k)) % self.p.pow(n);
        Ok(PadicScalar { p: self.p, n, value })
    }

    /// Truncate to a lower precision.
    pub fn truncate(&self, n: u32) -> Result<Self> {
        if n == 0 || n > self.n {
            return Err(Error::PrecisionMismatch { left: self.n, right: n });
        }
        Ok(PadicScalar { p: self.p, n, value: self.value % self.p.pow(n) })
    }

    pub fn reduce_mod_p(&self) -> FpScalar {
        FpScalar { p: self.p, value: self.value % self.p }
    }

    /// Representative in `(-p^N/2, p^N/2]`.
    pub fn signed(&self) -> i128 {
        let m = self.modulus() as i128;
        let v = self.value as i128;
        if 2 * v > m {
            v - m
        } else {
            v
        }
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.p, self.n)
    }
}

/// Largest `v < N` with `p^v | x`, or `≥N` when `x = 0`.
pub fn padic_valuation(x: &PadicScalar) -> Valuation {
    if x.value == 0 {
        Valuation::AtLeast(x.n)
    } else {
        Valuation::Finite(arith::valuation_capped(x.value, x.p, x.n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        let z = PadicScalar::new(5, 4, 0).unwrap();
        assert_eq!(padic_valuation(&z), Valuation::AtLeast(4));
        assert_eq!(padic_valuation(&z).to_string(), "≥4");
        let x = PadicScalar::new(5, 4, 50).unwrap();
        assert_eq!(padic_valuation(&x), Valuation::Finite(2));
        let u = PadicScalar::new(3, 3, 7).unwrap();
        assert_eq!(padic_valuation(&u), Valuation::Finite(0));
    }

    #[test]
    fn mixed_precision_is_rejected() {
        let a = PadicScalar::new(5, 4, 3).unwrap();
        let b = PadicScalar::new(5, 3, 3).unwrap();
        assert_eq!(a.try_add(&b), Err(Error::PrecisionMismatch { left: 4, right: 3 }));
        assert!(a.try_mul(&b).is_err());
        let c = PadicScalar::new(7, 4, 3).unwrap();
        assert!(matches!(a.try_sub(&c), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn constructor_rejects_composites() {
        assert_eq!(PadicScalar::new(6, 2, 1), Err(Error::NotPrime(6)));
        assert_eq!(FpScalar::new(9, 1), Err(Error::NotPrime(9)));
        assert_eq!(PadicScalar::new(5, 0, 1), Err(Error::ZeroPrecision));
    }

    #[test]
    fn negative_values_wrap() {
        let a = PadicScalar::new(3, 2, -1).unwrap();
        assert_eq!(a.value(), 8);
        assert_eq!(a.signed(), -1);
        assert!(a.is_unit());
        assert_eq!(a.inverse().unwrap().try_mul(&a).unwrap().value(), 1);
    }

    #[test]
    fn exact_division_drops_precision() {
        let a = PadicScalar::new(5, 4, 75).unwrap();
        let q = a.div_p_pow(1).unwrap();
        assert_eq!((q.value(), q.precision()), (15, 3));
        assert!(a.div_p_pow(3).is_err());
        assert_eq!(a.reduce_mod_p().value(), 0);
    }
}
