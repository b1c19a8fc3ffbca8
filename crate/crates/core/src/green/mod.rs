//! A Green order over the p-adic integers: the congruence subring of
//! `Z_p × M_2(Z_p)^m × Z_p` glued along a stem, worked with at precision `N`.
//!
//! An element is `(d_0; [[a_j, b_j], [c_j, d_j]] for j = 1..m; a_{m+1})` with
//!
//! * `p^x | c_j` for every block,
//! * `p^x | (d_j - a_{j-1})` where `a_0 := d_0`,
//! * `p^x | (a_{m+1} - a_m)`.
//!
//! So the diagonal entries pair up as `(d_0, d_1), (a_1, d_2), ..., (a_m, a_{m+1})`,
//! one pair per vertex of the stem. The variant without `d_0` leaves `d_1`
//! unpaired.

mod counting;
mod lattice;
mod reduce;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactring::{arith, PadicScalar, Ring};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

pub use counting::{
    commutative_factor_count, hook_count, is_hook, lattice_count, p_regular_count, partition_count, partitions,
    simple_count_identity, CommutativeFactors, LatticeCount,
};
pub use lattice::{kernel_lattices, projective_lattices, ColumnLattice};
pub use reduce::{rational_components, reduce_mod_p, reduced_basis_labels};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GreenOrderSpec {
    p: u64,
    m: usize,
    x: u32,
    precision: u32,
    leading: bool,
}

impl GreenOrderSpec {
    pub fn new(p: u64, m: usize, x: u32, precision: u32, leading: bool) -> Result<Self> {
        Ring::zpn(p, precision)?;
        if m < 1 {
            return Err(Error::InvalidParam("need at least one block".into()));
        }
        if x < 1 || precision <= x {
            return Err(Error::InvalidParam(format!("need 1 <= x < N (x = {x}, N = {precision})")));
        }
        Ok(GreenOrderSpec { p, m, x, precision, leading })
    }

    /// The order with `p - 1` blocks, `x = 1` and both end scalars.
    pub fn lambda0(p: u64, precision: u32) -> Result<Self> {
        Self::new(p, p.saturating_sub(1) as usize, 1, precision, true)
    }

    /// As [`GreenOrderSpec::lambda0`] without the leading scalar.
    pub fn schur_variant(p: u64, precision: u32) -> Result<Self> {
        Self::new(p, p.saturating_sub(1) as usize, 1, precision, false)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn blocks(&self) -> usize {
        self.m
    }

    pub fn exponent(&self) -> u32 {
        self.x
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn has_leading_scalar(&self) -> bool {
        self.leading
    }

    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        Self::new(self.p, self.m, self.x, precision, self.leading)
    }

    pub fn ring(&self) -> Ring {
        Ring::Zpn { p: self.p, n: self.precision }
    }

    /// Number of coordinates: the end scalars plus four per block.
    pub fn slot_count(&self) -> usize {
        usize::from(self.leading) + 4 * self.m + 1
    }

    /// Number of vertex pairs (simples after reduction).
    pub fn vertex_count(&self) -> usize {
        self.m + 1
    }

    fn scalar(&self, v: i128) -> PadicScalar {
        PadicScalar::new(self.p, self.precision, v).expect("validated ring")
    }

    fn px(&self) -> u64 {
        self.p.pow(self.x)
    }
}

/// `Z_p`-rank of the order: `4m + 2`, or `4m + 1` without the leading scalar.
pub fn rank(spec: &GreenOrderSpec) -> usize {
    spec.slot_count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenOrderElement {
    pub lead: Option<PadicScalar>,
    /// `[a, b, c, d]` per block.
    pub blocks: Vec<[PadicScalar; 4]>,
    pub trail: PadicScalar,
}

impl GreenOrderElement {
    /// Element from integer coordinates in slot order (`d_0`, then `a, b, c, d` per
    /// block, then the trailing scalar).
    pub fn from_slots(spec: &GreenOrderSpec, slots: &[i128]) -> Result<Self> {
        if slots.len() != spec.slot_count() {
            return Err(Error::Dimension(format!("{} slots, expected {}", slots.len(), spec.slot_count())));
        }
        let off = usize::from(spec.leading);
        Ok(GreenOrderElement {
            lead: spec.leading.then(|| spec.scalar(slots[0])),
            blocks: (0..spec.m)
                .map(|j| std::array::from_fn(|k| spec.scalar(slots[off + 4 * j + k])))
                .collect(),
            trail: spec.scalar(slots[off + 4 * spec.m]),
        })
    }

    pub fn identity(spec: &GreenOrderSpec) -> Self {
        let mut s = vec![0i128; spec.slot_count()];
        let off = usize::from(spec.leading);
        if spec.leading {
            s[0] = 1;
        }
        for j in 0..spec.m {
            s[off + 4 * j] = 1;
            s[off + 4 * j + 3] = 1;
        }
        s[off + 4 * spec.m] = 1;
        Self::from_slots(spec, &s).expect("shape")
    }

    pub fn zero(spec: &GreenOrderSpec) -> Self {
        Self::from_slots(spec, &vec![0; spec.slot_count()]).expect("shape")
    }

    /// Residues in slot order.
    pub fn slots(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.lead.iter().map(PadicScalar::value).collect();
        for b in &self.blocks {
            out.extend(b.iter().map(PadicScalar::value));
        }
        out.push(self.trail.value());
        out
    }

    fn scalars(&self) -> impl Iterator<Item = &PadicScalar> {
        self.lead.iter().chain(self.blocks.iter().flatten()).chain(std::iter::once(&self.trail))
    }
}

fn check_shape(spec: &GreenOrderSpec, e: &GreenOrderElement) -> Result<()> {
    if e.lead.is_some() != spec.leading || e.blocks.len() != spec.m {
        return Err(Error::Dimension("element shape does not match the order".into()));
    }
    for s in e.scalars() {
        if s.prime() != spec.p {
            return Err(Error::RingMismatch(format!("Z_{} vs Z_{}", s.prime(), spec.p)));
        }
        if s.precision() != spec.precision {
            return Err(Error::PrecisionMismatch { left: s.precision(), right: spec.precision });
        }
    }
    Ok(())
}

/// Membership test. The violation list names each failing congruence.
pub fn member(spec: &GreenOrderSpec, e: &GreenOrderElement) -> Result<(bool, Vec<String>)> {
    check_shape(spec, e)?;
    let x = spec.x;
    let pre = if x == 1 { "p∤".to_string() } else { format!("p^{x}∤") };
    let mut v = Vec::new();
    let mut prev = e.lead;
    for (j, [a, _b, c, d]) in e.blocks.iter().enumerate() {
        let j = j + 1;
        if !c.divisible_by_p_pow(x) {
            v.push(format!("{pre}c_{j}"));
        }
        if let Some(prev) = prev {
            if !d.try_sub(&prev)?.divisible_by_p_pow(x) {
                v.push(if j == 1 { format!("{pre}(d_1−d_0)") } else { format!("{pre}(d_{j}−a_{})", j - 1) });
            }
        }
        prev = Some(*a);
    }
    let m = spec.m;
    if !e.trail.try_sub(&e.blocks[m - 1][0])?.divisible_by_p_pow(x) {
        v.push(format!("{pre}(a_{}−a_{m})", m + 1));
    }
    Ok((v.is_empty(), v))
}

/// Componentwise product, with both factors required to be members.
pub fn mul(spec: &GreenOrderSpec, e1: &GreenOrderElement, e2: &GreenOrderElement) -> Result<GreenOrderElement> {
    for e in [e1, e2] {
        let (ok, why) = member(spec, e)?;
        if !ok {
            return Err(Error::NotMember(why.join(", ")));
        }
    }
    mul_unchecked(spec, e1, e2)
}

/// Componentwise product in `Z_p × M_2(Z_p)^m × Z_p`, ignoring the congruences.
pub fn mul_unchecked(
    spec: &GreenOrderSpec,
    e1: &GreenOrderElement,
    e2: &GreenOrderElement,
) -> Result<GreenOrderElement> {
    check_shape(spec, e1)?;
    check_shape(spec, e2)?;
    let lead = match (e1.lead, e2.lead) {
        (Some(u), Some(v)) => Some(u.try_mul(&v)?),
        _ => None,
    };
    let blocks = e1
        .blocks
        .iter()
        .zip(&e2.blocks)
        .map(|([a, b, c, d], [a2, b2, c2, d2])| {
            let dot = |x: &PadicScalar, y: &PadicScalar, z: &PadicScalar, w: &PadicScalar| {
                x.try_mul(y)?.try_add(&z.try_mul(w)?)
            };
            Ok([dot(a, a2, b, c2)?, dot(a, b2, b, d2)?, dot(c, a2, d, c2)?, dot(c, b2, d, d2)?])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GreenOrderElement { lead, blocks, trail: e1.trail.try_mul(&e2.trail)? })
}

/// A uniformly random member: free parameters uniform mod `p^N`, constrained
/// ones shifted by a random multiple of `p^x`.
pub fn random_member<R: Rng + ?Sized>(spec: &GreenOrderSpec, rng: &mut R) -> GreenOrderElement {
    let q = spec.ring().modulus();
    let px = spec.px();
    let mut uni = || rng.gen_range(0..q) as i128;
    let mut slots = Vec::with_capacity(spec.slot_count());
    let mut prev = if spec.leading {
        let d0 = uni();
        slots.push(d0);
        Some(d0)
    } else {
        None
    };
    for _ in 0..spec.m {
        let (a, b, t, s) = (uni(), uni(), uni(), uni());
        let c = t * px as i128;
        let d = prev.map_or(s, |pv| pv + s * px as i128);
        slots.extend([a, b, c, d]);
        prev = Some(a);
    }
    let s = uni();
    slots.push(prev.expect("m >= 1") + s * px as i128);
    GreenOrderElement::from_slots(spec, &slots).expect("shape")
}

/// Outcome of the randomized closure check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureOutcome {
    pub trials: usize,
    pub failures: usize,
    /// Slots of the first failing pair and the violations of their product.
    pub witness: Option<ClosureWitness>,
}

/// Slots of both factors and the violations of their product.
pub type ClosureWitness = (Vec<u64>, Vec<u64>, Vec<String>);

/// Multiplies `trials` seeded random member pairs and checks each product.
pub fn closure_trials(spec: &GreenOrderSpec, trials: usize, seed: u64, exec: Exec) -> Result<ClosureOutcome> {
    let results = par::map_range(exec, trials, |i| -> Result<Option<ClosureWitness>> {
        let mut rng = ChaCha8Rng::seed_from_u64(par::trial_seed(seed, i));
        let e1 = random_member(spec, &mut rng);
        let e2 = random_member(spec, &mut rng);
        let prod = mul(spec, &e1, &e2)?;
        let (ok, why) = member(spec, &prod)?;
        Ok((!ok).then(|| (e1.slots(), e2.slots(), why)))
    });
    let mut failures = 0;
    let mut witness = None;
    for r in results {
        if let Some(w) = r? {
            failures += 1;
            witness.get_or_insert(w);
        }
    }
    Ok(ClosureOutcome { trials, failures, witness })
}

pub(crate) fn is_prime_or_err(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}
