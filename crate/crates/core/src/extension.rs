//! Central extensions `1 → ⟨z⟩ → Ĝ → G → 1`, the 2-cocycles they induce and
//! the twisted-conjugation character on centralisers.
//!
//! Cocycle values live in `⟨z⟩ ≅ Z/m` and are carried around as exponents;
//! they only become field elements (`λ(z^t) = ζ^t`) when a prime is fixed.

use std::sync::Arc;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::group::{central_powers, centralizer, quotient_by_central, FiniteGroup, Subgroup};

/// Below this order the homomorphism and cocycle checks run on all pairs.
const EXHAUSTIVE_CHECK_CAP: usize = 512;

const NOT_CENTRAL_POWER: u32 = u32::MAX;

/// Which coset representative the section picks. The identity coset always
/// maps to the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SectionChoice {
    #[default]
    LeastIndex,
    GreatestIndex,
}

/// Index `i` of the twisted factor `k_{α^i}G`, an integer modulo `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistIndex(usize);

impl TwistIndex {
    pub fn new(i: usize, m: usize) -> Self {
        TwistIndex(i % m.max(1))
    }

    pub fn value(self) -> usize {
        self.0
    }

    pub fn is_untwisted(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone)]
pub struct CentralExtension {
    cover: Arc<FiniteGroup>,
    z: usize,
    m: usize,
    quotient: FiniteGroup,
    proj: Vec<usize>,
    section: Vec<usize>,
    z_exp: Vec<u32>,
}

impl std::fmt::Debug for CentralExtension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CentralExtension(|Ĝ| = {}, m = {}, |G| = {})", self.cover.order(), self.m, self.quotient.order())
    }
}

impl CentralExtension {
    /// Builds `G = Ĝ/⟨z⟩` with the least-index section and validates it.
    pub fn new(cover: impl Into<Arc<FiniteGroup>>, z: usize) -> Result<Self> {
        Self::with_section(cover, z, SectionChoice::LeastIndex)
    }

    pub fn with_section(cover: impl Into<Arc<FiniteGroup>>, z: usize, choice: SectionChoice) -> Result<Self> {
        let cover = cover.into();
        if z >= cover.order() {
            return Err(Error::Precondition(format!("element index {z} out of range")));
        }
        let powers = central_powers(&cover, z)?;
        let m = powers.len();
        let (quotient, proj) = quotient_by_central(&cover, z)?;
        let mut section = vec![usize::MAX; quotient.order()];
        for (e, &q) in proj.iter().enumerate() {
            let slot = &mut section[q];
            *slot = match (choice, *slot) {
                (_, usize::MAX) => e,
                (SectionChoice::LeastIndex, s) => s.min(e),
                (SectionChoice::GreatestIndex, s) => s.max(e),
            };
        }
        section[0] = 0;
        let mut z_exp = vec![NOT_CENTRAL_POWER; cover.order()];
        for (t, &zp) in powers.iter().enumerate() {
            z_exp[zp] = t as u32;
        }
        let ext = CentralExtension { cover, z, m, quotient, proj, section, z_exp };
        ext.validate()?;
        Ok(ext)
    }

    /// `Ĝ` viewed as an extension of itself by the trivial group.
    pub fn trivial(group: impl Into<Arc<FiniteGroup>>) -> Self {
        Self::new(group, 0).expect("the identity is central")
    }

    fn validate(&self) -> Result<()> {
        let c = &self.cover;
        let g = &self.quotient;
        if c.order() != self.m * g.order() {
            return Err(Error::Validation("|Ĝ| != m·|G|".into()));
        }
        for x in 0..g.order() {
            if self.proj[self.section[x]] != x {
                return Err(Error::Validation(format!("proj∘section differs from identity at {x}")));
            }
        }
        let right: Vec<usize> =
            if c.order() <= EXHAUSTIVE_CHECK_CAP { (0..c.order()).collect() } else { c.generators() };
        for a in 0..c.order() {
            for &b in &right {
                if self.proj[c.mul(a, b)] != g.mul(self.proj[a], self.proj[b]) {
                    return Err(Error::Validation(format!("projection is not a homomorphism on ({a},{b})")));
                }
            }
        }
        let right: Vec<usize> =
            if g.order() <= EXHAUSTIVE_CHECK_CAP { (0..g.order()).collect() } else { g.generators() };
        for x in 0..g.order() {
            for &y in &right {
                let w = self.cocycle_element(x, y);
                if self.z_exp[w] == NOT_CENTRAL_POWER {
                    return Err(Error::Validation(format!("s({x})s({y})s({x}{y})^-1 is not in ⟨z⟩")));
                }
            }
        }
        Ok(())
    }

    pub fn cover(&self) -> &FiniteGroup {
        &self.cover
    }

    pub fn cover_arc(&self) -> &Arc<FiniteGroup> {
        &self.cover
    }

    /// The quotient `G`.
    pub fn group(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn z(&self) -> usize {
        self.z
    }

    /// Order of `z`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn proj(&self, e: usize) -> usize {
        self.proj[e]
    }

    pub fn section(&self, x: usize) -> usize {
        self.section[x]
    }

    /// Field `F_p(ζ_m)` for this extension; rejects `p | m`.
    pub fn field(&self, p: u64) -> Result<FieldSpec> {
        FieldSpec::new(p, self.m as u64)
    }

    /// `t` with `e = z^t`, when `e ∈ ⟨z⟩`.
    pub fn z_exponent(&self, e: usize) -> Option<usize> {
        let t = self.z_exp[e];
        (t != NOT_CENTRAL_POWER).then_some(t as usize)
    }

    fn cocycle_element(&self, x: usize, y: usize) -> usize {
        let c = &self.cover;
        let sx = self.section[x];
        let sy = self.section[y];
        let sxy = self.section[self.quotient.mul(x, y)];
        c.mul(c.mul(sx, sy), c.inv(sxy))
    }

    /// Exponent `t` of `s(x)s(y)s(xy)^-1 = z^t`.
    pub fn cocycle_exponent(&self, x: usize, y: usize) -> usize {
        self.z_exp[self.cocycle_element(x, y)] as usize
    }

    /// `α^i(x, y) = ζ^{i·t}`.
    pub fn cocycle(&self, field: &FieldSpec, i: usize, x: usize, y: usize) -> Fq {
        field.zeta_pow((i * self.cocycle_exponent(x, y)) as i64)
    }

    fn check_commutes(&self, x: usize, g: usize) -> Result<()> {
        let q = &self.quotient;
        if q.mul(x, g) != q.mul(g, x) {
            return Err(Error::Precondition(format!("{g} does not centralise {x}")));
        }
        Ok(())
    }

    /// Exponent of `ĝ x̂ ĝ^-1 x̂^-1` in `⟨z⟩`, times `i`, modulo `m`.
    pub fn lambda_exponent(&self, i: usize, x: usize, g: usize) -> Result<usize> {
        self.check_commutes(x, g)?;
        Ok(self.lambda_exponent_unchecked(i, x, g))
    }

    pub(crate) fn lambda_exponent_unchecked(&self, i: usize, x: usize, g: usize) -> usize {
        let c = &self.cover;
        let (sx, sg) = (self.section[x], self.section[g]);
        let comm = c.mul(c.mul(sg, sx), c.inv(c.mul(sx, sg)));
        let t = self.z_exp[comm];
        debug_assert_ne!(t, NOT_CENTRAL_POWER, "commutator of commuting lifts is central");
        (i * t as usize) % self.m
    }

    /// Same exponent through `α(g, x) α(x, g)^-1`.
    pub fn lambda_exponent_via_cocycle(&self, i: usize, x: usize, g: usize) -> Result<usize> {
        self.check_commutes(x, g)?;
        let m = self.m;
        let d = (self.cocycle_exponent(g, x) + m - self.cocycle_exponent(x, g)) % m;
        Ok((i * d) % m)
    }

    /// `λ_{α^i}(g)` on `C_G(x)` as a field element.
    pub fn lambda_alpha(&self, field: &FieldSpec, i: usize, x: usize, g: usize) -> Result<Fq> {
        Ok(field.zeta_pow(self.lambda_exponent(i, x, g)? as i64))
    }

    /// Order of the image of `λ_{α^i}` on `cent = C_G(x)`.
    pub fn lambda_image_order(&self, i: usize, x: usize, cent: &Subgroup<'_>) -> usize {
        let mut acc = self.m;
        for g in cent.generating_set() {
            acc = gcd(acc as u64, self.lambda_exponent_unchecked(i, x, g) as u64) as usize;
        }
        self.m / acc
    }

    pub fn is_alpha_regular(&self, i: usize, x: usize) -> bool {
        let cent = centralizer(&self.quotient, x);
        self.is_alpha_regular_in(i, x, &cent)
    }

    /// Regularity given a precomputed `C_G(x)`; λ is a homomorphism so its
    /// generators suffice.
    pub fn is_alpha_regular_in(&self, i: usize, x: usize, cent: &Subgroup<'_>) -> bool {
        cent.generating_set().iter().all(|&g| self.lambda_exponent_unchecked(i, x, g) == 0)
    }

    /// `N = ker λ_{α^i} ≤ C_G(x)`.
    pub fn regular_kernel(&self, i: usize, x: usize) -> Subgroup<'_> {
        let cent = centralizer(&self.quotient, x);
        self.regular_kernel_in(i, x, &cent)
    }

    pub fn regular_kernel_in<'a>(&'a self, i: usize, x: usize, cent: &Subgroup<'a>) -> Subgroup<'a> {
        let members =
            cent.members().iter().copied().filter(|&g| self.lambda_exponent_unchecked(i, x, g) == 0).collect();
        Subgroup::from_members(&self.quotient, members)
    }

    /// `(C_Ĝ(x), C_Ĝ(x̂))`: the preimage of `C_G(x)` and the centraliser of
    /// the lift `x̂ = s(x)`.
    pub fn lifted_centralizers(&self, x: usize) -> (Subgroup<'_>, Subgroup<'_>) {
        let c = &*self.cover;
        let q = &self.quotient;
        let pre = (0..c.order())
            .filter(|&e| {
                let g = self.proj[e];
                q.mul(g, x) == q.mul(x, g)
            })
            .collect();
        let xh = self.section[x];
        let lifted = (0..c.order()).filter(|&e| c.mul(e, xh) == c.mul(xh, e)).collect();
        (Subgroup::from_members(c, pre), Subgroup::from_members(c, lifted))
    }

    /// The extension `Ĝ/⟨z^k⟩ → G` with central element the image of `z`;
    /// `k` must divide `m`.
    pub fn reduce(&self, k: usize) -> Result<CentralExtension> {
        if k == 0 || !self.m.is_multiple_of(k) {
            return Err(Error::Precondition(format!("{k} does not divide m = {}", self.m)));
        }
        let zk = self.cover.pow(self.z, k as i64);
        let (smaller, proj) = quotient_by_central(&self.cover, zk)?;
        CentralExtension::new(smaller, proj[self.z])
    }
}
