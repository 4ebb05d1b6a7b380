//! Weak and strong Non-Schur elements and the nonvanishing certificates
//! built from them.

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::extension::CentralExtension;
use crate::group::{
    center, centralizer, commutator_subgroup, conjugacy_classes, is_p_element, op_subgroup, p_part, p_rank_hom,
    sylow_subgroup, FiniteGroup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Weak,
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: usize,
    pub kind: WitnessKind,
    pub alpha_regular_for: Vec<usize>,
    pub hom_rank: usize,
    pub implied_lower_bound: usize,
}

impl Witness {
    pub fn regular_all_twists(&self, m: usize) -> bool {
        self.alpha_regular_for.len() == m
    }
}

/// Which elements a search visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchScope {
    #[default]
    ClassRepresentatives,
    AllElements,
}

fn candidates(g: &FiniteGroup, scope: SearchScope) -> Vec<usize> {
    match scope {
        SearchScope::ClassRepresentatives => conjugacy_classes(g).into_iter().map(|c| c.representative).collect(),
        SearchScope::AllElements => (0..g.order()).collect(),
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn is_weak(g: &FiniteGroup, x: usize, p: u64) -> bool {
    if !(g.elem_order(x) as u64).is_multiple_of(p) {
        return false;
    }
    let xp = p_part(g, x, p).expect("p is prime");
    !commutator_subgroup(&centralizer(g, x)).contains(xp)
}

fn is_strong(g: &FiniteGroup, x: usize, p: u64) -> bool {
    x != 0 && is_p_element(g, x, p) && !commutator_subgroup(&centralizer(g, x)).contains(x)
}

/// Elements of order divisible by `p` whose `p`-part lies outside
/// `C_G(x)'`.
pub fn weak_nonschur_in(g: &FiniteGroup, p: u64, scope: SearchScope) -> Result<Vec<usize>> {
    require_prime(p)?;
    Ok(candidates(g, scope).into_iter().filter(|&x| is_weak(g, x, p)).collect())
}

/// `p`-elements outside `C_G(x)'`.
pub fn strong_nonschur_in(g: &FiniteGroup, p: u64, scope: SearchScope) -> Result<Vec<usize>> {
    require_prime(p)?;
    Ok(candidates(g, scope).into_iter().filter(|&x| is_strong(g, x, p)).collect())
}

pub fn weak_nonschur(g: &FiniteGroup, p: u64) -> Result<Vec<usize>> {
    weak_nonschur_in(g, p, SearchScope::ClassRepresentatives)
}

pub fn strong_nonschur(g: &FiniteGroup, p: u64) -> Result<Vec<usize>> {
    strong_nonschur_in(g, p, SearchScope::ClassRepresentatives)
}

/// Weak Non-Schur class representatives that are α^i-regular for every
/// twist; each forces `dim HH^1(k_{α^i}G) ≥ hom_rank`.
pub fn certify_nonvanishing(ext: &CentralExtension, p: u64) -> Result<Vec<Witness>> {
    require_prime(p)?;
    ext.field(p)?;
    let g = ext.group();
    if !(g.order() as u64).is_multiple_of(p) {
        return Err(Error::Precondition(format!("{p} does not divide |G| = {}", g.order())));
    }
    let m = ext.m();
    let mut out = Vec::new();
    for x in weak_nonschur(g, p)? {
        let cent = centralizer(g, x);
        let regular: Vec<usize> = (0..m).filter(|&i| ext.is_alpha_regular_in(i, x, &cent)).collect();
        if regular.len() != m {
            continue;
        }
        let hom_rank = p_rank_hom(&cent, p);
        if hom_rank == 0 {
            continue;
        }
        let kind = if is_strong(g, x, p) { WitnessKind::Strong } else { WitnessKind::Weak };
        out.push(Witness { x, kind, alpha_regular_for: regular, hom_rank, implied_lower_bound: hom_rank });
    }
    Ok(out)
}

/// `Z(P) ⊄ P'` for a Sylow `p`-subgroup `P`.
pub fn absp_criterion(g: &FiniteGroup, p: u64) -> Result<bool> {
    require_prime(p)?;
    if !(g.order() as u64).is_multiple_of(p) {
        return Err(Error::Precondition(format!("{p} does not divide |G| = {}", g.order())));
    }
    let sylow = sylow_subgroup(g, p)?;
    let derived = commutator_subgroup(&sylow);
    Ok(!center(&sylow).is_subset_of(&derived))
}

/// `O^p(G) ≠ G`.
pub fn abelian_criterion(g: &FiniteGroup, p: u64) -> Result<bool> {
    Ok(!op_subgroup(g, p)?.is_whole())
}

/// `W(p)`, checked on this group.
pub fn has_weak(g: &FiniteGroup, p: u64) -> Result<bool> {
    Ok(!weak_nonschur(g, p)?.is_empty())
}
