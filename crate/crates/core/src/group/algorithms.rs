use std::sync::Arc;

use super::{Closure, FiniteGroup, Subgroup};
use crate::arith::{exact_log, is_prime, mod_inverse, split_prime_power};
use crate::error::{Error, Result};

/// A conjugacy class; the representative is its least member index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Orbits under conjugation by the generators, sorted by representative.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<ConjugacyClass> {
    let n = g.order();
    let gens = g.generators();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        let mut members = vec![x];
        let mut i = 0;
        while i < members.len() {
            let y = members[i];
            for &s in &gens {
                let c = g.conj(y, s);
                if !seen[c] {
                    seen[c] = true;
                    members.push(c);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(ConjugacyClass { representative: x, members });
    }
    classes
}

/// `C_G(x)` by a full scan.
pub fn centralizer(g: &FiniteGroup, x: usize) -> Subgroup<'_> {
    let members = (0..g.order()).filter(|&y| g.mul(x, y) == g.mul(y, x)).collect();
    Subgroup::from_members(g, members)
}

/// Centraliser of `x` inside a subgroup `h`.
pub fn centralizer_in<'g>(h: &Subgroup<'g>, x: usize) -> Subgroup<'g> {
    let g = h.group();
    let members = h.members().iter().copied().filter(|&y| g.mul(x, y) == g.mul(y, x)).collect();
    Subgroup::from_members(g, members)
}

pub fn center<'g>(h: &Subgroup<'g>) -> Subgroup<'g> {
    let g = h.group();
    let gens = h.generating_set();
    let members = h.members().iter().copied().filter(|&y| gens.iter().all(|&s| g.mul(s, y) == g.mul(y, s))).collect();
    Subgroup::from_members(g, members)
}

/// `N_G(h)`, scanning all elements of the parent group.
pub fn normalizer<'g>(h: &Subgroup<'g>) -> Subgroup<'g> {
    let g = h.group();
    let gens = h.generating_set();
    let members = (0..g.order()).filter(|&y| gens.iter().all(|&s| h.contains(g.conj(s, y)))).collect();
    Subgroup::from_members(g, members)
}

pub fn subgroup_closure<'g>(g: &'g FiniteGroup, seeds: &[usize]) -> Subgroup<'g> {
    g.closure(seeds)
}

/// Normal closure of `seeds` inside `h`.
pub fn normal_closure<'g>(h: &Subgroup<'g>, seeds: &[usize]) -> Subgroup<'g> {
    let mut c = Closure::new(h.group());
    for &s in seeds {
        c.add(s);
    }
    c.close_normally(&h.generating_set());
    c.into_subgroup()
}

/// `H' = <[a, b]>`, the normal closure of commutators of generators.
pub fn commutator_subgroup<'g>(h: &Subgroup<'g>) -> Subgroup<'g> {
    let g = h.group();
    let gens = h.generating_set();
    let mut seeds = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            seeds.push(g.commutator(a, b));
        }
    }
    let mut c = Closure::new(g);
    for s in seeds {
        c.add(s);
    }
    c.close_normally(&gens);
    c.into_subgroup()
}

/// The cyclic subgroup generated by a central element, as an ordered list
/// of its powers `z^0, z^1, ...`.
pub fn central_powers(g: &FiniteGroup, z: usize) -> Result<Vec<usize>> {
    if !g.is_central(z) {
        return Err(Error::NotCentral(z));
    }
    let mut powers = vec![0];
    let mut acc = z;
    while acc != 0 {
        powers.push(acc);
        acc = g.mul(acc, z);
    }
    Ok(powers)
}

/// `Ĝ/<z>` for central `z`. Cosets are represented by their least element
/// index and quotient elements are ordered by representative. Returns the
/// quotient and the projection `Ĝ -> G` on indices.
pub fn quotient_by_central(ghat: &Arc<FiniteGroup>, z: usize) -> Result<(FiniteGroup, Vec<usize>)> {
    let powers = central_powers(ghat, z)?;
    let n = ghat.order();
    if powers.len() == 1 {
        return Ok(((**ghat).clone(), (0..n).collect()));
    }
    let mut label = vec![u32::MAX; n];
    let mut reps: Vec<u32> = Vec::with_capacity(n / powers.len());
    for x in 0..n {
        if label[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x as u32);
        for &zp in &powers {
            label[ghat.mul(x, zp)] = id;
        }
    }
    let proj: Vec<usize> = label.iter().map(|&l| l as usize).collect();
    let q = FiniteGroup::lifted(ghat.clone(), reps, label);
    Ok((q, proj))
}

/// The `p`-part `x_p` of `x`, with `x = x_p x_p'` commuting.
pub fn p_part(g: &FiniteGroup, x: usize, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (a, pa, r) = split_prime_power(g.elem_order(x) as u64, p);
    if a == 0 {
        return Ok(0);
    }
    let rinv = mod_inverse(r % pa, pa).expect("r is coprime to p^a");
    Ok(g.pow(x, (r * rinv) as i64))
}

pub fn is_p_element(g: &FiniteGroup, x: usize, p: u64) -> bool {
    split_prime_power(g.elem_order(x) as u64, p).2 == 1
}

/// `dim_k Hom(H, k)` in characteristic `p`: the rank of the elementary
/// abelian quotient `H / H'H^p`.
pub fn p_rank_hom(h: &Subgroup<'_>, p: u64) -> usize {
    let k = frattini_p_kernel(h, p);
    let idx = (h.order() / k.order()) as u64;
    exact_log(idx, p).expect("H/H'H^p is a p-group") as usize
}

/// `H'H^p`: normal closure of commutators and `p`-th powers of generators.
pub(crate) fn frattini_p_kernel<'g>(h: &Subgroup<'g>, p: u64) -> Subgroup<'g> {
    let g = h.group();
    let gens = h.generating_set();
    let mut c = Closure::new(g);
    for (i, &a) in gens.iter().enumerate() {
        c.add(g.pow(a, p as i64));
        for &b in &gens[i + 1..] {
            c.add(g.commutator(a, b));
        }
    }
    c.close_normally(&gens);
    c.into_subgroup()
}

/// `O^p(G)`: generated by all elements of order prime to `p`.
pub fn op_subgroup(g: &FiniteGroup, p: u64) -> Result<Subgroup<'_>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut c = Closure::new(g);
    for x in 0..g.order() {
        if !(g.elem_order(x) as u64).is_multiple_of(p) {
            c.add(x);
        }
    }
    Ok(c.into_subgroup())
}

/// A Sylow `p`-subgroup, grown from the cyclic group of a `p`-element of
/// maximal order by adjoining `p`-elements of successive normalisers.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<Subgroup<'_>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (_, target, _) = split_prime_power(g.order() as u64, p);
    let target = target as usize;
    if target == 1 {
        return Ok(Subgroup::trivial(g));
    }
    let mut best = 0;
    for x in 0..g.order() {
        if is_p_element(g, x, p) && g.elem_order(x) > g.elem_order(best) {
            best = x;
        }
    }
    let mut c = Closure::new(g);
    c.add(best);
    while c.order() < target {
        let current = Subgroup::from_members(g, (0..g.order()).filter(|&x| c.contains(x)).collect());
        let norm = normalizer(&current);
        let y = norm
            .members()
            .iter()
            .copied()
            .find(|&y| !current.contains(y) && is_p_element(g, y, p))
            .expect("a non-Sylow p-subgroup has p-elements in its normaliser outside it");
        c.add(y);
    }
    Ok(c.into_subgroup())
}

pub fn is_cyclic(h: &Subgroup<'_>) -> bool {
    let g = h.group();
    h.members().iter().any(|&x| g.elem_order(x) == h.order())
}

/// `true` when `h` is an `ℓ`-group for some prime `ℓ` (trivial counts).
pub fn prime_power_order(h: &Subgroup<'_>) -> Option<u64> {
    let ps = crate::arith::prime_divisors(h.order() as u64);
    match ps.len() {
        0 => Some(1),
        1 => Some(ps[0]),
        _ => None,
    }
}

/// Whether every Sylow subgroup of `h` is cyclic.
pub fn sylows_all_cyclic(h: &Subgroup<'_>) -> bool {
    let g = h.group();
    for p in crate::arith::prime_divisors(h.order() as u64) {
        let (_, pa, _) = split_prime_power(h.order() as u64, p);
        // A cyclic Sylow p-subgroup exists iff some element has order p^a.
        if !h.members().iter().any(|&x| g.elem_order(x) as u64 == pa) {
            return false;
        }
    }
    true
}
