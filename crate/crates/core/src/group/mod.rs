//! Fully enumerated finite groups.
//!
//! Every element gets an index `0..n` with `0` the identity. Elements are
//! discovered breadth-first from the generators, so all derived choices
//! (class representatives, coset representatives, sections) are
//! reproducible from the input alone.

mod algorithms;
mod subgroup;

pub use algorithms::*;
pub use subgroup::{Closure, Subgroup};

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default cap on the number of elements produced by enumeration.
pub const DEFAULT_ORDER_CAP: usize = 1_000_000;

/// Groups at most this large get a dense multiplication table.
pub const TABLE_CAP: usize = 1024;

/// Associativity is checked on every triple up to this order.
const EXHAUSTIVE_ASSOC_CAP: usize = 512;

/// How the elements were given to us.
#[derive(Clone, Debug)]
pub enum Backing {
    /// Permutations of `0..degree`, stored row-major, one row per element.
    Permutation { degree: usize, images: Arc<Vec<u32>> },
    /// Abstract multiplication table (possibly computed on demand).
    Table,
}

#[derive(Clone)]
enum MulRule {
    Table(Arc<Vec<u32>>),
    Base(Arc<BaseIndex>),
    Lifted(Arc<Lifted>),
}

/// Recovers an element from the images of a small base of points.
struct BaseIndex {
    degree: usize,
    images: Arc<Vec<u32>>,
    base: Vec<u32>,
    packed: HashMap<u128, u32>,
    wide: HashMap<Box<[u32]>, u32>,
}

impl BaseIndex {
    fn packable(&self) -> bool {
        self.base.len() <= 8 && self.degree <= 1 << 16
    }

    fn lookup_images(&self, imgs: &[u32]) -> u32 {
        if self.packable() {
            let key = imgs.iter().fold(0u128, |acc, &v| (acc << 16) | v as u128);
            self.packed[&key]
        } else {
            self.wide[imgs]
        }
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let d = self.degree;
        let pa = &self.images[a as usize * d..(a as usize + 1) * d];
        let pb = &self.images[b as usize * d..(b as usize + 1) * d];
        let mut buf = [0u32; 8];
        if self.packable() {
            for (slot, &pt) in buf.iter_mut().zip(&self.base) {
                *slot = pb[pa[pt as usize] as usize];
            }
            self.lookup_images(&buf[..self.base.len()])
        } else {
            let imgs: Vec<u32> = self.base.iter().map(|&pt| pb[pa[pt as usize] as usize]).collect();
            self.lookup_images(&imgs)
        }
    }
}

/// Multiplication in a quotient by way of coset representatives.
struct Lifted {
    cover: Arc<FiniteGroup>,
    reps: Vec<u32>,
    proj: Vec<u32>,
}

/// A finite group with every element enumerated.
#[derive(Clone)]
pub struct FiniteGroup {
    n: usize,
    mul: MulRule,
    inv: Vec<u32>,
    orders: Vec<u32>,
    generators: Vec<u32>,
    backing: Backing,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.n).field("generators", &self.generators).finish()
    }
}

fn compose(a: &[u32], b: &[u32], out: &mut [u32]) {
    for (o, &ai) in out.iter_mut().zip(a) {
        *o = b[ai as usize];
    }
}

impl FiniteGroup {
    /// Breadth-first closure of permutation generators given as 1-based
    /// image lists. Products act left to right: `(xy)(i) = y(x(i))`.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutations_capped(degree, gens, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutations_capped(degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut gperms: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {} has {} images, expected {degree}",
                    k + 1,
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &v in g {
                if v == 0 || v > degree || seen[v - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "generator {} is not a permutation of 1..{degree}",
                        k + 1
                    )));
                }
                seen[v - 1] = true;
            }
            gperms.push(g.iter().map(|&v| (v - 1) as u32).collect());
        }

        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut images: Vec<u32> = identity.clone();
        let mut index: HashMap<Box<[u32]>, u32> = HashMap::new();
        index.insert(identity.into_boxed_slice(), 0);
        let mut gen_idx: Vec<u32> = Vec::new();
        // Generators are looked up after enumeration.
        let mut queue = VecDeque::from([0u32]);
        let mut buf = vec![0u32; degree];
        while let Some(e) = queue.pop_front() {
            for g in &gperms {
                let start = e as usize * degree;
                compose(&images[start..start + degree], g, &mut buf);
                if !index.contains_key(buf.as_slice()) {
                    let id = index.len();
                    if id >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    index.insert(buf.clone().into_boxed_slice(), id as u32);
                    images.extend_from_slice(&buf);
                    queue.push_back(id as u32);
                }
            }
        }
        for g in &gperms {
            let id = index[g.as_slice()];
            if id != 0 && !gen_idx.contains(&id) {
                gen_idx.push(id);
            }
        }
        let n = index.len();
        drop(index);
        let images = Arc::new(images);
        let base = Self::choose_base(degree, n, &images);
        let mut bi = BaseIndex { degree, images: images.clone(), base, packed: HashMap::new(), wide: HashMap::new() };
        for e in 0..n {
            let row = &images[e * degree..(e + 1) * degree];
            let imgs: Vec<u32> = bi.base.iter().map(|&pt| row[pt as usize]).collect();
            if bi.packable() {
                let key = imgs.iter().fold(0u128, |acc, &v| (acc << 16) | v as u128);
                bi.packed.insert(key, e as u32);
            } else {
                bi.wide.insert(imgs.into_boxed_slice(), e as u32);
            }
        }
        let rule = MulRule::Base(Arc::new(bi));
        let backing = Backing::Permutation { degree, images };
        Ok(Self::finish(n, rule, gen_idx, backing))
    }

    /// Greedy base: add points until base images separate all elements.
    fn choose_base(degree: usize, n: usize, images: &[u32]) -> Vec<u32> {
        let mut base: Vec<u32> = Vec::new();
        let mut classes = 1usize;
        // keys[e] = class id of e under the current base
        let mut keys = vec![0u64; n];
        while classes < n {
            let mut best: Option<(usize, u32, Vec<u64>)> = None;
            for pt in 0..degree as u32 {
                if base.contains(&pt) {
                    continue;
                }
                let mut ids: HashMap<(u64, u32), u64> = HashMap::new();
                let mut new_keys = Vec::with_capacity(n);
                for e in 0..n {
                    let k = (keys[e], images[e * degree + pt as usize]);
                    let next = ids.len() as u64;
                    new_keys.push(*ids.entry(k).or_insert(next));
                }
                let c = ids.len();
                if best.as_ref().is_none_or(|b| c > b.0) {
                    best = Some((c, pt, new_keys));
                    if c == n {
                        break;
                    }
                }
            }
            let (c, pt, nk) = best.expect("faithful action always separates elements");
            base.push(pt);
            classes = c;
            keys = nk;
        }
        base
    }

    /// Builds a group from a full multiplication table (0-based entries).
    /// The identity is relabelled to index 0 if needed.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has {} entries, expected {n}", r.len())));
            }
            let mut seen = vec![false; n];
            for &v in r {
                if v >= n || seen[v] {
                    return Err(Error::InvalidTable(format!("row {i} is not a permutation of 0..{n}")));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for r in rows {
                if seen[r[j]] {
                    return Err(Error::InvalidTable(format!("column {j} repeats an entry")));
                }
                seen[r[j]] = true;
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        // swap labels e <-> 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u32;
            }
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        if n <= EXHAUSTIVE_ASSOC_CAP {
            for a in 0..n {
                for b in 0..n {
                    let ab = at(a, b);
                    for c in 0..n {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::InvalidTable(format!("not associative on ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..200_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(Error::InvalidTable(format!("not associative on ({a},{b},{c})")));
                }
            }
        }
        let table = Arc::new(table);
        let gens = Self::greedy_generators(n, |a, b| table[a * n + b] as usize);
        Ok(Self::finish(n, MulRule::Table(table), gens, Backing::Table))
    }

    /// Quotient built from coset representatives of a normal subgroup of
    /// `cover`. `reps[i]` is the representative of quotient element `i`,
    /// `proj` maps cover indices to quotient indices.
    pub(crate) fn lifted(cover: Arc<FiniteGroup>, reps: Vec<u32>, proj: Vec<u32>) -> Self {
        let n = reps.len();
        let gens = {
            let mut g: Vec<u32> = Vec::new();
            for &s in cover.generators.iter() {
                let q = proj[s as usize];
                if q != 0 && !g.contains(&q) {
                    g.push(q);
                }
            }
            g
        };
        let lift = Lifted { cover, reps, proj };
        let rule = if n <= TABLE_CAP {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    let c = lift.cover.mul(lift.reps[a] as usize, lift.reps[b] as usize);
                    t[a * n + b] = lift.proj[c];
                }
            }
            MulRule::Table(Arc::new(t))
        } else {
            MulRule::Lifted(Arc::new(lift))
        };
        Self::finish(n, rule, gens, Backing::Table)
    }

    fn greedy_generators(n: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<u32> {
        let mut mask = vec![false; n];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut gens: Vec<u32> = Vec::new();
        for x in 0..n {
            if mask[x] {
                continue;
            }
            gens.push(x as u32);
            let mut frontier: Vec<usize> = Vec::new();
            for &e in &members {
                let y = mul(e, x);
                if !mask[y] {
                    mask[y] = true;
                    frontier.push(y);
                }
            }
            while let Some(e) = frontier.pop() {
                members.push(e);
                for &s in &gens {
                    let y = mul(e, s as usize);
                    if !mask[y] {
                        mask[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }

    fn finish(n: usize, mul: MulRule, generators: Vec<u32>, backing: Backing) -> Self {
        let mut g = FiniteGroup { n, mul, inv: Vec::new(), orders: Vec::new(), generators, backing };
        if n <= TABLE_CAP && !matches!(g.mul, MulRule::Table(_)) {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = g.mul(a, b) as u32;
                }
            }
            g.mul = MulRule::Table(Arc::new(t));
        }
        let mut orders = vec![0u32; n];
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let mut k = 1u32;
            let mut prev = 0usize;
            let mut acc = x;
            while acc != 0 {
                prev = acc;
                acc = g.mul(acc, x);
                k += 1;
            }
            orders[x] = k;
            // x^(k-1) is the inverse; for x = 0 the loop never runs.
            inv[x] = if x == 0 {
                0
            } else if k == 2 {
                x as u32
            } else {
                prev as u32
            };
        }
        g.orders = orders;
        g.inv = inv;
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul {
            MulRule::Table(t) => t[a * self.n + b] as usize,
            MulRule::Base(bi) => bi.mul(a as u32, b as u32) as usize,
            MulRule::Lifted(l) => {
                let c = l.cover.mul(l.reps[a] as usize, l.reps[b] as usize);
                l.proj[c] as usize
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Least `t > 0` with `a^t = 1`.
    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.elem_order(a) as i64;
        let e = k.rem_euclid(o);
        let mut acc = 0;
        let mut base = a;
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn generators(&self) -> Vec<usize> {
        self.generators.iter().map(|&g| g as usize).collect()
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    /// Permutation images (0-based) of element `x`, for permutation groups.
    pub fn permutation(&self, x: usize) -> Option<&[u32]> {
        match &self.backing {
            Backing::Permutation { degree, images } => Some(&images[x * degree..(x + 1) * degree]),
            Backing::Table => None,
        }
    }

    /// Looks up the index of a permutation given by 0-based images.
    pub fn index_of_permutation(&self, images: &[u32]) -> Option<usize> {
        let MulRule::Base(bi) = &self.mul else {
            // small permutation groups carry a table; fall back to a scan
            let Backing::Permutation { degree, .. } = &self.backing else {
                return None;
            };
            if images.len() != *degree {
                return None;
            }
            return (0..self.n).find(|&x| self.permutation(x) == Some(images));
        };
        if images.len() != bi.degree {
            return None;
        }
        let imgs: Vec<u32> = bi.base.iter().map(|&pt| images[pt as usize]).collect();
        let cand = if bi.packable() {
            let key = imgs.iter().fold(0u128, |acc, &v| (acc << 16) | v as u128);
            bi.packed.get(&key).copied()
        } else {
            bi.wide.get(imgs.as_slice()).copied()
        }? as usize;
        (self.permutation(cand) == Some(images)).then_some(cand)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, z: usize) -> bool {
        self.generators().iter().all(|&g| self.mul(z, g) == self.mul(g, z))
    }

    /// Dense multiplication table, row `a` holding `a*b` for every `b`.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Checks associativity on all triples (small groups) or on a fixed
    /// pseudo-random sample, identity and inverse laws everywhere.
    pub fn check_axioms(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x || self.mul(x, self.inv(x)) != 0 {
                return false;
            }
        }
        if n <= EXHAUSTIVE_ASSOC_CAP {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return false;
                        }
                    }
                }
            }
            true
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa550c);
            (0..100_000).all(|_| {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
            })
        }
    }

    /// Distinct element orders, for quick structural fingerprints.
    pub fn order_statistics(&self) -> Vec<(usize, usize)> {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for x in 0..self.n {
            *counts.entry(self.elem_order(x)).or_default() += 1;
        }
        let mut v: Vec<_> = counts.into_iter().collect();
        v.sort_unstable();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    pub(crate) fn cycle(degree: usize, cyc: &[usize]) -> Vec<usize> {
        let mut p: Vec<usize> = (1..=degree).collect();
        for (i, &v) in cyc.iter().enumerate() {
            p[v - 1] = cyc[(i + 1) % cyc.len()];
        }
        p
    }

    /// Independent closure count over raw permutation vectors.
    fn brute_force_order(degree: usize, gens: &[Vec<usize>]) -> usize {
        let id: Vec<usize> = (1..=degree).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
        let mut stack = vec![id];
        while let Some(p) = stack.pop() {
            for g in gens {
                let q: Vec<usize> = p.iter().map(|&i| g[i - 1]).collect();
                if seen.insert(q.clone()) {
                    stack.push(q);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn a5_from_five_cycle_and_three_cycle() {
        let gens = vec![cycle(5, &[1, 2, 3, 4, 5]), cycle(5, &[1, 2, 3])];
        let g = FiniteGroup::from_permutations(5, &gens).unwrap();
        assert_eq!(g.order(), brute_force_order(5, &gens));
        assert_eq!(g.order(), 60);
        assert!(g.check_axioms());
    }

    #[test]
    fn trivial_groups() {
        let g = FiniteGroup::from_permutations(1, &[]).unwrap();
        assert_eq!(g.order(), 1);
        let g = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    #[test]
    fn rejects_bad_permutations() {
        assert!(matches!(FiniteGroup::from_permutations(3, &[vec![1, 1, 2]]), Err(Error::InvalidPermutation(_))));
        assert!(matches!(FiniteGroup::from_permutations(3, &[vec![1, 2]]), Err(Error::InvalidPermutation(_))));
        assert!(matches!(FiniteGroup::from_permutations(3, &[vec![1, 2, 4]]), Err(Error::InvalidPermutation(_))));
    }

    #[test]
    fn order_cap_is_enforced() {
        let gens = vec![cycle(6, &[1, 2, 3, 4, 5, 6]), cycle(6, &[1, 2])];
        assert_eq!(
            FiniteGroup::from_permutations_capped(6, &gens, 100).unwrap_err(),
            Error::OrderCapExceeded { cap: 100 }
        );
    }

    #[test]
    fn element_orders_and_inverses() {
        let gens = vec![cycle(7, &[1, 2, 3, 4, 5, 6, 7]), cycle(7, &[1, 2, 3])];
        let g = FiniteGroup::from_permutations(7, &gens).unwrap();
        assert_eq!(g.order(), 2520);
        for x in (0..g.order()).step_by(7) {
            assert_eq!(g.mul(x, g.inv(x)), 0);
            assert_eq!(g.pow(x, g.elem_order(x) as i64), 0);
            for t in 1..g.elem_order(x) {
                assert_ne!(g.pow(x, t as i64), 0);
            }
        }
        assert!(g.check_axioms());
        let p = g.permutation(5).unwrap().to_vec();
        assert_eq!(g.index_of_permutation(&p), Some(5));
    }

    #[test]
    fn table_relabels_identity() {
        // C3 with identity stored at label 2
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table(&rows).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.mul(1, 2), 0);
        assert_eq!(g.elem_order(1), 3);
        assert!(FiniteGroup::from_table(&[vec![0, 1], vec![0, 1]]).is_err());
        // latin square that is not associative (order-5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&loop5), Err(Error::InvalidTable(_))));
    }
}
