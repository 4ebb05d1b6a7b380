//! The twisted group algebra `k_αG` over `F_q` and a brute-force
//! computation of its first Hochschild cohomology as outer derivations.
//!
//! Notation: `f(ŷ) = Σ_u F_y[u] û`, and for a basis element `ŝ`
//!
//! * `(a ŝ)[u] = α(us⁻¹, s) a[us⁻¹]`
//! * `(ŝ b)[u] = α(s, s⁻¹u) b[s⁻¹u]`
//!
//! A linear map `f` is a derivation iff `D(a, b) = f(ab) − f(a)b − a f(b)`
//! vanishes. Expanding `f(a·bc)` two ways gives
//!
//! ```text
//! D(a, bc) = D(ab, c) + D(a, b)c − a D(b, c)
//! ```
//!
//! so if `f(1) = 0` and `D(ŷ, ŝ) = 0` for every `y` and every generator
//! `s`, induction on the word length of the second argument gives
//! `D = 0` everywhere. We therefore only impose the generator equations.
//!
//! Unknowns are `v_k = f(ŝ_k)`. Along a breadth-first spanning tree of the
//! right Cayley graph, `ĥŝ = α(h, s)ŷ` lets us write
//! `f(ŷ) = α(h, s)⁻¹ (f(ĥ)ŝ + ĥ v_s)`, which makes every tree-edge equation
//! hold identically; only the remaining edges contribute rows.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::extension::CentralExtension;
use crate::field::{FieldSpec, Fq, RowReducer};
use crate::group::FiniteGroup;

pub const DEFAULT_ORACLE_CAP: usize = 256;

/// Structure constants `x̂ŷ = α(x, y) (xy)^`.
#[derive(Clone, Debug)]
pub struct TwistedAlgebra {
    field: FieldSpec,
    n: usize,
    prod: Vec<u32>,
    scalar: Vec<Fq>,
    inv: Vec<u32>,
    generators: Vec<usize>,
}

/// Sparse linear form in the oracle unknowns.
type Form = Vec<(u32, Fq)>;

impl TwistedAlgebra {
    /// `k_{α^i}G` for the cocycle of `ext`, over `F_p(ζ_m)`.
    pub fn new(ext: &CentralExtension, i: usize, p: u64) -> Result<Self> {
        Self::over_field(ext, i, ext.field(p)?)
    }

    /// Same algebra over a chosen field containing `ζ_m`, such as an
    /// extension of `F_p(ζ_m)`.
    pub fn over_field(ext: &CentralExtension, i: usize, field: FieldSpec) -> Result<Self> {
        if field.root_order() != ext.m() as u64 {
            return Err(Error::Precondition(format!(
                "field carries ζ_{}, extension needs ζ_{}",
                field.root_order(),
                ext.m()
            )));
        }
        let g = ext.group();
        let n = g.order();
        let mut scalar = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                scalar.push(ext.cocycle(&field, i, x, y));
            }
        }
        Ok(Self::assemble(field, g, scalar))
    }

    /// Algebra with arbitrary scalars `alpha(x, y)`; no cocycle check.
    pub fn from_fn(field: FieldSpec, g: &FiniteGroup, alpha: impl Fn(usize, usize) -> Fq) -> Self {
        let n = g.order();
        let scalar = (0..n * n).map(|k| alpha(k / n, k % n)).collect();
        Self::assemble(field, g, scalar)
    }

    fn assemble(field: FieldSpec, g: &FiniteGroup, scalar: Vec<Fq>) -> Self {
        let n = g.order();
        let mut prod = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                prod.push(g.mul(x, y) as u32);
            }
        }
        let inv = (0..n).map(|x| g.inv(x) as u32).collect();
        TwistedAlgebra { field, n, prod, scalar, inv, generators: g.generators() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn product(&self, x: usize, y: usize) -> usize {
        self.prod[x * self.n + y] as usize
    }

    #[inline]
    pub fn scalar(&self, x: usize, y: usize) -> Fq {
        self.scalar[x * self.n + y]
    }

    /// Same algebra with `α(x, y)` multiplied by `factor`.
    pub fn perturbed(&self, x: usize, y: usize, factor: Fq) -> Self {
        let mut a = self.clone();
        let k = x * self.n + y;
        a.scalar[k] = a.field.mul(a.scalar[k], factor);
        a
    }

    #[inline]
    fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    /// Checks `α(x,y)α(xy,z) = α(x,yz)α(y,z)` on all triples.
    pub fn satisfies_cocycle_identity(&self) -> bool {
        let f = &self.field;
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.product(x, y);
                (0..n).all(|z| {
                    let lhs = f.mul(self.scalar(x, y), self.scalar(xy, z));
                    let rhs = f.mul(self.scalar(x, self.product(y, z)), self.scalar(y, z));
                    lhs == rhs
                })
            })
        })
    }

    /// `1̂` is a two-sided unit.
    pub fn is_normalized(&self) -> bool {
        (0..self.n).all(|x| self.scalar(0, x) == Fq::ONE && self.scalar(x, 0) == Fq::ONE)
    }

    /// Dimension of the centre: `c` with `ŝc = cŝ` for every generator.
    pub fn center_dim(&self) -> usize {
        let f = &self.field;
        let n = self.n;
        let mut rr = RowReducer::new(f, n);
        let mut row = vec![Fq::ZERO; n];
        for &s in &self.generators {
            let si = self.inv(s);
            for u in 0..n {
                if rr.is_full() {
                    return 0;
                }
                row.iter_mut().for_each(|c| *c = Fq::ZERO);
                let l = self.product(si, u);
                let r = self.product(u, si);
                row[l] = f.add(row[l], self.scalar(s, l));
                row[r] = f.sub(row[r], self.scalar(r, s));
                rr.insert(&mut row);
            }
        }
        n - rr.rank()
    }

    /// Dimension of the space of derivations, with the algebra's own
    /// generators.
    pub fn derivation_space_dim(&self, cap: usize) -> Result<usize> {
        let gens = self.generators.clone();
        self.derivation_space_dim_with(&gens, cap)
    }

    /// Same, with the Leibniz system built on `gens` (which must generate).
    pub fn derivation_space_dim_with(&self, gens: &[usize], cap: usize) -> Result<usize> {
        let n = self.n;
        if n > cap {
            return Err(Error::OracleCapExceeded { n, cap });
        }
        let f = &self.field;
        let width = gens.len() * n;
        let unknown = |k: usize, u: usize| (k * n + u) as u32;

        // Breadth-first spanning tree of y -> y s.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut order = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut tree_edge = vec![false; n * gens.len()];
        while let Some(h) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let y = self.product(h, s);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((h, k));
                    tree_edge[h * gens.len() + k] = true;
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Precondition("the given elements do not generate the group".into()));
        }

        // F[y][u] as sparse forms in the unknowns.
        let mut forms: Vec<Vec<Form>> = vec![Vec::new(); n];
        forms[0] = vec![Vec::new(); n];
        for &y in &order[1..] {
            let (h, k) = parent[y].expect("tree");
            let s = gens[k];
            let (si, hi) = (self.inv(s), self.inv(h));
            let c = f.inv(self.scalar(h, s));
            let mut fy = Vec::with_capacity(n);
            for u in 0..n {
                let w = self.product(u, si);
                let mut form: Form =
                    forms[h][w].iter().map(|&(j, a)| (j, f.mul(c, f.mul(self.scalar(w, s), a)))).collect();
                let t = self.product(hi, u);
                push_term(f, &mut form, unknown(k, t), f.mul(c, self.scalar(h, t)));
                fy.push(form);
            }
            forms[y] = fy;
        }

        let mut rr = RowReducer::new(f, width);
        let mut row = vec![Fq::ZERO; width];
        for y in 0..n {
            for (k, &s) in gens.iter().enumerate() {
                if tree_edge[y * gens.len() + k] {
                    continue;
                }
                let ys = self.product(y, s);
                let (si, yi) = (self.inv(s), self.inv(y));
                let a = self.scalar(y, s);
                for u in 0..n {
                    if rr.is_full() {
                        return Ok(0);
                    }
                    row.iter_mut().for_each(|c| *c = Fq::ZERO);
                    // α(y,s) F_{ys}[u] − α(us⁻¹,s) F_y[us⁻¹] − α(y,y⁻¹u) v_s[y⁻¹u]
                    for &(j, c) in &forms[ys][u] {
                        let j = j as usize;
                        row[j] = f.add(row[j], f.mul(a, c));
                    }
                    let w = self.product(u, si);
                    let b = self.scalar(w, s);
                    for &(j, c) in &forms[y][w] {
                        let j = j as usize;
                        row[j] = f.sub(row[j], f.mul(b, c));
                    }
                    let t = self.product(yi, u);
                    let j = unknown(k, t) as usize;
                    row[j] = f.sub(row[j], self.scalar(y, t));
                    rr.insert(&mut row);
                }
            }
        }
        Ok(width - rr.rank())
    }

    /// `dim HH^1 = dim Der − (n − dim Z)`.
    pub fn hh1_oracle(&self, cap: usize) -> Result<usize> {
        let der = self.derivation_space_dim(cap)?;
        let inner = self.n - self.center_dim();
        der.checked_sub(inner).ok_or_else(|| {
            Error::Validation(format!(
                "{der} derivations but {inner} inner ones; the structure constants are not associative"
            ))
        })
    }
}

fn push_term(f: &FieldSpec, form: &mut Form, j: u32, c: Fq) {
    match form.iter_mut().find(|(k, _)| *k == j) {
        Some((_, a)) => *a = f.add(*a, c),
        None => form.push((j, c)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_cover, builtin_group};
    use crate::field::FqMatrix;

    fn untwisted(name: &str, p: u64) -> TwistedAlgebra {
        TwistedAlgebra::new(&CentralExtension::trivial(builtin_group(name).unwrap()), 0, p).unwrap()
    }

    /// Derivations by brute force: all n³ Leibniz equations on the n²
    /// entries of f, solved densely.
    fn brute_force_derivations(a: &TwistedAlgebra) -> usize {
        let f = a.field();
        let n = a.dim();
        let var = |x: usize, u: usize| x * n + u;
        let mut rows = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let xy = a.product(x, y);
                for u in 0..n {
                    let mut row = vec![Fq::ZERO; n * n];
                    let add = |row: &mut Vec<Fq>, j: usize, c: Fq| row[j] = f.add(row[j], c);
                    add(&mut row, var(xy, u), a.scalar(x, y));
                    for w in 0..n {
                        if a.product(w, y) == u {
                            add(&mut row, var(x, w), f.neg(a.scalar(w, y)));
                        }
                        if a.product(x, w) == u {
                            add(&mut row, var(y, w), f.neg(a.scalar(x, w)));
                        }
                    }
                    rows.push(row);
                }
            }
        }
        FqMatrix::from_rows(rows).nullspace_dim(f)
    }

    #[test]
    fn trivial_algebra() {
        let a = untwisted("C1", 2);
        assert_eq!(a.dim(), 1);
        assert_eq!(a.derivation_space_dim(256).unwrap(), 0);
        assert_eq!(a.center_dim(), 1);
        assert_eq!(a.hh1_oracle(256).unwrap(), 0);
    }

    #[test]
    fn cyclic_group_algebras() {
        let c2 = untwisted("C2", 2);
        assert_eq!(c2.derivation_space_dim(256).unwrap(), 2);
        assert_eq!(brute_force_derivations(&c2), 2);
        assert_eq!(c2.hh1_oracle(256).unwrap(), 2);
        let c3 = untwisted("C3", 3);
        assert_eq!(c3.derivation_space_dim(256).unwrap(), 3);
        assert_eq!(brute_force_derivations(&c3), 3);
    }

    #[test]
    fn matches_full_leibniz_system() {
        for (name, p) in [("S3", 2), ("S3", 3), ("V4", 2), ("Q8", 2), ("C6", 3), ("S4", 3)] {
            let a = untwisted(name, p);
            assert_eq!(a.derivation_space_dim(256).unwrap(), brute_force_derivations(&a), "{name} p={p}");
        }
        let q8 = TwistedAlgebra::new(&builtin_cover("Q8").unwrap(), 1, 3).unwrap();
        assert_eq!(q8.derivation_space_dim(256).unwrap(), brute_force_derivations(&q8));
        let sl23 = TwistedAlgebra::new(&builtin_cover("SL23").unwrap(), 1, 3).unwrap();
        assert_eq!(sl23.derivation_space_dim(256).unwrap(), brute_force_derivations(&sl23));
    }

    #[test]
    fn quaternion_twist_of_klein_four() {
        let a = TwistedAlgebra::new(&builtin_cover("Q8").unwrap(), 1, 3).unwrap();
        assert_eq!(a.dim(), 4);
        let minus_one = a.field().from_int(-1);
        assert_eq!((1..4).filter(|&x| a.scalar(x, x) == minus_one).count(), 3);
        assert_eq!(a.center_dim(), 1);
        assert_eq!(a.hh1_oracle(256).unwrap(), 0);
    }

    #[test]
    fn untwisted_is_plain_group_algebra() {
        let a = TwistedAlgebra::new(&builtin_cover("SL23").unwrap(), 0, 3).unwrap();
        assert!((0..a.dim()).all(|x| (0..a.dim()).all(|y| a.scalar(x, y) == Fq::ONE)));
        assert_eq!(a.center_dim(), 4);
    }

    #[test]
    fn a5_in_characteristic_two() {
        let a = untwisted("A5", 2);
        assert_eq!(a.center_dim(), 5);
        assert_eq!(a.hh1_oracle(256).unwrap(), 2);
    }

    #[test]
    fn generating_set_does_not_matter() {
        let a = untwisted("S4", 2);
        let base = a.derivation_space_dim(256).unwrap();
        let all: Vec<usize> = (1..24).collect();
        assert_eq!(a.derivation_space_dim_with(&all, 256).unwrap(), base);
        let g = builtin_group("S4").unwrap();
        let three: Vec<usize> = g.generators().into_iter().chain([5]).collect();
        assert_eq!(a.derivation_space_dim_with(&three, 256).unwrap(), base);
        assert!(a.derivation_space_dim_with(&[g.generators()[0]], 256).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let a = untwisted("A5", 2);
        assert_eq!(a.derivation_space_dim(59), Err(Error::OracleCapExceeded { n: 60, cap: 59 }));
    }

    #[test]
    fn cocycle_checks() {
        let a = TwistedAlgebra::new(&builtin_cover("SL25").unwrap(), 1, 3).unwrap();
        assert!(a.satisfies_cocycle_identity());
        assert!(a.is_normalized());
        let bad = a.perturbed(3, 7, a.field().from_int(-1));
        assert!(!bad.satisfies_cocycle_identity());
    }
}
