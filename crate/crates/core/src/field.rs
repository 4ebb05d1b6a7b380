//! The finite field `F_q = F_p(ζ_m)` and the linear algebra run over it.
//!
//! Elements are coefficient vectors over `F_p` modulo a monic irreducible
//! polynomial, encoded as the integer `Σ c_i p^i`. Multiplication goes
//! through discrete log tables, so `q` is capped at [`MAX_FIELD_SIZE`].

use crate::arith::{gcd, is_prime, multiplicative_order, prime_divisors};
use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 1 << 20;
const ADD_TABLE_CAP: u64 = 1024;

/// An element of `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The integer encoding `Σ c_i p^i`.
    pub fn encoding(self) -> u32 {
        self.0
    }
}

/// `F_p(ζ_m)` with deterministic modulus and root choices.
#[derive(Clone)]
pub struct FieldSpec {
    p: u64,
    m: u64,
    d: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: Fq,
    zeta: Fq,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}^{} (m = {}, modulus {:?})", self.p, self.d, self.m, self.modulus)
    }
}

/// Digit vectors in lexicographic order, low-degree coefficient first.
fn lex_digits(idx: u64, p: u64, d: u32) -> Vec<u64> {
    (0..d).map(|i| (idx / p.pow(d - 1 - i)) % p).collect()
}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let d = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * d.max(1)];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (d..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        // x^k = x^(k-d) * x^d and x^d = -(lower terms of modulus)
        for (t, &mc) in modulus[..d].iter().enumerate() {
            prod[k - d + t] = (prod[k - d + t] + (p - mc) * c) % p;
        }
        prod[k] = 0;
    }
    prod.truncate(d);
    prod
}

/// Remainder of `a` modulo monic `b`, both low-degree-first.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - bc) * c) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        for idx in 0..p.pow(k as u32) {
            let mut g = lex_digits(idx, p, k as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// The smallest field `F_p(ζ_m)`: degree `d = ord_m(p)`.
    pub fn new(p: u64, m: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || gcd(p, m) != 1 {
            return Err(Error::InvalidTwistField { p, m });
        }
        Self::with_degree(p, m, multiplicative_order(p, m))
    }

    /// `F_{p^d}` with `ζ_m` inside; `d` must be a multiple of `ord_m(p)`.
    pub fn with_degree(p: u64, m: u64, d: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || gcd(p, m) != 1 {
            return Err(Error::InvalidTwistField { p, m });
        }
        if d == 0 || !d.is_multiple_of(multiplicative_order(p, m)) {
            return Err(Error::Precondition(format!("degree {d} does not contain the {m}-th roots of unity")));
        }
        let q = p.checked_pow(d).filter(|&q| q <= MAX_FIELD_SIZE).ok_or(Error::FieldTooLarge { p, degree: d })?;

        let modulus = (0..p.pow(d))
            .map(|idx| {
                let mut f = lex_digits(idx, p, d);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");

        let encode = |digits: &[u64]| -> u32 { digits.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32 };
        let decode = |x: u64| -> Vec<u64> { (0..d).map(|i| (x / p.pow(i)) % p).collect() };
        let one = {
            let mut v = vec![0; d as usize];
            v[0] = 1;
            v
        };
        let pow_poly = |base: &[u64], mut e: u64| {
            let mut acc = one.clone();
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mulmod(&acc, &b, &modulus, p);
                }
                b = poly_mulmod(&b, &b, &modulus, p);
                e >>= 1;
            }
            acc
        };
        let order_factors = prime_divisors(q - 1);
        let gen_digits = (1..q)
            .map(|idx| lex_digits(idx, p, d))
            .find(|g| order_factors.iter().all(|&r| pow_poly(g, (q - 1) / r) != one))
            .expect("F_q^x is cyclic");

        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = one.clone();
        for (k, slot) in exp.iter_mut().enumerate() {
            let e = encode(&cur);
            *slot = e;
            log[e as usize] = k as u32;
            cur = poly_mulmod(&cur, &gen_digits, &modulus, p);
        }
        let add_table = (q <= ADD_TABLE_CAP).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let da = decode(a);
                for b in 0..q {
                    let db = decode(b);
                    let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = encode(&s);
                }
            }
            t
        });
        let generator = Fq(encode(&gen_digits));
        let zeta = Fq(exp[((q - 1) / m) as usize % (q - 1) as usize]);
        Ok(FieldSpec { p, m, d, q, modulus, generator, zeta, exp, log, add_table })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Order `m` of the distinguished root of unity.
    pub fn root_order(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    /// Monic modulus, low-degree coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive_root(&self) -> Fq {
        self.generator
    }

    /// A root of unity of exact order `m`.
    pub fn zeta(&self) -> Fq {
        self.zeta
    }

    /// `ζ^t`, `t` read modulo `m`.
    pub fn zeta_pow(&self, t: i64) -> Fq {
        let m = self.m as i64;
        let step = (self.q - 1) / self.m;
        Fq(self.exp[(t.rem_euclid(m) as u64 * step) as usize])
    }

    /// Embeds an integer via `F_p`.
    pub fn from_int(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q as u32).map(Fq)
    }

    /// Coefficient vector, low degree first.
    pub fn coefficients(&self, a: Fq) -> Vec<u64> {
        (0..self.d).map(|i| (a.0 as u64 / self.p.pow(i)) % self.p).collect()
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if let Some(t) = &self.add_table {
            return Fq(t[(a.0 as u64 * self.q + b.0 as u64) as usize]);
        }
        if self.d == 1 {
            return Fq(((a.0 as u64 + b.0 as u64) % self.p) as u32);
        }
        let (mut x, mut y, mut out, mut place) = (a.0 as u64, b.0 as u64, 0u64, 1u64);
        for _ in 0..self.d {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fq(out as u32)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        if self.d == 1 {
            return Fq(((self.p - a.0 as u64) % self.p) as u32);
        }
        let (mut x, mut out, mut place) = (a.0 as u64, 0u64, 1u64);
        for _ in 0..self.d {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Fq(out as u32)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        Fq(self.exp[(s % (self.q - 1)) as usize])
    }

    pub fn inv(&self, a: Fq) -> Fq {
        assert!(!a.is_zero(), "zero has no inverse");
        let l = self.log[a.0 as usize] as u64;
        Fq(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn pow(&self, a: Fq, e: i64) -> Fq {
        if a.is_zero() {
            return if e == 0 { Fq::ONE } else { Fq::ZERO };
        }
        let l = self.log[a.0 as usize] as i128 * e as i128;
        Fq(self.exp[l.rem_euclid((self.q - 1) as i128) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fq) -> u64 {
        let l = self.log[a.0 as usize] as u64;
        (self.q - 1) / gcd(l, self.q - 1)
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as i64)
    }
}

/// Dense row-major matrix over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix { rows, cols, data: vec![Fq::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fq>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        FqMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fq {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fq) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn scaled(&self, f: &FieldSpec, s: Fq) -> Self {
        FqMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f.mul(s, x)).collect() }
    }

    pub fn minus_identity(&self, f: &FieldSpec) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = f.sub(m.get(i, i), Fq::ONE);
            m.set(i, i, v);
        }
        m
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self, f: &FieldSpec) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
                continue;
            };
            for k in 0..cols {
                a.swap(rank * cols + k, pr * cols + k);
            }
            let inv = f.inv(a[rank * cols + c]);
            for k in c..cols {
                a[rank * cols + k] = f.mul(inv, a[rank * cols + k]);
            }
            for r in rank + 1..rows {
                let factor = a[r * cols + c];
                if factor.is_zero() {
                    continue;
                }
                for k in c..cols {
                    let v = f.mul(factor, a[rank * cols + k]);
                    a[r * cols + k] = f.sub(a[r * cols + k], v);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    pub fn nullspace_dim(&self, f: &FieldSpec) -> usize {
        self.cols - self.rank(f)
    }
}

/// `dim { f : s·(f∘C) = f }` for row functionals `f`, i.e. the nullity of
/// `s·Cᵀ − I`.
pub fn fixed_space_dim(f: &FieldSpec, c: &FqMatrix, s: Fq) -> usize {
    assert_eq!(c.rows(), c.cols(), "fixed_space_dim needs a square matrix");
    c.transpose().scaled(f, s).minus_identity(f).nullspace_dim(f)
}

/// Incremental reduced row echelon form. Rows are fed one at a time as
/// dense buffers; pivot rows are kept fully reduced so an incoming row only
/// needs one pass over its entries in pivot columns.
pub struct RowReducer<'f> {
    field: &'f FieldSpec,
    width: usize,
    rows: Vec<Vec<Fq>>,
    pivot_of_col: Vec<u32>,
}

const NO_PIVOT: u32 = u32::MAX;

impl<'f> RowReducer<'f> {
    pub fn new(field: &'f FieldSpec, width: usize) -> Self {
        RowReducer { field, width, rows: Vec::new(), pivot_of_col: vec![NO_PIVOT; width] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `row` in place; returns `true` if it enlarged the row space.
    /// The buffer is left in an unspecified state.
    pub fn insert(&mut self, row: &mut [Fq]) -> bool {
        let f = self.field;
        debug_assert_eq!(row.len(), self.width);
        for c in 0..self.width {
            let v = row[c];
            if v.is_zero() {
                continue;
            }
            let pr = self.pivot_of_col[c];
            if pr == NO_PIVOT {
                continue;
            }
            // pivot rows vanish before their pivot and on other pivot columns
            let prow = &self.rows[pr as usize];
            for k in c..self.width {
                let pk = prow[k];
                if !pk.is_zero() {
                    row[k] = f.sub(row[k], f.mul(v, pk));
                }
            }
        }
        let Some(lead) = (0..self.width).find(|&c| !row[c].is_zero()) else {
            return false;
        };
        let inv = f.inv(row[lead]);
        for x in row[lead..].iter_mut() {
            *x = f.mul(inv, *x);
        }
        for prow in self.rows.iter_mut() {
            let v = prow[lead];
            if v.is_zero() {
                continue;
            }
            for k in lead..self.width {
                let rk = row[k];
                if !rk.is_zero() {
                    prow[k] = f.sub(prow[k], f.mul(v, rk));
                }
            }
        }
        self.pivot_of_col[lead] = self.rows.len() as u32;
        self.rows.push(row.to_vec());
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_sizes() {
        let f = FieldSpec::new(7, 6).unwrap();
        assert_eq!((f.degree(), f.size()), (1, 7));
        let f = FieldSpec::new(5, 6).unwrap();
        assert_eq!((f.degree(), f.size()), (2, 25));
        assert_eq!(FieldSpec::new(2, 2).unwrap_err(), Error::InvalidTwistField { p: 2, m: 2 });
        assert_eq!(FieldSpec::new(6, 5).unwrap_err(), Error::NotPrime(6));
    }

    #[test]
    fn deterministic_choices() {
        // F_25: monic quadratics x^2 + c1 x + c0 ordered by (c0, c1). c0 = 0
        // is reducible, x^2 + 1 splits since -1 = 2^2, and x^2 + x + 1 has
        // discriminant -3 = 2, a non-residue mod 5.
        let f = FieldSpec::new(5, 6).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // F_9: x^2 + 1
        let f = FieldSpec::new(3, 4).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // F_7: least primitive root is 3
        let f = FieldSpec::new(7, 3).unwrap();
        assert_eq!(f.primitive_root(), f.from_int(3));
    }

    #[test]
    fn zeta_has_exact_order() {
        for (p, m) in [(7, 6), (5, 6), (3, 2), (2, 3), (5, 3), (11, 5), (2, 7), (3, 8)] {
            let f = FieldSpec::new(p, m).unwrap();
            assert_eq!(f.mult_order(f.zeta()), m, "p={p} m={m}");
            assert_eq!(f.pow(f.zeta(), m as i64), Fq::ONE);
        }
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.zeta(), Fq::ONE);
    }

    #[test]
    fn extension_keeps_root_order() {
        let f = FieldSpec::with_degree(5, 6, 4).unwrap();
        assert_eq!(f.size(), 625);
        assert_eq!(f.mult_order(f.zeta()), 6);
        assert!(FieldSpec::with_degree(5, 6, 3).is_err());
    }

    #[test]
    fn rank_examples() {
        let f = FieldSpec::new(7, 1).unwrap();
        let i3 = FqMatrix::identity(3);
        assert_eq!((i3.rank(&f), i3.nullspace_dim(&f)), (3, 0));
        let z = FqMatrix::zeros(2, 5);
        assert_eq!((z.rank(&f), z.nullspace_dim(&f)), (0, 5));
        let row = vec![f.from_int(1), f.from_int(2), f.from_int(3)];
        assert_eq!(FqMatrix::from_rows(vec![row.clone(), row]).rank(&f), 1);
    }

    /// Brute force over all f in F_q^2.
    fn brute_fixed(f: &FieldSpec, c: &FqMatrix, s: Fq) -> usize {
        let n = c.rows();
        assert_eq!(n, 2);
        let mut count = 0u64;
        for a in f.elements() {
            for b in f.elements() {
                let v = [a, b];
                // (f∘C)(e_j) = Σ_i f_i C[i][j]
                let ok = (0..n).all(|j| {
                    let fc = (0..n).fold(Fq::ZERO, |acc, i| f.add(acc, f.mul(v[i], c.get(i, j))));
                    f.mul(s, fc) == v[j]
                });
                if ok {
                    count += 1;
                }
            }
        }
        let mut dim = 0;
        let mut c = count;
        while c > 1 {
            c /= f.size();
            dim += 1;
        }
        dim
    }

    #[test]
    fn fixed_space_examples() {
        let f = FieldSpec::new(7, 6).unwrap();
        assert_eq!(fixed_space_dim(&f, &FqMatrix::identity(3), Fq::ONE), 3);
        assert_eq!(fixed_space_dim(&f, &FqMatrix::identity(2), f.zeta()), 0);
        let swap = FqMatrix::from_rows(vec![vec![Fq::ZERO, Fq::ONE], vec![Fq::ONE, Fq::ZERO]]);
        let minus_one = f.from_int(-1);
        assert_eq!(brute_fixed(&f, &swap, minus_one), 1);
        assert_eq!(fixed_space_dim(&f, &swap, minus_one), 1);
        assert_eq!(fixed_space_dim(&f, &swap, Fq::ONE), brute_fixed(&f, &swap, Fq::ONE));
        // non-symmetric C distinguishes C from its transpose
        let c = FqMatrix::from_rows(vec![vec![f.from_int(2), f.from_int(3)], vec![f.from_int(0), f.from_int(4)]]);
        for s in [f.from_int(4), f.from_int(2), f.inv(f.from_int(2))] {
            assert_eq!(fixed_space_dim(&f, &c, s), brute_fixed(&f, &c, s));
        }
    }

    fn small_fields() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![Just((2u64, 3u64)), Just((3, 2)), Just((3, 4)), Just((5, 6)), Just((7, 6)), Just((2, 5))]
            .prop_map(|(p, m)| FieldSpec::new(p, m).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(f in small_fields(), a in 0u32..10_000, b in 0u32..10_000, c in 0u32..10_000) {
            let q = f.size() as u32;
            let (a, b, c) = (Fq(a % q), Fq(b % q), Fq(c % q));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
            prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a)), Fq::ONE);
                prop_assert_eq!(f.pow(a, f.size() as i64 - 1), Fq::ONE);
            }
        }

        #[test]
        fn rank_is_transpose_invariant(f in small_fields(), r in 1usize..6, c in 1usize..6, seed in any::<u64>()) {
            let q = f.size();
            let mut s = seed;
            let rows: Vec<Vec<Fq>> = (0..r).map(|_| (0..c).map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                // bias towards zeros to get rank deficiency
                let v = (s >> 33) % (q + 3);
                Fq(if v >= q { 0 } else { v as u32 })
            }).collect()).collect();
            let m = FqMatrix::from_rows(rows.clone());
            prop_assert_eq!(m.rank(&f), m.transpose().rank(&f));
            let mut red = RowReducer::new(&f, c);
            for mut row in rows {
                red.insert(&mut row);
            }
            prop_assert_eq!(red.rank(), m.rank(&f));
        }
    }
}
