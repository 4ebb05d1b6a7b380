//! `HH^1(k_αG) ≅ ⊕_x H^1(C_G(x); k_αx̂)` summed over class representatives.
//!
//! For α-regular `x` the summand is `Hom(C_G(x), k)`. Otherwise, with
//! `N = ker λ_α`, it is the subspace of `Hom(N, k)` fixed by
//! `f ↦ λ_α(g₀) f(g₀⁻¹ · g₀)` for one `g₀` whose λ-value generates the
//! image of λ_α: `N` acts trivially on `Hom(N, k)`, so the action of
//! `C_G(x)` factors through the cyclic group `C_G(x)/N`.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{exact_log, gcd, is_prime};
use crate::error::{Error, Result};
use crate::extension::CentralExtension;
use crate::field::{fixed_space_dim, FieldSpec, FqMatrix};
use crate::group::{centralizer, conjugacy_classes, frattini_p_kernel, p_rank_hom, Closure, ConjugacyClass, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassContribution {
    pub rep: usize,
    pub class_size: usize,
    pub regular: bool,
    pub kernel_order: usize,
    pub quotient_order: usize,
    pub dim: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckFlags {
    pub sum_rule_checked: bool,
    pub symmetry_checked: bool,
    pub oracle_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HH1Report {
    pub p: u64,
    pub m: usize,
    pub twist: usize,
    pub classes: Vec<ClassContribution>,
    pub dim: usize,
    pub flags: CheckFlags,
}

impl HH1Report {
    /// Number of α-regular classes, i.e. the dimension of the centre.
    pub fn hh0(&self) -> usize {
        self.classes.iter().filter(|c| c.regular).count()
    }
}

/// Reports for every twist with the sum-rule and symmetry checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistSummary {
    pub p: u64,
    pub m: usize,
    pub reports: Vec<HH1Report>,
    /// `dim HH^1(kĜ)` from the untwisted decomposition of `Ĝ`.
    pub cover_dim: usize,
    pub sum_rule: bool,
    pub symmetry: bool,
}

impl TwistSummary {
    pub fn dims(&self) -> Vec<usize> {
        self.reports.iter().map(|r| r.dim).collect()
    }
}

/// Classes and centralisers of `G`, shared across twists.
pub struct Decomposer<'a> {
    ext: &'a CentralExtension,
    classes: Vec<(ConjugacyClass, Subgroup<'a>)>,
}

impl<'a> Decomposer<'a> {
    pub fn new(ext: &'a CentralExtension) -> Self {
        let g = ext.group();
        let classes = conjugacy_classes(g)
            .into_iter()
            .map(|c| {
                let cent = centralizer(g, c.representative);
                (c, cent)
            })
            .collect();
        Decomposer { ext, classes }
    }

    pub fn classes(&self) -> impl Iterator<Item = &ConjugacyClass> {
        self.classes.iter().map(|(c, _)| c)
    }

    pub fn hh1(&self, i: usize, p: u64) -> Result<HH1Report> {
        self.hh1_over(&checked_field(self.ext, p)?, i)
    }

    /// Same computation with all linear algebra over `field`.
    pub fn hh1_over(&self, field: &FieldSpec, i: usize) -> Result<HH1Report> {
        if field.root_order() != self.ext.m() as u64 {
            return Err(Error::Precondition(format!(
                "field carries ζ_{}, extension needs ζ_{}",
                field.root_order(),
                self.ext.m()
            )));
        }
        let p = field.characteristic();
        let classes = self
            .classes
            .iter()
            .map(|(c, cent)| contribution(self.ext, field, i, p, c.representative, c.size(), cent))
            .collect::<Vec<_>>();
        let dim = classes.iter().map(|c| c.dim).sum();
        Ok(HH1Report { p, m: self.ext.m(), twist: i % self.ext.m(), classes, dim, flags: CheckFlags::default() })
    }

    pub fn hh0(&self, i: usize) -> usize {
        self.classes.iter().filter(|(c, cent)| self.ext.is_alpha_regular_in(i, c.representative, cent)).count()
    }
}

fn checked_field(ext: &CentralExtension, p: u64) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    ext.field(p)
}

fn lambda_order(m: usize, e: usize) -> usize {
    m / gcd(m as u64, e as u64) as usize
}

fn contribution(
    ext: &CentralExtension,
    field: &FieldSpec,
    i: usize,
    p: u64,
    x: usize,
    class_size: usize,
    cent: &Subgroup<'_>,
) -> ClassContribution {
    let regular = ext.is_alpha_regular_in(i, x, cent);
    if regular {
        return ClassContribution {
            rep: x,
            class_size,
            regular,
            kernel_order: cent.order(),
            quotient_order: 1,
            dim: p_rank_hom(cent, p),
        };
    }
    let g = ext.group();
    let n = ext.regular_kernel_in(i, x, cent);
    let k = frattini_p_kernel(&n, p);
    let r = exact_log((n.order() / k.order()) as u64, p).expect("p-group quotient") as usize;
    let mut out = ClassContribution {
        rep: x,
        class_size,
        regular,
        kernel_order: n.order(),
        quotient_order: cent.order() / n.order(),
        dim: 0,
    };
    if r == 0 {
        return out;
    }

    // Basis of E = N/K: least elements not yet in <K, chosen>.
    let mut closure = Closure::new(g);
    for s in k.generating_set() {
        closure.add(s);
    }
    let mut basis = Vec::with_capacity(r);
    for &a in n.members() {
        if closure.order() == n.order() {
            break;
        }
        if !closure.contains(a) {
            closure.add(a);
            basis.push(a);
        }
    }
    debug_assert_eq!(basis.len(), r);

    // Label every element of N with its coordinate vector.
    let pu = p as usize;
    let mut coords: HashMap<usize, usize> = HashMap::with_capacity(n.order());
    let mut vec_index = 0;
    let total = pu.pow(r as u32);
    while vec_index < total {
        let mut elem = 0;
        let mut rest = vec_index;
        for &b in &basis {
            elem = g.mul(elem, g.pow(b, (rest % pu) as i64));
            rest /= pu;
        }
        for &kk in k.members() {
            coords.insert(g.mul(elem, kk), vec_index);
        }
        vec_index += 1;
    }
    let digits = |v: usize| -> Vec<i64> { (0..r).map(|j| ((v / pu.pow(j as u32)) % pu) as i64).collect() };

    let m = ext.m();
    let g0 = cent
        .members()
        .iter()
        .copied()
        .max_by_key(|&h| (lambda_order(m, ext.lambda_exponent_unchecked(i, x, h)), std::cmp::Reverse(h)))
        .expect("centraliser is non-empty");
    let s = field.zeta_pow(ext.lambda_exponent_unchecked(i, x, g0) as i64);
    let mut c0 = FqMatrix::zeros(r, r);
    for (j, &b) in basis.iter().enumerate() {
        let image = coords[&g.conj(b, g0)];
        for (row, d) in digits(image).into_iter().enumerate() {
            c0.set(row, j, field.from_int(d));
        }
    }
    out.dim = fixed_space_dim(field, &c0, s);
    out
}

/// Contribution of the class of `x`.
pub fn class_contribution(ext: &CentralExtension, i: usize, p: u64, x: usize) -> Result<ClassContribution> {
    let field = checked_field(ext, p)?;
    let g = ext.group();
    if x >= g.order() {
        return Err(Error::Precondition(format!("element index {x} out of range")));
    }
    let cent = centralizer(g, x);
    let class_size = g.order() / cent.order();
    Ok(contribution(ext, &field, i, p, x, class_size, &cent))
}

pub fn hh1_dim(ext: &CentralExtension, i: usize, p: u64) -> Result<HH1Report> {
    Decomposer::new(ext).hh1(i, p)
}

/// Number of α^i-regular classes.
pub fn hh0_dim(ext: &CentralExtension, i: usize) -> usize {
    Decomposer::new(ext).hh0(i)
}

/// All twists `i = 0..m`, with the sum rule against `kĜ` and the
/// `i ↔ m − i` symmetry checked.
pub fn all_twists(ext: &CentralExtension, p: u64) -> Result<TwistSummary> {
    let dec = Decomposer::new(ext);
    let m = ext.m();
    let mut reports = (0..m).map(|i| dec.hh1(i, p)).collect::<Result<Vec<_>>>()?;
    let cover_dim = if m == 1 {
        reports[0].dim
    } else {
        let top = CentralExtension::trivial(ext.cover_arc().clone());
        hh1_dim(&top, 0, p)?.dim
    };
    let sum_rule = reports.iter().map(|r| r.dim).sum::<usize>() == cover_dim;
    let symmetry = (0..m).all(|i| reports[i].dim == reports[(m - i) % m].dim);
    for r in &mut reports {
        r.flags.sum_rule_checked = true;
        r.flags.symmetry_checked = true;
    }
    Ok(TwistSummary { p, m, reports, cover_dim, sum_rule, symmetry })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_cover, builtin_group};
    use crate::group::is_p_element;

    #[test]
    fn a5_characteristic_two() {
        let ext = CentralExtension::trivial(builtin_group("A5").unwrap());
        let r = hh1_dim(&ext, 0, 2).unwrap();
        assert_eq!(r.dim, 2);
        assert_eq!(r.classes[0].dim, 0);
        assert_eq!(hh0_dim(&ext, 0), 5);
    }

    #[test]
    fn sl25_twists() {
        let ext = builtin_cover("SL25").unwrap();
        assert_eq!(hh1_dim(&ext, 1, 3).unwrap().dim, 1);
        let s = all_twists(&ext, 5).unwrap();
        assert_eq!(s.dims(), vec![2, 2]);
        assert_eq!(s.cover_dim, 4);
        assert!(s.sum_rule && s.symmetry);
        let g = ext.group();
        let five = (0..60).find(|&x| g.elem_order(x) == 5).unwrap();
        let c = class_contribution(&ext, 1, 5, five).unwrap();
        assert!(c.regular);
        assert_eq!(c.dim, 1);
    }

    #[test]
    fn sl23_twist() {
        let ext = builtin_cover("SL23").unwrap();
        assert_eq!(hh1_dim(&ext, 1, 3).unwrap().dim, 3);
        assert_eq!(all_twists(&ext, 3).unwrap().cover_dim, 6);
    }

    #[test]
    fn quaternion_cover() {
        let ext = builtin_cover("Q8").unwrap();
        let r = hh1_dim(&ext, 1, 3).unwrap();
        assert_eq!(r.dim, 0);
        assert_eq!(r.hh0(), 1);
        let x = (1..4).next().unwrap();
        let c = class_contribution(&ext, 1, 3, x).unwrap();
        assert!(!c.regular);
        assert_eq!((c.kernel_order, c.quotient_order, c.dim), (2, 2, 0));
    }

    #[test]
    fn rejects_bad_primes() {
        let ext = builtin_cover("SL25").unwrap();
        assert_eq!(hh1_dim(&ext, 1, 2).unwrap_err(), Error::InvalidTwistField { p: 2, m: 2 });
        assert_eq!(hh1_dim(&ext, 1, 4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn p_elements_are_regular() {
        let ext = builtin_cover("SL27").unwrap();
        let g = ext.group();
        for p in [3, 7] {
            for x in 0..g.order() {
                if is_p_element(g, x, p) {
                    assert!(ext.is_alpha_regular(1, x));
                }
            }
        }
    }
}
