//! Invariant suite over the catalog.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{TwistedAlgebra, DEFAULT_ORACLE_CAP};
use crate::arith::{gcd, is_prime, prime_divisors};
use crate::catalog::{builtin_cover, builtin_group, data_cover, BUILTIN_COVERS, BUILTIN_GROUPS, DATA_COVERS};
use crate::decomposition::{all_twists, class_contribution, Decomposer, TwistSummary};
use crate::extension::{CentralExtension, SectionChoice};
use crate::field::{fixed_space_dim, FieldSpec, FqMatrix};
use crate::group::{
    center, centralizer, conjugacy_classes, is_cyclic, p_rank_hom, prime_power_order, sylows_all_cyclic, Subgroup,
};
use crate::nonschur::{abelian_criterion, absp_criterion, certify_nonvanishing, strong_nonschur, weak_nonschur};

/// Cocycle identity is checked on all triples up to this order.
const EXHAUSTIVE_COCYCLE_CAP: usize = 128;
const SAMPLED_TRIPLES: usize = 20_000;
/// Class contributions are compared on every class member up to this order.
const REPRESENTATIVE_CAP: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Multiply one structure constant by `-1` before the algebra checks.
    CorruptCocycle,
}

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    pub oracle_cap: usize,
    pub include_data: bool,
    pub fault: Option<Fault>,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { oracle_cap: DEFAULT_ORACLE_CAP, include_data: true, fault: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub subject: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SelftestReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| o.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.outcomes.iter().filter(|o| o.status == status).count()
    }

    pub fn suite_status(&self, suite: &str) -> Option<Status> {
        let mut any = None;
        for o in self.outcomes.iter().filter(|o| o.suite == suite) {
            any = Some(match (any, o.status) {
                (_, Status::Fail) | (Some(Status::Fail), _) => Status::Fail,
                (Some(Status::Pass), _) | (_, Status::Pass) => Status::Pass,
                _ => Status::Skipped,
            });
        }
        any
    }
}

type Check = std::result::Result<Status, String>;

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

pub struct Subject {
    pub name: String,
    pub ext: CentralExtension,
    pub simple: bool,
}

/// Every builtin cover and group, plus the shipped data covers on request.
pub fn subjects(include_data: bool) -> crate::Result<Vec<Subject>> {
    let simple_quotients = ["SL25", "SL27", "SL29"];
    let simple_groups = ["A5", "A6", "A7"];
    let mut out = Vec::new();
    for name in BUILTIN_COVERS {
        out.push(Subject {
            name: format!("builtin:{name}"),
            ext: builtin_cover(name)?,
            simple: simple_quotients.contains(name),
        });
    }
    for name in BUILTIN_GROUPS.iter().chain(&["C6", "C30"]) {
        out.push(Subject {
            name: format!("builtin:{name}"),
            ext: CentralExtension::trivial(builtin_group(name)?),
            simple: simple_groups.contains(name),
        });
    }
    if include_data {
        for name in DATA_COVERS {
            out.push(Subject { name: format!("data:{name}"), ext: data_cover(name)?, simple: true });
        }
    }
    Ok(out)
}

/// Primes dividing `|Ĝ|` and coprime to `m`.
pub fn valid_primes(ext: &CentralExtension) -> Vec<u64> {
    prime_divisors(ext.cover().order() as u64).into_iter().filter(|&p| gcd(p, ext.m() as u64) == 1).collect()
}

struct Runner {
    report: SelftestReport,
}

impl Runner {
    fn run(&mut self, suite: &'static str, subject: &str, check: impl FnOnce() -> Check) {
        let (status, detail) = match check() {
            Ok(s) => (s, String::new()),
            Err(d) => (Status::Fail, d),
        };
        self.report.outcomes.push(CheckOutcome { suite, subject: subject.into(), status, detail });
    }
}

pub fn run_selftest(opts: &SelftestOptions) -> crate::Result<SelftestReport> {
    let mut runner = Runner { report: SelftestReport::default() };
    for s in subjects(opts.include_data)? {
        run_subject(&mut runner, &s, opts);
    }
    runner.run("base-change", "builtin:SL25", base_change);
    if opts.include_data {
        runner.run("golden", "data:6A7", golden_a7);
    }
    Ok(runner.report)
}

fn run_subject(r: &mut Runner, s: &Subject, opts: &SelftestOptions) {
    let ext = &s.ext;
    let name = s.name.as_str();
    let primes = valid_primes(ext);
    let dec = Decomposer::new(ext);
    let summaries: Vec<TwistSummary> = primes.iter().filter_map(|&p| all_twists(ext, p).ok()).collect();

    r.run("cocycle-identity", name, || cocycle_identity(ext, &primes, opts.fault));
    r.run("lambda", name, || lambda_checks(ext));
    r.run("section-independence", name, || section_independence(ext));
    r.run("p-elements-regular", name, || p_elements_regular(ext));
    r.run("cyclic-centraliser", name, || cyclic_centraliser(ext, &primes));
    r.run("centraliser-orders", name, || centraliser_orders(ext));
    r.run("representative-independence", name, || representative_independence(ext, &primes));
    r.run("abelian-centraliser", name, || abelian_centraliser(ext, &dec, &primes));
    r.run("oracle", name, || oracle(ext, &summaries, opts));
    r.run("sum-rule", name, || {
        ensure(summaries.len() == primes.len(), || "decomposition failed".into())?;
        for t in &summaries {
            ensure(t.sum_rule, || format!("p={}: Σ dims {:?} != {}", t.p, t.dims(), t.cover_dim))?;
        }
        Ok(Status::Pass)
    });
    r.run("symmetry", name, || {
        for t in &summaries {
            ensure(t.symmetry, || format!("p={}: dims {:?} not symmetric", t.p, t.dims()))?;
        }
        Ok(Status::Pass)
    });
    r.run("nonschur", name, || nonschur_checks(s, &summaries));
    r.run("chgab", name, || chgab(ext, &primes));
    r.run("vanishing-on-center", name, || vanishing_on_center(ext, &primes));
}

fn cocycle_identity(ext: &CentralExtension, primes: &[u64], fault: Option<Fault>) -> Check {
    let g = ext.group();
    let n = g.order();
    let m = ext.m();
    let holds = |x: usize, y: usize, z: usize| {
        let l = ext.cocycle_exponent(x, y) + ext.cocycle_exponent(g.mul(x, y), z);
        let r = ext.cocycle_exponent(x, g.mul(y, z)) + ext.cocycle_exponent(y, z);
        l % m == r % m
    };
    if n <= EXHAUSTIVE_COCYCLE_CAP {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    ensure(holds(x, y, z), || format!("fails on ({x},{y},{z})"))?;
                }
            }
        }
        // The scalar table used by the oracle must satisfy it too.
        let Some(&p) = primes.iter().find(|&&p| p > 2).or(primes.first()) else {
            return Ok(Status::Pass);
        };
        let mut a = TwistedAlgebra::new(ext, 1, p).map_err(|e| e.to_string())?;
        if fault == Some(Fault::CorruptCocycle) && n >= 3 {
            a = a.perturbed(1, 2, a.field().from_int(-1));
        }
        ensure(a.is_normalized(), || "structure constants not normalised".into())?;
        ensure(a.satisfies_cocycle_identity(), || {
            format!("structure constants over F_{} fail the identity", a.field().size())
        })?;
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..SAMPLED_TRIPLES {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            ensure(holds(x, y, z), || format!("fails on ({x},{y},{z})"))?;
        }
    }
    Ok(Status::Pass)
}

fn lambda_checks(ext: &CentralExtension) -> Check {
    let g = ext.group();
    let m = ext.m();
    for c in conjugacy_classes(g) {
        let x = c.representative;
        let cent = centralizer(g, x);
        let gens = cent.generating_set();
        for &a in cent.members() {
            let l = ext.lambda_exponent(1, x, a).map_err(|e| e.to_string())?;
            let l2 = ext.lambda_exponent_via_cocycle(1, x, a).map_err(|e| e.to_string())?;
            ensure(l == l2, || format!("λ formulas disagree at x={x}, g={a}"))?;
            for &b in &gens {
                let ab = ext.lambda_exponent_unchecked(1, x, g.mul(a, b));
                let sum = (l + ext.lambda_exponent_unchecked(1, x, b)) % m;
                ensure(ab == sum, || format!("λ not multiplicative at x={x}, ({a},{b})"))?;
            }
        }
    }
    Ok(Status::Pass)
}

fn section_independence(ext: &CentralExtension) -> Check {
    if ext.m() == 1 {
        return Ok(Status::Skipped);
    }
    let other = CentralExtension::with_section(ext.cover_arc().clone(), ext.z(), SectionChoice::GreatestIndex)
        .map_err(|e| e.to_string())?;
    let g = ext.group();
    for c in conjugacy_classes(g) {
        let x = c.representative;
        for &a in centralizer(g, x).members() {
            ensure(ext.lambda_exponent_unchecked(1, x, a) == other.lambda_exponent_unchecked(1, x, a), || {
                format!("λ depends on the section at x={x}, g={a}")
            })?;
        }
    }
    Ok(Status::Pass)
}

fn p_elements_regular(ext: &CentralExtension) -> Check {
    let m = ext.m() as u64;
    if m == 1 {
        return Ok(Status::Skipped);
    }
    let g = ext.group();
    for x in 0..g.order() {
        if gcd(g.elem_order(x) as u64, m) == 1 {
            ensure(ext.is_alpha_regular(1, x), || format!("{x} has order prime to m but is not α-regular"))?;
        }
    }
    Ok(Status::Pass)
}

fn cyclic_centraliser(ext: &CentralExtension, primes: &[u64]) -> Check {
    let g = ext.group();
    for c in conjugacy_classes(g) {
        let x = c.representative;
        let cent = centralizer(g, x);
        let p_group = prime_power_order(&cent).is_some_and(|l| primes.contains(&l) || l == 1);
        if is_cyclic(&cent) || p_group || sylows_all_cyclic(&cent) {
            for i in 0..ext.m() {
                ensure(ext.is_alpha_regular_in(i, x, &cent), || format!("x={x} should be α^{i}-regular"))?;
            }
        }
    }
    Ok(Status::Pass)
}

fn centraliser_orders(ext: &CentralExtension) -> Check {
    let g = ext.group();
    let m = ext.m();
    for c in conjugacy_classes(g) {
        let x = c.representative;
        let cent = centralizer(g, x);
        let n = ext.regular_kernel_in(1, x, &cent);
        let (pre, lifted) = ext.lifted_centralizers(x);
        ensure(pre.order() == m * cent.order(), || format!("x={x}: |C_Ĝ(x)| != m|C_G(x)|"))?;
        ensure(lifted.order() == m * n.order(), || format!("x={x}: |C_Ĝ(x̂)| != m|N|"))?;
        let regular = ext.is_alpha_regular_in(1, x, &cent);
        ensure((lifted == pre) == regular, || format!("x={x}: C_Ĝ(x̂) = C_Ĝ(x) disagrees with regularity"))?;
        let q = cent.order() / n.order();
        ensure(m.is_multiple_of(q), || format!("x={x}: |C/N| = {q} does not divide m"))?;
        ensure(q == ext.lambda_image_order(1, x, &cent), || format!("x={x}: |C/N| != |im λ|"))?;
        ensure(n.is_closed() && n.is_normal_in(&cent), || format!("x={x}: N is not a normal subgroup"))?;
    }
    Ok(Status::Pass)
}

fn representative_independence(ext: &CentralExtension, primes: &[u64]) -> Check {
    let g = ext.group();
    if g.order() > REPRESENTATIVE_CAP {
        return Ok(Status::Skipped);
    }
    for &p in primes {
        for i in 0..ext.m() {
            for c in conjugacy_classes(g) {
                let base = class_contribution(ext, i, p, c.representative).map_err(|e| e.to_string())?;
                for &y in &c.members[1..] {
                    let other = class_contribution(ext, i, p, y).map_err(|e| e.to_string())?;
                    ensure(
                        (other.dim, other.regular, other.kernel_order) == (base.dim, base.regular, base.kernel_order),
                        || format!("p={p} i={i}: class of {} differs at {y}", c.representative),
                    )?;
                }
            }
        }
    }
    Ok(Status::Pass)
}

fn abelian_centraliser(ext: &CentralExtension, dec: &Decomposer<'_>, primes: &[u64]) -> Check {
    let g = ext.group();
    let mut seen = false;
    for &p in primes {
        for i in 0..ext.m() {
            let report = dec.hh1(i, p).map_err(|e| e.to_string())?;
            for cc in &report.classes {
                let cent = centralizer(g, cc.rep);
                if cent.is_abelian() && (cent.order() as u64).is_multiple_of(p) {
                    seen = true;
                    ensure((cc.dim != 0) == cc.regular, || {
                        format!("p={p} i={i} x={}: dim {} vs regular {}", cc.rep, cc.dim, cc.regular)
                    })?;
                }
            }
        }
    }
    Ok(if seen { Status::Pass } else { Status::Skipped })
}

fn oracle(ext: &CentralExtension, summaries: &[TwistSummary], opts: &SelftestOptions) -> Check {
    let n = ext.group().order();
    if n > opts.oracle_cap {
        return Ok(Status::Skipped);
    }
    for t in summaries {
        for (i, rep) in t.reports.iter().enumerate() {
            let mut a = TwistedAlgebra::new(ext, i, t.p).map_err(|e| e.to_string())?;
            if opts.fault == Some(Fault::CorruptCocycle) && n >= 3 && t.p > 2 {
                a = a.perturbed(1, 2, a.field().from_int(-1));
            }
            let hh1 = a.hh1_oracle(opts.oracle_cap).map_err(|e| e.to_string())?;
            let z = a.center_dim();
            ensure(hh1 == rep.dim && z == rep.hh0(), || {
                format!("p={} i={i}: oracle (hh1 {hh1}, centre {z}) vs decomposition ({}, {})", t.p, rep.dim, rep.hh0())
            })?;
        }
    }
    Ok(Status::Pass)
}

fn nonschur_checks(s: &Subject, summaries: &[TwistSummary]) -> Check {
    let ext = &s.ext;
    let g = ext.group();
    for p in prime_divisors(g.order() as u64) {
        let weak = weak_nonschur(g, p).map_err(|e| e.to_string())?;
        let strong = strong_nonschur(g, p).map_err(|e| e.to_string())?;
        ensure(!weak.is_empty(), || format!("W({p}) fails"))?;
        ensure(strong.iter().all(|x| weak.contains(x)), || format!("p={p}: strong ⊄ weak"))?;
        for &x in strong.iter().filter(|_| gcd(p, ext.m() as u64) == 1) {
            for i in 0..ext.m() {
                ensure(ext.is_alpha_regular(i, x), || format!("p={p}: strong Non-Schur {x} not α^{i}-regular"))?;
            }
        }
        if absp_criterion(g, p).map_err(|e| e.to_string())? {
            ensure(!strong.is_empty(), || format!("p={p}: Z(P) ⊄ P' but S(p) fails"))?;
        }
        let Some(t) = summaries.iter().find(|t| t.p == p) else {
            continue;
        };
        let witnesses = certify_nonvanishing(ext, p).map_err(|e| e.to_string())?;
        if s.simple {
            ensure(!witnesses.is_empty(), || format!("p={p}: no witness on a simple group"))?;
            ensure(t.dims().iter().all(|&d| d >= 1), || format!("p={p}: vanishing HH^1 {:?}", t.dims()))?;
        }
        for w in &witnesses {
            ensure(t.dims().iter().all(|&d| d >= w.hom_rank), || {
                format!("p={p}: witness {} bound {}", w.x, w.hom_rank)
            })?;
        }
        if abelian_criterion(g, p).map_err(|e| e.to_string())? {
            let bound = p_rank_hom(&Subgroup::whole(g), p);
            ensure(bound >= 1 && t.dims().iter().all(|&d| d >= bound), || {
                format!("p={p}: O^p(G) < G but bound fails")
            })?;
        }
    }
    Ok(Status::Pass)
}

fn chgab(ext: &CentralExtension, primes: &[u64]) -> Check {
    let m = ext.m();
    if !is_prime(m as u64) {
        return Ok(Status::Skipped);
    }
    let g = ext.group();
    let mut seen = false;
    for &p in primes.iter().filter(|&&p| (g.order() as u64).is_multiple_of(p)) {
        for x in weak_nonschur(g, p).map_err(|e| e.to_string())? {
            let (_, lifted) = ext.lifted_centralizers(x);
            if lifted.is_abelian() {
                seen = true;
                ensure(ext.is_alpha_regular(1, x), || format!("p={p}: x={x} meets the hypotheses but is not regular"))?;
            }
        }
    }
    Ok(if seen { Status::Pass } else { Status::Skipped })
}

fn vanishing_on_center(ext: &CentralExtension, primes: &[u64]) -> Check {
    let g = ext.group();
    let mut seen = false;
    for &p in primes {
        let field = ext.field(p).map_err(|e| e.to_string())?;
        for c in conjugacy_classes(g) {
            let x = c.representative;
            let cent = centralizer(g, x);
            if ext.is_alpha_regular_in(1, x, &cent) {
                continue;
            }
            let r = p_rank_hom(&ext.regular_kernel_in(1, x, &cent), p);
            for &z in center(&cent).members() {
                let e = ext.lambda_exponent_unchecked(1, x, z);
                if e != 0 {
                    seen = true;
                    let d = fixed_space_dim(&field, &FqMatrix::identity(r), field.zeta_pow(e as i64));
                    ensure(d == 0, || format!("p={p} x={x}: central g₀={z} leaves {d} fixed"))?;
                }
            }
        }
    }
    Ok(if seen { Status::Pass } else { Status::Skipped })
}

/// One instance recomputed over `F_{q²}`.
fn base_change() -> Check {
    let ext = builtin_cover("SL25").map_err(|e| e.to_string())?;
    let small = ext.field(3).map_err(|e| e.to_string())?;
    let big = FieldSpec::with_degree(3, 2, 2 * small.degree()).map_err(|e| e.to_string())?;
    let dec = Decomposer::new(&ext);
    for i in 0..2 {
        let a = dec.hh1(i, 3).map_err(|e| e.to_string())?;
        let b = dec.hh1_over(&big, i).map_err(|e| e.to_string())?;
        ensure(a.dim == b.dim, || format!("i={i}: decomposition changes under base change"))?;
        let oa = TwistedAlgebra::new(&ext, i, 3).and_then(|x| x.hh1_oracle(DEFAULT_ORACLE_CAP));
        let ob = TwistedAlgebra::over_field(&ext, i, big.clone()).and_then(|x| x.hh1_oracle(DEFAULT_ORACLE_CAP));
        ensure(oa == ob && oa == Ok(a.dim), || format!("i={i}: oracle changes under base change"))?;
    }
    Ok(Status::Pass)
}

fn golden_a7() -> Check {
    let ext = data_cover("6A7").map_err(|e| e.to_string())?;
    for (p, dims, cover) in [(5, [1; 6], 6), (7, [2; 6], 12)] {
        let t = all_twists(&ext, p).map_err(|e| e.to_string())?;
        ensure(t.dims() == dims && t.cover_dim == cover, || format!("p={p}: {:?} / {}", t.dims(), t.cover_dim))?;
    }
    Ok(Status::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subject_list() {
        let s = subjects(false).unwrap();
        assert!(s.iter().any(|s| s.name == "builtin:SL25" && s.ext.m() == 2));
        assert!(s.iter().all(|s| !s.name.starts_with("data:")));
        let sl25 = builtin_cover("SL25").unwrap();
        assert_eq!(valid_primes(&sl25), vec![3, 5]);
    }

    #[test]
    fn corrupted_cocycle_is_caught() {
        let ext = builtin_cover("SL25").unwrap();
        let primes = valid_primes(&ext);
        assert_eq!(cocycle_identity(&ext, &primes, None), Ok(Status::Pass));
        assert!(cocycle_identity(&ext, &primes, Some(Fault::CorruptCocycle)).is_err());
    }
}
