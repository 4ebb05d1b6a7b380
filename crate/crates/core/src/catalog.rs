//! Built-in groups and covers, text formats, and spec resolution.
//!
//! Specs look like `builtin:SL25`, `perm:gens.txt`, `table:q8.tab`,
//! `cover:six.cov` or `data:6A7`.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::extension::CentralExtension;
use crate::field::{FieldSpec, Fq};
use crate::group::{Backing, FiniteGroup};

/// Plain groups accepted by `builtin:` (besides `C<n>`).
pub const BUILTIN_GROUPS: &[&str] = &["A5", "A6", "A7", "S3", "S4", "S5", "V4", "Q8", "SL23", "SL25", "SL27", "SL29"];

/// Covers accepted by `builtin:`; `C<n>/<m>` is accepted for any `m | n`.
pub const BUILTIN_COVERS: &[&str] = &["Q8", "SL23", "SL25", "SL27", "SL29", "C6/2", "C6/3", "C10/5", "C12/3", "C15/3"];

/// Shipped data covers.
pub const DATA_COVERS: &[&str] = &["6A7", "2A7", "3A7"];

/// Simple groups among the builtins, by the spec naming the group or the
/// cover whose quotient it is.
pub const SIMPLE_BUILTINS: &[&str] = &["A5", "A6", "A7", "SL27"];

const SIX_A7: &str = include_str!("../data/6A7.cov");

fn cycles(degree: usize, cs: &[&[usize]]) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=degree).collect();
    for c in cs {
        for (i, &v) in c.iter().enumerate() {
            p[v - 1] = c[(i + 1) % c.len()];
        }
    }
    p
}

fn alternating(n: usize) -> Result<FiniteGroup> {
    let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
    FiniteGroup::from_permutations(n, &[cycles(n, &[&long]), cycles(n, &[&[1, 2, 3]])])
}

fn symmetric(n: usize) -> Result<FiniteGroup> {
    let long: Vec<usize> = (1..=n).collect();
    FiniteGroup::from_permutations(n, &[cycles(n, &[&long]), cycles(n, &[&[1, 2]])])
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::UnknownEntry("C0".into()));
    }
    let long: Vec<usize> = (1..=n).collect();
    FiniteGroup::from_permutations(n, &[cycles(n, &[&long])])
}

/// Regular representation of the quaternion group; `g1 = i`, `g2 = j`.
fn quaternion() -> Result<FiniteGroup> {
    FiniteGroup::from_permutations(
        8,
        &[cycles(8, &[&[1, 2, 3, 4], &[5, 6, 7, 8]]), cycles(8, &[&[1, 5, 3, 7], &[2, 8, 4, 6]])],
    )
}

/// `SL(2, q)` enumerated as matrices and abstracted to a table; returns the
/// group and the index of `-I`.
fn special_linear(q: u64) -> Result<(FiniteGroup, usize)> {
    let (p, d) = match q {
        3 | 5 | 7 => (q, 1),
        9 => (3, 2),
        _ => return Err(Error::UnknownEntry(format!("SL2{q}"))),
    };
    let f = FieldSpec::with_degree(p, 1, d)?;
    let elems: Vec<Fq> = f.elements().collect();
    let (zero, one) = (Fq::ZERO, Fq::ONE);
    let mut mats: Vec<[Fq; 4]> = vec![[one, zero, zero, one]];
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                for &dd in &elems {
                    let m = [a, b, c, dd];
                    if m != mats[0] && f.sub(f.mul(a, dd), f.mul(b, c)) == one {
                        mats.push(m);
                    }
                }
            }
        }
    }
    let index: HashMap<[Fq; 4], usize> = mats.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mul = |x: &[Fq; 4], y: &[Fq; 4]| {
        [
            f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
            f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
            f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
            f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
        ]
    };
    let rows: Vec<Vec<usize>> = mats.iter().map(|x| mats.iter().map(|y| index[&mul(x, y)]).collect()).collect();
    let m1 = f.neg(one);
    let minus_i = index[&[m1, zero, zero, m1]];
    Ok((FiniteGroup::from_table(&rows)?, minus_i))
}

fn parse_cyclic(name: &str) -> Option<usize> {
    name.strip_prefix('C')?.parse().ok()
}

/// A plain group from the builtin list, or `C<n>`.
pub fn builtin_group(name: &str) -> Result<FiniteGroup> {
    match name {
        "A5" => alternating(5),
        "A6" => alternating(6),
        "A7" => alternating(7),
        "S3" => symmetric(3),
        "S4" => symmetric(4),
        "S5" => symmetric(5),
        "V4" => FiniteGroup::from_permutations(4, &[cycles(4, &[&[1, 2], &[3, 4]]), cycles(4, &[&[1, 3], &[2, 4]])]),
        "Q8" => quaternion(),
        "SL23" => special_linear(3).map(|r| r.0),
        "SL25" => special_linear(5).map(|r| r.0),
        "SL27" => special_linear(7).map(|r| r.0),
        "SL29" => special_linear(9).map(|r| r.0),
        _ => match parse_cyclic(name) {
            Some(n) => cyclic(n),
            None => Err(Error::UnknownEntry(name.into())),
        },
    }
}

/// A builtin cover: `Q8`, `SL2q` over `-I`, or `C<n>/<m>` (cyclic of order
/// `n` over its subgroup of order `m`).
pub fn builtin_cover(name: &str) -> Result<CentralExtension> {
    match name {
        "Q8" => {
            let g = quaternion()?;
            let i = g.index_of_permutation(&perm0(&cycles(8, &[&[1, 2, 3, 4], &[5, 6, 7, 8]]))).expect("generator");
            let z = g.mul(i, i);
            CentralExtension::new(g, z)
        }
        "SL23" | "SL25" | "SL27" | "SL29" => {
            let q = name[3..].parse().expect("digit");
            let (g, z) = special_linear(q)?;
            CentralExtension::new(g, z)
        }
        _ => {
            let (n, m) = name
                .split_once('/')
                .and_then(|(a, b)| Some((parse_cyclic(a)?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| Error::UnknownEntry(name.into()))?;
            if m == 0 || n % m != 0 {
                return Err(Error::UnknownEntry(name.into()));
            }
            let g = cyclic(n)?;
            let gen = g.generators().first().copied().unwrap_or(0);
            let z = g.pow(gen, (n / m) as i64);
            CentralExtension::new(g, z)
        }
    }
}

fn six_a7() -> Result<(Arc<FiniteGroup>, usize)> {
    static CACHE: OnceLock<Result<(Arc<FiniteGroup>, usize)>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let (g, z) = parse_cover_parts(SIX_A7)?;
            Ok((Arc::new(g), z))
        })
        .clone()
}

/// Shipped covers: `6A7` and its quotients `2A7`, `3A7`.
pub fn data_cover(name: &str) -> Result<CentralExtension> {
    if !DATA_COVERS.contains(&name) {
        return Err(Error::UnknownEntry(format!("data:{name}")));
    }
    let (g, z) = six_a7()?;
    let six = CentralExtension::new(g, z)?;
    match name {
        "2A7" => six.reduce(2),
        "3A7" => six.reduce(3),
        _ => Ok(six),
    }
}

/// Display names `(G, Ĝ)` for a spec.
pub fn display_names(spec: &str) -> (String, String) {
    let (kind, rest) = spec.split_once(':').unwrap_or(("", spec));
    match kind {
        "builtin" => {
            let quotient = match rest {
                "Q8" => Some("V4".to_string()),
                "SL23" => Some("A4".into()),
                "SL25" => Some("A5".into()),
                "SL27" => Some("L2(7)".into()),
                "SL29" => Some("A6".into()),
                _ => rest.split_once('/').and_then(|(a, b)| {
                    let (n, m) = (parse_cyclic(a)?, b.parse::<usize>().ok()?);
                    (m > 0 && n % m == 0).then(|| format!("C{}", n / m))
                }),
            };
            (quotient.unwrap_or_else(|| rest.to_string()), rest.to_string())
        }
        "data" => ("A7".into(), rest.to_string()),
        _ => {
            let stem = Path::new(rest).file_stem().and_then(|s| s.to_str()).unwrap_or(rest).to_string();
            let group = if kind == "cover" { format!("{stem}/Z") } else { stem.clone() };
            (group, stem)
        }
    }
}

/// What a spec resolved to.
#[derive(Debug)]
pub enum Resolved {
    Group(FiniteGroup),
    Extension(CentralExtension),
}

impl Resolved {
    /// Plain groups become the trivial extension of themselves.
    pub fn into_extension(self) -> CentralExtension {
        match self {
            Resolved::Group(g) => CentralExtension::trivial(g),
            Resolved::Extension(e) => e,
        }
    }

    /// The group the spec describes; for covers this is `Ĝ`.
    pub fn into_group(self) -> FiniteGroup {
        match self {
            Resolved::Group(g) => g,
            Resolved::Extension(e) => e.cover().clone(),
        }
    }
}

pub fn resolve(spec: &str) -> Result<Resolved> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| Error::UnknownEntry(spec.into()))?;
    match kind {
        "builtin" => {
            if BUILTIN_COVERS.contains(&rest) || rest.contains('/') {
                builtin_cover(rest).map(Resolved::Extension)
            } else {
                builtin_group(rest).map(Resolved::Group)
            }
        }
        "data" => data_cover(rest).map(Resolved::Extension),
        "perm" => parse_perm(&read(rest)?).map(Resolved::Group),
        "table" => parse_table(&read(rest)?).map(Resolved::Group),
        "cover" => parse_cover(&read(rest)?).map(Resolved::Extension),
        _ => Err(Error::UnknownEntry(spec.into())),
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn perm0(images: &[usize]) -> Vec<u32> {
    images.iter().map(|&v| v as u32 - 1).collect()
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_numbers(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse { line, msg: format!("`{t}` is not a non-negative integer") }))
        .collect()
}

fn header(line: usize, s: &str, keyword: &[&str]) -> Result<usize> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    if toks.len() != keyword.len() + 1 || toks[..keyword.len()] != *keyword {
        return Err(Error::Parse { line, msg: format!("expected `{} <n>`", keyword.join(" ")) });
    }
    toks[keyword.len()].parse().map_err(|_| Error::Parse { line, msg: format!("bad size `{}`", toks[keyword.len()]) })
}

fn generator_lines<'a>(degree: usize, lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Vec<Vec<usize>>> {
    let mut gens = Vec::new();
    for (ln, l) in lines {
        let g = parse_numbers(ln, l)?;
        if g.len() != degree {
            return Err(Error::Parse { line: ln, msg: format!("expected {degree} images, found {}", g.len()) });
        }
        gens.push(g);
    }
    Ok(gens)
}

/// `perm <degree>` followed by one generator per line (1-based images).
pub fn parse_perm(text: &str) -> Result<FiniteGroup> {
    let mut lines = content_lines(text);
    let (ln, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let degree = header(ln, first, &["perm"])?;
    let gens = generator_lines(degree, lines)?;
    FiniteGroup::from_permutations(degree, &gens)
}

/// `table <n>` followed by `n` rows of 0-based indices.
pub fn parse_table(text: &str) -> Result<FiniteGroup> {
    let mut lines = content_lines(text);
    let (ln, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let n = header(ln, first, &["table"])?;
    let mut rows = Vec::with_capacity(n);
    for (ln, l) in lines {
        rows.push(parse_numbers(ln, l)?);
    }
    if rows.len() != n {
        return Err(Error::Parse { line: ln, msg: format!("expected {n} rows, found {}", rows.len()) });
    }
    FiniteGroup::from_table(&rows)
}

fn parse_cover_generators(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = content_lines(text);
    let (ln, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let degree = header(ln, first, &["cover", "perm"])?;
    generator_lines(degree, lines.take_while(|(_, l)| !l.starts_with("central")))
}

fn parse_cover_parts(text: &str) -> Result<(FiniteGroup, usize)> {
    let mut lines = content_lines(text);
    let (ln, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let degree = header(ln, first, &["cover", "perm"])?;
    let gens = parse_cover_generators(text)?;
    let (wl, word) = content_lines(text)
        .find_map(|(n, l)| l.strip_prefix("central").map(|w| (n, w.trim())))
        .ok_or(Error::Parse { line: 0, msg: "missing `central <word>` line".into() })?;
    let g = FiniteGroup::from_permutations(degree, &gens)?;
    let z = evaluate_word(&g, &gens, word, wl)?;
    Ok((g, z))
}

/// `cover perm <degree>`, generator lines, then `central <word>`.
pub fn parse_cover(text: &str) -> Result<CentralExtension> {
    let (g, z) = parse_cover_parts(text)?;
    CentralExtension::new(g, z)
}

/// A word in `g1, g2, ...` such as `g1^2*g2^-1`; factors are separated by
/// `*` or whitespace. `1` and `e` denote the identity.
pub fn parse_word(word: &str, ngens: usize, line: usize) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    for tok in word.split(|c: char| c == '*' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        if tok == "1" || tok == "e" {
            continue;
        }
        let bad = || Error::Parse { line, msg: format!("bad word factor `{tok}`") };
        let body = tok.strip_prefix('g').ok_or_else(bad)?;
        let (k, e) = match body.split_once('^') {
            Some((k, e)) => (k, e.parse::<i64>().map_err(|_| bad())?),
            None => (body, 1),
        };
        let k: usize = k.parse().map_err(|_| bad())?;
        if k == 0 || k > ngens {
            return Err(Error::Parse { line, msg: format!("generator g{k} out of range 1..={ngens}") });
        }
        out.push((k - 1, e));
    }
    Ok(out)
}

fn evaluate_word(g: &FiniteGroup, gens: &[Vec<usize>], word: &str, line: usize) -> Result<usize> {
    let idx: Vec<usize> =
        gens.iter().map(|img| g.index_of_permutation(&perm0(img)).expect("generators are group elements")).collect();
    let mut acc = 0;
    for (k, e) in parse_word(word, gens.len(), line)? {
        acc = g.mul(acc, g.pow(idx[k], e));
    }
    Ok(acc)
}

/// Writes the multiplication table in the `table` format.
pub fn emit_table(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut s = format!("table {n}\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Writes generators in the `perm` format, for permutation groups.
pub fn emit_perm(g: &FiniteGroup) -> Option<String> {
    let Backing::Permutation { degree, .. } = g.backing() else {
        return None;
    };
    let mut s = format!("perm {degree}\n");
    for x in g.generators() {
        let row: Vec<String> = g.permutation(x)?.iter().map(|v| (v + 1).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    Some(s)
}
