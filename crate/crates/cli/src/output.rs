use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use serde::Serialize;

use twisthh_core::nonschur::{strong_nonschur, weak_nonschur};
use twisthh_core::report::{CertifyReport, ComputeOutcome, ComputeReport};
use twisthh_core::selftest::Status;
use twisthh_core::{hh1_dim, CentralExtension, Error, FiniteGroup, SelftestReport};

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), Error> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    serde_json::to_writer_pretty(BufWriter::new(file), value).map_err(|e| io_err(path, e))
}

#[derive(Serialize)]
struct CsvRow<'a> {
    group: &'a str,
    cover: &'a str,
    p: u64,
    m: usize,
    i: usize,
    dim: usize,
    rep: usize,
    regular: bool,
    class_dim: usize,
    sum_rule: bool,
    symmetry: bool,
    oracle: twisthh_core::OracleStatus,
}

/// One row per (twist, class).
pub fn write_csv(path: &Path, r: &ComputeReport) -> Result<(), Error> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err(path, e))?;
    for t in &r.twists {
        for c in &t.classes {
            w.serialize(CsvRow {
                group: &r.group,
                cover: &r.cover,
                p: r.p,
                m: r.m,
                i: t.i,
                dim: t.dim,
                rep: c.rep,
                regular: c.regular,
                class_dim: c.dim,
                sum_rule: r.checks.sum_rule,
                symmetry: r.checks.symmetry,
                oracle: r.checks.oracle,
            })
            .map_err(|e| io_err(path, e))?;
        }
    }
    w.flush().map_err(|e| io_err(path, e))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn compute_table(out: &ComputeOutcome) -> String {
    let r = &out.report;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<10} {:<10} {:>6} {:>4} {:>4} {:>6} {:>6} {:>8}",
        "group", "cover", "Z (m)", "p", "i", "dim", "hh0", "oracle"
    );
    for (t, o) in r.twists.iter().zip(&out.oracle) {
        let hh0 = out.summary.reports[t.i].hh0();
        let oracle = match o {
            Some(v) if v.hh1 == t.dim && v.center == hh0 => v.hh1.to_string(),
            Some(v) => format!("{}!", v.hh1),
            None => "-".into(),
        };
        let _ = writeln!(
            s,
            "{:<10} {:<10} {:>6} {:>4} {:>4} {:>6} {:>6} {:>8}",
            r.group, r.cover, r.m, r.p, t.i, t.dim, hh0, oracle
        );
    }
    let _ = writeln!(
        s,
        "dim HH^1(k{}) = {}   sum rule: {}   symmetry: {}",
        r.cover,
        r.cover_dim,
        yes_no(r.checks.sum_rule),
        yes_no(r.checks.symmetry)
    );
    s
}

pub fn certify_table(r: &CertifyReport, g: &FiniteGroup) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} (cover {}), p = {}, m = {}", r.group, r.cover, r.p, r.m);
    let _ = writeln!(s, "{:>8} {:>6} {:>8} {:>9} {:>14}", "element", "order", "kind", "hom rank", "all twists");
    for w in &r.witnesses {
        let kind = match w.kind {
            twisthh_core::WitnessKind::Weak => "weak",
            twisthh_core::WitnessKind::Strong => "strong",
        };
        let _ = writeln!(
            s,
            "{:>8} {:>6} {:>8} {:>9} {:>14}",
            w.x,
            g.elem_order(w.x),
            kind,
            w.hom_rank,
            w.regular_all_twists
        );
    }
    if !r.witnesses.is_empty() {
        let _ = writeln!(s, "HH^1 is nonzero for every twist");
    }
    s
}

#[derive(Serialize)]
pub struct GroupSummary {
    pub group: String,
    pub order: usize,
    pub p: u64,
    pub hh1: usize,
    pub hh0: usize,
    pub weak: Vec<usize>,
    pub strong: Vec<usize>,
}

pub fn group_summary(name: &str, g: FiniteGroup, p: u64) -> Result<GroupSummary, Error> {
    let weak = weak_nonschur(&g, p)?;
    let strong = strong_nonschur(&g, p)?;
    let order = g.order();
    let ext = CentralExtension::trivial(g);
    let r = hh1_dim(&ext, 0, p)?;
    Ok(GroupSummary { group: name.into(), order, p, hh1: r.dim, hh0: r.hh0(), weak, strong })
}

impl GroupSummary {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<10} {:>8} {:>4} {:>6} {:>6}", "group", "order", "p", "dim", "hh0");
        let _ = writeln!(s, "{:<10} {:>8} {:>4} {:>6} {:>6}", self.group, self.order, self.p, self.hh1, self.hh0);
        let _ = writeln!(s, "weak Non-Schur classes:   {}", list(&self.weak));
        let _ = writeln!(s, "strong Non-Schur classes: {}", list(&self.strong));
        s
    }
}

fn list(xs: &[usize]) -> String {
    if xs.is_empty() {
        "none".into()
    } else {
        xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
    }
}

pub fn selftest_table(r: &SelftestReport) -> String {
    let mut s = String::new();
    let mut suites: Vec<&str> = Vec::new();
    for o in &r.outcomes {
        if !suites.contains(&o.suite) {
            suites.push(o.suite);
        }
    }
    for suite in suites {
        let of = |st: Status| r.outcomes.iter().filter(|o| o.suite == suite && o.status == st).count();
        let status = match r.suite_status(suite) {
            Some(Status::Fail) => "FAIL",
            Some(Status::Pass) => "PASS",
            _ => "SKIP",
        };
        let _ = writeln!(
            s,
            "{status:<5} {suite:<28} pass {:>4}  fail {:>3}  skipped {:>3}",
            of(Status::Pass),
            of(Status::Fail),
            of(Status::Skipped)
        );
    }
    let _ = writeln!(
        s,
        "total: {} passed, {} failed, {} skipped",
        r.count(Status::Pass),
        r.count(Status::Fail),
        r.count(Status::Skipped)
    );
    s
}
