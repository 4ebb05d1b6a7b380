use std::process::Command;

use twisthh_core::arith::prime_divisors;
use twisthh_core::catalog::{builtin_cover, builtin_group, data_cover, BUILTIN_COVERS, BUILTIN_GROUPS};
use twisthh_core::group::{centralizer, conjugacy_classes, p_rank_hom};
use twisthh_core::report::ComputeReport;
use twisthh_core::selftest::valid_primes;
use twisthh_core::{
    all_twists, certify_nonvanishing, hh0_dim, hh1_dim, run_selftest, CentralExtension, Error, SelftestOptions,
    TwistedAlgebra,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twisthh")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn cli_report(p: &str) -> Result<ComputeReport, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("out.json");
    let (code, _) = run_cli(&["compute", "--cover", "data:6A7", "--prime", p, "--json", path.to_str().unwrap()]);
    check(code == 0, || format!("compute exited with {code}"))?;
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn a7_golden(p: u64, expected: usize, base: usize, cover: usize) -> Outcome {
    let ext = data_cover("6A7").map_err(|e| e.to_string())?;
    check(ext.m() == 6 && ext.cover().order() == 15120, || "6.A7 has the wrong shape".into())?;
    let s = all_twists(&ext, p).map_err(|e| e.to_string())?;
    check(s.dims() == vec![expected; 6], || format!("library dims {:?}", s.dims()))?;
    check(s.reports[0].dim == base, || format!("untwisted A7 gives {}", s.reports[0].dim))?;
    check(s.cover_dim == cover, || format!("6.A7 gives {}", s.cover_dim))?;
    let r = cli_report(&p.to_string())?;
    check(r.dims() == s.dims() && r.cover_dim == cover && r.consistent(), || format!("cli report {r:?}"))
}

fn criterion_1() -> Outcome {
    a7_golden(5, 1, 1, 6)
}

fn criterion_2() -> Outcome {
    a7_golden(7, 2, 2, 12)
}

fn small_covers() -> Vec<(String, CentralExtension)> {
    BUILTIN_COVERS
        .iter()
        .map(|n| (n.to_string(), builtin_cover(n).unwrap()))
        .filter(|(_, e)| e.cover().order() <= 256)
        .collect()
}

fn criterion_3() -> Outcome {
    let covers = small_covers();
    check(covers.len() >= 6, || "too few small covers".into())?;
    for (name, ext) in &covers {
        for p in valid_primes(ext) {
            for i in 0..ext.m() {
                let a = TwistedAlgebra::new(ext, i, p).map_err(|e| e.to_string())?;
                let oracle = a.hh1_oracle(256).map_err(|e| e.to_string())?;
                let dec = hh1_dim(ext, i, p).map_err(|e| e.to_string())?.dim;
                check(oracle == dec, || format!("{name} p={p} i={i}: oracle {oracle}, decomposition {dec}"))?;
                let (z, h) = (a.center_dim(), hh0_dim(ext, i));
                check(z == h, || format!("{name} p={p} i={i}: centre {z}, regular classes {h}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let mut subjects: Vec<(String, CentralExtension)> =
        BUILTIN_COVERS.iter().map(|n| (n.to_string(), builtin_cover(n).unwrap())).collect();
    for n in BUILTIN_GROUPS {
        subjects.push((n.to_string(), CentralExtension::trivial(builtin_group(n).unwrap())));
    }
    subjects.push(("6A7".into(), data_cover("6A7").unwrap()));
    for (name, ext) in &subjects {
        for p in valid_primes(ext) {
            let s = all_twists(ext, p).map_err(|e| e.to_string())?;
            check(s.sum_rule, || format!("{name} p={p}: sum {:?} vs {}", s.dims(), s.cover_dim))?;
            check(s.symmetry, || format!("{name} p={p}: dims {:?} not symmetric", s.dims()))?;
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut subjects: Vec<(String, CentralExtension)> = ["A5", "A6", "A7"]
        .iter()
        .map(|n| (n.to_string(), CentralExtension::trivial(builtin_group(n).unwrap())))
        .collect();
    subjects.push(("SL27".into(), builtin_cover("SL27").unwrap()));
    for (name, ext) in &subjects {
        for p in prime_divisors(ext.group().order() as u64) {
            // Only the untwisted algebra exists when p divides m.
            let quotient;
            let ext = if (ext.m() as u64).is_multiple_of(p) {
                quotient = CentralExtension::trivial(ext.group().clone());
                &quotient
            } else {
                ext
            };
            let w = certify_nonvanishing(ext, p).map_err(|e| e.to_string())?;
            check(!w.is_empty(), || format!("{name} p={p}: no witness"))?;
            for i in 0..ext.m() {
                let d = hh1_dim(ext, i, p).map_err(|e| e.to_string())?.dim;
                check(d > 0, || format!("{name} p={p} i={i}: HH^1 vanishes"))?;
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let report = run_selftest(&SelftestOptions::default()).map_err(|e| e.to_string())?;
    let failures: Vec<String> = report.failures().map(|f| format!("{}/{}: {}", f.suite, f.subject, f.detail)).collect();
    check(failures.is_empty(), || failures.join("; "))?;
    let (code, _) = run_cli(&["selftest", "--no-data", "--inject-fault", "corrupt-cocycle"]);
    check(code == 2, || format!("fault injection exited with {code}"))
}

fn criterion_7() -> Outcome {
    let sl25 = builtin_cover("SL25").unwrap();
    check(hh1_dim(&sl25, 1, 2) == Err(Error::InvalidTwistField { p: 2, m: 2 }), || "p=2 accepted for m=2".into())?;
    let (code, _) = run_cli(&["compute", "--cover", "builtin:SL25", "--prime", "2"]);
    check(code == 1, || format!("cli accepted p=2 with exit {code}"))?;
    for name in ["A5", "S4", "SL25", "SL27"] {
        let g = builtin_group(name).unwrap();
        for p in prime_divisors(g.order() as u64) {
            let expected: usize =
                conjugacy_classes(&g).iter().map(|c| p_rank_hom(&centralizer(&g, c.representative), p)).sum();
            let ext = CentralExtension::trivial(g.clone());
            let d = hh1_dim(&ext, 0, p).map_err(|e| e.to_string())?.dim;
            check(d == expected, || format!("{name} p={p}: {d} vs {expected}"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("6.A7 at p=5", criterion_1),
        ("6.A7 at p=7", criterion_2),
        ("oracle agrees with decomposition", criterion_3),
        ("sum rule and symmetry", criterion_4),
        ("nonvanishing certificates", criterion_5),
        ("selftest", criterion_6),
        ("field validation and untwisted case", criterion_7),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("criterion {}: PASS ({name})", k + 1),
            Err(e) => {
                println!("criterion {}: FAIL ({name}): {e}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
