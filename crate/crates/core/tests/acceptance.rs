//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sincsum::cli;
use sincsum::constants::{c_q, crude_bound, exact_c_q, lq_norm_halfshift, transference_factor, ConstantQuery};
use sincsum::exactpoly::{poly_eval, poly_f, poly_min_certificate};
use sincsum::sinc::{f_direct, f_deriv_fd, EvalConfig, EvalPoint};
use sincsum::specfun::{f_deriv_analytic, f_half_integer_polygamma, f_hurwitz, zeta_even};
use sincsum::verify::corpus::{corpus, CORPUS_MAX_DEPTH};
use sincsum::verify::report::{chain_x_values, global_min_r_values, CHAIN_M, CHAIN_R_VALUES};
use sincsum::verify::{certify, lemma3_property, proof_chain, verify_global_min, Status};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_table() -> Outcome {
    let table: [Vec<BigRational>; 5] = [
        vec![q(1, 1)],
        vec![q(1, 3), q(2, 3)],
        vec![q(2, 15), q(11, 15), q(2, 15)],
        vec![q(17, 315), q(4, 7), q(38, 105), q(4, 315)],
        vec![q(62, 2835), q(1072, 2835), q(484, 945), q(247, 2835), q(2, 2835)],
    ];
    for (i, want) in table.iter().enumerate() {
        let r = i as u32 + 1;
        let got = poly_f(r).map_err(|e| e.to_string())?;
        ensure(got.coeffs() == want.as_slice(), || format!("P_{r} = {:?}", got.coeffs()))?;
    }
    Ok("P_1..P_5 match exactly".into())
}

fn lemma1() -> Outcome {
    let cfg = EvalConfig::with_tol(1e-13).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let x = i as f64 / 9_999.0;
        let v = f_direct(EvalPoint::new(1.0, x).unwrap(), &cfg).map_err(|e| e.to_string())?;
        worst = worst.max((v.value - 1.0).abs());
    }
    ensure(worst <= 1e-11, || format!("max |f_1 - 1| = {worst:e}"))?;
    Ok(format!("max |f_1 - 1| = {worst:.2e}"))
}

fn constants_cross_check() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=15u32 {
        let exact = exact_c_q(n).map_err(|e| e.to_string())?;
        let poly = poly_f(n).map_err(|e| e.to_string())?;
        ensure(poly.coeffs()[0] == exact, || format!("P_{n}(0) differs from the Bernoulli form"))?;
        // 2(2^{2n} - 1) ζ(2n)/π^{2n} with ζ(2n) = ρ π^{2n}
        let z = zeta_even(n).map_err(|e| e.to_string())?;
        let via_zeta = z.rational_part * BigRational::from_integer((BigInt::from(1) << (2 * n)) - 1) * q(2, 1);
        ensure(via_zeta == exact, || format!("ζ(2n) form differs at n = {n}"))?;
        let float = c_q(2.0 * n as f64).map_err(|e| e.to_string())?;
        worst = worst.max((float - exact.to_f64().unwrap()).abs());
    }
    ensure(worst <= 1e-13, || format!("float gap {worst:e}"))?;
    for (n, want) in [(2, q(1, 3)), (3, q(2, 15)), (4, q(17, 315))] {
        ensure(exact_c_q(n).unwrap() == want, || format!("c_{} wrong", 2 * n))?;
    }
    Ok(format!("n = 1..15 exact, float gap {worst:.1e}"))
}

fn minimum_certification() -> Outcome {
    let mut worst = f64::INFINITY;
    for r in global_min_r_values() {
        let rep = verify_global_min(r, 4096, 1e-9).map_err(|e| e.to_string())?;
        ensure(rep.status == Status::Passed, || format!("r = {r}: {:?} {:?}", rep.status, rep.diagnostic))?;
        worst = worst.min(rep.worst_margin);
    }
    for r in 1..=50 {
        let p = poly_f(r).map_err(|e| e.to_string())?;
        let cert = poly_min_certificate(&p).map_err(|e| format!("r = {r}: {e}"))?;
        ensure(cert.min_value == exact_c_q(r).unwrap(), || format!("r = {r}: minimum differs"))?;
    }
    Ok(format!("8 grids passed (worst margin {worst:.1e}), 50 exact certificates"))
}

fn inequality_corpus() -> Outcome {
    let entries = corpus();
    let mut boxes = 0;
    for e in &entries {
        let out = certify(e, CORPUS_MAX_DEPTH).map_err(|err| err.to_string())?;
        ensure(out.status == Status::Certified, || format!("{}: {:?} {:?}", e.id, out.status, out.diagnostic))?;
        boxes += out.boxes_visited;
    }
    Ok(format!("{} entries certified, {boxes} boxes", entries.len()))
}

fn lemma3() -> Outcome {
    let rep = lemma3_property(100_000, 42).map_err(|e| e.to_string())?;
    ensure(rep.violations == 0, || format!("{} violations, first {:?}", rep.violations, rep.first_violation))?;
    Ok(format!("100000 instances, tightest margin {:.1e}", rep.tightest_margin))
}

fn proof_chain_witness() -> Outcome {
    let mut count = 0;
    for r in CHAIN_R_VALUES {
        for x in chain_x_values() {
            let w = proof_chain(r, x, CHAIN_M).map_err(|e| e.to_string())?;
            ensure(w.status() == Status::Passed, || format!("r = {r}, x = {x}: {:?}", w.worst()))?;
            count += 1;
        }
    }
    Ok(format!("{count} (r, x) pairs"))
}

fn consensus() -> Outcome {
    let cfg = EvalConfig::with_tol(1e-13).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for r in [2u32, 3, 4, 5, 8, 16] {
        let poly = poly_f(r).map_err(|e| e.to_string())?;
        for i in 0..128 {
            let x = i as f64 / 127.0;
            let p = EvalPoint::new(r as f64, x).unwrap();
            let v = [
                f_direct(p, &cfg).map_err(|e| e.to_string())?.value,
                f_hurwitz(p).map_err(|e| e.to_string())?,
                poly_eval(&poly, x),
            ];
            let gap = v.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
                - v.iter().fold(f64::INFINITY, |a, &b| a.min(b));
            worst = worst.max(gap);
        }
    }
    ensure(worst <= 1e-10, || format!("pairwise gap {worst:e}"))?;
    let mut worst_half = 0.0f64;
    for n in 1..=3u32 {
        let r = n as f64 + 0.5;
        for i in 1..127 {
            let x = i as f64 / 127.0;
            let a = f_half_integer_polygamma(n, x).map_err(|e| e.to_string())?;
            let b = f_hurwitz(EvalPoint::new(r, x).unwrap()).map_err(|e| e.to_string())?;
            worst_half = worst_half.max((a - b).abs());
        }
    }
    ensure(worst_half <= 1e-10, || format!("half-integer gap {worst_half:e}"))?;
    Ok(format!("gap {worst:.1e}, half-integer gap {worst_half:.1e}"))
}

fn gradient() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let r = rng.gen_range(1.0..=8.0);
        let x = rng.gen_range(0.05..=0.95);
        let p = EvalPoint::new(r, x).unwrap();
        let a = f_deriv_analytic(p).map_err(|e| e.to_string())?;
        let fd = f_deriv_fd(p, 1e-5).map_err(|e| e.to_string())?;
        let rel = (a - fd).abs() / a.abs();
        ensure(rel <= 1e-6, || format!("r = {r}, x = {x}: analytic {a}, fd {fd}"))?;
        worst = worst.max(rel);
    }
    Ok(format!("200 samples, worst relative error {worst:.1e}"))
}

fn transference() -> Outcome {
    let f = |q: f64, d: u32| transference_factor(ConstantQuery::new(q, d).unwrap()).unwrap().factor;
    ensure((f(2.0, 1) - 1.0).abs() <= 1e-12, || "factor(2, 1)".into())?;
    ensure((f(4.0, 1) - 3f64.powf(0.25)).abs() <= 1e-12, || "factor(4, 1)".into())?;
    let grid: Vec<f64> = (0..=124).map(|k| 2.0 + 0.5 * k as f64).collect();
    let mut prev = f64::INFINITY;
    for &qq in &grid {
        for d in 1..=3 {
            let bound = crude_bound(d).unwrap() + 1e-12;
            ensure(f(qq, d) <= bound, || format!("factor({qq}, {d}) above (π/2)^d"))?;
        }
        let lq = lq_norm_halfshift(qq).unwrap();
        ensure(lq >= 2.0 && lq <= prev, || format!("lq norm at q = {qq} is {lq}"))?;
        prev = lq;
    }
    Ok(format!("{} values of q, d = 1..3", grid.len()))
}

fn figure() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["sincsum", "figure"], &mut out, &mut err);
    ensure(code == 0, || String::from_utf8_lossy(&err).into_owned())?;
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    ensure(lines.next() == Some("x,r,f_r(x)"), || "bad header".into())?;
    let mut curves: BTreeMap<u64, Vec<(f64, f64)>> = BTreeMap::new();
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        curves.entry(v[1].to_bits()).or_default().push((v[0], v[2]));
    }
    ensure(curves.len() == 9, || format!("{} curves", curves.len()))?;
    let mut worst_sym = 0.0f64;
    for pts in curves.values() {
        let n = pts.len();
        let argmin = (0..n).min_by(|&a, &b| pts[a].1.total_cmp(&pts[b].1)).unwrap();
        let dist = (pts[argmin].0 - 0.5).abs();
        let nearest = pts.iter().map(|p| (p.0 - 0.5).abs()).fold(f64::INFINITY, f64::min);
        ensure(dist <= nearest + 1e-12, || format!("argmin at x = {}", pts[argmin].0))?;
        for i in 0..n {
            worst_sym = worst_sym.max((pts[i].1 - pts[n - 1 - i].1).abs());
        }
    }
    ensure(worst_sym <= 1e-9, || format!("asymmetry {worst_sym:e}"))?;
    Ok(format!("9 curves, asymmetry {worst_sym:.1e}"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("exact polynomial table", 1, exact_table),
        ("f_1 is identically one", 5, lemma1),
        ("constant cross-check", 1, constants_cross_check),
        ("minimum certification", 30, minimum_certification),
        ("inequality corpus", 60, inequality_corpus),
        ("majorization property", 10, lemma3),
        ("proof-chain witness", 10, proof_chain_witness),
        ("cross-method consensus", 20, consensus),
        ("gradient check", 10, gradient),
        ("transference factors", 5, transference),
        ("figure reproduction", 10, figure),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > Duration::from_secs(*budget) => {
                Err(format!("{msg}; over the {budget} s budget"))
            }
            other => other,
        };
        let (tag, msg) = match outcome {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("criterion {:>2} {tag} {name}: {msg} [{:.2} s]", i + 1, elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
