//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.
//!
//! Run with `cargo test -p quasitorus --test acceptance`.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quasitorus::adic::{
    annihilator_test, digits_of, from_digits, int_to_digitchar, pair_digitchar, pair_gp,
    pair_sparse, q_approx, quotient_reduce, r0_dist, AdicDigits, GammaSeq, SparseGammaChar,
};
use quasitorus::characters::{enumerate_box, enumerate_l1_ball};
use quasitorus::*;

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> std::result::Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || {
        format!("runtime {:.2}s exceeds {limit_s}s", elapsed.as_secs_f64())
    })
}

fn ang(x: f64) -> Angle {
    Angle::new(x).unwrap()
}

fn grid() -> impl Iterator<Item = (f64, f64)> {
    (1..=10).flat_map(|i| (-9..=9).map(move |j| (i as f64 / 10.0, j as f64 * 0.05)))
}

fn c1_oracle_agreement() -> Outcome {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for (c, phi) in grid() {
        let closed = hellinger_closed(c, ang(phi)).map_err(|e| e.to_string())?;
        let fam = DensityFamily::exp(vec![c]).map_err(|e| e.to_string())?;
        let quad = hellinger_quad(&fam, 1, ang(phi), 1e-13).map_err(|e| e.to_string())?;
        worst = worst.max((closed - quad).abs());
    }
    ensure(worst <= 1e-9, || format!("max deviation {worst:e}"))?;
    within(t.elapsed(), 5.0)?;
    Ok(format!("190 points, max |closed - quad| = {worst:.2e}"))
}

fn c2_affinity_sandwich() -> Outcome {
    let mut worst = f64::INFINITY;
    for (c, phi) in grid() {
        let p = hellinger_closed(c, ang(phi)).map_err(|e| e.to_string())?;
        let x = (c * phi).powi(2);
        let lower = p - (1.0 - x / 8.0);
        let upper = (1.0 - x / 32.0) - p;
        worst = worst.min(lower).min(upper);
    }
    ensure(worst >= -1e-12, || format!("min slack {worst:e}"))?;
    Ok(format!("190 points, min slack {worst:.2e}"))
}

fn c3_linear_slope() -> Outcome {
    let target = (8.0 + 5.0 * 2f64.sqrt()) / (6.0 + 4.0 * 2f64.sqrt());
    let s = linear_shift_slope(ang(1e-4), 1e-14).map_err(|e| e.to_string())?;
    ensure((s - target).abs() <= 1e-3, || {
        format!(
            "slope {s:.6} vs coefficient {target:.6} (|diff| = {:.4})",
            (s - target).abs()
        )
    })?;
    Ok(format!("slope {s:.6}"))
}

fn c4_chord_angle_sandwich() -> Outcome {
    let mut count = 0;
    for p in [1.0f64, 2.0, 3.0] {
        for i in 0..10_000 {
            let phi = -0.5 + i as f64 / 10_000.0;
            let c = chord(ang(phi)).powf(p);
            let lo = (std::f64::consts::PI * phi.abs()).powf(p);
            let hi = (2.0 * std::f64::consts::PI * phi.abs()).powf(p);
            ensure(lo <= c + 1e-12 && c <= hi + 1e-12, || {
                format!("p = {p}, phi = {phi}: {lo} <= {c} <= {hi} fails")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} checks"))
}

fn c5_quotient_sandwich() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pi = std::f64::consts::PI;
    for p in [1.0, 1.5, 2.0, 3.0] {
        let pe = PExponent::new(p).unwrap();
        for _ in 0..100 {
            let mut draw = || {
                let v: Vec<f64> = (0..50).map(|_| rng.random_range(-3.0..3.0)).collect();
                RealSeq::new(v, pe).unwrap()
            };
            let (x, y) = (draw(), draw());
            let ds = quotient_dist(&x, &y).map_err(|e| e.to_string())?;
            let d = dist_p(&quotient_iso(&x), &quotient_iso(&y), pe);
            ensure(pi * ds <= d + 1e-12 && d <= 2.0 * pi * ds + 1e-12, || {
                format!("p = {p}: pi*{ds} <= {d} <= 2pi*{ds} fails")
            })?;
        }
    }
    within(t.elapsed(), 1.0)?;
    Ok("400 pairs".into())
}

fn c6_kakutani() -> Outcome {
    let t = Instant::now();
    let th = Thresholds::default();
    let fam = DensityFamily::exp_constant(1.0, 100_000).map_err(|e| e.to_string())?;
    let id = kakutani_classify(&fam, &TorusSeq::identity(), 100, th).map_err(|e| e.to_string())?;
    ensure(id.verdict == Verdict::EquivalentLike, || {
        format!("identity: {:?}", id.verdict)
    })?;

    let shift = TorusSeq::constant(ang(0.4), 10_000);
    let s = kakutani_classify(&fam, &shift, 10_000, th).map_err(|e| e.to_string())?;
    ensure(
        s.verdict == Verdict::SingularLike && s.final_product < 1e-20,
        || {
            format!(
                "constant 0.4: {:?}, product {:e}",
                s.verdict, s.final_product
            )
        },
    )?;

    let turns: Vec<f64> = (1..=100_000).map(|n| 1.0 / (n as f64 + 3.0)).collect();
    let shift = TorusSeq::from_turns(&turns).unwrap();
    let e = kakutani_classify(&fam, &shift, 100_000, th).map_err(|e| e.to_string())?;
    ensure(e.verdict == Verdict::EquivalentLike, || {
        format!(
            "1/(n+3): {:?}, product {}, tail decrease {:e}",
            e.verdict, e.final_product, e.tail_rel_decrease
        )
    })?;
    within(t.elapsed(), 10.0)?;
    Ok(format!(
        "products 1, {:.2e}, {:.6}",
        s.final_product, e.final_product
    ))
}

fn c7_polar_equivalence() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0usize;
    let mut samples = 0usize;
    for eps in [0.05, 0.1] {
        let mut members = Vec::new();
        let mut buf = vec![0i64; 4];
        let mut failure = None;
        enumerate_box(&mut buf, 0, 6, &mut |v| {
            let chi = Character::from_dense(v);
            if chi.is_zero() || failure.is_some() {
                return;
            }
            checked += 1;
            let closed =
                polar_member_closed(&chi, eps, PExponent::TWO).unwrap() == PolarVerdict::Member;
            let oracle = polar_sup_oracle(&chi, eps, PExponent::TWO)
                .unwrap()
                .within_quarter();
            let holder = eps * norm(&chi, NormKind::Lq(2.0)).unwrap() <= 0.25 * (1.0 + 1e-12);
            if closed != oracle || closed != holder {
                failure = Some(format!(
                    "{chi:?} at eps {eps}: closed {closed}, oracle {oracle}, holder {holder}"
                ));
            }
            if closed {
                members.push(chi);
            }
        });
        if let Some(f) = failure {
            return Err(f);
        }
        let mut drawn = 0;
        while drawn < 10_000 {
            // uniform in the open 4-ball of radius eps
            let dir: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
            let r: f64 = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
            if r == 0.0 || r > 1.0 {
                continue;
            }
            drawn += 1;
            let scale = eps * rng.random::<f64>().powf(0.25) * (1.0 - 1e-12) / r;
            let w =
                TorusSeq::from_turns(&dir.iter().map(|x| x * scale).collect::<Vec<_>>()).unwrap();
            debug_assert!(rho_p(&w, &TorusSeq::identity(), PExponent::TWO) < eps);
            samples += 1;
            for chi in &members {
                let ph = pair(chi, &w).value();
                ensure(ph.abs() <= 0.25, || {
                    format!("{chi:?} pairs to {ph} at eps {eps}")
                })?;
            }
        }
    }
    within(t.elapsed(), 30.0)?;
    Ok(format!("{checked} characters, {samples} sampled points"))
}

fn c8_lemma1() -> Outcome {
    let (a, b) = lemma1_bounds(0.06, 2.0).map_err(|e| e.to_string())?;
    ensure((a, b) == (3, 17), || format!("bounds ({a}, {b})"))?;
    let r = lemma1_check(0.06, 2.0, 5, 5).map_err(|e| e.to_string())?;
    ensure(r.holds(), || format!("{} violations", r.violations.len()))?;
    Ok(format!("(a, b) = ({a}, {b}), {} characters", r.checked))
}

fn c9_hull_witness() -> Outcome {
    let t = Instant::now();
    let w = hull_witness(PExponent::TWO, 0.05, 10.0).map_err(|e| e.to_string())?;
    let HullWitness::Unbounded(w) = w else {
        return Err("p = 2 did not produce an unbounded witness".into());
    };
    let d = dist_p(&w.omega, &TorusSeq::identity(), PExponent::TWO);
    let cert = bipolar_sup(&w.omega, 0.05, PExponent::TWO, 5).map_err(|e| e.to_string())?;
    ensure(d >= 10.0, || format!("distance {d}"))?;
    ensure(cert.certifies(), || format!("bipolar sup {}", cert.value))?;
    let b = hull_witness(PExponent::ONE, 0.05, 10.0).map_err(|e| e.to_string())?;
    ensure(matches!(b, HullWitness::Bounded(_)), || {
        "p = 1 did not give a certificate".into()
    })?;
    within(t.elapsed(), 60.0)?;
    Ok(format!(
        "N = {}, dist = {d:.5}, bipolar sup = {:.6}",
        w.n, cert.value
    ))
}

fn c10_monothetic() -> Outcome {
    let t = Instant::now();
    let cap = 10_000_000;
    let g = build_generator(3, cap).map_err(|e| e.to_string())?;
    g.check().map_err(|e| e.to_string())?;
    let (k2, k3) = (g.k_bound(2).unwrap(), g.k_bound(3).unwrap());
    let w = TorusSeq::from_turns(&[0.3, 0.1]).unwrap();
    let r = approx_power(&w, 0.2, &g, PExponent::TWO, cap).map_err(|e| e.to_string())?;
    let d = dist_p(&w, &g.power(r.k), PExponent::TWO);
    ensure(d < 0.2, || format!("k = {}: distance {d}", r.k))?;
    within(t.elapsed(), 120.0)?;
    Ok(format!("k2 = {k2}, k3 = {k3}, k = {}, dist = {d:.5}", r.k))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn c11_adic() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let base = GammaSeq::squares(10);
    for _ in 0..100 {
        let n = rng.random_range(1..=8usize);
        let den = base.gamma(n + 1).clone();
        let num = BigUint::from(rng.random::<u64>()) % &den;
        let x = BigRational::new(BigInt::from(num), BigInt::from(den));
        let e = digits_of(&x, &base, n).map_err(|e| e.to_string())?;
        ensure(e.exact && from_digits(&e.digits, &base) == x, || {
            format!("round trip of {x}")
        })?;
    }

    let mut approx = 0;
    for digits in [
        vec![1u64, 1],
        vec![1; 6],
        vec![3, 8, 15, 24, 0, 1, 2],
        vec![0, 0, 0, 0, 0, 0, 0, 1],
    ] {
        let x = AdicDigits::from_u64(&digits, &base).map_err(|e| e.to_string())?;
        for eps in [0.2, 0.05, 0.02] {
            let r = q_approx(&x, &base, eps).map_err(|e| e.to_string())?;
            let value = from_digits(&x, &base);
            let r0 = r0_dist(&value, &r.x_n, &base, base.len() + 1).map_err(|e| e.to_string())?;
            ensure(r0 < BigRational::from_float(eps).unwrap(), || {
                format!("r0 = {r0} at eps {eps}")
            })?;
            approx += 1;
        }
    }

    let b4 = GammaSeq::squares(4);
    let g4 = b4.gamma(4).clone();
    for n in -1000i64..=1000 {
        let chi = int_to_digitchar(&BigInt::from(n), &b4).map_err(|e| e.to_string())?;
        for _ in 0..16 {
            let j = BigUint::from(rng.random::<u64>()) % &g4;
            let x = BigRational::new(BigInt::from(j), BigInt::from(g4.clone()));
            let a = pair_gp(&BigInt::from(n), &x, &b4).map_err(|e| e.to_string())?;
            let b = pair_digitchar(&chi, &x, &b4).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("n = {n}, x = {x}: {a} vs {b}"))?;
        }
    }

    let b3 = GammaSeq::from_u64(&[4, 9, 16]).unwrap();
    let mut kernel = 0;
    let mut buf = vec![0i64; 3];
    let mut failure = None;
    let xs: Vec<BigRational> = (0..576).step_by(7).map(|j| q(j, 576)).collect();
    // coefficients up to 40 reach the relation 36 e_1 = e_3
    let mut visit = |v: &[i64]| {
        let pairs: Vec<(usize, i64)> = v.iter().enumerate().map(|(i, &c)| (i + 1, c)).collect();
        let chi = SparseGammaChar::from_pairs(&pairs).unwrap();
        let ann = annihilator_test(&chi, &b3).unwrap();
        let red = quotient_reduce(&chi, &b3).unwrap();
        if ann != (red == BigInt::from(0)) {
            failure = Some(format!("{v:?}: annihilator {ann}, reduce {red}"));
        }
        if ann {
            kernel += 1;
            for x in &xs {
                if pair_sparse(&chi, x, &b3).unwrap() != q(0, 1) {
                    failure = Some(format!("{v:?} pairs nontrivially with {x}"));
                }
            }
        }
    };
    for a in -40i64..=40 {
        for b in -10i64..=10 {
            for c in -2i64..=2 {
                buf.copy_from_slice(&[a, b, c]);
                visit(&buf);
            }
        }
    }
    if let Some(f) = failure {
        return Err(f);
    }
    within(t.elapsed(), 5.0)?;
    Ok(format!(
        "100 round trips, {approx} approximations, 2001 integers, {kernel} annihilators"
    ))
}

/// Try every injective assignment of units to slots `1..=slots`.
fn brute_member(units: &[u64], w: &TSeqNeighborhood, slots: usize, used: &mut Vec<bool>) -> bool {
    let Some((&m, rest)) = units.split_first() else {
        return true;
    };
    for t in 1..=slots {
        if !used[t] && m >= w.threshold(t) {
            used[t] = true;
            let ok = brute_member(rest, w, slots, used);
            used[t] = false;
            if ok {
                return true;
            }
        }
    }
    false
}

fn c12_tseq() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    for _ in 0..20 {
        let len = rng.random_range(1..=4);
        let mut prefix = Vec::new();
        let mut cur = 0u64;
        for _ in 0..len {
            cur += rng.random_range(1..=3);
            prefix.push(cur);
        }
        let w = TSeqNeighborhood::new(prefix.clone()).unwrap();
        let mut buf = vec![0i64; 8];
        let mut failure = None;
        enumerate_l1_ball(&mut buf, 0, 3, &mut |v| {
            let chi = Character::from_dense(v);
            if failure.is_some() {
                return;
            }
            let units: Vec<u64> = chi
                .iter()
                .flat_map(|(m, n)| std::iter::repeat_n(m as u64, n.unsigned_abs() as usize))
                .collect();
            let slots = units.len() + 3;
            let brute = brute_member(&units, &w, slots, &mut vec![false; slots + 1]);
            if brute != tseq_member(&chi, &w) {
                failure = Some(format!("{chi:?} against {prefix:?}"));
            }
            checked += 1;
        });
        if let Some(f) = failure {
            return Err(f);
        }
    }
    let cases = [
        (vec![1u64, 2, 3], 0, 0),
        (vec![5, 6, 7], 0, 4),
        (vec![3, 10], 1, 9),
    ];
    for (t, k, want) in cases {
        let w = TSeqNeighborhood::new(t.clone()).unwrap();
        let m = tseq_window_inclusion(&w, k, 20).map_err(|e| e.to_string())?;
        ensure(m == want, || {
            format!("thresholds {t:?}, k = {k}: m = {m}, expected {want}")
        })?;
    }
    Ok(format!("{checked} greedy/brute comparisons, 3 inclusions"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("affinity closed form vs quadrature", c1_oracle_agreement),
        ("affinity quadratic sandwich", c2_affinity_sandwich),
        ("linear density first-order coefficient", c3_linear_slope),
        ("chord-angle sandwich", c4_chord_angle_sandwich),
        ("quotient metric sandwich", c5_quotient_sandwich),
        ("Kakutani classifier", c6_kakutani),
        ("polar equivalence", c7_polar_equivalence),
        ("window inclusions", c8_lemma1),
        ("non-quasi-convexity witness", c9_hull_witness),
        ("monothetic pipeline", c10_monothetic),
        ("adic exactness", c11_adic),
        ("T-sequence checks", c12_tseq),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
