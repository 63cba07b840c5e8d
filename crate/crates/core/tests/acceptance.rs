//! One line per acceptance criterion. Run with `cargo test --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use dynatomic_core::dynatomic::{astar_support_predicate, ord_at, phi_star, point_period_data, Period};
use dynatomic_core::exactalg::{cyclotomic, divisors, is_prime_u64, lucas_lehmer, mucalc_gap, UniPoly};
use dynatomic_core::families::{content_one_certificate, family_phi_star, integer_content, lead_coeff_in_x, lead_coeff_in_y, FamilyMap};
use dynatomic_core::fixtures::{builtin, select, Fixture};
use dynatomic_core::form::QForm;
use dynatomic_core::htuned::{bstar_support_predicate, TunedContext};
use dynatomic_core::mpoly::MPoly;
use dynatomic_core::powermaps::{factor_indices, reducibility_verdict, verify_factorization, PowerKind, Verdict};
use dynatomic_core::ratmap::{Pgl2, ProjPoint, RationalMap};

type Outcome = Result<(), Vec<String>>;

fn map(s: &str) -> RationalMap {
    RationalMap::parse(s).unwrap().0
}

fn mp(s: &str) -> MPoly {
    MPoly::parse(s).unwrap()
}

fn qf(s: &str) -> QForm {
    QForm::parse(s).unwrap()
}

struct Report(Vec<String>);

impl Report {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    fn result(&mut self, r: Result<(), String>) {
        if let Err(e) = r {
            self.0.push(e);
        }
    }

    fn done(self) -> Outcome {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(self.0)
        }
    }
}

/// The computed value against the expansion as typeset.
fn against_printed(f: &Fixture, r: &mut Report) {
    let printed = mp(f.printed.as_deref().expect("printed text"));
    match f.run(usize::MAX) {
        Ok(out) => {
            let got = mp(&out.got);
            r.check(got == printed, || format!("{}: computed {} but printed {}", f.id, got, printed));
            r.check(out.passed, || format!("{}: differs from the stored oracle value", f.id));
        }
        Err(e) => r.0.push(format!("{}: {e}", f.id)),
    }
}

fn c1() -> Outcome {
    let mut r = Report(vec![]);
    let m = map("-x^2 + y^2, x*y");
    let p1 = phi_star(&m, 1).unwrap();
    let p2 = phi_star(&m, 2).unwrap();
    r.check(p1 == qf("-y*(2*x^2 - y^2)"), || format!("Φ*₁ = {}", p1.to_mpoly()));
    r.check(p2 == qf("-y^2"), || format!("Φ*₂ = {}", p2.to_mpoly()));
    let a = ord_at(&p2, &ProjPoint::infinity()).unwrap();
    r.check(a == 2, || format!("a*_[1:0](2) = {a}"));
    r.done()
}

fn c2() -> Outcome {
    let mut r = Report(vec![]);
    let all = builtin();
    let chosen = select(&all, Some("psiegs"));
    r.check(chosen.len() == 19, || format!("{} fixtures, expected 19", chosen.len()));
    for f in chosen {
        against_printed(f, &mut r);
    }
    r.done()
}

fn c3() -> Outcome {
    let mut r = Report(vec![]);
    let all = builtin();
    let chosen = select(&all, Some("power-"));
    r.check(chosen.len() == 12, || format!("{} fixtures, expected 12", chosen.len()));
    for f in chosen {
        against_printed(f, &mut r);
    }
    for d in [2, 3] {
        for n in 1..=8 {
            r.result(verify_factorization(d, n, PowerKind::Power).map(drop).map_err(|e| format!("z^{d}, N={n}: {e}")));
        }
    }
    for n in 3..=8 {
        r.result(verify_factorization(2, n, PowerKind::Reciprocal).map(drop).map_err(|e| format!("1/z^2, N={n}: {e}")));
    }
    r.done()
}

fn c4() -> Outcome {
    let mut r = Report(vec![]);
    for n in 2..=13u32 {
        let m = (BigInt::one() << n) - 1u32;
        let trial = is_prime_u64(u64::try_from(&m).unwrap());
        r.check(lucas_lehmer(n).unwrap() == trial, || format!("Lucas–Lehmer disagrees with trial division at N={n}"));
    }
    for kind in [PowerKind::Power, PowerKind::Reciprocal] {
        for d in 2..=4u32 {
            for n in 1..=13u32 {
                let expected_irreducible = d == 2
                    && match kind {
                        PowerKind::Power => [2, 3, 5, 7, 13].contains(&n),
                        PowerKind::Reciprocal => n == 2 || n == 3,
                    };
                let v = reducibility_verdict(d, n, kind).unwrap();
                r.check((v == Verdict::Irreducible) == expected_irreducible, || format!("{kind:?} d={d} N={n}: {v}"));
                // independent route: count cyclotomic factors (and powers of z)
                let (ks, unit) = factor_indices(d, n, kind).unwrap();
                let count = ks.len() + unit.exponent;
                r.check((count == 1) == expected_irreducible, || format!("{kind:?} d={d} N={n}: {count} factors"));
            }
        }
        for n in 1..=13u32 {
            r.result(verify_factorization(2, n, kind).map(drop).map_err(|e| format!("{kind:?} d=2 N={n}: {e}")));
        }
    }
    r.done()
}

fn c5() -> Outcome {
    let mut r = Report(vec![]);
    let fam = FamilyMap::milnor_ab();
    for n in 2..=4u32 {
        let p = match family_phi_star(&fam, n) {
            Ok(p) => p,
            Err(e) => {
                r.0.push(format!("N={n}: {e}"));
                continue;
            }
        };
        let nu = dynatomic_core::dynatomic::nu_degree(2, u64::from(n)).unwrap();
        let nu = u32::try_from(&nu).unwrap();
        let c = cyclotomic(u64::from(n)).unwrap();
        let lx = lead_coeff_in_x(&p, nu).unwrap();
        let ly = lead_coeff_in_y(&p, nu).unwrap();
        r.check(lx == mp(&c.to_string_in("b")), || format!("N={n}: x-lead {lx}"));
        r.check(ly == mp(&c.to_string_in("a")), || format!("N={n}: y-lead {ly}"));
        r.check(p.has_integer_coeffs(), || format!("N={n}: non-integer coefficients"));
        r.check(integer_content(&p).unwrap() == BigInt::one(), || format!("N={n}: integer content ≠ 1"));
        r.check(content_one_certificate(&p).unwrap().is_some(), || format!("N={n}: no content-one certificate"));
    }
    r.done()
}

fn c6() -> Outcome {
    let mut r = Report(vec![]);
    let m = map("x^2 - 2*x*y, -2*x*y + y^2");
    let ctx = TunedContext::new(&m, &Pgl2::parse("y, x").unwrap()).unwrap();
    for n in [2u32, 3] {
        let tilde = ctx.psi_tilde(n).unwrap().psi_tilde;
        match ctx.divides_phi_star(n) {
            Ok(quot) => {
                r.check(tilde.degree() >= 1 && quot.degree() >= 1, || format!("N={n}: factor is not proper"));
                r.check(tilde.mul(&quot) == phi_star(&m, 2 * n).unwrap(), || format!("N={n}: Ψ̃*·quotient ≠ Φ*"));
            }
            Err(e) => r.0.push(format!("N={n}: {e}")),
        }
        let gap = ctx.degree_gap(n).unwrap();
        r.check(gap > 0, || format!("N={n}: degree gap {gap}"));
    }
    r.done()
}

fn c7() -> Outcome {
    let mut r = Report(vec![]);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..100 {
        let (d, n) = if i % 2 == 0 { (2, rng.gen_range(1..=8)) } else { (3, rng.gen_range(1..=6)) };
        let m = random_map(&mut rng, d, 3);
        r.result(moebius_inversion(&m, n));
        r.result(degree_law(&m, n));
    }
    // the largest cubic cases, once each
    for n in [7, 8] {
        let m = map("x^3 - x*y^2 + 2*y^3, x^2*y + x*y^2 - y^3");
        r.result(moebius_inversion(&m, n));
    }
    let mut identities = 0;
    for _ in 0..100 {
        let m = random_map(&mut rng, 2, 5);
        let h = random_pgl2(&mut rng, 3);
        r.result(conjugation_covariance(&m, &h, rng.gen_range(1..=3)));
        r.result(sigma_invariance(&m, &h));
        match fixed_point_identity(&m) {
            Ok(true) => identities += 1,
            Ok(false) => {}
            Err(e) => r.0.push(e),
        }
        let q = BigRational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=20).into());
        r.result(orbit_derivative_product(q));
    }
    r.check(identities >= 90, || format!("only {identities} maps with distinct fixed points"));
    for a in 2..=5 {
        for p in 2..=5 {
            for n in 2..=12 {
                r.check(mucalc_gap(a, p, n).unwrap() > BigInt::from(0), || format!("mucalc gap at a={a} p={p} n={n}"));
            }
        }
    }
    for k in 1..=200u64 {
        let prod = divisors(k).into_iter().fold(UniPoly::one(), |acc, d| &acc * &cyclotomic(d).unwrap());
        let want = &UniPoly::monomial(BigRational::one(), k as usize) - &UniPoly::one();
        r.check(prod == want, || format!("∏ C_d ≠ t^{k} − 1"));
    }
    r.done()
}

fn points(extra: &[&str]) -> Vec<ProjPoint> {
    let mut ps: Vec<ProjPoint> = ["inf", "0", "1", "-1", "2", "-2", "1/2", "-1/2", "3/2", "3"].iter().map(|s| ProjPoint::parse(s).unwrap()).collect();
    ps.extend(extra.iter().map(|f| ProjPoint::from_form(&qf(f)).unwrap()));
    ps
}

fn show(p: &Period) -> String {
    p.map_or("∞".into(), |v| v.to_string())
}

fn c8() -> Outcome {
    let mut r = Report(vec![]);
    // a*: z² − 1 with its fixed-point orbit and a 3-cycle orbit; z² − 3/4 adds a parabolic point
    let cases: [(&str, &[&str]); 2] = [
        ("z^2 - 1", &["x^2 - x*y - y^2", "x^6 + x^5*y - 2*x^4*y^2 - x^3*y^3 + x^2*y^4 + y^6"]),
        ("z^2 - 3/4", &[]),
    ];
    for (s, extra) in cases {
        let m = map(s);
        let stars: Vec<QForm> = (1..=6).map(|n| phi_star(&m, n).unwrap()).collect();
        for q in points(extra) {
            let (per, rr) = point_period_data(&m, &q, 12, 100).unwrap();
            for n in 1..=6u32 {
                let measured = ord_at(&stars[n as usize - 1], &q).unwrap() >= 1;
                let predicted = astar_support_predicate(per, rr, 0, u64::from(n));
                r.check(measured == predicted, || {
                    format!("{s} at {q}: N={n} m={} r={} predicted {predicted}, measured {measured}", show(&per), show(&rr))
                });
            }
        }
    }
    // b̃*: both automorphism contexts of [x² − 2xy : −2xy + y²]
    let m = map("x^2 - 2*x*y, -2*x*y + y^2");
    for (aut, extra) in [("y, x", &["x^2 - x*y + y^2", "x^4 + x^3*y - 9*x^2*y^2 + x*y^3 + y^4"][..]), ("x - y, x", &["x^2 - x*y + y^2"][..])] {
        let ctx = TunedContext::new(&m, &Pgl2::parse(aut).unwrap()).unwrap();
        let p = u64::from(ctx.p());
        let results: Vec<_> = (1..=6).map(|n| ctx.psi_tilde(n).unwrap()).collect();
        for q in points(extra) {
            let in_fix = ctx.fixed_points().contains(&q);
            let (per, rr) = ctx.point_h_period_data(&q, 12, 100).unwrap();
            for n in 1..=6u32 {
                let (_, _, bt) = results[n as usize - 1].b_orders(&q, ctx.fixed_points()).unwrap();
                let measured = bt >= 1;
                let predicted = !in_fix && bstar_support_predicate(per, rr, 0, p, u64::from(n));
                r.check(measured == predicted, || {
                    format!("h = [{aut}] at {q}: N={n} m={} r={} predicted {predicted}, measured {measured}", show(&per), show(&rr))
                });
            }
        }
    }
    r.done()
}

/// Criteria whose statement cannot be met as written, with the reason.
const UNATTAINABLE: [(usize, &str); 1] = [(
    3,
    "the typeset z^2 Φ*_5 omits the z^9 term; Φ*_5 is the 31st cyclotomic polynomial, which the index rule and the direct computation both give",
)];

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("first worked example: Φ*₁, Φ*₂, a*_[1:0](2)", c1, Duration::from_secs(1)),
        ("automorphism example: Φ*₂,₃,₄,₆ and Ψ, Ψ*, Ψ̃*", c2, Duration::from_secs(30)),
        ("power-map tables and cyclotomic factorizations", c3, Duration::from_secs(60)),
        ("reducibility verdicts, d ∈ {2,3,4}, N ≤ 13", c4, Duration::from_secs(5)),
        ("lead coefficients C_N(b), C_N(a) and content 1", c5, Duration::from_secs(300)),
        ("proper factors Ψ̃*₄ | Φ*₄ and Ψ̃*₆ | Φ*₆", c6, Duration::from_secs(60)),
        ("property suites", c7, Duration::from_secs(600)),
        ("support trichotomies vs measured orders", c8, Duration::from_secs(120)),
    ];
    let mut unexpected = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let k = i + 1;
        let t = Instant::now();
        let res = run();
        let el = t.elapsed();
        let slow = el > *limit;
        let ok = res.is_ok() && !slow;
        println!("criterion {k}: {} — {name} ({:.2?}, limit {:?})", if ok { "PASS" } else { "FAIL" }, el, limit);
        if let Err(errs) = &res {
            for e in errs {
                println!("    {e}");
            }
        }
        if slow {
            println!("    exceeded the time limit");
        }
        if !ok {
            match UNATTAINABLE.iter().find(|(c, _)| *c == k) {
                Some((_, why)) if !slow && res.as_ref().err().is_some_and(|e| e.len() == 1) => println!("    not attainable as stated: {why}"),
                _ => unexpected += 1,
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criterion(s) failed unexpectedly");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
