//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;

use stabcert::cert::Certificate;
use stabcert::demazure::verify_demazure_algebra;
use stabcert::kclass::{central_charge, isogeny_pullback, isogeny_pushforward, twist, v_of_point};
use stabcert::rational::{int, ratio};
use stabcert::sample::{random_lattice_vector, seeded};
use stabcert::schubert::{double_schubert, double_schubert_expansion, specialization_check};
use stabcert::soergel::{
    verify_bimodule_closure, verify_triangular_injectivity, verify_unitriangularity, Bimodule,
};
use stabcert::stability::{
    bayer_shadow_scan, compose_relations, derive_twist_chain, hn_split_p1, phase, ChainOutcome, SplitSheafP1,
};
use stabcert::{ChargeParams, ExactComplex, LatticeVector, Permutation, Poly, Rational, RelationFact};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into() }
}

fn run(name: &str, limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let mut v = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            v.passed = false;
            v.detail = format!("{}; exceeded {}s", v.detail, limit.as_secs());
        }
    }
    let tag = if v.passed { "PASS" } else { "FAIL" };
    println!("{tag}  {name}  [{:.2}s]  {}", elapsed.as_secs_f64(), v.detail);
    v.passed
}

// ---- oracles ---------------------------------------------------------------

/// `∏_{i<j, w(i)>w(j)} (x_i − x_j)`, straight from the definition.
fn delta_oracle(w: &Permutation) -> Poly {
    let n = w.n();
    let mut acc = Poly::one(n);
    for i in 1..=n {
        for j in i + 1..=n {
            if w.apply(i) > w.apply(j) {
                acc = &acc * &(&Poly::x(n, i) - &Poly::x(n, j));
            }
        }
    }
    acc
}

fn signed(len: usize, p: Poly) -> Poly {
    if len % 2 == 0 {
        p
    } else {
        -p
    }
}

/// Counts pairs and mismatches of `value(w, w')` against the diagonal rule.
fn diagonal_sweep(
    n: usize,
    pairs: impl Fn(&Permutation, &Permutation) -> bool,
    value: impl Fn(&Permutation, &Permutation) -> Poly,
    diagonal: impl Fn(&Permutation) -> Poly,
) -> (usize, Vec<String>) {
    let perms = Permutation::all(n);
    let mut count = 0;
    let mut bad = Vec::new();
    for w in &perms {
        for wp in &perms {
            if !pairs(w, wp) {
                continue;
            }
            count += 1;
            let expected = if w == wp { signed(w.length(), diagonal(w)) } else { Poly::zero(n) };
            if value(w, wp) != expected {
                bad.push(format!("({w},{wp})"));
            }
        }
    }
    (count, bad)
}

fn summarize(checked: usize, bad: &[String]) -> String {
    if bad.is_empty() {
        format!("{checked} cases, 0 violations")
    } else {
        format!("{checked} cases, {} violations: {}", bad.len(), bad.join(" "))
    }
}

fn filtration(diagonal: fn(&Permutation) -> Poly) -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in [3, 4] {
        let m = Bimodule::new(n);
        let elements: BTreeMap<Permutation, _> = Permutation::all(n).into_iter().map(|w| (w.clone(), m.s_element(&w))).collect();
        let (c, b) = diagonal_sweep(
            n,
            |w, wp| wp.length() >= w.length(),
            |w, wp| m.f_map(w, &elements[wp]).expect("same rank"),
            diagonal,
        );
        checked += c;
        bad.extend(b);
    }
    verdict(bad.is_empty(), summarize(checked, &bad))
}

fn specialization_pairs(diagonal: fn(&Permutation) -> Poly) -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in [3, 4] {
        let (c, b) = diagonal_sweep(
            n,
            |w, wp| wp.length() <= w.length(),
            |w, wp| specialization_check(w, wp).expect("length precondition holds"),
            diagonal,
        );
        checked += c;
        bad.extend(b);
    }
    verdict(bad.is_empty(), summarize(checked, &bad))
}

/// `Z(v) = −Σ_S v_S (−(b + ia))^{|S|}` on plain rational pairs.
fn charge_oracle(a: &Rational, b: &Rational, v: &LatticeVector) -> (Rational, Rational) {
    let n = v.n();
    let (wr, wi) = (-b.clone(), -a.clone());
    let mut powers = vec![(Rational::one(), Rational::zero())];
    for k in 0..n {
        let (pr, pi) = powers[k].clone();
        powers.push((&pr * &wr - &pi * &wi, &pr * &wi + &pi * &wr));
    }
    let mut re = Rational::zero();
    let mut im = Rational::zero();
    for (mask, c) in v.components().iter().enumerate() {
        let (pr, pi) = &powers[mask.count_ones() as usize];
        re -= c * pr;
        im -= c * pi;
    }
    (re, im)
}

/// Splits `[0, len)` into blocks; visits every set partition once.
fn set_partitions(len: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
    fn go(i: usize, len: usize, blocks: &mut Vec<Vec<usize>>, visit: &mut dyn FnMut(&[Vec<usize>])) {
        if i == len {
            visit(blocks);
            return;
        }
        for k in 0..blocks.len() {
            blocks[k].push(i);
            go(i + 1, len, blocks, visit);
            blocks[k].pop();
        }
        blocks.push(vec![i]);
        go(i + 1, len, blocks, visit);
        blocks.pop();
    }
    go(0, len, &mut Vec::new(), visit);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Summand {
    Bundle(i64),
    Torsion(u64),
}

/// Charge of a summand as an exact pair over the common denominator of `a, b`.
fn summand_charge(s: Summand, a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
    // scaled by a.1 * b.1
    let den = a.1 * b.1;
    match s {
        Summand::Bundle(d) => (b.0 * a.1 - d as i128 * den, a.0 * b.1),
        Summand::Torsion(l) => (-(l as i128) * den, 0),
    }
}

fn phase_cmp(z1: (i128, i128), z2: (i128, i128)) -> std::cmp::Ordering {
    let cross = z1.0 * z2.1 - z2.0 * z1.1;
    0.cmp(&cross)
}

/// The unique grouping into equal-phase blocks with strictly decreasing phases.
fn hn_oracle(summands: &[Summand], a: (i128, i128), b: (i128, i128)) -> Vec<Vec<Summand>> {
    let mut found: Vec<Vec<Vec<Summand>>> = Vec::new();
    set_partitions(summands.len(), &mut |blocks| {
        let charges: Vec<Vec<(i128, i128)>> =
            blocks.iter().map(|bl| bl.iter().map(|&i| summand_charge(summands[i], a, b)).collect()).collect();
        let semistable = charges.iter().all(|cs| cs.iter().all(|z| phase_cmp(*z, cs[0]).is_eq()));
        if !semistable {
            return;
        }
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        order.sort_by(|&i, &j| phase_cmp(charges[j][0], charges[i][0]));
        let strict = order.windows(2).all(|p| phase_cmp(charges[p[0]][0], charges[p[1]][0]).is_gt());
        if strict {
            found.push(
                order
                    .iter()
                    .map(|&k| {
                        let mut bl: Vec<Summand> = blocks[k].iter().map(|&i| summands[i]).collect();
                        bl.sort();
                        bl
                    })
                    .collect(),
            );
        }
    });
    assert_eq!(found.len(), 1, "oracle grouping is not unique for {summands:?}");
    found.pop().unwrap()
}

fn factor_summands(f: &SplitSheafP1) -> Vec<Summand> {
    let mut out: Vec<Summand> = f
        .bundle_degrees
        .iter()
        .map(|&d| Summand::Bundle(d))
        .chain(f.torsion_lengths.iter().map(|&l| Summand::Torsion(l)))
        .collect();
    out.sort();
    out
}

fn multisets(alphabet: &[Summand], max: usize) -> Vec<Vec<Summand>> {
    fn go(start: usize, alphabet: &[Summand], cur: &mut Vec<Summand>, max: usize, out: &mut Vec<Vec<Summand>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..alphabet.len() {
            cur.push(alphabet[i]);
            go(i, alphabet, cur, max, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, alphabet, &mut Vec::new(), max, &mut out);
    out
}

/// Every fact reachable by a word of at most `max_len` axioms.
fn reachable_facts(big_n: i64, max_len: usize) -> BTreeSet<(i64, u32, bool)> {
    let axioms = [(-1, 0, false), (big_n, 1, true)];
    let mut frontier = BTreeSet::from([(0i64, 0u32, false)]);
    let mut seen = frontier.clone();
    for _ in 0..max_len {
        let mut next = BTreeSet::new();
        for &(t, k, s) in &frontier {
            for &(at, ak, as_) in &axioms {
                next.insert((t + at, k + ak, s || as_));
            }
        }
        seen.extend(next.iter().copied());
        frontier = next;
    }
    seen
}

// ---- criteria --------------------------------------------------------------

fn main() -> ExitCode {
    let mut all = true;
    let mut record = |ok: bool| all &= ok;

    record(run(
        "filtration identity F_w(S_w') = (-1)^l(w) delta Delta_w, S3+S4",
        Some(Duration::from_secs(300)),
        || filtration(delta_oracle),
    ));
    run("  [reference] same with Delta_{w^-1} on the diagonal", None, || {
        filtration(|w| delta_oracle(&w.inverse()))
    });

    record(run("double Schubert expansion, all of S4", Some(Duration::from_secs(60)), || {
        let bad: Vec<String> = Permutation::all(4)
            .iter()
            .filter(|w| double_schubert(w) != double_schubert_expansion(w))
            .map(|w| w.to_string())
            .collect();
        verdict(bad.is_empty(), summarize(24, &bad))
    }));

    record(run("specialization S_u(x,x) = delta_{u,e}, all of S4", None, || {
        let bad: Vec<String> = Permutation::all(4)
            .iter()
            .filter(|u| {
                let expected = if u.is_identity() { Poly::one(4) } else { Poly::zero(4) };
                double_schubert(u).specialize_y_to_x() != expected
            })
            .map(|u| u.to_string())
            .collect();
        verdict(bad.is_empty(), summarize(24, &bad))
    }));
    record(run(
        "specialization S_w(w'x;x) = (-1)^l(w) delta Delta_w for l(w') <= l(w), S3+S4",
        None,
        || specialization_pairs(delta_oracle),
    ));
    run("  [reference] same with Delta_{w^-1} on the diagonal", None, || {
        specialization_pairs(|w| delta_oracle(&w.inverse()))
    });

    record(run("Demazure algebra on S4, 20 seeded polynomials of degree <= 6", None, || {
        let cert = verify_demazure_algebra(4, 20, 2024);
        verdict(cert.passed(), format!("{} relations, {} violations", cert.checks, cert.violation_count()))
    }));

    record(run("Soergel structure: unitriangularity n<=4, closure and injectivity n=3", None, || {
        let mut lines = Vec::new();
        let mut ok = true;
        for n in 1..=4 {
            let c = verify_unitriangularity(n);
            ok &= c.passed();
            lines.push(format!("tri(n={n}):{}", c.violation_count()));
        }
        for j in 0..=4 {
            let c = verify_bimodule_closure(3, j);
            ok &= c.passed();
            lines.push(format!("closure(j={j}):{}", c.violation_count()));
            let c = verify_triangular_injectivity(3, j);
            ok &= c.passed();
            lines.push(format!("inj(j={j}):{}", c.violation_count()));
        }
        verdict(ok, format!("violations {}", lines.join(" ")))
    }));

    record(run("charge transformation laws, 100 vectors, n=1..4, m in {2,3,5}", Some(Duration::from_secs(60)), || {
        let mut rng = seeded(7);
        let mut bad = Vec::new();
        let mut checked = 0;
        for n in 1..=4 {
            for m in [2u64, 3, 5] {
                let a = ratio(rng.gen_range(1..=9), rng.gen_range(1..=4));
                let b = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
                let p = ChargeParams::new(a.clone(), b.clone(), n).unwrap();
                let m2 = int((m * m) as i64);
                let scale = stabcert::rational::pow(&m2, n as u32);
                let dual_h = vec![-1i64; n];
                for _ in 0..100 {
                    let v = random_lattice_vector(&mut rng, n, 10);
                    let lhs = charge_oracle(&a, &b, &isogeny_pullback(m, &v).unwrap());
                    let rhs = charge_oracle(&(&a / &m2), &(&b / &m2), &v);
                    let rhs = (&rhs.0 * &scale, &rhs.1 * &scale);
                    let push = charge_oracle(&a, &b, &isogeny_pushforward(m, &v).unwrap());
                    let up = charge_oracle(&(&a * &m2), &(&b * &m2), &v);
                    let tw = charge_oracle(&a, &b, &twist(&v, &dual_h).unwrap());
                    let shifted = charge_oracle(&a, &(&b + Rational::one()), &v);
                    let lib = central_charge(&p, &v).unwrap();
                    let own = charge_oracle(&a, &b, &v);
                    checked += 4;
                    for (name, ok) in
                        [("pullback", lhs == rhs), ("pushforward", push == up), ("twist", tw == shifted), ("charge", (lib.re, lib.im) == own)]
                    {
                        if !ok {
                            bad.push(format!("{name}@n={n},m={m}"));
                        }
                    }
                }
            }
        }
        verdict(bad.is_empty(), summarize(checked, &bad))
    }));

    record(run("skyscraper normalization Z(O_p) = -1 with phase 1, 10 random (a,b)", None, || {
        let mut rng = seeded(11);
        let minus_one = ExactComplex::real(int(-1));
        let mut bad = Vec::new();
        for k in 0..10 {
            let n = 1 + k % 4;
            let a = ratio(rng.gen_range(1..=50), rng.gen_range(1..=7));
            let b = ratio(rng.gen_range(-50..=50), rng.gen_range(1..=7));
            let p = ChargeParams::new(a, b, n).unwrap();
            let z = central_charge(&p, &v_of_point(n)).unwrap();
            let ph = phase(&z).unwrap();
            if z != minus_one || !ph.is_integral() || ph.shift() != 0 || ph != phase(&minus_one).unwrap() {
                bad.push(format!("{z}@n={n}"));
            }
        }
        verdict(bad.is_empty(), summarize(10, &bad))
    }));

    record(run("Bayer shadow at n=1, box 200, (a,b) in {(1,0),(1/2,3),(7/3,-2)}", None, || {
        let mut parts = Vec::new();
        let mut ok = true;
        for (a, b) in [(int(1), int(0)), (ratio(1, 2), int(3)), (ratio(7, 3), int(-2))] {
            let cert = bayer_shadow_scan(&ChargeParams::new(a, b, 1).unwrap(), 200).unwrap();
            ok &= cert.passed() && cert.scanned == 200 * 401 + 200 && cert.equalities == 200;
            parts.push(format!("{}/{}", cert.violation_count(), cert.scanned));
        }
        verdict(ok, format!("violations/scanned {}", parts.join(" ")))
    }));

    record(run("HN on P1 against grouping oracle, <=5 summands, degrees in [-3,3]", None, || {
        let alphabet: Vec<Summand> =
            (-3..=3).map(Summand::Bundle).chain((1..=3).map(Summand::Torsion)).collect();
        let inputs = multisets(&alphabet, 5);
        let mut bad = Vec::new();
        let mut checked = 0;
        for (a, b) in [((1i128, 1i128), (0i128, 1i128)), ((1, 2), (3, 1)), ((7, 3), (-2, 1))] {
            let p = ChargeParams::new(ratio(a.0 as i64, a.1 as i64), ratio(b.0 as i64, b.1 as i64), 1).unwrap();
            for input in &inputs {
                let sheaf = SplitSheafP1::new(
                    input.iter().filter_map(|s| if let Summand::Bundle(d) = s { Some(*d) } else { None }).collect(),
                    input.iter().filter_map(|s| if let Summand::Torsion(l) = s { Some(*l) } else { None }).collect(),
                )
                .unwrap();
                checked += 1;
                let factors = hn_split_p1(&sheaf, &p).unwrap();
                let got: Vec<Vec<Summand>> = factors.iter().map(|f| factor_summands(&f.factor)).collect();
                let decreasing = factors.windows(2).all(|w| w[0].phase > w[1].phase);
                let mut union: Vec<Summand> = got.concat();
                union.sort();
                let idempotent = factors
                    .iter()
                    .all(|f| hn_split_p1(&f.factor, &p).map(|g| g.len() == 1 && g[0].factor == f.factor).unwrap_or(false));
                if got != hn_oracle(input, a, b) || !decreasing || union != *input || !idempotent {
                    bad.push(format!("{input:?}"));
                }
            }
        }
        verdict(bad.is_empty(), summarize(checked, &bad))
    }));

    record(run("twist chain vs word search (length <= 12), N in {1,2,3}, a_j in [1,12]", None, || {
        let mut bad = Vec::new();
        let mut checked = 0;
        for big_n in 1..=3u64 {
            let reach = reachable_facts(big_n as i64, 12);
            for j in 1..=3u32 {
                for a in 1..=12u64 {
                    checked += 1;
                    let mut degrees = vec![1u64; j as usize];
                    degrees[j as usize - 1] = a;
                    let report = derive_twist_chain(&degrees, big_n).unwrap();
                    let searched = reach.contains(&(a as i64, j, true));
                    let closed_form = a <= u64::from(j) * big_n;
                    let ok = match &report.outcomes[j as usize - 1] {
                        ChainOutcome::Proved(cert) => {
                            let replayed = cert
                                .steps
                                .iter()
                                .fold(RelationFact::IDENTITY, |acc, s| compose_relations(&acc, &s.fact(big_n)));
                            searched && closed_form && replayed == cert.goal && cert.goal == RelationFact::new(a as i64, j, true)
                        }
                        ChainOutcome::Refused { .. } => !searched && !closed_form,
                    };
                    if !ok {
                        bad.push(format!("N={big_n},j={j},a={a}"));
                    }
                }
            }
        }
        verdict(bad.is_empty(), summarize(checked, &bad))
    }));

    if all {
        println!("all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("some criteria failed");
        ExitCode::FAILURE
    }
}
