//! Acceptance suite. Prints one PASS or FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use forests_cli::{run, Command, Format, NSelection, Request};
use forests_core::algebra::{chebyshev_t, IntegerPolynomial};
use forests_core::arith::{verify_arithmetic_structure, StructureChecker};
use forests_core::asymptotics::{
    convergence_report, mahler_via_quadrature, mahler_via_roots, Precision,
};
use forests_core::dsl::{format_family, parse_family};
use forests_core::family::{build_family, BaseDescriptor, Family, FamilyDescriptor};
use forests_core::forest::{
    base_forest_count, char_poly, forest_count, forest_count_oracle, q_at_minus_one,
    transform_identity_holds, CharPolyBundle,
};
use forests_core::graph::FoliationSpec;
use forests_core::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;
use serde_json::Value;

type Outcome = Result<(), String>;
type Check = fn() -> Outcome;

const FAMILIES: [&str; 8] = [
    "C(n;1)",
    "C(n;1,2)",
    "GP(n,2)",
    "I(n,2,3)",
    "SW(n;[1],[2])",
    "Y(n;1,1,1)",
    "H(n;1,1,1,1)",
    "T(n,3)",
];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn spec(text: &str) -> FoliationSpec {
    build_family(&parse_family(text).expect("family parses")).expect("family builds")
}

fn bundle(text: &str) -> CharPolyBundle {
    char_poly(&spec(text)).expect("characteristic polynomial")
}

fn poly(coeffs: &[i64]) -> IntegerPolynomial {
    IntegerPolynomial::new(coeffs.to_vec())
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn request(command: Command, family: &str, n: NSelection) -> Request {
    Request {
        command,
        family: family.into(),
        n,
        format: Format::Json,
        precision: Precision::DEFAULT_DIGITS,
        allow_disconnected: false,
    }
}

/// Runs a command through the CLI layer and returns its JSON rows.
fn cli_rows(command: Command, family: &str, n: NSelection) -> Result<Vec<Value>, String> {
    let out = run(&request(command, family, n));
    ensure!(
        out.status == 0,
        "{} {family} exited {}: {:?}",
        command.name(),
        out.status,
        out.stderr
    );
    let doc: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    Ok(doc["rows"].as_array().cloned().unwrap_or_default())
}

fn text(v: &Value) -> &str {
    v.as_str().unwrap_or("")
}

/// `2 T_k(y / 2)` as a polynomial in `y`; integral for every `k`.
fn doubled_chebyshev_half(k: usize) -> IntegerPolynomial {
    let t = chebyshev_t(k);
    let coeffs = t
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let num = c * BigInt::from(2);
            let den = BigInt::from(1) << j;
            assert_eq!(&num % &den, BigInt::from(0));
            num / den
        })
        .collect::<Vec<_>>();
    IntegerPolynomial::new(coeffs)
}

fn criterion_1() -> Outcome {
    let y = bundle("Y(n;1,1,1)");
    ensure!(y.q == poly(&[208, -336, 180, -32]), "Y: Q = {:?}", y.q);
    ensure!(y.eta == big(4), "Y: eta = {}", y.eta);
    ensure!(
        y.q_at_one() == BigInt::from(20),
        "Y: f(H) = {}",
        y.q_at_one()
    );
    let checker = StructureChecker::new(&spec("Y(n;1,1,1)")).map_err(|e| e.to_string())?;
    ensure!(
        checker.square_free_p() == &big(21),
        "Y: p = {}",
        checker.square_free_p()
    );

    let h = bundle("H(n;1,1,1,1)");
    let w_minus_2 = poly(&[-2, 1]);
    let expected = &(&(&w_minus_2 * &w_minus_2) * &poly(&[-5, 3])) * &poly(&[-9, 5]);
    let expected = expected.scale(&BigInt::from(16));
    ensure!(h.q == expected, "H: Q = {:?}", h.q);
    ensure!(h.eta == big(15), "H: eta = {}", h.eta);
    ensure!(
        h.q_at_one() == BigInt::from(128),
        "H: f(H) = {}",
        h.q_at_one()
    );
    let checker = StructureChecker::new(&spec("H(n;1,1,1,1)")).map_err(|e| e.to_string())?;
    ensure!(
        checker.square_free_p() == &big(7),
        "H: p = {}",
        checker.square_free_p()
    );

    // 2 T_3(5/2 - w) - 2 with y = 5 - 2w.
    let torus = &doubled_chebyshev_half(3).compose(&poly(&[5, -2])) - &poly(&[2]);
    ensure!(
        bundle("T(n,3)").q == torus,
        "T(n,3): Q = {:?}",
        bundle("T(n,3)").q
    );
    ensure!(
        bundle("X(n;K(3),[1])").q == torus,
        "X(K3, C(1)) differs from the torus"
    );

    let rows = cli_rows(Command::Poly, "Y(n;1,1,1)", NSelection::None)?;
    let q: Vec<&str> = rows[0]["q"]
        .as_array()
        .ok_or("q missing")?
        .iter()
        .map(text)
        .collect();
    ensure!(q == ["208", "-336", "180", "-32"], "poly JSON q = {q:?}");
    ensure!(
        text(&rows[0]["eta"]) == "4" && rows[0]["s"] == 3,
        "poly JSON eta/s"
    );
    ensure!(
        text(&rows[0]["q1"]) == "20" && text(&rows[0]["qm1"]) == "756",
        "poly JSON q1/qm1"
    );
    Ok(())
}

fn criterion_2() -> Outcome {
    for family in FAMILIES {
        let s = spec(family);
        let b = char_poly(&s).map_err(|e| e.to_string())?;
        for n in s.min_n()..=12 {
            let exact = b.forest_count(n).map_err(|e| e.to_string())?.f_n;
            let oracle = forest_count_oracle(&s, n).map_err(|e| e.to_string())?.f_n;
            ensure!(exact == oracle, "{family} n={n}: {exact} vs {oracle}");
        }
        // The CLI documents agree row for row apart from the method tag.
        let mut count = cli_rows(Command::Count, family, NSelection::Range(1, 12))?;
        let oracle = cli_rows(Command::Oracle, family, NSelection::Range(1, 12))?;
        for row in &mut count {
            if row.get("method").is_some() {
                row["method"] = Value::from("oracle");
            }
        }
        ensure!(
            count == oracle,
            "{family}: count and oracle documents differ"
        );
    }
    Ok(())
}

/// `prod (1 + mu)` over Laplacian eigenvalues `mu`.
fn forests_from_spectrum(laplacian_eigenvalues: &[f64]) -> u64 {
    laplacian_eigenvalues
        .iter()
        .map(|mu| 1.0 + mu)
        .product::<f64>()
        .round() as u64
}

fn cycle_spectrum(n: u32) -> Vec<f64> {
    (0..n)
        .map(|j| 2.0 - 2.0 * (2.0 * std::f64::consts::PI * f64::from(j) / f64::from(n)).cos())
        .collect()
}

fn criterion_3() -> Outcome {
    // Petersen adjacency spectrum 3, 1 (x5), -2 (x4); Laplacian is 3 - lambda.
    let petersen: Vec<f64> = [3.0]
        .iter()
        .chain([1.0; 5].iter())
        .chain([-2.0; 4].iter())
        .map(|l| 3.0 - l)
        .collect();
    let want = forests_from_spectrum(&petersen);
    ensure!(want == 314_928, "Petersen spectrum product {want}");
    let got = forest_count(&spec("GP(n,2)"), 5)
        .map_err(|e| e.to_string())?
        .f_n;
    ensure!(got == big(want), "f(GP(5,2)) = {got}");
    let rows = cli_rows(Command::Count, "GP(n,2)", NSelection::Single(5))?;
    ensure!(
        text(&rows[0]["f"]) == "314928" && text(&rows[0]["f_base"]) == "3",
        "count JSON {:?}",
        rows[0]
    );

    for (n, want) in [(3u32, 16u64), (4, 45)] {
        let spectral = forests_from_spectrum(&cycle_spectrum(n));
        ensure!(spectral == want, "C_{n} spectrum product {spectral}");
        let got = forest_count(&spec("C(n;1)"), n.into())
            .map_err(|e| e.to_string())?
            .f_n;
        ensure!(got == big(want), "f(C_{n}) = {got}");
    }

    for m in 2..=7u32 {
        // K_m Laplacian: 0 once, m with multiplicity m - 1.
        let spectrum: Vec<f64> = std::iter::once(0.0)
            .chain(std::iter::repeat(f64::from(m)).take(m as usize - 1))
            .collect();
        let spectral = forests_from_spectrum(&spectrum);
        let knill = u64::from(m + 1).pow(m - 1);
        ensure!(spectral == knill, "K_{m} spectrum product {spectral}");
        let got = forest_count(&spec(&format!("X(n;K({m}),[])")), 1)
            .map_err(|e| e.to_string())?
            .f_n;
        ensure!(got == big(knill), "f(K_{m}) = {got}");
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for family in FAMILIES {
        let s = spec(family);
        for n in s.min_n()..=30 {
            let r =
                verify_arithmetic_structure(&s, n).map_err(|e| format!("{family} n={n}: {e}"))?;
            ensure!(r.verified, "{family} n={n} not verified");
        }
        let out = run(&request(Command::Verify, family, NSelection::Range(1, 30)));
        ensure!(
            out.status == 0,
            "verify {family} exited {}: {:?}",
            out.status,
            out.stderr
        );
        let doc: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
        for row in doc["rows"].as_array().ok_or("rows missing")? {
            ensure!(
                row.get("skipped").is_some() || row["verified"] == true,
                "{family}: {row}"
            );
        }
    }
    let gp = verify_arithmetic_structure(&spec("GP(n,2)"), 5).map_err(|e| e.to_string())?;
    ensure!(gp.a_n == big(324), "GP(5,2): a = {}", gp.a_n);
    let rows = cli_rows(Command::Verify, "C(n;1)", NSelection::Range(3, 10))?;
    let row4 = rows.iter().find(|r| r["n"] == 4).ok_or("no n=4 row")?;
    ensure!(
        text(&row4["p"]) == "5" && text(&row4["a"]) == "3",
        "C(n;1) n=4: {row4}"
    );
    ensure!(
        rows.iter().all(|r| r["verified"] == true),
        "C(n;1) rows not all verified"
    );
    Ok(())
}

fn criterion_5() -> Outcome {
    let precision = Precision::default();
    let both = |family: &str| -> Result<(f64, f64), String> {
        let b = bundle(family);
        let r = mahler_via_roots(&b, precision)
            .map_err(|e| e.to_string())?
            .value;
        let q = mahler_via_quadrature(&b, precision)
            .map_err(|e| e.to_string())?
            .value;
        Ok((r, q))
    };
    let extra = [
        "X(n;K(4),[1,2])",
        "SW(n;[1],[1,2],[3])",
        "C(n;1,3)",
        "GP(n,3)",
    ];
    for family in FAMILIES.iter().chain(extra.iter()) {
        let (r, q) = both(family)?;
        ensure!(
            (r - q).abs() <= 1e-8,
            "{family}: roots {r} vs quadrature {q}"
        );
    }
    let s3 = 3f64.sqrt();
    let y_closed = 0.5 * (7.0 + 4.0 * s3) * (13.0 + 105f64.sqrt());
    let (r, q) = both("Y(n;1,1,1)")?;
    ensure!(
        (r - y_closed).abs() <= 1e-6 && (q - y_closed).abs() <= 1e-6,
        "Y: {r}, {q} vs {y_closed}"
    );
    let h_closed = 9.0 * (7.0 + 4.0 * s3) * (9.0 + 2.0 * 14f64.sqrt());
    let (r, q) = both("H(n;1,1,1,1)")?;
    ensure!(
        ((r - h_closed) / h_closed).abs() <= 1e-3 && ((q - h_closed) / h_closed).abs() <= 1e-3,
        "H: {r}, {q} vs {h_closed}"
    );
    for family in ["C(n;1)", "GP(n,2)"] {
        let report = convergence_report(&spec(family), 200).map_err(|e| e.to_string())?;
        let last = report.rows.last().ok_or("no rows")?;
        ensure!(
            last.n == 200 && (last.ratio - 1.0).abs() <= 1e-3,
            "{family}: ratio {}",
            last.ratio
        );
    }
    Ok(())
}

fn jumps() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::btree_set(1u32..6, 0..3).prop_map(|s| s.into_iter().collect())
}

fn connected_edges(order: usize) -> impl Strategy<Value = Vec<(usize, usize, u32)>> {
    let tree = proptest::collection::vec((any::<prop::sample::Index>(), 1u32..4), order - 1);
    let extra = proptest::collection::vec((0..order, 0..order, 1u32..4), 0..3);
    (tree, extra).prop_map(move |(tree, extra)| {
        let mut all: Vec<(usize, usize, u32)> = (1..order)
            .zip(tree)
            .map(|(v, (p, m))| (p.index(v), v, m))
            .collect();
        all.extend(
            extra
                .into_iter()
                .filter(|(a, b, _)| a != b)
                .map(|(a, b, m)| (a.min(b), a.max(b), m)),
        );
        all.sort();
        let mut merged: Vec<(usize, usize, u32)> = Vec::new();
        for (a, b, m) in all {
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (a, b) => last.2 += m,
                _ => merged.push((a, b, m)),
            }
        }
        merged
    })
}

fn base() -> impl Strategy<Value = BaseDescriptor> {
    prop_oneof![
        (2usize..6).prop_map(BaseDescriptor::Complete),
        (2usize..6).prop_map(BaseDescriptor::Path),
        (3usize..7).prop_map(BaseDescriptor::Cycle),
        (2usize..5)
            .prop_flat_map(connected_edges)
            .prop_map(BaseDescriptor::Edges),
    ]
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        jumps().prop_map(|jumps| Family::Circulant { jumps }),
        (1u32..6).prop_map(|k| Family::Petersen { k }),
        (1u32..6, 1u32..6).prop_map(|(k, l)| Family::i_graph(k, l)),
        proptest::collection::vec(jumps(), 2..5).prop_map(|fibers| Family::Sandwich { fibers }),
        [jumps(), jumps(), jumps()].prop_map(|fibers| Family::Y { fibers }),
        [jumps(), jumps(), jumps(), jumps()].prop_map(|fibers| Family::H { fibers }),
        (3usize..8).prop_map(|m| Family::Torus { m }),
        (base(), jumps()).prop_map(|(base, jumps)| Family::Product { base, jumps }),
        (2usize..5)
            .prop_flat_map(|order| (
                connected_edges(order),
                proptest::collection::vec(jumps(), order)
            ))
            .prop_map(|(edges, fibers)| Family::Foliation { edges, fibers }),
    ]
}

fn descriptor() -> impl Strategy<Value = FamilyDescriptor> {
    (family(), proptest::option::of(1u64..200)).prop_map(|(family, n)| match family {
        f @ Family::Foliation { .. } => FamilyDescriptor::symbolic(f),
        f => match n {
            Some(n) => FamilyDescriptor::with_n(f, n),
            None => FamilyDescriptor::symbolic(f),
        },
    })
}

fn criterion_6() -> Outcome {
    for a in 0..=5 {
        for b in 0..=5 {
            ensure!(
                chebyshev_t(a).compose(&chebyshev_t(b)) == chebyshev_t(a * b),
                "T_{a} o T_{b}"
            );
        }
    }
    let mut runner = TestRunner::deterministic();
    let point = (-50i64..50, 1i64..40)
        .prop_filter("nonzero", |(p, _)| *p != 0)
        .prop_map(|(p, q)| BigRational::new(p.into(), q.into()));
    for family in FAMILIES {
        let s = spec(family);
        let b = char_poly(&s).map_err(|e| e.to_string())?;
        ensure!(b.f_z.is_palindromic(), "{family}: F not palindromic");
        for _ in 0..20 {
            let z = point
                .new_tree(&mut runner)
                .map_err(|e| e.to_string())?
                .current();
            ensure!(
                transform_identity_holds(&b, &z),
                "{family}: identity fails at {z}"
            );
        }
        let lead = b.q.leading().ok_or("Q is zero")?.magnitude().clone();
        ensure!(
            lead == (big(1) << b.shift) * &b.eta,
            "{family}: |lc(Q)| = {lead}"
        );
        ensure!(
            b.q_at_one() == BigInt::from(base_forest_count(&s)),
            "{family}: Q(1) != f(H)"
        );
        ensure!(
            b.q_at_minus_one() == BigInt::from(q_at_minus_one(&s)),
            "{family}: Q(-1) differs"
        );
    }
    for _ in 0..500 {
        let desc = descriptor()
            .new_tree(&mut runner)
            .map_err(|e| e.to_string())?
            .current();
        let printed = format_family(&desc);
        let back = parse_family(&printed).map_err(|e| format!("{printed}: {e}"))?;
        ensure!(back == desc, "round trip changed {printed}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 6] = [
        ("reference polynomials and constants", criterion_1),
        ("resultant count equals oracle", criterion_2),
        ("known spectra", criterion_3),
        ("square-root structure of f(n)", criterion_4),
        ("growth constant", criterion_5),
        ("property suites", criterion_6),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = std::time::Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS criterion {}: {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
