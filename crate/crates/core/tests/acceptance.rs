//! One line per acceptance criterion, exact equality throughout.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use evsc_core::kernel::rational::{parse_rational, rat_int};
use evsc_core::kernel::{GradedSeries, Monomial, Poly};
use evsc_core::{InsertionIndex, Rational, Session, SpaceSpec};
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap_or_else(|| panic!("bad literal {s}"))
}

fn session(space: &str) -> Result<Session, String> {
    Ok(Session::new(
        SpaceSpec::parse(space).map_err(|e| e.to_string())?,
    ))
}

/// `(d, monomial, value)` terms; every `q^d` coefficient up to `order` must
/// equal exactly the listed terms.
fn series_is(
    label: &str,
    s: &GradedSeries,
    log: &str,
    terms: &[(usize, Monomial, &str)],
    order: usize,
) -> Check {
    if *s.log_coeff() != q(log) {
        return Err(format!(
            "{label}: log coefficient {} != {log}",
            s.log_coeff()
        ));
    }
    for d in 0..=order {
        let mut want: Poly<Rational> = Poly::zero();
        for (_, m, v) in terms.iter().filter(|t| t.0 == d) {
            want.add_term(*m, &q(v));
        }
        if *s.coeff(d) != want {
            return Err(format!(
                "{label}: q^{d} coefficient {:?} != {want:?}",
                s.coeff(d)
            ));
        }
    }
    Ok(())
}

fn x(p: usize, e: u32) -> Monomial {
    Monomial::var_pow(p, e)
}

const ONE: Monomial = Monomial::ONE;

fn quartic_surface() -> Check {
    let s = session("1,1,1,2|4")?;
    let maps = s.mirror_maps(3).map_err(|e| e.to_string())?;
    series_is(
        "t^0",
        &maps.t[0],
        "0",
        &[
            (0, x(0, 1), "1"),
            (1, ONE, "12"),
            (2, x(2, 1), "696"),
            (3, x(2, 2), "85344"),
        ],
        3,
    )?;
    series_is(
        "t^1",
        &maps.t[1],
        "1",
        &[
            (1, x(2, 1), "52"),
            (2, x(2, 2), "4752"),
            (3, x(2, 3), "2193344/3"),
        ],
        3,
    )?;
    series_is(
        "t^2",
        &maps.t[2],
        "0",
        &[
            (0, x(2, 1), "1"),
            (1, x(2, 2), "52"),
            (2, x(2, 3), "22960/3"),
            (3, x(2, 4), "1471808"),
        ],
        3,
    )?;
    series_is(
        "x^0",
        &maps.x[0],
        "0",
        &[
            (0, x(0, 1), "1"),
            (1, ONE, "-12"),
            (2, x(2, 1), "-72"),
            (3, x(2, 2), "-864"),
        ],
        3,
    )?;
    series_is(
        "x^1",
        &maps.x[1],
        "1",
        &[
            (1, x(2, 1), "-52"),
            (2, x(2, 2), "656"),
            (3, x(2, 3), "-34720/3"),
        ],
        3,
    )?;
    series_is(
        "x^2",
        &maps.x[2],
        "0",
        &[
            (0, x(2, 1), "1"),
            (1, x(2, 2), "-52"),
            (2, x(2, 3), "1376/3"),
            (3, x(2, 4), "-167648/3"),
        ],
        3,
    )?;
    let b = s.f1b_series(3).map_err(|e| e.to_string())?;
    series_is(
        "F1B",
        &b,
        "-1/12",
        &[
            (1, x(2, 1), "-13/3"),
            (2, x(2, 2), "-394"),
            (3, x(2, 3), "-543920/9"),
        ],
        3,
    )?;
    let a = s.f1a_series(3).map_err(|e| e.to_string())?;
    series_is(
        "F1A",
        &a,
        "-1/12",
        &[(2, x(2, 2), "2"), (3, x(2, 3), "224/3")],
        3,
    )?;
    for (d, want) in [(1, "0"), (2, "4"), (3, "448")] {
        let got = s
            .genus1_gw(&InsertionIndex::from_pairs(&[(2, d)]), d)
            .map_err(|e| e.to_string())?;
        if got != q(want) {
            return Err(format!(
                "genus-one invariant with {d} point classes: {got} != {want}"
            ));
        }
    }
    Ok(())
}

/// `c_1 q + c_2 q^2 + ...` with constant coefficients.
fn constants<'a>(v: &[&'a str]) -> Vec<(usize, Monomial, &'a str)> {
    v.iter()
        .enumerate()
        .map(|(i, c)| (i + 1, ONE, *c))
        .collect()
}

/// Mirror map, inverse, and both potentials of a Calabi-Yau threefold, each
/// given as `[log, q^1, q^2, ...]`.
fn threefold(space: &str, t: &[&str], xs: &[&str], f1b: &[&str], f1a: &[&str]) -> Check {
    let order = t.len();
    let s = session(space)?;
    let maps = s.mirror_maps(order).map_err(|e| e.to_string())?;
    let b = s.f1b_series(order).map_err(|e| e.to_string())?;
    let a = s.f1a_series(order).map_err(|e| e.to_string())?;
    series_is(&format!("{space} t"), &maps.t[1], "1", &constants(t), order)?;
    series_is(
        &format!("{space} x"),
        &maps.x[1],
        "1",
        &constants(xs),
        order,
    )?;
    series_is(
        &format!("{space} F1B"),
        &b,
        f1b[0],
        &constants(&f1b[1..]),
        order,
    )?;
    series_is(
        &format!("{space} F1A"),
        &a,
        f1a[0],
        &constants(&f1a[1..]),
        order,
    )
}

fn calabi_yau_series() -> Check {
    threefold(
        "1,1,1,1,2|6",
        &["2772", "9545850", "53054643120"],
        &["-2772", "-1861866", "-5621359992"],
        &["-7/4", "-4194", "-14373450", "-80082321984"],
        &["-7/4", "657", "1021167/2", "1136816358"],
    )?;
    threefold(
        "1,1,1,1,4|8",
        &["15808", "303422880"],
        &["-15808", "-53530016"],
        &["-11/6", "-79568/3", "-1519889680/3"],
        &["-11/6", "7376/3", "10778784"],
    )?;
    threefold(
        "1,1,1,2,5|10",
        &["179520", "41513527200"],
        &["-179520", "-9286096800"],
        &["-17/12", "-704320/3", "-162228419200/3"],
        &["-17/12", "58640/3", "3677018600/3"],
    )
}

fn counts_are(space: &str, n: &[&str], m: &[&str]) -> Check {
    let s = session(space)?;
    let c = s.curve_counts(n.len() as u32).map_err(|e| e.to_string())?;
    for (i, want) in n.iter().enumerate() {
        if c.n[i] != q(want) {
            return Err(format!("{space}: n_{} = {} != {want}", i + 1, c.n[i]));
        }
    }
    for (i, want) in m.iter().enumerate() {
        if c.m[i] != q(want) {
            return Err(format!("{space}: m_{} = {} != {want}", i + 1, c.m[i]));
        }
    }
    table_matches(space, n.len() as u32)
}

fn calabi_yau_counts() -> Check {
    counts_are(
        "1,1,1,1,2|6",
        &["7884", "6028452", "11900417220"],
        &["0", "7884", "145114704"],
    )?;
    counts_are(
        "1,1,1,1,4|8",
        &["29504", "128834912", "1423720546880"],
        &["0", "41312", "21464350592"],
    )?;
    counts_are(
        "1,1,1,2,5|10",
        &["231200", "12215785600", "1700894366474400"],
        &["280", "207680680", "161279120326560"],
    )
}

fn k3_vanishes() -> Check {
    let space = SpaceSpec::parse("1,1,1,1,1,1|2,2,2").map_err(|e| e.to_string())?;
    let mut keys = 0;
    for d in 1..=3 {
        for key in evsc_core::genus1::keys_for(&space, d) {
            let v = evsc_core::genus1::evsc_direct(&space, &key, Default::default())
                .map_err(|e| e.to_string())?;
            if v != rat_int(0) {
                return Err(format!("d={d} {}: {v}", key.ins.key()));
            }
            keys += 1;
        }
    }
    if keys == 0 {
        return Err("no keys".into());
    }
    table_matches("1,1,1,1,1,1|2,2,2", 3)
}

fn cubic_pair() -> Check {
    let s = session("1,1,1,1,1,1,1|2,2,3")?;
    let c = s.curve_counts(3).map_err(|e| e.to_string())?;
    for (label, got, want) in [
        ("n_1", &c.n[0], "720"),
        ("n_2", &c.n[1], "22428"),
        ("m_3", &c.m[2], "64"),
    ] {
        if *got != q(want) {
            return Err(format!("{label} = {got} != {want}"));
        }
    }
    table_matches("1,1,1,1,1,1,1|2,2,3", 3)
}

fn property_suite() -> Check {
    let det = |cases| {
        TestRunner::new_with_rng(
            Config {
                cases,
                failure_persistence: None,
                ..Config::default()
            },
            TestRng::deterministic_rng(RngAlgorithm::ChaCha),
        )
    };
    det(200)
        .run(&random_function(), |rf| {
            residue_oracle_agrees(&rf).map_err(TestCaseError::fail)
        })
        .map_err(|e| format!("random residues: {e}"))?;
    let spaces = fixture_spaces();
    for space in &spaces {
        pipeline_oracle_agrees(space, 2)?;
        det(50)
            .run(&raw_key(space.dim()), |k| {
                off_shell_vanishes(space, &k).map_err(TestCaseError::fail)
            })
            .map_err(|e| format!("off-shell {space}: {e}"))?;
        factorization_holds(space, 2)?;
        leg_order_independent(space, 3)?;
        mirror_round_trip(space, 3)?;
        f1a_linear_coefficient(space)?;
    }
    for space in spaces.iter().filter(|s| s.is_calabi_yau()) {
        cluster_stars_vanish(space, 3)?;
    }
    Ok(())
}

type Criterion = (&'static str, Box<dyn Fn() -> Check>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "(2,2)_5: genus-0, genus-1 and constant columns, d <= 4",
            Box::new(|| table_matches("1,1,1,1,1|2,2", 4)),
        ),
        (
            "P(1,1,1,1,2|2): stored rows, d <= 3",
            Box::new(|| table_matches("1,1,1,1,2|2", 3)),
        ),
        (
            "P(1,1,1,1,2|4): stored rows, d <= 3",
            Box::new(|| table_matches("1,1,1,1,2|4", 3)),
        ),
        (
            "P(1,1,1,2|4): mirror maps, inverses, F1B, F1A, invariants, order 3",
            Box::new(quartic_surface),
        ),
        (
            "Calabi-Yau threefolds: mirror maps, inverses, F1B, F1A",
            Box::new(calabi_yau_series),
        ),
        (
            "Calabi-Yau threefolds: rational and elliptic counts, d <= 3",
            Box::new(calabi_yau_counts),
        ),
        (
            "(2,2,2)_6: elliptic constants vanish, d <= 3",
            Box::new(k3_vanishes),
        ),
        ("(2,2,3)_7: n_1, n_2, m_3", Box::new(cubic_pair)),
        (
            "P(1,1,1,1,2|2,2) and P(1,1,1,1,1,2|2,2): stored rows, d <= 2",
            Box::new(|| {
                table_matches("1,1,1,1,2|2,2", 2)?;
                table_matches("1,1,1,1,1,2|2,2", 2)
            }),
        ),
        ("property suite", Box::new(property_suite)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS  {name}  ({:.1?})", start.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name}  ({:.1?}): {e}", start.elapsed());
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
