//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kla2_core::alcove::{count_shaded, interval_svg, verify_hexagon_geometry};
use kla2_core::coxeter::{lower_interval, theta_elt};
use kla2_core::klformulas::{
    count_beyond, prop_wall_b_expected, verify_counting, verify_hexagon_step, verify_lemma_notperverse,
    verify_monotonicity, verify_mu_support_wall, verify_prop_out, verify_prop_wall_b, verify_prop_wall_b_against,
    verify_support_shape_wall, verify_thm1_wall,
};
use kla2_core::leaves::{deodhar_suite, hom_dims_suite, tree_classify};
use kla2_core::projcoeff::{beyond_c, beyond_d, beyond_rec_check, rat, wall_c, wall_d, wall_rec_check};
use kla2_core::report::{Report, VerifyReport};
use kla2_core::suites::{verify_beyond_closed, verify_bruhat, verify_classification};
use kla2_core::Result;

struct Outcome {
    pass: bool,
    summary: String,
}

fn criterion(n: usize, title: &str, budget: Option<Duration>, run: impl FnOnce() -> Result<VerifyReport>) -> bool {
    let start = Instant::now();
    let result = run();
    let elapsed = start.elapsed();
    let outcome = match result {
        Ok(report) => {
            let mut pass = report.pass;
            let mut summary = format!(
                "{} checks, {} mismatches",
                report.details.checks,
                report.mismatches().len()
            );
            if let Some(budget) = budget {
                if elapsed > budget {
                    pass = false;
                    summary.push_str(&format!(", over the {budget:?} budget"));
                }
            }
            for m in report.mismatches().iter().take(5) {
                summary.push_str(&format!("\n    {}: expected {}, got {}", m.item, m.expected, m.actual));
            }
            Outcome { pass, summary }
        }
        Err(e) => Outcome {
            pass: false,
            summary: format!("error: {e}"),
        },
    };
    let status = if outcome.pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {n:>2}: {status}  {title} ({}; {:.2?})",
        outcome.summary, elapsed
    );
    outcome.pass
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut results = Vec::new();

    results.push(criterion(1, "wall closed forms, 1 <= n <= 14", Some(secs(10)), || {
        let mut r = Report::new("c1");
        for n in 1..=14 {
            r.absorb(&verify_thm1_wall(n)?);
        }
        Ok(r.finish())
    }));

    results.push(criterion(
        2,
        "beyond-wall closed forms, all flags, length <= 13",
        Some(secs(60)),
        || Ok(verify_beyond_closed(13)),
    ));

    results.push(criterion(
        3,
        "interval counts, wall n <= 14 and theta m+n <= 5",
        Some(secs(30)),
        || Ok(verify_counting(14, 5)),
    ));

    results.push(criterion(
        4,
        "B_n decomposition, 5 <= n <= 12, z term exactly at even n",
        None,
        || {
            let mut r = Report::new("c4");
            for n in 5..=12 {
                r.absorb(&verify_prop_wall_b(n)?);
                let flipped = verify_prop_wall_b_against(n, &prop_wall_b_expected(n, n % 2 == 1)?);
                r.check(
                    format!("n={n}: opposite z choice fails"),
                    !flipped.pass,
                    "mismatch",
                    "match",
                );
            }
            Ok(r.finish())
        },
    ));

    results.push(criterion(5, "products with theta(m,n), m+n <= 5", None, || {
        let mut r = Report::new("c5");
        for total in 0..=5 {
            for m in 0..=total {
                r.absorb(&verify_prop_out(m, total - m));
            }
        }
        Ok(r.finish())
    }));

    results.push(criterion(
        6,
        "identity up to perverse elements, 5 <= n <= 10",
        None,
        || {
            let mut r = Report::new("c6");
            for n in 5..=10 {
                r.absorb(&verify_lemma_notperverse(n)?);
            }
            Ok(r.finish())
        },
    ));

    results.push(criterion(
        7,
        "projector coefficients: closed = recursive, spot values",
        Some(secs(2)),
        || {
            let mut r = Report::new("c7");
            r.absorb(&wall_rec_check(10_000)?);
            r.absorb(&beyond_rec_check(1000, 1000)?);
            r.expect_eq("c_5", &rat(-1, 2), &wall_c(5)?);
            r.expect_eq("d_7", &rat(1, 2), &wall_d(7)?);
            r.expect_eq("beyond c_2", &rat(1, 2), &beyond_c(2)?);
            r.expect_eq("d_{2,1}", &rat(-3, 8), &beyond_d(2, 1)?);
            Ok(r.finish())
        },
    ));

    results.push(criterion(8, "01-sequence endings, n <= 16", Some(secs(10)), || {
        let mut r = Report::new("c8");
        for n in 4..=16 {
            r.absorb(&tree_classify(n)?);
        }
        Ok(r.finish())
    }));

    results.push(criterion(
        9,
        "leaf characters: all words <= 6, 200 words <= 10",
        None,
        || deodhar_suite(6, 200, 10),
    ));

    results.push(criterion(
        10,
        "hom-rank dimensions, length <= 15, wall 5 <= n <= 10",
        None,
        || hom_dims_suite(15, 10),
    ));

    results.push(criterion(
        11,
        "classification of all elements of length <= 12",
        None,
        || verify_classification(12),
    ));

    results.push(criterion(
        12,
        "monotonicity for all x <= y <= w, l(w) <= 10",
        None,
        || Ok(verify_monotonicity(10)),
    ));

    results.push(criterion(
        13,
        "mu-support and support shape on the wall, n <= 12",
        None,
        || {
            let mut r = Report::new("c13");
            for n in 1..=12 {
                r.absorb(&verify_mu_support_wall(n));
                r.absorb(&verify_support_shape_wall(n));
            }
            Ok(r.finish())
        },
    ));

    results.push(criterion(
        14,
        "SVG shading 18 and 36/108/216, hexagon steps",
        None,
        || {
            let mut r = Report::new("c14");
            r.expect_eq("theta(1,0)", &18, &count_shaded(&interval_svg(theta_elt(1, 0), &[])));
            let nested = [theta_elt(2, 0), theta_elt(3, 1), theta_elt(4, 2)];
            for (i, (m, n)) in [(2, 0), (3, 1), (4, 2)].into_iter().enumerate() {
                let svg = interval_svg(nested[i], &nested[..i]);
                let count = count_shaded(&svg);
                r.expect_eq(
                    format!("<= theta({m},{n}) shaded"),
                    &(count_beyond(m, n) as usize),
                    &count,
                );
                r.expect_eq(
                    format!("<= theta({m},{n}) enumerated"),
                    &lower_interval(nested[i]).len(),
                    &count,
                );
                let levels = (0..=i).filter(|k| svg.contains(&format!("data-level=\"{k}\""))).count();
                r.expect_eq(format!("<= theta({m},{n}) gray levels"), &(i + 1), &levels);
            }
            for (m, n) in [(2, 0), (3, 1)] {
                r.absorb(&verify_hexagon_step(m, n));
                r.absorb(&verify_hexagon_geometry(m, n));
            }
            Ok(r.finish())
        },
    ));

    results.push(criterion(
        15,
        "Bruhat order: lifting vs subwords, length <= 12",
        None,
        || Ok(verify_bruhat(12)),
    ));

    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
