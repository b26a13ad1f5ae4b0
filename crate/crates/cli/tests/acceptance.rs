//! Acceptance criteria, one line each. Every criterion runs its suite with
//! the default configuration and requires the listed checks to be present
//! and passing.

use chern_cli::{run_suite, ReportRecord, SuiteConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    suite: &'static str,
    checks: &'static [&'static str],
    /// Extra filter on the case label.
    case_filter: fn(&str) -> bool,
}

fn any(_: &str) -> bool {
    true
}

fn matrix_model_k2(case: &str) -> bool {
    case.contains("k=2")
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "sign calculus (b², t^{n+1}, d², Leibniz, associativity, Φ∘b)",
        suite: "signs",
        checks: &[
            "b_squared_graded",
            "b_squared_ev",
            "t_power_identity",
            "d_squared",
            "leibniz",
            "associativity",
            "phi_boundary_commutator",
        ],
        case_filter: any,
    },
    Criterion {
        id: 2,
        title: "X-extension (d², τ̃∘d, graded trace, product table)",
        suite: "xext",
        checks: &["d_squared", "trace_of_d", "graded_trace", "product_aX_Xb", "product_aX_bX"],
        case_filter: any,
    },
    Criterion {
        id: 3,
        title: "cocycles (Hochschild, cyclic, lifting independence, φ(1,1,1))",
        suite: "cocycles",
        checks: &["hochschild", "cyclic", "lifting_independence", "phi_on_units"],
        case_filter: any,
    },
    Criterion {
        id: 4,
        title: "index (graph idempotency to dim 40, McKean–Singer, degree-zero pairing)",
        suite: "index",
        checks: &["graph_idempotent", "mckean_singer", "pairing_degree_zero"],
        case_filter: any,
    },
    Criterion {
        id: 5,
        title: "index classes (m(K) = |L(K)| to n = 10, class map to n = 8, C_2)",
        suite: "comb",
        checks: &["m_of_k_equals_l", "class_map_injective", "class_map_solvable", "c2_count", "c2_patterns"],
        case_filter: any,
    },
    Criterion {
        id: 6,
        title: "heat expansion (triple agreement, time derivative, commutator)",
        suite: "heat",
        checks: &["comb_vs_recurrence", "left_vs_right", "oracle_vs_recurrence", "time_derivative", "commutator"],
        case_filter: any,
    },
    Criterion {
        id: 7,
        title: "heat chains (b ψ_{n+1} + ψ̃_n = 0, N ψ̃_n = 0)",
        suite: "thm412",
        checks: &["boundary", "cyclic_norm"],
        case_filter: any,
    },
    Criterion {
        id: 8,
        title: "polynomial in st, matrix model (k = 2)",
        suite: "main",
        checks: &["lower_coefficients", "top_coefficient"],
        case_filter: matrix_model_k2,
    },
    Criterion {
        id: 9,
        title: "two-sphere (area 4π, Bott Chern number, closing comparison)",
        suite: "sphere",
        checks: &["area", "bott_chern", "bott_chern_integer", "displayed_exponential"],
        case_filter: any,
    },
    Criterion {
        id: 10,
        title: "Duhamel coefficients vs quadrature (clustered nodes)",
        suite: "duhamel",
        checks: &["quadrature"],
        case_filter: any,
    },
];

fn evaluate(c: &Criterion, recs: &[ReportRecord]) -> Result<usize, String> {
    let mut n = 0;
    for check in c.checks {
        let sel: Vec<&ReportRecord> =
            recs.iter().filter(|r| r.check == *check && (c.case_filter)(&r.case)).collect();
        if sel.is_empty() {
            return Err(format!("no records for `{check}`"));
        }
        if let Some(bad) = sel.iter().find(|r| !r.pass) {
            return Err(format!(
                "{check} [{}] residual {:.3e} > {:.3e}",
                bad.case,
                bad.residual_value(),
                bad.tolerance
            ));
        }
        n += sel.len();
    }
    Ok(n)
}

fn extra_requirements(c: &Criterion, recs: &[ReportRecord]) -> Result<(), String> {
    match c.id {
        1 => {
            for r in recs {
                let n: usize = r
                    .case
                    .split(';')
                    .find_map(|kv| kv.strip_prefix("instances="))
                    .and_then(|v| v.parse().ok())
                    .unwrap_or(0);
                if n < 500 {
                    return Err(format!("{}: only {n} instances", r.check));
                }
            }
            Ok(())
        }
        4 => {
            if !recs.iter().any(|r| r.check == "graph_idempotent" && r.case.contains("p=20;q=20")) {
                return Err("no dimension-40 case".into());
            }
            for t in ["t=0.1", "t=1", "t=10"] {
                if !recs.iter().any(|r| r.check == "mckean_singer" && r.case.ends_with(t)) {
                    return Err(format!("McKean–Singer not checked at {t}"));
                }
            }
            Ok(())
        }
        5 => {
            if !recs.iter().any(|r| r.check == "m_of_k_equals_l" && r.case == "n=10") {
                return Err("m(K) not checked at n = 10".into());
            }
            if !recs.iter().any(|r| r.check == "class_map_solvable" && r.case == "n=8") {
                return Err("class map not checked at n = 8".into());
            }
            Ok(())
        }
        9 => {
            let n = recs.iter().filter(|r| r.check == "displayed_exponential").count();
            if n < 5 {
                return Err(format!("only {n} (s, t) pairs"));
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let mut failures = Vec::new();
    for c in CRITERIA {
        let outcome = run_suite(c.suite, &cfg)
            .map_err(|e| e.to_string())
            .and_then(|recs| {
                let n = evaluate(c, &recs)?;
                extra_requirements(c, &recs)?;
                Ok(n)
            });
        match outcome {
            Ok(n) => println!("criterion {:>2}: PASS  {} ({n} records)", c.id, c.title),
            Err(e) => {
                println!("criterion {:>2}: FAIL  {} ({e})", c.id, c.title);
                failures.push(c.id);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
