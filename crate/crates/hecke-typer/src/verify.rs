//! Verification suites: every closed-form criterion re-derived by brute
//! force. These back the `verify` CLI subcommand and the acceptance tests.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{
    classify_one_param_irreducible, classify_two_param_b, combine_factors, complexity_upper_bound,
    kunneth_convolve, BSecondParameter, DimensionSequence, Status,
};
use crate::coxeter::gf2::{build_form, FormKind};
use crate::coxeter::{generate_group, poincare_bruteforce, realize, GroupTable};
use crate::poly::{degree_count_multiplicity, phi_multiplicity};
use crate::weyl::{IrreducibleType, WeylSpec};

pub const SUITE_NAMES: [&str; 6] = [
    "poincare-oracle",
    "multiplicity-oracle",
    "sylow-oracle",
    "morita-consistency",
    "kunneth-bound",
    "witt-appendix",
];

/// One verified property.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(
        name: impl Into<String>,
        actual: T,
        expected: T,
    ) -> Self {
        let name = name.into();
        if actual == expected {
            CheckResult::pass(name, format!("{actual:?}"))
        } else {
            CheckResult::fail(name, format!("expected {expected:?}, got {actual:?}"))
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Size limits for the suites; the defaults match the documented scope.
#[derive(Debug, Clone)]
pub struct SuiteLimits {
    /// Skip enumeration of groups larger than this.
    pub max_order: u64,
    /// Hard BFS cap (normally above `max_order`).
    pub element_cap: u64,
    pub max_rank: usize,
    pub max_e: u64,
    pub max_n: u64,
    pub samples: usize,
    pub seed: u64,
    pub include_e7: bool,
}

impl Default for SuiteLimits {
    fn default() -> Self {
        SuiteLimits {
            max_order: 6_000_000,
            element_cap: 6_000_000,
            max_rank: 12,
            max_e: 40,
            max_n: 40,
            samples: 500,
            seed: 0x5eed,
            include_e7: false,
        }
    }
}

/// Runs a named suite; `None` for an unknown name. `progress` receives
/// one short line per long-running step.
pub fn run_suite(
    name: &str,
    limits: &SuiteLimits,
    progress: &mut dyn FnMut(&str),
) -> Option<SuiteReport> {
    let checks = match name {
        "poincare-oracle" => poincare_oracle(limits, progress),
        "multiplicity-oracle" => multiplicity_oracle(limits),
        "sylow-oracle" => sylow_oracle(limits, progress),
        "morita-consistency" => morita_consistency(limits),
        "kunneth-bound" => kunneth_bound(limits),
        "witt-appendix" => witt_appendix(),
        _ => return None,
    };
    Some(SuiteReport {
        suite: name.to_string(),
        checks,
    })
}

/// The irreducible types small enough to enumerate outright. E7 is the one
/// borderline case (2,903,040 elements, minutes of work) and stays behind
/// the `include_e7` flag.
pub fn enumerable_types(include_e7: bool) -> Vec<IrreducibleType> {
    let mut types: Vec<IrreducibleType> = Vec::new();
    types.extend((1..=9).map(|rank| IrreducibleType::A { rank }));
    types.extend((2..=7).map(|rank| IrreducibleType::B { rank }));
    types.extend((2..=8).map(|rank| IrreducibleType::D { rank }));
    types.push(IrreducibleType::G2);
    types.push(IrreducibleType::F4);
    types.push(IrreducibleType::E { rank: 6 });
    if include_e7 {
        types.push(IrreducibleType::E { rank: 7 });
    }
    types.extend((3..=60).map(|m| IrreducibleType::I2 { m }));
    types
}

fn enumerate(t: IrreducibleType, limits: &SuiteLimits) -> Option<GroupTable> {
    if t.order() > limits.max_order.into() {
        return None;
    }
    Some(generate_group(&realize(t), limits.element_cap.max(limits.max_order)).expect("under cap"))
}

/// Degree-product Poincaré polynomial == BFS length generating function,
/// coefficient by coefficient, plus the order check.
fn poincare_oracle(limits: &SuiteLimits, progress: &mut dyn FnMut(&str)) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for t in enumerable_types(limits.include_e7) {
        let Some(table) = enumerate(t, limits) else {
            checks.push(CheckResult::pass(
                format!("poincare {t}"),
                format!("skipped (order {} above limit)", t.order()),
            ));
            continue;
        };
        progress(&format!("enumerated {t} ({} elements)", table.order()));
        let formula = WeylSpec::new(vec![t]).poincare_polynomial();
        let brute = poincare_bruteforce(&table);
        let order_ok = Some(table.order()) == t.order().to_u64();
        if formula == brute && order_ok {
            checks.push(CheckResult::pass(
                format!("poincare {t}"),
                format!(
                    "order {}, degree {}",
                    table.order(),
                    brute.degree().unwrap_or(0)
                ),
            ));
        } else {
            checks.push(CheckResult::fail(
                format!("poincare {t}"),
                format!("formula {formula} vs BFS {brute}"),
            ));
        }
    }
    checks
}

/// Degree-divisibility count == repeated exact division by `Phi_e`.
fn multiplicity_oracle(limits: &SuiteLimits) -> Vec<CheckResult> {
    let mut types: Vec<IrreducibleType> = Vec::new();
    types.extend((1..=limits.max_rank).map(|rank| IrreducibleType::A { rank }));
    types.extend((2..=limits.max_rank).map(|rank| IrreducibleType::B { rank }));
    types.extend((2..=limits.max_rank).map(|rank| IrreducibleType::D { rank }));
    types.extend([
        IrreducibleType::E { rank: 6 },
        IrreducibleType::E { rank: 7 },
        IrreducibleType::E { rank: 8 },
        IrreducibleType::F4,
        IrreducibleType::G2,
    ]);
    types.extend((3..=30).map(|m| IrreducibleType::I2 { m }));

    let mut checks = Vec::new();
    for t in types {
        let degrees = t.degrees();
        let p = WeylSpec::new(vec![t]).poincare_polynomial();
        let mut bad = None;
        for e in 2..=limits.max_e {
            let counted = degree_count_multiplicity(degrees.as_slice(), e);
            let divided = phi_multiplicity(&p, e as usize);
            if counted != divided {
                bad = Some(format!("e = {e}: count {counted}, division {divided}"));
                break;
            }
        }
        checks.push(match bad {
            None => CheckResult::pass(
                format!("multiplicity {t}"),
                format!("e = 2..={} agree", limits.max_e),
            ),
            Some(detail) => CheckResult::fail(format!("multiplicity {t}"), detail),
        });
    }
    checks
}

/// Element-order Sylow cyclicity == `l^2` does not divide `|W|`, for every
/// enumerable Weyl type and prime `l <= 13`, plus the concrete structure of
/// the F4 and G2 exceptions.
fn sylow_oracle(limits: &SuiteLimits, progress: &mut dyn FnMut(&str)) -> Vec<CheckResult> {
    const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    let mut checks = Vec::new();
    let weyl_types: Vec<IrreducibleType> = enumerable_types(limits.include_e7)
        .into_iter()
        .filter(|t| !matches!(t, IrreducibleType::I2 { .. }))
        .collect();
    for t in weyl_types {
        let Some(table) = enumerate(t, limits) else {
            checks.push(CheckResult::pass(
                format!("sylow {t}"),
                format!("skipped (order {} above limit)", t.order()),
            ));
            continue;
        };
        progress(&format!("element-order census for {t}"));
        let mut bad = None;
        for l in PRIMES {
            let report = table.sylow_is_cyclic(l);
            let l_squared_free = table.order() % (l * l) != 0;
            if report.cyclic != l_squared_free {
                bad = Some(format!(
                    "l = {l}: cyclic-by-elements {} vs l^2-free {} (max element l-part {})",
                    report.cyclic, l_squared_free, report.max_element_l_part
                ));
                break;
            }
        }
        checks.push(match bad {
            None => CheckResult::pass(format!("sylow {t}"), "primes 2..13 agree"),
            Some(detail) => CheckResult::fail(format!("sylow {t}"), detail),
        });
    }

    // appendix structure: W(F4) at l = 3 has 9 | 1152 but no element of
    // order 9 (Sylow C3 x C3); W(G2) is dihedral of order 12, Sylow-2 not cyclic
    let f4 = generate_group(&realize(IrreducibleType::F4), limits.element_cap).expect("F4 fits");
    let r3 = f4.sylow_is_cyclic(3);
    checks.push(CheckResult::expect_eq(
        "F4 l=3 structure (l-part, max element l-part, cyclic)",
        (r3.group_l_part, r3.max_element_l_part, r3.cyclic),
        (9, 3, false),
    ));
    let g2 = generate_group(&realize(IrreducibleType::G2), limits.element_cap).expect("G2 fits");
    let r2 = g2.sylow_is_cyclic(2);
    checks.push(CheckResult::expect_eq(
        "G2 l=2 (order, cyclic)",
        (g2.order(), r2.cyclic),
        (12, false),
    ));
    checks
}

/// Generic-Q type-B finiteness via the `n < 2e` formula == brute combination
/// over all Morita summands `A_{m-1} (x) A_{n-m-1}`.
fn morita_consistency(limits: &SuiteLimits) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for e in 2..=limits.max_e.min(20) {
        let mut bad = None;
        for n in 2..=limits.max_n {
            let formula_finite = n < 2 * e;
            let (status, _, _) = classify_two_param_b(n, e, BSecondParameter::GenericQ)
                .expect("generic Q classification");
            let mut brute_finite = true;
            for m in 0..=n {
                let mut statuses = Vec::new();
                for part in [m, n - m] {
                    if part >= 2 {
                        // A_{part-1} has rank part - 1 >= 1
                        let t = IrreducibleType::A {
                            rank: (part - 1) as usize,
                        };
                        statuses.push(classify_one_param_irreducible(t, e).0);
                    }
                }
                if combine_factors(&statuses) == Status::Infinite {
                    brute_finite = false;
                    break;
                }
            }
            if brute_finite != formula_finite || status.is_finite_type() != formula_finite {
                bad = Some(format!(
                    "n = {n}: formula {formula_finite}, summand brute force {brute_finite}, classifier {status}"
                ));
                break;
            }
        }
        checks.push(match bad {
            None => CheckResult::pass(
                format!("morita e={e}"),
                format!("n = 2..={} agree", limits.max_n),
            ),
            Some(detail) => CheckResult::fail(format!("morita e={e}"), detail),
        });
    }
    checks
}

/// The displayed Künneth inequality `t+1 <= dim P^t <= C^2 (t+1)` on random
/// bounded sequences, and complexity 2 for products of constant sequences.
fn kunneth_bound(limits: &SuiteLimits) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    let mut checks = Vec::new();
    let mut bad = None;
    for sample in 0..limits.samples {
        let c = rng.gen_range(1..=10u64);
        let a = DimensionSequence::new((0..64).map(|_| rng.gen_range(1..=c)).collect())
            .expect("values >= 1");
        let b = DimensionSequence::new((0..64).map(|_| rng.gen_range(1..=c)).collect())
            .expect("values >= 1");
        let conv = kunneth_convolve(&a, &b);
        for (t, &v) in conv.values().iter().enumerate() {
            let t1 = (t + 1) as u64;
            if v < t1 || v > c * c * t1 {
                bad = Some(format!("sample {sample}: C = {c}, t = {t}, value {v}"));
            }
        }
        if bad.is_some() {
            break;
        }
    }
    checks.push(match bad {
        None => CheckResult::pass(
            "kunneth bounds",
            format!("{} random pairs, C <= 10, prefix 64", limits.samples),
        ),
        Some(detail) => CheckResult::fail("kunneth bounds", detail),
    });

    let mut complexity_ok = true;
    let mut detail = String::from("complexity(const * const) = 2 for C in 1..=10");
    for c in 1..=10u64 {
        let seq = DimensionSequence::constant(c, 64).expect("values >= 1");
        let got = complexity_upper_bound(&kunneth_convolve(&seq, &seq));
        if got != 2 {
            complexity_ok = false;
            detail = format!("C = {c}: complexity estimate {got}, expected 2");
            break;
        }
    }
    checks.push(CheckResult {
        name: "kunneth complexity".into(),
        passed: complexity_ok,
        detail,
    });
    checks
}

/// The E8 mod-2 quadratic form numbers, reproduced exhaustively.
fn witt_appendix() -> Vec<CheckResult> {
    let e8 = build_form(FormKind::E8Mod2);
    let q_minus = build_form(FormKind::QMinus4);
    vec![
        CheckResult::expect_eq("zero_count(E8 mod 2)", e8.zero_count(), 136),
        CheckResult::expect_eq("witt_index(E8 mod 2)", e8.witt_index(), 4),
        CheckResult::expect_eq("witt_index(q')", q_minus.witt_index(), 1),
        CheckResult::expect_eq(
            "witt_index(q' + q')",
            q_minus.direct_sum(&q_minus).witt_index(),
            4,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_suites_pass() {
        let limits = SuiteLimits {
            max_order: 2000,
            element_cap: 2000,
            max_rank: 6,
            max_e: 12,
            max_n: 12,
            samples: 20,
            ..SuiteLimits::default()
        };
        for suite in [
            "multiplicity-oracle",
            "morita-consistency",
            "kunneth-bound",
            "witt-appendix",
        ] {
            let report = run_suite(suite, &limits, &mut |_| {}).unwrap();
            assert!(report.passed(), "{suite}: {:?}", report.checks);
        }
    }

    #[test]
    fn small_enumeration_suites_pass() {
        let limits = SuiteLimits {
            max_order: 2000,
            element_cap: 2000,
            ..SuiteLimits::default()
        };
        for suite in ["poincare-oracle", "sylow-oracle"] {
            let report = run_suite(suite, &limits, &mut |_| {}).unwrap();
            assert!(report.passed(), "{suite}: {:?}", report.checks);
        }
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("no-such-suite", &SuiteLimits::default(), &mut |_| {}).is_none());
    }
}
