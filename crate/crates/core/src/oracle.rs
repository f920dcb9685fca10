//! Brute-force checks of the identities the attack rests on.
//!
//! The 8-bit statements are enumerated exhaustively. The two statements over
//! the reals are sampled with a fixed seed, plus a few hand-picked boundary
//! cases. None of these checks use the closed-form solver in
//! [`crate::attack`], except the final equality assertion of the XOR
//! difference sweep, which takes the solver as a parameter.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::modular::{circular_distance, wrap};

pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const SAMPLE_SEED: u64 = 0x5eed_c0de;
/// Absolute tolerance for the real-valued checks, scaled by the magnitude of
/// the operands.
pub const REAL_TOLERANCE: f64 = 1e-9;

/// Stop recording individual counterexamples past this many.
const MAX_RECORDED: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub cases_checked: u64,
    pub failures: u64,
    /// Inputs of the first failing cases. Empty exactly when the statement
    /// held on every case checked.
    pub counterexamples: Vec<String>,
}

impl OracleReport {
    fn new(name: &str) -> Self {
        OracleReport {
            name: name.to_string(),
            cases_checked: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases_checked += 1;
        if !ok {
            self.fail(describe);
        }
    }

    fn fail(&mut self, describe: impl FnOnce() -> String) {
        self.failures += 1;
        if self.counterexamples.len() < MAX_RECORDED {
            self.counterexamples.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<12} {:>10} cases  {}",
            self.name,
            self.cases_checked,
            if self.passed() {
                "ok".to_string()
            } else {
                format!("FAILED ({} counterexamples)", self.failures)
            }
        )?;
        for c in &self.counterexamples {
            write!(f, "\n    {c}")?;
        }
        Ok(())
    }
}

/// `b - c * floor(b / c)`, defined for either sign of `c`.
fn floored_mod(b: f64, c: f64) -> f64 {
    b - c * (b / c).floor()
}

/// If `a = b mod c` then `a * n = (b * n) mod (c * n)`.
pub fn lemma1_holds(b: f64, c: f64, n: u32) -> bool {
    let n = f64::from(n);
    let a = floored_mod(b, c);
    let lhs = a * n;
    let rhs = floored_mod(b * n, c * n);
    let tol = REAL_TOLERANCE * (b * n).abs().max(1.0);
    // values on either side of a wrap are equal modulo c * n
    circular_distance(lhs, rhs, (c * n).abs()) <= tol
}

/// For `0 <= a, b < n` with `c = (a - b) mod n`, `a - b` is `c` or `c - n`.
pub fn lemma2_holds(a: f64, b: f64, n: f64) -> bool {
    let c = wrap(a - b, n);
    let d = a - b;
    let tol = REAL_TOLERANCE * n.max(1.0);
    (d - c).abs() <= tol || (d - (c - n)).abs() <= tol
}

pub fn verify_lemma1(samples: u64) -> OracleReport {
    let mut report = OracleReport::new("lemma1");
    let fixed: [(f64, f64, u32); 6] = [
        (7.0, 3.0, 2),
        (0.0, 5.0, 9),
        (6.0, 3.0, 4),
        (-7.5, 2.0, 3),
        (2.999_999_999, 3.0, 1000),
        (1e-12, 0.5, 17),
    ];
    for (b, c, n) in fixed {
        report.check(lemma1_holds(b, c, n), || format!("(b={b}, c={c}, n={n})"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for _ in 0..samples {
        let b: f64 = rng.gen_range(-1000.0..1000.0);
        let mut c: f64 = rng.gen_range(-1000.0..1000.0);
        if c == 0.0 {
            c = 1.0;
        }
        let n: u32 = rng.gen_range(1..=1000);
        report.check(lemma1_holds(b, c, n), || format!("(b={b}, c={c}, n={n})"));
    }
    report
}

pub fn verify_lemma2(samples: u64) -> OracleReport {
    let mut report = OracleReport::new("lemma2");
    let fixed: [(f64, f64, f64); 5] = [
        (3.0, 5.0, 8.0),
        (4.25, 4.25, 8.0),
        (0.0, 0.0, 1.0),
        (0.0, 255.999_999, 256.0),
        (255.999_999, 0.0, 256.0),
    ];
    for (a, b, n) in fixed {
        report.check(lemma2_holds(a, b, n), || format!("(a={a}, b={b}, n={n})"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ 2);
    for _ in 0..samples {
        let n: f64 = rng.gen_range(1e-3..1000.0);
        let a: f64 = rng.gen_range(0.0..n);
        let b: f64 = rng.gen_range(0.0..n);
        report.check(lemma2_holds(a, b, n), || format!("(a={a}, b={b}, n={n})"));
    }
    report
}

/// `b ^ 128 ≡ b + 128 (mod 256)` for every byte.
pub fn verify_lemma3() -> OracleReport {
    let mut report = OracleReport::new("lemma3");
    for b in 0..=255u16 {
        let a = b ^ 128;
        report.check(a == (b + 128) % 256, || format!("(b={b})"));
    }
    report
}

/// Every `x` with `(a ^ x) - (!a ^ x) = c`, by enumeration.
fn brute_solutions(a: u8, c: i32) -> Vec<u8> {
    (0..=255u8)
        .filter(|&x| i32::from(a ^ x) - i32::from(!a ^ x) == c)
        .collect()
}

pub fn verify_theorem1() -> OracleReport {
    verify_theorem1_with(crate::attack::solve_xor_diff)
}

/// Sweeps all `a` and all `c` in `1..=255`: solutions exist exactly for odd
/// `c`, are unique, and equal `solver(a, c)`.
pub fn verify_theorem1_with(solver: impl Fn(u8, u8) -> u8) -> OracleReport {
    let mut report = OracleReport::new("theorem1");
    for a in 0..=255u8 {
        for c in 1..=255u8 {
            let sols = brute_solutions(a, i32::from(c));
            let solvable = !sols.is_empty();
            let ok = match sols.as_slice() {
                [] => c % 2 == 0,
                [x] => c % 2 == 1 && *x == solver(a, c),
                _ => false,
            };
            report.check(ok, || {
                format!(
                    "(a={a}, c={c}): solutions {sols:?}, solvable={solvable}, closed form {}",
                    solver(a, c)
                )
            });
        }
    }
    report
}

/// For every solvable `(a, c)`: the solution of the mirrored equation with
/// `256 - c` is the first solution XOR 128.
pub fn verify_corollary() -> OracleReport {
    let mut report = OracleReport::new("corollary");
    for a in 0..=255u8 {
        let b = !a;
        for c in 1..=255i32 {
            let [x] = brute_solutions(a, c)[..] else {
                continue;
            };
            // (b ^ x') - (a ^ x') = 256 - c
            let mirrored: Vec<u8> = (0..=255u8)
                .filter(|&xp| i32::from(b ^ xp) - i32::from(a ^ xp) == 256 - c)
                .collect();
            report.check(mirrored == [x ^ 128], || {
                format!("(a={a}, c={c}): x={x}, mirrored solutions {mirrored:?}")
            });
        }
    }
    report
}

/// Number of additive-state grid points per `(f, B)` pair.
pub const PROPOSITION_GRID: u32 = 256;

/// Grid value `k + k/256`, spanning `[0, 256)` with varied fractional parts.
pub fn proposition_grid_point(k: u32) -> f64 {
    f64::from(k) + f64::from(k) / 256.0
}

pub fn proposition_holds(f: u8, b1: u8, x1: f64) -> bool {
    let b2 = b1 ^ 128;
    let x2 = wrap(x1 + 128.0, 256.0);
    let lhs = f64::from(f ^ b1) + x1;
    let rhs = f64::from(f ^ b2) + x2;
    circular_distance(lhs, rhs, 256.0) <= REAL_TOLERANCE
}

/// `((f ^ B1) + x1) ≡ ((f ^ (B1 ^ 128)) + (x1 + 128)) (mod 256)` over all
/// `f`, all `B1` and a 256-point grid of `x1`.
pub fn verify_proposition() -> OracleReport {
    let mut report = OracleReport::new("proposition");
    for f in 0..=255u8 {
        for b1 in 0..=255u8 {
            for k in 0..PROPOSITION_GRID {
                let x1 = proposition_grid_point(k);
                report.check(proposition_holds(f, b1, x1), || {
                    format!("(f={f}, B1={b1}, x1={x1})")
                });
            }
        }
    }
    report
}

/// Every oracle, using the default sample count for the sampled ones.
pub fn run_all() -> Vec<OracleReport> {
    run_all_with(crate::attack::solve_xor_diff)
}

pub fn run_all_with(solver: impl Fn(u8, u8) -> u8) -> Vec<OracleReport> {
    vec![
        verify_lemma1(DEFAULT_SAMPLES),
        verify_lemma2(DEFAULT_SAMPLES),
        verify_lemma3(),
        verify_theorem1_with(solver),
        verify_corollary(),
        verify_proposition(),
    ]
}
