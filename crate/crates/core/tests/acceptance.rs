//! Exit criteria for the cipher and the attack. Each test prints one
//! `[PASS]`/`[FAIL]` line; run with `--nocapture` to see them.

use std::time::{Duration, Instant};

use cnnc_core::attack::{decrypt_with_equivalent, derive_equivalent_key, make_chosen_pair};
use cnnc_core::cipher::{
    decrypt_stream, decrypt_stream_unchecked, encrypt_stream, encrypt_stream_observed,
};
use cnnc_core::modular::circular_distance;
use cnnc_core::oracle;
use cnnc_core::{Cells, SecretKey};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIDE: usize = 256;
const X_HAT_TOLERANCE: f64 = 1e-6;

fn criterion(name: &str, check: impl FnOnce() -> Result<String, String>) {
    match check() {
        Ok(detail) => println!("[PASS] {name}: {detail}"),
        Err(detail) => {
            println!("[FAIL] {name}: {detail}");
            panic!("{name}: {detail}");
        }
    }
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn paper_key() -> SecretKey {
    SecretKey::new(1.99, 0.41, "+-+-+-+-".parse().unwrap()).unwrap()
}

/// Smooth portrait-like test card: radial shading plus a diagonal band.
fn portrait_image() -> Vec<u8> {
    let mut px = Vec::with_capacity(SIDE * SIDE);
    for y in 0..SIDE {
        for x in 0..SIDE {
            let dx = x as f64 - 128.0;
            let dy = y as f64 - 110.0;
            let r = (dx * dx + dy * dy).sqrt();
            let band = if (x + y) % 64 < 12 { 40.0 } else { 0.0 };
            px.push((200.0 - 0.9 * r + band).clamp(0.0, 255.0) as u8);
        }
    }
    px
}

/// Unrelated image: blocky checkerboard with seeded noise.
fn peppers_image() -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut px = Vec::with_capacity(SIDE * SIDE);
    for y in 0..SIDE {
        for x in 0..SIDE {
            let base: u8 = if (x / 32 + y / 32) % 2 == 0 { 60 } else { 180 };
            px.push(base.wrapping_add(rng.gen_range(0..40)));
        }
    }
    px
}

fn random_key(rng: &mut ChaCha8Rng) -> SecretKey {
    SecretKey::new(
        rng.gen_range(1.9..2.0),
        rng.gen_range(0.001..0.999),
        Cells::from_byte(rng.gen()),
    )
    .unwrap()
}

#[test]
fn end_to_end_break_recovers_third_image() {
    criterion("end-to-end break (256x256, 0 mismatches, < 2 s)", || {
        let start = Instant::now();
        let key = paper_key();
        let f1 = portrait_image();
        let f2 = make_chosen_pair(&f1);
        let c1 = encrypt_stream(&key, &f1);
        let c2 = encrypt_stream(&key, &f2);
        let (k1, k2) = derive_equivalent_key(&f1, &c1, &f2, &c2).map_err(|e| e.to_string())?;

        let f3 = peppers_image();
        let c3 = encrypt_stream(&key, &f3);
        let r1 = decrypt_with_equivalent(&c3, &k1).map_err(|e| e.to_string())?;
        let r2 = decrypt_with_equivalent(&c3, &k2).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();

        let mismatches = r1.iter().zip(&f3).filter(|(a, b)| a != b).count();
        if r1.len() != SIDE * SIDE || mismatches != 0 {
            return Err(format!("{mismatches} mismatches out of {}", f3.len()));
        }
        if r2 != r1 {
            return Err("candidate keys disagree".into());
        }
        within(Duration::from_secs(2), elapsed)?;
        Ok(format!("0/{} mismatches in {elapsed:?}", f3.len()))
    });
}

#[test]
fn candidate_tables_satisfy_pairing_relations() {
    criterion(
        "table relations B2 = B1 ^ 128, x2 = x1 + 128 (mod 256)",
        || {
            let key = paper_key();
            let f1 = portrait_image();
            let f2 = make_chosen_pair(&f1);
            let (k1, k2) = derive_equivalent_key(
                &f1,
                &encrypt_stream(&key, &f1),
                &f2,
                &encrypt_stream(&key, &f2),
            )
            .map_err(|e| e.to_string())?;
            let mut worst: f64 = 0.0;
            for (i, (a, b)) in k1.records.iter().zip(&k2.records).enumerate() {
                if b.b != a.b ^ 128 {
                    return Err(format!("B mismatch at {i}: {} vs {}", a.b, b.b));
                }
                let d = circular_distance(b.x_hat, a.x_hat + 128.0, 256.0);
                worst = worst.max(d);
                if d > X_HAT_TOLERANCE {
                    return Err(format!("x_hat mismatch at {i}: {} vs {}", a.x_hat, b.x_hat));
                }
            }
            Ok(format!("{} positions, worst x_hat gap {worst:e}", k1.len()))
        },
    );
}

#[test]
fn theorem1_exhaustive() {
    criterion(
        "xor-difference solver exhaustive (256 x 255, < 1 s)",
        || {
            let start = Instant::now();
            let report = oracle::verify_theorem1();
            let elapsed = start.elapsed();
            if !report.passed() {
                return Err(report.to_string());
            }
            if report.cases_checked != 256 * 255 {
                return Err(format!("checked {} cases", report.cases_checked));
            }
            within(Duration::from_secs(1), elapsed)?;
            Ok(format!("{} cases in {elapsed:?}", report.cases_checked))
        },
    );
}

#[test]
fn corollary_and_lemma3_exhaustive() {
    criterion("corollary and lemma 3 exhaustive", || {
        let corollary = oracle::verify_corollary();
        let lemma3 = oracle::verify_lemma3();
        for r in [&corollary, &lemma3] {
            if !r.passed() {
                return Err(r.to_string());
            }
        }
        Ok(format!(
            "{} + {} cases",
            corollary.cases_checked, lemma3.cases_checked
        ))
    });
}

#[test]
fn proposition_grid_sweep() {
    criterion("proposition grid sweep (256^3, < 30 s)", || {
        let start = Instant::now();
        let report = oracle::verify_proposition();
        let elapsed = start.elapsed();
        if !report.passed() {
            return Err(report.to_string());
        }
        if report.cases_checked != 256 * 256 * 256 {
            return Err(format!("checked {} cases", report.cases_checked));
        }
        within(Duration::from_secs(30), elapsed)?;
        Ok(format!("{} cases in {elapsed:?}", report.cases_checked))
    });
}

#[test]
fn cipher_round_trip() {
    criterion(
        "cipher round trip (1000 random keys, <= 4096 bytes)",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(1000);
            let mut bytes = 0usize;
            for trial in 0..1000 {
                let key = random_key(&mut rng);
                let len = rng.gen_range(0..=4096);
                let plain: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
                let c = encrypt_stream(&key, &plain);
                let back = decrypt_stream(&key, &c).map_err(|e| format!("trial {trial}: {e}"))?;
                if back != plain {
                    return Err(format!("trial {trial}: mismatch"));
                }
                bytes += len;
            }
            Ok(format!("1000 pairs, {bytes} bytes, 0 mismatches"))
        },
    );
}

#[test]
fn keystream_is_plaintext_independent() {
    criterion("keystream plaintext-independence (100 keys)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        for trial in 0..100 {
            let key = random_key(&mut rng);
            let len = rng.gen_range(1..=4096);
            let f1: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            let f2: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            let mut log1 = Vec::with_capacity(len);
            let mut log2 = Vec::with_capacity(len);
            encrypt_stream_observed(&key, &f1, |t| log1.push(t.element));
            encrypt_stream_observed(&key, &f2, |t| log2.push(t.element));
            if log1 != log2 {
                return Err(format!("trial {trial}: element logs differ"));
            }
        }
        Ok("100 keys, identical element logs".into())
    });
}

#[test]
fn structural_invariants_over_a_million_bytes() {
    criterion("structural invariants over 10^6 bytes", || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let key = random_key(&mut rng);
        let plain: Vec<u8> = (0..1_000_000).map(|_| rng.gen()).collect();
        let mut failure: Option<String> = None;
        let mut index = 0usize;
        encrypt_stream_observed(&key, &plain, |t| {
            if failure.is_some() {
                return;
            }
            if !t.weights.is_well_formed() {
                failure = Some(format!("weights malformed at byte {index}"));
            } else if let Some(s) = t.weighted_sums.iter().find(|s| !matches!(s.abs(), 1 | 3)) {
                failure = Some(format!("weighted sum {s} at byte {index}"));
            } else if let Some(x) = t.tent_states.iter().find(|x| !(**x > 0.0 && **x < 1.0)) {
                failure = Some(format!("tent state {x} at byte {index}"));
            }
            index += 1;
        });
        match failure {
            Some(f) => Err(f),
            None => Ok(format!("{index} bytes checked")),
        }
    });
}

#[test]
fn key_sensitivity() {
    criterion("key sensitivity (x0 + 1e-10, >= 90% bytes differ)", || {
        let key = paper_key();
        let nudged = SecretKey::new(key.r(), key.x0() + 1e-10, key.cells()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(65536);
        let plain: Vec<u8> = (0..65536).map(|_| rng.gen()).collect();
        let c = encrypt_stream(&key, &plain);
        let wrong = decrypt_stream_unchecked(&nudged, &c);
        let differing = wrong.iter().zip(&plain).filter(|(a, b)| a != b).count();
        let fraction = differing as f64 / plain.len() as f64;
        if fraction >= 0.9 {
            Ok(format!("{:.2}% of bytes differ", 100.0 * fraction))
        } else {
            Err(format!("only {:.2}% of bytes differ", 100.0 * fraction))
        }
    });
}
