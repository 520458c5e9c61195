#![allow(dead_code)]

pub mod defs;
pub mod oracle;

use qmatroid::fixtures::m6;
use qmatroid::representable::{matroid_from_matrix, GeneratorMatrix};
use qmatroid::{Error, ExtField, QMatroid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RANDOM_SEED: u64 = 20_240_601;

/// Twenty random representable matroids, alternating between F_2^4 and
/// F_2^5, with k in 1..=3 rows over GF(2^m) for m in 2..=4.
pub fn random_representable() -> Vec<QMatroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    (0..20)
        .map(|i| {
            let n = 4 + i % 2;
            let m = 2 + i % 3;
            let k = 1 + (i / 2) % 3;
            let field = ExtField::build(2, m).unwrap();
            loop {
                let entries =
                    (0..k).map(|_| (0..n).map(|_| field.decode(rng.gen_range(0..field.order() as u32))).collect()).collect();
                match GeneratorMatrix::new(field.clone(), entries) {
                    Ok(g) => break matroid_from_matrix(&g).unwrap(),
                    Err(Error::RankDeficientG { .. }) => continue,
                    Err(e) => panic!("{e}"),
                }
            }
        })
        .collect()
}

pub fn uniforms() -> Vec<QMatroid> {
    (1..=5).flat_map(|n| (0..=n).map(move |k| QMatroid::uniform(k, n, 2).unwrap())).collect()
}

/// M6, its dual, every U_{k,n}(F_2) with n ≤ 5 and the random matroids.
pub fn test_matroids() -> Vec<(String, QMatroid)> {
    let m = m6().unwrap();
    let mut out = vec![("M6".to_string(), m.clone()), ("M6*".to_string(), m.dual())];
    for u in uniforms() {
        out.push((format!("U({},{})", u.full_rank(), u.n()), u));
    }
    for (i, r) in random_representable().into_iter().enumerate() {
        out.push((format!("random#{i} (F_2^{}, rank {})", r.n(), r.full_rank()), r));
    }
    out
}
