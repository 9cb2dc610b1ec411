#![allow(dead_code)]

use credence::algebra::{Proposition, WorldSpace};
use credence::credal::{CredalSet, Distribution};
use credence::rational::{ratio, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_c4ed;

/// Seed from `CREDENCE_TEST_SEED`, falling back to a fixed default.
pub fn seed() -> u64 {
    std::env::var("CREDENCE_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

pub fn space(n: usize) -> WorldSpace {
    WorldSpace::new((0..n).map(|i| format!("w{i}"))).unwrap()
}

pub fn tosses(n: u32) -> WorldSpace {
    WorldSpace::new((0..1u32 << n).map(|i| {
        (0..n).map(|b| if i & (1 << (n - 1 - b)) == 0 { 'H' } else { 'T' }).collect::<String>()
    }))
    .unwrap()
}

/// Random distribution with small integer masses; roughly one atom in
/// `zero_every` gets mass zero (never all of them).
pub fn distribution(rng: &mut impl Rng, space: &WorldSpace, zero_every: u32) -> Distribution {
    loop {
        let masses: Vec<BigInt> = (0..space.len())
            .map(|_| {
                if zero_every > 0 && rng.gen_ratio(1, zero_every) {
                    BigInt::from(0)
                } else {
                    BigInt::from(rng.gen_range(1..=30))
                }
            })
            .collect();
        if masses.iter().any(|m| *m > BigInt::from(0)) {
            return Distribution::from_masses(space, masses).unwrap();
        }
    }
}

pub fn credal(rng: &mut impl Rng, space: &WorldSpace, generators: usize, zero_every: u32) -> CredalSet {
    CredalSet::new((0..generators).map(|_| distribution(rng, space, zero_every)).collect()).unwrap()
}

pub fn proposition(rng: &mut impl Rng, space: &WorldSpace) -> Proposition {
    space.proposition((0..space.len()).filter(|_| rng.gen_bool(0.5))).unwrap()
}

pub fn nonempty_proposition(rng: &mut impl Rng, space: &WorldSpace) -> Proposition {
    loop {
        let p = proposition(rng, space);
        if !p.is_contradiction() {
            return p;
        }
    }
}

/// Random rational in `[lo, hi)` with denominator up to `den`.
pub fn rational_in(rng: &mut impl Rng, lo: &Rational, hi: &Rational, den: i64) -> Rational {
    let u = ratio(rng.gen_range(0..den), den);
    lo + (hi - lo) * u
}

/// Random point of the convex hull of `k`'s generators.
pub fn hull_member(rng: &mut impl Rng, k: &CredalSet) -> Distribution {
    let lambdas: Vec<i64> = loop {
        let l: Vec<i64> = k.generators().iter().map(|_| rng.gen_range(0..=50)).collect();
        if l.iter().any(|x| *x > 0) {
            break l;
        }
    };
    let total: i64 = lambdas.iter().sum();
    let parts: Vec<(Rational, &Distribution)> =
        lambdas.iter().zip(k.generators()).map(|(l, g)| (ratio(*l, total), g)).collect();
    Distribution::mixture(&parts).unwrap()
}
