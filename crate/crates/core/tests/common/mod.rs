#![allow(dead_code)]

use conjugacy::expr::RationalExpr;
use conjugacy::word::{cyclic_shift, Word, WordPair};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn p(u: &str, v: &str) -> WordPair {
    WordPair::parse(u, v).unwrap()
}

pub fn random_word(rng: &mut impl Rng, alphabet: &[u8], min: usize, max: usize) -> Word {
    let len = rng.gen_range(min..=max);
    let text: String = (0..len)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())] as char)
        .collect();
    w(&text)
}

/// `(u, σ^i(u))` for a random `u` and shift.
pub fn random_conjugate_pair(
    rng: &mut impl Rng,
    alphabet: &[u8],
    min: usize,
    max: usize,
) -> WordPair {
    let u = random_word(rng, alphabet, min, max);
    let shift = rng.gen_range(0..=u.len());
    let v = cyclic_shift(&u, shift);
    WordPair::new(u, v)
}

/// Half conjugate, half independent pairs over `{a,b}` with words up to 3.
pub fn random_literal(rng: &mut impl Rng) -> WordPair {
    if rng.gen_bool(0.5) {
        random_conjugate_pair(rng, b"ab", 0, 3)
    } else {
        WordPair::new(random_word(rng, b"ab", 0, 3), random_word(rng, b"ab", 0, 3))
    }
}

fn random_node(rng: &mut impl Rng, depth: usize, stars: &mut usize) -> RationalExpr {
    let roll = if depth == 0 { 0 } else { rng.gen_range(0..10) };
    match roll {
        0..=3 => RationalExpr::literal(random_literal(rng)),
        4..=5 => {
            let n = rng.gen_range(2..=3);
            RationalExpr::concat((0..n).map(|_| random_node(rng, depth - 1, stars)))
        }
        6 => RationalExpr::sum((0..2).map(|_| random_node(rng, depth - 1, stars))),
        7..=8 if *stars > 0 => {
            *stars -= 1;
            RationalExpr::star(random_node(rng, depth - 1, stars))
        }
        9 if rng.gen_bool(0.2) => RationalExpr::EmptySet,
        _ => RationalExpr::literal(random_literal(rng)),
    }
}

/// Random expression with at most `max_stars` stars and literals over
/// `{a,b}` of length at most 3.
pub fn random_expr(rng: &mut impl Rng, max_stars: usize) -> RationalExpr {
    let mut stars = max_stars;
    let e = random_node(rng, 4, &mut stars);
    // Make sure stars actually show up often.
    if stars == max_stars && max_stars > 0 && rng.gen_bool(0.7) {
        let tail = random_node(rng, 1, &mut 0);
        return RationalExpr::concat([RationalExpr::star(e), tail]);
    }
    e
}

/// 2 to 4 conjugate pairs with words of length 1 to 4. A third of the sets
/// are powers of a single primitive pair so that infinite witness sets occur.
pub fn random_pair_set(rng: &mut impl Rng) -> Vec<WordPair> {
    let n = rng.gen_range(2..=4);
    if rng.gen_range(0..3) == 0 {
        let root = loop {
            let candidate = random_conjugate_pair(rng, b"ab", 1, 2);
            if let Some(root) = candidate.primitive_root() {
                break root;
            }
        };
        let max_power = 4 / root.u.len();
        (0..n)
            .map(|_| root.pow(rng.gen_range(1..=max_power)))
            .collect()
    } else {
        (0..n)
            .map(|_| random_conjugate_pair(rng, b"ab", 1, 4))
            .collect()
    }
}
