//! Seeded random finite categories: subcategories of finite sets generated
//! by a few random functions.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::FiniteCategory;

/// A random category with 1 to `max_objects` objects (sets of size 1 to 3)
/// and at most `max_arrows` arrows.
pub fn random_category<R: Rng>(rng: &mut R, max_objects: usize, max_arrows: usize) -> FiniteCategory {
    loop {
        let n = rng.gen_range(1..=max_objects.max(1));
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let count = rng.gen_range(0..=3);
        let generators: Vec<(usize, usize, Vec<usize>)> = (0..count)
            .map(|_| {
                let s = rng.gen_range(0..n);
                let t = rng.gen_range(0..n);
                let values = (0..sizes[s]).map(|_| rng.gen_range(0..sizes[t])).collect();
                (s, t, values)
            })
            .collect();
        if let Some(c) = FiniteCategory::concrete(&sizes, &generators, max_arrows)
            .expect("random generators are functions")
        {
            return c;
        }
    }
}

/// `count` categories from a fixed seed, with at most 3 objects and 8 arrows.
pub fn random_categories(seed: u64, count: usize) -> Vec<FiniteCategory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_category(&mut rng, 3, 8)).collect()
}
