use cascade_seq::fptas::solve_pa1_with_stats;
use cascade_seq::model::{Catalog, Product};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let products = (1..=50)
        .map(|id| {
            Product::new(
                id,
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..5.0),
                rng.gen_range(0.5..0.99),
            )
            .unwrap()
        })
        .collect();
    let catalog = Catalog::new(products, 10).unwrap();
    let start = Instant::now();
    let (solution, stats) = solve_pa1_with_stats(&catalog, 0.5, 0.2).unwrap();
    println!("{:?}\n{:?}\n{:.2?}", solution, stats, start.elapsed());
}
