//! Seeded random instances for the property suites: pointed spaces whose
//! triangle inequality holds by construction (shortest-path closure),
//! bounded words, rational combinations, and 1-Lipschitz vector maps.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use graev_core::rat::Rat;
use graev_core::word::{LinComb, Word};
use graev_core::PointedSpace;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn rat(&mut self, numer: i64, denom: i64) -> Rat {
        Rat::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// A pointed pseudometric space with 2..=max_points points and
    /// denominators dividing `den`. Raw entries are `k/den` with
    /// `k in 1..=2·den`; the shortest-path closure enforces the triangle
    /// inequality without changing denominators.
    pub fn space(&mut self, max_points: usize, den: i64) -> PointedSpace {
        let n = self.rng.random_range(2..=max_points.max(2));
        let raw: Vec<Rat> = (0..n * (n - 1) / 2)
            .map(|_| {
                let k = self.rng.random_range(1..=2 * den);
                self.rat(k, den)
            })
            .collect();
        // Index of the unordered pair {i, j} (i < j) in row-major triangle order.
        let pair = |i: usize, j: usize| i * n - i * (i + 1) / 2 + (j - i - 1);
        let mut dist: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => Rat::zero(),
                        std::cmp::Ordering::Less => raw[pair(i, j)].clone(),
                        std::cmp::Ordering::Greater => raw[pair(j, i)].clone(),
                    })
                    .collect()
            })
            .collect();
        // Floyd–Warshall min-plus closure.
        for via in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let through = &dist[i][via] + &dist[via][j];
                    if through < dist[i][j] {
                        dist[i][j] = through;
                    }
                }
            }
        }
        let names = (0..n)
            .map(|i| if i == 0 { "*".to_string() } else { format!("p{i}") })
            .collect();
        let space = PointedSpace::new(names, 0, dist).expect("structurally valid");
        debug_assert!(space.validate().is_ok());
        space
    }

    /// A word with at most `max_letters` total letters and coefficients in
    /// `[-coeff_bound, coeff_bound]`.
    pub fn word(&mut self, space: &PointedSpace, max_letters: u64, coeff_bound: i64) -> Word {
        let steps = self.rng.random_range(0..=max_letters);
        let mut coeffs: Vec<i64> = vec![0; space.len()];
        let mut letters = 0;
        for _ in 0..steps {
            if letters >= max_letters {
                break;
            }
            let point = self.rng.random_range(1..space.len().max(2)).min(space.len() - 1);
            if point == space.basepoint() {
                continue;
            }
            let sign = if self.rng.random_range(0..2) == 0 { 1 } else { -1 };
            let next = coeffs[point] + sign;
            if next.abs() > coeff_bound {
                continue;
            }
            // Only count the step if it grows the letter total.
            letters = letters - coeffs[point].unsigned_abs() + next.unsigned_abs();
            coeffs[point] = next;
        }
        Word::new(
            coeffs
                .into_iter()
                .enumerate()
                .filter(|(i, c)| *i != space.basepoint() && *c != 0)
                .map(|(i, c)| (i, BigInt::from(c))),
        )
    }

    /// A rational combination with denominators dividing `den`.
    pub fn lincomb(&mut self, space: &PointedSpace, max_terms: usize, den: i64) -> LinComb {
        let terms = self.rng.random_range(0..=max_terms);
        let mut entries = Vec::new();
        for _ in 0..terms {
            if space.len() < 2 {
                break;
            }
            let point = self.rng.random_range(1..space.len());
            if point == space.basepoint() {
                continue;
            }
            let numer = self.rng.random_range(-3 * den..=3 * den);
            entries.push((point, self.rat(numer, den)));
        }
        LinComb::new(entries)
    }

    pub fn rational_in_unit(&mut self, den: i64) -> Rat {
        let k = self.rng.random_range(0..den);
        self.rat(k, den)
    }

    /// A basepoint-preserving 1-Lipschitz map into `Q^dim` under the
    /// max-norm: each coordinate is a convex combination of anchor
    /// functions `x ↦ ±(ρ(x, y) − ρ(*, y))`, which are 1-Lipschitz with
    /// value 0 at the basepoint.
    pub fn lipschitz_map(&mut self, space: &PointedSpace, dim: usize) -> Vec<Vec<Rat>> {
        let n = space.len();
        let star = space.basepoint();
        let mut rows = vec![vec![Rat::zero(); dim]; n];
        for t in 0..dim {
            let anchor_a = self.rng.random_range(0..n);
            let anchor_b = self.rng.random_range(0..n);
            let sign_a = if self.rng.random_range(0..2) == 0 { Rat::one() } else { -Rat::one() };
            let sign_b = if self.rng.random_range(0..2) == 0 { Rat::one() } else { -Rat::one() };
            let lam = self.rng.random_range(0..=8);
            let lambda = self.rat(lam, 8);
            let complement = Rat::one() - &lambda;
            for (x, row) in rows.iter_mut().enumerate() {
                let f_a = (space.dist(x, anchor_a) - space.dist(star, anchor_a)) * &sign_a;
                let f_b = (space.dist(x, anchor_b) - space.dist(star, anchor_b)) * &sign_b;
                row[t] = &lambda * f_a + &complement * f_b;
            }
        }
        rows
    }

    /// A rational vector with entries `k/den`, `|k| <= spread·den`.
    pub fn e_vector(&mut self, dim: usize, den: i64, spread: i64) -> Vec<Rat> {
        (0..dim)
            .map(|_| {
                let k = self.rng.random_range(-spread * den..=spread * den);
                self.rat(k, den)
            })
            .collect()
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.random_range(0..items.len())]
    }

    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }
}
