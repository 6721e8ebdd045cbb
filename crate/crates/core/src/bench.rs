//! Random instances and a timing comparison between the data-structure
//! engine and brute-force pair closure.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::congruence::{CongruenceDS, Pair};
use crate::oracle::pair_closure;
use crate::pperm::PartialPerm;
use crate::semigroup::InverseSemigroup;

/// A partial permutation whose domain keeps each point with probability
/// `density`, mapped injectively at random.
pub fn random_partial_perm<R: Rng>(rng: &mut R, degree: usize, density: f64) -> PartialPerm {
    let mut points: Vec<usize> = (1..=degree).collect();
    points.shuffle(rng);
    let images = (1..=degree)
        .map(|_| {
            if rng.gen_bool(density) {
                Some(())
            } else {
                None
            }
        })
        .zip(points)
        .map(|(keep, p)| keep.map(|()| p))
        .collect::<Vec<_>>();
    PartialPerm::from_images(&images).expect("shuffled points are distinct")
}

/// Generators for a random inverse semigroup: `count` partial permutations,
/// the first one total with probability one half.
pub fn random_generators<R: Rng>(rng: &mut R, degree: usize, count: usize) -> Vec<PartialPerm> {
    (0..count)
        .map(|i| {
            let density = if i == 0 && rng.gen_bool(0.5) {
                1.0
            } else {
                rng.gen_range(0.5..1.0)
            };
            random_partial_perm(rng, degree, density)
        })
        .collect()
}

/// `count` random pairs. Besides uniform pairs, draws pairs of equal rank and
/// pairs `(a, a·e)` for an idempotent `e`, which tend to generate smaller
/// congruences.
pub fn random_pairs<R: Rng>(rng: &mut R, s: &InverseSemigroup, count: usize) -> Vec<Pair> {
    let pick = |rng: &mut R| s.element(rng.gen_range(0..s.size())).clone();
    (0..count)
        .map(|_| {
            let a = pick(rng);
            let b = match rng.gen_range(0..3) {
                0 => pick(rng),
                1 => {
                    let same: Vec<&PartialPerm> = s
                        .elements()
                        .iter()
                        .filter(|b| b.rank() == a.rank())
                        .collect();
                    (*same.choose(rng).expect("a itself qualifies")).clone()
                }
                _ => {
                    let e = s
                        .idempotents()
                        .choose(rng)
                        .expect("semigroups have idempotents");
                    &a * e
                }
            };
            (a, b)
        })
        .collect()
}

/// Draws random semigroups until one has between `min_size` and `max_size`
/// elements; gives up after `attempts` draws.
pub fn random_semigroup<R: Rng>(
    rng: &mut R,
    degrees: std::ops::RangeInclusive<usize>,
    gens: std::ops::RangeInclusive<usize>,
    min_size: usize,
    max_size: usize,
    attempts: usize,
) -> Option<InverseSemigroup> {
    for _ in 0..attempts {
        let degree = rng.gen_range(degrees.clone());
        let count = rng.gen_range(gens.clone());
        let generators = random_generators(rng, degree, count);
        let s = InverseSemigroup::new(degree, &generators).expect("generators share the degree");
        if (min_size..=max_size).contains(&s.size()) {
            return Some(s);
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub seed: u64,
    pub instances: usize,
    pub min_size: usize,
    pub max_size: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            seed: 1,
            instances: 5,
            min_size: 5000,
            max_size: 150_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub instance: usize,
    pub degree: usize,
    pub size: usize,
    pub idempotents: usize,
    pub pairs: usize,
    pub classes: usize,
    pub fast_seconds: f64,
    pub naive_seconds: f64,
    /// Both engines report the same number of classes.
    pub agree: bool,
}

impl BenchRecord {
    pub fn ratio(&self) -> f64 {
        self.naive_seconds / self.fast_seconds.max(1e-9)
    }
}

/// Times congruence computation (class count only) with both engines on
/// random instances of degree 6 or 7. Semigroup enumeration is not timed.
pub fn run(config: &BenchConfig) -> Vec<BenchRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut records = Vec::new();
    while records.len() < config.instances {
        let Some(s) = random_semigroup(
            &mut rng,
            6..=7,
            2..=3,
            config.min_size,
            config.max_size,
            1000,
        ) else {
            break;
        };
        let s = Arc::new(s);
        let count = rng.gen_range(1..=3);
        let pairs = random_pairs(&mut rng, &s, count);

        let start = Instant::now();
        let fast = CongruenceDS::compute(Arc::clone(&s), &pairs).expect("pairs are elements");
        let fast_classes = fast.nr_classes();
        let fast_seconds = start.elapsed().as_secs_f64();

        let start = Instant::now();
        let naive_classes = pair_closure(&s, &pairs)
            .expect("pairs are elements")
            .block_count();
        let naive_seconds = start.elapsed().as_secs_f64();

        records.push(BenchRecord {
            instance: records.len(),
            degree: s.degree(),
            size: s.size(),
            idempotents: s.idempotent_count(),
            pairs: count,
            classes: fast_classes,
            fast_seconds,
            naive_seconds,
            agree: fast_classes == naive_classes,
        });
    }
    records
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(
        "instance,degree,size,idempotents,pairs,classes,fast_seconds,naive_seconds,ratio,agree\n",
    );
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.6},{:.6},{:.2},{}",
            r.instance,
            r.degree,
            r.size,
            r.idempotents,
            r.pairs,
            r.classes,
            r.fast_seconds,
            r.naive_seconds,
            r.ratio(),
            r.agree
        );
    }
    out
}

/// Median of the naive/fast time ratios; `None` for no records.
pub fn median_ratio(records: &[BenchRecord]) -> Option<f64> {
    let mut ratios: Vec<f64> = records.iter().map(BenchRecord::ratio).collect();
    if ratios.is_empty() {
        return None;
    }
    ratios.sort_by(f64::total_cmp);
    let n = ratios.len();
    Some(if n % 2 == 1 {
        ratios[n / 2]
    } else {
        (ratios[n / 2 - 1] + ratios[n / 2]) / 2.0
    })
}
