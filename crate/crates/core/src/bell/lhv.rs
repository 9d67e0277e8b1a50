use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::rng;

const LHV_STREAM: u64 = 0x4c48_5653;

/// A local deterministic response table. `first[x][l]` is the first side's
/// answer to setting `x` when the shared hidden bit is `l`; likewise for
/// `second`. Neither side sees the other's setting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ResponseTable {
    pub first: [[i8; 2]; 2],
    pub second: [[i8; 2]; 2],
}

fn sign(bit: u32) -> i8 {
    if bit == 0 {
        1
    } else {
        -1
    }
}

impl ResponseTable {
    /// Table number `code` in `0..256`: the low four bits give the first
    /// side's entries, the high four the second's.
    pub fn from_code(code: u8) -> Self {
        let side = |bits: u32| [[sign(bits & 1), sign(bits >> 1 & 1)], [sign(bits >> 2 & 1), sign(bits >> 3 & 1)]];
        Self {
            first: side(u32::from(code) & 0xF),
            second: side(u32::from(code) >> 4),
        }
    }

    pub fn all() -> impl Iterator<Item = ResponseTable> {
        (0..=255u8).map(Self::from_code)
    }

    /// `2 E(x, y)` with the hidden bit uniform, as an integer.
    fn doubled_correlation(&self, x: usize, y: usize) -> i32 {
        (0..2).map(|l| i32::from(self.first[x][l]) * i32::from(self.second[y][l])).sum()
    }

    /// Exact CHSH value with the hidden bit uniform on `{0, 1}`. Always a
    /// multiple of 1/2.
    pub fn chsh(&self) -> f64 {
        let e = |x, y| self.doubled_correlation(x, y);
        let twice = (e(0, 0) - e(0, 1)).abs() + (e(1, 0) + e(1, 1)).abs();
        f64::from(twice) / 2.0
    }
}

/// Maximum exact CHSH value over all 256 local deterministic tables, with a
/// table attaining it.
pub fn best_deterministic_chsh() -> (f64, ResponseTable) {
    let mut best = (f64::NEG_INFINITY, ResponseTable::from_code(0));
    for t in ResponseTable::all() {
        let v = t.chsh();
        if v > best.0 {
            best = (v, t);
        }
    }
    best
}

/// A local hidden-variable strategy: how each shot's hidden sample is drawn
/// and mapped to responses.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LhvStrategy {
    /// A shared uniform bit `l`; the first side answers `(−1)^l` and the
    /// second side the opposite, whatever the settings.
    AntiCorrelated,
    /// Each side flips its own fair coin.
    RandomResponse,
    /// Pick one of the given tables uniformly, then a uniform hidden bit.
    TableMixture { tables: Vec<ResponseTable> },
}

impl LhvStrategy {
    /// A mixture of `count` tables drawn uniformly from the 256 with `seed`.
    pub fn seeded_mixture(count: usize, seed: u64) -> Self {
        let mut r = rng::stream(seed, &[LHV_STREAM, u64::MAX]);
        let tables = (0..count.max(1)).map(|_| ResponseTable::from_code(r.random())).collect();
        Self::TableMixture { tables }
    }

    /// Responses `(a, b)` for settings `(x, y)` given a shot's randomness.
    fn respond<R: Rng + ?Sized>(&self, x: usize, y: usize, r: &mut R) -> (i8, i8) {
        match self {
            Self::AntiCorrelated => {
                let s = sign(r.random_range(0..2));
                (s, -s)
            }
            Self::RandomResponse => (sign(r.random_range(0..2)), sign(r.random_range(0..2))),
            Self::TableMixture { tables } => {
                let t = &tables[r.random_range(0..tables.len())];
                let l = r.random_range(0..2usize);
                (t.first[x][l], t.second[y][l])
            }
        }
    }

    /// Exact CHSH value of the strategy.
    pub fn exact_chsh(&self) -> f64 {
        match self {
            // every correlation is −1: |−1 + 1| + |−1 − 1|
            Self::AntiCorrelated => 2.0,
            Self::RandomResponse => 0.0,
            Self::TableMixture { tables } => {
                let k = tables.len() as f64;
                let e = |x, y| tables.iter().map(|t| f64::from(t.doubled_correlation(x, y))).sum::<f64>() / (2.0 * k);
                (e(0, 0) - e(0, 1)).abs() + (e(1, 0) + e(1, 1)).abs()
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LhvEstimate {
    pub shots: u64,
    pub value: f64,
    /// `sqrt(Σ 1/N_xy)`, a bound on the estimator's standard deviation since
    /// each product of responses has variance at most 1.
    pub sigma: f64,
    pub correlations: [[f64; 2]; 2],
}

impl LhvEstimate {
    pub fn within_local_bound(&self, k_sigma: f64) -> bool {
        self.value <= 2.0 + k_sigma * self.sigma
    }
}

/// Monte Carlo CHSH estimate. Shot `i` uses setting pair `i mod 4` and its
/// own random stream.
pub fn lhv_chsh_monte_carlo(strategy: &LhvStrategy, shots: u64, seed: u64) -> LhvEstimate {
    let (sums, counts) = (0..shots)
        .into_par_iter()
        .fold(
            || ([[0i64; 2]; 2], [[0u64; 2]; 2]),
            |(mut s, mut c), i| {
                let (x, y) = ((i % 4 / 2) as usize, (i % 2) as usize);
                let mut r = rng::stream(seed, &[LHV_STREAM, i]);
                let (a, b) = strategy.respond(x, y, &mut r);
                s[x][y] += i64::from(a) * i64::from(b);
                c[x][y] += 1;
                (s, c)
            },
        )
        .reduce(
            || ([[0i64; 2]; 2], [[0u64; 2]; 2]),
            |(mut s, mut c), (s2, c2)| {
                for x in 0..2 {
                    for y in 0..2 {
                        s[x][y] += s2[x][y];
                        c[x][y] += c2[x][y];
                    }
                }
                (s, c)
            },
        );
    let mut correlations = [[0.0; 2]; 2];
    let mut var = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            let n = counts[x][y].max(1) as f64;
            correlations[x][y] = sums[x][y] as f64 / n;
            var += 1.0 / n;
        }
    }
    let e = correlations;
    LhvEstimate {
        shots,
        value: (e[0][0] - e[0][1]).abs() + (e[1][0] + e[1][1]).abs(),
        sigma: var.sqrt(),
        correlations,
    }
}
