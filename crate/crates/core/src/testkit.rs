//! Randomized generators and independent brute-force oracles, for tests and
//! benchmarks. Gated behind the `testkit` feature.
//!
//! The oracles deliberately avoid the algorithms they check: behavioral
//! classes are computed by exhaustive word enumeration, the controllable
//! subset by predecessor-closure pruning, and matrix ranks by a separate
//! elimination routine.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linear::{LinearSystem, Rational, RationalMatrix};
use crate::signal::{Alphabet, Sequence};
use crate::system::{FiniteWindowSystem, LinearModP, MealyMachine, StateId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random total Mealy machine with the rest state fixed under the default
/// input.
pub fn random_machine(
    rng: &mut ChaCha8Rng,
    n_states: usize,
    n_inputs: usize,
    n_outputs: usize,
) -> MealyMachine {
    let input = Alphabet::numeric(n_inputs).unwrap();
    let outputs: Vec<String> = (0..n_outputs).map(|i| i.to_string()).collect();
    let states: Vec<String> = (0..n_states).map(|i| format!("s{i}")).collect();
    let rest = 0;
    let mut delta: Vec<Vec<StateId>> = (0..n_states)
        .map(|_| (0..n_inputs).map(|_| rng.gen_range(0..n_states)).collect())
        .collect();
    delta[rest][input.default_sym()] = rest;
    let lambda = (0..n_states)
        .map(|_| (0..n_inputs).map(|_| rng.gen_range(0..n_outputs)).collect())
        .collect();
    MealyMachine::new(input, outputs, states, rest, delta, lambda).unwrap()
}

/// A random finite-support sequence with support contained in
/// `[start_lo, start_hi + max_len)`.
pub fn random_sequence(
    rng: &mut ChaCha8Rng,
    alphabet: &Alphabet,
    max_len: usize,
    start_lo: i64,
    start_hi: i64,
) -> Sequence {
    let len = rng.gen_range(0..=max_len);
    let start = rng.gen_range(start_lo..=start_hi);
    let values = (0..len).map(|_| rng.gen_range(0..alphabet.len())).collect();
    Sequence::from_window(alphabet, start, values).unwrap()
}

pub fn random_window_system(
    rng: &mut ChaCha8Rng,
    n_inputs: usize,
    window: usize,
    n_outputs: usize,
) -> FiniteWindowSystem {
    let input = Alphabet::numeric(n_inputs).unwrap();
    let outputs: Vec<String> = (0..n_outputs).map(|i| i.to_string()).collect();
    let mut picks = Vec::new();
    for _ in 0..n_inputs.pow(window as u32) {
        picks.push(rng.gen_range(0..n_outputs));
    }
    FiniteWindowSystem::from_fn(input, outputs, window, |word| {
        let mut idx = 0usize;
        for &s in word {
            idx = idx * n_inputs + s;
        }
        picks[idx]
    })
    .unwrap()
}

/// A random SISO rational system with numerators in `[-3, 3]` and
/// denominators in `[1, 3]`.
pub fn random_rational_system(rng: &mut ChaCha8Rng, n: usize) -> LinearSystem {
    let entry = |rng: &mut ChaCha8Rng| {
        Rational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=3).into())
    };
    let mat = |rng: &mut ChaCha8Rng, rows: usize, cols: usize| {
        let mut m = RationalMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.get_mut(i, j) = entry(rng);
            }
        }
        m
    };
    LinearSystem::new(mat(rng, n, n), mat(rng, n, 1), mat(rng, 1, n), mat(rng, 1, 1)).unwrap()
}

pub fn random_mod2_system(rng: &mut ChaCha8Rng, n: usize) -> LinearModP {
    let a = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..2)).collect()).collect();
    let b = (0..n).map(|_| rng.gen_range(0..2)).collect();
    let c = (0..n).map(|_| rng.gen_range(0..2)).collect();
    let d = rng.gen_range(0..2);
    LinearModP::new(a, b, c, d, 2).unwrap()
}

pub mod oracle {
    use std::collections::BTreeSet;

    use crate::linear::{LinearSystem, Rational};
    use crate::signal::{Sequence, SymId};
    use crate::system::{LinearModP, MealyMachine, StateId, System};
    use num::Zero;

    /// Output word emitted from state `s` on input word `w`.
    fn outputs_from(m: &MealyMachine, s: StateId, w: &[SymId]) -> Vec<SymId> {
        let mut x = s;
        w.iter()
            .map(|&a| {
                let y = m.emit(a, x);
                x = m.step(a, x);
                y
            })
            .collect()
    }

    fn words(k: usize, max_len: usize) -> Vec<Vec<SymId>> {
        let mut all = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for a in 0..k {
                    let mut w2 = w.clone();
                    w2.push(a);
                    next.push(w2);
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    /// Behavioral classes of `over` computed by O(|X|^2) pairwise comparison
    /// over all input words of length up to `max_len`.
    pub fn distinguishability_classes(
        m: &MealyMachine,
        over: &BTreeSet<StateId>,
        max_len: usize,
    ) -> Vec<Vec<StateId>> {
        let k = m.input_alphabet().len();
        let ws = words(k, max_len);
        let equivalent = |s1: StateId, s2: StateId| {
            ws.iter().all(|w| outputs_from(m, s1, w) == outputs_from(m, s2, w))
        };
        let mut classes: Vec<Vec<StateId>> = Vec::new();
        for &s in over {
            match classes.iter_mut().find(|c| equivalent(c[0], s)) {
                Some(c) => c.push(s),
                None => classes.push(vec![s]),
            }
        }
        classes
    }

    /// The controllable subset by iterated predecessor-closure: repeatedly
    /// drop states with no predecessor among the survivors, keeping exactly
    /// the states with arbitrarily long backward extensions.
    pub fn controllable_pruning_fixpoint(m: &MealyMachine) -> BTreeSet<StateId> {
        let k = m.input_alphabet().len();
        let mut alive: BTreeSet<StateId> = (0..m.state_count()).collect();
        loop {
            let with_pred: BTreeSet<StateId> = alive
                .iter()
                .copied()
                .filter(|&s| {
                    alive.iter().any(|&t| (0..k).any(|a| m.step(a, t) == s))
                })
                .collect();
            if with_pred == alive {
                return alive;
            }
            alive = with_pred;
        }
    }

    /// Rank over GF(p) of the observability-times-reachability product: the
    /// minimal exponent d with p^d Nerode classes for a mod-p linear system.
    pub fn modp_minimal_exponent(sys: &LinearModP) -> usize {
        let p = sys.p();
        let n = sys.dim();
        let (a, b, c, _) = sys.matrices();
        // Obs = [C; CA; ...; CA^{n-1}], Reach = [B, AB, ..., A^{n-1}B]
        let mut obs = Vec::with_capacity(n);
        let mut row: Vec<u64> = c.to_vec();
        for _ in 0..n {
            obs.push(row.clone());
            row = (0..n)
                .map(|j| (0..n).map(|l| row[l] * a[l][j]).sum::<u64>() % p)
                .collect();
        }
        let mut reach_cols = Vec::with_capacity(n);
        let mut col: Vec<u64> = b.to_vec();
        for _ in 0..n {
            reach_cols.push(col.clone());
            col = (0..n)
                .map(|i| (0..n).map(|l| a[i][l] * col[l]).sum::<u64>() % p)
                .collect();
        }
        let product: Vec<Vec<u64>> = obs
            .iter()
            .map(|orow| {
                reach_cols
                    .iter()
                    .map(|rcol| (0..n).map(|l| orow[l] * rcol[l]).sum::<u64>() % p)
                    .collect()
            })
            .collect();
        modp_rank(product, p)
    }

    #[allow(clippy::needless_range_loop)] // double-indexed elimination
    fn modp_rank(mut m: Vec<Vec<u64>>, p: u64) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let inv = |x: u64| -> u64 {
            // p is small; linear scan is fine
            (1..p).find(|&y| x * y % p == 1).expect("nonzero element")
        };
        let mut rank = 0;
        for col in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_multiple_of(p)) else {
                continue;
            };
            m.swap(rank, pr);
            let f = inv(m[rank][col] % p);
            for j in 0..cols {
                m[rank][j] = m[rank][j] * f % p;
            }
            for r in 0..rows {
                if r != rank && !m[r][col].is_multiple_of(p) {
                    let g = m[r][col] % p;
                    for j in 0..cols {
                        m[r][j] = (m[r][j] + (p - g) * m[rank][j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact rank of the observability-times-reachability product, by a
    /// plain elimination written here rather than the library's rref.
    #[allow(clippy::needless_range_loop)] // double-indexed elimination
    pub fn rational_minimal_rank(sys: &LinearSystem) -> usize {
        let obs = sys.observability_matrix();
        let reach = sys.reachability_matrix();
        let prod = obs.mul(&reach).unwrap();
        let mut grid: Vec<Vec<Rational>> = (0..prod.rows())
            .map(|i| (0..prod.cols()).map(|j| prod.get(i, j).clone()).collect())
            .collect();
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| !grid[r][col].is_zero()) else {
                continue;
            };
            grid.swap(rank, pr);
            for r in rank + 1..rows {
                if !grid[r][col].is_zero() {
                    let f = grid[r][col].clone() / grid[rank][col].clone();
                    for j in col..cols {
                        let sub = f.clone() * grid[rank][j].clone();
                        grid[r][j] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Direct evaluation of the Nerode definition restricted to the supplied
    /// continuations `z`: both concatenations produce the same output on
    /// `[0, horizon]` for every `z`.
    pub fn nerode_equivalent_direct(
        sys: &System,
        u1: &Sequence,
        u2: &Sequence,
        continuations: &[Sequence],
        horizon: i64,
    ) -> bool {
        continuations.iter().all(|z| {
            let w1 = u1.concat(z, 0).unwrap();
            let w2 = u2.concat(z, 0).unwrap();
            sys.evaluate(&w1, 0, horizon).unwrap() == sys.evaluate(&w2, 0, horizon).unwrap()
        })
    }
}
