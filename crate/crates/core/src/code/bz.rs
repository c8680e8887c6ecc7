//! Information-set search with Brouwer-Zimmermann lower bounds.
//!
//! The generator is brought into systematic form on greedily chosen,
//! pairwise disjoint column sets. After all messages of weight `<= w` have
//! been enumerated on a set of rank `r`, any codeword not yet seen carries at
//! least `w + 1 - (k - r)` nonzeros on that set. Summing over the sets gives
//! the certified lower bound.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::small::{weight, SmallField};
use super::sweep::generator_bytes;
use super::{DistanceOptions, DistanceResult, LinearCode, Method};
use crate::error::Result;
use crate::field::Elem;
use crate::linalg::Matrix;
use crate::poly::binomial;
use crate::seed::substream_rng;

const CHUNKS: u128 = 256;

/// A generator in systematic form on `rank` of its columns.
struct Systematic {
    rows: Vec<Vec<u8>>,
    rank: usize,
}

/// Reduce `g` with pivots taken in `order`; the first `limit` entries of
/// `order` form the target column set.
fn systematic(g: &Matrix, order: &[usize], limit: usize) -> (Systematic, Vec<usize>) {
    let mut m = g.select_columns(order);
    let pivots = m.rref_in_place();
    let mut rows = vec![vec![0u8; g.cols()]; g.rows()];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, &c) in order.iter().enumerate() {
            row[c] = m[(i, j)].0 as u8;
        }
    }
    let inside: Vec<usize> = pivots
        .iter()
        .filter(|&&p| p < limit)
        .map(|&p| order[p])
        .collect();
    (
        Systematic {
            rows,
            rank: inside.len(),
        },
        inside,
    )
}

fn disjoint_sets(g: &Matrix) -> Vec<Systematic> {
    let n = g.cols();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let used: std::collections::HashSet<usize> = remaining.iter().copied().collect();
        let mut order = remaining.clone();
        order.extend((0..n).filter(|c| !used.contains(c)));
        let (sys, taken) = systematic(g, &order, remaining.len());
        if sys.rank == 0 {
            break;
        }
        remaining.retain(|c| !taken.contains(c));
        out.push(sys);
    }
    out
}

fn messages(k: usize, q: u64, w: usize) -> u128 {
    binomial(k as u64, w as u64).saturating_mul((q as u128 - 1).saturating_pow(w as u32 - 1))
}

/// The `rank`-th `w`-subset of `0..k` in lexicographic order.
fn unrank(k: usize, w: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(w);
    let mut next = 0;
    for left in (1..=w).rev() {
        loop {
            let c = binomial((k - next - 1) as u64, (left - 1) as u64);
            if rank < c {
                break;
            }
            rank -= c;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

fn advance(s: &mut [usize], k: usize) -> bool {
    let w = s.len();
    for i in (0..w).rev() {
        if s[i] < k - w + i {
            s[i] += 1;
            for j in i + 1..w {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Clone)]
struct Best {
    weight: usize,
    index: u128,
    word: Vec<u8>,
}

impl Best {
    fn none() -> Self {
        Best {
            weight: usize::MAX,
            index: u128::MAX,
            word: Vec::new(),
        }
    }

    fn better(&self, other: &Best) -> bool {
        (self.weight, self.index) < (other.weight, other.index)
    }
}

/// Lightest codeword among messages of weight exactly `w` (first nonzero
/// coordinate 1).
fn enumerate_weight(sf: &SmallField, rows: &[Vec<u8>], w: usize) -> Best {
    let k = rows.len();
    let q = sf.order();
    let nz = sf.nonzero();
    let base = (q - 1) as u128;
    let scaled: Vec<Vec<u8>> = rows
        .iter()
        .flat_map(|r| (0..q as u8).map(move |e| sf.scale(e, r)))
        .collect();
    let supports = binomial(k as u64, w as u64);
    let inner = base.pow(w as u32 - 1);
    let chunks = CHUNKS.min(supports);
    let bests: Vec<Best> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = supports * c / chunks;
            let hi = supports * (c + 1) / chunks;
            let mut best = Best::none();
            let mut s = unrank(k, w, lo);
            let mut e = vec![0usize; w];
            for rank in lo..hi {
                let mut acc = rows[s[0]].clone();
                for &r in &s[1..] {
                    sf.add_assign(&mut acc, &scaled[r * q + nz[0] as usize]);
                }
                e.iter_mut().for_each(|x| *x = 0);
                let mut wt = weight(&acc);
                let mut m: u128 = 0;
                loop {
                    if wt < best.weight {
                        best = Best {
                            weight: wt,
                            index: rank * inner + m,
                            word: acc.clone(),
                        };
                    }
                    m += 1;
                    if m == inner {
                        break;
                    }
                    let mut t = 0;
                    let mut x = m;
                    while x.is_multiple_of(base) {
                        x /= base;
                        t += 1;
                    }
                    let slot = t + 1;
                    let old = nz[e[slot]];
                    e[slot] = (e[slot] + 1) % (q - 1);
                    let delta = sf.sub(nz[e[slot]], old);
                    wt = sf.add_assign_weight(&mut acc, &scaled[s[slot] * q + delta as usize]);
                }
                if rank + 1 < hi {
                    advance(&mut s, k);
                }
            }
            best
        })
        .collect();
    bests
        .into_iter()
        .fold(Best::none(), |acc, b| if b.better(&acc) { b } else { acc })
}

fn to_elems(v: &[u8]) -> Vec<Elem> {
    v.iter().map(|&x| Elem(x as u32)).collect()
}

pub(crate) fn search(code: &LinearCode, opts: &DistanceOptions) -> Result<DistanceResult> {
    let field = code.field();
    let sf = SmallField::new(field)?;
    let (q, k, n) = (field.order(), code.dimension(), code.len());
    let g = code.generator();
    let mut work: u128 = 0;

    let mut upper = Best::none();
    for row in generator_bytes(code) {
        let cand = Best {
            weight: weight(&row),
            index: 0,
            word: row,
        };
        if cand.weight < upper.weight {
            upper = cand;
        }
    }
    let mut from_hint = false;
    if let Some(h) = &opts.hint {
        let w = super::weight(h);
        if w < upper.weight {
            upper = Best {
                weight: w,
                index: 0,
                word: h.iter().map(|e| e.0 as u8).collect(),
            };
            from_hint = true;
        }
    }

    let rw = opts.random_weight.clamp(1, k);
    let per_set: u128 = (1..=rw).map(|w| messages(k, q, w)).sum();
    let sets = opts
        .budget
        .checked_div(per_set)
        .map_or(0, |b| (opts.random_sets as u128).min(b) as u64);
    if sets > 0 {
        let found: Vec<(u64, Best)> = (0..sets)
            .into_par_iter()
            .map(|i| {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut substream_rng(opts.seed, i));
                let (sys, _) = systematic(g, &order, n);
                let mut best = Best::none();
                for w in 1..=rw {
                    let b = enumerate_weight(&sf, &sys.rows, w);
                    if b.weight < best.weight {
                        best = b;
                    }
                }
                (i, best)
            })
            .collect();
        work += per_set * sets as u128;
        for (_, b) in found {
            if b.weight < upper.weight {
                upper = b;
                from_hint = false;
            }
        }
    }

    let mats = disjoint_sets(g);
    let mut levels = vec![0usize; mats.len()];
    let lower_of = |levels: &[usize]| -> usize {
        mats.iter()
            .zip(levels)
            .map(|(m, &l)| (l + 1).saturating_sub(k - m.rank))
            .sum::<usize>()
            .max(1)
    };
    let mut lower = lower_of(&levels);
    'levels: for w in 1..=k {
        for j in 0..mats.len() {
            if lower >= upper.weight {
                break 'levels;
            }
            let cost = messages(k, q, w);
            if work.saturating_add(cost) > opts.budget {
                break 'levels;
            }
            let b = enumerate_weight(&sf, &mats[j].rows, w);
            work += cost;
            if b.weight < upper.weight {
                upper = b;
                from_hint = false;
            }
            levels[j] = w;
            lower = lower_of(&levels);
        }
    }
    // Every message enumerated on a full-rank set means every codeword seen.
    if mats
        .iter()
        .zip(&levels)
        .any(|(m, &l)| m.rank == k && l == k)
    {
        lower = upper.weight;
    }
    let lower = lower.min(upper.weight);
    let exact = lower == upper.weight;
    Ok(DistanceResult {
        lower,
        upper: upper.weight,
        exact,
        witness: to_elems(&upper.word),
        method: if from_hint && !exact {
            Method::GeometricWitness
        } else {
            Method::InformationSet
        },
        work,
    })
}
