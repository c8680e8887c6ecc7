//! Exhaustive sweep over one representative of every projective message.
//!
//! Messages whose first nonzero coordinate is 1 are grouped by the position
//! of that coordinate. Inside a group the remaining coordinates, written as
//! base-`p` digits, follow a modular Gray code, so consecutive codewords
//! differ by a single basis multiple of one generator row.

use rayon::prelude::*;
use serde::Serialize;

use super::small::{weight, SmallField};
use super::LinearCode;
use crate::error::{Error, Result};
use crate::field::Elem;

const CHUNKS: u64 = 256;

#[derive(Clone, Debug)]
pub(crate) struct Sweep {
    pub min_weight: usize,
    /// The first minimum-weight codeword in enumeration order.
    pub witness: Vec<Elem>,
    /// Codewords of each weight, one per projective class.
    pub histogram: Vec<u64>,
    pub work: u128,
}

pub(crate) fn generator_bytes(code: &LinearCode) -> Vec<Vec<u8>> {
    let g = code.generator();
    (0..g.rows())
        .map(|i| g.row(i).iter().map(|e| e.0 as u8).collect())
        .collect()
}

struct Local {
    best: usize,
    best_index: u64,
    word: Vec<u8>,
    hist: Vec<u64>,
}

impl Local {
    fn new(n: usize) -> Self {
        Local {
            best: usize::MAX,
            best_index: u64::MAX,
            word: Vec::new(),
            hist: vec![0; n + 1],
        }
    }

    #[inline]
    fn record(&mut self, w: usize, index: u64, acc: &[u8]) {
        self.hist[w] += 1;
        if w < self.best {
            self.best = w;
            self.best_index = index;
            self.word = acc.to_vec();
        }
    }
}

struct Group<'a> {
    lead: usize,
    digits: usize,
    steps: Vec<Vec<u8>>,
    rows: &'a [Vec<u8>],
}

impl Group<'_> {
    fn start(&self, sf: &SmallField, ext: usize, m: u64) -> Vec<u8> {
        let p = sf.characteristic();
        let mut d = vec![0u64; self.digits + 1];
        let mut x = m;
        for slot in d.iter_mut().take(self.digits) {
            *slot = x % p;
            x /= p;
        }
        let mut acc = self.rows[self.lead].clone();
        let free = self.digits / ext;
        for i in 0..free {
            let mut c = 0u64;
            for u in (0..ext).rev() {
                let t = i * ext + u;
                c = c * p + (d[t] + p - d[t + 1]) % p;
            }
            if c != 0 {
                sf.add_assign(&mut acc, &sf.scale(c as u8, &self.rows[self.lead + 1 + i]));
            }
        }
        acc
    }
}

fn trailing_digit(mut m: u64, p: u64) -> usize {
    if p == 2 {
        return m.trailing_zeros() as usize;
    }
    let mut t = 0;
    while m.is_multiple_of(p) {
        m /= p;
        t += 1;
    }
    t
}

/// Projective message count `(q^k - 1) / (q - 1)`.
pub(crate) fn projective_messages(q: u64, k: usize) -> u128 {
    (0..k).fold(0u128, |acc, _| {
        acc.saturating_mul(q as u128).saturating_add(1)
    })
}

pub(crate) fn sweep(code: &LinearCode, budget: u128) -> Result<Sweep> {
    let field = code.field();
    let sf = SmallField::new(field)?;
    let (q, k, n) = (field.order(), code.dimension(), code.len());
    let total = projective_messages(q, k);
    if total > budget || total > u64::MAX as u128 {
        return Err(Error::budget("exhaustive codeword sweep", total, budget));
    }
    let total = total as u64;
    let ext = field.degree() as usize;
    let p = sf.characteristic();
    let rows = generator_bytes(code);
    let groups: Vec<Group> = (0..k)
        .map(|lead| {
            let free = k - 1 - lead;
            let steps = (0..free * ext)
                .map(|t| sf.scale(p.pow((t % ext) as u32) as u8, &rows[lead + 1 + t / ext]))
                .collect();
            Group {
                lead,
                digits: free * ext,
                steps,
                rows: &rows,
            }
        })
        .collect();
    // Global index = group offset + counter inside the group.
    let mut offsets = Vec::with_capacity(k + 1);
    let mut acc = 0u64;
    for lead in 0..k {
        offsets.push(acc);
        acc += q.pow((k - 1 - lead) as u32);
    }
    offsets.push(acc);

    let chunks = CHUNKS.min(total);
    let locals: Vec<Local> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = total * c / chunks;
            let hi = total * (c + 1) / chunks;
            let mut local = Local::new(n);
            for (lead, g) in groups.iter().enumerate() {
                let (a, b) = (offsets[lead].max(lo), offsets[lead + 1].min(hi));
                if a >= b {
                    continue;
                }
                let (ma, mb) = (a - offsets[lead], b - offsets[lead]);
                let mut word = g.start(&sf, ext, ma);
                local.record(weight(&word), a, &word);
                for m in ma + 1..mb {
                    let w = sf.add_assign_weight(&mut word, &g.steps[trailing_digit(m, p)]);
                    local.record(w, offsets[lead] + m, &word);
                }
            }
            local
        })
        .collect();

    let mut histogram = vec![0u64; n + 1];
    let mut best: Option<&Local> = None;
    for l in &locals {
        for (h, v) in histogram.iter_mut().zip(&l.hist) {
            *h += v;
        }
        if best.is_none_or(|b| (l.best, l.best_index) < (b.best, b.best_index)) {
            best = Some(l);
        }
    }
    let best = best.expect("nonempty code");
    Ok(Sweep {
        min_weight: best.best,
        witness: best.word.iter().map(|&x| Elem(x as u32)).collect(),
        histogram,
        work: total as u128,
    })
}

/// Number of codewords of each weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEnumerator {
    /// `A_0, ..., A_n`.
    pub coefficients: Vec<u64>,
}

impl WeightEnumerator {
    pub fn total(&self) -> u128 {
        self.coefficients.iter().map(|&a| a as u128).sum()
    }

    /// Smallest positive weight that occurs.
    pub fn min_distance(&self) -> Option<usize> {
        self.coefficients
            .iter()
            .skip(1)
            .position(|&a| a > 0)
            .map(|i| i + 1)
    }
}

/// Full weight distribution; `budget` bounds the number of projective
/// messages enumerated.
pub fn weight_enumerator(code: &LinearCode, budget: u128) -> Result<WeightEnumerator> {
    let sw = sweep(code, budget)?;
    let scale = code.field().order() - 1;
    let mut coefficients: Vec<u64> = sw.histogram.iter().map(|&h| h * scale).collect();
    coefficients[0] = 1;
    Ok(WeightEnumerator { coefficients })
}
