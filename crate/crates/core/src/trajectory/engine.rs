//! Exact sumset expansion on integer tuples.
//!
//! Level `n` holds `m * d^(n-1) * T_n` where `d` is the common denominator of the
//! matrix and `A = d * M` is integral, so `T_(n+1) = d * T_n + A^n * [-m, m]^N`.

use rayon::prelude::*;
use rustc_hash::FxHashSet;

/// Candidate sums generated per block before they are merged into the shard sets.
const BLOCK_CANDIDATES: usize = 1 << 22;
/// Each level is split by a fixed hash into this many sets; small sets stay cache-resident.
/// Parallel workers each take a contiguous range of shards, so counts never depend on the worker count.
const SHARDS: usize = 256;

pub(crate) enum Stop {
    Overflow(usize),
}

pub(crate) struct Outcome {
    pub counts: Vec<u64>,
    pub exhausted_at: Option<usize>,
    /// Final level as scaled integer tuples, kept only on request.
    pub last: Option<Vec<Vec<i64>>>,
}

pub(crate) struct Job<'a> {
    pub a: &'a [Vec<i64>],
    pub d: i64,
    pub m: i64,
    pub n_max: usize,
    pub budget: usize,
    pub partitions: usize,
    pub keep_points: bool,
}

fn apply<const N: usize>(a: &[[i64; N]; N], v: &[i64; N]) -> Option<[i64; N]> {
    let mut out = [0i64; N];
    for (o, row) in out.iter_mut().zip(a) {
        let mut s = 0i64;
        for (x, y) in row.iter().zip(v) {
            s = s.checked_add(x.checked_mul(*y)?)?;
        }
        *o = s;
    }
    Some(out)
}

fn grid<const N: usize>(m: i64) -> Vec<[i64; N]> {
    let mut out = vec![[0i64; N]];
    for i in 0..N {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-m..=m).map(move |c| {
                    let mut q = p;
                    q[i] = c;
                    q
                })
            })
            .collect();
    }
    out
}

/// Shard selector, independent of the set's own hasher.
fn shard_of<const N: usize>(p: &[i64; N]) -> usize {
    let mut h = 0x9e37_79b9_7f4a_7c15u64;
    for &x in p {
        h ^= x as u64;
        h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h ^= h >> 31;
    }
    (h >> 56) as usize % SHARDS
}

enum Expand<const N: usize> {
    Done(Vec<[i64; N]>),
    Exhausted,
    Overflow,
}

fn expand<const N: usize>(level: &[[i64; N]], gens: &[[i64; N]], d: i64, budget: usize, parts: usize) -> Expand<N> {
    let mut sets: Vec<FxHashSet<[i64; N]>> = (0..SHARDS).map(|_| FxHashSet::default()).collect();
    let mut buckets: Vec<Vec<[i64; N]>> = vec![Vec::new(); SHARDS];
    let block = (BLOCK_CANDIDATES / gens.len().max(1)).max(1);
    for chunk in level.chunks(block) {
        for t in chunk {
            let mut base = [0i64; N];
            for (b, x) in base.iter_mut().zip(t) {
                match x.checked_mul(d) {
                    Some(v) => *b = v,
                    None => return Expand::Overflow,
                }
            }
            for g in gens {
                let mut p = base;
                for (x, y) in p.iter_mut().zip(g) {
                    match x.checked_add(*y) {
                        Some(v) => *x = v,
                        None => return Expand::Overflow,
                    }
                }
                buckets[shard_of(&p)].push(p);
            }
        }
        let merge = |(s, b): (&mut FxHashSet<[i64; N]>, &mut Vec<[i64; N]>)| s.extend(b.drain(..));
        if parts == 1 {
            sets.iter_mut().zip(buckets.iter_mut()).for_each(merge);
        } else {
            sets.par_iter_mut()
                .zip(buckets.par_iter_mut())
                .with_min_len(SHARDS.div_ceil(parts))
                .for_each(merge);
        }
        if sets.iter().map(|s| s.len()).sum::<usize>() > budget {
            return Expand::Exhausted;
        }
    }
    Expand::Done(sets.into_iter().flatten().collect())
}

fn run_fixed<const N: usize>(job: &Job<'_>) -> Result<Outcome, Stop> {
    let mut a = [[0i64; N]; N];
    for (row, src) in a.iter_mut().zip(job.a) {
        row.copy_from_slice(src);
    }
    // `raw[k]` tracks A^n applied to the k-th grid vector.
    let mut raw = grid::<N>(job.m);
    let mut level = raw.clone();
    let mut counts = vec![level.len() as u64];
    let mut exhausted_at = None;
    for n in 1..job.n_max {
        raw = raw
            .iter()
            .map(|c| apply(&a, c))
            .collect::<Option<Vec<_>>>()
            .ok_or(Stop::Overflow(n + 1))?;
        let mut gens = raw.clone();
        gens.sort_unstable();
        gens.dedup();
        match expand(&level, &gens, job.d, job.budget, job.partitions) {
            Expand::Done(next) => {
                counts.push(next.len() as u64);
                level = next;
            }
            Expand::Exhausted => {
                exhausted_at = Some(n + 1);
                break;
            }
            Expand::Overflow => return Err(Stop::Overflow(n + 1)),
        }
    }
    let last = job.keep_points.then(|| level.iter().map(|p| p.to_vec()).collect());
    Ok(Outcome {
        counts,
        exhausted_at,
        last,
    })
}

pub(crate) fn run(job: &Job<'_>) -> Result<Outcome, Stop> {
    match job.a.len() {
        1 => run_fixed::<1>(job),
        2 => run_fixed::<2>(job),
        3 => run_fixed::<3>(job),
        4 => run_fixed::<4>(job),
        5 => run_fixed::<5>(job),
        6 => run_fixed::<6>(job),
        7 => run_fixed::<7>(job),
        8 => run_fixed::<8>(job),
        n => unreachable!("dimension {n} rejected by caller"),
    }
}

/// `|E + A^(n-1) E|` at scale `m * d^(n-1)`, for `n = 1..=n_max`.
pub(crate) fn minor_counts(a: &[Vec<i64>], d: i64, m: i64, n_max: usize) -> Result<Vec<u64>, Stop> {
    let dim = a.len();
    let mut e: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..dim {
        e = e
            .into_iter()
            .flat_map(|p| {
                (-m..=m).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    let mut raw = e.clone();
    let mut dpow = 1i64;
    let mut counts = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            dpow = dpow.checked_mul(d).ok_or(Stop::Overflow(n))?;
            for v in raw.iter_mut() {
                let mut out = vec![0i64; dim];
                for (o, row) in out.iter_mut().zip(a) {
                    let mut s = 0i64;
                    for (x, y) in row.iter().zip(v.iter()) {
                        s = x
                            .checked_mul(*y)
                            .and_then(|t| s.checked_add(t))
                            .ok_or(Stop::Overflow(n))?;
                    }
                    *o = s;
                }
                *v = out;
            }
        }
        let mut set: FxHashSet<Vec<i64>> = FxHashSet::default();
        for c in &e {
            for g in &raw {
                let p = c
                    .iter()
                    .zip(g)
                    .map(|(x, y)| x.checked_mul(dpow).and_then(|t| t.checked_add(*y)))
                    .collect::<Option<Vec<_>>>()
                    .ok_or(Stop::Overflow(n))?;
                set.insert(p);
            }
        }
        counts.push(set.len() as u64);
    }
    Ok(counts)
}
