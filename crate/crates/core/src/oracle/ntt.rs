//! Number-theoretic transform over three word-sized primes.
//!
//! A non-negative integer below the product of some of the moduli is zero
//! exactly when its residues under them are all zero, which is all the
//! wildcard matcher needs.

use std::sync::OnceLock;

/// `(modulus, primitive root, log2 of the largest supported length)`.
pub(crate) const PRIMES: [(u64, u64, u32); 3] = [(P0, 3, 23), (P1, 3, 25), (P2, 3, 26)];

pub(crate) const P0: u64 = 998_244_353;
pub(crate) const P1: u64 = 167_772_161;
pub(crate) const P2: u64 = 469_762_049;

/// Largest transform length every modulus supports.
pub(crate) const MAX_LEN: usize = 1 << 23;

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Twiddle factors of one modulus, forward and inverse.
pub(crate) struct Field {
    pub(crate) p: u64,
    /// `step[s]` is a primitive `2^s`-th root of unity.
    step: Vec<u64>,
    inv_step: Vec<u64>,
    /// `len_inv[s]` is the inverse of `2^s`.
    len_inv: Vec<u64>,
    /// For stages of half-length `h <= TABLE_HALF`, the powers `w^0..w^h` sit at `table[h..2h]`.
    table: Vec<u64>,
    inv_table: Vec<u64>,
}

const TABLE_HALF: usize = 1 << 12;

impl Field {
    fn new(p: u64, root: u64, lg: u32) -> Self {
        let step: Vec<u64> = (0..=lg).map(|s| pow_mod(root, (p - 1) >> s, p)).collect();
        let inv_step: Vec<u64> = step.iter().map(|&w| pow_mod(w, p - 2, p)).collect();
        let len_inv = (0..=lg).map(|s| pow_mod(1 << s, p - 2, p)).collect();
        let tabulate = |steps: &[u64]| {
            let mut t = vec![0; 2 * TABLE_HALF];
            let mut h = 1;
            let mut s = 1;
            while h <= TABLE_HALF {
                let mut w = 1;
                for x in &mut t[h..2 * h] {
                    *x = w;
                    w = w * steps[s] % p;
                }
                h <<= 1;
                s += 1;
            }
            t
        };
        let table = tabulate(&step);
        let inv_table = tabulate(&inv_step);
        Field {
            p,
            step,
            inv_step,
            len_inv,
            table,
            inv_table,
        }
    }
}

/// The fields of [`PRIMES`], built on first use.
pub(crate) fn fields() -> &'static [Field] {
    static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        PRIMES
            .iter()
            .map(|&(p, g, lg)| Field::new(p, g, lg))
            .collect()
    })
}

/// In-place transform; `a.len()` must be a power of two no larger than [`MAX_LEN`].
///
/// The forward transform leaves its output in bit-reversed order and the
/// inverse expects that order, so pointwise products between them need no
/// permutation.
#[cfg(test)]
fn transform(a: &mut [u64], f: &Field, inverse: bool) {
    match f.p {
        P0 => transform_mod::<P0>(a, f, inverse),
        P1 => transform_mod::<P1>(a, f, inverse),
        P2 => transform_mod::<P2>(a, f, inverse),
        _ => unreachable!("unknown modulus"),
    }
}

pub(crate) fn transform_mod<const P: u64>(a: &mut [u64], f: &Field, inverse: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two() && n <= MAX_LEN && f.p == P);
    if n == 1 {
        return;
    }
    let lg = n.trailing_zeros() as usize;
    if inverse {
        for s in 1..=lg {
            stage::<P, true>(a, 1 << (s - 1), f.inv_step[s], &f.inv_table);
        }
        let n_inv = f.len_inv[lg];
        for x in a.iter_mut() {
            *x = mul::<P>(*x, n_inv);
        }
    } else {
        for s in (1..=lg).rev() {
            stage::<P, false>(a, 1 << (s - 1), f.step[s], &f.table);
        }
    }
}

/// One layer of butterflies of half-width `half`; `DIT` picks the
/// decimation-in-time form used by the inverse.
#[inline(always)]
fn stage<const P: u64, const DIT: bool>(a: &mut [u64], half: usize, root: u64, table: &[u64]) {
    let fly = |x: &mut u64, y: &mut u64, w: u64| {
        if DIT {
            let u = *x;
            let v = mul::<P>(*y, w);
            *x = add::<P>(u, v);
            *y = sub::<P>(u, v);
        } else {
            let (u, v) = (*x, *y);
            *x = add::<P>(u, v);
            *y = mul::<P>(sub::<P>(u, v), w);
        }
    };
    if half == 1 {
        for pair in a.chunks_exact_mut(2) {
            let (u, v) = (pair[0], pair[1]);
            pair[0] = add::<P>(u, v);
            pair[1] = sub::<P>(u, v);
        }
    } else if half <= TABLE_HALF {
        let tw = &table[half..2 * half];
        for chunk in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                fly(x, y, w);
            }
        }
    } else {
        for chunk in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            let mut w = 1;
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                fly(x, y, w);
                w = mul::<P>(w, root);
            }
        }
    }
}

// Operands are reduced residues below 2^30. `add` and `sub` wrap on purpose
// and keep whichever candidate landed in `0..P`.

#[inline(always)]
pub(crate) fn add<const P: u64>(u: u64, v: u64) -> u64 {
    let s = u.wrapping_add(v);
    s.min(s.wrapping_sub(P))
}

#[inline(always)]
pub(crate) fn sub<const P: u64>(u: u64, v: u64) -> u64 {
    let d = u.wrapping_sub(v);
    d.min(d.wrapping_add(P))
}

#[inline(always)]
pub(crate) fn mul<const P: u64>(u: u64, v: u64) -> u64 {
    u.wrapping_mul(v) % P
}
