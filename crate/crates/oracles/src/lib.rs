//! Slow, independent reference computations for cross-checking fusionkit.
//!
//! Nothing here shares code with the main crate: partitions are counted by
//! enumeration, spectral radii come from exact characteristic polynomials
//! and Sturm sequences, and subgroups from closure tests over every subset.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of partitions of `n`, by enumerating them.
pub fn partition_count(n: u32) -> u64 {
    fn count(n: u32, max_part: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).map(|k| count(n - k, k)).sum()
    }
    count(n, n)
}

/// `det(xI − A)` by Faddeev–LeVerrier in exact integers, lowest degree first.
pub fn characteristic_polynomial(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    let a: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        c[n - k] = -tr / BigInt::from(k);
    }
    c
}

/// Integer polynomial, lowest degree first, no trailing zeros except for 0.
type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
    p
}

fn is_zero_poly(p: &Poly) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Divides out the positive content.
fn primitive(p: Poly) -> Poly {
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![BigInt::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Remainder of `a` by `b` up to a positive factor.
fn remainder(a: &Poly, b: &Poly) -> Poly {
    let db = b.len() - 1;
    let lead = &b[db];
    let scale = lead.abs();
    let mut r = trim(a.clone());
    while !is_zero_poly(&r) && r.len() > db {
        let dr = r.len() - 1;
        // r <- |lc b|·r − sign(lc b)·lc(r)·x^{dr−db}·b
        let f = if lead.is_positive() {
            r[dr].clone()
        } else {
            -r[dr].clone()
        };
        for c in r.iter_mut() {
            *c *= &scale;
        }
        for i in 0..=db {
            r[dr - db + i] -= &f * &b[i];
        }
        r.pop();
        if r.is_empty() {
            return vec![BigInt::zero()];
        }
        r = trim(r);
    }
    primitive(r)
}

/// Sign of `p(num/den)` for `den > 0`, via `den^deg · p(num/den)`.
fn sign_at(p: &Poly, num: &BigInt, den: &BigInt) -> i8 {
    let d = p.len() - 1;
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    // Horner in the homogeneous form: Σ c_i num^i den^(d-i)
    for (i, c) in p.iter().enumerate().rev() {
        acc = acc * num + c * &den_pow;
        if i > 0 {
            den_pow *= den;
        }
        let _ = d;
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn sign_changes(seq: &[Poly], num: &BigInt, den: &BigInt) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| sign_at(p, num, den))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Largest eigenvalue of a symmetric integer matrix, isolated by bisection
/// on Sturm sign counts of the characteristic polynomial.
pub fn largest_eigenvalue(a: &[Vec<i64>]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let cp = primitive(characteristic_polynomial(a));
    let mut seq = vec![cp.clone(), primitive(derivative(&cp))];
    loop {
        let r = remainder(&seq[seq.len() - 2], &seq[seq.len() - 1]);
        if is_zero_poly(&r) {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let bound: i64 = a
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<i64>())
        .max()
        .unwrap_or(0)
        + 1;
    // points ≡ −1/3 mod dyadics: never an integer, so never an eigenvalue
    let mut den = BigInt::from(3);
    let mut lo = BigInt::from(-3 * bound - 1);
    let mut hi = BigInt::from(3 * bound + 2);
    let v_hi = sign_changes(&seq, &hi, &den);
    for _ in 0..80 {
        lo *= 2;
        hi *= 2;
        den *= 2;
        let mid: BigInt = (&lo + &hi) / 2;
        if sign_changes(&seq, &mid, &den) > v_hi {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = BigRational::new(lo + hi, den * 2);
    num_traits::ToPrimitive::to_f64(&mid).expect("finite")
}

/// Perron root of a nonnegative symmetric integer matrix (its largest eigenvalue).
pub fn spectral_radius(a: &[Vec<u64>]) -> f64 {
    let signed: Vec<Vec<i64>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    largest_eigenvalue(&signed)
}

/// Symmetric matrices with entries in `0..=max_entry`, sizes `1..=max_size`,
/// about a third of the off-diagonal entries nonzero.
pub fn random_symmetric_matrices(
    count: usize,
    max_size: usize,
    max_entry: u64,
    seed: u64,
) -> Vec<Vec<Vec<u64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_size);
            let mut m = vec![vec![0u64; n]; n];
            for i in 0..n {
                for j in i..n {
                    if rng.gen_bool(0.35) {
                        let x = rng.gen_range(1..=max_entry);
                        m[i][j] = x;
                        m[j][i] = x;
                    }
                }
            }
            m
        })
        .collect()
}

/// Every subset of a group table (order ≤ 20) that contains the identity and
/// is closed under the product, as sorted element lists.
pub fn subgroups_by_subsets(table: &[Vec<usize>], identity: usize) -> Vec<Vec<usize>> {
    let n = table.len();
    assert!(n <= 20, "subset oracle is exponential");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask >> identity & 1 == 0 {
            continue;
        }
        let els: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let closed = els
            .iter()
            .all(|&a| els.iter().all(|&b| mask >> table[a][b] & 1 == 1));
        if closed {
            out.push(els);
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// `x H x⁻¹ = H` for every `x`, with inverses found by search.
pub fn is_normal(table: &[Vec<usize>], identity: usize, h: &[usize]) -> bool {
    let n = table.len();
    let inv = |x: usize| (0..n).find(|&y| table[x][y] == identity).expect("inverse");
    (0..n).all(|x| {
        let mut conj: Vec<usize> = h.iter().map(|&e| table[table[x][e]][inv(x)]).collect();
        conj.sort_unstable();
        conj == h
    })
}
