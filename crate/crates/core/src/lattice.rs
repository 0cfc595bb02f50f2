//! Integral lattices given by a Gram matrix: exact validation, dual-coset
//! arithmetic and enumeration of coset vectors below a norm bound.
//!
//! Coset vectors are written in the lattice basis, so `mu` is a rational
//! coordinate vector and `(mu, nu) = mu^T G nu`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub const MAX_RANK: usize = 8;

#[derive(Clone, Debug)]
pub struct Gram {
    entries: Vec<Vec<i64>>,
    det: i64,
    inverse: Vec<Vec<BigRational>>,
}

impl Gram {
    /// Checks shape, symmetry and positive definiteness. Evenness is left to
    /// the caller (theta series accept odd lattices).
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty gram matrix".into()));
        }
        if n > MAX_RANK {
            return Err(Error::RankUnsupported(n));
        }
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "gram matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let (det, inverse) = pivots_and_inverse(&entries)?;
        Ok(Gram {
            entries,
            det,
            inverse,
        })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `|L°/L|`.
    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.entries[i][i] % 2 == 0)
    }

    pub fn require_even(&self) -> Result<()> {
        match (0..self.rank()).find(|&i| self.entries[i][i] % 2 != 0) {
            Some(i) => Err(Error::NotEvenLattice(format!(
                "diagonal entry {i} is {}",
                self.entries[i][i]
            ))),
            None => Ok(()),
        }
    }

    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = BigRational::zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let g = self.entries[i][j];
                if g != 0 {
                    acc += ui.as_big() * vj.as_big() * BigRational::from_integer(g.into());
                }
            }
        }
        acc.into()
    }

    /// `mu` lies in the dual lattice iff `G mu` is integral.
    pub fn is_in_dual(&self, mu: &[Rational]) -> bool {
        (0..self.rank()).all(|i| {
            let row: BigRational = mu
                .iter()
                .enumerate()
                .map(|(j, m)| m.as_big() * BigRational::from_integer(self.entries[i][j].into()))
                .sum();
            row.is_integer()
        })
    }

    /// Integer half-widths `b_i` with `|scale * x_i| <= b_i` for every real
    /// `x` of norm at most `norm_bound`, from `x_i^2 <= norm_bound (G^-1)_ii`.
    pub fn coordinate_bounds(&self, norm_bound: &Rational, scale: &BigInt) -> Vec<i64> {
        let s2 = BigRational::from_integer(scale * scale);
        (0..self.rank())
            .map(|i| {
                let x = norm_bound.as_big() * &self.inverse[i][i] * &s2;
                let fl = x.floor().to_integer();
                if fl.is_negative() {
                    0
                } else {
                    // floor(sqrt(x)) == floor(sqrt(floor(x)))
                    fl.sqrt().to_i64().unwrap_or(i64::MAX)
                }
            })
            .collect()
    }

    /// Calls `visit` with `D^2 * (alpha, alpha)` for every `alpha` in
    /// `mu + L` with `(alpha, alpha) <= norm_bound`, where `D` is the common
    /// denominator of `mu` (returned).
    pub fn for_each_coset_vector(
        &self,
        mu: &[Rational],
        norm_bound: &Rational,
        mut visit: impl FnMut(i128),
    ) -> Result<i128> {
        let n = self.rank();
        if mu.len() != n {
            return Err(Error::InvalidCoset(format!(
                "vector has {} coordinates, lattice rank is {n}",
                mu.len()
            )));
        }
        let d_big = Rational::common_denominator(mu);
        let d = d_big
            .to_i128()
            .ok_or_else(|| Error::InvalidCoset("denominator too large".into()))?;
        let scaled: Vec<i128> = mu
            .iter()
            .map(|m| {
                (m.numer() * (&d_big / m.denom()))
                    .to_i128()
                    .ok_or_else(|| Error::InvalidCoset("coordinate too large".into()))
            })
            .collect::<Result<_>>()?;
        let bounds = self.coordinate_bounds(norm_bound, &d_big);
        // w_i = D (mu_i + m_i) must satisfy |w_i| <= b_i
        let ranges: Vec<(i128, i128)> = (0..n)
            .map(|i| {
                let b = bounds[i] as i128;
                let lo = div_ceil(-b - scaled[i], d);
                let hi = div_floor(b - scaled[i], d);
                (lo, hi)
            })
            .collect();
        let bound_scaled = (norm_bound.as_big() * BigRational::from_integer(BigInt::from(d * d)))
            .floor()
            .to_integer()
            .to_i128()
            .unwrap_or(i128::MAX);
        if ranges.iter().any(|(lo, hi)| lo > hi) {
            return Ok(d);
        }
        let g: Vec<Vec<i128>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut m: Vec<i128> = ranges.iter().map(|r| r.0).collect();
        let mut w = vec![0i128; n];
        loop {
            for i in 0..n {
                w[i] = scaled[i] + d * m[i];
            }
            let mut q = 0i128;
            for i in 0..n {
                let mut row = 0i128;
                for j in 0..n {
                    row += g[i][j] * w[j];
                }
                q += w[i] * row;
            }
            if q <= bound_scaled {
                visit(q);
            }
            // odometer
            let mut k = 0;
            loop {
                if k == n {
                    return Ok(d);
                }
                if m[k] < ranges[k].1 {
                    m[k] += 1;
                    break;
                }
                m[k] = ranges[k].0;
                k += 1;
            }
        }
    }

    /// Minimal norm `(alpha, alpha)` over the coset `mu + L`.
    pub fn min_norm(&self, mu: &[Rational]) -> Result<Rational> {
        let reduced: Vec<Rational> = mu.iter().map(|m| m.fract_positive()).collect();
        let start = self.inner(&reduced, &reduced);
        let mut best: Option<i128> = None;
        let d = self.for_each_coset_vector(mu, &start, |q| {
            best = Some(best.map_or(q, |b| b.min(q)));
        })?;
        let best = best.expect("reduced representative lies inside its own bound");
        Rational::from_big(BigInt::from(best), BigInt::from(d * d))
    }

    /// Representatives of `L°/L` in lattice coordinates, each reduced to
    /// `[0,1)` per coordinate, sorted (so zero comes first).
    pub fn discriminant_cosets(&self) -> Result<Vec<Vec<Rational>>> {
        let n = self.rank();
        let det = self.det as u64;
        if (det as f64).powi(n as i32) > 1e6 {
            return Err(Error::OutOfRange(format!(
                "discriminant enumeration too large (det {det}, rank {n})"
            )));
        }
        // L° = G⁻¹ Zⁿ, and G⁻¹x mod Zⁿ depends only on x mod det
        let mut reps: Vec<Vec<Rational>> = Vec::new();
        let mut x = vec![0u64; n];
        loop {
            let mu: Vec<Rational> = (0..n)
                .map(|i| {
                    let v = (0..n).fold(BigRational::zero(), |acc, j| {
                        acc + &self.inverse[i][j] * BigRational::from_integer(BigInt::from(x[j]))
                    });
                    Rational::from(v).fract_positive()
                })
                .collect();
            if !reps.contains(&mu) {
                reps.push(mu);
            }
            let mut k = 0;
            loop {
                if k == n {
                    reps.sort();
                    return Ok(reps);
                }
                x[k] += 1;
                if x[k] < det {
                    break;
                }
                x[k] = 0;
                k += 1;
            }
        }
    }

    /// Index of the class of `mu` in `reps` modulo the lattice, if any.
    pub fn find_class(reps: &[Vec<Rational>], mu: &[Rational]) -> Option<usize> {
        reps.iter().position(|r| {
            r.len() == mu.len() && r.iter().zip(mu).all(|(a, b)| (a - b).is_integer())
        })
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// Gaussian elimination without pivoting. Every pivot of a positive definite
/// matrix is positive (ratio of consecutive leading minors), so a
/// non-positive pivot is a certificate of failure.
fn pivots_and_inverse(g: &[Vec<i64>]) -> Result<(i64, Vec<Vec<BigRational>>)> {
    let n = g.len();
    let mut a: Vec<Vec<BigRational>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let mut det = BigRational::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if !pivot.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        det *= &pivot;
        for x in a[k].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in 0..2 * n {
                    let t = &a[k][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
    }
    let det = det
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidInput("determinant too large".into()))?;
    let inverse = a.into_iter().map(|r| r[n..].to_vec()).collect();
    Ok((det, inverse))
}
