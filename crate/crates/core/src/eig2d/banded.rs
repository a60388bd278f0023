//! Symmetric band matrices in lower storage: Cholesky solves, LDLᵀ inertia, products.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{Error, Result};

/// Lower band of a symmetric n×n matrix with half-bandwidth kd.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSym {
    n: usize,
    kd: usize,
    // row i holds columns i−kd ..= i at offsets 0 ..= kd
    data: Vec<f64>,
}

impl BandedSym {
    pub fn zeros(n: usize, kd: usize) -> Self {
        Self { n, kd, data: vec![0.0; n * (kd + 1)] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.kd
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.kd + 1) + (j + self.kd - i)
    }

    /// Entry (i, j) for any order of i, j.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        if i - j > self.kd {
            0.0
        } else {
            self.data[self.idx(i, j)]
        }
    }

    /// Sets (i, j) and (j, i); |i − j| must not exceed kd.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        debug_assert!(i - j <= self.kd);
        let k = self.idx(i, j);
        self.data[k] = v;
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        let kd = self.kd;
        for v in y.iter_mut() {
            *v = 0.0;
        }
        for i in 0..self.n {
            let lo = i.saturating_sub(kd);
            let row = &self.data[i * (kd + 1)..(i + 1) * (kd + 1)];
            let mut acc = 0.0;
            for j in lo..i {
                let a = row[j + kd - i];
                acc += a * x[j];
                y[j] += a * x[i];
            }
            y[i] += acc + row[kd] * x[i];
        }
    }

    /// Largest absolute row sum: an upper bound for ‖A‖₂.
    pub fn norm_inf(&self) -> f64 {
        let mut best: f64 = 0.0;
        for i in 0..self.n {
            let lo = i.saturating_sub(self.kd);
            let hi = (i + self.kd).min(self.n - 1);
            let s: f64 = (lo..=hi).map(|j| self.get(i, j).abs()).sum();
            best = best.max(s);
        }
        best
    }

    /// Cholesky factor L (A = L Lᵀ) in the same storage.
    pub fn cholesky(&self) -> Result<BandCholesky> {
        let kd = self.kd;
        let w = kd + 1;
        let mut l = self.data.clone();
        for i in 0..self.n {
            let lo = i.saturating_sub(kd);
            for j in lo..=i {
                let jlo = j.saturating_sub(kd).max(lo);
                let mut s = l[i * w + (j + kd - i)];
                for k in jlo..j {
                    s -= l[i * w + (k + kd - i)] * l[j * w + (k + kd - j)];
                }
                if j == i {
                    if !(s > 0.0) {
                        return Err(Error::Internal("band matrix is not positive definite"));
                    }
                    l[i * w + kd] = s.sqrt();
                } else {
                    l[i * w + (j + kd - i)] = s / l[j * w + kd];
                }
            }
        }
        Ok(BandCholesky { n: self.n, kd, l })
    }

    /// Number of eigenvalues below σ, from the signs of the LDLᵀ pivots of A − σI.
    pub fn count_below(&self, sigma: f64) -> Result<usize> {
        let kd = self.kd;
        let w = kd + 1;
        let mut l = self.data.clone();
        for i in 0..self.n {
            l[i * w + kd] -= sigma;
        }
        let mut dvec = vec![0.0; self.n];
        let mut neg = 0;
        let scale = self.norm_inf().max(f64::MIN_POSITIVE);
        for i in 0..self.n {
            let lo = i.saturating_sub(kd);
            for j in lo..=i {
                let jlo = j.saturating_sub(kd).max(lo);
                let mut s = l[i * w + (j + kd - i)];
                for k in jlo..j {
                    s -= l[i * w + (k + kd - i)] * l[j * w + (k + kd - j)] * dvec[k];
                }
                if j == i {
                    if s.abs() < 1e-14 * scale {
                        return Err(Error::Internal("shift hits an eigenvalue in the inertia count"));
                    }
                    dvec[i] = s;
                    if s < 0.0 {
                        neg += 1;
                    }
                } else {
                    l[i * w + (j + kd - i)] = s / dvec[j];
                }
            }
        }
        Ok(neg)
    }
}

#[derive(Debug, Clone)]
pub struct BandCholesky {
    n: usize,
    kd: usize,
    l: Vec<f64>,
}

impl BandCholesky {
    /// Overwrites b with A⁻¹b.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let (n, kd, w) = (self.n, self.kd, self.kd + 1);
        for i in 0..n {
            let lo = i.saturating_sub(kd);
            let row = &self.l[i * w..(i + 1) * w];
            let mut s = b[i];
            for k in lo..i {
                s -= row[k + kd - i] * b[k];
            }
            b[i] = s / row[kd];
        }
        for i in (0..n).rev() {
            b[i] /= self.l[i * w + kd];
            let bi = b[i];
            let lo = i.saturating_sub(kd);
            let row = &self.l[i * w..(i + 1) * w];
            for k in lo..i {
                b[k] -= row[k + kd - i] * bi;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplace_1d(n: usize) -> BandedSym {
        let mut a = BandedSym::zeros(n, 2);
        for i in 0..n {
            a.set(i, i, 2.0);
            if i > 0 {
                a.set(i, i - 1, -1.0);
            }
        }
        a
    }

    #[test]
    fn solve_and_matvec_roundtrip() {
        let a = laplace_1d(9);
        let x: Vec<f64> = (0..9).map(|i| (i as f64 * 0.7).sin() + 1.0).collect();
        let mut y = vec![0.0; 9];
        a.matvec(&x, &mut y);
        let ch = a.cholesky().unwrap();
        ch.solve_in_place(&mut y);
        for (u, v) in x.iter().zip(&y) {
            assert!((u - v).abs() < 1e-13);
        }
    }

    #[test]
    fn inertia_counts() {
        let n = 9;
        let a = laplace_1d(n);
        // eigenvalues 2 − 2cos(kπ/(n+1))
        let ev: Vec<f64> = (1..=n).map(|k| 2.0 - 2.0 * (k as f64 * core::f64::consts::PI / (n as f64 + 1.0)).cos()).collect();
        for (i, w) in ev.windows(2).enumerate() {
            assert_eq!(a.count_below(0.5 * (w[0] + w[1])).unwrap(), i + 1);
        }
        assert_eq!(a.count_below(-1.0).unwrap(), 0);
        assert!(a.norm_inf() == 4.0);
    }
}
