//! Finite trigonometric polynomials, the carriers for every fiber
//! translation `rho` and every candidate section `phi` in this workspace.
//!
//! A `TrigPoly` is a finite sum `sum_n c_n e^{2 pi i n x}` with complex
//! coefficients; `TrigPoly2` is the bivariate analogue on the 2-torus.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::{unit, unit_angle};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrigPoly {
    terms: BTreeMap<i64, Complex64>,
}

impl TrigPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::single(0, c)
    }

    pub fn single(n: i64, c: Complex64) -> Self {
        let mut p = Self::new();
        p.add_term(n, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Complex64)>>(iter: I) -> Self {
        let mut p = Self::new();
        for (n, c) in iter {
            p.add_term(n, c);
        }
        p
    }

    pub fn add_term(&mut self, n: i64, c: Complex64) {
        let e = self.terms.entry(n).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if e.norm() == 0.0 {
            self.terms.remove(&n);
        }
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        self.terms.get(&n).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.terms.iter().map(|(n, c)| (*n, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest absolute frequency present.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|n| n.abs()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&n, &c) in &self.terms {
            acc += c * unit(n as f64 * x);
        }
        acc
    }

    /// Evaluation with the phase `n*x` reduced exactly before rounding;
    /// keeps long rational orbits accurate.
    pub fn eval_angle(&self, x: &Angle) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&n, &c) in &self.terms {
            acc += c * unit_angle(&x.mul_int(n));
        }
        acc
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (n, c) in other.terms() {
            out.add_term(n, c);
        }
        out
    }

    pub fn sub(&self, other: &TrigPoly) -> TrigPoly {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> TrigPoly {
        let mut out = TrigPoly::new();
        for (n, a) in self.terms() {
            out.add_term(n, a * c);
        }
        out
    }

    /// Complex conjugate as a function: frequencies negate, coefficients
    /// conjugate.
    pub fn conj(&self) -> TrigPoly {
        let mut out = TrigPoly::new();
        for (n, c) in self.terms() {
            out.add_term(-n, c.conj());
        }
        out
    }

    /// `x -> self(x + a)`.
    pub fn shift(&self, a: &Angle) -> TrigPoly {
        let mut out = TrigPoly::new();
        for (n, c) in self.terms() {
            out.add_term(n, c * unit_angle(&a.mul_int(n)));
        }
        out
    }

    /// Upper bound `sum |c_n|` for the sup norm.
    pub fn sup_norm_bound(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Upper bound `2 pi sum |n c_n|` for the derivative sup norm.
    pub fn deriv_bound(&self) -> f64 {
        2.0 * std::f64::consts::PI
            * self
                .terms
                .iter()
                .map(|(n, c)| n.abs() as f64 * c.norm())
                .sum::<f64>()
    }

    /// Max over a uniform grid of `|self(x)|`.
    pub fn sup_on_grid(&self, grid: usize) -> f64 {
        let mut best: f64 = 0.0;
        for i in 0..grid {
            best = best.max(self.eval(i as f64 / grid as f64).norm());
        }
        best
    }

    /// Drop coefficients of magnitude `<= eps`.
    pub fn prune(&self, eps: f64) -> TrigPoly {
        TrigPoly {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > eps)
                .map(|(n, c)| (*n, *c))
                .collect(),
        }
    }

    /// Decay report `max_n |c_n| * |n|^k` for a requested power.
    pub fn decay_report(&self, k: u32) -> f64 {
        self.terms
            .iter()
            .map(|(n, c)| c.norm() * (n.abs().max(1) as f64).powi(k as i32))
            .fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    n: i64,
    re: f64,
    im: f64,
}

impl Serialize for TrigPoly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(&n, c)| TermJson { n, re: c.re, im: c.im })
            .collect();
        v.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TrigPoly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = Vec::<TermJson>::deserialize(de)?;
        Ok(TrigPoly::from_terms(
            v.into_iter().map(|t| (t.n, Complex64::new(t.re, t.im))),
        ))
    }
}

/// Bivariate trigonometric polynomial on the 2-torus.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrigPoly2 {
    terms: BTreeMap<(i64, i64), Complex64>,
}

impl TrigPoly2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, nx: i64, ny: i64, c: Complex64) {
        let e = self
            .terms
            .entry((nx, ny))
            .or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if e.norm() == 0.0 {
            self.terms.remove(&(nx, ny));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), Complex64)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(nx, ny), &c) in &self.terms {
            acc += c * unit(nx as f64 * x + ny as f64 * y);
        }
        acc
    }

    pub fn add(&self, other: &TrigPoly2) -> TrigPoly2 {
        let mut out = self.clone();
        for ((nx, ny), c) in other.terms() {
            out.add_term(nx, ny, c);
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> TrigPoly2 {
        let mut out = TrigPoly2::new();
        for ((nx, ny), a) in self.terms() {
            out.add_term(nx, ny, a * c);
        }
        out
    }

    pub fn conj(&self) -> TrigPoly2 {
        let mut out = TrigPoly2::new();
        for ((nx, ny), c) in self.terms() {
            out.add_term(-nx, -ny, c.conj());
        }
        out
    }

    /// `(x, y) -> self(x + a, y + b)`.
    pub fn shift(&self, a: &Angle, b: &Angle) -> TrigPoly2 {
        let mut out = TrigPoly2::new();
        for ((nx, ny), c) in self.terms() {
            let phase = a.mul_int(nx).add(&b.mul_int(ny));
            out.add_term(nx, ny, c * unit_angle(&phase));
        }
        out
    }

    pub fn sub(&self, other: &TrigPoly2) -> TrigPoly2 {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// The univariate polynomial in `x` multiplying `e^{2 pi i k y}`.
    pub fn y_row(&self, k: i64) -> TrigPoly {
        let mut out = TrigPoly::new();
        for (&(nx, ny), &c) in &self.terms {
            if ny == k {
                out.add_term(nx, c);
            }
        }
        out
    }

    /// Frequencies in `y` that actually occur.
    pub fn y_frequencies(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.terms.keys().map(|&(_, ny)| ny).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn sup_norm_bound(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_matches_pointwise_shift() {
        let p = TrigPoly::from_terms([
            (1, Complex64::new(0.3, -0.2)),
            (-2, Complex64::new(0.1, 0.7)),
            (5, Complex64::new(-1.0, 0.0)),
        ]);
        let a = Angle::from_ratio(2, 7).unwrap();
        let q = p.shift(&a);
        for i in 0..19 {
            let x = i as f64 / 19.0;
            let lhs = q.eval(x);
            let rhs = p.eval(x + a.to_f64());
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn conj_matches_pointwise() {
        let p = TrigPoly::from_terms([(2, Complex64::new(0.5, 0.25)), (0, Complex64::new(0.0, 1.0))]);
        let q = p.conj();
        for i in 0..11 {
            let x = i as f64 / 11.0;
            assert!((q.eval(x) - p.eval(x).conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn sup_norm_bound_dominates_grid() {
        let p = TrigPoly::from_terms([(1, Complex64::new(1.0, 0.0)), (3, Complex64::new(0.0, 2.0))]);
        assert!(p.sup_on_grid(128) <= p.sup_norm_bound() + 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let p = TrigPoly::from_terms([(-2, Complex64::new(0.5, 0.0)), (1, Complex64::new(0.0, -1.5))]);
        let s = serde_json::to_string(&p).unwrap();
        let q: TrigPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
