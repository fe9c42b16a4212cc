//! Floating-point oracle for twisted fusion coefficients.
//!
//! Evaluates the Verlinde-type sum
//!
//! ```text
//! N_{iα}^β = Σ_{μ ∈ S_k^+} conj(S^ω_{βμ}) · (S_{iμ}/S_{0μ}) · S^ω_{αμ}
//! ```
//!
//! with the twisted S-matrix summed explicitly over `W_ω` and the ratio
//! `S_{iμ}/S_{0μ}` taken from the Weyl character of `i`. Shares only the
//! structural data (lattices, domains, `W_ω` generators) with
//! [`crate::fusion`], never the folding.
//!
//! Phases are reduced modulo 1 in exact arithmetic before conversion to
//! `f64`, and all sums are compensated.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::folding::{
    enumerate_b, enumerate_s, folded_weyl_group_order, folded_weyl_orbit, in_b, in_p,
    lattice_index, Automorphism,
};
use crate::rootdata::Algebra;
use crate::weight::Weight;

/// Tolerance for rounding oracle values to integers.
pub const ROUNDING_TOLERANCE: f64 = 1e-6;

/// Tolerance for unitarity and vanishing checks.
pub const UNITARITY_TOLERANCE: f64 = 1e-9;

/// Kahan-Babuška summation of complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    fn add_component(sum: &mut f64, carry: &mut f64, x: f64) {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *carry += (*sum - t) + x;
        } else {
            *carry += (x - t) + *sum;
        }
        *sum = t;
    }

    pub fn add(&mut self, z: Complex64) {
        Self::add_component(&mut self.sum.re, &mut self.carry.re, z.re);
        Self::add_component(&mut self.sum.im, &mut self.carry.im, z.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

/// `exp(-2πi x/h)` with `x/h` reduced modulo 1 exactly.
fn phase(x: Rational64, h: i64) -> Complex64 {
    let t = x / h;
    let frac = t - t.floor();
    let angle = -TAU * (*frac.numer() as f64 / *frac.denom() as f64);
    Complex64::from_polar(1.0, angle)
}

/// Twisted S-matrix with rows `B_k^+` and columns `S_k^+`; the undetermined
/// overall phase is set to 1.
#[derive(Debug, Clone)]
pub struct TwistedSMatrix {
    rows: Vec<Weight>,
    cols: Vec<Weight>,
    entries: Vec<Vec<Complex64>>,
}

impl TwistedSMatrix {
    pub fn rows(&self) -> &[Weight] {
        &self.rows
    }

    pub fn cols(&self) -> &[Weight] {
        &self.cols
    }

    pub fn entries(&self) -> &[Vec<Complex64>] {
        &self.entries
    }

    pub fn entry(&self, alpha: usize, mu: usize) -> Complex64 {
        self.entries[alpha][mu]
    }

    /// Multiplies every entry by `factor`.
    pub fn rephased(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for z in out.entries.iter_mut().flatten() {
            *z *= factor;
        }
        out
    }

    /// `max |(S S^†)_{ab} - δ_ab|`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.rows.len();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let mut acc = CompensatedSum::default();
                for m in 0..self.cols.len() {
                    acc.add(self.entries[a][m] * self.entries[b][m].conj());
                }
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((acc.value() - target).norm());
            }
        }
        worst
    }
}

/// Evaluates twisted S-matrix entries at one `(g, ω, k)`.
pub struct SEvaluator<'a> {
    alg: &'a Algebra,
    aut: &'a Automorphism,
    h: i64,
    prefactor: f64,
    group_order: usize,
}

impl<'a> SEvaluator<'a> {
    pub fn new(k: u32, aut: &'a Automorphism, alg: &'a Algebra) -> Result<Self> {
        let h = k + alg.dual_coxeter();
        let index = lattice_index(alg, aut, h)?;
        Ok(SEvaluator {
            alg,
            aut,
            h: i64::from(h),
            prefactor: 1.0 / (index as f64).sqrt(),
            group_order: folded_weyl_group_order(aut, alg)?,
        })
    }

    /// `|W_ω|`.
    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Signed `W_ω`-orbit of `α + ρ_ω`.
    pub fn signed_orbit(&self, alpha: &Weight) -> Result<Vec<(Weight, i8)>> {
        let orbit = folded_weyl_orbit(&(alpha + self.aut.rho_omega()), self.aut, self.alg)?;
        if orbit.len() != self.group_order {
            return Err(Error::InvariantViolation(format!(
                "{alpha} + ρ_ω has a non-trivial stabilizer in W_ω"
            )));
        }
        Ok(orbit)
    }

    /// `|…|^{-1/2} Σ_w ε(w) exp(-2πi (w(α+ρ_ω), ν)/h)` for a precomputed orbit.
    pub fn entry_shifted(&self, orbit: &[(Weight, i8)], nu: &Weight) -> Complex64 {
        let mut acc = CompensatedSum::default();
        for (x, sign) in orbit {
            acc.add(phase(self.alg.ip(x, nu), self.h) * f64::from(*sign));
        }
        acc.value() * self.prefactor
    }
}

/// Builds `S^ω` at level `k`.
pub fn twisted_smatrix(k: u32, aut: &Automorphism, alg: &Algebra) -> Result<TwistedSMatrix> {
    let rows = enumerate_b(alg, aut, k);
    let cols = enumerate_s(alg, aut, k);
    if rows.len() != cols.len() {
        return Err(Error::NonSquareSMatrix {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    let ctx = SEvaluator::new(k, aut, alg)?;
    let shifted_cols: Vec<Weight> = cols.iter().map(|mu| mu + alg.rho()).collect();
    let entries = rows
        .iter()
        .map(|alpha| {
            let orbit = ctx.signed_orbit(alpha)?;
            Ok(shifted_cols
                .iter()
                .map(|nu| ctx.entry_shifted(&orbit, nu))
                .collect())
        })
        .collect::<Result<Vec<Vec<Complex64>>>>()?;
    Ok(TwistedSMatrix {
        rows,
        cols,
        entries,
    })
}

/// `S^ω_{α, ν-ρ}` as a function of the shifted weight `ν`, which need not
/// lie in the shifted alcove interior.
pub fn smatrix_at_shifted(
    alpha: &Weight,
    nu: &Weight,
    k: u32,
    aut: &Automorphism,
    alg: &Algebra,
) -> Result<Complex64> {
    nu.check_rank(alg.rank())?;
    if !in_b(alg, aut, alpha, k) {
        return Err(Error::NotInDomain {
            weight: alpha.to_string(),
            domain: "B_k^+",
            level: k,
        });
    }
    let ctx = SEvaluator::new(k, aut, alg)?;
    let orbit = ctx.signed_orbit(alpha)?;
    Ok(ctx.entry_shifted(&orbit, nu))
}

/// `S_{iμ}/S_{0μ} = Σ_{j ∈ M_i} exp(-2πi (j, μ+ρ)/(k+g^∨))`.
pub fn character_ratio(i: &Weight, mu: &Weight, k: u32, alg: &Algebra) -> Result<Complex64> {
    for (w, domain) in [(i, "P_k^+"), (mu, "P_k^+")] {
        if !in_p(alg, w, k) {
            return Err(Error::NotInDomain {
                weight: w.to_string(),
                domain,
                level: k,
            });
        }
    }
    let ws = alg.cached_weight_system(i)?;
    let h = i64::from(k + alg.dual_coxeter());
    let nu = mu + alg.rho();
    let mut acc = CompensatedSum::default();
    for (j, mult) in ws.iter() {
        acc.add(phase(alg.ip(j, &nu), h) * mult as f64);
    }
    Ok(acc.value())
}

/// An oracle value together with its nearest integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericCoeff {
    pub value: Complex64,
    pub rounded: i64,
    /// `|value - rounded|`, including any imaginary part.
    pub residual: f64,
}

impl NumericCoeff {
    fn from_value(value: Complex64) -> Self {
        let rounded = value.re.round() as i64;
        NumericCoeff {
            value,
            rounded,
            residual: (value - rounded as f64).norm(),
        }
    }
}

/// Precomputed S-matrix at one `(g, ω, k)` for repeated coefficient queries.
pub struct Oracle<'a> {
    alg: &'a Algebra,
    k: u32,
    smatrix: TwistedSMatrix,
    row_index: BTreeMap<Weight, usize>,
}

impl<'a> Oracle<'a> {
    pub fn new(k: u32, aut: &'a Automorphism, alg: &'a Algebra) -> Result<Self> {
        let smatrix = twisted_smatrix(k, aut, alg)?;
        Ok(Self::with_smatrix(k, alg, smatrix))
    }

    /// Uses a caller-supplied S-matrix, e.g. a rephased one.
    pub fn with_smatrix(k: u32, alg: &'a Algebra, smatrix: TwistedSMatrix) -> Self {
        let row_index = smatrix
            .rows
            .iter()
            .enumerate()
            .map(|(n, w)| (w.clone(), n))
            .collect();
        Oracle {
            alg,
            k,
            smatrix,
            row_index,
        }
    }

    pub fn smatrix(&self) -> &TwistedSMatrix {
        &self.smatrix
    }

    /// `S_{iμ}/S_{0μ}` for every column `μ`.
    pub fn character_row(&self, i: &Weight) -> Result<Vec<Complex64>> {
        self.smatrix
            .cols
            .iter()
            .map(|mu| character_ratio(i, mu, self.k, self.alg))
            .collect()
    }

    fn row(&self, w: &Weight) -> Result<usize> {
        self.row_index
            .get(w)
            .copied()
            .ok_or_else(|| Error::NotInDomain {
                weight: w.to_string(),
                domain: "B_k^+",
                level: self.k,
            })
    }

    /// Evaluates the sum for one triple given a precomputed character row.
    pub fn coefficient_with(
        &self,
        chars: &[Complex64],
        alpha: &Weight,
        beta: &Weight,
    ) -> Result<NumericCoeff> {
        let (a, b) = (self.row(alpha)?, self.row(beta)?);
        let mut acc = CompensatedSum::default();
        for (m, chi) in chars.iter().enumerate() {
            acc.add(self.smatrix.entries[b][m].conj() * chi * self.smatrix.entries[a][m]);
        }
        Ok(NumericCoeff::from_value(acc.value()))
    }

    pub fn coefficient(&self, i: &Weight, alpha: &Weight, beta: &Weight) -> Result<NumericCoeff> {
        let chars = self.character_row(i)?;
        self.coefficient_with(&chars, alpha, beta)
    }
}

/// Oracle value of `N_{iα}^β`; fails if it is not within `tolerance` of an
/// integer.
pub fn fusion_numeric(
    i: &Weight,
    alpha: &Weight,
    beta: &Weight,
    k: u32,
    aut: &Automorphism,
    alg: &Algebra,
    tolerance: f64,
) -> Result<NumericCoeff> {
    let coeff = Oracle::new(k, aut, alg)?.coefficient(i, alpha, beta)?;
    if coeff.residual >= tolerance {
        return Err(Error::ResidualTooLarge {
            residual: coeff.residual,
            tolerance,
        });
    }
    Ok(coeff)
}
