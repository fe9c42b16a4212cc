//! Structural data of the simple Lie algebras `A_n`–`G_2`.
//!
//! Node numbering follows Kac's tables (the same numbering used for the
//! twisted highest-root data in [`crate::folding`]):
//!
//! * `A_n`: chain `1 – 2 – … – n`.
//! * `B_n`, `C_n`: chain with the double bond between `n-1` and `n`;
//!   `α_n` is short for `B_n` and long for `C_n`.
//! * `D_n`: chain `1 – … – n-2`, with `n-1` and `n` both attached to `n-2`.
//! * `E_n`: chain `1 – … – n-1`, with node `n` attached to node `n-3`
//!   (for `E_6`: chain `1–2–3–4–5` and node `6` hanging off node `3`).
//! * `F_4`: `1 – 2 ⇒ 3 – 4`, `α_1, α_2` long.
//! * `G_2`: `α_1` short, `α_2` long.
//!
//! Long roots have squared length 2, so `(θ, θ) = 2`. The Cartan matrix is
//! stored as `A_ij = 2(α_i, α_j)/(α_j, α_j)`, so row `i` holds the Dynkin
//! labels of `α_(i)`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::weight::Weight;
use crate::weightsys::WeightCache;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

/// Series letter plus rank, e.g. `A2` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraName {
    pub series: Series,
    pub rank: usize,
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for AlgebraName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars
            .next()
            .and_then(Series::from_letter)
            .ok_or_else(|| Error::Parse(format!("unknown algebra {s:?}")))?;
        let rank = chars
            .as_str()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("missing or invalid rank in {s:?}")))?;
        Ok(AlgebraName { series, rank })
    }
}

/// Immutable root data of one simple Lie algebra.
#[derive(Debug, Clone)]
pub struct Algebra {
    name: AlgebraName,
    cartan: Vec<Vec<i64>>,
    /// `F_ij = (Λ_(i), Λ_(j))`.
    qform: RatMatrix,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Weight>,
    /// Positive roots as Dynkin labels, sorted by height.
    positive_roots: Vec<Weight>,
    theta: Weight,
    rho: Weight,
    dual_coxeter: u32,
    pub(crate) cache: WeightCache,
}

fn validate(series: Series, rank: usize) -> Result<()> {
    let reason = match series {
        Series::A if rank < 1 => "A_n requires n >= 1",
        Series::B if rank < 2 => "B_n requires n >= 2",
        Series::C if rank < 2 => "C_n requires n >= 2",
        Series::D if rank < 3 => "D_n requires n >= 3",
        Series::E if !(6..=8).contains(&rank) => "E_n exists only for n = 6, 7, 8",
        Series::F if rank != 4 => "F_n exists only for n = 4",
        Series::G if rank != 2 => "G_n exists only for n = 2",
        _ => return Ok(()),
    };
    Err(Error::InvalidAlgebra {
        series: series.letter(),
        rank,
        reason,
    })
}

/// Squared root lengths and bonds `(i, j, multiplicity)` of the Dynkin
/// diagram, 0-based.
fn diagram(series: Series, n: usize) -> (Vec<Rational64>, Vec<(usize, usize, i64)>) {
    let two = Rational64::from_integer(2);
    let one = Rational64::one();
    let chain = |len: usize| {
        (0..len.saturating_sub(1))
            .map(|i| (i, i + 1, 1))
            .collect::<Vec<_>>()
    };
    match series {
        Series::A => (vec![two; n], chain(n)),
        Series::B => {
            let mut lengths = vec![two; n];
            lengths[n - 1] = one;
            let mut bonds = chain(n);
            bonds.last_mut().unwrap().2 = 2;
            (lengths, bonds)
        }
        Series::C => {
            let mut lengths = vec![one; n];
            lengths[n - 1] = two;
            let mut bonds = chain(n);
            bonds.last_mut().unwrap().2 = 2;
            (lengths, bonds)
        }
        Series::D => {
            let mut bonds = chain(n - 1);
            bonds.push((n - 3, n - 1, 1));
            (vec![two; n], bonds)
        }
        Series::E => {
            let mut bonds = chain(n - 1);
            bonds.push((n - 4, n - 1, 1));
            (vec![two; n], bonds)
        }
        Series::F => (
            vec![two, two, one, one],
            vec![(0, 1, 1), (1, 2, 2), (2, 3, 1)],
        ),
        Series::G => (vec![Rational64::new(2, 3), two], vec![(0, 1, 3)]),
    }
}

/// Highest root in Dynkin labels for the numbering documented above.
fn highest_root(series: Series, n: usize) -> Weight {
    let mut labels = vec![0i64; n];
    match (series, n) {
        (Series::A, 1) => labels[0] = 2,
        (Series::A, _) => {
            labels[0] = 1;
            labels[n - 1] = 1;
        }
        (Series::B, 2) => labels[1] = 2,
        (Series::B, _) => labels[1] = 1,
        (Series::C, _) => labels[0] = 2,
        (Series::D, 3) => {
            labels[1] = 1;
            labels[2] = 1;
        }
        (Series::D, _) => labels[1] = 1,
        (Series::E, 6) => labels[5] = 1,
        (Series::E, 7) => labels[5] = 1,
        (Series::E, _) => labels[0] = 1,
        (Series::F, _) => labels[0] = 1,
        (Series::G, _) => labels[1] = 1,
    }
    Weight::from_ints(&labels)
}

fn dual_coxeter_number(series: Series, n: usize) -> u32 {
    let n = n as u32;
    match series {
        Series::A => n + 1,
        Series::B => 2 * n - 1,
        Series::C => n + 1,
        Series::D => 2 * n - 2,
        Series::E => match n {
            6 => 12,
            7 => 18,
            _ => 30,
        },
        Series::F => 9,
        Series::G => 4,
    }
}

fn positive_root_count(series: Series, n: usize) -> usize {
    match series {
        Series::A => n * (n + 1) / 2,
        Series::B | Series::C => n * n,
        Series::D => n * (n - 1),
        Series::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Series::F => 24,
        Series::G => 6,
    }
}

/// Closes the simple roots under root-string addition. Roots are carried as
/// simple-root coefficient vectors; the `α_i`-string through `β` runs from
/// `β - pα_i` to `β + qα_i` with `p - q = <β, α_i^∨>`.
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let labels = |c: &[i64]| -> Vec<i64> {
        (0..n)
            .map(|j| (0..n).map(|i| c[i] * cartan[i][j]).sum())
            .collect()
    };
    let mut all: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut known: std::collections::HashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            let l = labels(beta);
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - l[i];
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Builds the root data for `(series, rank)`.
pub fn build_algebra(series: Series, rank: usize) -> Result<Algebra> {
    validate(series, rank)?;
    let n = rank;
    let (lengths, bonds) = diagram(series, n);
    // Symmetrized form B_ij = (α_i, α_j).
    let mut gram: RatMatrix = vec![vec![Rational64::zero(); n]; n];
    for i in 0..n {
        gram[i][i] = lengths[i];
    }
    for &(i, j, mult) in &bonds {
        let short = lengths[i].min(lengths[j]);
        let v = -short / 2 * mult;
        gram[i][j] = v;
        gram[j][i] = v;
    }
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = gram[i][j] * 2 / gram[j][j];
                    debug_assert!(a.is_integer());
                    a.to_integer()
                })
                .collect()
        })
        .collect();
    // A F = diag((α_i, α_i)/2).
    let cartan_rat: RatMatrix = cartan
        .iter()
        .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect();
    let inv = linalg::inverse(&cartan_rat).ok_or(Error::InvariantViolation(
        "Cartan matrix is singular".into(),
    ))?;
    let qform: RatMatrix = (0..n)
        .map(|i| (0..n).map(|j| inv[i][j] * lengths[j] / 2).collect())
        .collect();

    let simple_roots: Vec<Weight> = cartan.iter().map(|r| Weight::from_ints(r)).collect();
    let simple_coroots: Vec<Weight> = simple_roots
        .iter()
        .zip(&lengths)
        .map(|(a, &len)| a.scale(Rational64::from_integer(2) / len))
        .collect();

    let mut coeffs = enumerate_positive_roots(&cartan);
    coeffs.sort_by_key(|c| (c.iter().sum::<i64>(), std::cmp::Reverse(c.clone())));
    let positive_roots: Vec<Weight> = coeffs
        .iter()
        .map(|c| {
            let labels: Vec<i64> = (0..n)
                .map(|j| (0..n).map(|i| c[i] * cartan[i][j]).sum())
                .collect();
            Weight::from_ints(&labels)
        })
        .collect();
    if positive_roots.len() != positive_root_count(series, n) {
        return Err(Error::InvariantViolation(format!(
            "{}{}: enumerated {} positive roots",
            series.letter(),
            n,
            positive_roots.len()
        )));
    }

    let algebra = Algebra {
        name: AlgebraName { series, rank },
        cartan,
        qform,
        simple_roots,
        simple_coroots,
        theta: highest_root(series, n),
        rho: Weight::from_ints(&vec![1; n]),
        dual_coxeter: dual_coxeter_number(series, n),
        positive_roots,
        cache: WeightCache::default(),
    };
    algebra.check_invariants()?;
    Ok(algebra)
}

impl Algebra {
    pub fn from_name(name: AlgebraName) -> Result<Self> {
        build_algebra(name.series, name.rank)
    }

    pub fn name(&self) -> AlgebraName {
        self.name
    }

    pub fn series(&self) -> Series {
        self.name.series
    }

    pub fn rank(&self) -> usize {
        self.name.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn quadratic_form(&self) -> &[Vec<Rational64>] {
        &self.qform
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Weight] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn theta(&self) -> &Weight {
        &self.theta
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn dual_coxeter(&self) -> u32 {
        self.dual_coxeter
    }

    /// `(a, b) = aᵀ F b`; panics on rank mismatch (use [`inner_product`] for
    /// the checked form).
    pub fn ip(&self, a: &Weight, b: &Weight) -> Rational64 {
        let n = self.rank();
        assert!(a.rank() == n && b.rank() == n, "weight rank mismatch");
        let mut acc = Rational64::zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            let row = &self.qform[i];
            let mut s = Rational64::zero();
            for j in 0..n {
                if !b[j].is_zero() {
                    s += row[j] * b[j];
                }
            }
            acc += a[i] * s;
        }
        acc
    }

    /// `s_i(λ) = λ - λ_i α_(i)`, valid because `(λ, α_(i)^∨) = λ_i`.
    pub(crate) fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let li = lambda[i];
        if li.is_zero() {
            return lambda.clone();
        }
        lambda.add_scaled(-li, &self.simple_roots[i])
    }

    fn check_invariants(&self) -> Result<()> {
        let two = Rational64::from_integer(2);
        let fail = |what: String| Err(Error::InvariantViolation(format!("{}: {what}", self.name)));
        if self.ip(&self.theta, &self.theta) != two {
            return fail("(θ, θ) != 2".into());
        }
        if self.positive_roots.last() != Some(&self.theta) {
            return fail("tabulated θ is not the highest root".into());
        }
        let theta_rho = self.ip(&self.theta, &self.rho);
        if theta_rho != Rational64::from_integer(i64::from(self.dual_coxeter) - 1) {
            return fail(format!(
                "(θ, ρ) = {theta_rho} but g^∨ = {}",
                self.dual_coxeter
            ));
        }
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let a = self.ip(&self.simple_roots[i], &self.simple_roots[j]) * 2
                    / self.ip(&self.simple_roots[j], &self.simple_roots[j]);
                if a != Rational64::from_integer(self.cartan[i][j]) {
                    return fail(format!("Cartan pairing mismatch at ({i}, {j})"));
                }
                let dual = self.ip(&Weight::fundamental(n, i), &self.simple_coroots[j]);
                let expected = if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                };
                if dual != expected {
                    return fail(format!("(Λ_{i}, α_{j}^∨) = {dual}"));
                }
            }
        }
        Ok(())
    }
}

/// Checked inner product.
pub fn inner_product(a: &Weight, b: &Weight, algebra: &Algebra) -> Result<Rational64> {
    a.check_rank(algebra.rank())?;
    b.check_rank(algebra.rank())?;
    Ok(algebra.ip(a, b))
}

/// Simple Weyl reflection `s_i` with a 1-based node index.
pub fn simple_reflection(i: usize, lambda: &Weight, algebra: &Algebra) -> Result<Weight> {
    lambda.check_rank(algebra.rank())?;
    if i == 0 || i > algebra.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: algebra.rank(),
        });
    }
    Ok(algebra.reflect(i - 1, lambda))
}
