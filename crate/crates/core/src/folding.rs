//! Diagram automorphisms and everything derived from them: the symmetric
//! projection, the folded Weyl group `W_ω`, the twisted highest root `θ_ω`
//! and Weyl vector `ρ_ω`, the three fundamental domains, and the signed
//! affine folding used by the fusion algorithm.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rootdata::{Algebra, AlgebraName, Series};
use crate::weight::Weight;

/// Iteration cap for [`fold_to_fundamental`].
pub const FOLD_ITERATION_CAP: usize = 1_000_000;

/// Size guard for explicit enumeration of `W_ω`.
pub const GROUP_SIZE_CAP: usize = 1_000_000;

/// The supported diagram automorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AutomorphismKind {
    Trivial,
    /// The order-2 symmetry of `A_n` (n ≥ 2), `D_n` (swapping `n-1 ↔ n`) or `E_6`.
    Flip,
    /// `D_4`: `1 → 3 → 4 → 1`.
    Triality,
    /// `D_4`: `1 → 4 → 3 → 1`.
    Triality2,
}

impl AutomorphismKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AutomorphismKind::Trivial => "trivial",
            AutomorphismKind::Flip => "flip",
            AutomorphismKind::Triality => "triality",
            AutomorphismKind::Triality2 => "triality2",
        }
    }
}

impl fmt::Display for AutomorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AutomorphismKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "trivial" | "identity" => Ok(AutomorphismKind::Trivial),
            "flip" => Ok(AutomorphismKind::Flip),
            "triality" => Ok(AutomorphismKind::Triality),
            "triality2" => Ok(AutomorphismKind::Triality2),
            other => Err(Error::Parse(format!("unknown automorphism {other:?}"))),
        }
    }
}

/// A diagram automorphism `ω` together with its derived data.
#[derive(Debug, Clone)]
pub struct Automorphism {
    algebra: AlgebraName,
    kind: AutomorphismKind,
    /// `perm[i] = ω(i)`, 0-based.
    perm: Vec<usize>,
    order: usize,
    /// Orbits in ascending order of their smallest node; each orbit is listed
    /// as `i, ωi, ω²i, …` starting from that node.
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    theta_omega: Weight,
    rho_omega: Weight,
    /// `P_ω α_(i)` per orbit.
    projected_roots: Vec<Weight>,
    /// `2 (α_i, α_i)/2 / (P_ω α_i, P_ω α_i)`: the folded reflection of a
    /// symmetric `λ` subtracts `λ_i ·` this factor `· P_ω α_i`.
    reflection_factors: Vec<Rational64>,
    /// `F θ_ω`, so that `(θ_ω, λ) = Σ_j theta_dual[j] λ_j`.
    theta_dual: Vec<Rational64>,
    theta_norm: Rational64,
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut current: Vec<usize> = perm.to_vec();
    let mut order = 1;
    while current.iter().enumerate().any(|(i, &p)| i != p) {
        current = current.iter().map(|&p| perm[p]).collect();
        order += 1;
    }
    order
}

fn classify(alg: &Algebra, perm: &[usize]) -> Option<AutomorphismKind> {
    let n = alg.rank();
    if perm.iter().enumerate().all(|(i, &p)| i == p) {
        return Some(AutomorphismKind::Trivial);
    }
    let swap = |a: usize, b: usize| -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        p
    };
    match (alg.series(), n) {
        (Series::A, n) if n >= 2 => {
            let flip: Vec<usize> = (0..n).rev().collect();
            (perm == flip).then_some(AutomorphismKind::Flip)
        }
        (Series::D, 4) if perm == [2, 1, 3, 0] => Some(AutomorphismKind::Triality),
        (Series::D, 4) if perm == [3, 1, 0, 2] => Some(AutomorphismKind::Triality2),
        (Series::D, n) => (perm == swap(n - 2, n - 1)).then_some(AutomorphismKind::Flip),
        (Series::E, 6) => (perm == [4, 3, 2, 1, 0, 5]).then_some(AutomorphismKind::Flip),
        _ => None,
    }
}

/// The node permutation of a named automorphism, if it exists for `alg`.
pub fn named_permutation(alg: &Algebra, kind: AutomorphismKind) -> Result<Vec<usize>> {
    let n = alg.rank();
    let unsupported = |reason: &str| Error::UnsupportedAutomorphism {
        algebra: alg.name().to_string(),
        reason: reason.to_string(),
    };
    let identity: Vec<usize> = (0..n).collect();
    match kind {
        AutomorphismKind::Trivial => Ok(identity),
        AutomorphismKind::Flip => match (alg.series(), n) {
            (Series::A, n) if n >= 2 => Ok((0..n).rev().collect()),
            (Series::D, n) => {
                let mut p = identity;
                p.swap(n - 2, n - 1);
                Ok(p)
            }
            (Series::E, 6) => Ok(vec![4, 3, 2, 1, 0, 5]),
            _ => Err(unsupported("no diagram flip")),
        },
        AutomorphismKind::Triality | AutomorphismKind::Triality2 => match (alg.series(), n) {
            (Series::D, 4) if kind == AutomorphismKind::Triality => Ok(vec![2, 1, 3, 0]),
            (Series::D, 4) => Ok(vec![3, 1, 0, 2]),
            _ => Err(unsupported("triality exists only for D4")),
        },
    }
}

/// Tabulated twisted highest root `θ_ω` (Kac numbering).
fn tabulated_theta_omega(alg: &Algebra, kind: AutomorphismKind) -> Weight {
    let n = alg.rank();
    let mut labels = vec![0i64; n];
    match (kind, alg.series()) {
        (AutomorphismKind::Trivial, _) => return alg.theta().clone(),
        (AutomorphismKind::Flip, Series::A) if n.is_multiple_of(2) => {
            labels[0] = 2;
            labels[n - 1] = 2;
        }
        (AutomorphismKind::Flip, Series::A) => {
            // A_{2n+1}: Λ_(2) + Λ_(2n), which is 2Λ_(2) for A_3.
            labels[1] += 1;
            labels[n - 2] += 1;
        }
        (AutomorphismKind::Flip, Series::D) => labels[0] = 2,
        (AutomorphismKind::Flip, _) => {
            // E_6
            labels[0] = 1;
            labels[4] = 1;
        }
        (AutomorphismKind::Triality | AutomorphismKind::Triality2, _) => {
            labels[0] = 1;
            labels[2] = 1;
            labels[3] = 1;
        }
    }
    Weight::from_ints(&labels)
}

impl Automorphism {
    /// Builds a named automorphism of `alg`.
    pub fn named(alg: &Algebra, kind: AutomorphismKind) -> Result<Self> {
        let perm = named_permutation(alg, kind)?;
        diagram_automorphism(alg, &perm)
    }

    pub fn trivial(alg: &Algebra) -> Self {
        Self::named(alg, AutomorphismKind::Trivial).expect("identity is always supported")
    }

    fn assemble(
        alg: &Algebra,
        perm: &[usize],
        kind: AutomorphismKind,
        theta_omega: Weight,
    ) -> Self {
        let n = alg.rank();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let mut orbit = vec![start];
            let mut j = perm[start];
            while j != start {
                orbit.push(j);
                j = perm[j];
            }
            for &j in &orbit {
                orbit_of[j] = orbits.len();
            }
            orbits.push(orbit);
        }
        let rho_omega = Weight::new(
            (0..n)
                .map(|i| Rational64::new(1, orbits[orbit_of[i]].len() as i64))
                .collect(),
        );
        let mut aut = Automorphism {
            algebra: alg.name(),
            kind,
            perm: perm.to_vec(),
            order: permutation_order(perm),
            orbits,
            orbit_of,
            theta_omega: theta_omega.clone(),
            rho_omega,
            projected_roots: Vec::new(),
            reflection_factors: Vec::new(),
            theta_dual: Vec::new(),
            theta_norm: Rational64::zero(),
        };
        aut.projected_roots = aut
            .orbits
            .iter()
            .map(|o| aut.project_unchecked(&alg.simple_roots()[o[0]]))
            .collect();
        aut.reflection_factors = aut
            .orbits
            .iter()
            .zip(&aut.projected_roots)
            .map(|(o, p)| {
                let alpha = &alg.simple_roots()[o[0]];
                alg.ip(alpha, alpha) / alg.ip(p, p)
            })
            .collect();
        let form = alg.quadratic_form();
        aut.theta_dual = (0..n)
            .map(|j| (0..n).map(|i| theta_omega[i] * form[i][j]).sum())
            .collect();
        aut.theta_norm = alg.ip(&theta_omega, &theta_omega);
        aut
    }

    /// Replaces `θ_ω` without validation. Only meant for negative-control
    /// fixtures that check the verifier notices corrupted data.
    #[doc(hidden)]
    pub fn with_theta_omega_unchecked(&self, alg: &Algebra, theta_omega: Weight) -> Self {
        Self::assemble(alg, &self.perm, self.kind, theta_omega)
    }

    pub fn algebra(&self) -> AlgebraName {
        self.algebra
    }

    pub fn kind(&self) -> AutomorphismKind {
        self.kind
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `ω` as a 0-based node permutation.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Number of `ω`-orbits on the nodes.
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Orbit length `n_i` of node `i` (0-based).
    pub fn orbit_len(&self, i: usize) -> usize {
        self.orbits[self.orbit_of[i]].len()
    }

    /// Canonical (smallest) node of the orbit containing `i`.
    pub fn representative(&self, i: usize) -> usize {
        self.orbits[self.orbit_of[i]][0]
    }

    pub fn theta_omega(&self) -> &Weight {
        &self.theta_omega
    }

    pub fn rho_omega(&self) -> &Weight {
        &self.rho_omega
    }

    pub fn projected_root(&self, orbit: usize) -> &Weight {
        &self.projected_roots[orbit]
    }

    /// `ω(λ)`: `(ωλ)_{ω(i)} = λ_i`.
    pub fn apply(&self, lambda: &Weight) -> Weight {
        let mut out = lambda.clone();
        for (i, &p) in self.perm.iter().enumerate() {
            out.coords_mut()[p] = lambda[i];
        }
        out
    }

    pub fn is_symmetric(&self, lambda: &Weight) -> bool {
        self.orbits
            .iter()
            .all(|o| o.iter().all(|&j| lambda[j] == lambda[o[0]]))
    }

    /// Membership in `((L^∨)_ω)^∨`: symmetric with `n_i λ_i` integral.
    pub fn in_fractional_lattice(&self, lambda: &Weight) -> bool {
        self.is_symmetric(lambda)
            && self
                .orbits
                .iter()
                .all(|o| (lambda[o[0]] * o.len() as i64).is_integer())
    }

    fn project_unchecked(&self, lambda: &Weight) -> Weight {
        let mut out = lambda.clone();
        for orbit in &self.orbits {
            let mean = orbit.iter().map(|&j| lambda[j]).sum::<Rational64>() / orbit.len() as i64;
            for &j in orbit {
                out.coords_mut()[j] = mean;
            }
        }
        out
    }

    /// `(θ_ω, λ)`.
    pub fn theta_pairing(&self, lambda: &Weight) -> Rational64 {
        self.theta_dual
            .iter()
            .zip(lambda.coords())
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| t * c)
            .sum()
    }

    fn check(&self, alg: &Algebra) -> Result<()> {
        if alg.name() != self.algebra {
            return Err(Error::InvariantViolation(format!(
                "automorphism of {} used with {}",
                self.algebra,
                alg.name()
            )));
        }
        Ok(())
    }

    /// Folded reflection for orbit index `orbit`, without input validation.
    fn reflect_orbit(&self, orbit: usize, lambda: &Weight) -> Weight {
        let li = lambda[self.orbits[orbit][0]];
        if li.is_zero() {
            return lambda.clone();
        }
        lambda.add_scaled(
            -li * self.reflection_factors[orbit],
            &self.projected_roots[orbit],
        )
    }

    /// Orthogonal reflection at the hyperplane `(θ_ω, ·) = h`.
    fn reflect_affine(&self, lambda: &Weight, h: Rational64) -> Weight {
        let excess = self.theta_pairing(lambda) - h;
        lambda.add_scaled(-excess * 2 / self.theta_norm, &self.theta_omega)
    }
}

/// Validates `perm` (0-based) as a supported diagram automorphism of `alg`.
pub fn diagram_automorphism(alg: &Algebra, perm: &[usize]) -> Result<Automorphism> {
    let n = alg.rank();
    let mut seen = vec![false; n];
    let is_perm = perm.len() == n
        && perm
            .iter()
            .all(|&p| p < n && !std::mem::replace(&mut seen[p], true));
    let cartan = alg.cartan();
    if !is_perm || (0..n).any(|i| (0..n).any(|j| cartan[perm[i]][perm[j]] != cartan[i][j])) {
        return Err(Error::NotDiagramAutomorphism(perm.to_vec()));
    }
    let kind = classify(alg, perm).ok_or_else(|| Error::UnsupportedAutomorphism {
        algebra: alg.name().to_string(),
        reason: format!("permutation {perm:?} is not in the supported set"),
    })?;
    let aut = Automorphism::assemble(alg, perm, kind, tabulated_theta_omega(alg, kind));
    validate_twisted_data(alg, &aut)?;
    Ok(aut)
}

/// Checks `ω`-symmetry of `θ_ω` and `(θ_ω, ρ_ω) = g^∨ - 1`.
pub fn validate_twisted_data(alg: &Algebra, aut: &Automorphism) -> Result<()> {
    aut.check(alg)?;
    if !aut.is_symmetric(&aut.theta_omega) {
        return Err(Error::InvariantViolation(format!(
            "θ_ω = {} is not symmetric",
            aut.theta_omega
        )));
    }
    let pairing = alg.ip(&aut.theta_omega, &aut.rho_omega);
    let expected = Rational64::from_integer(i64::from(alg.dual_coxeter()) - 1);
    if pairing != expected {
        return Err(Error::InvariantViolation(format!(
            "(θ_ω, ρ_ω) = {pairing}, expected {expected}"
        )));
    }
    Ok(())
}

/// `P_ω λ`: averages the labels over each orbit.
pub fn project(lambda: &Weight, aut: &Automorphism) -> Weight {
    aut.project_unchecked(lambda)
}

/// Folded Weyl generator `s̃_i` (1-based canonical node `i`) acting on a
/// symmetric weight.
pub fn folded_reflection(
    i: usize,
    lambda: &Weight,
    aut: &Automorphism,
    alg: &Algebra,
) -> Result<Weight> {
    aut.check(alg)?;
    lambda.check_rank(alg.rank())?;
    if i == 0 || i > alg.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: alg.rank(),
        });
    }
    let node = i - 1;
    if aut.representative(node) != node {
        return Err(Error::NonCanonicalRepresentative { index: i });
    }
    if !aut.is_symmetric(lambda) {
        return Err(Error::NotSymmetric(lambda.to_string()));
    }
    Ok(aut.reflect_orbit(aut.orbit_of[node], lambda))
}

/// One step of an affine folding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldStep {
    /// Folded reflection for the orbit with this 0-based canonical node.
    Reflect(usize),
    /// Reflection at `(θ_ω, ·) = h`.
    Affine,
}

/// Result of folding a weight into the closed fundamental domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedFold {
    pub rep: Weight,
    /// `ε_ω` of the folding element; meaningless when `boundary` is set.
    pub sign: i8,
    pub boundary: bool,
}

fn fold_impl(
    lambda: &Weight,
    h: Rational64,
    aut: &Automorphism,
    mut trace: Option<&mut Vec<FoldStep>>,
) -> Result<SignedFold> {
    let mut v = lambda.clone();
    let mut sign = 1i8;
    for _ in 0..FOLD_ITERATION_CAP {
        let most_negative = aut
            .orbits
            .iter()
            .enumerate()
            .map(|(o, nodes)| (o, v[nodes[0]]))
            .filter(|(_, c)| c.is_negative())
            .min_by(|a, b| a.1.cmp(&b.1));
        if let Some((o, _)) = most_negative {
            v = aut.reflect_orbit(o, &v);
            sign = -sign;
            if let Some(t) = trace.as_deref_mut() {
                t.push(FoldStep::Reflect(aut.orbits[o][0]));
            }
            continue;
        }
        let level = aut.theta_pairing(&v);
        if level > h {
            v = aut.reflect_affine(&v, h);
            sign = -sign;
            if let Some(t) = trace.as_deref_mut() {
                t.push(FoldStep::Affine);
            }
            continue;
        }
        let boundary = level == h || v.coords().iter().any(Zero::is_zero);
        return Ok(SignedFold {
            rep: v,
            sign,
            boundary,
        });
    }
    Err(Error::FoldDidNotTerminate(lambda.to_string()))
}

fn check_fold_input(lambda: &Weight, h: u32, aut: &Automorphism, alg: &Algebra) -> Result<()> {
    aut.check(alg)?;
    lambda.check_rank(alg.rank())?;
    if h == 0 {
        return Err(Error::ZeroShiftedLevel);
    }
    if !aut.is_symmetric(lambda) {
        return Err(Error::NotSymmetric(lambda.to_string()));
    }
    if !aut.in_fractional_lattice(lambda) {
        return Err(Error::NotInFractionalLattice(lambda.to_string()));
    }
    Ok(())
}

/// Maps `λ ∈ ((L^∨)_ω)^∨` into `{labels ≥ 0, (θ_ω, ·) ≤ h}` using `W_ω` and
/// the shifted reflection at `(θ_ω, ·) = h`, tracking `ε_ω`.
pub fn fold_to_fundamental(
    lambda: &Weight,
    h: u32,
    aut: &Automorphism,
    alg: &Algebra,
) -> Result<SignedFold> {
    check_fold_input(lambda, h, aut, alg)?;
    fold_impl(lambda, Rational64::from_integer(h.into()), aut, None)
}

/// Like [`fold_to_fundamental`], also returning the applied steps in order.
pub fn fold_with_trace(
    lambda: &Weight,
    h: u32,
    aut: &Automorphism,
    alg: &Algebra,
) -> Result<(SignedFold, Vec<FoldStep>)> {
    check_fold_input(lambda, h, aut, alg)?;
    let mut steps = Vec::new();
    let fold = fold_impl(
        lambda,
        Rational64::from_integer(h.into()),
        aut,
        Some(&mut steps),
    )?;
    Ok((fold, steps))
}

/// Applies a recorded sequence of fold steps to `lambda`.
pub fn apply_steps(lambda: &Weight, steps: &[FoldStep], h: u32, aut: &Automorphism) -> Weight {
    let h = Rational64::from_integer(h.into());
    steps.iter().fold(lambda.clone(), |v, step| match *step {
        FoldStep::Reflect(node) => aut.reflect_orbit(aut.orbit_of[node], &v),
        FoldStep::Affine => aut.reflect_affine(&v, h),
    })
}

/// Unchecked fold used on hot paths whose inputs are valid by construction.
pub(crate) fn fold_trusted(lambda: &Weight, h: u32, aut: &Automorphism) -> Result<SignedFold> {
    fold_impl(lambda, Rational64::from_integer(h.into()), aut, None)
}

/// Orbit decomposition used by the enumerators: for each orbit, the label
/// step and the contribution of one step to the bounding pairing.
fn enumerate_domain(
    rank: usize,
    orbits: &[Vec<usize>],
    steps: &[Rational64],
    costs: &[Rational64],
    bound: Rational64,
) -> Vec<Weight> {
    fn go(
        depth: usize,
        remaining: Rational64,
        current: &mut Weight,
        orbits: &[Vec<usize>],
        steps: &[Rational64],
        costs: &[Rational64],
        out: &mut Vec<Weight>,
    ) {
        if depth == orbits.len() {
            out.push(current.clone());
            return;
        }
        let mut m = 0i64;
        loop {
            let spent = costs[depth] * m;
            if spent > remaining {
                break;
            }
            let value = steps[depth] * m;
            for &j in &orbits[depth] {
                current.coords_mut()[j] = value;
            }
            go(
                depth + 1,
                remaining - spent,
                current,
                orbits,
                steps,
                costs,
                out,
            );
            m += 1;
        }
        for &j in &orbits[depth] {
            current.coords_mut()[j] = Rational64::zero();
        }
    }
    let mut out = Vec::new();
    let mut current = Weight::zero(rank);
    go(0, bound, &mut current, orbits, steps, costs, &mut out);
    out.sort();
    out
}

fn orbit_costs(
    alg: &Algebra,
    orbits: &[Vec<usize>],
    steps: &[Rational64],
    bound_vector: &Weight,
) -> Vec<Rational64> {
    orbits
        .iter()
        .zip(steps)
        .map(|(o, &step)| {
            let mut basis = Weight::zero(alg.rank());
            for &j in o {
                basis.coords_mut()[j] = step;
            }
            alg.ip(bound_vector, &basis)
        })
        .collect()
}

/// `P_k^+`: dominant integral weights with `(θ, λ) ≤ k`, lexicographic.
pub fn enumerate_p(alg: &Algebra, k: u32) -> Vec<Weight> {
    let orbits: Vec<Vec<usize>> = (0..alg.rank()).map(|i| vec![i]).collect();
    let steps = vec![Rational64::one(); alg.rank()];
    let costs = orbit_costs(alg, &orbits, &steps, alg.theta());
    enumerate_domain(
        alg.rank(),
        &orbits,
        &steps,
        &costs,
        Rational64::from_integer(k.into()),
    )
}

/// `S_k^+`: the `ω`-symmetric elements of `P_k^+`.
pub fn enumerate_s(alg: &Algebra, aut: &Automorphism, k: u32) -> Vec<Weight> {
    let steps = vec![Rational64::one(); aut.orbit_count()];
    let costs = orbit_costs(alg, &aut.orbits, &steps, alg.theta());
    enumerate_domain(
        alg.rank(),
        &aut.orbits,
        &steps,
        &costs,
        Rational64::from_integer(k.into()),
    )
}

/// `B_k^+`: symmetric `β` with `n_i β_i ∈ ℕ₀` and `(θ_ω, β) ≤ k`.
pub fn enumerate_b(alg: &Algebra, aut: &Automorphism, k: u32) -> Vec<Weight> {
    let steps: Vec<Rational64> = aut
        .orbits
        .iter()
        .map(|o| Rational64::new(1, o.len() as i64))
        .collect();
    let costs = orbit_costs(alg, &aut.orbits, &steps, &aut.theta_omega);
    enumerate_domain(
        alg.rank(),
        &aut.orbits,
        &steps,
        &costs,
        Rational64::from_integer(k.into()),
    )
}

pub fn in_p(alg: &Algebra, lambda: &Weight, k: u32) -> bool {
    lambda.rank() == alg.rank()
        && lambda.is_dominant_integral()
        && alg.ip(alg.theta(), lambda) <= Rational64::from_integer(k.into())
}

pub fn in_s(alg: &Algebra, aut: &Automorphism, lambda: &Weight, k: u32) -> bool {
    in_p(alg, lambda, k) && aut.is_symmetric(lambda)
}

pub fn in_b(alg: &Algebra, aut: &Automorphism, beta: &Weight, k: u32) -> bool {
    beta.rank() == alg.rank()
        && beta.is_dominant()
        && aut.in_fractional_lattice(beta)
        && aut.theta_pairing(beta) <= Rational64::from_integer(k.into())
}

/// Interior of the closed twisted alcove at shifted level `h`.
pub fn in_b_interior(aut: &Automorphism, beta: &Weight, h: u32) -> bool {
    aut.in_fractional_lattice(beta)
        && beta.coords().iter().all(Signed::is_positive)
        && aut.theta_pairing(beta) < Rational64::from_integer(h.into())
}

/// `|L_ω / h (L^∨)_ω|`.
pub fn lattice_index(alg: &Algebra, aut: &Automorphism, h: u32) -> Result<u128> {
    aut.check(alg)?;
    if h == 0 {
        return Err(Error::ZeroShiftedLevel);
    }
    // Row o: the orbit-summed coroot, in the orbit-summed fundamental weight
    // basis of L_ω (read off at each orbit's canonical node).
    let matrix: Vec<Vec<Rational64>> = aut
        .orbits
        .iter()
        .map(|o| {
            let sum = o.iter().fold(Weight::zero(alg.rank()), |acc, &j| {
                &acc + &alg.simple_coroots()[j]
            });
            aut.orbits.iter().map(|o2| sum[o2[0]]).collect()
        })
        .collect();
    let det = linalg::determinant(&matrix).abs();
    if det.is_zero() || !det.is_integer() {
        return Err(Error::InvariantViolation(format!(
            "symmetric lattice index evaluated to {det}"
        )));
    }
    let base = det.to_integer() as u128;
    Ok(base * u128::from(h).pow(aut.orbit_count() as u32))
}

/// The `W_ω`-orbit of `x` with the sign `ε_ω` of a group element reaching
/// each point (breadth-first, so the sign is the parity of the word length).
/// For regular `x` this enumerates `W_ω` itself.
pub fn folded_weyl_orbit(
    x: &Weight,
    aut: &Automorphism,
    alg: &Algebra,
) -> Result<Vec<(Weight, i8)>> {
    aut.check(alg)?;
    if !aut.is_symmetric(x) {
        return Err(Error::NotSymmetric(x.to_string()));
    }
    let mut index: HashMap<Weight, usize> = HashMap::from([(x.clone(), 0)]);
    let mut out = vec![(x.clone(), 1i8)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let (v, sign) = out[idx].clone();
        for o in 0..aut.orbit_count() {
            let w = aut.reflect_orbit(o, &v);
            if w == v || index.contains_key(&w) {
                continue;
            }
            if out.len() >= GROUP_SIZE_CAP {
                return Err(Error::GroupTooLarge(GROUP_SIZE_CAP));
            }
            index.insert(w.clone(), out.len());
            queue.push_back(out.len());
            out.push((w, -sign));
        }
    }
    Ok(out)
}

/// `|W_ω|`, from the orbit of the regular weight `ρ_ω`.
pub fn folded_weyl_group_order(aut: &Automorphism, alg: &Algebra) -> Result<usize> {
    folded_weyl_orbit(aut.rho_omega(), aut, alg).map(|o| o.len())
}
