//! Weight systems of finite-dimensional irreducible modules.
//!
//! Dominant weights are found by walking down positive roots from the highest
//! weight (every dominant weight below `Λ` is reached this way), their
//! multiplicities come from Freudenthal's recursion, and the full multiset is
//! obtained by expanding Weyl orbits.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rootdata::Algebra;
use crate::weight::Weight;

/// Weight multiset of an irreducible highest-weight module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    highest: Weight,
    entries: BTreeMap<Weight, u64>,
}

impl WeightSystem {
    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, lambda: &Weight) -> u64 {
        self.entries.get(lambda).copied().unwrap_or(0)
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of multiplicities.
    pub fn dimension(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }
}

/// Shared memo of weight systems keyed by highest weight. Filling is
/// idempotent, so racing writers store identical values.
#[derive(Debug, Clone, Default)]
pub struct WeightCache {
    inner: Arc<RwLock<HashMap<Vec<i64>, Arc<WeightSystem>>>>,
}

impl WeightCache {
    fn get(&self, key: &[i64]) -> Option<Arc<WeightSystem>> {
        self.inner.read().ok()?.get(key).cloned()
    }

    fn insert(&self, key: Vec<i64>, ws: Arc<WeightSystem>) -> Arc<WeightSystem> {
        match self.inner.write() {
            Ok(mut map) => map.entry(key).or_insert(ws).clone(),
            Err(_) => ws,
        }
    }

    pub fn len(&self) -> usize {
        self.inner.read().map(|m| m.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Integer view of the root data used by the recursion.
struct IntRootData {
    n: usize,
    /// `D · F` for the common denominator `D` of the quadratic form.
    scaled_form: Vec<Vec<i64>>,
    simple_roots: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
}

impl IntRootData {
    fn new(alg: &Algebra) -> Self {
        let form = alg.quadratic_form();
        let denom = form
            .iter()
            .flatten()
            .fold(1i64, |acc, x| acc.lcm(x.denom()));
        let ints = |w: &Weight| w.to_ints().expect("roots are integral");
        IntRootData {
            n: alg.rank(),
            scaled_form: form
                .iter()
                .map(|row| row.iter().map(|x| (x * denom).to_integer()).collect())
                .collect(),
            simple_roots: alg.simple_roots().iter().map(ints).collect(),
            positive_roots: alg.positive_roots().iter().map(ints).collect(),
        }
    }

    fn ip(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.n {
            if a[i] != 0 {
                acc += a[i]
                    * (0..self.n)
                        .map(|j| self.scaled_form[i][j] * b[j])
                        .sum::<i64>();
            }
        }
        acc
    }

    fn dominant(&self, mu: &[i64]) -> Vec<i64> {
        let mut v = mu.to_vec();
        while let Some(i) = v.iter().position(|&c| c < 0) {
            let c = v[i];
            for (x, a) in v.iter_mut().zip(&self.simple_roots[i]) {
                *x -= c * a;
            }
        }
        v
    }

    fn orbit(&self, mu: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::from([mu.to_vec()]);
        seen.insert(mu.to_vec());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.n {
                if v[i] == 0 {
                    continue;
                }
                let c = v[i];
                let w: Vec<i64> = v
                    .iter()
                    .zip(&self.simple_roots[i])
                    .map(|(x, a)| x - c * a)
                    .collect();
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }
}

fn require_dominant_integral(lambda: &Weight, alg: &Algebra) -> Result<Vec<i64>> {
    lambda.check_rank(alg.rank())?;
    lambda
        .to_ints()
        .filter(|v| v.iter().all(|&c| c >= 0))
        .ok_or_else(|| Error::NotDominantIntegral(lambda.to_string()))
}

/// Dominant weights of `V(Λ)` with Freudenthal multiplicities, highest first.
fn dominant_multiplicities(top: &[i64], data: &IntRootData) -> Vec<(Vec<i64>, u64)> {
    let mut dominant: BTreeSet<Vec<i64>> = BTreeSet::from([top.to_vec()]);
    let mut queue = VecDeque::from([top.to_vec()]);
    while let Some(mu) = queue.pop_front() {
        for alpha in &data.positive_roots {
            let nu: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a - b).collect();
            if nu.iter().all(|&c| c >= 0) && dominant.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    let rho = vec![1i64; data.n];
    let mut order: Vec<Vec<i64>> = dominant.into_iter().collect();
    order.sort_by_key(|mu| std::cmp::Reverse(data.ip(mu, &rho)));

    let shifted = |mu: &[i64]| -> Vec<i64> { mu.iter().map(|c| c + 1).collect() };
    let top_norm = {
        let t = shifted(top);
        data.ip(&t, &t)
    };
    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    let mut out = Vec::with_capacity(order.len());
    for mu in order {
        let m = if mu == top {
            1
        } else {
            let mut num: i64 = 0;
            for alpha in &data.positive_roots {
                let mut step = mu.clone();
                loop {
                    for (x, a) in step.iter_mut().zip(alpha) {
                        *x += a;
                    }
                    let Some(&m) = mult.get(&data.dominant(&step)) else {
                        break;
                    };
                    num += m as i64 * data.ip(&step, alpha);
                }
            }
            let s = shifted(&mu);
            let den = top_norm - data.ip(&s, &s);
            debug_assert!(den > 0 && (2 * num) % den == 0);
            (2 * num / den) as u64
        };
        mult.insert(mu.clone(), m);
        out.push((mu, m));
    }
    out
}

/// Full weight multiset of the irreducible module with highest weight `Λ`.
pub fn weight_system(highest: &Weight, alg: &Algebra) -> Result<WeightSystem> {
    let top = require_dominant_integral(highest, alg)?;
    let data = IntRootData::new(alg);
    let mut entries = BTreeMap::new();
    for (mu, m) in dominant_multiplicities(&top, &data) {
        if m == 0 {
            continue;
        }
        for w in data.orbit(&mu) {
            entries.insert(Weight::from_ints(&w), m);
        }
    }
    Ok(WeightSystem {
        highest: highest.clone(),
        entries,
    })
}

impl Algebra {
    /// Memoized [`weight_system`].
    pub fn cached_weight_system(&self, highest: &Weight) -> Result<Arc<WeightSystem>> {
        let key = require_dominant_integral(highest, self)?;
        if let Some(ws) = self.cache.get(&key) {
            return Ok(ws);
        }
        let ws = Arc::new(weight_system(highest, self)?);
        Ok(self.cache.insert(key, ws))
    }

    pub fn weight_cache(&self) -> &WeightCache {
        &self.cache
    }
}

/// `Π_{α>0} (Λ+ρ, α)/(ρ, α)`.
pub fn weyl_dimension(highest: &Weight, alg: &Algebra) -> Result<u64> {
    require_dominant_integral(highest, alg)?;
    let shifted = highest + alg.rho();
    let mut prod = Rational64::from_integer(1);
    for alpha in alg.positive_roots() {
        prod *= alg.ip(&shifted, alpha) / alg.ip(alg.rho(), alpha);
    }
    if !prod.is_integer() || !prod.is_positive() {
        return Err(Error::InvariantViolation(format!(
            "Weyl dimension of {highest} evaluated to {prod}"
        )));
    }
    Ok(prod.to_integer() as u64)
}

/// Reflects `λ` into the dominant chamber, returning the number of simple
/// reflections used.
pub fn dominant_representative(lambda: &Weight, alg: &Algebra) -> (Weight, usize) {
    let mut v = lambda.clone();
    let mut steps = 0;
    while let Some(i) = v.coords().iter().position(|c| c.is_negative()) {
        v = alg.reflect(i, &v);
        steps += 1;
    }
    (v, steps)
}

/// The full Weyl group orbit of `λ`.
pub fn weyl_orbit(lambda: &Weight, alg: &Algebra) -> Result<BTreeSet<Weight>> {
    lambda.check_rank(alg.rank())?;
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(v) = queue.pop_front() {
        for i in 0..alg.rank() {
            if v[i].is_zero() {
                continue;
            }
            let w = alg.reflect(i, &v);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    Ok(seen)
}
