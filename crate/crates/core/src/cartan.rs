//! Cartan data, integral weights and Weyl group computations.
//!
//! Weights are integer vectors in the fundamental-weight basis; roots are
//! stored in simple-root coordinates. The inner product is normalized so that
//! `(α_i, α_i) = 2 d_i`, hence `(μ, α_i) = d_i μ_i` is always an integer.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Q;

/// Integral weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Dominant with respect to the indices in `subset`.
    pub fn is_dominant_on(&self, subset: &[usize]) -> bool {
        subset.iter().all(|&i| self.0[i] >= 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Sum of fundamental coordinates.
    pub fn level(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `3`, `1,0`, `(1,0)` or `-1, 2`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        t.split(',')
            .map(|x| {
                x.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad weight `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

/// Cartan type letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

/// Cartan data of a simple Lie algebra of small rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    /// `a_ij = 2(α_i, α_j)/(α_i, α_i)`.
    pub cartan_matrix: Vec<Vec<i32>>,
    /// `d_i = (α_i, α_i)/2`.
    pub symmetrizers: Vec<u32>,
    /// Positive roots in simple-root coordinates.
    pub positive_roots: Vec<Vec<i32>>,
    /// `2ρ` in simple-root coordinates.
    pub two_rho: Vec<i32>,
    /// Highest root in simple-root coordinates.
    pub highest_root: Vec<i32>,
    #[serde(skip)]
    inv_cartan: Vec<Vec<Q>>,
}

impl CartanData {
    /// Look up a supported type: `A1`, `A2`, `A3` or `B2`.
    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim();
        let unsupported = || Error::UnsupportedAlgebra(name.to_string());
        let (letter, rank) = name.split_at(1.min(name.len()));
        let rank: usize = rank.parse().map_err(|_| unsupported())?;
        let family = match letter {
            "A" | "a" => Family::A,
            "B" | "b" => Family::B,
            _ => return Err(unsupported()),
        };
        Self::new(family, rank).ok_or_else(unsupported)
    }

    /// Table lookup; new types are added here.
    pub fn new(family: Family, rank: usize) -> Option<Self> {
        let (matrix, sym, roots, highest): (Vec<Vec<i32>>, Vec<u32>, Vec<Vec<i32>>, Vec<i32>) =
            match (family, rank) {
                (Family::A, 1) => (vec![vec![2]], vec![1], vec![vec![1]], vec![1]),
                (Family::A, 2) => (
                    vec![vec![2, -1], vec![-1, 2]],
                    vec![1, 1],
                    vec![vec![1, 0], vec![0, 1], vec![1, 1]],
                    vec![1, 1],
                ),
                (Family::A, 3) => (
                    vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
                    vec![1, 1, 1],
                    vec![
                        vec![1, 0, 0],
                        vec![0, 1, 0],
                        vec![0, 0, 1],
                        vec![1, 1, 0],
                        vec![0, 1, 1],
                        vec![1, 1, 1],
                    ],
                    vec![1, 1, 1],
                ),
                // α1 long, α2 short.
                (Family::B, 2) => (
                    vec![vec![2, -1], vec![-2, 2]],
                    vec![2, 1],
                    vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]],
                    vec![1, 2],
                ),
                _ => return None,
            };
        let two_rho = (0..rank)
            .map(|i| roots.iter().map(|r| r[i]).sum())
            .collect();
        let mut cd = CartanData {
            family,
            rank,
            cartan_matrix: matrix,
            symmetrizers: sym,
            positive_roots: roots,
            two_rho,
            highest_root: highest,
            inv_cartan: Vec::new(),
        };
        cd.inv_cartan = invert_int(&cd.cartan_matrix);
        Some(cd)
    }

    /// All supported algebras.
    pub fn supported() -> Vec<CartanData> {
        ["A1", "A2", "A3", "B2"]
            .iter()
            .map(|n| Self::from_name(n).expect("table entry"))
            .collect()
    }

    pub fn name(&self) -> String {
        format!("{:?}{}", self.family, self.rank)
    }

    pub fn d(&self, i: usize) -> u32 {
        self.symmetrizers[i]
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                weight: w.to_string(),
                got: w.rank(),
                expected: self.rank,
            });
        }
        Ok(())
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.rank)
    }

    /// `ρ` has fundamental coordinates `(1, …, 1)`.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// Simple root `α_i` in fundamental coordinates (column `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|j| self.cartan_matrix[j][i]).collect())
    }

    /// Convert simple-root coordinates to fundamental coordinates.
    pub fn from_simple_coords(&self, c: &[i32]) -> Weight {
        let mut w = vec![0; self.rank];
        for (i, &ci) in c.iter().enumerate() {
            for (j, wj) in w.iter_mut().enumerate() {
                *wj += ci * self.cartan_matrix[j][i];
            }
        }
        Weight(w)
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn simple_coords(&self, w: &Weight) -> Vec<Q> {
        self.inv_cartan
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&w.0)
                    .fold(Q::zero(), |acc, (a, &b)| acc + a * Q::from_integer(BigInt::from(b)))
            })
            .collect()
    }

    /// `(μ, α_i) = d_i μ_i`.
    pub fn pair_simple(&self, mu: &Weight, i: usize) -> i32 {
        self.d(i) as i32 * mu.0[i]
    }

    /// `(μ, Σ c_j α_j)` for integer simple-root coordinates `c`.
    pub fn pair_root_combo(&self, mu: &Weight, c: &[i32]) -> i32 {
        c.iter()
            .enumerate()
            .map(|(j, &cj)| cj * self.pair_simple(mu, j))
            .sum()
    }

    /// The bilinear form `(λ, μ)`.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        let c = self.simple_coords(b);
        c.iter()
            .enumerate()
            .fold(Q::zero(), |acc, (j, cj)| {
                acc + cj * Q::from_integer(BigInt::from(self.pair_simple(a, j)))
            })
    }

    /// Inner product of rational weights in fundamental coordinates.
    pub fn inner_q(&self, a: &[Q], b: &[Q]) -> Q {
        let mut cb = vec![Q::zero(); self.rank];
        for (i, row) in self.inv_cartan.iter().enumerate() {
            for (x, y) in row.iter().zip(b) {
                cb[i] += x * y;
            }
        }
        cb.iter().enumerate().fold(Q::zero(), |acc, (j, cj)| {
            acc + cj * &a[j] * Q::from_integer(BigInt::from(self.d(j)))
        })
    }

    /// Simple reflection `s_i(μ) = μ − μ_i α_i`.
    pub fn reflect(&self, mu: &Weight, i: usize) -> Weight {
        let a = self.simple_root(i);
        Weight(mu.0.iter().zip(&a.0).map(|(m, r)| m - mu.0[i] * r).collect())
    }

    /// Apply reflections in order: `word[0]` first.
    pub fn apply_word(&self, mu: &Weight, word: &[usize]) -> Weight {
        word.iter().fold(mu.clone(), |w, &i| self.reflect(&w, i))
    }

    /// `w₀^Θ(μ)` for the Weyl group generated by reflections in `subset`:
    /// reflect until antidominant on `subset`.
    pub fn lowest_on(&self, mu: &Weight, subset: &[usize]) -> Weight {
        let mut w = mu.clone();
        while let Some(&i) = subset.iter().find(|&&i| w.0[i] > 0) {
            w = self.reflect(&w, i);
        }
        w
    }

    /// Lowest weight `λ̄ = w₀(λ)` of `W(λ)`.
    pub fn lowest_weight(&self, lambda: &Weight) -> Result<Weight> {
        self.check_rank(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let all: Vec<usize> = (0..self.rank).collect();
        Ok(self.lowest_on(lambda, &all))
    }

    /// `λ† = −λ̄`, the highest weight of the dual module.
    pub fn dagger(&self, lambda: &Weight) -> Result<Weight> {
        Ok(self.lowest_weight(lambda)?.neg())
    }

    /// Dominant weight in the orbit of `μ` and the reflection word (applied
    /// left to right) that reaches it.
    pub fn dominant_orbit_rep(&self, mu: &Weight) -> Result<(Weight, Vec<usize>)> {
        self.check_rank(mu)?;
        let mut w = mu.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| w.0[i] < 0) {
            w = self.reflect(&w, i);
            word.push(i);
        }
        Ok((w, word))
    }

    /// Brute-force Weyl orbit by breadth-first search.
    pub fn weyl_orbit(&self, mu: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([mu.clone()]);
        seen.insert(mu.clone());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank {
                let r = self.reflect(&w, i);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    /// Weyl dimension formula `∏_{α>0} (λ+ρ, α)/(ρ, α)`.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<u64> {
        self.check_rank(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let lr = lambda.add(&self.rho());
        let rho = self.rho();
        let mut num = Q::one();
        for a in &self.positive_roots {
            let x = self.pair_root_combo(&lr, a);
            let y = self.pair_root_combo(&rho, a);
            num *= Q::new(BigInt::from(x), BigInt::from(y));
        }
        debug_assert!(num.is_integer());
        Ok(num.to_integer().try_into().expect("dimension fits in u64"))
    }

    /// Positive roots (fundamental coordinates) whose support lies in `subset`.
    pub fn positive_roots_on(&self, subset: &[usize]) -> Vec<Weight> {
        self.positive_roots
            .iter()
            .filter(|r| r.iter().enumerate().all(|(i, &c)| c == 0 || subset.contains(&i)))
            .map(|r| self.from_simple_coords(r))
            .collect()
    }

    pub fn highest_root_weight(&self) -> Weight {
        self.from_simple_coords(&self.highest_root)
    }

    /// Classical weight multiplicities of the irreducible module of the
    /// reductive subalgebra generated by the torus and the simple roots in
    /// `subset` (the whole algebra when `subset` is everything), computed
    /// with Freudenthal's recursion.
    pub fn freudenthal(&self, lambda: &Weight, subset: &[usize]) -> BTreeMap<Weight, u64> {
        let roots = self.positive_roots_on(subset);
        let half = Q::new(BigInt::from(1), BigInt::from(2));
        let to_q = |w: &Weight| -> Vec<Q> { w.0.iter().map(|&x| Q::from_integer(x.into())).collect() };
        let mut rho_l = vec![Q::zero(); self.rank];
        for r in &roots {
            for (k, &x) in r.0.iter().enumerate() {
                rho_l[k] += &half * Q::from_integer(x.into());
            }
        }
        let shifted = |w: &Weight| -> Vec<Q> {
            to_q(w).into_iter().zip(&rho_l).map(|(a, b)| a + b).collect()
        };
        let lr = shifted(lambda);
        let top = self.inner_q(&lr, &lr);

        let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
        mult.insert(lambda.clone(), 1);
        let mut layer: BTreeSet<Weight> = BTreeSet::from([lambda.clone()]);
        loop {
            let mut next = BTreeSet::new();
            for w in &layer {
                for &i in subset {
                    next.insert(w.sub(&self.simple_root(i)));
                }
            }
            let mut kept = BTreeSet::new();
            for mu in next {
                let mr = shifted(&mu);
                let denom = &top - self.inner_q(&mr, &mr);
                let mut acc = Q::zero();
                for a in &roots {
                    let mut k = 1;
                    loop {
                        let up = mu.add(&a.scale(k));
                        match mult.get(&up) {
                            Some(&m) => {
                                acc += Q::from_integer(BigInt::from(m)) * self.inner(&up, a);
                            }
                            None => {
                                // weights along a root string are contiguous
                                break;
                            }
                        }
                        k += 1;
                    }
                }
                if acc.is_zero() || denom.is_zero() {
                    continue;
                }
                let m = Q::from_integer(2.into()) * acc / denom;
                debug_assert!(m.is_integer());
                let m: u64 = m.to_integer().try_into().unwrap_or(0);
                if m > 0 {
                    mult.insert(mu.clone(), m);
                    kept.insert(mu);
                }
            }
            if kept.is_empty() {
                break;
            }
            layer = kept;
        }
        mult
    }

    /// Dominant weights with fundamental-coordinate sum at most `h`.
    pub fn dominant_weights_up_to(&self, h: u32) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut cur = vec![0i32; self.rank];
        fn rec(i: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Weight>) {
            if i == cur.len() {
                out.push(Weight(cur.clone()));
                return;
            }
            for x in 0..=left {
                cur[i] = x;
                rec(i + 1, left - x, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, h as i32, &mut cur, &mut out);
        out.sort_by_key(|w| (w.level(), std::cmp::Reverse(w.clone())));
        out
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("cartan data serializes")
    }
}

fn invert_int(m: &[Vec<i32>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).expect("nonsingular Cartan matrix");
        a.swap(p, col);
        inv.swap(p, col);
        let pinv = a[col][col].recip();
        for c in 0..n {
            a[col][c] = &a[col][c] * &pinv;
            inv[col][c] = &inv[col][c] * &pinv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                    let t = &f * &inv[col][c];
                    inv[r][c] -= t;
                }
            }
        }
    }
    inv
}
