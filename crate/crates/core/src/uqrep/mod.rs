//! Finite-dimensional `U_q(g)`-modules as explicit matrices over `Q(v)`.
//!
//! The irreducible module `W(λ)` is built weight space by weight space from
//! the highest weight vector. At each weight `μ` the candidate vectors
//! `f_i u` (with `u` already constructed at `μ + α_i`) are paired using the
//! contravariant form; the pivot columns of that Gram matrix give a basis of
//! the irreducible quotient and every other candidate is expressed in it.
//! The same routine builds irreducible modules of a Levi subalgebra by
//! restricting the set of active simple roots.

pub mod word;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseMatrix, SparseRecord};
use crate::report::CheckList;
use num_traits::One;

use crate::scalar::{gauss_binomial, q_integer, LaurentPoly, Rf, Q};

pub use word::{AlgebraWord, Gen, Word, WordTensor};

type SparseVec = Vec<(usize, Rf)>;

/// `q_i = v^{2 d_i}`.
pub fn q_i(cd: &CartanData, i: usize) -> Rf {
    Rf::v_pow(2 * cd.d(i) as i32)
}

/// A representation with diagonal torus action: generator matrices for
/// `e_i`, `f_i`, and one weight per basis vector (`k_i` acts by
/// `v^{d_i μ_i}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub cd: Arc<CartanData>,
    pub weights: Vec<Weight>,
    pub e: Vec<SparseMatrix>,
    pub f: Vec<SparseMatrix>,
}

impl MatrixRep {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn rank(&self) -> usize {
        self.cd.rank
    }

    /// Exponent of `v` by which `k_i` acts on basis vector `s`.
    pub fn k_exp(&self, s: usize, i: usize) -> i32 {
        self.cd.pair_simple(&self.weights[s], i)
    }

    pub fn k_power(&self, i: usize, p: i32) -> SparseMatrix {
        SparseMatrix::diagonal(
            (0..self.dim())
                .map(|s| Rf::v_pow(p * self.k_exp(s, i)))
                .collect(),
        )
    }

    pub fn gen_matrix(&self, g: Gen) -> SparseMatrix {
        match g {
            Gen::E(i) => self.e[i].clone(),
            Gen::F(i) => self.f[i].clone(),
            Gen::K(i) => self.k_power(i, 1),
            Gen::Kinv(i) => self.k_power(i, -1),
        }
    }

    /// Evaluate a word: `w = g₁g₂⋯` acts by `M(g₁)M(g₂)⋯`.
    pub fn act_word(&self, x: &AlgebraWord) -> SparseMatrix {
        let n = self.dim();
        let mut out = SparseMatrix::zeros(n, n);
        for (w, c) in x.terms() {
            let mut m = SparseMatrix::identity(n);
            for &g in w {
                m = m.mul(&self.gen_matrix(g));
            }
            out = out.add(&m.scale(c));
        }
        out
    }

    /// Apply a word to a vector (cheaper than forming the matrix).
    pub fn act_vec(&self, x: &AlgebraWord, v: &[Rf]) -> Vec<Rf> {
        let mut out = vec![Rf::zero(); self.dim()];
        for (w, c) in x.terms() {
            let mut cur = v.to_vec();
            for &g in w.iter().rev() {
                cur = match g {
                    Gen::E(i) => self.e[i].mul_vec(&cur),
                    Gen::F(i) => self.f[i].mul_vec(&cur),
                    Gen::K(i) | Gen::Kinv(i) => {
                        let sgn = if matches!(g, Gen::K(_)) { 1 } else { -1 };
                        cur.iter()
                            .enumerate()
                            .map(|(s, y)| {
                                if y.is_zero() {
                                    Rf::zero()
                                } else {
                                    y * &Rf::v_pow(sgn * self.k_exp(s, i))
                                }
                            })
                            .collect()
                    }
                };
            }
            for (o, y) in out.iter_mut().zip(&cur) {
                if !y.is_zero() {
                    *o += &(y * c);
                }
            }
        }
        out
    }

    /// Verify every defining relation as an exact matrix identity.
    pub fn check_relations(&self) -> CheckList {
        let cd = &self.cd;
        let r = self.rank();
        let n = self.dim();
        let id = SparseMatrix::identity(n);
        let mut report = CheckList::new();
        let k: Vec<SparseMatrix> = (0..r).map(|i| self.k_power(i, 1)).collect();
        let kinv: Vec<SparseMatrix> = (0..r).map(|i| self.k_power(i, -1)).collect();
        for i in 0..r {
            report.push(
                format!("k{0} k{0}^-1 = k{0}^-1 k{0} = 1", i + 1),
                k[i].mul(&kinv[i]) == id && kinv[i].mul(&k[i]) == id,
            );
            for j in 0..r {
                if i < j {
                    report.push(
                        format!("k{} k{} = k{} k{}", i + 1, j + 1, j + 1, i + 1),
                        k[i].mul(&k[j]) == k[j].mul(&k[i]),
                    );
                }
                let c = Rf::v_pow(cd.d(i) as i32 * cd.cartan_matrix[i][j]);
                let conj_e = k[i].mul(&self.e[j]).mul(&kinv[i]);
                report.push(
                    format!("k{0} e{1} k{0}^-1 = v^(a{0},a{1}) e{1}", i + 1, j + 1),
                    conj_e == self.e[j].scale(&c),
                );
                let conj_f = k[i].mul(&self.f[j]).mul(&kinv[i]);
                let cinv = c.inv().expect("nonzero");
                report.push(
                    format!("k{0} f{1} k{0}^-1 = v^-(a{0},a{1}) f{1}", i + 1, j + 1),
                    conj_f == self.f[j].scale(&cinv),
                );
                let comm = self.e[i].mul(&self.f[j]).sub(&self.f[j].mul(&self.e[i]));
                let expect = if i == j {
                    let qi = q_i(cd, i);
                    let denom = &qi - &qi.inv().expect("nonzero");
                    let k2 = k[i].mul(&k[i]);
                    let km2 = kinv[i].mul(&kinv[i]);
                    k2.sub(&km2).scale(&denom.inv().expect("q ≠ 1"))
                } else {
                    SparseMatrix::zeros(n, n)
                };
                report.push(format!("[e{}, f{}]", i + 1, j + 1), comm == expect);
                if i != j {
                    report.push(
                        format!("serre e{} e{}", i + 1, j + 1),
                        serre_sum(cd, &self.e[i], &self.e[j], i, j).is_zero(),
                    );
                    report.push(
                        format!("serre f{} f{}", i + 1, j + 1),
                        serre_sum(cd, &self.f[i], &self.f[j], i, j).is_zero(),
                    );
                }
            }
        }
        report
    }

    /// `K_{2ρ}` as a diagonal matrix.
    pub fn k2rho_matrix(&self) -> SparseMatrix {
        let k = k2rho(&self.cd);
        SparseMatrix::diagonal(
            self.weights
                .iter()
                .map(|w| Rf::v_pow(k.exponent_on(&self.cd, w)))
                .collect(),
        )
    }
}

/// `Σ_t (−1)^t [n choose t]_{q_i} x_i^t x_j x_i^{n−t}` with `n = 1 − a_ij`.
fn serre_sum(cd: &CartanData, xi: &SparseMatrix, xj: &SparseMatrix, i: usize, j: usize) -> SparseMatrix {
    let n = (1 - cd.cartan_matrix[i][j]) as i64;
    let dim = xi.rows();
    let mut pow = vec![SparseMatrix::identity(dim)];
    for t in 1..=n as usize {
        pow.push(pow[t - 1].mul(xi));
    }
    let mut acc = SparseMatrix::zeros(dim, dim);
    for t in 0..=n {
        let b = gauss_binomial(n, t, cd.d(i)).expect("0 <= t <= n");
        let c = if t % 2 == 0 { b } else { -b };
        let term = pow[t as usize].mul(xj).mul(&pow[(n - t) as usize]);
        acc = acc.add(&term.scale(&c));
    }
    acc
}

/// An irreducible module with highest weight `λ` for the subalgebra
/// generated by the torus and `e_i, f_i` with `i ∈ active`. Inactive
/// generators act by zero. With all indices active this is `W(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepModule {
    pub highest: Weight,
    pub active: Vec<usize>,
    pub rep: MatrixRep,
    /// Contravariant form, `(v₊, v₊) = 1`, block diagonal by weight.
    pub gram: SparseMatrix,
    /// `recipe[b] = Some((i, u))` records `w_b = f_i w_u`; `None` for `v₊`.
    pub recipe: Vec<Option<(usize, usize)>>,
    weight_index: BTreeMap<Weight, Vec<usize>>,
}

impl IrrepModule {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn cd(&self) -> &CartanData {
        &self.rep.cd
    }

    pub fn weights(&self) -> &[Weight] {
        &self.rep.weights
    }

    pub fn e(&self, i: usize) -> &SparseMatrix {
        &self.rep.e[i]
    }

    pub fn f(&self, i: usize) -> &SparseMatrix {
        &self.rep.f[i]
    }

    pub fn is_full(&self) -> bool {
        self.active.len() == self.rep.rank()
    }

    /// Basis indices of weight `μ` (empty if `μ` is not a weight).
    pub fn weight_space(&self, mu: &Weight) -> &[usize] {
        self.weight_index.get(mu).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Distinct weights, highest first.
    pub fn distinct_weights(&self) -> Vec<Weight> {
        let mut seen = BTreeSet::new();
        self.rep
            .weights
            .iter()
            .filter(|w| seen.insert((*w).clone()))
            .cloned()
            .collect()
    }

    pub fn lowest_index(&self) -> usize {
        self.dim() - 1
    }

    pub fn act_word(&self, x: &AlgebraWord) -> SparseMatrix {
        self.rep.act_word(x)
    }

    /// All defining relations; for Levi modules the relations of the
    /// inactive generators hold trivially since they act by zero, except
    /// `[e_i, f_i]`, which is only checked on active indices.
    pub fn check_serre(&self) -> CheckList {
        let all = self.rep.check_relations();
        if self.is_full() {
            return all;
        }
        let inactive: Vec<String> = (0..self.rep.rank())
            .filter(|i| !self.active.contains(i))
            .map(|i| format!("[e{0}, f{0}]", i + 1))
            .collect();
        CheckList {
            checks: all
                .checks
                .into_iter()
                .filter(|c| !inactive.contains(&c.name))
                .collect(),
        }
    }

    /// `(x u, w) = (u, x* w)` for every active generator, as `Mᵀ G = G M*`.
    pub fn check_contravariance(&self) -> CheckList {
        let mut report = CheckList::new();
        let g = &self.gram;
        report.push("gram symmetric", g.transpose() == *g);
        for &i in &self.active {
            let e = self.e(i);
            let f = self.f(i);
            report.push(
                format!("contravariance e{}", i + 1),
                e.transpose().mul(g) == g.mul(f),
            );
            report.push(
                format!("contravariance f{}", i + 1),
                f.transpose().mul(g) == g.mul(e),
            );
        }
        for i in 0..self.rep.rank() {
            let k = self.rep.k_power(i, 1);
            report.push(
                format!("contravariance k{}", i + 1),
                k.transpose().mul(g) == g.mul(&k),
            );
        }
        report
    }

    /// Block-diagonality of the Gram matrix across distinct weights.
    pub fn gram_block_diagonal(&self) -> bool {
        self.gram
            .entries()
            .all(|(r, c, _)| self.rep.weights[r] == self.rep.weights[c])
    }

    pub fn quantum_dimension(&self) -> Rf {
        quantum_dimension(&self.rep)
    }

    pub fn to_record(&self) -> IrrepRecord {
        IrrepRecord {
            algebra: self.cd().name(),
            highest: self.highest.clone(),
            active: self.active.clone(),
            weights: self.rep.weights.clone(),
            e: self.rep.e.iter().map(SparseMatrix::to_record).collect(),
            f: self.rep.f.iter().map(SparseMatrix::to_record).collect(),
            gram: self.gram.to_record(),
            recipe: self.recipe.clone(),
        }
    }

    pub fn from_record(rec: &IrrepRecord) -> Result<Self> {
        let cd = Arc::new(CartanData::from_name(&rec.algebra)?);
        let to_sparse = |v: &[SparseRecord]| -> Result<Vec<SparseMatrix>> {
            v.iter().map(SparseMatrix::from_record).collect()
        };
        let e = to_sparse(&rec.e)?;
        let f = to_sparse(&rec.f)?;
        let n = rec.weights.len();
        if e.len() != cd.rank
            || f.len() != cd.rank
            || e.iter().chain(&f).any(|m| m.rows() != n || m.cols() != n)
            || rec.recipe.len() != n
        {
            return Err(Error::Integrity("irrep record has inconsistent shapes".into()));
        }
        let mut weight_index: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (s, w) in rec.weights.iter().enumerate() {
            cd.check_rank(w)?;
            weight_index.entry(w.clone()).or_default().push(s);
        }
        Ok(IrrepModule {
            highest: rec.highest.clone(),
            active: rec.active.clone(),
            rep: MatrixRep {
                cd,
                weights: rec.weights.clone(),
                e,
                f,
            },
            gram: SparseMatrix::from_record(&rec.gram)?,
            recipe: rec.recipe.clone(),
            weight_index,
        })
    }
}

/// Serialized form of an [`IrrepModule`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepRecord {
    pub algebra: String,
    pub highest: Weight,
    pub active: Vec<usize>,
    pub weights: Vec<Weight>,
    pub e: Vec<SparseRecord>,
    pub f: Vec<SparseRecord>,
    pub gram: SparseRecord,
    pub recipe: Vec<Option<(usize, usize)>>,
}

/// `W(λ)` for dominant `λ`.
pub fn build_irrep(cd: &Arc<CartanData>, lambda: &Weight) -> Result<IrrepModule> {
    let all: Vec<usize> = (0..cd.rank).collect();
    build_module(cd, lambda, &all)
}

/// Irreducible module of the subalgebra generated by the torus and the
/// `e_i, f_i` with `i ∈ active`; `λ` must be dominant on `active`.
pub fn build_module(cd: &Arc<CartanData>, lambda: &Weight, active: &[usize]) -> Result<IrrepModule> {
    cd.check_rank(lambda)?;
    let mut active: Vec<usize> = active.to_vec();
    active.sort_unstable();
    active.dedup();
    if let Some(&i) = active.iter().find(|&&i| i >= cd.rank) {
        return Err(Error::IndexOutOfRange(format!("simple root {}", i + 1)));
    }
    if !lambda.is_dominant_on(&active) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let rank = cd.rank;
    let roots: Vec<Weight> = (0..rank).map(|i| cd.simple_root(i)).collect();

    let mut weights = vec![lambda.clone()];
    let mut recipe: Vec<Option<(usize, usize)>> = vec![None];
    let mut pos_in_block = vec![0usize];
    let mut index: BTreeMap<Weight, Vec<usize>> = BTreeMap::from([(lambda.clone(), vec![0])]);
    let mut blocks: BTreeMap<Weight, Matrix> =
        BTreeMap::from([(lambda.clone(), Matrix::identity(1))]);
    // ecol[j][b] = E_j w_b, fcol[i][u] = F_i w_u as sparse columns.
    let mut ecol: Vec<Vec<SparseVec>> = vec![vec![Vec::new()]; rank];
    let mut fcol: Vec<Vec<SparseVec>> = vec![vec![Vec::new()]; rank];

    let mut layer = vec![lambda.clone()];
    while !layer.is_empty() {
        let mut next: BTreeSet<Weight> = BTreeSet::new();
        for w in &layer {
            for &i in &active {
                next.insert(w.sub(&roots[i]));
            }
        }
        let mut new_layer = Vec::new();
        // highest first within a layer: lexicographically decreasing coordinates
        for mu in next.into_iter().rev() {
            let mut cands: Vec<(usize, usize)> = Vec::new();
            for &i in &active {
                if let Some(ids) = index.get(&mu.add(&roots[i])) {
                    cands.extend(ids.iter().map(|&u| (i, u)));
                }
            }
            // E_j (f_i u) = f_i (E_j u) + δ_ij [ν_i]_{q_i} u, ν = wt(u)
            let mut ec: Vec<Vec<SparseVec>> = Vec::with_capacity(cands.len());
            for &(i, u) in &cands {
                let mut per_j = vec![Vec::new(); rank];
                for &j in &active {
                    let mut acc: BTreeMap<usize, Rf> = BTreeMap::new();
                    for (w, a) in &ecol[j][u] {
                        for (t, b) in &fcol[i][*w] {
                            *acc.entry(*t).or_insert_with(Rf::zero) += &(a * b);
                        }
                    }
                    if i == j {
                        let nu_i = weights[u].0[i] as i64;
                        *acc.entry(u).or_insert_with(Rf::zero) += &q_integer(nu_i, cd.d(i));
                    }
                    per_j[j] = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                }
                ec.push(per_j);
            }
            // (f_i u, f_i' u') = (u, e_i f_i' u')
            let nc = cands.len();
            let mut g = Matrix::zeros(nc, nc);
            for (a, &(i, u)) in cands.iter().enumerate() {
                let up = &weights[u];
                let block = &blocks[up];
                let pu = pos_in_block[u];
                for (b, col) in ec.iter().enumerate() {
                    let mut acc = Rf::zero();
                    for (w, x) in &col[i] {
                        let gx = &block[(pu, pos_in_block[*w])];
                        if !gx.is_zero() {
                            acc += &(gx * x);
                        }
                    }
                    g[(a, b)] = acc;
                }
            }
            let pivots = g.clone().rref();
            if pivots.is_empty() {
                continue;
            }
            let nb = pivots.len();
            let mut gbb = Matrix::zeros(nb, nb);
            let mut gbc = Matrix::zeros(nb, nc);
            for (r, &pr) in pivots.iter().enumerate() {
                for (c, &pc) in pivots.iter().enumerate() {
                    gbb[(r, c)] = g[(pr, pc)].clone();
                }
                for c in 0..nc {
                    gbc[(r, c)] = g[(pr, c)].clone();
                }
            }
            let coords = gbb.solve(&gbc)?;
            let first = weights.len();
            let ids: Vec<usize> = (first..first + nb).collect();
            for (p, &pc) in pivots.iter().enumerate() {
                weights.push(mu.clone());
                recipe.push(Some(cands[pc]));
                pos_in_block.push(p);
                for j in 0..rank {
                    ecol[j].push(ec[pc][j].clone());
                    fcol[j].push(Vec::new());
                }
            }
            for (c, &(i, u)) in cands.iter().enumerate() {
                fcol[i][u] = (0..nb)
                    .filter(|&r| !coords[(r, c)].is_zero())
                    .map(|r| (ids[r], coords[(r, c)].clone()))
                    .collect();
            }
            blocks.insert(mu.clone(), gbb);
            index.insert(mu.clone(), ids);
            new_layer.push(mu);
        }
        layer = new_layer;
    }

    let n = weights.len();
    let to_matrix = |cols: &[SparseVec]| {
        let trip = cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, x)| (*r, c, x.clone())))
            .collect();
        SparseMatrix::from_triplets(n, n, trip)
    };
    let e: Vec<SparseMatrix> = ecol.iter().map(|c| to_matrix(c)).collect();
    let f: Vec<SparseMatrix> = fcol.iter().map(|c| to_matrix(c)).collect();
    let mut gtrip = Vec::new();
    for (w, ids) in &index {
        let block = &blocks[w];
        for (a, &ia) in ids.iter().enumerate() {
            for (b, &ib) in ids.iter().enumerate() {
                gtrip.push((ia, ib, block[(a, b)].clone()));
            }
        }
    }
    Ok(IrrepModule {
        highest: lambda.clone(),
        active,
        rep: MatrixRep {
            cd: cd.clone(),
            weights,
            e,
            f,
        },
        gram: SparseMatrix::from_triplets(n, n, gtrip),
        recipe,
        weight_index: index,
    })
}

/// `K_{2ρ} = ∏ k_j^{c_j}` with `Σ c_j α_j = 4ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMonomial {
    pub exponents: Vec<i32>,
}

impl CartanMonomial {
    /// Power of `v` by which the monomial acts on weight `μ`.
    pub fn exponent_on(&self, cd: &CartanData, mu: &Weight) -> i32 {
        self.exponents
            .iter()
            .enumerate()
            .map(|(j, c)| c * cd.pair_simple(mu, j))
            .sum()
    }

    pub fn to_word(&self) -> AlgebraWord {
        self.word_with_sign(1)
    }

    pub fn inverse_word(&self) -> AlgebraWord {
        self.word_with_sign(-1)
    }

    fn word_with_sign(&self, sign: i32) -> AlgebraWord {
        let mut w = Vec::new();
        for (j, &c) in self.exponents.iter().enumerate() {
            let c = c * sign;
            let g = if c >= 0 { Gen::K(j) } else { Gen::Kinv(j) };
            w.extend(std::iter::repeat_n(g, c.unsigned_abs() as usize));
        }
        AlgebraWord::word(&w)
    }
}

pub fn k2rho(cd: &CartanData) -> CartanMonomial {
    CartanMonomial {
        exponents: cd.two_rho.iter().map(|c| 2 * c).collect(),
    }
}

/// Trace of `K_{2ρ}`: `Σ_μ q^{(2ρ, μ)}`.
pub fn quantum_dimension(rep: &MatrixRep) -> Rf {
    let k = k2rho(&rep.cd);
    let mut acc = LaurentPoly::zero();
    for w in &rep.weights {
        acc += &LaurentPoly::monomial(k.exponent_on(&rep.cd, w), Q::one());
    }
    Rf::from_laurent(acc)
}

/// Spanning elements of `C_q(k)` with the `√−1` factors and the scalar
/// denominator of `Z_i` removed (the complex span is unchanged):
/// `X_i = e_i − q_i f_i`, `Y_i = e_i + q_i f_i` for `i ∈ Θ`, and
/// `Z_i = k_i − k_i⁻¹`, `S_i = k_i + k_i⁻¹ − 2` for all `i`.
pub fn coideal_spanning_set(cd: &CartanData, theta: &[usize]) -> Vec<(String, AlgebraWord)> {
    let mut out = Vec::new();
    for &i in theta {
        let qf = AlgebraWord::f(i).scale(&q_i(cd, i));
        out.push((format!("X{}", i + 1), &AlgebraWord::e(i) - &qf));
        out.push((format!("Y{}", i + 1), &AlgebraWord::e(i) + &qf));
    }
    for i in 0..cd.rank {
        out.push((format!("Z{}", i + 1), z_elem(i)));
        out.push((format!("S{}", i + 1), s_elem(i)));
    }
    out
}

fn z_elem(i: usize) -> AlgebraWord {
    &AlgebraWord::k(i) - &AlgebraWord::kinv(i)
}

fn s_elem(i: usize) -> AlgebraWord {
    &(&AlgebraWord::k(i) + &AlgebraWord::kinv(i)) - &AlgebraWord::scalar(Rf::from_int(2))
}

/// Check `Δ(z) ∈ C⊗U + U⊗C` for each spanning element `z` by exhibiting
/// explicit witnesses and comparing in the free tensor algebra:
/// `Δ(z) = z⊗k_i + k_i⁻¹⊗z` for `X, Y, Z`, and
/// `Δ(S_i) = S_i⊗k_i + k_i⁻¹⊗S_i + (S_i − Z_i)⊗(1 − k_i)`,
/// where `S_i − Z_i = 2(k_i⁻¹ − 1)` lies in the span.
pub fn check_coideal(cd: &CartanData, theta: &[usize]) -> CheckList {
    let mut report = CheckList::new();
    for (name, z) in coideal_spanning_set(cd, theta) {
        let i: usize = name[1..].parse::<usize>().expect("index") - 1;
        let k = AlgebraWord::k(i);
        let kinv = AlgebraWord::kinv(i);
        let mut witness = WordTensor::tensor(&z, &k).add(&WordTensor::tensor(&kinv, &z));
        if name.starts_with('S') {
            let c = &s_elem(i) - &z_elem(i);
            let u = &AlgebraWord::one() - &k;
            witness = witness.add(&WordTensor::tensor(&c, &u));
        }
        let counit_zero = z.counit().is_zero();
        report.push(
            format!("coideal {name}"),
            z.coproduct() == witness && counit_zero,
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(name: &str) -> Arc<CartanData> {
        Arc::new(CartanData::from_name(name).unwrap())
    }

    fn w(c: &[i32]) -> Weight {
        Weight(c.to_vec())
    }

    fn dense(m: &SparseMatrix) -> Vec<Vec<Rf>> {
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect()
    }

    fn rf(n: i64) -> Rf {
        Rf::from_int(n)
    }

    #[test]
    fn a1_fundamental_matches_closed_form() {
        let m = build_irrep(&cd("A1"), &w(&[1])).unwrap();
        assert_eq!(dense(m.e(0)), vec![vec![rf(0), rf(1)], vec![rf(0), rf(0)]]);
        assert_eq!(dense(m.f(0)), vec![vec![rf(0), rf(0)], vec![rf(1), rf(0)]]);
        assert_eq!(
            dense(&m.rep.k_power(0, 1)),
            vec![vec![Rf::v(), rf(0)], vec![rf(0), Rf::v_pow(-1)]]
        );
        assert!(m.check_serre().all_pass());
        // [e, f] acts as diag(1, −1)
        let x: AlgebraWord = "e1*f1 + (-1)*f1*e1".parse().unwrap();
        assert_eq!(dense(&m.act_word(&x)), vec![vec![rf(1), rf(0)], vec![rf(0), rf(-1)]]);
        let x = &AlgebraWord::e(0) - &AlgebraWord::f(0).scale(&Rf::q());
        assert_eq!(dense(&m.act_word(&x)), vec![vec![rf(0), rf(1)], vec![-Rf::q(), rf(0)]]);
        let kk = &AlgebraWord::k(0) * &AlgebraWord::kinv(0);
        assert_eq!(m.act_word(&kk), SparseMatrix::identity(2));
    }

    #[test]
    fn trivial_module() {
        for c in CartanData::supported() {
            let c = Arc::new(c);
            let m = build_irrep(&c, &c.zero_weight()).unwrap();
            assert_eq!(m.dim(), 1);
            assert!(m.rep.e.iter().chain(&m.rep.f).all(SparseMatrix::is_zero));
            assert!(m.quantum_dimension().is_one());
        }
    }

    /// Closed-form `sl2` action in the basis `f^k v₊`:
    /// `e f^k v₊ = [k][n−k+1] f^{k−1} v₊`.
    #[test]
    fn a1_agrees_with_closed_form_oracle() {
        let c = cd("A1");
        for n in 0..7 {
            let m = build_irrep(&c, &w(&[n])).unwrap();
            assert_eq!(m.dim(), n as usize + 1);
            for k in 0..=n as usize {
                for r in 0..=n as usize {
                    let fe = if r == k + 1 { rf(1) } else { rf(0) };
                    assert_eq!(m.f(0).get(r, k), fe);
                    let ee = if r + 1 == k {
                        q_integer(k as i64, 1) * q_integer(n as i64 - k as i64 + 1, 1)
                    } else {
                        rf(0)
                    };
                    assert_eq!(m.e(0).get(r, k), ee);
                }
            }
        }
    }

    #[test]
    fn relations_and_dimensions_small_grid() {
        for c in CartanData::supported() {
            let c = Arc::new(c);
            let all: Vec<usize> = (0..c.rank).collect();
            for lam in c.dominant_weights_up_to(2) {
                let m = build_irrep(&c, &lam).unwrap();
                assert_eq!(m.dim() as u64, c.weyl_dim(&lam).unwrap(), "{} {lam}", c.name());
                let rel = m.check_serre();
                assert!(rel.all_pass(), "{} {lam}: {:?}", c.name(), rel.failures().collect::<Vec<_>>());
                assert!(m.check_contravariance().all_pass());
                assert!(m.gram_block_diagonal());
                let mult = c.freudenthal(&lam, &all);
                for (mu, k) in &mult {
                    assert_eq!(m.weight_space(mu).len() as u64, *k);
                }
                // highest weight vector is annihilated by every e_i
                for i in 0..c.rank {
                    assert!(m.e(i).column(0).iter().all(Rf::is_zero));
                }
            }
        }
    }

    #[test]
    fn corrupted_module_fails() {
        let mut m = build_irrep(&cd("A2"), &w(&[1, 0])).unwrap();
        assert!(m.check_serre().all_pass());
        m.rep.e[0] = SparseMatrix::zeros(3, 3);
        let rep = m.check_serre();
        let failed: Vec<_> = rep.failures().map(|c| c.name.clone()).collect();
        assert!(failed.contains(&"[e1, f1]".to_string()));
    }

    #[test]
    fn levi_module() {
        let c = cd("A2");
        // gl2 doublet inside A2 with highest weight (1,1)
        let m = build_module(&c, &w(&[1, 1]), &[0]).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.weights(), &[w(&[1, 1]), w(&[-1, 2])]);
        assert!(m.check_serre().all_pass());
        assert!(m.rep.e[1].is_zero() && m.rep.f[1].is_zero());
        assert!(build_module(&c, &w(&[-1, 1]), &[0]).is_err());
        assert!(build_module(&c, &w(&[-1, 1]), &[1]).is_ok());
    }

    #[test]
    fn k2rho_values() {
        let a1 = cd("A1");
        let k = k2rho(&a1);
        assert_eq!(k.exponents, vec![2]);
        let m = build_irrep(&a1, &w(&[1])).unwrap();
        assert_eq!(
            m.rep.k2rho_matrix(),
            SparseMatrix::diagonal(vec![Rf::q(), Rf::q().inv().unwrap()])
        );
        assert_eq!(k.exponent_on(&a1, &w(&[0])), 0);
        let a2 = cd("A2");
        let m = build_irrep(&a2, &w(&[1, 0])).unwrap();
        let tr = m.quantum_dimension();
        assert_eq!(tr, Rf::v_pow(4) + Rf::one() + Rf::v_pow(-4));
        // Σ c_j α_j = 4ρ
        for c in CartanData::supported() {
            let k = k2rho(&c);
            assert_eq!(c.from_simple_coords(&k.exponents), c.rho().scale(4));
        }
    }

    /// `S²(x) = K_{2ρ} x K_{2ρ}⁻¹` on generators, as matrices.
    #[test]
    fn s_squared_is_conjugation() {
        for c in CartanData::supported() {
            let c = Arc::new(c);
            let lam = Weight(vec![1; c.rank]);
            let m = build_irrep(&c, &lam).unwrap();
            let k = m.rep.k2rho_matrix();
            let kinv = SparseMatrix::diagonal((0..m.dim()).map(|s| k.get(s, s).inv().unwrap()).collect());
            for g in Gen::all(c.rank) {
                let x = AlgebraWord::gen(g);
                let lhs = m.act_word(&x.antipode(&c).antipode(&c));
                let rhs = k.mul(&m.act_word(&x)).mul(&kinv);
                assert_eq!(lhs, rhs, "{g}");
            }
        }
    }

    /// `∏_α [(λ+ρ, α)]_q / [(ρ, α)]_q` with `[n]_q = (q^n − q^-n)/(q − q^-1)`.
    #[test]
    fn quantum_dimension_matches_q_weyl_formula() {
        for c in CartanData::supported() {
            let c = Arc::new(c);
            for lam in c.dominant_weights_up_to(2) {
                let m = build_irrep(&c, &lam).unwrap();
                let lr = lam.add(&c.rho());
                let mut oracle = Rf::one();
                for a in &c.positive_roots {
                    let x = c.pair_root_combo(&lr, a) as i64;
                    let y = c.pair_root_combo(&c.rho(), a) as i64;
                    oracle = oracle * q_integer(x, 1) / q_integer(y, 1);
                }
                let qd = m.quantum_dimension();
                assert_eq!(qd, oracle);
                assert_eq!(qd.bar(), qd);
                let one = crate::scalar::Q::from_integer(1.into());
                let at1 = qd.as_laurent().unwrap().eval(&one);
                assert_eq!(at1, crate::scalar::Q::from_integer((m.dim() as i64).into()));
                let dag = c.dagger(&lam).unwrap();
                let md = build_irrep(&c, &dag).unwrap();
                assert_eq!(md.quantum_dimension(), qd);
            }
        }
    }

    #[test]
    fn coideal_property() {
        for c in CartanData::supported() {
            let all: Vec<usize> = (0..c.rank).collect();
            assert!(check_coideal(&c, &all).all_pass());
            assert!(check_coideal(&c, &[]).all_pass());
        }
        // negative control: the primitive-style witness is wrong
        let e = AlgebraWord::e(0);
        let bad = WordTensor::tensor(&e, &AlgebraWord::one()).add(&WordTensor::tensor(&AlgebraWord::one(), &e));
        assert_ne!(e.coproduct(), bad);
    }

    #[test]
    fn record_round_trip() {
        let m = build_irrep(&cd("B2"), &w(&[1, 1])).unwrap();
        let rec = m.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: IrrepRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(IrrepModule::from_record(&back).unwrap(), m);
    }
}
