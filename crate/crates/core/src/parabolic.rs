//! Levi and parabolic subalgebras attached to a subset `Θ` of simple roots,
//! branching of `W(λ)` to the Levi subalgebra, and intertwiner spaces.
//!
//! Simple-root indices are 0-based internally and 1-based in text.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Weight};
use crate::engine::QuantumGroup;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseMatrix, SparseRecord};
use crate::tensor::tensor_rep;
use crate::uqrep::{Gen, IrrepModule, MatrixRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Levi,
    Parabolic,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Levi => "levi",
            Flavor::Parabolic => "parabolic",
        })
    }
}

/// The subset `Θ` and the generating sets of `U_q(l) ⊂ U_q(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicData {
    pub rank: usize,
    pub theta: Vec<usize>,
}

impl ParabolicData {
    pub fn new(cd: &CartanData, theta: &[usize]) -> Result<Self> {
        let mut t = theta.to_vec();
        t.sort_unstable();
        t.dedup();
        if let Some(&i) = t.iter().find(|&&i| i >= cd.rank) {
            return Err(Error::IndexOutOfRange(format!("simple root {} in Θ", i + 1)));
        }
        Ok(ParabolicData { rank: cd.rank, theta: t })
    }

    /// Parse a 1-based comma list such as `"1,2"`; empty means `Θ = ∅`.
    pub fn parse(cd: &CartanData, text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut theta = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let i: usize = part
                .parse()
                .map_err(|_| Error::Parse(format!("bad simple-root index `{part}`")))?;
            if i == 0 {
                return Err(Error::Parse("simple-root indices are 1-based".into()));
            }
            theta.push(i - 1);
        }
        Self::new(cd, &theta)
    }

    pub fn full(cd: &CartanData) -> Self {
        ParabolicData {
            rank: cd.rank,
            theta: (0..cd.rank).collect(),
        }
    }

    /// Every subset of the simple roots, in binary order.
    pub fn all_subsets(cd: &CartanData) -> Vec<Self> {
        (0u32..1 << cd.rank)
            .map(|mask| ParabolicData {
                rank: cd.rank,
                theta: (0..cd.rank).filter(|i| mask >> i & 1 == 1).collect(),
            })
            .collect()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.rank).filter(|i| !self.theta.contains(i)).collect()
    }

    /// `S_l`: the torus and `e_j, f_j` for `j ∈ Θ`.
    pub fn levi_generators(&self) -> Vec<Gen> {
        let mut g: Vec<Gen> = (0..self.rank).map(Gen::K).collect();
        for &j in &self.theta {
            g.push(Gen::E(j));
            g.push(Gen::F(j));
        }
        g
    }

    /// `S_p = S_l ∪ {e_j : j ∉ Θ}`.
    pub fn parabolic_generators(&self) -> Vec<Gen> {
        let mut g = self.levi_generators();
        g.extend(self.complement().into_iter().map(Gen::E));
        g
    }

    pub fn generators(&self, flavor: Flavor) -> Vec<Gen> {
        match flavor {
            Flavor::Levi => self.levi_generators(),
            Flavor::Parabolic => self.parabolic_generators(),
        }
    }
}

impl fmt::Display for ParabolicData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.theta.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Basis of `{X : X A_k = B_k X for all k}` for `rows × cols` matrices `X`
/// whose entries vanish outside `allowed`.
pub fn solve_intertwiners(
    rows: usize,
    cols: usize,
    allowed: impl Fn(usize, usize) -> bool,
    constraints: &[(SparseMatrix, SparseMatrix)],
) -> Vec<SparseMatrix> {
    let mut var = vec![vec![None; cols]; rows];
    let mut vars = Vec::new();
    for (r, row) in var.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            if allowed(r, c) {
                *slot = Some(vars.len());
                vars.push((r, c));
            }
        }
    }
    if vars.is_empty() {
        return Vec::new();
    }
    let mut eqs: Vec<Vec<(usize, crate::Rf)>> = Vec::new();
    for (a, b) in constraints {
        let a_t = a.transpose();
        for r in 0..rows {
            for c in 0..cols {
                let mut eq: BTreeMap<usize, crate::Rf> = BTreeMap::new();
                for (m, x) in a_t.row(c) {
                    if let Some(v) = var[r][*m] {
                        let e = eq.entry(v).or_insert_with(crate::Rf::zero);
                        *e = &*e + x;
                    }
                }
                for (m, y) in b.row(r) {
                    if let Some(v) = var[*m][c] {
                        let e = eq.entry(v).or_insert_with(crate::Rf::zero);
                        *e = &*e - y;
                    }
                }
                let eq: Vec<_> = eq.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                if !eq.is_empty() {
                    eqs.push(eq);
                }
            }
        }
    }
    let mut m = Matrix::zeros(eqs.len(), vars.len());
    for (i, eq) in eqs.iter().enumerate() {
        for (v, x) in eq {
            m[(i, *v)] = x.clone();
        }
    }
    m.nullspace()
        .into_iter()
        .map(|sol| {
            let trip = sol
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(v, x)| (vars[v].0, vars[v].1, x))
                .collect();
            SparseMatrix::from_triplets(rows, cols, trip)
        })
        .collect()
}

/// Basis of `Hom(src, dst)` for the subalgebra generated by `gens`
/// (which must contain the torus).
pub fn hom_between(src: &MatrixRep, dst: &MatrixRep, gens: &[Gen]) -> Vec<SparseMatrix> {
    let constraints: Vec<_> = gens
        .iter()
        .filter(|g| !matches!(g, Gen::K(_) | Gen::Kinv(_)))
        .map(|&g| (src.gen_matrix(g), dst.gen_matrix(g)))
        .collect();
    solve_intertwiners(
        dst.dim(),
        src.dim(),
        |r, c| dst.weights[r] == src.weights[c],
        &constraints,
    )
}

/// `φ ρ_src(g) = ρ_dst(g) φ` for every generator.
pub fn is_intertwiner(src: &MatrixRep, dst: &MatrixRep, gens: &[Gen], phi: &SparseMatrix) -> bool {
    gens.iter()
        .all(|&g| phi.mul(&src.gen_matrix(g)) == dst.gen_matrix(g).mul(phi))
}

/// Basis of `Hom_{U_q(l)}(W(λ), V_μ)` or `Hom_{U_q(p)}(W(λ), V_μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBasis {
    pub source: Weight,
    pub target: Weight,
    pub parabolic: ParabolicData,
    pub flavor: Flavor,
    pub maps: Vec<SparseMatrix>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn to_record(&self) -> HomRecord {
        HomRecord {
            source: self.source.clone(),
            target: self.target.clone(),
            theta: self.parabolic.theta.iter().map(|i| i + 1).collect(),
            flavor: self.flavor,
            maps: self.maps.iter().map(SparseMatrix::to_record).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomRecord {
    pub source: Weight,
    pub target: Weight,
    pub theta: Vec<usize>,
    pub flavor: Flavor,
    pub maps: Vec<SparseRecord>,
}

/// The irreducible Levi module `V_μ`; the generators `e_j, f_j` with
/// `j ∉ Θ` act by zero.
pub fn levi_irrep(qg: &QuantumGroup, mu: &Weight, p: &ParabolicData) -> Result<Arc<IrrepModule>> {
    qg.module(mu, &p.theta)
}

/// Lowest weight `μ̃` of `V_μ`.
pub fn levi_lowest(cd: &CartanData, mu: &Weight, p: &ParabolicData) -> Weight {
    cd.lowest_on(mu, &p.theta)
}

pub fn hom_space(
    qg: &QuantumGroup,
    lambda: &Weight,
    mu: &Weight,
    p: &ParabolicData,
    flavor: Flavor,
) -> Result<HomBasis> {
    let w = qg.irrep(lambda)?;
    let v = levi_irrep(qg, mu, p)?;
    Ok(HomBasis {
        source: lambda.clone(),
        target: mu.clone(),
        parabolic: p.clone(),
        flavor,
        maps: hom_between(&w.rep, &v.rep, &p.generators(flavor)),
    })
}

/// One Levi constituent of `W(λ)` with its embedding `V_μ → W(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviSummand {
    pub mu: Weight,
    pub copy: usize,
    pub embedding: SparseMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviBranching {
    pub lambda: Weight,
    pub parabolic: ParabolicData,
    pub summands: Vec<LeviSummand>,
}

impl LeviBranching {
    pub fn multiplicities(&self) -> BTreeMap<Weight, usize> {
        let mut m = BTreeMap::new();
        for s in &self.summands {
            *m.entry(s.mu.clone()).or_insert(0) += 1;
        }
        m
    }

    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.embedding.cols()).sum()
    }

    /// Each embedding intertwines the Levi generators, and together they
    /// span `W(λ)`.
    pub fn verify(&self, qg: &QuantumGroup) -> Result<bool> {
        let w = qg.irrep(&self.lambda)?;
        let gens = self.parabolic.levi_generators();
        let mut cols: Vec<Vec<crate::Rf>> = Vec::new();
        for s in &self.summands {
            let v = levi_irrep(qg, &s.mu, &self.parabolic)?;
            if !is_intertwiner(&v.rep, &w.rep, &gens, &s.embedding) {
                return Ok(false);
            }
            cols.extend((0..s.embedding.cols()).map(|c| s.embedding.column(c)));
        }
        Ok(cols.len() == w.dim() && crate::linalg::rank_of(&cols) == w.dim())
    }
}

/// Decompose `W(λ)` under `U_q(l)` through Levi highest-weight vectors.
pub fn restrict_levi(qg: &QuantumGroup, lambda: &Weight, p: &ParabolicData) -> Result<LeviBranching> {
    let cd = qg.cd().clone();
    let w = qg.irrep(lambda)?;
    let mut summands = Vec::new();
    for mu in w.distinct_weights() {
        if !mu.is_dominant_on(&p.theta) {
            continue;
        }
        let cols = w.weight_space(&mu).to_vec();
        let mut rows: Vec<Vec<crate::Rf>> = Vec::new();
        for &j in &p.theta {
            let up = mu.add(&cd.simple_root(j));
            let targets = w.weight_space(&up);
            if targets.is_empty() {
                continue;
            }
            let block = w.e(j).select(targets, &cols);
            for r in 0..block.rows() {
                rows.push(block.row(r).to_vec());
            }
        }
        let kernel = if rows.is_empty() {
            (0..cols.len())
                .map(|k| {
                    let mut v = vec![crate::Rf::zero(); cols.len()];
                    v[k] = crate::Rf::one();
                    v
                })
                .collect()
        } else {
            Matrix::from_rows(rows).nullspace()
        };
        if kernel.is_empty() {
            continue;
        }
        let v = levi_irrep(qg, &mu, p)?;
        for (copy, kv) in kernel.into_iter().enumerate() {
            let mut top = vec![crate::Rf::zero(); w.dim()];
            for (k, &c) in cols.iter().enumerate() {
                top[c] = kv[k].clone();
            }
            let mut emb: Vec<Vec<crate::Rf>> = Vec::with_capacity(v.dim());
            for b in 0..v.dim() {
                let col = match v.recipe[b] {
                    None => top.clone(),
                    Some((i, u)) => w.f(i).mul_vec(&emb[u]),
                };
                emb.push(col);
            }
            let trip = emb
                .iter()
                .enumerate()
                .flat_map(|(c, col)| {
                    col.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(move |(r, x)| (r, c, x.clone()))
                })
                .collect();
            summands.push(LeviSummand {
                mu: mu.clone(),
                copy,
                embedding: SparseMatrix::from_triplets(w.dim(), v.dim(), trip),
            });
        }
    }
    Ok(LeviBranching {
        lambda: lambda.clone(),
        parabolic: p.clone(),
        summands,
    })
}

/// Classical branching multiplicities by peeling Levi characters off the
/// character of `W(λ)`.
pub fn branching_oracle(cd: &CartanData, lambda: &Weight, p: &ParabolicData) -> BTreeMap<Weight, usize> {
    let all: Vec<usize> = (0..cd.rank).collect();
    let mut rest: BTreeMap<Weight, i64> = cd
        .freudenthal(lambda, &all)
        .into_iter()
        .map(|(k, v)| (k, v as i64))
        .collect();
    let mut out = BTreeMap::new();
    while let Some(mu) = rest
        .iter()
        .filter(|(_, &m)| m > 0)
        .map(|(w, _)| w.clone())
        .find(|w| p.theta.iter().all(|&j| rest.get(&w.add(&cd.simple_root(j))).copied().unwrap_or(0) <= 0))
    {
        let m = rest[&mu];
        for (w, k) in cd.freudenthal(&mu, &p.theta) {
            *rest.entry(w).or_insert(0) -= m * k as i64;
        }
        *out.entry(mu).or_insert(0) += m as usize;
    }
    out
}

/// `dim Hom_{U_q(l)}(W(γ), C)` for the highest root `γ`.
pub fn central_hom_count(qg: &QuantumGroup, p: &ParabolicData) -> Result<usize> {
    let gamma = qg.cd().highest_root_weight();
    Ok(hom_space(qg, &gamma, &qg.cd().zero_weight(), p, Flavor::Levi)?.dim())
}

/// A Levi intertwiner `W(λ) → V_μ`.
#[derive(Clone, Debug)]
pub struct LeviHom {
    pub lambda: Weight,
    pub mu: Weight,
    pub map: SparseMatrix,
}

/// `W(λ1+λ2) ↪ W(λ1) ⊗ W(λ2) → V_{μ1} ⊗ V_{μ2} → V_{μ1+μ2}`.
pub fn tensor_hom(qg: &QuantumGroup, p: &ParabolicData, a: &LeviHom, b: &LeviHom) -> Result<LeviHom> {
    if a.map.is_zero() || b.map.is_zero() {
        return Err(Error::Invariant("tensor_hom needs nonzero homomorphisms".into()));
    }
    let lambda = a.lambda.add(&b.lambda);
    let mu = a.mu.add(&b.mu);
    let cg = qg.cg(&a.lambda, &b.lambda)?;
    let top = cg
        .blocks
        .iter()
        .find(|blk| blk.nu == lambda)
        .ok_or_else(|| Error::Invariant("top Clebsch-Gordan block missing".into()))?;
    let n = cg.p.rows();
    let incl = SparseMatrix::from_triplets(
        n,
        top.dim,
        cg.p.entries()
            .filter(|(_, c, _)| *c >= top.offset && *c < top.offset + top.dim)
            .map(|(r, c, x)| (r, c - top.offset, x.clone()))
            .collect(),
    );
    let v1 = levi_irrep(qg, &a.mu, p)?;
    let v2 = levi_irrep(qg, &b.mu, p)?;
    let v = levi_irrep(qg, &mu, p)?;
    let vv = tensor_rep(&v1.rep, &v2.rep)?;
    let proj = hom_between(&vv, &v.rep, &p.levi_generators())
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invariant("no projection onto the top Levi constituent".into()))?;
    let map = proj.mul(&a.map.kron(&b.map)).mul(&incl);
    if map.is_zero() {
        return Err(Error::Invariant("induced homomorphism vanishes".into()));
    }
    Ok(LeviHom { lambda, mu, map })
}

/// `W(σ(μ)) = V_μ ⊕ V_μ^⊥` with `σ(μ)` the dominant weight in the orbit.
#[derive(Clone, Debug)]
pub struct LeviComplement {
    pub mu: Weight,
    pub sigma_mu: Weight,
    pub word: Vec<usize>,
    pub branching: LeviBranching,
    /// Index of the summand isomorphic to `V_μ`.
    pub v_index: usize,
}

impl LeviComplement {
    pub fn complement(&self) -> impl Iterator<Item = &LeviSummand> {
        self.branching
            .summands
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != self.v_index)
            .map(|(_, s)| s)
    }

    pub fn complement_dim(&self) -> usize {
        self.complement().map(|s| s.embedding.cols()).sum()
    }
}

pub fn levi_complement(qg: &QuantumGroup, mu: &Weight, p: &ParabolicData) -> Result<LeviComplement> {
    let cd = qg.cd();
    cd.check_rank(mu)?;
    if !mu.is_dominant_on(&p.theta) {
        return Err(Error::NotDominant(format!("{mu} on Θ = {p}")));
    }
    let (sigma_mu, word) = cd.dominant_orbit_rep(mu)?;
    let branching = restrict_levi(qg, &sigma_mu, p)?;
    let v_index = branching
        .summands
        .iter()
        .position(|s| s.mu == *mu)
        .ok_or_else(|| Error::Invariant(format!("V_{mu} is not a constituent of W{sigma_mu}")))?;
    Ok(LeviComplement {
        mu: mu.clone(),
        sigma_mu,
        word,
        branching,
        v_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i32]) -> Weight {
        Weight(c.to_vec())
    }

    fn setup(name: &str, theta: &[usize]) -> (QuantumGroup, ParabolicData) {
        let qg = QuantumGroup::from_name(name).unwrap();
        let p = ParabolicData::new(qg.cd(), theta).unwrap();
        (qg, p)
    }

    #[test]
    fn parse_theta() {
        let qg = QuantumGroup::from_name("A2").unwrap();
        assert_eq!(ParabolicData::parse(qg.cd(), "1").unwrap().theta, vec![0]);
        assert_eq!(ParabolicData::parse(qg.cd(), "").unwrap().theta, Vec::<usize>::new());
        assert_eq!(ParabolicData::parse(qg.cd(), "{2,1}").unwrap().to_string(), "{1,2}");
        assert!(ParabolicData::parse(qg.cd(), "3").is_err());
        assert!(ParabolicData::parse(qg.cd(), "0").is_err());
        assert_eq!(ParabolicData::all_subsets(qg.cd()).len(), 4);
    }

    #[test]
    fn branching_examples() {
        let (qg, full) = setup("A2", &[0, 1]);
        let b = restrict_levi(&qg, &w(&[1, 1]), &full).unwrap();
        assert_eq!(b.summands.len(), 1);
        assert!(b.verify(&qg).unwrap());

        let (qg1, torus) = setup("A1", &[]);
        let b = restrict_levi(&qg1, &w(&[3]), &torus).unwrap();
        assert_eq!(b.summands.len(), 4);
        assert!(b.summands.iter().all(|s| s.embedding.cols() == 1));
        assert!(b.verify(&qg1).unwrap());

        let p = ParabolicData::new(qg.cd(), &[0]).unwrap();
        let b = restrict_levi(&qg, &w(&[1, 1]), &p).unwrap();
        assert_eq!(b.total_dim(), 8);
        assert!(b.verify(&qg).unwrap());
        let oracle = branching_oracle(qg.cd(), &w(&[1, 1]), &p);
        assert_eq!(b.multiplicities(), oracle);
        // gl2 ⊂ sl3 on the adjoint: 2 + 2 + 3 + 1
        let mut dims: Vec<usize> = b.summands.iter().map(|s| s.embedding.cols()).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 2, 2, 3]);
    }

    #[test]
    fn branching_grid_matches_oracle() {
        for name in ["A2", "B2"] {
            let qg = QuantumGroup::from_name(name).unwrap();
            for p in ParabolicData::all_subsets(qg.cd()) {
                for lam in qg.cd().dominant_weights_up_to(2) {
                    let b = restrict_levi(&qg, &lam, &p).unwrap();
                    assert_eq!(b.multiplicities(), branching_oracle(qg.cd(), &lam, &p), "{name} {p} {lam}");
                    assert!(b.verify(&qg).unwrap());
                }
            }
        }
    }

    #[test]
    fn hom_dimension_criterion() {
        for (name, h) in [("A1", 4), ("A2", 2)] {
            let qg = QuantumGroup::from_name(name).unwrap();
            let cd = qg.cd().clone();
            for p in ParabolicData::all_subsets(&cd) {
                let grid = cd.dominant_weights_up_to(h);
                let mut targets = Vec::new();
                for lam in &grid {
                    for mu in restrict_levi(&qg, lam, &p).unwrap().multiplicities().into_keys() {
                        if !targets.contains(&mu) {
                            targets.push(mu);
                        }
                    }
                }
                for lam in &grid {
                    let low = cd.lowest_weight(lam).unwrap();
                    for mu in &targets {
                        let hb = hom_space(&qg, lam, mu, &p, Flavor::Parabolic).unwrap();
                        let expect = usize::from(low == levi_lowest(&cd, mu, &p));
                        assert_eq!(hb.dim(), expect, "{name} {p} {lam} {mu}");
                        let wr = &qg.irrep(lam).unwrap().rep;
                        let vr = &levi_irrep(&qg, mu, &p).unwrap().rep;
                        for phi in &hb.maps {
                            assert!(is_intertwiner(wr, vr, &p.parabolic_generators(), phi));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn levi_top_constituent() {
        let (qg, p) = setup("A2", &[0]);
        let hb = hom_space(&qg, &w(&[2, 1]), &w(&[2, 1]), &p, Flavor::Levi).unwrap();
        assert!(hb.dim() >= 1);
    }

    #[test]
    fn central_counts() {
        for cd in CartanData::supported() {
            let qg = QuantumGroup::new(cd.clone());
            for p in ParabolicData::all_subsets(&cd) {
                assert_eq!(central_hom_count(&qg, &p).unwrap(), cd.rank - p.theta.len(), "{} {p}", cd.name());
            }
        }
    }

    #[test]
    fn tensor_hom_examples() {
        let (qg, p) = setup("A2", &[0]);
        let zero = w(&[0, 0]);
        let hb = hom_space(&qg, &w(&[1, 1]), &zero, &p, Flavor::Levi).unwrap();
        assert_eq!(hb.dim(), 1);
        let phi = LeviHom {
            lambda: w(&[1, 1]),
            mu: zero.clone(),
            map: hb.maps[0].clone(),
        };
        let prod = tensor_hom(&qg, &p, &phi, &phi).unwrap();
        let w22 = qg.irrep(&w(&[2, 2])).unwrap();
        let triv = levi_irrep(&qg, &zero, &p).unwrap();
        assert!(is_intertwiner(&w22.rep, &triv.rep, &p.levi_generators(), &prod.map));
        assert!(hom_space(&qg, &w(&[2, 2]), &zero, &p, Flavor::Levi).unwrap().dim() >= 1);

        let (qg1, torus) = setup("A1", &[]);
        let a = LeviHom {
            lambda: w(&[1]),
            mu: w(&[-1]),
            map: hom_space(&qg1, &w(&[1]), &w(&[-1]), &torus, Flavor::Levi).unwrap().maps[0].clone(),
        };
        let prod = tensor_hom(&qg1, &torus, &a, &a).unwrap();
        assert_eq!(prod.mu, w(&[-2]));
        assert!(!prod.map.is_zero());

        let zero_map = LeviHom {
            map: SparseMatrix::zeros(1, 2),
            ..a.clone()
        };
        assert!(tensor_hom(&qg1, &torus, &a, &zero_map).is_err());
    }

    #[test]
    fn complements() {
        let (qg, p) = setup("A2", &[0]);
        let c = levi_complement(&qg, &w(&[1, 0]), &p).unwrap();
        assert_eq!(c.sigma_mu, w(&[1, 0]));
        assert_eq!(c.complement_dim(), 1);

        let (qg1, torus) = setup("A1", &[]);
        let c = levi_complement(&qg1, &w(&[-1]), &torus).unwrap();
        assert_eq!(c.sigma_mu, w(&[1]));
        let rest: Vec<Weight> = c.complement().map(|s| s.mu.clone()).collect();
        assert_eq!(rest, vec![w(&[1])]);

        let full = ParabolicData::full(qg.cd());
        assert_eq!(levi_complement(&qg, &w(&[1, 1]), &full).unwrap().complement_dim(), 0);
        assert!(levi_complement(&qg, &w(&[-1, 0]), &p).is_err());
    }
}
