//! Tensor products through the coproduct and explicit Clebsch-Gordan
//! decompositions.
//!
//! Product basis vector `w_s ⊗ w_t` has index `s·d_b + t`. A decomposition
//! stores the change of basis `P` whose columns are the canonical bases of
//! the isotypic blocks, generated from each highest weight vector with the
//! same `f`-recipe used by [`crate::uqrep::build_module`]; conjugating the
//! product action by `P` therefore reproduces the canonical irrep matrices
//! exactly.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};
use crate::linalg::{invert_graded, Matrix, SparseMatrix, SparseRecord};
use crate::report::CheckList;
use crate::scalar::Rf;
use crate::uqrep::{IrrepModule, MatrixRep};

/// `Δ(x)` acting on `A ⊗ B`:
/// `e_i ↦ E_i⊗K_i + K_i⁻¹⊗E_i`, `f_i ↦ F_i⊗K_i + K_i⁻¹⊗F_i`.
pub fn tensor_rep(a: &MatrixRep, b: &MatrixRep) -> Result<MatrixRep> {
    if a.cd != b.cd {
        return Err(Error::AlgebraMismatch);
    }
    let r = a.rank();
    let weights = a
        .weights
        .iter()
        .flat_map(|x| b.weights.iter().map(move |y| x.add(y)))
        .collect();
    let mut e = Vec::with_capacity(r);
    let mut f = Vec::with_capacity(r);
    for i in 0..r {
        let ka = a.k_power(i, -1);
        let kb = b.k_power(i, 1);
        e.push(a.e[i].kron(&kb).add(&ka.kron(&b.e[i])));
        f.push(a.f[i].kron(&kb).add(&ka.kron(&b.f[i])));
    }
    Ok(MatrixRep {
        cd: a.cd.clone(),
        weights,
        e,
        f,
    })
}

#[derive(Clone, Debug)]
pub struct TensorModule {
    pub left: Weight,
    pub right: Weight,
    pub left_dim: usize,
    pub right_dim: usize,
    pub rep: MatrixRep,
}

pub fn tensor_module(a: &IrrepModule, b: &IrrepModule) -> Result<TensorModule> {
    Ok(TensorModule {
        left: a.highest.clone(),
        right: b.highest.clone(),
        left_dim: a.dim(),
        right_dim: b.dim(),
        rep: tensor_rep(&a.rep, &b.rep)?,
    })
}

fn weight_space(rep: &MatrixRep, mu: &Weight) -> Vec<usize> {
    (0..rep.dim()).filter(|&s| rep.weights[s] == *mu).collect()
}

/// Basis of `{u of weight ν : e_i u = 0 ∀i}` in reduced-echelon nullspace
/// order (one vector per free column, that coordinate set to one).
pub fn highest_weight_vectors(rep: &MatrixRep, nu: &Weight) -> Vec<Vec<Rf>> {
    let cols = weight_space(rep, nu);
    if cols.is_empty() {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Rf>> = Vec::new();
    for i in 0..rep.rank() {
        let target = weight_space(rep, &nu.add(&rep.cd.simple_root(i)));
        if target.is_empty() {
            continue;
        }
        let block = rep.e[i].select(&target, &cols);
        for r in 0..block.rows() {
            rows.push(block.row(r).to_vec());
        }
    }
    let kernel = if rows.is_empty() {
        (0..cols.len())
            .map(|k| (0..cols.len()).map(|c| if c == k { Rf::one() } else { Rf::zero() }).collect())
            .collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    kernel
        .into_iter()
        .map(|v| {
            let mut full = vec![Rf::zero(); rep.dim()];
            for (k, &c) in cols.iter().enumerate() {
                full[c] = v[k].clone();
            }
            full
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CGBlock {
    pub nu: Weight,
    /// Copy number within the `ν`-isotypic component.
    pub copy: usize,
    /// First column of the block in `P`.
    pub offset: usize,
    pub dim: usize,
}

/// Change of basis from the product basis to the canonical block basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CGDecomposition {
    pub left: Weight,
    pub right: Weight,
    pub blocks: Vec<CGBlock>,
    /// Columns: block basis vectors in product coordinates.
    pub p: SparseMatrix,
    pub pinv: SparseMatrix,
    /// Transpose of `P⁻¹`, for column access.
    pub pinv_t: SparseMatrix,
    /// Block index of every column of `P`.
    pub column_block: Vec<usize>,
}

impl CGDecomposition {
    pub fn multiplicities(&self) -> BTreeMap<Weight, usize> {
        let mut m = BTreeMap::new();
        for b in &self.blocks {
            *m.entry(b.nu.clone()).or_insert(0) += 1;
        }
        m
    }

    /// `P⁻¹ T(x) P` equals the canonical block matrices for every generator,
    /// `P P⁻¹ = 1`, and `Σ m_ν d_ν = dim`.
    pub fn verify(
        &self,
        t: &TensorModule,
        irrep: &dyn Fn(&Weight) -> Result<Arc<IrrepModule>>,
    ) -> Result<CheckList> {
        let n = t.rep.dim();
        let mut report = CheckList::new();
        report.push(
            "sum of block dimensions",
            self.blocks.iter().map(|b| b.dim).sum::<usize>() == n,
        );
        report.push("P P^-1 = 1", self.p.mul(&self.pinv) == SparseMatrix::identity(n));
        let mut mods = Vec::new();
        for b in &self.blocks {
            mods.push(irrep(&b.nu)?);
        }
        for i in 0..t.rep.rank() {
            for (name, prod, pick) in [
                ("e", &t.rep.e[i], 0usize),
                ("f", &t.rep.f[i], 1usize),
            ] {
                let conj = self.pinv.mul(prod).mul(&self.p);
                let mut trip = Vec::new();
                for (b, m) in self.blocks.iter().zip(&mods) {
                    let src = if pick == 0 { m.e(i) } else { m.f(i) };
                    for (r, c, x) in src.entries() {
                        trip.push((b.offset + r, b.offset + c, x.clone()));
                    }
                }
                let expect = SparseMatrix::from_triplets(n, n, trip);
                report.push(format!("block form {}{}", name, i + 1), conj == expect);
            }
        }
        Ok(report)
    }

    pub fn to_record(&self) -> CGRecord {
        CGRecord {
            left: self.left.clone(),
            right: self.right.clone(),
            blocks: self.blocks.clone(),
            p: self.p.to_record(),
            pinv: self.pinv.to_record(),
        }
    }

    pub fn from_record(rec: &CGRecord) -> Result<Self> {
        let p = SparseMatrix::from_record(&rec.p)?;
        let pinv = SparseMatrix::from_record(&rec.pinv)?;
        let mut column_block = Vec::new();
        for (k, b) in rec.blocks.iter().enumerate() {
            if b.offset != column_block.len() {
                return Err(Error::Integrity("CG record blocks are not contiguous".into()));
            }
            column_block.extend(std::iter::repeat_n(k, b.dim));
        }
        if column_block.len() != p.cols() || p.rows() != p.cols() || pinv.rows() != p.cols() {
            return Err(Error::Integrity("CG record has inconsistent shapes".into()));
        }
        Ok(CGDecomposition {
            left: rec.left.clone(),
            right: rec.right.clone(),
            blocks: rec.blocks.clone(),
            p,
            pinv_t: pinv.transpose(),
            pinv,
            column_block,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CGRecord {
    pub left: Weight,
    pub right: Weight,
    pub blocks: Vec<CGBlock>,
    pub p: SparseRecord,
    pub pinv: SparseRecord,
}

/// Order of highest weights in a decomposition: decreasing `(ν, 2ρ)`, then
/// lexicographically decreasing.
fn block_order(cd: &CartanData, a: &Weight, b: &Weight) -> std::cmp::Ordering {
    let ka = cd.pair_root_combo(a, &cd.two_rho);
    let kb = cd.pair_root_combo(b, &cd.two_rho);
    kb.cmp(&ka).then_with(|| b.cmp(a))
}

/// Full Clebsch-Gordan decomposition of a tensor module.
pub fn decompose(
    t: &TensorModule,
    irrep: &dyn Fn(&Weight) -> Result<Arc<IrrepModule>>,
) -> Result<CGDecomposition> {
    let rep = &t.rep;
    let cd = rep.cd.clone();
    let n = rep.dim();
    let mut dominant: Vec<Weight> = rep.weights.iter().filter(|w| w.is_dominant()).cloned().collect();
    dominant.sort();
    dominant.dedup();
    dominant.sort_by(|a, b| block_order(&cd, a, b));

    let mut columns: Vec<Vec<Rf>> = Vec::with_capacity(n);
    let mut col_weights: Vec<Weight> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    let mut column_block = Vec::with_capacity(n);
    for nu in &dominant {
        let hw = highest_weight_vectors(rep, nu);
        if hw.is_empty() {
            continue;
        }
        let m = irrep(nu)?;
        for (copy, h) in hw.into_iter().enumerate() {
            let offset = columns.len();
            let mut images: Vec<Vec<Rf>> = Vec::with_capacity(m.dim());
            for b in 0..m.dim() {
                let img = match m.recipe[b] {
                    None => h.clone(),
                    Some((i, u)) => rep.f[i].mul_vec(&images[u]),
                };
                images.push(img);
            }
            for (b, img) in images.into_iter().enumerate() {
                columns.push(img);
                col_weights.push(m.weights()[b].clone());
                column_block.push(blocks.len());
            }
            blocks.push(CGBlock {
                nu: nu.clone(),
                copy,
                offset,
                dim: m.dim(),
            });
        }
    }
    if columns.len() != n {
        return Err(Error::Invariant(format!(
            "Clebsch-Gordan blocks span {} of {} dimensions",
            columns.len(),
            n
        )));
    }
    let mut trip = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            if !x.is_zero() {
                trip.push((r, c, x.clone()));
            }
        }
    }
    let p = SparseMatrix::from_triplets(n, n, trip);

    // P preserves weights, so it inverts weight space by weight space.
    let pinv = invert_graded(&p, &rep.weights, &col_weights)?;
    let pinv_t = pinv.transpose();
    Ok(CGDecomposition {
        left: t.left.clone(),
        right: t.right.clone(),
        blocks,
        p,
        pinv,
        pinv_t,
        column_block,
    })
}

/// Classical decomposition of `V(λ) ⊗ V(μ)` by multiplying formal
/// characters and peeling off the character of the highest remaining weight.
pub fn char_decompose_oracle(cd: &CartanData, lambda: &Weight, mu: &Weight) -> BTreeMap<Weight, usize> {
    let all: Vec<usize> = (0..cd.rank).collect();
    let ca = cd.freudenthal(lambda, &all);
    let cb = cd.freudenthal(mu, &all);
    let mut ch: BTreeMap<Weight, i64> = BTreeMap::new();
    for (x, m) in &ca {
        for (y, n) in &cb {
            *ch.entry(x.add(y)).or_insert(0) += (m * n) as i64;
        }
    }
    let mut out = BTreeMap::new();
    loop {
        ch.retain(|_, m| *m != 0);
        let Some(top) = ch
            .keys()
            .max_by(|a, b| block_order(cd, b, a))
            .cloned()
        else {
            break;
        };
        let m = ch[&top];
        assert!(m > 0 && top.is_dominant(), "character peeling went negative");
        *out.entry(top.clone()).or_insert(0) += m as usize;
        for (w, k) in cd.freudenthal(&top, &all) {
            *ch.entry(w).or_insert(0) -= m * k as i64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqrep::build_irrep;

    fn setup(name: &str) -> (Arc<CartanData>, impl Fn(&Weight) -> Result<Arc<IrrepModule>>) {
        let cd = Arc::new(CartanData::from_name(name).unwrap());
        let c2 = cd.clone();
        (cd, move |w: &Weight| build_irrep(&c2, w).map(Arc::new))
    }

    fn w(c: &[i32]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn unit_object() {
        let (cd, irrep) = setup("A2");
        let a = irrep(&w(&[1, 1])).unwrap();
        let z = irrep(&cd.zero_weight()).unwrap();
        let t = tensor_module(&a, &z).unwrap();
        assert_eq!(t.rep.e, a.rep.e);
        assert_eq!(t.rep.f, a.rep.f);
        let cg = decompose(&t, &irrep).unwrap();
        assert_eq!(cg.p, SparseMatrix::identity(8));
        assert_eq!(cg.blocks.len(), 1);
    }

    #[test]
    fn a1_doublet_squared() {
        let (_, irrep) = setup("A1");
        let a = irrep(&w(&[1])).unwrap();
        let t = tensor_module(&a, &a).unwrap();
        assert!(t.rep.check_relations().all_pass());
        // k acts on w_s ⊗ w_t by v^{(μ_s + μ_t, α)}
        assert_eq!(t.rep.k_exp(1, 0), 0);
        assert_eq!(t.rep.k_exp(0, 0), 2);
        assert_eq!(highest_weight_vectors(&t.rep, &w(&[2])), vec![vec![Rf::one(), Rf::zero(), Rf::zero(), Rf::zero()]]);
        // w₊⊗w₋ − q⁻¹ w₋⊗w₊, scaled so the second coordinate is one
        let hv = highest_weight_vectors(&t.rep, &w(&[0]));
        assert_eq!(hv, vec![vec![Rf::zero(), -Rf::q(), Rf::one(), Rf::zero()]]);
        assert!(highest_weight_vectors(&t.rep, &w(&[4])).is_empty());
        let cg = decompose(&t, &irrep).unwrap();
        let m = cg.multiplicities();
        assert_eq!(m, BTreeMap::from([(w(&[2]), 1), (w(&[0]), 1)]));
        assert!(cg.verify(&t, &irrep).unwrap().all_pass());
    }

    #[test]
    fn a2_examples() {
        let (cd, irrep) = setup("A2");
        let a = irrep(&w(&[1, 0])).unwrap();
        let b = irrep(&w(&[0, 1])).unwrap();
        let t = tensor_module(&a, &b).unwrap();
        let cg = decompose(&t, &irrep).unwrap();
        assert_eq!(cg.multiplicities(), BTreeMap::from([(w(&[1, 1]), 1), (w(&[0, 0]), 1)]));
        assert!(cg.verify(&t, &irrep).unwrap().all_pass());
        assert_eq!(
            char_decompose_oracle(&cd, &w(&[1, 0]), &w(&[1, 0])),
            BTreeMap::from([(w(&[2, 0]), 1), (w(&[0, 1]), 1)])
        );
        assert_eq!(char_decompose_oracle(&cd, &w(&[2, 1]), &cd.zero_weight()), BTreeMap::from([(w(&[2, 1]), 1)]));
    }

    #[test]
    fn multiplicities_match_character_oracle() {
        for name in ["A1", "A2", "B2"] {
            let (cd, irrep) = setup(name);
            let grid = cd.dominant_weights_up_to(if name == "A1" { 3 } else { 1 });
            for a in &grid {
                for b in &grid {
                    let t = tensor_module(&irrep(a).unwrap(), &irrep(b).unwrap()).unwrap();
                    let cg = decompose(&t, &irrep).unwrap();
                    assert_eq!(cg.multiplicities(), char_decompose_oracle(&cd, a, b), "{name} {a} {b}");
                    for (nu, m) in cg.multiplicities() {
                        assert_eq!(highest_weight_vectors(&t.rep, &nu).len(), m);
                    }
                    let rep = cg.verify(&t, &irrep).unwrap();
                    assert!(rep.all_pass(), "{name} {a} {b} {:?}", rep.failures().collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn multiplicity_two_block() {
        // (1,1) ⊗ (1,1) on A2 contains (1,1) twice
        let (_, irrep) = setup("A2");
        let a = irrep(&w(&[1, 1])).unwrap();
        let t = tensor_module(&a, &a).unwrap();
        let cg = decompose(&t, &irrep).unwrap();
        assert_eq!(cg.multiplicities()[&w(&[1, 1])], 2);
        assert!(cg.verify(&t, &irrep).unwrap().all_pass());
    }

    #[test]
    fn record_round_trip() {
        let (_, irrep) = setup("A1");
        let a = irrep(&w(&[1])).unwrap();
        let b = irrep(&w(&[2])).unwrap();
        let cg = decompose(&tensor_module(&a, &b).unwrap(), &irrep).unwrap();
        let json = serde_json::to_string(&cg.to_record()).unwrap();
        let back = CGDecomposition::from_record(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, cg);
    }
}
