//! The algebra `T_q` of matrix coefficients of the irreducible modules.
//!
//! An element is a finite combination of canonical coefficients
//! `t^{(λ)}_{ij}`, where `t^{(λ)}_{ij}(x)` is the `(i, j)` entry of the
//! matrix of `x` on the canonical basis of `W(λ)`. Products go through the
//! Clebsch-Gordan change of basis; the antipode and `*` go through an
//! explicit intertwiner between `W(λ†)` and the dual of `W(λ)`, so every
//! result is again expressed in canonical coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cartan::Weight;
use crate::engine::QuantumGroup;
use crate::error::{Error, Result};
use crate::linalg::{invert_graded, SparseMatrix};
use crate::report::CheckList;
use crate::scalar::{NumericValue, Rf, Q};
use crate::uqrep::{k2rho, q_i, AlgebraWord, Gen, MatrixRep, WordTensor};

/// Index of a canonical coefficient `t^{(λ)}_{ij}` (0-based `i`, `j`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffIndex {
    pub lambda: Weight,
    pub i: usize,
    pub j: usize,
}

impl CoeffIndex {
    pub fn new(lambda: Weight, i: usize, j: usize) -> Self {
        CoeffIndex { lambda, i, j }
    }
}

impl fmt::Display for CoeffIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.lambda.0.iter().map(|x| x.to_string()).collect();
        write!(f, "t({})[{},{}]", coords.join(","), self.i + 1, self.j + 1)
    }
}

impl FromStr for CoeffIndex {
    type Err = Error;

    /// `t(1,0)[1,2]`, indices 1-based.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad coefficient `{s}`; expected t(λ)[i,j]"));
        let s = s.trim();
        let rest = s.strip_prefix("t(").ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        let lambda: Weight = rest[..close].parse()?;
        let idx = rest[close + 1..]
            .trim()
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(bad)?;
        let parts: Vec<usize> = idx
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if parts.len() != 2 || parts[0] == 0 || parts[1] == 0 {
            return Err(bad());
        }
        Ok(CoeffIndex::new(lambda, parts[0] - 1, parts[1] - 1))
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Rf>, key: K, c: Rf) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Element of `T_q`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CoeffElement {
    terms: BTreeMap<CoeffIndex, Rf>,
}

impl CoeffElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1 = t^{(0)}_{11}`, the counit of `U_q` viewed as an element of `T_q`.
    pub fn unit(rank: usize) -> Self {
        Self::basis(Weight::zero(rank), 0, 0)
    }

    pub fn basis(lambda: Weight, i: usize, j: usize) -> Self {
        Self::term(CoeffIndex::new(lambda, i, j), Rf::one())
    }

    pub fn term(idx: CoeffIndex, c: Rf) -> Self {
        let mut e = Self::zero();
        e.add_term(idx, c);
        e
    }

    pub fn add_term(&mut self, idx: CoeffIndex, c: Rf) {
        add_into(&mut self.terms, idx, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoeffIndex, &Rf)> {
        self.terms.iter()
    }

    pub fn get(&self, idx: &CoeffIndex) -> Rf {
        self.terms.get(idx).cloned().unwrap_or_else(Rf::zero)
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

    /// Highest weights with a nonzero component.
    pub fn support(&self) -> Vec<Weight> {
        let mut v: Vec<Weight> = self.terms.keys().map(|k| k.lambda.clone()).collect();
        v.dedup();
        v
    }

    /// Component in `T^{(λ)}`.
    pub fn component(&self, lambda: &Weight) -> CoeffElement {
        CoeffElement {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.lambda == *lambda)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &CoeffElement) -> CoeffElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CoeffElement) -> CoeffElement {
        self.add(&other.scale(&Rf::from_int(-1)))
    }

    pub fn scale(&self, c: &Rf) -> CoeffElement {
        let mut out = CoeffElement::zero();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    pub fn to_records(&self) -> Vec<CoeffRecord> {
        self.terms
            .iter()
            .map(|(k, c)| CoeffRecord {
                lambda: k.lambda.clone(),
                i: k.i + 1,
                j: k.j + 1,
                value: c.clone(),
            })
            .collect()
    }

    pub fn from_records(recs: &[CoeffRecord]) -> Result<Self> {
        let mut out = CoeffElement::zero();
        for r in recs {
            if r.i == 0 || r.j == 0 {
                return Err(Error::IndexOutOfRange("coefficient indices are 1-based".into()));
            }
            out.add_term(CoeffIndex::new(r.lambda.clone(), r.i - 1, r.j - 1), r.value.clone());
        }
        Ok(out)
    }
}

/// Serialized term: 1-based indices, canonical scalar text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub lambda: Weight,
    pub i: usize,
    pub j: usize,
    pub value: Rf,
}

impl Serialize for CoeffElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoeffElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let recs = Vec::<CoeffRecord>::deserialize(d)?;
        CoeffElement::from_records(&recs).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for CoeffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                if c.is_one() {
                    k.to_string()
                } else {
                    format!("({})*{}", c.to_canonical(), k)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CoeffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for CoeffElement {
    type Err = Error;

    /// Sums of `[(coef)*]t(λ)[i,j]` separated by ` + `.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = CoeffElement::zero();
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        for part in split_terms(s) {
            let part = part.trim();
            let (c, rest) = match part.strip_prefix('(') {
                Some(body) => {
                    let close = find_close(body).ok_or_else(|| Error::Parse(format!("unbalanced `{part}`")))?;
                    let txt = &body[..close];
                    let c = Rf::parse_canonical(txt).or_else(|e| {
                        crate::scalar::parse_rational(txt).map(Rf::from_rational).map_err(|_| e)
                    })?;
                    (c, body[close + 1..].trim_start_matches('*'))
                }
                None => (Rf::one(), part),
            };
            out.add_term(rest.parse()?, c);
        }
        Ok(out)
    }
}

fn find_close(s: &str) -> Option<usize> {
    let mut depth = 1;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(" + ") {
            out.push(&s[start..i]);
            i += 3;
            start = i;
            continue;
        }
        i += 1;
    }
    out.push(&s[start..]);
    out
}

/// Element of `T_q^{⊗n}`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct CoeffTensor {
    terms: BTreeMap<Vec<CoeffIndex>, Rf>,
}

impl CoeffTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, key: Vec<CoeffIndex>, c: Rf) {
        add_into(&mut self.terms, key, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<CoeffIndex>, &Rf)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_element(a: &CoeffElement) -> Self {
        let mut t = CoeffTensor::zero();
        for (k, c) in a.terms() {
            t.add_term(vec![k.clone()], c.clone());
        }
        t
    }

    /// `a ⊗ b`.
    pub fn pair(a: &CoeffElement, b: &CoeffElement) -> Self {
        let mut t = CoeffTensor::zero();
        for (ka, x) in a.terms() {
            for (kb, y) in b.terms() {
                t.add_term(vec![ka.clone(), kb.clone()], x * y);
            }
        }
        t
    }

    /// Apply a linear map `T_q → T_q` in one tensor slot.
    pub fn map_slot(&self, slot: usize, f: impl Fn(&CoeffIndex) -> Result<CoeffElement>) -> Result<CoeffTensor> {
        let mut out = CoeffTensor::zero();
        let mut memo: BTreeMap<CoeffIndex, CoeffElement> = BTreeMap::new();
        for (key, c) in &self.terms {
            if !memo.contains_key(&key[slot]) {
                memo.insert(key[slot].clone(), f(&key[slot])?);
            }
            for (k2, x) in memo[&key[slot]].terms() {
                let mut nk = key.clone();
                nk[slot] = k2.clone();
                out.add_term(nk, c * x);
            }
        }
        Ok(out)
    }

    /// Apply `Δ` in one slot, producing an `(n+1)`-fold tensor.
    pub fn coproduct_at(&self, qg: &QuantumGroup, slot: usize) -> Result<CoeffTensor> {
        let mut out = CoeffTensor::zero();
        for (key, c) in &self.terms {
            let idx = &key[slot];
            let d = qg.irrep(&idx.lambda)?.dim();
            for k in 0..d {
                let mut nk = key[..slot].to_vec();
                nk.push(CoeffIndex::new(idx.lambda.clone(), idx.i, k));
                nk.push(CoeffIndex::new(idx.lambda.clone(), k, idx.j));
                nk.extend_from_slice(&key[slot + 1..]);
                out.add_term(nk, c.clone());
            }
        }
        Ok(out)
    }

    /// Apply a functional `T_q → Q(v)` in one slot.
    pub fn contract(&self, slot: usize, f: impl Fn(&CoeffIndex) -> Result<Rf>) -> Result<CoeffTensor> {
        let mut out = CoeffTensor::zero();
        for (key, c) in &self.terms {
            let x = f(&key[slot])?;
            if x.is_zero() {
                continue;
            }
            let mut nk = key.clone();
            nk.remove(slot);
            out.add_term(nk, c * &x);
        }
        Ok(out)
    }

    /// Collapse a one-fold tensor back to an element.
    pub fn into_element(self) -> Result<CoeffElement> {
        let mut out = CoeffElement::zero();
        for (key, c) in self.terms {
            if key.len() != 1 {
                return Err(Error::DimensionMismatch("tensor is not one-fold".into()));
            }
            out.add_term(key.into_iter().next().expect("one slot"), c);
        }
        Ok(out)
    }

    /// Multiply the slots of a two-fold tensor.
    pub fn multiply(&self, qg: &QuantumGroup) -> Result<CoeffElement> {
        let mut out = CoeffElement::zero();
        for (key, c) in &self.terms {
            if key.len() != 2 {
                return Err(Error::DimensionMismatch("multiply needs a two-fold tensor".into()));
            }
            let p = product_basis(qg, &key[0], &key[1])?;
            out = out.add(&p.scale(c));
        }
        Ok(out)
    }
}

/// `⟨t^{(λ)}_{ij}, x⟩` for every term, with one matrix per weight.
pub fn coeff_eval(qg: &QuantumGroup, a: &CoeffElement, x: &AlgebraWord) -> Result<Rf> {
    let mut acc = Rf::zero();
    let mut mats: BTreeMap<Weight, SparseMatrix> = BTreeMap::new();
    for (k, c) in a.terms() {
        if !mats.contains_key(&k.lambda) {
            mats.insert(k.lambda.clone(), qg.irrep(&k.lambda)?.act_word(x));
        }
        let m = &mats[&k.lambda];
        check_index(m.rows(), k)?;
        let v = m.get(k.i, k.j);
        if !v.is_zero() {
            acc += &(c * &v);
        }
    }
    Ok(acc)
}

fn check_index(d: usize, k: &CoeffIndex) -> Result<()> {
    if k.i >= d || k.j >= d {
        return Err(Error::IndexOutOfRange(format!("{k} in a module of dimension {d}")));
    }
    Ok(())
}

/// `⟨a ⊗ b, Σ w₁ ⊗ w₂⟩` for a two-fold tensor and a word tensor.
pub fn tensor_eval(qg: &QuantumGroup, t: &CoeffTensor, x: &WordTensor) -> Result<Rf> {
    let mut acc = Rf::zero();
    for (key, c) in t.terms() {
        for ((w1, w2), y) in x.terms() {
            let a = coeff_eval(qg, &CoeffElement::term(key[0].clone(), Rf::one()), &AlgebraWord::word(w1))?;
            if a.is_zero() {
                continue;
            }
            let b = coeff_eval(qg, &CoeffElement::term(key[1].clone(), Rf::one()), &AlgebraWord::word(w2))?;
            acc += &(&(c * y) * &(&a * &b));
        }
    }
    Ok(acc)
}

/// `ε(t^{(λ)}_{ij}) = δ_ij`.
pub fn counit(a: &CoeffElement) -> Rf {
    let mut acc = Rf::zero();
    for (k, c) in a.terms() {
        if k.i == k.j {
            acc += c;
        }
    }
    acc
}

pub fn counit_index(k: &CoeffIndex) -> Rf {
    if k.i == k.j {
        Rf::one()
    } else {
        Rf::zero()
    }
}

/// `Δ(t_ij) = Σ_k t_ik ⊗ t_kj`.
pub fn coproduct(qg: &QuantumGroup, a: &CoeffElement) -> Result<CoeffTensor> {
    CoeffTensor::from_element(a).coproduct_at(qg, 0)
}

fn product_basis(qg: &QuantumGroup, a: &CoeffIndex, b: &CoeffIndex) -> Result<CoeffElement> {
    let cg = qg.cg(&a.lambda, &b.lambda)?;
    let db = qg.irrep(&b.lambda)?.dim();
    let da = qg.irrep(&a.lambda)?.dim();
    check_index(da, a)?;
    check_index(db, b)?;
    let row = a.i * db + b.i;
    let col = a.j * db + b.j;
    let mut out = CoeffElement::zero();
    for (c, x) in cg.p.row(row) {
        let blk = cg.column_block[*c];
        let info = &cg.blocks[blk];
        for (d, y) in cg.pinv_t.row(col) {
            if cg.column_block[*d] != blk {
                continue;
            }
            out.add_term(
                CoeffIndex::new(info.nu.clone(), c - info.offset, d - info.offset),
                x * y,
            );
        }
    }
    Ok(out)
}

/// Product in `T_q`, dual to the coproduct of `U_q`.
pub fn product(qg: &QuantumGroup, a: &CoeffElement, b: &CoeffElement) -> Result<CoeffElement> {
    let mut out = CoeffElement::zero();
    for (ka, x) in a.terms() {
        for (kb, y) in b.terms() {
            let p = product_basis(qg, ka, kb)?;
            out = out.add(&p.scale(&(x * y)));
        }
    }
    Ok(out)
}

/// Intertwiner `Φ : W(λ†) → W(λ)*` where the dual carries
/// `x ↦ t^{(λ)}(S x)ᵀ`, together with `M = G⁻¹ Φ` used by `*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualIntertwiner {
    pub lambda: Weight,
    pub dagger: Weight,
    pub phi: SparseMatrix,
    pub phi_inv: SparseMatrix,
    pub m: SparseMatrix,
    pub m_inv: SparseMatrix,
    phi_inv_t: SparseMatrix,
    m_inv_t: SparseMatrix,
}

/// Generator matrices of `x ↦ t(S x)ᵀ`:
/// `e_i ↦ −q_i Eᵀ`, `f_i ↦ −q_i⁻¹ Fᵀ`, weights negated.
pub fn dual_rep(rep: &MatrixRep) -> MatrixRep {
    let cd = &rep.cd;
    let r = rep.rank();
    MatrixRep {
        cd: cd.clone(),
        weights: rep.weights.iter().map(Weight::neg).collect(),
        e: (0..r)
            .map(|i| rep.e[i].transpose().scale(&-q_i(cd, i)))
            .collect(),
        f: (0..r)
            .map(|i| rep.f[i].transpose().scale(&-q_i(cd, i).inv().expect("nonzero")))
            .collect(),
    }
}

impl DualIntertwiner {
    pub fn build(qg: &QuantumGroup, lambda: &Weight) -> Result<Self> {
        let w = qg.irrep(lambda)?;
        let dagger = qg.cd().dagger(lambda)?;
        let wd = qg.irrep(&dagger)?;
        let dual = dual_rep(&w.rep);
        let n = w.dim();
        // highest weight vector of the dual: the functional dual to the lowest vector
        let mut cols: Vec<Vec<Rf>> = Vec::with_capacity(n);
        for b in 0..n {
            let col = match wd.recipe[b] {
                None => {
                    let mut v = vec![Rf::zero(); n];
                    v[w.lowest_index()] = Rf::one();
                    v
                }
                Some((i, u)) => dual.f[i].mul_vec(&cols[u]),
            };
            cols.push(col);
        }
        let trip = cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| {
                col.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(move |(r, x)| (r, c, x.clone()))
            })
            .collect();
        let phi = SparseMatrix::from_triplets(n, n, trip);
        let phi_inv = invert_graded(&phi, &dual.weights, wd.weights())?;
        let ginv = invert_graded(&w.gram, w.weights(), w.weights())?;
        let m = ginv.mul(&phi);
        let m_inv = phi_inv.mul(&w.gram);
        Ok(DualIntertwiner {
            lambda: lambda.clone(),
            dagger,
            phi_inv_t: phi_inv.transpose(),
            m_inv_t: m_inv.transpose(),
            phi,
            phi_inv,
            m,
            m_inv,
        })
    }

    /// `ρ*(x) Φ = Φ t^{(λ†)}(x)` for every generator.
    pub fn verify(&self, qg: &QuantumGroup) -> Result<CheckList> {
        let w = qg.irrep(&self.lambda)?;
        let wd = qg.irrep(&self.dagger)?;
        let dual = dual_rep(&w.rep);
        let mut report = CheckList::new();
        for g in Gen::all(qg.rank()) {
            let lhs = dual.gen_matrix(g).mul(&self.phi);
            let rhs = self.phi.mul(&wd.rep.gen_matrix(g));
            report.push(format!("dual intertwiner {} {g}", self.lambda), lhs == rhs);
        }
        Ok(report)
    }
}

/// `S(t^{(λ)}_{ij}) = Σ_{kl} Φ_{jk} (Φ⁻¹)_{li} t^{(λ†)}_{kl}`.
pub fn antipode(qg: &QuantumGroup, a: &CoeffElement) -> Result<CoeffElement> {
    let mut out = CoeffElement::zero();
    for (k, c) in a.terms() {
        let du = qg.dual(&k.lambda)?;
        check_index(du.phi.rows(), k)?;
        for (kk, x) in du.phi.row(k.j) {
            for (l, y) in du.phi_inv_t.row(k.i) {
                out.add_term(CoeffIndex::new(du.dagger.clone(), *kk, *l), &(c * x) * y);
            }
        }
    }
    Ok(out)
}

/// Inverse antipode: `S⁻¹(t^{(μ)}_{kl}) = Σ_{ij} Φ_{il} (Φ⁻¹)_{kj} t^{(μ†)}_{ij}`
/// with `Φ` the intertwiner attached to `μ†`.
pub fn antipode_inv(qg: &QuantumGroup, a: &CoeffElement) -> Result<CoeffElement> {
    let mut out = CoeffElement::zero();
    for (k, c) in a.terms() {
        let lam = qg.cd().dagger(&k.lambda)?;
        let du = qg.dual(&lam)?;
        check_index(du.phi.rows(), k)?;
        let phi_t = du.phi.transpose();
        for (i, x) in phi_t.row(k.j) {
            for (j, y) in du.phi_inv.row(k.i) {
                out.add_term(CoeffIndex::new(lam.clone(), *i, *j), &(c * x) * y);
            }
        }
    }
    Ok(out)
}

/// `*(t^{(λ)}_{ij}) = Σ_{kl} M_{ik} (M⁻¹)_{lj} t^{(λ†)}_{kl}`, `M = G⁻¹ Φ`,
/// extended conjugate-linearly (conjugation fixes `Q(v)` since `q` is real).
/// This is `⟨*(a), x⟩ = ⟨a, θ(x)⟩` written in canonical coefficients.
pub fn star(qg: &QuantumGroup, a: &CoeffElement) -> Result<CoeffElement> {
    let mut out = CoeffElement::zero();
    for (k, c) in a.terms() {
        let du = qg.dual(&k.lambda)?;
        check_index(du.m.rows(), k)?;
        for (kk, x) in du.m.row(k.i) {
            for (l, y) in du.m_inv_t.row(k.j) {
                out.add_term(CoeffIndex::new(du.dagger.clone(), *kk, *l), &(c * x) * y);
            }
        }
    }
    Ok(out)
}

/// Haar functional: the coefficient of `t^{(0)}`.
pub fn haar(a: &CoeffElement) -> Rf {
    a.terms()
        .filter(|(k, _)| k.lambda.is_zero())
        .map(|(_, c)| c.clone())
        .fold(Rf::zero(), |acc, c| acc + c)
}

/// Closed form of `∫ t^{(λ)}_{ij} t̃^{(μ†)}_{rs}` with
/// `t̃^{(μ†)}_{rs} = S(t^{(μ)}_{sr})`:
/// `δ_{λμ} δ_{ir} t^{(λ)}_{sj}(K_{2ρ}) / D_q(λ)`.
pub fn schur_closed_form(
    qg: &QuantumGroup,
    lambda: &Weight,
    (i, j, r, s): (usize, usize, usize, usize),
    mu: &Weight,
) -> Result<Rf> {
    if lambda != mu || i != r || s != j {
        return Ok(Rf::zero());
    }
    let w = qg.irrep(lambda)?;
    let k = k2rho(qg.cd());
    Ok(Rf::v_pow(k.exponent_on(qg.cd(), &w.weights()[j])) / w.quantum_dimension())
}

/// Closed form of `∫ t̃^{(λ†)}_{ij} t^{(μ)}_{rs}` with
/// `t̃^{(λ†)}_{ij} = S(t^{(λ)}_{ji})`:
/// `δ_{λμ} δ_{js} t̃^{(λ†)}_{ir}(K_{2ρ}) / D_q(λ)`, where
/// `t̃^{(λ†)}_{ir}(K_{2ρ}) = t^{(λ)}_{ri}(K_{2ρ}⁻¹)`.
pub fn schur_closed_form_reversed(
    qg: &QuantumGroup,
    lambda: &Weight,
    (i, j, r, s): (usize, usize, usize, usize),
    mu: &Weight,
) -> Result<Rf> {
    if lambda != mu || j != s || i != r {
        return Ok(Rf::zero());
    }
    let w = qg.irrep(lambda)?;
    let k = k2rho(qg.cd());
    Ok(Rf::v_pow(-k.exponent_on(qg.cd(), &w.weights()[i])) / w.quantum_dimension())
}

/// `∫ t^{(λ)}_{ij} S(t^{(μ)}_{sr})` through products and the Haar functional.
pub fn schur_by_cg(qg: &QuantumGroup, lambda: &Weight, (i, j, r, s): (usize, usize, usize, usize), mu: &Weight) -> Result<Rf> {
    let a = CoeffElement::basis(lambda.clone(), i, j);
    let b = antipode(qg, &CoeffElement::basis(mu.clone(), s, r))?;
    Ok(haar(&product(qg, &a, &b)?))
}

/// `∫ S(t^{(λ)}_{ji}) t^{(μ)}_{rs}` through products and the Haar functional.
pub fn schur_by_cg_reversed(
    qg: &QuantumGroup,
    lambda: &Weight,
    (i, j, r, s): (usize, usize, usize, usize),
    mu: &Weight,
) -> Result<Rf> {
    let a = antipode(qg, &CoeffElement::basis(lambda.clone(), j, i))?;
    let b = CoeffElement::basis(mu.clone(), r, s);
    Ok(haar(&product(qg, &a, &b)?))
}

/// Right translation `x∘t_ij = Σ_k t_ik ⟨t_kj, x⟩`.
pub fn circ_action(qg: &QuantumGroup, x: &AlgebraWord, a: &CoeffElement) -> Result<CoeffElement> {
    let mut out = CoeffElement::zero();
    let mut mats: BTreeMap<Weight, SparseMatrix> = BTreeMap::new();
    for (k, c) in a.terms() {
        if !mats.contains_key(&k.lambda) {
            mats.insert(k.lambda.clone(), qg.irrep(&k.lambda)?.act_word(x).transpose());
        }
        // row j of the transpose is column j of t(x)
        for (kk, y) in mats[&k.lambda].row(k.j) {
            out.add_term(CoeffIndex::new(k.lambda.clone(), k.i, *kk), c * y);
        }
    }
    Ok(out)
}

/// Left translation `x·t_ij = Σ_k ⟨t_ik, S⁻¹(x)⟩ t_kj`.
pub fn dot_action(qg: &QuantumGroup, x: &AlgebraWord, a: &CoeffElement) -> Result<CoeffElement> {
    let sx = x.antipode_inv(qg.cd());
    let mut out = CoeffElement::zero();
    let mut mats: BTreeMap<Weight, SparseMatrix> = BTreeMap::new();
    for (k, c) in a.terms() {
        if !mats.contains_key(&k.lambda) {
            mats.insert(k.lambda.clone(), qg.irrep(&k.lambda)?.act_word(&sx));
        }
        for (kk, y) in mats[&k.lambda].row(k.i) {
            out.add_term(CoeffIndex::new(k.lambda.clone(), *kk, k.j), c * y);
        }
    }
    Ok(out)
}

/// `(a, a)_h = ∫ a* a`, specialized at `v0`.
pub fn haar_positivity(qg: &QuantumGroup, a: &CoeffElement, v0: &Q) -> Result<NumericValue> {
    let s = star(qg, a)?;
    haar(&product(qg, &s, a)?).specialize(v0)
}

/// Pseudo-random element supported on the given weights, with small
/// Laurent-polynomial coefficients.
pub fn random_element<R: Rng>(qg: &QuantumGroup, weights: &[Weight], terms: usize, rng: &mut R) -> Result<CoeffElement> {
    let mut out = CoeffElement::zero();
    for _ in 0..terms {
        let lambda = weights[rng.gen_range(0..weights.len())].clone();
        let d = qg.irrep(&lambda)?.dim();
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        let c = Rf::from_int(rng.gen_range(-3..=3)) * Rf::v_pow(rng.gen_range(-2..=2));
        out.add_term(CoeffIndex::new(lambda, i, j), c);
    }
    Ok(out)
}

/// Every coefficient of every weight in the list.
pub fn all_basis(qg: &QuantumGroup, weights: &[Weight]) -> Result<Vec<CoeffIndex>> {
    let mut out = Vec::new();
    for w in weights {
        let d = qg.irrep(w)?.dim();
        for i in 0..d {
            for j in 0..d {
                out.push(CoeffIndex::new(w.clone(), i, j));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(c: &[i32]) -> Weight {
        Weight(c.to_vec())
    }

    fn a1() -> QuantumGroup {
        QuantumGroup::from_name("A1").unwrap()
    }

    fn words(rank: usize, max_len: usize) -> Vec<AlgebraWord> {
        let gens = Gen::all(rank);
        let mut out = vec![AlgebraWord::one()];
        let mut layer: Vec<Vec<Gen>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for wd in &layer {
                for &g in &gens {
                    let mut x = wd.clone();
                    x.push(g);
                    next.push(x);
                }
            }
            out.extend(next.iter().map(|x| AlgebraWord::word(x)));
            layer = next;
        }
        out
    }

    #[test]
    fn parse_and_display() {
        let a: CoeffElement = "t(1)[1,2] + (2*v^1)*t(0)[1,1]".parse().unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.to_string().parse::<CoeffElement>().unwrap(), a);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<CoeffElement>(&json).unwrap(), a);
        assert!("t(1)[0,1]".parse::<CoeffElement>().is_err());
    }

    #[test]
    fn eval_examples() {
        let qg = a1();
        let one = AlgebraWord::one();
        let t0 = CoeffElement::unit(1);
        for x in words(1, 2) {
            assert_eq!(coeff_eval(&qg, &t0, &x).unwrap(), x.counit());
        }
        let t11 = CoeffElement::basis(w(&[1]), 0, 0);
        assert_eq!(coeff_eval(&qg, &t11, &AlgebraWord::k(0)).unwrap(), Rf::v());
        for i in 0..3 {
            for j in 0..3 {
                let t = CoeffElement::basis(w(&[2]), i, j);
                let expect = if i == j { Rf::one() } else { Rf::zero() };
                assert_eq!(coeff_eval(&qg, &t, &one).unwrap(), expect);
            }
        }
        assert!(coeff_eval(&qg, &CoeffElement::basis(w(&[1]), 2, 0), &one).is_err());
    }

    #[test]
    fn coproduct_examples() {
        let qg = a1();
        let t0 = CoeffElement::unit(1);
        let d = coproduct(&qg, &t0).unwrap();
        assert_eq!(d, CoeffTensor::pair(&t0, &t0));
        let t = |i, j| CoeffElement::basis(w(&[1]), i, j);
        let d = coproduct(&qg, &t(0, 0)).unwrap();
        let expect = CoeffTensor::pair(&t(0, 0), &t(0, 0));
        let mut expect = expect;
        for (k, c) in CoeffTensor::pair(&t(0, 1), &t(1, 0)).terms() {
            expect.add_term(k.clone(), c.clone());
        }
        assert_eq!(d, expect);
    }

    #[test]
    fn products() {
        let qg = a1();
        let t = |l: i32, i, j| CoeffElement::basis(w(&[l]), i, j);
        let unit = CoeffElement::unit(1);
        assert_eq!(product(&qg, &unit, &t(1, 0, 1)).unwrap(), t(1, 0, 1));
        assert_eq!(product(&qg, &t(1, 0, 0), &t(1, 0, 0)).unwrap(), t(2, 0, 0));
        // duality with Δ on words up to length 3
        let a = t(1, 0, 1);
        let b = t(2, 1, 2);
        let ab = product(&qg, &a, &b).unwrap();
        for x in words(1, 3) {
            let lhs = coeff_eval(&qg, &ab, &x).unwrap();
            let rhs = tensor_eval(&qg, &CoeffTensor::pair(&a, &b), &x.coproduct()).unwrap();
            assert_eq!(lhs, rhs, "{x}");
        }
    }

    #[test]
    fn antipode_pairing_and_square() {
        for name in ["A1", "A2", "B2"] {
            let qg = QuantumGroup::from_name(name).unwrap();
            let cd = qg.cd().clone();
            let lam = Weight(vec![1; cd.rank]);
            let fund = {
                let mut v = vec![0; cd.rank];
                v[0] = 1;
                Weight(v)
            };
            for l in [lam, fund] {
                let du = qg.dual(&l).unwrap();
                assert!(du.verify(&qg).unwrap().all_pass());
                let d = qg.irrep(&l).unwrap().dim();
                let ws = words(cd.rank, 1);
                for i in 0..d {
                    for j in 0..d {
                        let a = CoeffElement::basis(l.clone(), i, j);
                        let sa = antipode(&qg, &a).unwrap();
                        let ssa = antipode(&qg, &sa).unwrap();
                        assert_eq!(antipode_inv(&qg, &sa).unwrap(), a);
                        for x in &ws {
                            let sx = x.antipode(&cd);
                            assert_eq!(coeff_eval(&qg, &sa, x).unwrap(), coeff_eval(&qg, &a, &sx).unwrap());
                            let s2x = sx.antipode(&cd);
                            assert_eq!(coeff_eval(&qg, &ssa, x).unwrap(), coeff_eval(&qg, &a, &s2x).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn star_pairing_and_involution() {
        for name in ["A1", "A2"] {
            let qg = QuantumGroup::from_name(name).unwrap();
            let cd = qg.cd().clone();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let grid = cd.dominant_weights_up_to(2);
            for _ in 0..5 {
                let a = random_element(&qg, &grid, 4, &mut rng).unwrap();
                let sa = star(&qg, &a).unwrap();
                assert_eq!(star(&qg, &sa).unwrap(), a);
                for x in words(cd.rank, 1) {
                    assert_eq!(coeff_eval(&qg, &sa, &x).unwrap(), coeff_eval(&qg, &a, &x.theta(&cd)).unwrap());
                }
                let b = random_element(&qg, &grid, 2, &mut rng).unwrap();
                let lhs = star(&qg, &product(&qg, &a, &b).unwrap()).unwrap();
                let rhs = product(&qg, &star(&qg, &b).unwrap(), &sa).unwrap();
                assert_eq!(lhs, rhs);
            }
            assert_eq!(star(&qg, &CoeffElement::unit(cd.rank)).unwrap(), CoeffElement::unit(cd.rank));
        }
    }

    #[test]
    fn haar_values() {
        let qg = a1();
        assert!(haar(&CoeffElement::unit(1)).is_one());
        assert!(haar(&CoeffElement::basis(w(&[1]), 0, 1)).is_zero());
        let a = CoeffElement::basis(w(&[1]), 0, 0);
        let sa = antipode(&qg, &a).unwrap();
        let val = haar(&product(&qg, &a, &sa).unwrap());
        let q = Rf::q();
        assert_eq!(val, &q / &(&q + &q.inv().unwrap()));
        assert_eq!(schur_closed_form(&qg, &w(&[1]), (0, 0, 0, 0), &w(&[1])).unwrap(), val);
    }

    #[test]
    fn schur_both_variants_a1() {
        let qg = a1();
        for l in 0..3 {
            for m in 0..3 {
                let (lw, mw) = (w(&[l]), w(&[m]));
                let (dl, dm) = (l as usize + 1, m as usize + 1);
                for i in 0..dl {
                    for j in 0..dl {
                        for r in 0..dm {
                            for s in 0..dm {
                                let idx = (i, j, r, s);
                                assert_eq!(
                                    schur_by_cg(&qg, &lw, idx, &mw).unwrap(),
                                    schur_closed_form(&qg, &lw, idx, &mw).unwrap(),
                                    "first {l} {m} {idx:?}"
                                );
                                assert_eq!(
                                    schur_by_cg_reversed(&qg, &lw, idx, &mw).unwrap(),
                                    schur_closed_form_reversed(&qg, &lw, idx, &mw).unwrap(),
                                    "second {l} {m} {idx:?}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn actions() {
        let qg = QuantumGroup::from_name("A2").unwrap();
        let cd = qg.cd().clone();
        let a = CoeffElement::basis(w(&[1, 0]), 0, 0);
        let k = AlgebraWord::k(0);
        assert_eq!(circ_action(&qg, &k, &a).unwrap(), a.scale(&Rf::v()));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let grid = vec![w(&[1, 0]), w(&[0, 1]), w(&[1, 1])];
        let f = random_element(&qg, &grid, 5, &mut rng).unwrap();
        assert_eq!(circ_action(&qg, &AlgebraWord::one(), &f).unwrap(), f);
        assert_eq!(dot_action(&qg, &AlgebraWord::one(), &f).unwrap(), f);
        let gens: Vec<AlgebraWord> = Gen::all(cd.rank).into_iter().map(AlgebraWord::gen).collect();
        for x in &gens {
            for y in &gens {
                // commuting actions
                let l = circ_action(&qg, x, &dot_action(&qg, y, &f).unwrap()).unwrap();
                let r = dot_action(&qg, y, &circ_action(&qg, x, &f).unwrap()).unwrap();
                assert_eq!(l, r);
                let xy = x * y;
                // module laws
                assert_eq!(
                    circ_action(&qg, &xy, &f).unwrap(),
                    circ_action(&qg, x, &circ_action(&qg, y, &f).unwrap()).unwrap()
                );
                assert_eq!(
                    dot_action(&qg, &xy, &f).unwrap(),
                    dot_action(&qg, x, &dot_action(&qg, y, &f).unwrap()).unwrap()
                );
                // (x∘f)(y) = f(yx), (x·f)(y) = f(S⁻¹(x) y)
                assert_eq!(
                    coeff_eval(&qg, &circ_action(&qg, x, &f).unwrap(), y).unwrap(),
                    coeff_eval(&qg, &f, &(y * x)).unwrap()
                );
                assert_eq!(
                    coeff_eval(&qg, &dot_action(&qg, x, &f).unwrap(), y).unwrap(),
                    coeff_eval(&qg, &f, &(&x.antipode_inv(&cd) * y)).unwrap()
                );
            }
        }
    }

    #[test]
    fn positivity() {
        let qg = a1();
        let two = Q::from_integer(2.into());
        assert_eq!(haar_positivity(&qg, &CoeffElement::zero(), &two).unwrap().signum(), 0);
        assert_eq!(
            haar_positivity(&qg, &CoeffElement::unit(1), &two).unwrap(),
            NumericValue::Exact(Q::from_integer(1.into()))
        );
        let v = haar_positivity(&qg, &CoeffElement::basis(w(&[1]), 0, 0), &two).unwrap();
        assert_eq!(v.signum(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let grid = qg.cd().dominant_weights_up_to(2);
        for _ in 0..10 {
            let a = random_element(&qg, &grid, 3, &mut rng).unwrap();
            let s = haar_positivity(&qg, &a, &two).unwrap().signum();
            assert_eq!(s > 0, !a.is_zero());
        }
    }
}
