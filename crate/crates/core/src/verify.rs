//! Verification suites over fixed grids of weights, producing a
//! deterministic machine-readable report.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bundle::{
    borel_weil_check, check_omega, eta_map, frobenius_maps, full_module_sections, invariant_functions, is_invariant,
    left_multiply, product_closure_check, random_section, right_multiply, satisfies_defining, sections_direct,
    BorelWeilStatus, EtaKind, Section, TruncationPolicy,
};
use crate::cartan::{CartanData, Weight};
use crate::coeff::{
    all_basis, antipode, coeff_eval, counit_index, haar, haar_positivity, product, random_element,
    schur_by_cg, schur_by_cg_reversed, schur_closed_form, schur_closed_form_reversed, star, CoeffElement,
    CoeffIndex, CoeffTensor,
};
use crate::engine::QuantumGroup;
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::parabolic::{
    branching_oracle, central_hom_count, hom_space, is_intertwiner, levi_complement, levi_irrep, levi_lowest,
    restrict_levi, Flavor, ParabolicData,
};
use crate::report::Check;
use crate::scalar::{Rf, Q};
use crate::uqrep::{k2rho, AlgebraWord, Gen};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Positivity is tested at this specialization of `v`.
pub const POSITIVITY_V0: i64 = 2;
/// Largest `W(λ) ⊗ W(μ)` on which duality is checked word by word.
pub const DUALITY_MAX_DIM: u64 = 36;
/// Fixed seed for every pseudo-random sample.
pub const SAMPLE_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    Quick,
    Full,
}

impl FromStr for Grid {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Grid::Quick),
            "full" => Ok(Grid::Full),
            _ => Err(Error::Parse(format!("unknown grid `{s}` (quick|full)"))),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grid::Quick => "quick",
            Grid::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Relations,
    Dimensions,
    Hopf,
    Schur,
    Positivity,
    HomCriterion,
    Invariants,
    Projectivity,
    Frobenius,
    BorelWeil,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Relations,
        Suite::Dimensions,
        Suite::Hopf,
        Suite::Schur,
        Suite::Positivity,
        Suite::HomCriterion,
        Suite::Invariants,
        Suite::Projectivity,
        Suite::Frobenius,
        Suite::BorelWeil,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Dimensions => "dimensions",
            Suite::Hopf => "hopf",
            Suite::Schur => "schur",
            Suite::Positivity => "positivity",
            Suite::HomCriterion => "hom-criterion",
            Suite::Invariants => "invariants",
            Suite::Projectivity => "projectivity",
            Suite::Frobenius => "frobenius",
            Suite::BorelWeil => "borel-weil",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Relations => "defining relations of U_q as exact matrix identities",
            Suite::Dimensions => "dimensions and weight multiplicities against classical formulas",
            Suite::Hopf => "Hopf algebra axioms, duality, Haar invariance and unitarity on T_q",
            Suite::Schur => "Schur orthogonality through products and the Haar functional; S^2 = Ad K_2rho",
            Suite::Positivity => "positivity of the Haar inner product at v = 2",
            Suite::HomCriterion => "parabolic Hom dimension equals [lowest weights agree]",
            Suite::Invariants => "invariant functions: closure, central elements, dimension at the highest root",
            Suite::Projectivity => "eta and kappa isomorphisms and Levi complements",
            Suite::Frobenius => "Frobenius reciprocity with explicit F and Fbar",
            Suite::BorelWeil => "Borel-Weil: holomorphic sections realize W(nu) or vanish",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub description: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite,
            description: suite.description().to_string(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub grid: Grid,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

/// One `QuantumGroup` per supported algebra, shared across suites.
pub struct Context {
    groups: BTreeMap<String, QuantumGroup>,
}

impl Context {
    pub fn new() -> Result<Self> {
        let mut groups = BTreeMap::new();
        for cd in CartanData::supported() {
            groups.insert(cd.name(), QuantumGroup::new(cd));
        }
        Ok(Context { groups })
    }

    pub fn with_groups(groups: Vec<QuantumGroup>) -> Self {
        Context {
            groups: groups.into_iter().map(|g| (g.cd().name(), g)).collect(),
        }
    }

    pub fn group(&self, name: &str) -> Result<&QuantumGroup> {
        self.groups
            .get(name)
            .ok_or_else(|| Error::UnsupportedAlgebra(name.to_string()))
    }
}

fn w(c: &[i32]) -> Weight {
    Weight(c.to_vec())
}

fn fundamentals(rank: usize) -> Vec<Weight> {
    (0..rank)
        .map(|i| {
            let mut v = vec![0; rank];
            v[i] = 1;
            Weight(v)
        })
        .collect()
}

fn boxed(rank: usize, max: i32) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i32>| {
                (0..=max).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let mut ws: Vec<Weight> = out.into_iter().map(Weight).collect();
    ws.sort_by_key(|w| (w.level(), std::cmp::Reverse(w.clone())));
    ws
}

/// Irrep grid for the relation and dimension suites.
pub fn irrep_grid(grid: Grid) -> Vec<(&'static str, Vec<Weight>)> {
    let a1 = |h: u32| CartanData::from_name("A1").expect("A1").dominant_weights_up_to(h);
    let a2 = |h: u32| CartanData::from_name("A2").expect("A2").dominant_weights_up_to(h);
    match grid {
        Grid::Full => vec![
            ("A1", a1(8)),
            ("A2", a2(4)),
            ("A3", [vec![w(&[0, 0, 0])], fundamentals(3)].concat()),
            ("B2", boxed(2, 2)),
        ],
        Grid::Quick => vec![
            ("A1", a1(3)),
            ("A2", a2(2)),
            ("A3", [vec![w(&[0, 0, 0])], fundamentals(3)].concat()),
            ("B2", boxed(2, 1)),
        ],
    }
}

/// Coefficient grid for the Hopf suite.
pub fn hopf_grid(grid: Grid) -> Vec<(&'static str, Vec<Weight>)> {
    let a1 = |h: u32| CartanData::from_name("A1").expect("A1").dominant_weights_up_to(h);
    let a2 = |h: u32| CartanData::from_name("A2").expect("A2").dominant_weights_up_to(h);
    match grid {
        Grid::Full => vec![
            ("A1", a1(3)),
            ("A2", a2(2)),
            ("A3", fundamentals(3)),
            ("B2", fundamentals(2)),
        ],
        Grid::Quick => vec![
            ("A1", a1(2)),
            ("A2", a2(1)),
            ("B2", vec![w(&[1, 0])]),
        ],
    }
}

fn tally(name: impl Into<String>, results: impl IntoIterator<Item = bool>) -> Check {
    let (mut ok, mut n) = (0usize, 0usize);
    for r in results {
        n += 1;
        ok += usize::from(r);
    }
    Check::new(name, ok == n).with_detail(format!("{ok}/{n}"))
}

fn err_check(name: impl Into<String>, e: &Error) -> Check {
    Check::new(name, false).with_detail(format!("error: {e}"))
}

fn guard(name: &str, f: impl FnOnce() -> Result<Vec<Check>>) -> Vec<Check> {
    f().unwrap_or_else(|e| vec![err_check(name, &e)])
}

pub fn run(ctx: &Context, suites: &[Suite], grid: Grid) -> VerifyReport {
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(ctx, s, grid)).collect();
    VerifyReport {
        schema_version: REPORT_SCHEMA_VERSION,
        grid,
        pass: reports.iter().all(|r| r.pass),
        suites: reports,
    }
}

pub fn run_suite(ctx: &Context, suite: Suite, grid: Grid) -> SuiteReport {
    let checks = match suite {
        Suite::Relations => relations(ctx, grid),
        Suite::Dimensions => dimensions(ctx, grid),
        Suite::Hopf => hopf(ctx, grid),
        Suite::Schur => schur(ctx, grid),
        Suite::Positivity => positivity(ctx, grid),
        Suite::HomCriterion => hom_criterion(ctx, grid),
        Suite::Invariants => invariants(ctx, grid),
        Suite::Projectivity => projectivity(ctx, grid),
        Suite::Frobenius => frobenius(ctx, grid),
        Suite::BorelWeil => borel_weil(ctx, grid),
    };
    SuiteReport::new(suite, checks)
}

fn per_irrep(ctx: &Context, grid: Grid, f: impl Fn(&QuantumGroup, &Weight) -> Result<Check> + Sync) -> Vec<Check> {
    let jobs: Vec<(&str, Weight)> = irrep_grid(grid)
        .into_iter()
        .flat_map(|(a, ws)| ws.into_iter().map(move |l| (a, l)))
        .collect();
    jobs.par_iter()
        .map(|(a, l)| {
            ctx.group(a)
                .and_then(|qg| f(qg, l))
                .unwrap_or_else(|e| err_check(format!("{a} W{l}"), &e))
        })
        .collect()
}

fn relations(ctx: &Context, grid: Grid) -> Vec<Check> {
    per_irrep(ctx, grid, |qg, l| {
        let m = qg.irrep(l)?;
        let rel = m.check_serre();
        let con = m.check_contravariance();
        let ok = rel.all_pass() && con.all_pass() && m.gram_block_diagonal();
        let mut c = Check::new(format!("{} W{l} relations", qg.cd().name()), ok)
            .with_detail(format!("{} relations, {} contravariance identities, dim {}", rel.len(), con.len(), m.dim()));
        if let Some(f) = rel.failures().chain(con.failures()).next() {
            c = c.with_detail(format!("first failure: {}", f.name));
        }
        Ok(c)
    })
}

fn dimensions(ctx: &Context, grid: Grid) -> Vec<Check> {
    per_irrep(ctx, grid, |qg, l| {
        let cd = qg.cd();
        let m = qg.irrep(l)?;
        let weyl = cd.weyl_dim(l)?;
        let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
        for wt in m.weights() {
            *mult.entry(wt.clone()).or_insert(0) += 1;
        }
        let all: Vec<usize> = (0..cd.rank).collect();
        let fr = cd.freudenthal(l, &all);
        let dq = m.quantum_dimension();
        let ok = m.dim() as u64 == weyl && mult == fr && dq == dq.bar();
        Ok(Check::new(format!("{} W{l} dimension and multiplicities", cd.name()), ok)
            .with_detail(format!("dim {} vs Weyl {weyl}", m.dim())))
    })
}

/// `Σ c ρ_λ(w₁) ⊗ ρ_μ(w₂)` over the terms of `Δx`, against
/// `P · diag(ρ_ν(x)) · P⁻¹`.
fn duality_pair(qg: &QuantumGroup, l: &Weight, m: &Weight, words: &[Vec<Gen>]) -> Result<(usize, usize)> {
    let wl = qg.irrep(l)?;
    let wm = qg.irrep(m)?;
    let cg = qg.cg(l, m)?;
    let blocks: Vec<_> = cg
        .blocks
        .iter()
        .map(|b| qg.irrep(&b.nu).map(|i| (b.offset, i)))
        .collect::<Result<_>>()?;
    let n = cg.p.rows();
    let mut memo_l: HashMap<Vec<Gen>, SparseMatrix> = HashMap::new();
    let mut memo_m: HashMap<Vec<Gen>, SparseMatrix> = HashMap::new();
    let mut ok = 0;
    for x in words {
        let xw = AlgebraWord::word(x);
        let mut lhs = SparseMatrix::zeros(n, n);
        for ((w1, w2), c) in xw.coproduct().terms() {
            let a = memo_l
                .entry(w1.clone())
                .or_insert_with(|| wl.act_word(&AlgebraWord::word(w1)))
                .clone();
            let b = memo_m
                .entry(w2.clone())
                .or_insert_with(|| wm.act_word(&AlgebraWord::word(w2)))
                .clone();
            lhs = lhs.add(&a.kron(&b).scale(c));
        }
        let mut trip = Vec::new();
        for (off, irr) in &blocks {
            for (r, c, v) in irr.act_word(&xw).entries() {
                trip.push((off + r, off + c, v.clone()));
            }
        }
        let diag = SparseMatrix::from_triplets(n, n, trip);
        let rhs = cg.p.mul(&diag).mul(&cg.pinv);
        ok += usize::from(lhs == rhs);
    }
    Ok((ok, words.len()))
}

/// Every word of length at most `len` in the generators.
pub fn words_up_to(rank: usize, len: usize) -> Vec<Vec<Gen>> {
    let gens = Gen::all(rank);
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let next: Vec<Vec<Gen>> = layer
            .iter()
            .flat_map(|w: &Vec<Gen>| {
                gens.iter().map(move |&g| {
                    let mut x = w.clone();
                    x.push(g);
                    x
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Per-coefficient Hopf laws on `T^{(λ)}`.
fn hopf_laws(qg: &QuantumGroup, l: &Weight) -> Result<Vec<Check>> {
    let name = qg.cd().name();
    let basis = all_basis(qg, std::slice::from_ref(l))?;
    let unit = CoeffElement::unit(qg.rank());
    let (mut coassoc, mut counit_ok, mut anti, mut haar_inv, mut unitary) = (vec![], vec![], vec![], vec![], vec![]);
    for k in &basis {
        let a = CoeffElement::basis(k.lambda.clone(), k.i, k.j);
        let d = CoeffTensor::from_element(&a).coproduct_at(qg, 0)?;
        coassoc.push(d.coproduct_at(qg, 0)? == d.coproduct_at(qg, 1)?);
        let left = d.contract(0, |x| Ok(counit_index(x)))?.into_element()?;
        let right = d.contract(1, |x| Ok(counit_index(x)))?.into_element()?;
        counit_ok.push(left == a && right == a);
        let eps = counit_index(k);
        let s_left = d.map_slot(0, |x| antipode(qg, &CoeffElement::basis(x.lambda.clone(), x.i, x.j)))?;
        let s_right = d.map_slot(1, |x| antipode(qg, &CoeffElement::basis(x.lambda.clone(), x.i, x.j)))?;
        anti.push(s_left.multiply(qg)? == unit.scale(&eps) && s_right.multiply(qg)? == unit.scale(&eps));
        let h = haar(&a);
        let il = d.contract(1, |x| Ok(haar(&CoeffElement::basis(x.lambda.clone(), x.i, x.j))))?.into_element()?;
        let ir = d.contract(0, |x| Ok(haar(&CoeffElement::basis(x.lambda.clone(), x.i, x.j))))?.into_element()?;
        haar_inv.push(il == unit.scale(&h) && ir == unit.scale(&h));
    }
    // Σ_{k,m} (t_kl)* G_km t_mn = G_ln, the unitarity of t in a Gram-weighted basis
    let m = qg.irrep(l)?;
    let g = &m.gram;
    for lidx in 0..m.dim() {
        let stars: Vec<CoeffElement> = (0..m.dim())
            .map(|k| star(qg, &CoeffElement::basis(l.clone(), k, lidx)))
            .collect::<Result<_>>()?;
        for nidx in 0..m.dim() {
            let mut acc = CoeffElement::zero();
            for (k, mm, gv) in g.entries() {
                let t = CoeffElement::basis(l.clone(), mm, nidx);
                acc = acc.add(&product(qg, &stars[k], &t)?.scale(gv));
            }
            unitary.push(acc == unit.scale(&g.get(lidx, nidx)));
        }
    }
    Ok(vec![
        tally(format!("{name} T{l} coassociativity"), coassoc),
        tally(format!("{name} T{l} counit"), counit_ok),
        tally(format!("{name} T{l} antipode law"), anti),
        tally(format!("{name} T{l} Haar invariance"), haar_inv),
        tally(format!("{name} T{l} unitarity"), unitary),
    ])
}

/// `⟨S(a), x⟩ = ⟨a, S(x)⟩`, `⟨*(a), x⟩ = ⟨a, θ(x)⟩`, `*∘* = id` on generators.
fn pairing_laws(qg: &QuantumGroup, l: &Weight) -> Result<Vec<Check>> {
    let name = qg.cd().name();
    let cd = qg.cd().clone();
    let mut res_s = Vec::new();
    let mut res_star = Vec::new();
    let gens: Vec<AlgebraWord> = Gen::all(cd.rank).into_iter().map(AlgebraWord::gen).collect();
    for k in all_basis(qg, std::slice::from_ref(l))? {
        let a = CoeffElement::basis(k.lambda.clone(), k.i, k.j);
        let sa = antipode(qg, &a)?;
        let st = star(qg, &a)?;
        res_star.push(star(qg, &st)? == a);
        for x in &gens {
            res_s.push(coeff_eval(qg, &sa, x)? == coeff_eval(qg, &a, &x.antipode(&cd))?);
            res_star.push(coeff_eval(qg, &st, x)? == coeff_eval(qg, &a, &x.theta(&cd))?);
        }
    }
    Ok(vec![
        tally(format!("{name} T{l} antipode pairing"), res_s),
        tally(format!("{name} T{l} star pairing and involution"), res_star),
    ])
}

fn hopf(ctx: &Context, grid: Grid) -> Vec<Check> {
    let jobs: Vec<(&str, Weight)> = hopf_grid(grid)
        .into_iter()
        .flat_map(|(a, ws)| ws.into_iter().map(move |l| (a, l)))
        .collect();
    let mut out: Vec<Check> = jobs
        .par_iter()
        .map(|(a, l)| {
            guard(&format!("{a} T{l} Hopf laws"), || {
                let qg = ctx.group(a)?;
                let mut v = hopf_laws(qg, l)?;
                v.extend(pairing_laws(qg, l)?);
                Ok(v)
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    // duality, all words of length ≤ 3, on pairs with d_λ d_μ ≤ DUALITY_MAX_DIM
    let mut pairs = Vec::new();
    for (a, ws) in hopf_grid(grid) {
        let Ok(cd) = CartanData::from_name(a) else { continue };
        for l in &ws {
            for m in &ws {
                let d = cd.weyl_dim(l).unwrap_or(u64::MAX).saturating_mul(cd.weyl_dim(m).unwrap_or(u64::MAX));
                if d <= DUALITY_MAX_DIM {
                    pairs.push((a, l.clone(), m.clone()));
                }
            }
        }
    }
    let word_len = match grid {
        Grid::Full => 3,
        Grid::Quick => 2,
    };
    let dual: Vec<Check> = pairs
        .par_iter()
        .map(|(a, l, m)| {
            let name = format!("{a} duality on W{l} ⊗ W{m}, words of length ≤ {word_len}");
            ctx.group(a)
                .and_then(|qg| duality_pair(qg, l, m, &words_up_to(qg.rank(), word_len)))
                .map(|(ok, n)| Check::new(name.clone(), ok == n).with_detail(format!("{ok}/{n}")))
                .unwrap_or_else(|e| err_check(name, &e))
        })
        .collect();
    out.extend(dual);
    out
}

/// One row of the Schur orthogonality table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurRow {
    pub lambda: Weight,
    pub mu: Weight,
    /// 1-based `(i, j, r, s)`.
    pub index: [usize; 4],
    pub by_cg: Rf,
    pub closed_form: Rf,
    pub reversed_by_cg: Rf,
    pub reversed_closed_form: Rf,
}

impl SchurRow {
    pub fn agrees(&self) -> bool {
        self.by_cg == self.closed_form && self.reversed_by_cg == self.reversed_closed_form
    }
}

/// Both Schur orthogonality variants for every index quadruple.
pub fn schur_table(qg: &QuantumGroup, lambda: &Weight, mu: &Weight) -> Result<Vec<SchurRow>> {
    let dl = qg.irrep(lambda)?.dim();
    let dm = qg.irrep(mu)?.dim();
    let mut rows = Vec::new();
    for i in 0..dl {
        for j in 0..dl {
            for r in 0..dm {
                for s in 0..dm {
                    let idx = (i, j, r, s);
                    rows.push(SchurRow {
                        lambda: lambda.clone(),
                        mu: mu.clone(),
                        index: [i + 1, j + 1, r + 1, s + 1],
                        by_cg: schur_by_cg(qg, lambda, idx, mu)?,
                        closed_form: schur_closed_form(qg, lambda, idx, mu)?,
                        reversed_by_cg: schur_by_cg_reversed(qg, lambda, idx, mu)?,
                        reversed_closed_form: schur_closed_form_reversed(qg, lambda, idx, mu)?,
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn schur_grid(grid: Grid) -> Vec<(&'static str, Vec<Weight>)> {
    let top = match grid {
        Grid::Full => 3,
        Grid::Quick => 2,
    };
    vec![
        ("A1", (0..=top).map(|n| w(&[n])).collect()),
        ("A2", vec![w(&[1, 0]), w(&[0, 1])]),
    ]
}

fn schur(ctx: &Context, grid: Grid) -> Vec<Check> {
    let mut jobs = Vec::new();
    for (a, ws) in schur_grid(grid) {
        for l in &ws {
            for m in &ws {
                jobs.push((a, l.clone(), m.clone()));
            }
        }
    }
    let mut out: Vec<Check> = jobs
        .par_iter()
        .flat_map_iter(|(a, l, m)| {
            let base = format!("{a} λ = {l}, μ = {m}");
            match ctx.group(a).and_then(|qg| schur_table(qg, l, m)) {
                Ok(rows) => vec![
                    tally(format!("{base}: ∫ t S(t) closed form"), rows.iter().map(|r| r.by_cg == r.closed_form)),
                    tally(
                        format!("{base}: ∫ S(t) t closed form"),
                        rows.iter().map(|r| r.reversed_by_cg == r.reversed_closed_form),
                    ),
                ],
                Err(e) => vec![err_check(base, &e)],
            }
        })
        .collect();
    // S²(x) = K_{2ρ} x K_{2ρ}⁻¹ as matrices on every grid irrep
    out.extend(per_irrep(ctx, grid, |qg, l| {
        let cd = qg.cd().clone();
        let m = qg.irrep(l)?;
        let k = m.rep.k2rho_matrix();
        let kinv = m.rep.act_word(&k2rho(&cd).inverse_word());
        let ok = Gen::all(cd.rank).into_iter().all(|g| {
            let x = AlgebraWord::gen(g);
            m.act_word(&x.antipode(&cd).antipode(&cd)) == k.mul(&m.act_word(&x)).mul(&kinv)
        });
        Ok(Check::new(format!("{} W{l} S² = Ad K_2ρ", cd.name()), ok))
    }));
    out
}

fn positivity(ctx: &Context, grid: Grid) -> Vec<Check> {
    let samples = match grid {
        Grid::Full => 50,
        Grid::Quick => 10,
    };
    let cases: Vec<(&str, Vec<Weight>)> = vec![
        ("A1", vec![w(&[0]), w(&[1]), w(&[2])]),
        ("A2", vec![w(&[0, 0]), w(&[1, 0]), w(&[0, 1]), w(&[1, 1])]),
        ("A3", [vec![w(&[0, 0, 0])], fundamentals(3)].concat()),
        ("B2", vec![w(&[0, 0]), w(&[1, 0]), w(&[0, 1])]),
    ];
    let v0 = Q::from_integer(POSITIVITY_V0.into());
    cases
        .par_iter()
        .flat_map_iter(|(a, labels)| {
            let run = || -> Result<Vec<Check>> {
                let qg = ctx.group(a)?;
                let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
                let mut results = Vec::new();
                let mut min: Option<crate::scalar::NumericValue> = None;
                for n in 0..samples {
                    let a = if n == 0 {
                        CoeffElement::zero()
                    } else {
                        random_element(qg, labels, 1 + n % 4, &mut rng)?
                    };
                    let val = haar_positivity(qg, &a, &v0)?;
                    let s = val.signum();
                    results.push(if a.is_zero() { s == 0 } else { s > 0 });
                    if !a.is_zero() && min.as_ref().is_none_or(|m| val.to_f64() < m.to_f64()) {
                        min = Some(val);
                    }
                }
                let mut c = tally(format!("{a} (a, a)_h > 0 for a ≠ 0, = 0 for a = 0, at v = {POSITIVITY_V0}"), results);
                if let Some(m) = min {
                    c.detail = Some(format!("{}; smallest nonzero value {m}", c.detail.unwrap_or_default()));
                }
                Ok(vec![c])
            };
            run().unwrap_or_else(|e| vec![err_check(format!("{a} positivity"), &e)])
        })
        .collect()
}

fn hom_cases(grid: Grid) -> Vec<(&'static str, Vec<Vec<usize>>, u32)> {
    match grid {
        Grid::Full => vec![("A1", vec![vec![]], 5), ("A2", vec![vec![], vec![0], vec![1]], 3)],
        Grid::Quick => vec![("A1", vec![vec![]], 3), ("A2", vec![vec![], vec![0], vec![1]], 2)],
    }
}

fn hom_criterion(ctx: &Context, grid: Grid) -> Vec<Check> {
    let mut jobs = Vec::new();
    for (a, thetas, h) in hom_cases(grid) {
        for t in thetas {
            jobs.push((a, t, h));
        }
    }
    jobs.par_iter()
        .flat_map_iter(|(a, theta, h)| {
            let run = || -> Result<Vec<Check>> {
                let qg = ctx.group(a)?;
                let cd = qg.cd().clone();
                let p = ParabolicData::new(&cd, theta)?;
                let lams = cd.dominant_weights_up_to(*h);
                let mut targets: Vec<Weight> = Vec::new();
                if cd.rank == 1 && p.theta.is_empty() {
                    let span = *h as i32 + 1;
                    targets.extend((-span..=span).map(|m| w(&[m])));
                } else {
                    for l in &lams {
                        for mu in restrict_levi(qg, l, &p)?.multiplicities().into_keys() {
                            if !targets.contains(&mu) {
                                targets.push(mu);
                            }
                        }
                    }
                }
                let mut dims = Vec::new();
                let mut inter = Vec::new();
                let mut branch = Vec::new();
                for l in &lams {
                    let low = cd.lowest_weight(l)?;
                    let wl = qg.irrep(l)?;
                    let b = restrict_levi(qg, l, &p)?;
                    branch.push(b.multiplicities() == branching_oracle(&cd, l, &p) && b.verify(qg)?);
                    for mu in &targets {
                        let hb = hom_space(qg, l, mu, &p, Flavor::Parabolic)?;
                        dims.push(hb.dim() == usize::from(low == levi_lowest(&cd, mu, &p)));
                        let v = levi_irrep(qg, mu, &p)?;
                        for phi in &hb.maps {
                            inter.push(is_intertwiner(&wl.rep, &v.rep, &p.parabolic_generators(), phi));
                        }
                    }
                }
                Ok(vec![
                    tally(format!("{a} Θ = {p}: dim Hom_p(W(λ), V_μ) = [λ̄ = μ̃], height ≤ {h}"), dims),
                    tally(format!("{a} Θ = {p}: every Hom basis element intertwines"), inter),
                    tally(format!("{a} Θ = {p}: Levi branching matches the character oracle"), branch),
                ])
            };
            run().unwrap_or_else(|e| vec![err_check(format!("{a} Θ = {theta:?}"), &e)])
        })
        .collect()
}

fn invariants(ctx: &Context, grid: Grid) -> Vec<Check> {
    let mut out = Vec::new();
    let cases: Vec<(String, ParabolicData)> = CartanData::supported()
        .into_iter()
        .flat_map(|cd| {
            ParabolicData::all_subsets(&cd)
                .into_iter()
                .map(move |p| (cd.name(), p))
        })
        .collect();
    let per: Vec<Check> = cases
        .par_iter()
        .flat_map_iter(|(a, p)| {
            let run = || -> Result<Vec<Check>> {
                let qg = ctx.group(a)?;
                let cd = qg.cd().clone();
                let n = cd.rank - p.theta.len();
                let count = central_hom_count(qg, p)?;
                let gamma = cd.highest_root_weight();
                let inv = invariant_functions(qg, p, &TruncationPolicy::Weights(vec![gamma.clone()]))?;
                let dim = inv.first().map_or(0, |(_, v)| v.len());
                let dg = qg.irrep(&gamma)?.dim();
                Ok(vec![
                    Check::new(format!("{a} Θ = {p}: central homomorphisms W(γ) → C = r − |Θ|"), count == n)
                        .with_detail(format!("{count} vs {n}")),
                    Check::new(format!("{a} Θ = {p}: invariant functions at γ = d_γ (r − |Θ|)"), dim == dg * n)
                        .with_detail(format!("{dim} vs {}", dg * n)),
                ])
            };
            run().unwrap_or_else(|e| vec![err_check(format!("{a} Θ = {p}"), &e)])
        })
        .collect();
    out.extend(per);
    out.extend(guard("invariant products", || closure_checks(ctx, grid)));
    out
}

fn closure_checks(ctx: &Context, grid: Grid) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cases: Vec<(&str, Vec<usize>, Vec<Weight>)> = match grid {
        Grid::Full => vec![
            ("A1", vec![], vec![w(&[0]), w(&[2]), w(&[4])]),
            ("A2", vec![0], vec![w(&[0, 0]), w(&[1, 1])]),
            ("A2", vec![], vec![w(&[1, 1])]),
        ],
        Grid::Quick => vec![("A1", vec![], vec![w(&[0]), w(&[2])]), ("A2", vec![0], vec![w(&[1, 1])])],
    };
    for (a, theta, labels) in cases {
        let qg = ctx.group(a)?;
        let p = ParabolicData::new(qg.cd(), &theta)?;
        let inv = invariant_functions(qg, &p, &TruncationPolicy::Weights(labels))?;
        let fs: Vec<&CoeffElement> = inv.iter().flat_map(|(_, v)| v.iter().take(3)).collect();
        let mut res = Vec::new();
        for x in &fs {
            for y in &fs {
                res.push(product_closure_check(qg, &p, x, y).is_ok());
            }
        }
        out.push(tally(format!("{a} Θ = {p}: products of invariant functions are invariant"), res));
    }
    // two-sided module structure on sections
    let qg = ctx.group("A1")?;
    let p = ParabolicData::new(qg.cd(), &[])?;
    let v = levi_irrep(qg, &w(&[-1]), &p)?;
    let inv = invariant_functions(qg, &p, &TruncationPolicy::Weights(vec![w(&[2])]))?;
    let secs = sections_direct(qg, &v.rep, &p, Flavor::Levi, &w(&[1]))?;
    let mut res = Vec::new();
    for a in inv.iter().flat_map(|(_, v)| v.iter()) {
        for z in &secs {
            let l = left_multiply(qg, a, z)?;
            let r = right_multiply(qg, z, a)?;
            res.push(
                satisfies_defining(qg, &l, &v.rep, &p.levi_generators())?
                    && satisfies_defining(qg, &r, &v.rep, &p.levi_generators())?,
            );
        }
    }
    out.push(tally("A1 Θ = {}: a ζ and ζ a are sections for invariant a", res));
    let mut om = Vec::new();
    for z in &secs {
        om.push(check_omega(qg, z, &v.rep, &p.levi_generators())?.all_pass());
    }
    out.push(tally("A1 Θ = {}: coaction ω is coassociative, counital and compatible", om));
    Ok(out)
}

fn projectivity(ctx: &Context, grid: Grid) -> Vec<Check> {
    let samples = match grid {
        Grid::Full => 20,
        Grid::Quick => 5,
    };
    let cases: Vec<(&str, Vec<usize>, Weight, Vec<Weight>)> = vec![
        ("A1", vec![], w(&[1]), vec![w(&[0]), w(&[1]), w(&[2])]),
        ("A2", vec![0], w(&[1, 0]), vec![w(&[0, 0]), w(&[1, 0]), w(&[0, 1])]),
    ];
    let mut out: Vec<Check> = cases
        .par_iter()
        .flat_map_iter(|(a, theta, sigma, labels)| {
            let run = || -> Result<Vec<Check>> {
                let qg = ctx.group(a)?;
                let p = ParabolicData::new(qg.cd(), theta)?;
                let wm = qg.irrep(sigma)?;
                let tag = format!("{a} Θ = {p}, W = W{sigma}");
                let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
                let (mut eta_rt, mut kappa_rt) = (Vec::new(), Vec::new());
                for _ in 0..samples {
                    let z = random_section(qg, labels, wm.dim(), 3, &mut rng)?;
                    let e = eta_map(qg, sigma, &z, EtaKind::Eta)?;
                    let ei = eta_map(qg, sigma, &z, EtaKind::EtaInv)?;
                    eta_rt.push(
                        eta_map(qg, sigma, &e, EtaKind::EtaInv)? == z && eta_map(qg, sigma, &ei, EtaKind::Eta)? == z,
                    );
                    let k = eta_map(qg, sigma, &z, EtaKind::Kappa)?;
                    let ki = eta_map(qg, sigma, &z, EtaKind::KappaInv)?;
                    kappa_rt.push(
                        eta_map(qg, sigma, &k, EtaKind::KappaInv)? == z
                            && eta_map(qg, sigma, &ki, EtaKind::Kappa)? == z,
                    );
                }
                let gens = p.levi_generators();
                let mut forward = Vec::new();
                for l in labels {
                    for z in sections_direct(qg, &wm.rep, &p, Flavor::Levi, l)? {
                        for kind in [EtaKind::Eta, EtaKind::Kappa] {
                            let e = eta_map(qg, sigma, &z, kind)?;
                            let mut ok = true;
                            for c in &e.comps {
                                ok &= is_invariant(qg, c, &gens)?;
                            }
                            forward.push(ok);
                        }
                    }
                }
                let mut backward = Vec::new();
                let inv = invariant_functions(qg, &p, &TruncationPolicy::Weights(labels.clone()))?;
                for f in inv.iter().flat_map(|(_, v)| v.iter()) {
                    for r in 0..wm.dim() {
                        let xi = Section::pure(f.clone(), r, wm.dim());
                        for kind in [EtaKind::EtaInv, EtaKind::KappaInv] {
                            backward.push(satisfies_defining(qg, &eta_map(qg, sigma, &xi, kind)?, &wm.rep, &gens)?);
                        }
                    }
                }
                Ok(vec![
                    tally(format!("{tag}: η⁻¹η = ηη⁻¹ = id on {samples} samples"), eta_rt),
                    tally(format!("{tag}: κ⁻¹κ = κκ⁻¹ = id on {samples} samples"), kappa_rt),
                    tally(format!("{tag}: η, κ map F_q(W) into E_q ⊗ W"), forward),
                    tally(format!("{tag}: η⁻¹, κ⁻¹ map E_q ⊗ W into F_q(W)"), backward),
                ])
            };
            run().unwrap_or_else(|e| vec![err_check(format!("{a} projectivity"), &e)])
        })
        .collect();
    out.extend(guard("Levi complements", || {
        let mut checks = Vec::new();
        let cases: Vec<(&str, Vec<usize>, Vec<Weight>)> = vec![
            ("A1", vec![], (-3..=3).map(|m| w(&[m])).collect()),
            ("A2", vec![0], vec![w(&[1, 0]), w(&[0, 1]), w(&[1, 1])]),
            ("A2", vec![1], vec![w(&[1, 0]), w(&[0, 1]), w(&[1, 1])]),
            ("A2", vec![], vec![w(&[1, 0]), w(&[1, 1])]),
        ];
        for (a, theta, seeds) in cases {
            let qg = ctx.group(a)?;
            let p = ParabolicData::new(qg.cd(), &theta)?;
            let mut mus: Vec<Weight> = Vec::new();
            if qg.rank() == 1 {
                mus = seeds;
            } else {
                for s in &seeds {
                    for mu in restrict_levi(qg, s, &p)?.multiplicities().into_keys() {
                        if !mus.contains(&mu) {
                            mus.push(mu);
                        }
                    }
                }
            }
            let mut res = Vec::new();
            for mu in &mus {
                let c = levi_complement(qg, mu, &p)?;
                let v = levi_irrep(qg, mu, &p)?;
                let wd = qg.irrep(&c.sigma_mu)?.dim();
                res.push(
                    c.branching.verify(qg)?
                        && c.branching.summands[c.v_index].embedding.cols() == v.dim()
                        && v.dim() + c.complement_dim() == wd,
                );
            }
            checks.push(tally(format!("{a} Θ = {p}: V ⊕ V⊥ = W(σ(μ)) for every Levi irrep in the grid"), res));
        }
        Ok(checks)
    }));
    out
}

fn frobenius(ctx: &Context, grid: Grid) -> Vec<Check> {
    let cases: Vec<(&str, Vec<usize>, Vec<Weight>)> = match grid {
        Grid::Full => vec![
            ("A1", vec![], vec![w(&[0]), w(&[1]), w(&[2]), w(&[3])]),
            ("A2", vec![0], vec![w(&[1, 0]), w(&[0, 1]), w(&[1, 1])]),
        ],
        Grid::Quick => vec![
            ("A1", vec![], vec![w(&[1]), w(&[2])]),
            ("A2", vec![0], vec![w(&[1, 0])]),
        ],
    };
    let mut jobs = Vec::new();
    for (a, theta, ws) in cases {
        let Ok(qg) = ctx.group(a) else { continue };
        let Ok(p) = ParabolicData::new(qg.cd(), &theta) else { continue };
        let mut vs: Vec<Weight> = Vec::new();
        if qg.rank() == 1 {
            vs = (-3..=3).map(|m| w(&[m])).collect();
        } else {
            for l in &ws {
                if let Ok(b) = restrict_levi(qg, l, &p) {
                    for mu in b.multiplicities().into_keys() {
                        if !vs.contains(&mu) {
                            vs.push(mu);
                        }
                    }
                }
            }
        }
        for l in &ws {
            for mu in &vs {
                jobs.push((a, p.clone(), l.clone(), mu.clone()));
            }
        }
    }
    jobs.par_iter()
        .flat_map_iter(|(a, p, l, mu)| {
            let name = format!("{a} Θ = {p}, W{l}, V{mu}");
            let run = || -> Result<Vec<Check>> {
                let qg = ctx.group(a)?;
                let v = levi_irrep(qg, mu, p)?;
                let h = l.level() as u32 + 1;
                let r = frobenius_maps(qg, l, &v.rep, p, &TruncationPolicy::Height(h))?;
                let mut c = Check::new(format!("{name}: Frobenius reciprocity"), r.checks.all_pass())
                    .with_detail(format!("dim Hom_U(W, F_q(V)) = {}, dim Hom_l(W, V) = {}", r.dim_induced, r.dim_levi));
                if let Some(f) = r.checks.failures().next() {
                    c = c.with_detail(format!("first failure: {}", f.name));
                }
                Ok(vec![c])
            };
            run().unwrap_or_else(|e| vec![err_check(name, &e)])
        })
        .collect()
}

fn borel_weil(ctx: &Context, grid: Grid) -> Vec<Check> {
    let a1_max = match grid {
        Grid::Full => 5,
        Grid::Quick => 2,
    };
    let mut jobs: Vec<(&str, Vec<usize>, Weight, u32)> = Vec::new();
    for m in -a1_max..=a1_max {
        jobs.push(("A1", vec![], w(&[m]), a1_max as u32));
    }
    for a in -1..=1 {
        for b in -1..=1 {
            jobs.push(("A2", vec![], w(&[a, b]), 2));
        }
    }
    for a in 0..=1 {
        for b in -1..=1 {
            jobs.push(("A2", vec![0], w(&[a, b]), 2));
        }
    }
    let mut out: Vec<Check> = jobs
        .par_iter()
        .map(|(a, theta, mu, h)| {
            let name = format!("{a} Θ = {{{}}}, μ = {mu}", theta.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","));
            let run = || -> Result<Check> {
                let qg = ctx.group(a)?;
                let p = ParabolicData::new(qg.cd(), theta)?;
                let r = borel_weil_check(qg, mu, &p, &TruncationPolicy::Height(*h))?;
                let ok = r.status != BorelWeilStatus::Inconclusive && r.checks.all_pass();
                let mut c = Check::new(format!("{name}: {}", r.summary()), ok)
                    .with_detail(format!("dim {} expected {}", r.found_dim, r.expected_dim));
                if let Some(f) = r.checks.failures().next() {
                    c = c.with_detail(format!("first failure: {}", f.name));
                }
                Ok(c)
            };
            run().unwrap_or_else(|e| err_check(name, &e))
        })
        .collect();
    out.extend(guard("corollaries", || {
        let mut checks = Vec::new();
        for a in ["A1", "A2"] {
            let qg = ctx.group(a)?;
            let p = ParabolicData::new(qg.cd(), &[])?;
            let triv = levi_irrep(qg, &qg.cd().zero_weight(), &p)?;
            let pieces = crate::bundle::holomorphic_sections(qg, &triv.rep, &p, &TruncationPolicy::Height(2))?;
            let eps = Section::pure(CoeffElement::unit(qg.rank()), 0, 1);
            let ok = pieces.len() == 1 && pieces[0].1.len() == 1 && crate::bundle::same_span(&pieces[0].1, &[eps]);
            checks.push(Check::new(format!("{a}: O_q(C) = C ε"), ok));
        }
        for (a, theta, sigma) in [("A1", vec![], w(&[1])), ("A2", vec![], w(&[1, 0])), ("A2", vec![0], w(&[1, 0]))] {
            let qg = ctx.group(a)?;
            let p = ParabolicData::new(qg.cd(), &theta)?;
            let r = full_module_sections(qg, &sigma, &p, &TruncationPolicy::Height(2))?;
            let mut c = Check::new(format!("{a} Θ = {p}: O_q(W{sigma}) ≅ ε ⊗ W{sigma}"), r.all_pass());
            if let Some(f) = r.failures().next() {
                c = c.with_detail(format!("first failure: {}", f.name));
            }
            checks.push(c);
        }
        Ok(checks)
    }));
    out
}

/// Index of a Schur row for tabular output.
pub fn schur_index_label(idx: &CoeffIndex) -> String {
    idx.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("quick".parse::<Grid>().unwrap(), Grid::Quick);
    }

    #[test]
    fn words() {
        assert_eq!(words_up_to(1, 3).len(), 1 + 4 + 16 + 64);
    }

    #[test]
    fn quick_schur_and_hom() {
        let ctx = Context::new().unwrap();
        let r = run(&ctx, &[Suite::Schur, Suite::HomCriterion], Grid::Quick);
        for s in &r.suites {
            for c in &s.checks {
                assert!(c.pass, "{} {:?}", c.name, c.detail);
            }
        }
    }
}

