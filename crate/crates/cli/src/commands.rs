//! The subcommands, each a thin wrapper over the engine.

use std::path::Path;

use anyhow::Context as _;
use qbundle::bundle::{borel_weil_check, frobenius_maps, sections_direct, BorelWeilStatus, SectionRecord, TruncationPolicy};
use qbundle::cache::Store;
use qbundle::coeff::{antipode, antipode_inv, haar, product, star, CoeffElement};
use qbundle::engine::QuantumGroup;
use qbundle::parabolic::{levi_irrep, levi_lowest, Flavor, ParabolicData};
use qbundle::verify::{self, schur_table, Context, Grid, SchurRow, Suite, VerifyReport};
use qbundle::{CartanData, Check, Q, Rf, Weight};
use serde::Serialize;

use crate::config::pick;
use crate::render::{Output, Table};
use crate::{usage, Command, Outcome, Resolved};

pub fn dispatch(cmd: &Command, cfg: &Resolved) -> anyhow::Result<(String, Outcome)> {
    match cmd {
        Command::Irrep(a) => irrep(cfg, a.algebra.as_deref(), a.weight.as_deref()),
        Command::Verify(a) => verify_cmd(cfg, a),
        Command::Sections(a) => sections(cfg, a),
        Command::BorelWeil(a) => borel_weil(cfg, a),
        Command::Frobenius(a) => frobenius(cfg, a),
        Command::Haar(a) => haar_cmd(cfg, a),
    }
}

fn open_store(dir: &Path) -> anyhow::Result<Store> {
    let store = Store::open(dir).with_context(|| format!("opening cache {}", dir.display()))?;
    let bad = store.verify_all()?;
    if let Some((path, e)) = bad.first() {
        return Err(qbundle::Error::Integrity(format!("{}: {e}", path.display())).into());
    }
    Ok(store)
}

fn group(cfg: &Resolved, name: &str) -> anyhow::Result<QuantumGroup> {
    let qg = QuantumGroup::from_name(name)?;
    Ok(match &cfg.cache_dir {
        Some(d) => qg.with_store(open_store(d)?),
        None => qg,
    })
}

fn required(flag: Option<&str>, file: &Option<String>, name: &str) -> anyhow::Result<String> {
    pick(&flag.map(str::to_string), file).ok_or_else(|| usage(format!("missing --{name}")))
}

fn algebra(cfg: &Resolved, flag: Option<&str>) -> anyhow::Result<QuantumGroup> {
    group(cfg, &required(flag, &cfg.file.algebra, "algebra")?)
}

fn weight(cd: &CartanData, text: &str) -> anyhow::Result<Weight> {
    let w: Weight = text.parse()?;
    cd.check_rank(&w)?;
    Ok(w)
}

fn parabolic(cd: &CartanData, cfg: &Resolved, flag: Option<&str>) -> anyhow::Result<ParabolicData> {
    let text = pick(&flag.map(str::to_string), &cfg.file.theta).unwrap_or_default();
    Ok(ParabolicData::parse(cd, &text)?)
}

fn levi_weight(cd: &CartanData, text: &str) -> anyhow::Result<Weight> {
    if text == "trivial" {
        Ok(cd.zero_weight())
    } else {
        weight(cd, text)
    }
}

fn checks_table(checks: &[Check]) -> Table {
    let mut t = Table::new(&["check", "pass", "detail"]);
    for c in checks {
        t.push(vec![c.name.clone(), c.pass.to_string(), c.detail.clone().unwrap_or_default()]);
    }
    t
}

#[derive(Serialize)]
struct IrrepReport {
    algebra: String,
    highest: Weight,
    dim: usize,
    weyl_dim: u64,
    quantum_dimension: Rf,
    bar_invariant: bool,
    weights: Vec<Weight>,
    checks: Vec<Check>,
    pass: bool,
}

fn irrep(cfg: &Resolved, alg: Option<&str>, w: Option<&str>) -> anyhow::Result<(String, Outcome)> {
    let qg = algebra(cfg, alg)?;
    let lambda = weight(qg.cd(), &required(w, &cfg.file.weight, "weight")?)?;
    if !lambda.is_dominant() {
        return Err(qbundle::Error::NotDominant(lambda.to_string()).into());
    }
    let m = qg.irrep(&lambda)?;
    let mut checks = m.check_serre();
    checks.extend(m.check_contravariance());
    let dq = m.quantum_dimension();
    let rep = IrrepReport {
        algebra: qg.cd().name(),
        highest: lambda.clone(),
        dim: m.dim(),
        weyl_dim: qg.cd().weyl_dim(&lambda)?,
        bar_invariant: dq == dq.bar(),
        quantum_dimension: dq,
        weights: m.weights().to_vec(),
        pass: checks.all_pass(),
        checks: checks.checks,
    };
    let mut table = Table::new(&["index", "weight"]);
    for (i, wt) in rep.weights.iter().enumerate() {
        table.push(vec![(i + 1).to_string(), wt.to_string()]);
    }
    let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let summary = format!(
        "{} W{}\ndim {} (Weyl formula {})\nquantum dimension {}\nbar-invariant: {}\nrelations: {}/{} hold{}",
        rep.algebra,
        rep.highest,
        rep.dim,
        rep.weyl_dim,
        rep.quantum_dimension,
        if rep.bar_invariant { "yes" } else { "no" },
        rep.checks.len() - failed.len(),
        rep.checks.len(),
        if failed.is_empty() { String::new() } else { format!("; failing: {}", failed.join(", ")) },
    );
    let pass = rep.pass && rep.dim as u64 == rep.weyl_dim;
    let out = Output { summary, table, json: rep };
    Ok((out.render(cfg.format), Outcome::from_pass(pass)))
}

fn verify_cmd(cfg: &Resolved, a: &crate::VerifyArgs) -> anyhow::Result<(String, Outcome)> {
    let suites: Vec<Suite> = if a.check.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.check.iter().map(|s| s.parse()).collect::<qbundle::Result<_>>()?
    };
    let grid: Grid = pick(&a.grid, &cfg.file.grid).unwrap_or_else(|| "full".into()).parse()?;
    let alg = pick(&a.algebra, &cfg.file.algebra);
    if let (Some(name), [Suite::Schur]) = (&alg, suites.as_slice()) {
        let h = pick(&a.max_weight, &cfg.file.max_weight).unwrap_or(3);
        return schur_cmd(cfg, name, h);
    }
    let store = cfg.cache_dir.as_deref().map(open_store).transpose()?;
    let groups = CartanData::supported()
        .into_iter()
        .map(|cd| {
            let qg = QuantumGroup::new(cd);
            match &store {
                Some(s) => qg.with_store(s.clone()),
                None => qg,
            }
        })
        .collect();
    let ctx = Context::with_groups(groups);
    let mut report = verify::run(&ctx, &suites, grid);
    if let Some(name) = &alg {
        QuantumGroup::from_name(name)?;
        let prefix = format!("{name} ");
        for s in &mut report.suites {
            s.checks.retain(|c| c.name.starts_with(&prefix));
            s.pass = s.checks.iter().all(|c| c.pass);
        }
        report.pass = report.suites.iter().all(|s| s.pass);
    }
    if let Some(c) = report
        .suites
        .iter()
        .flat_map(|s| &s.checks)
        .find(|c| c.detail.as_deref().is_some_and(|d| d.contains("cache integrity failure")))
    {
        return Err(qbundle::Error::Integrity(c.detail.clone().unwrap_or_default()).into());
    }
    let out = verify_output(report);
    let pass = out.json.pass;
    Ok((out.render(cfg.format), Outcome::from_pass(pass)))
}

fn verify_output(report: VerifyReport) -> Output<VerifyReport> {
    let mut summary = String::new();
    let mut table = Table::new(&["suite", "check", "pass", "detail"]);
    for s in &report.suites {
        let failed = s.checks.iter().filter(|c| !c.pass).count();
        summary.push_str(&format!(
            "[{}] {} ({} checks, {} failed): {}\n",
            if s.pass { "PASS" } else { "FAIL" },
            s.suite,
            s.checks.len(),
            failed,
            s.description
        ));
        for c in &s.checks {
            if !c.pass {
                summary.push_str(&format!("    FAIL {} {}\n", c.name, c.detail.as_deref().unwrap_or("")));
            }
            table.push(vec![
                s.suite.to_string(),
                c.name.clone(),
                c.pass.to_string(),
                c.detail.clone().unwrap_or_default(),
            ]);
        }
    }
    summary.push_str(&format!(
        "overall: {} (grid {})",
        if report.pass { "PASS" } else { "FAIL" },
        report.grid
    ));
    // the per-check table is long; text output keeps only the summary
    Output { summary, table, json: report }
}

#[derive(Serialize)]
struct SchurTableReport {
    algebra: String,
    max_weight: u32,
    pass: bool,
    rows: Vec<SchurRow>,
}

fn schur_cmd(cfg: &Resolved, name: &str, h: u32) -> anyhow::Result<(String, Outcome)> {
    let qg = group(cfg, name)?;
    let labels = qg.cd().dominant_weights_up_to(h);
    let mut rows = Vec::new();
    for l in &labels {
        for m in &labels {
            rows.extend(schur_table(&qg, l, m)?);
        }
    }
    let pass = rows.iter().all(SchurRow::agrees);
    let mut table = Table::new(&[
        "lambda",
        "mu",
        "i",
        "j",
        "r",
        "s",
        "int t S(t)",
        "closed form",
        "int S(t) t",
        "closed form",
        "agree",
    ]);
    for r in &rows {
        let mut row = vec![r.lambda.to_string(), r.mu.to_string()];
        row.extend(r.index.iter().map(|x| x.to_string()));
        row.extend([
            r.by_cg.to_string(),
            r.closed_form.to_string(),
            r.reversed_by_cg.to_string(),
            r.reversed_closed_form.to_string(),
            r.agrees().to_string(),
        ]);
        table.push(row);
    }
    let agree = rows.iter().filter(|r| r.agrees()).count();
    let summary = format!(
        "Schur orthogonality on {name}, labels of height ≤ {h}: {agree}/{} index quadruples agree with the closed forms",
        rows.len()
    );
    let out = Output {
        summary,
        table,
        json: SchurTableReport {
            algebra: name.to_string(),
            max_weight: h,
            pass,
            rows,
        },
    };
    Ok((out.render(cfg.format), Outcome::from_pass(pass)))
}

#[derive(Serialize)]
struct SectionPiece {
    lambda: Weight,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    sections: Option<Vec<Vec<SectionRecord>>>,
}

#[derive(Serialize)]
struct SectionsReport {
    algebra: String,
    theta: String,
    v: Weight,
    flavor: &'static str,
    trunc: u32,
    total_dim: usize,
    pieces: Vec<SectionPiece>,
}

fn sections(cfg: &Resolved, a: &crate::SectionsArgs) -> anyhow::Result<(String, Outcome)> {
    let qg = algebra(cfg, a.algebra.as_deref())?;
    let cd = qg.cd().clone();
    let p = parabolic(&cd, cfg, a.theta.as_deref())?;
    let mu = levi_weight(&cd, &pick(&a.v, &cfg.file.v).unwrap_or_else(|| "trivial".into()))?;
    let h = pick(&a.trunc, &cfg.file.trunc).unwrap_or(2);
    let v = levi_irrep(&qg, &mu, &p)?;
    let flavor = if a.holomorphic { Flavor::Parabolic } else { Flavor::Levi };
    let mut pieces = Vec::new();
    let mut table = Table::new(&["lambda", "dim"]);
    for lambda in TruncationPolicy::Height(h).labels(&cd) {
        let s = sections_direct(&qg, &v.rep, &p, flavor, &lambda)?;
        table.push(vec![lambda.to_string(), s.len().to_string()]);
        pieces.push(SectionPiece {
            lambda,
            dim: s.len(),
            sections: a.with_sections.then(|| s.iter().map(|z| z.to_records()).collect()),
        });
    }
    let rep = SectionsReport {
        algebra: cd.name(),
        theta: p.to_string(),
        v: mu,
        flavor: if a.holomorphic { "parabolic" } else { "levi" },
        trunc: h,
        total_dim: pieces.iter().map(|x| x.dim).sum(),
        pieces,
    };
    let summary = format!(
        "{} Θ = {}: {} of V{} up to height {}, total dimension {}",
        rep.algebra,
        rep.theta,
        if a.holomorphic { "holomorphic sections" } else { "sections" },
        rep.v,
        h,
        rep.total_dim
    );
    let out = Output { summary, table, json: rep };
    Ok((out.render(cfg.format), Outcome::Pass))
}

#[derive(Serialize)]
struct BorelWeilJson {
    algebra: String,
    theta: String,
    mu: Weight,
    mu_tilde: Weight,
    nu: Option<Weight>,
    status: BorelWeilStatus,
    summary: String,
    trunc: u32,
    expected_dim: u64,
    found_dim: usize,
    support: Vec<Weight>,
    justification: String,
    checks: Vec<Check>,
    pass: bool,
}

fn borel_weil(cfg: &Resolved, a: &crate::BorelWeilArgs) -> anyhow::Result<(String, Outcome)> {
    let qg = algebra(cfg, a.algebra.as_deref())?;
    let cd = qg.cd().clone();
    let p = parabolic(&cd, cfg, a.theta.as_deref())?;
    let mu = weight(&cd, &required(a.mu.as_deref(), &cfg.file.mu, "mu")?)?;
    if !mu.is_dominant_on(&p.theta) {
        return Err(usage(format!("μ = {mu} is not dominant on Θ = {p}")));
    }
    let h = match pick(&a.trunc, &cfg.file.trunc) {
        Some(h) => h,
        None => {
            let neg = levi_lowest(&cd, &mu, &p).neg();
            if neg.is_dominant() {
                cd.dagger(&neg)?.level() as u32
            } else {
                mu.coords().iter().map(|x| x.unsigned_abs()).sum::<u32>().max(1)
            }
        }
    };
    let r = borel_weil_check(&qg, &mu, &p, &TruncationPolicy::Height(h))?;
    let pass = r.checks.all_pass();
    let outcome = match r.status {
        BorelWeilStatus::Inconclusive => Outcome::Inconclusive,
        _ => Outcome::from_pass(pass),
    };
    let rep = BorelWeilJson {
        algebra: cd.name(),
        theta: p.to_string(),
        mu: r.mu.clone(),
        mu_tilde: r.mu_tilde.clone(),
        nu: r.nu.clone(),
        status: r.status,
        summary: r.summary(),
        trunc: h,
        expected_dim: r.expected_dim,
        found_dim: r.found_dim,
        support: r.support.clone(),
        justification: r.justification.clone(),
        checks: r.checks.checks.clone(),
        pass,
    };
    let summary = format!(
        "{} Θ = {}, μ = {}: {}\nlowest weight of V_μ {}; truncation height {}",
        rep.algebra, rep.theta, rep.mu, rep.summary, rep.mu_tilde, h
    );
    let out = Output {
        summary,
        table: checks_table(&rep.checks),
        json: rep,
    };
    Ok((out.render(cfg.format), outcome))
}

#[derive(Serialize)]
struct FrobeniusJson {
    algebra: String,
    theta: String,
    lambda: Weight,
    v: Weight,
    trunc: u32,
    dim_induced: usize,
    dim_levi: usize,
    checks: Vec<Check>,
    pass: bool,
}

fn frobenius(cfg: &Resolved, a: &crate::FrobeniusArgs) -> anyhow::Result<(String, Outcome)> {
    let qg = algebra(cfg, a.algebra.as_deref())?;
    let cd = qg.cd().clone();
    let p = parabolic(&cd, cfg, a.theta.as_deref())?;
    let lambda = weight(&cd, &required(a.weight.as_deref(), &cfg.file.weight, "weight")?)?;
    if !lambda.is_dominant() {
        return Err(qbundle::Error::NotDominant(lambda.to_string()).into());
    }
    let mu = levi_weight(&cd, &required(a.v.as_deref(), &cfg.file.v, "v")?)?;
    let h = pick(&a.trunc, &cfg.file.trunc).unwrap_or(lambda.level() as u32);
    let v = levi_irrep(&qg, &mu, &p)?;
    let trunc = TruncationPolicy::Height(h);
    let r = frobenius_maps(&qg, &lambda, &v.rep, &p, &trunc)?;
    let pass = r.checks.all_pass();
    let outcome = if trunc.contains(&cd, &lambda) {
        Outcome::from_pass(pass)
    } else {
        Outcome::Inconclusive
    };
    let rep = FrobeniusJson {
        algebra: cd.name(),
        theta: p.to_string(),
        lambda,
        v: mu,
        trunc: h,
        dim_induced: r.dim_induced,
        dim_levi: r.dim_levi,
        checks: r.checks.checks,
        pass,
    };
    let summary = format!(
        "{} Θ = {}: dim Hom_U(W{}, F_q(V{})) = {}, dim Hom_l(W{}, V{}) = {}{}",
        rep.algebra,
        rep.theta,
        rep.lambda,
        rep.v,
        rep.dim_induced,
        rep.lambda,
        rep.v,
        rep.dim_levi,
        if outcome == Outcome::Inconclusive { " (inconclusive: truncation misses λ)" } else { "" }
    );
    let out = Output {
        summary,
        table: checks_table(&rep.checks),
        json: rep,
    };
    Ok((out.render(cfg.format), outcome))
}

/// `[star|S|Sinv ...] <element>`, operators applied right to left.
pub fn parse_expression(qg: &QuantumGroup, text: &str) -> anyhow::Result<CoeffElement> {
    let mut rest = text.trim();
    let mut ops = Vec::new();
    loop {
        let (head, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        match head {
            "star" | "S" | "Sinv" if !tail.is_empty() => {
                ops.push(head);
                rest = tail.trim_start();
            }
            _ => break,
        }
    }
    let mut a: CoeffElement = rest.parse()?;
    for op in ops.iter().rev() {
        a = match *op {
            "star" => star(qg, &a)?,
            "S" => antipode(qg, &a)?,
            _ => antipode_inv(qg, &a)?,
        };
    }
    Ok(a)
}

#[derive(Serialize)]
struct HaarJson {
    algebra: String,
    a: String,
    b: String,
    value: Rf,
    #[serde(skip_serializing_if = "Option::is_none")]
    v0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value_at_v0: Option<String>,
}

fn haar_cmd(cfg: &Resolved, a: &crate::HaarArgs) -> anyhow::Result<(String, Outcome)> {
    let qg = algebra(cfg, a.algebra.as_deref())?;
    let [ta, tb] = a.pair.as_slice() else {
        return Err(usage("--pair takes two expressions"));
    };
    let x = parse_expression(&qg, ta)?;
    let y = parse_expression(&qg, tb)?;
    for k in x.support().iter().chain(y.support().iter()) {
        qg.cd().check_rank(k)?;
    }
    let value = haar(&product(&qg, &x, &y)?);
    let v0 = pick(&a.v0, &cfg.file.v0);
    let at = match &v0 {
        Some(t) => {
            let q: Q = qbundle::scalar::parse_rational(t)?;
            Some(value.specialize(&q)?.to_string())
        }
        None => None,
    };
    let rep = HaarJson {
        algebra: qg.cd().name(),
        a: x.to_string(),
        b: y.to_string(),
        value,
        v0,
        value_at_v0: at,
    };
    let mut summary = format!("∫ ({}) ({}) = {}", rep.a, rep.b, rep.value);
    if let (Some(v0), Some(x)) = (&rep.v0, &rep.value_at_v0) {
        summary.push_str(&format!("\nat v = {v0}: {x}"));
    }
    let mut table = Table::new(&["quantity", "value"]);
    table.push(vec!["value".into(), rep.value.to_string()]);
    if let Some(x) = &rep.value_at_v0 {
        table.push(vec!["value_at_v0".into(), x.clone()]);
    }
    let out = Output { summary, table, json: rep };
    Ok((out.render(cfg.format), Outcome::Pass))
}
