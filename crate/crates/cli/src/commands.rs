use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;
use std::sync::Arc;

use ainf::models::{ring, strict_module};
use ainf::{
    check_algebra_relations, check_bimodule_relations, check_module_relations, massey3, massey4, AInfAlgebra, AInfError, AInfModule, Chain, CheckReport,
    Pivoting, Side,
};
use boxtensor::BoxParams;
use polytope::{
    associahedron_facets, cube_decomposition, f_vector, f_vector_csv, face_lattice, multiplihedron_facets, relation_terms, MultiplihedronFacet, TermKind,
};
use resolve::{tor as tor_table, TorMethod, TorParams};
use ring_r::Precision;
use serde_json::json;
use ssq::{apply_scenario, e_infty_vs_target, em_ss, Page, Scenario};
use thiserror::Error;

use crate::{refs, Format, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    /// Exit code 3.
    #[error("{0}")]
    Input(String),
    /// Exit code 2.
    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 3,
            CliError::Invariant(_) => 2,
        }
    }
}

/// Printed output plus an invariant failure, if any, reported after printing.
pub struct Report {
    pub body: String,
    pub failure: Option<String>,
}

impl Report {
    fn ok(body: String) -> Self {
        Self { body, failure: None }
    }
}

fn precision(cfg: &RunConfig) -> Result<Precision, CliError> {
    Precision::new(cfg.precision).map_err(|e| CliError::Input(e.to_string()))
}

fn invariant(e: impl std::fmt::Display) -> CliError {
    CliError::Invariant(e.to_string())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn tor(cfg: &RunConfig, left: &str, right: &str) -> Result<Report, CliError> {
    let p = precision(cfg)?;
    let (lo, hi) = cfg.window.unwrap_or((-24, 0));
    let floor = lo - 4 * i64::from(p.get());
    let (m, n) = (refs::module(left, p, floor)?, refs::module(right, p, floor)?);
    let params = TorParams::new(cfg.nmax.unwrap_or(6), lo, hi);
    let res = tor_table(&m, &n, TorMethod::Resolution, params).map_err(|e| invariant(format!("resolution path for Tor({left}, {right}): {e}")))?;
    let bar = tor_table(&m, &n, TorMethod::Bar, params).map_err(|e| invariant(format!("bar path for Tor({left}, {right}): {e}")))?;
    let diff = bar.disagreements(&res);
    let failure = diff.first().map(|((i, j), b, r)| format!("Tor({left}, {right}) at (i, j) = ({i}, {j}): bar {b}, resolution {r}"));
    let body = match cfg.format {
        Format::Grid => {
            let mut s = format!("Tor^R({left}, {right})  p = {}  window [{lo}, {hi}]  certified j >= {}\n\nresolution\n", p.get(), res.cert_lo);
            s.push_str(&res.render_grid());
            s.push_str("\nbar complex\n");
            s.push_str(&bar.render_grid());
            let verdict = if diff.is_empty() { "agree".to_string() } else { format!("{} disagreements", diff.len()) };
            let _ = writeln!(s, "\ncross-check: {verdict}");
            s
        }
        Format::Csv => {
            let mut s = String::from("method,i,j,dim,certified\n");
            for (name, t) in [("resolution", &res), ("bar", &bar)] {
                for line in t.render_csv().lines().skip(1) {
                    let _ = writeln!(s, "{name},{line}");
                }
            }
            s
        }
        Format::Json => pretty(&json!({ "config": cfg, "left": left, "right": right, "resolution": res, "bar": bar, "agree": diff.is_empty() })),
    };
    Ok(Report { body, failure })
}

fn page_text(page: &Page, format: Format) -> String {
    match format {
        Format::Grid => page.render_grid(),
        Format::Csv => format!("# E^{}\n{}", page.r, page.render_csv()),
        Format::Json => {
            let mut s = page.render_json();
            s.push('\n');
            s
        }
    }
}

fn parse_target(spec: &str, p: Precision, lo: i64) -> Result<BTreeMap<i64, usize>, CliError> {
    if !spec.contains(':') {
        let m = refs::module(spec, p, lo)?;
        return Ok(m.degrees().into_iter().map(|d| (d, m.dim(d))).collect());
    }
    spec.split(',')
        .map(|kv| {
            let (t, r) = kv.split_once(':').ok_or_else(|| CliError::Input(format!("bad target entry {kv:?}")))?;
            let t = t.trim().parse().map_err(|_| CliError::Input(format!("bad total degree {t:?}")))?;
            let r = r.trim().parse().map_err(|_| CliError::Input(format!("bad rank {r:?}")))?;
            Ok((t, r))
        })
        .collect()
}

pub fn ss(cfg: &RunConfig, left: &str, right: &str, pattern: Option<&Path>, target: Option<&str>) -> Result<Report, CliError> {
    let p = precision(cfg)?;
    let (lo, hi) = cfg.window.unwrap_or((-8, 0));
    let floor = lo - 4 * i64::from(p.get());
    let (gm, gn) = (refs::module(left, p, floor)?, refs::module(right, p, floor)?);
    let scenario =
        pattern.map(|path| Scenario::from_json_str(&refs::read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))).transpose()?;
    let mut body = String::new();
    let mut failure = None;
    let mut json_pages = Vec::new();

    let nmax = cfg.nmax.unwrap_or(4);
    if nmax > 0 {
        let a = Arc::new(ring(p));
        let m = strict_module(&a, &gm, Side::Right, left).map_err(|e| CliError::Input(e.to_string()))?;
        let n = strict_module(&a, &gn, Side::Left, right).map_err(|e| CliError::Input(e.to_string()))?;
        let em = em_ss(&m, &n, BoxParams::new(nmax, lo), cfg.rmax).map_err(invariant)?;
        let table = tor_table(&gm, &gn, TorMethod::Resolution, TorParams::new(nmax, lo, hi)).map_err(invariant)?;
        let cmp = em.compare_to_tor(&table);
        if cfg.format == Format::Grid {
            let _ = writeln!(
                body,
                "{left} box {right}  p = {}  n_max = {nmax}  j_min = {lo}  exact through total degree {}",
                p.get(),
                em.box_complex.params.exact_through()
            );
            let _ = writeln!(body, "E^r cells with p + r - 1 > {nmax} or q < {lo} are truncation-affected\n");
        }
        for page in em.pages.iter().skip(1) {
            match cfg.format {
                Format::Json => json_pages.push(serde_json::to_value(page).expect("pages serialize")),
                f => {
                    body.push_str(&page_text(page, f));
                    body.push('\n');
                }
            }
        }
        if cfg.format == Format::Grid {
            let _ = writeln!(body, "E^2 vs Tor: {} cells compared, {} mismatches\n", cmp.cells_compared, cmp.mismatches.len());
        }
        if let Some(((a, b), e, t)) = cmp.mismatches.first() {
            failure = Some(format!("E^2 of {left} box {right} at ({a}, {b}) is {e}, Tor gives {t}"));
        }
    }

    let mut convergence = None;
    if let Some(sc) = &scenario {
        let table =
            tor_table(&gm, &gn, TorMethod::Resolution, TorParams::new(sc.p_max.max(0) as usize, sc.q_lo.min(lo), sc.q_hi.max(hi))).map_err(invariant)?;
        let start = Page::from_table(&table, sc.convention);
        let pages = apply_scenario(&start, sc).map_err(|e| invariant(format!("pattern {:?}: {e}", sc.name)))?;
        if cfg.format == Format::Grid {
            let _ = writeln!(body, "pattern {:?} on E^2 = Tor^R({left}, {right})\n", sc.name);
        }
        for page in &pages {
            match cfg.format {
                Format::Json => json_pages.push(serde_json::to_value(page).expect("pages serialize")),
                f => {
                    body.push_str(&page_text(page, f));
                    body.push('\n');
                }
            }
        }
        let goal = match target {
            Some(t) => parse_target(t, p, lo)?,
            None => sc.target.clone(),
        };
        if !goal.is_empty() {
            let totals: Vec<i64> = goal.keys().rev().copied().collect();
            let report = e_infty_vs_target(pages.last().expect("nonempty"), &goal, &totals);
            if cfg.format == Format::Grid {
                body.push_str("E^inf vs target\n");
                for (t, got, want) in &report.rows {
                    let _ = writeln!(body, "  t = {t}: {got} (target {want})");
                }
                let _ = writeln!(body, "{}", if report.passed() { "converged" } else { "mismatch" });
            }
            if !report.passed() && failure.is_none() {
                failure = Some(format!("E^inf totals {:?} differ from target", report.rows));
            }
            convergence = Some(report);
        }
    } else if let Some(t) = target {
        return Err(CliError::Input(format!("--target {t:?} needs --pattern")));
    }

    if cfg.format == Format::Json {
        body = pretty(&json!({ "config": cfg, "left": left, "right": right, "pages": json_pages, "convergence": convergence }));
    }
    Ok(Report { body, failure })
}

fn load_algebra(path: &Path) -> Result<AInfAlgebra, CliError> {
    AInfAlgebra::from_json_str(&refs::read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn massey(cfg: &RunConfig, path: &Path, elements: &[String]) -> Result<Report, CliError> {
    let a = load_algebra(path)?;
    let xs = elements.iter().map(|e| refs::element(&a, e)).collect::<Result<Vec<Chain>, _>>()?;
    let basis = a.basis();
    let undefined = |e: AInfError| match e {
        AInfError::Undefined { .. } => invariant(format!("<{}>: {e}", elements.join(", "))),
        other => CliError::Input(other.to_string()),
    };
    if let [x1, x2, x3] = xs.as_slice() {
        let coset = massey3(&a, [x1, x2, x3], Pivoting::Natural).map_err(undefined)?;
        let mut trials = Vec::new();
        if let Some(seed) = cfg.seed {
            for k in 0..10 {
                let c = massey3(&a, [x1, x2, x3], Pivoting::Shuffled(seed + k)).map_err(undefined)?;
                trials.push(c.canonical == coset.canonical);
            }
        }
        let failure = trials.iter().any(|ok| !ok).then(|| "massey3 coset depends on pivot order".to_string());
        let indet: Vec<String> = coset.indeterminacy.iter().map(|c| basis.render(c)).collect();
        let body = match cfg.format {
            Format::Json => pretty(&json!({
                "product": elements, "degree": coset.degree, "class": basis.render(&coset.canonical),
                "indeterminacy": indet, "pivot_trials": trials, "coset": coset,
            })),
            Format::Grid | Format::Csv => {
                let mut s = format!("<{}> in degree {}\n  class: {}\n  indeterminacy: ", elements.join(", "), coset.degree, basis.render(&coset.canonical));
                s.push_str(&if indet.is_empty() { "0".to_string() } else { format!("span({})", indet.join(", ")) });
                s.push('\n');
                if !trials.is_empty() {
                    let _ = writeln!(s, "  pivot trials: {}/{} agree", trials.iter().filter(|t| **t).count(), trials.len());
                }
                s
            }
        };
        return Ok(Report { body, failure });
    }
    let refs4 = [&xs[0], &xs[1], &xs[2], &xs[3]];
    let m4 = massey4(&a, refs4).map_err(undefined)?;
    let classes: Vec<String> = m4.classes.iter().map(|c| basis.render(c)).collect();
    let body = match cfg.format {
        Format::Json => pretty(&json!({
            "product": elements, "degree": m4.degree, "classes": classes,
            "defining_systems": m4.defining_systems, "exhaustive": m4.exhaustive,
        })),
        Format::Grid | Format::Csv => {
            let mut s = format!("<{}> in degree {}\n", elements.join(", "), m4.degree);
            let _ = writeln!(s, "  classes: {{{}}}", classes.join(", "));
            let _ = writeln!(s, "  defining systems: {}{}", m4.defining_systems, if m4.exhaustive { "" } else { " (sampled)" });
            s
        }
    };
    Ok(Report::ok(body))
}

fn render_check(r: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => pretty(&serde_json::to_value(r).expect("reports serialize")),
        Format::Grid | Format::Csv => {
            let mut s = format!("{} through arity {}: {} terms, {} failing words\n", r.relation, r.n_max, r.terms, r.failing_words);
            if let Some(f) = &r.first_failure {
                let _ = writeln!(s, "  first failure at arity {}: ({}) -> {}", f.arity, f.labels.join(", "), f.residue_labels);
            }
            let _ = writeln!(s, "{}", if r.passed() { "pass" } else { "fail" });
            s
        }
    }
}

pub fn check(cfg: &RunConfig, path: &Path) -> Result<Report, CliError> {
    let text = refs::read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let n_max = cfg.nmax.unwrap_or(5);
    let report = if value.get("side").is_some() {
        let m = AInfModule::from_json_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        match m.side() {
            Side::Bimodule => check_bimodule_relations(&m, n_max, cfg.window),
            _ => check_module_relations(&m, n_max, cfg.window),
        }
    } else {
        check_algebra_relations(&load_algebra(path)?, n_max, cfg.window)
    };
    let failure = report.first_failure.as_ref().map(|f| format!("{} fails on ({}) with residue {}", report.relation, f.labels.join(", "), f.residue_labels));
    Ok(Report { body: render_check(&report, cfg.format), failure })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    FVector,
    Facets,
    Faces,
    Cubes,
    RelationTerms,
}

fn multi_label(f: &MultiplihedronFacet, n: usize) -> String {
    match f {
        MultiplihedronFacet::Composition(parts) => {
            let js: Vec<String> = parts.iter().map(|i| format!("J{i}")).collect();
            format!("{} x K{}", js.join(" x "), parts.len())
        }
        MultiplihedronFacet::Block { position, size } => format!("J{} x K{size} at {position}", n - size + 1),
    }
}

pub fn polytope(cfg: &RunConfig, assoc: bool, n: usize, query: Query) -> Result<Report, CliError> {
    let bad = |e: polytope::PolytopeError| CliError::Input(e.to_string());
    let name = if assoc { "K" } else { "J" };
    let body = match (assoc, query) {
        (true, Query::FVector) => {
            let f = f_vector(n).map_err(bad)?;
            match cfg.format {
                Format::Grid => format!("{}\n", f.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
                Format::Csv => f_vector_csv(n).map_err(bad)?,
                Format::Json => pretty(&json!({ "polytope": format!("K{n}"), "f_vector": f })),
            }
        }
        (true, Query::Facets) => {
            let facets = associahedron_facets(n).map_err(bad)?;
            match cfg.format {
                Format::Json => pretty(&serde_json::to_value(&facets).expect("facets serialize")),
                Format::Csv => facets.iter().fold(String::from("i,j,inner,outer\n"), |mut s, f| {
                    let _ = writeln!(s, "{},{},{},{}", f.interval.i, f.interval.j, f.inner, f.outer);
                    s
                }),
                Format::Grid => facets.iter().fold(String::new(), |mut s, f| {
                    let _ = writeln!(s, "{}  K{} x K{}", f.interval, f.inner, f.outer);
                    s
                }),
            }
        }
        (true, Query::Faces | Query::Cubes) => {
            let faces = if query == Query::Faces { face_lattice(n) } else { cube_decomposition(n) }.map_err(bad)?;
            match cfg.format {
                Format::Json => pretty(&serde_json::to_value(&faces).expect("faces serialize")),
                Format::Csv => faces.iter().fold(String::from("dimension,parenthesization\n"), |mut s, f| {
                    let _ = writeln!(s, "{},{}", f.dimension(), f.parenthesization());
                    s
                }),
                Format::Grid => faces.iter().fold(String::new(), |mut s, f| {
                    let ivs: Vec<String> = f.intervals.iter().map(ToString::to_string).collect();
                    let _ = writeln!(s, "{}  dim {}  {}", f.parenthesization(), f.dimension(), ivs.join(" "));
                    s
                }),
            }
        }
        (_, Query::RelationTerms) => {
            let terms = relation_terms(n).map_err(bad)?;
            match cfg.format {
                Format::Json => pretty(&serde_json::to_value(&terms).expect("terms serialize")),
                Format::Csv | Format::Grid => terms.iter().fold(String::from("i,j,l,kind\n"), |mut s, t| {
                    let kind = match t.kind() {
                        TermKind::Differential => "differential".to_string(),
                        TermKind::Facet(iv) => format!("facet {iv}"),
                    };
                    let _ = writeln!(s, "{},{},{},{kind}", t.i, t.j, t.l);
                    s
                }),
            }
        }
        (false, Query::Facets | Query::FVector) => {
            let facets = multiplihedron_facets(n).map_err(bad)?;
            match cfg.format {
                Format::Json => pretty(&json!({ "polytope": format!("J{n}"), "facets": facets })),
                Format::Csv => facets.iter().fold(String::from("facet\n"), |mut s, f| {
                    let _ = writeln!(s, "{}", multi_label(f, n));
                    s
                }),
                Format::Grid => {
                    let mut s = format!("J{n}: {} facets\n", facets.len());
                    for f in &facets {
                        let _ = writeln!(s, "  {}", multi_label(f, n));
                    }
                    s
                }
            }
        }
        (false, _) => return Err(CliError::Input(format!("{name}{n}: only --facets and --relation-terms are available for multiplihedra"))),
    };
    Ok(Report::ok(body))
}
