//! The acceptance criteria as plain functions, each returning an [`Outcome`].

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Duration;

use ainf::models::{candidate_ring, field_module, massey_dga, ring, strict_module, toy_module, truncated_polynomial};
use ainf::mutate::{mutate_algebra, mutate_module};
use ainf::{algebra_relation_at, check_algebra_relations, check_module_relations, massey3, massey4, module_relation_at, AInfModule, Chain, Pivoting, Side};
use boxtensor::{box_tensor, BoxParams};
use polytope::{catalan, cube_decomposition, f_vector, multiplihedron_facets};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use resolve::{periodic_resolution_2311, tor, BigradedTable, TorMethod, TorParams};
use ring_r::{Monomial, Precision};
use rmodule::{catalogue, check_sum_inequalities, tensor_over_r, CorrectionTerms, GradedModule};
use ssq::{apply_scenario, e_infty_vs_target, em_ss, massey_differential_check, shipped_scenario, MasseyOutcome, Page};

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
    /// Extra lines printed under the verdict.
    pub notes: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into(), notes: Vec::new() }
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub budget: Duration,
    pub run: fn() -> Outcome,
    /// Why the literal criterion is expected to fail, if it is.
    pub known_failure: Option<&'static str>,
}

const SWAPPED: &str = "the stated grid is Tor(M<1>, M<2>), not Tor(N<1>, N<1>)";

pub fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion { id: 1, name: "Tor(F,F) grid", budget: s(10), run: tor_field_field, known_failure: None },
        Criterion { id: 2, name: "periodic resolution of F", budget: s(5), run: periodic_resolution, known_failure: None },
        Criterion { id: 3, name: "Tor(N<1>,N<1>) grid", budget: s(30), run: two_y_tor, known_failure: Some(SWAPPED) },
        Criterion { id: 4, name: "2Y spectral-sequence endgame", budget: s(5), run: two_y_endgame, known_failure: Some(SWAPPED) },
        Criterion { id: 5, name: "box tensor vs Tor", budget: s(120), run: em_oracle, known_failure: None },
        Criterion { id: 6, name: "correction-term inequalities", budget: s(1), run: inequalities, known_failure: None },
        Criterion { id: 7, name: "polytopes", budget: s(10), run: polytopes, known_failure: None },
        Criterion { id: 8, name: "A-infinity machinery", budget: s(60), run: ainf_machinery, known_failure: None },
        Criterion { id: 9, name: "Massey products vs d2", budget: s(30), run: massey_bridge, known_failure: None },
    ]
}

const LO: i64 = -48;

fn prec(p: u32) -> Precision {
    Precision::new(p).expect("positive precision")
}

fn module(name: &str, p: u32, shift: i64) -> GradedModule {
    catalogue(name, prec(p), LO - shift).expect("catalogue module").module.shift(shift).expect("shift fits")
}

fn cells(list: &[(usize, i64)]) -> BTreeMap<(usize, i64), usize> {
    let mut out = BTreeMap::new();
    for &c in list {
        *out.entry(c).or_default() += 1;
    }
    out
}

fn diff_cells(got: &BTreeMap<(usize, i64), usize>, want: &BTreeMap<(usize, i64), usize>) -> Vec<String> {
    let keys: std::collections::BTreeSet<_> = got.keys().chain(want.keys()).collect();
    keys.into_iter()
        .filter(|k| got.get(k) != want.get(k))
        .map(|&(i, j)| format!("({i},{j}): {} vs {}", got.get(&(i, j)).unwrap_or(&0), want.get(&(i, j)).unwrap_or(&0)))
        .collect()
}

fn certified_in(t: &BigradedTable) -> BTreeMap<(usize, i64), usize> {
    t.certified_entries().into_iter().filter(|((_, j), _)| (t.j_lo..=t.j_hi).contains(j)).collect()
}

pub fn tor_field_field() -> Outcome {
    let f = module("F", 6, 0);
    let params = TorParams::new(6, -24, 0);
    let mut want = BTreeMap::from([((0, 0), 1)]);
    for i in 1..=6usize {
        let n = (i / 2) as i64;
        let js = if i % 2 == 0 { [-3 * n, -3 * n - 2] } else { [-1 - 3 * n, -4 - 3 * n] };
        for j in js {
            *want.entry((i, j)).or_default() += 1;
        }
    }
    let mut problems = Vec::new();
    let mut cert = 0;
    for method in [TorMethod::Resolution, TorMethod::Bar] {
        let t = match tor(&f, &f, method, params) {
            Ok(t) => t,
            Err(e) => return Outcome::new(false, format!("{method:?}: {e}")),
        };
        cert = t.cert_lo;
        let got = certified_in(&t);
        let expected: BTreeMap<_, _> = want.iter().filter(|((_, j), _)| *j >= t.cert_lo).map(|(k, v)| (*k, *v)).collect();
        problems.extend(diff_cells(&got, &expected).into_iter().map(|d| format!("{method:?} {d}")));
        for i in 1..=6 {
            let col: usize = got.iter().filter(|((a, _), _)| *a == i).map(|(_, v)| v).sum();
            if col != 2 {
                problems.push(format!("{method:?} column {i} has rank {col}"));
            }
        }
    }
    Outcome::new(
        problems.is_empty(),
        if problems.is_empty() { format!("16 classes, rank 2 in columns 1..6, certified j >= {cert}") } else { problems.join("; ") },
    )
}

pub fn periodic_resolution() -> Outcome {
    let p = prec(6);
    let res = match periodic_resolution_2311(6, p, -24) {
        Ok(r) => r,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    if let Err(e) = res.check_delta_squared() {
        return Outcome::new(false, e.to_string());
    }
    let mut problems = Vec::new();
    for n in 0..6 {
        for d in res.reliable_lo(n + 1)..=0 {
            if !res.exact_at(n, d) {
                problems.push(format!("not exact at stage {n}, degree {d}"));
            }
        }
    }
    for n in 0..6usize {
        let k = (n / 2) as i64;
        let (name, shift) = if n % 2 == 0 { ("N", -3 * k) } else { ("M", -3 - 3 * k) };
        let want = module(name, 6, shift);
        let got = res.kernel_dims(n);
        let lo = res.reliable_lo(n + 1);
        for d in lo..=0 {
            if got.get(&d).copied().unwrap_or(0) != want.dim(d) {
                problems.push(format!("ker d_{n} in degree {d}: {} vs {name}<{shift}> {}", got.get(&d).copied().unwrap_or(0), want.dim(d)));
            }
        }
    }
    Outcome::new(
        problems.is_empty(),
        if problems.is_empty() { "d^2 = 0, exact, kernels N<-3n> and M<-3-3n> through stage 6".to_string() } else { problems.join("; ") },
    )
}

/// The 11 × 6 grid of Tor near (0, 3), read off row by row from q = 3 down to q = −7.
fn two_y_grid() -> BTreeMap<(usize, i64), usize> {
    cells(&[
        (0, 3),
        (1, 2),
        (0, 1),
        (0, 1),
        (2, 0),
        (0, -1),
        (1, -1),
        (3, -1),
        (0, -2),
        (2, -2),
        (0, -3),
        (4, -3),
        (3, -4),
        (5, -4),
        (0, -5),
        (4, -5),
        (0, -6),
        (0, -7),
        (5, -7),
    ])
}

/// Towers with tops −1, −2, 1 plus F at 3 and at 1, in degrees −7 … 3.
fn two_y_column_zero() -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for top in [-1i64, -2, 1] {
        for d in (-7..=top).rev().step_by(4) {
            *out.entry(d).or_default() += 1;
        }
    }
    for d in [3, 1] {
        *out.entry(d).or_default() += 1;
    }
    out
}

fn grid_check(left: &GradedModule, right: &GradedModule, tensor: (&GradedModule, &GradedModule)) -> Result<Vec<String>, String> {
    let t = tor(left, right, TorMethod::Resolution, TorParams::new(5, -7, 3)).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    if t.cert_lo > -7 {
        problems.push(format!("only certified down to {}", t.cert_lo));
    }
    problems.extend(diff_cells(&certified_in(&t), &two_y_grid()));
    let want = two_y_column_zero();
    let t0 = tensor_over_r(tensor.0, tensor.1).map_err(|e| e.to_string())?;
    for d in -7..=3 {
        let w = want.get(&d).copied().unwrap_or(0);
        if t.get(0, d) != w {
            problems.push(format!("column 0 at {d}: {} vs {w}", t.get(0, d)));
        }
        if t0.dim(d) != w {
            problems.push(format!("tensor at {d}: {} vs {w}", t0.dim(d)));
        }
    }
    Ok(problems)
}

pub fn two_y_tor() -> Outcome {
    let n1 = module("N", 6, 1);
    let literal = match grid_check(&n1, &n1, (&module("N", 6, 0), &module("N", 6, 3))) {
        Ok(p) => p,
        Err(e) => return Outcome::new(false, e),
    };
    let variant = grid_check(&module("M", 8, 1), &module("M", 8, 2), (&module("M", 8, 0), &module("M", 8, 3)));
    let note = match variant {
        Ok(p) if p.is_empty() => "diagnostic: Tor(M<1>, M<2>) and M (x)_R M<3> reproduce the grid and column 0 exactly".to_string(),
        Ok(p) => format!("diagnostic: Tor(M<1>, M<2>) differs too: {}", p.join("; ")),
        Err(e) => format!("diagnostic: {e}"),
    };
    let detail = if literal.is_empty() { "grid and column 0 match".to_string() } else { format!("{} cells differ: {}", literal.len(), literal.join("; ")) };
    Outcome::new(literal.is_empty(), detail).note(note)
}

fn endgame(left: &GradedModule, right: &GradedModule) -> Result<String, String> {
    let sc = shipped_scenario();
    let t = tor(left, right, TorMethod::Resolution, TorParams::new(sc.p_max as usize, sc.q_lo, sc.q_hi)).map_err(|e| e.to_string())?;
    let pages = apply_scenario(&Page::from_table(&t, sc.convention), &sc).map_err(|e| e.to_string())?;
    let d3 = &pages[1].differentials;
    let into_01: Vec<_> = d3.iter().filter(|a| a.target == (0, 1) && (a.source == (2, 0) || a.source == (3, -1))).collect();
    if into_01.len() != 1 {
        return Err(format!("{} of (2,0)/(3,-1) hit (0,1)", into_01.len()));
    }
    let report = e_infty_vs_target(pages.last().expect("nonempty"), &sc.target, &[3, 2, 1]);
    let got: Vec<usize> = report.rows.iter().map(|r| r.1).collect();
    if report.passed() {
        Ok(format!("E^inf ranks {got:?} in total degrees 3, 2, 1"))
    } else {
        Err(format!("E^inf ranks {got:?} in total degrees 3, 2, 1"))
    }
}

pub fn two_y_endgame() -> Outcome {
    let n1 = module("N", 6, 1);
    let literal = endgame(&n1, &n1);
    let note = match endgame(&module("M", 8, 1), &module("M", 8, 2)) {
        Ok(s) => format!("diagnostic: on Tor(M<1>, M<2>) the shipped pattern gives {s}"),
        Err(e) => format!("diagnostic: on Tor(M<1>, M<2>): {e}"),
    };
    match literal {
        Ok(s) => Outcome::new(true, s).note(note),
        Err(e) => Outcome::new(false, format!("pattern on Tor(N<1>, N<1>): {e}")).note(note),
    }
}

fn tor_totals(t: &BigradedTable, params: BoxParams) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (&(i, j), &d) in &t.entries {
        let total = i as i64 + j;
        if j >= params.j_min && total <= params.exact_through() && d > 0 {
            *out.entry(total).or_default() += d;
        }
    }
    out
}

pub fn em_oracle() -> Outcome {
    let p = 5;
    let a = Arc::new(ring(prec(p)));
    let names: [(&str, &str, i64); 5] = [("F", "F", 0), ("R", "R", 0), ("M", "M", 0), ("N", "N", 0), ("N<1>", "N", 1)];
    let params = BoxParams::new(7, -10);
    let mut problems = Vec::new();
    let mut cells = 0;
    let mut pairs = 0;
    for x in 0..names.len() {
        for y in x + 1..names.len() {
            let ((lx, nx, sx), (ly, ny, sy)) = (names[x], names[y]);
            let (gm, gn) = (module(nx, p, sx), module(ny, p, sy));
            let mut run = || -> Result<(), String> {
                let m = strict_module(&a, &gm, Side::Right, lx).map_err(|e| e.to_string())?;
                let n = strict_module(&a, &gn, Side::Left, ly).map_err(|e| e.to_string())?;
                let b = box_tensor(&m, &n, params).map_err(|e| e.to_string())?;
                let t = tor(&gm, &gn, TorMethod::Resolution, TorParams::new(params.n_max, params.j_min, params.exact_through())).map_err(|e| e.to_string())?;
                if t.cert_lo > params.j_min {
                    return Err(format!("Tor certified only from {}", t.cert_lo));
                }
                if b.exact_homology() != tor_totals(&t, params) {
                    return Err(format!("totals {:?} vs {:?}", b.exact_homology(), tor_totals(&t, params)));
                }
                let em = em_ss(&m, &n, params, 2).map_err(|e| e.to_string())?;
                let cmp = em.compare_to_tor(&t);
                cells += cmp.cells_compared;
                if !cmp.passed() {
                    return Err(format!("E2 mismatches {:?}", cmp.mismatches));
                }
                Ok(())
            };
            pairs += 1;
            if let Err(e) = run() {
                problems.push(format!("{lx} box {ly}: {e}"));
            }
        }
    }
    let detail = if problems.is_empty() { format!("{pairs} pairs, totals and {cells} E2 cells agree (p = 5, n_max 7, j >= -10)") } else { problems.join("; ") };
    Outcome::new(problems.is_empty(), detail)
}

pub fn inequalities() -> Outcome {
    let y = CorrectionTerms::new(2, 0, 0);
    let two = CorrectionTerms::new(2, 2, 0);
    let r2 = check_sum_inequalities(y, y, two);
    let r3 = check_sum_inequalities(two, y, CorrectionTerms::new(4, 2, 2));
    let failing: Vec<&str> = r2.lines.iter().chain(&r3.lines).filter(|l| !l.holds).map(|l| l.statement).collect();
    Outcome::new(failing.is_empty(), if failing.is_empty() { "12 of 12 lines hold for 2Y and 3Y".to_string() } else { failing.join("; ") })
}

pub fn polytopes() -> Outcome {
    let mut problems = Vec::new();
    for (n, want) in [(3, vec![2, 1]), (4, vec![5, 5, 1]), (5, vec![14, 21, 9, 1])] {
        let got = f_vector(n).unwrap_or_default();
        if got != want {
            problems.push(format!("f(K{n}) = {got:?}"));
        }
    }
    for (n, want) in [(2, 2), (3, 6)] {
        let got = multiplihedron_facets(n).map(|f| f.len()).unwrap_or(0);
        if got != want {
            problems.push(format!("J{n} has {got} facets"));
        }
    }
    for n in 2..=7 {
        let cubes = cube_decomposition(n).unwrap_or_default();
        if cubes.len() as u64 != catalan(n - 1) || cubes.iter().any(|c| c.intervals.len() != n - 2) {
            problems.push(format!("K{n}: {} cube families", cubes.len()));
        }
    }
    Outcome::new(
        problems.is_empty(),
        if problems.is_empty() { "f-vectors, J facets, and Catalan cube families for n <= 7".to_string() } else { problems.join("; ") },
    )
}

pub fn ainf_machinery() -> Outcome {
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let r = ring(prec(4));
    if !check_algebra_relations(&r, 4, None).passed() {
        problems.push("strict R_4 fails its relations".to_string());
    }
    let a = Arc::new(r.clone());
    let n = strict_module(&a, &module("N", 4, 0), Side::Right, "N").expect("strict module");
    if !check_module_relations(&n, 4, None).passed() {
        problems.push("strict N fails its relations".to_string());
    }
    let mut caught = 0;
    for k in 0..20 {
        let located = if k % 2 == 0 {
            let (m, _) = mutate_algebra(&r, &mut rng).expect("mutable entry");
            check_algebra_relations(&m, 3, None).first_failure.is_some_and(|f| !algebra_relation_at(&m, &f.inputs).is_zero())
        } else {
            let (m, _): (AInfModule, _) = mutate_module(&n, &mut rng).expect("mutable entry");
            check_module_relations(&m, 3, None).first_failure.is_some_and(|f| f.module_slot.is_some_and(|s| !module_relation_at(&m, &f.inputs, s).is_zero()))
        };
        caught += usize::from(located);
    }
    if caught != 20 {
        problems.push(format!("{caught} of 20 mutations caught"));
    }

    let dga = massey_dga();
    let c = |l: &str| Chain::basis(dga.basis().find(l).expect("label"));
    let xs = [c("a"), c("b"), c("c")];
    let base = massey3(&dga, [&xs[0], &xs[1], &xs[2]], Pivoting::Natural).map(|m| m.canonical);
    let stable = (0..10).all(|s| massey3(&dga, [&xs[0], &xs[1], &xs[2]], Pivoting::Shuffled(s)).map(|m| m.canonical) == base);
    if !stable || base.is_err() {
        problems.push("massey3 depends on pivot order".to_string());
    }

    let cand = candidate_ring(prec(3));
    let rel = check_algebra_relations(&cand, 7, None);
    if !rel.passed() {
        problems.push(format!("candidate fails at arity {:?}", rel.first_failure.map(|f| f.arity)));
    }
    let id = |m: Monomial| Chain::basis(m.index());
    let (q, q2, v) = (Monomial::new(0, 1).expect("Q"), Monomial::new(0, 2).expect("Q^2"), Monomial::new(1, 0).expect("V"));
    match massey4(&cand, [&id(q2), &id(q), &id(q2), &id(q)]) {
        Ok(m4) if m4.contains(&cand, &id(v)) => {}
        Ok(m4) => problems.push(format!("massey4 classes {:?} miss V", m4.classes)),
        Err(e) => problems.push(e.to_string()),
    }
    let detail = if problems.is_empty() {
        "20/20 mutations located, massey3 stable over 10 pivot orders, candidate passes through arity 7, V in <Q2,Q,Q2,Q>".to_string()
    } else {
        problems.join("; ")
    };
    Outcome::new(problems.is_empty(), detail)
}

pub fn massey_bridge() -> Outcome {
    let a = Arc::new(truncated_polynomial());
    let (m, f) = match (toy_module(&a), field_module(&a, Side::Left)) {
        (Ok(m), Ok(f)) => (m, f),
        _ => return Outcome::new(false, "toy structures failed to build"),
    };
    let em = match em_ss(&m, &f, BoxParams::new(4, -8), 3) {
        Ok(em) => em,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let (mut agree, mut skipped, mut wrong) = (0, 0, Vec::new());
    for (k, w) in em.box_complex.words.iter().enumerate() {
        if w.slots.len() > 3 {
            continue;
        }
        match massey_differential_check(&em, &m, &f, w).outcome {
            MasseyOutcome::Agrees => agree += 1,
            MasseyOutcome::NotApplicable(_) => skipped += 1,
            MasseyOutcome::Disagrees => wrong.push(em.box_complex.label(k).to_string()),
        }
    }
    let passed = wrong.is_empty() && agree > 0;
    let detail =
        if wrong.is_empty() { format!("{agree} words of length <= 3 agree, {skipped} not applicable") } else { format!("disagree on {}", wrong.join(", ")) };
    Outcome::new(passed, detail)
}
