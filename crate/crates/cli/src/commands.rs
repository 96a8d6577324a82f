use std::collections::BTreeSet;
use std::fmt::Write;

use fernkit_core::borel::{envelope_witness, verify_envelope_with, EnvelopeReport};
use fernkit_core::exactlin::{format_rational, RMatrix};
use fernkit_core::localmodel::{self, stratum, tangent_fiber_dim, tangent_sweep, LocalModelPoint, TangentReport};
use fernkit_core::par::{self, Parallelism};
use fernkit_core::phimod::{self, FilteredPhiModule, Refinement};
use fernkit_core::sampling::{random_invertible, random_permutation, random_upper_triangular, trial_rng};
use fernkit_core::weyl::{self, Permutation};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::args::{EnvelopeArgs, PhimodArgs, PhimodOp, SelftestArgs, TangentArgs, WeylArgs, WeylOp};
use crate::report::{CliError, CliResult, Outcome};

const ENTRY_BOUND: i64 = 5;

fn parse_input<T: for<'de> Deserialize<'de>>(input: &[u8]) -> CliResult<T> {
    Ok(serde_json::from_slice(input)?)
}

fn check_schema_version(v: Option<u32>) -> CliResult<()> {
    match v {
        None | Some(1) => Ok(()),
        Some(other) => Err(CliError::new("validation", format!("unsupported schema_version {other}"))),
    }
}

/// One-line JSON (`[2,1,3]`) or cycle notation (`(1 2)`); `n` is inferred
/// from the largest entry of a cycle string when not given.
pub fn parse_perm(text: &str, n: Option<usize>) -> CliResult<Permutation> {
    let text = text.trim();
    let perm = if text.starts_with('[') {
        let one_line: Vec<usize> = serde_json::from_str(text)?;
        Permutation::from_one_line(&one_line)?
    } else {
        let size = match n {
            Some(n) => n,
            None => text
                .split(|c: char| !c.is_ascii_digit())
                .filter_map(|t| t.parse::<usize>().ok())
                .max()
                .ok_or_else(|| CliError::new("validation", "cycle notation without entries needs --n"))?,
        };
        Permutation::parse_cycles(size, text)?
    };
    if let Some(n) = n {
        if perm.n() != n {
            return Err(CliError::new("dimension", format!("permutation has size {}, expected {n}", perm.n())));
        }
    }
    Ok(perm)
}

fn perm_text(w: &Permutation) -> String {
    format!("{:?} {}", w.one_line(), w.cycle_notation())
}

fn matrix_text(m: &RMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| m.row(r).iter().map(format_rational).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

#[derive(Serialize)]
struct EnvelopeRow {
    index: usize,
    g: RMatrix,
    #[serde(flatten)]
    report: EnvelopeReport,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvelopeInput {
    schema_version: Option<u32>,
    matrices: Vec<RMatrix>,
    witness: Option<Permutation>,
}

pub fn envelope(args: &EnvelopeArgs, input: Option<&[u8]>, mode: Parallelism) -> CliResult<Outcome> {
    let rows: Vec<EnvelopeRow> = match input {
        Some(bytes) => {
            let parsed: EnvelopeInput = parse_input(bytes)?;
            check_schema_version(parsed.schema_version)?;
            par::map(mode, &parsed.matrices, |g| {
                let w = match &parsed.witness {
                    Some(w) => w.clone(),
                    None => envelope_witness(g)?,
                };
                verify_envelope_with(g, &w, Parallelism::Sequential)
            })
            .into_iter()
            .enumerate()
            .map(|(index, r)| r.map(|report| EnvelopeRow { index, g: parsed.matrices[index].clone(), report }))
            .collect::<Result<_, _>>()?
        }
        None => {
            if args.n == 0 {
                return Err(CliError::new("domain", "--n must be at least 1"));
            }
            par::map_range(mode, args.trials, |t| {
                let g = random_invertible(&mut trial_rng(args.seed, t as u64), args.n, ENTRY_BOUND);
                let w = envelope_witness(&g)?;
                Ok::<_, fernkit_core::FernError>(EnvelopeRow {
                    index: t,
                    report: verify_envelope_with(&g, &w, Parallelism::Sequential)?,
                    g,
                })
            })
            .into_iter()
            .collect::<Result<_, _>>()?
        }
    };
    let mut text = String::new();
    for row in &rows {
        let r = &row.report;
        let _ = writeln!(
            text,
            "#{:<3} g = {}\n     witness {}  span {}/{}  {}",
            row.index,
            matrix_text(&row.g),
            perm_text(&r.witness),
            r.total_span_dim,
            r.borel_dim,
            if r.verified { "verified" } else { "NOT verified" }
        );
    }
    let all = rows.iter().all(|r| r.report.verified);
    Ok(Outcome::new(json!({ "rows": rows }), text)?.verdict("envelope_verified", all))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TangentInput {
    schema_version: Option<u32>,
    g1: RMatrix,
    #[serde(rename = "A")]
    a: RMatrix,
    g2: RMatrix,
}

fn tangent_line(r: &TangentReport) -> String {
    format!(
        "w = {:<24} w0·w⁻¹ = {:<24} dim {:>3} (formula {:>3}, ambient {:>3}){}\n",
        perm_text(&r.stratum),
        perm_text(&r.defect),
        r.fiber_tangent_dim,
        r.formula_dim,
        r.ambient_dim,
        if r.equality_with_xw0 { "  = n²" } else { "" }
    )
}

pub fn tangent(args: &TangentArgs, input: Option<&[u8]>, mode: Parallelism) -> CliResult<Outcome> {
    match (args.sweep, input) {
        (Some(n), _) => {
            let rows = tangent_sweep(n, mode)?;
            let text: String = rows.iter().map(tangent_line).collect();
            let formula = rows.iter().all(|r| r.fiber_tangent_dim == r.formula_dim);
            let equality = rows.iter().all(|r| r.equality_with_xw0 == r.distinct_simple);
            Ok(Outcome::new(json!({ "n": n, "rows": rows }), text)?
                .verdict("formula_matches", formula)
                .verdict("equality_iff_distinct_simple", equality))
        }
        (None, Some(bytes)) => {
            let parsed: TangentInput = parse_input(bytes)?;
            check_schema_version(parsed.schema_version)?;
            let x = LocalModelPoint::new(parsed.g1, parsed.a, parsed.g2)?;
            let in_fiber = localmodel::in_kappa_fiber_tw0(&x)?;
            let r = tangent_fiber_dim(&x)?;
            let text = tangent_line(&r);
            let formula = r.fiber_tangent_dim == r.formula_dim;
            Ok(Outcome::new(json!({ "point": x, "in_kappa_fiber_tw0": in_fiber, "report": r }), text)?
                .verdict("formula_matches", formula))
        }
        (None, None) => Err(CliError::new("validation", "tangent needs --sweep or --input")),
    }
}

fn require<'a>(value: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    value.as_deref().ok_or_else(|| CliError::new("validation", format!("this operation needs {flag}")))
}

pub fn weyl_cmd(args: &WeylArgs) -> CliResult<Outcome> {
    match args.op {
        WeylOp::Length => {
            let w = parse_perm(require(&args.perm, "--perm")?, args.n)?;
            let text = format!("{}  length {}\n", perm_text(&w), weyl::length(&w));
            Outcome::new(
                json!({
                    "perm": w,
                    "cycle_notation": w.cycle_notation(),
                    "length": weyl::length(&w),
                    "reduced_word": weyl::reduced_word(&w),
                }),
                text,
            )
        }
        WeylOp::Cycles => {
            let n = args.n.ok_or_else(|| CliError::new("validation", "cycles needs --n"))?;
            let cycles = weyl::full_cycles_labelled(n)?;
            let mut text = String::new();
            let rows: Vec<_> = cycles
                .iter()
                .map(|(i, j, c)| {
                    let _ = writeln!(text, "c({i},{j}) = {}", perm_text(c));
                    json!({ "i": i, "j": j, "perm": c, "cycle_notation": c.cycle_notation(), "length": weyl::length(c) })
                })
                .collect();
            let count = rows.len();
            Ok(Outcome::new(json!({ "n": n, "count": count, "cycles": rows }), text)?
                .verdict("count_matches", count == 1 + n * (n - 1) / 2))
        }
        WeylOp::Bruhat => {
            let (u_text, w_text) = (require(&args.perm, "--perm")?, require(&args.other, "--other")?);
            let n = match args.n {
                Some(n) => n,
                None => parse_perm(u_text, None)?.n().max(parse_perm(w_text, None)?.n()),
            };
            let u = parse_perm(u_text, Some(n))?;
            let w = parse_perm(w_text, Some(n))?;
            let leq = weyl::bruhat_leq(&u, &w)?;
            let text = format!("{} {} {}\n", perm_text(&u), if leq { "<=" } else { "is not <=" }, perm_text(&w));
            Outcome::new(json!({ "perm": u, "other": w, "leq": leq }), text)
        }
        WeylOp::Distinct => {
            let w = parse_perm(require(&args.perm, "--perm")?, args.n)?;
            let distinct = weyl::is_distinct_simple_product(&w);
            let text = format!(
                "{}  {} a product of distinct simple reflections (support {:?}, length {}, {} cycles)\n",
                perm_text(&w),
                if distinct { "is" } else { "is not" },
                weyl::support(&w),
                weyl::length(&w),
                weyl::cycle_count(&w)
            );
            let out = Outcome::new(
                json!({
                    "perm": w,
                    "cycle_notation": w.cycle_notation(),
                    "is_distinct_simple_product": distinct,
                    "support": weyl::support(&w),
                    "length": weyl::length(&w),
                    "cycle_count": weyl::cycle_count(&w),
                }),
                text,
            )?;
            Ok(if distinct { out.verdict("carter_identity", weyl::cycle_count(&w) + weyl::length(&w) == w.n()) } else { out })
        }
    }
}

fn load_module(args: &PhimodArgs, input: Option<&[u8]>) -> CliResult<(FilteredPhiModule, serde_json::Value)> {
    if let Some(bytes) = input {
        let text = std::str::from_utf8(bytes).map_err(|e| CliError::new("parse", e.to_string()))?;
        return Ok((FilteredPhiModule::from_json(text)?, json!({ "source": "input" })));
    }
    if let Some(n) = args.random_wa {
        let generated = phimod::generate_random_wa(n, args.seed)?;
        let source = json!({ "source": "random_wa", "n": n, "seed": args.seed, "attempts": generated.attempts });
        return Ok((generated.module, source));
    }
    Err(CliError::new("validation", "phimod needs --input or --random-wa"))
}

fn rational_list(qs: &[fernkit_core::exactlin::Rational]) -> String {
    qs.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn module_text(d: &FilteredPhiModule) -> String {
    let mut text = format!(
        "rank {}  p = {}  e = {}  f = {}  genericity {:?}\nvaluations ({})\n",
        d.n(),
        d.p(),
        d.e(),
        d.f(),
        d.genericity(),
        rational_list(d.valuations())
    );
    for (k, emb) in d.embeddings().iter().enumerate() {
        let _ = writeln!(text, "embedding {k}: jumps {:?}", emb.jumps);
    }
    text
}

fn check(d: &FilteredPhiModule, force: bool, mode: Parallelism) -> CliResult<Outcome> {
    let verdict = phimod::weak_admissibility_with(d, mode)?;
    let irreducible = if verdict.is_weakly_admissible || force { Some(phimod::is_irreducible(d, true)?) } else { None };
    let sum_criterion = phimod::sum_criterion_irreducible(d);
    let mut text = module_text(d);
    let _ = writeln!(
        text,
        "tN = {}  tH = {}  weakly admissible: {}",
        format_rational(&verdict.t_n_total),
        format_rational(&verdict.t_h_total),
        verdict.is_weakly_admissible
    );
    for s in &verdict.subsets {
        let mark = if s.t_n < s.t_h {
            "  violation"
        } else if s.t_n == s.t_h {
            "  crystalline"
        } else {
            ""
        };
        let _ = writeln!(text, "  I = {:?}: tN {} tH {}{mark}", s.subset, format_rational(&s.t_n), format_rational(&s.t_h));
    }
    let _ = writeln!(
        text,
        "irreducible: {}  sum criterion: {sum_criterion}",
        irreducible.map_or("not evaluated (use --force)".to_string(), |b| b.to_string())
    );
    Ok(Outcome::new(
        json!({
            "genericity": d.genericity(),
            "admissibility": verdict,
            "irreducible": irreducible,
            "sum_criterion_irreducible": sum_criterion,
        }),
        text,
    )?
    .verdict("weakly_admissible", verdict.is_weakly_admissible))
}

fn refinement_rows_text(rows: &[phimod::RefinementRow]) -> String {
    let mut text = String::new();
    for r in rows {
        let positions: Vec<String> = r.relative_positions.iter().map(perm_text).collect();
        let _ = writeln!(
            text,
            "{:<28} relpos {:<30} {}{}{}",
            perm_text(&r.sigma),
            positions.join(", "),
            if r.noncritical { "non-critical" } else { "critical" },
            if r.distinct_transposition_associated { ", distinct-transposition" } else { "" },
            if r.numerically_noncritical { ", numerically non-critical" } else { "" }
        );
    }
    text
}

fn refinements_cmd(d: &FilteredPhiModule, mode: Parallelism) -> CliResult<Outcome> {
    let rows = phimod::refinement_table(d, mode)?;
    let mut agree = true;
    for r in &rows {
        agree &= phimod::noncritical_by_jumps(d, &Refinement::new(r.sigma.clone()))? == r.noncritical;
    }
    let implies = rows.iter().all(|r| !r.noncritical || r.distinct_transposition_associated);
    let text = refinement_rows_text(&rows);
    Ok(Outcome::new(json!({ "count": rows.len(), "rows": rows }), text)?
        .verdict("jump_profile_agrees", agree)
        .verdict("noncritical_implies_distinct_transposition", implies))
}

fn orbit_cmd(d: &FilteredPhiModule, base: &str) -> CliResult<Outcome> {
    let sigma = parse_perm(base, Some(d.n()))?;
    let report = phimod::cn_orbit_report(d, &Refinement::new(sigma))?;
    let mut text = format!("base {}\n", perm_text(&report.base));
    for row in &report.rows {
        let _ = write!(text, "c({},{}) -> ", row.i, row.j);
        text.push_str(&refinement_rows_text(std::slice::from_ref(&row.refinement)));
    }
    let all = report.all_distinct_transposition_associated;
    Ok(Outcome::new(report, text)?.verdict("all_distinct_transposition_associated", all))
}

pub fn phimod_cmd(args: &PhimodArgs, input: Option<&[u8]>, mode: Parallelism) -> CliResult<Outcome> {
    if args.op == PhimodOp::Example4 {
        return example4(mode);
    }
    let (d, source) = load_module(args, input)?;
    let mut out = match args.op {
        PhimodOp::Check => check(&d, args.force, mode)?,
        PhimodOp::Refinements => refinements_cmd(&d, mode)?,
        PhimodOp::Orbit => orbit_cmd(&d, args.refinement.as_deref().unwrap_or("()"))?,
        PhimodOp::Example4 => unreachable!(),
    };
    if let serde_json::Value::Object(map) = &mut out.results {
        map.insert("module".into(), serde_json::to_value(d.to_spec())?);
        map.insert("module_source".into(), source);
    }
    Ok(out)
}

pub fn example4(mode: Parallelism) -> CliResult<Outcome> {
    let d = phimod::example4();
    let table = phimod::refinement_table(&d, mode)?;
    let verdict = phimod::weak_admissibility_with(&d, mode)?;
    let found: BTreeSet<Permutation> = table.iter().filter(|r| r.noncritical).map(|r| r.sigma.clone()).collect();
    let expected: BTreeSet<Permutation> = phimod::example4_noncritical().into_iter().collect();
    let violation = verdict.violations.iter().any(|v| {
        v.subset == [1, 4] && format_rational(&v.t_n) == "28" && format_rational(&v.t_h) == "30"
    });
    let mut text = module_text(&d);
    let _ = writeln!(
        text,
        "tN = {}  tH = {}  weakly admissible: {}",
        format_rational(&verdict.t_n_total),
        format_rational(&verdict.t_h_total),
        verdict.is_weakly_admissible
    );
    for v in &verdict.violations {
        let _ = writeln!(text, "  violation I = {:?}: tN {} < tH {}", v.subset, format_rational(&v.t_n), format_rational(&v.t_h));
    }
    let _ = writeln!(text, "crystalline subobjects: {:?}\n", verdict.crystalline_subobjects);
    text.push_str(&refinement_rows_text(&table));
    let nc: Vec<String> = found.iter().map(|w| w.cycle_notation()).collect();
    let _ = writeln!(text, "\nnon-critical: {}", nc.join(", "));
    Ok(Outcome::new(
        json!({
            "module": d.to_spec(),
            "admissibility": verdict,
            "refinements": table,
            "noncritical": found,
            "expected_noncritical": expected,
        }),
        text,
    )?
    .verdict("noncritical_set_matches", found == expected)
    .verdict("crystalline_subobjects_empty", verdict.crystalline_subobjects.is_empty())
    .verdict("wa_violation_reported", violation))
}

pub fn selftest(args: &SelftestArgs, mode: Parallelism) -> CliResult<Outcome> {
    let n = args.n;
    if n == 0 {
        return Err(CliError::new("domain", "--n must be at least 1"));
    }
    let w0 = weyl::longest(n)?;
    let envelope = par::map_range(mode, args.trials, |t| {
        let g = random_invertible(&mut trial_rng(args.seed, t as u64), n, ENTRY_BOUND);
        let w = envelope_witness(&g)?;
        Ok::<_, fernkit_core::FernError>(verify_envelope_with(&g, &w, Parallelism::Sequential)?.verified)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let big_cell = par::map_range(mode, args.trials, |t| {
        let b = random_upper_triangular(&mut trial_rng(args.seed ^ 0x5eed, t as u64), n, ENTRY_BOUND);
        let g = w0.matrix().mul(&b)?;
        let w = envelope_witness(&g)?;
        Ok::<_, fernkit_core::FernError>(w.is_identity() && verify_envelope_with(&g, &w, Parallelism::Sequential)?.verified)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let closure = par::map_range(mode, args.trials, |t| {
        let mut rng = trial_rng(args.seed ^ 0xc105e, t as u64);
        let b = random_upper_triangular(&mut rng, n, ENTRY_BOUND);
        let (w1, w2) = (random_permutation(&mut rng, n), random_permutation(&mut rng, n));
        let x = LocalModelPoint::with_zero(w1.matrix(), b.mul(&w2.matrix())?)?;
        weyl::bruhat_leq(&(&w1.inverse() * &w2), &stratum(&x)?)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let sweep = tangent_sweep(n, mode)?;
    let all_perms = Permutation::all(n);
    let carter = all_perms
        .iter()
        .filter(|w| weyl::is_distinct_simple_product(w))
        .all(|w| weyl::cycle_count(w) + weyl::length(w) == n);
    let cycles = weyl::full_cycles(n)?.len();

    let passed = |v: &[bool]| v.iter().filter(|&&b| b).count();
    let text = format!(
        "n = {n}, {} trials, seed {}\n\
         envelope: {}/{} verified\n\
         big cell witness: {}/{} trivial and verified\n\
         Bruhat closure: {}/{}\n\
         tangent sweep: {} strata\n\
         full cycles: {cycles}\n",
        args.trials,
        args.seed,
        passed(&envelope),
        envelope.len(),
        passed(&big_cell),
        big_cell.len(),
        passed(&closure),
        closure.len(),
        sweep.len()
    );
    Ok(Outcome::new(
        json!({
            "n": n,
            "trials": args.trials,
            "seed": args.seed,
            "envelope_passed": passed(&envelope),
            "big_cell_passed": passed(&big_cell),
            "closure_passed": passed(&closure),
            "tangent": sweep,
            "full_cycle_count": cycles,
        }),
        text,
    )?
    .verdict("envelope_verified", envelope.iter().all(|&b| b))
    .verdict("envelope_trivial_witness", big_cell.iter().all(|&b| b))
    .verdict("bruhat_closure", closure.iter().all(|&b| b))
    .verdict("tangent_formula_matches", sweep.iter().all(|r| r.fiber_tangent_dim == r.formula_dim))
    .verdict("tangent_equality_iff_distinct_simple", sweep.iter().all(|r| r.equality_with_xw0 == r.distinct_simple))
    .verdict("carter_identity", carter)
    .verdict("full_cycle_count", cycles == 1 + n * (n - 1) / 2))
}
