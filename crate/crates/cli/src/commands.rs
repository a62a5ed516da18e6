//! Subcommand implementations.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use parastacks_core::analysis::{self, SeriesId};
use parastacks_core::equations::{self, EquationSolution};
use parastacks_core::exactnum::{parse_rational, JsonCoeff};
use parastacks_core::report::CheckStatus;
use parastacks_core::walks::{self, brute, Region};
use parastacks_core::{
    arches, machine, BiTruncatedSeries, IntPolynomial, LatticeWalk, OpWord, Permutation,
    Polynomial, Ring, SeriesReport, Step, TruncatedSeries, Var,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::render::{biseries_table, float17, series_table, Coeff, Output, Table};
use crate::{
    CheckArgs, CheckName, Cli, Command, EstimateArgs, EstimateName, Failure, OracleArgs,
    OracleName, SRoute, SeriesArgs, SeriesName,
};

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let timing = !cli.global.no_timing;
    match &cli.command {
        Command::Execute { word } => execute(&parse_word(word)?),
        Command::Sortable { perm } => sortable(&parse_perm(perm)?),
        Command::Canonical { perm } => canonical(&parse_perm(perm)?),
        Command::Canonicalize { word } => canonicalize(&parse_word(word)?),
        Command::Involution { word } => involution(word),
        Command::Series(a) => series(a, timing),
        Command::Oracle(a) => oracle(a),
        Command::Check(a) => check(a),
        Command::Estimate(a) => estimate(a, timing),
    }
}

fn parse_word(parts: &[String]) -> Result<OpWord, Failure> {
    Ok(parts.join(" ").parse::<OpWord>()?)
}

fn parse_perm(parts: &[String]) -> Result<Permutation, Failure> {
    Ok(parts.join(" ").parse::<Permutation>()?)
}

/// A rational written `p` or `p/q`; decimals are refused.
fn parse_at(s: &str) -> Result<BigRational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::Usage(format!("expected a rational p/q, got {s:?}")))
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn steps_text(w: &[Step]) -> String {
    w.iter().map(|s| s.letter()).collect()
}

// ---------------------------------------------------------------------------
// words and permutations

fn execute(w: &OpWord) -> Result<Output, Failure> {
    let p = machine::execute(w)?;
    Ok(Output {
        json: json!({ "word": w.to_string(), "permutation": p.entries() }),
        table: Table::pairs(&[("word", w.to_string()), ("permutation", p.to_string())]),
        text: p.to_string(),
        ok: true,
    })
}

fn sortable(p: &Permutation) -> Result<Output, Failure> {
    let word = machine::is_achievable(p)
        .then(|| machine::canonical_sequence(p))
        .transpose()?;
    let text = match &word {
        Some(w) => format!("yes\n{w}"),
        None => "no".into(),
    };
    let ws = word.as_ref().map(|w| w.to_string());
    Ok(Output {
        json: json!({ "permutation": p.entries(), "achievable": word.is_some(), "canonical": ws }),
        table: Table::pairs(&[
            ("permutation", p.to_string()),
            ("achievable", word.is_some().to_string()),
            ("canonical", ws.clone().unwrap_or_default()),
        ]),
        text,
        ok: true,
    })
}

fn canonical(p: &Permutation) -> Result<Output, Failure> {
    let w = machine::canonical_sequence(p)?;
    Ok(Output {
        json: json!({ "permutation": p.entries(), "canonical": w.to_string() }),
        table: Table::pairs(&[("permutation", p.to_string()), ("canonical", w.to_string())]),
        text: w.to_string(),
        ok: true,
    })
}

fn canonicalize(w: &OpWord) -> Result<Output, Failure> {
    let c = arches::canonicalize(w)?;
    let p = machine::execute(&c)?;
    Ok(Output {
        json: json!({ "word": w.to_string(), "canonical": c.to_string(), "permutation": p.entries() }),
        table: Table::pairs(&[
            ("word", w.to_string()),
            ("canonical", c.to_string()),
            ("permutation", p.to_string()),
        ]),
        text: c.to_string(),
        ok: true,
    })
}

fn involution(parts: &[String]) -> Result<Output, Failure> {
    let w: LatticeWalk = parts.join("").parse()?;
    let image = arches::corner_involution(&w);
    let counts = |x: &LatticeWalk| {
        (x.count_factor(Step::N, Step::W), x.count_factor(Step::W, Step::N))
    };
    let (nw, wn) = counts(&w);
    let (nw2, wn2) = counts(&image);
    Ok(Output {
        json: json!({
            "walk": w.to_string(), "image": image.to_string(),
            "nw": nw, "wn": wn, "image_nw": nw2, "image_wn": wn2,
        }),
        table: Table::pairs(&[
            ("walk", w.to_string()),
            ("image", image.to_string()),
            ("nw", nw.to_string()),
            ("wn", wn.to_string()),
            ("image_nw", nw2.to_string()),
            ("image_wn", wn2.to_string()),
        ]),
        text: image.to_string(),
        ok: true,
    })
}

// ---------------------------------------------------------------------------
// series

fn eval_a(p: &IntPolynomial, a: &BigRational) -> BigRational {
    p.to_rational().eval(a)
}

fn eval_inner(p: &Polynomial<IntPolynomial>, a: &BigRational) -> Polynomial<BigRational> {
    p.map(|c| eval_a(c, a))
}

fn check_or_refuse(ok: bool, what: &str) -> Result<CheckStatus, Failure> {
    if ok {
        Ok(CheckStatus::Passed)
    } else {
        Err(Failure::Contract(format!("verification failed: {what}; nothing emitted")))
    }
}

fn finish<R: Ring + JsonCoeff + Coeff>(
    name: &str,
    s: &TruncatedSeries<R>,
    vars: &[&str],
    route: &str,
    status: CheckStatus,
    ms: Option<f64>,
) -> Output {
    let report = SeriesReport::from_series(name, s, route).with_check(status).with_timing(ms);
    let (table, text) = series_table(s, vars);
    Output {
        json: to_json(&report),
        table,
        text,
        ok: true,
    }
}

fn finish_bi<R: Ring + JsonCoeff + Coeff>(
    name: &str,
    s: &BiTruncatedSeries<R>,
    vars: &[&str],
    route: &str,
    status: CheckStatus,
    ms: Option<f64>,
) -> Output {
    let report = SeriesReport::from_biseries(name, (Var::S, Var::T), s, route)
        .with_check(status)
        .with_timing(ms);
    let (table, text) = biseries_table(s, vars);
    Output {
        json: to_json(&report),
        table,
        text,
        ok: true,
    }
}

fn solve_s(q: &TruncatedSeries<IntPolynomial>, n: usize, route: SRoute) -> Result<EquationSolution<BigInt>, Failure> {
    Ok(match route {
        SRoute::Sprim => equations::solve_sprim_via_q(q, n)?.1,
        SRoute::C => equations::solve_s_via_c(&equations::solve_c(q, n)?, n)?,
    })
}

fn brute_sizes(n: usize, bound: usize) -> std::ops::RangeInclusive<usize> {
    0..=n.min(bound)
}

fn series(a: &SeriesArgs, timing: bool) -> Result<Output, Failure> {
    let at = a.at.as_deref().map(parse_at).transpose()?;
    let n = a.n;
    let no_a = matches!(a.which, SeriesName::S | SeriesName::Sprim | SeriesName::Stilde);
    if no_a && at.is_some() {
        return Err(Failure::Usage("--at needs a series with a corner variable".into()));
    }
    if a.refine_s && !matches!(a.which, SeriesName::Q | SeriesName::Qprim) {
        return Err(Failure::Usage("--refine-s applies to q and qprim".into()));
    }
    let start = Instant::now();
    let ms = |_: ()| timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let bb = a.brute_bound;
    let name = format!("{:?}", a.which).to_lowercase();
    let out = match a.which {
        SeriesName::S => {
            let q = walks::quarter_loop_series(n);
            let sol = solve_s(&q, n, a.route)?;
            let mut status = CheckStatus::NotRun;
            if a.verify {
                let other = solve_s(&q, n, if a.route == SRoute::C { SRoute::Sprim } else { SRoute::C })?;
                check_or_refuse(other.series == sol.series, "the two routes to S disagree")?;
                for k in brute_sizes(n, bb) {
                    let count = machine::enumerate_achievable(k, bb)?;
                    check_or_refuse(sol.series.coeff(k) == &BigInt::from(count), "S against the permutation scan")?;
                }
                status = CheckStatus::Passed;
            }
            finish(&name, &sol.series, &["t"], sol.route.tag(), status, ms(()))
        }
        SeriesName::Sprim => {
            let q = walks::quarter_loop_series(n);
            let (sp, s) = equations::solve_sprim_via_q(&q, n)?;
            let mut status = CheckStatus::NotRun;
            if a.verify {
                check_or_refuse(equations::sprim_residual(&q, &sp.series)?.is_zero(), "S• residual")?;
                for k in brute_sizes(n, bb) {
                    let count = machine::enumerate_achievable(k, bb)?;
                    check_or_refuse(s.series.coeff(k) == &BigInt::from(count), "1/(1-S•) against the permutation scan")?;
                }
                status = CheckStatus::Passed;
            }
            finish(&name, &sp.series, &["t"], sp.route.tag(), status, ms(()))
        }
        SeriesName::Stilde => {
            let c = equations::solve_c(&walks::quarter_loop_series(n), n)?;
            let st = equations::solve_s_tilde(&c, n)?;
            let mut status = CheckStatus::NotRun;
            if a.verify {
                for k in brute_sizes(n, bb) {
                    let count = arches::count_standard_words(k);
                    check_or_refuse(st.series.coeff(k) == &BigInt::from(count), "S~ against standard words")?;
                }
                status = CheckStatus::Passed;
            }
            finish(&name, &st.series, &["t"], st.route.tag(), status, ms(()))
        }
        SeriesName::C => {
            let c = equations::solve_c(&walks::quarter_loop_series(n), n)?;
            let mut status = CheckStatus::NotRun;
            if a.verify {
                for k in brute_sizes(n, bb.min(6)) {
                    let ok = k == 0 || c.series.coeff(k) == &arches::connected_standard_polynomial(k);
                    check_or_refuse(ok, "C against connected standard arch systems")?;
                }
                status = CheckStatus::Passed;
            }
            let tag = c.route.tag();
            match &at {
                Some(b) => finish(&name, &c.series.map(|p| eval_a(p, b)), &["v"], tag, status, ms(())),
                None => finish(&name, &c.series, &["v", "b"], tag, status, ms(())),
            }
        }
        SeriesName::Q | SeriesName::Qprim => return loop_series(a, at.as_ref(), &name, &start, timing),
        SeriesName::W00 | SeriesName::H00 => {
            let w00 = a.which == SeriesName::W00;
            let f = if w00 { walks::unconfined_series(n, n) } else { walks::halfplane_series(n, n) };
            let mut status = CheckStatus::NotRun;
            if a.verify {
                let m = n.min(bb);
                let d = if w00 { walks::unconfined_series_by_dp(m, m) } else { walks::halfplane_series_by_dp(m, m) };
                let ok = (0..=m).all(|i| (0..=m).all(|j| f.coeff(i, j) == d.coeff(i, j)));
                check_or_refuse(ok, "constant-term sum against the walk DP")?;
                status = CheckStatus::Passed;
            }
            let route = if w00 { "w00j-sum" } else { "h00j-sum" };
            match &at {
                Some(x) => finish_bi(&name, &f.map(|p| eval_a(p, x)), &["s", "t"], route, status, ms(())),
                None => finish_bi(&name, &f, &["s", "t", "a"], route, status, ms(())),
            }
        }
    };
    Ok(out)
}

fn loop_series(
    a: &SeriesArgs,
    at: Option<&BigRational>,
    name: &str,
    start: &Instant,
    timing: bool,
) -> Result<Output, Failure> {
    let n = a.n;
    let m = n.min(a.brute_bound);
    let prim = a.which == SeriesName::Qprim;
    let ms = || timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let mut status = CheckStatus::NotRun;
    let name = if a.refine_s { format!("{name}-refined") } else { name.to_string() };
    if a.refine_s {
        let (s, route) = if prim {
            (walks::primitive_quarter_loop_series_refined(n)?, "one-minus-inverse-q")
        } else {
            (walks::quarter_loop_series_refined(n), "quarter-dp")
        };
        if a.verify {
            let ok = if prim {
                s.truncate(m)? == walks::primitive_quarter_loop_series_refined_by_dp(m)
            } else {
                walks::kernel_residual_check(2 * m)
            };
            check_or_refuse(ok, "refined loop series check")?;
            status = CheckStatus::Passed;
        }
        return Ok(match at {
            Some(x) => finish(&name, &s.map(|p| eval_inner(p, x)), &["u", "s"], route, status, ms()),
            None => finish(&name, &s, &["u", "s", "a"], route, status, ms()),
        });
    }
    let (s, route) = if prim {
        (walks::primitive_quarter_loop_series(n)?, "one-minus-inverse-q")
    } else {
        (walks::quarter_loop_series(n), "quarter-dp")
    };
    if a.verify {
        let ok = if prim {
            s.truncate(m)? == walks::primitive_quarter_loop_series_by_dp(m)
        } else {
            (0..=m).all(|k| s.coeff(k) == &brute::brute_walk_polynomial(Region::Quadrant, 2 * k, (0, 0)))
        };
        check_or_refuse(ok, "loop series against direct enumeration")?;
        status = CheckStatus::Passed;
    }
    Ok(match at {
        Some(x) => finish(&name, &s.map(|p| eval_a(p, x)), &["u"], route, status, ms()),
        None => finish(&name, &s, &["u", "a"], route, status, ms()),
    })
}

// ---------------------------------------------------------------------------
// oracles

fn oracle(a: &OracleArgs) -> Result<Output, Failure> {
    if a.n > a.brute_bound {
        return Err(Failure::Usage(format!("--n {} exceeds --brute-bound {}", a.n, a.brute_bound)));
    }
    let sizes = 0..=a.n;
    let (label, values): (&str, Vec<Value>) = match a.which {
        OracleName::Perms => (
            "achievable permutations",
            sizes
                .map(|k| machine::enumerate_achievable(k, a.brute_bound).map(|c| json!(c.to_string())))
                .collect::<Result<_, _>>()?,
        ),
        OracleName::Standard => (
            "standard words",
            sizes.map(|k| json!(arches::count_standard_words(k).to_string())).collect(),
        ),
        OracleName::Loops => (
            "quarter plane loops",
            sizes
                .map(|k| brute::brute_walk_polynomial(Region::Quadrant, 2 * k, (0, 0)).to_json())
                .collect(),
        ),
        OracleName::Connected => (
            "connected standard arch systems",
            sizes
                .map(|k| {
                    if k == 0 {
                        IntPolynomial::zero().to_json()
                    } else {
                        arches::connected_standard_polynomial(k).to_json()
                    }
                })
                .collect(),
        ),
    };
    let poly = matches!(a.which, OracleName::Loops | OracleName::Connected);
    let mut table = Table::new(if poly { &["n", "power", "count"] } else { &["n", "count"] });
    let mut lines = Vec::new();
    for (k, v) in values.iter().enumerate() {
        match v {
            Value::Array(cs) => {
                for (j, c) in cs.iter().enumerate() {
                    table.push(vec![k.to_string(), j.to_string(), c.as_str().unwrap_or("").into()]);
                }
                let p = IntPolynomial::from_json(v).map_err(Failure::from)?;
                let var = if a.which == OracleName::Loops { "a" } else { "b" };
                lines.push(format!("{k}: {}", p.text(&[var])));
            }
            _ => {
                let c = v.as_str().unwrap_or("").to_string();
                table.push(vec![k.to_string(), c.clone()]);
                lines.push(format!("{k}: {c}"));
            }
        }
    }
    Ok(Output {
        json: json!({ "oracle": label, "n": a.n, "values": values }),
        table,
        text: lines.join("\n"),
        ok: true,
    })
}

// ---------------------------------------------------------------------------
// checks

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check(a: &CheckArgs) -> Result<Output, Failure> {
    match a.which {
        CheckName::Positivity => {
            let id: SeriesId = a.series.parse()?;
            let n = a.n.unwrap_or(20);
            let r = analysis::positivity_check(&id, n)?;
            let mut table = Table::new(&["order", "min_coeff"]);
            for (k, m) in r.min_coeffs.iter().enumerate() {
                table.push(vec![k.to_string(), m.to_string()]);
            }
            let text = match r.first_failure {
                None => format!("{}: (a+1)-positive through order {n}: {}", r.series, verdict(true)),
                Some(k) => format!("{}: negative coefficient at order {k}: {}", r.series, verdict(false)),
            };
            Ok(Output { json: to_json(&r), table, text, ok: r.passes() })
        }
        CheckName::Inversion => {
            let n = a.n.unwrap_or(12);
            let q = walks::quarter_loop_series(n);
            let c = equations::solve_c(&q, n)?;
            let (sp, s) = equations::solve_sprim_via_q(&q, n)?;
            let st = equations::solve_s_tilde(&c, n)?;
            let ids = equations::inversion_checks(&q, &c.series, n)?;
            let res = equations::residual_checks(&q, &c.series, &s.series, &sp.series, &st.series, n)?;
            let ok = ids.iter().all(|i| i.holds) && res.all_vanish();
            let mut table = Table::new(&["identity", "holds"]);
            for i in &ids {
                table.push(vec![i.identity.to_string(), i.holds.to_string()]);
            }
            for (k, v) in [
                ("Q(A,U) = 1 + 2C", res.q_from_c),
                ("S = 1 + C(1 - 1/S, t S^2)", res.s_from_c),
                ("Q(-S•, t/(1+S•)^2) = (1+S•)/(1-S•)", res.sprim_from_q),
                ("S~ = 1 + C(1, t S~^2)", res.s_tilde_from_c),
            ] {
                table.push(vec![k.to_string(), v.to_string()]);
            }
            let text = table
                .rows
                .iter()
                .map(|r| format!("{}: {}", r[0], verdict(r[1] == "true")))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output {
                json: json!({ "order": n, "identities": ids, "residuals": res }),
                table,
                text,
                ok,
            })
        }
        CheckName::AppendixB => {
            let n = a.n.unwrap_or(20);
            let c = equations::solve_c(&walks::quarter_loop_series(n), n)?;
            let r = equations::appendix_b_inequality_check(&c.series, n)?;
            Ok(Output {
                json: to_json(&r),
                table: Table::pairs(&[
                    ("order", n.to_string()),
                    ("min_coeff", r.min_coeff.to_string()),
                    ("passes", r.passes().to_string()),
                ]),
                text: format!(
                    "C - v - b v^2 - 2C(C - v) nonnegative through order {n}: {}",
                    verdict(r.passes())
                ),
                ok: r.passes(),
            })
        }
        CheckName::P1 => {
            let r = analysis::p1_check(a.i_max, a.j_max)?;
            let ok = r.failures.is_empty();
            let mut table = Table::new(&["horizontal", "vertical"]);
            for (h, v) in &r.failures {
                table.push(vec![h.clone(), v.clone()]);
            }
            Ok(Output {
                text: format!(
                    "{} shuffle classes, value binom(i+j,i) at a = -1: {}",
                    r.classes_checked,
                    verdict(ok)
                ),
                json: to_json(&r),
                table,
                ok,
            })
        }
        CheckName::P2 => {
            let n = a.n.unwrap_or(10);
            let words = analysis::p2_default_words(a.j_max);
            let reports = analysis::p2_check(&words, n)?;
            let ok = reports.iter().all(|r| r.passes());
            let mut table = Table::new(&["projection", "min_coeff", "passes"]);
            let mut lines = Vec::new();
            for (v, r) in words.iter().zip(&reports) {
                let min = r.min_coeffs.iter().min().cloned().unwrap_or_default();
                table.push(vec![steps_text(v), min.to_string(), r.passes().to_string()]);
                lines.push(format!("{}: {}", steps_text(v), verdict(r.passes())));
            }
            Ok(Output { json: to_json(&reports), table, text: lines.join("\n"), ok })
        }
        CheckName::Counterexamples => {
            let suite = analysis::counterexample_suite();
            let ok = suite.iter().all(|c| c.matches);
            let mut table = Table::new(&["name", "computed", "expected", "matches"]);
            let mut lines = Vec::new();
            for c in &suite {
                table.push(vec![c.name.into(), c.computed.clone(), c.expected.clone(), c.matches.to_string()]);
                lines.push(format!("{} ({}): {} {}", c.name, c.description, c.computed, verdict(c.matches)));
            }
            Ok(Output { json: to_json(&suite), table, text: lines.join("\n"), ok })
        }
        CheckName::Prop4 => {
            let n = a.n.unwrap_or(100);
            let r = analysis::prop4_asymptotics_check(n)?;
            let ok = r.within(0.10);
            let mut table = Table::new(&["n", "normalized_at_1", "normalized_at_minus1"]);
            for k in 0..n {
                table.push(vec![
                    (k + 1).to_string(),
                    float17(r.normalized_at_1[k]),
                    float17(r.normalized_at_minus1[k]),
                ]);
            }
            let text = format!(
                "q_n(1) 16^-n n^3 = {:.5} (4/pi = {:.5}), q_n(-1) 8^-(n+1) n^3 = {:.5} (1/pi = {:.5}) at n = {n}: {}",
                r.normalized_at_1[n - 1],
                r.limit_at_1,
                r.normalized_at_minus1[n - 1],
                r.limit_at_minus1,
                verdict(ok)
            );
            Ok(Output { json: to_json(&r), table, text, ok })
        }
        CheckName::ConstantTerm => {
            let n = a.n.unwrap_or(10);
            let ok = walks::constant_term_lemma_check(n)?;
            Ok(Output {
                json: json!({ "order": n, "holds": ok }),
                table: Table::pairs(&[("order", n.to_string()), ("holds", ok.to_string())]),
                text: format!("constant-term lemma through u^{n}: {}", verdict(ok)),
                ok,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// estimates

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Result<T, Failure>) -> Result<Vec<T>, Failure> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(f).collect()
}

fn estimate(a: &EstimateArgs, timing: bool) -> Result<Output, Failure> {
    let start = Instant::now();
    let ms = || timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    match a.which {
        EstimateName::Tc => {
            let b = analysis::tc_bracket(a.n, a.tol)?;
            let mut json = to_json(&b);
            if let Some(t) = ms() {
                json["timing_ms"] = json!(t);
            }
            Ok(Output {
                table: Table::new(&["n", "a_low", "a_high", "inv_tc_low", "inv_tc_high"]).with_row(vec![
                    b.n.to_string(),
                    float17(b.a_low),
                    float17(b.a_high),
                    float17(b.inv_tc_low),
                    float17(b.inv_tc_high),
                ]),
                text: format!(
                    "a in [{:.6}, {:.6}]\n1/t_c in [{:.4}, {:.4}]",
                    b.a_low, b.a_high, b.inv_tc_low, b.inv_tc_high
                ),
                json,
                ok: true,
            })
        }
        EstimateName::Radius => {
            let grid = match &a.grid {
                Some(g) => parse_list(g, parse_at)?,
                None => analysis::default_radius_grid(),
            };
            let orders = match &a.orders {
                Some(o) => parse_list(o, |t| {
                    t.parse::<usize>().map_err(|e| Failure::Usage(format!("order {t:?}: {e}")))
                })?,
                None => analysis::RADIUS_ORDERS.to_vec(),
            };
            let rows = analysis::radius_scan(&grid, &orders)?;
            let mut table = Table::new(&["a", "n", "ratio", "exponent_proxy", "conjectured_radius"]);
            let mut lines = Vec::new();
            for r in &rows {
                table.push(vec![
                    float17(r.a),
                    r.n.to_string(),
                    float17(r.ratio),
                    float17(r.exponent_proxy),
                    float17(r.conjectured_radius),
                ]);
                lines.push(format!(
                    "a = {:>6.3}  n = {:>3}  ratio = {:.6}  proxy = {:.4}  conjectured = {:.6}",
                    r.a, r.n, r.ratio, r.exponent_proxy, r.conjectured_radius
                ));
            }
            let mut json = json!({ "rows": rows });
            if let Some(t) = ms() {
                json["timing_ms"] = json!(t);
            }
            Ok(Output { json, table, text: lines.join("\n"), ok: true })
        }
        EstimateName::Bounds => {
            let n = a.n;
            let q = walks::quarter_loop_series(n);
            let (sp, s) = equations::solve_sprim_via_q(&q, n)?;
            let g = analysis::growth_bounds(&s.series, &sp.series, n)?;
            let mut json = to_json(&g);
            if let Some(t) = ms() {
                json["timing_ms"] = json!(t);
            }
            let root = g.nth_roots[n - 1];
            Ok(Output {
                table: Table::pairs(&[
                    ("n", n.to_string()),
                    ("nth_root", float17(root)),
                    ("nth_roots_increasing", g.nth_roots_increasing.to_string()),
                    ("truncation_bound", float17(g.truncation_bound)),
                    ("eager_constant", float17(g.eager_constant)),
                    ("standard_constant", float17(g.standard_constant)),
                ]),
                text: format!(
                    "s_n^(1/n) at n = {n}: {root:.4}\ntruncation bound: {:.4}\n(2+sqrt 2)^2 = {:.4}\n1/t~_c = {:.4}",
                    g.truncation_bound, g.eager_constant, g.standard_constant
                ),
                json,
                ok: true,
            })
        }
    }
}
