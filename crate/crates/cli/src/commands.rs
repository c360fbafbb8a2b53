use std::fmt::{Display, Write as _};
use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use pep2gi::{
    count_gi_reducible, count_k, count_l, count_l_eps, export_unweighted, gaussian_binomial, grassmannian_census,
    pep_brute_force, pep_solve, wdg_iso, CensusForm, CensusReport, CodeJson, Field, GraphJson, LinearCode, PepTag,
    Projector, StructureParams, WeightedDigraph,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::{Cli, Command, CountArgs, FormArgs, GraphFormat, EXIT_NEGATIVE, EXIT_NOT_REDUCIBLE, EXIT_OK};

pub fn run(cli: &Cli) -> Result<u8> {
    let start = Instant::now();
    let (body, exit) = match &cli.command {
        Command::Solve {
            code1,
            code2,
            oracle,
            brute_force_cap,
        } => solve(cli, code1, code2, *oracle, *brute_force_cap)?,
        Command::Classify { code } => {
            let c = read_code(code)?;
            (render(&c.classify()?, cli.pretty), EXIT_OK)
        }
        Command::Projector { code, form } => {
            let c = read_code(code)?;
            let p = Projector::new(&c, &params(c.field(), form, c.len())?)?;
            (render(&p.to_json(), cli.pretty), EXIT_OK)
        }
        Command::Iso { graph1, graph2 } => {
            let g1 = read_graph(graph1)?;
            let g2 = read_graph(graph2)?;
            if g1.field() != g2.field() {
                bail!("the two graphs are over different fields");
            }
            let perm = if g1.order() == g2.order() { wdg_iso(&g1, &g2) } else { None };
            let exit = if perm.is_some() { EXIT_OK } else { EXIT_NEGATIVE };
            let out = json!({ "isomorphic": perm.is_some(), "permutation": perm });
            (render(&out, cli.pretty), exit)
        }
        Command::Count(args) => {
            let table = count_table(args)?;
            let body = if cli.pretty { table_text(&table) } else { render(&table, false) };
            (body, EXIT_OK)
        }
        Command::Census {
            params,
            eps,
            a,
            b,
            compare,
            cap,
        } => census(cli, params, *eps, *a, *b, *compare, *cap)?,
        Command::ExportGraph { code, form, format } => {
            let c = read_code(code)?;
            let p = Projector::new(&c, &params(c.field(), form, c.len())?)?;
            let g = WeightedDigraph::new(p.into_matrix())?;
            match format {
                GraphFormat::EdgeList => (export_unweighted(&g).to_edge_list(), EXIT_OK),
                GraphFormat::Json => (render(&g.to_json(), cli.pretty), EXIT_OK),
            }
        }
        Command::SelfTest { seed } => {
            let report = crate::selftest::run(*seed)?;
            let exit = if report.passed { EXIT_OK } else { EXIT_NEGATIVE };
            (render(&report, cli.pretty), exit)
        }
    };
    emit(cli.output.as_deref(), &body)?;
    if cli.verbose {
        eprintln!("done in {:.3?}", start.elapsed());
    }
    Ok(exit)
}

fn solve(cli: &Cli, code1: &Path, code2: &Path, oracle: bool, cap: usize) -> Result<(String, u8)> {
    let c1 = read_code(code1)?;
    let c2 = read_code(code2)?;
    let verdict = pep_solve(&c1, &c2)?;
    let exit = match verdict.tag {
        PepTag::Equivalent => EXIT_OK,
        PepTag::NotEquivalent => EXIT_NEGATIVE,
        PepTag::NotReducible => EXIT_NOT_REDUCIBLE,
    };
    let mut out = serde_json::to_value(&verdict)?;
    if oracle {
        let found = pep_brute_force(&c1, &c2, cap)?;
        out["oracle"] = json!({ "equivalent": found.is_some(), "permutation": found });
    }
    Ok((render(&out, cli.pretty), exit))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_code(path: &Path) -> Result<LinearCode> {
    let json: CodeJson = read_json(path)?;
    LinearCode::from_json(&json).with_context(|| format!("invalid code in {}", path.display()))
}

fn read_graph(path: &Path) -> Result<WeightedDigraph> {
    let json: GraphJson = read_json(path)?;
    WeightedDigraph::from_json(&json).with_context(|| format!("invalid graph in {}", path.display()))
}

fn params(field: &Field, form: &FormArgs, n: usize) -> Result<StructureParams> {
    Ok(StructureParams::new(field, field.element(form.a)?, field.element(form.b)?, n)?)
}

fn field_for(args: &CountArgs) -> Result<Field> {
    let field = match &args.modulus {
        None => Field::of_order(args.q)?,
        Some(md) => {
            let base = Field::of_order(args.q)?;
            let spec = base.spec();
            Field::new(spec.p, spec.m, Some(md))?
        }
    };
    Ok(field)
}

/// Exact JSON number for an arbitrarily large integer.
fn big(x: impl Display) -> Value {
    Value::Number(x.to_string().parse().expect("integers are valid JSON numbers"))
}

fn count_table(args: &CountArgs) -> Result<Value> {
    let (n, k) = (args.n, args.k);
    if k > n {
        bail!("dimension {k} exceeds length {n}");
    }
    let field = field_for(args)?;
    let q = field.order() as u64;
    let mut t = Map::new();
    t.insert("n".into(), json!(n));
    t.insert("k".into(), json!(k));
    t.insert("q".into(), json!(q));
    t.insert("subspaces".into(), big(gaussian_binomial(n, k, q)));
    let l = count_l(n, k, &field)?;
    t.insert("L".into(), big(&l));
    if field.is_odd() {
        t.insert("L_minus".into(), big(count_l_eps(n, k, &field, -1)?));
        t.insert("K".into(), if n >= 2 { big(count_k(n, &field)?) } else { Value::Null });
        t.insert("gi_reducible".into(), big(count_gi_reducible(n, k, &field)?));
    } else {
        // no hull line is reducible in characteristic 2
        t.insert("L_minus".into(), Value::Null);
        t.insert("K".into(), Value::Null);
        t.insert("gi_reducible".into(), big(&l));
    }
    Ok(Value::Object(t))
}

#[allow(clippy::too_many_arguments)]
fn census(
    cli: &Cli,
    args: &CountArgs,
    eps: Option<i8>,
    a: Option<u64>,
    b: Option<u64>,
    compare: bool,
    cap: u64,
) -> Result<(String, u8)> {
    let field = field_for(args)?;
    let form = match (eps, a) {
        (Some(e), _) => CensusForm::TypeEps(e),
        (None, Some(a)) => {
            let fa = FormArgs { a, b: b.unwrap_or(0) };
            let p = params(&field, &fa, args.n)?;
            if p.is_standard() {
                CensusForm::Standard
            } else {
                CensusForm::Structure(p)
            }
        }
        (None, None) => CensusForm::Standard,
    };
    let run = || grassmannian_census(args.n, args.k, &field, form, cap);
    let report = match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build()
            .context("starting worker threads")?
            .install(run)?,
        None => run()?,
    };
    let mut out = serde_json::to_value(&report)?;
    let mut exit = EXIT_OK;
    if compare {
        let rows = comparisons(&report, &field, form)?;
        let pass = rows.iter().all(|r| r["ok"] == json!(true));
        if !pass {
            exit = EXIT_NEGATIVE;
        }
        out["comparison"] = Value::Array(rows);
        out["pass"] = json!(pass);
    }
    let body = if cli.pretty { census_text(&report, &out) } else { render(&out, false) };
    Ok((body, exit))
}

fn row(quantity: &str, census: impl Display, closed: impl Display) -> Value {
    let (c, f) = (census.to_string(), closed.to_string());
    json!({ "quantity": quantity, "census": big(&c), "closed_form": big(&f), "ok": c == f })
}

/// Every closed form that applies to the census' parameters and form.
fn comparisons(report: &CensusReport, field: &Field, form: CensusForm) -> Result<Vec<Value>> {
    let (n, k) = (report.n, report.k);
    let q = field.order() as u64;
    let mut rows = vec![row("total_subspaces", report.total_subspaces, gaussian_binomial(n, k, q))];
    match form {
        CensusForm::Standard => {
            rows.push(row("lcd_count", report.lcd_count, count_l(n, k, field)?));
            if field.is_odd() {
                rows.push(row("gi_reducible_count", report.gi_reducible_count, count_gi_reducible(n, k, field)?));
                if k >= 1 && n >= 2 && k - 1 <= n - 2 {
                    // codes whose hull is one fixed isotropic line
                    let eps = field.quadratic_character(field.from_int(-1))?;
                    let per_line = count_l_eps(n - 2, k - 1, field, eps)?;
                    for h in &report.hull_lines {
                        rows.push(row(&format!("hull_line {:?}", h.vector), h.count, &per_line));
                    }
                    let reducible_lines = report
                        .hull_lines
                        .iter()
                        .filter(|h| !coordinate_sum(field, &h.vector).is_zero())
                        .count();
                    rows.push(row("reducible_hull_lines", reducible_lines, count_k(n, field)? / (q - 1)));
                }
            } else {
                rows.push(row("gi_reducible_count", report.gi_reducible_count, report.lcd_count));
            }
        }
        CensusForm::TypeEps(e) => rows.push(row("lcd_count", report.lcd_count, count_l_eps(n, k, field, e)?)),
        // no closed form is known for general aI + bJ
        CensusForm::Structure(_) => {}
    }
    Ok(rows)
}

fn coordinate_sum(field: &Field, x: &[u64]) -> pep2gi::FieldElement {
    x.iter()
        .map(|&v| field.element(v).expect("census vectors hold field elements"))
        .fold(field.zero(), |s, v| field.add(s, v))
}

fn render<T: Serialize>(value: &T, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("output types serialize");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table_text(table: &Value) -> String {
    let obj = table.as_object().expect("tables are objects");
    let width = obj.keys().map(String::len).max().unwrap_or(0);
    let mut s = String::new();
    for (key, value) in obj {
        writeln!(s, "{key:<width$}  {}", cell(value)).unwrap();
    }
    s
}

fn census_text(report: &CensusReport, out: &Value) -> String {
    let mut s = String::new();
    writeln!(s, "census of [{}, {}]_{} codes, form {}", report.n, report.k, report.q, report.form).unwrap();
    writeln!(s, "  subspaces     {}", report.total_subspaces).unwrap();
    writeln!(s, "  lcd           {}", report.lcd_count).unwrap();
    writeln!(s, "  gi-reducible  {}", report.gi_reducible_count).unwrap();
    writeln!(s, "  hull lines    {}", report.hull_lines.len()).unwrap();
    for (h, count) in report.hull_dim_histogram.iter().enumerate() {
        writeln!(s, "  hull dim {h:<4} {count}").unwrap();
    }
    if let Some(rows) = out["comparison"].as_array() {
        writeln!(s, "comparison").unwrap();
        for r in rows {
            let mark = if r["ok"] == json!(true) { "ok  " } else { "FAIL" };
            writeln!(
                s,
                "  {mark} {:<28} census {} closed form {}",
                cell(&r["quantity"]),
                r["census"],
                r["closed_form"]
            )
            .unwrap();
        }
        writeln!(s, "{}", if out["pass"] == json!(true) { "pass" } else { "FAIL" }).unwrap();
    }
    s
}

fn emit(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|_| out.flush()).context("writing output")
        }
    }
}
