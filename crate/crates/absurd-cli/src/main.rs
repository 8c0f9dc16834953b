//! Command-line front end: simplify expressions, list alternative display
//! forms with sizes, test equality, and run the bundled fixtures.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use absurd::fixtures::{
    power_bench_cases, BIG_PRIME_DIFFERENCE, SIXTEEN_FORM_INPUTS,
};
use absurd::numkernel::{factor_full_invocations, max_perfect_power_traced};
use absurd::{
    convert, evaluate, most_concise, recommended_kinds, AbsurdNumber, Config, DisplayForm,
    ExprError, FormError, FormKind, Rational,
};

#[derive(Parser)]
#[command(
    name = "absurd",
    version,
    about = "Exact arithmetic on rational multiples of fractional powers of rationals"
)]
struct Cli {
    /// Trial-division bound: primes up to this are certified; larger
    /// factor-free radicands are carried as quasi-prime bases.
    #[arg(long, global = true, env = "ABSURD_PHAT", default_value_t = 1000)]
    phat: u64,

    /// Iteration budget for any single full factorization (display forms
    /// only; exact arithmetic never factors).
    #[arg(long, global = true, env = "ABSURD_BUDGET", default_value_t = 1_000_000)]
    budget: u64,

    /// Display form name, or "auto" for the most concise recommended form.
    #[arg(long, global = true, default_value = "auto")]
    form: String,

    /// Output syntax.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Latex,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression and print it in the configured form.
    Simplify {
        /// Expression text; "-" reads it from stdin.
        expr: String,
    },
    /// List every display form of a single absurd number, with sizes.
    Alts {
        /// Expression text; "-" reads it from stdin.
        expr: String,
    },
    /// Test whether two expressions denote exactly the same number.
    Eq {
        /// Left expression; "-" reads it from stdin.
        a: String,
        /// Right expression; "-" reads it from stdin.
        b: String,
    },
    /// Run a bundled demonstration fixture.
    Fixtures {
        #[arg(value_enum)]
        which: Fixture,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    /// Sixteen renderings of one number must canonicalize identically.
    Table1,
    /// All 256 ordered differences of those renderings vanish, and the
    /// quotient 0/difference is reported indeterminate.
    Table2,
    /// A large-prime surd difference cancels without any factoring.
    Table3,
    /// Root-extraction traces for five extreme perfect-power cases.
    NewtonBench,
}

/// Command output plus the process exit code (fixtures and `eq` report
/// mismatches through the code without treating them as errors).
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

enum CliError {
    Expr(ExprError),
    Other(String),
}

impl CliError {
    fn message(&self) -> String {
        match self {
            CliError::Expr(e) => e.to_string(),
            CliError::Other(s) => s.clone(),
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Expr(ExprError::Indeterminate) => 2,
            CliError::Expr(ExprError::DivisionByZero) => 3,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("{}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if !(2..=(1u64 << 26)).contains(&cli.phat) {
        return Err(CliError::Other(format!(
            "--phat must be between 2 and {}, got {}",
            1u64 << 26,
            cli.phat
        )));
    }
    let cfg = Config::new(cli.phat, cli.budget);
    match &cli.cmd {
        Cmd::Simplify { expr } => cmd_simplify(&read_expr(expr)?, cli, &cfg),
        Cmd::Alts { expr } => cmd_alts(&read_expr(expr)?, cli, &cfg),
        Cmd::Eq { a, b } => cmd_eq(a, b, &cfg),
        Cmd::Fixtures { which } => cmd_fixtures(*which, &cfg),
    }
}

fn read_expr(arg: &str) -> Result<String, CliError> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| CliError::Other(format!("reading stdin: {e}")))?;
    Ok(buf.trim().to_string())
}

enum FormChoice {
    Auto,
    Fixed(FormKind),
}

fn parse_form(s: &str) -> Result<FormChoice, CliError> {
    if s == "auto" {
        return Ok(FormChoice::Auto);
    }
    // Accepted shorthand for the one name whose "proper" suffix is implied.
    let canonical = if s == "single_min_int_base" { "single_min_int_base_proper" } else { s };
    FormKind::from_name(canonical).map(FormChoice::Fixed).ok_or_else(|| {
        CliError::Other(format!(
            "unknown form {s:?}; expected \"auto\" or one of: {}",
            FormKind::ALL.map(|k| k.name()).join(", ")
        ))
    })
}

fn form_of(a: &AbsurdNumber, choice: &FormChoice, cfg: &Config) -> Result<DisplayForm, CliError> {
    match choice {
        FormChoice::Auto => Ok(most_concise(a, &recommended_kinds(), cfg).0),
        FormChoice::Fixed(kind) => convert(a, *kind, cfg).map_err(|e| {
            let FormError::FactoringBudgetExhausted { partial } = e;
            CliError::Other(format!(
                "factoring budget exhausted converting to {}; partial rendering: {}",
                kind.name(),
                partial.render_text()
            ))
        }),
    }
}

/// Joins per-term renderings, folding each term's leading minus into the
/// separator: ["a", "-b"] becomes "a - b".
fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

fn rational_str(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn json_of(f: &DisplayForm) -> serde_json::Value {
    json!({
        "form": f.kind.name(),
        "coefficient": format!("{}/{}", f.coefficient.numer(), f.coefficient.denom()),
        "terms": f.terms.iter().map(|t| json!({
            "base": rational_str(&t.base),
            "exp": format!("{}/{}", t.exponent.numer(), t.exponent.denom()),
        })).collect::<Vec<_>>(),
        "size": f.size(),
    })
}

fn cmd_simplify(expr: &str, cli: &Cli, cfg: &Config) -> Result<Outcome, CliError> {
    let sum = evaluate(expr, cfg).map_err(CliError::Expr)?;
    let choice = parse_form(&cli.form)?;
    let terms: Vec<AbsurdNumber> = if sum.is_zero() {
        vec![AbsurdNumber::zero()]
    } else {
        sum.terms().to_vec()
    };
    let forms = terms
        .iter()
        .map(|t| form_of(t, &choice, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let text = match cli.output {
        Output::Text => {
            join_signed(&forms.iter().map(|f| f.render_text()).collect::<Vec<_>>())
        }
        Output::Latex => {
            join_signed(&forms.iter().map(|f| f.render_latex()).collect::<Vec<_>>())
        }
        Output::Json => {
            let objs: Vec<_> = forms.iter().map(json_of).collect();
            let v = if objs.len() == 1 {
                objs.into_iter().next().unwrap()
            } else {
                serde_json::Value::Array(objs)
            };
            serde_json::to_string(&v).expect("serializing value")
        }
    };
    Ok(Outcome::ok(text + "\n"))
}

fn cmd_alts(expr: &str, cli: &Cli, cfg: &Config) -> Result<Outcome, CliError> {
    let sum = evaluate(expr, cfg).map_err(CliError::Expr)?;
    let Some(a) = sum.single() else {
        return Err(CliError::Other(format!(
            "result is a sum of {} incommensurable terms; \
             alternative forms apply to a single absurd number",
            sum.terms().len()
        )));
    };

    if a.is_rational() {
        // Every form renders a rational identically; one row says it all.
        let f = convert(&a, FormKind::ProperPrimal, cfg).expect("rationals never factor");
        let text = match cli.output {
            Output::Json => {
                serde_json::to_string(&json!([{
                    "form": "rational",
                    "rendering": f.render_text(),
                    "size": f.size(),
                    "most_concise": true,
                }]))
                .expect("serializing value")
            }
            Output::Latex => format!("* rational  {:>4}  {}", f.size(), f.render_latex()),
            Output::Text => format!("* rational  {:>4}  {}", f.size(), f.render_text()),
        };
        return Ok(Outcome::ok(text + "\n"));
    }

    let best_kind = most_concise(&a, &FormKind::ALL, cfg).0.kind;
    let rows: Vec<(FormKind, Option<DisplayForm>)> = FormKind::ALL
        .into_iter()
        .map(|kind| match convert(&a, kind, cfg) {
            Ok(f) => (kind, Some(f)),
            Err(FormError::FactoringBudgetExhausted { .. }) => (kind, None),
        })
        .collect();

    if cli.output == Output::Json {
        let objs: Vec<_> = rows
            .iter()
            .map(|(kind, f)| match f {
                Some(f) => json!({
                    "form": kind.name(),
                    "rendering": f.render_text(),
                    "size": f.size(),
                    "most_concise": *kind == best_kind,
                }),
                None => json!({
                    "form": kind.name(),
                    "unavailable": "factoring budget",
                }),
            })
            .collect();
        let text = serde_json::to_string(&serde_json::Value::Array(objs))
            .expect("serializing value");
        return Ok(Outcome::ok(text + "\n"));
    }

    let name_width = FormKind::ALL.iter().map(|k| k.name().len()).max().unwrap();
    let mut out = String::new();
    for (kind, f) in &rows {
        let marker = if *kind == best_kind { '*' } else { ' ' };
        match f {
            Some(f) => {
                let rendering = match cli.output {
                    Output::Latex => f.render_latex(),
                    _ => f.render_text(),
                };
                out.push_str(&format!(
                    "{marker} {:<name_width$}  {:>4}  {}\n",
                    kind.name(),
                    f.size(),
                    rendering
                ));
            }
            None => out.push_str(&format!(
                "{marker} {:<name_width$}     -  unavailable (factoring budget)\n",
                kind.name()
            )),
        }
    }
    Ok(Outcome::ok(out))
}

fn cmd_eq(a: &str, b: &str, cfg: &Config) -> Result<Outcome, CliError> {
    if a == "-" && b == "-" {
        return Err(CliError::Other("only one expression may be read from stdin".into()));
    }
    let (ea, eb) = (read_expr(a)?, read_expr(b)?);
    let sa = evaluate(&ea, cfg).map_err(CliError::Expr)?;
    let sb = evaluate(&eb, cfg).map_err(CliError::Expr)?;
    if sa.sub(&sb, cfg).is_zero() {
        Ok(Outcome::ok("equal\n".into()))
    } else {
        Ok(Outcome { text: "unequal\n".into(), code: 1 })
    }
}

fn cmd_fixtures(which: Fixture, cfg: &Config) -> Result<Outcome, CliError> {
    match which {
        Fixture::Table1 => fixture_sixteen_forms(cfg),
        Fixture::Table2 => fixture_difference_matrix(cfg),
        Fixture::Table3 => fixture_big_prime(cfg),
        Fixture::NewtonBench => fixture_power_bench(),
    }
}

fn fixture_sixteen_forms(cfg: &Config) -> Result<Outcome, CliError> {
    let mut out = String::new();
    let mut canonical: Vec<String> = Vec::new();
    for (i, s) in SIXTEEN_FORM_INPUTS.iter().enumerate() {
        let sum = evaluate(s, cfg).map_err(CliError::Expr)?;
        let c = sum.to_string();
        out.push_str(&format!("#{:<2} {s}\n    -> {c}\n", i + 1));
        canonical.push(c);
    }
    let identical = canonical.iter().all(|c| c == &canonical[0]);
    let matches = canonical.iter().filter(|c| *c == &canonical[0]).count();
    out.push_str(&format!("{matches}/16 inputs canonicalize identically\n"));
    Ok(Outcome { text: out, code: if identical { 0 } else { 1 } })
}

fn fixture_difference_matrix(cfg: &Config) -> Result<Outcome, CliError> {
    let n = SIXTEEN_FORM_INPUTS.len();
    let mut zero_diffs = 0usize;
    let mut indeterminate = 0usize;
    for a in SIXTEEN_FORM_INPUTS {
        for b in SIXTEEN_FORM_INPUTS {
            let diff = evaluate(&format!("({a})-({b})"), cfg).map_err(CliError::Expr)?;
            if diff.is_zero() {
                zero_diffs += 1;
            }
            if let Err(ExprError::Indeterminate) = evaluate(&format!("0/(({a})-({b}))"), cfg) {
                indeterminate += 1;
            }
        }
    }
    let total = n * n;
    let text = format!(
        "{zero_diffs}/{total} differences simplify to 0\n\
         {indeterminate}/{total} quotients 0/difference are indeterminate (0/0)\n"
    );
    let ok = zero_diffs == total && indeterminate == total;
    Ok(Outcome { text, code: if ok { 0 } else { 1 } })
}

fn fixture_big_prime(cfg: &Config) -> Result<Outcome, CliError> {
    let before = factor_full_invocations();
    let sum = evaluate(BIG_PRIME_DIFFERENCE, cfg).map_err(CliError::Expr)?;
    let factorizations = factor_full_invocations() - before;
    let text = format!(
        "{BIG_PRIME_DIFFERENCE}\n    -> {sum}\nfull factorizations performed: {factorizations}\n"
    );
    let ok = sum.is_zero() && factorizations == 0;
    Ok(Outcome { text, code: if ok { 0 } else { 1 } })
}

fn fixture_power_bench() -> Result<Outcome, CliError> {
    let mut out = String::new();
    let mut all_ok = true;
    for (i, case) in power_bench_cases().iter().enumerate() {
        let (pp, trace) = max_perfect_power_traced(&case.value, false);
        let successes: Vec<u32> =
            trace.iter().filter(|t| t.success).map(|t| t.prime).collect();
        let failures = trace.len() - successes.len();
        let ok = pp.exponent == case.expected_exponent && trace_matches(i, &trace);
        all_ok &= ok;
        out.push_str(&format!(
            "{}: exponent {}, successes at [{}], {} failures, {} applications  [{}]\n",
            case.label,
            pp.exponent,
            successes.iter().map(u32::to_string).collect::<Vec<_>>().join(", "),
            failures,
            trace.len(),
            if ok { "ok" } else { "MISMATCH" },
        ));
    }
    out.push_str(if all_ok { "5/5 cases match\n" } else { "trace mismatch\n" });
    Ok(Outcome { text: out, code: if all_ok { 0 } else { 1 } })
}

/// The expected success/failure pattern for bench case `i`, matching the
/// documented extreme decompositions.
fn trace_matches(i: usize, trace: &[absurd::numkernel::RootAttempt]) -> bool {
    let successes: Vec<u32> = trace.iter().filter(|t| t.success).map(|t| t.prime).collect();
    match i {
        // 6^210: one success and one failure for each of 2, 3, 5, 7.
        0 => {
            successes == [2, 3, 5, 7]
                && [2u32, 3, 5, 7].iter().all(|&p| {
                    trace.iter().filter(|t| t.prime == p && !t.success).count() == 1
                })
                && trace.len() == 8
        }
        // 2^512: nine successive square roots.
        1 => successes == [2; 9],
        // p^2: a single square root, then failures only.
        2 => successes == [2] && trace[0].success,
        // 2^509: the only success is the 509th root.
        3 => successes == [509],
        // A bare prime: no success at all.
        4 => successes.is_empty(),
        _ => unreachable!(),
    }
}
