use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use slender::cx::{
    ce_multiply, ce_power, ce_quotient, ce_solve_system, ce_system, render_quotient, CEElement,
    CounterexampleGroup, CxError,
};
use slender::equations::{
    bounded_solve, check_solution, cyclic_symbolic_solve, EqError, EquationSystem, SolutionTuple,
    SolveOutcome, SystemDescriptor, Verdict,
};
use slender::graph::GraphError;
use slender::hawaiian::{self, project, render_blocks, split, HegError, LazyWord, Side};
use slender::witness::{bounded_exponent_extension_witness, refutation_certificate, WitnessError};
use slender::{GPElement, GpError, GraphProduct, GroupFile};

use crate::{
    Cli, Command, CxCmd, EqCmd, GpCmd, HegCmd, NormCmd, NormKind, RootsCmd, SuiteCmd, SystemArgs,
    WitCmd, WitnessKind,
};

/// Exit 2 for `Usage`, 1 for `Domain`.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<GpError> for CliError {
    fn from(e: GpError) -> Self {
        match e {
            GpError::Graph(_) | GpError::Parse { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<EqError> for CliError {
    fn from(e: EqError) -> Self {
        match e {
            EqError::Gp(inner) => inner.into(),
            EqError::Overflow => CliError::Domain(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::Gp(inner) => inner.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<HegError> for CliError {
    fn from(e: HegError) -> Self {
        match e {
            HegError::FloorStalled { .. } | HegError::FloorViolation(_) => CliError::Domain(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CxError> for CliError {
    fn from(e: CxError) -> Self {
        match e {
            CxError::Equation(inner) => inner.into(),
            CxError::Parse { .. } => CliError::Usage(e.to_string()),
            CxError::ProductTooSmall(_) => CliError::Domain(e.to_string()),
        }
    }
}

/// What a command prints: `text` by default, `json` under `--json`. `ok =
/// false` exits with status 1.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Self { text: text.into(), json, ok: true }
    }

    fn verdict(ok: bool, text: impl Into<String>, json: Value) -> Self {
        Self { text: text.into(), json, ok }
    }
}

type Outcome = Result<Report, CliError>;

pub fn dispatch(cli: &Cli) -> Outcome {
    let group = || load_group(cli.group.as_deref());
    match &cli.command {
        Command::Gp(cmd) => gp(&group()?, cmd),
        Command::Norm(cmd) => norm(&group()?, cmd),
        Command::Roots(cmd) => roots(&group()?, cmd),
        Command::Eq(EqCmd::Symbolic { j, k }) => {
            let e = cyclic_symbolic_solve(*j, k)?;
            Ok(Report::ok(join(&e, " "), json!({ "e": e })))
        }
        Command::Eq(cmd) => eq(&group()?, cmd),
        Command::Wit(cmd) => wit(&group()?, cmd),
        Command::Heg(cmd) => heg(cmd),
        Command::Cx(cmd) => cx(cmd),
        Command::Suite(cmd) => suite(cmd),
    }
}

fn load_group(path: Option<&Path>) -> Result<GraphProduct, CliError> {
    let path = path.ok_or_else(|| CliError::Usage("this command needs --group FILE".into()))?;
    Ok(GraphProduct::from_file(&GroupFile::load(path)?)?)
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn parse_all(gp: &GraphProduct, words: &[String]) -> Result<Vec<GPElement>, CliError> {
    words.iter().map(|w| gp.parse(w).map_err(CliError::from)).collect()
}

fn element(gp: &GraphProduct, a: &GPElement) -> Report {
    let s = gp.render(a);
    Report::ok(s.clone(), json!({ "element": s }))
}

fn gp(gp: &GraphProduct, cmd: &GpCmd) -> Outcome {
    Ok(match cmd {
        GpCmd::Normalize { word } => element(gp, &gp.parse(word)?),
        GpCmd::Mul { words } => element(gp, &gp.product(&parse_all(gp, words)?)),
        GpCmd::Pow { word, n } => element(gp, &gp.power(&gp.parse(word)?, *n)),
        GpCmd::Inv { word } => element(gp, &gp.invert(&gp.parse(word)?)),
        GpCmd::Pivot { word, strict } => {
            let a = gp.parse(word)?;
            let form = if *strict { gp.pivot_strict(&a)? } else { gp.pivot(&a) };
            let (prefix, core) = (gp.render(&form.prefix), gp.render(&form.core));
            Report::ok(
                format!("prefix: {prefix}\ncore: {core}"),
                json!({ "prefix": prefix, "core": core }),
            )
        }
        GpCmd::Sigma { word } => {
            let image = gp.sigma(&gp.parse(word)?);
            let named = gp.render_sigma(&image);
            let text = named.iter().map(|(v, x)| format!("{v}={x}")).collect::<Vec<_>>().join(" ");
            Report::ok(text, json!({ "vertices": gp.graph().names(), "sigma": image }))
        }
        GpCmd::Commutes { v0, v1 } => {
            let graph = gp.graph();
            let c = graph.commutes(v0, v1)?;
            Report::ok(c.to_string(), json!({ "commutes": c }))
        }
        GpCmd::Ball { radius } => {
            let elements: Vec<String> = gp.ball(*radius)?.iter().map(|a| gp.render(a)).collect();
            Report::ok(
                elements.join("\n"),
                json!({ "radius": radius, "size": elements.len(), "elements": elements }),
            )
        }
    })
}

fn norm(gp: &GraphProduct, cmd: &NormCmd) -> Outcome {
    let value = |n: u64| Report::ok(n.to_string(), json!({ "norm": n }));
    Ok(match cmd {
        NormCmd::Dudley { word } => value(gp.dudley_norm(&gp.parse(word)?)?),
        NormCmd::Syllable { word } => value(gp.syllable_length(&gp.parse(word)?)),
        NormCmd::Kersigma { word } => value(gp.kernel_sigma_norm(&gp.parse(word)?)?),
        NormCmd::Verify { norm, radius, nmax } => {
            let mut elements = gp.ball(*radius)?;
            let report = match norm {
                NormKind::Dudley => {
                    gp.dudley_norm(&gp.identity())?;
                    gp.verify_dudley(|a| gp.dudley_norm(a).expect("checked above"), &elements, *nmax)
                }
                NormKind::Syllable => gp.verify_dudley(|a| gp.syllable_length(a), &elements, *nmax),
                NormKind::Kersigma => {
                    elements.retain(|a| gp.in_kernel_of_sigma(a));
                    gp.verify_dudley(|a| gp.kernel_sigma_norm(a).expect("kernel element"), &elements, *nmax)
                }
            };
            let mut text = format!("samples {}, violations {}", report.samples, report.violations.len());
            for v in &report.violations {
                let other = v.other.as_deref().map(|o| format!(" with {o}")).unwrap_or_default();
                text.push_str(&format!(
                    "\n{} at {}{} (n = {}): {} < {}",
                    format!("{:?}", v.clause).to_lowercase(), v.element, other, v.n, v.lhs, v.rhs
                ));
            }
            let json = serde_json::to_value(&report).expect("report serializes");
            Report::verdict(report.holds(), text, json)
        }
    })
}

fn roots(gp: &GraphProduct, cmd: &RootsCmd) -> Outcome {
    Ok(match cmd {
        RootsCmd::Find { word, radius, nmax } => {
            let g = gp.parse(word)?;
            let found = match radius {
                Some(r) => {
                    let n = nmax.unwrap_or_else(|| (*r).max(1));
                    gp.roots_within(&g, *r, n)?
                }
                None => gp.roots(&g)?,
            };
            let text = found
                .iter()
                .map(|r| format!("{}: {}", gp.render(&r.base), join(&r.exponents, ",")))
                .collect::<Vec<_>>()
                .join("\n");
            let json = found
                .iter()
                .map(|r| json!({ "base": gp.render(&r.base), "exponents": r.exponents }))
                .collect::<Vec<_>>();
            Report::ok(text, json!({ "roots": json }))
        }
        RootsCmd::Closure { g, depth, words } => {
            let closure = gp.roots_closure(&gp.parse(g)?, &parse_all(gp, words)?, *depth)?;
            let shown: Vec<String> = closure.iter().map(|a| gp.render(a)).collect();
            Report::ok(shown.join("\n"), json!({ "elements": shown }))
        }
        RootsCmd::Pbound { words } => {
            let p = gp.power_free_bound(&parse_all(gp, words)?)?;
            Report::ok(p.to_string(), json!({ "bound": p }))
        }
    })
}

fn system(gp: &GraphProduct, args: &SystemArgs) -> Result<EquationSystem<GPElement>, CliError> {
    let descriptor = match &args.system {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))?;
            SystemDescriptor::parse(&text)?
        }
        None => SystemDescriptor {
            g: args.g.clone(),
            j: args.j,
            a: args.a.clone(),
            k: args
                .k
                .clone()
                .ok_or_else(|| CliError::Usage("give --system FILE or --k with --g or --a".into()))?,
        },
    };
    Ok(descriptor.resolve(|s| Ok(gp.parse(s)?))?)
}

fn eq(gp: &GraphProduct, cmd: &EqCmd) -> Outcome {
    match cmd {
        EqCmd::Check { system: args, tuple } => {
            let sys = system(gp, args)?;
            let b = SolutionTuple(parse_all(gp, tuple)?);
            Ok(match check_solution(gp, &sys, &b)? {
                Verdict::Holds => Report::ok("holds", json!({ "holds": true, "fails_at": null })),
                Verdict::FailsAt(m) => Report::verdict(
                    false,
                    format!("fails at m = {m}"),
                    json!({ "holds": false, "fails_at": m }),
                ),
            })
        }
        EqCmd::Solve { system: args, b0, radius } => {
            let sys = system(gp, args)?;
            let b0 = gp.parse(b0)?;
            Ok(match bounded_solve(gp, &sys, &b0, *radius)? {
                SolveOutcome::Solution(b) => {
                    let shown: Vec<String> = b.0.iter().map(|x| gp.render(x)).collect();
                    let text = shown.iter().enumerate().map(|(m, s)| format!("b{m} = {s}")).collect::<Vec<_>>();
                    Report::ok(text.join("\n"), json!({ "radius": radius, "solution": shown }))
                }
                SolveOutcome::NoSolutionWithinRadius => Report::verdict(
                    false,
                    format!("no solution within radius {radius}"),
                    json!({ "radius": radius, "solution": null }),
                ),
            })
        }
        EqCmd::Symbolic { .. } => unreachable!("handled without a group"),
    }
}

fn wit(gp: &GraphProduct, cmd: &WitCmd) -> Outcome {
    match cmd {
        WitCmd::Derive { g, method, terms, b0, bounded_exponent } => {
            let g = gp.parse(g)?;
            let w = match method {
                WitnessKind::Dudley => gp.dudley_witness(&g)?,
                WitnessKind::FiniteRoots => gp.finite_roots_witness(&g)?,
                WitnessKind::GraphProduct => gp.graph_product_witness()?.witness(&g)?,
            };
            let w = match bounded_exponent {
                Some(d) => bounded_exponent_extension_witness(&w, *d)?,
                None => w,
            };
            let p = w.p_prefix(*terms);
            let depth = match b0 {
                Some(b0) => w.depth_bound(&gp.parse(b0)?),
                None => None,
            };
            let mut text = format!("method {}\nj {}\np {}", w.method(), w.j(), join(&p, ","));
            if b0.is_some() {
                let shown = depth.map_or_else(|| "none".to_string(), |d| d.to_string());
                text.push_str(&format!("\ndepth {shown}"));
            }
            let json = json!({
                "g": gp.render(&g),
                "method": w.method(),
                "j": w.j(),
                "p": p,
                "depth_bound": depth,
            });
            Ok(Report::ok(text, json))
        }
        WitCmd::Certify { g, b0, k } => {
            let (g, b0) = (gp.parse(g)?, gp.parse(b0)?);
            let w = gp.dudley_witness(&g)?;
            let cert = refutation_certificate(gp, &w, &g, &b0, k)?;
            let text = format!(
                "g = {}, b0 = {}, j = {}, k = {}\nM = {}, L(g) = {}, L(b0) = {}, bound = {}\n{}",
                cert.g,
                cert.b0,
                cert.j,
                join(&cert.k, ","),
                cert.depth,
                cert.lg,
                cert.lb0,
                cert.lower_bound,
                if cert.valid { "valid" } else { "invalid" }
            );
            let json: Value = serde_json::from_str(&cert.to_json()).expect("certificate json");
            Ok(Report::verdict(cert.valid, text, json))
        }
    }
}

fn heg(cmd: &HegCmd) -> Outcome {
    Ok(match cmd {
        HegCmd::Project { word, level } => {
            let t = project(&hawaiian::parse(word)?, *level);
            Report::ok(t.to_string(), json!({ "level": level, "word": t.to_string() }))
        }
        HegCmd::Split { word, level, at } => {
            let t = project(&hawaiian::parse(word)?, *level);
            let blocks = split(&t, *at)?;
            let json: Vec<Value> = blocks
                .iter()
                .map(|b| {
                    let side = match b.side {
                        Side::Lower => "lower",
                        Side::Upper => "upper",
                    };
                    json!({ "side": side, "word": hawaiian::render(&b.letters) })
                })
                .collect();
            Report::ok(render_blocks(&blocks), json!({ "blocks": json }))
        }
        HegCmd::Lazy { m, level, fixture } => {
            let lazy = match fixture {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))?;
                    LazyWord::from_json(&text)?
                }
                None => LazyWord::fixture(),
            };
            let t = lazy.project(*m, *level)?;
            Report::ok(t.to_string(), json!({ "m": m, "level": level, "word": t.to_string() }))
        }
    })
}

fn parse_ce(word: &str) -> Result<CEElement, CliError> {
    Ok(word.parse::<CEElement>()?)
}

fn cx(cmd: &CxCmd) -> Outcome {
    let element = |a: CEElement| Report::ok(a.to_string(), json!({ "element": a.to_string() }));
    Ok(match cmd {
        CxCmd::Mul { words } => {
            let mut acc = CEElement::identity();
            for w in words {
                acc = ce_multiply(&acc, &parse_ce(w)?);
            }
            element(acc)
        }
        CxCmd::Pow { word, n } => element(ce_power(&parse_ce(word)?, *n)),
        CxCmd::Quotient { word } => {
            let q = ce_quotient(&parse_ce(word)?);
            let pairs: Vec<[u64; 2]> = q.iter().map(|s| [s.n, s.r]).collect();
            Report::ok(render_quotient(&q), json!({ "quotient": pairs }))
        }
        CxCmd::Demo { j, k } => {
            let b = ce_solve_system(*j, k)?;
            let verdict = check_solution(&CounterexampleGroup, &ce_system(*j, k)?, &b)?;
            let shown: Vec<String> = b.0.iter().map(|x| x.to_string()).collect();
            let mut lines: Vec<String> = shown.iter().enumerate().map(|(m, s)| format!("b{m} = {s}")).collect();
            lines.push(match verdict {
                Verdict::Holds => "holds".to_string(),
                Verdict::FailsAt(m) => format!("fails at m = {m}"),
            });
            let json = json!({ "j": j, "k": k, "solution": shown, "holds": verdict.holds() });
            Report::verdict(verdict.holds(), lines.join("\n"), json)
        }
    })
}

fn suite(cmd: &SuiteCmd) -> Outcome {
    let SuiteCmd::Run { seed, only, timings } = cmd;
    let outcomes = match only {
        Some(id) => vec![slender_suite::run(*id, *seed)
            .ok_or_else(|| CliError::Usage(format!("no criterion `{id}`")))?],
        None => slender_suite::run_all(*seed),
    };
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let mut lines: Vec<String> = outcomes
        .iter()
        .map(|o| {
            let line = format!(
                "[{}] {} {}: {}",
                if o.passed { "PASS" } else { "FAIL" },
                o.id,
                o.title,
                o.detail
            );
            if *timings {
                format!("{line} ({:.2}s)", o.seconds)
            } else {
                line
            }
        })
        .collect();
    lines.push(format!("{passed}/{} passed", outcomes.len()));
    let json: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({ "id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail }))
        .collect();
    Ok(Report::verdict(
        passed == outcomes.len(),
        lines.join("\n"),
        json!({ "seed": seed, "criteria": json }),
    ))
}
