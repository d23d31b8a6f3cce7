use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use relsing::arcs::{valuation_criterion_test, ValuationTest};
use relsing::families::{
    condition_report, polar_split_check, radical_membership, ArcCondition, ArcStatus,
    RadicalMembership,
};
use relsing::invariants::{
    apply_vector_field, bruce_roberts_ideal, bruce_roberts_number, bruce_roberts_number_at,
    check_tangency, is_quasihomogeneous, jacobian_ideal, le_milnor_number, milnor_number,
    multiplicity, Quasihomogeneity,
};
use relsing::poly::DEFAULT_DIM_BOUND;
use relsing::{
    ArcCurve, Count, Deformation, Error, LocalOptions, Polynomial, Rational, SampleSet, Valuation,
    VarietyGerm,
};

use crate::document::{is_zero, Diagnostic, InputDocument, ObjectKind};
use crate::output::{render, Format};

#[derive(Parser, Debug)]
#[command(
    name = "relsing",
    version,
    about = "Exact singularity invariants relative to a variety"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Default truncation order for arcs without an explicit `trunc`.
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
    trunc: u32,
    /// Largest quotient dimension enumerated before giving up.
    #[arg(long = "dim-bound", global = true, default_value_t = DEFAULT_DIM_BOUND)]
    dim_bound: u64,
    /// Highest power tried in the radical membership test.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    kmax: u32,
    /// Sample values of `t`: a sample-set name or a list such as `0,1/7,1/2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    samples: Option<String>,
    /// Parameter value, overriding the document.
    #[arg(
        long = "param",
        global = true,
        value_name = "NAME=VALUE",
        allow_hyphen_values = true
    )]
    params: Vec<String>,
    /// Report the wall-clock time of the computation.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FunctionArgs {
    /// Input document (`-` for standard input).
    #[arg(value_name = "FILE")]
    file: PathBuf,
    /// A polynomial or a deformation.
    #[arg(long)]
    f: String,
    /// Parameter value for a deformation, as `t=VALUE`.
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Input document (`-` for standard input).
    #[arg(value_name = "FILE")]
    file: PathBuf,
    /// Deformation name.
    #[arg(long)]
    deform: String,
    /// Variety name.
    #[arg(long)]
    variety: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Milnor number.
    Milnor(FunctionArgs),
    /// Lowest degree of the expansion at the origin.
    Multiplicity(FunctionArgs),
    /// Bruce-Roberts number relative to a variety.
    MuBr {
        #[command(flatten)]
        f: FunctionArgs,
        /// Variety name.
        #[arg(long)]
        variety: String,
        /// Compute the germ at this point: a point name or `(c1,...,cn)`.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Le number of a function on the hypersurface `phi = 0`.
    LeNumber {
        #[command(flatten)]
        f: FunctionArgs,
        /// Polynomial defining the hypersurface.
        #[arg(long)]
        phi: String,
    },
    /// Tangency of vector fields to the hypersurface `phi = 0`.
    Tangency {
        /// Input document (`-` for standard input).
        #[arg(value_name = "FILE")]
        file: PathBuf,
        /// Polynomial defining the hypersurface.
        #[arg(long)]
        phi: String,
        /// Vector field to test; repeatable. Defaults to every declared field.
        #[arg(long = "field")]
        fields: Vec<String>,
    },
    /// Weighted homogeneity test.
    Quasihomog {
        #[command(flatten)]
        f: FunctionArgs,
        /// Weight system name.
        #[arg(long)]
        weights: String,
    },
    /// All six conditions on a deformation.
    FamilyCheck {
        #[command(flatten)]
        family: FamilyArgs,
        /// Arc for the valuation conditions; repeatable.
        #[arg(long = "arc")]
        arcs: Vec<String>,
        /// Fibre for the polar splitting test. Defaults to the first nonzero sample.
        #[arg(long, allow_hyphen_values = true)]
        t0: Option<String>,
    },
    /// Valuation criterion along arcs.
    ArcTest {
        #[command(flatten)]
        family: FamilyArgs,
        /// Arc name; repeatable.
        #[arg(long = "arc", required = true)]
        arcs: Vec<String>,
    },
    /// Radical membership of the t-derivative.
    RadicalTest {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Polar curve splitting at a fibre.
    SplitCheck {
        #[command(flatten)]
        family: FamilyArgs,
        /// Fibre to test.
        #[arg(long, allow_hyphen_values = true)]
        t0: String,
        /// Candidate point of the polar curve; repeatable.
        #[arg(long = "point", allow_hyphen_values = true)]
        points: Vec<String>,
    },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Milnor(a) | Command::Multiplicity(a) => &a.file,
            Command::MuBr { f, .. }
            | Command::LeNumber { f, .. }
            | Command::Quasihomog { f, .. } => &f.file,
            Command::Tangency { file, .. } => file,
            Command::FamilyCheck { family, .. }
            | Command::ArcTest { family, .. }
            | Command::RadicalTest { family }
            | Command::SplitCheck { family, .. } => &family.file,
        }
    }
}

/// Failure of a command, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit code 1.
    Usage(String),
    /// Exit code 2.
    Document(Diagnostic),
    /// Exit code 2.
    Reference(String),
    /// Exit code 4 for [`Error::BoundExceeded`], 2 for [`Error::Parse`], 3 otherwise.
    Math(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Document(_) | CliError::Reference(_) | CliError::Math(Error::Parse(_)) => 2,
            CliError::Math(Error::BoundExceeded { .. }) => 4,
            CliError::Math(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Reference(m) => f.write_str(m),
            CliError::Document(d) => write!(f, "{d}"),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (program name first).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let echo = args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    let file = cli.command.file().display().to_string();
    match execute(&cli, echo) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let stderr = match &e {
                CliError::Document(_) => format!("error: {file}:{e}\n"),
                _ => format!("error: {e}\n"),
            };
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn read_input(path: &PathBuf) -> CliResult<Vec<u8>> {
    let mut bytes = Vec::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(path).map(|b| bytes = b)
    };
    res.map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(bytes)
}

fn execute(cli: &Cli, echo: String) -> CliResult<String> {
    let bytes = read_input(cli.command.file())?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text =
        String::from_utf8(bytes).map_err(|_| CliError::Usage("input is not valid UTF-8".into()))?;

    let mut overrides = BTreeMap::new();
    for p in &cli.params {
        let (name, value) = p
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--param expects NAME=VALUE, got `{p}`")))?;
        let value = InputDocument::default()
            .constant(value.trim())
            .map_err(|m| CliError::Usage(format!("--param {name}: {m}")))?;
        overrides.insert(name.trim().to_string(), value);
    }
    let doc = InputDocument::parse_with(&text, &overrides).map_err(CliError::Document)?;
    for name in overrides.keys() {
        if doc.kind_of(name) != Some(ObjectKind::Parameter) {
            return Err(CliError::Usage(format!(
                "--param {name}: the document declares no such parameter"
            )));
        }
    }

    let ctx = Context {
        doc,
        opts: LocalOptions {
            dim_bound: cli.dim_bound,
            ..LocalOptions::default()
        },
        trunc: cli.trunc,
        kmax: cli.kmax,
        samples: cli.samples.clone(),
    };
    let start = Instant::now();
    let payload = ctx.dispatch(&cli.command)?;
    let elapsed = start.elapsed();

    let mut record = Map::new();
    record.insert("command".into(), json!(echo));
    record.insert("input_sha256".into(), json!(digest));
    record.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    record.insert("result".into(), payload);
    if cli.timing {
        record.insert("timing_ms".into(), json!(elapsed.as_millis() as u64));
    }
    Ok(render(&record, cli.format))
}

struct Context {
    doc: InputDocument,
    opts: LocalOptions,
    trunc: u32,
    kmax: u32,
    samples: Option<String>,
}

fn rat(r: &Rational) -> Value {
    json!(r.to_string())
}

fn poly(p: &Polynomial) -> Value {
    json!(p.to_string())
}

fn polys(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(poly).collect())
}

fn count(c: Count) -> Value {
    match c {
        Count::Finite(n) => json!(n),
        Count::Infinite => json!("infinite"),
    }
}

fn valuation(v: Valuation) -> Value {
    match v {
        Valuation::Finite(k) => json!(k),
        Valuation::AtLeast(_) => json!(v.to_string()),
    }
}

fn point(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rat).collect())
}

fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

/// The function named by `--f`, at one or several values of `t`.
enum Target<'a> {
    Poly(&'a Polynomial),
    Family(&'a Deformation),
}

impl Context {
    fn dispatch(&self, command: &Command) -> CliResult<Value> {
        match command {
            Command::Milnor(a) => self.per_instance(a, |f| {
                Ok(vec![
                    ("jacobian", polys(&jacobian_ideal(f))),
                    ("value", count(milnor_number(f, &self.opts)?)),
                ])
            }),
            Command::Multiplicity(a) => {
                self.per_instance(a, |f| Ok(vec![("value", json!(multiplicity(f)?))]))
            }
            Command::MuBr { f, variety, point } => self.mu_br(f, variety, point.as_deref()),
            Command::LeNumber { f, phi } => {
                let phi_poly = self.polynomial(phi)?;
                let mut out = self.per_instance(f, |g| {
                    Ok(vec![(
                        "value",
                        count(le_milnor_number(phi_poly, g, &self.opts)?),
                    )])
                })?;
                insert_after(&mut out, "function", "phi", json!(phi));
                Ok(out)
            }
            Command::Tangency { phi, fields, .. } => self.tangency(phi, fields),
            Command::Quasihomog { f, weights } => {
                let w = self
                    .doc
                    .weights(weights)
                    .ok_or_else(|| self.unresolved(weights, ObjectKind::Weights))?;
                let mut out = self.per_instance(f, |g| {
                    Ok(match is_quasihomogeneous(g, w)? {
                        Quasihomogeneity::Yes { degree } => {
                            vec![
                                ("quasihomogeneous", json!(true)),
                                ("weighted_degree", json!(degree)),
                            ]
                        }
                        Quasihomogeneity::No => vec![("quasihomogeneous", json!(false))],
                    })
                })?;
                insert_after(&mut out, "function", "weights", json!(w.weights()));
                Ok(out)
            }
            Command::FamilyCheck { family, arcs, t0 } => {
                self.family_check(family, arcs, t0.as_deref())
            }
            Command::ArcTest { family, arcs } => self.arc_test(family, arcs),
            Command::RadicalTest { family } => {
                let (d, v) = self.family(family)?;
                let h = d.t_derivative()?;
                let ideal = d.relative_jacobian(v)?;
                let res = radical_membership(&h, &ideal, self.kmax, None)?;
                Ok(object(vec![
                    ("deformation", json!(family.deform)),
                    ("variety", json!(family.variety)),
                    ("family", poly(&d.family()?)),
                    ("t_derivative", poly(&h)),
                    ("ideal", polys(&ideal)),
                    ("kmax", json!(self.kmax)),
                    ("radical", radical_value(res)),
                ]))
            }
            Command::SplitCheck { family, t0, points } => {
                let (d, v) = self.family(family)?;
                let t0 = self.value(t0, "--t0")?;
                let pts = points
                    .iter()
                    .map(|p| self.point(p))
                    .collect::<CliResult<Vec<_>>>()?;
                let report = polar_split_check(d, v, &t0, &pts, &self.opts)?;
                Ok(object(vec![
                    ("deformation", json!(family.deform)),
                    ("variety", json!(family.variety)),
                    ("t0", rat(&t0)),
                    ("base_value", json!(report.base_value)),
                    ("local_at_origin", count(report.local_at_origin)),
                    ("split", json!(report.split)),
                    (
                        "points",
                        Value::Array(
                            report
                                .accounted
                                .iter()
                                .map(|(p, c)| {
                                    object(vec![("point", point(p)), ("value", count(*c))])
                                })
                                .collect(),
                        ),
                    ),
                    (
                        "accounted_sum",
                        report.accounted_sum.map_or(Value::Null, count),
                    ),
                    (
                        "conserved",
                        report.conserved.map_or(Value::Null, |b| json!(b)),
                    ),
                ]))
            }
        }
    }

    fn unresolved(&self, name: &str, expected: ObjectKind) -> CliError {
        CliError::Reference(match self.doc.kind_of(name) {
            Some(kind) => format!("`{name}` is {kind}, expected {expected}"),
            None => format!("unknown name `{name}`, expected {expected}"),
        })
    }

    fn polynomial(&self, name: &str) -> CliResult<&Polynomial> {
        self.doc
            .polynomial(name)
            .ok_or_else(|| self.unresolved(name, ObjectKind::Polynomial))
    }

    fn variety(&self, name: &str) -> CliResult<&VarietyGerm> {
        self.doc
            .variety(name)
            .ok_or_else(|| self.unresolved(name, ObjectKind::Variety))
    }

    fn family(&self, a: &FamilyArgs) -> CliResult<(&Deformation, &VarietyGerm)> {
        let d = self
            .doc
            .deformation(&a.deform)
            .ok_or_else(|| self.unresolved(&a.deform, ObjectKind::Deformation))?;
        Ok((d, self.variety(&a.variety)?))
    }

    fn target(&self, name: &str) -> CliResult<Target<'_>> {
        if let Some(p) = self.doc.polynomial(name) {
            return Ok(Target::Poly(p));
        }
        if let Some(d) = self.doc.deformation(name) {
            return Ok(Target::Family(d));
        }
        Err(CliError::Reference(match self.doc.kind_of(name) {
            Some(kind) => format!("`{name}` is {kind}, expected a polynomial or a deformation"),
            None => format!("unknown name `{name}`, expected a polynomial or a deformation"),
        }))
    }

    /// A constant command-line value over the document parameters.
    fn value(&self, text: &str, flag: &str) -> CliResult<Rational> {
        self.doc
            .constant(text.trim())
            .map_err(|m| CliError::Usage(format!("{flag}: {m}")))
    }

    fn sample_set(&self) -> CliResult<Option<SampleSet>> {
        let Some(text) = self.samples.as_deref() else {
            return Ok(None);
        };
        let text = text.trim();
        if let Some(s) = self.doc.sample_set(text) {
            return Ok(Some(s.clone()));
        }
        let is_name = text.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if is_name && self.doc.kind_of(text) != Some(ObjectKind::Parameter) {
            return Err(self.unresolved(text, ObjectKind::Samples));
        }
        let values = text
            .split(',')
            .map(|v| self.value(v, "--samples"))
            .collect::<CliResult<Vec<_>>>()?;
        SampleSet::new(values)
            .map(Some)
            .map_err(|e| CliError::Usage(format!("--samples: {e}")))
    }

    fn point(&self, text: &str) -> CliResult<Vec<Rational>> {
        if let Some(p) = self.doc.point(text.trim()) {
            return Ok(p.to_vec());
        }
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = inner
            .split(',')
            .map(|v| self.value(v, "--point"))
            .collect::<CliResult<Vec<_>>>()?;
        let n = self.doc.ring().map_or(0, |r| r.nvars());
        if coords.len() != n {
            return Err(CliError::Usage(format!(
                "--point: {} coordinates for {n} variables",
                coords.len()
            )));
        }
        Ok(coords)
    }

    fn arc(&self, name: &str, ring_dim: usize) -> CliResult<ArcCurve> {
        let decl = self
            .doc
            .arc(name)
            .ok_or_else(|| self.unresolved(name, ObjectKind::Arc))?;
        if decl.components.len() != ring_dim {
            return Err(Error::ArityMismatch {
                expected: ring_dim,
                found: decl.components.len(),
            }
            .into());
        }
        Ok(ArcCurve::from_polynomials(
            &decl.components,
            decl.trunc.unwrap_or(self.trunc),
        )?)
    }

    /// Evaluates `eval` at the polynomial, at one fibre of a deformation,
    /// or at every sample; the sampled form adds a `constant` flag over the
    /// `value` entries.
    fn per_instance<F>(&self, a: &FunctionArgs, eval: F) -> CliResult<Value>
    where
        F: Fn(&Polynomial) -> CliResult<Vec<(&'static str, Value)>>,
    {
        let mut out = Map::new();
        out.insert("function".into(), json!(a.f));
        match self.target(&a.f)? {
            Target::Poly(p) => {
                if a.at.is_some() || self.samples.is_some() {
                    return Err(CliError::Usage(format!(
                        "`{}` is a polynomial; --at and --samples need a deformation",
                        a.f
                    )));
                }
                out.insert("polynomial".into(), poly(p));
                out.extend(eval(p)?.into_iter().map(|(k, v)| (k.to_string(), v)));
            }
            Target::Family(d) => match (&a.at, self.sample_set()?) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage("--at and --samples are exclusive".into()))
                }
                (at, None) => {
                    let t = match at {
                        Some(at) => {
                            self.value(at.trim().strip_prefix("t=").unwrap_or(at), "--at")?
                        }
                        None => Rational::from_integer(0.into()),
                    };
                    let ft = d.specialize(&t)?;
                    out.insert("t".into(), rat(&t));
                    out.insert("polynomial".into(), poly(&ft));
                    out.extend(eval(&ft)?.into_iter().map(|(k, v)| (k.to_string(), v)));
                }
                (None, Some(samples)) => {
                    let mut rows = Vec::new();
                    for t in samples.values() {
                        let ft = d.specialize(t)?;
                        let mut row = Map::new();
                        row.insert("t".into(), rat(t));
                        row.insert("polynomial".into(), poly(&ft));
                        row.extend(eval(&ft)?.into_iter().map(|(k, v)| (k.to_string(), v)));
                        rows.push(Value::Object(row));
                    }
                    let first = &rows[0]["value"];
                    let constant = !first.is_null()
                        && *first != json!("infinite")
                        && rows.iter().all(|r| &r["value"] == first);
                    out.insert("samples".into(), Value::Array(rows));
                    out.insert("constant".into(), json!(constant));
                }
            },
        }
        Ok(Value::Object(out))
    }

    fn mu_br(&self, a: &FunctionArgs, variety: &str, at_point: Option<&str>) -> CliResult<Value> {
        let v = self.variety(variety)?;
        let mut out = match at_point {
            None => self.per_instance(a, |f| {
                Ok(vec![
                    ("ideal", polys(&bruce_roberts_ideal(f, v)?)),
                    ("value", count(bruce_roberts_number(f, v, &self.opts)?)),
                ])
            })?,
            Some(text) => {
                if self.samples.is_some() {
                    return Err(CliError::Usage(
                        "--point and --samples are exclusive".into(),
                    ));
                }
                let p = self.point(text)?;
                let vp = v.translate(&p)?;
                self.per_instance(a, |f| {
                    let shift: BTreeMap<String, Polynomial> = f
                        .ring()
                        .vars()
                        .iter()
                        .zip(&p)
                        .enumerate()
                        .map(|(i, (name, c))| {
                            (
                                name.clone(),
                                &Polynomial::var(f.ring(), i)
                                    + &Polynomial::constant(f.ring(), c.clone()),
                            )
                        })
                        .collect();
                    let moved = f.substitute(f.ring(), &shift)?;
                    let moved = &moved - &Polynomial::constant(f.ring(), moved.constant_term());
                    Ok(vec![
                        ("point", point(&p)),
                        ("local_polynomial", poly(&moved)),
                        ("ideal", polys(&bruce_roberts_ideal(&moved, &vp)?)),
                        (
                            "value",
                            count(bruce_roberts_number_at(f, v, &p, &self.opts)?),
                        ),
                    ])
                })?
            }
        };
        insert_after(&mut out, "function", "variety", json!(variety));
        Ok(out)
    }

    fn tangency(&self, phi: &str, names: &[String]) -> CliResult<Value> {
        let phi_poly = self.polynomial(phi)?;
        let selected: Vec<(String, &relsing::VectorField)> = if names.is_empty() {
            self.doc
                .fields()
                .iter()
                .map(|(n, f)| (n.clone(), f))
                .collect()
        } else {
            names
                .iter()
                .map(|n| {
                    Ok((
                        n.clone(),
                        self.doc
                            .field(n)
                            .ok_or_else(|| self.unresolved(n, ObjectKind::VectorField))?,
                    ))
                })
                .collect::<CliResult<_>>()?
        };
        let mut rows = Vec::new();
        let mut all = true;
        for (name, xi) in selected {
            let tangent = check_tangency(phi_poly, xi)?;
            all &= tangent;
            rows.push(object(vec![
                ("field", json!(name)),
                ("components", polys(xi.components())),
                ("image", poly(&apply_vector_field(phi_poly, xi)?)),
                ("tangent", json!(tangent)),
            ]));
        }
        Ok(object(vec![
            ("phi", json!(phi)),
            ("polynomial", poly(phi_poly)),
            ("fields", Value::Array(rows)),
            ("all_tangent", json!(all)),
        ]))
    }

    fn arc_rows(&self, names: &[String], tests: &[ValuationTest]) -> Value {
        Value::Array(
            names
                .iter()
                .zip(tests)
                .map(|(name, t)| {
                    let arc = self.doc.arc(name).expect("resolved arc");
                    object(vec![
                        ("arc", json!(name)),
                        ("components", polys(&arc.components)),
                        ("h_valuation", valuation(t.h_value)),
                        (
                            "generator_valuations",
                            Value::Array(t.values.iter().map(|v| valuation(*v)).collect()),
                        ),
                        ("infimum", valuation(t.infimum)),
                        ("strict", json!(t.strict.to_string())),
                        ("weak", json!(t.weak.to_string())),
                        (
                            "indeterminate_generators",
                            json!(t.indeterminate_generators),
                        ),
                    ])
                })
                .collect(),
        )
    }

    fn arc_test(&self, a: &FamilyArgs, names: &[String]) -> CliResult<Value> {
        let (d, v) = self.family(a)?;
        let h = d.t_derivative()?;
        let ideal = d.relative_jacobian(v)?;
        let dim = d.ring().nvars();
        let tests = names
            .iter()
            .map(|n| Ok(valuation_criterion_test(&h, &ideal, &self.arc(n, dim)?)?))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(object(vec![
            ("deformation", json!(a.deform)),
            ("variety", json!(a.variety)),
            ("family", poly(&d.family()?)),
            ("t_derivative", poly(&h)),
            ("ideal", polys(&ideal)),
            ("arcs", self.arc_rows(names, &tests)),
        ]))
    }

    fn family_check(&self, a: &FamilyArgs, names: &[String], t0: Option<&str>) -> CliResult<Value> {
        let (d, v) = self.family(a)?;
        let samples = self.sample_set()?.unwrap_or_default();
        let t0 = match t0 {
            Some(text) => self.value(text, "--t0")?,
            None => samples
                .values()
                .iter()
                .find(|t| !is_zero(t))
                .cloned()
                .ok_or_else(|| CliError::Usage("--t0 is required when every sample is 0".into()))?,
        };
        let dim = d.ring().nvars();
        let arcs = names
            .iter()
            .map(|n| self.arc(n, dim))
            .collect::<CliResult<Vec<_>>>()?;
        let r = condition_report(d, v, &samples, &arcs, &t0, self.kmax, &self.opts)?;
        let arc_condition = |c: &ArcCondition| {
            let mut fields = match c.status {
                ArcStatus::RefutedWithWitness { arc } => {
                    vec![
                        ("status", json!("refuted")),
                        ("witness", json!(names[arc])),
                        ("by_implication", json!(false)),
                    ]
                }
                ArcStatus::RefutedByImplication { witness_arc } => vec![
                    ("status", json!("refuted")),
                    ("witness", json!(names[witness_arc])),
                    ("by_implication", json!(true)),
                ],
                ArcStatus::ConsistentWithSuppliedArcs => vec![("status", json!("consistent"))],
            };
            fields.push(("arcs_tested", json!(c.arcs_tested)));
            fields.push((
                "indeterminate_arcs",
                Value::Array(
                    c.indeterminate_arcs
                        .iter()
                        .map(|&i| json!(names[i]))
                        .collect(),
                ),
            ));
            fields
        };
        let holds = |b: bool| json!(if b { "holds" } else { "fails" });
        let condition = |label: &str, statement: &str, mut rest: Vec<(&'static str, Value)>| {
            let mut fields = vec![("condition", json!(label)), ("statement", json!(statement))];
            fields.append(&mut rest);
            object(fields)
        };
        let conditions = vec![
            condition(
                "1_r",
                "mu_BR(V, f_t) constant over the samples",
                vec![("status", holds(r.mu_br_constant))],
            ),
            condition(
                "2_r",
                "strict valuation inequality along every arc",
                arc_condition(&r.strict_valuation),
            ),
            condition(
                "3_r",
                "weak valuation inequality along every arc",
                arc_condition(&r.weak_valuation),
            ),
            condition(
                "4_r",
                "dF/dt in the integral closure of J_F(Theta_V)",
                arc_condition(&r.integral_closure),
            ),
            condition(
                "5_r",
                "dF/dt in the radical of J_F(Theta_V)",
                vec![(
                    "status",
                    json!(if r.radical {
                        "holds"
                    } else {
                        "not-established"
                    }),
                )],
            ),
            condition(
                "6_r",
                "the polar curve does not split",
                vec![("status", holds(r.polar_no_split))],
            ),
        ];
        Ok(object(vec![
            ("deformation", json!(a.deform)),
            ("variety", json!(a.variety)),
            ("family", poly(&d.family()?)),
            ("t_derivative", poly(&d.t_derivative()?)),
            ("ideal", polys(&r.ideal)),
            (
                "samples",
                Value::Array(
                    r.constancy
                        .values
                        .iter()
                        .map(|(t, c)| object(vec![("t", rat(t)), ("mu_br", count(*c))]))
                        .collect(),
                ),
            ),
            ("conditions", Value::Array(conditions)),
            ("arcs", self.arc_rows(names, &r.arc_tests)),
            ("radical", radical_value(r.radical_result)),
            (
                "split",
                object(vec![
                    ("t0", rat(&t0)),
                    ("base_value", json!(r.split.base_value)),
                    ("local_at_origin", count(r.split.local_at_origin)),
                    ("split", json!(r.split.split)),
                ]),
            ),
        ]))
    }
}

fn radical_value(r: RadicalMembership) -> Value {
    match r {
        RadicalMembership::Member { witness_power } => object(vec![
            ("member", json!(true)),
            ("method", json!("power")),
            ("witness_power", json!(witness_power)),
        ]),
        RadicalMembership::MemberByRabinowitsch => object(vec![
            ("member", json!(true)),
            ("method", json!("rabinowitsch")),
        ]),
        RadicalMembership::NotMemberUpToKmax => {
            object(vec![("member", json!(false)), ("method", json!("none"))])
        }
    }
}

/// Inserts `key` right after `anchor` in an object payload.
fn insert_after(value: &mut Value, anchor: &str, key: &str, item: Value) {
    if let Value::Object(map) = value {
        let entries: Vec<(String, Value)> = std::mem::take(map).into_iter().collect();
        for (k, v) in entries {
            let hit = k == anchor;
            map.insert(k, v);
            if hit {
                map.insert(key.to_string(), item.clone());
            }
        }
    }
}
