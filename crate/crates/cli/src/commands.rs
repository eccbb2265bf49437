use std::time::Instant;

use serde_json::Value;

use simplex_interp::{
    analyze, chebyshev_nodes, minimize, regular_nodes, reproduce_row, Error, LagrangeBasis,
    NodeSet, Objective, OptimizerConfig, Precision, Scalar, TableKind, TableOptions,
};

use crate::args::{
    AnalyzeArgs, Cli, Command, CurveArgs, Format, MinimizeArgs, NodeSource, ObjectiveArg,
    TablesArgs,
};
use crate::record::{flatten, number, numbers, object, RunRecord, Table, ARTIFACT_VERSION};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NOT_CONVERGED: u8 = 3;
pub const EXIT_NUMERICAL: u8 = 4;

/// What a command prints and how the process exits.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SingularSystem { .. } => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: EXIT_INPUT,
    }
}

/// A finished command: its record plus the CSV view of the same numbers.
struct Report {
    inputs: Value,
    outputs: Value,
    csv: Table,
    code: u8,
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let prec = Precision::new(cli.precision_bits);
    let started = Instant::now();
    let (name, report) = match &cli.command {
        Command::Analyze(a) => ("analyze", cmd_analyze(a, prec, cli.digits)?),
        Command::Minimize(a) => ("minimize", cmd_minimize(a, prec, cli.digits, cli.quiet)?),
        Command::Tables(a) => ("tables", cmd_tables(a, prec, cli.digits, cli.quiet)?),
        Command::Curve(a) => ("curve", cmd_curve(a, prec, cli.digits)?),
    };
    let wall_time_ms = cli.timing.then(|| started.elapsed().as_secs_f64() * 1e3);
    let stdout = match cli.format {
        Format::Json => RunRecord {
            command: name.into(),
            inputs: report.inputs,
            outputs: report.outputs,
            precision_bits: cli.precision_bits,
            wall_time_ms,
            artifact_version: ARTIFACT_VERSION.into(),
        }
        .to_json(),
        Format::Csv => report.csv.render(),
    };
    Ok(Outcome {
        stdout,
        code: report.code,
    })
}

fn parse_nodes(text: &str, prec: Precision) -> Result<Vec<Scalar>, Failure> {
    text.split(',')
        .map(str::trim)
        .map(|t| {
            Scalar::parse(t, prec)
                .ok_or_else(|| input_error(format!("node '{t}' is not a finite number")))
        })
        .collect()
}

fn node_set(k: usize, source: &NodeSource, prec: Precision) -> Result<(NodeSet, Value), Failure> {
    if k < 1 {
        return Err(Error::InvalidDegree(k).into());
    }
    if let Some(text) = &source.nodes {
        let nodes = NodeSet::validate(parse_nodes(text, prec)?)?;
        if nodes.len() != k + 1 {
            return Err(input_error(format!(
                "degree {k} needs {} nodes, got {}",
                k + 1,
                nodes.len()
            )));
        }
        let echo = object([
            ("k", k.into()),
            ("source", "nodes".into()),
            ("nodes", text.as_str().into()),
        ]);
        return Ok((nodes, echo));
    }
    let (nodes, name) = if source.regular {
        (regular_nodes(k, prec)?, "regular")
    } else {
        (chebyshev_nodes(k, prec)?, "chebyshev")
    };
    Ok((nodes, object([("k", k.into()), ("source", name.into())])))
}

fn cmd_analyze(args: &AnalyzeArgs, prec: Precision, digits: u32) -> Result<Report, Failure> {
    let (nodes, inputs) = node_set(args.k, &args.source, prec)?;
    let basis = LagrangeBasis::build(&nodes)?;
    let report = analyze(&basis);
    let n = |x: &Scalar| number(x, digits);

    let witnesses = report
        .norm
        .witnesses
        .iter()
        .map(|w| object([("x", n(&w.x)), ("coords", numbers(&w.coords, digits))]))
        .collect();
    let one_point = match &report.one_point.point {
        Some(p) => object([
            ("exists", true.into()),
            ("x", n(&p.x)),
            ("negative_index", p.negative_index.into()),
            ("coords", numbers(&p.coords, digits)),
        ]),
        None => object([("exists", false.into())]),
    };
    let inequality = &report.inequality;
    let outputs = object([
        ("nodes", numbers(nodes.points(), digits)),
        ("abs_det", n(&basis.det().abs())),
        (
            "norm",
            object([
                ("value", n(&report.norm.value)),
                ("witnesses", Value::Array(witnesses)),
            ]),
        ),
        (
            "xi",
            object([
                ("value", n(&report.xi.value)),
                ("contained", report.xi.contained.into()),
                ("worst_index", report.xi.worst_index.into()),
                ("worst_point", n(&report.xi.worst_point)),
            ]),
        ),
        ("one_point", one_point),
        (
            "inequality",
            object([
                ("lower", n(&inequality.lower)),
                ("xi", n(&inequality.xi)),
                ("upper", n(&inequality.upper)),
                ("right_equality", inequality.right_equality.into()),
                ("ratio", inequality.ratio.as_ref().map_or(Value::Null, n)),
                ("residual", n(&inequality.residual)),
                ("one_point", inequality.one_point.into()),
            ]),
        ),
    ]);
    let csv = flatten(&outputs);
    Ok(Report {
        inputs,
        outputs,
        csv,
        code: EXIT_OK,
    })
}

fn cmd_minimize(
    args: &MinimizeArgs,
    prec: Precision,
    digits: u32,
    quiet: bool,
) -> Result<Report, Failure> {
    let objective = match args.objective {
        ObjectiveArg::Norm => Objective::Norm,
        ObjectiveArg::Xi => Objective::Xi,
    };
    let config = OptimizerConfig {
        symmetric: !args.asymmetric,
        fix_endpoints: !args.free_endpoints,
        starts: args.starts as usize,
        max_iters: args.max_iters,
        tol: args.tol,
        rng_seed: args.seed,
        precision: prec,
        ..OptimizerConfig::new(args.k, objective)
    };
    let result = minimize(&config)?;
    if !quiet && !result.converged {
        eprintln!("minimize: best start stopped at the iteration limit");
    }
    let inputs = object([
        ("k", args.k.into()),
        ("objective", objective_name(objective).into()),
        ("starts", args.starts.into()),
        ("seed", args.seed.into()),
        ("tol", args.tol.into()),
        ("max_iters", args.max_iters.into()),
        ("symmetric", (!args.asymmetric).into()),
        ("fix_endpoints", (!args.free_endpoints).into()),
    ]);
    let history = result
        .history
        .iter()
        .map(|(i, v)| object([("iteration", (*i).into()), ("value", number(v, digits))]))
        .collect();
    let outputs = object([
        ("best_nodes", numbers(result.best_nodes.points(), digits)),
        ("best_value", number(&result.best_value, digits)),
        ("evaluations", result.evaluations.into()),
        ("converged", result.converged.into()),
        ("history", Value::Array(history)),
    ]);
    let csv = flatten(&outputs);
    let code = if result.converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    };
    Ok(Report {
        inputs,
        outputs,
        csv,
        code,
    })
}

fn objective_name(objective: Objective) -> &'static str {
    match objective {
        Objective::Norm => "norm",
        Objective::Xi => "xi",
    }
}

fn cmd_tables(
    args: &TablesArgs,
    prec: Precision,
    digits: u32,
    quiet: bool,
) -> Result<Report, Failure> {
    let kind = match args.table {
        1 => TableKind::Theta,
        2 => TableKind::XiMin,
        3 => TableKind::Regular,
        4 => TableKind::Chebyshev,
        other => return Err(input_error(format!("unknown table {other}"))),
    };
    let mut options = TableOptions::new(kind);
    options.starts = args.starts as usize;
    options.rng_seed = args.seed;
    options.precision = prec;
    if let Some(kmax) = args.kmax {
        options.kmax = kmax as usize;
    }
    let header = ["k", "value", "companion", "abs_det"];
    let mut csv = Table {
        header: header.iter().map(|h| h.to_string()).collect(),
        rows: Vec::new(),
    };
    let mut rows = Vec::new();
    for k in 1..=options.kmax {
        let row = reproduce_row(k, kind, &options)?;
        if !quiet && matches!(kind, TableKind::Theta | TableKind::XiMin) {
            eprintln!("table {}: k = {k} done", args.table);
        }
        let cells = [
            Value::from(k),
            number(&row.value, digits),
            number(&row.companion, digits),
            number(&row.abs_det, digits),
        ];
        csv.rows
            .push(cells.iter().map(crate::record::cell).collect());
        rows.push(Value::Object(
            header.iter().map(|h| h.to_string()).zip(cells).collect(),
        ));
    }
    let inputs = object([
        ("table", args.table.into()),
        ("kmax", options.kmax.into()),
        ("starts", args.starts.into()),
        ("seed", args.seed.into()),
    ]);
    let outputs = object([("rows", Value::Array(rows))]);
    Ok(Report {
        inputs,
        outputs,
        csv,
        code: EXIT_OK,
    })
}

fn cmd_curve(args: &CurveArgs, prec: Precision, digits: u32) -> Result<Report, Failure> {
    let (nodes, mut inputs) = node_set(args.k, &args.source, prec)?;
    let basis = LagrangeBasis::build(&nodes)?;
    let samples = args.samples as i64;
    inputs["samples"] = samples.into();
    let (k, d) = (nodes.degree(), nodes.len());
    let mut header = vec!["x".to_string()];
    header.extend((1..=k).map(|i| format!("t{i}")));
    header.extend((1..=d).map(|j| format!("lambda{j}")));
    header.push("lebesgue".into());
    let mut csv = Table {
        header,
        rows: Vec::new(),
    };
    let mut rows = Vec::new();
    for i in 0..samples {
        let x = Scalar::from_ratio(2 * i - (samples - 1), samples - 1, prec);
        let mut powers = Vec::with_capacity(k);
        let mut p = x.clone();
        for _ in 0..k {
            powers.push(p.clone());
            p *= &x;
        }
        let lambdas = basis.barycentric_coords(&x);
        let lebesgue = lambdas
            .iter()
            .fold(Scalar::zero(prec), |acc, l| acc + l.abs());
        let mut cells = vec![number(&x, digits)];
        cells.extend(powers.iter().map(|t| number(t, digits)));
        cells.extend(lambdas.iter().map(|l| number(l, digits)));
        cells.push(number(&lebesgue, digits));
        csv.rows
            .push(cells.iter().map(crate::record::cell).collect());
        rows.push(object([
            ("x", number(&x, digits)),
            ("t", numbers(&powers, digits)),
            ("lambda", numbers(&lambdas, digits)),
            ("lebesgue", number(&lebesgue, digits)),
        ]));
    }
    let outputs = object([("rows", Value::Array(rows))]);
    Ok(Report {
        inputs,
        outputs,
        csv,
        code: EXIT_OK,
    })
}
