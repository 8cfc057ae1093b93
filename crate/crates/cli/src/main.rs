use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use edgecone::oracle::{cross_validate, OracleGate, ValidationOptions, ValidationReport};
use edgecone::{
    canonical_representation, cone_dimension, coordinate_faces, facets, full_representation,
    has_perfect_matching, integer_decompose, membership, parse_graph, ConeRepresentation,
    Decomposition, EnumerationGate, Error, Graph, Halfspace, Hyperplane, MatchingAnswer,
    Membership, RationalVector, Tag, Witness,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "edgecone", version, about = "Edge cones of finite simple graphs")]
struct Cli {
    /// Largest vertex count for which independent sets are enumerated.
    #[arg(long, global = true, default_value_t = EnumerationGate::DEFAULT_MAX_N)]
    max_n: usize,
    /// Also cross-check the graph against the brute-force oracles.
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the edge cone.
    Dim { file: PathBuf },
    /// Full halfspace representation over all independent sets.
    Repr { file: PathBuf },
    /// Unique irreducible representation of a connected bipartite graph.
    Canonical { file: PathBuf },
    /// Facets, plus the coordinate faces that are not facets.
    Facets { file: PathBuf },
    /// Membership of a point given as comma-separated rationals, e.g. "3/2,0,1".
    Member { file: PathBuf, vector: String },
    /// Decomposition of an integer point into edge vectors.
    Decompose { file: PathBuf, vector: String },
    /// Perfect matching or a Hall-violating independent set.
    Matching { file: PathBuf },
    /// Cross-check every derived answer against the oracles.
    Validate { file: PathBuf },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Dim { file }
            | Command::Repr { file }
            | Command::Canonical { file }
            | Command::Facets { file }
            | Command::Member { file, .. }
            | Command::Decompose { file, .. }
            | Command::Matching { file }
            | Command::Validate { file } => file,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Dim { .. } => "dim",
            Command::Repr { .. } => "repr",
            Command::Canonical { .. } => "canonical",
            Command::Facets { .. } => "facets",
            Command::Member { .. } => "member",
            Command::Decompose { .. } => "decompose",
            Command::Matching { .. } => "matching",
            Command::Validate { .. } => "validate",
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LoopEdge { .. }
            | Error::DuplicateEdge { .. }
            | Error::MalformedLine { .. }
            | Error::InvalidRational { .. }
            | Error::DimensionMismatch { .. }
            | Error::NonInteger { .. }
            | Error::VertexOutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

struct Output {
    document: Value,
    summary: String,
    passed: bool,
}

fn labels(g: &Graph, set: impl IntoIterator<Item = usize>) -> Vec<&str> {
    set.into_iter().map(|v| g.label(v)).collect()
}

fn tag_json(g: &Graph, tag: &Tag) -> Value {
    match tag {
        Tag::Coordinate { vertex } => json!({"kind": "coordinate", "vertex": g.label(*vertex)}),
        Tag::IndependentSet { set } => {
            json!({"kind": "independent_set", "set": labels(g, set.iter())})
        }
        Tag::AffineComponent { component } => json!({
            "kind": "affine_component",
            "component": labels(g, g.components()[*component].vertices.iter()),
        }),
    }
}

fn tag_text(g: &Graph, tag: &Tag) -> String {
    match tag {
        Tag::Coordinate { vertex } => format!("x[{}]", g.label(*vertex)),
        Tag::IndependentSet { set } => format!("H{}", g.display_set(set)),
        Tag::AffineComponent { component } => {
            format!("hull{}", g.display_set(&g.components()[*component].vertices))
        }
    }
}

fn hyperplane_json(g: &Graph, h: &Hyperplane) -> Value {
    json!({"normal": h.normal(), "tag": tag_json(g, h.tag())})
}

fn halfspace_json(g: &Graph, h: &Halfspace) -> Value {
    json!({
        "normal": h.hyperplane.normal(),
        "sense": h.sense.to_string(),
        "tag": tag_json(g, h.hyperplane.tag()),
    })
}

fn representation_json(g: &Graph, rep: &ConeRepresentation) -> Value {
    json!({
        "kind": format!("{:?}", rep.kind).to_lowercase(),
        "equations": rep.equations.iter().map(|h| hyperplane_json(g, h)).collect::<Vec<_>>(),
        "halfspaces": rep.halfspaces.iter().map(|h| halfspace_json(g, h)).collect::<Vec<_>>(),
    })
}

fn witness_json(g: &Graph, w: &Witness) -> Value {
    match w {
        Witness::Halfspace { halfspace, value } => json!({
            "constraint": halfspace_json(g, halfspace),
            "value": value.to_string(),
            "excess": w.excess().to_string(),
        }),
        Witness::Equation { equation, value } => json!({
            "constraint": hyperplane_json(g, equation),
            "value": value.to_string(),
            "excess": w.excess().to_string(),
        }),
    }
}

fn edge_json(g: &Graph, k: usize) -> Value {
    let (a, b) = g.edges()[k];
    json!([g.label(a), g.label(b)])
}

fn report_json(report: &ValidationReport) -> Value {
    serde_json::to_value(report).expect("report serializes")
}

fn parse_vector(g: &Graph, text: &str) -> Result<RationalVector, Failure> {
    let x = RationalVector::parse_list(text)?;
    if x.len() != g.vertex_count() {
        return Err(Failure::Usage(format!(
            "vector has {} coordinates, graph has {} vertices",
            x.len(),
            g.vertex_count()
        )));
    }
    Ok(x)
}

fn run(cli: &Cli, g: &Graph) -> Result<Output, Failure> {
    let gate = EnumerationGate(cli.max_n);
    let out = match &cli.command {
        Command::Dim { .. } => {
            let d = cone_dimension(g);
            Output {
                document: json!({"dimension": d}),
                summary: format!("dimension {d}"),
                passed: true,
            }
        }
        Command::Repr { .. } => {
            let rep = full_representation(g, gate)?;
            Output {
                summary: format!(
                    "{} equations, {} halfspaces",
                    rep.equations.len(),
                    rep.halfspaces.len()
                ),
                document: json!({"representation": representation_json(g, &rep)}),
                passed: true,
            }
        }
        Command::Canonical { .. } => {
            let rep = canonical_representation(g, gate)?;
            let tags: Vec<String> = rep
                .halfspaces
                .iter()
                .map(|h| tag_text(g, h.hyperplane.tag()))
                .collect();
            Output {
                summary: format!("canonical halfspaces: {}", tags.join(" ")),
                document: json!({"representation": representation_json(g, &rep)}),
                passed: true,
            }
        }
        Command::Facets { .. } => {
            let found = facets(g, gate)?;
            let faces = coordinate_faces(g);
            let facet_docs: Vec<Value> = found
                .iter()
                .map(|f| {
                    let coordinates: Vec<&str> = faces
                        .iter()
                        .filter(|c| c.is_facet && c.generators_on == f.generators_on)
                        .map(|c| g.label(c.vertex))
                        .collect();
                    json!({
                        "halfspace": halfspace_json(g, &f.halfspace),
                        "coordinate_aliases": coordinates,
                        "edges_on": f.generators_on.iter().map(|&k| edge_json(g, k)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let non_facets: Vec<Value> = faces
                .iter()
                .filter(|c| !c.is_facet)
                .map(|c| json!({"vertex": g.label(c.vertex), "face_dimension": c.dimension}))
                .collect();
            let mut summary = format!("{} facets:", found.len());
            for f in &found {
                summary.push(' ');
                summary.push_str(&tag_text(g, f.halfspace.hyperplane.tag()));
            }
            for c in faces.iter().filter(|c| !c.is_facet) {
                summary.push_str(&format!(
                    "\nx[{}] = 0 is a face of dimension {}, not a facet",
                    g.label(c.vertex),
                    c.dimension
                ));
            }
            Output {
                document: json!({
                    "dimension": cone_dimension(g),
                    "facet_count": found.len(),
                    "facets": facet_docs,
                    "non_facet_coordinate_faces": non_facets,
                }),
                summary,
                passed: true,
            }
        }
        Command::Member { vector, .. } => {
            let x = parse_vector(g, vector)?;
            match membership(g, &x, gate)? {
                Membership::Inside => Output {
                    document: json!({"point": x.to_string(), "member": true}),
                    summary: "inside the cone".into(),
                    passed: true,
                },
                Membership::Outside(w) => Output {
                    summary: format!("outside the cone, violates {}", tag_text(g, w.tag())),
                    document: json!({
                        "point": x.to_string(),
                        "member": false,
                        "witness": witness_json(g, &w),
                    }),
                    passed: true,
                },
            }
        }
        Command::Decompose { vector, .. } => {
            let x = parse_vector(g, vector)?;
            let b = x.to_integers()?;
            match integer_decompose(g, &b)? {
                Decomposition::Found(d) => {
                    let terms: Vec<Value> = d
                        .multiplicities
                        .iter()
                        .map(|(&k, &m)| json!({"edge": edge_json(g, k), "multiplicity": m}))
                        .collect();
                    Output {
                        summary: format!("{} edge vectors sum to the point", d.total()),
                        document: json!({"point": b, "decomposable": true, "terms": terms}),
                        passed: true,
                    }
                }
                Decomposition::Absent(w) => Output {
                    summary: format!("no decomposition, violates {}", tag_text(g, w.tag())),
                    document: json!({
                        "point": b,
                        "decomposable": false,
                        "witness": witness_json(g, &w),
                    }),
                    passed: true,
                },
            }
        }
        Command::Matching { .. } => match has_perfect_matching(g, gate)? {
            MatchingAnswer::Matching(edges) => Output {
                summary: format!("perfect matching with {} edges", edges.len()),
                document: json!({
                    "perfect_matching": true,
                    "matching": edges.iter().map(|&k| edge_json(g, k)).collect::<Vec<_>>(),
                }),
                passed: true,
            },
            MatchingAnswer::HallViolator(a) => {
                let n_a = g.neighbor_set(&a)?;
                Output {
                    summary: format!(
                        "no perfect matching: {} has only {} neighbours",
                        g.display_set(&a),
                        n_a.len()
                    ),
                    document: json!({
                        "perfect_matching": false,
                        "certificate": {
                            "independent_set": labels(g, a.iter()),
                            "neighbors": labels(g, n_a.iter()),
                        },
                    }),
                    passed: true,
                }
            }
        },
        Command::Validate { .. } => {
            let report = cross_validate(g, &validation_options(gate));
            Output {
                summary: validation_summary(&report),
                passed: report.passed,
                document: json!({"validation": report_json(&report)}),
            }
        }
    };
    Ok(out)
}

fn validation_options(gate: EnumerationGate) -> ValidationOptions {
    ValidationOptions {
        gate,
        oracle_gate: OracleGate::default(),
        ..ValidationOptions::default()
    }
}

fn validation_summary(report: &ValidationReport) -> String {
    report
        .checks
        .iter()
        .map(|c| format!("{} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail))
        .collect::<Vec<_>>()
        .join("\n")
}

fn plain(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                plain(v, &key, out);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: {}\n", parts.join(" ")));
        }
        Value::Array(items) => {
            for (k, v) in items.iter().enumerate() {
                plain(v, &format!("{prefix}[{k}]"), out);
            }
        }
        _ => out.push_str(&format!("{prefix}: {}\n", scalar(value))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("({})", items.iter().map(scalar).collect::<Vec<_>>().join(" ")),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let path = cli.command.file();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let g = match parse_graph(&text) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let mut output = match run(&cli, &g) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    if cli.oracle && !matches!(cli.command, Command::Validate { .. }) {
        let report = cross_validate(&g, &validation_options(EnumerationGate(cli.max_n)));
        output.passed &= report.passed;
        output.summary.push('\n');
        output.summary.push_str(&validation_summary(&report));
        output.document["validation"] = report_json(&report);
    }

    let mut document = json!({
        "command": cli.command.name(),
        "vertices": g.labels(),
    });
    if let (Value::Object(head), Value::Object(body)) = (&mut document, output.document) {
        head.extend(body);
    }
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&document).expect("document serializes") + "\n",
        Format::Plain => {
            let mut s = String::new();
            plain(&document, "", &mut s);
            s
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(rendered.as_bytes()).is_err() {
        return ExitCode::from(2);
    }
    if std::io::stderr().is_terminal() {
        eprintln!("{}", output.summary);
    }
    if output.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
