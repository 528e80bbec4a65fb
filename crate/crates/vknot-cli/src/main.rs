//! Command-line front end: validate and analyze diagrams, classify corks,
//! compose, double, generate the growing-volume sequence, and report volume
//! bounds, in human-readable text or JSON.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use vknot::analysis::{
    cork_classifications, is_alternating, is_reduced, is_weakly_prime, tg_certificate,
    twist_regions, AnalysisError,
};
use vknot::carter::{trace_faces, CarterError, CorkClassification};
use vknot::compose::{
    compose_nonsingular, compose_singular, double_nonsingular, double_singular,
    infinite_volume_sequence, ComposeError, CompositionResult,
};
use vknot::gauss::{parse, parse_arc_address, Cork, GaussError, Triple, VirtualLinkDiagram};
use vknot::volume::{
    bound_report, bound_report_entries, builtin_table, cusp_bound_report, cusp_lower_bound,
    find_entry, parse_table, tet_volume_constant, VolumeEntry, VolumeError,
};

#[derive(Parser)]
#[command(
    name = "vknot",
    version,
    about = "Virtual knots as signed Gauss codes: surfaces, corks, composition, volume bounds"
)]
struct Cli {
    /// Emit one JSON document on stdout instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Volume table file to use instead of the built-in table
    #[arg(long, global = true, value_name = "PATH")]
    table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// Singular when both corks classify singular, else nonsingular
    Auto,
    Nonsingular,
    Singular,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    /// Keep the second factor's orientation
    Match,
    /// Reverse the second factor's component before gluing
    Reverse,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a diagram and report its supporting surface and predicates
    Analyze {
        /// Gauss code, or @path to a file holding one
        code: String,
    },
    /// Compose two diagrams through corks at the given arcs
    Compose {
        code1: String,
        /// Cork arc of the first diagram, as component:position
        arc1: String,
        code2: String,
        arc2: String,
        #[arg(long, value_enum, default_value_t = KindArg::Auto)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = OrientationArg::Match)]
        orientation: OrientationArg,
        /// Volume-table entry for the first factor
        #[arg(long, value_name = "ID")]
        entry1: Option<String>,
        /// Volume-table entry for the second factor
        #[arg(long, value_name = "ID")]
        entry2: Option<String>,
    },
    /// Compose a diagram with its reflection at the image cork
    Double {
        code: String,
        arc: String,
        #[arg(long, value_enum, default_value_t = KindArg::Auto)]
        kind: KindArg,
        /// Volume-table entry for the factor (used for both copies)
        #[arg(long, value_name = "ID")]
        entry: Option<String>,
    },
    /// Build the i-th member of the growing-volume family of compositions
    Sequence {
        code1: String,
        arc1: String,
        code2: String,
        arc2: String,
        /// Half the number of twist regions to create and augment
        i: usize,
        /// Twist pairs per region
        j: usize,
    },
    /// Dump the built-in volume table or validate a user table file
    Table {
        #[arg(long, conflicts_with = "load")]
        dump: bool,
        #[arg(long, value_name = "PATH")]
        load: Option<PathBuf>,
    },
    /// Volume lower bound for a composition, from two table entries
    Bound {
        #[arg(long, value_name = "ID")]
        entry1: String,
        #[arg(long, value_name = "ID")]
        entry2: String,
    },
}

/// Exit 2 for parse/validation failures, 3 for hypothesis violations.
enum CliError {
    Validation(String),
    Hypothesis(String),
}

impl CliError {
    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) => m,
            CliError::Hypothesis(m) => m,
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Hypothesis(_) => 3,
        }
    }
}

impl From<GaussError> for CliError {
    fn from(e: GaussError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<CarterError> for CliError {
    fn from(e: CarterError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Carter(inner) => CliError::Validation(inner.to_string()),
            other => CliError::Hypothesis(other.to_string()),
        }
    }
}

impl From<ComposeError> for CliError {
    fn from(e: ComposeError) -> Self {
        match e {
            ComposeError::InvalidArc(_) => CliError::Validation(e.to_string()),
            ComposeError::Carter(inner) => CliError::Validation(inner.to_string()),
            ComposeError::Gauss(inner) => CliError::Validation(inner.to_string()),
            ComposeError::Analysis(inner) => inner.into(),
            other => CliError::Hypothesis(other.to_string()),
        }
    }
}

impl From<VolumeError> for CliError {
    fn from(e: VolumeError) -> Self {
        match e {
            VolumeError::Format(_) | VolumeError::NegativeVolume { .. } => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Hypothesis(other.to_string()),
        }
    }
}

/// The machine-readable report: one JSON document per invocation.
#[derive(Serialize, Deserialize)]
struct Report {
    command: String,
    inputs: Value,
    results: Value,
    warnings: Vec<String>,
}

struct Output {
    report: Report,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&output.report).expect("report serializes")
                );
            } else {
                print!("{}", output.text);
                for warning in &output.report.warnings {
                    println!("warning: {warning}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Analyze { code } => cmd_analyze(code),
        Command::Compose {
            code1,
            arc1,
            code2,
            arc2,
            kind,
            orientation,
            entry1,
            entry2,
        } => cmd_compose(
            cli,
            code1,
            arc1,
            code2,
            arc2,
            *kind,
            *orientation,
            entry1.as_deref(),
            entry2.as_deref(),
        ),
        Command::Double {
            code,
            arc,
            kind,
            entry,
        } => cmd_double(cli, code, arc, *kind, entry.as_deref()),
        Command::Sequence {
            code1,
            arc1,
            code2,
            arc2,
            i,
            j,
        } => cmd_sequence(code1, arc1, code2, arc2, *i, *j),
        Command::Table { dump, load } => cmd_table(*dump, load.as_deref()),
        Command::Bound { entry1, entry2 } => cmd_bound(cli, entry1, entry2),
    }
}

fn read_code_arg(arg: &str) -> Result<String, CliError> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_code_arg(arg: &str) -> Result<VirtualLinkDiagram, CliError> {
    Ok(parse(&read_code_arg(arg)?)?)
}

fn triple_from_args(code: &str, arc: &str) -> Result<Triple, CliError> {
    let diagram = parse_code_arg(code)?;
    let arc = parse_arc_address(arc)?;
    Ok(Triple::new(diagram, Cork::new(arc))?)
}

fn load_table(cli: &Cli) -> Result<Vec<VolumeEntry>, CliError> {
    match &cli.table {
        Some(path) => load_table_file(path),
        None => Ok(builtin_table()),
    }
}

fn load_table_file(path: &Path) -> Result<Vec<VolumeEntry>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_table(&text)?)
}

fn classification_name(class: &CorkClassification) -> &'static str {
    match class {
        CorkClassification::Singular(_) => "singular",
        CorkClassification::NonsingularAtDiagram => "nonsingular-at-diagram",
    }
}

fn cmd_analyze(code_arg: &str) -> Result<Output, CliError> {
    let diagram = parse_code_arg(code_arg)?;
    let surface = trace_faces(&diagram)?;
    let mut warnings = Vec::new();

    let alternating = is_alternating(&diagram);
    let reduced = is_reduced(&diagram)?;
    let weakly_prime = match is_weakly_prime(&diagram) {
        Ok(b) => Some(b),
        Err(e @ AnalysisError::MultiComponentUnsupported(_)) => {
            warnings.push(e.to_string());
            None
        }
        Err(e) => return Err(e.into()),
    };
    let colorable = vknot::carter::checkerboard_coloring(&diagram)?.is_colorable();
    let witnesses: Vec<String> = vknot::carter::find_singular_witnesses(&diagram)?
        .iter()
        .map(|w| w.edge.to_string())
        .collect();
    let regions = match twist_regions(&diagram) {
        Ok(regions) => Some(
            regions
                .into_iter()
                .map(|r| r.crossings)
                .collect::<Vec<Vec<u32>>>(),
        ),
        Err(e @ AnalysisError::CyclicBigonChain { .. })
        | Err(e @ AnalysisError::OverlappingRegions { .. }) => {
            warnings.push(e.to_string());
            None
        }
        Err(e) => return Err(e.into()),
    };
    let corks: Vec<Value> = cork_classifications(&diagram)?
        .into_iter()
        .map(|(arc, class)| {
            json!({
                "arc": arc.to_string(),
                "classification": classification_name(&class),
            })
        })
        .collect();
    let certificate = match tg_certificate(&diagram) {
        Ok(cert) => Some(cert),
        Err(AnalysisError::MultiComponentUnsupported(_)) => None,
        Err(e) => return Err(e.into()),
    };

    let mut text = String::new();
    {
        use std::fmt::Write;
        writeln!(text, "diagram: {}", diagram.serialize()).unwrap();
        writeln!(
            text,
            "components: {}  crossings: {}  arcs: {}",
            diagram.component_count(),
            diagram.crossing_count(),
            diagram.arcs().len()
        )
        .unwrap();
        writeln!(
            text,
            "surface: genus {}  faces {}  euler characteristic {}",
            surface.genus,
            surface.face_count(),
            surface.euler_characteristic
        )
        .unwrap();
        writeln!(
            text,
            "alternating: {alternating}  reduced: {reduced}  weakly prime: {}",
            weakly_prime.map_or("n/a".to_string(), |b| b.to_string())
        )
        .unwrap();
        writeln!(text, "checkerboard colorable: {colorable}").unwrap();
        writeln!(
            text,
            "singular witnesses: {}",
            if witnesses.is_empty() {
                "none".to_string()
            } else {
                witnesses.join(" ")
            }
        )
        .unwrap();
        match &regions {
            Some(regions) => {
                let rendered: Vec<String> = regions
                    .iter()
                    .map(|r| {
                        format!(
                            "[{}]",
                            r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
                        )
                    })
                    .collect();
                writeln!(text, "twist regions: {}", rendered.join(" ")).unwrap();
            }
            None => writeln!(text, "twist regions: degenerate (see warnings)").unwrap(),
        }
        for cork in &corks {
            writeln!(
                text,
                "cork {}: {}",
                cork["arc"].as_str().unwrap(),
                cork["classification"].as_str().unwrap()
            )
            .unwrap();
        }
        match &certificate {
            Some(cert) => {
                let reasons: Vec<String> = cert
                    .reasons
                    .iter()
                    .map(|r| format!("{}={}", r.name, r.holds))
                    .collect();
                writeln!(
                    text,
                    "certificate: {:?} ({})",
                    cert.verdict,
                    reasons.join(" ")
                )
                .unwrap();
            }
            None => writeln!(text, "certificate: n/a (links are not certified)").unwrap(),
        }
    }

    let results = json!({
        "diagram": diagram,
        "components": diagram.component_count(),
        "crossings": diagram.crossing_count(),
        "arc_count": diagram.arcs().len(),
        "genus": surface.genus,
        "faces": surface.face_count(),
        "euler_characteristic": surface.euler_characteristic,
        "alternating": alternating,
        "reduced": reduced,
        "weakly_prime": weakly_prime,
        "checkerboard_colorable": colorable,
        "singular_witnesses": witnesses,
        "twist_regions": regions,
        "corks": corks,
        "certificate": certificate,
    });
    Ok(Output {
        report: Report {
            command: "analyze".to_string(),
            inputs: json!({ "code": code_arg }),
            results,
            warnings,
        },
        text,
    })
}

fn composition_warnings(result: &CompositionResult) -> Vec<String> {
    result
        .warnings
        .iter()
        .map(|w| match w {
            vknot::compose::CompositionWarning::BothCorksSingular => {
                "BothCorksSingular: both corks classify singular; the singular construction \
                 would drop the genus by one"
                    .to_string()
            }
        })
        .collect()
}

fn render_composition(text: &mut String, result: &CompositionResult) {
    use std::fmt::Write;
    writeln!(text, "composition: {}", result.diagram.serialize()).unwrap();
    writeln!(
        text,
        "kind: {:?}  declared genus: {}  supporting genus: {}  crossings: {}",
        result.kind,
        result.declared_genus,
        result.carter_genus,
        result.diagram.crossing_count()
    )
    .unwrap();
}

fn render_bound(text: &mut String, bound: &vknot::volume::BoundReport) {
    use std::fmt::Write;
    writeln!(
        text,
        "bound: {:?}  lower bound: {:.10}  exact: {}",
        bound.theorem, bound.lower_bound, bound.exact
    )
    .unwrap();
    for h in &bound.hypotheses {
        writeln!(
            text,
            "  hypothesis {} ({:?}): {}",
            h.name, h.status, h.detail
        )
        .unwrap();
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_compose(
    cli: &Cli,
    code1: &str,
    arc1: &str,
    code2: &str,
    arc2: &str,
    kind: KindArg,
    orientation: OrientationArg,
    entry1: Option<&str>,
    entry2: Option<&str>,
) -> Result<Output, CliError> {
    let t1 = triple_from_args(code1, arc1)?;
    let t2 = triple_from_args(code2, arc2)?;
    let matched = orientation == OrientationArg::Match;

    let result = match kind {
        KindArg::Nonsingular => compose_nonsingular(&t1, &t2, matched)?,
        KindArg::Singular => compose_singular(&t1, &t2, matched)?,
        KindArg::Auto => {
            let both_singular =
                t1.classify_cork()?.is_singular() && t2.classify_cork()?.is_singular();
            if both_singular {
                compose_singular(&t1, &t2, matched)?
            } else {
                compose_nonsingular(&t1, &t2, matched)?
            }
        }
    };
    let mut warnings = composition_warnings(&result);

    let bound = match (entry1, entry2) {
        (Some(id1), Some(id2)) => {
            let table = load_table(cli)?;
            match (find_entry(&table, id1), find_entry(&table, id2)) {
                (Some(e1), Some(e2)) => Some(bound_report(&t1, e1, &t2, e2)?),
                (missing1, missing2) => {
                    if missing1.is_none() {
                        warnings
                            .push(format!("entry {id1:?} not in the volume table; bound omitted"));
                    }
                    if missing2.is_none() {
                        warnings
                            .push(format!("entry {id2:?} not in the volume table; bound omitted"));
                    }
                    None
                }
            }
        }
        (None, None) => None,
        _ => {
            warnings.push(
                "both --entry1 and --entry2 are needed for a bound; bound omitted".to_string(),
            );
            None
        }
    };

    let mut text = String::new();
    render_composition(&mut text, &result);
    if let Some(bound) = &bound {
        render_bound(&mut text, bound);
    }

    let results = json!({
        "composition": result,
        "bound": bound,
    });
    Ok(Output {
        report: Report {
            command: "compose".to_string(),
            inputs: json!({
                "code1": code1, "arc1": arc1, "code2": code2, "arc2": arc2,
                "kind": match kind { KindArg::Auto => "auto", KindArg::Nonsingular => "nonsingular", KindArg::Singular => "singular" },
                "orientation": if matched { "match" } else { "reverse" },
                "entry1": entry1, "entry2": entry2,
            }),
            results,
            warnings,
        },
        text,
    })
}

fn cmd_double(
    cli: &Cli,
    code: &str,
    arc: &str,
    kind: KindArg,
    entry: Option<&str>,
) -> Result<Output, CliError> {
    let t = triple_from_args(code, arc)?;
    let result = match kind {
        KindArg::Nonsingular => double_nonsingular(&t)?,
        KindArg::Singular => double_singular(&t)?,
        KindArg::Auto => {
            if t.classify_cork()?.is_singular() {
                double_singular(&t)?
            } else {
                double_nonsingular(&t)?
            }
        }
    };
    let mut warnings = composition_warnings(&result);

    let bound = match entry {
        Some(id) => {
            let table = load_table(cli)?;
            match find_entry(&table, id) {
                Some(e) => Some(bound_report(&t, e, &result.factors.1, e)?),
                None => {
                    warnings.push(format!("entry {id:?} not in the volume table; bound omitted"));
                    None
                }
            }
        }
        None => None,
    };

    let mut text = String::new();
    render_composition(&mut text, &result);
    if let Some(bound) = &bound {
        render_bound(&mut text, bound);
    }

    let results = json!({
        "composition": result,
        "bound": bound,
    });
    Ok(Output {
        report: Report {
            command: "double".to_string(),
            inputs: json!({
                "code": code, "arc": arc,
                "kind": match kind { KindArg::Auto => "auto", KindArg::Nonsingular => "nonsingular", KindArg::Singular => "singular" },
                "entry": entry,
            }),
            results,
            warnings,
        },
        text,
    })
}

fn cmd_sequence(
    code1: &str,
    arc1: &str,
    code2: &str,
    arc2: &str,
    i: usize,
    j: usize,
) -> Result<Output, CliError> {
    let t1 = triple_from_args(code1, arc1)?;
    let t2 = triple_from_args(code2, arc2)?;
    let out = infinite_volume_sequence(&t1, &t2, i, j)?;
    let augmenting = out.augmented_link.augmenting_components.len();
    let total_components = out.composition.diagram.component_count();
    let cusp_bound_augmenting = cusp_lower_bound(augmenting)?;
    let cusp_bound_components = cusp_lower_bound(total_components)?;
    let bound = cusp_bound_report(
        augmenting,
        "one cusp per augmenting circle of the composition",
    )?;

    let mut text = String::new();
    {
        use std::fmt::Write;
        writeln!(
            text,
            "augmented link: {}",
            out.augmented_link.diagram.serialize()
        )
        .unwrap();
        writeln!(
            text,
            "augmenting components: {augmenting}  half-twist flags: {:?}",
            out.augmented_link.half_twist_flags
        )
        .unwrap();
        render_composition(&mut text, &out.composition);
        writeln!(
            text,
            "cusp bound from augmenting circles: {augmenting} x v3 = {cusp_bound_augmenting:.10}"
        )
        .unwrap();
        writeln!(
            text,
            "cusp bound from all components: {total_components} x v3 = {cusp_bound_components:.10}"
        )
        .unwrap();
    }

    let results = json!({
        "augmented_link": out.augmented_link,
        "composition": out.composition,
        "bound": bound,
        "cusp_bound_augmenting": cusp_bound_augmenting,
        "cusp_bound_components": cusp_bound_components,
    });
    Ok(Output {
        report: Report {
            command: "sequence".to_string(),
            inputs: json!({
                "code1": code1, "arc1": arc1, "code2": code2, "arc2": arc2, "i": i, "j": j,
            }),
            results,
            warnings: Vec::new(),
        },
        text,
    })
}

fn cmd_table(dump: bool, load: Option<&Path>) -> Result<Output, CliError> {
    let (source, entries) = match (dump, load) {
        (_, Some(path)) => (path.display().to_string(), load_table_file(path)?),
        (true, None) => ("builtin".to_string(), builtin_table()),
        (false, None) => {
            return Err(CliError::Validation(
                "table requires --dump or --load <PATH>".to_string(),
            ))
        }
    };
    let mut text = String::new();
    {
        use std::fmt::Write;
        writeln!(text, "volume table ({source}): {} entries", entries.len()).unwrap();
        for e in &entries {
            let field = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x}"));
            writeln!(
                text,
                "{}  vol={}  vol_ns={}  vol_s={}  quarter_double_vol={}  cork={}  genus={}",
                e.id,
                field(e.vol),
                field(e.vol_ns),
                field(e.vol_s),
                field(e.quarter_double_vol),
                e.cork_kind
                    .map_or("-".to_string(), |k| format!("{k:?}").to_lowercase()),
                e.genus.map_or("-".to_string(), |g| g.to_string()),
            )
            .unwrap();
        }
        writeln!(
            text,
            "v3 (ideal tetrahedron): {:.15}",
            tet_volume_constant()
        )
        .unwrap();
    }
    let results = json!({
        "source": source,
        "entries": entries,
        "tet_volume": tet_volume_constant(),
    });
    Ok(Output {
        report: Report {
            command: "table".to_string(),
            inputs: json!({ "dump": dump, "load": load.map(|p| p.display().to_string()) }),
            results,
            warnings: Vec::new(),
        },
        text,
    })
}

fn cmd_bound(cli: &Cli, id1: &str, id2: &str) -> Result<Output, CliError> {
    let table = load_table(cli)?;
    let e1 = find_entry(&table, id1)
        .ok_or_else(|| CliError::Validation(format!("entry {id1:?} not in the volume table")))?;
    let e2 = find_entry(&table, id2)
        .ok_or_else(|| CliError::Validation(format!("entry {id2:?} not in the volume table")))?;
    let bound = bound_report_entries(e1, e2)?;
    let mut text = String::new();
    render_bound(&mut text, &bound);
    Ok(Output {
        report: Report {
            command: "bound".to_string(),
            inputs: json!({ "entry1": id1, "entry2": id2 }),
            results: json!({ "bound": bound }),
            warnings: Vec::new(),
        },
        text,
    })
}
