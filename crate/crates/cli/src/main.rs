//! lcmlat: command-line tools for finite atomic lattices and the monomial
//! ideals that realize them.
//!
//! Every subcommand reads JSON files (lattices as atom-support families,
//! ideals as exponent maps, labelings, trees, simplicial complexes, support
//! families), runs one operation from the library, and prints a JSON run
//! report to stdout: the command line, a sha256 digest per input, and the
//! operation's verdicts and witnesses. Verification commands encode their
//! verdict in the exit code — 0 yes, 1 no, 2 bad input — so pipelines can
//! branch without parsing the report. `--out` writes the primary artifact
//! (an ideal, a labeling, a lattice, DOT text) to a file for chaining into
//! the next command.
//!
//! Reports contain no timestamps unless `--timing` is given, so identical
//! invocations produce byte-identical output.

mod report;

use std::path::{Path, PathBuf};
use std::process::exit;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use lcmlat::coordinatize::x_strata;
use lcmlat::families::{is_reduced_family, restriction_connected};
use lcmlat::json::{to_json_string, ComplexJson, FamilyJson, IdealJson, LabelingJson, LatticeJson, TreeJson};
use lcmlat::strata::{covers_above, is_maximal_in_stratum, StratumReport};
use lcmlat::{
    check_cmstar_conditions, check_tree_proposition, deficit_labeling, dot, enumerate_l_with_workers,
    faridi_ideal, faridi_labeling, floystad_tree_ideal, generate_ideal, graded_betti,
    is_coordinatization, lcm_lattice, minimal_squarefree, nearly_scarf, subtree_lattice,
    supports_resolution, Error, FieldSpec, FiniteAtomicLattice, Labeling, LnUniverse,
    ResolutionVerdict, Result,
};

use report::{
    atoms_value, betti_value, ideal_value, labeling_value, lattice_value, lcm_lattice_value,
    read_input, read_input_text, value_of, Artifact, Outcome,
};

#[derive(Parser)]
#[command(
    name = "lcmlat",
    version,
    about = "lcm lattices, coordinatizations, Betti numbers, and the stratified universe L(n)"
)]
struct Cli {
    /// Coefficient field for homology: q, f2, or f<p>.
    #[arg(long, global = true, default_value = "q")]
    field: String,

    /// Seed echoed into the report, for pipelines that record their runs.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Suppress the JSON report on stdout.
    #[arg(long, global = true)]
    quiet: bool,

    /// Write the primary artifact here (JSON, or DOT text for export-dot);
    /// `strata enum` treats the path as a directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Include wall-clock timing in the report. Off by default so identical
    /// runs emit identical bytes.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the lcm lattice of a monomial ideal.
    LcmLattice {
        /// Ideal file: {"variables": [...], "generators": [{"x": 1}, ...]}.
        ideal: PathBuf,
    },

    /// Generate the monomial ideal of a labeled lattice: one generator per
    /// atom, multiplying the labels outside the atom's filter.
    Coordinatize {
        /// Labeling file, or a lattice file when LABELING is also given.
        #[arg(value_name = "LABELING|LATTICE")]
        first: PathBuf,
        /// Labels file bound against the lattice in the first argument.
        labeling: Option<PathBuf>,
    },

    /// Decide whether a labeling coordinatizes its lattice: the induced
    /// labeling must label every meet-irreducible (C1) with each variable's
    /// carriers forming a chain (C2). Exit 0 yes, 1 no.
    Verify {
        #[arg(value_name = "LABELING|LATTICE")]
        first: PathBuf,
        labeling: Option<PathBuf>,
    },

    /// Compute the deficit labeling of an ideal's lcm lattice — the
    /// canonical coordinatization that regenerates the ideal.
    Deficit {
        ideal: PathBuf,
    },

    /// Peel the layer decomposition of one variable of a labeling: the sets
    /// of elements above the atoms realizing each exponent in turn.
    StrataX {
        #[arg(value_name = "LABELING|LATTICE")]
        first: PathBuf,
        labeling: Option<PathBuf>,
        /// Variable to decompose by.
        #[arg(long)]
        var: String,
    },

    /// Run one of the named ideal/lattice constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),

    /// Graded Betti numbers of an ideal (via its lcm lattice) or of a
    /// lattice given directly, from crosscut homology over --field.
    Betti {
        /// Ideal or lattice file; the schema is detected from its fields.
        input: PathBuf,
    },

    /// Test whether a simplicial complex on the generators supports a free
    /// resolution of the ideal, and whether that resolution is minimal.
    /// Exit 0 when it supports one, 1 when it does not.
    Supports {
        complex: PathBuf,
        ideal: PathBuf,
    },

    /// Run the three CM_*(X) conditions for a support family against a
    /// complex, plus the connectivity and reducedness diagnostics.
    /// Exit 0 when all three conditions hold, 1 otherwise.
    CmstarCheck {
        complex: PathBuf,
        family: PathBuf,
        /// Cover-size parameter d of condition 1.
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },

    /// Enumerate the universe L(n) and work with its Betti strata.
    #[command(subcommand)]
    Strata(StrataCmd),

    /// Render a lattice as DOT, optionally annotated with labelings.
    ExportDot {
        lattice: PathBuf,
        /// Labeling annotation, repeatable: TAG=FILE (or just FILE).
        #[arg(long = "labeling", value_name = "TAG=FILE")]
        labelings: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Nearly Scarf ideal of a non-simplex complex: one variable per face,
    /// one generator per vertex.
    NearlyScarf {
        complex: PathBuf,
        /// Also give the empty face a variable (a common unit-label
        /// convention; the lattice is unchanged).
        #[arg(long)]
        include_empty_face: bool,
    },

    /// Minimal squarefree coordinatization of a lattice: one fresh variable
    /// per meet-irreducible.
    Phan {
        lattice: PathBuf,
    },

    /// Facet-ideal labeling of a complex: variables on the facets of the
    /// augmented face poset's meet-irreducibles.
    Faridi {
        complex: PathBuf,
    },

    /// Tree ideal of a tree: one generator per vertex from the edge splits.
    FloystadTree {
        tree: PathBuf,
    },

    /// Subtree lattice of a tree: joins of vertex sets of subtrees.
    SubtreeLattice {
        tree: PathBuf,
    },
}

#[derive(Subcommand)]
enum StrataCmd {
    /// Enumerate L(n) and group the members by total Betti numbers.
    /// With --out DIR, writes members.json, strata.json, and (n <= 3)
    /// hasse.dot into the directory.
    Enum {
        #[arg(long)]
        atoms: usize,
        /// Worker threads for the enumeration; the output is identical for
        /// any worker count.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Allow n = 5 (enumeration only; the strata are skipped).
        #[arg(long)]
        allow_large: bool,
    },

    /// Compare a tree's subtree lattice against each of its covers in L(V):
    /// every cover must have strictly larger total Betti numbers.
    /// Exit 0 when all do, 1 otherwise.
    CheckTree {
        tree: PathBuf,
        /// Allow 6-vertex trees.
        #[arg(long)]
        allow_large: bool,
    },

    /// Test whether a lattice is maximal inside its Betti stratum of L(n).
    /// Exit 0 when maximal, 1 otherwise.
    Maximal {
        lattice: PathBuf,
        #[arg(long)]
        atoms: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let field = match FieldSpec::parse(&cli.field) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            exit(2);
        }
    };

    let mut inputs = Vec::new();
    let outcome = match dispatch(&cli.command, field, &mut inputs) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            exit(2);
        }
    };

    if let Some(out) = &cli.out {
        if let Err(e) = write_artifact(out, outcome.artifact.as_ref()) {
            eprintln!("error: {e}");
            exit(2);
        }
    }

    if !cli.quiet {
        let mut root = Map::new();
        root.insert(
            "command".into(),
            Value::Array(std::env::args().skip(1).map(Value::String).collect()),
        );
        root.insert("inputs".into(), Value::Array(inputs));
        if let Some(ok) = outcome.verdict {
            root.insert("verdict".into(), json!(ok));
        }
        for (k, v) in &outcome.payload {
            root.insert(k.clone(), v.clone());
        }
        if let Some(seed) = cli.seed {
            root.insert("seed".into(), json!(seed));
        }
        if cli.timing {
            root.insert(
                "timing_ms".into(),
                json!(started.elapsed().as_millis() as u64),
            );
        }
        print!("{}", to_json_string(&Value::Object(root)));
    }

    exit(match outcome.verdict {
        Some(false) => 1,
        _ => 0,
    });
}

fn write_artifact(out: &Path, artifact: Option<&Artifact>) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Io(format!("{}: {e}", out.display()));
    match artifact {
        None => Ok(()),
        Some(Artifact::Json(v)) => std::fs::write(out, to_json_string(v)).map_err(io_err),
        Some(Artifact::Text(s)) => std::fs::write(out, s).map_err(io_err),
        Some(Artifact::Dir(files)) => {
            std::fs::create_dir_all(out).map_err(io_err)?;
            for (name, contents) in files {
                let path = out.join(name);
                std::fs::write(&path, contents)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(())
        }
    }
}

fn dispatch(command: &Command, field: FieldSpec, inputs: &mut Vec<Value>) -> Result<Outcome> {
    match command {
        Command::LcmLattice { ideal } => cmd_lcm_lattice(ideal, inputs),
        Command::Coordinatize { first, labeling } => {
            cmd_coordinatize(first, labeling.as_deref(), inputs)
        }
        Command::Verify { first, labeling } => cmd_verify(first, labeling.as_deref(), inputs),
        Command::Deficit { ideal } => cmd_deficit(ideal, inputs),
        Command::StrataX {
            first,
            labeling,
            var,
        } => cmd_strata_x(first, labeling.as_deref(), var, inputs),
        Command::Construct(c) => cmd_construct(c, inputs),
        Command::Betti { input } => cmd_betti(input, field, inputs),
        Command::Supports { complex, ideal } => cmd_supports(complex, ideal, field, inputs),
        Command::CmstarCheck {
            complex,
            family,
            dim,
        } => cmd_cmstar(complex, family, *dim, field, inputs),
        Command::Strata(c) => cmd_strata(c, field, inputs),
        Command::ExportDot { lattice, labelings } => cmd_export_dot(lattice, labelings, inputs),
    }
}

/// Loads a (lattice, labeling) pair from either a single labeling file with
/// an embedded or referenced lattice, or an explicit lattice file followed
/// by a labels file. The explicit lattice wins over any embedded one.
fn load_pair(
    first: &Path,
    second: Option<&Path>,
    inputs: &mut Vec<Value>,
) -> Result<(FiniteAtomicLattice, Labeling)> {
    match second {
        Some(labels_path) => {
            let lattice = read_input::<LatticeJson>(first, inputs)?.to_lattice()?;
            let json: LabelingJson = read_input(labels_path, inputs)?;
            let labeling = json.labels_for(&lattice)?;
            Ok((lattice, labeling))
        }
        None => {
            let json: LabelingJson = read_input(first, inputs)?;
            json.to_parts(first.parent())
        }
    }
}

fn cmd_lcm_lattice(ideal_path: &Path, inputs: &mut Vec<Value>) -> Result<Outcome> {
    let ideal = read_input::<IdealJson>(ideal_path, inputs)?.to_ideal()?;
    let lcm = lcm_lattice(&ideal)?;
    let artifact = lcm_lattice_value(&lcm);
    let mut payload = Map::new();
    payload.insert("lcm_lattice".into(), artifact.clone());
    payload.insert("n_atoms".into(), json!(lcm.lattice.n_atoms()));
    payload.insert("n_elements".into(), json!(lcm.lattice.len()));
    payload.insert(
        "top".into(),
        json!(lcm.label(lcm.lattice.top()).display(&lcm.variables)),
    );
    Ok(Outcome::new(payload).with_artifact(Artifact::Json(artifact)))
}

fn cmd_coordinatize(
    first: &Path,
    second: Option<&Path>,
    inputs: &mut Vec<Value>,
) -> Result<Outcome> {
    let (lattice, labeling) = load_pair(first, second, inputs)?;
    let ideal = generate_ideal(&lattice, &labeling);
    let artifact = ideal_value(&ideal);
    let mut payload = Map::new();
    payload.insert("ideal".into(), artifact.clone());
    payload.insert("display".into(), json!(ideal.display()));
    Ok(Outcome::new(payload).with_artifact(Artifact::Json(artifact)))
}

fn cmd_verify(first: &Path, second: Option<&Path>, inputs: &mut Vec<Value>) -> Result<Outcome> {
    let (lattice, labeling) = load_pair(first, second, inputs)?;
    let verdict = is_coordinatization(&lattice, &labeling);
    let names = verdict.induced.variables.names().to_vec();
    let violations: Vec<Value> = verdict
        .c2
        .violations
        .iter()
        .map(|&(v, p, q)| json!({"variable": names[v], "p": p, "q": q}))
        .collect();
    let mut payload = Map::new();
    payload.insert(
        "induced".into(),
        labeling_value(&lattice, &verdict.induced),
    );
    payload.insert(
        "c1".into(),
        json!({"pass": verdict.c1.pass, "unlabeled": verdict.c1.unlabeled}),
    );
    payload.insert(
        "c2".into(),
        json!({"pass": verdict.c2.pass, "violations": violations}),
    );
    payload.insert(
        "lcm_lattice_matches".into(),
        value_of(&verdict.lcm_lattice_matches),
    );
    Ok(Outcome::new(payload)
        .with_verdict(verdict.is_coordinatization)
        .with_artifact(Artifact::Json(labeling_value(&lattice, &verdict.induced))))
}

fn cmd_deficit(ideal_path: &Path, inputs: &mut Vec<Value>) -> Result<Outcome> {
    let ideal = read_input::<IdealJson>(ideal_path, inputs)?.to_ideal()?;
    let lcm = lcm_lattice(&ideal)?;
    let deficit = deficit_labeling(&lcm);
    let artifact = labeling_value(&lcm.lattice, &deficit);
    let display: Map<String, Value> = deficit
        .labeled_elements()
        .map(|(p, m)| (p.to_string(), json!(m.display(&deficit.variables))))
        .collect();
    let mut payload = Map::new();
    payload.insert("labeling".into(), artifact.clone());
    payload.insert("support".into(), value_of(&deficit.support()));
    payload.insert("display".into(), Value::Object(display));
    Ok(Outcome::new(payload).with_artifact(Artifact::Json(artifact)))
}

fn cmd_strata_x(
    first: &Path,
    second: Option<&Path>,
    var: &str,
    inputs: &mut Vec<Value>,
) -> Result<Outcome> {
    let (lattice, labeling) = load_pair(first, second, inputs)?;
    let v = labeling
        .variables
        .id(var)
        .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
    let strata = x_strata(&lattice, &labeling, v)?;
    let layers: Vec<Value> = strata
        .layers
        .iter()
        .map(|layer| {
            json!({
                "exponent": layer.exponent,
                "elements": layer.elements,
                "unique_maximal": layer.unique_maximal,
            })
        })
        .collect();
    let mut payload = Map::new();
    payload.insert("variable".into(), json!(var));
    payload.insert("max_exponent".into(), json!(strata.max_exponent));
    payload.insert("layers".into(), Value::Array(layers));
    payload.insert("residual".into(), value_of(&strata.residual));
    payload.insert(
        "residual_is_bottom_only".into(),
        json!(strata.residual_is_bottom_only),
    );
    let artifact = Value::Object(payload.clone());
    Ok(Outcome::new(payload).with_artifact(Artifact::Json(artifact)))
}

fn cmd_construct(command: &ConstructCmd, inputs: &mut Vec<Value>) -> Result<Outcome> {
    let mut payload = Map::new();
    let artifact;
    match command {
        ConstructCmd::NearlyScarf {
            complex,
            include_empty_face,
        } => {
            let delta = read_input::<ComplexJson>(complex, inputs)?.to_complex()?;
            let (lattice, labeling, ideal) = nearly_scarf(&delta, *include_empty_face)?;
            artifact = ideal_value(&ideal);
            payload.insert("lattice".into(), lattice_value(&lattice));
            payload.insert("labeling".into(), labeling_value(&lattice, &labeling));
            payload.insert("ideal".into(), artifact.clone());
            payload.insert("display".into(), json!(ideal.display()));
        }
        ConstructCmd::Phan { lattice } => {
            let lattice = read_input::<LatticeJson>(lattice, inputs)?.to_lattice()?;
            let (labeling, ideal) = minimal_squarefree(&lattice)?;
            artifact = labeling_value(&lattice, &labeling);
            payload.insert("labeling".into(), artifact.clone());
            payload.insert("ideal".into(), ideal_value(&ideal));
            payload.insert("display".into(), json!(ideal.display()));
        }
        ConstructCmd::Faridi { complex } => {
            let delta = read_input::<ComplexJson>(complex, inputs)?.to_complex()?;
            let (lattice, labeling) = faridi_labeling(&delta)?;
            let ideal = faridi_ideal(&delta)?;
            artifact = ideal_value(&ideal);
            payload.insert("lattice".into(), lattice_value(&lattice));
            payload.insert("labeling".into(), labeling_value(&lattice, &labeling));
            payload.insert("ideal".into(), artifact.clone());
            payload.insert("display".into(), json!(ideal.display()));
        }
        ConstructCmd::FloystadTree { tree } => {
            let tree = read_input::<TreeJson>(tree, inputs)?.to_tree()?;
            let ideal = floystad_tree_ideal(&tree);
            artifact = ideal_value(&ideal);
            payload.insert("ideal".into(), artifact.clone());
            payload.insert("display".into(), json!(ideal.display()));
            payload.insert("generators".into(), value_of(&ideal.display_generators()));
        }
        ConstructCmd::SubtreeLattice { tree } => {
            let tree = read_input::<TreeJson>(tree, inputs)?.to_tree()?;
            let lattice = subtree_lattice(&tree)?;
            artifact = lattice_value(&lattice);
            payload.insert("lattice".into(), artifact.clone());
            payload.insert("n_elements".into(), json!(lattice.len()));
        }
    }
    Ok(Outcome::new(payload).with_artifact(Artifact::Json(artifact)))
}

fn cmd_betti(input: &Path, field: FieldSpec, inputs: &mut Vec<Value>) -> Result<Outcome> {
    let text = read_input_text(input, inputs)?;
    let raw: Value = lcmlat::json::parse_json(&text)?;
    let is_ideal = raw.get("generators").is_some();
    let mut payload = Map::new();
    let table = if is_ideal {
        let ideal = serde_json::from_value::<IdealJson>(raw)
            .map_err(|e| Error::Parse(format!("not a valid ideal: {e}")))?
            .to_ideal()?;
        let lcm = lcm_lattice(&ideal)?;
        let monomials: Map<String, Value> = (0..lcm.lattice.len())
            .map(|p| (p.to_string(), json!(lcm.label(p).display(&lcm.variables))))
            .collect();
        payload.insert("element_monomials".into(), Value::Object(monomials));
        graded_betti(&lcm.lattice, field)
    } else if raw.get("elements").is_some() {
        let lattice = serde_json::from_value::<LatticeJson>(raw)
            .map_err(|e| Error::Parse(format!("not a valid lattice: {e}")))?
            .to_lattice()?;
        graded_betti(&lattice, field)
    } else {
        return Err(Error::Parse(
            "expected an ideal ({\"variables\", \"generators\"}) or a lattice \
             ({\"n_atoms\", \"elements\"})"
                .into(),
        ));
    };
    let artifact = betti_value(&table);
    payload.insert("betti".into(), artifact.clone());
    payload.insert("field".into(), json!(field_name(field)));
    Ok(Outcome::new(payload).with_artifact(Artifact::Json(artifact)))
}

fn field_name(field: FieldSpec) -> String {
    match field {
        FieldSpec::Rationals => "q".into(),
        FieldSpec::Prime(p) => format!("f{p}"),
    }
}

fn cmd_supports(
    complex_path: &Path,
    ideal_path: &Path,
    field: FieldSpec,
    inputs: &mut Vec<Value>,
) -> Result<Outcome> {
    let x = read_input::<ComplexJson>(complex_path, inputs)?.to_complex()?;
    let ideal = read_input::<IdealJson>(ideal_path, inputs)?.to_ideal()?;
    let rep = supports_resolution(&x, &ideal, field)?;
    let verdict_name = match rep.verdict {
        ResolutionVerdict::SupportsMinimally => "supports_minimally",
        ResolutionVerdict::Supports => "supports",
        ResolutionVerdict::DoesNotSupport => "does_not_support",
    };
    let failing: Vec<Value> = rep
        .failing
        .iter()
        .map(|(p, hom)| json!({"element": p, "homology": hom}))
        .collect();
    let mut payload = Map::new();
    payload.insert("resolution".into(), json!(verdict_name));
    payload.insert("failing".into(), Value::Array(failing));
    payload.insert("face_vector".into(), value_of(&rep.face_vector));
    payload.insert("betti_totals".into(), value_of(&rep.betti_totals));
    payload.insert("field".into(), json!(field_name(field)));
    Ok(Outcome::new(payload).with_verdict(rep.verdict != ResolutionVerdict::DoesNotSupport))
}

fn cmd_cmstar(
    complex_path: &Path,
    family_path: &Path,
    d: usize,
    field: FieldSpec,
    inputs: &mut Vec<Value>,
) -> Result<Outcome> {
    let x = read_input::<ComplexJson>(complex_path, inputs)?.to_complex()?;
    let family = read_input::<FamilyJson>(family_path, inputs)?.to_family()?;
    let rep = check_cmstar_conditions(&x, &family, d, field)?;

    let c1_witnesses: Vec<Value> = rep
        .condition1
        .witnesses
        .iter()
        .map(|subset| {
            Value::Array(
                subset
                    .iter()
                    .map(|&i| json!(family.name(i)))
                    .collect(),
            )
        })
        .collect();
    let c2_witnesses: Vec<Value> = rep
        .condition2
        .witnesses
        .iter()
        .map(|&w| atoms_value(w))
        .collect();
    let c3_witnesses: Vec<Value> = rep
        .condition3
        .witnesses
        .iter()
        .map(|&(f, g)| json!({"f": atoms_value(f), "g": atoms_value(g)}))
        .collect();

    let mut disconnected = Vec::new();
    for (i, s) in family.members().enumerate() {
        if !restriction_connected(&x, s)? {
            disconnected.push(family.name(i).to_string());
        }
    }
    let (reduced, broken) = is_reduced_family(&family);

    let mut payload = Map::new();
    payload.insert("d".into(), json!(d));
    payload.insert("field".into(), json!(field_name(field)));
    payload.insert(
        "condition1".into(),
        json!({"pass": rep.condition1.pass, "witnesses": c1_witnesses}),
    );
    payload.insert(
        "condition2".into(),
        json!({"pass": rep.condition2.pass, "witnesses": c2_witnesses}),
    );
    payload.insert(
        "condition3".into(),
        json!({"pass": rep.condition3.pass, "witnesses": c3_witnesses}),
    );
    payload.insert(
        "restrictions_connected".into(),
        json!({
            "pass": disconnected.is_empty(),
            "failing": disconnected,
        }),
    );
    payload.insert(
        "reduced".into(),
        json!({
            "pass": reduced,
            "witness": broken.map(|(i, parts)| {
                json!({"member": family.name(i), "parts": parts})
            }),
        }),
    );
    Ok(Outcome::new(payload).with_verdict(rep.all_pass()))
}

fn cmd_strata(command: &StrataCmd, field: FieldSpec, inputs: &mut Vec<Value>) -> Result<Outcome> {
    match command {
        StrataCmd::Enum {
            atoms,
            workers,
            allow_large,
        } => cmd_strata_enum(*atoms, *workers, *allow_large, field),
        StrataCmd::CheckTree { tree, allow_large } => {
            let tree = read_input::<TreeJson>(tree, inputs)?.to_tree()?;
            let rep = check_tree_proposition(&tree, field, *allow_large)?;
            let covers: Vec<Value> = rep
                .covers
                .iter()
                .map(|c| {
                    json!({
                        "added": atoms_value(c.added),
                        "totals": c.totals,
                        "strictly_greater": c.strictly_greater,
                        "strict_in_b2": c.strict_in_b2,
                    })
                })
                .collect();
            let mut payload = Map::new();
            payload.insert("base_totals".into(), value_of(&rep.base_totals));
            payload.insert("covers".into(), Value::Array(covers));
            payload.insert("field".into(), json!(field_name(field)));
            Ok(Outcome::new(payload).with_verdict(rep.all_strictly_greater))
        }
        StrataCmd::Maximal { lattice, atoms } => {
            let lattice = read_input::<LatticeJson>(lattice, inputs)?.to_lattice()?;
            if lattice.n_atoms() != *atoms {
                return Err(Error::AtomCountMismatch(lattice.n_atoms(), *atoms));
            }
            let universe = enumerate_l_with_workers(*atoms, 1, false)?;
            let index = universe
                .index_of(lattice.elements())
                .ok_or_else(|| {
                    Error::InvalidFamily(format!(
                        "the lattice is not a member of L({atoms})"
                    ))
                })?;
            let (maximal, counterexample) = is_maximal_in_stratum(&universe, index, field);
            let mut payload = Map::new();
            payload.insert("index".into(), json!(index));
            payload.insert("n_covers".into(), json!(covers_above(&universe, index).len()));
            payload.insert(
                "counterexample".into(),
                match counterexample {
                    None => Value::Null,
                    Some(j) => json!({
                        "index": j,
                        "elements": value_of(&LatticeJson::from_lattice(&universe.lattice(j)).elements),
                    }),
                },
            );
            payload.insert("field".into(), json!(field_name(field)));
            Ok(Outcome::new(payload).with_verdict(maximal))
        }
    }
}

fn cmd_strata_enum(
    atoms: usize,
    workers: usize,
    allow_large: bool,
    field: FieldSpec,
) -> Result<Outcome> {
    let universe = enumerate_l_with_workers(atoms, workers, allow_large)?;
    let mut payload = Map::new();
    payload.insert("n".into(), json!(atoms));
    payload.insert("count".into(), json!(universe.len()));
    payload.insert("field".into(), json!(field_name(field)));

    let mut files: Vec<(String, String)> = Vec::new();
    files.push(("members.json".into(), members_json(&universe)));

    // The strata require homology on every member; past n = 4 only the
    // enumeration itself is within reach.
    if atoms <= 4 {
        let rep = lcmlat::betti_strata(&universe, field);
        let strata_value = strata_report_value(&rep);
        payload.insert("strata".into(), strata_value.clone());
        payload.insert(
            "n_strata".into(),
            json!(rep.strata.len()),
        );
        files.push((
            "strata.json".into(),
            to_json_string(&strata_value),
        ));
    }
    if atoms <= 3 {
        files.push(("hasse.dot".into(), dot::dot_universe(&universe, field)?));
    }
    Ok(Outcome::new(payload).with_artifact(Artifact::Dir(files)))
}

fn members_json(universe: &LnUniverse) -> String {
    let members: Vec<Value> = (0..universe.len())
        .map(|i| {
            Value::Array(
                universe
                    .family(i)
                    .iter()
                    .map(|&s| atoms_value(s))
                    .collect(),
            )
        })
        .collect();
    to_json_string(&json!({
        "n_atoms": universe.n_atoms(),
        "members": members,
    }))
}

fn strata_report_value(rep: &StratumReport) -> Value {
    let strata: Vec<Value> = rep
        .strata
        .iter()
        .map(|(totals, members)| {
            json!({
                "totals": totals,
                "size": members.len(),
                "members": members,
            })
        })
        .collect();
    json!({
        "strata": strata,
        "maximal": rep.maximal,
    })
}

fn cmd_export_dot(
    lattice_path: &Path,
    labeling_args: &[String],
    inputs: &mut Vec<Value>,
) -> Result<Outcome> {
    let lattice = read_input::<LatticeJson>(lattice_path, inputs)?.to_lattice()?;
    let mut named: Vec<(String, Labeling)> = Vec::new();
    for arg in labeling_args {
        let (tag, file) = match arg.split_once('=') {
            Some((tag, file)) => (tag.to_string(), PathBuf::from(file)),
            None => {
                let path = PathBuf::from(arg);
                let tag = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| arg.clone());
                (tag, path)
            }
        };
        let json: LabelingJson = read_input(&file, inputs)?;
        named.push((tag, json.labels_for(&lattice)?));
    }
    let annotations: Vec<(&str, &Labeling)> = named
        .iter()
        .map(|(tag, labeling)| (tag.as_str(), labeling))
        .collect();
    let text = dot::dot_lattice(&lattice, &annotations);
    let mut payload = Map::new();
    payload.insert("dot".into(), json!(text.clone()));
    Ok(Outcome::new(payload).with_artifact(Artifact::Text(text)))
}
