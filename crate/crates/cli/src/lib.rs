//! File formats and command implementations for the `lexmax` binary.
//!
//! All rationals in files are `"num/den"` (or `"int"`) strings; solutions
//! are sorted element-index arrays. Identical inputs and flags produce
//! byte-identical outputs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use lexmax::elems::ElemSet;
use lexmax::harness::{
    eligible_chain, generate_instance, sweep, tightness_example, verify_bound, ChainReport, GenKind,
    GenParams, Instance, InstanceKind, SweepBatch, SweepConfig, SweepReport, VerificationReport,
    VerifyOptions,
};
use lexmax::matching::WeightedGraph;
use lexmax::matroid::{LinearMatroid, Matroid};
use lexmax::weights::{lex_signature, parse_rational, rational_serde, Rational, Weight};
use lexmax::{Error, OracleLimits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

/// On-disk instance document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InstanceFile {
    Matching {
        vertex_count: usize,
        edges: Vec<EdgeSpec>,
    },
    Intersection {
        matroid1: MatroidDesc,
        matroid2: MatroidDesc,
        /// Element id -> weight; ids must be dense `0..n-1`.
        weights: BTreeMap<ElementId, Weight>,
    },
}

/// A ground-set element id used as a JSON object key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ElementId(pub usize);

impl Serialize for ElementId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for ElementId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map(ElementId).map_err(|_| {
            serde::de::Error::custom(format!("element id `{text}` is not a nonnegative integer"))
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub u: usize,
    pub v: usize,
    pub w: Weight,
}

/// Matroid descriptor; the ground size is implied by the weight map.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidDesc {
    Uniform {
        rank: usize,
    },
    Partition {
        blocks: Vec<Vec<usize>>,
        capacities: Vec<usize>,
    },
    Graphic {
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Rows of exact rationals ("num/den" strings; negatives allowed).
    Linear {
        rows: Vec<Vec<String>>,
    },
    Explicit {
        independent_sets: Vec<Vec<usize>>,
    },
}

impl MatroidDesc {
    fn build(&self, ground_size: usize) -> Result<Matroid, Error> {
        match self {
            MatroidDesc::Uniform { rank } => Ok(Matroid::uniform(ground_size, *rank)),
            MatroidDesc::Partition { blocks, capacities } => {
                Matroid::partition(ground_size, blocks, capacities)
            }
            MatroidDesc::Graphic { vertex_count, edges } => {
                if edges.len() != ground_size {
                    return Err(Error::InvalidParameter(format!(
                        "graphic matroid has {} edges but the instance has {} elements",
                        edges.len(),
                        ground_size
                    )));
                }
                Matroid::graphic(*vertex_count, edges.clone())
            }
            MatroidDesc::Linear { rows } => {
                let parsed: Result<Vec<Vec<Rational>>, Error> =
                    rows.iter().map(|row| row.iter().map(|s| parse_rational(s)).collect()).collect();
                let matrix = LinearMatroid::new(parsed?)?;
                if matrix.ground_size() != ground_size {
                    return Err(Error::InvalidParameter(format!(
                        "linear matroid has {} columns but the instance has {} elements",
                        matrix.ground_size(),
                        ground_size
                    )));
                }
                Ok(Matroid::Linear(matrix))
            }
            MatroidDesc::Explicit { independent_sets } => Ok(Matroid::explicit(
                ground_size,
                independent_sets.iter().map(|s| s.iter().copied().collect::<ElemSet>()),
            )),
        }
    }

    fn from_matroid(matroid: &Matroid) -> Self {
        match matroid {
            Matroid::Uniform { rank, .. } => MatroidDesc::Uniform { rank: *rank },
            Matroid::Partition { block_of, capacities } => {
                let mut blocks = vec![Vec::new(); capacities.len()];
                for (e, &b) in block_of.iter().enumerate() {
                    blocks[b].push(e);
                }
                MatroidDesc::Partition { blocks, capacities: capacities.clone() }
            }
            Matroid::Graphic { vertex_count, edges } => {
                MatroidDesc::Graphic { vertex_count: *vertex_count, edges: edges.clone() }
            }
            Matroid::Linear(matrix) => MatroidDesc::Linear {
                rows: matrix
                    .rows()
                    .iter()
                    .map(|row| row.iter().map(|x| x.to_string()).collect())
                    .collect(),
            },
            Matroid::Explicit { family, .. } => {
                let mut sets: Vec<Vec<usize>> = family.iter().map(ElemSet::to_vec).collect();
                sets.sort();
                MatroidDesc::Explicit { independent_sets: sets }
            }
        }
    }
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        match &instance.kind {
            InstanceKind::Matching(graph) => InstanceFile::Matching {
                vertex_count: graph.vertex_count(),
                edges: graph
                    .edges()
                    .iter()
                    .map(|(u, v, w)| EdgeSpec { u: *u, v: *v, w: w.clone() })
                    .collect(),
            },
            InstanceKind::Intersection { m1, m2, weights } => InstanceFile::Intersection {
                matroid1: MatroidDesc::from_matroid(m1),
                matroid2: MatroidDesc::from_matroid(m2),
                weights: weights.iter().cloned().enumerate().map(|(e, w)| (ElementId(e), w)).collect(),
            },
        }
    }

    pub fn into_instance(self, label: String) -> Result<Instance, Error> {
        let kind = match self {
            InstanceFile::Matching { vertex_count, edges } => {
                let edges = edges.into_iter().map(|e| (e.u, e.v, e.w)).collect();
                InstanceKind::Matching(WeightedGraph::new(vertex_count, edges)?)
            }
            InstanceFile::Intersection { matroid1, matroid2, weights } => {
                let n = weights.len();
                let mut dense: Vec<Option<Weight>> = vec![None; n];
                for (ElementId(id), w) in weights {
                    if id >= n {
                        return Err(Error::InvalidParameter(format!(
                            "element ids must be dense 0..{n}, found {id}"
                        )));
                    }
                    dense[id] = Some(w);
                }
                let weights: Vec<Weight> =
                    dense.into_iter().map(|w| w.expect("dense ids checked by count")).collect();
                InstanceKind::Intersection { m1: matroid1.build(n)?, m2: matroid2.build(n)?, weights }
            }
        };
        Ok(Instance { kind, seed: 0, label })
    }
}

/// `solve` output document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SolveOutput {
    pub objective: String,
    /// Sorted element indices of the solution.
    pub solution: ElemSet,
    #[serde(with = "rational_serde")]
    pub weight: Rational,
    pub signature: Vec<usize>,
}

/// `verify` output document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerifyOutput {
    pub instance: String,
    pub report: VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub chain: Option<ChainReport>,
}

/// `sweep` output document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SweepOutput {
    pub config: SweepConfigFile,
    pub report: SweepReport,
}

/// Sweep configuration document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepConfigFile {
    #[serde(default)]
    pub batches: Vec<SweepBatchFile>,
    /// Middle weights for the tightness family, each in (1, 2].
    #[serde(default)]
    pub tightness: Vec<String>,
    #[serde(default = "default_true")]
    pub vice_versa: bool,
    #[serde(default = "default_true")]
    pub chains: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepBatchFile {
    pub kind: String,
    pub seed: u64,
    pub count: usize,
    #[serde(default = "default_levels")]
    pub weight_levels: usize,
    #[serde(default = "default_alpha_min")]
    pub alpha_min: String,
    #[serde(default = "default_alpha_max")]
    pub alpha_max: String,
    #[serde(default = "default_max_vertices")]
    pub max_vertices: usize,
    #[serde(default = "default_max_edges")]
    pub max_edges: usize,
    #[serde(default = "default_max_ground")]
    pub max_ground: usize,
}

fn default_levels() -> usize {
    2
}
fn default_alpha_min() -> String {
    "1".into()
}
fn default_alpha_max() -> String {
    "3".into()
}
fn default_max_vertices() -> usize {
    8
}
fn default_max_edges() -> usize {
    12
}
fn default_max_ground() -> usize {
    9
}

fn parse_kind(kind: &str) -> Result<GenKind, Error> {
    match kind {
        "matching" => Ok(GenKind::Matching),
        "intersection" => Ok(GenKind::Intersection),
        other => Err(Error::InvalidParameter(format!(
            "unknown kind `{other}` (expected `matching` or `intersection`)"
        ))),
    }
}

impl SweepBatchFile {
    fn to_params(&self) -> Result<GenParams, Error> {
        let mut params = GenParams::new(parse_kind(&self.kind)?, self.seed);
        params.weight_levels = self.weight_levels;
        params.alpha_min = parse_rational(&self.alpha_min)?;
        params.alpha_max = parse_rational(&self.alpha_max)?;
        params.max_vertices = self.max_vertices;
        params.max_edges = self.max_edges;
        params.max_ground = self.max_ground;
        Ok(params)
    }
}

impl SweepConfigFile {
    fn to_config(&self, limits: OracleLimits) -> Result<SweepConfig, Error> {
        let mut batches = Vec::new();
        for batch in &self.batches {
            batches.push(SweepBatch { params: batch.to_params()?, count: batch.count });
        }
        let tightness: Result<Vec<Rational>, Error> =
            self.tightness.iter().map(|s| parse_rational(s)).collect();
        Ok(SweepConfig {
            batches,
            tightness: tightness?,
            vice_versa: self.vice_versa,
            chains: self.chains,
            limits,
        })
    }
}

/// The configuration used by `lexmax sweep` when no file is given.
pub const DEFAULT_SWEEP_CONFIG: &str = include_str!("../assets/default_sweep.json");

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_)
        | Error::InvalidWeight(_)
        | Error::InvalidBase(_)
        | Error::GenerationError(_)
        | Error::UnknownElement(_) => EXIT_BAD_INPUT,
        _ => EXIT_SOLVER,
    }
}

fn fail(err: &Error) -> i32 {
    eprintln!("error: {err}");
    exit_code_for(err)
}

/// Reads and validates an instance file, reporting parse problems on
/// stderr with the bad-input exit code.
pub fn read_instance_file(path: &Path) -> Result<Instance, i32> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_BAD_INPUT
    })?;
    let file: InstanceFile = serde_json::from_str(&text).map_err(|e| {
        eprintln!("error: cannot parse {}: {e}", path.display());
        EXIT_BAD_INPUT
    })?;
    file.into_instance(path.display().to_string()).map_err(|e| fail(&e))
}

/// Serializes a document with a stable layout and trailing newline.
fn render<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable documents");
    text.push('\n');
    text
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), i32> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            EXIT_BAD_INPUT
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Solve an instance file for one objective and write the solution document.
pub fn cmd_solve(input: &Path, objective: &str, output: Option<&Path>) -> i32 {
    let instance = match read_instance_file(input) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let classes = instance.classes();
    let solved = match objective {
        "max-weight" => instance.solve_max_weight(),
        "lex-max" => instance.solve_lex_max().map(|(set, _, weight)| (set, weight)),
        other => {
            eprintln!("error: unknown objective `{other}` (expected `max-weight` or `lex-max`)");
            return EXIT_BAD_INPUT;
        }
    };
    match solved {
        Ok((solution, weight)) => {
            let signature = lex_signature(&solution, &classes).expect("solution within ground set");
            let doc = SolveOutput {
                objective: objective.to_string(),
                solution,
                weight,
                signature: signature.counts().to_vec(),
            };
            match emit(&render(&doc), output) {
                Ok(()) => EXIT_OK,
                Err(code) => code,
            }
        }
        Err(err) => fail(&err),
    }
}

/// Options for `cmd_verify` beyond the instance itself.
pub struct VerifyArgs {
    pub chain: bool,
    pub vice_versa: bool,
    pub output: Option<PathBuf>,
}

/// Verify the bound/threshold claims on an instance (from a file or a
/// generator spec). Exit 0 iff every requested check passed.
pub fn cmd_verify(instance: Instance, args: &VerifyArgs) -> i32 {
    let limits = lexmax::oracle_limits();
    let options = VerifyOptions { vice_versa: args.vice_versa, limits };
    let report = match verify_bound(&instance, &options) {
        Ok(r) => r,
        Err(err) => return fail(&err),
    };
    let chain = if args.chain {
        match eligible_chain(&instance, None, &limits) {
            Ok(c) => Some(c),
            Err(err) => return fail(&err),
        }
    } else {
        None
    };
    let passed = report.passed && chain.as_ref().is_none_or(|c| c.passed);
    let doc = VerifyOutput { instance: instance.label.clone(), report, chain };
    if let Some(counterexample) = &doc.report.counterexample {
        eprintln!(
            "equivalence violated: optimum {:?} is not lex-maximal (lex-maximal: {:?})",
            counterexample.optimum.to_vec(),
            counterexample.lex_maximal.to_vec()
        );
    }
    if let Err(code) = emit(&render(&doc), args.output.as_deref()) {
        return code;
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Generator parameters for `gen` / `verify --gen`.
pub struct GenArgs {
    pub kind: String,
    pub seed: u64,
    pub count: usize,
    pub weight_levels: usize,
    pub alpha_min: String,
    pub alpha_max: String,
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_ground: usize,
}

impl GenArgs {
    pub fn to_params(&self, seed: u64) -> Result<GenParams, Error> {
        let mut params = GenParams::new(parse_kind(&self.kind)?, seed);
        params.weight_levels = self.weight_levels;
        params.alpha_min = parse_rational(&self.alpha_min)?;
        params.alpha_max = parse_rational(&self.alpha_max)?;
        params.max_vertices = self.max_vertices;
        params.max_edges = self.max_edges;
        params.max_ground = self.max_ground;
        Ok(params)
    }
}

/// Write `count` deterministic instance files into a directory. Re-running
/// with the same flags reproduces identical bytes.
pub fn cmd_gen(args: &GenArgs, out_dir: &Path) -> i32 {
    if let Err(e) = fs::create_dir_all(out_dir) {
        eprintln!("error: cannot create {}: {e}", out_dir.display());
        return EXIT_BAD_INPUT;
    }
    for offset in 0..args.count {
        let params = match args.to_params(args.seed + offset as u64) {
            Ok(p) => p,
            Err(err) => return fail(&err),
        };
        let instance = match generate_instance(&params) {
            Ok(i) => i,
            Err(err) => return fail(&err),
        };
        let doc = InstanceFile::from_instance(&instance);
        let name = format!("{}-{:05}.json", args.kind, args.seed + offset as u64);
        if let Err(e) = fs::write(out_dir.join(&name), render(&doc)) {
            eprintln!("error: cannot write {name}: {e}");
            return EXIT_BAD_INPUT;
        }
    }
    EXIT_OK
}

/// Generate one instance in memory for `verify --gen`.
pub fn gen_single(args: &GenArgs) -> Result<Instance, i32> {
    let params = args.to_params(args.seed).map_err(|e| fail(&e))?;
    generate_instance(&params).map_err(|e| fail(&e))
}

/// Run a sweep from a config file (or the bundled default) and write the
/// aggregate report. Exit 0 iff every instance passed.
pub fn cmd_sweep(config_path: Option<&Path>, output: Option<&Path>) -> i32 {
    let text = match config_path {
        Some(path) => match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return EXIT_BAD_INPUT;
            }
        },
        None => DEFAULT_SWEEP_CONFIG.to_string(),
    };
    let config_file: SweepConfigFile = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: cannot parse sweep config: {e}");
            return EXIT_BAD_INPUT;
        }
    };
    let config = match config_file.to_config(lexmax::oracle_limits()) {
        Ok(c) => c,
        Err(err) => return fail(&err),
    };
    let report = match sweep(&config) {
        Ok(r) => r,
        Err(err) => return fail(&err),
    };
    let all_passed = report.all_passed;
    if !all_passed {
        for batch in &report.batches {
            for label in &batch.failed {
                eprintln!("failed: {label}");
            }
        }
    }
    let doc = SweepOutput { config: config_file, report };
    if let Err(code) = emit(&render(&doc), output) {
        return code;
    }
    if all_passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Build the tightness instance for `verify --tightness`.
pub fn tightness_instance(x: &str) -> Result<Instance, i32> {
    let x = parse_rational(x).map_err(|e| fail(&e))?;
    tightness_example(&x).map_err(|e| fail(&e))
}
