//! The `drtoolkit` command line.
//!
//! Exit codes: 0 success, 1 property refuted or certificate rejected,
//! 2 input or usage error, 3 search bounds exhausted.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::action::{parse_action, ActionError, GroupAction};
use crate::builders::{parse_presentation, random_complex, standard, Requirement};
use crate::certificate::{self, Bounds, Certificate, CertificateError};
use crate::complex::{barycentric_subdivision, parse_letters, Cycle, Path, TwoComplex};
use crate::construct::{equivariant_filling, orbit_graph, ConstructError};
use crate::diagram::{fill_cycle, DiagramError};
use crate::dr::{brute_force_core_oracle, decide_dr, greedy_core, sphere_search, CoreResult, DrBounds, DrCertificate, DrStatus};
use crate::homotopy::homology;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BOUNDS: i32 = 3;

pub const SEED_VAR: &str = "DRTOOLKIT_SEED";

#[derive(Parser, Debug)]
#[command(name = "drtoolkit", version, about = "Diagrammatic reducibility, fillings and fixed points of finite 2-complexes")]
struct Cli {
    #[command(flatten)]
    bounds: BoundArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long, global = true, default_value_t = Bounds::default().max_area)]
    max_area: usize,
    #[arg(long, global = true, default_value_t = Bounds::default().max_perimeter)]
    max_perimeter: usize,
    #[arg(long, global = true, default_value_t = Bounds::default().max_states)]
    max_states: usize,
    #[arg(long, global = true, default_value_t = Bounds::default().group_limit)]
    group_limit: usize,
    #[arg(long, global = true, default_value_t = Bounds::default().oracle_face_limit)]
    oracle_limit: usize,
    #[arg(long, global = true, default_value_t = Bounds::default().sphere_area)]
    sphere_area: usize,
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        Bounds {
            max_area: self.max_area,
            max_perimeter: self.max_perimeter,
            max_states: self.max_states,
            group_limit: self.group_limit,
            oracle_face_limit: self.oracle_limit,
            sphere_area: self.sphere_area,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a complex file for well-formedness.
    Validate { file: PathBuf },
    /// Print the Euler characteristic.
    Euler { file: PathBuf },
    /// Print Betti numbers and torsion.
    Homology {
        file: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Print the barycentric subdivision.
    Subdivide { file: PathBuf },
    #[command(subcommand)]
    Dr(DrCommand),
    /// Search a minimal-area van Kampen diagram for a cycle.
    Fill {
        file: PathBuf,
        #[arg(long)]
        cycle: String,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    #[command(subcommand)]
    Action(ActionCommand),
    #[command(subcommand)]
    Construct(ConstructCommand),
    #[command(subcommand)]
    Gen(GenCommand),
    /// Replay a certificate file.
    Verify { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum DrCommand {
    /// Greedy free-face core.
    Core {
        file: PathBuf,
        /// Cross-check against the exhaustive search over face sets.
        #[arg(long)]
        oracle: bool,
    },
    /// DR, NotDR or Unknown with a certificate.
    Decide {
        file: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Exit 1 unless the verdict is DR.
        #[arg(long)]
        assert_dr: bool,
    },
    /// Look for a reduced spherical diagram of area at most --sphere-area.
    SphereSearch {
        file: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ActionCommand {
    /// Close the generators into a group and report inversions.
    Check { complex: PathBuf, action: PathBuf },
    /// Print the fixed subcomplex of the whole group.
    Fixed {
        complex: PathBuf,
        action: PathBuf,
        /// Subdivide first when the action has inversions.
        #[arg(long)]
        subdivide: bool,
    },
    Orbits { complex: PathBuf, action: PathBuf },
    /// Collapse whole orbits of free faces.
    Collapse { complex: PathBuf, action: PathBuf },
    /// Find a vertex fixed by the whole group.
    Fixedpoint {
        complex: PathBuf,
        action: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check that fixed sets of stabilizer subgroups are contractible.
    Classify { complex: PathBuf, action: PathBuf },
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// Union of the translates of a minimal embedded path.
    OrbitGraph {
        complex: PathBuf,
        action: PathBuf,
        /// `<start> <letters...>`
        #[arg(long)]
        path: String,
    },
    /// Equivariantly fill an invariant subgraph.
    EquivariantFilling { complex: PathBuf, action: PathBuf, graph: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// A named complex such as `torus`, `n_gon_disk:5` or `subdivided:torus:1`.
    Standard { name: String },
    /// A seeded random complex; the seed defaults to DRTOOLKIT_SEED, then 0.
    Random {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        max_faces: usize,
        #[arg(long, default_value_t = 4)]
        max_word_length: usize,
        /// Grow a collapsible complex.
        #[arg(long)]
        dr: bool,
    },
    /// `<a, b | a b A B>`
    Presentation { presentation: String },
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn input(message: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

fn refuted(message: impl ToString) -> Failure {
    Failure { code: EXIT_REFUTED, message: message.to_string() }
}

fn exhausted(message: impl ToString) -> Failure {
    Failure { code: EXIT_BOUNDS, message: message.to_string() }
}

impl From<ActionError> for Failure {
    fn from(e: ActionError) -> Failure {
        match e {
            ActionError::LimitExceeded(_) | ActionError::PreconditionsNotCertified(_) => exhausted(e),
            ActionError::HasInversions(_) | ActionError::OrbitClash(_) => refuted(e),
            _ => input(e),
        }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Failure {
        match e {
            ConstructError::BoundsExhausted(_) | ConstructError::PreconditionsNotCertified(_) => exhausted(e),
            ConstructError::Action(a) => a.into(),
            ConstructError::Diagram(DiagramError::BoundsExhausted) => exhausted(e),
            ConstructError::NotEmbedded | ConstructError::Invalid(_) | ConstructError::Map(_) => input(e),
            _ => refuted(e),
        }
    }
}

type Outcome = Result<(String, i32), Failure>;

fn read(path: &FsPath) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write_file(path: &FsPath, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load(path: &FsPath) -> Result<TwoComplex, Failure> {
    let x = TwoComplex::from_text(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
    if !x.is_valid() {
        return Err(input(format!("{}: {}", path.display(), x.validate().to_string().trim())));
    }
    Ok(x)
}

fn load_action(complex: &FsPath, action: &FsPath, bounds: &Bounds) -> Result<GroupAction, Failure> {
    let x = Arc::new(load(complex)?);
    Ok(parse_action(x, &read(action)?, bounds.group_limit)?)
}

fn save_cert(path: &Option<PathBuf>, c: &Certificate, out: &mut String) -> Result<(), Failure> {
    if let Some(p) = path {
        write_file(p, &c.to_json())?;
        writeln!(out, "certificate written to {}", p.display()).unwrap();
    }
    Ok(())
}

/// Runs the command line on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = stream.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli) -> Outcome {
    let bounds = cli.bounds.bounds();
    let mut out = String::new();
    let code = match cli.command {
        Command::Validate { file } => {
            let x = TwoComplex::from_text(&read(&file)?).map_err(|e| input(format!("{}: {e}", file.display())))?;
            let report = x.validate();
            if report.is_valid() {
                writeln!(out, "valid: {} vertices, {} edges, {} faces", x.num_vertices(), x.num_edges(), x.num_faces()).unwrap();
                EXIT_OK
            } else {
                write!(out, "{report}").unwrap();
                EXIT_REFUTED
            }
        }
        Command::Euler { file } => {
            writeln!(out, "{}", load(&file)?.euler_characteristic()).unwrap();
            EXIT_OK
        }
        Command::Homology { file, cert } => {
            let x = load(&file)?;
            let h = homology(&x);
            writeln!(out, "{h}\neuler {}", h.euler_characteristic()).unwrap();
            save_cert(&cert, &certificate::emit_homology(&x, bounds), &mut out)?;
            EXIT_OK
        }
        Command::Subdivide { file } => {
            out = barycentric_subdivision(&load(&file)?).complex.to_text();
            EXIT_OK
        }
        Command::Dr(c) => dr(c, bounds, &mut out)?,
        Command::Fill { file, cycle, cert } => {
            let x = Arc::new(load(&file)?);
            let letters = parse_letters(&cycle).ok_or_else(|| input(format!("cannot read cycle {cycle:?}")))?;
            let gamma = Cycle::from_letters(&x, letters).ok_or_else(|| input(format!("{cycle:?} is not a closed walk")))?;
            match fill_cycle(&x, &gamma, &bounds.fill()) {
                Ok(Some(d)) => {
                    writeln!(out, "area {}", d.area()).unwrap();
                    out.push_str(&d.to_text());
                    save_cert(&cert, &certificate::emit_filling(&x, &gamma, &d, bounds), &mut out)?;
                    EXIT_OK
                }
                Ok(None) => return Err(refuted(format!("{gamma} is not null-homotopic"))),
                Err(DiagramError::BoundsExhausted) => {
                    return Err(exhausted(format!("no filling of {gamma} within area {}", bounds.max_area)))
                }
                Err(e) => return Err(input(e)),
            }
        }
        Command::Action(c) => action(c, bounds, &mut out)?,
        Command::Construct(c) => construct(c, bounds, &mut out)?,
        Command::Gen(c) => {
            out = match c {
                GenCommand::Standard { name } => standard(&name).map_err(input)?.to_text(),
                GenCommand::Random { seed, max_faces, max_word_length, dr } => {
                    let seed = match seed {
                        Some(s) => s,
                        None => match std::env::var(SEED_VAR) {
                            Ok(v) => v.trim().parse().map_err(|_| input(format!("{SEED_VAR}={v:?} is not a seed")))?,
                            Err(_) => 0,
                        },
                    };
                    if max_faces == 0 || max_word_length == 0 {
                        return Err(input("--max-faces and --max-word-length must be positive"));
                    }
                    let require = if dr { Requirement::SimplyConnectedDr } else { Requirement::Any };
                    random_complex(seed, max_faces, max_word_length, require).to_text()
                }
                GenCommand::Presentation { presentation } => parse_presentation(&presentation).map_err(input)?.to_text(),
            };
            EXIT_OK
        }
        Command::Verify { file } => match certificate::verify_json(&read(&file)?) {
            Ok(c) => {
                writeln!(out, "verified: {}", claim_summary(&c)).unwrap();
                EXIT_OK
            }
            Err(CertificateError::Malformed(m)) => return Err(input(format!("malformed certificate: {m}"))),
            Err(e) => return Err(refuted(format!("rejected: {e}"))),
        },
    };
    Ok((out, code))
}

fn claim_summary(c: &Certificate) -> String {
    serde_json::to_string(&c.claim).unwrap_or_default()
}

fn dr(c: DrCommand, bounds: Bounds, out: &mut String) -> Result<i32, Failure> {
    let dr_bounds = DrBounds { fill: bounds.fill(), sphere_area: bounds.sphere_area };
    match c {
        DrCommand::Core { file, oracle } => {
            let x = load(&file)?;
            let core = greedy_core(&x);
            match &core {
                CoreResult::Collapsible(order) => {
                    let steps: Vec<String> = order.iter().map(|(e, f)| format!("{e}:{f}")).collect();
                    writeln!(out, "collapsible {}", steps.join(" ")).unwrap();
                }
                CoreResult::Core(faces) => {
                    let names: Vec<String> = faces.iter().map(ToString::to_string).collect();
                    writeln!(out, "core {}", names.join(" ")).unwrap();
                }
            }
            if oracle {
                let found = brute_force_core_oracle(&x, bounds.oracle_face_limit).map_err(exhausted)?;
                let agree = found.is_none() == core.is_collapsible();
                writeln!(out, "oracle {}", if agree { "agrees" } else { "disagrees" }).unwrap();
                if !agree {
                    return Ok(EXIT_REFUTED);
                }
            }
            Ok(EXIT_OK)
        }
        DrCommand::Decide { file, cert, assert_dr } => {
            let x = load(&file)?;
            let v = decide_dr(&x, &dr_bounds);
            writeln!(out, "status {}", v.status).unwrap();
            writeln!(out, "simply-connected {}", v.simple_connectivity.label()).unwrap();
            match &v.certificate {
                DrCertificate::Core(CoreResult::Collapsible(order)) => {
                    writeln!(out, "certificate collapse order of {} faces", order.len()).unwrap()
                }
                DrCertificate::Core(CoreResult::Core(faces)) => {
                    let names: Vec<String> = faces.iter().map(ToString::to_string).collect();
                    writeln!(out, "certificate core {}", names.join(" ")).unwrap()
                }
                DrCertificate::Sphere(s) => writeln!(out, "certificate reduced sphere of area {}", s.area()).unwrap(),
                DrCertificate::None => writeln!(out, "certificate none").unwrap(),
            }
            for a in &v.assumptions {
                writeln!(out, "assumption {a}").unwrap();
            }
            if v.status != DrStatus::Unknown {
                save_cert(&cert, &certificate::emit_dr(&x, &v, bounds).map_err(refuted)?, out)?;
            }
            Ok(if assert_dr && v.status != DrStatus::Dr { EXIT_REFUTED } else { EXIT_OK })
        }
        DrCommand::SphereSearch { file, cert } => {
            let x = load(&file)?;
            let search = sphere_search(&x, bounds.sphere_area);
            match search.sphere {
                Some(s) => {
                    writeln!(out, "reduced sphere of area {}", s.area()).unwrap();
                    out.push_str(&s.to_text());
                    save_cert(&cert, &certificate::emit_sphere(&x, &s, bounds), out)?;
                    Ok(EXIT_OK)
                }
                None if search.exhausted => {
                    Err(exhausted(format!("search up to area {} was truncated", bounds.sphere_area)))
                }
                None => {
                    writeln!(out, "no reduced sphere of area at most {}", bounds.sphere_area).unwrap();
                    Ok(EXIT_OK)
                }
            }
        }
    }
}

fn action(c: ActionCommand, bounds: Bounds, out: &mut String) -> Result<i32, Failure> {
    match c {
        ActionCommand::Check { complex, action } => {
            let a = load_action(&complex, &action, &bounds)?;
            writeln!(out, "order {}", a.order()).unwrap();
            let inv = a.has_inversions();
            if inv.is_empty() {
                writeln!(out, "inversions none").unwrap();
            } else {
                writeln!(out, "inversions {inv}").unwrap();
            }
            Ok(EXIT_OK)
        }
        ActionCommand::Fixed { complex, action, subdivide } => {
            let mut a = load_action(&complex, &action, &bounds)?;
            if subdivide && !a.has_inversions().is_empty() {
                a = a.remove_inversions()?.0;
            }
            out.push_str(&a.fixed_set()?.to_text());
            Ok(EXIT_OK)
        }
        ActionCommand::Orbits { complex, action } => {
            let a = load_action(&complex, &action, &bounds)?;
            for orbit in a.orbits() {
                let cells: Vec<String> = orbit.iter().map(ToString::to_string).collect();
                writeln!(out, "orbit {} | stabilizer order {}", cells.join(", "), a.stabilizer(&orbit[0]).len()).unwrap();
            }
            Ok(EXIT_OK)
        }
        ActionCommand::Collapse { complex, action } => {
            let a = load_action(&complex, &action, &bounds)?;
            let (w, log) = a.equivariant_collapse()?;
            for pairs in &log {
                let p: Vec<String> = pairs.iter().map(|(e, f)| format!("{e}:{f}")).collect();
                writeln!(out, "collapse {}", p.join(" ")).unwrap();
            }
            out.push_str(&w.complex().to_text());
            Ok(EXIT_OK)
        }
        ActionCommand::Fixedpoint { complex, action, cert } => {
            let mut a = load_action(&complex, &action, &bounds)?;
            if !a.has_inversions().is_empty() {
                a = a.remove_inversions()?.0;
                writeln!(out, "subdivided to remove inversions").unwrap();
            }
            let v = a.find_fixed_point(&bounds.fill())?;
            writeln!(out, "fixed vertex {v}").unwrap();
            save_cert(&cert, &certificate::emit_fixed_point(&a, &v, bounds), out)?;
            Ok(EXIT_OK)
        }
        ActionCommand::Classify { complex, action } => {
            let mut a = load_action(&complex, &action, &bounds)?;
            if !a.has_inversions().is_empty() {
                a = a.remove_inversions()?.0;
            }
            let report = a.verify_classifying_model(bounds.group_limit, &bounds.fill())?;
            for check in &report.checks {
                writeln!(
                    out,
                    "subgroup {:?}: {} fixed cells, {}",
                    check.elements, check.fixed_cells, check.verdict
                )
                .unwrap();
            }
            writeln!(out, "model {}", if report.passes() { "verified" } else { "refuted" }).unwrap();
            Ok(if report.passes() { EXIT_OK } else { EXIT_REFUTED })
        }
    }
}

fn construct(c: ConstructCommand, bounds: Bounds, out: &mut String) -> Result<i32, Failure> {
    match c {
        ConstructCommand::OrbitGraph { complex, action, path } => {
            let a = load_action(&complex, &action, &bounds)?;
            let (start, rest) = path.trim().split_once(char::is_whitespace).unwrap_or((path.trim(), ""));
            let letters = parse_letters(rest).ok_or_else(|| input(format!("cannot read path {path:?}")))?;
            out.push_str(&orbit_graph(&a, &Path::new(start, letters))?.to_text());
            Ok(EXIT_OK)
        }
        ConstructCommand::EquivariantFilling { complex, action, graph } => {
            let a = load_action(&complex, &action, &bounds)?;
            let y0 = load(&graph)?;
            let filling = equivariant_filling(&a, &y0, &bounds.fill())?;
            filling.verify(&a, &bounds.fill()).map_err(refuted)?;
            writeln!(out, "orbits {} faces {}", filling.orbits.len(), filling.y.num_faces()).unwrap();
            out.push_str(&filling.y.to_text());
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{bigon_sphere, torus, triangle_disk};

    fn scratch(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("drtoolkit-cli-{}-{name}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("drtoolkit").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn put(dir: &FsPath, name: &str, text: &str) -> String {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }

    #[test]
    fn decide_statuses() {
        let dir = scratch("decide");
        let t = put(&dir, "torus.cplx", &torus().to_text());
        let (code, out, _) = call(&["dr", "decide", &t]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("status Unknown"), "{out}");
        let b = put(&dir, "bigon.cplx", &bigon_sphere().to_text());
        let (code, out, _) = call(&["dr", "decide", &b]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("status NotDR") && out.contains("certificate core f1 f2"), "{out}");
        assert_eq!(call(&["dr", "decide", &b, "--assert-dr"]).0, EXIT_REFUTED);
    }

    #[test]
    fn certificate_round_trip_and_tamper() {
        let dir = scratch("cert");
        let x = put(&dir, "tri.cplx", &crate::builders::n_gon_disk(4).to_text());
        let cert = dir.join("tri.drcert");
        let (code, _, _) = call(&["dr", "decide", &x, "--cert", cert.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(call(&["verify", cert.to_str().unwrap()]).0, EXIT_OK);
        let mut c = Certificate::from_json(&std::fs::read_to_string(&cert).unwrap()).unwrap();
        if let crate::certificate::Witness::FreeFaceOrder { order, .. } = &mut c.witness {
            order[0].0 = crate::complex::Id::new("e9");
        }
        let bad = put(&dir, "bad.drcert", &c.to_json());
        let (code, _, err) = call(&["verify", &bad]);
        assert_eq!(code, EXIT_REFUTED);
        assert!(err.contains("collapse step 0"), "{err}");
        let junk = put(&dir, "junk.drcert", "{}");
        assert_eq!(call(&["verify", &junk]).0, EXIT_INPUT);
    }

    #[test]
    fn usage_and_input_errors() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(call(&["euler", "/nonexistent/x.cplx"]).0, EXIT_INPUT);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
        let dir = scratch("usage");
        let bad = put(&dir, "bad.cplx", "vertex a\nedge e a b\n");
        assert_eq!(call(&["euler", &bad]).0, EXIT_INPUT);
        assert_eq!(call(&["validate", &bad]).0, EXIT_REFUTED);
    }

    #[test]
    fn fill_and_gen() {
        let dir = scratch("fill");
        let t = put(&dir, "t.cplx", &triangle_disk().to_text());
        let (code, out, _) = call(&["fill", &t, "--cycle", "e1+ e2+ e3+"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("area 1"));
        let tor = put(&dir, "torus.cplx", &torus().to_text());
        assert_eq!(call(&["fill", &tor, "--cycle", "a+"]).0, EXIT_REFUTED);
        let bs = put(&dir, "bs.cplx", "vertex v\nedge a v v\nedge b v v\nface r a+ b+ a- b- b-\n");
        assert_eq!(call(&["fill", &bs, "--cycle", "b+", "--max-area", "3"]).0, EXIT_BOUNDS);
        let theta = put(&dir, "theta.cplx", &crate::builders::theta_graph().to_text());
        assert_eq!(call(&["fill", &theta, "--cycle", "a+ b-"]).0, EXIT_REFUTED);
        let (code, out, _) = call(&["gen", "presentation", "a, b | a b A B"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(TwoComplex::from_text(&out).unwrap().euler_characteristic(), 0);
        let a = call(&["gen", "random", "--seed", "7", "--dr"]).1;
        assert_eq!(a, call(&["gen", "random", "--seed", "7", "--dr"]).1);
    }

    #[test]
    fn action_commands() {
        let dir = scratch("action");
        let x = put(&dir, "tri.cplx", &triangle_disk().to_text());
        let act = put(
            &dir,
            "rot.act",
            "generator r\nvmap x y\nvmap y z\nvmap z x\nemap e1 e2+\nemap e2 e3+\nemap e3 e1+\nfmap f f\n",
        );
        let (code, out, _) = call(&["action", "check", &x, &act]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("order 3"));
        assert_eq!(call(&["action", "fixed", &x, &act]).0, EXIT_REFUTED);
        let (code, out, _) = call(&["action", "fixed", &x, &act, "--subdivide"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "vertex b.f");
        let cert = dir.join("fp.drcert");
        let (code, out, _) = call(&["action", "fixedpoint", &x, &act, "--cert", cert.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("fixed vertex b.f"));
        assert_eq!(call(&["verify", cert.to_str().unwrap()]).0, EXIT_OK);
        let (code, out, _) = call(&["action", "classify", &x, &act]);
        assert_eq!(code, EXIT_OK);
        assert!(out.ends_with("model verified\n"));
    }
}
