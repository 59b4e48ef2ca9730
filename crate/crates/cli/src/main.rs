use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use schubert::bruhat::{self, Interval};
use schubert::diagram::render_ascii;
use schubert::kl;
use schubert::matrix_schubert as ms;
use schubert::oracle::{self, SweepConfig};
use schubert::statmodel::{self, CIStatement};
use schubert::symbolic::DEFAULT_SIZE_LIMIT;
use schubert::{Error, Perm};

#[derive(Parser)]
#[command(name = "schubert", version, about = "Matrix Schubert and Kazhdan-Lusztig variety invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix Schubert varieties
    #[command(subcommand)]
    Ms(MsCmd),
    /// Kazhdan-Lusztig varieties
    #[command(subcommand)]
    Kl(KlCmd),
    /// Bruhat intervals and chains
    #[command(subcommand)]
    Bruhat(BruhatCmd),
    /// Conditional independence and quasi-independence models
    #[command(subcommand)]
    Stat(StatCmd),
    /// Exhaustive verification sweeps
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Args, Clone)]
struct Out {
    /// Emit a JSON envelope instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum MsCmd {
    /// Diagram, regions, weight-cone graph and complexity of Y_w
    Analyze {
        #[arg(value_parser = parse_perm)]
        w: Perm,
        /// Also report the symmetric variant
        #[arg(long)]
        sym: bool,
        /// Also report the lower-triangular variant
        #[arg(long)]
        low: bool,
        /// Print the diagram picture
        #[arg(long)]
        ascii: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Predict toricity of w*s_M from the staircase structure of toric w
    Reflect {
        #[arg(value_parser = parse_perm)]
        w: Perm,
        m: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Classify every simple reflection of toric w
    ScanReflections {
        #[arg(value_parser = parse_perm)]
        w: Perm,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum KlCmd {
    /// Generators, KL graph and complexity of N_{v,w}
    Analyze {
        #[arg(value_parser = parse_perm)]
        v: Perm,
        #[arg(value_parser = parse_perm)]
        w: Perm,
        /// Skip minor expansion
        #[arg(long)]
        no_generators: bool,
        /// Largest submatrix to expand
        #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT)]
        size_limit: usize,
        #[command(flatten)]
        out: Out,
    },
    /// The KL graph G_{v,w}
    Graph {
        #[arg(value_parser = parse_perm)]
        v: Perm,
        #[arg(value_parser = parse_perm)]
        w: Perm,
        /// Graphviz output
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Pair set P_v with the corner sets C_v and A_v
    Pv {
        #[arg(value_parser = parse_perm)]
        v: Perm,
        #[command(flatten)]
        out: Out,
    },
    /// Cyclic components of a toric interval, optionally extended by a cover
    Interval {
        #[arg(value_parser = parse_perm)]
        v: Perm,
        #[arg(value_parser = parse_perm)]
        w: Perm,
        /// A cover w2 of w to extend the interval by
        #[arg(long, value_parser = parse_perm)]
        extend: Option<Perm>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum BruhatCmd {
    /// Elements, atoms and atom graph of [v,w]
    Interval {
        #[arg(value_parser = parse_perm)]
        v: Perm,
        #[arg(value_parser = parse_perm)]
        w: Perm,
        #[command(flatten)]
        out: Out,
    },
    /// Maximal chains of [v,w] with their transposition labels
    Chains {
        #[arg(value_parser = parse_perm)]
        v: Perm,
        #[arg(value_parser = parse_perm)]
        w: Perm,
        /// Stop after this many chains
        #[arg(long, default_value_t = 100)]
        limit: usize,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum StatCmd {
    /// Realize A _||_ B | C as a symmetric matrix Schubert variety
    CiRealize {
        /// Index sets as comma lists; "-" for the empty set
        #[arg(value_parser = parse_set)]
        a: BTreeSet<usize>,
        #[arg(value_parser = parse_set)]
        b: BTreeSet<usize>,
        #[arg(value_parser = parse_set)]
        c: BTreeSet<usize>,
        /// Number of variables (default: largest index)
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Quasi-independence models of a toric w
    Qi {
        #[arg(value_parser = parse_perm)]
        w: Perm,
        /// Graphviz output of the state-space graphs
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Whether each quasi-independence model of w has rational MLE
    Mle {
        #[arg(value_parser = parse_perm)]
        w: Perm,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args, Clone)]
struct SweepArgs {
    /// Largest n to sweep
    #[arg(long = "n")]
    n: Option<usize>,
    /// Worker threads
    #[arg(long, env = "SCHUBERT_JOBS")]
    jobs: Option<usize>,
    /// Counterexamples to keep per theorem
    #[arg(long, default_value_t = 5)]
    samples: usize,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Run one registered sweep
    Verify {
        id: String,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Run every registered sweep
    VerifyAll {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: Out,
    },
    /// List registered theorem ids
    List {
        #[command(flatten)]
        out: Out,
    },
}

fn parse_perm(s: &str) -> Result<Perm, String> {
    Perm::parse(s).map_err(|e| e.to_string())
}

fn parse_set(s: &str) -> Result<BTreeSet<usize>, String> {
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    if s.is_empty() || s == "-" {
        return Ok(BTreeSet::new());
    }
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"))).collect()
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    inputs: Vec<String>,
    format: &'a str,
    report: Value,
}

/// Rendered output plus whether the command's own check failed.
struct Rendered {
    text: String,
    failed: bool,
}

fn emit(
    out: &Out,
    command: &str,
    inputs: Vec<String>,
    report: impl Serialize,
    text: impl FnOnce() -> String,
) -> Rendered {
    let text = if out.json {
        let env =
            Envelope { command, inputs, format: "json", report: serde_json::to_value(report).expect("serializable") };
        serde_json::to_string_pretty(&env).expect("serializable") + "\n"
    } else {
        text()
    };
    Rendered { text, failed: false }
}

fn cells(c: impl IntoIterator<Item = (usize, usize)>) -> String {
    c.into_iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(" ")
}

fn run(cmd: Command) -> Result<(Rendered, Option<PathBuf>), Error> {
    match cmd {
        Command::Ms(c) => ms_cmd(c),
        Command::Kl(c) => kl_cmd(c),
        Command::Bruhat(c) => bruhat_cmd(c),
        Command::Stat(c) => stat_cmd(c),
        Command::Oracle(c) => oracle_cmd(c),
    }
}

fn ms_cmd(cmd: MsCmd) -> Result<(Rendered, Option<PathBuf>), Error> {
    match cmd {
        MsCmd::Analyze { w, sym, low, ascii, out } => {
            let rep = if sym || low { ms::analyze_sym_low(&w) } else { ms::analyze(&w) };
            let r = emit(&out, "ms analyze", vec![w.to_string()], &rep, || {
                let mut s = String::new();
                if ascii {
                    s += &render_ascii(&w, &rep.regions);
                    s += "\n";
                }
                s += &format!("w            {w}\n");
                s += &format!("|D°(w)|      {}\n", rep.diagram_size);
                s += &format!("Ess(w)       {}\n", cells(rep.essential.iter().copied()));
                s += &format!("dim X̄_w      {}\n", rep.dim_xbar);
                s += &format!("dim Y_w      {}\n", rep.dim_y);
                s += &format!("dim σ_w      {}\n", rep.dim_sigma);
                s += &format!("complexity   {}\n", rep.complexity);
                s += &format!("toric        {}\n", rep.toric);
                if let Some(sy) = &rep.sym {
                    if sym {
                        s += &format!(
                            "sym: dim Y {}  dim σ {}  complexity {}\n",
                            sy.dim_y, sy.dim_sigma_sym, sy.complexity
                        );
                    }
                    if low {
                        s += &format!("low: dim Y {}  dim σ {}\n", sy.dim_y, sy.dim_sigma_low);
                    }
                }
                s
            });
            Ok((r, out.out))
        }
        MsCmd::Reflect { w, m, out } => {
            let v = ms::reflection_classify(&w, m)?;
            let r = emit(&out, "ms reflect", vec![w.to_string(), m.to_string()], &v, || verdict_line(&v));
            Ok((r, out.out))
        }
        MsCmd::ScanReflections { w, out } => {
            let vs = ms::scan_reflections(&w)?;
            let r =
                emit(&out, "ms scan-reflections", vec![w.to_string()], &vs, || vs.iter().map(verdict_line).collect());
            Ok((r, out.out))
        }
    }
}

fn verdict_line(v: &ms::ReflectionVerdict) -> String {
    let case = v.case.map(|c| format!("{:?} {}{}", c.kind, c.number, c.sub.map(String::from).unwrap_or_default()));
    format!(
        "M={} label={} predicted_toric={} actual_toric={} case={} delta={:?}{}\n",
        v.m,
        v.label.as_ref().map(|l| format!("{l:?}")).unwrap_or_else(|| "-".into()),
        v.predicted_toric,
        v.actual_toric,
        case.unwrap_or_else(|| "-".into()),
        v.weight_cone_delta,
        if v.agrees() { "" } else { "  MISMATCH" }
    )
}

fn kl_cmd(cmd: KlCmd) -> Result<(Rendered, Option<PathBuf>), Error> {
    match cmd {
        KlCmd::Analyze { v, w, no_generators, size_limit, out } => {
            let rep = kl::analyze(&v, &w, !no_generators, size_limit)?;
            let r = emit(&out, "kl analyze", vec![v.to_string(), w.to_string()], &rep, || {
                let mut s = String::new();
                if let Some(gens) = &rep.generators {
                    s += "generators:\n";
                    for g in gens {
                        s += &format!("  {g}\n");
                    }
                }
                s += &format!("unexpected zeros  {}\n", cells(rep.unexpected_zeros.iter().copied()));
                s += &format!("graph edges       {}\n", edge_list(&rep.graph));
                s += &format!("dim               {}\n", rep.dim);
                s += &format!("dim σ             {}\n", rep.dim_sigma);
                s += &format!("cyclomatic        {}\n", rep.cyclomatic);
                s += &format!("complexity        {}\n", rep.complexity);
                s += &format!("toric             {}\n", rep.toric);
                s
            });
            Ok((r, out.out))
        }
        KlCmd::Graph { v, w, dot, out } => {
            let g = kl::kl_graph(&v, &w)?;
            let r = emit(&out, "kl graph", vec![v.to_string(), w.to_string()], &g, || {
                if dot {
                    g.to_dot("G")
                } else {
                    edge_list(&g) + "\n"
                }
            });
            Ok((r, out.out))
        }
        KlCmd::Pv { v, out } => {
            #[derive(Serialize)]
            struct PvReport {
                p_v: Vec<kl::Pair>,
                c_v: BTreeSet<(usize, usize)>,
                a_v: BTreeSet<usize>,
            }
            let rep = PvReport { p_v: kl::pair_set(&v), c_v: kl::sw_corners(&v), a_v: kl::antidiagonal_fixed(&v) };
            let r = emit(&out, "kl pv", vec![v.to_string()], &rep, || {
                let mut s = format!("|P_v| = {}\n", rep.p_v.len());
                for ((i, j), (k, l)) in &rep.p_v {
                    s += &format!("  ({i},{j}) - ({k},{l})\n");
                }
                s += &format!("C_v = {}\n", cells(rep.c_v.iter().copied()));
                s += &format!("A_v = {:?}\n", rep.a_v);
                s
            });
            Ok((r, out.out))
        }
        KlCmd::Interval { v, w, extend, out } => {
            #[derive(Serialize)]
            struct IntervalReport {
                components: Vec<Vec<usize>>,
                complexity: usize,
                #[serde(skip_serializing_if = "Option::is_none")]
                extension: Option<kl::ExtendVerdict>,
            }
            let complexity = kl::complexity(&v, &w)?;
            let extension = extend.as_ref().map(|w2| kl::extend_by_cover(&v, &w, w2)).transpose()?;
            let rep = IntervalReport { components: kl::cyclic_components(&v, &w), complexity, extension };
            let mut inputs = vec![v.to_string(), w.to_string()];
            inputs.extend(extend.iter().map(|x| x.to_string()));
            let r = emit(&out, "kl interval", inputs, &rep, || {
                let mut s = format!("complexity {}\n", rep.complexity);
                s += &format!("cyclic components {:?}\n", rep.components);
                if let Some(e) = &rep.extension {
                    s += &format!(
                        "extend by t{:?}: predicted toric {}, complexity {}\n",
                        e.transposition, e.predicted_toric, e.complexity
                    );
                }
                s
            });
            Ok((r, out.out))
        }
    }
}

fn edge_list(g: &schubert::graph::DiGraph) -> String {
    g.sorted_edges().iter().map(|(a, b)| format!("{a}->{b}")).collect::<Vec<_>>().join(" ")
}

fn bruhat_cmd(cmd: BruhatCmd) -> Result<(Rendered, Option<PathBuf>), Error> {
    match cmd {
        BruhatCmd::Interval { v, w, out } => {
            #[derive(Serialize)]
            struct IntervalReport {
                length: usize,
                elements: Vec<Perm>,
                atoms: Vec<Perm>,
                atom_graph: Vec<Vec<usize>>,
            }
            let iv = Interval::new(v.clone(), w.clone())?;
            let ag = bruhat::atom_graph(&v, &w)?;
            let rep = IntervalReport {
                length: iv.length(),
                elements: iv.elements(),
                atoms: iv.atoms().into_iter().map(|(_, u)| u).collect(),
                atom_graph: bruhat::partition_of(&ag, v.n()).blocks(),
            };
            let r = emit(&out, "bruhat interval", vec![v.to_string(), w.to_string()], &rep, || {
                let show = |xs: &[Perm]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                format!(
                    "length {}\nelements ({}) {}\natoms {}\natom graph edges {}\n",
                    rep.length,
                    rep.elements.len(),
                    show(&rep.elements),
                    show(&rep.atoms),
                    edge_list(&ag)
                )
            });
            Ok((r, out.out))
        }
        BruhatCmd::Chains { v, w, limit, out } => {
            #[derive(Serialize)]
            struct ChainOut {
                elements: Vec<Perm>,
                labels: Vec<(usize, usize)>,
            }
            let iv = Interval::new(v.clone(), w.clone())?;
            let chains: Vec<ChainOut> = iv
                .chains()
                .take(limit)
                .map(|c| ChainOut { elements: c.elements().to_vec(), labels: c.labels().to_vec() })
                .collect();
            let r = emit(&out, "bruhat chains", vec![v.to_string(), w.to_string()], &chains, || {
                chains
                    .iter()
                    .map(|c| {
                        let els: Vec<String> = c.elements.iter().map(|x| x.to_string()).collect();
                        format!("{}   {:?}\n", els.join(" < "), c.labels)
                    })
                    .collect()
            });
            Ok((r, out.out))
        }
    }
}

fn stat_cmd(cmd: StatCmd) -> Result<(Rendered, Option<PathBuf>), Error> {
    match cmd {
        StatCmd::CiRealize { a, b, c, m, out } => {
            let m = m.unwrap_or_else(|| a.iter().chain(&b).chain(&c).copied().max().unwrap_or(0));
            let stmt = CIStatement::new(m, a, b, c)?;
            #[derive(Serialize)]
            struct CiReport {
                statement: String,
                condition: statmodel::CICondition,
                #[serde(skip_serializing_if = "Option::is_none")]
                case: Option<u8>,
                #[serde(skip_serializing_if = "Option::is_none")]
                w: Option<Perm>,
                #[serde(skip_serializing_if = "Option::is_none")]
                complexity: Option<statmodel::CIComplexity>,
            }
            let realized = statmodel::ci_realize_ms(&stmt);
            let complexity = realized.is_some().then(|| statmodel::ms_ci_complexity(&stmt)).transpose()?;
            let rep = CiReport {
                statement: stmt.to_string(),
                condition: statmodel::ci_condition(&stmt),
                case: realized.as_ref().map(|r| r.0),
                w: realized.map(|r| r.1),
                complexity,
            };
            let r = emit(&out, "stat ci-realize", vec![stmt.to_string()], &rep, || match (&rep.w, &rep.complexity) {
                (Some(w), Some(c)) => format!(
                    "{}\ncase {}: w = {w}\ncomplexity {} (direct {})\n",
                    rep.statement,
                    rep.case.unwrap(),
                    c.formula,
                    c.direct
                ),
                _ => format!("{}\nnot realizable as a symmetric matrix Schubert variety\n", rep.statement),
            });
            Ok((r, out.out))
        }
        StatCmd::Qi { w, dot, out } => {
            let models = statmodel::qi_from_toric(&w)?;
            let r = emit(&out, "stat qi", vec![w.to_string()], &models, || {
                models
                    .iter()
                    .enumerate()
                    .map(|(k, q)| {
                        if dot {
                            q.graph.to_dot(&format!("S{}", k + 1))
                        } else {
                            format!(
                                "model {}: {}x{} rows {:?} cols {:?}\n  S = {}\n",
                                k + 1,
                                q.m,
                                q.n,
                                q.rows,
                                q.cols,
                                cells(q.states.iter().copied())
                            )
                        }
                    })
                    .collect()
            });
            Ok((r, out.out))
        }
        StatCmd::Mle { w, out } => {
            let models = statmodel::qi_from_toric(&w)?;
            let verdicts: Vec<bool> = models.iter().map(statmodel::rational_mle).collect();
            let r = emit(&out, "stat mle", vec![w.to_string()], &verdicts, || {
                verdicts.iter().enumerate().map(|(k, v)| format!("model {}: rational MLE {v}\n", k + 1)).collect()
            });
            Ok((r, out.out))
        }
    }
}

fn sweep_config(s: &SweepArgs) -> SweepConfig {
    SweepConfig { n_max: s.n, jobs: s.jobs, report: None, samples: s.samples }
}

fn report_line(r: &oracle::Report) -> String {
    let kinds: Vec<String> = r.failure_kinds.iter().map(|(k, c)| format!("{k}={c}")).collect();
    format!(
        "{:<20} n<={} {} checked={} failures={} {} {}ms\n",
        r.id,
        r.n_max,
        if r.passed { "PASS" } else { "FAIL" },
        r.checked,
        r.failures,
        kinds.join(","),
        r.elapsed_ms
    )
}

fn oracle_cmd(cmd: OracleCmd) -> Result<(Rendered, Option<PathBuf>), Error> {
    match cmd {
        OracleCmd::Verify { id, sweep, out } => {
            let rep = oracle::verify(&id, &sweep_config(&sweep))?;
            let mut r = emit(&out, "oracle verify", vec![id.clone()], &rep, || {
                let mut s = report_line(&rep);
                for c in &rep.counterexamples {
                    s += &format!("  {c}\n");
                }
                s
            });
            r.failed = !rep.passed;
            Ok((r, out.out))
        }
        OracleCmd::VerifyAll { sweep, out } => {
            let reps = oracle::verify_all(&sweep_config(&sweep))?;
            let mut r = emit(&out, "oracle verify-all", vec![], &reps, || reps.iter().map(report_line).collect());
            r.failed = reps.iter().any(|x| !x.passed);
            Ok((r, out.out))
        }
        OracleCmd::List { out } => {
            let ids: Vec<(&str, usize, &str)> =
                oracle::registry().iter().map(|t| (t.id, t.default_n, t.description)).collect();
            let r = emit(&out, "oracle list", vec![], &ids, || {
                ids.iter().map(|(id, n, d)| format!("{id:<20} n<={n}  {d}\n")).collect()
            });
            Ok((r, out.out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((r, path)) => {
            if let Some(p) = path {
                if let Err(e) = std::fs::write(&p, &r.text) {
                    eprintln!("error: {}: {e}", p.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{}", r.text);
            }
            if r.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
