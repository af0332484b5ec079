use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use superatlas::atypicality::{atypicality_in, isotropic_flags_in, linkage_in};
use superatlas::fibre::fibre_module;
use superatlas::linalg::SparseMatrix;
use superatlas::matrixreal::{build_self_commuting, realize_basis, LieBasis, OddElement};
use superatlas::rootdata::{dominant_integral_in, BorelChoice, RootSystem, SuperalgebraSpec, Weight};
use superatlas::scan::{run_gkw_scan, run_kw_scan, ScanConfig, SimpleSource, SCHEMA};
use superatlas::supermodules::{Supermodule, DEFAULT_DIM_CAP};
use superatlas::support::support_dimension;
use superatlas::traces::{ambidexterity_check, fibre_trace};
use superatlas::Q;

#[derive(Parser)]
#[command(name = "superatlas", version, about = "Exact computations with gl(m|n) and osp supermodules")]
struct Cli {
    /// Lie superalgebra as family:m:n (gl, osp_odd, osp_even)
    #[arg(long, global = true, default_value = "gl:1:1")]
    spec: String,
    /// Write JSON here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct WeightArg {
    /// Highest weight as `a,b|c,d`
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
    cap: usize,
}

#[derive(Args)]
struct BoxArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = -2)]
    lo: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2)]
    hi: i64,
    #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
    cap: usize,
    #[arg(long, default_value_t = 2)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Roots, positivity, simple roots and rho for the distinguished Borel
    Rootsys,
    /// Atypicality of a dominant weight with a witness set
    Atyp {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    Defect,
    /// Build the simple module of a highest weight
    BuildModule(WeightArg),
    /// Fibre of a simple module at the all-ones element of an isotropic flag
    Fibre {
        #[command(flatten)]
        w: WeightArg,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// Which flag of that size, in enumeration order
        #[arg(long, default_value_t = 0)]
        flag: usize,
    },
    /// Compare left and right partial traces on End(L ⊗ L)
    Ambidex(WeightArg),
    /// Modified dimension of L(weight) for the ideal of L(anchor), through the fibre functor
    Mtrace {
        #[command(flatten)]
        w: WeightArg,
        #[arg(long, allow_hyphen_values = true)]
        anchor: String,
    },
    SupportDim {
        #[command(flatten)]
        w: WeightArg,
        #[arg(long, default_value_t = 2)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    KwScan(BoxArgs),
    GkwScan(BoxArgs),
    /// Necessary linkage condition between two weights
    Linkage {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, allow_hyphen_values = true)]
        other: String,
    },
}

enum Failure {
    Assertion(Value),
    Config(String),
}

impl From<superatlas::Error> for Failure {
    fn from(e: superatlas::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

struct Ctx {
    spec: SuperalgebraSpec,
    basis: Arc<LieBasis>,
    rs: RootSystem,
}

impl Ctx {
    fn new(spec: &str) -> Result<Self, Failure> {
        let spec: SuperalgebraSpec = spec.parse()?;
        let basis = Arc::new(realize_basis(&spec)?);
        let rs = basis.algebra().root_system(&BorelChoice::distinguished(&spec));
        Ok(Ctx { spec, basis, rs })
    }

    fn weight(&self, s: &str) -> Result<Weight, Failure> {
        let w: Weight = s.parse()?;
        if !w.conforms(&self.spec) {
            return Err(Failure::Config(format!("weight {w} does not conform to {}", self.spec)));
        }
        Ok(w)
    }

    fn dominant(&self, s: &str) -> Result<Weight, Failure> {
        let w = self.weight(s)?;
        if !dominant_integral_in(&self.rs, &w)? {
            return Err(Failure::Config(format!("weight {w} is not dominant integral")));
        }
        Ok(w)
    }

    fn simple(&self, w: &WeightArg) -> Result<(Weight, Supermodule), Failure> {
        let lam = self.dominant(&w.weight)?;
        let l = SimpleSource::new(&self.basis, w.cap)?.simple(&lam)?;
        Ok((lam, l))
    }

    fn flag_element(&self, k: usize, which: usize) -> Result<OddElement, Failure> {
        if k == 0 {
            return Ok(OddElement::zero(self.basis.clone()));
        }
        let flags = isotropic_flags_in(&self.rs, k, which + 1);
        let f = flags
            .get(which)
            .ok_or_else(|| Failure::Config(format!("no isotropic flag #{which} of size {k}")))?;
        Ok(build_self_commuting(&self.basis, &f.weights(), &vec![Q::one(); k])?)
    }

    fn wrap(&self, command: &str, result: Value) -> Value {
        json!({ "schema": SCHEMA, "command": command, "spec": self.spec.label(), "result": result })
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Result<Value, Failure> {
    serde_json::to_value(t).map_err(|e| Failure::Config(e.to_string()))
}

fn scan_config(spec: SuperalgebraSpec, b: &BoxArgs) -> ScanConfig {
    ScanConfig { spec, lo: b.lo, hi: b.hi, cap: b.cap, trials_per_flag: b.trials, seed: b.seed }
}

fn run(cli: &Cli) -> Outcome {
    let ctx = Ctx::new(&cli.spec)?;
    let v = match &cli.cmd {
        Cmd::Rootsys => ctx.wrap("rootsys", to_value(&ctx.rs)?),
        Cmd::Atyp { weight } => {
            let lam = ctx.dominant(weight)?;
            let r = atypicality_in(&ctx.rs, &lam)?;
            ctx.wrap("atyp", json!({ "weight": lam, "atypicality": r.k, "witness": r.witness }))
        }
        Cmd::Defect => ctx.wrap("defect", json!({ "defect": ctx.spec.defect() })),
        Cmd::BuildModule(w) => {
            let (lam, l) = ctx.simple(w)?;
            ctx.wrap("build-module", json!({ "weight": lam, "dims": l.dims(), "module": to_value(&l.bundle())? }))
        }
        Cmd::Fibre { w, rank, flag } => {
            let (lam, l) = ctx.simple(w)?;
            let x = ctx.flag_element(*rank, *flag)?;
            let f = fibre_module(&l, &x)?;
            ctx.wrap("fibre", json!({ "weight": lam, "rank": rank, "fibre": to_value(&f.summary(&l))? }))
        }
        Cmd::Ambidex(w) => {
            let (lam, l) = ctx.simple(w)?;
            let r = ambidexterity_check(&l)?;
            let out = ctx.wrap("ambidex", json!({ "weight": lam, "report": to_value(&r)? }));
            if !r.is_ambi {
                return Err(Failure::Assertion(out));
            }
            out
        }
        Cmd::Mtrace { w, anchor } => {
            let (lam, l) = ctx.simple(w)?;
            let (aw, a) = ctx.simple(&WeightArg { weight: anchor.clone(), cap: w.cap })?;
            let k = atypicality_in(&ctx.rs, &aw)?.k;
            let x = ctx.flag_element(k, 0)?;
            let r = fibre_trace(&a, &x, &l, &SparseMatrix::identity(l.dim()))?;
            ctx.wrap("mtrace", json!({ "weight": lam, "anchor": aw, "anchor_atyp": k, "trace": to_value(&r)? }))
        }
        Cmd::SupportDim { w, trials, seed } => {
            let (lam, l) = ctx.simple(w)?;
            let atyp = atypicality_in(&ctx.rs, &lam)?.k;
            let r = support_dimension(&ctx.basis, &l, *trials, *seed)?;
            let ok = r.support_dim == Some(atyp) && r.monotone;
            let out = ctx.wrap("support-dim", json!({ "weight": lam, "atypicality": atyp, "report": to_value(&r)? }));
            if !ok {
                return Err(Failure::Assertion(out));
            }
            out
        }
        Cmd::KwScan(b) => {
            let r = run_kw_scan(&scan_config(ctx.spec, b))?;
            let out = to_value(&r)?;
            if !r.pass {
                return Err(Failure::Assertion(out));
            }
            out
        }
        Cmd::GkwScan(b) => {
            let r = run_gkw_scan(&scan_config(ctx.spec, b))?;
            let out = to_value(&r)?;
            if !r.pass {
                return Err(Failure::Assertion(out));
            }
            out
        }
        Cmd::Linkage { weight, other } => {
            let (l, m) = (ctx.weight(weight)?, ctx.weight(other)?);
            let linked = linkage_in(&ctx.rs, &l, &m)?;
            ctx.wrap("linkage", json!({ "weight": l, "other": m, "linked": linked }))
        }
    };
    Ok(v)
}

fn emit(v: &Value, out: &Option<PathBuf>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (value, code) = match run(&cli) {
        Ok(v) => (v, 0),
        Err(Failure::Assertion(v)) => (v, 1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            (json!({ "schema": SCHEMA, "error": msg }), 2)
        }
    };
    if let Err(e) = emit(&value, &cli.out) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
