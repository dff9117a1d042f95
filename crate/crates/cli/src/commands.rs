//! Subcommand implementations. Every command is a thin delegate: it loads
//! the instance, calls one library operation, and serializes the result
//! with the pinned JSON format. Exit code 0 means the checked property
//! holds (or the command simply succeeded), 1 means a verdict of fails,
//! 2 means an error.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use zakframes_core::{
    bracket, construct_biorthogonal, construct_dual, frame_bounds, support_set,
    verify_biorthogonal, verify_gabor_dual, verify_gabor_orthogonal, verify_subspace_dual,
    verify_subspace_orthogonal, verify_super_dual, FiberPlan, FrameBounds, SuperFamily,
    Tolerances, VerificationReport, ZakFamily, ZakPlan,
};
use zakframes_group::{GeneratorFamily, Group, Subgroup};

use crate::error::{CliError, Result};
use crate::instances;
use crate::io::{bracket_csv, load_signal, save_signal, zak_csv, SignalFile};
use crate::jsonfmt::to_json_string;
use crate::spec::{GroupSpec, InstanceSpec, SubgroupSpec};

/// Flag-level overrides of the spec's tolerance and seed fields.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub supp_tol: Option<f64>,
    pub seed: Option<u64>,
}

/// Serialized output plus the process exit code.
#[derive(Debug)]
pub struct CommandOutput {
    pub text: String,
    pub exit: i32,
}

impl CommandOutput {
    fn report(report: &VerificationReport) -> Result<CommandOutput> {
        Ok(CommandOutput {
            text: to_json_string(report)?,
            exit: if report.holds() { 0 } else { 1 },
        })
    }

    fn ok<T: Serialize>(value: &T) -> Result<CommandOutput> {
        Ok(CommandOutput {
            text: to_json_string(value)?,
            exit: 0,
        })
    }
}

struct Context {
    group: Arc<Group>,
    sub: Arc<Subgroup>,
    plan: ZakPlan,
    tolerances: Tolerances,
    spec: InstanceSpec,
    spec_path: PathBuf,
}

fn positive(value: f64) -> Result<f64> {
    if value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::BadTolerance(value))
    }
}

fn load_context(spec_path: &Path, overrides: &Overrides) -> Result<Context> {
    let spec = InstanceSpec::load(spec_path)?;
    let group = spec.group.build()?;
    let sub = spec.subgroup.build(&group)?;
    let mut tolerances = Tolerances::default();
    if let Some(t) = overrides.tol.or(spec.tol) {
        tolerances.dual = positive(t)?;
    }
    if let Some(t) = overrides.supp_tol.or(spec.supp_tol) {
        tolerances.supp = positive(t)?;
    }
    let plan = ZakPlan::new(Arc::clone(&group), Arc::clone(&sub))?;
    Ok(Context {
        group,
        sub,
        plan,
        tolerances,
        spec,
        spec_path: spec_path.to_path_buf(),
    })
}

fn load_family(ctx: &Context, refs: &[String], which: &'static str) -> Result<GeneratorFamily> {
    if refs.is_empty() {
        return Err(CliError::MissingField(which));
    }
    let signals = refs
        .iter()
        .map(|r| load_signal(&ctx.spec.resolve(&ctx.spec_path, r), &ctx.group))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorFamily::new(signals)?)
}

#[derive(Serialize)]
struct GeneratorAnalysis {
    self_bracket_re: Vec<f64>,
    self_bracket_im: Vec<f64>,
    support: Vec<usize>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    criterion: &'static str,
    generators: Vec<GeneratorAnalysis>,
    frame_bounds: FrameBounds,
    tolerances: Tolerances,
}

/// Brackets, support sets, and frame bounds of one family.
pub fn cmd_analyze(spec_path: &Path, overrides: &Overrides) -> Result<CommandOutput> {
    let ctx = load_context(spec_path, overrides)?;
    let fam = load_family(&ctx, &ctx.spec.family, "family")?;
    let zfam = ZakFamily::transform(&fam, &ctx.plan)?;
    let mut generators = Vec::with_capacity(fam.len());
    for t in 0..fam.len() {
        let diag = bracket(zfam.array(t), zfam.array(t))?;
        let supp = support_set(zfam.array(t), ctx.tolerances.supp)?;
        generators.push(GeneratorAnalysis {
            self_bracket_re: diag.values().iter().map(|v| v.re).collect(),
            self_bracket_im: diag.values().iter().map(|v| v.im).collect(),
            support: supp.indices(),
        });
    }
    let fb = frame_bounds(&zfam, ctx.tolerances.rank)?;
    CommandOutput::ok(&AnalyzeReport {
        criterion: "analyze",
        generators,
        frame_bounds: fb,
        tolerances: ctx.tolerances,
    })
}

fn check_families(
    spec_path: &Path,
    overrides: &Overrides,
    orthogonal: bool,
    with_oracle: bool,
) -> Result<CommandOutput> {
    let ctx = load_context(spec_path, overrides)?;
    let fam = load_family(&ctx, &ctx.spec.family, "family")?;
    let fam2 = load_family(&ctx, &ctx.spec.family2, "family2")?;
    let za = ZakFamily::transform(&fam, &ctx.plan)?;
    let za2 = ZakFamily::transform(&fam2, &ctx.plan)?;
    let mut report = if orthogonal {
        verify_subspace_orthogonal(&za, &za2, &ctx.tolerances)?
    } else {
        verify_subspace_dual(&za, &za2, &ctx.tolerances)?
    };
    if with_oracle {
        let check = if orthogonal {
            zakframes_oracle::check_orthogonal(
                &fam,
                &fam2,
                &ctx.sub,
                ctx.tolerances.dual,
                ctx.tolerances.rank,
            )?
        } else {
            zakframes_oracle::check_reproducing(
                &fam,
                &fam2,
                &ctx.sub,
                ctx.tolerances.dual,
                ctx.tolerances.rank,
            )?
        };
        let agrees = check.holds == report.holds();
        report = report
            .with_aux("oracle_residual", check.residual)
            .with_flag("oracle_holds", check.holds)
            .with_flag("oracle_agrees", agrees);
    }
    CommandOutput::report(&report)
}

pub fn cmd_dual_check(
    spec_path: &Path,
    overrides: &Overrides,
    with_oracle: bool,
) -> Result<CommandOutput> {
    check_families(spec_path, overrides, false, with_oracle)
}

pub fn cmd_ortho_check(
    spec_path: &Path,
    overrides: &Overrides,
    with_oracle: bool,
) -> Result<CommandOutput> {
    check_families(spec_path, overrides, true, with_oracle)
}

#[derive(Serialize)]
struct ConstructionReport {
    criterion: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    unique: Option<bool>,
    verification: VerificationReport,
    signal: SignalFile,
}

/// Builds the singly-generated dual and reports the verification of the
/// result; the constructed signal is embedded and optionally written out.
pub fn cmd_make_dual(
    spec_path: &Path,
    overrides: &Overrides,
    signal_out: Option<&Path>,
) -> Result<CommandOutput> {
    let ctx = load_context(spec_path, overrides)?;
    let fam = load_family(&ctx, &ctx.spec.family, "family")?;
    let fam2 = load_family(&ctx, &ctx.spec.family2, "family2")?;
    let built = construct_dual(
        fam.signal(0),
        fam2.signal(0),
        &ctx.plan,
        &ctx.tolerances,
    )?;
    let zphi = ctx.plan.forward(fam.signal(0))?;
    let zdual = ctx.plan.forward(&built.dual)?;
    let verification =
        zakframes_core::verify_dual_single(&zphi, &zdual, &ctx.tolerances)?;
    if let Some(path) = signal_out {
        save_signal(path, &built.dual)?;
    }
    let out = ConstructionReport {
        criterion: "make-dual",
        unique: Some(built.unique),
        verification,
        signal: SignalFile::from_signal(&built.dual),
    };
    Ok(CommandOutput {
        exit: if out.verification.holds() { 0 } else { 1 },
        text: to_json_string(&out)?,
    })
}

pub fn cmd_make_biortho(
    spec_path: &Path,
    overrides: &Overrides,
    signal_out: Option<&Path>,
) -> Result<CommandOutput> {
    let ctx = load_context(spec_path, overrides)?;
    let fam = load_family(&ctx, &ctx.spec.family, "family")?;
    let psi = construct_biorthogonal(fam.signal(0), &ctx.plan, &ctx.tolerances)?;
    let verification = verify_biorthogonal(fam.signal(0), &psi, &ctx.plan, &ctx.tolerances)?;
    if let Some(path) = signal_out {
        save_signal(path, &psi)?;
    }
    let out = ConstructionReport {
        criterion: "make-biortho",
        unique: None,
        verification,
        signal: SignalFile::from_signal(&psi),
    };
    Ok(CommandOutput {
        exit: if out.verification.holds() { 0 } else { 1 },
        text: to_json_string(&out)?,
    })
}

/// Gabor check over the modulation subgroup `lambda` (defaulting to the
/// spec's subgroup).
pub fn cmd_gabor(
    spec_path: &Path,
    overrides: &Overrides,
    orthogonal: bool,
) -> Result<CommandOutput> {
    let ctx = load_context(spec_path, overrides)?;
    let lambda = match &ctx.spec.lambda {
        Some(spec) => spec.build(&ctx.group)?,
        None => Arc::clone(&ctx.sub),
    };
    let fam = load_family(&ctx, &ctx.spec.family, "family")?;
    let fam2 = load_family(&ctx, &ctx.spec.family2, "family2")?;
    let fp = FiberPlan::new(Arc::clone(&ctx.group), Arc::clone(&lambda))?;
    let plan = ZakPlan::new(Arc::clone(&ctx.group), lambda)?;
    let report = if orthogonal {
        verify_gabor_orthogonal(&fam, &fam2, &fp, &plan, &ctx.tolerances)?
    } else {
        verify_gabor_dual(&fam, &fam2, &fp, &plan, &ctx.tolerances)?
    };
    CommandOutput::report(&report)
}

/// Super-dual check of component families on `G x Z_N`.
pub fn cmd_super(spec_path: &Path, overrides: &Overrides) -> Result<CommandOutput> {
    let ctx = load_context(spec_path, overrides)?;
    if ctx.spec.components.is_empty() || ctx.spec.components2.is_empty() {
        return Err(CliError::MissingField("components/components2"));
    }
    if let Some(n) = ctx.spec.n_copies {
        if n != ctx.spec.components.len() {
            return Err(CliError::MissingField("n_copies consistent with components"));
        }
    }
    let load_components = |refs: &[Vec<String>]| -> Result<Vec<GeneratorFamily>> {
        refs.iter()
            .map(|fam_refs| load_family(&ctx, fam_refs, "components"))
            .collect()
    };
    let sf = SuperFamily::pack(load_components(&ctx.spec.components)?, &ctx.sub)?;
    let sf2 = SuperFamily::pack(load_components(&ctx.spec.components2)?, &ctx.sub)?;
    let report = verify_super_dual(&sf, &sf2, &ctx.tolerances)?;
    CommandOutput::report(&report)
}

#[derive(Serialize)]
struct OracleSide {
    holds: bool,
    residual: f64,
}

#[derive(Serialize)]
struct CompareReport {
    criterion: &'static str,
    fiber: VerificationReport,
    oracle: OracleSide,
    agree: bool,
}

/// Runs the fiber-domain check and the dense oracle side by side.
pub fn cmd_oracle_compare(
    spec_path: &Path,
    overrides: &Overrides,
    orthogonal: bool,
) -> Result<CommandOutput> {
    let ctx = load_context(spec_path, overrides)?;
    let fam = load_family(&ctx, &ctx.spec.family, "family")?;
    let fam2 = load_family(&ctx, &ctx.spec.family2, "family2")?;
    let za = ZakFamily::transform(&fam, &ctx.plan)?;
    let za2 = ZakFamily::transform(&fam2, &ctx.plan)?;
    let (fiber, check) = if orthogonal {
        (
            verify_subspace_orthogonal(&za, &za2, &ctx.tolerances)?,
            zakframes_oracle::check_orthogonal(
                &fam,
                &fam2,
                &ctx.sub,
                ctx.tolerances.dual,
                ctx.tolerances.rank,
            )?,
        )
    } else {
        (
            verify_subspace_dual(&za, &za2, &ctx.tolerances)?,
            zakframes_oracle::check_reproducing(
                &fam,
                &fam2,
                &ctx.sub,
                ctx.tolerances.dual,
                ctx.tolerances.rank,
            )?,
        )
    };
    let agree = fiber.holds() == check.holds;
    let out = CompareReport {
        criterion: if orthogonal {
            "oracle-compare-orthogonal"
        } else {
            "oracle-compare-dual"
        },
        fiber,
        oracle: OracleSide {
            holds: check.holds,
            residual: check.residual,
        },
        agree,
    };
    Ok(CommandOutput {
        exit: if agree { 0 } else { 1 },
        text: to_json_string(&out)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomKind {
    Plain,
    Dual,
    Ortho,
    Gabor,
    Super,
}

impl std::str::FromStr for RandomKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "plain" => Ok(RandomKind::Plain),
            "dual" => Ok(RandomKind::Dual),
            "ortho" => Ok(RandomKind::Ortho),
            "gabor" => Ok(RandomKind::Gabor),
            "super" => Ok(RandomKind::Super),
            other => Err(format!(
                "unknown kind {other}; expected plain|dual|ortho|gabor|super"
            )),
        }
    }
}

#[derive(Serialize)]
struct RandomReport {
    criterion: &'static str,
    kind: String,
    seed: u64,
    spec: String,
    written: Vec<String>,
}

/// Generates a seeded instance (spec plus signal files) under `out_dir`.
pub fn cmd_random(kind: RandomKind, seed: u64, out_dir: &Path) -> Result<CommandOutput> {
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::Io {
        path: out_dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut rng = instances::rng(seed);
    let abelian_only = matches!(kind, RandomKind::Gabor | RandomKind::Super);
    let (group, sub) = if abelian_only {
        let g = instances::random_product_group(&mut rng, 16);
        let s = instances::random_stride_subgroup(&mut rng, &g);
        (g, s)
    } else {
        instances::random_pair(&mut rng, 64, 16, true)
    };
    use rand::Rng;
    let n_gen = rng.gen_range(1..=3usize);

    let mut written = Vec::new();
    let save_family =
        |fam: &GeneratorFamily, stem: &str, written: &mut Vec<String>| -> Result<Vec<String>> {
            let mut refs = Vec::new();
            for (t, s) in fam.iter().enumerate() {
                let name = format!("{stem}_{t}.json");
                save_signal(&out_dir.join(&name), s)?;
                written.push(name.clone());
                refs.push(name);
            }
            Ok(refs)
        };

    let group_spec = match group.factor_orders() {
        Some(orders) => GroupSpec::Product {
            orders: orders.to_vec(),
        },
        None => {
            let n = group.order();
            let table = (0..n)
                .map(|a| (0..n).map(|b| group.mul(a, b)).collect())
                .collect();
            GroupSpec::Cayley { table }
        }
    };
    let sub_spec = SubgroupSpec::Generators {
        generators: sub.elements().to_vec(),
    };
    let mut spec = InstanceSpec::minimal(group_spec, sub_spec);
    spec.seed = Some(seed);

    match kind {
        RandomKind::Plain => {
            let fam = instances::random_family(&mut rng, &group, n_gen);
            let fam2 = instances::random_family(&mut rng, &group, n_gen);
            spec.family = save_family(&fam, "phi", &mut written)?;
            spec.family2 = save_family(&fam2, "psi", &mut written)?;
        }
        RandomKind::Dual => {
            let (fam, fam2) = instances::dual_pair(&mut rng, &group, &sub, n_gen)?;
            spec.family = save_family(&fam, "phi", &mut written)?;
            spec.family2 = save_family(&fam2, "psi", &mut written)?;
        }
        RandomKind::Ortho => {
            let (fam, fam2) = instances::orthogonal_pair(&mut rng, &group, &sub, n_gen)?;
            spec.family = save_family(&fam, "phi", &mut written)?;
            spec.family2 = save_family(&fam2, "psi", &mut written)?;
        }
        RandomKind::Gabor => {
            let (fam, fam2) = instances::gabor_dual_pair(&mut rng, &group, &sub, 1)?;
            spec.family = save_family(&fam, "phi", &mut written)?;
            spec.family2 = save_family(&fam2, "psi", &mut written)?;
            spec.lambda = Some(SubgroupSpec::Generators {
                generators: sub.elements().to_vec(),
            });
        }
        RandomKind::Super => {
            let n_copies = rng.gen_range(2..=3usize);
            let (sf, sf2) = instances::super_dual_pair(&mut rng, &group, &sub, n_copies)?;
            spec.n_copies = Some(n_copies);
            for (n, comp) in sf.components().iter().enumerate() {
                spec.components
                    .push(save_family(comp, &format!("a{n}"), &mut written)?);
            }
            for (n, comp) in sf2.components().iter().enumerate() {
                spec.components2
                    .push(save_family(comp, &format!("b{n}"), &mut written)?);
            }
        }
    }

    let spec_name = "instance.json";
    std::fs::write(out_dir.join(spec_name), to_json_string(&spec)?).map_err(|e| CliError::Io {
        path: out_dir.join(spec_name).display().to_string(),
        message: e.to_string(),
    })?;
    written.push(spec_name.into());
    CommandOutput::ok(&RandomReport {
        criterion: "random",
        kind: format!("{kind:?}").to_lowercase(),
        seed,
        spec: out_dir.join(spec_name).display().to_string(),
        written,
    })
}

/// Bracket of the first generators of the two families (or the
/// self-bracket of the first family), as CSV.
pub fn cmd_bracket_dump(spec_path: &Path, overrides: &Overrides) -> Result<CommandOutput> {
    let ctx = load_context(spec_path, overrides)?;
    let fam = load_family(&ctx, &ctx.spec.family, "family")?;
    let zphi = ctx.plan.forward(fam.signal(0))?;
    let zpsi = if ctx.spec.family2.is_empty() {
        zphi.clone()
    } else {
        let fam2 = load_family(&ctx, &ctx.spec.family2, "family2")?;
        ctx.plan.forward(fam2.signal(0))?
    };
    let b = bracket(&zphi, &zpsi)?;
    Ok(CommandOutput {
        text: bracket_csv(&b),
        exit: 0,
    })
}

/// Zak transform of the first generator, as CSV.
pub fn cmd_zak_dump(spec_path: &Path, overrides: &Overrides) -> Result<CommandOutput> {
    let ctx = load_context(spec_path, overrides)?;
    let fam = load_family(&ctx, &ctx.spec.family, "family")?;
    let z = ctx.plan.forward(fam.signal(0))?;
    Ok(CommandOutput {
        text: zak_csv(&z),
        exit: 0,
    })
}
