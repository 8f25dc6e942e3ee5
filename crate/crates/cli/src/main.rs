use clap::{Parser, Subcommand};
use pact_core::algebra::validate_finite_group;
use pact_core::congruence::{congruence_closure, pc_check, quotient, Congruence, RChain};
use pact_core::doc::{
    CongruenceDoc, FiniteGroupDoc, GroupoidActionDoc, GroupoidDoc, GroupoidMorphismDoc, MinimalElementDoc,
    PaMorphismDoc, PartialActionDoc, QuotientHomDoc,
};
use pact_core::functors::{eta, lift_groupoid_action, phi_object, psi_object, GroupoidAction};
use pact_core::fwords::{p_algorithm, FWord, Letter, MinimalElement};
use pact_core::groupoid::{Groupoid, GroupoidMorphism};
use pact_core::limits::{coequalizer, coproduct, equalizer, groupoid_to_paction, product};
use pact_core::paction::{validate_paction, PaMorphism, PartialAction};
use pact_core::reduced::{compare_reduced, induce_action, kernel_condition, FiniteQuotientHom};
use pact_core::violation::Violation;
use pact_core::{fixtures, ugroup, Error};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pact", version, about = "Finite groupoids and partial group actions")]
struct Cli {
    /// Print a plain-text rendering instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a partial action, groupoid or finite group document.
    Validate { file: PathBuf },
    /// The groupoid of a partial action.
    Psi { paction: PathBuf },
    /// The universal partial action of a groupoid.
    Phi { groupoid: PathBuf },
    /// The isomorphism from the groupoid of the universal partial action back to the groupoid.
    Eta { groupoid: PathBuf },
    /// Normal form in the universal group of a word such as `f g^-1`.
    Nf { groupoid: PathBuf, word: String },
    /// Product of two words in the universal group.
    Mul { groupoid: PathBuf, left: String, right: String },
    /// Inverse of a word in the universal group.
    Inv { groupoid: PathBuf, word: String },
    /// Rewrite a reduced minimal representation into one with the P-property.
    Palg { groupoid: PathBuf, representation: PathBuf },
    /// Check (PC) for a congruence; fails with two witnessing chains.
    PcCheck { paction: PathBuf, congruence: PathBuf },
    /// Quotient of a partial action by a congruence.
    Quotient { paction: PathBuf, congruence: PathBuf },
    /// Least congruence containing the given pairs and kernel generators.
    Closure { paction: PathBuf, generators: PathBuf },
    /// Product of partial actions with its projections.
    Product { factors: Vec<PathBuf> },
    /// Coproduct of partial actions over the free product of their groups.
    Coproduct { factors: Vec<PathBuf> },
    /// Equalizer of two parallel morphisms.
    Equalizer { source: PathBuf, target: PathBuf, phi: PathBuf, psi: PathBuf },
    /// Coequalizer of two parallel morphisms.
    Coequalizer { source: PathBuf, target: PathBuf, phi: PathBuf, psi: PathBuf },
    /// Lift a groupoid action along an isomorphism onto the groupoid of a partial action.
    Lift { groupoid: PathBuf, paction: PathBuf, iso: PathBuf, action: PathBuf },
    /// A partial action whose groupoid is the given one.
    Realize { groupoid: PathBuf },
    /// Whether a finite quotient of the universal group has no morphism class in its kernel.
    ReducedCheck { groupoid: PathBuf, hom: PathBuf },
    /// The partial action induced by a finite quotient of the universal group.
    Induce { groupoid: PathBuf, hom: PathBuf },
    /// Compare the kernels of two finite quotients.
    Compare { groupoid: PathBuf, left: PathBuf, right: PathBuf },
    /// Write the bundled fixture documents.
    Fixtures {
        #[arg(default_value = "fixtures")]
        dir: PathBuf,
    },
}

enum Failure {
    /// Unreadable input or a document that does not fit its schema.
    Parse(String),
    /// A well-formed input that fails a check.
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Malformed(_) | Error::UnknownId { .. } | Error::DuplicateId { .. } => Failure::Parse(e.to_string()),
            Error::Invalid(ref v) | Error::InvalidGroupoidAction(ref v) => {
                Failure::Check(json!({"error": e.to_string(), "violations": v}))
            }
            _ => Failure::Check(json!({"error": e.to_string()})),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn invalid(what: &str, violations: Vec<Violation>) -> Failure {
    Failure::Check(json!({"error": format!("invalid {what}"), "violations": violations}))
}

fn load_paction(path: &Path) -> Result<PartialAction, Failure> {
    let theta = PartialAction::from_doc(&read(path)?)?;
    let violations = validate_paction(&theta);
    if violations.is_empty() {
        Ok(theta)
    } else {
        Err(invalid("partial action", violations))
    }
}

fn load_groupoid(path: &Path) -> Result<Groupoid, Failure> {
    let g = Groupoid::from_doc(&read(path)?)?;
    let violations = g.validate();
    if violations.is_empty() {
        Ok(g)
    } else {
        Err(invalid("groupoid", violations))
    }
}

fn load_morphism(path: &Path, source: &PartialAction, target: &PartialAction) -> Result<PaMorphism, Failure> {
    Ok(PaMorphism::from_doc(&read::<PaMorphismDoc>(path)?, source, target)?)
}

/// Whitespace-separated morphism names, each optionally suffixed by `^-1`.
fn parse_word(g: &Groupoid, text: &str) -> Result<FWord, Failure> {
    text.split_whitespace()
        .map(|token| {
            let (name, inverse) = match token.strip_suffix("^-1") {
                Some(name) => (name, true),
                None => (token, false),
            };
            let m = g.morphism_index(name).ok_or_else(|| Failure::Parse(format!("unknown morphism `{name}`")))?;
            Ok(Letter::new(m, inverse))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(FWord)
}

fn chain_json(theta: &PartialAction, chain: &RChain) -> Value {
    let group = theta.group();
    chain.0.iter().map(|(x, g)| json!([theta.point_name(*x), group.name(g)])).collect()
}

fn validate(path: &Path) -> Outcome {
    let doc: Value = read(path)?;
    let (kind, violations) = if doc.get("set").is_some() {
        let theta = PartialAction::from_doc(&read::<PartialActionDoc>(path)?)?;
        ("partial action", validate_paction(&theta))
    } else if doc.get("objects").is_some() {
        ("groupoid", Groupoid::from_doc(&read::<GroupoidDoc>(path)?)?.validate())
    } else if doc.get("elements").is_some() {
        ("finite group", validate_finite_group(&read::<FiniteGroupDoc>(path)?))
    } else {
        return Err(Failure::Parse("not a partial action, groupoid or finite group document".into()));
    };
    let report = json!({"kind": kind, "valid": violations.is_empty(), "violations": violations});
    if violations.is_empty() {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}

fn load_congruence(theta: &PartialAction, path: &Path) -> Result<Congruence, Failure> {
    Ok(Congruence::from_doc(&read::<CongruenceDoc>(path)?, theta)?)
}

fn pc(theta_path: &Path, cong_path: &Path) -> Outcome {
    let theta = load_paction(theta_path)?;
    let congruence = load_congruence(&theta, cong_path)?;
    let report = pc_check(&theta, &congruence)?;
    match report.counterexample {
        None => Ok(json!({"holds": true})),
        Some((c, o)) => Err(Failure::Check(json!({
            "holds": false,
            "counterexample": [chain_json(&theta, &c), chain_json(&theta, &o)],
        }))),
    }
}

fn closure(theta_path: &Path, gens_path: &Path) -> Outcome {
    let theta = load_paction(theta_path)?;
    let doc: CongruenceDoc = read(gens_path)?;
    let group = theta.group().finite()?;
    let point = |s: &String| theta.point_index(s).ok_or_else(|| Failure::Parse(format!("unknown point `{s}`")));
    let pairs = doc.relation.iter().map(|[a, b]| Ok((point(a)?, point(b)?))).collect::<Result<Vec<_>, Failure>>()?;
    let kernel = doc
        .kernel
        .iter()
        .map(|k| group.index_of(k).ok_or_else(|| Failure::Parse(format!("unknown group element `{k}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let closed = congruence_closure(&theta, &pairs, &kernel)?;
    Ok(json!(closed.to_doc(&theta, group)))
}

fn parallel(
    source: &Path,
    target: &Path,
    phi: &Path,
    psi: &Path,
) -> Result<(PartialAction, PartialAction, PaMorphism, PaMorphism), Failure> {
    let (theta, rho) = (load_paction(source)?, load_paction(target)?);
    let (phi, psi) = (load_morphism(phi, &theta, &rho)?, load_morphism(psi, &theta, &rho)?);
    Ok((theta, rho, phi, psi))
}

fn lift(g_path: &Path, theta_path: &Path, iso_path: &Path, action_path: &Path) -> Outcome {
    let g = load_groupoid(g_path)?;
    let theta = load_paction(theta_path)?;
    let psi = psi_object(&theta);
    let iso = GroupoidMorphism::from_doc(&read::<GroupoidMorphismDoc>(iso_path)?, &g, &psi.groupoid)?;
    let action = GroupoidAction::from_doc(&read::<GroupoidActionDoc>(action_path)?, &g)?;
    let (lifted, mu) = lift_groupoid_action(&g, &theta, &psi, &iso, &action)?;
    Ok(json!({"paction": lifted.to_doc(), "morphism": mu.to_doc(&lifted, &theta)}))
}

fn load_hom(g: &Groupoid, path: &Path) -> Result<FiniteQuotientHom, Failure> {
    Ok(FiniteQuotientHom::from_doc(&read::<QuotientHomDoc>(path)?, g)?)
}

fn write_fixtures(dir: &Path) -> Outcome {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Parse(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (name, doc) in fixtures::documents() {
        let path = dir.join(format!("{name}.json"));
        let text = serde_json::to_string_pretty(&doc).expect("values serialize") + "\n";
        std::fs::write(&path, text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
        written.push(path.display().to_string());
    }
    Ok(json!({"written": written}))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Psi { paction } => Ok(json!(psi_object(&load_paction(&paction)?).groupoid.to_doc())),
        Command::Phi { groupoid } => Ok(json!(phi_object(&load_groupoid(&groupoid)?).to_doc())),
        Command::Eta { groupoid } => {
            let g = load_groupoid(&groupoid)?;
            let e = eta(&g)?;
            Ok(json!({"iso": true, "forward": e.forward.to_doc(&e.psi_phi.groupoid, &g)}))
        }
        Command::Nf { groupoid, word } => {
            let g = load_groupoid(&groupoid)?;
            Ok(json!(ugroup::project(&g, &parse_word(&g, &word)?).to_doc(&g)))
        }
        Command::Mul { groupoid, left, right } => {
            let g = load_groupoid(&groupoid)?;
            let (a, b) = (ugroup::project(&g, &parse_word(&g, &left)?), ugroup::project(&g, &parse_word(&g, &right)?));
            Ok(json!(ugroup::multiply(&g, &a, &b).to_doc(&g)))
        }
        Command::Inv { groupoid, word } => {
            let g = load_groupoid(&groupoid)?;
            Ok(json!(ugroup::invert(&g, &ugroup::project(&g, &parse_word(&g, &word)?)).to_doc(&g)))
        }
        Command::Palg { groupoid, representation } => {
            let g = load_groupoid(&groupoid)?;
            let docs: Vec<MinimalElementDoc> = read(&representation)?;
            let rep = docs.iter().map(|d| MinimalElement::from_doc(d, &g)).collect::<Result<Vec<_>, _>>()?;
            let run = p_algorithm(&g, &rep)?;
            let render = |r: &[MinimalElement]| r.iter().map(|e| e.to_doc(&g)).collect::<Vec<_>>();
            Ok(json!({"result": render(&run.result), "trace": run.trace.iter().map(|r| render(r)).collect::<Vec<_>>()}))
        }
        Command::PcCheck { paction, congruence } => pc(&paction, &congruence),
        Command::Quotient { paction, congruence } => {
            let theta = load_paction(&paction)?;
            let c = load_congruence(&theta, &congruence)?;
            let (quot, pi) = quotient(&theta, &c)?;
            Ok(json!({"paction": quot.to_doc(), "projection": pi.to_doc(&theta, &quot)}))
        }
        Command::Closure { paction, generators } => closure(&paction, &generators),
        Command::Product { factors } => {
            let thetas = factors.iter().map(|p| load_paction(p)).collect::<Result<Vec<_>, _>>()?;
            let p = product(&thetas.iter().collect::<Vec<_>>())?;
            let projections: Vec<_> = p.projections.iter().zip(&thetas).map(|(m, t)| m.to_doc(&p.action, t)).collect();
            Ok(json!({"paction": p.action.to_doc(), "projections": projections}))
        }
        Command::Coproduct { factors } => {
            let thetas = factors.iter().map(|p| load_paction(p)).collect::<Result<Vec<_>, _>>()?;
            let c = coproduct(&thetas.iter().collect::<Vec<_>>())?;
            let injections: Vec<_> = c.injections.iter().zip(&thetas).map(|(m, t)| m.to_doc(t, &c.action)).collect();
            Ok(json!({"paction": c.action.to_doc(), "injections": injections}))
        }
        Command::Equalizer { source, target, phi, psi } => {
            let (theta, rho, phi, psi) = parallel(&source, &target, &phi, &psi)?;
            let e = equalizer(&phi, &psi, &theta, &rho)?;
            Ok(json!({"paction": e.action.to_doc(), "inclusion": e.inclusion.to_doc(&e.action, &theta)}))
        }
        Command::Coequalizer { source, target, phi, psi } => {
            let (theta, rho, phi, psi) = parallel(&source, &target, &phi, &psi)?;
            let c = coequalizer(&phi, &psi, &theta, &rho)?;
            Ok(json!({"paction": c.action.to_doc(), "projection": c.projection.to_doc(&rho, &c.action)}))
        }
        Command::Lift { groupoid, paction, iso, action } => lift(&groupoid, &paction, &iso, &action),
        Command::Realize { groupoid } => {
            let g = load_groupoid(&groupoid)?;
            let (theta, witness) = groupoid_to_paction(&g)?;
            let psi = psi_object(&theta);
            Ok(json!({"paction": theta.to_doc(), "witness": witness.to_doc(&psi.groupoid, &g)}))
        }
        Command::ReducedCheck { groupoid, hom } => {
            let g = load_groupoid(&groupoid)?;
            let phi = load_hom(&g, &hom)?;
            let in_kernel: Vec<&str> = (0..g.morphism_count())
                .filter(|&m| !g.is_identity(m) && phi.images[m] == phi.target.identity())
                .map(|m| g.morphism_name(m))
                .collect();
            let report = json!({"kernel_condition": kernel_condition(&g, &phi), "morphisms_in_kernel": in_kernel});
            if in_kernel.is_empty() {
                Ok(report)
            } else {
                Err(Failure::Check(report))
            }
        }
        Command::Induce { groupoid, hom } => {
            let g = load_groupoid(&groupoid)?;
            let induced = induce_action(&g, &load_hom(&g, &hom)?)?;
            Ok(json!({"paction": induced.action.to_doc(), "global": induced.is_global()}))
        }
        Command::Compare { groupoid, left, right } => {
            let g = load_groupoid(&groupoid)?;
            let (a, b) = (load_hom(&g, &left)?, load_hom(&g, &right)?);
            Ok(json!({"order": compare_reduced(&a, &b).symbol()}))
        }
        Command::Fixtures { dir } => write_fixtures(&dir),
    }
}

fn render_human(value: &Value) -> String {
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                    let rows: Vec<String> = items.iter().map(|i| format!("  {i}")).collect();
                    format!("{k}:\n{}", rows.join("\n"))
                }
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn emit(value: &Value, human: bool) {
    if human {
        println!("{}", render_human(value));
    } else {
        println!("{}", serde_json::to_string_pretty(value).expect("values serialize"));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(value) => {
            emit(&value, cli.human);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(report)) => {
            emit(&report, cli.human);
            ExitCode::from(1)
        }
        Err(Failure::Parse(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
