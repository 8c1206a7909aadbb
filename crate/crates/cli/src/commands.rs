//! Subcommand implementations.

use crate::manifest::{RunConfig, RunWriter};
use crate::{Cli, ColimitCmd, Command, ConstructCmd, CorpusCmd, LiftCmd, SimplicialCmd};
use catbox::colimits;
use catbox::construct;
use catbox::corpus;
use catbox::fincat::comma_category;
use catbox::io::{self, Loader};
use catbox::lifting::{self, LiftingProblem, SearchLimit};
use catbox::ofs;
use catbox::ordsimp::{self, OrdinalWindow};
use catbox::presheaf::PresheafMap;
use catbox::soa::{self, BoundednessConfig, MorphismClassSource, SoaStatus};
use serde::Serialize;
use std::error::Error;
use std::path::Path;

type Outcome = Result<(), Box<dyn Error>>;

#[derive(Serialize)]
struct Answer<T: Serialize> {
    query: String,
    result: T,
}

#[derive(Serialize)]
struct ConeReport {
    cones: usize,
    weakly_initial: Vec<usize>,
    no_cones: bool,
    covered: bool,
}

#[derive(Serialize)]
struct SymmetrizeReport {
    censuses: Vec<Vec<usize>>,
    injectivity: Vec<bool>,
    status: String,
}

#[derive(Serialize)]
struct CorpusSummary {
    total: usize,
    passed: usize,
    failed: usize,
    failing_ids: Vec<String>,
}

pub fn dispatch(cli: &Cli, argv: &[String]) -> Outcome {
    let config = RunConfig {
        budget: cli.budget,
        max_stages: cli.max_stages,
        prune: !cli.no_prune,
        window: cli.window,
    };
    let mut writer = RunWriter::new(&cli.out, argv, config)?;
    let limit = SearchLimit(cli.budget);
    let soa_config = BoundednessConfig {
        max_stages: cli.max_stages,
        prune_solved: !cli.no_prune,
    };
    match &cli.command {
        Command::Validate { file } => {
            let text = writer.read_input(file)?;
            let parsed: io::CategoryFile = io::from_json(&text)?;
            let mut loader = Loader::new();
            let cat = loader.category(&io::CategoryRef::Inline(parsed))?;
            writer.write_output("category.json", &io::to_json_line(&io::category_file(&cat))?)?;
        }
        Command::Construct { kind } => construct_cmd(kind, &mut writer)?,
        Command::Colimit { kind } => colimit_cmd(kind, &mut writer)?,
        Command::Lift { kind } => lift_cmd(kind, &mut writer, limit)?,
        Command::Factorize { class, map } => {
            let generators = load_class(&mut writer, class)?;
            let f = load_map(&mut writer, map)?;
            let cert = soa::factorize(
                &f,
                &MorphismClassSource::new(generators),
                &soa_config,
                limit,
            )?;
            writer.write_output(
                "certificate.json",
                &io::to_json_line(&io::certificate_file(&cert))?,
            )?;
        }
        Command::Reflect { class, object } => {
            let generators = load_class(&mut writer, class)?;
            let k = load_presheaf(&mut writer, object)?;
            let r = soa::weak_reflection(
                &k,
                &MorphismClassSource::new(generators),
                &soa_config,
                limit,
            )?;
            writer.write_output(
                "certificate.json",
                &io::to_json_line(&io::certificate_file(&r.certificate))?,
            )?;
            writer.write_output(
                "reflection.json",
                &io::to_json_line(&io::presheaf_file(&r.reflection))?,
            )?;
            writer.write_output("unit.json", &io::to_json_line(&io::map_file(&r.map))?)?;
        }
        Command::Ofactorize { class, map } => {
            let generators = load_class(&mut writer, class)?;
            let f = load_map(&mut writer, map)?;
            let cert = ofs::orth_factorize(&f, &generators, &soa_config, limit)?;
            writer.write_output(
                "certificate.json",
                &io::to_json_line(&io::certificate_file(&cert))?,
            )?;
        }
        Command::ReflectOrt {
            class,
            object,
            test_object,
        } => {
            let generators = load_class(&mut writer, class)?;
            let k = load_presheaf(&mut writer, object)?;
            let family = test_object
                .iter()
                .map(|p| load_presheaf(&mut writer, p))
                .collect::<Result<Vec<_>, _>>()?;
            let r = ofs::reflect_ort(&k, &generators, &soa_config, limit, &family)?;
            writer.write_output(
                "certificate.json",
                &io::to_json_line(&io::certificate_file(&r.certificate))?,
            )?;
            writer.write_output(
                "reflection.json",
                &io::to_json_line(&io::presheaf_file(&r.reflection))?,
            )?;
            writer.write_output("unit.json", &io::to_json_line(&io::map_file(&r.map))?)?;
            writer.write_output(
                "universal.json",
                &io::to_json_line(&Answer {
                    query: "universal factorization counts".into(),
                    result: r.universal_counts.clone(),
                })?,
            )?;
        }
        Command::SquareCorr { left, right } => {
            let f = load_map(&mut writer, left)?;
            let g = load_map(&mut writer, right)?;
            let holds = ofs::square_correspondence_check(&f, &g, limit)?;
            writer.write_output(
                "answer.json",
                &io::to_json_line(&Answer {
                    query: "square correspondence".into(),
                    result: holds,
                })?,
            )?;
        }
        Command::Simplicial { kind } => simplicial_cmd(kind, &mut writer, cli.window, limit)?,
        Command::Corpus { kind: CorpusCmd::Run } => {
            let report = corpus::run_corpus(limit);
            let mut lines = String::new();
            for item in &report.items {
                lines.push_str(&io::to_json_line(item)?);
            }
            writer.write_output("corpus.jsonl", &lines)?;
            let failing: Vec<String> =
                report.failures().iter().map(|i| i.id.clone()).collect();
            let summary = CorpusSummary {
                total: report.items.len(),
                passed: report.items.iter().filter(|i| i.pass).count(),
                failed: failing.len(),
                failing_ids: failing,
            };
            writer.write_output("summary.json", &io::to_json_line(&summary)?)?;
            if !report.all_pass() {
                writer.finish()?;
                return Err("corpus checks failed; see summary.json".into());
            }
        }
        Command::Verify { certificate, class } => {
            let generators = load_class(&mut writer, class)?;
            let text = writer.read_input(certificate)?;
            let parsed: io::CertificateFile = io::from_json(&text)?;
            let mut loader = Loader::new();
            let cert = loader.certificate(&parsed)?;
            if !cert.factors_exactly() {
                writer.finish()?;
                return Err("composite does not reproduce the original morphism".into());
            }
            lifting::verify_cellular(&cert.cellular(), &generators)?;
            if cert.status == SoaStatus::Fixpoint {
                for (i, h) in generators.iter().enumerate() {
                    if !lifting::box_rel(h, &cert.residual, limit)? {
                        writer.finish()?;
                        return Err(
                            format!("generator {i} fails lifting against the residual").into()
                        );
                    }
                }
            }
            writer.write_output(
                "answer.json",
                &io::to_json_line(&Answer {
                    query: "certificate verification".into(),
                    result: true,
                })?,
            )?;
        }
    }
    writer.finish()?;
    Ok(())
}

fn load_class(writer: &mut RunWriter, path: &Path) -> Result<Vec<PresheafMap>, Box<dyn Error>> {
    let text = writer.read_input(path)?;
    let parsed: io::ClassFile = io::from_json(&text)?;
    let mut loader = Loader::new();
    Ok(loader.class(&parsed)?)
}

fn load_map(writer: &mut RunWriter, path: &Path) -> Result<PresheafMap, Box<dyn Error>> {
    let text = writer.read_input(path)?;
    let parsed: io::MapFile = io::from_json(&text)?;
    let mut loader = Loader::new();
    Ok(loader.map(&parsed)?)
}

fn load_presheaf(
    writer: &mut RunWriter,
    path: &Path,
) -> Result<catbox::presheaf::TabularPresheaf, Box<dyn Error>> {
    let text = writer.read_input(path)?;
    let parsed: io::PresheafFile = io::from_json(&text)?;
    let mut loader = Loader::new();
    Ok(loader.presheaf(&parsed)?)
}

fn load_functor(
    writer: &mut RunWriter,
    path: &Path,
) -> Result<catbox::fincat::Functor, Box<dyn Error>> {
    let text = writer.read_input(path)?;
    let parsed: io::FunctorFile = io::from_json(&text)?;
    let mut loader = Loader::new();
    Ok(loader.functor(&parsed)?)
}

fn load_nat(
    writer: &mut RunWriter,
    path: &Path,
) -> Result<catbox::fincat::NatTransformation, Box<dyn Error>> {
    let text = writer.read_input(path)?;
    let parsed: io::NatFile = io::from_json(&text)?;
    let mut loader = Loader::new();
    Ok(loader.nat(&parsed)?)
}

fn construct_cmd(kind: &ConstructCmd, writer: &mut RunWriter) -> Outcome {
    match kind {
        ConstructCmd::Pspb { left, right } => {
            let f = load_functor(writer, left)?;
            let g = load_functor(writer, right)?;
            let p = construct::pseudopullback(&f, &g)?;
            writer.write_output(
                "pspb.json",
                &io::to_json_line(&io::category_file(&p.category))?,
            )?;
            writer.write_output(
                "proj_left.json",
                &io::to_json_line(&io::functor_file(&p.proj_left))?,
            )?;
            writer.write_output(
                "proj_right.json",
                &io::to_json_line(&io::functor_file(&p.proj_right))?,
            )?;
        }
        ConstructCmd::Inserter { left, right } => {
            let f = load_functor(writer, left)?;
            let g = load_functor(writer, right)?;
            let ins = construct::inserter(&f, &g)?;
            writer.write_output(
                "inserter.json",
                &io::to_json_line(&io::category_file(&ins.category))?,
            )?;
            writer.write_output(
                "projection.json",
                &io::to_json_line(&io::functor_file(&ins.projection))?,
            )?;
        }
        ConstructCmd::Equifier { left, right } => {
            let phi = load_nat(writer, left)?;
            let psi = load_nat(writer, right)?;
            let (eq, inclusion) = construct::equifier(&phi, &psi)?;
            writer.write_output("equifier.json", &io::to_json_line(&io::category_file(&eq))?)?;
            writer.write_output(
                "inclusion.json",
                &io::to_json_line(&io::functor_file(&inclusion))?,
            )?;
        }
        ConstructCmd::Comma { left, right } => {
            let f = load_functor(writer, left)?;
            let g = load_functor(writer, right)?;
            let c = comma_category(&f, &g)?;
            writer.write_output(
                "comma.json",
                &io::to_json_line(&io::category_file(&c.category))?,
            )?;
            writer.write_output(
                "proj_left.json",
                &io::to_json_line(&io::functor_file(&c.proj_left))?,
            )?;
            writer.write_output(
                "proj_right.json",
                &io::to_json_line(&io::functor_file(&c.proj_right))?,
            )?;
        }
        ConstructCmd::ApproxComplete { diagram } => {
            let functors = diagram
                .iter()
                .map(|p| load_functor(writer, p))
                .collect::<Result<Vec<_>, _>>()?;
            let reports = construct::approximately_complete_check(&functors);
            let mut lines = String::new();
            for r in &reports {
                lines.push_str(&io::to_json_line(&ConeReport {
                    cones: r.cones.len(),
                    weakly_initial: r.weakly_initial.clone(),
                    no_cones: r.no_cones,
                    covered: construct::weakly_initial_covers(r),
                })?);
            }
            writer.write_output("cones.jsonl", &lines)?;
        }
    }
    Ok(())
}

fn colimit_cmd(kind: &ColimitCmd, writer: &mut RunWriter) -> Outcome {
    match kind {
        ColimitCmd::Pushout { left, right } => {
            let f = load_map(writer, left)?;
            let g = load_map(writer, right)?;
            let p = colimits::pushout(&f, &g)?;
            writer.write_output(
                "pushout.json",
                &io::to_json_line(&io::presheaf_file(&p.object))?,
            )?;
            writer.write_output("left_leg.json", &io::to_json_line(&io::map_file(&p.left))?)?;
            writer.write_output(
                "right_leg.json",
                &io::to_json_line(&io::map_file(&p.right))?,
            )?;
        }
        ColimitCmd::Coeq { left, right } => {
            let f = load_map(writer, left)?;
            let g = load_map(writer, right)?;
            let (q, proj) = colimits::coequalizer(&f, &g)?;
            writer.write_output(
                "coequalizer.json",
                &io::to_json_line(&io::presheaf_file(&q))?,
            )?;
            writer.write_output(
                "projection.json",
                &io::to_json_line(&io::map_file(&proj))?,
            )?;
        }
        ColimitCmd::Chain { map } => {
            let maps = map
                .iter()
                .map(|p| load_map(writer, p))
                .collect::<Result<Vec<_>, _>>()?;
            if maps.is_empty() {
                return Err("chain colimit needs at least one map".into());
            }
            let first = maps[0].source().clone();
            let cocone = colimits::chain_colimit(&first, &maps)?;
            writer.write_output(
                "colimit.json",
                &io::to_json_line(&io::presheaf_file(&cocone.apex))?,
            )?;
            let legs: Vec<io::MapFile> = cocone.legs.iter().map(io::map_file).collect();
            writer.write_output("legs.json", &io::to_json_line(&legs)?)?;
        }
    }
    Ok(())
}

fn lift_cmd(kind: &LiftCmd, writer: &mut RunWriter, limit: SearchLimit) -> Outcome {
    match kind {
        LiftCmd::Solve {
            left,
            right,
            top,
            bottom,
        } => {
            let problem = LiftingProblem::new(
                load_map(writer, left)?,
                load_map(writer, right)?,
                load_map(writer, top)?,
                load_map(writer, bottom)?,
            )?;
            let diagonals = lifting::solve(&problem, limit)?;
            writer.write_output(
                "answer.json",
                &io::to_json_line(&Answer {
                    query: "diagonal count".into(),
                    result: diagonals.len(),
                })?,
            )?;
            for (i, d) in diagonals.iter().enumerate() {
                writer.write_output(
                    &format!("diagonal{i}.json"),
                    &io::to_json_line(&io::map_file(d))?,
                )?;
            }
        }
        LiftCmd::Box { left, right } => {
            let f = load_map(writer, left)?;
            let g = load_map(writer, right)?;
            let holds = lifting::box_rel(&f, &g, limit)?;
            writer.write_output(
                "answer.json",
                &io::to_json_line(&Answer {
                    query: "box".into(),
                    result: holds,
                })?,
            )?;
        }
        LiftCmd::Perp { left, right } => {
            let f = load_map(writer, left)?;
            let g = load_map(writer, right)?;
            let holds = lifting::perp_rel(&f, &g, limit)?;
            writer.write_output(
                "answer.json",
                &io::to_json_line(&Answer {
                    query: "perp".into(),
                    result: holds,
                })?,
            )?;
        }
        LiftCmd::Inj { object, class } => {
            let x = load_presheaf(writer, object)?;
            let generators = load_class(writer, class)?;
            let holds = lifting::injective(&x, &generators, limit)?;
            writer.write_output(
                "answer.json",
                &io::to_json_line(&Answer {
                    query: "injective".into(),
                    result: holds,
                })?,
            )?;
        }
        LiftCmd::Ort { object, class } => {
            let x = load_presheaf(writer, object)?;
            let generators = load_class(writer, class)?;
            let holds = lifting::orthogonal(&x, &generators, limit)?;
            writer.write_output(
                "answer.json",
                &io::to_json_line(&Answer {
                    query: "orthogonal".into(),
                    result: holds,
                })?,
            )?;
        }
    }
    Ok(())
}

fn simplicial_cmd(
    kind: &SimplicialCmd,
    writer: &mut RunWriter,
    window: usize,
    limit: SearchLimit,
) -> Outcome {
    let w = OrdinalWindow::new(window)?;
    match kind {
        SimplicialCmd::Delta { alpha } => {
            let d = ordsimp::delta(&w, *alpha)?;
            let census = ordsimp::census(&w, &d)?;
            writer.write_output("delta.json", &io::to_json_line(&io::presheaf_file(&d))?)?;
            writer.write_output("census.json", &io::to_json_line(&census.counts)?)?;
        }
        SimplicialCmd::Delta1s => {
            let (d1s, j) = ordsimp::delta_1s(&w)?;
            let census = ordsimp::census(&w, &d1s)?;
            writer.write_output(
                "delta1s.json",
                &io::to_json_line(&io::presheaf_file(&d1s))?,
            )?;
            writer.write_output("j.json", &io::to_json_line(&io::map_file(&j))?)?;
            writer.write_output("census.json", &io::to_json_line(&census.counts)?)?;
        }
        SimplicialCmd::Symmetrize { alpha, stages } => {
            let d = ordsimp::delta(&w, *alpha)?;
            let s = ordsimp::symmetrize(&w, &d, *stages, limit)?;
            let report = SymmetrizeReport {
                censuses: s.censuses.iter().map(|c| c.counts.clone()).collect(),
                injectivity: s.injectivity.clone(),
                status: match s.certificate.status {
                    SoaStatus::Fixpoint => "fixpoint".into(),
                    SoaStatus::BudgetExhausted(k) => format!("budget_exhausted:{k}"),
                },
            };
            writer.write_output("symmetrization.json", &io::to_json_line(&report)?)?;
            writer.write_output(
                "certificate.json",
                &io::to_json_line(&io::certificate_file(&s.certificate))?,
            )?;
        }
    }
    Ok(())
}
