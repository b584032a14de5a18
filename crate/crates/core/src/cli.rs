//! Command-line front end. Exit codes: 0 success, 1 failed check or missing
//! witness, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::covers::{
    enumerate_rosettes, fan_composition, fan_configuration, rosette_kind, RosetteKind,
};
use crate::hyperplanes::{Hyperplane, OvoidClass};
use crate::subquads::partition_witness;
use crate::veldkamp::{comp, nonlinearity_witnesses, CoreType, VLine};
use crate::{export, verify, Error, GramForm, Model, PointSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "gq42",
    about = "GQ(4,2), its geometric hyperplanes and its Veldkamp space"
)]
pub struct Cli {
    /// Hermitian form defining H(3,4).
    #[arg(long, value_enum, default_value_t = Gram::SymplecticJ, global = true)]
    pub gram: Gram,
    /// GQ(2,2) copy used for tri/uni classification (0 = reference copy).
    #[arg(long, default_value_t = 0, global = true)]
    pub copy: usize,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Gram {
    SymplecticJ,
    Diagonal,
}

impl From<Gram> for GramForm {
    fn from(g: Gram) -> GramForm {
        match g {
            Gram::SymplecticJ => GramForm::SymplecticJ,
            Gram::Diagonal => GramForm::Diagonal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a named check, a criterion id (A1..A16) or `all`.
    Verify { check: String },
    /// Tabulate a family of objects.
    Census {
        #[arg(value_enum)]
        kind: CensusKind,
    },
    /// Emit an explicit configuration.
    Witness {
        #[arg(value_enum)]
        which: WitnessKind,
    },
    /// Export structures as JSON (or the collinearity graph as DOT).
    Export {
        #[arg(value_enum)]
        what: ExportKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CensusKind {
    Hyperplanes,
    Vlines,
    Fans,
    Rosettes,
    Triads,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Spider,
    Bee,
    Frog,
    Partition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Geometry,
    Hyperplanes,
    Vlines,
    Group,
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(Outcome::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Outcome::Failed(e)) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

enum Outcome {
    Usage(String),
    Failed(Error),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Outcome {
        Outcome::Failed(e)
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Outcome> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Outcome::Failed(e.into())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Outcome::Failed(e.into()))
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, Outcome> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn check_copy(model: &Model, copy: usize) -> Result<(), Outcome> {
    let n = model.copies()?.len();
    if copy >= n {
        return Err(Outcome::Usage(format!(
            "--copy {copy} out of range (0..{n})"
        )));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<i32, Outcome> {
    if let Command::Verify { check } = &cli.command {
        if verify::resolve(check).is_none() {
            let names: Vec<&str> = verify::CHECKS.iter().map(|c| c.name).collect();
            return Err(Outcome::Usage(format!(
                "unknown check `{check}`; expected all, A1..A16 or one of {}",
                names.join(", ")
            )));
        }
    }
    if cli.format == Some(Format::Dot)
        && !matches!(
            cli.command,
            Command::Export {
                what: ExportKind::Geometry
            }
        )
    {
        return Err(Outcome::Usage(
            "--format dot applies only to `export geometry`".into(),
        ));
    }
    let model = Model::build(cli.gram.into())?;
    match &cli.command {
        Command::Verify { check } => cmd_verify(cli, &model, check),
        Command::Census { kind } => cmd_census(cli, &model, *kind),
        Command::Witness { which } => cmd_witness(cli, &model, *which),
        Command::Export { what } => cmd_export(cli, &model, *what),
    }
}

fn cmd_verify(cli: &Cli, model: &Model, check: &str) -> Result<i32, Outcome> {
    check_copy(model, cli.copy)?;
    let checks = verify::resolve(check).expect("validated before building");
    let rows = verify::run(model, &checks, cli.copy);
    let ok = verify::all_pass(&rows);
    let text = if cli.format == Some(Format::Json) {
        json(&rows)?
    } else {
        let mut t: String = rows.iter().map(|r| format!("{r}\n")).collect();
        let failed = rows
            .iter()
            .filter(|r| r.status == verify::Status::Fail)
            .count();
        t.push_str(&format!("{} rows, {failed} failed\n", rows.len()));
        t
    };
    emit(cli, &text)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}

fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn cmd_census(cli: &Cli, model: &Model, kind: CensusKind) -> Result<i32, Outcome> {
    let gq = model.gq();
    let rows: Vec<(String, String)> = match kind {
        CensusKind::Hyperplanes => {
            let cat = &model.catalog;
            vec![
                ("perps".into(), cat.n_perps().to_string()),
                (
                    "plane-ovoids".into(),
                    cat.plane_ovoid_ids().len().to_string(),
                ),
                ("tripods".into(), cat.tripod_ids().len().to_string()),
                ("total".into(), cat.len().to_string()),
            ]
        }
        CensusKind::Vlines => {
            let census = model.census();
            let mut rows: Vec<(String, String)> = census
                .table()
                .into_iter()
                .map(|r| {
                    let core = serde_json::to_value(r.key.core).map_err(Error::from)?;
                    Ok((
                        format!(
                            "size={} {} core={}",
                            r.key.size,
                            r.key.composition,
                            core.as_str().unwrap_or("?")
                        ),
                        r.count.to_string(),
                    ))
                })
                .collect::<Result<_, Outcome>>()?;
            rows.push(("total".into(), census.len().to_string()));
            rows
        }
        CensusKind::Fans => {
            check_copy(model, cli.copy)?;
            let fans = model.fans();
            let classes = model.ovoid_classes(cli.copy)?;
            let mut by: std::collections::BTreeMap<(usize, usize, usize), usize> =
                Default::default();
            for f in fans {
                *by.entry(fan_composition(f, &classes)).or_default() += 1;
            }
            let mut rows: Vec<(String, String)> = by
                .into_iter()
                .map(|((p, t, u), n)| (format!("plane={p} tri={t} uni={u}"), n.to_string()))
                .collect();
            rows.push(("total".into(), fans.len().to_string()));
            rows
        }
        CensusKind::Rosettes => {
            let is_plane = model.is_plane();
            let (mut total, mut plane, mut tripod, mut mixed) = (0, 0, 0, 0);
            for x in 0..gq.n_points() {
                for r in enumerate_rosettes(gq, model.ovoids(), x) {
                    total += 1;
                    match rosette_kind(&r, &is_plane) {
                        RosetteKind::AllPlane => plane += 1,
                        RosetteKind::AllTripod => tripod += 1,
                        RosetteKind::Mixed => mixed += 1,
                    }
                }
            }
            vec![
                ("all-plane".into(), plane.to_string()),
                ("all-tripod".into(), tripod.to_string()),
                ("mixed".into(), mixed.to_string()),
                ("total (point, rosette) pairs".into(), total.to_string()),
            ]
        }
        CensusKind::Triads => {
            let c = gq.triad_census();
            vec![
                ("tricentric".into(), c.tricentric.to_string()),
                ("unicentric".into(), c.unicentric.to_string()),
                ("acentric".into(), c.acentric.to_string()),
                (
                    "with-collinear-pair".into(),
                    c.with_collinear_pair.to_string(),
                ),
            ]
        }
    };
    let text = if cli.format == Some(Format::Json) {
        let map: std::collections::BTreeMap<&str, &str> =
            rows.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        json(&map)?
    } else {
        table(&rows)
    };
    emit(cli, &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VLineDetail<'a> {
    members: Vec<&'a Hyperplane>,
    generating_pairs: &'a [(usize, usize)],
    core: PointSet,
}

fn detail<'a>(model: &'a Model, l: &'a VLine) -> VLineDetail<'a> {
    VLineDetail {
        members: l.members.iter().map(|&h| model.catalog.get(h)).collect(),
        generating_pairs: &l.generating_pairs,
        core: l.core,
    }
}

fn first_of_kind(
    model: &Model,
    size: usize,
    composition: crate::veldkamp::Composition,
    core: CoreType,
) -> Option<&VLine> {
    let census = model.census();
    (0..census.len())
        .find(|&i| {
            census.key(i)
                == crate::veldkamp::CensusKey {
                    size,
                    composition,
                    core,
                }
        })
        .map(|i| &census.vlines[i])
}

fn cmd_witness(cli: &Cli, model: &Model, which: WitnessKind) -> Result<i32, Outcome> {
    let missing = |what: &str| Outcome::Failed(Error::NoWitness(what.to_string()));
    let text = match which {
        WitnessKind::Fig3 | WitnessKind::Fig4 | WitnessKind::Fig5 => {
            let r = nonlinearity_witnesses(
                model.gq(),
                &model.catalog,
                model.census(),
                &model.fan_hyperplanes(),
            );
            match which {
                WitnessKind::Fig3 => {
                    let w = r
                        .shared_triple
                        .as_ref()
                        .ok_or_else(|| missing("two V-lines sharing three V-points"))?;
                    json(&serde_json::json!({
                        "shared": w.shared,
                        "triad": w.triad,
                        "with_plane_ovoids": detail(model, &w.with_plane_ovoids),
                        "with_tripods": detail(model, &w.with_tripods),
                    }))?
                }
                WitnessKind::Fig4 => {
                    if !r.rosettes.passes() {
                        emit(cli, &json(&r.rosettes)?)?;
                        return Err(missing("three rosette V-lines through a perp and a tripod"));
                    }
                    json(&r.rosettes)?
                }
                _ => {
                    let report = serde_json::json!({
                        "search": r.fans,
                        "discrepancy": r.fan_discrepancy,
                    });
                    if !r.fans.passes() {
                        emit(cli, &json(&report)?)?;
                        return Err(missing(&format!(
                            "at most {} fan V-lines through a plane ovoid and a tripod, {} required",
                            r.fans.best, r.fans.required
                        )));
                    }
                    json(&report)?
                }
            }
        }
        WitnessKind::Fig6 => {
            let l = first_of_kind(model, 3, comp(1, 0, 2), CoreType::UnicentricTriad)
                .ok_or_else(|| missing("size-3 V-line"))?;
            json(&detail(model, l))?
        }
        WitnessKind::Fig7 => {
            let l = first_of_kind(model, 2, comp(0, 1, 1), CoreType::SixSet)
                .ok_or_else(|| missing("size-2 V-line"))?;
            json(&detail(model, l))?
        }
        WitnessKind::Spider | WitnessKind::Bee | WitnessKind::Frog => {
            check_copy(model, cli.copy)?;
            let target = match which {
                WitnessKind::Spider => OvoidClass::Plane,
                WitnessKind::Bee => OvoidClass::TriTripod,
                _ => OvoidClass::UniTripod,
            };
            let classes = model.ovoid_classes(cli.copy)?;
            let o = classes
                .iter()
                .position(|&c| c == target)
                .ok_or_else(|| missing("ovoid of the requested class"))?;
            let report = fan_configuration(o, model.ovoids(), model.fans(), &classes);
            let fans: Vec<Vec<PointSet>> = report
                .fans
                .iter()
                .map(|&f| {
                    model.fans()[f]
                        .0
                        .iter()
                        .map(|&x| model.ovoids()[x])
                        .collect()
                })
                .collect();
            json(
                &serde_json::json!({ "ovoid_points": model.ovoids()[o], "fan_points": fans, "report": report }),
            )?
        }
        WitnessKind::Partition => {
            let report = partition_witness(model.gq(), model.copies()?);
            if report.witness.is_none() {
                emit(cli, &json(&report)?)?;
                return Err(missing("grid / dual grid partition"));
            }
            json(&report)?
        }
    };
    emit(cli, &text)?;
    Ok(EXIT_OK)
}

fn cmd_export(cli: &Cli, model: &Model, what: ExportKind) -> Result<i32, Outcome> {
    let mut text = match (what, cli.format.unwrap_or(Format::Json)) {
        (ExportKind::Geometry, Format::Dot) => export::collinearity_dot(&model.surface),
        (ExportKind::Geometry, Format::Json) => export::geometry_json(model)?,
        (ExportKind::Hyperplanes, _) => export::hyperplanes_json(model)?,
        (ExportKind::Vlines, _) => export::vlines_json(model)?,
        (ExportKind::Group, _) => export::group_json(model)?,
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(cli, &text)?;
    Ok(EXIT_OK)
}
