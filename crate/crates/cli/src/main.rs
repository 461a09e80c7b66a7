//! `cosetfactor` command-line front end.
//!
//! Exit status: 0 on success, 1 on a domain error (reported on stderr as a
//! JSON object carrying the error name), 2 on a usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cosetfactor::corpus::corpus;
use cosetfactor::families::GroupSpec;
use cosetfactor::report::{
    census_csv, chief_series_dot, lattice_dot, series_dot, survey_csv, to_json, DegreeReport,
    DiagonalReport, GroupReport, IrreducibleDto, LatticeReport, PkDto, SeriesReport,
    SubgroupDto, ThickeningReport, TreeReport,
};
use cosetfactor::{
    analyze_irreducible, ball_aut_group, ball_fixator, cdi_factorize, chief_series, degree,
    focal_orbit_census, is_thick, pk_closure, survey, thickening, verify_series,
    verify_theta_order_iso, Caps, CoreError, DiagonalContext, ElementId, FiniteGroup,
    Permutation, Subgroup, TreeBall,
};

#[derive(Parser)]
#[command(name = "cosetfactor", version, about = "Coset-space decomposition on finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Defaults to the extension of `--out` (`.json`, `.dot`), else text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the main artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a DOT rendering here (lattice, factorize, diagonal).
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(clap::Args)]
struct GroupArg {
    /// Group-definition JSON file or a family expression such as `symmetric(4)`.
    #[arg(long)]
    group: String,
}

#[derive(clap::Args)]
struct PairArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Generators of H in cycle notation, separated by `;`.
    #[arg(long = "H")]
    h: String,
    #[arg(long = "U")]
    u: String,
    /// Generators S (defaults to the generators of H).
    #[arg(long = "S")]
    s: Option<String>,
}

#[derive(Subcommand)]
enum Verb {
    /// Order, generators and normal structure of a group.
    Group(GroupArg),
    /// Full subgroup lattice.
    Lattice(GroupArg),
    /// `T_U(H)` and whether `H` is `U`-thick.
    Thicken {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "H")]
        h: String,
        #[arg(long = "U")]
        u: String,
    },
    /// `deg(G/H, U, S)`.
    Degree(PairArgs),
    /// Factorization series from H up to G, verified clause by clause.
    Factorize(PairArgs),
    /// Chief series and the normal-subgroup/diagonal correspondence.
    Diagonal(GroupArg),
    /// Analysis of a maximal subgroup H.
    Irreducible {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "H")]
        h: String,
    },
    /// Primitive type of the coset action on G/H.
    Typing {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "H")]
        h: String,
    },
    /// Automorphisms of a ball in the regular tree, with an optional
    /// P_k closure of H (generators as permutations of ball vertices).
    Tree {
        #[arg(long)]
        d: usize,
        #[arg(long = "R")]
        radius: usize,
        #[arg(long = "H")]
        h: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Orbit census of the translation-and-shift action on a coset tree slab.
    Focal {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        l: usize,
        #[arg(long = "R")]
        radius: usize,
    },
    /// One row per maximal subgroup class of each corpus group.
    Survey {
        /// `small`, `mid`, `medium`, `empty`, or `;`-separated family expressions.
        #[arg(long, default_value = "small")]
        corpus: String,
        #[arg(long)]
        max_order: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Domain(CoreError),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T> = Result<T, Failure>;

struct Artifact {
    text: String,
    json: String,
    dot: Option<String>,
}

fn load_group(arg: &GroupArg, caps: Caps) -> Outcome<FiniteGroup> {
    let path = std::path::Path::new(&arg.group);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("--group: cannot read {}: {e}", arg.group)))?;
        let spec: GroupSpec = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("--group: {}: {e}", arg.group)))?;
        let g = spec.build(caps)?;
        return Ok(match g.name() {
            Some(_) => g,
            None => {
                let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
                g.with_name(stem.unwrap_or_default())
            }
        });
    }
    if arg.group.ends_with(".json") {
        return Err(Failure::Usage(format!("--group: no such file {}", arg.group)));
    }
    cosetfactor::families::parse_family(&arg.group, caps).map_err(|e| match e {
        CoreError::Parse(m) => Failure::Usage(format!("--group: {m}")),
        other => Failure::Domain(other),
    })
}

fn elements(g: &FiniteGroup, flag: &str, text: &str) -> Outcome<Vec<ElementId>> {
    let perms = Permutation::parse_list(g.degree(), text)
        .map_err(|e| Failure::Usage(format!("--{flag}: {e}")))?;
    perms
        .iter()
        .map(|p| {
            g.require(p)
                .map_err(|_| Failure::Usage(format!("--{flag}: {p} is not an element of {}", g.label())))
        })
        .collect()
}

fn subgroup(g: &FiniteGroup, flag: &str, text: &str) -> Outcome<Subgroup> {
    Ok(g.closure(&elements(g, flag, text)?)?)
}

fn json<T: serde::Serialize>(value: &T) -> Outcome<String> {
    Ok(to_json(value)? + "\n")
}

fn dto_line(d: &SubgroupDto) -> String {
    format!("order {} <{}>", d.order, d.generators.join("; "))
}

fn run(cli: &Cli) -> Outcome<Artifact> {
    let caps = Caps::from_env();
    let mut text = String::new();
    let artifact = match &cli.verb {
        Verb::Group(ga) => {
            let g = load_group(ga, caps)?;
            let r = GroupReport::new(&g)?;
            let _ = writeln!(text, "group {} of degree {} and order {}", r.name, r.degree, r.order);
            let _ = writeln!(text, "generators: {}", r.generators.join("; "));
            let _ = writeln!(text, "abelian: {}", r.abelian);
            let _ = writeln!(text, "conjugacy classes: {}", r.conjugacy_classes);
            let _ = writeln!(text, "normal subgroup orders: {:?}", r.normal_subgroup_orders);
            Artifact { text, json: json(&r)?, dot: None }
        }
        Verb::Lattice(ga) => {
            let g = load_group(ga, caps)?;
            let lat = g.lattice()?;
            let r = LatticeReport::new(&g, &lat);
            let _ = writeln!(text, "{} subgroups, {} covering pairs", r.nodes.len(), r.covers.len());
            for (i, n) in r.nodes.iter().enumerate() {
                let _ = writeln!(text, "{i}: {}", dto_line(n));
            }
            for (a, b) in &r.covers {
                let _ = writeln!(text, "{a} < {b}");
            }
            Artifact { text, json: json(&r)?, dot: Some(lattice_dot(&lat)) }
        }
        Verb::Thicken { group, h, u } => {
            let g = load_group(group, caps)?;
            let h = subgroup(&g, "H", h)?;
            let u = subgroup(&g, "U", u)?;
            let t = thickening(&g, &h, &u)?;
            let r = ThickeningReport {
                h: SubgroupDto::new(&g, &h),
                u: SubgroupDto::new(&g, &u),
                thickening: SubgroupDto::new(&g, &t),
                thick: is_thick(&g, &h, &u)?,
            };
            let _ = writeln!(text, "T_U(H): {}", dto_line(&r.thickening));
            let _ = writeln!(text, "H is U-thick: {}", r.thick);
            Artifact { text, json: json(&r)?, dot: None }
        }
        Verb::Degree(pa) | Verb::Factorize(pa) => {
            let g = load_group(&pa.group, caps)?;
            let h = subgroup(&g, "H", &pa.h)?;
            let u = subgroup(&g, "U", &pa.u)?;
            let s = match &pa.s {
                Some(s) => elements(&g, "S", s)?,
                None => h.generators().to_vec(),
            };
            if let Some(x) = s.iter().find(|&&x| !h.contains(x)) {
                return Err(Failure::Usage(format!("--S: {} is not in H", g.permutation(*x))));
            }
            if matches!(cli.verb, Verb::Degree(_)) {
                let d = degree(&g, &h, &u, &s)?;
                let r = DegreeReport {
                    value: d.value,
                    representatives: d.representatives.iter().map(|&x| g.permutation(x).to_string()).collect(),
                    covered: d.covered_set.len(),
                };
                let _ = writeln!(text, "degree {}", r.value);
                let _ = writeln!(text, "double coset representatives: {}", r.representatives.join("; "));
                Artifact { text, json: json(&r)?, dot: None }
            } else {
                let series = cdi_factorize(&g, &h, &u, &s)?;
                let v = verify_series(&g, &series, &u, &s);
                if !v.passed {
                    return Err(Failure::Domain(CoreError::InvariantViolation(
                        "factorization series failed verification".into(),
                    )));
                }
                let r = SeriesReport::new(&g, &series, v);
                for (i, k) in r.chain.iter().enumerate() {
                    let _ = writeln!(text, "H_{i}: {}", dto_line(k));
                    if let Some(step) = r.steps.get(i) {
                        let _ = writeln!(text, "  {}", step.tag.label());
                    }
                }
                let _ = writeln!(text, "degree trace: {:?} (initial {})", r.degree_trace, r.initial_degree);
                let _ = writeln!(text, "verified: {}", r.verification.passed);
                Artifact { text, json: json(&r)?, dot: Some(series_dot(&series)) }
            }
        }
        Verb::Diagonal(ga) => {
            let g = load_group(ga, caps)?;
            let series = chief_series(&g)?;
            let theta = match DiagonalContext::new(&g) {
                Ok(ctx) => Some(verify_theta_order_iso(&ctx)?),
                Err(CoreError::OrderCapExceeded { .. } | CoreError::LatticeCapExceeded { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let r = DiagonalReport {
                group: g.label(),
                chief_series: series.iter().map(|k| SubgroupDto::new(&g, k)).collect(),
                theta,
            };
            let orders: Vec<usize> = r.chief_series.iter().map(|k| k.order).collect();
            let _ = writeln!(text, "chief series orders: {orders:?}");
            match &r.theta {
                Some(t) => {
                    let _ = writeln!(
                        text,
                        "theta: {} normal subgroups, {} overgroups of the diagonal, bijective {}, order preserving {}",
                        t.normal_count, t.upset_count, t.bijective, t.order_preserving
                    );
                }
                None => text.push_str("theta: skipped, G x G exceeds the caps\n"),
            }
            Artifact { text, json: json(&r)?, dot: Some(chief_series_dot(&series)) }
        }
        Verb::Irreducible { group, h } | Verb::Typing { group, h } => {
            let g = load_group(group, caps)?;
            let h = subgroup(&g, "H", h)?;
            let report = analyze_irreducible(&g, &h)?;
            let dto = IrreducibleDto::new(&g, &report);
            if matches!(cli.verb, Verb::Typing { .. }) {
                let tag = match (&dto.type_tag, &dto.typing_error) {
                    (Some(t), _) => t.clone(),
                    (None, Some(e)) => return Err(Failure::Domain(CoreError::Unclassifiable(e.clone()))),
                    (None, None) => {
                        return Err(Failure::Domain(CoreError::Unclassifiable("no typing produced".into())))
                    }
                };
                let _ = writeln!(text, "type {}", tag.tag.label());
                let e = &tag.evidence;
                let _ = writeln!(
                    text,
                    "socle order {}, {} components, |K| = {}, |C| = {}",
                    e.socle_order, e.component_count, e.k_order, e.centralizer_order
                );
                Artifact { text, json: json(&tag)?, dot: None }
            } else {
                let _ = writeln!(text, "core: {}", dto_line(&dto.core));
                let _ = writeln!(text, "faithful: {}", dto.faithful);
                if let Some(p) = &dto.reduced_pair {
                    let _ = writeln!(text, "faithful form: degree {}, order {}, |H| = {}", p.degree, p.order, p.h_order);
                }
                let _ = writeln!(text, "minimal normal subgroups: {}", dto.minimal_normals.len());
                for f in &dto.per_normal {
                    let _ = writeln!(
                        text,
                        "  {}: free {}, supplement {}, complement {}, |C_G| = {}",
                        dto_line(&f.subgroup),
                        f.free,
                        f.supplement,
                        f.complement,
                        f.centralizer_order
                    );
                }
                let _ = writeln!(text, "case ({})", dto.case);
                match (&dto.type_tag, &dto.typing_error) {
                    (Some(t), _) => {
                        let _ = writeln!(text, "type {}", t.tag.label());
                    }
                    (None, Some(e)) => {
                        let _ = writeln!(text, "type unavailable: {e}");
                    }
                    _ => {}
                }
                Artifact { text, json: json(&dto)?, dot: None }
            }
        }
        Verb::Tree { d, radius, h, k } => {
            let ball = TreeBall::new(*d, *radius)?;
            let g = ball_aut_group(&ball)?;
            let center_fixator_orders = (0..=2 * radius)
                .map(|k| ball_fixator(&g, &ball, 0, k).map(|f| f.order()))
                .collect::<Result<Vec<_>, _>>()?;
            let closure = match (h, k) {
                (Some(h), Some(k)) => {
                    let h = subgroup(&g, "H", h)?;
                    let c = pk_closure(&g, &ball, &h, *k)?;
                    Some(PkDto {
                        k: *k,
                        h: SubgroupDto::new(&g, &h),
                        direct: SubgroupDto::new(&g, &c.direct),
                        via_thickening: SubgroupDto::new(&g, &c.via_thickening),
                        representatives: c.representatives,
                        agree: c.agree,
                    })
                }
                (None, None) => None,
                _ => return Err(Failure::Usage("--H and --k must be given together".into())),
            };
            let r = TreeReport {
                d: *d,
                radius: *radius,
                vertices: ball.vertex_count(),
                group_order: g.order(),
                center_fixator_orders,
                closure,
            };
            let _ = writeln!(text, "ball({}, {}): {} vertices, |Aut| = {}", r.d, r.radius, r.vertices, r.group_order);
            let _ = writeln!(text, "centre fixator orders by k: {:?}", r.center_fixator_orders);
            if let Some(c) = &r.closure {
                let _ = writeln!(
                    text,
                    "P_{} closure: direct order {}, via thickenings order {}, agree {}",
                    c.k, c.direct.order, c.via_thickening.order, c.agree
                );
            }
            Artifact { text, json: json(&r)?, dot: None }
        }
        Verb::Focal { p, d, l, radius } => {
            let c = focal_orbit_census(*p, *d, *l, *radius)?;
            let _ = writeln!(text, "interior orbits: {}", c.interior_orbits);
            text.push_str(&census_csv(&c)?);
            Artifact { text, json: json(&c)?, dot: None }
        }
        Verb::Survey { corpus: spec, max_order } => {
            let groups = corpus(spec, *max_order, caps).map_err(|e| match e {
                CoreError::Parse(m) => Failure::Usage(format!("--corpus: {m}")),
                other => Failure::Domain(other),
            })?;
            let table = survey(&groups);
            if !table.reconciles() {
                return Err(Failure::Domain(CoreError::InvariantViolation(
                    "survey histograms do not reconcile with rows".into(),
                )));
            }
            text.push_str(&survey_csv(&table)?);
            let s = &table.summary;
            let _ = writeln!(text, "# rows {} errors {}", s.rows, s.errors);
            let _ = writeln!(text, "# cases {:?}", s.cases);
            let _ = writeln!(text, "# types {:?}", s.types);
            let _ = writeln!(text, "# minimal normal counts {:?}", s.minimal_normal_counts);
            Artifact { text, json: json(&table)?, dot: None }
        }
    };
    Ok(artifact)
}

fn write_out(path: Option<&PathBuf>, body: &str) -> Outcome<()> {
    match path {
        Some(p) => std::fs::write(p, body)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn emit(cli: &Cli, a: Artifact) -> Outcome<()> {
    let inferred = cli.out.as_ref().and_then(|p| p.extension()).and_then(|e| match e.to_str() {
        Some("json") => Some(Format::Json),
        Some("dot") => Some(Format::Dot),
        _ => None,
    });
    let main = match cli.format.or(inferred).unwrap_or(Format::Text) {
        Format::Text => a.text,
        Format::Json => a.json,
        Format::Dot => a
            .dot
            .clone()
            .ok_or_else(|| Failure::Usage("--format dot: this verb has no DOT rendering".into()))?,
    };
    if cli.dot.is_some() && a.dot.is_none() {
        return Err(Failure::Usage("--dot: this verb has no DOT rendering".into()));
    }
    write_out(cli.out.as_ref(), &main)?;
    if let (Some(path), Some(dot)) = (&cli.dot, &a.dot) {
        write_out(Some(path), dot)?;
    }
    Ok(())
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
    match run(&cli).and_then(|a| emit(&cli, a)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            let diag = serde_json::json!({ "error": e.name(), "message": e.to_string() });
            eprintln!("{diag}");
            ExitCode::from(1)
        }
    }
}
