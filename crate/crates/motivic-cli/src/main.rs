//! `motivic`: an exact-arithmetic calculator for quadratic form
//! invariants, Brauer classes, motivic decompositions, and Riemann-Roch
//! on products of projective spaces.
//!
//! Exit codes: 0 success, 2 invalid input, 3 internal invariant
//! violation. Errors are structured JSON on stderr.

mod parse;
mod reports;

use clap::{Parser, Subcommand, ValueEnum};
use motivic::arith::{
    format_rational, scalar_is_invertible, todd_denominator, LocalizedScalar, RingTag,
};
use motivic::brauer::BrauerClass;
use motivic::charclasses::{chern_numerator, todd_polynomial};
use motivic::grr::{
    ch_iso_check, euler_characteristic, parse_bundle, todd_of, ToyScheme,
};
use motivic::motive::sampler::{random_reconstruction_instance, reconstruction_tag};
use motivic::motive::{
    chow_indecomposable_by_citation, quadric_nc_motive, reconstruct_from_components,
    severi_brauer_nc_motive, AlgebraClass,
};
use motivic::qform::{
    clifford_invariant, hasse_invariant, is_anisotropic, pfister, relevant_places, QuadraticForm,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reports::*;

#[derive(Parser)]
#[command(
    name = "motivic",
    version,
    about = "Exact calculator for quadratic form invariants, Brauer classes, and motivic decompositions"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Quadratic forms over Q.
    Qf {
        #[command(subcommand)]
        cmd: QfCommand,
    },
    /// Motivic decompositions and the twist-reconstruction driver.
    Motive {
        #[command(subcommand)]
        cmd: MotiveCommand,
    },
    /// Table of Chern-character numerators S_m.
    Chern {
        #[arg(long)]
        max_degree: u32,
    },
    /// Table of Todd polynomials with their universal denominators T_m.
    Todd {
        #[arg(long)]
        max_degree: u32,
    },
    /// Localized-ring scalar checks.
    Ring {
        #[command(subcommand)]
        cmd: RingCommand,
    },
    /// Riemann-Roch on products of projective spaces.
    Grr {
        #[command(subcommand)]
        cmd: GrrCommand,
    },
    /// Seeded randomized self-test suites.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
}

#[derive(Subcommand)]
enum QfCommand {
    /// Full invariant report for a diagonal form or Gram matrix.
    Analyze {
        /// Comma-separated diagonal entries, e.g. "1,1,1,-7".
        #[arg(long, conflicts_with = "json")]
        form: Option<String>,
        /// JSON input: {"diag": ["1","-1"]} or {"gram": [["0","1"],["1","0"]]}.
        #[arg(long)]
        json: Option<String>,
    },
    /// Expand an iterated two-term tensor form and analyze it.
    Pfister {
        /// Comma-separated slots, e.g. "1,1,1".
        #[arg(long)]
        slots: String,
    },
}

#[derive(Subcommand)]
enum MotiveCommand {
    /// Noncommutative motive of the quadric of a nonsingular form.
    Quadric {
        #[arg(long)]
        form: String,
    },
    /// Noncommutative motive of a Severi-Brauer variety.
    Sb {
        /// Quaternion symbol "(a,b)".
        #[arg(long, conflicts_with_all = ["inv", "order"])]
        class: Option<String>,
        /// Invariant table JSON, e.g. {"inf":"1/2","2":"1/2"}.
        #[arg(long, conflicts_with = "order")]
        inv: Option<String>,
        /// Abstract class of this exact order.
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        degree: u64,
        /// Declare the algebra to be division (metadata only).
        #[arg(long, default_value_t = false)]
        division: bool,
    },
    /// Seeded random twist-reconstruction trials.
    Reconstruct {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
}

#[derive(Subcommand)]
enum RingCommand {
    /// Is a scalar a unit of Z[1/N]?
    Invertible {
        /// The scalar, as "p" or "p/q".
        #[arg(long)]
        x: String,
        /// The inverted integer N (N = 1 means plain Z).
        #[arg(long)]
        invert: String,
    },
}

#[derive(Subcommand)]
enum GrrCommand {
    /// Euler characteristic of a line bundle.
    Euler {
        #[arg(long)]
        scheme: String,
        /// Bundle such as "O(3)" or "O(1,-2)".
        #[arg(long)]
        bundle: String,
    },
    /// Chern-character isomorphism test over Z[1/N].
    Chiso {
        #[arg(long)]
        scheme: String,
        #[arg(long, default_value = "1")]
        invert: String,
    },
    /// Todd class of a scheme over Z[1/N] (over Q if omitted).
    Todd {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        invert: Option<String>,
    },
}

/// Errors are classified for the exit code: invalid input (2) or an
/// internal invariant violation (3).
enum CliError {
    Invalid(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn report(&self) -> ErrorReport {
        match self {
            CliError::Invalid(msg) => ErrorReport::new("invalid_input", msg.clone()),
            CliError::Internal(msg) => ErrorReport::new("internal_invariant", msg.clone()),
        }
    }
}

fn invalid<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Invalid(e.to_string())
}

fn classify_motive(e: motivic::motive::MotiveError) -> CliError {
    use motivic::motive::MotiveError::*;
    match &e {
        SupportViolation(_) | NonFreeFactor(_) => CliError::Internal(e.to_string()),
        Arith(motivic::arith::ArithError::NonIntegerTrace(_)) => CliError::Internal(e.to_string()),
        _ => CliError::Invalid(e.to_string()),
    }
}

fn classify_grr(e: motivic::grr::GrrError) -> CliError {
    use motivic::grr::GrrError::*;
    match &e {
        NonIntegerEuler(_) => CliError::Internal(e.to_string()),
        Arith(motivic::arith::ArithError::NonIntegerTrace(_)) => CliError::Internal(e.to_string()),
        _ => CliError::Invalid(e.to_string()),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command, cli.format) {
        Ok(output) => {
            print!("{output}");
            if !output.ends_with('\n') {
                println!();
            }
        }
        Err(err) => {
            let payload =
                serde_json::to_string_pretty(&err.report()).expect("error reports serialize");
            eprintln!("{payload}");
            std::process::exit(err.exit_code());
        }
    }
}

fn render<T: serde::Serialize>(report: &T, format: Format, text: String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize"),
        Format::Text => text,
    }
}

fn run(command: Command, format: Format) -> Result<String, CliError> {
    match command {
        Command::Qf { cmd } => match cmd {
            QfCommand::Analyze { form, json } => {
                let q = match (form, json) {
                    (Some(f), None) => parse::form_from_list(&f).map_err(invalid)?,
                    (None, Some(j)) => parse::form_from_json(&j).map_err(invalid)?,
                    _ => {
                        return Err(CliError::Invalid(
                            "provide exactly one of --form or --json".into(),
                        ))
                    }
                };
                let report = analyze_form(&q);
                Ok(render(&report, format, report.text()))
            }
            QfCommand::Pfister { slots } => {
                let slots = parse::rational_list(&slots).map_err(invalid)?;
                let q = pfister(&slots).map_err(invalid)?;
                let report = analyze_form(&q);
                Ok(render(&report, format, report.text()))
            }
        },
        Command::Motive { cmd } => match cmd {
            MotiveCommand::Quadric { form } => {
                let q = parse::form_from_list(&form).map_err(invalid)?;
                let expr = quadric_nc_motive(&q).map_err(classify_motive)?;
                let hypotheses = q.prop2_hypotheses();
                let mut notes = Vec::new();
                if hypotheses.all {
                    notes.push(
                        "the Chow motive of this quadric is not a sum of Lefschetz powers over Z \
                         (Rost's theorem on motives of quadrics; recorded by citation, not computed)"
                            .to_string(),
                    );
                }
                let report = QuadricMotiveReport {
                    schema_version: SCHEMA_VERSION.to_string(),
                    kind: "quadric_motive_report".to_string(),
                    diagonal: q.entries().iter().map(format_rational).collect(),
                    quadric_dimension: q.dimension() - 2,
                    hypotheses: hypotheses.into(),
                    nc_motive: NCMotiveJson::from_expr(&expr),
                    unit_type: expr.is_unit_type(),
                    decomposable: expr.is_decomposable(),
                    notes,
                };
                Ok(render(&report, format, report.text()))
            }
            MotiveCommand::Sb {
                class,
                inv,
                order,
                degree,
                division,
            } => {
                if degree == 0 {
                    return Err(CliError::Invalid("degree must be at least 1".into()));
                }
                let algebra_class = match (class, inv, order) {
                    (Some(symbol), None, None) => {
                        let (a, b) = parse::quaternion_symbol(&symbol).map_err(invalid)?;
                        AlgebraClass::Concrete(BrauerClass::from_quaternion(&a, &b))
                    }
                    (None, Some(table), None) => {
                        let c = parse::brauer_from_json(&table).map_err(invalid)?;
                        AlgebraClass::Concrete(c)
                    }
                    (None, None, Some(e)) => {
                        if e == 0 {
                            return Err(CliError::Invalid("order must be at least 1".into()));
                        }
                        AlgebraClass::abstract_of_order(e)
                    }
                    (None, None, None) => {
                        AlgebraClass::Concrete(BrauerClass::trivial())
                    }
                    _ => {
                        return Err(CliError::Invalid(
                            "provide at most one of --class, --inv, --order".into(),
                        ))
                    }
                };
                let expr = severi_brauer_nc_motive(&algebra_class, degree);
                let (class_json, abstract_order) = match &algebra_class {
                    AlgebraClass::Concrete(c) => (Some(BrauerClassJson::from_class(c)), None),
                    AlgebraClass::Abstract { order, .. } => (None, Some(*order)),
                };
                let report = SeveriBrauerReport {
                    schema_version: SCHEMA_VERSION.to_string(),
                    kind: "severi_brauer_report".to_string(),
                    degree,
                    class: class_json,
                    abstract_order,
                    class_order: algebra_class.order(),
                    division_declared: division,
                    nc_motive: NCMotiveJson::from_expr(&expr),
                    unit_type: expr.is_unit_type(),
                    decomposable: expr.is_decomposable(),
                    chow_indecomposable_by_citation: chow_indecomposable_by_citation(
                        algebra_class.order(),
                        degree,
                        division,
                    ),
                };
                Ok(render(&report, format, report.text()))
            }
            MotiveCommand::Reconstruct { m, d, seed, trials } => {
                if m == 0 {
                    return Err(CliError::Invalid("m must be at least 1".into()));
                }
                let tag = reconstruction_tag(d);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut passes = 0;
                let mut failures = 0;
                for _ in 0..trials {
                    let m_trial = rng.gen_range(1..=m);
                    let instance = random_reconstruction_instance(&mut rng, m_trial, d, &tag);
                    let mut expected = instance.hidden_twists.clone();
                    expected.sort_unstable();
                    let ok = reconstruct_from_components(
                        instance.f.components(),
                        instance.g.components(),
                        m_trial,
                        d,
                        &tag,
                    )
                    .map(|got| got == expected)
                    .unwrap_or(false);
                    if ok {
                        passes += 1;
                    } else {
                        failures += 1;
                    }
                }
                let report = ReconstructionReport {
                    schema_version: SCHEMA_VERSION.to_string(),
                    kind: "reconstruction_report".to_string(),
                    m,
                    d,
                    seed,
                    trials,
                    ring: tag.to_string(),
                    passes,
                    failures,
                };
                if failures > 0 {
                    // A failed reconstruction on generated isomorphisms is
                    // an internal invariant violation.
                    return Err(CliError::Internal(format!(
                        "{failures} of {trials} reconstructions failed"
                    )));
                }
                Ok(render(&report, format, report.text()))
            }
        },
        Command::Chern { max_degree } => {
            let rows = (1..=max_degree)
                .map(|m| {
                    let p = chern_numerator(m);
                    PolynomialRow {
                        m,
                        polynomial: p.to_string(),
                        terms: terms_json(&p),
                        t_m: None,
                        lcm_denominator: None,
                    }
                })
                .collect();
            let table = PolynomialTable {
                schema_version: SCHEMA_VERSION.to_string(),
                kind: "chern_table".to_string(),
                max_degree,
                rows,
            };
            Ok(render(&table, format, table.text()))
        }
        Command::Todd { max_degree } => {
            let rows = (0..=max_degree)
                .map(|m| {
                    let p = todd_polynomial(m);
                    PolynomialRow {
                        m,
                        polynomial: p.to_string(),
                        terms: terms_json(&p),
                        t_m: Some(todd_denominator(m as u64).to_string()),
                        lcm_denominator: Some(p.lcm_denominator().to_string()),
                    }
                })
                .collect();
            let table = PolynomialTable {
                schema_version: SCHEMA_VERSION.to_string(),
                kind: "todd_table".to_string(),
                max_degree,
                rows,
            };
            Ok(render(&table, format, table.text()))
        }
        Command::Ring { cmd } => match cmd {
            RingCommand::Invertible { x, invert } => {
                let tag = parse::ring_tag(&invert).map_err(invalid)?;
                let value = motivic::arith::parse_rational(&x).map_err(invalid)?;
                let scalar = LocalizedScalar::new(value, tag.clone()).map_err(invalid)?;
                let report = InvertibilityReport {
                    schema_version: SCHEMA_VERSION.to_string(),
                    kind: "invertibility_report".to_string(),
                    ring: tag.to_string(),
                    scalar: x.trim().to_string(),
                    invertible: scalar_is_invertible(&scalar),
                };
                Ok(render(&report, format, report.text()))
            }
        },
        Command::Grr { cmd } => match cmd {
            GrrCommand::Euler { scheme, bundle } => {
                let scheme: ToyScheme = scheme.parse().map_err(invalid)?;
                let class = parse_bundle(&bundle, &scheme).map_err(invalid)?;
                let chi = euler_characteristic(&class).map_err(classify_grr)?;
                let report = EulerReport {
                    schema_version: SCHEMA_VERSION.to_string(),
                    kind: "euler_report".to_string(),
                    scheme: scheme.to_string(),
                    bundle: bundle.trim().to_string(),
                    euler_characteristic: chi.to_string(),
                };
                Ok(render(&report, format, report.text()))
            }
            GrrCommand::Chiso { scheme, invert } => {
                let scheme: ToyScheme = scheme.parse().map_err(invalid)?;
                let tag = parse::ring_tag(&invert).map_err(invalid)?;
                let r = ch_iso_check(&scheme, &tag);
                let report = ChIsoReportJson {
                    schema_version: SCHEMA_VERSION.to_string(),
                    kind: "chiso_report".to_string(),
                    scheme: scheme.to_string(),
                    ring: tag.to_string(),
                    is_isomorphism: r.is_isomorphism,
                    determinant: format_rational(&r.determinant),
                    witness: format_rational(&r.witness()),
                    offending_entry: r.offending_entry.map(|(monomial, bundle, value)| {
                        OffendingEntryJson {
                            monomial,
                            bundle,
                            value: format_rational(&value),
                        }
                    }),
                };
                Ok(render(&report, format, report.text()))
            }
            GrrCommand::Todd { scheme, invert } => {
                let scheme: ToyScheme = scheme.parse().map_err(invalid)?;
                let tag = match invert {
                    Some(n) => parse::ring_tag(&n).map_err(invalid)?,
                    None => RingTag::rationals(),
                };
                let td = todd_of(&scheme, &tag).map_err(classify_grr)?;
                let coefficients = td
                    .iter_nonzero()
                    .map(|(degree, value)| ChowTermJson {
                        degree,
                        value: format_rational(value),
                    })
                    .collect();
                let report = ToddReport {
                    schema_version: SCHEMA_VERSION.to_string(),
                    kind: "todd_report".to_string(),
                    scheme: scheme.to_string(),
                    ring: tag.to_string(),
                    todd: td.to_string(),
                    coefficients,
                };
                Ok(render(&report, format, report.text()))
            }
        },
        Command::Selftest { seed, trials } => {
            let r = motivic::selftest::run(seed, trials);
            let report = SelftestReportJson {
                schema_version: SCHEMA_VERSION.to_string(),
                kind: "selftest_report".to_string(),
                seed: r.seed,
                trials: r.trials,
                reconstruction_passes: r.reconstruction_passes,
                reconstruction_failures: r.reconstruction_failures,
                orbit_law_passes: r.orbit_law_passes,
                orbit_law_failures: r.orbit_law_failures,
                all_passed: r.all_passed(),
            };
            if !r.all_passed() {
                return Err(CliError::Internal(format!(
                    "selftest failures: reconstruction {}, orbit laws {}",
                    r.reconstruction_failures, r.orbit_law_failures
                )));
            }
            Ok(render(&report, format, report.text()))
        }
    }
}

fn terms_json(p: &motivic::charclasses::GradedClassPolynomial) -> Vec<TermJson> {
    p.terms()
        .map(|(monomial, coefficient)| TermJson {
            monomial: monomial.to_string(),
            coefficient: format_rational(coefficient),
        })
        .collect()
}

fn analyze_form(q: &QuadraticForm) -> QFormReport {
    let decision = is_anisotropic(q);
    let clifford = clifford_invariant(q);
    let hypotheses = q.prop2_hypotheses();
    let hasse = relevant_places(q)
        .into_iter()
        .map(|v| PlaceSign {
            place: v.to_string(),
            value: hasse_invariant(q, v),
        })
        .collect();
    QFormReport {
        schema_version: SCHEMA_VERSION.to_string(),
        kind: "quadratic_form_report".to_string(),
        diagonal: q.entries().iter().map(format_rational).collect(),
        dimension: q.dimension(),
        determinant: q.determinant().to_string(),
        signed_determinant: q.signed_determinant().to_string(),
        trivial_discriminant: q.has_trivial_discriminant(),
        hasse_invariants: hasse,
        clifford_trivial: clifford.is_trivial(),
        clifford_invariant: BrauerClassJson::from_class(&clifford),
        anisotropic: decision.anisotropic,
        isotropy_witness: decision
            .witness
            .map(|w| w.iter().map(format_rational).collect()),
        in_i3: q.in_i3_wittclass(),
        hypotheses: hypotheses.into(),
        notes: Vec::new(),
    }
}
