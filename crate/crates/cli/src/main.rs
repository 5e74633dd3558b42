mod reproduce;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use dstab::carlitz::{carlitz_phi, place_counts, splittings, zeta_numerator, ModulusGroup};
use dstab::curvelab::{counts, family_zeta, howe_cubic, howe_interpolation, CurveModel, Family};
use dstab::drinfeld::{
    basechange_phi, descent_zero_places, drinfeld_phi, place_audit_rank3, rank3_check, DrinfeldAction,
};
use dstab::enumerator::{enumerate, Constraints};
use dstab::gfpoly::{make_field, parse_poly, FieldDesc, FieldPoly};
use dstab::zetacore::{admissible_pairs, extend_counts, frobenius_from_counts, places_from_points, ZetaData};
use report::{int, ints, Format, Report};

/// Zeta functions and Diophantine stability of curves over finite fields.
#[derive(Parser)]
#[command(name = "dstab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for randomized constructions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the enumerator.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Include wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Pairs (q, m) for which a curve of the given genus may have N_1 = N_m.
    Admissible {
        #[arg(long)]
        genus: usize,
    },
    /// Zeta function data.
    #[command(subcommand)]
    Zeta(ZetaCmd),
    /// Search for real Weil polynomials by place counts.
    Enumerate(EnumerateArgs),
    /// Count points of a curve over F_{q^m}, m = 1..M.
    Count {
        /// Curve spec, e.g. "hyp q=2 y^2+y=x^3+x" or "plane q=4 F=x^3+y^3+z^3".
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Also recover the zeta function from N_1..N_g.
        #[arg(long)]
        zeta: bool,
    },
    /// Zeta data of Hermitian, Suzuki, Ree and Drinfeld curves.
    Family {
        /// hermitian:Q0, suzuki:E, ree:S or drinfeld:Q.
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    /// Carlitz torsion and its subfields.
    #[command(subcommand)]
    Carlitz(CarlitzCmd),
    /// Drinfeld torsion polynomials and stability checks.
    #[command(subcommand)]
    Drinfeld(DrinfeldCmd),
    /// Hyperelliptic curves with N_1 = N_m.
    #[command(subcommand)]
    Howe(HoweCmd),
    /// Recompute published data and compare.
    Reproduce {
        /// Targets; `all` runs every one.
        #[arg(required = true)]
        targets: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ZetaCmd {
    /// Zeta function from N_1..N_g.
    FromCounts {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: usize,
        /// Comma-separated N_1..N_k, k <= g.
        #[arg(long, value_delimiter = ',')]
        counts: Vec<BigInt>,
        /// Test N_1 = N_m.
        #[arg(long)]
        ds: Option<usize>,
        /// Number of extended counts to print.
        #[arg(long, default_value_t = 0)]
        extend: usize,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    g: usize,
    #[arg(long)]
    a1: Option<BigInt>,
    /// Indices i with a_i forced to zero.
    #[arg(long, value_delimiter = ',')]
    zeros: Vec<usize>,
    /// Keep only candidates with N_1 = N_m.
    #[arg(long)]
    ds: Option<usize>,
    /// Use only the Weil cap on each a_i.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Args)]
struct ModulusArgs {
    #[arg(long)]
    q: u64,
    /// Modulus in t.
    #[arg(long = "M")]
    m: String,
    /// Comma-separated generators of H.
    #[arg(long = "H", value_delimiter = ',')]
    h: Vec<String>,
}

#[derive(Subcommand)]
enum CarlitzCmd {
    /// The M-th Carlitz cyclotomic polynomial.
    Phi {
        #[arg(long)]
        q: u64,
        #[arg(long = "M")]
        m: String,
    },
    /// Place counts a_1..a_dmax of the subfield fixed by H.
    Places {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long, default_value_t = 8)]
        dmax: usize,
        /// List the splitting of each place.
        #[arg(long)]
        detail: bool,
    },
    /// Numerator of the zeta function of the subfield fixed by H.
    Zeta {
        #[command(flatten)]
        modulus: ModulusArgs,
    },
}

#[derive(Subcommand)]
enum DrinfeldCmd {
    /// Torsion polynomial for t -> t + u_1 tau + ... + u_n tau^n.
    Phi {
        #[arg(long)]
        q: u64,
        /// Rank used when --u is absent (then u_n = 1, others 0).
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long = "M")]
        m: String,
        /// u_1;u_2;...;u_n as rational functions in t.
        #[arg(long)]
        u: Option<String>,
    },
    /// Rank-3 stability hypotheses over F_2.
    Rank3Check {
        #[arg(long)]
        u: String,
        /// Add the Newton polygon and reduction audit.
        #[arg(long)]
        audit: bool,
    },
    /// Compare rank-n torsion over F_q with Carlitz torsion over F_{q^n}.
    Basechange {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long = "M")]
        m: String,
    },
    /// Zero place counts of X_{M,1} certified from X_{M,l}.
    Descent {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        l: u64,
        #[arg(long = "M")]
        m: String,
    },
}

#[derive(Subcommand)]
enum HoweCmd {
    /// y^2 = x^(q^3) - x + n with N_1 = N_3 = 1.
    Cubic {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
    },
    /// Random curve with N_1 = N_2 by interpolation (uses --seed).
    Interpolate {
        #[arg(long)]
        q: u64,
    },
}

pub enum Failure {
    Usage(String),
    Compute(String),
}

impl From<dstab::Error> for Failure {
    fn from(e: dstab::Error) -> Self {
        if e.is_validation() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Compute(e.to_string())
        }
    }
}

type Outcome = Result<Report, Failure>;

/// Attributes validation errors to the flags that carried the input.
fn at<T>(flags: &str, r: dstab::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{flags}: {m}")),
        other => other,
    })
}

fn field(q: u64) -> Result<FieldDesc, Failure> {
    let (p, k) = dstab::arith::prime_power(q).ok_or_else(|| Failure::Usage(format!("--q: {q} is not a prime power")))?;
    at("--q", make_field(p, k))
}

fn poly(f: &FieldDesc, flag: &str, s: &str) -> Result<FieldPoly, Failure> {
    parse_poly(f, s, 't').map_err(|e| Failure::Usage(format!("{flag}: {e}")))
}

fn zeta_json(z: &ZetaData) -> Value {
    json!({"q": z.q(), "genus": z.g(), "P": ints(z.p_coeffs()), "P_string": z.p_string()})
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Admissible { genus } => {
            let pairs = at("--genus", admissible_pairs(*genus))?;
            let mut r = Report::new("admissible");
            r.input("genus", *genus)
                .output("pairs", pairs.iter().map(|(q, m)| json!([q, m])).collect::<Vec<_>>());
            Ok(r)
        }
        Command::Zeta(ZetaCmd::FromCounts { q, g, counts, ds, extend }) => {
            let z = at("--q/--g/--counts", frobenius_from_counts(*q, *g, counts))?;
            let mut r = Report::new("zeta from-counts");
            r.input("q", *q).input("g", *g).input("counts", ints(counts));
            r.output("P", ints(z.p_coeffs()))
                .output("P_string", z.p_string())
                .output("genus", z.g());
            if *extend > 0 {
                r.output("N", ints(&z.point_counts(*extend)));
            }
            if let Some(m) = ds {
                r.input("ds", *m).output("ds", at("--ds", z.ds(*m))?);
            }
            Ok(r)
        }
        Command::Enumerate(a) => {
            let c = Constraints {
                a1: a.a1.clone(),
                zeros: a.zeros.iter().copied().collect(),
                ds_m: a.ds,
                no_prune: a.no_prune,
            };
            let e = at("--q/--g/--a1/--zeros/--ds", enumerate(a.q, a.g, &c, cli.jobs))?;
            let mut r = Report::new("enumerate");
            r.input("q", a.q).input("g", a.g);
            if let Some(v) = &a.a1 {
                r.input("a1", int(v));
            }
            if !a.zeros.is_empty() {
                r.input("zeros", a.zeros.clone());
            }
            if let Some(m) = a.ds {
                r.input("ds", m);
            }
            if a.no_prune {
                r.input("no_prune", true);
            }
            let cands: Vec<Value> = e
                .candidates
                .iter()
                .map(|c| {
                    json!({
                        "a": ints(&c.a),
                        "h": c.h.to_string_var('x'),
                        "P": c.zeta.p_string(),
                    })
                })
                .collect();
            r.output("count", cands.len()).output("nodes", e.nodes).output("candidates", cands);
            Ok(r)
        }
        Command::Count { curve, m, zeta } => {
            let c = CurveModel::parse(curve).map_err(|e| Failure::Usage(format!("--curve: {e}")))?;
            let mut k = *m;
            if *zeta {
                k = k.max(c.genus().unwrap_or(0));
            }
            let n = at("--m", counts(&c, k))?;
            let mut r = Report::new("count");
            r.input("curve", c.to_string()).input("m", *m);
            r.output("kind", c.kind()).output("N", ints(&n[..*m])).output("a", ints(&places_from_points(&n[..*m])?));
            if let Some(g) = c.genus() {
                r.output("genus", g);
                if *zeta && g > 0 {
                    r.output("zeta", zeta_json(&frobenius_from_counts(c.field().q(), g, &n[..g])?));
                }
            }
            Ok(r)
        }
        Command::Family { name, m } => {
            let fam = Family::parse(name).map_err(|e| Failure::Usage(format!("--name: {e}")))?;
            let z = at("--name", family_zeta(&fam))?;
            let n = (1..=*m).map(|i| extend_counts(&z, i)).collect::<dstab::Result<Vec<_>>>()?;
            let mut r = Report::new("family");
            r.input("name", fam.to_string()).input("m", *m);
            r.output("zeta", zeta_json(&z)).output("N", ints(&n));
            Ok(r)
        }
        Command::Carlitz(c) => carlitz(c),
        Command::Drinfeld(d) => drinfeld(d),
        Command::Howe(h) => {
            let (name, hc) = match h {
                HoweCmd::Cubic { q, n } => ("howe cubic", at("--q/--n", howe_cubic(*q, *n))?),
                HoweCmd::Interpolate { q } => ("howe interpolate", at("--q", howe_interpolation(*q, cli.seed))?),
            };
            let mut r = Report::new(name);
            if let HoweCmd::Interpolate { .. } = h {
                r.seed = Some(cli.seed);
            }
            let model = CurveModel::Hyperelliptic(hc.curve.clone());
            r.output("curve", model.to_string())
                .output("genus", hc.curve.genus())
                .output("certificate", hc.certificate.iter().map(|(m, n)| json!({"m": m, "N": n})).collect::<Vec<_>>())
                .output("attempts", hc.attempts);
            Ok(r)
        }
        Command::Reproduce { targets } => reproduce::run(targets),
    }
}

fn group(a: &ModulusArgs) -> Result<(ModulusGroup, Vec<String>), Failure> {
    let f = field(a.q)?;
    let m = poly(&f, "--M", &a.m)?;
    let hs = a.h.iter().map(|s| poly(&f, "--H", s)).collect::<Result<Vec<_>, _>>()?;
    let names = hs.iter().map(|h| h.to_string()).collect();
    Ok((at("--M/--H", ModulusGroup::new(&m, &hs))?, names))
}

fn carlitz(c: &CarlitzCmd) -> Outcome {
    match c {
        CarlitzCmd::Phi { q, m } => {
            let f = field(*q)?;
            let m = poly(&f, "--M", m)?;
            let phi = at("--M", carlitz_phi(&m))?;
            let mut r = Report::new("carlitz phi");
            r.input("q", *q).input("M", m.to_string());
            r.output("degree", phi.degree()).output("phi", phi.to_string());
            Ok(r)
        }
        CarlitzCmd::Places { modulus, dmax, detail } => {
            let (grp, hs) = group(modulus)?;
            let a = at("--dmax", place_counts(&grp, *dmax))?;
            let mut r = Report::new("carlitz places");
            r.input("q", modulus.q).input("M", grp.modulus().to_string()).input("H", hs).input("dmax", *dmax);
            r.output("group_order", grp.order()).output("index", grp.index()).output("a", ints(&a));
            if *detail {
                let rows: Vec<Value> = splittings(&grp, *dmax)?
                    .into_iter()
                    .filter(|s| s.ramified() || s.residue_degree() <= *dmax)
                    .map(|s| {
                        let name = s.pi.as_ref().map_or("infinity".to_string(), |p| p.to_string());
                        json!({"place": name, "e": s.e, "f": s.f, "g": s.g})
                    })
                    .collect();
                r.output("splitting", rows);
            }
            Ok(r)
        }
        CarlitzCmd::Zeta { modulus } => {
            let (grp, hs) = group(modulus)?;
            let z = at("--M/--H", zeta_numerator(&grp))?;
            let mut r = Report::new("carlitz zeta");
            r.input("q", modulus.q).input("M", grp.modulus().to_string()).input("H", hs);
            let a = place_counts(&grp, z.g().clamp(1, 8))?;
            r.output("genus", z.g())
                .output("P", ints(z.p_coeffs()))
                .output("P_string", z.p_string())
                .output("a", ints(&a));
            Ok(r)
        }
    }
}

fn drinfeld(d: &DrinfeldCmd) -> Outcome {
    let f2 = || field(2);
    let parse_u = |f: &FieldDesc, s: &str| {
        DrinfeldAction::parse(f, s).map_err(|e| Failure::Usage(format!("--u: {e}")))
    };
    match d {
        DrinfeldCmd::Phi { q, n, m, u } => {
            let f = field(*q)?;
            let act = match u {
                Some(s) => parse_u(&f, s)?,
                None => at("--n", DrinfeldAction::standard(&f, *n))?,
            };
            let m = poly(&f, "--M", m)?;
            let phi = at("--M/--u", drinfeld_phi(&act, &m))?;
            let mut r = Report::new("drinfeld phi");
            r.input("q", *q)
                .input("M", m.to_string())
                .input("u", act.u().iter().map(|c| c.to_string()).collect::<Vec<_>>());
            r.output("rank", act.rank()).output("degree", phi.degree()).output("phi", phi.to_string());
            Ok(r)
        }
        DrinfeldCmd::Rank3Check { u, audit } => {
            let f = f2()?;
            let act = parse_u(&f, u)?;
            let v = at("--u", rank3_check(act.u()))?;
            let mut r = Report::new("drinfeld rank3-check");
            r.input("u", act.u().iter().map(|c| c.to_string()).collect::<Vec<_>>());
            let conds: Vec<Value> =
                v.conditions().into_iter().map(|(name, ok)| json!({"condition": name, "pass": ok})).collect();
            r.output("conditions", conds).output("verdict", v.overall());
            if *audit {
                let a = at("--u", place_audit_rank3(act.u()))?;
                let places: Vec<Value> = a
                    .places
                    .iter()
                    .map(|p| {
                        let segs: Vec<Value> = p
                            .segments
                            .iter()
                            .map(|s| {
                                json!({
                                    "from": s.segment.start,
                                    "to": s.segment.end,
                                    "slope": s.segment.slope.to_string(),
                                    "residual": s.residual.to_string_var('y'),
                                    "profile": s.profile.as_ref().map(|v| v.iter().map(|(d, c)| json!([d, c])).collect::<Vec<_>>()),
                                })
                            })
                            .collect();
                        json!({
                            "place": p.place.to_string(),
                            "segments": segs,
                            "degree_one": p.degree_one,
                            "degree_two": p.degree_two,
                        })
                    })
                    .collect();
                r.output("audit", places);
                r.output(
                    "new_degree_two_places",
                    a.new_places.map_or(json!("inconclusive"), |n| json!(n)),
                );
            }
            Ok(r)
        }
        DrinfeldCmd::Basechange { q, n, m } => {
            let f = field(*q)?;
            let m = poly(&f, "--M", m)?;
            let b = at("--n/--M", basechange_phi(*q, *n, &m))?;
            let mut r = Report::new("drinfeld basechange");
            r.input("q", *q).input("n", *n).input("M", m.to_string());
            r.output("phi", b.phi.to_string()).output("equal", b.equal).output("integral", b.integral);
            Ok(r)
        }
        DrinfeldCmd::Descent { q, l, m } => {
            let f = field(*q)?;
            let m = poly(&f, "--M", m)?;
            let zeros = at("--l/--M", descent_zero_places(*q, *l, &m))?;
            let mut r = Report::new("drinfeld descent");
            r.input("q", *q).input("l", *l).input("M", m.to_string());
            let rows: Vec<Value> = zeros.iter().map(|(j, k)| json!({"k": j, "from": k})).collect();
            r.output("zero_places", rows);
            Ok(r)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut r) => {
            if cli.timing {
                r.timing_ms = Some(start.elapsed().as_millis());
            }
            let failed = r.outputs.get("pass") == Some(&Value::Bool(false));
            let _ = std::io::stdout().write_all(r.render(cli.format).as_bytes());
            if failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::FAILURE
        }
    }
}
