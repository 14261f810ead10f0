//! Command line front end: parse function specs, dispatch to the library,
//! emit JSON (and CSV for grids).
//!
//! Exit codes: 0 ok, 2 parse error, 3 domain error, 4 verification failure,
//! 5 numerical inconsistency.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use quatslice::algebra::{ImaginaryUnit, Quaternion};
use quatslice::calculus::{d_dx, is_slice_regular, DerivativeConfig};
use quatslice::error::Error;
use quatslice::gallery::GallerySpec;
use quatslice::principles::{
    extremum_scan, openness_probe, semislice_mass, ExtremumKind, QuadConfig,
};
use quatslice::products::{normal, reciprocal, slice_product};
use quatslice::slice::{represent, SliceFunction};
use quatslice::spec::{emit_function_spec, emit_gallery_spec, parse_function_spec};
use quatslice::zeros::{classify_sphere, find_zeros_polynomial, SphereId, ZeroClassification};
use quatslice::Complex64;

use quatslice_cli::battery;

#[derive(Parser)]
#[command(name = "quatslice", about = "Quaternionic slice function toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Function spec JSON path.
    #[arg(long = "fn")]
    func: Option<String>,
    /// Second function spec path, for binary operations.
    #[arg(long = "fn2")]
    func2: Option<String>,
    /// Quaternion point "w,x,y,z".
    #[arg(long)]
    point: Option<String>,
    /// Imaginary unit "x,y,z".
    #[arg(long = "I")]
    unit: Option<String>,
    /// Grid or quadrature resolution.
    #[arg(long, default_value_t = 64)]
    res: usize,
    /// Tolerance override.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// RNG seed for randomized commands.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at a point.
    Eval(Common),
    /// Slice product of two function specs (emits a spec when serializable).
    Product(Common),
    /// Normal function N(f).
    Normal(Common),
    /// Regular reciprocal: excluded spheres, plus the value at --point.
    Reciprocal(Common),
    /// Zero spheres of a polynomial-backed function.
    Zeros(Common),
    /// Classify one sphere: --alpha, --beta.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
    },
    /// Slice regularity report.
    RegularCheck(Common),
    /// Slice derivative ∂f/∂x (emits a spec when serializable).
    Derivative(Common),
    /// Reconstruct f at --point from two other semislices --J and --K.
    Represent {
        #[command(flatten)]
        common: Common,
        #[arg(long = "J")]
        j: String,
        #[arg(long = "K")]
        k: String,
    },
    /// Semislice mass of |f| on the --I semislice.
    Mass(Common),
    /// Local extrema of |f| on the --I semislice grid.
    Extrema(Common),
    /// Monte-Carlo openness probe at --point with radius --r.
    ProbeOpen {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 20000)]
        samples: usize,
        /// Comma-separated candidate image radii.
        #[arg(long, default_value = "0.1,0.05,0.025")]
        eps: String,
    },
    /// Emit the function spec of a named gallery entry.
    Gallery {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        name: String,
        #[arg(long = "J", default_value = "0,1,0")]
        j: String,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Export a CSV grid of f over the --I semislice.
    SampleGrid(Common),
    /// Run the acceptance battery; exit 0 iff all criteria pass.
    Verify(Common),
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Spec { .. } | Error::Argument(_) => 2,
        Error::OutOfDomain(_) | Error::DomainMismatch | Error::Unbounded => 3,
        Error::Inconsistency(_) | Error::Singular(_) | Error::DegenerateNormal => 5,
    }
}

fn fail(e: Error) -> ExitCode {
    let code = exit_code_for(&e);
    eprintln!(
        "{}",
        json!({ "error": format!("{}", e), "exit_code": code })
    );
    ExitCode::from(code)
}

fn parse_csv_floats(s: &str, n: usize, what: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::Argument(format!("bad {}: {}", what, e)))?;
    if n != 0 && parts.len() != n {
        return Err(Error::Argument(format!(
            "{} needs {} comma-separated numbers",
            what, n
        )));
    }
    Ok(parts)
}

fn parse_point(s: &str) -> Result<Quaternion, Error> {
    let v = parse_csv_floats(s, 4, "--point")?;
    Ok(Quaternion::new(v[0], v[1], v[2], v[3]))
}

fn parse_unit_arg(s: &str, what: &str) -> Result<ImaginaryUnit, Error> {
    let v = parse_csv_floats(s, 3, what)?;
    ImaginaryUnit::from_components(v[0], v[1], v[2])
}

fn load_fn(common: &Common) -> Result<SliceFunction, Error> {
    let path = common
        .func
        .as_ref()
        .ok_or_else(|| Error::Argument("--fn is required".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Argument(format!("cannot read {}: {}", path, e)))?;
    parse_function_spec(&text)
}

fn load_fn2(common: &Common) -> Result<SliceFunction, Error> {
    let path = common
        .func2
        .as_ref()
        .ok_or_else(|| Error::Argument("--fn2 is required".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Argument(format!("cannot read {}: {}", path, e)))?;
    parse_function_spec(&text)
}

fn need_point(common: &Common) -> Result<Quaternion, Error> {
    parse_point(
        common
            .point
            .as_ref()
            .ok_or_else(|| Error::Argument("--point is required".into()))?,
    )
}

fn need_unit(common: &Common) -> Result<ImaginaryUnit, Error> {
    parse_unit_arg(
        common
            .unit
            .as_ref()
            .ok_or_else(|| Error::Argument("--I is required".into()))?,
        "--I",
    )
}

fn write_out(common: &Common, text: &str) -> Result<(), Error> {
    match &common.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Argument(format!("cannot write {}: {}", path, e))),
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

fn emit_function(common: &Common, f: &SliceFunction) -> Result<(), Error> {
    write_out(common, &emit_function_spec(f)?)
}

fn classification_json(sphere: SphereId, class: &ZeroClassification) -> Value {
    let (kind, point) = match class {
        ZeroClassification::NoZero => ("no_zero", None),
        ZeroClassification::SphericalOrReal => ("spherical_or_real", None),
        ZeroClassification::SIsolated(p) => ("s_isolated", Some(p.to_array())),
    };
    json!({
        "sphere": { "alpha": sphere.alpha, "beta": sphere.beta },
        "kind": kind,
        "point": point,
    })
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Eval(c) => {
            let f = load_fn(&c)?;
            let v = f.eval(need_point(&c)?)?;
            write_out(&c, &json!({ "value": v.to_array() }).to_string())?;
        }
        Command::Product(c) => {
            let f = load_fn(&c)?;
            let g = load_fn2(&c)?;
            let fg = slice_product(&f, &g)?;
            emit_function(&c, &fg)?;
        }
        Command::Normal(c) => {
            let f = load_fn(&c)?;
            emit_function(&c, &normal(&f)?)?;
        }
        Command::Reciprocal(c) => {
            let f = load_fn(&c)?;
            let r = reciprocal(&f)?;
            let spheres: Vec<Value> = r
                .excluded_spheres()
                .iter()
                .map(|s| json!({ "alpha": s.alpha, "beta": s.beta }))
                .collect();
            let value = match &c.point {
                Some(p) => Some(r.eval(parse_point(p)?)?.to_array()),
                None => None,
            };
            write_out(
                &c,
                &json!({ "excluded_spheres": spheres, "value": value }).to_string(),
            )?;
        }
        Command::Zeros(c) => {
            let f = load_fn(&c)?;
            let hits = find_zeros_polynomial(&f)?;
            let list: Vec<Value> = hits
                .iter()
                .map(|h| classification_json(h.sphere, &h.class))
                .collect();
            write_out(&c, &Value::Array(list).to_string())?;
        }
        Command::Classify { common, alpha, beta } => {
            let f = load_fn(&common)?;
            let sphere = SphereId::new(alpha, beta);
            let class = classify_sphere(&f, sphere, common.tol)?;
            write_out(&common, &classification_json(sphere, &class).to_string())?;
        }
        Command::RegularCheck(c) => {
            let f = load_fn(&c)?;
            let rep = is_slice_regular(&f, &DerivativeConfig::default());
            write_out(
                &c,
                &json!({
                    "pass": rep.pass,
                    "max_residual": rep.max_residual,
                    "structural": rep.structural,
                    "worst_point": rep.worst_point.map(|z| [z.re, z.im]),
                })
                .to_string(),
            )?;
        }
        Command::Derivative(c) => {
            let f = load_fn(&c)?;
            emit_function(&c, &d_dx(&f, &DerivativeConfig::default()))?;
        }
        Command::Represent { common, j, k } => {
            let f = load_fn(&common)?;
            let x = need_point(&common)?;
            let (alpha, beta, unit) = x.split();
            let unit = unit.ok_or_else(|| {
                Error::Argument("--point must not be real for represent".into())
            })?;
            let (ju, ku) = (parse_unit_arg(&j, "--J")?, parse_unit_arg(&k, "--K")?);
            let z = Complex64::new(alpha, beta);
            let (vj, vk) = (f.eval_slice(ju, z)?, f.eval_slice(ku, z)?);
            let rec = represent(vj, vk, ju, ku, unit)?;
            let direct = f.eval(x)?;
            write_out(
                &common,
                &json!({
                    "reconstructed": rec.to_array(),
                    "direct": direct.to_array(),
                    "error": (rec - direct).abs(),
                })
                .to_string(),
            )?;
        }
        Command::Mass(c) => {
            let f = load_fn(&c)?;
            let rep = semislice_mass(&f, need_unit(&c)?, QuadConfig { res: c.res })?;
            write_out(
                &c,
                &json!({
                    "I": <[f64; 3]>::from(rep.unit),
                    "mass": rep.mass,
                    "quadrature_error_estimate": rep.quadrature_error_estimate,
                })
                .to_string(),
            )?;
        }
        Command::Extrema(c) => {
            let f = load_fn(&c)?;
            let ext = extremum_scan(&f, need_unit(&c)?, c.res)?;
            let list: Vec<Value> = ext
                .iter()
                .map(|e| {
                    json!({
                        "alpha": e.z.re,
                        "beta": e.z.im,
                        "point": e.point.to_array(),
                        "kind": match e.kind { ExtremumKind::Max => "max", ExtremumKind::Min => "min" },
                        "abs_f": e.value,
                        "interior": e.interior,
                    })
                })
                .collect();
            write_out(&c, &Value::Array(list).to_string())?;
        }
        Command::ProbeOpen {
            common,
            r,
            samples,
            eps,
        } => {
            let f = load_fn(&common)?;
            let x = need_point(&common)?;
            let eps_grid = parse_csv_floats(&eps, 0, "--eps")?;
            let open = openness_probe(&f, x, r, samples, &eps_grid, common.seed as usize)?;
            write_out(
                &common,
                &json!({ "open": open, "r": r, "samples": samples, "eps": eps_grid })
                    .to_string(),
            )?;
        }
        Command::Gallery {
            common,
            name,
            j,
            c,
            r,
            n,
        } => {
            let ju = parse_unit_arg(&j, "--J")?;
            let spec = match name.as_str() {
                "slice_constant" => GallerySpec::SliceConstant { j: ju },
                "max_modulus_cex" => GallerySpec::MaxModulusCex {
                    j: ju,
                    c: c.ok_or_else(|| Error::Argument("--c is required".into()))?,
                    r: r.ok_or_else(|| Error::Argument("--r is required".into()))?,
                },
                "open_mapping_cex" => GallerySpec::OpenMappingCex { j: ju },
                "monomial" => GallerySpec::Monomial {
                    n: n.ok_or_else(|| Error::Argument("--n is required".into()))?,
                    domain: quatslice::domain::CircularDomain::rect(-2.0, 2.0, 0.0, 2.0)?,
                },
                other => {
                    return Err(Error::Argument(format!("unknown gallery name {:?}", other)))
                }
            };
            // Validate parameters eagerly so bad requests fail here.
            spec.build()?;
            write_out(&common, &emit_gallery_spec(&spec).to_string())?;
        }
        Command::SampleGrid(c) => {
            let f = load_fn(&c)?;
            let unit = need_unit(&c)?;
            let points = f.domain().sample_grid(c.res)?;
            let mut csv = String::from("alpha,beta,f_w,f_x,f_y,f_z,abs_f\n");
            for z in points {
                let v = f.eval_slice(unit, z)?;
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    z.re, z.im, v.w, v.x1, v.x2, v.x3, v.abs()
                ));
            }
            write_out(&c, &csv)?;
        }
        Command::Verify(c) => {
            let results = battery::run_all(c.seed);
            let mut all_pass = true;
            for r in &results {
                println!("{}", r.line());
                all_pass &= r.pass;
            }
            let summary = json!({
                "pass": all_pass,
                "criteria": results.iter().map(|r| json!({
                    "id": r.id, "name": r.name, "pass": r.pass,
                    "elapsed_s": r.elapsed_s, "detail": r.detail,
                })).collect::<Vec<_>>(),
            });
            if let Some(path) = &c.out {
                fs::write(path, summary.to_string())
                    .map_err(|e| Error::Argument(format!("cannot write {}: {}", path, e)))?;
            } else {
                println!("{}", summary);
            }
            if !all_pass {
                return Ok(4);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(e),
    }
}
