use serde_json::{json, Value};
use yuzvinski::entropy::{algebraic_entropy_with, entropy_of_primitive, EntropyReport};
use yuzvinski::exact_arith::{format_rational, primitivize, IntPolynomial};
use yuzvinski::mahler::{find_roots, mahler_measure, ComplexRootSet, RootEnclosure};
use yuzvinski::padic::{newton_polygon, place_contribution, relevant_primes, Slope};
use yuzvinski::rational_linalg::{char_poly, RationalMatrix};
use yuzvinski::trajectory::{admissible_m, classify_growth, trajectory_counts, GrowthVerdict, TrajectoryRun};

use crate::input::{InputSpec, Subject};
use crate::{CliError, CliResult};

/// Resolved run options; command-line flags override values from the input document.
#[derive(Clone, Debug)]
pub struct Options {
    pub m: u64,
    pub n_max: usize,
    pub budget: usize,
    pub precision: u32,
    pub tolerance: f64,
    pub partitions: usize,
    pub prime: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            m: 1,
            n_max: 12,
            budget: yuzvinski::trajectory::DEFAULT_BUDGET,
            precision: 128,
            tolerance: yuzvinski::mahler::DEFAULT_TOLERANCE,
            partitions: 1,
            prime: None,
        }
    }
}

impl Options {
    /// Fills unset fields from the document.
    pub fn merged(mut self, doc: &InputSpec, explicit: &Explicit) -> Self {
        if !explicit.m {
            self.m = doc.m.unwrap_or(self.m);
        }
        if !explicit.n_max {
            self.n_max = doc.n_max.unwrap_or(self.n_max);
        }
        if !explicit.budget {
            self.budget = doc.budget.unwrap_or(self.budget);
        }
        if !explicit.precision {
            self.precision = doc.precision.unwrap_or(self.precision);
        }
        if !explicit.tolerance {
            self.tolerance = doc.tolerance.unwrap_or(self.tolerance);
        }
        self
    }
}

/// Which options were given on the command line.
#[derive(Clone, Debug, Default)]
pub struct Explicit {
    pub m: bool,
    pub n_max: bool,
    pub budget: bool,
    pub precision: bool,
    pub tolerance: bool,
}

fn slope_text(s: &Slope) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

fn poly_strings(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn root_document(r: &RootEnclosure) -> Value {
    json!({
        "re": r.re,
        "im": r.im,
        "modulus": r.modulus,
        "radius": r.radius,
        "modulus_lower": r.modulus_lower,
        "modulus_upper": r.modulus_upper,
        "multiplicity": r.multiplicity.to_string(),
        "position": format!("{:?}", r.position),
    })
}

pub fn roots_document(roots: &ComplexRootSet) -> Value {
    json!({
        "working_precision": roots.working_precision,
        "certified": roots.certified(),
        "roots": roots.roots.iter().map(root_document).collect::<Vec<_>>(),
    })
}

pub fn entropy_document(r: &EntropyReport) -> Value {
    json!({
        "entropy": r.total,
        "log_s": r.log_s,
        "archimedean": r.archimedean,
        "finite_places": r.finite_places.iter().map(|p| json!({
            "p": p.prime,
            "v_s": p.vp_s.to_string(),
            "contribution": p.contribution,
        })).collect::<Vec<_>>(),
        "s": r.s.to_string(),
        "char_poly_monic": r.char_poly_monic.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
        "char_poly_primitive": poly_strings(&r.char_poly_primitive),
        "zero_entropy_exact": r.zero_entropy_exact,
        "certified": r.certified,
        "roots": roots_document(&r.roots),
    })
}

fn matrix_of(doc: &InputSpec) -> CliResult<RationalMatrix> {
    match doc.subject()? {
        Subject::Matrix(m) => Ok(m),
        Subject::Poly(_) => Err(CliError::Input("this command needs a matrix".into())),
    }
}

/// Primitive integer polynomial of the subject: the characteristic polynomial for a matrix.
fn polynomial_of(subject: &Subject) -> CliResult<IntPolynomial> {
    Ok(match subject {
        Subject::Matrix(m) => primitivize(&char_poly(m))?.primitive,
        Subject::Poly(p) => p.clone(),
    })
}

pub fn run_entropy(doc: &InputSpec, opts: &Options) -> CliResult<Value> {
    let report = match doc.subject()? {
        Subject::Matrix(m) => algebraic_entropy_with(&m, opts.tolerance)?,
        Subject::Poly(p) => entropy_of_primitive(&p, opts.tolerance)?,
    };
    if let Err(why) = report.check_consistency() {
        return Err(CliError::Verification {
            message: why,
            report: entropy_document(&report),
        });
    }
    Ok(entropy_document(&report))
}

pub fn run_mahler(doc: &InputSpec, opts: &Options) -> CliResult<Value> {
    let p = polynomial_of(&doc.subject()?)?;
    let m = mahler_measure(&p, opts.tolerance)?;
    let (k, rest) = p.strip_x_power();
    let roots = if rest.degree().unwrap_or(0) > 0 {
        roots_document(&find_roots(&rest, opts.precision)?)
    } else {
        Value::Null
    };
    Ok(json!({
        "poly": poly_strings(&p),
        "measure": m.value,
        "log_leading": m.log_leading,
        "archimedean": m.archimedean,
        "certified": m.certified,
        "zero_roots": k.to_string(),
        "roots": roots,
    }))
}

pub fn run_polygon(doc: &InputSpec, opts: &Options) -> CliResult<Value> {
    let p = polynomial_of(&doc.subject()?)?;
    let primes = match opts.prime {
        Some(q) => vec![q],
        None => relevant_primes(&p)?,
    };
    let polygons = primes
        .iter()
        .map(|&q| {
            let np = newton_polygon(&p, q)?;
            let c = place_contribution(&np);
            Ok(json!({
                "p": q,
                "points": np.points.iter().map(|&(i, v)| json!([i, v.to_string()])).collect::<Vec<_>>(),
                "vertices": np.vertices().iter().map(|(i, v)| json!([i, slope_text(v)])).collect::<Vec<_>>(),
                "segments": np.segments.iter().map(|s| json!({
                    "slope": slope_text(&s.slope),
                    "length": s.length,
                })).collect::<Vec<_>>(),
                "root_valuations": np.root_valuations().iter().map(slope_text).collect::<Vec<_>>(),
                "positive_slope_total": slope_text(&c.exact),
                "contribution": c.value,
            }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(json!({ "poly": poly_strings(&p), "polygons": polygons }))
}

fn resolve_m(m: &RationalMatrix, opts: &Options) -> CliResult<u64> {
    Ok(if opts.m == 0 { admissible_m(m)? } else { opts.m })
}

fn trajectory_document(run: &TrajectoryRun, verdict: Option<&GrowthVerdict>, formula: f64) -> Value {
    let last = run.growth.last_h_inc();
    json!({
        "m": run.m.to_string(),
        "counts": run.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "h_cum": run.growth.h_cum,
        "h_inc": run.growth.h_inc,
        "budget": run.budget.to_string(),
        "budget_exhausted_at": run.budget_exhausted_at,
        "prime_support": run.support.primes,
        "classification": verdict.map(|v| v.class.to_string()).unwrap_or_else(|| "Inconclusive".into()),
        "discrepancy": verdict.is_some_and(|v| v.discrepancy),
        "formula_entropy": formula,
        "gap": last.map(|h| (h - formula).abs()),
    })
}

fn run_and_classify(doc: &InputSpec, opts: &Options, strict: bool) -> CliResult<(TrajectoryRun, Option<GrowthVerdict>, f64)> {
    let m = matrix_of(doc)?;
    let scale = resolve_m(&m, opts)?;
    let formula = algebraic_entropy_with(&m, opts.tolerance)?.total;
    let run = trajectory_counts(&m, scale, opts.n_max, opts.budget, opts.partitions)?;
    let verdict = match classify_growth(&run, Some(formula)) {
        Ok(v) => Some(v),
        Err(e) if strict => return Err(e.into()),
        Err(_) => None,
    };
    Ok((run, verdict, formula))
}

pub fn run_trajectory(doc: &InputSpec, opts: &Options) -> CliResult<Value> {
    let (run, verdict, formula) = run_and_classify(doc, opts, false)?;
    Ok(trajectory_document(&run, verdict.as_ref(), formula))
}

/// Like [`run_trajectory`] but requires enough levels to classify, and reports the fit.
pub fn run_classify(doc: &InputSpec, opts: &Options) -> CliResult<Value> {
    let (run, verdict, formula) = run_and_classify(doc, opts, true)?;
    let verdict = verdict.expect("strict classification");
    Ok(json!({
        "m": run.m.to_string(),
        "levels": run.levels(),
        "classification": verdict.class.to_string(),
        "local_degree": verdict.local_degree,
        "formula_entropy": formula,
        "discrepancy": verdict.discrepancy,
    }))
}
