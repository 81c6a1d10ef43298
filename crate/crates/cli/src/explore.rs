use rand::Rng;
use rayon::prelude::*;
use semiact::exactnum::RationalMatrix;
use semiact::families::{random_flat_matrix, random_tp_instance, semibalanced_digraph, trial_rng};
use semiact::formats::{digraph_to_json, matrix_to_json, rat_poly_to_json};
use semiact::graphkit::{first_spanning_tree, graphic_matrix};
use semiact::ormatroid::{f_poly_rational, GenericVector, MatroidContext};
use semiact::polyshape::{box_certificate_rational, shape_report, RatPolynomial, ShapeReport};
use serde_json::{json, Value};

use crate::report::{InputDigest, RunReport};
use crate::{ExploreArgs, Family, InputError};

struct Trial {
    instance: Value,
    poly: RatPolynomial,
    shape: ShapeReport,
    box_positive: bool,
}

fn instance(family: Family, standard: bool, seed: u64, index: u64) -> Result<(Value, RationalMatrix), InputError> {
    let mut rng = trial_rng(seed, index);
    Ok(match family {
        Family::Semibalanced => {
            let n = rng.gen_range(3..=6);
            let levels = if standard { 2 } else { rng.gen_range(2..=3) };
            let extra = rng.gen_range(0..=3);
            let (g, _) = semibalanced_digraph(&mut rng, n, extra, levels);
            let m = graphic_matrix(&g, &first_spanning_tree(&g)?)?;
            (digraph_to_json(&g), m)
        }
        Family::RandomFlat => {
            let d = rng.gen_range(2..=3);
            let n = rng.gen_range(d + 1..=7);
            let m = random_flat_matrix(&mut rng, d, n);
            (matrix_to_json(&m), m)
        }
        Family::Tp => {
            let (_, fmp) = random_tp_instance(&mut rng, 4, 9);
            (matrix_to_json(&fmp.a), fmp.a)
        }
    })
}

fn trial(args: &ExploreArgs, index: u64) -> Result<Trial, InputError> {
    let (instance, m) = instance(args.family, args.standard, args.seed, index)?;
    let ctx = MatroidContext::new(m)?;
    let poly = f_poly_rational(&ctx, &GenericVector::LexOrder)?;
    let shape = shape_report(&poly);
    let box_positive = box_certificate_rational(&poly, ctx.rank()).is_some();
    Ok(Trial { instance, poly, shape, box_positive })
}

pub fn run(args: &ExploreArgs) -> Result<RunReport, InputError> {
    if args.trials == 0 {
        return Err(InputError("--trials must be at least 1".into()));
    }
    if args.standard && args.family != Family::Semibalanced {
        return Err(InputError("--standard applies to the semibalanced family only".into()));
    }
    let family = match args.family {
        Family::Semibalanced if args.standard => "semibalanced (standard orientations)",
        Family::Semibalanced => "semibalanced",
        Family::RandomFlat => "random-flat",
        Family::Tp => "tp",
    };
    let trials: Vec<Trial> =
        (0..args.trials as u64).into_par_iter().map(|k| trial(args, k)).collect::<Result<_, _>>()?;

    let mut digest = InputDigest::default();
    digest.add(&json!({"family": family, "trials": args.trials, "seed": args.seed}));
    let mut report = RunReport::new("explore", digest, Some(args.seed));
    let count = |f: &dyn Fn(&Trial) -> bool| trials.iter().filter(|t| f(t)).count();
    report.detail("family", family);
    report.detail(
        "summary",
        json!({
            "trials": trials.len(),
            "trapezoidal": count(&|t| t.shape.trapezoidal),
            "palindromic": count(&|t| t.shape.palindromic),
            "log_concave": count(&|t| t.shape.log_concave && t.shape.no_internal_zeros),
            "box_positive": count(&|t| t.box_positive),
        }),
    );
    match trials.iter().position(|t| !t.shape.trapezoidal) {
        None => report.check("all trapezoidal", true, format!("{} instances", trials.len())),
        Some(k) => {
            let t = &trials[k];
            report.check("all trapezoidal", false, format!("trial {k} gives {}", t.poly));
            report.detail("counterexample", json!({"trial": k, "instance": t.instance, "poly": rat_poly_to_json(&t.poly)}));
        }
    }
    if args.family == Family::Semibalanced && args.standard {
        let bad = trials.iter().position(|t| !(t.shape.log_concave && t.shape.no_internal_zeros));
        report.check(
            "all log-concave",
            bad.is_none(),
            bad.map_or_else(|| "standard orientations".to_string(), |k| format!("trial {k} gives {}", trials[k].poly)),
        );
    }
    Ok(report)
}
