use rand::Rng;
use semiact::exactnum::{format_rational, rat, RationalMatrix};
use semiact::families::{tp_instance, trial_rng};
use semiact::formats::{
    bigraph_to_json, digraph_to_json, matrix_to_json, network_to_json, parse_bigraph, parse_digraph, parse_matrix,
    parse_network, parse_planegraph, parse_poly, planegraph_to_json, points_to_json, poly_to_json,
};
use semiact::graphkit::{
    first_spanning_tree, graphic_matrix, incidence_matrix, kirchhoff_tree_count, p_poly, standard_orientation,
};
use semiact::ormatroid::{f_poly, f_poly_rational, random_vector, GenericVector, MatroidContext, MatroidError, MAX_RESAMPLES};
use semiact::planardual::{alexander_poly, dual_with_orientation};
use semiact::polyshape::{box_certificate, BoxCertificate, RatPolynomial};
use semiact::totpos::{f_tp_closed, flat_maxpos_from_c, tp_from_network, FlatMaxPositive, GridNetwork};
use semiact::zonolattice::{
    bipartite_admissible_l, check_admissible, level_poly, trimmed_points, Admissibility, AdmissibleVector,
    ZonotopeContext,
};
use serde_json::json;

use crate::report::{InputDigest, RunReport};
use crate::{read_file, AlexanderArgs, BoxcertArgs, FaArgs, InputError, PdArgs, TpArgs, ZonotopeArgs};

/// `f_A` for a random generic vector, resampling non-generic draws.
pub fn f_random<R: Rng + ?Sized>(ctx: &MatroidContext, rng: &mut R) -> Result<RatPolynomial, InputError> {
    for _ in 0..MAX_RESAMPLES {
        let rho = GenericVector::Explicit(random_vector(ctx.n_elements(), rng));
        match f_poly_rational(ctx, &rho) {
            Err(MatroidError::NotGeneric(_)) => continue,
            other => return Ok(other?),
        }
    }
    Err(MatroidError::ResamplingExhausted(MAX_RESAMPLES).into())
}

pub fn certificate_json(cert: &BoxCertificate) -> serde_json::Value {
    json!({
        "d": cert.degree_d,
        "terms": cert.terms.iter().map(|(parts, w)| json!({"parts": parts, "weight": format_rational(w)})).collect::<Vec<_>>(),
    })
}

pub fn fa(args: &FaArgs) -> Result<RunReport, InputError> {
    let mut digest = InputDigest::default();
    let matrix = if let Some(path) = &args.matrix {
        let m = parse_matrix(&read_file(path)?)?;
        digest.add(&matrix_to_json(&m));
        m
    } else {
        let path = args.bigraph.as_ref().expect("clap enforces a source");
        let g = parse_bigraph(&read_file(path)?)?;
        digest.add(&bigraph_to_json(&g));
        let d = standard_orientation(&g)?;
        graphic_matrix(&d, &first_spanning_tree(&d)?)?
    };
    let seed = (args.rho_trials > 0).then_some(args.seed);
    let mut report = RunReport::new("fa", digest, seed);
    let ctx = MatroidContext::new(matrix)?;
    let f = f_poly_rational(&ctx, &GenericVector::LexOrder)?;
    report.set_rat_poly(&f);
    report.detail("rank", ctx.rank());
    report.detail("elements", ctx.n_elements());
    report.detail("volume", format_rational(&ctx.total_volume()));
    let mut rng = trial_rng(args.seed, 0);
    for k in 0..args.rho_trials {
        let g = f_random(&ctx, &mut rng)?;
        report.check(format!("random vector {k}"), g == f, format!("{g}"));
    }
    Ok(report)
}

pub fn pd(args: &PdArgs) -> Result<RunReport, InputError> {
    let g = parse_digraph(&read_file(&args.digraph)?)?;
    let mut digest = InputDigest::default();
    digest.add(&digraph_to_json(&g));
    let p = p_poly(&g, args.root)?;
    let mut report = RunReport::new("pd", digest, None);
    report.set_poly(&p);
    report.detail("root", args.root);
    report.detail("vertices", g.n_vertices());
    report.detail("edges", g.n_edges());
    Ok(report)
}

pub fn alexander(args: &AlexanderArgs) -> Result<RunReport, InputError> {
    let (p, part1) = parse_planegraph(&read_file(&args.plane)?)?;
    let mut digest = InputDigest::default();
    digest.add(&planegraph_to_json(&p, &part1));
    let alex = alexander_poly(&p, &part1)?;
    let dual = dual_with_orientation(&p, &part1)?;
    let mut report = RunReport::new("alexander", digest, None);
    report.set_poly(&alex);
    report.detail("dual", digraph_to_json(dual.dual.digraph()));
    Ok(report)
}

pub fn zonotope(args: &ZonotopeArgs) -> Result<RunReport, InputError> {
    let mut digest = InputDigest::default();
    let mut trees = None;
    let (ctx, l) = if let Some(path) = &args.bigraph {
        let g = parse_bigraph(&read_file(path)?)?;
        digest.add(&bigraph_to_json(&g));
        let d = standard_orientation(&g)?;
        trees = Some(kirchhoff_tree_count(&d));
        (ZonotopeContext::new(incidence_matrix(&d))?, bipartite_admissible_l(&g)?)
    } else {
        let path = args.matrix.as_ref().expect("clap enforces a source");
        let m = parse_matrix(&read_file(path)?)?;
        digest.add(&matrix_to_json(&m));
        let ctx = ZonotopeContext::new(m)?;
        let l = AdmissibleVector { l: args.l.clone().expect("clap requires l"), m: args.m.expect("clap requires m") };
        digest.add(&json!({"l": l.l, "m": l.m}));
        if let Admissibility::Violated(b) = check_admissible(&ctx, &l.l, l.m)? {
            return Err(InputError(format!("l is not {}-admissible: basis {:?}", l.m, b.indices())));
        }
        (ctx, l)
    };
    let mut report = RunReport::new("zonotope", digest, None);
    let trimmed = trimmed_points(&ctx, &l)?;
    let levels = level_poly(&trimmed);
    report.set_poly(&levels.poly);
    let f = f_poly(ctx.matroid(), &GenericVector::LexOrder)?;
    let expected = f.shift(ctx.rank() - l.m);
    report.check("level identity", levels.shift == 0 && levels.poly == expected, format!("f_A t^{} = {expected}", ctx.rank() - l.m));
    let vol = ctx.volume();
    report.check("count equals volume", vol == rat(trimmed.len() as i64), format!("{} points, volume {}", trimmed.len(), format_rational(&vol)));
    if let Some(t) = trees {
        report.check("volume equals tree count", vol == t.clone().into(), format!("{t} spanning trees"));
    }
    report.detail("l", &l);
    if args.points {
        report.detail("points", points_to_json(&trimmed));
    }
    Ok(report)
}

pub fn load_tp(
    network: Option<&std::path::Path>,
    c: Option<&std::path::Path>,
    random: Option<(usize, usize, u64)>,
    digest: &mut InputDigest,
) -> Result<(FlatMaxPositive, Option<GridNetwork>), InputError> {
    if let Some(path) = network {
        let net = parse_network(&read_file(path)?)?;
        digest.add(&network_to_json(&net));
        let c = match net.without_last_row() {
            Some(top) => tp_from_network(&top),
            None => RationalMatrix::zeros(0, net.cols()),
        };
        let a = tp_from_network(&net);
        if a.row(a.rows() - 1).iter().any(|x| *x != rat(1)) {
            return Err(InputError("network bottom row must have unit weights".into()));
        }
        let fmp = flat_maxpos_from_c(&c)?;
        if fmp.a != a {
            return Err(InputError("path sums disagree with the suffix sums of the top rows".into()));
        }
        return Ok((fmp, Some(net)));
    }
    if let Some(path) = c {
        let m = parse_matrix(&read_file(path)?)?;
        digest.add(&matrix_to_json(&m));
        return Ok((flat_maxpos_from_c(&m)?, None));
    }
    let (d, n, seed) = random.expect("one source");
    if d == 0 || n < d {
        return Err(InputError(format!("need 1 <= d <= n, got d={d}, n={n}")));
    }
    let (net, fmp) = tp_instance(&mut trial_rng(seed, 0), d, n);
    digest.add(&network_to_json(&net));
    Ok((fmp, Some(net)))
}

pub fn tp(args: &TpArgs) -> Result<RunReport, InputError> {
    let mut digest = InputDigest::default();
    let random = args.random.then(|| (args.d.unwrap_or(0), args.n.unwrap_or(0), args.seed));
    let (fmp, net) = load_tp(args.network.as_deref(), args.c.as_deref(), random, &mut digest)?;
    let mut report = RunReport::new("tp", digest, args.random.then_some(args.seed));
    let (closed, cert) = f_tp_closed(&fmp);
    report.set_rat_poly(&closed);
    let ctx = MatroidContext::new(fmp.a.clone())?;
    let brute = f_poly_rational(&ctx, &GenericVector::LexOrder)?;
    report.check("closed form equals basis sum", closed == brute, format!("{brute}"));
    report.check("certificate re-expands", cert.certifies(&closed), format!("{} terms", cert.terms.len()));
    report.detail("matrix", matrix_to_json(&fmp.a));
    report.detail("certificate", certificate_json(&cert));
    if let Some(net) = net {
        report.detail("network", network_to_json(&net));
    }
    Ok(report)
}

pub fn boxcert(args: &BoxcertArgs) -> Result<RunReport, InputError> {
    let p = parse_poly(&read_file(&args.poly)?)?;
    let mut digest = InputDigest::default();
    digest.add(&poly_to_json(&p));
    digest.add(&json!({"d": args.d}));
    let mut report = RunReport::new("boxcert", digest, None);
    report.set_poly(&p);
    match box_certificate(&p, args.d) {
        Some(cert) => {
            report.check(format!("{}-box-positive", args.d), true, format!("{} terms", cert.terms.len()));
            report.detail("certificate", certificate_json(&cert));
        }
        None => report.check(format!("{}-box-positive", args.d), false, "no positive decomposition exists"),
    }
    Ok(report)
}
