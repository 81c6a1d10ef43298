use itertools::Itertools;
use semiact::exactnum::{determinant, rat};
use semiact::families::{eulerian_digraphs, plane_bipartite_corpus, random_flat_matrix, random_tp_instance, trial_rng};
use semiact::formats::{
    bigraph_to_json, digraph_to_json, matrix_to_json, parse_bigraph, parse_digraph, parse_matrix, parse_planegraph,
    planegraph_to_json,
};
use semiact::graphkit::{
    cographic_matrix, eulerian_tour_order, first_spanning_tree, graphic_matrix, incidence_matrix, kirchhoff_tree_count,
    p_poly, reversals_to_root, spanning_trees, standard_orientation, Bigraph, Digraph,
};
use semiact::ormatroid::{f_poly, f_poly_rational, GenericVector, MatroidContext};
use semiact::planardual::{alexander_poly, bipartition, dual_with_orientation, PlaneGraph};
use semiact::polyshape::IntPolynomial;
use semiact::totpos::{
    circuit_signs_alternate, ext_closed_form, ext_set_closed_form, f_tp_closed, minor_via_c, FlatMaxPositive,
};
use semiact::zonolattice::{
    bipartite_admissible_l, level_poly, trimmed_points, trimmed_zonotope_points, LatticePointSet, ZonotopeContext,
};

use crate::commands::{f_random, load_tp};
use crate::report::{InputDigest, RunReport};
use crate::{read_file, InputError, Suite, VerifyArgs};

const LEX: GenericVector = GenericVector::LexOrder;

/// Largest plane graph (in edges) the default zonotope suites run on.
const ZONOTOPE_EDGE_LIMIT: usize = 10;

pub fn run(args: &VerifyArgs) -> Result<RunReport, InputError> {
    let mut digest = InputDigest::default();
    let (name, checks) = match args.suite {
        Suite::Thm3_5 => ("verify thm3_5", rho_invariance(args, &mut digest)?),
        Suite::Thm5_3 => ("verify thm5_3", tree_polynomial(args, &mut digest)?),
        Suite::Cor5_4 => ("verify cor5_4", plane_duality(args, &mut digest)?),
        Suite::Thm6_7 => ("verify thm6_7", level_identity(args, &mut digest)?),
        Suite::Thm7_2 => ("verify thm7_2", bipartite_levels(args, &mut digest)?),
        Suite::Thm8_8 => ("verify thm8_8", tp_suite(args, &mut digest, tp_closed_form)?),
        Suite::Lemma8_1 => ("verify lemma8_1", tp_suite(args, &mut digest, tp_ext)?),
        Suite::Lemma8_3 => ("verify lemma8_3", tp_suite(args, &mut digest, tp_minors)?),
    };
    let mut report = RunReport::new(name, digest, Some(args.seed));
    for (n, pass, d) in checks {
        report.check(n, pass, d);
    }
    Ok(report)
}

type Checks = Vec<(String, bool, String)>;

fn rho_invariance(args: &VerifyArgs, digest: &mut InputDigest) -> Result<Checks, InputError> {
    let matrices = match &args.matrix {
        Some(path) => vec![parse_matrix(&read_file(path)?)?],
        None => {
            let mut rng = trial_rng(args.seed, 0);
            (0..6).map(|k| random_flat_matrix(&mut rng, 2 + k % 3, 5 + k % 3)).collect()
        }
    };
    let mut out = Vec::new();
    for (i, m) in matrices.into_iter().enumerate() {
        digest.add(&matrix_to_json(&m));
        let ctx = MatroidContext::new(m)?;
        let f = f_poly_rational(&ctx, &LEX)?;
        let mut rng = trial_rng(args.seed, 1 + i as u64);
        let mut bad = None;
        for _ in 0..args.trials {
            let g = f_random(&ctx, &mut rng)?;
            if g != f {
                bad = Some(g);
                break;
            }
        }
        let detail = match &bad {
            None => format!("f = {f} for lexicographic and {} random vectors", args.trials),
            Some(g) => format!("lexicographic gives {f}, a random vector gives {g}"),
        };
        out.push((format!("matrix {i}"), bad.is_none(), detail));
    }
    Ok(out)
}

fn tree_polynomial(args: &VerifyArgs, digest: &mut InputDigest) -> Result<Checks, InputError> {
    let graphs = match &args.digraph {
        Some(path) => vec![parse_digraph(&read_file(path)?)?],
        None => eulerian_digraphs(5),
    };
    let mut out = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        digest.add(&digraph_to_json(g));
        let p = p_poly(g, 0)?;
        let ctx = MatroidContext::new(cographic_matrix(g, &first_spanning_tree(g)?)?)?;
        let f = f_poly(&ctx, &LEX)?;
        out.push((format!("graph {i}: cographic f"), f == p, format!("P_D = {p}, f = {f}")));
        let roots_agree = (1..g.n_vertices()).map(|r| p_poly(g, r)).collect::<Result<Vec<_>, _>>()?;
        out.push((format!("graph {i}: root independence"), roots_agree.iter().all(|q| *q == p), format!("{} roots", g.n_vertices())));
        out.push((format!("graph {i}: tour order"), tour_order_matches(g)?, "ext of each cotree equals its reversal count".into()));
    }
    Ok(out)
}

/// With edges relabelled along an Eulerian tour from the root, the
/// lexicographic semi-activity of each cotree equals the number of edges its
/// tree needs reversed to point at the root.
fn tour_order_matches(g: &Digraph) -> Result<bool, InputError> {
    let order = eulerian_tour_order(g, 0)?;
    let h = g.permute_edges(&order);
    let ctx = MatroidContext::new(cographic_matrix(&h, &first_spanning_tree(&h)?)?)?;
    for t in spanning_trees(&h)? {
        let b = ctx.basis(&t.complement(h.n_edges()))?;
        let (_, ext) = ctx.ext_semiactivity(&b, &LEX)?;
        if ext != reversals_to_root(&h, &t, 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn plane_inputs(args: &VerifyArgs, digest: &mut InputDigest) -> Result<Vec<(String, PlaneGraph, Vec<usize>)>, InputError> {
    let graphs = match &args.plane {
        Some(path) => {
            let (p, part1) = parse_planegraph(&read_file(path)?)?;
            vec![("input".to_string(), p, part1)]
        }
        None => plane_bipartite_corpus()
            .into_iter()
            .map(|(name, p)| {
                let part1 = bipartition(&p)?;
                Ok((name, p, part1))
            })
            .collect::<Result<_, semiact::planardual::PlanarError>>()?,
    };
    for (_, p, part1) in &graphs {
        digest.add(&planegraph_to_json(p, part1));
    }
    Ok(graphs)
}

fn plane_duality(args: &VerifyArgs, digest: &mut InputDigest) -> Result<Checks, InputError> {
    let mut out = Vec::new();
    for (name, p, part1) in plane_inputs(args, digest)? {
        let g = Bigraph::new(p.digraph().n_vertices(), &part1, p.digraph().edges().to_vec())?;
        let d = standard_orientation(&g)?;
        let graphic = f_poly(&MatroidContext::new(graphic_matrix(&d, &first_spanning_tree(&d)?)?)?, &LEX)?;
        let dual = dual_with_orientation(&p, &part1)?.dual;
        let dg = dual.digraph();
        let cographic = f_poly(&MatroidContext::new(cographic_matrix(dg, &first_spanning_tree(dg)?)?)?, &LEX)?;
        let alex = alexander_poly(&p, &part1)?;
        out.push((
            name,
            graphic == cographic && cographic == alex,
            format!("graphic {graphic}, dual cographic {cographic}, Alexander {alex}"),
        ));
    }
    Ok(out)
}

fn bigraph_inputs(args: &VerifyArgs, digest: &mut InputDigest) -> Result<Vec<(String, Bigraph)>, InputError> {
    let graphs = match &args.bigraph {
        Some(path) => vec![("input".to_string(), parse_bigraph(&read_file(path)?)?)],
        None => plane_bipartite_corpus()
            .into_iter()
            .filter(|(_, p)| p.digraph().n_edges() <= ZONOTOPE_EDGE_LIMIT)
            .map(|(name, p)| {
                let part1 = bipartition(&p)?;
                Ok((name, Bigraph::new(p.digraph().n_vertices(), &part1, p.digraph().edges().to_vec())?))
            })
            .collect::<Result<_, InputError>>()?,
    };
    for (_, g) in &graphs {
        digest.add(&bigraph_to_json(g));
    }
    Ok(graphs)
}

fn level_identity(args: &VerifyArgs, digest: &mut InputDigest) -> Result<Checks, InputError> {
    let mut out = Vec::new();
    for (name, g) in bigraph_inputs(args, digest)? {
        let d = standard_orientation(&g)?;
        let ctx = ZonotopeContext::new(incidence_matrix(&d))?;
        let l = bipartite_admissible_l(&g)?;
        let trimmed = trimmed_points(&ctx, &l)?;
        let levels = level_poly(&trimmed);
        let expected = f_poly(ctx.matroid(), &LEX)?.shift(ctx.rank() - l.m);
        out.push((
            format!("{name}: levels"),
            levels.shift == 0 && levels.poly == expected,
            format!("levels {}, f t^{} = {expected}", levels.poly, ctx.rank() - l.m),
        ));
        let trees = kirchhoff_tree_count(&d);
        let vol = ctx.volume();
        out.push((
            format!("{name}: volume"),
            vol == rat(trimmed.len() as i64) && vol == trees.clone().into(),
            format!("{} points, volume {vol}, {trees} trees", trimmed.len()),
        ));
    }
    Ok(out)
}

fn part1_level(g: &Bigraph, points: &LatticePointSet) -> IntPolynomial {
    let hs: Vec<i64> = points.points.iter().map(|p| g.part1().iter().map(|&v| p[v]).sum()).collect();
    let shifted = LatticePointSet { dim: points.dim, points: points.points.clone(), levels: hs };
    level_poly(&shifted).poly
}

fn bipartite_levels(args: &VerifyArgs, digest: &mut InputDigest) -> Result<Checks, InputError> {
    let mut out = Vec::new();
    for (name, g) in bigraph_inputs(args, digest)? {
        let d = standard_orientation(&g)?;
        let f = f_poly(&MatroidContext::new(graphic_matrix(&d, &first_spanning_tree(&d)?)?)?, &LEX)?;
        let n2 = g.part2().len();
        let points = trimmed_zonotope_points(&g)?;
        let counts = part1_level(&g, &points);
        let expected = f.shift(n2 - 1);
        out.push((format!("{name}: hyperplane counts"), counts == expected, format!("counts {counts}, f t^{} = {expected}", n2 - 1)));
    }
    Ok(out)
}

type TpCheck = fn(&FlatMaxPositive) -> Result<(bool, String), InputError>;

fn tp_suite(args: &VerifyArgs, digest: &mut InputDigest, check: TpCheck) -> Result<Checks, InputError> {
    let instances = if args.network.is_some() || args.c.is_some() {
        vec![load_tp(args.network.as_deref(), args.c.as_deref(), None, digest)?.0]
    } else {
        (0..args.trials)
            .map(|k| {
                let (net, fmp) = random_tp_instance(&mut trial_rng(args.seed, k as u64), 4, 9);
                digest.add(&semiact::formats::network_to_json(&net));
                fmp
            })
            .collect()
    };
    let mut out = Vec::new();
    for (i, fmp) in instances.iter().enumerate() {
        let (pass, detail) = check(fmp)?;
        out.push((format!("instance {i} ({}x{})", fmp.rank(), fmp.n()), pass, detail));
    }
    Ok(out)
}

fn tp_closed_form(fmp: &FlatMaxPositive) -> Result<(bool, String), InputError> {
    let (closed, cert) = f_tp_closed(fmp);
    let brute = f_poly_rational(&MatroidContext::new(fmp.a.clone())?, &LEX)?;
    Ok((closed == brute && cert.certifies(&closed), format!("closed {closed}, basis sum {brute}")))
}

fn tp_ext(fmp: &FlatMaxPositive) -> Result<(bool, String), InputError> {
    let ctx = MatroidContext::new(fmp.a.clone())?;
    let mut ok = circuit_signs_alternate(&ctx);
    let signs = ok;
    for (b, _) in ctx.enumerate_bases() {
        let (set, k) = ctx.ext_semiactivity(&b, &LEX)?;
        ok &= ext_closed_form(b.indices(), fmp.n())? == k && ext_set_closed_form(b.indices(), fmp.n()) == set;
    }
    Ok((ok, format!("circuit signs alternate: {signs}")))
}

fn tp_minors(fmp: &FlatMaxPositive) -> Result<(bool, String), InputError> {
    let mut ok = true;
    let mut count = 0;
    for cols in (0..fmp.n()).combinations(fmp.rank()) {
        let direct = determinant(&fmp.a.select_columns(&cols))?;
        ok &= minor_via_c(fmp, &cols)? == direct;
        count += 1;
    }
    Ok((ok, format!("{count} maximal minors")))
}
