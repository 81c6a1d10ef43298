//! Zonotopes of flat unimodular integer matrices: the semi-activity tiling,
//! lattice points, trimming along an admissible direction, and level counts.
//!
//! Matrices may be rank deficient (incidence matrices are). Everything
//! geometric happens in ambient coordinates; the matroid side works on the
//! first maximal set of independent rows, which fixes the volume form.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{independent_rows, rat, solve, Rational, RationalMatrix};
use crate::graphkit::{incidence_matrix, standard_orientation, Bigraph, GraphError};
use crate::lpexact::{lp_solve, LinearProgram, LpError, LpStatus, VarBound};
use crate::ormatroid::{Basis, GenericVector, MatroidContext, MatroidError};
use crate::polyshape::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZonoError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("matrix entries must be integers fitting in 64 bits")]
    NotIntegral,
    #[error("some basis has volume other than 1")]
    NotUnimodular,
    #[error("vector is not in the column span")]
    NotInSpan,
    #[error("vector has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("vector is not {m}-admissible: basis {basis:?} violates the sign condition")]
    NotAdmissible { m: usize, basis: Vec<usize> },
    #[error("trimming direction is zero")]
    ZeroDirection,
    #[error("two routes disagree: {0}")]
    IdentityViolation(String),
}

/// Integer matrix with a flat column configuration, plus the full-row-rank
/// presentation used for matroid computations.
#[derive(Debug, Clone)]
pub struct ZonotopeContext {
    matrix: RationalMatrix,
    columns: Vec<Vec<i64>>,
    row_basis: Vec<usize>,
    matroid: MatroidContext,
    unimodular: bool,
}

impl ZonotopeContext {
    pub fn new(matrix: RationalMatrix) -> Result<Self, ZonoError> {
        let mut columns = vec![Vec::with_capacity(matrix.rows()); matrix.cols()];
        for i in 0..matrix.rows() {
            for (j, col) in columns.iter_mut().enumerate() {
                let x = matrix.get(i, j);
                if !x.is_integer() {
                    return Err(ZonoError::NotIntegral);
                }
                col.push(x.to_integer().to_i64().ok_or(ZonoError::NotIntegral)?);
            }
        }
        let row_basis = independent_rows(&matrix);
        let matroid = MatroidContext::new(matrix.select_rows(&row_basis))?;
        let unimodular = matroid.is_unimodular();
        Ok(ZonotopeContext { matrix, columns, row_basis, matroid, unimodular })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn matroid(&self) -> &MatroidContext {
        &self.matroid
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn rank(&self) -> usize {
        self.row_basis.len()
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    pub fn column(&self, j: usize) -> &[i64] {
        &self.columns[j]
    }

    /// Value of the flatness form; every column has level 1.
    pub fn level(&self, p: &[i64]) -> i64 {
        // levels of zonotope points are integer combinations of columns, so
        // evaluating the projected witness is exact
        let h = &self.matroid.witness().h;
        let v = self.row_basis.iter().zip(h).fold(Rational::zero(), |acc, (&r, c)| acc + c * rat(p[r]));
        v.to_integer().to_i64().expect("level fits in i64")
    }

    /// `Vol(Z_A)`, the sum of basis volumes.
    pub fn volume(&self) -> Rational {
        self.matroid.total_volume()
    }

    /// Coefficients of `v` in the columns of `b`; `None` when outside the
    /// span.
    fn coords_in_basis(&self, b: &Basis, v: &[i64]) -> Option<Vec<Rational>> {
        let cols: Vec<usize> = b.indices().to_vec();
        let sub = self.matrix.select_columns(&cols);
        let rhs: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
        let sol = solve(&sub, &rhs).expect("dimensions agree")?;
        Some(sol.particular)
    }

    fn check_len(&self, v: &[i64]) -> Result<(), ZonoError> {
        if v.len() == self.ambient_dim() {
            Ok(())
        } else {
            Err(ZonoError::WrongLength { expected: self.ambient_dim(), found: v.len() })
        }
    }

    fn require_unimodular(&self) -> Result<(), ZonoError> {
        if self.unimodular {
            Ok(())
        } else {
            Err(ZonoError::NotUnimodular)
        }
    }
}

/// Parallelepiped spanned by a basis, translated by `shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub basis: Basis,
    pub shift: Vec<i64>,
}

fn add_into(acc: &mut [i64], v: &[i64]) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += x;
    }
}

/// One tile per basis, shifted by the sum of its externally semi-active
/// columns. Together they tile `Z_A`.
pub fn tiling(ctx: &ZonotopeContext, rho: &GenericVector) -> Result<Vec<Tile>, ZonoError> {
    let table = ctx.matroid.ext_table(rho)?;
    Ok(table
        .into_iter()
        .map(|(basis, _, ext)| {
            let mut shift = vec![0; ctx.ambient_dim()];
            for j in ext {
                add_into(&mut shift, ctx.column(j));
            }
            Tile { basis, shift }
        })
        .collect())
}

/// Result of [`check_admissible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    Violated(Basis),
}

impl Admissibility {
    pub fn holds(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Checks that `l` has exactly `m` positive and `d - m` negative
/// coefficients in every basis.
pub fn check_admissible(ctx: &ZonotopeContext, l: &[i64], m: usize) -> Result<Admissibility, ZonoError> {
    ctx.check_len(l)?;
    for (b, _) in ctx.matroid.enumerate_bases() {
        let c = ctx.coords_in_basis(&b, l).ok_or(ZonoError::NotInSpan)?;
        let pos = c.iter().filter(|x| x.is_positive()).count();
        let neg = c.iter().filter(|x| x.is_negative()).count();
        if pos != m || neg != ctx.rank() - m {
            return Ok(Admissibility::Violated(b));
        }
    }
    Ok(Admissibility::Admissible)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleVector {
    pub l: Vec<i64>,
    pub m: usize,
}

/// Net-flow vector for a connected bipartite graph: 1 on every vertex except
/// the highest-numbered second-part vertex, which balances the sum. It is
/// admissible for the incidence matrix of the standard orientation with `m`
/// the size of the first part.
pub fn bipartite_admissible_l(g: &Bigraph) -> Result<AdmissibleVector, ZonoError> {
    let d = standard_orientation(g)?;
    if !d.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let n = g.n_vertices();
    let sink = *g.part2().last().ok_or(GraphError::Disconnected)?;
    let mut l = vec![1i64; n];
    l[sink] = -(n as i64 - 1);
    let v = AdmissibleVector { l, m: g.part1().len() };
    let ctx = ZonotopeContext::new(incidence_matrix(&d))?;
    match check_admissible(&ctx, &v.l, v.m)? {
        Admissibility::Admissible => Ok(v),
        Admissibility::Violated(b) => Err(ZonoError::NotAdmissible { m: v.m, basis: b.indices().to_vec() }),
    }
}

/// Integer points with their levels, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePointSet {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
    pub levels: Vec<i64>,
}

impl LatticePointSet {
    fn from_set(ctx: &ZonotopeContext, set: BTreeSet<Vec<i64>>) -> Self {
        let points: Vec<Vec<i64>> = set.into_iter().collect();
        let levels = points.iter().map(|p| ctx.level(p)).collect();
        LatticePointSet { dim: ctx.ambient_dim(), points, levels }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    /// Same points moved by `by`; levels are recomputed by `level`.
    pub fn translated(&self, by: &[i64], level: impl Fn(&[i64]) -> i64) -> Self {
        let mut points: Vec<Vec<i64>> =
            self.points.iter().map(|p| p.iter().zip(by).map(|(a, b)| a + b).collect()).collect();
        points.sort();
        let levels = points.iter().map(|p| level(p)).collect();
        LatticePointSet { dim: self.dim, points, levels }
    }
}

/// `Z_A` intersected with the integer lattice, as the union of the vertex
/// sets of the unimodular tiles.
pub fn lattice_points(ctx: &ZonotopeContext, rho: &GenericVector) -> Result<LatticePointSet, ZonoError> {
    ctx.require_unimodular()?;
    let mut set = BTreeSet::new();
    for tile in tiling(ctx, rho)? {
        let b = tile.basis.indices();
        for mask in 0u64..(1 << b.len()) {
            let mut p = tile.shift.clone();
            for (k, &j) in b.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    add_into(&mut p, ctx.column(j));
                }
            }
            set.insert(p);
        }
    }
    Ok(LatticePointSet::from_set(ctx, set))
}

/// Largest `e >= 0` with `p + e l` in `Z_A`, or `None` if `p` is outside.
pub fn max_step(ctx: &ZonotopeContext, p: &[i64], l: &[i64]) -> Result<Option<Rational>, ZonoError> {
    ctx.check_len(p)?;
    ctx.check_len(l)?;
    if l.iter().all(|&x| x == 0) {
        return Err(ZonoError::ZeroDirection);
    }
    let n = ctx.matrix.cols();
    // variables t_1..t_N in [0,1] and e >= 0 with A t - e l = p
    let mut rows = Vec::with_capacity(ctx.ambient_dim());
    for (i, &li) in l.iter().enumerate() {
        let mut row: Vec<Rational> = ctx.matrix.row(i).to_vec();
        row.push(rat(-li));
        rows.push(row);
    }
    let eq = RationalMatrix::from_rows_with_cols(rows, n + 1).expect("rectangular rows");
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = rat(1);
    let mut bounds = vec![VarBound::between(rat(0), rat(1)); n];
    bounds.push(VarBound::nonneg());
    let lp = LinearProgram::new(objective, eq, p.iter().map(|&x| rat(x)).collect(), bounds)?;
    let out = lp_solve(&lp)?;
    Ok(match out.status {
        LpStatus::Infeasible => None,
        LpStatus::Optimal => out.optimum,
        LpStatus::Unbounded => unreachable!("zonotopes are bounded and l is nonzero"),
    })
}

/// Exact membership `p in Z_A`, by feasibility of `A t = p` with `t` in the
/// unit cube.
pub fn in_zonotope(ctx: &ZonotopeContext, p: &[i64]) -> Result<bool, ZonoError> {
    ctx.check_len(p)?;
    let n = ctx.matrix.cols();
    let lp = LinearProgram::new(
        vec![Rational::zero(); n],
        ctx.matrix.clone(),
        p.iter().map(|&x| rat(x)).collect(),
        vec![VarBound::between(rat(0), rat(1)); n],
    )?;
    Ok(lp_solve(&lp)?.status == LpStatus::Optimal)
}

/// Integer points of `Z_A` that can move a positive distance along `l`
/// without leaving `Z_A`, decided by one exact LP per candidate.
pub fn trimmed_points(ctx: &ZonotopeContext, l: &AdmissibleVector) -> Result<LatticePointSet, ZonoError> {
    if let Admissibility::Violated(b) = check_admissible(ctx, &l.l, l.m)? {
        return Err(ZonoError::NotAdmissible { m: l.m, basis: b.indices().to_vec() });
    }
    let candidates = lattice_points(ctx, &GenericVector::LexOrder)?;
    let keep: Vec<Option<Vec<i64>>> = candidates
        .points
        .par_iter()
        .map(|p| {
            let step = max_step(ctx, p, &l.l)?;
            Ok(step.filter(|e| e.is_positive()).map(|_| p.clone()))
        })
        .collect::<Result<_, ZonoError>>()?;
    Ok(LatticePointSet::from_set(ctx, keep.into_iter().flatten().collect()))
}

/// The vertex of a tile that survives trimming along `l`: its shift plus the
/// basis columns carrying negative coefficients of `l`.
pub fn tile_trim_vertex(ctx: &ZonotopeContext, tile: &Tile, l: &[i64]) -> Result<Vec<i64>, ZonoError> {
    let c = ctx.coords_in_basis(&tile.basis, l).ok_or(ZonoError::NotInSpan)?;
    let mut p = tile.shift.clone();
    for (x, &j) in c.iter().zip(tile.basis.indices()) {
        if x.is_negative() {
            add_into(&mut p, ctx.column(j));
        }
    }
    Ok(p)
}

/// Level counts with the lowest level moved to degree 0 if negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPolynomial {
    pub poly: IntPolynomial,
    /// added to every level before counting
    pub shift: i64,
}

pub fn level_poly(points: &LatticePointSet) -> LevelPolynomial {
    let min = points.levels.iter().copied().min().unwrap_or(0);
    let shift = if min < 0 { -min } else { 0 };
    let top = points.levels.iter().map(|&z| (z + shift) as usize).max();
    let mut counts = vec![BigInt::zero(); top.map_or(0, |t| t + 1)];
    for &z in &points.levels {
        counts[(z + shift) as usize] += 1;
    }
    LevelPolynomial { poly: IntPolynomial::new(counts), shift }
}

/// Integer points of the trimmed zonotope `{x : x + simplex in Z}` of a
/// connected bipartite graph, in vertex coordinates. Computed by LP trimming
/// along the admissible net-flow vector and translated by the unit vector of
/// its negative coordinate, and independently from lattice membership of
/// the simplex corners; the two must agree.
pub fn trimmed_zonotope_points(g: &Bigraph) -> Result<LatticePointSet, ZonoError> {
    let d = standard_orientation(g)?;
    let ctx = ZonotopeContext::new(incidence_matrix(&d))?;
    let l = bipartite_admissible_l(g)?;
    let sink = l.l.iter().position(|&x| x < 0).expect("one negative coordinate");
    let n = g.n_vertices();
    let mut minus_sink = vec![0; n];
    minus_sink[sink] = -1;
    let via_lp = trimmed_points(&ctx, &l)?.translated(&minus_sink, |p| ctx.level(p));

    let all = lattice_points(&ctx, &GenericVector::LexOrder)?;
    let corners_inside = |x: &[i64]| {
        (0..n).all(|i| {
            let mut y = x.to_vec();
            y[i] += 1;
            y[sink] -= 1;
            all.contains(&y)
        })
    };
    let set: BTreeSet<Vec<i64>> = all.points.iter().filter(|x| corners_inside(x)).cloned().collect();
    let via_membership = LatticePointSet::from_set(&ctx, set).translated(&minus_sink, |p| ctx.level(p));
    if via_lp != via_membership {
        return Err(ZonoError::IdentityViolation(format!(
            "LP trimming gives {} points, simplex membership gives {}",
            via_lp.len(),
            via_membership.len()
        )));
    }
    Ok(via_lp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ormatroid::f_poly;

    fn zc(rows: &[Vec<i64>]) -> ZonotopeContext {
        ZonotopeContext::new(RationalMatrix::from_i64(rows)).unwrap()
    }

    fn c4() -> Bigraph {
        Bigraph::two_colour(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn k12() -> Bigraph {
        Bigraph::new(3, &[0], vec![(0, 1), (0, 2)]).unwrap()
    }

    fn k2() -> Bigraph {
        Bigraph::new(2, &[0], vec![(0, 1)]).unwrap()
    }

    fn incidence_ctx(g: &Bigraph) -> ZonotopeContext {
        ZonotopeContext::new(incidence_matrix(&standard_orientation(g).unwrap())).unwrap()
    }

    #[test]
    fn tiling_examples() {
        let lex = GenericVector::LexOrder;
        let t = tiling(&zc(&[vec![1, 1]]), &lex).unwrap();
        assert_eq!(t.iter().map(|t| t.shift.clone()).collect::<Vec<_>>(), vec![vec![0], vec![1]]);
        let t = tiling(&zc(&[vec![1, 0], vec![0, 1]]), &lex).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].shift, vec![0, 0]);
        let ctx = incidence_ctx(&c4());
        assert_eq!(ctx.rank(), 3);
        assert_eq!(tiling(&ctx, &lex).unwrap().len(), 4);
        assert_eq!(ctx.volume(), rat(4));
    }

    #[test]
    fn admissibility_examples() {
        let seg = zc(&[vec![1, 1]]);
        assert!(check_admissible(&seg, &[1], 1).unwrap().holds());
        assert!(!check_admissible(&seg, &[1], 0).unwrap().holds());
        let ctx = incidence_ctx(&k12());
        assert!(check_admissible(&ctx, &[1, 1, -2], 1).unwrap().holds());
        assert_eq!(check_admissible(&ctx, &[1, 1, 1], 1), Err(ZonoError::NotInSpan));

        assert_eq!(bipartite_admissible_l(&k2()).unwrap(), AdmissibleVector { l: vec![1, -1], m: 1 });
        assert_eq!(bipartite_admissible_l(&k12()).unwrap(), AdmissibleVector { l: vec![1, 1, -2], m: 1 });
        assert_eq!(bipartite_admissible_l(&c4()).unwrap(), AdmissibleVector { l: vec![1, 1, 1, -3], m: 2 });
    }

    #[test]
    fn lattice_point_examples() {
        let lex = GenericVector::LexOrder;
        assert_eq!(lattice_points(&zc(&[vec![1, 1]]), &lex).unwrap().points, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(lattice_points(&zc(&[vec![1, 0], vec![0, 1]]), &lex).unwrap().len(), 4);
        let ctx = incidence_ctx(&c4());
        let pts = lattice_points(&ctx, &lex).unwrap();
        // membership oracle over a box containing Z (every vertex has degree 2)
        let mut inside = 0;
        for code in 0..5i64.pow(4) {
            let p: Vec<i64> = (0..4).map(|i| code / 5i64.pow(i) % 5 - 2).collect();
            if in_zonotope(&ctx, &p).unwrap() {
                inside += 1;
                assert!(pts.contains(&p));
            }
        }
        assert_eq!(inside, pts.len());
        assert_eq!(lattice_points(&zc(&[vec![3, 1], vec![1, 1]]), &lex), Err(ZonoError::NotUnimodular));
    }

    #[test]
    fn trimmed_point_examples() {
        let seg = zc(&[vec![1, 1]]);
        let t = trimmed_points(&seg, &AdmissibleVector { l: vec![1], m: 1 }).unwrap();
        assert_eq!(t.points, vec![vec![0], vec![1]]);
        let t = trimmed_points(&seg, &AdmissibleVector { l: vec![-1], m: 0 }).unwrap();
        assert_eq!(t.points, vec![vec![1], vec![2]]);
        let sq = zc(&[vec![1, 0], vec![0, 1]]);
        let t = trimmed_points(&sq, &AdmissibleVector { l: vec![1, -1], m: 1 }).unwrap();
        assert_eq!(t.points, vec![vec![0, 1]]);
        assert!(matches!(
            trimmed_points(&seg, &AdmissibleVector { l: vec![1], m: 0 }),
            Err(ZonoError::NotAdmissible { .. })
        ));
    }

    #[test]
    fn level_poly_examples() {
        let seg = zc(&[vec![1, 1]]);
        let t = trimmed_points(&seg, &AdmissibleVector { l: vec![1], m: 1 }).unwrap();
        assert_eq!(level_poly(&t).poly, IntPolynomial::from_i64(&[1, 1]));
        let empty = LatticePointSet { dim: 1, points: vec![], levels: vec![] };
        assert!(level_poly(&empty).poly.is_zero());
        let one = LatticePointSet { dim: 1, points: vec![vec![3]], levels: vec![3] };
        let lp = level_poly(&one);
        assert_eq!(lp.poly, IntPolynomial::monomial(BigInt::from(1), 3));
        assert_eq!(lp.shift, 0);
        let neg = LatticePointSet { dim: 1, points: vec![vec![-1]], levels: vec![-1] };
        assert_eq!(level_poly(&neg).shift, 1);
    }

    #[test]
    fn trimmed_zonotope_examples() {
        assert_eq!(trimmed_zonotope_points(&k2()).unwrap().len(), 1);
        assert_eq!(trimmed_zonotope_points(&c4()).unwrap().len(), 4);
        assert_eq!(trimmed_zonotope_points(&k12()).unwrap().len(), 1);
    }

    fn grid_2x3() -> Bigraph {
        Bigraph::two_colour(6, vec![(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn level_identity_and_tile_vertices() {
        for g in [k2(), k12(), c4(), grid_2x3()] {
            let ctx = incidence_ctx(&g);
            let l = bipartite_admissible_l(&g).unwrap();
            let trimmed = trimmed_points(&ctx, &l).unwrap();
            let f = f_poly(ctx.matroid(), &GenericVector::LexOrder).unwrap();
            let lp = level_poly(&trimmed);
            assert_eq!(lp.shift, 0);
            assert_eq!(lp.poly, f.shift(ctx.rank() - l.m));
            assert_eq!(Rational::from_integer(trimmed.len().into()), ctx.volume());
            // one surviving vertex per tile, and they are exactly the trimmed set
            let tiles = tiling(&ctx, &GenericVector::LexOrder).unwrap();
            let verts: BTreeSet<Vec<i64>> =
                tiles.iter().map(|t| tile_trim_vertex(&ctx, t, &l.l).unwrap()).collect();
            assert_eq!(verts.len(), tiles.len());
            assert_eq!(verts.into_iter().collect::<Vec<_>>(), trimmed.points);
        }
    }

    /// Largest margin by which two tiles' relative interiors overlap; zero
    /// means they meet at most on their boundaries.
    fn interior_overlap(ctx: &ZonotopeContext, a: &Tile, b: &Tile) -> Rational {
        let d = ctx.rank();
        let k = ctx.ambient_dim();
        // variables s (d), u (d), margin; shift_a + A_a s - shift_b - A_b u = 0
        // with margin <= s_i, u_i <= 1 - margin, expressed via slacks
        let n = 2 * d + 1 + 4 * d;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..k {
            let mut row = vec![Rational::zero(); n];
            for (c, &j) in a.basis.indices().iter().enumerate() {
                row[c] = rat(ctx.column(j)[i]);
            }
            for (c, &j) in b.basis.indices().iter().enumerate() {
                row[d + c] = rat(-ctx.column(j)[i]);
            }
            rows.push(row);
            rhs.push(rat(b.shift[i] - a.shift[i]));
        }
        for v in 0..2 * d {
            // x_v - margin - lo_v = 0 ; x_v + margin + hi_v = 1
            let mut lo = vec![Rational::zero(); n];
            lo[v] = rat(1);
            lo[2 * d] = rat(-1);
            lo[2 * d + 1 + 2 * v] = rat(-1);
            rows.push(lo);
            rhs.push(rat(0));
            let mut hi = vec![Rational::zero(); n];
            hi[v] = rat(1);
            hi[2 * d] = rat(1);
            hi[2 * d + 2 + 2 * v] = rat(1);
            rows.push(hi);
            rhs.push(rat(1));
        }
        let mut obj = vec![Rational::zero(); n];
        obj[2 * d] = rat(1);
        let mut bounds = vec![VarBound::free(); 2 * d];
        bounds.extend(std::iter::repeat_n(VarBound::nonneg(), 1 + 4 * d));
        let lp = LinearProgram::new(obj, RationalMatrix::from_rows_with_cols(rows, n).unwrap(), rhs, bounds).unwrap();
        let out = lp_solve(&lp).unwrap();
        match out.status {
            LpStatus::Optimal => out.optimum.unwrap(),
            _ => Rational::zero(),
        }
    }

    #[test]
    fn tiles_have_disjoint_interiors() {
        let cases = [incidence_ctx(&c4()), incidence_ctx(&grid_2x3()), zc(&[vec![1, 1, 1, 1]]), zc(&[vec![0, 1, 2, 3], vec![1, 1, 1, 1]])];
        for ctx in cases {
            let tiles = tiling(&ctx, &GenericVector::LexOrder).unwrap();
            for i in 0..tiles.len() {
                for j in i + 1..tiles.len() {
                    assert!(interior_overlap(&ctx, &tiles[i], &tiles[j]).is_zero());
                }
            }
        }
    }

    #[test]
    fn translation_is_the_identity_on_empty() {
        let e = LatticePointSet { dim: 2, points: vec![], levels: vec![] };
        assert_eq!(e.translated(&[1, 1], |_| 0), e);
    }
}
