//! Exact computation of external semi-activity polynomials of flat vector
//! configurations, with the graph, plane-graph, zonotope and totally positive
//! families they specialise to.

pub mod exactnum;
pub mod families;
pub mod formats;
pub mod graphkit;
pub mod lpexact;
pub mod ormatroid;
pub mod planardual;
pub mod polyshape;
pub mod totpos;
pub mod zonolattice;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Matrix(#[from] exactnum::MatrixError),
    #[error(transparent)]
    Lp(#[from] lpexact::LpError),
    #[error(transparent)]
    Shape(#[from] polyshape::ShapeError),
    #[error(transparent)]
    Matroid(#[from] ormatroid::MatroidError),
    #[error(transparent)]
    Graph(#[from] graphkit::GraphError),
    #[error(transparent)]
    Planar(#[from] planardual::PlanarError),
    #[error(transparent)]
    Zono(#[from] zonolattice::ZonoError),
    #[error(transparent)]
    Totpos(#[from] totpos::TotposError),
    #[error(transparent)]
    Format(#[from] formats::FormatError),
}
