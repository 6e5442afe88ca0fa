use clap::{Args, ValueEnum};
use geotopo::diffgeo::catalog::{
    CubicQuartic, CubicRevolution, Ellipse, EllipsoidSurface, Enneper, Helix, HyperbolicTractroid, QuadraticPatch, Spheroid,
    Torus, Tractroid,
};
use geotopo::diffgeo::{frenet, fundamental_forms, Curve, Surface};

use crate::output::{Cell, Report, Table};
use crate::{parse_num, CliError, Ctx};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SurfaceName {
    Enneper,
    QuadraticPatch,
    Spheroid,
    Tractroid,
    HyperbolicTractroid,
    Torus,
    Ellipsoid,
    CubicRevolution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveName {
    Helix,
    CubicQuartic,
    Ellipse,
}

#[derive(Debug, Args)]
pub struct CurvatureArgs {
    #[arg(long, value_enum, conflicts_with = "curve", required_unless_present = "curve")]
    pub surface: Option<SurfaceName>,
    #[arg(long, value_enum)]
    pub curve: Option<CurveName>,
    /// First shape parameter (helix radius, semi-axis, torus centre distance).
    #[arg(long)]
    pub a: Option<f64>,
    /// Second shape parameter (helix pitch, semi-axis).
    #[arg(long)]
    pub b: Option<f64>,
    /// Torus tube radius.
    #[arg(long)]
    pub r: Option<f64>,
    /// Ellipsoid for `--surface ellipsoid`, parameterized by (φ, λ) in radians.
    #[arg(long, default_value = "clarke1880")]
    pub ell: String,
    /// `u v` for a surface or `t` for a curve.
    #[arg(allow_negative_numbers = true, required = true)]
    pub params: Vec<String>,
}

fn need(v: Option<f64>, flag: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::usage(format!("--{flag} is required for this shape")))
}

fn surface_row(s: &dyn Surface<f64>, u: f64, v: f64) -> Result<Vec<Cell>, CliError> {
    let ff = fundamental_forms(s, u, v)?;
    let (k1, k2) = ff.principal();
    let mut row = vec![Cell::Sci(u, 12), Cell::Sci(v, 12)];
    row.extend([ff.e, ff.f, ff.g, ff.l, ff.m, ff.n, ff.gaussian(), ff.mean(), k1, k2].map(|x| Cell::Sci(x, 12)));
    Ok(row)
}

fn curve_row(c: &dyn Curve<f64>, t: f64) -> Result<Vec<Cell>, CliError> {
    let fr = frenet(c, t)?;
    let centre = fr.center_of_curvature(c.position(t));
    Ok([t, fr.curvature, fr.torsion, fr.speed, centre.x, centre.y, centre.z].map(|x| Cell::Sci(x, 12)).to_vec())
}

pub fn run(ctx: &Ctx, a: &CurvatureArgs) -> Result<Report, CliError> {
    let p: Vec<f64> = a.params.iter().map(|s| parse_num(s, "parameter")).collect::<Result<_, _>>()?;
    if let Some(name) = a.curve {
        let [t] = p[..] else { return Err(CliError::usage("a curve takes one parameter t")) };
        let row = match name {
            CurveName::Helix => curve_row(&Helix { a: need(a.a, "a")?, b: need(a.b, "b")? }, t)?,
            CurveName::CubicQuartic => curve_row(&CubicQuartic { a: a.a.unwrap_or(1.0) }, t)?,
            CurveName::Ellipse => curve_row(&Ellipse { a: need(a.a, "a")?, b: need(a.b, "b")? }, t)?,
        };
        let mut tab = Table::new("curve", &["t", "curvature", "torsion", "speed", "cx", "cy", "cz"]);
        tab.push(row);
        return Ok(Report::single(tab));
    }
    let [u, v] = p[..] else { return Err(CliError::usage("a surface takes two parameters u v")) };
    let row = match a.surface.expect("clap enforces --surface or --curve") {
        SurfaceName::Enneper => surface_row(&Enneper, u, v)?,
        SurfaceName::QuadraticPatch => surface_row(&QuadraticPatch, u, v)?,
        SurfaceName::Spheroid => surface_row(&Spheroid { a: need(a.a, "a")?, b: need(a.b, "b")? }, u, v)?,
        SurfaceName::Tractroid => surface_row(&Tractroid, u, v)?,
        SurfaceName::HyperbolicTractroid => surface_row(&HyperbolicTractroid, u, v)?,
        SurfaceName::Torus => surface_row(&Torus { a: need(a.a, "a")?, r: need(a.r, "r")? }, u, v)?,
        SurfaceName::Ellipsoid => surface_row(&EllipsoidSurface { ellipsoid: ctx.ellipsoid(&a.ell)? }, u, v)?,
        SurfaceName::CubicRevolution => surface_row(&CubicRevolution, u, v)?,
    };
    let mut tab = Table::new("surface", &["u", "v", "e", "f", "g", "l", "m", "n", "gaussian", "mean", "k1", "k2"]);
    tab.push(row);
    Ok(Report::single(tab))
}
