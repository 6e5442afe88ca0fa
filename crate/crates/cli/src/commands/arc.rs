use clap::Args;
use geotopo::geocore::MeridianArc;
use geotopo::GeoError;

use crate::output::{Cell, Report, Table};
use crate::{parse_num, CliError, Ctx};

#[derive(Debug, Args)]
pub struct ArcArgs {
    #[arg(long, default_value = "grs")]
    pub ell: String,
    /// Latitude; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Vec<String>,
    /// Arc length in metres to invert; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Vec<String>,
    /// Truncation tolerance of the series, metres.
    #[arg(long, default_value_t = 1e-3)]
    pub tolerance: f64,
}

pub fn run(ctx: &Ctx, a: &ArcArgs) -> Result<Report, CliError> {
    if a.phi.is_empty() && a.beta.is_empty() {
        return Err(CliError::usage("give --phi or --beta"));
    }
    let ell = ctx.ellipsoid(&a.ell)?;
    let arc = MeridianArc::with_tolerance(&ell, a.tolerance);
    let mut t = Table::new("meridian_arc", &["phi", "beta_m", "order", "unit"]);
    for p in &a.phi {
        let phi = ctx.angle(p)?;
        if phi.radians().abs() > std::f64::consts::FRAC_PI_2 {
            return Err(GeoError::OutOfRange { what: "latitude", value: phi.degrees() }.into());
        }
        t.push(vec![ctx.angle_cell(phi), Cell::Num(arc.arc(phi), 4), Cell::Int(arc.order() as i64), ctx.unit_cell()]);
    }
    for b in &a.beta {
        let beta = parse_num(b, "beta")?;
        let phi = arc.inverse(beta)?;
        t.push(vec![ctx.angle_cell(phi), Cell::Num(beta, 4), Cell::Int(arc.order() as i64), ctx.unit_cell()]);
    }
    Ok(Report::single(t))
}
