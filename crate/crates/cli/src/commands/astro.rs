use clap::{Args, Subcommand};
use geotopo::angle::{Angle, Hms};
use geotopo::sphastro::{
    culmination_altitudes, hour_angle_from_hsl, hour_angle_of_set, rise_set_sidereal, sidereal_chain, star_azimuth,
    tu_of_sidereal, zenith_distance,
};

use crate::output::{Cell, Report, Table};
use crate::{CliError, Ctx};

#[derive(Debug, Args)]
pub struct AstroArgs {
    #[command(subcommand)]
    pub cmd: AstroCmd,
}

#[derive(Debug, Subcommand)]
pub enum AstroCmd {
    /// `AH = HSL − α` on exact centisecond clocks.
    HourAngle {
        #[arg(long)]
        hsl: String,
        #[arg(long)]
        alpha: String,
    },
    /// Azimuth (from North, clockwise) and zenith distance of a star.
    Position {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        /// Hour angle, e.g. `4h23m26.82s` or an angle.
        #[arg(long, allow_hyphen_values = true)]
        ah: String,
    },
    /// Local sidereal time and hour angle after `tu` hours of universal time.
    Sidereal {
        /// Greenwich sidereal time at 0h TU.
        #[arg(long)]
        hsg0: String,
        /// Elapsed universal time, hours or `21h00m`.
        #[arg(long)]
        tu: String,
        /// Longitude east in time, e.g. `0h20m57s`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Right ascension.
        #[arg(long)]
        alpha: String,
        /// Do not scale the elapsed time to sidereal.
        #[arg(long)]
        naive: bool,
        #[arg(long, allow_hyphen_values = true, requires = "delta")]
        phi: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "phi")]
        delta: Option<String>,
    },
    /// Sidereal (and universal) times of rising and setting.
    RiseSet {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, requires = "lambda")]
        hsg0: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "hsg0")]
        lambda: Option<String>,
        #[arg(long)]
        naive: bool,
    },
    /// Altitudes at upper and lower culmination.
    Culmination {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
}

fn hms(s: &str) -> Result<Hms, CliError> {
    s.parse::<Hms>().map_err(|e| CliError::usage(e.to_string()))
}

/// `6h37m19.72s` or decimal hours.
fn hours(s: &str) -> Result<f64, CliError> {
    if s.contains('h') {
        Ok(hms(s)?.hours())
    } else {
        crate::parse_num(s, "hours")
    }
}

fn hour_cells(h: f64) -> [Cell; 2] {
    [Cell::Num(h, 9), Cell::Text(Hms::from_hours(h).to_string())]
}

fn horizon_cells(ctx: &Ctx, phi: Angle<f64>, delta: Angle<f64>, ah: Angle<f64>) -> Result<[Cell; 2], CliError> {
    Ok([ctx.angle_cell(star_azimuth(phi, delta, ah)?), ctx.angle_cell(zenith_distance(phi, delta, ah))])
}

pub fn run(ctx: &Ctx, a: &AstroArgs) -> Result<Report, CliError> {
    let t = match &a.cmd {
        AstroCmd::HourAngle { hsl, alpha } => {
            let ah = hour_angle_from_hsl(hms(hsl)?, hms(alpha)?);
            let mut t = Table::new("hour_angle", &["ah_h", "ah"]);
            t.push(vec![Cell::Num(ah.hours(), 9), Cell::Text(ah.to_string())]);
            t
        }
        AstroCmd::Position { phi, delta, ah } => {
            let (phi, delta, ah) = (ctx.angle(phi)?, ctx.angle(delta)?, ctx.angle(ah)?);
            let mut t = Table::new("position", &["azimuth", "zenith_distance", "unit"]);
            let [az, z] = horizon_cells(ctx, phi, delta, ah)?;
            t.push(vec![az, z, ctx.unit_cell()]);
            t
        }
        AstroCmd::Sidereal { hsg0, tu, lambda, alpha, naive, phi, delta } => {
            let r = sidereal_chain(hours(hsg0)?, hours(tu)?, hours(lambda)?, hours(alpha)?, *naive);
            let mut t = Table::new("sidereal", &["hsl_h", "hsl", "ah_h", "ah", "azimuth", "zenith_distance", "unit"]);
            let [hsl_h, hsl] = hour_cells(r.hsl);
            let [ah_h, ah] = hour_cells(r.ah);
            let [az, z] = match (phi, delta) {
                (Some(p), Some(d)) => horizon_cells(ctx, ctx.angle(p)?, ctx.angle(d)?, r.hour_angle())?,
                _ => [Cell::Empty, Cell::Empty],
            };
            t.push(vec![hsl_h, hsl, ah_h, ah, az, z, ctx.unit_cell()]);
            t
        }
        AstroCmd::RiseSet { phi, delta, alpha, hsg0, lambda, naive } => {
            let (phi, delta) = (ctx.angle(phi)?, ctx.angle(delta)?);
            let ahc = hour_angle_of_set(phi, delta)?.hours();
            let (rise, set) = rise_set_sidereal(phi, delta, hours(alpha)?)?;
            let tu = |s: f64| -> Result<Cell, CliError> {
                Ok(match (hsg0, lambda) {
                    (Some(g), Some(l)) => Cell::Num(tu_of_sidereal(s, hours(g)?, hours(l)?, *naive), 9),
                    _ => Cell::Empty,
                })
            };
            let mut t = Table::new("rise_set", &["ah_set_h", "hsl_rise_h", "hsl_set_h", "tu_rise_h", "tu_set_h"]);
            t.push(vec![Cell::Num(ahc, 9), Cell::Num(rise, 9), Cell::Num(set, 9), tu(rise)?, tu(set)?]);
            t
        }
        AstroCmd::Culmination { phi, delta } => {
            let c = culmination_altitudes(ctx.angle(phi)?, ctx.angle(delta)?)?;
            let mut t = Table::new("culmination", &["upper", "lower", "never_sets", "never_rises", "unit"]);
            t.push(vec![
                ctx.angle_cell(c.upper),
                ctx.angle_cell(c.lower),
                Cell::text(c.never_sets.to_string()),
                Cell::text(c.never_rises.to_string()),
                ctx.unit_cell(),
            ]);
            t
        }
    };
    Ok(Report::single(t))
}
