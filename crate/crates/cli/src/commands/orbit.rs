use clap::{Args, Subcommand};
use geotopo::orbits::{
    anomaly_convert, apsidal_ratio, kepler_solve, orbit_from_apsides, AnomalyKind, Orbit, ASTRONOMICAL_UNIT, GM_EARTH,
    GRAVITATIONAL_CONSTANT, SUN_MASS,
};

use crate::output::{Cell, Report, Table};
use crate::{CliError, Ctx};

const JULIAN_YEAR_S: f64 = 365.25 * 86_400.0;

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// Gravitational parameter of the central body, m³/s² (Earth, or G·M☉ for `comet`).
    #[arg(long, global = true)]
    pub gm: Option<f64>,
    /// Astronomical unit, metres.
    #[arg(long, global = true, default_value_t = ASTRONOMICAL_UNIT)]
    pub au: f64,
    #[command(subcommand)]
    pub cmd: OrbitCmd,
}

#[derive(Debug, Subcommand)]
pub enum OrbitCmd {
    /// Satellite orbit from apogee and perigee altitudes.
    Elements {
        #[arg(long)]
        apogee_alt: f64,
        #[arg(long)]
        perigee_alt: f64,
        /// Radius of the central body, metres.
        #[arg(long, default_value_t = 6_371_000.0)]
        radius: f64,
        /// Altitude at which to report true anomaly and time since perigee.
        #[arg(long)]
        at_alt: Option<f64>,
    },
    /// Eccentric and true anomaly from the mean anomaly.
    Kepler {
        #[arg(long, allow_hyphen_values = true)]
        mean: String,
        #[arg(long)]
        e: f64,
    },
    /// Converts between true, eccentric and mean anomaly.
    Anomaly {
        #[arg(long)]
        from: AnomalyKind,
        #[arg(long)]
        to: AnomalyKind,
        #[arg(long)]
        e: f64,
        #[arg(allow_negative_numbers = true)]
        value: String,
    },
    /// Heliocentric orbit from perihelion and aphelion distances in astronomical units.
    Comet {
        #[arg(long)]
        perihelion_au: f64,
        #[arg(long)]
        aphelion_au: f64,
    },
}

pub fn run(ctx: &Ctx, a: &OrbitArgs) -> Result<Report, CliError> {
    let t = match &a.cmd {
        OrbitCmd::Elements { apogee_alt, perigee_alt, radius, at_alt } => {
            let o = orbit_from_apsides(*apogee_alt, *perigee_alt, *radius, a.gm.unwrap_or(GM_EARTH))?;
            let mut t = Table::new(
                "orbit",
                &["a_m", "e", "period_s", "v_perigee_ms", "v_apogee_ms", "nu", "t_since_perigee_s", "unit"],
            );
            let (nu, ts) = match at_alt {
                Some(h) => {
                    let ecc = o.eccentric_anomaly_at_radius(radius + h)?;
                    let nu = anomaly_convert(AnomalyKind::Eccentric, AnomalyKind::True, ecc, o.e)?;
                    (ctx.angle_cell(nu), Cell::Num(o.time_since_perigee(nu), 6))
                }
                None => (Cell::Empty, Cell::Empty),
            };
            t.push(vec![
                Cell::Num(o.a, 4),
                Cell::Num(o.e, 15),
                Cell::Num(o.period(), 6),
                Cell::Num(o.vis_viva(o.perigee())?, 6),
                Cell::Num(o.vis_viva(o.apogee())?, 6),
                nu,
                ts,
                ctx.unit_cell(),
            ]);
            t
        }
        OrbitCmd::Kepler { mean, e } => {
            let m = ctx.angle(mean)?;
            let ecc = kepler_solve(m, *e)?;
            let nu = anomaly_convert(AnomalyKind::Eccentric, AnomalyKind::True, ecc, *e)?;
            let mut t = Table::new("anomalies", &["mean", "eccentric", "true", "unit"]);
            t.push(vec![ctx.angle_cell(m), ctx.angle_cell(ecc), ctx.angle_cell(nu), ctx.unit_cell()]);
            t
        }
        OrbitCmd::Anomaly { from, to, e, value } => {
            let out = anomaly_convert(*from, *to, ctx.angle(value)?, *e)?;
            let mut t = Table::new("anomaly", &["from", "to", "value", "unit"]);
            t.push(vec![Cell::text(from.to_string()), Cell::text(to.to_string()), ctx.angle_cell(out), ctx.unit_cell()]);
            t
        }
        OrbitCmd::Comet { perihelion_au, aphelion_au } => {
            let gm = a.gm.unwrap_or(GRAVITATIONAL_CONSTANT * SUN_MASS);
            let o = Orbit::from_apsidal_radii(perihelion_au * a.au, aphelion_au * a.au, gm)?;
            let mut t =
                Table::new("orbit", &["a_m", "e", "speed_ratio", "areal_m2s", "period_yr", "v_perihelion_ms", "v_aphelion_ms"]);
            t.push(vec![
                Cell::Sci(o.a, 12),
                Cell::Num(o.e, 15),
                Cell::Num(apsidal_ratio(o.e)?, 15),
                Cell::Sci(o.areal_constant(), 12),
                Cell::Num(o.period() / JULIAN_YEAR_S, 9),
                Cell::Num(o.vis_viva(o.perigee())?, 4),
                Cell::Num(o.vis_viva(o.apogee())?, 4),
            ]);
            t
        }
    };
    Ok(Report::single(t))
}
