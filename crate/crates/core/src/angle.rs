//! Angles, units and sexagesimal notation.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{GeoError, Result};
use crate::scalar::{lit, Real};

/// Plane angle stored in radians.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Angle<T> {
    rad: T,
}

/// Units an angle can be read or written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AngleUnit {
    Rad,
    Deg,
    /// Grade (gon), 400 per turn.
    Gr,
    /// Decimilligrade, 1e-4 gr.
    Dmgr,
    /// Hours of time, 24 per turn.
    Hours,
}

impl AngleUnit {
    /// Size of one unit in radians.
    pub fn radians_per_unit<T: Real>(self) -> T {
        let pi = T::PI();
        match self {
            AngleUnit::Rad => T::one(),
            AngleUnit::Deg => pi / lit(180.0),
            AngleUnit::Gr => pi / lit(200.0),
            AngleUnit::Dmgr => pi / lit(2_000_000.0),
            AngleUnit::Hours => pi / lit(12.0),
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            AngleUnit::Rad => "rad",
            AngleUnit::Deg => "deg",
            AngleUnit::Gr => "gr",
            AngleUnit::Dmgr => "dmgr",
            AngleUnit::Hours => "h",
        }
    }
}

impl FromStr for AngleUnit {
    type Err = GeoError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rad" | "radian" | "radians" => Ok(AngleUnit::Rad),
            "deg" | "degree" | "degrees" | "°" => Ok(AngleUnit::Deg),
            "gr" | "gon" | "grad" | "grade" | "g" => Ok(AngleUnit::Gr),
            "dmgr" => Ok(AngleUnit::Dmgr),
            "h" | "hour" | "hours" => Ok(AngleUnit::Hours),
            other => Err(GeoError::Parse(format!("unknown angle unit `{other}`"))),
        }
    }
}

impl fmt::Display for AngleUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.suffix())
    }
}

impl<T: Real> Angle<T> {
    pub fn from_radians(rad: T) -> Self {
        Angle { rad }
    }

    pub fn from_degrees(deg: T) -> Self {
        Self::from_unit(deg, AngleUnit::Deg)
    }

    pub fn from_grads(gr: T) -> Self {
        Self::from_unit(gr, AngleUnit::Gr)
    }

    pub fn from_dmgr(dmgr: T) -> Self {
        Self::from_unit(dmgr, AngleUnit::Dmgr)
    }

    pub fn from_hours(h: T) -> Self {
        Self::from_unit(h, AngleUnit::Hours)
    }

    /// Degrees, minutes and seconds; the sign of the first non-zero field applies.
    pub fn from_dms(d: T, m: T, s: T) -> Self {
        let neg = d < T::zero() || (d == T::zero() && (m < T::zero() || (m == T::zero() && s < T::zero())));
        let v = d.abs() + m.abs() / lit(60.0) + s.abs() / lit(3600.0);
        Self::from_degrees(if neg { -v } else { v })
    }

    pub fn from_unit(value: T, unit: AngleUnit) -> Self {
        Angle { rad: value * unit.radians_per_unit::<T>() }
    }

    #[must_use]
    pub fn radians(self) -> T {
        self.rad
    }

    #[must_use]
    pub fn degrees(self) -> T {
        self.to_unit(AngleUnit::Deg)
    }

    #[must_use]
    pub fn grads(self) -> T {
        self.to_unit(AngleUnit::Gr)
    }

    #[must_use]
    pub fn dmgr(self) -> T {
        self.to_unit(AngleUnit::Dmgr)
    }

    #[must_use]
    pub fn hours(self) -> T {
        self.to_unit(AngleUnit::Hours)
    }

    #[must_use]
    pub fn to_unit(self, unit: AngleUnit) -> T {
        self.rad / unit.radians_per_unit::<T>()
    }

    pub fn sin(self) -> T {
        self.rad.sin()
    }

    pub fn cos(self) -> T {
        self.rad.cos()
    }

    pub fn tan(self) -> T {
        self.rad.tan()
    }

    pub fn abs(self) -> Self {
        Angle { rad: self.rad.abs() }
    }

    /// Reduced to `[0, 2π)`.
    #[must_use]
    pub fn normalized(self) -> Self {
        let tau = T::TAU();
        let mut r = self.rad % tau;
        if r < T::zero() {
            r = r + tau;
        }
        if r >= tau {
            r = r - tau;
        }
        Angle { rad: r }
    }

    /// Reduced to `(-π, π]`.
    #[must_use]
    pub fn signed(self) -> Self {
        let r = self.normalized().rad;
        if r > T::PI() {
            Angle { rad: r - T::TAU() }
        } else {
            Angle { rad: r }
        }
    }

    pub fn cast<U: Real>(self) -> Angle<U> {
        Angle { rad: U::from_f64(crate::scalar::to_f64(self.rad)).unwrap() }
    }
}

impl Angle<f64> {
    /// Parses an angle such as `40.9193gr`, `36d54m`, `36°54'`, `6h37m19.72s`,
    /// `-13.7dmgr` or `0.5rad`. A bare number is read in `default_unit`.
    pub fn parse(s: &str, default_unit: AngleUnit) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(GeoError::Parse("empty angle".into()));
        }
        let (neg, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let parts = split_fields(body)?;
        let a = match parts.as_slice() {
            [(v, None)] => Angle::from_unit(*v, default_unit),
            [(v, Some(u))] => Angle::from_unit(*v, unit_of_suffix(u)?),
            _ => {
                // Sexagesimal: degrees or hours, then minutes, then seconds.
                let head = parts[0].1.as_deref().unwrap_or("");
                let unit = match head {
                    "h" => AngleUnit::Hours,
                    "d" | "°" | "deg" => AngleUnit::Deg,
                    _ => return Err(GeoError::Parse(format!("cannot read angle `{s}`"))),
                };
                let mut total = parts[0].0;
                let mut seen_min = false;
                let mut seen_sec = false;
                for (v, u) in &parts[1..] {
                    match u.as_deref() {
                        Some("m" | "mn" | "'" | "′") if !seen_min && !seen_sec => {
                            seen_min = true;
                            total += v / 60.0;
                        }
                        Some("s" | "\"" | "″" | "''") | None if !seen_sec => {
                            seen_sec = true;
                            total += v / 3600.0;
                        }
                        _ => return Err(GeoError::Parse(format!("cannot read angle `{s}`"))),
                    }
                }
                Angle::from_unit(total, unit)
            }
        };
        Ok(if neg { -a } else { a })
    }

    /// Writes the value in `unit` with the unit suffix, using enough digits to round-trip.
    pub fn format_unit(self, unit: AngleUnit) -> String {
        format!("{}{}", self.to_unit(unit), unit.suffix())
    }

    /// Sexagesimal degrees, e.g. `36d54m00.000s`.
    pub fn format_dms(self, sec_decimals: usize) -> String {
        let neg = self.rad < 0.0;
        let scale = 10f64.powi(sec_decimals as i32);
        let total = (self.degrees().abs() * 3600.0 * scale).round();
        let units = total as u64;
        let per_deg = (3600.0 * scale) as u64;
        let per_min = (60.0 * scale) as u64;
        let d = units / per_deg;
        let m = (units % per_deg) / per_min;
        let s = (units % per_min) as f64 / scale;
        let width = if sec_decimals > 0 { sec_decimals + 3 } else { 2 };
        format!("{}{}d{:02}m{:0width$.prec$}s", if neg { "-" } else { "" }, d, m, s, width = width, prec = sec_decimals)
    }
}

fn unit_of_suffix(u: &str) -> Result<AngleUnit> {
    match u {
        "d" | "°" => Ok(AngleUnit::Deg),
        other => other.parse(),
    }
}

/// Splits `12.5gr` or `6h37m19.72s` into (number, suffix) pairs.
fn split_fields(s: &str) -> Result<Vec<(f64, Option<String>)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let start = i;
        while i < chars.len() {
            let c = chars[i];
            let exp_sign = (c == '-' || c == '+') && i > start && matches!(chars[i - 1], 'e' | 'E');
            let exp = (c == 'e' || c == 'E')
                && i > start
                && chars.get(i + 1).is_some_and(|n| n.is_ascii_digit() || *n == '-' || *n == '+');
            if c.is_ascii_digit() || c == '.' || exp || exp_sign {
                i += 1;
            } else {
                break;
            }
        }
        if start == i {
            return Err(GeoError::Parse(format!("expected a number in `{s}`")));
        }
        let num: String = chars[start..i].iter().collect();
        let v: f64 = num.parse().map_err(|_| GeoError::Parse(format!("bad number `{num}`")))?;
        let ustart = i;
        while i < chars.len() && !(chars[i].is_ascii_digit() || chars[i] == '.') {
            i += 1;
        }
        let suffix: String = chars[ustart..i].iter().collect::<String>().trim().to_string();
        out.push((v, if suffix.is_empty() { None } else { Some(suffix) }));
    }
    Ok(out)
}

impl<T: Real> Add for Angle<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Angle { rad: self.rad + o.rad }
    }
}

impl<T: Real> Sub for Angle<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Angle { rad: self.rad - o.rad }
    }
}

impl<T: Real> Neg for Angle<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Angle { rad: -self.rad }
    }
}

impl<T: Real> Mul<T> for Angle<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Angle { rad: self.rad * k }
    }
}

impl<T: Real> Div<T> for Angle<T> {
    type Output = Self;
    fn div(self, k: T) -> Self {
        Angle { rad: self.rad / k }
    }
}

/// Time of day or right ascension held exactly in centiseconds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Hms {
    centis: i64,
}

const CENTIS_PER_HOUR: i64 = 360_000;
const CENTIS_PER_DAY: i64 = 24 * CENTIS_PER_HOUR;

impl Hms {
    pub fn new(h: i64, m: i64, s_centis: i64) -> Self {
        Hms { centis: h * CENTIS_PER_HOUR + m * 6000 + s_centis }
    }

    pub fn from_centis(centis: i64) -> Self {
        Hms { centis }
    }

    /// Nearest centisecond to `hours`.
    pub fn from_hours(hours: f64) -> Self {
        Hms { centis: (hours * CENTIS_PER_HOUR as f64).round() as i64 }
    }

    pub fn centis(self) -> i64 {
        self.centis
    }

    pub fn hours(self) -> f64 {
        self.centis as f64 / CENTIS_PER_HOUR as f64
    }

    pub fn to_angle(self) -> Angle<f64> {
        Angle::from_hours(self.hours())
    }

    /// Reduced to `[0h, 24h)`.
    pub fn wrapped(self) -> Self {
        Hms { centis: self.centis.rem_euclid(CENTIS_PER_DAY) }
    }
}

impl std::ops::Sub for Hms {
    type Output = Hms;
    fn sub(self, o: Hms) -> Hms {
        Hms { centis: self.centis - o.centis }
    }
}

impl std::ops::Add for Hms {
    type Output = Hms;
    fn add(self, o: Hms) -> Hms {
        Hms { centis: self.centis + o.centis }
    }
}

impl FromStr for Hms {
    type Err = GeoError;

    /// Reads `6h37m19.72s`, `20h35mn28s` or `0h40m`; at most two second decimals.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || GeoError::Parse(format!("cannot read time `{s}`"));
        let t = s.trim();
        let (neg, t) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (h, rest) = t.split_once('h').ok_or_else(bad)?;
        let h: i64 = h.trim().parse().map_err(|_| bad())?;
        let mut m = 0i64;
        let mut rest = rest.trim();
        if let Some(idx) = rest.find('m') {
            m = rest[..idx].trim().parse().map_err(|_| bad())?;
            rest = rest[idx + 1..].trim_start_matches('n').trim();
        }
        let mut centis = 0i64;
        let sec = rest.trim_end_matches('s').trim();
        if !sec.is_empty() {
            let (whole, frac) = sec.split_once('.').unwrap_or((sec, ""));
            if frac.len() > 2 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let w: i64 = whole.parse().map_err(|_| bad())?;
            let f: i64 = if frac.is_empty() { 0 } else { format!("{frac:0<2}").parse().map_err(|_| bad())? };
            centis = w * 100 + f;
        }
        if m >= 60 || centis >= 6000 || m < 0 || h < 0 {
            return Err(bad());
        }
        let v = Hms::new(h, m, centis);
        Ok(if neg { Hms { centis: -v.centis } } else { v })
    }
}

impl fmt::Display for Hms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.centis.abs();
        let sign = if self.centis < 0 { "-" } else { "" };
        let h = c / CENTIS_PER_HOUR;
        let m = (c % CENTIS_PER_HOUR) / 6000;
        let s = c % 6000;
        write!(f, "{sign}{h}h{m:02}m{:02}.{:02}s", s / 100, s % 100)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_round_trips() {
        let a = Angle::from_grads(40.9193f64);
        assert!((a.degrees() - 36.82737).abs() < 1e-12);
        assert!((Angle::from_dmgr(-13.7f64).grads() + 0.00137).abs() < 1e-15);
        assert!((Angle::from_hours(6.0f64).degrees() - 90.0).abs() < 1e-12);
    }

    #[test]
    fn parses_common_notations() {
        let gr = AngleUnit::Gr;
        assert!((Angle::parse("40.9193gr", gr).unwrap().grads() - 40.9193).abs() < 1e-12);
        assert!((Angle::parse("40.9193", gr).unwrap().grads() - 40.9193).abs() < 1e-12);
        assert!((Angle::parse("36d54m", gr).unwrap().degrees() - 36.9).abs() < 1e-12);
        assert!((Angle::parse("36°54'", gr).unwrap().degrees() - 36.9).abs() < 1e-12);
        assert!((Angle::parse("-13.7dmgr", gr).unwrap().dmgr() + 13.7).abs() < 1e-12);
        assert!((Angle::parse("1e-3rad", gr).unwrap().radians() - 1e-3).abs() < 1e-18);
        let h = Angle::parse("6h37m19.72s", gr).unwrap();
        assert!((h.hours() - (6.0 + 37.0 / 60.0 + 19.72 / 3600.0)).abs() < 1e-13);
        assert!(Angle::parse("abc", gr).is_err());
        assert!(Angle::parse("12m3d", gr).is_err());
    }

    #[test]
    fn format_parse_round_trip() {
        for unit in [AngleUnit::Rad, AngleUnit::Deg, AngleUnit::Gr, AngleUnit::Dmgr, AngleUnit::Hours] {
            for x in [0.0, 1.234_567_890_123, -2.5, 1e-9] {
                let a = Angle::from_radians(x);
                let back = Angle::parse(&a.format_unit(unit), AngleUnit::Rad).unwrap();
                assert!((back.radians() - x).abs() < 1e-12, "{unit} {x}");
            }
        }
    }

    #[test]
    fn dms_formatting() {
        assert_eq!(Angle::from_dms(37.0, 54.0, 0.0).format_dms(0), "37d54m00s");
        assert_eq!(Angle::from_dms(-0.0, -30.0, 0.0).format_dms(1), "-0d30m00.0s");
    }

    #[test]
    fn normalization() {
        let a = Angle::from_radians(-0.5).normalized();
        assert!((a.radians() - (std::f64::consts::TAU - 0.5)).abs() < 1e-15);
        assert!((Angle::from_radians(4.0).signed().radians() - (4.0 - std::f64::consts::TAU)).abs() < 1e-15);
    }

    #[test]
    fn hms_is_exact() {
        let lst: Hms = "6h37m19.72s".parse().unwrap();
        let ra: Hms = "2h13m52.90s".parse().unwrap();
        assert_eq!((lst - ra).to_string(), "4h23m26.82s");
        assert_eq!("20h35mn28s".parse::<Hms>().unwrap().to_string(), "20h35m28.00s");
        assert_eq!("0h40m".parse::<Hms>().unwrap().centis(), 40 * 6000);
        assert!("6h61m".parse::<Hms>().is_err());
        assert!("6h1m2.345s".parse::<Hms>().is_err());
        assert_eq!(Hms::new(25, 0, 0).wrapped(), Hms::new(1, 0, 0));
    }
}
