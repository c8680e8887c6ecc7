//! Text formats for fields and surfaces.
//!
//! A surface file looks like
//!
//! ```text
//! field 7^1
//! ambient 3
//! family cubic
//! genus 1
//! 3; 3 0 0 0 : 1; 0 2 1 0 : 1; 0 0 1 2 : 6
//! ```
//!
//! Each generator line is `degree; exponents : coefficient; ...`. A
//! coefficient is either an integer (reduced into the prime field) or the
//! comma-separated base-`p` digits of an element, lowest first. Optional
//! `map` lines carry the forms of a plane parametrization in the same term
//! syntax. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{make_field, Elem, FiniteField};
use crate::poly::HomogPoly;
use crate::surface::{Family, Parametrization, Surface};

fn prime_power(q: u64) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut n = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        n += 1;
    }
    (x == 1).then_some((p as u32, n))
}

/// `p^n`, `p^n/m0,m1,...,1` (modulus low to high) or a bare prime power `q`.
pub fn parse_field_spec(spec: &str) -> Result<FiniteField> {
    let bad = || Error::InvalidField(format!("bad field spec {spec:?}"));
    let (head, modulus) = match spec.trim().split_once('/') {
        Some((h, m)) => (h, Some(m)),
        None => (spec.trim(), None),
    };
    let (p, n) = match head.split_once('^') {
        Some((p, n)) => (
            p.trim().parse().map_err(|_| bad())?,
            n.trim().parse().map_err(|_| bad())?,
        ),
        None => prime_power(head.parse().map_err(|_| bad())?).ok_or_else(bad)?,
    };
    let modulus: Option<Vec<u32>> = modulus
        .map(|m| {
            m.split(',')
                .map(|c| c.trim().parse().map_err(|_| bad()))
                .collect()
        })
        .transpose()?;
    make_field(p, n, modulus.as_deref())
}

fn parse_coeff(field: &FiniteField, s: &str) -> Result<Elem> {
    let s = s.trim();
    if s.contains(',') {
        let digits: Vec<u32> = s
            .split(',')
            .map(|d| {
                d.trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad digit in {s:?}")))
            })
            .collect::<Result<_>>()?;
        return field.from_coeffs(&digits);
    }
    let v: i64 = s
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad coefficient {s:?}")))?;
    Ok(field.from_int(v))
}

fn parse_form(field: &FiniteField, nvars: usize, src: &str) -> Result<HomogPoly> {
    let mut parts = src.split(';');
    let degree: u32 = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument("missing degree".into()))?;
    let mut terms = Vec::new();
    for t in parts.map(str::trim).filter(|t| !t.is_empty()) {
        let (exps, c) = t
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("term {t:?} lacks ':'")))?;
        let exps: Vec<u32> = exps
            .split_whitespace()
            .map(|e| {
                e.parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad exponent {e:?}")))
            })
            .collect::<Result<_>>()?;
        terms.push((exps, parse_coeff(field, c)?));
    }
    HomogPoly::from_terms(field, nvars, degree, terms)
}

pub fn parse_surface(src: &str) -> Result<Surface> {
    let mut field = None;
    let mut ambient = None;
    let mut family = Family::Custom;
    let mut genus = None;
    let mut gens = Vec::new();
    let mut maps = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: Error| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        };
        let need_field = || Error::Parse {
            line: i + 1,
            msg: "field and ambient must come first".into(),
        };
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match key {
            "field" => field = Some(parse_field_spec(rest).map_err(at)?),
            "ambient" => {
                ambient = Some(rest.trim().parse::<usize>().map_err(|_| {
                    at(Error::InvalidArgument(format!(
                        "bad ambient dimension {rest:?}"
                    )))
                })?)
            }
            "family" => family = rest.trim().parse().map_err(at)?,
            "genus" => {
                genus = Some(
                    rest.trim()
                        .parse::<u64>()
                        .map_err(|_| at(Error::InvalidArgument(format!("bad genus {rest:?}"))))?,
                )
            }
            "map" => {
                let f = field.as_ref().ok_or_else(need_field)?;
                maps.push(parse_form(f, 3, rest).map_err(at)?);
            }
            _ if key.starts_with(|c: char| c.is_ascii_digit()) => {
                let (f, r) = (
                    field.as_ref().ok_or_else(need_field)?,
                    ambient.ok_or_else(need_field)?,
                );
                gens.push(parse_form(f, r + 1, line).map_err(at)?);
            }
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("unknown directive {key:?}"),
                })
            }
        }
    }
    let field = field.ok_or(Error::Parse {
        line: 0,
        msg: "missing field line".into(),
    })?;
    let ambient = ambient.ok_or(Error::Parse {
        line: 0,
        msg: "missing ambient line".into(),
    })?;
    let mut s = if ambient == 2 && gens.is_empty() {
        Surface::plane(&field)
    } else {
        Surface::new(&field, ambient, gens, family)?
    };
    if let Some(g) = genus {
        s = s.with_sectional_genus(g);
    }
    if !maps.is_empty() {
        s = s.with_parametrization(Parametrization {
            domain: 2,
            forms: maps,
        })?;
    }
    Ok(s)
}

fn coeff_string(field: &FiniteField, c: Elem) -> String {
    if field.degree() == 1 {
        c.0.to_string()
    } else {
        field
            .coeffs(c)
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn form_line(f: &HomogPoly) -> String {
    let mut s = f.degree().to_string();
    for &(m, c) in f.terms() {
        let exps: Vec<String> = m.exponents(f.nvars()).iter().map(u32::to_string).collect();
        write!(s, "; {} : {}", exps.join(" "), coeff_string(f.field(), c)).unwrap();
    }
    s
}

/// Canonical text form; [`parse_surface`] reads it back.
pub fn write_surface(s: &Surface) -> String {
    let mut out = format!(
        "field {}\nambient {}\nfamily {}\n",
        s.field().spec_string(),
        s.ambient(),
        s.family()
    );
    if let Some(g) = s.sectional_genus() {
        writeln!(out, "genus {g}").unwrap();
    }
    for g in s.generators() {
        writeln!(out, "{}", form_line(g)).unwrap();
    }
    if let Some(p) = s.parametrization() {
        for f in &p.forms {
            writeln!(out, "map {}", form_line(f)).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{default_orbit, del_pezzo4_fixture, del_pezzo6};

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("7^1").unwrap().order(), 7);
        assert_eq!(parse_field_spec("9").unwrap().degree(), 2);
        let f = parse_field_spec("2^3/1,1,0,1").unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        assert_eq!(parse_field_spec(&f.spec_string()).unwrap(), f);
        assert!(parse_field_spec("6").is_err());
        assert!(parse_field_spec("2^3/1,0,0,1").is_err());
    }

    #[test]
    fn weierstrass_from_text() {
        let src = "field 7^1\nambient 3\n# y^2 z = x^3 + 3 z^3 as a cone\n3; 0 2 1 0 : 1; 3 0 0 0 : -1; 0 0 3 0 : -3\n";
        let s = parse_surface(src).unwrap();
        assert_eq!(s.degree(), Some(3));
        let back = parse_surface(&write_surface(&s)).unwrap();
        assert_eq!(back.generators(), s.generators());
    }

    #[test]
    fn round_trips() {
        let dp4 = del_pezzo4_fixture().unwrap();
        let t = write_surface(&dp4);
        let back = parse_surface(&t).unwrap();
        assert_eq!(back.generators(), dp4.generators());
        assert_eq!(back.family(), Family::DelPezzo4);
        assert_eq!(write_surface(&back), t);

        let f = FiniteField::new(2, 3).unwrap();
        let dp6 = del_pezzo6(&default_orbit(&f).unwrap()).unwrap();
        let back = parse_surface(&write_surface(&dp6)).unwrap();
        assert_eq!(
            back.rational_points(u128::MAX).unwrap(),
            dp6.rational_points(u128::MAX).unwrap()
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_surface("field 7^1\nambient 3\n3; 1 1 1 : 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(matches!(
            parse_surface("ambient 3\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_surface("field 7\nambient 3\nbogus\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
