use anyhow::{bail, Context, Result};
use surfcode::families::{
    cayley_salmon_c12, default_orbit, del_pezzo4_fixture, del_pezzo6, random_form,
    sample_cayley_salmon_input, sample_orbit, shioda_surface, van_luijk_surface, FrobeniusOrbit,
};
use surfcode::format::{parse_field_spec, parse_surface};
use surfcode::seed::substream_rng;
use surfcode::{FiniteField, HomogPoly, Surface};

use crate::config::Common;
use crate::InputError;

pub struct Loaded {
    pub surface: Surface,
    /// Set for degree-6 del Pezzo surfaces.
    pub orbit: Option<FrobeniusOrbit>,
    pub reference: String,
}

pub fn field(c: &Common) -> Result<FiniteField> {
    let spec = c
        .field
        .as_deref()
        .ok_or_else(|| InputError("--field is required".into()))?;
    Ok(parse_field_spec(spec)?)
}

pub fn load(c: &Common) -> Result<Loaded> {
    if let Some(path) = &c.surface {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError(format!("reading {}: {e}", path.display())))?;
        let surface = parse_surface(&text).with_context(|| format!("in {}", path.display()))?;
        if let Some(spec) = &c.field {
            if parse_field_spec(spec)? != *surface.field() {
                bail!(InputError(format!("{} is not over {spec}", path.display())));
            }
        }
        return Ok(Loaded {
            surface,
            orbit: None,
            reference: path.display().to_string(),
        });
    }
    let family = c
        .family
        .as_deref()
        .ok_or_else(|| InputError("one of --surface or --family is required".into()))?;
    let mut orbit = None;
    let seed = c.seed.unwrap_or(0);
    let surface = match family {
        "del-pezzo-4" => {
            let s = del_pezzo4_fixture()?;
            if let Some(spec) = &c.field {
                if parse_field_spec(spec)? != *s.field() {
                    bail!(InputError(
                        "the degree-4 fixture is defined over GF(7)".into()
                    ));
                }
            }
            s
        }
        "plane" => Surface::plane(&field(c)?),
        "del-pezzo-6" => {
            let f = field(c)?;
            let o = match c.seed {
                Some(s) => sample_orbit(&f, s)?,
                None => default_orbit(&f)?,
            };
            let s = del_pezzo6(&o)?;
            orbit = Some(o);
            s
        }
        "shioda" => shioda_surface(c.shioda_degree.unwrap_or(4), &field(c)?)?,
        "van-luijk" => {
            let f = field(c)?;
            let h = match c.seed {
                Some(s) => random_form(&f, 4, 4, &mut substream_rng(s, 0)),
                None => HomogPoly::zero(&f, 4, 4),
            };
            van_luijk_surface(&f, &h)?
        }
        "cayley-salmon" => {
            let f = field(c)?;
            let (l, m) = sample_cayley_salmon_input(&f, &mut substream_rng(seed, 0))?;
            cayley_salmon_c12(&f, &l, &m)?
        }
        "random-cubic" => {
            let f = field(c)?;
            let g = random_form(&f, 4, 3, &mut substream_rng(seed, 0));
            Surface::hypersurface(g, surfcode::Family::Cubic)?
        }
        other => bail!(InputError(format!("unknown family {other:?}"))),
    };
    let mut reference = format!("{family} over GF({})", surface.field().order());
    if let Some(s) = c.seed {
        reference.push_str(&format!(" seed {s}"));
    }
    Ok(Loaded {
        surface,
        orbit,
        reference,
    })
}
