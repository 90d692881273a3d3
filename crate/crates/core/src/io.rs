//! File formats: PWI JSON and orbit CSV.
//!
//! PWI JSON:
//!
//! ```json
//! {"name": "...",
//!  "atoms": [{"halfplanes": [{"phi": 0.0, "anchor": [0.0, 0.0], "sense": "ge"}],
//!             "special_points": [[0.0, 0.0]]}],
//!  "maps": [{"theta": 0.0, "lambda": [1.0, 0.0]}]}
//! ```
//!
//! Orbit CSV has the header `n,re,im,atom,boundary_flag`, one row per stored
//! point, floats with 17 significant digits, one-based atoms and `0`/`1` flags.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iet::Itinerary;
use crate::isometry::Isometry;
use crate::pwi::{OrbitRecord, Pwi};
use crate::region::{ConvexRegion, HalfPlane, Sense};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HalfPlaneJson {
    pub phi: f64,
    pub anchor: Complex64,
    pub sense: Sense,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtomJson {
    pub halfplanes: Vec<HalfPlaneJson>,
    #[serde(default)]
    pub special_points: Vec<Complex64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PwiJson {
    #[serde(default)]
    pub name: String,
    pub atoms: Vec<AtomJson>,
    pub maps: Vec<Isometry>,
}

impl From<&ConvexRegion> for AtomJson {
    fn from(r: &ConvexRegion) -> Self {
        AtomJson {
            halfplanes: r
                .constraints
                .iter()
                .map(|h| HalfPlaneJson {
                    phi: h.phi(),
                    anchor: h.anchor(),
                    sense: h.sense(),
                })
                .collect(),
            special_points: r.special_points.clone(),
        }
    }
}

impl From<AtomJson> for ConvexRegion {
    fn from(a: AtomJson) -> Self {
        ConvexRegion {
            constraints: a
                .halfplanes
                .into_iter()
                .map(|h| HalfPlane::new(h.phi, h.anchor, h.sense))
                .collect(),
            special_points: a.special_points,
        }
    }
}

impl TryFrom<PwiJson> for Pwi {
    type Error = Error;

    fn try_from(j: PwiJson) -> Result<Self> {
        Pwi::new(
            j.name,
            j.atoms.into_iter().map(Into::into).collect(),
            j.maps,
        )
    }
}

impl From<Pwi> for PwiJson {
    fn from(p: Pwi) -> Self {
        PwiJson {
            name: p.name().to_string(),
            atoms: p.atoms().iter().map(Into::into).collect(),
            maps: p.maps().to_vec(),
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub const ORBIT_HEADER: [&str; 5] = ["n", "re", "im", "atom", "boundary_flag"];

/// 17 significant digits: enough to round-trip any double.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_orbit_csv<W: Write>(record: &OrbitRecord, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(ORBIT_HEADER).map_err(csv_err)?;
    for (k, z) in record.points.iter().enumerate() {
        w.write_record([
            (record.start + k).to_string(),
            format_float(z.re),
            format_float(z.im),
            (record.atoms.0[k] + 1).to_string(),
            u8::from(record.boundary_flags[k]).to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_orbit(record: &OrbitRecord, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_orbit_csv(record, std::io::BufWriter::new(file))
}

/// Reads an orbit CSV back. The escape step is not part of the format.
pub fn read_orbit_csv<R: Read>(input: R) -> Result<OrbitRecord> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if headers.iter().ne(ORBIT_HEADER) {
        return Err(Error::Parse(format!("unexpected header {headers:?}")));
    }
    let mut record = OrbitRecord::default();
    let mut atoms = Vec::new();
    for (i, row) in r.records().enumerate() {
        let row = row.map_err(|e| Error::Parse(e.to_string()))?;
        let field = |k: usize| {
            row.get(k)
                .ok_or_else(|| Error::Parse(format!("row {i}: missing column {k}")))
        };
        let bad =
            |k: usize| Error::Parse(format!("row {i}: bad value in column {}", ORBIT_HEADER[k]));
        let n: usize = field(0)?.parse().map_err(|_| bad(0))?;
        let re: f64 = field(1)?.parse().map_err(|_| bad(1))?;
        let im: f64 = field(2)?.parse().map_err(|_| bad(2))?;
        let atom: usize = field(3)?.parse().map_err(|_| bad(3))?;
        if atom == 0 {
            return Err(bad(3));
        }
        let flag = match field(4)? {
            "0" => false,
            "1" => true,
            _ => return Err(bad(4)),
        };
        if i == 0 {
            record.start = n;
        }
        record.points.push(Complex64::new(re, im));
        atoms.push(atom - 1);
        record.boundary_flags.push(flag);
    }
    record.atoms = Itinerary(atoms);
    Ok(record)
}

pub fn import_orbit(path: &Path) -> Result<OrbitRecord> {
    read_orbit_csv(std::fs::File::open(path)?)
}
