use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{compute_statistics, ContactDataset, ContactSample};
use crate::error::{Error, Result};
use crate::io_util::write_atomic;

/// Writes the manifest text: a `V=.. d=.. N=..` header, then one
/// `id;f_1,...,f_d;c_1,...,c_V` line per sample. Floats use the shortest
/// representation that parses back to the same value.
pub fn write_manifest<W: Write + ?Sized>(
    dataset: &ContactDataset,
    w: &mut W,
) -> std::io::Result<()> {
    writeln!(
        w,
        "V={} d={} N={}",
        dataset.vertex_count(),
        dataset.feature_dim(),
        dataset.len()
    )?;
    for s in dataset.samples() {
        let feats: Vec<String> = s.features.iter().map(|f| f.to_string()).collect();
        let contact: String = s
            .contact
            .iter()
            .map(|&c| if c { "1" } else { "0" })
            .collect::<Vec<_>>()
            .join(",");
        writeln!(w, "{};{};{}", s.id, feats.join(","), contact)?;
    }
    Ok(())
}

pub fn save_manifest(dataset: &ContactDataset, path: &Path) -> Result<()> {
    if dataset.is_empty() {
        return Err(Error::NoSamples);
    }
    if let Some(s) = dataset
        .samples()
        .iter()
        .find(|s| s.id.is_empty() || s.id.contains([';', '\n', '\r']))
    {
        return Err(Error::InvalidParameter(format!(
            "sample id {:?} cannot be written to a manifest",
            s.id
        )));
    }
    write_atomic(path, |w| write_manifest(dataset, w))
}

fn parse_header(line: &str, name: &str) -> Result<(usize, usize, usize)> {
    let mut v = None;
    let mut d = None;
    let mut n = None;
    for part in line.split_whitespace() {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::parse(name, 1, format!("bad header field {part:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| Error::parse(name, 1, format!("bad header value {part:?}")))?;
        match key {
            "V" => v = Some(value),
            "d" => d = Some(value),
            "N" => n = Some(value),
            _ => {
                return Err(Error::parse(
                    name,
                    1,
                    format!("unknown header field {key:?}"),
                ))
            }
        }
    }
    match (v, d, n) {
        (Some(v), Some(d), Some(n)) => Ok((v, d, n)),
        _ => Err(Error::parse(
            name,
            1,
            "header must be `V=<int> d=<int> N=<int>`",
        )),
    }
}

fn parse_sample(
    line: &str,
    v: usize,
    d: usize,
    name: &str,
    lineno: usize,
) -> Result<ContactSample> {
    let fields: Vec<&str> = line.split(';').collect();
    if fields.len() != 3 {
        return Err(Error::parse(name, lineno, "expected `id;features;contact`"));
    }
    let id = fields[0].to_string();
    if id.is_empty() {
        return Err(Error::parse(name, lineno, "empty sample id"));
    }
    let features: Vec<f64> = if fields[1].is_empty() {
        Vec::new()
    } else {
        fields[1]
            .split(',')
            .map(|t| match t.trim().parse::<f64>() {
                Ok(f) if f.is_finite() => Ok(f),
                _ => Err(Error::parse(
                    name,
                    lineno,
                    format!("bad feature value {t:?}"),
                )),
            })
            .collect::<Result<_>>()?
    };
    if features.len() != d {
        return Err(Error::parse(
            name,
            lineno,
            format!("expected {d} features, found {}", features.len()),
        ));
    }
    let contact: Vec<bool> = fields[2]
        .split(',')
        .map(|t| match t.trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(Error::parse(
                name,
                lineno,
                format!("contact value {other:?} is not 0 or 1"),
            )),
        })
        .collect::<Result<_>>()?;
    if contact.len() != v {
        return Err(Error::parse(
            name,
            lineno,
            format!("expected {v} contact values, found {}", contact.len()),
        ));
    }
    Ok(ContactSample {
        id,
        features,
        contact,
    })
}

pub fn read_manifest<R: BufRead>(reader: R, name: &str) -> Result<ContactDataset> {
    let mut lines = reader.lines();
    let header = match lines.next() {
        Some(line) => line.map_err(|e| Error::io(name, e))?,
        None => return Err(Error::NoSamples),
    };
    let (v, d, n) = parse_header(header.trim(), name)?;
    let mut samples = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line.map_err(|e| Error::io(name, e))?;
        if line.trim().is_empty() {
            continue;
        }
        samples.push(parse_sample(line.trim_end(), v, d, name, lineno)?);
    }
    if samples.is_empty() {
        return Err(Error::NoSamples);
    }
    if samples.len() != n {
        return Err(Error::parse(
            name,
            1,
            format!("header declares N={n} but {} samples follow", samples.len()),
        ));
    }
    compute_statistics(samples)
}

pub fn load_manifest(path: &Path) -> Result<ContactDataset> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_manifest(BufReader::new(file), &path.display().to_string())
}
