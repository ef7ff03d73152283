//! CSV and JSON serialization.
//!
//! CSV files start with a `# schema: <name>` comment line followed by a
//! column header; JSON objects carry a `"schema"` field. Floats are written
//! as shortest round-trip decimals.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{EquidistReport, ObtuseCurvePoint};
use crate::diophantine::ShapeApproximation;
use crate::lattice::{AngleClass, SimilarityKey};
use crate::moduli::WeightedShapeSet;
use crate::randgeom::{Histogram2D, McEstimate};
use crate::{Error, Result};

pub const WEIGHTED_SET_SCHEMA: &str = "trimoduli.weighted_set.v1";
pub const CURVE_SCHEMA: &str = "trimoduli.obtuse_curve.v1";
pub const REPORT_SCHEMA: &str = "trimoduli.equidist_report.v1";
pub const ESTIMATE_SCHEMA: &str = "trimoduli.mc_estimate.v1";
pub const HISTOGRAM_SCHEMA: &str = "trimoduli.shape_histogram.v1";
pub const APPROX_SCHEMA: &str = "trimoduli.shape_approximation.v1";

pub const WEIGHTED_SET_COLUMNS: [&str; 8] = ["p", "q", "r", "weight", "angle_class", "a", "b", "c"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<stream>", e)
}

fn write_csv(
    out: &mut dyn Write,
    schema: &str,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    writeln!(out, "# schema: {schema}").map_err(io_err)?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(io_err)
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(out).map_err(io_err)
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema: &'a str,
    #[serde(flatten)]
    inner: &'a T,
}

fn unsupported(what: &str, format: Format) -> Error {
    Error::InvalidInput(format!("{what} cannot be written as {format:?}"))
}

#[derive(Serialize, Deserialize)]
struct WeightedRow {
    p: u128,
    q: u128,
    r: u128,
    weight: u64,
    angle_class: AngleClass,
    a: f64,
    b: f64,
    c: f64,
}

#[derive(Serialize, Deserialize)]
struct WeightedDoc {
    schema: String,
    total_weight: u64,
    entries: Vec<WeightedRow>,
}

fn weighted_rows(s: &WeightedShapeSet) -> Vec<WeightedRow> {
    s.iter()
        .map(|(k, weight)| {
            let shape = k.shape();
            WeightedRow {
                p: k.p(),
                q: k.q(),
                r: k.r(),
                weight,
                angle_class: k.angle_class(),
                a: shape.a(),
                b: shape.b(),
                c: shape.c(),
            }
        })
        .collect()
}

pub fn write_weighted_set(s: &WeightedShapeSet, format: Format, out: &mut dyn Write) -> Result<()> {
    let rows = weighted_rows(s);
    match format {
        Format::Csv => write_csv(
            out,
            WEIGHTED_SET_SCHEMA,
            &WEIGHTED_SET_COLUMNS,
            rows.iter().map(|r| {
                vec![
                    r.p.to_string(),
                    r.q.to_string(),
                    r.r.to_string(),
                    r.weight.to_string(),
                    r.angle_class.as_str().to_string(),
                    r.a.to_string(),
                    r.b.to_string(),
                    r.c.to_string(),
                ]
            }),
        ),
        Format::Json => write_json(
            out,
            &WeightedDoc {
                schema: WEIGHTED_SET_SCHEMA.to_string(),
                total_weight: s.total_weight(),
                entries: rows,
            },
        ),
        Format::Svg => Err(unsupported("a weighted shape set", format)),
    }
}

/// Writes `s` to `path`; rows sorted by `(p, q, r)`.
pub fn export_weighted_set(s: &WeightedShapeSet, format: Format, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_weighted_set(s, format, &mut w)?;
    w.flush().map_err(|e| Error::io(path, e))
}

fn to_set(rows: Vec<WeightedRow>) -> Result<WeightedShapeSet> {
    let mut set = WeightedShapeSet::new();
    for row in rows {
        let key = SimilarityKey::try_from([row.p, row.q, row.r])?;
        if key.angle_class() != row.angle_class {
            return Err(Error::Parse(format!(
                "key {key} is {}, file says {}",
                key.angle_class().as_str(),
                row.angle_class.as_str()
            )));
        }
        if set.contains(&key) {
            return Err(Error::Parse(format!("duplicate key {key}")));
        }
        set.add(key, row.weight)?;
    }
    Ok(set)
}

pub fn read_weighted_set(format: Format, input: &mut dyn Read) -> Result<WeightedShapeSet> {
    match format {
        Format::Csv => {
            let mut r = csv::ReaderBuilder::new()
                .comment(Some(b'#'))
                .from_reader(input);
            let header = r.headers().map_err(csv_err)?.clone();
            if header.iter().ne(WEIGHTED_SET_COLUMNS) {
                return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
            }
            let rows = r
                .deserialize()
                .collect::<std::result::Result<Vec<WeightedRow>, _>>()
                .map_err(csv_err)?;
            to_set(rows)
        }
        Format::Json => {
            let doc: WeightedDoc =
                serde_json::from_reader(input).map_err(|e| Error::Parse(e.to_string()))?;
            if doc.schema != WEIGHTED_SET_SCHEMA {
                return Err(Error::Parse(format!("unknown schema {:?}", doc.schema)));
            }
            let set = to_set(doc.entries)?;
            if set.total_weight() != doc.total_weight {
                return Err(Error::Parse("total_weight does not match entries".into()));
            }
            Ok(set)
        }
        Format::Svg => Err(unsupported("a weighted shape set", format)),
    }
}

pub fn import_weighted_set(format: Format, path: &Path) -> Result<WeightedShapeSet> {
    let mut file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_weighted_set(format, &mut file)
}

pub fn write_curve(points: &[ObtuseCurvePoint], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => write_csv(
            out,
            CURVE_SCHEMA,
            &[
                "n",
                "weighted_fraction",
                "distinct_fraction",
                "total_weight",
                "obtuse_weight",
                "distinct_count",
                "obtuse_distinct_count",
            ],
            points.iter().map(|p| {
                vec![
                    p.n.to_string(),
                    p.weighted_fraction.to_string(),
                    p.distinct_fraction.to_string(),
                    p.total_weight.to_string(),
                    p.obtuse_weight.to_string(),
                    p.distinct_count.to_string(),
                    p.obtuse_distinct_count.to_string(),
                ]
            }),
        ),
        Format::Json => write_json(out, points),
        Format::Svg => crate::svg::write_curve_svg(points, out),
    }
}

pub fn write_report(r: &EquidistReport, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => write_csv(
            out,
            REPORT_SCHEMA,
            &[
                "n",
                "empirical_ratio",
                "uniform_target",
                "langford",
                "gap_to_uniform",
                "gap_to_langford",
            ],
            [vec![
                r.n.to_string(),
                r.empirical_ratio.to_string(),
                r.uniform_target.to_string(),
                r.langford.to_string(),
                r.gap_to_uniform.to_string(),
                r.gap_to_langford.to_string(),
            ]],
        ),
        Format::Json => write_json(
            out,
            &Versioned {
                schema: REPORT_SCHEMA,
                inner: r,
            },
        ),
        Format::Svg => Err(unsupported("a report", format)),
    }
}

pub fn write_estimate(e: &McEstimate, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => write_csv(
            out,
            ESTIMATE_SCHEMA,
            &["mean", "std_error", "samples", "seed"],
            [vec![
                e.mean.to_string(),
                e.std_error.to_string(),
                e.samples.to_string(),
                e.seed.to_string(),
            ]],
        ),
        Format::Json => write_json(
            out,
            &Versioned {
                schema: ESTIMATE_SCHEMA,
                inner: e,
            },
        ),
        Format::Svg => Err(unsupported("an estimate", format)),
    }
}

/// Nonzero bins only; `a_lo`/`b_lo` are the lower cell edges.
pub fn write_histogram(h: &Histogram2D, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => {
            let width = 1.0 / h.bins as f64;
            let rows = (0..h.bins)
                .flat_map(|i| (0..h.bins).map(move |j| (i, j)))
                .filter(|&(i, j)| h.count(i, j) > 0)
                .map(|(i, j)| {
                    vec![
                        i.to_string(),
                        j.to_string(),
                        (i as f64 * width).to_string(),
                        (j as f64 * width).to_string(),
                        h.count(i, j).to_string(),
                    ]
                });
            write_csv(
                out,
                HISTOGRAM_SCHEMA,
                &["a_index", "b_index", "a_lo", "b_lo", "count"],
                rows,
            )
        }
        Format::Json => write_json(
            out,
            &Versioned {
                schema: HISTOGRAM_SCHEMA,
                inner: h,
            },
        ),
        Format::Svg => Err(unsupported("a histogram", format)),
    }
}

pub fn write_approximation(
    a: &ShapeApproximation,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    let [v0, v1, v2] = a.triangle.vertices();
    let key = a.triangle.similarity_key();
    let shape = key.shape();
    match format {
        Format::Csv => write_csv(
            out,
            APPROX_SCHEMA,
            &[
                "ax", "ay", "bx", "by", "cx", "cy", "p", "q", "r", "a", "b", "c", "distance",
            ],
            [vec![
                v0.x.to_string(),
                v0.y.to_string(),
                v1.x.to_string(),
                v1.y.to_string(),
                v2.x.to_string(),
                v2.y.to_string(),
                key.p().to_string(),
                key.q().to_string(),
                key.r().to_string(),
                shape.a().to_string(),
                shape.b().to_string(),
                shape.c().to_string(),
                a.distance.to_string(),
            ]],
        ),
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                vertices: [[i32; 2]; 3],
                key: SimilarityKey,
                shape: [f64; 3],
                distance: f64,
                delta: f64,
                approximant: &'a crate::diophantine::DirichletApproximant,
            }
            write_json(
                out,
                &Versioned {
                    schema: APPROX_SCHEMA,
                    inner: &Doc {
                        vertices: [[v0.x, v0.y], [v1.x, v1.y], [v2.x, v2.y]],
                        key,
                        shape: shape.as_array(),
                        distance: a.distance,
                        delta: a.delta,
                        approximant: &a.approximant,
                    },
                },
            )
        }
        Format::Svg => Err(unsupported("an approximation", format)),
    }
}
