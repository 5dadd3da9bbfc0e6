//! Plain-text file formats.
//!
//! * Dense matrix: one row per line, comma-separated decimals, no header.
//! * Labels: one nonnegative integer per line.
//! * Dendrogram: one merge per line, `left,right,linkage,size,level`, the
//!   linkage printed with 17 significant digits.
//! * Embedding: a `n l` header, `n` lines of `l` comma-separated
//!   coordinates, then one line of `l` eigenvalues.
//!
//! Parse errors carry 1-based line numbers.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::dendrogram::{Dendrogram, MergeRecord, Partition};
use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_field<F: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<F> {
    s.trim()
        .parse::<F>()
        .map_err(|_| parse_err(line, format!("invalid {what} '{}'", s.trim())))
}

fn lines(r: impl BufRead) -> Result<Vec<String>> {
    let mut out: Vec<String> = r.lines().collect::<std::io::Result<_>>()?;
    while out.last().is_some_and(|l| l.trim().is_empty()) {
        out.pop();
    }
    Ok(out)
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_matrix<T: Scalar>(r: impl BufRead) -> Result<Matrix<T>> {
    let lines = lines(r)?;
    let n = lines.len();
    let mut rows = Vec::with_capacity(n);
    for (k, l) in lines.iter().enumerate() {
        let line = k + 1;
        let row: Vec<T> = l
            .split(',')
            .map(|f| parse_field::<T>(f, line, "number"))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(parse_err(line, format!("expected {n} fields, found {}", row.len())));
        }
        rows.push(row);
    }
    Matrix::from_rows(&rows)
}

pub fn write_matrix<T: Scalar>(mut w: impl Write, m: &Matrix<T>) -> Result<()> {
    for row in m.rows() {
        let fields: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

pub fn read_labels(r: impl BufRead) -> Result<Partition> {
    let labels = lines(r)?
        .iter()
        .enumerate()
        .map(|(k, l)| parse_field::<usize>(l, k + 1, "label"))
        .collect::<Result<_>>()?;
    Ok(Partition::new(labels))
}

pub fn write_labels(mut w: impl Write, p: &Partition) -> Result<()> {
    for l in p.labels() {
        writeln!(w, "{l}")?;
    }
    Ok(())
}

/// Reads a merge list; the leaf count is one more than the number of lines.
/// Stored sizes and levels must agree with the ones implied by the merges.
pub fn read_dendrogram<T: Scalar>(r: impl BufRead) -> Result<Dendrogram<T>> {
    let lines = lines(r)?;
    let n = lines.len() + 1;
    let mut merges = Vec::with_capacity(lines.len());
    let mut levels = Vec::with_capacity(lines.len());
    for (k, l) in lines.iter().enumerate() {
        let line = k + 1;
        let f: Vec<&str> = l.split(',').collect();
        if f.len() != 5 {
            return Err(parse_err(line, format!("expected 5 fields, found {}", f.len())));
        }
        merges.push(MergeRecord {
            left: parse_field(f[0], line, "node id")?,
            right: parse_field(f[1], line, "node id")?,
            linkage: parse_field(f[2], line, "linkage")?,
            size: parse_field(f[3], line, "size")?,
        });
        levels.push(parse_field::<usize>(f[4], line, "level")?);
    }
    let d = Dendrogram::new(n, merges).map_err(|e| match e {
        Error::InvalidDendrogram(msg) => parse_err(0, msg),
        other => other,
    })?;
    for (t, &lv) in levels.iter().enumerate() {
        if d.level(n + t) != lv {
            return Err(parse_err(
                t + 1,
                format!("level {lv} does not match the tree ({})", d.level(n + t)),
            ));
        }
    }
    Ok(d)
}

pub fn write_dendrogram<T: Scalar>(mut w: impl Write, d: &Dendrogram<T>) -> Result<()> {
    for (t, m) in d.merges().iter().enumerate() {
        writeln!(
            w,
            "{},{},{:.16e},{},{}",
            m.left,
            m.right,
            m.linkage,
            m.size,
            d.level(d.n() + t)
        )?;
    }
    Ok(())
}

pub fn read_embedding<T: Scalar>(r: impl BufRead) -> Result<Embedding<T>> {
    let lines: Vec<String> = r.lines().collect::<std::io::Result<_>>()?;
    let header = lines.first().ok_or_else(|| parse_err(1, "missing header"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 2 {
        return Err(parse_err(1, "header must be 'n l'"));
    }
    let n: usize = parse_field(h[0], 1, "point count")?;
    let l: usize = parse_field(h[1], 1, "dimension count")?;
    if lines.len() < n + 2 {
        return Err(parse_err(lines.len() + 1, format!("expected {} lines", n + 2)));
    }
    let row = |k: usize| -> Result<Vec<T>> {
        let text = lines[k].trim();
        let vals: Vec<T> = if text.is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(|f| parse_field::<T>(f, k + 1, "number"))
                .collect::<Result<_>>()?
        };
        if vals.len() != l {
            return Err(parse_err(k + 1, format!("expected {l} fields, found {}", vals.len())));
        }
        Ok(vals)
    };
    let mut coords = Vec::with_capacity(n * l);
    for k in 1..=n {
        coords.extend(row(k)?);
    }
    let eigenvalues = row(n + 1)?;
    Embedding::from_parts(n, l, coords, eigenvalues)
}

pub fn write_embedding<T: Scalar>(mut w: impl Write, e: &Embedding<T>) -> Result<()> {
    writeln!(w, "{} {}", e.n(), e.dims())?;
    let join = |xs: &[T]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    for i in 0..e.n() {
        writeln!(w, "{}", join(e.point(i)))?;
    }
    writeln!(w, "{}", join(e.eigenvalues()))?;
    Ok(())
}

pub fn load_matrix<T: Scalar>(path: impl AsRef<Path>) -> Result<Matrix<T>> {
    read_matrix(open(path.as_ref())?)
}

pub fn save_matrix<T: Scalar>(path: impl AsRef<Path>, m: &Matrix<T>) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_matrix(&mut w, m)?;
    w.flush()?;
    Ok(())
}

pub fn load_labels(path: impl AsRef<Path>) -> Result<Partition> {
    read_labels(open(path.as_ref())?)
}

pub fn save_labels(path: impl AsRef<Path>, p: &Partition) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_labels(&mut w, p)?;
    w.flush()?;
    Ok(())
}

pub fn load_dendrogram<T: Scalar>(path: impl AsRef<Path>) -> Result<Dendrogram<T>> {
    read_dendrogram(open(path.as_ref())?)
}

pub fn save_dendrogram<T: Scalar>(path: impl AsRef<Path>, d: &Dendrogram<T>) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_dendrogram(&mut w, d)?;
    w.flush()?;
    Ok(())
}

pub fn load_embedding<T: Scalar>(path: impl AsRef<Path>) -> Result<Embedding<T>> {
    read_embedding(open(path.as_ref())?)
}

pub fn save_embedding<T: Scalar>(path: impl AsRef<Path>, e: &Embedding<T>) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_embedding(&mut w, e)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_roundtrip_and_errors() {
        let text = "0,1.5,-2\n1.5,0,3\n-2,3,0\n";
        let m: Matrix<f64> = read_matrix(text.as_bytes()).unwrap();
        assert_eq!(m[(0, 2)], -2.0);
        let mut out = Vec::new();
        write_matrix(&mut out, &m).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), text);

        let err = read_matrix::<f64>("0,1\n1,0,2\n".as_bytes()).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                msg: "expected 2 fields, found 3".into()
            }
        );
        let err = read_matrix::<f64>("0,x\n1,0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn dendrogram_format() {
        let d = Dendrogram::new(
            3,
            vec![
                MergeRecord {
                    left: 0,
                    right: 1,
                    linkage: -0.9,
                    size: 2,
                },
                MergeRecord {
                    left: 2,
                    right: 3,
                    linkage: -0.1,
                    size: 3,
                },
            ],
        )
        .unwrap();
        let mut out = Vec::new();
        write_dendrogram(&mut out, &d).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, "0,1,-9.0000000000000002e-1,2,1\n2,3,-1.0000000000000001e-1,3,2\n");
        let back: Dendrogram<f64> = read_dendrogram(text.as_bytes()).unwrap();
        assert_eq!(back, d);

        let err = read_dendrogram::<f64>("0,1,1.0,2,5\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn labels_roundtrip() {
        let p = Partition::new(vec![0, 2, 1, 0]);
        let mut out = Vec::new();
        write_labels(&mut out, &p).unwrap();
        assert_eq!(read_labels(out.as_slice()).unwrap(), p);
        assert!(matches!(
            read_labels("0\n-1\n".as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn embedding_roundtrip() {
        let e = Embedding::from_parts(2, 1, vec![1.0, -1.0], vec![2.0]).unwrap();
        let mut out = Vec::new();
        write_embedding(&mut out, &e).unwrap();
        assert_eq!(String::from_utf8(out.clone()).unwrap(), "2 1\n1\n-1\n2\n");
        assert_eq!(read_embedding::<f64>(out.as_slice()).unwrap(), e);

        let empty = Embedding::<f64>::from_parts(1, 0, vec![], vec![]).unwrap();
        let mut out = Vec::new();
        write_embedding(&mut out, &empty).unwrap();
        assert_eq!(read_embedding::<f64>(out.as_slice()).unwrap(), empty);
    }
}
