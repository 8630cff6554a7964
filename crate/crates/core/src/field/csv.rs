//! Field files: header `x,re,im` (1D) or `x,y,re,im` (2D), one row per
//! sample in flat grid order. Values are written with 17 significant digits,
//! which round-trips every `f64` exactly.

use std::io::{BufRead, Write};

use num_complex::Complex64 as C64;

use super::{Grid, SampledField};
use crate::error::{LabError, Result};

pub fn write_field_csv<W: Write>(field: &SampledField, mut out: W) -> Result<()> {
    let grid = field.grid();
    if grid.dim() == 1 {
        writeln!(out, "x,re,im")?;
    } else {
        writeln!(out, "x,y,re,im")?;
    }
    for (i, v) in field.values().iter().enumerate() {
        let p = grid.point(i);
        if grid.dim() == 1 {
            writeln!(out, "{:.16e},{:.16e},{:.16e}", p[0], v.re, v.im)?;
        } else {
            writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", p[0], p[1], v.re, v.im)?;
        }
    }
    Ok(())
}

pub fn field_to_csv_string(field: &SampledField) -> String {
    let mut buf = Vec::new();
    write_field_csv(field, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

fn parse_err(line: usize, message: impl Into<String>) -> LabError {
    LabError::Parse {
        line,
        message: message.into(),
    }
}

/// Reads a field file and reconstructs its grid from the coordinate column(s).
pub fn read_field_csv<R: BufRead>(input: R) -> Result<SampledField> {
    let mut lines = input.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let header = header?;
    let dim = match header.trim() {
        "x,re,im" => 1,
        "x,y,re,im" => 2,
        other => return Err(parse_err(1, format!("unknown header `{other}`"))),
    };
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for (i, line) in lines {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(lineno, e.to_string()))?;
        if cols.len() != dim + 2 {
            return Err(parse_err(lineno, format!("expected {} columns", dim + 2)));
        }
        xs.push(cols[0]);
        values.push(C64::new(cols[dim], cols[dim + 1]));
    }
    let n = match dim {
        1 => values.len(),
        _ => (values.len() as f64).sqrt().round() as usize,
    };
    if n < 2 || n.pow(dim as u32) != values.len() {
        return Err(parse_err(0, format!("{} rows do not form a square grid", values.len())));
    }
    let stride = if dim == 1 { 1 } else { n };
    let dx = xs[stride] - xs[0];
    let half_width = dx * n as f64 / 2.0;
    let grid = Grid::new(dim, n, half_width)?;
    for (j, x) in grid.coords().iter().enumerate() {
        if (xs[j * stride] - x).abs() > 1e-9 * half_width {
            return Err(parse_err(j * stride + 2, "coordinates are not a cell-centered grid"));
        }
    }
    SampledField::new(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        for dim in 1..=2 {
            let grid = Grid::new(dim, 16, 3.0).unwrap();
            let f = SampledField::from_fn(grid, |p| {
                C64::new((-p[0] * p[0] / 3.0).exp() / 7.0, (p[1] + 0.1).sin() * 1e-300)
            })
            .unwrap();
            let text = field_to_csv_string(&f);
            let back = read_field_csv(text.as_bytes()).unwrap();
            assert_eq!(back.values(), f.values());
            assert_eq!(back.grid().points(), 16);
        }
    }

    #[test]
    fn reports_line_numbers() {
        let text = "x,re,im\n0.5,1,0\n1.5,oops,0\n";
        match read_field_csv(text.as_bytes()) {
            Err(LabError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
