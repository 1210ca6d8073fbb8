//! Cloud serialization: `index,sign,gamma,time,x1[,x2,...]`, one atom per
//! row, reals in scientific notation with 17 significant digits so that a
//! round trip through text is exact for `f64`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Atom, AtomCloud, Sign, StableParams, WeightFn};

pub(crate) fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

impl<F: Scalar> AtomCloud<F> {
    pub fn csv_header(&self) -> String {
        let mut h = String::from("index,sign,gamma,time");
        for k in 1..=self.params().dim() {
            h.push_str(&format!(",x{k}"));
        }
        h
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{}", self.csv_header())?;
        for (i, a) in self.atoms().iter().enumerate() {
            write!(
                out,
                "{i},{},{},{}",
                a.sign.as_i8(),
                fmt_real(a.gamma.as_f64()),
                fmt_real(a.time.as_f64())
            )?;
            for x in &a.pos {
                write!(out, ",{}", fmt_real(x.as_f64()))?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv is ascii")
    }

    /// Reads a cloud written by [`AtomCloud::write_csv`]. Rows must appear in
    /// arrival order; the invariants are checked as in [`AtomCloud::from_atoms`].
    pub fn read_csv<R: BufRead>(
        input: R,
        params: StableParams<F>,
        weight: WeightFn<F>,
        seed: u64,
    ) -> Result<Self> {
        let dim = params.dim();
        let mut lines = input.lines();
        let header = lines.next().transpose()?.unwrap_or_default();
        let expected_cols = 4 + dim;
        if header.split(',').count() != expected_cols || !header.starts_with("index,sign,gamma,time") {
            return Err(Error::CloudCsv {
                line: 1,
                msg: format!("unexpected header {header:?}"),
            });
        }
        let mut atoms = Vec::new();
        for (k, line) in lines.enumerate() {
            let line = line?;
            let lineno = k + 2;
            if line.trim().is_empty() {
                continue;
            }
            let err = |msg: String| Error::CloudCsv { line: lineno, msg };
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != expected_cols {
                return Err(err(format!("expected {expected_cols} columns, got {}", cols.len())));
            }
            let num = |s: &str| -> Result<F> {
                s.trim()
                    .parse::<f64>()
                    .map(F::lit)
                    .map_err(|e| err(format!("{s:?}: {e}")))
            };
            let sign = match cols[1].trim() {
                "1" | "+1" => Sign::Plus,
                "-1" => Sign::Minus,
                other => return Err(err(format!("sign must be +1 or -1, got {other:?}"))),
            };
            atoms.push(Atom {
                sign,
                gamma: num(cols[2])?,
                time: num(cols[3])?,
                pos: cols[4..].iter().map(|s| num(s)).collect::<Result<_>>()?,
            });
        }
        Self::from_atoms(atoms, params, weight, seed)
    }
}
