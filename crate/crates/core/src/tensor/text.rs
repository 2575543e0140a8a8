//! Flat text serialization.
//!
//! ```text
//! m N field
//! i1 ... im re [im]
//! ```
//!
//! One coefficient line per multi-index in lexicographic order. Real tensors
//! omit the imaginary column. Blank lines and lines starting with `#` are
//! ignored on input. Numbers are written in Rust's shortest round-trip form.

use std::fmt::Write as _;

use super::{checked_entry_count, CoefficientTensor, Odometer, Scalar, ScalarField};
use crate::error::{LabError, Result};

impl CoefficientTensor {
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.entries.len() * (2 * self.order + 8));
        let _ = writeln!(out, "{} {} {}", self.order, self.dim, self.field);
        let mut odo = Odometer::new(self.order, self.dim);
        let mut flat = 0;
        while let Some(idx) = odo.next_index() {
            for &i in idx {
                let _ = write!(out, "{} ", i + 1);
            }
            let a = self.entries[flat];
            match self.field {
                ScalarField::Real => {
                    let _ = writeln!(out, "{}", a.re);
                }
                ScalarField::Complex => {
                    let _ = writeln!(out, "{} {}", a.re, a.im);
                }
            }
            flat += 1;
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(LabError::Parse {
            line: 0,
            message: "missing header `m N field`".into(),
        })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(LabError::Parse {
                line: hline,
                message: format!("header must be `m N field`, got `{header}`"),
            });
        }
        let parse_usize = |s: &str, what: &str| {
            s.parse::<usize>().map_err(|_| LabError::Parse {
                line: hline,
                message: format!("invalid {what} `{s}`"),
            })
        };
        let order = parse_usize(parts[0], "order")?;
        let dim = parse_usize(parts[1], "dimension")?;
        let field: ScalarField = parts[2].parse().map_err(|_| LabError::Parse {
            line: hline,
            message: format!("invalid field `{}`", parts[2]),
        })?;
        if order == 0 || dim == 0 {
            return Err(LabError::Parse {
                line: hline,
                message: "order and dimension must be positive".into(),
            });
        }
        let count = checked_entry_count(order, dim)?;
        let value_cols = match field {
            ScalarField::Real => 1,
            ScalarField::Complex => 2,
        };

        let mut entries = Vec::with_capacity(count);
        let mut odo = Odometer::new(order, dim);
        while let Some(expected) = odo.next_index() {
            let (ln, line) = lines.next().ok_or(LabError::Parse {
                line: 0,
                message: format!(
                    "expected {count} coefficient lines, found {}",
                    entries.len()
                ),
            })?;
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != order + value_cols {
                return Err(LabError::Parse {
                    line: ln,
                    message: format!(
                        "expected {} columns, found {}",
                        order + value_cols,
                        cols.len()
                    ),
                });
            }
            for (slot, col) in cols[..order].iter().enumerate() {
                let i: usize = col.parse().map_err(|_| LabError::Parse {
                    line: ln,
                    message: format!("invalid index `{col}`"),
                })?;
                if i != expected[slot] + 1 {
                    return Err(LabError::Parse {
                        line: ln,
                        message: "indices must be listed in lexicographic order".into(),
                    });
                }
            }
            let num = |s: &str| {
                s.parse::<f64>().map_err(|_| LabError::Parse {
                    line: ln,
                    message: format!("invalid number `{s}`"),
                })
            };
            let re = num(cols[order])?;
            let im = if value_cols == 2 {
                num(cols[order + 1])?
            } else {
                0.0
            };
            entries.push(Scalar::new(re, im));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(LabError::Parse {
                line: ln,
                message: "trailing data after the last coefficient".into(),
            });
        }
        CoefficientTensor::from_entries(order, dim, field, entries)
    }
}
