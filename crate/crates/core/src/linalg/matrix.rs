use std::fmt;
use std::ops::Mul;

use serde_json::{json, Value as Json};

use super::LinalgError;
use crate::rings::{Ring, RingElem};

/// Dense row-major matrix over a single ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<RingElem>,
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<RingElem>>) -> Result<Matrix, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        let data: Vec<RingElem> = rows.into_iter().flatten().collect();
        if let Some(x) = data.iter().find(|x| x.ring() != ring) {
            return Err(LinalgError::Ring(crate::rings::RingError::MixedRings(
                ring.to_string(),
                x.ring().to_string(),
            )));
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(ring: &Ring, rows: &[Vec<i64>]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.int(v)).collect())
            .collect();
        Matrix::from_rows(ring, rows).expect("rectangular input")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 0-based position.
    pub fn get(&self, r: usize, c: usize) -> &RingElem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RingElem) {
        debug_assert!(v.ring() == &self.ring);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[RingElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<RingElem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Row `dst` += `c` · row `src` (0-based). This is left multiplication by
    /// the transvection `e + c·e_{dst,src}`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &RingElem) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let s = self.get(src, k);
            if !s.is_zero() {
                let v = self.get(dst, k) + &(c * s);
                self.data[dst * self.cols + k] = v;
            }
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let data = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        Matrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(LinalgError::Ring(crate::rings::RingError::MixedRings(
                self.ring.to_string(),
                other.ring.to_string(),
            )));
        }
        let mut out = Matrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.data[i * other.cols + j] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &RingElem) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Entrywise image in `ring` (reduction or extension of scalars).
    pub fn map_ring(&self, ring: &Ring) -> Result<Matrix, LinalgError> {
        let data = self
            .data
            .iter()
            .map(|x| ring.coerce(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn to_json(&self) -> Json {
        let rows: Vec<Json> = (0..self.rows)
            .map(|r| Json::Array(self.row(r).iter().map(RingElem::to_json).collect()))
            .collect();
        json!({"ring": self.ring.to_string(), "rows": rows})
    }

    /// Parses `{"ring": spec, "rows": [[…]]}`. When `ring` is given it
    /// overrides the declared spec.
    pub fn from_json(v: &Json, ring: Option<&Ring>) -> Result<Matrix, LinalgError> {
        let bad = |msg: &str| LinalgError::Json(msg.to_string());
        let ring = match (ring, v.get("ring").and_then(Json::as_str)) {
            (Some(r), _) => r.clone(),
            (None, Some(s)) => s.parse::<Ring>()?,
            (None, None) => return Err(bad("missing ring")),
        };
        let rows = v
            .get("rows")
            .and_then(Json::as_array)
            .ok_or_else(|| bad("missing rows"))?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("row is not an array"))?
                    .iter()
                    .map(|x| RingElem::from_json(&ring, x).map_err(LinalgError::from))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(&ring, rows)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}
