//! Linear systems over ℤ, ℤ/k and prime fields.

use super::{Integer, Ring, RingElem, RingError, RingSpec};

type IntMat = Vec<Vec<Integer>>;

/// `U·A·V = D` with `U`, `V` unimodular over ℤ and `D` diagonal.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub u: IntMat,
    pub v: IntMat,
    pub d: IntMat,
}

fn identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|j| Integer::from((i == j) as i64)).collect())
        .collect()
}

/// row[dst] -= q * row[src]
fn row_axpy(m: &mut IntMat, dst: usize, src: usize, q: &Integer) {
    for c in 0..m[dst].len() {
        let t = &m[src][c] * q;
        m[dst][c] = &m[dst][c] - &t;
    }
}

fn col_axpy(m: &mut IntMat, dst: usize, src: usize, q: &Integer) {
    for row in m.iter_mut() {
        let t = &row[src] * q;
        row[dst] = &row[dst] - &t;
    }
}

fn swap_cols(m: &mut IntMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Diagonalizes an integer matrix by unimodular row and column operations.
pub fn diagonalize(a: &[Vec<Integer>]) -> Diagonalization {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d: IntMat = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in d.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Diagonalization { u, v, d };
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            let p = d[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&p);
                    row_axpy(&mut d, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    clean &= d[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&p);
                    col_axpy(&mut d, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    clean &= d[t][j].is_zero();
                }
            }
            if clean {
                break;
            }
        }
    }
    Diagonalization { u, v, d }
}

fn solve_integers(a: &[Vec<Integer>], b: &[Integer]) -> Option<Vec<Integer>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let Diagonalization { u, v, d } = diagonalize(a);
    let ub: Vec<Integer> = u
        .iter()
        .map(|row| {
            row.iter()
                .zip(b)
                .fold(Integer::zero(), |acc, (x, y)| &acc + &(x * y))
        })
        .collect();
    let mut y = vec![Integer::zero(); cols];
    for i in 0..rows {
        let di = if i < cols {
            &d[i][i]
        } else {
            &Integer::Small(0)
        };
        if di.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            if !di.divides(&ub[i]) {
                return None;
            }
            y[i] = ub[i].div_exact(di);
        }
    }
    Some(
        v.iter()
            .map(|row| {
                row.iter()
                    .zip(&y)
                    .fold(Integer::zero(), |acc, (x, y)| &acc + &(x * y))
            })
            .collect(),
    )
}

fn solve_prime_field(a: &[Vec<Integer>], b: &[Integer], p: u64) -> Option<Vec<Integer>> {
    let p = p as i64;
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let lift = |x: &Integer| x.to_i64().expect("reduced residue").rem_euclid(p);
    let mut m: Vec<Vec<i64>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().map(lift).chain([lift(bi)]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = mod_inverse(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for k in c..=cols {
                    m[i][k] = (m[i][k] - f * m[r][k]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![Integer::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = Integer::from(m[i][cols]);
    }
    Some(x)
}

pub(crate) fn mod_inverse(a: i64, p: i64) -> i64 {
    let (g, x, _) = Integer::from(a).extended_gcd(&Integer::from(p));
    debug_assert!(g.is_one());
    x.rem_euclid(&Integer::from(p)).to_i64().unwrap()
}

/// Finds some `x` with `A·x = b`, or `None` if the system has no solution.
pub fn solve_linear(
    ring: &Ring,
    a: &[Vec<RingElem>],
    b: &[RingElem],
) -> Result<Option<Vec<RingElem>>, RingError> {
    if a.len() != b.len() {
        return Err(RingError::DimensionMismatch(format!(
            "{} rows against right-hand side of length {}",
            a.len(),
            b.len()
        )));
    }
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|row| row.len() != cols) {
        return Err(RingError::DimensionMismatch(
            "ragged coefficient matrix".into(),
        ));
    }
    let lift = |x: &RingElem| -> Result<Integer, RingError> {
        if x.ring() != ring {
            return Err(RingError::MixedRings(
                ring.to_string(),
                x.ring().to_string(),
            ));
        }
        x.as_integer()
            .cloned()
            .ok_or_else(|| RingError::Unsupported(ring.to_string()))
    };
    let ai = a
        .iter()
        .map(|row| row.iter().map(lift).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let bi = b.iter().map(lift).collect::<Result<Vec<_>, _>>()?;
    let sol = match ring.spec() {
        RingSpec::Integers => solve_integers(&ai, &bi),
        RingSpec::PrimeField(p) => solve_prime_field(&ai, &bi, *p),
        RingSpec::IntegersMod(k) => {
            // A·x + k·z = b over ℤ
            let kk = Integer::from(*k as i64);
            let rows = ai.len();
            let ext: IntMat = ai
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let mut r = row.clone();
                    r.extend((0..rows).map(|j| if i == j { kk.clone() } else { Integer::zero() }));
                    r
                })
                .collect();
            solve_integers(&ext, &bi).map(|mut x| {
                x.truncate(cols);
                x
            })
        }
        RingSpec::Polynomial { .. } => return Err(RingError::Unsupported(ring.to_string())),
    };
    Ok(sol.map(|x| x.into_iter().map(|v| ring.from_integer(v)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(ring: &Ring, a: &[Vec<RingElem>], b: &[RingElem], x: &[RingElem]) {
        for (row, bi) in a.iter().zip(b) {
            let s = row
                .iter()
                .zip(x)
                .fold(ring.zero(), |acc, (p, q)| &acc + &(p * q));
            assert_eq!(&s, bi);
        }
    }

    fn mat(ring: &Ring, rows: &[&[i64]]) -> Vec<Vec<RingElem>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| ring.int(v)).collect())
            .collect()
    }

    #[test]
    fn field_identity() {
        let f = Ring::fp(7).unwrap();
        let a = mat(&f, &[&[1, 0], &[0, 1]]);
        let b = vec![f.int(3), f.int(5)];
        assert_eq!(solve_linear(&f, &a, &b).unwrap().unwrap(), b);
    }

    #[test]
    fn integer_cases() {
        let z = Ring::integers();
        assert!(solve_linear(&z, &mat(&z, &[&[2]]), &[z.int(3)])
            .unwrap()
            .is_none());
        let a = mat(&z, &[&[2, 3]]);
        let x = solve_linear(&z, &a, &[z.int(1)]).unwrap().unwrap();
        check(&z, &a, &[z.int(1)], &x);
        let a = mat(&z, &[&[4, 6, 2], &[6, 9, 3], &[0, 0, 0]]);
        let b = [z.int(2), z.int(3), z.int(0)];
        let x = solve_linear(&z, &a, &b).unwrap().unwrap();
        check(&z, &a, &b, &x);
        assert!(solve_linear(&z, &a, &[z.int(2), z.int(4), z.int(0)])
            .unwrap()
            .is_none());
    }

    #[test]
    fn modular_cases() {
        let r = Ring::zmod(9).unwrap();
        let a = mat(&r, &[&[3, 6]]);
        assert!(solve_linear(&r, &a, &[r.int(1)]).unwrap().is_none());
        let x = solve_linear(&r, &a, &[r.int(6)]).unwrap().unwrap();
        check(&r, &a, &[r.int(6)], &x);
        let a = mat(&r, &[&[2, 1], &[1, 1]]);
        let b = [r.int(4), r.int(7)];
        let x = solve_linear(&r, &a, &b).unwrap().unwrap();
        check(&r, &a, &b, &x);
    }

    #[test]
    fn dimension_mismatch() {
        let z = Ring::integers();
        let a = mat(&z, &[&[1, 2]]);
        assert!(matches!(
            solve_linear(&z, &a, &[z.int(1), z.int(2)]),
            Err(RingError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn diagonalization_is_unimodular_equivalence() {
        let a: IntMat = [[4i64, 6, 2], [6, 9, 3], [1, 5, 7]]
            .iter()
            .map(|r| r.iter().map(|&v| Integer::from(v)).collect())
            .collect();
        let Diagonalization { u, v, d } = diagonalize(&a);
        let mul = |x: &IntMat, y: &IntMat| -> IntMat {
            x.iter()
                .map(|row| {
                    (0..y[0].len())
                        .map(|j| {
                            row.iter()
                                .zip(y)
                                .fold(Integer::zero(), |acc, (p, r)| &acc + &(p * &r[j]))
                        })
                        .collect()
                })
                .collect()
        };
        assert_eq!(mul(&mul(&u, &a), &v), d);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(d[i][j].is_zero());
                }
            }
        }
    }
}
