use super::{LinalgError, Matrix};
use crate::rings::{Ring, RingElem, RingSpec};

pub fn det(a: &Matrix) -> Result<RingElem, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare(a.rows(), a.cols()));
    }
    let ring = a.ring();
    let n = a.rows();
    if n <= 3 {
        return Ok(cofactor_det(a));
    }
    match ring.spec() {
        RingSpec::PrimeField(_) => Ok(gauss_det(a)),
        RingSpec::Integers => Ok(bareiss_det(a)),
        RingSpec::Polynomial { base, .. } if **base == RingSpec::Integers => Ok(bareiss_det(a)),
        _ => {
            // lift to ℤ or ℤ[x…], where the determinant is a polynomial identity
            let lifted = a.map_ring(&integer_lift(ring))?;
            Ok(ring.coerce(&bareiss_det(&lifted))?)
        }
    }
}

/// ℤ, or the polynomial ring over ℤ in the same variables.
fn integer_lift(ring: &Ring) -> Ring {
    if ring.is_polynomial() {
        let vars: Vec<&str> = ring.var_names().iter().map(String::as_str).collect();
        Ring::polynomial(&Ring::integers(), &vars).expect("valid variables")
    } else {
        Ring::integers()
    }
}

fn cofactor_det(a: &Matrix) -> RingElem {
    let ring = a.ring();
    match a.rows() {
        0 => ring.one(),
        1 => a.get(0, 0).clone(),
        2 => &(a.get(0, 0) * a.get(1, 1)) - &(a.get(0, 1) * a.get(1, 0)),
        n => {
            let mut acc = ring.zero();
            for c in 0..n {
                if a.get(0, c).is_zero() {
                    continue;
                }
                let rows: Vec<usize> = (1..n).collect();
                let cols: Vec<usize> = (0..n).filter(|&k| k != c).collect();
                let t = a.get(0, c) * &cofactor_det(&a.submatrix(&rows, &cols));
                acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

fn gauss_det(a: &Matrix) -> RingElem {
    let ring = a.ring();
    let n = a.rows();
    let mut m = a.to_rows();
    let mut acc = ring.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return ring.zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -&acc;
        }
        acc = &acc * &m[c][c];
        let inv = m[c][c].inverse().expect("nonzero field element");
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for k in c..n {
                let v = &m[r][k] - &(&f * &m[c][k]);
                m[r][k] = v;
            }
        }
    }
    acc
}

/// Fraction-free elimination; every division is exact over ℤ and ℤ[x…].
fn bareiss_det(a: &Matrix) -> RingElem {
    let ring = a.ring();
    let n = a.rows();
    let mut m = a.to_rows();
    let mut sign = false;
    let mut prev = ring.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return ring.zero();
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact_z(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = ring.zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Determinant of the submatrix on rows `rows` and columns `cols`, both
/// 1-based and taken in ascending order.
pub fn minor(a: &Matrix, rows: &[usize], cols: &[usize]) -> Result<RingElem, LinalgError> {
    if rows.len() != cols.len() {
        return Err(LinalgError::Shape(format!(
            "minor needs |I| = |J|, got {} and {}",
            rows.len(),
            cols.len()
        )));
    }
    let check = |idx: &[usize], bound: usize| -> Result<Vec<usize>, LinalgError> {
        let mut v = idx.to_vec();
        v.sort_unstable();
        v.iter()
            .map(|&i| {
                if i == 0 || i > bound {
                    Err(LinalgError::IndexOutOfRange(i, bound))
                } else {
                    Ok(i - 1)
                }
            })
            .collect()
    };
    let r = check(rows, a.rows())?;
    let c = check(cols, a.cols())?;
    det(&a.submatrix(&r, &c))
}

pub fn mat_inverse(a: &Matrix) -> Result<Matrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare(a.rows(), a.cols()));
    }
    if a.ring().is_field() {
        return gauss_jordan_inverse(a);
    }
    let d = det(a)?;
    let dinv = d.inverse().ok_or(LinalgError::NotInvertible)?;
    let n = a.rows();
    let mut out = Matrix::zeros(a.ring(), n, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&k| k != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let c = det(&a.submatrix(&rows, &cols))?;
            let c = if (i + j) % 2 == 0 { c } else { -&c };
            out.set(i, j, &c * &dinv);
        }
    }
    Ok(out)
}

fn gauss_jordan_inverse(a: &Matrix) -> Result<Matrix, LinalgError> {
    let ring = a.ring();
    let n = a.rows();
    let mut m = a.to_rows();
    let mut inv = Matrix::identity(ring, n).to_rows();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !m[r][c].is_zero())
            .ok_or(LinalgError::NotInvertible)?;
        m.swap(p, c);
        inv.swap(p, c);
        let s = m[c][c].inverse().expect("nonzero field element");
        for k in 0..n {
            m[c][k] = &m[c][k] * &s;
            inv[c][k] = &inv[c][k] * &s;
        }
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for k in 0..n {
                let v = &m[r][k] - &(&f * &m[c][k]);
                m[r][k] = v;
                let w = &inv[r][k] - &(&f * &inv[c][k]);
                inv[r][k] = w;
            }
        }
    }
    Matrix::from_rows(ring, inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_determinants() {
        let z = Ring::integers();
        assert_eq!(det(&Matrix::identity(&z, 4)).unwrap(), z.one());
        assert_eq!(
            det(&Matrix::from_ints(&z, &[vec![2, 0], vec![0, 3]])).unwrap(),
            z.int(6)
        );
        assert!(matches!(
            det(&Matrix::zeros(&z, 2, 3)),
            Err(LinalgError::NotSquare(2, 3))
        ));
    }

    #[test]
    fn elimination_paths_agree_with_cofactors() {
        let rows = vec![
            vec![3, 1, 4, 1, 5],
            vec![9, 2, 6, 5, 3],
            vec![5, 8, 9, 7, 9],
            vec![3, 2, 3, 8, 4],
            vec![6, 2, 6, 4, 3],
        ];
        let z = Ring::integers();
        let a = Matrix::from_ints(&z, &rows);
        let expected = slow_det(&a);
        assert_eq!(det(&a).unwrap(), expected);
        for r in [Ring::fp(7).unwrap(), Ring::zmod(9).unwrap()] {
            let b = Matrix::from_ints(&r, &rows);
            assert_eq!(det(&b).unwrap(), r.coerce(&expected).unwrap());
        }
    }

    fn slow_det(a: &Matrix) -> RingElem {
        let n = a.rows();
        if n == 1 {
            return a.get(0, 0).clone();
        }
        let mut acc = a.ring().zero();
        for c in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&k| k != c).collect();
            let t = a.get(0, c) * &slow_det(&a.submatrix(&rows, &cols));
            acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    #[test]
    fn symbolic_minor() {
        let p = "poly:a11,a12,a21,a22@z".parse::<Ring>().unwrap();
        let v = |s: &str| p.var(s).unwrap();
        let a = Matrix::from_rows(&p, vec![vec![v("a11"), v("a12")], vec![v("a21"), v("a22")]])
            .unwrap();
        let expected = &(&v("a11") * &v("a22")) - &(&v("a12") * &v("a21"));
        assert_eq!(minor(&a, &[1, 2], &[1, 2]).unwrap(), expected);
        let e = Matrix::identity(&p, 3);
        assert_eq!(minor(&e, &[1, 2], &[1, 3]).unwrap(), p.zero());
        assert!(matches!(
            minor(&e, &[1, 4], &[1, 2]),
            Err(LinalgError::IndexOutOfRange(4, 3))
        ));
    }

    #[test]
    fn symbolic_bareiss_over_residue_polynomials() {
        let p = "poly:x@zmod:9".parse::<Ring>().unwrap();
        let x = p.var("x").unwrap();
        let mut a = Matrix::identity(&p, 5);
        a.set(0, 4, x.clone());
        a.set(4, 0, x.clone());
        // det = 1 - x^2
        assert_eq!(det(&a).unwrap(), &p.one() - &(&x * &x));
    }

    #[test]
    fn inverses() {
        let z = Ring::integers();
        let a = Matrix::from_ints(&z, &[vec![2, 0], vec![0, 1]]);
        assert!(matches!(mat_inverse(&a), Err(LinalgError::NotInvertible)));
        let r = Ring::zmod(8).unwrap();
        let b = Matrix::from_ints(
            &r,
            &[
                vec![3, 2, 0, 1],
                vec![1, 1, 0, 0],
                vec![0, 5, 1, 2],
                vec![2, 0, 0, 1],
            ],
        );
        let bi = mat_inverse(&b).unwrap();
        assert!((&b * &bi).is_identity());
        let f = Ring::fp(7).unwrap();
        let c = Matrix::from_ints(&f, &[vec![0, 1], vec![3, 4]]);
        assert!((&c * &mat_inverse(&c).unwrap()).is_identity());
    }
}
