//! Abelianization: exponent vectors and Smith normal form.
//!
//! The Smith normal form routine is generic over the integer scalar. Every
//! arithmetic step is checked, so fixed-width scalars report
//! [`Error::Overflow`] instead of wrapping; `BigInt` never overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::Word;

/// Integer scalars usable by [`smith_normal_form`].
pub trait SnfScalar: Integer + Signed + Clone + CheckedAdd + CheckedSub + CheckedMul {}

impl<T> SnfScalar for T where T: Integer + Signed + Clone + CheckedAdd + CheckedSub + CheckedMul {}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntVector<T = i64> {
    pub entries: Vec<T>,
}

impl<T: SnfScalar> IntVector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        IntVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Precondition("vector lengths differ".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(IntVector { entries })
    }

    pub fn scaled(&self, k: &T) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(IntVector { entries })
    }
}

/// Rectangular integer matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix<T = i64> {
    rows: Vec<Vec<T>>,
    cols: usize,
}

impl<T: SnfScalar> IntMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Precondition("ragged matrix rows".into()));
        }
        Ok(IntMatrix { rows, cols })
    }

    pub fn from_vectors(vectors: &[IntVector<T>]) -> Result<Self> {
        IntMatrix::from_rows(vectors.iter().map(|v| v.entries.clone()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() || self.cols == 0
    }

    pub fn map<U: SnfScalar>(&self, f: impl Fn(&T) -> U) -> IntMatrix<U> {
        IntMatrix {
            rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
            cols: self.cols,
        }
    }
}

/// Signed generator counts of `w`.
pub fn exponent_vector(w: &Word) -> IntVector<i64> {
    let mut entries = vec![0i64; w.alphabet().rank()];
    for l in w.letters() {
        entries[l.generator()] += l.sign() as i64;
    }
    IntVector { entries }
}

fn checked_abs<T: SnfScalar>(v: &T) -> Result<T> {
    if v.is_negative() {
        T::zero().checked_sub(v).ok_or(Error::Overflow)
    } else {
        Ok(v.clone())
    }
}

fn checked_div_floor<T: SnfScalar>(a: &T, b: &T) -> Result<T> {
    if *b == -T::one() {
        return T::zero().checked_sub(a).ok_or(Error::Overflow);
    }
    Ok(a.div_floor(b))
}

fn sub_mul<T: SnfScalar>(a: &T, q: &T, b: &T) -> Result<T> {
    let p = q.checked_mul(b).ok_or(Error::Overflow)?;
    a.checked_sub(&p).ok_or(Error::Overflow)
}

/// `row[dst] -= q * row[src]`
fn row_reduce<T: SnfScalar>(m: &mut [Vec<T>], dst: usize, src: usize, q: &T, from: usize) -> Result<()> {
    for j in from..m[dst].len() {
        let v = sub_mul(&m[dst][j], q, &m[src][j])?;
        m[dst][j] = v;
    }
    Ok(())
}

/// `col[dst] -= q * col[src]`
fn col_reduce<T: SnfScalar>(m: &mut [Vec<T>], dst: usize, src: usize, q: &T, from: usize) -> Result<()> {
    for row in m.iter_mut().skip(from) {
        let v = sub_mul(&row[dst], q, &row[src])?;
        row[dst] = v;
    }
    Ok(())
}

/// Elementary divisors `d₁ | d₂ | …` of `m`, nonnegative with zeros last.
/// The list has `min(rows, cols)` entries.
pub fn smith_normal_form<T: SnfScalar>(m: &IntMatrix<T>) -> Result<Vec<T>> {
    if m.is_empty() {
        return Err(Error::Degenerate("empty matrix".into()));
    }
    let mut a: Vec<Vec<T>> = m.rows.clone();
    let (nr, nc) = (m.nrows(), m.ncols());
    let steps = nr.min(nc);
    let mut divisors = Vec::with_capacity(steps);
    for t in 0..steps {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut pivot: Option<(usize, usize, T)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if v.is_zero() {
                    continue;
                }
                let size = checked_abs(v)?;
                if pivot.as_ref().is_none_or(|(_, _, best)| size < *best) {
                    pivot = Some((i, j, size));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else {
            divisors.extend(std::iter::repeat_with(T::zero).take(steps - t));
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = checked_div_floor(&a[i][t], &a[t][t])?;
                row_reduce(&mut a, i, t, &q, t)?;
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = checked_div_floor(&a[t][j], &a[t][t])?;
                col_reduce(&mut a, j, t, &q, t)?;
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // the pivot must divide the whole trailing block
            let unit = a[t][t].is_one() || a[t][t] == -T::one();
            let offender = if unit {
                None
            } else {
                (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].is_multiple_of(&a[t][t])))
            };
            match offender {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t].iter_mut().zip(&rest[0]).skip(t) {
                        *x = x.checked_add(y).ok_or(Error::Overflow)?;
                    }
                }
                None => break,
            }
        }
        divisors.push(checked_abs(&a[t][t])?);
    }
    Ok(divisors)
}

/// Whether the vectors extend to a basis of the integer lattice `ℤʳ`.
///
/// Runs on `BigInt` so the answer never depends on overflow.
pub fn is_basis_extendable_abelian(vectors: &[IntVector<i64>]) -> Result<bool> {
    if vectors.is_empty() {
        return Err(Error::Degenerate("no vectors".into()));
    }
    let m = IntMatrix::from_vectors(vectors)?;
    if m.ncols() == 0 {
        return Err(Error::Degenerate("zero-length vectors".into()));
    }
    if vectors.len() > m.ncols() {
        return Ok(false);
    }
    let big: IntMatrix<BigInt> = m.map(|&x| BigInt::from(x));
    let divisors = smith_normal_form(&big)?;
    let one = BigInt::from(1);
    let nonzero = divisors.iter().filter(|d| !d.is_zero()).count();
    Ok(nonzero == vectors.len() && divisors.iter().all(|d| *d == one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn mat(rows: &[&[i64]]) -> IntMatrix<i64> {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn exponent_vector_examples() {
        let a = Alphabet::parse("a0,b0,c0").unwrap();
        let v = exponent_vector(&Word::parse("a0 b0 a0", &a).unwrap());
        assert_eq!(v.entries, vec![2, 1, 0]);
        let d0 = Word::parse("c0^-1 b0 a0 b0^-1 a0^-1", &a).unwrap();
        assert_eq!(exponent_vector(&d0).entries, vec![0, 0, -1]);
        let x = Word::parse("a0 c0^2 b0", &a).unwrap();
        let y = Word::parse("b0^-1 c0", &a).unwrap();
        assert!(exponent_vector(&Word::commutator(&x, &y).unwrap()).is_zero());
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&mat(&[&[2, 0], &[0, 1]])).unwrap(), vec![1, 2]);
        assert_eq!(smith_normal_form(&mat(&[&[1, 0], &[0, 1]])).unwrap(), vec![1, 1]);
        assert_eq!(smith_normal_form(&mat(&[&[1, 0, 0], &[-1, 0, 0]])).unwrap(), vec![1, 0]);
        assert_eq!(smith_normal_form(&mat(&[&[2, 0], &[0, 3]])).unwrap(), vec![1, 6]);
        assert_eq!(smith_normal_form(&mat(&[&[0, 0], &[0, 0]])).unwrap(), vec![0, 0]);
        assert_eq!(smith_normal_form(&mat(&[&[4, 6]])).unwrap(), vec![2]);
        assert!(smith_normal_form(&mat(&[])).is_err());
    }

    #[test]
    fn snf_overflow_is_an_error() {
        let m = mat(&[&[i64::MAX, 3], &[i64::MAX - 1, 7]]);
        match smith_normal_form(&m) {
            Err(Error::Overflow) | Ok(_) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
        let big = m.map(|&x| BigInt::from(x));
        assert!(smith_normal_form(&big).is_ok());
        let tiny: IntMatrix<i8> = IntMatrix::from_rows(vec![vec![127, 126], vec![-128, 127]]).unwrap();
        assert_eq!(smith_normal_form(&tiny), Err(Error::Overflow));
    }

    #[test]
    fn extendable_examples() {
        let v = |e: &[i64]| IntVector::new(e.to_vec());
        assert!(is_basis_extendable_abelian(&[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap());
        assert!(!is_basis_extendable_abelian(&[v(&[1, 0, 0]), v(&[-1, 0, 0])]).unwrap());
        assert!(!is_basis_extendable_abelian(&[v(&[2, 0])]).unwrap());
        assert!(is_basis_extendable_abelian(&[v(&[2, 3])]).unwrap());
        assert!(is_basis_extendable_abelian(&[]).is_err());
    }
}
