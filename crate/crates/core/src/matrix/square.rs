use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Coefficient, GaussianRational};
use crate::{Error, Result};

/// Dense square matrix over the Gaussian rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SqMatrix {
    dim: usize,
    entries: Vec<GaussianRational>,
}

impl SqMatrix {
    pub fn zero(dim: usize) -> Self {
        SqMatrix { dim, entries: vec![GaussianRational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(SqMatrix { dim, entries })
    }

    /// Integer matrix; panics when the rows are ragged.
    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows =
            rows.iter().map(|r| r.as_ref().iter().map(|&v| GaussianRational::from_integer(v)).collect()).collect();
        Self::from_rows(rows).expect("square integer matrix")
    }

    pub fn from_fn<F: FnMut(usize, usize) -> GaussianRational>(dim: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        SqMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<GaussianRational>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.dim).fold(GaussianRational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        SqMatrix { dim: self.dim, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    fn check_dim(&self, rhs: &Self) {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
    }

    fn add_ref(a: &Self, b: &Self) -> Self {
        a.check_dim(b);
        SqMatrix { dim: a.dim, entries: a.entries.iter().zip(&b.entries).map(|(x, y)| x + y).collect() }
    }

    fn sub_ref(a: &Self, b: &Self) -> Self {
        a.check_dim(b);
        SqMatrix { dim: a.dim, entries: a.entries.iter().zip(&b.entries).map(|(x, y)| x - y).collect() }
    }

    fn mul_ref(a: &Self, b: &Self) -> Self {
        a.check_dim(b);
        let n = a.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let aik = a.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let bkj = b.get(k, j);
                    if !bkj.is_zero() {
                        out.entries[i * n + j] = &out.entries[i * n + j] + &(aik * bkj);
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan elimination; returns the inverse and the determinant.
    fn eliminate(&self) -> (Option<SqMatrix>, GaussianRational) {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return (None, GaussianRational::zero());
            };
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a.get(col, col).clone();
            det = &det * &p;
            let p_inv = p.inv().expect("nonzero pivot");
            for j in 0..n {
                a.entries[col * n + j] = &a.entries[col * n + j] * &p_inv;
                inv.entries[col * n + j] = &inv.entries[col * n + j] * &p_inv;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let da = &factor * a.get(col, j);
                    let di = &factor * inv.get(col, j);
                    a.entries[r * n + j] = &a.entries[r * n + j] - &da;
                    inv.entries[r * n + j] = &inv.entries[r * n + j] - &di;
                }
            }
        }
        (Some(inv), det)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.eliminate().0.ok_or(Error::Singular("matrix"))
    }

    pub fn det(&self) -> GaussianRational {
        self.eliminate().1
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }
}

forward_binop!(SqMatrix, Add, add, SqMatrix::add_ref);
forward_binop!(SqMatrix, Sub, sub, SqMatrix::sub_ref);
forward_binop!(SqMatrix, Mul, mul, SqMatrix::mul_ref);

impl std::ops::Neg for &SqMatrix {
    type Output = SqMatrix;
    fn neg(self) -> SqMatrix {
        SqMatrix { dim: self.dim, entries: self.entries.iter().map(|x| -x).collect() }
    }
}

impl std::ops::Neg for SqMatrix {
    type Output = SqMatrix;
    fn neg(self) -> SqMatrix {
        -&self
    }
}

impl Coefficient for SqMatrix {
    fn zero_like(&self) -> Self {
        Self::zero(self.dim)
    }
    fn one_like(&self) -> Self {
        Self::identity(self.dim)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &GaussianRational) -> Self {
        self.scale(c)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl fmt::Display for SqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for SqMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SqMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<GaussianRational>>::deserialize(d)?;
        SqMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
