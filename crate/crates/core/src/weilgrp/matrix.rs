use std::fmt;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{make_field, FieldElem, FieldSpec};

/// A square matrix over a finite field, entries stored as element codes in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct FFMat {
    field: FieldSpec,
    n: usize,
    entries: Vec<u32>,
}

/// Which field a fixed-space dimension is measured over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Over {
    Native,
    PrimeSubfield,
}

/// The invariant form a matrix is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Form {
    /// `gᵀ J g = J` with `J = [[0, I], [−I, 0]]` in a Witt basis.
    Symplectic,
    /// `ḡᵀ g = I` with `x̄ = x^q`, `q² = #field`.
    Hermitian,
}

impl FFMat {
    pub fn new(field: &FieldSpec, n: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Dimension(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        if entries.iter().any(|&c| c as u64 >= field.size()) {
            return Err(Error::Dimension(format!("entry code out of range for {field}")));
        }
        Ok(FFMat { field: field.clone(), n, entries })
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Result<Self> {
        let n = rows.len();
        let field = rows
            .first()
            .and_then(|r| r.first())
            .map(|x| x.field().clone())
            .ok_or_else(|| Error::Dimension("empty matrix".into()))?;
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::Dimension("matrix is not square".into()));
            }
            for x in r {
                if x.field() != &field {
                    return Err(Error::FieldMismatch(format!("{} vs {field}", x.field())));
                }
                entries.push(x.code());
            }
        }
        Ok(FFMat { field, n, entries })
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: &FieldSpec, n: usize, code: u32) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = code;
        }
        FFMat { field: field.clone(), n, entries }
    }

    /// Block diagonal `diag(a, b)`.
    pub fn block_diag(a: &FFMat, b: &FFMat) -> Result<Self> {
        a.same_field(b)?;
        let n = a.n + b.n;
        let mut entries = vec![0; n * n];
        for i in 0..a.n {
            entries[i * n..i * n + a.n].copy_from_slice(&a.entries[i * a.n..(i + 1) * a.n]);
        }
        for i in 0..b.n {
            let r = (a.n + i) * n + a.n;
            entries[r..r + b.n].copy_from_slice(&b.entries[i * b.n..(i + 1) * b.n]);
        }
        Ok(FFMat { field: a.field.clone(), n, entries })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn code(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.field.elem(self.code(i, j))
    }

    fn same_field(&self, o: &FFMat) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, o.field)));
        }
        Ok(())
    }

    pub fn checked_mul(&self, o: &FFMat) -> Result<FFMat> {
        self.same_field(o)?;
        if self.n != o.n {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.n, self.n, o.n, o.n)));
        }
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn mul_unchecked(&self, o: &FFMat) -> FFMat {
        let (n, f) = (self.n, &self.field);
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = o.entries[k * n + j];
                    if b != 0 {
                        let c = &mut entries[i * n + j];
                        *c = f.add_codes(*c, f.mul_codes(a, b));
                    }
                }
            }
        }
        FFMat { field: f.clone(), n, entries }
    }

    pub fn transpose(&self) -> FFMat {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.entries[(k % n) * n + k / n]).collect();
        FFMat { entries, ..self.clone() }
    }

    /// Applies `x ↦ x^e` entrywise.
    pub fn map_pow(&self, e: u128) -> FFMat {
        let entries = self.entries.iter().map(|&c| self.field.pow_code(c, e)).collect();
        FFMat { entries, ..self.clone() }
    }

    pub fn sub_identity(&self) -> FFMat {
        let mut m = self.clone();
        for i in 0..self.n {
            let c = &mut m.entries[i * self.n + i];
            *c = self.field.sub_codes(*c, 1);
        }
        m
    }

    /// Row echelon form in place; returns (rank, determinant code).
    fn eliminate(&self) -> (usize, u32) {
        let (n, f) = (self.n, &self.field);
        let mut a = self.entries.clone();
        let mut rank = 0;
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    a.swap(piv * n + j, rank * n + j);
                }
                det = f.neg_code(det);
            }
            let pv = a[rank * n + col];
            det = f.mul_codes(det, pv);
            let inv = f.inv_code(pv).expect("nonzero pivot");
            for r in rank + 1..n {
                let c = a[r * n + col];
                if c == 0 {
                    continue;
                }
                let k = f.mul_codes(c, inv);
                for j in col..n {
                    let t = f.mul_codes(k, a[rank * n + j]);
                    a[r * n + j] = f.sub_codes(a[r * n + j], t);
                }
            }
            rank += 1;
        }
        (rank, if rank == n { det } else { 0 })
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn det(&self) -> FieldElem {
        self.field.elem(self.eliminate().1)
    }

    pub fn inverse(&self) -> Result<FFMat> {
        let (n, f) = (self.n, &self.field);
        let w = 2 * n;
        let mut a = vec![0u32; n * w];
        for i in 0..n {
            a[i * w..i * w + n].copy_from_slice(&self.entries[i * n..(i + 1) * n]);
            a[i * w + n + i] = 1;
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * w + col] != 0).ok_or(Error::Singular)?;
            for j in 0..w {
                a.swap(piv * w + j, col * w + j);
            }
            let inv = f.inv_code(a[col * w + col]).expect("nonzero pivot");
            for j in 0..w {
                a[col * w + j] = f.mul_codes(a[col * w + j], inv);
            }
            for r in 0..n {
                let c = a[r * w + col];
                if r == col || c == 0 {
                    continue;
                }
                for j in 0..w {
                    let t = f.mul_codes(c, a[col * w + j]);
                    a[r * w + j] = f.sub_codes(a[r * w + j], t);
                }
            }
        }
        let entries = (0..n).flat_map(|i| a[i * w + n..(i + 1) * w].to_vec()).collect();
        Ok(FFMat { field: f.clone(), n, entries })
    }

    /// The matrix of this F_q-linear map viewed F_p-linearly on F_p^{nf},
    /// using the power basis 1, θ, …, θ^{f−1} in each coordinate.
    pub fn blow_up(&self) -> Result<FFMat> {
        let (n, f, fd) = (self.n, &self.field, self.field.f() as usize);
        let k = make_field(f.p(), 1)?;
        let big = n * fd;
        let mut entries = vec![0; big * big];
        let basis: Vec<u32> = (0..fd).map(|j| f.encode(&unit_digits(fd, j))).collect();
        for i in 0..n {
            for j in 0..n {
                let a = self.code(i, j);
                for (t, &b) in basis.iter().enumerate() {
                    let img = f.digits(f.mul_codes(a, b));
                    for (s, &d) in img.iter().enumerate() {
                        entries[(i * fd + s) * big + j * fd + t] = d as u32;
                    }
                }
            }
        }
        FFMat::new(&k, big, entries)
    }

    /// dim ker(g − 1), over the matrix field or over GF(p).
    pub fn fixed_dim(&self, over: Over) -> usize {
        let d = self.n - self.sub_identity().rank();
        match over {
            Over::Native => d,
            Over::PrimeSubfield => d * self.field.f() as usize,
        }
    }

    pub fn form_check(&self, form: Form) -> Result<bool> {
        let (n, f) = (self.n, &self.field);
        match form {
            Form::Symplectic => {
                if n % 2 != 0 {
                    return Err(Error::Dimension(format!("symplectic form needs even dimension, got {n}")));
                }
                let j = standard_j(f, n / 2);
                Ok(self.transpose().mul_unchecked(&j).mul_unchecked(self) == j)
            }
            Form::Hermitian => {
                if f.f() % 2 != 0 {
                    return Err(Error::FieldMismatch(format!("hermitian form needs a quadratic extension, got {f}")));
                }
                let q = (f.p() as u128).pow(f.f() / 2);
                let bar = self.map_pow(q).transpose();
                Ok(bar.mul_unchecked(self) == FFMat::identity(f, n))
            }
        }
    }
}

fn unit_digits(f: usize, j: usize) -> Vec<u64> {
    let mut d = vec![0; f];
    d[j] = 1;
    d
}

/// `J = [[0, I], [−I, 0]]` of size 2n.
pub fn standard_j(field: &FieldSpec, n: usize) -> FFMat {
    let m1 = field.neg_code(1);
    let d = 2 * n;
    let mut entries = vec![0; d * d];
    for i in 0..n {
        entries[i * d + n + i] = 1;
        entries[(n + i) * d + i] = m1;
    }
    FFMat { field: field.clone(), n: d, entries }
}

/// `(x_i) ↦ (x_i^r)` on `F_q^n` as an F_p-linear map.
pub fn frobenius_matrix(field: &FieldSpec, n: usize, r: u64) -> Result<FFMat> {
    arith::log_exact(r, field.p()).ok_or(Error::NotPPower(r))?;
    let fd = field.f() as usize;
    let k = make_field(field.p(), 1)?;
    let big = n * fd;
    let mut entries = vec![0; big * big];
    for i in 0..n {
        for t in 0..fd {
            let b = field.encode(&unit_digits(fd, t));
            let img = field.digits(field.pow_code(b, r as u128));
            for (s, &d) in img.iter().enumerate() {
                entries[(i * fd + s) * big + i * fd + t] = d as u32;
            }
        }
    }
    FFMat::new(&k, big, entries)
}

impl fmt::Debug for FFMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FFMat[{}]{:?}", self.field, self.entries)
    }
}

impl fmt::Display for FFMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Mul for &FFMat {
    type Output = FFMat;
    fn mul(self, o: &FFMat) -> FFMat {
        self.checked_mul(o).expect("matrix product across fields or dimensions")
    }
}
