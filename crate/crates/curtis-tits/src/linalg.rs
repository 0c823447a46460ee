//! Small exact linear algebra over GF(q): row reduction, kernels, spans and
//! subspace comparisons. Subspaces are kept in reduced row-echelon form so
//! equality is structural.

use crate::field::{FieldCtx, FieldElem};

pub type Vector = Vec<FieldElem>;

/// A subspace of k^n as a canonical RREF row basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subspace {
    pub dim_ambient: usize,
    pub basis: Vec<Vector>,
}

fn rref(ctx: &FieldCtx, rows: &mut Vec<Vector>) {
    if rows.is_empty() {
        return;
    }
    let ncols = rows[0].len();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        let Some(src) = (pivot_row..rows.len()).find(|&r| !ctx.is_zero(rows[r][col])) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = ctx.inv(rows[pivot_row][col]).unwrap();
        for cell in rows[pivot_row].iter_mut() {
            *cell = ctx.mul(*cell, inv);
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !ctx.is_zero(row[col]) {
                let f = row[col];
                for (cell, p) in row.iter_mut().zip(&pivot) {
                    *cell = ctx.sub(*cell, ctx.mul(f, *p));
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|e| !ctx.is_zero(*e)));
}

impl Subspace {
    pub fn from_spanning(ctx: &FieldCtx, vectors: &[Vector], dim_ambient: usize) -> Subspace {
        let mut rows: Vec<Vector> = vectors.to_vec();
        rref(ctx, &mut rows);
        Subspace {
            dim_ambient,
            basis: rows,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, ctx: &FieldCtx, v: &Vector) -> bool {
        let mut v = v.clone();
        for row in &self.basis {
            let col = row.iter().position(|e| !ctx.is_zero(*e)).unwrap();
            if !ctx.is_zero(v[col]) {
                let f = v[col];
                for (c, cell) in v.iter_mut().enumerate() {
                    *cell = ctx.sub(*cell, ctx.mul(f, row[c]));
                }
            }
        }
        v.iter().all(|e| ctx.is_zero(*e))
    }

    pub fn contains_subspace(&self, ctx: &FieldCtx, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(ctx, v))
    }

    /// Intersection via the kernel of the stacked coefficient system.
    pub fn intersect(&self, ctx: &FieldCtx, other: &Subspace) -> Subspace {
        // x in both spans: x = sum a_i u_i = sum b_j w_j; solve for (a, b) in the
        // kernel of [U^t | -W^t] and read off x from the a-part.
        let n = self.dim_ambient;
        let a = self.dim();
        let b = other.dim();
        if a == 0 || b == 0 {
            return Subspace {
                dim_ambient: n,
                basis: vec![],
            };
        }
        let mut rows: Vec<Vector> = Vec::with_capacity(n);
        for coord in 0..n {
            let mut row = Vec::with_capacity(a + b);
            for u in &self.basis {
                row.push(u[coord]);
            }
            for w in &other.basis {
                row.push(ctx.neg(w[coord]));
            }
            rows.push(row);
        }
        let null = kernel_of_rows(ctx, &rows, a + b);
        let mut vectors = Vec::new();
        for sol in null {
            let mut x = vec![ctx.zero(); n];
            for (i, u) in self.basis.iter().enumerate() {
                for c in 0..n {
                    x[c] = ctx.add(x[c], ctx.mul(sol[i], u[c]));
                }
            }
            vectors.push(x);
        }
        Subspace::from_spanning(ctx, &vectors, n)
    }

    /// First basis vector, normalized; panics on the zero space.
    pub fn a_vector(&self) -> &Vector {
        &self.basis[0]
    }
}

/// Kernel of the linear map given by `rows` (each row is one equation over the
/// unknowns), returned as a basis of solution vectors of length `ncols`.
pub fn kernel_of_rows(ctx: &FieldCtx, rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut mat: Vec<Vector> = rows.to_vec();
    rref(ctx, &mut mat);
    let mut pivot_cols = Vec::new();
    for row in &mat {
        pivot_cols.push(row.iter().position(|e| !ctx.is_zero(*e)).unwrap());
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![ctx.zero(); ncols];
        v[free] = ctx.one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = ctx.neg(mat[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Kernel of (M - I): the fixed space of the matrix acting on column vectors.
pub fn fixed_space(ctx: &FieldCtx, mats: &[crate::matrix::Mat]) -> Subspace {
    let n = mats.first().map(|m| m.n).unwrap_or(0);
    let mut rows = Vec::new();
    for m in mats {
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut e = *m.at(i, j);
                if i == j {
                    e = ctx.sub(e, ctx.one());
                }
                row.push(e);
            }
            rows.push(row);
        }
    }
    let basis = kernel_of_rows(ctx, &rows, n);
    Subspace::from_spanning(ctx, &basis, n)
}

/// Span of the column images of (M - I) over all given matrices: the smallest
/// subspace containing every displacement v - Mv.
pub fn moved_space(ctx: &FieldCtx, mats: &[crate::matrix::Mat]) -> Subspace {
    let n = mats.first().map(|m| m.n).unwrap_or(0);
    let mut vectors = Vec::new();
    for m in mats {
        for j in 0..n {
            let mut col = Vec::with_capacity(n);
            for i in 0..n {
                let mut e = *m.at(i, j);
                if i == j {
                    e = ctx.sub(e, ctx.one());
                }
                col.push(e);
            }
            vectors.push(col);
        }
    }
    Subspace::from_spanning(ctx, &vectors, n)
}

/// Eigenspace of `m` for eigenvalue `lambda`, i.e. ker(m - lambda I).
pub fn eigenspace(ctx: &FieldCtx, m: &crate::matrix::Mat, lambda: FieldElem) -> Subspace {
    let n = m.n;
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = *m.at(i, j);
            if i == j {
                e = ctx.sub(e, lambda);
            }
            row.push(e);
        }
        rows.push(row);
    }
    let basis = kernel_of_rows(ctx, &rows, n);
    Subspace::from_spanning(ctx, &basis, n)
}

/// Apply a matrix to a column vector.
pub fn apply(ctx: &FieldCtx, m: &crate::matrix::Mat, v: &Vector) -> Vector {
    let n = m.n;
    let mut out = vec![ctx.zero(); n];
    for (i, cell) in out.iter_mut().enumerate() {
        for (j, coord) in v.iter().enumerate() {
            *cell = ctx.add(*cell, ctx.mul(*m.at(i, j), *coord));
        }
    }
    out
}

/// Whether the matrix maps the subspace into itself.
pub fn preserves(ctx: &FieldCtx, m: &crate::matrix::Mat, s: &Subspace) -> bool {
    s.basis.iter().all(|v| s.contains(ctx, &apply(ctx, m, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{root_elem, Matrix};

    fn gf4() -> FieldCtx {
        FieldCtx::new(2, 2).unwrap()
    }

    #[test]
    fn fixed_and_moved_spaces_of_the_upper_left_block() {
        let ctx = gf4();
        let gens = vec![
            root_elem(&ctx, 3, 1, 2, ctx.one()).unwrap(),
            root_elem(&ctx, 3, 1, 2, ctx.gen_x()).unwrap(),
            root_elem(&ctx, 3, 2, 1, ctx.one()).unwrap(),
        ];
        let fixed = fixed_space(&ctx, &gens);
        assert_eq!(fixed.dim(), 1);
        assert!(fixed.contains(&ctx, &vec![ctx.zero(), ctx.zero(), ctx.one()]));
        let moved = moved_space(&ctx, &gens);
        assert_eq!(moved.dim(), 2);
        assert!(moved.contains(&ctx, &vec![ctx.one(), ctx.zero(), ctx.zero()]));
        assert!(!moved.contains(&ctx, &vec![ctx.zero(), ctx.zero(), ctx.one()]));
    }

    #[test]
    fn intersection_and_membership() {
        let ctx = gf4();
        let e1 = vec![ctx.one(), ctx.zero(), ctx.zero()];
        let e2 = vec![ctx.zero(), ctx.one(), ctx.zero()];
        let e3 = vec![ctx.zero(), ctx.zero(), ctx.one()];
        let v12 = Subspace::from_spanning(&ctx, &[e1.clone(), e2.clone()], 3);
        let v23 = Subspace::from_spanning(&ctx, &[e2.clone(), e3.clone()], 3);
        let cap = v12.intersect(&ctx, &v23);
        assert_eq!(cap.dim(), 1);
        assert!(cap.contains(&ctx, &e2));
        assert!(!cap.contains(&ctx, &e1));
    }

    #[test]
    fn eigenspaces_of_a_diagonal_torus_element() {
        let ctx = gf4();
        let alpha = ctx.primitive();
        let ainv = ctx.inv(alpha).unwrap();
        let d = Matrix::from_rows(vec![
            vec![alpha, ctx.zero(), ctx.zero()],
            vec![ctx.zero(), ainv, ctx.zero()],
            vec![ctx.zero(), ctx.zero(), ctx.one()],
        ]);
        for (lam, coord) in [(alpha, 0usize), (ainv, 1), (ctx.one(), 2)] {
            let es = eigenspace(&ctx, &d, lam);
            assert_eq!(es.dim(), 1);
            let mut v = vec![ctx.zero(); 3];
            v[coord] = ctx.one();
            assert!(es.contains(&ctx, &v));
        }
    }
}
