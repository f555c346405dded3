//! `F_p`-linear maps on `F_q` as `e × e` matrices, solved by Gaussian
//! elimination.

use alloc::vec::Vec;

use super::{ExtElement, FieldContext};
use crate::arith::inv_mod;

/// Affine solution set `particular + span(kernel_basis)`, or empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub particular: Option<ExtElement>,
    pub kernel_basis: Vec<ExtElement>,
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn len(&self, p: u32) -> u64 {
        match self.particular {
            Some(_) => (p as u64).pow(self.kernel_basis.len() as u32),
            None => 0,
        }
    }

    /// Every element of the affine set.
    pub fn elements(&self, ctx: &FieldContext) -> Vec<ExtElement> {
        let Some(base) = self.particular else {
            return Vec::new();
        };
        let mut out = alloc::vec![base];
        for &v in &self.kernel_basis {
            let mut next = Vec::with_capacity(out.len() * ctx.p() as usize);
            for &x in &out {
                let mut y = x;
                for _ in 0..ctx.p() {
                    next.push(y);
                    y = ctx.add(y, v);
                }
            }
            out = next;
        }
        out
    }
}

/// Matrix of an `F_p`-linear map `F_q → F_q`; column `j` holds the image of
/// the basis element `X^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    p: u32,
    /// Row-major, `rows[i][j]` = coordinate `i` of the image of `X^j`.
    rows: Vec<Vec<u32>>,
}

impl LinearMap {
    #[allow(clippy::needless_range_loop)]
    pub fn from_fn(ctx: &FieldContext, f: impl Fn(ExtElement) -> ExtElement) -> Self {
        let e = ctx.e() as usize;
        let mut rows = alloc::vec![alloc::vec![0u32; e]; e];
        let mut basis = 1u32;
        for j in 0..e {
            let image = ctx.coeffs(f(ExtElement::from_index(basis)));
            for (i, c) in image.into_iter().enumerate() {
                rows[i][j] = c;
            }
            basis *= ctx.p();
        }
        LinearMap { p: ctx.p(), rows }
    }

    pub fn apply(&self, ctx: &FieldContext, x: ExtElement) -> ExtElement {
        let xc = ctx.coeffs(x);
        let out: Vec<u32> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&xc)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % self.p as u64)
                    as u32
            })
            .collect();
        ctx.element(&out).expect("coordinates are residues")
    }

    pub fn rank(&self) -> usize {
        let mut m = self.rows.clone();
        reduce(&mut m, self.p, self.rows.len()).len()
    }

    /// Number of elements in the image, `p^rank`.
    pub fn image_size(&self) -> u64 {
        (self.p as u64).pow(self.rank() as u32)
    }

    pub fn is_bijective(&self) -> bool {
        self.rank() == self.rows.len()
    }

    /// Full solution set of `M x = rhs`.
    pub fn solve(&self, ctx: &FieldContext, rhs: ExtElement) -> SolutionSet {
        let e = self.rows.len();
        let p = self.p;
        let rc = ctx.coeffs(rhs);
        let mut aug: Vec<Vec<u32>> = self
            .rows
            .iter()
            .zip(&rc)
            .map(|(row, &r)| {
                let mut v = row.clone();
                v.push(r);
                v
            })
            .collect();
        let pivots = reduce(&mut aug, p, e);

        // inconsistent row: zero coefficients, nonzero right-hand side
        let consistent = aug[pivots.len()..].iter().all(|row| row[e] == 0);

        let pivot_of_col = |col: usize| pivots.iter().position(|&c| c == col);
        let free: Vec<usize> = (0..e).filter(|&c| pivot_of_col(c).is_none()).collect();

        let to_elem = |coords: &[u32]| ctx.element(coords).expect("residues");
        let particular = consistent.then(|| {
            let mut x = alloc::vec![0u32; e];
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = aug[r][e];
            }
            to_elem(&x)
        });
        let kernel_basis = free
            .iter()
            .map(|&fc| {
                let mut x = alloc::vec![0u32; e];
                x[fc] = 1;
                for (r, &c) in pivots.iter().enumerate() {
                    x[c] = (p - aug[r][fc]) % p;
                }
                to_elem(&x)
            })
            .collect();
        SolutionSet {
            particular,
            kernel_basis,
        }
    }
}

/// Reduced row echelon form over `F_p` on the first `ncols` columns.
/// Returns the pivot column of each leading row.
fn reduce(m: &mut [Vec<u32>], p: u32, ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(sel) = (r..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, sel);
        let inv = inv_mod(m[r][col] as u64, p as u64) as u32;
        for v in m[r].iter_mut() {
            *v = (*v as u64 * inv as u64 % p as u64) as u32;
        }
        for i in 0..nrows {
            if i != r && m[i][col] != 0 {
                let factor = m[i][col];
                for j in 0..m[i].len() {
                    let sub = (factor as u64 * m[r][j] as u64 % p as u64) as u32;
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solvable_counts_when_ratio_even() {
        // (p, m, α) = (3, 4, 1): e = 8, d = 1
        let ctx = FieldContext::new(3, 8, None).unwrap();
        let map = ctx.linearized_map(1);
        assert_eq!(map.rank(), 6);
        let mut solvable = 0;
        for b in ctx.elements() {
            let sol = ctx.linearized_solve(1, b);
            if let Some(x0) = sol.particular {
                solvable += 1;
                assert_eq!(sol.kernel_basis.len(), 2);
                assert_eq!(sol.len(3), 9);
                assert_eq!(map.apply(&ctx, x0), ctx.neg(ctx.frobenius(b, 1)));
            }
        }
        assert_eq!(solvable, 729);
    }

    #[test]
    fn solution_set_elements_all_solve() {
        let ctx = FieldContext::new(3, 4, None).unwrap();
        let map = ctx.linearized_map(1);
        for b in ctx.elements() {
            let sol = ctx.linearized_solve(1, b);
            let rhs = ctx.neg(ctx.frobenius(b, 1));
            let members = sol.elements(&ctx);
            assert_eq!(members.len() as u64, sol.len(3));
            for x in &members {
                assert_eq!(map.apply(&ctx, *x), rhs);
            }
            // exhaustive search agrees on the count
            let brute = ctx.elements().filter(|&x| map.apply(&ctx, x) == rhs).count();
            assert_eq!(brute, members.len());
        }
    }
}
