//! Smith normal form with unimodular transforms.
//!
//! Pivoting always picks the nonzero entry of smallest absolute value in the
//! remaining block, ties broken by lowest row and then lowest column, so the
//! transforms are reproducible.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{inverse, rat_from_int, Int, IntMatrix, Rat};

/// `U · M · V = diag(d₁, …, d_k, 0, …)` with `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of length `min(rows, cols)`; nonnegative, zeros trailing.
    pub diag: Vec<Int>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix `U · M · V` as an explicit matrix.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.u.rows(), self.v.rows());
        for (i, x) in self.diag.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }

    /// Order of the torsion part of `Z^rows / M Z^cols` when `M` has full row rank.
    pub fn index(&self) -> Option<Int> {
        if self.rank() < self.u.rows() {
            return None;
        }
        Some(self.diag.iter().fold(Int::one(), |acc, d| acc * d))
    }

    /// Canonical label of the class of `v` in `Z^rows / M Z^cols`.
    ///
    /// Two vectors have equal labels iff their difference lies in the column
    /// lattice of `M`.
    pub fn class_label(&self, v: &[Int]) -> Vec<Int> {
        let y = self.u.mul_vec(v);
        y.into_iter()
            .enumerate()
            .map(|(i, yi)| match self.diag.get(i) {
                Some(d) if !d.is_zero() => yi.mod_floor(d),
                _ => yi,
            })
            .collect()
    }

    /// Whether `v` lies in the column lattice of `M`.
    pub fn lattice_contains(&self, v: &[Int]) -> bool {
        self.class_label(v).iter().all(Zero::is_zero)
    }

    /// Basis of the integer kernel `{x ∈ Z^cols : M x = 0}` (trailing columns of `V`).
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        let r = self.rank();
        (r..self.v.cols()).map(|j| self.v.column(j)).collect()
    }

    /// Coordinates of `M`'s columns in a basis of the lattice they generate.
    ///
    /// Returns an `r × cols` integer matrix `C` with `M = B · C` for a basis
    /// `B` of `Z M`; the columns of `C` generate `Z^r`.
    pub fn lattice_coordinate_matrix(&self) -> IntMatrix {
        let r = self.rank();
        let v_inv = unimodular_inverse(&self.v);
        let mut c = IntMatrix::zeros(r, self.v.rows());
        for i in 0..r {
            for j in 0..self.v.rows() {
                c.set(i, j, v_inv.get(i, j).clone());
            }
        }
        c
    }

    /// Coordinates of a rational vector in the same basis `B` used by
    /// [`Self::lattice_coordinate_matrix`]; `None` if `x ∉ span(M)`.
    pub fn lattice_coordinates(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let r = self.rank();
        let y = self.u.mul_rat_vec(x);
        if y[r..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        Some((0..r).map(|i| &y[i] / rat_from_int(&self.diag[i])).collect())
    }

    /// Basis `B` (d × r) of the column lattice of `M`.
    pub fn lattice_basis(&self) -> IntMatrix {
        let r = self.rank();
        let u_inv = unimodular_inverse(&self.u);
        let cols: Vec<Vec<Int>> = (0..r)
            .map(|j| u_inv.column(j).into_iter().map(|x| x * &self.diag[j]).collect())
            .collect();
        IntMatrix::from_columns(self.u.rows(), &cols)
    }
}

fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    if m.rows() == 0 {
        return IntMatrix::zeros(0, 0);
    }
    let inv = inverse(m).expect("unimodular matrix is invertible");
    let rows = inv
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    IntMatrix::from_int_rows(rows).expect("square")
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Int>> = m.row_iter().map(<[Int]>::to_vec).collect();
    let mut u: Vec<Vec<Int>> = identity_rows(nr);
    // V is tracked transposed so column operations become row operations.
    let mut vt: Vec<Vec<Int>> = identity_rows(nc);

    let k = nr.min(nc);
    for t in 0..k {
        loop {
            let Some((pi, pj)) = smallest_pivot(&a, t) else {
                break;
            };
            if pi != t {
                a.swap(pi, t);
                u.swap(pi, t);
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(pj, t);
                }
                vt.swap(pj, t);
            }
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in (t + 1)..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                dirty |= !a[i][t].is_zero();
            }
            for j in (t + 1)..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut() {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                row_axpy(&mut vt, j, t, &q);
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // Divisibility: fold an offending row into row t and repeat.
            let offender = ((t + 1)..nr).find(|&i| ((t + 1)..nc).any(|j| !a[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    row_axpy(&mut a, t, i, &-Int::one());
                    row_axpy(&mut u, t, i, &-Int::one());
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }

    let diag = (0..k).map(|i| a[i][i].clone()).collect();
    let u = IntMatrix::from_int_rows(u).unwrap_or_else(|_| IntMatrix::zeros(0, 0));
    let v = IntMatrix::from_int_rows(vt)
        .map(|m| m.transpose())
        .unwrap_or_else(|_| IntMatrix::zeros(0, 0));
    SmithDecomposition { u, v, diag }
}

fn identity_rows(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

/// `rows[target] -= q * rows[source]`
fn row_axpy(rows: &mut [Vec<Int>], target: usize, source: usize, q: &Int) {
    let src = rows[source].clone();
    for (x, s) in rows[target].iter_mut().zip(src) {
        *x -= q * s;
    }
}

fn smallest_pivot(a: &[Vec<Int>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.diagonal_matrix());
        assert_eq!(s.u.det().unwrap().abs(), Int::one());
        assert_eq!(s.v.det().unwrap().abs(), Int::one());
        for w in s.diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn diag_2_3() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]).unwrap();
        assert_eq!(check(&m).diag, vec![int(1), int(6)]);
    }

    #[test]
    fn identity() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.diag, vec![int(1); 3]);
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn example_simplex() {
        let m = IntMatrix::from_rows(&[[1, 1, 1], [0, 1, 2], [0, 0, 2]]).unwrap();
        assert_eq!(check(&m).diag, vec![int(1), int(1), int(2)]);
    }

    #[test]
    fn rectangular_and_kernel() {
        let a = IntMatrix::from_rows(&[[1, 1, 1, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 1, 2]]).unwrap();
        let s = check(&a);
        assert_eq!(s.index(), Some(int(1)));
        let ker = s.kernel_basis();
        assert_eq!(ker.len(), 2);
        for u in &ker {
            assert!(a.mul_vec(u).iter().all(Zero::is_zero));
        }
        let b = IntMatrix::from_rows(&[[1, 2]]).unwrap();
        assert_eq!(check(&b).kernel_basis().len(), 1);
    }

    #[test]
    fn lattice_membership_and_coordinates() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 1]]).unwrap();
        let s = check(&m);
        assert!(s.lattice_contains(&[int(4), int(-3)]));
        assert!(!s.lattice_contains(&[int(1), int(0)]));
        assert_ne!(s.class_label(&[int(1), int(0)]), s.class_label(&[int(0), int(0)]));
        // sublattice 2Z x Z of rank 2: coordinates of (1,1) are (1/2, 1)
        let basis = s.lattice_basis();
        let c = s.lattice_coordinates(&[Rat::one(), Rat::one()]).unwrap();
        let back = basis.mul_rat_vec(&c);
        assert_eq!(back, vec![Rat::one(), Rat::one()]);
        let coords = s.lattice_coordinate_matrix();
        assert_eq!(basis.mul(&coords), m);
    }

    proptest! {
        #[test]
        fn random_matrices(r in 1usize..4, c in 1usize..5, seed in proptest::collection::vec(-6i64..=6, 16)) {
            let rows: Vec<Vec<i64>> = (0..r).map(|i| (0..c).map(|j| seed[i * 4 + j]).collect()).collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            let s = check(&m);
            if r == c && !m.det().unwrap().is_zero() {
                let prod = s.diag.iter().fold(Int::one(), |a, d| a * d);
                prop_assert_eq!(prod, m.det().unwrap().abs());
            }
            prop_assert_eq!(s.rank(), m.rank());
            let basis = s.lattice_basis();
            prop_assert_eq!(basis.mul(&s.lattice_coordinate_matrix()), m);
        }
    }
}
