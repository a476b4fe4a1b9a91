use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_from_int, smith_normal_form, Int, IntMatrix, Rat};
use crate::param::Parameter;

use super::cone::{cone_facets, vertex_flags, ConeFacet};

/// The point configuration `A ∈ Z^{d×n}` together with lattice metadata.
///
/// Construction enforces `rank A = d` and `ZA = Z^d`. Columns are indexed
/// from zero throughout the library.
#[derive(Clone, Debug)]
pub struct Configuration {
    a: IntMatrix,
    columns: Vec<Vec<Int>>,
    rat_columns: Vec<Vec<Rat>>,
    lattice_index: Int,
    vertex_flags: Vec<bool>,
    origin_is_vertex: bool,
    cone_facets: Vec<ConeFacet>,
}

/// Change of lattice applied by [`Configuration::normalized`]: the new
/// matrix is `B⁻¹ A` for the basis `B` of `ZA`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTransform {
    pub basis: IntMatrix,
    pub smith_diagonal: Vec<Int>,
}

impl Configuration {
    pub fn new(a: IntMatrix) -> Result<Self> {
        let (d, n) = (a.rows(), a.cols());
        if d == 0 || n == 0 {
            return Err(Error::InvalidConfiguration("matrix must be nonempty".into()));
        }
        let columns = a.columns();
        if let Some(j) = columns.iter().position(|c| c.iter().all(Zero::is_zero)) {
            return Err(Error::InvalidConfiguration(format!("column {} is zero", j + 1)));
        }
        let snf = smith_normal_form(&a);
        let rank = snf.rank();
        let index = snf.index();
        if rank < d || index.as_ref() != Some(&Int::one()) {
            return Err(Error::LatticeIndex {
                diag: snf.diag.iter().map(ToString::to_string).collect(),
                rank,
                rows: d,
            });
        }
        let mut points = columns.clone();
        points.push(vec![Int::zero(); d]);
        let mut flags = vertex_flags(&points, d);
        let origin_is_vertex = flags.pop().unwrap_or(false);
        let rat_columns = columns
            .iter()
            .map(|c| c.iter().map(rat_from_int).collect())
            .collect();
        let cone_facets = cone_facets(&columns, d);
        Ok(Configuration {
            a,
            columns,
            rat_columns,
            lattice_index: Int::one(),
            vertex_flags: flags,
            origin_is_vertex,
            cone_facets,
        })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// Rewrites `A` (and `β`) in a basis of the lattice `ZA`.
    ///
    /// The result always satisfies `ZA = Z^r` with `r = rank A`. `β` must lie
    /// in the span of the columns.
    pub fn normalized(
        a: &IntMatrix,
        beta: Option<&Parameter>,
    ) -> Result<(Configuration, Option<Parameter>, LatticeTransform)> {
        let snf = smith_normal_form(a);
        let coords = snf.lattice_coordinate_matrix();
        let transform = LatticeTransform {
            basis: snf.lattice_basis(),
            smith_diagonal: snf.diag.clone(),
        };
        let beta = match beta {
            None => None,
            Some(Parameter::Rational(b)) => {
                if b.len() != a.rows() {
                    return Err(Error::DimensionMismatch(format!(
                        "beta has {} entries, A has {} rows",
                        b.len(),
                        a.rows()
                    )));
                }
                let c = snf.lattice_coordinates(b).ok_or_else(|| {
                    Error::InvalidConfiguration("beta is not in the span of the columns".into())
                })?;
                Some(Parameter::Rational(c))
            }
            Some(Parameter::Complex(b)) => {
                // Same change of basis applied to real and imaginary parts.
                let basis = transform.basis.clone();
                Some(Parameter::Complex(complex_coordinates(&basis, b)?))
            }
        };
        Ok((Configuration::new(coords)?, beta, transform))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    /// `d`
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// `n`
    pub fn len(&self) -> usize {
        self.a.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn column(&self, j: usize) -> &[Int] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<Int>] {
        &self.columns
    }

    pub(crate) fn rat_column(&self, j: usize) -> &[Rat] {
        &self.rat_columns[j]
    }

    pub(crate) fn rat_columns(&self) -> &[Vec<Rat>] {
        &self.rat_columns
    }

    pub fn lattice_index(&self) -> &Int {
        &self.lattice_index
    }

    pub fn vertex_flags(&self) -> &[bool] {
        &self.vertex_flags
    }

    pub fn is_vertex(&self, col: usize) -> bool {
        self.vertex_flags[col]
    }

    /// Pointed in the sense that some covector is positive on every column.
    pub fn is_pointed(&self) -> bool {
        self.origin_is_vertex
    }

    /// Facets of the cone `pos(A)`.
    pub fn cone_facets(&self) -> &[ConeFacet] {
        &self.cone_facets
    }

    pub fn check_column(&self, col: usize) -> Result<()> {
        if col >= self.len() {
            return Err(Error::ColumnOutOfRange(col));
        }
        Ok(())
    }

    /// A covector positive on every column, when the configuration is pointed.
    pub fn positive_functional(&self) -> Option<Vec<Int>> {
        if !self.is_pointed() {
            return None;
        }
        let d = self.dim();
        let mut c = vec![Int::zero(); d];
        for f in &self.cone_facets {
            for (ci, ni) in c.iter_mut().zip(&f.normal) {
                *ci += ni;
            }
        }
        Some(c)
    }

    pub fn submatrix(&self, idx: &[usize]) -> IntMatrix {
        self.a.select_columns(idx)
    }

    /// `a_j` for all `j ∉ idx`, in increasing order of `j`.
    pub fn complement(&self, idx: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|j| !idx.contains(j)).collect()
    }
}

fn complex_coordinates(
    basis: &IntMatrix,
    beta: &[num_complex::Complex64],
) -> Result<Vec<num_complex::Complex64>> {
    use crate::exact::{inverse_rat, rat_to_f64, rref};
    let d = basis.rows();
    if beta.len() != d {
        return Err(Error::DimensionMismatch(format!("beta has {} entries, A has {d} rows", beta.len())));
    }
    // The basis has full column rank; solve on a set of independent rows.
    let mut rows = basis.transpose().to_rat_rows();
    let chosen = rref(&mut rows);
    let square: Vec<Vec<Rat>> = chosen
        .iter()
        .map(|&i| basis.row(i).iter().map(rat_from_int).collect())
        .collect();
    let inv = inverse_rat(&square)?;
    Ok(inv
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .zip(&chosen)
                .map(|(x, &i)| beta[i] * rat_to_f64(x))
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn example_configuration() {
        let cfg = Configuration::from_rows(&[[1, 1, 1, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 1, 2]]).unwrap();
        assert_eq!(cfg.dim(), 3);
        assert_eq!(cfg.len(), 5);
        assert_eq!(cfg.vertex_flags(), &[true, true, true, false, true]);
        assert!(cfg.is_pointed());
        let c = cfg.positive_functional().unwrap();
        for j in 0..5 {
            assert!(crate::exact::dot_int(&c, cfg.column(j)) > Int::zero());
        }
    }

    #[test]
    fn rejects_bad_lattice() {
        let err = Configuration::from_rows(&[[2, 4]]).unwrap_err();
        assert!(matches!(err, Error::LatticeIndex { .. }));
        let err = Configuration::from_rows(&[[1, 2], [2, 4]]).unwrap_err();
        assert!(matches!(err, Error::LatticeIndex { rank: 1, .. }));
        assert!(Configuration::from_rows(&[[1, 0], [0, 0]]).is_err());
    }

    #[test]
    fn one_dimensional_vertex_flags() {
        let cfg = Configuration::from_rows(&[[1, 2]]).unwrap();
        assert_eq!(cfg.vertex_flags(), &[false, true]);
        assert!(cfg.is_pointed());
        let cfg = Configuration::from_rows(&[[1, -1]]).unwrap();
        assert!(!cfg.is_pointed());
    }

    #[test]
    fn normalization_rescales_lattice() {
        let a = IntMatrix::from_rows(&[[2, 4, 6]]).unwrap();
        let beta = Parameter::Rational(vec![rat(1, 1)]);
        let (cfg, b, t) = Configuration::normalized(&a, Some(&beta)).unwrap();
        assert_eq!(cfg.matrix(), &IntMatrix::from_rows(&[[1, 2, 3]]).unwrap());
        assert_eq!(b, Some(Parameter::Rational(vec![rat(1, 2)])));
        assert_eq!(t.basis.mul(cfg.matrix()), a);

        let a = IntMatrix::from_rows(&[[1, 1, 1], [0, 2, 4]]).unwrap();
        let beta = Parameter::Rational(vec![rat(1, 3), rat(1, 5)]);
        let (cfg, b, t) = Configuration::normalized(&a, Some(&beta)).unwrap();
        assert_eq!(t.basis.mul(cfg.matrix()), a);
        let Some(Parameter::Rational(b)) = b else { panic!() };
        assert_eq!(t.basis.mul_rat_vec(&b), vec![rat(1, 3), rat(1, 5)]);
        assert_eq!(cfg.lattice_index(), &int(1));

        let cbeta = Parameter::Complex(vec![
            num_complex::Complex64::new(1.0 / 3.0, 0.5),
            num_complex::Complex64::new(0.2, -1.0),
        ]);
        let (_, cb, _) = Configuration::normalized(&a, Some(&cbeta)).unwrap();
        let Some(Parameter::Complex(cb)) = cb else { panic!() };
        let Parameter::Complex(orig) = cbeta else { panic!() };
        for i in 0..2 {
            let back: num_complex::Complex64 = (0..t.basis.cols())
                .map(|j| cb[j] * crate::exact::rat_to_f64(&rat_from_int(t.basis.get(i, j))))
                .sum();
            assert!((back - orig[i]).norm() < 1e-12);
        }
    }
}
