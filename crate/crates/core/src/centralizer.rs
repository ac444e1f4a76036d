//! Commutants, endomorphism algebras and maximality of commutative
//! subalgebras of `M_n(k)`.

use crate::error::CentralizerError;
use crate::field::Field;
use crate::matrix::{solve_homogeneous, Matrix, Subspace, Vector};
use crate::module::ModuleRep;

/// A basis of a space of `n × n` matrices.
#[derive(Clone, Debug)]
pub struct CommutantResult {
    field: Field,
    n: usize,
    basis: Vec<Matrix>,
}

impl CommutantResult {
    pub fn from_basis(field: Field, n: usize, basis: Vec<Matrix>) -> Self {
        CommutantResult { field, n, basis }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// The span as a subspace of `k^{n²}` (row-major).
    pub fn subspace(&self) -> Subspace {
        matrix_span(self.field, self.n, &self.basis)
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.subspace().contains(&m.to_vector())
    }

    /// Equal spans.
    pub fn same_space(&self, other: &CommutantResult) -> bool {
        let (a, b) = (self.subspace(), other.subspace());
        a.dim() == b.dim() && a.contains_subspace(&b) && b.contains_subspace(&a)
    }
}

/// Span of matrices as vectors in `k^{n²}`.
pub fn matrix_span(field: Field, n: usize, mats: &[Matrix]) -> Subspace {
    let vecs: Vec<Vector> = mats.iter().map(Matrix::to_vector).collect();
    Subspace::span(field, n * n, &vecs).expect("square matrices of one size")
}

fn check_square(mats: &[Matrix]) -> Result<(Field, usize), CentralizerError> {
    let first = mats
        .first()
        .ok_or_else(|| CentralizerError::MalformedInput("no matrices given".into()))?;
    let (field, n) = (first.field(), first.rows());
    for (i, m) in mats.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            return Err(CentralizerError::MalformedInput(format!(
                "matrix {i} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        if m.field() != field {
            return Err(CentralizerError::MalformedInput(format!(
                "matrix {i} is over {}, expected {field}",
                m.field()
            )));
        }
    }
    Ok((field, n))
}

/// `{X : XM = MX for all M}` as the kernel of the stacked maps
/// `X ↦ XM − MX` on `k^{n²}`.
pub fn commutant(mats: &[Matrix]) -> Result<CommutantResult, CentralizerError> {
    let (field, n) = check_square(mats)?;
    let allowed: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    Ok(restricted_commutant(field, n, mats, &allowed))
}

/// Commutant intersected with the matrices supported on `allowed`.
pub(crate) fn restricted_commutant(
    field: Field,
    n: usize,
    mats: &[Matrix],
    allowed: &[(usize, usize)],
) -> CommutantResult {
    // Entry (i,j) of XM − MX has coefficient [a=i]·M_bj − M_ia·[b=j] on X_ab.
    let mut rows = Vec::new();
    for m in mats {
        for i in 0..n {
            for j in 0..n {
                let row: Vector = allowed
                    .iter()
                    .map(|&(a, b)| {
                        let mut c = field.zero();
                        if a == i {
                            c = &c + m.get(b, j);
                        }
                        if b == j {
                            c = &c - m.get(i, a);
                        }
                        c
                    })
                    .collect();
                if row.iter().any(|e| !e.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = solve_homogeneous(field, allowed.len(), &rows).expect("rows sized to unknowns");
    let basis = kernel
        .into_iter()
        .map(|k| {
            let mut data = vec![field.zero(); n * n];
            for (&(a, b), v) in allowed.iter().zip(k) {
                data[a * n + b] = v;
            }
            Matrix::new(field, n, n, data).expect("sized")
        })
        .collect();
    CommutantResult { field, n, basis }
}

/// `End_A(V)`, computed from the unit and the radical generators.
pub fn end_algebra(rep: &ModuleRep) -> Result<CommutantResult, CentralizerError> {
    let mut mats = vec![Matrix::identity(rep.field(), rep.n())];
    mats.extend(rep.generator_images());
    commutant(&mats)
}

/// `End_A(V)`, computed from the images of every basis element.
pub fn end_algebra_full(rep: &ModuleRep) -> Result<CommutantResult, CentralizerError> {
    commutant(rep.images())
}

/// Basis of the smallest unital subalgebra of `M_n` containing `mats`.
pub fn algebra_closure(field: Field, n: usize, mats: &[Matrix]) -> Vec<Matrix> {
    let mut span = Subspace::zero(field, n * n);
    let mut basis: Vec<Matrix> = Vec::new();
    let mut queue = vec![Matrix::identity(field, n)];
    queue.extend(mats.iter().cloned());
    while let Some(m) = queue.pop() {
        if span.insert(&m.to_vector()).expect("sized") {
            for g in mats {
                queue.push(m.mul(g).expect("square"));
            }
            basis.push(m);
        }
    }
    basis
}

/// Outcome of [`is_maximal_commutative`].
#[derive(Clone, Debug)]
pub struct MaximalityVerdict {
    pub maximal: bool,
    pub algebra_dim: usize,
    pub commutant_dim: usize,
    /// A commuting matrix outside the algebra, when not maximal.
    pub witness: Option<Matrix>,
    /// Position of the witness in the commutant basis.
    pub witness_index: Option<usize>,
}

/// Whether the unital algebra generated by `mats` equals its commutant.
pub fn is_maximal_commutative(field: Field, n: usize, mats: &[Matrix]) -> Result<MaximalityVerdict, CentralizerError> {
    if !mats.is_empty() {
        let (f, m) = check_square(mats)?;
        if f != field || m != n {
            return Err(CentralizerError::MalformedInput(format!(
                "expected {n}x{n} matrices over {field}"
            )));
        }
    }
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if !mats[i].commutes_with(&mats[j]) {
                return Err(CentralizerError::NotCommutative(i, j));
            }
        }
    }
    let closure = algebra_closure(field, n, mats);
    let span = matrix_span(field, n, &closure);
    let mut gens = vec![Matrix::identity(field, n)];
    gens.extend(mats.iter().cloned());
    let comm = commutant(&gens)?;
    let witness_index = comm.basis().iter().position(|x| !span.contains(&x.to_vector()));
    let witness = witness_index.map(|i| comm.basis()[i].clone());
    Ok(MaximalityVerdict {
        maximal: witness.is_none(),
        witness_index,
        algebra_dim: closure.len(),
        commutant_dim: comm.dim(),
        witness,
    })
}

/// Maps `V → V/JV → L → V` for all linear `V/JV → L`, where `JL = 0`.
///
/// Each output is `ℓ · π_c`, with `π_c` the coordinate functional of `V/JV`
/// in the complement of `JV` and `ℓ` a basis vector of `L`.
pub fn hom_lift(rep: &ModuleRep, l_basis: &[Vector]) -> Result<Vec<Matrix>, CentralizerError> {
    let field = rep.field();
    let n = rep.n();
    let l_space = Subspace::span(field, n, l_basis)?;
    for (ri, j) in rep.radical_images().iter().enumerate() {
        for (vi, l) in l_space.basis().iter().enumerate() {
            if j.mul_vec(l)?.iter().any(|e| !e.is_zero()) {
                return Err(CentralizerError::PreconditionViolation {
                    radical_index: ri,
                    vector_index: vi,
                });
            }
        }
    }
    let jv = rep.radical_image()?;
    let reduced: Vec<Vector> = (0..n)
        .map(|j| {
            let mut e = vec![field.zero(); n];
            e[j] = field.one();
            jv.reduce(&e)
        })
        .collect();
    let mut out = Vec::new();
    for c in jv.complement_coordinates() {
        for l in l_space.basis() {
            let m = Matrix::from_fn(field, n, n, |i, j| &l[i] * &reduced[j][c]);
            if let Some(k) = rep.images().iter().position(|a| !a.commutes_with(&m)) {
                return Err(CentralizerError::MalformedInput(format!(
                    "lifted map does not commute with basis image {k}"
                )));
            }
            out.push(m);
        }
    }
    Ok(out)
}

/// `dim (span(a) ∩ span(b))` for two families of `n × n` matrices.
pub fn intersection_dim(field: Field, n: usize, a: &[Matrix], b: &[Matrix]) -> usize {
    matrix_span(field, n, a)
        .intersection(&matrix_span(field, n, b))
        .expect("same ambient")
        .dim()
}

/// `Σ_{i,j} min(λ_i, λ_j)`: the centralizer dimension of a nilpotent
/// matrix with Jordan blocks `λ`.
pub fn jordan_centralizer_dim(partition: &[usize]) -> usize {
    partition
        .iter()
        .map(|&a| partition.iter().map(|&b| a.min(b)).sum::<usize>())
        .sum()
}

/// Jordan block sizes of a nilpotent matrix, largest first. `None` if the
/// matrix is not nilpotent.
pub fn nilpotent_jordan_type(m: &Matrix) -> Option<Vec<usize>> {
    let n = m.rows();
    let mut ranks = vec![n];
    let mut p = Matrix::identity(m.field(), n);
    for _ in 0..n {
        p = p.mul(m).ok()?;
        ranks.push(p.rank());
    }
    if *ranks.last()? != 0 {
        return None;
    }
    // at_least[k] = #blocks of size ≥ k+1 = rank N^k − rank N^{k+1}.
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 0..n {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..at_least[k] - next {
            parts.push(k + 1);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Some(parts)
}

/// Nilpotent Jordan block of size `n` (ones on the subdiagonal).
pub fn jordan_block(field: Field, n: usize) -> Matrix {
    Matrix::from_fn(field, n, n, |i, j| if i == j + 1 { field.one() } else { field.zero() })
}

/// Nilpotent matrix with the given Jordan block sizes.
pub fn nilpotent_of_type(field: Field, partition: &[usize]) -> Matrix {
    let n: usize = partition.iter().sum();
    let mut m = Matrix::zeros(field, n, n);
    let mut at = 0;
    for &b in partition {
        m = m.with_block(at, at, &jordan_block(field, b)).expect("fits");
        at += b;
    }
    m
}

/// Diagonal matrix units `E_ii`.
pub fn diagonal_units(field: Field, n: usize) -> Vec<Matrix> {
    (0..n)
        .map(|i| {
            Matrix::from_fn(
                field,
                n,
                n,
                |a, b| {
                    if a == i && b == i {
                        field.one()
                    } else {
                        field.zero()
                    }
                },
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog_entry, AlgebraData};
    use proptest::prelude::*;
    use std::sync::Arc;

    const Q: Field = Field::Rationals;

    #[test]
    fn basic_commutants() {
        assert_eq!(commutant(&[Matrix::identity(Q, 6)]).unwrap().dim(), 36);
        assert_eq!(commutant(&[jordan_block(Q, 6)]).unwrap().dim(), 6);
        assert!(commutant(&[]).is_err());
        let bad = [Matrix::identity(Q, 2), Matrix::identity(Q, 3)];
        assert!(matches!(commutant(&bad), Err(CentralizerError::MalformedInput(_))));
    }

    #[test]
    fn commutant_result_invariants() {
        let m = nilpotent_of_type(Q, &[3, 2, 1]);
        let c = commutant(std::slice::from_ref(&m)).unwrap();
        assert_eq!(c.dim(), jordan_centralizer_dim(&[3, 2, 1]));
        for x in c.basis() {
            assert!(x.commutes_with(&m));
        }
        assert!(c.contains(&Matrix::identity(Q, 6)));
        assert_eq!(c.subspace().dim(), c.dim());
    }

    #[test]
    fn maximality_examples() {
        let d = is_maximal_commutative(Q, 6, &diagonal_units(Q, 6)).unwrap();
        assert!(d.maximal);
        assert_eq!(d.algebra_dim, 6);
        let j = is_maximal_commutative(Q, 6, &[jordan_block(Q, 6)]).unwrap();
        assert!(j.maximal && j.algebra_dim == 6);
        let e12 = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let e21 = e12.transpose();
        assert!(matches!(
            is_maximal_commutative(Q, 2, &[e12, e21]),
            Err(CentralizerError::NotCommutative(0, 1))
        ));
        let n = nilpotent_of_type(Q, &[5, 1]);
        let v = is_maximal_commutative(Q, 6, std::slice::from_ref(&n)).unwrap();
        assert!(!v.maximal);
        assert_eq!((v.algebra_dim, v.commutant_dim), (5, 8));
        let w = v.witness.unwrap();
        assert!(w.commutes_with(&n));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(algebra_closure(Q, 6, &[]).len(), 1);
        assert_eq!(algebra_closure(Q, 6, &[jordan_block(Q, 6)]).len(), 6);
    }

    #[test]
    fn jordan_types() {
        for p in [vec![5, 1], vec![3, 3], vec![4, 2], vec![2, 2, 1, 1], vec![1; 6]] {
            let m = nilpotent_of_type(Q, &p);
            assert_eq!(nilpotent_jordan_type(&m).unwrap(), p);
            assert_eq!(commutant(&[m]).unwrap().dim(), jordan_centralizer_dim(&p));
        }
        assert!(nilpotent_jordan_type(&Matrix::identity(Q, 2)).is_none());
    }

    fn regular(id: u32) -> ModuleRep {
        ModuleRep::regular(Arc::new(catalog_entry(id, Q).unwrap().algebra))
    }

    #[test]
    fn end_of_regular_is_the_algebra() {
        for id in [9, 16, 17] {
            let rep = regular(id);
            let e = end_algebra(&rep).unwrap();
            assert_eq!(e.dim(), 5);
            assert!(e.same_space(&end_algebra_full(&rep).unwrap()));
            for a in rep.images() {
                assert!(e.contains(a));
            }
        }
    }

    #[test]
    fn hom_lift_on_socle() {
        let rep = regular(17);
        assert!(hom_lift(&rep, &[]).unwrap().is_empty());
        let soc = rep.socle().unwrap();
        let lifts = hom_lift(&rep, soc.basis()).unwrap();
        // V/JV is 1-dimensional and Soc = J is 4-dimensional.
        assert_eq!(lifts.len(), 4);
        assert_eq!(matrix_span(Q, 5, &lifts).dim(), 4);
        // The lifts are left multiplications by elements of J.
        assert_eq!(intersection_dim(Q, 5, rep.images(), &lifts), 4);
    }

    #[test]
    fn hom_lift_rejects_non_annihilated() {
        let rep = regular(9);
        let unit = rep.algebra().unit();
        match hom_lift(&rep, &[unit]) {
            Err(CentralizerError::PreconditionViolation { vector_index: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(-2i64..=2, n * n)
            .prop_map(move |v| Matrix::from_fn(Q, n, n, |i, j| Q.from_i64(v[i * n + j])))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn commutant_of_closure_matches(m in small_matrix(3), k in small_matrix(3)) {
            let mats = [m, k];
            let closure = algebra_closure(Q, 3, &mats);
            let a = commutant(&mats).unwrap();
            let b = commutant(&closure).unwrap();
            prop_assert!(a.same_space(&b));
        }

        #[test]
        fn commutative_algebra_inside_commutant(m in small_matrix(4)) {
            let closure = algebra_closure(Q, 4, std::slice::from_ref(&m));
            let c = commutant(&[m]).unwrap();
            for x in &closure {
                prop_assert!(c.contains(x));
            }
        }
    }

    #[test]
    fn regular_rep_of_field_is_maximal() {
        let a = Arc::new(AlgebraData::from_table(Q, vec!["1".into()], &[vec![vec![Q.one()]]]).unwrap());
        let rep = ModuleRep::regular(a);
        let v = is_maximal_commutative(Q, 1, rep.images()).unwrap();
        assert!(v.maximal);
    }
}
