//! Finite-dimensional commutative algebras given by structure constants.
//!
//! Basis element 0 is always the unit. Elements are coordinate vectors in
//! the chosen basis.

mod catalog;
mod laffey;
mod presentation;

pub use catalog::{catalog, catalog_entry, CatalogEntry, CATALOG_IDS};
pub use laffey::{laffey_bound, LaffeyBound};
pub use presentation::{Monomial, Presentation};

use crate::error::AlgebraError;
use crate::field::{Field, FieldElement};
use crate::matrix::{Matrix, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    field: Field,
    labels: Vec<String>,
    /// `constants[(i * dim + j) * dim + k]` is the coefficient of `e_k` in `e_i e_j`.
    constants: Vec<FieldElement>,
}

impl AlgebraData {
    /// Validates the unit law, commutativity and associativity.
    pub fn new(field: Field, labels: Vec<String>, constants: Vec<FieldElement>) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if dim == 0 {
            return Err(AlgebraError::InvalidStructureConstants(
                "an algebra needs at least the unit".into(),
            ));
        }
        if constants.len() != dim * dim * dim {
            return Err(AlgebraError::InvalidStructureConstants(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        if let Some(e) = constants.iter().find(|e| e.field() != field) {
            return Err(crate::error::LinalgError::IncompatibleField {
                left: field,
                right: e.field(),
            }
            .into());
        }
        let a = AlgebraData {
            field,
            labels,
            constants,
        };
        a.check_axioms()?;
        Ok(a)
    }

    /// Structure constants from a product table: `table[i][j]` is the
    /// coordinate vector of `e_i e_j`.
    pub fn from_table(field: Field, labels: Vec<String>, table: &[Vec<Vector>]) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        let mut constants = Vec::with_capacity(dim * dim * dim);
        if table.len() != dim || table.iter().any(|r| r.len() != dim) {
            return Err(AlgebraError::InvalidStructureConstants(
                "product table has the wrong shape".into(),
            ));
        }
        for row in table {
            for v in row {
                if v.len() != dim {
                    return Err(AlgebraError::InvalidStructureConstants(
                        "product vector has the wrong length".into(),
                    ));
                }
                constants.extend(v.iter().cloned());
            }
        }
        Self::new(field, labels, constants)
    }

    fn check_axioms(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for j in 0..d {
            for k in 0..d {
                let want = j == k;
                let c = self.constant(0, j, k);
                if (want && !c.is_one()) || (!want && !c.is_zero()) {
                    return Err(AlgebraError::InvalidStructureConstants(format!(
                        "basis element 0 is not a unit (e_0 * e_{j} has coefficient {c} on e_{k})"
                    )));
                }
            }
        }
        for i in 0..d {
            for j in 0..i {
                for k in 0..d {
                    if self.constant(i, j, k) != self.constant(j, i, k) {
                        return Err(AlgebraError::InvalidStructureConstants(format!(
                            "not commutative: {} * {} != {} * {}",
                            self.labels[i], self.labels[j], self.labels[j], self.labels[i]
                        )));
                    }
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul(&self.basis_vector(i), &self.basis_vector(j));
                for l in 0..d {
                    let left = self.mul(&ij, &self.basis_vector(l));
                    let jl = self.mul(&self.basis_vector(j), &self.basis_vector(l));
                    let right = self.mul(&self.basis_vector(i), &jl);
                    if left != right {
                        return Err(AlgebraError::InvalidStructureConstants(format!(
                            "not associative: ({a} * {b}) * {c} != {a} * ({b} * {c})",
                            a = self.labels[i],
                            b = self.labels[j],
                            c = self.labels[l]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        let d = self.dim();
        &self.constants[(i * d + j) * d + k]
    }

    pub fn constants(&self) -> &[FieldElement] {
        &self.constants
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn unit(&self) -> Vector {
        self.basis_vector(0)
    }

    pub fn zero(&self) -> Vector {
        vec![self.field.zero(); self.dim()]
    }

    pub fn mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Vector {
        let d = self.dim();
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = &self.constants[(i * d + j) * d + k];
                    if !c.is_zero() {
                        *slot = &*slot + &(&ab * c);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[FieldElement], e: u32) -> Vector {
        let mut acc = self.unit();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Matrix of `v ↦ a v` in the basis; column `k` holds `a e_k`.
    pub fn multiplication_matrix(&self, a: &[FieldElement]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d).map(|k| self.mul(a, &self.basis_vector(k))).collect();
        Matrix::from_columns(self.field, d, &cols).expect("square by construction")
    }

    /// Trace of the regular representation of `a`.
    pub fn trace(&self, a: &[FieldElement]) -> FieldElement {
        let d = self.dim();
        let mut t = self.field.zero();
        for (k, ak) in a.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            for l in 0..d {
                let c = self.constant(k, l, l);
                if !c.is_zero() {
                    t = &t + &(ak * c);
                }
            }
        }
        t
    }

    /// The Jacobson radical, i.e. the ideal of nilpotent elements.
    ///
    /// In characteristic 0 and for `p > dim` this is the kernel of the trace
    /// form `(a, b) ↦ tr L_{ab}`. For smaller p the Frobenius map `a ↦ a^p`
    /// is additive on a commutative algebra, and the radical is the kernel of
    /// a high enough power of it.
    pub fn radical(&self) -> Ideal<'_> {
        let d = self.dim();
        let p = self.field.characteristic();
        let vectors = if p == 0 || p as usize > d {
            let gram = Matrix::from_fn(self.field, d, d, |i, j| {
                self.trace(&self.mul(&self.basis_vector(i), &self.basis_vector(j)))
            });
            gram.kernel_basis()
        } else {
            // Smallest p^k ≥ dim: x is nilpotent iff x^(p^k) = 0, and
            // x ↦ x^(p^k) is linear over F_p.
            let mut power = 1usize;
            while power < d {
                power = power.saturating_mul(p as usize);
            }
            let cols: Vec<Vector> = (0..d).map(|i| self.pow(&self.basis_vector(i), power as u32)).collect();
            let m = Matrix::from_columns(self.field, d, &cols).expect("square");
            m.kernel_basis()
        };
        Ideal {
            algebra: self,
            space: Subspace::span(self.field, d, &vectors).expect("well formed"),
        }
    }

    /// True when the radical has codimension 1, i.e. `A = k·1 ⊕ J`.
    pub fn is_local(&self) -> bool {
        self.radical().dim() + 1 == self.dim()
    }

    /// `(dim A/J, dim J/J², dim J²/J³, …)` up to the last nonzero term.
    pub fn hilbert_samuel(&self) -> Result<Vec<usize>, AlgebraError> {
        let j = self.radical();
        if j.dim() + 1 != self.dim() {
            return Err(AlgebraError::NotLocal {
                dim: self.dim(),
                radical_dim: j.dim(),
            });
        }
        let mut out = vec![1];
        let mut cur = j.clone();
        while cur.dim() > 0 {
            let next = cur.times(&j);
            out.push(cur.dim() - next.dim());
            cur = next;
        }
        Ok(out)
    }

    /// Elements of `J` whose classes form a basis of `J/J²`. They generate
    /// `J` as an ideal, and together with the unit generate `A`.
    pub fn radical_generators(&self) -> Vec<Vector> {
        let j = self.radical();
        let j2 = j.power(2);
        let mut span = j2.space.clone();
        let mut gens = Vec::new();
        for v in j.vectors() {
            if span.insert(v).expect("same ambient") {
                gens.push(v.clone());
            }
        }
        gens
    }

    /// Coordinates of `v` as a human-readable sum of basis labels.
    pub fn format_element(&self, v: &[FieldElement]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| if c.is_one() { l.clone() } else { format!("{c}*{l}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// An ideal of an algebra, stored as a subspace of the coordinate space.
#[derive(Clone, Debug)]
pub struct Ideal<'a> {
    algebra: &'a AlgebraData,
    space: Subspace,
}

impl<'a> Ideal<'a> {
    /// Ideal generated by `vectors`, i.e. their span closed under
    /// multiplication by every basis element.
    pub fn generated_by(algebra: &'a AlgebraData, vectors: &[Vector]) -> Result<Self, AlgebraError> {
        let d = algebra.dim();
        let mut space = Subspace::zero(algebra.field(), d);
        let mut queue: Vec<Vector> = vectors.to_vec();
        while let Some(v) = queue.pop() {
            if space.insert(&v)? {
                for i in 1..d {
                    queue.push(algebra.mul(&algebra.basis_vector(i), &v));
                }
            }
        }
        Ok(Ideal { algebra, space })
    }

    pub fn algebra(&self) -> &'a AlgebraData {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn vectors(&self) -> &[Vector] {
        self.space.basis()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.space.contains(v)
    }

    /// The product ideal `I·K`, spanned by pairwise products of basis vectors.
    pub fn times(&self, other: &Ideal<'_>) -> Ideal<'a> {
        let a = self.algebra;
        let mut space = Subspace::zero(a.field(), a.dim());
        for u in self.vectors() {
            for v in other.vectors() {
                space.insert(&a.mul(u, v)).expect("same ambient");
            }
        }
        Ideal { algebra: a, space }
    }

    /// `I^e` for `e ≥ 1`; `I^0` is taken to be the whole algebra.
    pub fn power(&self, e: u32) -> Ideal<'a> {
        if e == 0 {
            return Ideal {
                algebra: self.algebra,
                space: Subspace::full(self.algebra.field(), self.algebra.dim()),
            };
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.times(self);
        }
        acc
    }

    /// Closed under multiplication by every basis element.
    pub fn is_ideal(&self) -> bool {
        let a = self.algebra;
        self.vectors()
            .iter()
            .all(|v| (0..a.dim()).all(|i| self.space.contains(&a.mul(&a.basis_vector(i), v))))
    }
}

/// `radical(a)` as a free function, mirroring the other entry points.
pub fn radical(a: &AlgebraData) -> Ideal<'_> {
    a.radical()
}

/// Basis of `J^e`.
pub fn ideal_power<'a>(j: &Ideal<'a>, e: u32) -> Ideal<'a> {
    j.power(e)
}
