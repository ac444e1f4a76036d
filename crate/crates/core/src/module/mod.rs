//! Representations of a local algebra on `k^n`.

mod sample;

pub use sample::{check_feasible, feasible_filtrations, sample_module, NotFoundReason, SampleConfig, SampleOutcome};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraData, Presentation};
use crate::error::{AlgebraError, ModuleError};
use crate::field::{Field, FieldElement};
use crate::matrix::{linear_combination, Matrix, Subspace, Vector};

/// An algebra acting on `k^n`: one `n × n` image per basis element.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    algebra: Arc<AlgebraData>,
    images: Vec<Matrix>,
}

impl ModuleRep {
    /// Checks shapes and fields only; use [`ModuleRep::validate`] for the
    /// unit and homomorphism laws.
    pub fn new(algebra: Arc<AlgebraData>, images: Vec<Matrix>) -> Result<Self, ModuleError> {
        if images.len() != algebra.dim() {
            return Err(ModuleError::MalformedRep(format!(
                "{} images for an algebra of dimension {}",
                images.len(),
                algebra.dim()
            )));
        }
        let n = images[0].rows();
        for (i, m) in images.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(ModuleError::MalformedRep(format!(
                    "image {i} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(ModuleError::MalformedRep(format!(
                    "image {i} is over {}, algebra over {}",
                    m.field(),
                    algebra.field()
                )));
            }
        }
        Ok(ModuleRep { algebra, images })
    }

    /// The algebra acting on itself by multiplication.
    pub fn regular(algebra: Arc<AlgebraData>) -> Self {
        let images = (0..algebra.dim())
            .map(|i| algebra.multiplication_matrix(&algebra.basis_vector(i)))
            .collect();
        ModuleRep { algebra, images }
    }

    /// Builds the images of every basis monomial from matrices for the
    /// generators of `presentation`, which must present `algebra`.
    pub fn from_generator_images(
        algebra: Arc<AlgebraData>,
        presentation: &Presentation,
        generator_images: &[Matrix],
    ) -> Result<Self, ModuleError> {
        if generator_images.len() != presentation.generators().len() {
            return Err(ModuleError::MalformedRep(format!(
                "{} generator images for {} generators",
                generator_images.len(),
                presentation.generators().len()
            )));
        }
        if presentation.basis().len() != algebra.dim() {
            return Err(AlgebraError::MalformedPresentation("presentation does not match the algebra".into()).into());
        }
        let n = generator_images.first().map_or(0, Matrix::rows);
        let field = algebra.field();
        let mut images = Vec::with_capacity(algebra.dim());
        for mono in presentation.basis() {
            let mut acc = Matrix::identity(field, n);
            for (g, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&generator_images[g])?;
                }
            }
            images.push(acc);
        }
        Self::new(algebra, images)
    }

    pub fn algebra(&self) -> &AlgebraData {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<AlgebraData> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn n(&self) -> usize {
        self.images[0].rows()
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    /// Image of an arbitrary algebra element.
    pub fn image_of(&self, a: &[FieldElement]) -> Matrix {
        linear_combination(self.field(), a, &self.images).expect("shapes checked at construction")
    }

    /// Images of a basis of the radical.
    pub fn radical_images(&self) -> Vec<Matrix> {
        self.algebra
            .radical()
            .vectors()
            .iter()
            .map(|v| self.image_of(v))
            .collect()
    }

    /// Images of radical generators (lifts of a basis of `J/J²`).
    pub fn generator_images(&self) -> Vec<Matrix> {
        self.algebra
            .radical_generators()
            .iter()
            .map(|v| self.image_of(v))
            .collect()
    }

    /// Unit acts as the identity and `ρ(e_i)ρ(e_j) = Σ_k c_ijk ρ(e_k)`.
    pub fn validate(&self) -> bool {
        if !self.images[0].is_identity() {
            return false;
        }
        let d = self.algebra.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.images[i].mul(&self.images[j]).expect("square");
                let coeffs: Vec<FieldElement> = (0..d).map(|k| self.algebra.constant(i, j, k).clone()).collect();
                if lhs != self.image_of(&coeffs) {
                    return false;
                }
            }
        }
        true
    }

    /// The images of the basis are linearly independent.
    pub fn is_faithful(&self) -> bool {
        let n = self.n();
        let vecs: Vec<Vector> = self.images.iter().map(Matrix::to_vector).collect();
        Subspace::span(self.field(), n * n, &vecs)
            .map(|s| s.dim() == self.algebra.dim())
            .unwrap_or(false)
    }

    /// Smallest subspace containing `vectors` and stable under every image.
    pub fn submodule_span(&self, vectors: &[Vector]) -> Result<Subspace, ModuleError> {
        let mut span = Subspace::zero(self.field(), self.n());
        let mut queue: Vec<Vector> = vectors.to_vec();
        while let Some(v) = queue.pop() {
            if span.insert(&v)? {
                for m in &self.images[1..] {
                    queue.push(m.mul_vec(&v)?);
                }
            }
        }
        Ok(span)
    }

    /// `g W` summed over the given operators.
    fn apply_all(&self, ops: &[Matrix], w: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.field(), self.n());
        for g in ops {
            for v in w.basis() {
                out.insert(&g.mul_vec(v).expect("square")).expect("same ambient");
            }
        }
        out
    }

    fn require_local(&self) -> Result<(), ModuleError> {
        let rad = self.algebra.radical().dim();
        if rad + 1 != self.algebra.dim() {
            return Err(AlgebraError::NotLocal {
                dim: self.algebra.dim(),
                radical_dim: rad,
            }
            .into());
        }
        Ok(())
    }

    /// `V ⊇ JV ⊇ J²V ⊇ …`, ending with the first zero layer.
    pub fn radical_layers(&self) -> Result<Vec<Subspace>, ModuleError> {
        self.require_local()?;
        let gens = self.generator_images();
        let mut layers = vec![Subspace::full(self.field(), self.n())];
        loop {
            let next = self.apply_all(&gens, layers.last().expect("nonempty"));
            let done = next.is_zero();
            layers.push(next);
            if done || layers.len() > self.n() + 1 {
                break;
            }
        }
        Ok(layers)
    }

    /// `JV` as a subspace.
    pub fn radical_image(&self) -> Result<Subspace, ModuleError> {
        Ok(self.radical_layers()?.swap_remove(1))
    }

    /// `(dim V/JV, dim JV/J²V, …)` up to the last nonzero layer.
    pub fn filtration(&self) -> Result<FiltrationVector, ModuleError> {
        let layers = self.radical_layers()?;
        Ok(FiltrationVector(
            layers.windows(2).map(|w| w[0].dim() - w[1].dim()).collect(),
        ))
    }

    /// `{v : Jv = 0}`, the joint kernel of the radical generators.
    pub fn socle(&self) -> Result<Subspace, ModuleError> {
        self.require_local()?;
        let n = self.n();
        let gens = self.generator_images();
        let field = self.field();
        let stacked = Matrix::vstack(field, n, &gens)?;
        let kernel = if gens.is_empty() {
            Matrix::identity(field, n).columns()
        } else {
            stacked.kernel_basis()
        };
        Ok(Subspace::span(field, n, &kernel)?)
    }
}

/// Layer dimensions `(dim V/JV, dim JV/J²V, …, dim J^r V)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiltrationVector(pub Vec<usize>);

impl FiltrationVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    /// `dim V/JV`.
    pub fn top(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Dimension of the last layer `J^r V`.
    pub fn bottom(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }
}

impl fmt::Display for FiltrationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for FiltrationVector {
    type Err = String;

    /// Parses `(2,3,1)` or `2,3,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        t.split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad filtration `{s}`")))
            .collect::<Result<Vec<_>, _>>()
            .map(FiltrationVector)
    }
}

impl From<&[usize]> for FiltrationVector {
    fn from(v: &[usize]) -> Self {
        FiltrationVector(v.to_vec())
    }
}
