//! Block forms of modules adapted to the radical filtration, the normal
//! form of a triple of `2 × 3` maps, and the class-16 fixture replay.

mod fixtures;
mod triple;

pub use fixtures::{
    appendix_configuration, appendix_replay, appendix_replay_with, appendix_replay_zero_nx,
    canonical_321_configuration, AppendixReport, IdentityCheck,
};
pub use triple::{
    apply_to_triple, canonical_triple, pencil_cubic, triple_in_canonical_orbit, triple_normal_form, Triple,
};

use crate::centralizer::{restricted_commutant, CommutantResult};
use crate::error::NormalFormError;
use crate::field::{Field, FieldElement};
use crate::matrix::{Matrix, Subspace, Vector};
use crate::module::{FiltrationVector, ModuleRep};

/// Generator matrices in a basis adapted to `V = V_0 ⊕ V_1 ⊕ …`, each
/// strictly block lower triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockConfiguration {
    field: Field,
    dims: FiltrationVector,
    labels: Vec<String>,
    mats: Vec<Matrix>,
}

impl BlockConfiguration {
    pub fn new(
        field: Field,
        dims: FiltrationVector,
        labels: Vec<String>,
        mats: Vec<Matrix>,
    ) -> Result<Self, NormalFormError> {
        if labels.len() != mats.len() {
            return Err(NormalFormError::Malformed(format!(
                "{} labels for {} matrices",
                labels.len(),
                mats.len()
            )));
        }
        if dims.dims().contains(&0) {
            return Err(NormalFormError::Malformed(format!("empty layer in {dims}")));
        }
        let n = dims.total();
        let cfg = BlockConfiguration {
            field,
            dims,
            labels,
            mats,
        };
        for (g, m) in cfg.mats.iter().enumerate() {
            if m.rows() != n || m.cols() != n || m.field() != field {
                return Err(NormalFormError::Malformed(format!(
                    "generator {} is not a {n}x{n} matrix over {field}",
                    cfg.labels[g]
                )));
            }
            for i in 0..n {
                for j in 0..n {
                    if cfg.layer_of(i) <= cfg.layer_of(j) && !m.get(i, j).is_zero() {
                        return Err(NormalFormError::Malformed(format!(
                            "generator {} has entry ({i},{j}) on or above the block diagonal",
                            cfg.labels[g]
                        )));
                    }
                }
            }
        }
        Ok(cfg)
    }

    /// Three layers from the blocks `L: V_0 → V_1`, `N: V_1 → V_2` and
    /// `M: V_0 → V_2` of each generator.
    pub fn from_blocks(
        field: Field,
        dims: (usize, usize, usize),
        labels: &[&str],
        l: &[Matrix],
        n: &[Matrix],
        m: &[Matrix],
    ) -> Result<Self, NormalFormError> {
        let (d0, d1, d2) = dims;
        let size = d0 + d1 + d2;
        if l.len() != labels.len() || n.len() != labels.len() || m.len() != labels.len() {
            return Err(NormalFormError::Malformed(
                "one block of each kind per generator".into(),
            ));
        }
        let mut mats = Vec::new();
        for g in 0..labels.len() {
            let shapes = [(&l[g], d1, d0, "L"), (&n[g], d2, d1, "N"), (&m[g], d2, d0, "M")];
            for (b, r, c, name) in shapes {
                if b.rows() != r || b.cols() != c {
                    return Err(NormalFormError::Malformed(format!(
                        "block {name} of {} is {}x{}, expected {r}x{c}",
                        labels[g],
                        b.rows(),
                        b.cols()
                    )));
                }
            }
            let full = Matrix::zeros(field, size, size)
                .with_block(d0, 0, &l[g])?
                .with_block(d0 + d1, d0, &n[g])?
                .with_block(d0 + d1, 0, &m[g])?;
            mats.push(full);
        }
        Self::new(
            field,
            FiltrationVector(vec![d0, d1, d2]),
            labels.iter().map(|s| s.to_string()).collect(),
            mats,
        )
    }

    /// Radical generators of a module in a basis adapted to its filtration.
    /// Returns the configuration and the basis (as columns).
    pub fn from_module(rep: &ModuleRep) -> Result<(Self, Matrix), NormalFormError> {
        let field = rep.field();
        let n = rep.n();
        let layers = rep
            .radical_layers()
            .map_err(|e| NormalFormError::Malformed(e.to_string()))?;
        let mut columns: Vec<Vector> = Vec::new();
        let mut dims = Vec::new();
        for w in layers.windows(2) {
            let mut below: Subspace = w[1].clone();
            let mut count = 0;
            for v in w[0].basis() {
                if below.insert(v)? {
                    columns.push(v.clone());
                    count += 1;
                }
            }
            dims.push(count);
        }
        let s = Matrix::from_columns(field, n, &columns)?;
        let s_inv = s.inverse().expect("adapted basis");
        let algebra = rep.algebra();
        let gens = algebra.radical_generators();
        let labels = gens.iter().map(|g| algebra.format_element(g)).collect();
        let mats = gens
            .iter()
            .map(|g| s_inv.mul(&rep.image_of(g)).and_then(|m| m.mul(&s)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((Self::new(field, FiltrationVector(dims), labels, mats)?, s))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &FiltrationVector {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn n(&self) -> usize {
        self.dims.total()
    }

    pub fn offset(&self, layer: usize) -> usize {
        self.dims.dims()[..layer].iter().sum()
    }

    pub fn layer_of(&self, index: usize) -> usize {
        let mut acc = 0;
        for (k, &d) in self.dims.dims().iter().enumerate() {
            acc += d;
            if index < acc {
                return k;
            }
        }
        self.dims.len()
    }

    /// The block of generator `g` mapping layer `from` to layer `to`.
    pub fn block(&self, g: usize, to: usize, from: usize) -> Matrix {
        block_of(&self.mats[g], &self.dims, to, from)
    }

    pub fn l(&self, g: usize) -> Matrix {
        self.block(g, 1, 0)
    }

    pub fn n_block(&self, g: usize) -> Matrix {
        self.block(g, 2, 1)
    }

    pub fn m_block(&self, g: usize) -> Matrix {
        self.block(g, 2, 0)
    }

    pub fn is_commutative(&self) -> bool {
        self.mats
            .iter()
            .enumerate()
            .all(|(i, a)| self.mats[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// `g'_i = S (Σ_j G_ij g_j) S^{-1}` with `S` the block diagonal of the
    /// layer transforms.
    pub fn apply(&self, change: &BaseChange) -> Result<Self, NormalFormError> {
        change.check_shape(&self.dims, self.mats.len())?;
        let s = change.block_diagonal(self.field);
        let s_inv = change.inverse().block_diagonal(self.field);
        let mut mats = Vec::new();
        for i in 0..self.mats.len() {
            let mut acc = Matrix::zeros(self.field, self.n(), self.n());
            for (j, m) in self.mats.iter().enumerate() {
                acc = acc.add(&m.scale(change.mix.get(i, j)))?;
            }
            mats.push(s.mul(&acc)?.mul(&s_inv)?);
        }
        Self::new(self.field, self.dims.clone(), self.labels.clone(), mats)
    }
}

fn block_of(m: &Matrix, dims: &FiltrationVector, to: usize, from: usize) -> Matrix {
    let d = dims.dims();
    let r0: usize = d[..to].iter().sum();
    let c0: usize = d[..from].iter().sum();
    m.block(r0, c0, d[to], d[from])
}

/// Block entry `(i, j)` of `x` in the block mapping layer `from` to `to`.
pub fn block_entry(x: &Matrix, dims: &FiltrationVector, to: usize, from: usize, i: usize, j: usize) -> FieldElement {
    let d = dims.dims();
    let r0: usize = d[..to].iter().sum();
    let c0: usize = d[..from].iter().sum();
    x.get(r0 + i, c0 + j).clone()
}

/// One invertible transform per layer and a mix of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChange {
    pub layers: Vec<Matrix>,
    pub mix: Matrix,
}

impl BaseChange {
    pub fn identity(field: Field, dims: &[usize], generators: usize) -> Self {
        BaseChange {
            layers: dims.iter().map(|&d| Matrix::identity(field, d)).collect(),
            mix: Matrix::identity(field, generators),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.mix.is_invertible() && self.layers.iter().all(Matrix::is_invertible)
    }

    pub fn is_identity(&self) -> bool {
        self.mix.is_identity() && self.layers.iter().all(Matrix::is_identity)
    }

    pub fn inverse(&self) -> BaseChange {
        BaseChange {
            layers: self
                .layers
                .iter()
                .map(|m| m.inverse().expect("invertible layer"))
                .collect(),
            mix: self.mix.inverse().expect("invertible mix"),
        }
    }

    /// Apply `self`, then `next`.
    pub fn then(&self, next: &BaseChange) -> BaseChange {
        BaseChange {
            layers: self
                .layers
                .iter()
                .zip(&next.layers)
                .map(|(a, b)| b.mul(a).expect("same layer sizes"))
                .collect(),
            mix: next.mix.mul(&self.mix).expect("same generator count"),
        }
    }

    fn check_shape(&self, dims: &FiltrationVector, generators: usize) -> Result<(), NormalFormError> {
        let ok = self.layers.len() == dims.len()
            && self
                .layers
                .iter()
                .zip(dims.dims())
                .all(|(m, &d)| m.rows() == d && m.cols() == d)
            && self.mix.rows() == generators
            && self.mix.cols() == generators;
        if ok && self.is_invertible() {
            Ok(())
        } else {
            Err(NormalFormError::Malformed(
                "base change does not fit the configuration".into(),
            ))
        }
    }

    fn block_diagonal(&self, field: Field) -> Matrix {
        let n: usize = self.layers.iter().map(Matrix::rows).sum();
        let mut s = Matrix::zeros(field, n, n);
        let mut at = 0;
        for m in &self.layers {
            s = s.with_block(at, at, m).expect("fits");
            at += m.rows();
        }
        s
    }
}

/// Endomorphisms of a configuration, solved in block form.
///
/// The unknown `X` is block lower triangular: diagonal blocks act on each
/// layer, and the blocks below the diagonal map a layer to deeper ones.
/// `Xu = uX` is imposed for every generator `u`. When the layers are the
/// radical filtration of a module this equals the full commutant, since
/// endomorphisms preserve every `J^k V`.
pub fn structured_end_solver(cfg: &BlockConfiguration) -> CommutantResult {
    let n = cfg.n();
    let allowed: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| cfg.layer_of(a) >= cfg.layer_of(b))
        .collect();
    restricted_commutant(cfg.field, n, &cfg.mats, &allowed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog_entry;
    use crate::centralizer::commutant;
    use crate::module::{sample_module, SampleConfig};
    use std::sync::Arc;

    const Q: Field = Field::Rationals;

    #[test]
    fn zero_blocks_give_block_lower_space() {
        let z = |r, c| Matrix::zeros(Q, r, c);
        let cfg = BlockConfiguration::from_blocks(Q, (2, 3, 1), &["x"], &[z(3, 2)], &[z(1, 3)], &[z(1, 2)]).unwrap();
        // 4 + 9 + 1 diagonal entries, 6 + 3 + 2 below.
        assert_eq!(structured_end_solver(&cfg).dim(), 25);
        assert_eq!(commutant(cfg.matrices()).unwrap().dim(), 36);
    }

    #[test]
    fn rejects_upper_entries() {
        let m = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let r = BlockConfiguration::new(Q, FiltrationVector(vec![1, 1]), vec!["x".into()], vec![m]);
        assert!(matches!(r, Err(NormalFormError::Malformed(_))));
    }

    #[test]
    fn module_configuration_matches_commutant() {
        let a = Arc::new(catalog_entry(16, Q).unwrap().algebra);
        let t = FiltrationVector(vec![2, 3, 1]);
        let rep = sample_module(a, 6, Some(&t), SampleConfig { seed: 5, attempts: 100 })
            .into_rep()
            .unwrap();
        let (cfg, _) = BlockConfiguration::from_module(&rep).unwrap();
        assert_eq!(cfg.dims(), &t);
        assert!(cfg.is_commutative());
        let s = structured_end_solver(&cfg);
        let g = commutant(cfg.matrices()).unwrap();
        assert!(s.same_space(&g));
    }

    #[test]
    fn base_change_round_trip() {
        let cfg = appendix_configuration(Q);
        let p = Matrix::from_i64(Q, &[&[1, 2], &[0, 1]]);
        let q = Matrix::from_i64(Q, &[&[1, 0, 1], &[0, 2, 0], &[1, 0, 2]]);
        let r = Matrix::from_i64(Q, &[&[3]]);
        let g = Matrix::from_i64(Q, &[&[1, 0, 0], &[1, 1, 0], &[0, 2, 1]]);
        let bc = BaseChange {
            layers: vec![p, q, r],
            mix: g,
        };
        let there = cfg.apply(&bc).unwrap();
        assert_ne!(there, cfg);
        assert_eq!(there.apply(&bc.inverse()).unwrap(), cfg);
        let id = bc.then(&bc.inverse());
        assert!(id.is_identity());
    }
}
