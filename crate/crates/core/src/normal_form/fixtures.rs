//! Fixed configurations for class 16 with filtration `(2,3,1)` and for
//! type `(1,3,1)` with filtration `(3,2,1)`, plus the replay of the block
//! computation for the former.

use std::sync::Arc;

use serde::Serialize;

use super::{block_entry, structured_end_solver, BlockConfiguration};
use crate::algebra::catalog_entry;
use crate::centralizer::commutant;
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::module::ModuleRep;

/// `L_y = E_11`, `L_z = E_12`, `L_x = E_21 + E_32`, `N_x = (0 0 1)`, all
/// other blocks zero; generators in the order `x, y, z`.
pub fn appendix_configuration(field: Field) -> BlockConfiguration {
    appendix_with_nx(field, Matrix::from_i64(field, &[&[0, 0, 1]]))
}

fn appendix_with_nx(field: Field, nx: Matrix) -> BlockConfiguration {
    let lx = Matrix::from_i64(field, &[&[0, 0], &[1, 0], &[0, 1]]);
    let ly = Matrix::from_i64(field, &[&[1, 0], &[0, 0], &[0, 0]]);
    let lz = Matrix::from_i64(field, &[&[0, 1], &[0, 0], &[0, 0]]);
    let zn = Matrix::zeros(field, 1, 3);
    let zm = Matrix::zeros(field, 1, 2);
    BlockConfiguration::from_blocks(
        field,
        (2, 3, 1),
        &["x", "y", "z"],
        &[lx, ly, lz],
        &[nx, zn.clone(), zn],
        &[zm.clone(), zm.clone(), zm],
    )
    .expect("fixture shapes")
}

/// The canonical `L` triple with `N_x = (1 0)`, `N_y = (0 1)`, `N_z = 0`
/// and `M = 0`.
pub fn canonical_321_configuration(field: Field) -> BlockConfiguration {
    let [lx, ly, lz] = super::canonical_triple(field);
    let nx = Matrix::from_i64(field, &[&[1, 0]]);
    let ny = Matrix::from_i64(field, &[&[0, 1]]);
    let nz = Matrix::zeros(field, 1, 2);
    let zm = Matrix::zeros(field, 1, 3);
    BlockConfiguration::from_blocks(
        field,
        (3, 2, 1),
        &["x", "y", "z"],
        &[lx, ly, lz],
        &[nx, ny, nz],
        &[zm.clone(), zm.clone(), zm],
    )
    .expect("fixture shapes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixReport {
    pub field: String,
    /// The generator images define a module of class 16.
    pub valid_module: bool,
    pub faithful: bool,
    /// `N_x L_x ≠ 0`, i.e. `x²` acts nontrivially.
    pub x_squared_acts: bool,
    pub identities: Vec<IdentityCheck>,
    pub structured_dim: usize,
    pub oracle_dim: usize,
    pub oracles_agree: bool,
    /// `(r, t2, t3, W, u11, u12, u21, u22)` are coordinates on the solution space.
    pub free_parameters: bool,
    pub notes: Vec<String>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.valid_module
            && self.faithful
            && self.x_squared_acts
            && self.identities.iter().all(|c| c.holds)
            && self.structured_dim == 9
            && self.oracles_agree
            && self.free_parameters
    }
}

pub fn appendix_replay(field: Field) -> AppendixReport {
    appendix_replay_with(field, &appendix_configuration(field))
}

/// The replay with `N_x` replaced by zero, which violates faithfulness.
pub fn appendix_replay_zero_nx(field: Field) -> AppendixReport {
    appendix_replay_with(field, &appendix_with_nx(field, Matrix::zeros(field, 1, 3)))
}

/// Replays the block solve on a `(2,3,1)` configuration with generators
/// `x, y, z` of class 16.
pub fn appendix_replay_with(field: Field, cfg: &BlockConfiguration) -> AppendixReport {
    let mut notes = Vec::new();
    let entry = catalog_entry(16, field).expect("class 16 is in the catalog");
    let rep = ModuleRep::from_generator_images(Arc::new(entry.algebra), &entry.presentation, cfg.matrices());
    let (valid_module, faithful) = match &rep {
        Ok(r) => (r.validate(), r.validate() && r.is_faithful()),
        Err(e) => {
            notes.push(format!("configuration is not a module: {e}"));
            (false, false)
        }
    };
    let nxlx = cfg.n_block(0).mul(&cfg.l(0)).expect("1x2");
    let x_squared_acts = !nxlx.is_zero();
    if !x_squared_acts {
        notes.push("N_x L_x = 0: x² acts as zero, so the module is not faithful".into());
    }
    if !faithful && valid_module {
        notes.push("generator images do not give a faithful module".into());
    }

    let solved = structured_end_solver(cfg);
    let oracle = commutant(cfg.matrices()).expect("square");
    let dims = cfg.dims().clone();
    let p = |x: &Matrix, i, j| block_entry(x, &dims, 0, 0, i, j);
    let q = |x: &Matrix, i, j| block_entry(x, &dims, 1, 1, i, j);
    let r = |x: &Matrix| block_entry(x, &dims, 2, 2, 0, 0);
    let t = |x: &Matrix, j| block_entry(x, &dims, 2, 1, 0, j);
    let u = |x: &Matrix, i, j| block_entry(x, &dims, 1, 0, i, j);
    let w = |x: &Matrix, j| block_entry(x, &dims, 2, 0, 0, j);

    type Functional<'a> = Box<dyn Fn(&Matrix) -> FieldElement + 'a>;
    let zero_checks: Vec<(&str, Functional)> = vec![
        ("q31 = 0", Box::new(|x| q(x, 2, 0))),
        ("q32 = 0", Box::new(|x| q(x, 2, 1))),
        ("q33 = r", Box::new(|x| &q(x, 2, 2) - &r(x))),
        (
            "P = r I2",
            Box::new(|x| {
                let mut worst = field.zero();
                for i in 0..2 {
                    for j in 0..2 {
                        let expect = if i == j { r(x) } else { field.zero() };
                        let d = &p(x, i, j) - &expect;
                        if !d.is_zero() {
                            worst = d;
                        }
                    }
                }
                worst
            }),
        ),
        (
            "Q = r I3",
            Box::new(|x| {
                let mut worst = field.zero();
                for i in 0..3 {
                    for j in 0..3 {
                        let expect = if i == j { r(x) } else { field.zero() };
                        let d = &q(x, i, j) - &expect;
                        if !d.is_zero() {
                            worst = d;
                        }
                    }
                }
                worst
            }),
        ),
        ("t1 = 0", Box::new(|x| t(x, 0))),
        ("u31 = t2", Box::new(|x| &u(x, 2, 0) - &t(x, 1))),
        ("u32 = t3", Box::new(|x| &u(x, 2, 1) - &t(x, 2))),
    ];
    let identities = zero_checks
        .into_iter()
        .map(|(name, f)| IdentityCheck {
            name: name.to_string(),
            holds: solved.basis().iter().all(|x| f(x).is_zero()),
        })
        .collect();

    let coords = Matrix::from_fn(field, 9, solved.dim(), |k, b| {
        let x = &solved.basis()[b];
        match k {
            0 => r(x),
            1 => t(x, 1),
            2 => t(x, 2),
            3 => w(x, 0),
            4 => w(x, 1),
            5 => u(x, 0, 0),
            6 => u(x, 0, 1),
            7 => u(x, 1, 0),
            _ => u(x, 1, 1),
        }
    });
    let free_parameters = solved.dim() == 9 && coords.rank() == 9;

    AppendixReport {
        field: field.to_string(),
        valid_module,
        faithful,
        x_squared_acts,
        identities,
        structured_dim: solved.dim(),
        oracle_dim: oracle.dim(),
        oracles_agree: solved.same_space(&oracle),
        free_parameters,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_over_q_and_fp() {
        for f in [Field::Rationals, Field::prime(101).unwrap()] {
            let rep = appendix_replay(f);
            assert!(rep.passed(), "{rep:?}");
            assert_eq!((rep.structured_dim, rep.oracle_dim), (9, 9));
        }
    }

    #[test]
    fn zero_nx_is_reported() {
        let rep = appendix_replay_zero_nx(Field::Rationals);
        assert!(!rep.x_squared_acts);
        assert!(!rep.faithful);
        assert!(!rep.passed());
        assert!(rep.notes.iter().any(|n| n.contains("not faithful")));
    }

    #[test]
    fn appendix_module_shape() {
        let f = Field::Rationals;
        let cfg = appendix_configuration(f);
        let entry = catalog_entry(16, f).unwrap();
        let rep =
            ModuleRep::from_generator_images(Arc::new(entry.algebra), &entry.presentation, cfg.matrices()).unwrap();
        assert_eq!(rep.filtration().unwrap().0, vec![2, 3, 1]);
        assert!(rep.is_faithful());
    }

    #[test]
    fn canonical_321_configuration_counts() {
        let f = Field::Rationals;
        let cfg = canonical_321_configuration(f);
        let s = structured_end_solver(&cfg);
        let g = commutant(cfg.matrices()).unwrap();
        assert!(s.same_space(&g));
        assert_eq!(s.dim(), 5);
        assert!(!cfg.is_commutative());
    }
}
