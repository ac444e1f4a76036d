//! Random faithful modules with a prescribed radical filtration.
//!
//! A module with `dim V/JV = m` is a quotient `F/N` of the free module
//! `F = A^m`. The submodule `N` is built one radical layer at a time, from
//! the deepest layer up: at layer `k` we add random vectors `v ∈ J^k F`
//! with `Jv ⊆ N`, chosen independent modulo `N + J^{k+1}F`, until
//! `dim (N ∩ J^k F) = dim J^k F − dim J^k V`. This gives the requested
//! filtration exactly; faithfulness is then checked.
//!
//! The generator is ChaCha8 seeded with `seed_from_u64(seed)` and switched
//! to stream `attempt` for each attempt, so an attempt is reproducible on
//! its own. Coordinates are drawn from `{-2, …, 2}` over ℚ and uniformly
//! over F_p.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{FiltrationVector, ModuleRep};
use crate::algebra::AlgebraData;
use crate::field::{Field, FieldElement};
use crate::matrix::{solve_homogeneous, Matrix, Subspace, Vector};

pub const DEFAULT_ATTEMPTS: u64 = 10_000;

/// Draws per layer vector before an attempt is abandoned.
const DRAWS_PER_VECTOR: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub attempts: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 0,
            attempts: DEFAULT_ATTEMPTS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum NotFoundReason {
    /// Rejected before sampling.
    Infeasible(String),
    /// Every attempt produced a non-faithful module or got stuck.
    Exhausted,
    /// The construction ran out of room at `layer` before making any random
    /// choice, so every attempt would fail the same way.
    Blocked {
        layer: usize,
        available: usize,
        required: usize,
    },
}

#[derive(Clone, Debug)]
pub enum SampleOutcome {
    Found { rep: ModuleRep, attempt: u64 },
    NotFound { reason: NotFoundReason, attempts: u64 },
}

impl SampleOutcome {
    pub fn rep(&self) -> Option<&ModuleRep> {
        match self {
            SampleOutcome::Found { rep, .. } => Some(rep),
            SampleOutcome::NotFound { .. } => None,
        }
    }

    pub fn into_rep(self) -> Option<ModuleRep> {
        match self {
            SampleOutcome::Found { rep, .. } => Some(rep),
            SampleOutcome::NotFound { .. } => None,
        }
    }
}

/// Necessary conditions for a faithful module with filtration `target`.
///
/// Checks the sum, positivity, that the number of layers equals the Loewy
/// length of `A` (faithfulness forces `J^{L-1}V ≠ 0`), the growth bound
/// `dims[i+1] ≤ dims[i]·dim J/J²`, and `dim J^k V ≤ dims[0]·dim J^k`.
pub fn check_feasible(a: &AlgebraData, n: usize, target: &FiltrationVector) -> Result<(), String> {
    let hs = a.hilbert_samuel().map_err(|e| e.to_string())?;
    let t = target.dims();
    if target.total() != n {
        return Err(format!("filtration {target} sums to {}, not {n}", target.total()));
    }
    if t.contains(&0) {
        return Err(format!("filtration {target} has a zero layer"));
    }
    if t.len() != hs.len() {
        return Err(format!(
            "a faithful module has exactly {} radical layers, {target} has {}",
            hs.len(),
            t.len()
        ));
    }
    let e = hs.get(1).copied().unwrap_or(0);
    for i in 0..t.len() - 1 {
        if t[i + 1] > t[i] * e {
            return Err(format!(
                "layer {} has dimension {} > {}·{} (dim J/J² = {e})",
                i + 1,
                t[i + 1],
                t[i],
                e
            ));
        }
    }
    // dim J^k A = sum of hs[k..].
    for k in 0..t.len() {
        let below: usize = t[k..].iter().sum();
        let jk: usize = hs[k..].iter().sum();
        if below > t[0] * jk {
            return Err(format!(
                "dim J^{k}V = {below} exceeds {}·dim J^{k}A = {}",
                t[0],
                t[0] * jk
            ));
        }
    }
    Ok(())
}

/// All filtrations of `n` passing [`check_feasible`], in lexicographic order.
pub fn feasible_filtrations(a: &AlgebraData, n: usize) -> Vec<FiltrationVector> {
    let Ok(hs) = a.hilbert_samuel() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut cur = Vec::new();
    compositions(n, hs.len(), &mut cur, &mut out);
    out.into_iter()
        .map(FiltrationVector)
        .filter(|f| check_feasible(a, n, f).is_ok())
        .collect()
}

fn compositions(rest: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 0 {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for first in 1..=rest.saturating_sub(parts - 1) {
        cur.push(first);
        compositions(rest - first, parts - 1, cur, out);
        cur.pop();
    }
}

/// Samples a faithful `n`-dimensional module. With `target = None` a
/// feasible filtration is picked at random per attempt.
pub fn sample_module(
    a: Arc<AlgebraData>,
    n: usize,
    target: Option<&FiltrationVector>,
    config: SampleConfig,
) -> SampleOutcome {
    let not_found = |reason: String| SampleOutcome::NotFound {
        reason: NotFoundReason::Infeasible(reason),
        attempts: 0,
    };
    if !a.is_local() {
        return not_found("algebra is not local".into());
    }
    let choices = match target {
        Some(t) => {
            if let Err(r) = check_feasible(&a, n, t) {
                return not_found(r);
            }
            vec![t.clone()]
        }
        None => {
            let all = feasible_filtrations(&a, n);
            if all.is_empty() {
                return not_found(format!("no feasible filtration of {n}"));
            }
            all
        }
    };
    let ctx = Context::new(&a);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for attempt in 0..config.attempts {
        rng.set_stream(attempt);
        rng.set_word_pos(0);
        let t = if choices.len() == 1 {
            &choices[0]
        } else {
            &choices[rng.random_range(0..choices.len())]
        };
        match ctx.attempt(&a, t, &mut rng) {
            Attempt::Built(rep) => {
                if rep.is_faithful() && rep.filtration().ok().as_ref() == Some(t) {
                    return SampleOutcome::Found { rep, attempt };
                }
            }
            Attempt::Blocked {
                layer,
                available,
                required,
            } if choices.len() == 1 => {
                return SampleOutcome::NotFound {
                    reason: NotFoundReason::Blocked {
                        layer,
                        available,
                        required,
                    },
                    attempts: attempt + 1,
                };
            }
            _ => {}
        }
    }
    SampleOutcome::NotFound {
        reason: NotFoundReason::Exhausted,
        attempts: config.attempts,
    }
}

enum Attempt {
    Built(ModuleRep),
    Failed,
    Blocked {
        layer: usize,
        available: usize,
        required: usize,
    },
}

/// Data of `A` reused across attempts.
struct Context {
    field: Field,
    dim: usize,
    /// Left multiplication by each basis element.
    mult: Vec<Matrix>,
    /// Left multiplication by each radical generator.
    gen_mult: Vec<Matrix>,
    /// Bases of `J^k A` for `k = 0..=L`.
    powers: Vec<Vec<Vector>>,
}

impl Context {
    fn new(a: &AlgebraData) -> Self {
        let j = a.radical();
        let mut powers = Vec::new();
        let mut e = 0;
        loop {
            let p = j.power(e);
            let done = p.dim() == 0;
            powers.push(p.vectors().to_vec());
            if done {
                break;
            }
            e += 1;
        }
        Context {
            field: a.field(),
            dim: a.dim(),
            mult: (0..a.dim())
                .map(|i| a.multiplication_matrix(&a.basis_vector(i)))
                .collect(),
            gen_mult: a
                .radical_generators()
                .iter()
                .map(|g| a.multiplication_matrix(g))
                .collect(),
            powers,
        }
    }

    /// `A` acting on copy `c` of `A^m`.
    fn act(&self, op: &Matrix, v: &[FieldElement], m: usize) -> Vector {
        let d = self.dim;
        let mut out = Vec::with_capacity(d * m);
        for c in 0..m {
            out.extend(op.mul_vec(&v[c * d..(c + 1) * d]).expect("square"));
        }
        out
    }

    /// Basis of `J^k F` for `F = A^m`.
    fn layer_basis(&self, k: usize, m: usize) -> Vec<Vector> {
        let d = self.dim;
        let mut out = Vec::new();
        for c in 0..m {
            for b in &self.powers[k.min(self.powers.len() - 1)] {
                let mut v = vec![self.field.zero(); d * m];
                v[c * d..(c + 1) * d].clone_from_slice(b);
                out.push(v);
            }
        }
        out
    }

    fn random_scalar(&self, rng: &mut ChaCha8Rng) -> FieldElement {
        match self.field {
            Field::Rationals => self.field.from_i64(rng.random_range(-2..=2)),
            Field::Prime(p) => self.field.from_i64(rng.random_range(0..p) as i64),
        }
    }

    fn attempt(&self, a: &Arc<AlgebraData>, t: &FiltrationVector, rng: &mut ChaCha8Rng) -> Attempt {
        match self.build(a, t, rng) {
            Ok(Some(rep)) => Attempt::Built(rep),
            Ok(None) => Attempt::Failed,
            Err((layer, available, required)) => Attempt::Blocked {
                layer,
                available,
                required,
            },
        }
    }

    /// `Err` when stuck before the first random draw.
    #[allow(clippy::type_complexity)]
    fn build(
        &self,
        a: &Arc<AlgebraData>,
        t: &FiltrationVector,
        rng: &mut ChaCha8Rng,
    ) -> Result<Option<ModuleRep>, (usize, usize, usize)> {
        let f = self.field;
        let m = t.top();
        let total = self.dim * m;
        let depth = t.len();
        let mut drawn = false;
        let mut n_sub = Subspace::zero(f, total);
        for k in (1..depth).rev() {
            let below: usize = t.dims()[k..].iter().sum();
            let need = m * self.powers[k].len() - below;
            if n_sub.dim() == need {
                continue;
            }
            // S_k = {v ∈ J^k F : g v ∈ N for every radical generator g}.
            let basis = self.layer_basis(k, m);
            let residuals: Vec<Vec<Vector>> = self
                .gen_mult
                .iter()
                .map(|g| basis.iter().map(|b| n_sub.reduce(&self.act(g, b, m))).collect())
                .collect();
            let mut rows = Vec::new();
            for per_gen in &residuals {
                for coord in 0..total {
                    rows.push(per_gen.iter().map(|r| r[coord].clone()).collect::<Vector>());
                }
            }
            let Ok(coeffs) = solve_homogeneous(f, basis.len(), &rows) else {
                return Ok(None);
            };
            let s_k: Vec<Vector> = coeffs.iter().map(|c| combine(f, total, c, &basis)).collect();
            let mut deep = n_sub.clone();
            for b in self.layer_basis(k + 1, m) {
                deep.insert(&b).expect("same ambient");
            }
            let mut room = deep.clone();
            for v in &s_k {
                room.insert(v).expect("same ambient");
            }
            let available = room.dim() - deep.dim();
            let required = need - n_sub.dim();
            if available < required {
                return if drawn { Ok(None) } else { Err((k, available, required)) };
            }
            while n_sub.dim() < need {
                let mut placed = false;
                for _ in 0..DRAWS_PER_VECTOR {
                    drawn = true;
                    let c: Vector = (0..s_k.len()).map(|_| self.random_scalar(rng)).collect();
                    let v = combine(f, total, &c, &s_k);
                    if deep.insert(&v).expect("same ambient") {
                        n_sub.insert(&v).expect("same ambient");
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    return Ok(None);
                }
            }
        }
        Ok(self.quotient(a, &n_sub, m))
    }

    /// The action of `A` on `F/N` in the coordinates not pivotal for `N`.
    fn quotient(&self, a: &Arc<AlgebraData>, n_sub: &Subspace, m: usize) -> Option<ModuleRep> {
        let f = self.field;
        let total = self.dim * m;
        let coords = n_sub.complement_coordinates();
        let q = coords.len();
        let images = self
            .mult
            .iter()
            .map(|op| {
                let cols: Vec<Vector> = coords
                    .iter()
                    .map(|&c| {
                        let mut e = vec![f.zero(); total];
                        e[c] = f.one();
                        let r = n_sub.reduce(&self.act(op, &e, m));
                        coords.iter().map(|&i| r[i].clone()).collect()
                    })
                    .collect();
                Matrix::from_columns(f, q, &cols).expect("well formed")
            })
            .collect();
        ModuleRep::new(a.clone(), images).ok()
    }
}

fn combine(f: Field, len: usize, coeffs: &[FieldElement], vectors: &[Vector]) -> Vector {
    let mut out = vec![f.zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (slot, x) in out.iter_mut().zip(v) {
            *slot = &*slot + &(c * x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog_entry;

    fn class(id: u32, f: Field) -> Arc<AlgebraData> {
        Arc::new(catalog_entry(id, f).unwrap().algebra)
    }

    fn cfg(seed: u64) -> SampleConfig {
        SampleConfig { seed, attempts: 200 }
    }

    #[test]
    fn class17_shape_2_4() {
        let t = FiltrationVector(vec![2, 4]);
        let out = sample_module(class(17, Field::Rationals), 6, Some(&t), cfg(1));
        let rep = out.rep().expect("found");
        assert!(rep.validate());
        assert!(rep.is_faithful());
        assert_eq!(rep.filtration().unwrap(), t);
    }

    #[test]
    fn class16_shape_2_3_1_over_fp() {
        let t = FiltrationVector(vec![2, 3, 1]);
        let f = Field::prime(101).unwrap();
        let rep = sample_module(class(16, f), 6, Some(&t), cfg(7))
            .into_rep()
            .expect("found");
        assert!(rep.validate());
        assert_eq!(rep.filtration().unwrap(), t);
    }

    #[test]
    fn wrong_sum_is_infeasible() {
        let t = FiltrationVector(vec![1, 1, 1, 1, 1]);
        match sample_module(class(9, Field::Rationals), 6, Some(&t), cfg(0)) {
            SampleOutcome::NotFound {
                reason: NotFoundReason::Infeasible(r),
                attempts: 0,
            } => assert!(r.contains("sums to 5")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cyclic_bound() {
        let a = class(17, Field::Rationals);
        let r = check_feasible(&a, 6, &FiltrationVector(vec![1, 5])).unwrap_err();
        assert!(r.contains("layer 1"), "{r}");
    }

    #[test]
    fn deterministic_given_seed() {
        let a = class(11, Field::Rationals);
        let t = FiltrationVector(vec![2, 2, 2]);
        let x = sample_module(a.clone(), 6, Some(&t), cfg(42));
        let y = sample_module(a, 6, Some(&t), cfg(42));
        match (x, y) {
            (SampleOutcome::Found { rep: r1, attempt: a1 }, SampleOutcome::Found { rep: r2, attempt: a2 }) => {
                assert_eq!(a1, a2);
                assert_eq!(r1.images(), r2.images());
            }
            _ => panic!("expected both found"),
        }
    }

    #[test]
    fn untargeted_sampling() {
        let a = class(14, Field::Rationals);
        let rep = sample_module(a.clone(), 6, None, cfg(3)).into_rep().expect("found");
        let f = rep.filtration().unwrap();
        assert!(check_feasible(&a, 6, &f).is_ok());
    }

    #[test]
    fn feasible_lists() {
        let a = class(9, Field::Rationals);
        let all = feasible_filtrations(&a, 6);
        assert_eq!(all, vec![FiltrationVector(vec![2, 1, 1, 1, 1])]);
        let a = class(17, Field::Rationals);
        let shapes: Vec<_> = feasible_filtrations(&a, 6).into_iter().map(|f| f.0).collect();
        assert_eq!(shapes, vec![vec![2, 4], vec![3, 3], vec![4, 2], vec![5, 1]]);
    }

    #[test]
    fn nondegenerate_form_blocks_thin_middle_layer() {
        // A nondegenerate J/J² × J/J² → J² needs dim JV/J²V ≥ 3.
        let a = class(14, Field::Rationals);
        match sample_module(a, 6, Some(&FiltrationVector(vec![2, 2, 2])), cfg(0)) {
            SampleOutcome::NotFound {
                reason: NotFoundReason::Blocked {
                    required, available, ..
                },
                attempts: 1,
            } => assert!(available < required),
            other => panic!("unexpected {other:?}"),
        }
    }
}
