//! Normal form of three maps `k^3 → k^2` under
//! `L'_i = Q (Σ_j G_ij L_j) P` with `Q ∈ GL_2`, `P ∈ GL_3`, `G ∈ GL_3`.
//!
//! The target is `L_x = [I | 0]`, `L_y = E_13`, `L_z = E_23`, whose span is
//! `W_0 = {[aI | c]}`. A triple lies in this orbit iff, after moving a
//! rank-2 member to `[I | 0]`, the other two are `[α_i I + c_i σ | c_i]`
//! for one common row `σ` and independent columns `c_2, c_3`. The reduction
//! below follows exactly these steps, so it is a complete test.

use super::BaseChange;
use crate::error::NormalFormError;
use crate::field::{Field, FieldElement};
use crate::matrix::{solve_homogeneous, Matrix, Vector};

pub type Triple = [Matrix; 3];

pub fn canonical_triple(field: Field) -> Triple {
    [
        Matrix::from_i64(field, &[&[1, 0, 0], &[0, 1, 0]]),
        Matrix::from_i64(field, &[&[0, 0, 1], &[0, 0, 0]]),
        Matrix::from_i64(field, &[&[0, 0, 0], &[0, 0, 1]]),
    ]
}

/// `(Q, P, G)` acting by `Q (Σ G L) P`.
#[derive(Clone, Debug)]
struct Move {
    q: Matrix,
    p: Matrix,
    g: Matrix,
}

impl Move {
    fn identity(f: Field) -> Self {
        Move {
            q: Matrix::identity(f, 2),
            p: Matrix::identity(f, 3),
            g: Matrix::identity(f, 3),
        }
    }

    fn then(&self, next: &Move) -> Move {
        Move {
            q: next.q.mul(&self.q).expect("2x2"),
            p: self.p.mul(&next.p).expect("3x3"),
            g: next.g.mul(&self.g).expect("3x3"),
        }
    }

    fn apply(&self, t: &Triple) -> Triple {
        let f = self.q.field();
        std::array::from_fn(|i| {
            let mut acc = Matrix::zeros(f, 2, 3);
            for (j, l) in t.iter().enumerate() {
                acc = acc.add(&l.scale(self.g.get(i, j))).expect("2x3");
            }
            self.q.mul(&acc).and_then(|m| m.mul(&self.p)).expect("2x3")
        })
    }

    /// Layer transforms `[P^{-1}, Q]` on `V_0`, `V_1`.
    fn into_base_change(self) -> BaseChange {
        BaseChange {
            layers: vec![self.p.inverse().expect("invertible"), self.q],
            mix: self.g,
        }
    }
}

/// Applies a triple base change `BaseChange { layers: [T_0, T_1], mix }`:
/// `L'_i = T_1 (Σ_j mix_ij L_j) T_0^{-1}`.
pub fn apply_to_triple(change: &BaseChange, t: &Triple) -> Triple {
    Move {
        q: change.layers[1].clone(),
        p: change.layers[0].inverse().expect("invertible"),
        g: change.mix.clone(),
    }
    .apply(t)
}

fn check_input(t: &Triple) -> Result<Field, NormalFormError> {
    let f = t[0].field();
    for (i, m) in t.iter().enumerate() {
        if m.rows() != 2 || m.cols() != 3 || m.field() != f {
            return Err(NormalFormError::Malformed(format!(
                "map {i} must be a 2x3 matrix over {f}"
            )));
        }
    }
    Ok(f)
}

fn combination(f: Field, c: &[FieldElement], t: &Triple) -> Matrix {
    let mut acc = Matrix::zeros(f, 2, 3);
    for (k, l) in c.iter().zip(t) {
        acc = acc.add(&l.scale(k)).expect("2x3");
    }
    acc
}

/// Coefficients of the three 2×2-minor quadratic forms of `Σ a_i L_i`.
fn minors_vanish_identically(t: &Triple) -> bool {
    for (c, d) in [(0, 1), (0, 2), (1, 2)] {
        let m = |i: usize, j: usize| &(t[i].get(0, c) * t[j].get(1, d)) - &(t[i].get(0, d) * t[j].get(1, c));
        for i in 0..3 {
            if !m(i, i).is_zero() {
                return false;
            }
            for j in i + 1..3 {
                if !(&m(i, j) + &m(j, i)).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Search order: unit vectors, then all of `{-5..5}^3` lexicographically.
fn search_grid(f: Field) -> impl Iterator<Item = [FieldElement; 3]> {
    let units = (0..3).map(move |i| std::array::from_fn(|j| if i == j { f.one() } else { f.zero() }));
    let grid = (-5i64..=5).flat_map(move |a| {
        (-5i64..=5).flat_map(move |b| (-5i64..=5).map(move |c| [f.from_i64(a), f.from_i64(b), f.from_i64(c)]))
    });
    units.chain(grid)
}

/// Solves `A u = b` for a single solution, if one exists.
fn solve_affine(f: Field, a: &[Vector], b: &[FieldElement]) -> Option<Vector> {
    let cols = a.first().map_or(0, Vec::len);
    let rows: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(-bi);
            r
        })
        .collect();
    let kernel = solve_homogeneous(f, cols + 1, &rows).ok()?;
    let k = kernel.into_iter().find(|k| !k[cols].is_zero())?;
    let s = k[cols].inv()?;
    Some(k[..cols].iter().map(|x| x * &s).collect())
}

/// Reduces a triple to the canonical one. On success the returned base
/// change maps the input exactly onto [`canonical_triple`].
pub fn triple_normal_form(t: &Triple) -> Result<(Triple, BaseChange), NormalFormError> {
    let f = check_input(t)?;
    let stacked = Matrix::from_fn(f, 2, 9, |i, j| t[j / 3].get(i, j % 3).clone());
    if stacked.rank() < 2 {
        return Err(NormalFormError::NotSpanning);
    }
    if minors_vanish_identically(t) {
        return Err(NormalFormError::DegeneratePencil);
    }
    let coeffs = search_grid(f)
        .find(|c| combination(f, c, t).rank() == 2)
        .ok_or(NormalFormError::DegeneratePencil)?;

    // Mix: first row is the rank-2 combination, completed by unit rows.
    let mut g = None;
    for (a, b) in [(1, 2), (0, 2), (0, 1)] {
        let unit = |k: usize| -> Vector { (0..3).map(|j| if j == k { f.one() } else { f.zero() }).collect() };
        let cand = Matrix::from_rows(f, vec![coeffs.to_vec(), unit(a), unit(b)]).expect("3x3");
        if cand.is_invertible() {
            g = Some(cand);
            break;
        }
    }
    let g = g.expect("nonzero first row completes");
    let k = combination(f, &coeffs, t);

    // [I | 0] from the rank-2 member: P = [e_a e_b ker], Q = [K e_a, K e_b]^{-1}.
    let kernel = k.kernel_basis().pop().expect("rank 2 on k^3");
    let (a, b) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(a, b)| {
            Matrix::from_columns(f, 2, &[k.column(a), k.column(b)])
                .expect("2x2")
                .is_invertible()
        })
        .expect("rank 2");
    let unit3 = |idx: usize| -> Vector { (0..3).map(|j| if j == idx { f.one() } else { f.zero() }).collect() };
    let p1 = Matrix::from_columns(f, 3, &[unit3(a), unit3(b), kernel]).expect("3x3");
    let q1 = Matrix::from_columns(f, 2, &[k.column(a), k.column(b)])
        .expect("2x2")
        .inverse()
        .expect("invertible");
    let step1 = Move { q: q1, p: p1, g };
    let t1 = step1.apply(t);
    debug_assert!(t1[0] == canonical_triple(f)[0]);

    // S_i = α_i I + c_i σ for i = 2, 3; unknowns (α_2, α_3, σ_1, σ_2).
    let s = |i: usize| t1[i].block(0, 0, 2, 2);
    let c = |i: usize| t1[i].column(2);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (slot, i) in [1usize, 2].into_iter().enumerate() {
        let (si, ci) = (s(i), c(i));
        for (r, cr) in ci.iter().enumerate().take(2) {
            for col in 0..2 {
                let mut row = vec![f.zero(); 4];
                if r == col {
                    row[slot] = f.one();
                }
                row[2 + col] = cr.clone();
                rows.push(row);
                rhs.push(si.get(r, col).clone());
            }
        }
    }
    let sol = solve_affine(f, &rows, &rhs).ok_or_else(|| {
        NormalFormError::OutsideCanonicalOrbit("the square parts are not of the form αI + c·σ with a common σ".into())
    })?;
    let (alpha2, alpha3) = (sol[0].clone(), sol[1].clone());
    let sigma = [sol[2].clone(), sol[3].clone()];
    let g2 = Matrix::from_rows(
        f,
        vec![
            vec![f.one(), f.zero(), f.zero()],
            vec![-&alpha2, f.one(), f.zero()],
            vec![-&alpha3, f.zero(), f.one()],
        ],
    )
    .expect("3x3");
    let p2 = Matrix::from_rows(
        f,
        vec![
            vec![f.one(), f.zero(), f.zero()],
            vec![f.zero(), f.one(), f.zero()],
            vec![-&sigma[0], -&sigma[1], f.one()],
        ],
    )
    .expect("3x3");
    let step2 = Move {
        q: Matrix::identity(f, 2),
        p: p2,
        g: g2,
    };

    let cmat = Matrix::from_columns(f, 2, &[c(1), c(2)]).expect("2x2");
    let q3 = cmat
        .inverse()
        .ok_or_else(|| NormalFormError::OutsideCanonicalOrbit("the last columns are linearly dependent".into()))?;
    let p3 = Matrix::identity(f, 3).with_block(0, 0, &cmat).expect("fits");
    let step3 = Move {
        q: q3,
        p: p3,
        g: Matrix::identity(f, 3),
    };

    let total = Move::identity(f).then(&step1).then(&step2).then(&step3);
    let canonical = canonical_triple(f);
    if total.apply(t) != canonical {
        return Err(NormalFormError::OutsideCanonicalOrbit(
            "composed base change does not reach the canonical triple".into(),
        ));
    }
    Ok((canonical, total.into_base_change()))
}

/// Whether the triple is equivalent to the canonical one.
pub fn triple_in_canonical_orbit(t: &Triple) -> Result<bool, NormalFormError> {
    match triple_normal_form(t) {
        Ok(_) => Ok(true),
        Err(NormalFormError::OutsideCanonicalOrbit(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Coefficients `(c_0, c_1, c_2, c_3)` of `det(s T_0 + t T_1) = Σ c_k s^{3-k} t^k`,
/// where `T_r` has rows `row r of L_x, L_y, L_z`. Identically zero on the
/// canonical orbit, and vanishing identically is preserved by every base
/// change.
pub fn pencil_cubic(t: &Triple) -> [FieldElement; 4] {
    let f = t[0].field();
    let slice = |r: usize| Matrix::from_fn(f, 3, 3, |i, j| t[i].get(r, j).clone());
    let (t0, t1) = (slice(0), slice(1));
    // The determinant is multilinear in columns: c_k sums the minors taking
    // k columns from T_1 and the rest from T_0.
    let mut c = [f.zero(), f.zero(), f.zero(), f.zero()];
    for mask in 0u8..8 {
        let m = Matrix::from_fn(f, 3, 3, |i, j| {
            if mask & (1 << j) != 0 {
                t1.get(i, j).clone()
            } else {
                t0.get(i, j).clone()
            }
        });
        let k = mask.count_ones() as usize;
        c[k] = &c[k] + &det3(&m);
    }
    c
}

fn det3(m: &Matrix) -> FieldElement {
    let e = |i, j| m.get(i, j);
    let a = e(0, 0) * &(&(e(1, 1) * e(2, 2)) - &(e(1, 2) * e(2, 1)));
    let b = e(0, 1) * &(&(e(1, 0) * e(2, 2)) - &(e(1, 2) * e(2, 0)));
    let c = e(0, 2) * &(&(e(1, 0) * e(2, 1)) - &(e(1, 1) * e(2, 0)));
    &(&a - &b) + &c
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rationals;

    fn random_invertible(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        loop {
            let m = Matrix::from_fn(f, n, n, |_, _| f.from_i64(rng.random_range(-3..=3)));
            if m.is_invertible() {
                return m;
            }
        }
    }

    #[test]
    fn canonical_is_fixed() {
        let c = canonical_triple(Q);
        let (out, bc) = triple_normal_form(&c).unwrap();
        assert_eq!(out, c);
        assert!(bc.is_identity());
    }

    #[test]
    fn random_conjugates_reduce_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in [Q, Field::prime(101).unwrap(), Field::prime(3).unwrap()] {
            let c = canonical_triple(f);
            for _ in 0..30 {
                let mv = Move {
                    q: random_invertible(f, 2, &mut rng),
                    p: random_invertible(f, 3, &mut rng),
                    g: random_invertible(f, 3, &mut rng),
                };
                let t = mv.apply(&c);
                let (out, bc) = triple_normal_form(&t).unwrap();
                assert_eq!(out, c);
                assert_eq!(apply_to_triple(&bc, &t), c);
                assert!(bc.is_invertible());
            }
        }
    }

    fn with_row(f: Field, u: i64, v: i64, w: i64) -> Triple {
        let mut t = canonical_triple(f);
        t[2] = Matrix::from_i64(f, &[&[0, 0, 0], &[u, v, w]]);
        t
    }

    #[test]
    fn bottom_rows() {
        assert!(triple_in_canonical_orbit(&with_row(Q, 0, 0, 5)).unwrap());
        assert!(!triple_in_canonical_orbit(&with_row(Q, 1, 0, 0)).unwrap());
        assert!(!triple_in_canonical_orbit(&with_row(Q, 0, 1, 1)).unwrap());
    }

    #[test]
    fn pencil_certificate() {
        for f in [Q, Field::prime(101).unwrap(), Field::prime(2).unwrap()] {
            let zero = [f.zero(), f.zero(), f.zero(), f.zero()];
            assert_eq!(pencil_cubic(&canonical_triple(f)), zero);
            // det = s t (t u - s v) = -v s^2 t + u s t^2.
            for (u, v, w) in [(1, 0, 0), (0, 1, 0), (2, -3, 1), (0, 0, 1)] {
                let c = pencil_cubic(&with_row(f, u, v, w));
                assert_eq!(c, [f.zero(), f.from_i64(-v), f.from_i64(u), f.zero()]);
            }
        }
    }

    #[test]
    fn pencil_matches_expansion() {
        // Cross-check against det evaluated at two more points.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let t: Triple =
                std::array::from_fn(|_| Matrix::from_fn(Q, 2, 3, |_, _| Q.from_i64(rng.random_range(-3..=3))));
            let c = pencil_cubic(&t);
            let slice = |r: usize| Matrix::from_fn(Q, 3, 3, |i, j| t[i].get(r, j).clone());
            for (s, u) in [(2i64, 1i64), (1, 3)] {
                let m = slice(0)
                    .scale(&Q.from_i64(s))
                    .add(&slice(1).scale(&Q.from_i64(u)))
                    .unwrap();
                let expect = Q.from_i64(s * s * s) * c[0].clone()
                    + Q.from_i64(s * s * u) * c[1].clone()
                    + Q.from_i64(s * u * u) * c[2].clone()
                    + Q.from_i64(u * u * u) * c[3].clone();
                assert_eq!(det3(&m), expect);
            }
        }
    }

    #[test]
    fn errors() {
        let z = Matrix::zeros(Q, 2, 3);
        let r1 = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 0, 0]]);
        assert!(matches!(
            triple_normal_form(&[r1.clone(), z.clone(), z.clone()]),
            Err(NormalFormError::NotSpanning)
        ));
        // Spanning, yet every combination has rank ≤ 1.
        let a = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 0, 0]]);
        let b = Matrix::from_i64(Q, &[&[0, 0, 0], &[1, 0, 0]]);
        assert!(matches!(
            triple_normal_form(&[a, b, z.clone()]),
            Err(NormalFormError::DegeneratePencil)
        ));
        let bad = Matrix::zeros(Q, 3, 3);
        assert!(matches!(
            triple_normal_form(&[bad, z.clone(), z]),
            Err(NormalFormError::Malformed(_))
        ));
    }
}
