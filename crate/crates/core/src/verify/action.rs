//! Rational group elements and their exact action on the representation
//! space.
//!
//! An element carries its matrix and exact inverse. The action on an element
//! f of the space is substitution: the coordinate xᵢ is replaced by the i-th
//! row of g⁻¹ applied to the coordinates (so that (g·f)(v) = f(g⁻¹v)), and a
//! dual coordinate dᵢ by the i-th column of g applied to the duals — the
//! contragredient action, which makes the pairing between the two families
//! invariant.
//!
//! Random sampling is exact and seeded: GL elements are products of integer
//! shear matrices, orthogonal and symplectic elements come from the Cayley
//! transform g = (I − S)(I + S)⁻¹ with S rational and (skew-)Hamiltonian,
//! composed with signed permutations in the orthogonal case to reach both
//! components.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Poly;
use crate::scalar::{rat, Rat};
use crate::verify::matrix::Mat;
use crate::verify::psi::PsiElement;
use crate::verify::VerifyError;
use crate::Group;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    group: Group,
    mat: Mat,
    inv: Mat,
}

impl GroupElement {
    /// Validates the matrix against the group: square of the right size,
    /// invertible, and satisfying the defining equations (gᵀg = I for O,
    /// gᵀJg = J for Sp).
    pub fn from_matrix(group: Group, mat: Mat) -> Result<GroupElement, VerifyError> {
        let m = group.index_len();
        if mat.rows() != m || mat.cols() != m {
            return Err(VerifyError::BadShape {
                rows: mat.rows(),
                cols: mat.cols(),
                expect: m,
            });
        }
        let ok = match group {
            Group::Gl { .. } => true,
            Group::O { .. } => mat.is_orthogonal(),
            Group::Sp { .. } => mat.is_symplectic(),
        };
        if !ok {
            return Err(VerifyError::NotInGroup(group));
        }
        let inv = mat.inverse().ok_or(VerifyError::NotInvertible)?;
        Ok(GroupElement { group, mat, inv })
    }

    pub fn identity(group: Group) -> GroupElement {
        let id = Mat::identity(group.index_len());
        GroupElement {
            group,
            mat: id.clone(),
            inv: id,
        }
    }

    /// A seeded pseudorandom element, exact over the rationals.
    pub fn random(group: Group, seed: u64) -> GroupElement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = group.index_len();
        let mat = match group {
            Group::Gl { .. } => {
                // Product of integer shears (row_i += c·row_j) and a few
                // sign flips: determinant ±1, exact integer inverse.
                let mut g = Mat::identity(m);
                for _ in 0..2 * m + 2 {
                    if m >= 2 {
                        let i = rng.random_range(0..m);
                        let mut j = rng.random_range(0..m - 1);
                        if j >= i {
                            j += 1;
                        }
                        let c = pick_nonzero(&mut rng, 2);
                        for col in 0..m {
                            let v = g.get(i, col) + rat(c, 1) * g.get(j, col);
                            g.set(i, col, v);
                        }
                    }
                    if rng.random_range(0..4) == 0 {
                        let i = rng.random_range(0..m);
                        for col in 0..m {
                            let v = -g.get(i, col).clone();
                            g.set(i, col, v);
                        }
                    }
                }
                g
            }
            Group::O { .. } => {
                // Cayley transform of a random skew-symmetric matrix (always
                // defined: I + S is nonsingular for skew S), then a signed
                // permutation to reach the determinant −1 component too.
                let mut s = Mat::zeros(m, m);
                for i in 0..m {
                    for j in i + 1..m {
                        let v = small_rat(&mut rng);
                        s.set(i, j, v.clone());
                        s.set(j, i, -v);
                    }
                }
                cayley(&s).mul(&signed_permutation(&mut rng, m))
            }
            Group::Sp { n } => {
                // S = −J·T with T symmetric is Hamiltonian; resample in the
                // rare case I + S is singular.
                let n = n as usize;
                loop {
                    let mut t = Mat::zeros(m, m);
                    for i in 0..m {
                        for j in i..m {
                            let v = small_rat(&mut rng);
                            t.set(i, j, v.clone());
                            t.set(j, i, v);
                        }
                    }
                    let j = Mat::symplectic_form(n);
                    let mut s = j.mul(&t);
                    for r in 0..m {
                        for c in 0..m {
                            let v = -s.get(r, c).clone();
                            s.set(r, c, v);
                        }
                    }
                    if let Some(g) = try_cayley(&s) {
                        break g;
                    }
                }
            }
        };
        GroupElement::from_matrix(group, mat).expect("sampled matrix must satisfy the group equations")
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &Mat {
        &self.inv
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, VerifyError> {
        if !self.group.same_as(&other.group) {
            return Err(VerifyError::GroupMismatch {
                expected: self.group,
                got: other.group,
            });
        }
        Ok(GroupElement {
            group: self.group,
            mat: self.mat.mul(&other.mat),
            inv: other.inv.mul(&self.inv),
        })
    }

    /// g·ψ by exact substitution.
    pub fn apply(&self, psi: &PsiElement) -> Result<PsiElement, VerifyError> {
        if !self.group.same_as(psi.group()) {
            return Err(VerifyError::GroupMismatch {
                expected: self.group,
                got: *psi.group(),
            });
        }
        let m = self.group.index_len();
        // xᵢ ↦ Σⱼ (g⁻¹)ᵢⱼ xⱼ, dᵢ ↦ Σⱼ gⱼᵢ dⱼ.
        let x_images: Vec<Poly<_, Rat>> = (0..m)
            .map(|i| {
                let mut p = Poly::zero();
                for j in 0..m {
                    p = p.add(&Poly::var(j as u32).scale(self.inv.get(i, j)));
                }
                p
            })
            .collect();
        let d_images: Vec<Poly<_, Rat>> = if self.group.is_gl() {
            (0..m)
                .map(|i| {
                    let mut p = Poly::zero();
                    for j in 0..m {
                        p = p.add(&Poly::var(1 << 16 | j as u32).scale(self.mat.get(j, i)));
                    }
                    p
                })
                .collect()
        } else {
            Vec::new()
        };
        let image = psi.poly().substitute(&|id| {
            if id & (1 << 16) != 0 {
                d_images[(id & !(1 << 16)) as usize].clone()
            } else {
                x_images[id as usize].clone()
            }
        });
        Ok(PsiElement::from_poly(self.group, image))
    }
}

fn pick_nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let c = rng.random_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.random_range(-2..=2), rng.random_range(1..=2))
}

/// (I − S)(I + S)⁻¹; panics if I + S is singular.
fn cayley(s: &Mat) -> Mat {
    try_cayley(s).expect("Cayley transform of a skew-symmetric matrix is always defined")
}

fn try_cayley(s: &Mat) -> Option<Mat> {
    let n = s.rows();
    let mut plus = Mat::identity(n);
    let mut minus = Mat::identity(n);
    for i in 0..n {
        for j in 0..n {
            let v = s.get(i, j);
            if !v.is_zero() {
                plus.set(i, j, plus.get(i, j) + v);
                minus.set(i, j, minus.get(i, j) - v);
            }
        }
    }
    Some(minus.mul(&plus.inverse()?))
}

fn signed_permutation(rng: &mut ChaCha8Rng, m: usize) -> Mat {
    let mut perm: Vec<usize> = (0..m).collect();
    // Fisher–Yates.
    for i in (1..m).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let mut p = Mat::zeros(m, m);
    for (i, &pi) in perm.iter().enumerate() {
        let sign = if rng.random_range(0..2) == 0 { 1 } else { -1 };
        p.set(i, pi, rat(sign, 1));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{Flavor, Multigraph};
    use crate::scalar::int;
    use crate::umbral::graph_invariant;
    use crate::verify::psi::{evaluate, parse_psi};

    fn vector_field() -> PsiElement {
        parse_psi(
            "(x1^2 + x2^2 + 2x1x2 + 2x1 + 2x2 + 1)d1 + (x1^2 + x2^2 - 2x1x2 + 4x1 - 4x2 + 4)d2",
            &Group::gl(2),
        )
        .unwrap()
    }

    #[test]
    fn action_golden_values() {
        let g = GroupElement::from_matrix(
            Group::gl(2),
            Mat::from_rows(vec![vec![rat(0, 1), rat(-2, 1)], vec![rat(1, 1), rat(0, 1)]]).unwrap(),
        )
        .unwrap();
        let moved = g.apply(&vector_field()).unwrap();
        // d1-component coefficients on x1², x2², x1x2, x1, x2, 1.
        let expect_d1 = [rat(-1, 2), rat(-2, 1), rat(-2, 1), rat(-4, 1), rat(-8, 1), rat(-8, 1)];
        let expect_d2 = [rat(1, 4), rat(1, 1), rat(-1, 1), rat(-1, 1), rat(2, 1), rat(1, 1)];
        let mono = |a: &[u32]| crate::multiindex::MultiIndex::new(a.to_vec());
        let shapes: [&[u32]; 6] = [&[2, 0], &[0, 2], &[1, 1], &[1, 0], &[0, 1], &[0, 0]];
        for (i, shape) in shapes.iter().enumerate() {
            assert_eq!(
                moved.coefficient(&mono(shape), Some(&mono(&[1, 0]))).unwrap(),
                expect_d1[i],
                "d1 component at x^{shape:?}"
            );
            assert_eq!(
                moved.coefficient(&mono(shape), Some(&mono(&[0, 1]))).unwrap(),
                expect_d2[i],
                "d2 component at x^{shape:?}"
            );
        }
    }

    #[test]
    fn invariants_agree_before_and_after_moving() {
        let psi = vector_field();
        let g = GroupElement::from_matrix(
            Group::gl(2),
            Mat::from_rows(vec![vec![rat(0, 1), rat(-2, 1)], vec![rat(1, 1), rat(0, 1)]]).unwrap(),
        )
        .unwrap();
        let moved = g.apply(&psi).unwrap();
        let cases = [
            (vec![vec![1, 0], vec![0, 1]], int(4)),
            (vec![vec![0, 1], vec![1, 0]], int(36)),
            (vec![vec![1, 0], vec![1, 0]], int(16)),
        ];
        for (rows, expect) in cases {
            let graph = Multigraph::from_adjacency(Flavor::DirectedLoops, &rows).unwrap();
            let inv = graph_invariant(&Group::gl(2), &graph).unwrap();
            let expect = Rat::from(expect);
            assert_eq!(evaluate(&inv, &psi).unwrap(), expect, "{graph} at ψ");
            assert_eq!(evaluate(&inv, &moved).unwrap(), expect, "{graph} at g·ψ");
        }
    }

    #[test]
    fn vector_fields_kill_unbalanced_graphs() {
        // Every term of ψ has exactly one dual coordinate, so any graph with
        // a vertex of out-degree ≠ 1 pairs to zero.
        let psi = vector_field();
        for rows in [
            vec![vec![2, 0], vec![0, 0]],
            vec![vec![0, 2], vec![0, 0]],
            vec![vec![1, 1], vec![0, 0]],
        ] {
            let graph = Multigraph::from_adjacency(Flavor::DirectedLoops, &rows).unwrap();
            let inv = graph_invariant(&Group::gl(2), &graph).unwrap();
            assert_eq!(evaluate(&inv, &psi).unwrap(), Rat::zero(), "{graph}");
        }
    }

    #[test]
    fn scaling_is_degree_homogeneous() {
        let psi = vector_field();
        let graph =
            Multigraph::from_adjacency(Flavor::DirectedLoops, &[vec![1, 0], vec![1, 0]]).unwrap();
        let inv = graph_invariant(&Group::gl(2), &graph).unwrap();
        let t = rat(3, 2);
        let scaled = psi.scale(&t);
        // d = 2 vertices: values scale by t².
        assert_eq!(
            evaluate(&inv, &scaled).unwrap(),
            evaluate(&inv, &psi).unwrap() * &t * &t
        );
    }

    #[test]
    fn sampled_elements_satisfy_group_equations() {
        for seed in 0..10 {
            let g = GroupElement::random(Group::o(3), seed);
            assert!(g.matrix().is_orthogonal());
            assert!(g.matrix().mul(g.inverse_matrix()).is_identity());

            let s = GroupElement::random(Group::sp(2), seed);
            assert!(s.matrix().is_symplectic());

            let gl = GroupElement::random(Group::gl(3), seed);
            assert!(gl.matrix().mul(gl.inverse_matrix()).is_identity());
        }
    }

    #[test]
    fn composition_acts_as_iterated_action() {
        let psi = vector_field();
        let g = GroupElement::random(Group::gl(2), 11);
        let h = GroupElement::random(Group::gl(2), 12);
        let gh = g.compose(&h).unwrap();
        let via_compose = gh.apply(&psi).unwrap();
        let via_steps = g.apply(&h.apply(&psi).unwrap()).unwrap();
        assert_eq!(via_compose, via_steps);

        let o = GroupElement::random(Group::o(2), 13);
        assert!(g.compose(&o).is_err());
    }

    #[test]
    fn from_matrix_rejects_outsiders() {
        let not_orth = Mat::from_rows(vec![vec![rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]]).unwrap();
        assert!(matches!(
            GroupElement::from_matrix(Group::o(2), not_orth),
            Err(VerifyError::NotInGroup(_))
        ));
        let singular = Mat::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]]).unwrap();
        assert!(matches!(
            GroupElement::from_matrix(Group::gl(2), singular),
            Err(VerifyError::NotInvertible)
        ));
        let wrong_size = Mat::identity(3);
        assert!(matches!(
            GroupElement::from_matrix(Group::sp(1), wrong_size),
            Err(VerifyError::BadShape { .. })
        ));
    }
}
