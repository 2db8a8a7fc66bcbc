//! Finitely supported set-valued random variables `P(Y = K_j) = p_j`.

use serde::Serialize;

use crate::convex::{
    self, hausdorff, is_facet_face, minkowski_sum, nearest_point, scale, support_face,
    support_unchecked, ConvexBody,
};
use crate::error::{Error, Result};
use crate::vector::{Direction, Vector};

/// Weight sums within this distance of one are renormalized.
pub const WEIGHT_SUM_TOL: f64 = 1e-6;
/// Tolerance for the face-of-expectation identity, relative to `1 + ‖EY‖`.
pub const COMMUTATION_TOL: f64 = 1e-9;
/// Tolerance for `mean of nearest points ≈ nearest point of EY`.
pub const COMPATIBILITY_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Atom {
    pub weight: f64,
    pub body: ConvexBody,
}

/// The law of a random convex polytope with finitely many outcomes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscreteRandomSet {
    dim: usize,
    atoms: Vec<Atom>,
}

impl DiscreteRandomSet {
    /// Weights must be positive and sum to one within `1e-6`; they are
    /// renormalized to sum to one exactly (up to rounding).
    pub fn new(atoms: Vec<(f64, ConvexBody)>) -> Result<Self> {
        let dim = atoms.first().ok_or(Error::Empty("atom list"))?.1.dim();
        for (i, (w, body)) in atoms.iter().enumerate() {
            if !(w.is_finite() && *w > 0.0 && *w <= 1.0 + WEIGHT_SUM_TOL) {
                return Err(Error::InvalidWeight {
                    atom: i,
                    weight: *w,
                });
            }
            body.check_dim(dim)?;
        }
        let total: f64 = atoms.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::WeightSum(total));
        }
        Ok(DiscreteRandomSet {
            dim,
            atoms: atoms
                .into_iter()
                .map(|(w, body)| Atom {
                    weight: w / total,
                    body,
                })
                .collect(),
        })
    }

    /// A deterministic random set.
    pub fn constant(body: ConvexBody) -> Self {
        DiscreteRandomSet {
            dim: body.dim(),
            atoms: vec![Atom { weight: 1.0, body }],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `‖Y‖ = max_j max_{k ∈ K_j} ‖k‖`, the constant envelope of a finite law.
    pub fn envelope(&self) -> f64 {
        self.atoms.iter().map(|a| a.body.radius()).fold(0.0, f64::max)
    }

    /// Aumann expectation `EY = Σ_j p_j K_j`.
    pub fn expectation(&self) -> Result<ConvexBody> {
        let mut acc: Option<ConvexBody> = None;
        for atom in &self.atoms {
            let part = scale(&atom.body, atom.weight)?;
            acc = Some(match acc {
                None => part,
                Some(sum) => minkowski_sum(&sum, &part)?,
            });
        }
        Ok(acc.expect("at least one atom"))
    }

    /// Face of the expectation in direction `f`, with the per-atom faces.
    ///
    /// The identity `∂s_{EY}(f) = Σ_j p_j ∂s_{K_j}(f)` is verified on every
    /// call; a residual above tolerance is returned as
    /// [`Error::CommutationViolated`].
    pub fn expectation_face(&self, f: &Direction) -> Result<ExpectationFace> {
        let mean = self.expectation()?;
        self.expectation_face_of(&mean, f)
    }

    pub(crate) fn expectation_face_of(
        &self,
        mean: &ConvexBody,
        f: &Direction,
    ) -> Result<ExpectationFace> {
        let face = support_face(mean, f.as_vector())?.face;
        let atom_faces = self
            .atoms
            .iter()
            .map(|a| Ok(support_face(&a.body, f.as_vector())?.face))
            .collect::<Result<Vec<_>>>()?;
        let weighted = DiscreteRandomSet {
            dim: self.dim,
            atoms: self
                .atoms
                .iter()
                .zip(&atom_faces)
                .map(|(a, face)| Atom {
                    weight: a.weight,
                    body: face.clone(),
                })
                .collect(),
        }
        .expectation()?;
        let residual = hausdorff(&face, &weighted)?;
        if residual > COMMUTATION_TOL * (1.0 + mean.radius()) {
            return Err(Error::CommutationViolated { residual });
        }
        Ok(ExpectationFace {
            face,
            atom_faces,
            residual,
        })
    }

    /// The unique selection `k_j = argmax_{K_j} f` when `f` exposes a point
    /// of every atom (equivalently, of the expectation).
    pub fn exposed_selection(&self, f: &Direction) -> Result<Selection> {
        f.as_vector().check_dim(self.dim)?;
        let mut points = Vec::with_capacity(self.atoms.len());
        let mut offending = Vec::new();
        for (j, atom) in self.atoms.iter().enumerate() {
            let cert = support_face(&atom.body, f.as_vector())?;
            if cert.is_exposed {
                points.push(cert.face.vertices()[0].clone());
            } else {
                offending.push(j);
            }
        }
        if !offending.is_empty() {
            return Err(Error::NotExposed { atoms: offending });
        }
        Ok(Selection::new(self.weights(), points))
    }

    /// The selection of nearest points `k_x(K_j)`.
    pub fn nearest_point_selection(&self, x: &Vector) -> Result<NearestSelection> {
        x.check_dim(self.dim)?;
        let points = self
            .atoms
            .iter()
            .map(|a| nearest_point(&a.body, x))
            .collect::<Result<Vec<_>>>()?;
        let selection = Selection::new(self.weights(), points);
        let nearest = nearest_point(&self.expectation()?, x)?;
        let compatible =
            selection.mean.distance(&nearest) <= COMPATIBILITY_TOL * (1.0 + nearest.norm());
        Ok(NearestSelection {
            selection,
            nearest,
            compatible,
        })
    }

    /// `σ²(u) = Var s_Y(u)` over the atoms.
    pub fn tangent_variance(&self, u: &Direction) -> Result<f64> {
        u.as_vector().check_dim(self.dim)?;
        let values: Vec<f64> = self
            .atoms
            .iter()
            .map(|a| support_unchecked(&a.body, u.as_vector()))
            .collect();
        let mean: f64 = self.atoms.iter().zip(&values).map(|(a, s)| a.weight * s).sum();
        let var: f64 = self
            .atoms
            .iter()
            .zip(&values)
            .map(|(a, s)| a.weight * (s - mean) * (s - mean))
            .sum();
        Ok(var.max(0.0))
    }

    /// Total weight of atoms with a facet in direction `f`, and the chance
    /// that a sample mean of `n` draws carries that facet.
    pub fn facet_inheritance(&self, f: &Direction, n: u32) -> Result<FacetInheritance> {
        f.as_vector().check_dim(self.dim)?;
        let mut p_facet = 0.0;
        for atom in &self.atoms {
            if is_facet_face(&support_face(&atom.body, f.as_vector())?.face) {
                p_facet += atom.weight;
            }
        }
        let p_facet = p_facet.min(1.0);
        Ok(FacetInheritance {
            p_facet,
            prob_n: 1.0 - (1.0 - p_facet).powi(n as i32),
        })
    }

    /// Inverse-CDF draw of an atom index for `u ∈ [0, 1)`.
    pub fn sample(&self, u: f64) -> usize {
        let mut cumulative = 0.0;
        for (j, atom) in self.atoms.iter().enumerate() {
            cumulative += atom.weight;
            if u < cumulative {
                return j;
            }
        }
        self.atoms.len() - 1
    }

    fn weights(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.weight).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ExpectationFace {
    pub face: ConvexBody,
    pub atom_faces: Vec<ConvexBody>,
    /// `ℍ(∂s_{EY}(f), Σ_j p_j ∂s_{K_j}(f))`
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FacetInheritance {
    pub p_facet: f64,
    pub prob_n: f64,
}

/// One point per atom, with its weighted mean and covariance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Selection {
    pub points: Vec<Vector>,
    pub mean: Vector,
    /// Row-major `Σ_j p_j (k_j − k)(k_j − k)ᵀ`.
    pub covariance: Vec<Vec<f64>>,
}

impl Selection {
    fn new(weights: Vec<f64>, points: Vec<Vector>) -> Self {
        let dim = points[0].dim();
        let mut mean = Vector::zeros(dim);
        for (w, p) in weights.iter().zip(&points) {
            mean = mean.axpy(*w, p);
        }
        let mut covariance = vec![vec![0.0; dim]; dim];
        for (w, p) in weights.iter().zip(&points) {
            let c = p - &mean;
            for r in 0..dim {
                for s in 0..dim {
                    covariance[r][s] += w * c[r] * c[s];
                }
            }
        }
        Selection {
            points,
            mean,
            covariance,
        }
    }

    /// `hᵀ Σ h`
    pub fn quadratic_form(&self, h: &Vector) -> f64 {
        let dim = h.dim();
        (0..dim)
            .map(|r| (0..dim).map(|s| h[r] * self.covariance[r][s] * h[s]).sum::<f64>())
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct NearestSelection {
    pub selection: Selection,
    /// `k_x(EY)`
    pub nearest: Vector,
    /// Whether the selection mean agrees with `k_x(EY)` within `1e-6`.
    pub compatible: bool,
}

/// Atom faces of `Y` in direction `f`, averaged by weight.
pub fn mean_of_atom_faces(y: &DiscreteRandomSet, f: &Direction) -> Result<ConvexBody> {
    let faces = y
        .atoms()
        .iter()
        .map(|a| {
            Ok((
                a.weight,
                convex::support_face(&a.body, f.as_vector())?.face,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    DiscreteRandomSet::new(faces)?.expectation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::hull;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn dir(c: &[f64]) -> Direction {
        Direction::from_coords(c.to_vec()).unwrap()
    }

    fn seg(a: &[f64], b: &[f64]) -> ConvexBody {
        hull(&[v(a), v(b)]).unwrap()
    }

    fn two_segments() -> DiscreteRandomSet {
        DiscreteRandomSet::new(vec![
            (0.5, seg(&[0.0, 0.0], &[1.0, 0.0])),
            (0.5, seg(&[0.0, 0.0], &[0.0, 1.0])),
        ])
        .unwrap()
    }

    fn stacked_squares() -> DiscreteRandomSet {
        DiscreteRandomSet::new(vec![
            (0.5, ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0]).unwrap()),
            (0.5, ConvexBody::cuboid(&[0.0, 1.0], &[1.0, 2.0]).unwrap()),
        ])
        .unwrap()
    }

    fn side_by_side() -> DiscreteRandomSet {
        DiscreteRandomSet::new(vec![
            (0.5, ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0]).unwrap()),
            (0.5, ConvexBody::cuboid(&[2.0, 0.0], &[3.0, 1.0]).unwrap()),
        ])
        .unwrap()
    }

    fn assert_matrix(actual: &[Vec<f64>], expected: &[[f64; 2]; 2]) {
        for r in 0..2 {
            for s in 0..2 {
                assert!(
                    (actual[r][s] - expected[r][s]).abs() <= 1e-12,
                    "{actual:?} vs {expected:?}"
                );
            }
        }
    }

    #[test]
    fn weights_validated() {
        let sq = ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert!(matches!(
            DiscreteRandomSet::new(vec![(0.5, sq.clone()), (0.4, sq.clone())]),
            Err(Error::WeightSum(_))
        ));
        assert!(matches!(
            DiscreteRandomSet::new(vec![(0.0, sq.clone()), (1.0, sq.clone())]),
            Err(Error::InvalidWeight { atom: 0, .. })
        ));
        let y = DiscreteRandomSet::new(vec![(0.5, sq.clone()), (0.5000001, sq)]).unwrap();
        let total: f64 = y.atoms().iter().map(|a| a.weight).sum();
        assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn expectation_examples() {
        let sq = ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(DiscreteRandomSet::constant(sq.clone()).expectation().unwrap(), sq);
        assert_eq!(
            two_segments().expectation().unwrap(),
            ConvexBody::cuboid(&[0.0, 0.0], &[0.5, 0.5]).unwrap()
        );
        assert_eq!(
            stacked_squares().expectation().unwrap(),
            ConvexBody::cuboid(&[0.0, 0.5], &[1.0, 1.5]).unwrap()
        );
    }

    #[test]
    fn expectation_face_examples() {
        let ef = two_segments().expectation_face(&dir(&[1.0, 1.0])).unwrap();
        assert_eq!(ef.face.vertices(), &[v(&[0.5, 0.5])]);
        assert_eq!(ef.atom_faces[0].vertices(), &[v(&[1.0, 0.0])]);
        assert_eq!(ef.atom_faces[1].vertices(), &[v(&[0.0, 1.0])]);

        let ef = stacked_squares().expectation_face(&dir(&[0.0, -1.0])).unwrap();
        assert_eq!(ef.face, seg(&[0.0, 0.5], &[1.0, 0.5]));
        assert_eq!(ef.atom_faces[0], seg(&[0.0, 0.0], &[1.0, 0.0]));
        assert_eq!(ef.atom_faces[1], seg(&[0.0, 1.0], &[1.0, 1.0]));
    }

    #[test]
    fn exposed_selection_examples() {
        let s = two_segments().exposed_selection(&dir(&[1.0, 1.0])).unwrap();
        assert_eq!(s.points, vec![v(&[1.0, 0.0]), v(&[0.0, 1.0])]);
        assert_eq!(s.mean, v(&[0.5, 0.5]));
        assert_matrix(&s.covariance, &[[0.25, -0.25], [-0.25, 0.25]]);

        let sq = ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        let s = DiscreteRandomSet::constant(sq)
            .exposed_selection(&dir(&[1.0, 1.0]))
            .unwrap();
        assert_eq!(s.points, vec![v(&[1.0, 1.0])]);
        assert_matrix(&s.covariance, &[[0.0, 0.0], [0.0, 0.0]]);

        let err = two_segments().exposed_selection(&dir(&[1.0, 0.0])).unwrap_err();
        assert!(matches!(&err, Error::NotExposed { atoms } if atoms == &vec![1]));
        assert!(err.to_string().contains("atom 2"));
    }

    #[test]
    fn nearest_selection_examples() {
        let ns = stacked_squares().nearest_point_selection(&v(&[0.5, -1.0])).unwrap();
        assert_eq!(ns.selection.points, vec![v(&[0.5, 0.0]), v(&[0.5, 1.0])]);
        assert!(ns.selection.mean.distance(&v(&[0.5, 0.5])) <= 1e-12);
        assert!(ns.compatible);
        assert_matrix(&ns.selection.covariance, &[[0.0, 0.0], [0.0, 0.25]]);

        let sq = ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        let ns = DiscreteRandomSet::constant(sq)
            .nearest_point_selection(&v(&[3.0, -2.0]))
            .unwrap();
        assert_matrix(&ns.selection.covariance, &[[0.0, 0.0], [0.0, 0.0]]);

        let ns = side_by_side().nearest_point_selection(&v(&[1.2, -1.0])).unwrap();
        assert!(ns.selection.mean.distance(&v(&[1.5, 0.0])) <= 1e-12);
        assert!(ns.nearest.distance(&v(&[1.2, 0.0])) <= 1e-12);
        assert!(!ns.compatible);
    }

    #[test]
    fn tangent_variance_examples() {
        assert!((two_segments().tangent_variance(&dir(&[1.0, 0.0])).unwrap() - 0.25).abs() <= 1e-15);
        assert!((stacked_squares().tangent_variance(&dir(&[0.0, 1.0])).unwrap() - 0.25).abs() <= 1e-15);
        assert_eq!(stacked_squares().tangent_variance(&dir(&[1.0, 0.0])).unwrap(), 0.0);
    }

    #[test]
    fn facet_inheritance_examples() {
        let fi = two_segments().facet_inheritance(&dir(&[0.0, -1.0]), 3).unwrap();
        assert_eq!(fi.p_facet, 0.5);
        assert_eq!(fi.prob_n, 0.875);

        let fi = two_segments().facet_inheritance(&dir(&[1.0, 1.0]), 3).unwrap();
        assert_eq!((fi.p_facet, fi.prob_n), (0.0, 0.0));

        let fi = stacked_squares().facet_inheritance(&dir(&[0.0, -1.0]), 5).unwrap();
        assert_eq!((fi.p_facet, fi.prob_n), (1.0, 1.0));
    }

    #[test]
    fn sample_examples() {
        let y = two_segments();
        assert_eq!(y.sample(0.2), 0);
        assert_eq!(y.sample(0.7), 1);
        let sq = ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        let skewed = DiscreteRandomSet::new(vec![(0.1, sq.clone()), (0.9, sq)]).unwrap();
        assert_eq!(skewed.sample(0.05), 0);
        assert_eq!(skewed.sample(0.9999999), 1);
    }
}
