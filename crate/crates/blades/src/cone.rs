//! Exact polyhedral cones in the sum-zero hyperplane V0^n.
//!
//! Every cone is stored in canonical form: lineality basis in integer
//! reduced row echelon form, extreme rays reduced modulo the lineality and
//! sorted, equality normals as the echelon basis of the annihilator of the
//! cone's span, and facet normals reduced modulo the equality row space.
//! Two cones are set-equal iff their canonical forms are identical.
//!
//! The V-representation is computed from the H-representation by incremental
//! double description over exact integers; the H-representation of a cone
//! given by generators comes from running the same machinery on the dual.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact::{
    int_rank, int_row_basis, ivec_dot, ivec_is_zero, kernel_basis, primitive, primitive_i64,
    rat_int, reduce_mod_rows, IVec, Rational, RationalMatrix, RationalVector, Strictness,
};

/// Closed polyhedral cone in V0^n, canonical in both representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedCone {
    ambient_n: usize,
    /// Lineality basis, integer RREF rows.
    lines: Vec<IVec>,
    /// Extreme rays modulo lineality, primitive, sorted.
    rays: Vec<IVec>,
    /// Basis of all functionals vanishing on the cone (includes the all-ones
    /// ambient row), integer RREF rows.
    eqs: Vec<IVec>,
    /// Facet normals modulo the equality row space, primitive, sorted.
    ineqs: Vec<IVec>,
}

fn ones(n: usize) -> IVec {
    vec![1; n]
}

/// Kernel of the system `rows . x = 0` as primitive integer vectors.
fn int_kernel(rows: &[IVec], n: usize) -> Vec<IVec> {
    if rows.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
    }
    let m = RationalMatrix::new(rows.iter().map(|r| RationalVector::from_ints(r)).collect());
    kernel_basis(&m)
        .iter()
        .map(|v| v.to_primitive_ints())
        .collect()
}

/// Extreme rays of the pointed cone {z : a z >= 0} in dimension `dim`.
/// Requires rank(a) == dim. Incremental double description with the
/// rank-based adjacency test.
fn dd_pointed(rows_in: &[IVec], dim: usize) -> Vec<IVec> {
    if dim == 0 {
        return Vec::new();
    }
    // Dedup primitive rows; zero rows are vacuous.
    let mut rows: Vec<IVec> = Vec::new();
    for r in rows_in {
        let p = primitive_i64(r);
        if !ivec_is_zero(&p) && !rows.contains(&p) {
            rows.push(p);
        }
    }

    // Greedy linearly independent subset for the simplicial start.
    let mut base: Vec<usize> = Vec::new();
    for (i, _) in rows.iter().enumerate() {
        if base.len() == dim {
            break;
        }
        let mut trial: Vec<IVec> = base.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if int_rank(&trial, dim) == trial.len() {
            base.push(i);
        }
    }
    assert_eq!(base.len(), dim, "pointed cone must have full-rank system");

    // Initial rays: columns of the inverse of the base matrix.
    let base_matrix = RationalMatrix::new(
        base.iter()
            .map(|&i| RationalVector::from_ints(&rows[i]))
            .collect(),
    );
    let mut rays: Vec<IVec> = (0..dim)
        .map(|j| {
            let mut e = vec![Rational::from(num_bigint::BigInt::from(0)); dim];
            e[j] = rat_int(1);
            crate::exact::solve_linear(&base_matrix, &RationalVector(e))
                .expect("invertible base")
                .to_primitive_ints()
        })
        .collect();

    let mut inserted: Vec<usize> = base.clone();
    for t in 0..rows.len() {
        if base.contains(&t) {
            continue;
        }
        let c = &rows[t];
        let mut pos: Vec<IVec> = Vec::new();
        let mut neg: Vec<IVec> = Vec::new();
        let mut zero: Vec<IVec> = Vec::new();
        for r in rays.drain(..) {
            match ivec_dot(c, &r).signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => zero.push(r),
            }
        }
        let active = |r: &IVec| -> Vec<IVec> {
            inserted
                .iter()
                .filter(|&&i| ivec_dot(&rows[i], r) == 0)
                .map(|&i| rows[i].clone())
                .collect()
        };
        let mut new_rays: Vec<IVec> = Vec::new();
        for p in &pos {
            let ap = active(p);
            for q in &neg {
                // Adjacent iff the common active set has rank dim - 2.
                let aq = active(q);
                let common: Vec<IVec> = ap
                    .iter()
                    .filter(|row| aq.contains(row))
                    .cloned()
                    .collect();
                if int_rank(&common, dim) != dim.saturating_sub(2) {
                    continue;
                }
                let cp = ivec_dot(c, p);
                let cq = ivec_dot(c, q);
                let combo: Vec<i128> = p
                    .iter()
                    .zip(q)
                    .map(|(&pi, &qi)| {
                        cp.checked_mul(qi as i128)
                            .and_then(|x| cq.checked_mul(pi as i128).and_then(|y| x.checked_sub(y)))
                            .expect("double description overflow")
                    })
                    .collect();
                let combo = primitive(&combo);
                if !ivec_is_zero(&combo) && !new_rays.contains(&combo) {
                    new_rays.push(combo);
                }
            }
        }
        rays = zero;
        rays.extend(pos);
        rays.extend(new_rays);
        inserted.push(t);
    }
    rays
}

/// Generators (lineality, extreme rays) of {x : eqs x = 0, ineqs x >= 0}.
fn dd_vrep(eqs: &[IVec], ineqs: &[IVec], n: usize) -> (Vec<IVec>, Vec<IVec>) {
    let subspace = int_kernel(eqs, n);
    let d = subspace.len();
    if d == 0 {
        return (Vec::new(), Vec::new());
    }
    // Inequalities expressed in subspace coordinates.
    let projected: Vec<IVec> = ineqs
        .iter()
        .map(|a| {
            primitive(
                &subspace
                    .iter()
                    .map(|b| ivec_dot(a, b))
                    .collect::<Vec<i128>>(),
            )
        })
        .filter(|row| !ivec_is_zero(row))
        .collect();

    let back = |y: &[i64]| -> IVec {
        let mut x = vec![0i128; n];
        for (j, b) in subspace.iter().enumerate() {
            for (xi, &bi) in x.iter_mut().zip(b) {
                *xi += y[j] as i128 * bi as i128;
            }
        }
        primitive(&x)
    };

    // Lineality: kernel of the projected system.
    let lin_sub = int_kernel(&projected, d);
    if projected.is_empty() {
        let lines = lin_sub.iter().map(|l| back(l)).collect();
        return (lines, Vec::new());
    }
    let lines: Vec<IVec> = lin_sub.iter().map(|l| back(l)).collect();

    // Complement of the lineality via the pivot columns of the projected
    // system's row space; the restriction there is pointed.
    let row_basis = int_row_basis(&projected, d);
    let pivots: Vec<usize> = row_basis
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).expect("nonzero row"))
        .collect();
    let restricted: Vec<IVec> = projected
        .iter()
        .map(|row| pivots.iter().map(|&p| row[p]).collect())
        .collect();
    let rays_z = dd_pointed(&restricted, pivots.len());
    let rays = rays_z
        .iter()
        .map(|z| {
            let mut y = vec![0i64; d];
            for (j, &p) in pivots.iter().enumerate() {
                y[p] = z[j];
            }
            back(&y)
        })
        .collect();
    (lines, rays)
}

fn sorted_dedup(mut v: Vec<IVec>) -> Vec<IVec> {
    v.retain(|x| !ivec_is_zero(x));
    v.sort();
    v.dedup();
    v
}

type HrepKey = (Vec<IVec>, Vec<IVec>);

fn hrep_cache() -> &'static Mutex<HashMap<(usize, HrepKey), ClosedCone>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, HrepKey), ClosedCone>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn vrep_cache() -> &'static Mutex<HashMap<(usize, HrepKey), ClosedCone>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, HrepKey), ClosedCone>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Canonicalize the cone {x in V0^n : eqs x = 0, ineqs x >= 0}.
fn canonicalize(eqs_in: &[IVec], ineqs_in: &[IVec], n: usize) -> ClosedCone {
    let mut eqs_key: Vec<IVec> = eqs_in
        .iter()
        .map(|v| crate::exact::sign_canonical(primitive_i64(v)))
        .collect();
    eqs_key.push(ones(n));
    let eqs_key = sorted_dedup(eqs_key);
    let ineqs_key = sorted_dedup(ineqs_in.iter().map(|v| primitive_i64(v)).collect());
    let key = (n, (eqs_key.clone(), ineqs_key.clone()));
    if let Some(c) = hrep_cache().lock().unwrap().get(&key) {
        return c.clone();
    }

    let (lines_raw, rays_raw) = dd_vrep(&eqs_key, &ineqs_key, n);
    let cone = canonical_from_raw_generators(lines_raw, rays_raw, n);
    hrep_cache().lock().unwrap().insert(key, cone.clone());
    cone
}

fn canonical_from_raw_generators(lines_raw: Vec<IVec>, rays_raw: Vec<IVec>, n: usize) -> ClosedCone {
    let lines = int_row_basis(&lines_raw, n);
    let rays = sorted_dedup(
        rays_raw
            .iter()
            .map(|r| reduce_mod_rows(r, &lines))
            .collect(),
    );

    // Dual generators give the canonical H-representation.
    let mut dual_eqs: Vec<IVec> = lines.clone();
    dual_eqs.push(ones(n));
    let (dlines, drays) = dd_vrep(&dual_eqs, &rays, n);
    let mut eqs_rows = dlines;
    eqs_rows.push(ones(n));
    let eqs = int_row_basis(&eqs_rows, n);
    let ineqs = sorted_dedup(drays.iter().map(|r| reduce_mod_rows(r, &eqs)).collect());

    ClosedCone {
        ambient_n: n,
        lines,
        rays,
        eqs,
        ineqs,
    }
}

impl ClosedCone {
    /// Cone generated by the given lineality vectors and rays. Every
    /// generator must lie in V0^n.
    pub fn from_rays(lines: &[RationalVector], rays: &[RationalVector], n: usize) -> Result<Self> {
        for v in lines.iter().chain(rays) {
            if v.len() != n {
                return Err(Error::NotInV0);
            }
            if !v.in_v0() {
                return Err(Error::NotInV0);
            }
        }
        let lines: Vec<IVec> = lines.iter().map(|v| v.to_primitive_ints()).collect();
        let rays: Vec<IVec> = rays.iter().map(|v| v.to_primitive_ints()).collect();
        Ok(Self::from_int_rays(&lines, &rays, n))
    }

    pub(crate) fn from_int_rays(lines: &[IVec], rays: &[IVec], n: usize) -> Self {
        let lines_key = sorted_dedup(
            lines
                .iter()
                .map(|v| crate::exact::sign_canonical(primitive_i64(v)))
                .collect(),
        );
        let rays_key = sorted_dedup(rays.iter().map(|v| primitive_i64(v)).collect());
        let key = (n, (lines_key.clone(), rays_key.clone()));
        if let Some(c) = vrep_cache().lock().unwrap().get(&key) {
            return c.clone();
        }
        // Dual of the generated cone, then back: two double descriptions.
        let mut dual_eqs = lines_key.clone();
        dual_eqs.push(ones(n));
        let (dlines, drays) = dd_vrep(&dual_eqs, &rays_key, n);
        let mut eqs = dlines;
        eqs.push(ones(n));
        let cone = canonicalize(&eqs, &drays, n);
        vrep_cache().lock().unwrap().insert(key, cone.clone());
        cone
    }

    /// Cone {x in V0^n : ineqs x >= 0, eqs x = 0}. The ambient sum-zero
    /// equality is implicit.
    pub fn from_halfspaces(ineqs: &[RationalVector], eqs: &[RationalVector], n: usize) -> Self {
        let ineqs: Vec<IVec> = ineqs.iter().map(|v| v.to_primitive_ints()).collect();
        let eqs: Vec<IVec> = eqs.iter().map(|v| v.to_primitive_ints()).collect();
        Self::from_int_halfspaces(&ineqs, &eqs, n)
    }

    pub(crate) fn from_int_halfspaces(ineqs: &[IVec], eqs: &[IVec], n: usize) -> Self {
        canonicalize(eqs, ineqs, n)
    }

    /// The full hyperplane V0^n as a cone.
    pub fn full_space(n: usize) -> Self {
        Self::from_int_halfspaces(&[], &[], n)
    }

    /// The origin.
    pub fn origin(n: usize) -> Self {
        let eqs: Vec<IVec> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Self::from_int_halfspaces(&[], &eqs, n)
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn lines(&self) -> &[IVec] {
        &self.lines
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn eqs(&self) -> &[IVec] {
        &self.eqs
    }

    pub fn ineqs(&self) -> &[IVec] {
        &self.ineqs
    }

    /// The dual cone {y in V0^n : y . x >= 0 for all x in the cone}.
    pub fn dualize(&self) -> ClosedCone {
        let mut eqs = self.lines.clone();
        eqs.push(ones(self.ambient_n));
        canonicalize(&eqs, &self.rays, self.ambient_n)
    }

    /// Minkowski sum; the conical hull of the union of generators.
    pub fn minkowski_sum(&self, other: &ClosedCone) -> ClosedCone {
        assert_eq!(self.ambient_n, other.ambient_n);
        let lines: Vec<IVec> = self.lines.iter().chain(&other.lines).cloned().collect();
        let rays: Vec<IVec> = self.rays.iter().chain(&other.rays).cloned().collect();
        Self::from_int_rays(&lines, &rays, self.ambient_n)
    }

    /// Exact set intersection.
    pub fn intersect(&self, other: &ClosedCone) -> ClosedCone {
        assert_eq!(self.ambient_n, other.ambient_n);
        let eqs: Vec<IVec> = self.eqs.iter().chain(&other.eqs).cloned().collect();
        let ineqs: Vec<IVec> = self.ineqs.iter().chain(&other.ineqs).cloned().collect();
        canonicalize(&eqs, &ineqs, self.ambient_n)
    }

    pub fn contains_point(&self, x: &RationalVector) -> bool {
        assert_eq!(x.len(), self.ambient_n);
        let xi = x.to_primitive_ints();
        self.contains_int_point(&xi)
    }

    pub(crate) fn contains_int_point(&self, xi: &[i64]) -> bool {
        self.eqs.iter().all(|e| ivec_dot(e, xi) == 0)
            && self.ineqs.iter().all(|a| ivec_dot(a, xi) >= 0)
    }

    pub fn dimension(&self) -> usize {
        let gens: Vec<IVec> = self.lines.iter().chain(&self.rays).cloned().collect();
        int_rank(&gens, self.ambient_n)
    }

    pub fn is_pointed(&self) -> bool {
        self.lines.is_empty()
    }

    /// The canonical form. Cones are canonical from construction, so this
    /// is the identity; it exists so call sites can make the intent clear.
    pub fn canonical_form(&self) -> ClosedCone {
        self.clone()
    }

    /// Exact rational point in the relative interior.
    pub fn relative_interior_point(&self) -> Result<RationalVector> {
        let ineqs: Vec<(RationalVector, Strictness)> = self
            .ineqs
            .iter()
            .map(|a| (RationalVector::from_ints(a), Strictness::Strict))
            .collect();
        let eqs: Vec<RationalVector> = self
            .eqs
            .iter()
            .map(|e| RationalVector::from_ints(e))
            .collect();
        crate::exact::relative_interior_point(&ineqs, &eqs, self.ambient_n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn rv(coords: &[i64]) -> RationalVector {
        RationalVector::from_ints(coords)
    }

    fn plate123() -> ClosedCone {
        ClosedCone::from_rays(&[], &[rv(&[1, -1, 0]), rv(&[0, 1, -1])], 3).unwrap()
    }

    #[test]
    fn constructors_agree_on_plate() {
        let from_rays = plate123();
        let from_h =
            ClosedCone::from_halfspaces(&[rv(&[1, 0, 0]), rv(&[1, 1, 0])], &[], 3);
        assert_eq!(from_rays, from_h);
        assert_eq!(from_rays.rays().len(), 2);
        assert!(from_rays.is_pointed());
        assert_eq!(from_rays.dimension(), 2);
    }

    #[test]
    fn origin_and_full_space() {
        let origin = ClosedCone::from_rays(&[], &[], 3).unwrap();
        assert_eq!(origin, ClosedCone::origin(3));
        assert_eq!(origin.dimension(), 0);
        let full = ClosedCone::full_space(3);
        assert_eq!(full.dimension(), 2);
        assert_eq!(origin.dualize(), full);
        assert_eq!(full.dualize(), origin);
    }

    #[test]
    fn generator_off_v0_rejected() {
        assert!(matches!(
            ClosedCone::from_rays(&[], &[rv(&[1, 0, 0])], 3),
            Err(Error::NotInV0)
        ));
    }

    #[test]
    fn dual_of_plate_is_braid_face() {
        // dual of [1,2,3] = {y in V0^3 : y1 >= y2 >= y3}
        let dual = plate123().dualize();
        let braid = ClosedCone::from_halfspaces(&[rv(&[1, -1, 0]), rv(&[0, 1, -1])], &[], 3);
        assert_eq!(dual, braid);
    }

    #[test]
    fn vrep_from_hrep_examples() {
        // {x in V0^3 : x1 >= 0, x3 <= 0} has extreme rays (1,-1,0), (0,1,-1)
        let c = ClosedCone::from_halfspaces(&[rv(&[1, 0, 0]), rv(&[0, 0, -1])], &[], 3);
        assert_eq!(c, plate123());

        // no inequalities: lineality dimension 2, no rays
        let full = ClosedCone::full_space(3);
        assert_eq!(full.lines().len(), 2);
        assert!(full.rays().is_empty());

        // half space x1 >= 0: one ray plus one lineality line
        let half = ClosedCone::from_halfspaces(&[rv(&[1, 0, 0])], &[], 3);
        assert_eq!(half.lines().len(), 1);
        assert_eq!(half.rays().len(), 1);
        assert!(!half.is_pointed());
    }

    #[test]
    fn minkowski_sum_examples() {
        let r12 = ClosedCone::from_rays(&[], &[rv(&[1, -1, 0])], 3).unwrap();
        let r23 = ClosedCone::from_rays(&[], &[rv(&[0, 1, -1])], 3).unwrap();
        let r31 = ClosedCone::from_rays(&[], &[rv(&[-1, 0, 1])], 3).unwrap();
        assert_eq!(r12.minkowski_sum(&r23), plate123());
        assert_eq!(
            plate123().minkowski_sum(&ClosedCone::origin(3)),
            plate123()
        );
        assert_eq!(
            r12.minkowski_sum(&r23).minkowski_sum(&r31),
            ClosedCone::full_space(3)
        );
    }

    #[test]
    fn intersect_two_plates() {
        // [1,2,3] n [1,3,2] = cone with rays (1,-1,0), (1,0,-1)
        let p132 = ClosedCone::from_rays(&[], &[rv(&[1, 0, -1]), rv(&[0, -1, 1])], 3).unwrap();
        let meet = plate123().intersect(&p132);
        let expected = ClosedCone::from_rays(&[], &[rv(&[1, -1, 0]), rv(&[1, 0, -1])], 3).unwrap();
        assert_eq!(meet, expected);
    }

    #[test]
    fn membership_and_pointedness() {
        assert!(plate123().contains_point(&rv(&[1, -1, 0])));
        assert!(!plate123().contains_point(&rv(&[-1, 1, 0])));
        let halfplane = ClosedCone::from_halfspaces(&[rv(&[1, 1, 0])], &[], 3);
        assert!(!halfplane.is_pointed());
    }

    #[test]
    fn canonical_form_properties() {
        let scaled = ClosedCone::from_rays(&[], &[rv(&[2, -2, 0])], 3).unwrap();
        let unit = ClosedCone::from_rays(&[], &[rv(&[1, -1, 0])], 3).unwrap();
        assert_eq!(scaled, unit);
        assert_eq!(scaled.rays(), &[vec![1, -1, 0]]);

        // reordering generators does not change the canonical form
        let a = ClosedCone::from_rays(&[], &[rv(&[1, -1, 0]), rv(&[0, 1, -1])], 3).unwrap();
        let b = ClosedCone::from_rays(&[], &[rv(&[0, 1, -1]), rv(&[1, -1, 0])], 3).unwrap();
        assert_eq!(a, b);
    }

    fn random_cone(rng: &mut ChaCha8Rng, n: usize) -> ClosedCone {
        let k = rng.gen_range(0..=n);
        let mut rays = Vec::new();
        for _ in 0..k {
            let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let s: i64 = v.iter().sum();
            v[n - 1] -= s;
            rays.push(rv(&v));
        }
        let lines = if rng.gen_bool(0.3) {
            let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            let s: i64 = v.iter().sum();
            v[n - 1] -= s;
            vec![rv(&v)]
        } else {
            Vec::new()
        };
        ClosedCone::from_rays(&lines, &rays, n).unwrap()
    }

    #[test]
    fn biduality_on_random_cones() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let n = rng.gen_range(2..=5);
            let c = random_cone(&mut rng, n);
            assert_eq!(c.dualize().dualize(), c);
        }
    }

    #[test]
    fn generators_satisfy_own_hrep() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.gen_range(2..=5);
            let c = random_cone(&mut rng, n);
            for r in c.rays() {
                assert!(c.contains_int_point(r));
            }
            for l in c.lines() {
                assert!(c.contains_int_point(l));
                let neg: Vec<i64> = l.iter().map(|x| -x).collect();
                assert!(c.contains_int_point(&neg));
            }
            if c.dimension() > 0 {
                let w = c.relative_interior_point().unwrap();
                assert!(c.contains_point(&w));
            }
        }
    }

    #[test]
    fn interior_point_respects_rationals() {
        let c = plate123();
        let w = c.relative_interior_point().unwrap();
        // strictly inside: both facet inequalities strict
        for a in c.ineqs() {
            let val = RationalVector::from_ints(a).dot(&w);
            assert!(val > rat(0, 1));
        }
    }
}
