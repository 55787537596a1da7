//! Plates, open plates, subspaces and tripods, plus expansion of cone
//! functions in the plate spanning set and the quotient projections.
//!
//! A plate label is an ordered set partition of a subset T of {1..n}; its
//! cone lives in {x : x_a = 0 for a outside T} and is cut out by the partial
//! sum inequalities x_{S_1} >= 0, x_{S_1 S_2} >= 0, ... This convention makes
//! [i,j] the ray spanned by e_i - e_j and turns the Minkowski decomposition
//! of a plate into half subspaces into a literal identity.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::cone::ClosedCone;
use crate::error::{Error, Result};
use crate::exact::{rref, IVec, Rational, RationalMatrix, RationalVector};
use crate::indicator::{arrangement_faces, ConeFunction, Face};
use crate::osp::{enumerate_osps_of, OrderedSetPartition};

/// Label of a plate: an ordered set partition of a subset of {1..n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlateLabel {
    osp: OrderedSetPartition,
}

impl PlateLabel {
    pub fn new(osp: OrderedSetPartition) -> Result<Self> {
        Ok(PlateLabel { osp })
    }

    pub fn parse(text: &str, ground_n: usize) -> Result<Self> {
        let osp = OrderedSetPartition::parse(text, Some(ground_n))?;
        Ok(PlateLabel { osp })
    }

    pub fn osp(&self) -> &OrderedSetPartition {
        &self.osp
    }

    pub fn ambient_n(&self) -> usize {
        self.osp.ground_n()
    }

    /// Geometric dimension of the plate cone: |support| - 1.
    pub fn dimension(&self) -> usize {
        self.osp.support().len() - 1
    }

    /// A plate is pointed iff every block is a singleton.
    pub fn is_pointed(&self) -> bool {
        self.osp.blocks().iter().all(|b| b.len() == 1)
    }
}

impl std::fmt::Display for PlateLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.osp)
    }
}

fn indicator_vec(set: &BTreeSet<usize>, n: usize) -> IVec {
    let mut v = vec![0i64; n];
    for &e in set {
        v[e - 1] = 1;
    }
    v
}

/// The closed cone of a plate label.
pub fn plate_cone(label: &PlateLabel) -> ClosedCone {
    let n = label.ambient_n();
    let support = label.osp.support();
    let mut eqs: Vec<IVec> = Vec::new();
    for a in 1..=n {
        if !support.contains(&a) {
            let mut v = vec![0i64; n];
            v[a - 1] = 1;
            eqs.push(v);
        }
    }
    let mut ineqs: Vec<IVec> = Vec::new();
    let mut partial = BTreeSet::new();
    let blocks = label.osp.blocks();
    for block in &blocks[..blocks.len().saturating_sub(1)] {
        partial.extend(block.iter().copied());
        ineqs.push(indicator_vec(&partial, n));
    }
    ClosedCone::from_int_halfspaces(&ineqs, &eqs, n)
}

/// Indicator function of a plate.
pub fn plate(label: &PlateLabel) -> ConeFunction {
    ConeFunction::indicator(plate_cone(label))
}

/// Indicator of the subspace 1_S = {x in V0^n : x_S = 0, x_a = 0 off S}.
pub fn subspace(s: &BTreeSet<usize>, n: usize) -> ConeFunction {
    let label = PlateLabel::new(
        OrderedSetPartition::new(vec![s.clone()], n).expect("valid block"),
    )
    .expect("valid label");
    plate(&label)
}

/// Convolution product of subspace indicators 1_{S_1} ... 1_{S_k}.
pub fn subspace_product(sets: &[BTreeSet<usize>], n: usize) -> Result<ConeFunction> {
    let mut seen = BTreeSet::new();
    for s in sets {
        for &e in s {
            if !seen.insert(e) {
                return Err(Error::BlocksOverlap);
            }
        }
    }
    let mut eqs: Vec<IVec> = Vec::new();
    for a in 1..=n {
        if !seen.contains(&a) {
            let mut v = vec![0i64; n];
            v[a - 1] = 1;
            eqs.push(v);
        }
    }
    for s in sets {
        eqs.push(indicator_vec(s, n));
    }
    Ok(ConeFunction::indicator(ClosedCone::from_int_halfspaces(
        &[],
        &eqs,
        n,
    )))
}

/// Open plate mu_{S1,S2} = [[S1,S2]] - 1_{S1} * 1_{S2}: the indicator of the
/// half subspace where the inequality is strict.
pub fn mu(s1: &BTreeSet<usize>, s2: &BTreeSet<usize>, n: usize) -> Result<ConeFunction> {
    if s1.is_empty() || s2.is_empty() || !s1.is_disjoint(s2) {
        return Err(Error::BlocksOverlap);
    }
    let label = PlateLabel::new(
        OrderedSetPartition::new(vec![s1.clone(), s2.clone()], n)
            .map_err(|_| Error::BlocksOverlap)?,
    )?;
    let boundary = subspace_product(&[s1.clone(), s2.clone()], n)?;
    Ok(plate(&label).sub(&boundary))
}

/// Convolution chain mu_{S1,S2} mu_{S2,S3} ... mu_{S_{k-1},S_k}.
pub fn mu_chain(blocks: &[BTreeSet<usize>], n: usize) -> Result<ConeFunction> {
    assert!(blocks.len() >= 2, "mu chain needs at least two blocks");
    let mut acc = mu(&blocks[0], &blocks[1], n)?;
    for w in blocks.windows(2).skip(1) {
        acc = acc.convolve(&mu(&w[0], &w[1], n)?);
    }
    Ok(acc)
}

/// Tripod gamma_{S1,S2,S3} = 1_{S1} 1_{S2} 1_{S3} + mu_{12} + mu_{23} + mu_{31}.
pub fn tripod(
    s1: &BTreeSet<usize>,
    s2: &BTreeSet<usize>,
    s3: &BTreeSet<usize>,
    n: usize,
) -> Result<ConeFunction> {
    let core = subspace_product(&[s1.clone(), s2.clone(), s3.clone()], n)?;
    Ok(core
        .add(&mu(s1, s2, n)?)
        .add(&mu(s2, s3, n)?)
        .add(&mu(s3, s1, n)?))
}

/// Both forms of the triangulation identity for a disjoint triple:
/// closed ([[S1,S2]] + [[S2,S3]]) * [[S1,S3]] = [[S1,S2]] * [[S2,S3]] + 1_{S2} * [[S1,S3]]
/// and open (mu12 + mu23) mu13 = mu12 mu23 - 1_{S2} mu13.
///
/// The stick factor 1_{S2} on the correction term is the convolution
/// identity when S2 is a singleton, recovering the bare identity; for
/// lumped middle blocks it is forced by the subset-support convention,
/// where every product absorbs the subspace of its own support only.
pub fn triangulation_identity_check(
    s1: &BTreeSet<usize>,
    s2: &BTreeSet<usize>,
    s3: &BTreeSet<usize>,
    n: usize,
) -> Result<bool> {
    let pl = |a: &BTreeSet<usize>, b: &BTreeSet<usize>| -> Result<ConeFunction> {
        let label = PlateLabel::new(
            OrderedSetPartition::new(vec![a.clone(), b.clone()], n)
                .map_err(|_| Error::BlocksOverlap)?,
        )?;
        Ok(plate(&label))
    };
    let stick = subspace(s2, n);
    let (p12, p23, p13) = (pl(s1, s2)?, pl(s2, s3)?, pl(s1, s3)?);
    let closed_lhs = p12.add(&p23).convolve(&p13);
    let closed_rhs = p12.convolve(&p23).add(&stick.convolve(&p13));
    let (m12, m23, m13) = (mu(s1, s2, n)?, mu(s2, s3, n)?, mu(s1, s3, n)?);
    let open_lhs = m12.add(&m23).convolve(&m13);
    let open_rhs = m12.convolve(&m23).sub(&stick.convolve(&m13));
    Ok(closed_lhs.functions_equal(&closed_rhs) && open_lhs.functions_equal(&open_rhs))
}

// ---------------------------------------------------------------------------
// plate-basis expansion
// ---------------------------------------------------------------------------

/// Label classes dropped by the quotient projections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientClass {
    /// Plates with a block of size > 1 (their cones contain a line).
    NonPointed,
    /// Plates of codimension >= 2, i.e. support smaller than n - 1.
    HigherCodim,
    Both,
}

fn label_in_class(label: &PlateLabel, class: QuotientClass) -> bool {
    let n = label.ambient_n();
    let nonpointed = !label.is_pointed();
    let highcodim = label.osp().support().len() + 2 <= n;
    match class {
        QuotientClass::NonPointed => nonpointed,
        QuotientClass::HigherCodim => highcodim,
        QuotientClass::Both => nonpointed || highcodim,
    }
}

/// The plate spanning set at ambient n together with the face-value matrix
/// over the subset-sum arrangement and its row reduction. Built once per n.
pub struct PlateBasis {
    pub n: usize,
    pub labels: Vec<PlateLabel>,
    pub cones: Vec<ClosedCone>,
    pub faces: Arc<Vec<Face>>,
    /// RREF of [A | I] where A[face][label] = membership; used to solve
    /// A c = v repeatedly.
    reduced: RationalMatrix,
    pivots: Vec<usize>,
}

fn basis_cache() -> &'static Mutex<HashMap<usize, Arc<PlateBasis>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PlateBasis>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All plate labels over all nonempty subsets of {1..n}, in a fixed order.
pub fn spanning_labels(n: usize) -> Vec<PlateLabel> {
    let elements: Vec<usize> = (1..=n).collect();
    let mut labels = Vec::new();
    for mask in 1u32..(1 << n) {
        let support: BTreeSet<usize> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| elements[i])
            .collect();
        let mut osps = enumerate_osps_of(&support, n);
        osps.sort();
        for osp in osps {
            labels.push(PlateLabel { osp });
        }
    }
    labels.sort();
    labels
}

/// All subset-sum hyperplane normals at ambient n.
fn resonance_normals(n: usize) -> Vec<IVec> {
    let mut normals = Vec::new();
    for mask in 1u32..(1 << n) - 1 {
        let set: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
        normals.push(indicator_vec(&set, n));
    }
    normals
}

pub fn plate_basis(n: usize) -> Arc<PlateBasis> {
    if let Some(b) = basis_cache().lock().unwrap().get(&n) {
        return b.clone();
    }
    let labels = spanning_labels(n);
    let cones: Vec<ClosedCone> = labels.iter().map(plate_cone).collect();
    let faces = arrangement_faces(n, &resonance_normals(n));
    let n_faces = faces.len();
    let n_labels = labels.len();
    // Augmented [A | I] so one reduction serves every later solve.
    let rows: Vec<RationalVector> = (0..n_faces)
        .map(|fi| {
            let mut row = vec![Rational::zero(); n_labels + n_faces];
            for (li, cone) in cones.iter().enumerate() {
                if cone.contains_int_point(&faces[fi].witness) {
                    row[li] = crate::exact::rat_int(1);
                }
            }
            row[n_labels + fi] = crate::exact::rat_int(1);
            RationalVector(row)
        })
        .collect();
    let (reduced, pivots) = rref(&RationalMatrix::new(rows));
    let basis = Arc::new(PlateBasis {
        n,
        labels,
        cones,
        faces,
        reduced,
        pivots,
    });
    basis_cache().lock().unwrap().insert(n, basis.clone());
    basis
}

impl PlateBasis {
    /// Solve A c = v with columns restricted to `allowed`; c is supported on
    /// pivot labels. Returns None when v is outside the span.
    fn solve(&self, v: &[Rational], allowed: &dyn Fn(usize) -> bool) -> Option<Vec<Rational>> {
        let n_labels = self.labels.len();
        let n_faces = self.faces.len();
        // Transform v through the recorded row operations: w = E v where the
        // identity block of `reduced` holds E.
        let w: Vec<Rational> = self
            .reduced
            .rows
            .iter()
            .map(|row| {
                let mut acc = Rational::zero();
                for (fi, vi) in v.iter().enumerate() {
                    if !vi.is_zero() && !row.0[n_labels + fi].is_zero() {
                        acc += &row.0[n_labels + fi] * vi;
                    }
                }
                acc
            })
            .collect();
        // Back-substitute over the label block of the reduced matrix,
        // which is in echelon form with unit pivots.
        let mut coeffs = vec![Rational::zero(); n_labels];
        let label_pivots: Vec<(usize, usize)> = self
            .pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p < n_labels)
            .map(|(r, &p)| (r, p))
            .collect();
        for &(r, p) in label_pivots.iter().rev() {
            let mut rhs = w[r].clone();
            for c in p + 1..n_labels {
                if !self.reduced.rows[r].0[c].is_zero() && !coeffs[c].is_zero() {
                    rhs -= &self.reduced.rows[r].0[c] * &coeffs[c];
                }
            }
            if !allowed(p) && !rhs.is_zero() {
                return None;
            }
            coeffs[p] = rhs;
        }
        // Rows whose pivot is in the identity block impose consistency.
        for (r, &p) in self.pivots.iter().enumerate() {
            if p >= n_labels && !w[r].is_zero() {
                return None;
            }
        }
        let _ = n_faces;
        Some(coeffs)
    }

    fn face_values(&self, f: &ConeFunction) -> Option<Vec<Rational>> {
        // Sound only when f is piecewise constant on the subset-sum
        // arrangement; verify the normals are subset sums.
        let allowed = arrangement_normal_set(self.n);
        for h in f.normals() {
            if !allowed.contains(&h) {
                return None;
            }
        }
        Some(
            self.faces
                .iter()
                .map(|face| f.eval_at_int(&face.witness))
                .collect(),
        )
    }
}

fn arrangement_normal_set(n: usize) -> BTreeSet<IVec> {
    let mut set = BTreeSet::new();
    for h in resonance_normals(n) {
        // same canonicalization the face cache applies
        let s: i128 = h.iter().map(|&x| x as i128).sum();
        let reduced: Vec<i128> = h.iter().map(|&x| x as i128 * n as i128 - s).collect();
        set.insert(crate::exact::sign_canonical(crate::exact::primitive(&reduced)));
    }
    set
}

/// Exact coefficients of f over the plate spanning set. Atoms that are
/// themselves plate cones are read off directly; the remainder goes through
/// the exact linear solve over the face-value matrix.
pub fn expand_in_plate_basis(f: &ConeFunction) -> Result<BTreeMap<PlateLabel, Rational>> {
    let n = f.ambient_n();
    let basis = plate_basis(n);
    let mut out: BTreeMap<PlateLabel, Rational> = BTreeMap::new();
    let mut remainder = ConeFunction::zero(n);
    let cone_to_label: HashMap<&ClosedCone, usize> = {
        let mut m = HashMap::new();
        for (i, c) in basis.cones.iter().enumerate() {
            m.entry(c).or_insert(i);
        }
        m
    };
    for (cone, coeff) in f.terms() {
        match cone_to_label.get(cone) {
            Some(&i) => {
                let e = out
                    .entry(basis.labels[i].clone())
                    .or_insert_with(Rational::zero);
                *e += coeff;
            }
            None => remainder.add_term(cone.clone(), coeff.clone()),
        }
    }
    out.retain(|_, c| !c.is_zero());
    if !remainder.is_syntactically_zero() {
        let v = basis
            .face_values(&remainder)
            .ok_or(Error::NotInPlateSpan)?;
        let coeffs = basis.solve(&v, &|_| true).ok_or(Error::NotInPlateSpan)?;
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                let e = out
                    .entry(basis.labels[i].clone())
                    .or_insert_with(Rational::zero);
                *e += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
    }
    Ok(out)
}

/// Drop plate labels with any block of size > 1.
pub fn project_mod_nonpointed(
    coords: &BTreeMap<PlateLabel, Rational>,
) -> BTreeMap<PlateLabel, Rational> {
    coords
        .iter()
        .filter(|(l, _)| !label_in_class(l, QuotientClass::NonPointed))
        .map(|(l, c)| (l.clone(), c.clone()))
        .collect()
}

/// Drop plate labels of cones of codimension >= 2 (support < n - 1).
pub fn project_mod_codim(
    coords: &BTreeMap<PlateLabel, Rational>,
) -> BTreeMap<PlateLabel, Rational> {
    coords
        .iter()
        .filter(|(l, _)| !label_in_class(l, QuotientClass::HigherCodim))
        .map(|(l, c)| (l.clone(), c.clone()))
        .collect()
}

/// Decide f = g modulo the span of the indicator functions in the given
/// label class: exact span membership of the difference.
pub fn equal_mod_class(f: &ConeFunction, g: &ConeFunction, class: QuotientClass) -> Result<bool> {
    let n = f.ambient_n();
    let basis = plate_basis(n);
    let diff = f.sub(g);
    if diff.is_syntactically_zero() {
        return Ok(true);
    }
    let v = basis.face_values(&diff).ok_or(Error::NotInPlateSpan)?;
    Ok(basis
        .solve(&v, &|i| label_in_class(&basis.labels[i], class))
        .is_some())
}

/// Express f modulo the class span as a combination of the given generator
/// functions; returns the coefficients when solvable.
pub fn solve_mod_class(
    f: &ConeFunction,
    generators: &[ConeFunction],
    class: QuotientClass,
) -> Result<Option<Vec<Rational>>> {
    let n = f.ambient_n();
    let basis = plate_basis(n);
    let target = basis.face_values(f).ok_or(Error::NotInPlateSpan)?;
    let gen_values: Vec<Vec<Rational>> = generators
        .iter()
        .map(|g| basis.face_values(g).ok_or(Error::NotInPlateSpan))
        .collect::<Result<_>>()?;
    // Columns: generators, then the class labels; consistency of
    // [G | D] x = target gives the generator coefficients.
    let class_indices: Vec<usize> = (0..basis.labels.len())
        .filter(|&i| label_in_class(&basis.labels[i], class))
        .collect();
    let n_rows = basis.faces.len();
    let n_gen = generators.len();
    let rows: Vec<RationalVector> = (0..n_rows)
        .map(|r| {
            let mut row: Vec<Rational> = Vec::with_capacity(n_gen + class_indices.len() + 1);
            for g in &gen_values {
                row.push(g[r].clone());
            }
            for &ci in &class_indices {
                row.push(if basis.cones[ci].contains_int_point(&basis.faces[r].witness) {
                    crate::exact::rat_int(1)
                } else {
                    Rational::zero()
                });
            }
            row.push(target[r].clone());
            RationalVector(row)
        })
        .collect();
    let n_cols = n_gen + class_indices.len();
    let (red, pivots) = rref(&RationalMatrix::new(rows));
    if pivots.contains(&n_cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n_cols];
    for (row, &p) in red.rows.iter().zip(&pivots) {
        x[p] = row.0[n_cols].clone();
    }
    Ok(Some(x[..n_gen].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn plate_examples() {
        // plate (1,2,3) at n=3 is the cone <e1-e2, e2-e3>
        let p = plate(&PlateLabel::parse("1|2|3", 3).unwrap());
        let expected = ClosedCone::from_rays(
            &[],
            &[
                RationalVector::from_ints(&[1, -1, 0]),
                RationalVector::from_ints(&[0, 1, -1]),
            ],
            3,
        )
        .unwrap();
        assert_eq!(p, ConeFunction::indicator(expected));

        // single block: the subspace 1_T
        let sub = plate(&PlateLabel::parse("1,2", 3).unwrap());
        assert_eq!(sub, subspace(&set(&[1, 2]), 3));

        // plate (1,2) inside n=3: the ray e1 - e2 with x3 = 0
        let ray = plate(&PlateLabel::parse("1|2", 3).unwrap());
        let expected = ClosedCone::from_rays(&[], &[RationalVector::from_ints(&[1, -1, 0])], 3)
            .unwrap();
        assert_eq!(ray, ConeFunction::indicator(expected));
    }

    #[test]
    fn mu_squares_and_opposite() {
        for n in [2usize, 3, 4] {
            let m12 = mu(&set(&[1]), &set(&[2]), n).unwrap();
            let m21 = mu(&set(&[2]), &set(&[1]), n).unwrap();
            assert!(m12.convolve(&m12).functions_equal(&m12.negate()), "n={n}");
            assert!(m12.convolve(&m21).is_zero_function(), "n={n}");
        }
        assert!(matches!(
            mu(&set(&[1, 2]), &set(&[2]), 3),
            Err(Error::BlocksOverlap)
        ));
    }

    #[test]
    fn mu_cycle_identity_small() {
        let blocks = [set(&[1]), set(&[2]), set(&[3])];
        let mut cycle = mu_chain(&blocks, 3).unwrap();
        cycle = cycle.convolve(&mu(&blocks[2], &blocks[0], 3).unwrap());
        assert!(cycle.is_zero_function());
    }

    #[test]
    fn tripod_fundamental_relation() {
        // gamma_{123} + gamma_{132} = 1_12 + 1_23 + 1_31 - 1_1 1_2 1_3
        let n = 3;
        let g123 = tripod(&set(&[1]), &set(&[2]), &set(&[3]), n).unwrap();
        let g132 = tripod(&set(&[1]), &set(&[3]), &set(&[2]), n).unwrap();
        let lhs = g123.add(&g132);
        let rhs = subspace(&set(&[1, 2]), n)
            .add(&subspace(&set(&[2, 3]), n))
            .add(&subspace(&set(&[1, 3]), n))
            .sub(&subspace_product(&[set(&[1]), set(&[2]), set(&[3])], n).unwrap());
        assert!(lhs.functions_equal(&rhs));
    }

    #[test]
    fn tripod_cyclic_invariance() {
        let n = 4;
        let a = tripod(&set(&[1]), &set(&[2, 3]), &set(&[4]), n).unwrap();
        let b = tripod(&set(&[2, 3]), &set(&[4]), &set(&[1]), n).unwrap();
        assert!(a.functions_equal(&b));
    }

    #[test]
    fn triangulation_identities() {
        assert!(triangulation_identity_check(&set(&[1]), &set(&[2]), &set(&[3]), 3).unwrap());
        assert!(
            triangulation_identity_check(&set(&[1]), &set(&[2, 3]), &set(&[4]), 4).unwrap()
        );
    }

    #[test]
    fn expansion_round_trip() {
        let n = 3;
        // a plate expands to itself
        let label = PlateLabel::parse("1|2|3", n).unwrap();
        let coords = expand_in_plate_basis(&plate(&label)).unwrap();
        assert_eq!(coords.len(), 1);
        assert_eq!(coords.get(&label), Some(&rat_int(1)));

        // zero expands to the empty map
        assert!(expand_in_plate_basis(&ConeFunction::zero(n))
            .unwrap()
            .is_empty());

        // tripod coordinates re-sum to the tripod
        let g = tripod(&set(&[1]), &set(&[2]), &set(&[3]), n).unwrap();
        let coords = expand_in_plate_basis(&g).unwrap();
        let mut resum = ConeFunction::zero(n);
        for (l, c) in &coords {
            resum = resum.add(&plate(l).scale(c));
        }
        assert!(resum.functions_equal(&g));
    }

    #[test]
    fn quotient_relations_n3() {
        let n = 3;
        let g123 = tripod(&set(&[1]), &set(&[2]), &set(&[3]), n).unwrap();
        let g132 = tripod(&set(&[1]), &set(&[3]), &set(&[2]), n).unwrap();
        let lhs = g123.add(&g132);
        let lines = subspace(&set(&[1, 2]), n)
            .add(&subspace(&set(&[2, 3]), n))
            .add(&subspace(&set(&[1, 3]), n));
        let origin = subspace_product(&[set(&[1]), set(&[2]), set(&[3])], n).unwrap();

        // exact: lhs = lines - origin
        assert!(lhs.functions_equal(&lines.sub(&origin)));
        // mod codim >= 2: lhs = lines
        assert!(equal_mod_class(&lhs, &lines, QuotientClass::HigherCodim).unwrap());
        // mod non-pointed: lhs = -origin
        assert!(equal_mod_class(&lhs, &origin.negate(), QuotientClass::NonPointed).unwrap());
        // mod both: lhs = 0
        assert!(
            equal_mod_class(&lhs, &ConeFunction::zero(n), QuotientClass::Both).unwrap()
        );
        // sanity: not zero mod codim alone
        assert!(
            !equal_mod_class(&lhs, &ConeFunction::zero(n), QuotientClass::HigherCodim).unwrap()
        );
    }

    #[test]
    fn projection_drops_labels() {
        let n = 3;
        let mut coords = BTreeMap::new();
        coords.insert(PlateLabel::parse("1,2", n).unwrap(), rat_int(1));
        coords.insert(PlateLabel::parse("1|2|3", n).unwrap(), rat_int(2));
        coords.insert(PlateLabel::parse("1", n).unwrap(), rat_int(3));
        let np = project_mod_nonpointed(&coords);
        assert!(!np.contains_key(&PlateLabel::parse("1,2", n).unwrap()));
        assert_eq!(np.len(), 2);
        let hc = project_mod_codim(&coords);
        assert!(!hc.contains_key(&PlateLabel::parse("1", n).unwrap()));
        assert_eq!(hc.len(), 2);
    }
}
