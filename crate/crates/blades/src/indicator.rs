//! Formal rational combinations of closed-cone indicator functions.
//!
//! A [`ConeFunction`] is a term map from canonical cones to nonzero rational
//! coefficients. Convolution acts termwise through Minkowski sums, the
//! pointwise product through intersections, and duality termwise through the
//! dual cone. Equality of the underlying piecewise-constant functions is
//! decided exactly by evaluating the difference at one relative-interior
//! witness per face of the hyperplane arrangement spanned by the normals
//! occurring in the operands.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::cone::ClosedCone;
use crate::error::{Error, Result};
use crate::exact::{
    fm_solve, ivec_dot, ivec_is_zero, primitive, sign_canonical, Constraint, IVec, Rational,
    RationalVector, Rel,
};

/// Formal rational-coefficient combination of closed-cone indicators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFunction {
    ambient_n: usize,
    terms: BTreeMap<ClosedCone, Rational>,
}

impl ConeFunction {
    pub fn zero(n: usize) -> Self {
        ConeFunction {
            ambient_n: n,
            terms: BTreeMap::new(),
        }
    }

    /// The indicator of a single closed cone.
    pub fn indicator(cone: ClosedCone) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(cone.clone(), Rational::from(num_bigint::BigInt::from(1)));
        ConeFunction {
            ambient_n: cone.ambient_n(),
            terms,
        }
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn terms(&self) -> &BTreeMap<ClosedCone, Rational> {
        &self.terms
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, cone: ClosedCone, coeff: Rational) {
        assert_eq!(cone.ambient_n(), self.ambient_n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(cone) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &ConeFunction) -> ConeFunction {
        assert_eq!(self.ambient_n, other.ambient_n);
        let mut out = self.clone();
        for (cone, coeff) in &other.terms {
            out.add_term(cone.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &ConeFunction) -> ConeFunction {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> ConeFunction {
        ConeFunction {
            ambient_n: self.ambient_n,
            terms: self
                .terms
                .iter()
                .map(|(c, q)| (c.clone(), -q.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> ConeFunction {
        if s.is_zero() {
            return ConeFunction::zero(self.ambient_n);
        }
        ConeFunction {
            ambient_n: self.ambient_n,
            terms: self
                .terms
                .iter()
                .map(|(c, q)| (c.clone(), q * s))
                .collect(),
        }
    }

    /// Convolution: bilinear extension of [C1] * [C2] = [C1 (+) C2].
    pub fn convolve(&self, other: &ConeFunction) -> ConeFunction {
        assert_eq!(self.ambient_n, other.ambient_n);
        let mut out = ConeFunction::zero(self.ambient_n);
        for (c1, a) in &self.terms {
            for (c2, b) in &other.terms {
                out.add_term(c1.minkowski_sum(c2), a * b);
            }
        }
        out
    }

    /// Pointwise product: bilinear extension of [C1] . [C2] = [C1 n C2].
    pub fn pointwise_product(&self, other: &ConeFunction) -> ConeFunction {
        assert_eq!(self.ambient_n, other.ambient_n);
        let mut out = ConeFunction::zero(self.ambient_n);
        for (c1, a) in &self.terms {
            for (c2, b) in &other.terms {
                out.add_term(c1.intersect(c2), a * b);
            }
        }
        out
    }

    /// Linear extension of [C] -> [C*].
    pub fn dualize_fn(&self) -> ConeFunction {
        let mut out = ConeFunction::zero(self.ambient_n);
        for (cone, coeff) in &self.terms {
            out.add_term(cone.dualize(), coeff.clone());
        }
        out
    }

    /// The Euler characteristic valuation: every nonempty closed cone counts
    /// once, so this is the coefficient sum.
    pub fn euler_characteristic(&self) -> Rational {
        self.terms
            .values()
            .fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Exact pointwise evaluation. The point must lie in V0^n.
    pub fn eval_at(&self, x: &RationalVector) -> Result<Rational> {
        if x.len() != self.ambient_n || !x.in_v0() {
            return Err(Error::NotInV0);
        }
        Ok(self.eval_at_int(&x.to_primitive_ints()))
    }

    pub(crate) fn eval_at_int(&self, x: &[i64]) -> Rational {
        let mut total = Rational::zero();
        for (cone, coeff) in &self.terms {
            if cone.contains_int_point(x) {
                total += coeff;
            }
        }
        total
    }

    /// Hyperplane normals occurring in the atoms, canonicalized modulo the
    /// ambient all-ones direction and overall sign.
    pub(crate) fn normals(&self) -> Vec<IVec> {
        let mut set: Vec<IVec> = Vec::new();
        for cone in self.terms.keys() {
            for row in cone.eqs().iter().chain(cone.ineqs()) {
                if let Some(h) = canonical_hyperplane(row, self.ambient_n) {
                    if !set.contains(&h) {
                        set.push(h);
                    }
                }
            }
        }
        set.sort();
        set
    }

    /// Exact function equality.
    pub fn functions_equal(&self, other: &ConeFunction) -> bool {
        self.equal_on_faces(other, false)
    }

    /// Equality modulo indicator functions of cones of codimension >= 1:
    /// agreement on the open chambers only.
    pub fn functions_equal_mod_codim1(&self, other: &ConeFunction) -> bool {
        self.equal_on_faces(other, true)
    }

    fn equal_on_faces(&self, other: &ConeFunction, chambers_only: bool) -> bool {
        assert_eq!(self.ambient_n, other.ambient_n);
        let diff = self.sub(other);
        if diff.is_syntactically_zero() {
            return true;
        }
        let faces = arrangement_faces(self.ambient_n, &diff.normals());
        faces
            .iter()
            .filter(|f| !chambers_only || f.chamber)
            .all(|f| diff.eval_at_int(&f.witness).is_zero())
    }

    /// True iff the function vanishes identically.
    pub fn is_zero_function(&self) -> bool {
        self.functions_equal(&ConeFunction::zero(self.ambient_n))
    }

    /// Canonical JSON form: atoms sorted, coefficients in lowest terms.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(cone, coeff)| {
                json!({
                    "coeff": coeff.to_string(),
                    "cone": {
                        "lines": cone.lines(),
                        "rays": cone.rays(),
                        "eqs": cone.eqs(),
                        "ineqs": cone.ineqs(),
                    }
                })
            })
            .collect();
        json!({ "ambient_n": self.ambient_n, "terms": terms })
    }
}

/// Canonical hyperplane representative in V0^n: reduce modulo the all-ones
/// direction, make primitive, fix the sign. `None` when the functional is
/// constant on V0^n.
fn canonical_hyperplane(row: &[i64], n: usize) -> Option<IVec> {
    let s: i128 = row.iter().map(|&x| x as i128).sum();
    let reduced: Vec<i128> = row
        .iter()
        .map(|&x| x as i128 * n as i128 - s)
        .collect();
    let p = sign_canonical(primitive(&reduced));
    if ivec_is_zero(&p) {
        None
    } else {
        Some(p)
    }
}

/// One face of a central hyperplane arrangement restricted to V0^n.
#[derive(Clone, Debug)]
pub struct Face {
    /// Integer point in the relative interior (scale-invariant).
    pub witness: IVec,
    /// True iff no normal vanishes on the face.
    pub chamber: bool,
}

type FaceCacheKey = (usize, Vec<IVec>);

fn face_cache() -> &'static Mutex<HashMap<FaceCacheKey, Arc<Vec<Face>>>> {
    static CACHE: OnceLock<Mutex<HashMap<FaceCacheKey, Arc<Vec<Face>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Faces of the arrangement of the given hyperplane normals in V0^n, with a
/// relative-interior witness each. Results are memoized per normal set.
pub fn arrangement_faces(n: usize, normals: &[IVec]) -> Arc<Vec<Face>> {
    let mut key_normals: Vec<IVec> = normals
        .iter()
        .filter_map(|h| canonical_hyperplane(h, n))
        .collect();
    key_normals.sort();
    key_normals.dedup();
    let key = (n, key_normals.clone());
    if let Some(f) = face_cache().lock().unwrap().get(&key) {
        return f.clone();
    }

    struct Partial {
        signs: Vec<i8>,
        witness: IVec,
    }
    let mut faces = vec![Partial {
        signs: Vec::new(),
        witness: vec![0; n],
    }];
    for (idx, h) in key_normals.iter().enumerate() {
        let mut next = Vec::new();
        for face in &faces {
            let s = ivec_dot(h, &face.witness).signum() as i8;
            for cand in [1i8, 0, -1] {
                if cand == s {
                    let mut signs = face.signs.clone();
                    signs.push(cand);
                    next.push(Partial {
                        signs,
                        witness: face.witness.clone(),
                    });
                    continue;
                }
                // Feasibility of the refined sign vector.
                let mut constraints = vec![Constraint::new(&vec![1; n], Rel::Eq)];
                for (g, &sg) in key_normals[..idx].iter().zip(&face.signs) {
                    constraints.push(signed_constraint(g, sg));
                }
                constraints.push(signed_constraint(h, cand));
                if let Some(w) = fm_solve(&constraints, n) {
                    let witness = RationalVector(w).to_primitive_ints();
                    // The zero vector can only witness the all-zero face.
                    if ivec_is_zero(&witness)
                        && !(face.signs.iter().all(|&x| x == 0) && cand == 0)
                    {
                        continue;
                    }
                    let mut signs = face.signs.clone();
                    signs.push(cand);
                    next.push(Partial { signs, witness });
                }
            }
        }
        faces = next;
    }
    let result: Arc<Vec<Face>> = Arc::new(
        faces
            .into_iter()
            .map(|f| Face {
                chamber: f.signs.iter().all(|&s| s != 0),
                witness: f.witness,
            })
            .collect(),
    );
    face_cache().lock().unwrap().insert(key, result.clone());
    result
}

fn signed_constraint(g: &IVec, sign: i8) -> Constraint {
    match sign {
        1 => Constraint::new(g, Rel::Gt),
        -1 => Constraint::new(&g.iter().map(|&x| -x).collect::<Vec<_>>(), Rel::Gt),
        _ => Constraint::new(g, Rel::Eq),
    }
}
