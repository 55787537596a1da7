//! Exact rational linear algebra and feasibility.
//!
//! Everything here is exact: arbitrary-precision rationals for the public
//! surface, primitive integer vectors internally. The feasibility solver is
//! Fourier-Motzkin elimination with strict-inequality bookkeeping, which is
//! plenty for the dimensions this crate works in (ambient n <= 7).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Build a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from(BigInt::from(num))
}

/// Dense vector of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![Rational::zero(); n])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        assert_eq!(self.len(), other.len(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn coord_sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// True when the vector lies in the sum-zero hyperplane.
    pub fn in_v0(&self) -> bool {
        self.coord_sum().is_zero()
    }

    pub fn scale(&self, s: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.len(), other.len());
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.len(), other.len());
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Clear denominators and divide by the gcd, keeping orientation.
    /// Returns the zero vector unchanged.
    pub fn to_primitive_ints(&self) -> Vec<i64> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let ints: Vec<BigInt> = if gcd.is_zero() {
            ints
        } else {
            ints.iter().map(|v| v / &gcd).collect()
        };
        ints.iter()
            .map(|v| i64::try_from(v).expect("primitive coordinate exceeds i64"))
            .collect()
    }
}

/// Dense rectangular matrix of rationals, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    pub rows: Vec<RationalVector>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<RationalVector>) -> Self {
        if let Some(first) = rows.first() {
            let w = first.len();
            assert!(rows.iter().all(|r| r.len() == w), "ragged matrix");
        }
        RationalMatrix { rows }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        RationalMatrix::new(rows.iter().map(|r| RationalVector::from_ints(r)).collect())
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }
}

/// Reduced row echelon form with exact arithmetic.
///
/// Returns the reduced matrix together with the pivot column indices.
/// The row space is preserved; zero rows sink to the bottom.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut rows: Vec<Vec<Rational>> = m.rows.iter().map(|r| r.0.clone()).collect();
    let n_rows = rows.len();
    let n_cols = m.n_cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(pr) = (r..n_rows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n_rows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n_cols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (
        RationalMatrix::new(rows.into_iter().map(RationalVector).collect()),
        pivots,
    )
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).1.len()
}

/// Solve a x = b exactly, returning one solution.
pub fn solve_linear(a: &RationalMatrix, b: &RationalVector) -> Result<RationalVector> {
    assert_eq!(a.n_rows(), b.len(), "dimension mismatch");
    let n_cols = a.n_cols();
    let augmented = RationalMatrix::new(
        a.rows
            .iter()
            .zip(&b.0)
            .map(|(row, rhs)| {
                let mut v = row.0.clone();
                v.push(rhs.clone());
                RationalVector(v)
            })
            .collect(),
    );
    let (red, pivots) = rref(&augmented);
    if pivots.contains(&n_cols) {
        return Err(Error::Inconsistent);
    }
    let mut x = vec![Rational::zero(); n_cols];
    for (row, &p) in red.rows.iter().zip(&pivots) {
        x[p] = row.0[n_cols].clone();
    }
    Ok(RationalVector(x))
}

/// Basis of the null space {x : m x = 0}, one vector per free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<RationalVector> {
    let n_cols = m.n_cols();
    let (red, pivots) = rref(m);
    let mut basis = Vec::new();
    for free in 0..n_cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); n_cols];
        v[free] = Rational::one();
        for (row, &p) in red.rows.iter().zip(&pivots) {
            v[p] = -row.0[free].clone();
        }
        basis.push(RationalVector(v));
    }
    basis
}

// ---------------------------------------------------------------------------
// primitive integer vectors
// ---------------------------------------------------------------------------

/// Primitive integer vector; the fast path for cone and arrangement work.
pub type IVec = Vec<i64>;

pub fn ivec_dot(a: &[i64], b: &[i64]) -> i128 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x as i128 * y as i128)
        .sum()
}

pub fn ivec_is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Divide through by the gcd. Orientation (overall sign) is preserved.
pub fn primitive(v: &[i128]) -> IVec {
    let g = v.iter().fold(0i128, |acc, &x| gcd_i128(acc, x));
    if g == 0 {
        return vec![0; v.len()];
    }
    v.iter()
        .map(|&x| i64::try_from(x / g).expect("primitive coordinate exceeds i64"))
        .collect()
}

pub fn primitive_i64(v: &[i64]) -> IVec {
    primitive(&v.iter().map(|&x| x as i128).collect::<Vec<_>>())
}

/// Flip sign so the first nonzero coordinate is positive. For use on
/// line/hyperplane representatives where orientation is immaterial.
pub fn sign_canonical(mut v: IVec) -> IVec {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        if lead < 0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
    v
}

/// Integer row echelon basis of the span of `rows` (RREF scaled primitive).
/// Rows come out with pivot entries positive and each pivot the only nonzero
/// in its column; unique per subspace.
pub fn int_row_basis(rows: &[IVec], n_cols: usize) -> Vec<IVec> {
    let m = RationalMatrix::new(
        rows.iter()
            .map(|r| RationalVector::from_ints(r))
            .collect(),
    );
    if m.n_rows() == 0 {
        return Vec::new();
    }
    assert_eq!(m.n_cols(), n_cols);
    let (red, pivots) = rref(&m);
    red.rows[..pivots.len()]
        .iter()
        .map(|r| r.to_primitive_ints())
        .collect()
}

/// Reduce `v` modulo the row space of an integer RREF basis, giving the
/// canonical coset representative with zeros in every pivot column.
pub fn reduce_mod_rows(v: &[i64], basis: &[IVec]) -> IVec {
    let mut cur: Vec<Rational> = v.iter().map(|&x| rat_int(x)).collect();
    for row in basis {
        let p = row.iter().position(|&x| x != 0).expect("zero basis row");
        if cur[p].is_zero() {
            continue;
        }
        let f = &cur[p] / rat_int(row[p]);
        for (j, &rj) in row.iter().enumerate() {
            if rj != 0 {
                let t = &f * rat_int(rj);
                cur[j] -= t;
            }
        }
    }
    RationalVector(cur).to_primitive_ints()
}

pub fn int_rank(rows: &[IVec], n_cols: usize) -> usize {
    int_row_basis(rows, n_cols).len()
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin feasibility with strict bookkeeping
// ---------------------------------------------------------------------------

/// Relation of a homogeneous constraint c . x REL 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Eq,
    Ge,
    Gt,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<i128>,
    pub rel: Rel,
}

impl Constraint {
    pub fn new(coeffs: &[i64], rel: Rel) -> Self {
        Constraint {
            coeffs: coeffs.iter().map(|&c| c as i128).collect(),
            rel,
        }
    }

    fn normalized(mut self) -> Self {
        let g = self.coeffs.iter().fold(0i128, |acc, &x| gcd_i128(acc, x));
        if g > 1 {
            for c in self.coeffs.iter_mut() {
                *c /= g;
            }
        }
        self
    }
}

fn checked_combine(a: &[i128], fa: i128, b: &[i128], fb: i128) -> Vec<i128> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            x.checked_mul(fa)
                .and_then(|p| y.checked_mul(fb).and_then(|q| p.checked_add(q)))
                .expect("Fourier-Motzkin coefficient overflow")
        })
        .collect()
}

/// Exact feasibility of a homogeneous system; on success returns a rational
/// point satisfying every equality, every Ge weakly and every Gt strictly.
/// Deterministic for fixed input.
pub fn fm_solve(constraints: &[Constraint], n: usize) -> Option<Vec<Rational>> {
    // Eliminate variables n-1 .. 0; record what we need for back-substitution.
    enum Step {
        // Variable fixed by an equality row (coeffs include the variable).
        FromEq(Vec<i128>),
        // Variable bounded by lower (positive coeff) and upper (negative
        // coeff) inequality rows.
        Bounds {
            lower: Vec<Constraint>,
            upper: Vec<Constraint>,
        },
    }

    let mut rows: Vec<Constraint> = constraints
        .iter()
        .cloned()
        .map(Constraint::normalized)
        .collect();
    let mut steps: Vec<(usize, Step)> = Vec::new();

    for v in (0..n).rev() {
        // Prefer an equality pivot: substitution avoids blowup.
        if let Some(idx) = rows
            .iter()
            .position(|c| c.rel == Rel::Eq && c.coeffs[v] != 0)
        {
            let eq = rows.remove(idx);
            let a = eq.coeffs[v];
            for row in rows.iter_mut() {
                let b = row.coeffs[v];
                if b != 0 {
                    // sign of the multiplier on `row` must stay positive
                    let (fr, fe) = if a > 0 { (a, -b) } else { (-a, b) };
                    row.coeffs = checked_combine(&row.coeffs, fr, &eq.coeffs, fe);
                    *row = row.clone().normalized();
                }
            }
            steps.push((v, Step::FromEq(eq.coeffs)));
        } else {
            let mut lower = Vec::new();
            let mut upper = Vec::new();
            let mut rest = Vec::new();
            for row in rows.into_iter() {
                match row.coeffs[v].signum() {
                    1 => lower.push(row),
                    -1 => upper.push(row),
                    _ => rest.push(row),
                }
            }
            for lo in &lower {
                for hi in &upper {
                    let rel = match (lo.rel, hi.rel) {
                        (Rel::Gt, _) | (_, Rel::Gt) => Rel::Gt,
                        _ => Rel::Ge,
                    };
                    let combined = Constraint {
                        coeffs: checked_combine(&lo.coeffs, -hi.coeffs[v], &hi.coeffs, lo.coeffs[v]),
                        rel,
                    }
                    .normalized();
                    rest.push(combined);
                }
            }
            // Dedup identical inequality rows, keeping the stronger
            // relation; equality rows never merge with inequalities.
            rest.sort_by(|a, b| a.coeffs.cmp(&b.coeffs).then(b.rel.cmp(&a.rel)));
            rest.dedup_by(|a, b| {
                a.coeffs == b.coeffs && (a.rel == Rel::Eq) == (b.rel == Rel::Eq)
            });
            rows = rest;
            steps.push((v, Step::Bounds { lower, upper }));
        }
    }

    // All variables eliminated: rows are now constants (all coeffs zero).
    for row in &rows {
        debug_assert!(row.coeffs.iter().all(|&c| c == 0));
        match row.rel {
            Rel::Eq | Rel::Ge => {}
            Rel::Gt => return None,
        }
    }

    // Back-substitute midpoints of feasible intervals.
    let mut x = vec![Rational::zero(); n];
    let eval_rest = |coeffs: &[i128], v: usize, x: &[Rational]| -> Rational {
        coeffs
            .iter()
            .enumerate()
            .filter(|&(j, &c)| j != v && c != 0)
            .map(|(j, &c)| Rational::from(BigInt::from(c)) * &x[j])
            .fold(Rational::zero(), |acc, t| acc + t)
    };
    for (v, step) in steps.into_iter().rev() {
        match step {
            Step::FromEq(coeffs) => {
                let a = Rational::from(BigInt::from(coeffs[v]));
                let rest = eval_rest(&coeffs, v, &x);
                x[v] = -rest / a;
            }
            Step::Bounds { lower, upper } => {
                // lower rows: a x_v + rest >= 0, a > 0  =>  x_v >= -rest/a
                let mut lo: Option<(Rational, bool)> = None;
                for c in &lower {
                    let bound = -eval_rest(&c.coeffs, v, &x)
                        / Rational::from(BigInt::from(c.coeffs[v]));
                    let strict = c.rel == Rel::Gt;
                    lo = Some(match lo {
                        None => (bound, strict),
                        Some((cur, cs)) => {
                            if bound > cur || (bound == cur && strict && !cs) {
                                (bound, strict)
                            } else {
                                (cur, cs)
                            }
                        }
                    });
                }
                let mut hi: Option<(Rational, bool)> = None;
                for c in &upper {
                    let bound = -eval_rest(&c.coeffs, v, &x)
                        / Rational::from(BigInt::from(c.coeffs[v]));
                    let strict = c.rel == Rel::Gt;
                    hi = Some(match hi {
                        None => (bound, strict),
                        Some((cur, cs)) => {
                            if bound < cur || (bound == cur && strict && !cs) {
                                (bound, strict)
                            } else {
                                (cur, cs)
                            }
                        }
                    });
                }
                x[v] = match (lo, hi) {
                    (None, None) => Rational::zero(),
                    (Some((l, ls)), None) => {
                        if ls {
                            l + Rational::one()
                        } else {
                            l
                        }
                    }
                    (None, Some((h, hs))) => {
                        if hs {
                            h - Rational::one()
                        } else {
                            h
                        }
                    }
                    (Some((l, _)), Some((h, _))) => {
                        if l == h {
                            l
                        } else {
                            (l + h) / rat_int(2)
                        }
                    }
                };
            }
        }
    }
    Some(x)
}

/// Strictness marker for `relative_interior_point` inequality inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    NonStrict,
}

/// Exact rational point satisfying every equality, every nonstrict inequality
/// weakly and every strict inequality strictly, or `Infeasible`.
pub fn relative_interior_point(
    ineqs: &[(RationalVector, Strictness)],
    eqs: &[RationalVector],
    n: usize,
) -> Result<RationalVector> {
    let mut constraints = Vec::new();
    for (v, s) in ineqs {
        assert_eq!(v.len(), n);
        let rel = match s {
            Strictness::Strict => Rel::Gt,
            Strictness::NonStrict => Rel::Ge,
        };
        constraints.push(Constraint::new(&v.to_primitive_ints(), rel));
    }
    for v in eqs {
        assert_eq!(v.len(), n);
        constraints.push(Constraint::new(&v.to_primitive_ints(), Rel::Eq));
    }
    match fm_solve(&constraints, n) {
        Some(x) => Ok(RationalVector(x)),
        None => Err(Error::Infeasible),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(coords: &[i64]) -> RationalVector {
        RationalVector::from_ints(coords)
    }

    #[test]
    fn rref_dependent_rows() {
        let m = RationalMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        let (red, pivots) = rref(&m);
        assert_eq!(pivots, vec![0]);
        assert_eq!(red.rows[0], rv(&[1, 2]));
        assert!(red.rows[1].is_zero());
    }

    #[test]
    fn rref_identity_fixed() {
        let m = RationalMatrix::from_ints(&[&[1, 0], &[0, 1]]);
        let (red, pivots) = rref(&m);
        assert_eq!(red, m);
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rref_hand_elimination() {
        // [[0,1,-1],[1,-1,0]] -> pivots {0,1}, rank 2 (hand Gaussian oracle)
        let m = RationalMatrix::from_ints(&[&[0, 1, -1], &[1, -1, 0]]);
        let (red, pivots) = rref(&m);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(red.rows[0], rv(&[1, 0, -1]));
        assert_eq!(red.rows[1], rv(&[0, 1, -1]));
    }

    #[test]
    fn rref_idempotent() {
        let m = RationalMatrix::from_ints(&[&[2, 4, 1], &[3, 1, 0], &[5, 5, 1]]);
        let (red, _) = rref(&m);
        let (red2, _) = rref(&red);
        assert_eq!(red, red2);
    }

    #[test]
    fn solve_identity() {
        let a = RationalMatrix::from_ints(&[&[1, 0], &[0, 1]]);
        let b = rv(&[3, -7]);
        assert_eq!(solve_linear(&a, &b).unwrap(), b);
    }

    #[test]
    fn solve_underdetermined() {
        let a = RationalMatrix::from_ints(&[&[1, 1]]);
        let b = rv(&[2]);
        let x = solve_linear(&a, &b).unwrap();
        assert_eq!(x.coord_sum(), rat_int(2));
    }

    #[test]
    fn solve_inconsistent() {
        let a = RationalMatrix::from_ints(&[&[1], &[1]]);
        let b = rv(&[0, 1]);
        assert!(matches!(solve_linear(&a, &b), Err(Error::Inconsistent)));
    }

    #[test]
    fn interior_point_witness() {
        // {x1 > 0, x1+x2+x3 = 0} in R^3
        let x = relative_interior_point(
            &[(rv(&[1, 0, 0]), Strictness::Strict)],
            &[rv(&[1, 1, 1])],
            3,
        )
        .unwrap();
        assert!(x.0[0] > Rational::zero());
        assert!(x.coord_sum().is_zero());
    }

    #[test]
    fn interior_point_infeasible() {
        let x = relative_interior_point(
            &[
                (rv(&[1]), Strictness::Strict),
                (rv(&[-1]), Strictness::Strict),
            ],
            &[],
            1,
        );
        assert!(matches!(x, Err(Error::Infeasible)));
    }

    #[test]
    fn interior_point_braid_chamber() {
        // full sign vector of the n=3 braid chamber x1 > x2 > x3 on V0^3
        let x = relative_interior_point(
            &[
                (rv(&[1, -1, 0]), Strictness::Strict),
                (rv(&[0, 1, -1]), Strictness::Strict),
            ],
            &[rv(&[1, 1, 1])],
            3,
        )
        .unwrap();
        assert!(x.0[0] > x.0[1] && x.0[1] > x.0[2]);
        assert!(x.in_v0());
    }

    #[test]
    fn kernel_of_sum_functional() {
        let m = RationalMatrix::from_ints(&[&[1, 1, 1]]);
        let basis = kernel_basis(&m);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(v.coord_sum().is_zero());
        }
    }

    #[test]
    fn primitive_and_reduce() {
        assert_eq!(primitive_i64(&[2, -2, 0]), vec![1, -1, 0]);
        assert_eq!(primitive_i64(&[0, 0]), vec![0, 0]);
        let basis = int_row_basis(&[vec![0, 1, -1]], 3);
        assert_eq!(reduce_mod_rows(&[1, 1, -2], &basis), vec![1, 0, -1]);
    }
}
