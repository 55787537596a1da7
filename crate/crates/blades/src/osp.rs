//! Ordered set partitions, their cyclic structure, and the counting
//! functions used throughout the crate.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An ordered list of disjoint nonempty blocks drawn from {1..n}.
///
/// The union of the blocks may be a proper subset of the ground set; plates
/// and blades of subset supports rely on that.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSetPartition {
    blocks: Vec<BTreeSet<usize>>,
    ground_n: usize,
}

impl OrderedSetPartition {
    pub fn new(blocks: Vec<BTreeSet<usize>>, ground_n: usize) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::ParseOsp("empty block".into()));
            }
            for &e in b {
                if e == 0 || e > ground_n {
                    return Err(Error::ParseOsp(format!(
                        "element {e} outside 1..={ground_n}"
                    )));
                }
                if !seen.insert(e) {
                    return Err(Error::ParseOsp(format!("duplicate element {e}")));
                }
            }
        }
        Ok(OrderedSetPartition { blocks, ground_n })
    }

    /// Convenience constructor from slices of block elements.
    pub fn from_blocks(blocks: &[&[usize]], ground_n: usize) -> Self {
        OrderedSetPartition::new(
            blocks.iter().map(|b| b.iter().copied().collect()).collect(),
            ground_n,
        )
        .expect("malformed ordered set partition literal")
    }

    /// Singleton-block partition from a sequence of distinct elements.
    pub fn from_seq(seq: &[usize], ground_n: usize) -> Self {
        OrderedSetPartition::new(
            seq.iter().map(|&e| BTreeSet::from([e])).collect(),
            ground_n,
        )
        .expect("malformed sequence")
    }

    pub fn ground_n(&self) -> usize {
        self.ground_n
    }

    pub fn with_ground(&self, ground_n: usize) -> Result<Self> {
        OrderedSetPartition::new(self.blocks.clone(), ground_n)
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// Parse the `1,5|2|9|3|6,7` text form.
    pub fn parse(text: &str, ground_n: Option<usize>) -> Result<Self> {
        let mut blocks = Vec::new();
        for chunk in text.split('|') {
            let mut block = BTreeSet::new();
            for e in chunk.split(',') {
                let e = e.trim();
                if e.is_empty() {
                    return Err(Error::ParseOsp("empty element".into()));
                }
                let v: usize = e
                    .parse()
                    .map_err(|_| Error::ParseOsp(format!("bad element `{e}`")))?;
                if !block.insert(v) {
                    return Err(Error::ParseOsp(format!("duplicate element {v}")));
                }
            }
            blocks.push(block);
        }
        let max = blocks.iter().flatten().copied().max().unwrap_or(0);
        OrderedSetPartition::new(blocks, ground_n.unwrap_or(max))
    }

    /// True iff the first block contains the minimum of the support.
    pub fn is_standard(&self) -> bool {
        match self.support().iter().next() {
            Some(min) => self.blocks[0].contains(min),
            None => true,
        }
    }

    /// Standard, and still standard after deleting the first block.
    pub fn is_two_standard(&self) -> bool {
        if !self.is_standard() {
            return false;
        }
        if self.blocks.len() <= 1 {
            return true;
        }
        let rest =
            OrderedSetPartition::new(self.blocks[1..].to_vec(), self.ground_n).expect("valid");
        rest.is_standard()
    }

    /// All k cyclic block rotations, starting with self.
    pub fn cyclic_rotations(&self) -> Vec<OrderedSetPartition> {
        let k = self.blocks.len();
        (0..k)
            .map(|r| {
                let mut blocks = self.blocks[r..].to_vec();
                blocks.extend_from_slice(&self.blocks[..r]);
                OrderedSetPartition {
                    blocks,
                    ground_n: self.ground_n,
                }
            })
            .collect()
    }

    /// The unique standard rotation.
    pub fn cyclic_normal_form(&self) -> OrderedSetPartition {
        self.cyclic_rotations()
            .into_iter()
            .find(|r| r.is_standard())
            .expect("some rotation is standard")
    }

    /// Lexicographic comparison via the block-index sequences (p_1..p_n).
    /// Both partitions must have the same support.
    pub fn lex_compare(&self, other: &OrderedSetPartition) -> Ordering {
        let sup = self.support();
        assert_eq!(sup, other.support(), "lex_compare needs equal supports");
        let index_of = |osp: &OrderedSetPartition, e: usize| {
            osp.blocks.iter().position(|b| b.contains(&e)).unwrap() + 1
        };
        for &e in &sup {
            match index_of(self, e).cmp(&index_of(other, e)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("|");
        write!(f, "{text}")
    }
}

/// A set of ordered set partitions with pairwise-disjoint supports.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompositeOsp {
    pub parts: Vec<OrderedSetPartition>,
    pub ground_n: usize,
}

impl CompositeOsp {
    pub fn new(parts: Vec<OrderedSetPartition>, ground_n: usize) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for p in &parts {
            for e in p.support() {
                if !seen.insert(e) {
                    return Err(Error::BlocksOverlap);
                }
            }
        }
        Ok(CompositeOsp { parts, ground_n })
    }
}

/// True iff some cyclic rotation of `u` admits an order-preserving injection
/// of `w`'s blocks into its blocks, with each block of `w` contained in its
/// image block and distinct blocks mapping to distinct blocks.
pub fn is_cyclic_subword(w: &OrderedSetPartition, u: &OrderedSetPartition) -> bool {
    u.cyclic_rotations().iter().any(|rot| {
        // Greedy subsequence matching; containment is monotone so greedy
        // earliest-match decides existence.
        let mut pos = 0;
        for wb in w.blocks() {
            let found = rot.blocks()[pos..]
                .iter()
                .position(|ub| wb.is_subset(ub));
            match found {
                Some(off) => pos += off + 1,
                None => return false,
            }
        }
        true
    })
}

/// All ordered set partitions of the given support set.
pub fn enumerate_osps_of(support: &BTreeSet<usize>, ground_n: usize) -> Vec<OrderedSetPartition> {
    fn go(remaining: &BTreeSet<usize>, acc: &mut Vec<BTreeSet<usize>>, out: &mut Vec<Vec<BTreeSet<usize>>>) {
        if remaining.is_empty() {
            out.push(acc.clone());
            return;
        }
        let items: Vec<usize> = remaining.iter().copied().collect();
        let m = items.len();
        // Nonempty subsets of the remaining elements as the next block.
        for mask in 1u32..(1 << m) {
            let block: BTreeSet<usize> = (0..m)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| items[i])
                .collect();
            let rest: BTreeSet<usize> = remaining.difference(&block).copied().collect();
            acc.push(block);
            go(&rest, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(support, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|blocks| OrderedSetPartition { blocks, ground_n })
        .collect()
}

/// All ordered set partitions of {1..n} satisfying `predicate`.
pub fn enumerate_osps(
    n: usize,
    predicate: impl Fn(&OrderedSetPartition) -> bool,
) -> Result<Vec<OrderedSetPartition>> {
    if n > 9 {
        return Err(Error::TooLarge(format!("enumerate_osps with n = {n}")));
    }
    let support: BTreeSet<usize> = (1..=n).collect();
    Ok(enumerate_osps_of(&support, n)
        .into_iter()
        .filter(|o| predicate(o))
        .collect())
}

/// Standard ordered set partitions of {1..n}, in enumeration order.
pub fn enumerate_standard_osps(n: usize) -> Result<Vec<OrderedSetPartition>> {
    enumerate_osps(n, |o| o.is_standard())
}

/// Unsigned Stirling number of the first kind c(n,k): permutations of n
/// elements with k cycles.
pub fn stirling1(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::zero(); k.max(n) + 1];
    row[0] = BigInt::one();
    for i in 1..=n {
        let mut next = vec![BigInt::zero(); row.len()];
        for j in 1..row.len() {
            next[j] = &row[j] * BigInt::from(i - 1) + &row[j - 1];
        }
        next[0] = BigInt::zero();
        row = next;
    }
    if n == 0 && k == 0 {
        return BigInt::one();
    }
    row.get(k).cloned().unwrap_or_else(BigInt::zero)
}

/// Stirling number of the second kind S(n,k): set partitions of {1..n} into
/// k blocks.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if n == 0 && k == 0 {
        return BigInt::one();
    }
    let mut row = vec![BigInt::zero(); k.max(n) + 1];
    row[0] = BigInt::one();
    for _i in 1..=n {
        let mut next = vec![BigInt::zero(); row.len()];
        for j in 1..row.len() {
            next[j] = &row[j] * BigInt::from(j) + &row[j - 1];
        }
        next[0] = BigInt::zero();
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(BigInt::zero)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Number of ordered set partitions of {1..n} up to cyclic block rotation;
/// equals the number of standard ordered set partitions.
pub fn necklace(n: usize) -> BigInt {
    (1..=n)
        .map(|k| stirling2(n, k) * factorial(k - 1))
        .fold(BigInt::zero(), |acc, t| acc + t)
}

/// A triangulation of the convex k-gon with vertices 1..k. Triples are kept
/// cyclically oriented with the smallest vertex first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolygonTriangulation {
    pub k: usize,
    pub triangles: BTreeSet<(usize, usize, usize)>,
}

fn oriented(a: usize, b: usize, c: usize) -> Result<(usize, usize, usize)> {
    let ok = (a < b && b < c) || (b < c && c < a) || (c < a && a < b);
    if !ok {
        return Err(Error::BadOrientation);
    }
    let m = a.min(b).min(c);
    if m == a {
        Ok((a, b, c))
    } else if m == b {
        Ok((b, c, a))
    } else {
        Ok((c, a, b))
    }
}

impl PolygonTriangulation {
    pub fn new(k: usize, triples: &[(usize, usize, usize)]) -> Result<Self> {
        let triangles: Result<BTreeSet<_>> =
            triples.iter().map(|&(a, b, c)| oriented(a, b, c)).collect();
        let triangles = triangles?;
        if k >= 3 && triangles.len() != k - 2 {
            return Err(Error::BadOrientation);
        }
        Ok(PolygonTriangulation { k, triangles })
    }

    /// The flag triangulation {(1,2,3),(1,3,4),...,(1,k-1,k)}.
    pub fn flag(k: usize) -> Self {
        let triangles = (2..k - 1).map(|i| (1, i, i + 1)).chain([(1, k - 1, k)]);
        PolygonTriangulation {
            k,
            triangles: if k == 3 {
                BTreeSet::from([(1, 2, 3)])
            } else {
                triangles.collect()
            },
        }
    }

    /// Flip the given internal diagonal {a,b}: the two incident triangles
    /// are replaced by the pair over the opposite diagonal.
    pub fn flip(&self, diagonal: (usize, usize)) -> Result<PolygonTriangulation> {
        let (a, b) = diagonal;
        let incident: Vec<(usize, usize, usize)> = self
            .triangles
            .iter()
            .filter(|t| {
                let s = [t.0, t.1, t.2];
                s.contains(&a) && s.contains(&b)
            })
            .copied()
            .collect();
        if incident.len() != 2 {
            return Err(Error::NoSuchDiagonal);
        }
        let third = |t: (usize, usize, usize)| {
            [t.0, t.1, t.2]
                .into_iter()
                .find(|&v| v != a && v != b)
                .unwrap()
        };
        let c = third(incident[0]);
        let d = third(incident[1]);
        let mut triangles = self.triangles.clone();
        for t in &incident {
            triangles.remove(t);
        }
        for verts in [[a, c, d], [b, c, d]] {
            let mut v = verts;
            v.sort_unstable();
            triangles.insert((v[0], v[1], v[2]));
        }
        Ok(PolygonTriangulation {
            k: self.k,
            triangles,
        })
    }
}

/// All triangulations of the convex k-gon; Catalan(k-2) of them.
pub fn enumerate_triangulations(k: usize) -> Result<Vec<PolygonTriangulation>> {
    if !(3..=9).contains(&k) {
        return Err(Error::TooLarge(format!("triangulations of a {k}-gon")));
    }
    fn go(vertices: &[usize]) -> Vec<BTreeSet<(usize, usize, usize)>> {
        let m = vertices.len();
        if m < 3 {
            return vec![BTreeSet::new()];
        }
        let (v0, vm) = (vertices[0], vertices[m - 1]);
        let mut out = Vec::new();
        for i in 1..m - 1 {
            let apex = vertices[i];
            let mut tri = [v0, apex, vm];
            tri.sort_unstable();
            for left in go(&vertices[..=i]) {
                for right in go(&vertices[i..]) {
                    let mut t = left.clone();
                    t.extend(right.iter().copied());
                    t.insert((tri[0], tri[1], tri[2]));
                    out.push(t);
                }
            }
        }
        out
    }
    let vertices: Vec<usize> = (1..=k).collect();
    Ok(go(&vertices)
        .into_iter()
        .map(|triangles| PolygonTriangulation { k, triangles })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osp(text: &str) -> OrderedSetPartition {
        OrderedSetPartition::parse(text, None).unwrap()
    }

    #[test]
    fn standard_predicates() {
        assert!(osp("1|2|3").is_standard());
        assert!(!osp("3|4|5|1|2").is_standard());
        assert!(osp("1,5|2|4|3").is_standard());
        assert!(osp("1|2|4|3|5").is_two_standard());
        assert!(osp("1,5|2|4|3").is_two_standard());
        assert!(!osp("1,2,5|4|3").is_two_standard());
        assert!(osp("1").is_two_standard());
    }

    #[test]
    fn rotations_and_normal_form() {
        let o = osp("1|2|3");
        let rots = o.cyclic_rotations();
        assert_eq!(rots.len(), 3);
        assert!(rots.contains(&osp("2|3|1")));
        assert_eq!(osp("3|4|5|1|2").cyclic_normal_form(), osp("1|2|3|4|5"));
        let standard: Vec<_> = osp("2|3|1")
            .cyclic_rotations()
            .into_iter()
            .filter(|r| r.is_standard())
            .collect();
        assert_eq!(standard.len(), 1);
    }

    #[test]
    fn cyclic_subword_examples() {
        assert!(is_cyclic_subword(&osp("1|2|3"), &osp("1|2|4|3|5")));
        assert!(is_cyclic_subword(&osp("1|4|5"), &osp("1|2,4|3,5")));
        assert!(!is_cyclic_subword(&osp("1|4|5"), &osp("1|2|3|4,5")));
        // invariance under rotating u
        let w = osp("1|2|3");
        let u = osp("1|2|4|3|5");
        for r in u.cyclic_rotations() {
            assert!(is_cyclic_subword(&w, &r));
        }
    }

    #[test]
    fn lex_compare_examples() {
        use std::cmp::Ordering::*;
        assert_eq!(osp("1,2|3").lex_compare(&osp("1|2|3")), Less);
        assert_eq!(osp("1|2|3").lex_compare(&osp("1|2|3")), Equal);
        assert_eq!(osp("1|2,3").lex_compare(&osp("1|2|3")), Less);
    }

    #[test]
    fn parse_print_round_trip() {
        let text = "1,5|2|9|3|6,7";
        let o = OrderedSetPartition::parse(text, None).unwrap();
        assert_eq!(o.block_count(), 5);
        assert_eq!(o.to_string(), text);
        assert!(OrderedSetPartition::parse("1|1", None).is_err());
        assert!(OrderedSetPartition::parse("1||2", None).is_err());
        assert!(OrderedSetPartition::parse("0|1", None).is_err());
    }

    #[test]
    fn counting() {
        assert_eq!(necklace(4), BigInt::from(26));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        let expected = [1u64, 2, 6, 26, 150, 1082];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(necklace(i + 1), BigInt::from(e));
        }
        // c(4,2) = 11 is the n=4 degree-2 dimension used elsewhere
        assert_eq!(stirling1(4, 2), BigInt::from(11));
    }

    #[test]
    fn standard_count_matches_necklace() {
        for n in 1..=7 {
            let count = enumerate_standard_osps(n).unwrap().len();
            assert_eq!(BigInt::from(count), necklace(n), "n = {n}");
        }
        assert!(matches!(
            enumerate_osps(10, |_| true),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn triangulation_counts() {
        assert_eq!(enumerate_triangulations(3).unwrap().len(), 1);
        let t4 = enumerate_triangulations(4).unwrap();
        assert_eq!(t4.len(), 2);
        let expect_a = PolygonTriangulation::new(4, &[(1, 2, 3), (1, 3, 4)]).unwrap();
        let expect_b = PolygonTriangulation::new(4, &[(1, 2, 4), (2, 3, 4)]).unwrap();
        assert!(t4.contains(&expect_a) && t4.contains(&expect_b));
        assert_eq!(enumerate_triangulations(6).unwrap().len(), 14);
    }

    #[test]
    fn flip_is_involution() {
        let t = PolygonTriangulation::new(4, &[(1, 2, 3), (1, 3, 4)]).unwrap();
        let flipped = t.flip((1, 3)).unwrap();
        assert_eq!(
            flipped,
            PolygonTriangulation::new(4, &[(1, 2, 4), (2, 3, 4)]).unwrap()
        );
        assert_eq!(flipped.flip((2, 4)).unwrap(), t);
        assert!(matches!(t.flip((2, 4)), Err(Error::NoSuchDiagonal)));
    }

    #[test]
    fn orientation_guard() {
        assert!(PolygonTriangulation::new(4, &[(1, 3, 2), (1, 3, 4)]).is_err());
    }
}
