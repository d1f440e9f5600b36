//! Field-independent labels for isoclasses: partitions, Segre sequences and
//! decomposition sequences.
//!
//! A Segre sequence lists pairs `(partition, degree)` with degrees weakly
//! increasing. Alignment between sequences is positional: after
//! [`common_type`], the i-th pair of every sequence refers to the same closed
//! point. Within one degree, the k-th entry sits at the k-th chosen point of
//! that degree.
//!
//! Two forms are used. [`SegreSequence::normalize`] forgets which point carries
//! which partition (empty pairs removed, equal-degree entries sorted), which is
//! the right notion for naming an isoclass family. [`SegreSequence::trim`]
//! keeps positions and only drops empty pairs at the end of each degree block,
//! which is what products in the generic algebra need.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HallError, Result};

/// Integer partition, parts weakly decreasing, no zero parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = HallError;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl Partition {
    /// Validate a weakly decreasing list of positive parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(HallError::Parse(format!("{:?} is not a partition", parts)));
        }
        Ok(Partition(parts))
    }

    /// Sort parts and drop zeros.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.0.first().copied().unwrap_or(0);
        Partition((1..=n).map(|i| self.0.iter().filter(|&&x| x >= i).count()).collect())
    }

    /// Multiplicity of each part size, smallest first.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &x in &self.0 {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    /// All partitions of `n`, largest first part first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// `n(λ) = Σ (i-1) λ_i`.
pub fn n_stat(lambda: &Partition) -> usize {
    lambda.0.iter().enumerate().map(|(i, x)| i * x).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SegreEntry {
    pub partition: Partition,
    pub degree: usize,
}

/// Sequence of `(partition, degree)` pairs with weakly increasing degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<SegreEntry>", into = "Vec<SegreEntry>")]
pub struct SegreSequence(Vec<SegreEntry>);

impl TryFrom<Vec<SegreEntry>> for SegreSequence {
    type Error = HallError;
    fn try_from(v: Vec<SegreEntry>) -> Result<Self> {
        SegreSequence::new(v)
    }
}

impl From<SegreSequence> for Vec<SegreEntry> {
    fn from(s: SegreSequence) -> Self {
        s.0
    }
}

impl SegreSequence {
    pub fn new(entries: Vec<SegreEntry>) -> Result<Self> {
        if entries.iter().any(|e| e.degree == 0) {
            return Err(HallError::Parse("point degree must be positive".into()));
        }
        if entries.windows(2).any(|w| w[0].degree > w[1].degree) {
            return Err(HallError::Parse("degrees must be weakly increasing".into()));
        }
        Ok(SegreSequence(entries))
    }

    /// Build from `(parts, degree)` pairs.
    pub fn from_pairs(pairs: &[(&[usize], usize)]) -> Result<Self> {
        let entries = pairs
            .iter()
            .map(|(p, d)| {
                Ok(SegreEntry {
                    partition: Partition::new(p.to_vec())?,
                    degree: *d,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn empty() -> Self {
        SegreSequence(Vec::new())
    }

    pub fn entries(&self) -> &[SegreEntry] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|e| e.partition.is_empty())
    }

    /// Type vector: the degrees, in order.
    pub fn type_vector(&self) -> Vec<usize> {
        self.0.iter().map(|e| e.degree).collect()
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|e| e.partition.size() * e.degree).sum()
    }

    /// Number of entries of each degree.
    pub fn degree_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for e in &self.0 {
            *m.entry(e.degree).or_insert(0) += 1;
        }
        m
    }

    /// Entries of degree `d`, in positional order.
    pub fn block(&self, d: usize) -> Vec<&Partition> {
        self.0.iter().filter(|e| e.degree == d).map(|e| &e.partition).collect()
    }

    /// Remove every `(∅, d)` pair and sort equal-degree entries by partition.
    pub fn normalize(&self) -> SegreSequence {
        let mut v: Vec<SegreEntry> = self.0.iter().filter(|e| !e.partition.is_empty()).cloned().collect();
        v.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.partition.cmp(&b.partition)));
        SegreSequence(v)
    }

    /// Positional canonical form: drop `(∅, d)` pairs at the end of each
    /// degree block, keep everything else in place.
    pub fn trim(&self) -> SegreSequence {
        let mut out = Vec::new();
        for (d, _) in self.degree_counts() {
            let mut block: Vec<&Partition> = self.block(d);
            while block.last().is_some_and(|p| p.is_empty()) {
                block.pop();
            }
            out.extend(block.into_iter().map(|p| SegreEntry {
                partition: p.clone(),
                degree: d,
            }));
        }
        SegreSequence(out)
    }

    /// Pad each degree block with empty pairs at its end so that degree `d`
    /// has `counts[d]` entries.
    pub fn pad_to(&self, counts: &BTreeMap<usize, usize>) -> Result<SegreSequence> {
        let mine = self.degree_counts();
        let mut out = Vec::new();
        for d in mine.keys().chain(counts.keys()).copied().collect::<std::collections::BTreeSet<_>>() {
            let have = mine.get(&d).copied().unwrap_or(0);
            let want = counts.get(&d).copied().unwrap_or(0);
            if have > want {
                return Err(HallError::Shape(format!("degree {} has {} entries, type allows {}", d, have, want)));
            }
            for p in self.block(d) {
                out.push(SegreEntry {
                    partition: p.clone(),
                    degree: d,
                });
            }
            for _ in have..want {
                out.push(SegreEntry {
                    partition: Partition::empty(),
                    degree: d,
                });
            }
        }
        Ok(SegreSequence(out))
    }
}

impl fmt::Display for SegreSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|e| format!("({},{})", e.partition, e.degree)).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Indecomposable `S_{tube,top}[len]` of a non-homogeneous tube: length `len`,
/// top `S_{tube,top}`, composition factors `top, top-1, ..., top-len+1`
/// (indices mod the tube rank).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub tube: usize,
    pub top: usize,
    pub len: usize,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{},{}[{}]", self.tube, self.top, self.len)
    }
}

/// Multiset of segments, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Segment>", into = "Vec<Segment>")]
pub struct Multisegment(Vec<Segment>);

impl From<Vec<Segment>> for Multisegment {
    fn from(v: Vec<Segment>) -> Self {
        Multisegment::new(v)
    }
}

impl From<Multisegment> for Vec<Segment> {
    fn from(m: Multisegment) -> Self {
        m.0
    }
}

impl Multisegment {
    pub fn new(mut v: Vec<Segment>) -> Self {
        v.retain(|s| s.len > 0);
        v.sort();
        Multisegment(v)
    }

    pub fn empty() -> Self {
        Multisegment(Vec::new())
    }

    /// Segments in one tube, each `(top, len)`.
    pub fn in_tube(tube: usize, parts: &[(usize, usize)]) -> Self {
        Self::new(parts.iter().map(|&(top, len)| Segment { tube, top, len }).collect())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_len(&self) -> usize {
        self.0.iter().map(|s| s.len).sum()
    }

    pub fn tubes(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.0.iter().map(|s| s.tube).collect();
        t.dedup();
        t
    }

    pub fn restrict(&self, tube: usize) -> Multisegment {
        Multisegment(self.0.iter().filter(|s| s.tube == tube).copied().collect())
    }

    /// Reduce top indices modulo the tube ranks (`ranks[tube - 1]`).
    pub fn reduce(&self, ranks: &[usize]) -> Result<Multisegment> {
        let mut v = Vec::new();
        for s in &self.0 {
            let p = *ranks
                .get(s.tube.wrapping_sub(1))
                .ok_or_else(|| HallError::UnknownLabel(format!("tube {} not present", s.tube)))?;
            v.push(Segment {
                top: s.top % p,
                ..*s
            });
        }
        Ok(Multisegment::new(v))
    }

    pub fn union(&self, other: &Multisegment) -> Multisegment {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Multisegment::new(v)
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", s.join(" + "))
    }
}

/// Preprojective or preinjective summand on the quiver side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuiverSummand {
    Prep(usize),
    Prei(usize),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum NhEntry {
    Segment(Segment),
    Quiver(QuiverSummand),
}

/// Non-homogeneous part of a decomposition sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "Vec<NhEntry>", into = "Vec<NhEntry>")]
pub struct NhClass {
    pub segments: Multisegment,
    pub quiver: Vec<QuiverSummand>,
}

impl From<Vec<NhEntry>> for NhClass {
    fn from(v: Vec<NhEntry>) -> Self {
        let mut segs = Vec::new();
        let mut quiver = Vec::new();
        for e in v {
            match e {
                NhEntry::Segment(s) => segs.push(s),
                NhEntry::Quiver(q) => quiver.push(q),
            }
        }
        NhClass::new(Multisegment::new(segs), quiver)
    }
}

impl From<NhClass> for Vec<NhEntry> {
    fn from(c: NhClass) -> Self {
        let mut v: Vec<NhEntry> = c.segments.0.into_iter().map(NhEntry::Segment).collect();
        v.extend(c.quiver.into_iter().map(NhEntry::Quiver));
        v
    }
}

impl NhClass {
    pub fn new(segments: Multisegment, mut quiver: Vec<QuiverSummand>) -> Self {
        quiver.sort();
        NhClass { segments, quiver }
    }

    pub fn torsion(segments: Multisegment) -> Self {
        NhClass {
            segments,
            quiver: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty() && self.quiver.is_empty()
    }
}

/// Pair `(α, λ)`: non-homogeneous part plus Segre sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct DecompositionSequence {
    pub nh: NhClass,
    pub segre: SegreSequence,
}

impl DecompositionSequence {
    pub fn new(nh: NhClass, segre: SegreSequence) -> Self {
        DecompositionSequence { nh, segre }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn homogeneous(segre: SegreSequence) -> Self {
        Self::new(NhClass::default(), segre)
    }

    pub fn from_segments(segments: Multisegment) -> Self {
        Self::new(NhClass::torsion(segments), SegreSequence::empty())
    }

    pub fn type_vector(&self) -> Vec<usize> {
        self.segre.type_vector()
    }

    /// No preprojective or preinjective summands.
    pub fn is_torsion(&self) -> bool {
        self.nh.quiver.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.nh.segments.is_empty() && self.segre.is_empty()
    }

    /// Torsion part and torsion-free part.
    pub fn split(&self) -> (DecompositionSequence, DecompositionSequence) {
        (
            Self::new(NhClass::torsion(self.nh.segments.clone()), self.segre.clone()),
            Self::new(NhClass::new(Multisegment::empty(), self.nh.quiver.clone()), SegreSequence::empty()),
        )
    }

    /// Segment lengths plus `Σ |λ| d`.
    pub fn total_degree(&self) -> usize {
        self.nh.segments.total_len() + self.segre.total_degree()
    }

    pub fn is_empty(&self) -> bool {
        self.nh.is_empty() && self.segre.is_empty()
    }

    pub fn normalize(&self) -> Self {
        Self::new(self.nh.clone(), self.segre.normalize())
    }

    pub fn trim(&self) -> Self {
        Self::new(self.nh.clone(), self.segre.trim())
    }
}

impl fmt::Display for DecompositionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.nh.segments, self.segre)?;
        for q in &self.nh.quiver {
            match q {
                QuiverSummand::Prep(n) => write!(f, " P({})", n)?,
                QuiverSummand::Prei(n) => write!(f, " I({})", n)?,
            }
        }
        Ok(())
    }
}

/// Remove empty pairs and sort equal-degree entries.
pub fn normalize(a: &DecompositionSequence) -> DecompositionSequence {
    a.normalize()
}

/// Minimal common type and the sequences padded to it (positionally, at the
/// end of each degree block).
pub fn common_type(seqs: &[DecompositionSequence]) -> (Vec<usize>, Vec<DecompositionSequence>) {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for s in seqs {
        for (d, c) in s.segre.degree_counts() {
            let e = counts.entry(d).or_insert(0);
            *e = (*e).max(c);
        }
    }
    let ty: Vec<usize> = counts.iter().flat_map(|(d, c)| std::iter::repeat_n(*d, *c)).collect();
    let padded = seqs
        .iter()
        .map(|s| DecompositionSequence::new(s.nh.clone(), s.segre.pad_to(&counts).expect("counts dominate")))
        .collect();
    (ty, padded)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(pairs: &[(&[usize], usize)]) -> DecompositionSequence {
        DecompositionSequence::homogeneous(SegreSequence::from_pairs(pairs).unwrap())
    }

    #[test]
    fn normalize_drops_empty_pairs() {
        let a = seq(&[(&[2], 1), (&[], 2)]);
        assert_eq!(normalize(&a), seq(&[(&[2], 1)]));
        let b = seq(&[(&[2], 1)]);
        assert_eq!(normalize(&b), b);
        let c = seq(&[(&[], 1), (&[2], 1), (&[], 3)]);
        assert_eq!(normalize(&c), normalize(&b));
    }

    #[test]
    fn common_type_examples() {
        let (ty, padded) = common_type(&[seq(&[(&[1], 1)]), seq(&[(&[1], 2)])]);
        assert_eq!(ty, vec![1, 2]);
        assert_eq!(padded[0], seq(&[(&[1], 1), (&[], 2)]));
        assert_eq!(padded[1], seq(&[(&[], 1), (&[1], 2)]));
        let (ty, padded) = common_type(&[DecompositionSequence::empty(), seq(&[(&[1], 1)])]);
        assert_eq!(ty, vec![1]);
        assert_eq!(padded[0], seq(&[(&[], 1)]));
        let same = seq(&[(&[2, 1], 1)]);
        let (_, padded) = common_type(&[same.clone(), same.clone()]);
        assert_eq!(padded, vec![same.clone(), same]);
    }

    #[test]
    fn n_stat_examples() {
        assert_eq!(n_stat(&Partition::new(vec![2, 1]).unwrap()), 1);
        assert_eq!(n_stat(&Partition::new(vec![1, 1, 1]).unwrap()), 3);
        assert_eq!(n_stat(&Partition::empty()), 0);
    }

    #[test]
    fn partitions_and_conjugates() {
        assert_eq!(Partition::all(4).len(), 5);
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.conjugate(), Partition::new(vec![2, 1, 1]).unwrap());
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn json_shapes() {
        let mut d = seq(&[(&[2, 1], 1)]);
        d.nh = NhClass::new(Multisegment::in_tube(1, &[(0, 2)]), vec![QuiverSummand::Prep(1)]);
        let j = serde_json::to_value(&d).unwrap();
        assert_eq!(
            j,
            serde_json::json!({
                "nh": [{"tube": 1, "top": 0, "len": 2}, {"prep": 1}],
                "segre": [{"partition": [2, 1], "degree": 1}]
            })
        );
        let back: DecompositionSequence = serde_json::from_value(j).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn trim_keeps_positions() {
        let a = seq(&[(&[], 1), (&[1], 1), (&[], 1)]);
        assert_eq!(a.trim(), seq(&[(&[], 1), (&[1], 1)]));
        assert_ne!(a.trim(), seq(&[(&[1], 1)]));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1usize..=4, 0..4).prop_map(Partition::from_parts)
    }

    fn sequence() -> impl Strategy<Value = DecompositionSequence> {
        prop::collection::vec((partition(), 1usize..=3), 0..4).prop_map(|mut v| {
            v.sort_by_key(|(_, d)| *d);
            let entries = v.into_iter().map(|(partition, degree)| SegreEntry { partition, degree }).collect();
            DecompositionSequence::homogeneous(SegreSequence::new(entries).unwrap())
        })
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent_and_keeps_degree(a in sequence()) {
            let n = normalize(&a);
            prop_assert_eq!(normalize(&n), n.clone());
            prop_assert_eq!(n.total_degree(), a.total_degree());
        }

        #[test]
        fn common_type_pads_consistently(seqs in prop::collection::vec(sequence(), 1..4)) {
            let (ty, padded) = common_type(&seqs);
            for (orig, p) in seqs.iter().zip(&padded) {
                prop_assert_eq!(&p.type_vector(), &ty);
                prop_assert_eq!(normalize(p), normalize(orig));
            }
        }

        #[test]
        fn conjugation_is_an_involution(p in partition()) {
            prop_assert_eq!(p.conjugate().conjugate(), p.clone());
            prop_assert_eq!(p.conjugate().size(), p.size());
        }
    }
}
