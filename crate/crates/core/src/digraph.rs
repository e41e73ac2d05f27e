//! Loop-free digraphs on dense vertex labels, stored as per-vertex bitsets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order a [`Digraph`] can have; neighbourhoods are single `u64` words.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate arc ({0},{1})")]
    DuplicateArc(usize, usize),
    #[error("arcs ({0},{1}) and ({1},{0}) form a digon, which oriented mode forbids")]
    Digon(usize, usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("{what}: order {order} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

/// Whether digons (opposite arc pairs) are permitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Oriented,
    General,
}

impl Mode {
    /// Number of states a vertex pair can take: none, forward, backward and,
    /// in general mode, both.
    pub fn pair_states(self) -> u64 {
        match self {
            Mode::Oriented => 3,
            Mode::General => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Oriented => "oriented",
            Mode::General => "general",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oriented" => Ok(Mode::Oriented),
            "general" => Ok(Mode::General),
            other => Err(format!("unknown mode `{other}` (expected oriented|general)")),
        }
    }
}

/// A set of vertex ids below [`MAX_ORDER`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        if n == MAX_ORDER {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Out/in degree and neighbourhoods of one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degrees {
    pub out_degree: usize,
    pub in_degree: usize,
    pub out_neighbors: VertexSet,
    pub in_neighbors: VertexSet,
}

/// A loop-free digraph on vertices `0..order`.
///
/// Values are immutable once built; every constructor validates the mode.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    order: usize,
    mode: Mode,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl Digraph {
    /// Builds a digraph from an explicit arc list, rejecting loops, repeated
    /// arcs, out-of-range endpoints and (in oriented mode) digons.
    pub fn new<I>(order: usize, arcs: I, mode: Mode) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Digraph::empty(order, mode)?;
        for (u, v) in arcs {
            g.insert_arc(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(order: usize, mode: Mode) -> Result<Self, GraphError> {
        if order > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(order));
        }
        Ok(Digraph {
            order,
            mode,
            out: vec![0; order],
            inn: vec![0; order],
        })
    }

    /// Builds from out-neighbourhood bitmasks. Callers guarantee validity.
    pub(crate) fn from_out_masks(mode: Mode, out: Vec<u64>) -> Self {
        let order = out.len();
        let mut inn = vec![0u64; order];
        for (u, &row) in out.iter().enumerate() {
            for v in VertexSet(row) {
                inn[v] |= 1u64 << u;
            }
        }
        let g = Digraph {
            order,
            mode,
            out,
            inn,
        };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    fn insert_arc(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.order {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    order: self.order,
                });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.has_arc(u, v) {
            return Err(GraphError::DuplicateArc(u, v));
        }
        if self.mode == Mode::Oriented && self.has_arc(v, u) {
            return Err(GraphError::Digon(v, u));
        }
        self.out[u] |= 1u64 << v;
        self.inn[v] |= 1u64 << u;
        Ok(())
    }

    fn check_invariants(&self) -> Result<(), GraphError> {
        for u in 0..self.order {
            if self.out[u] >> u & 1 == 1 {
                return Err(GraphError::Loop(u));
            }
            if self.out[u] & !VertexSet::full(self.order).bits() != 0 {
                return Err(GraphError::VertexOutOfRange {
                    vertex: 63 - self.out[u].leading_zeros() as usize,
                    order: self.order,
                });
            }
            if self.mode == Mode::Oriented && self.out[u] & self.inn[u] != 0 {
                let v = (self.out[u] & self.inn[u]).trailing_zeros() as usize;
                return Err(GraphError::Digon(u, v));
            }
        }
        Ok(())
    }

    /// Returns a copy with one more arc.
    pub fn with_arc(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.insert_arc(u, v)?;
        Ok(g)
    }

    /// Same arcs, general mode.
    pub fn into_general(mut self) -> Self {
        self.mode = Mode::General;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.out[u] >> v & 1 == 1
    }

    /// Adjacent in the underlying graph.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    #[inline]
    pub fn out_set(&self, v: usize) -> VertexSet {
        VertexSet(self.out[v])
    }

    #[inline]
    pub fn in_set(&self, v: usize) -> VertexSet {
        VertexSet(self.inn[v])
    }

    /// Neighbourhood in the underlying graph.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.out[v] | self.inn[v])
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones() as usize
    }

    /// Degree in the underlying simple graph (a digon counts once).
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn degrees(&self, v: usize) -> Result<Degrees, GraphError> {
        if v >= self.order {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order,
            });
        }
        Ok(Degrees {
            out_degree: self.out_degree(v),
            in_degree: self.in_degree(v),
            out_neighbors: self.out_set(v),
            in_neighbors: self.in_set(v),
        })
    }

    pub fn out_masks(&self) -> &[u64] {
        &self.out
    }

    pub fn in_masks(&self) -> &[u64] {
        &self.inn
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| VertexSet(self.out[u]).iter().map(move |v| (u, v)))
    }

    pub fn max_in_degree(&self) -> usize {
        (0..self.order).map(|v| self.in_degree(v)).max().unwrap_or(0)
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.order).map(|v| self.out_degree(v)).max().unwrap_or(0)
    }

    pub fn has_digon(&self) -> bool {
        (0..self.order).any(|v| self.out[v] & self.inn[v] != 0)
    }

    /// Exactly one arc between every pair of distinct vertices.
    pub fn is_tournament(&self) -> bool {
        (0..self.order).all(|v| {
            self.out[v] & self.inn[v] == 0
                && (self.out[v] | self.inn[v]).count_ones() as usize == self.order - 1
        })
    }

    /// Every arc turned around; order and mode are kept.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            order: self.order,
            mode: self.mode,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// Drops the arc `(v,u)` of every digon `{(u,v),(v,u)}` with `u < v`.
    ///
    /// The underlying graph is unchanged, so the chromatic number is too, and
    /// anything found in the result is also present in `self`.
    pub fn oriented_core(&self) -> Digraph {
        let mut out = self.out.clone();
        for u in 0..self.order {
            let back = self.out[u] & self.inn[u] & !((1u64 << u) | ((1u64 << u) - 1));
            // `back` holds v > u with both arcs; keep u -> v, drop v -> u.
            for v in VertexSet(back) {
                out[v] &= !(1u64 << u);
            }
        }
        Digraph::from_out_masks(Mode::Oriented, out)
    }

    /// Subdigraph induced by `set`, relabelled to `0..|set|` in ascending
    /// order of the original labels.
    pub fn induced(&self, set: VertexSet) -> Result<Induced, GraphError> {
        if !set.is_subset(self.vertices()) {
            let bad = set.difference(self.vertices()).first().unwrap_or(0);
            return Err(GraphError::VertexOutOfRange {
                vertex: bad,
                order: self.order,
            });
        }
        let map: Vec<usize> = set.to_vec();
        let mut position = [usize::MAX; MAX_ORDER];
        for (i, &v) in map.iter().enumerate() {
            position[v] = i;
        }
        let out = map
            .iter()
            .map(|&v| {
                VertexSet(self.out[v] & set.bits())
                    .iter()
                    .fold(0u64, |acc, w| acc | 1u64 << position[w])
            })
            .collect();
        Ok(Induced {
            digraph: Digraph::from_out_masks(self.mode, out),
            map,
        })
    }

    /// Relabels so that new vertex `i` is old vertex `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.order);
        let mut position = vec![0usize; self.order];
        for (i, &v) in perm.iter().enumerate() {
            position[v] = i;
        }
        let out = perm
            .iter()
            .map(|&v| {
                VertexSet(self.out[v])
                    .iter()
                    .fold(0u64, |acc, w| acc | 1u64 << position[w])
            })
            .collect();
        Digraph::from_out_masks(self.mode, out)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph({}, {}, [", self.order, self.mode)?;
        for (i, (u, v)) in self.arcs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        f.write_str("])")
    }
}

/// An induced subdigraph together with its relabelling.
#[derive(Debug, Clone)]
pub struct Induced {
    pub digraph: Digraph,
    /// `map[i]` is the host vertex behind subdigraph vertex `i`.
    pub map: Vec<usize>,
}

impl Induced {
    pub fn lift(&self, vertices: &[usize]) -> Vec<usize> {
        vertices.iter().map(|&v| self.map[v]).collect()
    }

    pub fn lift_set(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.map[v]).collect()
    }

    /// Host set restricted and relabelled into the subdigraph.
    pub fn project_set(&self, host: VertexSet) -> VertexSet {
        self.map
            .iter()
            .enumerate()
            .filter(|&(_, &v)| host.contains(v))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Transitive tournament: `i -> j` for all `i < j`.
pub fn transitive_tournament(n: usize) -> Result<Digraph, GraphError> {
    Digraph::new(
        n,
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))),
        Mode::Oriented,
    )
}

pub fn directed_cycle(n: usize) -> Result<Digraph, GraphError> {
    if n < 2 {
        return Digraph::empty(n, Mode::Oriented);
    }
    let mode = if n == 2 { Mode::General } else { Mode::Oriented };
    Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n)), mode)
}

/// Circulant digraph on `Z_n`: `u -> v` iff `v - u mod n` is an offset.
///
/// Oriented mode unless some offset `d` has `n - d` among the offsets too.
pub fn rotational(n: usize, offsets: &[usize]) -> Result<Digraph, GraphError> {
    let mut offs: Vec<usize> = offsets.iter().map(|&d| d % n.max(1)).collect();
    offs.sort_unstable();
    offs.dedup();
    if offs.contains(&0) {
        return Err(GraphError::Loop(0));
    }
    let mode = if offs.iter().any(|&d| offs.contains(&(n - d))) {
        Mode::General
    } else {
        Mode::Oriented
    };
    Digraph::new(
        n,
        (0..n).flat_map(|u| offs.iter().map(move |&d| (u, (u + d) % n))),
        mode,
    )
}

/// Named digraphs used throughout tests and campaigns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    /// Directed 3-cycle.
    C3,
    /// Rotational tournament on `Z_5` with offsets `{1,2}`.
    Regular5,
    /// Paley tournament on `Z_7`: offsets are the non-zero squares `{1,2,4}`.
    Paley7,
    Transitive(usize),
    DirectedCycle(usize),
    Rotational(usize, Vec<usize>),
}

impl Fixture {
    pub fn build(&self) -> Result<Digraph, GraphError> {
        match self {
            Fixture::C3 => directed_cycle(3),
            Fixture::Regular5 => rotational(5, &[1, 2]),
            Fixture::Paley7 => rotational(7, &[1, 2, 4]),
            Fixture::Transitive(n) => transitive_tournament(*n),
            Fixture::DirectedCycle(n) => directed_cycle(*n),
            Fixture::Rotational(n, offs) => rotational(*n, offs),
        }
    }

    /// The three tournaments lacking a spanning antidirected path.
    pub fn exceptional_tournaments() -> [Fixture; 3] {
        [Fixture::C3, Fixture::Regular5, Fixture::Paley7]
    }
}

impl FromStr for Fixture {
    type Err = GraphError;

    /// Accepts `c3`, `regular5`, `paley7`, `tt(n)`, `directed_cycle(n)` and
    /// `rotational(n; d1,d2,..)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || GraphError::UnknownFixture(s.to_string());
        let s_trim = s.trim();
        match s_trim {
            "c3" => return Ok(Fixture::C3),
            "regular5" => return Ok(Fixture::Regular5),
            "paley7" => return Ok(Fixture::Paley7),
            _ => {}
        }
        let (name, rest) = s_trim.split_once('(').ok_or_else(unknown)?;
        let args = rest.strip_suffix(')').ok_or_else(unknown)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| unknown());
        match name.trim() {
            "tt" => Ok(Fixture::Transitive(num(args)?)),
            "directed_cycle" => Ok(Fixture::DirectedCycle(num(args)?)),
            "rotational" => {
                let (n, offs) = args.split_once(';').ok_or_else(unknown)?;
                let offs = offs
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(num)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Fixture::Rotational(num(n)?, offs))
            }
            _ => Err(unknown()),
        }
    }
}

/// Builds a fixture by name; see [`Fixture::from_str`] for the syntax.
pub fn fixture(name: &str) -> Result<Digraph, GraphError> {
    name.parse::<Fixture>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_rejects_each_violation_distinctly() {
        assert_eq!(
            Digraph::new(2, [(0, 1), (1, 0)], Mode::Oriented).unwrap_err(),
            GraphError::Digon(0, 1)
        );
        assert_eq!(
            Digraph::new(2, [(1, 1)], Mode::General).unwrap_err(),
            GraphError::Loop(1)
        );
        assert_eq!(
            Digraph::new(2, [(0, 1), (0, 1)], Mode::General).unwrap_err(),
            GraphError::DuplicateArc(0, 1)
        );
        assert_eq!(
            Digraph::new(2, [(0, 2)], Mode::General).unwrap_err(),
            GraphError::VertexOutOfRange {
                vertex: 2,
                order: 2
            }
        );
        assert!(Digraph::new(2, [(0, 1), (1, 0)], Mode::General).is_ok());
    }

    #[test]
    fn c3_and_tt4() {
        let c3 = Digraph::new(3, [(0, 1), (1, 2), (2, 0)], Mode::Oriented).unwrap();
        assert_eq!(c3, fixture("c3").unwrap());
        for v in 0..3 {
            assert_eq!((c3.out_degree(v), c3.in_degree(v)), (1, 1));
        }
        let tt4 = transitive_tournament(4).unwrap();
        assert_eq!(tt4.arc_count(), 6);
        assert!(tt4.is_tournament());
        assert!(tt4.has_arc(0, 3) && !tt4.has_arc(3, 0));
    }

    #[test]
    fn reverse_swaps_source_and_sink() {
        let tt4 = transitive_tournament(4).unwrap();
        let r = tt4.reverse();
        assert_eq!(r.out_degree(3), 3);
        assert_eq!(r.in_degree(0), 3);
        assert_eq!(r.reverse(), tt4);
        let c3 = fixture("c3").unwrap();
        assert!(c3.reverse().has_arc(1, 0));
    }

    #[test]
    fn degrees_examples() {
        let c3 = fixture("c3").unwrap();
        let d = c3.degrees(0).unwrap();
        assert_eq!(
            (d.out_degree, d.in_degree, d.out_neighbors.to_vec(), d.in_neighbors.to_vec()),
            (1, 1, vec![1], vec![2])
        );
        let tt5 = transitive_tournament(5).unwrap();
        let d = tt5.degrees(0).unwrap();
        assert_eq!((d.out_degree, d.in_degree), (4, 0));
        assert_eq!(d.out_neighbors.to_vec(), vec![1, 2, 3, 4]);
        assert!(d.in_neighbors.is_empty());
        let e = Digraph::empty(4, Mode::Oriented).unwrap();
        let d = e.degrees(3).unwrap();
        assert_eq!((d.out_degree, d.in_degree), (0, 0));
        assert!(e.degrees(4).is_err());
    }

    #[test]
    fn induced_examples() {
        let tt5 = transitive_tournament(5).unwrap();
        let all = tt5.induced(tt5.vertices()).unwrap();
        assert_eq!(all.digraph, tt5);
        let none = tt5.induced(VertexSet::EMPTY).unwrap();
        assert_eq!(none.digraph.order(), 0);
        let sub = tt5.induced([0, 2, 4].into_iter().collect()).unwrap();
        assert_eq!(sub.digraph, transitive_tournament(3).unwrap());
        assert_eq!(sub.map, vec![0, 2, 4]);
        assert!(tt5.induced(VertexSet::singleton(7)).is_err());
    }

    #[test]
    fn fixtures_have_the_stated_regularity() {
        let r5 = fixture("regular5").unwrap();
        assert!(r5.is_tournament());
        assert!((0..5).all(|v| r5.out_degree(v) == 2 && r5.in_degree(v) == 2));
        let p7 = fixture("paley7").unwrap();
        assert!(p7.is_tournament());
        let squares = [1, 2, 4];
        for u in 0..7 {
            assert_eq!(p7.out_degree(u), 3);
            for v in 0..7 {
                if u != v {
                    assert_eq!(p7.has_arc(u, v), squares.contains(&((v + 7 - u) % 7)));
                }
            }
        }
        assert_eq!(fixture("tt(6)").unwrap(), transitive_tournament(6).unwrap());
        assert_eq!(
            fixture("rotational(5; 1,2)").unwrap(),
            fixture("regular5").unwrap()
        );
        assert_eq!(fixture("directed_cycle(5)").unwrap().arc_count(), 5);
        assert!(matches!(
            fixture("petersen"),
            Err(GraphError::UnknownFixture(_))
        ));
    }

    #[test]
    fn oriented_core_keeps_underlying_graph() {
        let g = Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 0), (0, 2)], Mode::General).unwrap();
        let o = g.oriented_core();
        assert_eq!(o.mode(), Mode::Oriented);
        assert!(!o.has_digon());
        for u in 0..3 {
            assert_eq!(o.neighbors(u), g.neighbors(u));
        }
        assert!(o.arcs().all(|(u, v)| g.has_arc(u, v)));
    }

    mod props {
        use proptest::prelude::*;

        use crate::testkit::{arb_digraph, arb_relabelled};
        use crate::digraph::VertexSet;

        proptest! {
            #[test]
            fn reverse_is_an_involution(g in arb_digraph(0, 9)) {
                prop_assert_eq!(g.reverse().reverse(), g.clone());
                prop_assert_eq!(g.reverse().arc_count(), g.arc_count());
                for (u, v) in g.arcs() {
                    prop_assert!(g.reverse().has_arc(v, u));
                }
            }

            #[test]
            fn oriented_core_keeps_adjacency(g in arb_digraph(1, 9)) {
                let c = g.oriented_core();
                prop_assert!(!c.has_digon());
                for u in 0..g.order() {
                    prop_assert_eq!(c.neighbors(u), g.neighbors(u));
                    prop_assert!(c.out_set(u).is_subset(g.out_set(u)));
                }
            }

            #[test]
            fn relabel_preserves_degrees((g, perm) in arb_relabelled(1, 9)) {
                let h = g.relabel(&perm);
                for (i, &v) in perm.iter().enumerate() {
                    prop_assert_eq!(h.out_degree(i), g.out_degree(v));
                    prop_assert_eq!(h.in_degree(i), g.in_degree(v));
                }
            }

            #[test]
            fn induced_lifts_back(g in arb_digraph(1, 9), bits in any::<u64>()) {
                let set = VertexSet::from_bits(bits).intersection(g.vertices());
                let sub = g.induced(set).unwrap();
                for (a, b) in sub.digraph.arcs() {
                    prop_assert!(g.has_arc(sub.map[a], sub.map[b]));
                }
                let inside = g.arcs().filter(|&(a, b)| set.contains(a) && set.contains(b)).count();
                prop_assert_eq!(sub.digraph.arc_count(), inside);
            }
        }
    }
}
