//! Vertex, edge and face labels of the tetrahedron A1A2A3A4.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Vertex `A_{i+1}` for `i` in 0..4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(pub u8);

impl Vertex {
    pub const ALL: [Vertex; 4] = [Vertex(0), Vertex(1), Vertex(2), Vertex(3)];

    pub fn name(self) -> String {
        format!("A{}", self.0 + 1)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.0 + 1)
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "A1" => Ok(Vertex(0)),
            "A2" => Ok(Vertex(1)),
            "A3" => Ok(Vertex(2)),
            "A4" => Ok(Vertex(3)),
            _ => Err(serde::de::Error::custom(format!("bad vertex label {s}"))),
        }
    }
}

/// Unordered vertex pair, stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabel {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl EdgeLabel {
    /// Edges in the order 12, 13, 14, 23, 24, 34.
    pub const ALL: [EdgeLabel; 6] = [
        EdgeLabel { lo: Vertex(0), hi: Vertex(1) },
        EdgeLabel { lo: Vertex(0), hi: Vertex(2) },
        EdgeLabel { lo: Vertex(0), hi: Vertex(3) },
        EdgeLabel { lo: Vertex(1), hi: Vertex(2) },
        EdgeLabel { lo: Vertex(1), hi: Vertex(3) },
        EdgeLabel { lo: Vertex(2), hi: Vertex(3) },
    ];

    pub fn new(a: Vertex, b: Vertex) -> EdgeLabel {
        assert!(a != b, "edge needs two distinct vertices");
        if a < b {
            EdgeLabel { lo: a, hi: b }
        } else {
            EdgeLabel { lo: b, hi: a }
        }
    }

    pub fn from_indices(a: u8, b: u8) -> EdgeLabel {
        EdgeLabel::new(Vertex(a), Vertex(b))
    }

    /// Position in `ALL`.
    pub fn index(self) -> usize {
        match (self.lo.0, self.hi.0) {
            (0, 1) => 0,
            (0, 2) => 1,
            (0, 3) => 2,
            (1, 2) => 3,
            (1, 3) => 4,
            _ => 5,
        }
    }

    pub fn opposite(self) -> EdgeLabel {
        let rest: Vec<u8> = (0..4).filter(|&v| v != self.lo.0 && v != self.hi.0).collect();
        EdgeLabel::from_indices(rest[0], rest[1])
    }

    /// Opposite pair this edge belongs to: 0 for {12,34}, 1 for {13,24},
    /// 2 for {14,23}.
    pub fn pair(self) -> usize {
        let e = if self.lo.0 == 0 { self } else { self.opposite() };
        (e.hi.0 - 1) as usize
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn vertices(self) -> [Vertex; 2] {
        [self.lo, self.hi]
    }

    pub fn other(self, v: Vertex) -> Vertex {
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }

    /// The single vertex shared with `e`, if exactly one is shared.
    pub fn common_vertex(self, e: EdgeLabel) -> Option<Vertex> {
        let shared: Vec<Vertex> = self.vertices().into_iter().filter(|v| e.contains(*v)).collect();
        if shared.len() == 1 {
            Some(shared[0])
        } else {
            None
        }
    }

    pub fn token(self) -> String {
        format!("{}{}", self.lo.0 + 1, self.hi.0 + 1)
    }

    pub fn map(self, perm: &[u8; 4]) -> EdgeLabel {
        EdgeLabel::from_indices(perm[self.lo.0 as usize], perm[self.hi.0 as usize])
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

impl FromStr for EdgeLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let d: Vec<u8> = s.bytes().collect();
        let ok = |c: u8| (b'1'..=b'4').contains(&c);
        if d.len() != 2 || !ok(d[0]) || !ok(d[1]) || d[0] == d[1] {
            return Err(format!("bad edge token '{s}'"));
        }
        Ok(EdgeLabel::from_indices(d[0] - b'1', d[1] - b'1'))
    }
}

impl Serialize for EdgeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.token())
    }
}

impl<'de> Deserialize<'de> for EdgeLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A face, named by the vertex it misses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceLabel {
    pub missing: Vertex,
}

impl FaceLabel {
    pub fn vertices(self) -> [Vertex; 3] {
        let v: Vec<Vertex> = Vertex::ALL.into_iter().filter(|v| *v != self.missing).collect();
        [v[0], v[1], v[2]]
    }

    /// Face spanned by two edges sharing one vertex.
    pub fn spanned(e: EdgeLabel, f: EdgeLabel) -> Option<FaceLabel> {
        let v = e.common_vertex(f)?;
        let (x, y) = (e.other(v), f.other(v));
        let missing = (0..4u8).find(|&m| m != v.0 && m != x.0 && m != y.0)?;
        Some(FaceLabel { missing: Vertex(missing) })
    }

    pub fn contains_edge(self, e: EdgeLabel) -> bool {
        !e.contains(self.missing)
    }

    pub fn token(self) -> String {
        self.vertices().iter().map(|v| char::from(b'1' + v.0)).collect()
    }
}

impl fmt::Display for FaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

impl Serialize for FaceLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.token())
    }
}

impl<'de> Deserialize<'de> for FaceLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let b = s.as_bytes();
        if b.len() != 3 || !b.iter().all(|c| (b'1'..=b'4').contains(c)) {
            return Err(serde::de::Error::custom(format!("bad face token {s}")));
        }
        let missing = (0..4u8)
            .find(|m| !b.contains(&(b'1' + m)))
            .ok_or_else(|| serde::de::Error::custom(format!("bad face token {s}")))?;
        let f = FaceLabel { missing: Vertex(missing) };
        if f.token() != s {
            return Err(serde::de::Error::custom(format!("bad face token {s}")));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_round_trip() {
        for e in EdgeLabel::ALL {
            assert_eq!(e.token().parse::<EdgeLabel>().unwrap(), e);
            assert_eq!(EdgeLabel::ALL[e.index()], e);
            assert_eq!(e.opposite().opposite(), e);
            assert_eq!(e.pair(), e.opposite().pair());
            assert!(e.common_vertex(e.opposite()).is_none());
        }
        assert!("11".parse::<EdgeLabel>().is_err());
        assert!("15".parse::<EdgeLabel>().is_err());
        assert_eq!("21".parse::<EdgeLabel>().unwrap().token(), "12");
    }

    #[test]
    fn faces() {
        let f = FaceLabel::spanned("12".parse().unwrap(), "23".parse().unwrap()).unwrap();
        assert_eq!(f.token(), "123");
        assert_eq!(f.missing, Vertex(3));
        assert!(FaceLabel::spanned("12".parse().unwrap(), "34".parse().unwrap()).is_none());
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<FaceLabel>(&js).unwrap(), f);
    }
}
