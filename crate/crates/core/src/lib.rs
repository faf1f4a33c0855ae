pub mod chain;
pub mod combinatorics;
pub mod counting;
pub mod existence;
pub mod geodesics;
pub mod geom;
pub mod labels;
pub mod projection;
pub mod report;
pub mod space;
pub mod svg;
pub mod tetra;
pub mod unfolding;
pub mod verify;

pub use geom::{Point2, Segment2, Side};
pub use labels::{EdgeLabel, FaceLabel, Vertex};
pub use space::SpaceKind;
pub use tetra::{GenericTetraSpec, TetraGeometry, TetrahedronSpec};
pub use combinatorics::{CrossingSequence, GeodesicType};
