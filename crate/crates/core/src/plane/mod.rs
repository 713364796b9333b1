pub mod isometry;
pub mod point;
pub mod tangent;
pub mod word_ball;

pub use isometry::{Classification, Isometry, IsometryKind};
pub use point::{busemann, hyp_distance, BoundaryPoint, Point};
pub use tangent::{d1, UnitTangent};
pub use word_ball::{BallMinimum, BoundaryChart, FuchsianWordBall};
