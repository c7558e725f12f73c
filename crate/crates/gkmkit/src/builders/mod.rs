//! Graph constructions for the three supported families: complete toric
//! varieties, Schubert varieties, and projective group embeddings.

pub mod embedding;
pub mod rook;
pub mod schubert;
pub mod toric;
pub mod weyl;

pub use embedding::{build_group_embedding, Branch, E2Element, EmbeddingDatum};
pub use rook::{build_rook_embedding, projective_space_graph, rook_datum};
pub use schubert::{build_schubert, left_weyl_action};
pub use toric::{build_toric, Fan};
pub use weyl::{cartan_of_type, RootDatum, WeylGroup};
