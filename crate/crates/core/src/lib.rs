pub mod cli;
pub mod error;
pub mod model_aux;
pub mod model_poly;
pub mod pie_limits;
pub mod poly;
pub mod report;
pub mod restriction;
pub mod suites;
pub mod tangent_core;
pub mod tangent_monads;
pub mod weil;
pub mod vector_fields;
