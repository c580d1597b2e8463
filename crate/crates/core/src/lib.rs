pub mod error;
pub mod homological;
pub mod algebra;
pub mod axioms;
pub mod io;
pub mod linalg;
pub mod localization;
pub mod par;
pub mod project;
pub mod rigid;
