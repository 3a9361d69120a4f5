pub mod expr;
pub mod finite;
pub mod realize;

pub use expr::ClassExpr;
pub use finite::FiniteClass;
pub use realize::{realize, realize_with};
