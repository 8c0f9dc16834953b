//! Exact arithmetic for absurd numbers: rational multiples of products of
//! fractional powers of positive rationals, kept in a canonical internal form
//! so that zero is recognized without unbounded integer factorization.

pub mod canon;
pub mod expr;
pub mod fixtures;
pub mod forms;
pub mod numkernel;

pub use canon::{
    AbsurdNumber, Approximation, ArithmeticError, BaseClass, Commensurability, Config, Factor,
};
pub use expr::{evaluate, parse, simplify, Expr, ExprError, SumOfAbsurds};
pub use forms::{
    convert, most_concise, recommended_kinds, DisplayForm, FormError, FormKind, FormTerm, Layout,
    SizeReport,
};
pub use numkernel::Rational;
