//! Iterated Ore extensions: arithmetic, the closed power formula of the family
//! α(x) = x + p·x^e, p-adic utilities, the Fibonacci conjugation, skew Laurent
//! rings and bounded regularity certification.

pub mod bcoef;
pub mod fib;
pub mod laurent;
pub mod padic;
pub mod poly;
pub mod regularity;
pub mod ring;
pub mod space;

pub use bcoef::{alpha_power_closed, bcoef, BcoefTable};
pub use fib::{fib_power, order_of_alpha, Order};
pub use laurent::{laurent_localize, LaurentRing, LocalizedGroup};
pub use padic::{padic_margin, PadicMargin};
pub use poly::{leading_data, LaurentPoly, Poly, SkewPoly};
pub use regularity::{regularity_bounded, Regularity};
pub use ring::{Bijectivity, SkewPolyRing, VarData};
pub use space::PolySpace;
