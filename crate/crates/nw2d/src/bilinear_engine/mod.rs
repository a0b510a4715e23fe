//! Bilinear pseudo-products: the physical-space null form, a dense
//! frequency-space double sum for arbitrary symbols, and a factored fast path
//! for operators built from Fourier multipliers and pointwise products.

pub mod dense;
pub mod factored;
pub mod null_form;

pub use dense::{
    kernel_table, pseudo_product, pseudo_product_with_table, BilinearSymbol, FnSymbol,
    KernelTable, DENSE_MAX_N,
};
pub use factored::{pseudo_product_factored, FactorTerm, FactoredSymbol};
pub use null_form::{null_form_q12, null_form_symbol, physical_product};
