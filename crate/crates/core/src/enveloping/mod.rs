//! Chevalley basis, PBW monomials, straightening in U(g), and Gram matrices of
//! the invariant forms on Verma modules.

mod gram;
mod pbw;
mod structure;
mod uelement;

pub use gram::{
    det_product_formula, gram, gram_straightened, mono_gens, point_deformed, point_q,
    shapovalov_determinant, singular_vector, weights_of_height, y_element, FormKind, GramMatrix,
    SingularVector, VermaForms,
};
pub use pbw::{AffineForm, Mono, PbwAlgebra, Side};
pub use structure::{Adjoint, StructureConstants};
pub use uelement::{lmul_word, Gen, UElement, Word};
