mod exterior;
mod form;
mod validate;

pub use exterior::ExteriorForm;
pub use form::{assignment, coprime_basis, local_form, DifferentialForm, PoleComponent};
pub use validate::{validate_chain_form, ValidationReport};
