//! Spectra of rotationally twisted boundary problems on Euclidean balls.
//!
//! The crate computes Steklov-type eigenvalues of the magnetic Laplacian on
//! the unit 2-disk and 4-ball with rotational (Killing) potentials, the
//! matching boundary magnetic-Laplacian spectra, frustration and Cheeger
//! isoperimetric quantities for such potentials, and numeric checks of the
//! closed-form bounds tying these together.
//!
//! Eigenvalues come from two deliberately independent routes: a power-series
//! solution of the reduced radial equation ([`radial`]) and an adaptive
//! Runge-Kutta integration of the same equation ([`oracle`]). [`verify`]
//! cross-checks them and everything else that has a closed form.

pub mod bessel;
pub mod bounds;
pub mod cheeger;
pub mod error;
pub mod frustration;
pub mod ivp;
mod numeric;
pub mod oracle;
pub mod quad;
pub mod radial;
pub mod spectra;
pub mod verify;

pub use error::{Result, SpectralError};
