pub mod digraph;
pub mod graph;
pub mod matching;
pub mod pairs;
pub mod scalar;
pub mod spectral;
pub mod generators;
pub mod exact;
pub mod rotation;
pub mod connector;
pub mod forest;
pub mod absorber;

pub type Certificate = spectral::SpectralCertificate<f64>;
pub type Certificate32 = spectral::SpectralCertificate<f32>;
