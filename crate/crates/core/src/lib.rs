//! Deep Fourier neural networks for fitting and extrapolating univariate
//! time series.
//!
//! A four-layer network of identity, softplus and sinusoid units is seeded
//! from the FFT of the training window so it reproduces the samples
//! exactly, then trained with SGD under kind-dependent L2/L1 regularization
//! while an end-of-epoch controller tunes the learning rate and
//! regularization strength and rolls back diverged epochs.
//!
//! ```no_run
//! use deep_fourier::{init, signal, trainer};
//!
//! let series = signal::gen_sine_trend(128)?;
//! let net = init::initialize(&series, &init::InitConfig::new(128).with_seed(1))?;
//! let cfg = trainer::TrainConfig::default().with_seed(1);
//! let (trained, state) = trainer::train(net, &series, &cfg)?;
//! println!("final rmse / sigma = {}", state.epsilon / state.sigma);
//! println!("prediction at t = 1.5: {}", trained.predict(1.5));
//! # Ok::<(), deep_fourier::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod fft;
pub mod init;
pub mod model_io;
pub mod network;
pub mod postprocess;
pub mod regularize;
pub mod rng;
pub mod signal;
pub mod trainer;

pub use error::{Error, Result};
pub use network::{Network, UnitKind};
pub use signal::TimeSeries;
