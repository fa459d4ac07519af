"""borellab: Borel-plane convolution fixed points for a two-time singularly
perturbed PDE family, their Laplace/Fourier synthesis, and the measurement of
the resulting two-level exponential decay structure."""

__version__ = "0.1.0"
