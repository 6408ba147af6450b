"""Phase-space numerics for open fermionic Gaussian dynamics."""
