"""Numerical engine: quadrature, forward chain, dynamics, reconstruction and experiment models."""
