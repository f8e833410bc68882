"""Husimi phase-space distributions of the Hermite oscillator and the
semiconfined position-dependent-mass oscillator."""

__version__ = "0.1.0"
