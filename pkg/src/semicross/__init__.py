"""Exact computations with product dilations of finite dynamical systems,
their boundary ideals and C*-envelopes."""

__version__ = "0.1.0"
