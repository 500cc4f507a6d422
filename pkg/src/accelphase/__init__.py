"""Geometric phase of a two-level atom coupled to a vacuum massless scalar field
under inertial, linearly accelerated and ultrarelativistic circular motion,
with or without a reflecting plane boundary."""

__version__ = "0.1.0"
